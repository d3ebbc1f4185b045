//! Exact integer sequences and conversion helpers.
//!
//! Conventions used throughout the crate: `F_1 = F_2 = 1`, `F_0 = 0`, and the
//! signed extension `F_{-n} = (-1)^{n+1} F_n` (so `F_{-1} = 1`, `F_{-2} = -1`),
//! which the circulant entry formulas need at small negative indices. Lucas
//! numbers satisfy the same recurrence with `Y_1 = 1`, `Y_2 = 3`, `Y_0 = 2`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

/// Fibonacci number at a (possibly negative) index.
pub fn fib(n: i64) -> BigInt {
    if n >= 0 {
        fib_nonneg(n as u64)
    } else {
        // F_{-n} = (-1)^{n+1} F_n
        let f = fib_nonneg((-n) as u64);
        if n % 2 == 0 {
            -f
        } else {
            f
        }
    }
}

fn fib_nonneg(n: u64) -> BigInt {
    let mut a = BigInt::from(0); // F_0
    let mut b = BigInt::from(1); // F_1
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// Lucas number `Y_n` for `n >= 0`.
pub fn lucas(n: u64) -> BigInt {
    let mut a = BigInt::from(2); // Y_0
    let mut b = BigInt::from(1); // Y_1
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Lossless-in-spirit conversion of a big rational to `f64`.
///
/// `numer.to_f64() / denom.to_f64()` overflows to infinity once either side
/// exceeds ~1e308; this shifts both by a common power of two first, so ratios
/// of astronomically large integers (Fibonacci numbers at index ~500 and up)
/// convert at full f64 precision.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    if numer.is_zero() {
        return 0.0;
    }
    let nbits = numer.bits() as i64;
    let dbits = denom.bits() as i64;
    // Keep ~80 significant bits on each side; the final division rounds once.
    let shift_n = (nbits - 80).max(0) as u64;
    let shift_d = (dbits - 80).max(0) as u64;
    let n = (numer >> shift_n).to_f64().expect("shifted numerator fits f64");
    let d = (denom >> shift_d).to_f64().expect("shifted denominator fits f64");
    let scale = (shift_n as i32) - (shift_d as i32);
    (n / d) * 2f64.powi(scale)
}

/// `a / b` as f64 for big integers, via [`ratio_to_f64`].
pub fn bigint_ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    ratio_to_f64(&BigRational::new(a.clone(), b.clone()))
}

/// Exact big integer to f64, accurate to one rounding.
pub fn bigint_to_f64(a: &BigInt) -> f64 {
    bigint_ratio_f64(a, &BigInt::from(1))
}

/// True when the rational is an integer (denominator one after reduction).
pub fn is_integer(r: &BigRational) -> bool {
    r.denom().abs() == BigInt::from(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    #[test]
    fn fibonacci_convention() {
        let got: Vec<i64> = (-2..=10).map(|i| fib(i).to_f64().unwrap() as i64).collect();
        assert_eq!(got, vec![-1, 1, 0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]);
    }

    #[test]
    fn lucas_convention() {
        let got: Vec<u64> = (0..=9).map(|i| lucas(i).to_f64().unwrap() as u64).collect();
        assert_eq!(got, vec![2, 1, 3, 4, 7, 11, 18, 29, 47, 76]);
    }

    #[test]
    fn lucas_is_fib_sum() {
        for l in 1..60u64 {
            assert_eq!(lucas(l), fib(l as i64 - 1) + fib(l as i64 + 1));
        }
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
    }

    #[test]
    fn ratio_conversion_huge() {
        // F_1000 / F_1001 ~ 1/phi; both operands overflow a bare f64.
        let r = BigRational::new(fib(1000), fib(1001));
        let phi_inv = 2.0 / (1.0 + 5f64.sqrt());
        assert!((ratio_to_f64(&r) - phi_inv).abs() < 1e-15);
    }

    #[test]
    fn ratio_conversion_small_values() {
        let r = BigRational::new(BigInt::from(-3), BigInt::from(4));
        assert_eq!(ratio_to_f64(&r), -0.75);
        assert_eq!(ratio_to_f64(&BigRational::new(BigInt::from(0), BigInt::from(9))), 0.0);
    }
}
