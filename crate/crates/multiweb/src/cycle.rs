//! Closed forms for odd cycles with uniform tile weights.
//!
//! Every quantity the general machinery computes numerically has an exact
//! expression on the odd cycle `C_L`: the size-reduced tiling polynomial,
//! the critical density `α̂ = 1 − F_L/Y_L` (Fibonacci over Lucas), the
//! circulant vertex block of the tile Laplacian with its DFT spectrum, and
//! the full block inverse of the Laplacian, whose cycle part is
//! `A_{ij} = (1/L)(Δ_00/s + g(i−j))` for an explicit rational function `g`.
//! This module computes all of them in exact integer/rational arithmetic
//! (converting to `f64` only at the edges) so the generic solvers can be
//! tested against them.
//!
//! The spectrum of the circulant block carries one wrinkle: the closed-form
//! eigenvalue expression [`CycleParams::eigenvalue_formula`] evaluates
//! correctly for the nonzero Fourier modes `k = 1..L-1` but not for `k = 0`,
//! where only the row sum `λ_0 = Σ_k c_k` is consistent with the block
//! inverse. The DFT values are therefore authoritative throughout, and the
//! `k = 0` mismatch is surfaced by the verification suite rather than
//! papered over.

use nalgebra::DMatrix;
use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::Error;
use crate::gauge::{self, CriticalGauge, SolveOptions};
use crate::numbers::{binomial, fib, lucas, ratio_to_f64};
use crate::Result;

/// An odd cycle length `L ≥ 3` together with a Fibonacci cache.
///
/// Every closed form in this module assumes odd `L`; even lengths have a
/// nontrivial gauge kernel and a singular Laplacian, so construction
/// rejects them up front.
#[derive(Debug, Clone)]
pub struct CycleParams {
    l: usize,
    fib: Vec<BigInt>,
}

impl CycleParams {
    pub fn new(l: usize) -> Result<Self> {
        if l < 3 || l % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "cycle closed forms require odd length >= 3, got {l}"
            )));
        }
        let mut cache = Vec::with_capacity(l + 3);
        cache.push(BigInt::zero());
        cache.push(BigInt::one());
        for k in 2..(l + 3) {
            let next = &cache[k - 1] + &cache[k - 2];
            cache.push(next);
        }
        Ok(CycleParams { l, fib: cache })
    }

    pub fn length(&self) -> usize {
        self.l
    }

    /// `|T(C_L)| = Y_L`, the Lucas number.
    pub fn tile_count(&self) -> BigInt {
        lucas(self.l as u64)
    }

    /// Fibonacci with the signed extension `F_{-k} = (-1)^{k+1} F_k`.
    fn f(&self, k: i64) -> BigInt {
        if k >= 0 && (k as usize) < self.fib.len() {
            self.fib[k as usize].clone()
        } else {
            fib(k)
        }
    }

    /// Size-reduced tiling polynomial `Σ_s n_s x_0^{L-2s} x_1^{2s}` in the
    /// closed form `2^{-L}((x_0-r)^L + (x_0+r)^L)`, `r = √(x_0²+4x_1²)`.
    pub fn reduced_poly_closed(&self, x0: f64, x1: f64) -> f64 {
        let r = (x0 * x0 + 4.0 * x1 * x1).sqrt();
        let l = self.l as i32;
        (0.5 * (x0 - r)).powi(l) + (0.5 * (x0 + r)).powi(l)
    }

    /// Exact rational evaluation through the edge split
    /// `P^L = Q^L + x_1²·Q^{L-2}`: a matching either skips the edge
    /// `(v_L, v_1)` (a full path on `L` vertices remains) or uses it
    /// (removing both endpoints leaves a path on `L-2` vertices).
    pub fn reduced_poly_exact(&self, x0: &BigRational, x1: &BigRational) -> BigRational {
        line_poly_exact(self.l, x0, x1) + x1 * x1 * line_poly_exact(self.l - 2, x0, x1)
    }

    /// The unique uniform density with uniform critical weights:
    /// `α̂ = 1 − F_L/Y_L`, exactly.
    pub fn alpha_hat(&self) -> BigRational {
        BigRational::one()
            - BigRational::new(self.f(self.l as i64), lucas(self.l as u64))
    }

    /// Number of tiles with exactly `s` edges, `n_s = (L/(L-s))·C(L-s, s)`,
    /// for `s = 0..=(L-1)/2`. Sums to the Lucas number `Y_L`.
    pub fn size_class_counts(&self) -> Vec<BigInt> {
        let l = self.l;
        (0..=(l - 1) / 2)
            .map(|s| {
                let num = binomial((l - s) as u64, s as u64) * BigInt::from(l);
                let den = BigInt::from(l - s);
                debug_assert!((&num % &den).is_zero());
                num / den
            })
            .collect()
    }

    /// Vertex block of the unweighted tile Laplacian (`C = I`): circulant
    /// with entries `c_0 = 2F_{L-1}` and
    /// `c_k = F_k F_{L-k-2} + 2 F_{k-1} F_{L-k-1} + F_{k-2} F_{L-k}`.
    pub fn circulant_entries(&self) -> Vec<BigInt> {
        let l = self.l as i64;
        (0..l)
            .map(|k| {
                if k == 0 {
                    BigInt::from(2) * self.f(l - 1)
                } else {
                    self.f(k) * self.f(l - k - 2)
                        + BigInt::from(2) * self.f(k - 1) * self.f(l - k - 1)
                        + self.f(k - 2) * self.f(l - k)
                }
            })
            .collect()
    }

    /// Circulant entries plus their DFT eigenvalues.
    pub fn circulant_spectrum(&self) -> CirculantSpectrum {
        let entries = self.circulant_entries();
        let l = self.l;
        let mut eigenvalues = Vec::with_capacity(l);
        // Mode 0 is the exact integer row sum; the rest come from the DFT,
        // real because the entries are symmetric under k -> L-k.
        let row_sum: BigInt = entries.iter().sum();
        eigenvalues.push(crate::numbers::bigint_to_f64(&row_sum));
        for k in 1..l {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, c) in entries.iter().enumerate() {
                let angle = std::f64::consts::TAU * (j * k % l) as f64 / l as f64;
                acc += crate::numbers::bigint_to_f64(c) * Complex64::from_polar(1.0, angle);
            }
            eigenvalues.push(acc.re);
        }
        CirculantSpectrum {
            entries,
            eigenvalues,
        }
    }

    /// The closed-form eigenvalue expression
    /// `F_L (1+ω^k)² / (1 + 3ω^k + ω^{2k})`, `ω = e^{2πi/L}`.
    ///
    /// Matches the DFT spectrum for `k = 1..L-1`. At `k = 0` it evaluates to
    /// `4F_L/5`, which disagrees with the row sum `λ_0` (at `L = 3`: 8/5
    /// against 4); only the row sum is consistent with the block inverse,
    /// so callers must treat this expression as valid for `k ≥ 1`.
    pub fn eigenvalue_formula(&self, k: usize) -> f64 {
        let l = self.l;
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU * (k % l) as f64 / l as f64);
        let one = Complex64::new(1.0, 0.0);
        let numer = (one + omega) * (one + omega);
        let denom = one + 3.0 * omega + omega * omega;
        let fl = crate::numbers::bigint_to_f64(&self.f(l as i64));
        (fl * numer / denom).re
    }

    /// `Σ_{z^L = 1} z^l / (z+1)²` over all `L`-th roots of unity, exactly:
    /// `-L(L-2)/4` for `l ≡ 0` and `(-1)^{l+1} L(L-2l+2)/4` for
    /// `l = 1..L-1`, extended `L`-periodically.
    pub fn root_of_unity_sum(&self, l: i64) -> BigRational {
        let ll = self.l as i64;
        let r = l.rem_euclid(ll);
        let four = BigInt::from(4);
        if r == 0 {
            BigRational::new(-BigInt::from(ll) * BigInt::from(ll - 2), four)
        } else {
            let sign = if r % 2 == 0 { -1 } else { 1 };
            BigRational::new(
                BigInt::from(sign) * BigInt::from(ll) * BigInt::from(ll - 2 * r + 2),
                four,
            )
        }
    }

    /// `Σ_{k=1}^{L-1} ω^{kl} / λ_k` over the nonzero Fourier modes, in
    /// closed form: `(L(L+4)-5)/(4F_L)` at `l ≡ 0` and
    /// `((-1)^l L(L-2l) - 5)/(4F_L)` otherwise, `L`-periodic and symmetric
    /// in `l ↔ L-l`.
    pub fn reciprocal_mode_sum(&self, l: i64) -> BigRational {
        let ll = self.l as i64;
        let r = l.rem_euclid(ll);
        let den = BigInt::from(4) * self.f(ll);
        if r == 0 {
            BigRational::new(BigInt::from(ll) * BigInt::from(ll + 4) - BigInt::from(5), den)
        } else {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            BigRational::new(
                BigInt::from(sign) * BigInt::from(ll) * BigInt::from(ll - 2 * r)
                    - BigInt::from(5),
                den,
            )
        }
    }

    /// Exact scalar ingredients of the closed-form inverse Laplacian.
    pub fn laplacian_closed_form(&self) -> LaplacianClosedForm {
        let l = self.l as i64;
        let lb = BigInt::from(l);
        let fl = self.f(l);
        let yl = lucas(self.l as u64);
        let five = BigInt::from(5);
        // Δ_00 = (L/5)(4F_L + L·Y_L): second moment of the zero-vertex
        // multiplicity over tiles, Σ_t (L-2s)².
        let corner_num = &lb * (BigInt::from(4) * &fl + &lb * &yl);
        debug_assert!((&corner_num % &five).is_zero());
        let corner = corner_num / &five;
        // Δ_0v = -((4-5L)F_L + L·Y_L)/5, independent of v by symmetry.
        let off_num = -((BigInt::from(4) - &lb * &five) * &fl + &lb * &yl);
        debug_assert!((&off_num % &five).is_zero());
        let off_corner = off_num / &five;
        // λ_0 = Σ_k c_k = L(Y_L - F_L) - Δ_0v.
        let mode_zero = &lb * (&yl - &fl) - &off_corner;
        let schur = &mode_zero * &corner - &lb * &off_corner * &off_corner;
        let g: Vec<BigRational> = (0..l).map(|d| self.reciprocal_mode_sum(d)).collect();
        LaplacianClosedForm {
            l: self.l,
            corner,
            off_corner,
            mode_zero,
            schur,
            g,
        }
    }

    /// Per-tile critical weights as the uniform density sweeps an α grid.
    ///
    /// For each `α` the 2-variable size-reduced criticality system is
    /// solved: terms `n_s x_0^{L-2s} x_1^{2s}` against the target
    /// `(L(1-α), Lα)`. Weights depend on a tile only through its size, and
    /// all size curves cross at `α̂`, where the distribution is uniform.
    pub fn tile_probability_curves(&self, alphas: &[f64]) -> Result<ProbabilityCurves> {
        let l = self.l;
        let upper = (l as f64 - 1.0) / l as f64;
        for &a in alphas {
            if !(a > 0.0 && a < upper) {
                return Err(Error::NotFeasible(format!(
                    "density {a} outside the open interval (0, {upper})"
                )));
            }
        }
        let counts = self.size_class_counts();
        let sizes = counts.len();
        let system = gauge::ExponentSystem {
            exponents: (0..sizes)
                .map(|s| vec![(l - 2 * s) as f64, (2 * s) as f64])
                .collect(),
            log_weights: counts
                .iter()
                .map(|n| crate::numbers::bigint_to_f64(n).ln())
                .collect(),
            dim: 2,
        };
        let mut curves = ProbabilityCurves {
            alphas: alphas.to_vec(),
            x0: Vec::with_capacity(alphas.len()),
            x1: Vec::with_capacity(alphas.len()),
            sigma: Vec::with_capacity(alphas.len()),
            tile_probability: vec![Vec::with_capacity(alphas.len()); sizes],
        };
        for &a in alphas {
            let target = [l as f64 * (1.0 - a), l as f64 * a];
            let CriticalGauge {
                x, weights, sigma, ..
            } = gauge::solve_system(&system, &target, l as f64, SolveOptions::default())?;
            curves.x0.push(x[0]);
            curves.x1.push(x[1]);
            curves.sigma.push(sigma);
            for (s, class_weight) in weights.iter().enumerate() {
                // weights[s] is the probability of the whole size class.
                let per_tile = class_weight / crate::numbers::bigint_to_f64(&counts[s]);
                curves.tile_probability[s].push(per_tile);
            }
        }
        Ok(curves)
    }
}

/// Matching polynomial of the path on `n` vertices,
/// `Σ_s C(n-s, s) x_0^{n-2s} x_1^{2s}`, in the closed form
/// `((x_0+r)^{n+1} - (x_0-r)^{n+1}) / (2^{n+1} r)`.
pub fn line_poly_closed(n: usize, x0: f64, x1: f64) -> f64 {
    let r = (x0 * x0 + 4.0 * x1 * x1).sqrt();
    if r == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let p = n as i32 + 1;
    ((0.5 * (x0 + r)).powi(p) - (0.5 * (x0 - r)).powi(p)) / r
}

/// Same polynomial by the exact recurrence
/// `Q^n = x_0 Q^{n-1} + x_1² Q^{n-2}`, `Q^0 = 1`, `Q^1 = x_0`.
pub fn line_poly_exact(n: usize, x0: &BigRational, x1: &BigRational) -> BigRational {
    let mut prev = BigRational::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x0.clone();
    let x1sq = x1 * x1;
    for _ in 2..=n {
        let next = x0 * &cur + &x1sq * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Circulant vertex block of the unweighted Laplacian together with its
/// spectrum. Entries are symmetric (`c_k = c_{L-k}`), so the DFT values are
/// real; index 0 holds the exact row sum.
#[derive(Debug, Clone)]
pub struct CirculantSpectrum {
    pub entries: Vec<BigInt>,
    pub eigenvalues: Vec<f64>,
}

/// Closed-form inverse of the unweighted tile Laplacian of an odd cycle.
///
/// In block form with the zero vertex first: the (0,0) entry is `λ_0/s`,
/// the rest of row and column 0 are `-Δ_0v/s`, and the cycle block is
/// `A_{ij} = (1/L)(Δ_00/s + g(i-j))` where
/// `s = λ_0 Δ_00 - L Δ_0v²` is the Schur complement scale.
#[derive(Debug, Clone)]
pub struct LaplacianClosedForm {
    l: usize,
    /// `Δ_00 = (L/5)(4F_L + L·Y_L)`.
    pub corner: BigInt,
    /// `Δ_0v = -((4-5L)F_L + L·Y_L)/5` for every cycle vertex `v`.
    pub off_corner: BigInt,
    /// `λ_0 = Σ_k c_k`, the zero-mode eigenvalue of the circulant block.
    pub mode_zero: BigInt,
    /// `λ_0·Δ_00 - L·Δ_0v²`.
    pub schur: BigInt,
    g: Vec<BigRational>,
}

impl LaplacianClosedForm {
    /// Exact inverse-Laplacian entry; indices range over `0..=L` with the
    /// zero vertex at 0.
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        let l = self.l;
        assert!(i <= l && j <= l, "index out of range");
        let s = BigRational::from(self.schur.clone());
        match (i, j) {
            (0, 0) => BigRational::from(self.mode_zero.clone()) / s,
            (0, _) | (_, 0) => BigRational::from(-self.off_corner.clone()) / s,
            _ => {
                let d = (i as i64 - j as i64).rem_euclid(l as i64) as usize;
                (BigRational::from(self.corner.clone()) / s + &self.g[d])
                    / BigRational::from(BigInt::from(l))
            }
        }
    }

    /// The full `(L+1) × (L+1)` inverse as floats. Each distinct rational
    /// value is converted once at full precision.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let l = self.l;
        let s = BigRational::from(self.schur.clone());
        let corner = ratio_to_f64(&(BigRational::from(self.mode_zero.clone()) / &s));
        let border = ratio_to_f64(&(BigRational::from(-self.off_corner.clone()) / &s));
        let lb = BigRational::from(BigInt::from(l));
        let block: Vec<f64> = (0..l)
            .map(|d| {
                ratio_to_f64(
                    &((BigRational::from(self.corner.clone()) / &s + &self.g[d]) / &lb),
                )
            })
            .collect();
        DMatrix::from_fn(l + 1, l + 1, |i, j| match (i, j) {
            (0, 0) => corner,
            (0, _) | (_, 0) => border,
            _ => block[(i as i64 - j as i64).rem_euclid(l as i64) as usize],
        })
    }
}

/// Critical-weight curves over an α grid, one row per tile size.
#[derive(Debug, Clone)]
pub struct ProbabilityCurves {
    pub alphas: Vec<f64>,
    pub x0: Vec<f64>,
    pub x1: Vec<f64>,
    pub sigma: Vec<f64>,
    /// `tile_probability[s][i]`: critical weight of one size-`s` tile at
    /// `alphas[i]`.
    pub tile_probability: Vec<Vec<f64>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::laplacian::{build_laplacian, pseudo_inverse_on_image, IncidenceMatrix,
        TileWeightDiagonal};
    use crate::poly::{reduced_polynomial, tiling_polynomial, WeightFunction};
    use crate::tiles::{count_tiles, enumerate_tiles, homogenize};

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rejects_even_and_tiny_lengths() {
        assert!(CycleParams::new(0).is_err());
        assert!(CycleParams::new(1).is_err());
        assert!(CycleParams::new(4).is_err());
        assert!(CycleParams::new(3).is_ok());
    }

    #[test]
    fn alpha_hat_small_values() {
        assert_eq!(CycleParams::new(3).unwrap().alpha_hat(), rational(1, 2));
        assert_eq!(CycleParams::new(5).unwrap().alpha_hat(), rational(6, 11));
        assert_eq!(CycleParams::new(9).unwrap().alpha_hat(), rational(21, 38));
    }

    #[test]
    fn alpha_hat_matches_mean_edge_count_and_cover_fraction() {
        // Two independent routes: 2Σ_t s(t)/(L|T|) from enumeration, and the
        // fraction of tiles covering a fixed vertex, 1 - |T(P_{L-1})|/|T(C_L)|.
        for l in [3usize, 5, 7, 9, 11, 13] {
            let params = CycleParams::new(l).unwrap();
            let tiles = enumerate_tiles(&Graph::cycle(l).unwrap()).unwrap();
            let total_edges: u64 = tiles.iter().map(|t| t.edges().len() as u64).sum();
            let by_moment = BigRational::new(
                BigInt::from(2 * total_edges),
                BigInt::from(l as u64) * BigInt::from(tiles.len() as u64),
            );
            assert_eq!(params.alpha_hat(), by_moment, "L = {l}");
            let path_count = count_tiles(&Graph::path(l - 1)).unwrap();
            let by_cover = BigRational::one()
                - BigRational::new(path_count, BigInt::from(tiles.len() as u64));
            assert_eq!(params.alpha_hat(), by_cover, "L = {l}");
        }
    }

    #[test]
    fn size_class_counts_match_enumeration() {
        for l in [3usize, 5, 7, 9, 11, 13] {
            let params = CycleParams::new(l).unwrap();
            let counts = params.size_class_counts();
            assert_eq!(counts.iter().sum::<BigInt>(), params.tile_count());
            let tiles = enumerate_tiles(&Graph::cycle(l).unwrap()).unwrap();
            let mut hist = vec![0u64; counts.len()];
            for t in &tiles {
                hist[t.edges().len()] += 1;
            }
            for (s, c) in counts.iter().enumerate() {
                assert_eq!(c, &BigInt::from(hist[s]), "L = {l}, s = {s}");
            }
        }
    }

    #[test]
    fn reduced_poly_closed_small_values() {
        let c3 = CycleParams::new(3).unwrap();
        assert!((c3.reduced_poly_closed(1.0, 1.0) - 4.0).abs() < 1e-12);
        let c5 = CycleParams::new(5).unwrap();
        assert!((c5.reduced_poly_closed(1.0, 0.0) - 1.0).abs() < 1e-12);
        assert!((c5.reduced_poly_closed(1.0, 1.0) - 11.0).abs() < 1e-12);
    }

    #[test]
    fn reduced_poly_matches_enumerated_polynomial() {
        // The closed form against the generic reduction of the enumerated
        // tiling polynomial to groups {v_0}, {v_1..v_L}.
        for l in [3usize, 5, 7, 9, 11] {
            let params = CycleParams::new(l).unwrap();
            let tiles = homogenize(&enumerate_tiles(&Graph::cycle(l).unwrap()).unwrap(), l);
            let poly = tiling_polynomial(&tiles, &WeightFunction::uniform(tiles.len()));
            let mut groups = vec![vec![0usize], Vec::new()];
            groups[1].extend(1..=l);
            let reduced = reduced_polynomial(&poly, &groups).unwrap();
            for (x0, x1) in [(1.0, 1.0), (0.7, 1.3), (2.0, 0.25), (1.5, 0.0)] {
                let a = params.reduced_poly_closed(x0, x1);
                let b = reduced.eval(&[x0, x1]);
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "L = {l}");
            }
        }
    }

    #[test]
    fn line_poly_base_cases_and_count() {
        assert_eq!(line_poly_closed(0, 3.0, 2.0), 1.0);
        assert!((line_poly_closed(1, 3.0, 2.0) - 3.0).abs() < 1e-12);
        assert!((line_poly_closed(4, 1.0, 1.0) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn line_poly_closed_matches_recurrence() {
        for n in 0..=30usize {
            for (a, b, c, d) in [(1i64, 1i64, 1i64, 1i64), (3, 2, 2, 3), (7, 5, 1, 4)] {
                let x0 = rational(a, b);
                let x1 = rational(c, d);
                let exact = ratio_to_f64(&line_poly_exact(n, &x0, &x1));
                let closed = line_poly_closed(
                    n,
                    a as f64 / b as f64,
                    c as f64 / d as f64,
                );
                assert!(
                    (closed - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                    "n = {n}"
                );
            }
        }
    }

    #[test]
    fn cycle_poly_exact_splits_over_the_closing_edge() {
        // Counting level: |T(C_L)| = |T(P_L)| + |T(P_{L-2})|, and the same
        // split at a non-trivial rational point against the closed form.
        for l in [3usize, 5, 9, 15, 21] {
            let params = CycleParams::new(l).unwrap();
            let one = BigRational::one();
            assert_eq!(
                params.reduced_poly_exact(&one, &one),
                BigRational::from(params.tile_count())
            );
            let x0 = rational(5, 3);
            let x1 = rational(2, 7);
            let exact = ratio_to_f64(&params.reduced_poly_exact(&x0, &x1));
            let closed = params.reduced_poly_closed(5.0 / 3.0, 2.0 / 7.0);
            assert!((closed - exact).abs() <= 1e-12 * exact.abs().max(1.0), "L = {l}");
        }
    }

    #[test]
    fn circulant_entries_frozen_and_symmetric() {
        let c3: Vec<BigInt> = CycleParams::new(3).unwrap().circulant_entries();
        assert_eq!(c3, vec![BigInt::from(2), BigInt::from(1), BigInt::from(1)]);
        let c5 = CycleParams::new(5).unwrap().circulant_entries();
        let expected = [6, 4, 3, 3, 4].map(BigInt::from);
        assert_eq!(c5, expected.to_vec());
        for l in (3..=21usize).step_by(2) {
            let c = CycleParams::new(l).unwrap().circulant_entries();
            for k in 1..l {
                assert_eq!(c[k], c[l - k], "L = {l}, k = {k}");
            }
        }
    }

    #[test]
    fn circulant_entries_match_laplacian_block() {
        for l in [3usize, 5, 7, 9, 11, 13] {
            let tiles = homogenize(&enumerate_tiles(&Graph::cycle(l).unwrap()).unwrap(), l);
            let d = IncidenceMatrix::from_tiles(&tiles).unwrap();
            let c = TileWeightDiagonal::new(vec![1.0; tiles.len()]).unwrap();
            let lap = build_laplacian(&d, &c).unwrap();
            let entries = CycleParams::new(l).unwrap().circulant_entries();
            for i in 1..=l {
                for j in 1..=l {
                    let k = (i as i64 - j as i64).rem_euclid(l as i64) as usize;
                    assert_eq!(
                        lap[(i, j)],
                        crate::numbers::bigint_to_f64(&entries[k]),
                        "L = {l}, ({i}, {j})"
                    );
                }
            }
        }
    }

    #[test]
    fn spectrum_row_sum_and_frozen_values() {
        let spec3 = CycleParams::new(3).unwrap().circulant_spectrum();
        assert_eq!(spec3.eigenvalues[0], 4.0);
        assert!((spec3.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert!((spec3.eigenvalues[2] - 1.0).abs() < 1e-12);
        let spec5 = CycleParams::new(5).unwrap().circulant_spectrum();
        assert_eq!(spec5.eigenvalues[0], 20.0);
        assert!((spec5.eigenvalues[1] - 3.6180339887).abs() < 1e-9);
    }

    #[test]
    fn eigenvalue_formula_matches_dft_for_nonzero_modes() {
        for l in (3..=21usize).step_by(2) {
            let params = CycleParams::new(l).unwrap();
            let spec = params.circulant_spectrum();
            for k in 1..l {
                let formula = params.eigenvalue_formula(k);
                let dft = spec.eigenvalues[k];
                assert!(
                    (formula - dft).abs() <= 1e-9 * dft.abs(),
                    "L = {l}, k = {k}: {formula} vs {dft}"
                );
            }
        }
    }

    #[test]
    fn eigenvalue_formula_mode_zero_discrepancy() {
        // The closed form evaluates to 4F_L/5 at k = 0, which is not the row
        // sum; both frozen here so the mismatch stays visible.
        let c3 = CycleParams::new(3).unwrap();
        assert!((c3.eigenvalue_formula(0) - 1.6).abs() < 1e-12);
        assert_eq!(c3.circulant_spectrum().eigenvalues[0], 4.0);
        let c5 = CycleParams::new(5).unwrap();
        assert!((c5.eigenvalue_formula(0) - 4.0).abs() < 1e-12);
        assert_eq!(c5.circulant_spectrum().eigenvalues[0], 20.0);
    }

    #[test]
    fn root_of_unity_sum_frozen_and_matches_complex_sum() {
        let c3 = CycleParams::new(3).unwrap();
        assert_eq!(c3.root_of_unity_sum(0), rational(-3, 4));
        assert_eq!(c3.root_of_unity_sum(1), rational(9, 4));
        assert_eq!(c3.root_of_unity_sum(2), rational(-3, 4));
        // Periodic extension.
        assert_eq!(c3.root_of_unity_sum(3), rational(-3, 4));
        assert_eq!(c3.root_of_unity_sum(-1), c3.root_of_unity_sum(2));
        for l in (3..=21usize).step_by(2) {
            let params = CycleParams::new(l).unwrap();
            for shift in 0..l {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..l {
                    let z = Complex64::from_polar(
                        1.0,
                        std::f64::consts::TAU * k as f64 / l as f64,
                    );
                    acc += z.powu(shift as u32) / ((z + 1.0) * (z + 1.0));
                }
                let exact = ratio_to_f64(&params.root_of_unity_sum(shift as i64));
                assert!(
                    (acc.re - exact).abs() < 1e-9 && acc.im.abs() < 1e-9,
                    "L = {l}, l = {shift}: {acc} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn reciprocal_mode_sum_triple_agreement() {
        // Route 1: closed form. Route 2: direct sum over DFT eigenvalues.
        // Route 3: the exact expansion (1/F_L)(-5/4 + a_l + 3a_{l+1} + a_{l+2})
        // in terms of root-of-unity sums.
        for l in (3..=21usize).step_by(2) {
            let params = CycleParams::new(l).unwrap();
            let spec = params.circulant_spectrum();
            let inv_fl = BigRational::new(BigInt::one(), fib(l as i64));
            for shift in 0..l {
                let closed = params.reciprocal_mode_sum(shift as i64);
                let expansion = &inv_fl
                    * (rational(-5, 4)
                        + params.root_of_unity_sum(shift as i64)
                        + rational(3, 1) * params.root_of_unity_sum(shift as i64 + 1)
                        + params.root_of_unity_sum(shift as i64 + 2));
                assert_eq!(closed, expansion, "L = {l}, l = {shift}");
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 1..l {
                    let w = Complex64::from_polar(
                        1.0,
                        std::f64::consts::TAU * (k * shift % l) as f64 / l as f64,
                    );
                    acc += w / spec.eigenvalues[k];
                }
                let exact = ratio_to_f64(&closed);
                assert!(
                    (acc.re - exact).abs() < 1e-9 && acc.im.abs() < 1e-9,
                    "L = {l}, l = {shift}"
                );
            }
        }
    }

    #[test]
    fn reciprocal_mode_sum_frozen_values() {
        let c3 = CycleParams::new(3).unwrap();
        assert_eq!(c3.reciprocal_mode_sum(0), rational(2, 1));
        assert_eq!(c3.reciprocal_mode_sum(1), rational(-1, 1));
        assert_eq!(c3.reciprocal_mode_sum(2), rational(-1, 1));
        let c5 = CycleParams::new(5).unwrap();
        let expected = [(2i64, 1i64), (-1, 1), (0, 1), (0, 1), (-1, 1)];
        for (l, (n, d)) in expected.iter().enumerate() {
            assert_eq!(c5.reciprocal_mode_sum(l as i64), rational(*n, *d), "l = {l}");
        }
    }

    #[test]
    fn closed_inverse_frozen_entries() {
        let form = CycleParams::new(3).unwrap().laplacian_closed_form();
        assert_eq!(form.corner, BigInt::from(12));
        assert_eq!(form.off_corner, BigInt::from(2));
        assert_eq!(form.mode_zero, BigInt::from(4));
        assert_eq!(form.schur, BigInt::from(36));
        assert_eq!(form.entry(0, 0), rational(1, 9));
        assert_eq!(form.entry(0, 2), rational(-1, 18));
        assert_eq!(form.entry(1, 1), rational(7, 9));
        assert_eq!(form.entry(1, 2), rational(-2, 9));
        let c5 = CycleParams::new(5).unwrap().laplacian_closed_form();
        assert_eq!(c5.corner, BigInt::from(75));
        assert_eq!(c5.off_corner, BigInt::from(10));
        assert_eq!(c5.mode_zero, BigInt::from(20));
    }

    #[test]
    fn closed_inverse_inverts_the_laplacian() {
        for l in [3usize, 5, 7, 9, 11, 13] {
            let tiles = homogenize(&enumerate_tiles(&Graph::cycle(l).unwrap()).unwrap(), l);
            let d = IncidenceMatrix::from_tiles(&tiles).unwrap();
            let c = TileWeightDiagonal::new(vec![1.0; tiles.len()]).unwrap();
            let lap = build_laplacian(&d, &c).unwrap();
            let inv = CycleParams::new(l).unwrap().laplacian_closed_form().to_matrix();
            let prod = &lap * &inv;
            let id = DMatrix::<f64>::identity(l + 1, l + 1);
            assert!((prod - id).amax() < 1e-9, "L = {l}");
            let pinv = pseudo_inverse_on_image(&lap);
            assert!((&inv - pinv).amax() < 1e-9, "L = {l} vs pseudo-inverse");
        }
    }

    #[test]
    fn closed_inverse_block_is_symmetric_circulant() {
        let form = CycleParams::new(9).unwrap().laplacian_closed_form();
        for i in 1..=9usize {
            for j in 1..=9usize {
                assert_eq!(form.entry(i, j), form.entry(j, i));
                let si = i % 9 + 1;
                let sj = j % 9 + 1;
                assert_eq!(form.entry(i, j), form.entry(si, sj), "shift invariance");
            }
        }
    }

    #[test]
    fn probability_curves_cross_at_alpha_hat() {
        let params = CycleParams::new(11).unwrap();
        let ahat = ratio_to_f64(&params.alpha_hat());
        let curves = params.tile_probability_curves(&[ahat]).unwrap();
        for row in &curves.tile_probability {
            assert!((row[0] - 1.0 / 199.0).abs() < 1e-9);
        }
        // At α̂ the growth rate is log |T|.
        assert!((curves.sigma[0] - (199.0f64).ln()).abs() < 1e-9);
    }

    #[test]
    fn probability_curves_monotone_in_alpha() {
        let params = CycleParams::new(11).unwrap();
        let grid: Vec<f64> = (1..=50)
            .map(|i| 0.02 + (i as f64 - 1.0) / 49.0 * (10.0 / 11.0 - 0.04))
            .collect();
        let curves = params.tile_probability_curves(&grid).unwrap();
        for i in 1..grid.len() {
            assert!(curves.x0[i] < curves.x0[i - 1], "x0 not decreasing at {i}");
            assert!(curves.x1[i] > curves.x1[i - 1], "x1 not increasing at {i}");
        }
    }

    #[test]
    fn probability_curves_empty_tile_dominates_at_low_density() {
        let params = CycleParams::new(3).unwrap();
        let curves = params.tile_probability_curves(&[0.01]).unwrap();
        assert!(curves.tile_probability[0][0] > 0.97);
        assert!(params.tile_probability_curves(&[0.0]).is_err());
        assert!(params.tile_probability_curves(&[2.0 / 3.0]).is_err());
        assert!(params.tile_probability_curves(&[0.9]).is_err());
    }
}
