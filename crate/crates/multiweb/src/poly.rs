//! Tiling polynomials and exact partition functions.
//!
//! The tiling polynomial of a graph is `P(x) = Σ_t w(t) Π_v x_v^{t_v}` over
//! homogenized tiles, a homogeneous polynomial of degree `V` in the variables
//! `x_{v_0}, ..., x_{v_V}`. The partition function `Z_{w,n,N}` is the
//! coefficient of `x^n` in `P(x)^N` restricted to the original vertices; it
//! is computed by dynamic programming over colors with the residual
//! multiplicity vector as state, never by polynomial expansion.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::Error;
use crate::graph::Graph;
use crate::tiles::HomogenizedTile;
use crate::Result;

/// Default cap on `states * colors` for the partition-function DP.
pub const DEFAULT_STATE_CAP: u128 = 100_000_000;

/// Positive per-tile weights, indexed like the canonical tile order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction(Vec<f64>);

impl WeightFunction {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidArgument(
                "tile weights must be positive and finite".into(),
            ));
        }
        Ok(WeightFunction(weights))
    }

    pub fn uniform(count: usize) -> Self {
        WeightFunction(vec![1.0; count])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
/// The map order (lexicographic on exponents) is the iteration order
/// everywhere, so evaluation and printing are deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl SparsePolynomial {
    pub fn new(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `coeff * x^exps`, dropping the term if the sum cancels to zero.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: f64) {
        use std::collections::btree_map::Entry;
        assert_eq!(exps.len(), self.nvars, "exponent arity mismatch");
        if coeff == 0.0 {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars, "evaluation arity mismatch");
        self.terms
            .iter()
            .map(|(exps, &c)| {
                c * exps
                    .iter()
                    .zip(x)
                    .map(|(&e, &xi)| xi.powi(e as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// `x_v ∂_v P` evaluated at `x`, for the criticality equations.
    pub fn logarithmic_derivative(&self, x: &[f64], var: usize) -> f64 {
        self.terms
            .iter()
            .map(|(exps, &c)| {
                exps[var] as f64
                    * c
                    * exps
                        .iter()
                        .zip(x)
                        .map(|(&e, &xi)| xi.powi(e as i32))
                        .product::<f64>()
            })
            .sum()
    }

    /// True when every term has total degree `degree`.
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms
            .keys()
            .all(|exps| exps.iter().sum::<u32>() == degree)
    }
}

/// `P(x) = Σ_t w(t) x^{t}` over homogenized tiles; `nvars = V + 1` with the
/// zero vertex first.
pub fn tiling_polynomial(tiles: &[HomogenizedTile], w: &WeightFunction) -> SparsePolynomial {
    assert_eq!(tiles.len(), w.len(), "one weight per tile");
    let nvars = tiles
        .first()
        .map(|t| t.exponents().len())
        .unwrap_or(1);
    let mut p = SparsePolynomial::new(nvars);
    for (t, &wt) in tiles.iter().zip(w.values()) {
        p.add_term(t.exponents(), wt);
    }
    p
}

/// Identifies the variables within each group; coefficients of merged
/// monomials combine additively. `groups` must partition `0..nvars`.
pub fn reduced_polynomial(p: &SparsePolynomial, groups: &[Vec<usize>]) -> Result<SparsePolynomial> {
    let mut assignment = vec![usize::MAX; p.nvars()];
    for (gi, group) in groups.iter().enumerate() {
        for &v in group {
            if v >= p.nvars() || assignment[v] != usize::MAX {
                return Err(Error::InvalidArgument(format!(
                    "groups must partition the {} variables",
                    p.nvars()
                )));
            }
            assignment[v] = gi;
        }
    }
    if assignment.iter().any(|&a| a == usize::MAX) {
        return Err(Error::InvalidArgument(
            "groups must cover every variable".into(),
        ));
    }
    let mut out = SparsePolynomial::new(groups.len());
    for (exps, c) in p.terms() {
        let mut merged = vec![0u32; groups.len()];
        for (v, &e) in exps.iter().enumerate() {
            merged[assignment[v]] += e;
        }
        out.add_term(merged, c);
    }
    Ok(out)
}

/// Scalar abstraction so the DP runs in f64 or exact big rationals.
pub trait DpScalar: Clone + Zero + One + AddAssign {}

impl DpScalar for f64 {}
impl DpScalar for BigRational {}

/// Mixed-radix indexing for residual multiplicity vectors inside `0..=n_v`.
struct ResidualBox {
    radices: Vec<u32>,
    strides: Vec<usize>,
    len: usize,
}

impl ResidualBox {
    fn new(n: &[u32]) -> ResidualBox {
        let radices: Vec<u32> = n.iter().map(|&nv| nv + 1).collect();
        let mut strides = vec![0usize; radices.len()];
        let mut len = 1usize;
        for (i, &r) in radices.iter().enumerate() {
            strides[i] = len;
            len *= r as usize;
        }
        ResidualBox {
            radices,
            strides,
            len,
        }
    }

    fn rank(&self, r: &[u32]) -> usize {
        r.iter()
            .zip(&self.strides)
            .map(|(&v, &s)| v as usize * s)
            .sum()
    }

    /// Rank shift when subtracting `delta`, or None if any entry would go
    /// negative. Precomputing the shift makes the inner DP loop a single
    /// subtraction.
    fn checked_sub_rank(&self, r: &[u32], delta: &[u32]) -> Option<usize> {
        let mut rank = 0usize;
        for ((&v, &d), &s) in r.iter().zip(delta).zip(&self.strides) {
            if d > v {
                return None;
            }
            rank += (v - d) as usize * s;
        }
        Some(rank)
    }

    fn unrank(&self, mut idx: usize) -> Vec<u32> {
        self.radices
            .iter()
            .map(|&r| {
                let v = (idx % r as usize) as u32;
                idx /= r as usize;
                v
            })
            .collect()
    }
}

fn dp_layers<S: DpScalar>(
    g: &Graph,
    tile_multiplicities: &[Vec<u32>],
    weights: &[S],
    n: &[u32],
    colors: u32,
    cap: u128,
    keep_layers: usize,
) -> Result<Vec<Vec<S>>> {
    if n.len() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "multiplicity vector has {} entries for {} vertices",
            n.len(),
            g.vertex_count()
        )));
    }
    let boxspace = ResidualBox::new(n);
    let cost = boxspace.len as u128 * colors.max(1) as u128;
    if cost > cap {
        return Err(Error::ResourceLimit {
            what: "partition function DP".into(),
            needed: cost,
            limit: cap,
        });
    }
    // Per-tile deltas; tiles whose multiplicity exceeds n anywhere can never
    // be used and are dropped up front.
    let mut deltas: Vec<(Vec<u32>, S)> = Vec::new();
    for (ti, tm) in tile_multiplicities.iter().enumerate() {
        if tm.iter().zip(n).all(|(&t, &nv)| t <= nv) {
            deltas.push((tm.clone(), weights[ti].clone()));
        }
    }

    // f_c[r] = Z for residual target r with c colors; layer 0 is the
    // indicator of the zero residual.
    let mut zero_layer = vec![S::zero(); boxspace.len];
    zero_layer[0] = S::one();
    let mut layers: Vec<Vec<S>> = vec![zero_layer];
    for _ in 1..=colors {
        let prev = layers.last().unwrap();
        let mut next = vec![S::zero(); boxspace.len];
        for (rank, cell) in next.iter_mut().enumerate() {
            let r = boxspace.unrank(rank);
            for (delta, w) in &deltas {
                if let Some(prev_rank) = boxspace.checked_sub_rank(&r, delta) {
                    *cell += w.clone() * prev[prev_rank].clone();
                }
            }
        }
        layers.push(next);
        if layers.len() > keep_layers {
            layers.remove(0);
        }
    }
    Ok(layers)
}

fn graph_multiplicities(tiles: &[HomogenizedTile]) -> Vec<Vec<u32>> {
    tiles
        .iter()
        .map(|t| t.tile().multiplicity().iter().map(|&m| m as u32).collect())
        .collect()
}

/// `Z_{w,n,N}`: total weight of all maps from `N` colors to tiles covering
/// each vertex `v` exactly `n_v` times. Returns 0 when no multiweb exists.
pub fn partition_function_exact(
    g: &Graph,
    tiles: &[HomogenizedTile],
    w: &WeightFunction,
    n: &[u32],
    colors: u32,
) -> Result<f64> {
    partition_function_capped(g, tiles, w, n, colors, DEFAULT_STATE_CAP)
}

/// [`partition_function_exact`] with an explicit `states * colors` cap.
pub fn partition_function_capped(
    g: &Graph,
    tiles: &[HomogenizedTile],
    w: &WeightFunction,
    n: &[u32],
    colors: u32,
    cap: u128,
) -> Result<f64> {
    let mult = graph_multiplicities(tiles);
    let layers = dp_layers(g, &mult, w.values(), n, colors, cap, 1)?;
    let last = layers.last().unwrap();
    Ok(last[ResidualBox::new(n).rank(n)])
}

/// Exact-rational partition function for rational weights.
pub fn partition_function_rational(
    g: &Graph,
    tiles: &[HomogenizedTile],
    w: &[BigRational],
    n: &[u32],
    colors: u32,
    cap: u128,
) -> Result<BigRational> {
    let mult = graph_multiplicities(tiles);
    let layers = dp_layers(g, &mult, w, n, colors, cap, 1)?;
    let last = layers.last().unwrap();
    Ok(last[ResidualBox::new(n).rank(n)].clone())
}

/// Exact mean vector and second-moment matrix of the tile-count vector `X`.
#[derive(Debug, Clone)]
pub struct Moments {
    pub mean: Vec<f64>,
    pub second: Vec<Vec<f64>>,
    pub z: f64,
}

impl Moments {
    /// Covariance `E(X_t X_u) - E(X_t) E(X_u)`.
    pub fn covariance(&self) -> Vec<Vec<f64>> {
        let k = self.mean.len();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.second[i][j] - self.mean[i] * self.mean[j])
                    .collect()
            })
            .collect()
    }
}

/// Exact moments under the multiweb measure, via partition-function ratios:
/// `E(X_t) = N w_t Z(n - t, N-1) / Z(n, N)` and
/// `E(X_t X_u) = δ_{tu} E(X_t) + N(N-1) w_t w_u Z(n - t - u, N-2) / Z(n, N)`.
/// All ratios come from the retained layers of a single DP run.
pub fn exact_moments(
    g: &Graph,
    tiles: &[HomogenizedTile],
    w: &WeightFunction,
    n: &[u32],
    colors: u32,
    cap: u128,
) -> Result<Moments> {
    if colors < 2 {
        return Err(Error::InvalidArgument(
            "moments need at least two colors".into(),
        ));
    }
    let mult = graph_multiplicities(tiles);
    let layers = dp_layers(g, &mult, w.values(), n, colors, cap, 3)?;
    let boxspace = ResidualBox::new(n);
    let [two_back, one_back, last] = [&layers[0], &layers[1], &layers[2]];
    let z = last[boxspace.rank(n)];
    if z <= 0.0 {
        return Err(Error::InfeasibleMultiplicity(format!(
            "no multiweb with multiplicity {n:?} and {colors} colors"
        )));
    }
    let k = tiles.len();
    let nf = colors as f64;
    let ws = w.values();
    let mut mean = vec![0.0; k];
    for t in 0..k {
        if let Some(rank) = boxspace.checked_sub_rank(n, &mult[t]) {
            mean[t] = nf * ws[t] * one_back[rank] / z;
        }
    }
    let mut second = vec![vec![0.0; k]; k];
    for t in 0..k {
        for u in t..k {
            let combined: Vec<u32> = mult[t].iter().zip(&mult[u]).map(|(a, b)| a + b).collect();
            let cross = match boxspace_checked(&boxspace, n, &combined) {
                Some(rank) => nf * (nf - 1.0) * ws[t] * ws[u] * two_back[rank] / z,
                None => 0.0,
            };
            let val = if t == u { mean[t] + cross } else { cross };
            second[t][u] = val;
            second[u][t] = val;
        }
    }
    Ok(Moments { mean, second, z })
}

fn boxspace_checked(boxspace: &ResidualBox, n: &[u32], delta: &[u32]) -> Option<usize> {
    boxspace.checked_sub_rank(n, delta)
}

/// Exact-rational counterpart of [`Moments`], for checks where the
/// difference of two quantities must vanish identically rather than to
/// roundoff.
#[derive(Debug, Clone)]
pub struct RationalMoments {
    pub mean: Vec<BigRational>,
    pub second: Vec<Vec<BigRational>>,
    pub z: BigRational,
}

impl RationalMoments {
    pub fn covariance(&self) -> Vec<Vec<BigRational>> {
        let k = self.mean.len();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| &self.second[i][j] - &self.mean[i] * &self.mean[j])
                    .collect()
            })
            .collect()
    }
}

/// [`exact_moments`] in exact rational arithmetic.
pub fn exact_moments_rational(
    g: &Graph,
    tiles: &[HomogenizedTile],
    w: &[BigRational],
    n: &[u32],
    colors: u32,
    cap: u128,
) -> Result<RationalMoments> {
    if colors < 2 {
        return Err(Error::InvalidArgument(
            "moments need at least two colors".into(),
        ));
    }
    let mult = graph_multiplicities(tiles);
    let layers = dp_layers(g, &mult, w, n, colors, cap, 3)?;
    let boxspace = ResidualBox::new(n);
    let [two_back, one_back, last] = [&layers[0], &layers[1], &layers[2]];
    let z = last[boxspace.rank(n)].clone();
    if z <= BigRational::zero() {
        return Err(Error::InfeasibleMultiplicity(format!(
            "no multiweb with multiplicity {n:?} and {colors} colors"
        )));
    }
    let k = tiles.len();
    let nf = BigRational::from(num::BigInt::from(colors));
    let nf_minus = BigRational::from(num::BigInt::from(colors - 1));
    let mut mean = vec![BigRational::zero(); k];
    for t in 0..k {
        if let Some(rank) = boxspace.checked_sub_rank(n, &mult[t]) {
            mean[t] = &nf * &w[t] * &one_back[rank] / &z;
        }
    }
    let mut second = vec![vec![BigRational::zero(); k]; k];
    for t in 0..k {
        for u in t..k {
            let combined: Vec<u32> = mult[t].iter().zip(&mult[u]).map(|(a, b)| a + b).collect();
            let cross = match boxspace_checked(&boxspace, n, &combined) {
                Some(rank) => &nf * &nf_minus * &w[t] * &w[u] * &two_back[rank] / &z,
                None => BigRational::zero(),
            };
            let val = if t == u { &mean[t] + &cross } else { cross };
            second[t][u] = val.clone();
            second[u][t] = val;
        }
    }
    Ok(RationalMoments { mean, second, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::tiles::{enumerate_tiles, homogenize};
    use num::bigint::BigInt;

    fn cycle_setup(l: usize) -> (Graph, Vec<HomogenizedTile>) {
        let g = Graph::cycle(l).unwrap();
        let tiles = enumerate_tiles(&g).unwrap();
        let h = homogenize(&tiles, g.vertex_count());
        (g, h)
    }

    /// Independent oracle: iterate all |T|^N functions from colors to tiles
    /// and add up the weights of those matching the multiplicity vector.
    fn brute_force_z(tiles: &[HomogenizedTile], w: &[f64], n: &[u32], colors: u32) -> f64 {
        let t = tiles.len();
        let mut total = 0.0;
        let mut assignment = vec![0usize; colors as usize];
        loop {
            let mut coverage = vec![0u32; n.len()];
            let mut weight = 1.0;
            for &a in &assignment {
                weight *= w[a];
                for (v, &m) in tiles[a].tile().multiplicity().iter().enumerate() {
                    coverage[v] += m as u32;
                }
            }
            if coverage == n {
                total += weight;
            }
            // Next function in lexicographic order.
            let mut i = 0;
            loop {
                if i == assignment.len() {
                    return total;
                }
                assignment[i] += 1;
                if assignment[i] < t {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn cycle3_polynomial_structure() {
        let (g, h) = cycle_setup(3);
        let p = tiling_polynomial(&h, &WeightFunction::uniform(h.len()));
        assert_eq!(p.term_count(), 4);
        assert!(p.is_homogeneous(3));
        assert_eq!(p.eval(&[1.0, 1.0, 1.0, 1.0]), 4.0);
        // Identify the three cycle vertices: x0^3 + 3 x0 x1^2.
        let reduced = reduced_polynomial(&p, &[vec![0], vec![1, 2, 3]]).unwrap();
        let terms: Vec<(Vec<u32>, f64)> =
            reduced.terms().map(|(e, c)| (e.to_vec(), c)).collect();
        assert_eq!(terms, vec![(vec![1, 2], 3.0), (vec![3, 0], 1.0)]);
        let _ = g;
    }

    #[test]
    fn single_vertex_polynomial() {
        let (_, h) = cycle_setup(1);
        let p = tiling_polynomial(&h, &WeightFunction::uniform(1));
        let terms: Vec<(Vec<u32>, f64)> = p.terms().map(|(e, c)| (e.to_vec(), c)).collect();
        assert_eq!(terms, vec![(vec![1, 0], 1.0)]);
    }

    #[test]
    fn partition_function_small_values() {
        let (g, h) = cycle_setup(3);
        let w = WeightFunction::uniform(h.len());
        // Single color picking the edge {1,2}.
        assert_eq!(
            partition_function_exact(&g, &h, &w, &[1, 1, 0], 1).unwrap(),
            1.0
        );
        // Odd total coverage is infeasible at any color count (parity).
        assert_eq!(
            partition_function_exact(&g, &h, &w, &[1, 1, 1], 1).unwrap(),
            0.0
        );
        assert_eq!(
            partition_function_exact(&g, &h, &w, &[1, 1, 1], 3).unwrap(),
            0.0
        );
        // Three distinct edges over three colors: 3! assignments.
        assert_eq!(
            partition_function_exact(&g, &h, &w, &[2, 2, 2], 3).unwrap(),
            6.0
        );
    }

    #[test]
    fn partition_function_matches_brute_force() {
        let (g, h) = cycle_setup(3);
        let w = WeightFunction::new(vec![1.0, 2.0, 0.5, 1.5]).unwrap();
        for colors in 1..=3u32 {
            for n in [[0, 0, 0], [1, 1, 0], [2, 2, 2], [1, 2, 1], [2, 1, 1]] {
                let dp =
                    partition_function_exact(&g, &h, &w, &n, colors).unwrap();
                let brute = brute_force_z(&h, w.values(), &n, colors);
                assert!(
                    (dp - brute).abs() <= 1e-12 * brute.abs().max(1.0),
                    "n={n:?} colors={colors}: dp={dp} brute={brute}"
                );
            }
        }
        // Integer weights stay exact in f64 on small instances.
        let w1 = WeightFunction::uniform(h.len());
        for colors in 1..=3u32 {
            for n in [[2, 2, 0], [2, 2, 2], [0, 0, 0]] {
                assert_eq!(
                    partition_function_exact(&g, &h, &w1, &n, colors).unwrap(),
                    brute_force_z(&h, w1.values(), &n, colors)
                );
            }
        }
    }

    #[test]
    fn rational_mode_agrees() {
        let (g, h) = cycle_setup(3);
        let w: Vec<BigRational> = [(1, 1), (1, 2), (3, 2), (2, 1)]
            .iter()
            .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        let wf = WeightFunction::new(vec![1.0, 0.5, 1.5, 2.0]).unwrap();
        let exact =
            partition_function_rational(&g, &h, &w, &[2, 2, 2], 3, DEFAULT_STATE_CAP).unwrap();
        let float = partition_function_exact(&g, &h, &wf, &[2, 2, 2], 3).unwrap();
        assert!((crate::numbers::ratio_to_f64(&exact) - float).abs() < 1e-12);
    }

    #[test]
    fn rational_moments_exact_on_deterministic_instance() {
        // Coverage N/2 per vertex on the triangle pins every tile count to
        // N/4, so the exact mean is N/4 and the covariance vanishes
        // identically; rational arithmetic must return those values exactly.
        let (g, h) = cycle_setup(3);
        let w = vec![BigRational::one(); h.len()];
        let m = exact_moments_rational(&g, &h, &w, &[10, 10, 10], 20, DEFAULT_STATE_CAP).unwrap();
        let five = BigRational::from(BigInt::from(5));
        for t in 0..h.len() {
            assert_eq!(m.mean[t], five);
        }
        for row in m.covariance() {
            for entry in row {
                assert!(entry.is_zero());
            }
        }
        // Z = 20!/(5!)^4 exactly.
        let mut z = BigInt::from(1);
        for k in 2..=20u32 {
            z *= k;
        }
        let mut q = BigInt::from(1);
        for k in 2..=5u32 {
            q *= k;
        }
        assert_eq!(m.z, BigRational::from(z / q.pow(4)));
    }

    #[test]
    fn state_cap_enforced() {
        let (g, h) = cycle_setup(3);
        let w = WeightFunction::uniform(h.len());
        assert!(matches!(
            partition_function_capped(&g, &h, &w, &[5, 5, 5], 4, 100),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn moments_match_enumeration() {
        let (g, h) = cycle_setup(3);
        let w = WeightFunction::uniform(h.len());
        // n = (2,2,2), N = 3: exactly the 6 permutations of the three edges,
        // so X = (0,1,1,1) deterministically.
        let m = exact_moments(&g, &h, &w, &[2, 2, 2], 3, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(m.z, 6.0);
        assert_eq!(m.mean, vec![0.0, 1.0, 1.0, 1.0]);
        for t in 1..4 {
            for u in 1..4 {
                assert_eq!(m.second[t][u], 1.0);
            }
        }
        // n = (2,2,0), N = 3: two colors on edge {1,2}, one empty; X is
        // deterministic (1, 2, 0, 0).
        let m = exact_moments(&g, &h, &w, &[2, 2, 0], 3, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(m.z, 3.0);
        assert_eq!(m.mean, vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(m.second[1][1], 4.0);
        assert_eq!(m.second[0][1], 2.0);
        let cov = m.covariance();
        for row in &cov {
            for &c in row {
                assert!(c.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn moment_identities() {
        // Σ_t E(X_t) = N and Σ_t t_v E(X_t) = n_v on a nondegenerate case.
        let (g, h) = cycle_setup(5);
        let w = WeightFunction::uniform(h.len());
        let n = [2, 2, 2, 2, 2];
        let colors = 4;
        let m = exact_moments(&g, &h, &w, &n, colors, DEFAULT_STATE_CAP).unwrap();
        let total: f64 = m.mean.iter().sum();
        assert!((total - colors as f64).abs() < 1e-10);
        for v in 0..5 {
            let cover: f64 = m
                .mean
                .iter()
                .zip(&h)
                .map(|(&e, t)| e * t.tile().multiplicity()[v] as f64)
                .sum();
            assert!((cover - n[v] as f64).abs() < 1e-10, "vertex {v}");
        }
    }

    #[test]
    fn infeasible_moments_rejected() {
        let (g, h) = cycle_setup(3);
        let w = WeightFunction::uniform(h.len());
        assert!(matches!(
            exact_moments(&g, &h, &w, &[1, 1, 1], 3, DEFAULT_STATE_CAP),
            Err(Error::InfeasibleMultiplicity(_))
        ));
    }

    #[test]
    fn rejects_nonpositive_weights() {
        assert!(WeightFunction::new(vec![1.0, 0.0]).is_err());
        assert!(WeightFunction::new(vec![1.0, -2.0]).is_err());
        assert!(WeightFunction::new(vec![f64::NAN]).is_err());
    }
}
