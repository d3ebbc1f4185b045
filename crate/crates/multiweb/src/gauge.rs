//! Feasibility of a coverage density and the critical gauge.
//!
//! For a target density `α` (expected coverage per vertex, per color count),
//! the critical gauge is the unique reweighting `w'(t) = w(t) Π_v x_v^{t_v}`
//! with `Σ_t t_v w'(t) = α_v` and `Σ_t w'(t) = 1`. It is found by minimizing
//! the convex function `F(y) = log P(e^y) - Σ_v α_v y_v` over the homogenized
//! log coordinates `y`; the gradient of `F` is exactly the criticality
//! residual, and its Hessian is the covariance of the exponent vector under
//! the current tile distribution, so a damped Newton iteration converges
//! quadratically once near the optimum.
//!
//! `F` is flat along the global-scale direction and along `ker Dᵀ` (the
//! gauge modes, nontrivial on even cycles); those directions are projected
//! out of every Newton step.

use nalgebra::{DMatrix, DVector};

use crate::error::Error;
use crate::poly::WeightFunction;
use crate::tiles::HomogenizedTile;
use crate::Result;

/// Classification of a density against the tile polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    /// Some distribution on tiles with the target coverage puts positive
    /// probability on every tile.
    StrictlyFeasible,
    /// The coverage is attainable but only on the boundary of the simplex.
    Boundary,
    /// No distribution on tiles attains the coverage.
    Infeasible,
}

/// Per-vertex coverage density `α_v > 0` for the graph vertices; the zero
/// vertex's density `α_0 = V - Σ_v α_v` is always derived, never an input.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityVector(Vec<f64>);

impl DensityVector {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
            return Err(Error::InvalidArgument(
                "density entries must be positive and finite".into(),
            ));
        }
        Ok(DensityVector(alpha))
    }

    pub fn uniform(vertex_count: usize, alpha: f64) -> Result<Self> {
        DensityVector::new(vec![alpha; vertex_count])
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

    /// `(α_0, α_1, ..., α_V)` with the derived zero-vertex density.
    pub fn homogenized(&self) -> Vec<f64> {
        let v = self.0.len() as f64;
        let sum: f64 = self.0.iter().sum();
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(v - sum);
        out.extend_from_slice(&self.0);
        out
    }
}

/// Result of [`solve_critical_gauge`].
#[derive(Debug, Clone)]
pub struct CriticalGauge {
    /// Positive point `(x_0, ..., x_V)` solving the criticality equations,
    /// normalized so the homogenized polynomial evaluates to 1.
    pub x: Vec<f64>,
    /// Critical weights `w'(t)`; they sum to 1 and are unique within the
    /// gauge class of the input weights.
    pub weights: Vec<f64>,
    /// Growth rate `σ = log P(x) - Σ_v α_v log x_v`.
    pub sigma: f64,
    pub iterations: usize,
    /// Final `‖Σ_t t w'(t) - α‖_∞`.
    pub residual: f64,
}

/// Solver knobs; defaults match the documented contract.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Convergence threshold on the sup-norm of the criticality residual.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-12,
            max_iterations: 200,
        }
    }
}

// ---------------------------------------------------------------------------
// Feasibility LP
// ---------------------------------------------------------------------------

/// Classifies `α` by solving `max ε` subject to `p ≥ ε`, `Σ p = 1`,
/// `Σ_t t_v p_t = α_v`, with a dense two-phase simplex. The zero-vertex row
/// is implied by the others and omitted.
pub fn check_feasible(tiles: &[HomogenizedTile], alpha: &DensityVector) -> Result<Feasibility> {
    if tiles.is_empty() {
        return Err(Error::InvalidArgument("no tiles".into()));
    }
    let vcount = tiles[0].tile().multiplicity().len();
    if alpha.len() != vcount {
        return Err(Error::InvalidArgument(format!(
            "density has {} entries for {} vertices",
            alpha.len(),
            vcount
        )));
    }
    let t = tiles.len();
    // Columns: p_0..p_{t-1}, e+, e-, s_0..s_{t-1}, artificials a_0..a_V.
    let n_real = 2 * t + 2;
    let n_art = vcount + 1;
    let n = n_real + n_art;
    let m = t + 1 + vcount;
    let mut a = vec![vec![0.0f64; n]; m];
    let mut b = vec![0.0f64; m];
    let mut basis = vec![0usize; m];

    // Rows 0..t: -p_i + e+ - e- + s_i = 0, slack basic.
    for i in 0..t {
        a[i][i] = -1.0;
        a[i][t] = 1.0;
        a[i][t + 1] = -1.0;
        a[i][t + 2 + i] = 1.0;
        basis[i] = t + 2 + i;
    }
    // Row t: Σ p = 1, artificial basic.
    for j in 0..t {
        a[t][j] = 1.0;
    }
    a[t][n_real] = 1.0;
    b[t] = 1.0;
    basis[t] = n_real;
    // Rows t+1..: Σ_t t_v p_t = α_v, artificial basic.
    for v in 0..vcount {
        for (j, tile) in tiles.iter().enumerate() {
            a[t + 1 + v][j] = tile.tile().multiplicity()[v] as f64;
        }
        a[t + 1 + v][n_real + 1 + v] = 1.0;
        b[t + 1 + v] = alpha.values()[v];
        basis[t + 1 + v] = n_real + 1 + v;
    }

    // Phase 1: maximize -(Σ artificials).
    let mut cost1 = vec![0.0f64; n];
    for j in n_real..n {
        cost1[j] = -1.0;
    }
    let phase1 = run_simplex(&mut a, &mut b, &mut basis, &cost1, n)?;
    if phase1 < -1e-9 {
        return Ok(Feasibility::Infeasible);
    }
    // Drive any artificial still basic (at zero) out of the basis, so a
    // phase-2 pivot cannot silently re-relax its equality row. Rows with no
    // real coefficient left are redundant constraints; zero them out.
    for i in 0..m {
        if basis[i] >= n_real {
            match (0..n_real).find(|&j| a[i][j].abs() > 1e-9) {
                Some(j) => pivot_tableau(&mut a, &mut b, &mut basis, i, j),
                None => {
                    for j in 0..n {
                        a[i][j] = 0.0;
                    }
                    b[i] = 0.0;
                }
            }
        }
    }

    // Phase 2: maximize e+ - e-, artificials barred from entering.
    let mut cost2 = vec![0.0f64; n];
    cost2[t] = 1.0;
    cost2[t + 1] = -1.0;
    let eps = run_simplex(&mut a, &mut b, &mut basis, &cost2, n_real)?;
    if eps > 1e-9 {
        Ok(Feasibility::StrictlyFeasible)
    } else {
        Ok(Feasibility::Boundary)
    }
}

/// Maximizes `cost · z` over the tableau, entering only columns `< allowed`.
/// Dantzig pricing with a permanent switch to Bland's rule after a stall, so
/// termination is guaranteed. Returns the optimal objective.
fn run_simplex(
    a: &mut [Vec<f64>],
    b: &mut [f64],
    basis: &mut [usize],
    cost: &[f64],
    allowed: usize,
) -> Result<f64> {
    let m = a.len();
    let n = cost.len();
    // Reduced costs for the current basis.
    let mut r = cost.to_vec();
    for i in 0..m {
        let cb = cost[basis[i]];
        if cb != 0.0 {
            for j in 0..n {
                r[j] -= cb * a[i][j];
            }
        }
    }
    let objective = |basis: &[usize], b: &[f64]| -> f64 {
        basis.iter().zip(b).map(|(&j, &bi)| cost[j] * bi).sum()
    };
    let mut best = objective(basis, b);
    let mut stalled = 0usize;
    let mut bland = false;
    for _pivots in 0..100_000 {
        // Entering column.
        let mut col = None;
        if bland {
            for j in 0..allowed {
                if r[j] > 1e-9 {
                    col = Some(j);
                    break;
                }
            }
        } else {
            let mut bestv = 1e-9;
            for j in 0..allowed {
                if r[j] > bestv {
                    bestv = r[j];
                    col = Some(j);
                }
            }
        }
        let Some(col) = col else {
            return Ok(objective(basis, b));
        };
        // Leaving row: min ratio, ties by smallest basis index (Bland-safe).
        let mut row = None;
        let mut best_ratio = f64::INFINITY;
        for i in 0..m {
            if a[i][col] > 1e-11 {
                let ratio = b[i] / a[i][col];
                let better = ratio < best_ratio - 1e-12
                    || (ratio < best_ratio + 1e-12
                        && row.is_some_and(|ri: usize| basis[i] < basis[ri]));
                if better || row.is_none() {
                    best_ratio = ratio.min(best_ratio);
                    row = Some(i);
                }
            }
        }
        let Some(row) = row else {
            return Err(Error::Numeric("feasibility LP is unbounded".into()));
        };
        pivot_tableau(a, b, basis, row, col);
        let f = r[col];
        for j in 0..n {
            r[j] -= f * a[row][j];
        }
        let obj = objective(basis, b);
        if obj > best + 1e-12 {
            best = obj;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled > 100 {
                bland = true;
            }
        }
    }
    Err(Error::Numeric("feasibility LP exceeded pivot cap".into()))
}

/// Gauss-Jordan pivot on `(row, col)`: row scaled to pivot 1, the column
/// eliminated from every other row, the basis updated.
fn pivot_tableau(a: &mut [Vec<f64>], b: &mut [f64], basis: &mut [usize], row: usize, col: usize) {
    let n = a[row].len();
    let pivot = a[row][col];
    for j in 0..n {
        a[row][j] /= pivot;
    }
    b[row] /= pivot;
    for i in 0..a.len() {
        if i != row && a[i][col] != 0.0 {
            let f = a[i][col];
            for j in 0..n {
                a[i][j] -= f * a[row][j];
            }
            b[i] -= f * b[row];
            if b[i].abs() < 1e-13 {
                b[i] = b[i].max(0.0);
            }
        }
    }
    basis[row] = col;
}

// ---------------------------------------------------------------------------
// Newton solver on exponent systems
// ---------------------------------------------------------------------------

/// A weighted set of exponent vectors: the data the convex solver actually
/// needs. Built from homogenized tiles here and from the size-reduced cycle
/// system in the cycle module.
pub(crate) struct ExponentSystem {
    /// Term exponents, each of length `dim`.
    pub exponents: Vec<Vec<f64>>,
    pub log_weights: Vec<f64>,
    pub dim: usize,
}

impl ExponentSystem {
    pub fn from_tiles(tiles: &[HomogenizedTile], w: &WeightFunction) -> ExponentSystem {
        let dim = tiles
            .first()
            .map(|t| t.exponents().len())
            .unwrap_or(1);
        ExponentSystem {
            exponents: tiles
                .iter()
                .map(|t| t.exponents().iter().map(|&e| e as f64).collect())
                .collect(),
            log_weights: w.values().iter().map(|&w| w.ln()).collect(),
            dim,
        }
    }

    /// `log Σ_t w_t exp(⟨t, y⟩)` and the tile distribution π at `y`.
    fn log_sum_and_dist(&self, y: &DVector<f64>) -> (f64, Vec<f64>) {
        let scores: Vec<f64> = self
            .exponents
            .iter()
            .zip(&self.log_weights)
            .map(|(e, &lw)| lw + e.iter().zip(y.iter()).map(|(&a, &b)| a * b).sum::<f64>())
            .collect();
        let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = scores.iter().map(|&s| (s - max).exp()).sum();
        let log_sum = max + sum.ln();
        let dist = scores.iter().map(|&s| (s - log_sum).exp()).collect();
        (log_sum, dist)
    }

    fn objective(&self, y: &DVector<f64>, target: &DVector<f64>) -> f64 {
        let (log_sum, _) = self.log_sum_and_dist(y);
        log_sum - target.dot(y)
    }

    /// Orthonormal basis of the flat directions: `ker Dᵀ` plus the global
    /// scale vector. Computed once from the Gram matrix of the exponent rows
    /// with a relative rank threshold.
    fn kernel_basis(&self) -> Vec<DVector<f64>> {
        let dim = self.dim;
        let mut gram = DMatrix::<f64>::zeros(dim, dim);
        for e in &self.exponents {
            for i in 0..dim {
                for j in 0..dim {
                    gram[(i, j)] += e[i] * e[j];
                }
            }
        }
        let (values, vectors) = crate::linalg::sym_eigen(&gram);
        let lmax = values.iter().cloned().fold(0.0f64, f64::max);
        let mut basis: Vec<DVector<f64>> = Vec::new();
        for (k, &lambda) in values.iter().enumerate() {
            if lambda <= 1e-10 * lmax.max(1.0) {
                basis.push(vectors.column(k).into_owned());
            }
        }
        basis.push(DVector::from_element(dim, 1.0));
        orthonormalize(basis)
    }

    /// Damped Newton minimization of `F(y) = log P(e^y) - ⟨target, y⟩` from
    /// `y = 0`. Returns `(y, iterations, residual)`.
    pub fn solve(&self, target: &[f64], opts: SolveOptions) -> Result<(DVector<f64>, usize, f64)> {
        let dim = self.dim;
        let target = DVector::from_column_slice(target);
        let kernel = self.kernel_basis();
        let project = |v: &DVector<f64>| -> DVector<f64> {
            let mut out = v.clone();
            for k in &kernel {
                let c = k.dot(v);
                out -= k * c;
            }
            out
        };
        let mut y = DVector::<f64>::zeros(dim);
        let mut fy = self.objective(&y, &target);
        for iter in 0..opts.max_iterations {
            let (_, dist) = self.log_sum_and_dist(&y);
            let mut mu = DVector::<f64>::zeros(dim);
            for (e, &p) in self.exponents.iter().zip(&dist) {
                for i in 0..dim {
                    mu[i] += p * e[i];
                }
            }
            let grad = &mu - &target;
            let residual = grad.amax();
            if residual <= opts.tol {
                return Ok((y, iter, residual));
            }
            // Hessian: covariance of the exponent vector under π.
            let mut hess = DMatrix::<f64>::zeros(dim, dim);
            for (e, &p) in self.exponents.iter().zip(&dist) {
                for i in 0..dim {
                    for j in 0..dim {
                        hess[(i, j)] += p * e[i] * e[j];
                    }
                }
            }
            for i in 0..dim {
                for j in 0..dim {
                    hess[(i, j)] -= mu[i] * mu[j];
                }
            }
            // Restrict to the complement of the flat directions and make the
            // system solvable by adding the kernel projector.
            let mut hp = project_matrix(&hess, &kernel);
            for k in &kernel {
                hp += k * k.transpose();
            }
            let pg = project(&grad);
            let mut ridge = 0.0f64;
            let direction = loop {
                let reg = &hp
                    + DMatrix::<f64>::identity(dim, dim) * ridge;
                if let Some(chol) = reg.clone().cholesky() {
                    break project(&chol.solve(&(-&pg)));
                }
                ridge = if ridge == 0.0 {
                    1e-12 * hp.trace().max(1.0)
                } else {
                    ridge * 10.0
                };
                if ridge > 1e6 {
                    return Err(Error::Numeric(
                        "Hessian regularization failed".into(),
                    ));
                }
            };
            let slope = grad.dot(&direction);
            if slope >= 0.0 {
                return Err(Error::Numeric(
                    "Newton direction is not a descent direction".into(),
                ));
            }
            // Backtracking line search (Armijo, factor 1/2).
            let mut step = 1.0f64;
            let mut accepted = false;
            for _ in 0..60 {
                let trial = &y + &direction * step;
                let ftrial = self.objective(&trial, &target);
                if ftrial <= fy + 0.25 * step * slope {
                    y = trial;
                    fy = ftrial;
                    accepted = true;
                    break;
                }
                // Near the optimum the predicted decrease falls below the
                // rounding noise of the objective while the gradient still
                // contracts quadratically; accept the full Newton step on
                // clear gradient descent.
                if step == 1.0 {
                    let (_, tdist) = self.log_sum_and_dist(&trial);
                    let mut tres = 0.0f64;
                    for i in 0..dim {
                        let mut mi = 0.0;
                        for (e, &p) in self.exponents.iter().zip(&tdist) {
                            mi += p * e[i];
                        }
                        tres = tres.max((mi - target[i]).abs());
                    }
                    if tres <= 0.5 * residual {
                        y = trial;
                        fy = ftrial;
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if !accepted {
                return Err(Error::NoConvergence {
                    iterations: iter,
                    residual,
                });
            }
        }
        let (_, dist) = self.log_sum_and_dist(&y);
        let mut residual = 0.0f64;
        for i in 0..dim {
            let mut mu = 0.0;
            for (e, &p) in self.exponents.iter().zip(&dist) {
                mu += p * e[i];
            }
            residual = residual.max((mu - target[i]).abs());
        }
        Err(Error::NoConvergence {
            iterations: opts.max_iterations,
            residual,
        })
    }
}

fn project_matrix(h: &DMatrix<f64>, kernel: &[DVector<f64>]) -> DMatrix<f64> {
    // P H P with P = I - Σ k kᵀ.
    let mut out = h.clone();
    for k in kernel {
        let hk = &out * k;
        out -= &hk * k.transpose();
    }
    for k in kernel {
        let kh = k.transpose() * &out;
        out -= k * kh;
    }
    out
}

fn orthonormalize(vectors: Vec<DVector<f64>>) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            let c = b.dot(&v);
            v -= b * c;
        }
        let norm = v.norm();
        if norm > 1e-8 {
            basis.push(v / norm);
        }
    }
    basis
}

// ---------------------------------------------------------------------------
// Public solver entry points
// ---------------------------------------------------------------------------

/// Solves for the critical gauge at density `alpha`. Fails with
/// `NotFeasible` unless the density is strictly inside the tile polytope.
pub fn solve_critical_gauge(
    tiles: &[HomogenizedTile],
    w: &WeightFunction,
    alpha: &DensityVector,
    opts: SolveOptions,
) -> Result<CriticalGauge> {
    if tiles.len() != w.len() {
        return Err(Error::InvalidArgument("one weight per tile".into()));
    }
    match check_feasible(tiles, alpha)? {
        Feasibility::StrictlyFeasible => {}
        Feasibility::Boundary => {
            return Err(Error::NotFeasible(
                "density lies on the boundary of the tile polytope".into(),
            ))
        }
        Feasibility::Infeasible => {
            return Err(Error::NotFeasible(
                "density lies outside the tile polytope".into(),
            ))
        }
    }
    let system = ExponentSystem::from_tiles(tiles, w);
    let target = alpha.homogenized();
    let degree = tiles[0].tile().multiplicity().len() as f64;
    solve_system(&system, &target, degree, opts)
}

/// Newton solve plus normalization for an explicit exponent system of the
/// given homogeneous degree. The graph entry point above adds the
/// feasibility gate; the size-reduced cycle system calls this directly.
pub(crate) fn solve_system(
    system: &ExponentSystem,
    target: &[f64],
    degree: f64,
    opts: SolveOptions,
) -> Result<CriticalGauge> {
    let (y, iterations, residual) = system.solve(target, opts)?;
    // Normalize the global scale so P(x) = 1; by homogeneity this multiplies
    // x by a constant and leaves the residual and σ unchanged.
    let (log_p, _) = system.log_sum_and_dist(&y);
    let shift = if degree > 0.0 { -log_p / degree } else { 0.0 };
    let x: Vec<f64> = y.iter().map(|&yi| (yi + shift).exp()).collect();
    let sigma = growth_rate_from_system(system, &x, target);
    let weights: Vec<f64> = system
        .exponents
        .iter()
        .zip(&system.log_weights)
        .map(|(e, &lw)| {
            (lw + e
                .iter()
                .zip(&x)
                .map(|(&ev, &xv)| ev * xv.ln())
                .sum::<f64>())
            .exp()
        })
        .collect();
    Ok(CriticalGauge {
        x,
        weights,
        sigma,
        iterations,
        residual,
    })
}

/// Growth rate `σ = log P(x) - Σ_v α_v log x_v` at an arbitrary positive
/// point, in homogenized coordinates. Invariant under rescaling `x` along
/// the global-scale and gauge directions.
pub fn growth_rate(
    tiles: &[HomogenizedTile],
    w: &WeightFunction,
    x: &[f64],
    alpha: &DensityVector,
) -> f64 {
    let system = ExponentSystem::from_tiles(tiles, w);
    growth_rate_from_system(&system, x, &alpha.homogenized())
}

fn growth_rate_from_system(system: &ExponentSystem, x: &[f64], target: &[f64]) -> f64 {
    let y = DVector::from_iterator(x.len(), x.iter().map(|&xv| xv.ln()));
    let (log_p, _) = system.log_sum_and_dist(&y);
    log_p
        - target
            .iter()
            .zip(x)
            .map(|(&a, &xv)| a * xv.ln())
            .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::tiles::{enumerate_tiles, homogenize};

    fn cycle_tiles(l: usize) -> Vec<HomogenizedTile> {
        let g = Graph::cycle(l).unwrap();
        let tiles = enumerate_tiles(&g).unwrap();
        homogenize(&tiles, g.vertex_count())
    }

    #[test]
    fn feasibility_classification_cycle3() {
        let tiles = cycle_tiles(3);
        let strict = DensityVector::uniform(3, 0.5).unwrap();
        let boundary = DensityVector::uniform(3, 2.0 / 3.0).unwrap();
        let outside = DensityVector::uniform(3, 0.9).unwrap();
        assert_eq!(
            check_feasible(&tiles, &strict).unwrap(),
            Feasibility::StrictlyFeasible
        );
        assert_eq!(
            check_feasible(&tiles, &boundary).unwrap(),
            Feasibility::Boundary
        );
        assert_eq!(
            check_feasible(&tiles, &outside).unwrap(),
            Feasibility::Infeasible
        );
    }

    #[test]
    fn feasible_range_odd_cycles() {
        // Uniform α on cycle(L) is strictly feasible exactly on (0, (L-1)/L).
        for l in [5usize, 7] {
            let tiles = cycle_tiles(l);
            let hi = (l as f64 - 1.0) / l as f64;
            for &(alpha, expect) in &[
                (0.05, Feasibility::StrictlyFeasible),
                (0.5, Feasibility::StrictlyFeasible),
                (hi - 0.01, Feasibility::StrictlyFeasible),
                (hi, Feasibility::Boundary),
                (hi + 0.01, Feasibility::Infeasible),
            ] {
                let a = DensityVector::uniform(l, alpha).unwrap();
                assert_eq!(check_feasible(&tiles, &a).unwrap(), expect, "L={l} α={alpha}");
            }
        }
    }

    #[test]
    fn critical_gauge_cycle3_exact_point() {
        let tiles = cycle_tiles(3);
        let w = WeightFunction::uniform(4);
        let alpha = DensityVector::uniform(3, 0.5).unwrap();
        let sol = solve_critical_gauge(&tiles, &w, &alpha, SolveOptions::default()).unwrap();
        let expected = 4f64.powf(-1.0 / 3.0);
        for &xi in &sol.x {
            assert!((xi - expected).abs() < 1e-12, "x = {:?}", sol.x);
        }
        for &wt in &sol.weights {
            assert!((wt - 0.25).abs() < 1e-12);
        }
        assert!((sol.sigma - 4f64.ln()).abs() < 1e-12);
        assert!(sol.residual <= 1e-12);
    }

    #[test]
    fn critical_gauge_cycle5_uniform() {
        let tiles = cycle_tiles(5);
        let w = WeightFunction::uniform(11);
        let alpha = DensityVector::uniform(5, 6.0 / 11.0).unwrap();
        let sol = solve_critical_gauge(&tiles, &w, &alpha, SolveOptions::default()).unwrap();
        for &wt in &sol.weights {
            assert!((wt - 1.0 / 11.0).abs() < 1e-12);
        }
        assert!((sol.sigma - 11f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn criticality_equations_hold() {
        // Non-uniform density and weights: residual must still vanish and
        // the critical weights sum to one.
        let tiles = cycle_tiles(5);
        let w = WeightFunction::new(
            (0..11).map(|i| 0.5 + 0.1 * i as f64).collect(),
        )
        .unwrap();
        let alpha = DensityVector::new(vec![0.5, 0.55, 0.6, 0.45, 0.5]).unwrap();
        let sol = solve_critical_gauge(&tiles, &w, &alpha, SolveOptions::default()).unwrap();
        let target = alpha.homogenized();
        for v in 0..6 {
            let cover: f64 = tiles
                .iter()
                .zip(&sol.weights)
                .map(|(t, &wt)| t.exponents()[v] as f64 * wt)
                .sum();
            assert!((cover - target[v]).abs() <= 1e-11, "vertex {v}");
        }
        let total: f64 = sol.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-11);
    }

    #[test]
    fn infeasible_density_rejected() {
        let tiles = cycle_tiles(3);
        let w = WeightFunction::uniform(4);
        for alpha in [2.0 / 3.0, 0.9] {
            let a = DensityVector::uniform(3, alpha).unwrap();
            assert!(matches!(
                solve_critical_gauge(&tiles, &w, &a, SolveOptions::default()),
                Err(Error::NotFeasible(_))
            ));
        }
    }

    #[test]
    fn gauge_equivalent_weights_share_critical_point() {
        // w'(t) = w(t) Π_{v∈t} f(v) is gauge-equivalent; the critical
        // weights are a gauge invariant, and σ shifts by Σ_v α_v log f_v.
        let tiles = cycle_tiles(5);
        let base = WeightFunction::uniform(11);
        let f: [f64; 5] = [1.3, 0.7, 2.0, 1.1, 0.9];
        let gauged = WeightFunction::new(
            tiles
                .iter()
                .map(|t| {
                    t.tile()
                        .multiplicity()
                        .iter()
                        .zip(&f)
                        .map(|(&m, &fv)| fv.powi(m as i32))
                        .product()
                })
                .collect(),
        )
        .unwrap();
        let alpha = DensityVector::new(vec![0.5, 0.52, 0.48, 0.51, 0.49]).unwrap();
        let a = solve_critical_gauge(&tiles, &base, &alpha, SolveOptions::default()).unwrap();
        let b = solve_critical_gauge(&tiles, &gauged, &alpha, SolveOptions::default()).unwrap();
        for (wa, wb) in a.weights.iter().zip(&b.weights) {
            assert!((wa - wb).abs() < 1e-9, "{wa} vs {wb}");
        }
        let shift: f64 = alpha
            .values()
            .iter()
            .zip(&f)
            .map(|(&av, &fv)| av * fv.ln())
            .sum();
        assert!((b.sigma - a.sigma - shift).abs() < 1e-9);
    }

    #[test]
    fn growth_rate_scale_invariance() {
        // Even cycle: ker Dᵀ contains the alternating vector; σ must not
        // move under global or gauge rescaling of x.
        let tiles = cycle_tiles(4);
        let w = WeightFunction::uniform(tiles.len());
        let alpha = DensityVector::uniform(4, 0.5).unwrap();
        let sol = solve_critical_gauge(&tiles, &w, &alpha, SolveOptions::default()).unwrap();
        let sigma0 = growth_rate(&tiles, &w, &sol.x, &alpha);
        let scaled: Vec<f64> = sol.x.iter().map(|&x| 1.7 * x).collect();
        let alternating: Vec<f64> = sol
            .x
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                if i == 0 {
                    x
                } else if i % 2 == 1 {
                    x * 1.25
                } else {
                    x / 1.25
                }
            })
            .collect();
        assert!((growth_rate(&tiles, &w, &scaled, &alpha) - sigma0).abs() < 1e-10);
        assert!((growth_rate(&tiles, &w, &alternating, &alpha) - sigma0).abs() < 1e-10);
        assert!((sol.sigma - sigma0).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let tiles = cycle_tiles(5);
        let w = WeightFunction::new((0..11).map(|i| 1.0 + 0.07 * i as f64).collect()).unwrap();
        let system = ExponentSystem::from_tiles(&tiles, &w);
        let alpha = DensityVector::uniform(5, 0.5).unwrap();
        let target = DVector::from_column_slice(&alpha.homogenized());
        let y = DVector::from_column_slice(&[0.1, -0.2, 0.05, 0.3, -0.1, 0.2]);
        let (_, dist) = system.log_sum_and_dist(&y);
        for v in 0..6 {
            let mut grad = -target[v];
            for (e, &p) in system.exponents.iter().zip(&dist) {
                grad += p * e[v];
            }
            let h = 1e-6;
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[v] += h;
            ym[v] -= h;
            let fd = (system.objective(&yp, &target) - system.objective(&ym, &target)) / (2.0 * h);
            assert!((grad - fd).abs() < 1e-6, "component {v}: {grad} vs {fd}");
        }
    }

    #[test]
    fn objective_is_convex_on_segments() {
        let tiles = cycle_tiles(5);
        let w = WeightFunction::uniform(11);
        let system = ExponentSystem::from_tiles(&tiles, &w);
        let target = DVector::from_column_slice(
            &DensityVector::uniform(5, 0.5).unwrap().homogenized(),
        );
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for _ in 0..50 {
            let a = DVector::from_iterator(6, (0..6).map(|_| next()));
            let b = DVector::from_iterator(6, (0..6).map(|_| next()));
            let mid = (&a + &b) * 0.5;
            let fmid = system.objective(&mid, &target);
            let favg =
                0.5 * (system.objective(&a, &target) + system.objective(&b, &target));
            assert!(fmid <= favg + 1e-12, "convexity violated: {fmid} > {favg}");
        }
    }
}
