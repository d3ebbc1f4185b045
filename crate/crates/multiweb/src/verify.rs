//! Cross-oracle verification suite: every closed form in the crate checked
//! against an independent computation, one named property per check.
//!
//! Each property pits a closed-form expression against a second route to the
//! same quantity (brute-force enumeration, dynamic programming, dense linear
//! algebra, or an exhaustive sampler run), so a regression in either side
//! surfaces as a named failure. The suite is deterministic: fixed seeds,
//! fixed ranges, no wall-clock dependence. `quick` shrinks the ranges for
//! fast smoke runs without dropping any property.

use nalgebra::DMatrix;
use num::rational::BigRational;
use num::traits::{One, Zero};
use num::BigInt;

use crate::cycle::CycleParams;
use crate::gauge::{solve_critical_gauge, DensityVector, SolveOptions};
use crate::graph::Graph;
use crate::laplacian::{
    build_laplacian, gaussian_law, pseudo_inverse_on_image, IncidenceMatrix, TileWeightDiagonal,
};
use crate::numbers::{bigint_to_f64, fib, lucas, ratio_to_f64};
use crate::poly::{partition_function_exact, tiling_polynomial, WeightFunction};
use crate::sampler::{enumerate_assignments, total_variation, ChainConfig, HeatBathSampler};
use crate::tiles::{count_tiles, enumerate_tiles, homogenize};
use crate::window::{coverage_counts, enumerate_local_configs, local_law, local_limits};
use crate::Result;

/// Range and tolerance knobs for [`run_suite`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Shrinks every range to a fast smoke configuration.
    pub quick: bool,
    /// Tolerance for the 10^-9-family agreement checks.
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            quick: false,
            tol: 1e-9,
        }
    }
}

/// Outcome of one named property.
#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    /// Failure explanation, or an informational note on some passes.
    pub detail: String,
}

type Check = fn(&VerifyOptions) -> std::result::Result<String, String>;

/// Runs every property and collects the outcomes in order.
pub fn run_suite(opts: &VerifyOptions) -> Vec<PropertyResult> {
    let checks: &[(&'static str, Check)] = &[
        ("tile-counts-match-recurrences", tile_counts_match_recurrences),
        ("critical-density-rational-forms-agree", alpha_forms_agree),
        ("critical-gauge-uniformizes-cycles", gauge_uniformizes_cycles),
        ("growth-rate-equals-log-tile-count", growth_rate_matches),
        ("reduced-polynomial-matches-enumeration", reduced_poly_matches),
        ("closed-inverse-inverts-laplacian", closed_inverse_inverts),
        ("eigenvalue-formula-matches-dft-for-positive-modes", eigenvalues_match_for_positive_modes),
        ("eigenvalue-formula-mode-zero-erratum", mode_zero_erratum),
        ("mode-sum-triple-agreement", mode_sum_triple_agreement),
        ("gaussian-law-conservation", gaussian_law_conservation),
        ("exact-covariance-approaches-gaussian", exact_cov_approaches_gaussian),
        ("partition-function-routes-agree", partition_function_routes_agree),
        ("window-partition-identity", window_partition_identity),
        ("window-law-consistent-with-tile-law", window_law_consistency),
        ("window-limits-match-finite-evaluation", window_limits_match),
        ("sampler-matches-exact-law", sampler_matches_exact_law),
    ];
    checks
        .iter()
        .map(|&(name, check)| match check(opts) {
            Ok(note) => PropertyResult {
                name,
                passed: true,
                detail: note,
            },
            Err(detail) => PropertyResult {
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

/// Prints one `PASS`/`FAIL` line per property; returns the failure count.
pub fn report(results: &[PropertyResult]) -> usize {
    let mut failures = 0;
    for r in results {
        if r.passed {
            if r.detail.is_empty() {
                println!("PASS {}", r.name);
            } else {
                println!("PASS {} ({})", r.name, r.detail);
            }
        } else {
            failures += 1;
            println!("FAIL {}: {}", r.name, r.detail);
        }
    }
    failures
}

fn odd_cycles(opts: &VerifyOptions, full_max: usize, quick_max: usize) -> Vec<usize> {
    let max = if opts.quick { quick_max } else { full_max };
    (3..=max).step_by(2).collect()
}

fn cycle_tiles(l: usize) -> Result<(Graph, Vec<crate::tiles::HomogenizedTile>)> {
    let g = Graph::cycle(l)?;
    let tiles = enumerate_tiles(&g)?;
    let h = homogenize(&tiles, g.vertex_count());
    Ok((g, h))
}

fn tile_counts_match_recurrences(opts: &VerifyOptions) -> std::result::Result<String, String> {
    for l in odd_cycles(opts, 17, 9) {
        let g = Graph::cycle(l).map_err(|e| e.to_string())?;
        let counted = count_tiles(&g).map_err(|e| e.to_string())?;
        if counted != lucas(l as u64) {
            return Err(format!("cycle({l}): DFS count {counted} != Lucas number"));
        }
        if l <= 13 {
            let listed = enumerate_tiles(&g).map_err(|e| e.to_string())?.len();
            if BigInt::from(listed) != counted {
                return Err(format!("cycle({l}): enumeration lists {listed}, count says {counted}"));
            }
        }
    }
    let n_max = if opts.quick { 10 } else { 20 };
    for n in 1..=n_max {
        let g = Graph::path(n);
        let counted = count_tiles(&g).map_err(|e| e.to_string())?;
        if counted != fib(n as i64 + 1) {
            return Err(format!("path({n}): DFS count {counted} != Fibonacci number"));
        }
    }
    Ok(String::new())
}

fn alpha_forms_agree(opts: &VerifyOptions) -> std::result::Result<String, String> {
    for l in odd_cycles(opts, 13, 7) {
        let params = CycleParams::new(l).map_err(|e| e.to_string())?;
        let closed = params.alpha_hat();
        // Route 2: mean coverage 2 Σ_t s(t) / (L |T|) over enumerated tiles.
        let g = Graph::cycle(l).map_err(|e| e.to_string())?;
        let tiles = enumerate_tiles(&g).map_err(|e| e.to_string())?;
        let total_size: usize = tiles.iter().map(|t| t.size()).sum();
        let by_mean = BigRational::new(
            BigInt::from(2 * total_size),
            BigInt::from(l * tiles.len()),
        );
        // Route 3: 1 - |T(P_{L-1})| / |T(C_L)| via the counting split.
        let by_split = BigRational::one()
            - BigRational::new(fib(l as i64), lucas(l as u64));
        if closed != by_mean || closed != by_split {
            return Err(format!(
                "cycle({l}): closed form {closed}, mean route {by_mean}, split route {by_split}"
            ));
        }
    }
    Ok(String::new())
}

fn gauge_uniformizes_cycles(opts: &VerifyOptions) -> std::result::Result<String, String> {
    for l in odd_cycles(opts, 13, 5) {
        let (g, h) = cycle_tiles(l).map_err(|e| e.to_string())?;
        let params = CycleParams::new(l).map_err(|e| e.to_string())?;
        let alpha = ratio_to_f64(&params.alpha_hat());
        let target =
            DensityVector::uniform(g.vertex_count(), alpha).map_err(|e| e.to_string())?;
        let w = WeightFunction::uniform(h.len());
        let gauge = solve_critical_gauge(&h, &w, &target, SolveOptions::default())
            .map_err(|e| e.to_string())?;
        let t = bigint_to_f64(&params.tile_count());
        let expected_x = t.powf(-1.0 / l as f64);
        for (v, &xv) in gauge.x.iter().enumerate().skip(1) {
            if (xv - expected_x).abs() > 1e-9 {
                return Err(format!(
                    "cycle({l}) vertex {v}: x = {xv}, expected |T|^(-1/L) = {expected_x}"
                ));
            }
        }
        for (ti, &wt) in gauge.weights.iter().enumerate() {
            if (wt - 1.0 / t).abs() > 1e-9 {
                return Err(format!(
                    "cycle({l}) tile {ti}: critical weight {wt}, expected 1/|T| = {}",
                    1.0 / t
                ));
            }
        }
    }
    Ok(String::new())
}

fn growth_rate_matches(opts: &VerifyOptions) -> std::result::Result<String, String> {
    for l in odd_cycles(opts, 13, 5) {
        let (g, h) = cycle_tiles(l).map_err(|e| e.to_string())?;
        let params = CycleParams::new(l).map_err(|e| e.to_string())?;
        let alpha = ratio_to_f64(&params.alpha_hat());
        let target =
            DensityVector::uniform(g.vertex_count(), alpha).map_err(|e| e.to_string())?;
        let w = WeightFunction::uniform(h.len());
        let gauge = solve_critical_gauge(&h, &w, &target, SolveOptions::default())
            .map_err(|e| e.to_string())?;
        let expected = bigint_to_f64(&params.tile_count()).ln();
        if (gauge.sigma - expected).abs() > 1e-8 {
            return Err(format!(
                "cycle({l}): sigma = {}, log tile count = {expected}",
                gauge.sigma
            ));
        }
    }
    Ok(String::new())
}

fn reduced_poly_matches(opts: &VerifyOptions) -> std::result::Result<String, String> {
    let points: [(i64, i64); 3] = [(1, 1), (2, 1), (1, 3)];
    for l in odd_cycles(opts, 11, 7) {
        let params = CycleParams::new(l).map_err(|e| e.to_string())?;
        let (g, h) = cycle_tiles(l).map_err(|e| e.to_string())?;
        let poly = tiling_polynomial(&h, &WeightFunction::uniform(h.len()));
        for &(a, b) in &points {
            let x0 = BigRational::from(BigInt::from(a));
            let x1 = BigRational::from(BigInt::from(b));
            let closed = params.reduced_poly_exact(&x0, &x1);
            // Independent route: evaluate the full polynomial with every
            // cycle variable set to x1.
            let mut x = vec![b as f64; g.vertex_count() + 1];
            x[0] = a as f64;
            let full = poly.eval(&x);
            let closed_f = ratio_to_f64(&closed);
            if (full - closed_f).abs() > 1e-9 * closed_f.abs().max(1.0) {
                return Err(format!(
                    "cycle({l}) at ({a},{b}): reduced closed form {closed_f}, evaluation {full}"
                ));
            }
        }
    }
    Ok(String::new())
}

fn closed_inverse_inverts(opts: &VerifyOptions) -> std::result::Result<String, String> {
    for l in odd_cycles(opts, 17, 9) {
        let params = CycleParams::new(l).map_err(|e| e.to_string())?;
        let closed = params.laplacian_closed_form().to_matrix();
        let (_, h) = cycle_tiles(l).map_err(|e| e.to_string())?;
        let d = IncidenceMatrix::from_tiles(&h).map_err(|e| e.to_string())?;
        let c = TileWeightDiagonal::uniform(h.len());
        let delta = build_laplacian(&d, &c).map_err(|e| e.to_string())?;
        // The closed form inverts |T| Δ, whose entries are the integer
        // circulant; rescale before comparing.
        let t = bigint_to_f64(&params.tile_count());
        let product = (&delta * t) * &closed;
        let identity = DMatrix::<f64>::identity(l + 1, l + 1);
        let err = (&product - &identity).abs().max();
        if err > opts.tol {
            return Err(format!("cycle({l}): ||Δ Δ⁻¹ - I|| = {err}"));
        }
        let pinv = pseudo_inverse_on_image(&(delta * t));
        let diff = (&closed - &pinv).abs().max();
        if diff > opts.tol {
            return Err(format!("cycle({l}): closed inverse differs from SVD inverse by {diff}"));
        }
    }
    Ok(String::new())
}

fn eigenvalues_match_for_positive_modes(
    opts: &VerifyOptions,
) -> std::result::Result<String, String> {
    for l in odd_cycles(opts, 21, 9) {
        let params = CycleParams::new(l).map_err(|e| e.to_string())?;
        let spectrum = params.circulant_spectrum();
        for k in 1..l {
            let formula = params.eigenvalue_formula(k);
            let dft = spectrum.eigenvalues[k];
            if (formula - dft).abs() > opts.tol * dft.abs().max(1.0) {
                return Err(format!(
                    "cycle({l}) mode {k}: closed form {formula}, DFT {dft}"
                ));
            }
        }
    }
    Ok(String::new())
}

/// The closed-form eigenvalue expression is wrong at mode zero: it evaluates
/// to 4 F_L / 5 there, while the true eigenvalue is the circulant row sum.
/// This property passes when the discrepancy reproduces, and its note
/// reports the numbers so the wrong value is never used silently.
fn mode_zero_erratum(_opts: &VerifyOptions) -> std::result::Result<String, String> {
    let mut notes = Vec::new();
    for l in [3usize, 5] {
        let params = CycleParams::new(l).map_err(|e| e.to_string())?;
        let formula = params.eigenvalue_formula(0);
        let row_sum = params.circulant_spectrum().eigenvalues[0];
        let predicted_wrong = 4.0 * bigint_to_f64(&fib(l as i64)) / 5.0;
        if (formula - predicted_wrong).abs() > 1e-9 {
            return Err(format!(
                "cycle({l}) mode 0: formula gives {formula}, expected the known wrong value {predicted_wrong}"
            ));
        }
        if (formula - row_sum).abs() < 1e-9 {
            return Err(format!(
                "cycle({l}) mode 0: formula unexpectedly agrees with the row sum {row_sum}"
            ));
        }
        notes.push(format!("L={l}: formula {formula} vs true {row_sum}"));
    }
    Ok(format!(
        "mode-zero closed form is wrong by design of the audit; {}",
        notes.join("; ")
    ))
}

fn mode_sum_triple_agreement(opts: &VerifyOptions) -> std::result::Result<String, String> {
    for l in odd_cycles(opts, 21, 9) {
        let params = CycleParams::new(l).map_err(|e| e.to_string())?;
        let spectrum = params.circulant_spectrum();
        for shift in 0..l as i64 {
            let closed = params.reciprocal_mode_sum(shift);
            // Route 2: expansion through the root-of-unity sums.
            let f_l = BigRational::from(fib(l as i64));
            let expansion = (params.root_of_unity_sum(shift)
                + BigRational::from(BigInt::from(3)) * params.root_of_unity_sum(shift + 1)
                + params.root_of_unity_sum(shift + 2)
                - BigRational::new(BigInt::from(5), BigInt::from(4)))
                / f_l;
            if closed != expansion {
                return Err(format!(
                    "cycle({l}) shift {shift}: closed {closed} != expansion {expansion}"
                ));
            }
            // Route 3: direct complex sum over nonzero modes.
            let direct: f64 = (1..l)
                .map(|k| {
                    let angle = 2.0 * std::f64::consts::PI * (k * shift as usize % l) as f64
                        / l as f64;
                    angle.cos() / spectrum.eigenvalues[k]
                })
                .sum();
            let closed_f = ratio_to_f64(&closed);
            if (closed_f - direct).abs() > opts.tol * closed_f.abs().max(1.0) {
                return Err(format!(
                    "cycle({l}) shift {shift}: closed {closed_f}, direct sum {direct}"
                ));
            }
        }
    }
    Ok(String::new())
}

fn gaussian_law_conservation(opts: &VerifyOptions) -> std::result::Result<String, String> {
    let ls: &[usize] = if opts.quick { &[5, 7] } else { &[9, 11] };
    for &l in ls {
        let (_, h) = cycle_tiles(l).map_err(|e| e.to_string())?;
        let d = IncidenceMatrix::from_tiles(&h).map_err(|e| e.to_string())?;
        let c = TileWeightDiagonal::uniform(h.len());
        let colors = 100.0;
        let law = gaussian_law(&d, &c, colors).map_err(|e| e.to_string())?;
        let t = h.len();
        let sym = (&law.covariance - law.covariance.transpose()).abs().max();
        if sym > opts.tol * colors {
            return Err(format!("cycle({l}): covariance asymmetry {sym}"));
        }
        let dcov = d.matrix() * &law.covariance;
        if dcov.abs().max() > opts.tol * colors {
            return Err(format!(
                "cycle({l}): D·Cov = {} but coverage is deterministic",
                dcov.abs().max()
            ));
        }
        let ones = nalgebra::DVector::<f64>::repeat(t, 1.0);
        let row_sums = (&law.covariance * ones).abs().max();
        if row_sums > opts.tol * colors {
            return Err(format!(
                "cycle({l}): Cov·1 = {row_sums} but the total count is fixed"
            ));
        }
    }
    Ok(String::new())
}

/// Per-color asymptotic covariance `(1/|T|)(I - Dᵀ (D Dᵀ)⁻¹ D)` of an odd
/// cycle in exact rational arithmetic, via the closed-form inverse.
pub(crate) fn rational_per_color_covariance(l: usize) -> Result<Vec<Vec<BigRational>>> {
    let (_, h) = cycle_tiles(l)?;
    let t = h.len();
    let rows = l + 1;
    let d: Vec<Vec<BigRational>> = (0..rows)
        .map(|v| {
            h.iter()
                .map(|tile| BigRational::from(BigInt::from(tile.exponents()[v])))
                .collect()
        })
        .collect();
    let closed = CycleParams::new(l)?.laplacian_closed_form();
    let m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| (0..rows).map(|j| closed.entry(i, j)).collect())
        .collect();
    // MD, then (1/|T|)(I - Dᵀ(MD)).
    let md: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            (0..t)
                .map(|u| (0..rows).map(|k| &m[i][k] * &d[k][u]).sum())
                .collect()
        })
        .collect();
    let tiles_inv = BigRational::new(BigInt::one(), BigInt::from(t));
    Ok((0..t)
        .map(|i| {
            (0..t)
                .map(|j| {
                    let p: BigRational = (0..rows).map(|k| &d[k][i] * &md[k][j]).sum();
                    let delta = if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                    &tiles_inv * (delta - p)
                })
                .collect()
        })
        .collect())
}

fn exact_cov_approaches_gaussian(opts: &VerifyOptions) -> std::result::Result<String, String> {
    // Coverage N/2 on the triangle pins all tile counts, so the exact and
    // asymptotic covariances both vanish identically; the decay bounds must
    // hold as exact equalities 0 ≤ 0, which only rational arithmetic shows.
    let (g, h) = cycle_tiles(3).map_err(|e| e.to_string())?;
    let w = vec![BigRational::one(); h.len()];
    let asymptotic = rational_per_color_covariance(3).map_err(|e| e.to_string())?;
    let eps = |colors: u32| -> std::result::Result<BigRational, String> {
        let n = vec![colors / 2; 3];
        let m = crate::poly::exact_moments_rational(&g, &h, &w, &n, colors, 1 << 30)
            .map_err(|e| e.to_string())?;
        let cov = m.covariance();
        let per_color = BigRational::new(BigInt::one(), BigInt::from(colors));
        let mut worst = BigRational::zero();
        for i in 0..h.len() {
            for j in 0..h.len() {
                let diff = &cov[i][j] * &per_color - &asymptotic[i][j];
                let mag = if diff < BigRational::zero() { -diff } else { diff };
                if mag > worst {
                    worst = mag;
                }
            }
        }
        Ok(worst)
    };
    let colors: Vec<u32> = if opts.quick {
        vec![20, 40]
    } else {
        vec![20, 40, 60]
    };
    let epsilons: Vec<BigRational> = colors
        .iter()
        .map(|&n| eps(n))
        .collect::<std::result::Result<_, _>>()?;
    let bounds = [
        BigRational::new(BigInt::from(3), BigInt::from(4)),
        BigRational::new(BigInt::from(4), BigInt::from(5)),
    ];
    for (pair, bound) in epsilons.windows(2).zip(&bounds) {
        if pair[1] > bound * &pair[0] {
            return Err(format!(
                "scaled covariance error fails to shrink: {epsilons:?} at N = {colors:?}"
            ));
        }
    }
    let shown: Vec<f64> = epsilons.iter().map(ratio_to_f64).collect();
    Ok(format!("max entry errors {shown:?} at N = {colors:?}"))
}

fn partition_function_routes_agree(opts: &VerifyOptions) -> std::result::Result<String, String> {
    let (g, h) = cycle_tiles(3).map_err(|e| e.to_string())?;
    let tiles = enumerate_tiles(&g).map_err(|e| e.to_string())?;
    let w = WeightFunction::new(vec![0.5, 1.5, 1.0, 2.0]).map_err(|e| e.to_string())?;
    let cases: &[(Vec<u32>, u32)] = &[
        (vec![2, 2, 2], 3),
        (vec![2, 2, 2], 4),
        (vec![0, 0, 0], 2),
        (vec![2, 2, 0], 3),
    ];
    for (n, colors) in cases {
        let dp = partition_function_exact(&g, &h, &w, n, *colors).map_err(|e| e.to_string())?;
        let law = crate::sampler::enumerate_multiwebs(&tiles, &w, n, *colors);
        let enumerated = match law {
            Ok(law) => law.z,
            Err(crate::Error::InfeasibleMultiplicity(_)) => 0.0,
            Err(e) => return Err(e.to_string()),
        };
        if (dp - enumerated).abs() > 1e-9 * dp.abs().max(1.0) {
            return Err(format!(
                "n = {n:?}, N = {colors}: DP gives {dp}, enumeration gives {enumerated}"
            ));
        }
    }
    // Parity-infeasible target: both routes must report zero weight.
    let dp = partition_function_exact(&g, &h, &w, &[1, 1, 1], 3).map_err(|e| e.to_string())?;
    if dp != 0.0 {
        return Err(format!("n = (1,1,1): DP gives {dp}, expected exactly 0"));
    }
    if !opts.quick {
        let uniform = WeightFunction::uniform(h.len());
        let z = partition_function_exact(&g, &h, &uniform, &[2, 2, 2], 3)
            .map_err(|e| e.to_string())?;
        if (z - 6.0).abs() > 1e-12 {
            return Err(format!("uniform Z((2,2,2), 3) = {z}, expected 6"));
        }
    }
    Ok(String::new())
}

fn window_partition_identity(opts: &VerifyOptions) -> std::result::Result<String, String> {
    let max = if opts.quick { 31 } else { 101 };
    for l in (11..=max).step_by(2) {
        let configs = enumerate_local_configs();
        let mut total = BigInt::zero();
        for c in &configs {
            total += fib(l as i64 - c.end_count() as i64 - 4);
        }
        if total != lucas(l as u64) {
            return Err(format!(
                "cycle({l}): class sizes sum to {total}, tile count is Lucas"
            ));
        }
    }
    Ok(String::new())
}

fn window_law_consistency(opts: &VerifyOptions) -> std::result::Result<String, String> {
    let ls: &[usize] = if opts.quick { &[11] } else { &[11, 15] };
    for &l in ls {
        let colors = 64.0;
        let law = local_law(l, colors).map_err(|e| e.to_string())?;
        let (g, h) = cycle_tiles(l).map_err(|e| e.to_string())?;
        let b = crate::window::classify_tiles(&g, &h).map_err(|e| e.to_string())?;
        let d = IncidenceMatrix::from_tiles(&h).map_err(|e| e.to_string())?;
        let c = TileWeightDiagonal::uniform(h.len());
        let tile_law = gaussian_law(&d, &c, colors).map_err(|e| e.to_string())?;
        let explicit = b.matrix() * &tile_law.covariance * b.matrix().transpose();
        let err = (&law.covariance - &explicit).abs().max();
        if err > opts.tol * colors {
            return Err(format!(
                "cycle({l}): window law differs from B Cov(X) Bᵀ by {err}"
            ));
        }
    }
    Ok(String::new())
}

fn window_limits_match(opts: &VerifyOptions) -> std::result::Result<String, String> {
    let l = if opts.quick { 201 } else { 501 };
    let colors = 1.0;
    let law = local_law(l, colors).map_err(|e| e.to_string())?;
    let counts = coverage_counts(l).map_err(|e| e.to_string())?;
    for (j, config) in counts.configs.iter().enumerate() {
        let (mean, var) = local_limits(config.end_count(), config.edge_count(), colors)
            .map_err(|e| e.to_string())?;
        let finite_mean = law.mean[j];
        let finite_var = law.covariance[(j, j)];
        if (mean - finite_mean).abs() > 1e-3 || (var - finite_var).abs() > 1e-3 {
            return Err(format!(
                "config {j}: limit ({mean}, {var}) vs finite-L ({finite_mean}, {finite_var})"
            ));
        }
    }
    Ok(String::new())
}

fn sampler_matches_exact_law(opts: &VerifyOptions) -> std::result::Result<String, String> {
    let g = Graph::cycle(3).map_err(|e| e.to_string())?;
    let tiles = enumerate_tiles(&g).map_err(|e| e.to_string())?;
    let w = WeightFunction::uniform(tiles.len());
    let n = [2u32, 2, 2];
    let exact = enumerate_assignments(&tiles, &w, &n, 4, 1 << 20).map_err(|e| e.to_string())?;
    let sweeps = if opts.quick { 10_050 } else { 40_050 };
    let mut sampler = HeatBathSampler::new(
        &tiles,
        &w,
        &n,
        4,
        ChainConfig {
            seed: 97,
            sweeps,
            burn_in: 50,
            thinning: 1,
        },
    )
    .map_err(|e| e.to_string())?;
    let samples = sampler.run();
    let mut freq: std::collections::BTreeMap<Vec<u32>, f64> = std::collections::BTreeMap::new();
    for s in &samples {
        *freq.entry(s.assignment().to_vec()).or_insert(0.0) += 1.0 / samples.len() as f64;
    }
    if freq.len() != exact.len() {
        return Err(format!(
            "chain visited {} of {} states",
            freq.len(),
            exact.len()
        ));
    }
    let empirical: Vec<(Vec<u32>, f64)> = freq.into_iter().collect();
    let tv = total_variation(&exact, &empirical);
    let bound = if opts.quick { 0.05 } else { 0.02 };
    if tv > bound {
        return Err(format!("state-level total variation {tv} exceeds {bound}"));
    }
    Ok(format!("total variation {tv:.4} over {} states", exact.len()))
}
