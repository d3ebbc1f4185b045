//! Tile statistics restricted to a five-vertex window of an odd cycle.
//!
//! Fix five consecutive cycle vertices `v_1..v_5`. Six edges touch them:
//! the interior edges `(v_1,v_2)..(v_4,v_5)` plus the two end edges
//! `(v_L,v_1)` and `(v_5,v_6)`. Grouping tiles by which of these six edges
//! they use partitions `T` into 21 classes (independent subsets of a
//! 6-path), each of exact size `F_{L-ε-4}` where `ε` counts end edges used.
//! With `S = B·X` the class-count vector, at the critical density
//! `E(S_j) = (N/|T|)·F_{L-ε_j-4}` and
//! `Cov(S) = (N/|T|)(BBᵀ - BDᵀ(DDᵀ)⁻¹DBᵀ)`.
//!
//! `B` and `D` have `|T| = Y_L` columns, astronomically many at large `L`,
//! so this module never materializes them beyond small cross-check sizes:
//! `BBᵀ` is the diagonal of class sizes, and the rows of `G = BDᵀ` reduce to
//! Fibonacci counts of matchings on the path outside the window. The
//! reduction is validated against explicit matrices at enumerable lengths.

use nalgebra::DMatrix;
use num::bigint::BigInt;
use num::{One, Zero};

use crate::cycle::CycleParams;
use crate::error::Error;
use crate::graph::{Graph, Shape};
use crate::laplacian::GaussianLaw;
use crate::linalg::sym_eigen;
use crate::numbers::{bigint_to_f64, fib, lucas};
use crate::tiles::HomogenizedTile;
use crate::Result;

/// Edges touching the window, in cycle order: index 0 is the left end edge
/// `(v_L, v_1)`, 1..4 the interior edges, 5 the right end edge `(v_5, v_6)`.
pub const WINDOW_SLOTS: usize = 6;

/// Number of admissible window patterns: independent subsets of the 6-slot
/// conflict path, i.e. matchings of a 7-vertex path.
pub const CONFIGURATION_COUNT: usize = 21;

/// Smallest cycle length where the six window edges are pairwise distinct
/// and the outside path is nonempty on both sides of each end edge.
pub const MIN_WINDOW_LENGTH: usize = 11;

/// One admissible pattern of window edges.
///
/// `slots` lists the used edge indices in increasing order; consecutive
/// indices conflict (they share a window vertex), so the list never
/// contains `k` and `k+1` together. Slots 0 and 5 are compatible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalConfiguration {
    slots: Vec<u8>,
}

impl LocalConfiguration {
    pub fn slots(&self) -> &[u8] {
        &self.slots
    }

    /// Number of window edges used, `f ∈ {0..3}`.
    pub fn edge_count(&self) -> usize {
        self.slots.len()
    }

    /// Number of end edges (slots 0 and 5) used, `ε ∈ {0,1,2}`.
    pub fn end_count(&self) -> usize {
        self.slots.iter().filter(|&&s| s == 0 || s == 5).count()
    }

    pub fn uses_slot(&self, slot: u8) -> bool {
        self.slots.contains(&slot)
    }

    /// Whether window vertex `v_i` (`i` in `1..=5`) is covered: slot `i-1`
    /// or slot `i` is present.
    pub fn covers_window_vertex(&self, i: usize) -> bool {
        assert!((1..=5).contains(&i));
        self.uses_slot(i as u8 - 1) || self.uses_slot(i as u8)
    }
}

/// All 21 configurations in canonical order: by edge count, then
/// lexicographically on the slot lists.
pub fn enumerate_local_configs() -> Vec<LocalConfiguration> {
    let mut configs = Vec::new();
    for mask in 0u32..(1 << WINDOW_SLOTS) {
        if (0..WINDOW_SLOTS - 1).any(|k| mask & (3 << k) == (3 << k)) {
            continue;
        }
        let slots: Vec<u8> = (0..WINDOW_SLOTS as u8)
            .filter(|&s| mask & (1 << s) != 0)
            .collect();
        configs.push(LocalConfiguration { slots });
    }
    configs.sort_by(|a, b| {
        (a.slots.len(), &a.slots).cmp(&(b.slots.len(), &b.slots))
    });
    debug_assert_eq!(configs.len(), CONFIGURATION_COUNT);
    configs
}

fn window_guard(l: usize) -> Result<()> {
    if l % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "window statistics require an odd cycle, got length {l}"
        )));
    }
    if l < MIN_WINDOW_LENGTH {
        return Err(Error::WindowWraps(l as u64));
    }
    Ok(())
}

/// The 0/1 class-membership matrix `B` built from explicitly enumerated
/// tiles: rows are the 21 configurations, columns tiles.
#[derive(Debug, Clone)]
pub struct AggregationMatrix {
    matrix: DMatrix<f64>,
    configs: Vec<LocalConfiguration>,
    class_sizes: Vec<u64>,
}

impl AggregationMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn configs(&self) -> &[LocalConfiguration] {
        &self.configs
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }
}

/// Classifies tiles by their window restriction, window starting at
/// vertex 1. Class sizes are asserted to be exactly `F_{L-ε-4}`.
pub fn classify_tiles(g: &Graph, tiles: &[HomogenizedTile]) -> Result<AggregationMatrix> {
    classify_tiles_at(g, tiles, 1)
}

/// Same with the window starting at an arbitrary cycle vertex; the class
/// structure is translation invariant, which tests use to validate the
/// fixed-window fast path.
pub fn classify_tiles_at(
    g: &Graph,
    tiles: &[HomogenizedTile],
    start: usize,
) -> Result<AggregationMatrix> {
    let l = match g.classify() {
        Shape::Cycle(l) => l,
        _ => {
            return Err(Error::InvalidArgument(
                "window statistics are defined on cycles".into(),
            ))
        }
    };
    window_guard(l)?;
    if !(1..=l).contains(&start) {
        return Err(Error::InvalidArgument(format!(
            "window start {start} outside 1..={l}"
        )));
    }
    // Map the six window edges to slot indices, endpoints normalized.
    let vertex = |offset: i64| -> u32 {
        ((start as i64 - 1 + offset).rem_euclid(l as i64) + 1) as u32
    };
    let mut slot_of = std::collections::HashMap::new();
    for s in 0..WINDOW_SLOTS as i64 {
        let (a, b) = (vertex(s - 1), vertex(s));
        slot_of.insert((a.min(b), a.max(b)), s as u8);
    }
    let configs = enumerate_local_configs();
    let index_of: std::collections::HashMap<Vec<u8>, usize> = configs
        .iter()
        .enumerate()
        .map(|(i, c)| (c.slots.clone(), i))
        .collect();
    let mut matrix = DMatrix::<f64>::zeros(CONFIGURATION_COUNT, tiles.len());
    let mut class_sizes = vec![0u64; CONFIGURATION_COUNT];
    for (t, tile) in tiles.iter().enumerate() {
        let mut slots: Vec<u8> = tile
            .tile()
            .edges()
            .iter()
            .filter_map(|&e| {
                let (a, b) = g.edges()[e as usize];
                slot_of.get(&(a.min(b), a.max(b))).copied()
            })
            .collect();
        slots.sort_unstable();
        let j = *index_of
            .get(&slots)
            .expect("matching restricted to the window is always admissible");
        matrix[(j, t)] = 1.0;
        class_sizes[j] += 1;
    }
    for (j, c) in configs.iter().enumerate() {
        let expected = fib((l - c.end_count() - 4) as i64);
        if BigInt::from(class_sizes[j]) != expected {
            return Err(Error::Numeric(format!(
                "class {j} has {} tiles, expected F_{}",
                class_sizes[j],
                l - c.end_count() - 4
            )));
        }
    }
    Ok(AggregationMatrix {
        matrix,
        configs,
        class_sizes,
    })
}

/// Exact per-class coverage counts: `rows[j][v]` is the total homogenized
/// multiplicity of vertex `v` over the tiles of class `j` — the row of
/// `B·Dᵀ` — computed combinatorially from matchings of the outside path.
#[derive(Debug, Clone)]
pub struct CoverageCounts {
    pub configs: Vec<LocalConfiguration>,
    pub class_sizes: Vec<BigInt>,
    /// `CONFIGURATION_COUNT` rows of length `L+1`, zero vertex first.
    pub rows: Vec<Vec<BigInt>>,
}

/// Builds [`CoverageCounts`] for the window at vertices `v_1..v_5`.
///
/// For a class with parameters `(f, ε)` the tiles are matchings of the path
/// on `m = L-5-ε` vertices outside the window; the class has `F_{m+1}` of
/// them, their total edge count is `E_m` with
/// `E_m = E_{m-1} + E_{m-2} + F_{m-1}`, and the number covering the `i`-th
/// outside vertex is `F_{m+1} - F_i·F_{m-i+1}`.
pub fn coverage_counts(l: usize) -> Result<CoverageCounts> {
    window_guard(l)?;
    let configs = enumerate_local_configs();
    let fibs: Vec<BigInt> = {
        let mut v = vec![BigInt::zero(), BigInt::one()];
        for k in 2..=(l + 2) {
            let next = &v[k - 1] + &v[k - 2];
            v.push(next);
        }
        v
    };
    // Total edges over all matchings of an m-vertex path.
    let mut edge_totals = vec![BigInt::zero(), BigInt::zero()];
    for m in 2..=(l - 5) {
        let next = &edge_totals[m - 1] + &edge_totals[m - 2] + &fibs[m - 1];
        edge_totals.push(next);
    }
    let mut class_sizes = Vec::with_capacity(CONFIGURATION_COUNT);
    let mut rows = Vec::with_capacity(CONFIGURATION_COUNT);
    for c in &configs {
        let eps = c.end_count();
        let f = c.edge_count();
        let m = l - 5 - eps;
        let size = fibs[m + 1].clone();
        let mut row = vec![BigInt::zero(); l + 1];
        // Window vertices are covered by every tile of the class or none.
        for i in 1..=5 {
            if c.covers_window_vertex(i) {
                row[i] = size.clone();
            }
        }
        // End edges cover their outside endpoints in every tile.
        if c.uses_slot(5) {
            row[6] = size.clone();
        }
        if c.uses_slot(0) {
            row[l] = size.clone();
        }
        // Free outside path: v_6..v_L minus endpoints eaten by end edges.
        let first = if c.uses_slot(5) { 7 } else { 6 };
        for i in 1..=m {
            row[first + i - 1] = &fibs[m + 1] - &fibs[i] * &fibs[m - i + 1];
        }
        // Zero vertex: L·|class| - 2·(total edges over the class).
        let class_edges = BigInt::from(f as u64) * &size + &edge_totals[m];
        row[0] = BigInt::from(l as u64) * &size - BigInt::from(2) * class_edges;
        class_sizes.push(size);
        rows.push(row);
    }
    Ok(CoverageCounts {
        configs,
        class_sizes,
        rows,
    })
}

impl CoverageCounts {
    /// The rows as a float matrix `G = B·Dᵀ`, `21 × (L+1)`.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let cols = self.rows[0].len();
        DMatrix::from_fn(CONFIGURATION_COUNT, cols, |j, v| bigint_to_f64(&self.rows[j][v]))
    }
}

/// Gaussian law of the class-count vector `S` for `N` colors at the
/// critical density: mean `(N/|T|)·F_{L-ε_j-4}` and covariance
/// `(N/|T|)(diag(class sizes) - G·(DDᵀ)⁻¹·Gᵀ)`, with the closed-form
/// inverse Laplacian. Valid for odd `L ≥ 11`.
pub fn local_law(l: usize, colors: f64) -> Result<GaussianLaw> {
    window_guard(l)?;
    if !(colors > 0.0) {
        return Err(Error::InvalidArgument("color count must be positive".into()));
    }
    // Beyond this the Lucas/Fibonacci magnitudes overflow f64.
    if l > 1400 {
        return Err(Error::ResourceLimit {
            what: "cycle length for float window statistics".into(),
            needed: l as u128,
            limit: 1400,
        });
    }
    let counts = coverage_counts(l)?;
    let g = counts.to_matrix();
    let m = CycleParams::new(l)?.laplacian_closed_form().to_matrix();
    let tile_count = bigint_to_f64(&lucas(l as u64));
    let gm = &g * m;
    let mut covariance = &gm * g.transpose();
    covariance = -covariance;
    for j in 0..CONFIGURATION_COUNT {
        covariance[(j, j)] += bigint_to_f64(&counts.class_sizes[j]);
    }
    covariance *= colors / tile_count;
    // Symmetrize roundoff; the exact matrix is symmetric.
    for i in 0..CONFIGURATION_COUNT {
        for j in (i + 1)..CONFIGURATION_COUNT {
            let avg = 0.5 * (covariance[(i, j)] + covariance[(j, i)]);
            covariance[(i, j)] = avg;
            covariance[(j, i)] = avg;
        }
    }
    let mean = nalgebra::DVector::from_iterator(
        CONFIGURATION_COUNT,
        counts
            .class_sizes
            .iter()
            .map(|s| colors * bigint_to_f64(s) / tile_count),
    );
    // Structural checks: S sums to N deterministically, so rows sum to 0;
    // and the covariance is PSD up to roundoff.
    for j in 0..CONFIGURATION_COUNT {
        let row_sum: f64 = covariance.row(j).iter().sum();
        if row_sum.abs() > 1e-9 * colors {
            return Err(Error::Numeric(format!(
                "window covariance row {j} sums to {row_sum:e}"
            )));
        }
    }
    let (eigenvalues, _) = sym_eigen(&covariance);
    if eigenvalues[0] < -1e-9 * covariance.trace() {
        return Err(Error::Numeric(format!(
            "window covariance eigenvalue {:e} below the PSD floor",
            eigenvalues[0]
        )));
    }
    Ok(GaussianLaw {
        mean,
        covariance,
        colors,
    })
}

/// Large-`L` limits of the per-class mean and variance:
/// `E(S_j)/N → φ^{-ε-4}/√5` and
/// `Var(S_j)/N → (φ^{-ε-4}/√5)·(1 - (ε + f/φ + (11+√5)/2)/φ^{ε+6})`.
/// The pair `(ε, f)` must belong to some configuration.
pub fn local_limits(end_count: usize, edge_count: usize, colors: f64) -> Result<(f64, f64)> {
    let valid = enumerate_local_configs()
        .iter()
        .any(|c| c.end_count() == end_count && c.edge_count() == edge_count);
    if !valid {
        return Err(Error::InvalidArgument(format!(
            "no window configuration has {end_count} end edges and {edge_count} edges"
        )));
    }
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mean = colors * phi.powi(-(end_count as i32) - 4) / 5.0f64.sqrt();
    let correction = (end_count as f64
        + edge_count as f64 / phi
        + (11.0 + 5.0f64.sqrt()) / 2.0)
        / phi.powi(end_count as i32 + 6);
    Ok((mean, mean * (1.0 - correction)))
}
