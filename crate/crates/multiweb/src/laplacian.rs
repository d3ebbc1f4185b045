//! The tile Laplacian and the Gaussian law of tile counts.
//!
//! With `D` the (V+1) x |T| incidence matrix of homogenized tiles (rows
//! `v_0..v_V`, column `t` the exponent vector of tile `t`) and `C` the
//! diagonal of critical tile weights, the tile Laplacian is `Δ = D C Dᵀ`.
//! For `N` colors the tile-count vector `X` is asymptotically Gaussian with
//! mean `N·diag(C)` and covariance `N·C(I - Dᵀ Δ⁺ D C)`, which is symmetric
//! positive semidefinite, annihilated by `D` on the left, and has zero row
//! sums (the constraints `Σ_t X_t = N` and `D X = n` are exact).

use nalgebra::{DMatrix, DVector};

use crate::error::Error;
use crate::linalg::sym_eigen;
use crate::tiles::HomogenizedTile;
use crate::Result;

/// Relative eigenvalue threshold for the pseudo-inverse rank cut.
pub const PSEUDO_INVERSE_THRESHOLD: f64 = 1e-10;

/// Incidence matrix of homogenized tiles: rows `v_0..v_V`, one column per
/// tile, entries the coverage multiplicities. Column sums are all `V`.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    matrix: DMatrix<f64>,
}

impl IncidenceMatrix {
    pub fn from_tiles(tiles: &[HomogenizedTile]) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::InvalidArgument("no tiles".into()));
        }
        let dim = tiles[0].exponents().len();
        let v = dim - 1;
        let mut matrix = DMatrix::<f64>::zeros(dim, tiles.len());
        for (j, t) in tiles.iter().enumerate() {
            let exps = t.exponents();
            if exps.len() != dim {
                return Err(Error::InvalidArgument(
                    "tiles come from different graphs".into(),
                ));
            }
            let total: u32 = exps.iter().sum();
            if total as usize != v {
                return Err(Error::InvalidArgument(
                    "tile exponents do not sum to the vertex count".into(),
                ));
            }
            for (i, &e) in exps.iter().enumerate() {
                matrix[(i, j)] = e as f64;
            }
        }
        Ok(IncidenceMatrix { matrix })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Number of vertex rows, `V + 1`.
    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn tile_count(&self) -> usize {
        self.matrix.ncols()
    }
}

/// Strictly positive diagonal of tile weights.
#[derive(Debug, Clone)]
pub struct TileWeightDiagonal(Vec<f64>);

impl TileWeightDiagonal {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidArgument(
                "diagonal weights must be positive and finite".into(),
            ));
        }
        Ok(TileWeightDiagonal(weights))
    }

    pub fn uniform(count: usize) -> Self {
        TileWeightDiagonal(vec![1.0 / count as f64; count])
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

/// `Δ = D C Dᵀ`, a (V+1) x (V+1) symmetric PSD matrix.
pub fn build_laplacian(d: &IncidenceMatrix, c: &TileWeightDiagonal) -> Result<DMatrix<f64>> {
    if c.len() != d.tile_count() {
        return Err(Error::InvalidArgument("one weight per tile".into()));
    }
    let mut dc = d.matrix().clone();
    for (j, &w) in c.values().iter().enumerate() {
        for i in 0..dc.nrows() {
            dc[(i, j)] *= w;
        }
    }
    Ok(&dc * d.matrix().transpose())
}

/// Pseudo-inverse restricted to the image: eigenvalues below
/// `PSEUDO_INVERSE_THRESHOLD` times the largest are treated as exact zeros.
pub fn pseudo_inverse_on_image(m: &DMatrix<f64>) -> DMatrix<f64> {
    let (values, vectors) = sym_eigen(m);
    let lmax = values.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    let cut = PSEUDO_INVERSE_THRESHOLD * lmax.max(f64::MIN_POSITIVE);
    let mut out = DMatrix::<f64>::zeros(m.nrows(), m.ncols());
    for (k, &lambda) in values.iter().enumerate() {
        if lambda.abs() > cut {
            let v = vectors.column(k);
            out += v * v.transpose() / lambda;
        }
    }
    out
}

/// Asymptotic Gaussian law of the tile-count vector for `N` colors.
#[derive(Debug, Clone)]
pub struct GaussianLaw {
    pub mean: DVector<f64>,
    pub covariance: DMatrix<f64>,
    pub colors: f64,
}

/// Builds the Gaussian law `mean = N·diag(C)`,
/// `covariance = N·C(I - Dᵀ Δ⁺ D C)` and asserts its structure: symmetry,
/// `D·Cov = 0`, zero row sums, and positive semidefiniteness up to a
/// `-1e-9·trace` floor.
pub fn gaussian_law(
    d: &IncidenceMatrix,
    c: &TileWeightDiagonal,
    colors: f64,
) -> Result<GaussianLaw> {
    if !(colors > 0.0) {
        return Err(Error::InvalidArgument("color count must be positive".into()));
    }
    let t = d.tile_count();
    let laplacian = build_laplacian(d, c)?;
    let pinv = pseudo_inverse_on_image(&laplacian);
    // M = Dᵀ Δ⁺ D C, so Cov = N (C - C M).
    let dt_pinv = d.matrix().transpose() * pinv;
    let mut dc = d.matrix().clone();
    for (j, &w) in c.values().iter().enumerate() {
        for i in 0..dc.nrows() {
            dc[(i, j)] *= w;
        }
    }
    let m = &dt_pinv * &dc;
    let mut covariance = DMatrix::<f64>::zeros(t, t);
    for i in 0..t {
        let ci = c.values()[i];
        for j in 0..t {
            let delta = if i == j { 1.0 } else { 0.0 };
            covariance[(i, j)] = colors * ci * (delta - m[(i, j)]);
        }
    }
    // Exact symmetrization: C(I - MC) is symmetric in exact arithmetic
    // because M C = Dᵀ Δ⁺ D C and C (Dᵀ Δ⁺ D) C is symmetric.
    for i in 0..t {
        for j in (i + 1)..t {
            let avg = 0.5 * (covariance[(i, j)] + covariance[(j, i)]);
            let spread = (covariance[(i, j)] - covariance[(j, i)]).abs();
            if spread > 1e-9 * colors {
                return Err(Error::Numeric(format!(
                    "covariance asymmetry {spread:e} at ({i}, {j})"
                )));
            }
            covariance[(i, j)] = avg;
            covariance[(j, i)] = avg;
        }
    }
    let mean = DVector::from_iterator(t, c.values().iter().map(|&w| colors * w));

    // Structural invariants.
    let scale = colors * c.values().iter().cloned().fold(0.0f64, f64::max);
    let constraint = d.matrix() * &covariance;
    if constraint.amax() > 1e-9 * scale.max(1.0) * d.rows() as f64 {
        return Err(Error::Numeric(format!(
            "D·Cov should vanish, max entry {:e}",
            constraint.amax()
        )));
    }
    for i in 0..t {
        let row_sum: f64 = (0..t).map(|j| covariance[(i, j)]).sum();
        if row_sum.abs() > 1e-9 * scale.max(1.0) * t as f64 {
            return Err(Error::Numeric(format!(
                "covariance row {i} sums to {row_sum:e}"
            )));
        }
    }
    // PSD up to a -1e-9·trace floor, widened by a roundoff allowance on the
    // natural scale `colors` so a legitimately zero covariance (tile counts
    // fully determined by the coverage constraint) is not rejected for its
    // own rounding noise. A Cholesky factorization of Cov + floor·I exists
    // iff the smallest eigenvalue is ≥ -floor (up to roundoff); this is
    // O(t³/3) instead of a full eigendecomposition, which matters at a few
    // thousand tiles.
    let trace = covariance.trace();
    let psd_floor = 1e-9 * trace.abs() + f64::EPSILON * t as f64 * trace.abs().max(colors);
    let shifted = &covariance + DMatrix::<f64>::identity(t, t) * psd_floor;
    if shifted.cholesky().is_none() {
        let (eigenvalues, _) = sym_eigen(&covariance);
        let min_eig = eigenvalues[0];
        if min_eig < -psd_floor {
            return Err(Error::Numeric(format!(
                "covariance has eigenvalue {min_eig:e} below the PSD floor"
            )));
        }
    }
    Ok(GaussianLaw {
        mean,
        covariance,
        colors,
    })
}
