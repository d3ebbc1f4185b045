//! The Gaussian law of tile counts for many colors.
//!
//! For `N` colors drawn independently from the tile law `c` and conditioned
//! on the coverage constraint, the count vector `X` is asymptotically
//! Gaussian with mean `N c` and covariance
//! `N (C - C Dᵀ Δ⁺ D C)` where `Δ = D C Dᵀ` is the tile Laplacian. The
//! conditioning shows up as two exact conservation laws: `D Cov = 0` (the
//! coverage of every vertex is fixed) and `Cov · 1 = 0` (the total count is
//! fixed).

use multiweb::laplacian::{gaussian_law, IncidenceMatrix, TileWeightDiagonal};
use multiweb::tiles::{enumerate_tiles, homogenize};

fn main() {
    let l = 9usize;
    let g = multiweb::graph::Graph::cycle(l).unwrap();
    let tiles = enumerate_tiles(&g).unwrap();
    let h = homogenize(&tiles, l);
    let t = h.len();

    // Critical gauge on an odd cycle: the uniform tile law.
    let colors = 380.0f64;
    let d = IncidenceMatrix::from_tiles(&h).unwrap();
    let c = TileWeightDiagonal::new(vec![1.0 / t as f64; t]).unwrap();
    let law = gaussian_law(&d, &c, colors).unwrap();

    println!("cycle C_{l}: {t} tiles, N = {colors}");
    println!("mean count per tile: {:.4}", law.mean[0]);
    println!(
        "variance range on the diagonal: [{:.4}, {:.4}]",
        (0..t).map(|i| law.covariance[(i, i)]).fold(f64::INFINITY, f64::min),
        (0..t).map(|i| law.covariance[(i, i)]).fold(0.0f64, f64::max),
    );

    let dc = d.matrix() * &law.covariance;
    println!("max |D · Cov| (coverage conservation): {:.2e}", dc.amax());
    let row_sum = (0..t)
        .map(|i| (0..t).map(|j| law.covariance[(i, j)]).sum::<f64>().abs())
        .fold(0.0f64, f64::max);
    println!("max |row sum| (total-count conservation): {row_sum:.2e}");

    // Counts of same-size tiles are exchangeable; the covariance only
    // depends on sizes and the relative position of the tiles.
    println!();
    println!("covariance corner (empty tile and the five 1-edge tiles):");
    for i in 0..6 {
        let row: Vec<String> = (0..6)
            .map(|j| format!("{:>8.4}", law.covariance[(i, j)]))
            .collect();
        println!("  {}", row.join(" "));
    }
}
