//! Exact partition function and tile-count moments on a small instance.
//!
//! A multiweb assigns one tile to each of `N` colors so vertex `v` is
//! covered exactly `n_v` times. The partition function `Z` is the weighted
//! count of such assignments; the dynamic program computes it exactly, along
//! with the first two moments of the tile-count vector `X`.

use multiweb::graph::Graph;
use multiweb::poly::{exact_moments, partition_function_exact, WeightFunction};
use multiweb::tiles::{enumerate_tiles, homogenize};

fn main() {
    let g = Graph::cycle(3).unwrap();
    let tiles = enumerate_tiles(&g).unwrap();
    let h = homogenize(&tiles, g.vertex_count());
    let w = WeightFunction::uniform(tiles.len());

    // Half coverage: n_v = N/2 at every vertex of the triangle.
    for colors in [4u32, 20, 60] {
        let n = vec![colors / 2; 3];
        let z = partition_function_exact(&g, &h, &w, &n, colors).unwrap();
        println!(
            "N = {colors:>2}, n = {n:?}: Z = {z:.6e}, (1/N) log Z = {:.6}",
            z.ln() / colors as f64
        );
    }
    println!("growth-rate limit log 4 = {:.6}", 4.0f64.ln());

    // Moments at N = 20. For this degenerate instance every tile is used
    // exactly N/4 times, so the covariance vanishes identically.
    let colors = 20u32;
    let n = vec![colors / 2; 3];
    let moments = exact_moments(&g, &h, &w, &n, colors, 1 << 24).unwrap();
    println!();
    println!("tile means at N = {colors}: {:?}", moments.mean);
    let cov = moments.covariance();
    let max_cov = cov
        .iter()
        .flatten()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    println!("largest |covariance| entry: {max_cov:.3e}");

    // On the triangle the four constraints pin all four counts; a larger
    // cycle leaves room for genuine fluctuations.
    let g = Graph::cycle(5).unwrap();
    let tiles = enumerate_tiles(&g).unwrap();
    let h = homogenize(&tiles, g.vertex_count());
    let w = WeightFunction::uniform(tiles.len());
    let colors = 11u32;
    let n = vec![6u32; 5]; // the critical density 6/11 of C_5
    let z = partition_function_exact(&g, &h, &w, &n, colors).unwrap();
    let moments = exact_moments(&g, &h, &w, &n, colors, 1 << 24).unwrap();
    println!();
    println!("cycle C_5, N = {colors}, n = {n:?}: Z = {z}");
    println!("empty-tile mean {:.4}, variance {:.4}", moments.mean[0], moments.covariance()[0][0]);
    println!(
        "largest tile variance: {:.4}",
        (0..tiles.len())
            .map(|t| moments.covariance()[t][t])
            .fold(0.0f64, f64::max)
    );
}
