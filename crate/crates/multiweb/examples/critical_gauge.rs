//! Solving the critical gauge: the weight system that realizes a target
//! coverage density.
//!
//! Minimizing `F(y) = log P(e^y) - Σ α_v y_v` over log coordinates yields a
//! point `x` with `P(x) = 1` whose induced tile law has mean coverage
//! exactly `α`. On an odd cycle at the critical density the solution is
//! fully symmetric: `x_v = |T|^(-1/L)` and every tile gets weight `1/|T|`.

use multiweb::cycle::CycleParams;
use multiweb::gauge::{solve_critical_gauge, DensityVector, SolveOptions};
use multiweb::graph::Graph;
use multiweb::numbers::ratio_to_f64;
use multiweb::poly::WeightFunction;
use multiweb::tiles::{enumerate_tiles, homogenize};

fn main() {
    let l = 7usize;
    let g = Graph::cycle(l).unwrap();
    let tiles = enumerate_tiles(&g).unwrap();
    let h = homogenize(&tiles, l);
    let t = h.len();
    let w = WeightFunction::uniform(t);

    let params = CycleParams::new(l).unwrap();
    let alpha_hat = ratio_to_f64(&params.alpha_hat());
    println!("cycle C_{l}: {t} tiles, critical density α̂ = {} = {alpha_hat:.6}", params.alpha_hat());

    let alpha = DensityVector::uniform(l, alpha_hat).unwrap();
    let gauge = solve_critical_gauge(&h, &w, &alpha, SolveOptions::default()).unwrap();
    println!(
        "solved in {} iterations, residual {:.2e}",
        gauge.iterations, gauge.residual
    );
    println!(
        "x = {:.8} (closed form |T|^(-1/L) = {:.8})",
        gauge.x[1],
        (t as f64).powf(-1.0 / l as f64)
    );
    println!(
        "tile weight w' = {:.8} (uniform 1/|T| = {:.8})",
        gauge.weights[0],
        1.0 / t as f64
    );
    println!(
        "growth rate σ = {:.8} = log |T| = {:.8}",
        gauge.sigma,
        (t as f64).ln()
    );

    // Away from the critical density the gauge is anisotropic in size: the
    // solver balances empty against maximal tiles.
    println!();
    for target in [0.3f64, 0.5, 0.8] {
        let alpha = DensityVector::uniform(l, target).unwrap();
        let gauge = solve_critical_gauge(&h, &w, &alpha, SolveOptions::default()).unwrap();
        println!(
            "α = {target:.2}: empty-tile weight {:.5}, max-size-tile weight {:.5}, σ = {:.5}",
            gauge.weights[0],
            gauge.weights[t - 1],
            gauge.sigma
        );
    }
}
