//! Critical tile probabilities as the coverage density sweeps its feasible
//! range.
//!
//! On `C_L` the reduced tiling polynomial depends only on tile size, so the
//! critical gauge at density `α` is a two-variable problem. Sparse tiles
//! dominate at low density, maximal matchings at high density, and at the
//! critical density `α̂` every one of the `Y_L` tiles is equally likely.

use multiweb::cycle::CycleParams;
use multiweb::numbers::ratio_to_f64;

fn main() {
    let l = 11usize;
    let params = CycleParams::new(l).unwrap();
    let alpha_hat = ratio_to_f64(&params.alpha_hat());
    let upper = (l as f64 - 1.0) / l as f64;

    let alphas: Vec<f64> = (1..=19).map(|k| k as f64 / 20.0 * upper).collect();
    let curves = params.tile_probability_curves(&alphas).unwrap();

    let sizes = curves.tile_probability.len();
    print!("{:>7}", "alpha");
    for s in 0..sizes {
        print!("  P(size {s})");
    }
    println!("  sigma");
    for (i, &a) in curves.alphas.iter().enumerate() {
        print!("{a:>7.4}");
        for s in 0..sizes {
            print!("  {:>9.6}", curves.tile_probability[s][i]);
        }
        println!("  {:.4}", curves.sigma[i]);
    }

    println!();
    println!(
        "at the critical density α̂ = {alpha_hat:.4} every tile has probability 1/{} = {:.6}:",
        params.tile_count(),
        1.0 / multiweb::numbers::bigint_to_f64(&params.tile_count())
    );
    let at_critical = params.tile_probability_curves(&[alpha_hat]).unwrap();
    for (s, row) in at_critical.tile_probability.iter().enumerate() {
        println!("  size {s}: {:.9}", row[0]);
    }
}
