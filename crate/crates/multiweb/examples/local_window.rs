//! Statistics of a six-edge window in a long critical cycle.
//!
//! Restricting a tile to five consecutive vertices leaves one of 21 local
//! configurations, indexed by which of the six incident edge slots are
//! occupied. Configurations sharing the edge count `f` inside the window
//! and the end-slot count `ε` have class size `F_{L-ε-4}`, and as `L` grows
//! the per-configuration counts converge to golden-ratio limits.

use multiweb::window;

fn main() {
    let configs = window::enumerate_local_configs();
    println!("{} local configurations (slots occupied, f, ε):", configs.len());
    for (j, c) in configs.iter().enumerate() {
        println!(
            "  {j:>2}: slots {:?}, f = {}, ε = {}",
            c.slots(),
            c.edge_count(),
            c.end_count()
        );
    }

    let l = 31usize;
    let counts = window::coverage_counts(l).unwrap();
    let total: multiweb::num::BigInt = counts.class_sizes.iter().sum();
    println!();
    println!(
        "at L = {l} the class sizes sum to the tile count: {total} = Y_{l}"
    );

    // Gaussian law of the 21 counts per color, and the long-cycle limits.
    let law = window::local_law(l, 1.0).unwrap();
    let limit_law = window::local_law(501, 1.0).unwrap();
    println!();
    println!(
        "{:>4} {:>12} {:>12} {:>12} {:>12}",
        "j", "mean(L=31)", "mean(L=501)", "limit mean", "limit var"
    );
    for (j, c) in configs.iter().enumerate() {
        let (mean, var) = window::local_limits(c.end_count(), c.edge_count(), 1.0).unwrap();
        println!(
            "{j:>4} {:>12.8} {:>12.8} {mean:>12.8} {var:>12.8}",
            law.mean[j], limit_law.mean[j]
        );
    }
}
