//! Tile counts on cycles and paths against their closed forms.
//!
//! Tiles are partial matchings. On the cycle `C_L` there are `Y_L` of them
//! (Lucas numbers), on the path `P_n` there are `F_{n+1}` (Fibonacci).

use multiweb::graph::Graph;
use multiweb::numbers::{fib, lucas};
use multiweb::tiles::count_tiles;

fn main() {
    println!("cycle C_L        tiles   Lucas Y_L");
    for l in (3..=17).step_by(2) {
        let g = Graph::cycle(l).unwrap();
        let count = count_tiles(&g).unwrap();
        let closed = lucas(l as u64);
        assert_eq!(count, closed);
        println!("  L = {l:>2}   {count:>10}   {closed:>9}");
    }

    println!();
    println!("path P_n         tiles   Fibonacci F_(n+1)");
    for n in (2..=12).step_by(2) {
        let g = Graph::path(n);
        let count = count_tiles(&g).unwrap();
        let closed = fib(n as i64 + 1);
        assert_eq!(count, closed);
        println!("  n = {n:>2}   {count:>10}   {closed:>9}");
    }

    // Any simple graph works; the closed forms are just the special cases.
    let g = Graph::new(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap();
    println!();
    println!(
        "cycle with a chord (4 vertices, 5 edges): {} tiles",
        count_tiles(&g).unwrap()
    );
}
