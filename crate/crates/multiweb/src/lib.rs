//! Colored multiwebs on finite graphs.
//!
//! An `n`-multiweb with `N` colors assigns to every color a *tile* (a partial
//! matching of the graph) so that each vertex `v` is covered `n_v` times in
//! total. With positive tile weights this defines a probability measure on
//! configurations; this crate implements the exact and asymptotic machinery
//! around that measure:
//!
//! * [`graph`] — small simple graphs with canonical edge order, plus the
//!   cycle/path builders used throughout.
//! * [`tiles`] — tile enumeration in a canonical order, homogenization with a
//!   zero vertex, and closed-form tile counts (Fibonacci/Lucas).
//! * [`poly`] — sparse tiling polynomials, exact partition functions by
//!   dynamic programming, and exact moments of the tile-count vector.
//! * [`gauge`] — feasibility of a target coverage density and the critical
//!   gauge (convex minimization in log coordinates), with the growth rate.
//! * [`laplacian`] — the tile Laplacian `D C Dᵀ`, its pseudo-inverse, and the
//!   Gaussian law of tile counts for large `N`.
//! * [`cycle`] — closed forms specific to odd cycles: reduced polynomials,
//!   the critical density, circulant Laplacian entries and eigenvalues,
//!   root-of-unity sums, and the explicit inverse Laplacian.
//! * [`window`] — statistics of a six-edge local window in a long odd cycle,
//!   including exact finite-length laws and their limits.
//! * [`sampler`] — exhaustive enumeration of multiwebs and a pair heat-bath
//!   Markov chain with reproducible seeding, plus Gaussian-law verification.
//! * [`cli`] — the `multiweb` binary: subcommands, file formats, exit codes.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run -p multiweb --example count_tiles
//! cargo run -p multiweb --example exact_partition
//! cargo run -p multiweb --example critical_gauge
//! cargo run -p multiweb --example tile_covariance
//! cargo run -p multiweb --example cycle_closed_forms
//! cargo run -p multiweb --example probability_curves
//! cargo run -p multiweb --example local_window
//! cargo run -p multiweb --example mcmc_check
//! ```
//!
//! The same functionality is reachable through the thin `multiweb` binary;
//! see `multiweb --help` or the crate README.

pub mod cli;
pub mod cycle;
pub mod error;
pub mod gauge;
pub mod graph;
pub mod io;
pub mod laplacian;
mod linalg;
pub mod numbers;
pub mod poly;
pub mod sampler;
pub mod tiles;
pub mod verify;
pub mod window;

pub use error::Error;

// Re-exported so downstream code can name the matrix and big-number types
// that appear in this crate's public signatures without pinning versions.
pub use nalgebra;
pub use num;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
