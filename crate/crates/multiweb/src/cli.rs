//! Command-line interface over the library pipelines.
//!
//! Subcommands: `tiles` (enumerate or count), `zexact` (partition function
//! and exact moments), `gauge` (critical gauge and growth rate), `cov`
//! (Gaussian law of the tile counts), `cycle` (odd-cycle closed forms,
//! probability curves, covariance), `window` (local five-vertex window law),
//! `sample` (heat-bath MCMC with a verification report), and `verify` (the
//! cross-oracle property suite).
//!
//! Exit codes: 0 on success, 2 on validation errors, 3 on resource limits,
//! 4 on solver non-convergence, 5 on verification failure. Errors print as
//! one JSON object on stderr: `{"error":{"kind":...,"message":...}}`.
//! `MULTIWEB_THREADS` caps the worker-thread count.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde_json::json;

use crate::error::Error;
use crate::gauge::{solve_critical_gauge, DensityVector, SolveOptions};
use crate::graph::{Graph, Shape};
use crate::io;
use crate::laplacian::{gaussian_law, GaussianLaw, IncidenceMatrix, TileWeightDiagonal};
use crate::numbers::ratio_to_f64;
use crate::poly::{exact_moments, partition_function_capped, WeightFunction, DEFAULT_STATE_CAP};
use crate::sampler::{empirical_vs_gaussian, run_chains, ChainConfig};
use crate::tiles::{count_tiles_capped, enumerate_tiles_capped, homogenize, DEFAULT_TILE_CAP};
use crate::verify::{report, run_suite, VerifyOptions};
use crate::window;
use crate::Result;

/// Parses arguments, runs the requested subcommand, and returns the process
/// exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| dispatch(cli)) {
        Ok(()) => 0,
        Err(e) => {
            let payload = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            eprintln!("{payload}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("MULTIWEB_THREADS") {
        let threads: usize = raw.parse().map_err(|_| {
            Error::InvalidArgument(format!("MULTIWEB_THREADS must be a positive integer, got {raw:?}"))
        })?;
        if threads == 0 {
            return Err(Error::InvalidArgument(
                "MULTIWEB_THREADS must be a positive integer".into(),
            ));
        }
        // A second initialization in the same process is harmless; keep the
        // first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

#[derive(Parser)]
#[command(
    name = "multiweb",
    version,
    about = "Colored multiweb models: exact counts, critical gauges, Gaussian laws, and samplers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct GraphSource {
    /// Path to a JSON graph {"vertex_count": V, "edges": [[i, j], ...]},
    /// 1-based vertex indices.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Build the cycle graph on L vertices instead of reading a file.
    #[arg(long = "L")]
    l: Option<usize>,
}

impl GraphSource {
    fn load(&self) -> Result<Graph> {
        match (&self.graph, self.l) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)?;
                Graph::from_json(&text)
            }
            (None, Some(l)) => Graph::cycle(l),
            _ => Err(Error::InvalidArgument(
                "provide exactly one of --graph and --L".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count the tiles of a graph, or list them with --out/--format.
    Tiles {
        #[command(flatten)]
        graph: GraphSource,
        /// Cap on the number of tiles enumerated.
        #[arg(long = "max-states")]
        max_states: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Exact partition function and moments of the tile-count vector.
    Zexact {
        #[command(flatten)]
        graph: GraphSource,
        /// Number of colors.
        #[arg(long = "N")]
        colors: u32,
        /// Per-vertex density: a number, "critical", or a JSON vector file.
        /// The multiplicity vector is N times the density.
        #[arg(long, default_value = "critical")]
        alpha: String,
        /// Tile weights: "uniform" or a JSON array/map file.
        #[arg(long, default_value = "uniform")]
        weights: String,
        /// Cap on DP states times colors.
        #[arg(long = "max-states")]
        max_states: Option<u128>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical gauge: solves for x with P(x) = 1 and the target density.
    Gauge {
        #[command(flatten)]
        graph: GraphSource,
        /// Per-vertex density: a number, "critical", or a JSON vector file.
        #[arg(long, default_value = "critical")]
        alpha: String,
        /// Tile weights: "uniform" or a JSON array/map file.
        #[arg(long, default_value = "uniform")]
        weights: String,
        /// Convergence tolerance for the Newton solver.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gaussian law of the tile-count vector: mean and covariance.
    Cov {
        #[command(flatten)]
        graph: GraphSource,
        /// Number of colors the law is scaled to.
        #[arg(long = "N", default_value = "1")]
        colors: f64,
        /// Density to solve the critical gauge at; omit to use --weights as
        /// the tile law directly.
        #[arg(long)]
        alpha: Option<String>,
        /// Tile weights: "uniform" or a JSON array/map file.
        #[arg(long, default_value = "uniform")]
        weights: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Odd-cycle closed forms: critical density, spectra, curves, covariance.
    Cycle {
        /// Cycle length (odd).
        #[arg(long = "L")]
        l: usize,
        /// Which quantity to emit.
        #[arg(value_enum)]
        action: CycleAction,
        /// Number of colors for the covariance action.
        #[arg(long = "N", default_value = "1")]
        colors: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Gaussian law of the 21 local-window configuration counts.
    Window {
        /// Cycle length (odd, at least 11).
        #[arg(long = "L")]
        l: usize,
        /// Number of colors the law is scaled to.
        #[arg(long = "N", default_value = "1")]
        colors: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Heat-bath MCMC run compared against the Gaussian law.
    Sample {
        #[command(flatten)]
        graph: GraphSource,
        /// Number of colors.
        #[arg(long = "N")]
        colors: u32,
        /// Per-vertex density: a number, "critical", or a JSON vector file.
        #[arg(long, default_value = "critical")]
        alpha: String,
        /// Tile weights: "uniform" or a JSON array/map file.
        #[arg(long, default_value = "uniform")]
        weights: String,
        #[arg(long, default_value = "1")]
        seed: u64,
        /// Total sweeps per chain (one sweep is ceil(N/2) pair moves).
        #[arg(long, default_value = "6200")]
        sweeps: usize,
        #[arg(long = "burn-in", default_value = "200")]
        burn_in: usize,
        #[arg(long, default_value = "2")]
        thinning: usize,
        /// Independent chains run in parallel with seeds seed, seed+1, ...
        #[arg(long, default_value = "4")]
        chains: usize,
        /// Also write every kept state as binary frames (chains
        /// concatenated in order).
        #[arg(long)]
        frames: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the cross-oracle verification suite.
    Verify {
        /// Shrink ranges for a fast smoke run.
        #[arg(long)]
        quick: bool,
        /// Tolerance for the 1e-9-family agreement checks.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CycleAction {
    /// Print the critical density as an exact rational and a float.
    AlphaHat,
    /// Emit every closed form as one JSON document.
    ClosedForms,
    /// Emit tile-probability curves over a density grid (alpha, size,
    /// probability).
    Curves,
    /// Emit the Gaussian covariance matrix of the tile counts.
    Cov,
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Tiles {
            graph,
            max_states,
            out,
            format,
        } => run_tiles(&graph, max_states, out.as_deref(), format),
        Command::Zexact {
            graph,
            colors,
            alpha,
            weights,
            max_states,
            out,
        } => run_zexact(&graph, colors, &alpha, &weights, max_states, out.as_deref()),
        Command::Gauge {
            graph,
            alpha,
            weights,
            tol,
            out,
        } => run_gauge(&graph, &alpha, &weights, tol, out.as_deref()),
        Command::Cov {
            graph,
            colors,
            alpha,
            weights,
            tol,
            out,
            format,
        } => run_cov(&graph, colors, alpha.as_deref(), &weights, tol, out.as_deref(), format),
        Command::Cycle {
            l,
            action,
            colors,
            out,
            format,
        } => run_cycle(l, action, colors, out.as_deref(), format),
        Command::Window {
            l,
            colors,
            out,
            format,
        } => run_window(l, colors, out.as_deref(), format),
        Command::Sample {
            graph,
            colors,
            alpha,
            weights,
            seed,
            sweeps,
            burn_in,
            thinning,
            chains,
            frames,
            out,
        } => run_sample(
            &graph,
            colors,
            &alpha,
            &weights,
            ChainConfig {
                seed,
                sweeps,
                burn_in,
                thinning,
            },
            chains,
            frames.as_deref(),
            out.as_deref(),
        ),
        Command::Verify { quick, tol } => run_verify(quick, tol),
    }
}

// ---------------------------------------------------------------------------
// Shared argument resolution
// ---------------------------------------------------------------------------

/// Resolves `--alpha`: "critical" (odd cycles only), a bare number applied
/// uniformly, or a path to a JSON vector.
fn resolve_alpha(spec: &str, g: &Graph) -> Result<DensityVector> {
    if spec == "critical" {
        return match g.classify() {
            Shape::Cycle(l) => {
                let params = crate::cycle::CycleParams::new(l)?;
                DensityVector::uniform(g.vertex_count(), ratio_to_f64(&params.alpha_hat()))
            }
            _ => Err(Error::InvalidArgument(
                "--alpha critical needs an odd cycle graph; pass an explicit density".into(),
            )),
        };
    }
    if let Ok(value) = spec.parse::<f64>() {
        return DensityVector::uniform(g.vertex_count(), value);
    }
    let values: Vec<f64> = io::read_json_file(Path::new(spec))?;
    if values.len() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "density file has {} entries for {} vertices",
            values.len(),
            g.vertex_count()
        )));
    }
    DensityVector::new(values)
}

/// Resolves `--weights`: "uniform" or a JSON file holding either an array of
/// per-tile weights or a map from tile index to weight (unlisted tiles get
/// weight 1).
fn resolve_weights(spec: &str, tile_count: usize) -> Result<WeightFunction> {
    if spec == "uniform" {
        return Ok(WeightFunction::uniform(tile_count));
    }
    let value: serde_json::Value = io::read_json_file(Path::new(spec))?;
    match value {
        serde_json::Value::Array(items) => {
            if items.len() != tile_count {
                return Err(Error::InvalidArgument(format!(
                    "weight array has {} entries for {tile_count} tiles",
                    items.len()
                )));
            }
            let weights: Option<Vec<f64>> = items.iter().map(|v| v.as_f64()).collect();
            WeightFunction::new(weights.ok_or_else(|| {
                Error::InvalidArgument("weight array entries must be numbers".into())
            })?)
        }
        serde_json::Value::Object(map) => {
            let mut weights = vec![1.0; tile_count];
            for (key, v) in map {
                let idx: usize = key.parse().map_err(|_| {
                    Error::InvalidArgument(format!("weight map key {key:?} is not a tile index"))
                })?;
                if idx >= tile_count {
                    return Err(Error::InvalidArgument(format!(
                        "weight map key {idx} exceeds tile count {tile_count}"
                    )));
                }
                weights[idx] = v.as_f64().ok_or_else(|| {
                    Error::InvalidArgument(format!("weight for tile {idx} must be a number"))
                })?;
            }
            WeightFunction::new(weights)
        }
        _ => Err(Error::InvalidArgument(
            "weights file must hold a JSON array or map".into(),
        )),
    }
}

/// Scales a density to the integer multiplicity vector `n = N α`, rejecting
/// targets that are not integral.
fn multiplicity_vector(alpha: &DensityVector, colors: u32) -> Result<Vec<u32>> {
    alpha
        .values()
        .iter()
        .enumerate()
        .map(|(v, &a)| {
            let scaled = a * colors as f64;
            let rounded = scaled.round();
            if (scaled - rounded).abs() > 1e-6 || rounded < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "N·alpha must be a nonnegative integer; vertex {} gives {scaled}",
                    v + 1
                )));
            }
            Ok(rounded as u32)
        })
        .collect()
}

fn print_or_write_json(out: Option<&Path>, payload: &serde_json::Value) -> Result<()> {
    match out {
        Some(path) => io::write_json(path, payload),
        None => {
            println!("{}", serde_json::to_string_pretty(payload).expect("serializable"));
            Ok(())
        }
    }
}

/// Emits a matrix either as CSV (with a JSON metadata sidecar next to it)
/// or as a single JSON document with the matrix inlined.
fn emit_matrix(
    out: Option<&Path>,
    format: Format,
    prefix: &str,
    matrix: &DMatrix<f64>,
    metadata: serde_json::Value,
) -> Result<()> {
    match format {
        Format::Csv => match out {
            Some(path) => {
                io::write_matrix_csv(path, prefix, matrix)?;
                io::write_json(&path.with_extension("json"), &metadata)
            }
            None => {
                let header: Vec<String> =
                    (0..matrix.ncols()).map(|j| format!("{prefix}{j}")).collect();
                println!("{}", header.join(","));
                for i in 0..matrix.nrows() {
                    let row: Vec<String> =
                        (0..matrix.ncols()).map(|j| matrix[(i, j)].to_string()).collect();
                    println!("{}", row.join(","));
                }
                Ok(())
            }
        },
        Format::Json => {
            let rows: Vec<Vec<f64>> = (0..matrix.nrows())
                .map(|i| (0..matrix.ncols()).map(|j| matrix[(i, j)]).collect())
                .collect();
            let payload = json!({"metadata": metadata, "matrix": rows});
            print_or_write_json(out, &payload)
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn run_tiles(
    source: &GraphSource,
    max_states: Option<u64>,
    out: Option<&Path>,
    format: Format,
) -> Result<()> {
    let g = source.load()?;
    let cap = max_states.unwrap_or(DEFAULT_TILE_CAP);
    let count = count_tiles_capped(&g, cap)?;
    if out.is_none() && format == Format::Csv {
        println!("{count}");
        return Ok(());
    }
    let tiles = enumerate_tiles_capped(&g, cap)?;
    match format {
        Format::Csv => {
            let mut header = vec!["tile".to_string(), "size".to_string()];
            header.extend((1..=g.vertex_count()).map(|v| format!("v{v}")));
            let rows = tiles.iter().enumerate().map(|(i, t)| {
                let mut row = vec![i.to_string(), t.size().to_string()];
                row.extend(t.multiplicity().iter().map(|m| m.to_string()));
                row
            });
            io::write_records_csv(out.expect("checked above"), &header, rows)
        }
        Format::Json => {
            let listed: Vec<serde_json::Value> = tiles
                .iter()
                .map(|t| {
                    let edges: Vec<(u32, u32)> = t
                        .edges()
                        .iter()
                        .map(|&e| g.edges()[e as usize])
                        .collect();
                    json!({
                        "edges": edges,
                        "size": t.size(),
                        "covered_vertices": t.covered_vertices(),
                    })
                })
                .collect();
            let payload = json!({"count": count.to_string(), "tiles": listed});
            print_or_write_json(out, &payload)
        }
    }
}

fn run_zexact(
    source: &GraphSource,
    colors: u32,
    alpha: &str,
    weights: &str,
    max_states: Option<u128>,
    out: Option<&Path>,
) -> Result<()> {
    let g = source.load()?;
    let tiles = enumerate_tiles_capped(&g, DEFAULT_TILE_CAP)?;
    let h = homogenize(&tiles, g.vertex_count());
    let w = resolve_weights(weights, h.len())?;
    let alpha = resolve_alpha(alpha, &g)?;
    let n = multiplicity_vector(&alpha, colors)?;
    let cap = max_states.unwrap_or(DEFAULT_STATE_CAP);
    let z = partition_function_capped(&g, &h, &w, &n, colors, cap)?;
    let moments = if colors >= 2 && z > 0.0 {
        let m = exact_moments(&g, &h, &w, &n, colors, cap)?;
        json!({"mean": m.mean, "covariance": m.covariance()})
    } else {
        serde_json::Value::Null
    };
    let payload = json!({
        "colors": colors,
        "n": n,
        "z": z,
        "log_z": if z > 0.0 { json!(z.ln()) } else { serde_json::Value::Null },
        "moments": moments,
    });
    print_or_write_json(out, &payload)
}

fn run_gauge(
    source: &GraphSource,
    alpha: &str,
    weights: &str,
    tol: Option<f64>,
    out: Option<&Path>,
) -> Result<()> {
    let g = source.load()?;
    let tiles = enumerate_tiles_capped(&g, DEFAULT_TILE_CAP)?;
    let h = homogenize(&tiles, g.vertex_count());
    let w = resolve_weights(weights, h.len())?;
    let alpha = resolve_alpha(alpha, &g)?;
    let opts = SolveOptions {
        tol: tol.unwrap_or(SolveOptions::default().tol),
        ..SolveOptions::default()
    };
    let gauge = solve_critical_gauge(&h, &w, &alpha, opts)?;
    // Residuals of the criticality equations: realized density minus target,
    // per homogenized coordinate.
    let target = alpha.homogenized();
    let mut realized = vec![0.0; target.len()];
    for (tile, &wt) in h.iter().zip(&gauge.weights) {
        for (r, e) in realized.iter_mut().zip(tile.exponents()) {
            *r += wt * e as f64;
        }
    }
    let residuals: Vec<f64> = realized
        .iter()
        .zip(&target)
        .map(|(&r, &t)| r - t)
        .collect();
    let payload = json!({
        "x": gauge.x,
        "w_prime": gauge.weights,
        "sigma": gauge.sigma,
        "iterations": gauge.iterations,
        "residual": gauge.residual,
        "residuals": residuals,
    });
    print_or_write_json(out, &payload)
}

/// Builds the Gaussian law for a graph: from the critical gauge at `alpha`
/// when given, otherwise directly from normalized weights.
fn law_for_graph(
    g: &Graph,
    colors: f64,
    alpha: Option<&str>,
    weights: &str,
    tol: Option<f64>,
) -> Result<(GaussianLaw, usize)> {
    let tiles = enumerate_tiles_capped(g, DEFAULT_TILE_CAP)?;
    let h = homogenize(&tiles, g.vertex_count());
    let t = h.len();
    if (t as u128) * (t as u128) > 25_000_000 {
        return Err(Error::ResourceLimit {
            what: "dense tile covariance".into(),
            needed: (t as u128) * (t as u128),
            limit: 25_000_000,
        });
    }
    let w = resolve_weights(weights, t)?;
    let tile_law: Vec<f64> = match alpha {
        Some(spec) => {
            let alpha = resolve_alpha(spec, g)?;
            let opts = SolveOptions {
                tol: tol.unwrap_or(SolveOptions::default().tol),
                ..SolveOptions::default()
            };
            solve_critical_gauge(&h, &w, &alpha, opts)?.weights
        }
        None => {
            let total: f64 = w.values().iter().sum();
            w.values().iter().map(|&x| x / total).collect()
        }
    };
    let d = IncidenceMatrix::from_tiles(&h)?;
    let c = TileWeightDiagonal::new(tile_law)?;
    Ok((gaussian_law(&d, &c, colors)?, t))
}

fn run_cov(
    source: &GraphSource,
    colors: f64,
    alpha: Option<&str>,
    weights: &str,
    tol: Option<f64>,
    out: Option<&Path>,
    format: Format,
) -> Result<()> {
    let g = source.load()?;
    let (law, t) = law_for_graph(&g, colors, alpha, weights, tol)?;
    let metadata = json!({
        "tiles": t,
        "colors": colors,
        "order": "size-then-lex",
        "mean": law.mean.iter().copied().collect::<Vec<f64>>(),
    });
    emit_matrix(out, format, "t", &law.covariance, metadata)
}

fn run_cycle(
    l: usize,
    action: CycleAction,
    colors: f64,
    out: Option<&Path>,
    format: Format,
) -> Result<()> {
    let params = crate::cycle::CycleParams::new(l)?;
    match action {
        CycleAction::AlphaHat => {
            let exact = params.alpha_hat();
            println!("{exact}");
            println!("{}", ratio_to_f64(&exact));
            Ok(())
        }
        CycleAction::ClosedForms => {
            let closed = params.laplacian_closed_form();
            let spectrum = params.circulant_spectrum();
            let payload = json!({
                "L": l,
                "tiles": params.tile_count().to_string(),
                "alpha_hat": {
                    "exact": params.alpha_hat().to_string(),
                    "value": ratio_to_f64(&params.alpha_hat()),
                },
                "size_class_counts": params
                    .size_class_counts()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>(),
                "circulant_entries": spectrum
                    .entries
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>(),
                "eigenvalues": spectrum.eigenvalues,
                "inverse": {
                    "corner": closed.corner.to_string(),
                    "off_corner": closed.off_corner.to_string(),
                    "mode_zero": closed.mode_zero.to_string(),
                    "schur": closed.schur.to_string(),
                },
                "mode_sums": (0..l)
                    .map(|shift| params.reciprocal_mode_sum(shift as i64).to_string())
                    .collect::<Vec<_>>(),
            });
            print_or_write_json(out, &payload)
        }
        CycleAction::Curves => {
            let alpha_max = (l as f64 - 1.0) / l as f64;
            let alphas: Vec<f64> = (1..100).map(|k| k as f64 / 100.0 * alpha_max).collect();
            let curves = params.tile_probability_curves(&alphas)?;
            match format {
                Format::Csv => {
                    let header = vec![
                        "alpha".to_string(),
                        "size".to_string(),
                        "probability".to_string(),
                    ];
                    let mut rows = Vec::new();
                    for (i, &a) in curves.alphas.iter().enumerate() {
                        for (s, curve) in curves.tile_probability.iter().enumerate() {
                            rows.push(vec![a.to_string(), s.to_string(), curve[i].to_string()]);
                        }
                    }
                    match out {
                        Some(path) => io::write_records_csv(path, &header, rows.into_iter()),
                        None => {
                            println!("{}", header.join(","));
                            for row in rows {
                                println!("{}", row.join(","));
                            }
                            Ok(())
                        }
                    }
                }
                Format::Json => {
                    let payload = json!({
                        "L": l,
                        "alphas": curves.alphas,
                        "sigma": curves.sigma,
                        "tile_probability": curves.tile_probability,
                    });
                    print_or_write_json(out, &payload)
                }
            }
        }
        CycleAction::Cov => {
            let g = Graph::cycle(l)?;
            let (law, t) = law_for_graph(&g, colors, Some("critical"), "uniform", None)?;
            let metadata = json!({
                "L": l,
                "tiles": t,
                "order": "size-then-lex",
                "colors": colors,
            });
            emit_matrix(out, format, "t", &law.covariance, metadata)
        }
    }
}

fn run_window(l: usize, colors: f64, out: Option<&Path>, format: Format) -> Result<()> {
    let law = window::local_law(l, colors)?;
    let configs = window::enumerate_local_configs();
    let listed: Vec<serde_json::Value> = configs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            json!({
                "index": j,
                "slots": c.slots(),
                "f": c.edge_count(),
                "epsilon": c.end_count(),
            })
        })
        .collect();
    let metadata = json!({
        "L": l,
        "colors": colors,
        "configurations": listed,
        "mean": law.mean.iter().copied().collect::<Vec<f64>>(),
    });
    emit_matrix(out, format, "j", &law.covariance, metadata)
}

#[allow(clippy::too_many_arguments)]
fn run_sample(
    source: &GraphSource,
    colors: u32,
    alpha: &str,
    weights: &str,
    cfg: ChainConfig,
    chains: usize,
    frames: Option<&Path>,
    out: Option<&Path>,
) -> Result<()> {
    let g = source.load()?;
    let tiles = enumerate_tiles_capped(&g, DEFAULT_TILE_CAP)?;
    let h = homogenize(&tiles, g.vertex_count());
    let t = tiles.len();
    let w = resolve_weights(weights, t)?;
    let alpha = resolve_alpha(alpha, &g)?;
    let n = multiplicity_vector(&alpha, colors)?;

    let total: f64 = w.values().iter().sum();
    let tile_law: Vec<f64> = w.values().iter().map(|&x| x / total).collect();
    let d = IncidenceMatrix::from_tiles(&h)?;
    let c = TileWeightDiagonal::new(tile_law)?;
    let law = gaussian_law(&d, &c, colors as f64)?;

    let runs = run_chains(&tiles, &w, &n, colors, &cfg, chains)?;
    if let Some(path) = frames {
        let all: Vec<crate::sampler::Multiweb> =
            runs.iter().flat_map(|c| c.iter().cloned()).collect();
        io::write_frames(path, &all)?;
    }
    let report = empirical_vs_gaussian(&runs, t, &law, &cfg)?;
    let pass = report.pass;
    let flags = report.mean_flags.len() + report.covariance_flags.len();
    let payload = serde_json::to_value(&report).expect("serializable");
    print_or_write_json(out, &payload)?;
    if !pass {
        return Err(Error::VerificationFailed(flags.max(1)));
    }
    Ok(())
}

fn run_verify(quick: bool, tol: Option<f64>) -> Result<()> {
    let opts = VerifyOptions {
        quick,
        tol: tol.unwrap_or(VerifyOptions::default().tol),
    };
    let results = run_suite(&opts);
    let failures = report(&results);
    if failures > 0 {
        return Err(Error::VerificationFailed(failures));
    }
    Ok(())
}
