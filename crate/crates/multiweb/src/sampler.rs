//! Exact enumeration and pair heat-bath MCMC over colored multiwebs.
//!
//! A multiweb assigns one tile to each of `N` colors so that the induced
//! vertex coverage equals the multiplicity vector `n`; its probability is
//! `w(t_1) ... w(t_N) / Z`. [`enumerate_multiwebs`] computes the exact law of
//! the tile-count vector `X` by depth-first search over count compositions.
//! [`HeatBathSampler`] runs a Markov chain whose moves pick an unordered pair
//! of colors and resample their two tiles conditional on the pair's combined
//! coverage, so coverage is invariant move by move; the conditional is sampled
//! exactly from a precomputed table of tile pairs grouped by combined
//! coverage, which makes every move a heat-bath update and the chain
//! reversible with respect to the multiweb measure.
//!
//! [`empirical_vs_gaussian`] summarizes chain output against a
//! [`GaussianLaw`], flagging any mean or covariance entry more than five
//! standard errors from the prediction and reporting a split-chain potential
//! scale reduction factor.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::laplacian::GaussianLaw;
use crate::poly::WeightFunction;
use crate::tiles::Tile;
use crate::Result;

/// Default cap on enumeration DFS nodes.
pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000_000;

/// Largest split-chain potential scale reduction factor accepted as
/// converged.
pub const SPLIT_RHAT_THRESHOLD: f64 = 1.05;

/// Name of the pseudo-random generator driving every chain, recorded in
/// reports so runs are reproducible from the report alone.
pub const GENERATOR_NAME: &str = "chacha12";

/// One state of the chain: `assignment[c]` is the tile index of color `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiweb {
    assignment: Vec<u32>,
}

impl Multiweb {
    pub fn new(assignment: Vec<u32>) -> Self {
        Multiweb { assignment }
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn color_count(&self) -> usize {
        self.assignment.len()
    }

    /// Tile-count vector `X`: how many colors use each tile.
    pub fn tile_counts(&self, tile_count: usize) -> Vec<u32> {
        let mut counts = vec![0u32; tile_count];
        for &t in &self.assignment {
            counts[t as usize] += 1;
        }
        counts
    }

    /// Induced vertex coverage `DX`.
    pub fn coverage(&self, tiles: &[Tile]) -> Vec<u32> {
        let v = tiles.first().map(|t| t.multiplicity().len()).unwrap_or(0);
        let mut cov = vec![0u32; v];
        for &t in &self.assignment {
            for (i, &m) in tiles[t as usize].multiplicity().iter().enumerate() {
                cov[i] += m as u32;
            }
        }
        cov
    }

    pub fn is_valid(&self, tiles: &[Tile], n: &[u32]) -> bool {
        self.coverage(tiles) == n
    }
}

/// Exact law of the tile-count vector under the multiweb measure.
#[derive(Debug, Clone)]
pub struct ExactLaw {
    /// Partition function: total weight of all valid assignments.
    pub z: f64,
    /// `(X, P(X))` pairs in ascending lexicographic order of `X`.
    pub support: Vec<(Vec<u32>, f64)>,
}

impl ExactLaw {
    /// Mean vector and covariance matrix of `X` under the exact law.
    pub fn moments(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let k = self.support.first().map(|(x, _)| x.len()).unwrap_or(0);
        let mut mean = vec![0.0; k];
        for (x, p) in &self.support {
            for (m, &xi) in mean.iter_mut().zip(x) {
                *m += p * xi as f64;
            }
        }
        let mut cov = vec![vec![0.0; k]; k];
        for (x, p) in &self.support {
            for i in 0..k {
                let di = x[i] as f64 - mean[i];
                for j in 0..k {
                    cov[i][j] += p * di * (x[j] as f64 - mean[j]);
                }
            }
        }
        (mean, cov)
    }
}

/// Exact law of `X` for `colors` colors on the given tile set, by DFS over
/// count compositions with per-vertex budget pruning. The DFS node count is
/// capped; a cap hit returns [`Error::ResourceLimit`].
pub fn enumerate_multiwebs(
    tiles: &[Tile],
    w: &WeightFunction,
    n: &[u32],
    colors: u32,
) -> Result<ExactLaw> {
    enumerate_multiwebs_capped(tiles, w, n, colors, DEFAULT_ENUMERATION_CAP)
}

/// [`enumerate_multiwebs`] with an explicit DFS node cap.
pub fn enumerate_multiwebs_capped(
    tiles: &[Tile],
    w: &WeightFunction,
    n: &[u32],
    colors: u32,
    cap: u128,
) -> Result<ExactLaw> {
    check_tile_inputs(tiles, w, n)?;
    let t = tiles.len();
    let mult: Vec<&[u8]> = tiles.iter().map(|t| t.multiplicity()).collect();
    let totals: Vec<u32> = mult
        .iter()
        .map(|m| m.iter().map(|&x| x as u32).sum())
        .collect();
    // suffix_max[t][v]: largest coverage of v by any tile with index >= t.
    let v = n.len();
    let mut suffix_max = vec![vec![0u32; v]; t + 1];
    for ti in (0..t).rev() {
        for vi in 0..v {
            suffix_max[ti][vi] = suffix_max[ti + 1][vi].max(mult[ti][vi] as u32);
        }
    }
    let all_totals_even = totals.iter().all(|&s| s % 2 == 0);

    struct Dfs<'a> {
        mult: &'a [&'a [u8]],
        weights: &'a [f64],
        suffix_max: &'a [Vec<u32>],
        n: &'a [u32],
        all_totals_even: bool,
        counts: Vec<u32>,
        nodes: u128,
        cap: u128,
        out: BTreeMap<Vec<u32>, f64>,
    }

    impl Dfs<'_> {
        fn go(&mut self, t: usize, remaining: u32, cov: &mut [u32], weight: f64) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::ResourceLimit {
                    what: "multiweb enumeration".into(),
                    needed: self.nodes,
                    limit: self.cap,
                });
            }
            if t == self.mult.len() {
                if remaining == 0 && cov == self.n {
                    *self.out.entry(self.counts.clone()).or_insert(0.0) += weight;
                }
                return Ok(());
            }
            let deficit: u32 = self.n.iter().zip(cov.iter()).map(|(&nv, &c)| nv - c).sum();
            if self.all_totals_even && deficit % 2 == 1 {
                return Ok(());
            }
            // Remaining colors must be able to reach n on every vertex.
            for vi in 0..self.n.len() {
                if cov[vi] + remaining * self.suffix_max[t][vi] < self.n[vi] {
                    return Ok(());
                }
            }
            // Largest usable count of tile t given coverage headroom.
            let mut max_count = remaining;
            for (vi, &m) in self.mult[t].iter().enumerate() {
                if m > 0 {
                    max_count = max_count.min((self.n[vi] - cov[vi]) / m as u32);
                }
            }
            let mut factor = weight;
            for x in 0..=max_count {
                if x > 0 {
                    // Incremental multinomial: C(remaining - x + 1 .. remaining)
                    // contributes (remaining - x + 1) / x per unit.
                    factor *= self.weights[t] * (remaining - x + 1) as f64 / x as f64;
                    for (c, &m) in cov.iter_mut().zip(self.mult[t]) {
                        *c += m as u32;
                    }
                }
                self.counts[t] = x;
                self.go(t + 1, remaining - x, cov, factor)?;
            }
            self.counts[t] = 0;
            for (c, &m) in cov.iter_mut().zip(self.mult[t]) {
                *c -= max_count * m as u32;
            }
            Ok(())
        }
    }

    let mut dfs = Dfs {
        mult: &mult,
        weights: w.values(),
        suffix_max: &suffix_max,
        n,
        all_totals_even,
        counts: vec![0; t],
        nodes: 0,
        cap,
        out: BTreeMap::new(),
    };
    let mut cov = vec![0u32; v];
    dfs.go(0, colors, &mut cov, 1.0)?;
    let z: f64 = dfs.out.values().sum();
    if z <= 0.0 {
        return Err(Error::InfeasibleMultiplicity(format!(
            "no multiweb with multiplicity {n:?} and {colors} colors"
        )));
    }
    let support = dfs
        .out
        .into_iter()
        .map(|(x, wt)| (x, wt / z))
        .collect();
    Ok(ExactLaw { z, support })
}

/// All valid assignments with their probabilities, in lexicographic order of
/// the assignment vector. Intended for small state spaces; the DFS node count
/// is capped like [`enumerate_multiwebs_capped`].
pub fn enumerate_assignments(
    tiles: &[Tile],
    w: &WeightFunction,
    n: &[u32],
    colors: u32,
    cap: u128,
) -> Result<Vec<(Vec<u32>, f64)>> {
    check_tile_inputs(tiles, w, n)?;
    let mult: Vec<&[u8]> = tiles.iter().map(|t| t.multiplicity()).collect();
    let max_total: u32 = mult
        .iter()
        .map(|m| m.iter().map(|&x| x as u32).sum())
        .max()
        .unwrap_or(0);
    let mut out: Vec<(Vec<u32>, f64)> = Vec::new();
    let mut assignment = vec![0u32; colors as usize];
    let mut cov = vec![0u32; n.len()];
    let mut nodes: u128 = 0;

    fn go(
        color: usize,
        mult: &[&[u8]],
        weights: &[f64],
        n: &[u32],
        max_total: u32,
        assignment: &mut Vec<u32>,
        cov: &mut [u32],
        weight: f64,
        nodes: &mut u128,
        cap: u128,
        out: &mut Vec<(Vec<u32>, f64)>,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::ResourceLimit {
                what: "assignment enumeration".into(),
                needed: *nodes,
                limit: cap,
            });
        }
        if color == assignment.len() {
            if cov == n {
                out.push((assignment.clone(), weight));
            }
            return Ok(());
        }
        let remaining = (assignment.len() - color) as u32;
        let deficit: u32 = n.iter().zip(cov.iter()).map(|(&nv, &c)| nv - c).sum();
        if deficit > remaining * max_total {
            return Ok(());
        }
        'tile: for (ti, m) in mult.iter().enumerate() {
            for (vi, &mv) in m.iter().enumerate() {
                if cov[vi] + mv as u32 > n[vi] {
                    continue 'tile;
                }
            }
            for (c, &mv) in cov.iter_mut().zip(m.iter()) {
                *c += mv as u32;
            }
            assignment[color] = ti as u32;
            go(
                color + 1,
                mult,
                weights,
                n,
                max_total,
                assignment,
                cov,
                weight * weights[ti],
                nodes,
                cap,
                out,
            )?;
            for (c, &mv) in cov.iter_mut().zip(m.iter()) {
                *c -= mv as u32;
            }
        }
        Ok(())
    }

    go(
        0,
        &mult,
        w.values(),
        n,
        max_total,
        &mut assignment,
        &mut cov,
        1.0,
        &mut nodes,
        cap,
        &mut out,
    )?;
    let z: f64 = out.iter().map(|(_, w)| w).sum();
    if z <= 0.0 {
        return Err(Error::InfeasibleMultiplicity(format!(
            "no multiweb with multiplicity {n:?} and {colors} colors"
        )));
    }
    for (_, w) in &mut out {
        *w /= z;
    }
    Ok(out)
}

fn check_tile_inputs(tiles: &[Tile], w: &WeightFunction, n: &[u32]) -> Result<()> {
    if tiles.is_empty() {
        return Err(Error::InvalidArgument("tile set is empty".into()));
    }
    if w.len() != tiles.len() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} tiles",
            w.len(),
            tiles.len()
        )));
    }
    if tiles[0].multiplicity().len() != n.len() {
        return Err(Error::InvalidArgument(format!(
            "multiplicity vector has {} entries for {} vertices",
            n.len(),
            tiles[0].multiplicity().len()
        )));
    }
    Ok(())
}

/// Chain schedule: total sweeps, discarded prefix, and emission stride.
/// One sweep is `ceil(N/2)` pair moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub seed: u64,
    pub sweeps: usize,
    pub burn_in: usize,
    pub thinning: usize,
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sweeps <= self.burn_in {
            return Err(Error::InvalidArgument(format!(
                "sweeps ({}) must exceed burn-in ({})",
                self.sweeps, self.burn_in
            )));
        }
        if self.thinning == 0 {
            return Err(Error::InvalidArgument("thinning must be positive".into()));
        }
        Ok(())
    }

    /// Number of states a run will emit.
    pub fn sample_count(&self) -> usize {
        (self.sweeps - self.burn_in) / self.thinning
    }

    /// Same schedule with the seed offset by the chain index, for parallel
    /// chains with disjoint streams.
    pub fn for_chain(&self, index: usize) -> ChainConfig {
        ChainConfig {
            seed: self.seed.wrapping_add(index as u64),
            ..self.clone()
        }
    }
}

/// Ordered tile pairs sharing one combined coverage vector, with cumulative
/// probabilities proportional to `w(a) w(b)`.
struct PairGroup {
    pairs: Vec<(u32, u32)>,
    cumulative: Vec<f64>,
}

/// Pair heat-bath chain over multiwebs with fixed coverage.
pub struct HeatBathSampler {
    multiplicities: Vec<Vec<u32>>,
    n: Vec<u32>,
    assignment: Vec<u32>,
    rng: ChaCha12Rng,
    cfg: ChainConfig,
    groups: Vec<PairGroup>,
    pair_group: Vec<u32>,
    sweeps_done: usize,
    emitted: u64,
}

impl HeatBathSampler {
    /// Builds the pair table and the initial state. The initial tile counts
    /// are `round(N w'_t)` for normalized weights `w'`, adjusted to sum to
    /// `N` and then repaired by greedy single-color moves that reduce the
    /// coverage discrepancy; if the greedy repair stalls before reaching
    /// coverage `n` the constructor fails with [`Error::InitFailure`].
    pub fn new(
        tiles: &[Tile],
        w: &WeightFunction,
        n: &[u32],
        colors: u32,
        cfg: ChainConfig,
    ) -> Result<Self> {
        check_tile_inputs(tiles, w, n)?;
        cfg.validate()?;
        if colors < 2 {
            return Err(Error::InvalidArgument(
                "pair moves need at least two colors".into(),
            ));
        }
        let t = tiles.len();
        if (t as u128) * (t as u128) > 100_000_000 {
            return Err(Error::ResourceLimit {
                what: "heat-bath pair table".into(),
                needed: (t as u128) * (t as u128),
                limit: 100_000_000,
            });
        }
        let multiplicities: Vec<Vec<u32>> = tiles
            .iter()
            .map(|t| t.multiplicity().iter().map(|&m| m as u32).collect())
            .collect();

        // Group ordered pairs by combined coverage; each group's conditional
        // law is proportional to w(a) w(b).
        let mut by_coverage: HashMap<Vec<u32>, Vec<(u32, u32)>> = HashMap::new();
        for a in 0..t {
            for b in 0..t {
                let key: Vec<u32> = multiplicities[a]
                    .iter()
                    .zip(&multiplicities[b])
                    .map(|(&x, &y)| x + y)
                    .collect();
                by_coverage.entry(key).or_default().push((a as u32, b as u32));
            }
        }
        let mut groups = Vec::with_capacity(by_coverage.len());
        let mut pair_group = vec![0u32; t * t];
        let mut keys: Vec<Vec<u32>> = by_coverage.keys().cloned().collect();
        keys.sort();
        let ws = w.values();
        for key in keys {
            let pairs = by_coverage.remove(&key).unwrap();
            let mut cumulative = Vec::with_capacity(pairs.len());
            let mut acc = 0.0;
            for &(a, b) in &pairs {
                acc += ws[a as usize] * ws[b as usize];
                cumulative.push(acc);
            }
            let total = acc;
            for c in &mut cumulative {
                *c /= total;
            }
            let gi = groups.len() as u32;
            for &(a, b) in &pairs {
                pair_group[a as usize * t + b as usize] = gi;
            }
            groups.push(PairGroup { pairs, cumulative });
        }

        let assignment = initial_assignment(&multiplicities, ws, n, colors)?;
        let rng = ChaCha12Rng::seed_from_u64(cfg.seed);
        Ok(HeatBathSampler {
            multiplicities,
            n: n.to_vec(),
            assignment,
            rng,
            cfg,
            groups,
            pair_group,
            sweeps_done: 0,
            emitted: 0,
        })
    }

    pub fn config(&self) -> &ChainConfig {
        &self.cfg
    }

    pub fn state(&self) -> Multiweb {
        Multiweb::new(self.assignment.clone())
    }

    fn pair_move(&mut self) {
        let colors = self.assignment.len();
        let i = self.rng.gen_range(0..colors);
        let mut j = self.rng.gen_range(0..colors - 1);
        if j >= i {
            j += 1;
        }
        let t = self.multiplicities.len();
        let a = self.assignment[i] as usize;
        let b = self.assignment[j] as usize;
        let group = &self.groups[self.pair_group[a * t + b] as usize];
        let u: f64 = self.rng.gen();
        let k = group.cumulative.partition_point(|&c| c < u);
        let (na, nb) = group.pairs[k.min(group.pairs.len() - 1)];
        self.assignment[i] = na;
        self.assignment[j] = nb;
    }

    /// Runs one sweep of `ceil(N/2)` pair moves.
    pub fn step_sweep(&mut self) {
        let moves = self.assignment.len().div_ceil(2);
        for _ in 0..moves {
            self.pair_move();
        }
        self.sweeps_done += 1;
    }

    fn check_coverage(&self) {
        let cov: Vec<u32> = {
            let mut cov = vec![0u32; self.n.len()];
            for &t in &self.assignment {
                for (c, &m) in cov.iter_mut().zip(&self.multiplicities[t as usize]) {
                    *c += m;
                }
            }
            cov
        };
        assert_eq!(
            cov, self.n,
            "heat-bath move broke the coverage invariant; this is a bug"
        );
    }

    /// Runs the configured schedule and returns the emitted states. Coverage
    /// is re-verified on every emission in debug builds and on one percent of
    /// emissions otherwise.
    pub fn run(&mut self) -> Vec<Multiweb> {
        let mut samples = Vec::with_capacity(self.cfg.sample_count());
        while self.sweeps_done < self.cfg.sweeps {
            self.step_sweep();
            let past_burn_in = self.sweeps_done > self.cfg.burn_in;
            if past_burn_in && (self.sweeps_done - self.cfg.burn_in) % self.cfg.thinning == 0 {
                self.emitted += 1;
                if cfg!(debug_assertions) || self.emitted % 100 == 0 {
                    self.check_coverage();
                }
                samples.push(self.state());
            }
        }
        samples
    }
}

/// Rounded-weight initial counts with greedy repair toward coverage `n`.
fn initial_assignment(
    multiplicities: &[Vec<u32>],
    weights: &[f64],
    n: &[u32],
    colors: u32,
) -> Result<Vec<u32>> {
    let t = multiplicities.len();
    let total_weight: f64 = weights.iter().sum();
    let mut counts: Vec<i64> = weights
        .iter()
        .map(|&w| (colors as f64 * w / total_weight).round() as i64)
        .collect();
    // Fix the total to exactly N, moving the counts farthest from ideal.
    let ideal: Vec<f64> = weights
        .iter()
        .map(|&w| colors as f64 * w / total_weight)
        .collect();
    loop {
        let sum: i64 = counts.iter().sum();
        if sum == colors as i64 {
            break;
        }
        if sum > colors as i64 {
            let i = (0..t)
                .filter(|&i| counts[i] > 0)
                .max_by(|&a, &b| {
                    let ea = counts[a] as f64 - ideal[a];
                    let eb = counts[b] as f64 - ideal[b];
                    ea.partial_cmp(&eb).unwrap()
                })
                .expect("positive counts exist while sum exceeds N");
            counts[i] -= 1;
        } else {
            let i = (0..t)
                .max_by(|&a, &b| {
                    let ea = ideal[a] - counts[a] as f64;
                    let eb = ideal[b] - counts[b] as f64;
                    ea.partial_cmp(&eb).unwrap()
                })
                .unwrap();
            counts[i] += 1;
        }
    }
    let mut assignment: Vec<u32> = Vec::with_capacity(colors as usize);
    for (ti, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            assignment.push(ti as u32);
        }
    }
    let v = n.len();
    let mut cov = vec![0u32; v];
    for &a in &assignment {
        for (c, m) in cov.iter_mut().zip(&multiplicities[a as usize]) {
            *c += m;
        }
    }
    let l1 = |cov: &[u32]| -> i64 {
        cov.iter()
            .zip(n)
            .map(|(&c, &nv)| (c as i64 - nv as i64).abs())
            .sum()
    };
    let mut discrepancy = l1(&cov);
    while discrepancy > 0 {
        // Best single-color reassignment; each accepted move reduces the
        // integer discrepancy, so the loop terminates.
        let mut best: Option<(usize, usize, i64)> = None;
        for color in 0..assignment.len() {
            let from = assignment[color] as usize;
            for to in 0..t {
                if to == from {
                    continue;
                }
                let mut delta = 0i64;
                for vi in 0..v {
                    let c = cov[vi] as i64 - multiplicities[from][vi] as i64
                        + multiplicities[to][vi] as i64;
                    delta += (c - n[vi] as i64).abs() - (cov[vi] as i64 - n[vi] as i64).abs();
                }
                if delta < 0 && best.map(|(_, _, d)| delta < d).unwrap_or(true) {
                    best = Some((color, to, delta));
                }
            }
        }
        let Some((color, to, delta)) = best else {
            return Err(Error::InitFailure(format!(
                "greedy repair stalled at coverage discrepancy {discrepancy}"
            )));
        };
        let from = assignment[color] as usize;
        for vi in 0..v {
            cov[vi] = (cov[vi] + multiplicities[to][vi]) - multiplicities[from][vi];
        }
        assignment[color] = to as u32;
        discrepancy += delta;
    }
    Ok(assignment)
}

/// Runs `chains` independent chains in parallel; chain `c` uses seed
/// `cfg.seed + c`.
pub fn run_chains(
    tiles: &[Tile],
    w: &WeightFunction,
    n: &[u32],
    colors: u32,
    cfg: &ChainConfig,
    chains: usize,
) -> Result<Vec<Vec<Multiweb>>> {
    if chains == 0 {
        return Err(Error::InvalidArgument("need at least one chain".into()));
    }
    (0..chains)
        .into_par_iter()
        .map(|c| {
            let mut sampler = HeatBathSampler::new(tiles, w, n, colors, cfg.for_chain(c))?;
            Ok(sampler.run())
        })
        .collect()
}

/// Empirical law of the tile-count vector from chain output: `(X, frequency)`
/// in ascending lexicographic order of `X`.
pub fn empirical_law(samples: &[Multiweb], tile_count: usize) -> Vec<(Vec<u32>, f64)> {
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for s in samples {
        *counts.entry(s.tile_counts(tile_count)).or_insert(0) += 1;
    }
    let total = samples.len() as f64;
    counts
        .into_iter()
        .map(|(x, c)| (x, c as f64 / total))
        .collect()
}

/// Total-variation distance between two laws given as sorted
/// `(point, probability)` slices.
pub fn total_variation(a: &[(Vec<u32>, f64)], b: &[(Vec<u32>, f64)]) -> f64 {
    let mut dist = 0.0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            dist += a[i].1.abs();
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            dist += b[j].1.abs();
            j += 1;
        } else {
            dist += (a[i].1 - b[j].1).abs();
            i += 1;
            j += 1;
        }
    }
    dist / 2.0
}

/// Machine-readable comparison of chain output against a Gaussian prediction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleReport {
    /// Always [`GENERATOR_NAME`].
    pub rng: String,
    pub seed: u64,
    pub chains: usize,
    pub sweeps: usize,
    pub burn_in: usize,
    pub thinning: usize,
    pub samples_per_chain: usize,
    pub total_samples: usize,
    /// Largest split-chain potential scale reduction factor over tile
    /// coordinates.
    pub max_split_rhat: f64,
    pub empirical_mean: Vec<f64>,
    pub predicted_mean: Vec<f64>,
    pub mean_standard_error: Vec<f64>,
    /// Tile indices whose mean deviates by more than five standard errors.
    pub mean_flags: Vec<usize>,
    pub max_mean_deviation_se: f64,
    pub empirical_covariance: Vec<Vec<f64>>,
    pub predicted_covariance: Vec<Vec<f64>>,
    /// Entry pairs whose covariance deviates by more than five standard
    /// errors.
    pub covariance_flags: Vec<(usize, usize)>,
    pub max_covariance_deviation_se: f64,
    /// Sample variance of the total count; always exactly zero because every
    /// state uses all `N` colors.
    pub total_count_variance: f64,
    /// True when no flag fired and the split R-hat is at most
    /// [`SPLIT_RHAT_THRESHOLD`].
    pub pass: bool,
}

/// Compares pooled chain output against `law` coordinate by coordinate.
/// Requires at least 10^4 pooled samples; thinning is assumed to have
/// decorrelated them, which the split R-hat cross-checks.
pub fn empirical_vs_gaussian(
    chains: &[Vec<Multiweb>],
    tile_count: usize,
    law: &GaussianLaw,
    cfg: &ChainConfig,
) -> Result<SampleReport> {
    let total: usize = chains.iter().map(|c| c.len()).sum();
    if total < 10_000 {
        return Err(Error::InvalidArgument(format!(
            "{total} samples is below the 10^4 effective-sample floor"
        )));
    }
    if law.mean.len() != tile_count {
        return Err(Error::InvalidArgument(format!(
            "law has {} coordinates for {} tiles",
            law.mean.len(),
            tile_count
        )));
    }
    let rows: Vec<Vec<f64>> = chains
        .iter()
        .flat_map(|c| c.iter())
        .map(|m| {
            m.tile_counts(tile_count)
                .into_iter()
                .map(f64::from)
                .collect()
        })
        .collect();
    let nf = total as f64;
    let mut mean = vec![0.0; tile_count];
    for row in &rows {
        for (m, &x) in mean.iter_mut().zip(row) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= nf;
    }

    // Pooled covariance and, entry by entry, the sampling error of the
    // covariance estimate from the empirical variance of the products.
    let mut cov = vec![vec![0.0; tile_count]; tile_count];
    let mut prod_sq = vec![vec![0.0; tile_count]; tile_count];
    for row in &rows {
        for i in 0..tile_count {
            let di = row[i] - mean[i];
            for j in i..tile_count {
                let p = di * (row[j] - mean[j]);
                cov[i][j] += p;
                prod_sq[i][j] += p * p;
            }
        }
    }
    for i in 0..tile_count {
        for j in i..tile_count {
            let c = cov[i][j] / (nf - 1.0);
            let second = prod_sq[i][j] / nf;
            let var_of_product = (second - (cov[i][j] / nf) * (cov[i][j] / nf)).max(0.0);
            cov[i][j] = c;
            cov[j][i] = c;
            prod_sq[i][j] = (var_of_product / nf).sqrt();
            prod_sq[j][i] = prod_sq[i][j];
        }
    }

    let mean_se: Vec<f64> = (0..tile_count).map(|i| (cov[i][i] / nf).sqrt()).collect();
    let mut mean_flags = Vec::new();
    let mut max_mean_dev = 0.0f64;
    for i in 0..tile_count {
        let dev = (mean[i] - law.mean[i]).abs();
        if mean_se[i] > 0.0 {
            max_mean_dev = max_mean_dev.max(dev / mean_se[i]);
        }
        if dev > 5.0 * mean_se[i] {
            mean_flags.push(i);
        }
    }
    let mut cov_flags = Vec::new();
    let mut max_cov_dev = 0.0f64;
    for i in 0..tile_count {
        for j in i..tile_count {
            let dev = (cov[i][j] - law.covariance[(i, j)]).abs();
            if prod_sq[i][j] > 0.0 {
                max_cov_dev = max_cov_dev.max(dev / prod_sq[i][j]);
            }
            if dev > 5.0 * prod_sq[i][j] {
                cov_flags.push((i, j));
            }
        }
    }

    // Sample variance of the per-state total count. Every state assigns all
    // N colors, so this is exactly zero whenever the chain is valid.
    let totals: Vec<f64> = rows.iter().map(|r| r.iter().sum()).collect();
    let tmean = totals.iter().sum::<f64>() / nf;
    let total_count_variance = totals.iter().map(|t| (t - tmean) * (t - tmean)).sum::<f64>() / nf;

    let max_split_rhat = (0..tile_count)
        .map(|i| {
            let sequences: Vec<Vec<f64>> = chains
                .iter()
                .flat_map(|c| {
                    let h = c.len() / 2;
                    let x: Vec<f64> = c.iter().map(|m| m.tile_counts(tile_count)[i] as f64).collect();
                    vec![x[..h].to_vec(), x[h..2 * h].to_vec()]
                })
                .collect();
            split_rhat(&sequences)
        })
        .fold(0.0f64, f64::max)
        .max(1.0);

    let predicted_covariance: Vec<Vec<f64>> = (0..tile_count)
        .map(|i| (0..tile_count).map(|j| law.covariance[(i, j)]).collect())
        .collect();
    let pass = mean_flags.is_empty()
        && cov_flags.is_empty()
        && max_split_rhat <= SPLIT_RHAT_THRESHOLD
        && total_count_variance == 0.0;
    Ok(SampleReport {
        rng: GENERATOR_NAME.into(),
        seed: cfg.seed,
        chains: chains.len(),
        sweeps: cfg.sweeps,
        burn_in: cfg.burn_in,
        thinning: cfg.thinning,
        samples_per_chain: chains.first().map(|c| c.len()).unwrap_or(0),
        total_samples: total,
        max_split_rhat,
        empirical_mean: mean,
        predicted_mean: law.mean.iter().copied().collect(),
        mean_standard_error: mean_se,
        mean_flags,
        max_mean_deviation_se: max_mean_dev,
        empirical_covariance: cov,
        predicted_covariance,
        covariance_flags: cov_flags,
        max_covariance_deviation_se: max_cov_dev,
        total_count_variance,
        pass,
    })
}

/// Split-chain potential scale reduction factor over equal-length scalar
/// sequences.
fn split_rhat(sequences: &[Vec<f64>]) -> f64 {
    let m = sequences.len();
    let h = sequences.first().map(|s| s.len()).unwrap_or(0);
    if m < 2 || h < 2 {
        return 1.0;
    }
    let means: Vec<f64> = sequences
        .iter()
        .map(|s| s.iter().sum::<f64>() / h as f64)
        .collect();
    let grand = means.iter().sum::<f64>() / m as f64;
    let b = h as f64 / (m as f64 - 1.0)
        * means.iter().map(|&x| (x - grand) * (x - grand)).sum::<f64>();
    let w = sequences
        .iter()
        .zip(&means)
        .map(|(s, &mu)| s.iter().map(|&x| (x - mu) * (x - mu)).sum::<f64>() / (h as f64 - 1.0))
        .sum::<f64>()
        / m as f64;
    if w <= 0.0 {
        return if b <= 0.0 { 1.0 } else { f64::INFINITY };
    }
    let var_plus = (h as f64 - 1.0) / h as f64 * w + b / h as f64;
    (var_plus / w).sqrt()
}
