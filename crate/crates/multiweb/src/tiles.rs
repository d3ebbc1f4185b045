//! Tiles of a graph: partial matchings, enumerated in a canonical order.
//!
//! A tile covers each vertex at most once. The canonical order is ascending
//! size, then lexicographic on the sorted list of covered vertices, then
//! lexicographic on edge indices; matrix axes, CSV columns, and sampler state
//! indices all refer to this order. Homogenization appends a zero vertex
//! `v_0` covered `V - 2s(t)` times, making every tile's total multiplicity
//! equal to `V`.

use num::bigint::BigInt;

use crate::error::Error;
use crate::graph::{Graph, Shape};
use crate::numbers::{fib, lucas};
use crate::Result;

/// Default cap on the number of tiles materialized or counted by DFS.
pub const DEFAULT_TILE_CAP: u64 = 10_000_000;

/// A partial matching, stored as ascending edge indices plus its 0/1 vertex
/// multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    edges: Vec<u32>,
    multiplicity: Vec<u8>,
}

impl Tile {
    /// Edge indices into [`Graph::edges`], ascending.
    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    /// Number of edges `s(t)`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Per-vertex coverage (0 or 1), indexed `0..V` for vertices `1..=V`.
    pub fn multiplicity(&self) -> &[u8] {
        &self.multiplicity
    }

    /// Covered vertices in ascending order (1-based).
    pub fn covered_vertices(&self) -> Vec<u32> {
        self.multiplicity
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    fn from_edges(g: &Graph, edge_ids: &[u32]) -> Tile {
        let mut multiplicity = vec![0u8; g.vertex_count()];
        for &e in edge_ids {
            let (a, b) = g.edges()[e as usize];
            multiplicity[a as usize - 1] += 1;
            multiplicity[b as usize - 1] += 1;
        }
        Tile {
            edges: edge_ids.to_vec(),
            multiplicity,
        }
    }
}

/// A tile together with its zero-vertex multiplicity `V - 2s(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogenizedTile {
    tile: Tile,
    zero_multiplicity: u32,
}

impl HomogenizedTile {
    pub fn tile(&self) -> &Tile {
        &self.tile
    }

    pub fn zero_multiplicity(&self) -> u32 {
        self.zero_multiplicity
    }

    /// Exponent vector `(t_{v_0}, t_{v_1}, ..., t_{v_V})`; entries sum to `V`.
    pub fn exponents(&self) -> Vec<u32> {
        let mut exps = Vec::with_capacity(self.tile.multiplicity.len() + 1);
        exps.push(self.zero_multiplicity);
        exps.extend(self.tile.multiplicity.iter().map(|&m| m as u32));
        exps
    }
}

/// Enumerates all tiles in canonical order with the default cap.
pub fn enumerate_tiles(g: &Graph) -> Result<Vec<Tile>> {
    enumerate_tiles_capped(g, DEFAULT_TILE_CAP)
}

/// Enumerates all tiles in canonical order, failing with `ResourceLimit`
/// once more than `cap` tiles would be produced.
pub fn enumerate_tiles_capped(g: &Graph, cap: u64) -> Result<Vec<Tile>> {
    let mut ids: Vec<Vec<u32>> = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    let mut used = vec![false; g.vertex_count()];
    dfs_collect(g, 0, &mut used, &mut current, &mut ids, cap)?;
    let mut tiles: Vec<Tile> = ids.iter().map(|e| Tile::from_edges(g, e)).collect();
    tiles.sort_by(|a, b| {
        (a.size(), a.covered_vertices(), &a.edges).cmp(&(
            b.size(),
            b.covered_vertices(),
            &b.edges,
        ))
    });
    Ok(tiles)
}

fn dfs_collect(
    g: &Graph,
    start: usize,
    used: &mut [bool],
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
    cap: u64,
) -> Result<()> {
    if out.len() as u64 >= cap {
        return Err(Error::ResourceLimit {
            what: "tile enumeration".into(),
            needed: cap as u128 + 1,
            limit: cap as u128,
        });
    }
    out.push(current.clone());
    for e in start..g.edge_count() {
        let (a, b) = g.edges()[e];
        let (ia, ib) = (a as usize - 1, b as usize - 1);
        if used[ia] || used[ib] {
            continue;
        }
        used[ia] = true;
        used[ib] = true;
        current.push(e as u32);
        dfs_collect(g, e + 1, used, current, out, cap)?;
        current.pop();
        used[ia] = false;
        used[ib] = false;
    }
    Ok(())
}

/// Appends the zero-vertex multiplicity to each tile.
pub fn homogenize(tiles: &[Tile], vertex_count: usize) -> Vec<HomogenizedTile> {
    tiles
        .iter()
        .map(|t| HomogenizedTile {
            tile: t.clone(),
            zero_multiplicity: (vertex_count - 2 * t.size()) as u32,
        })
        .collect()
}

/// Number of tiles, using Fibonacci/Lucas closed forms when the graph is a
/// recognized path or cycle and a capped DFS count otherwise.
pub fn count_tiles(g: &Graph) -> Result<BigInt> {
    count_tiles_capped(g, DEFAULT_TILE_CAP)
}

/// [`count_tiles`] with an explicit DFS cap for unrecognized graphs.
pub fn count_tiles_capped(g: &Graph, cap: u64) -> Result<BigInt> {
    match g.classify() {
        Shape::Cycle(l) => Ok(lucas(l as u64)),
        Shape::Path(n) => Ok(fib(n as i64 + 1)),
        Shape::Other => {
            let mut used = vec![false; g.vertex_count()];
            let mut count = 0u64;
            dfs_count(g, 0, &mut used, &mut count, cap)?;
            Ok(BigInt::from(count))
        }
    }
}

fn dfs_count(g: &Graph, start: usize, used: &mut [bool], count: &mut u64, cap: u64) -> Result<()> {
    if *count >= cap {
        return Err(Error::ResourceLimit {
            what: "tile count".into(),
            needed: cap as u128 + 1,
            limit: cap as u128,
        });
    }
    *count += 1;
    for e in start..g.edge_count() {
        let (a, b) = g.edges()[e];
        let (ia, ib) = (a as usize - 1, b as usize - 1);
        if used[ia] || used[ib] {
            continue;
        }
        used[ia] = true;
        used[ib] = true;
        dfs_count(g, e + 1, used, count, cap)?;
        used[ia] = false;
        used[ib] = false;
    }
    Ok(())
}
