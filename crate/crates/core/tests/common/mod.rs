//! Independent oracles shared by the integration tests. They work on plain
//! `Vec<Vec<bool>>` grids and never call into the crate's algorithms.
#![allow(dead_code)]

use cobweb_core::BoolMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Grid = Vec<Vec<bool>>;

pub fn to_grid(m: &BoolMatrix) -> Grid {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

pub fn from_grid(g: &Grid) -> BoolMatrix {
    let rows: Vec<Vec<u8>> = g
        .iter()
        .map(|r| r.iter().map(|&b| b as u8).collect())
        .collect();
    let cols = g.first().map_or(0, Vec::len);
    BoolMatrix::from_rows_with_cols(&rows, cols).unwrap()
}

/// Floyd-Warshall reachability.
#[allow(clippy::needless_range_loop)]
pub fn warshall(adj: &Grid, reflexive: bool) -> Grid {
    let n = adj.len();
    let mut r = adj.clone();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    if reflexive {
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
    }
    r
}

/// Number of directed paths of length >= 1 from `x` to `y` in a DAG.
pub fn dfs_paths(adj: &Grid, x: usize, y: usize) -> u64 {
    adj[x]
        .iter()
        .enumerate()
        .filter(|(_, &e)| e)
        .map(|(z, _)| if z == y { 1 } else { 0 } + dfs_paths(adj, z, y))
        .sum()
}

/// Lexicographically smallest 2x2 permutation submatrix by exhaustive scan.
pub fn naive_perm2x2(b: &Grid) -> Option<(usize, usize, usize, usize)> {
    let rows = b.len();
    let cols = b.first().map_or(0, Vec::len);
    for r1 in 0..rows {
        for r2 in r1 + 1..rows {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    let (a, bb, c, d) = (b[r1][c1], b[r1][c2], b[r2][c1], b[r2][c2]);
                    if (a && !bb && !c && d) || (!a && bb && c && !d) {
                        return Some((r1, r2, c1, c2));
                    }
                }
            }
        }
    }
    None
}

/// Zeta matrix of the complete cobweb with these level sizes, by level comparison.
pub fn cobweb_zeta(sizes: &[usize]) -> Grid {
    let level: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(k, &s)| std::iter::repeat_n(k, s))
        .collect();
    let n = level.len();
    (0..n)
        .map(|i| (0..n).map(|j| i == j || level[j] > level[i]).collect())
        .collect()
}

pub fn random_grid<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> Grid {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_bool(density)).collect())
        .collect()
}

/// Random DAG on `n` vertices: strictly upper-triangular arcs under a random relabeling.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, density: f64) -> Grid {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                g[perm[i]][perm[j]] = true;
            }
        }
    }
    g
}

pub fn read_golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"))
}

/// 1-based (row, col) cells where two text matrices differ.
pub fn diff_cells(a: &str, b: &str) -> Vec<(usize, usize)> {
    let ga: Vec<Vec<&str>> = a.lines().map(|l| l.split(' ').collect()).collect();
    let gb: Vec<Vec<&str>> = b.lines().map(|l| l.split(' ').collect()).collect();
    let mut out = Vec::new();
    for (i, (ra, rb)) in ga.iter().zip(&gb).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}
