//! F-denominated cobweb posets and their KoDAG Hasse digraphs.
//!
//! The Hasse digraph of a cobweb poset is the natural join
//! `⊕→_k K(Φ_k → Φ_{k+1})` of complete di-bicliques between consecutive
//! levels, so `x ≤ y` holds exactly when `x = y` or `x` sits on a lower
//! level than `y`. The zeta matrix is the Boolean geometric series
//! `I ∨ A ∨ A^{©2} ∨ ...` of the Hasse matrix `A`.

use std::fmt;
use std::sync::OnceLock;

use crate::boolmat::{BoolMatrix, IntMatrix};
use crate::digraph::{GradedDigraph, Poset};
use crate::error::{Error, Result};
use crate::fseq::FSequence;
use crate::njoin::{njoin_chain, AdjacencyMatrix};
use crate::par;

/// A vertex in the global 1-based, level-major, left-to-right numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

impl Vertex {
    /// 0-based matrix index.
    pub fn index(self) -> usize {
        self.0 - 1
    }

    pub fn from_index(i: usize) -> Self {
        Vertex(i + 1)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Cobweb poset: a graded digraph whose arc blocks are all ones.
#[derive(Debug, Clone)]
pub struct CobwebPoset {
    hasse: GradedDigraph,
    zeta: OnceLock<BoolMatrix>,
}

impl PartialEq for CobwebPoset {
    fn eq(&self, other: &Self) -> bool {
        self.hasse == other.hasse
    }
}

impl Eq for CobwebPoset {}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Overflow("level size"))
}

impl CobwebPoset {
    /// Cobweb with levels `F_0, ..., F_{n-1}`.
    pub fn build(seq: &FSequence, n: usize) -> Result<Self> {
        let sizes = seq
            .level_sizes(n)?
            .into_iter()
            .map(to_usize)
            .collect::<Result<Vec<_>>>()?;
        Self::from_sizes(sizes)
    }

    pub fn from_sizes(sizes: Vec<usize>) -> Result<Self> {
        Ok(CobwebPoset {
            hasse: GradedDigraph::complete(sizes)?,
            zeta: OnceLock::new(),
        })
    }

    pub fn hasse(&self) -> &GradedDigraph {
        &self.hasse
    }

    pub fn level_sizes(&self) -> &[usize] {
        self.hasse.levels()
    }

    pub fn vertex_count(&self) -> usize {
        self.hasse.vertex_count()
    }

    /// The Hasse (cover relation) matrix `A_F`.
    pub fn hasse_matrix(&self) -> BoolMatrix {
        self.hasse.global_adjacency()
    }

    /// Adjacency matrices of the di-bicliques `K(Φ_k → Φ_{k+1})`.
    pub fn biclique_chain(&self) -> Vec<AdjacencyMatrix> {
        self.hasse
            .levels()
            .windows(2)
            .map(|w| {
                AdjacencyMatrix::embed_biadjacency(&BoolMatrix::ones(w[0], w[1]), w[0], w[1])
                    .expect("ones block has the requested shape")
            })
            .collect()
    }

    /// Hasse matrix assembled as the `⊕→` fold of the di-biclique chain.
    pub fn hasse_matrix_by_njoin(&self) -> BoolMatrix {
        let chain = self.biclique_chain();
        if chain.is_empty() {
            let n = self.vertex_count();
            return BoolMatrix::zeros(n, n);
        }
        njoin_chain(&chain).expect("consecutive levels satisfy the join condition")
    }

    /// `ζ_F = (1 - A_F)^{-1©}`, computed once and cached.
    pub fn zeta_matrix(&self) -> &BoolMatrix {
        self.zeta.get_or_init(|| {
            self.hasse_matrix()
                .closure_series(true)
                .expect("Hasse matrix is square")
        })
    }

    pub fn poset(&self) -> Poset {
        Poset::from_leq(self.zeta_matrix().clone()).expect("cobweb zeta is a partial order")
    }

    fn check(&self, v: Vertex) -> Result<usize> {
        let n = self.vertex_count();
        if v.0 == 0 || v.0 > n {
            return Err(Error::IndexOutOfRange {
                what: "vertex",
                index: v.0,
                len: n,
            });
        }
        Ok(v.index())
    }

    pub fn level_of(&self, v: Vertex) -> Result<usize> {
        let i = self.check(v)?;
        Ok(self.hasse.level_of(i).expect("checked vertex"))
    }

    /// `x ≤ y`: equal, or on a strictly lower level.
    pub fn leq(&self, x: Vertex, y: Vertex) -> Result<bool> {
        let (lx, ly) = (self.level_of(x)?, self.level_of(y)?);
        Ok(x == y || lx < ly)
    }

    /// `x ≤ y` evaluated as `x (R_i © ... © R_{j-1}) y` on the arc blocks
    /// between the levels `i` of `x` and `j` of `y`.
    pub fn leq_by_composition(&self, x: Vertex, y: Vertex) -> Result<bool> {
        let (lx, ly) = (self.level_of(x)?, self.level_of(y)?);
        if lx >= ly {
            return Ok(x == y);
        }
        let arcs = self.hasse.arcs();
        let mut product = arcs[lx].clone();
        for block in &arcs[lx + 1..ly] {
            product = product.bool_product(block)?;
        }
        let offsets = self.hasse.level_offsets();
        Ok(product.get(x.index() - offsets[lx], y.index() - offsets[ly]))
    }

    /// The two natural labelings: `L1` left-to-right and `L2` right-to-left
    /// within each level, both level by level from the minimal elements up.
    pub fn realizer(&self) -> Realizer {
        let offsets = self.hasse.level_offsets();
        let l1 = (0..self.vertex_count()).map(Vertex::from_index).collect();
        let l2 = offsets
            .windows(2)
            .flat_map(|w| (w[0]..w[1]).rev().map(Vertex::from_index))
            .collect();
        Realizer { l1, l2 }
    }

    /// Whether the realizer's two linear orders intersect to `≤`.
    pub fn verify_dim2(&self) -> bool {
        self.realizer().realizes(self.zeta_matrix())
    }

    /// Number of directed Hasse paths of length at least one from `x` to `y`.
    ///
    /// Computed as `Σ_k (e_x A^k)_y` with checked integer arithmetic,
    /// propagating the row vector block by block through the levels.
    pub fn count_paths(&self, x: Vertex, y: Vertex) -> Result<u64> {
        let (lx, ly) = (self.level_of(x)?, self.level_of(y)?);
        if lx >= ly {
            return Ok(0);
        }
        let offsets = self.hasse.level_offsets();
        let mut v = vec![0u64; self.hasse.levels()[lx]];
        v[x.index() - offsets[lx]] = 1;
        for block in &self.hasse.arcs()[lx..ly] {
            v = IntMatrix::from(block).left_mul_row(&v)?;
        }
        Ok(v[y.index() - offsets[ly]])
    }

    /// The Hasse digraph with the given arcs removed.
    pub fn delete_arcs(&self, removals: &[(Vertex, Vertex)]) -> Result<GradedDigraph> {
        let offsets = self.hasse.level_offsets();
        let mut arcs = self.hasse.arcs().to_vec();
        for &(x, y) in removals {
            let (lx, ly) = (self.level_of(x)?, self.level_of(y)?);
            let (i, j) = (x.index() - offsets[lx], y.index() - offsets[ly]);
            if ly != lx + 1 || !arcs[lx].get(i, j) {
                return Err(Error::NoSuchArc { from: x.0, to: y.0 });
            }
            arcs[lx].set(i, j, false);
        }
        GradedDigraph::new(self.hasse.levels().to_vec(), arcs)
    }
}

/// Two linear orders on the vertices, listed first to last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realizer {
    pub l1: Vec<Vertex>,
    pub l2: Vec<Vertex>,
}

impl Realizer {
    fn positions(order: &[Vertex], n: usize) -> Option<Vec<usize>> {
        if order.len() != n {
            return None;
        }
        let mut pos = vec![usize::MAX; n];
        for (p, v) in order.iter().enumerate() {
            let i = v.0.checked_sub(1).filter(|&i| i < n)?;
            if pos[i] != usize::MAX {
                return None;
            }
            pos[i] = p;
        }
        Some(pos)
    }

    /// For all `x ≠ y`: `zeta[x][y]` iff `x` precedes `y` in both orders.
    /// False when either list is not a permutation of the vertices.
    pub fn realizes(&self, zeta: &BoolMatrix) -> bool {
        let n = zeta.rows();
        let (Some(p1), Some(p2)) = (Self::positions(&self.l1, n), Self::positions(&self.l2, n))
        else {
            return false;
        };
        par::all(n, |x| {
            (0..n).all(|y| x == y || zeta.get(x, y) == (p1[x] < p1[y] && p2[x] < p2[y]))
        })
    }
}

/// The Fibonacci rabbit tree graded by generation, with level sizes
/// 1, 1, 2, 3, 5, ...
///
/// The root is juvenile. A juvenile vertex has one (mature) child; a mature
/// vertex has a mature child followed by a juvenile child. Children keep
/// their parents' left-to-right order.
pub fn fibonacci_tree(n: usize) -> Result<GradedDigraph> {
    if n == 0 {
        return Err(Error::InvalidDigraph(
            "fibonacci tree needs at least one level".into(),
        ));
    }
    // true = mature
    let mut level = vec![false];
    let mut levels = vec![1];
    let mut arcs = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let mut next = Vec::new();
        let mut edges = Vec::new();
        for (p, &mature) in level.iter().enumerate() {
            edges.push((p, next.len()));
            next.push(true);
            if mature {
                edges.push((p, next.len()));
                next.push(false);
            }
        }
        let mut block = BoolMatrix::zeros(level.len(), next.len());
        for (p, c) in edges {
            block.set(p, c, true);
        }
        arcs.push(block);
        levels.push(next.len());
        level = next;
    }
    GradedDigraph::new(levels, arcs)
}
