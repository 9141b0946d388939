//! Graded digraphs, the posets they generate, and DOT export.
//!
//! Vertices are numbered globally, level-major and left-to-right within a
//! level. Matrix indices are 0-based; printed vertex labels are 1-based.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};

/// A digraph whose vertices are partitioned into levels `Φ_0, ..., Φ_n`,
/// with arcs only from level `k` to level `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DigraphJson", into = "DigraphJson")]
pub struct GradedDigraph {
    levels: Vec<usize>,
    arcs: Vec<BoolMatrix>,
}

impl GradedDigraph {
    /// `arcs[k]` is the `levels[k] x levels[k+1]` block of arcs from level `k`.
    pub fn new(levels: Vec<usize>, arcs: Vec<BoolMatrix>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidDigraph(
                "at least one level is required".into(),
            ));
        }
        if let Some(k) = levels.iter().position(|&s| s == 0) {
            return Err(Error::InvalidDigraph(format!("level {k} is empty")));
        }
        if arcs.len() != levels.len() - 1 {
            return Err(Error::InvalidDigraph(format!(
                "{} levels need {} arc blocks, got {}",
                levels.len(),
                levels.len() - 1,
                arcs.len()
            )));
        }
        for (k, block) in arcs.iter().enumerate() {
            if block.shape() != (levels[k], levels[k + 1]) {
                return Err(Error::InvalidDigraph(format!(
                    "arc block {k} is {}x{}, expected {}x{}",
                    block.rows(),
                    block.cols(),
                    levels[k],
                    levels[k + 1]
                )));
            }
        }
        Ok(GradedDigraph { levels, arcs })
    }

    /// Graded digraph with all-ones arc blocks (a chain of di-bicliques).
    pub fn complete(levels: Vec<usize>) -> Result<Self> {
        let arcs = levels
            .windows(2)
            .map(|w| BoolMatrix::ones(w[0], w[1]))
            .collect();
        Self::new(levels, arcs)
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn arcs(&self) -> &[BoolMatrix] {
        &self.arcs
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().sum()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(BoolMatrix::count_ones).sum()
    }

    /// Global index of the first vertex of each level, plus the total at the end.
    pub fn level_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.levels.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &s in &self.levels {
            acc += s;
            offsets.push(acc);
        }
        offsets
    }

    /// Level containing the 0-based global vertex `v`.
    pub fn level_of(&self, v: usize) -> Option<usize> {
        let mut acc = 0;
        for (k, &s) in self.levels.iter().enumerate() {
            acc += s;
            if v < acc {
                return Some(k);
            }
        }
        None
    }

    /// The `N x N` adjacency matrix with each arc block on the level super-diagonal.
    pub fn global_adjacency(&self) -> BoolMatrix {
        let offsets = self.level_offsets();
        let n = self.vertex_count();
        let mut a = BoolMatrix::zeros(n, n);
        for (k, block) in self.arcs.iter().enumerate() {
            a.or_block(offsets[k], offsets[k + 1], block);
        }
        a
    }

    /// The digraph's order ideal: reflexive-transitive closure of its arcs.
    pub fn transitive_closure(&self) -> Poset {
        let leq = self
            .global_adjacency()
            .closure_series(true)
            .expect("global adjacency is square");
        Poset { leq }
    }

    /// Natural join of two graded digraphs glued along `self`'s top level
    /// and `other`'s bottom level, which must have the same size.
    pub fn njoin(&self, other: &GradedDigraph) -> Result<GradedDigraph> {
        let top = *self.levels.last().expect("nonempty");
        let bottom = other.levels[0];
        if top != bottom {
            return Err(Error::JoinCondition {
                left: format!("top level of size {top}"),
                right: format!("bottom level of size {bottom}"),
            });
        }
        let mut levels = self.levels.clone();
        levels.extend_from_slice(&other.levels[1..]);
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().cloned());
        GradedDigraph::new(levels, arcs)
    }

    /// DOT rendering. With `rank_by_level`, each level is a `rank=same`
    /// subgraph so the drawing shows one row per level.
    pub fn to_dot(&self, rank_by_level: bool) -> String {
        let offsets = self.level_offsets();
        let mut out = String::from("digraph G {\n    rankdir=BT;\n    node [shape=circle];\n");
        for (k, &s) in self.levels.iter().enumerate() {
            let ids: Vec<String> = (offsets[k]..offsets[k] + s)
                .map(|v| (v + 1).to_string())
                .collect();
            if rank_by_level {
                let _ = writeln!(out, "    {{ rank=same; {}; }}", ids.join("; "));
            } else {
                for id in ids {
                    let _ = writeln!(out, "    {id};");
                }
            }
        }
        for (k, block) in self.arcs.iter().enumerate() {
            for i in 0..block.rows() {
                for j in block.row_ones(i) {
                    let _ = writeln!(
                        out,
                        "    {} -> {};",
                        offsets[k] + i + 1,
                        offsets[k + 1] + j + 1
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("digraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct DigraphJson {
    levels: Vec<usize>,
    arcs: Vec<Vec<Vec<u8>>>,
}

impl TryFrom<DigraphJson> for GradedDigraph {
    type Error = Error;

    fn try_from(j: DigraphJson) -> Result<Self> {
        if j.arcs.len() + 1 != j.levels.len() {
            return Err(Error::InvalidDigraph(format!(
                "{} levels need {} arc blocks, got {}",
                j.levels.len(),
                j.levels.len().saturating_sub(1),
                j.arcs.len()
            )));
        }
        let arcs = j
            .arcs
            .iter()
            .zip(j.levels.iter().skip(1))
            .map(|(rows, &cols)| BoolMatrix::from_rows_with_cols(rows, cols))
            .collect::<Result<Vec<_>>>()?;
        GradedDigraph::new(j.levels, arcs)
    }
}

impl From<GradedDigraph> for DigraphJson {
    fn from(d: GradedDigraph) -> Self {
        DigraphJson {
            arcs: d.arcs.iter().map(BoolMatrix::to_rows).collect(),
            levels: d.levels,
        }
    }
}

/// A finite poset given by its zeta (reflexive order) matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    leq: BoolMatrix,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity of `leq`.
    pub fn from_leq(leq: BoolMatrix) -> Result<Self> {
        if !leq.is_square() {
            return Err(Error::NotSquare {
                op: "poset",
                rows: leq.rows(),
                cols: leq.cols(),
            });
        }
        let n = leq.rows();
        if let Some(i) = (0..n).find(|&i| !leq.get(i, i)) {
            return Err(Error::InvalidDigraph(format!(
                "not reflexive at vertex {}",
                i + 1
            )));
        }
        let sym = leq.bool_and(&leq.transpose())?;
        if !sym.is_subset_of(&BoolMatrix::identity(n))? {
            return Err(Error::InvalidDigraph("not antisymmetric".into()));
        }
        if !leq.bool_product(&leq)?.is_subset_of(&leq)? {
            return Err(Error::InvalidDigraph("not transitive".into()));
        }
        Ok(Poset { leq })
    }

    pub fn size(&self) -> usize {
        self.leq.rows()
    }

    /// The zeta matrix.
    pub fn leq_matrix(&self) -> &BoolMatrix {
        &self.leq
    }

    pub fn into_leq_matrix(self) -> BoolMatrix {
        self.leq
    }

    /// 0-based comparison.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y)
    }

    /// The strict order `<` (zeta without its diagonal).
    pub fn strict(&self) -> BoolMatrix {
        self.leq
            .and_not(&BoolMatrix::identity(self.size()))
            .expect("same shape")
    }
}

fn require_square(a: &BoolMatrix, op: &'static str) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op,
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(())
}

/// Transitive (non-reflexive) closure, failing if any vertex reaches itself.
fn acyclic_closure(a: &BoolMatrix, op: &'static str) -> Result<BoolMatrix> {
    require_square(a, op)?;
    let plus = a.closure_series(false)?;
    if let Some(i) = (0..plus.rows()).find(|&i| plus.get(i, i)) {
        return Err(Error::Cyclic(i + 1));
    }
    Ok(plus)
}

/// Poset generated by a raw adjacency matrix; errors on cycles.
pub fn transitive_closure(a: &BoolMatrix) -> Result<Poset> {
    let plus = acyclic_closure(a, "transitive_closure")?;
    let leq = plus.bool_or(&BoolMatrix::identity(a.rows()))?;
    Ok(Poset { leq })
}

/// Removes every arc `(x, y)` for which a path of length at least two
/// from `x` to `y` exists.
pub fn transitive_reduction(a: &BoolMatrix) -> Result<BoolMatrix> {
    let plus = acyclic_closure(a, "transitive_reduction")?;
    let long_paths = a.bool_product(&plus)?;
    a.and_not(&long_paths)
}

pub fn is_transitive_irreducible(a: &BoolMatrix) -> Result<bool> {
    Ok(transitive_reduction(a)? == *a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> BoolMatrix {
        BoolMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn global_adjacency_examples() {
        let d = GradedDigraph::complete(vec![1, 2]).unwrap();
        assert_eq!(
            d.global_adjacency(),
            m(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]])
        );

        let d = GradedDigraph::new(vec![2, 2], vec![BoolMatrix::identity(2)]).unwrap();
        let a = d.global_adjacency();
        assert_eq!(a.submatrix(0, 2, 2, 2), BoolMatrix::identity(2));
        assert_eq!(a.count_ones(), 2);

        let d = GradedDigraph::complete(vec![1, 2, 3]).unwrap();
        let a = d.global_adjacency();
        assert_eq!(a.submatrix(0, 1, 1, 2), BoolMatrix::ones(1, 2));
        assert_eq!(a.submatrix(1, 3, 2, 3), BoolMatrix::ones(2, 3));
        assert_eq!(a.count_ones(), 8);
        assert!(a.is_strictly_upper_triangular());
    }

    #[test]
    fn rejects_malformed() {
        assert!(GradedDigraph::new(vec![], vec![]).is_err());
        assert!(GradedDigraph::new(vec![1, 0], vec![BoolMatrix::zeros(1, 0)]).is_err());
        assert!(GradedDigraph::new(vec![1, 2], vec![]).is_err());
        assert!(GradedDigraph::new(vec![1, 2], vec![BoolMatrix::ones(2, 1)]).is_err());
    }

    #[test]
    fn chain_closure() {
        let chain = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let p = transitive_closure(&chain).unwrap();
        assert_eq!(*p.leq_matrix(), m(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]));
        assert!(Poset::from_leq(p.leq_matrix().clone()).is_ok());
    }

    #[test]
    fn cyclic_input_rejected() {
        let cyc = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(transitive_closure(&cyc), Err(Error::Cyclic(1)));
        assert_eq!(transitive_reduction(&cyc), Err(Error::Cyclic(1)));
        assert_eq!(transitive_closure(&m(&[&[1]])), Err(Error::Cyclic(1)));
    }

    #[test]
    fn reduction_examples() {
        let tri = m(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let chain = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(transitive_reduction(&tri).unwrap(), chain);
        assert_eq!(transitive_reduction(&chain).unwrap(), chain);
        assert!(!is_transitive_irreducible(&tri).unwrap());
        assert!(is_transitive_irreducible(&BoolMatrix::zeros(0, 0)).unwrap());
        assert!(is_transitive_irreducible(&BoolMatrix::zeros(4, 4)).unwrap());
    }

    #[test]
    fn poset_validation() {
        assert!(Poset::from_leq(m(&[&[1, 1], &[1, 1]])).is_err());
        assert!(Poset::from_leq(m(&[&[0, 1], &[0, 1]])).is_err());
        assert!(Poset::from_leq(m(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]])).is_err());
    }

    #[test]
    fn dot_output() {
        let d = GradedDigraph::complete(vec![1, 2]).unwrap();
        let dot = d.to_dot(true);
        assert!(dot.starts_with("digraph G {"));
        assert!(dot.contains("{ rank=same; 2; 3; }"));
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("1 -> 2;") && dot.contains("1 -> 3;"));

        let single = GradedDigraph::complete(vec![1]).unwrap();
        let dot = single.to_dot(false);
        assert_eq!(dot.matches("->").count(), 0);
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn json_round_trip() {
        let d = GradedDigraph::new(vec![1, 2, 1], vec![m(&[&[1, 0]]), m(&[&[1], &[1]])]).unwrap();
        let text = d.to_json();
        assert_eq!(text, r#"{"levels":[1,2,1],"arcs":[[[1,0]],[[1],[1]]]}"#);
        assert_eq!(GradedDigraph::from_json(&text).unwrap(), d);
        assert!(GradedDigraph::from_json(r#"{"levels":[1,2],"arcs":[[[1]]]}"#).is_err());
        assert!(GradedDigraph::from_json(r#"{"levels":[1,2],"arcs":[]}"#).is_err());
    }

    #[test]
    fn graded_njoin() {
        let a = GradedDigraph::complete(vec![1, 2]).unwrap();
        let b = GradedDigraph::complete(vec![2, 3]).unwrap();
        assert_eq!(
            a.njoin(&b).unwrap(),
            GradedDigraph::complete(vec![1, 2, 3]).unwrap()
        );
        assert!(b.njoin(&a).is_err());
    }
}
