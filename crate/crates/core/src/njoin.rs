//! The natural-join operator `⊕→` and the reduced composition `©→`.
//!
//! A binary relation `R ⊆ X × Y` is identified with its bipartite digraph
//! and with the square adjacency matrix
//!
//! ```text
//! A[R] = | O(k×k)  B(k×m) |
//!        | O(m×k)  O(m×m) |
//! ```
//!
//! where `B` is the biadjacency matrix. Two such matrices of shapes `(k, m)`
//! and `(m, s)` join into a `(k+m+s)`-square matrix that keeps a single copy
//! of the shared middle index block. On relations the same operator glues a
//! chain `R_0, R_1, ...` with `dom(R_{k+1}) = ran(R_k)` into an n-ary relation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolmat::BoolMatrix;
use crate::digraph::GradedDigraph;
use crate::error::{Error, Result};

/// Square adjacency matrix of a bipartite digraph with domain size `k`
/// and codomain size `m`; only the top-right `k × m` block may be nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    matrix: BoolMatrix,
    dom: usize,
    cod: usize,
}

impl AdjacencyMatrix {
    /// Places the `k × m` biadjacency matrix in the top-right block.
    pub fn embed_biadjacency(b: &BoolMatrix, k: usize, m: usize) -> Result<Self> {
        if b.shape() != (k, m) {
            return Err(Error::DimensionMismatch {
                op: "embed_biadjacency",
                left_rows: b.rows(),
                left_cols: b.cols(),
                right_rows: k,
                right_cols: m,
            });
        }
        let mut matrix = BoolMatrix::zeros(k + m, k + m);
        matrix.or_block(0, k, b);
        Ok(AdjacencyMatrix {
            matrix,
            dom: k,
            cod: m,
        })
    }

    /// Wraps a full `(k+m)`-square matrix, checking the block form.
    pub fn from_matrix(matrix: BoolMatrix, k: usize, m: usize) -> Result<Self> {
        if matrix.shape() != (k + m, k + m) {
            return Err(Error::DimensionMismatch {
                op: "adjacency_matrix",
                left_rows: matrix.rows(),
                left_cols: matrix.cols(),
                right_rows: k + m,
                right_cols: k + m,
            });
        }
        for i in 0..k + m {
            if let Some(j) = matrix.row_ones(i).find(|&j| i >= k || j < k) {
                return Err(Error::InvalidDigraph(format!(
                    "entry ({}, {}) lies outside the {k}x{m} biadjacency block",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(AdjacencyMatrix {
            matrix,
            dom: k,
            cod: m,
        })
    }

    pub fn matrix(&self) -> &BoolMatrix {
        &self.matrix
    }

    /// `(k, m)`: domain and codomain sizes.
    pub fn shape(&self) -> (usize, usize) {
        (self.dom, self.cod)
    }

    /// The `k × m` top-right block.
    pub fn biadjacency(&self) -> BoolMatrix {
        self.matrix.submatrix(0, self.dom, self.dom, self.cod)
    }
}

/// Natural-join condition: `a1` has shape `(k, m)` and `a2` has shape `(m, s)`.
pub fn njoin_condition(a1: &AdjacencyMatrix, a2: &AdjacencyMatrix) -> bool {
    a1.cod == a2.dom
}

fn join_condition_error(a1: &AdjacencyMatrix, a2: &AdjacencyMatrix) -> Error {
    Error::JoinCondition {
        left: format!("shape ({}, {})", a1.dom, a1.cod),
        right: format!("shape ({}, {})", a2.dom, a2.cod),
    }
}

/// Joins two square matrices along a shared index block: the trailing
/// `shared` indices of `left` are identified with the leading `shared`
/// indices of `right`. The result has size `|left| + |right| - shared`.
///
/// The overlap is ORed, which is exact whenever `left` has no arcs out of
/// its trailing block and `right` has no arcs into its leading block.
pub fn njoin_blocks(left: &BoolMatrix, right: &BoolMatrix, shared: usize) -> Result<BoolMatrix> {
    for (m, op) in [(left, "njoin_blocks"), (right, "njoin_blocks")] {
        if !m.is_square() {
            return Err(Error::NotSquare {
                op,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    if shared > left.rows() || shared > right.rows() {
        return Err(Error::JoinCondition {
            left: format!("{} indices", left.rows()),
            right: format!("{} indices sharing {shared}", right.rows()),
        });
    }
    let offset = left.rows() - shared;
    let n = offset + right.rows();
    let mut out = BoolMatrix::zeros(n, n);
    out.or_block(0, 0, left);
    out.or_block(offset, offset, right);
    Ok(out)
}

/// `A1 ⊕→ A2`: the `(k+m+s)`-square matrix holding `B1` at rows `1..k`,
/// columns `k+1..k+m` and `B2` at rows `k+1..k+m`, columns `k+m+1..k+m+s`.
pub fn njoin_adjacency(a1: &AdjacencyMatrix, a2: &AdjacencyMatrix) -> Result<BoolMatrix> {
    if !njoin_condition(a1, a2) {
        return Err(join_condition_error(a1, a2));
    }
    njoin_blocks(&a1.matrix, &a2.matrix, a1.cod)
}

/// Left fold of `⊕→` over a chain of adjacency matrices.
pub fn njoin_chain(chain: &[AdjacencyMatrix]) -> Result<BoolMatrix> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::InvalidRelation("empty adjacency chain".into()))?;
    let mut acc = first.matrix.clone();
    let mut prev = first;
    for a in rest {
        if !njoin_condition(prev, a) {
            return Err(join_condition_error(prev, a));
        }
        acc = njoin_blocks(&acc, &a.matrix, a.dom)?;
        prev = a;
    }
    Ok(acc)
}

/// Reduced (biadjacency) matrix of a joined matrix whose first index block
/// has `head` vertices and last index block `tail` vertices: all rows but
/// the last block, all columns but the first.
pub fn reduced_biadjacency(matrix: &BoolMatrix, head: usize, tail: usize) -> BoolMatrix {
    let n = matrix.rows();
    matrix.submatrix(0, head, n - tail, n - head)
}

/// `A1 ©→ A2`: shape `(k, s)` with biadjacency `B1 © B2`; the middle
/// index set is projected out.
pub fn reduced_composition(a1: &AdjacencyMatrix, a2: &AdjacencyMatrix) -> Result<AdjacencyMatrix> {
    if !njoin_condition(a1, a2) {
        return Err(join_condition_error(a1, a2));
    }
    let b = a1.biadjacency().bool_product(&a2.biadjacency())?;
    AdjacencyMatrix::embed_biadjacency(&b, a1.dom, a2.cod)
}

/// Ordered set of distinct labels; the order fixes matrix row/column order.
#[derive(Clone)]
pub struct FiniteSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl FiniteSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidRelation(format!("duplicate label {l:?}")));
            }
        }
        Ok(FiniteSet { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    fn require(&self, label: &str, role: &str) -> Result<usize> {
        self.position(label).ok_or_else(|| {
            Error::InvalidRelation(format!("label {label:?} is not in the {role} set {self}"))
        })
    }
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for FiniteSet {}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

/// `R ⊆ dom × ran`, stored as index pairs into the two sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationJson", into = "RelationJson")]
pub struct BinaryRelation {
    dom: FiniteSet,
    ran: FiniteSet,
    pairs: BTreeSet<(usize, usize)>,
}

impl BinaryRelation {
    pub fn new<'a, I>(dom: FiniteSet, ran: FiniteSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let pairs = pairs
            .into_iter()
            .map(|(x, y)| Ok((dom.require(x, "domain")?, ran.require(y, "range")?)))
            .collect::<Result<_>>()?;
        Ok(BinaryRelation { dom, ran, pairs })
    }

    /// The universal relation `dom × ran` (a di-biclique).
    pub fn complete(dom: FiniteSet, ran: FiniteSet) -> Self {
        let pairs = (0..dom.len())
            .flat_map(|i| (0..ran.len()).map(move |j| (i, j)))
            .collect();
        BinaryRelation { dom, ran, pairs }
    }

    pub fn identity(set: FiniteSet) -> Self {
        let pairs = (0..set.len()).map(|i| (i, i)).collect();
        BinaryRelation {
            dom: set.clone(),
            ran: set,
            pairs,
        }
    }

    pub fn from_biadjacency(dom: FiniteSet, ran: FiniteSet, b: &BoolMatrix) -> Result<Self> {
        if b.shape() != (dom.len(), ran.len()) {
            return Err(Error::DimensionMismatch {
                op: "from_biadjacency",
                left_rows: b.rows(),
                left_cols: b.cols(),
                right_rows: dom.len(),
                right_cols: ran.len(),
            });
        }
        let pairs = (0..b.rows())
            .flat_map(|i| b.row_ones(i).map(move |j| (i, j)))
            .collect();
        Ok(BinaryRelation { dom, ran, pairs })
    }

    pub fn dom(&self) -> &FiniteSet {
        &self.dom
    }

    pub fn ran(&self) -> &FiniteSet {
        &self.ran
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: &str, y: &str) -> bool {
        match (self.dom.position(x), self.ran.position(y)) {
            (Some(i), Some(j)) => self.pairs.contains(&(i, j)),
            _ => false,
        }
    }

    /// Pairs as labels, in (dom order, ran order).
    pub fn pairs(&self) -> Vec<(&str, &str)> {
        self.pairs
            .iter()
            .map(|&(i, j)| (self.dom.label(i), self.ran.label(j)))
            .collect()
    }

    pub fn biadjacency(&self) -> BoolMatrix {
        let mut b = BoolMatrix::zeros(self.dom.len(), self.ran.len());
        for &(i, j) in &self.pairs {
            b.set(i, j, true);
        }
        b
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        AdjacencyMatrix::embed_biadjacency(&self.biadjacency(), self.dom.len(), self.ran.len())
            .expect("biadjacency has the relation's shape")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("relation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    dom: Vec<String>,
    ran: Vec<String>,
    pairs: Vec<(String, String)>,
}

impl TryFrom<RelationJson> for BinaryRelation {
    type Error = Error;

    fn try_from(j: RelationJson) -> Result<Self> {
        BinaryRelation::new(
            FiniteSet::new(j.dom)?,
            FiniteSet::new(j.ran)?,
            j.pairs.iter().map(|(x, y)| (x.as_str(), y.as_str())),
        )
    }
}

impl From<BinaryRelation> for RelationJson {
    fn from(r: BinaryRelation) -> Self {
        RelationJson {
            pairs: r
                .pairs()
                .into_iter()
                .map(|(x, y)| (x.to_owned(), y.to_owned()))
                .collect(),
            dom: r.dom.labels,
            ran: r.ran.labels,
        }
    }
}

fn mismatch(left: &FiniteSet, right: &FiniteSet) -> Error {
    Error::JoinCondition {
        left: left.to_string(),
        right: right.to_string(),
    }
}

/// `R © S = {(x, z) : ∃y (x, y) ∈ R, (y, z) ∈ S}`; requires `ran(R) = dom(S)`.
pub fn compose_relations(r: &BinaryRelation, s: &BinaryRelation) -> Result<BinaryRelation> {
    if r.ran != s.dom {
        return Err(mismatch(&r.ran, &s.dom));
    }
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); s.dom.len()];
    for &(y, z) in &s.pairs {
        succ[y].push(z);
    }
    let pairs = r
        .pairs
        .iter()
        .flat_map(|&(x, y)| succ[y].iter().map(move |&z| (x, z)))
        .collect();
    Ok(BinaryRelation {
        dom: r.dom.clone(),
        ran: s.ran.clone(),
        pairs,
    })
}

/// Digraphs natural join of two bipartite digraphs `G1 ⊕→ G2`, as a
/// three-level graded digraph. The order of the operands matters.
pub fn njoin_digraphs(g1: &BinaryRelation, g2: &BinaryRelation) -> Result<GradedDigraph> {
    if g1.ran != g2.dom {
        return Err(mismatch(&g1.ran, &g2.dom));
    }
    GradedDigraph::new(
        vec![g1.dom.len(), g1.ran.len(), g2.ran.len()],
        vec![g1.biadjacency(), g2.biadjacency()],
    )
}

/// A nonempty sequence of relations with `dom(R_{k+1}) = ran(R_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationChain {
    links: Vec<BinaryRelation>,
}

impl RelationChain {
    pub fn new(links: Vec<BinaryRelation>) -> Result<Self> {
        if links.is_empty() {
            return Err(Error::InvalidRelation("relation chain is empty".into()));
        }
        for (k, w) in links.windows(2).enumerate() {
            if w[0].ran != w[1].dom {
                return Err(Error::ChainBroken {
                    index: k + 1,
                    ran: w[0].ran.to_string(),
                    dom: w[1].dom.to_string(),
                });
            }
        }
        Ok(RelationChain { links })
    }

    pub fn links(&self) -> &[BinaryRelation] {
        &self.links
    }

    pub fn into_links(self) -> Vec<BinaryRelation> {
        self.links
    }

    /// The graded digraph `⊕→_k D(R_k)` of the whole chain.
    pub fn to_digraph(&self) -> GradedDigraph {
        let mut levels = vec![self.links[0].dom.len()];
        levels.extend(self.links.iter().map(|r| r.ran.len()));
        GradedDigraph::new(
            levels,
            self.links.iter().map(BinaryRelation::biadjacency).collect(),
        )
        .expect("chain condition guarantees conformable blocks")
    }
}

/// `T ⊆ C_0 × C_1 × ... × C_{n-1}` with tuples stored as label indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NaryJson", into = "NaryJson")]
pub struct NaryRelation {
    columns: Vec<FiniteSet>,
    tuples: BTreeSet<Vec<usize>>,
}

impl NaryRelation {
    pub fn new<I, T, S>(columns: Vec<FiniteSet>, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        if columns.is_empty() {
            return Err(Error::InvalidRelation(
                "n-ary relation needs at least one column".into(),
            ));
        }
        let tuples = tuples
            .into_iter()
            .map(|t| {
                let t: Vec<S> = t.into_iter().collect();
                if t.len() != columns.len() {
                    return Err(Error::InvalidRelation(format!(
                        "tuple has {} components, arity is {}",
                        t.len(),
                        columns.len()
                    )));
                }
                t.iter()
                    .zip(&columns)
                    .map(|(v, c)| c.require(v.as_ref(), "column"))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(NaryRelation { columns, tuples })
    }

    pub fn arity(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[FiniteSet] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Tuples as labels, ordered by column-set order.
    pub fn tuples(&self) -> Vec<Vec<&str>> {
        self.tuples
            .iter()
            .map(|t| {
                t.iter()
                    .zip(&self.columns)
                    .map(|(&i, c)| c.label(i))
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, tuple: &[&str]) -> bool {
        if tuple.len() != self.arity() {
            return false;
        }
        let idx: Option<Vec<usize>> = tuple
            .iter()
            .zip(&self.columns)
            .map(|(v, c)| c.position(v))
            .collect();
        idx.is_some_and(|t| self.tuples.contains(&t))
    }

    /// Extends every tuple whose last component is `y` by each `z` with `(y, z) ∈ r`.
    pub fn njoin(&self, r: &BinaryRelation) -> Result<NaryRelation> {
        let last = self.columns.last().expect("arity >= 1");
        if *last != r.dom {
            return Err(mismatch(last, &r.dom));
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); r.dom.len()];
        for &(y, z) in &r.pairs {
            succ[y].push(z);
        }
        let tuples = self
            .tuples
            .iter()
            .flat_map(|t| {
                let y = *t.last().expect("arity >= 1");
                succ[y].iter().map(move |&z| {
                    let mut ext = t.clone();
                    ext.push(z);
                    ext
                })
            })
            .collect();
        let mut columns = self.columns.clone();
        columns.push(r.ran.clone());
        Ok(NaryRelation { columns, tuples })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("relation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

impl From<&BinaryRelation> for NaryRelation {
    fn from(r: &BinaryRelation) -> Self {
        NaryRelation {
            columns: vec![r.dom.clone(), r.ran.clone()],
            tuples: r.pairs.iter().map(|&(x, y)| vec![x, y]).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NaryJson {
    columns: Vec<Vec<String>>,
    tuples: Vec<Vec<String>>,
}

impl TryFrom<NaryJson> for NaryRelation {
    type Error = Error;

    fn try_from(j: NaryJson) -> Result<Self> {
        let columns = j
            .columns
            .into_iter()
            .map(FiniteSet::new)
            .collect::<Result<Vec<_>>>()?;
        NaryRelation::new(columns, j.tuples)
    }
}

impl From<NaryRelation> for NaryJson {
    fn from(t: NaryRelation) -> Self {
        NaryJson {
            tuples: t
                .tuples()
                .into_iter()
                .map(|v| v.into_iter().map(str::to_owned).collect())
                .collect(),
            columns: t.columns.into_iter().map(|c| c.labels).collect(),
        }
    }
}

/// `R_0 ⊕→ R_1 ⊕→ ... ⊕→ R_n`: all `(v_0, ..., v_{n+1})` with
/// `(v_k, v_{k+1}) ∈ R_k` for every `k`.
pub fn njoin_relations(chain: &RelationChain) -> NaryRelation {
    let (first, rest) = chain.links.split_first().expect("chain is nonempty");
    rest.iter().fold(NaryRelation::from(first), |acc, r| {
        acc.njoin(r)
            .expect("chain condition checked on construction")
    })
}

/// Adjacent-column projections `E_k = {(v_k, v_{k+1})}` of an n-ary relation.
pub fn project_chain(t: &NaryRelation) -> Result<RelationChain> {
    if t.arity() < 2 {
        return Err(Error::InvalidRelation(format!(
            "projection needs arity >= 2, got {}",
            t.arity()
        )));
    }
    let links = (0..t.arity() - 1)
        .map(|k| BinaryRelation {
            dom: t.columns[k].clone(),
            ran: t.columns[k + 1].clone(),
            pairs: t.tuples.iter().map(|v| (v[k], v[k + 1])).collect(),
        })
        .collect();
    RelationChain::new(links)
}

/// Whether `T` equals the natural join of its adjacent-column projections.
/// Relations of arity below two are trivially decomposable.
pub fn is_join_decomposable(t: &NaryRelation) -> bool {
    match project_chain(t) {
        Ok(chain) => njoin_relations(&chain) == *t,
        Err(_) => true,
    }
}
