//! Acceptance criteria. Each test prints one `[ACn] PASS|FAIL` line; run with
//! `cargo test -p cobweb-core --test acceptance -- --nocapture --test-threads=1`
//! to see them all.

mod common;

use std::time::{Duration, Instant};

use cobweb_core::cobweb::fibonacci_tree;
use cobweb_core::digraph::transitive_reduction;
use cobweb_core::ferrers::chain_is_ferrers;
use cobweb_core::njoin::{njoin_adjacency, njoin_relations, project_chain, reduced_biadjacency};
use cobweb_core::{
    AdjacencyMatrix, BinaryRelation, BoolMatrix, CobwebPoset, FSequence, FiniteSet, NaryRelation,
    RelationChain, Vertex,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: &str, what: &str, passed: bool, detail: String, elapsed: Duration, limit: Duration) {
    let in_time = elapsed < limit;
    let verdict = if passed && in_time { "PASS" } else { "FAIL" };
    println!("[{id}] {verdict} {what}: {detail} ({elapsed:.2?} / limit {limit:.0?})");
    assert!(passed, "{id} failed: {detail}");
    assert!(
        in_time,
        "{id} exceeded its time limit: {elapsed:?} >= {limit:?}"
    );
}

fn builtin_cobwebs(max_levels: usize) -> Vec<CobwebPoset> {
    FSequence::builtins()
        .iter()
        .flat_map(|s| (1..=max_levels).map(move |n| CobwebPoset::build(s, n).unwrap()))
        .collect()
}

fn golden_zeta(id: &str, sizes: Vec<u64>, fixture: &str) {
    let start = Instant::now();
    let seq = FSequence::explicit(sizes.clone()).unwrap();
    let p = CobwebPoset::build(&seq, sizes.len()).unwrap();
    let text = p.zeta_matrix().to_text();
    let elapsed = start.elapsed();
    let reference = read_golden(fixture);
    let diffs = diff_cells(&text, &reference);
    let passed = text == reference;
    let detail = if passed {
        "byte-identical to the reference grid".to_string()
    } else {
        format!(
            "{} cell(s) differ from the reference grid at (row,col) {:?}",
            diffs.len(),
            diffs
        )
    };
    report(
        id,
        &format!("zeta of explicit {sizes:?} vs {fixture}"),
        passed,
        detail,
        elapsed,
        Duration::from_secs(1),
    );
}

#[test]
fn ac01_golden_zeta_naturals() {
    golden_zeta("AC1", vec![1, 2, 3, 4, 5, 1], "zeta_n_reference.txt");
}

#[test]
fn ac02_golden_zeta_fibonacci() {
    golden_zeta("AC2", vec![1, 1, 1, 2, 3, 5, 3], "zeta_f_reference.txt");
}

#[test]
fn ac03_boolean_square_of_hasse() {
    let start = Instant::now();
    let sizes = vec![1, 2, 3, 4, 5, 6, 1];
    let p = CobwebPoset::from_sizes(sizes.clone()).unwrap();
    let sq = p.hasse_matrix().bool_power(2).unwrap();
    let elapsed = start.elapsed();

    let offsets = p.hasse().level_offsets();
    let n = p.vertex_count();
    let mut expected = BoolMatrix::zeros(n, n);
    for k in 0..sizes.len().saturating_sub(2) {
        expected.or_block(
            offsets[k],
            offsets[k + 2],
            &BoolMatrix::ones(sizes[k], sizes[k + 2]),
        );
    }
    let passed = sq == expected;
    report(
        "AC3",
        "A_N^(c)2 has ones exactly in the I(F_k x F_{k+2}) blocks",
        passed,
        format!(
            "{} ones, expected {}",
            sq.count_ones(),
            expected.count_ones()
        ),
        elapsed,
        Duration::from_secs(1),
    );
}

#[test]
fn ac04_join_biadjacency_is_direct_sum() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b54);
    let mut failures = 0;
    for _ in 0..1000 {
        let (k, m, s) = (
            rng.random_range(1..=6),
            rng.random_range(1..=6),
            rng.random_range(1..=6),
        );
        let density = rng.random_range(0.0..=1.0);
        let b1 = from_grid(&random_grid(&mut rng, k, m, density));
        let b2 = from_grid(&random_grid(&mut rng, m, s, density));
        let a1 = AdjacencyMatrix::embed_biadjacency(&b1, k, m).unwrap();
        let a2 = AdjacencyMatrix::embed_biadjacency(&b2, m, s).unwrap();
        let joined = njoin_adjacency(&a1, &a2).unwrap();
        if reduced_biadjacency(&joined, k, s) != BoolMatrix::direct_sum(&[b1, b2]) {
            failures += 1;
        }
    }
    report(
        "AC4",
        "B(A1 njoin A2) = B(A1) (+) B(A2) on 1000 random pairs",
        failures == 0,
        format!("{failures} mismatches"),
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn ac05_ternary_relation_example() {
    let start = Instant::now();
    let x = FiniteSet::new(["x1", "x2", "x3"]).unwrap();
    let z = FiniteSet::new(["z1", "z2", "z3", "z4"]).unwrap();
    let y = FiniteSet::new(["y1", "y2"]).unwrap();
    let t = NaryRelation::new(
        vec![x.clone(), z.clone(), y.clone()],
        [
            ["x1", "z1", "y1"],
            ["x1", "z2", "y1"],
            ["x1", "z4", "y2"],
            ["x2", "z3", "y2"],
            ["x3", "z3", "y2"],
        ],
    )
    .unwrap();
    let e1 = BinaryRelation::new(
        x.clone(),
        z.clone(),
        [
            ("x1", "z1"),
            ("x1", "z2"),
            ("x1", "z4"),
            ("x2", "z3"),
            ("x3", "z3"),
        ],
    )
    .unwrap();
    let e2_listed = BinaryRelation::new(
        z.clone(),
        y.clone(),
        [("z1", "y1"), ("z2", "y1"), ("z3", "y1"), ("z4", "y2")],
    )
    .unwrap();
    let e2_corrected = BinaryRelation::new(
        z,
        y,
        [("z1", "y1"), ("z2", "y1"), ("z3", "y2"), ("z4", "y2")],
    )
    .unwrap();

    let projected = project_chain(&t).unwrap().into_links();
    let projects_e1 = projected[0] == e1;
    let projects_e2 = projected[1] == e2_corrected;

    let joined = njoin_relations(&RelationChain::new(vec![e1.clone(), e2_corrected]).unwrap());
    let reproduces = joined == t;

    let listed = njoin_relations(&RelationChain::new(vec![e1, e2_listed]).unwrap());
    let missing: Vec<Vec<&str>> = t
        .tuples()
        .into_iter()
        .filter(|v| !listed.contains(v))
        .collect();
    let extra: Vec<Vec<&str>> = listed
        .tuples()
        .into_iter()
        .filter(|v| !t.contains(v))
        .collect();
    let discrepancy_exact = missing == vec![vec!["x2", "z3", "y2"], vec!["x3", "z3", "y2"]]
        && extra == vec![vec!["x2", "z3", "y1"], vec!["x3", "z3", "y1"]];

    report(
        "AC5",
        "ternary relation T = E1 njoin E2",
        projects_e1 && projects_e2 && reproduces && discrepancy_exact,
        format!(
            "projection gives E1: {projects_e1}, corrected E2: {projects_e2}; corrected join reproduces T: {reproduces}; \
             listed E2 misses {missing:?} and adds {extra:?}"
        ),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn ac06_ferrers_positive_and_negative() {
    let start = Instant::now();
    let failing: Vec<String> = builtin_cobwebs(6)
        .iter()
        .filter(|p| !chain_is_ferrers(p.hasse().arcs()).unwrap().is_ferrers())
        .map(|p| format!("{:?}", p.level_sizes()))
        .collect();
    let tree = fibonacci_tree(5).unwrap();
    let report_tree = chain_is_ferrers(tree.arcs()).unwrap();
    let witness = report_tree
        .witnesses
        .first()
        .map(|(k, w)| format!("block {}: {w}", k + 1));
    report(
        "AC6",
        "complete cobwebs are blockwise Ferrers; fibonacci_tree(5) is not",
        failing.is_empty() && witness.is_some(),
        format!("failing cobwebs {failing:?}; tree witness {witness:?}"),
        start.elapsed(),
        Duration::from_secs(2),
    );
}

#[test]
fn ac07_dim2_realizer() {
    let start = Instant::now();
    let cobwebs = builtin_cobwebs(6);
    let failing: Vec<_> = cobwebs
        .iter()
        .filter(|p| !p.verify_dim2())
        .map(|p| p.level_sizes().to_vec())
        .collect();
    report(
        "AC7",
        "L1/L2 realize every built-in cobweb with <= 6 levels",
        failing.is_empty(),
        format!("{} cobwebs checked, failing {failing:?}", cobwebs.len()),
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn ac08_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac8);
    let mut closure_failures = 0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=12);
        let density = rng.random_range(0.0..=0.6);
        let g = random_dag(&mut rng, n, density);
        let fast = from_grid(&g).closure_series(true).unwrap();
        if to_grid(&fast) != warshall(&g, true) {
            closure_failures += 1;
        }
    }

    let seqs = FSequence::builtins();
    let mut path_failures = 0;
    for _ in 0..200 {
        let seq = &seqs[rng.random_range(0..seqs.len())];
        let levels = rng.random_range(1..=6);
        let p = CobwebPoset::build(seq, levels).unwrap();
        let n = p.vertex_count();
        let (x, y) = (rng.random_range(0..n), rng.random_range(0..n));
        let fast = p
            .count_paths(Vertex::from_index(x), Vertex::from_index(y))
            .unwrap();
        if fast != dfs_paths(&to_grid(&p.hasse_matrix()), x, y) {
            path_failures += 1;
        }
    }
    report(
        "AC8",
        "closure_series = Warshall (1000 DAGs), count_paths = DFS (200 pairs)",
        closure_failures == 0 && path_failures == 0,
        format!("{closure_failures} closure and {path_failures} path-count mismatches"),
        start.elapsed(),
        Duration::from_secs(10),
    );
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[test]
fn ac09_path_count_closed_form() {
    let start = Instant::now();
    // count_paths(x in level i, y in level j) = prod_{t=i+1}^{j-1} F_t, against DFS
    let mut mismatches = Vec::new();
    for p in builtin_cobwebs(6) {
        let g = to_grid(&p.hasse_matrix());
        let sizes = p.level_sizes();
        let offsets = p.hasse().level_offsets();
        for i in 0..sizes.len() {
            for j in i + 1..sizes.len() {
                let closed: u64 = sizes[i + 1..j].iter().map(|&s| s as u64).product();
                let (x, y) = (offsets[i], offsets[j + 1] - 1);
                let fast = p
                    .count_paths(Vertex::from_index(x), Vertex::from_index(y))
                    .unwrap();
                let dfs = dfs_paths(&g, x, y);
                if fast != closed || dfs != closed {
                    mismatches.push((sizes.to_vec(), i, j));
                }
            }
        }
    }

    // Which reading of j!/i! holds on the naturals cobweb (|level| = level number, from 1)?
    let p = CobwebPoset::build(&FSequence::Naturals, 6).unwrap();
    let g = to_grid(&p.hasse_matrix());
    let offsets = p.hasse().level_offsets();
    let mut fixed_1based = true;
    let mut fixed_0based = true;
    let mut to_level_1based = true;
    let mut to_level_0based = true;
    let mut level_to_level_1based = true;
    for li in 0..6usize {
        for lj in li + 1..6usize {
            let x = offsets[li];
            let fixed = dfs_paths(&g, x, offsets[lj]);
            let to_level: u64 = (offsets[lj]..offsets[lj + 1])
                .map(|y| dfs_paths(&g, x, y))
                .sum();
            let level_to_level: u64 = (offsets[li]..offsets[li + 1])
                .map(|x| {
                    (offsets[lj]..offsets[lj + 1])
                        .map(|y| dfs_paths(&g, x, y))
                        .sum::<u64>()
                })
                .sum();
            let (i1, j1) = (li as u64 + 1, lj as u64 + 1);
            let (i0, j0) = (li as u64, lj as u64);
            let ratio1 = factorial(j1) / factorial(i1);
            let ratio0 = factorial(j0) / factorial(i0);
            fixed_1based &= fixed == ratio1;
            fixed_0based &= fixed == ratio0;
            to_level_1based &= to_level == ratio1;
            to_level_0based &= to_level == ratio0;
            level_to_level_1based &= level_to_level == ratio1;
        }
    }
    let finding_ok = to_level_1based
        && !fixed_1based
        && !fixed_0based
        && !to_level_0based
        && !level_to_level_1based;
    report(
        "AC9",
        "count_paths = prod_{t=i+1}^{j-1} F_t (DFS); j!/i! reading",
        mismatches.is_empty() && finding_ok,
        format!(
            "closed-form mismatches {mismatches:?}; j!/i! holds for paths from one vertex of level i \
             to all of level j with levels numbered from 1 (|level k| = k): {to_level_1based}; \
             fixed endpoints 1-based {fixed_1based}, 0-based {fixed_0based}; to-level 0-based {to_level_0based}; \
             level-to-level {level_to_level_1based}"
        ),
        start.elapsed(),
        Duration::from_secs(2),
    );
}

#[test]
fn ac10_hasse_is_transitively_irreducible() {
    let start = Instant::now();
    let failing: Vec<_> = builtin_cobwebs(6)
        .iter()
        .filter(|p| {
            let a = p.hasse_matrix();
            transitive_reduction(&a).unwrap() != a
        })
        .map(|p| p.level_sizes().to_vec())
        .collect();
    report(
        "AC10",
        "transitive_reduction(A_F) = A_F for built-in cobwebs",
        failing.is_empty(),
        format!("failing {failing:?}"),
        start.elapsed(),
        Duration::from_secs(2),
    );
}
