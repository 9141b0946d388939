//! Command-line front end for `cobweb_core`.
//!
//! [`run`] takes the argument list and two output streams and returns the
//! process exit status: 0 on success, 1 on domain errors and negative
//! verdicts, 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cobweb_core::cobweb::fibonacci_tree;
use cobweb_core::ferrers::chain_is_ferrers;
use cobweb_core::njoin::{compose_relations, is_join_decomposable, njoin_digraphs, project_chain};
use cobweb_core::{
    BinaryRelation, BoolMatrix, CobwebPoset, FSequence, GradedDigraph, NaryRelation, Vertex,
};
use serde_json::Value;

/// Environment variable holding the vertex cap for constructed posets.
pub const MAX_VERTICES_ENV: &str = "COBWEB_MAX_VERTICES";
pub const DEFAULT_MAX_VERTICES: usize = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "cobweb",
    version,
    about = "Cobweb posets, natural joins and Ferrers checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a cobweb poset and print a summary.
    Build {
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print the Hasse matrix of a cobweb poset.
    Hasse {
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print the zeta matrix of a cobweb poset or of a graded digraph read from JSON.
    Zeta {
        #[command(flatten)]
        seq: SeqArgs,
        /// Graded digraph JSON, as written by `hasse --format json`.
        #[arg(long, conflicts_with = "seq")]
        from: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit the Hasse digraph in DOT.
    Dot {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, conflicts_with = "seq")]
        from: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Count Hasse paths from vertex x to vertex y (1-based).
    Paths {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Natural join of two binary relations into a ternary relation.
    Join {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Relational composition of two binary relations.
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Test every arc block for Ferrers dimension one.
    CheckFerrers {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, conflicts_with = "seq")]
        from: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Verify the two-order realizer of a cobweb poset.
    CheckDim2 {
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Project an n-ary relation onto its chain of binary relations.
    Decompose {
        #[arg(long)]
        from: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Hasse digraph of the Fibonacci tree.
    Fibtree {
        #[arg(long)]
        levels: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct SeqArgs {
    /// naturals | fibonacci | gaussian:Q | constant:C | explicit:a,b,...
    #[arg(long)]
    seq: Option<String>,
    /// Number of levels; defaults to the length of an explicit list.
    #[arg(long)]
    levels: Option<usize>,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    /// The command ran but its verdict is negative; the report goes to stdout.
    Verdict(String),
}

impl From<cobweb_core::Error> for Failure {
    fn from(e: cobweb_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (result, target) = dispatch(cli.command);
    let (text, code) = match result {
        Ok(text) => (text, 0),
        Err(Failure::Verdict(text)) => (text, 1),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            return 2;
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
    };
    match target {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                let _ = writeln!(err, "error: writing {}: {e}", path.display());
                return 1;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    code
}

fn dispatch(command: Command) -> (CmdResult, Option<PathBuf>) {
    match command {
        Command::Build { seq, out } => (build(&seq, out.format), out.out),
        Command::Hasse { seq, out } => (hasse(&seq, out.format), out.out),
        Command::Zeta { seq, from, out } => (zeta(&seq, from.as_deref(), out.format), out.out),
        Command::Dot { seq, from, out } => (dot(&seq, from.as_deref(), out.format), out.out),
        Command::Paths { seq, x, y, out } => (paths(&seq, x, y, out.format), out.out),
        Command::Join { left, right, out } => (join(&left, &right, out.format), out.out),
        Command::Compose { left, right, out } => (compose(&left, &right, out.format), out.out),
        Command::CheckFerrers { seq, from, out } => {
            (check_ferrers(&seq, from.as_deref(), out.format), out.out)
        }
        Command::CheckDim2 { seq, out } => (check_dim2(&seq, out.format), out.out),
        Command::Decompose { from, out } => (decompose(&from, out.format), out.out),
        Command::Fibtree { levels, out } => (fibtree(levels, out.format), out.out),
    }
}

fn pick_format(
    requested: Option<Format>,
    default: Format,
    allowed: &[Format],
) -> Result<Format, Failure> {
    let f = requested.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
        Err(Failure::Usage(format!(
            "--format {} is not supported here (expected one of: {})",
            f.name(),
            names.join(", ")
        )))
    }
}

fn max_vertices() -> Result<usize, Failure> {
    match std::env::var(MAX_VERTICES_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Domain(format!(
                "{MAX_VERTICES_ENV} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_VERTICES),
    }
}

fn check_size(sizes: &[u64]) -> Result<(), Failure> {
    let limit = max_vertices()?;
    let total = sizes
        .iter()
        .try_fold(0usize, |acc, &s| acc.checked_add(usize::try_from(s).ok()?));
    match total {
        Some(count) if count <= limit => Ok(()),
        Some(count) => Err(cobweb_core::Error::TooLarge { count, limit }.into()),
        None => Err(cobweb_core::Error::TooLarge {
            count: usize::MAX,
            limit,
        }
        .into()),
    }
}

fn cobweb(args: &SeqArgs) -> Result<CobwebPoset, Failure> {
    let Some(spec) = &args.seq else {
        return Err(Failure::Usage("--seq is required".into()));
    };
    let seq: FSequence = spec.parse()?;
    let n = match (args.levels, seq.finite_len()) {
        (Some(n), _) => n,
        (None, Some(n)) => n,
        (None, None) => {
            return Err(Failure::Usage(format!(
                "--levels is required for sequence {seq}"
            )));
        }
    };
    check_size(&seq.level_sizes(n)?)?;
    Ok(CobwebPoset::build(&seq, n)?)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("reading {}: {e}", path.display())))
}

fn read_digraph(path: &Path) -> Result<GradedDigraph, Failure> {
    let g = GradedDigraph::from_json(&read_file(path)?)?;
    let sizes: Vec<u64> = g.levels().iter().map(|&s| s as u64).collect();
    check_size(&sizes)?;
    Ok(g)
}

fn read_relation(path: &Path) -> Result<BinaryRelation, Failure> {
    BinaryRelation::from_json(&read_file(path)?)
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

/// The Hasse digraph from `--from` or from `--seq`, whichever was given.
fn source_digraph(seq: &SeqArgs, from: Option<&Path>) -> Result<GradedDigraph, Failure> {
    match from {
        Some(path) => {
            if seq.levels.is_some() {
                return Err(Failure::Usage("--levels cannot be used with --from".into()));
            }
            read_digraph(path)
        }
        None if seq.seq.is_none() => {
            Err(Failure::Usage("one of --seq or --from is required".into()))
        }
        None => Ok(cobweb(seq)?.hasse().clone()),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn matrix_json(m: &BoolMatrix) -> String {
    let rows: Vec<Vec<u8>> = m.to_rows();
    with_newline(serde_json::to_string(&rows).expect("matrix rows serialize"))
}

fn digraph_output(g: &GradedDigraph, format: Format) -> String {
    match format {
        Format::Text => g.global_adjacency().to_text(),
        Format::Json => with_newline(g.to_json()),
        Format::Dot => g.to_dot(true),
    }
}

fn build(seq: &SeqArgs, format: Option<Format>) -> CmdResult {
    let format = pick_format(
        format,
        Format::Text,
        &[Format::Text, Format::Json, Format::Dot],
    )?;
    let p = cobweb(seq)?;
    if format != Format::Text {
        return Ok(digraph_output(p.hasse(), format));
    }
    let sizes: Vec<String> = p.level_sizes().iter().map(ToString::to_string).collect();
    let mut s = String::new();
    let _ = writeln!(s, "levels: {}", sizes.join(" "));
    let _ = writeln!(s, "vertices: {}", p.vertex_count());
    let _ = writeln!(s, "hasse arcs: {}", p.hasse().arc_count());
    let _ = writeln!(s, "order pairs: {}", p.zeta_matrix().count_ones());
    Ok(s)
}

fn hasse(seq: &SeqArgs, format: Option<Format>) -> CmdResult {
    let format = pick_format(
        format,
        Format::Text,
        &[Format::Text, Format::Json, Format::Dot],
    )?;
    Ok(digraph_output(cobweb(seq)?.hasse(), format))
}

fn zeta(seq: &SeqArgs, from: Option<&Path>, format: Option<Format>) -> CmdResult {
    let format = pick_format(format, Format::Text, &[Format::Text, Format::Json])?;
    let z = match from {
        Some(_) => source_digraph(seq, from)?
            .transitive_closure()
            .into_leq_matrix(),
        None => cobweb(seq)?.zeta_matrix().clone(),
    };
    Ok(match format {
        Format::Json => matrix_json(&z),
        _ => z.to_text(),
    })
}

fn dot(seq: &SeqArgs, from: Option<&Path>, format: Option<Format>) -> CmdResult {
    pick_format(format, Format::Dot, &[Format::Dot])?;
    Ok(source_digraph(seq, from)?.to_dot(true))
}

fn paths(seq: &SeqArgs, x: usize, y: usize, format: Option<Format>) -> CmdResult {
    let format = pick_format(format, Format::Text, &[Format::Text, Format::Json])?;
    let count = cobweb(seq)?.count_paths(Vertex(x), Vertex(y))?;
    Ok(match format {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({ "x": x, "y": y, "paths": count })
        ),
        _ => format!("{count}\n"),
    })
}

fn relation_text(r: &BinaryRelation) -> String {
    r.pairs()
        .iter()
        .map(|(x, y)| format!("{x} {y}\n"))
        .collect()
}

fn nary_text(t: &NaryRelation) -> String {
    t.tuples()
        .iter()
        .map(|tuple| format!("{}\n", tuple.join(" ")))
        .collect()
}

fn join(left: &Path, right: &Path, format: Option<Format>) -> CmdResult {
    let format = pick_format(
        format,
        Format::Json,
        &[Format::Text, Format::Json, Format::Dot],
    )?;
    let (l, r) = (read_relation(left)?, read_relation(right)?);
    if format == Format::Dot {
        return Ok(njoin_digraphs(&l, &r)?.to_dot(true));
    }
    let t = NaryRelation::from(&l).njoin(&r)?;
    Ok(match format {
        Format::Json => with_newline(t.to_json()),
        _ => nary_text(&t),
    })
}

fn compose(left: &Path, right: &Path, format: Option<Format>) -> CmdResult {
    let format = pick_format(format, Format::Json, &[Format::Text, Format::Json])?;
    let c = compose_relations(&read_relation(left)?, &read_relation(right)?)?;
    Ok(match format {
        Format::Json => with_newline(c.to_json()),
        _ => relation_text(&c),
    })
}

fn check_ferrers(seq: &SeqArgs, from: Option<&Path>, format: Option<Format>) -> CmdResult {
    pick_format(format, Format::Text, &[Format::Text])?;
    let g = source_digraph(seq, from)?;
    let report = chain_is_ferrers(g.arcs())?;
    if report.is_ferrers() {
        return Ok("OK: all blocks Ferrers\n".into());
    }
    let mut s = String::new();
    for (k, w) in &report.witnesses {
        let _ = writeln!(s, "block {}: {w}", k + 1);
    }
    let _ = writeln!(
        s,
        "NOT FERRERS: {} of {} blocks contain a 2x2 permutation submatrix",
        report.witnesses.len(),
        g.arcs().len()
    );
    Err(Failure::Verdict(s))
}

fn check_dim2(seq: &SeqArgs, format: Option<Format>) -> CmdResult {
    let format = pick_format(format, Format::Text, &[Format::Text, Format::Json])?;
    let p = cobweb(seq)?;
    let r = p.realizer();
    let ok = r.realizes(p.zeta_matrix());
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({
                "realizes": ok,
                "l1": r.l1.iter().map(|v| v.0).collect::<Vec<_>>(),
                "l2": r.l2.iter().map(|v| v.0).collect::<Vec<_>>(),
            })
        ),
        _ => {
            let line = |l: &[Vertex]| {
                l.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let verdict = if ok {
                format!(
                    "OK: L1 and L2 realize the order on {} vertices",
                    p.vertex_count()
                )
            } else {
                "FAIL: L1 and L2 do not realize the order".to_string()
            };
            format!("L1: {}\nL2: {}\n{verdict}\n", line(&r.l1), line(&r.l2))
        }
    };
    if ok {
        Ok(text)
    } else {
        Err(Failure::Verdict(text))
    }
}

fn decompose(from: &Path, format: Option<Format>) -> CmdResult {
    let format = pick_format(format, Format::Json, &[Format::Text, Format::Json])?;
    let t = NaryRelation::from_json(&read_file(from)?)
        .map_err(|e| Failure::Domain(format!("{}: {e}", from.display())))?;
    let chain = project_chain(&t)?;
    let ok = is_join_decomposable(&t);
    let text = match format {
        Format::Json => {
            let links: Vec<Value> = chain
                .links()
                .iter()
                .map(|r| serde_json::from_str(&r.to_json()).expect("relation JSON is valid"))
                .collect();
            format!(
                "{}\n",
                serde_json::json!({ "decomposable": ok, "links": links })
            )
        }
        _ => {
            let mut s = String::new();
            for (k, r) in chain.links().iter().enumerate() {
                let _ = writeln!(s, "link {}: {} -> {}", k + 1, r.dom(), r.ran());
                s.push_str(&relation_text(r));
            }
            let _ = writeln!(
                s,
                "{}",
                if ok {
                    "OK: the relation is the natural join of its projections"
                } else {
                    "NOT DECOMPOSABLE: the join of the projections is strictly larger"
                }
            );
            s
        }
    };
    if ok {
        Ok(text)
    } else {
        Err(Failure::Verdict(text))
    }
}

fn fibtree(levels: usize, format: Option<Format>) -> CmdResult {
    let format = pick_format(
        format,
        Format::Text,
        &[Format::Text, Format::Json, Format::Dot],
    )?;
    check_size(&FSequence::Fibonacci.level_sizes(levels)?)?;
    Ok(digraph_output(&fibonacci_tree(levels)?, format))
}
