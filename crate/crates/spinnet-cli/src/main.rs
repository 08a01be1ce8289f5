//! `spinnet` — exact recoupling constants, vertex expansions, and embedded
//! graph invariants from the command line.
//!
//! Exit codes: 0 success; 2 usage or input-parse error; 3 inadmissible
//! labels where admissibility is a precondition; 4 invalid diagram;
//! 5 oracle budget exceeded; 1 internal error or failed verification.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spinnet::diagram::{NetSlice, SlicedDiagram};
use spinnet::invariant::{
    g_invariant_colored_engine, g_invariant_engine, jones, link_pair_value, writhe,
    EmbeddedGraphDiagram, Engine,
};
use spinnet::qpoly::RatFunc;
use spinnet::recoupling::{admissible, delta, lambda, six_j, tet, theta, twist, Caches};
use spinnet::vertices::{n_vertex, NVertexExpansion, TreeShape, VertexSpec};
use spinnet::verify::{all_passed, render_text, run_suite, Suite};
use spinnet::{Error, Result};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "spinnet",
    version,
    about = "Exact recoupling engine for balanced spin networks",
    max_term_width = 100
)]
struct Cli {
    /// Emit a JSON envelope (input echo + engine metadata) instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel sums. Defaults to 1 so timing
    /// baselines are reproducible; 0 means one per core. Results are
    /// byte-identical for every setting.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a recoupling constant as an exact rational function of A.
    Recoupling {
        #[command(subcommand)]
        op: RecouplingOp,
    },
    /// Expand an n-valent vertex into its canonical tree basis.
    ExpandVertex {
        /// Boundary labels in cyclic order, separated by ',' (a '/' may be
        /// used as a visual group separator, e.g. `1,1/2,2`).
        #[arg(long)]
        labels: String,
        /// Tree shape: `caterpillar` (default) or the comma-separated list
        /// of fusion positions, one per internal step (e.g. `2,1,0`).
        #[arg(long)]
        tree: Option<String>,
    },
    /// Evaluate the balanced invariant of a diagram file.
    Eval {
        /// Diagram file, JSON (`spinnet-diagram/1`) or the text format.
        #[arg(long)]
        file: PathBuf,
        /// Uniform color (twice-spin) for every edge.
        #[arg(long, conflicts_with = "colors")]
        j: Option<u32>,
        /// JSON file mapping edge index to color, e.g. {"0": 1, "1": 2}.
        #[arg(long)]
        colors: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EngineArg::Fast)]
        engine: EngineArg,
    },
    /// Kauffman bracket of a link diagram; `--normalized` divides out the
    /// writhe phase and the unknot value.
    Jones {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        normalized: bool,
    },
    /// Evaluate a diagram file entirely through the brute-force
    /// Temperley–Lieb oracle (same value as `eval --engine oracle`).
    Oracle {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, conflicts_with = "colors")]
        j: Option<u32>,
        #[arg(long)]
        colors: Option<PathBuf>,
    },
    /// Run the deterministic self-check suites.
    Verify {
        /// qpoly | tl | recoupling | vertices | invariants | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Cap for every label loop in the checks.
        #[arg(long, default_value_t = 2)]
        max_label: u32,
    },
}

#[derive(Subcommand)]
enum RecouplingOp {
    /// Quantum dimension of the color-n loop.
    Delta { n: u32 },
    /// Theta network of an edge triple.
    Theta { a: u32, b: u32, c: u32 },
    /// Tetrahedral network with vertex triples {a,d,e}, {b,c,e}, {a,b,f},
    /// {c,d,f}.
    Tet { a: u32, b: u32, e: u32, c: u32, d: u32, f: u32 },
    /// Recoupling coefficient between the two pair-of-pants trees.
    Sixj { a: u32, b: u32, e: u32, c: u32, d: u32, f: u32 },
    /// Braiding phase of cables a, b through fusion channel c.
    Lambda { a: u32, b: u32, c: u32 },
    /// Framing twist of a color-n cable.
    Twist { n: u32 },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Fast,
    Oracle,
}

impl EngineArg {
    fn engine(self) -> Engine {
        match self {
            EngineArg::Fast => Engine::Fast,
            EngineArg::Oracle => Engine::Oracle,
        }
    }
    fn name(self) -> &'static str {
        match self {
            EngineArg::Fast => "fast",
            EngineArg::Oracle => "oracle",
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let threads = cli.threads;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .expect("rayon pool is only initialized once");
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

/// Print the command result: plain text, or the JSON envelope `--json`
/// asks for (command + input echo + engine metadata + result).
fn emit(cli_json: bool, text: &str, envelope: Value) {
    if cli_json {
        println!("{}", serde_json::to_string_pretty(&envelope).expect("serializable envelope"));
    } else {
        println!("{text}");
    }
}

fn engine_meta(threads: usize, mode: Option<&str>) -> Value {
    json!({
        "name": "spinnet",
        "version": env!("CARGO_PKG_VERSION"),
        "threads": threads,
        "mode": mode,
    })
}

fn run(cli: Cli) -> Result<()> {
    let threads = cli.threads;
    match cli.command {
        Command::Recoupling { op } => run_recoupling(cli.json, threads, op),
        Command::ExpandVertex { labels, tree } => {
            run_expand_vertex(cli.json, threads, &labels, tree.as_deref())
        }
        Command::Eval { file, j, colors, engine } => {
            run_eval(cli.json, threads, &file, j, colors.as_deref(), engine, "eval")
        }
        Command::Jones { file, normalized } => run_jones(cli.json, threads, &file, normalized),
        Command::Oracle { file, j, colors } => run_eval(
            cli.json,
            threads,
            &file,
            j,
            colors.as_deref(),
            EngineArg::Oracle,
            "oracle",
        ),
        Command::Verify { suite, max_label } => run_verify(cli.json, threads, &suite, max_label),
    }
}

// ---------------------------------------------------------------------------
// recoupling
// ---------------------------------------------------------------------------

fn run_recoupling(as_json: bool, threads: usize, op: RecouplingOp) -> Result<()> {
    let caches = Caches::new();
    // An inadmissible labeling of theta/tet/sixj is the zero network — a
    // value, not an error — but deserves a note naming the failing triple.
    let (name, labels, value, bad_triple): (&str, Vec<u32>, RatFunc, Option<[u32; 3]>) = match op {
        RecouplingOp::Delta { n } => ("delta", vec![n], delta(n), None),
        RecouplingOp::Theta { a, b, c } => {
            ("theta", vec![a, b, c], theta(&caches, a, b, c), failing_triple(&[[a, b, c]]))
        }
        RecouplingOp::Tet { a, b, e, c, d, f } => (
            "tet",
            vec![a, b, e, c, d, f],
            tet(&caches, a, b, e, c, d, f),
            failing_triple(&[[a, d, e], [b, c, e], [a, b, f], [c, d, f]]),
        ),
        RecouplingOp::Sixj { a, b, e, c, d, f } => (
            "sixj",
            vec![a, b, e, c, d, f],
            six_j(&caches, a, b, e, c, d, f),
            failing_triple(&[[a, b, e], [e, c, d], [a, d, f], [b, c, f]]),
        ),
        RecouplingOp::Lambda { a, b, c } => {
            if !admissible(a, b, c) {
                return Err(Error::Inadmissible(format!(
                    "lambda needs an admissible triple; ({a},{b},{c}) is not"
                )));
            }
            ("lambda", vec![a, b, c], lambda(a, b, c), None)
        }
        RecouplingOp::Twist { n } => ("twist", vec![n], twist(n), None),
    };
    let note = bad_triple.map(|[x, y, z]| format!("inadmissible triple ({x},{y},{z})"));
    if let Some(note) = &note {
        eprintln!("note: {note}");
    }
    emit(
        as_json,
        &value.to_text(),
        json!({
            "command": "recoupling",
            "engine": engine_meta(threads, None),
            "input": {"op": name, "labels": labels},
            "note": note,
            "result": {"text": value.to_text(), "value": value.to_json()},
        }),
    );
    Ok(())
}

fn failing_triple(triples: &[[u32; 3]]) -> Option<[u32; 3]> {
    triples.iter().find(|t| !admissible(t[0], t[1], t[2])).copied()
}

// ---------------------------------------------------------------------------
// expand-vertex
// ---------------------------------------------------------------------------

fn parse_labels(s: &str) -> Result<Vec<u32>> {
    let parts: Vec<&str> = s
        .split([',', '/'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(Error::Parse("empty label list".into()));
    }
    parts
        .iter()
        .map(|p| p.parse::<u32>().map_err(|_| Error::Parse(format!("bad label {p:?}"))))
        .collect()
}

fn parse_tree(spec: Option<&str>, arity: usize) -> Result<TreeShape> {
    match spec {
        None | Some("caterpillar") => Ok(TreeShape::caterpillar(arity)),
        Some(s) => {
            let fusions: Vec<usize> = s
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad fusion position {p:?}"))))
                .collect::<Result<_>>()?;
            TreeShape::new(arity, fusions)
        }
    }
}

fn net_slice_json(s: &NetSlice) -> Value {
    match s {
        NetSlice::Cup { at, color } => json!({"op": "cup", "at": at, "color": color}),
        NetSlice::Cap { at } => json!({"op": "cap", "at": at}),
        NetSlice::Cross { at, sign } => json!({
            "op": if *sign == spinnet::diagram::CrossingSign::Pos { "cross+" } else { "cross-" },
            "at": at,
        }),
        NetSlice::Node { at, n_in, out_colors } => {
            json!({"op": "node", "at": at, "in": n_in, "out_colors": out_colors})
        }
        NetSlice::StubStart { at } => json!({"op": "stub-start", "at": at}),
        NetSlice::StubEnd { at } => json!({"op": "stub-end", "at": at}),
    }
}

fn run_expand_vertex(as_json: bool, threads: usize, labels: &str, tree: Option<&str>) -> Result<()> {
    let colors = parse_labels(labels)?;
    let shape = parse_tree(tree, colors.len())?;
    let caches = Caches::new();
    let expansion: NVertexExpansion =
        n_vertex(&caches, &VertexSpec::new(colors.clone()), &shape)?;

    let mut text = format!(
        "vertex boundary {:?}, tree fusions {:?}: {} term(s)",
        colors,
        shape.fusions(),
        expansion.terms.len()
    );
    if expansion.terms.is_empty() {
        text.push_str("\n(no admissible internal labelings; the vertex is zero)");
    }
    for t in &expansion.terms {
        text.push_str(&format!("\nlabels {:?}  coeff {}", t.labels, t.coeff.to_text()));
    }
    let terms: Vec<Value> = expansion
        .terms
        .iter()
        .map(|t| {
            json!({
                "labels": t.labels,
                "coeff": t.coeff.to_json(),
                "coeff_text": t.coeff.to_text(),
                "word": t.word.iter().map(net_slice_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    emit(
        as_json,
        &text,
        json!({
            "command": "expand-vertex",
            "engine": engine_meta(threads, None),
            "input": {"labels": colors, "tree": shape.fusions()},
            "result": {"terms": terms},
        }),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// eval / oracle
// ---------------------------------------------------------------------------

fn read_diagram(path: &Path) -> Result<SlicedDiagram> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    if body.trim_start().starts_with('{') {
        SlicedDiagram::parse_json(&body)
    } else {
        SlicedDiagram::parse_text(&body)
    }
}

fn read_color_map(path: &Path) -> Result<BTreeMap<usize, u32>> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let raw: BTreeMap<String, u32> = serde_json::from_str(&body)
        .map_err(|e| Error::Parse(format!("bad color map {}: {e}", path.display())))?;
    raw.into_iter()
        .map(|(k, v)| {
            k.parse::<usize>()
                .map(|e| (e, v))
                .map_err(|_| Error::Parse(format!("bad edge index {k:?} in color map")))
        })
        .collect()
}

fn run_eval(
    as_json: bool,
    threads: usize,
    file: &Path,
    j: Option<u32>,
    colors: Option<&Path>,
    engine: EngineArg,
    command: &str,
) -> Result<()> {
    let mut diagram = read_diagram(file)?;
    if let Some(path) = colors {
        let map = read_color_map(path)?;
        diagram =
            SlicedDiagram::with_colors(diagram.kind(), diagram.slices().to_vec(), Some(map))?;
    }
    let caches = Caches::new();
    let value = if diagram.vertices().is_empty() {
        // A link diagram: the balanced pair value of the colored strands.
        let color_of: Box<dyn Fn(usize) -> u32 + Sync> = match (j, diagram.embedded_colors()) {
            (Some(j), _) => Box::new(move |_| j),
            (None, Some(map)) => {
                let map = map.clone();
                for e in 0..diagram.num_edges() {
                    if !map.contains_key(&e) {
                        return Err(Error::InvalidDiagram(format!(
                            "color map misses edge {e}"
                        )));
                    }
                }
                Box::new(move |e| map[&e])
            }
            (None, None) => {
                return Err(Error::Parse(
                    "no coloring: pass --j or --colors, or embed colors in the file".into(),
                ))
            }
        };
        link_pair_value(&caches, &diagram, color_of, engine.engine())?
    } else {
        let graph = EmbeddedGraphDiagram::new(diagram.clone())?;
        match j {
            Some(j) => g_invariant_engine(&caches, &graph, j, engine.engine())?,
            None if graph.coloring.is_some() => {
                g_invariant_colored_engine(&caches, &graph, engine.engine())?
            }
            None => {
                return Err(Error::Parse(
                    "no coloring: pass --j or --colors, or embed colors in the file".into(),
                ))
            }
        }
    };
    emit(
        as_json,
        &value.to_text(),
        json!({
            "command": command,
            "engine": engine_meta(threads, Some(engine.name())),
            "input": {
                "file": file.display().to_string(),
                "diagram": diagram.to_json(),
                "j": j,
            },
            "result": {"text": value.to_text(), "value": value.to_json()},
        }),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// jones
// ---------------------------------------------------------------------------

fn run_jones(as_json: bool, threads: usize, file: &Path, normalized: bool) -> Result<()> {
    let diagram = read_diagram(file)?;
    let value = jones(&diagram, normalized)?;
    let w = writhe(&diagram);
    emit(
        as_json,
        &value.to_text(),
        json!({
            "command": "jones",
            "engine": engine_meta(threads, None),
            "input": {
                "file": file.display().to_string(),
                "diagram": diagram.to_json(),
                "normalized": normalized,
            },
            "result": {"text": value.to_text(), "value": value.to_json(), "writhe": w},
        }),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn run_verify(as_json: bool, threads: usize, suite: &str, max_label: u32) -> Result<()> {
    let suite = Suite::parse(suite).ok_or_else(|| {
        Error::Parse(format!(
            "unknown suite {suite:?}; expected qpoly, tl, recoupling, vertices, invariants, or all"
        ))
    })?;
    let results = run_suite(suite, max_label);
    let report = render_text(&results);
    let checks: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "suite": r.suite,
                "name": r.name,
                "cases": r.cases,
                "passed": r.passed,
                "detail": if r.detail.is_empty() { Value::Null } else { Value::String(r.detail.clone()) },
            })
        })
        .collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    emit(
        as_json,
        report.trim_end(),
        json!({
            "command": "verify",
            "engine": engine_meta(threads, None),
            "input": {"suite": suite.name(), "max_label": max_label},
            "result": {"checks": checks, "failed": failed},
        }),
    );
    if !all_passed(&results) {
        std::process::exit(1);
    }
    Ok(())
}
