//! The `raag` command-line tool.
//!
//! [`run`] parses an argument list, executes one subcommand and writes its
//! report. Exit codes: 0 on success, 1 on domain errors (malformed input,
//! enumeration cap exceeded, unreadable files), 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use raag_core::{
    are_isomorphic, catalog, count_homs, count_homs_parallel, distinguish, parse_algebra,
    parse_graph, raag_algebra, racg_algebra, reconstruct, remark_extension_presentation,
    CupAlgebra, DistinguishOptions, Error, Fp, Graph, GroupMode, Matrix, Presentation,
    ReconstructOptions, SeparationMethod, Verdict, DEFAULT_CAP,
};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "raag",
    version,
    about = "Cup-product algebras and finite-quotient invariants of right-angled Artin and Coxeter groups"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the degree 1/2 cup-product algebra of a graph.
    Algebra(AlgebraArgs),
    /// Print the algebra in a random basis drawn from the seed.
    Scramble(ScrambleArgs),
    /// Recover a graph from an algebra file, or from a scrambled graph algebra.
    Reconstruct(ReconstructArgs),
    /// Scramble, reconstruct and compare with the original graph.
    Roundtrip(RoundtripArgs),
    /// Quotient a Coxeter-group algebra by its squares.
    ReduceRacg(ReduceArgs),
    /// Count homomorphisms into catalog groups.
    Homcount(HomcountArgs),
    /// Separate two graphs' groups by hom counts or cohomology.
    Distinguish(DistinguishArgs),
    /// List connected components.
    Components(ComponentsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Raag,
    Racg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HomMode {
    Raag,
    Racg,
    /// The order-4 extension of the Coxeter group at vertex `--w`.
    Remark,
}

#[derive(Debug, Args)]
struct Common {
    /// Emit a single JSON document instead of plain text.
    #[arg(long)]
    json: bool,
    /// Worker threads for the parallel searches; output does not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
}

#[derive(Debug, Args)]
struct AlgebraInput {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 2, value_parser = parse_prime)]
    p: u64,
    #[arg(long, value_enum, default_value_t = Mode::Raag)]
    mode: Mode,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[command(flatten)]
    input: AlgebraInput,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ScrambleArgs {
    #[command(flatten)]
    input: AlgebraInput,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    /// Algebra file (as printed by `algebra` or `scramble`).
    #[arg(long, conflicts_with_all = ["graph", "p", "mode", "seed"], required_unless_present = "graph")]
    algebra: Option<PathBuf>,
    /// Graph whose algebra is scrambled with `--seed` and then reconstructed.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_parser = parse_prime)]
    p: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct RoundtripArgs {
    #[command(flatten)]
    input: AlgebraInput,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(long, conflicts_with_all = ["graph", "seed"], required_unless_present = "graph")]
    algebra: Option<PathBuf>,
    /// Graph whose Coxeter algebra is scrambled with `--seed` and reduced.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct HomcountArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = HomMode::Raag)]
    mode: HomMode,
    /// Distinguished vertex for `--mode remark`.
    #[arg(long, required_if_eq("mode", "remark"))]
    w: Option<usize>,
    /// Prime of the catalog to count into.
    #[arg(long, default_value_t = 2, value_parser = parse_prime)]
    p: u64,
    #[arg(long, default_value_t = 16)]
    bound: usize,
    /// Count into a single catalog group, e.g. `Q8` or `C2xC4`.
    #[arg(long)]
    group: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct DistinguishArgs {
    #[arg(long)]
    graph1: PathBuf,
    #[arg(long)]
    graph2: PathBuf,
    #[arg(long, default_value_t = 2, value_parser = parse_prime)]
    p: u64,
    #[arg(long, value_enum, default_value_t = Mode::Raag)]
    mode: Mode,
    #[arg(long, default_value_t = 16)]
    bound: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ComponentsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    json: bool,
}

fn parse_prime(s: &str) -> std::result::Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    Fp::new(p).map(|_| p).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<Report, Failure>;

struct Report {
    text: String,
    json: Value,
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn check_mode(mode: Mode, p: u64) -> std::result::Result<(), Failure> {
    if mode == Mode::Racg && p != 2 {
        return Err(Failure::Usage(format!(
            "--mode racg requires --p 2, got --p {p}"
        )));
    }
    Ok(())
}

fn build_algebra(g: &Graph, mode: Mode, p: u64) -> std::result::Result<CupAlgebra, Failure> {
    check_mode(mode, p)?;
    Ok(match mode {
        Mode::Raag => raag_algebra(g, p)?,
        Mode::Racg => racg_algebra(g),
    })
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.vertex_count(), "edges": g.edges() })
}

fn matrix_json(m: &Matrix) -> Value {
    Value::from((0..m.rows()).map(|r| m.row(r).to_vec()).collect::<Vec<_>>())
}

fn algebra_json(a: &CupAlgebra) -> Value {
    let mut products = Vec::new();
    for i in 0..a.dim1() {
        for j in 0..a.dim1() {
            let v = a.product(i, j);
            if v.iter().any(|&x| x != 0) {
                products.push(json!({ "i": i, "j": j, "value": v }));
            }
        }
    }
    json!({
        "flavor": a.flavor().keyword(),
        "p": a.prime(),
        "dim1": a.dim1(),
        "dim2": a.dim2(),
        "products": products,
    })
}

fn with_command(command: &str, mut body: Value) -> Value {
    body.as_object_mut()
        .expect("report bodies are objects")
        .insert("command".into(), command.into());
    body
}

fn reconstruct_options(cap: u64, common: &Common) -> ReconstructOptions {
    ReconstructOptions {
        cap,
        parallel: common.threads > 1,
    }
}

fn cmd_algebra(args: &AlgebraArgs) -> Outcome {
    let g = load_graph(&args.input.graph)?;
    let alg = build_algebra(&g, args.input.mode, args.input.p)?;
    Ok(Report {
        text: alg.to_string(),
        json: with_command("algebra", algebra_json(&alg)),
    })
}

fn cmd_scramble(args: &ScrambleArgs) -> Outcome {
    let g = load_graph(&args.input.graph)?;
    let alg = build_algebra(&g, args.input.mode, args.input.p)?;
    let (scrambled, change) = alg.random_scramble(args.seed);
    let mut text = format!("# seed {}\n", args.seed);
    text += &scrambled.to_string();
    for (name, m) in [("h1", change.h1()), ("h2", change.h2())] {
        text += &format!("# witness {name}\n");
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(u32::to_string).collect();
            text += &format!("#   {}\n", row.join(" "));
        }
    }
    let mut json = algebra_json(&scrambled);
    json["seed"] = args.seed.into();
    json["witness"] = json!({ "h1": matrix_json(change.h1()), "h2": matrix_json(change.h2()) });
    Ok(Report {
        text,
        json: with_command("scramble", json),
    })
}

/// Reduces Coxeter algebras first, so either flavor can be reconstructed.
fn reconstruct_any(
    alg: &CupAlgebra,
    options: ReconstructOptions,
) -> std::result::Result<(CupAlgebra, raag_core::ReconstructionResult), Failure> {
    let alternating = match alg.flavor() {
        raag_core::Flavor::Alternating => alg.clone(),
        raag_core::Flavor::Quadratic => alg.reduce_racg()?,
    };
    let result = reconstruct(&alternating, options)?;
    Ok((alternating, result))
}

fn cmd_reconstruct(args: &ReconstructArgs) -> Outcome {
    let alg = match (&args.algebra, &args.graph) {
        (Some(path), _) => parse_algebra(&read(path)?)
            .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?,
        (None, Some(path)) => {
            let g = load_graph(path)?;
            let alg = build_algebra(&g, args.mode.unwrap_or(Mode::Raag), args.p.unwrap_or(2))?;
            alg.random_scramble(args.seed.unwrap_or(0)).0
        }
        (None, None) => {
            return Err(Failure::Usage(
                "one of --algebra or --graph is required".into(),
            ))
        }
    };
    let (_, result) = reconstruct_any(&alg, reconstruct_options(args.cap, &args.common))?;
    let mut text = String::new();
    for (v, class) in result.vertex_classes.iter().enumerate() {
        let coords: Vec<String> = class.iter().map(u32::to_string).collect();
        text += &format!("# vertex {v} class {}\n", coords.join(" "));
    }
    text += &result.graph.to_string();
    let json = json!({
        "graph": graph_json(&result.graph),
        "vertex_classes": result.vertex_classes,
        "witness": { "h1": matrix_json(result.witness.h1()), "h2": matrix_json(result.witness.h2()) },
        "verified": true,
    });
    Ok(Report {
        text,
        json: with_command("reconstruct", json),
    })
}

fn cmd_roundtrip(args: &RoundtripArgs) -> Outcome {
    let g = load_graph(&args.input.graph)?;
    let alg = build_algebra(&g, args.input.mode, args.input.p)?;
    let (scrambled, _) = alg.random_scramble(args.seed);
    let (_, result) = reconstruct_any(&scrambled, reconstruct_options(args.cap, &args.common))?;
    let witness = are_isomorphic(&g, &result.graph);
    let verdict = if witness.is_some() {
        "ISOMORPHIC"
    } else {
        "NOT ISOMORPHIC"
    };
    let mut text = format!(
        "original {} vertices {} edges\nreconstructed {} vertices {} edges\n",
        g.vertex_count(),
        g.edge_count(),
        result.graph.vertex_count(),
        result.graph.edge_count()
    );
    if let Some(w) = &witness {
        let pairs: Vec<String> = w
            .mapping
            .iter()
            .enumerate()
            .map(|(v, m)| format!("{v}->{m}"))
            .collect();
        text += &format!("mapping {}\n", pairs.join(" "));
    }
    text += verdict;
    text.push('\n');
    let json = json!({
        "verdict": verdict,
        "seed": args.seed,
        "original": graph_json(&g),
        "reconstructed": graph_json(&result.graph),
        "mapping": witness.as_ref().map(|w| w.mapping.clone()),
    });
    if witness.is_none() {
        return Err(Failure::Domain(format!(
            "{text}reconstructed graph is not isomorphic to the input"
        )));
    }
    Ok(Report {
        text,
        json: with_command("roundtrip", json),
    })
}

fn cmd_reduce(args: &ReduceArgs) -> Outcome {
    let alg = match (&args.algebra, &args.graph) {
        (Some(path), _) => parse_algebra(&read(path)?)
            .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?,
        (None, Some(path)) => {
            let g = load_graph(path)?;
            let alg = racg_algebra(&g);
            match args.seed {
                Some(seed) => alg.random_scramble(seed).0,
                None => alg,
            }
        }
        (None, None) => {
            return Err(Failure::Usage(
                "one of --algebra or --graph is required".into(),
            ))
        }
    };
    let sigma = alg.sigma_subspace()?.dim();
    let reduced = alg.reduce_racg()?;
    let mut json = algebra_json(&reduced);
    json["sigma_dim"] = sigma.into();
    Ok(Report {
        text: format!("# sigma dimension {sigma}\n{reduced}"),
        json: with_command("reduce-racg", json),
    })
}

fn cmd_homcount(args: &HomcountArgs) -> Outcome {
    let g = load_graph(&args.graph)?;
    let pres: Presentation = match args.mode {
        HomMode::Raag => GroupMode::Raag.presentation(&g),
        HomMode::Racg => GroupMode::Racg.presentation(&g),
        HomMode::Remark => {
            let w = args
                .w
                .ok_or_else(|| Failure::Usage("--mode remark requires --w".into()))?;
            remark_extension_presentation(&g, w)?
        }
    };
    let groups = match &args.group {
        Some(name) => {
            let all = catalog(args.p, 64)?;
            let found = all.into_iter().find(|q| q.name() == name).ok_or_else(|| {
                Failure::Usage(format!(
                    "no catalog group named `{name}` for p = {}",
                    args.p
                ))
            })?;
            vec![found]
        }
        None => catalog(args.p, args.bound)?,
    };
    let mut text = format!("presentation {pres}\n");
    let mut counts = Vec::new();
    for q in &groups {
        let c = if args.common.threads > 1 {
            count_homs_parallel(&pres, q)
        } else {
            count_homs(&pres, q)
        };
        text += &format!("count {} {} {}\n", q.name(), q.order(), c);
        counts.push(json!({ "group": q.name(), "order": q.order(), "count": c.to_string() }));
    }
    Ok(Report {
        text,
        json: json!({ "command": "homcount", "presentation": pres.to_string(), "counts": counts }),
    })
}

fn cmd_distinguish(args: &DistinguishArgs) -> Outcome {
    check_mode(args.mode, args.p)?;
    let g = load_graph(&args.graph1)?;
    let h = load_graph(&args.graph2)?;
    let options = DistinguishOptions {
        mode: match args.mode {
            Mode::Raag => GroupMode::Raag,
            Mode::Racg => GroupMode::Racg,
        },
        p: args.p,
        order_bound: args.bound,
        reconstruct: reconstruct_options(args.cap, &args.common),
    };
    let cert = distinguish(&g, &h, options)?;
    let verdict = match cert.verdict {
        Verdict::Distinct => "distinct",
        Verdict::NotSeparated => "not-separated",
    };
    let mut text = String::new();
    let mut counts = Vec::new();
    for (name, c1, c2) in &cert.tried {
        text += &format!("tried {name} {c1} {c2}\n");
        counts.push(json!({ "group": name, "count1": c1.to_string(), "count2": c2.to_string() }));
    }
    text += &format!("verdict {verdict}\n");
    let certificate = match &cert.method {
        SeparationMethod::HomCount {
            group,
            count1,
            count2,
        } => {
            text += &format!("method hom-count\ngroup {group}\ncount1 {count1}\ncount2 {count2}\n");
            json!({ "method": "hom-count", "group": group, "count1": count1.to_string(), "count2": count2.to_string() })
        }
        SeparationMethod::Cohomology { graph1, graph2 } => {
            let edges = |x: &Graph| {
                x.edges()
                    .iter()
                    .map(|(u, v)| format!("{u}-{v}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            text += &format!(
                "method cohomology\ngraph1 {} vertices edges {}\ngraph2 {} vertices edges {}\n",
                graph1.vertex_count(),
                edges(graph1),
                graph2.vertex_count(),
                edges(graph2)
            );
            json!({ "method": "cohomology", "graph1": graph_json(graph1), "graph2": graph_json(graph2) })
        }
        SeparationMethod::Absent => {
            text += "method absent\n";
            json!({ "method": "absent" })
        }
    };
    Ok(Report {
        text,
        json: json!({ "command": "distinguish", "verdict": verdict, "certificate": certificate, "counts": counts }),
    })
}

fn cmd_components(args: &ComponentsArgs) -> Outcome {
    let g = load_graph(&args.graph)?;
    let comps = g.components();
    let mut text = format!("components {}\n", comps.len());
    let mut list = Vec::new();
    for (k, c) in comps.iter().enumerate() {
        let vertices: Vec<String> = c.vertices.iter().map(usize::to_string).collect();
        let edges: Vec<String> = c
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| format!("{}-{}", c.vertices[u], c.vertices[v]))
            .collect();
        text += &format!(
            "component {k} vertices {} edges {}\n",
            vertices.join(" "),
            edges.join(" ")
        );
        list.push(json!({ "vertices": c.vertices, "graph": graph_json(&c.graph) }));
    }
    Ok(Report {
        text,
        json: json!({ "command": "components", "components": list }),
    })
}

fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Algebra(a) => cmd_algebra(a),
        Command::Scramble(a) => cmd_scramble(a),
        Command::Reconstruct(a) => cmd_reconstruct(a),
        Command::Roundtrip(a) => cmd_roundtrip(a),
        Command::ReduceRacg(a) => cmd_reduce(a),
        Command::Homcount(a) => cmd_homcount(a),
        Command::Distinguish(a) => cmd_distinguish(a),
        Command::Components(a) => cmd_components(a),
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Algebra(_) => "algebra",
            Command::Scramble(_) => "scramble",
            Command::Reconstruct(_) => "reconstruct",
            Command::Roundtrip(_) => "roundtrip",
            Command::ReduceRacg(_) => "reduce-racg",
            Command::Homcount(_) => "homcount",
            Command::Distinguish(_) => "distinguish",
            Command::Components(_) => "components",
        }
    }
}

fn settings(command: &Command) -> (bool, u16) {
    match command {
        Command::Algebra(a) => (a.common.json, a.common.threads),
        Command::Scramble(a) => (a.common.json, a.common.threads),
        Command::Reconstruct(a) => (a.common.json, a.common.threads),
        Command::Roundtrip(a) => (a.common.json, a.common.threads),
        Command::ReduceRacg(a) => (a.common.json, a.common.threads),
        Command::Homcount(a) => (a.common.json, a.common.threads),
        Command::Distinguish(a) => (a.common.json, a.common.threads),
        Command::Components(a) => (a.json, 1),
    }
}

fn usage(subcommand: &str) -> clap::builder::StyledStr {
    let mut cmd = <Cli as clap::CommandFactory>::command();
    cmd.build();
    match cmd.find_subcommand_mut(subcommand) {
        Some(sub) => sub.render_usage(),
        None => cmd.render_usage(),
    }
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let mut rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                if !rendered.contains("Usage:") {
                    let name = argv.get(1).and_then(|a| a.to_str()).unwrap_or("");
                    rendered += &format!("\n{}\n", usage(name));
                }
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let (json, threads) = settings(&cli.command);
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads as usize)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {threads} threads: {e}");
            return 1;
        }
    };
    match pool.install(|| dispatch(&cli.command)) {
        Ok(report) => {
            let written = if json {
                writeln!(out, "{}", report.json)
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return 1;
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{}", usage(cli.command.name()));
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
