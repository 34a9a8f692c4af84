//! `chromodel` command-line front end.
//!
//! Exit codes: 0 success, 1 contract or structural error (and usage
//! errors), 2 unreadable or unparsable input. `verify` exits 1 when a
//! certificate is well-formed but wrong.

mod cert;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use chromodel::amalgamation::{
    audit_extension_axioms, check_homogeneity, ClassDescriptor, GrowthConfig, Grower,
};
use chromodel::cell::{
    analyze_cell, color_point, default_sample, emit_clique, materialize_sample, verify_point_clique,
    verify_point_coloring, CellSpec, CellVerdict,
};
use chromodel::coloring::{chromatic_bounds, clique_number, max_clique};
use chromodel::graph::io::{parse_graph, to_dimacs, to_json, GraphDescriptor};
use chromodel::graph::shift_graph;
use chromodel::mycielski::mycielski_power;
use chromodel::predimension::{in_k_alpha, is_closed, lower_bound_epsilon, Alpha, Closedness};
use chromodel::witnesses::{max_half_graph, max_shattered_set};
use chromodel::{Graph, VertexSet};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cert::Certificate;

const DEFAULT_NODE_LIMIT: u64 = 2_000_000;

#[derive(Parser)]
#[command(name = "chromodel", version, about = "Chromatic experiments on amalgamation classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic and clique number with certificates
    Chromatic {
        graph: PathBuf,
        /// branch-and-bound nodes per colourability decision
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        /// write a chromatic certificate here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterated Mycielskian with a CSV row per level
    Mycielski {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        /// writes `<out>.graph` and `<out>.csv`
        #[arg(long)]
        out: PathBuf,
    },
    /// Predimension classes
    #[command(subcommand)]
    Kalpha(KalphaCommand),
    /// Growth of approximants and extension-axiom audits
    #[command(subcommand)]
    Generic(GenericCommand),
    /// Instability witnesses
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Shift graph on increasing k-tuples over 1..=n
    Shift {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interval cells given by piecewise-linear bounds
    #[command(subcommand)]
    Cell(CellCommand),
    /// Finite homogeneity truncation check
    Homog {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Re-check a certificate from the definitions
    Verify { cert: PathBuf },
}

#[derive(Subcommand)]
enum KalphaCommand {
    /// Membership in K_alpha with a violating set
    Check {
        graph: PathBuf,
        #[arg(long)]
        alpha: Alpha,
        /// also report whether the empty set is strictly closed
        #[arg(long)]
        strict: bool,
    },
    /// Graph of chromatic number n in K_alpha for all alpha below epsilon
    Epsilon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ClassArgs {
    /// all, trianglefree, k<m>free or kalpha
    #[arg(long)]
    class: String,
    #[arg(long)]
    alpha: Option<Alpha>,
    #[arg(long)]
    strict: bool,
}

impl ClassArgs {
    fn descriptor(&self) -> Result<ClassDescriptor> {
        Ok(ClassDescriptor::parse(&self.class, self.alpha, self.strict)?)
    }
}

#[derive(Subcommand)]
enum GenericCommand {
    Grow {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, default_value_t = 3)]
        size_cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// embed this graph before growing
        #[arg(long)]
        embed: Option<PathBuf>,
        #[arg(long, default_value_t = 200_000)]
        node_limit: u64,
        /// track the half-graph order up to this cap
        #[arg(long)]
        half_cap: Option<usize>,
        /// writes `<out>.graph` and `<out>.csv`
        #[arg(long)]
        out: PathBuf,
    },
    /// List unrealized extension axioms
    Audit {
        graph: PathBuf,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        a_max: usize,
        #[arg(long)]
        b_max: usize,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Largest half graph up to the cap
    Half {
        graph: PathBuf,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest shattered independent set up to the cap
    Shatter {
        graph: PathBuf,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CellCommand {
    Analyze {
        spec: PathBuf,
        /// emit a clique of this size
        #[arg(long, conflicts_with = "color_sample")]
        clique: Option<usize>,
        /// colour this many evenly spaced sample points
        #[arg(long)]
        color_sample: Option<usize>,
        /// certificate file for the clique or colouring
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    parse_graph(&text).with_context(|| format!("cannot parse graph file {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// JSON when the extension is `.json`, DIMACS otherwise.
fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    let text = if path.extension().is_some_and(|e| e == "json") { to_json(g) } else { to_dimacs(g) };
    write_text(path, &text)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_cert(path: &Path, c: &Certificate) -> Result<()> {
    write_text(path, &(serde_json::to_string_pretty(c)? + "\n"))
}

/// Pretty JSON on stdout; a closed pipe is not an error.
fn print(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn opt_csv(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn chromatic(path: &Path, node_limit: u64, out: Option<&Path>) -> Result<()> {
    let g = read_graph(path)?;
    let b = chromatic_bounds(&g, node_limit);
    let clique = b.clique.members.to_vec();
    print(&json!({
        "chi": b.is_exact().then_some(b.upper),
        "chi_lower": b.lower,
        "chi_upper": b.upper,
        "omega": clique.len(),
        "coloring": b.coloring.colors,
        "clique": clique,
    }));
    if let Some(out) = out {
        let c = Certificate::Chromatic {
            graph: GraphDescriptor::from_graph(&g),
            coloring: b.coloring.colors.clone(),
            colors: b.upper,
            clique,
        };
        write_cert(out, &c)?;
    }
    Ok(())
}

fn mycielski(path: &Path, iterate: usize, node_limit: u64, out: &Path) -> Result<()> {
    let mut g = read_graph(path)?;
    g.clear_labels();
    let mut csv = String::from("level,size,edges,chi,chi_lower,chi_upper,omega,max_degree\n");
    for level in 0..=iterate {
        if level > 0 {
            g = mycielski_power(&g, 1)?;
        }
        let b = chromatic_bounds(&g, node_limit);
        csv.push_str(&format!(
            "{level},{},{},{},{},{},{},{}\n",
            g.n(),
            g.edge_count(),
            opt_csv(b.is_exact().then_some(b.upper)),
            b.lower,
            b.upper,
            b.clique.size(),
            g.max_degree()
        ));
    }
    write_graph(&with_suffix(out, ".graph"), &g)?;
    write_text(&with_suffix(out, ".csv"), &csv)?;
    print(&json!({ "levels": iterate, "size": g.n(), "edges": g.edge_count() }));
    Ok(())
}

fn kalpha(cmd: KalphaCommand) -> Result<()> {
    match cmd {
        KalphaCommand::Check { graph, alpha, strict } => {
            let g = read_graph(&graph)?;
            let v = in_k_alpha(&g, alpha);
            let mut out = json!({
                "alpha": alpha,
                "member": v.holds,
                "witness": v.witness.map(|w| w.to_vec()),
            });
            if strict {
                let s = is_closed(&VertexSet::new(g.n()), &g, alpha, Closedness::Strict)?;
                out["empty_strictly_closed"] = json!(s.holds);
                out["strict_witness"] = json!(s.witness.map(|w| w.to_vec()));
            }
            print(&out);
        }
        KalphaCommand::Epsilon { n, out } => {
            let w = lower_bound_epsilon(n)?;
            if let Some(out) = &out {
                write_graph(out, &w.witness)?;
            }
            print(&json!({
                "n": n,
                "epsilon": w.epsilon,
                "size": w.witness.n(),
                "edges": w.witness.edge_count(),
                "max_degree": w.witness.max_degree(),
            }));
        }
    }
    Ok(())
}

fn generic(cmd: GenericCommand) -> Result<()> {
    match cmd {
        GenericCommand::Grow { class, budget, size_cap, seed, embed, node_limit, half_cap, out } => {
            let d = class.descriptor()?;
            if budget == 0 {
                bail!(chromodel::Error::Contract("budget must be positive".into()));
            }
            let config = GrowthConfig {
                budget,
                size_cap,
                seed,
                chi_node_limit: node_limit,
                half_graph_cap: half_cap,
                ..GrowthConfig::default()
            };
            let mut grower = Grower::new(d, config)?;
            if let Some(path) = &embed {
                let target = read_graph(path)?;
                grower.embed(&target)?;
            }
            grower.run()?;
            let (g, log) = grower.into_parts();
            write_graph(&with_suffix(&out, ".graph"), &g)?;
            write_text(&with_suffix(&out, ".csv"), &log.to_csv())?;
            let last = log.steps.last();
            print(&json!({
                "class": log.class,
                "seed": log.seed,
                "size": g.n(),
                "edges": g.edge_count(),
                "steps": log.steps.len(),
                "rounds": log.rounds,
                "saturated": log.saturated,
                "chi": last.and_then(|s| s.chi),
                "chi_lower": last.map(|s| s.chi_lower),
                "chi_upper": last.and_then(|s| s.chi_upper),
                "omega": clique_number(&g),
                "half_graph": last.and_then(|s| s.half_graph),
                "notes": log.notes,
            }));
        }
        GenericCommand::Audit { graph, class, a_max, b_max } => {
            let g = read_graph(&graph)?;
            let d = class.descriptor()?;
            let missing = audit_extension_axioms(&g, &d, a_max, b_max)?;
            let axioms: Vec<Value> = missing
                .iter()
                .map(|m| json!({ "base": m.base, "new": m.extension.new, "code": m.extension.code }))
                .collect();
            print(&json!({
                "class": d.name,
                "a_max": a_max,
                "b_max": b_max,
                "unrealized": missing.len(),
                "axioms": axioms,
            }));
        }
    }
    Ok(())
}

fn witness(cmd: WitnessCommand) -> Result<()> {
    match cmd {
        WitnessCommand::Half { graph, cap, out } => {
            let g = read_graph(&graph)?;
            let r = max_half_graph(&g, cap);
            print(&json!({ "order": r.order, "a_seq": r.witness.a_seq, "b_seq": r.witness.b_seq }));
            if let Some(out) = out {
                let c = Certificate::HalfGraph {
                    graph: GraphDescriptor::from_graph(&g),
                    a_seq: r.witness.a_seq,
                    b_seq: r.witness.b_seq,
                };
                write_cert(&out, &c)?;
            }
        }
        WitnessCommand::Shatter { graph, cap, out } => {
            let g = read_graph(&graph)?;
            let r = max_shattered_set(&g, cap);
            print(&json!({ "size": r.size, "base": r.witness.base, "realizers": r.witness.realizers }));
            if let Some(out) = out {
                let c = Certificate::Shatter {
                    graph: GraphDescriptor::from_graph(&g),
                    base: r.witness.base,
                    realizers: r.witness.realizers,
                };
                write_cert(&out, &c)?;
            }
        }
    }
    Ok(())
}

fn shift(n: usize, k: usize, node_limit: u64, out: Option<&Path>) -> Result<()> {
    let g = shift_graph(n, k)?;
    let b = chromatic_bounds(&g, node_limit);
    if let Some(out) = out {
        write_graph(out, &g)?;
    }
    print(&json!({
        "n": n,
        "k": k,
        "size": g.n(),
        "edges": g.edge_count(),
        "triangle_free": g.is_triangle_free(),
        "chi": b.is_exact().then_some(b.upper),
        "chi_lower": b.lower,
        "chi_upper": b.upper,
        "omega": max_clique(&g).size(),
    }));
    Ok(())
}

fn cell(cmd: CellCommand) -> Result<()> {
    let CellCommand::Analyze { spec, clique, color_sample, out } = cmd;
    let text = read_text(&spec)?;
    let cell = CellSpec::from_json(&text).with_context(|| format!("cannot parse cell spec {}", spec.display()))?;
    let analysis = analyze_cell(&cell)?;
    let mut report = json!({ "analysis": serde_json::to_value(&analysis)? });
    if let Some(k) = clique {
        let CellVerdict::CliqueBuilder(builder) = &analysis.verdict else {
            bail!(chromodel::Error::Contract("--clique needs a clique verdict".into()));
        };
        let points = emit_clique(builder, &analysis.cell, k)?;
        if !verify_point_clique(&analysis.cell, &points) {
            bail!(chromodel::Error::Structural("emitted points are not a clique".into()));
        }
        report["clique"] = json!(points.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        if let Some(out) = &out {
            write_cert(out, &Certificate::CellClique { cell: analysis.cell.clone(), points })?;
        }
    }
    if let Some(n) = color_sample {
        let palette = match &analysis.verdict {
            CellVerdict::BoundedColoring(c) => c.palette(),
            CellVerdict::BipartiteShortcut(_) => 2,
            CellVerdict::CliqueBuilder(_) => {
                bail!(chromodel::Error::Contract("--color-sample needs a colouring verdict".into()))
            }
        };
        let points = default_sample(&analysis, n);
        let colors = points.iter().map(|p| color_point(&analysis.verdict, p)).collect::<chromodel::Result<Vec<_>>>()?;
        if !verify_point_coloring(&analysis.cell, &points, &colors) {
            bail!(chromodel::Error::Structural("sample colouring is not proper".into()));
        }
        let sample = materialize_sample(&analysis.cell, &points)?;
        let b = chromatic_bounds(&sample, DEFAULT_NODE_LIMIT);
        let mut used = colors.clone();
        used.sort_unstable();
        used.dedup();
        report["sample"] = json!({
            "points": points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "colors": colors,
            "colors_used": used.len(),
            "palette": palette,
            "chi_upper": b.upper,
            "chi_lower": b.lower,
        });
        if let Some(out) = &out {
            write_cert(out, &Certificate::CellColoring { cell: analysis.cell.clone(), points, colors, palette })?;
        }
    }
    print(&report);
    Ok(())
}

fn homog(path: &Path, k: usize) -> Result<()> {
    let g = read_graph(path)?;
    let r = check_homogeneity(&g, k);
    print(&json!({
        "homogeneous": r.homogeneous,
        "k": r.k,
        "counterexample": r.counterexample,
        "searches": r.searches,
    }));
    Ok(())
}

/// 0 valid, 1 invalid.
fn verify(path: &Path) -> Result<ExitCode> {
    let text = read_text(path)?;
    let c: Certificate = serde_json::from_str(&text).with_context(|| format!("cannot parse certificate {}", path.display()))?;
    let valid = c.verify()?;
    print(&json!({ "kind": c.kind(), "valid": valid }));
    Ok(if valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Chromatic { graph, node_limit, out } => chromatic(&graph, node_limit, out.as_deref())?,
        Command::Mycielski { graph, iterate, node_limit, out } => mycielski(&graph, iterate, node_limit, &out)?,
        Command::Kalpha(c) => kalpha(c)?,
        Command::Generic(c) => generic(c)?,
        Command::Witness(c) => witness(c)?,
        Command::Shift { n, k, node_limit, out } => shift(n, k, node_limit, out.as_deref())?,
        Command::Cell(c) => cell(c)?,
        Command::Homog { graph, k } => homog(&graph, k)?,
        Command::Verify { cert } => return verify(&cert),
    }
    Ok(ExitCode::SUCCESS)
}

/// 2 for unreadable or unparsable input, 1 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<chromodel::Error>() {
            return if matches!(e, chromodel::Error::Parse(_)) { 2 } else { 1 };
        }
        if cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidValue | ErrorKind::ValueValidation => 2,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
