use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chroma::battery;
use chroma::extremal::{
    compute_ex_c, compute_ex_classic, conjecture_scan, construct, ExtremalReport, Forbidden,
    GraphClassSpec,
};
use chroma::feasibility::{check_certificate_with, decide_feasible_with, FeasibilityOutcome};
use chroma::graph6::emit_graph6;
use chroma::io::{emit_coloring, read_coloring, read_graph, read_tree};
use chroma::search::embed::CopyMode;
use chroma::search::paths::find_bichromatic_path;
use chroma::search::tree::TreePattern;
use chroma::search::validate::{validate_double_star, validate_embedding, validate_path};
use chroma::witness::{embed_tree_bichromatic, extract_bichromatic_path, find_double_star_bichromatic};
use chroma::{ColoredGraph, Error, Graph};

/// Bichromatic paths, trees and double stars in properly colored graphs.
#[derive(Parser, Debug)]
#[command(name = "chroma", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Seed for the random corpora of `verify`.
    #[arg(long, global = true, default_value_t = battery::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ColoredInput {
    /// Graph as a graph6 line or an edge list.
    #[arg(long)]
    graph: PathBuf,
    /// One color per vertex.
    #[arg(long)]
    coloring: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Look for a path with `l` edges whose endpoints differ in color.
    Check {
        #[command(flatten)]
        input: ColoredInput,
        #[arg(short = 'l')]
        l: usize,
    },
    /// Decide whether some proper coloring gives every copy of the tree
    /// monochromatic leaves.
    Feasible {
        #[arg(long)]
        graph: PathBuf,
        /// Tree file, or a name such as `path:3`, `star:4`, `double-star:1,2`.
        #[arg(long)]
        tree: String,
        /// Experimental: count only induced copies.
        #[arg(long)]
        induced: bool,
    },
    /// Extract a bichromatic path with 2k+1 edges from a graph with more
    /// than k*n edges.
    Witness {
        #[command(flatten)]
        input: ColoredInput,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Find a double star S_{a,b} whose leaves are not all one color.
    DoubleStar {
        #[command(flatten)]
        input: ColoredInput,
        #[arg(short = 'a')]
        a: usize,
        #[arg(short = 'b')]
        b: usize,
    },
    /// Embed a tree with leaves at odd distance so its leaves get two colors.
    EmbedTree {
        #[command(flatten)]
        input: ColoredInput,
        #[arg(long)]
        tree: String,
    },
    /// Exhaustive extremal numbers over all graphs on `n` vertices.
    Enumerate(EnumerateArgs),
    /// Build a member of an extremal family.
    Construct(ConstructArgs),
    /// Run the acceptance battery.
    Verify {
        /// Comma-separated criterion ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
    },
}

#[derive(Args, Debug)]
#[group(id = "target", required = true, multiple = false)]
struct Target {
    /// Colored extremal number of this tree.
    #[arg(long)]
    tree: Option<String>,
    /// Colored extremal number of the path with 2k+1 edges.
    #[arg(short = 'k')]
    k: Option<usize>,
    /// Uncolored extremal number for paths with this many edges.
    #[arg(long, value_name = "L")]
    no_path: Option<usize>,
    /// Uncolored extremal number for cycles of length at least this.
    #[arg(long, value_name = "L")]
    no_long_cycle: Option<usize>,
    /// Conjecture table for every tree with at most this many edges and
    /// every order up to `n`.
    #[arg(long, value_name = "MAX_EDGES")]
    conjecture: Option<usize>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(short = 'n')]
    n: usize,
    #[command(flatten)]
    target: Target,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    DisjointCliques,
    BalancedBipartite,
    SharedVertexCliques,
    ModColoredCycle,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(short = 'n')]
    n: usize,
    /// Clique size for `disjoint-cliques`.
    #[arg(long)]
    size: Option<usize>,
    /// Forbidden cycle length for `shared-vertex-cliques`.
    #[arg(short = 'l')]
    l: Option<usize>,
    /// Color modulus for `mod-colored-cycle`.
    #[arg(long)]
    modulus: Option<usize>,
    /// Write `PREFIX.g6` and `PREFIX.col` instead of printing.
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
}

/// Exit statuses.
const OK: u8 = 0;
const FOUND: u8 = 1;
const INPUT: u8 = 2;
const INTERNAL: u8 = 3;

fn fail(e: &Error) -> u8 {
    eprintln!("error: {e}");
    if let Error::Invariant { trace: Some(t), .. } = e {
        if let Ok(s) = serde_json::to_string_pretty(t) {
            eprintln!("trace:\n{s}");
        }
    }
    if e.is_input_error() {
        INPUT
    } else {
        INTERNAL
    }
}

fn invariant(message: String) -> Error {
    Error::Invariant {
        message,
        trace: None,
    }
}

fn load_colored(input: &ColoredInput) -> chroma::Result<ColoredGraph> {
    let g = read_graph(&input.graph)?;
    let c = read_coloring(&input.coloring, g.n())?;
    ColoredGraph::new(g, c)
}

fn print_json(v: Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
}

fn colors_of(cg: &ColoredGraph, vs: &[usize]) -> Vec<u32> {
    vs.iter().map(|&v| cg.color(v)).collect()
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_check(json: bool, input: &ColoredInput, l: usize) -> chroma::Result<u8> {
    if l == 0 {
        return Err(Error::Argument("l must be at least 1".into()));
    }
    let cg = load_colored(input)?;
    let found = find_bichromatic_path(&cg, l);
    if let Some(p) = &found {
        validate_path(cg.graph(), p, l).map_err(invariant)?;
        if !p.is_bichromatic(cg.coloring()) {
            return Err(invariant("reported path has equal endpoint colors".into()));
        }
    }
    if json {
        print_json(json!({
            "length": l,
            "avoids": found.is_none(),
            "witness": found.as_ref().map(|p| &p.vertices),
        }));
    } else {
        match &found {
            None => println!("avoids: no path with {l} edges has endpoints of different colors"),
            Some(p) => println!(
                "witness: {} (endpoint colors {} and {})",
                join(&p.vertices),
                cg.color(p.first()),
                cg.color(p.last())
            ),
        }
    }
    Ok(if found.is_some() { FOUND } else { OK })
}

fn cmd_feasible(json: bool, graph: &Path, tree: &str, induced: bool) -> chroma::Result<u8> {
    let g = read_graph(graph)?;
    let t = read_tree(tree)?;
    let mode = if induced { CopyMode::Induced } else { CopyMode::Subgraph };
    let out = decide_feasible_with(&g, &t, mode);
    check_certificate_with(&g, &t, mode, &out)
        .map_err(|e| invariant(format!("feasibility certificate does not check: {e}")))?;
    if json {
        print_json(json!({ "tree": t.describe(), "induced": induced, "outcome": out }));
    } else {
        match &out {
            FeasibilityOutcome::Feasible { coloring } => {
                print!("feasible for {t}; coloring: {}", emit_coloring(coloring))
            }
            FeasibilityOutcome::Infeasible {
                conflict_edge,
                chain,
            } => {
                println!(
                    "infeasible for {t}: edge {} {} lies in one forced class",
                    conflict_edge.0, conflict_edge.1
                );
                for s in chain {
                    println!("  leaves {}", join(&s.members()));
                }
            }
        }
    }
    Ok(if out.is_feasible() { OK } else { FOUND })
}

fn cmd_witness(json: bool, input: &ColoredInput, k: usize) -> chroma::Result<u8> {
    let cg = load_colored(input)?;
    let (p, trace) = extract_bichromatic_path(&cg, k)?;
    validate_path(cg.graph(), &p, 2 * k + 1).map_err(invariant)?;
    if !p.is_bichromatic(cg.coloring()) {
        return Err(invariant("extracted path has equal endpoint colors".into()));
    }
    trace.replay(&cg)?;
    if json {
        print_json(json!({ "k": k, "witness": p.vertices, "trace": trace }));
    } else {
        println!(
            "witness: {} (endpoint colors {} and {})",
            join(&p.vertices),
            cg.color(p.first()),
            cg.color(p.last())
        );
        if let Some(case) = trace.case() {
            println!("cycle case: {}", json!(case).as_str().unwrap_or(""));
        }
        if trace.used_fallback() {
            println!("note: exhaustive fallback used");
        }
    }
    Ok(OK)
}

fn cmd_double_star(json: bool, input: &ColoredInput, a: usize, b: usize) -> chroma::Result<u8> {
    let cg = load_colored(input)?;
    let out = find_double_star_bichromatic(&cg, a, b)?;
    validate_double_star(cg.graph(), &out.witness, a, b).map_err(invariant)?;
    if cg.coloring().distinct_colors(out.witness.leaves()) < 2 {
        return Err(invariant("double star leaves are monochromatic".into()));
    }
    if json {
        print_json(json!({ "a": a, "b": b, "outcome": out }));
    } else {
        let w = &out.witness;
        println!("centers: {} {}", w.u, w.v);
        println!("leaves at {}: {} (colors {:?})", w.u, join(&w.a_leaves), colors_of(&cg, &w.a_leaves));
        println!("leaves at {}: {} (colors {:?})", w.v, join(&w.b_leaves), colors_of(&cg, &w.b_leaves));
        println!("route: {}", json!(out.route).as_str().unwrap_or(""));
    }
    Ok(OK)
}

fn cmd_embed_tree(json: bool, input: &ColoredInput, tree: &str) -> chroma::Result<u8> {
    let cg = load_colored(input)?;
    let t = read_tree(tree)?;
    let emb = embed_tree_bichromatic(&cg, &t)?;
    validate_embedding(cg.graph(), &t, &emb.images).map_err(invariant)?;
    let leaves = emb.leaf_images(&t);
    if cg.coloring().distinct_colors(leaves.iter().copied()) < 2 {
        return Err(invariant("embedded leaves are monochromatic".into()));
    }
    if json {
        print_json(json!({ "tree": t.describe(), "embedding": emb }));
    } else {
        println!("images: {}", join(&emb.images));
        println!("leaf images: {} (colors {:?})", join(&leaves), colors_of(&cg, &leaves));
    }
    Ok(OK)
}

fn print_report(r: &ExtremalReport) {
    println!("n = {}, {}: value {}", r.n, r.pattern, r.value);
    println!("scanned {} classes, {} satisfy the predicate", r.scanned, r.feasible_count);
    println!("extremal: {}", r.extremal.join(" "));
    for b in &r.bounds {
        let status = match (b.holds, b.tight) {
            (true, true) => "tight",
            (true, false) => "holds",
            _ => "EXCEEDED",
        };
        let proven = if b.proven_here { "" } else { " (conjectured)" };
        println!("  {}: {} = {} -> {status}{proven}", b.name, b.formula, b.bound);
        if let Some(c) = &b.characterization {
            println!(
                "    family {}: {}{}",
                c.family,
                if c.exact_match { "match" } else { "mismatch" },
                if c.family_contained { "" } else { ", family missing" }
            );
        }
    }
}

fn cmd_enumerate(json: bool, args: &EnumerateArgs) -> chroma::Result<u8> {
    let n = args.n;
    let t = &args.target;
    let report = if let Some(spec) = &t.tree {
        compute_ex_c(n, &read_tree(spec)?)?
    } else if let Some(k) = t.k {
        if k == 0 {
            return Err(Error::Argument("k must be at least 1".into()));
        }
        compute_ex_c(n, &TreePattern::path(2 * k + 1))?
    } else if let Some(l) = t.no_path {
        compute_ex_classic(n, Forbidden::PathLen(l))?
    } else if let Some(l) = t.no_long_cycle {
        compute_ex_classic(n, Forbidden::AllCyclesFrom(l))?
    } else {
        let max_edges = t.conjecture.expect("one target is required");
        let scan = conjecture_scan(max_edges, n)?;
        if json {
            print_json(json!(scan));
        } else {
            println!("{}", scan.note);
            for r in &scan.rows {
                let colored = r.ex_colored.map_or("-".to_string(), |v| v.to_string());
                println!(
                    "{:<16} k={} n={} bound={} ex={} ex_c={} {}",
                    r.tree,
                    r.k,
                    r.n,
                    r.bound,
                    r.ex_classic,
                    colored,
                    r.status()
                );
            }
        }
        return Ok(OK);
    };
    if json {
        print_json(json!(report));
    } else {
        print_report(&report);
    }
    Ok(OK)
}

fn class_spec(args: &ConstructArgs) -> chroma::Result<GraphClassSpec> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::Argument(format!("{flag} is required for this family")))
    };
    let n = args.n;
    Ok(match args.family {
        Family::DisjointCliques => GraphClassSpec::DisjointCliques {
            n,
            r: need(args.size, "--size")?,
        },
        Family::BalancedBipartite => GraphClassSpec::BalancedBipartite { n },
        Family::SharedVertexCliques => GraphClassSpec::SharedVertexCliques {
            n,
            l: need(args.l, "-l")?,
        },
        Family::ModColoredCycle => GraphClassSpec::ModColoredCycle {
            n,
            p: need(args.modulus, "--modulus")?,
        },
    })
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn cmd_construct(json: bool, args: &ConstructArgs) -> chroma::Result<u8> {
    let spec = class_spec(args)?;
    let c = construct(&spec)?;
    c.verify()?;
    let g: &Graph = c.colored.graph();
    let g6 = emit_graph6(g);
    let col = emit_coloring(c.colored.coloring());
    if let Some(prefix) = &args.out {
        let (gp, cp) = (with_ext(prefix, ".g6"), with_ext(prefix, ".col"));
        fs::write(&gp, format!("{g6}\n"))?;
        if let Err(e) = fs::write(&cp, &col) {
            let _ = fs::remove_file(&gp);
            return Err(e.into());
        }
    }
    if json {
        print_json(json!({
            "spec": spec,
            "graph6": g6,
            "edges": g.edge_count(),
            "coloring": c.colored.coloring(),
        }));
    } else if args.out.is_none() {
        println!("{g6}");
        print!("{col}");
    } else {
        println!("{g6} ({} vertices, {} edges)", g.n(), g.edge_count());
    }
    Ok(OK)
}

fn cmd_verify(json: bool, seed: u64, criteria: &[usize]) -> u8 {
    if let Some(bad) = criteria.iter().find(|&&id| !(1..=10).contains(&id)) {
        eprintln!("error: no criterion {bad}; ids run from 1 to 10");
        return INPUT;
    }
    let results = battery::run(seed, criteria, |r| {
        if !json {
            println!("{r}");
        }
    });
    let failed = results.iter().filter(|r| !r.passed).count();
    if json {
        // Timings are left out so that the output depends only on the seed.
        let rows: Vec<Value> = results
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                    "limit_secs": r.limit_secs,
                })
            })
            .collect();
        print_json(json!({ "seed": seed, "failed": failed, "criteria": rows }));
    } else {
        println!("{} passed, {failed} failed", results.len() - failed);
    }
    if failed == 0 {
        OK
    } else {
        FOUND
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers as usize)
        .build_global()
    {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(INTERNAL);
    }
    let json = cli.json;
    let result = match &cli.command {
        Command::Check { input, l } => cmd_check(json, input, *l),
        Command::Feasible {
            graph,
            tree,
            induced,
        } => cmd_feasible(json, graph, tree, *induced),
        Command::Witness { input, k } => cmd_witness(json, input, *k),
        Command::DoubleStar { input, a, b } => cmd_double_star(json, input, *a, *b),
        Command::EmbedTree { input, tree } => cmd_embed_tree(json, input, tree),
        Command::Enumerate(args) => cmd_enumerate(json, args),
        Command::Construct(args) => cmd_construct(json, args),
        Command::Verify { criteria } => Ok(cmd_verify(json, cli.seed, criteria)),
    };
    ExitCode::from(result.unwrap_or_else(|e| fail(&e)))
}
