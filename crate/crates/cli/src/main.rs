//! `corrsolve`: file-based frontend for the corrcolor toolkit.
//!
//! Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for
//! invalid input or I/O failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use corrcolor::coloring::{conflict, is_valid, Coloring};
use corrcolor::configurations::{check_basic, check_edge_fullness, find_tetrads, reduce_tetrad};
use corrcolor::corpus::{AssignmentDistribution, BoundaryChoice, CorpusSpec, GeneratorKind};
use corrcolor::correspondence::{
    inconsistency_witness, inconsistent_triangle_walk, is_consistent_global, CorrespondenceAssignment,
};
use corrcolor::discharging::{discharge, r2_outer_changes_verdict};
use corrcolor::format::{
    coloring_from_pairs, emit_ca, emit_col, emit_ext, emit_la, emit_map, emit_pg, emit_transfers_tsv, parse_ca,
    parse_col, parse_ext, parse_la, parse_pg, ExtensionScript, GraphFile,
};
use corrcolor::harness::verify_theorem;
use corrcolor::lists::{from_lists, to_lists};
use corrcolor::plane::{BoundarySet, Edge, PlaneGraph, Vertex};
use corrcolor::solver::{solve, TargetInstance, Validation};
use corrcolor::transforms::straighten;

#[derive(Parser)]
#[command(name = "corrsolve", version, about = "Correspondence colouring of plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report class membership of a graph and consistency of an assignment.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Check that a colouring is total and valid.
    CheckColoring {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        precolor: Option<PathBuf>,
    },
    /// Extend a precolouring to the whole graph.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        precolor: Option<PathBuf>,
        /// Reject instances outside the theorem's hypotheses.
        #[arg(long)]
        as_target: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relabel colours so the given edges become straight.
    Straighten {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        /// Edges as `u-v`, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_edge)]
        edges: Vec<Edge>,
        #[arg(long)]
        out: PathBuf,
        /// Per-vertex permutations, one `perm <v>: ...` line each.
        #[arg(long)]
        relabeling: Option<PathBuf>,
    },
    /// Convert between list assignments and correspondence assignments.
    Convert {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with = "to_lists", required_unless_present = "to_lists")]
        from_lists: Option<PathBuf>,
        #[arg(long)]
        to_lists: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Colour-to-label sidecar.
        #[arg(long)]
        map: PathBuf,
    },
    /// Check the structural properties of a minimal counterexample.
    Configs {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        precolor: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Reduce a tetrad, writing the smaller instance and an extension script.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        precolor: Option<PathBuf>,
        /// Path `v1,v2,v3,v4`; the first tetrad found when absent.
        #[arg(long, value_delimiter = ',')]
        tetrad: Option<Vec<Vertex>>,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_assignment: PathBuf,
        #[arg(long)]
        out_precolor: Option<PathBuf>,
        #[arg(long)]
        script: PathBuf,
    },
    /// Lift a colouring of a reduced instance to the original one.
    Extend {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        precolor: Option<PathBuf>,
        #[arg(long)]
        script: PathBuf,
        /// Colouring of the reduced instance.
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the discharging rules and check the charge bounds.
    Audit {
        #[arg(long)]
        graph: PathBuf,
        /// Boundary set, overriding the `S:` line of the graph.
        #[arg(long = "S", value_delimiter = ',')]
        s: Option<Vec<Vertex>>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Transfer log as TSV.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Solve a seeded corpus of generated target instances.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        max_n: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Kind::Mixed)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Boundary::Any)]
        boundary: Boundary,
        #[arg(long, value_enum, default_value_t = Maps::Mixed)]
        maps: Maps,
        #[arg(long)]
        saturate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Curated,
    Chains,
    Cycles,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Boundary {
    Outer,
    Single,
    Empty,
    Any,
}

#[derive(Clone, Copy, ValueEnum)]
enum Maps {
    Partial,
    Permutation,
    Mixed,
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (a, b) = s.split_once('-').ok_or_else(|| format!("expected `u-v`, got `{s}`"))?;
    let a: Vertex = a.trim().parse().map_err(|_| format!("bad vertex in `{s}`"))?;
    let b: Vertex = b.trim().parse().map_err(|_| format!("bad vertex in `{s}`"))?;
    if a == b {
        return Err(format!("loop `{s}`"));
    }
    Ok(Edge::new(a, b))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Writes to `path`, or to stdout when absent.
fn output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<GraphFile> {
    parse_pg(&read(path)?).with_context(|| path.display().to_string())
}

fn load_assignment(path: &Path, g: &PlaneGraph) -> Result<CorrespondenceAssignment> {
    let c = parse_ca(&read(path)?).with_context(|| path.display().to_string())?;
    c.check_edges(g).with_context(|| path.display().to_string())?;
    Ok(c)
}

fn load_coloring(path: &Path, n: usize) -> Result<Coloring> {
    let pairs = parse_col(&read(path)?).with_context(|| path.display().to_string())?;
    coloring_from_pairs(n, &pairs).with_context(|| path.display().to_string())
}

/// Graph, boundary, assignment and precolouring. `S` comes from the graph
/// file, or else from the precoloured vertices.
fn load_instance(graph: &Path, assignment: &Path, precolor: Option<&Path>) -> Result<TargetInstance> {
    let gf = load_graph(graph)?;
    let n = gf.graph.n();
    let c = load_assignment(assignment, &gf.graph)?;
    let f0 = match precolor {
        Some(p) => load_coloring(p, n)?,
        None => Coloring::empty(n),
    };
    let s = gf.boundary.unwrap_or_else(|| BoundarySet::new(f0.domain()));
    let inst = TargetInstance::new(gf.graph, s, c, f0);
    inst.validate(Validation::Library)
        .map_err(|e| anyhow!("invalid instance: {e}"))?;
    Ok(inst)
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { graph, assignment } => {
            let gf = load_graph(&graph)?;
            let g = &gf.graph;
            let mut out = String::new();
            writeln!(out, "vertices: {}", g.n())?;
            writeln!(out, "edges: {}", g.edge_count())?;
            writeln!(out, "faces: {}", g.faces().len())?;
            writeln!(out, "connected: {}", g.is_connected())?;
            let short = g.shortest_cycle_in_range(4, 8)?;
            match &short {
                Some(cyc) => writeln!(out, "cycle of length 4 to 8: {}", join(cyc))?,
                None => writeln!(out, "no cycle of length 4 to 8")?,
            }
            let ok = match assignment {
                None => short.is_none(),
                Some(p) => {
                    let c = load_assignment(&p, g)?;
                    writeln!(out, "k: {}", c.k())?;
                    match inconsistent_triangle_walk(&c, g) {
                        Some(w) => writeln!(out, "inconsistent triangle walk: {w}")?,
                        None => writeln!(out, "triangles consistent")?,
                    }
                    let global = is_consistent_global(&c);
                    match inconsistency_witness(&c) {
                        Some((v, a, b)) => writeln!(out, "inconsistent: colours {a} and {b} of vertex {v} are linked")?,
                        None => writeln!(out, "consistent")?,
                    }
                    global
                }
            };
            print!("{out}");
            Ok(verdict(ok))
        }
        Command::CheckColoring {
            graph,
            assignment,
            coloring,
            precolor,
        } => {
            let inst = load_instance(&graph, &assignment, precolor.as_deref())?;
            let f = load_coloring(&coloring, inst.n())?;
            let missing: Vec<Vertex> = inst.graph.vertices().filter(|&v| f.get(v).is_none()).collect();
            let ok = if let Some(e) = conflict(&inst.assignment, &f) {
                println!("conflict on edge {e}");
                false
            } else if !missing.is_empty() {
                println!("uncoloured: {}", join(&missing));
                false
            } else if !f.extends(&inst.precoloring) {
                println!("does not extend the precolouring");
                false
            } else {
                println!("valid");
                true
            };
            Ok(verdict(ok))
        }
        Command::Solve {
            graph,
            assignment,
            precolor,
            as_target,
            out,
        } => {
            let inst = load_instance(&graph, &assignment, precolor.as_deref())?;
            let mode = if as_target {
                Validation::Target
            } else {
                Validation::Library
            };
            match solve(&inst, mode).map_err(|e| anyhow!("invalid instance: {e}"))? {
                Some(f) => {
                    output(out.as_deref(), &emit_col(&f))?;
                    eprintln!("sat");
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    eprintln!("unsat");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Straighten {
            graph,
            assignment,
            edges,
            out,
            relabeling,
        } => {
            let gf = load_graph(&graph)?;
            let c = load_assignment(&assignment, &gf.graph)?;
            match straighten(&c, &gf.graph, &edges) {
                Ok((c2, r)) => {
                    write(&out, &emit_ca(&c2))?;
                    if let Some(p) = relabeling {
                        let mut text = format!("relabeling k={}\n", r.k());
                        for v in 1..=r.n() {
                            writeln!(text, "perm {v}: {}", join(r.perm(v)))?;
                        }
                        write(&p, &text)?;
                    }
                    println!("straightened {} edges", edges.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("cannot straighten: {e}");
                    if let Some(cyc) = e.cycle() {
                        println!("cycle: {}", join(cyc));
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Convert {
            graph,
            from_lists: from,
            to_lists: to,
            out,
            map,
        } => {
            let gf = load_graph(&graph)?;
            let g = &gf.graph;
            if let Some(p) = from {
                let lists = parse_la(&read(&p)?).with_context(|| p.display().to_string())?;
                let (c, m) = from_lists(g, &lists)?;
                write(&out, &emit_ca(&c))?;
                write(&map, &emit_map(&m))?;
            } else if let Some(p) = to {
                let c = load_assignment(&p, g)?;
                let (l, m) = to_lists(g, &c)?;
                write(&out, &emit_la(&l))?;
                write(&map, &emit_map(&m))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Configs {
            graph,
            assignment,
            precolor,
            report,
        } => {
            let inst = load_instance(&graph, &assignment, precolor.as_deref())?;
            let (g, s) = (&inst.graph, &inst.boundary);
            let mut text = String::new();
            let basic = check_basic(g, s);
            for chk in &basic.checks {
                match &chk.witness {
                    None => writeln!(text, "({}) pass", chk.property.letter())?,
                    Some(w) => writeln!(text, "({}) fail: {w}", chk.property.letter())?,
                }
            }
            let fullness = check_edge_fullness(g, s, &inst.assignment);
            for issue in &fullness {
                writeln!(text, "fullness: {issue}")?;
            }
            let tetrads = find_tetrads(g, s);
            for t in &tetrads {
                writeln!(text, "tetrad: {t}")?;
            }
            let clean = basic.all_passed() && fullness.is_empty() && tetrads.is_empty();
            writeln!(
                text,
                "{}",
                if clean {
                    "no reducible configuration"
                } else {
                    "reducible configuration found"
                }
            )?;
            output(report.as_deref(), &text)?;
            Ok(verdict(clean))
        }
        Command::Reduce {
            graph,
            assignment,
            precolor,
            tetrad,
            out_graph,
            out_assignment,
            out_precolor,
            script,
        } => {
            let inst = load_instance(&graph, &assignment, precolor.as_deref())?;
            let found = find_tetrads(&inst.graph, &inst.boundary);
            let t = match &tetrad {
                None => found.first().ok_or_else(|| anyhow!("no tetrad found"))?,
                Some(path) => {
                    let path: [Vertex; 4] = path
                        .as_slice()
                        .try_into()
                        .map_err(|_| anyhow!("--tetrad needs four vertices"))?;
                    found
                        .iter()
                        .find(|t| t.path == path || t.path == [path[3], path[2], path[1], path[0]])
                        .ok_or_else(|| anyhow!("{} is not a tetrad", join(&path)))?
                }
            };
            let r = reduce_tetrad(&inst, t).map_err(|e| anyhow!("reduction failed: {e}"))?;
            write(&out_graph, &emit_pg(&r.reduced.graph, Some(&r.reduced.boundary)))?;
            write(&out_assignment, &emit_ca(&r.reduced.assignment))?;
            if let Some(p) = out_precolor {
                write(&p, &emit_col(&r.reduced.precoloring))?;
            }
            write(&script, &emit_ext(&ExtensionScript::of(&r)))?;
            println!("reduced {} to {} vertices", r.original.n(), r.reduced.n());
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend {
            graph,
            assignment,
            precolor,
            script,
            coloring,
            out,
        } => {
            let inst = load_instance(&graph, &assignment, precolor.as_deref())?;
            let ext = parse_ext(&read(&script)?).with_context(|| script.display().to_string())?;
            let t = find_tetrads(&inst.graph, &inst.boundary)
                .into_iter()
                .find(|t| t.path == ext.tetrad)
                .ok_or_else(|| anyhow!("script tetrad {} is not a tetrad of the graph", join(&ext.tetrad)))?;
            let r = reduce_tetrad(&inst, &t).map_err(|e| anyhow!("reduction failed: {e}"))?;
            if !ext.matches(&r) {
                bail!("script does not match the reduction of this instance");
            }
            let f = load_coloring(&coloring, r.reduced.n())?;
            let lifted = r.extend(&f).map_err(|e| anyhow!("cannot extend: {e}"))?;
            debug_assert!(is_valid(&inst.assignment, &lifted));
            output(out.as_deref(), &emit_col(&lifted))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Audit { graph, s, out, log } => {
            let gf = load_graph(&graph)?;
            let g = &gf.graph;
            let s = match s {
                Some(vs) => {
                    if let Some(v) = vs.iter().find(|&&v| v == 0 || v > g.n()) {
                        bail!("vertex {v} of --S is not in the graph");
                    }
                    BoundarySet::new(vs)
                }
                None => gf.boundary.unwrap_or_default(),
            };
            let (ledger, report) = discharge(g, &s)?;
            let mut text = String::new();
            writeln!(text, "total: {}", report.total)?;
            for v in g.vertices() {
                writeln!(text, "v{v}: {}", ledger.vertex(v))?;
            }
            for id in 0..g.faces().len() {
                let tag = if Some(id) == g.outer_face() { " (outer)" } else { "" };
                writeln!(text, "f{id}{tag}: {}", ledger.face(id))?;
            }
            for issue in &report.issues {
                writeln!(text, "violation: {issue}")?;
            }
            if r2_outer_changes_verdict(g, &s)? {
                writeln!(text, "note: letting the outer face send by R2 changes the verdict")?;
            }
            writeln!(text, "{}", if report.is_clean() { "clean" } else { "violations found" })?;
            output(out.as_deref(), &text)?;
            if let Some(p) = log {
                write(&p, &emit_transfers_tsv(&ledger))?;
            }
            Ok(verdict(report.is_clean()))
        }
        Command::Verify {
            seed,
            max_n,
            trials,
            jobs,
            kind,
            boundary,
            maps,
            saturate,
            out,
            tsv,
        } => {
            let spec = CorpusSpec {
                kind: match kind {
                    Kind::Curated => GeneratorKind::Curated,
                    Kind::Chains => GeneratorKind::TriangleChains,
                    Kind::Cycles => GeneratorKind::CycleSums,
                    Kind::Mixed => GeneratorKind::Mixed,
                },
                max_n,
                seed,
                assignments: match maps {
                    Maps::Partial => AssignmentDistribution::UniformPartial,
                    Maps::Permutation => AssignmentDistribution::FullPermutation,
                    Maps::Mixed => AssignmentDistribution::Mixed,
                },
                boundary: match boundary {
                    Boundary::Outer => BoundaryChoice::Outer,
                    Boundary::Single => BoundaryChoice::Single,
                    Boundary::Empty => BoundaryChoice::Empty,
                    Boundary::Any => BoundaryChoice::Any,
                },
                saturate,
            };
            let summary = verify_theorem(&spec, trials, jobs)?;
            output(out.as_deref(), &summary.to_text())?;
            if let Some(p) = tsv {
                write(&p, &summary.to_tsv())?;
            }
            Ok(verdict(summary.unsat() == 0))
        }
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
