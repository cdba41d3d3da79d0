use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use cdfree::domino::{bag_decomposition, compute_attachment, validate_decomposition, validate_decomposition_without};
use cdfree::format;
use cdfree::generators;
use cdfree::kernelizer::{build_u, compress, kernelize_full, mark_and_extract_s, u_bound, Compression, MarkingResult};
use cdfree::obstructions::{all_obstructions, build_modulator, is_hds, ModulatorOutcome};
use cdfree::reductions::{annotated_to_cnf, cnf_to_3sat, sat3_to_graph};
use cdfree::solvers::{brute_force_min_hds, solve_branching, ScaleError, DEFAULT_MAX_SUBSETS};
use cdfree::{EdgeSet, Graph};

#[derive(Parser)]
#[command(name = "cdfree", version, about = "Edge deletion to {claw, diamond}-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the instance with the bounded search tree.
    Solve {
        input: PathBuf,
        /// Budget; defaults to the file's `k` line.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide the instance by exhaustive subset enumeration.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 64)]
        max_edges: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_SUBSETS)]
        max_subsets: u128,
        #[command(flatten)]
        out: Output,
    },
    /// Emit an equivalent plain instance through compression, CNF and the
    /// gadget reduction.
    Kernelize {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Refuse when the annotated graph has more 4-subsets than this.
        #[arg(long, default_value_t = 50_000_000)]
        max_quads: u128,
        #[command(flatten)]
        out: Output,
    },
    /// Emit the annotated instance.
    Compress {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the bag decomposition of an obstruction-free graph.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Build the gadget graph for a strict 3-CNF formula.
    ReduceSat {
        input: PathBuf,
        /// Normalise arbitrary CNF to strict 3-CNF first.
        #[arg(long)]
        normalize: bool,
        /// Where to write the vertex layout.
        #[arg(long)]
        layout: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Encode an annotated instance as DIMACS CNF.
    EncodeAnnotated {
        input: PathBuf,
        #[arg(long, default_value_t = 50_000_000)]
        max_quads: u128,
        #[command(flatten)]
        out: Output,
    },
    /// Check a deletion list against a graph.
    Verify {
        graph: PathBuf,
        deletions: PathBuf,
        /// Also require at most this many deletions.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Erdős–Rényi graph.
    GenRandom {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Line graph of a random triangle-free graph on `--h-vertices` vertices.
    GenDomino {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        h_vertices: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Uniform strict 3-CNF.
    #[command(name = "gen-3sat")]
    Gen3sat {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run the structural checks on a graph and print a report.
    CheckInvariants {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

/// Raised when a guard refuses an input; maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Refusal(String);

fn main() -> ExitCode {
    // Usage errors exit 1; 2 is reserved for scale refusals.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Refusal>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_instance(path: &Path, k: Option<usize>) -> Result<(Graph, usize)> {
    let doc = format::parse_document(&read(path)?).with_context(|| path.display().to_string())?;
    if !doc.annotated.is_empty() {
        bail!("{}: annotated instances are not accepted here", path.display());
    }
    let Some(k) = k.or(doc.k) else {
        bail!("no budget: pass --k or add a `k` line to the input");
    };
    Ok((doc.graph, k))
}

fn solution_text(witness: Option<&EdgeSet>) -> String {
    match witness {
        Some(f) => format!("SOLUTION yes\n{}", format::write_deletions(f)),
        None => "SOLUTION no\n".to_string(),
    }
}

fn quads(n: usize) -> u128 {
    let n = n as u128;
    if n < 4 {
        0
    } else {
        n * (n - 1) * (n - 2) * (n - 3) / 24
    }
}

fn guard_quads(n: usize, limit: u128) -> Result<()> {
    if quads(n) > limit {
        return Err(Refusal(format!(
            "encoding {n} vertices means {} 4-subsets, above the limit of {limit} (raise --max-quads)",
            quads(n)
        ))
        .into());
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve { input, k, out } => {
            let (g, k) = read_instance(&input, k)?;
            let result = solve_branching(&g, k);
            emit(&out, &solution_text(result.witness.as_ref()))?;
        }
        Command::Oracle {
            input,
            k,
            max_edges,
            max_subsets,
            out,
        } => {
            let (g, k) = read_instance(&input, k)?;
            if g.m() > max_edges {
                return Err(Refusal(format!(
                    "{} edges exceed the oracle limit of {max_edges} (raise --max-edges)",
                    g.m()
                ))
                .into());
            }
            let bf = brute_force_min_hds(&g, k, None, max_subsets).map_err(|e: ScaleError| Refusal(e.to_string()))?;
            emit(&out, &solution_text(bf.result.witness.as_ref()))?;
        }
        Command::Kernelize { input, k, max_quads, out } => {
            let (g, k) = read_instance(&input, k)?;
            if let Compression::Annotated { stats, .. } = compress(&g, k)? {
                guard_quads(stats.u, max_quads)?;
            }
            let kernel = kernelize_full(&g, k)?;
            emit(&out, &format::write_instance(&kernel.graph, kernel.k))?;
        }
        Command::Compress { input, k, out } => {
            let (g, k) = read_instance(&input, k)?;
            let compression = compress(&g, k)?;
            match &compression {
                Compression::TrivialYes => eprintln!("trivial yes: no obstruction"),
                Compression::TrivialNo => eprintln!("trivial no: more than {k} disjoint obstructions"),
                Compression::Annotated { stats, .. } => eprintln!(
                    "|X| = {}, marked = {}, |S| = {}, |U| = {}",
                    stats.modulator, stats.marked, stats.s, stats.u
                ),
            }
            emit(&out, &format::write_annotated(&compression.to_instance()))?;
        }
        Command::Decompose { input, out } => {
            let g = format::parse_graph(&read(&input)?).with_context(|| input.display().to_string())?;
            let d = bag_decomposition(&g)?;
            let mut text = String::new();
            for (id, bag) in d.bags.iter().enumerate() {
                let vs: Vec<String> = bag.iter().map(|v| (v + 1).to_string()).collect();
                text += &format!("b {}: {}\n", id + 1, vs.join(" "));
            }
            emit(&out, &text)?;
        }
        Command::ReduceSat {
            input,
            normalize,
            layout,
            out,
        } => {
            let mut phi = format::parse_dimacs_cnf(&read(&input)?).with_context(|| input.display().to_string())?;
            if normalize {
                phi = cnf_to_3sat(&phi);
            }
            let (g, k, gadgets) = sat3_to_graph(&phi)?;
            eprintln!("|V| = {}, |E| = {}, k = {k}", g.n(), g.m());
            emit(&out, &format::write_instance(&g, k))?;
            if let Some(path) = layout {
                fs::write(&path, gadgets.to_text()).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::EncodeAnnotated { input, max_quads, out } => {
            let a = format::parse_annotated(&read(&input)?).with_context(|| input.display().to_string())?;
            guard_quads(a.graph.n(), max_quads)?;
            let (phi, _) = annotated_to_cnf(&a);
            emit(&out, &format::write_dimacs_cnf(&phi))?;
        }
        Command::Verify { graph, deletions, k } => {
            let g = format::parse_document(&read(&graph)?)
                .with_context(|| graph.display().to_string())?
                .graph;
            let f = format::parse_deletions(&read(&deletions)?).with_context(|| deletions.display().to_string())?;
            if let Some(e) = f.iter().find(|e| !g.contains_edge(**e)) {
                bail!("deletion {} {} is not an edge of the graph", e.u() + 1, e.v() + 1);
            }
            let hds = is_hds(&g, &f);
            let within = k.is_none_or(|k| f.len() <= k);
            println!("HDS {} ({} deletions)", if hds { "yes" } else { "no" }, f.len());
            if let Some(k) = k {
                println!("BUDGET {} (k = {k})", if within { "ok" } else { "exceeded" });
            }
        }
        Command::GenRandom { seed, n, p, out } => {
            emit(&out, &format::write_graph(&generators::gen_random(seed, n, p)))?;
        }
        Command::GenDomino {
            seed,
            h_vertices,
            p,
            out,
        } => {
            emit(&out, &format::write_graph(&generators::gen_domino(seed, h_vertices, p)))?;
        }
        Command::Gen3sat { seed, n, m, out } => {
            let phi = generators::gen_3sat(seed, n, m)?;
            emit(&out, &format::write_dimacs_cnf(&phi))?;
        }
        Command::CheckInvariants { input, k, out } => {
            let doc = format::parse_document(&read(&input)?).with_context(|| input.display().to_string())?;
            let report = check_invariants(&doc.graph, k.or(doc.k));
            let failed = report.iter().any(|(ok, _)| !ok);
            let text: String = report
                .iter()
                .map(|(ok, line)| format!("{} {line}\n", if *ok { "ok  " } else { "FAIL" }))
                .collect();
            emit(&out, &text)?;
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_invariants(g: &Graph, k: Option<usize>) -> Vec<(bool, String)> {
    let mut report = Vec::new();
    let obstructions = all_obstructions(g);
    report.push((true, format!("graph: n = {}, m = {}, {} induced obstructions", g.n(), g.m(), obstructions.len())));
    if obstructions.is_empty() {
        match bag_decomposition(g).map(|d| (validate_decomposition(g, &d), d.len())) {
            Ok((Ok(()), bags)) => report.push((true, format!("decomposition: {bags} bags, all properties hold"))),
            Ok((Err(v), _)) => report.push((false, format!("decomposition: {v:?}"))),
            Err(e) => report.push((false, format!("decomposition: {e}"))),
        }
    }
    let Some(k) = k else {
        return report;
    };
    let modulator = match build_modulator(g, k) {
        ModulatorOutcome::NoInstance { packing } => {
            report.push((true, format!("modulator: {} disjoint obstructions exceed k = {k}", packing.len())));
            return report;
        }
        ModulatorOutcome::Modulator(m) => m,
    };
    report.push((
        modulator.x.len() <= 4 * k,
        format!("modulator: |X| = {} (bound {})", modulator.x.len(), 4 * k),
    ));
    let removed = modulator.mask(g.n());
    let d = match cdfree::domino::decompose_without(g, &removed) {
        Ok(d) => d,
        Err(e) => {
            report.push((false, format!("G - X: {e}")));
            return report;
        }
    };
    report.push(match validate_decomposition_without(g, &removed, &d) {
        Ok(()) => (true, format!("G - X decomposition: {} bags, all properties hold", d.len())),
        Err(v) => (false, format!("G - X decomposition: {v:?}")),
    });
    if let Err(v) = compute_attachment(g, &modulator.x, &d) {
        report.push((false, format!("attachment: {v}")));
        return report;
    }
    report.push((true, "attachment: at most 2 bags per x, exactly 1 per neighbour".to_string()));
    match mark_and_extract_s(g, &modulator, k) {
        Ok(marking) => {
            let x = modulator.x.len();
            report.push((
                marking.marked.len() <= MarkingResult::marked_bound(x, k),
                format!("marking: {} bags (bound {})", marking.marked.len(), MarkingResult::marked_bound(x, k)),
            ));
            report.push((
                marking.s.len() <= MarkingResult::s_bound(x, k),
                format!("S: {} vertices (bound {})", marking.s.len(), MarkingResult::s_bound(x, k)),
            ));
            let u = build_u(g, &marking.s, k);
            report.push((
                u.graph.n() as u128 <= u_bound(marking.s.len()),
                format!("U: {} vertices (bound {})", u.graph.n(), u_bound(marking.s.len())),
            ));
        }
        Err(e) => report.push((false, format!("marking: {e}"))),
    }
    report
}
