//! The `echyper` command line.
//!
//! Exit codes: 0 success (or the property holds), 1 the property fails or
//! the artifact is invalid, 2 usage, parse or I/O error. Reports go to
//! standard output as `key: value` lines, or as one JSON object with the
//! global `--json` flag. Diagnostics go to standard error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::builders::{build_from_design, build_from_mols, BuildError, Built};
use crate::checker::{check, max_ec, CheckOptions, Engine};
use crate::designs::{
    complete_mols, design_params, fano, inversive_plane, lambda_ij, projective_plane,
    validate_design, Design,
};
use crate::format::{
    parse_design, parse_hypergraph, parse_mols, write_design, write_hypergraph, write_mols,
};
use crate::galois::prime_power;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::random::{estimate_ec_fraction, union_bound, RandomModel};
use crate::report::{check_report, set_text, set_value, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "echyper",
    version,
    about = "Build and certify n-existentially closed uniform hypergraphs"
)]
struct Cli {
    /// Emit the report as a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Optimized,
    Naive,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Optimized => Engine::Optimized,
            EngineArg::Naive => Engine::Naive,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructKind {
    Mols,
    Pg,
    Inversive,
    Fano,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BuildKind {
    FromMols,
    FromDesign,
}

#[derive(clap::Args, Debug)]
struct CheckFlags {
    /// Worker threads (the output does not depend on this).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[arg(long, value_enum, default_value_t = EngineArg::Optimized)]
    engine: EngineArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a hypergraph is n-e.c.
    Check {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        /// List the first witness of every (S, T) pair.
        #[arg(long)]
        witnesses: bool,
        #[command(flatten)]
        flags: CheckFlags,
    },
    /// Largest n for which a hypergraph is n-e.c.
    Maxec {
        input: PathBuf,
        #[command(flatten)]
        flags: CheckFlags,
    },
    /// Write a finite-geometry design or a complete MOLS family.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        /// Field order (ignored for fano).
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a hypergraph from a MOLS file or a design file.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        /// Uniformity; required for from-design, must equal q-1 for from-mols.
        #[arg(long)]
        h: Option<usize>,
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate the n-e.c. fraction of seeded random hypergraphs.
    Random {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        threads: u32,
    },
    /// Validate a design file and print its parameters.
    Validate { input: PathBuf },
    /// Write the complement of a hypergraph.
    Complement {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the sub-hypergraph induced on a vertex set (relabeled 0..).
    Induce {
        input: PathBuf,
        /// Comma-separated vertices.
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<Vertex>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the hypergraph with one vertex deleted (relabeled 0..).
    DeleteVertex {
        input: PathBuf,
        #[arg(long)]
        vertex: Vertex,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A command failure: exit code plus diagnostic.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_FAIL,
        message: message.into(),
    }
}

/// What a successful command prints, and its exit code.
struct Outcome {
    code: i32,
    report: Report,
    /// Printed verbatim instead of the report (file bodies sent to stdout).
    raw: Option<String>,
}

fn outcome(code: i32, report: Report) -> Outcome {
    Outcome {
        code,
        report,
        raw: None,
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(o) => {
            let text = o.raw.unwrap_or_else(|| o.report.render(cli.json));
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Check {
            input,
            n,
            witnesses,
            flags,
        } => cmd_check(&input, n, witnesses, &flags),
        Command::Maxec { input, flags } => cmd_maxec(&input, &flags),
        Command::Construct { kind, q, out } => cmd_construct(kind, q, &out),
        Command::Build {
            kind,
            h,
            input,
            out,
        } => cmd_build(kind, h, &input, &out),
        Command::Random {
            h,
            m,
            p,
            n,
            trials,
            seed,
            threads,
        } => cmd_random(h, m, p, n, trials, seed, threads as usize),
        Command::Validate { input } => cmd_validate(&input),
        Command::Complement { input, out } => {
            let hg = read_hypergraph(&input)?;
            emit_hypergraph(
                &hg.complement(),
                &format!("complement of {}", input.display()),
                out.as_deref(),
            )
        }
        Command::Induce {
            input,
            vertices,
            out,
        } => {
            let hg = read_hypergraph(&input)?;
            let (sub, _) = hg.induced(&vertices).map_err(|e| usage(e.to_string()))?;
            let note = format!("induced on {} of {}", set_text(&vertices), input.display());
            emit_hypergraph(&sub, &note, out.as_deref())
        }
        Command::DeleteVertex { input, vertex, out } => {
            let hg = read_hypergraph(&input)?;
            let (sub, _) = hg.delete_vertex(vertex).map_err(|e| usage(e.to_string()))?;
            let note = format!("vertex {vertex} deleted from {}", input.display());
            emit_hypergraph(&sub, &note, out.as_deref())
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    parse_hypergraph(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_design(path: &Path) -> Result<Design, Failure> {
    parse_design(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn check_options(flags: &CheckFlags, witnesses: bool) -> CheckOptions {
    CheckOptions {
        engine: flags.engine.into(),
        threads: flags.threads as usize,
        record_witnesses: witnesses,
    }
}

fn cmd_check(input: &Path, n: usize, witnesses: bool, flags: &CheckFlags) -> CmdResult {
    let hg = read_hypergraph(input)?;
    let result =
        check(&hg, n, &check_options(flags, witnesses)).map_err(|e| usage(e.to_string()))?;
    let code = if result.holds { EXIT_OK } else { EXIT_FAIL };
    Ok(outcome(code, check_report(&hg, &result)))
}

fn cmd_maxec(input: &Path, flags: &CheckFlags) -> CmdResult {
    let hg = read_hypergraph(input)?;
    let found = max_ec(&hg, &check_options(flags, false)).map_err(|e| usage(e.to_string()))?;
    let failure = &found.failure;
    let cx = failure.counterexample.as_ref();
    let mut r = Report::new();
    r.push("max_ec", found.max)
        .push("h", hg.h())
        .push("m", hg.m())
        .push("edges", hg.edge_count())
        .push("failing_n", failure.n)
        .push(
            "counterexample_S",
            cx.map_or(Value::Null, |c| set_value(&c.s)),
        )
        .push(
            "counterexample_T",
            cx.map_or(Value::Null, |c| set_value(&c.t)),
        )
        .push("too_few_vertices", failure.stats.too_few_vertices);
    let code = if found.max >= 1 { EXIT_OK } else { EXIT_FAIL };
    Ok(outcome(code, r))
}

fn design_summary(r: &mut Report, d: &Design) {
    r.push("t", d.t())
        .push("v", d.v())
        .push("k", d.k())
        .push("lambda", d.lambda())
        .push("b", d.b());
}

fn cmd_construct(kind: ConstructKind, q: Option<u64>, out: &Path) -> CmdResult {
    let q = match kind {
        ConstructKind::Fano => None,
        _ => {
            let q = q.ok_or_else(|| usage("--q is required for this kind"))?;
            if prime_power(q).is_none() {
                return Err(usage(format!("q = {q} is not a prime power")));
            }
            Some(q)
        }
    };
    let mut r = Report::new();
    let kind_name = match kind {
        ConstructKind::Mols => "mols",
        ConstructKind::Pg => "pg",
        ConstructKind::Inversive => "inversive",
        ConstructKind::Fano => "fano",
    };
    r.push("kind", kind_name);
    let provenance = match q {
        Some(q) => format!("built-from: {kind_name} q={q}"),
        None => format!("built-from: {kind_name}"),
    };
    if let Some(q) = q {
        r.push("q", q);
    }
    let text = if let ConstructKind::Mols = kind {
        let q = q.expect("mols has q");
        let set = complete_mols(q).map_err(|e| usage(e.to_string()))?;
        r.push("order", set.order())
            .push("squares", set.len())
            .push("complete", set.is_complete());
        write_mols(&set, &[provenance])
    } else {
        let design = match kind {
            ConstructKind::Pg => projective_plane(q.expect("pg has q")),
            ConstructKind::Inversive => inversive_plane(q.expect("inversive has q")),
            _ => Ok(fano()),
        }
        .map_err(|e| usage(e.to_string()))?;
        let report = validate_design(&design);
        if !report.valid {
            return Err(invalid(
                "constructed design failed validation; nothing written",
            ));
        }
        design_summary(&mut r, &design);
        r.push("valid", true);
        write_design(&design, &[provenance])
    };
    write_text(out, &text)?;
    r.push("out", out.display().to_string());
    Ok(outcome(EXIT_OK, r))
}

fn build_error(e: BuildError) -> Failure {
    match e {
        BuildError::InvalidDesign { .. } => invalid(e.to_string()),
        _ => usage(e.to_string()),
    }
}

fn cmd_build(kind: BuildKind, h: Option<usize>, input: &Path, out: &Path) -> CmdResult {
    let built: Built = match kind {
        BuildKind::FromMols => {
            let set = parse_mols(&read_text(input)?)
                .map_err(|e| usage(format!("{}: {e}", input.display())))?;
            if let Some(h) = h {
                if h + 1 != set.order() {
                    return Err(usage(format!(
                        "h = {h} does not match MOLS of order {} (h must be {})",
                        set.order(),
                        set.order().saturating_sub(1)
                    )));
                }
            }
            build_from_mols(&set).map_err(build_error)?
        }
        BuildKind::FromDesign => {
            let h = h.ok_or_else(|| usage("--h is required for from-design"))?;
            build_from_design(&read_design(input)?, h).map_err(build_error)?
        }
    };
    let mut comments = vec![format!("built-from: {}", built.provenance)];
    if let Some(g) = &built.guarantee {
        comments.push(format!("guarantee: {}-e.c. ({})", g.level, g.reason));
    }
    write_text(out, &write_hypergraph(&built.hypergraph, &comments))?;

    let hg = &built.hypergraph;
    let mut r = Report::new();
    r.push("provenance", built.provenance.clone())
        .push("h", hg.h())
        .push("m", hg.m())
        .push("raw_edges", built.counts.raw_edges)
        .push("unique_edges", built.counts.unique_edges)
        .push(
            "expected_edges",
            built
                .expected_edges
                .map_or(Value::Null, |e| Value::from(e as u64)),
        )
        .push(
            "guaranteed_ec",
            built
                .guarantee
                .as_ref()
                .map_or(Value::Null, |g| Value::from(g.level)),
        )
        .push("out", out.display().to_string());
    let code = if built.counts_match() {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    Ok(outcome(code, r))
}

fn cmd_random(
    h: usize,
    m: usize,
    p: f64,
    n: usize,
    trials: usize,
    seed: u64,
    threads: usize,
) -> CmdResult {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    let model = RandomModel::new(h, m, p, seed).map_err(|e| usage(e.to_string()))?;
    let bound = union_bound(n, h, m, p).map_err(|e| usage(e.to_string()))?;
    let est = estimate_ec_fraction(&model, n, trials, threads).map_err(|e| usage(e.to_string()))?;
    let verdicts: String = est
        .verdicts
        .iter()
        .map(|&v| if v { '1' } else { '0' })
        .collect();
    let mut r = Report::new();
    r.push("h", h)
        .push("m", m)
        .push("p", p)
        .push("n", n)
        .push("trials", trials)
        .push("seed", seed)
        .push("fraction", est.fraction)
        .push("failure_fraction", 1.0 - est.fraction)
        .push("union_bound", format!("{:e}", bound.value()))
        .push("ln_union_bound", bound.ln_value)
        .push("verdicts", verdicts)
        .push("trial_seeds", Value::from(est.seeds));
    Ok(outcome(EXIT_OK, r))
}

fn ratio_text(x: &num_rational::BigRational) -> String {
    x.to_string()
}

fn cmd_validate(input: &Path) -> CmdResult {
    let design = read_design(input)?;
    let v = validate_design(&design);
    let mut r = Report::new();
    r.push("valid", v.valid);
    design_summary(&mut r, &design);
    r.push("min_coverage", v.min_coverage)
        .push("max_coverage", v.max_coverage)
        .push(
            "first_violation",
            v.first_violation.as_ref().map_or(Value::Null, |(s, c)| {
                Value::from(format!("{} covered {c}", set_text(s)))
            }),
        );
    if let Ok(params) = design_params(&design) {
        let reps = design.replication();
        let r_observed = match reps.iter().min() {
            Some(lo) if reps.iter().all(|x| x == lo) => Value::from(*lo),
            _ => Value::Null,
        };
        r.push("b_formula", ratio_text(&params.b_formula))
            .push("r_formula", ratio_text(&params.r_formula))
            .push("r", r_observed)
            .push("params_consistent", params.consistent());
    }
    let mut table = Vec::new();
    for i in 0..=design.t() {
        for j in 0..=design.t() - i {
            let value = lambda_ij(&design, i, j).map_err(|e| usage(e.to_string()))?;
            table.push(format!("i={i} j={j} value={}", ratio_text(&value)));
        }
    }
    r.push_lines("lambda_ij", table);
    let code = if v.valid { EXIT_OK } else { EXIT_FAIL };
    Ok(outcome(code, r))
}

fn emit_hypergraph(hg: &Hypergraph, note: &str, out: Option<&Path>) -> CmdResult {
    let text = write_hypergraph(hg, &[note.to_string()]);
    match out {
        Some(path) => {
            write_text(path, &text)?;
            let mut r = Report::new();
            r.push("h", hg.h())
                .push("m", hg.m())
                .push("edges", hg.edge_count())
                .push("out", path.display().to_string());
            Ok(outcome(EXIT_OK, r))
        }
        None => Ok(Outcome {
            code: EXIT_OK,
            report: Report::new(),
            raw: Some(text),
        }),
    }
}
