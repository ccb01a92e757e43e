use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperindex::format::{parse_uhg_bytes, report_to_json_pretty, serialize_uhg};
use hyperindex::hypergraph::{blocks, cartesian_product_n, coalesce, generate, GeneratorKind, GeneratorSpec};
use hyperindex::indices::{eigenvector_exponents, predict_blocks, stabilizing_index, IndexReport};
use hyperindex::oracle::{
    brute_cyclic_jobs, brute_stabilizing_jobs, lift_and_check, power_iteration, DEFAULT_CAP, DEFAULT_MAX_ITER,
    DEFAULT_RESIDUAL_THRESHOLD, DEFAULT_TOLERANCE,
};
use hyperindex::{modring, Error, UniformHypergraph};

#[derive(Parser)]
#[command(name = "hyperindex", version, about = "Stabilizing and cyclic indices of uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stabilizing index, cyclic index and eigenvariety shape.
    Index {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Smith normal form of the incidence matrix over Z_m.
    Snf {
        file: PathBuf,
        /// Re-multiply P·B·Q and compare with the diagonal form.
        #[arg(long)]
        verify: bool,
    },
    /// Identify vertex V1 of FILE1 with vertex V2 of FILE2.
    Coalesce {
        file1: PathBuf,
        v1: usize,
        file2: PathBuf,
        v2: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cartesian product of two or more hypergraphs, folded left.
    Cartesian {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a generated hypergraph.
    Generate(GenerateArgs),
    /// Block decomposition and cut vertices.
    Blocks { file: PathBuf },
    /// Cross-check the indices against independent oracles.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// single_edge, path_hypertree, random_hypertree, complete or loose_cycle
    #[arg(long)]
    kind: String,
    #[arg(long)]
    m: usize,
    /// Edge count for hypertrees and loose cycles.
    #[arg(long)]
    s: Option<usize>,
    /// Vertex count for complete hypergraphs.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Exhaustive enumeration of the kernel and of all colorings.
    #[arg(long)]
    brute: bool,
    /// Power iteration and lifted eigenvector residuals.
    #[arg(long)]
    spectral: bool,
    /// Block decomposition: predicted indices against direct ones.
    #[arg(long)]
    compose: bool,
    /// Largest state space or eigenvector count an oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

enum Failure {
    /// exit 1
    Input(String),
    /// exit 2
    Precondition(String),
    /// exit 3, details already printed
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<UniformHypergraph, Failure> {
    let bytes = std::fs::read(path).map_err(|e| io_failure(path, e))?;
    parse_uhg_bytes(&bytes)
        .map(|d| d.hypergraph)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        return "-".into();
    }
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn report_table(r: &IndexReport) -> String {
    let rows = [
        ("m", r.m.to_string()),
        ("n", r.n.to_string()),
        ("k", r.k.to_string()),
        ("invariant divisors", join(&r.invariant_divisors)),
        ("rank", r.rank().to_string()),
        ("free rank", r.free_rank.to_string()),
        ("stabilizing index", r.stabilizing_index.to_string()),
        ("cyclic index", r.cyclic_index.to_string()),
        ("decomposition", r.decomposition.to_string().replace("Z_m", &format!("Z_{}", r.m))),
    ];
    rows.iter().map(|(k, v)| format!("{k:<20}{v}\n")).collect()
}

fn cmd_index(file: &Path, json: bool) -> Result<(), Failure> {
    let g = load(file)?;
    let r = stabilizing_index(&g)?;
    if json {
        emit(&(report_to_json_pretty(&r) + "\n"), None)
    } else {
        emit(&report_table(&r), None)
    }
}

fn cmd_snf(file: &Path, verify: bool) -> Result<(), Failure> {
    let g = load(file)?;
    let b = g.incidence_matrix();
    let d = modring::snf(&b);
    let rank = d.rank();
    let free = g.vertex_count().saturating_sub(1 + rank);
    let s = modring::power_times_product(g.modulus(), free, d.divisors.iter().copied());
    let mut out = format!(
        "invariant divisors: {}\nr: {rank}\nn-1-r: {free}\nm^(n-1-r)·Πd_i: {s}\n",
        join(&d.divisors)
    );
    let failed = if verify {
        match d.verify(&b) {
            Ok(()) => {
                out.push_str("verify: PASS P·B·Q equals the diagonal form\n");
                false
            }
            Err(e) => {
                out.push_str(&format!("verify: FAIL {e}\n"));
                true
            }
        }
    } else {
        false
    };
    emit(&out, None)?;
    if failed {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn cmd_generate(a: &GenerateArgs) -> Result<(), Failure> {
    let kind: GeneratorKind = a.kind.parse()?;
    let count = match kind {
        GeneratorKind::SingleEdge => 0,
        GeneratorKind::Complete => a
            .n
            .ok_or_else(|| Failure::Precondition("--n is required for complete".into()))?,
        _ => a
            .s
            .ok_or_else(|| Failure::Precondition(format!("--s is required for {}", kind.name())))?,
    };
    let g = generate(&GeneratorSpec { kind, m: a.m, count, seed: a.seed })?;
    emit(&serialize_uhg(&g), a.output.as_deref())
}

fn cmd_blocks(file: &Path) -> Result<(), Failure> {
    let g = load(file)?;
    let dec = blocks(&g)?;
    let mut out = format!("blocks: {}\n", dec.blocks.len());
    for (i, b) in dec.blocks.iter().enumerate() {
        out.push_str(&format!(
            "block {}: n={} k={} vertices {}\n",
            i + 1,
            b.hypergraph.vertex_count(),
            b.hypergraph.edge_count(),
            join(&b.vertex_map)
        ));
    }
    let cuts: Vec<usize> = dec.cut_vertices.iter().copied().collect();
    out.push_str(&format!("cut vertices: {}\n", join(&cuts)));
    emit(&out, None)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
}

struct Checks {
    lines: Vec<String>,
    failed: bool,
}

impl Checks {
    fn record(&mut self, status: Status, name: &str, detail: String) {
        let tag = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        self.failed |= status == Status::Fail;
        self.lines.push(format!("{tag:<8}{name:<22}{detail}"));
    }

    fn compare<T: PartialEq + std::fmt::Display>(&mut self, name: &str, left: (&str, T), right: (&str, T)) {
        let status = if left.1 == right.1 { Status::Pass } else { Status::Fail };
        self.record(status, name, format!("{}={} {}={}", left.0, left.1, right.0, right.1));
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let g = load(&a.file)?;
    let direct = stabilizing_index(&g)?;
    let all = !(a.brute || a.spectral || a.compose);
    let mut checks = Checks { lines: Vec::new(), failed: false };

    if a.brute || all {
        match brute_stabilizing_jobs(&g, a.cap, a.jobs) {
            Ok(count) => checks.compare(
                "brute stabilizing",
                ("snf", direct.stabilizing_index.clone()),
                ("brute", count.into()),
            ),
            Err(e @ Error::CapExceeded { .. }) => checks.record(Status::Skipped, "brute stabilizing", e.to_string()),
            Err(e) => return Err(e.into()),
        }
        match brute_cyclic_jobs(&g, a.cap, a.jobs) {
            Ok(c) => checks.compare("brute cyclic", ("scan", direct.cyclic_index), ("brute", c)),
            Err(e @ Error::CapExceeded { .. }) => checks.record(Status::Skipped, "brute cyclic", e.to_string()),
            Err(e) => return Err(e.into()),
        }
    }

    if a.spectral || all {
        verify_spectral(&g, &direct, a, &mut checks)?;
    }

    if a.compose || all {
        let dec = blocks(&g)?;
        if dec.blocks.len() < 2 {
            checks.record(Status::Skipped, "compose", "single block, nothing to compose".into());
        } else {
            let reports = dec
                .blocks
                .iter()
                .map(|b| stabilizing_index(&b.hypergraph))
                .collect::<Result<Vec<_>, _>>()?;
            let predicted = predict_blocks(&reports)?;
            let status = if predicted.agrees_with(&direct) { Status::Pass } else { Status::Fail };
            checks.record(
                status,
                "compose",
                format!(
                    "{} blocks: predicted s={} c={} direct s={} c={}",
                    reports.len(),
                    predicted.stabilizing_index,
                    predicted.cyclic_index,
                    direct.stabilizing_index,
                    direct.cyclic_index
                ),
            );
        }
    }

    let mut out = checks.lines.join("\n");
    out.push('\n');
    emit(&out, None)?;
    if checks.failed {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn verify_spectral(g: &UniformHypergraph, direct: &IndexReport, a: &VerifyArgs, checks: &mut Checks) -> Result<(), Failure> {
    let name = "spectral";
    if direct.stabilizing_index > a.cap.into() {
        let detail = format!("s={} exceeds cap {}", direct.stabilizing_index, a.cap);
        checks.record(Status::Skipped, name, detail);
        return Ok(());
    }
    let exponents = match eigenvector_exponents(g, a.cap) {
        Ok(t) => t,
        Err(e @ Error::CapExceeded { .. }) => {
            checks.record(Status::Skipped, name, e.to_string());
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let est = match power_iteration(g, a.tol, a.max_iter) {
        Ok(est) => est,
        Err(e @ Error::NoConvergence { .. }) => {
            checks.record(Status::Fail, name, e.to_string());
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let outcome = lift_and_check(g, &est, &exponents, a.tol)?;
    let count_ok = direct.stabilizing_index == outcome.checks.len().into();
    let ok = outcome.passed() && outcome.max_residual <= DEFAULT_RESIDUAL_THRESHOLD && count_ok;
    checks.record(
        if ok { Status::Pass } else { Status::Fail },
        name,
        format!(
            "rho={:.12} eigenvectors={} s={} max residual={:.3e} distinct={} (policy: tol={:e} threshold={:e})",
            est.rho,
            outcome.checks.len(),
            direct.stabilizing_index,
            outcome.max_residual,
            outcome.pairwise_distinct,
            a.tol,
            DEFAULT_RESIDUAL_THRESHOLD
        ),
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Index { file, json } => cmd_index(&file, json),
        Command::Snf { file, verify } => cmd_snf(&file, verify),
        Command::Coalesce { file1, v1, file2, v2, output } => {
            let g = coalesce(&load(&file1)?, v1, &load(&file2)?, v2)?;
            emit(&serialize_uhg(&g), output.as_deref())
        }
        Command::Cartesian { files, output } => {
            let factors = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
            emit(&serialize_uhg(&cartesian_product_n(&factors)?), output.as_deref())
        }
        Command::Generate(args) => cmd_generate(&args),
        Command::Blocks { file } => cmd_blocks(&file),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}
