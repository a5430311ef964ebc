//! `ginv`: compute generalized inverses with certificates, run the finite-ring
//! theorem catalog, and re-check candidate inverses.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use ginv::certificate::{certify_candidate, InverseKind};
use ginv::io::{candidate_from_json, certificate_to_json, matrix_from_json, result_to_json, SCHEMA_VERSION};
use ginv::oracle::{self, RingSpec};
use ginv::{along, classical, regular, wcore, Error, Execution, Outcome, RouteSelector, StarMatrix, Tolerance};
use serde_json::{json, Value};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_NOT_EXISTS: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;

#[derive(Parser)]
#[command(name = "ginv", version, about = "Generalized inverses with machine-checkable certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an inverse and its certificate.
    Compute(ComputeArgs),
    /// Check theorems exhaustively on a finite ring with involution.
    Verify(VerifyArgs),
    /// Re-certify a candidate inverse against the defining equations.
    Check(CheckArgs),
}

#[derive(Args)]
struct Operands {
    /// Inverse kind: one, one3, one4, mp, group, drazin, core, dual-core,
    /// core-ep, along, w-core, dual-v-core or bc.
    #[arg(long)]
    kind: InverseKind,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    w: Option<PathBuf>,
    #[arg(long)]
    v: Option<PathBuf>,
    #[arg(long)]
    d: Option<PathBuf>,
    #[arg(long)]
    b: Option<PathBuf>,
    #[arg(long)]
    c: Option<PathBuf>,
    /// Relative residual tolerance for float certificates.
    #[arg(long)]
    tol: Option<f64>,
    /// Relative singular-value cutoff for float rank decisions.
    #[arg(long)]
    rank_tol: Option<f64>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    ops: Operands,
    /// `all` or a single route (w-core and dual-v-core only).
    #[arg(long)]
    route: Option<RouteSelector>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    ops: Operands,
    /// A bare matrix or a `compute` result document.
    #[arg(long)]
    candidate: PathBuf,
    /// Index for drazin and core-ep; read from a result document when omitted.
    #[arg(long)]
    index: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["theorem", "all"]))]
struct VerifyArgs {
    /// Ring spec such as zmod:6, mat:2:gf2 or prod(zmod:2,zmod:3). Without it
    /// the default suite is used.
    #[arg(long)]
    ring: Vec<String>,
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long)]
    all: bool,
    /// Largest ring to enumerate.
    #[arg(long, default_value_t = oracle::ring::DEFAULT_CAP)]
    cap: usize,
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(e) if e.is_internal() => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type Run = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let run = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Verify(args) => verify(args),
        Command::Check(args) => check(args),
    };
    match run {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ginv: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_matrix(path: &Path) -> anyhow::Result<StarMatrix> {
    let v = read_json(path)?;
    matrix_from_json(&v).with_context(|| format!("matrix in {}", path.display()))
}

fn emit(doc: &Value, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(doc)?;
    match out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => match writeln!(io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e).context("writing to stdout"),
            _ => Ok(()),
        },
    }
}

impl Operands {
    fn tolerance(&self) -> anyhow::Result<Tolerance> {
        let base = Tolerance::default();
        Ok(Tolerance::new(
            self.rank_tol.unwrap_or(base.rank_rel_tol),
            self.tol.unwrap_or(base.residual_rel_tol),
        )?)
    }

    fn path(&self, symbol: char) -> Option<&PathBuf> {
        match symbol {
            'w' => self.w.as_ref(),
            'v' => self.v.as_ref(),
            'd' => self.d.as_ref(),
            'b' => self.b.as_ref(),
            'c' => self.c.as_ref(),
            _ => None,
        }
    }

    /// `a` and the extra operands of the kind, refusing operands it ignores.
    fn load(&self) -> anyhow::Result<BTreeMap<char, StarMatrix>> {
        let needed = self.kind.extra_operands();
        let mut env = BTreeMap::new();
        env.insert('a', read_matrix(&self.a)?);
        for symbol in ['w', 'v', 'd', 'b', 'c'] {
            match (self.path(symbol), needed.contains(&symbol)) {
                (Some(p), true) => {
                    env.insert(symbol, read_matrix(p)?);
                }
                (None, true) => bail!("--kind {} needs --{symbol}", self.kind),
                (Some(_), false) => bail!("--kind {} does not take --{symbol}", self.kind),
                (None, false) => {}
            }
        }
        Ok(env)
    }
}

fn compute(args: ComputeArgs) -> Run {
    let kind = args.ops.kind;
    let tol = args.ops.tolerance()?;
    let env = args.ops.load()?;
    let selector = match (args.route, kind) {
        (None, _) => RouteSelector::All,
        (Some(r), InverseKind::WCore | InverseKind::DualVCore) => r,
        (Some(_), _) => return Err(anyhow::anyhow!("--route applies only to w-core and dual-v-core").into()),
    };
    let a = &env[&'a'];
    let outcome = match kind {
        InverseKind::Inner => Outcome::Exists(regular::inner_inverse(a, &tol)?),
        InverseKind::OneThree => regular::one_three_inverse(a, &tol)?,
        InverseKind::OneFour => regular::one_four_inverse(a, &tol)?,
        InverseKind::MoorePenrose => regular::mp_inverse(a, &tol)?,
        InverseKind::Group => classical::group_inverse(a, &tol)?,
        InverseKind::Drazin => Outcome::Exists(classical::drazin_inverse(a, &tol)?),
        InverseKind::Core => classical::core_inverse(a, &tol)?,
        InverseKind::DualCore => classical::dual_core_inverse(a, &tol)?,
        InverseKind::CoreEp => classical::core_ep_inverse(a, &tol)?,
        InverseKind::Along => along::inverse_along(a, &env[&'d'], &tol)?,
        InverseKind::WCore => wcore::w_core(a, &env[&'w'], selector, &tol)?,
        InverseKind::DualVCore => wcore::dual_v_core(a, &env[&'v'], selector, &tol)?,
        InverseKind::Bc => along::bc_inverse(a, &env[&'b'], &env[&'c'], &tol)?,
    };
    emit(&result_to_json(kind, &outcome), args.out.as_deref())?;
    Ok(if outcome.exists() { EXIT_OK } else { EXIT_NOT_EXISTS })
}

fn check(args: CheckArgs) -> Run {
    let kind = args.ops.kind;
    let tol = args.ops.tolerance()?;
    let env = args.ops.load()?;
    let doc = read_json(&args.candidate)?;
    let candidate =
        candidate_from_json(&doc).with_context(|| format!("candidate in {}", args.candidate.display()))?;
    let index = args
        .index
        .or_else(|| doc.get("index").and_then(Value::as_u64).map(|k| k as usize));
    let cert = certify_candidate(kind, &env, &candidate, index, &tol)?;
    let passed = cert.passed();
    let report = json!({
        "schema": SCHEMA_VERSION,
        "kind": kind.name(),
        "passed": passed,
        "certificate": certificate_to_json(&cert),
    });
    emit(&report, args.out.as_deref())?;
    if !passed {
        eprintln!("ginv: failed: {}", cert.failed_checks().join(", "));
    }
    Ok(if passed { EXIT_OK } else { EXIT_NOT_EXISTS })
}

fn verify(args: VerifyArgs) -> Run {
    let specs: Vec<RingSpec> = if args.ring.is_empty() {
        RingSpec::default_suite()
    } else {
        args.ring.iter().map(|s| s.parse()).collect::<Result<_, Error>>()?
    };
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let mut reports = Vec::new();
    for spec in &specs {
        let ring = oracle::enumerate_ring_with_cap(spec, args.cap)?;
        match &args.theorem {
            Some(id) => reports.push(oracle::verify_theorem(&ring, id, exec)?),
            None => reports.extend(oracle::verify_all(&ring, exec)?),
        }
    }
    let mut failures = 0;
    for r in &reports {
        let status = match (&r.skipped, r.passed()) {
            (Some(_), _) => "skip",
            (None, true) => "ok",
            (None, false) => "FAIL",
        };
        eprintln!(
            "{status:4} {:24} {:36} {:>9} instances {:>4} counterexamples {:>9.1} ms",
            r.ring, r.theorem_id, r.instances_checked, r.counterexample_count, r.elapsed_ms
        );
        if !r.passed() {
            failures += 1;
        }
    }
    let passed = failures == 0;
    let doc = json!({
        "schema": SCHEMA_VERSION,
        "passed": passed,
        "rings": specs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "reports": reports,
    });
    emit(&doc, args.out.as_deref())?;
    Ok(if passed { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}
