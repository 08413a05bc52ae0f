use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schouten_core::basis::{enumerate_basis, max_arity};
use schouten_core::homotopy::{certify_exact, check_certificate, ExactnessCertificate, PsiBlock};
use schouten_core::verify::{verify_dsq, verify_jacobi, verify_psi, verify_weights, SuiteOutcome, DEFAULT_SEED};
use schouten_core::{betti, boundary, euler_characteristic, Chain, Error};

#[derive(Parser, Debug)]
#[command(name = "schouten", version, about = "Exact weighted homology of polynomial multivector fields")]
struct Cli {
    /// Output format; `structured` (JSON) is the stable one.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Structured,
    Csv,
    Plain,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Structured => "structured",
            Format::Csv => "csv",
            Format::Plain => "plain",
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct Block {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
    n: u64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    w: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    h: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Dsq,
    Jacobi,
    Weights,
    Psi,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// dim C_m^(w,h) for m = 1..M_max
    Dims(Block),
    /// Betti number of one block
    Betti {
        #[command(flatten)]
        block: Block,
        #[arg(long)]
        m: usize,
    },
    /// Euler characteristic of one (w,h) block over all arities
    Euler(Block),
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        w: i64,
        /// defaults to w
        #[arg(long, allow_negative_numbers = true)]
        h: Option<i64>,
        /// largest arity for dsq and weights
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// random cases for jacobi
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Certify that a 2-cycle of weight (w,w) is a boundary
    Certify {
        #[arg(long)]
        input: PathBuf,
        /// ambient dimension for text input without an `n` line
        #[arg(long)]
        n: Option<usize>,
    },
    /// Re-verify a certificate file
    CheckCertificate {
        #[arg(long)]
        input: PathBuf,
    },
    /// List the ordered basis of C_m^(w,h)
    Basis {
        #[command(flatten)]
        block: Block,
        #[arg(long)]
        m: usize,
    },
    /// Matrix of Psi on C_2^(w,w)
    PsiMatrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotACycle | Error::VerificationFailed(_) | Error::TheoremViolation(_) | Error::DescentDidNotTerminate(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Rendered output plus the exit code to return after writing it.
struct Outcome {
    text: String,
    code: u8,
}

fn header(cli: &Cli, command: &str, params: &[(&str, String)]) -> String {
    let mut s = format!("# schouten {command}");
    for (k, v) in params {
        let _ = write!(s, " {k}={v}");
    }
    let _ = write!(s, " seed={} format={}", cli.seed, cli.format.name());
    s.push('\n');
    s
}

fn config_json(cli: &Cli, command: &str, params: &[(&str, String)]) -> Value {
    let mut cfg = serde_json::Map::new();
    cfg.insert("command".into(), json!(command));
    for (k, v) in params {
        let parsed: Value = v.parse::<i64>().map(Value::from).unwrap_or_else(|_| json!(v));
        cfg.insert((*k).into(), parsed);
    }
    cfg.insert("seed".into(), json!(cli.seed));
    cfg.insert("format".into(), json!(cli.format.name()));
    Value::Object(cfg)
}

fn structured(cli: &Cli, command: &str, params: &[(&str, String)], body: Value) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("config".into(), config_json(cli, command, params));
    if let Value::Object(fields) = body {
        doc.extend(fields);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
    s.push('\n');
    s
}

fn block_params(b: &Block) -> Vec<(&'static str, String)> {
    vec![("n", b.n.to_string()), ("w", b.w.to_string()), ("h", b.h.to_string())]
}

fn run_dims(cli: &Cli, b: &Block) -> Result<Outcome, Failure> {
    let n = b.n as usize;
    let top = max_arity(n, b.w, b.h).max(1);
    let rows: Vec<(usize, usize)> = (1..=top).map(|m| (m, enumerate_basis(n, m, b.w, b.h).len())).collect();
    let params = block_params(b);
    let text = match cli.format {
        Format::Structured => structured(
            cli,
            "dims",
            &params,
            json!({ "rows": rows.iter().map(|(m, d)| json!({"m": m, "dim": d})).collect::<Vec<_>>() }),
        ),
        Format::Csv => {
            let mut s = header(cli, "dims", &params);
            s.push_str("n,m,w,h,dim\n");
            for (m, d) in &rows {
                let _ = writeln!(s, "{n},{m},{},{},{d}", b.w, b.h);
            }
            s
        }
        Format::Plain => {
            let mut s = header(cli, "dims", &params);
            for (m, d) in &rows {
                let _ = writeln!(s, "m = {m:>2}  dim = {d}");
            }
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn run_betti(cli: &Cli, b: &Block, m: usize) -> Result<Outcome, Failure> {
    let r = betti(b.n as usize, m, b.w, b.h)?;
    let violated = r.is_guaranteed_zero() && r.betti != 0;
    let mut params = block_params(b);
    params.insert(1, ("m", m.to_string()));
    let text = match cli.format {
        Format::Structured => {
            structured(cli, "betti", &params, json!({ "report": r, "guaranteed_zero": r.is_guaranteed_zero() }))
        }
        Format::Csv => format!("{}{}\n{}\n", header(cli, "betti", &params), schouten_core::HomologyReport::CSV_HEADER, r.csv_row()),
        Format::Plain => format!(
            "{}betti = {}  (dim {}, rank d_out {}, rank d_in {})\n",
            header(cli, "betti", &params),
            r.betti,
            r.dim,
            r.rank_out,
            r.rank_in
        ),
    };
    Ok(Outcome { text, code: if violated { 1 } else { 0 } })
}

fn run_euler(cli: &Cli, b: &Block) -> Result<Outcome, Failure> {
    let chi = euler_characteristic(b.n as usize, b.w, b.h)?;
    let top = max_arity(b.n as usize, b.w, b.h);
    let params = block_params(b);
    let text = match cli.format {
        Format::Structured => structured(cli, "euler", &params, json!({ "euler": chi, "max_arity": top })),
        Format::Csv => format!("{}n,w,h,max_arity,euler\n{},{},{},{top},{chi}\n", header(cli, "euler", &params), b.n, b.w, b.h),
        Format::Plain => format!("{}euler = {chi}  (arities 1..={top})\n", header(cli, "euler", &params)),
    };
    Ok(Outcome { text, code: if chi != 0 { 1 } else { 0 } })
}

fn run_verify(cli: &Cli, suite: Suite, n: usize, w: i64, h: Option<i64>, m: usize, cases: usize) -> Result<Outcome, Failure> {
    let h = h.unwrap_or(w);
    let mut outcomes: Vec<SuiteOutcome> = Vec::new();
    let psi_weight = || usize::try_from(w).map_err(|_| Failure { code: 2, message: "psi suite needs w >= 0".into() });
    if matches!(suite, Suite::Dsq | Suite::All) {
        outcomes.push(verify_dsq(n, w, h, m)?);
    }
    if matches!(suite, Suite::Jacobi | Suite::All) {
        outcomes.push(verify_jacobi(n, cases, cli.seed)?);
    }
    if matches!(suite, Suite::Weights | Suite::All) {
        outcomes.push(verify_weights(n, w, h, m)?);
    }
    if matches!(suite, Suite::Psi | Suite::All) {
        outcomes.push(verify_psi(n, psi_weight()?)?);
    }
    let passed = outcomes.iter().all(SuiteOutcome::passed);
    let params = vec![("n", n.to_string()), ("w", w.to_string()), ("h", h.to_string()), ("m", m.to_string())];
    let text = match cli.format {
        Format::Structured => structured(cli, "verify", &params, json!({ "passed": passed, "suites": outcomes })),
        Format::Csv => {
            let mut s = header(cli, "verify", &params);
            s.push_str("suite,cases,failures,passed\n");
            for o in &outcomes {
                let _ = writeln!(s, "{},{},{},{}", o.suite, o.cases, o.failures.len(), o.passed());
            }
            s
        }
        Format::Plain => {
            let mut s = header(cli, "verify", &params);
            for o in &outcomes {
                let _ = writeln!(s, "{}: {} ({} cases)", o.suite, if o.passed() { "pass" } else { "FAIL" }, o.cases);
                for note in &o.notes {
                    let _ = writeln!(s, "  note: {note}");
                }
                for f in &o.failures {
                    let _ = writeln!(s, "  failure: {f}");
                }
            }
            s
        }
    };
    Ok(Outcome { text, code: if passed { 0 } else { 1 } })
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("cannot read {}: {e}", path.display()) })
}

fn run_certify(cli: &Cli, input: &Path, n: Option<usize>) -> Result<Outcome, Failure> {
    let u = Chain::parse_any(&read_input(input)?, n).map_err(|e| Failure { code: 2, message: e.to_string() })?;
    let du = boundary(&u);
    if !du.is_zero() {
        return Err(Failure { code: 1, message: format!("input is not a cycle; its boundary is\n{}", du.to_text()) });
    }
    let cert = certify_exact(&u)?;
    check_certificate(&cert)?;
    let text = match cli.format {
        Format::Structured | Format::Csv => format!("{}\n", cert.to_json()),
        Format::Plain => format!(
            "{}p(t) = {}\nV =\n{}",
            header(cli, "certify", &[("n", cert.block.n.to_string()), ("w", cert.block.w.to_string())]),
            cert.p,
            cert.v.to_text()
        ),
    };
    Ok(Outcome { text, code: 0 })
}

fn run_check(cli: &Cli, input: &Path) -> Result<Outcome, Failure> {
    let cert = ExactnessCertificate::from_json(&read_input(input)?).map_err(|e| Failure { code: 2, message: e.to_string() })?;
    let verdict = check_certificate(&cert);
    let params = [("n", cert.block.n.to_string()), ("w", cert.block.w.to_string())];
    let (ok, detail) = match &verdict {
        Ok(()) => (true, "d V = U and p(Psi) U = 0".to_string()),
        Err(e) => (false, e.to_string()),
    };
    let text = match cli.format {
        Format::Structured => structured(cli, "check-certificate", &params, json!({ "valid": ok, "detail": detail })),
        Format::Csv => format!("{}valid,detail\n{ok},\"{detail}\"\n", header(cli, "check-certificate", &params)),
        Format::Plain => format!("{}{}: {detail}\n", header(cli, "check-certificate", &params), if ok { "valid" } else { "INVALID" }),
    };
    Ok(Outcome { text, code: if ok { 0 } else { 1 } })
}

fn run_basis(cli: &Cli, b: &Block, m: usize) -> Result<Outcome, Failure> {
    let basis = enumerate_basis(b.n as usize, m, b.w, b.h);
    let mut params = block_params(b);
    params.insert(1, ("m", m.to_string()));
    let text = match cli.format {
        Format::Structured => {
            let words: Vec<Value> = basis
                .words()
                .iter()
                .map(|w| {
                    let factors: Vec<Value> = w
                        .factors()
                        .iter()
                        .map(|g| json!({ "beta": g.beta().exponents(), "alpha": g.alpha().indices().collect::<Vec<_>>() }))
                        .collect();
                    Value::Array(factors)
                })
                .collect();
            structured(cli, "basis", &params, json!({ "dim": basis.len(), "words": words }))
        }
        Format::Csv => {
            let mut s = header(cli, "basis", &params);
            s.push_str("index,word\n");
            for (k, w) in basis.words().iter().enumerate() {
                let _ = writeln!(s, "{k},\"{w}\"");
            }
            s
        }
        Format::Plain => {
            let mut s = header(cli, "basis", &params);
            for (k, w) in basis.words().iter().enumerate() {
                let _ = writeln!(s, "{k:>6}  {w}");
            }
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn run_psi_matrix(cli: &Cli, n: usize, w: usize) -> Result<Outcome, Failure> {
    let block = PsiBlock::new(n, w)?;
    let params = [("n", n.to_string()), ("w", w.to_string())];
    let text = match cli.format {
        Format::Structured => {
            let entries: Vec<Value> =
                block.matrix.entries().map(|(r, c, v)| json!([r, c, v.to_string()])).collect();
            let words: Vec<String> = block.basis.words().iter().map(|w| w.to_string()).collect();
            structured(
                cli,
                "psi-matrix",
                &params,
                json!({ "rows": block.matrix.rows(), "cols": block.matrix.cols(), "basis": words, "entries": entries }),
            )
        }
        Format::Csv => {
            let mut s = header(cli, "psi-matrix", &params);
            s.push_str("row,col,value\n");
            for (r, c, v) in block.matrix.entries() {
                let _ = writeln!(s, "{r},{c},{v}");
            }
            s
        }
        Format::Plain => format!("{}{}", header(cli, "psi-matrix", &params), block.matrix.to_coordinate_text()),
    };
    Ok(Outcome { text, code: 0 })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Dims(b) => run_dims(cli, b),
        Command::Betti { block, m } => run_betti(cli, block, *m),
        Command::Euler(b) => run_euler(cli, b),
        Command::Verify { suite, n, w, h, m, cases } => run_verify(cli, *suite, *n, *w, *h, *m, *cases),
        Command::Certify { input, n } => run_certify(cli, input, *n),
        Command::CheckCertificate { input } => run_check(cli, input),
        Command::Basis { block, m } => run_basis(cli, block, *m),
        Command::PsiMatrix { n, w } => run_psi_matrix(cli, *n, *w),
    }
}

/// Writes via a temporary file in the target directory and renames, so a
/// failed run never leaves a truncated file behind.
fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let tmp = dir.join(format!(".{}.tmp", p.file_name().and_then(|s| s.to_str()).unwrap_or("schouten")));
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, p)
        }
    }
}

fn configure_threads() {
    if let Some(k) = std::env::var("SCHOUTEN_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if k > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match dispatch(&cli) {
        Ok(outcome) => {
            if let Err(e) = write_output(cli.output.as_deref(), &outcome.text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
