//! `gfl`: solve, verify and explain generic freeness certificates.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gfl_core::certificate::{self, Certificate, CertificateError, Side};
use gfl_core::engine::EngineError;
use gfl_core::verify::VerifyError;
use gfl_core::{dsl, solve, verify, ProblemSpec, SolveConfig, TermOrder, VerifyOptions};

const OK: u8 = 0;
const VERIFY_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "gfl", version, about = "Generic freeness certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Grlex,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a witness and certificate for a .gfl problem.
    Solve {
        input: PathBuf,
        /// Certificate path (default: the input with extension .cert).
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "lex")]
        order: Order,
        /// Degree cap for completion.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Check a certificate against its problem.
    Verify {
        input: PathBuf,
        certificate: PathBuf,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Show the staircases of a problem or certificate.
    Explain { path: PathBuf },
}

struct Failure(u8, String);

type Outcome = Result<u8, Failure>;

fn input_error(msg: impl Into<String>) -> Failure {
    Failure(INPUT_ERROR, msg.into())
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<ProblemSpec, Failure> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes).map_err(|_| input_error(format!("{}: not UTF-8", path.display())))?;
    dsl::parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn summary(cert: &Certificate) -> String {
    let mut out = format!("f = {}\n", cert.witness.render(&cert.names.params));
    for side in [Side::Algebra, Side::Module] {
        let (_, rels) = cert.side(side);
        let corners: Vec<String> = rels.iter().map(|r| cert.render_index(side, &r.corner)).collect();
        out.push_str(&format!(
            "{} staircase: {} corners [{}]\n",
            side.name(),
            corners.len(),
            corners.join(", ")
        ));
    }
    out
}

fn cmd_solve(input: &Path, output: Option<&Path>, order: Order, cap: Option<u32>) -> Outcome {
    let problem = load_problem(input)?;
    let cfg = SolveConfig {
        order: match order {
            Order::Lex => TermOrder::Lex,
            Order::Grlex => TermOrder::GradedLex,
        },
        degree_cap: cap,
        ..SolveConfig::default()
    };
    let cert = match solve(&problem, &cfg) {
        Ok(c) => c,
        Err(EngineError::CapExceeded(d)) => {
            let side = if d.side == Side::Algebra.name() {
                Side::Algebra
            } else {
                Side::Module
            };
            let show = |j| certificate::render_index(&problem.names, side, j);
            let leads: Vec<String> = d.leading_indices.iter().map(show).collect();
            return Err(Failure(
                LIMIT,
                format!(
                    "degree cap exceeded\n  side: {}\n  cap: {}\n  offending degree: {}\n  offending lead: {}\n  basis elements: {}\n  pending pairs: {}\n  leading indices so far: {}",
                    d.side,
                    d.cap,
                    d.offending_degree,
                    show(&d.offending_lead),
                    d.basis_len,
                    d.pending_pairs,
                    leads.join(", ")
                ),
            ));
        }
        Err(e) => return Err(input_error(e.to_string())),
    };
    let out = output
        .map(Path::to_path_buf)
        .unwrap_or_else(|| input.with_extension("cert"));
    fs::write(&out, certificate::serialize(&cert))
        .map_err(|e| input_error(format!("{}: {e}", out.display())))?;
    print!("{}", summary(&cert));
    println!("certificate written to {}", out.display());
    Ok(OK)
}

fn cmd_verify(input: &Path, cert_path: &Path, trials: u32, seed: u64) -> Outcome {
    if trials == 0 {
        return Err(input_error("--trials must be at least 1"));
    }
    let problem = load_problem(input)?;
    let cert = match certificate::deserialize(&read(cert_path)?) {
        Ok(c) => c,
        Err(e @ CertificateError::Parse { .. }) => {
            return Err(input_error(format!("{}: {e}", cert_path.display())))
        }
        Err(CertificateError::Malformed(m)) => {
            println!("certificate: FAIL — {m}");
            return Ok(VERIFY_FAILED);
        }
    };
    let opts = VerifyOptions {
        trials,
        seed,
        degree_bound: None,
    };
    match verify(&problem, &cert, &opts) {
        Ok(report) => {
            print!("{}", report.render());
            Ok(if report.passed { OK } else { VERIFY_FAILED })
        }
        Err(e @ VerifyError::WrongProblem { .. }) => Err(Failure(VERIFY_FAILED, e.to_string())),
        Err(e @ VerifyError::SamplingExhausted(_)) => Err(Failure(VERIFY_FAILED, e.to_string())),
        Err(e) => Err(input_error(e.to_string())),
    }
}

fn explain(cert: &Certificate) -> String {
    let mut out = summary(cert);
    let grid = cert.names.n() == 2;
    for side in [Side::Algebra, Side::Module] {
        let (st, _) = cert.side(side);
        for slot in 1..=st.slots() {
            let label = match side {
                Side::Algebra => "algebra".to_string(),
                Side::Module => format!("module v{slot}"),
            };
            match st.render_grid(slot, None) {
                Some(g) if grid => {
                    out.push_str(&format!(
                        "\n{label} ({} right, {} up):\n{g}",
                        cert.names.vars[0], cert.names.vars[1]
                    ));
                }
                _ => {
                    let corners: Vec<String> = st
                        .corners()
                        .iter()
                        .filter(|c| c.slot == slot)
                        .map(|c| cert.render_index(side, c))
                        .collect();
                    let listed = if corners.is_empty() {
                        "none".to_string()
                    } else {
                        corners.join(", ")
                    };
                    out.push_str(&format!("\n{label} corners: {listed}\n"));
                }
            }
        }
    }
    out
}

fn cmd_explain(path: &Path) -> Outcome {
    let is_problem = path.extension().is_some_and(|e| e == "gfl");
    let cert = if is_problem {
        let problem = load_problem(path)?;
        match solve(&problem, &SolveConfig::default()) {
            Ok(c) => c,
            Err(e @ EngineError::CapExceeded(_)) => return Err(Failure(LIMIT, e.to_string())),
            Err(e) => return Err(input_error(e.to_string())),
        }
    } else {
        certificate::deserialize(&read(path)?)
            .map_err(|e| input_error(format!("{}: {e}", path.display())))?
    };
    print!("{}", explain(&cert));
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve {
            input,
            output,
            order,
            cap,
        } => cmd_solve(input, output.as_deref(), *order, *cap),
        Command::Verify {
            input,
            certificate,
            trials,
            seed,
        } => cmd_verify(input, certificate, *trials, *seed),
        Command::Explain { path } => cmd_explain(path),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("gfl: {msg}");
            ExitCode::from(code)
        }
    }
}
