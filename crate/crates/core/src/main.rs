use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyclojac::verify::{self, Format, Quantity, Suite, SweepConfig};
use cyclojac::Error;

#[derive(Parser)]
#[command(name = "cyclojac", version, about = "Exact Jacobi-sum products and the matrices [φ(s_i + s_j)]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute quantities for a single q.
    Compute {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "all")]
        what: Quantity,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite over a range of q.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        qmin: Option<u64>,
        #[arg(long)]
        qmax: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tabulate R_q and compare with the published values.
    Table {
        #[arg(long, default_value_t = 7)]
        qmin: u64,
        #[arg(long, default_value_t = 29)]
        qmax: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Rebuild R_p from det A_p for a prime p ≡ 3 (mod 4).
    Corollary {
        #[arg(long)]
        p: u64,
    },
}

fn usage_error(err: &Error) -> bool {
    matches!(
        err,
        Error::NotOddPrime(_)
            | Error::NotOddPrimePower(_)
            | Error::InvalidDegree(_)
            | Error::TooLarge { .. }
            | Error::OutOfRange { .. }
            | Error::Precondition(_)
    )
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(if usage_error(&err) { 2 } else { 1 })
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Compute { q, what, format } => {
            let report = verify::compute_report(q, what)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                _ => println!("{}", json(&report)),
            }
            Ok(ExitCode::from(if report.failed() { 1 } else { 0 }))
        }
        Command::Verify {
            suite,
            qmin,
            qmax,
            jobs,
            format,
        } => {
            let (lo, hi) = if suite == Suite::Table { (7, 29) } else { (3, 100) };
            let cfg = SweepConfig {
                q_min: qmin.unwrap_or(lo),
                q_max: qmax.unwrap_or(hi),
                suites: vec![suite],
                jobs,
                format,
                ..SweepConfig::default()
            };
            let out = verify::run_sweep(&cfg)?;
            match format {
                Format::Text => print!("{}", out.to_text()),
                _ => println!("{}", json(&out)),
            }
            for (q, c) in out.failures() {
                eprintln!("FAIL q={q} {}: {}", c.check_name, c.detail);
            }
            let s = &out.summary;
            eprintln!("suite {suite}: pass {} fail {} audit {} skip {}", s.pass, s.fail, s.audit, s.skip);
            Ok(ExitCode::from(if out.failed() { 1 } else { 0 }))
        }
        Command::Table { qmin, qmax, format } => {
            if qmin < 3 || qmin > qmax {
                return Err(Error::Precondition(format!("need 3 <= qmin <= qmax, got [{qmin}, {qmax}]")));
            }
            let rows = verify::table(qmin, qmax)?;
            match format {
                Format::Json => println!("{}", json(&rows)),
                _ => print!("{}", verify::table_csv(&rows)),
            }
            let broken = rows.iter().any(|r| !r.paths_agree || r.error.is_some());
            Ok(ExitCode::from(if broken { 1 } else { 0 }))
        }
        Command::Corollary { p } => {
            let report = verify::corollary(p)?;
            println!("{}", json(&report));
            Ok(ExitCode::from(if report.holds() { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(fail)
}
