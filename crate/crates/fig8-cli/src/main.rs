//! CLI driver: exact invariants, asymptotic estimates, saddle data,
//! verification suites and exact-vs-AEF sweeps as CSV or JSON tables.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric failure.

mod output;
mod parallel;
mod run;

use clap::{Parser, Subcommand, ValueEnum};
use fig8::error::Error;
use output::error_record;
use run::{RootKind, RunConfig, SweepGrid};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fig8",
    about = "Figure-eight knot quantum invariants and their asymptotics"
)]
struct Cli {
    /// Working precision in bits (env FIG8_PRECISION_BITS overrides the default).
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-30)]
    quad_tol: f64,
    /// Half-width of the s ~ 1 window.
    #[arg(long, global = true, default_value_t = 0.05)]
    zeta: f64,
    /// Half-width of the s ~ 1/2 window.
    #[arg(long, global = true, default_value_t = 0.05)]
    delta: f64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for sweeps; the output is identical for any count.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Root {
    Kashaev,
    Half,
}

#[derive(Subcommand)]
enum Command {
    /// Exact colored Jones polynomial at a root of unity.
    Jones {
        #[arg(short, long, alias = "M")]
        m: u32,
        /// Order parameter N; with --root kashaev this evaluates q = e^{2 pi i/N}.
        #[arg(short, long, alias = "N")]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = Root::Kashaev)]
        root: Root,
        /// Explicit shift a (alternative to --n).
        #[arg(short, long)]
        a: Option<f64>,
        /// Deformation u (only with --a).
        #[arg(short, long, default_value_t = 0.0)]
        u: f64,
    },
    /// Turaev-Viro invariant with window decomposition.
    Tv {
        /// Odd levels, comma separated (e.g. 101,201,401).
        #[arg(short, long, value_delimiter = ',')]
        r: Vec<u64>,
    },
    /// One asymptotic expansion estimate.
    Aef {
        #[arg(long)]
        theorem: String,
        #[arg(short, long)]
        n: Option<u32>,
        #[arg(short, long)]
        m: Option<u32>,
        #[arg(short, long)]
        a: Option<f64>,
        #[arg(short, long)]
        u: Option<f64>,
        #[arg(short, long)]
        r: Option<u64>,
    },
    /// Solve a saddle-point equation.
    Saddle {
        /// limit-s | s | half | limit-half | fixed-a
        #[arg(long)]
        family: String,
        #[arg(short, long)]
        s: Option<f64>,
        #[arg(short, long)]
        m: Option<u32>,
        #[arg(short, long)]
        n: Option<u32>,
        #[arg(short, long)]
        a: Option<f64>,
        #[arg(short, long)]
        u: Option<f64>,
    },
    /// Verification suites.
    Verify {
        /// contour | identities | riemann
        #[arg(long)]
        suite: String,
        #[arg(short, long, default_value_t = 3)]
        m: u32,
        #[arg(short, long, default_value_t = 0.5)]
        a: f64,
        #[arg(short, long, default_value_t = 0.3)]
        u: f64,
        /// Node counts for the riemann suite.
        #[arg(short, long, value_delimiter = ',', default_value = "100,400")]
        n: Vec<u32>,
    },
    /// Exact-vs-AEF ratio sweep over a grid.
    Sweep {
        #[arg(long)]
        theorem: String,
        /// N grid for cvc2 (e.g. 50,100,200).
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<u32>>,
        /// r grid for mainthm4 (e.g. 101,201,401).
        #[arg(long, alias = "r", value_delimiter = ',')]
        r_list: Option<Vec<u64>>,
        /// M:N pairs for mainthm2 (e.g. 96:99,190:199).
        #[arg(long, value_delimiter = ',')]
        pairs: Option<Vec<String>>,
        /// M grid for the fixed-shift theorems.
        #[arg(long, value_delimiter = ',')]
        m_list: Option<Vec<u32>>,
        #[arg(short, long)]
        a: Option<f64>,
        #[arg(short, long)]
        u: Option<f64>,
    },
}

fn default_bits() -> u32 {
    std::env::var("FIG8_PRECISION_BITS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(256)
}

fn build_grid(
    n_list: Option<Vec<u32>>,
    r_list: Option<Vec<u64>>,
    pairs: Option<Vec<String>>,
    m_list: Option<Vec<u32>>,
    a: Option<f64>,
    u: Option<f64>,
) -> Result<SweepGrid, Error> {
    if let Some(ns) = n_list {
        return Ok(SweepGrid::NList(ns));
    }
    if let Some(rs) = r_list {
        return Ok(SweepGrid::RList(rs));
    }
    if let Some(ps) = pairs {
        let mut out = Vec::new();
        for p in ps {
            let (m, n) = p
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("bad pair {p}, want M:N")))?;
            let m: u32 = m
                .parse()
                .map_err(|_| Error::Config(format!("bad pair {p}")))?;
            let n: u32 = n
                .parse()
                .map_err(|_| Error::Config(format!("bad pair {p}")))?;
            out.push((m, n));
        }
        return Ok(SweepGrid::Pairs(out));
    }
    if let Some(ms) = m_list {
        return Ok(SweepGrid::FixedA {
            u: u.unwrap_or(0.0),
            a: a.ok_or_else(|| Error::Config("--m-list needs --a".into()))?,
            m_list: ms,
        });
    }
    Err(Error::Config("no sweep grid given".into()))
}

fn execute(cli: Cli) -> Result<String, Error> {
    let bits = cli.precision_bits.unwrap_or_else(default_bits);
    let cfg = RunConfig::new(bits, cli.quad_tol, cli.zeta, cli.delta, cli.workers)?;
    let table = match cli.command {
        Command::Jones { m, n, root, a, u } => {
            let root = match root {
                Root::Kashaev => RootKind::Kashaev,
                Root::Half => RootKind::Half,
            };
            run::run_jones(&cfg, m, n, root, a, u)?
        }
        Command::Tv { r } => {
            if r.is_empty() {
                return Err(Error::Config("tv needs at least one --r value".into()));
            }
            run::run_tv(&cfg, &r)?
        }
        Command::Aef {
            theorem,
            n,
            m,
            a,
            u,
            r,
        } => run::run_aef(&cfg, &theorem, n, m, a, u, r)?,
        Command::Saddle {
            family,
            s,
            m,
            n,
            a,
            u,
        } => run::run_saddle(&cfg, &family, s, m, n, a, u)?,
        Command::Verify { suite, m, a, u, n } => match suite.as_str() {
            "contour" => run::run_verify_contour(&cfg, m, a, u)?,
            "identities" => run::run_verify_identities(&cfg)?,
            "riemann" => run::run_verify_riemann(&cfg, &n)?,
            other => return Err(Error::Config(format!("unknown verify suite: {other}"))),
        },
        Command::Sweep {
            theorem,
            n_list,
            r_list,
            pairs,
            m_list,
            a,
            u,
        } => {
            let grid = build_grid(n_list, r_list, pairs, m_list, a, u)?;
            run::run_sweep(&cfg, &theorem, &grid)?
        }
    };
    Ok(match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output_path = cli.output.clone();
    match execute(cli) {
        Ok(rendered) => {
            let result = match output_path {
                Some(path) => std::fs::write(&path, rendered.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(rendered.as_bytes())
                    .map_err(|e| format!("cannot write stdout: {e}")),
            };
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(msg) => {
                    eprint!("{}", error_record("io", &msg));
                    ExitCode::from(3)
                }
            }
        }
        Err(e @ Error::Config(_)) => {
            eprint!("{}", error_record("config", &e.to_string()));
            ExitCode::from(2)
        }
        Err(e) => {
            eprint!("{}", error_record("numeric", &e.to_string()));
            ExitCode::from(3)
        }
    }
}
