use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use lmtopo_core::cocycle::{check_conditions, coiso_audit, deterministic_rank_check, Caps};
use lmtopo_core::harness::{self, ExperimentConfig, ExperimentKind};
use lmtopo_core::process::{run_trial, ProcessState};
use lmtopo_core::simplex::{enumerate_strongly_connected, isolated_facets, strong_count_bound};
use lmtopo_core::zlinalg::matrixbound_audit;
use lmtopo_core::{betti, homology, sample_static, Complex, Error, FieldSpec, Int};

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = harness::DEFAULT_SEED;

#[derive(Parser)]
#[command(name = "lmtopo", version, about = "Exact homology and hitting times of random simplicial complexes")]
struct Cli {
    /// Worker threads for parallel trials (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample Y_d(n, p) and print it as JSON.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral homology of a complex given as JSON (file or `-` for stdin).
    Homology {
        input: PathBuf,
        /// Print the Betti number over this field (a prime or `Q`) instead.
        #[arg(long)]
        field: Option<FieldSpec>,
    },
    /// Run one process trial and print its hitting times.
    Process {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also print the complex after this many faces.
        #[arg(long)]
        m: Option<usize>,
        /// Write the face order (colex ranks) to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Exhaustive desk-scale audits.
    #[command(subcommand)]
    Audit(Audit),
    /// Seeded Monte Carlo campaigns.
    Campaign {
        /// One of hitting, rank, torsion, noadjacent.
        kind: ExperimentKind,
        #[command(flatten)]
        opts: CampaignOpts,
    },
}

#[derive(Subcommand)]
enum Audit {
    /// Coisoperimetric inequality over every cochain of bounded support.
    Coiso {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "2")]
        field: FieldSpec,
        /// Largest support size.
        #[arg(long, default_value_t = 3)]
        cap: usize,
        /// Write one JSON line per audited cochain here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Torsion of random integer matrices against the column-norm bound.
    Matrixbound {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Largest number of rows and of columns.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Entries lie in [-cap, cap].
        #[arg(long, default_value_t = 3)]
        cap: i64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Strongly connected facet sets against their counting bound.
    StrongCount {
        #[arg(long)]
        n: usize,
        /// Complex dimension; the sets consist of (d-1)-faces.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Largest set size.
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// The three conditions and the rank statement for a complex JSON file.
    Conditions {
        input: PathBuf,
        /// Largest support size searched for minimal cocycles.
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Args)]
struct CampaignOpts {
    /// JSON config; flags given alongside override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dimension of the complexes (default 2).
    #[arg(long)]
    d: Option<usize>,
    /// Values of n, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Trials per value of n (default 100).
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed; trial seeds are derived from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for trial records and the CSV summary.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Snapshot spacing of the torsion scan.
    #[arg(long)]
    stride: Option<usize>,
    /// Fixed face probability (isolated-pair campaign).
    #[arg(long)]
    p: Option<f64>,
    /// Largest support size searched for minimal cocycles.
    #[arg(long)]
    cap: Option<usize>,
}

impl CampaignOpts {
    fn config(self, kind: ExperimentKind) -> lmtopo_core::Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_json(&fs::read_to_string(path)?)?,
            None => ExperimentConfig::new(
                kind,
                self.d.unwrap_or(2),
                vec![],
                self.trials.unwrap_or(100),
                self.seed.unwrap_or(DEFAULT_SEED),
            ),
        };
        cfg.kind = kind;
        if let Some(d) = self.d {
            cfg.d = d;
        }
        if !self.n.is_empty() {
            cfg.ns = self.n;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if self.out.is_some() {
            cfg.out = self.out;
        }
        if let Some(s) = self.stride {
            cfg.stride = s;
        }
        if self.p.is_some() {
            cfg.p = self.p;
        }
        if let Some(k) = self.cap {
            cfg.caps.k_max = k;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Outcome of a subcommand that ran to completion.
enum Outcome {
    Ok,
    Violation,
}

fn read_input(path: &Path) -> lmtopo_core::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn read_complex(path: &Path) -> lmtopo_core::Result<Complex> {
    serde_json::from_str(&read_input(path)?).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) -> lmtopo_core::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::Violation
    }
}

fn run(cli: Cli) -> lmtopo_core::Result<Outcome> {
    match cli.command {
        Command::Sample { n, d, p, seed, out } => {
            let y = sample_static(n, d, p, seed)?;
            match out {
                Some(path) => fs::write(path, serde_json::to_string(&y)? + "\n")?,
                None => print_json(&y)?,
            }
            Ok(Outcome::Ok)
        }
        Command::Homology { input, field } => {
            let y = read_complex(&input)?;
            match field {
                Some(f) => print_json(&serde_json::json!({ "field": f.to_string(), "betti": betti(&y, f)? }))?,
                None => print_json(&homology(&y))?,
            }
            Ok(Outcome::Ok)
        }
        Command::Process { n, d, seed, m, dump } => {
            let record = run_trial(n, d, seed)?;
            print_json(&record)?;
            if m.is_some() || dump.is_some() {
                let mut state = ProcessState::new(n, d, seed)?;
                state.advance_to(state.total())?;
                if let Some(m) = m {
                    let y = state.snapshot(m)?;
                    print_json(&serde_json::json!({
                        "m": m,
                        "isolated": isolated_facets(&y).len(),
                        "homology": homology(&y),
                        "complex": y,
                    }))?;
                }
                if let Some(path) = dump {
                    let ranks: Vec<u64> = state.added().iter().map(|f| f.rank(n)).collect::<Result<_, _>>()?;
                    fs::write(path, serde_json::to_string(&ranks)? + "\n")?;
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Audit(audit) => run_audit(audit),
        Command::Campaign { kind, opts } => {
            let cfg = opts.config(kind)?;
            let summary = match harness::run(&cfg) {
                Ok(s) => s,
                Err(Error::Violation(msg)) => {
                    eprintln!("violation: {msg}");
                    return Ok(Outcome::Violation);
                }
                Err(e) => return Err(e),
            };
            summary.write_csv(io::stdout().lock())?;
            Ok(Outcome::Ok)
        }
    }
}

fn run_audit(audit: Audit) -> lmtopo_core::Result<Outcome> {
    match audit {
        Audit::Coiso { n, d, field, cap, out } => {
            let report = coiso_audit(n, d, field, cap, &Caps::default())?;
            if let Some(path) = out {
                let mut w = BufWriter::new(fs::File::create(path)?);
                report.write_jsonl(&mut w)?;
                w.flush()?;
            }
            print_json(&serde_json::json!({
                "n": n,
                "d": d,
                "field": field.to_string(),
                "support_cap": cap,
                "checked": report.checked,
                "shortened": report.shortened,
                "violations": report.violations,
                "caps": report.caps,
            }))?;
            Ok(verdict(report.passed()))
        }
        Audit::Matrixbound { trials, n, cap, seed } => {
            if n == 0 || cap < 0 {
                return Err(Error::InvalidParameter("need n >= 1 and cap >= 0".into()));
            }
            let report = matrixbound_audit(trials, n, cap, seed);
            print_json(&report)?;
            Ok(verdict(report.violations == 0))
        }
        Audit::StrongCount { n, d, cap } => {
            if d == 0 {
                return Err(Error::InvalidParameter("d must be at least 1".into()));
            }
            let mut ok = true;
            for k in 1..=cap {
                let count = enumerate_strongly_connected(n, d - 1, k)?.count();
                let bound = strong_count_bound(n, d, k);
                let holds = Int::from(count) <= bound;
                ok &= holds;
                print_json(
                    &serde_json::json!({ "n": n, "d": d, "k": k, "count": count, "bound": bound, "ok": holds }),
                )?;
            }
            Ok(verdict(ok))
        }
        Audit::Conditions { input, cap } => {
            let y = read_complex(&input)?;
            let mut caps = Caps::default();
            if let Some(k) = cap {
                caps.k_max = k;
            }
            let report = check_conditions(&y, &caps)?;
            let rank_ok = deterministic_rank_check(&y);
            print_json(&serde_json::json!({ "conditions": report, "rank_check": rank_ok }))?;
            Ok(verdict(rank_ok || !report.rank_premises_hold()))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(Error::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
