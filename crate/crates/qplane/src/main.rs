//! `qplane`: verification suites, expression normal forms and rule dumps.
//!
//! Exit codes: 0 when every identity holds, 1 when one fails, 2 for usage
//! and configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qplane::bundles::{curvature_factor, DEFAULT_BOUND};
use qplane::calculus::CalculusParams;
use qplane::cli::{parse, run_suite, Sampling, SignChoice, SuiteConfig, SuiteReport};
use qplane::qalgebra::ring;
use qplane::Error;

#[derive(Parser)]
#[command(name = "qplane", version, about = "Exact verification on SU_q(3), CP^2_q and its instantons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: core, symmetry, calculus, kahler, monopole, instanton, families or all.
    #[command(visible_alias = "suite")]
    Run {
        name: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Monopole connections on L_N.
    Monopole {
        #[arg(long = "N", allow_hyphen_values = true)]
        n: i32,
        #[arg(long, value_enum, default_value = "curvature")]
        check: MonopoleCheck,
        #[command(flatten)]
        opts: Opts,
    },
    /// The instanton family: every curvature and connection step.
    Instanton {
        #[arg(long, required = true)]
        verify: bool,
        #[command(flatten)]
        opts: Opts,
    },
    /// The noncommutative family swept out by the coaction.
    Families {
        #[arg(long, value_enum, default_value = "coaction")]
        check: FamiliesCheck,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print the normal form of an expression such as "zs[1]*z[1]" or "wedge(del(x), delbar(x))".
    Parse {
        expr: String,
        /// Sign s of the calculus constants used by wedge products.
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        s_sign: String,
    },
    /// Dump the rewrite rules as JSON.
    Rules {
        /// Largest member of the cubic rule family to include.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MonopoleCheck {
    Curvature,
    Leibniz,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamiliesCheck {
    Coaction,
}

#[derive(Args)]
struct Opts {
    /// +1, -1 or both.
    #[arg(long, default_value = "both", allow_hyphen_values = true)]
    s_sign: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Degree bound of randomized properties.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Samples per randomized property.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run only this step.
    #[arg(long)]
    step: Option<String>,
    /// Render residuals in full.
    #[arg(long)]
    verbose: bool,
}

impl Opts {
    fn config(&self) -> Result<SuiteConfig, Error> {
        SuiteConfig {
            signs: self.s_sign.parse()?,
            sampling: Sampling { seed: self.seed, samples: self.samples, max_degree: self.max_degree },
            step: self.step.clone(),
            verbose: self.verbose,
            threads: None,
        }
        .with_env_threads()
    }
}

fn emit(report: &SuiteReport, opts: &Opts) -> Result<ExitCode, Error> {
    match opts.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            print!("{}", report.render_text());
            std::fs::write(p, report.to_json() + "\n")
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display())))?;
        }
        None => print!("{}", report.render_text()),
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn suite(name: &str, opts: &Opts, step: Option<String>) -> Result<ExitCode, Error> {
    let mut cfg = opts.config()?;
    if step.is_some() {
        cfg.step = step;
    }
    emit(&run_suite(name, &cfg)?, opts)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Run { name, opts } => suite(&name, &opts, None),
        Command::Monopole { n, check, opts } => match check {
            MonopoleCheck::Curvature => {
                if n.abs() > DEFAULT_BOUND {
                    return Err(Error::Config(format!("N must lie in -{DEFAULT_BOUND}..={DEFAULT_BOUND}")));
                }
                let signs: SignChoice = opts.s_sign.parse()?;
                for &s in signs.signs() {
                    println!("s = {s:+}: F_{n} = ({}) omega_q", curvature_factor(n, s));
                }
                suite("monopole", &opts, Some(format!("curvature-N={n}")))
            }
            MonopoleCheck::Leibniz => {
                let mut cfg = opts.config()?;
                let mut reports = Vec::new();
                for step in ["left-leibniz", "conjugation-bridge"] {
                    cfg.step = Some(step.into());
                    reports.push(run_suite("monopole", &cfg)?);
                }
                let mut merged = reports.remove(0);
                merged.results.extend(reports.into_iter().flat_map(|r| r.results));
                emit(&merged, &opts)
            }
        },
        Command::Instanton { opts, .. } => suite("instanton", &opts, None),
        Command::Families { check: FamiliesCheck::Coaction, opts } => suite("families", &opts, None),
        Command::Parse { expr, s_sign } => {
            let s = match s_sign.parse::<SignChoice>()? {
                SignChoice::Minus => -1,
                SignChoice::Plus => 1,
                SignChoice::Both => return Err(Error::Config("parse takes a single sign".into())),
            };
            let params = CalculusParams::default_for(s)?;
            println!("{}", parse(&expr, &params)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Rules { bound } => {
            let json = ring().system().rules_json(bound)?;
            println!("{}", serde_json::to_string_pretty(&json).expect("rules serialize"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qplane: {e}");
            if matches!(e, Error::Config(_)) {
                eprintln!("run `qplane --help` for usage");
            }
            ExitCode::from(2)
        }
    }
}
