use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use hyperquot::io::{FamilyJson, MetricJson, SpaceJson};
use hyperquot::verifier::{run_suite, CheckName, SuiteConfig};
use hyperquot::{Execution, Mask};

mod render;

/// Exit status for rejected input, whether from arguments or files.
const INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "hyperquot", version, about = "Finite hyperspace topologies and their function-space quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Show {
    Carrier,
    Vietoris,
    Quotients,
}

#[derive(Subcommand)]
enum Command {
    /// List every topology on n points with its separation flags.
    Enumerate {
        #[arg(short = 'n', value_parser = clap::value_parser!(u8).range(1..=4))]
        n: u8,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the theorem checks over the instance grid.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_x: usize,
        #[arg(long, default_value_t = 3)]
        max_y: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
        /// A family file (one object or an array) added as probe instances.
        #[arg(long)]
        explicit_f: Option<PathBuf>,
        /// Comma-separated check names; all checks when absent.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Allow |X| = 4 (exhaustive) and |X| = 5 (sampled).
        #[arg(long)]
        deep: bool,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Perturb the upper-Vietoris comparison (test builds only).
        #[cfg(feature = "fault-injection")]
        #[arg(long)]
        inject_fault: bool,
    },
    /// Hausdorff distance between two subsets under all four formulas.
    Hausdorff {
        #[arg(short = 'm', long)]
        metric: PathBuf,
        #[arg(short = 'a', value_delimiter = ',', required = true)]
        a: Vec<usize>,
        #[arg(short = 'b', value_delimiter = ',', required = true)]
        b: Vec<usize>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Hyperspace carrier and topologies of a space.
    Hyper {
        #[arg(short = 's', long)]
        space: PathBuf,
        #[arg(short = 'y', long)]
        y_size: usize,
        #[arg(long, value_enum, default_value = "vietoris")]
        show: Show,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INVALID)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("HYPERQUOT_THREADS") {
        let n: usize = v.parse().with_context(|| format!("HYPERQUOT_THREADS={v:?} is not a count"))?;
        if n == 0 {
            bail!("HYPERQUOT_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() -> anyhow::Result<()> {
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum Families {
    One(FamilyJson),
    Many(Vec<FamilyJson>),
}

fn run(cmd: Command) -> anyhow::Result<u8> {
    match cmd {
        Command::Enumerate { n, out, format } => {
            let tops = hyperquot::topology::enumerate_topologies(n as usize)?;
            emit(out.as_deref(), &render::topologies(&tops, format)?)?;
            Ok(0)
        }
        Command::Verify {
            max_x,
            max_y,
            seed,
            out,
            explicit_f,
            checks,
            deep,
            timings,
            sequential,
            format,
            #[cfg(feature = "fault-injection")]
            inject_fault,
        } => {
            let explicit = match explicit_f {
                None => Vec::new(),
                Some(p) => match read_json::<Families>(&p)? {
                    Families::One(f) => vec![f],
                    Families::Many(fs) => fs,
                },
            };
            let checks = checks
                .iter()
                .map(|c| c.parse::<CheckName>())
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = SuiteConfig {
                max_x,
                max_y,
                seed,
                deep,
                checks,
                explicit,
                timings,
                execution: if sequential { Execution::Sequential } else { Execution::Parallel },
                #[cfg(feature = "fault-injection")]
                fault: if inject_fault {
                    hyperquot::verifier::FaultPlan::PerturbUpperVietoris
                } else {
                    hyperquot::verifier::FaultPlan::None
                },
                ..SuiteConfig::default()
            };
            let report = run_suite(&cfg)?;
            emit(out.as_deref(), &render::report(&report, format)?)?;
            if out.is_some() {
                eprintln!("{}", render::summary_line(&report));
            }
            Ok(report.exit_code() as u8)
        }
        Command::Hausdorff { metric, a, b, format } => {
            let m = read_json::<MetricJson>(&metric)?.to_metric()?;
            let mask = |ix: &[usize], name: &str| -> anyhow::Result<Mask> {
                if let Some(&i) = ix.iter().find(|&&i| i >= m.size()) {
                    bail!("{name} contains point {i} outside a space of {} points", m.size());
                }
                Ok(ix.iter().copied().collect())
            };
            let (a, b) = (mask(&a, "A")?, mask(&b, "B")?);
            let values = m.hausdorff_variants(a, b)?;
            let agree = values.iter().all(|v| (v - values[0]).abs() <= hyperquot::metric::TOLERANCE);
            print!("{}", render::hausdorff(&values, agree, format)?);
            Ok(if agree { 0 } else { 1 })
        }
        Command::Hyper {
            space,
            y_size,
            show,
            format,
        } => {
            let space = read_json::<SpaceJson>(&space)?.to_space()?;
            let text = match show {
                Show::Carrier => render::carrier(&space, y_size, format)?,
                Show::Vietoris => render::vietoris(&space, y_size, format)?,
                Show::Quotients => render::quotients(&space, y_size, format)?,
            };
            print!("{text}");
            Ok(0)
        }
    }
}
