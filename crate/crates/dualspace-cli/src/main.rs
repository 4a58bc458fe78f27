//! `dualspace` — act with row-finite matrices on sequence-space vectors,
//! compose and dualize them, walk the quotient tower, and run the seeded
//! verification suites.
//!
//! Exit codes: 0 success / all checks passed, 1 verification failure,
//! 2 usage error, 3 I/O error, 4 file parse error, 5 domain error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dualspace::duality::{DualMorphism, Orientation};
use dualspace::io::{parse_matrix, parse_vector, serialize_matrix, serialize_vector, VectorData};
use dualspace::limits::{from_thread, project, to_thread};
use dualspace::verify::{
    counterexample_file_name, format_report, run_suite, Suite, SuiteReport, VerifyConfig,
    CLI_SUITES,
};
use dualspace::{Error, ProdVec};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_IO: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_DOMAIN: u8 = 5;

#[derive(Parser)]
#[command(name = "dualspace", version, about = "Exact sequence-space duality toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    /// Left action on a product vector: `y ↦ F·y`.
    Left,
    /// Right action on a finite-support vector: `x ↦ x·F`.
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum LimitMode {
    /// Print the thread stages, one line per stage.
    Thread,
    /// Check the tower roundtrip at the given depth.
    Roundtrip,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Adjoint,
    Exact,
    Faithful,
    Full,
    Functor,
    Limits,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a matrix to a vector on the chosen side.
    Apply {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compose two matrices (rows of A combined through B).
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dualize a morphism: same matrix, flipped orientation.
    Dual {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Observe a product vector through the quotient tower.
    Limit {
        #[arg(long)]
        vector: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        #[arg(long, value_enum)]
        mode: LimitMode,
    },
    /// Run the randomized law suites and print the report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        trunc: u64,
        /// Defaults to $DUALSPACE_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::Parse { .. } | Error::FileInvariant { .. } => EXIT_PARSE,
        _ => EXIT_DOMAIN,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Apply { matrix, vector, side, out } => {
            let m = parse_matrix(&read(&matrix)?)?;
            let v = parse_vector(&read(&vector)?)?;
            let result = match side {
                Side::Right => {
                    let VectorData::Sparse(x) = v else {
                        return Err(Error::PreconditionViolated(
                            "the right action needs a sparse-kind vector".into(),
                        ));
                    };
                    VectorData::Sparse(m.act_right(&x)?)
                }
                Side::Left => {
                    let y = match v {
                        VectorData::Prefix(y) => y,
                        VectorData::Sparse(x) => x.embed(),
                    };
                    VectorData::Prefix(m.act_left(&y)?)
                }
            };
            write(&out, &serialize_vector(&result))?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Compose { a, b, out } => {
            let a = parse_matrix(&read(&a)?)?;
            let b = parse_matrix(&read(&b)?)?;
            let composed = a.compose(&b)?;
            write(&out, &serialize_matrix(&composed))?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { matrix, out } => {
            let m = parse_matrix(&read(&matrix)?)?;
            let morphism = DualMorphism::new(m, Orientation::RightOnFinSupp);
            let dual = morphism.dual();
            write(&out, &serialize_matrix(dual.matrix()))?;
            println!(
                "orientation: right-on-finsupp -> left-on-prod (matrix unchanged)"
            );
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Limit { vector, depth, mode } => {
            let depth = depth as usize;
            let v = parse_vector(&read(&vector)?)?;
            let y: ProdVec = match v {
                VectorData::Prefix(y) => y,
                VectorData::Sparse(x) => x.embed(),
            };
            let thread = to_thread(&y, depth)?;
            match mode {
                LimitMode::Thread => {
                    for stage in thread.stages() {
                        let line: Vec<String> = stage.iter().map(ToString::to_string).collect();
                        println!("{}", line.join(" "));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                LimitMode::Roundtrip => {
                    let back = from_thread(&thread);
                    for n in 1..=depth {
                        if project(&back, n)? != project(&y, n)? {
                            println!("roundtrip depth={depth} mismatch at n={n}");
                            return Ok(ExitCode::from(EXIT_VERIFY_FAILED));
                        }
                    }
                    println!("roundtrip depth={depth} ok");
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Verify { suite, trunc, seed, cases } => {
            let seed = seed
                .or_else(|| {
                    std::env::var("DUALSPACE_SEED").ok().and_then(|v| v.parse().ok())
                })
                .unwrap_or(42);
            let cfg = VerifyConfig { seed, cases: cases as usize, trunc: trunc as usize };
            let reports: Vec<SuiteReport> = match suite {
                SuiteArg::All => CLI_SUITES.iter().map(|&s| run_suite(s, &cfg)).collect(),
                one => {
                    let suite = match one {
                        SuiteArg::Adjoint => Suite::Adjoint,
                        SuiteArg::Exact => Suite::Exact,
                        SuiteArg::Faithful => Suite::Faithful,
                        SuiteArg::Full => Suite::Full,
                        SuiteArg::Functor => Suite::Functor,
                        SuiteArg::Limits => Suite::Limits,
                        SuiteArg::All => unreachable!("handled above"),
                    };
                    vec![run_suite(suite, &cfg)]
                }
            };
            for report in &reports {
                if let Some(ce) = &report.counterexample {
                    let name = counterexample_file_name(report.suite);
                    write(Path::new(&name), &ce.render(report.suite))?;
                }
            }
            print!("{}", format_report(&reports, &cfg));
            if reports.iter().all(|r| r.passed) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_VERIFY_FAILED))
            }
        }
    }
}
