use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use symtensor::decompose::{
    convergence_profile, decompose_binary_monomial, decompose_sym222_pencil, verify, BorderKind, BorderSequenceSpec,
    Field, PencilClass,
};
use symtensor::json::{decomposition_from_json, decomposition_to_json, dense_to_json, sym_to_json, tensor_from_json, TensorFile};
use symtensor::montecarlo::{typical_rank_experiment, typical_rank_experiment_sharded, Case, TrialStats};
use symtensor::quantic::{parse_quantic, quantic_to_tensor, render_quantic, tensor_to_quantic};
use symtensor::rank_oracle::{fiber_dimension_table, generic_rank_table, rank_report};
use symtensor::{combinatorics, Error, SymTensor};

/// Complex symmetric tensors: ranks, quantics and decompositions.
#[derive(Parser)]
#[command(name = "symtensor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the space of symmetric tensors, C(n+k-1, k).
    Dim {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
    },
    /// Generic rank report as JSON.
    Rank {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
    },
    /// Table of generic ranks or fiber dimensions; exceptional cells marked `*`.
    Table {
        #[arg(long, value_enum, default_value_t = TableKind::Generic)]
        what: TableKind,
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 3)]
        min_order: usize,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        #[arg(long, default_value_t = 2)]
        min_dim: usize,
        #[arg(long, default_value_t = 10)]
        max_dim: usize,
    },
    /// Symmetrizes a dense tensor and writes it in compressed form.
    Symmetrize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the dense format instead of the compressed one.
        #[arg(long)]
        dense: bool,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Prints the quantic of a symmetric tensor.
    ToPoly {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Reads a quantic, e.g. `3*x1*x2^2 - x1^3`, and writes its tensor.
    FromPoly {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Symmetric outer product decomposition.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, value_enum, default_value_t = FieldArg::C)]
        field: FieldArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Checks a decomposition against a tensor; exit status 0 iff it verifies.
    Verify {
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long)]
        decomp: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Distances to the limit along a low-rank sequence, halving epsilon.
    DemoBorder {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0.125)]
        epsilon: f64,
        /// Order for `rank2tok`.
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Typical real rank frequencies of random 2x2x2 tensors.
    Montecarlo {
        #[arg(long = "case", value_enum)]
        case: CaseArg,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Split the trials into this many sequential shards.
        #[arg(long)]
        workers: Option<u64>,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Generic,
    Fiber,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Monomial,
    Pencil,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Rank2to3,
    Rank2tok,
    Tangent,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Sym222,
    Asym222,
}

/// A message and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegeneratePencil(_) => Failure::check(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_symmetric(path: &Path, tol: f64) -> Result<SymTensor, Failure> {
    let file = tensor_from_json(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(file.into_symmetric(tol)?)
}

fn positive(name: &str, value: f64) -> Outcome {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Failure::usage(format!("--{name} must be positive, got {value}")))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Dim { order, dim } => {
            println!("{}", combinatorics::sym_dimension(order, dim)?);
        }
        Command::Rank { order, dim } => {
            let report = rank_report(order, dim)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
        }
        Command::Table { what, csv, min_order, max_order, min_dim, max_dim } => {
            if min_order > max_order || min_dim > max_dim {
                return Err(Failure::usage("empty table range"));
            }
            let table = match what {
                TableKind::Generic => generic_rank_table(min_order..=max_order, min_dim..=max_dim)?,
                TableKind::Fiber => fiber_dimension_table(min_order..=max_order, min_dim..=max_dim)?,
            };
            print!("{}", if csv { table.to_csv() } else { table.to_text() });
        }
        Command::Symmetrize { input, out, dense, tol } => {
            positive("tol", tol)?;
            let file = tensor_from_json(&read(&input)?).map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
            let d = match file {
                TensorFile::Dense(d) => d,
                TensorFile::Sym(s) => s.decompress()?,
            };
            let sym = d.symmetrize();
            let text = if dense {
                dense_to_json(&sym)
            } else {
                sym_to_json(&symtensor::tensor::SymmetricTensor::compress(&sym, tol)?)
            };
            emit(out.as_deref(), &text)?;
        }
        Command::ToPoly { input, tol } => {
            positive("tol", tol)?;
            let a = load_symmetric(&input, tol)?;
            println!("{}", render_quantic(&tensor_to_quantic(&a)));
        }
        Command::FromPoly { input, out, dim, order } => {
            let text = read(&input)?;
            let q = parse_quantic(text.trim(), dim, order)?;
            emit(out.as_deref(), &sym_to_json(&quantic_to_tensor(&q)))?;
        }
        Command::Decompose { input, method, field, out, tol } => {
            positive("tol", tol)?;
            let a = load_symmetric(&input, tol)?;
            let field = match field {
                FieldArg::R => Field::Real,
                FieldArg::C => Field::Complex,
            };
            let d = match method {
                Method::Monomial => {
                    if field == Field::Real {
                        return Err(Failure::usage("the monomial method yields complex terms; use --field C"));
                    }
                    decompose_binary_monomial(&a)?
                }
                Method::Pencil => {
                    let outcome = decompose_sym222_pencil(&a, field)?;
                    let class = match outcome.class {
                        PencilClass::Rank2 => "rank2",
                        PencilClass::RealRank3 => "real_rank_3",
                    };
                    eprintln!("classification: {class}");
                    outcome.decomposition
                }
            };
            emit(out.as_deref(), &decomposition_to_json(&d))?;
        }
        Command::Verify { tensor, decomp, tol } => {
            positive("tol", tol)?;
            let a = load_symmetric(&tensor, 1e-12)?;
            let d = decomposition_from_json(&read(&decomp)?).map_err(|e| Failure::usage(format!("{}: {e}", decomp.display())))?;
            let report = verify(&d, &a, tol)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            if !report.ok {
                return Err(Failure::check(format!("residual {:e} exceeds tolerance", report.residual)));
            }
        }
        Command::DemoBorder { kind, epsilon, order, steps, csv } => {
            positive("epsilon", epsilon)?;
            if steps == 0 {
                return Err(Failure::usage("--steps must be at least 1"));
            }
            let (kind, dim) = match kind {
                KindArg::Rank2to3 => (BorderKind::Rank2To3, 2),
                KindArg::Rank2tok => (BorderKind::Rank2ToK { order }, 2),
                KindArg::Tangent => (BorderKind::TangentSum, 3),
            };
            let spec = BorderSequenceSpec::<f64>::standard(kind, dim)?;
            let schedule: Vec<f64> = (0..steps).map(|i| epsilon / 2f64.powi(i as i32)).collect();
            let profile = convergence_profile(&spec, &schedule)?;
            if csv {
                println!("epsilon,distance,ratio");
            } else {
                println!("{:>14} {:>14} {:>8}", "epsilon", "distance", "ratio");
            }
            let mut previous: Option<f64> = None;
            for (e, d) in &profile {
                let ratio = previous.map(|p| format!("{:.4}", p / d)).unwrap_or_default();
                if csv {
                    println!("{e:e},{d:e},{ratio}");
                } else {
                    println!("{e:>14.6e} {d:>14.6e} {ratio:>8}");
                }
                previous = Some(*d);
            }
            if profile.len() > 1 {
                let slope = symtensor::decompose::loglog_slope(&profile)?;
                if !csv {
                    println!("log-log slope: {slope:.4}");
                }
            }
        }
        Command::Montecarlo { case, samples, seed, workers, csv } => {
            let case = match case {
                CaseArg::Sym222 => Case::Sym222,
                CaseArg::Asym222 => Case::Asym222,
            };
            let stats = match workers {
                Some(w) => typical_rank_experiment_sharded(case, samples, seed, w)?,
                None => typical_rank_experiment(case, samples, seed)?,
            };
            if csv {
                println!("{}\n{}", TrialStats::CSV_HEADER, stats.csv_row());
            } else {
                println!("{}", serde_json::to_string(&stats).expect("stats serialize"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
