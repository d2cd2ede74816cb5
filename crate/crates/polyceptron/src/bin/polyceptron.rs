//! Command-line interface: generate datasets, train and apply models, run
//! cross-validation, and query the brute-force separability oracle.
//!
//! Every run is reproducible: identical flags and inputs produce identical
//! output files (the cross-validation report's timestamp line aside).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polyceptron::{
    gen_dataset1, gen_dataset2, gen_random_polyhedron, io, is_polyhedrally_separable, k_fold_cv,
    mistake_curve_export, train_batch, train_online, BatchConfig, Error, Label, OnlineConfig,
    Trainer,
};

#[derive(Parser)]
#[command(name = "polyceptron", version, about = "Polyhedral classifier toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DatasetKind {
    /// 10-dimensional, 3 generating halfspaces.
    D1,
    /// 20-dimensional, 4 generating halfspaces.
    D2,
    /// Random polyhedron; requires --dim, --k, and --margin.
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Batch,
    Online,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labeled dataset CSV.
    Gen {
        #[arg(long, value_enum)]
        dataset: DatasetKind,
        /// Number of samples.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Feature dimension (random datasets only).
        #[arg(long)]
        dim: Option<usize>,
        /// Number of generating halfspaces (random datasets only).
        #[arg(long)]
        k: Option<usize>,
        /// Minimum |margin| kept when sampling (random datasets only).
        #[arg(long)]
        margin: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a model on a dataset CSV and save it.
    Train {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        data: PathBuf,
        /// Number of facets in the trained model.
        #[arg(long)]
        k: usize,
        /// Gradient step size (batch only; default 0.1).
        #[arg(long)]
        eta: Option<f64>,
        /// Gradient-norm-sum stopping threshold (batch only; default 50).
        #[arg(long)]
        gamma: Option<f64>,
        /// Outer iteration cap (batch only; default 1000).
        #[arg(long)]
        max_iters: Option<usize>,
        /// Gradient steps per facet per outer iteration (batch only;
        /// default 20).
        #[arg(long)]
        inner_steps: Option<usize>,
        /// Pass budget (online only; default 300).
        #[arg(long)]
        passes: Option<usize>,
        /// Update magnitude (online only; default 1).
        #[arg(long)]
        step: Option<f64>,
        /// Reshuffle the visiting order each pass (online only;
        /// default false).
        #[arg(long)]
        shuffle: Option<bool>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        model_out: PathBuf,
        /// Write the per-pass mistake curve CSV (online only).
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// Apply a saved model to a dataset CSV; emits predicted label and
    /// decision value per row.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Repeated stratified k-fold cross-validation. Writes a key-value
    /// report to --report-out and per-fold accuracies to
    /// `<report-out>.folds.csv`.
    Cv {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        data: PathBuf,
        /// Number of facets in each trained model.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        inner_steps: Option<usize>,
        #[arg(long)]
        passes: Option<usize>,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        shuffle: Option<bool>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        report_out: PathBuf,
    },
    /// Ask the brute-force oracle whether the dataset admits a perfect
    /// k-facet model. Prints `separable true|false` and whether any
    /// subproblem exhausted the update cap (making a negative answer
    /// inconclusive).
    CheckSeparable {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        k: usize,
        /// Perceptron update cap per facet subproblem.
        #[arg(long)]
        cap: usize,
    },
}

/// Report a flag combination the subcommand does not accept, with the
/// conventional usage-error exit status.
fn usage_error(message: &str) -> ! {
    eprintln!("error: {message}");
    std::process::exit(2);
}

struct TrainerFlags {
    eta: Option<f64>,
    gamma: Option<f64>,
    max_iters: Option<usize>,
    inner_steps: Option<usize>,
    passes: Option<usize>,
    step: Option<f64>,
    shuffle: Option<bool>,
}

/// Resolve `--algo` plus the trainer flags into a configuration, rejecting
/// flags that belong to the other algorithm.
fn resolve_trainer(algo: Algo, k: usize, seed: u64, flags: TrainerFlags) -> Trainer {
    match algo {
        Algo::Batch => {
            for (set, name) in [
                (flags.passes.is_some(), "--passes"),
                (flags.step.is_some(), "--step"),
                (flags.shuffle.is_some(), "--shuffle"),
            ] {
                if set {
                    usage_error(&format!("{name} applies to --algo online only"));
                }
            }
            let mut cfg = BatchConfig::new(k);
            cfg.seed = seed;
            if let Some(eta) = flags.eta {
                cfg.eta = eta;
            }
            if let Some(gamma) = flags.gamma {
                cfg.gamma = gamma;
            }
            if let Some(max_iters) = flags.max_iters {
                cfg.max_outer_iters = max_iters;
            }
            if let Some(inner_steps) = flags.inner_steps {
                cfg.inner_steps = inner_steps;
            }
            Trainer::Batch(cfg)
        }
        Algo::Online => {
            for (set, name) in [
                (flags.eta.is_some(), "--eta"),
                (flags.gamma.is_some(), "--gamma"),
                (flags.max_iters.is_some(), "--max-iters"),
                (flags.inner_steps.is_some(), "--inner-steps"),
            ] {
                if set {
                    usage_error(&format!("{name} applies to --algo batch only"));
                }
            }
            let mut cfg = OnlineConfig::new(k);
            cfg.seed = seed;
            if let Some(passes) = flags.passes {
                cfg.passes = passes;
            }
            if let Some(step) = flags.step {
                cfg.step = step;
            }
            if let Some(shuffle) = flags.shuffle {
                cfg.shuffle_each_pass = shuffle;
            }
            Trainer::Online(cfg)
        }
    }
}

fn run(command: Command) -> polyceptron::Result<()> {
    match command {
        Command::Gen {
            dataset,
            n,
            seed,
            dim,
            k,
            margin,
            out,
        } => {
            match dataset {
                DatasetKind::D1 | DatasetKind::D2 => {
                    for (set, name) in [
                        (dim.is_some(), "--dim"),
                        (k.is_some(), "--k"),
                        (margin.is_some(), "--margin"),
                    ] {
                        if set {
                            usage_error(&format!("{name} applies to --dataset random only"));
                        }
                    }
                    let data = match dataset {
                        DatasetKind::D1 => gen_dataset1(n, seed),
                        _ => gen_dataset2(n, seed),
                    };
                    io::save_csv(&out, &data)?;
                }
                DatasetKind::Random => {
                    let (Some(dim), Some(k), Some(margin)) = (dim, k, margin) else {
                        usage_error("--dataset random requires --dim, --k, and --margin");
                    };
                    let (_, data) = gen_random_polyhedron(dim, k, n, margin, seed)?;
                    io::save_csv(&out, &data)?;
                }
            }
            Ok(())
        }
        Command::Train {
            algo,
            data,
            k,
            eta,
            gamma,
            max_iters,
            inner_steps,
            passes,
            step,
            shuffle,
            seed,
            model_out,
            curve_out,
        } => {
            let trainer = resolve_trainer(
                algo,
                k,
                seed,
                TrainerFlags {
                    eta,
                    gamma,
                    max_iters,
                    inner_steps,
                    passes,
                    step,
                    shuffle,
                },
            );
            let samples = io::load_csv_auto(&data)?;
            match trainer {
                Trainer::Batch(cfg) => {
                    if curve_out.is_some() {
                        usage_error(
                            "--curve-out applies to --algo online only \
                             (it records per-pass mistake counts)",
                        );
                    }
                    let (model, _) = train_batch(&samples, &cfg)?;
                    io::save_model(&model_out, &model)?;
                }
                Trainer::Online(cfg) => {
                    let (model, curve) = train_online(&samples, &cfg)?;
                    io::save_model(&model_out, &model)?;
                    if let Some(curve_out) = curve_out {
                        mistake_curve_export(&curve, &curve_out)?;
                    }
                }
            }
            Ok(())
        }
        Command::Predict { model, data, out } => {
            let model = io::load_model(&model)?;
            let samples = io::load_csv_auto(&data)?;
            if samples[0].dim() != model.dim() {
                return Err(Error::DimensionMismatch {
                    expected: model.dim(),
                    got: samples[0].dim(),
                });
            }
            let rows: Vec<(Label, f64)> = samples
                .iter()
                .map(|s| {
                    let h = model.decision_value(&s.features);
                    (Label::from_sign(h), h)
                })
                .collect();
            io::save_predictions(&out, &rows)?;
            Ok(())
        }
        Command::Cv {
            algo,
            data,
            k,
            folds,
            repeats,
            eta,
            gamma,
            max_iters,
            inner_steps,
            passes,
            step,
            shuffle,
            seed,
            report_out,
        } => {
            let trainer = resolve_trainer(
                algo,
                k,
                seed,
                TrainerFlags {
                    eta,
                    gamma,
                    max_iters,
                    inner_steps,
                    passes,
                    step,
                    shuffle,
                },
            );
            let samples = io::load_csv_auto(&data)?;
            let report = k_fold_cv(&samples, &trainer, folds, repeats, seed)?;
            report.write_report(&report_out)?;
            let mut folds_csv = report_out.clone().into_os_string();
            folds_csv.push(".folds.csv");
            report.write_fold_csv(Path::new(&folds_csv))?;
            Ok(())
        }
        Command::CheckSeparable { data, k, cap } => {
            let samples = io::load_csv_auto(&data)?;
            let witness = is_polyhedrally_separable(&samples, k, cap)?;
            println!("separable {}", witness.separable);
            println!("cap_exhausted {}", witness.cap_exhausted);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
