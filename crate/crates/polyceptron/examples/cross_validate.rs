//! Compare the batch and online trainers with repeated stratified k-fold
//! cross-validation.
//!
//! ```sh
//! cargo run --example cross_validate
//! ```

use polyceptron::{gen_dataset1, k_fold_cv, BatchConfig, OnlineConfig, Trainer};

fn main() -> polyceptron::Result<()> {
    let data = gen_dataset1(1000, 0);

    // 10 repetitions of 10-fold CV; every training run gets a seed derived
    // from the harness seed, so the whole table reproduces exactly.
    let experiments = [
        ("batch ", Trainer::Batch(BatchConfig::new(3))),
        ("online", Trainer::Online(OnlineConfig::new(3))),
    ];

    println!("trainer  mean±std accuracy   mean train seconds");
    for (name, trainer) in experiments {
        let report = k_fold_cv(&data, &trainer, 10, 10, 0)?;
        println!(
            "{name}   {:.2}% ± {:.2}%       {:.4}",
            100.0 * report.mean_accuracy(),
            100.0 * report.std_over_repeats(),
            report.mean_train_seconds(),
        );

        // Reports serialize to a flat key-value file plus a per-fold CSV.
        let base = std::env::temp_dir().join(format!("polyceptron-cv-{}.txt", name.trim()));
        report.write_report(&base)?;
        let csv = base.with_extension("folds.csv");
        report.write_fold_csv(&csv)?;
        println!("         report: {}", base.display());
    }
    Ok(())
}
