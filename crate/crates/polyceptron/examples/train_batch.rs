//! Train a polyhedral classifier with the batch (alternating minimization)
//! trainer and inspect its convergence trace.
//!
//! ```sh
//! cargo run --example train_batch
//! ```

use polyceptron::{accuracy, gen_dataset1, io, train_batch, BatchConfig};

fn main() -> polyceptron::Result<()> {
    let train = gen_dataset1(1000, 0);
    let test = gen_dataset1(1000, 1);

    // Three facets, matching the three halfspaces that label the data.
    // Defaults: eta = 0.1, gamma = 50, up to 1000 outer iterations with
    // 20 gradient steps per facet each.
    let cfg = BatchConfig::new(3);
    let (model, trace) = train_batch(&train, &cfg)?;

    println!("stopped after {} outer iterations", trace.len());
    println!("iter  criterion  gradient_norm_sum  set_sizes");
    let records = trace.records();
    let shown: Vec<usize> = (0..records.len())
        .filter(|i| i % 5 == 0 || *i + 1 == records.len())
        .collect();
    for i in shown {
        let r = &records[i];
        println!(
            "{:>4}  {:>9.2}  {:>17.2}  {:?}",
            i + 1,
            r.criterion,
            r.gradient_norm_sum,
            r.set_sizes
        );
    }

    println!("training accuracy: {:.4}", accuracy(&model, &train)?);
    println!("held-out accuracy: {:.4}", accuracy(&model, &test)?);

    // Models serialize to a small text format for later `predict` runs.
    let path = std::env::temp_dir().join("polyceptron-batch-model.txt");
    io::save_model(&path, &model)?;
    let reloaded = io::load_model(&path)?;
    assert_eq!(model.weights(), reloaded.weights());
    println!("model saved to {}", path.display());
    Ok(())
}
