//! Train a polyhedral classifier one sample at a time with mistake-driven
//! updates, and watch the per-pass mistake counts fall to zero.
//!
//! ```sh
//! cargo run --example train_online
//! ```

use polyceptron::{accuracy, gen_dataset1, mistake_curve_export, train_online, OnlineConfig};

fn main() -> polyceptron::Result<()> {
    let train = gen_dataset1(1000, 0);
    let test = gen_dataset1(1000, 1);

    let mut cfg = OnlineConfig::new(3);
    cfg.passes = 300;
    cfg.seed = 3;
    let (model, curve) = train_online(&train, &cfg)?;

    // The data is polyhedrally separable, so the mistake counts trend to
    // zero; a zero-mistake pass ends training early.
    println!("passes run: {} (budget {})", curve.len(), cfg.passes);
    println!(
        "converged (final pass mistake-free): {}",
        curve.is_converged()
    );
    println!("pass  mistakes");
    let counts = curve.counts();
    for (i, count) in counts.iter().enumerate() {
        if i % 10 == 0 || i + 1 == counts.len() {
            println!("{:>4}  {count}", i + 1);
        }
    }

    println!("training accuracy: {:.4}", accuracy(&model, &train)?);
    println!("held-out accuracy: {:.4}", accuracy(&model, &test)?);

    // Export the curve for plotting: CSV rows of `pass_index,mistakes`.
    let path = std::env::temp_dir().join("polyceptron-mistake-curve.csv");
    mistake_curve_export(&curve, &path)?;
    println!("mistake curve written to {}", path.display());
    Ok(())
}
