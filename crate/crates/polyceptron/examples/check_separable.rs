//! Use the brute-force oracle to decide polyhedral separability on tiny
//! instances, and cross-check the batch trainer against its verdicts.
//!
//! ```sh
//! cargo run --example check_separable
//! ```

use polyceptron::{
    accuracy, gen_random_polyhedron, is_polyhedrally_separable, train_batch, BatchConfig, Label,
    LabeledSample,
};

fn main() -> polyceptron::Result<()> {
    // The XOR pattern: diagonal corners positive, off-diagonal negative.
    // No single halfspace separates it, but two do (a band around the
    // diagonal), and the oracle finds such a witness by enumerating the
    // assignments of negative points to facets.
    let xor: Vec<LabeledSample> = [
        (vec![0.0, 0.0], Label::Positive),
        (vec![1.0, 1.0], Label::Positive),
        (vec![0.0, 1.0], Label::Negative),
        (vec![1.0, 0.0], Label::Negative),
    ]
    .into_iter()
    .map(|(x, y)| LabeledSample::new(x, y))
    .collect::<polyceptron::Result<_>>()?;

    for k in [1, 2] {
        let witness = is_polyhedrally_separable(&xor, k, 100_000)?;
        println!(
            "XOR with k={k}: separable={} cap_exhausted={}",
            witness.separable, witness.cap_exhausted
        );
        if let Some(model) = &witness.model {
            for (i, w) in model.weights().iter().enumerate() {
                println!("  facet {}: {w:?}", i + 1);
            }
            println!("  negatives assigned to facets: {:?}", witness.assignment);
        }
    }

    // On random separable instances the oracle and the batch trainer agree:
    // the oracle certifies separability, and the trainer finds a perfect
    // model for most instances.
    let mut trainer_perfect = 0;
    let total = 10;
    for seed in 0..total {
        let (_, data) = gen_random_polyhedron(2, 2, 14, 0.2, seed)?;
        let witness = is_polyhedrally_separable(&data, 2, 100_000)?;
        assert!(witness.separable, "generated instances are separable");

        let mut cfg = BatchConfig::new(2);
        cfg.gamma = 1e-6; // tiny dataset: gradient sums are small numbers
        cfg.max_outer_iters = 500;
        cfg.seed = seed;
        let (model, _) = train_batch(&data, &cfg)?;
        if accuracy(&model, &data)? == 1.0 {
            trainer_perfect += 1;
        }
    }
    println!(
        "random 2-D instances: oracle separable on {total}/{total}, \
         batch trainer perfect on {trainer_perfect}/{total}"
    );
    Ok(())
}
