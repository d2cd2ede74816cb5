//! Generate the synthetic benchmark datasets and a random polyhedral
//! instance, then save one to CSV.
//!
//! ```sh
//! cargo run --example generate_data
//! ```

use polyceptron::{gen_dataset1, gen_dataset2, gen_random_polyhedron, io, Label};

fn balance(data: &[polyceptron::LabeledSample]) -> f64 {
    let pos = data.iter().filter(|s| s.label == Label::Positive).count();
    pos as f64 / data.len() as f64
}

fn main() -> polyceptron::Result<()> {
    // The two fixed benchmark generators: points uniform on a hypercube,
    // labeled +1 inside a hard-coded intersection of halfspaces.
    let d1 = gen_dataset1(1000, 7);
    let d2 = gen_dataset2(1000, 7);
    println!(
        "dataset 1: {} samples, dim 10, positive fraction {:.3}",
        d1.len(),
        balance(&d1)
    );
    println!(
        "dataset 2: {} samples, dim 20, positive fraction {:.3}",
        d2.len(),
        balance(&d2)
    );

    // A random instance: 2-D, two halfspaces, and a margin band around the
    // boundary that sampling avoids, so the classes are strictly separable.
    let (polyhedron, random_data) = gen_random_polyhedron(2, 2, 200, 0.1, 42)?;
    println!(
        "random instance: {} samples, dim {}, {} halfspaces, positive fraction {:.3}",
        random_data.len(),
        polyhedron.dim(),
        polyhedron.len(),
        balance(&random_data)
    );
    for (i, hs) in polyhedron.halfspaces().iter().enumerate() {
        println!(
            "  halfspace {}: normal [{:+.3}, {:+.3}], offset {:+.3}",
            i + 1,
            hs.normal[0],
            hs.normal[1],
            hs.offset
        );
    }

    // The generating polyhedron, viewed as a model, classifies its own
    // data perfectly -- handy as a sanity check and as ground truth.
    let truth = polyhedron.to_model();
    let acc = polyceptron::accuracy(&truth, &random_data)?;
    println!("generating polyhedron's accuracy on its own data: {acc}");

    // Datasets round-trip through a plain CSV format: feature columns,
    // then a +1/-1 label column.
    let out = std::env::temp_dir().join("polyceptron-dataset1.csv");
    io::save_csv(&out, &d1)?;
    let back = io::load_csv(&out, false)?;
    assert_eq!(d1, back);
    println!(
        "saved dataset 1 to {} and read it back intact",
        out.display()
    );
    Ok(())
}
