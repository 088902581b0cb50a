//! Generates background-MNIST samples from the bundled digits and shows the
//! brightness confound: in environment 1 the background alone predicts the digit.

use causal_bootstrap::synthdata::{gen_mnist_backdoor, load_mnist_idx, EnvSpec, ImagePool};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data"));
    let mnist = load_mnist_idx(
        &dir.join("digits-2-6-images.idx3-ubyte"),
        &dir.join("digits-2-6-labels.idx1-ubyte"),
    )?;
    println!(
        "{} images: {} of digit 2, {} of digit 6",
        mnist.len(),
        mnist.count(2),
        mnist.count(6)
    );

    let pools = ImagePool::partition(&mnist, 3, 0);
    for (e, pool) in [1u8, 3].into_iter().zip([&pools[0], &pools[2]]) {
        let d = gen_mnist_backdoor(&mnist, pool, &EnvSpec::new(e, 500, 10 + e as u64)?)?;
        let (y, x) = (d.scalar("y")?, d.variable("x")?);
        let corner_rule = (0..d.n_rows())
            .filter(|&i| (x.row(i)[0] > 50.0) == (y[i] == 1.0))
            .count();
        println!(
            "e={e}: a bright corner pixel predicts y for {:.1}% of rows",
            100.0 * corner_rule as f64 / d.n_rows() as f64
        );
    }
    Ok(())
}
