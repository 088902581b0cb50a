//! Runs one replicated experiment and prints the accuracy grid.
//!
//! ```text
//! cargo run --release --example experiment_grid -- gauss-backdoor
//! cargo run --release --example experiment_grid -- mnist-backdoor tests/data/digits-2-6-images.idx3-ubyte tests/data/digits-2-6-labels.idx1-ubyte
//! ```

use std::time::Instant;

use causal_bootstrap::experiment::{run_experiment, ExperimentConfig, ExperimentKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: ExperimentKind = args
        .first()
        .map_or("gauss-backdoor", String::as_str)
        .parse()?;
    let mut config = ExperimentConfig::new(kind);
    if kind.uses_mnist() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/");
        config.mnist_images = Some(
            args.get(1)
                .cloned()
                .unwrap_or(format!("{dir}digits-2-6-images.idx3-ubyte"))
                .into(),
        );
        config.mnist_labels = Some(
            args.get(2)
                .cloned()
                .unwrap_or(format!("{dir}digits-2-6-labels.idx1-ubyte"))
                .into(),
        );
    }
    let start = Instant::now();
    let report = run_experiment(&config)?;
    print!("{}", report.table());
    println!("elapsed: {:.1?}", start.elapsed());
    Ok(())
}
