//! A weight plan read from a file, checked against the closed-form weights
//! for the same graph and then used to bootstrap.

use causal_bootstrap::density::Kernels;
use causal_bootstrap::resample::{causal_bootstrap, BootstrapSpec};
use causal_bootstrap::synthdata::{gen_tikka, EnvSpec};
use causal_bootstrap::weights::{parse_plan, TikkaModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/plans/tikka.plan");
    let plan = parse_plan(&std::fs::read_to_string(path)?)?;
    println!("secondary variables: {:?}", plan.secondary());

    let data = gen_tikka(&EnvSpec::new(1, 1500, 9)?)?;
    let k = Kernels::new();
    let compiled = plan.compile(&data, &k)?;
    let closed = TikkaModel::fit(&data, "w", "z", "y", &k)?;
    for y in [1.0, 2.0] {
        let (a, b) = (compiled.weights(y)?, closed.weights(y)?);
        let diff = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max);
        println!(
            "do(y={y}): weight sum {:.6}, max difference from closed form {diff:.1e}",
            a.sum()
        );
    }
    let sample = causal_bootstrap(
        &data,
        &["x"],
        "y",
        |y| compiled.weights(y),
        &BootstrapSpec::new(1),
    )?;
    println!(
        "bootstrap: {} rows, floor hits {}",
        sample.data.n_rows(),
        sample.floor_hits
    );
    Ok(())
}
