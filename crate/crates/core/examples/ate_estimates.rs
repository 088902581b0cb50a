//! Average causal effects from bootstrap weights, on the worked toy and on
//! the Gaussian back-door and front-door samples.

use causal_bootstrap::data::Dataset;
use causal_bootstrap::density::Kernels;
use causal_bootstrap::effects::{ate_backdoor, ate_frontdoor, weighted_quantile};
use causal_bootstrap::synthdata::{gen_gauss_backdoor, gen_gauss_frontdoor, EnvSpec};
use causal_bootstrap::weights::BackdoorModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = Kernels::new();
    let toy = Dataset::new(6)
        .with_discrete("y", 2, vec![1, 1, 1, 2, 2, 2])?
        .with_discrete("u", 2, vec![1, 1, 2, 1, 2, 2])?
        .with_continuous("x", vec![1.0, 3.0, 2.0, 0.0, 5.0, 1.0])?;
    println!(
        "toy ATE: {:?}",
        ate_backdoor(&toy, &["x"], &["u"], "y", 1.0, 2.0, &k)?
    );
    let w = BackdoorModel::fit(&toy, &["u"], "y", &k)?.weights(1.0)?;
    println!(
        "toy median of x under do(y=1): {:?}",
        weighted_quantile(&toy, &["x"], w.values(), 0.5)?
    );

    let bd = gen_gauss_backdoor(&EnvSpec::new(1, 2000, 4)?)?;
    println!(
        "gaussian back-door ATE (x1, x2): {:.3?}",
        ate_backdoor(&bd, &["x"], &["u"], "y", 1.0, 2.0, &k)?
    );
    let fd = gen_gauss_frontdoor(&EnvSpec::new(1, 2000, 4)?)?;
    println!(
        "gaussian front-door ATE (x1, x2): {:.3?}",
        ate_frontdoor(&fd, &["x"], "z", "y", 1.0, 2.0, &k)?
    );
    Ok(())
}
