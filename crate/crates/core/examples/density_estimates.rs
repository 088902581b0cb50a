//! Kernel density estimates: a Kronecker KDE is the empirical mass function,
//! a Gaussian KDE uses Silverman's bandwidth unless one is given.

use causal_bootstrap::data::Dataset;
use causal_bootstrap::density::{conditional, fit_kde, silverman_bandwidth, KernelSpec, Kernels};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Dataset::new(8)
        .with_discrete("y", 2, vec![1, 1, 1, 2, 2, 2, 2, 2])?
        .with_discrete("z", 2, vec![1, 1, 2, 1, 2, 2, 2, 2])?
        .with_continuous("v", vec![-1.2, -0.3, 0.1, 0.4, 0.9, 1.3, 2.0, 2.2])?;
    let k = Kernels::new();

    let py = fit_kde(&data, &["y"], &k)?;
    println!(
        "p(y=1) = {}, p(y=2) = {}",
        py.eval(&[1.0])?,
        py.eval(&[2.0])?
    );
    let pz = conditional(&data, &["z"], &["y"], &k)?;
    println!("p(z=1 | y=1) = {:.4}", pz.eval(&[1.0], &[1.0])?);

    let h = silverman_bandwidth(data.scalar("v")?)?;
    let pv = fit_kde(&data, &["v"], &k)?;
    println!("silverman h = {h:.4}; p(v=0.5) = {:.4}", pv.eval(&[0.5])?);
    let narrow = fit_kde(
        &data,
        &["v"],
        &Kernels::new().with("v", KernelSpec::gaussian(0.1)),
    )?;
    println!("h = 0.1;      p(v=0.5) = {:.4}", narrow.eval(&[0.5])?);
    Ok(())
}
