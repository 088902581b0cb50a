//! Smoothed bootstrap (Gaussian noise on the effect variable) followed by a
//! provenance split into folds that never share a source row.

use std::collections::{BTreeMap, BTreeSet};

use causal_bootstrap::density::Kernels;
use causal_bootstrap::resample::{
    causal_bootstrap, split_by_provenance, BootstrapSpec, SampleMode, Schedule,
};
use causal_bootstrap::synthdata::{gen_gauss_backdoor, EnvSpec};
use causal_bootstrap::weights::BackdoorModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let train = gen_gauss_backdoor(&EnvSpec::new(1, 1000, 5)?)?;
    let model = BackdoorModel::fit(&train, &["u"], "y", &Kernels::new())?;
    let spec = BootstrapSpec::new(11)
        .with_mode(SampleMode::Smoothed(Kernels::new()))
        .with_schedule(Schedule::PerClassFloor);
    let sample = causal_bootstrap(&train, &["x"], "y", |y| model.weights(y), &spec)?;
    let x = sample.data.variable("x")?;
    let src = train.variable("x")?;
    println!(
        "first row {:.3?} smoothed from source row {} {:.3?}",
        x.row(0),
        sample.provenance[0],
        src.row(sample.provenance[0] - 1)
    );

    let folds = split_by_provenance(&sample.provenance, 2, 11)?;
    let mut sources: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (f, p) in folds.iter().zip(&sample.provenance) {
        sources.entry(*f).or_default().insert(*p);
    }
    let shared = sources[&1].intersection(&sources[&2]).count();
    println!(
        "fold sizes {:?}; source rows shared between folds: {shared}",
        sources.values().map(BTreeSet::len).collect::<Vec<_>>()
    );
    Ok(())
}
