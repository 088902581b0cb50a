//! Confound-resampling a feature table by recording site. Uses the synthetic
//! stand-in table; pass a CSV path (columns x…, y, dataset_id) to use real features.

use causal_bootstrap::data::Dataset;
use causal_bootstrap::synthdata::{
    confound_resample_parkinsons, gen_parkinsons_standin, load_feature_table, EnvSpec,
};

fn table(d: &Dataset) -> Result<[[usize; 3]; 2], Box<dyn std::error::Error>> {
    let (y, id) = (d.scalar("y")?, d.scalar("dataset_id")?);
    let mut t = [[0; 3]; 2];
    for i in 0..d.n_rows() {
        t[y[i] as usize - 1][id[i] as usize - 1] += 1;
    }
    Ok(t)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let features = match std::env::args().nth(1) {
        Some(path) => load_feature_table(path.as_ref())?,
        None => gen_parkinsons_standin(200, 0)?,
    };
    for e in 1..=3 {
        let d = confound_resample_parkinsons(&features, &EnvSpec::new(e, 1000, e as u64)?)?;
        let t = table(&d)?;
        println!("e={e}: y=1 by site {:?}, y=2 by site {:?}", t[0], t[1]);
    }
    Ok(())
}
