pub mod cli;
pub mod data;
pub mod density;
pub mod effects;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod learners;
pub mod resample;
pub mod synthdata;
pub mod weights;
