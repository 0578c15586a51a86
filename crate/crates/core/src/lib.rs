pub mod cli;
pub mod complex;
pub mod lefschetz;
pub mod linalg;
pub mod model;
pub mod spectral;
pub mod transverse;
pub mod verify;
