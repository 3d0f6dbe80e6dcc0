pub mod certificate;
pub mod cli;
pub mod cubical;
pub mod diagram;
pub mod fixtures;
pub mod homology;
pub mod matrix;
pub mod rack;
pub mod snf;
pub mod surface;
