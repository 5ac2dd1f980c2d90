pub mod algebra;
pub mod building;
pub mod chevalley;
pub mod cones;
pub mod dihedral;
pub mod error;
pub mod field;
pub mod filtration;
pub mod lp;
pub mod prering;
pub mod suites;

pub use error::{Error, Result};
