//! Dense complex linear algebra for the small Hermitian problems that appear
//! in clock + environment models (dimension up to a few hundred).

mod eigen;
mod matrix;
mod state;

pub use eigen::{evolution_operator, hermitian_eig, Spectrum};
pub use matrix::ComplexMatrix;
pub use state::{inner_product, StateVector};
