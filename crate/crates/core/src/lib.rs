//! Clifford/Grassmann bialgebra of Minkowski space, its spinor representations,
//! form-field operators, and residual evaluators for the equivalent forms of
//! the Dirac equation.

pub mod blade;
pub mod equations;
pub mod error;
pub mod exterior;
pub mod expr;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod literal;
pub mod matrix4;
pub mod multivector;
pub mod oracle;
pub mod par;
pub mod random;
pub mod scalar;
pub mod spin;
pub mod suite;

pub use blade::Blade;
pub use error::{Error, Result};
pub use multivector::Multivector;
pub use scalar::{Backend, Exact, Float};
