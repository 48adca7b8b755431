//! Closed-form algorithms on [`LBandedMatrix`](crate::LBandedMatrix).
//!
//! Each submodule adds inherent methods to the matrix type.

mod charpoly;
mod cofactor;
mod definiteness;
mod factor;
mod inverse;
mod products;

pub use charpoly::Polynomial;
pub use cofactor::CofactorTable;
pub use definiteness::DefinitenessClass;
pub use factor::{CholeskyFactor, LdlFactors};
pub use inverse::{DeltaCoefficients, DeltaDifferences, SymTridiagonal};
pub use products::structured_upper;
