//! Exact arithmetic for regular Grassmann-type algebras: rewriting to normal
//! forms, the two-generator closed forms, obstructed cocycles, dual
//! bialgebra structure and Wick-type products.

pub mod bialgebra;
pub mod category;
pub mod element;
pub mod error;
pub mod linalg;
pub mod reports;
pub mod repr;
pub mod rewrite;
pub mod rga2;
pub mod scalar;
pub mod space;
pub mod wick;

pub use element::{Alphabet, Element};
pub use error::{Error, NonInvertibleReason, Result};
pub use linalg::Matrix;
pub use rewrite::{RewriteSystem, Word};
pub use scalar::Scalar;
pub use space::{LinearMap, Subspace};
