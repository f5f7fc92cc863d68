pub mod error;
pub mod field;
pub mod linalg;
pub mod algebra;
pub mod baric;
pub mod bowtie;
pub mod ideals;
pub mod document;
pub mod propcheck;

pub use error::{Error, Result};
pub use field::{parse_scalar, scalar_arith, ArithOp, FieldElement, FieldSpec};
pub use linalg::{enumerate_subspaces, Matrix, Subspace};
pub use algebra::{Algebra, Element, PropertyFlags};
pub use baric::{BaricAlgebra, WeightFunctional};
pub use bowtie::{bowtie, kpow, BowtieTag, Side};
