//! Exact symbolic computation for vertex superalgebras over a formal
//! parameter field: lambda brackets, normally ordered products, screening
//! charges, and coset commutant checks, together with the verification
//! suites for a free-field realization of a W-superalgebra and its
//! Kazama-Suzuki coset.
//!
//! Everything is exact: coefficients live in the field of rational
//! functions in one parameter with arbitrary-precision integer arithmetic,
//! and every check is an identity, never a tolerance.

pub mod algebra;
pub mod bracket;
pub mod coset;
pub mod error;
pub mod props;
pub mod registry;
pub mod scalar;
pub mod screening;
pub mod state;
pub mod suites;
pub mod wsuper;

pub use bracket::{Algebra, AlgebraBuilder, ConformalData, RawExpr, VirasoroData};
pub use error::Error;
pub use scalar::{ParameterContext, Scalar};
pub use state::{FockWeight, GeneratorSymbol, LambdaPolynomial, Letter, Monomial, Parity, State};
