//! p-adic hypergeometric functions through their truncation congruences,
//! unit-root Frobenius eigenvalues cross-checked against brute-force point
//! counts, and the q-expansion side of the weight-3 eta-product forms.
//!
//! Module map:
//! - [`padic`]: precision-tracked Z_p scalars and special functions
//! - [`series`]: truncated power series, rational functions, operators
//! - [`hypergeom`]: F_a, h_a, the Dwork ratio and the logarithmic type
//! - [`unitroot`]: unit-root vectors and Frobenius unit eigenvalues
//! - [`arith_geom`]: finite-field enumeration and Frobenius traces
//! - [`modular`]: eta products, twists, weight-3 unit roots

pub mod arith_geom;
pub mod error;
pub mod hypergeom;
pub mod modular;
pub mod padic;
pub mod series;
pub mod unitroot;

pub use error::{Error, Result};
pub use hypergeom::{FrobeniusSpec, HGParams};
pub use padic::{PadicNumber, PRational, Valuation};
pub use series::{DifferentialOperator, QPoly, RationalFunction, TruncSeries};
