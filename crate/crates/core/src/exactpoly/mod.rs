//! Exact rational arithmetic and sparse graded multivariate polynomials.
//!
//! Every ring, bimodule element and map image in the engine is ultimately a
//! [`Polynomial`] over the rationals in the graded symbols of [`VarSymbol`].
//! Nothing in the crate touches floating point.

mod laurent;
mod polynomial;
mod series;
mod symbol;

pub use laurent::LaurentPoly;
pub use polynomial::{Homogeneity, Polynomial};
pub use series::{series_invert, SeriesError};
pub use symbol::{Monomial, SymbolKind, VarSymbol};

use num_bigint::BigInt;
use num_traits::Signed;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integral rational.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `p/q` as a rational. Panics on a zero denominator.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical textual form `p/q` (or `p` when the denominator is one).
pub fn render_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub(crate) fn render_abs_rational(value: &Rational) -> String {
    render_rational(&value.abs())
}

/// `(-1)^e` for any integer exponent.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
