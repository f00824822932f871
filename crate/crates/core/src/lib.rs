//! Certified house computation, exact gates and extremal search for
//! reciprocal integer polynomials.

pub mod algebra;
pub mod bigpoly;
pub mod bounds;
pub mod corpus;
pub mod error;
pub mod poly;
pub mod roots;
pub mod search;

pub use error::{BoundsError, CorpusError, PolyError, RootError, SearchError};
pub use poly::{parse_poly, Encoding, HalfSpec, IntPolynomial};

/// Formats `x` with `digits` significant digits, in fixed notation for
/// moderate magnitudes.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}
