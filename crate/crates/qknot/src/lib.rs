//! Exact arithmetic for colored Jones polynomials of double twist knots and
//! the associated q-series at roots of unity.
//!
//! The value type everywhere is a Laurent polynomial in `q` with
//! arbitrary-precision integer coefficients. Root-of-unity evaluation is done
//! exactly in the quotient ring `Z[q]/(q^N - 1)`, never with complex floats:
//! an identity that holds at every `N`th root of unity is the same thing as a
//! congruence mod `q^N - 1`.
//!
//! Module map:
//! - [`laurent`]: ring arithmetic, generic over the coefficient scalar
//! - [`qcomb`]: q-Pochhammer symbols and memoized Gaussian binomials
//! - [`signs`]: the combinatorial sign tables (epsilon/gamma/delta/beta and
//!   the two-bridge sigma machinery)
//! - [`chains`]: enumeration of weakly increasing summation indices
//! - [`jones`]: colored Jones evaluators for double twist knots
//! - [`takata`]: the general two-bridge formula
//! - [`qseries`]: Kontsevich-Zagier / U-series evaluators
//! - [`verify`]: cross-formula identity checks with machine-readable reports
//! - [`cli`]: command line front end

pub mod chains;
pub mod cli;
pub mod error;
pub mod jones;
pub mod laurent;
pub mod qcomb;
pub mod qseries;
pub mod signs;
pub mod takata;
pub mod verify;

pub use error::{Error, Result};

/// Coefficient scalar used by the public API.
pub type Int = num_bigint::BigInt;

/// Laurent polynomial in `q` over arbitrary-precision integers.
pub type LaurentPolynomial = laurent::LaurentPoly<Int>;

/// Element of `Z[q]/(q^N - 1)` over arbitrary-precision integers.
pub type QuotientElement = laurent::Quotient<Int>;
