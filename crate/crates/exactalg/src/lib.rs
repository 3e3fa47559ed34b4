//! Exact computer-algebra kernel: rationals, sparse multivariate
//! polynomials, fraction-free resultants and discriminants, gcd and
//! squarefree decomposition, and univariate factorization over ℚ.

pub mod error;
pub mod factor;
pub mod gcd;
pub mod modp;
pub mod mpoly;
mod parse;
pub mod rat;
pub mod resultant;
pub mod upoly;

pub use error::AlgError;
pub use gcd::{factor_rational, gcd, rational_roots, squarefree_factor, Factorization};
pub use mpoly::{MPoly, Monomial};
pub use rat::{rat, Rat};
pub use resultant::{discriminant, resultant};

/// Parses a polynomial literal, panicking on malformed input. Intended for
/// fixed expressions written in source code.
pub fn poly(s: &str) -> MPoly {
    s.parse()
        .unwrap_or_else(|e| panic!("invalid polynomial literal `{s}`: {e}"))
}
