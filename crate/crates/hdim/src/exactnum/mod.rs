//! Exact arithmetic: rationals, quadratic surds over `ℚ(√2)`, continued
//! fractions with best approximations, Farey enumeration, prime windows and
//! level-index scalars for iterated exponentials.

mod contfrac;
mod farey;
mod primes;
mod surd;
mod tower;

pub use contfrac::{best_approximations, ContinuedFraction};
pub use farey::{farey_enumerate, farey_pairs};
pub use primes::{
    primes_in_window, primes_in_window_segmented, primes_in_window_with_budget, PrimeCounter,
    DEFAULT_SIEVE_BUDGET, PRIME_WINDOW_COUNT_N0,
};
pub use surd::Surd;
pub use tower::{generate_sequence, SequenceKind, SequenceTerm, SignedLog, Tower};

use num::BigRational;
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq)]
pub enum ExactNumError {
    #[error("not a valid rational: {0}")]
    ParseRational(String),
    #[error("sieve budget exceeded: window [{n}, {limit}) needs {limit} cells but the budget is {budget}; use the segmented sieve")]
    SieveBudget { n: u64, limit: u64, budget: u64 },
    #[error("continued fraction requires a value in (0, 1) or a positive irrational; got {0}")]
    BadContinuedFraction(String),
    #[error("partial quotients after the first must be >= 1")]
    BadPartialQuotient,
    #[error("tower log undefined: level-0 value {0} <= 1")]
    TowerLog(f64),
    #[error("tower operand must be positive, got {0}")]
    TowerSign(f64),
    #[error("sequence parameter out of range: {0}")]
    SequenceParam(String),
}

/// Parses `"p/q"` (or a bare integer `"p"`) into a [`Rational`].
pub fn parse_rational(s: &str) -> Result<Rational, ExactNumError> {
    use num::BigInt;
    use std::str::FromStr;
    let bad = || ExactNumError::ParseRational(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Formats a [`Rational`] as `"p/q"` (`"p"` when the denominator is 1).
pub fn format_rational(r: &Rational) -> String {
    if num::One::is_one(r.denom()) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convenience constructor for small rationals.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let r = parse_rational("6/8").unwrap();
        assert_eq!(format_rational(&r), "3/4");
        assert_eq!(parse_rational("5").unwrap(), ratio(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&parse_rational("-2/4").unwrap()), "-1/2");
    }
}
