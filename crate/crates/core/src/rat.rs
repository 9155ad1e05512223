//! Exact rational scalars and their textual form.
//!
//! Rationals are rendered as `p` or `p/q` in lowest terms everywhere
//! (reports, JSON, CLI); floats never appear in output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Lowest-terms rendering, omitting the denominator when it is 1.
pub fn format_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_point(xs: &[Rat]) -> String {
    let parts: Vec<String> = xs.iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}

/// Parses `p` or `p/q` with an optional sign on the numerator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Parses a comma-separated point, with optional surrounding parentheses.
pub fn parse_point(s: &str) -> Option<Vec<Rat>> {
    let s = s.trim();
    let s = s.strip_prefix('(').unwrap_or(s);
    let s = s.strip_suffix(')').unwrap_or(s);
    if s.trim().is_empty() {
        return None;
    }
    s.split(',').map(parse_rat).collect()
}
