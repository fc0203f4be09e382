//! Scalars: arbitrary-precision rationals, always in lowest terms with a
//! positive denominator (maintained by `num_rational`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Error;

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn pow_u(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// Parses `numer`, `numer/denom` or a leading-sign variant thereof.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| Error::Parse(format!("malformed rational literal `{}`", s.trim())))
}

/// Fixed `numer/denom` rendering used by all line-oriented output.
pub fn frac_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
