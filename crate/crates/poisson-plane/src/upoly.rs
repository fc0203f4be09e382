//! Sparse univariate polynomials over the rationals, used for
//! interpolation in one coordinate and for the surface relation `p(z)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::poly::write_signed_term;
use crate::rat::{frac_str, Rat};

#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct UnivariatePoly {
    terms: BTreeMap<u32, Rat>,
}

impl UnivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: u32, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        UnivariatePoly { terms }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rat::one())
    }

    /// Builds from the coefficient list `c0 c1 ... cn` (constant term first).
    pub fn from_coeffs(coeffs: &[Rat]) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(e as u32, c.clone());
            }
        }
        UnivariatePoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: u32) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Rat::zero);
            *entry += c.clone();
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        UnivariatePoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UnivariatePoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<u32, Rat> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let entry = terms.entry(e + f).or_insert_with(Rat::zero);
                *entry += c * d;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        UnivariatePoly { terms }
    }

    pub fn derivative(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if *e > 0 {
                terms.insert(e - 1, c * Rat::from_integer((*e).into()));
            }
        }
        UnivariatePoly { terms }
    }

    pub fn eval(&self, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * crate::rat::pow_u(z, *e);
        }
        acc
    }

    /// One line per term, leading term first: `e numer/denom`.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            out.push_str(&format!("{} {}\n", e, frac_str(c)));
        }
        out
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono = match e {
                0 => "1".to_string(),
                1 => "z".to_string(),
                _ => format!("z^{e}"),
            };
            write_signed_term(f, &mut first, c, &mono)?;
        }
        Ok(())
    }
}
