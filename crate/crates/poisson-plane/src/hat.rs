//! The extension of the polynomial Poisson algebra by the grading
//! derivation `delta`, acting by `[delta, x^a y^b] = (a+b-2) x^a y^b`.
//! Elements are pairs `alpha * delta + f`; the bracket is the semidirect
//! product rule
//!
//! `[a1*delta + f, a2*delta + g] = {f,g} + a1*delta(g) - a2*delta(f)`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::echelon::{saturate, Echelon, SparseVec};
use crate::error::Error;
use crate::poly::{self, BivariatePoly, Mono};
use crate::rat::{frac_str, Rat};

/// The grading derivation applied to a polynomial: each monomial
/// `x^a y^b` is scaled by `a + b - 2`.
pub fn delta_action(f: &BivariatePoly) -> BivariatePoly {
    BivariatePoly::from_terms(f.terms().map(|(m, c)| {
        let weight = i64::from(m.a) + i64::from(m.b) - 2;
        (m.a, m.b, c * Rat::from_integer(weight.into()))
    }))
}

/// Element `delta_coeff * delta + poly` of the extended algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HatElement {
    pub delta: Rat,
    pub poly: BivariatePoly,
}

impl HatElement {
    pub fn new(delta: Rat, poly: BivariatePoly) -> Self {
        HatElement { delta, poly }
    }

    pub fn from_poly(poly: BivariatePoly) -> Self {
        HatElement {
            delta: Rat::zero(),
            poly,
        }
    }

    pub fn delta_generator() -> Self {
        HatElement {
            delta: Rat::from_integer(1.into()),
            poly: BivariatePoly::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.delta.is_zero() && self.poly.is_zero()
    }

    /// Degree used by the cap filter: `deg poly`, with `delta` alone of
    /// degree 0 and `None` only for the zero element.
    pub fn degree(&self) -> Option<u32> {
        match self.poly.degree() {
            Some(d) => Some(d),
            None if !self.delta.is_zero() => Some(0),
            None => None,
        }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        let mut poly = self.poly.poisson_bracket(&other.poly);
        if !self.delta.is_zero() {
            poly = poly.add(&delta_action(&other.poly).scale(&self.delta));
        }
        if !other.delta.is_zero() {
            poly = poly.sub(&delta_action(&self.poly).scale(&other.delta));
        }
        HatElement {
            delta: Rat::zero(),
            poly,
        }
    }

    /// `delta: num/den` header line followed by the polynomial lines.
    pub fn to_lines(&self) -> String {
        format!("delta: {}\n{}", frac_str(&self.delta), self.poly.to_lines())
    }

    /// Parses the polynomial grammar extended by the `delta` atom.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let (delta, poly) = poly::parse_linear_expr(s, true)?;
        Ok(HatElement { delta, poly })
    }
}

impl fmt::Display for HatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.delta.is_zero() {
            poly::write_signed_term(f, &mut first, &self.delta, "delta")?;
        }
        if !self.poly.is_zero() {
            if first {
                write!(f, "{}", self.poly)?;
            } else if self.poly.to_string().starts_with('-') {
                // reuse the polynomial renderer term by term
                for (m, c) in self.poly.map().iter().rev() {
                    poly::write_signed_term(f, &mut first, c, &m.to_string())?;
                }
            } else {
                write!(f, " + {}", self.poly)?;
            }
        }
        Ok(())
    }
}

/// Pivot coordinate: `delta` sits above every monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum HatKey {
    Mono(Mono),
    Delta,
}

fn to_vec(e: &HatElement) -> SparseVec<HatKey> {
    let mut v: SparseVec<HatKey> = e
        .poly
        .map()
        .iter()
        .map(|(m, c)| (HatKey::Mono(*m), c.clone()))
        .collect();
    if !e.delta.is_zero() {
        v.insert(HatKey::Delta, e.delta.clone());
    }
    v
}

fn from_vec(v: &SparseVec<HatKey>) -> HatElement {
    let mut delta = Rat::zero();
    let mut terms = Vec::new();
    for (k, c) in v {
        match k {
            HatKey::Delta => delta = c.clone(),
            HatKey::Mono(m) => terms.push((m.a, m.b, c.clone())),
        }
    }
    HatElement::new(delta, BivariatePoly::from_terms(terms))
}

/// Echelon basis of a bracket-saturated subspace of the extended algebra.
#[derive(Clone, Debug)]
pub struct HatBasis {
    ech: Echelon<HatKey>,
    degree_cap: u32,
}

/// Same saturation as `vector_closure`, with one extra coordinate for
/// `delta`; the degree filter treats `delta` as degree 0.
pub fn hat_closure(generators: &[HatElement], working_cap: u32) -> Result<HatBasis, Error> {
    for (index, g) in generators.iter().enumerate() {
        match g.degree() {
            None => return Err(Error::ZeroGenerator { index }),
            Some(degree) if degree > working_cap => {
                return Err(Error::GeneratorAboveCap {
                    index,
                    degree,
                    cap: working_cap,
                })
            }
            _ => {}
        }
    }
    let cap = i64::from(working_cap);
    let ech = saturate(
        generators,
        to_vec,
        from_vec,
        |u, v| u.bracket(v),
        |u: &HatElement, v: &HatElement| match (u.degree(), v.degree()) {
            (Some(du), Some(dv)) => i64::from(du) + i64::from(dv) - 2 <= cap,
            _ => false,
        },
        |_| true,
    );
    Ok(HatBasis {
        ech: ech.reduced(),
        degree_cap: working_cap,
    })
}

impl HatBasis {
    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn dimension(&self) -> usize {
        self.ech.len()
    }

    pub fn elements(&self) -> Vec<HatElement> {
        self.ech.elems().iter().map(from_vec).collect()
    }

    pub fn contains(&self, e: &HatElement) -> bool {
        self.ech.contains(&to_vec(e))
    }

    pub fn contains_delta(&self) -> bool {
        self.contains(&HatElement::delta_generator())
    }

    /// Pivots as displayable tokens: `delta` first, then monomials in
    /// decreasing order.
    pub fn pivot_names(&self) -> Vec<String> {
        let mut keys: Vec<&HatKey> = self.ech.pivots().collect();
        keys.sort();
        keys.reverse();
        keys.iter()
            .map(|k| match k {
                HatKey::Delta => "delta".to_string(),
                HatKey::Mono(m) => format!("{} {}", m.a, m.b),
            })
            .collect()
    }

    pub fn monomial_pivots(&self) -> BTreeSet<Mono> {
        self.ech
            .pivots()
            .filter_map(|k| match k {
                HatKey::Mono(m) => Some(*m),
                HatKey::Delta => None,
            })
            .collect()
    }
}

impl fmt::Display for HatBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.elements() {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}
