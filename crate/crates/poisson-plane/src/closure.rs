//! Lie subalgebra closures inside `K[x,y]` up to a working degree cap:
//! a monomial-exponent walk for monomial generators and an echelon-basis
//! saturation for general generators, with univariate slices and
//! codimension reports.
//!
//! Truncation semantics: the result is the subspace reachable without
//! bracketing pairs whose degree bound `deg u + deg v - 2` exceeds the
//! cap. Brackets can dip in degree, so this is a lower bound for the true
//! intersection with degrees `<= cap`; callers pick caps with headroom
//! and check stabilization.

use std::collections::BTreeSet;

use crate::echelon::{saturate, Echelon, SparseVec};
use crate::error::Error;
use crate::poly::{BivariatePoly, Mono, Var};
use crate::rat::Rat;

/// Exponent set of `lie(x^p, y^q)` within a degree cap.
#[derive(Clone, Debug)]
pub struct ExponentOrbit {
    set: BTreeSet<(u32, u32)>,
    p: u32,
    q: u32,
    degree_cap: u32,
}

/// Saturates `{(p,0), (0,q)}` under the admissible bracket step: the pair
/// `(a,b), (c,d)` yields `(a+c-1, b+d-1)` exactly when `ad - bc != 0` and
/// the new exponents are admissible within the cap.
pub fn monomial_closure(p: u32, q: u32, degree_cap: u32) -> Result<ExponentOrbit, Error> {
    assert!(p >= 1 && q >= 1, "p and q must be positive");
    if degree_cap < p + q {
        return Err(Error::CapBelowGenerators {
            cap: degree_cap,
            min: p + q,
        });
    }
    let mut set = BTreeSet::new();
    let mut elems: Vec<(u32, u32)> = Vec::new();
    for gen in [(p, 0), (0, q)] {
        if set.insert(gen) {
            elems.push(gen);
        }
    }
    let mut next = 0usize;
    while next < elems.len() {
        let i = next;
        next += 1;
        for j in 0..=i {
            let (a, b) = elems[i];
            let (c, d) = elems[j];
            let det = i64::from(a) * i64::from(d) - i64::from(b) * i64::from(c);
            if det == 0 {
                continue;
            }
            // det != 0 forces a+c >= 1 and b+d >= 1
            let e = (a + c - 1, b + d - 1);
            if e.0 + e.1 > degree_cap {
                continue;
            }
            if set.insert(e) {
                elems.push(e);
            }
        }
    }
    Ok(ExponentOrbit {
        set,
        p,
        q,
        degree_cap,
    })
}

impl ExponentOrbit {
    pub fn exponents(&self) -> &BTreeSet<(u32, u32)> {
        &self.set
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.set.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Exponents `m` with the pure power `var^m` in the orbit.
    pub fn univariate_slice(&self, var: Var) -> BTreeSet<u32> {
        self.set
            .iter()
            .filter_map(|&(a, b)| match var {
                Var::X if b == 0 => Some(a),
                Var::Y if a == 0 => Some(b),
                _ => None,
            })
            .collect()
    }
}

/// Reduced, pivot-normalized basis of a bracket-saturated subspace.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    ech: Echelon<Mono>,
    degree_cap: u32,
}

/// Saturates the span of `generators` under the Poisson bracket,
/// bracketing only pairs with `deg u + deg v - 2 <= working_cap`.
/// Deterministic for a fixed input sequence.
pub fn vector_closure(
    generators: &[BivariatePoly],
    working_cap: u32,
) -> Result<EchelonBasis, Error> {
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
        |f: &BivariatePoly| f.map().clone(),
        |v: &SparseVec<Mono>| BivariatePoly::from_map(v.clone()),
        |u, v| u.poisson_bracket(v),
        |u, v| match (u.degree(), v.degree()) {
            (Some(du), Some(dv)) => i64::from(du) + i64::from(dv) - 2 <= cap,
            _ => false,
        },
        |_| true,
    );
    Ok(EchelonBasis {
        ech: ech.reduced(),
        degree_cap: working_cap,
    })
}

impl EchelonBasis {
    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn dimension(&self) -> usize {
        self.ech.len()
    }

    /// Basis elements, leading pivot first.
    pub fn elements(&self) -> Vec<BivariatePoly> {
        self.ech
            .elems()
            .iter()
            .map(|v| BivariatePoly::from_map(v.clone()))
            .collect()
    }

    pub fn pivots(&self) -> BTreeSet<Mono> {
        self.ech.pivots().copied().collect()
    }

    pub fn contains(&self, f: &BivariatePoly) -> bool {
        self.ech.contains(f.map())
    }

    /// Remainder of `f` modulo the subspace.
    pub fn reduce(&self, f: &BivariatePoly) -> BivariatePoly {
        BivariatePoly::from_map(self.ech.remainder(f.map()))
    }

    /// Exponents `m <= degree_cap` with `var^m` in the subspace, decided
    /// by reduction rather than by scanning basis elements.
    pub fn univariate_slice(&self, var: Var) -> BTreeSet<u32> {
        (0..=self.degree_cap)
            .filter(|&m| {
                let pure = match var {
                    Var::X => BivariatePoly::monomial(m, 0, Rat::from_integer(1.into())),
                    Var::Y => BivariatePoly::monomial(0, m, Rat::from_integer(1.into())),
                };
                self.contains(&pure)
            })
            .collect()
    }

    /// Monomials of total degree `<= report_degree` outside the pivot set:
    /// a monomial basis of the complement, together with its dimension.
    pub fn codimension_report(&self, report_degree: u32) -> Result<CodimReport, Error> {
        if report_degree > self.degree_cap {
            return Err(Error::ReportAboveCap {
                report: report_degree,
                cap: self.degree_cap,
            });
        }
        let mut complement = Vec::new();
        for d in 0..=report_degree {
            for a in (0..=d).rev() {
                let m = Mono::new(a, d - a);
                if !self.ech.has_pivot(&m) {
                    complement.push(m);
                }
            }
        }
        complement.sort();
        Ok(CodimReport {
            dimension: complement.len(),
            complement,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimReport {
    pub dimension: usize,
    pub complement: Vec<Mono>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;
    use num_traits::One;
    use proptest::prelude::*;

    fn p(s: &str) -> BivariatePoly {
        BivariatePoly::parse(s).unwrap()
    }

    fn mono(a: u32, b: u32) -> BivariatePoly {
        BivariatePoly::monomial(a, b, Rat::one())
    }

    #[test]
    fn square_generators_close_on_three_monomials() {
        let orbit = monomial_closure(2, 2, 20).unwrap();
        let expected: BTreeSet<(u32, u32)> = [(2, 0), (0, 2), (1, 1)].into();
        assert_eq!(*orbit.exponents(), expected);
    }

    #[test]
    fn degenerate_generator_produces_the_full_column() {
        let orbit = monomial_closure(1, 3, 20).unwrap();
        let expected: BTreeSet<(u32, u32)> = [(1, 0), (0, 0), (0, 1), (0, 2), (0, 3)].into();
        assert_eq!(*orbit.exponents(), expected);
    }

    #[test]
    fn cubic_pair_has_gap_three_in_x() {
        let orbit = monomial_closure(3, 3, 30).unwrap();
        let slice = orbit.univariate_slice(Var::X);
        let expected: BTreeSet<u32> = (0..).map(|k| 3 + 3 * k).take_while(|&m| m <= 30).collect();
        assert_eq!(slice, expected);
    }

    #[test]
    fn y_slice_with_gap_three() {
        let orbit = monomial_closure(2, 5, 40).unwrap();
        let slice = orbit.univariate_slice(Var::Y);
        let expected: BTreeSet<u32> = (0..).map(|k| 5 + 3 * k).take_while(|&m| m <= 40).collect();
        assert_eq!(slice, expected);
    }

    #[test]
    fn cap_below_generators_is_rejected() {
        assert_eq!(
            monomial_closure(2, 3, 4).unwrap_err(),
            Error::CapBelowGenerators { cap: 4, min: 5 }
        );
    }

    #[test]
    fn closure_of_the_two_generators_contains_the_chain_tail() {
        let basis = vector_closure(&[p("x^2+2y"), p("y^3")], 12).unwrap();
        for f in [p("1"), p("x"), p("x^2"), p("y")] {
            assert!(basis.contains(&f), "missing {f}");
        }
    }

    #[test]
    fn single_generator_spans_itself() {
        let f = p("x^3 - 2x*y + 1");
        let basis = vector_closure(&[f.clone()], 10).unwrap();
        assert_eq!(basis.dimension(), 1);
        assert!(basis.contains(&f.scale(&rint(5))));
        assert!(!basis.contains(&p("x")));
    }

    #[test]
    fn shifted_generator_splits_into_separate_directions() {
        let basis = vector_closure(&[p("x^2-y"), p("y^3")], 12).unwrap();
        assert!(basis.contains(&p("x^2")));
        assert!(basis.contains(&p("y")));
    }

    #[test]
    fn zero_and_oversized_generators_are_rejected() {
        assert_eq!(
            vector_closure(&[BivariatePoly::zero()], 10).unwrap_err(),
            Error::ZeroGenerator { index: 0 }
        );
        assert_eq!(
            vector_closure(&[p("x^4")], 3).unwrap_err(),
            Error::GeneratorAboveCap {
                index: 0,
                degree: 4,
                cap: 3
            }
        );
    }

    #[test]
    fn slice_of_quadratic_span_is_two() {
        let basis = vector_closure(&[p("x^2"), p("y^2"), p("x*y")], 10).unwrap();
        let slice = basis.univariate_slice(Var::X);
        assert_eq!(slice, BTreeSet::from([2]));
    }

    #[test]
    fn echelon_slice_matches_orbit_slice() {
        let orbit = monomial_closure(2, 3, 14).unwrap();
        let basis = vector_closure(&[mono(2, 0), mono(0, 3)], 14).unwrap();
        assert_eq!(orbit.univariate_slice(Var::X), basis.univariate_slice(Var::X));
        assert_eq!(orbit.univariate_slice(Var::Y), basis.univariate_slice(Var::Y));
    }

    #[test]
    fn codimension_five_complement() {
        let basis = vector_closure(&[p("x^3"), p("y^2")], 20).unwrap();
        let report = basis.codimension_report(14).unwrap();
        assert_eq!(report.dimension, 5);
        let names: Vec<String> = report.complement.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["1", "y", "x", "x*y", "x^2"]);
    }

    #[test]
    fn empty_generators_leave_everything_in_the_complement() {
        let basis = vector_closure(&[], 10).unwrap();
        let report = basis.codimension_report(3).unwrap();
        assert_eq!(report.dimension, 10); // monomials of degree <= 3
        assert!(basis.univariate_slice(Var::X).is_empty());
    }

    #[test]
    fn report_degree_above_cap_is_rejected() {
        let basis = vector_closure(&[p("x^2")], 10).unwrap();
        assert_eq!(
            basis.codimension_report(11).unwrap_err(),
            Error::ReportAboveCap { report: 11, cap: 10 }
        );
    }

    #[test]
    fn full_generation_witness_small() {
        // every monomial of degree <= 6 from the shifted pair, cap 14
        let basis = vector_closure(&[p("x^2-y"), p("y^3")], 14).unwrap();
        for d in 0..=6u32 {
            for a in 0..=d {
                assert!(
                    basis.contains(&mono(a, d - a)),
                    "missing x^{a} y^{}",
                    d - a
                );
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn permutation_stability(perm in proptest::sample::select(vec![
            [0usize, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0],
        ])) {
            let gens = [p("x^2+2y"), p("y^3"), p("x*y")];
            let base = vector_closure(&gens, 10).unwrap();
            let permuted: Vec<BivariatePoly> = perm.iter().map(|&i| gens[i].clone()).collect();
            let other = vector_closure(&permuted, 10).unwrap();
            prop_assert_eq!(base.pivots(), other.pivots());
        }

        #[test]
        fn monotonicity_in_the_cap(extra in 1u32..=3) {
            let gens = [p("x^2-y"), p("y^3")];
            let small = vector_closure(&gens, 10).unwrap();
            let large = vector_closure(&gens, 10 + extra).unwrap();
            prop_assert!(small.pivots().is_subset(&large.pivots()));
        }
    }
}
