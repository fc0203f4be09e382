//! Iterated adjoint operators `adj_f(g) = {f, g}` and the explicit
//! coefficient recursion for powers of `adj_{x^p - eps*y}` applied to
//! `y^q`:
//!
//! `adj^n (y^q) = sum_k c_{k,n} x^{p(q-k) - n} y^k`, with
//! `c_{k,n+1} = eps * (p(q-k) - n) * c_{k,n} + p(k+1) * c_{k+1,n}`
//! and row bound `k <= floor(q - n/p)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::BivariatePoly;
use crate::rat::{frac_str, Rat};

pub fn adjoint_power(f: &BivariatePoly, g: &BivariatePoly, n: u32) -> BivariatePoly {
    let mut acc = g.clone();
    for _ in 0..n {
        acc = f.poisson_bracket(&acc);
    }
    acc
}

/// Eagerly filled coefficient table, rows `n = 0..=p*q`.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    p: u32,
    q: u32,
    epsilon: Rat,
    rows: Vec<BTreeMap<u32, Rat>>,
}

/// Builds the recursion table for `adj_{x^p - epsilon*y}` acting on `y^q`.
pub fn coefficient_table(p: u32, q: u32, epsilon: Rat) -> CoeffTable {
    CoeffTable::build(p, q, epsilon)
}

impl CoeffTable {
    pub fn build(p: u32, q: u32, epsilon: Rat) -> Self {
        assert!(p >= 1 && q >= 1, "p and q must be positive");
        let total = p * q;
        let mut rows: Vec<BTreeMap<u32, Rat>> = Vec::with_capacity(total as usize + 1);
        let mut row0 = BTreeMap::new();
        row0.insert(q, Rat::one());
        rows.push(row0);
        for n in 0..total {
            let prev = &rows[n as usize];
            let bound = (total - (n + 1)) / p; // floor(q - (n+1)/p)
            let mut row = BTreeMap::new();
            for k in 0..=bound {
                let factor = i64::from(p) * i64::from(q - k) - i64::from(n);
                let mut c = Rat::zero();
                if let Some(prev_k) = prev.get(&k) {
                    c += &epsilon * prev_k * Rat::from_integer(factor.into());
                }
                if let Some(prev_k1) = prev.get(&(k + 1)) {
                    c += prev_k1 * Rat::from_integer((i64::from(p) * i64::from(k + 1)).into());
                }
                if !c.is_zero() {
                    row.insert(k, c);
                }
            }
            rows.push(row);
        }
        CoeffTable {
            p,
            q,
            epsilon,
            rows,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn epsilon(&self) -> &Rat {
        &self.epsilon
    }

    /// Largest admissible `k` in row `n`.
    pub fn row_bound(&self, n: u32) -> u32 {
        (self.p * self.q - n) / self.p
    }

    /// `c_{k,n}`; absent entries read as zero.
    pub fn coeff(&self, k: u32, n: u32) -> Rat {
        self.rows
            .get(n as usize)
            .and_then(|row| row.get(&k))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn rows(&self) -> impl Iterator<Item = (u32, &BTreeMap<u32, Rat>)> {
        self.rows.iter().enumerate().map(|(n, row)| (n as u32, row))
    }

    /// Rebuilds the polynomial `sum_k c_{k,n} x^{p(q-k)-n} y^k` from row `n`.
    pub fn reconstruct(&self, n: u32) -> BivariatePoly {
        let row = &self.rows[n as usize];
        BivariatePoly::from_terms(
            row.iter()
                .map(|(k, c)| (self.p * (self.q - k) - n, *k, c.clone())),
        )
    }

    /// Human dump: one `n: k=num/den, ...` row per line.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for (n, row) in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|(k, c)| format!("{}={}", k, frac_str(c)))
                .collect();
            out.push_str(&format!("{}: {}\n", n, cells.join(", ")));
        }
        out
    }

    /// Machine dump: one `n k num/den` triple per line.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (n, row) in self.rows() {
            for (k, c) in row {
                out.push_str(&format!("{} {} {}\n", n, k, frac_str(c)));
            }
        }
        out
    }
}

/// The coefficients controlling the collapse of the adjoint powers of
/// `x^p - y` on `y^q`: after `p(q-1)` steps only `c0 * x^p + c1 * y`
/// survives, after `pq` steps only the constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCoefficients {
    /// `c_{0,pq}`
    pub final_constant: Rat,
    /// `c_{0,p(q-1)}`
    pub xp_coeff: Rat,
    /// `c_{1,p(q-1)}`
    pub y_coeff: Rat,
}

/// Computes the three collapse coefficients with `epsilon = 1`.
pub fn collapse_coefficients(p: u32, q: u32) -> CollapseCoefficients {
    assert!(p >= 1 && q >= 1, "p and q must be positive");
    let table = CoeffTable::build(p, q, Rat::one());
    CollapseCoefficients {
        final_constant: table.coeff(0, p * q),
        xp_coeff: table.coeff(0, p * (q - 1)),
        y_coeff: table.coeff(1, p * (q - 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{pow_u, rat, rint};
    use num_traits::One;

    fn p(s: &str) -> BivariatePoly {
        BivariatePoly::parse(s).unwrap()
    }

    fn factorial(n: u32) -> Rat {
        let mut acc = Rat::one();
        for i in 1..=n {
            acc *= rint(i64::from(i));
        }
        acc
    }

    #[test]
    fn zeroth_power_is_identity() {
        let g = p("x^2*y - 3");
        assert_eq!(adjoint_power(&p("x"), &g, 0), g);
    }

    #[test]
    fn closed_form_small_case() {
        // p=2, q=3: 2^3 * 3! * x^3 = 48 x^3
        assert_eq!(adjoint_power(&p("x^2"), &p("y^3"), 3), p("48x^3"));
    }

    #[test]
    fn closed_form_full_range() {
        for pp in 1u32..=6 {
            for qq in 1u32..=6 {
                let lhs = adjoint_power(
                    &BivariatePoly::monomial(pp, 0, Rat::one()),
                    &BivariatePoly::monomial(0, qq, Rat::one()),
                    qq,
                );
                let coeff = pow_u(&rint(i64::from(pp)), qq) * factorial(qq);
                let rhs = BivariatePoly::monomial(pp * qq - qq, 0, coeff);
                assert_eq!(lhs, rhs, "closed form failed at p={pp}, q={qq}");
            }
        }
    }

    #[test]
    fn row_zero_is_the_seed() {
        let t = CoeffTable::build(3, 4, rat(1, 2));
        assert_eq!(t.coeff(4, 0), Rat::one());
        for k in 0..4 {
            assert!(t.coeff(k, 0).is_zero());
        }
        assert_eq!(t.row_bound(0), 4);
    }

    #[test]
    fn epsilon_zero_collapses_to_factorial_column() {
        for pp in 1u32..=5 {
            for qq in 1u32..=5 {
                let t = CoeffTable::build(pp, qq, Rat::zero());
                let expected = pow_u(&rint(i64::from(pp)), qq) * factorial(qq);
                assert_eq!(t.coeff(0, qq), expected);
                for k in 1..=t.row_bound(qq) {
                    assert!(t.coeff(k, qq).is_zero());
                }
            }
        }
    }

    #[test]
    fn reconstruction_matches_direct_iteration() {
        for eps in [Rat::zero(), Rat::one(), rint(2), rint(-1), rat(1, 2)] {
            for pp in 1u32..=6 {
                for qq in 1u32..=6 {
                    let t = CoeffTable::build(pp, qq, eps.clone());
                    let f = p(&format!("x^{pp}")).sub(&BivariatePoly::monomial(0, 1, eps.clone()));
                    let mut acc = BivariatePoly::monomial(0, qq, Rat::one());
                    for n in 0..=pp * qq {
                        assert_eq!(
                            t.reconstruct(n),
                            acc,
                            "row {n} mismatch at p={pp}, q={qq}, eps={eps}"
                        );
                        acc = f.poisson_bracket(&acc);
                    }
                }
            }
        }
    }

    #[test]
    fn sixfold_iteration_reaches_the_tabulated_constant() {
        let t = CoeffTable::build(2, 3, Rat::one());
        let direct = adjoint_power(&p("x^2 - y"), &p("y^3"), 6);
        assert_eq!(direct, BivariatePoly::constant(t.coeff(0, 6)));
    }

    #[test]
    fn collapse_rows_have_the_two_term_shape() {
        for (pp, qq) in [(2u32, 3u32), (3, 2), (2, 2), (3, 3), (2, 5)] {
            let t = CoeffTable::build(pp, qq, Rat::one());
            let n = pp * (qq - 1);
            let rec = t.reconstruct(n);
            let expect = BivariatePoly::monomial(pp, 0, t.coeff(0, n))
                .add(&BivariatePoly::monomial(0, 1, t.coeff(1, n)));
            assert_eq!(rec, expect);
        }
    }

    #[test]
    fn collapse_coefficients_do_not_vanish() {
        for (pp, qq) in [(2u32, 3u32), (1, 1), (3, 2), (4, 5)] {
            let c = collapse_coefficients(pp, qq);
            assert!(!c.final_constant.is_zero(), "(p,q)=({pp},{qq})");
            assert!(
                !(c.xp_coeff + c.y_coeff).is_zero(),
                "sum vanished at (p,q)=({pp},{qq})"
            );
        }
    }

    #[test]
    fn column_zero_vanishing_pattern() {
        // with eps = 1: c_{0,i} = 0 for i < q, nonzero for q <= i <= pq
        for pp in 2u32..=6 {
            for qq in 2u32..=6 {
                let t = CoeffTable::build(pp, qq, Rat::one());
                for i in 0..qq {
                    assert!(t.coeff(0, i).is_zero());
                }
                for i in qq..=pp * qq {
                    assert!(!t.coeff(0, i).is_zero(), "c_0,{i} = 0 at ({pp},{qq})");
                }
            }
        }
    }

    #[test]
    fn epsilon_rescaling_matches_unit_table() {
        // c_{k,n}(eps) = eps^{n-q+k} * c_{k,n}(1)
        for eps in [rint(2), rint(-1), rat(1, 2)] {
            for (pp, qq) in [(2u32, 3u32), (3, 3), (4, 2)] {
                let te = CoeffTable::build(pp, qq, eps.clone());
                let t1 = CoeffTable::build(pp, qq, Rat::one());
                for n in 0..=pp * qq {
                    for k in 0..=te.row_bound(n) {
                        let shift = i64::from(n) - i64::from(qq) + i64::from(k);
                        if shift < 0 {
                            assert!(te.coeff(k, n).is_zero());
                            assert!(t1.coeff(k, n).is_zero());
                        } else {
                            assert_eq!(te.coeff(k, n), pow_u(&eps, shift as u32) * t1.coeff(k, n));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dumps_are_stable() {
        let t = CoeffTable::build(1, 1, Rat::one());
        assert_eq!(t.to_human(), "0: 1=1/1\n1: 0=1/1\n");
        assert_eq!(t.to_lines(), "0 1 1/1\n1 0 1/1\n");
    }
}
