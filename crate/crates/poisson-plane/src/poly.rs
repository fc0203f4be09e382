//! Sparse bivariate polynomials over the rationals, the Poisson bracket,
//! Hamiltonian vector fields and divergence.
//!
//! The canonical term order is graded lexicographic with `x > y`; it drives
//! printing, the line serialization and pivot selection in echelon bases.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rat::{frac_str, parse_rat, Rat};

/// Exponent pair of a monomial `x^a * y^b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub a: u32,
    pub b: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        Mono { a, b }
    }

    pub fn total_degree(self) -> u32 {
        self.a + self.b
    }
}

impl Ord for Mono {
    // graded lex, x > y
    fn cmp(&self, other: &Self) -> Ordering {
        (u64::from(self.a) + u64::from(self.b), self.a)
            .cmp(&(u64::from(other.a) + u64::from(other.b), other.a))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write_power(f, 'x', a),
            (0, b) => write_power(f, 'y', b),
            (a, b) => {
                write_power(f, 'x', a)?;
                write!(f, "*")?;
                write_power(f, 'y', b)
            }
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, e: u32) -> fmt::Result {
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

/// Variable selector for partial derivatives and univariate slices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X,
    Y,
}

/// Element of `K[x,y]`: finite map from exponent pairs to nonzero rationals.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct BivariatePoly {
    terms: BTreeMap<Mono, Rat>,
}

pub(crate) fn add_assign_term(map: &mut BTreeMap<Mono, Rat>, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(a: u32, b: u32, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        add_assign_term(&mut terms, Mono::new(a, b), c);
        BivariatePoly { terms }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::monomial(1, 0, Rat::one()),
            Var::Y => Self::monomial(0, 1, Rat::one()),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rat)>) -> Self {
        let mut map = BTreeMap::new();
        for (a, b, c) in terms {
            add_assign_term(&mut map, Mono::new(a, b), c);
        }
        BivariatePoly { terms: map }
    }

    pub(crate) fn from_map(terms: BTreeMap<Mono, Rat>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        BivariatePoly { terms }
    }

    pub(crate) fn map(&self) -> &BTreeMap<Mono, Rat> {
        &self.terms
    }

    pub(crate) fn into_map(self) -> BTreeMap<Mono, Rat> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &Rat)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&Mono::new(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn leading_monomial(&self) -> Option<Mono> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_assign_term(&mut terms, *m, c.clone());
        }
        BivariatePoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_assign_term(&mut terms, *m, -c.clone());
        }
        BivariatePoly { terms }
    }

    pub fn neg(&self) -> Self {
        BivariatePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                add_assign_term(&mut terms, Mono::new(m.a + n.a, m.b + n.b), c * d);
            }
        }
        BivariatePoly { terms }
    }

    /// Formal partial derivative.
    pub fn partial_derivative(&self, var: Var) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            match var {
                Var::X if m.a > 0 => add_assign_term(
                    &mut terms,
                    Mono::new(m.a - 1, m.b),
                    c * Rat::from_integer(m.a.into()),
                ),
                Var::Y if m.b > 0 => add_assign_term(
                    &mut terms,
                    Mono::new(m.a, m.b - 1),
                    c * Rat::from_integer(m.b.into()),
                ),
                _ => {}
            }
        }
        BivariatePoly { terms }
    }

    /// Standard Poisson bracket `{f,g} = f_x g_y - f_y g_x`, evaluated
    /// term by term: the bracket of `x^a y^b` and `x^c y^d` is
    /// `(ad - bc) x^{a+c-1} y^{b+d-1}`.
    pub fn poisson_bracket(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let det =
                    i64::from(m.a) * i64::from(n.b) - i64::from(m.b) * i64::from(n.a);
                if det == 0 {
                    continue;
                }
                // det != 0 forces a+c >= 1 and b+d >= 1
                let mono = Mono::new(m.a + n.a - 1, m.b + n.b - 1);
                add_assign_term(&mut terms, mono, c * d * Rat::from_integer(det.into()));
            }
        }
        BivariatePoly { terms }
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            acc += c * crate::rat::pow_u(x, m.a) * crate::rat::pow_u(y, m.b);
        }
        acc
    }

    /// One sorted line per term, leading term first: `a b numer/denom`.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            out.push_str(&format!("{} {} {}\n", m.a, m.b, frac_str(c)));
        }
        out
    }

    pub fn parse_lines(s: &str) -> Result<Self, Error> {
        let mut terms = BTreeMap::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (a, b, c) = (it.next(), it.next(), it.next());
            let (Some(a), Some(b), Some(c)) = (a, b, c) else {
                return Err(Error::Parse(format!("malformed term line `{line}`")));
            };
            if it.next().is_some() {
                return Err(Error::Parse(format!("malformed term line `{line}`")));
            }
            let a: u32 = a
                .parse()
                .map_err(|_| Error::Parse(format!("malformed exponent `{a}`")))?;
            let b: u32 = b
                .parse()
                .map_err(|_| Error::Parse(format!("malformed exponent `{b}`")))?;
            add_assign_term(&mut terms, Mono::new(a, b), parse_rat(c)?);
        }
        Ok(BivariatePoly { terms })
    }

    /// Parses the CLI polynomial grammar: terms `c*x^a*y^b` joined by `+`
    /// and `-`, with implicit coefficients and exponents (`6xy^2`,
    /// `x^2 + 2y`, `-1/2*x`).
    pub fn parse(s: &str) -> Result<Self, Error> {
        let (delta, poly) = parse_linear_expr(s, false)?;
        debug_assert!(delta.is_zero());
        Ok(poly)
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            write_signed_term(f, &mut first, c, &m.to_string())?;
        }
        Ok(())
    }
}

pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &Rat,
    mono: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    if *first {
        if neg {
            write!(f, "-")?;
        }
        *first = false;
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let abs = c.abs();
    if mono == "1" {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{abs}*{mono}")
    }
}

/// Polynomial vector field `f1 * d/dx + f2 * d/dy`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneVectorField {
    pub f1: BivariatePoly,
    pub f2: BivariatePoly,
}

impl PlaneVectorField {
    pub fn new(f1: BivariatePoly, f2: BivariatePoly) -> Self {
        PlaneVectorField { f1, f2 }
    }

    pub fn zero() -> Self {
        Self::new(BivariatePoly::zero(), BivariatePoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    /// Applies the field to a function: `f1 * g_x + f2 * g_y`.
    pub fn apply_to(&self, g: &BivariatePoly) -> BivariatePoly {
        self.f1
            .mul(&g.partial_derivative(Var::X))
            .add(&self.f2.mul(&g.partial_derivative(Var::Y)))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        PlaneVectorField {
            f1: self.apply_to(&other.f1).sub(&other.apply_to(&self.f1)),
            f2: self.apply_to(&other.f2).sub(&other.apply_to(&self.f2)),
        }
    }
}

/// Hamiltonian field `V_f = f_y * d/dx - f_x * d/dy`.
pub fn hamiltonian_field(f: &BivariatePoly) -> PlaneVectorField {
    PlaneVectorField {
        f1: f.partial_derivative(Var::Y),
        f2: f.partial_derivative(Var::X).neg(),
    }
}

pub fn field_divergence(v: &PlaneVectorField) -> BivariatePoly {
    v.f1
        .partial_derivative(Var::X)
        .add(&v.f2.partial_derivative(Var::Y))
}

/// Shared parser for polynomials and extended elements: returns the
/// coefficient of the `delta` atom (always zero unless `allow_delta`)
/// together with the polynomial part.
pub(crate) fn parse_linear_expr(s: &str, allow_delta: bool) -> Result<(Rat, BivariatePoly), Error> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0usize;
    let mut delta = Rat::zero();
    let mut terms = BTreeMap::new();

    let err = |msg: String| Err::<(Rat, BivariatePoly), _>(Error::Parse(msg));

    skip_ws(&chars, &mut pos);
    if pos == chars.len() {
        return err("empty polynomial".into());
    }
    while pos < chars.len() {
        // sign prefix
        let mut sign = Rat::one();
        loop {
            skip_ws(&chars, &mut pos);
            match chars.get(pos) {
                Some('+') => pos += 1,
                Some('-') => {
                    sign = -sign;
                    pos += 1;
                }
                _ => break,
            }
        }
        skip_ws(&chars, &mut pos);
        if pos == chars.len() {
            return err("dangling sign".into());
        }

        let mut coeff = sign;
        let mut mono = Mono::ONE;
        let mut has_delta = false;
        let mut saw_factor = false;
        // numbers are legal at the start of a term or after an explicit `*`
        let mut number_ok = true;

        loop {
            skip_ws(&chars, &mut pos);
            match chars.get(pos) {
                Some('*') => {
                    pos += 1;
                    number_ok = true;
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    if !number_ok {
                        return err(format!("unexpected digit `{c}` after a variable"));
                    }
                    coeff *= scan_rational(&chars, &mut pos)?;
                    saw_factor = true;
                    number_ok = false;
                }
                Some('x') => {
                    pos += 1;
                    mono.a += scan_exponent(&chars, &mut pos)?;
                    saw_factor = true;
                    number_ok = false;
                }
                Some('y') => {
                    pos += 1;
                    mono.b += scan_exponent(&chars, &mut pos)?;
                    saw_factor = true;
                    number_ok = false;
                }
                Some('d') if chars[pos..].starts_with(&['d', 'e', 'l', 't', 'a']) => {
                    if !allow_delta {
                        return err("`delta` is not allowed in a plain polynomial".into());
                    }
                    if has_delta {
                        return err("`delta` may appear once per term".into());
                    }
                    pos += 5;
                    has_delta = true;
                    saw_factor = true;
                    number_ok = false;
                }
                Some('+') | Some('-') | None => break,
                Some(c) => return err(format!("unexpected character `{c}`")),
            }
        }

        if !saw_factor {
            return err("empty term".into());
        }
        if has_delta {
            if mono != Mono::ONE {
                return err("a `delta` term cannot carry x or y factors".into());
            }
            delta += coeff;
        } else {
            add_assign_term(&mut terms, mono, coeff);
        }
    }
    Ok((delta, BivariatePoly { terms }))
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while chars.get(*pos).is_some_and(|c| c.is_whitespace()) {
        *pos += 1;
    }
}

fn scan_uint(chars: &[char], pos: &mut usize) -> Result<u64, Error> {
    let start = *pos;
    while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse("expected a digit".into()));
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse()
        .map_err(|_| Error::Parse(format!("integer `{s}` out of range")))
}

fn scan_rational(chars: &[char], pos: &mut usize) -> Result<Rat, Error> {
    let numer = scan_uint(chars, pos)?;
    if chars.get(*pos) == Some(&'/') {
        *pos += 1;
        let denom = scan_uint(chars, pos)?;
        if denom == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(crate::rat::rat(numer as i64, denom as i64))
    } else {
        Ok(crate::rat::rint(numer as i64))
    }
}

fn scan_exponent(chars: &[char], pos: &mut usize) -> Result<u32, Error> {
    if chars.get(*pos) == Some(&'^') {
        *pos += 1;
        let e = scan_uint(chars, pos)?;
        u32::try_from(e).map_err(|_| Error::Parse(format!("exponent `{e}` out of range")))
    } else {
        Ok(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use crate::test_support::{arb_poly, arb_rat};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn p(s: &str) -> BivariatePoly {
        BivariatePoly::parse(s).unwrap()
    }

    #[test]
    fn bracket_of_coordinates_is_one() {
        assert_eq!(p("x").poisson_bracket(&p("y")), p("1"));
    }

    #[test]
    fn bracket_reproduces_first_chain_step() {
        assert_eq!(p("x^2+2y").poisson_bracket(&p("y^3")), p("6xy^2"));
    }

    #[test]
    fn bracket_with_itself_vanishes() {
        let f = p("x^2 - 3xy + 1/2y^4");
        assert!(f.poisson_bracket(&f).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x^2*y").partial_derivative(Var::X), p("2xy"));
        assert!(p("x^2").partial_derivative(Var::Y).is_zero());
        assert_eq!(p("y^3").partial_derivative(Var::Y), p("3y^2"));
    }

    #[test]
    fn hamiltonian_fields_of_the_two_generators() {
        let v = hamiltonian_field(&p("y^3"));
        assert_eq!(v.f1, p("3y^2"));
        assert!(v.f2.is_zero());

        let w = hamiltonian_field(&p("x^2+2y"));
        assert_eq!(w.f1, p("2"));
        assert_eq!(w.f2, p("-2x"));

        assert!(hamiltonian_field(&p("5")).is_zero());
    }

    #[test]
    fn shear_fields_are_scaled_hamiltonians() {
        // y^r d/dx = (1/(r+1)) V_{y^{r+1}}, x^s d/dy = -(1/(s+1)) V_{x^{s+1}}
        for r in 0u32..4 {
            let v = hamiltonian_field(&BivariatePoly::monomial(0, r + 1, Rat::one()));
            assert_eq!(v.f1.scale(&rat(1, i64::from(r) + 1)), BivariatePoly::monomial(0, r, Rat::one()));
            assert!(v.f2.is_zero());
        }
        for s in 0u32..4 {
            let v = hamiltonian_field(&BivariatePoly::monomial(s + 1, 0, Rat::one()));
            assert!(v.f1.is_zero());
            assert_eq!(
                v.f2.scale(&rat(-1, i64::from(s) + 1)),
                BivariatePoly::monomial(s, 0, Rat::one())
            );
        }
    }

    #[test]
    fn divergence_examples() {
        // Euler field
        let euler = PlaneVectorField::new(p("x"), p("y"));
        assert_eq!(field_divergence(&euler), p("2"));
        // shear
        let shear = PlaneVectorField::new(p("y^4"), BivariatePoly::zero());
        assert!(field_divergence(&shear).is_zero());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f = p("-x^2 + 2*x*y - 1/2");
        assert_eq!(f.to_string(), "-x^2 + 2*x*y - 1/2");
        assert_eq!(p(&f.to_string()), f);
        assert_eq!(p("6xy^2").to_string(), "6*x*y^2");
        assert_eq!(BivariatePoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(BivariatePoly::parse("").is_err());
        assert!(BivariatePoly::parse("x^").is_err());
        assert!(BivariatePoly::parse("x2").is_err());
        assert!(BivariatePoly::parse("2 +").is_err());
        assert!(BivariatePoly::parse("z").is_err());
        assert!(BivariatePoly::parse("delta").is_err());
    }

    #[test]
    fn lines_round_trip() {
        let f = p("x^2 - 2/3*y + 1");
        assert_eq!(f.to_lines(), "2 0 1/1\n0 1 -2/3\n0 0 1/1\n");
        assert_eq!(BivariatePoly::parse_lines(&f.to_lines()).unwrap(), f);
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(BivariatePoly::zero().degree(), None);
        assert_eq!(p("x*y^2").degree(), Some(3));
    }

    proptest! {
        #[test]
        fn antisymmetry(f in arb_poly(), g in arb_poly()) {
            prop_assert_eq!(f.poisson_bracket(&g), g.poisson_bracket(&f).neg());
        }

        #[test]
        fn jacobi_identity(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let total = f.poisson_bracket(&g.poisson_bracket(&h))
                .add(&g.poisson_bracket(&h.poisson_bracket(&f)))
                .add(&h.poisson_bracket(&f.poisson_bracket(&g)));
            prop_assert!(total.is_zero());
        }

        #[test]
        fn leibniz_rule(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let lhs = f.poisson_bracket(&g.mul(&h));
            let rhs = f.poisson_bracket(&g).mul(&h).add(&g.mul(&f.poisson_bracket(&h)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bracket_degree_bound(f in arb_poly(), g in arb_poly()) {
            let br = f.poisson_bracket(&g);
            if let (Some(df), Some(dg), Some(db)) = (f.degree(), g.degree(), br.degree()) {
                prop_assert!(i64::from(db) <= i64::from(df) + i64::from(dg) - 2);
            }
        }

        #[test]
        fn field_commutator_matches_bracket(f in arb_poly(), g in arb_poly()) {
            // f -> V_f is an anti-morphism: [V_f, V_g] = V_{{g,f}}
            let lhs = hamiltonian_field(&f).commutator(&hamiltonian_field(&g));
            prop_assert_eq!(lhs, hamiltonian_field(&g.poisson_bracket(&f)));
        }

        #[test]
        fn hamiltonian_fields_are_divergence_free(f in arb_poly()) {
            prop_assert!(field_divergence(&hamiltonian_field(&f)).is_zero());
        }

        #[test]
        fn term_wise_bracket_matches_definition(f in arb_poly(), g in arb_poly()) {
            // independent route through partial derivatives
            let via_partials = f
                .partial_derivative(Var::X)
                .mul(&g.partial_derivative(Var::Y))
                .sub(&f.partial_derivative(Var::Y).mul(&g.partial_derivative(Var::X)));
            prop_assert_eq!(f.poisson_bracket(&g), via_partials);
        }

        #[test]
        fn eval_is_a_ring_morphism(f in arb_poly(), g in arb_poly(), x in arb_rat(), y in arb_rat()) {
            prop_assert_eq!(f.mul(&g).eval(&x, &y), f.eval(&x, &y) * g.eval(&x, &y));
            prop_assert_eq!(f.add(&g).eval(&x, &y), f.eval(&x, &y) + g.eval(&x, &y));
        }
    }

    #[test]
    fn constants_are_central() {
        let c = BivariatePoly::constant(rint(7));
        assert!(c.poisson_bracket(&p("x^3*y - y^2")).is_zero());
    }

    #[test]
    fn coeff_lookup() {
        let f = p("x^2 + 2y");
        assert_eq!(f.coeff(2, 0), rint(1));
        assert_eq!(f.coeff(0, 1), rint(2));
        assert!(f.coeff(1, 1).is_zero());
    }
}
