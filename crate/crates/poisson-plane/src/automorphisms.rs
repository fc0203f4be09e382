//! Triangular automorphisms of the plane and words in the group they
//! generate: exact action on rational point tuples, the constructive
//! four-step normalization of a tuple into the separated set, the lattice
//! generation test for the torus characters, coordinate interpolation,
//! and a formal check of the one-parameter holomorphic flow.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::Error;
use crate::poly::BivariatePoly;
use crate::rat::{frac_str, pow_u, rint, Rat};
use crate::upoly::UnivariatePoly;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    /// `(x, y) -> (x + param * y^exponent, y)`
    L,
    /// `(x, y) -> (x, y + param * x^exponent)`
    R,
}

/// One triangular map `L_r(alpha)` or `R_s(beta)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriangularMap {
    pub kind: MapKind,
    pub exponent: u32,
    pub param: Rat,
}

impl TriangularMap {
    pub fn l(exponent: u32, param: Rat) -> Self {
        TriangularMap {
            kind: MapKind::L,
            exponent,
            param,
        }
    }

    pub fn r(exponent: u32, param: Rat) -> Self {
        TriangularMap {
            kind: MapKind::R,
            exponent,
            param,
        }
    }

    pub fn apply(&self, point: &(Rat, Rat)) -> (Rat, Rat) {
        let (x, y) = point;
        match self.kind {
            MapKind::L => (x + &self.param * pow_u(y, self.exponent), y.clone()),
            MapKind::R => (x.clone(), y + &self.param * pow_u(x, self.exponent)),
        }
    }

    pub fn inverse(&self) -> Self {
        TriangularMap {
            kind: self.kind,
            exponent: self.exponent,
            param: -self.param.clone(),
        }
    }
}

impl fmt::Display for TriangularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            MapKind::L => "L",
            MapKind::R => "R",
        };
        write!(f, "{} {} {}", tag, self.exponent, frac_str(&self.param))
    }
}

/// Composition of triangular maps, applied left to right.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AutomorphismWord(pub Vec<TriangularMap>);

impl AutomorphismWord {
    pub fn new(maps: Vec<TriangularMap>) -> Self {
        AutomorphismWord(maps)
    }

    pub fn apply(&self, tuple: &PointTuple) -> PointTuple {
        let mut points = tuple.points().to_vec();
        for map in &self.0 {
            for pt in &mut points {
                *pt = map.apply(pt);
            }
        }
        PointTuple(points)
    }

    /// Reversed sequence with negated parameters.
    pub fn inverse(&self) -> Self {
        AutomorphismWord(self.0.iter().rev().map(TriangularMap::inverse).collect())
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for map in &self.0 {
            out.push_str(&format!("{map}\n"));
        }
        out
    }
}

/// Ordered tuple of plane points with rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointTuple(Vec<(Rat, Rat)>);

impl PointTuple {
    pub fn new(points: Vec<(Rat, Rat)>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::EmptyTuple);
        }
        Ok(PointTuple(points))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor enforces at least one point
    }

    pub fn points(&self) -> &[(Rat, Rat)] {
        &self.0
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (x, y) in &self.0 {
            out.push_str(&format!("{} {}\n", frac_str(x), frac_str(y)));
        }
        out
    }
}

pub fn apply_word(word: &AutomorphismWord, tuple: &PointTuple) -> PointTuple {
    word.apply(tuple)
}

/// The two monomial shear fields whose flows are triangular maps.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialShear {
    /// `y^r * d/dx`
    YPowerDx(u32),
    /// `x^s * d/dy`
    XPowerDy(u32),
}

/// Time-`t` flow of a monomial shear: `exp(t y^r d/dx) = L_r(t)` and
/// `exp(t x^s d/dy) = R_s(t)`.
pub fn flow_map(field: MonomialShear, time: Rat) -> TriangularMap {
    match field {
        MonomialShear::YPowerDx(r) => TriangularMap::l(r, time),
        MonomialShear::XPowerDy(s) => TriangularMap::r(s, time),
    }
}

/// Membership in the separated set: in both coordinates every point is
/// nonzero and the `d`-th powers are pairwise distinct.
pub fn omega_membership(tuple: &PointTuple, d: u32) -> bool {
    assert!(d >= 1, "d must be positive");
    let pts = tuple.points();
    for coord in [0usize, 1] {
        let powers: Vec<Rat> = pts
            .iter()
            .map(|p| pow_u(if coord == 0 { &p.0 } else { &p.1 }, d))
            .collect();
        for (i, pi) in powers.iter().enumerate() {
            if pi.is_zero() {
                return false;
            }
            for pj in powers.iter().skip(i + 1) {
                if pi == pj {
                    return false;
                }
            }
        }
    }
    true
}

/// First value of `0, 1, -1, 2, -2, 3, ...` outside the excluded set.
fn choose_param(excluded: &[Rat]) -> Rat {
    let mut k: i64 = 0;
    loop {
        for cand in [rint(k), rint(-k)] {
            if !excluded.contains(&cand) {
                return cand;
            }
        }
        k += 1;
    }
}

/// Normalizes a tuple of pairwise distinct nonzero points into the
/// separated set `omega_membership(_, 1)` with a four-map word using only
/// `L_1` and `R_2`:
///
/// 1. `L_1`: make every x nonzero;
/// 2. `R_2`: remove antipodal pairs;
/// 3. `L_1`: make the squares of the x's pairwise distinct, keeping them
///    nonzero;
/// 4. `R_2`: make the y's nonzero and pairwise distinct.
///
/// Each parameter is the first value of `0, 1, -1, 2, -2, ...` outside
/// the finite excluded set of that step.
pub fn normalize_tuple(tuple: &PointTuple) -> Result<(AutomorphismWord, PointTuple), Error> {
    let pts = tuple.points();
    for (index, (x, y)) in pts.iter().enumerate() {
        if x.is_zero() && y.is_zero() {
            return Err(Error::OriginPoint { index });
        }
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] == pts[j] {
                return Err(Error::DuplicatePoint { first: i, second: j });
            }
        }
    }

    let mut current = tuple.clone();
    let mut maps = Vec::with_capacity(4);

    // Step 1: x_i != 0 for all i.
    {
        let mut excluded = Vec::new();
        for (x, y) in current.points() {
            if !y.is_zero() {
                excluded.push(-x / y);
            }
        }
        let map = TriangularMap::l(1, choose_param(&excluded));
        current = AutomorphismWord(vec![map.clone()]).apply(&current);
        maps.push(map);
        debug_assert!(step1_holds(&current));
    }

    // Step 2: no pair (x_i, y_i), (-x_i, -y_i).
    {
        let mut excluded = Vec::new();
        let pts = current.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if pts[j].0 == -pts[i].0.clone() {
                    let xi2 = &pts[i].0 * &pts[i].0;
                    excluded.push(-(&pts[i].1 + &pts[j].1) / (rint(2) * xi2));
                }
            }
        }
        let map = TriangularMap::r(2, choose_param(&excluded));
        current = AutomorphismWord(vec![map.clone()]).apply(&current);
        maps.push(map);
        debug_assert!(step1_holds(&current) && step2_holds(&current));
    }

    // Step 3: x_i != 0 and x_i^2 pairwise distinct.
    {
        let mut excluded = Vec::new();
        let pts = current.points();
        for (x, y) in pts {
            if !y.is_zero() {
                excluded.push(-x / y);
            }
        }
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let (xi, yi) = &pts[i];
                let (xj, yj) = &pts[j];
                if yi != yj {
                    excluded.push((xj - xi) / (yi - yj));
                }
                if *yi != -yj.clone() {
                    excluded.push(-(xi + xj) / (yi + yj));
                }
            }
        }
        let map = TriangularMap::l(1, choose_param(&excluded));
        current = AutomorphismWord(vec![map.clone()]).apply(&current);
        maps.push(map);
        debug_assert!(step3_holds(&current));
    }

    // Step 4: y_i != 0 and pairwise distinct.
    {
        let mut excluded = Vec::new();
        let pts = current.points();
        for (x, y) in pts {
            excluded.push(-y / (x * x));
        }
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let (xi, yi) = &pts[i];
                let (xj, yj) = &pts[j];
                excluded.push((yi - yj) / (xj * xj - xi * xi));
            }
        }
        let map = TriangularMap::r(2, choose_param(&excluded));
        current = AutomorphismWord(vec![map.clone()]).apply(&current);
        maps.push(map);
    }

    debug_assert!(omega_membership(&current, 1));
    Ok((AutomorphismWord(maps), current))
}

fn step1_holds(t: &PointTuple) -> bool {
    t.points().iter().all(|(x, _)| !x.is_zero())
}

fn step2_holds(t: &PointTuple) -> bool {
    let pts = t.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[j].0 == -pts[i].0.clone() && pts[j].1 == -pts[i].1.clone() {
                return false;
            }
        }
    }
    true
}

fn step3_holds(t: &PointTuple) -> bool {
    let pts = t.points();
    if !step1_holds(t) {
        return false;
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if &pts[i].0 * &pts[i].0 == &pts[j].0 * &pts[j].0 {
                return false;
            }
        }
    }
    true
}

/// Whether the characters `(-1, r)` and `(s, -1)` generate the full
/// integer lattice, i.e. `|rs - 1| = 1`.
pub fn root_lattice_test(r: u32, s: u32) -> bool {
    let det = i64::from(r) * i64::from(s) - 1;
    det.abs() == 1
}

/// Builds `f(z) = c0 * z^d0 * prod_{j<m} (z^d - z_j^d)` with `f(z_m) = 1`;
/// the result vanishes at `z_1..z_{m-1}` and has support in `d0 + d*Z>=0`.
pub fn interpolate(zs: &[Rat], d0: u32, d: u32) -> Result<UnivariatePoly, Error> {
    assert!(d >= 1, "d must be positive");
    let Some((last, heads)) = zs.split_last() else {
        return Err(Error::NoNodes);
    };
    if last.is_zero() {
        return Err(Error::ZeroLastNode);
    }
    let last_pow = pow_u(last, d);
    for (index, z) in heads.iter().enumerate() {
        if pow_u(z, d) == last_pow {
            return Err(Error::CoincidentPower { index, power: d });
        }
    }
    let mut f = UnivariatePoly::monomial(d0, Rat::one());
    for z in heads {
        let factor = UnivariatePoly::monomial(d, Rat::one())
            .sub(&UnivariatePoly::monomial(0, pow_u(z, d)));
        f = f.mul(&factor);
    }
    let value = f.eval(last);
    debug_assert!(!value.is_zero());
    Ok(f.scale(&value.recip()))
}

/// Formal verification of the one-parameter holomorphic flow
/// `(x, y) -> ((x - 3y^2) e^t + 3y^2 e^{2t}, y e^t)` of the field
/// `(x + 3y^2) d/dx + y d/dy`: with `s = e^t` as a formal variable,
/// `s * d/ds` of the map equals the field at the image point, and `s = 1`
/// gives the identity.
pub fn verify_exponential_flow() -> bool {
    let x = BivariatePoly::parse("x").unwrap();
    let y = BivariatePoly::parse("y").unwrap();
    let y2x3 = BivariatePoly::parse("3y^2").unwrap();

    // coefficients of powers of s
    let big_x = vec![BivariatePoly::zero(), x.sub(&y2x3), y2x3.clone()];
    let big_y = vec![BivariatePoly::zero(), y.clone()];

    let s_dds = |f: &[BivariatePoly]| -> Vec<BivariatePoly> {
        f.iter()
            .enumerate()
            .map(|(k, c)| c.scale(&rint(k as i64)))
            .collect()
    };
    let series_mul = |f: &[BivariatePoly], g: &[BivariatePoly]| -> Vec<BivariatePoly> {
        let mut out = vec![BivariatePoly::zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        out
    };
    let series_eq = |f: &[BivariatePoly], g: &[BivariatePoly]| -> bool {
        let n = f.len().max(g.len());
        (0..n).all(|i| {
            let a = f.get(i).cloned().unwrap_or_else(BivariatePoly::zero);
            let b = g.get(i).cloned().unwrap_or_else(BivariatePoly::zero);
            a == b
        })
    };
    let series_add = |f: &[BivariatePoly], g: &[BivariatePoly]| -> Vec<BivariatePoly> {
        let n = f.len().max(g.len());
        (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_else(BivariatePoly::zero);
                let b = g.get(i).cloned().unwrap_or_else(BivariatePoly::zero);
                a.add(&b)
            })
            .collect()
    };
    let at_one = |f: &[BivariatePoly]| -> BivariatePoly {
        f.iter()
            .fold(BivariatePoly::zero(), |acc, c| acc.add(c))
    };

    // x-component: s dX/ds = X + 3 Y^2
    let lhs_x = s_dds(&big_x);
    let rhs_x = series_add(&big_x, &series_mul(&big_y, &big_y).iter().map(|c| c.scale(&rint(3))).collect::<Vec<_>>());
    // y-component: s dY/ds = Y
    let lhs_y = s_dds(&big_y);

    series_eq(&lhs_x, &rhs_x)
        && series_eq(&lhs_y, &big_y)
        && at_one(&big_x) == x
        && at_one(&big_y) == y
}

/// Seeded generator of test tuples: `m` pairwise distinct points away
/// from the origin, coordinates in a small rational box.
pub fn random_tuple<R: Rng>(rng: &mut R, m: usize) -> PointTuple {
    assert!(m >= 1);
    loop {
        let mut points = Vec::with_capacity(m);
        for _ in 0..m {
            let x = crate::rat::rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=3));
            let y = crate::rat::rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=3));
            points.push((x, y));
        }
        let origin_free = points.iter().all(|(x, y)| !x.is_zero() || !y.is_zero());
        let distinct = (0..points.len())
            .all(|i| (i + 1..points.len()).all(|j| points[i] != points[j]));
        if origin_free && distinct {
            return PointTuple(points);
        }
    }
}
