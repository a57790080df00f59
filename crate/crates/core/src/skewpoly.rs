//! The skew Laurent polynomial ring `K_γ[t^±1]` and the abelianized units of
//! its quotient field.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalars::{FieldSpec, IntMatrix, Scalar};

/// Degree of a Laurent polynomial: the span of its exponents, or `Infinite` for zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Degree {
    Infinite,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Degree::Infinite
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Infinite => write!(f, "inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A Laurent polynomial `Σ a_i t^i`. No stored coefficient is zero.
///
/// Polynomials do not carry their field; arithmetic that depends on `γ`
/// goes through a [`SkewRing`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SkewPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly {
            terms: BTreeMap::new(),
        }
    }

    /// `a t^e` (zero if `a` is zero).
    pub fn term(a: Scalar, e: i64) -> Self {
        let mut p = SkewPoly::zero();
        if !a.is_zero() {
            p.terms.insert(e, a);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut p = SkewPoly::zero();
        for (e, a) in terms {
            p.add_term(e, a);
        }
        p
    }

    fn add_term(&mut self, e: i64, a: Scalar) {
        if a.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(b) => {
                let s = &b + &a;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, a);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Scalar::is_one)
    }

    /// True for the units `k t^e` of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Scalar)> + '_ {
        self.terms.iter().map(|(e, a)| (*e, a))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> Option<&Scalar> {
        self.terms.get(&e)
    }

    pub fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<(i64, &Scalar)> {
        self.terms.iter().next_back().map(|(e, a)| (*e, a))
    }

    pub fn trailing(&self) -> Option<(i64, &Scalar)> {
        self.terms.iter().next().map(|(e, a)| (*e, a))
    }

    pub fn degree(&self) -> Degree {
        match (self.low(), self.high()) {
            (Some(l), Some(h)) => Degree::Finite(h - l),
            _ => Degree::Infinite,
        }
    }

    /// The constant coefficient when the polynomial is `a t^0`.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.len() {
            1 => self.terms.get(&0),
            _ => None,
        }
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        let mut out = self.clone();
        for (e, a) in &other.terms {
            out.add_term(*e, a.clone());
        }
        out
    }

    pub fn neg(&self) -> SkewPoly {
        SkewPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        let mut out = self.clone();
        for (e, a) in &other.terms {
            out.add_term(*e, a.neg());
        }
        out
    }

    /// `self · t^e`; right multiplication by a power of `t` is untwisted.
    pub fn shift(&self, e: i64) -> SkewPoly {
        SkewPoly {
            terms: self.terms.iter().map(|(i, a)| (i + e, a.clone())).collect(),
        }
    }

    /// `a · self` for a scalar `a` on the left.
    pub fn scale_left(&self, a: &Scalar) -> SkewPoly {
        if a.is_zero() {
            return SkewPoly::zero();
        }
        SkewPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, a * c)).collect(),
        }
    }

    /// Rendering with ascending exponents, e.g. `(1) + (-1)t + (1)t^2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, a)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "({a})");
            match *e {
                0 => {}
                1 => out.push('t'),
                e => {
                    let _ = write!(out, "t^{e}");
                }
            }
        }
        out
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `K_γ[t^±1]` for a given coefficient field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewRing {
    spec: Arc<FieldSpec>,
}

impl SkewRing {
    pub fn new(spec: FieldSpec) -> Self {
        SkewRing {
            spec: Arc::new(spec),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_commutative(&self) -> bool {
        self.spec.is_commutative()
    }

    pub fn zero(&self) -> SkewPoly {
        SkewPoly::zero()
    }

    pub fn one(&self) -> SkewPoly {
        SkewPoly::term(self.spec.one(), 0)
    }

    pub fn t(&self, e: i64) -> SkewPoly {
        SkewPoly::term(self.spec.one(), e)
    }

    pub fn constant(&self, a: Scalar) -> SkewPoly {
        SkewPoly::term(a, 0)
    }

    pub fn from_int(&self, v: i64) -> SkewPoly {
        SkewPoly::term(self.spec.from_int(v), 0)
    }

    /// Polynomial with integer coefficients, `coeffs[k]` at exponent `low + k`.
    pub fn from_ints(&self, low: i64, coeffs: &[i64]) -> SkewPoly {
        SkewPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (low + k as i64, self.spec.from_int(c))),
        )
    }

    /// True when every coefficient belongs to this ring's field.
    pub fn contains(&self, f: &SkewPoly) -> bool {
        f.terms.values().all(|a| self.spec.contains(a))
    }

    fn power(&self, k: i64) -> Option<IntMatrix> {
        self.spec.automorphism_power(k)
    }

    /// `γ^k(a)`.
    pub fn gamma(&self, k: i64, a: &Scalar) -> Scalar {
        self.spec.apply_power(self.power(k).as_ref(), a)
    }

    /// Applies `γ^k` to every coefficient.
    pub fn gamma_poly(&self, k: i64, f: &SkewPoly) -> SkewPoly {
        let m = self.power(k);
        SkewPoly {
            terms: f
                .terms
                .iter()
                .map(|(e, a)| (*e, self.spec.apply_power(m.as_ref(), a)))
                .collect(),
        }
    }

    /// `f · a` for a scalar `a` on the right: `Σ c_i γ^i(a) t^i`.
    pub fn scale_right(&self, f: &SkewPoly, a: &Scalar) -> SkewPoly {
        if a.is_zero() {
            return SkewPoly::zero();
        }
        SkewPoly {
            terms: f
                .terms
                .iter()
                .map(|(e, c)| (*e, c * &self.gamma(*e, a)))
                .collect(),
        }
    }

    /// `t^e · f`.
    pub fn shift_left(&self, e: i64, f: &SkewPoly) -> SkewPoly {
        self.gamma_poly(e, f).shift(e)
    }

    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        if f.is_zero() || g.is_zero() {
            return SkewPoly::zero();
        }
        let mut out = SkewPoly::zero();
        for (i, a) in &f.terms {
            let twisted = self.gamma_poly(*i, g);
            for (j, b) in &twisted.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    /// Product with field checks on both operands.
    pub fn try_mul(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        if !self.contains(f) || !self.contains(g) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul(f, g))
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a SkewPoly>) -> SkewPoly {
        factors
            .into_iter()
            .fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `f = g·q + r` with `r = 0` or `deg r < deg g`.
    pub fn right_divide(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let (gl, gh) = match (g.low(), g.high()) {
            (Some(l), Some(h)) => (l, h),
            _ => return Err(Error::DivisionByZero),
        };
        let n = gh - gl;
        let Some(fl) = f.low() else {
            return Ok((SkewPoly::zero(), SkewPoly::zero()));
        };
        let lead_inv = g.terms[&gh].inv();
        let mut q = SkewPoly::zero();
        let mut r = f.clone();
        // Cancel top terms of r while they lie at least deg g above the bottom of f.
        while let Some((m, c)) = r.leading() {
            if m - fl < n {
                break;
            }
            let e = m - gh;
            let b = self.gamma(-gh, &(&lead_inv * c));
            let step = SkewPoly::term(b, e);
            r = r.sub(&self.mul(g, &step));
            q = q.add(&step);
        }
        Ok((q, r))
    }

    /// `f = q·g + r` with `r = 0` or `deg r < deg g`.
    pub fn left_divide(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let (gl, gh) = match (g.low(), g.high()) {
            (Some(l), Some(h)) => (l, h),
            _ => return Err(Error::DivisionByZero),
        };
        let n = gh - gl;
        let Some(fl) = f.low() else {
            return Ok((SkewPoly::zero(), SkewPoly::zero()));
        };
        let lead = &g.terms[&gh];
        let mut q = SkewPoly::zero();
        let mut r = f.clone();
        while let Some((m, c)) = r.leading() {
            if m - fl < n {
                break;
            }
            let e = m - gh;
            let b = c * &self.gamma(e, lead).inv();
            let step = SkewPoly::term(b, e);
            r = r.sub(&self.mul(&step, g));
            q = q.add(&step);
        }
        Ok((q, r))
    }

    /// Nonzero `(u, v)` with `u·a = v·b`, from the extended left Euclidean algorithm.
    pub fn common_left_multiple(&self, a: &SkewPoly, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a == b {
            return Ok((self.one(), self.one()));
        }
        // Invariant: r_i = s_i a + t_i b.
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), SkewPoly::zero());
        let (mut t0, mut t1) = (SkewPoly::zero(), self.one());
        loop {
            let (q, rem) = self.left_divide(&r0, &r1)?;
            let s2 = s0.sub(&self.mul(&q, &s1));
            let t2 = t0.sub(&self.mul(&q, &t1));
            if rem.is_zero() {
                return Ok((s2, t2.neg()));
            }
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
            t0 = core::mem::replace(&mut t1, t2);
        }
    }

    /// Nonzero `(u, v)` with `a·u = b·v`, from the extended right Euclidean algorithm.
    pub fn common_right_multiple(
        &self,
        a: &SkewPoly,
        b: &SkewPoly,
    ) -> Result<(SkewPoly, SkewPoly)> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a == b {
            return Ok((self.one(), self.one()));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), SkewPoly::zero());
        let (mut t0, mut t1) = (SkewPoly::zero(), self.one());
        loop {
            let (q, rem) = self.right_divide(&r0, &r1)?;
            let s2 = s0.sub(&self.mul(&s1, &q));
            let t2 = t0.sub(&self.mul(&t1, &q));
            if rem.is_zero() {
                return Ok((s2, t2.neg()));
            }
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
            t0 = core::mem::replace(&mut t1, t2);
        }
    }

    /// Greatest common right divisor (commutative rings: the gcd), normalized monic at `t^0`.
    pub fn gcd(&self, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = self.left_divide(&x, &y)?;
            x = core::mem::replace(&mut y, r);
        }
        Ok(self.normalize(&x))
    }

    /// Representative of `f` modulo units `k t^e`: lowest exponent 0 and leading coefficient 1.
    pub fn normalize(&self, f: &SkewPoly) -> SkewPoly {
        let (Some(l), Some((_, lead))) = (f.low(), f.leading()) else {
            return SkewPoly::zero();
        };
        f.shift(-l).scale_left(&lead.inv())
    }

    /// `q` with `f = g·q`, if it exists.
    pub fn exact_right_quotient(&self, f: &SkewPoly, g: &SkewPoly) -> Result<Option<SkewPoly>> {
        let (q, r) = self.right_divide(f, g)?;
        Ok(r.is_zero().then_some(q))
    }

    /// `q` with `f = q·g`, if it exists.
    pub fn exact_left_quotient(&self, f: &SkewPoly, g: &SkewPoly) -> Result<Option<SkewPoly>> {
        let (q, r) = self.left_divide(f, g)?;
        Ok(r.is_zero().then_some(q))
    }
}

/// An element of `K_γ(t)^×_ab` kept as formal numerator and denominator lists.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AbelianizedUnit {
    pub numerators: Vec<SkewPoly>,
    pub denominators: Vec<SkewPoly>,
    /// Defined only up to sign (the `±` of torsion).
    pub sign_ambiguous: bool,
    /// Defined only up to a unit `k t^e`.
    pub unit_ambiguous: bool,
}

impl AbelianizedUnit {
    pub fn one() -> Self {
        Self::default()
    }

    /// Panics if any factor is zero.
    pub fn new(numerators: Vec<SkewPoly>, denominators: Vec<SkewPoly>) -> Self {
        assert!(
            numerators.iter().chain(&denominators).all(|p| !p.is_zero()),
            "abelianized units have nonzero factors"
        );
        AbelianizedUnit {
            numerators,
            denominators,
            sign_ambiguous: false,
            unit_ambiguous: false,
        }
    }

    pub fn mul(&self, other: &AbelianizedUnit) -> AbelianizedUnit {
        let mut out = self.clone();
        out.numerators.extend(other.numerators.iter().cloned());
        out.denominators.extend(other.denominators.iter().cloned());
        out.sign_ambiguous |= other.sign_ambiguous;
        out.unit_ambiguous |= other.unit_ambiguous;
        out
    }

    pub fn inv(&self) -> AbelianizedUnit {
        AbelianizedUnit {
            numerators: self.denominators.clone(),
            denominators: self.numerators.clone(),
            ..*self
        }
    }

    /// `Σ deg numerators − Σ deg denominators`.
    pub fn degree(&self) -> i64 {
        let sum = |v: &[SkewPoly]| {
            v.iter()
                .map(|p| p.degree().finite().expect("nonzero factor"))
                .sum::<i64>()
        };
        sum(&self.numerators) - sum(&self.denominators)
    }

    /// Reduced fraction `(num, den)` modulo `k t^e`, both normalized by [`SkewRing::normalize`].
    ///
    /// Only available when the ring is commutative.
    pub fn reduced(&self, ring: &SkewRing) -> Result<(SkewPoly, SkewPoly)> {
        if !ring.is_commutative() {
            return Err(Error::SkewEqualityUndecidable);
        }
        let num = ring.normalize(&ring.product(&self.numerators));
        let den = ring.normalize(&ring.product(&self.denominators));
        let g = ring.gcd(&num, &den)?;
        let num = ring.exact_left_quotient(&num, &g)?.expect("gcd divides");
        let den = ring.exact_left_quotient(&den, &g)?.expect("gcd divides");
        Ok((ring.normalize(&num), ring.normalize(&den)))
    }

    /// Whether the value is `k t^e` (commutative rings only).
    pub fn is_monomial(&self, ring: &SkewRing) -> Result<bool> {
        let (n, d) = self.reduced(ring)?;
        Ok(n.is_one() && d.is_one())
    }

    /// Equality modulo `k t^e` (commutative rings only).
    pub fn equal_up_to_units(&self, other: &AbelianizedUnit, ring: &SkewRing) -> Result<bool> {
        Ok(self.reduced(ring)? == other.reduced(ring)?)
    }
}

/// `Σ deg numerators − Σ deg denominators`.
pub fn unit_degree(u: &AbelianizedUnit) -> i64 {
    u.degree()
}

/// Whether `u` reduces to `k t^e`; undecidable (an error) over a genuinely skew ring.
pub fn unit_is_monomial(ring: &SkewRing, u: &AbelianizedUnit) -> Result<bool> {
    u.is_monomial(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q() -> SkewRing {
        SkewRing::new(FieldSpec::rationals())
    }

    fn shear() -> SkewRing {
        SkewRing::new(
            FieldSpec::ratfun(2, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).unwrap(),
        )
    }

    #[test]
    fn defining_relation() {
        let r = shear();
        let x1 = r.constant(r.spec().variable(0).unwrap());
        let x2 = r.constant(r.spec().variable(1).unwrap());
        assert_eq!(r.mul(&r.t(1), &x2), r.mul(&r.mul(&x1, &x2), &r.t(1)));
        assert_eq!(r.mul(&r.t(1), &x1), r.mul(&x1, &r.t(1)));
    }

    #[test]
    fn commutative_product() {
        let r = q();
        let p = r.mul(&r.from_ints(0, &[-1, 1]), &r.from_ints(0, &[1, 1]));
        assert_eq!(p, r.from_ints(0, &[-1, 0, 1]));
        assert_eq!(r.mul(&p, &r.one()), p);
    }

    #[test]
    fn degrees() {
        let r = q();
        let f = r.from_ints(0, &[3]).shift(-1).add(&r.t(2));
        assert_eq!(f.degree(), Degree::Finite(3));
        assert_eq!(r.from_int(5).degree(), Degree::Finite(0));
        assert_eq!(SkewPoly::zero().degree(), Degree::Infinite);
    }

    #[test]
    fn division_examples() {
        let r = q();
        let f = r.from_ints(0, &[-1, 0, 1]);
        let g = r.from_ints(0, &[-1, 1]);
        assert_eq!(
            r.right_divide(&f, &g).unwrap(),
            (r.from_ints(0, &[1, 1]), SkewPoly::zero())
        );
        assert_eq!(
            r.left_divide(&f, &g).unwrap(),
            (r.from_ints(0, &[1, 1]), SkewPoly::zero())
        );
        assert_eq!(r.right_divide(&f, &f).unwrap(), (r.one(), SkewPoly::zero()));
        assert_eq!(
            r.left_divide(&g, &f).unwrap(),
            (SkewPoly::zero(), g.clone())
        );
        assert_eq!(
            r.right_divide(&f, &SkewPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn skew_division_reconstructs() {
        let r = shear();
        let x1 = r.spec().variable(0).unwrap();
        let x2 = r.spec().variable(1).unwrap();
        let f = SkewPoly::from_terms([(-1, x2.clone()), (2, &x1 + &x2), (3, r.spec().one())]);
        let g = SkewPoly::from_terms([(0, x1.clone()), (1, x2.clone())]);
        let (q1, r1) = r.right_divide(&f, &g).unwrap();
        assert_eq!(r.mul(&g, &q1).add(&r1), f);
        assert!(r1.degree().finite().unwrap() < 1);
        let (q2, r2) = r.left_divide(&f, &g).unwrap();
        assert_eq!(r.mul(&q2, &g).add(&r2), f);
        assert!(r2.degree().finite().unwrap() < 1);
    }

    #[test]
    fn common_multiples() {
        let r = q();
        let a = r.from_ints(0, &[-1, 1]);
        let b = r.from_ints(0, &[1, 1]);
        assert_eq!(r.common_left_multiple(&a, &a).unwrap(), (r.one(), r.one()));
        let (u, v) = r.common_left_multiple(&a, &b).unwrap();
        let m = r.mul(&u, &a);
        assert_eq!(m, r.mul(&v, &b));
        assert_eq!(r.normalize(&m), r.from_ints(0, &[-1, 0, 1]));

        let s = shear();
        let x1 = s.spec().variable(0).unwrap();
        let a = SkewPoly::from_terms([(0, x1.clone()), (1, s.spec().one())]);
        let b = SkewPoly::from_terms([(0, s.spec().one()), (2, x1)]);
        let (u, v) = s.common_left_multiple(&a, &b).unwrap();
        assert_eq!(s.mul(&u, &a), s.mul(&v, &b));
        let (u, v) = s.common_right_multiple(&a, &b).unwrap();
        assert_eq!(s.mul(&a, &u), s.mul(&b, &v));
    }

    #[test]
    fn unit_examples() {
        let r = q();
        let tm1 = r.from_ints(0, &[-1, 1]);
        let tre = r.from_ints(0, &[1, -1, 1]);
        assert_eq!(
            unit_degree(&AbelianizedUnit::new(vec![tm1.clone()], vec![])),
            1
        );
        assert_eq!(
            unit_degree(&AbelianizedUnit::new(vec![tre.clone()], vec![tre.clone()])),
            0
        );
        assert_eq!(
            unit_degree(&AbelianizedUnit::new(vec![tre.clone()], vec![tm1.clone()])),
            1
        );
        assert!(unit_is_monomial(&r, &AbelianizedUnit::new(vec![tm1.clone()], vec![tm1])).unwrap());
        assert!(!unit_is_monomial(&r, &AbelianizedUnit::new(vec![tre], vec![])).unwrap());
        let two_t3 = SkewPoly::term(r.spec().from_int(2), 3);
        assert!(unit_is_monomial(&r, &AbelianizedUnit::new(vec![two_t3], vec![r.t(1)])).unwrap());
        let s = shear();
        assert_eq!(
            unit_is_monomial(&s, &AbelianizedUnit::new(vec![s.t(1)], vec![])),
            Err(Error::SkewEqualityUndecidable)
        );
    }

    #[test]
    fn rendering() {
        let r = q();
        assert_eq!(r.from_ints(0, &[1, -1, 1]).render(), "(1) + (-1)t + (1)t^2");
        assert_eq!(r.from_ints(-1, &[2]).render(), "(2)t^-1");
        assert_eq!(SkewPoly::zero().render(), "0");
    }
}
