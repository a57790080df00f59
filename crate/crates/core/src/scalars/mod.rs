//! Coefficient fields `K` and their automorphisms `γ`.
//!
//! Three families are supported: `Q` and `F_p` (with `γ = id`) and the
//! rational function field `Q(x_1..x_m)` with the monomial automorphism
//! `γ(x^v) = x^(A v)` for some `A ∈ GL(m, Z)`.

mod intmat;
pub mod mpoly;
mod ratfun;

use alloc::format;
use core::fmt;
use core::ops;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use intmat::IntMatrix;
pub use mpoly::MPoly;
pub use ratfun::RatFun;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
    RatFun {
        vars: usize,
        automorphism: IntMatrix,
    },
}

/// A coefficient field together with its automorphism.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldSpec {
    kind: FieldKind,
    inverse: Option<IntMatrix>,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
            inverse: None,
        }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec {
            kind: FieldKind::PrimeField(p),
            inverse: None,
        })
    }

    /// `Q(x_1..x_m)` with `γ(x^v) = x^(A v)`; `A` must lie in `GL(m, Z)`.
    pub fn ratfun(vars: usize, automorphism: IntMatrix) -> Result<Self> {
        if vars == 0 {
            return Err(Error::InvalidField(
                "rational function field needs at least one variable".into(),
            ));
        }
        if automorphism.size() != vars {
            return Err(Error::InvalidField(format!(
                "automorphism matrix is {}x{} but the field has {vars} variables",
                automorphism.size(),
                automorphism.size()
            )));
        }
        let inverse = automorphism.unimodular_inverse().ok_or_else(|| {
            Error::InvalidField("automorphism matrix must have determinant ±1".into())
        })?;
        Ok(FieldSpec {
            kind: FieldKind::RatFun { vars, automorphism },
            inverse: Some(inverse),
        })
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// True when `γ` is the identity, so `K_γ[t^±1]` is commutative.
    pub fn is_commutative(&self) -> bool {
        match &self.kind {
            FieldKind::RatFun { automorphism, .. } => automorphism.is_identity(),
            _ => true,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldKind::PrimeField(p) => Scalar::Modular {
                value: reduce_i64(v, *p),
                modulus: *p,
            },
            FieldKind::RatFun { vars, .. } => {
                Scalar::RatFun(RatFun::from_poly(MPoly::constant(*vars, BigInt::from(v))))
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match &self.kind {
            FieldKind::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldKind::PrimeField(p) => {
                let n = reduce_big(q.numer(), *p);
                let d = reduce_big(q.denom(), *p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Modular {
                    value: mul_mod(n, inv_mod(d, *p), *p),
                    modulus: *p,
                })
            }
            FieldKind::RatFun { vars, .. } => Ok(Scalar::RatFun(RatFun::from_rational(*vars, q))),
        }
    }

    /// The variable `x_{index+1}` of a rational function field.
    pub fn variable(&self, index: usize) -> Result<Scalar> {
        match &self.kind {
            FieldKind::RatFun { vars, .. } if index < *vars => Ok(Scalar::RatFun(
                RatFun::from_poly(MPoly::variable(*vars, index)),
            )),
            _ => Err(Error::InvalidField(format!(
                "field has no variable x{}",
                index + 1
            ))),
        }
    }

    /// `x^v` for an integer vector `v`; for `Q`/`F_p` only the empty vector is valid.
    pub fn monomial(&self, exponent: &[i64]) -> Result<Scalar> {
        match &self.kind {
            FieldKind::RatFun { vars, .. } if exponent.len() == *vars => {
                Ok(Scalar::RatFun(RatFun::monomial(exponent)))
            }
            _ if exponent.is_empty() => Ok(self.one()),
            _ => Err(Error::InvalidField(format!(
                "exponent vector of length {} does not fit",
                exponent.len()
            ))),
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::PrimeField(p), Scalar::Modular { modulus, .. }) => p == modulus,
            (FieldKind::RatFun { vars, .. }, Scalar::RatFun(r)) => r.nvars() == *vars,
            _ => false,
        }
    }

    /// `A^k` (negative `k` via `A^-1`), or `None` when `γ` is the identity.
    pub fn automorphism_power(&self, k: i64) -> Option<IntMatrix> {
        match &self.kind {
            FieldKind::RatFun { automorphism, .. } if !automorphism.is_identity() => {
                let base = if k >= 0 {
                    automorphism
                } else {
                    self.inverse.as_ref().unwrap()
                };
                Some(base.pow(k.unsigned_abs()))
            }
            _ => None,
        }
    }

    /// `γ^k(a)`.
    pub fn apply_automorphism(&self, k: i64, a: &Scalar) -> Result<Scalar> {
        if !self.contains(a) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.apply_power(self.automorphism_power(k).as_ref(), a))
    }

    /// Applies a precomputed power of `A` (see [`FieldSpec::automorphism_power`]).
    pub fn apply_power(&self, power: Option<&IntMatrix>, a: &Scalar) -> Scalar {
        match (power, a) {
            (Some(m), Scalar::RatFun(r)) => Scalar::RatFun(r.substitute(m)),
            _ => a.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::PrimeField(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "F_{p}"),
            FieldKind::RatFun { vars, automorphism } => {
                write!(f, "Q(x1..x{vars}) with A = {:?}", automorphism.rows())
            }
        }
    }
}

/// An element of one of the supported coefficient fields.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
    RatFun(RatFun),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Exact field arithmetic with explicit error reporting.
pub fn scalar_arith(op: ScalarOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar> {
    let need_b = || b.ok_or_else(|| Error::Precondition(format!("{op:?} needs two operands")));
    match op {
        ScalarOp::Add => a.try_add(need_b()?),
        ScalarOp::Sub => a.try_sub(need_b()?),
        ScalarOp::Mul => a.try_mul(need_b()?),
        ScalarOp::Div => a.try_div(need_b()?),
        ScalarOp::Neg => Ok(a.neg()),
        ScalarOp::Inv => a.try_inv(),
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::RatFun(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
            Scalar::RatFun(r) => r.is_one(),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Ok(Scalar::Modular {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            }),
            (Scalar::RatFun(a), Scalar::RatFun(b)) if a.nvars() == b.nvars() => {
                Ok(Scalar::RatFun(a.add(b)))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Ok(Scalar::Modular {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            }),
            (Scalar::RatFun(a), Scalar::RatFun(b)) if a.nvars() == b.nvars() => {
                Ok(Scalar::RatFun(a.mul(b)))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
            Scalar::RatFun(a) => Scalar::RatFun(a.inv()),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        if !same_field(self, other) {
            return Err(Error::FieldMismatch);
        }
        self.try_mul(&other.try_inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::RatFun(a) => Scalar::RatFun(a.neg()),
        }
    }

    /// Panicking inverse for internal use where nonzero-ness is an invariant.
    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero scalar")
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Modular { value, .. } => Some(BigRational::from_integer(BigInt::from(*value))),
            Scalar::RatFun(r) => r.as_rational(),
        }
    }

    /// Rough size measure used to prefer small pivots.
    pub fn weight(&self) -> usize {
        match self {
            Scalar::Rational(q) => (q.numer().bits() + q.denom().bits()) as usize,
            Scalar::Modular { .. } => 1,
            Scalar::RatFun(r) => {
                r.numerator().num_terms()
                    + r.denominator().num_terms()
                    + (r.numerator().total_degree() + r.denominator().total_degree()) as usize
            }
        }
    }
}

fn same_field(a: &Scalar, b: &Scalar) -> bool {
    match (a, b) {
        (Scalar::Rational(_), Scalar::Rational(_)) => true,
        (Scalar::Modular { modulus: p, .. }, Scalar::Modular { modulus: q, .. }) => p == q,
        (Scalar::RatFun(x), Scalar::RatFun(y)) => x.nvars() == y.nvars(),
        _ => false,
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> ops::$trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::RatFun(r) => write!(f, "{r}"),
        }
    }
}

fn reduce_i64(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

fn reduce_big(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(e.gcd.abs(), 1);
    e.x.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
