use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::mpoly::MPoly;
use super::IntMatrix;

/// Element of `Q(x_1..x_m)` stored as a reduced fraction of integer polynomials.
///
/// Canonical form: `gcd(num, den) = 1` over `Z[x]` and the grlex-leading
/// coefficient of `den` is positive. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn zero(nvars: usize) -> Self {
        RatFun {
            num: MPoly::zero(nvars),
            den: MPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        RatFun {
            num: MPoly::one(nvars),
            den: MPoly::one(nvars),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFun {
            num: p,
            den: MPoly::one(n),
        }
    }

    pub fn from_rational(nvars: usize, q: &BigRational) -> Self {
        Self::new(
            MPoly::constant(nvars, q.numer().clone()),
            MPoly::constant(nvars, q.denom().clone()),
        )
    }

    /// `x^v` for an arbitrary integer exponent vector.
    pub fn monomial(exponent: &[i64]) -> Self {
        let n = exponent.len();
        let pos = exponent.iter().map(|&e| e.max(0) as u32).collect();
        let neg = exponent.iter().map(|&e| (-e).max(0) as u32).collect();
        RatFun {
            num: MPoly::monomial(n, pos, BigInt::one()),
            den: MPoly::monomial(n, neg, BigInt::one()),
        }
    }

    /// Canonicalizes `num / den`. Panics if `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::sign_normalized(num, den)
    }

    fn sign_normalized(num: MPoly, den: MPoly) -> Self {
        let flip = den.grlex_leading().is_some_and(|(_, c)| c.is_negative());
        if flip {
            RatFun {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            RatFun { num, den }
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Rational value if the function is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        // With g = gcd(b, d): a/b + c/d = (a·d' + c·b') / (b'·d'·g), and the
        // numerator is already coprime to b'·d', so only g can cancel.
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::sign_normalized_or_zero(num, self.den.mul(&other.den));
        }
        let b = self.den.div_exact(&g).unwrap();
        let d = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d).add(&other.num.mul(&b));
        if num.is_zero() {
            return Self::zero(self.nvars());
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        Self::sign_normalized(num, b.mul(&d).mul(&g))
    }

    fn sign_normalized_or_zero(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        Self::sign_normalized(num, den)
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = other.den.div_exact(&g1).unwrap();
        let c = other.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Self::sign_normalized(a.mul(&c), b.mul(&d))
    }

    /// Panics on zero.
    pub fn inv(&self) -> RatFun {
        assert!(!self.is_zero(), "inverse of zero");
        Self::sign_normalized(self.den.clone(), self.num.clone())
    }

    /// Image under `x^w -> x^(M w)`, with `M` unimodular.
    pub fn substitute(&self, m: &IntMatrix) -> RatFun {
        if self.is_zero() || m.is_identity() {
            return self.clone();
        }
        let (pn, sn) = self.num.substitute_monomial(m);
        let (pd, sd) = self.den.substitute_monomial(m);
        let n = self.nvars();
        let diff: Vec<i64> = sn.iter().zip(&sd).map(|(a, b)| a - b).collect();
        let up = MPoly::monomial(
            n,
            diff.iter().map(|&e| e.max(0) as u32).collect(),
            BigInt::one(),
        );
        let down = MPoly::monomial(
            n,
            diff.iter().map(|&e| (-e).max(0) as u32).collect(),
            BigInt::one(),
        );
        // Both parts stay coprime: a unimodular monomial map is an automorphism of Z[x^±1].
        Self::sign_normalized(pn.mul(&up), pd.mul(&down))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn x(i: usize) -> RatFun {
        RatFun::from_poly(MPoly::variable(2, i))
    }

    fn int(v: i64) -> RatFun {
        RatFun::from_poly(MPoly::constant(2, BigInt::from(v)))
    }

    #[test]
    fn inverse_of_fraction() {
        let a = x(0).mul(&x(1).add(&int(1)).inv());
        let inv = a.inv();
        assert_eq!(inv, x(1).add(&int(1)).mul(&x(0).inv()));
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn sum_reduces() {
        // 1/(x1 - 1) - 1/(x1 + 1) = 2/(x1^2 - 1)
        let a = x(0).sub(&int(1)).inv();
        let b = x(0).add(&int(1)).inv();
        let expected = int(2).mul(&x(0).mul(&x(0)).sub(&int(1)).inv());
        assert_eq!(a.sub(&b), expected);
    }

    #[test]
    fn denominator_sign_is_positive() {
        let a = RatFun::new(MPoly::variable(2, 0), MPoly::variable(2, 1).neg());
        assert_eq!(a, x(0).neg().mul(&x(1).inv()));
        assert!(!a.denominator().grlex_leading().unwrap().1.is_negative());
    }

    #[test]
    fn substitution_matches_full_canonicalization() {
        let m = IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]]);
        let a = x(0).add(&int(2)).mul(&x(1).sub(&int(1)).inv());
        let s = a.substitute(&m);
        assert_eq!(
            s,
            RatFun::new(s.numerator().clone(), s.denominator().clone())
        );
    }
}
