//! Independent commutative arithmetic over `Q[t^±1]`, used as an oracle.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use twalex_core::scalars::FieldSpec;
use twalex_core::skewlinalg::SkewMatrix;
use twalex_core::skewpoly::{SkewPoly, SkewRing};

/// Dense Laurent polynomial `t^low (c_0 + c_1 t + …)`, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    pub low: i64,
    pub coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: i64) -> Self {
        QPoly::new(0, vec![BigRational::from_integer(BigInt::from(c))])
    }

    pub fn new(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = QPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        QPoly::new(
            low,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.coeffs.len() as i64 - 1)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = (self.low + self.coeffs.len() as i64).max(o.low + o.coeffs.len() as i64);
        let mut c = vec![BigRational::zero(); (high - low) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[(self.low - low) as usize + i] += a;
        }
        for (i, a) in o.coeffs.iter().enumerate() {
            c[(o.low - low) as usize + i] += a;
        }
        QPoly::new(low, c)
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.low, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(self.low + o.low, c)
    }

    /// Drops the unit `k t^e`: low exponent 0 and monic.
    pub fn normalized(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let lc = self.coeffs.last().unwrap().clone();
        QPoly::new(0, self.coeffs.iter().map(|c| c / &lc).collect())
    }

    /// Euclidean remainder of polynomials (low exponents ignored).
    fn rem(&self, o: &QPoly) -> QPoly {
        let mut r = self.coeffs.clone();
        let d = &o.coeffs;
        let lc = d.last().unwrap();
        while r.len() >= d.len() && !r.is_empty() {
            let q = r.last().unwrap() / lc;
            let shift = r.len() - d.len();
            for (i, c) in d.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        QPoly::new(0, r)
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.normalized(), o.normalized());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.normalized();
        }
        a.normalized()
    }
}

pub fn q_ring() -> SkewRing {
    SkewRing::new(FieldSpec::rationals())
}

pub fn to_qpoly(f: &SkewPoly) -> QPoly {
    let mut acc = QPoly::zero();
    for (e, c) in f.terms() {
        acc = acc.add(&QPoly::new(
            e,
            vec![c.as_rational().expect("rational coefficient")],
        ));
    }
    acc
}

pub fn from_qpoly(ring: &SkewRing, f: &QPoly) -> SkewPoly {
    SkewPoly::from_terms(
        f.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (f.low + i as i64, ring.spec().from_rational(c).unwrap())),
    )
}

/// Cofactor-expansion determinant.
pub fn det(m: &[Vec<QPoly>]) -> QPoly {
    let n = m.len();
    if n == 0 {
        return QPoly::constant(1);
    }
    let mut acc = QPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<QPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Order of the module presented by an `r × s` matrix: gcd of the `r × r` minors.
pub fn order_by_minors(m: &[Vec<QPoly>], cols: usize) -> QPoly {
    let r = m.len();
    let mut g = QPoly::zero();
    for c in combinations(cols, r) {
        let sub: Vec<Vec<QPoly>> = m
            .iter()
            .map(|row| c.iter().map(|&j| row[j].clone()).collect())
            .collect();
        g = g.gcd(&det(&sub));
    }
    g
}

pub fn to_rows(m: &SkewMatrix) -> Vec<Vec<QPoly>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(to_qpoly).collect())
        .collect()
}
