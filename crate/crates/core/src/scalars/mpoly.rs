//! Sparse multivariate polynomials over `Z` with a recursive gcd.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors, so iteration
//! order is lexicographic with `x_1` most significant.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// `c * x^e`.
    pub fn monomial(nvars: usize, exponent: Exponent, c: BigInt) -> Self {
        debug_assert_eq!(exponent.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Leading term under graded-lexicographic order.
    pub fn grlex_leading(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().max_by(|(a, _), (b, _)| grlex_cmp(a, b))
    }

    /// Leading term under lexicographic order (the map's own order).
    fn lex_leading(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Gcd of all integer coefficients (non-negative).
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            let mut out = MPoly::zero(self.nvars);
            for (e, v) in &self.terms {
                let (q, r) = v.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                out.terms.insert(e.clone(), q);
            }
            return Some(out);
        }
        let (de, dc) = d.lex_leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.lex_leading().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponent = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            for (e, c) in &d.terms {
                rem.add_term(e.iter().zip(&qe).map(|(a, b)| a + b).collect(), -(c * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Coefficients with respect to `x_var`, indexed by the power of `x_var`.
    fn coefficients_in(&self, var: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[var];
            let mut e2 = e.clone();
            e2[var] = 0;
            out.entry(k)
                .or_insert_with(|| MPoly::zero(self.nvars))
                .add_term(e2, c.clone());
        }
        out
    }

    fn leading_coefficient_in(&self, var: usize) -> MPoly {
        let d = self.degree_in(var);
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == d {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    fn shift_var(&self, var: usize, k: u32) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[var] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Multiplies by `-1` if needed so the grlex-leading coefficient is positive.
    pub fn normalize_sign(self) -> MPoly {
        match self.grlex_leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Gcd by primitive polynomial remainder sequences only, without the
    /// evaluation heuristic. Slower, kept as a cross-check.
    pub fn gcd_prs(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        gcd_from(self, other, 0).normalize_sign()
    }

    /// Greatest common divisor, normalized to a positive grlex-leading coefficient.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return self.add(other).normalize_sign();
        }
        if self.num_terms() == 1 || other.num_terms() == 1 {
            return monomial_gcd(self, other);
        }
        if coprime_up_to_constants(self, other) {
            let c = self.integer_content().gcd(&other.integer_content());
            return MPoly::constant(self.nvars, c);
        }
        match heuristic_gcd(self, other) {
            Some(h) => h.normalize_sign(),
            None => gcd_from(self, other, 0).normalize_sign(),
        }
    }

    /// Substitutes `x^w -> x^(M w)` (column convention) and splits the result
    /// as `x^shift * p` with `p` a polynomial not divisible by any variable.
    pub fn substitute_monomial(&self, m: &IntMatrix) -> (MPoly, Vec<i64>) {
        let n = self.nvars;
        if self.is_zero() {
            return (self.clone(), vec![0; n]);
        }
        let images: Vec<(Vec<i64>, &BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let w: Vec<i64> = e.iter().map(|&x| x as i64).collect();
                (m.apply(&w), c)
            })
            .collect();
        let mut shift = images[0].0.clone();
        for (img, _) in &images[1..] {
            for (s, &x) in shift.iter_mut().zip(img) {
                *s = (*s).min(x);
            }
        }
        let mut out = MPoly::zero(n);
        for (img, c) in images {
            let e: Exponent = img
                .iter()
                .zip(&shift)
                .map(|(&x, &s)| {
                    u32::try_from(x - s).expect("exponent overflow in monomial substitution")
                })
                .collect();
            out.add_term(e, c.clone());
        }
        (out, shift)
    }

    /// Renders with variables `x1..xm`, terms in descending grlex order.
    pub fn render(&self) -> String {
        let mut s = String::new();
        fmt::write(&mut s, format_args!("{}", self)).unwrap();
        s
    }
}

/// Gcd when one side is a single term: the common monomial times the integer gcd.
fn monomial_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    let mut e: Option<Exponent> = None;
    for x in f.terms.keys().chain(g.terms.keys()) {
        e = Some(match e {
            None => x.clone(),
            Some(m) => m.iter().zip(x).map(|(a, b)| *a.min(b)).collect(),
        });
    }
    let c = f.integer_content().gcd(&g.integer_content());
    MPoly::monomial(f.nvars, e.unwrap(), c)
}

const MODULUS: u64 = 2_147_483_647;

fn mod_pow(mut b: u64, mut e: u32) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % MODULUS;
        }
        b = b * b % MODULUS;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64) -> u64 {
    mod_pow(a, (MODULUS - 2) as u32)
}

/// `f mod p` as a dense polynomial in `x_var`, other variables set to `point`.
fn specialize(f: &MPoly, var: usize, point: &[u64]) -> Vec<u64> {
    let p = BigInt::from(MODULUS);
    let mut out = vec![0u64; f.degree_in(var) as usize + 1];
    for (e, c) in &f.terms {
        let c = c.mod_floor(&p);
        let mut v = u64::try_from(&c).expect("reduced mod p");
        for (w, &k) in e.iter().enumerate() {
            if w != var {
                v = v * mod_pow(point[w], k) % MODULUS;
            }
        }
        let slot = &mut out[e[var] as usize];
        *slot = (*slot + v) % MODULUS;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Degree of the gcd of two dense polynomials over `F_p`.
fn mod_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        if a.len() < b.len() {
            core::mem::swap(&mut a, &mut b);
            continue;
        }
        let inv = mod_inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let f = a.last().unwrap() * inv % MODULUS;
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + MODULUS - f * bi % MODULUS) % MODULUS;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Certifies that every common factor of `f` and `g` is an integer.
///
/// For each variable, both sides are reduced mod `p` at a point where the
/// leading coefficient of `f` survives, so a common factor keeps its degree
/// there; a constant gcd of the images rules it out. `false` means undecided.
fn coprime_up_to_constants(f: &MPoly, g: &MPoly) -> bool {
    let point: Vec<u64> = (0..f.nvars).map(|w| 1_000_003 + 7919 * w as u64).collect();
    (0..f.nvars).all(|var| {
        if !f.uses_var(var) || !g.uses_var(var) {
            return true;
        }
        let fs = specialize(f, var, &point);
        if fs.len() != f.degree_in(var) as usize + 1 {
            return false;
        }
        mod_gcd_degree(fs, specialize(g, var, &point)) == 0
    })
}

fn max_norm(f: &MPoly) -> BigInt {
    f.terms.values().map(|c| c.abs()).max().unwrap_or_default()
}

/// Substitutes the integer `xi` for `x_var`.
fn evaluate(f: &MPoly, var: usize, xi: &BigInt) -> MPoly {
    let mut out = MPoly::zero(f.nvars);
    for (e, c) in &f.terms {
        let mut e2 = e.clone();
        e2[var] = 0;
        out.add_term(e2, c * xi.pow(e[var]));
    }
    out
}

/// Inverse of [`evaluate`] for polynomials with coefficients smaller than `xi / 2`:
/// reads the `xi`-adic digits (symmetric residues) as coefficients of `x_var`.
fn interpolate(h: &MPoly, var: usize, xi: &BigInt) -> MPoly {
    let half = xi / 2;
    let mut out = MPoly::zero(h.nvars);
    let mut rest = h.clone();
    let mut k = 0u32;
    while !rest.is_zero() {
        let mut next = MPoly::zero(h.nvars);
        for (e, c) in &rest.terms {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            let mut e2 = e.clone();
            e2[var] = k;
            next.add_term(e.clone(), (c - &r) / xi);
            out.add_term(e2, r);
        }
        rest = next;
        k += 1;
    }
    out
}

fn primitive_integer(f: MPoly) -> MPoly {
    let c = f.integer_content();
    if c.is_one() || c.is_zero() {
        f
    } else {
        f.div_exact(&MPoly::constant(f.nvars, c)).unwrap()
    }
}

/// Heuristic gcd (evaluation at a large integer and `xi`-adic reconstruction),
/// verified by trial division. `None` when it gives up.
fn heuristic_gcd(f: &MPoly, g: &MPoly) -> Option<MPoly> {
    if f.is_zero() || g.is_zero() {
        return Some(f.add(g).normalize_sign());
    }
    let n = f.nvars;
    let cf = f.integer_content();
    let cg = g.integer_content();
    let content = MPoly::constant(n, cf.gcd(&cg));
    let f = f.div_exact(&MPoly::constant(n, cf)).unwrap();
    let g = g.div_exact(&MPoly::constant(n, cg)).unwrap();
    let Some(var) = first_used_var(&f, &g, 0) else {
        return Some(content);
    };
    if !f.uses_var(var) || !g.uses_var(var) {
        // One side is free of x_var: the gcd divides every coefficient of the other.
        let (free, other) = if f.uses_var(var) { (&g, &f) } else { (&f, &g) };
        let mut acc = free.clone();
        for c in other.coefficients_in(var).into_values() {
            if acc.is_one() {
                break;
            }
            acc = heuristic_gcd(&acc, &c)?.normalize_sign();
        }
        return Some(acc.mul(&content));
    }
    let fnorm = max_norm(&f);
    let gnorm = max_norm(&g);
    let b: BigInt = BigInt::from(2) * fnorm.clone().min(gnorm.clone()) + 29;
    let lc_bound = |p: &MPoly, norm: &BigInt| -> BigInt {
        let lc = p.leading_coefficient_in(var);
        let lc = lc
            .lex_leading()
            .map(|(_, c)| c.abs())
            .unwrap_or_else(BigInt::one);
        norm / lc
    };
    let mut xi = b
        .clone()
        .min(BigInt::from(99) * b.sqrt())
        .max(BigInt::from(2) * lc_bound(&f, &fnorm).min(lc_bound(&g, &gnorm)) + 2);
    for _ in 0..6 {
        let ff = evaluate(&f, var, &xi);
        let gg = evaluate(&g, var, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            let h = heuristic_gcd(&ff, &gg)?;
            let cand = primitive_integer(interpolate(&h, var, &xi));
            if !cand.is_zero() && f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                return Some(cand.mul(&content));
            }
            for (pp, other, image) in [(&f, &g, &ff), (&g, &f, &gg)] {
                let Some(cof) = image.div_exact(&h) else {
                    continue;
                };
                let cof = interpolate(&cof, var, &xi);
                if cof.is_zero() {
                    continue;
                }
                if let Some(cand) = pp.div_exact(&cof) {
                    let cand = primitive_integer(cand);
                    if !cand.is_zero() && other.div_exact(&cand).is_some() {
                        return Some(cand.mul(&content));
                    }
                }
            }
        }
        xi = BigInt::from(73794) * &xi * xi.sqrt().sqrt() / 27011;
    }
    None
}

fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn first_used_var(f: &MPoly, g: &MPoly, from: usize) -> Option<usize> {
    (from..f.nvars).find(|&v| f.uses_var(v) || g.uses_var(v))
}

/// Content of `f` viewed as a polynomial in `x_var` (coefficients involve only later variables).
fn content_in(f: &MPoly, var: usize) -> MPoly {
    let mut acc = MPoly::zero(f.nvars);
    for c in f.coefficients_in(var).into_values() {
        acc = gcd_from(&acc, &c, var + 1);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_in(f: &MPoly, var: usize) -> MPoly {
    let c = content_in(f, var);
    f.div_exact(&c).expect("content divides")
}

/// Sparse pseudo-remainder of `a` by `b` in `x_var`.
fn pseudo_remainder(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let db = b.degree_in(var);
    let lb = b.leading_coefficient_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let lr = r.leading_coefficient_in(var);
        let k = r.degree_in(var) - db;
        r = r.mul(&lb).sub(&b.mul(&lr).shift_var(var, k));
    }
    r
}

/// Gcd of polynomials that do not involve variables before `from`. Result
/// sign is unnormalized except at the integer base case.
fn gcd_from(f: &MPoly, g: &MPoly, from: usize) -> MPoly {
    if f.is_zero() {
        return g.clone().normalize_sign();
    }
    if g.is_zero() {
        return f.clone().normalize_sign();
    }
    let var = match first_used_var(f, g, from) {
        Some(v) => v,
        None => {
            let a = f.as_constant().unwrap();
            let b = g.as_constant().unwrap();
            return MPoly::constant(f.nvars, a.gcd(&b));
        }
    };
    let cf = content_in(f, var);
    let cg = content_in(g, var);
    let c = gcd_from(&cf, &cg, var + 1);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree_in(var) < b.degree_in(var) {
        core::mem::swap(&mut a, &mut b);
    }
    let prim = loop {
        if b.is_zero() {
            break a;
        }
        if b.degree_in(var) == 0 {
            break MPoly::one(f.nvars);
        }
        let r = pseudo_remainder(&a, &b, var);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            primitive_part_in(&r, var)
        };
    };
    let prim = if prim.degree_in(var) == 0 {
        MPoly::one(f.nvars)
    } else {
        primitive_part_in(&prim, var)
    };
    prim.mul(&c).normalize_sign()
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Exponent, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let is_const = e.iter().all(|&x| x == 0);
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut first = true;
            if is_const || !mag.is_one() {
                write!(f, "{}", mag)?;
                first = false;
            }
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", v + 1)?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::variable(2, i)
    }

    fn c(v: i64) -> MPoly {
        MPoly::constant(2, BigInt::from(v))
    }

    #[test]
    fn gcd_of_products() {
        // (x1 + x2)(x1 - 2) and (x1 + x2)(x2 + 3)
        let common = x(0).add(&x(1));
        let f = common.mul(&x(0).sub(&c(2)));
        let g = common.mul(&x(1).add(&c(3)));
        assert_eq!(f.gcd(&g), common);
    }

    #[test]
    fn gcd_includes_integer_content() {
        let f = x(0).scale(&BigInt::from(6));
        let g = x(0).mul(&x(1)).scale(&BigInt::from(-4));
        assert_eq!(f.gcd(&g), x(0).scale(&BigInt::from(2)));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let f = x(0).mul(&x(0)).add(&c(1));
        let g = x(1).sub(&c(1));
        assert!(f.gcd(&g).is_one());
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = x(0).add(&x(1)).add(&c(1));
        let b = x(0).mul(&x(1)).sub(&c(3));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.add(&c(1)).div_exact(&a), None);
    }

    #[test]
    fn substitution_splits_monomial() {
        // x2 -> x1^{-1} x2
        let m = IntMatrix::from_rows(&[vec![1, -1], vec![0, 1]]);
        let (p, shift) = x(1).add(&c(1)).substitute_monomial(&m);
        assert_eq!(shift, vec![-1, 0]);
        assert_eq!(p, x(1).add(&x(0)));
    }

    #[test]
    fn display_is_grlex_descending() {
        let p = x(0)
            .mul(&x(0))
            .sub(&x(1).scale(&BigInt::from(3)))
            .add(&c(1));
        assert_eq!(p.render(), "x1^2 - 3*x2 + 1");
    }
}
