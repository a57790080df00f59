//! Random generators for property suites: scalars, skew polynomials, matrices,
//! acyclic complexes and presentations. Sizes are kept small so that exact
//! arithmetic over `Q(x_1, …, x_m)` stays fast.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complexes::FreeChainComplex;
use crate::presentations::{CohomologyClass, GroupPresentation, Letter, PresentationKind, Word};
use crate::scalars::{FieldKind, FieldSpec, IntMatrix, Scalar};
use crate::skewlinalg::{ConstMatrix, SkewMatrix};
use crate::skewpoly::{SkewPoly, SkewRing};

fn small_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn random_numerator<R: Rng + ?Sized>(rng: &mut R, spec: &FieldSpec, vars: usize) -> Scalar {
    let mut acc = spec.zero();
    for _ in 0..rng.gen_range(1..=2) {
        let exponent: Vec<i64> = (0..vars).map(|_| rng.gen_range(-1..=1)).collect();
        let c = spec.from_int(small_int(rng, 3));
        acc = &acc + &(&c * &spec.monomial(&exponent).expect("monomial in spec"));
    }
    acc
}

/// A random element of the field, possibly zero.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, spec: &FieldSpec) -> Scalar {
    match spec.kind() {
        FieldKind::Rationals => {
            let num = small_int(rng, 9);
            let den = rng.gen_range(1..=5);
            &spec.from_int(num) / &spec.from_int(den)
        }
        FieldKind::PrimeField(p) => spec.from_int(rng.gen_range(0..*p as i64)),
        // Laurent polynomials of one or two terms; general quotients appear
        // anyway once these are inverted.
        FieldKind::RatFun { vars, .. } => random_numerator(rng, spec, *vars),
    }
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, spec: &FieldSpec) -> Scalar {
    loop {
        let a = random_scalar(rng, spec);
        if !a.is_zero() {
            return a;
        }
    }
}

/// A Laurent polynomial with up to `max_terms` terms and exponents in `[-span, span]`.
pub fn random_poly<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &SkewRing,
    max_terms: usize,
    span: i64,
) -> SkewPoly {
    let n = rng.gen_range(0..=max_terms);
    SkewPoly::from_terms(
        (0..n).map(|_| (rng.gen_range(-span..=span), random_scalar(rng, ring.spec()))),
    )
}

/// Like [`random_poly`], but every coefficient is a single term `c·x^v`.
/// Euclidean remainder sequences over such entries stay small.
pub fn random_sparse_poly<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &SkewRing,
    max_terms: usize,
    span: i64,
) -> SkewPoly {
    let spec = ring.spec();
    let n = rng.gen_range(0..=max_terms);
    SkewPoly::from_terms((0..n).map(|_| {
        let e = rng.gen_range(-span..=span);
        let c = match spec.kind() {
            FieldKind::RatFun { vars, .. } => {
                let v: Vec<i64> = (0..*vars).map(|_| rng.gen_range(-1..=1)).collect();
                &spec.from_int(small_int(rng, 3)) * &spec.monomial(&v).expect("monomial in spec")
            }
            _ => random_scalar(rng, spec),
        };
        (e, c)
    }))
}

pub fn random_nonzero_sparse_poly<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &SkewRing,
    max_terms: usize,
    span: i64,
) -> SkewPoly {
    loop {
        let f = random_sparse_poly(rng, ring, max_terms.max(1), span);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_nonzero_poly<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &SkewRing,
    max_terms: usize,
    span: i64,
) -> SkewPoly {
    loop {
        let f = random_poly(rng, ring, max_terms.max(1), span);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random `d × d` constant matrix, possibly singular.
pub fn random_const_matrix<R: Rng + ?Sized>(rng: &mut R, ring: &SkewRing, d: usize) -> ConstMatrix {
    let rows = (0..d)
        .map(|_| (0..d).map(|_| random_scalar(rng, ring.spec())).collect())
        .collect();
    ConstMatrix::from_rows(rows).expect("square")
}

/// A random invertible constant matrix (rejection sampling).
pub fn random_invertible_const<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &SkewRing,
    d: usize,
) -> ConstMatrix {
    loop {
        let m = random_const_matrix(rng, ring, d);
        if m.inverse(ring).is_some() {
            return m;
        }
    }
}

/// A random unimodular matrix over `K_γ[t^±1]` together with its inverse,
/// built from elementary and monomial-diagonal factors.
pub fn random_unimodular<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &SkewRing,
    n: usize,
    steps: usize,
) -> (SkewMatrix, SkewMatrix) {
    let mut u = SkewMatrix::identity(ring, n);
    let mut inv = SkewMatrix::identity(ring, n);
    for _ in 0..steps {
        if n >= 2 && rng.gen_bool(0.8) {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let q = random_sparse_poly(rng, ring, 1, 1);
            let mut e = SkewMatrix::identity(ring, n);
            e.set(a, b, q.clone());
            let mut e_inv = SkewMatrix::identity(ring, n);
            e_inv.set(a, b, q.neg());
            u = u.mul(ring, &e).expect("square");
            inv = e_inv.mul(ring, &inv).expect("square");
        } else if n >= 1 {
            let a = rng.gen_range(0..n);
            let k = rng.gen_range(-1..=1);
            let c = random_nonzero_scalar(rng, ring.spec());
            let unit = SkewPoly::term(c.clone(), k);
            let unit_inv = SkewPoly::term(ring.gamma(-k, &c.inv()), -k);
            let mut e = SkewMatrix::identity(ring, n);
            e.set(a, a, unit);
            let mut e_inv = SkewMatrix::identity(ring, n);
            e_inv.set(a, a, unit_inv);
            u = u.mul(ring, &e).expect("square");
            inv = e_inv.mul(ring, &inv).expect("square");
        }
    }
    (u, inv)
}

/// A random acyclic complex of the given length: a direct sum of elementary
/// pieces `0 → R --f--> R → 0` with `f ≠ 0`, then a unimodular change of basis
/// in every chain group.
///
/// Also returns `deg Δ_i` for each `i`, which the construction fixes: `H_i` is
/// the sum of `R/(f)` over the pieces landing in `C_i`.
pub fn random_acyclic_complex<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &SkewRing,
    length: usize,
) -> (FreeChainComplex, Vec<i64>) {
    assert!(length >= 1);
    // pieces[i] counts elementary pieces C_{i+1} → C_i.
    let pieces: Vec<usize> = (0..length).map(|_| rng.gen_range(1..=2)).collect();
    // Basis of C_i: first the vectors mapping down, then those hit from above.
    let down = |i: usize| if i >= 1 { pieces[i - 1] } else { 0 };
    let up = |i: usize| if i < length { pieces[i] } else { 0 };
    let ranks: Vec<usize> = (0..=length).map(|i| down(i) + up(i)).collect();
    let mut degrees = vec![0; length + 1];
    let mut boundaries = Vec::with_capacity(length);
    for i in 1..=length {
        let mut a = SkewMatrix::zeros(ranks[i - 1], ranks[i]);
        for k in 0..pieces[i - 1] {
            let f = random_nonzero_sparse_poly(rng, ring, 3, 1);
            degrees[i - 1] += f.degree().finite().expect("nonzero");
            a.set(down(i - 1) + k, k, f);
        }
        boundaries.push(a);
    }
    let changes: Vec<(SkewMatrix, SkewMatrix)> = ranks
        .iter()
        .map(|&r| random_unimodular(rng, ring, r, r + 1))
        .collect();
    let conjugated = boundaries
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let left = &changes[idx].0;
            let right_inv = &changes[idx + 1].1;
            left.mul(ring, a)
                .and_then(|m| m.mul(ring, right_inv))
                .expect("shapes")
        })
        .collect();
    (
        FreeChainComplex::new(ring, ranks, conjugated).expect("random complex is a complex"),
        degrees,
    )
}

/// A random freely reduced word of at most `max_len` letters.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, generators: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| Letter {
        generator: rng.gen_range(0..generators),
        inverse: rng.gen_bool(0.5),
    }))
}

/// Appends letters so that every generator has exponent sum zero. Any class
/// and any abelian representation then kill the word.
pub fn balance_word<R: Rng + ?Sized>(rng: &mut R, w: &Word, generators: usize) -> Word {
    let sums = w.exponent_sums(generators);
    let mut tail = Vec::new();
    for (g, s) in sums.iter().enumerate() {
        for _ in 0..s.unsigned_abs() {
            tail.push(Letter {
                generator: g,
                inverse: *s > 0,
            });
        }
    }
    tail.shuffle(rng);
    w.mul(&Word::from_letters(tail))
}

/// A random deficiency-one presentation with `n` generators whose relators lie in
/// the commutator subgroup, with a random nontrivial class.
pub fn random_presentation<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_len: usize,
) -> (GroupPresentation, CohomologyClass) {
    let names: Vec<String> = (0..n)
        .map(|i| String::from((b'a' + i as u8) as char))
        .collect();
    let mut relators = Vec::new();
    for _ in 1..n {
        let w = random_word(rng, n, max_len);
        relators.push(balance_word(rng, &w, n));
    }
    let p =
        GroupPresentation::new(names, relators, PresentationKind::DeficiencyOne).expect("shape");
    let mut values: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    if values.iter().all(|&v| v == 0) {
        values[0] = 1;
    }
    let phi = CohomologyClass::new(&p, values).expect("relators are balanced");
    (p, phi)
}

/// A random matrix in `GL(m, Z)` built from elementary operations.
pub fn random_gl_z<R: Rng + ?Sized>(rng: &mut R, m: usize, steps: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..steps {
        if m < 2 {
            break;
        }
        let a = rng.gen_range(0..m);
        let b = (a + rng.gen_range(1..m)) % m;
        let c = small_int(rng, 1);
        let source = rows[b].clone();
        for (x, y) in rows[a].iter_mut().zip(&source) {
            *x += c * y;
        }
    }
    if m > 0 && rng.gen_bool(0.3) {
        rows[0].iter_mut().for_each(|x| *x = -*x);
    }
    IntMatrix::from_rows(&rows)
}

/// One of the specs exercised by the property suites.
pub fn sample_specs() -> Vec<FieldSpec> {
    vec![
        FieldSpec::rationals(),
        FieldSpec::prime_field(7).expect("prime"),
        FieldSpec::ratfun(2, IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]])).expect("unimodular"),
        FieldSpec::ratfun(2, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).expect("unimodular"),
    ]
}
