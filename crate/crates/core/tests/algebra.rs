use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twalex_core::scalars::{FieldSpec, IntMatrix, MPoly};
use twalex_core::skewpoly::{Degree, SkewPoly, SkewRing};
use twalex_core::testkit::{
    random_gl_z, random_nonzero_poly, random_poly, random_scalar, sample_specs,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn skew_ring() -> SkewRing {
    SkewRing::new(FieldSpec::ratfun(2, IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]])).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(125))]

    #[test]
    fn automorphism_is_a_field_automorphism(seed in any::<u64>(), which in 0usize..4, k in -3i64..=3) {
        let mut r = rng(seed);
        let spec = sample_specs()[which].clone();
        let a = random_scalar(&mut r, &spec);
        let b = random_scalar(&mut r, &spec);
        let g = |x: &twalex_core::scalars::Scalar| spec.apply_automorphism(k, x).unwrap();
        prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
        prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
        prop_assert_eq!(g(&spec.one()), spec.one());
        // γ^j ∘ γ^k = γ^{j+k}, and γ^{-k} undoes γ^k.
        let j = r.gen_range(-2..=2);
        prop_assert_eq!(spec.apply_automorphism(j, &g(&a)).unwrap(), spec.apply_automorphism(j + k, &a).unwrap());
        prop_assert_eq!(spec.apply_automorphism(-k, &g(&a)).unwrap(), a);
    }

    #[test]
    fn random_gl_z_automorphisms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_gl_z(&mut r, 2, 6);
        let spec = FieldSpec::ratfun(2, a).unwrap();
        let x = random_scalar(&mut r, &spec);
        let y = random_scalar(&mut r, &spec);
        let g = |v: &twalex_core::scalars::Scalar| spec.apply_automorphism(1, v).unwrap();
        prop_assert_eq!(g(&(&x * &y)), &g(&x) * &g(&y));
        prop_assert_eq!(spec.apply_automorphism(-1, &g(&x)).unwrap(), x);
    }

    #[test]
    fn field_inverses(seed in any::<u64>(), which in 0usize..4) {
        let mut r = rng(seed);
        let spec = sample_specs()[which].clone();
        let a = random_scalar(&mut r, &spec);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn degree_is_additive(seed in any::<u64>(), which in 0usize..4) {
        let mut r = rng(seed);
        let ring = SkewRing::new(sample_specs()[which].clone());
        let f = random_poly(&mut r, &ring, 3, 3);
        let g = random_poly(&mut r, &ring, 3, 3);
        let fg = ring.mul(&f, &g);
        match (f.degree(), g.degree()) {
            (Degree::Finite(a), Degree::Finite(b)) => prop_assert_eq!(fg.degree(), Degree::Finite(a + b)),
            _ => prop_assert!(fg.is_zero()),
        }
    }

    #[test]
    fn twisting_rule(seed in any::<u64>(), i in -3i64..=3) {
        let mut r = rng(seed);
        let ring = skew_ring();
        let a = random_scalar(&mut r, ring.spec());
        let lhs = ring.product([&ring.t(i), &ring.constant(a.clone()), &ring.t(-i)]);
        prop_assert_eq!(lhs, ring.constant(ring.gamma(i, &a)));
    }

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = skew_ring();
        let f = random_poly(&mut r, &ring, 2, 2);
        let g = random_poly(&mut r, &ring, 2, 2);
        let h = random_poly(&mut r, &ring, 2, 2);
        prop_assert_eq!(ring.mul(&ring.mul(&f, &g), &h), ring.mul(&f, &ring.mul(&g, &h)));
        prop_assert_eq!(ring.mul(&f, &g.add(&h)), ring.mul(&f, &g).add(&ring.mul(&f, &h)));
        prop_assert_eq!(ring.mul(&f.add(&g), &h), ring.mul(&f, &h).add(&ring.mul(&g, &h)));
        prop_assert_eq!(ring.mul(&ring.one(), &f), f.clone());
    }

    #[test]
    fn division_reconstructs(seed in any::<u64>(), skew in any::<bool>()) {
        let mut r = rng(seed);
        let ring = if skew { skew_ring() } else { SkewRing::new(FieldSpec::rationals()) };
        let f = random_poly(&mut r, &ring, 4, 3);
        let g = random_nonzero_poly(&mut r, &ring, 3, 2);
        let below = |rem: &SkewPoly| match rem.degree() {
            Degree::Infinite => true,
            Degree::Finite(d) => d < g.degree().finite().unwrap(),
        };
        let (q, rem) = ring.right_divide(&f, &g).unwrap();
        prop_assert_eq!(ring.mul(&g, &q).add(&rem), f.clone());
        prop_assert!(below(&rem));
        let (q, rem) = ring.left_divide(&f, &g).unwrap();
        prop_assert_eq!(ring.mul(&q, &g).add(&rem), f.clone());
        prop_assert!(below(&rem));
    }

    #[test]
    fn common_multiples(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = skew_ring();
        let a = random_nonzero_poly(&mut r, &ring, 2, 1);
        let b = random_nonzero_poly(&mut r, &ring, 2, 1);
        let (u, v) = ring.common_left_multiple(&a, &b).unwrap();
        prop_assert!(!u.is_zero() && !v.is_zero());
        prop_assert_eq!(ring.mul(&u, &a), ring.mul(&v, &b));
        let (u, v) = ring.common_right_multiple(&a, &b).unwrap();
        prop_assert!(!u.is_zero() && !v.is_zero());
        prop_assert_eq!(ring.mul(&a, &u), ring.mul(&b, &v));
    }
}

fn random_mpoly(r: &mut ChaCha8Rng, nvars: usize, terms: usize, deg: u32) -> MPoly {
    MPoly::from_terms(
        nvars,
        (0..terms).map(|_| {
            let e: Vec<u32> = (0..nvars).map(|_| r.gen_range(0..=deg)).collect();
            (e, BigInt::from(r.gen_range(-5i64..=5)))
        }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn heuristic_gcd_matches_prs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = random_mpoly(&mut r, 2, 3, 2);
        let f = random_mpoly(&mut r, 2, 3, 2).mul(&h);
        let g = random_mpoly(&mut r, 2, 3, 2).mul(&h);
        let fast = f.gcd(&g);
        prop_assert_eq!(&fast, &f.gcd_prs(&g));
        if !fast.is_zero() {
            prop_assert!(f.div_exact(&fast).is_some());
            prop_assert!(g.div_exact(&fast).is_some());
            prop_assert!(fast.div_exact(&h).is_some() || h.is_zero());
        }
    }
}
