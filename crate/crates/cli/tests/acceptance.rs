//! Acceptance criteria, one line each. Exact arithmetic throughout; any
//! mismatch is a failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twalex::commands::{alpha_rep, cmd_bound, cmd_compare, pattern_json};
use twalex::corpus;
use twalex::schema::{InputDocument, Problem};
use twalex::selftest::presentation_moves;
use twalex_core::complexes::check_theorem1;
use twalex_core::invariants::build_complex;
use twalex_core::presentations::{build_two_complex, PhiCompatibleRep, PhiMatrix};
use twalex_core::scalars::{FieldSpec, IntMatrix, Scalar};
use twalex_core::skewlinalg::{dieudonne_det, module_order, ConstMatrix, SkewMatrix};
use twalex_core::skewpoly::{Degree, SkewRing};
use twalex_core::testkit::{
    random_acyclic_complex, random_invertible_const, random_nonzero_scalar, random_poly,
    random_presentation, random_scalar, random_sparse_poly, sample_specs,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn problem(name: &str) -> Problem {
    Problem::from_document(&InputDocument::from_json(corpus::get(name).unwrap()).unwrap()).unwrap()
}

const KNOTS: [&str; 5] = ["trefoil", "figure-eight", "t2_5", "5_2", "unknot"];

/// Integer Laurent polynomials in `t`, exponent to coefficient.
type Laurent = BTreeMap<i64, i64>;

/// `∂r/∂x` pushed to `Z[t^±1]` with every generator sent to `t`.
fn abelian_fox(relator: &str, x: char) -> Laurent {
    let mut out = Laurent::new();
    let mut e = 0i64;
    for c in relator.chars() {
        let inverse = c.is_ascii_uppercase();
        let hit = c.to_ascii_lowercase() == x;
        if inverse {
            e -= 1;
            if hit {
                *out.entry(e).or_default() -= 1;
            }
        } else {
            if hit {
                *out.entry(e).or_default() += 1;
            }
            e += 1;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn span(f: &Laurent) -> i64 {
    match (f.keys().next(), f.keys().next_back()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => panic!("zero Alexander polynomial"),
    }
}

/// Classical `(deg τ, genus)` from the oracle: `Δ = ∂r/∂a`, `τ = Δ/(t − 1)`.
fn oracle(relators: &[String]) -> (i64, i64) {
    match relators {
        [] => (-1, 0),
        [r] => {
            let delta = abelian_fox(r, 'a');
            (span(&delta) - 1, span(&delta) / 2)
        }
        _ => unreachable!("two-bridge corpus"),
    }
}

fn criterion1() -> Outcome {
    let classical = [
        ("trefoil", 1, "1"),
        ("figure-eight", 1, "1"),
        ("t2_5", 3, "2"),
        ("5_2", 1, "1"),
        ("unknot", -1, "0"),
    ];
    for (name, degree, genus) in classical {
        let doc = InputDocument::from_json(corpus::get(name).unwrap()).unwrap();
        let (oracle_degree, oracle_genus) = oracle(&doc.presentation.as_ref().unwrap().relators);
        ensure(
            oracle_degree == degree && oracle_genus.to_string() == genus,
            || format!("{name}: oracle gives ({oracle_degree}, {oracle_genus})"),
        )?;
        let start = Instant::now();
        let p = Problem::from_document(&doc).unwrap();
        let r = cmd_bound(&p).map_err(|e| e.to_string())?.report;
        let elapsed = start.elapsed();
        let reported = r["torsion_degree"]
            .as_str()
            .and_then(|s| s.parse::<i64>().ok());
        ensure(reported == Some(degree), || format!("{name}: {r}"))?;
        ensure(r["genus_bound"] == genus, || format!("{name}: {r}"))?;
        if name == "unknot" {
            ensure(r["fibered_norm"] == "0", || format!("{name}: {r}"))?;
        }
        ensure(elapsed < Duration::from_secs(1), || {
            format!("{name} took {elapsed:?}")
        })?;
    }
    Ok(())
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    for name in KNOTS {
        let p = problem(name);
        let g = p.group.as_ref().unwrap();
        let rep = alpha_rep(&p, g).map_err(|e| e.to_string())?;
        let c = build_complex(&g.presentation, &rep, g.mode()).map_err(|e| e.to_string())?;
        let report = check_theorem1(rep.ring(), &c).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            report.degrees_agree && report.values_agree == Some(true),
            || format!("{name}: {report:?}"),
        )?;
    }
    let mut r = ChaCha8Rng::seed_from_u64(2);
    for case in 0..24 {
        let ring = SkewRing::new(sample_specs()[2 + case % 2].clone());
        let (c, degrees) = random_acyclic_complex(&mut r, &ring, 1 + case % 3);
        let report = check_theorem1(&ring, &c).map_err(|e| format!("complex {case}: {e}"))?;
        let alternating: i64 = degrees
            .iter()
            .enumerate()
            .map(|(i, d)| if i % 2 == 1 { *d } else { -*d })
            .sum();
        ensure(report.torsion.degree == Some(alternating), || {
            format!("complex {case}: {report:?}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })
}

fn criterion3() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for spec in sample_specs() {
        let ring = SkewRing::new(spec.clone());
        for case in 0..100 {
            let d = r.gen_range(1..=3);
            let shift = r.gen_range(1..=3);
            let a = random_invertible_const(&mut r, &ring, d).to_skew(0);
            let b = random_invertible_const(&mut r, &ring, d).to_skew(shift);
            let det = dieudonne_det(&ring, &a.add(&b).unwrap()).map_err(|e| e.to_string())?;
            ensure(
                det.as_ref().map(|u| u.degree()) == Some(d as i64 * shift),
                || format!("{spec}, case {case}: d = {d}, r = {shift}"),
            )?;
        }
    }
    Ok(())
}

fn criterion4() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let skew = SkewRing::new(
        FieldSpec::ratfun(2, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).unwrap(),
    );
    let q = SkewRing::new(FieldSpec::rationals());
    for case in 0..50 {
        let commutative = case % 2 == 0;
        let ring = if commutative { &q } else { &skew };
        let rows = if commutative {
            r.gen_range(1..=3)
        } else {
            r.gen_range(1..=2)
        };
        let cols = rows + r.gen_range(0..=1);
        let m = SkewMatrix::from_fn(rows, cols, |_, _| random_sparse_poly(&mut r, ring, 2, 1));
        let base = module_order(ring, &m);
        for (k, mv) in presentation_moves(&mut r, ring, &m).into_iter().enumerate() {
            let o = module_order(ring, &mv);
            let same = if commutative {
                ring.normalize(&o.value) == ring.normalize(&base.value)
            } else {
                o.degree == base.degree
            };
            ensure(same, || format!("matrix {case}, move {}", k + 1))?;
        }
    }
    Ok(())
}

fn criterion5() -> Outcome {
    for name in ["trefoil-twisted", "figure-eight-twisted"] {
        let p = problem(name);
        ensure(
            p.group
                .as_ref()
                .unwrap()
                .alpha
                .as_ref()
                .map(|a| a.dimension())
                == Some(2),
            || format!("{name} has no 2-dimensional rep"),
        )?;
        let out = cmd_compare(&p).map_err(|e| e.to_string())?;
        let r = &out.report;
        ensure(out.failure.is_none(), || format!("{name}: {r}"))?;
        ensure(r["satisfied"] == true && r["correction"] == "-1", || {
            format!("{name}: {r}")
        })?;
        ensure(
            r["delta1"]["value"] == "1" && r["delta2"]["value"] == "2",
            || format!("{name}: {r}"),
        )?;
        ensure(r["torsion"]["satisfied"] == true, || format!("{name}: {r}"))?;
        let d1: i64 = r["torsion"]["degree1"].as_str().unwrap().parse().unwrap();
        let d2: i64 = r["torsion"]["degree2"].as_str().unwrap().parse().unwrap();
        ensure(d1 >= d2, || format!("{name}: {d1} < {d2}"))?;
    }
    Ok(())
}

fn boundary_squares_to_zero(ring: &SkewRing, c: &twalex_core::complexes::FreeChainComplex) -> bool {
    (1..c.length()).all(|i| {
        c.boundary(i)
            .mul(ring, c.boundary(i + 1))
            .unwrap()
            .is_zero()
    })
}

fn criterion6() -> Outcome {
    for (name, _) in corpus::BUNDLED {
        let p = problem(name);
        let g = p.group.as_ref().unwrap();
        let rep = alpha_rep(&p, g).map_err(|e| e.to_string())?;
        let c = build_complex(&g.presentation, &rep, g.mode()).map_err(|e| e.to_string())?;
        ensure(boundary_squares_to_zero(rep.ring(), &c), || {
            format!("{name}: A_1 A_2 != 0")
        })?;
    }
    let mut r = ChaCha8Rng::seed_from_u64(6);
    for case in 0..100 {
        let spec = sample_specs()[case % 4].clone();
        let n = r.gen_range(2..=3);
        let (p, phi) = random_presentation(&mut r, n, 6);
        let images = phi
            .values()
            .iter()
            .map(|&n| {
                let c = spec.from_int(r.gen_range(1..=3));
                PhiMatrix {
                    constant: ConstMatrix::from_rows(vec![vec![c]]).unwrap(),
                    shift: n,
                }
            })
            .collect();
        let rep = PhiCompatibleRep::new(SkewRing::new(spec), images).map_err(|e| e.to_string())?;
        let c = build_two_complex(&p, &rep).map_err(|e| format!("{p}: {e}"))?;
        ensure(boundary_squares_to_zero(rep.ring(), &c), || {
            format!("{p}: A_1 A_2 != 0")
        })?;
    }
    for case in 0..500 {
        let ring = SkewRing::new(sample_specs()[case % 4].clone());
        let f = random_poly(&mut r, &ring, 3, 2);
        let g = random_poly(&mut r, &ring, 3, 2);
        let want = match (f.degree(), g.degree()) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::Infinite,
        };
        ensure(ring.mul(&f, &g).degree() == want, || {
            format!("deg({f} * {g})")
        })?;
    }
    for case in 0..500 {
        let ring = SkewRing::new(sample_specs()[case % 4].clone());
        let spec = ring.spec();
        let k = r.gen_range(-2..=2);
        let a = random_scalar(&mut r, spec);
        let b = random_nonzero_scalar(&mut r, spec);
        let g = |x: &Scalar| -> Scalar { ring.gamma(k, x) };
        let laws = g(&(&a + &b)) == &g(&a) + &g(&b)
            && g(&(&a * &b)) == &g(&a) * &g(&b)
            && g(&b.inv()) == g(&b).inv()
            && ring.gamma(-k, &g(&a)) == a
            && g(&spec.one()) == spec.one();
        ensure(laws, || format!("gamma^{k} on a = {a}, b = {b}"))?;
    }
    Ok(())
}

fn criterion7() -> Outcome {
    for name in KNOTS {
        let p = problem(name);
        let pattern = pattern_json(&p)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{name}: no pattern"))?;
        ensure(pattern["cyclic"] == true, || format!("{name}: {pattern}"))?;
        ensure(
            pattern["delta0_degree"] == "1" && pattern["delta2_degree"] == "0",
            || format!("{name}: {pattern}"),
        )?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("knot corpus bounds", criterion1),
        (
            "torsion degree equals alternating Alexander degree",
            criterion2,
        ),
        ("deg det(A + B t^r) = d r", criterion3),
        (
            "module order invariant under presentation moves",
            criterion4,
        ),
        ("monotonicity for metabelian pairs", criterion5),
        ("structural invariants", criterion6),
        ("degree pattern of one-dimensional corpus runs", criterion7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
