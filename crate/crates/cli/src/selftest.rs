//! The bundled corpus and a seeded property suite, run in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use twalex_core::complexes::check_theorem1;
use twalex_core::invariants::build_complex;
use twalex_core::presentations::{build_two_complex, PhiCompatibleRep, PhiMatrix};
use twalex_core::skewlinalg::{dieudonne_det, module_order, ConstMatrix, SkewMatrix};
use twalex_core::skewpoly::{Degree, SkewRing};
use twalex_core::testkit::{
    random_acyclic_complex, random_invertible_const, random_nonzero_scalar, random_poly,
    random_presentation, random_scalar, random_sparse_poly, sample_specs,
};

use crate::commands::{
    alpha_rep, cmd_alex, cmd_bound, cmd_compare, cmd_delta, cmd_torsion, pattern_json,
};
use crate::error::CliError;
use crate::schema::{InputDocument, Problem};

#[derive(Serialize, Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, result: Result<(), String>) -> Self {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

fn field<'a>(report: &'a Value, key: &str) -> Option<&'a Value> {
    report.get(key)
}

fn expect_eq(what: &str, got: Option<&Value>, want: &Value) -> Result<(), String> {
    if got == Some(want) {
        Ok(())
    } else {
        Err(format!(
            "{what}: expected {want}, got {}",
            got.map_or("nothing".into(), Value::to_string)
        ))
    }
}

fn run(r: Result<crate::commands::Outcome, CliError>) -> Result<Value, String> {
    match r {
        Ok(o) => match o.failure {
            None => Ok(o.report),
            Some(e) => Err(e.to_string()),
        },
        Err(e) => Err(e.to_string()),
    }
}

/// Every check that applies to one corpus document.
pub fn check_document(name: &str, text: &str) -> Vec<Check> {
    let mut out = Vec::new();
    let doc = match InputDocument::from_json(text) {
        Ok(d) => d,
        Err(e) => return vec![Check::new(format!("{name}: parse"), Err(e.to_string()))],
    };
    let round = InputDocument::from_json(&doc.to_json(false)).map_err(|e| e.to_string());
    out.push(Check::new(
        format!("{name}: round trip"),
        round.and_then(|d| {
            if d == doc {
                Ok(())
            } else {
                Err("document changed".into())
            }
        }),
    ));
    let problem = match Problem::from_document(&doc) {
        Ok(p) => p,
        Err(e) => {
            out.push(Check::new(format!("{name}: resolve"), Err(e.to_string())));
            return out;
        }
    };
    let exp = problem.expected.clone();
    let strings = |v: &[String]| Value::from(v.to_vec());

    out.push(Check::new(
        format!("{name}: alexander"),
        run(cmd_alex(&problem)).and_then(|r| match &exp.alexander_degrees {
            Some(want) => expect_eq("degrees", field(&r, "degrees"), &strings(want)),
            None => Ok(()),
        }),
    ));
    out.push(Check::new(
        format!("{name}: torsion"),
        run(cmd_torsion(&problem, true)).and_then(|r| match &exp.torsion_degree {
            Some(want) => expect_eq("degree", field(&r, "degree"), &Value::from(want.clone())),
            None => Ok(()),
        }),
    ));
    if let Some(g) = &problem.group {
        out.push(Check::new(
            format!("{name}: bound"),
            run(cmd_bound(&problem)).and_then(|r| {
                if let Some(want) = &exp.genus_bound {
                    expect_eq(
                        "genus_bound",
                        field(&r, "genus_bound"),
                        &Value::from(want.clone()),
                    )?;
                }
                if g.norm.is_some() {
                    expect_eq("consistent", field(&r, "consistent"), &Value::Bool(true))?;
                }
                Ok(())
            }),
        ));
        out.push(Check::new(
            format!("{name}: degree pattern"),
            pattern_json(&problem)
                .map_err(|e| e.to_string())
                .and_then(|p| match p {
                    Some(p) => expect_eq("holds", field(&p, "holds"), &Value::Bool(true)),
                    None => Ok(()),
                }),
        ));
        if let Some(want) = &exp.delta_initial {
            let mut initial = problem.clone();
            initial.group.as_mut().unwrap().pair = None;
            out.push(Check::new(
                format!("{name}: delta (initial pair)"),
                run(cmd_delta(&initial)).and_then(|r| {
                    expect_eq(
                        "delta",
                        r.get("delta").and_then(|d| d.get("value")),
                        &Value::from(want.clone()),
                    )
                }),
            ));
        }
        if g.pair.is_some() {
            if let Some(want) = &exp.delta {
                out.push(Check::new(
                    format!("{name}: delta"),
                    run(cmd_delta(&problem)).and_then(|r| {
                        expect_eq(
                            "delta",
                            r.get("delta").and_then(|d| d.get("value")),
                            &Value::from(want.clone()),
                        )
                    }),
                ));
            }
            out.push(Check::new(
                format!("{name}: monotonicity"),
                run(cmd_compare(&problem)).and_then(|r| {
                    if let Some([d1, d2]) = &exp.pair_torsion_degrees {
                        let t = r.get("torsion");
                        expect_eq(
                            "degree1",
                            t.and_then(|t| t.get("degree1")),
                            &Value::from(d1.clone()),
                        )?;
                        expect_eq(
                            "degree2",
                            t.and_then(|t| t.get("degree2")),
                            &Value::from(d2.clone()),
                        )?;
                    }
                    Ok(())
                }),
            ));
        }
        out.push(Check::new(
            format!("{name}: boundary squares to zero"),
            boundary_check(&problem),
        ));
    }
    out
}

fn boundary_check(problem: &Problem) -> Result<(), String> {
    let g = problem.group.as_ref().unwrap();
    let rep = alpha_rep(problem, g).map_err(|e| e.to_string())?;
    let c = build_complex(&g.presentation, &rep, g.mode()).map_err(|e| e.to_string())?;
    for i in 1..c.length() {
        let prod = c
            .boundary(i)
            .mul(rep.ring(), c.boundary(i + 1))
            .map_err(|e| e.to_string())?;
        if !prod.is_zero() {
            return Err(format!("A_{i} A_{} != 0", i + 1));
        }
    }
    Ok(())
}

type Property = fn(&mut ChaCha8Rng, usize) -> Result<(), String>;

const PROPERTIES: &[(&str, Property)] = &[
    (
        "torsion equals alternating Alexander degree",
        prop_torsion_alternating,
    ),
    ("deg det(A + B t^r) = d r", prop_constant_plus_shift),
    ("module order under presentation moves", prop_moves),
    ("boundary squares to zero on random presentations", prop_fox),
    ("degree is additive", prop_degree),
    ("gamma is a field automorphism", prop_gamma),
];

fn prop_torsion_alternating(r: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let spec = sample_specs()[case % 4].clone();
        let ring = SkewRing::new(spec);
        let length = r.gen_range(1..=3);
        let (c, degrees) = random_acyclic_complex(r, &ring, length);
        let report = check_theorem1(&ring, &c).map_err(|e| format!("case {case}: {e}"))?;
        let want: Vec<Degree> = degrees.iter().map(|&d| Degree::Finite(d)).collect();
        if report.alexander.degrees() != want {
            return Err(format!(
                "case {case}: Alexander degrees {:?}, built {:?}",
                report.alexander.degrees(),
                want
            ));
        }
    }
    Ok(())
}

fn prop_constant_plus_shift(r: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let ring = SkewRing::new(sample_specs()[case % 4].clone());
        let d = r.gen_range(1..=3);
        let shift = r.gen_range(1..=3);
        let a = random_invertible_const(r, &ring, d).to_skew(0);
        let b = random_invertible_const(r, &ring, d).to_skew(shift);
        let m = a.add(&b).map_err(|e| e.to_string())?;
        match dieudonne_det(&ring, &m).map_err(|e| e.to_string())? {
            Some(u) if u.degree() == d as i64 * shift => {}
            other => return Err(format!("case {case}: d = {d}, r = {shift}, det {other:?}")),
        }
    }
    Ok(())
}

/// The five moves, each applied once with random data.
pub fn presentation_moves(r: &mut ChaCha8Rng, ring: &SkewRing, m: &SkewMatrix) -> Vec<SkewMatrix> {
    let (rows, cols) = m.shape();
    let mut out = Vec::new();
    let mut p = m.clone();
    p.swap_rows(0, r.gen_range(0..rows));
    p.swap_cols(0, r.gen_range(0..cols));
    out.push(p);
    let mut p = SkewMatrix::zeros(rows + 1, cols + 1);
    p.set_block(0, 0, m);
    p.set(rows, cols, ring.one());
    out.push(p);
    out.push(m.hstack(&SkewMatrix::zeros(rows, 1)).expect("same rows"));
    let mut p = m.clone();
    if cols >= 2 {
        p.col_sub_right_multiple(ring, 0, 1, &random_poly(r, ring, 2, 1));
    }
    out.push(p);
    let mut p = m.clone();
    if rows >= 2 {
        p.row_sub_left_multiple(ring, 1, &random_poly(r, ring, 2, 1), 0);
    }
    out.push(p);
    out
}

fn prop_moves(r: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let ring = SkewRing::new(sample_specs()[case % 4].clone());
        let rows = if ring.is_commutative() {
            r.gen_range(1..=3)
        } else {
            r.gen_range(1..=2)
        };
        let cols = rows + r.gen_range(0..=1);
        let m = SkewMatrix::from_fn(rows, cols, |_, _| random_sparse_poly(r, &ring, 2, 1));
        let base = module_order(&ring, &m);
        for (k, mv) in presentation_moves(r, &ring, &m).into_iter().enumerate() {
            let o = module_order(&ring, &mv);
            let same = if ring.is_commutative() {
                ring.normalize(&o.value) == ring.normalize(&base.value)
            } else {
                o.degree == base.degree
            };
            if !same {
                return Err(format!("case {case}: move {} changed the order", k + 1));
            }
        }
    }
    Ok(())
}

fn prop_fox(r: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let spec = sample_specs()[case % 4].clone();
        let ring = SkewRing::new(spec.clone());
        let n = r.gen_range(2..=3);
        let (p, phi) = random_presentation(r, n, 6);
        // Constants from the prime field commute with everything and are fixed by γ.
        let images = phi
            .values()
            .iter()
            .map(|&k| {
                let c = loop {
                    let a = spec.from_int(r.gen_range(-3..=3));
                    if !a.is_zero() {
                        break a;
                    }
                };
                PhiMatrix {
                    constant: ConstMatrix::from_rows(vec![vec![c]]).expect("1x1"),
                    shift: k,
                }
            })
            .collect();
        let rep = PhiCompatibleRep::new(ring.clone(), images).map_err(|e| e.to_string())?;
        let c = build_two_complex(&p, &rep).map_err(|e| format!("case {case}: {e}"))?;
        if !c
            .boundary(1)
            .mul(&ring, c.boundary(2))
            .map_err(|e| e.to_string())?
            .is_zero()
        {
            return Err(format!("case {case}: A_1 A_2 != 0 for {p}"));
        }
    }
    Ok(())
}

fn prop_degree(r: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let ring = SkewRing::new(sample_specs()[case % 4].clone());
        let f = random_poly(r, &ring, 3, 2);
        let g = random_poly(r, &ring, 3, 2);
        let fg = ring.mul(&f, &g);
        let want = match (f.degree(), g.degree()) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::Infinite,
        };
        if fg.degree() != want {
            return Err(format!("case {case}: deg({f} * {g}) = {}", fg.degree()));
        }
    }
    Ok(())
}

fn prop_gamma(r: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let ring = SkewRing::new(sample_specs()[case % 4].clone());
        let spec = ring.spec();
        let k = r.gen_range(-2..=2);
        let a = random_scalar(r, spec);
        let b = random_nonzero_scalar(r, spec);
        let g = |x: &twalex_core::scalars::Scalar| ring.gamma(k, x);
        let laws = [
            g(&(&a + &b)) == &g(&a) + &g(&b),
            g(&(&a * &b)) == &g(&a) * &g(&b),
            g(&b.inv()) == g(&b).inv(),
            ring.gamma(-k, &g(&a)) == a,
            g(&spec.one()) == spec.one(),
        ];
        if let Some(i) = laws.iter().position(|ok| !ok) {
            return Err(format!(
                "case {case}: law {} fails for a = {a}, b = {b}, k = {k}",
                i + 1
            ));
        }
    }
    Ok(())
}

/// Runs the property suite and the given documents; `seed` fixes every random choice.
pub fn selftest(seed: u64, cases: usize, documents: &[(String, String)]) -> (Vec<Check>, bool) {
    let mut checks: Vec<Check> = PROPERTIES
        .par_iter()
        .enumerate()
        .map(|(i, (name, prop))| {
            let mut r = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            Check::new(*name, prop(&mut r, cases))
        })
        .collect();
    let per_doc: Vec<Vec<Check>> = documents
        .par_iter()
        .map(|(name, text)| check_document(name, text))
        .collect();
    checks.extend(per_doc.into_iter().flatten());
    let ok = checks.iter().all(|c| c.passed);
    (checks, ok)
}
