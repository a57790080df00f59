//! One function per subcommand. Each returns a JSON report, plus an error when
//! the run must exit nonzero after printing it.

use num_rational::Ratio;
use serde_json::{json, Map, Value};
use twalex_core::complexes::{
    alexander_polynomials, check_theorem1, find_tau_chain, torsion_via_tau_chain, AlexanderPolys,
    FreeChainComplex, TorsionResult, DEFAULT_CHAIN_SEARCH_CAP,
};
use twalex_core::invariants::{
    build_complex, compute_torsion, compute_torsion_via_chain, degree_pattern, fibered_consistency,
    harvey_delta, monotonicity_check, thurston_lower_bound, BoundOptions, BoundOutcome,
    HarveyDelta,
};
use twalex_core::presentations::{assemble_alpha_tensor_phi, PhiCompatibleRep};
use twalex_core::skewpoly::{Degree, SkewRing};

use crate::error::CliError;
use crate::expr::format_poly;
use crate::schema::{Group, Problem};

/// A report and, if the run failed after producing it, the reason.
pub struct Outcome {
    pub report: Value,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            failure: None,
        }
    }
}

pub fn degree_string(d: Degree) -> String {
    match d {
        Degree::Finite(d) => d.to_string(),
        Degree::Infinite => "-inf".into(),
    }
}

fn ratio_string(r: Ratio<i64>) -> String {
    r.to_string()
}

fn header(command: &str, problem: &Problem) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    if !problem.name.is_empty() {
        m.insert("name".into(), json!(problem.name));
    }
    m.insert("field".into(), json!(problem.spec.to_string()));
    m
}

/// `α ⊗ φ` for the document's rep (trivial when absent).
pub fn alpha_rep(problem: &Problem, g: &Group) -> Result<PhiCompatibleRep, CliError> {
    let alpha = g.alpha(&problem.spec)?;
    Ok(assemble_alpha_tensor_phi(&alpha, &g.phi, &g.presentation)?)
}

/// The complex a command works on, with its ring.
fn complex_of(
    problem: &Problem,
) -> Result<(SkewRing, FreeChainComplex, Option<PhiCompatibleRep>), CliError> {
    match (&problem.group, &problem.complex) {
        (Some(g), _) => {
            let rep = alpha_rep(problem, g)?;
            let c = build_complex(&g.presentation, &rep, g.mode())?;
            Ok((rep.ring().clone(), c, Some(rep)))
        }
        (None, Some(c)) => Ok((SkewRing::new(problem.spec.clone()), c.clone(), None)),
        (None, None) => Err(CliError::Precondition("nothing to compute".into())),
    }
}

/// Levels up to the last nonzero chain group; `C_i = 0` contributes `Δ_i = 1`.
fn reported_levels(c: &FreeChainComplex) -> usize {
    c.ranks().iter().rposition(|&r| r > 0).map_or(1, |i| i + 1)
}

fn alexander_json(
    ring: &SkewRing,
    c: &FreeChainComplex,
    alex: &AlexanderPolys,
) -> Map<String, Value> {
    let levels = reported_levels(c);
    let mut m = Map::new();
    let degrees: Vec<String> = alex
        .degrees()
        .into_iter()
        .take(levels)
        .map(degree_string)
        .collect();
    m.insert("degrees".into(), json!(degrees));
    if ring.is_commutative() {
        let polys: Vec<String> = alex
            .orders
            .iter()
            .take(levels)
            .map(|o| format_poly(&ring.normalize(&o.value)))
            .collect();
        m.insert("polynomials".into(), json!(polys));
    }
    m
}

pub fn cmd_alex(problem: &Problem) -> Result<Outcome, CliError> {
    let (ring, c, rep) = complex_of(problem)?;
    let alex = alexander_polynomials(&ring, &c)?;
    let mut out = header("alex", problem);
    if let Some(rep) = &rep {
        out.insert("dimension".into(), json!(rep.dimension().to_string()));
    }
    out.extend(alexander_json(&ring, &c, &alex));
    Ok(Outcome::ok(Value::Object(out)))
}

fn torsion_json(ring: &SkewRing, t: &TorsionResult) -> Result<Map<String, Value>, CliError> {
    let mut m = Map::new();
    m.insert("defined".into(), json!(t.defined));
    if let (Some(d), Some(v)) = (t.degree, &t.value) {
        m.insert("degree".into(), json!(d.to_string()));
        m.insert("sign_ambiguous".into(), json!(v.sign_ambiguous));
        m.insert("unit_ambiguous".into(), json!(v.unit_ambiguous));
        if ring.is_commutative() {
            let (num, den) = v.reduced(ring)?;
            m.insert("numerator".into(), json!(format_poly(&num)));
            m.insert("denominator".into(), json!(format_poly(&den)));
        }
    }
    Ok(m)
}

pub fn cmd_torsion(problem: &Problem, verify: bool) -> Result<Outcome, CliError> {
    let mut out = header("torsion", problem);
    let (ring, t, check) = match (&problem.group, &problem.complex) {
        (Some(g), _) => {
            let rep = alpha_rep(problem, g)?;
            let t = compute_torsion(&g.presentation, &rep, g.mode())?;
            let check = if verify {
                let chain = compute_torsion_via_chain(&g.presentation, &rep, g.mode())?;
                Some((chain.defined, chain.degree))
            } else {
                None
            };
            (rep.ring().clone(), t, check)
        }
        (None, Some(c)) => {
            let ring = SkewRing::new(problem.spec.clone());
            let t = match find_tau_chain(&ring, c, &[], DEFAULT_CHAIN_SEARCH_CAP) {
                Ok(chain) => torsion_via_tau_chain(&ring, c, &chain)?,
                Err(twalex_core::Error::ChainNotFound { .. })
                    if !alexander_polynomials(&ring, c)?.all_nonzero() =>
                {
                    TorsionResult::undefined()
                }
                Err(e) => return Err(e.into()),
            };
            (ring, t, None)
        }
        (None, None) => return Err(CliError::Precondition("nothing to compute".into())),
    };
    out.extend(torsion_json(&ring, &t)?);
    if verify {
        // Independent path: the alternating degree of the Alexander polynomials.
        let (ring, c, _) = complex_of(problem)?;
        let alex = alexander_polynomials(&ring, &c)?;
        let alternating = alex.all_nonzero().then(|| {
            alex.orders
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    let d = o.degree.finite().unwrap();
                    if i % 2 == 1 {
                        d
                    } else {
                        -d
                    }
                })
                .sum::<i64>()
        });
        let mut agree = alternating == t.degree && alex.all_nonzero() == t.defined;
        if let Some((defined, degree)) = check {
            agree &= defined == t.defined && degree == t.degree;
        }
        if t.defined && agree {
            agree = check_theorem1(&ring, &c)?.degrees_agree;
        }
        out.insert("verified".into(), json!(agree));
        if !agree {
            let failure = CliError::Invariant(format!(
                "torsion degree {:?} disagrees with the alternating Alexander degree {:?}",
                t.degree, alternating
            ));
            return Ok(Outcome {
                report: Value::Object(out),
                failure: Some(failure),
            });
        }
    }
    Ok(Outcome::ok(Value::Object(out)))
}

pub fn cmd_bound(problem: &Problem) -> Result<Outcome, CliError> {
    let g = problem.group()?;
    let rep = alpha_rep(problem, g)?;
    let options = BoundOptions {
        knot: g.knot,
        fibered: g.fibered.unwrap_or(false),
    };
    let mut out = header("bound", problem);
    match thurston_lower_bound(&g.presentation, &g.phi, &rep, g.mode(), options)? {
        BoundOutcome::Undefined { alexander } => {
            out.insert("defined".into(), json!(false));
            let degrees: Vec<String> = alexander.degrees().into_iter().map(degree_string).collect();
            out.insert("alexander_degrees".into(), json!(degrees));
        }
        BoundOutcome::Bound(b) => {
            out.insert("defined".into(), json!(true));
            out.insert("torsion_degree".into(), json!(b.torsion_degree.to_string()));
            out.insert("dimension".into(), json!(b.dimension.to_string()));
            out.insert("bound".into(), json!(ratio_string(b.bound)));
            out.insert("fibered_mode".into(), json!(b.fibered_mode));
            if b.fibered_mode {
                out.insert("fibered_norm".into(), json!(ratio_string(b.fibered_norm())));
            }
            if let Some(gb) = b.genus_bound {
                out.insert("genus_bound".into(), json!(ratio_string(gb)));
            }
        }
    }
    if let Some(norm) = g.norm {
        let fibered = g.fibered.unwrap_or(false);
        let report = fibered_consistency(&g.presentation, &g.phi, &rep, g.mode(), fibered, norm)?;
        out.insert(
            "declared_norm".into(),
            json!(ratio_string(report.declared_norm)),
        );
        out.insert("consistent".into(), json!(report.consistent));
    }
    Ok(Outcome::ok(Value::Object(out)))
}

fn delta_json(d: HarveyDelta) -> Value {
    json!({ "value": d.value.to_string(), "torsion_flag": d.torsion_flag })
}

pub fn cmd_delta(problem: &Problem) -> Result<Outcome, CliError> {
    let g = problem.group()?;
    let mut out = header("delta", problem);
    let pair = g.pair.as_ref().unwrap_or(&g.pair2);
    out.insert("initial".into(), json!(pair.is_initial()));
    out.insert("rank".into(), json!(pair.rank().to_string()));
    out.insert(
        "delta".into(),
        delta_json(harvey_delta(&g.presentation, pair, g.mode())?),
    );
    Ok(Outcome::ok(Value::Object(out)))
}

pub fn cmd_compare(problem: &Problem) -> Result<Outcome, CliError> {
    let g = problem.group()?;
    let pair1 = g
        .pair
        .as_ref()
        .ok_or_else(|| CliError::Precondition("compare needs a pair".into()))?;
    let map = g
        .triple_map
        .as_ref()
        .ok_or_else(|| CliError::Precondition("compare needs a triple_map".into()))?;
    let report = monotonicity_check(
        &g.presentation,
        pair1,
        &g.pair2,
        map,
        g.mode(),
        g.alpha.as_ref(),
    )?;
    let mut out = header("compare", problem);
    out.insert("delta1".into(), delta_json(report.delta1));
    out.insert("delta2".into(), delta_json(report.delta2));
    out.insert("correction".into(), json!(report.correction.to_string()));
    out.insert("initial2".into(), json!(report.initial2));
    out.insert("satisfied".into(), json!(report.satisfied));
    if let Some(t) = &report.torsion {
        let deg = |d: Option<i64>| d.map(|d| d.to_string());
        out.insert(
            "torsion".into(),
            json!({ "degree1": deg(t.degree1), "degree2": deg(t.degree2), "satisfied": t.satisfied }),
        );
    }
    let failure = (!report.all_satisfied()).then(|| {
        CliError::Invariant(
            "a monotonicity inequality guaranteed for admissible triples failed".into(),
        )
    });
    Ok(Outcome {
        report: Value::Object(out),
        failure,
    })
}

/// The degree pattern of `Δ_0`, `Δ_2` for a one-dimensional `α ⊗ φ`, if it applies.
pub fn pattern_json(problem: &Problem) -> Result<Option<Value>, CliError> {
    let Some(g) = &problem.group else {
        return Ok(None);
    };
    let rep = alpha_rep(problem, g)?;
    Ok(degree_pattern(&g.presentation, &rep, g.mode())?.map(|p| {
        json!({
            "cyclic": p.cyclic,
            "delta0_degree": degree_string(p.delta0_degree),
            "delta2_degree": degree_string(p.delta2_degree),
            "holds": p.holds(),
        })
    }))
}
