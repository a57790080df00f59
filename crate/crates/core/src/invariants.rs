//! Thurston norm and genus bounds, Harvey's `δ̄_G(φ)` and monotonicity across
//! admissible triples.

use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::complexes::{
    alexander_polynomials, find_tau_chain, torsion_via_tau_chain, AlexanderPolys, FreeChainComplex,
    TorsionResult, DEFAULT_CHAIN_SEARCH_CAP,
};
use crate::error::{Error, Result};
use crate::presentations::{
    assemble_pair_rep, assemble_pair_tensor_alpha, build_closed_complex, build_two_complex,
    image_is_cyclic, torsion_closed, torsion_two_complex, validate_admissible_triple,
    AdmissiblePairSpec, CohomologyClass, GroupPresentation, LinearRep, PhiCompatibleRep, TripleMap,
};
use crate::skewpoly::Degree;

/// Which complex a presentation stands for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComplexMode {
    /// Presentation 2-complex of a deficiency-one presentation.
    TwoComplex,
    /// Closed 3-manifold from a balanced presentation with dual words.
    Closed,
}

impl ComplexMode {
    pub fn of(p: &GroupPresentation) -> Self {
        if p.is_closed() {
            ComplexMode::Closed
        } else {
            ComplexMode::TwoComplex
        }
    }
}

pub fn build_complex(
    p: &GroupPresentation,
    rep: &PhiCompatibleRep,
    mode: ComplexMode,
) -> Result<FreeChainComplex> {
    match mode {
        ComplexMode::TwoComplex => build_two_complex(p, rep),
        ComplexMode::Closed => build_closed_complex(p, rep),
    }
}

/// Torsion by the direct formula, falling back to a τ-chain when no generator
/// (or dual word) has `φ ≠ 0`.
pub fn compute_torsion(
    p: &GroupPresentation,
    rep: &PhiCompatibleRep,
    mode: ComplexMode,
) -> Result<TorsionResult> {
    let direct = match mode {
        ComplexMode::TwoComplex => torsion_two_complex(p, rep),
        ComplexMode::Closed => torsion_closed(p, rep),
    };
    match direct {
        Err(Error::Precondition(_)) => {
            let c = build_complex(p, rep, mode)?;
            let chain = find_tau_chain(rep.ring(), &c, &[], DEFAULT_CHAIN_SEARCH_CAP)?;
            torsion_via_tau_chain(rep.ring(), &c, &chain)
        }
        other => other,
    }
}

/// Torsion through an explicit τ-chain search, ignoring the direct formula.
pub fn compute_torsion_via_chain(
    p: &GroupPresentation,
    rep: &PhiCompatibleRep,
    mode: ComplexMode,
) -> Result<TorsionResult> {
    let c = build_complex(p, rep, mode)?;
    match find_tau_chain(rep.ring(), &c, &[], DEFAULT_CHAIN_SEARCH_CAP) {
        Ok(chain) => torsion_via_tau_chain(rep.ring(), &c, &chain),
        // No chain with invertible odd blocks means some odd homology survives.
        Err(Error::ChainNotFound { .. })
            if !alexander_polynomials(rep.ring(), &c)?.all_nonzero() =>
        {
            Ok(TorsionResult::undefined())
        }
        Err(e) => Err(e),
    }
}

fn check_phi(phi: &CohomologyClass, rep: &PhiCompatibleRep) -> Result<()> {
    for (g, (a, b)) in phi.values().iter().zip(rep.phi()).enumerate() {
        if *a != b {
            return Err(Error::PhiMismatch { generator: g + 1 });
        }
    }
    if phi.values().len() != rep.phi().len() {
        return Err(Error::Shape(
            "phi and representation disagree on the number of generators".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct BoundOptions {
    /// The presentation is a knot group and `φ` is the abelianization.
    pub knot: bool,
    /// The manifold is declared to fiber over `φ`.
    pub fibered: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThurstonBound {
    pub torsion_degree: i64,
    pub dimension: usize,
    /// `deg τ / d`.
    pub bound: Ratio<i64>,
    pub fibered_mode: bool,
    /// `(bound + 1) / 2`, present for knot inputs with primitive `φ`.
    pub genus_bound: Option<Ratio<i64>>,
}

impl ThurstonBound {
    /// `max{0, bound}`, the norm itself when the manifold fibers.
    pub fn fibered_norm(&self) -> Ratio<i64> {
        self.bound.max(Ratio::from_integer(0))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundOutcome {
    Bound(ThurstonBound),
    /// Torsion is undefined; the Alexander polynomials witness `Δ_1 = 0`.
    Undefined {
        alexander: AlexanderPolys,
    },
}

pub fn thurston_lower_bound(
    p: &GroupPresentation,
    phi: &CohomologyClass,
    rep: &PhiCompatibleRep,
    mode: ComplexMode,
    options: BoundOptions,
) -> Result<BoundOutcome> {
    check_phi(phi, rep)?;
    let torsion = compute_torsion(p, rep, mode)?;
    let Some(degree) = torsion.degree else {
        let c = build_complex(p, rep, mode)?;
        return Ok(BoundOutcome::Undefined {
            alexander: alexander_polynomials(rep.ring(), &c)?,
        });
    };
    let d = rep.dimension();
    let bound = Ratio::new(degree, d as i64);
    let genus_bound = (options.knot && phi.is_primitive()).then(|| (bound + 1) / 2);
    Ok(BoundOutcome::Bound(ThurstonBound {
        torsion_degree: degree,
        dimension: d,
        bound,
        fibered_mode: options.fibered,
        genus_bound,
    }))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberedReport {
    pub declared_norm: Ratio<i64>,
    pub declared_fibered: bool,
    /// `max{0, bound}` when fibered, `bound` otherwise; `None` if torsion is undefined.
    pub computed: Option<Ratio<i64>>,
    /// Equality in the fibered case, `computed ≤ declared` otherwise.
    pub consistent: bool,
}

pub fn fibered_consistency(
    p: &GroupPresentation,
    phi: &CohomologyClass,
    rep: &PhiCompatibleRep,
    mode: ComplexMode,
    declared_fibered: bool,
    declared_norm: Ratio<i64>,
) -> Result<FiberedReport> {
    let options = BoundOptions {
        knot: false,
        fibered: declared_fibered,
    };
    let computed = match thurston_lower_bound(p, phi, rep, mode, options)? {
        BoundOutcome::Bound(b) if declared_fibered => Some(b.fibered_norm()),
        BoundOutcome::Bound(b) => Some(b.bound),
        BoundOutcome::Undefined { .. } => None,
    };
    let consistent = match computed {
        Some(c) if declared_fibered => c == declared_norm,
        Some(c) => c <= declared_norm,
        // A fibered manifold always has defined torsion.
        None => !declared_fibered,
    };
    Ok(FiberedReport {
        declared_norm,
        declared_fibered,
        computed,
        consistent,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HarveyDelta {
    pub value: u64,
    /// Whether `H_1` is `K(G')[t^±1]`-torsion.
    pub torsion_flag: bool,
}

/// `δ̄_G(φ) = deg Δ_1` of the pair representation, or 0 when `H_1` is not torsion.
pub fn harvey_delta(
    p: &GroupPresentation,
    pair: &AdmissiblePairSpec,
    mode: ComplexMode,
) -> Result<HarveyDelta> {
    let rep = assemble_pair_rep(pair, p)?;
    let c = build_complex(p, &rep, mode)?;
    let alex = alexander_polynomials(rep.ring(), &c)?;
    Ok(match alex.orders[1].degree {
        Degree::Infinite => HarveyDelta {
            value: 0,
            torsion_flag: false,
        },
        Degree::Finite(d) => HarveyDelta {
            value: d as u64,
            torsion_flag: true,
        },
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionComparison {
    pub degree1: Option<i64>,
    pub degree2: Option<i64>,
    /// `τ_{G_2⊗α}` defined implies `τ_{G_1⊗α}` defined with at least its degree.
    pub satisfied: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonotonicityReport {
    pub delta1: HarveyDelta,
    pub delta2: HarveyDelta,
    pub correction: i64,
    pub initial2: bool,
    pub satisfied: bool,
    pub torsion: Option<TorsionComparison>,
}

impl MonotonicityReport {
    pub fn all_satisfied(&self) -> bool {
        self.satisfied && self.torsion.as_ref().is_none_or(|t| t.satisfied)
    }
}

/// Compares `δ̄_{G_1}(φ) ≥ δ̄_{G_2}(φ) + correction`, and the torsion degrees of
/// `φ_{G_i} ⊗ α` when `α` is given.
pub fn monotonicity_check(
    p: &GroupPresentation,
    pair1: &AdmissiblePairSpec,
    pair2: &AdmissiblePairSpec,
    map: &TripleMap,
    mode: ComplexMode,
    alpha: Option<&LinearRep>,
) -> Result<MonotonicityReport> {
    let triple = validate_admissible_triple(p, pair1, pair2, map)?;
    if triple.isomorphism {
        return Err(Error::Precondition(
            "G_1 -> G_2 is an isomorphism; the triple is degenerate".into(),
        ));
    }
    let delta1 = harvey_delta(p, pair1, mode)?;
    let delta2 = harvey_delta(p, pair2, mode)?;
    let correction = match (triple.pair2_initial, mode) {
        (false, _) => 0,
        (true, ComplexMode::TwoComplex) => -1,
        (true, ComplexMode::Closed) => -2,
    };
    let satisfied = delta1.value as i64 >= delta2.value as i64 + correction;
    let torsion = match alpha {
        None => None,
        Some(alpha) => {
            let rep1 = assemble_pair_tensor_alpha(pair1, alpha, p)?;
            let rep2 = assemble_pair_tensor_alpha(pair2, alpha, p)?;
            let degree1 = compute_torsion(p, &rep1, mode)?.degree;
            let degree2 = compute_torsion(p, &rep2, mode)?.degree;
            let satisfied = match (degree1, degree2) {
                (_, None) => true,
                (Some(a), Some(b)) => a >= b,
                (None, Some(_)) => false,
            };
            Some(TorsionComparison {
                degree1,
                degree2,
                satisfied,
            })
        }
    };
    Ok(MonotonicityReport {
        delta1,
        delta2,
        correction,
        initial2: triple.pair2_initial,
        satisfied,
        torsion,
    })
}

/// Degrees of `Δ_0` and `Δ_2` for a one-dimensional representation next to
/// the values forced by the image being cyclic or not.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreePattern {
    pub cyclic: bool,
    pub delta0_degree: Degree,
    pub expected_delta0_degree: i64,
    pub delta2_degree: Degree,
    pub expected_delta2_degree: i64,
}

impl DegreePattern {
    pub fn holds(&self) -> bool {
        self.delta0_degree == Degree::Finite(self.expected_delta0_degree)
            && self.delta2_degree == Degree::Finite(self.expected_delta2_degree)
    }
}

/// `None` unless `d = 1` and `φ` is primitive.
pub fn degree_pattern(
    p: &GroupPresentation,
    rep: &PhiCompatibleRep,
    mode: ComplexMode,
) -> Result<Option<DegreePattern>> {
    let Some(cyclic) = image_is_cyclic(rep) else {
        return Ok(None);
    };
    let c = build_complex(p, rep, mode)?;
    let alex = alexander_polynomials(rep.ring(), &c)?;
    let expected0 = if cyclic { 1 } else { 0 };
    let expected2 = match mode {
        ComplexMode::TwoComplex => 0,
        ComplexMode::Closed => expected0,
    };
    let degrees: Vec<Degree> = alex.degrees();
    if degrees.len() < 3 {
        return Err(Error::Shape(format!(
            "complex of length {} has no Delta_2",
            degrees.len() - 1
        )));
    }
    Ok(Some(DegreePattern {
        cyclic,
        delta0_degree: degrees[0],
        expected_delta0_degree: expected0,
        delta2_degree: degrees[2],
        expected_delta2_degree: expected2,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{assemble_alpha_tensor_phi, PairElement};
    use crate::scalars::{FieldSpec, IntMatrix};
    use alloc::vec;

    fn trefoil() -> (GroupPresentation, CohomologyClass) {
        let p = GroupPresentation::parse(&["a", "b"], &["abaBAB"], None).unwrap();
        let phi = CohomologyClass::new(&p, vec![1, 1]).unwrap();
        (p, phi)
    }

    fn trivial(p: &GroupPresentation, phi: &CohomologyClass) -> PhiCompatibleRep {
        let alpha = LinearRep::trivial(FieldSpec::rationals(), p).unwrap();
        assemble_alpha_tensor_phi(&alpha, phi, p).unwrap()
    }

    fn metabelian(p: &GroupPresentation, phi: &CohomologyClass) -> AdmissiblePairSpec {
        let a = IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]]);
        let images = vec![
            PairElement {
                v: vec![0, 0],
                n: 1,
            },
            PairElement {
                v: vec![1, 0],
                n: 1,
            },
        ];
        AdmissiblePairSpec::new(p, phi, a, images).unwrap()
    }

    #[test]
    fn trefoil_bound() {
        let (p, phi) = trefoil();
        let rep = trivial(&p, &phi);
        let opts = BoundOptions {
            knot: true,
            fibered: true,
        };
        let BoundOutcome::Bound(b) =
            thurston_lower_bound(&p, &phi, &rep, ComplexMode::TwoComplex, opts).unwrap()
        else {
            panic!("undefined");
        };
        assert_eq!(b.bound, Ratio::from_integer(1));
        assert_eq!(b.genus_bound, Some(Ratio::from_integer(1)));
        let f = fibered_consistency(
            &p,
            &phi,
            &rep,
            ComplexMode::TwoComplex,
            true,
            Ratio::from_integer(1),
        )
        .unwrap();
        assert!(f.consistent);
    }

    #[test]
    fn unknot_fibered_norm() {
        let p = GroupPresentation::parse(&["a"], &[], None).unwrap();
        let phi = CohomologyClass::new(&p, vec![1]).unwrap();
        let rep = trivial(&p, &phi);
        let out = thurston_lower_bound(
            &p,
            &phi,
            &rep,
            ComplexMode::TwoComplex,
            BoundOptions::default(),
        )
        .unwrap();
        let BoundOutcome::Bound(b) = out else {
            panic!("undefined")
        };
        assert_eq!(b.torsion_degree, -1);
        assert_eq!(b.fibered_norm(), Ratio::from_integer(0));
        assert_eq!(b.genus_bound, None);
    }

    #[test]
    fn undefined_torsion_reports_alexander() {
        // A repeated relator leaves H_2 nonzero over Q(t).
        let p = GroupPresentation::parse(&["a", "b", "c"], &["bcBC", "bcBC"], None).unwrap();
        let phi = CohomologyClass::new(&p, vec![1, 0, 0]).unwrap();
        let rep = trivial(&p, &phi);
        let out = thurston_lower_bound(
            &p,
            &phi,
            &rep,
            ComplexMode::TwoComplex,
            BoundOptions::default(),
        )
        .unwrap();
        let BoundOutcome::Undefined { alexander } = out else {
            panic!("torsion should be undefined")
        };
        assert!(!alexander.all_nonzero());
        let chain = compute_torsion_via_chain(&p, &rep, ComplexMode::TwoComplex).unwrap();
        assert!(!chain.defined);
    }

    #[test]
    fn harvey_trefoil() {
        let (p, phi) = trefoil();
        let initial = AdmissiblePairSpec::initial(&p, &phi).unwrap();
        assert_eq!(
            harvey_delta(&p, &initial, ComplexMode::TwoComplex)
                .unwrap()
                .value,
            2
        );
        let pair = metabelian(&p, &phi);
        let map = TripleMap {
            basis_images: vec![PairElement { v: vec![], n: 0 }; 2],
            mu_image: PairElement { v: vec![], n: 1 },
        };
        let report =
            monotonicity_check(&p, &pair, &initial, &map, ComplexMode::TwoComplex, None).unwrap();
        assert_eq!(report.correction, -1);
        assert!(report.initial2);
        assert!(report.satisfied);
        assert_eq!(report.delta1.value, 1);
    }

    #[test]
    fn degenerate_triple_rejected() {
        let (p, phi) = trefoil();
        let initial = AdmissiblePairSpec::initial(&p, &phi).unwrap();
        let map = TripleMap {
            basis_images: vec![],
            mu_image: PairElement { v: vec![], n: 1 },
        };
        assert!(matches!(
            monotonicity_check(&p, &initial, &initial, &map, ComplexMode::TwoComplex, None),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn degree_patterns() {
        let (p, phi) = trefoil();
        let rep = trivial(&p, &phi);
        let pat = degree_pattern(&p, &rep, ComplexMode::TwoComplex)
            .unwrap()
            .unwrap();
        assert!(pat.cyclic && pat.holds());
        let pair_rep = assemble_pair_rep(&metabelian(&p, &phi), &p).unwrap();
        let pat = degree_pattern(&p, &pair_rep, ComplexMode::TwoComplex)
            .unwrap()
            .unwrap();
        assert!(!pat.cyclic && pat.holds());
    }
}
