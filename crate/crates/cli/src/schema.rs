//! The JSON input document and its translation into core objects.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use twalex_core::complexes::FreeChainComplex;
use twalex_core::invariants::ComplexMode;
use twalex_core::presentations::{
    AdmissiblePairSpec, CohomologyClass, GroupPresentation, LinearRep, PairElement,
    PresentationKind, TripleMap, Word,
};
use twalex_core::scalars::{FieldSpec, IntMatrix};
use twalex_core::skewlinalg::{ConstMatrix, SkewMatrix};
use twalex_core::skewpoly::SkewRing;

use crate::error::CliError;
use crate::expr::{parse_poly, parse_scalar};

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationDoc>,
    /// Generator name to `φ(generator)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<BTreeMap<String, i64>>,
    /// Defaults to `Q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<FieldDoc>,
    /// Generator name to a square matrix of scalars; the trivial rep when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairDoc>,
    /// Target of the triple; the initial pair when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair2: Option<PairDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple_map: Option<TripleMapDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedDoc>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug, Default)]
#[serde(rename_all = "snake_case")]
pub enum KindDoc {
    #[default]
    DeficiencyOne,
    Closed,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    #[serde(default)]
    pub kind: KindDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_words: Option<Vec<String>>,
    /// The group is a knot group and `φ` its abelianization.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub knot: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibered: Option<bool>,
    /// Declared Thurston norm of `φ`, as `"p/q"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(tag = "field", deny_unknown_fields)]
pub enum FieldDoc {
    Q,
    Fp {
        p: u64,
    },
    #[serde(rename = "ratfun")]
    RatFun {
        m: usize,
        #[serde(rename = "A")]
        a: Vec<Vec<i64>>,
    },
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct PairElementDoc {
    pub v: Vec<i64>,
    pub n: i64,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub images: BTreeMap<String, PairElementDoc>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct TripleMapDoc {
    pub basis_images: Vec<PairElementDoc>,
    pub mu_image: PairElementDoc,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub ranks: Vec<usize>,
    /// `A_1, …, A_n`, row-major, entries in the polynomial syntax.
    pub boundaries: Vec<Vec<Vec<String>>>,
}

/// Pinned results checked by the self-test.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct ExpectedDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander_degrees: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_degree: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_initial: Option<String>,
    /// Torsion degrees of `φ_{G_1} ⊗ α` and `φ_{G_2} ⊗ α`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_torsion_degrees: Option<[String; 2]>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let out = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        };
        out.expect("documents serialize")
    }
}

/// A document resolved into core objects.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub spec: FieldSpec,
    pub group: Option<Group>,
    pub complex: Option<FreeChainComplex>,
    pub expected: ExpectedDoc,
}

#[derive(Clone, Debug)]
pub struct Group {
    pub presentation: GroupPresentation,
    pub phi: CohomologyClass,
    /// `None` means the trivial one-dimensional rep.
    pub alpha: Option<LinearRep>,
    pub pair: Option<AdmissiblePairSpec>,
    pub pair2: AdmissiblePairSpec,
    pub triple_map: Option<TripleMap>,
    pub knot: bool,
    pub fibered: Option<bool>,
    pub norm: Option<Ratio<i64>>,
}

impl Group {
    pub fn mode(&self) -> ComplexMode {
        ComplexMode::of(&self.presentation)
    }

    /// `α`, or the trivial rep over `spec`.
    pub fn alpha(&self, spec: &FieldSpec) -> Result<LinearRep, CliError> {
        match &self.alpha {
            Some(a) => Ok(a.clone()),
            None => Ok(LinearRep::trivial(spec.clone(), &self.presentation)?),
        }
    }
}

impl Problem {
    pub fn from_document(doc: &InputDocument) -> Result<Self, CliError> {
        let spec = match &doc.coefficients {
            None => FieldSpec::rationals(),
            Some(f) => field_spec(f)?,
        };
        let group = doc
            .presentation
            .as_ref()
            .map(|p| resolve_group(doc, p, &spec))
            .transpose()?;
        let complex = doc
            .complex
            .as_ref()
            .map(|c| resolve_complex(c, &spec))
            .transpose()?;
        if group.is_none() && complex.is_none() {
            return Err(CliError::Parse(
                "document needs a presentation or a complex".into(),
            ));
        }
        if group.is_some() && complex.is_some() {
            return Err(CliError::Parse(
                "document has both a presentation and a complex".into(),
            ));
        }
        Ok(Problem {
            name: doc.name.clone().unwrap_or_default(),
            spec,
            group,
            complex,
            expected: doc.expected.clone().unwrap_or_default(),
        })
    }

    pub fn group(&self) -> Result<&Group, CliError> {
        self.group
            .as_ref()
            .ok_or_else(|| CliError::Precondition("this command needs a presentation".into()))
    }
}

pub fn field_spec(f: &FieldDoc) -> Result<FieldSpec, CliError> {
    Ok(match f {
        FieldDoc::Q => FieldSpec::rationals(),
        FieldDoc::Fp { p } => FieldSpec::prime_field(*p)?,
        FieldDoc::RatFun { m, a } => {
            if a.len() != *m || a.iter().any(|r| r.len() != *m) {
                return Err(CliError::Parse(format!("A must be {m}x{m}")));
            }
            FieldSpec::ratfun(*m, IntMatrix::from_rows(a))?
        }
    })
}

fn parse_rational(text: &str) -> Result<Ratio<i64>, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("\"{text}\" is not a rational number")))
}

fn by_generator<'a, T>(
    map: &'a BTreeMap<String, T>,
    generators: &[String],
    what: &str,
) -> Result<Vec<&'a T>, CliError> {
    if let Some(extra) = map.keys().find(|k| !generators.contains(k)) {
        return Err(CliError::Parse(format!(
            "{what} mentions unknown generator \"{extra}\""
        )));
    }
    generators
        .iter()
        .map(|g| {
            map.get(g).ok_or_else(|| {
                CliError::Parse(format!("{what} has no entry for generator \"{g}\""))
            })
        })
        .collect()
}

fn resolve_group(
    doc: &InputDocument,
    pd: &PresentationDoc,
    spec: &FieldSpec,
) -> Result<Group, CliError> {
    let gens = &pd.generators;
    let words = |ws: &[String]| {
        ws.iter()
            .map(|w| Word::parse(w, gens))
            .collect::<Result<Vec<_>, _>>()
    };
    let relators = words(&pd.relators)?;
    let kind = match (pd.kind, &pd.dual_words) {
        (KindDoc::DeficiencyOne, None) => PresentationKind::DeficiencyOne,
        (KindDoc::Closed, Some(d)) => PresentationKind::BalancedClosed {
            dual_words: words(d)?,
        },
        (KindDoc::DeficiencyOne, Some(_)) => {
            return Err(CliError::Parse(
                "dual words are only meaningful for closed presentations".into(),
            ))
        }
        (KindDoc::Closed, None) => {
            return Err(CliError::Parse(
                "closed presentations need dual words".into(),
            ))
        }
    };
    let presentation = GroupPresentation::new(gens.clone(), relators, kind)?;
    let phi_map = doc
        .phi
        .as_ref()
        .ok_or_else(|| CliError::Parse("document has no phi".into()))?;
    let phi_values = by_generator(phi_map, gens, "phi")?
        .into_iter()
        .copied()
        .collect();
    let phi = CohomologyClass::new(&presentation, phi_values)?;

    let alpha = match &doc.rep {
        None => None,
        Some(map) => {
            let mut matrices = Vec::new();
            for m in by_generator(map, gens, "rep")? {
                let rows = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| parse_scalar(spec, e))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return Err(CliError::Parse("rep matrices must be square".into()));
                }
                matrices.push(ConstMatrix::from_rows(rows)?);
            }
            Some(LinearRep::new(spec.clone(), &presentation, matrices)?)
        }
    };
    let pair = |d: &PairDoc| -> Result<AdmissiblePairSpec, CliError> {
        let images = by_generator(&d.images, gens, "pair images")?
            .into_iter()
            .map(|x| PairElement {
                v: x.v.clone(),
                n: x.n,
            })
            .collect();
        if d.a.iter().any(|r| r.len() != d.a.len()) {
            return Err(CliError::Parse("pair matrix A must be square".into()));
        }
        Ok(AdmissiblePairSpec::new(
            &presentation,
            &phi,
            IntMatrix::from_rows(&d.a),
            images,
        )?)
    };
    let pair1 = doc.pair.as_ref().map(pair).transpose()?;
    let pair2 = match &doc.pair2 {
        Some(d) => pair(d)?,
        None => AdmissiblePairSpec::initial(&presentation, &phi)?,
    };
    let element = |x: &PairElementDoc| PairElement {
        v: x.v.clone(),
        n: x.n,
    };
    let triple_map = match (&doc.triple_map, &pair1) {
        (Some(t), _) => Some(TripleMap {
            basis_images: t.basis_images.iter().map(element).collect(),
            mu_image: element(&t.mu_image),
        }),
        // Onto the initial pair the map is forced: e_i ↦ 1, μ ↦ μ.
        (None, Some(p1)) if pair2.is_initial() => Some(TripleMap {
            basis_images: vec![PairElement::identity(0); p1.rank()],
            mu_image: PairElement {
                v: Vec::new(),
                n: 1,
            },
        }),
        (None, _) => None,
    };
    Ok(Group {
        presentation,
        phi,
        alpha,
        pair: pair1,
        pair2,
        triple_map,
        knot: pd.knot,
        fibered: pd.fibered,
        norm: pd.norm.as_deref().map(parse_rational).transpose()?,
    })
}

fn resolve_complex(c: &ComplexDoc, spec: &FieldSpec) -> Result<FreeChainComplex, CliError> {
    let ring = SkewRing::new(spec.clone());
    if c.boundaries.len() + 1 != c.ranks.len() {
        return Err(CliError::Parse(format!(
            "{} ranks need {} boundary matrices",
            c.ranks.len(),
            c.ranks.len().saturating_sub(1)
        )));
    }
    let mut boundaries = Vec::with_capacity(c.boundaries.len());
    for (k, rows) in c.boundaries.iter().enumerate() {
        let (r, s) = (c.ranks[k], c.ranks[k + 1]);
        // An r×0 matrix is written as r empty rows, a 0×s matrix as [].
        if rows.len() != r || rows.iter().any(|row| row.len() != s) {
            return Err(CliError::Parse(format!("A_{} must be {r}x{s}", k + 1)));
        }
        let mut a = SkewMatrix::zeros(r, s);
        for (i, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                a.set(i, j, parse_poly(&ring, e)?);
            }
        }
        boundaries.push(a);
    }
    Ok(FreeChainComplex::new(&ring, c.ranks.clone(), boundaries)?)
}
