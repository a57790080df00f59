//! Group presentations, Fox calculus, φ-compatible representations and the
//! chain complexes (and direct torsion formulas) they determine.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::complexes::{FreeChainComplex, TorsionResult};
use crate::error::{Error, Result};
use crate::scalars::{FieldSpec, IntMatrix};
use crate::skewlinalg::{dieudonne_det, ConstMatrix, SkewMatrix};
use crate::skewpoly::{AbelianizedUnit, SkewPoly, SkewRing};

/// A letter `x_generator^{±1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![Letter {
                generator: g,
                inverse: false,
            }],
        }
    }

    /// Freely reduces the given letters.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Parses the case convention: lowercase is a generator, uppercase its inverse.
    pub fn parse(text: &str, generators: &[String]) -> Result<Self> {
        let mut letters = Vec::new();
        for ch in text.chars() {
            if ch.is_whitespace() || ch == '1' && text.trim() == "1" {
                continue;
            }
            let lower = ch.to_ascii_lowercase();
            let index = generators
                .iter()
                .position(|g| g.len() == 1 && g.starts_with(lower))
                .filter(|_| ch.is_ascii_alphabetic())
                .ok_or_else(|| {
                    Error::Parse(format!("unknown generator '{ch}' in word \"{text}\""))
                })?;
            letters.push(Letter {
                generator: index,
                inverse: ch.is_ascii_uppercase(),
            });
        }
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Exponent sum of each generator (the abelianization).
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut out = vec![0; generators];
        for l in &self.letters {
            out[l.generator] += l.exponent();
        }
        out
    }

    pub fn render(&self, generators: &[String]) -> String {
        let mut s = String::new();
        for l in &self.letters {
            let name = &generators[l.generator];
            if l.inverse {
                s.push_str(&name.to_uppercase());
            } else {
                s.push_str(name);
            }
        }
        s
    }
}

/// An element of `Z[F]`: a finite integer combination of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, 1)
    }

    pub fn term(w: Word, c: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(w.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }
}

/// Left Fox derivative: `∂(uv) = ∂u + u ∂v`, `∂x_j^{-1}/∂x_j = −x_j^{-1}`.
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.generator == j {
            if l.inverse {
                out.add_term(prefix.mul(&Word::from_letters([l])), -1);
            } else {
                out.add_term(prefix.clone(), 1);
            }
        }
        prefix = prefix.mul(&Word::from_letters([l]));
    }
    out
}

/// Right Fox derivative: `D(uv) = D(u) v + D(v)`, so that `w − 1 = Σ_j (x_j − 1) D_j(w)`.
pub fn fox_derivative_right(w: &Word, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let letters = w.letters();
    for (k, &l) in letters.iter().enumerate() {
        if l.generator != j {
            continue;
        }
        let suffix = Word::from_letters(letters[k + 1..].iter().copied());
        if l.inverse {
            out.add_term(Word::from_letters([l]).mul(&suffix), -1);
        } else {
            out.add_term(suffix, 1);
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PresentationKind {
    /// `#relators = #generators − 1`; builds a 2-complex with `χ = 0`.
    DeficiencyOne,
    /// `#relators = #generators`, with one dual word `g_k` per generator giving `A_3`.
    BalancedClosed { dual_words: Vec<Word> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    kind: PresentationKind,
}

impl GroupPresentation {
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
        kind: PresentationKind,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            let ok = g.len() == 1 && g.chars().all(|c| c.is_ascii_lowercase());
            if !ok {
                return Err(Error::Parse(format!(
                    "generator name \"{g}\" must be a single lowercase letter"
                )));
            }
            if generators[..i].contains(g) {
                return Err(Error::Parse(format!("duplicate generator \"{g}\"")));
            }
        }
        let n = generators.len();
        let check = |w: &Word| w.letters().iter().all(|l| l.generator < n);
        if !relators.iter().all(check) {
            return Err(Error::Parse("relator uses an unknown generator".into()));
        }
        match &kind {
            PresentationKind::DeficiencyOne if relators.len() + 1 != n => {
                return Err(Error::Precondition(format!(
                    "deficiency one needs {} relators for {n} generators, got {}",
                    n.saturating_sub(1),
                    relators.len()
                )));
            }
            PresentationKind::BalancedClosed { dual_words } => {
                if relators.len() != n || dual_words.len() != n {
                    return Err(Error::Precondition(format!(
                        "a balanced presentation needs {n} relators and {n} dual words"
                    )));
                }
                if !dual_words.iter().all(check) {
                    return Err(Error::Parse("dual word uses an unknown generator".into()));
                }
            }
            _ => {}
        }
        Ok(GroupPresentation {
            generators,
            relators,
            kind,
        })
    }

    /// Parses generator letters and relators in the case convention.
    pub fn parse(
        generators: &[&str],
        relators: &[&str],
        dual_words: Option<&[&str]>,
    ) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| Word::parse(r, &gens))
            .collect::<Result<Vec<_>>>()?;
        let kind = match dual_words {
            None => PresentationKind::DeficiencyOne,
            Some(d) => PresentationKind::BalancedClosed {
                dual_words: d
                    .iter()
                    .map(|r| Word::parse(r, &gens))
                    .collect::<Result<Vec<_>>>()?,
            },
        };
        Self::new(gens, rels, kind)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn kind(&self) -> &PresentationKind {
        &self.kind
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.kind, PresentationKind::BalancedClosed { .. })
    }

    pub fn dual_words(&self) -> Option<&[Word]> {
        match &self.kind {
            PresentationKind::BalancedClosed { dual_words } => Some(dual_words),
            PresentationKind::DeficiencyOne => None,
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.generators.join(", "))?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.render(&self.generators))
            .collect();
        write!(f, "{}>", rels.join(", "))
    }
}

/// A homomorphism `φ: π → Z`, given by its values on the generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyClass {
    values: Vec<i64>,
    primitive: bool,
}

impl CohomologyClass {
    pub fn new(p: &GroupPresentation, values: Vec<i64>) -> Result<Self> {
        if values.len() != p.num_generators() {
            return Err(Error::InvalidClass(format!(
                "{} values for {} generators",
                values.len(),
                p.num_generators()
            )));
        }
        let class = CohomologyClass {
            primitive: values.iter().fold(0i64, |g, v| g.gcd(v)) == 1,
            values,
        };
        for (i, r) in p.relators().iter().enumerate() {
            if class.evaluate(r) != 0 {
                return Err(Error::InvalidClass(format!(
                    "phi does not vanish on relator {}",
                    i + 1
                )));
            }
        }
        Ok(class)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn evaluate(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| self.values[l.generator] * l.exponent())
            .sum()
    }
}

/// A representation `π → GL(F, d)` over a commutative field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRep {
    ring: SkewRing,
    matrices: Vec<ConstMatrix>,
}

impl LinearRep {
    pub fn new(spec: FieldSpec, p: &GroupPresentation, matrices: Vec<ConstMatrix>) -> Result<Self> {
        if !spec.is_commutative() {
            return Err(Error::InvalidField(
                "a linear representation needs a commutative field".into(),
            ));
        }
        let ring = SkewRing::new(spec);
        if matrices.len() != p.num_generators() {
            return Err(Error::Shape(format!(
                "{} matrices for {} generators",
                matrices.len(),
                p.num_generators()
            )));
        }
        let d = matrices.first().map_or(0, ConstMatrix::size);
        if matrices.iter().any(|m| m.size() != d) {
            return Err(Error::Shape(
                "representation matrices differ in size".into(),
            ));
        }
        for m in &matrices {
            if (0..d).any(|i| (0..d).any(|j| !ring.spec().contains(m.get(i, j)))) {
                return Err(Error::FieldMismatch);
            }
        }
        let rep = LinearRep { ring, matrices };
        let phi = vec![0; p.num_generators()];
        rep.tensor_phi_unchecked(&phi)?.check_relators(p)?;
        Ok(rep)
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(spec: FieldSpec, p: &GroupPresentation) -> Result<Self> {
        let ring = SkewRing::new(spec.clone());
        let id = ConstMatrix::identity(&ring, 1);
        Self::new(spec, p, vec![id; p.num_generators()])
    }

    pub fn dimension(&self) -> usize {
        self.matrices.first().map_or(0, ConstMatrix::size)
    }

    pub fn spec(&self) -> &FieldSpec {
        self.ring.spec()
    }

    pub fn matrices(&self) -> &[ConstMatrix] {
        &self.matrices
    }

    /// Conjugates every matrix by a fixed invertible `c`: `g ↦ c α(g) c^{-1}`.
    pub fn conjugate(&self, c: &ConstMatrix) -> Result<LinearRep> {
        let inv = c
            .inverse(&self.ring)
            .ok_or_else(|| Error::Precondition("conjugating matrix is singular".into()))?;
        Ok(LinearRep {
            ring: self.ring.clone(),
            matrices: self.matrices.iter().map(|m| c.mul(m).mul(&inv)).collect(),
        })
    }

    fn tensor_phi_unchecked(&self, phi: &[i64]) -> Result<PhiCompatibleRep> {
        let images = self
            .matrices
            .iter()
            .zip(phi)
            .map(|(m, &n)| PhiMatrix {
                constant: m.clone(),
                shift: n,
            })
            .collect();
        PhiCompatibleRep::new(self.ring.clone(), images)
    }
}

/// `M·t^shift` with `M` constant and invertible over `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMatrix {
    pub constant: ConstMatrix,
    pub shift: i64,
}

impl PhiMatrix {
    pub fn identity(ring: &SkewRing, d: usize) -> Self {
        PhiMatrix {
            constant: ConstMatrix::identity(ring, d),
            shift: 0,
        }
    }

    /// `(M t^n)(N t^k) = M γ^n(N) t^{n+k}`.
    pub fn mul(&self, ring: &SkewRing, other: &PhiMatrix) -> PhiMatrix {
        let twisted = other.constant.map(|a| ring.gamma(self.shift, a));
        PhiMatrix {
            constant: self.constant.mul(&twisted),
            shift: self.shift + other.shift,
        }
    }

    /// `(M t^n)^{-1} = γ^{-n}(M^{-1}) t^{-n}`.
    pub fn inverse(&self, ring: &SkewRing) -> Option<PhiMatrix> {
        let inv = self.constant.inverse(ring)?;
        Some(PhiMatrix {
            constant: inv.map(|a| ring.gamma(-self.shift, a)),
            shift: -self.shift,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.constant.is_identity()
    }

    pub fn to_skew(&self) -> SkewMatrix {
        self.constant.to_skew(self.shift)
    }
}

/// A φ-compatible representation `g ↦ M_g t^{φ(g)}` over `K_γ[t^±1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCompatibleRep {
    ring: SkewRing,
    images: Vec<PhiMatrix>,
    inverses: Vec<PhiMatrix>,
}

impl PhiCompatibleRep {
    /// Checks that every constant part is invertible over `K` and of one size.
    pub fn new(ring: SkewRing, images: Vec<PhiMatrix>) -> Result<Self> {
        let d = images.first().map_or(0, |m| m.constant.size());
        let mut inverses = Vec::with_capacity(images.len());
        for (g, m) in images.iter().enumerate() {
            if m.constant.size() != d {
                return Err(Error::Shape(
                    "representation matrices differ in size".into(),
                ));
            }
            let inv = m.inverse(&ring).ok_or_else(|| {
                Error::Precondition(format!("image of generator {} is not invertible", g + 1))
            })?;
            inverses.push(inv);
        }
        Ok(PhiCompatibleRep {
            ring,
            images,
            inverses,
        })
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.images.first().map_or(0, |m| m.constant.size())
    }

    pub fn images(&self) -> &[PhiMatrix] {
        &self.images
    }

    /// `φ(g)` for each generator, read off from the powers of `t`.
    pub fn phi(&self) -> Vec<i64> {
        self.images.iter().map(|m| m.shift).collect()
    }

    pub fn evaluate(&self, w: &Word) -> PhiMatrix {
        let mut acc = PhiMatrix::identity(&self.ring, self.dimension());
        for l in w.letters() {
            let m = if l.inverse {
                &self.inverses[l.generator]
            } else {
                &self.images[l.generator]
            };
            acc = acc.mul(&self.ring, m);
        }
        acc
    }

    /// Fails with [`Error::RelatorViolation`] unless every relator maps to the identity.
    pub fn check_relators(&self, p: &GroupPresentation) -> Result<()> {
        if self.images.len() != p.num_generators() {
            return Err(Error::Shape(format!(
                "representation has {} generator images, presentation has {} generators",
                self.images.len(),
                p.num_generators()
            )));
        }
        for (i, r) in p.relators().iter().enumerate() {
            if !self.evaluate(r).is_identity() {
                return Err(Error::RelatorViolation { relator: i + 1 });
            }
        }
        Ok(())
    }

    /// `α(Σ c_w w)` as a `d × d` matrix over `K_γ[t^±1]`.
    pub fn evaluate_combination(&self, x: &GroupRingElement) -> SkewMatrix {
        let d = self.dimension();
        let mut out = SkewMatrix::zeros(d, d);
        for (w, c) in x.terms() {
            let m = self.evaluate(w);
            let scale = self.ring.spec().from_int(c);
            for i in 0..d {
                for j in 0..d {
                    let a = m.constant.get(i, j);
                    if a.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&SkewPoly::term(&scale * a, m.shift));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `α(1 − w)`.
    pub fn one_minus(&self, w: &Word) -> SkewMatrix {
        let mut x = GroupRingElement::word(Word::identity());
        x.add_term(w.clone(), -1);
        self.evaluate_combination(&x)
    }
}

/// `α(w)` as a matrix over `K_γ[t^±1]`.
pub fn evaluate_rep(rep: &PhiCompatibleRep, w: &Word) -> SkewMatrix {
    rep.evaluate(w).to_skew()
}

/// `α ⊗ φ : g ↦ α(g) t^{φ(g)}`.
pub fn assemble_alpha_tensor_phi(
    alpha: &LinearRep,
    phi: &CohomologyClass,
    p: &GroupPresentation,
) -> Result<PhiCompatibleRep> {
    let rep = alpha.tensor_phi_unchecked(phi.values())?;
    rep.check_relators(p)?;
    Ok(rep)
}

/// An element `(v, n)` of `Z^m ⋊_A Z`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PairElement {
    pub v: Vec<i64>,
    pub n: i64,
}

impl PairElement {
    pub fn identity(m: usize) -> Self {
        PairElement {
            v: vec![0; m],
            n: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.n == 0 && self.v.iter().all(|&x| x == 0)
    }
}

/// The group `G = Z^m ⋊_A Z` with `(v, n)(w, k) = (v + A^n w, n + k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemidirectGroup {
    a: IntMatrix,
    a_inv: IntMatrix,
}

impl SemidirectGroup {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let a_inv = a
            .unimodular_inverse()
            .ok_or_else(|| Error::InvalidField("matrix A must lie in GL(m, Z)".into()))?;
        Ok(SemidirectGroup { a, a_inv })
    }

    pub fn rank(&self) -> usize {
        self.a.size()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    fn power(&self, n: i64) -> IntMatrix {
        if n >= 0 {
            self.a.pow(n as u64)
        } else {
            self.a_inv.pow(n.unsigned_abs())
        }
    }

    pub fn mul(&self, x: &PairElement, y: &PairElement) -> PairElement {
        let w = self.power(x.n).apply(&y.v);
        PairElement {
            v: x.v.iter().zip(&w).map(|(a, b)| a + b).collect(),
            n: x.n + y.n,
        }
    }

    pub fn inverse(&self, x: &PairElement) -> PairElement {
        let w = self.power(-x.n).apply(&x.v);
        PairElement {
            v: w.into_iter().map(|a| -a).collect(),
            n: -x.n,
        }
    }

    pub fn pow(&self, x: &PairElement, k: i64) -> PairElement {
        let base = if k >= 0 { x.clone() } else { self.inverse(x) };
        let mut acc = PairElement::identity(self.rank());
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }
}

/// An admissible pair `π → Z^m ⋊_A Z → Z`, given by generator images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissiblePairSpec {
    group: SemidirectGroup,
    images: Vec<PairElement>,
}

impl AdmissiblePairSpec {
    /// Checks the homomorphism property, `n = φ(g)` per generator, and that `φ_G` is onto.
    pub fn new(
        p: &GroupPresentation,
        phi: &CohomologyClass,
        a: IntMatrix,
        images: Vec<PairElement>,
    ) -> Result<Self> {
        let group = SemidirectGroup::new(a)?;
        let m = group.rank();
        if images.len() != p.num_generators() {
            return Err(Error::Shape(format!(
                "{} images for {} generators",
                images.len(),
                p.num_generators()
            )));
        }
        if images.iter().any(|x| x.v.len() != m) {
            return Err(Error::Shape(format!("pair images must lie in Z^{m} x Z")));
        }
        for (g, x) in images.iter().enumerate() {
            if x.n != phi.values()[g] {
                return Err(Error::PhiMismatch { generator: g + 1 });
            }
        }
        if images.iter().fold(0i64, |acc, x| acc.gcd(&x.n)) != 1 {
            return Err(Error::Precondition(
                "the images do not surject onto Z".into(),
            ));
        }
        let pair = AdmissiblePairSpec { group, images };
        for (i, r) in p.relators().iter().enumerate() {
            if !pair.evaluate(r).is_identity() {
                return Err(Error::NotAHomomorphism { relator: i + 1 });
            }
        }
        Ok(pair)
    }

    /// The initial pair `π → Z` given by `φ` itself.
    pub fn initial(p: &GroupPresentation, phi: &CohomologyClass) -> Result<Self> {
        let images = phi
            .values()
            .iter()
            .map(|&n| PairElement { v: Vec::new(), n })
            .collect();
        Self::new(p, phi, IntMatrix::identity(0), images)
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn group(&self) -> &SemidirectGroup {
        &self.group
    }

    pub fn images(&self) -> &[PairElement] {
        &self.images
    }

    pub fn is_initial(&self) -> bool {
        self.rank() == 0
    }

    pub fn evaluate(&self, w: &Word) -> PairElement {
        let mut acc = PairElement::identity(self.rank());
        for l in w.letters() {
            let x = &self.images[l.generator];
            let y = if l.inverse {
                self.group.inverse(x)
            } else {
                x.clone()
            };
            acc = self.group.mul(&acc, &y);
        }
        acc
    }

    /// Coefficient field `K(G') = Q(x_1..x_m)` with `γ` induced by `A` (`Q` when `m = 0`).
    pub fn field(&self) -> Result<FieldSpec> {
        if self.rank() == 0 {
            Ok(FieldSpec::rationals())
        } else {
            FieldSpec::ratfun(self.rank(), self.group.a.clone())
        }
    }
}

/// The one-dimensional representation `g ↦ x^v t^n` of an admissible pair.
pub fn assemble_pair_rep(
    pair: &AdmissiblePairSpec,
    p: &GroupPresentation,
) -> Result<PhiCompatibleRep> {
    let ring = SkewRing::new(pair.field()?);
    let mut images = Vec::with_capacity(pair.images.len());
    for x in &pair.images {
        let c = ring.spec().monomial(&x.v)?;
        images.push(PhiMatrix {
            constant: ConstMatrix::from_rows(vec![vec![c]])?,
            shift: x.n,
        });
    }
    let rep = PhiCompatibleRep::new(ring, images)?;
    rep.check_relators(p).map_err(|e| match e {
        Error::RelatorViolation { relator } => Error::NotAHomomorphism { relator },
        other => other,
    })?;
    Ok(rep)
}

/// `φ_G ⊗ α : g ↦ x^v α(g) t^n` over `K(G')[t^±1]`, for `α` over `Q`.
pub fn assemble_pair_tensor_alpha(
    pair: &AdmissiblePairSpec,
    alpha: &LinearRep,
    p: &GroupPresentation,
) -> Result<PhiCompatibleRep> {
    if *alpha.spec() != FieldSpec::rationals() {
        return Err(Error::InvalidField(
            "pair tensor products need a representation over Q".into(),
        ));
    }
    let ring = SkewRing::new(pair.field()?);
    let mut images = Vec::with_capacity(pair.images.len());
    for (x, m) in pair.images.iter().zip(alpha.matrices()) {
        let mono = ring.spec().monomial(&x.v)?;
        let rows = m
            .rows()
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|a| Ok(&mono * &ring.spec().from_rational(&a.as_rational().unwrap())?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        images.push(PhiMatrix {
            constant: ConstMatrix::from_rows(rows)?,
            shift: x.n,
        });
    }
    let rep = PhiCompatibleRep::new(ring, images)?;
    rep.check_relators(p)?;
    Ok(rep)
}

/// `A_1 = (α(1 − x_1) … α(1 − x_n))`.
fn first_boundary(p: &GroupPresentation, rep: &PhiCompatibleRep) -> SkewMatrix {
    let d = rep.dimension();
    let mut a1 = SkewMatrix::zeros(d, p.num_generators() * d);
    for j in 0..p.num_generators() {
        a1.set_block(0, j * d, &rep.one_minus(&Word::generator(j)));
    }
    a1
}

/// Evaluated Fox Jacobian: block `(j, k)` is `α(D_j r_k)`.
fn fox_jacobian(p: &GroupPresentation, rep: &PhiCompatibleRep) -> SkewMatrix {
    let d = rep.dimension();
    let n = p.num_generators();
    let rels = p.relators();
    let mut a2 = SkewMatrix::zeros(n * d, rels.len() * d);
    for (k, r) in rels.iter().enumerate() {
        for j in 0..n {
            let block = rep.evaluate_combination(&fox_derivative_right(r, j));
            a2.set_block(j * d, k * d, &block);
        }
    }
    a2
}

/// The presentation 2-complex `0 → C_2 → C_1 → C_0 → 0` with twisted coefficients.
pub fn build_two_complex(
    p: &GroupPresentation,
    rep: &PhiCompatibleRep,
) -> Result<FreeChainComplex> {
    if p.is_closed() {
        return Err(Error::Precondition(
            "a balanced closed presentation builds a 3-complex".into(),
        ));
    }
    rep.check_relators(p)?;
    let d = rep.dimension();
    let n = p.num_generators();
    FreeChainComplex::new(
        rep.ring(),
        vec![d, n * d, p.relators().len() * d],
        vec![first_boundary(p, rep), fox_jacobian(p, rep)],
    )
}

/// `A_3 = (α(1 − g_1), …, α(1 − g_n))^t`.
fn third_boundary(dual: &[Word], rep: &PhiCompatibleRep) -> SkewMatrix {
    let d = rep.dimension();
    let mut a3 = SkewMatrix::zeros(dual.len() * d, d);
    for (k, g) in dual.iter().enumerate() {
        a3.set_block(k * d, 0, &rep.one_minus(g));
    }
    a3
}

/// The 4-term complex of a closed 3-manifold from a balanced presentation and dual words.
pub fn build_closed_complex(
    p: &GroupPresentation,
    rep: &PhiCompatibleRep,
) -> Result<FreeChainComplex> {
    let Some(dual) = p.dual_words() else {
        return Err(Error::Precondition(
            "closed complexes need a balanced presentation with dual words".into(),
        ));
    };
    rep.check_relators(p)?;
    let d = rep.dimension();
    let n = p.num_generators();
    FreeChainComplex::new(
        rep.ring(),
        vec![d, n * d, n * d, d],
        vec![
            first_boundary(p, rep),
            fox_jacobian(p, rep),
            third_boundary(dual, rep),
        ],
    )
}

fn det_or_none(ring: &SkewRing, m: &SkewMatrix) -> Result<Option<AbelianizedUnit>> {
    dieudonne_det(ring, m)
}

fn block_indices(total_blocks: usize, d: usize, skip: usize) -> Vec<usize> {
    (0..total_blocks * d).filter(|i| i / d != skip).collect()
}

/// `τ = det α(B) / det α(1 − h_l)` with `B` the Fox Jacobian minus row block `l`.
pub fn torsion_two_complex_direct(
    p: &GroupPresentation,
    rep: &PhiCompatibleRep,
    l: usize,
) -> Result<TorsionResult> {
    if l >= p.num_generators() {
        return Err(Error::Precondition(format!("no generator {}", l + 1)));
    }
    if rep.phi()[l] == 0 {
        return Err(Error::Precondition(format!(
            "phi vanishes on generator {}",
            l + 1
        )));
    }
    let c = build_two_complex(p, rep)?;
    let ring = rep.ring();
    let d = rep.dimension();
    let a2 = c.boundary(2);
    let rows = block_indices(p.num_generators(), d, l);
    let cols: Vec<usize> = (0..a2.cols()).collect();
    let b = a2.select(&rows, &cols);
    let Some(det_b) = det_or_none(ring, &b)? else {
        return Ok(TorsionResult::undefined());
    };
    let det_h = det_or_none(ring, &rep.one_minus(&Word::generator(l)))?.ok_or_else(|| {
        Error::MismatchDetected("alpha(1 - h_l) is singular although phi(h_l) != 0".into())
    })?;
    let mut value = det_b.mul(&det_h.inv());
    value.sign_ambiguous = true;
    Ok(TorsionResult::from_value(value))
}

/// Tries every generator with `φ ≠ 0` and returns the first defined result.
pub fn torsion_two_complex(p: &GroupPresentation, rep: &PhiCompatibleRep) -> Result<TorsionResult> {
    let phi = rep.phi();
    let mut any = false;
    for l in (0..p.num_generators()).filter(|&l| phi[l] != 0) {
        any = true;
        let t = torsion_two_complex_direct(p, rep, l)?;
        if t.defined {
            return Ok(t);
        }
    }
    if !any {
        return Err(Error::Precondition("phi is trivial".into()));
    }
    Ok(TorsionResult::undefined())
}

/// `τ = det α(B) / (det α(1 − g_k) · det α(1 − h_l))`, `B` the Fox Jacobian minus
/// column block `k` and row block `l`.
pub fn torsion_closed_direct(
    p: &GroupPresentation,
    rep: &PhiCompatibleRep,
    k: usize,
    l: usize,
) -> Result<TorsionResult> {
    let Some(dual) = p.dual_words() else {
        return Err(Error::Precondition(
            "closed torsion needs dual words".into(),
        ));
    };
    let n = p.num_generators();
    if k >= n || l >= n {
        return Err(Error::Precondition("block index out of range".into()));
    }
    let phi = rep.phi();
    let phi_g = rep.evaluate(&dual[k]).shift;
    if phi_g == 0 || phi[l] == 0 {
        return Err(Error::Precondition(
            "phi must be nonzero on g_k and h_l".into(),
        ));
    }
    let c = build_closed_complex(p, rep)?;
    let ring = rep.ring();
    let d = rep.dimension();
    let b = c
        .boundary(2)
        .select(&block_indices(n, d, l), &block_indices(n, d, k));
    let Some(det_b) = det_or_none(ring, &b)? else {
        return Ok(TorsionResult::undefined());
    };
    let singular =
        || Error::MismatchDetected("alpha(1 - g) is singular although phi(g) != 0".into());
    let det_g = det_or_none(ring, &rep.one_minus(&dual[k]))?.ok_or_else(singular)?;
    let det_h = det_or_none(ring, &rep.one_minus(&Word::generator(l)))?.ok_or_else(singular)?;
    let mut value = det_b.mul(&det_g.inv()).mul(&det_h.inv());
    value.sign_ambiguous = true;
    Ok(TorsionResult::from_value(value))
}

/// Tries every `(k, l)` with `φ(g_k) ≠ 0 ≠ φ(h_l)`.
pub fn torsion_closed(p: &GroupPresentation, rep: &PhiCompatibleRep) -> Result<TorsionResult> {
    let Some(dual) = p.dual_words() else {
        return Err(Error::Precondition(
            "closed torsion needs dual words".into(),
        ));
    };
    let phi = rep.phi();
    let ks: Vec<usize> = (0..dual.len())
        .filter(|&k| rep.evaluate(&dual[k]).shift != 0)
        .collect();
    let ls: Vec<usize> = (0..phi.len()).filter(|&l| phi[l] != 0).collect();
    if ks.is_empty() || ls.is_empty() {
        return Err(Error::Precondition(
            "phi vanishes on all dual words or all generators".into(),
        ));
    }
    for &k in &ks {
        for &l in &ls {
            let t = torsion_closed_direct(p, rep, k, l)?;
            if t.defined {
                return Ok(t);
            }
        }
    }
    Ok(TorsionResult::undefined())
}

/// For a one-dimensional rep with primitive `φ`: whether the image group is cyclic.
/// `None` when the question does not apply (`d ≠ 1` or `φ` not primitive).
pub fn image_is_cyclic(rep: &PhiCompatibleRep) -> Option<bool> {
    if rep.dimension() != 1 {
        return None;
    }
    let ring = rep.ring();
    let phi = rep.phi();
    if phi.iter().fold(0i64, |g, v| g.gcd(v)) != 1 {
        return None;
    }
    // Build u with shift 1 from a Bezout combination; the image is cyclic iff it is <u>.
    let mut u = PhiMatrix::identity(ring, 1);
    let mut g = 0i64;
    for (k, &n) in phi.iter().enumerate() {
        let e = g.extended_gcd(&n);
        let step = phi_power(ring, &u, e.x).mul(ring, &phi_power(ring, &rep.images()[k], e.y));
        // Over a skew ring the images need not commute, hence the check below.
        u = step;
        g = e.gcd;
    }
    if u.shift < 0 {
        u = u.inverse(ring)?;
    }
    Some(
        rep.images()
            .iter()
            .all(|m| phi_power(ring, &u, m.shift) == *m),
    )
}

fn phi_power(ring: &SkewRing, m: &PhiMatrix, k: i64) -> PhiMatrix {
    let base = if k >= 0 {
        m.clone()
    } else {
        m.inverse(ring).expect("invertible")
    };
    let mut acc = PhiMatrix::identity(ring, m.constant.size());
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(ring, &base);
    }
    acc
}

/// A homomorphism `Z^{m1} ⋊ Z → Z^{m2} ⋊ Z` given by the images of the basis
/// vectors `e_i = (e_i, 0)` and of `μ = (0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleMap {
    pub basis_images: Vec<PairElement>,
    pub mu_image: PairElement,
}

impl TripleMap {
    /// `ψ(v, n) = ψ(e)^v ψ(μ)^n`.
    pub fn apply(&self, target: &SemidirectGroup, x: &PairElement) -> PairElement {
        let mut acc = PairElement::identity(target.rank());
        for (vi, img) in x.v.iter().zip(&self.basis_images) {
            acc = target.mul(&acc, &target.pow(img, *vi));
        }
        target.mul(&acc, &target.pow(&self.mu_image, x.n))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleReport {
    /// `G_2 = Z`, i.e. `(φ_2, φ)` is initial.
    pub pair2_initial: bool,
    /// `G_1 → G_2` is an isomorphism, which an admissible triple excludes.
    pub isomorphism: bool,
}

/// Checks that `ψ: G_1 → G_2` is a homomorphism over `Z` with `ψ ∘ φ_1 = φ_2` on generators.
pub fn validate_admissible_triple(
    p: &GroupPresentation,
    pair1: &AdmissiblePairSpec,
    pair2: &AdmissiblePairSpec,
    map: &TripleMap,
) -> Result<TripleReport> {
    let (m1, m2) = (pair1.rank(), pair2.rank());
    let fail = |msg: String| Err(Error::DiagramDoesNotCommute(msg));
    if map.basis_images.len() != m1
        || map
            .basis_images
            .iter()
            .chain([&map.mu_image])
            .any(|x| x.v.len() != m2)
    {
        return fail(format!(
            "map must send {m1} basis vectors and mu into Z^{m2} x Z"
        ));
    }
    if map.basis_images.iter().any(|x| x.n != 0) || map.mu_image.n != 1 {
        return fail("map is not compatible with the projections to Z".into());
    }
    // ψ(μ) ψ(e_i) ψ(μ)^{-1} must equal ψ(A_1 e_i); the ψ(e_i) commute automatically.
    let g2 = pair2.group();
    for i in 0..m1 {
        let mut e = PairElement::identity(m1);
        e.v[i] = 1;
        let conj = g2.mul(
            &g2.mul(&map.mu_image, &map.basis_images[i]),
            &g2.inverse(&map.mu_image),
        );
        let target = map.apply(
            g2,
            &pair1.group().mul(
                &pair1.group().mul(
                    &PairElement {
                        v: vec![0; m1],
                        n: 1,
                    },
                    &e,
                ),
                &PairElement {
                    v: vec![0; m1],
                    n: -1,
                },
            ),
        );
        if conj != target {
            return fail(format!(
                "map does not respect the action of mu on e_{}",
                i + 1
            ));
        }
    }
    for g in 0..p.num_generators() {
        if map.apply(g2, &pair1.images()[g]) != pair2.images()[g] {
            return fail(format!(
                "map sends the image of generator {} to the wrong element",
                g + 1
            ));
        }
    }
    let isomorphism = m1 == m2 && {
        let cols: Vec<Vec<i64>> = (0..m1)
            .map(|i| (0..m2).map(|r| map.basis_images[i].v[r]).collect())
            .collect();
        let rows: Vec<Vec<i64>> = (0..m2)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        IntMatrix::from_rows(&rows).determinant().abs() == 1
    };
    Ok(TripleReport {
        pair2_initial: pair2.is_initial(),
        isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GroupPresentation {
        GroupPresentation::parse(&["a", "b"], &["abaBAB"], None).unwrap()
    }

    fn gens() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn word_parsing_reduces() {
        let w = Word::parse("abBA", &gens()).unwrap();
        assert!(w.is_empty());
        assert_eq!(Word::parse("aB", &gens()).unwrap().render(&gens()), "aB");
        assert!(matches!(Word::parse("ac", &gens()), Err(Error::Parse(_))));
        assert!(matches!(Word::parse("a-b", &gens()), Err(Error::Parse(_))));
    }

    #[test]
    fn fox_examples() {
        let g = gens();
        let aa = Word::parse("aa", &g).unwrap();
        let mut expected = GroupRingElement::word(Word::identity());
        expected.add_term(Word::generator(0), 1);
        assert_eq!(fox_derivative(&aa, 0), expected);
        let a_inv = Word::parse("A", &g).unwrap();
        assert_eq!(
            fox_derivative(&a_inv, 0),
            GroupRingElement::term(a_inv.clone(), -1)
        );
        assert_eq!(
            fox_derivative_right(&a_inv, 0),
            GroupRingElement::term(a_inv, -1)
        );
    }

    #[test]
    fn fundamental_identities() {
        let g = gens();
        let r = Word::parse("abaBAB", &g).unwrap();
        let one = GroupRingElement::word(Word::identity());
        let r_minus_one = GroupRingElement::word(r.clone()).sub(&one);
        let mut left = GroupRingElement::zero();
        let mut right = GroupRingElement::zero();
        for j in 0..2 {
            let xj_minus_one = GroupRingElement::word(Word::generator(j)).sub(&one);
            left = left.add(&fox_derivative(&r, j).mul(&xj_minus_one));
            right = right.add(&xj_minus_one.mul(&fox_derivative_right(&r, j)));
        }
        assert_eq!(left, r_minus_one);
        assert_eq!(right, r_minus_one);
    }

    #[test]
    fn presentation_shapes() {
        assert!(GroupPresentation::parse(&["a", "b"], &[], None).is_err());
        assert!(GroupPresentation::parse(&["a", "b"], &["ab", "ba"], Some(&["a"])).is_err());
        let p = trefoil();
        assert!(CohomologyClass::new(&p, vec![1, 1]).unwrap().is_primitive());
        assert!(matches!(
            CohomologyClass::new(&p, vec![1, 0]),
            Err(Error::InvalidClass(_))
        ));
    }

    #[test]
    fn alpha_tensor_phi() {
        let p = trefoil();
        let phi = CohomologyClass::new(&p, vec![1, 1]).unwrap();
        let rep = assemble_alpha_tensor_phi(
            &LinearRep::trivial(FieldSpec::rationals(), &p).unwrap(),
            &phi,
            &p,
        )
        .unwrap();
        let r = rep.ring().clone();
        assert_eq!(
            evaluate_rep(&rep, &Word::generator(0)),
            SkewMatrix::from_rows(vec![vec![r.t(1)]])
        );

        let f5 = FieldSpec::prime_field(5).unwrap();
        let two = ConstMatrix::from_rows(vec![vec![f5.from_int(2)]]).unwrap();
        let alpha = LinearRep::new(f5.clone(), &p, vec![two.clone(), two.clone()]).unwrap();
        let rep = assemble_alpha_tensor_phi(&alpha, &phi, &p).unwrap();
        assert_eq!(rep.images()[0].constant, two);
        let three = ConstMatrix::from_rows(vec![vec![f5.from_int(3)]]).unwrap();
        assert_eq!(
            LinearRep::new(f5, &p, vec![two, three]).unwrap_err(),
            Error::RelatorViolation { relator: 1 }
        );
    }

    #[test]
    fn trefoil_metabelian_pair() {
        let p = trefoil();
        let phi = CohomologyClass::new(&p, vec![1, 1]).unwrap();
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
        let pair = AdmissiblePairSpec::new(&p, &phi, a.clone(), images).unwrap();
        let rep = assemble_pair_rep(&pair, &p).unwrap();
        assert_eq!(
            rep.images()[1].constant.get(0, 0),
            &rep.ring().spec().variable(0).unwrap()
        );
        assert_eq!(image_is_cyclic(&rep), Some(false));
        let shifted = vec![
            PairElement {
                v: vec![0, 0],
                n: 1,
            },
            PairElement {
                v: vec![1, 0],
                n: 2,
            },
        ];
        assert_eq!(
            AdmissiblePairSpec::new(&p, &phi, a.clone(), shifted).unwrap_err(),
            Error::PhiMismatch { generator: 2 }
        );
        let not_hom = IntMatrix::identity(2);
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
        assert_eq!(
            AdmissiblePairSpec::new(&p, &phi, not_hom, images).unwrap_err(),
            Error::NotAHomomorphism { relator: 1 }
        );
    }

    #[test]
    fn unknot_complex_and_torsion() {
        let p = GroupPresentation::parse(&["a"], &[], None).unwrap();
        let phi = CohomologyClass::new(&p, vec![1]).unwrap();
        let rep = assemble_alpha_tensor_phi(
            &LinearRep::trivial(FieldSpec::rationals(), &p).unwrap(),
            &phi,
            &p,
        )
        .unwrap();
        let c = build_two_complex(&p, &rep).unwrap();
        assert_eq!(c.ranks(), &[1, 1, 0]);
        let t = torsion_two_complex_direct(&p, &rep, 0).unwrap();
        assert_eq!(t.degree, Some(-1));
    }

    #[test]
    fn trefoil_torsion_direct() {
        let p = trefoil();
        let phi = CohomologyClass::new(&p, vec![1, 1]).unwrap();
        let rep = assemble_alpha_tensor_phi(
            &LinearRep::trivial(FieldSpec::rationals(), &p).unwrap(),
            &phi,
            &p,
        )
        .unwrap();
        let c = build_two_complex(&p, &rep).unwrap();
        assert_eq!(c.boundary(2).shape(), (2, 1));
        assert_eq!(c.boundary(1).shape(), (1, 2));
        assert_eq!(
            torsion_two_complex_direct(&p, &rep, 0).unwrap().degree,
            Some(1)
        );
        assert_eq!(image_is_cyclic(&rep), Some(true));
    }

    #[test]
    fn three_torus() {
        let p = GroupPresentation::parse(
            &["a", "b", "c"],
            &["abAB", "bcBC", "caCA"],
            Some(&["C", "A", "B"]),
        )
        .unwrap();
        let phi = CohomologyClass::new(&p, vec![1, 0, 0]).unwrap();
        let rep = assemble_alpha_tensor_phi(
            &LinearRep::trivial(FieldSpec::rationals(), &p).unwrap(),
            &phi,
            &p,
        )
        .unwrap();
        let c = build_closed_complex(&p, &rep).unwrap();
        assert_eq!(c.ranks(), &[1, 3, 3, 1]);
        let t = torsion_closed(&p, &rep).unwrap();
        assert_eq!(t.degree, Some(0));
        let wrong = GroupPresentation::parse(
            &["a", "b", "c"],
            &["abAB", "bcBC", "caCA"],
            Some(&["a", "b", "c"]),
        )
        .unwrap();
        assert!(matches!(
            build_closed_complex(&wrong, &rep),
            Err(Error::BoundaryCheckFailed { index: 3 })
        ));
        assert!(build_two_complex(&p, &rep).is_err());
    }
}
