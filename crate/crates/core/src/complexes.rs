//! Free chain complexes over `K_γ[t^±1]`: Reidemeister torsion via τ-chains
//! and twisted Alexander polynomials.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::skewlinalg::{
    column_echelon, dieudonne_det, matrix_rank, module_order, ModuleOrder, SkewMatrix,
};
use crate::skewpoly::{AbelianizedUnit, Degree, SkewRing};

/// `0 → C_n → … → C_1 → C_0 → 0` with `C_i` free of rank `ranks[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[i - 1]` is `A_i : C_i → C_{i-1}`, of shape `ranks[i-1] × ranks[i]`.
    boundaries: Vec<SkewMatrix>,
}

impl FreeChainComplex {
    /// Validates shapes and `A_{i-1}·A_i = 0`.
    pub fn new(ring: &SkewRing, ranks: Vec<usize>, boundaries: Vec<SkewMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Shape(
                "a chain complex needs at least one module".into(),
            ));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!(
                "{} modules need {} boundary maps, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (k, a) in boundaries.iter().enumerate() {
            let want = (ranks[k], ranks[k + 1]);
            if a.shape() != want {
                return Err(Error::Shape(format!(
                    "A_{} is {}x{} but the ranks require {}x{}",
                    k + 1,
                    a.rows(),
                    a.cols(),
                    want.0,
                    want.1
                )));
            }
            if !ring_contains(ring, a) {
                return Err(Error::FieldMismatch);
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(ring, &boundaries[k])?.is_zero() {
                return Err(Error::BoundaryCheckFailed { index: k + 1 });
            }
        }
        Ok(FreeChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Top degree `n`.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `A_i` for `1 ≤ i ≤ n`.
    pub fn boundary(&self, i: usize) -> &SkewMatrix {
        &self.boundaries[i - 1]
    }

    pub fn boundaries(&self) -> &[SkewMatrix] {
        &self.boundaries
    }
}

fn ring_contains(ring: &SkewRing, a: &SkewMatrix) -> bool {
    a.entries().all(|p| ring.contains(p))
}

/// Index sets `ξ_0, …, ξ_n` (0-based column indices) with `ξ_0 = ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixChain {
    pub xi: Vec<Vec<usize>>,
}

impl MatrixChain {
    pub fn new(xi: Vec<Vec<usize>>) -> Self {
        MatrixChain { xi }
    }

    /// Checks index ranges and the τ-chain shape conditions for every level.
    pub fn validate(&self, c: &FreeChainComplex) -> Result<()> {
        let n = c.length();
        if self.xi.len() != n + 1 {
            return Err(Error::Shape(format!(
                "chain has {} levels, complex has {}",
                self.xi.len(),
                n + 1
            )));
        }
        if !self.xi[0].is_empty() {
            return Err(Error::Shape("xi_0 must be empty".into()));
        }
        for (i, set) in self.xi.iter().enumerate() {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != set.len() || set.iter().any(|&j| j >= c.ranks[i]) {
                return Err(Error::Shape(format!(
                    "xi_{i} is not a subset of the basis of C_{i}"
                )));
            }
        }
        for i in 1..=n {
            if c.ranks[i - 1] - self.xi[i - 1].len() != self.xi[i].len() {
                return Err(Error::Shape(format!("A_{i}(xi) is not square")));
            }
        }
        if self.xi[n].len() != c.ranks[n] {
            return Err(Error::Shape(format!(
                "xi_{n} must contain every basis element of C_{n}"
            )));
        }
        Ok(())
    }
}

fn complement(size: usize, set: &[usize]) -> Vec<usize> {
    (0..size).filter(|j| !set.contains(j)).collect()
}

/// `A_i(ξ)`: rows outside `ξ_{i-1}`, columns in `ξ_i`.
pub fn submatrix_of_chain(c: &FreeChainComplex, xi: &MatrixChain, i: usize) -> Result<SkewMatrix> {
    if i == 0 || i > c.length() || xi.xi.len() != c.length() + 1 {
        return Err(Error::Shape(format!("no block A_{i} in this chain")));
    }
    let rows = complement(c.ranks[i - 1], &xi.xi[i - 1]);
    let cols = &xi.xi[i];
    if rows.len() != cols.len() || cols.iter().any(|&j| j >= c.ranks[i]) {
        return Err(Error::Shape(format!("A_{i}(xi) is not square")));
    }
    Ok(c.boundary(i).select(&rows, cols))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionResult {
    /// False when some homology over `K_γ(t)` is nonzero.
    pub defined: bool,
    pub value: Option<AbelianizedUnit>,
    pub degree: Option<i64>,
}

impl TorsionResult {
    pub fn undefined() -> Self {
        TorsionResult {
            defined: false,
            value: None,
            degree: None,
        }
    }

    pub fn from_value(value: AbelianizedUnit) -> Self {
        let degree = value.degree();
        TorsionResult {
            defined: true,
            value: Some(value),
            degree: Some(degree),
        }
    }
}

/// Torsion as the alternating product `∏ det A_i(ξ)^{(-1)^i}`, up to sign.
pub fn torsion_via_tau_chain(
    ring: &SkewRing,
    c: &FreeChainComplex,
    xi: &MatrixChain,
) -> Result<TorsionResult> {
    xi.validate(c)?;
    let mut value = AbelianizedUnit::one();
    let mut defined = true;
    for i in 1..=c.length() {
        let block = submatrix_of_chain(c, xi, i)?;
        match dieudonne_det(ring, &block)? {
            None if i % 2 == 1 => return Err(Error::OddBlockSingular { index: i }),
            None => defined = false,
            Some(d) if i % 2 == 1 => value = value.mul(&d.inv()),
            Some(d) => value = value.mul(&d),
        }
    }
    if !defined {
        return Ok(TorsionResult::undefined());
    }
    value.sign_ambiguous = true;
    Ok(TorsionResult::from_value(value))
}

pub const DEFAULT_CHAIN_SEARCH_CAP: usize = 10_000;

/// A τ-chain whose odd blocks are invertible: hints first, then a greedy
/// choice of independent columns, then bounded backtracking.
pub fn find_tau_chain(
    ring: &SkewRing,
    c: &FreeChainComplex,
    hints: &[MatrixChain],
    cap: usize,
) -> Result<MatrixChain> {
    let mut tried = 0;
    for h in hints {
        tried += 1;
        if h.validate(c).is_ok() && odd_blocks_invertible(ring, c, h)? {
            return Ok(h.clone());
        }
    }
    if let Some(chain) = greedy_chain(ring, c) {
        tried += 1;
        if chain.validate(c).is_ok() && odd_blocks_invertible(ring, c, &chain)? {
            return Ok(chain);
        }
    }
    let mut search = Backtrack {
        ring,
        c,
        budget: cap,
        tried,
    };
    let mut xi = vec![Vec::new()];
    if search.extend(&mut xi) {
        return Ok(MatrixChain::new(xi));
    }
    Err(Error::ChainNotFound {
        candidates: search.tried,
    })
}

fn odd_blocks_invertible(ring: &SkewRing, c: &FreeChainComplex, xi: &MatrixChain) -> Result<bool> {
    for i in (1..=c.length()).step_by(2) {
        if dieudonne_det(ring, &submatrix_of_chain(c, xi, i)?)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Level by level, takes the first columns that are independent on the remaining rows.
fn greedy_chain(ring: &SkewRing, c: &FreeChainComplex) -> Option<MatrixChain> {
    let mut xi = vec![Vec::new()];
    for i in 1..=c.length() {
        let rows = complement(c.ranks[i - 1], &xi[i - 1]);
        let need = rows.len();
        let a = c.boundary(i);
        let mut chosen: Vec<usize> = Vec::new();
        for j in 0..c.ranks[i] {
            if chosen.len() == need {
                break;
            }
            let mut cols = chosen.clone();
            cols.push(j);
            if matrix_rank(ring, &a.select(&rows, &cols)) == cols.len() {
                chosen = cols;
            }
        }
        if chosen.len() < need {
            // Even blocks may be singular (torsion undefined); pad to keep the shape.
            if i % 2 == 1 {
                return None;
            }
            for j in 0..c.ranks[i] {
                if chosen.len() == need {
                    break;
                }
                if !chosen.contains(&j) {
                    chosen.push(j);
                }
            }
            if chosen.len() < need {
                return None;
            }
        }
        chosen.sort_unstable();
        xi.push(chosen);
    }
    Some(MatrixChain::new(xi))
}

struct Backtrack<'a> {
    ring: &'a SkewRing,
    c: &'a FreeChainComplex,
    budget: usize,
    tried: usize,
}

impl Backtrack<'_> {
    fn extend(&mut self, xi: &mut Vec<Vec<usize>>) -> bool {
        let i = xi.len();
        if i > self.c.length() {
            return xi[i - 1].len() == self.c.ranks[i - 1];
        }
        let rows = complement(self.c.ranks[i - 1], &xi[i - 1]);
        let k = rows.len();
        let n = self.c.ranks[i];
        if k > n {
            return false;
        }
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if self.tried >= self.budget {
                return false;
            }
            self.tried += 1;
            let ok = i.is_multiple_of(2)
                || matrix_rank(self.ring, &self.c.boundary(i).select(&rows, &combo)) == k;
            if ok {
                xi.push(combo.clone());
                if self.extend(xi) {
                    return true;
                }
                xi.pop();
            }
            if !next_combination(&mut combo, n) {
                return false;
            }
        }
    }
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for pos in (0..k).rev() {
        if combo[pos] < n - k + pos {
            combo[pos] += 1;
            for q in pos + 1..k {
                combo[q] = combo[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `Δ_0, …, Δ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPolys {
    pub orders: Vec<ModuleOrder>,
}

impl AlexanderPolys {
    pub fn degrees(&self) -> Vec<Degree> {
        self.orders.iter().map(|o| o.degree).collect()
    }

    pub fn all_nonzero(&self) -> bool {
        self.orders.iter().all(|o| !o.is_zero())
    }
}

/// `Δ_i = ord H_i`, computed from kernel bases and a presentation of the image.
pub fn alexander_polynomials(ring: &SkewRing, c: &FreeChainComplex) -> Result<AlexanderPolys> {
    let n = c.length();
    let mut orders = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let r = c.ranks[i];
        // Columns of Q beyond the rank span ker A_i; rows of Q^{-1} give coordinates.
        let (rank, q_inv) = if i == 0 {
            (0, SkewMatrix::identity(ring, r))
        } else {
            let ce = column_echelon(ring, c.boundary(i));
            (ce.rank(), ce.q_inv)
        };
        let image = if i < n {
            c.boundary(i + 1).clone()
        } else {
            SkewMatrix::zeros(r, 0)
        };
        let coords = q_inv.mul(ring, &image)?;
        for row in 0..rank {
            if coords.row(row).iter().any(|p| !p.is_zero()) {
                return Err(Error::MismatchDetected(format!(
                    "image of A_{} leaves ker A_{i}",
                    i + 1
                )));
            }
        }
        let rows: Vec<usize> = (rank..r).collect();
        let cols: Vec<usize> = (0..image.cols()).collect();
        orders.push(module_order(ring, &coords.select(&rows, &cols)));
    }
    Ok(AlexanderPolys { orders })
}

/// Both sides of `deg τ = Σ (−1)^{i+1} deg Δ_i`, computed independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Report {
    pub torsion: TorsionResult,
    pub alexander: AlexanderPolys,
    pub alternating_degree: Option<i64>,
    pub degrees_agree: bool,
    /// Equality of reduced values modulo `k t^e`; `None` over a skew ring.
    pub values_agree: Option<bool>,
}

/// Recomputes torsion and the Alexander polynomials and compares them.
/// Any disagreement is reported as [`Error::MismatchDetected`].
pub fn check_theorem1(ring: &SkewRing, c: &FreeChainComplex) -> Result<Theorem1Report> {
    let chain = find_tau_chain(ring, c, &[], DEFAULT_CHAIN_SEARCH_CAP)?;
    let torsion = torsion_via_tau_chain(ring, c, &chain)?;
    let alexander = alexander_polynomials(ring, c)?;
    if torsion.defined != alexander.all_nonzero() {
        return Err(Error::MismatchDetected(format!(
            "torsion defined = {} but Alexander polynomials nonzero = {}",
            torsion.defined,
            alexander.all_nonzero()
        )));
    }
    if !torsion.defined {
        return Err(Error::Precondition(
            "torsion is undefined: some homology is not torsion".into(),
        ));
    }
    let alternating: i64 = alexander
        .orders
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
        .sum();
    let degrees_agree = torsion.degree == Some(alternating);
    let values_agree = if ring.is_commutative() {
        let mut product = AbelianizedUnit::one();
        for (i, o) in alexander.orders.iter().enumerate() {
            let f = AbelianizedUnit::new(vec![o.value.clone()], Vec::new());
            product = product.mul(&if i % 2 == 1 { f } else { f.inv() });
        }
        Some(
            torsion
                .value
                .as_ref()
                .unwrap()
                .equal_up_to_units(&product, ring)?,
        )
    } else {
        None
    };
    if !degrees_agree || values_agree == Some(false) {
        return Err(Error::MismatchDetected(format!(
            "deg tau = {:?} but alternating Alexander degree = {alternating}",
            torsion.degree
        )));
    }
    Ok(Theorem1Report {
        torsion,
        alexander,
        alternating_degree: Some(alternating),
        degrees_agree,
        values_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    fn q() -> SkewRing {
        SkewRing::new(FieldSpec::rationals())
    }

    fn circle(r: &SkewRing) -> FreeChainComplex {
        let a1 = SkewMatrix::from_rows(vec![vec![r.from_ints(0, &[-1, 1])]]);
        FreeChainComplex::new(r, vec![1, 1], vec![a1]).unwrap()
    }

    #[test]
    fn one_block_torsion() {
        let r = q();
        let c = circle(&r);
        let xi = find_tau_chain(&r, &c, &[], DEFAULT_CHAIN_SEARCH_CAP).unwrap();
        assert_eq!(xi, MatrixChain::new(vec![vec![], vec![0]]));
        let t = torsion_via_tau_chain(&r, &c, &xi).unwrap();
        assert_eq!(t.degree, Some(-1));
        assert_eq!(
            t.value.unwrap().denominators,
            vec![r.from_ints(0, &[-1, 1])]
        );
    }

    #[test]
    fn circle_alexander() {
        let r = q();
        let a = alexander_polynomials(&r, &circle(&r)).unwrap();
        assert_eq!(a.degrees(), vec![Degree::Finite(1), Degree::Finite(0)]);
        let report = check_theorem1(&r, &circle(&r)).unwrap();
        assert_eq!(report.torsion.degree, Some(-1));
        assert_eq!(report.values_agree, Some(true));
    }

    #[test]
    fn identity_blocks() {
        let r = q();
        let c = FreeChainComplex::new(&r, vec![2, 2], vec![SkewMatrix::identity(&r, 2)]).unwrap();
        let xi = find_tau_chain(&r, &c, &[], 10).unwrap();
        assert_eq!(torsion_via_tau_chain(&r, &c, &xi).unwrap().degree, Some(0));
        let a = alexander_polynomials(&r, &c).unwrap();
        assert_eq!(a.degrees(), vec![Degree::Finite(0); 2]);
    }

    #[test]
    fn zero_boundary_has_no_chain() {
        let r = q();
        let c = FreeChainComplex::new(&r, vec![1, 1], vec![SkewMatrix::zeros(1, 1)]).unwrap();
        assert!(matches!(
            find_tau_chain(&r, &c, &[], 100),
            Err(Error::ChainNotFound { .. })
        ));
        let a = alexander_polynomials(&r, &c).unwrap();
        assert!(!a.all_nonzero());
    }

    #[test]
    fn submatrix_edges() {
        let r = q();
        let c = circle(&r);
        let full = MatrixChain::new(vec![vec![], vec![0]]);
        assert_eq!(
            submatrix_of_chain(&c, &full, 1).unwrap(),
            c.boundary(1).clone()
        );
        let c2 = FreeChainComplex::new(&r, vec![0, 1], vec![SkewMatrix::zeros(0, 1)]).unwrap();
        let empty = MatrixChain::new(vec![vec![], vec![]]);
        assert_eq!(submatrix_of_chain(&c2, &empty, 1).unwrap().shape(), (0, 0));
        assert!(empty.validate(&c2).is_err());
    }

    #[test]
    fn boundary_check() {
        let r = q();
        let a1 = SkewMatrix::from_rows(vec![vec![r.one()]]);
        let a2 = SkewMatrix::from_rows(vec![vec![r.t(1)]]);
        assert_eq!(
            FreeChainComplex::new(&r, vec![1, 1, 1], vec![a1, a2]),
            Err(Error::BoundaryCheckFailed { index: 2 })
        );
    }
}
