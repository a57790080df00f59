//! Matrices over `K_γ[t^±1]`: rank, Dieudonné determinants, module orders
//! and kernel bases.
//!
//! Matrices act on column vectors; `A_i` of a chain complex has shape
//! `rank C_{i-1} × rank C_i`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::skewpoly::{AbelianizedUnit, Degree, SkewPoly, SkewRing};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<SkewPoly>,
}

impl SkewMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SkewMatrix {
            rows,
            cols,
            entries: vec![SkewPoly::zero(); rows * cols],
        }
    }

    pub fn identity(ring: &SkewRing, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Panics on ragged input. An empty slice gives a `0 × 0` matrix.
    pub fn from_rows(rows: Vec<Vec<SkewPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        SkewMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> SkewPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        SkewMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &SkewPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: SkewPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[SkewPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SkewPoly::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &SkewPoly> {
        self.entries.iter()
    }

    /// Copies `block` into position `(i0, j0)`.
    pub fn set_block(&mut self, i0: usize, j0: usize, block: &SkewMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.get(i, j).clone());
            }
        }
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SkewMatrix {
        SkewMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_i ← row_i − q · row_k`.
    pub fn row_sub_left_multiple(&mut self, ring: &SkewRing, i: usize, q: &SkewPoly, k: usize) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let src = self.get(k, j);
            if src.is_zero() {
                continue;
            }
            let v = self.get(i, j).sub(&ring.mul(q, src));
            self.set(i, j, v);
        }
    }

    /// `col_j ← col_j − col_k · q`.
    pub fn col_sub_right_multiple(&mut self, ring: &SkewRing, j: usize, k: usize, q: &SkewPoly) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let src = self.get(i, k);
            if src.is_zero() {
                continue;
            }
            let v = self.get(i, j).sub(&ring.mul(src, q));
            self.set(i, j, v);
        }
    }

    /// `row_i ← a · row_i` for a scalar `a`.
    pub fn scale_row_left(&mut self, i: usize, a: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale_left(a);
            self.set(i, j, v);
        }
    }

    /// `col_j ← col_j · a` for a scalar `a`.
    pub fn scale_col_right(&mut self, ring: &SkewRing, j: usize, a: &Scalar) {
        for i in 0..self.rows {
            let v = ring.scale_right(self.get(i, j), a);
            self.set(i, j, v);
        }
    }

    /// `row_i ← u · row_i − v · row_k`.
    fn row_combine(&mut self, ring: &SkewRing, i: usize, u: &SkewPoly, v: &SkewPoly, k: usize) {
        for j in 0..self.cols {
            let a = ring.mul(u, self.get(i, j));
            let b = ring.mul(v, self.get(k, j));
            self.set(i, j, a.sub(&b));
        }
    }

    pub fn mul(&self, ring: &SkewRing, other: &SkewMatrix) -> Result<SkewMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = SkewMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(
                "cannot add matrices of different shapes".into(),
            ));
        }
        Ok(SkewMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> SkewMatrix {
        SkewMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(SkewPoly::neg).collect(),
        }
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack needs equal row counts".into()));
        }
        let mut m = SkewMatrix::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        Ok(m)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack needs equal column counts".into()));
        }
        let mut m = SkewMatrix::zeros(self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        Ok(m)
    }
}

/// Order of a presented module, defined up to a unit `k t^e`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleOrder {
    /// Zero exactly when the module is not torsion.
    pub value: SkewPoly,
    pub degree: Degree,
}

impl ModuleOrder {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Position of the nonzero entry of least degree in rows `from..` and columns `from..`.
fn min_degree_pivot(m: &SkewMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in from..m.rows {
        for j in from..m.cols {
            if let Degree::Finite(d) = m.get(i, j).degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

struct Elimination {
    diagonal: Vec<SkewPoly>,
    multipliers: Vec<SkewPoly>,
    swaps: usize,
}

/// Fraction-free elimination: pivots are chosen by least degree, rows below are
/// cleared with common left multiples `u·a_ik = v·a_kk`.
fn fraction_free(ring: &SkewRing, m: &SkewMatrix) -> Elimination {
    let mut a = m.clone();
    let mut out = Elimination {
        diagonal: Vec::new(),
        multipliers: Vec::new(),
        swaps: 0,
    };
    for k in 0..a.rows.min(a.cols) {
        let Some((pi, pj)) = min_degree_pivot(&a, k) else {
            break;
        };
        out.swap_into(&mut a, k, pi, pj);
        let pivot = a.get(k, k).clone();
        for i in k + 1..a.rows {
            if a.get(i, k).is_zero() {
                continue;
            }
            let (u, v) = ring
                .common_left_multiple(a.get(i, k), &pivot)
                .expect("nonzero operands");
            a.row_combine(ring, i, &u, &v, k);
            debug_assert!(a.get(i, k).is_zero());
            if !u.is_one() {
                out.multipliers.push(u);
            }
        }
        out.diagonal.push(pivot);
    }
    out
}

/// Elimination by Euclidean row sweeps `row_i ← row_i − q·row_k`: every step is
/// the `u = 1` case of [`fraction_free`], so no multipliers are recorded and
/// coefficients in `K` stay far smaller.
fn euclidean(ring: &SkewRing, m: &SkewMatrix) -> Elimination {
    let mut a = m.clone();
    let mut out = Elimination {
        diagonal: Vec::new(),
        multipliers: Vec::new(),
        swaps: 0,
    };
    for k in 0..a.rows.min(a.cols) {
        let Some((pi, pj)) = min_degree_pivot(&a, k) else {
            break;
        };
        out.swap_into(&mut a, k, pi, pj);
        loop {
            let pivot = a.get(k, k).clone();
            for i in k + 1..a.rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let (q, _) = ring
                    .left_divide(a.get(i, k), &pivot)
                    .expect("nonzero pivot");
                a.row_sub_left_multiple(ring, i, &q, k);
                if let Some(s) = monic_left(a.get(i, k)) {
                    a.scale_row_left(i, &s);
                    out.multipliers.push(SkewPoly::term(s, 0));
                }
            }
            // Any remainder has lower degree than the pivot and takes its place.
            let next = (k + 1..a.rows)
                .filter_map(|i| a.get(i, k).degree().finite().map(|d| (d, i)))
                .min();
            match next {
                None => break,
                Some((_, i)) => out.swap_into(&mut a, k, i, k),
            }
        }
        out.diagonal.push(a.get(k, k).clone());
    }
    out
}

impl Elimination {
    fn swap_into(&mut self, a: &mut SkewMatrix, k: usize, pi: usize, pj: usize) {
        if pi != k {
            a.swap_rows(pi, k);
            self.swaps += 1;
        }
        if pj != k {
            a.swap_cols(pj, k);
            self.swaps += 1;
        }
    }
}

/// `s` with `s · f` monic, unless `f` is zero or already monic.
fn monic_left(f: &SkewPoly) -> Option<Scalar> {
    let (_, lc) = f.leading()?;
    (!lc.is_one()).then(|| lc.inv())
}

/// `s` with `f · s` monic, unless `f` is zero or already monic.
fn monic_right(ring: &SkewRing, f: &SkewPoly) -> Option<Scalar> {
    let (h, lc) = f.leading()?;
    (!lc.is_one()).then(|| ring.gamma(-h, &lc.inv()))
}

/// Rank over the quotient field `K_γ(t)`.
pub fn matrix_rank(ring: &SkewRing, m: &SkewMatrix) -> usize {
    euclidean(ring, m).diagonal.len()
}

/// Dieudonné determinant of a square matrix; `None` when the matrix is singular.
///
/// Computed by Euclidean row sweeps, so the value is the product of the
/// triangular diagonal. The sign of the row and column swaps is folded into the
/// first factor, so in a commutative ring the reduced value is the classical
/// determinant.
pub fn dieudonne_det(ring: &SkewRing, m: &SkewMatrix) -> Result<Option<AbelianizedUnit>> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    Ok(unit_from(euclidean(ring, m), m.rows))
}

/// The same determinant as `{diagonal} / {row multipliers}` from lclm-based
/// fraction-free elimination. Much slower over `Q(x_1, …, x_m)`; kept as a
/// cross-check.
pub fn dieudonne_det_fraction_free(
    ring: &SkewRing,
    m: &SkewMatrix,
) -> Result<Option<AbelianizedUnit>> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    Ok(unit_from(fraction_free(ring, m), m.rows))
}

fn unit_from(e: Elimination, n: usize) -> Option<AbelianizedUnit> {
    if e.diagonal.len() < n {
        return None;
    }
    let mut numerators = e.diagonal;
    if e.swaps % 2 == 1 {
        match numerators.first_mut() {
            Some(first) => *first = first.neg(),
            None => unreachable!("swaps need at least one row"),
        }
    }
    Some(AbelianizedUnit::new(numerators, e.multipliers))
}

/// Order of the module presented by `P` (`K^s → K^r → H → 0`).
///
/// Column sweeps bring `P` to `[L 0]` with `L` lower triangular; the order is
/// the product of the diagonal of `L`, which agrees with the diagonal form up
/// to `k t^e`.
pub fn module_order(ring: &SkewRing, p: &SkewMatrix) -> ModuleOrder {
    match triangular_diagonal(ring, p) {
        None => ModuleOrder {
            value: SkewPoly::zero(),
            degree: Degree::Infinite,
        },
        Some(diagonal) => {
            let degree = diagonal.iter().map(|d| d.degree().finite().unwrap()).sum();
            ModuleOrder {
                value: ring.product(&diagonal),
                degree: Degree::Finite(degree),
            }
        }
    }
}

/// Diagonal of `L` in `P·Q = [L 0]`, or `None` when `P` has rank below its row count.
fn triangular_diagonal(ring: &SkewRing, p: &SkewMatrix) -> Option<Vec<SkewPoly>> {
    let (e, pivot_rows) = echelon(ring, p, None);
    if pivot_rows.len() < p.rows {
        return None;
    }
    Some(
        pivot_rows
            .iter()
            .enumerate()
            .map(|(k, &i)| e.get(i, k).clone())
            .collect(),
    )
}

/// Determinant of a full-rank `r × s` matrix (`r ≤ s`) via its `(D 0)` form, up to `k t^e`.
pub fn det_fullrank_rect(ring: &SkewRing, m: &SkewMatrix) -> Result<AbelianizedUnit> {
    if m.rows > m.cols {
        return Err(Error::Shape(format!(
            "{}x{} matrix has more rows than columns",
            m.rows, m.cols
        )));
    }
    let Some(diagonal) = triangular_diagonal(ring, m) else {
        return Err(Error::RankDeficient {
            rank: matrix_rank(ring, m),
            rows: m.rows,
        });
    };
    let mut u = AbelianizedUnit::new(diagonal, Vec::new());
    u.unit_ambiguous = true;
    Ok(u)
}

/// Column echelon form `M·Q = E` with `Q` invertible over `K_γ[t^±1]`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub echelon: SkewMatrix,
    pub q: SkewMatrix,
    pub q_inv: SkewMatrix,
    /// Pivot rows; column `k` of `echelon` has its pivot at `pivot_rows[k]`
    /// and vanishes in rows `pivot_rows[..k]`.
    pub pivot_rows: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

pub fn column_echelon(ring: &SkewRing, m: &SkewMatrix) -> ColumnEchelon {
    let mut q = SkewMatrix::identity(ring, m.cols);
    let mut q_inv = SkewMatrix::identity(ring, m.cols);
    let (echelon, pivot_rows) = echelon(ring, m, Some((&mut q, &mut q_inv)));
    ColumnEchelon {
        echelon,
        q,
        q_inv,
        pivot_rows,
    }
}

/// Column sweeps, optionally recording `Q` and `Q^{-1}`.
fn echelon(
    ring: &SkewRing,
    m: &SkewMatrix,
    mut track: Option<(&mut SkewMatrix, &mut SkewMatrix)>,
) -> (SkewMatrix, Vec<usize>) {
    let mut e = m.clone();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut p = 0;
    while p < e.cols {
        // Full pivoting: the next row is the one holding the least-degree entry.
        let best = (0..e.rows)
            .filter(|i| !pivot_rows.contains(i))
            .flat_map(|i| (p..e.cols).map(move |j| (i, j)))
            .filter_map(|(i, j)| e.get(i, j).degree().finite().map(|d| (d, i, j)))
            .min();
        let Some((_, i, _)) = best else { break };
        loop {
            let best = (p..e.cols)
                .filter_map(|j| e.get(i, j).degree().finite().map(|d| (d, j)))
                .min();
            let Some((_, j)) = best else {
                unreachable!("row {i} has a nonzero entry")
            };
            e.swap_cols(j, p);
            if let Some((q, q_inv)) = track.as_mut() {
                q.swap_cols(j, p);
                q_inv.swap_rows(j, p);
            }
            let pivot = e.get(i, p).clone();
            let mut clean = true;
            for c in p + 1..e.cols {
                if e.get(i, c).is_zero() {
                    continue;
                }
                let (quot, r) = ring
                    .right_divide(e.get(i, c), &pivot)
                    .expect("nonzero pivot");
                e.col_sub_right_multiple(ring, c, p, &quot);
                if let Some((q, q_inv)) = track.as_mut() {
                    q.col_sub_right_multiple(ring, c, p, &quot);
                    // Q ← Q·(I − quot·E_pc), so Q^{-1} ← (I + quot·E_pc)·Q^{-1}.
                    q_inv.row_sub_left_multiple(ring, p, &quot.neg(), c);
                }
                // Keeping remainders monic stops coefficient growth in `K`.
                if let Some(s) = monic_right(ring, e.get(i, c)) {
                    e.scale_col_right(ring, c, &s);
                    if let Some((q, q_inv)) = track.as_mut() {
                        q.scale_col_right(ring, c, &s);
                        q_inv.scale_row_left(c, &s.inv());
                    }
                }
                clean &= r.is_zero();
            }
            if clean {
                pivot_rows.push(i);
                p += 1;
                break;
            }
        }
    }
    (e, pivot_rows)
}

/// Columns forming a basis of `ker M` (a free direct summand).
pub fn kernel_basis(ring: &SkewRing, m: &SkewMatrix) -> SkewMatrix {
    let ce = column_echelon(ring, m);
    let cols: Vec<usize> = (ce.rank()..m.cols).collect();
    let rows: Vec<usize> = (0..m.cols).collect();
    ce.q.select(&rows, &cols)
}

/// Constant matrix over the coefficient field `K`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl ConstMatrix {
    pub fn identity(ring: &SkewRing, n: usize) -> Self {
        let mut entries = vec![ring.spec().zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ring.spec().one();
        }
        ConstMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("constant matrix must be square".into()));
        }
        Ok(ConstMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn mul(&self, other: &ConstMatrix) -> ConstMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.get(i, 0) * other.get(0, j);
                for k in 1..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        ConstMatrix { n, entries }
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> ConstMatrix {
        ConstMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                if i == j {
                    self.get(i, j).is_one()
                } else {
                    self.get(i, j).is_zero()
                }
            })
        })
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self, ring: &SkewRing) -> Option<ConstMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = ConstMatrix::identity(ring, n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            for j in 0..n {
                a.entries.swap(k * n + j, p * n + j);
                inv.entries.swap(k * n + j, p * n + j);
            }
            let s = a.get(k, k).inv();
            for j in 0..n {
                a.entries[k * n + j] = &s * a.get(k, j);
                inv.entries[k * n + j] = &s * inv.get(k, j);
            }
            for i in (0..n).filter(|&i| i != k) {
                let f = a.get(i, k).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.entries[i * n + j] = a.get(i, j) - &(&f * a.get(k, j));
                    inv.entries[i * n + j] = inv.get(i, j) - &(&f * inv.get(k, j));
                }
            }
        }
        Some(inv)
    }

    /// `self · t^shift` as a matrix over `K_γ[t^±1]`.
    pub fn to_skew(&self, shift: i64) -> SkewMatrix {
        SkewMatrix::from_fn(self.n, self.n, |i, j| {
            SkewPoly::term(self.get(i, j).clone(), shift)
        })
    }
}
