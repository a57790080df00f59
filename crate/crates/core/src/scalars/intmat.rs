use alloc::vec;
use alloc::vec::Vec;

/// Small square integer matrix, used for the monomial automorphism of `Q(x_1..x_m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { n, entries }
    }

    /// Panics if the rows are ragged or not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = a
                        .checked_mul(other.get(k, j))
                        .expect("automorphism power overflows i64");
                    entries[i * n + j] = entries[i * n + j]
                        .checked_add(v)
                        .expect("automorphism power overflows i64");
                }
            }
        }
        IntMatrix { n, entries }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0i64, |acc, j| {
                    acc.checked_add(self.get(i, j).checked_mul(v[j]).expect("exponent overflow"))
                        .expect("exponent overflow")
                })
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] =
                        (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        (sign * a[n * n - 1]) as i64
    }

    /// Inverse of a unimodular matrix via the adjugate. `None` unless `det = ±1`.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let n = self.n;
        let det = self.determinant();
        if det != 1 && det != -1 {
            return None;
        }
        if n == 0 {
            return Some(self.clone());
        }
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let cof = if (i + j) % 2 == 0 {
                    minor.determinant()
                } else {
                    -minor.determinant()
                };
                entries[i * n + j] = cof * det;
            }
        }
        Some(IntMatrix { n, entries })
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                entries.push(self.get(i, j));
            }
        }
        IntMatrix { n: n - 1, entries }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, mut k: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}
