//! Dense exact linear algebra over [`Scalar`]: elimination, rank, kernels,
//! solving, inverses, congruence diagonalization, and a verified modular
//! rank for large integer matrices.

use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Diagonal matrix from integer entries.
    pub fn diag_int(entries: &[i64]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, Scalar::from_int(e));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j)
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j)
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
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
                    let cur = out.get(i, j).clone() + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot column list.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).clone() - &(&factor * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank_exact(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Rank: exact for small matrices, verified-modular for large real
    /// integer-clearable ones (three large primes must agree).
    pub fn rank(&self) -> usize {
        const EXACT_LIMIT: usize = 20_000;
        if self.rows * self.cols <= EXACT_LIMIT || self.data.iter().any(|s| !s.is_real()) {
            self.rank_exact()
        } else {
            self.rank_modular_verified()
        }
    }

    /// Multi-prime modular rank of a real matrix. The rank mod any prime is
    /// a lower bound on the rational rank, with equality for all but the
    /// finitely many primes dividing every maximal nonzero minor; agreement
    /// across three independent ~2^31 primes is required.
    pub fn rank_modular_verified(&self) -> usize {
        const PRIMES: [u64; 5] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579, 2_147_483_563];
        let mut ranks = Vec::new();
        let mut used = 0;
        for &p in PRIMES.iter() {
            if let Some(r) = self.rank_mod(p) {
                ranks.push(r);
                used += 1;
                if used == 3 {
                    break;
                }
            }
        }
        assert!(ranks.len() == 3, "too many bad primes for modular rank");
        assert!(
            ranks.windows(2).all(|w| w[0] == w[1]),
            "modular ranks disagree: {:?}",
            ranks
        );
        ranks[0]
    }

    /// Rank mod `p`; `None` when `p` divides a denominator (bad prime).
    fn rank_mod(&self, p: u64) -> Option<usize> {
        let pb = BigInt::from(p);
        let reduce = |x: &BigInt| -> u64 {
            let m = x.mod_floor(&pb);
            m.to_u64().expect("residue fits u64")
        };
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let s = self.get(i, j);
                debug_assert!(s.is_real());
                let num = reduce(s.re.numer());
                let den = reduce(s.re.denom());
                if den == 0 {
                    return None;
                }
                row.push(mulmod(num, inv_mod(den, p), p));
            }
            m.push(row);
        }
        let mut rank = 0;
        let rows = self.rows;
        let cols = self.cols;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = inv_mod(m[rank][c], p);
            for j in c..cols {
                m[rank][j] = mulmod(m[rank][j], inv, p);
            }
            for i in (rank + 1)..rows {
                let f = m[i][c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = mulmod(f, m[rank][j], p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
            rank += 1;
        }
        Some(rank)
    }

    /// Basis of the right kernel, one vector per non-pivot column, in
    /// deterministic column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Scalar::zero();
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(c * n + j, pr * n + j);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            let inv = pivot.inv();
            for i in (c + 1)..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j).clone() - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
    }

    /// Sylvester signature (positives, negatives, zeros) of a symmetric
    /// real matrix, by congruence diagonalization with exact pivoting.
    pub fn signature(&self) -> (usize, usize, usize) {
        assert_eq!(self.rows, self.cols);
        assert!(self.data.iter().all(Scalar::is_real), "signature over Q only");
        let n = self.rows;
        let mut m = self.clone();
        let mut pos = 0;
        let mut neg = 0;
        let mut zero = 0;
        let mut handled = vec![false; n];
        for _ in 0..n {
            // Prefer a nonzero diagonal pivot among unhandled indices.
            let diag = (0..n).find(|&i| !handled[i] && !m.get(i, i).is_zero());
            let k = match diag {
                Some(k) => k,
                None => {
                    // All remaining diagonal entries zero: either the whole
                    // remaining block is zero, or create a diagonal entry by
                    // a symmetric row/column operation.
                    let mut found = None;
                    'outer: for i in 0..n {
                        if handled[i] {
                            continue;
                        }
                        for j in 0..n {
                            if !handled[j] && i != j && !m.get(i, j).is_zero() {
                                found = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    match found {
                        None => {
                            zero = n - pos - neg;
                            break;
                        }
                        Some((i, j)) => {
                            // row_i += row_j ; col_i += col_j keeps symmetry and
                            // makes m[i][i] = 2 m[i][j] != 0.
                            for c in 0..n {
                                let v = m.get(i, c).clone() + m.get(j, c);
                                m.set(i, c, v);
                            }
                            for r in 0..n {
                                let v = m.get(r, i).clone() + m.get(r, j);
                                m.set(r, i, v);
                            }
                            i
                        }
                    }
                }
            };
            let pivot = m.get(k, k).clone();
            if pivot.real_sign() > 0 {
                pos += 1;
            } else {
                neg += 1;
            }
            let inv = pivot.inv();
            // Clear row/column k symmetrically.
            let others: Vec<usize> = (0..n).filter(|&i| i != k && !handled[i]).collect();
            for &i in &others {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k) * &inv;
                for c in 0..n {
                    let v = m.get(i, c).clone() - &(&f * m.get(k, c));
                    m.set(i, c, v);
                }
                for r in 0..n {
                    let v = m.get(r, i).clone() - &(&f * m.get(r, k));
                    m.set(r, i, v);
                }
            }
            handled[k] = true;
        }
        if pos + neg + zero < n {
            zero = n - pos - neg;
        }
        (pos, neg, zero)
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: p prime, a != 0 mod p.
    assert!(a % p != 0);
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// A subspace of K^n stored as the reduced row echelon basis of its span
/// (unique for a given subspace, so equality is structural equality).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn from_spanning(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient));
        if vectors.is_empty() {
            return Subspace {
                ambient,
                rows: Vec::new(),
            };
        }
        let mut m = Matrix::from_rows(vectors.to_vec());
        let pivots = m.rref();
        let rows = (0..pivots.len()).map(|i| m.row(i)).collect();
        Subspace { ambient, rows }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let vecs: Vec<Vec<Scalar>> = (0..ambient)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace::from_spanning(ambient, &vecs)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut vecs = self.rows.clone();
        vecs.push(v.to_vec());
        Subspace::from_spanning(self.ambient, &vecs).dim() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vecs = self.rows.clone();
        vecs.extend(other.rows.iter().cloned());
        Subspace::from_spanning(self.ambient, &vecs)
    }

    /// Standard basis vectors completing this subspace to the full space
    /// (deterministic: lowest indices first).
    pub fn echelon_complement(&self) -> Vec<Vec<Scalar>> {
        let mut current = self.clone();
        let mut out = Vec::new();
        for i in 0..self.ambient {
            if current.dim() == self.ambient {
                break;
            }
            let mut e = vec![Scalar::zero(); self.ambient];
            e[i] = Scalar::one();
            if !current.contains(&e) {
                let mut vecs = current.rows.clone();
                vecs.push(e.clone());
                current = Subspace::from_spanning(self.ambient, &vecs);
                out.push(e);
            }
        }
        out
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}
