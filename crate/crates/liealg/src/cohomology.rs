//! Chevalley-Eilenberg complex with adjoint coefficients: the coboundary
//! delta_p, cohomology dimensions, derivations, the Gerstenhaber circle
//! product and graded bracket, and the Rim quadratic map.
//!
//! Sign convention: delta_p is (-1)^(p+1) times the uniform two-sum
//! formula, which makes delta_0 X = ad X, keeps delta.delta = 0, and gives
//! delta(phi) = mu o phi + phi o mu on 2-cochains.

use crate::combo::{binomial, combinations, combo_rank, sort_signed};
use crate::core::{LieAlgebra, LieError};
use crate::linalg::{basis_vector, Matrix, Subspace};
use crate::scalar::Scalar;

/// One nonzero coefficient of a cochain in the interchange format:
/// Phi(e_{i1}, ..., e_{ip}) has coefficient c on e_k, indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CochainEntryJson {
    pub idx: Vec<usize>,
    pub k: usize,
    pub c: Scalar,
}

/// The cochain interchange format; the ambient dimension comes from the
/// accompanying algebra.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CochainJson {
    pub p: usize,
    pub entries: Vec<CochainEntryJson>,
}

/// Alternating p-linear map g^p -> g, stored as coefficients
/// Phi^k_{i1..ip} at index combo_rank(i1<..<ip) * n + k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdjointCochain {
    pub n: usize,
    pub p: usize,
    pub coeffs: Vec<Scalar>,
}

impl AdjointCochain {
    pub fn zero(n: usize, p: usize) -> Self {
        AdjointCochain {
            n,
            p,
            coeffs: vec![Scalar::zero(); binomial(n, p) * n],
        }
    }

    pub fn space_dim(n: usize, p: usize) -> usize {
        binomial(n, p) * n
    }

    /// The multiplication mu itself as a 2-cochain.
    pub fn from_mu(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let mut c = AdjointCochain::zero(n, 2);
        for (ci, pair) in combinations(n, 2).iter().enumerate() {
            for k in 0..n {
                c.coeffs[ci * n + k] = g.sc.get(pair[0], pair[1], k);
            }
        }
        c
    }

    /// A 1-cochain from an endomorphism matrix (column j = image of e_j).
    pub fn from_matrix(m: &Matrix) -> Self {
        let n = m.rows;
        assert_eq!(m.cols, n);
        let mut c = AdjointCochain::zero(n, 1);
        for j in 0..n {
            for k in 0..n {
                c.coeffs[j * n + k] = m.get(k, j).clone();
            }
        }
        c
    }

    /// The endomorphism matrix of a 1-cochain.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.p, 1);
        let n = self.n;
        Matrix::from_fn(n, n, |k, j| self.coeffs[j * n + k].clone())
    }

    pub fn from_coeffs(n: usize, p: usize, coeffs: Vec<Scalar>) -> Self {
        assert_eq!(coeffs.len(), Self::space_dim(n, p));
        AdjointCochain { n, p, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Interchange form: one entry per nonzero coefficient, 1-based indices.
    pub fn to_json(&self) -> CochainJson {
        let mut entries = Vec::new();
        for (ci, combo) in combinations(self.n, self.p).iter().enumerate() {
            for k in 0..self.n {
                let c = &self.coeffs[ci * self.n + k];
                if !c.is_zero() {
                    entries.push(CochainEntryJson {
                        idx: combo.iter().map(|i| i + 1).collect(),
                        k: k + 1,
                        c: c.clone(),
                    });
                }
            }
        }
        CochainJson { p: self.p, entries }
    }

    /// Imports the interchange form for an n-dimensional algebra.
    pub fn from_json(n: usize, data: &CochainJson) -> Result<AdjointCochain, LieError> {
        let mut out = AdjointCochain::zero(n, data.p);
        for e in &data.entries {
            if e.idx.len() != data.p
                || e.k == 0
                || e.k > n
                || e.idx.iter().any(|&i| i == 0 || i > n)
                || e.idx.windows(2).any(|w| w[0] >= w[1])
            {
                return Err(LieError::Precondition(format!(
                    "cochain entry {:?} -> {} is not 1-based strictly increasing",
                    e.idx, e.k
                )));
            }
            let combo: Vec<usize> = e.idx.iter().map(|i| i - 1).collect();
            out.set(&combo, e.k - 1, e.c.clone());
        }
        Ok(out)
    }

    pub fn set(&mut self, combo: &[usize], k: usize, v: Scalar) {
        let (sorted, sign) = sort_signed(combo).expect("repeated index in cochain set");
        let idx = combo_rank(self.n, &sorted) * self.n + k;
        self.coeffs[idx] = if sign < 0 { -v } else { v };
    }

    /// Value on a sorted basis tuple, as a coordinate vector.
    pub fn eval_sorted(&self, combo: &[usize]) -> Vec<Scalar> {
        let base = combo_rank(self.n, combo) * self.n;
        self.coeffs[base..base + self.n].to_vec()
    }

    /// Value on an arbitrary basis tuple (antisymmetry handled).
    pub fn eval_basis(&self, indices: &[usize]) -> Vec<Scalar> {
        match sort_signed(indices) {
            None => vec![Scalar::zero(); self.n],
            Some((sorted, sign)) => {
                let v = self.eval_sorted(&sorted);
                if sign < 0 {
                    v.into_iter().map(|x| -x).collect()
                } else {
                    v
                }
            }
        }
    }

    pub fn add(&self, other: &AdjointCochain) -> AdjointCochain {
        assert_eq!((self.n, self.p), (other.n, other.p));
        AdjointCochain {
            n: self.n,
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &AdjointCochain) -> AdjointCochain {
        assert_eq!((self.n, self.p), (other.n, other.p));
        AdjointCochain {
            n: self.n,
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> AdjointCochain {
        AdjointCochain {
            n: self.n,
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> AdjointCochain {
        AdjointCochain {
            n: self.n,
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// delta_p Phi = (-1)^(p+1) [ sum_l (-1)^(l+1) mu(Y_l, Phi(.. Y_l ..))
///                          + sum_{r<s} (-1)^(r+s) Phi(mu(Y_r,Y_s), ..) ].
pub fn delta(g: &LieAlgebra, phi: &AdjointCochain) -> AdjointCochain {
    let n = g.dim();
    assert_eq!(phi.n, n);
    let p = phi.p;
    let mut out = AdjointCochain::zero(n, p + 1);
    if p + 1 > n {
        return out;
    }
    // Overall factor (-1)^(p+1): negative exactly when p is even.
    let global_neg = p % 2 == 0;
    for (ti, tuple) in combinations(n, p + 1).iter().enumerate() {
        let mut acc = vec![Scalar::zero(); n];
        // First sum: positions l (0-based), 1-based sign (-1)^(l+2) = (-1)^l.
        for l in 0..=p {
            let rest: Vec<usize> = tuple
                .iter()
                .enumerate()
                .filter(|&(pos, _)| pos != l)
                .map(|(_, &v)| v)
                .collect();
            let inner = phi.eval_basis(&rest);
            if inner.iter().all(Scalar::is_zero) {
                continue;
            }
            let term = g.bracket(&basis_vector(n, tuple[l]), &inner);
            if l % 2 == 0 {
                for (a, t) in acc.iter_mut().zip(&term) {
                    *a += t;
                }
            } else {
                for (a, t) in acc.iter_mut().zip(&term) {
                    *a -= t;
                }
            }
        }
        // Second sum: 0-based (r,s), 1-based sign (-1)^(r+s+2) = (-1)^(r+s).
        for r in 0..=p {
            for s in (r + 1)..=p {
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(pos, _)| pos != r && pos != s)
                    .map(|(_, &v)| v)
                    .collect();
                for k in 0..n {
                    let c = g.sc.get(tuple[r], tuple[s], k);
                    if c.is_zero() {
                        continue;
                    }
                    let mut args = Vec::with_capacity(p);
                    args.push(k);
                    args.extend(rest.iter().copied());
                    let inner = phi.eval_basis(&args);
                    if (r + s) % 2 == 0 {
                        for (a, t) in acc.iter_mut().zip(&inner) {
                            if !t.is_zero() {
                                *a += &(&c * t);
                            }
                        }
                    } else {
                        for (a, t) in acc.iter_mut().zip(&inner) {
                            if !t.is_zero() {
                                *a -= &(&c * t);
                            }
                        }
                    }
                }
            }
        }
        for (k, v) in acc.into_iter().enumerate() {
            out.coeffs[ti * n + k] = if global_neg { -v } else { v };
        }
    }
    out
}

/// The matrix of delta_p : C^p -> C^(p+1) in the lexicographic cochain
/// basis (columns built one basis cochain at a time).
pub fn delta_matrix(g: &LieAlgebra, p: usize) -> Matrix {
    let n = g.dim();
    let dom = AdjointCochain::space_dim(n, p);
    let cod = AdjointCochain::space_dim(n, p + 1);
    let mut m = Matrix::zeros(cod, dom);
    for col in 0..dom {
        let mut basis = AdjointCochain::zero(n, p);
        basis.coeffs[col] = Scalar::one();
        let image = delta(g, &basis);
        for row in 0..cod {
            if !image.coeffs[row].is_zero() {
                m.set(row, col, image.coeffs[row].clone());
            }
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CohomologyReport {
    pub p: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

pub fn cohomology_dims(g: &LieAlgebra, p: usize) -> CohomologyReport {
    let n = g.dim();
    let dim_cp = AdjointCochain::space_dim(n, p);
    let rank_out = if p >= n {
        0
    } else {
        delta_matrix(g, p).rank()
    };
    let dim_z = dim_cp - rank_out;
    let dim_b = if p == 0 || p > n {
        0
    } else {
        delta_matrix(g, p - 1).rank()
    };
    CohomologyReport {
        p,
        dim_z,
        dim_b,
        dim_h: dim_z - dim_b,
    }
}

/// Echelonized basis of Der(g) = Z^1(g,g), as endomorphism matrices.
pub fn derivations(g: &LieAlgebra) -> Vec<Matrix> {
    let kernel = delta_matrix(g, 1).kernel_basis();
    let sub = Subspace::from_spanning(g.dim() * g.dim(), &kernel);
    sub.basis()
        .iter()
        .map(|v| AdjointCochain::from_coeffs(g.dim(), 1, v.clone()).to_matrix())
        .collect()
}

/// Echelonized basis of B^1 = ad(g).
pub fn inner_derivations(g: &LieAlgebra) -> Vec<Matrix> {
    let n = g.dim();
    let vecs: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut basis = AdjointCochain::zero(n, 0);
            basis.coeffs[i] = Scalar::one();
            delta(g, &basis).coeffs
        })
        .collect();
    let sub = Subspace::from_spanning(n * n, &vecs);
    sub.basis()
        .iter()
        .map(|v| AdjointCochain::from_coeffs(n, 1, v.clone()).to_matrix())
        .collect()
}

/// dim O(mu) = n^2 - dim Der(mu), which also equals dim B^2.
pub fn orbit_dimension(g: &LieAlgebra) -> usize {
    let n = g.dim();
    n * n - derivations(g).len()
}

/// Shuffle circle product: for f of arity p and g of arity q, (g o f) has
/// arity p+q-1 and value
/// sum over p-subsets S of positions, sgn(S, rest) g(f(X_S), X_rest).
pub fn circle_general(g_alg: &LieAlgebra, outer: &AdjointCochain, inner: &AdjointCochain) -> AdjointCochain {
    let n = g_alg.dim();
    let (q, p) = (outer.p, inner.p);
    assert!(q >= 1, "outer cochain must take at least one argument");
    let arity = p + q - 1;
    let mut out = AdjointCochain::zero(n, arity);
    if arity > n {
        return out;
    }
    let positions: Vec<Vec<usize>> = combinations(arity, p);
    for (ti, tuple) in combinations(n, arity).iter().enumerate() {
        let mut acc = vec![Scalar::zero(); n];
        for subset in &positions {
            // Shuffle sign of (subset, complement) as a permutation of
            // 0..arity: count inversions between the two blocks.
            let rest: Vec<usize> = (0..arity).filter(|pos| !subset.contains(pos)).collect();
            let mut inv = 0usize;
            for &a in subset {
                for &b in &rest {
                    if b < a {
                        inv += 1;
                    }
                }
            }
            let sign_neg = inv % 2 == 1;
            let inner_args: Vec<usize> = subset.iter().map(|&pos| tuple[pos]).collect();
            let inner_val = inner.eval_basis(&inner_args);
            // Expand g(inner_val, X_rest) linearly over the basis.
            for (k, c) in inner_val.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut outer_args = Vec::with_capacity(q);
                outer_args.push(k);
                outer_args.extend(rest.iter().map(|&pos| tuple[pos]));
                let v = outer.eval_basis(&outer_args);
                for (a, t) in acc.iter_mut().zip(&v) {
                    if !t.is_zero() {
                        let term = c * t;
                        if sign_neg {
                            *a -= &term;
                        } else {
                            *a += &term;
                        }
                    }
                }
            }
        }
        for (k, v) in acc.into_iter().enumerate() {
            out.coeffs[ti * n + k] = v;
        }
    }
    out
}

/// Cyclic circle product of 2-cochains:
/// (phi o psi)(X,Y,Z) = phi(psi(X,Y),Z) + phi(psi(Y,Z),X) + phi(psi(Z,X),Y).
pub fn circle(g: &LieAlgebra, phi: &AdjointCochain, psi: &AdjointCochain) -> AdjointCochain {
    assert_eq!(phi.p, 2);
    assert_eq!(psi.p, 2);
    circle_general(g, phi, psi)
}

/// Graded bracket [f,g] = f o g - (-1)^((p-1)(q-1)) g o f.
pub fn graded_bracket(
    g_alg: &LieAlgebra,
    f: &AdjointCochain,
    g: &AdjointCochain,
) -> AdjointCochain {
    let fg = circle_general(g_alg, f, g);
    let gf = circle_general(g_alg, g, f);
    if (f.p + 1) % 2 == 1 && (g.p + 1) % 2 == 1 {
        // (p-1)(q-1) odd: plus sign.
        fg.add(&gf)
    } else {
        fg.sub(&gf)
    }
}

#[derive(Clone, Debug)]
pub struct RimSquare {
    pub zero_in_h3: bool,
    pub representative: AdjointCochain,
    pub witness: Option<AdjointCochain>,
}

/// The Rim quadratic map sq([phi]) = [phi o phi] in H^3: solvable iff the
/// order-2 obstruction vanishes.
pub fn rim_sq(g: &LieAlgebra, phi: &AdjointCochain) -> Result<RimSquare, LieError> {
    assert_eq!(phi.p, 2);
    if !delta(g, phi).is_zero() {
        return Err(LieError::Precondition("phi is not a 2-cocycle".to_string()));
    }
    let square = circle(g, phi, phi);
    if square.is_zero() {
        return Ok(RimSquare {
            zero_in_h3: true,
            representative: square.clone(),
            witness: Some(AdjointCochain::zero(g.dim(), 2)),
        });
    }
    let d2 = delta_matrix(g, 2);
    match d2.solve(&square.coeffs) {
        Some(psi) => Ok(RimSquare {
            zero_in_h3: true,
            representative: square,
            witness: Some(AdjointCochain::from_coeffs(g.dim(), 2, psi)),
        }),
        None => Ok(RimSquare {
            zero_in_h3: false,
            representative: square,
            witness: None,
        }),
    }
}
