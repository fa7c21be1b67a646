//! Built-in constructors for the named algebras used throughout the crate,
//! plus a matrix-commutator closure builder.

use crate::core::{FieldTag, LieAlgebra, LieError, StructureConstants};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

fn build(sc: StructureConstants, name: &str) -> LieAlgebra {
    LieAlgebra::new(sc, FieldTag::Q, Some(name.to_string()))
        .unwrap_or_else(|e| panic!("catalog entry {name} fails Jacobi: {e}"))
}

/// The abelian algebra of dimension n (n = 0 is allowed).
pub fn abelian(n: usize) -> LieAlgebra {
    build(StructureConstants::new(n), &format!("abelian({n})"))
}

/// The 2-dimensional affine algebra: mu(e1, e2) = e2.
pub fn aff2() -> LieAlgebra {
    let mut sc = StructureConstants::new(2);
    sc.set_int(0, 1, 1, 1);
    build(sc, "aff2")
}

/// Heisenberg algebra of dimension 2p+1: mu(e_{2i+1}, e_{2i+2}) = e_{2p+1}.
pub fn heisenberg(p: usize) -> LieAlgebra {
    assert!(p >= 1, "heisenberg requires p >= 1");
    let n = 2 * p + 1;
    let mut sc = StructureConstants::new(n);
    for i in 0..p {
        sc.set_int(2 * i, 2 * i + 1, n - 1, 1);
    }
    build(sc, &format!("heisenberg({p})"))
}

/// Model filiform algebra L_n: mu(e1, e_i) = e_{i+1} for i = 2..n-1.
pub fn filiform_model(n: usize) -> LieAlgebra {
    assert!(n >= 3, "filiform model requires n >= 3");
    let mut sc = StructureConstants::new(n);
    for i in 1..(n - 1) {
        sc.set_int(0, i, i + 1, 1);
    }
    build(sc, &format!("filiform_model({n})"))
}

/// The 4-dimensional filiform [e1,e2]=e3, [e1,e3]=e4 (degeneration target).
pub fn filiform4_target() -> LieAlgebra {
    let mut g = filiform_model(4);
    g.name = Some("filiform4_target".to_string());
    g
}

/// [e1,e2]=e2, [e3,e4]=e4: the solvable direct sum aff2 + aff2.
pub fn four_dim_solvable() -> LieAlgebra {
    let mut sc = StructureConstants::new(4);
    sc.set_int(0, 1, 1, 1);
    sc.set_int(2, 3, 3, 1);
    build(sc, "four_dim_solvable")
}

/// sl(2) from trace-zero 2x2 matrices, basis (H, E, F).
pub fn sl2() -> LieAlgebra {
    let e = |i: usize, j: usize| {
        let mut m = Matrix::zeros(2, 2);
        m.set(i, j, Scalar::one());
        m
    };
    let h = e(0, 0).sub(&e(1, 1));
    let mut g = commutator_algebra(&[h, e(0, 1), e(1, 0)]).expect("sl2 closes");
    g.name = Some("sl2".to_string());
    g
}

/// so(3) in the cyclic basis [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2.
pub fn so3() -> LieAlgebra {
    let mut sc = StructureConstants::new(3);
    sc.set_int(0, 1, 2, 1);
    sc.set_int(1, 2, 0, 1);
    sc.set_int(2, 0, 1, 1);
    build(sc, "so3")
}

/// Basis E_ij - E_ji (i < j, lexicographic) of the antisymmetric m x m
/// matrices.
pub fn so_matrix_basis(m: usize) -> Vec<Matrix> {
    let mut basis = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let mut b = Matrix::zeros(m, m);
            b.set(i, j, Scalar::one());
            b.set(j, i, -Scalar::one());
            basis.push(b);
        }
    }
    basis
}

/// so(m) in the E_ij - E_ji basis (i < j, lexicographic), with the closed
/// bracket [M_ij, M_kl] = d_jk M_il + d_il M_jk - d_ik M_jl - d_jl M_ik
/// instead of per-pair commutator solves; the two agree (see tests).
pub fn so(m: usize) -> LieAlgebra {
    assert!(m >= 2);
    let idx = |i: usize, j: usize| i * m - i * (i + 1) / 2 + (j - i - 1);
    let n = m * (m - 1) / 2;
    let mut sc = StructureConstants::new(n);
    let add = |sc: &mut StructureConstants, l: usize, p: usize, a: usize, b: usize, sign: i64| {
        if a == b {
            return;
        }
        let (t, s) = if a < b { (idx(a, b), sign) } else { (idx(b, a), -sign) };
        let cur = sc.get(l, p, t) + Scalar::from_int(s);
        sc.set(l, p, t, cur);
    };
    for i in 0..m {
        for j in (i + 1)..m {
            let l = idx(i, j);
            for k in 0..m {
                for q in (k + 1)..m {
                    let p = idx(k, q);
                    if p <= l {
                        continue;
                    }
                    if j == k {
                        add(&mut sc, l, p, i, q, 1);
                    }
                    if i == q {
                        add(&mut sc, l, p, j, k, 1);
                    }
                    if i == k {
                        add(&mut sc, l, p, j, q, -1);
                    }
                    if j == q {
                        add(&mut sc, l, p, i, k, -1);
                    }
                }
            }
        }
    }
    LieAlgebra::new(sc, FieldTag::Q, Some(format!("so({m})"))).expect("so(m) satisfies Jacobi")
}

/// The Poincare algebra (dim 10): translations P_0..P_3 and Lorentz
/// generators M_{mu nu} (mu < nu) for eta = diag(-1,1,1,1), with
/// [M_{mu nu}, P_rho] = eta_{mu rho} P_nu - eta_{nu rho} P_mu.
/// Built from the 5x5 affine matrix representation, so Jacobi is automatic.
pub fn poincare() -> LieAlgebra {
    let eta = [-1i64, 1, 1, 1];
    let mut basis = Vec::new();
    // P_mu: translation columns.
    for mu in 0..4 {
        let mut m = Matrix::zeros(5, 5);
        m.set(mu, 4, Scalar::one());
        basis.push(m);
    }
    // M_{mu nu}: (M)^a_b = delta^a_nu eta_{mu b} - delta^a_mu eta_{nu b},
    // the sign chosen so that [M_{mu nu}, P_rho] matches the display above.
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let mut m = Matrix::zeros(5, 5);
            for b in 0..4 {
                if b == mu {
                    m.set(nu, b, Scalar::from_int(eta[mu]));
                }
                if b == nu {
                    let cur = m.get(mu, b).clone() - &Scalar::from_int(eta[nu]);
                    m.set(mu, b, cur);
                }
            }
            basis.push(m);
        }
    }
    let mut g = commutator_algebra(&basis).expect("poincare closes");
    g.name = Some("poincare".to_string());
    g
}

/// The 11-dimensional rigid algebra, basis (X, X_0, ..., X_9):
/// mu(X, X_i) = i X_i; mu(X_0, X_i) = X_i for i = 4..9;
/// mu(X_1, X_i) = X_{i+1} for i in {2,4,5,6,7,8};
/// mu(X_2, X_i) = X_{i+2} for i in {4,5,6,7}.
pub fn rigid11() -> LieAlgebra {
    let mut sc = StructureConstants::new(11);
    let xi = |i: usize| i + 1; // X_i sits at index i + 1; X at index 0.
    for i in 1..=9 {
        sc.set_int(0, xi(i), xi(i), i as i64);
    }
    for i in 4..=9 {
        sc.set_int(xi(0), xi(i), xi(i), 1);
    }
    for i in [2usize, 4, 5, 6, 7, 8] {
        sc.set_int(xi(1), xi(i), xi(i + 1), 1);
    }
    for i in 4..=7 {
        sc.set_int(xi(2), xi(i), xi(i + 2), 1);
    }
    build(sc, "rigid11")
}

/// The Frobenius model F_phi of dimension 2p, phi of length p-1, from its
/// Maurer-Cartan system:
/// d w1 = w1^w2 + sum_k w_{2k+1}^w_{2k+2}, d w2 = 0,
/// d w_{2k+1} = phi_k w2^w_{2k+1}, d w_{2k+2} = -(1+phi_k) w2^w_{2k+2}.
pub fn frobenius_model(p: usize, phi: &[Scalar]) -> Result<LieAlgebra, LieError> {
    if p < 1 || phi.len() != p - 1 {
        return Err(LieError::Precondition(format!(
            "frobenius_model needs p >= 1 and {} parameters, got {}",
            p.saturating_sub(1),
            phi.len()
        )));
    }
    let n = 2 * p;
    let mut sc = StructureConstants::new(n);
    // d w_k = sum C_ij^k w_i ^ w_j translates each displayed 2-form term
    // directly into a structure constant.
    sc.set_int(0, 1, 0, 1);
    for k in 1..p {
        sc.set_int(2 * k, 2 * k + 1, 0, 1);
        sc.set(1, 2 * k, 2 * k, phi[k - 1].clone());
        sc.set(1, 2 * k + 1, 2 * k + 1, -(Scalar::one() + &phi[k - 1]));
    }
    LieAlgebra::new(sc, FieldTag::Q, Some(format!("frobenius_model({p})")))
}

/// Structure constants of the span of the given independent m x m matrices
/// under the commutator [A,B] = AB - BA; errors when the span is not closed.
pub fn commutator_algebra(basis: &[Matrix]) -> Result<LieAlgebra, LieError> {
    let n = basis.len();
    assert!(n > 0, "empty basis");
    let m = basis[0].rows;
    assert!(basis.iter().all(|b| b.rows == m && b.cols == m));
    let flatten = |mat: &Matrix| -> Vec<Scalar> {
        (0..m)
            .flat_map(|i| (0..m).map(move |j| mat.get(i, j).clone()))
            .collect()
    };
    // Columns of `span` are the flattened basis matrices.
    let span =
        Matrix::from_rows(basis.iter().map(flatten).collect::<Vec<_>>()).transpose();
    if span.rank() < n {
        return Err(LieError::Precondition(
            "matrix basis is linearly dependent".to_string(),
        ));
    }
    let mut sc = StructureConstants::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let comm = basis[i].matmul(&basis[j]).sub(&basis[j].matmul(&basis[i]));
            let coords = span.solve(&flatten(&comm)).ok_or_else(|| {
                LieError::Precondition(format!(
                    "commutator of basis elements {i} and {j} leaves the span"
                ))
            })?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    sc.set(i, j, k, c);
                }
            }
        }
    }
    LieAlgebra::new(sc, FieldTag::Q, None)
}

/// Every named catalog entry (used by catalog-wide property tests).
pub fn all_entries() -> Vec<LieAlgebra> {
    vec![
        abelian(1),
        abelian(2),
        abelian(4),
        aff2(),
        heisenberg(1),
        heisenberg(2),
        filiform_model(4),
        filiform_model(5),
        filiform4_target(),
        four_dim_solvable(),
        sl2(),
        so3(),
        so(4),
        poincare(),
        rigid11(),
        frobenius_model(2, &[Scalar::from_int(1)]).unwrap(),
    ]
}
