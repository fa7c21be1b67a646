//! Geometric structures on a fixed Lie algebra: symplectic forms, pre-Lie
//! (left-symmetric) products and their standard constructions, Yang-Baxter
//! and Rota-Baxter operators, complex structures, generalized complex
//! structures on g + g*, and the symplectic double extension.

use crate::core::{
    exterior_derivative, LieAlgebra, LieError, ScalarForm, StructureConstants,
};
use crate::invariants::is_derivation;
use crate::linalg::{basis_vector, vec_is_zero, vec_sub, Matrix, Subspace};
use crate::scalar::Scalar;
use serde::Serialize;

/// The Gram matrix B with B_ij = omega(e_i, e_j) of a 2-form.
fn form_matrix(omega: &ScalarForm) -> Matrix {
    assert_eq!(omega.p, 2);
    Matrix::from_fn(omega.n, omega.n, |i, j| omega.get(&[i, j]))
}

/// A 2-form is symplectic when it is closed and its top wedge power is
/// nonzero. Requires even dimension.
pub fn symplectic_check(g: &LieAlgebra, omega: &ScalarForm) -> Result<bool, LieError> {
    let n = g.dim();
    if n % 2 != 0 || n == 0 {
        return Err(LieError::Precondition(
            "symplectic forms need even positive dimension".to_string(),
        ));
    }
    if omega.n != n || omega.p != 2 {
        return Err(LieError::Precondition(
            "omega must be a 2-form on g".to_string(),
        ));
    }
    let closed = exterior_derivative(g, omega).is_zero();
    let nondegenerate = !omega.wedge_power(n / 2).is_zero();
    Ok(closed && nondegenerate)
}

/// A bilinear product on g given by its coefficients on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreLieProduct {
    pub n: usize,
    /// coeffs[(i*n + j)*n + k] is the e_k component of e_i * e_j.
    pub coeffs: Vec<Scalar>,
}

impl PreLieProduct {
    pub fn zero(n: usize) -> Self {
        PreLieProduct {
            n,
            coeffs: vec![Scalar::zero(); n * n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Vec<Scalar>) -> Self {
        let mut out = PreLieProduct::zero(n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert_eq!(v.len(), n);
                for (k, x) in v.into_iter().enumerate() {
                    out.coeffs[(i * n + j) * n + k] = x;
                }
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let n = self.n;
        self.coeffs[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    /// Bilinear evaluation on coordinate vectors.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.n;
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..n {
                    let base = &self.coeffs[(i * n + j) * n + k];
                    if !base.is_zero() {
                        out[k] += &(&c * base);
                    }
                }
            }
        }
        out
    }

    /// The left-symmetric identity (A.B).C - A.(B.C) - (B.A).C + B.(A.C) = 0
    /// on all basis triples.
    pub fn is_left_symmetric(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            let ea = basis_vector(n, a);
            for b in 0..n {
                let eb = basis_vector(n, b);
                let ab = self.basis_product(a, b);
                let ba = self.basis_product(b, a);
                for c in 0..n {
                    let ec = basis_vector(n, c);
                    let mut acc = self.eval(&ab, &ec);
                    acc = vec_sub(&acc, &self.eval(&ea, &self.basis_product(b, c)));
                    acc = vec_sub(&acc, &self.eval(&ba, &ec));
                    let back = self.eval(&eb, &self.basis_product(a, c));
                    for (x, y) in acc.iter_mut().zip(back) {
                        *x += &y;
                    }
                    if !vec_is_zero(&acc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the commutator of the product recovers the bracket of g.
    pub fn commutator_matches(&self, g: &LieAlgebra) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                let comm = vec_sub(&self.basis_product(i, j), &self.basis_product(j, i));
                if comm != g.sc.bracket_basis(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

/// A product is pre-Lie for g when it is left-symmetric and its commutator
/// is the bracket of g.
pub fn pre_lie_check(g: &LieAlgebra, nabla: &PreLieProduct) -> bool {
    nabla.n == g.dim() && nabla.is_left_symmetric() && nabla.commutator_matches(g)
}

/// The pre-Lie product of a symplectic form, defined by
/// omega(X * Y, Z) = -omega(Y, [X, Z]).
pub fn pre_lie_from_symplectic(
    g: &LieAlgebra,
    omega: &ScalarForm,
) -> Result<PreLieProduct, LieError> {
    if !symplectic_check(g, omega)? {
        return Err(LieError::Precondition(
            "omega is not symplectic".to_string(),
        ));
    }
    let n = g.dim();
    let b = form_matrix(omega);
    let bt = b.transpose();
    let mut out = PreLieProduct::zero(n);
    for i in 0..n {
        let ei = basis_vector(n, i);
        for j in 0..n {
            // r_k = -omega(e_j, [e_i, e_k]).
            let mut r = vec![Scalar::zero(); n];
            for (k, rk) in r.iter_mut().enumerate() {
                let w = g.bracket(&ei, &basis_vector(n, k));
                *rk = -b.matvec(&w)[j].clone();
            }
            let v = bt.solve(&r).expect("nondegenerate form");
            for (k, x) in v.into_iter().enumerate() {
                out.coeffs[(i * n + j) * n + k] = x;
            }
        }
    }
    Ok(out)
}

/// The pre-Lie product of an invertible derivation f, defined by
/// X * Y = f^{-1}([f(X), Y]). When f is only invertible on the derived
/// subalgebra the same formula is used there; the result must still be
/// left-symmetric.
pub fn pre_lie_from_derivation(g: &LieAlgebra, f: &Matrix) -> Result<PreLieProduct, LieError> {
    let n = g.dim();
    if !is_derivation(g, f) {
        return Err(LieError::Precondition("f is not a derivation".to_string()));
    }
    let product = if let Some(finv) = f.inverse() {
        PreLieProduct::from_fn(n, |i, j| {
            let w = g.bracket(&f.col(i), &basis_vector(n, j));
            finv.matvec(&w)
        })
    } else {
        // Restricted variant: invert f on the derived subalgebra, where all
        // bracket values live.
        let derived = g.derived_subspace();
        let d = derived.dim();
        let fd = Matrix::from_fn(n, d, |r, c| f.matvec(&derived.basis()[c])[r].clone());
        if fd.rank() < d {
            return Err(LieError::Precondition(
                "f is singular on the derived subalgebra".to_string(),
            ));
        }
        let mut out = PreLieProduct::zero(n);
        for i in 0..n {
            for j in 0..n {
                let w = g.bracket(&f.col(i), &basis_vector(n, j));
                let coords = fd.solve(&w).ok_or_else(|| {
                    LieError::Precondition(
                        "bracket value outside f(derived subalgebra)".to_string(),
                    )
                })?;
                for (c, x) in coords.iter().enumerate() {
                    for k in 0..n {
                        let term = x * &derived.basis()[c][k];
                        out.coeffs[(i * n + j) * n + k] += &term;
                    }
                }
            }
        }
        out
    };
    if !product.is_left_symmetric() {
        return Err(LieError::Precondition(
            "induced product is not left-symmetric".to_string(),
        ));
    }
    Ok(product)
}

/// [R(X), R(Y)] = R([R(X), Y] + [X, R(Y)]) on all basis pairs.
pub fn yang_baxter_check(g: &LieAlgebra, r: &Matrix) -> bool {
    operator_defect(g, r, false)
}

/// [R(X), R(Y)] + [X, Y] = R([R(X), Y] + [X, R(Y)]) on all basis pairs.
/// The [X, Y] correction sits outside R: this is the identity satisfied by
/// R = -iJ for a complex structure J.
pub fn rota_baxter_check(g: &LieAlgebra, r: &Matrix) -> bool {
    operator_defect(g, r, true)
}

fn operator_defect(g: &LieAlgebra, r: &Matrix, weight: bool) -> bool {
    let n = g.dim();
    for i in 0..n {
        let ri = r.col(i);
        for j in (i + 1)..n {
            let rj = r.col(j);
            let mut lhs = g.bracket(&ri, &rj);
            if weight {
                let mu = g.sc.bracket_basis(i, j);
                for (x, y) in lhs.iter_mut().zip(mu) {
                    *x += &y;
                }
            }
            let inner = crate::linalg::vec_add(
                &g.bracket(&ri, &basis_vector(n, j)),
                &g.bracket(&basis_vector(n, i), &rj),
            );
            if lhs != r.matvec(&inner) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    YangBaxter,
    RotaBaxter,
}

/// The product X * Y = [R(X), Y] of an operator satisfying the requested
/// identity, together with the Lie algebra of its commutator.
pub fn pre_lie_from_operator(
    g: &LieAlgebra,
    r: &Matrix,
    kind: OperatorKind,
) -> Result<(PreLieProduct, LieAlgebra), LieError> {
    let ok = match kind {
        OperatorKind::YangBaxter => yang_baxter_check(g, r),
        OperatorKind::RotaBaxter => rota_baxter_check(g, r),
    };
    if !ok {
        return Err(LieError::Precondition(
            "R does not satisfy the requested operator identity".to_string(),
        ));
    }
    let n = g.dim();
    let nabla = PreLieProduct::from_fn(n, |i, j| g.bracket(&r.col(i), &basis_vector(n, j)));
    if !nabla.is_left_symmetric() {
        return Err(LieError::Precondition(
            "induced product is not left-symmetric".to_string(),
        ));
    }
    let mut sc = StructureConstants::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let comm = vec_sub(&nabla.basis_product(i, j), &nabla.basis_product(j, i));
            for (k, x) in comm.into_iter().enumerate() {
                if !x.is_zero() {
                    sc.set(i, j, k, x);
                }
            }
        }
    }
    let mu_prime = LieAlgebra::new(sc, g.field_tag, None)?;
    Ok((nabla, mu_prime))
}

/// J^2 = -Id together with the integrability identity
/// [JX, JY] = [X, Y] + J([JX, Y] + [X, JY]) on all basis pairs.
pub fn complex_structure_check(g: &LieAlgebra, j: &Matrix) -> Result<bool, LieError> {
    let n = g.dim();
    if n % 2 != 0 {
        return Err(LieError::Precondition(
            "complex structures need even dimension".to_string(),
        ));
    }
    let mut minus_id = Matrix::identity(n);
    minus_id = minus_id.scale(&(-Scalar::one()));
    if j.matmul(j) != minus_id {
        return Ok(false);
    }
    for a in 0..n {
        let ja = j.col(a);
        for b in (a + 1)..n {
            let jb = j.col(b);
            let lhs = j_nijenhuis_lhs(g, &ja, &jb);
            let mut rhs = g.sc.bracket_basis(a, b);
            let inner = crate::linalg::vec_add(
                &g.bracket(&ja, &basis_vector(n, b)),
                &g.bracket(&basis_vector(n, a), &jb),
            );
            let jr = j.matvec(&inner);
            for (x, y) in rhs.iter_mut().zip(jr) {
                *x += &y;
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn j_nijenhuis_lhs(g: &LieAlgebra, ja: &[Scalar], jb: &[Scalar]) -> Vec<Scalar> {
    g.bracket(ja, jb)
}

/// Deterministic bounded search for a complex structure with small integer
/// entries. Returns the first valid J, or None when the whole candidate
/// budget is exhausted (evidence of nonexistence, not a proof).
pub fn find_complex_structure(g: &LieAlgebra, attempts: usize) -> Option<Matrix> {
    let n = g.dim();
    if n % 2 != 0 {
        return None;
    }
    let mut state: u64 = 0x9e3779b97f4a7c15;
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 33) % 5) as i64 - 2
    };
    for _ in 0..attempts {
        let entries: Vec<i64> = (0..n * n).map(|_| next()).collect();
        let j = Matrix::from_fn(n, n, |r, c| Scalar::from_int(entries[r * n + c]));
        if complex_structure_check(g, &j) == Ok(true) {
            return Some(j);
        }
    }
    None
}

/// The coadjoint semidirect product on g + g* (coordinates: g part first):
/// [X + a, Y + b] = [X, Y] + ad*_X b - ad*_Y a with (ad*_X b)(Z) = -b([X, Z]).
pub fn double_algebra(g: &LieAlgebra) -> LieAlgebra {
    let n = g.dim();
    let mut sc = StructureConstants::new(2 * n);
    for i in 0..n {
        for j in (i + 1)..n {
            for (k, x) in g.sc.bracket_basis(i, j).into_iter().enumerate() {
                if !x.is_zero() {
                    sc.set(i, j, k, x);
                }
            }
        }
        for j in 0..n {
            // [e_i, f_j] = ad*_{e_i} f_j, component on f_k is -C_{ik}^j.
            for k in 0..n {
                let c = g.sc.get(i, k, j);
                if !c.is_zero() {
                    sc.set(i, n + j, n + k, -c);
                }
            }
        }
    }
    LieAlgebra::new(sc, g.field_tag, None).expect("coadjoint semidirect product is a Lie algebra")
}

/// The canonical pairing <X + a, Y + b> = (b(X) + a(Y)) / 2 on g + g*.
pub fn canonical_pairing(n: usize) -> Matrix {
    let half = Scalar::from_frac(1, 2);
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i + n == j || j + n == i {
            half.clone()
        } else {
            Scalar::zero()
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcsReport {
    pub isometry: bool,
    pub square: bool,
    pub l_isotropic_maximal: bool,
    pub l_involutive: bool,
    pub gcs_type: usize,
}

/// Checks a candidate generalized complex structure J on g + g*. The +i
/// eigenspace L is computed over Q(i); the type is the codimension of its
/// projection to the g part.
pub fn generalized_complex_check(g: &LieAlgebra, j: &Matrix) -> Result<GcsReport, LieError> {
    let n = g.dim();
    if j.rows != 2 * n || j.cols != 2 * n {
        return Err(LieError::Precondition(
            "J must act on g + g*".to_string(),
        ));
    }
    let minus_id = Matrix::identity(2 * n).scale(&(-Scalar::one()));
    if j.matmul(j) != minus_id {
        return Err(LieError::Precondition(
            "J^2 != -Id, eigenspace undefined".to_string(),
        ));
    }
    let p = canonical_pairing(n);
    let isometry = j.transpose().matmul(&p).matmul(j) == p;
    // L = ker(J - i Id) over Q(i).
    let mut shifted = j.clone();
    for d in 0..2 * n {
        let v = shifted.get(d, d).clone() - &Scalar::i();
        shifted.set(d, d, v);
    }
    let l_basis = shifted.kernel_basis();
    let maximal = l_basis.len() == n;
    let mut isotropic = true;
    for u in &l_basis {
        for v in &l_basis {
            let mut acc = Scalar::zero();
            for (a, pa) in p.matvec(v).iter().enumerate() {
                acc += &(&u[a] * pa);
            }
            if !acc.is_zero() {
                isotropic = false;
            }
        }
    }
    let dg = double_algebra(g);
    let l_span = Subspace::from_spanning(2 * n, &l_basis);
    let mut involutive = true;
    for (a, u) in l_basis.iter().enumerate() {
        for v in l_basis.iter().skip(a + 1) {
            if !l_span.contains(&dg.bracket(u, v)) {
                involutive = false;
            }
        }
    }
    let proj = Matrix::from_fn(n, l_basis.len(), |r, c| l_basis[c][r].clone());
    let gcs_type = n - proj.rank();
    Ok(GcsReport {
        isometry,
        square: true,
        l_isotropic_maximal: isotropic && maximal,
        l_involutive: involutive,
        gcs_type,
    })
}

/// The generalized structure of a complex structure j:
/// J(X + a) = -j(X) + j*(a).
pub fn gcs_from_complex(j: &Matrix) -> Matrix {
    let n = j.rows;
    let jt = j.transpose();
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if r < n && c < n {
            -j.get(r, c).clone()
        } else if r >= n && c >= n {
            jt.get(r - n, c - n).clone()
        } else {
            Scalar::zero()
        }
    })
}

/// The generalized structure of a symplectic form:
/// J(X + a) = i(X)omega - omega^{-1}(a), with blocks [[0, -B^{-1}], [B, 0]].
pub fn gcs_from_symplectic(omega: &ScalarForm) -> Result<Matrix, LieError> {
    let b = form_matrix(omega);
    let n = b.rows;
    let binv = b
        .inverse()
        .ok_or_else(|| LieError::Precondition("degenerate form".to_string()))?;
    Ok(Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if r < n && c >= n {
            -binv.get(r, c - n).clone()
        } else if r >= n && c < n {
            b.get(r - n, c).clone()
        } else {
            Scalar::zero()
        }
    }))
}

/// The symplectic double extension of (g, omega) by a derivation D.
/// Returns the (n+2)-dimensional symplectic algebra and its form, or None
/// when the obstruction 2-form is not a coboundary.
pub fn double_extension(
    g: &LieAlgebra,
    omega: &ScalarForm,
    d: &Matrix,
) -> Result<Option<(LieAlgebra, ScalarForm)>, LieError> {
    if !symplectic_check(g, omega)? {
        return Err(LieError::Precondition(
            "omega is not symplectic".to_string(),
        ));
    }
    if !is_derivation(g, d) {
        return Err(LieError::Precondition("D is not a derivation".to_string()));
    }
    let n = g.dim();
    let b = form_matrix(omega);
    let binv = b.inverse().expect("nondegenerate form");
    // omega-adjoint: omega(D* X, Y) = omega(X, D Y).
    let dstar = binv.matmul(&d.transpose()).matmul(&b);
    let dsum = d.add(&dstar);
    let s = dsum.matmul(d).add(&dstar.matmul(&dsum));
    let big_omega = s.transpose().matmul(&b);
    // Solve Omega(X, Y) = omega(Z, [X, Y]) for Z.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            rows.push(b.matvec(&g.sc.bracket_basis(i, j)));
            rhs.push(big_omega.get(i, j).clone());
        }
    }
    let z = match Matrix::from_rows(rows).solve(&rhs) {
        Some(z) => z,
        None => return Ok(None),
    };
    // Central-extension cocycle f(X, Y) = omega(DX, Y) + omega(X, DY).
    let f = d.transpose().matmul(&b).add(&b.matmul(d));
    let omega_z = b.transpose().matvec(&z); // omega(Z, e_i) as a covector
    let mut sc = StructureConstants::new(n + 2);
    for i in 0..n {
        for j in (i + 1)..n {
            for (k, x) in g.sc.bracket_basis(i, j).into_iter().enumerate() {
                if !x.is_zero() {
                    sc.set(i, j, k, x);
                }
            }
            if !f.get(i, j).is_zero() {
                sc.set(i, j, n, f.get(i, j).clone());
            }
        }
        // [e_i, d] = -D_1(e_i) = D(e_i) + omega(Z, e_i) e.
        for k in 0..n {
            if !d.get(k, i).is_zero() {
                sc.set(i, n + 1, k, d.get(k, i).clone());
            }
        }
        if !omega_z[i].is_zero() {
            sc.set(i, n + 1, n, omega_z[i].clone());
        }
    }
    let gprime = LieAlgebra::new(sc, g.field_tag, None)?;
    let omega1 = ScalarForm::from_coeff_fn(n + 2, 2, |combo| {
        if combo[1] < n {
            omega.get(combo)
        } else if combo == [n, n + 1] {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    Ok(Some((gprime, omega1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::core::FieldTag;

    fn omega12(n: usize) -> ScalarForm {
        ScalarForm::dual_basis(n, 0).wedge(&ScalarForm::dual_basis(n, 1))
    }

    #[test]
    fn symplectic_basics() {
        assert_eq!(symplectic_check(&catalog::abelian(2), &omega12(2)), Ok(true));
        // On aff2 the canonical form is exact: d(omega_2) = omega_1 ^ omega_2.
        let g = catalog::aff2();
        let exact = exterior_derivative(&g, &ScalarForm::dual_basis(2, 1));
        assert_eq!(exact, omega12(2));
        assert_eq!(symplectic_check(&g, &exact), Ok(true));
        assert!(symplectic_check(&catalog::sl2(), &ScalarForm::zero(3, 2)).is_err());
    }

    #[test]
    fn no_exact_symplectic_on_nilpotent_four_dim() {
        // h3 + line: every exact 2-form d(alpha) kills the central e_4, so
        // no exact form is nondegenerate. Exhausts alpha by linearity and
        // by a full sweep over small integer coefficients.
        let g = catalog::heisenberg(1)
            .direct_sum(&catalog::abelian(1))
            .unwrap();
        for i in 0..4 {
            let da = exterior_derivative(&g, &ScalarForm::dual_basis(4, i));
            for j in 0..4 {
                assert!(da.get(&[3, j]).is_zero());
            }
        }
        for code in 0..625u32 {
            let mut alpha = ScalarForm::zero(4, 1);
            let mut c = code;
            for i in 0..4 {
                alpha.coeffs[i] = Scalar::from_int((c % 5) as i64 - 2);
                c /= 5;
            }
            let da = exterior_derivative(&g, &alpha);
            assert!(form_matrix(&da).det().is_zero());
        }
    }

    #[test]
    fn pre_lie_check_examples() {
        // The commutative associative product e1*e1=e1, e1*e2=e2*e1=e2,
        // e2*e2=e2 on the abelian plane.
        let g = catalog::abelian(2);
        let assoc = PreLieProduct::from_fn(2, |i, j| {
            if i == 0 && j == 0 {
                basis_vector(2, 0)
            } else {
                basis_vector(2, 1)
            }
        });
        assert!(pre_lie_check(&g, &assoc));
        assert!(pre_lie_check(&g, &PreLieProduct::zero(2)));
        // Half the bracket on sl2: compatible commutator, not left-symmetric.
        let sl2 = catalog::sl2();
        let half = PreLieProduct::from_fn(3, |i, j| {
            let v = sl2.sc.bracket_basis(i.min(j), i.max(j));
            let v = crate::linalg::vec_scale(&v, &Scalar::from_frac(1, 2));
            if i <= j {
                v
            } else {
                v.iter().map(|x| -x.clone()).collect()
            }
        });
        assert!(half.commutator_matches(&sl2));
        assert!(!half.is_left_symmetric());
        assert!(!pre_lie_check(&sl2, &half));
    }

    #[test]
    fn pre_lie_from_symplectic_examples() {
        let flat = pre_lie_from_symplectic(&catalog::abelian(2), &omega12(2)).unwrap();
        assert_eq!(flat, PreLieProduct::zero(2));

        let g = catalog::aff2();
        let nabla = pre_lie_from_symplectic(&g, &omega12(2)).unwrap();
        assert!(pre_lie_check(&g, &nabla));
        assert!(nabla != PreLieProduct::zero(2));

        let fm = catalog::frobenius_model(2, &[Scalar::one()]).unwrap();
        let omega = exterior_derivative(&fm, &ScalarForm::dual_basis(4, 0));
        assert_eq!(symplectic_check(&fm, &omega), Ok(true));
        let nabla = pre_lie_from_symplectic(&fm, &omega).unwrap();
        assert!(pre_lie_check(&fm, &nabla));
    }

    #[test]
    fn pre_lie_from_derivation_examples() {
        let h3 = catalog::heisenberg(1);
        let f = Matrix::diag_int(&[1, 1, 2]);
        let nabla = pre_lie_from_derivation(&h3, &f).unwrap();
        assert!(pre_lie_check(&h3, &nabla));
        assert_eq!(
            nabla.basis_product(0, 1),
            crate::linalg::vec_scale(&basis_vector(3, 2), &Scalar::from_frac(1, 2))
        );

        let flat = pre_lie_from_derivation(&catalog::abelian(2), &Matrix::identity(2)).unwrap();
        assert_eq!(flat, PreLieProduct::zero(2));

        // aff2 has no invertible derivation; both catalog derivations fail.
        let aff2 = catalog::aff2();
        let mut d1 = Matrix::zeros(2, 2);
        d1.set(1, 0, Scalar::one());
        assert!(is_derivation(&aff2, &d1));
        assert!(pre_lie_from_derivation(&aff2, &d1).is_err());
        let d2 = Matrix::diag_int(&[0, 1]);
        assert!(is_derivation(&aff2, &d2));
        assert!(pre_lie_from_derivation(&aff2, &d2).is_err());
    }

    #[test]
    fn operator_identities() {
        let sl2 = catalog::sl2();
        assert!(yang_baxter_check(&sl2, &Matrix::zeros(3, 3)));
        assert!(!yang_baxter_check(&sl2, &Matrix::identity(3)));
        assert!(yang_baxter_check(&catalog::abelian(2), &Matrix::identity(2)));

        // R = -iJ for the complex structure J on aff2 satisfies the
        // Rota-Baxter identity over Q(i).
        let mut aff2 = catalog::aff2();
        aff2.field_tag = FieldTag::Qi;
        let mut j = Matrix::zeros(2, 2);
        j.set(0, 1, -Scalar::one());
        j.set(1, 0, Scalar::one());
        let r = j.scale(&(-Scalar::i()));
        assert!(rota_baxter_check(&aff2, &r));
        assert!(!yang_baxter_check(&aff2, &r));
    }

    #[test]
    fn pre_lie_from_operator_examples() {
        let sl2 = catalog::sl2();
        let (nabla, mu_prime) = pre_lie_from_operator(
            &sl2,
            &Matrix::zeros(3, 3),
            OperatorKind::YangBaxter,
        )
        .unwrap();
        assert_eq!(nabla, PreLieProduct::zero(3));
        assert!(mu_prime.sc.is_zero());

        // A nontrivial Yang-Baxter operator on aff2 whose commutator
        // algebra is aff2 again.
        let aff2 = catalog::aff2();
        let r = Matrix::diag_int(&[1, 0]);
        assert!(yang_baxter_check(&aff2, &r));
        let (nabla, mu_prime) = pre_lie_from_operator(&aff2, &r, OperatorKind::YangBaxter).unwrap();
        assert!(nabla.is_left_symmetric());
        assert_eq!(mu_prime.sc.bracket_basis(0, 1), basis_vector(2, 1));

        assert!(pre_lie_from_operator(&sl2, &Matrix::identity(3), OperatorKind::YangBaxter).is_err());
    }

    #[test]
    fn complex_structure_examples() {
        let mut j = Matrix::zeros(2, 2);
        j.set(0, 1, -Scalar::one());
        j.set(1, 0, Scalar::one());
        assert_eq!(complex_structure_check(&catalog::abelian(2), &j), Ok(true));
        assert_eq!(complex_structure_check(&catalog::aff2(), &j), Ok(true));
        assert!(complex_structure_check(&catalog::sl2(), &Matrix::identity(3)).is_err());
    }

    #[test]
    fn no_complex_structure_found_on_filiform() {
        // Bounded search evidence only: 500 deterministic candidates.
        assert!(find_complex_structure(&catalog::filiform_model(4), 500).is_none());
    }

    #[test]
    fn generalized_complex_from_complex_and_symplectic() {
        let mut j = Matrix::zeros(2, 2);
        j.set(0, 1, -Scalar::one());
        j.set(1, 0, Scalar::one());
        for g in [catalog::abelian(2), catalog::aff2()] {
            assert_eq!(complex_structure_check(&g, &j), Ok(true));
            let report = generalized_complex_check(&g, &gcs_from_complex(&j)).unwrap();
            assert_eq!(
                report,
                GcsReport {
                    isometry: true,
                    square: true,
                    l_isotropic_maximal: true,
                    l_involutive: true,
                    gcs_type: 1,
                }
            );

            let omega = omega12(2);
            assert_eq!(symplectic_check(&g, &omega), Ok(true));
            let report = generalized_complex_check(&g, &gcs_from_symplectic(&omega).unwrap())
                .unwrap();
            assert_eq!(
                report,
                GcsReport {
                    isometry: true,
                    square: true,
                    l_isotropic_maximal: true,
                    l_involutive: true,
                    gcs_type: 0,
                }
            );
        }
    }

    #[test]
    fn non_isometric_generalized_structure() {
        // Block diag(-j, j) squares to -Id but reverses the pairing.
        let mut j = Matrix::zeros(2, 2);
        j.set(0, 1, -Scalar::one());
        j.set(1, 0, Scalar::one());
        let big = Matrix::from_fn(4, 4, |r, c| {
            if r < 2 && c < 2 {
                -j.get(r, c).clone()
            } else if r >= 2 && c >= 2 {
                j.get(r - 2, c - 2).clone()
            } else {
                Scalar::zero()
            }
        });
        let report = generalized_complex_check(&catalog::abelian(2), &big).unwrap();
        assert!(!report.isometry);
        // J^2 != -Id is a hard error.
        assert!(generalized_complex_check(&catalog::abelian(2), &Matrix::identity(4)).is_err());
    }

    #[test]
    fn double_extension_of_abelian_plane() {
        let g = catalog::abelian(2);
        let (gprime, omega1) = double_extension(&g, &omega12(2), &Matrix::zeros(2, 2))
            .unwrap()
            .unwrap();
        assert_eq!(gprime.dim(), 4);
        assert!(gprime.sc.is_zero());
        assert_eq!(symplectic_check(&gprime, &omega1), Ok(true));

        // D = Id: the obstruction 4*omega is nonzero but B^2 = 0.
        assert_eq!(
            double_extension(&g, &omega12(2), &Matrix::identity(2)).unwrap(),
            None
        );
    }

    #[test]
    fn double_extension_of_aff2() {
        let g = catalog::aff2();
        let d = Matrix::diag_int(&[0, 1]);
        let (gprime, omega1) = double_extension(&g, &omega12(2), &d).unwrap().unwrap();
        assert_eq!(gprime.dim(), 4);
        assert_eq!(symplectic_check(&gprime, &omega1), Ok(true));
        // The restriction of omega1 to g is omega.
        assert_eq!(omega1.get(&[0, 1]), omega12(2).get(&[0, 1]));
        assert!(!gprime.sc.bracket_basis(0, 1)[2].is_zero());
    }

    #[test]
    fn double_algebra_bracket_is_coadjoint() {
        let g = catalog::heisenberg(1);
        let dg = double_algebra(&g);
        assert_eq!(dg.dim(), 6);
        // [e1, f3](Z) = -f3([e1, Z]): nonzero only on Z = e2, giving -f2.
        let w = dg.bracket(&basis_vector(6, 0), &basis_vector(6, 5));
        assert_eq!(w, crate::linalg::vec_scale(&basis_vector(6, 4), &(-Scalar::one())));
    }
}
