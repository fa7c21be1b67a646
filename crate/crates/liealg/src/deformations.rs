//! Formal deformations of a Lie law: truncated jets mu_t = mu_0 + sum t^p
//! phi_p, Jacobi residuals per order, step-by-step integration against the
//! H^3 obstruction, jet equivalence, and the canonical flag decomposition
//! of valued deformations into b_1 V_1 + b_1 b_2 V_2 + ... form.

use crate::cohomology::{circle, delta, delta_matrix, graded_bracket, AdjointCochain};
use crate::core::{LieAlgebra, LieError};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

/// Default truncation order for jets and series.
pub const DEFAULT_ORDER: usize = 8;

/// Truncated power series a_0 + a_1 t + ... + a_N t^N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    pub order: usize,
    pub c: Vec<Scalar>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            c: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn from_coeffs(order: usize, coeffs: &[Scalar]) -> Self {
        let mut s = TruncatedSeries::zero(order);
        for (i, v) in coeffs.iter().take(order + 1).enumerate() {
            s.c[i] = v.clone();
        }
        s
    }

    pub fn constant(order: usize, v: Scalar) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.c[0] = v;
        s
    }

    pub fn t_pow(order: usize, k: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if k <= order {
            s.c[k] = Scalar::one();
        }
        s
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.c.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// Index of the first nonzero coefficient; None for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order, other.order);
        TruncatedSeries {
            order: self.order,
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order, other.order);
        TruncatedSeries {
            order: self.order,
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            order: self.order,
            c: self.c.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> TruncatedSeries {
        TruncatedSeries {
            order: self.order,
            c: self.c.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order, other.order);
        let mut c = vec![Scalar::zero(); self.order + 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if i + j > self.order {
                    break;
                }
                if !b.is_zero() {
                    c[i + j] = c[i + j].clone() + &(a * b);
                }
            }
        }
        TruncatedSeries { order: self.order, c }
    }

    /// Multiplicative inverse of a unit (nonzero constant term).
    pub fn inverse_unit(&self) -> Option<TruncatedSeries> {
        if self.c[0].is_zero() {
            return None;
        }
        let a0 = self.c[0].inv();
        let mut inv = vec![Scalar::zero(); self.order + 1];
        inv[0] = a0.clone();
        for k in 1..=self.order {
            let mut acc = Scalar::zero();
            for i in 1..=k {
                if !self.c[i].is_zero() {
                    acc += &(&self.c[i] * &inv[k - i]);
                }
            }
            inv[k] = -(acc * &a0);
        }
        Some(TruncatedSeries {
            order: self.order,
            c: inv,
        })
    }

    /// self / other when val(other) <= val(self); coefficients beyond
    /// order - val(other) are not determined by the truncated data.
    pub fn div(&self, other: &TruncatedSeries) -> Option<TruncatedSeries> {
        let vo = other.valuation()?;
        if let Some(vs) = self.valuation() {
            if vs < vo {
                return None;
            }
        } else {
            return Some(TruncatedSeries::zero(self.order));
        }
        let shift = |s: &TruncatedSeries| {
            let mut c = s.c[vo..].to_vec();
            c.resize(self.order + 1, Scalar::zero());
            TruncatedSeries {
                order: self.order,
                c,
            }
        };
        let num = shift(self);
        let den = shift(other);
        Some(num.mul(&den.inverse_unit()?))
    }
}

/// A truncated one-parameter family mu_0 + sum_{p=1}^{len} t^p phi_p.
#[derive(Clone, Debug)]
pub struct DeformationJet {
    pub base: LieAlgebra,
    /// terms[p-1] is the 2-cochain phi_p.
    pub terms: Vec<AdjointCochain>,
    pub order: usize,
}

impl DeformationJet {
    pub fn new(base: LieAlgebra, terms: Vec<AdjointCochain>, order: usize) -> Self {
        assert!(terms.len() <= order);
        for t in &terms {
            assert_eq!((t.n, t.p), (base.dim(), 2));
        }
        DeformationJet { base, terms, order }
    }

    pub fn linear(base: LieAlgebra, phi: AdjointCochain, order: usize) -> Self {
        DeformationJet::new(base, vec![phi], order)
    }

    /// phi_p, with phi_0 = mu_0 and zero beyond the stored terms.
    pub fn term(&self, p: usize) -> AdjointCochain {
        if p == 0 {
            AdjointCochain::from_mu(&self.base)
        } else if p <= self.terms.len() {
            self.terms[p - 1].clone()
        } else {
            AdjointCochain::zero(self.base.dim(), 2)
        }
    }
}

/// The coefficient of t^m in mu_t o mu_t for m = 1..=up_to: the jet is a
/// Lie law mod t^{order+1} exactly when all residuals up to `order` vanish.
pub fn jacobi_residuals(jet: &DeformationJet, up_to: usize) -> Vec<(usize, AdjointCochain)> {
    assert!(up_to <= 2 * jet.order);
    let g = &jet.base;
    let mut out = Vec::new();
    for m in 1..=up_to {
        let mut res = AdjointCochain::zero(g.dim(), 3);
        if m <= jet.terms.len() {
            res = res.add(&delta(g, &jet.term(m)));
        }
        for i in 1..m {
            let j = m - i;
            if i <= jet.terms.len() && j <= jet.terms.len() {
                res = res.add(&circle(g, &jet.term(i), &jet.term(j)));
            }
        }
        out.push((m, res));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearDeformationReport {
    pub is_cocycle: bool,
    pub is_square_zero: bool,
    pub valid_for_all_t: bool,
}

/// mu_0 + t phi satisfies Jacobi identically in t iff delta(phi) = 0 and
/// phi o phi = 0 (the only nonzero orders of mu_t o mu_t are 1 and 2).
pub fn linear_deformation_check(g: &LieAlgebra, phi: &AdjointCochain) -> LinearDeformationReport {
    assert_eq!(phi.p, 2);
    let is_cocycle = delta(g, phi).is_zero();
    let is_square_zero = circle(g, phi, phi).is_zero();
    LinearDeformationReport {
        is_cocycle,
        is_square_zero,
        valid_for_all_t: is_cocycle && is_square_zero,
    }
}

/// Given phi_1..phi_p satisfying the integrability system up to order p,
/// form the order p+1 obstruction, check it is a 3-cocycle, and solve
/// delta psi = -obstruction for the canonical phi_{p+1}. None when the
/// obstruction class in H^3 is nonzero.
pub fn integrate_step(
    g: &LieAlgebra,
    prefix: &[AdjointCochain],
) -> Result<Option<AdjointCochain>, LieError> {
    let p = prefix.len();
    let jet = DeformationJet::new(g.clone(), prefix.to_vec(), p.max(1));
    for (m, res) in jacobi_residuals(&jet, p) {
        if !res.is_zero() {
            return Err(LieError::Precondition(format!(
                "prefix violates the integrability system at order {m}"
            )));
        }
    }
    let mut obstruction = AdjointCochain::zero(g.dim(), 3);
    for i in 1..=p {
        let j = p + 1 - i;
        if j >= 1 && j <= p {
            obstruction = obstruction.add(&circle(g, &prefix[i - 1], &prefix[j - 1]));
        }
    }
    if obstruction.is_zero() {
        return Ok(Some(AdjointCochain::zero(g.dim(), 2)));
    }
    assert!(
        delta(g, &obstruction).is_zero(),
        "obstruction must be a 3-cocycle"
    );
    let target: Vec<Scalar> = obstruction.coeffs.iter().map(|c| -c.clone()).collect();
    let d2 = delta_matrix(g, 2);
    // Canonical particular solution: supported on the echelon complement
    // of Z^2 = ker(delta_2), where delta_2 is injective.
    let z2 = Subspace::from_spanning(d2.cols, &d2.kernel_basis());
    let support: Vec<usize> = z2
        .echelon_complement()
        .iter()
        .map(|v| v.iter().position(|x| x.is_one()).unwrap())
        .collect();
    let restricted = Matrix::from_fn(d2.rows, support.len(), |r, c| d2.get(r, support[c]).clone());
    match restricted.solve(&target) {
        None => Ok(None),
        Some(x) => {
            let mut coeffs = vec![Scalar::zero(); d2.cols];
            for (ci, idx) in support.iter().enumerate() {
                coeffs[*idx] = x[ci].clone();
            }
            Ok(Some(AdjointCochain::from_coeffs(g.dim(), 2, coeffs)))
        }
    }
}

fn eval_cochain2(phi: &AdjointCochain, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = phi.n;
    let mut acc = vec![Scalar::zero(); n];
    for i in 0..n {
        if x[i].is_zero() && y[i].is_zero() {
            continue;
        }
        for j in (i + 1)..n {
            let coef = (&x[i] * &y[j]) - (&x[j] * &y[i]);
            if coef.is_zero() {
                continue;
            }
            let v = phi.eval_sorted(&[i, j]);
            for (a, t) in acc.iter_mut().zip(&v) {
                if !t.is_zero() {
                    *a += &(&coef * t);
                }
            }
        }
    }
    acc
}

/// Checks u o mu_t = mu'_t o (u tensor u) order by order up to the jets'
/// truncation, where u = u_0 + t u_1 + ... must have u_0 = Id.
pub fn jet_equivalence_check(
    jet1: &DeformationJet,
    jet2: &DeformationJet,
    u: &[Matrix],
) -> Result<bool, LieError> {
    let n = jet1.base.dim();
    assert_eq!(jet2.base.dim(), n);
    let order = jet1.order.min(jet2.order);
    if u.is_empty() || u[0] != Matrix::identity(n) {
        return Err(LieError::Precondition(
            "equivalence matrix must be the identity mod t".to_string(),
        ));
    }
    let term_u = |a: usize| -> Option<&Matrix> { u.get(a) };
    for m in 0..=order {
        for i in 0..n {
            for j in (i + 1)..n {
                // LHS: sum_{a+b=m} u_a(phi_b(e_i, e_j)).
                let mut lhs = vec![Scalar::zero(); n];
                for a in 0..=m {
                    if let Some(ua) = term_u(a) {
                        let v = jet1.term(m - a).eval_sorted(&[i, j]);
                        for (acc, t) in lhs.iter_mut().zip(&ua.matvec(&v)) {
                            *acc += t;
                        }
                    }
                }
                // RHS: sum_{a+b+c=m} phi'_a(u_b e_i, u_c e_j).
                let mut rhs = vec![Scalar::zero(); n];
                for a in 0..=m {
                    for b in 0..=(m - a) {
                        let c = m - a - b;
                        let (ub, uc) = match (term_u(b), term_u(c)) {
                            (Some(ub), Some(uc)) => (ub, uc),
                            _ => continue,
                        };
                        let v = eval_cochain2(&jet2.term(a), &ub.col(i), &uc.col(j));
                        for (acc, t) in rhs.iter_mut().zip(&v) {
                            *acc += t;
                        }
                    }
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Canonical decomposition b_1 V_1 + b_1 b_2 V_2 + ... + b_1...b_h V_h of
/// a vector of series with positive valuation: the V_i carry an echelon
/// pattern (each has coefficient 1 at its pivot and 0 at earlier pivots),
/// hence are linearly independent.
#[derive(Clone, Debug)]
pub struct FlagDecomposition {
    pub scalars: Vec<TruncatedSeries>,
    pub vectors: Vec<Vec<Scalar>>,
}

impl FlagDecomposition {
    pub fn length(&self) -> usize {
        self.scalars.len()
    }

    /// b_1 V_1 + b_1 b_2 V_2 + ... at the given truncation order.
    pub fn reconstruct(&self, dim: usize, order: usize) -> Vec<TruncatedSeries> {
        let mut out = vec![TruncatedSeries::zero(order); dim];
        let mut prefix = TruncatedSeries::constant(order, Scalar::one());
        for (b, v) in self.scalars.iter().zip(&self.vectors) {
            let b = TruncatedSeries::from_coeffs(order, &b.c);
            prefix = prefix.mul(&b);
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.add(&prefix.scale(x));
            }
        }
        out
    }
}

/// Pivot rule: the last entry attaining the minimal valuation. Fails with
/// the order that would be needed when the truncation cannot decide
/// whether a remainder is zero.
pub fn flag_decompose(vec: &[TruncatedSeries]) -> Result<FlagDecomposition, LieError> {
    let dim = vec.len();
    assert!(dim > 0);
    let order = vec[0].order;
    for s in vec {
        assert_eq!(s.order, order);
        if s.valuation() == Some(0) {
            return Err(LieError::Precondition(
                "flag decomposition needs entries with positive valuation".to_string(),
            ));
        }
    }
    let mut scalars = Vec::new();
    let mut vectors = Vec::new();
    let mut current: Vec<TruncatedSeries> = vec.to_vec();
    // Coefficients at index >= known are no longer trustworthy after
    // divisions by the pivots.
    let mut known = order + 1;
    loop {
        let vals: Vec<Option<usize>> = current.iter().map(|s| s.valuation()).collect();
        let min_val = vals.iter().flatten().min().copied();
        let min_val = match min_val {
            None => break,
            Some(v) => v,
        };
        if min_val >= known {
            return Err(LieError::Precondition(format!(
                "truncation order {} is too shallow; order {} needed",
                order,
                order + min_val - known + 1
            )));
        }
        let pivot = vals
            .iter()
            .rposition(|v| *v == Some(min_val))
            .expect("minimal valuation is attained");
        let b = current[pivot].clone();
        let mut v = Vec::with_capacity(dim);
        let mut rest = Vec::with_capacity(dim);
        for s in &current {
            let q = s.div(&b).expect("pivot has minimal valuation");
            let c0 = q.get(0);
            let mut r = q;
            r.c[0] = Scalar::zero();
            v.push(c0);
            rest.push(r);
        }
        known -= min_val;
        // Forget coefficients past the precision horizon.
        for r in rest.iter_mut() {
            for i in known..=order {
                if i < r.c.len() {
                    r.c[i] = Scalar::zero();
                }
            }
        }
        scalars.push(b);
        vectors.push(v);
        current = rest;
    }
    Ok(FlagDecomposition { scalars, vectors })
}

/// A jet rewritten as mu_0 + e_1 phi_1 + e_1 e_2 phi_2 + ... with
/// linearly independent cochains phi_i.
#[derive(Clone, Debug)]
pub struct ValuedDeformation {
    pub base: LieAlgebra,
    pub scalars: Vec<TruncatedSeries>,
    pub cochains: Vec<AdjointCochain>,
}

/// Flag decomposition of the structure-constant series of mu_t - mu_0.
/// Requires the jet to satisfy Jacobi mod t^{order+1}; the leading
/// cochain is then a 2-cocycle.
pub fn decompose_deformation(jet: &DeformationJet) -> Result<ValuedDeformation, LieError> {
    let g = &jet.base;
    let n = g.dim();
    for (m, res) in jacobi_residuals(jet, jet.order) {
        if !res.is_zero() {
            return Err(LieError::Precondition(format!(
                "jet violates Jacobi at order {m}"
            )));
        }
    }
    let dim = AdjointCochain::space_dim(n, 2);
    let series: Vec<TruncatedSeries> = (0..dim)
        .map(|idx| {
            let coeffs: Vec<Scalar> = (0..=jet.order).map(|p| jet.term(p).coeffs[idx].clone()).collect();
            let mut s = TruncatedSeries::from_coeffs(jet.order, &coeffs);
            s.c[0] = Scalar::zero();
            s
        })
        .collect();
    if series.iter().all(TruncatedSeries::is_zero) {
        return Ok(ValuedDeformation {
            base: g.clone(),
            scalars: Vec::new(),
            cochains: Vec::new(),
        });
    }
    let flag = flag_decompose(&series)?;
    let cochains: Vec<AdjointCochain> = flag
        .vectors
        .iter()
        .map(|v| AdjointCochain::from_coeffs(n, 2, v.clone()))
        .collect();
    assert!(
        delta(g, &cochains[0]).is_zero(),
        "leading term of a valued deformation is a 2-cocycle"
    );
    Ok(ValuedDeformation {
        base: g.clone(),
        scalars: flag.scalars,
        cochains,
    })
}

#[derive(Clone, Debug)]
pub struct FiniteSystemReport {
    pub k: usize,
    /// For each i, the coefficients expressing delta(phi_i) in the span of
    /// the graded brackets [phi_a, phi_b], a <= b, when such exist.
    pub relations: Vec<Option<Vec<Scalar>>>,
    /// Dimension of the span of the brackets [phi_a, phi_b].
    pub dim_v: usize,
    /// The theorem's bound k(k-1)/2 on the bracket span needed by the
    /// equivalent polynomial deformation.
    pub bound: usize,
}

/// The finite system attached to a valued deformation: each delta(phi_i)
/// must be a combination of the graded brackets [phi_a, phi_b].
pub fn finite_system_check(vd: &ValuedDeformation) -> FiniteSystemReport {
    let g = &vd.base;
    let n = g.dim();
    let k = vd.cochains.len();
    let c3 = AdjointCochain::space_dim(n, 3);
    let mut brackets = Vec::new();
    for a in 0..k {
        for b in a..k {
            brackets.push(graded_bracket(g, &vd.cochains[a], &vd.cochains[b]));
        }
    }
    let span = Subspace::from_spanning(
        c3,
        &brackets.iter().map(|c| c.coeffs.clone()).collect::<Vec<_>>(),
    );
    let mat = Matrix::from_fn(c3, brackets.len(), |r, c| brackets[c].coeffs[r].clone());
    let relations = vd
        .cochains
        .iter()
        .map(|phi| mat.solve(&delta(g, phi).coeffs))
        .collect();
    FiniteSystemReport {
        k,
        relations,
        dim_v: span.dim(),
        bound: k * k.saturating_sub(1) / 2,
    }
}
