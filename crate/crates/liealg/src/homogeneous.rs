//! Reductive and graded homogeneous structures: decomposition checks, the
//! Z2 x Z2 grading of so(4k) by commuting involutions, adapted invariant
//! metrics on the graded part, and their eigenvalue/signature classification.

use num_traits::Signed;

use crate::catalog::so;
use crate::core::{LieAlgebra, LieError};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

fn complementary(g: &LieAlgebra, h: &Subspace, m: &Subspace) -> Result<(), LieError> {
    if h.dim() + m.dim() != g.dim() || h.sum(m).dim() != g.dim() {
        return Err(LieError::Precondition(
            "subspaces are not complementary".into(),
        ));
    }
    Ok(())
}

/// True when [h, m] is contained in m, so m is an ad(h)-invariant complement.
pub fn reductive_check(g: &LieAlgebra, h: &Subspace, m: &Subspace) -> Result<bool, LieError> {
    complementary(g, h, m)?;
    for z in h.basis() {
        for x in m.basis() {
            if !m.contains(&g.bracket(z, x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when [m, m] is contained in h, the symmetric-pair condition.
pub fn symmetric_check(g: &LieAlgebra, h: &Subspace, m: &Subspace) -> Result<bool, LieError> {
    complementary(g, h, m)?;
    for x in m.basis() {
        for y in m.basis() {
            if !h.contains(&g.bracket(x, y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when B([Z,X]_m, Y) + B(X, [Z,Y]_m) = 0 for all X, Y, Z in m, where
/// the subscript m is the projection onto m along h. The bilinear form b is
/// given by its Gram matrix in the coordinates of `m_basis`.
pub fn naturally_reductive_check(
    g: &LieAlgebra,
    h: &Subspace,
    m_basis: &[Vec<Scalar>],
    b: &Matrix,
) -> Result<bool, LieError> {
    let m = Subspace::from_spanning(g.dim(), m_basis);
    if m.dim() != m_basis.len() {
        return Err(LieError::Precondition("m basis is dependent".into()));
    }
    complementary(g, h, &m)?;
    let dm = m_basis.len();
    if b.rows != dm || b.cols != dm || b.sub(&b.transpose()).is_zero() == false {
        return Err(LieError::Precondition("form is not symmetric".into()));
    }
    if b.rank() != dm {
        return Err(LieError::Precondition("form is degenerate".into()));
    }
    // Columns of the combined matrix: m basis first, then h basis.
    let n = g.dim();
    let cols: Vec<&Vec<Scalar>> = m_basis.iter().chain(h.basis().iter()).collect();
    let full = Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone());
    for z in m_basis {
        // a: column X holds the m-coordinates of [z, m_basis[X]]_m.
        let mut a = Matrix::zeros(dm, dm);
        for (xi, x) in m_basis.iter().enumerate() {
            let w = g.bracket(z, x);
            let sol = full.solve(&w).expect("bracket decomposes over h + m");
            for i in 0..dm {
                a.set(i, xi, sol[i].clone());
            }
        }
        if !a.transpose().matmul(b).add(&b.matmul(&a)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A grading of a Lie algebra by the group Z2^bits: component `i` carries the
/// group element whose bitmask is `i`, and products are bitwise xor.
#[derive(Clone, Debug)]
pub struct Grading {
    pub ambient: usize,
    pub bits: usize,
    pub components: Vec<Subspace>,
    pub labels: Vec<String>,
}

/// Verifies that the components are complementary and that
/// [g_a, g_b] lands in g_(a xor b) for every pair of group elements.
pub fn grading_check(g: &LieAlgebra, gr: &Grading) -> Result<bool, LieError> {
    let count = 1usize << gr.bits;
    if gr.components.len() != count || gr.labels.len() != count || gr.ambient != g.dim() {
        return Err(LieError::Precondition("malformed grading".into()));
    }
    let total: usize = gr.components.iter().map(Subspace::dim).sum();
    let mut span = Subspace::zero(g.dim());
    for c in &gr.components {
        span = span.sum(c);
    }
    if total != g.dim() || span.dim() != g.dim() {
        return Err(LieError::Precondition(
            "components are not complementary".into(),
        ));
    }
    for m1 in 0..count {
        for m2 in m1..count {
            let target = &gr.components[m1 ^ m2];
            for u in gr.components[m1].basis() {
                for v in gr.components[m2].basis() {
                    if !target.contains(&g.bracket(u, v)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// so(4k) with its Z2 x Z2 grading and, for each non-identity component, the
/// data the invariant metrics are built from: a basis, the Gram matrix of the
/// normalized trace form on it, and the centralizer of g_e inside the
/// component, which is a single line.
#[derive(Clone, Debug)]
pub struct SoStructure {
    pub k: usize,
    pub algebra: LieAlgebra,
    pub grading: Grading,
    comps: Vec<ComponentData>,
}

#[derive(Clone, Debug)]
struct ComponentData {
    basis: Vec<Vec<Scalar>>,
    gram: Matrix,
    /// Coordinates, over `basis`, of the centralizer line of g_e.
    center: Vec<Scalar>,
}

fn so_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            pairs.push((i, j));
        }
    }
    pairs
}

fn coords_of(mat: &Matrix, pairs: &[(usize, usize)]) -> Vec<Scalar> {
    pairs.iter().map(|&(i, j)| mat.get(i, j).clone()).collect()
}

/// The normalized trace form: <u, v> = tr(UV) / (-4) for the antisymmetric
/// matrices U, V with coordinate vectors u, v. In the elementary coordinates
/// this is half the dot product.
fn khat(u: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b) in u.iter().zip(v) {
        acc += &(a * b);
    }
    acc / Scalar::from_int(2)
}

/// One parameter block of a graded component: a symmetric or antisymmetric
/// k x k matrix placed, with signs, into the sixteen k x k blocks of so(4k).
type Slot = (bool, [(usize, usize, i64); 4]);

const SLOTS_E: [Slot; 4] = [
    (false, [(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)]),
    (true, [(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)]),
    (true, [(0, 2, 1), (1, 3, -1), (2, 0, -1), (3, 1, 1)]),
    (true, [(0, 3, 1), (1, 2, 1), (2, 1, -1), (3, 0, -1)]),
];

const SLOTS_A: [Slot; 4] = [
    (false, [(0, 0, 1), (1, 1, -1), (2, 2, -1), (3, 3, 1)]),
    (false, [(0, 1, 1), (1, 0, 1), (2, 3, -1), (3, 2, -1)]),
    (false, [(0, 2, 1), (1, 3, 1), (2, 0, 1), (3, 1, 1)]),
    (true, [(0, 3, 1), (1, 2, -1), (2, 1, 1), (3, 0, -1)]),
];

const SLOTS_C: [Slot; 4] = [
    (false, [(0, 0, 1), (1, 1, -1), (2, 2, 1), (3, 3, -1)]),
    (false, [(0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, 1)]),
    (true, [(0, 2, 1), (1, 3, 1), (2, 0, -1), (3, 1, -1)]),
    (false, [(0, 3, 1), (1, 2, -1), (2, 1, -1), (3, 0, 1)]),
];

/// Coordinate vectors of the elementary fillings of a slot list: each
/// symmetric or antisymmetric unit of the parameter block, copied with signs
/// into its four block positions.
fn placed_basis(k: usize, slots: &[Slot], pairs: &[(usize, usize)]) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for &(symmetric, places) in slots {
        let mut params: Vec<Matrix> = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let mut p = Matrix::zeros(k, k);
                p.set(i, j, Scalar::one());
                p.set(j, i, if symmetric { Scalar::one() } else { -Scalar::one() });
                params.push(p);
            }
        }
        if symmetric {
            for i in 0..k {
                let mut p = Matrix::zeros(k, k);
                p.set(i, i, Scalar::one());
                params.push(p);
            }
        }
        for p in params {
            let mut m = Matrix::zeros(4 * k, 4 * k);
            for &(gr, gc, sign) in &places {
                for a in 0..k {
                    for b in 0..k {
                        let val = p.get(a, b) * &Scalar::from_int(sign);
                        m.set(gr * k + a, gc * k + b, val);
                    }
                }
            }
            assert!(m.add(&m.transpose()).is_zero(), "placement is antisymmetric");
            out.push(coords_of(&m, pairs));
        }
    }
    out
}

/// The centralizer of the identity component inside a graded component, in
/// coordinates over that component's basis. It is one-dimensional.
fn centralizer_line(g: &LieAlgebra, e_basis: &[Vec<Scalar>], basis: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = g.dim();
    let d = basis.len();
    let mut stacked = Matrix::zeros(n * e_basis.len(), d);
    for (zi, z) in e_basis.iter().enumerate() {
        for (col, u) in basis.iter().enumerate() {
            let w = g.bracket(z, u);
            for (row, c) in w.into_iter().enumerate() {
                stacked.set(zi * n + row, col, c);
            }
        }
    }
    let mut lines = stacked.kernel_basis();
    assert_eq!(lines.len(), 1, "centralizer of g_e is a line");
    lines.pop().unwrap()
}

/// Builds so(4k) with its Z2 x Z2 grading. The identity component is the
/// image of sp(k); it and two of the graded components are filled in by
/// explicit block placements, and the last is their orthogonal complement
/// under the trace form. Labels follow the Klein group with e = 0, a = 1,
/// b = 2, c = 3 and bitwise xor as the product.
pub fn build_so_grading(k: usize) -> SoStructure {
    assert!(k >= 1, "k must be positive");
    let m4 = 4 * k;
    let g = so(m4);
    let n = g.dim();
    let pairs = so_pairs(m4);

    let e_basis = placed_basis(k, &SLOTS_E, &pairs);
    let a_basis = placed_basis(k, &SLOTS_A, &pairs);
    let c_basis = placed_basis(k, &SLOTS_C, &pairs);
    let mut rows = Matrix::zeros(e_basis.len() + a_basis.len() + c_basis.len(), n);
    for (i, v) in e_basis.iter().chain(&a_basis).chain(&c_basis).enumerate() {
        for (j, x) in v.iter().enumerate() {
            rows.set(i, j, x.clone());
        }
    }
    let b_basis = rows.kernel_basis();

    let bases = [e_basis, a_basis, b_basis, c_basis];
    assert_eq!(bases[0].len(), k * (2 * k + 1), "identity component size");
    for basis in &bases[1..] {
        assert_eq!(basis.len(), k * (2 * k - 1), "graded component size");
    }
    let components: Vec<Subspace> = bases
        .iter()
        .map(|b| Subspace::from_spanning(n, b))
        .collect();
    for (c, basis) in components.iter().zip(&bases) {
        assert_eq!(c.dim(), basis.len(), "component basis is independent");
    }
    let grading = Grading {
        ambient: n,
        bits: 2,
        components,
        labels: vec!["e".into(), "a".into(), "b".into(), "c".into()],
    };

    let comps = (1..4)
        .map(|idx| {
            let basis = bases[idx].clone();
            let d = basis.len();
            let gram = Matrix::from_fn(d, d, |i, j| khat(&basis[i], &basis[j]));
            let center = centralizer_line(&g, &bases[0], &basis);
            ComponentData {
                basis,
                gram,
                center,
            }
        })
        .collect();
    SoStructure {
        k,
        algebra: g,
        grading,
        comps,
    }
}

impl SoStructure {
    /// Basis of g_a + g_b + g_c in which the adapted metrics are expressed:
    /// the three component bases in order.
    pub fn metric_basis(&self) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for c in &self.comps {
            out.extend(c.basis.iter().cloned());
        }
        out
    }

    pub fn component_dims(&self) -> [usize; 3] {
        [
            self.grading.components[1].dim(),
            self.grading.components[2].dim(),
            self.grading.components[3].dim(),
        ]
    }
}

/// The two-parameter family of adapted metrics on the graded components:
/// lambda1 on the complement of the symmetric-block directions, lambda2 on
/// the symmetric diagonal, with the forced diagonal coupling.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct MetricSpec {
    /// Order of the symmetric blocks (equals k for the so(4k) grading).
    pub r: usize,
    /// Dimensions of g_a, g_b, g_c.
    pub dims: [usize; 3],
    pub lambda1: [Scalar; 3],
    pub lambda2: [Scalar; 3],
}

impl MetricSpec {
    pub fn for_so(k: usize, lambda1: [Scalar; 3], lambda2: [Scalar; 3]) -> Self {
        MetricSpec {
            r: k,
            dims: [k * (2 * k - 1); 3],
            lambda1,
            lambda2,
        }
    }
}

fn mu_values(spec: &MetricSpec, idx: usize) -> [Scalar; 3] {
    let l1 = &spec.lambda1[idx];
    let l2 = &spec.lambda2[idx];
    let r = Scalar::from_int(spec.r as i64);
    let mu1 = l1.clone();
    let mu2 = l2.clone() / Scalar::from_int(2) + l1.clone() / Scalar::from_int(4);
    let mu3 = l2 * &((r.clone() + &Scalar::one()) / Scalar::from_int(2))
        - &(l1 * &((r - &Scalar::one()) / Scalar::from_int(4)));
    [mu1, mu2, mu3]
}

fn spec_check(spec: &MetricSpec) -> Result<(), LieError> {
    if spec.r == 0 || spec.dims.iter().any(|&d| d < spec.r) {
        return Err(LieError::Precondition("inconsistent block order".into()));
    }
    for idx in 0..3 {
        if !spec.lambda1[idx].is_real() || !spec.lambda2[idx].is_real() {
            return Err(LieError::Precondition("metric parameters must be real".into()));
        }
        if spec.lambda1[idx].is_zero() {
            return Err(LieError::Precondition("lambda1 must be nonzero".into()));
        }
        if mu_values(spec, idx).iter().any(Scalar::is_zero) {
            return Err(LieError::Precondition("degenerate metric spec".into()));
        }
    }
    Ok(())
}

/// Eigenvalues (mu1, mu2, mu3) with multiplicities (dim - r, r - 1, 1) for
/// each of the three graded components.
pub fn metric_eigenvalues(spec: &MetricSpec) -> Result<Vec<[(Scalar, usize); 3]>, LieError> {
    spec_check(spec)?;
    let mut out = Vec::new();
    for idx in 0..3 {
        let [m1, m2, m3] = mu_values(spec, idx);
        out.push([
            (m1, spec.dims[idx] - spec.r),
            (m2, spec.r - 1),
            (m3, 1),
        ]);
    }
    Ok(out)
}

fn sign_of(s: &Scalar) -> i32 {
    if s.is_zero() {
        0
    } else if s.re.is_positive() {
        1
    } else {
        -1
    }
}

/// Signature of each component form and of their orthogonal sum, read off
/// the case table in the parameters: the thresholds are -lambda1/2 and
/// lambda1 (r-1) / (2 (r+1)).
pub fn metric_signature(
    spec: &MetricSpec,
) -> Result<(Vec<(usize, usize)>, (usize, usize)), LieError> {
    spec_check(spec)?;
    let mut per = Vec::new();
    let mut total = (0usize, 0usize);
    let r = Scalar::from_int(spec.r as i64);
    for idx in 0..3 {
        let d = spec.dims[idx];
        let l1 = &spec.lambda1[idx];
        let l2 = &spec.lambda2[idx];
        let upper = l1 * &((r.clone() - &Scalar::one())
            / (Scalar::from_int(2) * &(r.clone() + &Scalar::one())));
        let lower = -(l1.clone() / Scalar::from_int(2));
        let above = |a: &Scalar, b: &Scalar| sign_of(&(a.clone() - b)) > 0;
        let sig = if sign_of(l1) > 0 {
            if above(l2, &upper) {
                (d, 0)
            } else if above(l2, &lower) {
                (d - 1, 1)
            } else {
                (d - spec.r, spec.r)
            }
        } else if above(l2, &lower) {
            (spec.r, d - spec.r)
        } else if above(l2, &upper) {
            (1, d - 1)
        } else {
            (0, d)
        };
        total.0 += sig.0;
        total.1 += sig.1;
        per.push(sig);
    }
    Ok((per, total))
}

/// The Gram matrix of one component form in adapted coordinates: lambda1 on
/// the first dim - r directions, then the coupled symmetric-diagonal block.
pub fn metric_matrix(dim: usize, r: usize, l1: &Scalar, l2: &Scalar) -> Matrix {
    assert!(r >= 1 && dim >= r);
    let coupling = (l2.clone() - &(l1.clone() / Scalar::from_int(2))) / Scalar::from_int(2);
    Matrix::from_fn(dim, dim, |i, j| {
        if i == j {
            if i < dim - r {
                l1.clone()
            } else {
                l2.clone()
            }
        } else if i >= dim - r && j >= dim - r {
            coupling.clone()
        } else {
            Scalar::zero()
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MetricClass {
    pub riemannian: bool,
    pub lorentzian: bool,
    pub naturally_reductive: bool,
}

/// Classification of the adapted metric family from its parameters.
pub fn classify_metric(spec: &MetricSpec) -> Result<MetricClass, LieError> {
    let (per, total) = metric_signature(spec)?;
    let riemannian = total.1 == 0;
    let middle = per
        .iter()
        .enumerate()
        .filter(|(i, s)| s.1 == 1 && s.0 == spec.dims[*i] - 1)
        .count();
    let lorentzian = spec.lambda1.iter().all(|l| sign_of(l) > 0)
        && middle == 1
        && total.1 == 1;
    let l1 = &spec.lambda1[0];
    let naturally_reductive = spec.lambda1.iter().all(|l| l == l1)
        && spec
            .lambda2
            .iter()
            .all(|l| (Scalar::from_int(2) * l) == *l1);
    Ok(MetricClass {
        riemannian,
        lorentzian,
        naturally_reductive,
    })
}

/// Assembles the adapted metric on g_a + g_b + g_c in the coordinates of
/// `SoStructure::metric_basis`. Components are pairwise orthogonal; on each
/// one the form acts as lambda1 / 2 times the normalized trace form on the
/// orthogonal complement of the centralizer of g_e, and as
/// r lambda2 - (r-1) lambda1 / 2 times it on the centralizer line. These are
/// exactly the ad(g_e)-invariant forms, since the component splits into the
/// trivial centralizer line and a single complementary isotypic part.
pub fn adapted_metric(st: &SoStructure, spec: &MetricSpec) -> Result<Matrix, LieError> {
    if spec.r != st.k || spec.dims != st.component_dims() {
        return Err(LieError::DimensionMismatch {
            expected: st.k,
            got: spec.r,
        });
    }
    spec_check(spec)?;
    let total: usize = spec.dims.iter().sum();
    let mut b = Matrix::zeros(total, total);
    let mut offset = 0;
    let r = Scalar::from_int(spec.r as i64);
    for (idx, comp) in st.comps.iter().enumerate() {
        let d = spec.dims[idx];
        let l1 = &spec.lambda1[idx];
        let l2 = &spec.lambda2[idx];
        let half_l1 = l1.clone() / Scalar::from_int(2);
        let rho = &r * l2 - &((r.clone() - &Scalar::one()) * &half_l1);
        if rho.is_zero() {
            return Err(LieError::Precondition(
                "metric degenerates on the centralizer line".into(),
            ));
        }
        // Rank-one correction moving the centralizer line from lambda1/2 to
        // rho relative to the trace form.
        let gt = comp.gram.matvec(&comp.center);
        let mut norm = Scalar::zero();
        for (x, y) in comp.center.iter().zip(&gt) {
            norm += &(x * y);
        }
        let coeff = (rho - &half_l1) / norm;
        for i in 0..d {
            for j in 0..d {
                let val = &half_l1 * comp.gram.get(i, j) + &(&coeff * &(&gt[i] * &gt[j]));
                b.set(offset + i, offset + j, val);
            }
        }
        offset += d;
    }
    Ok(b)
}

/// Exact ad(g_e)-invariance of a form given in `metric_basis` coordinates:
/// B([Z,X], Y) + B(X, [Z,Y]) = 0 for every Z in the basis of g_e.
pub fn invariance_check(st: &SoStructure, b: &Matrix) -> bool {
    let basis = st.metric_basis();
    let dm = basis.len();
    if b.rows != dm || b.cols != dm {
        return false;
    }
    let n = st.algebra.dim();
    let cols = Matrix::from_fn(n, dm, |i, j| basis[j][i].clone());
    for z in st.grading.components[0].basis() {
        let mut a = Matrix::zeros(dm, dm);
        for (xi, x) in basis.iter().enumerate() {
            let w = st.algebra.bracket(z, x);
            let Some(sol) = cols.solve(&w) else {
                return false;
            };
            for i in 0..dm {
                a.set(i, xi, sol[i].clone());
            }
        }
        if !a.transpose().matmul(b).add(&b.matmul(&a)).is_zero() {
            return false;
        }
    }
    true
}
