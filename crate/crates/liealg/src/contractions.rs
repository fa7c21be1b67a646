//! Contraction engine: one-parameter basis-change families with exact
//! rational-function entries in a parameter eps, symbolic limits at
//! eps -> 0, Inonu-Wigner in closed form, Weimar-Woods diagonal families,
//! Saletan iteration, and the contact / Frobenius model contractions.

use crate::core::{exterior_derivative, LieAlgebra, LieError, ScalarForm, StructureConstants};
use crate::linalg::{basis_vector, Matrix, Subspace};
use crate::scalar::Scalar;

/// Polynomial in eps over Scalar; coefficient of eps^i at index i,
/// trailing zeros trimmed (zero polynomial = empty vector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub c: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        Poly { c: vec![s] }.trimmed()
    }

    pub fn monomial(k: usize, s: Scalar) -> Self {
        if s.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::zero(); k + 1];
        c[k] = s;
        Poly { c }
    }

    fn trimmed(mut self) -> Self {
        while self.c.last().map_or(false, Scalar::is_zero) {
            self.c.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn eval_at_zero(&self) -> Scalar {
        self.c.first().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.c.len().max(other.c.len());
        let mut c = vec![Scalar::zero(); len];
        for (i, v) in self.c.iter().enumerate() {
            c[i] = v.clone();
        }
        for (i, v) in other.c.iter().enumerate() {
            c[i] = c[i].clone() + v;
        }
        Poly { c }.trimmed()
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            c: self.c.iter().map(|v| -v.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].clone() + &(a * b);
                }
            }
        }
        Poly { c }.trimmed()
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly {
            c: self.c.iter().map(|v| v * s).collect(),
        }
        .trimmed()
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.c[dd].inv();
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let coef = &rem.c[rd] * &lead_inv;
            let q = Poly::monomial(rd - dd, coef);
            rem = rem.sub(&q.mul(d));
            quo = quo.add(&q);
        }
        (quo, rem)
    }

    /// Monic gcd (gcd(0,0) = 0).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.degree() {
            None => a,
            Some(d) => {
                let inv = a.c[d].inv();
                a.scale(&inv)
            }
        }
    }
}

/// Rational function num/den in canonical form: num and den coprime,
/// den monic and nonzero; the zero function is 0/1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead = den.c[den.degree().unwrap()].inv();
        RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        RatFunc {
            num: Poly::from_scalar(s),
            den: Poly::one(),
        }
    }

    /// eps^e, allowing negative exponents.
    pub fn eps_pow(e: i64) -> Self {
        if e >= 0 {
            RatFunc {
                num: Poly::monomial(e as usize, Scalar::one()),
                den: Poly::one(),
            }
        } else {
            RatFunc {
                num: Poly::one(),
                den: Poly::monomial((-e) as usize, Scalar::one()),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, other: &RatFunc) -> Option<RatFunc> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn scale(&self, s: &Scalar) -> RatFunc {
        if s.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    /// The value at eps = 0: None signals a pole.
    pub fn limit_at_zero(&self) -> Option<Scalar> {
        let d0 = self.den.eval_at_zero();
        if d0.is_zero() {
            // Canonical form: num and den are coprime, so this is a pole.
            return None;
        }
        Some(self.num.eval_at_zero() / d0)
    }
}

/// n x n matrix of rational functions in eps, used as a one-parameter
/// family of basis changes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamMatrix {
    pub n: usize,
    entries: Vec<RatFunc>,
}

impl ParamMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> RatFunc) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        ParamMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        ParamMatrix::from_fn(n, |i, j| {
            if i == j {
                RatFunc::one()
            } else {
                RatFunc::zero()
            }
        })
    }

    /// diag(eps^{e_1}, ..., eps^{e_n}).
    pub fn diag_eps(exponents: &[i64]) -> Self {
        ParamMatrix::from_fn(exponents.len(), |i, j| {
            if i == j {
                RatFunc::eps_pow(exponents[i])
            } else {
                RatFunc::zero()
            }
        })
    }

    /// eps * Id, the family contracting everything to the abelian algebra.
    pub fn scalar_eps(n: usize) -> Self {
        ParamMatrix::diag_eps(&vec![1; n])
    }

    pub fn from_scalar_matrix(m: &Matrix) -> Self {
        assert_eq!(m.rows, m.cols);
        ParamMatrix::from_fn(m.rows, |i, j| RatFunc::from_scalar(m.get(i, j).clone()))
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.n + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<RatFunc> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn det(&self) -> RatFunc {
        let n = self.n;
        let mut m = self.entries.clone();
        let at = |m: &Vec<RatFunc>, i: usize, j: usize| m[i * n + j].clone();
        let mut det = RatFunc::one();
        for c in 0..n {
            let pivot = (c..n).find(|&r| !m[r * n + c].is_zero());
            let pr = match pivot {
                None => return RatFunc::zero(),
                Some(pr) => pr,
            };
            if pr != c {
                for j in 0..n {
                    m.swap(pr * n + j, c * n + j);
                }
                det = det.neg();
            }
            let p = at(&m, c, c);
            det = det.mul(&p);
            let pinv = p.inv().unwrap();
            for r in (c + 1)..n {
                let f = at(&m, r, c).mul(&pinv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = at(&m, r, j).sub(&f.mul(&at(&m, c, j)));
                    m[r * n + j] = v;
                }
            }
        }
        det
    }

    /// Inverse over the rational-function field; None when det == 0.
    pub fn inverse(&self) -> Option<ParamMatrix> {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut inv = ParamMatrix::identity(n).entries;
        for c in 0..n {
            let pr = (c..n).find(|&r| !m[r * n + c].is_zero())?;
            if pr != c {
                for j in 0..n {
                    m.swap(pr * n + j, c * n + j);
                    inv.swap(pr * n + j, c * n + j);
                }
            }
            let pinv = m[c * n + c].inv().unwrap();
            for j in 0..n {
                m[c * n + j] = m[c * n + j].mul(&pinv);
                inv[c * n + j] = inv[c * n + j].mul(&pinv);
            }
            for r in 0..n {
                if r == c || m[r * n + c].is_zero() {
                    continue;
                }
                let f = m[r * n + c].clone();
                for j in 0..n {
                    let v = m[r * n + j].sub(&f.mul(&m[c * n + j]));
                    m[r * n + j] = v;
                    let w = inv[r * n + j].sub(&f.mul(&inv[c * n + j]));
                    inv[r * n + j] = w;
                }
            }
        }
        Some(ParamMatrix { n, entries: inv })
    }

    pub fn matvec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        (0..self.n)
            .map(|i| {
                let mut acc = RatFunc::zero();
                for j in 0..self.n {
                    let e = self.get(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&e.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Structure constants with rational-function entries: the conjugated
/// family mu_eps = F^{-1} mu(F ., F .).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamAlgebra {
    pub n: usize,
    entries: Vec<RatFunc>,
    field_tag: crate::core::FieldTag,
}

impl ParamAlgebra {
    fn pair_rank(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < n);
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> RatFunc {
        if i == j {
            return RatFunc::zero();
        }
        if i < j {
            self.entries[Self::pair_rank(self.n, i, j) * self.n + k].clone()
        } else {
            self.entries[Self::pair_rank(self.n, j, i) * self.n + k].neg()
        }
    }

    /// The algebra at eps = 0, when every entry has a finite value there
    /// and the limit table still satisfies Jacobi.
    pub fn limit_at_zero(&self) -> Option<LieAlgebra> {
        let mut sc = StructureConstants::new(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for k in 0..self.n {
                    let v = self.entries[Self::pair_rank(self.n, i, j) * self.n + k]
                        .limit_at_zero()?;
                    if !v.is_zero() {
                        sc.set(i, j, k, v);
                    }
                }
            }
        }
        LieAlgebra::new(sc, self.field_tag, None).ok()
    }
}

/// mu_eps(X, Y) = F^{-1} mu(F X, F Y), entries canonicalized.
pub fn param_act(g: &LieAlgebra, f: &ParamMatrix) -> Result<ParamAlgebra, LieError> {
    let n = g.dim();
    assert_eq!(f.n, n);
    let finv = f.inverse().ok_or(LieError::Singular)?;
    let mut entries = vec![RatFunc::zero(); n * (n - 1) / 2 * n];
    for i in 0..n {
        let vi = f.col(i);
        for j in (i + 1)..n {
            let vj = f.col(j);
            // mu(F e_i, F e_j) expanded bilinearly over basis pairs.
            let mut img = vec![RatFunc::zero(); n];
            for a in 0..n {
                for b in (a + 1)..n {
                    let coef = vi[a].mul(&vj[b]).sub(&vi[b].mul(&vj[a]));
                    if coef.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        let c = g.sc.get(a, b, k);
                        if !c.is_zero() {
                            img[k] = img[k].add(&coef.scale(&c));
                        }
                    }
                }
            }
            let new = finv.matvec(&img);
            let base = ParamAlgebra::pair_rank(n, i, j) * n;
            for (k, v) in new.into_iter().enumerate() {
                entries[base + k] = v;
            }
        }
    }
    Ok(ParamAlgebra {
        n,
        entries,
        field_tag: g.field_tag,
    })
}

/// Inonu-Wigner contraction along a subalgebra h, in closed form: in a
/// basis adapted to h plus an echelon complement, h-brackets are kept,
/// mixed brackets are projected onto the complement, and brackets of two
/// complement vectors vanish. The complement becomes an abelian ideal.
pub fn inonu_wigner(g: &LieAlgebra, h: &Subspace) -> Result<LieAlgebra, LieError> {
    let n = g.dim();
    assert_eq!(h.ambient, n);
    if !g.is_subalgebra(h) {
        return Err(LieError::NotASubalgebra);
    }
    let d = h.dim();
    let mut adapted: Vec<Vec<Scalar>> = h.basis().to_vec();
    adapted.extend(h.echelon_complement());
    let a = Matrix::from_rows(adapted).transpose();
    let ainv = a.inverse().expect("adapted basis is invertible");
    let mut sc = StructureConstants::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if i >= d {
                continue;
            }
            let v = g.bracket(&a.col(i), &a.col(j));
            let mut coords = ainv.matvec(&v);
            if j >= d {
                for c in coords.iter_mut().take(d) {
                    *c = Scalar::zero();
                }
            }
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    sc.set(i, j, k, c);
                }
            }
        }
    }
    LieAlgebra::new(sc, g.field_tag, None)
}

/// Diagonal family f(e_i) = eps^{n_i} e_i: entry C_ij^k scales by
/// eps^{n_i + n_j - n_k}; the limit keeps exponent 0, kills positive
/// exponents, and fails to exist on a negative one.
pub fn weimar_woods(g: &LieAlgebra, exponents: &[i64]) -> Option<LieAlgebra> {
    let n = g.dim();
    assert_eq!(exponents.len(), n);
    let mut sc = StructureConstants::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let c = g.sc.get(i, j, k);
                if c.is_zero() {
                    continue;
                }
                let s = exponents[i] + exponents[j] - exponents[k];
                if s < 0 {
                    return None;
                }
                if s == 0 {
                    sc.set(i, j, k, c);
                }
            }
        }
    }
    LieAlgebra::new(sc, g.field_tag, None).ok()
}

/// Search for a Weimar-Woods witness contracting g onto target: scan the
/// given constant base changes, then exponent vectors in lexicographic
/// order with entries in [-bound, bound]. Deterministic; returns the base
/// change index and exponents of the first hit.
pub fn find_ww_witness(
    g: &LieAlgebra,
    target: &LieAlgebra,
    base_changes: &[Matrix],
    bound: i64,
) -> Option<(usize, Vec<i64>)> {
    let n = g.dim();
    if target.dim() != n {
        return None;
    }
    for (bi, p) in base_changes.iter().enumerate() {
        let gp = match g.act(p) {
            Ok(gp) => gp,
            Err(_) => continue,
        };
        let width = (2 * bound + 1) as usize;
        let total = width.pow(n as u32);
        for code in 0..total {
            let mut exps = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                exps.push((c % width) as i64 - bound);
                c /= width;
            }
            exps.reverse();
            if let Some(limit) = weimar_woods(&gp, &exps) {
                if limit.sc == target.sc {
                    return Some((bi, exps));
                }
            }
        }
    }
    None
}

/// Saletan iteration along f_eps = eps Id + (1 - eps) G with G singular:
/// contract, then contract the result again with the same family, until
/// the structure constants repeat. Returns the strictly new algebras in
/// order; an empty list means g is already stationary.
pub fn saletan(g: &LieAlgebra, big_g: &Matrix) -> Result<Vec<LieAlgebra>, LieError> {
    let n = g.dim();
    assert_eq!((big_g.rows, big_g.cols), (n, n));
    if !big_g.det().is_zero() {
        return Err(LieError::Precondition(
            "Saletan matrix must be singular".to_string(),
        ));
    }
    let mut f = ParamMatrix::from_scalar_matrix(big_g);
    for i in 0..n {
        for j in 0..n {
            let lin = if i == j {
                Scalar::one() - big_g.get(i, j)
            } else {
                -big_g.get(i, j).clone()
            };
            let e = f.get(i, j).add(&RatFunc {
                num: Poly::monomial(1, lin),
                den: Poly::one(),
            });
            f.set(i, j, e);
        }
    }
    let mut out = Vec::new();
    let mut current = g.clone();
    for step in 0..=n {
        let pa = param_act(&current, &f)?;
        let next = pa.limit_at_zero().ok_or_else(|| {
            LieError::Precondition(format!("no limit at Saletan step {}", step + 1))
        })?;
        if next.sc == current.sc {
            break;
        }
        current = next.clone();
        out.push(next);
    }
    Ok(out)
}

/// A contact form together with an adapted basis X_1, ..., X_{2p+1}
/// (columns) in which d omega_1 = omega_2 ^ omega_3 + ... +
/// omega_2p ^ omega_{2p+1}.
#[derive(Clone, Debug)]
pub struct ContactWitness {
    pub omega: ScalarForm,
    pub adapted: Matrix,
}

fn two_form_matrix(g: &LieAlgebra, omega: &ScalarForm) -> Matrix {
    // B_ij = d omega(e_i, e_j) = omega([e_i, e_j]).
    let n = g.dim();
    Matrix::from_fn(n, n, |i, j| {
        let mut acc = Scalar::zero();
        for k in 0..n {
            let c = g.sc.get(i, j, k);
            if !c.is_zero() {
                acc += &(&c * &omega.get(&[k]));
            }
        }
        acc
    })
}

fn form_value(omega: &ScalarForm, v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            acc += &(x * &omega.get(&[i]));
        }
    }
    acc
}

/// Darboux basis of a nondegenerate skew form on the span of the given
/// vectors: pairs (u_k, v_k) with B(u_k, v_k) = 1 and all other values 0.
fn symplectic_basis(b: &Matrix, span: &[Vec<Scalar>]) -> Option<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
    let pairing = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let by = b.matvec(y);
        let mut acc = Scalar::zero();
        for (xi, byi) in x.iter().zip(&by) {
            if !xi.is_zero() && !byi.is_zero() {
                acc += &(xi * byi);
            }
        }
        acc
    };
    let mut vecs: Vec<Vec<Scalar>> = span.to_vec();
    let mut pairs = Vec::new();
    while !vecs.is_empty() {
        let u = vecs.remove(0);
        let pos = vecs.iter().position(|w| !pairing(&u, w).is_zero())?;
        let mut v = vecs.remove(pos);
        let c = pairing(&u, &v).inv();
        for x in v.iter_mut() {
            *x = &*x * &c;
        }
        for w in vecs.iter_mut() {
            let a = pairing(&u, w);
            let bb = pairing(&v, w);
            // w -> w - B(u,w) v + B(v,w) u kills both pairings.
            for k in 0..w.len() {
                let adj = (&a * &v[k]) - (&bb * &u[k]);
                w[k] = w[k].clone() - adj;
            }
        }
        pairs.push((u, v));
    }
    Some(pairs)
}

/// Exact contact test on odd dimension 2p+1: omega ^ (d omega)^p != 0.
pub fn check_contact(g: &LieAlgebra, omega: &ScalarForm) -> Result<bool, LieError> {
    let n = g.dim();
    if n % 2 == 0 {
        return Err(LieError::Precondition(
            "contact forms need odd dimension".to_string(),
        ));
    }
    assert_eq!(omega.p, 1);
    let p = (n - 1) / 2;
    let d = exterior_derivative(g, omega);
    let top = omega.wedge(&d.wedge_power(p));
    Ok(!top.is_zero())
}

fn build_contact_witness(g: &LieAlgebra, omega: &ScalarForm) -> Option<ContactWitness> {
    let n = g.dim();
    let b = two_form_matrix(g, omega);
    // Reeb direction: the kernel of d omega, normalized by omega = 1.
    let kernel = b.kernel_basis();
    if kernel.len() != 1 {
        return None;
    }
    let c = form_value(omega, &kernel[0]);
    if c.is_zero() {
        return None;
    }
    let cinv = c.inv();
    let reeb: Vec<Scalar> = kernel[0].iter().map(|x| x * &cinv).collect();
    // ker omega carries the nondegenerate restriction of d omega.
    let omega_row = Matrix::from_rows(vec![(0..n).map(|i| omega.get(&[i])).collect()]);
    let v = omega_row.kernel_basis();
    let pairs = symplectic_basis(&b, &v)?;
    let mut cols = vec![reeb];
    for (u, w) in pairs {
        cols.push(u);
        cols.push(w);
    }
    let adapted = Matrix::from_rows(cols).transpose();
    Some(ContactWitness {
        omega: omega.clone(),
        adapted,
    })
}

/// Bounded deterministic search for a contact form: dual basis vectors
/// first, then signed pairs, then all coefficient vectors over {-1,0,1}
/// for dimension at most 5.
pub fn find_contact_form(g: &LieAlgebra) -> Result<Option<ContactWitness>, LieError> {
    let n = g.dim();
    if n % 2 == 0 {
        return Err(LieError::Precondition(
            "contact forms need odd dimension".to_string(),
        ));
    }
    let mut candidates: Vec<ScalarForm> = (0..n).map(|i| ScalarForm::dual_basis(n, i)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let a = ScalarForm::dual_basis(n, i);
            let bj = ScalarForm::dual_basis(n, j);
            candidates.push(a.add(&bj));
            candidates.push(a.add(&bj.scale(&-Scalar::one())));
        }
    }
    if n <= 5 {
        let width = 3usize;
        for code in 0..width.pow(n as u32) {
            let mut c = code;
            let mut form = ScalarForm::zero(n, 1);
            for i in 0..n {
                let digit = (c % width) as i64 - 1;
                c /= width;
                if digit != 0 {
                    form = form.add(&ScalarForm::dual_basis(n, i).scale(&Scalar::from_int(digit)));
                }
            }
            candidates.push(form);
        }
    }
    for omega in candidates {
        if omega.is_zero() {
            continue;
        }
        if check_contact(g, &omega)? {
            if let Some(w) = build_contact_witness(g, &omega) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Contraction onto the Heisenberg algebra along f(X_1) = eps^2 X_1,
/// f(X_i) = eps X_i in the adapted contact basis. The result is expressed
/// in that basis.
pub fn contract_contact_to_heisenberg(
    g: &LieAlgebra,
    witness: &ContactWitness,
) -> Result<LieAlgebra, LieError> {
    let n = g.dim();
    if !check_contact(g, &witness.omega)? {
        return Err(LieError::Precondition(
            "witness form is not a contact form".to_string(),
        ));
    }
    let adapted = g.act(&witness.adapted)?;
    let mut exps = vec![1i64; n];
    exps[0] = 2;
    let pa = param_act(&adapted, &ParamMatrix::diag_eps(&exps))?;
    pa.limit_at_zero().ok_or_else(|| {
        LieError::Precondition("contact family has no limit".to_string())
    })
}

/// Exact Frobenius test on even dimension 2p: (d omega)^p != 0.
pub fn check_frobenius(g: &LieAlgebra, omega: &ScalarForm) -> Result<bool, LieError> {
    let n = g.dim();
    if n == 0 || n % 2 != 0 {
        return Err(LieError::Precondition(
            "Frobenius forms need positive even dimension".to_string(),
        ));
    }
    assert_eq!(omega.p, 1);
    let d = exterior_derivative(g, omega);
    Ok(!d.wedge_power(n / 2).is_zero())
}

fn frobenius_adapted_basis(g: &LieAlgebra, omega: &ScalarForm) -> Option<Matrix> {
    let n = g.dim();
    let b = two_form_matrix(g, omega);
    let omega_vec: Vec<Scalar> = (0..n).map(|i| omega.get(&[i])).collect();
    // X_2 is the unique vector with d omega(X_2, .) = -omega.
    let x2 = b.solve(&omega_vec)?;
    // X_1 is any vector with omega(X_1) = 1; then d omega(X_1, X_2) = 1.
    let i0 = omega_vec.iter().position(|v| !v.is_zero())?;
    let mut x1 = basis_vector(n, i0);
    let inv = omega_vec[i0].inv();
    x1[i0] = inv;
    // The remaining block: ker omega meet ker d omega(X_1, .).
    let row2 = b.transpose().matvec(&x1);
    let constraints = Matrix::from_rows(vec![omega_vec.clone(), row2]);
    let w = constraints.kernel_basis();
    let pairs = symplectic_basis(&b, &w)?;
    let mut cols = vec![x1, x2];
    for (u, v) in pairs {
        cols.push(u);
        cols.push(v);
    }
    if cols.len() != n {
        return None;
    }
    let a = Matrix::from_rows(cols).transpose();
    a.inverse()?;
    Some(a)
}

/// Contraction of a Frobenius pair (g, omega) along f(X_1) = eps^2 X_1,
/// f(X_2) = X_2, f(X_i) = eps X_i in an adapted basis with
/// d omega_1 = omega_1 ^ omega_2 + omega_3 ^ omega_4 + ...; the limit is
/// returned in that basis.
pub fn frobenius_contract_to_model(
    g: &LieAlgebra,
    omega: &ScalarForm,
) -> Result<LieAlgebra, LieError> {
    if !check_frobenius(g, omega)? {
        return Err(LieError::Precondition(
            "form is not Frobeniusian".to_string(),
        ));
    }
    let n = g.dim();
    let a = frobenius_adapted_basis(g, omega).ok_or_else(|| {
        LieError::Precondition("no adapted basis for the Frobenius form".to_string())
    })?;
    let adapted = g.act(&a)?;
    let mut exps = vec![1i64; n];
    exps[0] = 2;
    exps[1] = 0;
    let pa = param_act(&adapted, &ParamMatrix::diag_eps(&exps))?;
    pa.limit_at_zero().ok_or_else(|| {
        LieError::Precondition("Frobenius family has no limit".to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_is_zero;
    use crate::catalog;
    use crate::cohomology::derivations;
    use crate::linalg::basis_vector;

    fn perm_matrix(n: usize, image: &[usize]) -> Matrix {
        // Column j = e_{image[j]}: new basis vector j is old basis image[j].
        let mut m = Matrix::zeros(n, n);
        for (j, &i) in image.iter().enumerate() {
            m.set(i, j, Scalar::one());
        }
        m
    }

    #[test]
    fn ratfunc_canonical_forms() {
        // (eps^2 - eps) / (eps) reduces to eps - 1.
        let num = Poly {
            c: vec![Scalar::zero(), -Scalar::one(), Scalar::one()],
        };
        let den = Poly::monomial(1, Scalar::one());
        let r = RatFunc::new(num, den);
        assert_eq!(
            r.num,
            Poly {
                c: vec![-Scalar::one(), Scalar::one()]
            }
        );
        assert_eq!(r.den, Poly::one());
        assert_eq!(r.limit_at_zero(), Some(-Scalar::one()));
        // 1/eps has no limit.
        assert_eq!(RatFunc::eps_pow(-1).limit_at_zero(), None);
        // Arithmetic: eps * (1/eps) = 1.
        let e = RatFunc::eps_pow(1);
        assert_eq!(e.mul(&e.inv().unwrap()), RatFunc::one());
        assert_eq!(e.sub(&e), RatFunc::zero());
    }

    #[test]
    fn param_matrix_inverse_roundtrip() {
        let mut f = ParamMatrix::identity(2);
        f.set(0, 0, RatFunc::eps_pow(2));
        f.set(0, 1, RatFunc::one());
        let inv = f.inverse().unwrap();
        let mut prod = ParamMatrix::identity(2);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = RatFunc::zero();
                for k in 0..2 {
                    acc = acc.add(&f.get(i, k).mul(inv.get(k, j)));
                }
                prod.set(i, j, acc);
            }
        }
        assert_eq!(prod, ParamMatrix::identity(2));
        assert_eq!(f.det(), RatFunc::eps_pow(2));
    }

    #[test]
    fn scalar_eps_scales_constants() {
        let g = catalog::sl2();
        let pa = param_act(&g, &ParamMatrix::scalar_eps(3)).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                for k in 0..3 {
                    let expected = RatFunc {
                        num: Poly::monomial(1, g.sc.get(i, j, k)),
                        den: Poly::one(),
                    };
                    assert_eq!(pa.get(i, j, k), RatFunc::new(expected.num, expected.den));
                }
            }
        }
    }

    #[test]
    fn identity_family_is_constant() {
        let g = catalog::aff2();
        let pa = param_act(&g, &ParamMatrix::identity(2)).unwrap();
        let limit = pa.limit_at_zero().unwrap();
        assert_eq!(limit.sc, g.sc);
    }

    #[test]
    fn heisenberg_balanced_diagonal_cancels() {
        // diag(eps, 1, eps) on h3: mu_eps(e1, e2) = e3 exactly.
        let g = catalog::heisenberg(1);
        let pa = param_act(&g, &ParamMatrix::diag_eps(&[1, 0, 1])).unwrap();
        assert_eq!(pa.get(0, 1, 2), RatFunc::one());
        let limit = pa.limit_at_zero().unwrap();
        assert_eq!(limit.sc, g.sc);
    }

    #[test]
    fn everything_contracts_to_abelian() {
        for g in catalog::all_entries() {
            if g.dim() == 0 || g.dim() > 6 {
                continue;
            }
            let pa = param_act(&g, &ParamMatrix::scalar_eps(g.dim())).unwrap();
            let limit = pa.limit_at_zero().unwrap();
            assert_eq!(limit.sc, catalog::abelian(g.dim()).sc, "{:?}", g.name);
        }
    }

    #[test]
    fn so3_contracts_to_euclidean() {
        let g = catalog::so3();
        let pa = param_act(&g, &ParamMatrix::diag_eps(&[1, 1, 0])).unwrap();
        let limit = pa.limit_at_zero().unwrap();
        // mu0(e3, e1) = e2, mu0(e3, e2) = -e1, mu0(e1, e2) = 0.
        assert_eq!(limit.bracket(&basis_vector(3, 2), &basis_vector(3, 0)), basis_vector(3, 1));
        let m = limit.bracket(&basis_vector(3, 2), &basis_vector(3, 1));
        assert_eq!(m[0], -Scalar::one());
        assert!(m[1].is_zero() && m[2].is_zero());
        assert!(vec_is_zero(&limit.bracket(&basis_vector(3, 0), &basis_vector(3, 1))));
    }

    #[test]
    fn inonu_wigner_so3() {
        let g = catalog::so3();
        let h = Subspace::from_spanning(3, &[basis_vector(3, 2)]);
        let iw = inonu_wigner(&g, &h).unwrap();
        // Adapted basis (e3, e1, e2): [f1,f2] = f3, [f1,f3] = -f2.
        assert_eq!(iw.sc.get(0, 1, 2), Scalar::one());
        assert_eq!(iw.sc.get(0, 2, 1), -Scalar::one());
        assert!(iw.sc.get(1, 2, 0).is_zero());
        // Same algebra as the diagonal limit, up to the basis permutation.
        let pa = param_act(&g, &ParamMatrix::diag_eps(&[1, 1, 0])).unwrap();
        let limit = pa.limit_at_zero().unwrap();
        let permuted = limit.act(&perm_matrix(3, &[2, 0, 1])).unwrap();
        assert_eq!(permuted.sc, iw.sc);
    }

    #[test]
    fn inonu_wigner_abelian_fixed() {
        let g = catalog::abelian(4);
        let h = Subspace::from_spanning(4, &[basis_vector(4, 1), basis_vector(4, 3)]);
        assert_eq!(inonu_wigner(&g, &h).unwrap().sc, g.sc);
    }

    #[test]
    fn inonu_wigner_ideal_kills_mixed_brackets() {
        // h = span(e2) is an ideal of aff2; the result has [h, a] = 0,
        // hence is abelian here.
        let g = catalog::aff2();
        let h = Subspace::from_spanning(2, &[basis_vector(2, 1)]);
        let iw = inonu_wigner(&g, &h).unwrap();
        assert!(iw.sc.is_zero());
        // Non-subalgebra input is rejected: span(E, F) in sl2 closes onto H.
        let bad = Subspace::from_spanning(3, &[basis_vector(3, 1), basis_vector(3, 2)]);
        assert!(matches!(
            inonu_wigner(&catalog::sl2(), &bad),
            Err(LieError::NotASubalgebra)
        ));
    }

    #[test]
    fn inonu_wigner_complement_is_abelian_ideal() {
        let cases = vec![
            (catalog::sl2(), Subspace::from_spanning(3, &[basis_vector(3, 0)])),
            (catalog::so3(), Subspace::from_spanning(3, &[basis_vector(3, 2)])),
            (
                catalog::four_dim_solvable(),
                Subspace::from_spanning(4, &[basis_vector(4, 0), basis_vector(4, 1)]),
            ),
        ];
        for (g, h) in cases {
            let iw = inonu_wigner(&g, &h).unwrap();
            let d = h.dim();
            let n = g.dim();
            let compl = Subspace::from_spanning(
                n,
                &(d..n).map(|i| basis_vector(n, i)).collect::<Vec<_>>(),
            );
            assert!(iw.is_ideal(&compl), "{:?}", g.name);
            for i in d..n {
                for j in (i + 1)..n {
                    assert!(vec_is_zero(&iw.sc.bracket_basis(i, j)));
                }
            }
        }
    }

    #[test]
    fn weimar_woods_matches_param_act() {
        let cases = vec![
            (catalog::sl2(), vec![1, 0, -1]),
            (catalog::sl2(), vec![1, 1, 1]),
            (catalog::heisenberg(1), vec![1, 1, 2]),
            (catalog::four_dim_solvable(), vec![0, 1, 0, 1]),
            (catalog::heisenberg(1), vec![0, 0, 1]),
        ];
        for (g, exps) in cases {
            let direct = weimar_woods(&g, &exps);
            let symbolic = param_act(&g, &ParamMatrix::diag_eps(&exps))
                .unwrap()
                .limit_at_zero();
            match (direct, symbolic) {
                (None, None) => {}
                (Some(a), Some(b)) => assert_eq!(a.sc, b.sc),
                other => panic!("disagreement for {:?}: {:?}", exps, other.0.map(|g| g.sc)),
            }
        }
    }

    #[test]
    fn weimar_woods_trivial_exponents() {
        let g = catalog::sl2();
        assert_eq!(weimar_woods(&g, &[0, 0, 0]).unwrap().sc, g.sc);
        assert_eq!(
            weimar_woods(&g, &[1, 1, 1]).unwrap().sc,
            catalog::abelian(3).sc
        );
    }

    #[test]
    fn solvable_contracts_to_filiform() {
        // Frozen witness: basis change f1 = e1 + e4, f2 = e1 + e2 + e3,
        // f3 = e2 - e4, f4 = e2, then exponents (1, 1, 2, 3).
        let g = catalog::four_dim_solvable();
        let target = catalog::filiform4_target();
        let p = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::one(), Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero(), -Scalar::one()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
        ])
        .transpose();
        let gp = g.act(&p).unwrap();
        let limit = weimar_woods(&gp, &[1, 1, 2, 3]).unwrap();
        assert_eq!(limit.sc, target.sc);
        // The deterministic search over this base-change list finds it.
        let found = find_ww_witness(&g, &target, &[Matrix::identity(4), p.clone()], 3).unwrap();
        assert_eq!(found.0, 1);
        let gp3 = g.act(&p).unwrap();
        assert_eq!(weimar_woods(&gp3, &found.1).unwrap().sc, target.sc);
    }

    #[test]
    fn saletan_zero_matrix_gives_abelian() {
        let g = catalog::sl2();
        let seq = saletan(&g, &Matrix::zeros(3, 3)).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0].sc, catalog::abelian(3).sc);
        // A nonsingular matrix is rejected.
        assert!(saletan(&g, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn saletan_projection_is_inonu_wigner() {
        // G = E_33 projects onto the subalgebra span(e3) of so(3).
        let g = catalog::so3();
        let mut proj = Matrix::zeros(3, 3);
        proj.set(2, 2, Scalar::one());
        let seq = saletan(&g, &proj).unwrap();
        assert!(!seq.is_empty());
        let h = Subspace::from_spanning(3, &[basis_vector(3, 2)]);
        let iw = inonu_wigner(&g, &h).unwrap();
        // Saletan stays in the original basis order (e1, e2, e3); the IW
        // adapted basis is (e3, e1, e2).
        let permuted = seq[0].act(&perm_matrix(3, &[2, 0, 1])).unwrap();
        assert_eq!(permuted.sc, iw.sc);
    }

    #[test]
    fn saletan_h3_nilpotent_part() {
        let g = catalog::heisenberg(1);
        let mut gm = Matrix::zeros(3, 3);
        gm.set(2, 2, Scalar::one());
        let seq = saletan(&g, &gm).unwrap();
        assert!(seq.len() <= 2);
        for s in &seq {
            assert!(crate::core::validate_jacobi(&s.sc).ok);
        }
    }

    #[test]
    fn h3_contact_form() {
        let g = catalog::heisenberg(1);
        let w3 = ScalarForm::dual_basis(3, 2);
        assert!(check_contact(&g, &w3).unwrap());
        assert!(!check_contact(&g, &ScalarForm::dual_basis(3, 0)).unwrap());
        // h3 is a fixed point of the contact contraction.
        let witness = build_contact_witness(&g, &w3).unwrap();
        let limit = contract_contact_to_heisenberg(&g, &witness).unwrap();
        // In the adapted basis the center sits first: pairs map onto X1.
        let perm = perm_matrix(3, &[1, 2, 0]);
        assert_eq!(limit.act(&perm).unwrap().sc, g.sc);
    }

    #[test]
    fn abelian_has_no_contact_form() {
        assert!(find_contact_form(&catalog::abelian(3)).unwrap().is_none());
        assert!(find_contact_form(&catalog::abelian(2)).is_err());
    }

    #[test]
    fn sl2_contracts_to_heisenberg() {
        let g = catalog::sl2();
        let witness = find_contact_form(&g).unwrap().expect("sl2 is contact");
        let limit = contract_contact_to_heisenberg(&g, &witness).unwrap();
        let perm = perm_matrix(3, &[1, 2, 0]);
        assert_eq!(limit.act(&perm).unwrap().sc, catalog::heisenberg(1).sc);
    }

    #[test]
    fn h5_contact_fixed_point() {
        let g = catalog::heisenberg(2);
        let witness = find_contact_form(&g).unwrap().expect("h5 is contact");
        let limit = contract_contact_to_heisenberg(&g, &witness).unwrap();
        let perm = perm_matrix(5, &[1, 2, 3, 4, 0]);
        assert_eq!(limit.act(&perm).unwrap().sc, g.sc);
    }

    #[test]
    fn aff2_frobenius() {
        let g = catalog::aff2();
        assert!(!check_frobenius(&g, &ScalarForm::dual_basis(2, 0)).unwrap());
        let w2 = ScalarForm::dual_basis(2, 1);
        assert!(check_frobenius(&g, &w2).unwrap());
        let limit = frobenius_contract_to_model(&g, &w2).unwrap();
        // The p = 1 model: [X1, X2] = X1, i.e. d omega_1 = omega_1 ^ omega_2.
        assert_eq!(limit.sc.get(0, 1, 0), Scalar::one());
        assert!(limit.sc.get(0, 1, 1).is_zero());
    }

    #[test]
    fn abelian_has_no_frobenius_form() {
        let g = catalog::abelian(4);
        for i in 0..4 {
            assert!(!check_frobenius(&g, &ScalarForm::dual_basis(4, i)).unwrap());
        }
        assert!(frobenius_contract_to_model(&g, &ScalarForm::dual_basis(4, 0)).is_err());
    }

    #[test]
    fn frobenius_model_is_fixed() {
        let g = catalog::frobenius_model(2, &[Scalar::one()]).unwrap();
        let w1 = ScalarForm::dual_basis(4, 0);
        assert!(check_frobenius(&g, &w1).unwrap());
        let limit = frobenius_contract_to_model(&g, &w1).unwrap();
        assert_eq!(limit.sc, g.sc);
    }

    #[test]
    fn frobenius_limit_maurer_cartan_shape() {
        // In the limit, d omega_2 = 0 and every d omega_j for j >= 3 lies
        // in omega_2 ^ span(omega_3, ...).
        let g = catalog::frobenius_model(2, &[Scalar::from_int(2)]).unwrap();
        let w1 = ScalarForm::dual_basis(4, 0);
        let limit = frobenius_contract_to_model(&g, &w1).unwrap();
        let d2 = exterior_derivative(&limit, &ScalarForm::dual_basis(4, 1));
        assert!(d2.is_zero());
        for j in 2..4 {
            let dj = exterior_derivative(&limit, &ScalarForm::dual_basis(4, j));
            for a in 0..4 {
                for b in (a + 1)..4 {
                    if a != 1 {
                        assert!(dj.get(&[a, b]).is_zero(), "j={} a={} b={}", j, a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn derivation_dimension_grows_under_contraction() {
        // Every genuinely degenerate contraction computed above strictly
        // increases dim Der (the orbit dimension strictly drops).
        let so3 = catalog::so3();
        let e2 = inonu_wigner(&so3, &Subspace::from_spanning(3, &[basis_vector(3, 2)])).unwrap();
        assert!(derivations(&e2).len() > derivations(&so3).len());

        let sl2 = catalog::sl2();
        let h3 = catalog::heisenberg(1);
        assert!(derivations(&h3).len() > derivations(&sl2).len());

        let solvable = catalog::four_dim_solvable();
        let filiform = catalog::filiform4_target();
        assert!(derivations(&filiform).len() > derivations(&solvable).len());

        for g in [catalog::sl2(), catalog::aff2(), catalog::heisenberg(2)] {
            let n = g.dim();
            assert!(n * n > derivations(&g).len());
        }
    }

    #[test]
    fn nilpotency_preserved_by_contact_and_abelian_contractions() {
        use crate::invariants::is_nilpotent;
        for g in [catalog::heisenberg(1), catalog::heisenberg(2), catalog::filiform_model(4)] {
            assert!(is_nilpotent(&g));
            let ab = weimar_woods(&g, &vec![1; g.dim()]).unwrap();
            assert!(is_nilpotent(&ab));
        }
        let h5 = catalog::heisenberg(2);
        let w = find_contact_form(&h5).unwrap().unwrap();
        assert!(is_nilpotent(&contract_contact_to_heisenberg(&h5, &w).unwrap()));
    }
}
