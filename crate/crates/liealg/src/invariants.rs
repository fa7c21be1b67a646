//! Structural invariants: central and derived series, nilpotency and
//! solvability, characteristic sequences, center, Killing form, and
//! solvable extensions by a derivation.

use crate::core::{FieldTag, LieAlgebra, LieError, StructureConstants};
use crate::linalg::{basis_vector, vec_add, Matrix, Subspace};
use crate::scalar::Scalar;

/// Terms of a descending series until stabilization.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    /// g = terms[0] ⊇ terms[1] ⊇ ...; the last entry is the stable term.
    pub terms: Vec<Subspace>,
    pub reaches_zero: bool,
    /// Index of the first zero term when the series terminates.
    pub zero_index: Option<usize>,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

fn bracket_span(g: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let n = g.dim();
    let mut vecs = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            vecs.push(g.bracket(x, y));
        }
    }
    Subspace::from_spanning(n, &vecs)
}

fn descending_series(g: &LieAlgebra, step: impl Fn(&Subspace) -> Subspace) -> SeriesReport {
    let mut terms = vec![Subspace::full(g.dim())];
    loop {
        let next = step(terms.last().unwrap());
        if &next == terms.last().unwrap() {
            break;
        }
        terms.push(next);
        if terms.last().unwrap().dim() == 0 {
            break;
        }
    }
    let reaches_zero = terms.last().unwrap().dim() == 0;
    SeriesReport {
        zero_index: if reaches_zero {
            Some(terms.len() - 1)
        } else {
            None
        },
        terms,
        reaches_zero,
    }
}

/// C^0 = g, C^p = mu(C^{p-1}, g).
pub fn lower_central_series(g: &LieAlgebra) -> SeriesReport {
    let full = Subspace::full(g.dim());
    descending_series(g, |prev| bracket_span(g, prev, &full))
}

/// D^0 = g, D^p = mu(D^{p-1}, D^{p-1}).
pub fn derived_series(g: &LieAlgebra) -> SeriesReport {
    descending_series(g, |prev| bracket_span(g, prev, prev))
}

pub fn is_nilpotent(g: &LieAlgebra) -> bool {
    lower_central_series(g).reaches_zero
}

/// Smallest k with C^k = 0 (abelian has nilindex 1). Panics on
/// non-nilpotent input.
pub fn nilindex(g: &LieAlgebra) -> usize {
    let s = lower_central_series(g);
    s.zero_index.expect("nilindex of a non-nilpotent algebra")
}

pub fn is_solvable(g: &LieAlgebra) -> bool {
    derived_series(g).reaches_zero
}

pub fn is_filiform(g: &LieAlgebra) -> bool {
    g.dim() >= 3 && is_nilpotent(g) && nilindex(g) == g.dim() - 1
}

/// Engel criterion: every basis adjoint matrix is nilpotent.
pub fn engel_check(g: &LieAlgebra) -> bool {
    let n = g.dim();
    (0..n).all(|i| {
        let ad = g.ad_basis(i);
        let mut power = ad.clone();
        for _ in 1..n {
            if power.is_zero() {
                return true;
            }
            power = power.matmul(&ad);
        }
        power.is_zero()
    })
}

/// Z(g): the joint kernel of all basis adjoints.
pub fn center(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    if n == 0 {
        return Subspace::zero(0);
    }
    let mut stacked = Matrix::zeros(n * n, n);
    for i in 0..n {
        let ad = g.ad_basis(i);
        for r in 0..n {
            for c in 0..n {
                stacked.set(i * n + r, c, ad.get(r, c).clone());
            }
        }
    }
    Subspace::from_spanning(n, &stacked.kernel_basis())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicSequence {
    /// Decreasing Jordan block sizes of the maximizing nilpotent adjoint.
    pub sequence: Vec<usize>,
    /// The candidate set is heuristic; true genericity is not certified.
    pub heuristic_generic: bool,
}

/// Jordan block sizes (decreasing) of a nilpotent matrix, from the ranks of
/// its powers: the count of blocks of size exactly m is
/// r_{m-1} - 2 r_m + r_{m+1}.
fn jordan_blocks_nilpotent(m: &Matrix) -> Vec<usize> {
    let n = m.rows;
    let mut ranks = vec![n]; // rank of m^0
    let mut power = Matrix::identity(n);
    loop {
        power = power.matmul(m);
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        assert!(ranks.len() <= n + 1, "matrix is not nilpotent");
    }
    let top = ranks.len() - 1;
    let rank_at = |k: usize| if k < ranks.len() { ranks[k] } else { 0 };
    let mut blocks = Vec::new();
    for size in (1..=top).rev() {
        let count = rank_at(size - 1) + rank_at(size + 1) - 2 * rank_at(size);
        for _ in 0..count {
            blocks.push(size);
        }
    }
    blocks
}

/// The characteristic sequence c(g) = max over X outside C^1(g) of the
/// ordered Jordan type of ad X; the maximum is taken over a deterministic
/// heuristic candidate set (basis vectors outside C^1, pairwise sums, and
/// 64 seeded small-integer vectors).
pub fn characteristic_sequence(g: &LieAlgebra) -> Result<CharacteristicSequence, LieError> {
    if !is_nilpotent(g) {
        return Err(LieError::Precondition(
            "characteristic sequence is defined for nilpotent algebras".to_string(),
        ));
    }
    let n = g.dim();
    let c1 = g.derived_subspace();
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    let basis_outside: Vec<Vec<Scalar>> = (0..n)
        .map(|i| basis_vector(n, i))
        .filter(|v| !c1.contains(v))
        .collect();
    candidates.extend(basis_outside.iter().cloned());
    for i in 0..basis_outside.len() {
        for j in (i + 1)..basis_outside.len() {
            candidates.push(vec_add(&basis_outside[i], &basis_outside[j]));
        }
    }
    // 64 deterministic small-integer vectors from a fixed LCG.
    let mut state: u64 = 0x9e3779b97f4a7c15;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 5) as i64 - 2 // in -2..=2
    };
    for _ in 0..64 {
        let v: Vec<Scalar> = (0..n).map(|_| Scalar::from_int(next())).collect();
        if !c1.contains(&v) {
            candidates.push(v);
        }
    }
    let mut best: Option<Vec<usize>> = None;
    for x in &candidates {
        let blocks = jordan_blocks_nilpotent(&g.ad(x));
        // Pad with implicit 1-blocks so sizes sum to n (kernel directions
        // outside the reached chain are 1-blocks already; the rank formula
        // accounts for all of them, so this is a consistency pad only).
        debug_assert_eq!(blocks.iter().sum::<usize>(), n);
        if best.as_ref().map_or(true, |b| &blocks > b) {
            best = Some(blocks);
        }
    }
    Ok(CharacteristicSequence {
        sequence: best.expect("at least one candidate outside C^1"),
        heuristic_generic: true,
    })
}

/// K_ab = Tr(ad e_a ∘ ad e_b).
pub fn killing_form(g: &LieAlgebra) -> Matrix {
    let n = g.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| g.ad_basis(i)).collect();
    Matrix::from_fn(n, n, |a, b| {
        let prod = ads[a].matmul(&ads[b]);
        let mut tr = Scalar::zero();
        for i in 0..n {
            tr += prod.get(i, i);
        }
        tr
    })
}

pub fn is_semisimple(g: &LieAlgebra) -> bool {
    g.dim() > 0 && !killing_form(g).det().is_zero()
}

/// Sylvester signature of the Killing form; only over Q.
pub fn killing_signature(g: &LieAlgebra) -> Result<(usize, usize, usize), LieError> {
    if g.field_tag != FieldTag::Q {
        return Err(LieError::Precondition(
            "signature is defined over the ordered field Q".to_string(),
        ));
    }
    Ok(killing_form(g).signature())
}

/// Checks the derivation identity f(mu(X,Y)) = mu(f X, Y) + mu(X, f Y) on
/// all basis pairs.
pub fn is_derivation(g: &LieAlgebra, f: &Matrix) -> bool {
    let n = g.dim();
    assert_eq!((f.rows, f.cols), (n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = f.matvec(&g.sc.bracket_basis(i, j));
            let rhs = vec_add(
                &g.bracket(&f.col(i), &basis_vector(n, j)),
                &g.bracket(&basis_vector(n, i), &f.col(j)),
            );
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// The solvable extension g ⋊_f K e_{n+1} with mu'(X, e_{n+1}) = -f(X),
/// i.e. mu'(e_{n+1}, X) = f(X): the new generator acts by the derivation.
pub fn extend_by_derivation(g: &LieAlgebra, f: &Matrix) -> Result<LieAlgebra, LieError> {
    if !is_derivation(g, f) {
        return Err(LieError::Precondition(
            "matrix is not a derivation".to_string(),
        ));
    }
    let n = g.dim();
    let mut sc = StructureConstants::new(n + 1);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let c = g.sc.get(i, j, k);
                if !c.is_zero() {
                    sc.set(i, j, k, c);
                }
            }
        }
        for k in 0..n {
            let c = f.get(k, i).clone();
            if !c.is_zero() {
                sc.set(n, i, k, c);
            }
        }
    }
    LieAlgebra::new(sc, g.field_tag, None)
}
