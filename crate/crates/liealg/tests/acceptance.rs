//! End-to-end checks, one test per headline capability. Each test prints a
//! single pass/fail line through the harness.

use liealg::catalog;
use liealg::cohomology::{self, circle, delta, delta_matrix, AdjointCochain};
use liealg::contractions::{
    check_frobenius, contract_contact_to_heisenberg, find_contact_form, inonu_wigner, param_act,
    ParamMatrix,
};
use liealg::core::{
    exterior_derivative, validate_jacobi, FieldTag, LieAlgebra, ScalarForm, StructureConstants,
};
use liealg::deformations::{
    flag_decompose, integrate_step, jacobi_residuals, DeformationJet, TruncatedSeries,
};
use liealg::homogeneous::{
    build_so_grading, classify_metric, grading_check, metric_eigenvalues, metric_matrix,
    metric_signature, MetricSpec,
};
use liealg::invariants::{characteristic_sequence, is_filiform, nilindex};
use liealg::linalg::{basis_vector, Matrix, Subspace};
use liealg::rigidity::{nr_test, RigidityVerdict};
use liealg::scalar::Scalar;

fn s(x: i64) -> Scalar {
    Scalar::from_int(x)
}

/// The whole built-in family, with parameterized entries instantiated at
/// small sizes.
fn catalog_algebras() -> Vec<LieAlgebra> {
    vec![
        catalog::abelian(3),
        catalog::aff2(),
        catalog::heisenberg(1),
        catalog::heisenberg(2),
        catalog::filiform_model(4),
        catalog::filiform_model(6),
        catalog::filiform4_target(),
        catalog::four_dim_solvable(),
        catalog::sl2(),
        catalog::so3(),
        catalog::so(4),
        catalog::poincare(),
        catalog::rigid11(),
        catalog::frobenius_model(2, &[s(1)]).unwrap(),
    ]
}

fn lcg(state: &mut u64) -> i64 {
    *state = state
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    ((*state >> 33) % 13) as i64 - 6
}

#[test]
fn criterion_1_rigid11_has_one_dimensional_h2() {
    let report = cohomology::cohomology_dims(&catalog::rigid11(), 2);
    assert_eq!(report.dim_h, 1, "dim H^2(rigid11) = {}", report.dim_h);
}

#[test]
fn criterion_2_complex_is_consistent_iff_jacobi() {
    for g in catalog_algebras() {
        let n = g.dim();
        assert!(validate_jacobi(&g.sc).ok, "{:?}", g.name);
        // d squared vanishes on every dual 1-form.
        for i in 0..n {
            let dd = exterior_derivative(&g, &exterior_derivative(&g, &ScalarForm::dual_basis(n, i)));
            assert!(dd.is_zero(), "{:?} form {i}", g.name);
        }
        // delta_{p+1} after delta_p is zero. Large algebras are checked
        // cochain by cochain to exploit sparsity.
        for p in 0..3usize {
            if n <= 8 {
                let prod = delta_matrix(&g, p + 1).matmul(&delta_matrix(&g, p));
                assert!(prod.is_zero(), "{:?} p={p}", g.name);
            } else {
                let dim = AdjointCochain::space_dim(n, p);
                for l in 0..dim {
                    let mut coeffs = vec![Scalar::zero(); dim];
                    coeffs[l] = Scalar::one();
                    let phi = AdjointCochain::from_coeffs(n, p, coeffs);
                    assert!(delta(&g, &delta(&g, &phi)).is_zero(), "{:?} p={p} l={l}", g.name);
                }
            }
        }
    }
    // A law violating Jacobi breaks d squared on some 1-form.
    let mut sc = StructureConstants::new(3);
    sc.set_int(0, 1, 2, 1);
    sc.set_int(0, 2, 0, 1);
    sc.set_int(1, 2, 1, 1);
    let bad = LieAlgebra::new_unchecked(sc, FieldTag::Q, None);
    assert!(!validate_jacobi(&bad.sc).ok);
    assert!((0..3).any(|i| {
        !exterior_derivative(&bad, &exterior_derivative(&bad, &ScalarForm::dual_basis(3, i)))
            .is_zero()
    }));
}

#[test]
fn criterion_3_orbit_dimension_matches_coboundaries() {
    for g in catalog_algebras() {
        let n = g.dim();
        let der = cohomology::derivations(&g).len();
        let dim_b2 = cohomology::cohomology_dims(&g, 2).dim_b;
        assert_eq!(dim_b2, n * n - der, "{:?}", g.name);
    }
    let aff2 = catalog::aff2();
    assert_eq!(cohomology::derivations(&aff2).len(), 2);
    assert_eq!(cohomology::orbit_dimension(&aff2), 2);
    let h2 = cohomology::cohomology_dims(&aff2, 2);
    assert_eq!(h2.dim_h, 0);
    assert!(matches!(nr_test(&aff2), RigidityVerdict::Rigid { dim_h2: 0 }));
}

#[test]
fn criterion_4_contractions() {
    use cohomology::derivations;
    // (a) eps times the identity contracts everything to the abelian law.
    for g in catalog_algebras() {
        let n = g.dim();
        let limit = param_act(&g, &ParamMatrix::scalar_eps(n))
            .unwrap()
            .limit_at_zero()
            .expect("scalar family always has a limit");
        assert!(limit.sc.is_zero(), "{:?}", g.name);
        // (d) dim Der strictly increases under any non-identity contraction.
        if !g.sc.is_zero() {
            assert!(
                derivations(&limit).len() > derivations(&g).len(),
                "{:?}",
                g.name
            );
        }
    }
    // (b) Inonu-Wigner of so(3) at span(e3) is the euclidean algebra e(2):
    // in the adapted basis (f1, f2, f3) = (e3, e1, e2), [f1, f2] = f3 and
    // [f1, f3] = -f2 with abelian (f2, f3).
    let so3 = catalog::so3();
    let h = Subspace::from_spanning(3, &[basis_vector(3, 2)]);
    let e2 = inonu_wigner(&so3, &h).unwrap();
    assert_eq!(e2.sc.get(0, 1, 2), s(1));
    assert_eq!(e2.sc.get(0, 2, 1), s(-1));
    assert!(e2.sc.get(0, 1, 0).is_zero() && e2.sc.get(0, 1, 1).is_zero());
    assert!(e2.sc.get(0, 2, 0).is_zero() && e2.sc.get(0, 2, 2).is_zero());
    assert!(e2.sc.bracket_basis(1, 2).iter().all(Scalar::is_zero));
    assert!(derivations(&e2).len() > derivations(&so3).len());
    // (c) the contact contraction of sl2 is the Heisenberg algebra.
    let sl2 = catalog::sl2();
    let witness = find_contact_form(&sl2).unwrap().expect("sl2 is contact");
    let limit = contract_contact_to_heisenberg(&sl2, &witness).unwrap();
    // The adapted basis puts the center first; rotate it to position 3.
    let mut perm = Matrix::zeros(3, 3);
    for (col, row) in [1usize, 2, 0].iter().enumerate() {
        perm.set(*row, col, Scalar::one());
    }
    assert_eq!(limit.act(&perm).unwrap().sc, catalog::heisenberg(1).sc);
    assert!(derivations(&limit).len() > derivations(&sl2).len());
}

#[test]
fn criterion_5_invariant_table() {
    for n in 3..=7 {
        let c = characteristic_sequence(&catalog::filiform_model(n)).unwrap();
        assert_eq!(c.sequence, vec![n - 1, 1], "filiform({n})");
    }
    for p in 1..=3 {
        let c = characteristic_sequence(&catalog::heisenberg(p)).unwrap();
        let mut expected = vec![2usize];
        expected.extend(std::iter::repeat(1).take(2 * p - 1));
        assert_eq!(c.sequence, expected, "heisenberg({p})");
    }
    let c = characteristic_sequence(&catalog::abelian(4)).unwrap();
    assert_eq!(c.sequence, vec![1, 1, 1, 1]);
    assert_eq!(nilindex(&catalog::heisenberg(1)), 2);
    assert!(is_filiform(&catalog::filiform4_target()));
}

#[test]
fn criterion_6_deformations() {
    // Flag decomposition reconstructs 300 fuzzed truncated vectors and the
    // flag is invariant under constant rescalings.
    let mut state: u64 = 0x0dd_ba11;
    for case in 0..300 {
        let order = 4 + (case % 3);
        let dim = 2 + (case % 4);
        let vec: Vec<TruncatedSeries> = (0..dim)
            .map(|_| {
                let coeffs: Vec<Scalar> = (0..=order).map(|_| s(lcg(&mut state))).collect();
                TruncatedSeries::from_coeffs(order, &coeffs)
            })
            .collect();
        match flag_decompose(&vec) {
            Err(_) => continue,
            Ok(fd) => {
                assert_eq!(fd.reconstruct(dim, order), vec, "case {case}");
                let scaled: Vec<TruncatedSeries> =
                    vec.iter().map(|t| t.scale(&s(3))).collect();
                if let Ok(fd2) = flag_decompose(&scaled) {
                    assert_eq!(fd.vectors, fd2.vectors, "case {case}");
                }
            }
        }
    }
    // Order-1 and order-2 residuals are the usual cocycle and obstruction
    // expressions.
    let g = catalog::filiform_model(5);
    let mut phi1 = AdjointCochain::zero(5, 2);
    phi1.set(&[1, 2], 4, s(1));
    let mut phi2 = AdjointCochain::zero(5, 2);
    phi2.set(&[1, 3], 4, s(3));
    let jet = DeformationJet::new(g.clone(), vec![phi1.clone(), phi2.clone()], 4);
    let res = jacobi_residuals(&jet, 2);
    assert_eq!(res[0].1, delta(&g, &phi1));
    assert_eq!(res[1].1, circle(&g, &phi1, &phi1).add(&delta(&g, &phi2)));
    // On aff2 the 3-cochain space is zero, so integration never gets stuck.
    let aff2 = catalog::aff2();
    assert_eq!(AdjointCochain::space_dim(2, 3), 0);
    for seed in 0..5u64 {
        let mut state = 0xabcd ^ seed;
        let mut phi = AdjointCochain::zero(2, 2);
        phi.set(&[0, 1], 0, s(lcg(&mut state)));
        phi.set(&[0, 1], 1, s(lcg(&mut state)));
        let mut prefix = vec![phi];
        for _ in 0..4 {
            let next = integrate_step(&aff2, &prefix)
                .unwrap()
                .expect("no obstruction in degree 3");
            prefix.push(next);
        }
        let jet = DeformationJet::new(aff2.clone(), prefix.clone(), prefix.len());
        for (_, r) in jacobi_residuals(&jet, prefix.len()) {
            assert!(r.is_zero());
        }
    }
}

#[test]
fn criterion_7_double_extension() {
    use liealg::geometry::{double_extension, symplectic_check};
    let base = catalog::abelian(2);
    let omega = ScalarForm::from_coeff_fn(2, 2, |_| s(1));
    let zero_d = Matrix::zeros(2, 2);
    let (ext, form) = double_extension(&base, &omega, &zero_d)
        .unwrap()
        .expect("D = 0 extends");
    assert_eq!(ext.dim(), 4);
    assert!(validate_jacobi(&ext.sc).ok);
    assert!(symplectic_check(&ext, &form).unwrap());
    // D = Id leaves an obstruction 2-form outside B^2.
    let id = Matrix::identity(2);
    assert!(double_extension(&base, &omega, &id).unwrap().is_none());
}

#[test]
fn criterion_8_graded_metrics() {
    // The so(4k) grading closes for k = 1, 2, 3 with the expected dims.
    for k in 1..=3usize {
        let st = build_so_grading(k);
        assert!(grading_check(&st.algebra, &st.grading).unwrap(), "k = {k}");
        let dims: Vec<usize> = st.grading.components.iter().map(Subspace::dim).collect();
        assert_eq!(
            dims,
            vec![
                k * (2 * k + 1),
                k * (2 * k - 1),
                k * (2 * k - 1),
                k * (2 * k - 1)
            ],
            "k = {k}"
        );
    }
    // Formula signatures match congruence diagonalization on 100 fuzzed
    // parameter choices.
    let mut state: u64 = 0x51a_acce;
    let mut done = 0;
    while done < 100 {
        let k = 1 + (done % 2);
        let l1 = [s(lcg(&mut state)), s(lcg(&mut state)), s(lcg(&mut state))];
        let l2 = [s(lcg(&mut state)), s(lcg(&mut state)), s(lcg(&mut state))];
        let spec = MetricSpec::for_so(k, l1, l2);
        let Ok((per, _)) = metric_signature(&spec) else {
            continue;
        };
        for idx in 0..3 {
            let m = metric_matrix(spec.dims[idx], spec.r, &spec.lambda1[idx], &spec.lambda2[idx]);
            let (pos, neg, zero) = m.signature();
            assert_eq!(zero, 0);
            assert_eq!((pos, neg), per[idx]);
        }
        done += 1;
    }
    // lambda1 = 2 lambda2 collapses mu2 and mu3.
    let spec = MetricSpec::for_so(2, [s(2), s(6), s(-4)], [s(1), s(3), s(-2)]);
    for comp in metric_eigenvalues(&spec).unwrap() {
        assert_eq!(comp[1].0, comp[2].0);
    }
    // The six signature cases, one parameter choice per row (r = 2, d = 6;
    // thresholds lambda1 (r-1)/(2(r+1)) = lambda1/6 and -lambda1/2).
    let rows: [(i64, i64, (usize, usize)); 6] = [
        (6, 2, (6, 0)),  // l1 > 0, l2 > l1/6: definite
        (6, 0, (5, 1)),  // l1 > 0, -l1/2 < l2 < l1/6
        (6, -4, (4, 2)), // l1 > 0, l2 < -l1/2: (d - r, r)
        (-6, 4, (2, 4)), // l1 < 0, l2 > -l1/2 = 3: (r, d - r)
        (-6, 2, (1, 5)), // l1 < 0, l1/6 < l2 < -l1/2
        (-6, -2, (0, 6)), // l1 < 0, l2 < l1/6: negative definite
    ];
    for (l1, l2, expected) in rows {
        let spec = MetricSpec::for_so(2, [s(l1), s(l1), s(l1)], [s(l2), s(l2), s(l2)]);
        let (per, _) = metric_signature(&spec).unwrap();
        assert_eq!(per[0], expected, "l1 = {l1}, l2 = {l2}");
        let m = metric_matrix(6, 2, &s(l1), &s(l2));
        let (pos, neg, zero) = m.signature();
        assert_eq!(zero, 0);
        assert_eq!((pos, neg), expected);
    }
    let killing = MetricSpec::for_so(1, [s(2), s(2), s(2)], [s(1), s(1), s(1)]);
    assert!(classify_metric(&killing).unwrap().naturally_reductive);
}

#[test]
fn criterion_9_frobenius_model() {
    let g = catalog::frobenius_model(2, &[s(1)]).unwrap();
    assert!(validate_jacobi(&g.sc).ok);
    let w1 = ScalarForm::dual_basis(4, 0);
    assert!(check_frobenius(&g, &w1).unwrap());
    // Directly: (d w1)^2 is a nonzero 4-form.
    let top = exterior_derivative(&g, &w1).wedge_power(2);
    assert!(!top.is_zero());
}
