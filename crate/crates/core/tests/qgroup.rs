use braidbox_core::qgroup::{
    check_pentagon, dual_quantum_group, dual_unitary, generate_quantum_group, group_multiplicative_unitary,
    FiniteGroup, QuantumGroup,
};
use braidbox_core::tensor::{identity, kron, max_abs_diff, Tolerance, C64};
use ndarray::Array2;

fn groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z/2", FiniteGroup::cyclic(2)),
        ("Z/3", FiniteGroup::cyclic(3)),
        ("Z/4", FiniteGroup::cyclic(4)),
        ("S3", FiniteGroup::symmetric3()),
    ]
}

#[test]
fn group_unitaries_are_multiplicative() {
    for (name, g) in groups() {
        let w = group_multiplicative_unitary(&g);
        let n = g.order();
        assert!(check_pentagon(w.matrix(), n).unwrap() <= 1e-12, "{name}");
    }
}

#[test]
fn non_associative_table_is_rejected() {
    // a Latin square with identity 0 that is not associative
    let table = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    let err = FiniteGroup::from_table(table).unwrap_err();
    assert!(err.to_string().contains("invalid group table"), "{err}");
}

#[test]
fn table_without_identity_is_rejected() {
    let err = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
    assert!(err.to_string().contains("no identity"), "{err}");
}

#[test]
fn identity_is_multiplicative() {
    assert_eq!(check_pentagon(&identity(9), 3).unwrap(), 0.0);
}

#[test]
fn adjoint_of_s3_unitary_is_not_multiplicative() {
    let g = FiniteGroup::symmetric3();
    let w = group_multiplicative_unitary(&g);
    let wstar = braidbox_core::tensor::dagger(w.matrix());
    assert!(check_pentagon(&wstar, 6).unwrap() > 0.5);
}

#[test]
fn pentagon_rejects_wrong_size() {
    assert!(check_pentagon(&identity(5), 2).is_err());
}

#[test]
fn slice_algebras_have_group_order() {
    for (name, g) in groups() {
        let qg = QuantumGroup::from_group(&g).unwrap();
        assert_eq!(qg.a().dim(), g.order(), "{name}");
        assert_eq!(qg.ahat().dim(), g.order(), "{name}");
        let r = qg.report();
        assert!(r.worst() <= 1e-9 * 36.0, "{name}: {r:?}");
    }
}

#[test]
fn z2_sides_are_circulant_and_diagonal() {
    let qg = QuantumGroup::from_group(&FiniteGroup::cyclic(2)).unwrap();
    let tol = Tolerance::default();
    assert!(qg.a().is_commutative(&tol));
    // the leg-2 side contains the circulant flip, the leg-1 side the diagonal projections
    let lambda = FiniteGroup::cyclic(2).left_regular(1);
    assert!(qg.a().space().membership_residual(&lambda) < 1e-12);
    let p0 = FiniteGroup::cyclic(2).delta(0);
    assert!(qg.ahat().space().membership_residual(&p0) < 1e-12);
    assert!(qg.a().space().membership_residual(&p0) > 0.1);
}

#[test]
fn group_algebra_comultiplication_is_diagonal() {
    for (name, g) in groups() {
        let qg = QuantumGroup::from_group(&g).unwrap();
        for x in 0..g.order() {
            let l = g.left_regular(x);
            assert!(max_abs_diff(&qg.comult_op(&l), &kron(&l, &l)) < 1e-12, "{name}");
        }
    }
}

#[test]
fn function_algebra_comultiplication_matches_oracle() {
    // Δ̂(δ_g) = Σ_{yx = g} δ_x ⊗ δ_y
    for (name, g) in groups() {
        let qg = QuantumGroup::from_group(&g).unwrap();
        let n = g.order();
        for t in 0..n {
            let mut expected = Array2::zeros((n * n, n * n));
            for x in 0..n {
                for y in 0..n {
                    if g.mul(y, x) == t {
                        expected[[x * n + y, x * n + y]] = C64::new(1.0, 0.0);
                    }
                }
            }
            assert!(max_abs_diff(&qg.dual_comult_op(&g.delta(t)), &expected) < 1e-12, "{name}");
        }
    }
}

#[test]
fn counit_on_group_algebra() {
    // e(a·1 + b·λ) = a + b
    let g = FiniteGroup::cyclic(2);
    let qg = QuantumGroup::from_group(&g).unwrap();
    let (a, b) = (C64::new(0.3, -1.2), C64::new(2.5, 0.7));
    let x = identity(2).mapv(|z| z * a) + g.left_regular(1).mapv(|z| z * b);
    assert!((qg.counit_of(&x) - (a + b)).norm() < 1e-12);
    // the dual counit evaluates at the identity element
    let f = g.delta(0).mapv(|z| z * 3.0) + g.delta(1).mapv(|z| z * 5.0);
    assert!((qg.dual_counit_of(&f) - C64::new(3.0, 0.0)).norm() < 1e-12);
}

#[test]
fn coassociativity_and_podles() {
    let tol = Tolerance::default();
    for (name, g) in groups() {
        let qg = QuantumGroup::from_group(&g).unwrap();
        assert!(qg.coassociativity() <= 1e-12, "{name}");
        assert!(qg.dual_coassociativity() <= 1e-12, "{name}");
        let (r, l) = qg.podles(&tol).unwrap();
        assert!(r.holds() && l.holds(), "{name}");
        let (r, l) = qg.dual_podles(&tol).unwrap();
        assert!(r.holds() && l.holds(), "{name}");
        assert!(qg.bialgebra().star_hom_residual() <= 1e-12, "{name}");
        assert!(qg.dual_bialgebra().star_hom_residual() <= 1e-12, "{name}");
    }
}

#[test]
fn dual_swaps_the_algebras() {
    let tol = Tolerance::default();
    let qg = QuantumGroup::from_group(&FiniteGroup::cyclic(3)).unwrap();
    let d = dual_quantum_group(&qg, &tol).unwrap();
    let (same, r) = braidbox_core::tensor::subspace_equal(d.a().space(), qg.ahat().space(), &tol).unwrap();
    assert!(same, "{r}");
    let (same, _) = braidbox_core::tensor::subspace_equal(d.ahat().space(), qg.a().space(), &tol).unwrap();
    assert!(same);
    assert!(d.report().dual_characterizing <= 1e-12);
}

#[test]
fn double_dual_recovers_unitary() {
    let g = FiniteGroup::symmetric3();
    let w = group_multiplicative_unitary(&g);
    let back = dual_unitary(&dual_unitary(w.matrix(), 6), 6);
    assert_eq!(max_abs_diff(&back, w.matrix()), 0.0);
}

#[test]
fn s3_group_algebra_is_not_cocommutative_dual() {
    let qg = QuantumGroup::from_group(&FiniteGroup::symmetric3()).unwrap();
    let tol = Tolerance::default();
    assert!(!qg.a().is_commutative(&tol));
    assert!(qg.cocommutativity_residual() < 1e-12);
    assert!(qg.dual_bialgebra().comult.coeffs.iter().any(|z| z.norm() > 1e-3));
    let d = dual_quantum_group(&qg, &tol).unwrap();
    assert!(d.cocommutativity_residual() > 0.1);
    let gen = generate_quantum_group(group_multiplicative_unitary(&FiniteGroup::cyclic(2)), &tol).unwrap();
    assert_eq!(gen.dim_h0(), 2);
}
