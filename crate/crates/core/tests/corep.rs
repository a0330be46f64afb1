use braidbox_core::bicharacter::{corrupt_phase, Bicharacter};
use braidbox_core::catalog::GroupPair;
use braidbox_core::corep::{
    braiding_equivariance, braiding_unitary, check_hexagons, check_intertwiner, check_symmetry, coordinate_grading,
    grading_corepresentation, regular_corep, rep_from_corep, tensor_corep, tensor_rep_image, Corepresentation,
};
use braidbox_core::qgroup::FiniteGroup;
use braidbox_core::tensor::{flip, identity, kron, max_abs_diff, ComplexMatrix, Tolerance, C64, I, ONE};
use ndarray::{Array1, Array2};
use proptest::prelude::*;

fn basis(n: usize, i: usize) -> Array1<C64> {
    let mut v = Array1::zeros(n);
    v[i] = ONE;
    v
}

/// Coordinate gradings of `ℂ^k` used as a corepresentation pool.
fn pool(g: &GroupPair, degree_lists: &[&[usize]]) -> Vec<Corepresentation> {
    degree_lists.iter().map(|d| g.grading(d).unwrap()).collect()
}

fn z2_pool(z2: &GroupPair) -> Vec<Corepresentation> {
    pool(z2, &[&[0], &[1], &[0, 1], &[1, 1, 0]])
}

fn z4_pool(z4: &GroupPair) -> Vec<Corepresentation> {
    pool(z4, &[&[1], &[0, 3], &[2, 1], &[0, 1, 2, 3]])
}

#[test]
fn z2_parity_grading() {
    let z2 = GroupPair::cyclic(2);
    let u = z2.grading(&[0, 1]).unwrap();
    let g = FiniteGroup::cyclic(2);
    let p0 = g.delta(0);
    let p1 = g.delta(1);
    let expected = kron(&p0, &identity(2)) + kron(&p1, &g.left_regular(1));
    assert!(max_abs_diff(&u.matrix(), &expected) < 1e-15);
    assert!(u.law_residual() < 1e-14);
}

#[test]
fn grading_at_identity_is_trivial() {
    let z3 = GroupPair::cyclic(3);
    let u = z3.grading(&[0, 0]).unwrap();
    assert!(max_abs_diff(&u.matrix(), &identity(6)) < 1e-15);
}

#[test]
fn z3_coordinate_grading() {
    let z3 = GroupPair::cyclic(3);
    let u = z3.grading(&[0, 1, 2]).unwrap();
    assert!(u.law_residual() < 1e-14);
}

#[test]
fn gradings_must_resolve_the_identity() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let mut ps = coordinate_grading(&[0, 1], 2);
    ps[1] = Array2::zeros((2, 2));
    assert!(grading_corepresentation(&z2.qg, &z2.group, &ps, &tol).is_err());
}

#[test]
fn tensor_unit_and_grading_addition() {
    let z2 = GroupPair::cyclic(2);
    let u = z2.grading(&[0, 1]).unwrap();
    let one = Corepresentation::trivial(z2.qg.bialgebra().clone(), 1);
    assert!(max_abs_diff(&tensor_corep(&one, &u).unwrap().matrix(), &u.matrix()) < 1e-15);
    // degrees add mod 2: (0,1) ⊗ (0,1) has degrees (0,1,1,0)
    let uu = tensor_corep(&u, &u).unwrap();
    let expected = z2.grading(&[0, 1, 1, 0]).unwrap();
    assert!(max_abs_diff(&uu.matrix(), &expected.matrix()) < 1e-14);
    assert!(uu.law_residual() < 1e-14);
}

#[test]
fn tensor_product_is_associative() {
    let z3 = GroupPair::cyclic(3);
    let [a, b, c] = [&[0usize, 1][..], &[2], &[1, 2]].map(|d| z3.grading(d).unwrap());
    let l = tensor_corep(&tensor_corep(&a, &b).unwrap(), &c).unwrap();
    let r = tensor_corep(&a, &tensor_corep(&b, &c).unwrap()).unwrap();
    assert!(max_abs_diff(&l.matrix(), &r.matrix()) < 1e-14);
}

#[test]
fn intertwiners() {
    let z2 = GroupPair::cyclic(2);
    let u = z2.grading(&[0, 1]).unwrap();
    assert_eq!(check_intertwiner(&identity(2), &u, &u).unwrap(), 0.0);
    assert!(check_intertwiner(&identity(3), &u, &u).is_err());

    // on S₃ the regular corepresentation does not commute with the flip
    let s3 = GroupPair::new(FiniteGroup::symmetric3()).unwrap();
    let tol = Tolerance::default();
    let w = regular_corep(&s3.qg, &tol).unwrap();
    let ww = tensor_corep(&w, &w).unwrap();
    assert!(check_intertwiner(flip(6, 6).matrix(), &ww, &ww).unwrap() > 0.1);
}

#[test]
fn regular_corep_gives_the_inclusion() {
    let tol = Tolerance::default();
    for g in [GroupPair::cyclic(3), GroupPair::new(FiniteGroup::symmetric3()).unwrap()] {
        let w = regular_corep(&g.qg, &tol).unwrap();
        let (rho, r) = rep_from_corep(&g.qg, &w, &tol).unwrap();
        assert!(r < 1e-12);
        for (img, b) in rho.images.iter().zip(g.qg.ahat().basis()) {
            assert!(max_abs_diff(img, b) < 1e-12);
        }
    }
}

#[test]
fn trivial_corep_gives_the_counit() {
    let tol = Tolerance::default();
    let z3 = GroupPair::cyclic(3);
    let t = Corepresentation::trivial(z3.qg.bialgebra().clone(), 1);
    let (rho, _) = rep_from_corep(&z3.qg, &t, &tol).unwrap();
    for (img, e) in rho.images.iter().zip(z3.qg.dual_counit().iter()) {
        assert!((img[[0, 0]] - e).norm() < 1e-12);
    }
}

#[test]
fn graded_corep_gives_the_projections() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let u = z2.grading(&[0, 1]).unwrap();
    let (rho, _) = rep_from_corep(&z2.qg, &u, &tol).unwrap();
    let ah = z2.qg.ahat();
    for g in 0..2 {
        let delta = z2.group.delta(g);
        let img = rho.apply(&ah.coefficients(&delta));
        assert!(max_abs_diff(&img, &z2.group.delta(g)) < 1e-12);
    }
}

#[test]
fn tensor_products_correspond_to_dual_comultiplication() {
    let tol = Tolerance::default();
    let z3 = GroupPair::cyclic(3);
    let (u1, u2) = (z3.grading(&[0, 1]).unwrap(), z3.grading(&[2, 1, 1]).unwrap());
    let (r1, _) = rep_from_corep(&z3.qg, &u1, &tol).unwrap();
    let (r2, _) = rep_from_corep(&z3.qg, &u2, &tol).unwrap();
    let (r12, _) = rep_from_corep(&z3.qg, &tensor_corep(&u1, &u2).unwrap(), &tol).unwrap();
    for i in 0..z3.qg.ahat().dim() {
        assert!(max_abs_diff(&r12.images[i], &tensor_rep_image(&z3.qg, &r1, &r2, i)) < 1e-12);
    }
}

/// The sign of the braiding on coordinate basis vectors.
fn braiding_on_basis(c: &ComplexMatrix, h1: usize, h2: usize, i: usize, j: usize) -> C64 {
    let v = kron_vec(&basis(h1, i), &basis(h2, j));
    let w = kron_vec(&basis(h2, j), &basis(h1, i));
    let out = c.dot(&v);
    let s = w.dot(&out);
    assert!((&out - &(&w * s)).iter().all(|x| x.norm() < 1e-12));
    s
}

fn kron_vec(a: &Array1<C64>, b: &Array1<C64>) -> Array1<C64> {
    Array1::from_iter(a.iter().flat_map(|x| b.iter().map(move |y| x * y)))
}

#[test]
fn koszul_sign_rule() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).unwrap();
    let u = z2.grading(&[0, 1]).unwrap();
    let c = braiding_unitary(&r, &u, &u, &tol).unwrap().c;
    for i in 0..2 {
        for j in 0..2 {
            let expected = if i == 1 && j == 1 { -ONE } else { ONE };
            assert!((braiding_on_basis(&c, 2, 2, i, j) - expected).norm() < 1e-12);
        }
    }
}

#[test]
fn trivial_corep_braids_canonically() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).unwrap();
    let u = z2.grading(&[0, 1]).unwrap();
    let one = Corepresentation::trivial(z2.qg.bialgebra().clone(), 1);
    assert!(max_abs_diff(&braiding_unitary(&r, &u, &one, &tol).unwrap().c, &identity(2)) < 1e-12);
    assert!(max_abs_diff(&braiding_unitary(&r, &one, &u, &tol).unwrap().c, &identity(2)) < 1e-12);
}

#[test]
fn z4_braiding_phases() {
    // c(ξ_x ⊗ η_y) = i^{-xy} η_y ⊗ ξ_x
    let tol = Tolerance::default();
    let z4 = GroupPair::cyclic(4);
    let r = z4.cyclic_rmatrix(1).unwrap();
    let u = z4.grading(&[0, 1, 2, 3]).unwrap();
    let c = braiding_unitary(&r, &u, &u, &tol).unwrap().c;
    for x in 0..4 {
        for y in 0..4 {
            let expected = I.powi(-((x * y) as i32));
            assert!((braiding_on_basis(&c, 4, 4, x, y) - expected).norm() < 1e-12, "{x} {y}");
        }
    }
}

#[test]
fn braidings_are_equivariant_and_hexagonal() {
    let tol = Tolerance::default();
    for (g, k, p) in [
        (GroupPair::cyclic(2), 1, None),
        (GroupPair::cyclic(4), 1, Some(())),
    ] {
        let r = g.cyclic_rmatrix(k).unwrap();
        let coreps = if p.is_none() { z2_pool(&g) } else { z4_pool(&g) };
        for u1 in &coreps {
            for u2 in &coreps {
                let c = braiding_unitary(&r, u1, u2, &tol).unwrap();
                assert!(braiding_equivariance(&c, u1, u2).unwrap() < 1e-12);
                for u3 in &coreps {
                    let h = check_hexagons(&r, u1, u2, u3, &tol).unwrap();
                    assert!(h.worst() < 1e-12, "{h:?}");
                }
            }
        }
    }
}

#[test]
fn corrupted_rmatrix_breaks_the_hexagons() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let bad = corrupt_phase(z2.cyclic_rmatrix(1).unwrap().matrix(), 1);
    let r = Bicharacter::unchecked(z2.qg.clone(), z2.qg.clone(), bad).unwrap();
    let u = z2.grading(&[0, 1]).unwrap();
    let h = check_hexagons(&r, &u, &u, &u, &tol).unwrap();
    assert!(h.first > 0.5 || h.second > 0.5, "{h:?}");
}

#[test]
fn symmetry_verdicts() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let s = check_symmetry(&z2.cyclic_rmatrix(1).unwrap(), &z2_pool(&z2), &tol).unwrap();
    assert!(s.symmetric_by_operator && s.symmetric_by_matrix && s.operator < 1e-12 && s.matrix < 1e-12);
    assert!(s.dual_braiding < 1e-12);

    let s = check_symmetry(&z2.cyclic_rmatrix(0).unwrap(), &z2_pool(&z2), &tol).unwrap();
    assert!(s.symmetric_by_operator && s.agree());

    let z4 = GroupPair::cyclic(4);
    let s = check_symmetry(&z4.cyclic_rmatrix(1).unwrap(), &z4_pool(&z4), &tol).unwrap();
    assert!(!s.symmetric_by_operator && !s.symmetric_by_matrix);
    assert!(s.operator >= 0.5 && s.matrix >= 0.5);
    assert!(s.dual_braiding < 1e-12);
}

#[test]
fn empty_pool_is_an_error() {
    let z2 = GroupPair::cyclic(2);
    assert!(check_symmetry(&z2.cyclic_rmatrix(1).unwrap(), &[], &Tolerance::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_gradings_braid_coherently(
        d1 in prop::collection::vec(0usize..4, 1..3),
        d2 in prop::collection::vec(0usize..4, 1..3),
        d3 in prop::collection::vec(0usize..4, 1..3),
        k in 0usize..4,
    ) {
        let tol = Tolerance::default();
        let z4 = GroupPair::cyclic(4);
        let r = z4.cyclic_rmatrix(k).unwrap();
        let [u1, u2, u3] = [d1, d2, d3].map(|d| z4.grading(&d).unwrap());
        prop_assert!(u1.law_residual() < 1e-12);
        let c = braiding_unitary(&r, &u1, &u2, &tol).unwrap();
        prop_assert!(braiding_equivariance(&c, &u1, &u2).unwrap() < 1e-12);
        prop_assert!(check_hexagons(&r, &u1, &u2, &u3, &tol).unwrap().worst() < 1e-12);
    }
}
