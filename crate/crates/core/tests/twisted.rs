use std::sync::Arc;

use braidbox_core::algebra::{kron_vec, LinearMap, StarRepresentation};
use braidbox_core::bicharacter::Bicharacter;
use braidbox_core::catalog::{clifford1, graded_clifford, GroupPair};
use braidbox_core::coaction::{Coaction, CovariantRep};
use braidbox_core::corep::{regular_corep, Corepresentation};
use braidbox_core::qgroup::FiniteGroup;
use braidbox_core::tensor::{identity, kron, max_abs_diff, Tolerance, C64};
use braidbox_core::twisted::{
    associator, boxtimes, braiding_crossed_iso, canonical_heisenberg_pair, extend_heisenberg_pair,
    extend_heisenberg_pair_with, heisenberg_double, monoidal_embedding, morphism_boxtimes, pentagon_coherence,
    recover_bicharacter, recover_from, scalar_rep, solve_boxtimes_morphism, standard_covariant_rep, z_unitary,
    HeisenbergPair, TwistedTensor,
};
use ndarray::Array2;

fn graded_cl1(z2: &GroupPair) -> CovariantRep {
    let gamma = graded_clifford(z2).unwrap();
    CovariantRep {
        phi: StarRepresentation::inclusion(gamma.algebra().clone()),
        coaction: gamma,
        u: z2.grading(&[0, 1]).unwrap(),
    }
}

fn trivial_cl1(z2: &GroupPair) -> CovariantRep {
    let alg = clifford1();
    CovariantRep {
        coaction: Coaction::trivial(alg.clone(), z2.qg.bialgebra().clone()),
        phi: StarRepresentation::inclusion(alg),
        u: Corepresentation::trivial(z2.qg.bialgebra().clone(), 2),
    }
}

fn s3() -> GroupPair {
    GroupPair::new(FiniteGroup::symmetric3()).unwrap()
}

/// Parity automorphism of `Cl₁`: conjugation by `diag(1, −1)`.
fn parity(rep: &CovariantRep) -> LinearMap {
    let alg = rep.coaction.algebra();
    let z = Array2::from_diag(&ndarray::arr1(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]));
    let mut m = Array2::zeros((alg.dim(), alg.dim()));
    for (i, b) in alg.basis().iter().enumerate() {
        m.column_mut(i).assign(&alg.coefficients(&z.dot(b).dot(&z)));
    }
    LinearMap::new(m, vec![alg.dim()])
}

#[test]
fn canonical_heisenberg_pairs() {
    let tol = Tolerance::default();
    for g in [GroupPair::cyclic(2), GroupPair::cyclic(3), s3()] {
        let p = canonical_heisenberg_pair(g.qg.clone(), g.dual.clone(), &tol).unwrap();
        assert!(p.residual() < 1e-13);
        assert!(p.swapped().unwrap().residual() > 0.1);
    }
}

#[test]
fn extended_heisenberg_pairs() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let p = canonical_heisenberg_pair(z2.qg.clone(), z2.dual.clone(), &tol).unwrap();
    let once = extend_heisenberg_pair(&p);
    assert_eq!(once.target_dim(), 8);
    assert!(once.residual() < 1e-13);
    let twice = extend_heisenberg_pair(&once);
    assert_eq!(twice.target_dim(), 32);
    assert!(twice.residual() < 1e-13);

    // swapping two basis coefficients in the second leg of Δ_A breaks it
    let g = GroupPair::cyclic(3);
    let p = canonical_heisenberg_pair(g.qg.clone(), g.dual.clone(), &tol).unwrap();
    assert!(extend_heisenberg_pair(&p).residual() < 1e-12);
    let d = g.qg.a().dim();
    let good = &g.qg.comult().coeffs;
    let bad_coeffs = Array2::from_shape_fn(good.dim(), |(row, col)| {
        let (i, j) = (row / d, row % d);
        let j = [0, 2, 1][j];
        good[[i * d + j, col]]
    });
    let bad = extend_heisenberg_pair_with(&p, &LinearMap::new(bad_coeffs, vec![d, d]), g.dual.comult());
    assert!(bad.residual() > 0.1);
}

#[test]
fn z_unitary_examples() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let u = z2.grading(&[0, 1]).unwrap();
    let t = z_unitary(&Bicharacter::trivial(z2.qg.clone(), z2.qg.clone()), &u, &u, &tol).unwrap();
    assert!(max_abs_diff(t.z.matrix(), &identity(4)) < 1e-14);

    let r = z2.cyclic_rmatrix(1).unwrap();
    let z = z_unitary(&r, &u, &u, &tol).unwrap();
    let expected = Array2::from_diag(&ndarray::arr1(&[1.0, 1.0, 1.0, -1.0].map(|x| C64::new(x, 0.0))));
    assert!(max_abs_diff(z.z.matrix(), &expected) < 1e-14);
    assert!(z.characterization < 1e-13);

    for g in [GroupPair::cyclic(3), s3()] {
        let w = Bicharacter::from_unitary(g.qg.clone(), g.dual.clone(), &tol).unwrap();
        let ul = regular_corep(&g.qg, &tol).unwrap();
        let ur = regular_corep(&g.dual, &tol).unwrap();
        let z = z_unitary(&w, &ul, &ur, &tol).unwrap();
        assert!(z.characterization < 1e-12);
    }
}

#[test]
fn trivial_coaction_gives_the_plain_tensor_product() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).unwrap();
    let t = boxtimes(&graded_cl1(&z2), &trivial_cl1(&z2), &r, &tol).unwrap();
    assert_eq!(t.dim(), 4);
    let (same, dist) = t.equals_plain_tensor(&tol).unwrap();
    assert!(same && dist < 1e-12);
    assert_eq!(t.carrier.center_dim(&tol).unwrap(), 4);

    // γ⋈δ is γ on the first factor and fixes the second
    let diag = t.diagonal_coaction(&tol).unwrap();
    assert!(diag.generator_agreement < 1e-12);
    let unit_a = z2.qg.a().unit().clone();
    let right = t.right_embedding();
    for j in 0..2 {
        let x = right.column(j);
        let lhs = diag.coaction.apply(&x);
        assert!(max_abs_diff(&lhs, &kron_vec(&x, &unit_a)) < 1e-12);
    }
}

#[test]
fn koszul_square_of_cl1_is_simple() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).unwrap();
    let c = graded_cl1(&z2);
    let t = boxtimes(&c, &c, &r, &tol).unwrap();
    assert_eq!(t.dim(), 4);
    assert_eq!(t.carrier.center_dim(&tol).unwrap(), 1);
    assert_eq!(t.carrier.block_sizes(&tol).unwrap(), vec![2]);
    assert!(t.report.reverse_order < 1e-12);
    assert!(t.report.left_injective && t.report.right_injective);
    assert!(t.report.left_hom < 1e-13 && t.report.right_hom < 1e-13);
    let (plain, _) = t.equals_plain_tensor(&tol).unwrap();
    assert!(!plain);

    let untwisted = boxtimes(&c, &c, &Bicharacter::trivial(z2.qg.clone(), z2.qg.clone()), &tol).unwrap();
    assert_eq!(untwisted.carrier.center_dim(&tol).unwrap(), 4);

    let diag = t.diagonal_coaction(&tol).unwrap();
    assert!(diag.left_equivariance < 1e-12 && diag.right_equivariance < 1e-12);
    assert!(diag.generator_agreement < 1e-12);
    let report = diag.coaction.report(&tol).unwrap();
    assert!(report.passes(1e-9) && report.podles.holds());
}

#[test]
fn comultiplication_square_with_koszul_r() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).unwrap();
    let a = standard_covariant_rep(&z2.qg, &tol).unwrap();
    let t = boxtimes(&a, &a, &r, &tol).unwrap();
    assert_eq!(t.dim(), 4);
    let diag = t.diagonal_coaction(&tol).unwrap();
    assert!(diag.coaction.report(&tol).unwrap().passes(1e-9));
    assert!(diag.left_equivariance < 1e-12 && diag.right_equivariance < 1e-12);
}

#[test]
fn heisenberg_double_is_a_full_matrix_algebra() {
    let tol = Tolerance::default();
    for g in [GroupPair::cyclic(2), GroupPair::cyclic(3), s3()] {
        let n = g.group.order();
        let h = heisenberg_double(g.qg.clone(), g.dual.clone(), &tol).unwrap();
        assert_eq!(h.tensor.dim(), n * n);
        assert_eq!(h.block_sizes, vec![n]);
        assert!(h.is_full_matrix_algebra);
        assert!(h.full_matrix_distance < 1e-10);
    }
}

#[test]
fn boxtimes_morphisms() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).unwrap();
    let c = graded_cl1(&z2);
    let t = boxtimes(&c, &c, &r, &tol).unwrap();

    let id = LinearMap::identity(2);
    let m = morphism_boxtimes(&id, &id, &t, &t, &tol).unwrap();
    assert!(max_abs_diff(&m.map.coeffs, &LinearMap::identity(4).coeffs) < 1e-12);

    // 1_C ⊠ id_D is the embedding of D
    let one = scalar_rep(&z2.qg, &tol).unwrap();
    let from = boxtimes(&one, &c, &r, &tol).unwrap();
    let unit = LinearMap::new(c.coaction.algebra().unit().clone().insert_axis(ndarray::Axis(1)), vec![2]);
    let m = morphism_boxtimes(&unit, &id, &from, &t, &tol).unwrap();
    let composed = m.map.compose(&from.right_embedding());
    assert!(max_abs_diff(&composed.coeffs, &t.right_embedding().coeffs) < 1e-12);

    // parity ⊠ id is an automorphism of the carrier
    let p = parity(&c);
    let m = morphism_boxtimes(&p, &id, &t, &t, &tol).unwrap();
    assert_eq!(m.map.rank(&tol).unwrap(), 4);
    assert!(m.homomorphism < 1e-12);
    let diag = t.diagonal_coaction(&tol).unwrap();
    assert!(Coaction::equivariance_residual(&m.map, &diag.coaction, &diag.coaction) < 1e-12);

    // a non-equivariant map is refused
    let half = LinearMap::new(
        Array2::from_shape_fn((2, 2), |(i, j)| if i == 0 && j == 0 { C64::new(1.0, 0.0) } else { C64::new(0.5, 0.0) }),
        vec![2],
    );
    assert!(morphism_boxtimes(&half, &id, &t, &t, &tol).is_err());
    assert!(solve_boxtimes_morphism(&half, &id, &t, &t, &tol).unwrap().input_equivariance > 0.1);
}

#[test]
fn associators() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).unwrap();
    let c = graded_cl1(&z2);
    let a = standard_covariant_rep(&z2.qg, &tol).unwrap();
    let one = scalar_rep(&z2.qg, &tol).unwrap();
    for reps in [
        [c.clone(), c.clone(), c.clone()],
        [a.clone(), c.clone(), c.clone()],
        [one.clone(), c.clone(), c.clone()],
        [c.clone(), one.clone(), c.clone()],
    ] {
        let rep = associator(&reps, &r, &tol).unwrap();
        assert!(rep.generators < 1e-12);
        assert!(rep.map_residual < 1e-12);
        assert!(rep.coaction_residual < 1e-12);
        assert_eq!(rep.map.rank(&tol).unwrap(), rep.map.domain_dim());
    }
    let w = pentagon_coherence(&[c.clone(), a.clone(), c.clone(), c.clone()], &r, &tol).unwrap();
    assert!(w < 1e-12);
}

fn nested_left(reps: &[CovariantRep; 3], r: &Bicharacter, tol: &Tolerance) -> (TwistedTensor, TwistedTensor) {
    let inner = boxtimes(&reps[0], &reps[1], r, tol).unwrap();
    let inner_rep = inner.diagonal_coaction(tol).unwrap().covariant_rep();
    (boxtimes(&inner_rep, &reps[2], r, tol).unwrap(), inner)
}

fn nested_right(reps: &[CovariantRep; 3], r: &Bicharacter, tol: &Tolerance) -> (TwistedTensor, TwistedTensor) {
    let inner = boxtimes(&reps[1], &reps[2], r, tol).unwrap();
    let inner_rep = inner.diagonal_coaction(tol).unwrap().covariant_rep();
    (boxtimes(&reps[0], &inner_rep, r, tol).unwrap(), inner)
}

#[test]
fn associator_is_natural() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).unwrap();
    let c = graded_cl1(&z2);
    let reps = [c.clone(), c.clone(), c.clone()];
    let p = parity(&c);
    let id = LinearMap::identity(2);

    let (lt, linner) = nested_left(&reps, &r, &tol);
    let fg = morphism_boxtimes(&p, &id, &linner, &linner, &tol).unwrap();
    let ml = morphism_boxtimes(&fg.map, &p, &lt, &lt, &tol).unwrap();
    let (rt, rinner) = nested_right(&reps, &r, &tol);
    let gh = morphism_boxtimes(&id, &p, &rinner, &rinner, &tol).unwrap();
    let mr = morphism_boxtimes(&p, &gh.map, &rt, &rt, &tol).unwrap();

    // identity on operators, written in the two carrier bases
    let mut phi = Array2::zeros((rt.dim(), lt.dim()));
    for (i, b) in lt.carrier.basis().iter().enumerate() {
        let (x, res) = rt.carrier.decompose(b);
        assert!(res < 1e-12);
        phi.column_mut(i).assign(&x);
    }
    let phi = LinearMap::new(phi, vec![rt.dim()]);
    let lhs = phi.compose(&ml.map);
    let rhs = mr.map.compose(&phi);
    assert!(max_abs_diff(&lhs.coeffs, &rhs.coeffs) < 1e-12);
}

#[test]
fn braiding_isomorphisms() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let c = graded_cl1(&z2);
    let iso = braiding_crossed_iso(&c, &c, &z2.cyclic_rmatrix(1).unwrap(), &tol).unwrap();
    assert!(iso.antisymmetric && iso.exists);
    assert!(iso.braiding_conjugation < 1e-12);

    let trivial = Bicharacter::trivial(z2.qg.clone(), z2.qg.clone());
    let iso = braiding_crossed_iso(&c, &c, &trivial, &tol).unwrap();
    assert!(iso.exists && iso.braiding_conjugation < 1e-12);

    let z4 = GroupPair::cyclic(4);
    let a = standard_covariant_rep(&z4.qg, &tol).unwrap();
    let r = z4.cyclic_rmatrix(1).unwrap();
    let iso = braiding_crossed_iso(&a, &a, &r, &tol).unwrap();
    assert!(!iso.antisymmetric && !iso.exists);
    assert!(iso.homomorphism > 0.1);
    let rec = recover_bicharacter(&r, &tol).unwrap();
    let rec_dual = recover_bicharacter(&r.dual(), &tol).unwrap();
    assert!(rec.error < 1e-12 && rec_dual.error < 1e-12);
    assert!(max_abs_diff(&rec.chi, &rec_dual.chi) > 0.1);
}

#[test]
fn bicharacter_recovery() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let w = Bicharacter::from_unitary(z2.qg.clone(), z2.dual.clone(), &tol).unwrap();
    let rec = recover_bicharacter(&w, &tol).unwrap();
    assert!(rec.error < 1e-12 && rec.heisenberg < 1e-12 && rec.factorization < 1e-12);

    let rec = recover_bicharacter(&z2.cyclic_rmatrix(1).unwrap(), &tol).unwrap();
    assert!(rec.error < 1e-12);

    let rec = recover_bicharacter(&Bicharacter::trivial(z2.qg.clone(), z2.qg.clone()), &tol).unwrap();
    assert!(max_abs_diff(&rec.chi, &identity(4)) < 1e-12);
}

#[test]
fn restricted_representations_are_heisenberg_pairs() {
    let tol = Tolerance::default();
    let g = GroupPair::cyclic(3);
    let r = g.cyclic_rmatrix(1).unwrap();
    let a = standard_covariant_rep(&g.qg, &tol).unwrap();
    let t = boxtimes(&a, &a, &r, &tol).unwrap();
    assert!(recover_from(&t).unwrap().heisenberg < 1e-12);
    // an amplification of the carrier
    let amp = |rep: &StarRepresentation| {
        StarRepresentation::new(rep.algebra.clone(), rep.images.iter().map(|x| kron(x, &identity(2))).collect())
    };
    let p = HeisenbergPair::new(t.chi.clone(), amp(&t.iota_c), amp(&t.iota_d)).unwrap();
    assert!(p.residual() < 1e-12);
}

#[test]
fn monoidal_embedding_through_yetter_drinfeld() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let c = graded_cl1(&z2);
    let rep = monoidal_embedding(&c, &c, &z2.cyclic_rmatrix(1).unwrap(), z2.dual.clone(), &tol).unwrap();
    assert!(rep.equal && rep.subspace_distance < 1e-12);
    assert_eq!(rep.direct_dim, rep.via_yd_dim);
    assert!(rep.left_embedding < 1e-12 && rep.right_embedding < 1e-12);
    assert!(rep.crossed_isomorphism < 1e-12);

    let z4 = GroupPair::cyclic(4);
    let a = standard_covariant_rep(&z4.qg, &tol).unwrap();
    let rep = monoidal_embedding(&a, &a, &z4.cyclic_rmatrix(1).unwrap(), z4.dual.clone(), &tol).unwrap();
    assert!(rep.equal && rep.subspace_distance < 1e-12);
    assert!(rep.crossed_isomorphism < 1e-12);
    assert!(rep.yd_covariance < 1e-12);
    // inducing from R itself gives the product for σ(R*), which differs
    assert!(rep.literal_subspace_distance > 0.5);
}

#[test]
fn every_carrier_has_product_dimension() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let z4 = GroupPair::cyclic(4);
    let c = graded_cl1(&z2);
    let a2 = standard_covariant_rep(&z2.qg, &tol).unwrap();
    let a4 = standard_covariant_rep(&z4.qg, &tol).unwrap();
    let cases: Vec<(CovariantRep, CovariantRep, Bicharacter)> = vec![
        (c.clone(), a2.clone(), z2.cyclic_rmatrix(1).unwrap()),
        (a2.clone(), c.clone(), z2.cyclic_rmatrix(1).unwrap()),
        (a4.clone(), a4.clone(), z4.cyclic_rmatrix(1).unwrap()),
        (a4.clone(), a4.clone(), z4.cyclic_rmatrix(2).unwrap()),
    ];
    for (l, r, chi) in cases {
        let t = boxtimes(&l, &r, &chi, &tol).unwrap();
        let (dc, dd) = t.factor_dims();
        assert_eq!(t.dim(), dc * dd);
        assert!(t.report.reverse_order < 1e-12);
        assert_eq!(t.product_rank(&tol).unwrap(), dc * dd);
    }
    let _ = Arc::strong_count(&z2.qg);
}
