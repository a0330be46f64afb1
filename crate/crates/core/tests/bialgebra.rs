use braidbox_core::algebra::LinearMap;
use braidbox_core::bialgebra::{point_multiplication, product_operator, psi_map, semidirect, span_distance, triple_product, Semidirect};
use braidbox_core::catalog::{
    action_bialgebra, constant_semigroup, degenerate_bialgebra, koszul_clifford_yd, scalar_bialgebra, sign_action,
    trivial_function_bialgebra, truncation_monoid, GroupPair,
};
use braidbox_core::qgroup::FiniteGroup;
use braidbox_core::tensor::{kron, max_abs_diff, Tolerance, C64};
use ndarray::{Array2, Axis};

const LIMIT: f64 = 1e-10;

fn partial_dual(function_side: bool) -> Semidirect {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let (a, b) = action_bialgebra(&z2, &FiniteGroup::cyclic(3), &sign_action(2, 3), function_side, &tol).unwrap();
    semidirect(&a, &b, &tol).unwrap()
}

fn assert_laws(s: &Semidirect) {
    let r = &s.report;
    assert!(r.coassociativity < LIMIT, "{r:?}");
    assert!(r.coassociativity_via_psi < LIMIT, "{r:?}");
    assert!(r.realization_agreement < LIMIT, "{r:?}");
    assert!(r.homomorphism < LIMIT, "{r:?}");
    assert!(r.psi_identities < LIMIT, "{r:?}");
    assert!(s.psi.homomorphism < LIMIT && s.psi.injective);
    assert!(s.podles_equivalence() && s.injectivity_equivalence());
}

#[test]
fn scalar_factors_give_a_back() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let a = z2.regular_yd_rep(false, &tol).unwrap();
    let one = scalar_bialgebra(&z2.qg, &z2.dual, &tol).unwrap();
    let t = triple_product(&a, &one.rep, &one.rep, &tol).unwrap();
    assert_eq!(t.report.dim, 2);

    let s = semidirect(&a, &one, &tol).unwrap();
    assert_laws(&s);
    assert_eq!(s.report.dim, 2);
    assert!(s.is_compact_quantum_group(LIMIT));
    // Δ_C ∘ ι_A = (ι_A ⊗ ι_A) ∘ Δ_A
    let iota = s.product().tensor.left_embedding();
    let lhs = s.bialgebra.comult.compose(&iota);
    let rhs = iota.tensor(&iota).compose(z2.qg.comult());
    assert!(max_abs_diff(&lhs.coeffs, &rhs.coeffs) < 1e-12);
}

#[test]
fn koszul_clifford_triple_product() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let a = z2.regular_yd_rep(false, &tol).unwrap();
    let b = koszul_clifford_yd(&z2, &tol).unwrap();
    let t = triple_product(&a, &b, &b, &tol).unwrap();
    let r = &t.report;
    assert_eq!(r.dim, 8);
    assert!(r.explicit_vs_nested < LIMIT && r.z_relation < LIMIT);
    assert!(r.associator_distance < LIMIT && r.associator_images < LIMIT);
    assert!(r.equivariance < LIMIT);
    assert!(r.a_coaction.passes(1e-9));
    assert!(r.dual_coaction.injective && r.dual_coaction.comodule < LIMIT);

    let psi = psi_map(&t, &tol).unwrap();
    assert!(psi.worst_identity() < LIMIT && psi.homomorphism < LIMIT && psi.injective);
}

#[test]
fn partial_dual_data_triple_product() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let (a, b) = action_bialgebra(&z2, &FiniteGroup::cyclic(3), &sign_action(2, 3), false, &tol).unwrap();
    let t = triple_product(&a, &b.rep, &b.rep, &tol).unwrap();
    assert_eq!(t.report.dim, 18);
    let psi = psi_map(&t, &tol).unwrap();
    assert!(psi.on_a < LIMIT && psi.on_b < LIMIT && psi.on_b2 < LIMIT);

    // B carries the trivial A-coaction here, so Ψ(ι_B(b)) = ι_B(b) ⊗ 1
    let ab_r = t.ab.tensor.right_embedding();
    let unit = t.ab2.tensor.carrier.unit().clone().insert_axis(Axis(1));
    let unit = LinearMap::new(unit, vec![t.ab2.tensor.dim()]);
    let expected = ab_r.tensor(&unit);
    let got = psi.map.compose(&t.b_embedding());
    assert!(max_abs_diff(&got.coeffs, &expected.coeffs) < 1e-12);
}

#[test]
fn partial_dual_is_a_compact_quantum_group() {
    let tol = Tolerance::default();
    let s = partial_dual(false);
    assert_laws(&s);
    assert_eq!(s.report.dim, 6);
    assert_eq!(s.carrier().block_sizes(&tol).unwrap(), vec![1, 1, 2]);
    assert_eq!(s.carrier().center_dim(&tol).unwrap(), 3);
    assert!(s.report.bisimplifiable() && s.report.injective && s.report.unital);
    assert!(s.report.counit.unwrap() < LIMIT);
    assert!(s.is_compact_quantum_group(LIMIT));
    // the carrier is spanned by the ordered products ι_A(a)ι_B(b)
    let ops: Vec<_> = (0..2).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| product_operator(&s, i, j)).collect();
    assert!(span_distance(&ops, s.carrier(), &tol).unwrap() < 1e-10);
}

/// `(γ₁, k₁)(γ₂, k₂) = (γ₁γ₂, γ₂⁻¹·k₁ + k₂)` for `Z/2` acting on `Z/3` by sign.
fn semidirect_law(x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
    let act = |g: usize, k: usize| if g == 0 { k } else { (3 - k) % 3 };
    ((x.0 + y.0) % 2, (act(y.0, x.1) + y.1) % 3)
}

#[test]
fn commutative_variant_is_a_semidirect_product_group() {
    let tol = Tolerance::default();
    let s = partial_dual(true);
    assert_laws(&s);
    assert_eq!(s.report.dim, 6);
    assert_eq!(s.carrier().center_dim(&tol).unwrap(), 6);
    assert!(s.is_compact_quantum_group(LIMIT));

    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let t = &s.product().tensor;
    let labels: Vec<(usize, usize)> = (0..2).flat_map(|g| (0..3).map(move |k| (g, k))).collect();
    let points: Vec<_> = labels
        .iter()
        .map(|&(g, k)| {
            let a = t.iota_c.apply(&t.left.algebra().coefficients(&z2.delta(g)));
            let b = t.iota_d.apply(&t.right.algebra().coefficients(&z3.delta(k)));
            a.dot(&b)
        })
        .collect();
    let table = point_multiplication(&s.bialgebra, &points, &tol).unwrap();
    for (i, &x) in labels.iter().enumerate() {
        for (j, &y) in labels.iter().enumerate() {
            assert_eq!(labels[table[i][j]], semidirect_law(x, y));
        }
    }
    let group = FiniteGroup::from_table(table).unwrap();
    assert!(!group.is_abelian());
}

#[test]
fn the_two_variants_have_distinct_centres() {
    let tol = Tolerance::default();
    let a = partial_dual(false);
    let b = partial_dual(true);
    assert_eq!(a.report.dim, b.report.dim);
    assert_ne!(a.carrier().center_dim(&tol).unwrap(), b.carrier().center_dim(&tol).unwrap());
}

#[test]
fn function_algebra_braided_check() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let b = trivial_function_bialgebra("C(Z/3)", &z2.qg, &z2.dual, z3.table(), &tol).unwrap();
    let r = b.check(&tol).unwrap();
    assert!(r.laws_hold(LIMIT) && r.bisimplifiable() && r.injective && r.unital);
    assert!(r.is_compact(LIMIT));
    // trivial braiding: Δ(δ_k) = Σ_{x+y=k} δ_x ⊗ δ_y as plain diagonal matrices
    for k in 0..3 {
        let mut expected = Array2::<C64>::zeros((9, 9));
        for x in 0..3 {
            expected = expected + kron(&z3.delta(x), &z3.delta((k + 3 - x) % 3));
        }
        let x = b.algebra().coefficients(&z3.delta(k));
        let got = b.square.tensor.carrier.element(&b.comult.apply(&x));
        assert!(max_abs_diff(&got, &expected) < 1e-12);
    }
}

#[test]
fn perturbed_comultiplication_is_not_coassociative() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let b = trivial_function_bialgebra("C(Z/3)", &z2.qg, &z2.dual, z3.table(), &tol).unwrap();
    let mut coeffs = b.comult.coeffs.clone();
    coeffs[[0, 0]] += C64::new(0.25, 0.0);
    let bad = b.with_comult(LinearMap::new(coeffs, b.comult.codomain_dims.clone()));
    assert!(bad.check(&tol).unwrap().coassociativity > 0.01);
}

#[test]
fn scalar_bialgebra_passes() {
    let tol = Tolerance::default();
    let z3 = GroupPair::cyclic(3);
    let r = scalar_bialgebra(&z3.qg, &z3.dual, &tol).unwrap().check(&tol).unwrap();
    assert!(r.is_compact(LIMIT));
}

#[test]
fn monoid_control_fails_exactly_podles() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let a = z2.regular_yd_rep(false, &tol).unwrap();
    let b = trivial_function_bialgebra("C(M)", &z2.qg, &z2.dual, &truncation_monoid(), &tol).unwrap();
    let s = semidirect(&a, &b, &tol).unwrap();
    let br = &s.braided_report;
    assert!(br.laws_hold(LIMIT) && br.injective && br.unital);
    assert!(!br.bisimplifiable());
    assert_laws(&s);
    assert_eq!(s.report.dim, 4);
    assert!(s.report.injective && s.report.unital && s.report.counit.is_some());
    assert!(!s.report.podles_left.holds() || !s.report.podles_right.holds());
    assert!(!s.is_compact_quantum_group(LIMIT));
}

#[test]
fn collapsed_control_is_not_injective() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let a = z2.regular_yd_rep(false, &tol).unwrap();
    let b = trivial_function_bialgebra("collapsed", &z2.qg, &z2.dual, &constant_semigroup(), &tol).unwrap();
    let s = semidirect(&a, &b, &tol).unwrap();
    assert!(!s.braided_report.injective && !s.report.injective);
    assert!(s.injectivity_equivalence() && s.podles_equivalence());
    assert!(!s.is_compact_quantum_group(LIMIT));
}

#[test]
fn degenerate_control() {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let a = z2.regular_yd_rep(false, &tol).unwrap();
    let b = degenerate_bialgebra(&z2.qg, &z2.dual, &tol).unwrap();
    let br = b.check(&tol).unwrap();
    assert!(br.coassociativity < LIMIT && br.injective);
    assert!(!br.bisimplifiable());
    assert!(br.unit_preserving > 0.5);
    let s = semidirect(&a, &b, &tol).unwrap();
    assert!(s.report.coassociativity < LIMIT);
    assert!(!s.report.bisimplifiable());
    assert!(s.podles_equivalence() && s.injectivity_equivalence());
    assert!(s.report.counit.is_none());
    assert!(!s.is_compact_quantum_group(LIMIT));
}
