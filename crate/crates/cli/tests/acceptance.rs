//! Acceptance criteria 1 to 11, one line per criterion.
//!
//! Run with `cargo test -p braidbox --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use braidbox_cli::checks::CATALOGUE;
use braidbox_cli::{parse_scenario, prepare};
use braidbox_core::algebra::StarRepresentation;
use braidbox_core::bialgebra::semidirect;
use braidbox_core::bicharacter::{check_counit_compat, check_rmatrix, check_yang_baxter, Bicharacter};
use braidbox_core::catalog::{
    action_bialgebra, action_corep, clifford1, conjugation_action, graded_clifford, non_associative_table,
    scalar_bialgebra, sign_action, trivial_function_bialgebra, truncation_monoid, GroupPair,
};
use braidbox_core::coaction::{
    canonical_yd, codouble, compatible_corep_pair, induce_yd_from_rmatrix, split_codouble_coaction,
    split_codouble_corep, Coaction, CovariantRep, YetterDrinfeld,
};
use braidbox_core::corep::{
    braiding_equivariance, braiding_unitary, check_hexagons, check_symmetry, coordinate_grading,
    grading_corepresentation, regular_corep, Corepresentation,
};
use braidbox_core::qgroup::{check_pentagon, table_unitary, FiniteGroup};
use braidbox_core::tensor::{kron, max_abs_diff, rank};
use braidbox_core::twisted::{
    associator, boxtimes, canonical_heisenberg_pair, extend_heisenberg_pair, heisenberg_double, monoidal_embedding,
    recover_bicharacter,
};
use braidbox_core::{ComplexMatrix, Tolerance, C64};
use ndarray::Array2;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Verdict = Result<String, String>;

fn tau(dim: usize) -> f64 {
    Tolerance::default().for_dim(dim)
}

fn require(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(x: f64, limit: f64, what: &str) -> Result<(), String> {
    require(x.is_finite() && x <= limit, format!("{what}: {x:.3e} > {limit:.3e}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn groups() -> Vec<(&'static str, GroupPair)> {
    vec![
        ("Z/2", GroupPair::cyclic(2)),
        ("Z/3", GroupPair::cyclic(3)),
        ("Z/4", GroupPair::cyclic(4)),
        ("S3", GroupPair::new(FiniteGroup::symmetric3()).unwrap()),
    ]
}

/// Single-degree lines plus the line carrying every degree.
fn graded_pool(g: &GroupPair) -> Vec<Corepresentation> {
    let n = g.group.order();
    let tol = Tolerance::default();
    (0..n)
        .map(|d| vec![d])
        .chain(std::iter::once((0..n).collect()))
        .map(|d| grading_corepresentation(&g.qg, &g.group, &coordinate_grading(&d, n), &tol).unwrap())
        .collect()
}

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

/// Centre dimension of the algebra spanned by `basis`, by solving
/// `[x, b] = 0` for all basis elements directly.
fn commutant_center_dim(basis: &[ComplexMatrix]) -> usize {
    let n = basis[0].nrows();
    let k = basis.len();
    let mut m = Array2::<C64>::zeros((k * n * n, k));
    for (col, x) in basis.iter().enumerate() {
        for (g, b) in basis.iter().enumerate() {
            let c = x.dot(b) - b.dot(x);
            for (idx, v) in c.iter().enumerate() {
                m[[g * n * n + idx, col]] = *v;
            }
        }
    }
    k - rank(&m, &Tolerance::default()).unwrap()
}

fn criterion_1() -> Verdict {
    let mut worst: f64 = 0.0;
    for (name, g) in groups() {
        let n = g.group.order();
        let r = check_pentagon(g.qg.w(), n).map_err(err)?;
        within(r, tau(n * n * n), name)?;
        worst = worst.max(r);
    }
    let t = non_associative_table();
    let bad = check_pentagon(&table_unitary(&t).map_err(err)?, t.len()).map_err(err)?;
    require(bad > 1e-3, format!("non-associative control residual {bad:.3e}"))?;
    Ok(format!("groups worst {worst:.1e}; non-associative control {bad:.2}"))
}

fn criterion_2() -> Verdict {
    let tol = Tolerance::default();
    for (name, g) in groups() {
        let n = g.group.order();
        let qg = &g.qg;
        require(qg.a().dim() == n && qg.ahat().dim() == n, format!("{name}: slice dimensions"))?;
        within(qg.coassociativity(), tau(n * n), name)?;
        within(qg.dual_coassociativity(), tau(n * n), name)?;
        let (p1, p2) = qg.podles(&tol).map_err(err)?;
        let (q1, q2) = qg.dual_podles(&tol).map_err(err)?;
        require(p1.holds() && p2.holds() && q1.holds() && q2.holds(), format!("{name}: cancellation"))?;
        within(qg.report().counit.max(qg.report().dual_counit), tau(n), name)?;
    }
    Ok("slice dims |G|, coassociativity, both cancellations, counits for Z/2 Z/3 Z/4 S3".into())
}

/// `R` followed by a few random rotations mixing basis vectors `e_x ⊗ e_y`
/// of different total degree `x + y`. Rotations inside one total degree
/// commute with the dual comultiplication and would give genuine R-matrices.
fn rotated(r: &ComplexMatrix, n: usize, rng: &mut StdRng) -> ComplexMatrix {
    let d = r.nrows();
    let degree = |k: usize| (k / n + k % n) % n;
    let mut m = r.clone();
    for _ in 0..3 {
        let i = rng.random_range(0..d);
        let j = loop {
            let j = rng.random_range(0..d);
            if degree(j) != degree(i) {
                break j;
            }
        };
        let theta: f64 = rng.random_range(0.3..1.2);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let mut g = Array2::<C64>::eye(d);
        let (c, s) = (theta.cos(), theta.sin());
        g[[i, i]] = C64::new(c, 0.0);
        g[[j, j]] = C64::new(c, 0.0);
        g[[i, j]] = -C64::from_polar(s, phi);
        g[[j, i]] = C64::from_polar(s, -phi);
        m = m.dot(&g);
    }
    m
}

fn criterion_3() -> Verdict {
    let mut detail = Vec::new();
    let cases = [("Z/2 Koszul", GroupPair::cyclic(2)), ("Z/4", GroupPair::cyclic(4))];
    for (name, g) in &cases {
        let n = g.group.order();
        let r = g.cyclic_rmatrix(1).map_err(err)?;
        let rep = check_rmatrix(&r).map_err(err)?;
        within(rep.equivariance, tau(n * n * n), name)?;
        within(rep.equivalent_form, tau(n * n * n), name)?;
        within(check_yang_baxter(r.matrix(), n).map_err(err)?, tau(n * n * n), name)?;
        let (a, b) = check_counit_compat(&r);
        within(a.max(b), tau(n * n), name)?;
        detail.push(format!("{name} ok"));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut both_fail = 0;
    for k in 0..20 {
        let (_, g) = &cases[k % 2];
        let n = g.group.order();
        let r = g.cyclic_rmatrix(1).map_err(err)?;
        let bad = Bicharacter::unchecked(g.qg.clone(), g.qg.clone(), rotated(r.matrix(), n, &mut rng)).map_err(err)?;
        let rep = check_rmatrix(&bad).map_err(err)?;
        let limit = tau(n * n * n);
        let (e, f) = (rep.equivariance > limit, rep.equivalent_form > limit);
        require(e == f, format!("control {k}: criteria disagree ({:.2e}, {:.2e})", rep.equivariance, rep.equivalent_form))?;
        if e && f {
            both_fail += 1;
        }
    }
    require(both_fail == 20, format!("only {both_fail}/20 controls rejected"))?;
    detail.push("20/20 random controls rejected by both criteria".into());
    Ok(detail.join("; "))
}

fn criterion_4() -> Verdict {
    let tol = Tolerance::default();
    let mut triples = 0;
    for (name, g) in [("Z/2", GroupPair::cyclic(2)), ("Z/4", GroupPair::cyclic(4))] {
        let r = g.cyclic_rmatrix(1).map_err(err)?;
        let pool = graded_pool(&g);
        let n = g.group.order();
        for u1 in &pool {
            for u2 in &pool {
                let c = braiding_unitary(&r, u1, u2, &tol).map_err(err)?;
                let limit = tau(u1.hilbert_dim() * u2.hilbert_dim() * n);
                within(braiding_equivariance(&c, u1, u2).map_err(err)?, limit, name)?;
                for u3 in &pool {
                    let h = check_hexagons(&r, u1, u2, u3, &tol).map_err(err)?;
                    within(h.worst(), tau(u1.hilbert_dim() * u2.hilbert_dim() * u3.hilbert_dim()), name)?;
                    triples += 1;
                }
            }
        }
    }
    // Koszul sign rule on the graded line pair
    let z2 = GroupPair::cyclic(2);
    let u = z2.grading(&[0, 1]).map_err(err)?;
    let c = braiding_unitary(&z2.cyclic_rmatrix(1).map_err(err)?, &u, &u, &tol).map_err(err)?.c;
    let mut expected = Array2::<C64>::zeros((4, 4));
    for i in 0..2 {
        for j in 0..2 {
            expected[[j * 2 + i, i * 2 + j]] = C64::new(if i == 1 && j == 1 { -1.0 } else { 1.0 }, 0.0);
        }
    }
    within(max_abs_diff(&c, &expected), tau(4), "Koszul sign rule")?;
    Ok(format!("{triples} triples, hexagons and coherence; Koszul braiding is the signed flip"))
}

fn criterion_5() -> Verdict {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let s = check_symmetry(&z2.cyclic_rmatrix(1).map_err(err)?, &graded_pool(&z2), &tol).map_err(err)?;
    require(s.symmetric_by_operator && s.symmetric_by_matrix, "Z/2 Koszul not symmetric")?;
    within(s.operator.max(s.matrix), tau(16), "Z/2 Koszul symmetry residuals")?;
    let z4 = GroupPair::cyclic(4);
    let t = check_symmetry(&z4.cyclic_rmatrix(1).map_err(err)?, &graded_pool(&z4), &tol).map_err(err)?;
    require(!t.symmetric_by_operator && !t.symmetric_by_matrix, "Z/4 reported symmetric")?;
    require(t.operator >= 0.5 && t.matrix >= 0.5, format!("Z/4 residuals {:.2} {:.2}", t.operator, t.matrix))?;

    // every R-matrix in the shipped scenarios
    let mut count = 0;
    for entry in std::fs::read_dir(scenario_dir()).map_err(err)? {
        let path = entry.map_err(err)?.path();
        let s = parse_scenario(&std::fs::read_to_string(&path).map_err(err)?).map_err(err)?;
        let p = prepare(&s, 1e-9, "default").map_err(err)?;
        for (id, b) in &p.registry.bicharacters {
            if !Arc::ptr_eq(b.chi.source(), b.chi.target()) {
                continue;
            }
            let g = &p.registry.groups[&b.group].pair;
            let pool: Vec<Corepresentation> = graded_pool(g);
            let s = check_symmetry(&b.chi, &pool, &tol).map_err(err)?;
            require(s.agree(), format!("{}: {id}: verdicts disagree", path.display()))?;
            count += 1;
        }
    }
    Ok(format!(
        "Z/2 symmetric ({:.1e}); Z/4 not ({:.2}, {:.2}); verdicts agree on {count} shipped R",
        s.matrix, t.operator, t.matrix
    ))
}

fn criterion_6() -> Verdict {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let r = z2.cyclic_rmatrix(1).map_err(err)?;
    let cl = graded_cl1(&z2);
    let t = boxtimes(&cl, &cl, &r, &tol).map_err(err)?;
    require(t.dim() == 4, format!("Koszul square has dim {}", t.dim()))?;
    let twisted_center = commutant_center_dim(t.carrier.basis());
    require(twisted_center == 1, format!("Koszul square centre {twisted_center}"))?;
    require(t.carrier.center_dim(&tol).map_err(err)? == 1, "library centre of the Koszul square")?;
    let alg = clifford1();
    let plain: Vec<ComplexMatrix> = alg
        .basis()
        .iter()
        .flat_map(|a| alg.basis().iter().map(move |b| kron(a, b)))
        .collect();
    let plain_center = commutant_center_dim(&plain);
    require(plain_center == 4, format!("plain square centre {plain_center}"))?;
    let untwisted = boxtimes(&cl, &cl, &Bicharacter::trivial(z2.qg.clone(), z2.qg.clone()), &tol).map_err(err)?;
    require(commutant_center_dim(untwisted.carrier.basis()) == 4, "untwisted centre")?;

    let d = t.diagonal_coaction(&tol).map_err(err)?;
    let rep = d.coaction.report(&tol).map_err(err)?;
    let limit = tau(t.carrier.ambient_dim() * 2);
    within(rep.comodule, limit, "diagonal comodule law")?;
    within(rep.homomorphism, limit, "diagonal homomorphism")?;
    require(rep.injective && rep.podles.holds(), "diagonal injectivity or cancellation")?;
    within(d.left_equivariance.max(d.right_equivariance), limit, "embedding equivariance")?;

    let a = associator(&[cl.clone(), cl.clone(), cl.clone()], &r, &tol).map_err(err)?;
    within(a.generators.max(a.map_residual), tau(8), "associator")?;

    let triv = trivial_cl1(&z2);
    for chi in [&r, &Bicharacter::trivial(z2.qg.clone(), z2.qg.clone())] {
        let t = boxtimes(&triv, &triv, chi, &tol).map_err(err)?;
        let (equal, dist) = t.equals_plain_tensor(&tol).map_err(err)?;
        require(equal, "trivial coactions do not give the tensor product")?;
        within(dist, tau(4), "trivial degeneration")?;
    }
    Ok(format!(
        "centres {twisted_center} (twisted) and {plain_center} (plain); diagonal coaction and associator ok; trivial case is C x D"
    ))
}

fn criterion_7() -> Verdict {
    let tol = Tolerance::default();
    let mut worst: f64 = 0.0;
    for g in [GroupPair::cyclic(2), GroupPair::cyclic(3)] {
        let n = g.group.order();
        let p = canonical_heisenberg_pair(g.qg.clone(), g.dual.clone(), &tol).map_err(err)?;
        within(p.residual(), tau(p.target_dim()), "canonical pair")?;
        let e = extend_heisenberg_pair(&p);
        within(e.residual(), tau(e.target_dim()), "extension")?;
        let chis = [
            Bicharacter::trivial(g.qg.clone(), g.qg.clone()),
            g.cyclic_rmatrix(1).map_err(err)?,
            Bicharacter::from_unitary(g.qg.clone(), g.dual.clone(), &tol).map_err(err)?,
        ];
        for chi in &chis {
            let r = recover_bicharacter(chi, &tol).map_err(err)?;
            within(r.error, tau(n * n), "recovery")?;
            worst = worst.max(r.error);
        }
    }
    Ok(format!("pairs, extensions and recovery of trivial, Koszul, W on Z/2 Z/3 (worst {worst:.1e})"))
}

fn yd_round_trip(yd: &YetterDrinfeld) -> Result<f64, String> {
    let d = codouble(yd.qg.clone(), yd.dual.clone()).map_err(err)?;
    let (g, dl) = split_codouble_coaction(&d, &yd.codouble_coaction(&d));
    Ok(max_abs_diff(&g.map().coeffs, &yd.gamma.map().coeffs).max(max_abs_diff(&dl.map().coeffs, &yd.delta.map().coeffs)))
}

fn criterion_8() -> Verdict {
    let tol = Tolerance::default();
    let trio = [
        ("Z/2", GroupPair::cyclic(2)),
        ("Z/3", GroupPair::cyclic(3)),
        ("S3", GroupPair::new(FiniteGroup::symmetric3()).unwrap()),
    ];
    for (name, g) in &trio {
        let n = g.group.order();
        let d = codouble(g.qg.clone(), g.dual.clone()).map_err(err)?;
        let r = d.report(&tol).map_err(err)?;
        within(r.coassociativity, tau(n.pow(4)), name)?;
        require(r.podles_left.holds() && r.podles_right.holds(), format!("{name}: codouble cancellation"))?;

        let (yd, _) = canonical_yd(g.qg.clone(), g.dual.clone()).map_err(err)?;
        within(yd.yd_residual(), tau(n.pow(3)), name)?;
        within(yd_round_trip(&yd)?, tau(n.pow(3)), name)?;

        // corepresentation round trip for W with the conjugation corepresentation
        let u = regular_corep(&g.qg, &tol).map_err(err)?;
        let v = action_corep(g.qg.dual_bialgebra(), &g.group, &conjugation_action(&g.group), &tol).map_err(err)?;
        let (x, _) = compatible_corep_pair(&d, &u, &v, &tol).map_err(err)?;
        let (u2, v2) = split_codouble_corep(&d, &x).map_err(err)?;
        within(max_abs_diff(&u2.matrix(), &u.matrix()).max(max_abs_diff(&v2.matrix(), &v.matrix())), tau(n.pow(3)), name)?;
    }
    for n in [2, 3, 4] {
        let g = GroupPair::cyclic(n);
        let comult = Coaction::comultiplication(g.qg.bialgebra().clone());
        let yd = induce_yd_from_rmatrix(&g.cyclic_rmatrix(1).map_err(err)?, g.dual.clone(), &comult, &tol).map_err(err)?;
        within(yd.yd_residual(), tau(n.pow(3)), "induced YD")?;
        within(yd_round_trip(&yd)?, tau(n.pow(3)), "induced round trip")?;
    }
    let z2 = GroupPair::cyclic(2);
    let yd = induce_yd_from_rmatrix(&z2.cyclic_rmatrix(1).map_err(err)?, z2.dual.clone(), &graded_clifford(&z2).map_err(err)?, &tol)
        .map_err(err)?;
    within(yd.yd_residual(), tau(8), "Cl1 induced YD")?;
    for n in [2, 3] {
        let g = GroupPair::cyclic(n);
        let h = heisenberg_double(g.qg.clone(), g.dual.clone(), &tol).map_err(err)?;
        require(h.is_full_matrix_algebra, format!("Heisenberg double of Z/{n} is not B(H0)"))?;
        within(h.full_matrix_distance, tau(n * n), "Heisenberg double")?;
    }
    Ok("codoubles of Z/2 Z/3 S3; canonical and induced YD; round trips; Heisenberg doubles are B(H0)".into())
}

fn criterion_9() -> Verdict {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let cl = graded_cl1(&z2);
    let m = monoidal_embedding(&cl, &cl, &z2.cyclic_rmatrix(1).map_err(err)?, z2.dual.clone(), &tol).map_err(err)?;
    require(m.equal && m.direct_dim == m.via_yd_dim, "subalgebras differ")?;
    within(m.subspace_distance, tau(4), "subspace distance")?;
    within(m.crossed_isomorphism, tau(4), "crossed isomorphism")?;
    Ok(format!("Cl1 x_R Cl1 = Cl1 x_W Cl1, distance {:.1e}", m.subspace_distance))
}

fn criterion_10() -> Verdict {
    let tol = Tolerance::default();
    let z2 = GroupPair::cyclic(2);
    let (a, b) = action_bialgebra(&z2, &FiniteGroup::cyclic(3), &sign_action(2, 3), false, &tol).map_err(err)?;
    let s = semidirect(&a, &b, &tol).map_err(err)?;
    let r = &s.report;
    let limit = tau(s.carrier().ambient_dim());
    within(s.psi.on_a.max(s.psi.on_b).max(s.psi.on_b2), limit, "Psi identities")?;
    within(r.coassociativity, limit, "direct coassociativity")?;
    within(r.coassociativity_via_psi, limit, "coassociativity through Psi")?;
    require(r.dim == 6 && r.unital, format!("carrier dim {} unital {}", r.dim, r.unital))?;
    let centre = commutant_center_dim(s.carrier().basis());
    // six dimensions over three blocks force 1 + 1 + 4
    require(centre == 3, format!("partial dual centre {centre}"))?;
    require(s.carrier().block_sizes(&tol).map_err(err)? == vec![1, 1, 2], "block sizes")?;
    require(s.is_compact_quantum_group(limit), "partial dual not flagged compact")?;
    require(r.bisimplifiable() && s.braided_report.bisimplifiable(), "partial dual cancellation")?;

    // trivial B returns A
    let a2 = z2.regular_yd_rep(false, &tol).map_err(err)?;
    let one = scalar_bialgebra(&z2.qg, &z2.dual, &tol).map_err(err)?;
    let t = semidirect(&a2, &one, &tol).map_err(err)?;
    require(t.report.dim == 2, "trivial B changes the dimension")?;
    let iota = t.product().tensor.left_embedding();
    let lhs = t.bialgebra.comult.compose(&iota);
    let rhs = iota.tensor(&iota).compose(z2.qg.comult());
    within(max_abs_diff(&lhs.coeffs, &rhs.coeffs), tau(4), "trivial B comultiplication")?;

    // the truncation monoid fails cancellation and nothing else, on both levels
    let m = trivial_function_bialgebra("C(M)", &z2.qg, &z2.dual, &truncation_monoid(), &tol).map_err(err)?;
    let c = semidirect(&a2, &m, &tol).map_err(err)?;
    let br = &c.braided_report;
    let limit = tau(c.carrier().ambient_dim());
    require(br.laws_hold(limit) && br.injective && br.unital, "monoid control breaks braided laws")?;
    require(!br.bisimplifiable(), "monoid control passes braided cancellation")?;
    within(
        c.report.coassociativity.max(c.report.homomorphism).max(c.report.psi_identities),
        limit,
        "monoid control semidirect laws",
    )?;
    require(c.report.injective && c.report.unital, "monoid control injectivity")?;
    require(!c.report.bisimplifiable(), "monoid control passes semidirect cancellation")?;
    require(c.podles_equivalence() && s.podles_equivalence(), "cancellation equivalence")?;
    Ok(format!("partial dual: dim 6, blocks [1, 1, 2], compact; trivial B gives A; monoid control fails only cancellation"))
}

fn scenario_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn criterion_11() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_braidbox");
    let mut files: Vec<_> = std::fs::read_dir(scenario_dir())
        .map_err(err)?
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    for f in &files {
        let run = || Command::new(bin).arg("verify").arg(f).env_remove("BRAIDBOX_TOLERANCE").output().unwrap();
        let (a, b) = (run(), run());
        require(a.stdout == b.stdout && !a.stdout.is_empty(), format!("{} differs between runs", f.display()))?;
        require(a.status.code() == b.status.code(), "exit status differs")?;
    }
    let bad = Command::new(bin).arg("verify").arg(scenario_dir().join("corrupted_r.json")).output().map_err(err)?;
    require(bad.status.code() == Some(1), format!("corrupted R exit {:?}", bad.status.code()))?;
    let cert: serde_json::Value = serde_json::from_slice(&bad.stdout).map_err(err)?;
    let failing: Vec<&serde_json::Value> = cert["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    for id in ["yang-baxter", "hexagon"] {
        require(failing.iter().any(|c| c["check"] == id), format!("{id} does not fail"))?;
    }
    for c in &failing {
        let anchor = c["anchor"].as_str().unwrap_or("");
        require(
            CATALOGUE.iter().any(|i| i.id == c["check"] && i.anchor == anchor),
            format!("failing entry {} has anchor {anchor:?}", c["check"]),
        )?;
    }
    Ok(format!("{} scenarios byte-identical across runs; corrupted R exits 1 with anchored failures", files.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("pentagon identity", criterion_1),
        ("quantum-group generation", criterion_2),
        ("R-matrix suite", criterion_3),
        ("braiding category", criterion_4),
        ("symmetry criterion", criterion_5),
        ("twisted tensor product and diagonal coaction", criterion_6),
        ("Heisenberg machinery", criterion_7),
        ("codouble and Yetter-Drinfeld", criterion_8),
        ("monoidal embedding", criterion_9),
        ("semidirect product", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
