//! The check catalogue: planning checks against a registry and running them.

use std::collections::BTreeMap;
use std::sync::Arc;

use braidbox_core::bialgebra::{semidirect, BraidedBialgebra};
use braidbox_core::bicharacter::{check_counit_compat, check_rmatrix, check_yang_baxter, Bicharacter};
use braidbox_core::catalog::GroupPair;
use braidbox_core::coaction::{
    canonical_yd, codouble, induce_yd_from_rmatrix, split_codouble_coaction, CovariantRep, YdCovariantRep,
};
use braidbox_core::corep::{
    braiding_equivariance, braiding_unitary, check_hexagons, check_symmetry, coordinate_grading,
    grading_corepresentation, Corepresentation,
};
use braidbox_core::qgroup::{check_pentagon, table_unitary};
use braidbox_core::tensor::max_abs_diff;
use braidbox_core::twisted::{
    associator, boxtimes, canonical_heisenberg_pair, extend_heisenberg_pair, heisenberg_double, monoidal_embedding,
    recover_bicharacter,
};
use braidbox_core::{ComplexMatrix, Error, Result, Tolerance};
use serde_json::Value;

use crate::registry::Registry;
use crate::scenario::{CheckSpec, LoadError};

pub struct CheckInfo {
    pub id: &'static str,
    pub anchor: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub const CATALOGUE: &[CheckInfo] = &[
    CheckInfo { id: "pentagon", anchor: "pentagon identity", params: "group | table", summary: "W12 W13 W23 = W23 W12 for the group unitary or a raw table" },
    CheckInfo { id: "quantum-group", anchor: "coassociative and bisimplifiable", params: "group", summary: "slice algebras, coassociativity, both cancellation densities, counits" },
    CheckInfo { id: "bicharacter", anchor: "bicharacter laws", params: "r", summary: "membership, unitarity and both leg identities" },
    CheckInfo { id: "r-matrix", anchor: "R-matrix equivariance", params: "r", summary: "R flips the dual comultiplication, and the equivalent form with W" },
    CheckInfo { id: "yang-baxter", anchor: "Yang-Baxter equation", params: "r", summary: "R12 R13 R23 = R23 R13 R12" },
    CheckInfo { id: "counit", anchor: "counit compatibility", params: "r", summary: "(counit x id)R = 1 = (id x counit)R" },
    CheckInfo { id: "hexagon", anchor: "hexagon identities", params: "r [pool]", summary: "both hexagons and braid coherence on all triples of a graded pool" },
    CheckInfo { id: "braiding-equivariance", anchor: "braiding intertwines corepresentations", params: "r [pool]", summary: "c(U1 T U2) = (U2 T U1)c on all pairs of a graded pool" },
    CheckInfo { id: "symmetry", anchor: "symmetric if and only if sigma(R)R = 1", params: "r [pool]", summary: "operator test and matrix test of symmetry agree" },
    CheckInfo { id: "coaction", anchor: "continuous injective coaction", params: "coaction", summary: "comodule law, homomorphism, Podles density, injectivity, covariance" },
    CheckInfo { id: "twisted-tensor", anchor: "twisted tensor product", params: "left right r", summary: "reverse-order closure, embeddings, Z characterization, dimension" },
    CheckInfo { id: "diagonal-coaction", anchor: "diagonal coaction", params: "left right r", summary: "the induced coaction on the twisted tensor product and equivariance of both embeddings" },
    CheckInfo { id: "associator", anchor: "associativity of the twisted tensor product", params: "factors[3] r", summary: "(C x D) x E = C x (D x E) on generators" },
    CheckInfo { id: "heisenberg-pair", anchor: "Heisenberg pair and its extension", params: "group", summary: "canonical pair for W and its extension through the comultiplications" },
    CheckInfo { id: "recover-bicharacter", anchor: "bicharacter recovered from the twisted product", params: "r", summary: "the twisting unitary recovers the input bicharacter" },
    CheckInfo { id: "codouble", anchor: "codouble quantum group", params: "group", summary: "coassociativity, homomorphism, counit and cancellation of the codouble" },
    CheckInfo { id: "yetter-drinfeld", anchor: "Yetter-Drinfeld compatibility", params: "group | coaction r", summary: "YD condition and the round trip through the codouble coaction" },
    CheckInfo { id: "heisenberg-double", anchor: "Heisenberg double is all bounded operators", params: "group", summary: "A twisted with its dual by W is the full matrix algebra on the base space" },
    CheckInfo { id: "monoidal-embedding", anchor: "quasitriangular products embed monoidally", params: "left right r", summary: "C x_R D equals the W-product of the induced YD structures" },
    CheckInfo { id: "braided-bialgebra", anchor: "braided bialgebra laws", params: "bialgebra", summary: "equivariance, homomorphism into the braided square, coassociativity" },
    CheckInfo { id: "semidirect", anchor: "semidirect product quantum group", params: "bialgebra", summary: "coassociativity by two routes, the Psi identities, and cancellation equivalence" },
];

pub fn info(id: &str) -> Option<&'static CheckInfo> {
    CATALOGUE.iter().find(|c| c.id == id)
}

/// A check with its inputs resolved.
pub struct PlannedCheck {
    pub info: &'static CheckInfo,
    pub subject: String,
    task: Task,
}

enum Task {
    Pentagon { w: ComplexMatrix, n: usize },
    QuantumGroup(Arc<GroupPair>),
    Bicharacter(Bicharacter),
    RMatrix(Bicharacter),
    YangBaxter(Bicharacter),
    Counit(Bicharacter),
    Hexagon(Bicharacter, Vec<Corepresentation>),
    BraidingEquivariance(Bicharacter, Vec<Corepresentation>),
    Symmetry(Bicharacter, Vec<Corepresentation>),
    Coaction(CovariantRep),
    TwistedTensor(CovariantRep, CovariantRep, Bicharacter),
    DiagonalCoaction(CovariantRep, CovariantRep, Bicharacter),
    Associator(Box<[CovariantRep; 3]>, Bicharacter),
    HeisenbergPair(Arc<GroupPair>),
    Recover(Bicharacter),
    Codouble(Arc<GroupPair>),
    CanonicalYd(Arc<GroupPair>),
    InducedYd(CovariantRep, Bicharacter, Arc<GroupPair>),
    HeisenbergDouble(Arc<GroupPair>),
    MonoidalEmbedding(CovariantRep, CovariantRep, Bicharacter, Arc<GroupPair>),
    BraidedBialgebra(BraidedBialgebra),
    Semidirect(YdCovariantRep, BraidedBialgebra),
}

/// What a check measured.
pub struct Outcome {
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: BTreeMap<String, Value>,
}

impl Outcome {
    fn new(residual: f64, tolerance: f64, extra: bool) -> Self {
        Outcome {
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance && extra,
            details: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), v.into());
        self
    }
}

fn need<'a>(spec: &'a CheckSpec, value: &'a Option<String>, name: &str) -> std::result::Result<&'a str, LoadError> {
    value
        .as_deref()
        .ok_or_else(|| LoadError::Invalid(format!("check '{}' needs '{name}'", spec.check)))
}

fn rmatrix(reg: &Registry, spec: &CheckSpec) -> std::result::Result<(String, Bicharacter), LoadError> {
    let id = need(spec, &spec.r, "r")?;
    let e = reg.bicharacter(id)?;
    if !Arc::ptr_eq(e.chi.source(), e.chi.target()) {
        return Err(LoadError::Invalid(format!(
            "check '{}' needs an R-matrix, but '{id}' maps into the dual",
            spec.check
        )));
    }
    Ok((id.to_string(), e.chi.clone()))
}

/// Grading corepresentations: one line per degree and one line per group
/// element together, unless the scenario lists degree vectors.
fn pool(reg: &Registry, spec: &CheckSpec, r_id: &str, tol: &Tolerance) -> std::result::Result<Vec<Corepresentation>, LoadError> {
    let pair = &reg.group(&reg.bicharacter(r_id)?.group)?.pair;
    let n = pair.group.order();
    let degrees: Vec<Vec<usize>> = match &spec.pool {
        Some(p) => p.clone(),
        None => (0..n).map(|d| vec![d]).chain(std::iter::once((0..n).collect())).collect(),
    };
    if degrees.is_empty() {
        return Err(LoadError::Invalid("empty corepresentation pool".into()));
    }
    degrees
        .iter()
        .map(|d| {
            if d.is_empty() || d.iter().any(|&g| g >= n) {
                return Err(LoadError::Invalid(format!("pool entry {d:?} is not a list of group elements")));
            }
            grading_corepresentation(&pair.qg, &pair.group, &coordinate_grading(d, n), tol).map_err(LoadError::from)
        })
        .collect()
}

pub fn plan(spec: &CheckSpec, reg: &Registry, tol: &Tolerance) -> std::result::Result<PlannedCheck, LoadError> {
    let info = info(&spec.check).ok_or_else(|| {
        LoadError::Invalid(format!("unknown check '{}'; see list-checks", spec.check))
    })?;
    let group = |spec: &CheckSpec| -> std::result::Result<(String, Arc<GroupPair>), LoadError> {
        let id = need(spec, &spec.group, "group")?;
        Ok((id.to_string(), reg.group(id)?.pair.clone()))
    };
    let coaction = |id: &str| -> std::result::Result<CovariantRep, LoadError> { Ok(reg.coaction(id)?.rep.clone()) };
    let bichar = |spec: &CheckSpec| -> std::result::Result<(String, Bicharacter), LoadError> {
        let id = need(spec, &spec.r, "r")?;
        Ok((id.to_string(), reg.bicharacter(id)?.chi.clone()))
    };
    let pair_of_coactions = |spec: &CheckSpec| -> std::result::Result<(String, CovariantRep, CovariantRep, Bicharacter), LoadError> {
        let l = need(spec, &spec.left, "left")?;
        let r = need(spec, &spec.right, "right")?;
        let (rid, chi) = bichar(spec)?;
        Ok((format!("{l} x {r} over {rid}"), coaction(l)?, coaction(r)?, chi))
    };
    let (subject, task) = match info.id {
        "pentagon" => match (&spec.group, &spec.table) {
            (Some(_), None) => {
                let (id, pair) = group(spec)?;
                (id, Task::Pentagon { w: pair.qg.w().clone(), n: pair.group.order() })
            }
            (None, Some(t)) => {
                let w = table_unitary(t).map_err(LoadError::from)?;
                (format!("table of order {}", t.len()), Task::Pentagon { w, n: t.len() })
            }
            _ => return Err(LoadError::Invalid("check 'pentagon' needs exactly one of 'group' and 'table'".into())),
        },
        "quantum-group" => {
            let (id, pair) = group(spec)?;
            (id, Task::QuantumGroup(pair))
        }
        "bicharacter" => {
            let (id, chi) = bichar(spec)?;
            (id, Task::Bicharacter(chi))
        }
        "r-matrix" => {
            let (id, r) = rmatrix(reg, spec)?;
            (id, Task::RMatrix(r))
        }
        "yang-baxter" => {
            let (id, r) = rmatrix(reg, spec)?;
            (id, Task::YangBaxter(r))
        }
        "counit" => {
            let (id, r) = rmatrix(reg, spec)?;
            (id, Task::Counit(r))
        }
        "hexagon" | "braiding-equivariance" | "symmetry" => {
            let (id, r) = rmatrix(reg, spec)?;
            let p = pool(reg, spec, &id, tol)?;
            let task = match info.id {
                "hexagon" => Task::Hexagon(r, p),
                "braiding-equivariance" => Task::BraidingEquivariance(r, p),
                _ => Task::Symmetry(r, p),
            };
            (id, task)
        }
        "coaction" => {
            let id = need(spec, &spec.coaction, "coaction")?;
            (id.to_string(), Task::Coaction(coaction(id)?))
        }
        "twisted-tensor" => {
            let (s, l, r, chi) = pair_of_coactions(spec)?;
            (s, Task::TwistedTensor(l, r, chi))
        }
        "diagonal-coaction" => {
            let (s, l, r, chi) = pair_of_coactions(spec)?;
            (s, Task::DiagonalCoaction(l, r, chi))
        }
        "associator" => {
            let f = spec
                .factors
                .as_ref()
                .filter(|f| f.len() == 3)
                .ok_or_else(|| LoadError::Invalid("check 'associator' needs three 'factors'".into()))?;
            let (rid, r) = rmatrix(reg, spec)?;
            let reps = [coaction(&f[0])?, coaction(&f[1])?, coaction(&f[2])?];
            (format!("({}, {}, {}) over {rid}", f[0], f[1], f[2]), Task::Associator(Box::new(reps), r))
        }
        "heisenberg-pair" => {
            let (id, pair) = group(spec)?;
            (id, Task::HeisenbergPair(pair))
        }
        "recover-bicharacter" => {
            let (id, chi) = bichar(spec)?;
            (id, Task::Recover(chi))
        }
        "codouble" => {
            let (id, pair) = group(spec)?;
            (id, Task::Codouble(pair))
        }
        "yetter-drinfeld" => match (&spec.group, &spec.coaction) {
            (Some(_), None) => {
                let (id, pair) = group(spec)?;
                (format!("canonical on {id}"), Task::CanonicalYd(pair))
            }
            (None, Some(c)) => {
                let (rid, r) = rmatrix(reg, spec)?;
                let pair = reg.group(&reg.bicharacter(&rid)?.group)?.pair.clone();
                (format!("{c} induced by {rid}"), Task::InducedYd(coaction(c)?, r, pair))
            }
            _ => {
                return Err(LoadError::Invalid(
                    "check 'yetter-drinfeld' needs either 'group' or 'coaction' with 'r'".into(),
                ))
            }
        },
        "heisenberg-double" => {
            let (id, pair) = group(spec)?;
            (id, Task::HeisenbergDouble(pair))
        }
        "monoidal-embedding" => {
            let l = need(spec, &spec.left, "left")?;
            let r = need(spec, &spec.right, "right")?;
            let (rid, chi) = rmatrix(reg, spec)?;
            let pair = reg.group(&reg.bicharacter(&rid)?.group)?.pair.clone();
            (format!("{l} x {r} over {rid}"), Task::MonoidalEmbedding(coaction(l)?, coaction(r)?, chi, pair))
        }
        "braided-bialgebra" | "semidirect" => {
            let id = need(spec, &spec.bialgebra, "bialgebra")?;
            let e = reg.bialgebra(id)?;
            let task = if info.id == "semidirect" {
                Task::Semidirect(e.a.clone(), e.b.clone())
            } else {
                Task::BraidedBialgebra(e.b.clone())
            };
            (id.to_string(), task)
        }
        other => unreachable!("catalogue entry {other} has no planner"),
    };
    Ok(PlannedCheck { info, subject, task })
}

fn worst(xs: &[f64]) -> f64 {
    xs.iter().cloned().fold(0.0, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

fn rmatrix_dim(r: &Bicharacter) -> usize {
    r.source().dim_h0()
}

impl PlannedCheck {
    pub fn run(&self, tol: &Tolerance) -> Result<Outcome> {
        match &self.task {
            Task::Pentagon { w, n } => {
                let res = check_pentagon(w, *n)?;
                Ok(Outcome::new(res, tol.for_dim(n * n * n), true).with("order", *n))
            }
            Task::QuantumGroup(pair) => {
                let qg = &pair.qg;
                let n = pair.group.order();
                let rep = qg.report();
                let (p1, p2) = qg.podles(tol)?;
                let (q1, q2) = qg.dual_podles(tol)?;
                let dims_ok = qg.a().dim() == n && qg.ahat().dim() == n;
                let dense = p1.holds() && p2.holds() && q1.holds() && q2.holds();
                let res = worst(&[rep.worst(), qg.coassociativity(), qg.dual_coassociativity()]);
                Ok(Outcome::new(res, tol.for_dim(n * n), dims_ok && dense)
                    .with("algebra_dim", qg.a().dim())
                    .with("dual_algebra_dim", qg.ahat().dim())
                    .with("coassociativity", qg.coassociativity())
                    .with("counit", rep.counit)
                    .with("cancellation", dense))
            }
            Task::Bicharacter(chi) => {
                let n = rmatrix_dim(chi);
                let r = chi.report();
                Ok(Outcome::new(r.worst(), tol.for_dim(n * n), true)
                    .with("first_leg", r.first_leg)
                    .with("second_leg", r.second_leg)
                    .with("membership", r.membership))
            }
            Task::RMatrix(r) => {
                let n = rmatrix_dim(r);
                let rep = check_rmatrix(r)?;
                let limit = tol.for_dim(n * n * n);
                Ok(Outcome::new(rep.equivariance.max(rep.equivalent_form), limit, true)
                    .with("equivariance", rep.equivariance)
                    .with("equivalent_form", rep.equivalent_form)
                    .with("criteria_agree", (rep.equivariance <= limit) == (rep.equivalent_form <= limit)))
            }
            Task::YangBaxter(r) => {
                let n = rmatrix_dim(r);
                let res = check_yang_baxter(r.matrix(), n)?;
                Ok(Outcome::new(res, tol.for_dim(n * n * n), true))
            }
            Task::Counit(r) => {
                let n = rmatrix_dim(r);
                let (a, b) = check_counit_compat(r);
                Ok(Outcome::new(a.max(b), tol.for_dim(n * n), true).with("first_leg", a).with("second_leg", b))
            }
            Task::Hexagon(r, pool) => {
                let (mut first, mut second, mut coherence, mut dim) = (0.0_f64, 0.0_f64, 0.0_f64, 1);
                for u1 in pool {
                    for u2 in pool {
                        for u3 in pool {
                            let h = check_hexagons(r, u1, u2, u3, tol)?;
                            first = first.max(h.first);
                            second = second.max(h.second);
                            coherence = coherence.max(h.coherence);
                            dim = dim.max(u1.hilbert_dim() * u2.hilbert_dim() * u3.hilbert_dim());
                        }
                    }
                }
                Ok(Outcome::new(worst(&[first, second, coherence]), tol.for_dim(dim), true)
                    .with("first", first)
                    .with("second", second)
                    .with("coherence", coherence)
                    .with("triples", pool.len().pow(3)))
            }
            Task::BraidingEquivariance(r, pool) => {
                let (mut res, mut dim) = (0.0_f64, 1);
                for u1 in pool {
                    for u2 in pool {
                        let c = braiding_unitary(r, u1, u2, tol)?;
                        res = worst(&[res, braiding_equivariance(&c, u1, u2)?]);
                        dim = dim.max(u1.hilbert_dim() * u2.hilbert_dim() * rmatrix_dim(r));
                    }
                }
                Ok(Outcome::new(res, tol.for_dim(dim), true).with("pairs", pool.len().pow(2)))
            }
            Task::Symmetry(r, pool) => {
                let n = rmatrix_dim(r);
                let s = check_symmetry(r, pool, tol)?;
                // the verdict is what is certified, the residual is informative
                let mut out = Outcome::new(s.matrix, tol.for_dim(n * n), true);
                out.pass = s.agree();
                Ok(out
                    .with("operator", s.operator)
                    .with("matrix", s.matrix)
                    .with("symmetric_by_operator", s.symmetric_by_operator)
                    .with("symmetric_by_matrix", s.symmetric_by_matrix))
            }
            Task::Coaction(rep) => {
                let r = rep.coaction.report(tol)?;
                let cov = rep.covariance_residual();
                let n = rep.u.bialgebra().algebra.ambient_dim();
                let limit = tol.for_dim(rep.hilbert_dim() * n);
                Ok(Outcome::new(worst(&[r.comodule, r.homomorphism, cov]), limit, r.passes(limit))
                    .with("comodule", r.comodule)
                    .with("homomorphism", r.homomorphism)
                    .with("covariance", cov)
                    .with("injective", r.injective)
                    .with("cancellation", r.podles.holds()))
            }
            Task::TwistedTensor(l, r, chi) => {
                let t = boxtimes(l, r, chi, tol)?;
                let rep = &t.report;
                let (dc, dd) = t.factor_dims();
                let res = worst(&[
                    rep.reverse_order,
                    rep.left_hom,
                    rep.right_hom,
                    rep.z_characterization,
                    rep.left_covariance,
                    rep.right_covariance,
                ]);
                let ok = rep.left_injective && rep.right_injective && t.dim() == dc * dd;
                let (plain, _) = t.equals_plain_tensor(tol)?;
                Ok(Outcome::new(res, tol.for_dim(t.carrier.ambient_dim()), ok)
                    .with("dim", t.dim())
                    .with("factor_dims", vec![dc, dd])
                    .with("center_dim", t.carrier.center_dim(tol)?)
                    .with("block_sizes", t.carrier.block_sizes(tol)?)
                    .with("equals_plain_tensor_product", plain))
            }
            Task::DiagonalCoaction(l, r, chi) => {
                let t = boxtimes(l, r, chi, tol)?;
                let d = t.diagonal_coaction(tol)?;
                let rep = d.coaction.report(tol)?;
                let n = chi.source().dim_h0();
                let limit = tol.for_dim(t.carrier.ambient_dim() * n);
                let res = worst(&[
                    d.range,
                    d.left_equivariance,
                    d.right_equivariance,
                    d.generator_agreement,
                    rep.comodule,
                    rep.homomorphism,
                ]);
                Ok(Outcome::new(res, limit, rep.passes(limit))
                    .with("left_equivariance", d.left_equivariance)
                    .with("right_equivariance", d.right_equivariance)
                    .with("injective", rep.injective)
                    .with("cancellation", rep.podles.holds()))
            }
            Task::Associator(reps, r) => {
                let a = associator(reps, r, tol)?;
                let dim: usize = reps.iter().map(CovariantRep::hilbert_dim).product();
                Ok(Outcome::new(worst(&[a.generators, a.map_residual, a.coaction_residual]), tol.for_dim(dim), true)
                    .with("generators", a.generators)
                    .with("map", a.map_residual))
            }
            Task::HeisenbergPair(pair) => {
                let p = canonical_heisenberg_pair(pair.qg.clone(), pair.dual.clone(), tol)?;
                let e = extend_heisenberg_pair(&p);
                Ok(Outcome::new(p.residual().max(e.residual()), tol.for_dim(e.target_dim()), true)
                    .with("pair", p.residual())
                    .with("extension", e.residual()))
            }
            Task::Recover(chi) => {
                let r = recover_bicharacter(chi, tol)?;
                let n = chi.source().dim_h0().max(chi.target().dim_h0());
                Ok(Outcome::new(worst(&[r.error, r.heisenberg, r.factorization]), tol.for_dim(n * n), true)
                    .with("distance_to_input", r.error))
            }
            Task::Codouble(pair) => {
                let d = codouble(pair.qg.clone(), pair.dual.clone())?;
                let r = d.report(tol)?;
                let n = pair.group.order();
                let dense = r.podles_left.holds() && r.podles_right.holds();
                Ok(Outcome::new(
                    worst(&[r.coassociativity, r.homomorphism, r.counit, r.sigma_range]),
                    tol.for_dim(n.pow(4)),
                    dense,
                )
                .with("dim", d.dim())
                .with("coassociativity", r.coassociativity)
                .with("cancellation", dense))
            }
            Task::CanonicalYd(pair) => {
                let (yd, range) = canonical_yd(pair.qg.clone(), pair.dual.clone())?;
                yd_outcome(&yd, range, pair.group.order(), tol)
            }
            Task::InducedYd(rep, r, pair) => {
                let yd = induce_yd_from_rmatrix(r, pair.dual.clone(), &rep.coaction, tol)?;
                yd_outcome(&yd, 0.0, pair.group.order() * rep.hilbert_dim(), tol)
            }
            Task::HeisenbergDouble(pair) => {
                let h = heisenberg_double(pair.qg.clone(), pair.dual.clone(), tol)?;
                let n = pair.group.order();
                Ok(Outcome::new(h.full_matrix_distance, tol.for_dim(n * n), h.is_full_matrix_algebra)
                    .with("dim", h.tensor.dim())
                    .with("block_sizes", h.block_sizes.clone()))
            }
            Task::MonoidalEmbedding(l, r, chi, pair) => {
                let m = monoidal_embedding(l, r, chi, pair.dual.clone(), tol)?;
                let res = worst(&[
                    m.subspace_distance,
                    m.crossed_isomorphism,
                    m.left_embedding,
                    m.right_embedding,
                    m.yd_covariance,
                ]);
                Ok(Outcome::new(res, tol.for_dim(l.hilbert_dim() * r.hilbert_dim()), m.equal)
                    .with("dim", m.direct_dim)
                    .with("subspace_distance", m.subspace_distance)
                    .with("crossed_isomorphism", m.crossed_isomorphism))
            }
            Task::BraidedBialgebra(b) => {
                let r = b.check(tol)?;
                let limit = tol.for_dim(b.rep.hilbert_dim().pow(2));
                let res = worst(&[
                    r.a_equivariance,
                    r.dual_equivariance,
                    r.homomorphism,
                    r.coassociativity,
                    r.associator_distance,
                    r.associator_images,
                ]);
                Ok(Outcome::new(res, limit, r.laws_hold(limit))
                    .with("dim", b.dim())
                    .with("coassociativity", r.coassociativity)
                    .with("bisimplifiable", r.bisimplifiable())
                    .with("injective", r.injective)
                    .with("unital", r.unital)
                    .with("compact", r.is_compact(limit)))
            }
            Task::Semidirect(a, b) => {
                let s = semidirect(a, b, tol)?;
                let r = &s.report;
                let limit = tol.for_dim(s.carrier().ambient_dim());
                let res = worst(&[
                    r.coassociativity,
                    r.coassociativity_via_psi,
                    r.realization_agreement,
                    r.homomorphism,
                    r.lift,
                    r.psi_identities,
                ]);
                let carrier = s.carrier();
                Ok(Outcome::new(res, limit, s.podles_equivalence() && s.injectivity_equivalence())
                    .with("dim", r.dim)
                    .with("coassociativity", r.coassociativity)
                    .with("coassociativity_via_psi", r.coassociativity_via_psi)
                    .with("psi_identities", r.psi_identities)
                    .with("bisimplifiable", r.bisimplifiable())
                    .with("braided_bisimplifiable", s.braided_report.bisimplifiable())
                    .with("injective", r.injective)
                    .with("unital", r.unital)
                    .with("center_dim", carrier.center_dim(tol)?)
                    .with("block_sizes", carrier.block_sizes(tol)?)
                    .with("compact_quantum_group", s.is_compact_quantum_group(limit)))
            }
        }
    }
}

fn yd_outcome(yd: &braidbox_core::coaction::YetterDrinfeld, range: f64, dim: usize, tol: &Tolerance) -> Result<Outcome> {
    let d = codouble(yd.qg.clone(), yd.dual.clone())?;
    let xi = yd.codouble_coaction(&d);
    let (g, dl) = split_codouble_coaction(&d, &xi);
    let round = max_abs_diff(&g.map().coeffs, &yd.gamma.map().coeffs)
        .max(max_abs_diff(&dl.map().coeffs, &yd.delta.map().coeffs));
    let r = xi.report(tol)?;
    let limit = tol.for_dim(dim * yd.qg.dim_h0());
    let yd_res = yd.yd_residual();
    if !yd_res.is_finite() {
        return Err(Error::Invalid("non-finite Yetter-Drinfeld residual".into()));
    }
    Ok(Outcome::new(worst(&[yd_res, range, round, r.comodule, r.homomorphism]), limit, r.passes(limit))
        .with("yetter_drinfeld", yd_res)
        .with("round_trip", round)
        .with("codouble_coaction_injective", r.injective))
}
