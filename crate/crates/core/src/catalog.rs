//! Small named examples shared by tests, the command line and the demos.

use std::sync::Arc;

use ndarray::{array, Array2};

use crate::algebra::{Bialgebra, StarAlgebra};
use crate::bialgebra::{inclusion_yd_rep, BraidedBialgebra};
use crate::bicharacter::{bicharacter_from_pairing, AbelianPairing, Bicharacter};
use crate::coaction::{canonical_yd, Coaction, YdCovariantRep, YetterDrinfeld};
use crate::corep::{coordinate_grading, grading_corepresentation, regular_corep, Corepresentation};
use crate::error::{Error, Result};
use crate::qgroup::{dual_quantum_group, FiniteGroup, QuantumGroup};
use crate::tensor::{kron, ComplexMatrix, Tolerance, C64};
use crate::twisted::{induced_yd_rep, inclusion_rep};

/// A loop of order 5 with identity 0 that is not associative.
pub fn non_associative_table() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ]
}

/// A finite group together with the quantum group of its multiplicative
/// unitary (`A = ℂ[G]`, `Â = C(G)`) and the dual (`A = C(G)`).
#[derive(Clone, Debug)]
pub struct GroupPair {
    pub group: FiniteGroup,
    pub qg: Arc<QuantumGroup>,
    pub dual: Arc<QuantumGroup>,
}

impl GroupPair {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        let qg = Arc::new(QuantumGroup::from_group(&group)?);
        let dual = Arc::new(dual_quantum_group(&qg, &Tolerance::default())?);
        Ok(GroupPair { group, qg, dual })
    }

    pub fn cyclic(n: usize) -> Self {
        GroupPair::new(FiniteGroup::cyclic(n)).expect("cyclic group")
    }

    /// `R(x, y) = ζ^{k·x·y}` on the function-algebra side of `Z/n`.
    pub fn cyclic_rmatrix(&self, k: usize) -> Result<Bicharacter> {
        let p = AbelianPairing::cyclic(self.group.order(), k);
        bicharacter_from_pairing(self.qg.clone(), &p, &Tolerance::default())
    }

    /// Grading corepresentation on coordinate lines with the given degrees.
    pub fn grading(&self, degrees: &[usize]) -> Result<Corepresentation> {
        grading_corepresentation(
            &self.qg,
            &self.group,
            &coordinate_grading(degrees, self.group.order()),
            &Tolerance::default(),
        )
    }

    /// The algebra of the quantum group on `H₀` as a Yetter–Drinfeld
    /// algebra, `A = C(G)` with `function_side` and `A = ℂ[G]` otherwise.
    /// `Δ_A` is implemented by the multiplicative unitary; the adjoint
    /// coaction by conjugation permutations for `ℂ[G]` and trivially for
    /// `C(G)`.
    pub fn regular_yd_rep(&self, function_side: bool, tol: &Tolerance) -> Result<YdCovariantRep> {
        let (qg, dual) = if function_side {
            (&self.dual, &self.qg)
        } else {
            (&self.qg, &self.dual)
        };
        let (yd, range) = canonical_yd(qg.clone(), dual.clone())?;
        let n = self.group.order();
        let limit = tol.for_dim(n * n);
        if range > limit {
            return Err(Error::check("adjoint coaction range", range, limit));
        }
        let u = regular_corep(qg, tol)?;
        let v = if function_side {
            Corepresentation::trivial(qg.dual_bialgebra().clone(), n)
        } else {
            action_corep(qg.dual_bialgebra(), &self.group, &conjugation_action(&self.group), tol)?
        };
        inclusion_yd_rep(yd, u, v, tol)
    }
}

/// `G` acting on itself by `h ↦ ghg⁻¹`.
pub fn conjugation_action(group: &FiniteGroup) -> Vec<Vec<usize>> {
    (0..group.order())
        .map(|g| (0..group.order()).map(|h| group.mul(group.mul(g, h), group.inv(g))).collect())
        .collect()
}

/// The Clifford algebra `Cl₁ = span{1, e}` with `e = σ_x` on `ℂ²`.
pub fn clifford1() -> Arc<StarAlgebra> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let e: ComplexMatrix = array![[zero, one], [one, zero]];
    Arc::new(StarAlgebra::generated_by(2, &[e], &Tolerance::default()).expect("Cl1"))
}

/// `C(Z/n)` as diagonal matrices on `ℂⁿ`.
pub fn diagonal_algebra(n: usize) -> Arc<StarAlgebra> {
    let gens: Vec<ComplexMatrix> = (0..n)
        .map(|k| {
            let mut m = Array2::zeros((n, n));
            m[[k, k]] = C64::new(1.0, 0.0);
            m
        })
        .collect();
    Arc::new(StarAlgebra::generated_by(n, &gens, &Tolerance::default()).expect("diagonal algebra"))
}

/// The coaction `c ↦ U(c ⊗ 1)U*` of a grading corepresentation on an
/// algebra of operators on the graded space.
pub fn graded_coaction(algebra: Arc<StarAlgebra>, u: &Corepresentation, tol: &Tolerance) -> Result<Coaction> {
    let (gamma, range) = Coaction::by_conjugation(algebra, u.bialgebra().clone(), &u.matrix());
    let limit = tol.for_dim(u.matrix().nrows());
    if range > limit {
        return Err(crate::error::Error::check("graded coaction range", range, limit));
    }
    gamma.validate(tol)
}

/// `Cl₁` with its parity grading as a coaction of `ℂ[Z/2]`.
pub fn graded_clifford(z2: &GroupPair) -> Result<Coaction> {
    let u = z2.grading(&[0, 1])?;
    graded_coaction(clifford1(), &u, &Tolerance::default())
}

/// `Cl₁` with the Yetter–Drinfeld structure induced by the Koszul
/// R-matrix of `Z/2`, represented on `ℂ²`.
pub fn koszul_clifford_yd(z2: &GroupPair, tol: &Tolerance) -> Result<YdCovariantRep> {
    let u = z2.grading(&[0, 1])?;
    let gamma = graded_clifford(z2)?;
    let r = z2.cyclic_rmatrix(1)?;
    let (rep, _) = induced_yd_rep(&inclusion_rep(&gamma, &u), &r.dual(), z2.dual.clone(), tol)?;
    Ok(rep)
}

/// The permutation matrix `e_k ↦ e_{perm[k]}`.
pub fn permutation_matrix(perm: &[usize]) -> ComplexMatrix {
    let n = perm.len();
    let mut m = Array2::zeros((n, n));
    for (k, &p) in perm.iter().enumerate() {
        m[[p, k]] = C64::new(1.0, 0.0);
    }
    m
}

/// `U = Σ_g P_{g⁻¹} ⊗ δ_g`, a corepresentation of the function algebra
/// `C(Γ)` built from a left action of `Γ` by permutations.
pub fn action_corep(
    functions: &Arc<Bialgebra>,
    group: &FiniteGroup,
    action: &[Vec<usize>],
    tol: &Tolerance,
) -> Result<Corepresentation> {
    if action.len() != group.order() {
        return Err(Error::Dimension("one permutation per group element".into()));
    }
    let h = action[0].len();
    let n = group.order();
    let mut u = Array2::zeros((h * n, h * n));
    for g in 0..n {
        u = u + kron(&permutation_matrix(&action[group.inv(g)]), &group.delta(g));
    }
    Corepresentation::from_matrix(functions.clone(), &u, tol)?.validate(tol)
}

/// `Z/m` acting on `Z/n` by `k ↦ (−1)^g k`; for `m = 2` this is inversion.
pub fn sign_action(m: usize, n: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|g| (0..n).map(|k| if g % 2 == 0 { k } else { (n - k) % n }).collect())
        .collect()
}

/// Trivial coactions on `algebra`, represented on its own space with
/// trivial corepresentations.
pub fn trivial_yd_rep(
    qg: &Arc<QuantumGroup>,
    dual: &Arc<QuantumGroup>,
    algebra: Arc<StarAlgebra>,
    tol: &Tolerance,
) -> Result<YdCovariantRep> {
    let h = algebra.ambient_dim();
    let yd = YetterDrinfeld::new(
        qg.clone(),
        dual.clone(),
        Coaction::trivial(algebra.clone(), qg.bialgebra().clone()),
        Coaction::trivial(algebra, qg.dual_bialgebra().clone()),
    )?;
    inclusion_yd_rep(
        yd,
        Corepresentation::trivial(qg.bialgebra().clone(), h),
        Corepresentation::trivial(qg.dual_bialgebra().clone(), h),
        tol,
    )
}

/// `C(K)` for a group `Γ` acting on a group `K`, as a Yetter–Drinfeld
/// algebra. With `function_side` the quantum group is `C(Γ)` and the action
/// is its coaction; otherwise it is `ℂ[Γ]` and the action is the coaction
/// of the dual. The other coaction is trivial.
pub fn action_yd_rep(gamma: &GroupPair, k: &FiniteGroup, action: &[Vec<usize>], function_side: bool, tol: &Tolerance) -> Result<YdCovariantRep> {
    let (qg, dual) = if function_side {
        (gamma.dual.clone(), gamma.qg.clone())
    } else {
        (gamma.qg.clone(), gamma.dual.clone())
    };
    let b = diagonal_algebra(k.order());
    let functions = gamma.qg.dual_bialgebra().clone();
    let u_act = action_corep(&functions, &gamma.group, action, tol)?;
    let acting = graded_coaction(b.clone(), &u_act, tol)?;
    let h = k.order();
    let (g_coaction, d_coaction, u, v) = if function_side {
        (
            acting,
            Coaction::trivial(b.clone(), qg.dual_bialgebra().clone()),
            u_act,
            Corepresentation::trivial(qg.dual_bialgebra().clone(), h),
        )
    } else {
        (
            Coaction::trivial(b.clone(), qg.bialgebra().clone()),
            acting,
            Corepresentation::trivial(qg.bialgebra().clone(), h),
            u_act,
        )
    };
    let yd = YetterDrinfeld::new(qg, dual, g_coaction, d_coaction)?;
    inclusion_yd_rep(yd, u, v, tol)
}

/// `Δ(δ_k) = Σ_{xy=k} ι₁(δ_x)ι₂(δ_y)` on `C(M)` realised as diagonal
/// matrices, for the multiplication table of a finite semigroup `M`.
pub fn function_bialgebra(name: &str, rep: YdCovariantRep, table: &[Vec<usize>], tol: &Tolerance) -> Result<BraidedBialgebra> {
    let n = table.len();
    let point = |k: usize| {
        let mut m = Array2::zeros((n, n));
        m[[k, k]] = C64::new(1.0, 0.0);
        m
    };
    let domain: Vec<ComplexMatrix> = (0..n).map(point).collect();
    BraidedBialgebra::from_values(
        name,
        rep,
        &domain,
        |sq, z| {
            let b = sq.tensor.left.algebra();
            let mut out = Array2::zeros((n * n, n * n));
            for (x, row) in table.iter().enumerate() {
                for (y, &xy) in row.iter().enumerate() {
                    if xy == z {
                        let l = sq.tensor.iota_c.apply(&b.coefficients(&point(x)));
                        let r = sq.tensor.iota_d.apply(&b.coefficients(&point(y)));
                        out = out + l.dot(&r);
                    }
                }
            }
            out
        },
        tol,
    )
}

/// The monoid `{1, 0}` under multiplication, with `1` at index 0: unital
/// but not cancellative.
pub fn truncation_monoid() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 1]]
}

/// The two-element semigroup with constant product `0`: the product map
/// is not onto.
pub fn constant_semigroup() -> Vec<Vec<usize>> {
    vec![vec![0, 0], vec![0, 0]]
}

/// `ℂ` with trivial coactions and `Δ(1) = 1 ⊗ 1`.
pub fn scalar_bialgebra(qg: &Arc<QuantumGroup>, dual: &Arc<QuantumGroup>, tol: &Tolerance) -> Result<BraidedBialgebra> {
    let one = Array2::from_elem((1, 1), C64::new(1.0, 0.0));
    let alg = Arc::new(StarAlgebra::generated_by(1, &[one.clone()], tol)?);
    let rep = trivial_yd_rep(qg, dual, alg, tol)?;
    BraidedBialgebra::from_values("scalars", rep, &[one], |sq, _| sq.tensor.carrier.element(sq.tensor.carrier.unit()), tol)
}

/// `ℂ²` with trivial coactions and `Δ(x) = x ⊗ e₀`: coassociative and
/// injective, but neither bisimplifiable nor unit-preserving.
pub fn degenerate_bialgebra(qg: &Arc<QuantumGroup>, dual: &Arc<QuantumGroup>, tol: &Tolerance) -> Result<BraidedBialgebra> {
    let b = diagonal_algebra(2);
    let rep = trivial_yd_rep(qg, dual, b.clone(), tol)?;
    let e = |k: usize| {
        let mut m = Array2::zeros((2, 2));
        m[[k, k]] = C64::new(1.0, 0.0);
        m
    };
    let domain = [e(0), e(1)];
    BraidedBialgebra::from_values("degenerate", rep, &domain, |sq, k| {
        let alg = sq.tensor.left.algebra();
        sq.tensor.iota_c.apply(&alg.coefficients(&e(k))).dot(&sq.tensor.iota_d.apply(&alg.coefficients(&e(0))))
    }, tol)
}

/// `C(M)` for a two-element semigroup with trivial coactions.
pub fn trivial_function_bialgebra(
    name: &str,
    qg: &Arc<QuantumGroup>,
    dual: &Arc<QuantumGroup>,
    table: &[Vec<usize>],
    tol: &Tolerance,
) -> Result<BraidedBialgebra> {
    let rep = trivial_yd_rep(qg, dual, diagonal_algebra(table.len()), tol)?;
    function_bialgebra(name, rep, table, tol)
}

/// A braided bialgebra with the data of the partial-dual example: `Γ`
/// acting on `K`, `B = C(K)` with the group comultiplication. Returns the
/// quantum group's own Yetter–Drinfeld representation on `H₀` alongside.
pub fn action_bialgebra(
    gamma: &GroupPair,
    k: &FiniteGroup,
    action: &[Vec<usize>],
    function_side: bool,
    tol: &Tolerance,
) -> Result<(YdCovariantRep, BraidedBialgebra)> {
    let a = gamma.regular_yd_rep(function_side, tol)?;
    let rep = action_yd_rep(gamma, k, action, function_side, tol)?;
    Ok((a, function_bialgebra("C(K)", rep, k.table(), tol)?))
}
