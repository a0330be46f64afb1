//! Heisenberg pairs and twisted tensor products `C ⊠_χ D` realised on
//! `H ⊗ K`, with the diagonal coaction, functoriality in both factors,
//! bracketings of iterated products and the braiding isomorphism.

use std::sync::Arc;

use ndarray::{Array1, Array2};

use crate::algebra::{coaction_like_hom_residual, kron_vec, LinearMap, StarAlgebra, StarRepresentation, TensorProduct};
use crate::bicharacter::{check_antisymmetric, Bicharacter};
use crate::coaction::{covariance_residual, Coaction, CovariantRep, YdCovariantRep, YetterDrinfeld};
use crate::corep::{apply_pair, braiding_unitary, rep_from_corep, tensor_corep, Corepresentation};
use crate::error::{Error, Result};
use crate::qgroup::QuantumGroup;
use crate::tensor::{
    dagger, expand_product, identity, kron, lstsq, max_abs_diff, place_on_legs, product_coefficients, subspace_equal,
    ComplexMatrix, LegShape, OperatorSubspace, Tolerance, UnitaryMatrix, C64,
};

/// `(id ⊗ π)W` for a representation `π` of the `A` side of `qg`.
pub fn unitary_through(qg: &QuantumGroup, pi: &[ComplexMatrix]) -> ComplexMatrix {
    expand_product(qg.w_coefficients(), &[qg.ahat().basis(), pi])
}

/// Representations `α` of `A` and `β` of `B` on one space `E`, meant to
/// satisfy `W^A_{1α} W^B_{2β} = W^B_{2β} W^A_{1α} χ₁₂`.
#[derive(Clone, Debug)]
pub struct HeisenbergPair {
    pub chi: Bicharacter,
    pub alpha: StarRepresentation,
    pub beta: StarRepresentation,
}

impl HeisenbergPair {
    pub fn new(chi: Bicharacter, alpha: StarRepresentation, beta: StarRepresentation) -> Result<Self> {
        if !Arc::ptr_eq(&alpha.algebra, chi.source().a()) || !Arc::ptr_eq(&beta.algebra, chi.target().a()) {
            return Err(Error::Invalid("pair does not represent the two quantum groups".into()));
        }
        if alpha.hilbert_dim() != beta.hilbert_dim() {
            return Err(Error::Dimension("α and β act on different spaces".into()));
        }
        Ok(HeisenbergPair { chi, alpha, beta })
    }

    pub fn target_dim(&self) -> usize {
        self.alpha.hilbert_dim()
    }

    /// ‖W^A_{1α}W^B_{2β} − W^B_{2β}W^A_{1α}χ₁₂‖.
    pub fn residual(&self) -> f64 {
        heisenberg_residual(&self.chi, &self.alpha.images, &self.beta.images)
    }

    /// The pair with the roles of the image lists exchanged; only defined
    /// when both algebras have the same dimension. A negative control.
    pub fn swapped(&self) -> Result<HeisenbergPair> {
        if self.alpha.images.len() != self.beta.images.len() {
            return Err(Error::Dimension("cannot swap pairs of different sizes".into()));
        }
        Ok(HeisenbergPair {
            chi: self.chi.clone(),
            alpha: StarRepresentation::new(self.alpha.algebra.clone(), self.beta.images.clone()),
            beta: StarRepresentation::new(self.beta.algebra.clone(), self.alpha.images.clone()),
        })
    }

    /// `χ` read off from the pair: the partial trace over `E` of
    /// `W_{1α}* W_{2β}* W_{1α} W_{2β}`, with the distance of that operator
    /// from `χ ⊗ 1`.
    pub fn extract_bicharacter(&self) -> (ComplexMatrix, f64) {
        let (na, nb) = (self.chi.source().dim_h0(), self.chi.target().dim_h0());
        let (w1, w2) = pair_unitaries(&self.chi, &self.alpha.images, &self.beta.images);
        let x = dagger(&w1).dot(&dagger(&w2)).dot(&w1).dot(&w2);
        let e = self.target_dim();
        let mut chi = Array2::zeros((na * nb, na * nb));
        for r in 0..na * nb {
            for c in 0..na * nb {
                let mut acc = C64::new(0.0, 0.0);
                for m in 0..e {
                    acc += x[[r * e + m, c * e + m]];
                }
                chi[[r, c]] = acc / e as f64;
            }
        }
        let r = max_abs_diff(&kron(&chi, &identity(e)), &x);
        (chi, r)
    }
}

fn pair_unitaries(chi: &Bicharacter, alpha: &[ComplexMatrix], beta: &[ComplexMatrix]) -> (ComplexMatrix, ComplexMatrix) {
    let (sa, sb) = (chi.source(), chi.target());
    let (na, nb) = (sa.dim_h0(), sb.dim_h0());
    let e = alpha[0].nrows();
    let shape = LegShape::new(&[na, nb, e]).expect("dims");
    let w1 = place_on_legs(&unitary_through(sa, alpha), &shape, &[1, 3]).expect("legs");
    let w2 = place_on_legs(&unitary_through(sb, beta), &shape, &[2, 3]).expect("legs");
    (w1, w2)
}

pub fn heisenberg_residual(chi: &Bicharacter, alpha: &[ComplexMatrix], beta: &[ComplexMatrix]) -> f64 {
    let (na, nb) = (chi.source().dim_h0(), chi.target().dim_h0());
    let e = alpha[0].nrows();
    let (w1, w2) = pair_unitaries(chi, alpha, beta);
    let shape = LegShape::new(&[na, nb, e]).expect("dims");
    let c12 = place_on_legs(chi.matrix(), &shape, &[1, 2]).expect("legs");
    max_abs_diff(&w1.dot(&w2), &w2.dot(&w1).dot(&c12))
}

/// `α` = inclusion of `A`, `β` = inclusion of `Â` on `H₀`, for `χ = W`
/// viewed as a bicharacter from `qg` to `dual`.
pub fn canonical_heisenberg_pair(qg: Arc<QuantumGroup>, dual: Arc<QuantumGroup>, tol: &Tolerance) -> Result<HeisenbergPair> {
    let chi = Bicharacter::from_unitary(qg.clone(), dual.clone(), tol)?;
    let alpha = StarRepresentation::inclusion(qg.a().clone());
    let beta = StarRepresentation::inclusion(dual.a().clone());
    HeisenbergPair::new(chi, alpha, beta)
}

/// A `χ`-Heisenberg pair for an arbitrary bicharacter, on `H₀^A ⊗ H₀^B`:
/// `α(a) = a ⊗ 1` and `β(b) = χ*(1 ⊗ b)χ`.
pub fn heisenberg_pair_for(chi: &Bicharacter) -> Result<HeisenbergPair> {
    let (sa, sb) = (chi.source(), chi.target());
    let (na, nb) = (sa.dim_h0(), sb.dim_h0());
    let alpha = sa.a().basis().iter().map(|a| kron(a, &identity(nb))).collect();
    let cd = dagger(chi.matrix());
    let beta = sb
        .a()
        .basis()
        .iter()
        .map(|b| cd.dot(&kron(&identity(na), b)).dot(chi.matrix()))
        .collect();
    HeisenbergPair::new(
        chi.clone(),
        StarRepresentation::new(sa.a().clone(), alpha),
        StarRepresentation::new(sb.a().clone(), beta),
    )
}

/// `α'(a) = ((id ⊗ α)Δ_A(a))₁₃`, `β'(b) = ((id ⊗ β)Δ_B(b))₂₃` on
/// `H₀^A ⊗ H₀^B ⊗ E`.
pub fn extend_heisenberg_pair(p: &HeisenbergPair) -> HeisenbergPair {
    let (sa, sb) = (p.chi.source().clone(), p.chi.target().clone());
    extend_heisenberg_pair_with(p, sa.comult(), sb.comult())
}

/// As [`extend_heisenberg_pair`] with the comultiplications supplied; used
/// to show that a wrong comultiplication breaks the relation.
pub fn extend_heisenberg_pair_with(p: &HeisenbergPair, comult_a: &LinearMap, comult_b: &LinearMap) -> HeisenbergPair {
    let (sa, sb) = (p.chi.source(), p.chi.target());
    let (na, nb, e) = (sa.dim_h0(), sb.dim_h0(), p.target_dim());
    let shape = LegShape::new(&[na, nb, e]).expect("dims");
    let alpha = (0..sa.a().dim())
        .map(|i| {
            let op = expand_product(&comult_a.column(i), &[sa.a().basis(), &p.alpha.images]);
            place_on_legs(&op, &shape, &[1, 3]).expect("legs")
        })
        .collect();
    let beta = (0..sb.a().dim())
        .map(|j| {
            let op = expand_product(&comult_b.column(j), &[sb.a().basis(), &p.beta.images]);
            place_on_legs(&op, &shape, &[2, 3]).expect("legs")
        })
        .collect();
    HeisenbergPair {
        chi: p.chi.clone(),
        alpha: StarRepresentation::new(sa.a().clone(), alpha),
        beta: StarRepresentation::new(sb.a().clone(), beta),
    }
}

/// `Z = (ρ^H ⊗ ρ^K)(χ*)` with the representations of the dual sides
/// attached to the two corepresentations.
#[derive(Clone, Debug)]
pub struct ZUnitary {
    pub z: UnitaryMatrix,
    pub rho_left: StarRepresentation,
    pub rho_right: StarRepresentation,
    /// ‖U^H_{1α}U^K_{2β}Z₁₂ − U^K_{2β}U^H_{1α}‖ against a `χ`-Heisenberg pair
    pub characterization: f64,
}

pub fn z_unitary(chi: &Bicharacter, u_left: &Corepresentation, u_right: &Corepresentation, tol: &Tolerance) -> Result<ZUnitary> {
    let (rho_left, _) = rep_from_corep(chi.source(), u_left, tol)?;
    let (rho_right, _) = rep_from_corep(chi.target(), u_right, tol)?;
    let (cstar, _) = product_coefficients(&dagger(chi.matrix()), &[chi.source().ahat().space(), chi.target().ahat().space()]);
    let z = apply_pair(&cstar, &rho_left, &rho_right);
    let pair = if is_unitary_bicharacter(chi) {
        canonical_heisenberg_pair(chi.source().clone(), chi.target().clone(), tol)?
    } else {
        heisenberg_pair_for(chi)?
    };
    let (h, k, e) = (u_left.hilbert_dim(), u_right.hilbert_dim(), pair.target_dim());
    let shape = LegShape::new(&[h, k, e])?;
    let ua = expand_product_pair(u_left, &pair.alpha.images);
    let ub = expand_product_pair(u_right, &pair.beta.images);
    let u1 = place_on_legs(&ua, &shape, &[1, 3])?;
    let u2 = place_on_legs(&ub, &shape, &[2, 3])?;
    let z12 = place_on_legs(&z, &shape, &[1, 2])?;
    let characterization = max_abs_diff(&u1.dot(&u2).dot(&z12), &u2.dot(&u1));
    let limit = tol.for_dim(h * k * e);
    if characterization > limit {
        return Err(Error::check("Z characterising relation", characterization, limit));
    }
    Ok(ZUnitary {
        z: UnitaryMatrix::new(z, tol)?,
        rho_left,
        rho_right,
        characterization,
    })
}

/// `(id ⊗ π)U = Σ M_i ⊗ π(x_i)`.
fn expand_product_pair(u: &Corepresentation, pi: &[ComplexMatrix]) -> ComplexMatrix {
    let h = u.hilbert_dim();
    let e = pi[0].nrows();
    let mut out = Array2::zeros((h * e, h * e));
    for (m, p) in u.coefficients().iter().zip(pi) {
        out = out + kron(m, p);
    }
    out
}

fn is_unitary_bicharacter(chi: &Bicharacter) -> bool {
    let (s, t) = (chi.source(), chi.target());
    Arc::ptr_eq(s.dual_bialgebra(), t.bialgebra()) && max_abs_diff(chi.matrix(), s.w()) == 0.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistedReport {
    /// growth rounds needed before the span of products was a *-algebra
    pub closure_rounds: usize,
    /// projector distance between `ι_C(C)·ι_D(D)` and `ι_D(D)·ι_C(C)`
    pub reverse_order: f64,
    pub left_hom: f64,
    pub right_hom: f64,
    pub left_injective: bool,
    pub right_injective: bool,
    pub z_characterization: f64,
    pub left_covariance: f64,
    pub right_covariance: f64,
}

/// `C ⊠_χ D = ι_C(C)·ι_D(D) ⊂ B(H ⊗ K)`.
#[derive(Clone, Debug)]
pub struct TwistedTensor {
    pub left: Coaction,
    pub right: Coaction,
    pub chi: Bicharacter,
    pub left_corep: Corepresentation,
    pub right_corep: Corepresentation,
    pub carrier: Arc<StarAlgebra>,
    pub iota_c: StarRepresentation,
    pub iota_d: StarRepresentation,
    pub z: UnitaryMatrix,
    /// column `i·dim D + j` holds the carrier coefficients of `ι_C(c_i)ι_D(d_j)`
    products: Array2<C64>,
    pub report: TwistedReport,
}

/// Builds `C ⊠_χ D` from faithful covariant representations of the two
/// factors: `ι_C(c) = φ(c) ⊗ 1`, `ι_D(d) = Z(1 ⊗ ψ(d))Z*`.
pub fn boxtimes(left: &CovariantRep, right: &CovariantRep, chi: &Bicharacter, tol: &Tolerance) -> Result<TwistedTensor> {
    if !Arc::ptr_eq(left.coaction.by(), chi.source().bialgebra())
        || !Arc::ptr_eq(right.coaction.by(), chi.target().bialgebra())
    {
        return Err(Error::Invalid("coactions do not match the bicharacter".into()));
    }
    let (h, k) = (left.hilbert_dim(), right.hilbert_dim());
    let left_covariance = left.covariance_residual();
    let right_covariance = right.covariance_residual();
    let cov_limit = tol.for_dim(h.max(k) * chi.source().dim_h0().max(chi.target().dim_h0()));
    if left_covariance.max(right_covariance) > cov_limit {
        return Err(Error::check("covariance", left_covariance.max(right_covariance), cov_limit));
    }
    if !left.is_faithful(tol)? || !right.is_faithful(tol)? {
        return Err(Error::Invalid("covariant representation is not faithful".into()));
    }
    let zu = z_unitary(chi, &left.u, &right.u, tol)?;
    let z = zu.z.matrix();
    let zd = dagger(z);
    let (ik, ih) = (identity(k), identity(h));
    let lc: Vec<ComplexMatrix> = left.phi.images.iter().map(|c| kron(c, &ik)).collect();
    let ld: Vec<ComplexMatrix> = right
        .phi
        .images
        .iter()
        .map(|d| z.dot(&kron(&ih, d)).dot(&zd))
        .collect();
    let n = h * k;
    let mut gens = Vec::with_capacity(lc.len() * ld.len());
    let mut reverse = Vec::with_capacity(lc.len() * ld.len());
    for c in &lc {
        for d in &ld {
            gens.push(c.dot(d));
            reverse.push(d.dot(c));
        }
    }
    let first = OperatorSubspace::span_in(n, &gens, tol)?;
    let (carrier, closure_rounds) = close_subspace(first, tol)?;
    let carrier = Arc::new(carrier);
    let rev = OperatorSubspace::span_in(n, &reverse, tol)?;
    let (_, reverse_order) = subspace_equal(carrier.space(), &rev, tol)?;
    let iota_c = StarRepresentation::new(left.coaction.algebra().clone(), lc);
    let iota_d = StarRepresentation::new(right.coaction.algebra().clone(), ld);
    let mut products = Array2::zeros((carrier.dim(), gens.len()));
    for (col, g) in gens.iter().enumerate() {
        products.column_mut(col).assign(&carrier.coefficients(g));
    }
    let report = TwistedReport {
        closure_rounds,
        reverse_order,
        left_hom: iota_c.hom_residual(),
        right_hom: iota_d.hom_residual(),
        left_injective: iota_c.is_injective(tol)?,
        right_injective: iota_d.is_injective(tol)?,
        z_characterization: zu.characterization,
        left_covariance,
        right_covariance,
    };
    Ok(TwistedTensor {
        left: left.coaction.clone(),
        right: right.coaction.clone(),
        chi: chi.clone(),
        left_corep: left.u.clone(),
        right_corep: right.u.clone(),
        carrier,
        iota_c,
        iota_d,
        z: zu.z,
        products,
        report,
    })
}

/// Grows a span by products and adjoints until it is a *-algebra. The
/// span of `ι_C(C)·ι_D(D)` is expected to be closed already, so any growth
/// is reported.
fn close_subspace(mut space: OperatorSubspace, tol: &Tolerance) -> Result<(StarAlgebra, usize)> {
    let cap = space.dim() * space.dim() + 1;
    for round in 0..cap {
        if let Ok(alg) = StarAlgebra::from_subspace(space.clone(), tol) {
            return Ok((alg, round));
        }
        let b = space.basis();
        let mut next = b.clone();
        for x in &b {
            next.push(dagger(x));
            for y in &b {
                next.push(x.dot(y));
            }
        }
        space = OperatorSubspace::span_in(space.ambient_dim(), &next, tol)?;
    }
    Err(Error::NotAnAlgebra("twisted tensor product did not close".into()))
}

impl TwistedTensor {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn factor_dims(&self) -> (usize, usize) {
        (self.left.algebra().dim(), self.right.algebra().dim())
    }

    pub fn hilbert_dims(&self) -> (usize, usize) {
        (self.left_corep.hilbert_dim(), self.right_corep.hilbert_dim())
    }

    /// Carrier coefficients of the ordered products `ι_C(c_i)ι_D(d_j)`.
    pub fn product_matrix(&self) -> &Array2<C64> {
        &self.products
    }

    /// Rank of the product matrix; equals `dim C · dim D` exactly when the
    /// ordered products are linearly independent.
    pub fn product_rank(&self, tol: &Tolerance) -> Result<usize> {
        crate::tensor::rank(&self.products, tol)
    }

    /// `ι_C` as a coefficient map `C → C ⊠ D`.
    pub fn left_embedding(&self) -> LinearMap {
        embedding(&self.carrier, &self.iota_c)
    }

    pub fn right_embedding(&self) -> LinearMap {
        embedding(&self.carrier, &self.iota_d)
    }

    /// Product coordinates of a carrier element.
    pub fn to_product_coordinates(&self, x: &Array1<C64>, tol: &Tolerance) -> Result<(Array1<C64>, f64)> {
        let b = x.clone().into_shape_with_order((x.len(), 1)).expect("column");
        let (sol, r) = lstsq(&self.products, &b, tol)?;
        Ok((sol.column(0).to_owned(), r))
    }

    pub fn from_product_coordinates(&self, x: &Array1<C64>) -> Array1<C64> {
        self.products.dot(x)
    }

    /// The algebra is the plain tensor product: compares with `C ⊗ D`
    /// realised as `φ(C) ⊗ ψ(D)`.
    pub fn equals_plain_tensor(&self, tol: &Tolerance) -> Result<(bool, f64)> {
        let (h, k) = self.hilbert_dims();
        let c = OperatorSubspace::span_in(h, &self.iota_c.images.iter().map(|m| left_factor(m, h, k)).collect::<Vec<_>>(), tol)?;
        let right_images: Vec<ComplexMatrix> = self.right_plain_images(tol)?;
        let d = OperatorSubspace::span_in(k, &right_images, tol)?;
        let plain = OperatorSubspace::tensor(&c, &d);
        subspace_equal(self.carrier.space(), &plain, tol)
    }

    fn right_plain_images(&self, _tol: &Tolerance) -> Result<Vec<ComplexMatrix>> {
        let (h, k) = self.hilbert_dims();
        let zd = dagger(self.z.matrix());
        Ok(self
            .iota_d
            .images
            .iter()
            .map(|m| right_factor(&zd.dot(m).dot(self.z.matrix()), h, k))
            .collect())
    }

    /// `(γ ⋈ δ)(x) = (U ⊤ U')(x ⊗ 1)(U ⊤ U')*` for two corepresentations of
    /// one bialgebra implementing `left` and `right`.
    pub fn diagonal_coaction(&self, tol: &Tolerance) -> Result<DiagonalCoaction> {
        if !Arc::ptr_eq(self.left.by(), self.right.by()) {
            return Err(Error::Invalid("diagonal coaction needs one quantum group".into()));
        }
        self.induced_coaction(&self.left, &self.left_corep, &self.right, &self.right_corep, tol)
    }

    /// The coaction on the carrier implemented by `u_left ⊤ u_right`, with
    /// equivariance of both embeddings and agreement on generator products.
    pub fn induced_coaction(
        &self,
        gamma: &Coaction,
        u_left: &Corepresentation,
        delta: &Coaction,
        u_right: &Corepresentation,
        tol: &Tolerance,
    ) -> Result<DiagonalCoaction> {
        let corep = tensor_corep(u_left, u_right)?;
        let by = gamma.by().clone();
        let (coaction, range) = Coaction::by_conjugation(self.carrier.clone(), by.clone(), &corep.matrix());
        let limit = tol.for_dim(corep.matrix().nrows());
        if range > limit {
            return Err(Error::check("diagonal coaction range", range, limit));
        }
        let lc = self.left_embedding();
        let ld = self.right_embedding();
        let left_equivariance = Coaction::equivariance_residual(&lc, gamma, &coaction);
        let right_equivariance = Coaction::equivariance_residual(&ld, delta, &coaction);
        let idx = LinearMap::identity(by.dim());
        let tp = TensorProduct::new(vec![self.carrier.clone(), by.algebra.clone()]);
        let gl = lc.tensor(&idx).compose(gamma.map());
        let dl = ld.tensor(&idx).compose(delta.map());
        let (dc, dd) = self.factor_dims();
        let mut agreement: f64 = 0.0;
        for i in 0..dc {
            for j in 0..dd {
                let lhs = coaction.apply(&self.products.column(i * dd + j).to_owned());
                let rhs = tp.mul(&gl.column(i), &dl.column(j));
                agreement = agreement.max(max_abs_diff(&lhs, &rhs));
            }
        }
        Ok(DiagonalCoaction {
            coaction,
            corep,
            range,
            left_equivariance,
            right_equivariance,
            generator_agreement: agreement,
        })
    }
}

fn embedding(carrier: &StarAlgebra, rep: &StarRepresentation) -> LinearMap {
    let mut m = Array2::zeros((carrier.dim(), rep.images.len()));
    for (i, x) in rep.images.iter().enumerate() {
        m.column_mut(i).assign(&carrier.coefficients(x));
    }
    LinearMap::new(m, vec![carrier.dim()])
}

/// `a` from `a ⊗ 1` on `ℂ^h ⊗ ℂ^k` (partial trace over the second leg).
fn left_factor(m: &ComplexMatrix, h: usize, k: usize) -> ComplexMatrix {
    Array2::from_shape_fn((h, h), |(r, c)| {
        (0..k).map(|t| m[[r * k + t, c * k + t]]).sum::<C64>() / k as f64
    })
}

fn right_factor(m: &ComplexMatrix, h: usize, k: usize) -> ComplexMatrix {
    Array2::from_shape_fn((k, k), |(r, c)| {
        (0..h).map(|t| m[[t * k + r, t * k + c]]).sum::<C64>() / h as f64
    })
}

/// The coaction on `C ⊠ D` making both embeddings equivariant.
#[derive(Clone, Debug)]
pub struct DiagonalCoaction {
    pub coaction: Coaction,
    pub corep: Corepresentation,
    pub range: f64,
    pub left_equivariance: f64,
    pub right_equivariance: f64,
    /// the coaction computed on `ι_C(c)ι_D(d)` from the factors' coactions
    /// against the conjugation formula
    pub generator_agreement: f64,
}

impl DiagonalCoaction {
    /// The carrier with its inclusion and `U ⊤ U'`, ready for further
    /// products.
    pub fn covariant_rep(&self) -> CovariantRep {
        CovariantRep {
            coaction: self.coaction.clone(),
            phi: StarRepresentation::inclusion(self.coaction.algebra().clone()),
            u: self.corep.clone(),
        }
    }
}

/// `(A, Δ_A)` on `H₀` with the corepresentation `W`.
pub fn standard_covariant_rep(qg: &QuantumGroup, tol: &Tolerance) -> Result<CovariantRep> {
    Ok(CovariantRep {
        coaction: Coaction::comultiplication(qg.bialgebra().clone()),
        phi: StarRepresentation::inclusion(qg.a().clone()),
        u: crate::corep::regular_corep(qg, tol)?,
    })
}

/// `C` with its inclusion and a corepresentation implementing `γ`.
pub fn inclusion_rep(gamma: &Coaction, u: &Corepresentation) -> CovariantRep {
    CovariantRep {
        coaction: gamma.clone(),
        phi: StarRepresentation::inclusion(gamma.algebra().clone()),
        u: u.clone(),
    }
}

/// `ℂ` with the trivial coaction, on `ℂ¹`.
pub fn scalar_rep(qg: &QuantumGroup, tol: &Tolerance) -> Result<CovariantRep> {
    let one = Array2::from_elem((1, 1), C64::new(1.0, 0.0));
    let alg = Arc::new(StarAlgebra::generated_by(1, &[one], tol)?);
    Ok(CovariantRep {
        coaction: Coaction::trivial(alg.clone(), qg.bialgebra().clone()),
        phi: StarRepresentation::inclusion(alg),
        u: Corepresentation::trivial(qg.bialgebra().clone(), 1),
    })
}

/// `f ⊠ g`, the unique linear map with `(f⊠g)(ι_C(c)ι_D(d)) = ι_C'(f c)ι_D'(g d)`.
#[derive(Clone, Debug)]
pub struct BoxtimesMorphism {
    pub map: LinearMap,
    /// ‖(f⊠g)∘ι_C − ι_C'∘f‖ and the same for `D`
    pub left_intertwining: f64,
    pub right_intertwining: f64,
    pub homomorphism: f64,
    /// inputs: equivariance of `f` and `g`
    pub input_equivariance: f64,
    /// least-squares residual of the inversion of the product coordinates
    pub solve_residual: f64,
}

pub fn morphism_boxtimes(
    f: &LinearMap,
    g: &LinearMap,
    from: &TwistedTensor,
    to: &TwistedTensor,
    tol: &Tolerance,
) -> Result<BoxtimesMorphism> {
    let m = solve_boxtimes_morphism(f, g, from, to, tol)?;
    let limit = tol.for_dim(from.carrier.ambient_dim().max(to.carrier.ambient_dim()));
    if m.input_equivariance > limit {
        return Err(Error::check("equivariance of the factors", m.input_equivariance, limit));
    }
    let worst = m.left_intertwining.max(m.right_intertwining).max(m.homomorphism).max(m.solve_residual);
    if worst > limit {
        return Err(Error::check("morphism of twisted tensor products", worst, limit));
    }
    Ok(m)
}

/// As [`morphism_boxtimes`] without rejecting bad inputs: all residuals are
/// reported.
pub fn solve_boxtimes_morphism(
    f: &LinearMap,
    g: &LinearMap,
    from: &TwistedTensor,
    to: &TwistedTensor,
    tol: &Tolerance,
) -> Result<BoxtimesMorphism> {
    let input_equivariance = Coaction::equivariance_residual(f, &from.left, &to.left)
        .max(Coaction::equivariance_residual(g, &from.right, &to.right));
    let kfg = kron(&f.coeffs, &g.coeffs);
    let image = to.products.dot(&kfg);
    // solve M·P_from = image for M
    let (mt, solve_residual) = lstsq(&from.products.t().to_owned(), &image.t().to_owned(), tol)?;
    let map = LinearMap::new(mt.t().to_owned(), vec![to.dim()]);
    let left_intertwining = max_abs_diff(
        &map.compose(&from.left_embedding()).coeffs,
        &to.left_embedding().compose(f).coeffs,
    );
    let right_intertwining = max_abs_diff(
        &map.compose(&from.right_embedding()).coeffs,
        &to.right_embedding().compose(g).coeffs,
    );
    let homomorphism = coaction_like_hom_residual(&from.carrier, &TensorProduct::new(vec![to.carrier.clone()]), &map);
    Ok(BoxtimesMorphism {
        map,
        left_intertwining,
        right_intertwining,
        homomorphism,
        input_equivariance,
        solve_residual,
    })
}

/// A bracketing of an iterated twisted tensor product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Leaf(usize),
    Node(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn node(l: Bracket, r: Bracket) -> Bracket {
        Bracket::Node(Box::new(l), Box::new(r))
    }

    /// The five bracketings of four factors.
    pub fn all_of_four() -> Vec<Bracket> {
        use Bracket::Leaf as L;
        let n = Bracket::node;
        vec![
            n(n(n(L(0), L(1)), L(2)), L(3)),
            n(n(L(0), n(L(1), L(2))), L(3)),
            n(L(0), n(n(L(1), L(2)), L(3))),
            n(L(0), n(L(1), n(L(2), L(3)))),
            n(n(L(0), L(1)), n(L(2), L(3))),
        ]
    }
}

/// An iterated product realised on the tensor product of the factors'
/// spaces, with the image of every factor's basis.
#[derive(Clone, Debug)]
pub struct IteratedProduct {
    pub rep: CovariantRep,
    /// `images[leaf][i]`: image of basis element `i` of factor `leaf`
    pub images: Vec<Vec<ComplexMatrix>>,
    /// worst diagonal-coaction check encountered on the way
    pub coaction_residual: f64,
}

/// Realises a bracketing over one quasitriangular quantum group.
pub fn realize_bracketing(tree: &Bracket, reps: &[CovariantRep], r: &Bicharacter, tol: &Tolerance) -> Result<IteratedProduct> {
    let (rep, coords, residual) = realize_rec(tree, reps, r, tol)?;
    let mut images = vec![Vec::new(); reps.len()];
    for (leaf, cs) in coords {
        images[leaf] = cs.iter().map(|c| rep.phi.apply(c)).collect();
    }
    Ok(IteratedProduct {
        rep,
        images,
        coaction_residual: residual,
    })
}

type LeafCoords = Vec<(usize, Vec<Array1<C64>>)>;

fn realize_rec(tree: &Bracket, reps: &[CovariantRep], r: &Bicharacter, tol: &Tolerance) -> Result<(CovariantRep, LeafCoords, f64)> {
    match tree {
        Bracket::Leaf(i) => {
            let rep = reps.get(*i).ok_or_else(|| Error::Invalid(format!("no factor {i}")))?.clone();
            let d = rep.coaction.algebra().dim();
            let coords = (0..d)
                .map(|k| {
                    let mut e = Array1::zeros(d);
                    e[k] = C64::new(1.0, 0.0);
                    e
                })
                .collect();
            Ok((rep, vec![(*i, coords)], 0.0))
        }
        Bracket::Node(l, rt) => {
            let (lrep, lc, lres) = realize_rec(l, reps, r, tol)?;
            let (rrep, rc, rres) = realize_rec(rt, reps, r, tol)?;
            let t = boxtimes(&lrep, &rrep, r, tol)?;
            let diag = t.diagonal_coaction(tol)?;
            let residual = lres
                .max(rres)
                .max(diag.left_equivariance)
                .max(diag.right_equivariance)
                .max(diag.generator_agreement);
            let le = t.left_embedding();
            let re = t.right_embedding();
            let mut coords = Vec::new();
            for (leaf, cs) in lc {
                coords.push((leaf, cs.iter().map(|c| le.apply(c)).collect()));
            }
            for (leaf, cs) in rc {
                coords.push((leaf, cs.iter().map(|c| re.apply(c)).collect()));
            }
            Ok((diag.covariant_rep(), coords, residual))
        }
    }
}

/// Largest entrywise difference between the factor images of two
/// realisations of the same factors.
pub fn bracketing_residual(x: &IteratedProduct, y: &IteratedProduct) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, b) in x.images.iter().zip(&y.images) {
        for (p, q) in a.iter().zip(b) {
            worst = worst.max(max_abs_diff(p, q));
        }
    }
    worst
}

#[derive(Clone, Debug)]
pub struct AssociatorReport {
    /// `(C₁ ⊠ C₂) ⊠ C₃` and `C₁ ⊠ (C₂ ⊠ C₃)` give the same operators on
    /// every factor
    pub generators: f64,
    /// the identity-on-generators map between the carriers in carrier
    /// coefficients, and its distance from a *-isomorphism
    pub map: LinearMap,
    pub map_residual: f64,
    pub coaction_residual: f64,
}

pub fn associator(reps: &[CovariantRep; 3], r: &Bicharacter, tol: &Tolerance) -> Result<AssociatorReport> {
    use Bracket::Leaf as L;
    let left = realize_bracketing(&Bracket::node(Bracket::node(L(0), L(1)), L(2)), reps, r, tol)?;
    let right = realize_bracketing(&Bracket::node(L(0), Bracket::node(L(1), L(2))), reps, r, tol)?;
    let generators = bracketing_residual(&left, &right);
    let from = left.rep.coaction.algebra();
    let to = right.rep.coaction.algebra();
    let mut m = Array2::zeros((to.dim(), from.dim()));
    let mut map_residual: f64 = 0.0;
    for (i, b) in from.basis().iter().enumerate() {
        let (c, res) = to.decompose(b);
        map_residual = map_residual.max(res);
        m.column_mut(i).assign(&c);
    }
    let map = LinearMap::new(m, vec![to.dim()]);
    map_residual = map_residual.max(coaction_like_hom_residual(from, &TensorProduct::new(vec![to.clone()]), &map));
    Ok(AssociatorReport {
        generators,
        map,
        map_residual,
        coaction_residual: left.coaction_residual.max(right.coaction_residual),
    })
}

/// Worst pairwise difference between the five bracketings of four factors.
pub fn pentagon_coherence(reps: &[CovariantRep; 4], r: &Bicharacter, tol: &Tolerance) -> Result<f64> {
    let all: Vec<IteratedProduct> = Bracket::all_of_four()
        .iter()
        .map(|t| realize_bracketing(t, reps, r, tol))
        .collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for x in &all[1..] {
        worst = worst.max(bracketing_residual(&all[0], x));
    }
    Ok(worst)
}

/// Whether `C ⊠_R D ≅ D ⊠_R C` by a map fixing both factors.
#[derive(Clone, Debug)]
pub struct BraidingIsoReport {
    pub antisymmetric: bool,
    pub antisymmetry_defect: f64,
    /// the unique linear map `ι_C(c)ι_D(d) ↦ ι'_C(c)ι'_D(d)`
    pub map: LinearMap,
    /// failure of that map to be a *-homomorphism; the witness when no
    /// isomorphism exists
    pub homomorphism: f64,
    pub exists: bool,
    /// ‖c X c* − F(X)‖ over the carrier basis, for the braiding unitary `c`
    pub braiding_conjugation: f64,
}

pub fn braiding_crossed_iso(c: &CovariantRep, d: &CovariantRep, r: &Bicharacter, tol: &Tolerance) -> Result<BraidingIsoReport> {
    let (antisymmetric, antisymmetry_defect) = check_antisymmetric(r, tol);
    let cd = boxtimes(c, d, r, tol)?;
    let dc = boxtimes(d, c, r, tol)?;
    let (map, homomorphism, bijective) = crossed_map(&cd, &dc.carrier, &dc.iota_d, &dc.iota_c, tol)?;
    let exists = homomorphism <= tol.for_dim(cd.carrier.ambient_dim()) && bijective;
    let bu = braiding_unitary(r, &c.u, &d.u, tol)?.c;
    let bud = dagger(&bu);
    let mut braiding_conjugation: f64 = 0.0;
    for (i, x) in cd.carrier.basis().iter().enumerate() {
        let lhs = bu.dot(x).dot(&bud);
        let rhs = dc.carrier.element(&map.column(i));
        braiding_conjugation = braiding_conjugation.max(max_abs_diff(&lhs, &rhs));
    }
    Ok(BraidingIsoReport {
        antisymmetric,
        antisymmetry_defect,
        map,
        homomorphism,
        exists,
        braiding_conjugation,
    })
}

/// The linear map `ι_C(c)ι_D(d) ↦ α(c)β(d)` into `target`, its failure to
/// be a *-homomorphism, and whether it is bijective.
pub fn crossed_map(
    from: &TwistedTensor,
    target: &Arc<StarAlgebra>,
    alpha: &StarRepresentation,
    beta: &StarRepresentation,
    tol: &Tolerance,
) -> Result<(LinearMap, f64, bool)> {
    let (nc, nd) = from.factor_dims();
    let mut image = Array2::zeros((target.dim(), nc * nd));
    for i in 0..nc {
        for j in 0..nd {
            let op = alpha.images[i].dot(&beta.images[j]);
            image.column_mut(i * nd + j).assign(&target.coefficients(&op));
        }
    }
    let (mt, _) = lstsq(&from.products.t().to_owned(), &image.t().to_owned(), tol)?;
    let map = LinearMap::new(mt.t().to_owned(), vec![target.dim()]);
    let homomorphism = coaction_like_hom_residual(&from.carrier, &TensorProduct::new(vec![target.clone()]), &map);
    let bijective = target.dim() == from.dim() && map.rank(tol)? == from.dim();
    Ok((map, homomorphism, bijective))
}

/// Builds `A ⊠_χ B` from the comultiplications of both quantum groups and
/// extracts `χ` from the embedded Heisenberg pair.
pub fn recover_bicharacter(chi: &Bicharacter, tol: &Tolerance) -> Result<RecoveredBicharacter> {
    let left = standard_covariant_rep(chi.source(), tol)?;
    let right = standard_covariant_rep(chi.target(), tol)?;
    let t = boxtimes(&left, &right, chi, tol)?;
    recover_from(&t)
}

#[derive(Clone, Debug)]
pub struct RecoveredBicharacter {
    pub chi: ComplexMatrix,
    pub heisenberg: f64,
    /// distance of `W_{1α}*W_{2β}*W_{1α}W_{2β}` from `χ ⊗ 1`
    pub factorization: f64,
    /// ‖χ_rec − χ‖
    pub error: f64,
}

/// Reads `χ` off a twisted product of the two quantum groups' own algebras.
pub fn recover_from(t: &TwistedTensor) -> Result<RecoveredBicharacter> {
    let pair = HeisenbergPair::new(t.chi.clone(), t.iota_c.clone(), t.iota_d.clone())?;
    let heisenberg = pair.residual();
    let (chi, factorization) = pair.extract_bicharacter();
    let error = max_abs_diff(&chi, t.chi.matrix());
    Ok(RecoveredBicharacter {
        chi,
        heisenberg,
        factorization,
        error,
    })
}

/// The Heisenberg double `A ⊠_W Â`, together with the span of `A·Â` under
/// the canonical pair on `H₀`.
#[derive(Clone, Debug)]
pub struct HeisenbergDouble {
    pub tensor: TwistedTensor,
    pub block_sizes: Vec<usize>,
    /// projector distance of `span(A·Â)` on `H₀` from `B(H₀)`
    pub full_matrix_distance: f64,
    pub is_full_matrix_algebra: bool,
}

pub fn heisenberg_double(qg: Arc<QuantumGroup>, dual: Arc<QuantumGroup>, tol: &Tolerance) -> Result<HeisenbergDouble> {
    let w = Bicharacter::from_unitary(qg.clone(), dual.clone(), tol)?;
    let tensor = boxtimes(&standard_covariant_rep(&qg, tol)?, &standard_covariant_rep(&dual, tol)?, &w, tol)?;
    let block_sizes = tensor.carrier.block_sizes(tol)?;
    let n = qg.dim_h0();
    let mut gens = Vec::new();
    for a in qg.a().basis() {
        for b in qg.ahat().basis() {
            gens.push(a.dot(b));
        }
    }
    let span = OperatorSubspace::span_in(n, &gens, tol)?;
    let (same, full_matrix_distance) = subspace_equal(&span, &OperatorSubspace::full(n), tol)?;
    Ok(HeisenbergDouble {
        is_full_matrix_algebra: same && block_sizes == vec![n],
        tensor,
        block_sizes,
        full_matrix_distance,
    })
}

/// A twisted product of two Yetter–Drinfeld algebras with its own
/// Yetter–Drinfeld structure and covariant representation.
#[derive(Clone, Debug)]
pub struct YdTwisted {
    pub tensor: TwistedTensor,
    pub rep: YdCovariantRep,
    pub a_side: DiagonalCoaction,
    pub dual_side: DiagonalCoaction,
}

impl YdTwisted {
    pub fn yd(&self) -> &YetterDrinfeld {
        &self.rep.yd
    }
}

/// `C ⊠ D` over the codouble: `χ = W` between the `A`-coaction of `C` and
/// the `Â`-coaction of `D`; the result carries the coactions implemented by
/// `U¹ ⊤ U²` and `V¹ ⊤ V²`.
pub fn boxtimes_yd(left: &YdCovariantRep, right: &YdCovariantRep, tol: &Tolerance) -> Result<YdTwisted> {
    let qg = left.yd.qg.clone();
    let dual = left.yd.dual.clone();
    if !Arc::ptr_eq(&qg, &right.yd.qg) {
        return Err(Error::Invalid("Yetter–Drinfeld algebras over different quantum groups".into()));
    }
    let w = Bicharacter::from_unitary(qg.clone(), dual.clone(), tol)?;
    let lrep = CovariantRep {
        coaction: left.yd.gamma.clone(),
        phi: left.phi.clone(),
        u: left.u.clone(),
    };
    let rrep = CovariantRep {
        coaction: right.yd.delta.clone(),
        phi: right.phi.clone(),
        u: right.v.clone(),
    };
    let tensor = boxtimes(&lrep, &rrep, &w, tol)?;
    let a_side = tensor.induced_coaction(&left.yd.gamma, &left.u, &right.yd.gamma, &right.u, tol)?;
    let dual_side = tensor.induced_coaction(&left.yd.delta, &left.v, &right.yd.delta, &right.v, tol)?;
    let yd = YetterDrinfeld::new(qg, dual, a_side.coaction.clone(), dual_side.coaction.clone())?;
    let rep = YdCovariantRep {
        yd,
        phi: StarRepresentation::inclusion(tensor.carrier.clone()),
        u: a_side.corep.clone(),
        v: dual_side.corep.clone(),
    };
    Ok(YdTwisted {
        tensor,
        rep,
        a_side,
        dual_side,
    })
}

/// The Yetter–Drinfeld representation attached to a covariant
/// representation of a coaction of a quasitriangular quantum group:
/// the induced `Â`-coaction is implemented by `V = (ρ_U ⊗ id)(R)`.
pub fn induced_yd_rep(
    rep: &CovariantRep,
    r: &Bicharacter,
    dual: Arc<QuantumGroup>,
    tol: &Tolerance,
) -> Result<(YdCovariantRep, (f64, f64))> {
    let yd = crate::coaction::induce_yd_from_rmatrix(r, dual, &rep.coaction, tol)?;
    let qg = r.source();
    let (rho, _) = rep_from_corep(qg, &rep.u, tol)?;
    let (rc, _) = product_coefficients(r.matrix(), &[qg.ahat().space(), qg.ahat().space()]);
    // (ρ ⊗ id)(R) on H ⊗ H₀, a corepresentation of Â
    let v = expand_product(&rc, &[&rho.images, qg.ahat().basis()]);
    let v = Corepresentation::from_matrix(qg.dual_bialgebra().clone(), &v, tol)?;
    let out = YdCovariantRep {
        yd,
        phi: rep.phi.clone(),
        u: rep.u.clone(),
        v,
    };
    let residuals = out.covariance_residuals();
    Ok((out, residuals))
}

/// `C ⊠_R D` built directly and through induced Yetter–Drinfeld
/// structures with `χ = W`.
///
/// The Yetter–Drinfeld structures are induced from `σ(R*)`: with
/// `Z = (ρ ⊗ ρ)(χ*)` the `W`-product of structures induced from `R'`
/// reproduces `C ⊠_{σ(R'*)} D`. The `literal_*` fields report the
/// comparison when inducing from `R` itself; they agree with the main
/// fields exactly when `R* = σ(R)`.
#[derive(Clone, Debug)]
pub struct MonoidalEmbeddingReport {
    pub direct_dim: usize,
    pub via_yd_dim: usize,
    pub subspace_distance: f64,
    pub equal: bool,
    pub left_embedding: f64,
    pub right_embedding: f64,
    pub yd_covariance: f64,
    /// failure of `ι_C(c)ι_D(d) ↦ ι'_C(c)ι'_D(d)` to be a *-isomorphism
    pub crossed_isomorphism: f64,
    pub literal_subspace_distance: f64,
    pub literal_crossed_isomorphism: f64,
}

pub fn monoidal_embedding(
    c: &CovariantRep,
    d: &CovariantRep,
    r: &Bicharacter,
    dual: Arc<QuantumGroup>,
    tol: &Tolerance,
) -> Result<MonoidalEmbeddingReport> {
    let direct = boxtimes(c, d, r, tol)?;
    let via_from = |rr: &Bicharacter| -> Result<(YdTwisted, f64)> {
        let (yc, rc) = induced_yd_rep(c, rr, dual.clone(), tol)?;
        let (yd, rd) = induced_yd_rep(d, rr, dual.clone(), tol)?;
        Ok((boxtimes_yd(&yc, &yd, tol)?, rc.0.max(rc.1).max(rd.0).max(rd.1)))
    };
    let compare = |via: &YdTwisted| -> Result<(bool, f64, f64)> {
        let (equal, dist) = subspace_equal(direct.carrier.space(), via.tensor.carrier.space(), tol)?;
        let (_, hom, bijective) = crossed_map(&direct, &via.tensor.carrier, &via.tensor.iota_c, &via.tensor.iota_d, tol)?;
        Ok((equal, dist, if bijective { hom } else { f64::INFINITY }))
    };
    let (via, yd_covariance) = via_from(&r.dual())?;
    let (equal, subspace_distance, crossed_isomorphism) = compare(&via)?;
    let (literal, _) = via_from(r)?;
    let (_, literal_subspace_distance, literal_crossed_isomorphism) = compare(&literal)?;
    let diff = |a: &StarRepresentation, b: &StarRepresentation| {
        a.images
            .iter()
            .zip(&b.images)
            .map(|(x, y)| max_abs_diff(x, y))
            .fold(0.0, f64::max)
    };
    Ok(MonoidalEmbeddingReport {
        direct_dim: direct.dim(),
        via_yd_dim: via.tensor.dim(),
        subspace_distance,
        equal,
        left_embedding: diff(&direct.iota_c, &via.tensor.iota_c),
        right_embedding: diff(&direct.iota_d, &via.tensor.iota_d),
        yd_covariance,
        crossed_isomorphism,
        literal_subspace_distance,
        literal_crossed_isomorphism,
    })
}

/// Covariance of the inclusion of a carrier under a coaction and a
/// corepresentation; a convenience for tests.
pub fn inclusion_covariance(gamma: &Coaction, u: &Corepresentation) -> f64 {
    covariance_residual(gamma, &StarRepresentation::inclusion(gamma.algebra().clone()), u)
}

/// `x ⊗ 1` and `1 ⊗ y` in product coordinates of `C ⊠ D`.
pub fn unit_embeddings(t: &TwistedTensor) -> (LinearMap, LinearMap) {
    let (dc, dd) = t.factor_dims();
    let uc = t.left.algebra().unit().clone();
    let ud = t.right.algebra().unit().clone();
    let mut l = Array2::zeros((dc * dd, dc));
    for i in 0..dc {
        let mut e = Array1::zeros(dc);
        e[i] = C64::new(1.0, 0.0);
        l.column_mut(i).assign(&kron_vec(&e, &ud));
    }
    let mut r = Array2::zeros((dc * dd, dd));
    for j in 0..dd {
        let mut e = Array1::zeros(dd);
        e[j] = C64::new(1.0, 0.0);
        r.column_mut(j).assign(&kron_vec(&uc, &e));
    }
    (LinearMap::new(l, vec![dc * dd]), LinearMap::new(r, vec![dc * dd]))
}
