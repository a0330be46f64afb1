//! Coactions, covariant representations, the quantum codouble and
//! Yetter–Drinfeld algebras.

use std::sync::Arc;

use ndarray::{Array1, Array2};

use crate::algebra::{
    coaction_like_hom_residual, kron_vec, Bialgebra, DensityReport, LinearMap, StarAlgebra, StarRepresentation,
    TensorProduct,
};
use crate::bicharacter::{induced_coaction, right_morphism_from_bicharacter, Bicharacter};
use crate::corep::Corepresentation;
use crate::error::{Error, Result};
use crate::qgroup::QuantumGroup;
use crate::tensor::{
    dagger, identity, kron, max_abs_diff, place_on_legs, product_coefficients, product_element, ComplexMatrix,
    LegShape, OperatorSubspace, Tolerance, C64, ZERO,
};

/// A linear map `γ: C → C ⊗ X` into the coefficient space of `C ⊗ X`.
#[derive(Clone, Debug)]
pub struct Coaction {
    algebra: Arc<StarAlgebra>,
    by: Arc<Bialgebra>,
    map: LinearMap,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoactionReport {
    pub rank: usize,
    pub injective: bool,
    /// ‖(id ⊗ Δ)γ − (γ ⊗ id)γ‖
    pub comodule: f64,
    pub podles: DensityReport,
    /// multiplicativity and *-compatibility on basis pairs
    pub homomorphism: f64,
}

impl CoactionReport {
    pub fn passes(&self, limit: f64) -> bool {
        self.injective && self.podles.holds() && self.comodule <= limit && self.homomorphism <= limit
    }
}

impl Coaction {
    pub fn new(algebra: Arc<StarAlgebra>, by: Arc<Bialgebra>, map: LinearMap) -> Self {
        assert_eq!(map.domain_dim(), algebra.dim(), "coaction domain");
        assert_eq!(map.codomain_dim(), algebra.dim() * by.dim(), "coaction codomain");
        Coaction { algebra, by, map }
    }

    /// `c ↦ c ⊗ 1`.
    pub fn trivial(algebra: Arc<StarAlgebra>, by: Arc<Bialgebra>) -> Self {
        let d = algebra.dim();
        let unit = by.algebra.unit().clone();
        let mut m = Array2::zeros((d * by.dim(), d));
        for i in 0..d {
            let mut e = Array1::zeros(d);
            e[i] = C64::new(1.0, 0.0);
            m.column_mut(i).assign(&kron_vec(&e, &unit));
        }
        let dims = vec![d, by.dim()];
        Coaction::new(algebra, by, LinearMap::new(m, dims))
    }

    /// `c ↦ V(c ⊗ 1)V*` for a unitary `V` on `H_C ⊗ H_X`; returns the
    /// coaction and the largest distance of an image from `C ⊗ X`.
    pub fn by_conjugation(algebra: Arc<StarAlgebra>, by: Arc<Bialgebra>, v: &ComplexMatrix) -> (Self, f64) {
        let n = by.algebra.ambient_dim();
        let d = algebra.dim();
        let vd = dagger(v);
        let one = identity(n);
        let mut m = Array2::zeros((d * by.dim(), d));
        let mut worst: f64 = 0.0;
        for (i, b) in algebra.basis().iter().enumerate() {
            let img = v.dot(&kron(b, &one)).dot(&vd);
            let (c, r) = product_coefficients(&img, &[algebra.space(), by.algebra.space()]);
            worst = worst.max(r);
            m.column_mut(i).assign(&c);
        }
        let dims = vec![d, by.dim()];
        (Coaction::new(algebra, by, LinearMap::new(m, dims)), worst)
    }

    /// The comultiplication of a bialgebra as a coaction on itself.
    pub fn comultiplication(b: Arc<Bialgebra>) -> Self {
        Coaction::new(b.algebra.clone(), b.clone(), b.comult.clone())
    }

    pub fn algebra(&self) -> &Arc<StarAlgebra> {
        &self.algebra
    }

    pub fn by(&self) -> &Arc<Bialgebra> {
        &self.by
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn apply(&self, x: &Array1<C64>) -> Array1<C64> {
        self.map.apply(x)
    }

    pub fn target(&self) -> TensorProduct {
        TensorProduct::new(vec![self.algebra.clone(), self.by.algebra.clone()])
    }

    pub fn comodule_residual(&self) -> f64 {
        let idc = LinearMap::identity(self.algebra.dim());
        let idx = LinearMap::identity(self.by.dim());
        let lhs = idc.tensor(&self.by.comult).compose(&self.map);
        let rhs = self.map.tensor(&idx).compose(&self.map);
        max_abs_diff(&lhs.coeffs, &rhs.coeffs)
    }

    /// `γ(C)·(1 ⊗ X)` against `C ⊗ X`.
    pub fn podles(&self, tol: &Tolerance) -> Result<DensityReport> {
        let (dc, dx) = (self.algebra.dim(), self.by.dim());
        let t = self.target();
        let mut cols = Array2::zeros((dc * dx, dc * dx));
        for i in 0..dc {
            let g = self.map.column(i);
            for j in 0..dx {
                cols.column_mut(i * dx + j)
                    .assign(&t.mul_basis_on_factor(&g, 1, j, true));
            }
        }
        DensityReport::from_columns(&cols, dc * dx, tol)
    }

    pub fn homomorphism_residual(&self) -> f64 {
        coaction_like_hom_residual(&self.algebra, &self.target(), &self.map)
    }

    pub fn report(&self, tol: &Tolerance) -> Result<CoactionReport> {
        let rank = self.map.rank(tol)?;
        Ok(CoactionReport {
            rank,
            injective: rank == self.algebra.dim(),
            comodule: self.comodule_residual(),
            podles: self.podles(tol)?,
            homomorphism: self.homomorphism_residual(),
        })
    }

    /// Checks all four coaction properties.
    pub fn validate(self, tol: &Tolerance) -> Result<Self> {
        let r = self.report(tol)?;
        let limit = tol.for_dim(self.algebra.ambient_dim() * self.by.algebra.ambient_dim());
        if !r.injective {
            return Err(Error::Invalid(format!("coaction is not injective (rank {})", r.rank)));
        }
        if !r.podles.holds() {
            return Err(Error::Invalid("coaction fails the Podleś condition".into()));
        }
        let worst = r.comodule.max(r.homomorphism);
        if worst > limit {
            return Err(Error::check("coaction laws", worst, limit));
        }
        Ok(self)
    }

    /// `(f ⊗ id)∘γ₁` against `γ₂∘f` for a linear map `f` between the
    /// coefficient spaces of two algebras.
    pub fn equivariance_residual(f: &LinearMap, from: &Coaction, to: &Coaction) -> f64 {
        let idx = LinearMap::identity(from.by.dim());
        let lhs = f.tensor(&idx).compose(&from.map);
        let rhs = to.map.compose(f);
        max_abs_diff(&lhs.coeffs, &rhs.coeffs)
    }

    /// `γ(c)` realised as an operator on `H_C ⊗ H_X`.
    pub fn realize(&self, i: usize) -> ComplexMatrix {
        product_element(&self.map.column(i), &[self.algebra.space(), self.by.algebra.space()])
    }
}

/// A representation `φ` of `C` and a corepresentation `U` on the same space
/// with `(φ ⊗ id)γ(c) = U(φ(c) ⊗ 1)U*`.
#[derive(Clone, Debug)]
pub struct CovariantRep {
    pub coaction: Coaction,
    pub phi: StarRepresentation,
    pub u: Corepresentation,
}

impl CovariantRep {
    pub fn hilbert_dim(&self) -> usize {
        self.phi.hilbert_dim()
    }

    pub fn covariance_residual(&self) -> f64 {
        covariance_residual(&self.coaction, &self.phi, &self.u)
    }

    pub fn is_faithful(&self, tol: &Tolerance) -> Result<bool> {
        self.phi.is_injective(tol)
    }
}

/// max over basis elements of ‖(φ ⊗ id)γ(c) − U(φ(c) ⊗ 1)U*‖, compared
/// through matrix coefficients.
pub fn covariance_residual(gamma: &Coaction, phi: &StarRepresentation, u: &Corepresentation) -> f64 {
    let dc = gamma.algebra.dim();
    let dx = gamma.by.dim();
    let mut worst: f64 = 0.0;
    for i in 0..dc {
        let col = gamma.map.column(i);
        let rhs = u.conjugate_coefficients(&phi.images[i]);
        for (k, r) in rhs.iter().enumerate() {
            let mut lhs = Array2::zeros(r.dim());
            for j in 0..dc {
                let c = col[j * dx + k];
                if c != ZERO {
                    lhs.scaled_add(c, &phi.images[j]);
                }
            }
            worst = worst.max(max_abs_diff(&lhs, r));
        }
    }
    worst
}

/// `φ = γ` on `H_C ⊗ H₀` with `U = W₂₃`.
pub fn canonical_covariant_rep(gamma: &Coaction, qg: &QuantumGroup) -> Result<CovariantRep> {
    if !Arc::ptr_eq(gamma.by(), qg.bialgebra()) {
        return Err(Error::Invalid("coaction is not by this quantum group".into()));
    }
    let hc = gamma.algebra.ambient_dim();
    let images = (0..gamma.algebra.dim()).map(|i| gamma.realize(i)).collect();
    let phi = StarRepresentation::new(gamma.algebra.clone(), images);
    let u = shifted_unitary_corep(qg, hc, 1);
    Ok(CovariantRep {
        coaction: gamma.clone(),
        phi,
        u,
    })
}

/// The corepresentation `1_{h} ⊗ W` acting on `(ℂ^h ⊗ H₀^{⊗legs})` with the
/// first leg of `W` on the last of those legs.
fn shifted_unitary_corep(qg: &QuantumGroup, h: usize, legs: usize) -> Corepresentation {
    let n = qg.dim_h0();
    let (dh, da) = (qg.ahat().dim(), qg.a().dim());
    let pad = h * n.pow(legs as u32 - 1);
    let c = qg.w_coefficients();
    let coeffs = (0..da)
        .map(|j| {
            let mut m = Array2::zeros((n, n));
            for i in 0..dh {
                m.scaled_add(c[i * da + j], &qg.ahat().basis()[i]);
            }
            kron(&identity(pad), &m)
        })
        .collect();
    Corepresentation::from_coefficients(qg.bialgebra().clone(), coeffs).expect("dimension")
}

/// `σ^W: A ⊗ Â → Â ⊗ A`, `a ⊗ â ↦ W(â ⊗ a)W*`, as a coefficient map.
pub fn sigma_w(qg: &QuantumGroup) -> (LinearMap, f64) {
    let (da, dh) = (qg.a().dim(), qg.ahat().dim());
    let w = qg.w();
    let wd = dagger(w);
    let mut m = Array2::zeros((dh * da, da * dh));
    let mut worst: f64 = 0.0;
    for i in 0..da {
        for j in 0..dh {
            let img = w.dot(&kron(&qg.ahat().basis()[j], &qg.a().basis()[i])).dot(&wd);
            let (c, r) = product_coefficients(&img, &[qg.ahat().space(), qg.a().space()]);
            worst = worst.max(r);
            m.column_mut(i * dh + j).assign(&c);
        }
    }
    (LinearMap::new(m, vec![dh, da]), worst)
}

/// The quantum codouble: `A ⊗ Â` with `Δ = σ^W₂₃ ∘ (Δ_A ⊗ Δ̂)`.
#[derive(Clone, Debug)]
pub struct Codouble {
    pub qg: Arc<QuantumGroup>,
    pub dual: Arc<QuantumGroup>,
    pub sigma: LinearMap,
    pub sigma_range: f64,
    pub bialgebra: Arc<Bialgebra>,
}

pub fn codouble(qg: Arc<QuantumGroup>, dual: Arc<QuantumGroup>) -> Result<Codouble> {
    if !Arc::ptr_eq(qg.dual_bialgebra(), dual.bialgebra()) {
        return Err(Error::Invalid("second argument is not the dual of the first".into()));
    }
    let (da, dh) = (qg.a().dim(), qg.ahat().dim());
    let (sigma, sigma_range) = sigma_w(&qg);
    let space = OperatorSubspace::tensor(qg.a().space(), qg.ahat().space());
    let carrier = Arc::new(StarAlgebra::from_subspace(space, &Tolerance::default())?);
    let comult = LinearMap::identity(da)
        .tensor(&sigma)
        .tensor(&LinearMap::identity(dh))
        .compose(&qg.comult().tensor(qg.dual_comult()));
    let comult = LinearMap::new(comult.coeffs, vec![da * dh, da * dh]);
    let counit = kron_vec(qg.counit(), qg.dual_counit());
    let bialgebra = Arc::new(Bialgebra {
        name: "codouble".into(),
        algebra: carrier,
        comult,
        counit: Some(counit),
    });
    Ok(Codouble {
        qg,
        dual,
        sigma,
        sigma_range,
        bialgebra,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CodoubleReport {
    pub coassociativity: f64,
    pub podles_right: DensityReport,
    pub podles_left: DensityReport,
    /// Δ_A, Δ̂ and σ^W are each *-homomorphisms
    pub homomorphism: f64,
    pub counit: f64,
    pub sigma_range: f64,
}

impl Codouble {
    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    pub fn report(&self, tol: &Tolerance) -> Result<CodoubleReport> {
        let b = &self.bialgebra;
        let src = StarAlgebra::from_subspace(
            OperatorSubspace::tensor(self.qg.a().space(), self.qg.ahat().space()),
            tol,
        )?;
        let tgt = TensorProduct::new(vec![self.qg.ahat().clone(), self.qg.a().clone()]);
        let sigma_hom = coaction_like_hom_residual(&src, &tgt, &self.sigma);
        let homomorphism = self
            .qg
            .bialgebra()
            .star_hom_residual()
            .max(self.qg.dual_bialgebra().star_hom_residual())
            .max(sigma_hom);
        Ok(CodoubleReport {
            coassociativity: b.coassociativity_residual(),
            podles_right: b.podles(true, tol)?,
            podles_left: b.podles(false, tol)?,
            homomorphism,
            counit: b.counit_residual().unwrap_or(f64::INFINITY),
            sigma_range: self.sigma_range,
        })
    }
}

/// `X = U₁₂V₁₃` for a corepresentation `U` of `A` and `V` of `Â` on one
/// space, after checking `σ^W₂₃(U₁₂V₁₃) = V₁₂U₁₃`.
pub fn compatible_corep_pair(
    d: &Codouble,
    u: &Corepresentation,
    v: &Corepresentation,
    tol: &Tolerance,
) -> Result<(Corepresentation, f64)> {
    let r = compatibility_residual(d, u, v)?;
    let h = u.hilbert_dim();
    let limit = tol.for_dim(h * d.qg.dim_h0() * d.qg.dim_h0());
    if r > limit {
        return Err(Error::check("codouble compatibility", r, limit));
    }
    let mut coeffs = Vec::with_capacity(u.coefficients().len() * v.coefficients().len());
    for ui in u.coefficients() {
        for vj in v.coefficients() {
            coeffs.push(ui.dot(vj));
        }
    }
    Ok((Corepresentation::from_coefficients(d.bialgebra.clone(), coeffs)?, r))
}

pub fn compatibility_residual(d: &Codouble, u: &Corepresentation, v: &Corepresentation) -> Result<f64> {
    if !Arc::ptr_eq(u.bialgebra(), d.qg.bialgebra()) || !Arc::ptr_eq(v.bialgebra(), d.qg.dual_bialgebra()) {
        return Err(Error::Invalid("corepresentations do not match the codouble".into()));
    }
    if u.hilbert_dim() != v.hilbert_dim() {
        return Err(Error::Dimension("corepresentations on different spaces".into()));
    }
    let (da, dh) = (d.qg.a().dim(), d.qg.ahat().dim());
    let h = u.hilbert_dim();
    let mut worst: f64 = 0.0;
    for jp in 0..dh {
        for ip in 0..da {
            let mut lhs = Array2::zeros((h, h));
            for i in 0..da {
                for j in 0..dh {
                    let c = d.sigma.coeffs[[jp * da + ip, i * dh + j]];
                    if c.norm() > 1e-15 {
                        lhs.scaled_add(c, &u.coefficients()[i].dot(&v.coefficients()[j]));
                    }
                }
            }
            let rhs = v.coefficients()[jp].dot(&u.coefficients()[ip]);
            worst = worst.max(max_abs_diff(&lhs, &rhs));
        }
    }
    Ok(worst)
}

/// Recovers `(U, V)` from `X` by slicing with the counits.
pub fn split_codouble_corep(d: &Codouble, x: &Corepresentation) -> Result<(Corepresentation, Corepresentation)> {
    let (da, dh) = (d.qg.a().dim(), d.qg.ahat().dim());
    let h = x.hilbert_dim();
    let mut u = vec![Array2::zeros((h, h)); da];
    let mut v = vec![Array2::zeros((h, h)); dh];
    for i in 0..da {
        for j in 0..dh {
            let m = &x.coefficients()[i * dh + j];
            u[i].scaled_add(d.qg.dual_counit()[j], m);
            v[j].scaled_add(d.qg.counit()[i], m);
        }
    }
    Ok((
        Corepresentation::from_coefficients(d.qg.bialgebra().clone(), u)?,
        Corepresentation::from_coefficients(d.qg.dual_bialgebra().clone(), v)?,
    ))
}

/// A C*-algebra with a coaction `γ` of `A` and a coaction `δ` of `Â`.
#[derive(Clone, Debug)]
pub struct YetterDrinfeld {
    pub qg: Arc<QuantumGroup>,
    pub dual: Arc<QuantumGroup>,
    pub gamma: Coaction,
    pub delta: Coaction,
}

impl YetterDrinfeld {
    pub fn new(qg: Arc<QuantumGroup>, dual: Arc<QuantumGroup>, gamma: Coaction, delta: Coaction) -> Result<Self> {
        if !Arc::ptr_eq(gamma.by(), qg.bialgebra()) || !Arc::ptr_eq(delta.by(), qg.dual_bialgebra()) {
            return Err(Error::Invalid("coactions are not by A and Â".into()));
        }
        if !Arc::ptr_eq(gamma.algebra(), delta.algebra()) {
            return Err(Error::Invalid("coactions on different algebras".into()));
        }
        if !Arc::ptr_eq(dual.bialgebra(), qg.dual_bialgebra()) {
            return Err(Error::Invalid("dual quantum group does not match".into()));
        }
        Ok(YetterDrinfeld {
            qg,
            dual,
            gamma,
            delta,
        })
    }

    pub fn algebra(&self) -> &Arc<StarAlgebra> {
        self.gamma.algebra()
    }

    /// ‖σ^W₂₃((γ ⊗ id)δ) − (δ ⊗ id)γ‖.
    pub fn yd_residual(&self) -> f64 {
        let dc = self.algebra().dim();
        let (da, dh) = (self.qg.a().dim(), self.qg.ahat().dim());
        let (sigma, _) = sigma_w(&self.qg);
        let lhs = LinearMap::identity(dc)
            .tensor(&sigma)
            .compose(&self.gamma.map().tensor(&LinearMap::identity(dh)).compose(self.delta.map()));
        let rhs = self
            .delta
            .map()
            .tensor(&LinearMap::identity(da))
            .compose(self.gamma.map());
        max_abs_diff(&lhs.coeffs, &rhs.coeffs)
    }

    /// `ξ = (γ ⊗ id)δ`, a coaction of the codouble.
    pub fn codouble_coaction(&self, d: &Codouble) -> Coaction {
        let dc = self.algebra().dim();
        let dh = self.qg.ahat().dim();
        let m = self
            .gamma
            .map()
            .tensor(&LinearMap::identity(dh))
            .compose(self.delta.map());
        Coaction::new(
            self.algebra().clone(),
            d.bialgebra.clone(),
            LinearMap::new(m.coeffs, vec![dc, d.dim()]),
        )
    }
}

/// Splits a codouble coaction back into `(γ, δ)` by applying the counits.
pub fn split_codouble_coaction(d: &Codouble, xi: &Coaction) -> (Coaction, Coaction) {
    let dc = xi.algebra().dim();
    let (da, dh) = (d.qg.a().dim(), d.qg.ahat().dim());
    let mut g = Array2::zeros((dc * da, dc));
    let mut dl = Array2::zeros((dc * dh, dc));
    for col in 0..dc {
        for c in 0..dc {
            for i in 0..da {
                for j in 0..dh {
                    let x = xi.map().coeffs[[(c * da + i) * dh + j, col]];
                    g[[c * da + i, col]] += x * d.qg.dual_counit()[j];
                    dl[[c * dh + j, col]] += x * d.qg.counit()[i];
                }
            }
        }
    }
    (
        Coaction::new(xi.algebra().clone(), d.qg.bialgebra().clone(), LinearMap::new(g, vec![dc, da])),
        Coaction::new(xi.algebra().clone(), d.qg.dual_bialgebra().clone(), LinearMap::new(dl, vec![dc, dh])),
    )
}

/// The Yetter–Drinfeld structure on `A`: `Δ_A` and `a ↦ Ŵ(a ⊗ 1)Ŵ*`.
pub fn canonical_yd(qg: Arc<QuantumGroup>, dual: Arc<QuantumGroup>) -> Result<(YetterDrinfeld, f64)> {
    let gamma = Coaction::comultiplication(qg.bialgebra().clone());
    let (delta, range) = Coaction::by_conjugation(qg.a().clone(), qg.dual_bialgebra().clone(), dual.w());
    Ok((YetterDrinfeld::new(qg, dual, gamma, delta)?, range))
}

/// Pairs `γ` with the coaction of `Â` induced through `R`.
pub fn induce_yd_from_rmatrix(
    r: &Bicharacter,
    dual: Arc<QuantumGroup>,
    gamma: &Coaction,
    tol: &Tolerance,
) -> Result<YetterDrinfeld> {
    let morphism = right_morphism_from_bicharacter(r, tol)?;
    let delta = induced_coaction(&morphism, gamma, tol)?;
    YetterDrinfeld::new(r.source().clone(), dual, gamma.clone(), delta)
}

/// A representation of a Yetter–Drinfeld algebra with corepresentations of
/// `A` and `Â` implementing both coactions.
#[derive(Clone, Debug)]
pub struct YdCovariantRep {
    pub yd: YetterDrinfeld,
    pub phi: StarRepresentation,
    pub u: Corepresentation,
    pub v: Corepresentation,
}

impl YdCovariantRep {
    pub fn hilbert_dim(&self) -> usize {
        self.phi.hilbert_dim()
    }

    /// Covariance for `γ` through `U` and for `δ` through `V`.
    pub fn covariance_residuals(&self) -> (f64, f64) {
        (
            covariance_residual(&self.yd.gamma, &self.phi, &self.u),
            covariance_residual(&self.yd.delta, &self.phi, &self.v),
        )
    }
}

/// `φ = ξ` on `H_C ⊗ H₀ ⊗ H₀` with `U = W₃₄W₂₄` and `V = Ŵ₃₄`.
///
/// Both coactions are implemented, but the pair is in general not
/// codouble-compatible; use it for covariance only.
pub fn canonical_yd_rep(yd: &YetterDrinfeld, d: &Codouble) -> Result<YdCovariantRep> {
    let xi = yd.codouble_coaction(d);
    let hc = yd.algebra().ambient_dim();
    let n = yd.qg.dim_h0();
    let images = (0..yd.algebra().dim())
        .map(|i| {
            product_element(
                &xi.map().column(i),
                &[yd.algebra().space(), yd.qg.a().space(), yd.qg.ahat().space()],
            )
        })
        .collect();
    let phi = StarRepresentation::new(yd.algebra().clone(), images);
    let shape = LegShape::new(&[hc, n, n, n])?;
    let w = yd.qg.w();
    let u = place_on_legs(w, &shape, &[3, 4])?.dot(&place_on_legs(w, &shape, &[2, 4])?);
    let v = place_on_legs(yd.dual.w(), &shape, &[3, 4])?;
    let tol = Tolerance::default();
    let u = Corepresentation::from_matrix(yd.qg.bialgebra().clone(), &u, &tol)?;
    let v = Corepresentation::from_matrix(yd.qg.dual_bialgebra().clone(), &v, &tol)?;
    Ok(YdCovariantRep {
        yd: yd.clone(),
        phi,
        u,
        v,
    })
}
