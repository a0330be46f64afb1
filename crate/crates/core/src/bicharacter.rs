//! Bicharacters, R-matrices and right quantum group morphisms.

use std::sync::Arc;

use ndarray::{Array1, Array2};

use crate::algebra::LinearMap;
use crate::coaction::Coaction;
use crate::error::{Error, Result};
use crate::qgroup::{FiniteGroup, QuantumGroup};
use crate::tensor::{
    dagger, expand_product, flip_conjugate, identity, kron, lstsq, max_abs_diff, place_on_legs,
    product_coefficients, slice_first_leg, ComplexMatrix, LegShape, Tolerance, UnitaryMatrix, C64, ONE,
};

/// A unitary `χ ∈ Â ⊗ B̂` that is a character in each leg, where `Â` is the
/// dual side of `source` and `B̂` the dual side of `target`.
#[derive(Clone, Debug)]
pub struct Bicharacter {
    source: Arc<QuantumGroup>,
    target: Arc<QuantumGroup>,
    chi: UnitaryMatrix,
    coeffs: Array1<C64>,
    report: BicharacterReport,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BicharacterReport {
    pub membership: f64,
    pub unitarity: f64,
    /// ‖(Δ̂_A ⊗ id)χ − χ₂₃χ₁₃‖
    pub first_leg: f64,
    /// ‖(id ⊗ Δ̂_B)χ − χ₁₂χ₁₃‖
    pub second_leg: f64,
}

impl BicharacterReport {
    pub fn worst(&self) -> f64 {
        self.membership
            .max(self.unitarity)
            .max(self.first_leg)
            .max(self.second_leg)
    }
}

impl Bicharacter {
    /// Validated constructor: rejects anything that is not a unitary
    /// bicharacter in `Â ⊗ B̂`.
    pub fn new(
        source: Arc<QuantumGroup>,
        target: Arc<QuantumGroup>,
        chi: ComplexMatrix,
        tol: &Tolerance,
    ) -> Result<Self> {
        let b = Bicharacter::unchecked(source, target, chi)?;
        let limit = tol.for_dim(b.chi.dim());
        if b.report.worst() > limit {
            return Err(Error::check("bicharacter laws", b.report.worst(), limit));
        }
        Ok(b)
    }

    /// Builds the object and its report without rejecting violators; used
    /// for negative controls.
    pub fn unchecked(source: Arc<QuantumGroup>, target: Arc<QuantumGroup>, chi: ComplexMatrix) -> Result<Self> {
        let n = source.dim_h0() * target.dim_h0();
        if chi.dim() != (n, n) {
            return Err(Error::Dimension(format!(
                "bicharacter must act on {}⊗{}",
                source.dim_h0(),
                target.dim_h0()
            )));
        }
        let (coeffs, membership) = product_coefficients(&chi, &[source.ahat().space(), target.ahat().space()]);
        let unitarity = crate::tensor::unitarity_residual(&chi);
        let mut b = Bicharacter {
            source,
            target,
            chi: UnitaryMatrix::assume(chi),
            coeffs,
            report: BicharacterReport {
                membership,
                unitarity,
                first_leg: 0.0,
                second_leg: 0.0,
            },
        };
        let (f, s) = b.character_residuals();
        b.report.first_leg = f;
        b.report.second_leg = s;
        Ok(b)
    }

    pub fn source(&self) -> &Arc<QuantumGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QuantumGroup> {
        &self.target
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.chi.matrix()
    }

    /// Coefficients in the product basis of `Â ⊗ B̂`.
    pub fn coefficients(&self) -> &Array1<C64> {
        &self.coeffs
    }

    pub fn report(&self) -> &BicharacterReport {
        &self.report
    }

    fn character_residuals(&self) -> (f64, f64) {
        let (na, nb) = (self.source.dim_h0(), self.target.dim_h0());
        let ah = self.source.ahat();
        let bh = self.target.ahat();
        let dual_a: Vec<ComplexMatrix> = (0..ah.dim())
            .map(|i| self.source.dual_comult_op(&ah.basis()[i]))
            .collect();
        let dual_b: Vec<ComplexMatrix> = (0..bh.dim())
            .map(|j| self.target.dual_comult_op(&bh.basis()[j]))
            .collect();
        let lhs1 = expand_product(&self.coeffs, &[&dual_a, bh.basis()]);
        let lhs2 = expand_product(&self.coeffs, &[ah.basis(), &dual_b]);
        let chi = self.matrix();
        let s1 = LegShape::new(&[na, na, nb]).expect("dims");
        let rhs1 = place_on_legs(chi, &s1, &[2, 3])
            .expect("legs")
            .dot(&place_on_legs(chi, &s1, &[1, 3]).expect("legs"));
        let s2 = LegShape::new(&[na, nb, nb]).expect("dims");
        let rhs2 = place_on_legs(chi, &s2, &[1, 2])
            .expect("legs")
            .dot(&place_on_legs(chi, &s2, &[1, 3]).expect("legs"));
        (max_abs_diff(&lhs1, &rhs1), max_abs_diff(&lhs2, &rhs2))
    }

    /// `σ(χ*) ∈ B̂ ⊗ Â`, a bicharacter in the opposite direction.
    pub fn dual(&self) -> Bicharacter {
        let (na, nb) = (self.source.dim_h0(), self.target.dim_h0());
        let m = flip_conjugate(&dagger(self.matrix()), na, nb);
        Bicharacter::unchecked(self.target.clone(), self.source.clone(), m).expect("shape")
    }

    /// `W` itself, as a bicharacter from the quantum group to its dual.
    pub fn from_unitary(qg: Arc<QuantumGroup>, dual: Arc<QuantumGroup>, tol: &Tolerance) -> Result<Self> {
        let w = qg.w().clone();
        Bicharacter::new(qg, dual, w, tol)
    }

    pub fn trivial(source: Arc<QuantumGroup>, target: Arc<QuantumGroup>) -> Self {
        let n = source.dim_h0() * target.dim_h0();
        Bicharacter::unchecked(source, target, identity(n)).expect("shape")
    }
}

/// A pairing `ρ(x, y) = ⟨ρ̂(x), y⟩` on a finite abelian group, stored as the
/// table of values.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianPairing {
    pub values: Array2<C64>,
}

impl AbelianPairing {
    /// Validates the table as a bicharacter of the group: multiplicative in
    /// each variable with unimodular values.
    pub fn new(group: &FiniteGroup, values: Array2<C64>, tol: &Tolerance) -> Result<Self> {
        let n = group.order();
        if !group.is_abelian() {
            return Err(Error::InvalidGroup("pairings need an abelian group".into()));
        }
        if values.dim() != (n, n) {
            return Err(Error::Dimension(format!("pairing table must be {n}x{n}")));
        }
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                worst = worst.max((values[[x, y]].norm() - 1.0).abs());
                for z in 0..n {
                    let a = values[[group.mul(x, y), z]] - values[[x, z]] * values[[y, z]];
                    let b = values[[x, group.mul(y, z)]] - values[[x, y]] * values[[x, z]];
                    worst = worst.max(a.norm()).max(b.norm());
                }
            }
        }
        if worst > tol.for_dim(n) {
            return Err(Error::check("homomorphism into the character group", worst, tol.for_dim(n)));
        }
        Ok(AbelianPairing { values })
    }

    /// `ρ(x, y) = ζ^{k·x·y}` on `Z/n` with `ζ = e^{2πi/n}`.
    pub fn cyclic(n: usize, k: usize) -> Self {
        let values = Array2::from_shape_fn((n, n), |(x, y)| {
            let t = 2.0 * std::f64::consts::PI * ((k * x * y) % n) as f64 / n as f64;
            root_of_unity(t)
        });
        AbelianPairing { values }
    }

    /// `Σ ρ(x, y) δ_x ⊗ δ_y`.
    pub fn diagonal(&self) -> ComplexMatrix {
        let n = self.values.nrows();
        let mut m = Array2::zeros((n * n, n * n));
        for x in 0..n {
            for y in 0..n {
                m[[x * n + y, x * n + y]] = self.values[[x, y]];
            }
        }
        m
    }
}

/// `e^{it}`, exact at multiples of π/2.
fn root_of_unity(t: f64) -> C64 {
    let q = t / std::f64::consts::FRAC_PI_2;
    if (q - q.round()).abs() < 1e-12 {
        match (q.round() as i64).rem_euclid(4) {
            0 => ONE,
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    } else {
        C64::new(t.cos(), t.sin())
    }
}

/// The diagonal bicharacter on the function-algebra side of `qg`, whose
/// underlying group is abelian and indexed as in `group`.
pub fn bicharacter_from_pairing(
    qg: Arc<QuantumGroup>,
    pairing: &AbelianPairing,
    tol: &Tolerance,
) -> Result<Bicharacter> {
    Bicharacter::new(qg.clone(), qg, pairing.diagonal(), tol)
}

/// Residuals of the R-matrix conditions for `r ∈ Â ⊗ Â`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RMatrixReport {
    /// max over a basis of `Â` of ‖R σ(Δ̂(x)) R* − Δ̂(x)‖
    pub equivariance: f64,
    /// ‖R₁₂W₁₃W₂₃ − W₂₃W₁₃R₁₂‖
    pub equivalent_form: f64,
}

pub fn check_rmatrix(r: &Bicharacter) -> Result<RMatrixReport> {
    let qg = r.source();
    if !Arc::ptr_eq(qg, r.target()) {
        return Err(Error::Invalid("an R-matrix needs source = target".into()));
    }
    let n = qg.dim_h0();
    let rm = r.matrix();
    let rd = dagger(rm);
    let mut equivariance: f64 = 0.0;
    for x in qg.ahat().basis() {
        let d = qg.dual_comult_op(x);
        let lhs = rm.dot(&flip_conjugate(&d, n, n)).dot(&rd);
        equivariance = equivariance.max(max_abs_diff(&lhs, &d));
    }
    let s = LegShape::new(&[n, n, n])?;
    let r12 = place_on_legs(rm, &s, &[1, 2])?;
    let w13 = place_on_legs(qg.w(), &s, &[1, 3])?;
    let w23 = place_on_legs(qg.w(), &s, &[2, 3])?;
    let equivalent_form = max_abs_diff(&r12.dot(&w13).dot(&w23), &w23.dot(&w13).dot(&r12));
    Ok(RMatrixReport {
        equivariance,
        equivalent_form,
    })
}

/// ‖R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂‖.
pub fn check_yang_baxter(r: &ComplexMatrix, n: usize) -> Result<f64> {
    let s = LegShape::new(&[n, n, n])?;
    let r12 = place_on_legs(r, &s, &[1, 2])?;
    let r13 = place_on_legs(r, &s, &[1, 3])?;
    let r23 = place_on_legs(r, &s, &[2, 3])?;
    Ok(max_abs_diff(&r12.dot(&r13).dot(&r23), &r23.dot(&r13).dot(&r12)))
}

/// Residuals of `(ê ⊗ id)R = 1` and `(id ⊗ ê)R = 1`.
pub fn check_counit_compat(r: &Bicharacter) -> (f64, f64) {
    let (sa, sb) = (r.source(), r.target());
    let (da, db) = (sa.ahat().dim(), sb.ahat().dim());
    let c = r.coefficients();
    let mut left = Array1::zeros(db);
    let mut right = Array1::zeros(da);
    for i in 0..da {
        for j in 0..db {
            left[j] += sa.dual_counit()[i] * c[i * db + j];
            right[i] += c[i * db + j] * sb.dual_counit()[j];
        }
    }
    let l = sb.ahat().element(&left);
    let rr = sa.ahat().element(&right);
    (
        max_abs_diff(&l, &identity(sb.dim_h0())),
        max_abs_diff(&rr, &identity(sa.dim_h0())),
    )
}

/// ‖R* − σ(R)‖ and the thresholded verdict.
pub fn check_antisymmetric(r: &Bicharacter, tol: &Tolerance) -> (bool, f64) {
    let n = r.source().dim_h0();
    let res = max_abs_diff(&dagger(r.matrix()), &flip_conjugate(r.matrix(), n, n));
    (res <= tol.for_dim(n * n), res)
}

/// ‖σ(R)R − 1‖.
pub fn symmetry_defect(r: &ComplexMatrix, n: usize) -> f64 {
    let s = flip_conjugate(r, n, n).dot(r);
    max_abs_diff(&s, &identity(n * n))
}

/// A right quantum group morphism `Δ_R: A → A ⊗ B̂`.
#[derive(Clone, Debug)]
pub struct RightMorphism {
    pub chi: Bicharacter,
    pub map: LinearMap,
    /// consistency of the linear extension from slices
    pub extension_residual: f64,
}

impl RightMorphism {
    /// `(Δ_A ⊗ id)Δ_R = (id ⊗ Δ_R)Δ_A`.
    pub fn first_square(&self) -> f64 {
        let qg = self.chi.source();
        let da = qg.a().dim();
        let db = self.chi.target().ahat().dim();
        let idb = LinearMap::identity(db);
        let ida = LinearMap::identity(da);
        let lhs = qg.comult().tensor(&idb).compose(&self.map);
        let rhs = ida.tensor(&self.map).compose(qg.comult());
        max_abs_diff(&lhs.coeffs, &rhs.coeffs)
    }

    /// `(id ⊗ Δ̂_B)Δ_R = (Δ_R ⊗ id)Δ_R`.
    pub fn second_square(&self) -> f64 {
        let tg = self.chi.target();
        let ida = LinearMap::identity(self.chi.source().a().dim());
        let idb = LinearMap::identity(tg.ahat().dim());
        let lhs = ida.tensor(tg.dual_comult()).compose(&self.map);
        let rhs = self.map.tensor(&idb).compose(&self.map);
        max_abs_diff(&lhs.coeffs, &rhs.coeffs)
    }

    /// `(id ⊗ Δ_R)W` as an operator on `H_A ⊗ H_A ⊗ H_B`.
    pub fn applied_to_unitary(&self) -> ComplexMatrix {
        let qg = self.chi.source();
        let tg = self.chi.target();
        let (dh, da) = (qg.ahat().dim(), qg.a().dim());
        let images: Vec<ComplexMatrix> = (0..da)
            .map(|j| {
                crate::tensor::product_element(&self.map.column(j), &[qg.a().space(), tg.ahat().space()])
            })
            .collect();
        let n = qg.dim_h0() * qg.dim_h0() * tg.dim_h0();
        let mut out = Array2::zeros((n, n));
        let c = qg.w_coefficients();
        for i in 0..dh {
            for j in 0..da {
                let x = c[i * da + j];
                if x.norm() > 1e-15 {
                    out.scaled_add(x, &kron(&qg.ahat().basis()[i], &images[j]));
                }
            }
        }
        out
    }

    /// Extracts `χ` from `(id ⊗ Δ_R)W = W₁₂χ₁₃`; returns it with the
    /// residual of the factorisation.
    pub fn recover_bicharacter(&self) -> (ComplexMatrix, f64) {
        let qg = self.chi.source();
        let (na, nb) = (qg.dim_h0(), self.chi.target().dim_h0());
        let s = LegShape::new(&[na, na, nb]).expect("dims");
        let w12 = place_on_legs(qg.w(), &s, &[1, 2]).expect("legs");
        let x = dagger(&w12).dot(&self.applied_to_unitary());
        // partial trace over the middle leg
        let mut chi = Array2::zeros((na * nb, na * nb));
        for a in 0..na {
            for b in 0..nb {
                for c in 0..na {
                    for d in 0..nb {
                        let mut acc = C64::new(0.0, 0.0);
                        for m in 0..na {
                            acc += x[[(a * na + m) * nb + b, (c * na + m) * nb + d]];
                        }
                        chi[[a * nb + b, c * nb + d]] = acc / na as f64;
                    }
                }
            }
        }
        let back = place_on_legs(&chi, &s, &[1, 3]).expect("legs");
        let r = max_abs_diff(&back, &x);
        (chi, r)
    }
}

/// `Δ_R((ω ⊗ id)W) := (ω ⊗ id ⊗ id)(W₁₂χ₁₃)`, extended linearly.
pub fn right_morphism_from_bicharacter(chi: &Bicharacter, tol: &Tolerance) -> Result<RightMorphism> {
    let qg = chi.source();
    let tg = chi.target();
    let (na, nb) = (qg.dim_h0(), tg.dim_h0());
    let (dh, da, db) = (qg.ahat().dim(), qg.a().dim(), tg.ahat().dim());
    let s = LegShape::new(&[na, na, nb])?;
    let prod = place_on_legs(qg.w(), &s, &[1, 2])?.dot(&place_on_legs(chi.matrix(), &s, &[1, 3])?);
    // W₁₂χ₁₃ = Σ_i x̂_i ⊗ Y_i and W = Σ_{ij} c_ij x̂_i ⊗ a_j, so Σ_j c_ij Δ_R(a_j) = Y_i
    let ys = slice_first_leg(&prod, qg.ahat().space(), na * nb);
    let mut rhs = Array2::zeros((dh, da * db));
    let mut range: f64 = 0.0;
    for (i, y) in ys.iter().enumerate() {
        let (c, r) = product_coefficients(y, &[qg.a().space(), tg.ahat().space()]);
        range = range.max(r);
        rhs.row_mut(i).assign(&c);
    }
    let cmat = Array2::from_shape_fn((dh, da), |(i, j)| qg.w_coefficients()[i * da + j]);
    let (x, consistency) = lstsq(&cmat, &rhs, tol)?;
    let map = LinearMap::new(x.t().to_owned(), vec![da, db]);
    let extension_residual = range.max(consistency);
    let limit = tol.for_dim(na * na * nb);
    if extension_residual > limit {
        return Err(Error::check("linear extension from slices", extension_residual, limit));
    }
    Ok(RightMorphism {
        chi: chi.clone(),
        map,
        extension_residual,
    })
}

/// Solves `(id_C ⊗ Δ_R)γ = (γ ⊗ id)δ` for the coaction `δ` of the dual
/// side of the target.
pub fn induced_coaction(morphism: &RightMorphism, gamma: &Coaction, tol: &Tolerance) -> Result<Coaction> {
    let db = morphism.chi.target().ahat().dim();
    let dc = gamma.algebra().dim();
    let lhs = LinearMap::identity(dc).tensor(&morphism.map).compose(gamma.map());
    let big = gamma.map().tensor(&LinearMap::identity(db));
    let (delta, r) = lstsq(&big.coeffs, &lhs.coeffs, tol)?;
    let limit = tol.for_dim(lhs.codomain_dim());
    if r > limit {
        return Err(Error::check("induced coaction square", r, limit));
    }
    Ok(Coaction::new(
        gamma.algebra().clone(),
        morphism.chi.target().dual_bialgebra().clone(),
        LinearMap::new(delta, vec![dc, db]),
    ))
}

/// A diagonal unitary `Σ_k exp(iθ_k)e_kk` with one entry negated: a
/// corrupted copy of `r` used as a negative control.
pub fn corrupt_phase(r: &ComplexMatrix, index: usize) -> ComplexMatrix {
    let mut m = r.clone();
    m[[index, index]] = -m[[index, index]];
    m
}
