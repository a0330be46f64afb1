//! Braided bialgebras over the codouble of a quantum group, the map
//! `Ψ: A ⊠ B ⊠ B' → (A ⊠ B) ⊗ (A ⊠ B')` and the semidirect product
//! bialgebra `C = A ⊠ B` with `Δ_C = Ψ ∘ (id_A ⊠ Δ_B)`.

use std::sync::Arc;

use ndarray::{Array1, Array2};

use crate::algebra::{coaction_like_hom_residual, Bialgebra, DensityReport, LinearMap, StarAlgebra, StarRepresentation, TensorProduct};
use crate::coaction::{
    codouble, compatibility_residual, Coaction, CoactionReport, YdCovariantRep, YetterDrinfeld,
};
use crate::corep::Corepresentation;
use crate::error::{ensure, Error, Result};
use crate::qgroup::solve_counit;
use crate::tensor::{
    dagger, flip_conjugate, identity, kron, lstsq, max_abs_diff, place_on_legs, product_element, subspace_equal, ComplexMatrix,
    LegShape, OperatorSubspace, Tolerance, C64,
};
use crate::twisted::{boxtimes_yd, solve_boxtimes_morphism, BoxtimesMorphism, YdTwisted};

/// A Yetter–Drinfeld algebra represented by its own inclusion, with given
/// corepresentations implementing the two coactions.
pub fn inclusion_yd_rep(yd: YetterDrinfeld, u: Corepresentation, v: Corepresentation, tol: &Tolerance) -> Result<YdCovariantRep> {
    let phi = StarRepresentation::inclusion(yd.algebra().clone());
    checked_yd_rep(YdCovariantRep { yd, phi, u, v }, tol)
}

fn checked_yd_rep(rep: YdCovariantRep, tol: &Tolerance) -> Result<YdCovariantRep> {
    let n = rep.yd.qg.dim_h0();
    let limit = tol.for_dim(rep.hilbert_dim() * n * n);
    let (cu, cv) = rep.covariance_residuals();
    ensure("Yetter–Drinfeld covariance", cu.max(cv), limit)?;
    let d = codouble(rep.yd.qg.clone(), rep.yd.dual.clone())?;
    ensure("codouble compatibility", compatibility_residual(&d, &rep.u, &rep.v)?, limit)?;
    ensure("Yetter–Drinfeld condition", rep.yd.yd_residual(), limit)?;
    Ok(rep)
}

/// `x` placed on `x_legs` of `shape`, conjugated by `m` placed on `m_legs`.
pub fn conjugate_on_legs(
    x: &ComplexMatrix,
    m: &ComplexMatrix,
    shape: &LegShape,
    x_legs: &[usize],
    m_legs: &[usize],
) -> Result<ComplexMatrix> {
    let xm = place_on_legs(x, shape, x_legs)?;
    let mm = place_on_legs(m, shape, m_legs)?;
    Ok(mm.dot(&xm).dot(&dagger(&mm)))
}

/// A comultiplication `Δ_B: B → B ⊠ B` on a Yetter–Drinfeld algebra, with
/// `B ⊠ B` built from the given representation.
#[derive(Clone, Debug)]
pub struct BraidedBialgebra {
    pub name: String,
    pub rep: YdCovariantRep,
    pub square: YdTwisted,
    /// columns: carrier coefficients of `Δ_B(b_i)` in `B ⊠ B`
    pub comult: LinearMap,
}

#[derive(Clone, Debug)]
pub struct BraidedReport {
    pub a_equivariance: f64,
    pub dual_equivariance: f64,
    pub homomorphism: f64,
    /// `(Δ⊠id)Δ` against `(id⊠Δ)Δ` as operators on the triple space
    pub coassociativity: f64,
    /// the two bracketings of `B ⊠ B ⊠ B`: projector distance of the
    /// carriers and largest difference of the factor images
    pub associator_distance: f64,
    pub associator_images: f64,
    /// `Δ(B)·ι₁(B)` and `Δ(B)·ι₂(B)` against `B ⊠ B`
    pub podles_first: DensityReport,
    pub podles_second: DensityReport,
    pub injective: bool,
    pub unital: bool,
    /// ‖Δ(1) − 1‖
    pub unit_preserving: f64,
}

impl BraidedReport {
    pub fn bisimplifiable(&self) -> bool {
        self.podles_first.holds() && self.podles_second.holds()
    }

    pub fn laws_hold(&self, limit: f64) -> bool {
        [
            self.a_equivariance,
            self.dual_equivariance,
            self.homomorphism,
            self.coassociativity,
            self.associator_distance,
            self.associator_images,
        ]
        .iter()
        .all(|r| r.is_finite() && *r <= limit)
    }

    /// Unital and bisimplifiable, on top of the bialgebra laws.
    pub fn is_compact(&self, limit: f64) -> bool {
        self.laws_hold(limit) && self.unital && self.bisimplifiable()
    }
}

impl BraidedBialgebra {
    /// `Δ_B` from its values on a spanning set: `domain[k]` are operators
    /// in `B`, `value(B ⊠ B, k)` the corresponding operators on `L ⊗ L`.
    pub fn from_values(
        name: &str,
        rep: YdCovariantRep,
        domain: &[ComplexMatrix],
        value: impl Fn(&YdTwisted, usize) -> ComplexMatrix,
        tol: &Tolerance,
    ) -> Result<Self> {
        let square = boxtimes_yd(&rep, &rep, tol)?;
        let b = rep.yd.algebra();
        let carrier = &square.tensor.carrier;
        let mut x = Array2::zeros((b.dim(), domain.len()));
        let mut y = Array2::zeros((carrier.dim(), domain.len()));
        let mut range: f64 = 0.0;
        for (k, op) in domain.iter().enumerate() {
            let (c, r) = b.decompose(op);
            range = range.max(r);
            x.column_mut(k).assign(&c);
            let (c, r) = carrier.decompose(&value(&square, k));
            range = range.max(r);
            y.column_mut(k).assign(&c);
        }
        let limit = tol.for_dim(carrier.ambient_dim());
        ensure("comultiplication data in B and B ⊠ B", range, limit)?;
        // Δ·X = Y
        let (mt, r) = lstsq(&x.t().to_owned(), &y.t().to_owned(), tol)?;
        ensure("comultiplication determined by its values", r, limit)?;
        let comult = LinearMap::new(mt.t().to_owned(), vec![carrier.dim()]);
        Ok(BraidedBialgebra {
            name: name.into(),
            rep,
            square,
            comult,
        })
    }

    /// `Δ_B` in product coordinates: column `i` holds the coefficients of
    /// `Δ_B(b_i)` against the products `ι₁(b_j)ι₂(b_k)`, index `j·d + k`.
    pub fn from_product_coordinates(name: &str, rep: YdCovariantRep, delta: &Array2<C64>, tol: &Tolerance) -> Result<Self> {
        let square = boxtimes_yd(&rep, &rep, tol)?;
        let comult = LinearMap::new(square.tensor.product_matrix().dot(delta), vec![square.tensor.dim()]);
        Ok(BraidedBialgebra {
            name: name.into(),
            rep,
            square,
            comult,
        })
    }

    /// The same data with a different comultiplication; used for
    /// perturbed negative controls.
    pub fn with_comult(&self, comult: LinearMap) -> Self {
        BraidedBialgebra {
            comult,
            ..self.clone()
        }
    }

    pub fn yd(&self) -> &YetterDrinfeld {
        &self.rep.yd
    }

    pub fn algebra(&self) -> &Arc<StarAlgebra> {
        self.rep.yd.algebra()
    }

    pub fn dim(&self) -> usize {
        self.algebra().dim()
    }

    /// `Δ_B(b_i)` as an operator on `L ⊗ L`.
    pub fn comult_operator(&self, i: usize) -> ComplexMatrix {
        self.square.tensor.carrier.element(&self.comult.column(i))
    }

    pub fn check(&self, tol: &Tolerance) -> Result<BraidedReport> {
        let d = self.dim();
        let sq = &self.square;
        let a_equivariance = Coaction::equivariance_residual(&self.comult, &self.yd().gamma, &sq.a_side.coaction);
        let dual_equivariance = Coaction::equivariance_residual(&self.comult, &self.yd().delta, &sq.dual_side.coaction);
        let homomorphism = coaction_like_hom_residual(
            self.algebra(),
            &TensorProduct::new(vec![sq.tensor.carrier.clone()]),
            &self.comult,
        );

        let left_cube = boxtimes_yd(&sq.rep, &self.rep, tol)?;
        let right_cube = boxtimes_yd(&self.rep, &sq.rep, tol)?;
        let id = LinearMap::identity(d);
        let lm = solve_boxtimes_morphism(&self.comult, &id, &sq.tensor, &left_cube.tensor, tol)?;
        let rm = solve_boxtimes_morphism(&id, &self.comult, &sq.tensor, &right_cube.tensor, tol)?;
        let lhs = lm.map.compose(&self.comult);
        let rhs = rm.map.compose(&self.comult);
        let mut coassociativity: f64 = lm.solve_residual.max(rm.solve_residual);
        for i in 0..d {
            let x = left_cube.tensor.carrier.element(&lhs.column(i));
            let y = right_cube.tensor.carrier.element(&rhs.column(i));
            coassociativity = coassociativity.max(max_abs_diff(&x, &y));
        }
        let (_, associator_distance) =
            subspace_equal(left_cube.tensor.carrier.space(), right_cube.tensor.carrier.space(), tol)?;
        let associator_images = cube_image_difference(sq, &left_cube, &right_cube);

        let first = sq.tensor.left_embedding();
        let second = sq.tensor.right_embedding();
        let podles_first = self.braided_density(&first, tol)?;
        let podles_second = self.braided_density(&second, tol)?;
        let injective = self.comult.rank(tol)? == d;
        let alg = self.algebra();
        let unit = alg.unit();
        let unital = (0..d).all(|i| {
            let mut e = Array1::zeros(d);
            e[i] = C64::new(1.0, 0.0);
            max_abs_diff(&alg.mul(unit, &e), &e) <= tol.for_dim(d) && max_abs_diff(&alg.mul(&e, unit), &e) <= tol.for_dim(d)
        });
        let unit_preserving = max_abs_diff(&self.comult.apply(unit), sq.tensor.carrier.unit());
        Ok(BraidedReport {
            a_equivariance,
            dual_equivariance,
            homomorphism,
            coassociativity,
            associator_distance,
            associator_images,
            podles_first,
            podles_second,
            injective,
            unital,
            unit_preserving,
        })
    }

    fn braided_density(&self, embedding: &LinearMap, tol: &Tolerance) -> Result<DensityReport> {
        let d = self.dim();
        let carrier = &self.square.tensor.carrier;
        let mut cols = Array2::zeros((carrier.dim(), d * d));
        for i in 0..d {
            let di = self.comult.column(i);
            for j in 0..d {
                cols.column_mut(i * d + j).assign(&carrier.mul(&di, &embedding.column(j)));
            }
        }
        DensityReport::from_columns(&cols, carrier.dim(), tol)
    }
}

/// Largest difference between the images of the three factors in
/// `(B ⊠ B) ⊠ B` and `B ⊠ (B ⊠ B)`.
fn cube_image_difference(sq: &YdTwisted, left: &YdTwisted, right: &YdTwisted) -> f64 {
    let inner_l = sq.tensor.left_embedding();
    let inner_r = sq.tensor.right_embedding();
    let d = inner_l.domain_dim();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        let l1 = left.tensor.iota_c.apply(&inner_l.column(i));
        let l2 = left.tensor.iota_c.apply(&inner_r.column(i));
        let l3 = &left.tensor.iota_d.images[i];
        let r1 = &right.tensor.iota_c.images[i];
        let r2 = right.tensor.iota_d.apply(&inner_l.column(i));
        let r3 = right.tensor.iota_d.apply(&inner_r.column(i));
        worst = worst
            .max(max_abs_diff(&l1, r1))
            .max(max_abs_diff(&l2, &r2))
            .max(max_abs_diff(l3, &r3));
    }
    worst
}

/// `A ⊠ (B ⊠ B')` on `H ⊗ L ⊗ L'`, with `A ⊠ B`, `A ⊠ B'` and the
/// representations of the three factors given by explicit conjugations.
#[derive(Clone, Debug)]
pub struct TripleProduct {
    pub a: YdCovariantRep,
    pub b: YdCovariantRep,
    pub b2: YdCovariantRep,
    /// `B ⊠ B'`
    pub inner: YdTwisted,
    /// `A ⊠ (B ⊠ B')`
    pub nested: YdTwisted,
    pub ab: YdTwisted,
    pub ab2: YdTwisted,
    /// `(π̂ ⊗ id)(σ(V)*)` on `H ⊗ L` and the same for `V'`
    pub vhat: ComplexMatrix,
    pub vhat2: ComplexMatrix,
    pub iota_a: StarRepresentation,
    pub iota_b: StarRepresentation,
    pub iota_b2: StarRepresentation,
    pub report: TripleReport,
}

#[derive(Clone, Debug)]
pub struct TripleReport {
    pub dim: usize,
    /// explicit factor representations against the nested construction
    pub explicit_vs_nested: f64,
    /// ‖𝐔₁₂𝐕̂'*₂₃Z₁₃ − 𝐕̂'*₂₃𝐔₁₂‖ on `L ⊗ H ⊗ L'`
    pub z_relation: f64,
    pub associator_distance: f64,
    pub associator_images: f64,
    pub a_coaction: CoactionReport,
    pub dual_coaction: CoactionReport,
    /// embeddings of the three factors are equivariant for both coactions
    pub equivariance: f64,
}

pub fn triple_product(a: &YdCovariantRep, b: &YdCovariantRep, b2: &YdCovariantRep, tol: &Tolerance) -> Result<TripleProduct> {
    let ab = boxtimes_yd(a, b, tol)?;
    let ab2 = boxtimes_yd(a, b2, tol)?;
    let inner = boxtimes_yd(b, b2, tol)?;
    triple_from_parts(a, b, b2, ab, ab2, inner, tol)
}

/// `V̂ = (π̂ ⊗ id)(σ(V)*)` on `H₀ ⊗ L` for a corepresentation `V` of `Â`
/// on `L`, with `π̂` the inclusion of `Â`.
pub fn dual_corep_unitary(v: &Corepresentation, n: usize) -> ComplexMatrix {
    let l = v.hilbert_dim();
    dagger(&flip_conjugate(&v.matrix(), l, n))
}

fn triple_from_parts(
    a: &YdCovariantRep,
    b: &YdCovariantRep,
    b2: &YdCovariantRep,
    ab: YdTwisted,
    ab2: YdTwisted,
    inner: YdTwisted,
    tol: &Tolerance,
) -> Result<TripleProduct> {
    let qg = a.yd.qg.clone();
    if !Arc::ptr_eq(a.yd.algebra(), qg.a()) {
        return Err(Error::Invalid("first factor must be the quantum group's own algebra".into()));
    }
    let n = qg.dim_h0();
    let (h, l, l2) = (a.hilbert_dim(), b.hilbert_dim(), b2.hilbert_dim());
    if h != n {
        return Err(Error::Dimension("A must act on H₀".into()));
    }
    let nested = boxtimes_yd(a, &inner.rep, tol)?;
    let left_assoc = boxtimes_yd(&ab.rep, b2, tol)?;

    let vhat = dual_corep_unitary(&b.v, n);
    let vhat2 = dual_corep_unitary(&b2.v, n);
    let z = inner.tensor.z.matrix();
    let shape = LegShape::new(&[h, l, l2])?;
    let iota_a: Vec<ComplexMatrix> = a.phi.images.iter().map(|x| kron(x, &identity(l * l2))).collect();
    let iota_b = b
        .phi
        .images
        .iter()
        .map(|x| conjugate_on_legs(x, &dagger(&vhat), &shape, &[2], &[1, 2]))
        .collect::<Result<Vec<_>>>()?;
    let z23 = place_on_legs(z, &shape, &[2, 3])?;
    let iota_b2 = b2
        .phi
        .images
        .iter()
        .map(|x| {
            let inner = conjugate_on_legs(x, &dagger(&vhat2), &shape, &[3], &[1, 3])?;
            Ok(z23.dot(&inner).dot(&dagger(&z23)))
        })
        .collect::<Result<Vec<_>>>()?;

    // the factor images inside the nested construction
    let in_l = inner.tensor.left_embedding();
    let in_r = inner.tensor.right_embedding();
    let mut explicit_vs_nested: f64 = 0.0;
    for (x, y) in iota_a.iter().zip(&nested.tensor.iota_c.images) {
        explicit_vs_nested = explicit_vs_nested.max(max_abs_diff(x, y));
    }
    for (i, x) in iota_b.iter().enumerate() {
        explicit_vs_nested = explicit_vs_nested.max(max_abs_diff(x, &nested.tensor.iota_d.apply(&in_l.column(i))));
    }
    for (i, x) in iota_b2.iter().enumerate() {
        explicit_vs_nested = explicit_vs_nested.max(max_abs_diff(x, &nested.tensor.iota_d.apply(&in_r.column(i))));
    }

    let s2 = LegShape::new(&[l, n, l2])?;
    let u12 = place_on_legs(&b.u.matrix(), &s2, &[1, 2])?;
    let v23 = place_on_legs(&dagger(&vhat2), &s2, &[2, 3])?;
    let z13 = place_on_legs(z, &s2, &[1, 3])?;
    let z_relation = max_abs_diff(&u12.dot(&v23).dot(&z13), &v23.dot(&u12));

    let (_, associator_distance) = subspace_equal(nested.tensor.carrier.space(), left_assoc.tensor.carrier.space(), tol)?;
    let ab_l = ab.tensor.left_embedding();
    let ab_r = ab.tensor.right_embedding();
    let mut associator_images: f64 = 0.0;
    for (i, x) in iota_a.iter().enumerate() {
        associator_images = associator_images.max(max_abs_diff(x, &left_assoc.tensor.iota_c.apply(&ab_l.column(i))));
    }
    for (i, x) in iota_b.iter().enumerate() {
        associator_images = associator_images.max(max_abs_diff(x, &left_assoc.tensor.iota_c.apply(&ab_r.column(i))));
    }
    for (x, y) in iota_b2.iter().zip(&left_assoc.tensor.iota_d.images) {
        associator_images = associator_images.max(max_abs_diff(x, y));
    }

    let a_coaction = nested.a_side.coaction.report(tol)?;
    let dual_coaction = nested.dual_side.coaction.report(tol)?;
    let equivariance = [
        nested.a_side.left_equivariance,
        nested.a_side.right_equivariance,
        nested.a_side.generator_agreement,
        nested.dual_side.left_equivariance,
        nested.dual_side.right_equivariance,
        nested.dual_side.generator_agreement,
        inner.a_side.left_equivariance,
        inner.a_side.right_equivariance,
        inner.dual_side.left_equivariance,
        inner.dual_side.right_equivariance,
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let limit = tol.for_dim(h * l * l2);
    ensure("Z characterisation through U and V̂'", z_relation, limit)?;

    let report = TripleReport {
        dim: nested.tensor.dim(),
        explicit_vs_nested,
        z_relation,
        associator_distance,
        associator_images,
        a_coaction,
        dual_coaction,
        equivariance,
    };
    Ok(TripleProduct {
        a: a.clone(),
        b: b.clone(),
        b2: b2.clone(),
        iota_a: StarRepresentation::new(qg.a().clone(), iota_a),
        iota_b: StarRepresentation::new(b.yd.algebra().clone(), iota_b),
        iota_b2: StarRepresentation::new(b2.yd.algebra().clone(), iota_b2),
        inner,
        nested,
        ab,
        ab2,
        vhat,
        vhat2,
        report,
    })
}

impl TripleProduct {
    /// `ι_B(b_i)` as a carrier coefficient vector of `A ⊠ (B ⊠ B')`.
    pub fn b_embedding(&self) -> LinearMap {
        self.nested.tensor.right_embedding().compose(&self.inner.tensor.left_embedding())
    }

    pub fn b2_embedding(&self) -> LinearMap {
        self.nested.tensor.right_embedding().compose(&self.inner.tensor.right_embedding())
    }

    pub fn a_embedding(&self) -> LinearMap {
        self.nested.tensor.left_embedding()
    }
}

/// `Ψ(x) = 𝕎₁₃𝐔₂₃𝐕̂'*₃₄ x₁₂₄ 𝐕̂'₃₄𝐔*₂₃𝕎*₁₃` on the carrier of
/// `A ⊠ B ⊠ B'`, with its three defining identities.
#[derive(Clone, Debug)]
pub struct PsiMap {
    /// nested carrier coefficients → coefficients in `(A⊠B) ⊗ (A⊠B')`
    pub map: LinearMap,
    /// `𝕎₁₃𝐔₂₃𝐕̂'*₃₄` on `H ⊗ L ⊗ H ⊗ L'`
    pub conjugator: ComplexMatrix,
    pub dims: (usize, usize, usize),
    /// distance of `Ψ(x)` from `(A⊠B) ⊗ (A⊠B')`
    pub range: f64,
    /// `Ψι_A = (ι_A⊗ι_A)Δ_A`
    pub on_a: f64,
    /// `Ψι_B = (ι_B⊗ι_A)β`
    pub on_b: f64,
    /// `Ψι_{B'} = 1⊗ι_{B'}`
    pub on_b2: f64,
    pub homomorphism: f64,
    pub injective: bool,
}

impl PsiMap {
    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let (h, l, l2) = self.dims;
        let shape = LegShape::new(&[h, l, h, l2])?;
        conjugate_on_legs(x, &self.conjugator, &shape, &[1, 2, 4], &[1, 2, 3, 4])
    }

    pub fn worst_identity(&self) -> f64 {
        self.on_a.max(self.on_b).max(self.on_b2)
    }
}

pub fn psi_map(t: &TripleProduct, tol: &Tolerance) -> Result<PsiMap> {
    let qg = &t.a.yd.qg;
    let n = qg.dim_h0();
    let (l, l2) = (t.b.hilbert_dim(), t.b2.hilbert_dim());
    let shape = LegShape::new(&[n, l, n, l2])?;
    let conjugator = place_on_legs(qg.w(), &shape, &[1, 3])?
        .dot(&place_on_legs(&t.b.u.matrix(), &shape, &[2, 3])?)
        .dot(&place_on_legs(&dagger(&t.vhat2), &shape, &[3, 4])?);
    let target = TensorProduct::new(vec![t.ab.tensor.carrier.clone(), t.ab2.tensor.carrier.clone()]);
    let carrier = &t.nested.tensor.carrier;
    let mut coeffs = Array2::zeros((target.dim(), carrier.dim()));
    let mut range: f64 = 0.0;
    let mut psi = PsiMap {
        map: LinearMap::identity(1),
        conjugator,
        dims: (n, l, l2),
        range: 0.0,
        on_a: 0.0,
        on_b: 0.0,
        on_b2: 0.0,
        homomorphism: 0.0,
        injective: false,
    };
    for (i, x) in carrier.basis().iter().enumerate() {
        let y = psi.apply_operator(x)?;
        let (c, r) = target.decompose(&y);
        range = range.max(r);
        coeffs.column_mut(i).assign(&c);
    }
    let map = LinearMap::new(coeffs, target.dims());
    let ab_l = t.ab.tensor.left_embedding();
    let ab_r = t.ab.tensor.right_embedding();
    let ab2_l = t.ab2.tensor.left_embedding();
    let ab2_r = t.ab2.tensor.right_embedding();
    let on_a = max_abs_diff(
        &map.compose(&t.a_embedding()).coeffs,
        &ab_l.tensor(&ab2_l).compose(qg.comult()).coeffs,
    );
    let on_b = max_abs_diff(
        &map.compose(&t.b_embedding()).coeffs,
        &ab_r.tensor(&ab2_l).compose(t.b.yd.gamma.map()).coeffs,
    );
    let unit = t.ab.tensor.carrier.unit().clone();
    let unit = LinearMap::new(unit.into_shape_with_order((t.ab.tensor.dim(), 1)).expect("column"), vec![t.ab.tensor.dim()]);
    let on_b2 = max_abs_diff(&map.compose(&t.b2_embedding()).coeffs, &unit.tensor(&ab2_r).coeffs);
    let homomorphism = coaction_like_hom_residual(carrier, &target, &map);
    let injective = map.rank(tol)? == carrier.dim();
    psi.map = map;
    psi.range = range;
    psi.on_a = on_a;
    psi.on_b = on_b;
    psi.on_b2 = on_b2;
    psi.homomorphism = homomorphism;
    psi.injective = injective;
    let limit = tol.for_dim(n * l * n * l2);
    ensure("Ψ lands in (A⊠B)⊗(A⊠B')", range, limit)?;
    ensure("Ψ defining identities", psi.worst_identity(), limit)?;
    Ok(psi)
}

/// `C = A ⊠ B` with `Δ_C = Ψ ∘ (id_A ⊠ Δ_B)`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub braided: BraidedBialgebra,
    pub braided_report: BraidedReport,
    pub triple: TripleProduct,
    pub lift: BoxtimesMorphism,
    pub psi: PsiMap,
    pub bialgebra: Arc<Bialgebra>,
    pub report: SemidirectReport,
}

#[derive(Clone, Debug)]
pub struct SemidirectReport {
    pub dim: usize,
    pub coassociativity: f64,
    /// `(id_C⊗Ψ)∘Ψ' = (Ψ⊗id_C)∘Ψ''` on products of three copies of `B`
    pub coassociativity_via_psi: f64,
    /// the two realisations of `A ⊠ B ⊠ B ⊠ B` give the same operators
    pub realization_agreement: f64,
    pub homomorphism: f64,
    pub podles_left: DensityReport,
    pub podles_right: DensityReport,
    pub injective: bool,
    pub counit: Option<f64>,
    pub unital: bool,
    /// `id_A ⊠ Δ_B`: intertwining and solve residuals
    pub lift: f64,
    pub psi_identities: f64,
}

impl SemidirectReport {
    pub fn bisimplifiable(&self) -> bool {
        self.podles_left.holds() && self.podles_right.holds()
    }
}

impl Semidirect {
    pub fn carrier(&self) -> &Arc<StarAlgebra> {
        &self.bialgebra.algebra
    }

    pub fn product(&self) -> &YdTwisted {
        &self.triple.ab
    }

    /// `A` and `B` unital, `B` braided compact, `C` bisimplifiable.
    pub fn is_compact_quantum_group(&self, limit: f64) -> bool {
        self.report.unital
            && self.braided_report.is_compact(limit)
            && self.report.bisimplifiable()
            && self.report.coassociativity <= limit
    }

    /// Bisimplifiability of `C` agrees with that of `B`.
    pub fn podles_equivalence(&self) -> bool {
        self.report.bisimplifiable() == self.braided_report.bisimplifiable()
    }

    pub fn injectivity_equivalence(&self) -> bool {
        self.report.injective == self.braided_report.injective
    }
}

pub fn semidirect(a: &YdCovariantRep, b: &BraidedBialgebra, tol: &Tolerance) -> Result<Semidirect> {
    let braided_report = b.check(tol)?;
    let ab = boxtimes_yd(a, &b.rep, tol)?;
    let triple = triple_from_parts(a, &b.rep, &b.rep, ab.clone(), ab, b.square.clone(), tol)?;
    let psi = psi_map(&triple, tol)?;
    let c = triple.ab.tensor.carrier.clone();
    let dc = c.dim();
    let id_a = LinearMap::identity(a.yd.algebra().dim());
    let lift = solve_boxtimes_morphism(&id_a, &b.comult, &triple.ab.tensor, &triple.nested.tensor, tol)?;
    let comult = psi.map.compose(&lift.map);
    let comult = LinearMap::new(comult.coeffs, vec![dc, dc]);
    let (counit, counit_residual) = solve_counit(&comult, dc, tol)?;
    let counit_ok = counit_residual <= tol.for_dim(c.ambient_dim());
    let bialgebra = Arc::new(Bialgebra {
        name: format!("{} semidirect", b.name),
        algebra: c.clone(),
        comult,
        counit: counit_ok.then_some(counit),
    });
    let coassociativity = bialgebra.coassociativity_residual();
    let limit = tol.for_dim(c.ambient_dim() * c.ambient_dim());
    ensure("Δ_C coassociativity", coassociativity, limit)?;
    let (coassociativity_via_psi, realization_agreement) = psi_route(a, b, &psi, tol)?;
    let lift_residual = lift
        .left_intertwining
        .max(lift.right_intertwining)
        .max(lift.solve_residual)
        .max(lift.homomorphism);
    let identity_op = identity(c.ambient_dim());
    let unital = c.decompose(&identity_op).1 <= tol.for_dim(c.ambient_dim());
    let report = SemidirectReport {
        dim: dc,
        coassociativity,
        coassociativity_via_psi,
        realization_agreement,
        homomorphism: bialgebra.star_hom_residual(),
        podles_left: bialgebra.podles(false, tol)?,
        podles_right: bialgebra.podles(true, tol)?,
        injective: bialgebra.comult.rank(tol)? == dc,
        counit: counit_ok.then_some(counit_residual),
        unital,
        lift: lift_residual,
        psi_identities: psi.worst_identity(),
    };
    Ok(Semidirect {
        braided: b.clone(),
        braided_report,
        triple,
        lift,
        psi,
        bialgebra,
        report,
    })
}

/// Compares `(id_C⊗Ψ)∘Ψ'` with `(Ψ⊗id_C)∘Ψ''` on `ι₂(b)ι₃(b')ι₄(b'')`,
/// where `Ψ'` is built for `(B, B⊠B)` and `Ψ''` for `(B⊠B, B)`.
fn psi_route(a: &YdCovariantRep, b: &BraidedBialgebra, psi: &PsiMap, tol: &Tolerance) -> Result<(f64, f64)> {
    let sq = &b.square;
    let t1 = triple_product(a, &b.rep, &sq.rep, tol)?;
    let t2 = triple_product(a, &sq.rep, &b.rep, tol)?;
    let p1 = psi_map(&t1, tol)?;
    let p2 = psi_map(&t2, tol)?;
    let (n, l, _) = psi.dims;
    let hl = n * l;
    let d = b.dim();
    let products = sq.tensor.product_matrix();
    let s1 = LegShape::new(&[hl, n, l, n, l])?;
    let s2 = LegShape::new(&[n, l, n, l, hl])?;
    let mut worst: f64 = 0.0;
    let mut agreement: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            // ι₁(b_i)ι₂(b_j) and ι₁(b_j)ι₂(b_k) in B ⊠ B
            let ij = products.column(i * d + j).to_owned();
            for k in 0..d {
                let jk = products.column(j * d + k).to_owned();
                let x1 = t1.iota_b.images[i].dot(&t1.iota_b2.apply(&jk));
                let x2 = t2.iota_b.apply(&ij).dot(&t2.iota_b2.images[k]);
                agreement = agreement.max(max_abs_diff(&x1, &x2));
                let y1 = p1.apply_operator(&x1)?;
                let lhs = conjugate_on_legs(&y1, &psi.conjugator, &s1, &[1, 2, 3, 5], &[2, 3, 4, 5])?;
                let y2 = p2.apply_operator(&x2)?;
                let rhs = conjugate_on_legs(&y2, &psi.conjugator, &s2, &[1, 2, 4, 5], &[1, 2, 3, 4])?;
                worst = worst.max(max_abs_diff(&lhs, &rhs));
            }
        }
    }
    Ok((worst, agreement))
}

/// The ordered products `ι_A(a_i)ι_B(b_j)` of a semidirect product, as a
/// convenience for comparing with group data.
pub fn product_operator(s: &Semidirect, i: usize, j: usize) -> ComplexMatrix {
    let t = &s.product().tensor;
    t.iota_c.images[i].dot(&t.iota_d.images[j])
}

/// Projector distance of the span of some operators from a carrier.
pub fn span_distance(ops: &[ComplexMatrix], carrier: &StarAlgebra, tol: &Tolerance) -> Result<f64> {
    let span = OperatorSubspace::span_in(carrier.ambient_dim(), ops, tol)?;
    Ok(subspace_equal(&span, carrier.space(), tol)?.1)
}


/// For a commutative bialgebra with minimal projections `points`, the
/// multiplication read off from `Δ(p_k) = Σ_{ij = k} p_i ⊗ p_j`:
/// `table[i][j] = k`. Errors unless every coefficient is 0 or 1 and each
/// pair has exactly one product.
pub fn point_multiplication(bialg: &Bialgebra, points: &[ComplexMatrix], tol: &Tolerance) -> Result<Vec<Vec<usize>>> {
    let alg = &bialg.algebra;
    let space = alg.space();
    let m = points.len();
    let limit = tol.for_dim(alg.ambient_dim() * alg.ambient_dim());
    let mut table = vec![vec![usize::MAX; m]; m];
    for (k, pk) in points.iter().enumerate() {
        let (c, r) = alg.decompose(pk);
        ensure("point lies in the algebra", r, limit)?;
        let image = product_element(&bialg.comult.apply(&c), &[space, space]);
        for (i, pi) in points.iter().enumerate() {
            for (j, pj) in points.iter().enumerate() {
                let pij = kron(pi, pj);
                let coeff = trace(&pij.dot(&image)) / trace(&pij);
                if (coeff - C64::new(1.0, 0.0)).norm() <= limit {
                    if table[i][j] != usize::MAX {
                        return Err(Error::Invalid(format!("points {i}, {j} have two products")));
                    }
                    table[i][j] = k;
                } else if coeff.norm() > limit {
                    return Err(Error::check("comultiplication coefficient in {0, 1}", coeff.norm(), limit));
                }
            }
        }
    }
    if table.iter().flatten().any(|&k| k == usize::MAX) {
        return Err(Error::Invalid("some pair of points has no product".into()));
    }
    Ok(table)
}

fn trace(m: &ComplexMatrix) -> C64 {
    m.diag().sum()
}
