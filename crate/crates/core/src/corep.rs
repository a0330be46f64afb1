//! Corepresentations, their tensor products, the associated
//! representations of the dual side, and braiding unitaries.

use std::sync::Arc;

use ndarray::{Array1, Array2};

use crate::algebra::{Bialgebra, StarRepresentation};
use crate::bicharacter::Bicharacter;
use crate::error::{Error, Result};
use crate::qgroup::QuantumGroup;
use crate::tensor::{
    dagger, expand_product, flip, identity, kron, lstsq, max_abs, max_abs_diff, product_coefficients,
    slice_second_leg, unitarity_residual, ComplexMatrix, Tolerance, C64, ZERO,
};

/// A unitary `U = Σ_i M_i ⊗ x_i ∈ B(H) ⊗ X` with `(id ⊗ Δ)U = U₁₂U₁₃`,
/// stored through its matrix coefficients `M_i` against the basis `x_i`.
#[derive(Clone, Debug)]
pub struct Corepresentation {
    bialgebra: Arc<Bialgebra>,
    hilbert_dim: usize,
    coeffs: Vec<ComplexMatrix>,
}

impl Corepresentation {
    pub fn from_coefficients(bialgebra: Arc<Bialgebra>, coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        if coeffs.len() != bialgebra.dim() {
            return Err(Error::Dimension(format!(
                "{} coefficients for an algebra of dimension {}",
                coeffs.len(),
                bialgebra.dim()
            )));
        }
        let hilbert_dim = coeffs[0].nrows();
        Ok(Corepresentation {
            bialgebra,
            hilbert_dim,
            coeffs,
        })
    }

    /// Slices an operator on `H ⊗ H₀` against the basis of `X`; fails if
    /// the operator does not lie in `B(H) ⊗ X`.
    pub fn from_matrix(bialgebra: Arc<Bialgebra>, u: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let n = bialgebra.algebra.ambient_dim();
        if u.nrows() % n != 0 || u.nrows() != u.ncols() {
            return Err(Error::Dimension(format!("{}x{} is not on H⊗ℂ^{n}", u.nrows(), u.ncols())));
        }
        let h = u.nrows() / n;
        let coeffs = slice_second_leg(u, h, bialgebra.algebra.space());
        let c = Corepresentation {
            bialgebra,
            hilbert_dim: h,
            coeffs,
        };
        let r = max_abs_diff(&c.matrix(), u);
        if r > tol.for_dim(u.nrows()) {
            return Err(Error::check("membership in B(H)⊗A", r, tol.for_dim(u.nrows())));
        }
        Ok(c)
    }

    /// The trivial corepresentation `1 ⊗ 1` on `ℂ^h`.
    pub fn trivial(bialgebra: Arc<Bialgebra>, h: usize) -> Self {
        let unit = bialgebra.algebra.unit().clone();
        let coeffs = unit.iter().map(|c| identity(h).mapv(|x| x * c)).collect();
        Corepresentation {
            bialgebra,
            hilbert_dim: h,
            coeffs,
        }
    }

    pub fn bialgebra(&self) -> &Arc<Bialgebra> {
        &self.bialgebra
    }

    pub fn hilbert_dim(&self) -> usize {
        self.hilbert_dim
    }

    pub fn coefficients(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let mut out = Array2::zeros((
            self.hilbert_dim * self.bialgebra.algebra.ambient_dim(),
            self.hilbert_dim * self.bialgebra.algebra.ambient_dim(),
        ));
        for (m, x) in self.coeffs.iter().zip(self.bialgebra.algebra.basis()) {
            if max_abs(m) > 0.0 {
                out = out + kron(m, x);
            }
        }
        out
    }

    /// `Σ_i Δ[(k,l), i] M_i = M_k M_l` for all `k, l`.
    pub fn law_residual(&self) -> f64 {
        let d = self.coeffs.len();
        let delta = &self.bialgebra.comult.coeffs;
        let mut worst: f64 = 0.0;
        for k in 0..d {
            for l in 0..d {
                let mut lhs = Array2::zeros((self.hilbert_dim, self.hilbert_dim));
                for i in 0..d {
                    let c = delta[[k * d + l, i]];
                    if c != ZERO {
                        lhs.scaled_add(c, &self.coeffs[i]);
                    }
                }
                let rhs = self.coeffs[k].dot(&self.coeffs[l]);
                worst = worst.max(max_abs_diff(&lhs, &rhs));
            }
        }
        worst
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.matrix())
    }

    /// Corepresentation law and unitarity below tolerance.
    pub fn validate(self, tol: &Tolerance) -> Result<Self> {
        let n = self.hilbert_dim * self.bialgebra.algebra.ambient_dim();
        let r = self.law_residual().max(self.unitarity_residual());
        if r > tol.for_dim(n) {
            return Err(Error::check("corepresentation law", r, tol.for_dim(n)));
        }
        Ok(self)
    }

    /// Applies a linear functional (given by its values on the basis) to
    /// the second leg.
    pub fn slice(&self, functional: &Array1<C64>) -> ComplexMatrix {
        let mut out = Array2::zeros((self.hilbert_dim, self.hilbert_dim));
        for (m, c) in self.coeffs.iter().zip(functional.iter()) {
            out.scaled_add(*c, m);
        }
        out
    }

    /// Conjugation `x ↦ U(x ⊗ 1)U*` expressed through coefficients:
    /// returns `Σ_{k,l} M_k x M_l* ⊗ x_k x_l*` as matrix coefficients over
    /// the basis of `X`.
    pub fn conjugate_coefficients(&self, x: &ComplexMatrix) -> Vec<ComplexMatrix> {
        let alg = &self.bialgebra.algebra;
        let d = alg.dim();
        let mut out = vec![Array2::zeros((self.hilbert_dim, self.hilbert_dim)); d];
        let mult = alg.structure_constants();
        let adj = alg.adjoint_matrix();
        for k in 0..d {
            let left = self.coeffs[k].dot(x);
            for l in 0..d {
                let term = left.dot(&dagger(&self.coeffs[l]));
                if max_abs(&term) == 0.0 {
                    continue;
                }
                // x_k x_l* = Σ_m adj[m, l] x_k x_m
                for m in 0..d {
                    let a = adj[[m, l]];
                    if a == ZERO {
                        continue;
                    }
                    for p in 0..d {
                        let c = a * mult[[p, k, m]];
                        if c != ZERO {
                            out[p].scaled_add(c, &term);
                        }
                    }
                }
            }
        }
        out
    }
}

/// `U = Σ_g p_g ⊗ λ_g` for orthogonal projections indexed by the group
/// elements, on the group-algebra side of `qg`.
pub fn grading_corepresentation(
    qg: &QuantumGroup,
    group: &crate::qgroup::FiniteGroup,
    projections: &[ComplexMatrix],
    tol: &Tolerance,
) -> Result<Corepresentation> {
    if projections.len() != group.order() {
        return Err(Error::Dimension("one projection per group element".into()));
    }
    let h = projections[0].nrows();
    let mut sum = Array2::zeros((h, h));
    let mut worst: f64 = 0.0;
    for (g, p) in projections.iter().enumerate() {
        sum = sum + p;
        worst = worst.max(max_abs_diff(&p.dot(p), p)).max(max_abs_diff(&dagger(p), p));
        for q in projections.iter().skip(g + 1) {
            worst = worst.max(max_abs(&p.dot(q)));
        }
    }
    worst = worst.max(max_abs_diff(&sum, &identity(h)));
    if worst > tol.for_dim(h) {
        return Err(Error::Invalid(format!(
            "projections do not resolve the identity (residual {worst:.3e})"
        )));
    }
    let n = qg.dim_h0();
    let mut u = Array2::zeros((h * n, h * n));
    for (g, p) in projections.iter().enumerate() {
        u = u + kron(p, &group.left_regular(g));
    }
    Corepresentation::from_matrix(qg.bialgebra().clone(), &u, tol)?.validate(tol)
}

/// Projections onto coordinate lines of `ℂ^h`, with line `i` in degree
/// `degrees[i]`.
pub fn coordinate_grading(degrees: &[usize], order: usize) -> Vec<ComplexMatrix> {
    let h = degrees.len();
    (0..order)
        .map(|g| {
            let mut p = Array2::zeros((h, h));
            for (i, &d) in degrees.iter().enumerate() {
                if d == g {
                    p[[i, i]] = C64::new(1.0, 0.0);
                }
            }
            p
        })
        .collect()
}

/// `U¹ ⊤ U² = U¹₁₃U²₂₃` on `(H₁ ⊗ H₂) ⊗ H₀`.
pub fn tensor_corep(u1: &Corepresentation, u2: &Corepresentation) -> Result<Corepresentation> {
    if !Arc::ptr_eq(u1.bialgebra(), u2.bialgebra()) {
        return Err(Error::Invalid("corepresentations of different quantum groups".into()));
    }
    let alg = &u1.bialgebra.algebra;
    let d = alg.dim();
    let mult = alg.structure_constants();
    let (h1, h2) = (u1.hilbert_dim, u2.hilbert_dim);
    let mut coeffs = vec![Array2::zeros((h1 * h2, h1 * h2)); d];
    for i in 0..d {
        for j in 0..d {
            let t = kron(&u1.coeffs[i], &u2.coeffs[j]);
            if max_abs(&t) == 0.0 {
                continue;
            }
            for (k, out) in coeffs.iter_mut().enumerate() {
                let c = mult[[k, i, j]];
                if c != ZERO {
                    out.scaled_add(c, &t);
                }
            }
        }
    }
    Corepresentation::from_coefficients(u1.bialgebra.clone(), coeffs)
}

/// ‖(t ⊗ 1)U¹ − U²(t ⊗ 1)‖ computed coefficientwise.
pub fn check_intertwiner(t: &ComplexMatrix, u1: &Corepresentation, u2: &Corepresentation) -> Result<f64> {
    if t.ncols() != u1.hilbert_dim || t.nrows() != u2.hilbert_dim {
        return Err(Error::Dimension(format!(
            "intertwiner is {}x{}, spaces are {} and {}",
            t.nrows(),
            t.ncols(),
            u1.hilbert_dim,
            u2.hilbert_dim
        )));
    }
    Ok(u1
        .coeffs
        .iter()
        .zip(&u2.coeffs)
        .map(|(a, b)| max_abs_diff(&t.dot(a), &b.dot(t)))
        .fold(0.0, f64::max))
}

/// The representation `ρ` of the dual side with `(ρ ⊗ id)W = U`: writing
/// `W = Σ c_ij x̂_i ⊗ x_j` and `U = Σ M_j ⊗ x_j`, solve `Σ_i c_ij ρ(x̂_i) = M_j`.
pub fn rep_from_corep(qg: &QuantumGroup, u: &Corepresentation, tol: &Tolerance) -> Result<(StarRepresentation, f64)> {
    if !Arc::ptr_eq(qg.bialgebra(), u.bialgebra()) {
        return Err(Error::Invalid("corepresentation of a different quantum group".into()));
    }
    let (dh, da) = (qg.ahat().dim(), qg.a().dim());
    let h = u.hilbert_dim;
    let cmat = Array2::from_shape_fn((dh, da), |(i, j)| qg.w_coefficients()[i * da + j]);
    let mut rhs = Array2::zeros((da, h * h));
    for (j, m) in u.coeffs.iter().enumerate() {
        rhs.row_mut(j).assign(&Array1::from_iter(m.iter().cloned()));
    }
    let (x, r) = lstsq(&cmat.t().to_owned(), &rhs, tol)?;
    let images: Vec<ComplexMatrix> = (0..dh)
        .map(|i| {
            x.row(i)
                .to_owned()
                .into_shape_with_order((h, h))
                .expect("square")
        })
        .collect();
    let rep = StarRepresentation::new(qg.ahat().clone(), images);
    let residual = r.max(rep.hom_residual());
    if residual > tol.for_dim(h * qg.dim_h0()) {
        return Err(Error::check("representation from corepresentation", residual, tol.for_dim(h)));
    }
    Ok((rep, residual))
}

/// `(π₁ ⊗ π₂)(x)` for an element of `X̂ ⊗ Ŷ` given by product coefficients.
pub fn apply_pair(coeffs: &Array1<C64>, p1: &StarRepresentation, p2: &StarRepresentation) -> ComplexMatrix {
    expand_product(coeffs, &[&p1.images, &p2.images])
}

/// A unitary `H₁ ⊗ H₂ → H₂ ⊗ H₁`.
#[derive(Clone, Debug)]
pub struct BraidingUnitary {
    pub dims: (usize, usize),
    pub c: ComplexMatrix,
}

/// `c = (ρ₂ ⊗ ρ₁)(R*) ∘ Σ`.
pub fn braiding_unitary(
    r: &Bicharacter,
    u1: &Corepresentation,
    u2: &Corepresentation,
    tol: &Tolerance,
) -> Result<BraidingUnitary> {
    let qg = r.source();
    let (rho1, _) = rep_from_corep(qg, u1, tol)?;
    let (rho2, _) = rep_from_corep(qg, u2, tol)?;
    let (rstar, _) = product_coefficients(&dagger(r.matrix()), &[qg.ahat().space(), qg.ahat().space()]);
    let twist = apply_pair(&rstar, &rho2, &rho1);
    let (h1, h2) = (u1.hilbert_dim, u2.hilbert_dim);
    Ok(BraidingUnitary {
        dims: (h1, h2),
        c: twist.dot(flip(h1, h2).matrix()),
    })
}

/// ‖c(U¹ ⊤ U²) − (U² ⊤ U¹)c‖, coefficientwise.
pub fn braiding_equivariance(c: &BraidingUnitary, u1: &Corepresentation, u2: &Corepresentation) -> Result<f64> {
    let a = tensor_corep(u1, u2)?;
    let b = tensor_corep(u2, u1)?;
    check_intertwiner(&c.c, &a, &b)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HexagonReport {
    /// `c^{H₁,H₂⊗H₃} = (id ⊗ c^{13})(c^{12} ⊗ id)`
    pub first: f64,
    /// `c^{H₁⊗H₂,H₃} = (c^{13} ⊗ id)(id ⊗ c^{23})`
    pub second: f64,
    /// `(c^{23} ⊗ 1)(1 ⊗ c^{13})(c^{12} ⊗ 1) = (1 ⊗ c^{12})(c^{13} ⊗ 1)(1 ⊗ c^{23})`
    pub coherence: f64,
}

impl HexagonReport {
    pub fn worst(&self) -> f64 {
        self.first.max(self.second).max(self.coherence)
    }
}

pub fn check_hexagons(
    r: &Bicharacter,
    u1: &Corepresentation,
    u2: &Corepresentation,
    u3: &Corepresentation,
    tol: &Tolerance,
) -> Result<HexagonReport> {
    let (h1, h2, h3) = (u1.hilbert_dim, u2.hilbert_dim, u3.hilbert_dim);
    let c12 = braiding_unitary(r, u1, u2, tol)?.c;
    let c13 = braiding_unitary(r, u1, u3, tol)?.c;
    let c23 = braiding_unitary(r, u2, u3, tol)?.c;
    let c1_23 = braiding_unitary(r, u1, &tensor_corep(u2, u3)?, tol)?.c;
    let c12_3 = braiding_unitary(r, &tensor_corep(u1, u2)?, u3, tol)?.c;
    let first = max_abs_diff(
        &c1_23,
        &kron(&identity(h2), &c13).dot(&kron(&c12, &identity(h3))),
    );
    let second = max_abs_diff(
        &c12_3,
        &kron(&c13, &identity(h2)).dot(&kron(&identity(h1), &c23)),
    );
    let lhs = kron(&c23, &identity(h1))
        .dot(&kron(&identity(h2), &c13))
        .dot(&kron(&c12, &identity(h3)));
    let rhs = kron(&identity(h3), &c12)
        .dot(&kron(&c13, &identity(h2)))
        .dot(&kron(&identity(h1), &c23));
    Ok(HexagonReport {
        first,
        second,
        coherence: max_abs_diff(&lhs, &rhs),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryReport {
    /// max over the pool of ‖c^{H₂,H₁}c^{H₁,H₂} − 1‖
    pub operator: f64,
    /// ‖σ(R)R − 1‖
    pub matrix: f64,
    /// max over the pool of ‖c_dual^{H₁,H₂} − (c^{H₂,H₁})*‖
    pub dual_braiding: f64,
    pub symmetric_by_operator: bool,
    pub symmetric_by_matrix: bool,
}

impl SymmetryReport {
    pub fn agree(&self) -> bool {
        self.symmetric_by_operator == self.symmetric_by_matrix
    }
}

pub fn check_symmetry(r: &Bicharacter, pool: &[Corepresentation], tol: &Tolerance) -> Result<SymmetryReport> {
    if pool.is_empty() {
        return Err(Error::Invalid("empty corepresentation pool".into()));
    }
    let n = r.source().dim_h0();
    let dual = r.dual();
    let mut operator: f64 = 0.0;
    let mut dual_braiding: f64 = 0.0;
    let mut size = 1;
    for u1 in pool {
        for u2 in pool {
            let c12 = braiding_unitary(r, u1, u2, tol)?.c;
            let c21 = braiding_unitary(r, u2, u1, tol)?.c;
            let h = u1.hilbert_dim * u2.hilbert_dim;
            size = size.max(h);
            operator = operator.max(max_abs_diff(&c21.dot(&c12), &identity(h)));
            let cd = braiding_unitary(&dual, u1, u2, tol)?.c;
            dual_braiding = dual_braiding.max(max_abs_diff(&cd, &dagger(&c21)));
        }
    }
    let matrix = crate::bicharacter::symmetry_defect(r.matrix(), n);
    Ok(SymmetryReport {
        operator,
        matrix,
        dual_braiding,
        symmetric_by_operator: operator <= tol.for_dim(size),
        symmetric_by_matrix: matrix <= tol.for_dim(n * n),
    })
}

/// `W` viewed as a corepresentation on `H₀`.
pub fn regular_corep(qg: &QuantumGroup, tol: &Tolerance) -> Result<Corepresentation> {
    Corepresentation::from_matrix(qg.bialgebra().clone(), qg.w(), tol)
}

/// `(ρ₁ ⊗ ρ₂)∘σ∘Δ̂` applied to a basis element of the dual side, for
/// comparison with the representation of a tensor product corepresentation.
pub fn tensor_rep_image(
    qg: &QuantumGroup,
    rho1: &StarRepresentation,
    rho2: &StarRepresentation,
    i: usize,
) -> ComplexMatrix {
    let d = qg.ahat().dim();
    let col = qg.dual_comult().column(i);
    let swapped = crate::algebra::permute_factors(&col, &[d, d], &[1, 0]);
    apply_pair(&swapped, rho1, rho2)
}
