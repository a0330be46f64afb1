//! Finite-dimensional *-algebras in structure-constant form, linear maps
//! between coefficient spaces, and tensor products handled through
//! coefficients only.

use std::sync::Arc;

use ndarray::{Array1, Array2, Array3, ArrayD, Axis, IxDyn};
use ndarray_linalg::{EighInto, UPLO};

use crate::error::{Error, Result};
use crate::tensor::{
    apply_on_axis, dagger, identity, kron, max_abs, max_abs_diff, numerical_rank, product_coefficients,
    product_element, singular_values, thin_svd, ComplexMatrix, OperatorSubspace, Tolerance, C64, ONE, ZERO,
};

/// A subspace of `B(H)` closed under products and adjoints, together with
/// its structure constants in the orthonormal basis of the subspace.
#[derive(Clone, Debug)]
pub struct StarAlgebra {
    space: OperatorSubspace,
    basis: Vec<ComplexMatrix>,
    /// `mult[[k, i, j]]` is the coefficient of `x_k` in `x_i x_j`.
    mult: Array3<C64>,
    /// column `i` holds the coefficients of `x_i*`.
    adjoint: Array2<C64>,
    unit: Array1<C64>,
    closure_residual: f64,
}

impl StarAlgebra {
    /// Wraps a subspace that must already be a unital *-algebra.
    pub fn from_subspace(space: OperatorSubspace, tol: &Tolerance) -> Result<Self> {
        let d = space.dim();
        let n = space.ambient_dim();
        if d == 0 {
            return Err(Error::NotAnAlgebra("zero subspace".into()));
        }
        let basis = space.basis();
        let frame_h = dagger(space.frame());
        let mut mult = Array3::zeros((d, d, d));
        let mut worst: f64 = 0.0;
        for i in 0..d {
            let mut prods = Array2::zeros((n * n, d));
            for j in 0..d {
                let p = basis[i].dot(&basis[j]);
                prods
                    .column_mut(j)
                    .assign(&Array1::from_iter(p.iter().cloned()));
            }
            let coeffs = frame_h.dot(&prods);
            let back = space.frame().dot(&coeffs);
            worst = worst.max(max_abs_diff(&back, &prods));
            for j in 0..d {
                for k in 0..d {
                    mult[[k, i, j]] = coeffs[[k, j]];
                }
            }
        }
        let mut adjoint = Array2::zeros((d, d));
        for i in 0..d {
            let (c, r) = space.decompose(&dagger(&basis[i]));
            worst = worst.max(r);
            adjoint.column_mut(i).assign(&c);
        }
        let limit = tol.for_dim(n);
        if worst > limit {
            return Err(Error::NotAnAlgebra(format!(
                "not closed under products and adjoints (residual {worst:.3e})"
            )));
        }
        let (unit, r) = space.decompose(&identity(n));
        let mut alg = StarAlgebra {
            space,
            basis,
            mult,
            adjoint,
            unit,
            closure_residual: worst,
        };
        if r > limit {
            alg.unit = alg.solve_unit(tol)?;
        }
        Ok(alg)
    }

    /// The *-algebra generated by `generators`, by repeated products and
    /// adjoints until the dimension stabilises.
    pub fn generated_by(ambient: usize, generators: &[ComplexMatrix], tol: &Tolerance) -> Result<Self> {
        let mut gens: Vec<ComplexMatrix> = generators.to_vec();
        gens.extend(generators.iter().map(|g| dagger(g)));
        let mut space = OperatorSubspace::span_in(ambient, &gens, tol)?;
        let cap = ambient * ambient + 1;
        for _ in 0..cap {
            let b = space.basis();
            let mut next = b.clone();
            for x in &b {
                next.push(dagger(x));
                for y in &b {
                    next.push(x.dot(y));
                }
            }
            let grown = OperatorSubspace::span_in(ambient, &next, tol)?;
            if grown.dim() == space.dim() {
                return StarAlgebra::from_subspace(grown, tol);
            }
            space = grown;
        }
        Err(Error::NotAnAlgebra("closure did not stabilise".into()))
    }

    fn solve_unit(&self, tol: &Tolerance) -> Result<Array1<C64>> {
        // u with u x_j = x_j and x_j u = x_j for all j
        let d = self.dim();
        let mut a = Array2::zeros((2 * d * d, d));
        let mut b = Array2::zeros((2 * d * d, 1));
        for j in 0..d {
            for k in 0..d {
                for i in 0..d {
                    a[[j * d + k, i]] = self.mult[[k, i, j]];
                    a[[d * d + j * d + k, i]] = self.mult[[k, j, i]];
                }
                if j == k {
                    b[[j * d + k, 0]] = ONE;
                    b[[d * d + j * d + k, 0]] = ONE;
                }
            }
        }
        let (x, r) = crate::tensor::lstsq(&a, &b, tol)?;
        if r > tol.for_dim(d) {
            return Err(Error::NotAnAlgebra(format!("no unit (residual {r:.3e})")));
        }
        Ok(x.column(0).to_owned())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient_dim()
    }

    pub fn space(&self) -> &OperatorSubspace {
        &self.space
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    pub fn structure_constants(&self) -> &Array3<C64> {
        &self.mult
    }

    pub fn adjoint_matrix(&self) -> &Array2<C64> {
        &self.adjoint
    }

    pub fn unit(&self) -> &Array1<C64> {
        &self.unit
    }

    pub fn element(&self, coeffs: &Array1<C64>) -> ComplexMatrix {
        self.space.element(coeffs)
    }

    pub fn coefficients(&self, m: &ComplexMatrix) -> Array1<C64> {
        self.space.coefficients(m)
    }

    pub fn decompose(&self, m: &ComplexMatrix) -> (Array1<C64>, f64) {
        self.space.decompose(m)
    }

    pub fn mul(&self, x: &Array1<C64>, y: &Array1<C64>) -> Array1<C64> {
        let d = self.dim();
        let mut out = Array1::zeros(d);
        for i in 0..d {
            if x[i] == ZERO {
                continue;
            }
            for j in 0..d {
                let c = x[i] * y[j];
                if c == ZERO {
                    continue;
                }
                for k in 0..d {
                    out[k] += c * self.mult[[k, i, j]];
                }
            }
        }
        out
    }

    pub fn star(&self, x: &Array1<C64>) -> Array1<C64> {
        self.adjoint.dot(&x.mapv(|z| z.conj()))
    }

    /// Matrix of `y ↦ x_i y` on coefficients.
    pub fn left_regular(&self, i: usize) -> Array2<C64> {
        self.mult.index_axis(Axis(1), i).to_owned()
    }

    /// Matrix of `y ↦ y x_j` on coefficients.
    pub fn right_regular(&self, j: usize) -> Array2<C64> {
        self.mult.index_axis(Axis(2), j).to_owned()
    }

    pub fn left_multiplication(&self, x: &Array1<C64>) -> Array2<C64> {
        let d = self.dim();
        let mut out = Array2::zeros((d, d));
        for i in 0..d {
            if x[i] != ZERO {
                out.scaled_add(x[i], &self.mult.index_axis(Axis(1), i));
            }
        }
        out
    }

    pub fn is_commutative(&self, tol: &Tolerance) -> bool {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    worst = worst.max((self.mult[[k, i, j]] - self.mult[[k, j, i]]).norm());
                }
            }
        }
        worst <= tol.for_dim(d)
    }

    /// Coefficient vectors spanning the center, from the null space of the
    /// commutator equations.
    pub fn center_basis(&self, tol: &Tolerance) -> Result<Vec<Array1<C64>>> {
        let d = self.dim();
        let mut eqs = Array2::zeros((d * d, d));
        for j in 0..d {
            for k in 0..d {
                for i in 0..d {
                    eqs[[j * d + k, i]] = self.mult[[k, i, j]] - self.mult[[k, j, i]];
                }
            }
        }
        let s = singular_values(&eqs)?;
        let top = s.iter().cloned().fold(0.0, f64::max);
        let r = if top <= 1e-13 {
            0
        } else {
            s.iter().filter(|&&x| x > tol.rank * top.max(1.0)).count()
        };
        let (_, _, vt) = full_svd_vt(&eqs)?;
        Ok((r..d).map(|row| vt.row(row).mapv(|z| z.conj())).collect())
    }

    pub fn center_dim(&self, tol: &Tolerance) -> Result<usize> {
        Ok(self.center_basis(tol)?.len())
    }

    /// Sizes `n_i` of the matrix blocks in `⊕ M_{n_i}`, sorted ascending.
    pub fn block_sizes(&self, tol: &Tolerance) -> Result<Vec<usize>> {
        let center = self.center_basis(tol)?;
        let mut c = Array1::zeros(self.dim());
        for (k, z) in center.iter().enumerate() {
            let zs = self.star(z);
            let t = 1.0 / (k as f64 + std::f64::consts::SQRT_2);
            let u = 1.0 / (k as f64 + std::f64::consts::E);
            c = c + (z + &zs).mapv(|x| x * t) + (z - &zs).mapv(|x| x * C64::new(0.0, u));
        }
        let l = self.left_multiplication(&c);
        let h = (&l + &dagger(&l)).mapv(|z| z * 0.5);
        let (ev, _) = h
            .eigh_into(UPLO::Lower)
            .map_err(|e| Error::Backend(e.to_string()))?;
        let mut ev: Vec<f64> = ev.to_vec();
        ev.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let scale = ev.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let mut mults = Vec::new();
        let mut count = 1;
        for w in ev.windows(2) {
            if (w[1] - w[0]).abs() > 1e-6 * scale {
                mults.push(count);
                count = 1;
            } else {
                count += 1;
            }
        }
        mults.push(count);
        let mut sizes = Vec::new();
        for m in mults {
            let n = (m as f64).sqrt().round() as usize;
            if n * n != m {
                return Err(Error::NotAnAlgebra(format!(
                    "block of dimension {m} is not a full matrix algebra"
                )));
            }
            sizes.push(n);
        }
        sizes.sort();
        Ok(sizes)
    }
}

fn full_svd_vt(a: &Array2<C64>) -> Result<(Array2<C64>, Array1<f64>, Array2<C64>)> {
    use ndarray_linalg::{JobSvd, SVDDC};
    let a = a.as_standard_layout().to_owned();
    let (u, s, vt) = a
        .svddc(JobSvd::All)
        .map_err(|e| Error::Backend(e.to_string()))?;
    Ok((u.expect("U"), s, vt.expect("VT")))
}

/// A *-representation given by the images of the basis elements.
#[derive(Clone, Debug)]
pub struct StarRepresentation {
    pub algebra: Arc<StarAlgebra>,
    pub images: Vec<ComplexMatrix>,
}

impl StarRepresentation {
    pub fn new(algebra: Arc<StarAlgebra>, images: Vec<ComplexMatrix>) -> Self {
        assert_eq!(algebra.dim(), images.len(), "one image per basis element");
        StarRepresentation { algebra, images }
    }

    /// The defining inclusion of a concrete algebra.
    pub fn inclusion(algebra: Arc<StarAlgebra>) -> Self {
        let images = algebra.basis().to_vec();
        StarRepresentation { algebra, images }
    }

    pub fn hilbert_dim(&self) -> usize {
        self.images.first().map_or(0, |m| m.nrows())
    }

    pub fn apply(&self, x: &Array1<C64>) -> ComplexMatrix {
        let n = self.hilbert_dim();
        let mut out = Array2::zeros((n, n));
        for (c, m) in x.iter().zip(&self.images) {
            if *c != ZERO {
                out.scaled_add(*c, m);
            }
        }
        out
    }

    /// max over basis pairs of ‖π(x_i)π(x_j) − π(x_i x_j)‖ and ‖π(x_i*) − π(x_i)*‖.
    pub fn hom_residual(&self) -> f64 {
        let a = &self.algebra;
        let d = a.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let prod = self.images[i].dot(&self.images[j]);
                let coeffs = a.structure_constants().slice(ndarray::s![.., i, j]).to_owned();
                worst = worst.max(max_abs_diff(&prod, &self.apply(&coeffs)));
            }
            let s = self.apply(&a.adjoint_matrix().column(i).to_owned());
            worst = worst.max(max_abs_diff(&s, &dagger(&self.images[i])));
        }
        worst
    }

    pub fn rank(&self, tol: &Tolerance) -> Result<usize> {
        let n = self.hilbert_dim();
        let mut stacked = Array2::zeros((n * n, self.images.len()));
        for (j, m) in self.images.iter().enumerate() {
            stacked
                .column_mut(j)
                .assign(&Array1::from_iter(m.iter().cloned()));
        }
        Ok(numerical_rank(&singular_values(&stacked)?, tol.rank))
    }

    pub fn is_injective(&self, tol: &Tolerance) -> Result<bool> {
        Ok(self.rank(tol)? == self.algebra.dim())
    }
}

/// A linear map between coefficient spaces; `coeffs` has one column per
/// domain basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub coeffs: Array2<C64>,
    pub codomain_dims: Vec<usize>,
}

impl LinearMap {
    pub fn new(coeffs: Array2<C64>, codomain_dims: Vec<usize>) -> Self {
        assert_eq!(
            coeffs.nrows(),
            codomain_dims.iter().product::<usize>(),
            "codomain dims do not match coefficient rows"
        );
        LinearMap {
            coeffs,
            codomain_dims,
        }
    }

    pub fn identity(d: usize) -> Self {
        LinearMap::new(Array2::eye(d), vec![d])
    }

    pub fn domain_dim(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn apply(&self, x: &Array1<C64>) -> Array1<C64> {
        self.coeffs.dot(x)
    }

    pub fn column(&self, i: usize) -> Array1<C64> {
        self.coeffs.column(i).to_owned()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap::new(self.coeffs.dot(&inner.coeffs), self.codomain_dims.clone())
    }

    /// `self ⊗ other` on product coefficients.
    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        let mut dims = self.codomain_dims.clone();
        dims.extend_from_slice(&other.codomain_dims);
        LinearMap::new(kron(&self.coeffs, &other.coeffs), dims)
    }

    pub fn rank(&self, tol: &Tolerance) -> Result<usize> {
        Ok(numerical_rank(&singular_values(&self.coeffs)?, tol.rank))
    }
}

/// Applies `m` to tensor factor `f` of a coefficient vector laid out with
/// factor dimensions `dims`.
pub fn apply_on_factor(x: &Array1<C64>, dims: &[usize], f: usize, m: &Array2<C64>) -> Array1<C64> {
    let t = x
        .clone()
        .into_shape_with_order(IxDyn(dims))
        .expect("coefficient length matches dims");
    let out = apply_on_axis(&t, f, m);
    let len = out.len();
    out.into_shape_with_order(len).expect("contiguous")
}

/// Reorders tensor factors: factor `i` of the result is factor `perm[i]` of `x`.
pub fn permute_factors(x: &Array1<C64>, dims: &[usize], perm: &[usize]) -> Array1<C64> {
    let t: ArrayD<C64> = x
        .clone()
        .into_shape_with_order(IxDyn(dims))
        .expect("coefficient length matches dims");
    let t = t.permuted_axes(IxDyn(perm)).as_standard_layout().to_owned();
    let len = t.len();
    t.into_shape_with_order(len).expect("contiguous")
}

/// Permutes the rows of a coefficient matrix whose rows carry factors `dims`.
pub fn permute_rows(m: &Array2<C64>, dims: &[usize], perm: &[usize]) -> Array2<C64> {
    let mut out = Array2::zeros((m.nrows(), m.ncols()));
    for (j, col) in m.axis_iter(Axis(1)).enumerate() {
        out.column_mut(j)
            .assign(&permute_factors(&col.to_owned(), dims, perm));
    }
    out
}

pub fn kron_vec(a: &Array1<C64>, b: &Array1<C64>) -> Array1<C64> {
    let mut out = Array1::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

/// Product of several algebras, handled through product coefficients.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    factors: Vec<Arc<StarAlgebra>>,
    left: Vec<Vec<Array2<C64>>>,
}

impl TensorProduct {
    pub fn new(factors: Vec<Arc<StarAlgebra>>) -> Self {
        let left = factors
            .iter()
            .map(|a| (0..a.dim()).map(|i| a.left_regular(i)).collect())
            .collect();
        TensorProduct { factors, left }
    }

    pub fn factors(&self) -> &[Arc<StarAlgebra>] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|a| a.dim()).collect()
    }

    pub fn dim(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn unit(&self) -> Array1<C64> {
        self.factors
            .iter()
            .fold(Array1::from_elem(1, ONE), |acc, a| kron_vec(&acc, a.unit()))
    }

    pub fn mul(&self, x: &Array1<C64>, y: &Array1<C64>) -> Array1<C64> {
        let dims = self.dims();
        let mut out = Array1::zeros(y.len());
        for (flat, &c) in x.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            let mut idx = vec![0usize; dims.len()];
            let mut rest = flat;
            for f in (0..dims.len()).rev() {
                idx[f] = rest % dims[f];
                rest /= dims[f];
            }
            let mut v = y.clone();
            for f in 0..dims.len() {
                v = apply_on_factor(&v, &dims, f, &self.left[f][idx[f]]);
            }
            out.scaled_add(c, &v);
        }
        out
    }

    pub fn star(&self, x: &Array1<C64>) -> Array1<C64> {
        let dims = self.dims();
        let mut v = x.mapv(|z| z.conj());
        for (f, a) in self.factors.iter().enumerate() {
            v = apply_on_factor(&v, &dims, f, a.adjoint_matrix());
        }
        v
    }

    /// Multiplies factor `f` of `x` by basis element `j` of that factor, on
    /// the right (`right = true`) or on the left.
    pub fn mul_basis_on_factor(&self, x: &Array1<C64>, f: usize, j: usize, right: bool) -> Array1<C64> {
        let a = &self.factors[f];
        let m = if right { a.right_regular(j) } else { a.left_regular(j) };
        apply_on_factor(x, &self.dims(), f, &m)
    }

    pub fn realize(&self, x: &Array1<C64>) -> ComplexMatrix {
        let spaces: Vec<&OperatorSubspace> = self.factors.iter().map(|a| a.space()).collect();
        product_element(x, &spaces)
    }

    pub fn decompose(&self, m: &ComplexMatrix) -> (Array1<C64>, f64) {
        let spaces: Vec<&OperatorSubspace> = self.factors.iter().map(|a| a.space()).collect();
        product_coefficients(m, &spaces)
    }
}

/// Result of a density (Podleś-type) test: the span of some products
/// compared with a whole coefficient space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityReport {
    pub rank: usize,
    pub expected: usize,
    pub min_ratio: f64,
}

impl DensityReport {
    pub fn from_columns(columns: &Array2<C64>, expected: usize, tol: &Tolerance) -> Result<Self> {
        let s = singular_values(columns)?;
        let rank = numerical_rank(&s, tol.rank);
        let top = s.iter().cloned().fold(0.0, f64::max);
        let low = if s.len() >= expected && expected > 0 {
            s[expected - 1]
        } else {
            0.0
        };
        Ok(DensityReport {
            rank,
            expected,
            min_ratio: if top > 0.0 { low / top } else { 0.0 },
        })
    }

    pub fn holds(&self) -> bool {
        self.rank == self.expected
    }

    /// Projector distance between the span and the whole space: 0 or 1.
    pub fn residual(&self) -> f64 {
        if self.holds() {
            0.0
        } else {
            1.0
        }
    }
}

/// A coalgebra structure on a concrete algebra: `comult: X → X ⊗ X` with
/// an optional counit.
#[derive(Clone, Debug)]
pub struct Bialgebra {
    pub name: String,
    pub algebra: Arc<StarAlgebra>,
    pub comult: LinearMap,
    pub counit: Option<Array1<C64>>,
}

impl Bialgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn square(&self) -> TensorProduct {
        TensorProduct::new(vec![self.algebra.clone(), self.algebra.clone()])
    }

    pub fn coassociativity_residual(&self) -> f64 {
        let id = LinearMap::identity(self.dim());
        let lhs = self.comult.tensor(&id).compose(&self.comult);
        let rhs = id.tensor(&self.comult).compose(&self.comult);
        max_abs_diff(&lhs.coeffs, &rhs.coeffs)
    }

    /// Δ(X)·(1⊗X) (`right = true`) or (X⊗1)·Δ(X) against X⊗X.
    pub fn podles(&self, right: bool, tol: &Tolerance) -> Result<DensityReport> {
        let d = self.dim();
        let sq = self.square();
        let factor = if right { 1 } else { 0 };
        let mut cols = Array2::zeros((d * d, d * d));
        for i in 0..d {
            let di = self.comult.column(i);
            for j in 0..d {
                cols.column_mut(i * d + j)
                    .assign(&sq.mul_basis_on_factor(&di, factor, j, right));
            }
        }
        DensityReport::from_columns(&cols, d * d, tol)
    }

    /// Multiplicativity and *-compatibility of Δ on all basis pairs.
    pub fn star_hom_residual(&self) -> f64 {
        coaction_like_hom_residual(&self.algebra, &self.square(), &self.comult)
    }

    /// Residuals of (e⊗id)Δ = id and (id⊗e)Δ = id.
    pub fn counit_residual(&self) -> Option<f64> {
        let e = self.counit.as_ref()?;
        let d = self.dim();
        let ev = LinearMap::new(e.clone().into_shape_with_order((1, d)).expect("row"), vec![1]);
        let id = LinearMap::identity(d);
        let left = ev.tensor(&id).compose(&self.comult);
        let right = id.tensor(&ev).compose(&self.comult);
        Some(
            max_abs_diff(&left.coeffs, &id.coeffs).max(max_abs_diff(&right.coeffs, &id.coeffs)),
        )
    }
}

/// max over basis pairs of ‖f(x_i x_j) − f(x_i) f(x_j)‖ and ‖f(x_i*) − f(x_i)*‖
/// for a linear map `f` from `domain` into the coefficient algebra `target`.
pub fn coaction_like_hom_residual(domain: &StarAlgebra, target: &TensorProduct, f: &LinearMap) -> f64 {
    let d = domain.dim();
    let images: Vec<Array1<C64>> = (0..d).map(|i| f.column(i)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let lhs = f.apply(&domain.structure_constants().slice(ndarray::s![.., i, j]).to_owned());
            let rhs = target.mul(&images[i], &images[j]);
            worst = worst.max(max_abs_diff(&lhs, &rhs));
        }
        let lhs = f.apply(&domain.adjoint_matrix().column(i).to_owned());
        worst = worst.max(max_abs_diff(&lhs, &target.star(&images[i])));
    }
    worst
}

/// Orthonormal basis (as columns) of the null space of `a`.
pub fn null_space(a: &Array2<C64>, tol: &Tolerance) -> Result<Array2<C64>> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return Ok(Array2::eye(n));
    }
    let (_, s, vt) = full_svd_vt(a)?;
    let r = numerical_rank(&s, tol.rank);
    let mut out = Array2::zeros((n, n - r));
    for (c, row) in (r..n).enumerate() {
        out.column_mut(c).assign(&vt.row(row).mapv(|z| z.conj()));
    }
    Ok(out)
}

/// max-abs of a coefficient vector.
pub fn coeff_norm(x: &Array1<C64>) -> f64 {
    max_abs(x)
}

#[allow(dead_code)]
pub(crate) fn orthonormal_columns(a: &Array2<C64>, tol: &Tolerance) -> Result<Array2<C64>> {
    let (u, s, _) = thin_svd(a)?;
    let r = numerical_rank(&s, tol.rank);
    Ok(u.slice(ndarray::s![.., ..r]).to_owned())
}
