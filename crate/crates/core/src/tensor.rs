//! Dense complex matrices, leg placement and operator subspaces.

use ndarray::{s, Array1, Array2, Array3, ArrayD, ArrayRef2, Axis, IxDyn};
use ndarray_linalg::{EigValsh, JobSvd, SVDDC, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = Array2<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Numerical tolerances. Residual checks scale `base` by a dimension,
/// rank decisions are relative to the largest singular value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub base: f64,
    pub rank: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            base: 1e-9,
            rank: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn with_base(base: f64) -> Self {
        Tolerance {
            base,
            ..Tolerance::default()
        }
    }

    pub fn for_dim(&self, dim: usize) -> f64 {
        self.base * dim.max(1) as f64
    }
}

pub fn identity(n: usize) -> ComplexMatrix {
    Array2::eye(n)
}

pub fn dagger(a: &ArrayRef2<C64>) -> ComplexMatrix {
    let mut out = Array2::zeros((a.ncols(), a.nrows()));
    for ((i, j), v) in a.indexed_iter() {
        out[[j, i]] = v.conj();
    }
    out
}

pub fn max_abs<D: ndarray::Dimension>(a: &ndarray::ArrayRef<C64, D>) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

pub fn max_abs_diff<D: ndarray::Dimension>(
    a: &ndarray::ArrayRef<C64, D>,
    b: &ndarray::ArrayRef<C64, D>,
) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in residual");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// Hilbert–Schmidt inner product trace(a* b).
pub fn hs_inner(a: &ArrayRef2<C64>, b: &ArrayRef2<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn kron(a: &ArrayRef2<C64>, b: &ArrayRef2<C64>) -> ComplexMatrix {
    let (n0, m0) = a.dim();
    let (n1, m1) = b.dim();
    let mut out = Array2::zeros((n0 * n1, m0 * m1));
    for i in 0..n0 {
        for j in 0..m0 {
            let x = a[[i, j]];
            if x == ZERO {
                continue;
            }
            out.slice_mut(s![i * n1..(i + 1) * n1, j * m1..(j + 1) * m1])
                .zip_mut_with(b, |o, y| *o = x * y);
        }
    }
    out
}

pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    let mut acc = Array2::from_elem((1, 1), ONE);
    for f in factors {
        acc = kron(&acc, f);
    }
    acc
}

/// `I_left ⊗ op ⊗ I_right`; works for rectangular `op`.
pub fn place_adjacent(op: &ComplexMatrix, left: usize, right: usize) -> ComplexMatrix {
    kron(&kron(&identity(left), op), &identity(right))
}

pub fn unitarity_residual(m: &ArrayRef2<C64>) -> f64 {
    let n = m.nrows();
    max_abs_diff(&m.dot(&dagger(m)), &identity(n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(ComplexMatrix);

impl UnitaryMatrix {
    pub fn new(m: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::Dimension(format!(
                "unitary must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("non-finite matrix entry".into()));
        }
        let r = unitarity_residual(&m);
        if r > tol.for_dim(m.nrows()) {
            return Err(Error::NotUnitary(r));
        }
        Ok(UnitaryMatrix(m))
    }

    /// Wraps a matrix known to be unitary by construction.
    pub fn assume(m: ComplexMatrix) -> Self {
        UnitaryMatrix(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix(dagger(&self.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegShape {
    dims: Vec<usize>,
}

impl LegShape {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dimension(format!("invalid leg dims {dims:?}")));
        }
        Ok(LegShape {
            dims: dims.to_vec(),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }
}

/// Places `op` on the listed legs (1-based, in the listed order) and the
/// identity on the remaining legs, so `legs = [1, 3]` gives `op₁₃` and
/// `legs = [2, 1]` gives `op₂₁`.
pub fn place_on_legs(op: &ComplexMatrix, shape: &LegShape, legs: &[usize]) -> Result<ComplexMatrix> {
    let dims = shape.dims();
    let k = dims.len();
    let mut seen = vec![false; k];
    for &l in legs {
        if l == 0 || l > k {
            return Err(Error::LegOutOfRange { leg: l, legs: k });
        }
        if seen[l - 1] {
            return Err(Error::RepeatedLeg(l));
        }
        seen[l - 1] = true;
    }
    let sel: usize = legs.iter().map(|&l| dims[l - 1]).product();
    if op.nrows() != sel || op.ncols() != sel {
        return Err(Error::Dimension(format!(
            "operator is {}x{} but legs {:?} of {:?} need {}",
            op.nrows(),
            op.ncols(),
            legs,
            dims,
            sel
        )));
    }
    let n = shape.total();
    let rest_legs: Vec<usize> = (0..k).filter(|i| !seen[*i]).collect();
    let rest: usize = rest_legs.iter().map(|&i| dims[i]).product();

    // full index of (selected multi-index, rest multi-index)
    let mut strides = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let full_index = |mut a: usize, mut r: usize| -> usize {
        let mut idx = 0;
        for &l in legs.iter().rev() {
            let d = dims[l - 1];
            idx += (a % d) * strides[l - 1];
            a /= d;
        }
        for &i in rest_legs.iter().rev() {
            idx += (r % dims[i]) * strides[i];
            r /= dims[i];
        }
        idx
    };
    let table: Vec<Vec<usize>> = (0..rest)
        .map(|r| (0..sel).map(|a| full_index(a, r)).collect())
        .collect();
    let mut out = Array2::zeros((n, n));
    for row in &table {
        for a in 0..sel {
            for b in 0..sel {
                let v = op[[a, b]];
                if v != ZERO {
                    out[[row[a], row[b]]] = v;
                }
            }
        }
    }
    Ok(out)
}

/// The flip Σ: H_a ⊗ H_b → H_b ⊗ H_a.
pub fn flip(dim_a: usize, dim_b: usize) -> UnitaryMatrix {
    let n = dim_a * dim_b;
    let mut m = Array2::zeros((n, n));
    for i in 0..dim_a {
        for j in 0..dim_b {
            m[[j * dim_a + i, i * dim_b + j]] = ONE;
        }
    }
    UnitaryMatrix(m)
}

/// σ(x) = Σ x Σ* for x on H_a ⊗ H_b.
pub fn flip_conjugate(x: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    let f = flip(dim_a, dim_b);
    f.matrix().dot(x).dot(&dagger(f.matrix()))
}

// ---------------------------------------------------------------------------
// dense linear algebra helpers

pub(crate) fn thin_svd(a: &Array2<C64>) -> Result<(Array2<C64>, Array1<f64>, Array2<C64>)> {
    let (m, n) = a.dim();
    if m == 0 || n == 0 {
        return Ok((Array2::zeros((m, 0)), Array1::zeros(0), Array2::zeros((0, n))));
    }
    let a = a.as_standard_layout().to_owned();
    let (u, s, vt) = a
        .svddc(JobSvd::Some)
        .map_err(|e| Error::Backend(e.to_string()))?;
    Ok((u.expect("U requested"), s, vt.expect("VT requested")))
}

pub fn singular_values(a: &Array2<C64>) -> Result<Array1<f64>> {
    if a.is_empty() {
        return Ok(Array1::zeros(0));
    }
    let a = a.as_standard_layout().to_owned();
    let (_, s, _) = a
        .svddc(JobSvd::None)
        .map_err(|e| Error::Backend(e.to_string()))?;
    Ok(s)
}

/// Number of singular values above `rel · σ_max`.
pub fn numerical_rank(s: &Array1<f64>, rel: f64) -> usize {
    let top = s.iter().cloned().fold(0.0, f64::max);
    if top <= 1e-13 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel * top).count()
}

pub fn rank(a: &Array2<C64>, tol: &Tolerance) -> Result<usize> {
    Ok(numerical_rank(&singular_values(a)?, tol.rank))
}

/// Least-squares solution of `a x = b` through a thresholded
/// pseudoinverse, with the max-abs residual of the solved system.
pub fn lstsq(a: &Array2<C64>, b: &Array2<C64>, tol: &Tolerance) -> Result<(Array2<C64>, f64)> {
    let (u, s, vt) = thin_svd(a)?;
    let r = numerical_rank(&s, tol.rank);
    let mut x = Array2::zeros((a.ncols(), b.ncols()));
    if r > 0 {
        let ur = u.slice(s![.., ..r]);
        let mut tmp = dagger(&ur.to_owned()).dot(b);
        for (i, mut row) in tmp.axis_iter_mut(Axis(0)).enumerate() {
            row.mapv_inplace(|z| z / s[i]);
        }
        x = dagger(&vt.slice(s![..r, ..]).to_owned()).dot(&tmp);
    }
    let res = max_abs_diff(&a.dot(&x), b);
    Ok((x, res))
}

pub(crate) fn largest_eigenvalue_hermitian(g: &Array2<C64>) -> Result<f64> {
    if g.is_empty() {
        return Ok(0.0);
    }
    let h = (g + &dagger(g)).mapv(|z| z * 0.5);
    let ev = h
        .eigvalsh(UPLO::Lower)
        .map_err(|e| Error::Backend(e.to_string()))?;
    Ok(ev.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
}

/// Applies `m` along `axis` of a tensor: the axis of length `m.ncols()` is
/// replaced by one of length `m.nrows()`.
pub(crate) fn apply_on_axis(t: &ArrayD<C64>, axis: usize, m: &Array2<C64>) -> ArrayD<C64> {
    let shape = t.shape().to_vec();
    assert_eq!(shape[axis], m.ncols(), "axis length mismatch");
    let pre: usize = shape[..axis].iter().product();
    let post: usize = shape[axis + 1..].iter().product();
    let t = t.as_standard_layout();
    let t3 = t
        .view()
        .into_shape_with_order((pre, shape[axis], post))
        .expect("standard layout");
    let mut out = Array3::zeros((pre, m.nrows(), post));
    for p in 0..pre {
        out.slice_mut(s![p, .., ..])
            .assign(&m.dot(&t3.slice(s![p, .., ..])));
    }
    let mut new_shape = shape;
    new_shape[axis] = m.nrows();
    out.into_shape_with_order(IxDyn(&new_shape))
        .expect("contiguous")
}

fn vec_of(m: &ArrayRef2<C64>) -> Array1<C64> {
    Array1::from_iter(m.iter().cloned())
}

// ---------------------------------------------------------------------------
// operator subspaces

/// A linear subspace of `B(ℂⁿ)` with a Hilbert–Schmidt orthonormal basis,
/// stored as the columns of `frame` (row-major vectorised matrices).
#[derive(Clone, Debug)]
pub struct OperatorSubspace {
    ambient: usize,
    frame: Array2<C64>,
}

impl OperatorSubspace {
    /// Orthonormal basis of the linear span of `generators`.
    pub fn span(generators: &[ComplexMatrix], tol: &Tolerance) -> Result<Self> {
        let ambient = generators.first().ok_or(Error::EmptySpan)?.nrows();
        Self::span_in(ambient, generators, tol)
    }

    pub fn span_in(ambient: usize, generators: &[ComplexMatrix], tol: &Tolerance) -> Result<Self> {
        let n2 = ambient * ambient;
        let mut stacked = Array2::zeros((n2, generators.len()));
        for (j, g) in generators.iter().enumerate() {
            if g.dim() != (ambient, ambient) {
                return Err(Error::Dimension(format!(
                    "generator {j} is {:?}, ambient is {ambient}",
                    g.dim()
                )));
            }
            stacked.column_mut(j).assign(&vec_of(g));
        }
        Self::from_columns(ambient, &stacked, tol)
    }

    pub(crate) fn from_columns(ambient: usize, stacked: &Array2<C64>, tol: &Tolerance) -> Result<Self> {
        let (u, s, _) = thin_svd(stacked)?;
        let r = numerical_rank(&s, tol.rank);
        Ok(OperatorSubspace {
            ambient,
            frame: u.slice(s![.., ..r]).to_owned(),
        })
    }

    /// Wraps columns that are already Hilbert–Schmidt orthonormal, keeping
    /// their order.
    pub fn from_orthonormal(ambient: usize, frame: Array2<C64>) -> Result<Self> {
        if frame.nrows() != ambient * ambient {
            return Err(Error::Dimension(format!(
                "frame has {} rows, ambient {ambient} needs {}",
                frame.nrows(),
                ambient * ambient
            )));
        }
        let g = dagger(&frame).dot(&frame);
        let r = max_abs_diff(&g, &identity(frame.ncols()));
        if r > 1e-10 {
            return Err(Error::Invalid(format!("frame is not orthonormal (residual {r:.3e})")));
        }
        Ok(OperatorSubspace { ambient, frame })
    }

    /// The product basis `{x_i ⊗ y_j}` of two subspaces, index `i·dim y + j`.
    pub fn tensor(x: &OperatorSubspace, y: &OperatorSubspace) -> Self {
        let n = x.ambient * y.ambient;
        let mut frame = Array2::zeros((n * n, x.dim() * y.dim()));
        let (xb, yb) = (x.basis(), y.basis());
        for (i, a) in xb.iter().enumerate() {
            for (j, b) in yb.iter().enumerate() {
                frame
                    .column_mut(i * yb.len() + j)
                    .assign(&vec_of(&kron(a, b)));
            }
        }
        OperatorSubspace { ambient: n, frame }
    }

    /// All of `B(ℂⁿ)`, with the matrix units as basis.
    pub fn full(n: usize) -> Self {
        OperatorSubspace {
            ambient: n,
            frame: Array2::eye(n * n),
        }
    }

    pub fn zero(n: usize) -> Self {
        OperatorSubspace {
            ambient: n,
            frame: Array2::zeros((n * n, 0)),
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn frame(&self) -> &Array2<C64> {
        &self.frame
    }

    pub fn basis_element(&self, i: usize) -> ComplexMatrix {
        self.frame
            .column(i)
            .to_owned()
            .into_shape_with_order((self.ambient, self.ambient))
            .expect("square")
    }

    pub fn basis(&self) -> Vec<ComplexMatrix> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    /// Hilbert–Schmidt coefficients of the orthogonal projection of `m`.
    pub fn coefficients(&self, m: &ArrayRef2<C64>) -> Array1<C64> {
        let v = vec_of(m);
        let mut out = Array1::zeros(self.dim());
        for (i, col) in self.frame.axis_iter(Axis(1)).enumerate() {
            out[i] = col.iter().zip(v.iter()).map(|(b, x)| b.conj() * x).sum();
        }
        out
    }

    pub fn element(&self, coeffs: &Array1<C64>) -> ComplexMatrix {
        self.frame
            .dot(coeffs)
            .into_shape_with_order((self.ambient, self.ambient))
            .expect("square")
    }

    /// Coefficients together with the max-abs distance of `m` from the subspace.
    pub fn decompose(&self, m: &ArrayRef2<C64>) -> (Array1<C64>, f64) {
        let c = self.coefficients(m);
        let back = self.element(&c);
        (c, max_abs_diff(&back, m))
    }

    pub fn membership_residual(&self, m: &ArrayRef2<C64>) -> f64 {
        self.decompose(m).1
    }

    /// Gram matrix of the stored basis.
    pub fn gram(&self) -> Array2<C64> {
        dagger(&self.frame).dot(&self.frame)
    }
}

/// Span of all products `x_i · y_j`.
pub fn subspace_product(x: &OperatorSubspace, y: &OperatorSubspace, tol: &Tolerance) -> Result<OperatorSubspace> {
    if x.ambient_dim() != y.ambient_dim() {
        return Err(Error::Dimension(format!(
            "ambient {} vs {}",
            x.ambient_dim(),
            y.ambient_dim()
        )));
    }
    let xs = x.basis();
    let ys = y.basis();
    let mut gens = Vec::with_capacity(xs.len() * ys.len());
    for a in &xs {
        for b in &ys {
            gens.push(a.dot(b));
        }
    }
    OperatorSubspace::span_in(x.ambient_dim(), &gens, tol)
}

/// Spectral norm ‖P_x − P_y‖ of the difference of the orthogonal projectors
/// and the verdict `residual <= tol.rank`.
pub fn subspace_equal(x: &OperatorSubspace, y: &OperatorSubspace, tol: &Tolerance) -> Result<(bool, f64)> {
    if x.ambient_dim() != y.ambient_dim() {
        return Err(Error::Dimension(format!(
            "ambient {} vs {}",
            x.ambient_dim(),
            y.ambient_dim()
        )));
    }
    let escape = |p: &Array2<C64>, q: &Array2<C64>| -> Result<f64> {
        if p.ncols() == 0 {
            return Ok(0.0);
        }
        let e = p - &q.dot(&dagger(q).dot(p));
        let g = dagger(&e).dot(&e);
        Ok(largest_eigenvalue_hermitian(&g)?.max(0.0).sqrt())
    };
    let r = escape(x.frame(), y.frame())?.max(escape(y.frame(), x.frame())?);
    Ok((r <= tol.rank, r))
}

/// Coefficients of `m` (acting on `H₁ ⊗ … ⊗ H_k`) against the product basis
/// of the given factor subspaces, index order `(i₁, …, i_k)` row-major, and
/// the max-abs distance of `m` from the product subspace.
pub fn product_coefficients(m: &ComplexMatrix, factors: &[&OperatorSubspace]) -> (Array1<C64>, f64) {
    let c = product_coefficients_only(m, factors);
    let back = product_element(&c, factors);
    let r = max_abs_diff(&back, m);
    (c, r)
}

pub fn product_coefficients_only(m: &ComplexMatrix, factors: &[&OperatorSubspace]) -> Array1<C64> {
    let ns: Vec<usize> = factors.iter().map(|f| f.ambient_dim()).collect();
    let k = ns.len();
    let n: usize = ns.iter().product();
    assert_eq!(m.dim(), (n, n), "matrix does not fit the factor shapes");
    let mut shape = ns.clone();
    shape.extend_from_slice(&ns);
    let t = m
        .view()
        .into_shape_with_order(IxDyn(&shape))
        .expect("square")
        .to_owned();
    let mut perm = Vec::with_capacity(2 * k);
    for f in 0..k {
        perm.push(f);
        perm.push(k + f);
    }
    let t = t.permuted_axes(IxDyn(&perm)).as_standard_layout().to_owned();
    let sq: Vec<usize> = ns.iter().map(|x| x * x).collect();
    let mut t = t.into_shape_with_order(IxDyn(&sq)).expect("contiguous");
    for (f, sub) in factors.iter().enumerate() {
        t = apply_on_axis(&t, f, &dagger(sub.frame()));
    }
    let len = t.len();
    t.into_shape_with_order(len).expect("contiguous")
}

pub fn product_element(coeffs: &Array1<C64>, factors: &[&OperatorSubspace]) -> ComplexMatrix {
    let ns: Vec<usize> = factors.iter().map(|f| f.ambient_dim()).collect();
    let ds: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let k = ns.len();
    let n: usize = ns.iter().product();
    let mut t = coeffs
        .clone()
        .into_shape_with_order(IxDyn(&ds))
        .expect("coefficient length");
    for (f, sub) in factors.iter().enumerate() {
        t = apply_on_axis(&t, f, sub.frame());
    }
    let mut split = Vec::with_capacity(2 * k);
    for &x in &ns {
        split.push(x);
        split.push(x);
    }
    let t = t.into_shape_with_order(IxDyn(&split)).expect("contiguous");
    let mut perm = Vec::with_capacity(2 * k);
    for f in 0..k {
        perm.push(2 * f);
    }
    for f in 0..k {
        perm.push(2 * f + 1);
    }
    let t = t.permuted_axes(IxDyn(&perm)).as_standard_layout().to_owned();
    t.into_shape_with_order((n, n)).expect("contiguous")
}

/// Hilbert–Schmidt slices of `m` on `H₁ ⊗ H₂` against the basis of `sub`
/// acting on the second leg: `m ≈ Σ_i out[i] ⊗ sub_i`.
pub fn slice_second_leg(m: &ComplexMatrix, h1: usize, sub: &OperatorSubspace) -> Vec<ComplexMatrix> {
    let h2 = sub.ambient_dim();
    assert_eq!(m.nrows(), h1 * h2, "shape");
    let basis = sub.basis();
    basis
        .iter()
        .map(|b| {
            let mut out = Array2::zeros((h1, h1));
            for r in 0..h1 {
                for c in 0..h1 {
                    let mut acc = ZERO;
                    for p in 0..h2 {
                        for q in 0..h2 {
                            let bv = b[[p, q]];
                            if bv != ZERO {
                                acc += bv.conj() * m[[r * h2 + p, c * h2 + q]];
                            }
                        }
                    }
                    out[[r, c]] = acc;
                }
            }
            out
        })
        .collect()
}

/// Slices against `sub` on the first leg: `m ≈ Σ_i sub_i ⊗ out[i]`.
pub fn slice_first_leg(m: &ComplexMatrix, sub: &OperatorSubspace, h2: usize) -> Vec<ComplexMatrix> {
    let h1 = sub.ambient_dim();
    assert_eq!(m.nrows(), h1 * h2, "shape");
    sub.basis()
        .iter()
        .map(|b| {
            let mut out = Array2::zeros((h2, h2));
            for p in 0..h1 {
                for q in 0..h1 {
                    let bv = b[[p, q]];
                    if bv == ZERO {
                        continue;
                    }
                    let block = m.slice(s![p * h2..(p + 1) * h2, q * h2..(q + 1) * h2]);
                    out.scaled_add(bv.conj(), &block);
                }
            }
            out
        })
        .collect()
}

/// `Σ_I c_I · ops[0][I_0] ⊗ … ⊗ ops[k-1][I_{k-1}]` for a coefficient vector
/// laid out row-major over `ops[f].len()`.
pub fn expand_product(coeffs: &Array1<C64>, ops: &[&[ComplexMatrix]]) -> ComplexMatrix {
    let dims: Vec<usize> = ops.iter().map(|o| o.len()).collect();
    assert_eq!(coeffs.len(), dims.iter().product::<usize>(), "coefficient length");
    let n: usize = ops.iter().map(|o| o[0].nrows()).product();
    let m: usize = ops.iter().map(|o| o[0].ncols()).product();
    let mut out = Array2::zeros((n, m));
    let mut idx = vec![0usize; dims.len()];
    for (flat, &c) in coeffs.iter().enumerate() {
        if c.norm() < 1e-15 {
            continue;
        }
        let mut rest = flat;
        for f in (0..dims.len()).rev() {
            idx[f] = rest % dims[f];
            rest /= dims[f];
        }
        let mut t = ops[0][idx[0]].clone();
        for f in 1..dims.len() {
            t = kron(&t, &ops[f][idx[f]]);
        }
        out.scaled_add(c, &t);
    }
    out
}
