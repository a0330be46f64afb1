//! Finite groups, multiplicative unitaries and the quantum groups they
//! generate.

use std::sync::Arc;

use ndarray::{Array1, Array2};

use crate::algebra::{Bialgebra, DensityReport, LinearMap, StarAlgebra};
use crate::error::{Error, Result};
use crate::tensor::{
    dagger, flip, identity, lstsq, max_abs_diff, place_on_legs, product_coefficients, product_element,
    ComplexMatrix, LegShape, Tolerance, UnitaryMatrix, C64, ONE,
};

/// A finite group given by its Cayley table: `table[g][h] = gh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {g} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {g} is out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative: ({a}{b}){c} != {a}({b}{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table).expect("cyclic group table")
    }

    /// S₃ as permutations of {0,1,2}, elements in lexicographic order of
    /// their images; `table[g][h]` is the composite `g ∘ h`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|g| {
                perms
                    .iter()
                    .map(|h| index([g[h[0]], g[h[1]], g[h[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Left regular representation `λ_g δ_h = δ_{gh}`.
    pub fn left_regular(&self, g: usize) -> ComplexMatrix {
        let n = self.order();
        let mut m = Array2::zeros((n, n));
        for h in 0..n {
            m[[self.mul(g, h), h]] = ONE;
        }
        m
    }

    pub fn delta(&self, g: usize) -> ComplexMatrix {
        let n = self.order();
        let mut m = Array2::zeros((n, n));
        m[[g, g]] = ONE;
        m
    }
}

/// ‖W₂₃W₁₂ − W₁₂W₁₃W₂₃‖ for `w` on `ℂ^dim ⊗ ℂ^dim`.
pub fn check_pentagon(w: &ComplexMatrix, dim: usize) -> Result<f64> {
    if w.nrows() != dim * dim || w.ncols() != dim * dim {
        return Err(Error::Dimension(format!(
            "a {}x{} matrix does not act on {dim}⊗{dim}",
            w.nrows(),
            w.ncols()
        )));
    }
    let shape = LegShape::new(&[dim, dim, dim])?;
    let w12 = place_on_legs(w, &shape, &[1, 2])?;
    let w13 = place_on_legs(w, &shape, &[1, 3])?;
    let w23 = place_on_legs(w, &shape, &[2, 3])?;
    Ok(max_abs_diff(&w23.dot(&w12), &w12.dot(&w13).dot(&w23)))
}

/// A unitary on `H₀ ⊗ H₀` satisfying the pentagon equation.
#[derive(Clone, Debug)]
pub struct MultiplicativeUnitary {
    w: UnitaryMatrix,
    dim: usize,
    pentagon_residual: f64,
}

impl MultiplicativeUnitary {
    pub fn new(w: ComplexMatrix, dim: usize, tol: &Tolerance) -> Result<Self> {
        let r = check_pentagon(&w, dim)?;
        let w = UnitaryMatrix::new(w, tol)?;
        let limit = tol.for_dim(dim * dim);
        if r > limit {
            return Err(Error::check("pentagon equation", r, limit));
        }
        Ok(MultiplicativeUnitary {
            w,
            dim,
            pentagon_residual: r,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.w.matrix()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pentagon_residual(&self) -> f64 {
        self.pentagon_residual
    }

    /// `ΣW*Σ`, again multiplicative.
    pub fn dual(&self) -> MultiplicativeUnitary {
        let w = dual_unitary(self.matrix(), self.dim);
        MultiplicativeUnitary {
            pentagon_residual: check_pentagon(&w, self.dim).expect("same shape"),
            w: UnitaryMatrix::assume(w),
            dim: self.dim,
        }
    }
}

pub fn dual_unitary(w: &ComplexMatrix, dim: usize) -> ComplexMatrix {
    let s = flip(dim, dim);
    s.matrix().dot(&dagger(w)).dot(s.matrix())
}

/// The permutation `δ_g ⊗ δ_h ↦ δ_g ⊗ δ_{g·h}` for any binary operation
/// whose rows are permutations. Multiplicative exactly when the operation
/// is associative.
pub fn table_unitary(table: &[Vec<usize>]) -> Result<ComplexMatrix> {
    let n = table.len();
    let mut w = Array2::zeros((n * n, n * n));
    for (a, row) in table.iter().enumerate() {
        let mut seen = vec![false; n];
        if row.len() != n {
            return Err(Error::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
        }
        for (b, &c) in row.iter().enumerate() {
            if c >= n || seen[c] {
                return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
            }
            seen[c] = true;
            w[[a * n + c, a * n + b]] = ONE;
        }
    }
    Ok(w)
}

/// `W(δ_g ⊗ δ_h) = δ_g ⊗ δ_{gh}` on `ℓ²(G) ⊗ ℓ²(G)`.
pub fn group_multiplicative_unitary(g: &FiniteGroup) -> MultiplicativeUnitary {
    let w = table_unitary(g.table()).expect("group rows are permutations");
    MultiplicativeUnitary::new(w, g.order(), &Tolerance::default()).expect("group unitaries are multiplicative")
}

/// The quantum group generated by a multiplicative unitary: `A` is spanned
/// by the second-leg slices of `W`, `Â` by the first-leg slices, and
/// `W ∈ Â ⊗ A`.
#[derive(Clone, Debug)]
pub struct QuantumGroup {
    w: MultiplicativeUnitary,
    a: Arc<StarAlgebra>,
    ahat: Arc<StarAlgebra>,
    side: Arc<Bialgebra>,
    dual_side: Arc<Bialgebra>,
    /// coefficients of `W` in the product basis of `Â ⊗ A`.
    w_coeffs: Array1<C64>,
    report: QuantumGroupReport,
}

#[derive(Clone, Copy, Debug)]
pub struct QuantumGroupReport {
    pub pentagon: f64,
    pub comult_range: f64,
    pub dual_comult_range: f64,
    pub characterizing: f64,
    pub dual_characterizing: f64,
    pub w_membership: f64,
    pub counit: f64,
    pub dual_counit: f64,
}

impl QuantumGroupReport {
    pub fn worst(&self) -> f64 {
        [
            self.pentagon,
            self.comult_range,
            self.dual_comult_range,
            self.characterizing,
            self.dual_characterizing,
            self.w_membership,
            self.counit,
            self.dual_counit,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn first_leg_slices(w: &ComplexMatrix, n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            let mut m = Array2::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    m[[i, j]] = w[[i * n + k, j * n + l]];
                }
            }
            out.push(m);
        }
    }
    out
}

fn second_leg_slices(w: &ComplexMatrix, n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(
                w.slice(ndarray::s![i * n..(i + 1) * n, j * n..(j + 1) * n])
                    .to_owned(),
            );
        }
    }
    out
}

/// Coefficient map of `x ↦ V(x ⊗ 1)V*` from `alg` into `alg ⊗ alg`, with the
/// largest distance of an image from `alg ⊗ alg`.
fn conjugation_comult(v: &ComplexMatrix, alg: &StarAlgebra) -> (LinearMap, f64) {
    let n = alg.ambient_dim();
    let d = alg.dim();
    let one = identity(n);
    let vd = dagger(v);
    let mut coeffs = Array2::zeros((d * d, d));
    let mut worst: f64 = 0.0;
    for (i, b) in alg.basis().iter().enumerate() {
        let img = v.dot(&crate::tensor::kron(b, &one)).dot(&vd);
        let (c, r) = product_coefficients(&img, &[alg.space(), alg.space()]);
        worst = worst.max(r);
        coeffs.column_mut(i).assign(&c);
    }
    (LinearMap::new(coeffs, vec![d, d]), worst)
}

/// Solves `(e ⊗ id)Δ = id` for `e` and reports the larger residual of the
/// two counit laws.
pub fn solve_counit(comult: &LinearMap, d: usize, tol: &Tolerance) -> Result<(Array1<C64>, f64)> {
    // (e⊗id)Δ(x_i) = Σ_{k,j} e_k Δ[k*d+j, i] x_j = x_i
    let mut a = Array2::zeros((d * d, d));
    let mut b = Array2::zeros((d * d, 1));
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                a[[i * d + j, k]] = comult.coeffs[[k * d + j, i]];
            }
            if i == j {
                b[[i * d + j, 0]] = ONE;
            }
        }
    }
    let (x, _) = lstsq(&a, &b, tol)?;
    let e = x.column(0).to_owned();
    let ev = LinearMap::new(e.clone().into_shape_with_order((1, d)).expect("row"), vec![1]);
    let id = LinearMap::identity(d);
    let left = ev.tensor(&id).compose(comult);
    let right = id.tensor(&ev).compose(comult);
    let r = max_abs_diff(&left.coeffs, &id.coeffs).max(max_abs_diff(&right.coeffs, &id.coeffs));
    Ok((e, r))
}

/// Builds `A`, `Â`, both comultiplications and both counits from `W`.
pub fn generate_quantum_group(w: MultiplicativeUnitary, tol: &Tolerance) -> Result<QuantumGroup> {
    let n = w.dim();
    let a = Arc::new(StarAlgebra::generated_by(n, &second_leg_slices(w.matrix(), n), tol)?);
    let ahat = Arc::new(StarAlgebra::generated_by(n, &first_leg_slices(w.matrix(), n), tol)?);
    let (comult, comult_range) = conjugation_comult(w.matrix(), &a);
    let what = dual_unitary(w.matrix(), n);
    let (dual_comult, dual_comult_range) = conjugation_comult(&what, &ahat);
    let (w_coeffs, w_membership) = product_coefficients(w.matrix(), &[ahat.space(), a.space()]);

    let limit = tol.for_dim(n * n);
    if comult_range > limit {
        return Err(Error::check("comultiplication range", comult_range, limit));
    }
    if dual_comult_range > limit {
        return Err(Error::check("dual comultiplication range", dual_comult_range, limit));
    }
    let (counit, counit_r) = solve_counit(&comult, a.dim(), tol)?;
    if counit_r > tol.for_dim(a.dim()) {
        return Err(Error::check("counit system", counit_r, tol.for_dim(a.dim())));
    }
    let (dual_counit, dual_counit_r) = solve_counit(&dual_comult, ahat.dim(), tol)?;
    if dual_counit_r > tol.for_dim(ahat.dim()) {
        return Err(Error::check("dual counit system", dual_counit_r, tol.for_dim(ahat.dim())));
    }
    let mut qg = QuantumGroup {
        report: QuantumGroupReport {
            pentagon: w.pentagon_residual(),
            comult_range,
            dual_comult_range,
            characterizing: 0.0,
            dual_characterizing: 0.0,
            w_membership,
            counit: counit_r,
            dual_counit: dual_counit_r,
        },
        side: Arc::new(Bialgebra {
            name: "A".into(),
            algebra: a.clone(),
            comult,
            counit: Some(counit),
        }),
        dual_side: Arc::new(Bialgebra {
            name: "Â".into(),
            algebra: ahat.clone(),
            comult: dual_comult,
            counit: Some(dual_counit),
        }),
        w,
        a,
        ahat,
        w_coeffs,
    };
    qg.report.characterizing = qg.characterizing_residual();
    qg.report.dual_characterizing = qg.dual_characterizing_residual();
    Ok(qg)
}

/// The quantum group generated by `ΣW*Σ`. Its `A` is the `Â` of `g` and
/// vice versa, with the same bases, so coefficients carry over unchanged.
pub fn dual_quantum_group(g: &QuantumGroup, tol: &Tolerance) -> Result<QuantumGroup> {
    let w = g.w.dual();
    let limit = tol.for_dim(w.dim() * w.dim());
    if w.pentagon_residual() > limit {
        return Err(Error::check("pentagon equation", w.pentagon_residual(), limit));
    }
    let (w_coeffs, w_membership) = product_coefficients(w.matrix(), &[g.a.space(), g.ahat.space()]);
    let mut d = QuantumGroup {
        w,
        a: g.ahat.clone(),
        ahat: g.a.clone(),
        side: g.dual_side.clone(),
        dual_side: g.side.clone(),
        w_coeffs,
        report: QuantumGroupReport {
            comult_range: g.report.dual_comult_range,
            dual_comult_range: g.report.comult_range,
            counit: g.report.dual_counit,
            dual_counit: g.report.counit,
            w_membership,
            ..g.report
        },
    };
    d.report.pentagon = d.w.pentagon_residual();
    d.report.characterizing = d.characterizing_residual();
    d.report.dual_characterizing = d.dual_characterizing_residual();
    Ok(d)
}

impl QuantumGroup {
    pub fn from_group(g: &FiniteGroup) -> Result<Self> {
        generate_quantum_group(group_multiplicative_unitary(g), &Tolerance::default())
    }

    pub fn unitary(&self) -> &MultiplicativeUnitary {
        &self.w
    }

    pub fn w(&self) -> &ComplexMatrix {
        self.w.matrix()
    }

    pub fn dim_h0(&self) -> usize {
        self.w.dim()
    }

    pub fn a(&self) -> &Arc<StarAlgebra> {
        &self.a
    }

    pub fn ahat(&self) -> &Arc<StarAlgebra> {
        &self.ahat
    }

    pub fn comult(&self) -> &LinearMap {
        &self.side.comult
    }

    pub fn dual_comult(&self) -> &LinearMap {
        &self.dual_side.comult
    }

    pub fn counit(&self) -> &Array1<C64> {
        self.side.counit.as_ref().expect("counit")
    }

    pub fn dual_counit(&self) -> &Array1<C64> {
        self.dual_side.counit.as_ref().expect("counit")
    }

    pub fn w_coefficients(&self) -> &Array1<C64> {
        &self.w_coeffs
    }

    pub fn report(&self) -> &QuantumGroupReport {
        &self.report
    }

    /// Counit evaluated on an operator in `A`.
    pub fn counit_of(&self, a: &ComplexMatrix) -> C64 {
        self.a.coefficients(a).dot(self.counit())
    }

    pub fn dual_counit_of(&self, a: &ComplexMatrix) -> C64 {
        self.ahat.coefficients(a).dot(self.dual_counit())
    }

    /// `Δ(x) = W(x ⊗ 1)W*` as an operator.
    pub fn comult_op(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let w = self.w();
        w.dot(&crate::tensor::kron(x, &identity(self.dim_h0()))).dot(&dagger(w))
    }

    /// `Δ̂(x) = Ŵ(x ⊗ 1)Ŵ*` as an operator.
    pub fn dual_comult_op(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let w = dual_unitary(self.w(), self.dim_h0());
        w.dot(&crate::tensor::kron(x, &identity(self.dim_h0()))).dot(&dagger(&w))
    }

    pub fn bialgebra(&self) -> &Arc<Bialgebra> {
        &self.side
    }

    pub fn dual_bialgebra(&self) -> &Arc<Bialgebra> {
        &self.dual_side
    }

    /// ‖(id ⊗ Δ)W − W₁₂W₁₃‖.
    pub fn characterizing_residual(&self) -> f64 {
        let n = self.dim_h0();
        let (dh, da) = (self.ahat.dim(), self.a.dim());
        let mut acc = Array2::zeros((n * n * n, n * n * n));
        for i in 0..dh {
            for j in 0..da {
                let c = self.w_coeffs[i * da + j];
                if c.norm() < 1e-15 {
                    continue;
                }
                let dj = product_element(&self.comult().column(j), &[self.a.space(), self.a.space()]);
                acc.scaled_add(c, &crate::tensor::kron(&self.ahat.basis()[i], &dj));
            }
        }
        let shape = LegShape::new(&[n, n, n]).expect("dims");
        let w12 = place_on_legs(self.w(), &shape, &[1, 2]).expect("legs");
        let w13 = place_on_legs(self.w(), &shape, &[1, 3]).expect("legs");
        max_abs_diff(&acc, &w12.dot(&w13)) + self.report.w_membership
    }

    /// ‖(Δ̂ ⊗ id)W − W₂₃W₁₃‖.
    pub fn dual_characterizing_residual(&self) -> f64 {
        let n = self.dim_h0();
        let (dh, da) = (self.ahat.dim(), self.a.dim());
        let mut acc = Array2::zeros((n * n * n, n * n * n));
        for i in 0..dh {
            let di = product_element(&self.dual_comult().column(i), &[self.ahat.space(), self.ahat.space()]);
            for j in 0..da {
                let c = self.w_coeffs[i * da + j];
                if c.norm() < 1e-15 {
                    continue;
                }
                acc.scaled_add(c, &crate::tensor::kron(&di, &self.a.basis()[j]));
            }
        }
        let shape = LegShape::new(&[n, n, n]).expect("dims");
        let w23 = place_on_legs(self.w(), &shape, &[2, 3]).expect("legs");
        let w13 = place_on_legs(self.w(), &shape, &[1, 3]).expect("legs");
        max_abs_diff(&acc, &w23.dot(&w13)) + self.report.w_membership
    }

    pub fn coassociativity(&self) -> f64 {
        self.bialgebra().coassociativity_residual()
    }

    pub fn dual_coassociativity(&self) -> f64 {
        self.dual_bialgebra().coassociativity_residual()
    }

    /// Δ(A)(1⊗A) and (A⊗1)Δ(A) against A⊗A.
    pub fn podles(&self, tol: &Tolerance) -> Result<(DensityReport, DensityReport)> {
        let b = self.bialgebra();
        Ok((b.podles(true, tol)?, b.podles(false, tol)?))
    }

    pub fn dual_podles(&self, tol: &Tolerance) -> Result<(DensityReport, DensityReport)> {
        let b = self.dual_bialgebra();
        Ok((b.podles(true, tol)?, b.podles(false, tol)?))
    }

    /// Whether `A` is commutative, i.e. the underlying group picture is a
    /// function algebra.
    pub fn is_commutative(&self, tol: &Tolerance) -> bool {
        self.a.is_commutative(tol)
    }

    /// ‖σ∘Δ − Δ‖ on the basis: zero iff `A` is cocommutative.
    pub fn cocommutativity_residual(&self) -> f64 {
        let d = self.a.dim();
        let swapped = crate::algebra::permute_rows(&self.comult().coeffs, &[d, d], &[1, 0]);
        max_abs_diff(&swapped, &self.comult().coeffs)
    }
}
