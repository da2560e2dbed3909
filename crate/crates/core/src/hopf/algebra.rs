use crate::error::{EngineError, Result};
use crate::linalg::{self, Accumulator, Echelon, Kernel, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// A finite-dimensional unital algebra by structure constants.
///
/// `mult` has `dim²` rows; row `i·dim + j` holds the coordinates of `e_i e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    pub dim: usize,
    pub mult: Mat,
    pub unit: SparseVec,
}

impl AlgebraPresentation {
    pub fn new(dim: usize, mult: Mat, unit: SparseVec) -> Result<Self> {
        if mult.shape() != (dim * dim, dim) {
            return Err(EngineError::Dimension(format!(
                "multiplication table must be {}x{}, got {:?}",
                dim * dim,
                dim,
                mult.shape()
            )));
        }
        if unit.max_index().is_some_and(|m| m >= dim) {
            return Err(EngineError::Dimension("unit vector out of range".into()));
        }
        Ok(AlgebraPresentation { dim, mult, unit })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        AlgebraPresentation {
            dim: 1,
            mult: Mat::identity(1),
            unit: SparseVec::unit(0),
        }
    }

    /// `Mat_n` on the matrix units `E_ij ↦ i·n + j`.
    pub fn matrix_algebra(n: usize) -> Self {
        let d = n * n;
        let mut rows = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                rows.push(if j == k {
                    SparseVec::unit(i * n + l)
                } else {
                    SparseVec::new()
                });
            }
        }
        AlgebraPresentation {
            dim: d,
            mult: Mat::from_rows(rows, d),
            unit: SparseVec::from_pairs((0..n).map(|i| (i * n + i, Scalar::one())).collect()),
        }
    }

    /// Functions on `n` points with pointwise product.
    pub fn diagonal(n: usize) -> Self {
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                rows.push(if i == j { SparseVec::unit(i) } else { SparseVec::new() });
            }
        }
        AlgebraPresentation {
            dim: n,
            mult: Mat::from_rows(rows, n),
            unit: SparseVec::from_pairs((0..n).map(|i| (i, Scalar::one())).collect()),
        }
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        self.mult.row(i * self.dim + j)
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc.push_scaled(self.basis_product(*i, *j), &(x * y));
            }
        }
        acc.finish()
    }

    pub fn one(&self) -> SparseVec {
        self.unit.clone()
    }

    /// Matrix of `v ↦ a·v` acting on coordinate columns.
    pub fn left_mult(&self, a: &SparseVec) -> Mat {
        let cols: Vec<SparseVec> = (0..self.dim)
            .map(|j| self.mul(a, &SparseVec::unit(j)))
            .collect();
        Mat::from_columns(&cols, self.dim)
    }

    /// Matrix of `v ↦ v·a` acting on coordinate columns.
    pub fn right_mult(&self, a: &SparseVec) -> Mat {
        let cols: Vec<SparseVec> = (0..self.dim)
            .map(|j| self.mul(&SparseVec::unit(j), a))
            .collect();
        Mat::from_columns(&cols, self.dim)
    }

    /// Greedy list of basis elements generating the algebra.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Echelon::new(self.dim);
        span.insert(self.unit.clone());
        let mut members = vec![self.unit.clone()];
        for j in 0..self.dim {
            if span.contains(&SparseVec::unit(j)) {
                continue;
            }
            gens.push(j);
            members.push(SparseVec::unit(j));
            span.insert(SparseVec::unit(j));
            let mut k = 0;
            while k < members.len() {
                let m = members[k].clone();
                for &g in &gens {
                    let p = self.mul(&m, &SparseVec::unit(g));
                    if span.insert(p.clone()) {
                        members.push(p);
                    }
                }
                k += 1;
            }
        }
        gens
    }

    pub fn pow(&self, a: &SparseVec, e: usize) -> SparseVec {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Associativity and two-sided unit law on basis elements.
    pub fn verify(&self) -> CheckReport {
        let d = self.dim;
        let mut assoc = CheckEntry::new("associativity");
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let lhs = self.mul(ij, &SparseVec::unit(k));
                    let rhs = self.mul(&SparseVec::unit(i), self.basis_product(j, k));
                    assoc.record(lhs == rhs, vec![i, j, k]);
                }
            }
        }
        let mut unit = CheckEntry::new("unit");
        for i in 0..d {
            let e = SparseVec::unit(i);
            let ok = self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e;
            unit.record(ok, vec![i]);
        }
        CheckReport {
            entries: vec![assoc, unit],
        }
    }

    /// Tensor product algebra on the row-major basis.
    pub fn tensor(&self, other: &AlgebraPresentation) -> AlgebraPresentation {
        let (p, q) = (self.dim, other.dim);
        let d = p * q;
        let mut rows = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let x = self.basis_product(a / q, b / q);
                let y = other.basis_product(a % q, b % q);
                let mut pairs = Vec::with_capacity(x.nnz() * y.nnz());
                for (i, u) in x.iter() {
                    for (j, v) in y.iter() {
                        pairs.push((i * q + j, u * v));
                    }
                }
                rows.push(SparseVec::from_sorted(pairs));
            }
        }
        let unit = Mat::from_rows(vec![self.unit.clone()], p)
            .kron(&Mat::from_rows(vec![other.unit.clone()], q))
            .row(0)
            .clone();
        AlgebraPresentation {
            dim: d,
            mult: Mat::from_rows(rows, d),
            unit,
        }
    }

    pub fn opposite(&self) -> AlgebraPresentation {
        let d = self.dim;
        let rows = (0..d * d)
            .map(|r| self.basis_product(r % d, r / d).clone())
            .collect();
        AlgebraPresentation {
            dim: d,
            mult: Mat::from_rows(rows, d),
            unit: self.unit.clone(),
        }
    }

    /// Direct sum `A ⊕ B` with the basis of `A` first.
    pub fn direct_sum(&self, other: &AlgebraPresentation) -> AlgebraPresentation {
        let (p, q) = (self.dim, other.dim);
        let d = p + q;
        let mut rows = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                rows.push(if a < p && b < p {
                    self.basis_product(a, b).clone()
                } else if a >= p && b >= p {
                    other.basis_product(a - p, b - p).remap(|i| Some(i + p))
                } else {
                    SparseVec::new()
                });
            }
        }
        let unit = self.unit.add(&other.unit.remap(|i| Some(i + p)));
        AlgebraPresentation {
            dim: d,
            mult: Mat::from_rows(rows, d),
            unit,
        }
    }

    /// Trace form `(x, y) ↦ Tr(L_{xy})` on basis pairs.
    pub fn trace_form(&self) -> Mat {
        let d = self.dim;
        let traces: Vec<Scalar> = (0..d)
            .map(|k| self.left_mult(&SparseVec::unit(k)).trace())
            .collect();
        let rows = (0..d)
            .map(|i| {
                let dense: Vec<Scalar> = (0..d)
                    .map(|j| {
                        let mut acc = Scalar::zero();
                        for (k, c) in self.basis_product(i, j).iter() {
                            acc += &(c * &traces[*k]);
                        }
                        acc
                    })
                    .collect();
                SparseVec::from_dense(&dense)
            })
            .collect();
        Mat::from_rows(rows, d)
    }

    /// Radical, as the kernel of the trace form.
    pub fn radical(&self) -> Kernel {
        linalg::kernel(&self.trace_form())
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().dim() == 0
    }

    /// Center `{z : z e_i = e_i z}`.
    pub fn center(&self) -> Kernel {
        let maps: Vec<Mat> = (0..self.dim)
            .map(|i| {
                let e = SparseVec::unit(i);
                // z ↦ z e_i − e_i z
                self.right_mult(&e).sub(&self.left_mult(&e))
            })
            .collect();
        let refs: Vec<&Mat> = maps.iter().collect();
        linalg::joint_kernel(&refs)
    }

    /// Two-sided ideal generated by `gens`, as an echelon basis.
    pub fn ideal(&self, gens: &[SparseVec]) -> Vec<SparseVec> {
        let mut e = Echelon::new(self.dim);
        let mut basis: Vec<SparseVec> = Vec::new();
        let mut queue: Vec<SparseVec> = gens.to_vec();
        while let Some(v) = queue.pop() {
            if !e.insert(v.clone()) {
                continue;
            }
            for k in 0..self.dim {
                let ek = SparseVec::unit(k);
                queue.push(self.mul(&ek, &v));
                queue.push(self.mul(&v, &ek));
            }
            basis.push(v);
        }
        basis
    }

    /// Quotient by a two-sided ideal. The quotient basis is the set of
    /// non-pivot coordinates of the ideal's echelon form; the returned matrix
    /// maps coordinates of `A` to coordinates of the quotient.
    pub fn quotient(&self, ideal: &[SparseVec]) -> (AlgebraPresentation, Mat) {
        let rref = linalg::Rref::from_rows(self.dim, ideal);
        let mut e = Echelon::new(self.dim);
        for r in &rref.rows {
            e.insert(r.clone());
        }
        let keep = rref.free_cols();
        let mut slot = vec![usize::MAX; self.dim];
        for (k, &j) in keep.iter().enumerate() {
            slot[j] = k;
        }
        let project = |v: &SparseVec| e.reduce(v.clone()).remap(|i| Some(slot[i]));
        let q = keep.len();
        let mut rows = Vec::with_capacity(q * q);
        for &a in &keep {
            for &b in &keep {
                rows.push(project(self.basis_product(a, b)));
            }
        }
        let proj_rows: Vec<SparseVec> = (0..self.dim).map(|i| project(&SparseVec::unit(i))).collect();
        let alg = AlgebraPresentation {
            dim: q,
            mult: Mat::from_rows(rows, q),
            unit: project(&self.unit),
        };
        (alg, Mat::from_rows(proj_rows, q).transpose())
    }

    /// Subalgebra spanned by the columns of a reduced basis (closed under
    /// multiplication and containing the unit; checked).
    pub fn subalgebra(&self, basis: &Kernel) -> Result<AlgebraPresentation> {
        self.subalgebra_with_unit(basis, &self.unit)
    }

    /// The corner `eAe` of an idempotent `e`, with `e` as its unit, and its
    /// basis in coordinates of `A`.
    pub fn corner(&self, e: &SparseVec) -> (AlgebraPresentation, Kernel) {
        let vecs: Vec<SparseVec> = (0..self.dim)
            .map(|i| self.mul(&self.mul(e, &SparseVec::unit(i)), e))
            .collect();
        let basis = linalg::span(self.dim, &vecs);
        let alg = self
            .subalgebra_with_unit(&basis, e)
            .expect("corner of an idempotent is a subalgebra");
        (alg, basis)
    }

    /// Like [`Self::subalgebra`] for a subalgebra whose unit `unit` differs
    /// from the unit of `A`.
    pub fn subalgebra_with_unit(
        &self,
        basis: &Kernel,
        unit: &SparseVec,
    ) -> Result<AlgebraPresentation> {
        let vs = basis.vectors();
        let k = vs.len();
        let mut rows = Vec::with_capacity(k * k);
        for a in &vs {
            for b in &vs {
                let p = self.mul(a, b);
                if !basis.contains(&p) {
                    return Err(EngineError::Invalid("subspace is not closed under multiplication".into()));
                }
                rows.push(basis.coords(&p));
            }
        }
        if !basis.contains(unit) {
            return Err(EngineError::Invalid("subspace does not contain the unit".into()));
        }
        let alg = AlgebraPresentation {
            dim: k,
            mult: Mat::from_rows(rows, k),
            unit: basis.coords(unit),
        };
        if !alg.verify().passed("unit") {
            return Err(EngineError::Invalid("given element is not a unit of the subalgebra".into()));
        }
        Ok(alg)
    }

    /// Monic minimal polynomial of an element.
    pub fn minimal_polynomial(&self, a: &SparseVec) -> Vec<Scalar> {
        linalg::poly::krylov_minpoly(self.dim, self.one(), |v| self.mul(v, a))
    }

    pub fn inverse_of(&self, a: &SparseVec) -> Result<SparseVec> {
        let l = self.left_mult(a);
        let x = linalg::solve(&l, &self.unit).map_err(|_| {
            EngineError::NotInvertible("element has no inverse".into())
        })?;
        if self.mul(&x, a) != self.unit {
            return Err(EngineError::NotInvertible("element has no two-sided inverse".into()));
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_algebra_is_simple() {
        let m2 = AlgebraPresentation::matrix_algebra(2);
        assert!(m2.verify().all_passed());
        assert!(m2.is_semisimple());
        assert_eq!(m2.center().dim(), 1);
    }

    #[test]
    fn tensor_of_diagonals() {
        let a = AlgebraPresentation::diagonal(2).tensor(&AlgebraPresentation::diagonal(3));
        assert!(a.verify().all_passed());
        assert_eq!(a, AlgebraPresentation::diagonal(6));
    }

    #[test]
    fn minimal_polynomial_of_idempotent() {
        let a = AlgebraPresentation::diagonal(2);
        let p = a.minimal_polynomial(&SparseVec::unit(0));
        assert_eq!(p, vec![Scalar::zero(), Scalar::from_int(-1), Scalar::one()]);
    }
}
