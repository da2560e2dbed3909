use super::{Accumulator, Scalar, SparseVec};
use crate::error::{EngineError, Result};
use crate::par;

/// A sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Mat {
    pub fn zeros(nrows: usize, ncols: usize) -> Mat {
        Mat {
            nrows,
            ncols,
            rows: vec![SparseVec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Mat {
        Mat {
            nrows: n,
            ncols: n,
            rows: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn scalar(n: usize, c: &Scalar) -> Mat {
        Mat {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| SparseVec::single(i, c.clone())).collect(),
        }
    }

    pub fn from_rows(rows: Vec<SparseVec>, ncols: usize) -> Mat {
        debug_assert!(rows
            .iter()
            .all(|r| r.max_index().map_or(true, |m| m < ncols)));
        Mat {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[SparseVec], nrows: usize) -> Mat {
        Mat::from_rows(cols.to_vec(), nrows).transpose()
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Mat {
        let ncols = rows.first().map_or(0, |r| r.len());
        Mat {
            nrows: rows.len(),
            ncols,
            rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Mat {
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        let mut m = Mat::from_dense(&dense);
        if rows.is_empty() {
            m.ncols = 0;
        }
        m
    }

    pub fn diag(values: &[Scalar]) -> Mat {
        let n = values.len();
        Mat {
            nrows: n,
            ncols: n,
            rows: values
                .iter()
                .enumerate()
                .map(|(i, v)| SparseVec::single(i, v.clone()))
                .collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let mut pairs: Vec<(usize, Scalar)> = self.rows[i]
            .iter()
            .filter(|(k, _)| *k != j)
            .cloned()
            .collect();
        pairs.push((j, v));
        self.rows[i] = SparseVec::from_pairs(pairs);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.nnz() == 1 && r.entries()[0].0 == i && r.entries()[0].1.is_one())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter() {
                cols[*j].push((i, v.clone()));
            }
        }
        Mat {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn column(&self, j: usize) -> SparseVec {
        let pairs = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let v = r.get(j);
                (!v.is_zero()).then_some((i, v))
            })
            .collect();
        SparseVec::from_sorted(pairs)
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    /// Row vector times matrix: `v^T · self`.
    pub fn vec_mul(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in v.iter() {
            acc.push_scaled(&self.rows[*i], c);
        }
        acc.finish()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let pairs = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let x = r.dot(v);
                (!x.is_zero()).then_some((i, x))
            })
            .collect();
        SparseVec::from_sorted(pairs)
    }

    /// Matrix product, computed row by row in parallel.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.ncols, other.nrows,
            "matrix product shape mismatch {:?} x {:?}",
            self.shape(),
            other.shape()
        );
        let rows = par::map_slice(&self.rows, |r| other.vec_mul(r));
        Mat {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.ncols != other.nrows {
            return Err(EngineError::Dimension(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(self.mul(other))
    }

    fn zip_rows(&self, other: &Mat, c: &Scalar) -> Mat {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        Mat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.add_scaled(b, c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip_rows(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip_rows(other, &Scalar::from_int(-1))
    }

    pub fn add_scaled(&self, other: &Mat, c: &Scalar) -> Mat {
        self.zip_rows(other, c)
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.nrows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut acc = Scalar::zero();
        for (i, r) in self.rows.iter().enumerate() {
            acc += &r.get(i);
        }
        acc
    }

    /// Kronecker product in the row-major convention `(i, j) ↦ i·dim(b) + j`.
    pub fn kron(&self, b: &Mat) -> Mat {
        let (br, bc) = b.shape();
        let mut rows = Vec::with_capacity(self.nrows * br);
        for ar in &self.rows {
            for brow in &b.rows {
                let mut pairs = Vec::with_capacity(ar.nnz() * brow.nnz());
                for (i, x) in ar.iter() {
                    for (j, y) in brow.iter() {
                        pairs.push((i * bc + j, x * y));
                    }
                }
                rows.push(SparseVec::from_sorted(pairs));
            }
        }
        Mat {
            nrows: self.nrows * br,
            ncols: self.ncols * bc,
            rows,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat {
            nrows: idx.len(),
            ncols: self.ncols,
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.nrows, other.nrows, "hstack row mismatch");
        let off = self.ncols;
        Mat {
            nrows: self.nrows,
            ncols: self.ncols + other.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| {
                    let mut e = a.entries().to_vec();
                    e.extend(b.iter().map(|(j, v)| (j + off, v.clone())));
                    SparseVec::from_sorted(e)
                })
                .collect(),
        }
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.ncols, other.ncols, "vstack column mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Mat {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn direct_sum(&self, other: &Mat) -> Mat {
        Mat::block2(
            self,
            &Mat::zeros(self.nrows, other.ncols),
            &Mat::zeros(other.nrows, self.ncols),
            other,
        )
    }

    /// Entries of `self` that differ from `other`, in row-major order, at most `cap`.
    pub fn diff_positions(&self, other: &Mat, cap: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if a == b {
                continue;
            }
            for (j, _) in a.sub(b).iter() {
                out.push((i, *j));
                if out.len() >= cap {
                    return out;
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        super::rank(self)
    }

    /// Row-major nested `"num/den"` coordinate arrays.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_dense()
                .iter()
                .map(|r| serde_json::Value::Array(r.iter().map(super::scalar_to_json).collect()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_identities() {
        assert_eq!(Mat::identity(2).kron(&Mat::identity(3)), Mat::identity(6));
        let a = Mat::from_ints(&[&[1, 2], &[3, 4], &[0, 5]]);
        assert_eq!(a.kron(&Mat::from_ints(&[&[1]])), a);
    }

    #[test]
    fn swap_kron_swap_is_involutive_permutation() {
        let s = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        let p = s.kron(&s);
        let expected = Mat::from_ints(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        assert_eq!(p, expected);
        assert!(p.mul(&p).is_identity());
        assert!(!p.is_identity());
    }

    #[test]
    fn transpose_and_product() {
        let a = Mat::from_ints(&[&[1, 2, 0], &[0, 1, -1]]);
        let b = Mat::from_ints(&[&[1, 0], &[2, 1], &[0, 3]]);
        assert_eq!(a.mul(&b), Mat::from_ints(&[&[5, 2], &[2, -2]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        assert_eq!(a.column(2), SparseVec::single(1, Scalar::from_int(-1)));
    }
}
