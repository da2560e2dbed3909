//! Exact linear algebra: scalars, sparse vectors and matrices, elimination.

mod elim;
mod mat;
pub mod poly;
mod scalar;
mod sparse;

pub use elim::{Echelon, Kernel, Rref};
pub use mat::Mat;
pub use scalar::{parse_rational, NumberField, Scalar};
pub use sparse::{Accumulator, SparseVec};

use crate::error::{EngineError, Result};

/// Rank of `m`.
pub fn rank(m: &Mat) -> usize {
    // Eliminate along the shorter side.
    let (r, c) = m.shape();
    let t;
    let src = if c > r {
        t = m.transpose();
        &t
    } else {
        m
    };
    let mut e = Echelon::new(src.ncols());
    for row in src.rows() {
        e.insert(row.clone());
        if e.rank() == src.ncols() {
            break;
        }
    }
    e.rank()
}

/// `{v : m·v = 0}` in reduced form.
pub fn kernel(m: &Mat) -> Kernel {
    let k = Rref::from_rows(m.ncols(), m.rows()).kernel();
    debug_assert_eq!(k.dim() + rank(m), m.ncols());
    k
}

/// Kernel basis as a list of column vectors.
pub fn kernel_basis(m: &Mat) -> Vec<SparseVec> {
    kernel(m).vectors()
}

/// `{v : v^T·m = 0}`.
pub fn left_kernel(m: &Mat) -> Kernel {
    kernel(&m.transpose())
}

/// Intersection of the kernels of several maps with a common source.
pub fn joint_kernel(maps: &[&Mat]) -> Kernel {
    let n = maps.first().map_or(0, |m| m.ncols());
    let mut e = Echelon::new(n);
    for m in maps {
        assert_eq!(m.ncols(), n);
        for r in m.rows() {
            e.insert(r.clone());
        }
    }
    e.into_rref().kernel()
}

/// Some `x` with `m·x = rhs`.
pub fn solve(m: &Mat, rhs: &SparseVec) -> Result<SparseVec> {
    let cols = solve_many(m, &Mat::from_columns(std::slice::from_ref(rhs), m.nrows()))?;
    Ok(cols.column(0))
}

/// Some `X` with `m·X = rhs`; free variables are set to zero.
pub fn solve_many(m: &Mat, rhs: &Mat) -> Result<Mat> {
    if m.nrows() != rhs.nrows() {
        return Err(EngineError::Dimension(format!(
            "system has {} equations but right-hand side has {} rows",
            m.nrows(),
            rhs.nrows()
        )));
    }
    let n = m.ncols();
    let aug = m.hstack(rhs);
    let rref = Rref::from_rows(aug.ncols(), aug.rows());
    let mut out = vec![SparseVec::new(); n];
    for (row, &c) in rref.rows.iter().zip(&rref.pivot_cols) {
        if c >= n {
            return Err(EngineError::Inconsistent);
        }
        out[c] = SparseVec::from_sorted(
            row.iter()
                .filter(|(j, _)| *j >= n)
                .map(|(j, v)| (j - n, v.clone()))
                .collect(),
        );
    }
    Ok(Mat::from_rows(out, rhs.ncols()))
}

pub fn inverse(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(EngineError::Dimension(format!(
            "inverse of non-square {:?} matrix",
            m.shape()
        )));
    }
    if rank(m) != m.nrows() {
        return Err(EngineError::NotInvertible(format!(
            "matrix of size {} has rank {}",
            m.nrows(),
            rank(m)
        )));
    }
    solve_many(m, &Mat::identity(m.nrows()))
}

/// Basis of the column space, in reduced form.
pub fn image_basis(m: &Mat) -> Vec<SparseVec> {
    Rref::from_rows(m.nrows(), m.transpose().rows()).rows
}

/// The span of `vecs` in `k^dim`, as a reduced basis whose coordinates are
/// read off at the pivot positions.
pub fn span(dim: usize, vecs: &[SparseVec]) -> Kernel {
    let rref = Rref::from_rows(dim, vecs);
    Kernel {
        basis: Mat::from_columns(&rref.rows, dim),
        free: rref.pivot_cols,
    }
}

/// Indices of `candidates` that extend `base` to a larger independent set,
/// chosen greedily in order.
pub fn extend_basis(dim: usize, base: &[SparseVec], candidates: &[SparseVec]) -> Vec<usize> {
    let mut e = Echelon::new(dim);
    for v in base {
        e.insert(v.clone());
    }
    candidates
        .iter()
        .enumerate()
        .filter_map(|(i, v)| e.insert(v.clone()).then_some(i))
        .collect()
}

pub fn scalar_to_json(s: &Scalar) -> serde_json::Value {
    serde_json::Value::Array(
        s.to_strings()
            .into_iter()
            .map(serde_json::Value::String)
            .collect(),
    )
}

pub fn vec_to_json(v: &SparseVec, len: usize) -> serde_json::Value {
    serde_json::Value::Array(v.to_dense(len).iter().map(scalar_to_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_zero_is_standard_basis() {
        let k = kernel_basis(&Mat::zeros(2, 2));
        assert_eq!(k, vec![SparseVec::unit(0), SparseVec::unit(1)]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&Mat::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Mat::from_ints(&[&[1, 1], &[2, 2]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![ints(&[-1, 1])]);
        assert!(m.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn kernel_reduced_form() {
        let m = Mat::from_ints(&[&[1, 2, 0, 3], &[0, 0, 1, 4]]);
        let k = kernel(&m);
        assert_eq!(k.free, vec![1, 3]);
        for v in k.vectors() {
            assert!(m.mul_vec(&v).is_zero());
        }
        assert_eq!(k.coords(&ints(&[-5, 1, -4, 1])), ints(&[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let v = ints(&[3, -1, 7]);
        assert_eq!(solve(&Mat::identity(3), &v).unwrap(), v);
        assert_eq!(
            solve(&Mat::zeros(2, 2), &ints(&[0, 1])),
            Err(EngineError::Inconsistent)
        );
        let x = solve(&Mat::from_ints(&[&[2]]), &ints(&[3])).unwrap();
        assert_eq!(x, SparseVec::single(0, Scalar::from_frac(3, 2)));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_ints(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert!(inverse(&Mat::from_ints(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn rank_wide_and_tall() {
        let m = Mat::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&m.transpose()), 1);
        assert_eq!(image_basis(&m).len(), 1);
    }

    #[test]
    fn extend_basis_skips_dependent() {
        let base = vec![ints(&[1, 1, 0])];
        let cand = vec![ints(&[2, 2, 0]), ints(&[0, 1, 0]), ints(&[1, 0, 0])];
        assert_eq!(extend_basis(3, &base, &cand), vec![1]);
    }
}
