//! Sparse Gaussian elimination over exact scalars.

use super::{Mat, Scalar, SparseVec};

const NO_PIVOT: usize = usize::MAX;

/// Incremental row echelon form. Every stored row has leading entry `1`
/// and no entries in columns that were already pivots when it was inserted.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivot_of_col: Vec<usize>,
    rows: Vec<SparseVec>,
    pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivot_of_col: vec![NO_PIVOT; ncols],
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NO_PIVOT
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut start = 0;
        loop {
            let hit = v.entries()[start..]
                .iter()
                .position(|(c, _)| self.pivot_of_col[*c] != NO_PIVOT);
            let Some(off) = hit else { break };
            let (col, coef) = v.entries()[start + off].clone();
            let prow = &self.rows[self.pivot_of_col[col]];
            v = v.add_scaled(prow, &(-coef));
            start = v.entries().partition_point(|(c, _)| *c <= col);
        }
        v
    }

    /// Inserts a row; returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((col, lead)) = v.leading().cloned() else {
            return false;
        };
        let v = v.scale(&lead.inv());
        self.pivot_of_col[col] = self.rows.len();
        self.rows.push(v);
        self.pivot_cols.push(col);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn into_rref(self) -> Rref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.pivot_cols[k]);
        let mut reduced: Vec<Option<SparseVec>> = vec![None; self.rows.len()];
        for &k in order.iter().rev() {
            let row = &self.rows[k];
            let own = self.pivot_cols[k];
            let hits: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(c, _)| *c != own && self.pivot_of_col[*c] != NO_PIVOT)
                .cloned()
                .collect();
            let mut out = row.clone();
            for (c, coef) in hits {
                let other = reduced[self.pivot_of_col[c]]
                    .as_ref()
                    .expect("higher pivots reduced first");
                out = out.add_scaled(other, &(-coef));
            }
            reduced[k] = Some(out);
        }
        let mut pivot_cols = Vec::with_capacity(order.len());
        let mut rows = Vec::with_capacity(order.len());
        for k in order {
            pivot_cols.push(self.pivot_cols[k]);
            rows.push(reduced[k].take().unwrap());
        }
        Rref {
            ncols: self.ncols,
            pivot_cols,
            rows,
        }
    }
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    pub pivot_cols: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

impl Rref {
    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Rref {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r.clone());
        }
        e.into_rref()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Null space basis: one vector per free column `j`, equal to `1` at `j`
    /// and `0` at every other free column.
    pub fn kernel(&self) -> Kernel {
        let free = self.free_cols();
        let mut slot = vec![usize::MAX; self.ncols];
        for (k, &j) in free.iter().enumerate() {
            slot[j] = k;
        }
        let mut rows: Vec<SparseVec> = vec![SparseVec::new(); self.ncols];
        for (k, &j) in free.iter().enumerate() {
            rows[j] = SparseVec::unit(k);
        }
        for (r, &c) in self.rows.iter().zip(&self.pivot_cols) {
            rows[c] = SparseVec::from_pairs(
                r.iter()
                    .filter(|(j, _)| *j != c)
                    .map(|(j, v)| (slot[*j], -v))
                    .collect(),
            );
        }
        Kernel {
            basis: Mat::from_rows(rows, free.len()),
            free,
        }
    }
}

/// A subspace of `k^n` presented by a basis in reduced form: the inclusion
/// matrix `basis` (`n × k`) is the identity on the rows listed in `free`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub basis: Mat,
    pub free: Vec<usize>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// The whole space.
    pub fn full(n: usize) -> Kernel {
        Kernel {
            basis: Mat::identity(n),
            free: (0..n).collect(),
        }
    }

    /// Coordinates of a vector assumed to lie in the subspace.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (k, &j) in self.free.iter().enumerate() {
            let x = v.get(j);
            if !x.is_zero() {
                out.push((k, x));
            }
        }
        SparseVec::from_sorted(out)
    }

    /// Coordinates of every column of `m` (ambient rows), as a `k × cols` matrix.
    pub fn coords_of_columns(&self, m: &Mat) -> Mat {
        m.select_rows(&self.free)
    }

    /// Whether `basis * coords_of_columns(m) == m`, i.e. every column of `m`
    /// lies in the subspace.
    pub fn contains_columns(&self, m: &Mat) -> bool {
        self.basis.mul(&self.coords_of_columns(m)) == *m
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.basis.mul_vec(&self.coords(v)) == *v
    }

    /// Basis vectors as sparse columns.
    pub fn vectors(&self) -> Vec<SparseVec> {
        self.basis.columns()
    }
}
