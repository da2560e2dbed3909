//! Hochschild, cyclic, λ- and periodic cohomology of a cocyclic object.

use serde::Serialize;

use super::CocyclicObject;
use crate::error::{EngineError, Result};
use crate::linalg::{self, Kernel, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    Hochschild,
    Cyclic,
    Lambda,
    PeriodicEven,
    PeriodicOdd,
    Twisted,
}

/// Cocycles modulo coboundaries inside a coordinate space.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub ambient: usize,
    pub cocycles: Kernel,
    pub boundaries: Vec<SparseVec>,
    pub reps: Vec<SparseVec>,
}

impl CohomologySpace {
    /// `cocycles / span(boundaries)`; representatives are the cocycle basis
    /// vectors, in pivot order, that extend a boundary basis.
    pub fn new(cocycles: Kernel, boundaries: Vec<SparseVec>) -> Self {
        let ambient = cocycles.ambient_dim();
        let cands = cocycles.vectors();
        let picked = linalg::extend_basis(ambient, &boundaries, &cands);
        let reps = picked.into_iter().map(|i| cands[i].clone()).collect();
        CohomologySpace {
            ambient,
            cocycles,
            boundaries,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `v` on the representatives.
    pub fn class_of(&self, v: &SparseVec) -> Result<SparseVec> {
        if !self.cocycles.contains(v) {
            return Err(EngineError::NotACocycle(format!(
                "vector with {} nonzero entries is not closed",
                v.nnz()
            )));
        }
        if self.reps.is_empty() {
            return Ok(SparseVec::new());
        }
        let mut cols = self.reps.clone();
        cols.extend(self.boundaries.iter().cloned());
        let x = linalg::solve(&Mat::from_columns(&cols, self.ambient), v)?;
        let k = self.reps.len();
        Ok(x.remap(|i| (i < k).then_some(i)))
    }

    pub fn is_trivial_class(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.class_of(v)?.is_zero())
    }

    /// Matrix (target classes × source classes) of the map induced by `f`.
    pub fn induced(
        &self,
        target: &CohomologySpace,
        f: impl Fn(&SparseVec) -> SparseVec,
    ) -> Result<Mat> {
        let cols = self
            .reps
            .iter()
            .map(|r| target.class_of(&f(r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_columns(&cols, target.dim()))
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub theory: Theory,
    pub degree: usize,
    pub space: CohomologySpace,
    pub stabilized: Option<bool>,
}

impl CohomologyResult {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.space.reps
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "theory": self.theory,
            "degree": self.degree,
            "dim": self.dim(),
            "representatives": self
                .space
                .reps
                .iter()
                .map(|r| linalg::vec_to_json(r, self.space.ambient))
                .collect::<Vec<_>>(),
        });
        if let Some(s) = self.stabilized {
            v["stabilized"] = serde_json::Value::Bool(s);
        }
        v
    }
}

fn need_level(c: &CocyclicObject, n: usize) -> Result<()> {
    c.check_level(n)
}

fn guard_total(c: &CocyclicObject, n: usize) -> Result<()> {
    if n + 2 > c.max_level() {
        return Err(EngineError::TruncationUnsafe {
            degree: n,
            needed: n + 2,
            max_level: c.max_level(),
        });
    }
    Ok(())
}

/// `HH^n = ker b_{n+1} / im b_n`.
pub fn hochschild(c: &CocyclicObject, n: usize) -> Result<CohomologyResult> {
    need_level(c, n + 1)?;
    let cocycles = linalg::kernel(c.b(n + 1));
    let boundaries = if n == 0 { vec![] } else { linalg::image_basis(c.b(n)) };
    Ok(CohomologyResult {
        theory: Theory::Hochschild,
        degree: n,
        space: CohomologySpace::new(cocycles, boundaries),
        stabilized: None,
    })
}

/// `H^n_λ` of the subcomplex `(ker(1 − λ), b)`, in the coordinates of `C^n`.
pub fn lambda_cohomology(c: &CocyclicObject, n: usize) -> Result<CohomologyResult> {
    need_level(c, n + 1)?;
    let cocycles = linalg::joint_kernel(&[c.b(n + 1), &c.one_minus_lambda(n)]);
    let boundaries = if n == 0 {
        vec![]
    } else {
        let prev = linalg::kernel(&c.one_minus_lambda(n - 1));
        linalg::image_basis(&c.b(n).mul(&prev.basis))
    };
    Ok(CohomologyResult {
        theory: Theory::Lambda,
        degree: n,
        space: CohomologySpace::new(cocycles, boundaries),
        stabilized: None,
    })
}

/// Offsets of the blocks of `Tot^n = ⊕_p C^{n−p}` (column `p`).
pub(crate) fn tot_offsets(c: &CocyclicObject, n: usize) -> Vec<usize> {
    let mut off = Vec::with_capacity(n + 2);
    let mut acc = 0;
    for p in 0..=n {
        off.push(acc);
        acc += c.dim(n - p);
    }
    off.push(acc);
    off
}

fn place(rows: &mut [Vec<(usize, Scalar)>], r0: usize, c0: usize, m: &Mat, neg: bool) {
    for (i, row) in m.rows().iter().enumerate() {
        for (j, v) in row.iter() {
            let v = if neg { -v } else { v.clone() };
            rows[r0 + i].push((c0 + j, v));
        }
    }
}

/// `D: Tot^n → Tot^{n+1}` of the bicomplex with columns alternating
/// `b`, `−b′` and rows alternating `1 − λ`, `N`.
pub fn total_differential(c: &CocyclicObject, n: usize) -> Mat {
    let src = tot_offsets(c, n);
    let tgt = tot_offsets(c, n + 1);
    let mut rows = vec![Vec::new(); tgt[n + 2]];
    for p in 0..=n {
        let q = n - p;
        if p % 2 == 0 {
            place(&mut rows, tgt[p], src[p], c.b(q + 1), false);
            place(&mut rows, tgt[p + 1], src[p], &c.one_minus_lambda(q), false);
        } else {
            place(&mut rows, tgt[p], src[p], c.bprime(q + 1), true);
            place(&mut rows, tgt[p + 1], src[p], c.norm(q), false);
        }
    }
    Mat::from_rows(
        rows.into_iter().map(SparseVec::from_pairs).collect(),
        src[n + 1],
    )
}

/// `HC^n` from the total complex; refused beyond the truncation guard.
pub fn cyclic_total(c: &CocyclicObject, n: usize) -> Result<CohomologyResult> {
    guard_total(c, n)?;
    let cocycles = linalg::kernel(&total_differential(c, n));
    let boundaries = if n == 0 {
        vec![]
    } else {
        linalg::image_basis(&total_differential(c, n - 1))
    };
    Ok(CohomologyResult {
        theory: Theory::Cyclic,
        degree: n,
        space: CohomologySpace::new(cocycles, boundaries),
        stabilized: None,
    })
}

/// Applies cochain maps `maps[q]: C^q(a) → C^q(b)` blockwise to a vector of
/// `Tot^n(a)`.
pub fn tot_map(a: &CocyclicObject, b: &CocyclicObject, n: usize, maps: &[Mat], v: &SparseVec) -> SparseVec {
    let from = tot_offsets(a, n);
    let to = tot_offsets(b, n);
    let mut acc = linalg::Accumulator::new();
    for p in 0..=n {
        let block = v.remap(|i| (i >= from[p] && i < from[p + 1]).then(|| i - from[p]));
        if block.is_zero() {
            continue;
        }
        let moved = maps[n - p].mul_vec(&block).remap(|i| Some(i + to[p]));
        acc.push_scaled(&moved, &Scalar::one());
    }
    acc.finish()
}

fn shift_two(c: &CocyclicObject, n: usize, v: &SparseVec) -> SparseVec {
    let from = tot_offsets(c, n);
    let to = tot_offsets(c, n + 2);
    v.remap(|i| {
        let p = from.partition_point(|&o| o <= i) - 1;
        Some(to[p + 2] + (i - from[p]))
    })
}

fn s_matrix(
    c: &CocyclicObject,
    n: usize,
    lo: &CohomologyResult,
    hi: &CohomologyResult,
) -> Result<Mat> {
    lo.space.induced(&hi.space, |r| shift_two(c, n, r))
}

/// The periodicity map `S: HC^n → HC^{n+2}` on representatives, realized by
/// shifting the total complex two columns to the right.
pub fn periodicity_pair(c: &CocyclicObject, n: usize) -> Result<Mat> {
    guard_total(c, n + 2)?;
    let lo = cyclic_total(c, n)?;
    let hi = cyclic_total(c, n + 2)?;
    s_matrix(c, n, &lo, &hi)
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicResult {
    pub theory: Theory,
    pub dim: usize,
    pub stabilized: bool,
    /// Degrees `m, m+2, m+4` whose two `S` maps were found to be isomorphisms.
    pub window: [usize; 3],
}

fn is_iso(m: &Mat) -> bool {
    m.is_square() && linalg::rank(m) == m.nrows()
}

/// `HP^parity` as the stabilized value of `HC^{2k+parity}` along `S`, read
/// off the highest degrees inside the trusted window.
pub fn periodic(c: &CocyclicObject, parity: usize) -> Result<PeriodicResult> {
    let top = c.max_level().checked_sub(2).ok_or(EngineError::NotStabilized)?;
    if top < 4 + parity {
        return Err(EngineError::NotStabilized);
    }
    let mut m = top - 4;
    if m % 2 != parity % 2 {
        m -= 1;
    }
    let hc: Vec<_> = [m, m + 2, m + 4]
        .iter()
        .map(|&k| cyclic_total(c, k))
        .collect::<Result<_>>()?;
    let s1 = s_matrix(c, m, &hc[0], &hc[1])?;
    let s2 = s_matrix(c, m + 2, &hc[1], &hc[2])?;
    if !(is_iso(&s1) && is_iso(&s2)) {
        return Err(EngineError::NotStabilized);
    }
    Ok(PeriodicResult {
        theory: if parity % 2 == 0 {
            Theory::PeriodicEven
        } else {
            Theory::PeriodicOdd
        },
        dim: hc[2].dim(),
        stabilized: true,
        window: [m, m + 2, m + 4],
    })
}

/// Rank bookkeeping for `HC^{n−2} →S HC^n →I HH^n →B HC^{n−1} →S HC^{n+1}`
/// in every degree where all groups are trusted.
pub fn ibs_check(c: &CocyclicObject) -> Result<CheckReport> {
    let mut exact_hh = CheckEntry::new("rank I + rank B = dim HH^n");
    let mut exact_hc_low = CheckEntry::new("rank B + rank S = dim HC^(n-1)");
    let mut exact_hc = CheckEntry::new("rank S + rank I = dim HC^n");
    let mut zero = CheckEntry::new("consecutive maps compose to zero");
    let top = c.max_level().saturating_sub(2);
    for n in 1..top {
        let hh = hochschild(c, n)?;
        let hc_n = cyclic_total(c, n)?;
        let hc_lo = cyclic_total(c, n - 1)?;
        let hc_hi = cyclic_total(c, n + 1)?;
        let dn = c.dim(n);
        let i_map = hc_n.space.induced(&hh.space, |r| r.remap(|i| (i < dn).then_some(i)))?;
        let b_map = hh.space.induced(&hc_lo.space, |r| c.connes_b(n - 1).mul_vec(r))?;
        let s_up = s_matrix(c, n - 1, &hc_lo, &hc_hi)?;
        let s_in = if n >= 2 {
            let hc_ll = cyclic_total(c, n - 2)?;
            s_matrix(c, n - 2, &hc_ll, &hc_n)?
        } else {
            Mat::zeros(hc_n.dim(), 0)
        };
        let (ri, rb, rs, rsi) = (
            linalg::rank(&i_map),
            linalg::rank(&b_map),
            linalg::rank(&s_up),
            linalg::rank(&s_in),
        );
        exact_hh.record(ri + rb == hh.dim(), vec![n]);
        exact_hc_low.record(rb + rs == hc_lo.dim(), vec![n]);
        exact_hc.record(rsi + ri == hc_n.dim(), vec![n]);
        let z = b_map.mul(&i_map).is_zero()
            && s_up.mul(&b_map).is_zero()
            && i_map.mul(&s_in).is_zero();
        zero.record(z, vec![n]);
    }
    Ok(CheckReport {
        entries: vec![exact_hh, exact_hc_low, exact_hc, zero],
    })
}
