//! Cocyclic objects in vector spaces: identities, Connes' operators and
//! the associated cohomology theories.
//!
//! Maps act on coordinate columns: `d(n, i)` is `C^{n-1} → C^n` with shape
//! `dim(n) × dim(n-1)`, `s(n, i)` is `C^{n+1} → C^n` and `t(n)` is
//! `C^n → C^n`. Levels are produced on demand and cached.

mod cohomology;

pub use cohomology::{
    cyclic_total, hochschild, ibs_check, lambda_cohomology, periodic, periodicity_pair,
    total_differential, tot_map, CohomologyResult, CohomologySpace, PeriodicResult, Theory,
};

use std::sync::{Arc, OnceLock};

use crate::error::{EngineError, Result};
use crate::linalg::{Mat, Scalar};
use crate::report::{CheckEntry, CheckReport};

/// Supplier of the structure maps of a cocyclic object up to `max_level`.
pub trait LevelSource: Send + Sync {
    fn max_level(&self) -> usize;
    fn dim(&self, n: usize) -> usize;
    fn t(&self, n: usize) -> Mat;
    /// `d^n_i`, for `1 ≤ n`, `0 ≤ i ≤ n`.
    fn d(&self, n: usize, i: usize) -> Mat;
    /// `s^n_i`, for `n + 1 ≤ max_level`, `0 ≤ i ≤ n`.
    fn s(&self, n: usize, i: usize) -> Mat;
}

/// Explicit matrices, level by level.
#[derive(Clone, Debug)]
pub struct ExplicitCocyclic {
    pub dims: Vec<usize>,
    pub t: Vec<Mat>,
    /// `d[n][i]`; `d[0]` is empty.
    pub d: Vec<Vec<Mat>>,
    /// `s[n][i]`; the last level has none.
    pub s: Vec<Vec<Mat>>,
}

impl ExplicitCocyclic {
    /// The cocyclic object of the ground field: every level is one-dimensional.
    pub fn point(max_level: usize) -> Self {
        let one = Mat::identity(1);
        ExplicitCocyclic {
            dims: vec![1; max_level + 1],
            t: vec![one.clone(); max_level + 1],
            d: (0..=max_level).map(|n| vec![one.clone(); if n == 0 { 0 } else { n + 1 }]).collect(),
            s: (0..=max_level)
                .map(|n| vec![one.clone(); if n < max_level { n + 1 } else { 0 }])
                .collect(),
        }
    }

    /// Materializes every map of `c`.
    pub fn from_object(c: &CocyclicObject) -> Self {
        let m = c.max_level();
        ExplicitCocyclic {
            dims: (0..=m).map(|n| c.dim(n)).collect(),
            t: (0..=m).map(|n| c.t(n).clone()).collect(),
            d: (0..=m)
                .map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| c.d(n, i).clone()).collect() })
                .collect(),
            s: (0..=m)
                .map(|n| if n < m { (0..=n).map(|i| c.s(n, i).clone()).collect() } else { vec![] })
                .collect(),
        }
    }
}

impl LevelSource for ExplicitCocyclic {
    fn max_level(&self) -> usize {
        self.dims.len() - 1
    }
    fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }
    fn t(&self, n: usize) -> Mat {
        self.t[n].clone()
    }
    fn d(&self, n: usize, i: usize) -> Mat {
        self.d[n][i].clone()
    }
    fn s(&self, n: usize, i: usize) -> Mat {
        self.s[n][i].clone()
    }
}

#[derive(Default)]
struct LevelCache {
    dim: OnceLock<usize>,
    t: OnceLock<Mat>,
    d: Vec<OnceLock<Mat>>,
    s: Vec<OnceLock<Mat>>,
    b: OnceLock<Mat>,
    bprime: OnceLock<Mat>,
    lambda: OnceLock<Mat>,
    norm: OnceLock<Mat>,
    connes: OnceLock<Mat>,
}

/// A cocyclic object with cached, lazily computed levels.
#[derive(Clone)]
pub struct CocyclicObject {
    src: Arc<dyn LevelSource>,
    cache: Arc<Vec<LevelCache>>,
}

impl std::fmt::Debug for CocyclicObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CocyclicObject(max_level = {})", self.max_level())
    }
}

impl CocyclicObject {
    pub fn new(src: Arc<dyn LevelSource>) -> Self {
        let m = src.max_level();
        let cache = (0..=m)
            .map(|n| LevelCache {
                d: (0..=n).map(|_| OnceLock::new()).collect(),
                s: (0..=n).map(|_| OnceLock::new()).collect(),
                ..Default::default()
            })
            .collect();
        CocyclicObject {
            src,
            cache: Arc::new(cache),
        }
    }

    pub fn explicit(e: ExplicitCocyclic) -> Self {
        CocyclicObject::new(Arc::new(e))
    }

    pub fn source(&self) -> &Arc<dyn LevelSource> {
        &self.src
    }

    pub fn max_level(&self) -> usize {
        self.src.max_level()
    }

    pub fn check_level(&self, n: usize) -> Result<()> {
        if n > self.max_level() {
            return Err(EngineError::DegreeOutOfRange {
                degree: n,
                max_level: self.max_level(),
            });
        }
        Ok(())
    }

    pub fn dim(&self, n: usize) -> usize {
        *self.cache[n].dim.get_or_init(|| self.src.dim(n))
    }

    pub fn t(&self, n: usize) -> &Mat {
        self.cache[n].t.get_or_init(|| self.src.t(n))
    }

    pub fn d(&self, n: usize, i: usize) -> &Mat {
        assert!(n >= 1 && i <= n);
        self.cache[n].d[i].get_or_init(|| self.src.d(n, i))
    }

    pub fn s(&self, n: usize, i: usize) -> &Mat {
        assert!(n < self.max_level() && i <= n);
        self.cache[n].s[i].get_or_init(|| self.src.s(n, i))
    }

    fn alternating(&self, n: usize, upto: usize) -> Mat {
        let mut acc = Mat::zeros(self.dim(n), self.dim(n - 1));
        for i in 0..=upto {
            let sign = Scalar::from_int(if i % 2 == 0 { 1 } else { -1 });
            acc = acc.add_scaled(self.d(n, i), &sign);
        }
        acc
    }

    /// `b_n = Σ_{i=0}^{n} (−1)^i d^n_i : C^{n−1} → C^n`.
    pub fn b(&self, n: usize) -> &Mat {
        self.cache[n].b.get_or_init(|| self.alternating(n, n))
    }

    /// `b′_n = Σ_{i=0}^{n−1} (−1)^i d^n_i`.
    pub fn bprime(&self, n: usize) -> &Mat {
        self.cache[n].bprime.get_or_init(|| self.alternating(n, n - 1))
    }

    /// `λ_n = (−1)^n t_n`.
    pub fn lambda(&self, n: usize) -> &Mat {
        self.cache[n].lambda.get_or_init(|| {
            if n % 2 == 0 {
                self.t(n).clone()
            } else {
                self.t(n).neg()
            }
        })
    }

    /// `1 − λ_n`.
    pub fn one_minus_lambda(&self, n: usize) -> Mat {
        Mat::identity(self.dim(n)).sub(self.lambda(n))
    }

    /// `N^n = Σ_{i=0}^{n} λ_n^i`.
    pub fn norm(&self, n: usize) -> &Mat {
        self.cache[n].norm.get_or_init(|| {
            let l = self.lambda(n);
            let mut pow = Mat::identity(self.dim(n));
            let mut acc = pow.clone();
            for _ in 0..n {
                pow = pow.mul(l);
                acc = acc.add(&pow);
            }
            acc
        })
    }

    /// `B_n = N^n s^n_n t_{n+1} (1 − λ_{n+1}) : C^{n+1} → C^n`.
    pub fn connes_b(&self, n: usize) -> &Mat {
        self.cache[n].connes.get_or_init(|| {
            self.norm(n)
                .mul(self.s(n, n))
                .mul(self.t(n + 1))
                .mul(&self.one_minus_lambda(n + 1))
        })
    }
}

fn record_eq(e: &mut CheckEntry, a: &Mat, b: &Mat, w: Vec<usize>) {
    e.record(a == b, w);
}

/// Checks every identity of a cocyclic object on all levels where the maps
/// involved exist.
pub fn verify_cocyclic(c: &CocyclicObject) -> CheckReport {
    let m = c.max_level();
    let mut dd = CheckEntry::new("d_j d_i = d_i d_(j-1), i<j");
    let mut ss = CheckEntry::new("s_j s_i = s_i s_(j+1), i<=j");
    let mut sd_lt = CheckEntry::new("s_j d_i = d_i s_(j-1), i<j");
    let mut sd_id = CheckEntry::new("s_j d_i = id, i=j or i=j+1");
    let mut sd_gt = CheckEntry::new("s_j d_i = d_(i-1) s_j, i>j+1");
    let mut td = CheckEntry::new("t d_i = d_(i-1) t, t d_0 = d_n");
    let mut ts = CheckEntry::new("t s_i = s_(i-1) t, t s_0 = s_n t^2");
    let mut tcyc = CheckEntry::new("t^(n+1) = id");

    for n in 2..=m {
        for j in 0..=n {
            for i in 0..j {
                let l = c.d(n, j).mul(c.d(n - 1, i));
                let r = c.d(n, i).mul(c.d(n - 1, j - 1));
                record_eq(&mut dd, &l, &r, vec![n, i, j]);
            }
        }
    }
    for n in 0..=m {
        if n + 2 <= m {
            for j in 0..=n {
                for i in 0..=j {
                    let l = c.s(n, j).mul(c.s(n + 1, i));
                    let r = c.s(n, i).mul(c.s(n + 1, j + 1));
                    record_eq(&mut ss, &l, &r, vec![n, i, j]);
                }
            }
        }
        if n < m {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let l = c.s(n, j).mul(c.d(n + 1, i));
                    if i < j {
                        let r = c.d(n, i).mul(c.s(n - 1, j - 1));
                        record_eq(&mut sd_lt, &l, &r, vec![n, i, j]);
                    } else if i == j || i == j + 1 {
                        sd_id.record(l.is_identity(), vec![n, i, j]);
                    } else {
                        let r = c.d(n, i - 1).mul(c.s(n - 1, j));
                        record_eq(&mut sd_gt, &l, &r, vec![n, i, j]);
                    }
                }
            }
        }
    }
    for n in 1..=m {
        for i in 0..=n {
            let l = c.t(n).mul(c.d(n, i));
            let r = if i >= 1 {
                c.d(n, i - 1).mul(c.t(n - 1))
            } else {
                c.d(n, n).clone()
            };
            record_eq(&mut td, &l, &r, vec![n, i]);
        }
    }
    for n in 0..m {
        for i in 0..=n {
            let l = c.t(n).mul(c.s(n, i));
            let r = if i >= 1 {
                c.s(n, i - 1).mul(c.t(n + 1))
            } else {
                c.s(n, n).mul(c.t(n + 1)).mul(c.t(n + 1))
            };
            record_eq(&mut ts, &l, &r, vec![n, i]);
        }
    }
    for n in 0..=m {
        tcyc.record(c.t(n).pow(n as u32 + 1).is_identity(), vec![n]);
    }
    CheckReport {
        entries: vec![dd, ss, sd_lt, sd_id, sd_gt, td, ts, tcyc],
    }
}

/// `b² = 0`, `b′² = 0`, `(1−λ)b = b′(1−λ)`, `bN = Nb′`, `B² = 0` and
/// `bB + Bb = 0` wherever defined.
pub fn verify_derived(c: &CocyclicObject) -> CheckReport {
    let m = c.max_level();
    let mut bb = CheckEntry::new("b^2 = 0");
    let mut bpbp = CheckEntry::new("b'^2 = 0");
    let mut lam = CheckEntry::new("(1-lambda) b = b' (1-lambda)");
    let mut norm = CheckEntry::new("b N = N b'");
    let mut cc = CheckEntry::new("B^2 = 0");
    let mut bc = CheckEntry::new("b B + B b = 0");
    for n in 2..=m {
        bb.record(c.b(n).mul(c.b(n - 1)).is_zero(), vec![n]);
        bpbp.record(c.bprime(n).mul(c.bprime(n - 1)).is_zero(), vec![n]);
    }
    for n in 1..=m {
        let l = c.one_minus_lambda(n).mul(c.b(n));
        let r = c.bprime(n).mul(&c.one_minus_lambda(n - 1));
        lam.record(l == r, vec![n]);
        let l = c.b(n).mul(c.norm(n - 1));
        let r = c.norm(n).mul(c.bprime(n));
        norm.record(l == r, vec![n]);
    }
    for n in 0..m.saturating_sub(1) {
        cc.record(c.connes_b(n).mul(c.connes_b(n + 1)).is_zero(), vec![n]);
    }
    for n in 0..m.saturating_sub(1) {
        // on C^{n+1}: b_{n+1} B_n + B_{n+1} b_{n+2}
        let l = c.b(n + 1).mul(c.connes_b(n));
        let r = c.connes_b(n + 1).mul(c.b(n + 2));
        bc.record(l.add(&r).is_zero(), vec![n + 1]);
    }
    CheckReport {
        entries: vec![bb, bpbp, lam, norm, cc, bc],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_object_passes() {
        let c = CocyclicObject::explicit(ExplicitCocyclic::point(4));
        let r = verify_cocyclic(&c);
        assert!(r.all_passed(), "{r}");
        assert!(verify_derived(&c).all_passed());
    }

    #[test]
    fn negated_t2_breaks_cyclicity_at_level_two() {
        let mut e = ExplicitCocyclic::point(3);
        e.t[2] = e.t[2].neg();
        let r = verify_cocyclic(&CocyclicObject::explicit(e));
        let cyc = r.get("t^(n+1) = id").unwrap();
        assert!(!cyc.passed);
        assert_eq!(cyc.witnesses, vec![vec![2]]);
    }
}
