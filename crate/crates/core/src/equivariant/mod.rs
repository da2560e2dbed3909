//! The equivariant cocyclic object `C•_H(B)`, its non-equivariant and
//! twisted variants, and maps between them.
//!
//! Level `n` lives inside the functionals on `L ⊗ B^{⊗(n+1)}`, where the leg
//! `L` is `H` in the equivariant case and the ground field otherwise. The
//! ambient basis is row-major with the leg most significant.

mod maps;
mod morita;

pub use maps::{
    check_morphism, omega_star, omega_star_matrix, pullback_matrix, rho_star_matrix, twist_of,
};
pub use morita::{
    homotopy_identity, inner_automorphism_check, morita_homotopy, phi_p_matrix, phi_psi_identity, psi_matrix, MoritaData,
};

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::actions::{ModuleAlgebra, RightModule};
use crate::cocyclic::{CocyclicObject, LevelSource};
use crate::error::{EngineError, Result};
use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::linalg::{self, Accumulator, Echelon, Kernel, Mat, Scalar, SparseVec};
use crate::par;
use crate::report::{CheckEntry, CheckReport};

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Clone, Debug)]
enum Kind {
    Equivariant {
        h: HopfPresentation,
        b: ModuleAlgebra,
        conj: RightModule,
        gens: Vec<usize>,
    },
    Twisted {
        theta: Mat,
    },
    Plain,
}

/// Cochain spaces and ambient structure maps of one of the three objects.
pub struct CochainModel {
    kind: Kind,
    alg: AlgebraPresentation,
    ldim: usize,
    max_level: usize,
    bases: Vec<OnceLock<Kernel>>,
    t_cache: Vec<OnceLock<Mat>>,
    d0_cache: Vec<OnceLock<Mat>>,
    checks: Mutex<BTreeMap<String, CheckEntry>>,
}

/// `leg ⊗ b₀ ⊗ … ⊗ b_n` on the row-major basis.
pub(crate) fn expand(leg: &SparseVec, bs: &[&SparseVec], bdim: usize) -> SparseVec {
    let mut cur: Vec<(usize, Scalar)> = leg.iter().cloned().collect();
    for b in bs {
        let mut next = Vec::with_capacity(cur.len() * b.nnz());
        for (i, c) in &cur {
            for (k, v) in b.iter() {
                next.push((i * bdim + k, c * v));
            }
        }
        cur = next;
    }
    SparseVec::from_sorted(cur)
}

/// Greedy list of basis elements generating `H` as an algebra.
pub(crate) fn algebra_generators(h: &HopfPresentation) -> Vec<usize> {
    h.alg.generators()
}

impl CochainModel {
    fn new(kind: Kind, alg: AlgebraPresentation, ldim: usize, max_level: usize, budget: usize) -> Result<Self> {
        let top = ambient(ldim, alg.dim, max_level);
        if top.is_none_or(|d| d > budget) {
            return Err(EngineError::SizeBudgetExceeded {
                dim: top.unwrap_or(usize::MAX),
                budget,
            });
        }
        Ok(CochainModel {
            kind,
            alg,
            ldim,
            max_level,
            bases: (0..=max_level).map(|_| OnceLock::new()).collect(),
            t_cache: (0..=max_level).map(|_| OnceLock::new()).collect(),
            d0_cache: (0..=max_level).map(|_| OnceLock::new()).collect(),
            checks: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn bdim(&self) -> usize {
        self.alg.dim
    }

    pub fn leg_dim(&self) -> usize {
        self.ldim
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.alg
    }

    pub fn hopf(&self) -> Option<&HopfPresentation> {
        match &self.kind {
            Kind::Equivariant { h, .. } => Some(h),
            _ => None,
        }
    }

    pub fn module_algebra(&self) -> Option<&ModuleAlgebra> {
        match &self.kind {
            Kind::Equivariant { b, .. } => Some(b),
            _ => None,
        }
    }

    pub fn ambient_dim(&self, n: usize) -> usize {
        ambient(self.ldim, self.alg.dim, n).expect("checked against the budget")
    }

    /// `(leg, [b₀, …, b_n])` of an ambient index at level `n`.
    pub fn decode(&self, n: usize, mut x: usize) -> (usize, Vec<usize>) {
        let d = self.alg.dim;
        let mut bs = vec![0; n + 1];
        for k in (0..=n).rev() {
            bs[k] = x % d;
            x /= d;
        }
        (x, bs)
    }

    pub fn encode(&self, leg: usize, bs: &[usize]) -> usize {
        bs.iter().fold(leg, |acc, &b| acc * self.alg.dim + b)
    }

    fn units(bs: &[usize]) -> Vec<SparseVec> {
        bs.iter().map(|&b| SparseVec::unit(b)).collect()
    }

    /// Image of an ambient basis tensor under the tensor map behind `t_n`.
    fn t_row(&self, n: usize, x: usize) -> SparseVec {
        let (w, bs) = self.decode(n, x);
        let rest = Self::units(&bs[..n]);
        let last = bs[n];
        let d = self.alg.dim;
        let mut factors: Vec<&SparseVec> = Vec::with_capacity(n + 1);
        match &self.kind {
            Kind::Equivariant { h, b, .. } => {
                let mut acc = Accumulator::new();
                for (a, m, c) in h.coproduct_terms(w) {
                    factors.clear();
                    factors.push(b.module.act_basis(last, m));
                    factors.extend(rest.iter());
                    acc.push_scaled(&expand(&SparseVec::unit(a), &factors, d), &c);
                }
                acc.finish()
            }
            Kind::Twisted { theta } => {
                factors.push(theta.row(last));
                factors.extend(rest.iter());
                expand(&SparseVec::unit(w), &factors, d)
            }
            Kind::Plain => {
                let e = SparseVec::unit(last);
                factors.push(&e);
                factors.extend(rest.iter());
                expand(&SparseVec::unit(w), &factors, d)
            }
        }
    }

    /// `b_i ⊗ b_{i+1} ↦ b_i b_{i+1}`, level `n` to level `n − 1`.
    fn d_row(&self, n: usize, i: usize, x: usize) -> SparseVec {
        let (w, bs) = self.decode(n, x);
        let us = Self::units(&bs);
        let prod = self.alg.basis_product(bs[i], bs[i + 1]);
        let mut factors: Vec<&SparseVec> = Vec::with_capacity(n);
        for (k, u) in us.iter().enumerate() {
            if k == i {
                factors.push(prod);
            } else if k != i + 1 {
                factors.push(u);
            }
        }
        expand(&SparseVec::unit(w), &factors, self.alg.dim)
    }

    /// Inserts `1` after `b_i`, level `n` to level `n + 1`.
    fn s_row(&self, i: usize, n: usize, x: usize) -> SparseVec {
        let (w, bs) = self.decode(n, x);
        let us = Self::units(&bs);
        let mut factors: Vec<&SparseVec> = Vec::with_capacity(n + 2);
        for (k, u) in us.iter().enumerate() {
            factors.push(u);
            if k == i {
                factors.push(&self.alg.unit);
            }
        }
        expand(&SparseVec::unit(w), &factors, self.alg.dim)
    }

    /// `x ◁ ω_j` on the ambient tensor space of level `n`, with `ε(ω_j)`.
    fn invariance_rows(&self, n: usize) -> Vec<(Box<dyn Fn(usize) -> SparseVec + Sync + '_>, Scalar)> {
        let d = self.alg.dim;
        match &self.kind {
            Kind::Equivariant { h, b, conj, gens } => gens
                .iter()
                .map(|&j| {
                    let terms = h.delta_terms(j, n + 1);
                    let f = move |x: usize| {
                        let (w, bs) = self.decode(n, x);
                        let mut acc = Accumulator::new();
                        for (legs, c) in &terms {
                            let factors: Vec<&SparseVec> = bs
                                .iter()
                                .enumerate()
                                .map(|(k, &bk)| b.module.act_basis(bk, legs[k + 1]))
                                .collect();
                            acc.push_scaled(&expand(conj.act_basis(w, legs[0]), &factors, d), c);
                        }
                        acc.finish()
                    };
                    (Box::new(f) as Box<dyn Fn(usize) -> SparseVec + Sync>, h.eps_basis(j))
                })
                .collect(),
            Kind::Twisted { theta } => {
                let f = move |x: usize| {
                    let (w, bs) = self.decode(n, x);
                    let factors: Vec<&SparseVec> = bs.iter().map(|&bk| theta.row(bk)).collect();
                    expand(&SparseVec::unit(w), &factors, d)
                };
                vec![(Box::new(f) as Box<dyn Fn(usize) -> SparseVec + Sync>, Scalar::one())]
            }
            Kind::Plain => vec![],
        }
    }

    /// Reduced basis of the invariant functionals at level `n`.
    pub fn basis(&self, n: usize) -> &Kernel {
        self.bases[n].get_or_init(|| {
            let dim = self.ambient_dim(n);
            let mut e = Echelon::new(dim);
            for (f, eps) in self.invariance_rows(n) {
                let rows = par::map_range(dim, |x| f(x).sub(&SparseVec::single(x, eps.clone())));
                for r in rows {
                    if !r.is_zero() {
                        e.insert(r);
                    }
                }
            }
            e.into_rref().kernel()
        })
    }

    fn record(&self, name: String, entry: CheckEntry) {
        self.checks.lock().unwrap().insert(name, entry);
    }

    /// Compresses the functional map `f ↦ f ∘ L` from level `src` to level
    /// `tgt`, checking that it preserves the invariant subspaces.
    fn compress(&self, name: String, tgt: usize, src: usize, row: impl Fn(usize) -> SparseVec + Sync) -> Mat {
        let (m, entry) = compress_between(&name, self.basis(src), self.basis(tgt), row);
        self.record(name, entry);
        m
    }

    pub fn t(&self, n: usize) -> Mat {
        self.t_cache[n]
            .get_or_init(|| self.compress(format!("t_{n}"), n, n, |x| self.t_row(n, x)))
            .clone()
    }

    pub fn d(&self, n: usize, i: usize) -> Mat {
        if i == 0 {
            return self.d0_cache[n]
                .get_or_init(|| self.compress(format!("d_{n}_0"), n, n - 1, |x| self.d_row(n, 0, x)))
                .clone();
        }
        if i == n {
            return self.t(n).mul(&self.d(n, 0));
        }
        self.compress(format!("d_{n}_{i}"), n, n - 1, |x| self.d_row(n, i, x))
    }

    pub fn s(&self, n: usize, i: usize) -> Mat {
        self.compress(format!("s_{n}_{i}"), n, n + 1, |x| self.s_row(i, n, x))
    }

    /// Results of every well-definedness check performed so far.
    pub fn well_definedness(&self) -> CheckReport {
        CheckReport {
            entries: self.checks.lock().unwrap().values().cloned().collect(),
        }
    }

    /// `f(ω⊗x) = f(ω₍₀₎ ⊗ x◁ω₍₁₎)` for every invariant functional at level `n`.
    pub fn t_lemma(&self, n: usize) -> CheckEntry {
        let mut e = CheckEntry::new(format!("f(w x) = f(w0 x<w1) at level {n}"));
        let Kind::Equivariant { h, b, .. } = &self.kind else {
            return e;
        };
        let d = self.alg.dim;
        let j = self.basis(n);
        let bad = par::map_range(self.ambient_dim(n), |x| {
            let (w, bs) = self.decode(n, x);
            let mut acc = Accumulator::new();
            for (a, m, c) in h.coproduct_terms(w) {
                for (legs, c2) in h.delta_terms(m, n) {
                    let factors: Vec<&SparseVec> = bs
                        .iter()
                        .enumerate()
                        .map(|(k, &bk)| b.module.act_basis(bk, legs[k]))
                        .collect();
                    acc.push_scaled(&expand(&SparseVec::unit(a), &factors, d), &(&c * &c2));
                }
            }
            j.basis.vec_mul(&acc.finish()) != *j.basis.row(x)
        });
        for (x, b) in bad.into_iter().enumerate() {
            e.record(!b, vec![n, x]);
        }
        e
    }
}

fn ambient(ldim: usize, bdim: usize, n: usize) -> Option<usize> {
    bdim.checked_pow(n as u32 + 1)?.checked_mul(ldim)
}

/// Compressed matrix of `f ↦ f∘L` between invariant subspaces given by
/// reduced bases, with the check that it maps `src` into `tgt`.
pub(crate) fn compress_between(
    name: &str,
    src: &Kernel,
    tgt: &Kernel,
    row: impl Fn(usize) -> SparseVec + Sync,
) -> (Mat, CheckEntry) {
    let rows = par::map_slice(&tgt.free, |&x| src.basis.vec_mul(&row(x)));
    let m = Mat::from_rows(rows, src.dim());
    let bad = par::map_range(tgt.ambient_dim(), |x| {
        src.basis.vec_mul(&row(x)) != m.vec_mul(tgt.basis.row(x))
    });
    let mut entry = CheckEntry::new(format!("{name} preserves invariants"));
    for (x, b) in bad.into_iter().enumerate() {
        entry.record(!b, vec![x]);
    }
    if tgt.ambient_dim() == 0 {
        entry.record(true, vec![]);
    }
    (m, entry)
}

impl LevelSource for CochainModel {
    fn max_level(&self) -> usize {
        self.max_level
    }
    fn dim(&self, n: usize) -> usize {
        self.basis(n).dim()
    }
    fn t(&self, n: usize) -> Mat {
        CochainModel::t(self, n)
    }
    fn d(&self, n: usize, i: usize) -> Mat {
        CochainModel::d(self, n, i)
    }
    fn s(&self, n: usize, i: usize) -> Mat {
        CochainModel::s(self, n, i)
    }
}

/// A built cochain model together with its cocyclic object.
#[derive(Clone)]
pub struct EquivariantComplex {
    pub model: Arc<CochainModel>,
    pub object: CocyclicObject,
}

impl std::fmt::Debug for EquivariantComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EquivariantComplex(max_level = {})", self.model.max_level)
    }
}

impl EquivariantComplex {
    fn from_model(model: CochainModel) -> Self {
        let model = Arc::new(model);
        let object = CocyclicObject::new(model.clone());
        EquivariantComplex { model, object }
    }

    pub fn max_level(&self) -> usize {
        self.model.max_level
    }

    pub fn basis(&self, n: usize) -> &Kernel {
        self.model.basis(n)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.object.dim(n)
    }

    /// The ambient functional with the given coordinates.
    pub fn lift(&self, n: usize, coords: &SparseVec) -> SparseVec {
        self.basis(n).basis.mul_vec(coords)
    }

    /// Coordinates of an ambient functional; `NotInvariant` if it is not in
    /// the cochain space.
    pub fn coords(&self, n: usize, f: &SparseVec) -> Result<SparseVec> {
        let k = self.basis(n);
        if !k.contains(f) {
            return Err(EngineError::NotInvariant(format!("functional at level {n}")));
        }
        Ok(k.coords(f))
    }

    /// Forces every structure map up to `level` and returns the
    /// well-definedness checks.
    pub fn materialize(&self, level: usize) -> CheckReport {
        let c = &self.object;
        for n in 0..=level.min(self.max_level()) {
            c.t(n);
            if n >= 1 {
                for i in 0..=n {
                    c.d(n, i);
                }
            }
            if n < self.max_level() {
                for i in 0..=n {
                    c.s(n, i);
                }
            }
        }
        self.model.well_definedness()
    }
}

/// `C•_H(B)` up to level `max_level`.
pub fn build_equivariant(
    b: &ModuleAlgebra,
    h: &HopfPresentation,
    max_level: usize,
    budget: usize,
) -> Result<EquivariantComplex> {
    let kind = Kind::Equivariant {
        h: h.clone(),
        b: b.clone(),
        conj: RightModule::conjugation(h),
        gens: algebra_generators(h),
    };
    let model = CochainModel::new(kind, b.alg.clone(), h.dim(), max_level, budget)?;
    Ok(EquivariantComplex::from_model(model))
}

/// The classical cyclic object of `B`.
pub fn build_nonequivariant(
    alg: &AlgebraPresentation,
    max_level: usize,
    budget: usize,
) -> Result<EquivariantComplex> {
    let model = CochainModel::new(Kind::Plain, alg.clone(), 1, max_level, budget)?;
    Ok(EquivariantComplex::from_model(model))
}

/// The `θ`-twisted object on `θ`-invariant cochains; `theta` holds images
/// of basis elements in its rows.
pub fn build_twisted(
    alg: &AlgebraPresentation,
    theta: &Mat,
    max_level: usize,
    budget: usize,
) -> Result<EquivariantComplex> {
    check_automorphism(alg, theta)?;
    let model = CochainModel::new(
        Kind::Twisted {
            theta: theta.clone(),
        },
        alg.clone(),
        1,
        max_level,
        budget,
    )?;
    Ok(EquivariantComplex::from_model(model))
}

pub fn check_automorphism(alg: &AlgebraPresentation, theta: &Mat) -> Result<()> {
    let d = alg.dim;
    if theta.shape() != (d, d) {
        return Err(EngineError::TwistNotAutomorphism(format!(
            "expected a {d}x{d} matrix, got {:?}",
            theta.shape()
        )));
    }
    if linalg::rank(theta) != d {
        return Err(EngineError::TwistNotAutomorphism("not invertible".into()));
    }
    if theta.vec_mul(&alg.unit) != alg.unit {
        return Err(EngineError::TwistNotAutomorphism("does not fix the unit".into()));
    }
    for i in 0..d {
        for j in 0..d {
            let l = theta.vec_mul(alg.basis_product(i, j));
            let r = alg.mul(theta.row(i), theta.row(j));
            if l != r {
                return Err(EngineError::TwistNotAutomorphism(format!(
                    "not multiplicative on basis pair ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}
