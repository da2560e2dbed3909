//! Pullbacks between cochain models: `ω_*`, `ρ_*` and morphism checks.

use super::{compress_between, expand, EquivariantComplex};
use crate::actions::ModuleAlgebra;
use crate::cocyclic::CocyclicObject;
use crate::error::{EngineError, Result};
use crate::linalg::{Kernel, Mat, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// Compressed matrix of `f ↦ f∘L` from level `n` of `src` to level `n` of
/// `tgt`, where `row(x)` is `L` applied to the ambient basis tensor `x` of
/// `tgt`.
pub fn pullback_matrix(
    name: &str,
    src: &EquivariantComplex,
    tgt: &EquivariantComplex,
    n: usize,
    row: impl Fn(usize) -> SparseVec + Sync,
) -> Result<Mat> {
    let (m, entry) = compress_between(name, src.basis(n), tgt.basis(n), row);
    if !entry.passed {
        return Err(EngineError::NotInvariant(format!(
            "{name} at level {n}, witnesses {:?}",
            entry.witnesses
        )));
    }
    Ok(m)
}

/// `(ω_*f)(b₀⊗…⊗b_n) = f(ω⊗b₀⊗…⊗b_n)` from `C^n_H(B)` to the classical
/// cochains of `B^H`, whose basis in `B` is `incl`.
pub fn omega_star_matrix(
    src: &EquivariantComplex,
    tgt: &EquivariantComplex,
    incl: &Kernel,
    omega: &SparseVec,
    n: usize,
) -> Result<Mat> {
    let cols = incl.vectors();
    let bdim = src.model.bdim();
    pullback_matrix("omega_*", src, tgt, n, |x| {
        let (_, bs) = tgt.model.decode(n, x);
        let factors: Vec<&SparseVec> = bs.iter().map(|&b| &cols[b]).collect();
        expand(omega, &factors, bdim)
    })
}

/// `ω_*` applied to one cochain given in coordinates.
pub fn omega_star(
    src: &EquivariantComplex,
    tgt: &EquivariantComplex,
    incl: &Kernel,
    omega: &SparseVec,
    n: usize,
    f: &SparseVec,
) -> Result<SparseVec> {
    Ok(omega_star_matrix(src, tgt, incl, omega, n)?.mul_vec(f))
}

/// `(ρ_*φ)(b₀⊗…⊗b_n) = φ(ρ⊗b₀⊗…⊗b_n)` into the `θ_ρ`-twisted object.
pub fn rho_star_matrix(
    src: &EquivariantComplex,
    tgt: &EquivariantComplex,
    rho: &SparseVec,
    n: usize,
) -> Result<Mat> {
    let bdim = src.model.bdim();
    pullback_matrix("rho_*", src, tgt, n, |x| {
        let (_, bs) = tgt.model.decode(n, x);
        let us: Vec<SparseVec> = bs.iter().map(|&b| SparseVec::unit(b)).collect();
        let factors: Vec<&SparseVec> = us.iter().collect();
        expand(rho, &factors, bdim)
    })
}

/// `θ_ρ(b) = b ◁ ρ`, rows are images of basis elements.
pub fn twist_of(b: &ModuleAlgebra, rho: &SparseVec) -> Mat {
    Mat::from_rows(
        (0..b.dim()).map(|i| b.act(&SparseVec::unit(i), rho)).collect(),
        b.dim(),
    )
}

/// Whether `maps[n]: C^n(a) → C^n(b)` commute with `t`, `d` and `s`.
pub fn check_morphism(a: &CocyclicObject, b: &CocyclicObject, maps: &[Mat]) -> CheckReport {
    let mut t = CheckEntry::new("F t = t F");
    let mut d = CheckEntry::new("F d_i = d_i F");
    let mut s = CheckEntry::new("F s_i = s_i F");
    for (n, f) in maps.iter().enumerate() {
        t.record(f.mul(a.t(n)) == b.t(n).mul(f), vec![n]);
        if n >= 1 {
            for i in 0..=n {
                let l = f.mul(a.d(n, i));
                let r = b.d(n, i).mul(&maps[n - 1]);
                d.record(l == r, vec![n, i]);
            }
        }
        if n + 1 < maps.len() {
            for i in 0..=n {
                let l = f.mul(a.s(n, i));
                let r = b.s(n, i).mul(&maps[n + 1]);
                s.record(l == r, vec![n, i]);
            }
        }
    }
    CheckReport {
        entries: vec![t, d, s],
    }
}
