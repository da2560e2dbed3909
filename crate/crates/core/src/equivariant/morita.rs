//! Morita invariance: `Ψ`, `Φ_p` and the explicit homotopy.

use super::{build_equivariant, compress_between, expand, pullback_matrix, EquivariantComplex};
use crate::cocyclic::{cyclic_total, tot_map};
use crate::actions::{endx_tensor_b, tensor_vec, ModuleAlgebra, RightModule};
use crate::error::{EngineError, Result};
use crate::hopf::HopfPresentation;
use crate::linalg::{Accumulator, Mat, Scalar, SparseVec};
use crate::report::CheckEntry;

/// `B` and `End(X)⊗B` with their equivariant objects and the idempotent `p`.
#[derive(Clone, Debug)]
pub struct MoritaData {
    pub h: HopfPresentation,
    pub x: RightModule,
    pub b: ModuleAlgebra,
    pub p: SparseVec,
    pub small: EquivariantComplex,
    pub big: EquivariantComplex,
}

impl MoritaData {
    /// `p` defaults to the matrix unit `m₁₁`, which is admissible when `X`
    /// carries the trivial action.
    pub fn new(
        x: &RightModule,
        b: &ModuleAlgebra,
        h: &HopfPresentation,
        p: Option<SparseVec>,
        max_level: usize,
        budget: usize,
    ) -> Result<Self> {
        let p = p.unwrap_or_else(|| SparseVec::unit(0));
        check_p(x, h, &p)?;
        let big_alg = endx_tensor_b(x, b, h);
        let small = build_equivariant(b, h, max_level, budget)?;
        let big = build_equivariant(&big_alg, h, max_level, budget)?;
        Ok(MoritaData {
            h: h.clone(),
            x: x.clone(),
            b: b.clone(),
            p,
            small,
            big,
        })
    }

    fn m(&self) -> usize {
        self.x.dim
    }

    fn bdim(&self) -> usize {
        self.b.dim()
    }

    /// `(a, c, k)` for the basis element `E_ac ⊗ e_k` of `End(X)⊗B`.
    fn split(&self, u: usize) -> (usize, usize, usize) {
        let (e, k) = (u / self.bdim(), u % self.bdim());
        (e / self.m(), e % self.m(), k)
    }

    fn unit_of(&self, a: usize, c: usize, k: usize) -> usize {
        (a * self.m() + c) * self.bdim() + k
    }
}

/// `p` idempotent with `π(ω)p = pπ(ω) = ε(ω)p` on basis elements.
fn check_p(x: &RightModule, h: &HopfPresentation, p: &SparseVec) -> Result<()> {
    let n = x.dim;
    if p.max_index().is_some_and(|i| i >= n * n) {
        return Err(EngineError::Dimension(format!("p must have {} coordinates", n * n)));
    }
    let pm = crate::actions::vec_to_mat(p, n);
    if pm.mul(&pm) != pm {
        return Err(EngineError::NotIdempotent("p".into()));
    }
    for j in 0..h.dim() {
        let pi = x.op_matrix(&SparseVec::unit(j));
        let e = pm.scale(&h.eps_basis(j));
        if pi.mul(&pm) != e || pm.mul(&pi) != e {
            return Err(EngineError::PNotCentralInvariant(format!(
                "fails for basis element {j} of H"
            )));
        }
    }
    Ok(())
}

/// `(Ψⁿf)(ω⊗(T₀⊗b₀)⊗…⊗(T_n⊗b_n)) = f(ω₍₀₎⊗b₀⊗…⊗b_n)·Tr(π_X S⁻¹(ω₍₁₎) T₀⋯T_n)`.
pub fn psi_matrix(md: &MoritaData, n: usize) -> Result<Mat> {
    md.big.object.check_level(n)?;
    let h = &md.h;
    let pis: Vec<Mat> = (0..h.dim())
        .map(|j| md.x.op_matrix(h.antipode_inv.row(j)))
        .collect();
    let bdim = md.bdim();
    let (m, entry) = compress_between("psi", md.small.basis(n), md.big.basis(n), |y| {
        let (w, us) = md.big.model.decode(n, y);
        let parts: Vec<_> = us.iter().map(|&u| md.split(u)).collect();
        if parts.windows(2).any(|p| p[0].1 != p[1].0) {
            return SparseVec::new();
        }
        let (a0, cn) = (parts[0].0, parts[n].1);
        let ks: Vec<SparseVec> = parts.iter().map(|p| SparseVec::unit(p.2)).collect();
        let factors: Vec<&SparseVec> = ks.iter().collect();
        let mut acc = Accumulator::new();
        for (l0, l1, c) in h.coproduct_terms(w) {
            let tr = pis[l1].get(cn, a0);
            if !tr.is_zero() {
                acc.push_scaled(&expand(&SparseVec::unit(l0), &factors, bdim), &(&c * &tr));
            }
        }
        acc.finish()
    });
    if !entry.passed {
        return Err(EngineError::NotInvariant(format!("psi at level {n}")));
    }
    Ok(m)
}

/// Pullback along `Φ_p(b) = p⊗b`, from `End(X)⊗B` to `B`.
pub fn phi_p_matrix(md: &MoritaData, n: usize) -> Result<Mat> {
    md.small.object.check_level(n)?;
    let bdim = md.bdim();
    let pb: Vec<SparseVec> = (0..bdim)
        .map(|k| tensor_vec(&md.p, &SparseVec::unit(k), bdim))
        .collect();
    let big_dim = md.big.model.bdim();
    let (m, entry) = compress_between("phi_p", md.big.basis(n), md.small.basis(n), |x| {
        let (w, bs) = md.small.model.decode(n, x);
        let factors: Vec<&SparseVec> = bs.iter().map(|&k| &pb[k]).collect();
        expand(&SparseVec::unit(w), &factors, big_dim)
    });
    if !entry.passed {
        return Err(EngineError::NotInvariant(format!("phi_p at level {n}")));
    }
    Ok(m)
}

/// `hⁿ = Σ_j (−1)^j hⁿ_j : C^{n+1} → C^n` on `End(X)⊗B` for trivial `X`,
/// with `p = m₁₁`.
pub fn morita_homotopy(md: &MoritaData, n: usize) -> Result<Mat> {
    md.big.object.check_level(n + 1)?;
    let triv = RightModule::trivial(md.x.dim, &md.h);
    if md.x != triv {
        return Err(EngineError::Invalid("the homotopy needs X with the trivial action".into()));
    }
    let big_dim = md.big.model.bdim();
    let one_b = &md.b.alg.unit;
    let (m, entry) = compress_between("h", md.big.basis(n + 1), md.big.basis(n), |y| {
        let (w, us) = md.big.model.decode(n, y);
        let parts: Vec<_> = us.iter().map(|&u| md.split(u)).collect();
        let mut acc = Accumulator::new();
        for j in 0..=n {
            if (0..j).any(|i| parts[i].1 != parts[i + 1].0) {
                break;
            }
            let mut fs: Vec<SparseVec> = Vec::with_capacity(n + 2);
            fs.push(SparseVec::unit(md.unit_of(parts[0].0, 0, parts[0].2)));
            for p in &parts[1..=j] {
                fs.push(SparseVec::unit(md.unit_of(0, 0, p.2)));
            }
            fs.push(tensor_vec(&SparseVec::unit(parts[j].1), one_b, md.bdim()));
            for p in &parts[j + 1..] {
                fs.push(SparseVec::unit(md.unit_of(p.0, p.1, p.2)));
            }
            let factors: Vec<&SparseVec> = fs.iter().collect();
            let sign = Scalar::from_int(if j % 2 == 0 { 1 } else { -1 });
            acc.push_scaled(&expand(&SparseVec::unit(w), &factors, big_dim), &sign);
        }
        acc.finish()
    });
    if !entry.passed {
        return Err(EngineError::NotInvariant(format!("homotopy at level {n}")));
    }
    Ok(m)
}

/// `b∘h^{n−1} + hⁿ∘b = ι − Ψⁿ∘Φⁿ_p` on `Cⁿ_H(End(X)⊗B)`.
pub fn homotopy_identity(md: &MoritaData, n: usize) -> Result<CheckEntry> {
    let c = &md.big.object;
    let mut lhs = morita_homotopy(md, n)?.mul(c.b(n + 1));
    if n >= 1 {
        lhs = lhs.add(&c.b(n).mul(&morita_homotopy(md, n - 1)?));
    }
    let rhs = Mat::identity(c.dim(n)).sub(&psi_matrix(md, n)?.mul(&phi_p_matrix(md, n)?));
    let mut e = CheckEntry::new(format!("b h + h b = 1 - Psi Phi_p at level {n}"));
    for (i, j) in lhs.diff_positions(&rhs, 10) {
        e.record(false, vec![n, i, j]);
    }
    e.record(lhs == rhs, vec![n]);
    Ok(e)
}

/// `Φⁿ_p ∘ Ψⁿ = ι` on `Cⁿ_H(B)`.
pub fn phi_psi_identity(md: &MoritaData, n: usize) -> Result<CheckEntry> {
    let m = phi_p_matrix(md, n)?.mul(&psi_matrix(md, n)?);
    Ok(CheckEntry::single(format!("Phi_p Psi = 1 at level {n}"), m.is_identity()))
}

/// For an invertible invariant `u ∈ B`, checks that `Ad u` induces the
/// identity on `HCⁿ_H(B)` for `n ≤ upto`.
pub fn inner_automorphism_check(c: &EquivariantComplex, u: &SparseVec, upto: usize) -> Result<CheckEntry> {
    let (b, h) = match (c.model.module_algebra(), c.model.hopf()) {
        (Some(b), Some(h)) => (b, h),
        _ => return Err(EngineError::Invalid("needs an equivariant object".into())),
    };
    if !b.module.invariants(h).contains(u) {
        return Err(EngineError::NotInvariant("u".into()));
    }
    let uinv = b.alg.inverse_of(u)?;
    let ad: Vec<SparseVec> = (0..b.dim())
        .map(|i| b.alg.mul(&b.alg.mul(u, &SparseVec::unit(i)), &uinv))
        .collect();
    let maps: Vec<Mat> = (0..=upto)
        .map(|q| {
            pullback_matrix("Ad u", c, c, q, |y| {
                let (w, us) = c.model.decode(q, y);
                let fs: Vec<&SparseVec> = us.iter().map(|&k| &ad[k]).collect();
                expand(&SparseVec::unit(w), &fs, b.dim())
            })
        })
        .collect::<Result<_>>()?;
    let mut e = CheckEntry::new("Ad u acts trivially on HC");
    for n in 0..=upto {
        let hc = cyclic_total(&c.object, n)?;
        for (k, r) in hc.representatives().iter().enumerate() {
            let diff = tot_map(&c.object, &c.object, n, &maps[..=n], r).sub(r);
            e.record(hc.space.is_trivial_class(&diff)?, vec![n, k]);
        }
    }
    Ok(e)
}
