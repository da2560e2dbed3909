//! `φ_F`, `Ind_F`, the index theorem, the modular element and the quantum
//! index.

use serde::Serialize;

use super::twist::{v_twist, Corepresentation};
use super::EquivariantFredholmModule;
use crate::equivariant::{build_equivariant, build_twisted, twist_of, EquivariantComplex};
use crate::error::{EngineError, Result};
use crate::hopf::{wedderburn_blocks, HopfPresentation};
use crate::ktheory::{pair_even, pair_twisted, InvariantIdempotent};
use crate::linalg::{self, Kernel, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// `Σ c·Tr(heads[leg]·[F,π(b₀)]⋯[F,π(b_k)]·tail)` over the ambient basis of
/// level `k`, leg most significant.
fn chern_ambient(fm: &EquivariantFredholmModule, k: usize, heads: &[Mat], tail: Option<&Mat>, c: &Scalar) -> SparseVec {
    let comms: Vec<Mat> = fm.pi.iter().map(|p| fm.f.mul(p).sub(&p.mul(&fm.f))).collect();
    let db = comms.len();
    let mut out = Vec::new();
    for (leg, head) in heads.iter().enumerate() {
        let mut stack = vec![(head.clone(), leg, 0usize)];
        while let Some((m, idx, depth)) = stack.pop() {
            if depth == k + 1 {
                let m = match tail {
                    Some(t) => m.mul(t),
                    None => m,
                };
                let v = &m.trace() * c;
                if !v.is_zero() {
                    out.push((idx, v));
                }
                continue;
            }
            if m.is_zero() {
                continue;
            }
            for b in (0..db).rev() {
                stack.push((m.mul(&comms[b]), idx * db + b, depth + 1));
            }
        }
    }
    SparseVec::from_pairs(out)
}

/// `(−1)ⁿ/2`.
fn prefactor(n: usize) -> Scalar {
    Scalar::from_frac(if n % 2 == 0 { 1 } else { -1 }, 2)
}

/// `(1 − λ)f = 0` and `bf = 0` at level `k` of `c`.
fn cocycle_entries(c: &EquivariantComplex, k: usize, f: &SparseVec, name: &str) -> Vec<CheckEntry> {
    let o = &c.object;
    vec![
        CheckEntry::single(format!("(1 - lambda) {name} = 0"), o.one_minus_lambda(k).mul_vec(f).is_zero()),
        CheckEntry::single(format!("b {name} = 0"), o.b(k + 1).mul_vec(f).is_zero()),
    ]
}

/// `φ_F` in degree `2n` as a cochain of `C^{2n}_Â(B)`.
#[derive(Clone, Debug)]
pub struct ChernCharacter {
    pub complex: EquivariantComplex,
    pub degree: usize,
    pub cochain: SparseVec,
    pub report: CheckReport,
}

/// `φ_F(ω⊗b₀⊗…⊗b_{2n}) = ((−1)ⁿ/2)Tr(γπ_U(ω)F[F,π(b₀)]⋯[F,π(b_{2n})])`.
pub fn phi_f(fm: &EquivariantFredholmModule, n: usize, budget: usize) -> Result<ChernCharacter> {
    let c = build_equivariant(&fm.coaction.module_algebra(), &fm.coaction.dual(), 2 * n + 1, budget)?;
    phi_f_in(fm, &c, n)
}

/// [`phi_f`] inside a prebuilt complex for the action of `Â` on `B`.
pub fn phi_f_in(fm: &EquivariantFredholmModule, c: &EquivariantComplex, n: usize) -> Result<ChernCharacter> {
    let k = 2 * n;
    c.object.check_level(k + 1)?;
    let heads: Vec<Mat> = fm.u.iter().map(|u| fm.gamma().mul(u).mul(&fm.f)).collect();
    let amb = chern_ambient(fm, k, &heads, None, &prefactor(n));
    let cochain = c.coords(k, &amb)?;
    let mut report = CheckReport::new();
    report.push(CheckEntry::single("phi_F is invariant", true));
    for e in cocycle_entries(c, k, &cochain, "phi_F") {
        report.push(e);
    }
    Ok(ChernCharacter {
        complex: c.clone(),
        degree: k,
        cochain,
        report,
    })
}

/// `Ind_F p = φ₊ − φ₋` on the basis of `Â`, with the two characters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexCharacter {
    #[serde(serialize_with = "scalars_json")]
    pub values: Vec<Scalar>,
    #[serde(serialize_with = "scalars_json")]
    pub plus: Vec<Scalar>,
    #[serde(serialize_with = "scalars_json")]
    pub minus: Vec<Scalar>,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

fn scalars_json<S: serde::Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    serde_json::Value::Array(v.iter().map(linalg::scalar_to_json).collect()).serialize(s)
}

impl IndexCharacter {
    pub fn eval(&self, w: &SparseVec) -> Scalar {
        w.iter()
            .fold(Scalar::zero(), |acc, (j, c)| &acc + &(c * &self.values[*j]))
    }

    /// Values at the central idempotents of the blocks of `Â`.
    pub fn at_block_projections(&self, dual: &HopfPresentation) -> Result<Vec<Scalar>> {
        Ok(wedderburn_blocks(&dual.alg)?
            .blocks
            .iter()
            .map(|b| self.eval(&b.central_idempotent))
            .collect())
    }
}

/// Trace of `m` restricted to the invariant subspace `k`.
fn restricted_trace(k: &Kernel, m: &Mat, what: &str) -> Result<Scalar> {
    let img = m.mul(&k.basis);
    if !k.contains_columns(&img) {
        return Err(EngineError::NotInvariant(format!("{what} is not invariant")));
    }
    Ok(k.coords_of_columns(&img).trace())
}

fn columns_of(vecs: &[SparseVec], nrows: usize) -> Mat {
    Mat::from_columns(vecs, nrows)
}

fn block(m: &Mat, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
    let r: Vec<usize> = rows.collect();
    let c: Vec<usize> = cols.collect();
    m.select_rows(&r).select_columns(&c)
}

/// The operator `p₋Fp₊: p₊H₊ → p₋H₋`, its kernel and the complement of its
/// image, with the characters of `Â` on both. For `p ∈ End(X)⊗B` the module
/// is first twisted by the corepresentation `V` with `H_V = X`.
pub fn ind_f(fm: &EquivariantFredholmModule, p: &InvariantIdempotent) -> Result<IndexCharacter> {
    let dual = fm.coaction.dual();
    let v = Corepresentation::from_right_module(&p.x, &dual);
    let tm = v_twist(fm, &v)?;
    let (mi, pl) = (tm.minus, tm.plus);
    let big = tm.pi_of(&p.p);
    let pp = block(&big, mi..mi + pl, mi..mi + pl);
    let pm = block(&big, 0..mi, 0..mi);
    let op = pm.mul(&block(&tm.f, 0..mi, mi..mi + pl)).mul(&pp);
    let dom = columns_of(&linalg::image_basis(&pp), pl);
    let ker: Vec<SparseVec> = linalg::kernel_basis(&op.mul(&dom))
        .iter()
        .map(|c| dom.mul_vec(c))
        .collect();
    let tgt = columns_of(&linalg::image_basis(&pm), mi);
    let coker: Vec<SparseVec> = linalg::kernel_basis(&op.transpose().mul(&tgt))
        .iter()
        .map(|c| tgt.mul_vec(c))
        .collect();
    let kk = linalg::span(pl, &ker);
    let ck = linalg::span(mi, &coker);
    let mut plus = Vec::with_capacity(dual.dim());
    let mut minus = Vec::with_capacity(dual.dim());
    for u in &tm.u {
        plus.push(restricted_trace(&kk, &block(u, mi..mi + pl, mi..mi + pl), "Ker(p-Fp+)")?);
        minus.push(restricted_trace(&ck, &block(u, 0..mi, 0..mi), "Im(p-Fp+)^perp")?);
    }
    Ok(IndexCharacter {
        values: plus.iter().zip(&minus).map(|(a, b)| a - b).collect(),
        plus,
        minus,
        kernel_dim: kk.dim(),
        cokernel_dim: ck.dim(),
    })
}

/// `(Ind_F p)(ω) = ⟨[φ_F],[p]⟩(ω)` for every basis element `ω` of `Â`,
/// together with the invariance and cocycle checks on `φ_F`.
pub fn index_theorem_check(
    fm: &EquivariantFredholmModule,
    p: &InvariantIdempotent,
    n: usize,
    budget: usize,
) -> Result<CheckReport> {
    let ch = phi_f(fm, n, budget)?;
    let pairing = pair_even(&ch.complex, ch.degree, &ch.cochain, p)?;
    let ind = ind_f(fm, p)?;
    let mut report = ch.report;
    let mut eq = CheckEntry::new(format!("Ind_F p = <[phi_F],[p]> in degree {}", 2 * n));
    for (j, (a, b)) in ind.values.iter().zip(&pairing.values).enumerate() {
        eq.record(a == b, vec![j]);
    }
    report.push(eq);
    Ok(report)
}

/// A group-like `ρ` of `Â` with `Ŝ²(ω) = ρ⁻¹ωρ`, and every group-like that
/// qualifies.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularElement {
    pub rho: SparseVec,
    pub candidates: Vec<SparseVec>,
}

/// The first qualifying group-like in the order of
/// [`HopfPresentation::group_likes`].
pub fn modular_element(dual: &HopfPresentation) -> Result<ModularElement> {
    let d = dual.dim();
    let candidates: Vec<SparseVec> = dual
        .group_likes()?
        .into_iter()
        .filter(|rho| {
            let inv = dual.group_like_inverse(rho);
            (0..d).all(|j| {
                let w = SparseVec::unit(j);
                dual.s(&dual.s(&w)) == dual.mul(&dual.mul(&inv, &w), rho)
            })
        })
        .collect();
    match candidates.first() {
        Some(rho) => Ok(ModularElement {
            rho: rho.clone(),
            candidates: candidates.clone(),
        }),
        None => Err(EngineError::NoModularGroupLike),
    }
}

/// `q-Ind_F p = (Ind_F p)(ρ)`.
pub fn q_ind(fm: &EquivariantFredholmModule, p: &InvariantIdempotent, rho: &SparseVec) -> Result<Scalar> {
    Ok(ind_f(fm, p)?.eval(rho))
}

/// `φ̃_F` on the `θ_ρ`-twisted object of `B`.
#[derive(Clone, Debug)]
pub struct TwistedChern {
    pub complex: EquivariantComplex,
    pub degree: usize,
    pub cochain: SparseVec,
    pub report: CheckReport,
}

/// `φ̃_F(b₀⊗…⊗b_{2n}) = ((−1)ⁿ/2)Tr(γF[F,π(b₀)]⋯[F,π(b_{2n})]π_U(ρ))`.
pub fn twisted_phi_f(fm: &EquivariantFredholmModule, rho: &SparseVec, n: usize, budget: usize) -> Result<TwistedChern> {
    let dual = fm.coaction.dual();
    if !dual.is_group_like(rho) {
        return Err(EngineError::Invalid("rho is not group-like".into()));
    }
    let b = fm.coaction.module_algebra();
    let k = 2 * n;
    let c = build_twisted(&b.alg, &twist_of(&b, rho), k + 1, budget)?;
    let head = fm.gamma().mul(&fm.f);
    let amb = chern_ambient(fm, k, &[head], Some(&fm.pi_u(rho)), &prefactor(n));
    let cochain = c.coords(k, &amb)?;
    let mut report = CheckReport::new();
    report.push(CheckEntry::single("phi~_F is theta_rho-invariant", true));
    for e in cocycle_entries(&c, k, &cochain, "phi~_F") {
        report.push(e);
    }
    Ok(TwistedChern {
        complex: c,
        degree: k,
        cochain,
        report,
    })
}

/// `q-Ind_F p = ⟨φ̃_F, [p]⟩_ρ`.
pub fn twisted_index_check(
    fm: &EquivariantFredholmModule,
    p: &InvariantIdempotent,
    rho: &SparseVec,
    n: usize,
    budget: usize,
) -> Result<CheckReport> {
    let t = twisted_phi_f(fm, rho, n, budget)?;
    let lhs = q_ind(fm, p, rho)?;
    let rhs = pair_twisted(&t.complex, t.degree, &t.cochain, p, rho, &fm.coaction.dual())?;
    let mut report = t.report;
    report.push(
        CheckEntry::single(format!("q-Ind_F p = <phi~_F, p>_rho in degree {}", 2 * n), lhs == rhs)
            .with_detail(format!("q-Ind = {lhs}, pairing = {rhs}")),
    );
    Ok(report)
}
