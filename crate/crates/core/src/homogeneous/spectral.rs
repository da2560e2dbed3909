//! Spectral subspaces `A_t` and the modules `X_t = (H_t⊗A)^{δ_t}`.

use super::{right_action_rows, QuotientSpace};
use crate::actions::{crossed_product, CrossedProduct, RightModule};
use crate::error::{EngineError, Result};
use crate::hopf::wedderburn_blocks;
use crate::index::Corepresentation;
use crate::ktheory::restrict_module;
use crate::linalg::{self, Accumulator, Kernel, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// One representative `V^t` per block of `Â₀`: `mats[c] = π_t(ω_c)` read off
/// `E_{1i} ω E_{j1} = π_t(ω)_{ij} E_{11}`.
pub fn classes(q: &QuotientSpace) -> Result<Vec<Corepresentation>> {
    let dual0 = q.datum.a0.dual();
    let blocks = wedderburn_blocks(&dual0.alg)?;
    let mut out = Vec::with_capacity(blocks.len());
    for bl in &blocks.blocks {
        let n = bl.size;
        let mu = &bl.matrix_units;
        let (pivot, pv0) = mu[0][0].leading().cloned().ok_or_else(|| EngineError::DecompositionFailed("zero matrix unit".into()))?;
        let pv = pv0.inv();
        let mats = (0..dual0.dim())
            .map(|c| {
                let w = SparseVec::unit(c);
                let mut rows = Vec::with_capacity(n);
                for i in 0..n {
                    let left = dual0.mul(&mu[0][i], &w);
                    let row = (0..n)
                        .map(|j| (j, &dual0.mul(&left, &mu[j][0]).get(pivot) * &pv))
                        .filter(|(_, x)| !x.is_zero())
                        .collect();
                    rows.push(SparseVec::from_pairs(row));
                }
                Mat::from_rows(rows, n)
            })
            .collect();
        let v = Corepresentation { dim: n, mats };
        v.check(&dual0)?;
        out.push(v);
    }
    Ok(out)
}

/// `X_t` with the data certifying it.
#[derive(Clone, Debug)]
pub struct SpectralModule {
    pub class: usize,
    pub v: Corepresentation,
    /// `A_t` inside `A`.
    pub a_t: Kernel,
    /// Row-form `E_t` on `H_t⊗A`, index `s·dim(A) + i`.
    pub e_t: Mat,
    /// `X_t` inside `H_t⊗A`.
    pub x_t: Kernel,
    /// `X_t` as a right `B⋊Â`-module.
    pub module: RightModule,
    /// Generators of `A_t` as a left `B`-module, in coordinates of `A`.
    pub generators: Vec<SparseVec>,
    /// For each basis vector `a` of `A_t`, coefficients `b_g ∈ B` (in
    /// `B`-coordinates) with `Σ b_g g = a`.
    pub witnesses: Vec<Vec<SparseVec>>,
    pub report: CheckReport,
}

impl SpectralModule {
    pub fn dim(&self) -> usize {
        self.x_t.dim()
    }

    pub fn hdim(&self) -> usize {
        self.v.dim
    }
}

/// `δ_t(ξ⊗a) = Σ_c T_cξ ⊗ a₍₁₎ ⊗ f_c P(a₍₂₎)`, row form, on
/// `(s·dim(A) + l)·dim(A₀) + m`.
fn delta_t(q: &QuotientSpace, v: &Corepresentation) -> Mat {
    let (a, a0) = (&q.datum.a, &q.datum.a0);
    let (da, d0, n) = (a.dim(), a0.dim(), v.dim);
    let rows = (0..n * da)
        .map(|r| {
            let (s, i) = (r / da, r % da);
            let mut acc = Accumulator::new();
            for (c, t) in v.mats.iter().enumerate() {
                let col = t.column(s);
                if col.is_zero() {
                    continue;
                }
                for (u, w) in q.delta_r.row(i).iter() {
                    let (l, m) = (u / d0, u % d0);
                    let prod = a0.alg.basis_product(c, m);
                    for (x, tx) in col.iter() {
                        for (y, py) in prod.iter() {
                            acc.push((x * da + l) * d0 + y, &(tx * w) * py);
                        }
                    }
                }
            }
            acc.finish()
        })
        .collect();
    Mat::from_rows(rows, n * da * d0)
}

fn apply_haar(q: &QuotientSpace, m: &Mat) -> Mat {
    let d0 = q.datum.a0.dim();
    let rows = m
        .rows()
        .iter()
        .map(|row| {
            let mut acc = Accumulator::new();
            for (u, c) in row.iter() {
                let h = q.haar.get(u % d0);
                if !h.is_zero() {
                    acc.push(u / d0, c * &h);
                }
            }
            acc.finish()
        })
        .collect();
    Mat::from_rows(rows, m.ncols() / d0)
}

/// `A_t`: the span of `(ι⊗φ₀(u·))Δ_R(e_k)` over matrix coefficients `u` of `V^t`.
fn spectral_space(q: &QuotientSpace, v: &Corepresentation) -> Kernel {
    let (a0, da, d0) = (&q.datum.a0, q.datum.a.dim(), q.datum.a0.dim());
    let mut vecs = Vec::new();
    for i in 0..v.dim {
        for j in 0..v.dim {
            let u = SparseVec::from_pairs(
                v.mats
                    .iter()
                    .enumerate()
                    .map(|(c, t)| (c, t.get(i, j)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect(),
            );
            let f: Vec<Scalar> = (0..d0).map(|m| q.haar_eval(&a0.mul(&u, &SparseVec::unit(m)))).collect();
            for k in 0..da {
                let mut acc = Accumulator::new();
                for (x, c) in q.delta_r.row(k).iter() {
                    if !f[x % d0].is_zero() {
                        acc.push(x / d0, c * &f[x % d0]);
                    }
                }
                vecs.push(acc.finish());
            }
        }
    }
    linalg::span(da, &vecs)
}

/// Column-form operators of `b_k⊗ω_j` on `H_t⊗A`, `(ξ⊗a)·(b⊗ω) = ξ⊗(ab)◁ω`.
fn crossed_ops(q: &QuotientSpace, n: usize, cp: &CrossedProduct) -> (Vec<Mat>, Vec<Mat>) {
    let a = &q.datum.a;
    let id = Mat::identity(n);
    let hops: Vec<Mat> = (0..cp.hdim)
        .map(|j| id.kron(&right_action_rows(a, j).transpose()))
        .collect();
    let bops: Vec<Mat> = q
        .incl
        .vectors()
        .iter()
        .map(|b| id.kron(&a.alg.right_mult(b)))
        .collect();
    let ops = (0..cp.alg.dim)
        .map(|x| hops[x % cp.hdim].mul(&bops[x / cp.hdim]))
        .collect();
    (hops, ops)
}

/// `H_t⊗A` with `(ξ⊗a)·(b⊗ω) = ξ⊗(ab)◁ω`, `n = dim H_t`.
pub(crate) fn full_module(q: &QuotientSpace, n: usize, cp: &CrossedProduct) -> RightModule {
    let (_, ops) = crossed_ops(q, n, cp);
    RightModule::from_fn(n * q.datum.a.dim(), ops.len(), |i, x| ops[x].column(i))
}

/// Greedy generators of `A_t` as a left `B`-module and exact coefficients
/// expressing every basis vector of `A_t` through them.
fn generation_witness(q: &QuotientSpace, a_t: &Kernel) -> Result<(Vec<SparseVec>, Vec<Vec<SparseVec>>)> {
    let a = &q.datum.a;
    let da = a.dim();
    let bvecs = q.incl.vectors();
    let db = bvecs.len();
    let mut gens: Vec<SparseVec> = Vec::new();
    let mut reach: Vec<SparseVec> = Vec::new();
    for g in a_t.vectors() {
        let sub = linalg::span(da, &reach);
        if sub.dim() == a_t.dim() {
            break;
        }
        if sub.contains(&g) && !reach.is_empty() {
            continue;
        }
        reach.extend(bvecs.iter().map(|b| a.mul(b, &g)));
        gens.push(g);
    }
    // unknowns: coefficient k of b for generator g at g·db + k
    let cols: Vec<SparseVec> = gens
        .iter()
        .flat_map(|g| bvecs.iter().map(move |b| a.mul(b, g)))
        .collect();
    let sys = Mat::from_columns(&cols, da);
    let mut witnesses = Vec::new();
    for (i, target) in a_t.vectors().iter().enumerate() {
        let sol = linalg::solve(&sys, target).map_err(|_| {
            EngineError::DecompositionFailed(format!("basis vector {i} of A_t is not generated"))
        })?;
        witnesses.push(
            (0..gens.len())
                .map(|g| sol.remap(|u| (u / db == g).then_some(u % db)))
                .collect(),
        );
    }
    Ok((gens, witnesses))
}

/// `X_t`, `A_t` and `E_t` for class `t`, with the checks: `E_t² = E_t`,
/// `E_t(H_t⊗A) = (H_t⊗A)^{δ_t}`, `X_t ⊂ H_t⊗A_t`, `X_t` stable under `B`
/// and `Â`, `E_t` commuting with `Â`, and the generation witness for `A_t`.
pub fn spectral_subspace(q: &QuotientSpace, classes: &[Corepresentation], t: usize) -> Result<SpectralModule> {
    let v = classes.get(t).ok_or(EngineError::ClassNotFound(t))?.clone();
    let a = &q.datum.a;
    let (da, n) = (a.dim(), v.dim);
    let dual = a.dual();
    let cp = crossed_product(&q.coaction.module_algebra(), &dual);
    let delta = delta_t(q, &v);
    let e_t = apply_haar(q, &delta);
    let x_t = linalg::span(n * da, e_t.rows());
    let mut report = CheckReport::new();
    report.push(CheckEntry::single("E_t^2 = E_t", e_t.mul(&e_t) == e_t));
    let d0 = q.datum.a0.dim();
    let one0 = q.datum.a0.one();
    let lift = Mat::from_rows(
        (0..n * da).map(|r| one0.remap(|m| Some(r * d0 + m))).collect(),
        n * da * d0,
    );
    let fixed = linalg::left_kernel(&delta.sub(&lift));
    let mut fx = CheckEntry::new("X_t = fixed points of delta_t");
    fx.record(fixed.dim() == x_t.dim(), Vec::new());
    for (i, x) in x_t.vectors().iter().enumerate() {
        fx.record(fixed.contains(x), vec![i]);
    }
    report.push(fx);
    let a_t = spectral_space(q, &v);
    let mut inside = CheckEntry::new("X_t in H_t x A_t");
    for (i, x) in x_t.vectors().iter().enumerate() {
        let ok = (0..n).all(|s| a_t.contains(&x.remap(|u| (u / da == s).then_some(u % da))));
        inside.record(ok, vec![i]);
    }
    report.push(inside);
    let (hops, ops) = crossed_ops(q, n, &cp);
    let mut comm = CheckEntry::new("E_t commutes with the action of A^");
    let et_col = e_t.transpose();
    for (j, h) in hops.iter().enumerate() {
        comm.record(et_col.mul(h) == h.mul(&et_col), vec![j]);
    }
    report.push(comm);
    let mut stable = CheckEntry::new("X_t is a B x| A^ submodule");
    for (x, op) in ops.iter().enumerate() {
        stable.record(x_t.contains_columns(&op.mul(&x_t.basis)), vec![x]);
    }
    report.push(stable);
    let module = restrict_module(&full_module(q, n, &cp), &x_t);
    let (generators, witnesses) = generation_witness(q, &a_t)?;
    let mut gen = CheckEntry::new("A_t generated over B");
    for (i, (w, target)) in witnesses.iter().zip(a_t.vectors()).enumerate() {
        let mut acc = SparseVec::new();
        for (bw, g) in w.iter().zip(&generators) {
            acc = acc.add(&a.mul(&q.embed(bw), g));
        }
        gen.record(acc == target, vec![i]);
    }
    report.push(gen);
    Ok(SpectralModule {
        class: t,
        v,
        a_t,
        e_t,
        x_t,
        module,
        generators,
        witnesses,
        report,
    })
}

/// `⟨ξ₁⊗a₁, ξ₂⊗a₂⟩ = (ξ₂,ξ₁)E(a₁*a₂)` in `B`-coordinates, on `H_t⊗A` with
/// `dim H_t = n`; `star` is the row-form involution of `A` (the identity
/// for a function algebra over `Q` in its basis of point masses).
pub fn inner_product(q: &QuotientSpace, star: &Mat, n: usize, x1: &SparseVec, x2: &SparseVec) -> SparseVec {
    let a = &q.datum.a;
    let da = a.dim();
    let mut acc = SparseVec::new();
    for s in 0..n {
        let a1 = star.vec_mul(&x1.remap(|u| (u / da == s).then_some(u % da)));
        let a2 = x2.remap(|u| (u / da == s).then_some(u % da));
        if a1.is_zero() || a2.is_zero() {
            continue;
        }
        acc = acc.add(&q.expectation.vec_mul(&a.mul(&a1, &a2)));
    }
    q.incl.coords(&acc)
}
