//! Twisting a Fredholm module by a corepresentation `V`.

use super::{EquivariantFredholmModule, FiniteCoaction};
use crate::actions::{endx_tensor_b, matrix_unit, mat_to_vec, RightModule};
use crate::equivariant::{build_equivariant, psi_matrix, MoritaData};
use crate::error::{EngineError, Result};
use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::linalg::{Accumulator, Mat, SparseVec};
use crate::report::{CheckEntry, CheckReport};

use super::character::phi_f_in;

/// A corepresentation `V ∈ A⊗B(H_V)` by its coefficients: `mats[j]` is
/// `π_V(ω_j) = (ω_j⊗ι)(V)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Corepresentation {
    pub dim: usize,
    pub mats: Vec<Mat>,
}

impl Corepresentation {
    pub fn trivial(dual: &HopfPresentation) -> Self {
        Corepresentation {
            dim: 1,
            mats: (0..dual.dim()).map(|j| Mat::scalar(1, &dual.eps_basis(j))).collect(),
        }
    }

    /// `π_V(ω)ξ = ξ ◁ Ŝ⁻¹(ω)`, so that `ξ ◁ ω = π_V(Ŝ(ω))ξ`.
    pub fn from_right_module(x: &RightModule, dual: &HopfPresentation) -> Self {
        Corepresentation {
            dim: x.dim,
            mats: (0..dual.dim()).map(|j| x.op_matrix(dual.antipode_inv.row(j))).collect(),
        }
    }

    /// The right `Â`-module `ξ ◁ ω = π_V(Ŝ(ω))ξ`.
    pub fn right_module(&self, dual: &HopfPresentation) -> RightModule {
        let pis: Vec<Mat> = (0..dual.dim()).map(|j| self.pi(dual.antipode.row(j))).collect();
        RightModule::from_fn(self.dim, dual.dim(), |i, j| pis[j].column(i))
    }

    pub fn pi(&self, w: &SparseVec) -> Mat {
        w.iter()
            .fold(Mat::zeros(self.dim, self.dim), |acc, (j, c)| acc.add_scaled(&self.mats[*j], c))
    }

    /// `(Δ⊗ι)V = V₁₃V₂₃` and `(ε⊗ι)V = 1`, read on the dual side.
    pub fn check(&self, dual: &HopfPresentation) -> Result<()> {
        let d = dual.dim();
        if self.mats.len() != d || self.mats.iter().any(|m| m.shape() != (self.dim, self.dim)) {
            return Err(EngineError::VNotCorepresentation("wrong shapes".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if self.pi(dual.alg.basis_product(i, j)) != self.mats[i].mul(&self.mats[j]) {
                    return Err(EngineError::VNotCorepresentation(format!(
                        "not multiplicative on ({i}, {j})"
                    )));
                }
            }
        }
        if !self.pi(&dual.one()).is_identity() {
            return Err(EngineError::VNotCorepresentation("not unital".into()));
        }
        Ok(())
    }
}

/// `α̃_V(T⊗b) = (V⁻¹⊗1)(1⊗T⊗1)α(b)₁₃(V⊗1)` on `B(H_V)⊗B`, with
/// `V⁻¹ = (S⊗ι)V`.
pub fn twisted_coaction(co: &FiniteCoaction, v: &Corepresentation) -> FiniteCoaction {
    let (da, db, k) = (co.a.dim(), co.b.dim, v.dim);
    let big = AlgebraPresentation::matrix_algebra(k).tensor(&co.b);
    let dbig = big.dim;
    let rows = (0..dbig)
        .map(|r| {
            let (e, kb) = (r / db, r % db);
            let t = matrix_unit(k, e);
            let mut acc = Accumulator::new();
            for (u, c) in co.alpha.row(kb).iter() {
                let (ac, bk) = (u / db, u % db);
                for a in 0..da {
                    let sa = co.a.s(&SparseVec::unit(a));
                    let left = co.a.mul(&sa, &SparseVec::unit(ac));
                    let va_t = v.mats[a].mul(&t);
                    for d in 0..da {
                        let coeff = co.a.mul(&left, &SparseVec::unit(d));
                        if coeff.is_zero() {
                            continue;
                        }
                        let m = mat_to_vec(&va_t.mul(&v.mats[d]));
                        for (x, cx) in coeff.iter() {
                            for (y, cy) in m.iter() {
                                acc.push(x * dbig + y * db + bk, &(c * cx) * cy);
                            }
                        }
                    }
                }
            }
            acc.finish()
        })
        .collect();
    FiniteCoaction {
        a: co.a.clone(),
        b: big,
        alpha: Mat::from_rows(rows, da * dbig),
    }
}

/// `(ι⊗π, H_V⊗H, 1⊗F, 1⊗γ, Ũ = U₁₃V₁₂)` over `B(H_V)⊗B` with the coaction
/// `α̃_V`. Coordinates are reordered so that `H_V⊗H₋` comes first.
pub fn v_twist(fm: &EquivariantFredholmModule, v: &Corepresentation) -> Result<EquivariantFredholmModule> {
    let dual = fm.coaction.dual();
    v.check(&dual)?;
    let (k, m, mi, pl) = (v.dim, fm.dim(), fm.minus, fm.plus);
    let perm: Vec<usize> = (0..k * m)
        .map(|r| {
            let (s, x) = (r / m, r % m);
            if x < mi {
                s * mi + x
            } else {
                k * mi + s * pl + (x - mi)
            }
        })
        .collect();
    let reorder = |a: &Mat| {
        let mut rows = vec![SparseVec::new(); k * m];
        for (r, row) in a.rows().iter().enumerate() {
            rows[perm[r]] = row.remap(|c| Some(perm[c]));
        }
        Mat::from_rows(rows, k * m)
    };
    let mut pi = Vec::with_capacity(k * k * fm.pi.len());
    for e in 0..k * k {
        let t = matrix_unit(k, e);
        for p in &fm.pi {
            pi.push(reorder(&t.kron(p)));
        }
    }
    let u = (0..dual.dim())
        .map(|j| {
            let mut acc = Mat::zeros(k * m, k * m);
            for (l0, l1, c) in dual.coproduct_terms(j) {
                acc = acc.add_scaled(&v.mats[l1].kron(&fm.u[l0]), &c);
            }
            reorder(&acc)
        })
        .collect();
    Ok(EquivariantFredholmModule {
        coaction: twisted_coaction(&fm.coaction, v),
        minus: k * mi,
        plus: k * pl,
        pi,
        f: reorder(&Mat::identity(k).kron(&fm.f)),
        u,
        star: fm.star,
    })
}

/// The action of `Â` induced by `α̃_V` against the adjoint action on
/// `End(H_V)⊗B` for the module `ξ ◁ ω = π_V(Ŝ(ω))ξ`.
pub fn twisted_action_comparison(fm: &EquivariantFredholmModule, v: &Corepresentation) -> Result<CheckReport> {
    let dual = fm.coaction.dual();
    v.check(&dual)?;
    let induced = twisted_coaction(&fm.coaction, v).module_algebra();
    let adjoint = endx_tensor_b(&v.right_module(&dual), &fm.coaction.module_algebra(), &dual);
    let mut e = CheckEntry::new("alpha_V action = adjoint action on End(H_V) x B");
    for (r, (a, b)) in induced.module.act.rows().iter().zip(adjoint.module.act.rows()).enumerate() {
        e.record(a == b, vec![r]);
    }
    Ok(CheckReport { entries: vec![e] })
}

/// The cocycle of the twisted module equals `Ψ^{2n}φ_F`.
pub fn psi_compatibility(
    fm: &EquivariantFredholmModule,
    v: &Corepresentation,
    n: usize,
    budget: usize,
) -> Result<CheckReport> {
    let dual = fm.coaction.dual();
    let tm = v_twist(fm, v)?;
    let x = v.right_module(&dual);
    let b = fm.coaction.module_algebra();
    let level = 2 * n + 1;
    let md = MoritaData {
        h: dual.clone(),
        x: x.clone(),
        b: b.clone(),
        p: SparseVec::new(),
        small: build_equivariant(&b, &dual, level, budget)?,
        big: build_equivariant(&endx_tensor_b(&x, &b, &dual), &dual, level, budget)?,
    };
    let small = phi_f_in(fm, &md.small, n)?;
    let big = phi_f_in(&tm, &md.big, n)?;
    let psi = psi_matrix(&md, 2 * n)?;
    let mut report = CheckReport::new();
    report.push(CheckEntry::single(
        format!("phi_F of the twisted module = Psi phi_F in degree {}", 2 * n),
        psi.mul_vec(&small.cochain) == big.cochain,
    ));
    Ok(report)
}
