//! Equivariant even Fredholm modules over coactions of finite quantum
//! groups: the cocycle `φ_F`, the equivariant index and its quantum version.
//!
//! `A` is a finite-dimensional Hopf algebra coacting on `B`. Its dual `Â`
//! (the linear dual on the dual basis) acts on `B` from the right by
//! `b◁ω = (ω⊗ι)α(b)`, and the equivariant machinery runs over `Â`.

mod character;
mod examples;
mod twist;
#[cfg(test)]
mod tests;

pub use character::{
    index_theorem_check, ind_f, modular_element, phi_f, phi_f_in, q_ind, twisted_index_check, twisted_phi_f,
    ChernCharacter, IndexCharacter, ModularElement, TwistedChern,
};
pub use examples::{f2_index_upgrade, trivial_fredholm, worked_index};
pub use twist::{twisted_action_comparison, psi_compatibility, twisted_coaction, v_twist, Corepresentation};

use crate::actions::{ModuleAlgebra, RightModule};
use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::linalg::{Accumulator, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// A left coaction `α: B → A⊗B`; row `i` of `alpha` is `α(b_i)` on the
/// basis `e_a⊗b_k ↦ a·dim(B) + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteCoaction {
    pub a: HopfPresentation,
    pub b: AlgebraPresentation,
    pub alpha: Mat,
}

impl FiniteCoaction {
    /// `α(b) = 1⊗b`.
    pub fn trivial(a: HopfPresentation, b: AlgebraPresentation) -> Self {
        let db = b.dim;
        let rows = (0..db)
            .map(|i| {
                let mut acc = Accumulator::new();
                for (u, c) in a.alg.unit.iter() {
                    acc.push(u * db + i, c.clone());
                }
                acc.finish()
            })
            .collect();
        let alpha = Mat::from_rows(rows, a.dim() * db);
        FiniteCoaction { a, b, alpha }
    }

    pub fn dual(&self) -> HopfPresentation {
        self.a.dual()
    }

    /// `B` with `b_i ◁ ω_j` the `e_j`-component of `α(b_i)`.
    pub fn module_algebra(&self) -> ModuleAlgebra {
        let db = self.b.dim;
        let module = RightModule::from_fn(db, self.a.dim(), |i, j| {
            self.alpha
                .row(i)
                .remap(|u| (u / db == j).then_some(u % db))
        });
        ModuleAlgebra {
            alg: self.b.clone(),
            module,
        }
    }

    fn apply(&self, x: &SparseVec) -> SparseVec {
        self.alpha.vec_mul(x)
    }

    /// `(Δ⊗ι)α = (ι⊗α)α`, `(ε⊗ι)α = ι`, `α` unital and multiplicative, and
    /// the induced action makes `B` an `Â`-module algebra.
    pub fn verify(&self) -> CheckReport {
        let (da, db) = (self.a.dim(), self.b.dim);
        let mut report = CheckReport::new();
        if self.alpha.shape() != (db, da * db) {
            report.push(CheckEntry::single("alpha has shape dim B x dim A dim B", false));
            return report;
        }
        let mut coassoc = CheckEntry::new("(Delta x id) alpha = (id x alpha) alpha");
        let mut counit = CheckEntry::new("(eps x id) alpha = id");
        let mut mult = CheckEntry::new("alpha(b b') = alpha(b) alpha(b')");
        let ab = self.a.alg.tensor(&self.b);
        let images: Vec<SparseVec> = (0..db).map(|i| self.alpha.row(i).clone()).collect();
        for (i, img) in images.iter().enumerate() {
            let mut l = Accumulator::new();
            let mut r = Accumulator::new();
            let mut e = Accumulator::new();
            for (u, c) in img.iter() {
                let (a, k) = (u / db, u % db);
                for (v, d) in self.a.comult.row(a).iter() {
                    l.push(v * db + k, c * d);
                }
                for (v, d) in images[k].iter() {
                    r.push((a * da + v / db) * db + v % db, c * d);
                }
                e.push(k, c * &self.a.eps_basis(a));
            }
            coassoc.record(l.finish() == r.finish(), vec![i]);
            counit.record(e.finish() == SparseVec::unit(i), vec![i]);
            for (j, img2) in images.iter().enumerate() {
                let lhs = self.apply(self.b.basis_product(i, j));
                mult.record(lhs == ab.mul(img, img2), vec![i, j]);
            }
        }
        report.push(coassoc);
        report.push(counit);
        report.push(mult);
        report.push(CheckEntry::single(
            "alpha(1) = 1 x 1",
            self.apply(&self.b.unit) == ab.unit,
        ));
        report.extend_prefixed("module algebra: ", self.module_algebra().verify(&self.dual()));
        report
    }
}

/// `(π, H₋⊕H₊, F, γ, U)` with `γ = diag(−1, 1)` on the first `minus` and the
/// last `plus` coordinates. `pi[k] = π(b_k)` and `u[j] = π_U(ω_j)` on the
/// dual basis of `Â`, i.e. the coefficient of `e_j` in `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantFredholmModule {
    pub coaction: FiniteCoaction,
    pub minus: usize,
    pub plus: usize,
    pub pi: Vec<Mat>,
    pub f: Mat,
    pub u: Vec<Mat>,
    /// Selects the Hermitian form for orthogonal complements and adds the
    /// check `F = F*`. Over the rationals this is the transpose.
    pub star: bool,
}

impl EquivariantFredholmModule {
    pub fn dim(&self) -> usize {
        self.minus + self.plus
    }

    pub fn gamma(&self) -> Mat {
        let mut d = vec![Scalar::from_int(-1); self.minus];
        d.extend(vec![Scalar::one(); self.plus]);
        Mat::diag(&d)
    }

    pub fn pi_of(&self, b: &SparseVec) -> Mat {
        combine(&self.pi, b, self.dim())
    }

    pub fn pi_u(&self, w: &SparseVec) -> Mat {
        combine(&self.u, w, self.dim())
    }
}

fn combine(mats: &[Mat], v: &SparseVec, n: usize) -> Mat {
    v.iter()
        .fold(Mat::zeros(n, n), |acc, (i, c)| acc.add_scaled(&mats[*i], c))
}

/// Every axiom of an equivariant even Fredholm module, with witnesses.
pub fn verify_fredholm(fm: &EquivariantFredholmModule) -> CheckReport {
    let mut report = CheckReport::new();
    report.extend_prefixed("coaction: ", fm.coaction.verify());
    let n = fm.dim();
    let (da, db) = (fm.coaction.a.dim(), fm.coaction.b.dim);
    let square = |m: &Mat| m.shape() == (n, n);
    let shapes = fm.pi.len() == db
        && fm.u.len() == da
        && square(&fm.f)
        && fm.pi.iter().all(square)
        && fm.u.iter().all(square);
    report.push(CheckEntry::single("shapes", shapes));
    if !shapes {
        return report;
    }
    let h = fm.coaction.dual();
    let b = fm.coaction.module_algebra();
    let gamma = fm.gamma();
    let f = &fm.f;
    report.push(CheckEntry::single("F^2 = 1", f.mul(f).is_identity()));
    report.push(CheckEntry::single("gamma F = -F gamma", gamma.mul(f) == f.mul(&gamma).neg()));
    if fm.star {
        report.push(CheckEntry::single("F = F*", *f == f.transpose()));
    }
    let mut even = CheckEntry::new("gamma pi(b) = pi(b) gamma");
    let mut hom = CheckEntry::new("pi(b b') = pi(b) pi(b')");
    for k in 0..db {
        even.record(gamma.mul(&fm.pi[k]) == fm.pi[k].mul(&gamma), vec![k]);
        for l in 0..db {
            let lhs = fm.pi_of(b.alg.basis_product(k, l));
            hom.record(lhs == fm.pi[k].mul(&fm.pi[l]), vec![k, l]);
        }
    }
    report.push(even);
    report.push(hom);
    let mut corep = CheckEntry::new("pi_U(w w') = pi_U(w) pi_U(w')");
    let mut comm_f = CheckEntry::new("[pi_U(w), F] = 0");
    let mut comm_g = CheckEntry::new("[pi_U(w), gamma] = 0");
    let mut equi = CheckEntry::new("pi_U(w_0) pi(b < w_1) = pi(b) pi_U(w)");
    for j in 0..da {
        let uj = &fm.u[j];
        for l in 0..da {
            let lhs = fm.pi_u(h.alg.basis_product(j, l));
            corep.record(lhs == uj.mul(&fm.u[l]), vec![j, l]);
        }
        comm_f.record(uj.mul(f) == f.mul(uj), vec![j]);
        comm_g.record(uj.mul(&gamma) == gamma.mul(uj), vec![j]);
        let terms = h.coproduct_terms(j);
        for k in 0..db {
            let mut lhs = Mat::zeros(n, n);
            for (l0, l1, c) in &terms {
                let pb = fm.pi_of(b.module.act_basis(k, *l1));
                lhs = lhs.add_scaled(&fm.u[*l0].mul(&pb), c);
            }
            equi.record(lhs == fm.pi[k].mul(uj), vec![k, j]);
        }
    }
    report.push(corep);
    report.push(CheckEntry::single("pi_U(1) = 1", fm.pi_u(&h.one()).is_identity()));
    report.push(comm_f);
    report.push(comm_g);
    report.push(equi);
    report
}
