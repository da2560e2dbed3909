//! Quantum homogeneous spaces of finite quantum groups: the quotient
//! `B = A^{Δ_R}` by a subgroup `P: A → A₀`, the modules `X_t` and the
//! decomposition of equivariant modules.

mod decompose;
mod spectral;
#[cfg(test)]
mod tests;

pub use decompose::{
    crossed_blocks, decompose_equivariant, decomposition_survey, module_of_idempotent, CrossedBlocks, Decomposition,
    DecompositionSurvey, HomogeneousSpace, SurveyRow,
};
pub use spectral::{classes, inner_product, spectral_subspace, SpectralModule};

use crate::error::{EngineError, Result};
use crate::hopf::examples::{function_algebra, trivial_hopf, FiniteGroup};
use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::index::FiniteCoaction;
use crate::linalg::{self, Accumulator, Kernel, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// A quantum subgroup: a surjective Hopf map `P: A → A₀`, rows are images.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupDatum {
    pub a: HopfPresentation,
    pub a0: HopfPresentation,
    pub p: Mat,
}

impl SubgroupDatum {
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        self.p.vec_mul(x)
    }

    /// `P = ι`.
    pub fn identity(a: &HopfPresentation) -> Self {
        SubgroupDatum {
            a: a.clone(),
            a0: a.clone(),
            p: Mat::identity(a.dim()),
        }
    }

    /// `P = ε`, onto the trivial quantum group.
    pub fn trivial_subgroup(a: &HopfPresentation) -> Self {
        let rows = (0..a.dim()).map(|i| SparseVec::single(0, a.eps_basis(i))).collect();
        SubgroupDatum {
            a: a.clone(),
            a0: trivial_hopf(),
            p: Mat::from_rows(rows, 1),
        }
    }

    /// `k(G) → k(K)` by restriction of functions; `members[i]` is the element
    /// of `G` matching element `i` of `K`.
    pub fn restriction(g: &FiniteGroup, k: &FiniteGroup, members: &[usize]) -> Self {
        let rows = (0..g.order())
            .map(|x| match members.iter().position(|&m| m == x) {
                Some(i) => SparseVec::unit(i),
                None => SparseVec::new(),
            })
            .collect();
        SubgroupDatum {
            a: function_algebra(g),
            a0: function_algebra(k),
            p: Mat::from_rows(rows, k.order()),
        }
    }
}

/// `C(S₃) → C(Z/2)` restricting to `{id, (01)}`.
pub fn s3_z2() -> SubgroupDatum {
    SubgroupDatum::restriction(&FiniteGroup::symmetric3(), &FiniteGroup::cyclic(2), &[0, 1])
}

/// `P` multiplicative and unital, `(P⊗P)Δ = Δ₀P`, `ε₀P = ε`, `PS = S₀P`,
/// and `P` surjective.
pub fn verify_subgroup(sd: &SubgroupDatum) -> CheckReport {
    let (da, d0) = (sd.a.dim(), sd.a0.dim());
    let mut report = CheckReport::new();
    if sd.p.shape() != (da, d0) {
        report.push(CheckEntry::single("P has shape dim A x dim A0", false));
        return report;
    }
    let mut mult = CheckEntry::new("P(a a') = P(a) P(a')");
    let mut comult = CheckEntry::new("(P x P) Delta = Delta0 P");
    let mut counit = CheckEntry::new("eps0 P = eps");
    let mut antipode = CheckEntry::new("P S = S0 P");
    for i in 0..da {
        let pi = sd.p.row(i);
        for j in 0..da {
            let l = sd.apply(sd.a.alg.basis_product(i, j));
            mult.record(l == sd.a0.mul(pi, sd.p.row(j)), vec![i, j]);
        }
        let mut acc = Accumulator::new();
        for (l, m, c) in sd.a.coproduct_terms(i) {
            for (x, u) in sd.p.row(l).iter() {
                for (y, v) in sd.p.row(m).iter() {
                    acc.push(x * d0 + y, &(&c * u) * v);
                }
            }
        }
        comult.record(acc.finish() == sd.a0.comul(pi), vec![i]);
        counit.record(sd.a0.eps(pi) == sd.a.eps_basis(i), vec![i]);
        let l = sd.apply(&sd.a.s(&SparseVec::unit(i)));
        antipode.record(l == sd.a0.s(pi), vec![i]);
    }
    report.push(mult);
    report.push(CheckEntry::single("P(1) = 1", sd.apply(&sd.a.one()) == sd.a0.one()));
    report.push(comult);
    report.push(counit);
    report.push(antipode);
    report.push(CheckEntry::single("P is surjective", linalg::rank(&sd.p) == d0));
    report
}

/// `B = A^{Δ_R}` with its coaction `Δ|_B`, the Haar functional `φ₀` of `A₀`
/// and the conditional expectation `E = (ι⊗φ₀)Δ_R`.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub datum: SubgroupDatum,
    /// Row `i` is `Δ_R(e_i)` on `e_l⊗f_r ↦ l·dim(A₀) + r`.
    pub delta_r: Mat,
    /// `B` inside `A`.
    pub incl: Kernel,
    /// `φ₀(f_r)` at position `r`.
    pub haar: SparseVec,
    /// Row `i` is `E(e_i)` in coordinates of `A`.
    pub expectation: Mat,
    pub coaction: FiniteCoaction,
    pub report: CheckReport,
}

impl QuotientSpace {
    pub fn bdim(&self) -> usize {
        self.incl.dim()
    }

    pub fn haar_eval(&self, x: &SparseVec) -> Scalar {
        self.haar.dot(x)
    }

    /// The inclusion `B → A` of an element in `B`-coordinates.
    pub fn embed(&self, b: &SparseVec) -> SparseVec {
        self.incl.basis.mul_vec(b)
    }
}

/// `φ₀` with `(ι⊗φ₀)Δ₀ = φ₀(·)1 = (φ₀⊗ι)Δ₀` and `φ₀(1) = 1`, as an element of
/// the dual.
fn haar_functional(a0: &HopfPresentation) -> Result<SparseVec> {
    let dual = a0.dual();
    let phi = dual.left_integral().map_err(|_| EngineError::NoHaarFunctional)?;
    for j in 0..dual.dim() {
        let w = SparseVec::unit(j);
        if dual.mul(&phi, &w) != phi.scale(&dual.eps_basis(j)) {
            return Err(EngineError::NoHaarFunctional);
        }
    }
    Ok(phi)
}

pub fn quotient(sd: &SubgroupDatum) -> Result<QuotientSpace> {
    let (da, d0) = (sd.a.dim(), sd.a0.dim());
    let haar = haar_functional(&sd.a0)?;
    let delta_r = Mat::from_rows(
        (0..da)
            .map(|i| {
                let mut acc = Accumulator::new();
                for (l, m, c) in sd.a.coproduct_terms(i) {
                    for (r, v) in sd.p.row(m).iter() {
                        acc.push(l * d0 + r, &c * v);
                    }
                }
                acc.finish()
            })
            .collect(),
        da * d0,
    );
    let one0 = sd.a0.one();
    let fixed = Mat::from_rows(
        (0..da)
            .map(|i| delta_r.row(i).sub(&one0.remap(|r| Some(i * d0 + r))))
            .collect(),
        da * d0,
    );
    let incl = linalg::left_kernel(&fixed);
    let b_alg = sd.a.alg.subalgebra(&incl)?;
    let expectation = Mat::from_rows(
        (0..da)
            .map(|i| {
                let mut acc = Accumulator::new();
                for (u, c) in delta_r.row(i).iter() {
                    let v = haar.get(u % d0);
                    if !v.is_zero() {
                        acc.push(u / d0, c * &v);
                    }
                }
                acc.finish()
            })
            .collect(),
        da,
    );
    let mut report = CheckReport::new();
    let bvecs = incl.vectors();
    let db = bvecs.len();
    let mut closed = CheckEntry::new("Delta(B) in A x B");
    let rows = bvecs
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let img = sd.a.comul(b);
            let mut acc = Accumulator::new();
            for l in 0..da {
                let leg = SparseVec::from_pairs(
                    img.iter()
                        .filter(|(u, _)| u / da == l)
                        .map(|(u, c)| (u % da, c.clone()))
                        .collect(),
                );
                if leg.is_zero() {
                    continue;
                }
                let ok = incl.contains(&leg);
                closed.record(ok, vec![i, l]);
                for (k, c) in incl.coords(&leg).iter() {
                    acc.push(l * db + k, c.clone());
                }
            }
            acc.finish()
        })
        .collect();
    report.push(closed);
    let coaction = FiniteCoaction {
        a: sd.a.clone(),
        b: b_alg,
        alpha: Mat::from_rows(rows, da * db),
    };
    let mut idem = CheckEntry::new("E^2 = E");
    idem.record(expectation.mul(&expectation) == expectation, Vec::new());
    report.push(idem);
    let mut onto = CheckEntry::new("E(A) in B");
    for i in 0..da {
        onto.record(incl.contains(expectation.row(i)), vec![i]);
    }
    report.push(onto);
    let mut ident = CheckEntry::new("E(b) = b on B");
    let mut bimod = CheckEntry::new("E(b a b') = b E(a) b'");
    for (i, b) in bvecs.iter().enumerate() {
        ident.record(expectation.vec_mul(b) == *b, vec![i]);
        for a in 0..da {
            let ea = expectation.row(a);
            let ba = sd.a.mul(b, &SparseVec::unit(a));
            for (j, b2) in bvecs.iter().enumerate() {
                let l = expectation.vec_mul(&sd.a.mul(&ba, b2));
                let r = sd.a.mul(&sd.a.mul(b, ea), b2);
                bimod.record(l == r, vec![i, a, j]);
            }
        }
    }
    report.push(ident);
    report.push(bimod);
    report.extend_prefixed("coaction: ", coaction.verify());
    Ok(QuotientSpace {
        datum: sd.clone(),
        delta_r,
        incl,
        haar,
        expectation,
        coaction,
        report,
    })
}

/// `A` as a right `Â`-module algebra, `a ◁ ω = (ω⊗ι)Δ(a)`; row-form matrix
/// of `◁ω_j` on `A`.
pub(crate) fn right_action_rows(a: &HopfPresentation, j: usize) -> Mat {
    let d = a.dim();
    Mat::from_rows(
        (0..d)
            .map(|i| {
                SparseVec::from_pairs(
                    a.coproduct_terms(i)
                        .into_iter()
                        .filter(|(l, _, _)| *l == j)
                        .map(|(_, m, c)| (m, c))
                        .collect(),
                )
            })
            .collect(),
        d,
    )
}

/// `AlgebraPresentation` of `B` is exposed through the coaction.
impl QuotientSpace {
    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.coaction.b
    }
}
