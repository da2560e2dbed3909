//! Finite-dimensional Hopf algebras by structure constants.

mod algebra;
pub mod examples;
mod wedderburn;

pub use algebra::AlgebraPresentation;
pub use wedderburn::{
    characters, primitive_idempotent, split_commutative, wedderburn_blocks, Block,
    BlockDecomposition,
};

use crate::error::{EngineError, Result};
use crate::linalg::{self, Accumulator, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// A Hopf algebra. Structure maps are stored by images: row `i` of
/// `comult`, `antipode` and `antipode_inv` is the image of `e_i`, and
/// `counit` holds `ε(e_i)` at position `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfPresentation {
    pub alg: AlgebraPresentation,
    pub comult: Mat,
    pub counit: SparseVec,
    pub antipode: Mat,
    pub antipode_inv: Mat,
}

impl HopfPresentation {
    /// Assembles a presentation; `S⁻¹` is computed by matrix inversion when
    /// not supplied.
    pub fn new(
        alg: AlgebraPresentation,
        comult: Mat,
        counit: SparseVec,
        antipode: Mat,
        antipode_inv: Option<Mat>,
    ) -> Result<Self> {
        let d = alg.dim;
        if comult.shape() != (d, d * d) {
            return Err(EngineError::Dimension(format!(
                "comultiplication must be {}x{}, got {:?}",
                d,
                d * d,
                comult.shape()
            )));
        }
        if antipode.shape() != (d, d) {
            return Err(EngineError::Dimension("antipode must be square".into()));
        }
        let antipode_inv = match antipode_inv {
            Some(m) => m,
            None => linalg::inverse(&antipode)?,
        };
        Ok(HopfPresentation {
            alg,
            comult,
            counit,
            antipode,
            antipode_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    pub fn one(&self) -> SparseVec {
        self.alg.unit.clone()
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.alg.mul(a, b)
    }

    pub fn comul(&self, a: &SparseVec) -> SparseVec {
        self.comult.vec_mul(a)
    }

    pub fn eps(&self, a: &SparseVec) -> Scalar {
        self.counit.dot(a)
    }

    pub fn eps_basis(&self, i: usize) -> Scalar {
        self.counit.get(i)
    }

    pub fn s(&self, a: &SparseVec) -> SparseVec {
        self.antipode.vec_mul(a)
    }

    pub fn s_inv(&self, a: &SparseVec) -> SparseVec {
        self.antipode_inv.vec_mul(a)
    }

    /// `Δ(e_i)` as `(left, right, coefficient)` terms.
    pub fn coproduct_terms(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        let d = self.dim();
        self.comult
            .row(i)
            .iter()
            .map(|(k, c)| (k / d, k % d, c.clone()))
            .collect()
    }

    /// Matrix of the iterated comultiplication `Δⁿ: H → H^{⊗(n+1)}` (rows are
    /// images of basis elements), with `Δ⁰ = ι`.
    pub fn delta_n(&self, n: usize) -> Mat {
        let d = self.dim();
        let mut acc = Mat::identity(d);
        for k in 0..n {
            // Apply Δ to the last leg of a k+1 fold tensor.
            acc = acc.mul(&Mat::identity(d.pow(k as u32)).kron(&self.comult));
        }
        acc
    }

    /// Sweedler terms of `Δⁿ(e_i)`: leg indices and coefficient.
    pub fn delta_terms(&self, i: usize, n: usize) -> Vec<(Vec<usize>, Scalar)> {
        let mut terms: Vec<(Vec<usize>, Scalar)> = vec![(vec![i], Scalar::one())];
        for _ in 0..n {
            let mut next = Vec::new();
            for (legs, c) in terms {
                let last = *legs.last().unwrap();
                for (a, b, x) in self.coproduct_terms(last) {
                    let mut l = legs[..legs.len() - 1].to_vec();
                    l.push(a);
                    l.push(b);
                    next.push((l, &c * &x));
                }
            }
            terms = next;
        }
        let mut acc: std::collections::BTreeMap<Vec<usize>, Scalar> = Default::default();
        for (legs, c) in terms {
            *acc.entry(legs).or_insert_with(Scalar::zero) += &c;
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn tensor_mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let d = self.dim();
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let l = self.alg.basis_product(i / d, j / d);
                let r = self.alg.basis_product(i % d, j % d);
                let c = a * b;
                for (p, u) in l.iter() {
                    for (q, v) in r.iter() {
                        acc.push(p * d + q, &(&c * u) * v);
                    }
                }
            }
        }
        acc.finish()
    }

    /// Every Hopf axiom on basis elements, with index witnesses.
    pub fn verify(&self) -> CheckReport {
        let d = self.dim();
        let mut report = self.alg.verify();
        let id = Mat::identity(d);

        let mut coassoc = CheckEntry::new("coassociativity");
        let left = self.comult.mul(&self.comult.kron(&id));
        let right = self.comult.mul(&id.kron(&self.comult));
        for i in 0..d {
            coassoc.record(left.row(i) == right.row(i), vec![i]);
        }
        report.push(coassoc);

        let mut counit = CheckEntry::new("counit");
        let eps_col = Mat::from_columns(std::slice::from_ref(&self.counit), d);
        let el = self.comult.mul(&eps_col.kron(&id));
        let er = self.comult.mul(&id.kron(&eps_col));
        for i in 0..d {
            let e = SparseVec::unit(i);
            counit.record(el.row(i) == &e && er.row(i) == &e, vec![i]);
        }
        report.push(counit);

        let mut dmult = CheckEntry::new("comult-multiplicative");
        let mut emult = CheckEntry::new("counit-multiplicative");
        for i in 0..d {
            for j in 0..d {
                let prod = self.alg.basis_product(i, j);
                let lhs = self.comul(prod);
                let rhs = self.tensor_mul(self.comult.row(i), self.comult.row(j));
                dmult.record(lhs == rhs, vec![i, j]);
                let e = &self.eps_basis(i) * &self.eps_basis(j);
                emult.record(self.eps(prod) == e, vec![i, j]);
            }
        }
        let u = self.one();
        let uu = Mat::from_rows(vec![u.clone()], d).kron(&Mat::from_rows(vec![u.clone()], d));
        dmult.record(self.comul(&u) == *uu.row(0), Vec::new());
        emult.record(self.eps(&u).is_one(), Vec::new());
        report.push(dmult);
        report.push(emult);

        let mut anti = CheckEntry::new("antipode");
        for i in 0..d {
            let target = u.scale(&self.eps_basis(i));
            let mut l = Accumulator::new();
            let mut r = Accumulator::new();
            for (a, b, c) in self.coproduct_terms(i) {
                let ea = SparseVec::unit(a);
                let eb = SparseVec::unit(b);
                l.push_scaled(&self.mul(&self.s(&ea), &eb), &c);
                r.push_scaled(&self.mul(&ea, &self.s(&eb)), &c);
            }
            anti.record(l.finish() == target && r.finish() == target, vec![i]);
        }
        report.push(anti);

        let mut inv = CheckEntry::new("antipode-inverse");
        let p = self.antipode.mul(&self.antipode_inv);
        let q = self.antipode_inv.mul(&self.antipode);
        for i in 0..d {
            let e = SparseVec::unit(i);
            inv.record(p.row(i) == &e && q.row(i) == &e, vec![i]);
        }
        report.push(inv);
        report
    }

    /// The linear dual with transposed structure maps, on the dual basis.
    pub fn dual(&self) -> HopfPresentation {
        let d = self.dim();
        HopfPresentation {
            alg: AlgebraPresentation {
                dim: d,
                mult: self.comult.transpose(),
                unit: self.counit.clone(),
            },
            comult: self.alg.mult.transpose(),
            counit: self.alg.unit.clone(),
            antipode: self.antipode.transpose(),
            antipode_inv: self.antipode_inv.transpose(),
        }
    }

    pub fn is_group_like(&self, rho: &SparseVec) -> bool {
        let d = self.dim();
        let r = Mat::from_rows(vec![rho.clone()], d);
        self.comul(rho) == *r.kron(&r).row(0) && self.eps(rho).is_one()
    }

    /// All group-like elements, as the characters of the dual algebra.
    pub fn group_likes(&self) -> Result<Vec<SparseVec>> {
        let mut out = characters(&self.dual().alg)?;
        out.retain(|g| self.is_group_like(g));
        out.sort_by(|a, b| compare_elements(a, b, &self.one()));
        Ok(out)
    }

    /// `η` with `ηω = ε(ω)η` for every `ω` and `ε(η) = 1`.
    pub fn right_integral(&self) -> Result<SparseVec> {
        self.integral(false)
    }

    /// `η` with `ωη = ε(ω)η` for every `ω` and `ε(η) = 1`.
    pub fn left_integral(&self) -> Result<SparseVec> {
        self.integral(true)
    }

    fn integral(&self, left: bool) -> Result<SparseVec> {
        let d = self.dim();
        let maps: Vec<Mat> = (0..d)
            .map(|j| {
                let w = SparseVec::unit(j);
                let m = if left {
                    self.alg.left_mult(&w)
                } else {
                    self.alg.right_mult(&w)
                };
                m.sub(&Mat::scalar(d, &self.eps_basis(j)))
            })
            .collect();
        let refs: Vec<&Mat> = maps.iter().collect();
        let space = linalg::joint_kernel(&refs);
        for v in space.vectors() {
            let e = self.eps(&v);
            if !e.is_zero() {
                return Ok(v.scale(&e.inv()));
            }
        }
        Err(EngineError::NoNormalizedIntegral)
    }

    /// `ρ⁻¹ = S(ρ)` for group-like `ρ`.
    pub fn group_like_inverse(&self, rho: &SparseVec) -> SparseVec {
        self.s(rho)
    }
}

/// Deterministic order on elements: the unit first, then lexicographic
/// coordinates.
pub fn compare_elements(a: &SparseVec, b: &SparseVec, unit: &SparseVec) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match (a == unit, b == unit) {
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    let n = a.max_index().max(b.max_index()).map_or(0, |m| m + 1);
    for i in 0..n {
        match a.get(i).lex_cmp(&b.get(i)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn group_algebra_z2_passes() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        assert!(h.verify().all_passed());
        assert!(h.antipode.is_identity());
    }

    #[test]
    fn sweedler_passes_with_s_squared_ad_g() {
        let h = sweedler();
        let r = h.verify();
        assert!(r.all_passed(), "{r}");
        let s2 = h.antipode.mul(&h.antipode);
        assert!(!s2.is_identity());
        let g = SparseVec::unit(SW_G);
        for i in 0..4 {
            let e = SparseVec::unit(i);
            let conj = h.mul(&h.mul(&g, &e), &g);
            assert_eq!(s2.row(i), &conj);
        }
    }

    #[test]
    fn sweedler_with_identity_antipode_fails_at_x() {
        let mut h = sweedler();
        h.antipode = Mat::identity(4);
        h.antipode_inv = Mat::identity(4);
        let r = h.verify();
        let e = r.get("antipode").unwrap();
        assert!(!e.passed);
        assert!(e.witnesses.contains(&vec![SW_X]));
    }

    #[test]
    fn delta_n_small_cases() {
        let h = sweedler();
        assert!(h.delta_n(0).is_identity());
        assert_eq!(h.delta_n(1), h.comult);
        let g = group_algebra(&FiniteGroup::cyclic(3));
        let d3 = g.delta_n(3);
        // group-like g = e_1: Δ³ g = g⊗g⊗g⊗g
        assert_eq!(d3.row(1), &SparseVec::unit(((1 * 3 + 1) * 3 + 1) * 3 + 1));
        assert_eq!(h.delta_terms(SW_X, 1).len(), 2);
    }

    #[test]
    fn duals_of_small_examples() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let d = h.dual();
        assert!(d.verify().all_passed());
        assert_eq!(d.alg, AlgebraPresentation::diagonal(2));
        assert_eq!(d.dual(), h);
        let s3 = function_algebra(&FiniteGroup::symmetric3());
        let ds3 = s3.dual();
        assert!(ds3.verify().all_passed());
        assert_eq!(ds3.dim(), 6);
        assert!(ds3.alg.center().dim() < 6);
    }

    #[test]
    fn group_likes_of_examples() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(h.group_likes().unwrap(), vec![SparseVec::unit(0), SparseVec::unit(1)]);
        let sw = sweedler();
        assert_eq!(
            sw.group_likes().unwrap(),
            vec![SparseVec::unit(SW_ONE), SparseVec::unit(SW_G)]
        );
        assert_eq!(trivial_hopf().group_likes().unwrap(), vec![SparseVec::unit(0)]);
        for g in sw.group_likes().unwrap() {
            assert_eq!(sw.mul(&sw.s(&g), &g), sw.one());
        }
    }

    #[test]
    fn integrals() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let half = Scalar::from_frac(1, 2);
        assert_eq!(
            h.right_integral().unwrap(),
            SparseVec::from_pairs(vec![(0, half.clone()), (1, half)])
        );
        assert_eq!(h.dual().right_integral().unwrap(), SparseVec::unit(0));
        assert_eq!(sweedler().right_integral(), Err(EngineError::NoNormalizedIntegral));
    }
}
