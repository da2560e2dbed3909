use super::*;
use crate::actions::{mat_to_vec, tensor_vec};
use crate::equivariant::DEFAULT_BUDGET;
use crate::hopf::examples::{group_algebra, sweedler, FiniteGroup, SW_G};
use crate::ktheory::{check_idempotent, unit_of, InvariantIdempotent};
use crate::linalg::{Mat, Scalar, SparseVec};

fn idem(fm: &EquivariantFredholmModule, x: &RightModule, p: &SparseVec) -> InvariantIdempotent {
    let dual = fm.coaction.dual();
    check_idempotent(x, &fm.coaction.module_algebra(), &dual, p).unwrap()
}

fn scalar_p(fm: &EquivariantFredholmModule, p: SparseVec) -> InvariantIdempotent {
    let x = RightModule::trivial(1, &fm.coaction.dual());
    idem(fm, &x, &p)
}

fn unit_p(fm: &EquivariantFredholmModule) -> InvariantIdempotent {
    scalar_p(fm, fm.coaction.b.unit.clone())
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

#[test]
fn fixtures_are_fredholm_modules() {
    for fm in [trivial_fredholm(), worked_index(), f2_index_upgrade()] {
        let r = verify_fredholm(&fm);
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn verify_reports_witnesses() {
    let mut fm = worked_index();
    fm.f = fm.f.scale(&Scalar::from_int(2));
    let r = verify_fredholm(&fm);
    assert!(!r.passed("F^2 = 1"));
    let mut fm = f2_index_upgrade();
    fm.pi[0] = Mat::diag(&ints(&[1, 0, 1, 0]));
    fm.pi[1] = Mat::diag(&ints(&[0, 0, 0, 1]));
    let r = verify_fredholm(&fm);
    let e = r.get("pi_U(w_0) pi(b < w_1) = pi(b) pi_U(w)").unwrap();
    assert!(!e.passed);
    assert!(e.witnesses.contains(&vec![0, 1]));
}

#[test]
fn phi_f_examples() {
    let fm = trivial_fredholm();
    for n in 0..2 {
        let ch = phi_f(&fm, n, DEFAULT_BUDGET).unwrap();
        assert!(ch.cochain.is_zero());
        assert!(ch.report.all_passed());
    }
    let fm = worked_index();
    let ch = phi_f(&fm, 0, DEFAULT_BUDGET).unwrap();
    assert!(ch.report.all_passed(), "{}", ch.report);
    let amb = ch.complex.lift(0, &ch.cochain);
    assert_eq!(amb.get(ch.complex.model.encode(0, &[0])), Scalar::one());
    let ch = phi_f(&fm, 1, DEFAULT_BUDGET).unwrap();
    assert!(ch.report.all_passed(), "{}", ch.report);
    assert!(!ch.cochain.is_zero());
    for n in 0..2 {
        let ch = phi_f(&f2_index_upgrade(), n, DEFAULT_BUDGET).unwrap();
        assert!(ch.report.all_passed(), "{}", ch.report);
    }
}

#[test]
fn worked_index_values() {
    let fm = worked_index();
    let ind = ind_f(&fm, &scalar_p(&fm, SparseVec::unit(0))).unwrap();
    assert_eq!(ind.values, ints(&[1]));
    assert_eq!((ind.kernel_dim, ind.cokernel_dim), (1, 0));
    let ind = ind_f(&fm, &unit_p(&fm)).unwrap();
    assert_eq!(ind.values, ints(&[0]));
    let ind = ind_f(&fm, &scalar_p(&fm, SparseVec::unit(1))).unwrap();
    assert_eq!(ind.values, ints(&[-1]));
    let fm = trivial_fredholm();
    assert_eq!(ind_f(&fm, &unit_p(&fm)).unwrap().values, ints(&[0]));
}

#[test]
fn index_theorem_on_fixtures() {
    let fm = worked_index();
    for p in [SparseVec::unit(0), SparseVec::unit(1), fm.coaction.b.unit.clone()] {
        let p = scalar_p(&fm, p);
        for n in 0..2 {
            let r = index_theorem_check(&fm, &p, n, DEFAULT_BUDGET).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }
    let fm = f2_index_upgrade();
    let p = unit_p(&fm);
    assert_eq!(ind_f(&fm, &p).unwrap().values, ints(&[2, 0]));
    for n in 0..2 {
        let r = index_theorem_check(&fm, &p, n, DEFAULT_BUDGET).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn index_through_a_nontrivial_module() {
    let fm = f2_index_upgrade();
    let dual = fm.coaction.dual();
    let b = fm.coaction.module_algebra();
    let x = RightModule::regular(&dual);
    let p = idem(&fm, &x, &unit_of(2, &b));
    let ind = ind_f(&fm, &p).unwrap();
    assert_eq!(ind.values, ints(&[4, 0]));
    let half = Scalar::from_frac(1, 2);
    let avg = x.op_matrix(&SparseVec::from_pairs(vec![(0, half.clone()), (1, half)]));
    let q = idem(&fm, &x, &tensor_vec(&mat_to_vec(&avg), &b.alg.unit, b.dim()));
    assert_eq!(ind_f(&fm, &q).unwrap().values, ints(&[2, 0]));
    for p in [&p, &q] {
        let r = index_theorem_check(&fm, p, 0, DEFAULT_BUDGET).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn index_is_additive() {
    let fm = worked_index();
    let a = ind_f(&fm, &scalar_p(&fm, SparseVec::unit(0))).unwrap();
    let b = ind_f(&fm, &scalar_p(&fm, SparseVec::unit(1))).unwrap();
    let s = ind_f(&fm, &unit_p(&fm)).unwrap();
    assert_eq!(s.values[0], &a.values[0] + &b.values[0]);
}

#[test]
fn block_projection_values() {
    let fm = f2_index_upgrade();
    let ind = ind_f(&fm, &unit_p(&fm)).unwrap();
    let mut vals = ind.at_block_projections(&fm.coaction.dual()).unwrap();
    vals.sort_by(|a, b| a.lex_cmp(b));
    assert_eq!(vals, ints(&[1, 1]));
}

#[test]
fn modular_elements() {
    let fm = f2_index_upgrade();
    let m = modular_element(&fm.coaction.dual()).unwrap();
    assert_eq!(m.rho, fm.coaction.dual().one());
    assert_eq!(m.candidates.len(), 2);
    let g = group_algebra(&FiniteGroup::symmetric3());
    assert_eq!(modular_element(&g).unwrap().rho, g.one());
    let sw = sweedler();
    let m = modular_element(&sw).unwrap();
    assert_eq!(m.rho, SparseVec::unit(SW_G));
    assert_eq!(m.candidates.len(), 1);
}

#[test]
fn quantum_index() {
    let fm = worked_index();
    let rho = modular_element(&fm.coaction.dual()).unwrap().rho;
    let p = scalar_p(&fm, SparseVec::unit(0));
    assert_eq!(q_ind(&fm, &p, &rho).unwrap(), Scalar::one());
    assert!(q_ind(&fm, &unit_p(&fm), &rho).unwrap().is_zero());
    for n in 0..2 {
        let r = twisted_index_check(&fm, &p, &rho, n, DEFAULT_BUDGET).unwrap();
        assert!(r.all_passed(), "{r}");
    }
    let fm = f2_index_upgrade();
    let dual = fm.coaction.dual();
    let p = unit_p(&fm);
    for rho in modular_element(&dual).unwrap().candidates {
        let expected = ind_f(&fm, &p).unwrap().eval(&rho);
        assert_eq!(q_ind(&fm, &p, &rho).unwrap(), expected);
        for n in 0..2 {
            let r = twisted_index_check(&fm, &p, &rho, n, DEFAULT_BUDGET).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }
}

#[test]
fn twisted_phi_at_the_unit_matches_phi() {
    let fm = worked_index();
    let one = fm.coaction.dual().one();
    let t = twisted_phi_f(&fm, &one, 0, DEFAULT_BUDGET).unwrap();
    let ch = phi_f(&fm, 0, DEFAULT_BUDGET).unwrap();
    assert_eq!(t.complex.lift(0, &t.cochain), ch.complex.lift(0, &ch.cochain));
}

#[test]
fn v_twist_examples() {
    let fm = f2_index_upgrade();
    let dual = fm.coaction.dual();
    let triv = Corepresentation::trivial(&dual);
    assert_eq!(v_twist(&fm, &triv).unwrap(), fm);
    let reg = Corepresentation::from_right_module(&RightModule::regular(&dual), &dual);
    let tm = v_twist(&fm, &reg).unwrap();
    let r = verify_fredholm(&tm);
    assert!(r.all_passed(), "{r}");
    assert!(twisted_action_comparison(&fm, &reg).unwrap().all_passed());
    for v in [&triv, &reg] {
        let r = psi_compatibility(&fm, v, 0, DEFAULT_BUDGET).unwrap();
        assert!(r.all_passed(), "{r}");
    }
    let bad = Corepresentation {
        dim: 2,
        mats: vec![Mat::identity(2), Mat::from_ints(&[&[1, 1], &[0, 1]])],
    };
    assert!(matches!(v_twist(&fm, &bad), Err(EngineError::VNotCorepresentation(_))));
}

use crate::actions::RightModule;
use crate::error::EngineError;
