use super::*;
use crate::hopf::examples::{function_algebra, group_algebra, sweedler, FiniteGroup};
use crate::ktheory::{check_idempotent, unit_of};
use crate::actions::RightModule;

#[test]
fn subgroup_data_verify() {
    let g = function_algebra(&FiniteGroup::symmetric3());
    for sd in [s3_z2(), SubgroupDatum::identity(&g), SubgroupDatum::trivial_subgroup(&g)] {
        let r = verify_subgroup(&sd);
        assert!(r.all_passed(), "{r}");
    }
    let mut bad = s3_z2();
    bad.p = Mat::from_rows((0..6).map(|_| SparseVec::unit(0)).collect(), 2);
    let r = verify_subgroup(&bad);
    assert!(!r.passed("P(a a') = P(a) P(a')"));
    assert!(!r.passed("P is surjective"));
}

#[test]
fn quotient_of_s3_by_z2() {
    let q = quotient(&s3_z2()).unwrap();
    assert!(q.report.all_passed(), "{}", q.report);
    assert_eq!(q.bdim(), 3);
    assert_eq!(q.algebra().dim, 3);
    // B = functions constant on the cosets gK
    for b in q.incl.vectors() {
        let g = FiniteGroup::symmetric3();
        for x in 0..6 {
            assert_eq!(b.get(x), b.get(g.mul(x, 1)));
        }
    }
}

#[test]
fn extreme_subgroups() {
    let g = function_algebra(&FiniteGroup::symmetric3());
    let q = quotient(&SubgroupDatum::trivial_subgroup(&g)).unwrap();
    assert!(q.report.all_passed(), "{}", q.report);
    assert_eq!(q.bdim(), 6);
    assert_eq!(q.expectation, Mat::identity(6));
    let q = quotient(&SubgroupDatum::identity(&g)).unwrap();
    assert!(q.report.all_passed(), "{}", q.report);
    assert_eq!(q.bdim(), 1);
}

#[test]
fn haar_functional_needs_a_two_sided_integral() {
    let sw = sweedler();
    let sd = SubgroupDatum::identity(&sw);
    assert!(matches!(quotient(&sd), Err(EngineError::NoHaarFunctional)));
}

#[test]
fn spectral_modules_of_s3_z2() {
    let hs = HomogeneousSpace::new(&s3_z2()).unwrap();
    let r = hs.report();
    assert!(r.all_passed(), "{r}");
    assert_eq!(hs.class_count(), 2);
    assert_eq!(hs.dims(), vec![3, 3]);
    for s in &hs.spectral {
        assert_eq!(s.a_t.dim(), 3);
        assert_eq!(s.hdim(), 1);
    }
    assert_eq!(hs.cp.alg.dim, 18);
    assert_eq!(hs.blocks.sizes, vec![3, 3]);
    let trivial = hs
        .spectral
        .iter()
        .find(|s| s.v.mats.iter().enumerate().all(|(c, m)| m.get(0, 0) == hs.quotient.datum.a0.dual().eps_basis(c)))
        .unwrap();
    assert_eq!(trivial.a_t.dim(), hs.quotient.bdim());
    assert!(hs.quotient.incl.vectors().iter().all(|b| trivial.a_t.contains(b)));
}

#[test]
fn extreme_spaces_have_the_expected_blocks() {
    let g = function_algebra(&FiniteGroup::symmetric3());
    let hs = HomogeneousSpace::new(&SubgroupDatum::trivial_subgroup(&g)).unwrap();
    assert!(hs.report().all_passed(), "{}", hs.report());
    assert_eq!(hs.blocks.sizes, vec![6]);
    assert_eq!(hs.dims(), vec![6]);
    let hs = HomogeneousSpace::new(&SubgroupDatum::identity(&g)).unwrap();
    assert!(hs.report().all_passed(), "{}", hs.report());
    assert_eq!(hs.class_count(), 3);
    let mut dims = hs.dims();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 2]);
}

#[test]
fn decompose_the_free_module() {
    let hs = HomogeneousSpace::new(&s3_z2()).unwrap();
    let x = RightModule::regular(&hs.dual);
    let p = check_idempotent(&x, &hs.b, &hs.dual, &unit_of(6, &hs.b)).unwrap();
    let m = module_of_idempotent(&hs, &p).unwrap();
    assert_eq!(m.dim, 18);
    let d = decompose_equivariant(&hs, &m, 7).unwrap();
    assert_eq!(d.multiplicities, vec![3, 3]);
    assert_eq!(d.iso, "certified-iso");
}

#[test]
fn decomposition_survey_to_dimension_twelve() {
    let hs = HomogeneousSpace::new(&s3_z2()).unwrap();
    let s = decomposition_survey(&hs, 12, 11).unwrap();
    assert!(s.report.all_passed(), "{}", s.report);
    assert_eq!(s.expected.len(), 14);
    assert!(s.rows.iter().all(|r| r.decomposition.iso == "certified-iso"));
}

#[test]
fn missing_class_is_an_error() {
    let hs = HomogeneousSpace::new(&s3_z2()).unwrap();
    let reps = classes(&hs.quotient).unwrap();
    assert!(matches!(spectral_subspace(&hs.quotient, &reps, 5), Err(EngineError::ClassNotFound(5))));
    let g = group_algebra(&FiniteGroup::cyclic(2));
    assert!(verify_subgroup(&SubgroupDatum::identity(&g)).all_passed());
}

#[test]
fn functions_on_the_group_contain_each_class_once() {
    let hs = HomogeneousSpace::new(&s3_z2()).unwrap();
    let m = hs.function_module();
    assert_eq!(m.dim, 6);
    let d = decompose_equivariant(&hs, &m, 3).unwrap();
    assert_eq!(d.multiplicities, vec![1, 1]);
    for s in &hs.spectral {
        let mut e = vec![0; 2];
        e[s.class] = 1;
        assert_eq!(decompose_equivariant(&hs, &s.module, 3).unwrap().multiplicities, e);
    }
}

#[test]
fn trivial_corepresentation_gives_the_trivial_class() {
    let hs = HomogeneousSpace::new(&s3_z2()).unwrap();
    let trivial = hs
        .spectral
        .iter()
        .position(|s| s.a_t.dim() == hs.quotient.bdim() && hs.quotient.incl.vectors().iter().all(|b| s.a_t.contains(b)))
        .unwrap();
    for d in 1..=3 {
        let x = RightModule::trivial(d, &hs.dual);
        let p = check_idempotent(&x, &hs.b, &hs.dual, &unit_of(d, &hs.b)).unwrap();
        let m = module_of_idempotent(&hs, &p).unwrap();
        let dec = decompose_equivariant(&hs, &m, 5).unwrap();
        let mut e = vec![0; 2];
        e[trivial] = d;
        assert_eq!(dec.multiplicities, e);
    }
}

#[test]
fn inner_product_is_hermitian_and_b_linear() {
    let hs = HomogeneousSpace::new(&s3_z2()).unwrap();
    let q = &hs.quotient;
    let star = Mat::identity(6);
    for s in &hs.spectral {
        let xs = s.x_t.vectors();
        for x in &xs {
            for y in &xs {
                let xy = inner_product(q, &star, s.hdim(), x, y);
                assert_eq!(xy, inner_product(q, &star, s.hdim(), y, x));
                for b in q.incl.vectors() {
                    let yb = y.remap(Some);
                    let yb = (0..s.hdim()).fold(SparseVec::new(), |acc, k| {
                        let part = yb.remap(|u| (u / 6 == k).then_some(u % 6));
                        acc.add(&q.datum.a.mul(&part, &b).remap(|u| Some(k * 6 + u)))
                    });
                    let lhs = q.embed(&inner_product(q, &star, s.hdim(), x, &yb));
                    let rhs = q.datum.a.mul(&q.embed(&xy), &b);
                    assert_eq!(lhs, rhs);
                }
            }
            assert!(!inner_product(q, &star, s.hdim(), x, x).is_zero());
        }
    }
}
