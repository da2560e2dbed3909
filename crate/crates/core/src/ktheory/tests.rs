use super::*;
use crate::actions::{crossed_product, mat_to_vec, tensor_vec, CrossedProduct};
use crate::cocyclic::lambda_cohomology;
use crate::equivariant::{build_equivariant, build_twisted, rho_star_matrix, twist_of, EquivariantComplex, DEFAULT_BUDGET};
use crate::fixtures::{self, Fixture};
use crate::hopf::examples::{function_algebra, group_algebra, FiniteGroup, SW_G};
use crate::hopf::AlgebraPresentation;
use crate::linalg::{self, Mat, Scalar, SparseVec};

fn eq(f: &Fixture, m: usize) -> EquivariantComplex {
    build_equivariant(&f.b, &f.h, m, DEFAULT_BUDGET).unwrap()
}

fn one_dim(f: &Fixture) -> RightModule {
    RightModule::trivial(1, &f.h)
}

fn unit_p(f: &Fixture, x: &RightModule) -> InvariantIdempotent {
    check_idempotent(x, &f.b, &f.h, &unit_of(x.dim, &f.b)).unwrap()
}

/// `T ⊗ 1_B` for an `n × n` matrix `T`.
fn mat_tensor_one(t: &Mat, f: &Fixture) -> SparseVec {
    tensor_vec(&mat_to_vec(t), &f.b.alg.unit, f.b.dim())
}

fn cyclic_cocycles(c: &EquivariantComplex, n: usize) -> Vec<SparseVec> {
    lambda_cohomology(&c.object, n).unwrap().space.cocycles.vectors()
}

#[test]
fn idempotent_examples() {
    for f in [fixtures::f1(), fixtures::f2(), fixtures::f3()] {
        let x = one_dim(&f);
        assert!(check_idempotent(&x, &f.b, &f.h, &f.b.alg.unit).is_ok(), "{}", f.name);
    }
    let f = fixtures::f2();
    let x = one_dim(&f);
    assert!(matches!(
        check_idempotent(&x, &f.b, &f.h, &SparseVec::unit(0)),
        Err(EngineError::NotInvariant(_))
    ));
    let two = SparseVec::from_pairs(vec![(0, Scalar::from_int(2)), (1, Scalar::from_int(2))]);
    assert!(matches!(
        check_idempotent(&x, &f.b, &f.h, &two),
        Err(EngineError::NotIdempotent(_))
    ));
    // averaging projection (e+g)/2 on the regular module
    let reg = RightModule::regular(&f.h);
    let half = Scalar::from_frac(1, 2);
    let avg = reg.op_matrix(&SparseVec::from_pairs(vec![(0, half.clone()), (1, half)]));
    assert!(check_idempotent(&reg, &f.b, &f.h, &mat_tensor_one(&avg, &f)).is_ok());
}

#[test]
fn gamma0_examples() {
    let f = fixtures::f2();
    let x = RightModule::trivial(2, &f.h);
    let e = |i: usize, j: usize| mat_tensor_one(&crate::actions::matrix_unit(2, i * 2 + j), &f);
    let p = check_idempotent(&x, &f.b, &f.h, &e(0, 0)).unwrap();
    let p2 = check_idempotent(&x, &f.b, &f.h, &e(1, 1)).unwrap();
    let (g0, pp, pp2) = gamma0(&f.b, &f.h, &p, &p2, &e(1, 0), &e(0, 1)).unwrap();
    let big = crate::actions::endx_tensor_b(&g0.x, &f.b, &f.h);
    assert_eq!(big.alg.mul(&big.alg.mul(&g0.u, &pp), &g0.u_inv), pp2);
    // p = p′ with γ = γ′ = p
    let (g0, pp, pp2) = gamma0(&f.b, &f.h, &p, &p, &p.p, &p.p).unwrap();
    assert_eq!(big.alg.mul(&big.alg.mul(&g0.u, &pp), &g0.u_inv), pp2);
    assert!(matches!(
        gamma0(&f.b, &f.h, &p, &p2, &e(1, 0), &e(1, 0)),
        Err(EngineError::WitnessEquationsFail(_))
    ));
}

#[test]
fn trivial_even_pairing_is_evaluation() {
    for f in [fixtures::f2(), fixtures::f3()] {
        let c = eq(&f, 2);
        let p = unit_p(&f, &one_dim(&f));
        for z in cyclic_cocycles(&c, 0) {
            let v = pair_even(&c, 0, &z, &p).unwrap();
            let amb = c.lift(0, &z);
            for w in 0..f.h.dim() {
                let direct = f.b.alg.unit.iter().fold(Scalar::zero(), |acc, (k, a)| {
                    acc + a * &amb.get(c.model.encode(w, &[*k]))
                });
                assert_eq!(v.values[w], direct, "{} at {w}", f.name);
            }
            assert_eq!(v.invariance_defects(&f.h), 0);
        }
    }
}

#[test]
fn f2_trace_pairing() {
    let f = fixtures::f2();
    let c = eq(&f, 2);
    let hc = lambda_cohomology(&c.object, 0).unwrap();
    let tr = &hc.representatives()[0];
    let lifted = c.lift(0, tr);
    let cst = lifted.get(0);
    let v = pair_even(&c, 0, tr, &unit_p(&f, &one_dim(&f))).unwrap();
    assert_eq!(v.values, vec![&cst + &cst, Scalar::zero()]);
    // stabilization by a zero block
    let triv = RightModule::trivial(1, &f.h);
    let st = stabilize(&unit_p(&f, &one_dim(&f)), &triv, &f.b);
    assert_eq!(pair_even(&c, 0, tr, &st).unwrap(), v);
}

fn even_laws(f: &Fixture, x: &RightModule, p: &SparseVec) {
    let c = eq(f, 3);
    let p = check_idempotent(x, &f.b, &f.h, p).unwrap();
    let st = stabilize(&p, &RightModule::regular(&f.h), &f.b);
    let prev = linalg::kernel(&c.object.one_minus_lambda(1));
    for deg in [0, 2] {
        for z in cyclic_cocycles(&c, deg) {
            let v = pair_even(&c, deg, &z, &p).unwrap();
            assert_eq!(v.invariance_defects(&f.h), 0, "{} deg {deg}", f.name);
            assert_eq!(pair_even(&c, deg, &z, &st).unwrap(), v);
            if deg == 2 {
                for g in prev.vectors() {
                    let shifted = z.add(&c.object.b(2).mul_vec(&g));
                    assert_eq!(pair_even(&c, deg, &shifted, &p).unwrap(), v);
                }
            }
        }
    }
}

#[test]
fn even_pairing_laws() {
    let f = fixtures::f2();
    let reg = RightModule::regular(&f.h);
    let half = Scalar::from_frac(1, 2);
    let avg = reg.op_matrix(&SparseVec::from_pairs(vec![(0, half.clone()), (1, half)]));
    even_laws(&f, &reg, &mat_tensor_one(&avg, &f));
    even_laws(&f, &one_dim(&f), &f.b.alg.unit);
    let f = fixtures::f3();
    even_laws(&f, &one_dim(&f), &f.b.alg.unit);
    let x = RightModule::trivial(2, &f.h);
    even_laws(&f, &x, &mat_tensor_one(&crate::actions::matrix_unit(2, 0), &f));
}

#[test]
fn even_pairing_survives_similarity() {
    let f = fixtures::f2();
    let c = eq(&f, 2);
    let x = RightModule::trivial(2, &f.h);
    let e = |i: usize, j: usize| mat_tensor_one(&crate::actions::matrix_unit(2, i * 2 + j), &f);
    let p = check_idempotent(&x, &f.b, &f.h, &e(0, 0)).unwrap();
    let p2 = check_idempotent(&x, &f.b, &f.h, &e(1, 1)).unwrap();
    let (g0, pp, pp2) = gamma0(&f.b, &f.h, &p, &p2, &e(1, 0), &e(0, 1)).unwrap();
    for z in cyclic_cocycles(&c, 0) {
        let a = pair_even(&c, 0, &z, &InvariantIdempotent { x: g0.x.clone(), p: pp.clone() }).unwrap();
        let b = pair_even(&c, 0, &z, &InvariantIdempotent { x: g0.x.clone(), p: pp2.clone() }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, pair_even(&c, 0, &z, &p).unwrap());
    }
}

#[test]
fn pairing_rejects_non_cocycles() {
    let f = fixtures::f3();
    let c = eq(&f, 2);
    let p = unit_p(&f, &one_dim(&f));
    let bad = (0..c.dim(0))
        .map(SparseVec::unit)
        .find(|v| !c.object.b(1).mul_vec(v).is_zero())
        .unwrap();
    assert!(matches!(pair_even(&c, 0, &bad, &p), Err(EngineError::NotACocycle(_))));
}

fn invariant_units(f: &Fixture) -> Vec<InvariantInvertible> {
    let x = one_dim(f);
    let inv = f.b.module.invariants(&f.h).vectors();
    let one = f.b.alg.unit.clone();
    let mut out = Vec::new();
    for v in &inv {
        for s in [1, 2, -3] {
            let u = one.add(&v.scale(&Scalar::from_int(s)));
            if let Ok(u) = check_invertible(&x, &f.b, &f.h, &u) {
                out.push(u);
            }
        }
    }
    out
}

#[test]
fn odd_pairing_laws() {
    let f = fixtures::f3();
    let c = eq(&f, 3);
    let units = invariant_units(&f);
    assert!(units.len() >= 2);
    let x = one_dim(&f);
    let one = check_invertible(&x, &f.b, &f.h, &f.b.alg.unit).unwrap();
    let big = crate::actions::endx_tensor_b(&x, &f.b, &f.h);
    for z in cyclic_cocycles(&c, 1) {
        assert!(pair_odd(&c, 1, &z, &one, &f.b).unwrap().is_zero());
        for u in &units {
            let val = pair_odd(&c, 1, &z, u, &f.b).unwrap();
            assert_eq!(val.invariance_defects(&f.h), 0);
            // direct formula f(ω⊗(u⁻¹−1)⊗(u−1)) for X = C
            let amb = c.lift(1, &z);
            let a = u.u_inv.sub(&f.b.alg.unit);
            let bb = u.u.sub(&f.b.alg.unit);
            for w in 0..f.h.dim() {
                let mut direct = Scalar::zero();
                for (i, s) in a.iter() {
                    for (j, t) in bb.iter() {
                        direct += &(&(s * t) * &amb.get(c.model.encode(w, &[*i, *j])));
                    }
                }
                assert_eq!(val.values[w], direct);
            }
            let st = stabilize_invertible(u, &RightModule::regular(&f.h), &f.b);
            assert_eq!(pair_odd(&c, 1, &z, &st, &f.b).unwrap(), val);
            for v in &units {
                let uv = check_invertible(&x, &f.b, &f.h, &big.alg.mul(&u.u, &v.u)).unwrap();
                let sum = val.add(&pair_odd(&c, 1, &z, v, &f.b).unwrap());
                assert_eq!(pair_odd(&c, 1, &z, &uv, &f.b).unwrap(), sum);
            }
        }
    }
}

#[test]
fn unipotents_pair_to_zero() {
    for f in [fixtures::f2(), fixtures::f3()] {
        let c = eq(&f, 3);
        let x = RightModule::trivial(2, &f.h);
        let n = mat_tensor_one(&crate::actions::matrix_unit(2, 1), &f);
        let u = check_invertible(&x, &f.b, &f.h, &unit_of(2, &f.b).add(&n)).unwrap();
        for z in cyclic_cocycles(&c, 1) {
            assert!(pair_odd(&c, 1, &z, &u, &f.b).unwrap().is_zero(), "{}", f.name);
        }
    }
}

#[test]
fn odd_homotopy_instance() {
    // u_s = 1 + s·e for an invariant central idempotent e, s = 0, 1/2, 1
    let f = fixtures::f3();
    let c = eq(&f, 2);
    let x = one_dim(&f);
    let inv = f.b.module.invariants(&f.h).vectors();
    let e = inv
        .iter()
        .find(|v| f.b.alg.mul(v, v) == **v && **v != f.b.alg.unit)
        .cloned()
        .unwrap_or_else(SparseVec::new);
    let path: Vec<InvariantInvertible> = [(0, 1), (1, 2), (1, 1)]
        .iter()
        .map(|&(a, b)| {
            let u = f.b.alg.unit.add(&e.scale(&Scalar::from_frac(a, b)));
            check_invertible(&x, &f.b, &f.h, &u).unwrap()
        })
        .collect();
    for z in cyclic_cocycles(&c, 1) {
        let vals: Vec<_> = path.iter().map(|u| pair_odd(&c, 1, &z, u, &f.b).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn triangular_relation() {
    for f in [fixtures::f2(), fixtures::f3()] {
        let c = eq(&f, 2);
        let units = invariant_units(&f);
        let inv = f.b.module.invariants(&f.h).vectors();
        for z in cyclic_cocycles(&c, 1) {
            for t in [SparseVec::new(), inv.last().unwrap().scale(&Scalar::from_int(2))] {
                let r = triangular_relation_check(&c, 1, &z, &units[0], &units[units.len() - 1], &t, &f.b, &f.h).unwrap();
                assert!(r.all_passed(), "{}", f.name);
            }
        }
    }
}

#[test]
fn twisted_square_commutes() {
    for f in [fixtures::f2(), fixtures::f3()] {
        let c = eq(&f, 3);
        let g = SparseVec::unit(if f.name == "f3" { SW_G } else { 1 });
        let tw = build_twisted(&f.b.alg, &twist_of(&f.b, &g), 3, DEFAULT_BUDGET).unwrap();
        let idems = [
            unit_p(&f, &one_dim(&f)),
            check_idempotent(
                &RightModule::trivial(2, &f.h),
                &f.b,
                &f.h,
                &mat_tensor_one(&crate::actions::matrix_unit(2, 3), &f),
            )
            .unwrap(),
            unit_p(&f, &RightModule::regular(&f.h)),
        ];
        for deg in [0, 2] {
            let rho = rho_star_matrix(&c, &tw, &g, deg).unwrap();
            for z in cyclic_cocycles(&c, deg) {
                for p in &idems {
                    let lhs = pair_twisted(&tw, deg, &rho.mul_vec(&z), p, &g, &f.h).unwrap();
                    let rhs = pair_even(&c, deg, &z, p).unwrap().eval(&g);
                    assert_eq!(lhs, rhs, "{} deg {deg}", f.name);
                }
            }
        }
    }
}

#[test]
fn twisted_pairing_at_the_unit() {
    let f = fixtures::f3();
    let c = eq(&f, 2);
    let one = f.h.one();
    let tw = build_twisted(&f.b.alg, &Mat::identity(4), 2, DEFAULT_BUDGET).unwrap();
    let rho = rho_star_matrix(&c, &tw, &one, 0).unwrap();
    let p = unit_p(&f, &RightModule::regular(&f.h));
    for z in cyclic_cocycles(&c, 0) {
        let lhs = pair_twisted(&tw, 0, &rho.mul_vec(&z), &p, &one, &f.h).unwrap();
        assert_eq!(lhs, pair_even(&c, 0, &z, &p).unwrap().eval(&one));
    }
    // F2: twisted traces for the swap vanish, so the pairing with p = 1 is f(1) = 0
    let f = fixtures::f2();
    let g = SparseVec::unit(1);
    let tw = build_twisted(&f.b.alg, &twist_of(&f.b, &g), 2, DEFAULT_BUDGET).unwrap();
    for z in lambda_cohomology(&tw.object, 0).unwrap().space.cocycles.vectors() {
        let v = pair_twisted(&tw, 0, &z, &unit_p(&f, &one_dim(&f)), &g, &f.h).unwrap();
        let amb = tw.lift(0, &z);
        assert_eq!(v, &amb.get(0) + &amb.get(1));
    }
}

fn cp_of(f: &Fixture) -> CrossedProduct {
    crossed_product(&f.b, &f.h)
}

#[test]
fn k0_examples() {
    let f = fixtures::f2();
    let k = k0_semisimple(&cp_of(&f)).unwrap();
    assert_eq!((k.rank, k.block_sizes.clone()), (1, vec![2]));
    let h = group_algebra(&FiniteGroup::cyclic(2));
    let b = crate::actions::ModuleAlgebra::trivial(function_algebra(&FiniteGroup::cyclic(2)).alg, &h);
    assert_eq!(k0_semisimple(&crossed_product(&b, &h)).unwrap().rank, 4);
    let b = crate::actions::ModuleAlgebra::trivial(AlgebraPresentation::ground(), &h);
    assert_eq!(k0_semisimple(&crossed_product(&b, &h)).unwrap().rank, 2);
    let f3 = fixtures::f3();
    assert!(matches!(k0_semisimple(&cp_of(&f3)), Err(EngineError::NotSemisimple(_))));
}

#[test]
fn julg_forward_examples() {
    let f = fixtures::f2();
    let cp = cp_of(&f);
    let reg = RightModule::regular(&f.h);
    let jp = julg_forward(&unit_p(&f, &reg), &f.b, &f.h, &cp).unwrap();
    assert!(jp.report.all_passed(), "{}", jp.report);
    assert_eq!(jp.module.dim, reg.dim * f.b.dim());
    // trivial H: q = p
    let f1 = fixtures::f1();
    let x = RightModule::trivial(2, &f1.h);
    let p = check_idempotent(&x, &f1.b, &f1.h, &SparseVec::unit(0)).unwrap();
    let jp = julg_forward(&p, &f1.b, &f1.h, &cp_of(&f1)).unwrap();
    assert_eq!(jp.q, vec![SparseVec::unit(0), SparseVec::new(), SparseVec::new(), SparseVec::new()]);
    let f3 = fixtures::f3();
    assert_eq!(
        julg_forward(&unit_p(&f3, &one_dim(&f3)), &f3.b, &f3.h, &cp_of(&f3)).unwrap_err(),
        EngineError::HNotSemisimple
    );
}

#[test]
fn julg_cyclic_module() {
    // X = q₀H with q₀ = (e+g)/2, p = 1: ω⊗b ↦ ωb onto q₀(B⋊H)
    let f = fixtures::f2();
    let cp = cp_of(&f);
    let half = Scalar::from_frac(1, 2);
    let q0 = SparseVec::from_pairs(vec![(0, half.clone()), (1, half)]);
    let reg = RightModule::regular(&f.h);
    let span = linalg::span(2, &[f.h.mul(&q0, &SparseVec::unit(0)), f.h.mul(&q0, &SparseVec::unit(1))]);
    let x = RightModule::from_fn(span.dim(), 2, |i, j| span.coords(&reg.act(&span.basis.column(i), &SparseVec::unit(j))));
    let y = a_module_of(&x, &f.b, &f.h, &cp);
    let q0a = cp.embed_h(&q0, &f.b.alg.unit);
    let img: Vec<SparseVec> = (0..cp.alg.dim).map(|a| cp.alg.mul(&q0a, &SparseVec::unit(a))).collect();
    let target_span = linalg::span(cp.alg.dim, &img);
    let target = RightModule::from_fn(target_span.dim(), cp.alg.dim, |i, a| {
        target_span.coords(&cp.alg.mul(&target_span.basis.column(i), &SparseVec::unit(a)))
    });
    let cols: Vec<SparseVec> = (0..y.dim)
        .map(|r| {
            let w = span.basis.column(r / f.b.dim());
            let wb = cp.alg.mul(&cp.embed_h(&w, &f.b.alg.unit), &cp.embed_b(&SparseVec::unit(r % f.b.dim()), &f.h));
            target_span.coords(&wb)
        })
        .collect();
    let phi = Mat::from_columns(&cols, target.dim);
    assert!(linalg::inverse(&phi).is_ok());
    for a in 0..cp.alg.dim {
        let u = SparseVec::unit(a);
        assert_eq!(phi.mul(&y.op_matrix(&u)), target.op_matrix(&u).mul(&phi));
    }
    let jp = julg_forward(&unit_p(&f, &x), &f.b, &f.h, &cp).unwrap();
    assert!(iso_test(&jp.module, &target, &cp.alg, 7, 8).is_certified_iso());
}

#[test]
fn julg_round_trip() {
    let f = fixtures::f2();
    let cp = cp_of(&f);
    let xs = [one_dim(&f), RightModule::regular(&f.h), RightModule::trivial(2, &f.h)];
    for x in &xs {
        let jp = julg_forward(&unit_p(&f, x), &f.b, &f.h, &cp).unwrap();
        let back = julg_reverse(&jp.q, jp.k, &f.b, &f.h, &cp).unwrap();
        let again = julg_forward(&back, &f.b, &f.h, &cp).unwrap();
        assert!(again.report.all_passed());
        assert!(iso_test(&jp.module, &again.module, &cp.alg, 1, 8).is_certified_iso());
    }
    // start from q = E₀₀ ∈ B⋊H ≅ Mat₂
    let blocks = crate::hopf::wedderburn_blocks(&cp.alg).unwrap();
    let q = vec![blocks.blocks[0].matrix_units[0][0].clone()];
    let p = julg_reverse(&q, 1, &f.b, &f.h, &cp).unwrap();
    let jp = julg_forward(&p, &f.b, &f.h, &cp).unwrap();
    let direct = free_module(&cp.alg, 1);
    let span = linalg::span(cp.alg.dim, &linalg::image_basis(&cp.alg.left_mult(&q[0])));
    let qa = RightModule::from_fn(span.dim(), cp.alg.dim, |i, a| span.coords(&direct.act(&span.basis.column(i), &SparseVec::unit(a))));
    assert!(iso_test(&qa, &jp.module, &cp.alg, 3, 8).is_certified_iso());
    assert!(julg_reverse(&[SparseVec::unit(1)], 1, &f.b, &f.h, &cp).is_err());
}

#[test]
fn iso_test_examples() {
    let f = fixtures::f2();
    let cp = cp_of(&f);
    let m = free_module(&cp.alg, 1);
    assert_eq!(iso_test(&m, &m, &cp.alg, 0, 8), IsoResult::CertifiedIso(Mat::identity(4)));
    let m2 = free_module(&cp.alg, 2);
    assert_eq!(iso_test(&m, &m2, &cp.alg, 0, 8).tag(), "certified-noniso");
    let blocks = crate::hopf::wedderburn_blocks(&cp.alg).unwrap();
    let units = &blocks.blocks[0].matrix_units;
    let row = |e: &SparseVec| {
        let span = linalg::span(4, &linalg::image_basis(&cp.alg.left_mult(e)));
        RightModule::from_fn(span.dim(), 4, |i, a| span.coords(&m.act(&span.basis.column(i), &SparseVec::unit(a))))
    };
    let r = iso_test(&row(&units[0][0]), &row(&units[1][1]), &cp.alg, 0, 8);
    assert!(r.is_certified_iso());
    // C(Z/2)⋊C[Z/2] with trivial action: two distinct characters
    let h = group_algebra(&FiniteGroup::cyclic(2));
    let b = crate::actions::ModuleAlgebra::trivial(function_algebra(&FiniteGroup::cyclic(2)).alg, &h);
    let cp = crossed_product(&b, &h);
    let bl = crate::hopf::wedderburn_blocks(&cp.alg).unwrap();
    let free = free_module(&cp.alg, 1);
    let piece = |e: &SparseVec| {
        let span = linalg::span(4, &linalg::image_basis(&cp.alg.left_mult(e)));
        RightModule::from_fn(span.dim(), 4, |i, a| span.coords(&free.act(&span.basis.column(i), &SparseVec::unit(a))))
    };
    let r = iso_test(&piece(&bl.blocks[0].central_idempotent), &piece(&bl.blocks[1].central_idempotent), &cp.alg, 0, 8);
    assert_eq!(r.tag(), "certified-noniso");
}

#[test]
fn f2_k0_survey() {
    let f = fixtures::f2();
    let cp = cp_of(&f);
    let s = k0_survey(&f.b, &f.h, &cp, 4, 11).unwrap();
    assert!(s.report.all_passed(), "{}", s.report);
    assert_eq!(s.group_rank, 1);
    assert!(s.entries.iter().all(|e| e.class[0] == e.ranks.iter().sum::<usize>()));
}
