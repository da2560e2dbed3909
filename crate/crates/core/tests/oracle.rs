//! Dense cross-check of cochain and cyclic cohomology dimensions, built
//! straight from the structure constants with plain Gaussian elimination.

use hopf_cyclic::cocyclic::{cyclic_total, lambda_cohomology};
use hopf_cyclic::equivariant::{build_equivariant, build_nonequivariant, build_twisted, twist_of, DEFAULT_BUDGET};
use hopf_cyclic::fixtures::{self, Fixture};
use hopf_cyclic::hopf::examples::{function_algebra, FiniteGroup};
use hopf_cyclic::actions::RightModule;
use hopf_cyclic::hopf::AlgebraPresentation;
use hopf_cyclic::index::{f2_index_upgrade, ind_f, worked_index, EquivariantFredholmModule};
use hopf_cyclic::ktheory::check_idempotent;
use hopf_cyclic::linalg::{Mat, Scalar, SparseVec};
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;
type Dense = Vec<Vec<Q>>;

fn q(s: &Scalar) -> Q {
    s.as_rational().expect("rational fixture").clone()
}

fn dense(m: &Mat) -> Dense {
    m.to_dense().iter().map(|r| r.iter().map(q).collect()).collect()
}

fn rank(mut m: Dense) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for k in c..cols {
                    let v = &m[r][k] * &f;
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x : m x = 0}`.
fn nullspace(m: &Dense, cols: usize) -> Dense {
    let mut a: Dense = m.iter().filter(|r| r.iter().any(|v| !v.is_zero())).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for k in 0..cols {
            a[r][k] = &a[r][k] / &piv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let v = &a[r][k] * &f;
                    a[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][free].clone();
        }
        out.push(v);
    }
    out
}

fn matvec(m: &Dense, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Q::zero(), |acc, (x, r)| acc + x * &r[j]))
                .collect()
        })
        .collect()
}

fn kron(parts: &[Vec<Q>]) -> Vec<Q> {
    let mut out = vec![Q::one()];
    for p in parts {
        let mut next = Vec::with_capacity(out.len() * p.len());
        for a in &out {
            for b in p {
                next.push(a * b);
            }
        }
        out = next;
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn digits(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for k in (0..len).rev() {
        d[k] = x % base;
        x /= base;
    }
    d
}

/// Raw data: the leg space `L`, the algebra `B`, and how the coefficient leg
/// transforms.
struct Data {
    ldim: usize,
    bdim: usize,
    bmul: Vec<Vec<Vec<Q>>>,
    bone: Vec<Q>,
    /// `(η, b) ↦ (η₍₀₎, b◁η₍₁₎)` as a list of weighted pairs, for `t`.
    rotate: Vec<Vec<(usize, Vec<Q>, Q)>>,
    /// Rows `(ω ▷ − ε(ω))` on each level, as a function of level.
    constraints: Box<dyn Fn(&Data, usize) -> Dense>,
}

impl Data {
    fn amb(&self, n: usize) -> usize {
        self.ldim * self.bdim.pow(n as u32 + 1)
    }

    fn bprod(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.bdim];
        for (i, a) in x.iter().enumerate().filter(|p| !p.1.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|p| !p.1.is_zero()) {
                for (k, c) in self.bmul[i][j].iter().enumerate() {
                    out[k] += a * b * c;
                }
            }
        }
        out
    }

    fn split(&self, n: usize, x: usize) -> (usize, Vec<usize>) {
        let bs = digits(x % self.bdim.pow(n as u32 + 1), self.bdim, n + 1);
        (x / self.bdim.pow(n as u32 + 1), bs)
    }

    /// `(t f)` as a matrix on level `n`.
    fn t(&self, n: usize) -> Dense {
        (0..self.amb(n))
            .map(|x| {
                let (w, bs) = self.split(n, x);
                let mut row = vec![Q::zero(); self.amb(n)];
                for (l0, moved, c) in &self.rotate[w * self.bdim + bs[n]] {
                    let mut parts = vec![unit(self.ldim, *l0), moved.clone()];
                    parts.extend(bs[..n].iter().map(|&b| unit(self.bdim, b)));
                    for (r, v) in row.iter_mut().zip(kron(&parts)) {
                        *r += c * v;
                    }
                }
                row
            })
            .collect()
    }

    /// `d_i` for `i < n`, from level `n − 1` to level `n`.
    fn d(&self, n: usize, i: usize) -> Dense {
        (0..self.amb(n))
            .map(|x| {
                let (w, bs) = self.split(n, x);
                let mut parts = vec![unit(self.ldim, w)];
                for k in 0..n + 1 {
                    if k == i + 1 {
                        continue;
                    }
                    if k == i {
                        parts.push(self.bprod(&unit(self.bdim, bs[i]), &unit(self.bdim, bs[i + 1])));
                    } else {
                        parts.push(unit(self.bdim, bs[k]));
                    }
                }
                kron(&parts)
            })
            .collect()
    }

    fn b(&self, n: usize) -> Dense {
        let mut acc = vec![vec![Q::zero(); self.amb(n - 1)]; self.amb(n)];
        let mut maps: Vec<Dense> = (0..n).map(|i| self.d(n, i)).collect();
        maps.push(matmul(&self.t(n), &maps[0]));
        for (i, m) in maps.iter().enumerate() {
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            for (a, r) in acc.iter_mut().zip(m) {
                for (x, y) in a.iter_mut().zip(r) {
                    *x += &sign * y;
                }
            }
        }
        acc
    }

    /// Rows cutting out `C^n` and `ker(1 − λ)` inside the ambient space.
    fn lambda_rows(&self, n: usize) -> Dense {
        let mut rows = (self.constraints)(self, n);
        let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
        for (i, r) in self.t(n).into_iter().enumerate() {
            let mut r: Vec<Q> = r.into_iter().map(|v| -(&sign * v)).collect();
            r[i] += Q::one();
            rows.push(r);
        }
        rows
    }

    fn cochain_dim(&self, n: usize) -> usize {
        nullspace(&(self.constraints)(self, n), self.amb(n)).len()
    }

    /// `dim H^n` of Connes' complex `(C^n ∩ ker(1 − λ), b)`.
    fn hc(&self, n: usize) -> usize {
        let mut rows = self.lambda_rows(n);
        let bn1 = self.b(n + 1);
        rows.extend(bn1);
        let z = nullspace(&rows, self.amb(n)).len();
        if n == 0 {
            return z;
        }
        let prev = nullspace(&self.lambda_rows(n - 1), self.amb(n - 1));
        let bn = self.b(n);
        let img: Dense = prev.iter().map(|v| matvec(&bn, v)).collect();
        z - rank(img)
    }
}

fn b_data(alg: &AlgebraPresentation) -> (usize, Vec<Vec<Vec<Q>>>, Vec<Q>) {
    let d = alg.dim;
    let m = dense(&alg.mult);
    let bmul = (0..d).map(|i| (0..d).map(|j| m[i * d + j].clone()).collect()).collect();
    let one = (0..d).map(|i| q(&alg.unit.get(i))).collect();
    (d, bmul, one)
}

/// Iterated coproduct of a basis element into `legs` legs.
fn delta(comult: &Dense, hd: usize, j: usize, legs: usize) -> Vec<(Vec<usize>, Q)> {
    let mut terms = vec![(vec![j], Q::one())];
    for _ in 1..legs {
        let mut next = Vec::new();
        for (idx, c) in terms {
            let last = *idx.last().unwrap();
            for (k, v) in comult[last].iter().enumerate().filter(|p| !p.1.is_zero()) {
                let mut i2 = idx.clone();
                i2.pop();
                i2.push(k / hd);
                i2.push(k % hd);
                next.push((i2, &c * v));
            }
        }
        terms = next;
    }
    terms
}

fn equivariant(f: &Fixture) -> Data {
    let (bdim, bmul, bone) = b_data(&f.b.alg);
    let hd = f.h.dim();
    let comult = dense(&f.h.comult);
    let act = dense(&f.b.module.act);
    let rotate = (0..hd * bdim)
        .map(|r| {
            let (w, b) = (r / bdim, r % bdim);
            delta(&comult, hd, w, 2)
                .into_iter()
                .map(|(ix, c)| (ix[0], act[b * hd + ix[1]].clone(), c))
                .collect()
        })
        .collect();
    let h = f.h.clone();
    let constraints = Box::new(move |d: &Data, n: usize| {
        let hm = dense(&h.alg.mult);
        let sinv = dense(&h.antipode_inv);
        let hprod = |x: &[Q], y: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); hd];
            for (i, a) in x.iter().enumerate().filter(|p| !p.1.is_zero()) {
                for (j, b) in y.iter().enumerate().filter(|p| !p.1.is_zero()) {
                    for (k, c) in hm[i * hd + j].iter().enumerate() {
                        out[k] += a * b * c;
                    }
                }
            }
            out
        };
        let mut rows = Vec::new();
        for j in 0..hd {
            let eps = q(&h.eps_basis(j));
            let terms = delta(&comult, hd, j, n + 3);
            for x in 0..d.amb(n) {
                let (eta, bs) = d.split(n, x);
                let mut row = vec![Q::zero(); d.amb(n)];
                for (ix, c) in &terms {
                    let leg = hprod(&hprod(&sinv[ix[0]], &unit(hd, eta)), &unit(hd, ix[1]));
                    let mut parts = vec![leg];
                    for (k, &b) in bs.iter().enumerate() {
                        parts.push(act[b * hd + ix[k + 2]].clone());
                    }
                    for (r, v) in row.iter_mut().zip(kron(&parts)) {
                        *r += c * v;
                    }
                }
                row[x] -= &eps;
                rows.push(row);
            }
        }
        rows
    });
    Data {
        ldim: hd,
        bdim,
        bmul,
        bone,
        rotate,
        constraints,
    }
}

/// `θ`-twisted functionals on `B^{⊗(n+1)}`; `θ = None` is the classical case.
fn twisted(alg: &AlgebraPresentation, theta: Option<&Mat>) -> Data {
    let (bdim, bmul, bone) = b_data(alg);
    let th = theta.map(dense).unwrap_or_else(|| (0..bdim).map(|i| unit(bdim, i)).collect());
    let rotate = (0..bdim).map(|b| vec![(0, th[b].clone(), Q::one())]).collect();
    let constraints = Box::new(move |d: &Data, n: usize| {
        (0..d.amb(n))
            .map(|x| {
                let (_, bs) = d.split(n, x);
                let parts: Vec<Vec<Q>> = bs.iter().map(|&b| th[b].clone()).collect();
                let mut row = kron(&parts);
                row[x] -= Q::one();
                row
            })
            .collect()
    });
    Data {
        ldim: 1,
        bdim,
        bmul,
        bone,
        rotate,
        constraints,
    }
}

#[test]
fn unit_is_the_unit() {
    for f in [fixtures::f2(), fixtures::f3()] {
        let d = equivariant(&f);
        for i in 0..d.bdim {
            assert_eq!(d.bprod(&d.bone, &unit(d.bdim, i)), unit(d.bdim, i));
        }
    }
}

#[test]
fn equivariant_dimensions_match_the_oracle() {
    // values frozen from the dense oracle above
    let cases = [(fixtures::f1(), vec![1, 1], vec![1, 0]), (fixtures::f2(), vec![2, 4], vec![1, 0]), (fixtures::f3(), vec![5, 18], vec![4, 2])];
    for (f, dims, hcs) in cases {
        let d = equivariant(&f);
        let c = build_equivariant(&f.b, &f.h, 3, DEFAULT_BUDGET).unwrap();
        for n in 0..2 {
            assert_eq!(d.cochain_dim(n), dims[n], "{} C^{n}", f.name);
            assert_eq!(c.dim(n), dims[n], "{} C^{n}", f.name);
            assert_eq!(d.hc(n), hcs[n], "{} HC^{n} oracle", f.name);
            assert_eq!(cyclic_total(&c.object, n).unwrap().dim(), hcs[n], "{} HC^{n}", f.name);
            assert_eq!(lambda_cohomology(&c.object, n).unwrap().dim(), hcs[n], "{} H_lambda^{n}", f.name);
        }
    }
}

#[test]
fn twisted_dimensions_match_the_oracle() {
    let f2 = fixtures::f2();
    let f3 = fixtures::f3();
    let g = SparseVec::unit(1);
    let cases = [
        ("f2 swap", f2.b.alg.clone(), twist_of(&f2.b, &g), vec![0, 0]),
        ("f3 g", f3.b.alg.clone(), twist_of(&f3.b, &g), vec![2, 1]),
    ];
    for (name, alg, theta, hcs) in cases {
        let d = twisted(&alg, Some(&theta));
        let c = build_twisted(&alg, &theta, 3, DEFAULT_BUDGET).unwrap();
        for n in 0..2 {
            assert_eq!(c.dim(n), d.cochain_dim(n), "{name} C^{n}");
            assert_eq!(d.hc(n), hcs[n], "{name} HC^{n} oracle");
            assert_eq!(cyclic_total(&c.object, n).unwrap().dim(), hcs[n], "{name} HC^{n}");
        }
    }
}

#[test]
fn classical_dimensions_match_the_oracle() {
    let cases = [
        ("C(Z/2)", function_algebra(&FiniteGroup::cyclic(2)).alg, vec![2, 0]),
        ("Mat2", AlgebraPresentation::matrix_algebra(2), vec![1, 0]),
        ("H4", fixtures::f3().b.alg, vec![2, 1]),
    ];
    for (name, alg, hcs) in cases {
        let d = twisted(&alg, None);
        let c = build_nonequivariant(&alg, 3, DEFAULT_BUDGET).unwrap();
        for n in 0..2 {
            assert_eq!(d.hc(n), hcs[n], "{name} HC^{n} oracle");
            assert_eq!(cyclic_total(&c.object, n).unwrap().dim(), hcs[n], "{name} HC^{n}");
        }
    }
}

fn trace(m: &Dense) -> Q {
    (0..m.len()).fold(Q::zero(), |acc, i| acc + &m[i][i])
}

fn sub_block(m: &Dense, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Dense {
    m[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

/// `½Tr(γπ_U(ω)(P − FPF)^{2n+1})`, which is `φ_F(ω⊗P⊗…⊗P)`, and, at the unit, the Fredholm
/// index from ranks.
fn connes_index(fm: &EquivariantFredholmModule, p: &SparseVec, n: usize) -> (Vec<Q>, i64) {
    let (mi, m) = (fm.minus, fm.dim());
    let pm = dense(&fm.pi_of(p));
    let f = dense(&fm.f);
    let fpf = matmul(&matmul(&f, &pm), &f);
    let diff: Dense = pm.iter().zip(&fpf).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
    let mut pow = diff.clone();
    for _ in 0..2 * n {
        pow = matmul(&pow, &diff);
    }
    let half = Q::new(1.into(), 2.into());
    let values = fm
        .u
        .iter()
        .map(|u| {
            let mut gu = dense(u);
            for row in gu.iter_mut().take(mi) {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            trace(&matmul(&gu, &pow)) * &half
        })
        .collect();
    let op = matmul(&matmul(&sub_block(&pm, 0..mi, 0..mi), &sub_block(&f, 0..mi, mi..m)), &sub_block(&pm, mi..m, mi..m));
    let r = rank(op) as i64;
    let ker = rank(sub_block(&pm, mi..m, mi..m)) as i64 - r;
    let coker = rank(sub_block(&pm, 0..mi, 0..mi)) as i64 - r;
    (values, ker - coker)
}

#[test]
fn index_fixtures_match_the_oracle() {
    // values frozen from the dense trace formula above
    let worked = worked_index();
    let up = f2_index_upgrade();
    let cases = [
        (&worked, SparseVec::unit(0), vec![1], 1),
        (&worked, SparseVec::unit(1), vec![-1], -1),
        (&worked, worked.coaction.b.unit.clone(), vec![0], 0),
        (&up, up.coaction.b.unit.clone(), vec![2, 0], 2),
    ];
    for (fm, p, values, dim) in cases {
        let golden: Vec<Q> = values.iter().map(|&v| Q::from_integer(v.into())).collect();
        for n in 0..3 {
            let (oracle, d) = connes_index(fm, &p, n);
            assert_eq!(oracle, golden);
            assert_eq!(d, dim);
        }
        let dual = fm.coaction.dual();
        let x = RightModule::trivial(1, &dual);
        let ip = check_idempotent(&x, &fm.coaction.module_algebra(), &dual, &p).unwrap();
        let ind = ind_f(fm, &ip).unwrap();
        assert_eq!(ind.values.iter().map(q).collect::<Vec<_>>(), golden);
        assert_eq!(ind.kernel_dim as i64 - ind.cokernel_dim as i64, dim);
    }
}

fn perm_compose(a: [usize; 3], b: [usize; 3]) -> [usize; 3] {
    [a[b[0]], a[b[1]], a[b[2]]]
}

fn s3_perms() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                if x != y && y != z && x != z {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// `dim {f : G → Q | f(gk) = χ(k) f(g)}` for `K = {id, (01)}` and `χ(swap) = sign`.
fn induced_dim(sign: i64) -> usize {
    let g = s3_perms();
    let swap = [1, 0, 2];
    let rows: Dense = (0..g.len())
        .map(|i| {
            let j = g.iter().position(|&h| h == perm_compose(g[i], swap)).unwrap();
            let mut r = vec![Q::zero(); g.len()];
            r[j] += Q::one();
            r[i] -= Q::from_integer(sign.into());
            r
        })
        .collect();
    g.len() - rank(rows)
}

/// `dim Z(A)` from structure constants: `{z : z e_j = e_j z}`.
fn center_dim(alg: &AlgebraPresentation) -> usize {
    let d = alg.dim;
    let mut rows: Dense = Vec::new();
    for j in 0..d {
        for k in 0..d {
            let mut r = vec![Q::zero(); d];
            for (i, c) in r.iter_mut().enumerate() {
                let a = alg.basis_product(i, j).get(k);
                let b = alg.basis_product(j, i).get(k);
                *c = q(&a) - q(&b);
            }
            rows.push(r);
        }
    }
    d - rank(rows)
}

#[test]
fn homogeneous_space_matches_the_oracle() {
    use hopf_cyclic::homogeneous::{s3_z2, HomogeneousSpace};
    let (b, sign) = (induced_dim(1), induced_dim(-1));
    assert_eq!((b, sign), (3, 3));
    let hs = HomogeneousSpace::new(&s3_z2()).unwrap();
    assert_eq!(hs.quotient.bdim(), b);
    let mut at: Vec<usize> = hs.spectral.iter().map(|s| s.a_t.dim()).collect();
    at.sort();
    assert_eq!(at, vec![b.min(sign), b.max(sign)]);
    assert_eq!(at.iter().sum::<usize>(), 6);
    assert_eq!(center_dim(&hs.cp.alg), 2);
    assert_eq!(hs.blocks.sizes.len(), 2);
}
