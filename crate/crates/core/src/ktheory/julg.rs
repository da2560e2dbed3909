//! Modules over `B⋊H`: the Julg correspondence, isomorphism tests and `K₀`
//! of a split semisimple crossed product.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_idempotent, InvariantIdempotent};
use crate::actions::{endx_tensor_b, matrix_unit, tensor_vec, CrossedProduct, ModuleAlgebra, RightModule};
use crate::error::{EngineError, Result};
use crate::hopf::{wedderburn_blocks, AlgebraPresentation, HopfPresentation};
use crate::linalg::{self, Kernel, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

fn module_from_ops(ops: &[Mat], dim: usize) -> RightModule {
    RightModule::from_fn(dim, ops.len(), |i, a| ops[a].column(i))
}

fn ops_of(m: &RightModule) -> Vec<Mat> {
    (0..m.hdim).map(|a| m.op_matrix(&SparseVec::unit(a))).collect()
}

/// `X⊗B` as a right `B⋊H`-module, `(x⊗b′)·(b⊗ω) = (x⊗b′b)◁ω`.
pub fn a_module_of(x: &RightModule, b: &ModuleAlgebra, h: &HopfPresentation, cp: &CrossedProduct) -> RightModule {
    let xb = x.tensor(&b.module, h);
    let hops: Vec<Mat> = (0..h.dim()).map(|j| xb.op_matrix(&SparseVec::unit(j))).collect();
    let bops: Vec<Mat> = (0..b.dim())
        .map(|k| Mat::identity(x.dim).kron(&b.alg.right_mult(&SparseVec::unit(k))))
        .collect();
    let ops: Vec<Mat> = (0..cp.alg.dim)
        .map(|a| hops[a % cp.hdim].mul(&bops[a / cp.hdim]))
        .collect();
    module_from_ops(&ops, x.dim * b.dim())
}

/// The free module `(B⋊H)^k` with `e_i·a ↦ i·dim(A) + a`.
pub fn free_module(alg: &AlgebraPresentation, k: usize) -> RightModule {
    let d = alg.dim;
    RightModule::from_fn(k * d, d, |y, a| {
        let (i, c) = (y / d, y % d);
        alg.basis_product(c, a).remap(|t| Some(i * d + t))
    })
}

/// The submodule on an invariant subspace, in its coordinates.
pub fn restrict_module(m: &RightModule, span: &Kernel) -> RightModule {
    let ops: Vec<Mat> = ops_of(m)
        .iter()
        .map(|op| span.coords_of_columns(&op.mul(&span.basis)))
        .collect();
    module_from_ops(&ops, span.dim())
}

fn is_module_map(f: &Mat, src: &RightModule, tgt: &RightModule, gens: &[usize]) -> bool {
    gens.iter().all(|&a| {
        let u = SparseVec::unit(a);
        f.mul(&src.op_matrix(&u)) == tgt.op_matrix(&u).mul(f)
    })
}

/// A projective presentation `X_p ≅ q·(B⋊H)^k` with the certifying maps.
#[derive(Clone, Debug)]
pub struct JulgPresentation {
    pub k: usize,
    /// Entries `q_ij ∈ B⋊H`, row-major.
    pub q: Vec<SparseVec>,
    /// `X_p = p(X⊗B)` as a `B⋊H`-module.
    pub x_p: RightModule,
    /// `q·(B⋊H)^k` as a `B⋊H`-module.
    pub module: RightModule,
    pub forward: Mat,
    pub backward: Mat,
    pub report: CheckReport,
}

/// Operator of `T ∈ End(X)⊗B` on `X⊗B`.
fn end_operator(t: &SparseVec, n: usize, b: &ModuleAlgebra) -> Mat {
    let db = b.dim();
    let mut acc = Mat::zeros(n * db, n * db);
    for (u, c) in t.iter() {
        let term = matrix_unit(n, u / db).kron(&b.alg.left_mult(&SparseVec::unit(u % db)));
        acc = acc.add_scaled(&term, c);
    }
    acc
}

/// `X_p` as `q·(B⋊H)^{dim X}`: `X⊗B` is a quotient of the free module on
/// the `x_i⊗1`, split by averaging a `B`-linear section with a normalized
/// right integral of `H`.
pub fn julg_forward(
    p: &InvariantIdempotent,
    b: &ModuleAlgebra,
    h: &HopfPresentation,
    cp: &CrossedProduct,
) -> Result<JulgPresentation> {
    let eta = h.right_integral().map_err(|_| EngineError::HNotSemisimple)?;
    let x = &p.x;
    let (n, db, ad) = (x.dim, b.dim(), cp.alg.dim);
    let y = a_module_of(x, b, h, cp);
    let free = free_module(&cp.alg, n);
    let xb = x.tensor(&b.module, h);
    let t_cols: Vec<SparseVec> = (0..n * ad)
        .map(|r| {
            let gen = tensor_vec(&SparseVec::unit(r / ad), &b.alg.unit, db);
            y.act(&gen, &SparseVec::unit(r % ad))
        })
        .collect();
    let t = Mat::from_columns(&t_cols, n * db);
    let s_cols: Vec<SparseVec> = (0..n * db)
        .map(|r| cp.embed_b(&SparseVec::unit(r % db), h).remap(|c| Some((r / db) * ad + c)))
        .collect();
    let s = Mat::from_columns(&s_cols, n * ad);
    let mut avg = Mat::zeros(n * ad, n * db);
    for (w, c) in eta.iter() {
        for (l0, l1, k) in h.coproduct_terms(*w) {
            let left = free.op_matrix(&cp.embed_h(&SparseVec::unit(l0), &b.alg.unit));
            let right = xb.op_matrix(h.antipode_inv.row(l1));
            avg = avg.add_scaled(&left.mul(&s).mul(&right), &(c * &k));
        }
    }
    let gens = cp.alg.generators();
    let mut report = CheckReport::default();
    report.push(CheckEntry::single("T S = 1", t.mul(&avg).is_identity()));
    report.push(CheckEntry::single("averaged section is B⋊H-linear", is_module_map(&avg, &y, &free, &gens)));
    let pop = end_operator(&p.p, n, b);
    let qop = avg.mul(&pop).mul(&t);
    let one = cp.embed_b(&b.alg.unit, h);
    let q: Vec<SparseVec> = (0..n * n)
        .map(|e| {
            let (i, j) = (e / n, e % n);
            let col = qop.mul_vec(&one.remap(|a| Some(j * ad + a)));
            col.remap(|r| (r / ad == i).then_some(r % ad))
        })
        .collect();
    let xp_span = linalg::span(n * db, &linalg::image_basis(&pop));
    let qf_span = linalg::span(n * ad, &linalg::image_basis(&qop));
    let x_p = restrict_module(&y, &xp_span);
    let module = restrict_module(&free, &qf_span);
    let forward = qf_span.coords_of_columns(&avg.mul(&xp_span.basis));
    let backward = xp_span.coords_of_columns(&t.mul(&qf_span.basis));
    report.push(CheckEntry::single("backward forward = 1", backward.mul(&forward).is_identity()));
    report.push(CheckEntry::single("forward backward = 1", forward.mul(&backward).is_identity()));
    report.push(CheckEntry::single("forward is B⋊H-linear", is_module_map(&forward, &x_p, &module, &gens)));
    report.push(CheckEntry::single("q^2 = q", qop.mul(&qop) == qop));
    Ok(JulgPresentation {
        k: n,
        q,
        x_p,
        module,
        forward,
        backward,
        report,
    })
}

/// Operator of left multiplication by `q ∈ Mat_k(B⋊H)` on `(B⋊H)^k`.
fn q_operator(q: &[SparseVec], k: usize, alg: &AlgebraPresentation) -> Mat {
    let ad = alg.dim;
    let mut rows = vec![Vec::new(); k * ad];
    for i in 0..k {
        for j in 0..k {
            let l = alg.left_mult(&q[i * k + j]);
            for (r, row) in l.rows().iter().enumerate() {
                for (c, v) in row.iter() {
                    rows[i * ad + r].push((j * ad + c, v.clone()));
                }
            }
        }
    }
    Mat::from_rows(rows.into_iter().map(SparseVec::from_pairs).collect(), k * ad)
}

/// `q·(B⋊H)^k` as an invariant idempotent: `X` is the `H`-module spanned by
/// the generators `q e_i`, and `p = T′T` for `T(x⊗b) = xb`,
/// `T′(e_i a) = (qe_i⊗1)·a`.
pub fn julg_reverse(
    q: &[SparseVec],
    k: usize,
    b: &ModuleAlgebra,
    h: &HopfPresentation,
    cp: &CrossedProduct,
) -> Result<InvariantIdempotent> {
    let (ad, db) = (cp.alg.dim, b.dim());
    if q.len() != k * k {
        return Err(EngineError::Dimension(format!("q must have {} entries", k * k)));
    }
    let qop = q_operator(q, k, &cp.alg);
    if qop.mul(&qop) != qop {
        return Err(EngineError::NotIdempotent("q".into()));
    }
    let free = free_module(&cp.alg, k);
    let one = cp.embed_b(&b.alg.unit, h);
    let ys: Vec<SparseVec> = (0..k)
        .map(|i| qop.mul_vec(&one.remap(|a| Some(i * ad + a))))
        .collect();
    let mut spanning = Vec::new();
    for yv in &ys {
        for j in 0..h.dim() {
            spanning.push(free.act(yv, &cp.embed_h(&SparseVec::unit(j), &b.alg.unit)));
        }
    }
    let xs = linalg::span(k * ad, &spanning);
    let m = xs.dim();
    let x = restrict_module(
        &RightModule::from_fn(k * ad, h.dim(), |r, j| {
            free.act(&SparseVec::unit(r), &cp.embed_h(&SparseVec::unit(j), &b.alg.unit))
        }),
        &xs,
    );
    let y = a_module_of(&x, b, h, cp);
    let t_cols: Vec<SparseVec> = (0..m * db)
        .map(|r| free.act(&xs.basis.column(r / db), &cp.embed_b(&SparseVec::unit(r % db), h)))
        .collect();
    let t = Mat::from_columns(&t_cols, k * ad);
    let tp_cols: Vec<SparseVec> = (0..k * ad)
        .map(|r| {
            let z = tensor_vec(&xs.coords(&ys[r / ad]), &b.alg.unit, db);
            y.act(&z, &SparseVec::unit(r % ad))
        })
        .collect();
    let tp = Mat::from_columns(&tp_cols, m * db);
    let pop = tp.mul(&t);
    let mut pairs = Vec::new();
    for j in 0..m {
        let col = pop.mul_vec(&tensor_vec(&SparseVec::unit(j), &b.alg.unit, db));
        for (r, v) in col.iter() {
            let (i, kk) = (r / db, r % db);
            pairs.push(((i * m + j) * db + kk, v.clone()));
        }
    }
    let p = SparseVec::from_pairs(pairs);
    if end_operator(&p, m, b) != pop {
        return Err(EngineError::Inconsistent);
    }
    check_idempotent(&x, b, h, &p)
}

#[derive(Clone, Debug, PartialEq)]
pub enum IsoResult {
    /// An invertible intertwiner `m1 → m2`.
    CertifiedIso(Mat),
    CertifiedNonIso(String),
    HeuristicNonIso { samples: usize },
}

impl IsoResult {
    pub fn tag(&self) -> &'static str {
        match self {
            IsoResult::CertifiedIso(_) => "certified-iso",
            IsoResult::CertifiedNonIso(_) => "certified-noniso",
            IsoResult::HeuristicNonIso { .. } => "heuristic-noniso",
        }
    }

    pub fn is_certified_iso(&self) -> bool {
        matches!(self, IsoResult::CertifiedIso(_))
    }
}

/// Basis of `Hom_A(m1, m2)` as `dim m2 × dim m1` matrices.
pub fn intertwiners(m1: &RightModule, m2: &RightModule, alg: &AlgebraPresentation) -> Vec<Mat> {
    let (d1, d2) = (m1.dim, m2.dim);
    let mut eqs = Vec::new();
    for a in alg.generators() {
        let u = SparseVec::unit(a);
        let o1 = m1.op_matrix(&u);
        let o2 = m2.op_matrix(&u);
        let o1t = o1.transpose();
        // (φ o1 − o2 φ)_{rc} in the unknowns φ_{rs} = r·d1 + s
        for r in 0..d2 {
            for c in 0..d1 {
                let mut e = Vec::new();
                for (s, v) in o1t.row(c).iter() {
                    e.push((r * d1 + s, v.clone()));
                }
                for (s, v) in o2.row(r).iter() {
                    e.push((s * d1 + c, -v));
                }
                let e = SparseVec::from_pairs(e);
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
    }
    let k = linalg::kernel(&Mat::from_rows(eqs, d1 * d2));
    k.vectors()
        .iter()
        .map(|v| {
            let mut rows = vec![Vec::new(); d2];
            for (u, c) in v.iter() {
                rows[u / d1].push((u % d1, c.clone()));
            }
            Mat::from_rows(rows.into_iter().map(SparseVec::from_pairs).collect(), d1)
        })
        .collect()
}

/// Multiplicities of the simple blocks of a split semisimple `A` in `m`.
pub fn multiplicities(m: &RightModule, alg: &AlgebraPresentation) -> Result<Vec<usize>> {
    let blocks = wedderburn_blocks(alg)?;
    Ok(blocks
        .blocks
        .iter()
        .map(|bl| m.op_matrix(&bl.central_idempotent).rank() / bl.size)
        .collect())
}

/// Decides `m1 ≅ m2` over `A`; random intertwiners use integer coefficients
/// in `[−3, 3]` drawn from `seed`.
pub fn iso_test(m1: &RightModule, m2: &RightModule, alg: &AlgebraPresentation, seed: u64, samples: usize) -> IsoResult {
    if m1.dim != m2.dim {
        return IsoResult::CertifiedNonIso(format!("dimensions {} and {}", m1.dim, m2.dim));
    }
    if m1 == m2 {
        return IsoResult::CertifiedIso(Mat::identity(m1.dim));
    }
    let homs = intertwiners(m1, m2, alg);
    if !homs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut phi = Mat::zeros(m2.dim, m1.dim);
            for h in &homs {
                let c: i64 = rng.gen_range(-3..=3);
                phi = phi.add_scaled(h, &Scalar::from_int(c));
            }
            if linalg::inverse(&phi).is_ok() {
                return IsoResult::CertifiedIso(phi);
            }
        }
    }
    if let (Ok(a), Ok(b)) = (multiplicities(m1, alg), multiplicities(m2, alg)) {
        if a != b {
            return IsoResult::CertifiedNonIso(format!("multiplicities {a:?} and {b:?}"));
        }
    }
    IsoResult::HeuristicNonIso { samples }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct K0Semisimple {
    pub rank: usize,
    pub block_sizes: Vec<usize>,
    /// One minimal idempotent `E_00` per block.
    #[serde(skip)]
    pub generators: Vec<SparseVec>,
}

/// `K₀(B⋊H) ≅ Z^{#blocks}` for a split semisimple crossed product.
pub fn k0_semisimple(cp: &CrossedProduct) -> Result<K0Semisimple> {
    let blocks = wedderburn_blocks(&cp.alg)?;
    Ok(K0Semisimple {
        rank: blocks.len(),
        block_sizes: blocks.sizes(),
        generators: blocks.blocks.iter().map(|b| b.matrix_units[0][0].clone()).collect(),
    })
}

/// One invariant idempotent of the survey and its class in `K₀(B⋊H)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyEntry {
    /// Multiplicities of the simple `H`-modules in `X`.
    pub x_type: Vec<usize>,
    /// Ranks of `p` in the blocks of `End_{B⋊H}(X⊗B)`.
    pub ranks: Vec<usize>,
    pub class: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct K0Survey {
    pub entries: Vec<SurveyEntry>,
    pub group_rank: usize,
    pub report: CheckReport,
}

/// The simple right `H`-modules `E_00·H`, one per block.
fn simple_modules(h: &HopfPresentation) -> Result<Vec<RightModule>> {
    let blocks = wedderburn_blocks(&h.alg)?;
    let reg = RightModule::regular(h);
    Ok(blocks
        .blocks
        .iter()
        .map(|bl| {
            let gens: Vec<SparseVec> = (0..h.dim()).map(|j| h.mul(&bl.matrix_units[0][0], &SparseVec::unit(j))).collect();
            restrict_module(&reg, &linalg::span(h.dim(), &gens))
        })
        .collect())
}

fn compositions(parts: &[usize], budget: usize) -> Vec<Vec<usize>> {
    // multiplicity vectors with Σ m_i·parts_i ≤ budget
    let mut out = vec![vec![]];
    for &d in parts {
        let mut next = Vec::new();
        for v in &out {
            let used: usize = v.iter().zip(parts).map(|(m, d)| m * d).sum();
            for m in 0..=(budget - used) / d {
                let mut w = v.clone();
                w.push(m);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// One invariant idempotent per similarity class, over every `H`-module `X`
/// of dimension at most `max_xdim`.
#[derive(Clone, Debug)]
pub struct SurveyModule {
    pub x_type: Vec<usize>,
    pub ranks: Vec<usize>,
    pub p: InvariantIdempotent,
}

/// `X` runs over sums of simple `H`-modules; `p` over sums of diagonal
/// matrix units in the blocks of `(End(X)⊗B)^H`, one per rank vector.
pub fn invariant_idempotents(b: &ModuleAlgebra, h: &HopfPresentation, max_xdim: usize) -> Result<Vec<SurveyModule>> {
    let simples = simple_modules(h).map_err(|_| EngineError::HNotSemisimple)?;
    let sizes: Vec<usize> = simples.iter().map(|s| s.dim).collect();
    let mut out = Vec::new();
    for ty in compositions(&sizes, max_xdim) {
        let mut x: Option<RightModule> = None;
        for (m, s) in ty.iter().zip(&simples) {
            for _ in 0..*m {
                x = Some(match x {
                    None => s.clone(),
                    Some(x) => x.direct_sum(s),
                });
            }
        }
        let Some(x) = x else { continue };
        let big = endx_tensor_b(&x, b, h);
        let (inv, incl) = big.invariant_subalgebra(h);
        let blocks = wedderburn_blocks(&inv)?;
        let ranges: Vec<usize> = blocks.sizes();
        for ranks in compositions(&vec![1; ranges.len()], ranges.iter().sum())
            .into_iter()
            .filter(|r| r.iter().zip(&ranges).all(|(a, b)| a <= b))
        {
            let mut p = SparseVec::new();
            for (bl, &r) in blocks.blocks.iter().zip(&ranks) {
                for i in 0..r {
                    p = p.add(&bl.matrix_units[i][i]);
                }
            }
            let p = check_idempotent(&x, b, h, &incl.basis.mul_vec(&p))?;
            out.push(SurveyModule {
                x_type: ty.clone(),
                ranks,
                p,
            });
        }
    }
    Ok(out)
}

/// Every invariant idempotent up to similarity, for `X` of dimension at most
/// `max_xdim`, classified through the Julg presentation. Checks that the
/// classes are additive, that equal classes give isomorphic modules, and
/// that the classes reached span a group of rank `#blocks(B⋊H)`.
pub fn k0_survey(b: &ModuleAlgebra, h: &HopfPresentation, cp: &CrossedProduct, max_xdim: usize, seed: u64) -> Result<K0Survey> {
    let k0 = k0_semisimple(cp)?;
    let mut entries = Vec::new();
    let mut modules = Vec::new();
    let mut report = CheckReport::default();
    let mut julg_ok = CheckEntry::new("julg_forward certified");
    for sm in invariant_idempotents(b, h, max_xdim)? {
        let jp = julg_forward(&sm.p, b, h, cp)?;
        julg_ok.record(jp.report.all_passed(), vec![entries.len()]);
        let class = multiplicities(&jp.module, &cp.alg)?;
        entries.push(SurveyEntry {
            x_type: sm.x_type,
            ranks: sm.ranks,
            class,
        });
        modules.push(jp.module);
    }
    report.push(julg_ok);
    let mut same = CheckEntry::new("equal classes give isomorphic modules");
    for i in 0..entries.len() {
        if let Some(j) = (0..i).find(|&j| entries[j].class == entries[i].class) {
            let r = iso_test(&modules[j], &modules[i], &cp.alg, seed, 8);
            same.record(r.is_certified_iso(), vec![j, i]);
        }
    }
    report.push(same);
    let mut additive = CheckEntry::new("class of a block sum is the sum of classes");
    for (i, e) in entries.iter().enumerate() {
        let mut tot = vec![0; k0.rank];
        for (bi, &r) in e.ranks.iter().enumerate() {
            let unit = entries
                .iter()
                .find(|f| f.x_type == e.x_type && f.ranks.iter().enumerate().all(|(t, &v)| v == usize::from(t == bi)));
            if let Some(f) = unit {
                for (t, c) in tot.iter_mut().zip(&f.class) {
                    *t += r * c;
                }
            }
        }
        additive.record(tot == e.class, vec![i]);
    }
    report.push(additive);
    let classes: Vec<SparseVec> = entries
        .iter()
        .map(|e| SparseVec::from_dense(&e.class.iter().map(|&c| Scalar::from_int(c as i64)).collect::<Vec<_>>()))
        .collect();
    let group_rank = linalg::span(k0.rank, &classes).dim();
    let mut cone = CheckEntry::new("every generator of K0(B⋊H) is reached");
    for i in 0..k0.rank {
        let gen: Vec<usize> = (0..k0.rank).map(|t| usize::from(t == i)).collect();
        cone.record(entries.iter().any(|e| e.class == gen), vec![i]);
    }
    report.push(cone);
    report.push(CheckEntry::single("rank of the class group = number of blocks", group_rank == k0.rank));
    Ok(K0Survey {
        entries,
        group_rank,
        report,
    })
}
