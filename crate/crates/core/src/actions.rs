//! Right modules and module algebras over a Hopf algebra, the adjoint
//! actions on `End(X)` and `End(X)⊗B`, and crossed products.

use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::linalg::{self, Accumulator, Kernel, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// A right `H`-module. Row `i·dim(H) + j` of `act` is `e_i ◁ ω_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct RightModule {
    pub dim: usize,
    pub hdim: usize,
    pub act: Mat,
}

impl RightModule {
    pub fn from_fn(dim: usize, hdim: usize, f: impl Fn(usize, usize) -> SparseVec) -> Self {
        let rows = (0..dim * hdim).map(|r| f(r / hdim, r % hdim)).collect();
        RightModule {
            dim,
            hdim,
            act: Mat::from_rows(rows, dim),
        }
    }

    pub fn act_basis(&self, i: usize, j: usize) -> &SparseVec {
        self.act.row(i * self.hdim + j)
    }

    /// `x ◁ ω`.
    pub fn act(&self, x: &SparseVec, w: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in w.iter() {
                acc.push_scaled(self.act_basis(*i, *j), &(a * b));
            }
        }
        acc.finish()
    }

    /// `π(ω)` on coordinate columns: `π(ω)x = x ◁ ω`; `π(ωη) = π(η)π(ω)`.
    pub fn op_matrix(&self, w: &SparseVec) -> Mat {
        let cols: Vec<SparseVec> = (0..self.dim)
            .map(|i| self.act(&SparseVec::unit(i), w))
            .collect();
        Mat::from_columns(&cols, self.dim)
    }

    /// `x◁(ωη) = (x◁ω)◁η` and `x◁1 = x` on basis elements.
    pub fn verify(&self, h: &HopfPresentation) -> CheckReport {
        let mut assoc = CheckEntry::new("x<(w h) = (x<w)<h");
        let mut unit = CheckEntry::new("x<1 = x");
        let one = h.one();
        for i in 0..self.dim {
            let x = SparseVec::unit(i);
            for j in 0..self.hdim {
                let xw = self.act_basis(i, j);
                for k in 0..self.hdim {
                    let wk = h.alg.basis_product(j, k);
                    let l = self.act(&x, wk);
                    let r = self.act(xw, &SparseVec::unit(k));
                    assoc.record(l == r, vec![i, j, k]);
                }
            }
            unit.record(self.act(&x, &one) == x, vec![i]);
        }
        CheckReport {
            entries: vec![assoc, unit],
        }
    }

    /// `x ◁ ω = ε(ω)x`.
    pub fn trivial(dim: usize, h: &HopfPresentation) -> Self {
        Self::from_fn(dim, h.dim(), |i, j| SparseVec::unit(i).scale(&h.eps_basis(j)))
    }

    /// `H` acting on itself by right multiplication.
    pub fn regular(h: &HopfPresentation) -> Self {
        Self::from_fn(h.dim(), h.dim(), |i, j| h.alg.basis_product(i, j).clone())
    }

    /// `η ◁ ω = S⁻¹(ω₍₀₎)ηω₍₁₎`.
    pub fn conjugation(h: &HopfPresentation) -> Self {
        Self::from_fn(h.dim(), h.dim(), |i, j| {
            let mut acc = Accumulator::new();
            for (a, b, c) in h.coproduct_terms(j) {
                let l = h.s_inv(&SparseVec::unit(a));
                let v = h.mul(&h.mul(&l, &SparseVec::unit(i)), &SparseVec::unit(b));
                acc.push_scaled(&v, &c);
            }
            acc.finish()
        })
    }

    /// `(x⊗y) ◁ ω = x◁ω₍₀₎ ⊗ y◁ω₍₁₎` on the row-major basis.
    pub fn tensor(&self, other: &RightModule, h: &HopfPresentation) -> Self {
        let q = other.dim;
        Self::from_fn(self.dim * q, h.dim(), |r, j| {
            let (a, b) = (r / q, r % q);
            let mut acc = Accumulator::new();
            for (l, m, c) in h.coproduct_terms(j) {
                let x = self.act_basis(a, l);
                let y = other.act_basis(b, m);
                for (p, u) in x.iter() {
                    for (s, v) in y.iter() {
                        acc.push(p * q + s, &(&c * u) * v);
                    }
                }
            }
            acc.finish()
        })
    }

    pub fn direct_sum(&self, other: &RightModule) -> Self {
        let p = self.dim;
        Self::from_fn(p + other.dim, self.hdim, |i, j| {
            if i < p {
                self.act_basis(i, j).clone()
            } else {
                other.act_basis(i - p, j).remap(|k| Some(k + p))
            }
        })
    }

    /// `{v : v◁ω = ε(ω)v}`, quantified over a basis of `H`.
    pub fn invariants(&self, h: &HopfPresentation) -> Kernel {
        let maps: Vec<Mat> = (0..self.hdim)
            .map(|j| {
                let w = SparseVec::unit(j);
                self.op_matrix(&w).sub(&Mat::scalar(self.dim, &h.eps_basis(j)))
            })
            .collect();
        let refs: Vec<&Mat> = maps.iter().collect();
        linalg::joint_kernel(&refs)
    }
}

/// A unital algebra `B` with a right `H`-action making it a module algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleAlgebra {
    pub alg: AlgebraPresentation,
    pub module: RightModule,
}

impl ModuleAlgebra {
    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    pub fn act(&self, b: &SparseVec, w: &SparseVec) -> SparseVec {
        self.module.act(b, w)
    }

    pub fn trivial(alg: AlgebraPresentation, h: &HopfPresentation) -> Self {
        let module = RightModule::trivial(alg.dim, h);
        ModuleAlgebra { alg, module }
    }

    /// Module axioms, `(b₁b₂)◁ω = (b₁◁ω₍₀₎)(b₂◁ω₍₁₎)` and `1◁ω = ε(ω)1`.
    pub fn verify(&self, h: &HopfPresentation) -> CheckReport {
        let mut report = CheckReport::new();
        report.extend_prefixed("module", self.module.verify(h));
        let mut prod = CheckEntry::new("(b1 b2)<w = (b1<w0)(b2<w1)");
        let mut unit = CheckEntry::new("1<w = eps(w) 1");
        let d = self.dim();
        for k in 0..h.dim() {
            let terms = h.coproduct_terms(k);
            for i in 0..d {
                for j in 0..d {
                    let l = self.module.act(self.alg.basis_product(i, j), &SparseVec::unit(k));
                    let mut acc = Accumulator::new();
                    for (a, b, c) in &terms {
                        let x = self.module.act_basis(i, *a);
                        let y = self.module.act_basis(j, *b);
                        acc.push_scaled(&self.alg.mul(x, y), c);
                    }
                    prod.record(l == acc.finish(), vec![i, j, k]);
                }
            }
            let one = self.alg.one();
            let l = self.module.act(&one, &SparseVec::unit(k));
            unit.record(l == one.scale(&h.eps_basis(k)), vec![k]);
        }
        report.push(prod);
        report.push(unit);
        report
    }

    /// The invariant subalgebra `B^H` and its basis in coordinates of `B`.
    pub fn invariant_subalgebra(&self, h: &HopfPresentation) -> (AlgebraPresentation, Kernel) {
        let k = self.module.invariants(h);
        let alg = self
            .alg
            .subalgebra(&k)
            .expect("invariants of a module algebra form a unital subalgebra");
        (alg, k)
    }
}

/// `End(X)` on matrix units `E_ij ↦ i·n + j` with
/// `T ◀ ω = π(ω₍₀₎) T π(S⁻¹(ω₍₁₎))`.
pub fn adjoint_on_end(x: &RightModule, h: &HopfPresentation) -> ModuleAlgebra {
    let n = x.dim;
    let pis: Vec<Mat> = (0..h.dim()).map(|j| x.op_matrix(&SparseVec::unit(j))).collect();
    let pis_inv: Vec<Mat> = (0..h.dim())
        .map(|j| x.op_matrix(h.antipode_inv.row(j)))
        .collect();
    let module = RightModule::from_fn(n * n, h.dim(), |e, j| {
        let t = matrix_unit(n, e);
        let mut acc = Mat::zeros(n, n);
        for (a, b, c) in h.coproduct_terms(j) {
            acc = acc.add_scaled(&pis[a].mul(&t).mul(&pis_inv[b]), &c);
        }
        mat_to_vec(&acc)
    });
    ModuleAlgebra {
        alg: AlgebraPresentation::matrix_algebra(n),
        module,
    }
}

/// `End(X)⊗B` with `(T⊗b) ◀ ω = π(ω₍₀₎)Tπ(S⁻¹(ω₍₂₎)) ⊗ b◁ω₍₁₎`, basis
/// `E_ij ⊗ e_k ↦ (i·n + j)·dim(B) + k`.
pub fn endx_tensor_b(x: &RightModule, b: &ModuleAlgebra, h: &HopfPresentation) -> ModuleAlgebra {
    let n = x.dim;
    let db = b.dim();
    let pis: Vec<Mat> = (0..h.dim()).map(|j| x.op_matrix(&SparseVec::unit(j))).collect();
    let pis_inv: Vec<Mat> = (0..h.dim())
        .map(|j| x.op_matrix(h.antipode_inv.row(j)))
        .collect();
    let module = RightModule::from_fn(n * n * db, h.dim(), |r, j| {
        let (e, k) = (r / db, r % db);
        let t = matrix_unit(n, e);
        let mut acc = Accumulator::new();
        for (legs, c) in h.delta_terms(j, 2) {
            let m = mat_to_vec(&pis[legs[0]].mul(&t).mul(&pis_inv[legs[2]]));
            let bb = b.module.act_basis(k, legs[1]);
            for (p, u) in m.iter() {
                for (q, v) in bb.iter() {
                    acc.push(p * db + q, &(&c * u) * v);
                }
            }
        }
        acc.finish()
    });
    ModuleAlgebra {
        alg: AlgebraPresentation::matrix_algebra(n).tensor(&b.alg),
        module,
    }
}

/// The tensor-product action `(T⊗b) ◀ ω = T◀ω₍₀₎ ⊗ b◁ω₍₁₎` on `End(X)⊗B`.
pub fn tensor_product_action(
    x: &RightModule,
    b: &ModuleAlgebra,
    h: &HopfPresentation,
) -> RightModule {
    adjoint_on_end(x, h).module.tensor(&b.module, h)
}

/// The matrix unit with index `e = i·n + j`.
pub fn matrix_unit(n: usize, e: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m.set(e / n, e % n, Scalar::one());
    m
}

/// Coordinates of an `n × n` matrix on the matrix units.
pub fn mat_to_vec(m: &Mat) -> SparseVec {
    let n = m.ncols();
    let mut pairs = Vec::new();
    for (i, row) in m.rows().iter().enumerate() {
        for (j, v) in row.iter() {
            pairs.push((i * n + j, v.clone()));
        }
    }
    SparseVec::from_sorted(pairs)
}

pub fn vec_to_mat(v: &SparseVec, n: usize) -> Mat {
    let mut rows = vec![Vec::new(); n];
    for (e, c) in v.iter() {
        rows[e / n].push((e % n, c.clone()));
    }
    Mat::from_rows(rows.into_iter().map(SparseVec::from_pairs).collect(), n)
}

/// `B⋊H` on the basis `b_i⊗ω_j ↦ i·dim(H) + j`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub alg: AlgebraPresentation,
    pub bdim: usize,
    pub hdim: usize,
}

impl CrossedProduct {
    pub fn embed_b(&self, b: &SparseVec, h: &HopfPresentation) -> SparseVec {
        tensor_vec(b, &h.one(), self.hdim)
    }

    pub fn embed_h(&self, w: &SparseVec, bunit: &SparseVec) -> SparseVec {
        tensor_vec(bunit, w, self.hdim)
    }
}

/// `x ⊗ y` on the row-major basis, `y` of length `q`.
pub fn tensor_vec(x: &SparseVec, y: &SparseVec, q: usize) -> SparseVec {
    let mut pairs = Vec::with_capacity(x.nnz() * y.nnz());
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            pairs.push((i * q + j, a * b));
        }
    }
    SparseVec::from_sorted(pairs)
}

/// `(b⊗ω)(c⊗η) = b(c◁S⁻¹(ω₍₁₎)) ⊗ ω₍₀₎η`.
pub fn crossed_product(b: &ModuleAlgebra, h: &HopfPresentation) -> CrossedProduct {
    let (p, q) = (b.dim(), h.dim());
    let d = p * q;
    let rows = linalg_rows(d, |x, y| {
        let (i, j) = (x / q, x % q);
        let (k, l) = (y / q, y % q);
        let mut acc = Accumulator::new();
        for (a, m, c) in h.coproduct_terms(j) {
            let cs = b.act(&SparseVec::unit(k), h.antipode_inv.row(m));
            let left = b.alg.mul(&SparseVec::unit(i), &cs);
            let right = h.alg.basis_product(a, l);
            acc.push_scaled(&tensor_vec(&left, right, q), &c);
        }
        acc.finish()
    });
    let alg = AlgebraPresentation {
        dim: d,
        mult: Mat::from_rows(rows, d),
        unit: tensor_vec(&b.alg.unit, &h.one(), q),
    };
    CrossedProduct {
        alg,
        bdim: p,
        hdim: q,
    }
}

fn linalg_rows(d: usize, f: impl Fn(usize, usize) -> SparseVec + Sync) -> Vec<SparseVec> {
    crate::par::map_range(d * d, |r| f(r / d, r % d))
}

/// Algebra axioms of `B⋊H`, the embeddings, and the commutation rules
/// `ωb = (b◁S⁻¹(ω₍₁₎))ω₍₀₎` and `bω = ω₍₀₎(b◁ω₍₁₎)`.
pub fn verify_crossed_product(
    cp: &CrossedProduct,
    b: &ModuleAlgebra,
    h: &HopfPresentation,
) -> CheckReport {
    let mut report = cp.alg.verify();
    let mut emb_b = CheckEntry::new("b -> b(x)1 is multiplicative");
    let mut emb_h = CheckEntry::new("w -> 1(x)w is multiplicative");
    let mut wb = CheckEntry::new("w b = (b<S^-1(w1)) w0");
    let mut bw = CheckEntry::new("b w = w0 (b<w1)");
    let bunit = &b.alg.unit;
    for i in 0..b.dim() {
        let ei = SparseVec::unit(i);
        for k in 0..b.dim() {
            let ek = SparseVec::unit(k);
            let l = cp.alg.mul(&cp.embed_b(&ei, h), &cp.embed_b(&ek, h));
            emb_b.record(l == cp.embed_b(&b.alg.mul(&ei, &ek), h), vec![i, k]);
        }
        for j in 0..h.dim() {
            let wj = SparseVec::unit(j);
            let (bb, ww) = (cp.embed_b(&ei, h), cp.embed_h(&wj, bunit));
            let mut r1 = Accumulator::new();
            let mut r2 = Accumulator::new();
            for (a, m, c) in h.coproduct_terms(j) {
                let wa = cp.embed_h(&SparseVec::unit(a), bunit);
                let x = cp.embed_b(&b.act(&ei, h.antipode_inv.row(m)), h);
                r1.push_scaled(&cp.alg.mul(&x, &wa), &c);
                let y = cp.embed_b(b.module.act_basis(i, m), h);
                r2.push_scaled(&cp.alg.mul(&wa, &y), &c);
            }
            wb.record(cp.alg.mul(&ww, &bb) == r1.finish(), vec![i, j]);
            bw.record(cp.alg.mul(&bb, &ww) == r2.finish(), vec![i, j]);
        }
    }
    for j in 0..h.dim() {
        for l in 0..h.dim() {
            let x = cp.alg.mul(
                &cp.embed_h(&SparseVec::unit(j), bunit),
                &cp.embed_h(&SparseVec::unit(l), bunit),
            );
            emb_h.record(x == cp.embed_h(h.alg.basis_product(j, l), bunit), vec![j, l]);
        }
    }
    for e in [emb_b, emb_h, wb, bw] {
        report.push(e);
    }
    report
}

/// Elements of `End(X)⊗B` whose left multiplication on `X⊗B` commutes with
/// the right action of `B⋊H`, `(x⊗b′)·(b⊗ω) = (x⊗b′b)◁ω`.
pub fn crossed_commutant(x: &RightModule, b: &ModuleAlgebra, h: &HopfPresentation) -> Kernel {
    let n = x.dim;
    let db = b.dim();
    let xb = x.tensor(&b.module, h);
    let dim = n * db;
    // Right action operators on X⊗B (coordinate columns) for B and H.
    let mut ops: Vec<Mat> = (0..db)
        .map(|k| Mat::identity(n).kron(&b.alg.right_mult(&SparseVec::unit(k))))
        .collect();
    ops.extend((0..h.dim()).map(|j| xb.op_matrix(&SparseVec::unit(j))));
    let endb = AlgebraPresentation::matrix_algebra(n).tensor(&b.alg);
    let lefts: Vec<Mat> = (0..endb.dim)
        .map(|u| {
            let (e, k) = (u / db, u % db);
            matrix_unit(n, e).kron(&b.alg.left_mult(&SparseVec::unit(k)))
        })
        .collect();
    // Each commutator entry is a linear equation in the coefficients.
    let mut eqs: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for op in &ops {
        let comms: Vec<Mat> = lefts.iter().map(|l| l.mul(op).sub(&op.mul(l))).collect();
        let mut block = vec![Vec::new(); dim * dim];
        for (u, cm) in comms.iter().enumerate() {
            for (r, row) in cm.rows().iter().enumerate() {
                for (c, v) in row.iter() {
                    block[r * dim + c].push((u, v.clone()));
                }
            }
        }
        eqs.extend(block.into_iter().filter(|e| !e.is_empty()));
    }
    let m = Mat::from_rows(eqs.into_iter().map(SparseVec::from_pairs).collect(), endb.dim);
    linalg::kernel(&m)
}
