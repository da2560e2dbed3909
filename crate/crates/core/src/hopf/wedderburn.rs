//! Wedderburn decomposition of split semisimple algebras, and characters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::AlgebraPresentation;
use crate::error::{EngineError, Result};
use crate::linalg::{self, poly, Mat, Scalar, SparseVec};

/// One simple block `≅ Mat_size` with its central idempotent and a full set
/// of matrix units `E_ij`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Block {
    pub size: usize,
    #[serde(skip)]
    pub central_idempotent: SparseVec,
    #[serde(skip)]
    pub matrix_units: Vec<Vec<SparseVec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn candidates(alg: &AlgebraPresentation) -> impl Iterator<Item = SparseVec> + '_ {
    let d = alg.dim;
    let basis = (0..d).map(SparseVec::unit);
    let sums = (0..d).flat_map(move |i| {
        (i + 1..d).flat_map(move |j| {
            [
                SparseVec::unit(i).add(&SparseVec::unit(j)),
                SparseVec::unit(i).sub(&SparseVec::unit(j)),
            ]
        })
    });
    let prods = (0..d).flat_map(move |i| {
        (0..d).map(move |j| alg.basis_product(i, j).clone())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random = (0..64).map(move |_| {
        let dense: Vec<Scalar> = (0..d).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect();
        SparseVec::from_dense(&dense)
    });
    basis.chain(sums).chain(prods).chain(random)
}

/// A nonzero non-invertible element, found as `x − λ` for a candidate `x`
/// whose minimal polynomial has a rational root `λ`.
fn find_zero_divisor(alg: &AlgebraPresentation) -> Result<Option<SparseVec>> {
    for x in candidates(alg) {
        let mp = alg.minimal_polynomial(&x);
        if mp.len() <= 2 {
            continue;
        }
        let Ok(coeffs) = poly::rational_coeffs(&mp) else {
            continue;
        };
        if let Some(lambda) = poly::rational_roots(&coeffs)?.into_iter().next() {
            let y = x.sub(&alg.unit.scale(&Scalar::from_rational(lambda)));
            debug_assert!(!y.is_zero());
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// Idempotent `f` generating the right annihilator `{r : y r = 0}` as a
/// right ideal.
fn annihilator_idempotent(alg: &AlgebraPresentation, y: &SparseVec) -> Result<SparseVec> {
    let ann = linalg::kernel(&alg.left_mult(y)).vectors();
    let d = alg.dim;
    let m = ann.len();
    let mut cols: Vec<SparseVec> = Vec::with_capacity(m);
    for ri in &ann {
        let mut pairs = Vec::new();
        for (k, rk) in ann.iter().enumerate() {
            for (j, v) in alg.mul(ri, rk).iter() {
                pairs.push((k * d + j, v.clone()));
            }
        }
        cols.push(SparseVec::from_pairs(pairs));
    }
    let mut rhs = Vec::new();
    for (k, rk) in ann.iter().enumerate() {
        for (j, v) in rk.iter() {
            rhs.push((k * d + j, v.clone()));
        }
    }
    let sys = Mat::from_columns(&cols, m * d);
    let c = linalg::solve(&sys, &SparseVec::from_pairs(rhs))
        .map_err(|_| EngineError::DecompositionFailed("annihilator has no idempotent generator".into()))?;
    let mut f = SparseVec::new();
    for (i, x) in c.iter() {
        f = f.add_scaled(&ann[*i], x);
    }
    Ok(f)
}

fn lift(basis: &linalg::Kernel, v: &SparseVec) -> SparseVec {
    basis.basis.mul_vec(v)
}

fn split_comm(
    alg: &AlgebraPresentation,
    split: &mut Vec<SparseVec>,
    stuck: &mut Vec<SparseVec>,
) -> Result<()> {
    if alg.dim == 0 {
        return Ok(());
    }
    if alg.dim == 1 {
        split.push(alg.unit.clone());
        return Ok(());
    }
    let Some(y) = find_zero_divisor(alg)? else {
        stuck.push(alg.unit.clone());
        return Ok(());
    };
    let f = annihilator_idempotent(alg, &y)?;
    let g = alg.unit.sub(&f);
    for e in [f, g] {
        let (sub, basis) = alg.corner(&e);
        let mut s2 = Vec::new();
        let mut k2 = Vec::new();
        split_comm(&sub, &mut s2, &mut k2)?;
        split.extend(s2.iter().map(|v| lift(&basis, v)));
        stuck.extend(k2.iter().map(|v| lift(&basis, v)));
    }
    Ok(())
}

/// Primitive idempotents of a commutative semisimple algebra that splits
/// into copies of the ground field.
pub fn split_commutative(alg: &AlgebraPresentation) -> Result<Vec<SparseVec>> {
    let mut split = Vec::new();
    let mut stuck = Vec::new();
    split_comm(alg, &mut split, &mut stuck)?;
    if !stuck.is_empty() {
        return Err(EngineError::NotSplit(
            "needs larger field: the center has a factor that is a proper field extension".into(),
        ));
    }
    Ok(split)
}

/// A primitive idempotent of a split simple algebra `≅ Mat_n`.
pub fn primitive_idempotent(alg: &AlgebraPresentation) -> Result<SparseVec> {
    if alg.dim <= 1 {
        return Ok(alg.unit.clone());
    }
    let Some(y) = find_zero_divisor(alg)? else {
        return Err(EngineError::NotSplit(
            "needs larger field: no rational zero divisor in a simple block".into(),
        ));
    };
    let f = annihilator_idempotent(alg, &y)?;
    let (sub, basis) = alg.corner(&f);
    let inner = primitive_idempotent(&sub)?;
    Ok(lift(&basis, &inner))
}

/// Ground-field valued characters, as covectors on the basis.
pub fn characters(alg: &AlgebraPresentation) -> Result<Vec<SparseVec>> {
    let d = alg.dim;
    let mut comm = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let c = alg.basis_product(i, j).sub(alg.basis_product(j, i));
            if !c.is_zero() {
                comm.push(c);
            }
        }
    }
    let ideal = alg.ideal(&comm);
    let (c, p1) = alg.quotient(&ideal);
    let rad = c.radical().vectors();
    let (c2, p2) = c.quotient(&rad);
    let proj = p2.mul(&p1);
    let mut split = Vec::new();
    let mut stuck = Vec::new();
    split_comm(&c2, &mut split, &mut stuck)?;
    let mut out = Vec::new();
    for f in split {
        let (lead, fl) = f.leading().cloned().expect("idempotent is nonzero");
        let chi: Vec<Scalar> = (0..c2.dim)
            .map(|k| &c2.mul(&SparseVec::unit(k), &f).get(lead) * &fl.inv())
            .collect();
        let chi = SparseVec::from_dense(&chi);
        out.push(proj.transpose().mul_vec(&chi));
    }
    Ok(out)
}

fn matrix_units(alg: &AlgebraPresentation, f: &SparseVec, n: usize) -> Result<Vec<Vec<SparseVec>>> {
    let d = alg.dim;
    let mut left: Vec<SparseVec> = vec![f.clone()];
    let mut right: Vec<SparseVec> = vec![f.clone()];
    left.extend((0..d).map(|k| alg.mul(&SparseVec::unit(k), f)));
    right.extend((0..d).map(|k| alg.mul(f, &SparseVec::unit(k))));
    let li = linalg::extend_basis(d, &[], &left);
    let ri = linalg::extend_basis(d, &[], &right);
    if li.len() != n || ri.len() != n {
        return Err(EngineError::NotSplit(
            "needs larger field: minimal one-sided ideals have the wrong dimension".into(),
        ));
    }
    let v: Vec<SparseVec> = li.iter().map(|&i| left[i].clone()).collect();
    let w: Vec<SparseVec> = ri.iter().map(|&i| right[i].clone()).collect();
    let (lead, fl) = f.leading().cloned().unwrap();
    let finv = fl.inv();
    let mut g = Vec::with_capacity(n);
    for wi in &w {
        let row: Vec<Scalar> = v
            .iter()
            .map(|vj| &alg.mul(wi, vj).get(lead) * &finv)
            .collect();
        g.push(row);
    }
    let ginv = linalg::inverse(&Mat::from_dense(&g))?;
    let c: Vec<SparseVec> = (0..n)
        .map(|j| {
            let mut acc = SparseVec::new();
            for (k, x) in ginv.row(j).iter() {
                acc = acc.add_scaled(&w[*k], x);
            }
            acc
        })
        .collect();
    let units: Vec<Vec<SparseVec>> = (0..n)
        .map(|i| (0..n).map(|j| alg.mul(&v[i], &c[j])).collect())
        .collect();
    let mut sum = SparseVec::new();
    for i in 0..n {
        sum = sum.add(&units[i][i]);
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let p = alg.mul(&units[i][j], &units[k][l]);
                    let expect = if j == k { units[i][l].clone() } else { SparseVec::new() };
                    if p != expect {
                        return Err(EngineError::DecompositionFailed(format!(
                            "matrix unit relation fails at ({i},{j},{k},{l})"
                        )));
                    }
                }
            }
        }
    }
    if sum != alg.unit {
        return Err(EngineError::DecompositionFailed("matrix units do not sum to the unit".into()));
    }
    Ok(units)
}

/// Central idempotents, block sizes and matrix units of a split semisimple
/// algebra. Blocks are ordered by size, then by the coordinates of their
/// central idempotents.
pub fn wedderburn_blocks(alg: &AlgebraPresentation) -> Result<BlockDecomposition> {
    let rad = alg.radical().dim();
    if rad > 0 {
        return Err(EngineError::NotSemisimple(rad));
    }
    let center = alg.center();
    let z = alg.subalgebra(&center)?;
    let mut blocks = Vec::new();
    for e in split_commutative(&z)? {
        let e = lift(&center, &e);
        let (block, basis) = alg.corner(&e);
        let n = (block.dim as f64).sqrt().round() as usize;
        if n * n != block.dim {
            return Err(EngineError::NotSplit(format!(
                "needs larger field: a block of dimension {} is not a full matrix algebra",
                block.dim
            )));
        }
        let f = primitive_idempotent(&block)?;
        let units = matrix_units(&block, &f, n)?;
        blocks.push(Block {
            size: n,
            central_idempotent: e,
            matrix_units: units
                .iter()
                .map(|r| r.iter().map(|u| lift(&basis, u)).collect())
                .collect(),
        });
    }
    blocks.sort_by(|a, b| {
        a.size.cmp(&b.size).then_with(|| {
            super::compare_elements(&a.central_idempotent, &b.central_idempotent, &SparseVec::new())
        })
    });
    Ok(BlockDecomposition { blocks })
}
