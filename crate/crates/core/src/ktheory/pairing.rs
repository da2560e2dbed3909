//! Pairings of cyclic cocycles with K-theory classes.

use serde::Serialize;

use super::{check_invertible, embed_block, InvariantIdempotent, InvariantInvertible};
use crate::actions::{ModuleAlgebra, RightModule};
use crate::equivariant::EquivariantComplex;
use crate::error::{EngineError, Result};
use crate::hopf::HopfPresentation;
use crate::linalg::{self, Mat, Scalar, SparseVec};
use crate::report::{CheckEntry, CheckReport};

/// A linear functional on `H`, by its values on the basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantFunctional {
    #[serde(serialize_with = "values_json")]
    pub values: Vec<Scalar>,
}

fn values_json<S: serde::Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    serde_json::Value::Array(v.iter().map(linalg::scalar_to_json).collect()).serialize(s)
}

impl InvariantFunctional {
    pub fn eval(&self, w: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (j, c) in w.iter() {
            acc += &(c * &self.values[*j]);
        }
        acc
    }

    /// Number of pairs `(ω, η)` of basis elements with
    /// `f(S⁻¹(ω₍₀₎)ηω₍₁₎) ≠ ε(ω)f(η)`.
    pub fn invariance_defects(&self, h: &HopfPresentation) -> usize {
        let conj = RightModule::conjugation(h);
        let mut bad = 0;
        for w in 0..h.dim() {
            for eta in 0..h.dim() {
                let lhs = self.eval(conj.act_basis(eta, w));
                if lhs != &h.eps_basis(w) * &self.values[eta] {
                    bad += 1;
                }
            }
        }
        bad
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &InvariantFunctional) -> InvariantFunctional {
        InvariantFunctional {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.values.iter().map(linalg::scalar_to_json).collect())
    }
}

/// `f` must satisfy `(1 − λ)f = 0` and `bf = 0`.
fn require_cyclic_cocycle(c: &EquivariantComplex, n: usize, f: &SparseVec) -> Result<()> {
    let o = &c.object;
    o.check_level(n + 1)?;
    if f.max_index().is_some_and(|i| i >= o.dim(n)) {
        return Err(EngineError::Dimension(format!("cochain must have {} coordinates", o.dim(n))));
    }
    if !o.one_minus_lambda(n).mul_vec(f).is_zero() {
        return Err(EngineError::NotACocycle(format!("not cyclic in degree {n}")));
    }
    if !o.b(n + 1).mul_vec(f).is_zero() {
        return Err(EngineError::NotACocycle(format!("b f != 0 in degree {n}")));
    }
    Ok(())
}

/// `Σ weight(a₀, c_n, k₀…k_n)·∏coeff` over products `T₀⋯T_n = E_{a₀c_n}`
/// of nonzero terms `E_{a_i c_i}⊗e_{k_i}` of the factors.
fn chain_sum(factors: &[&SparseVec], m: usize, db: usize, weight: &dyn Fn(usize, usize, &[usize]) -> Scalar) -> Scalar {
    let terms: Vec<Vec<Vec<(usize, usize, Scalar)>>> = factors
        .iter()
        .map(|f| {
            let mut by_row = vec![Vec::new(); m];
            for (u, c) in f.iter() {
                let (e, k) = (u / db, u % db);
                by_row[e / m].push((e % m, k, c.clone()));
            }
            by_row
        })
        .collect();
    let mut total = Scalar::zero();
    let mut ks = Vec::with_capacity(factors.len());
    for a0 in 0..m {
        walk(&terms, 0, a0, a0, Scalar::one(), &mut ks, weight, &mut total);
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn walk(
    terms: &[Vec<Vec<(usize, usize, Scalar)>>],
    i: usize,
    a0: usize,
    row: usize,
    coeff: Scalar,
    ks: &mut Vec<usize>,
    weight: &dyn Fn(usize, usize, &[usize]) -> Scalar,
    total: &mut Scalar,
) {
    for (col, k, c) in &terms[i][row] {
        ks.push(*k);
        let next = &coeff * c;
        if i + 1 == terms.len() {
            let w = weight(a0, *col, ks);
            if !w.is_zero() {
                *total += &(&next * &w);
            }
        } else {
            walk(terms, i + 1, a0, *col, next, ks, weight, total);
        }
        ks.pop();
    }
}

/// `ω ↦ (Ψⁿf)(ω⊗T₀⊗…⊗T_n)` for the lifted functional `f` on `H⊗B^{⊗(n+1)}`.
fn psi_values(c: &EquivariantComplex, x: &RightModule, n: usize, f: &SparseVec, factors: &[&SparseVec]) -> Result<Vec<Scalar>> {
    let h = c
        .model
        .hopf()
        .ok_or_else(|| EngineError::Invalid("needs an equivariant object".into()))?;
    let db = c.model.bdim();
    let amb = c.lift(n, f);
    let pis: Vec<Mat> = (0..h.dim()).map(|j| x.op_matrix(h.antipode_inv.row(j))).collect();
    let values = (0..h.dim())
        .map(|w| {
            let terms = h.coproduct_terms(w);
            chain_sum(factors, x.dim, db, &|a0, cn, ks| {
                let mut acc = Scalar::zero();
                for (l0, l1, coef) in &terms {
                    let tr = pis[*l1].get(cn, a0);
                    if tr.is_zero() {
                        continue;
                    }
                    let v = amb.get(c.model.encode(*l0, ks));
                    if !v.is_zero() {
                        acc += &(&(coef * &tr) * &v);
                    }
                }
                acc
            })
        })
        .collect();
    Ok(values)
}

/// `⟨[f],[p]⟩(ω) = (Ψ²ⁿf)(ω⊗p⊗…⊗p)` for a cyclic `2n`-cocycle `f`, given in
/// coordinates of `C^{2n}_H(B)`.
pub fn pair_even(c: &EquivariantComplex, deg: usize, f: &SparseVec, p: &InvariantIdempotent) -> Result<InvariantFunctional> {
    if deg % 2 != 0 {
        return Err(EngineError::Invalid(format!("pair_even needs an even degree, got {deg}")));
    }
    require_cyclic_cocycle(c, deg, f)?;
    let factors = vec![&p.p; deg + 1];
    Ok(InvariantFunctional {
        values: psi_values(c, &p.x, deg, f, &factors)?,
    })
}

/// `⟨[f],[u]⟩(ω) = (Ψ^{2n+1}f)(ω⊗(u⁻¹−1)⊗(u−1)⊗…⊗(u⁻¹−1)⊗(u−1))`.
pub fn pair_odd(
    c: &EquivariantComplex,
    deg: usize,
    f: &SparseVec,
    u: &InvariantInvertible,
    b: &ModuleAlgebra,
) -> Result<InvariantFunctional> {
    if deg % 2 != 1 {
        return Err(EngineError::Invalid(format!("pair_odd needs an odd degree, got {deg}")));
    }
    require_cyclic_cocycle(c, deg, f)?;
    let one = super::unit_of(u.x.dim, b);
    let a = u.u_inv.sub(&one);
    let z = u.u.sub(&one);
    let factors: Vec<&SparseVec> = (0..=deg).map(|i| if i % 2 == 0 { &a } else { &z }).collect();
    Ok(InvariantFunctional {
        values: psi_values(c, &u.x, deg, f, &factors)?,
    })
}

/// `⟨f,u₁⟩ + ⟨f,u₂⟩ = ⟨f, [[u₁, T], [0, u₂]]⟩` with `T ∈ Hom(X₂,X₁)⊗B`.
pub fn triangular_relation_check(
    c: &EquivariantComplex,
    deg: usize,
    f: &SparseVec,
    u1: &InvariantInvertible,
    u2: &InvariantInvertible,
    t: &SparseVec,
    b: &ModuleAlgebra,
    h: &HopfPresentation,
) -> Result<CheckReport> {
    let (m1, m2) = (u1.x.dim, u2.x.dim);
    let n = m1 + m2;
    let db = b.dim();
    let x = u1.x.direct_sum(&u2.x);
    let block = embed_block(&u1.u, m1, 0, 0, n, db)
        .add(&embed_block(t, m2, 0, m1, n, db))
        .add(&embed_block(&u2.u, m2, m1, m1, n, db));
    let u = check_invertible(&x, b, h, &block)?;
    let lhs = pair_odd(c, deg, f, u1, b)?.add(&pair_odd(c, deg, f, u2, b)?);
    let rhs = pair_odd(c, deg, f, &u, b)?;
    Ok(CheckReport {
        entries: vec![CheckEntry::single("<f,u1> + <f,u2> = <f,[[u1,T],[0,u2]]>", lhs == rhs)],
    })
}

/// `⟨[f],[p]⟩_ρ = Σ f(b₀⊗…⊗b_{2n}) Tr(π_X(ρ⁻¹)T₀⋯T_{2n})` for a
/// `θ_ρ`-twisted cyclic cocycle `f` on the twisted object `tw`.
pub fn pair_twisted(
    tw: &EquivariantComplex,
    deg: usize,
    f: &SparseVec,
    p: &InvariantIdempotent,
    rho: &SparseVec,
    h: &HopfPresentation,
) -> Result<Scalar> {
    if deg % 2 != 0 {
        return Err(EngineError::Invalid(format!("pair_twisted needs an even degree, got {deg}")));
    }
    if !h.is_group_like(rho) {
        return Err(EngineError::Invalid("rho is not group-like".into()));
    }
    require_cyclic_cocycle(tw, deg, f)?;
    let db = tw.model.bdim();
    let amb = tw.lift(deg, f);
    let pi = p.x.op_matrix(&h.group_like_inverse(rho));
    let factors = vec![&p.p; deg + 1];
    Ok(chain_sum(&factors, p.x.dim, db, &|a0, cn, ks| {
        let tr = pi.get(cn, a0);
        if tr.is_zero() {
            return tr;
        }
        &tr * &amb.get(tw.model.encode(0, ks))
    }))
}
