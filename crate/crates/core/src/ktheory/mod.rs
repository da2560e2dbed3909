//! Equivariant K-theory representatives, pairings with cyclic cohomology and
//! the Julg correspondence.

mod julg;
mod pairing;
#[cfg(test)]
mod tests;

pub use julg::{
    a_module_of, free_module, intertwiners, invariant_idempotents, iso_test, julg_forward, julg_reverse, k0_semisimple, k0_survey,
    multiplicities, restrict_module, IsoResult, JulgPresentation, K0Semisimple, K0Survey, SurveyEntry, SurveyModule,
};
pub use pairing::{pair_even, pair_odd, pair_twisted, triangular_relation_check, InvariantFunctional};

use crate::actions::{endx_tensor_b, ModuleAlgebra, RightModule};
use crate::error::{EngineError, Result};
use crate::hopf::HopfPresentation;
use crate::linalg::SparseVec;

/// An idempotent `p ∈ End(X)⊗B` fixed by the action of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantIdempotent {
    pub x: RightModule,
    pub p: SparseVec,
}

/// An invertible invariant `u ∈ End(X)⊗B` with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantInvertible {
    pub x: RightModule,
    pub u: SparseVec,
    pub u_inv: SparseVec,
}

fn check_len(v: &SparseVec, len: usize, what: &str) -> Result<()> {
    if v.max_index().is_some_and(|i| i >= len) {
        return Err(EngineError::Dimension(format!("{what} must have {len} coordinates")));
    }
    Ok(())
}

/// First basis element `ω_j` of `H` with `v◀ω_j ≠ ε(ω_j)v`.
fn invariance_defect(big: &ModuleAlgebra, h: &HopfPresentation, v: &SparseVec) -> Option<usize> {
    (0..h.dim()).find(|&j| big.module.act(v, &SparseVec::unit(j)) != v.scale(&h.eps_basis(j)))
}

/// Certifies `p² = p` and invariance under the action on `End(X)⊗B`.
pub fn check_idempotent(
    x: &RightModule,
    b: &ModuleAlgebra,
    h: &HopfPresentation,
    p: &SparseVec,
) -> Result<InvariantIdempotent> {
    let big = endx_tensor_b(x, b, h);
    check_len(p, big.dim(), "p")?;
    let sq = big.alg.mul(p, p).sub(p);
    if let Some((i, _)) = sq.leading() {
        return Err(EngineError::NotIdempotent(format!("p^2 - p is nonzero at coordinate {i}")));
    }
    if let Some(j) = invariance_defect(&big, h, p) {
        return Err(EngineError::NotInvariant(format!("p moved by basis element {j} of H")));
    }
    Ok(InvariantIdempotent { x: x.clone(), p: p.clone() })
}

/// Certifies that `u` is invariant and invertible, computing `u⁻¹`.
pub fn check_invertible(
    x: &RightModule,
    b: &ModuleAlgebra,
    h: &HopfPresentation,
    u: &SparseVec,
) -> Result<InvariantInvertible> {
    let big = endx_tensor_b(x, b, h);
    check_len(u, big.dim(), "u")?;
    if let Some(j) = invariance_defect(&big, h, u) {
        return Err(EngineError::NotInvariant(format!("u moved by basis element {j} of H")));
    }
    let u_inv = big
        .alg
        .inverse_of(u)
        .map_err(|_| EngineError::NotInvertible("u".into()))?;
    Ok(InvariantInvertible {
        x: x.clone(),
        u: u.clone(),
        u_inv,
    })
}

/// Places a block with `rows × cols` matrix part at `(r0, c0)` of an
/// `n × n` block matrix, `B`-coordinates of length `db`.
pub fn embed_block(v: &SparseVec, cols: usize, r0: usize, c0: usize, n: usize, db: usize) -> SparseVec {
    v.remap(|u| {
        let (e, k) = (u / db, u % db);
        let (i, j) = (e / cols, e % cols);
        Some(((i + r0) * n + j + c0) * db + k)
    })
}

/// The unit of `End(X)⊗B`.
pub fn unit_of(n: usize, b: &ModuleAlgebra) -> SparseVec {
    let db = b.dim();
    let mut pairs = Vec::new();
    for i in 0..n {
        for (k, c) in b.alg.unit.iter() {
            pairs.push(((i * n + i) * db + k, c.clone()));
        }
    }
    SparseVec::from_pairs(pairs)
}

/// `p ⊕ 0` in `End(X⊕X′)⊗B`.
pub fn stabilize(p: &InvariantIdempotent, extra: &RightModule, b: &ModuleAlgebra) -> InvariantIdempotent {
    let n = p.x.dim + extra.dim;
    InvariantIdempotent {
        x: p.x.direct_sum(extra),
        p: embed_block(&p.p, p.x.dim, 0, 0, n, b.dim()),
    }
}

/// `u ⊕ 1` in `End(X⊕X′)⊗B`.
pub fn stabilize_invertible(u: &InvariantInvertible, extra: &RightModule, b: &ModuleAlgebra) -> InvariantInvertible {
    let n = u.x.dim + extra.dim;
    let db = b.dim();
    let one = embed_block(&unit_of(extra.dim, b), extra.dim, u.x.dim, u.x.dim, n, db);
    InvariantInvertible {
        x: u.x.direct_sum(extra),
        u: embed_block(&u.u, u.x.dim, 0, 0, n, db).add(&one),
        u_inv: embed_block(&u.u_inv, u.x.dim, 0, 0, n, db).add(&one),
    }
}

/// `γ₀ = [[1−p, pγ′p′], [p′γp, 1−p′]]` on `X⊕X′`, given `γ ∈ Hom(X,X′)⊗B`
/// and `γ′ ∈ Hom(X′,X)⊗B` with `γγ′ = p′`, `γ′γ = p`. Returns `γ₀` and the
/// images of `p` and `p′` in `End(X⊕X′)⊗B`.
pub fn gamma0(
    b: &ModuleAlgebra,
    h: &HopfPresentation,
    p: &InvariantIdempotent,
    p2: &InvariantIdempotent,
    gamma: &SparseVec,
    gamma2: &SparseVec,
) -> Result<(InvariantInvertible, SparseVec, SparseVec)> {
    let (m, m2) = (p.x.dim, p2.x.dim);
    let n = m + m2;
    let db = b.dim();
    check_len(gamma, m2 * m * db, "gamma")?;
    check_len(gamma2, m * m2 * db, "gamma'")?;
    let x = p.x.direct_sum(&p2.x);
    let big = endx_tensor_b(&x, b, h);
    let pp = embed_block(&p.p, m, 0, 0, n, db);
    let pp2 = embed_block(&p2.p, m2, m, m, n, db);
    let g = embed_block(gamma, m, m, 0, n, db);
    let g2 = embed_block(gamma2, m2, 0, m, n, db);
    let mul = |a: &SparseVec, c: &SparseVec| big.alg.mul(a, c);
    let fail = |what: &str| Err(EngineError::WitnessEquationsFail(what.into()));
    if mul(&g, &g2) != pp2 {
        return fail("gamma gamma' != p'");
    }
    if mul(&g2, &g) != pp {
        return fail("gamma' gamma != p");
    }
    if invariance_defect(&big, h, &g).is_some() || invariance_defect(&big, h, &g2).is_some() {
        return fail("gamma or gamma' is not invariant");
    }
    let one1 = embed_block(&unit_of(m, b), m, 0, 0, n, db);
    let one2 = embed_block(&unit_of(m2, b), m2, m, m, n, db);
    let g0 = one1
        .sub(&pp)
        .add(&mul(&mul(&pp, &g2), &pp2))
        .add(&mul(&mul(&pp2, &g), &pp))
        .add(&one2.sub(&pp2));
    let inv = check_invertible(&x, b, h, &g0).map_err(|e| EngineError::WitnessEquationsFail(e.to_string()))?;
    if mul(&mul(&g0, &pp), &inv.u_inv) != pp2 {
        return fail("gamma0 p gamma0^-1 != p'");
    }
    Ok((inv, pp, pp2))
}
