//! Small Fredholm modules.

use super::{EquivariantFredholmModule, FiniteCoaction};
use crate::hopf::examples::{function_algebra, trivial_hopf, FiniteGroup};
use crate::hopf::AlgebraPresentation;
use crate::linalg::{Mat, Scalar};

fn swap_blocks(k: usize) -> Mat {
    let z = Mat::zeros(k, k);
    let i = Mat::identity(k);
    Mat::block2(&z, &i, &i, &z)
}

fn diag(values: &[i64]) -> Mat {
    Mat::diag(&values.iter().map(|&v| Scalar::from_int(v)).collect::<Vec<_>>())
}

/// `A = B = k`, `H± = k`, `F` the swap, `π` scalar, `U` trivial.
pub fn trivial_fredholm() -> EquivariantFredholmModule {
    let co = FiniteCoaction::trivial(trivial_hopf(), AlgebraPresentation::ground());
    EquivariantFredholmModule {
        coaction: co,
        minus: 1,
        plus: 1,
        pi: vec![Mat::identity(2)],
        f: swap_blocks(1),
        u: vec![Mat::identity(2)],
        star: true,
    }
}

/// `A = k` coacting trivially on `B = k(Z/2)`, `H± = k²`, `F` the block
/// swap, `π₊(δ₀) = diag(1,0)`, `π₋(δ₀) = 0` and `δ₁` acting by the
/// complements. `Ind_F(δ₀) = 1`.
pub fn worked_index() -> EquivariantFredholmModule {
    let b = function_algebra(&FiniteGroup::cyclic(2)).alg;
    let co = FiniteCoaction::trivial(trivial_hopf(), b);
    EquivariantFredholmModule {
        coaction: co,
        minus: 2,
        plus: 2,
        pi: vec![diag(&[0, 0, 1, 0]), diag(&[1, 1, 0, 1])],
        f: swap_blocks(2),
        u: vec![Mat::identity(4)],
        star: true,
    }
}

/// `A = k(Z/2)` coacting on `B = k(Z/2)` by translation, so the generator
/// of `Â = k[Z/2]` swaps `δ₀` and `δ₁`. `H₊ = k²` carries the regular
/// representation of `B`, `π₋ = 0`, `F` is the block swap and `U` the
/// regular corepresentation on both halves.
pub fn f2_index_upgrade() -> EquivariantFredholmModule {
    let g = FiniteGroup::cyclic(2);
    let a = function_algebra(&g);
    let b = a.alg.clone();
    let db = b.dim;
    let rows = (0..db)
        .map(|i| {
            crate::linalg::SparseVec::from_pairs(
                (0..g.order())
                    .map(|h| (h * db + g.mul(i, h), Scalar::one()))
                    .collect(),
            )
        })
        .collect();
    let co = FiniteCoaction {
        alpha: Mat::from_rows(rows, a.dim() * db),
        a,
        b,
    };
    let sigma = Mat::from_ints(&[&[0, 1], &[1, 0]]);
    EquivariantFredholmModule {
        coaction: co,
        minus: 2,
        plus: 2,
        pi: vec![diag(&[0, 0, 1, 0]), diag(&[0, 0, 0, 1])],
        f: swap_blocks(2),
        u: vec![Mat::identity(4), sigma.direct_sum(&sigma)],
        star: true,
    }
}
