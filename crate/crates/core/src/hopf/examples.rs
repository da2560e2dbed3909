//! Standard small Hopf algebras.

use super::{AlgebraPresentation, HopfPresentation};
use crate::linalg::{Mat, Scalar, SparseVec};

/// A finite group by its multiplication table; element `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        FiniteGroup {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    /// `S₃` as permutations of `{0,1,2}` in the order
    /// `id, (01), (02), (12), (012), (021)`, composed as `(στ)(x) = σ(τ(x))`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        Self::from_permutations(&perms)
    }

    fn from_permutations(perms: &[[usize; 3]]) -> Self {
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| idx([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup { table }
    }
}

/// The group algebra `k[G]` on the group basis.
pub fn group_algebra(g: &FiniteGroup) -> HopfPresentation {
    let n = g.order();
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            rows.push(SparseVec::unit(g.mul(a, b)));
        }
    }
    let alg = AlgebraPresentation {
        dim: n,
        mult: Mat::from_rows(rows, n),
        unit: SparseVec::unit(0),
    };
    let comult = Mat::from_rows((0..n).map(|a| SparseVec::unit(a * n + a)).collect(), n * n);
    let counit = SparseVec::from_pairs((0..n).map(|a| (a, Scalar::one())).collect());
    let antipode = Mat::from_rows((0..n).map(|a| SparseVec::unit(g.inv(a))).collect(), n);
    HopfPresentation {
        alg,
        comult,
        counit,
        antipode: antipode.clone(),
        antipode_inv: antipode,
    }
}

/// The function algebra `k(G)` on the point-mass basis `δ_g`.
pub fn function_algebra(g: &FiniteGroup) -> HopfPresentation {
    let n = g.order();
    let comult = Mat::from_rows(
        (0..n)
            .map(|c| {
                let mut pairs = Vec::new();
                for a in 0..n {
                    for b in 0..n {
                        if g.mul(a, b) == c {
                            pairs.push((a * n + b, Scalar::one()));
                        }
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect(),
        n * n,
    );
    let antipode = Mat::from_rows((0..n).map(|a| SparseVec::unit(g.inv(a))).collect(), n);
    HopfPresentation {
        alg: AlgebraPresentation::diagonal(n),
        comult,
        counit: SparseVec::unit(0),
        antipode: antipode.clone(),
        antipode_inv: antipode,
    }
}

pub const SW_ONE: usize = 0;
pub const SW_G: usize = 1;
pub const SW_X: usize = 2;
pub const SW_GX: usize = 3;

/// Sweedler's four-dimensional Hopf algebra on `1, g, x, gx` with
/// `g² = 1`, `x² = 0`, `xg = −gx`, `Δx = x⊗1 + g⊗x`.
pub fn sweedler() -> HopfPresentation {
    let one = Scalar::one();
    let m1 = Scalar::from_int(-1);
    let z = SparseVec::new;
    let u = SparseVec::unit;
    let neg = |i| SparseVec::single(i, m1.clone());
    // rows a·b for a, b in 1, g, x, gx
    let rows = vec![
        u(SW_ONE), u(SW_G), u(SW_X), u(SW_GX),
        u(SW_G), u(SW_ONE), u(SW_GX), u(SW_X),
        u(SW_X), neg(SW_GX), z(), z(),
        u(SW_GX), neg(SW_X), z(), z(),
    ];
    let alg = AlgebraPresentation {
        dim: 4,
        mult: Mat::from_rows(rows, 4),
        unit: u(SW_ONE),
    };
    let t = |a: usize, b: usize| a * 4 + b;
    let comult = Mat::from_rows(
        vec![
            u(t(SW_ONE, SW_ONE)),
            u(t(SW_G, SW_G)),
            SparseVec::from_pairs(vec![(t(SW_X, SW_ONE), one.clone()), (t(SW_G, SW_X), one.clone())]),
            SparseVec::from_pairs(vec![(t(SW_GX, SW_G), one.clone()), (t(SW_ONE, SW_GX), one.clone())]),
        ],
        16,
    );
    let counit = SparseVec::from_pairs(vec![(SW_ONE, one.clone()), (SW_G, one)]);
    let antipode = Mat::from_rows(vec![u(SW_ONE), u(SW_G), neg(SW_GX), u(SW_X)], 4);
    HopfPresentation::new(alg, comult, counit, antipode, None).expect("antipode is invertible")
}

/// The one-dimensional Hopf algebra `k`.
pub fn trivial_hopf() -> HopfPresentation {
    HopfPresentation {
        alg: AlgebraPresentation::ground(),
        comult: Mat::identity(1),
        counit: SparseVec::unit(0),
        antipode: Mat::identity(1),
        antipode_inv: Mat::identity(1),
    }
}
