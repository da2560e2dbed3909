//! Univariate polynomials over `Q` (coefficients low degree first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Mat, Scalar, SparseVec};
use crate::error::{EngineError, Result};

pub fn eval(poly: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Distinct rational roots, ascending.
pub fn rational_roots(poly: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut p: Vec<BigRational> = poly.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    if p[0].is_zero() {
        roots.push(BigRational::zero());
        let k = p.iter().position(|c| !c.is_zero()).unwrap();
        p.drain(..k);
    }
    if p.len() > 1 {
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
        let too_big = || {
            EngineError::NotSplit("polynomial coefficients too large for rational root search".into())
        };
        let a0 = ints[0].abs().to_u64().ok_or_else(too_big)?;
        let an = ints.last().unwrap().abs().to_u64().ok_or_else(too_big)?;
        if a0 > 1 << 40 || an > 1 << 40 {
            return Err(too_big());
        }
        let qs = divisors(an);
        for num in divisors(a0) {
            for &den in &qs {
                for sign in [-1i64, 1] {
                    let r = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                    if eval(&p, &r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Monic minimal polynomial of the sequence `v_0, v_1, ...` produced by
/// `next`, i.e. the first linear relation `v_k = Σ c_i v_i`. Returns
/// `[-c_0, ..., -c_{k-1}, 1]`.
pub fn krylov_minpoly(
    dim: usize,
    first: SparseVec,
    mut next: impl FnMut(&SparseVec) -> SparseVec,
) -> Vec<Scalar> {
    let mut vs: Vec<SparseVec> = vec![first];
    loop {
        let last = vs.last().unwrap().clone();
        let m = Mat::from_columns(&vs[..vs.len() - 1], dim);
        if vs.len() > 1 {
            if let Ok(c) = super::solve(&m, &last) {
                let mut out: Vec<Scalar> = (0..vs.len() - 1).map(|i| -c.get(i)).collect();
                out.push(Scalar::one());
                return out;
            }
        } else if last.is_zero() {
            return vec![Scalar::one()];
        }
        let nv = next(&last);
        vs.push(nv);
        assert!(vs.len() <= dim + 2, "Krylov sequence failed to terminate");
    }
}

/// Coefficients as rationals, or `NotSplit` when some coefficient lies in a
/// proper extension.
pub fn rational_coeffs(poly: &[Scalar]) -> Result<Vec<BigRational>> {
    poly.iter()
        .map(|c| {
            c.as_rational().cloned().ok_or_else(|| {
                EngineError::NotSplit(
                    "needs larger field: polynomial with non-rational coefficients".into(),
                )
            })
        })
        .collect()
}
