//! Exact scalars over `Q` or a simple extension `Q[x]/(p)`.
//!
//! A [`Scalar`] is either a plain rational or a coordinate vector in the power
//! basis of a [`NumberField`]. Rationals mix freely with extension elements of
//! any field; two extension elements must live in the same field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::EngineError;

/// `Q[x]/(p)` for a monic `p`. Irreducibility is the caller's contract.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Coefficients `c_0 .. c_{d-1}, 1` of the monic minimal polynomial.
    minpoly: Vec<BigRational>,
}

impl NumberField {
    pub fn new(minpoly: Vec<BigRational>) -> Result<Self, EngineError> {
        match minpoly.last() {
            Some(lead) if lead.is_one() && minpoly.len() >= 2 => Ok(NumberField { minpoly }),
            _ => Err(EngineError::Field(
                "minimal polynomial must be monic of degree >= 1".into(),
            )),
        }
    }

    pub fn rationals() -> Self {
        NumberField {
            minpoly: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigRational] {
        &self.minpoly
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// The class of `x` in the field.
    pub fn generator(self: &Arc<Self>) -> Scalar {
        if self.is_rational() {
            return Scalar::Rat(-self.minpoly[0].clone());
        }
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[1] = BigRational::one();
        Scalar::Ext(self.clone(), coords.into_boxed_slice())
    }

    /// Reduce a polynomial (low degree first) modulo the minimal polynomial.
    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while poly.len() > d {
            let lead = poly.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for (k, c) in self.minpoly[..d].iter().enumerate() {
                poly[shift + k] -= &lead * c;
            }
        }
        poly.resize(d, BigRational::zero());
        poly
    }
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Ext(Arc<NumberField>, Box<[BigRational]>),
}

fn trim(poly: &mut Vec<BigRational>) {
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division with remainder in `Q[x]`; `b` must be nonzero after trimming.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let shift = rem.len() - 1 - db;
        let coef = rem.last().unwrap() / &lead;
        for (k, c) in b.iter().enumerate() {
            rem[shift + k] -= &coef * c;
        }
        quot[shift] = coef;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rat(r)
    }

    /// Builds an element from power-basis coordinates, normalizing to `Rat`
    /// when every non-constant coordinate vanishes.
    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Self {
        let mut coords = field.reduce(coords);
        if coords[1..].iter().all(|c| c.is_zero()) {
            return Scalar::Rat(coords.swap_remove(0));
        }
        Scalar::Ext(field.clone(), coords.into_boxed_slice())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Ext(..) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Ext(..) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Ext(f, _) => Some(f),
        }
    }

    /// Power-basis coordinates padded to `degree`.
    pub fn coords(&self, degree: usize) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![BigRational::zero(); degree.max(1)];
                v[0] = r.clone();
                v
            }
            Scalar::Ext(_, c) => c.to_vec(),
        }
    }

    fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
        if Arc::ptr_eq(a, b) || a == b {
            return true;
        }
        panic!("{}", EngineError::Field("arithmetic mixes elements of different fields".into()));
    }

    /// Multiplicative inverse; fails on zero and on zero divisors of a
    /// reducible modulus.
    pub fn try_inv(&self) -> Result<Scalar, EngineError> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(EngineError::Field("inverse of zero".into()))
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Ext(field, c) => {
                // Extended Euclid: s*a + t*p = g.
                let mut r0: Vec<BigRational> = field.minpoly.clone();
                let mut r1: Vec<BigRational> = c.to_vec();
                trim(&mut r1);
                let mut t0: Vec<BigRational> = Vec::new();
                let mut t1: Vec<BigRational> = vec![BigRational::one()];
                while !r1.is_empty() {
                    let (q, r) = poly_divmod(&r0, &r1);
                    let qt = poly_mul(&q, &t1);
                    let mut nt = t0.clone();
                    if nt.len() < qt.len() {
                        nt.resize(qt.len(), BigRational::zero());
                    }
                    for (k, v) in qt.into_iter().enumerate() {
                        nt[k] -= v;
                    }
                    trim(&mut nt);
                    r0 = std::mem::replace(&mut r1, r);
                    t0 = std::mem::replace(&mut t1, nt);
                }
                // r0 is the gcd, t0 the cofactor of a.
                if r0.len() != 1 {
                    return Err(EngineError::Field(format!(
                        "element {} is a zero divisor; the minimal polynomial is reducible",
                        self
                    )));
                }
                let scale = r0[0].recip();
                let inv: Vec<BigRational> = t0.into_iter().map(|x| x * &scale).collect();
                Ok(Scalar::from_coords(field, inv))
            }
        }
    }

    pub fn inv(&self) -> Scalar {
        match self.try_inv() {
            Ok(s) => s,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `"num/den"` strings of the power-basis coordinates.
    pub fn to_strings(&self) -> Vec<String> {
        let fmt = |r: &BigRational| r.to_string();
        match self {
            Scalar::Rat(r) => vec![fmt(r)],
            Scalar::Ext(_, c) => c.iter().map(fmt).collect(),
        }
    }

    /// Total order used for deterministic tie-breaking: rationals compare by
    /// value, extension elements coordinate-wise after rationals.
    pub fn lex_cmp(&self, other: &Scalar) -> Ordering {
        let d = match (self, other) {
            (Scalar::Ext(f, _), _) | (_, Scalar::Ext(f, _)) => f.degree(),
            _ => 1,
        };
        let a = self.coords(d);
        let b = other.coords(d);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Ext(f, a), Scalar::Ext(g, b)) => (Arc::ptr_eq(f, g) || f == g) && a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Ext(_, c) => {
                let mut first = true;
                for (k, v) in c.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match k {
                        0 => write!(f, "{v}")?,
                        1 => write!(f, "({v})*x")?,
                        _ => write!(f, "({v})*x^{k}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Rat(a), Scalar::Ext(f, c)) | (Scalar::Ext(f, c), Scalar::Rat(a)) => {
                let mut c = c.to_vec();
                c[0] += a;
                Scalar::from_coords(f, c)
            }
            (Scalar::Ext(f, a), Scalar::Ext(g, b)) => {
                Scalar::same_field(f, g);
                let c = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                Scalar::from_coords(f, c)
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Ext(f, c)) | (Scalar::Ext(f, c), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Ext(f.clone(), c.iter().map(|x| x * a).collect())
            }
            (Scalar::Ext(f, a), Scalar::Ext(g, b)) => {
                Scalar::same_field(f, g);
                Scalar::from_coords(f, poly_mul(a, b))
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Ext(f, c) => Scalar::Ext(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Parses `"a"`, `"a/b"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational, EngineError> {
    let s = s.trim();
    let bad = || EngineError::Schema(format!("cannot parse rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_arithmetic_is_canonical() {
        let a = Scalar::from_frac(2, 4);
        assert_eq!(a.to_strings(), vec!["1/2".to_string()]);
        let b = Scalar::from_frac(-3, -6);
        assert_eq!(a, b);
        assert!((&a - &b).is_zero());
        assert_eq!((&a * &Scalar::from_int(4)), Scalar::from_int(2));
    }

    #[test]
    fn gaussian_rationals() {
        // Q(i), i^2 + 1 = 0
        let f = Arc::new(NumberField::new(vec![q(1, 1), q(0, 1), q(1, 1)]).unwrap());
        let i = f.generator();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        let z = &Scalar::one() + &i;
        let zi = z.inv();
        assert_eq!(&z * &zi, Scalar::one());
        assert_eq!(zi.to_strings(), vec!["1/2", "-1/2"]);
    }

    #[test]
    fn zero_divisor_is_reported() {
        // x^2 - 1 is reducible; x - 1 has no inverse.
        let f = Arc::new(NumberField::new(vec![q(-1, 1), q(0, 1), q(1, 1)]).unwrap());
        let x = f.generator();
        let e = (&x - &Scalar::one()).try_inv().unwrap_err();
        assert!(e.to_string().contains("zero divisor"));
    }

    #[test]
    fn non_monic_rejected() {
        assert!(NumberField::new(vec![q(1, 1), q(2, 1)]).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), q(-3, 2));
        assert!(parse_rational("1/0").is_err());
    }
}
