//! Exact coefficient rings.

use crate::error::{invalid, Error, Result};
use crate::linalg::{integral_row, Echelon, IntegerEchelon};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A commutative ring whose elements are plain values.
pub trait Ring: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    /// The image of an integer; takes `self` because `F_p` needs `p`.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, when the ring is a field and `a != 0`.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_field(&self) -> bool;
    /// Fails if the element records an arithmetic overflow.
    fn check(&self, _a: &Self::Elem) -> Result<()> {
        Ok(())
    }
    /// Text form: `"p/q"` over the rationals, `"k mod p"` over `F_p`.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn spec(&self) -> RingSpec;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Basis of the vectors `x` with `row · x = 0` for every row.
    fn nullspace(
        &self,
        ncols: usize,
        rows: &mut dyn Iterator<Item = Vec<Self::Elem>>,
    ) -> Result<Vec<Vec<Self::Elem>>>
    where
        Self: Sized,
    {
        let mut ech = Echelon::new(self.clone(), ncols)?;
        for row in rows {
            ech.insert(row);
            if ech.rank() == ncols {
                break;
            }
        }
        Ok(ech.nullspace())
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_field(&self) -> bool {
        true
    }
    fn format(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::InvalidInput(format!("bad rational {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }
    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn nullspace(
        &self,
        ncols: usize,
        rows: &mut dyn Iterator<Item = Vec<BigRational>>,
    ) -> Result<Vec<Vec<BigRational>>> {
        let mut ech = IntegerEchelon::new(ncols);
        for row in rows {
            ech.insert(integral_row(&row));
            if ech.rank() == ncols {
                break;
            }
        }
        Ok(ech.nullspace())
    }
}

/// The prime field `F_p`; elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !is_prime || p > u32::MAX as u64 {
            return invalid(format!("{p} is not a supported prime"));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_field(&self) -> bool {
        true
    }
    fn format(&self, a: &u64) -> String {
        format!("{a} mod {}", self.p)
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let bad = || Error::InvalidInput(format!("bad element of F_{}: {s:?}", self.p));
        let (k, p) = match s.split_once("mod") {
            Some((k, p)) => (k.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        if let Some(p) = p {
            if p.parse::<u64>().map_err(|_| bad())? != self.p {
                return Err(bad());
            }
        }
        Ok(self.from_i64(k.parse::<i64>().map_err(|_| bad())?))
    }
    fn spec(&self) -> RingSpec {
        RingSpec::PrimeField(self.p)
    }
}

/// The integers as checked `i64`; `None` marks an overflow, which is
/// absorbing and reported by [`Ring::check`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = Option<i64>;

    fn zero(&self) -> Option<i64> {
        Some(0)
    }
    fn from_i64(&self, v: i64) -> Option<i64> {
        Some(v)
    }
    fn add(&self, a: &Option<i64>, b: &Option<i64>) -> Option<i64> {
        a.zip(*b).and_then(|(x, y)| x.checked_add(y))
    }
    fn mul(&self, a: &Option<i64>, b: &Option<i64>) -> Option<i64> {
        a.zip(*b).and_then(|(x, y)| x.checked_mul(y))
    }
    fn neg(&self, a: &Option<i64>) -> Option<i64> {
        a.and_then(i64::checked_neg)
    }
    fn is_zero(&self, a: &Option<i64>) -> bool {
        *a == Some(0)
    }
    fn inv(&self, a: &Option<i64>) -> Option<Option<i64>> {
        match a {
            Some(1) => Some(Some(1)),
            Some(-1) => Some(Some(-1)),
            _ => None,
        }
    }
    fn is_field(&self) -> bool {
        false
    }
    fn check(&self, a: &Option<i64>) -> Result<()> {
        a.map(|_| ()).ok_or(Error::Overflow)
    }
    fn format(&self, a: &Option<i64>) -> String {
        match a {
            Some(v) => format!("{v}/1"),
            None => "overflow".to_string(),
        }
    }
    fn parse(&self, s: &str) -> Result<Option<i64>> {
        let t = s.trim().strip_suffix("/1").unwrap_or(s.trim());
        t.parse::<i64>()
            .map(Some)
            .map_err(|_| Error::InvalidInput(format!("bad integer {s:?}")))
    }
    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
}

/// A ring chosen at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RingSpec {
    Rationals,
    PrimeField(u64),
    Integers,
}

impl RingSpec {
    /// Parses `Q`, `Z`, `F5`, `F_5` or `GF(5)`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "rationals" => return Ok(RingSpec::Rationals),
            "Z" | "ZZ" | "integers" => return Ok(RingSpec::Integers),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::InvalidInput(format!("unknown ring {t:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("unknown ring {t:?}")))?;
        PrimeField::new(p).map(|f| RingSpec::PrimeField(f.characteristic()))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "F{p}"),
            RingSpec::Integers => write!(f, "Z"),
        }
    }
}

/// Reduces a rational to `F_p`, if its denominator is invertible.
pub fn rational_mod_p(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = (q.numer() % &pb + &pb) % &pb;
    let d = (q.denom() % &pb + &pb) % &pb;
    let f = PrimeField::new(p).ok()?;
    let d = f.inv(&d.to_u64()?)?;
    Some(f.mul(&n.to_u64()?, &d))
}

/// Integer value of a rational, when it is one.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}
