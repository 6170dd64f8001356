//! Cyclotomic integers `ℤ[ζ_e]` and the reduction `ζ ↦ 1` onto `F_r` for
//! `e = r^a`.

use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// An integer polynomial, coefficients from the constant term up, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly::default();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    /// Quotient and remainder by a monic polynomial.
    pub fn div_rem_monic(&self, m: &Poly) -> (Poly, Poly) {
        assert!(m.0.last().is_some_and(|c| c.is_one()), "monic divisor");
        let dm = m.0.len() - 1;
        let mut r = self.0.clone();
        if r.len() <= dm {
            return (Poly::default(), Poly::new(r));
        }
        let mut q = vec![BigInt::zero(); r.len() - dm];
        for k in (dm..r.len()).rev() {
            let c = r[k].clone();
            if c.is_zero() {
                continue;
            }
            q[k - dm] = c.clone();
            for (j, mj) in m.0.iter().enumerate() {
                r[k - dm + j] -= &c * mj;
            }
        }
        r.truncate(dm);
        (Poly::new(q), Poly::new(r))
    }
}

/// `Φ_e`, computed as `(x^e − 1) / Π_{d | e, d < e} Φ_d` and cached.
pub fn cyclotomic_polynomial(e: usize) -> Arc<Poly> {
    assert!(e >= 1);
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&e) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); e + 1];
    num[0] = -BigInt::one();
    num[e] = BigInt::one();
    let mut p = Poly::new(num);
    for d in (1..e).filter(|d| e.is_multiple_of(*d)) {
        let (q, r) = p.div_rem_monic(&cyclotomic_polynomial(d));
        debug_assert!(r.0.is_empty());
        p = q;
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(e, p.clone());
    p
}

/// `(r, a)` with `e = r^a`, `r` prime and `a ≥ 1`.
pub fn prime_power(e: usize) -> Option<(u64, u32)> {
    if e < 2 {
        return None;
    }
    let r = (2..=e).find(|d| e.is_multiple_of(*d))?;
    let mut m = e;
    let mut a = 0;
    while m.is_multiple_of(r) {
        m /= r;
        a += 1;
    }
    (m == 1).then_some((r as u64, a))
}

/// An element of `ℤ[ζ_e]`, stored as its remainder modulo `Φ_e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    e: usize,
    poly: Poly,
}

impl CyclotomicInteger {
    pub fn new(e: usize, coeffs: &[i64]) -> Self {
        Self::from_poly(e, Poly::from_i64(coeffs))
    }

    pub fn from_poly(e: usize, p: Poly) -> Self {
        let (_, r) = p.div_rem_monic(&cyclotomic_polynomial(e));
        CyclotomicInteger { e, poly: r }
    }

    pub fn zeta(e: usize) -> Self {
        Self::new(e, &[0, 1])
    }

    pub fn integer(e: usize, v: i64) -> Self {
        Self::new(e, &[v])
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// Coefficients of the reduced representative, constant term first.
    pub fn coeffs(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.e, o.e);
        CyclotomicInteger { e: self.e, poly: self.poly.add(&o.poly) }
    }

    pub fn neg(&self) -> Self {
        CyclotomicInteger { e: self.e, poly: self.poly.neg() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.e, o.e);
        Self::from_poly(self.e, self.poly.mul(&o.poly))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::integer(self.e, 1), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.poly.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let mag = match (k, a.is_one()) {
                (0, _) => a.to_string(),
                (_, true) => String::new(),
                _ => a.to_string(),
            };
            let var = match k {
                0 => String::new(),
                1 => "ζ".to_string(),
                _ => format!("ζ^{k}"),
            };
            write!(f, "{sign}{mag}{var}")?;
            first = false;
        }
        Ok(())
    }
}

fn check_base(e: usize, r: u64) -> Result<()> {
    match prime_power(e) {
        Some((q, _)) if q == r => Ok(()),
        _ => invalid(format!("e = {e} is not a power of {r}")),
    }
}

/// `φ(x)`: evaluation at `ζ = 1`, reduced mod `r`.
pub fn phi_reduce(x: &CyclotomicInteger, r: u64) -> Result<u64> {
    check_base(x.e, r)?;
    let v = x.poly.eval(1).mod_floor(&BigInt::from(r));
    Ok(v.to_u64().expect("residue below r"))
}

/// Whether `x` lies in the kernel `(1 − ζ)` of `φ`.
pub fn in_kernel(x: &CyclotomicInteger, r: u64) -> Result<bool> {
    Ok(phi_reduce(x, r)? == 0)
}

/// Entrywise `φ`.
pub fn reduce_matrix(m: &[Vec<CyclotomicInteger>], r: u64) -> Result<Vec<Vec<u64>>> {
    m.iter().map(|row| row.iter().map(|x| phi_reduce(x, r)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(9), Poly::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn zeta_has_order_e() {
        let z = CyclotomicInteger::zeta(8);
        assert_eq!(z.pow(8), CyclotomicInteger::integer(8, 1));
        assert_eq!(z.pow(4), CyclotomicInteger::integer(8, -1));
        assert_eq!(z.pow(3).to_string(), "ζ^3");
    }

    #[test]
    fn reduction_rejects_other_bases() {
        let x = CyclotomicInteger::integer(6, 1);
        assert!(phi_reduce(&x, 2).is_err());
        assert!(phi_reduce(&CyclotomicInteger::integer(9, 1), 2).is_err());
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
    }
}
