//! Exact nullspaces.
//!
//! Rows are fed one at a time and reduced against the current echelon
//! form, so the stacked matrix is never stored. Pivots are chosen as the
//! first nonzero column, which makes the returned bases reproducible.

use crate::error::{Error, Result};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Reduced echelon form over a field, grown row by row.
#[derive(Clone, Debug)]
pub struct Echelon<R: Ring> {
    ring: R,
    ncols: usize,
    /// Pivot column to its row; each row has a 1 at its pivot and zeros
    /// at the other pivot columns.
    rows: BTreeMap<usize, Vec<R::Elem>>,
}

impl<R: Ring> Echelon<R> {
    pub fn new(ring: R, ncols: usize) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::Unsupported(format!("elimination over {}", ring.spec())));
        }
        Ok(Echelon { ring, ncols, rows: BTreeMap::new() })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<R::Elem>) -> bool {
        assert_eq!(row.len(), self.ncols);
        let r = &self.ring;
        for (&c, p) in &self.rows {
            if !r.is_zero(&row[c]) {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(p) {
                    *x = r.sub(x, &r.mul(&f, y));
                }
            }
        }
        let Some(c) = row.iter().position(|x| !r.is_zero(x)) else {
            return false;
        };
        let inv = r.inv(&row[c]).expect("field element");
        for x in row.iter_mut() {
            *x = r.mul(x, &inv);
        }
        for p in self.rows.values_mut() {
            if !r.is_zero(&p[c]) {
                let f = p[c].clone();
                for (x, y) in p.iter_mut().zip(&row) {
                    *x = r.sub(x, &r.mul(&f, y));
                }
            }
        }
        self.rows.insert(c, row);
        true
    }

    /// A basis of the vectors orthogonal to every inserted row, each
    /// scaled so that its first nonzero entry is 1.
    pub fn nullspace(&self) -> Vec<Vec<R::Elem>> {
        let r = &self.ring;
        (0..self.ncols)
            .filter(|f| !self.rows.contains_key(f))
            .map(|f| {
                let mut x = vec![r.zero(); self.ncols];
                x[f] = r.one();
                for (&c, p) in &self.rows {
                    x[c] = r.neg(&p[f]);
                }
                let lead = x.iter().find(|v| !r.is_zero(v)).cloned().expect("x_f = 1");
                let inv = r.inv(&lead).expect("nonzero");
                x.iter().map(|v| r.mul(v, &inv)).collect()
            })
            .collect()
    }
}

/// Fraction-free echelon form over the integers: rows are kept primitive
/// (content 1, positive pivot) and combined by cross multiplication.
#[derive(Clone, Debug, Default)]
pub struct IntegerEchelon {
    ncols: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let lead_negative = row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_negative { -g } else { g };
    if !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn eliminate(target: &mut [BigInt], pivot: &[BigInt], c: usize) {
    if target[c].is_zero() {
        return;
    }
    let (a, b) = (pivot[c].clone(), target[c].clone());
    for (x, y) in target.iter_mut().zip(pivot) {
        *x = &a * &*x - &b * y;
    }
    make_primitive(target);
}

impl IntegerEchelon {
    pub fn new(ncols: usize) -> Self {
        IntegerEchelon { ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.ncols);
        make_primitive(&mut row);
        for (&c, p) in &self.rows {
            eliminate(&mut row, p, c);
        }
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        for p in self.rows.values_mut() {
            eliminate(p, &row, c);
        }
        self.rows.insert(c, row);
        true
    }

    /// Nullspace basis over the rationals, first nonzero entry 1.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        (0..self.ncols)
            .filter(|f| !self.rows.contains_key(f))
            .map(|f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for (&c, p) in &self.rows {
                    x[c] = BigRational::new(-p[f].clone(), p[c].clone());
                }
                let lead = x.iter().find(|v| !v.is_zero()).cloned().expect("x_f = 1");
                x.iter().map(|v| v / &lead).collect()
            })
            .collect()
    }
}

/// Clears denominators of a rational row.
pub fn integral_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}
