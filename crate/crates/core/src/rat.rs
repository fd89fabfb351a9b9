//! Arbitrary-precision rational scalars and lattice vectors.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar used everywhere.
pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p", "-p" or "p/q".
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Q::from(n))
        }
    }
}

pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn floor_q(q: &Q) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil_q(q: &Q) -> BigInt {
    q.ceil().to_integer()
}

/// Nearest integer, ties rounded up. Deterministic.
pub fn round_half_up(q: &Q) -> BigInt {
    floor_q(&(q + qr(1, 2)))
}

/// An element of the ambient lattice tensored with Q; integral vectors are
/// elements of the lattice itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatVec {
    pub coords: Vec<Q>,
}

impl LatVec {
    pub fn new(coords: Vec<Q>) -> Self {
        LatVec { coords }
    }

    pub fn zeros(n: usize) -> Self {
        LatVec { coords: vec![Q::zero(); n] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        LatVec { coords: v.iter().map(|&x| qi(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    pub fn add(&self, o: &LatVec) -> LatVec {
        debug_assert_eq!(self.dim(), o.dim());
        LatVec::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatVec) -> LatVec {
        debug_assert_eq!(self.dim(), o.dim());
        LatVec::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatVec {
        LatVec::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Q) -> LatVec {
        LatVec::new(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn scale_int(&self, s: &BigInt) -> LatVec {
        let q = Q::from(s.clone());
        self.scale(&q)
    }

    pub fn scale_i64(&self, s: i64) -> LatVec {
        self.scale(&qi(s))
    }

    pub fn abs(&self) -> LatVec {
        LatVec::new(self.coords.iter().map(|a| a.abs()).collect())
    }

    /// Pairing against a rational row vector of the same length.
    pub fn dot_row(&self, row: &[Q]) -> Q {
        debug_assert_eq!(self.dim(), row.len());
        self.coords.iter().zip(row).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for LatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}
