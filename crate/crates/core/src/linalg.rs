//! Exact rational dense linear algebra: reduced row echelon form, solving,
//! nullspaces, rank and determinants. Everything is deterministic.

use crate::rat::Q;
use num::{One, Signed, Zero};

pub type Row = Vec<Q>;

pub fn mat_vec(m: &[Row], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Reduced row echelon form; returns the reduced matrix and the pivot columns.
pub fn rref(mut m: Vec<Row>) -> (Vec<Row>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &[Row]) -> usize {
    rref(m.to_vec()).1.len()
}

/// One solution of A x = b (free variables set to 0), or None if inconsistent.
pub fn solve(a: &[Row], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let aug: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = red[i][cols].clone();
    }
    Some(x)
}

/// Basis of the rational nullspace of A.
pub fn nullspace(a: &[Row]) -> Vec<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        // No constraints: the whole space.
        return (0..cols)
            .map(|j| {
                let mut v = vec![Q::zero(); cols];
                v[j] = Q::one();
                v
            })
            .collect();
    }
    let (red, pivots) = rref(a.to_vec());
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -red[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn det(a: &[Row]) -> Q {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut m = a.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let s = &m[c][j] * &f;
                    m[i][j] = &m[i][j] - &s;
                }
            }
        }
    }
    d
}

/// Sign changes of the characteristic polynomial coefficients certify positive
/// definiteness of a symmetric rational matrix (all leading principal minors
/// positive, via Sylvester's criterion).
pub fn is_positive_definite(a: &[Row]) -> bool {
    let n = a.len();
    (1..=n).all(|k| {
        let minor: Vec<Row> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&minor).is_positive()
    })
}
