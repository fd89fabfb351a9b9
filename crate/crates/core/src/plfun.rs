//! Piecewise linear functions on a tropical curve: lattice vertex values plus
//! an integer slope per edge (recorded along the canonical orientation).
//! Linearity is the balancing condition; the multidegree measures its failure.

use crate::curve::{Contraction, TropicalCurve};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::LatVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    pub vertex_values: Vec<LatVec>,
    /// Slope along each edge, tail to head.
    pub slopes: Vec<i64>,
}

/// Integer multiplicities per vertex.
pub type Divisor = Vec<i64>;

pub fn divisor_degree(d: &Divisor) -> i64 {
    d.iter().sum()
}

impl PLFunction {
    /// Validates the compatibility condition along every closed edge:
    /// value(head) = value(tail) + slope * length.
    pub fn new(curve: &TropicalCurve, vertex_values: Vec<LatVec>, slopes: Vec<i64>) -> Result<Self> {
        if vertex_values.len() != curve.num_vertices() {
            return Err(Error::InvalidPLFunction(format!(
                "expected {} vertex values, got {}",
                curve.num_vertices(),
                vertex_values.len()
            )));
        }
        if slopes.len() != curve.num_edges() {
            return Err(Error::InvalidPLFunction(format!(
                "expected {} slopes, got {}",
                curve.num_edges(),
                slopes.len()
            )));
        }
        let f = PLFunction { vertex_values, slopes };
        for (j, e) in curve.edges().iter().enumerate() {
            if let (Some(t), Some(h)) = (e.tail, e.head) {
                let expect = f.vertex_values[t].add(&e.length.scale_i64(f.slopes[j]));
                if f.vertex_values[h] != expect {
                    return Err(Error::InvalidPLFunction(format!(
                        "edge {}: head value does not match tail value plus slope times length",
                        j
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn constant(curve: &TropicalCurve, value: LatVec) -> Result<Self> {
        PLFunction::new(
            curve,
            vec![value; curve.num_vertices()],
            vec![0; curve.num_edges()],
        )
    }

    pub fn add(&self, other: &PLFunction) -> PLFunction {
        PLFunction {
            vertex_values: self
                .vertex_values
                .iter()
                .zip(&other.vertex_values)
                .map(|(a, b)| a.add(b))
                .collect(),
            slopes: self.slopes.iter().zip(&other.slopes).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Balancing: at every vertex the outgoing slopes sum to zero.
pub fn is_linear(curve: &TropicalCurve, f: &PLFunction) -> Result<bool> {
    Ok(multidegree(curve, f)?.iter().all(|&d| d == 0))
}

/// The divisor of outgoing-slope sums. Total degree is always zero: each edge
/// is counted once with each orientation.
pub fn multidegree(curve: &TropicalCurve, f: &PLFunction) -> Result<Divisor> {
    if !curve.is_compact() {
        return Err(Error::NotCompact);
    }
    let mut d = vec![0i64; curve.num_vertices()];
    for (j, e) in curve.edges().iter().enumerate() {
        d[e.tail.unwrap()] += f.slopes[j];
        d[e.head.unwrap()] -= f.slopes[j];
    }
    Ok(d)
}

/// Push a PL function through an edge contraction: vertex values map through
/// the monoid homomorphism (constant on contracted regions), surviving slopes
/// are kept.
pub fn contract_plf(
    curve: &TropicalCurve,
    f: &PLFunction,
    hom: &[Vec<crate::rat::Q>],
    contraction: &Contraction,
) -> Result<PLFunction> {
    if f.vertex_values.len() != curve.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: curve.num_vertices(),
            got: f.vertex_values.len(),
        });
    }
    let mut values = vec![None; contraction.curve.num_vertices()];
    for (v, &nv) in contraction.vertex_map.iter().enumerate() {
        let mapped = LatVec::new(linalg::mat_vec(hom, &f.vertex_values[v].coords));
        match &values[nv] {
            None => values[nv] = Some(mapped),
            Some(prev) if *prev == mapped => {}
            Some(_) => {
                return Err(Error::InvalidPLFunction(
                    "vertex values disagree on a contracted region".into(),
                ))
            }
        }
    }
    let mut slopes = vec![0i64; contraction.curve.num_edges()];
    for (j, m) in contraction.edge_map.iter().enumerate() {
        if let Some(nj) = m {
            slopes[*nj] = f.slopes[j];
        }
    }
    PLFunction::new(
        &contraction.curve,
        values.into_iter().map(|v| v.expect("surjective vertex map")).collect(),
        slopes,
    )
}
