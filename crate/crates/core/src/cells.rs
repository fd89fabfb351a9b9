//! Quasistable cell decompositions of the tropical Jacobian for curves with
//! real (ambient rank 1) edge lengths: enumeration of (model, divisor, slope)
//! cells, their exact polytopes in R^g, and the tiling verifier against the
//! fundamental domain of the intersection lattice.
//!
//! Conventions: every edge is subdivided at most once; each subdivision point
//! carries divisor value 1 and splits the edge into a tail segment of slope s
//! and a head segment of slope s+1; the divisor box constrains the original
//! vertices. The trivialization condition then forces the original-vertex
//! values to sum to minus the number of subdivided edges.

use crate::curve::TropicalCurve;
use crate::error::{Error, Result};
use crate::geom::{self, Pt};
use crate::plfun::Divisor;
use crate::rat::Q;
use crate::Parallelism;
use num::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct CellParams {
    /// Degree label for the run (metadata: cells are stored in the degree-0
    /// gauge and shifted by d times the base vertex on export).
    pub degree: i64,
    /// Slopes are searched in [-slope_bound, slope_bound].
    pub slope_bound: i64,
    /// Inclusive (lo, hi) range per original vertex.
    pub divisor_box: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Indices of subdivided edges, increasing.
    pub subdivided: Vec<usize>,
    /// Divisor on the original vertices.
    pub divisor: Divisor,
    /// Slope per original edge; on a subdivided edge this is the tail-segment
    /// slope (the head segment has slope + 1).
    pub slopes: Vec<i64>,
    /// Images in R^g of the corners of the position box, sorted and deduped.
    pub points: Vec<Vec<Q>>,
}

impl Cell {
    /// Convex hull of the corner images; meaningful for genus 2.
    pub fn hull(&self) -> Vec<Pt> {
        let pts: Vec<Pt> = self
            .points
            .iter()
            .map(|p| [p[0].clone(), p[1].clone()])
            .collect();
        geom::convex_hull(&pts)
    }

    /// Coordinate range for genus 1.
    pub fn interval(&self) -> (Q, Q) {
        let mut lo = self.points[0][0].clone();
        let mut hi = lo.clone();
        for p in &self.points {
            if p[0] < lo {
                lo = p[0].clone();
            }
            if p[0] > hi {
                hi = p[0].clone();
            }
        }
        (lo, hi)
    }
}

fn par_flat_map<T, U, F>(par: Parallelism, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Send + Sync,
{
    match par {
        Parallelism::Sequential => items.iter().flat_map(|t| f(t)).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            items.par_iter().flat_map_iter(|t| f(t)).collect()
        }
    }
}

fn par_map<T, U, F>(par: Parallelism, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    match par {
        Parallelism::Sequential => items.iter().map(|t| f(t)).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            items.par_iter().map(|t| f(t)).collect()
        }
    }
}

fn check_rank_one(curve: &TropicalCurve) -> Result<()> {
    if curve.monoid().ambient_rank() != 1 {
        return Err(Error::RankNotOne);
    }
    if !curve.is_compact() {
        return Err(Error::NotCompact);
    }
    if !curve.is_connected() {
        return Err(Error::Disconnected);
    }
    for e in curve.edges() {
        if !e.length.coords[0].is_positive() {
            return Err(Error::NotPositive);
        }
    }
    Ok(())
}

/// Enumerate all quasistable cells for the given search box. Deterministic
/// output order (by model, then divisor, then slopes) regardless of the
/// execution strategy.
pub fn quasistable_cells(
    curve: &TropicalCurve,
    params: &CellParams,
    par: Parallelism,
) -> Result<Vec<Cell>> {
    check_rank_one(curve)?;
    let nv = curve.num_vertices();
    if params.divisor_box.len() != nv {
        return Err(Error::DimensionMismatch {
            expected: nv,
            got: params.divisor_box.len(),
        });
    }
    if params.slope_bound < 0 {
        return Err(Error::NotPositive);
    }
    let basis = curve.cycle_basis()?;
    let ne = curve.num_edges();
    let models: Vec<u32> = (0..(1u32 << ne)).collect();
    let mut cells = par_flat_map(par, models, |&model| {
        cells_for_model(curve, &basis.cycles, params, model)
    });
    cells.sort_by(|a, b| {
        (&a.subdivided, &a.divisor, &a.slopes).cmp(&(&b.subdivided, &b.divisor, &b.slopes))
    });
    Ok(cells)
}

fn cells_for_model(
    curve: &TropicalCurve,
    cycles: &[Vec<i64>],
    params: &CellParams,
    model: u32,
) -> Vec<Cell> {
    let nv = curve.num_vertices();
    let ne = curve.num_edges();
    let subdivided: Vec<usize> = (0..ne).filter(|e| model >> e & 1 == 1).collect();
    let target_sum = -(subdivided.len() as i64);
    let mut out = Vec::new();

    // Divisors in the box with the forced total. Valid slope vectors for a
    // fixed (model, divisor) form a coset of the integer cycle lattice, so
    // they all describe lattice translates of one cell; keep only the
    // lexicographically smallest representative in the search box.
    let mut divisor = vec![0i64; nv];
    enumerate_divisors(&params.divisor_box, 0, target_sum, &mut divisor, &mut |d| {
        let mut slopes = vec![0i64; ne];
        if first_slopes(curve, params.slope_bound, model, d, 0, &mut slopes) {
            out.push(Cell {
                subdivided: subdivided.clone(),
                divisor: d.to_vec(),
                slopes: slopes.clone(),
                points: corner_images(curve, cycles, &subdivided, &slopes),
            });
        }
    });
    out
}

fn enumerate_divisors(
    boxes: &[(i64, i64)],
    v: usize,
    remaining: i64,
    cur: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if v == boxes.len() {
        if remaining == 0 {
            emit(cur);
        }
        return;
    }
    // Prune with the achievable range of the suffix.
    let lo_rest: i64 = boxes[v + 1..].iter().map(|b| b.0).sum();
    let hi_rest: i64 = boxes[v + 1..].iter().map(|b| b.1).sum();
    for d in boxes[v].0..=boxes[v].1 {
        let rest = remaining - d;
        if rest < lo_rest || rest > hi_rest {
            continue;
        }
        cur[v] = d;
        enumerate_divisors(boxes, v + 1, rest, cur, emit);
    }
}

/// Fill `cur` with the lexicographically smallest slope vector in the box
/// satisfying the trivialization condition; false when none exists.
fn first_slopes(
    curve: &TropicalCurve,
    bound: i64,
    model: u32,
    divisor: &[i64],
    e: usize,
    cur: &mut Vec<i64>,
) -> bool {
    if e == curve.num_edges() {
        return slope_condition(curve, model, divisor, cur);
    }
    for s in -bound..=bound {
        cur[e] = s;
        if first_slopes(curve, bound, model, divisor, e + 1, cur) {
            return true;
        }
    }
    false
}

/// Trivialization condition: at every original vertex the outgoing slopes sum
/// to the divisor value. Head segments of subdivided edges carry slope s + 1.
fn slope_condition(curve: &TropicalCurve, model: u32, divisor: &[i64], slopes: &[i64]) -> bool {
    let mut out = vec![0i64; curve.num_vertices()];
    for (j, edge) in curve.edges().iter().enumerate() {
        let head_slope = slopes[j] + i64::from(model >> j & 1);
        out[edge.tail.unwrap()] += slopes[j];
        out[edge.head.unwrap()] -= head_slope;
    }
    out == divisor
}

/// Images in R^g of the corners of the position box prod [0, l(e)] over the
/// subdivided edges: moving the subdivision point of e to position t splits
/// l(e) into t at slope s and l(e) - t at slope s + 1.
fn corner_images(
    curve: &TropicalCurve,
    cycles: &[Vec<i64>],
    subdivided: &[usize],
    slopes: &[i64],
) -> Vec<Vec<Q>> {
    let g = cycles.len();
    let mut points = Vec::with_capacity(1 << subdivided.len());
    for corner in 0..(1u32 << subdivided.len()) {
        let mut p = vec![Q::zero(); g];
        for (j, pj) in p.iter_mut().enumerate() {
            for (e, edge) in curve.edges().iter().enumerate() {
                let c = cycles[j][e];
                if c == 0 {
                    continue;
                }
                let mut slope = slopes[e];
                if let Some(i) = subdivided.iter().position(|&x| x == e) {
                    // Corner bit 0: point at the tail (t = 0), the whole edge
                    // runs at slope s + 1; bit 1: point at the head, slope s.
                    if corner >> i & 1 == 0 {
                        slope += 1;
                    }
                }
                *pj += &edge.length.coords[0] * Q::from(num::BigInt::from(c * slope));
            }
        }
        points.push(p);
    }
    points.sort();
    points.dedup();
    points
}

/// The fundamental domain of the pairing lattice for genus 2: the
/// parallelogram spanned by the columns of the intersection matrix.
pub fn fundamental_domain(curve: &TropicalCurve) -> Result<Vec<Pt>> {
    check_rank_one(curve)?;
    let basis = curve.cycle_basis()?;
    if basis.cycles.len() != 2 {
        return Err(Error::GenusUnsupported);
    }
    let a = curve.intersection_matrix(&basis);
    let c1 = [a[0][0].coords[0].clone(), a[0][1].coords[0].clone()];
    let c2 = [a[1][0].coords[0].clone(), a[1][1].coords[0].clone()];
    // Positive definiteness makes [0, c1, c1+c2, c2] counterclockwise.
    Ok(vec![
        [Q::zero(), Q::zero()],
        c1.clone(),
        [&c1[0] + &c2[0], &c1[1] + &c2[1]],
        c2,
    ])
}

#[derive(Clone, Debug)]
pub struct TilingReport {
    pub genus: usize,
    /// Lattice covolume: |det A| for genus 2, the total length for genus 1.
    pub expected: Q,
    /// Total measure of cell translates clipped to the fundamental domain.
    pub covered: Q,
    /// Pairs of full-dimensional cells with overlapping interiors (up to
    /// lattice translation; a cell overlapping its own translate lists (i, i)).
    pub overlaps: Vec<(usize, usize)>,
    /// Sample points of the domain not covered by any cell translate.
    pub uncovered: Vec<Vec<Q>>,
    pub samples: usize,
}

impl TilingReport {
    pub fn tiles(&self) -> bool {
        self.covered == self.expected && self.overlaps.is_empty() && self.uncovered.is_empty()
    }
}

const TRANSLATE_RANGE: i64 = 3;

/// Check that the full-dimensional cells tile the fundamental domain: exact
/// clipped measure against the lattice covolume, exact pairwise interior
/// disjointness modulo lattice translation, and sampled coverage.
pub fn verify_tiling(
    curve: &TropicalCurve,
    cells: &[Cell],
    samples_per_axis: usize,
    par: Parallelism,
) -> Result<TilingReport> {
    check_rank_one(curve)?;
    let basis = curve.cycle_basis()?;
    match basis.cycles.len() {
        1 => verify_tiling_g1(curve, &basis.cycles, cells, samples_per_axis, par),
        2 => verify_tiling_g2(curve, cells, samples_per_axis, par),
        _ => Err(Error::GenusUnsupported),
    }
}

fn verify_tiling_g2(
    curve: &TropicalCurve,
    cells: &[Cell],
    samples_per_axis: usize,
    par: Parallelism,
) -> Result<TilingReport> {
    let domain = fundamental_domain(curve)?;
    let c1 = domain[1].clone();
    let c2 = domain[3].clone();
    let expected = geom::polygon_area(&domain);
    let domain_box = geom::bounding_box(&domain).unwrap();

    // Full-dimensional cells and all their nearby lattice translates.
    let mut hulls: Vec<(usize, Vec<Pt>)> = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let h = cell.hull();
        if h.len() >= 3 {
            hulls.push((i, h));
        }
    }
    let mut translates: Vec<(usize, Vec<Pt>, bool)> = Vec::new(); // (cell, ring, is_origin)
    for (i, h) in &hulls {
        for k1 in -TRANSLATE_RANGE..=TRANSLATE_RANGE {
            for k2 in -TRANSLATE_RANGE..=TRANSLATE_RANGE {
                let sh: Vec<Pt> = h
                    .iter()
                    .map(|p| {
                        [
                            &p[0] + &(&c1[0] * Q::from(num::BigInt::from(k1)))
                                + (&c2[0] * Q::from(num::BigInt::from(k2))),
                            &p[1] + &(&c1[1] * Q::from(num::BigInt::from(k1)))
                                + (&c2[1] * Q::from(num::BigInt::from(k2))),
                        ]
                    })
                    .collect();
                translates.push((*i, sh, k1 == 0 && k2 == 0));
            }
        }
    }

    // Exact covered measure inside the domain.
    let areas = par_map(par, translates.clone(), |(_, ring, _)| {
        if let Some(bb) = geom::bounding_box(ring) {
            if geom::boxes_overlap(&bb, &domain_box) {
                return geom::polygon_area(&geom::clip_convex(ring, &domain));
            }
        }
        Q::zero()
    });
    let covered: Q = areas.into_iter().sum();

    // Interior disjointness: each origin copy against every translate of a
    // cell with index >= its own (k != 0 when comparing a cell with itself).
    let mut pair_jobs: Vec<(usize, usize)> = Vec::new(); // (hull idx, translate idx)
    for (hi, (i, _)) in hulls.iter().enumerate() {
        for (ti, (j, _, origin)) in translates.iter().enumerate() {
            if j < i || (*j == *i && *origin) {
                continue;
            }
            pair_jobs.push((hi, ti));
        }
    }
    let hits = par_map(par, pair_jobs, |&(hi, ti)| {
        let (i, a) = &hulls[hi];
        let (j, b, _) = &translates[ti];
        let inter = geom::clip_convex(a, b);
        if geom::polygon_area(&inter).is_positive() {
            Some((*i, *j))
        } else {
            None
        }
    });
    let mut overlaps: Vec<(usize, usize)> = hits.into_iter().flatten().collect();
    overlaps.sort();
    overlaps.dedup();

    // Sampled coverage of the open domain.
    let n = samples_per_axis;
    let sample_ids: Vec<usize> = (0..n * n).collect();
    let covered_flags = par_map(par, sample_ids, |&id| {
        let (i, j) = (id / n, id % n);
        let x = crate::rat::qr((2 * i as i64 + 1) as i64, 2 * n as i64);
        let y = crate::rat::qr((2 * j as i64 + 1) as i64, 2 * n as i64);
        let p: Pt = [
            &(&c1[0] * &x) + &(&c2[0] * &y),
            &(&c1[1] * &x) + &(&c2[1] * &y),
        ];
        translates
            .iter()
            .any(|(_, ring, _)| geom::point_in_convex(ring, &p))
            .then_some(())
            .ok_or(p)
    });
    let uncovered: Vec<Vec<Q>> = covered_flags
        .into_iter()
        .filter_map(|r| r.err().map(|p| p.to_vec()))
        .collect();

    Ok(TilingReport {
        genus: 2,
        expected,
        covered,
        overlaps,
        uncovered,
        samples: n * n,
    })
}

fn verify_tiling_g1(
    curve: &TropicalCurve,
    cycles: &[Vec<i64>],
    cells: &[Cell],
    samples: usize,
    par: Parallelism,
) -> Result<TilingReport> {
    let delta = curve.cycle_length(&cycles[0]).coords[0].clone();
    let mut intervals: Vec<(usize, Q, Q)> = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let (lo, hi) = cell.interval();
        if lo < hi {
            intervals.push((i, lo, hi));
        }
    }
    let mut translates: Vec<(usize, Q, Q, bool)> = Vec::new();
    for (i, lo, hi) in &intervals {
        for k in -TRANSLATE_RANGE..=TRANSLATE_RANGE {
            let shift = &delta * Q::from(num::BigInt::from(k));
            translates.push((*i, lo + &shift, hi + &shift, k == 0));
        }
    }

    let mut covered = Q::zero();
    for (_, lo, hi, _) in &translates {
        let a = lo.clone().max(Q::zero());
        let b = hi.clone().min(delta.clone());
        if a < b {
            covered += b - a;
        }
    }

    let mut overlaps: Vec<(usize, usize)> = Vec::new();
    for (i, lo1, hi1) in intervals.iter() {
        for (j, lo2, hi2, origin) in &translates {
            if j < i || (*j == *i && *origin) {
                continue;
            }
            if lo1.clone().max(lo2.clone()) < hi1.clone().min(hi2.clone()) {
                overlaps.push((*i, *j));
            }
        }
    }
    overlaps.sort();
    overlaps.dedup();

    let ids: Vec<usize> = (0..samples).collect();
    let results = par_map(par, ids, |&i| {
        let x = &delta * crate::rat::qr(2 * i as i64 + 1, 2 * samples as i64);
        translates
            .iter()
            .any(|(_, lo, hi, _)| lo <= &x && &x <= hi)
            .then_some(())
            .ok_or(x)
    });
    let uncovered: Vec<Vec<Q>> = results
        .into_iter()
        .filter_map(|r| r.err().map(|x| vec![x]))
        .collect();

    Ok(TilingReport {
        genus: 1,
        expected: delta,
        covered,
        overlaps,
        uncovered,
        samples,
    })
}
