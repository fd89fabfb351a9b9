//! Exact rational 2D convex geometry: monotone-chain hulls, Sutherland-Hodgman
//! clipping, shoelace areas and point location. Used by the tiling verifier;
//! everything is exact, no epsilons.

use crate::rat::Q;
use num::{Signed, Zero};

pub type Pt = [Q; 2];

pub fn cross(o: &Pt, a: &Pt, b: &Pt) -> Q {
    let d1x = &a[0] - &o[0];
    let d1y = &a[1] - &o[1];
    let d2x = &b[0] - &o[0];
    let d2y = &b[1] - &o[1];
    &d1x * &d2y - &d1y * &d2x
}

/// Convex hull, counterclockwise, collinear points dropped. Degenerate inputs
/// yield fewer than 3 points (a segment or a point).
pub fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Pt> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // All points collinear: return the extremes.
        return vec![pts.first().unwrap().clone(), pts.last().unwrap().clone()];
    }
    lower
}

/// Signed area (positive for counterclockwise rings).
pub fn polygon_area(pts: &[Pt]) -> Q {
    if pts.len() < 3 {
        return Q::zero();
    }
    let mut s = Q::zero();
    for i in 0..pts.len() {
        let a = &pts[i];
        let b = &pts[(i + 1) % pts.len()];
        s = s + &a[0] * &b[1] - &a[1] * &b[0];
    }
    s / Q::from(num::BigInt::from(2))
}

/// Clip a convex polygon against another convex polygon (counterclockwise).
/// Returns the intersection ring (possibly empty or degenerate).
pub fn clip_convex(subject: &[Pt], clipper: &[Pt]) -> Vec<Pt> {
    if clipper.len() < 3 {
        return Vec::new();
    }
    let mut out = subject.to_vec();
    for i in 0..clipper.len() {
        if out.is_empty() {
            break;
        }
        let a = clipper[i].clone();
        let b = clipper[(i + 1) % clipper.len()].clone();
        let input = std::mem::take(&mut out);
        let side = |p: &Pt| cross(&a, &b, p);
        for j in 0..input.len() {
            let cur = &input[j];
            let prev = &input[(j + input.len() - 1) % input.len()];
            let sc = side(cur);
            let sp = side(prev);
            let inside_cur = !sc.is_negative();
            let inside_prev = !sp.is_negative();
            if inside_cur {
                if !inside_prev {
                    out.push(segment_line_intersection(prev, cur, &sp, &sc));
                }
                out.push(cur.clone());
            } else if inside_prev {
                out.push(segment_line_intersection(prev, cur, &sp, &sc));
            }
        }
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
    }
    out
}

/// Intersection of segment pq with the clip line, given the signed distances
/// sp, sq of its endpoints (with opposite signs).
fn segment_line_intersection(p: &Pt, q: &Pt, sp: &Q, sq: &Q) -> Pt {
    let t = sp / (sp - sq);
    [
        &p[0] + &(&(&q[0] - &p[0]) * &t),
        &p[1] + &(&(&q[1] - &p[1]) * &t),
    ]
}

/// Closed point-in-polygon test for a counterclockwise convex ring.
pub fn point_in_convex(pts: &[Pt], p: &Pt) -> bool {
    if pts.len() < 3 {
        return false;
    }
    (0..pts.len()).all(|i| !cross(&pts[i], &pts[(i + 1) % pts.len()], p).is_negative())
}

pub fn bounding_box(pts: &[Pt]) -> Option<(Pt, Pt)> {
    let first = pts.first()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in pts {
        for d in 0..2 {
            if p[d] < lo[d] {
                lo[d] = p[d].clone();
            }
            if p[d] > hi[d] {
                hi[d] = p[d].clone();
            }
        }
    }
    Some((lo, hi))
}

pub fn boxes_overlap(a: &(Pt, Pt), b: &(Pt, Pt)) -> bool {
    (0..2).all(|d| a.0[d] <= b.1[d] && b.0[d] <= a.1[d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{qi, qr};

    fn p(x: i64, y: i64) -> Pt {
        [qi(x), qi(y)]
    }

    #[test]
    fn hull_of_square_with_interior_point() {
        let h = convex_hull(&[p(0, 0), p(2, 0), p(2, 2), p(0, 2), p(1, 1), p(2, 1)]);
        assert_eq!(h.len(), 4);
        assert_eq!(polygon_area(&h), qi(4));
    }

    #[test]
    fn hull_degenerate() {
        assert_eq!(convex_hull(&[p(1, 1), p(1, 1)]).len(), 1);
        let seg = convex_hull(&[p(0, 0), p(2, 2), p(1, 1)]);
        assert_eq!(seg, vec![p(0, 0), p(2, 2)]);
        assert_eq!(polygon_area(&seg), qi(0));
    }

    #[test]
    fn clip_squares() {
        let a = vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        let b = vec![p(1, 1), p(3, 1), p(3, 3), p(1, 3)];
        let c = clip_convex(&a, &b);
        assert_eq!(polygon_area(&c), qi(1));
        // Disjoint clip is empty.
        let d = vec![p(5, 5), p(6, 5), p(6, 6), p(5, 6)];
        assert_eq!(polygon_area(&clip_convex(&a, &d)), qi(0));
        // Clipping by itself keeps the area.
        assert_eq!(polygon_area(&clip_convex(&a, &a)), qi(4));
    }

    #[test]
    fn clip_with_fractional_crossings() {
        let tri = vec![p(0, 0), p(3, 0), p(0, 3)];
        let half = vec![p(1, -10), p(10, -10), p(10, 10), p(1, 10)];
        let c = clip_convex(&tri, &half);
        assert_eq!(polygon_area(&c), qi(2));
        let _ = qr(1, 2);
    }

    #[test]
    fn point_location() {
        let a = vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert!(point_in_convex(&a, &p(1, 1)));
        assert!(point_in_convex(&a, &p(0, 0))); // boundary closed
        assert!(!point_in_convex(&a, &p(3, 1)));
    }

    #[test]
    fn boxes() {
        let a = bounding_box(&[p(0, 0), p(2, 1)]).unwrap();
        let b = bounding_box(&[p(2, 1), p(3, 3)]).unwrap();
        let c = bounding_box(&[p(5, 5), p(6, 6)]).unwrap();
        assert!(boxes_overlap(&a, &b));
        assert!(!boxes_overlap(&a, &c));
    }
}
