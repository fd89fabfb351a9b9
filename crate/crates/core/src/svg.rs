//! Deterministic SVG rendering of a genus-2 cell decomposition: the
//! fundamental-domain parallelogram plus every cell, drawn in sorted order
//! with coordinates produced by exact rational rounding (no floating point,
//! so re-runs are byte-identical).

use crate::cells::{fundamental_domain, Cell};
use crate::curve::TropicalCurve;
use crate::error::Result;
use crate::geom::{self, Pt};
use crate::rat::{round_half_up, Q};
use num::{BigInt, Signed, Zero};
use std::fmt::Write as _;

const MARGIN: i64 = 20;
const TARGET: i64 = 400;

const PALETTE: [&str; 6] = [
    "#7eb0d5", "#fd7f6f", "#b2e061", "#bd7ebe", "#ffb55a", "#8bd3c7",
];

struct Frame {
    minx: Q,
    maxy: Q,
    scale: Q,
}

impl Frame {
    fn x(&self, v: &Q) -> String {
        fmt2(&(&(v - &self.minx) * &self.scale + Q::from(BigInt::from(MARGIN))))
    }

    fn y(&self, v: &Q) -> String {
        fmt2(&(&(&self.maxy - v) * &self.scale + Q::from(BigInt::from(MARGIN))))
    }
}

/// Two-decimal fixed-point formatting with exact rounding.
fn fmt2(q: &Q) -> String {
    let scaled = round_half_up(&(q * Q::from(BigInt::from(100))));
    let neg = scaled.is_negative();
    let abs = scaled.magnitude().to_string();
    let digits = if abs.len() < 3 {
        format!("{:0>3}", abs)
    } else {
        abs
    };
    let (int, frac) = digits.split_at(digits.len() - 2);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}

fn ring_attr(frame: &Frame, ring: &[Pt]) -> String {
    ring.iter()
        .map(|p| format!("{},{}", frame.x(&p[0]), frame.y(&p[1])))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Render the fundamental domain and the given cells. Only defined for
/// genus 2 (the domain is a parallelogram in the plane).
pub fn render_cells(curve: &TropicalCurve, cells: &[Cell]) -> Result<String> {
    let domain = fundamental_domain(curve)?;
    let mut all: Vec<Pt> = domain.clone();
    for c in cells {
        for p in &c.points {
            all.push([p[0].clone(), p[1].clone()]);
        }
    }
    let (lo, hi) = geom::bounding_box(&all).expect("domain is nonempty");
    let w = &hi[0] - &lo[0];
    let h = &hi[1] - &lo[1];
    let span = if w >= h { w.clone() } else { h.clone() };
    let scale = if span.is_zero() {
        Q::from(BigInt::from(1))
    } else {
        Q::from(BigInt::from(TARGET)) / span
    };
    let frame = Frame { minx: lo[0].clone(), maxy: hi[1].clone(), scale };
    let width = fmt2(&(&(&w * &frame.scale) + Q::from(BigInt::from(2 * MARGIN))));
    let height = fmt2(&(&(&h * &frame.scale) + Q::from(BigInt::from(2 * MARGIN))));

    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = width,
        h = height
    )
    .unwrap();
    writeln!(s, "  <!-- fundamental domain and quasistable cells -->").unwrap();

    // Filled 2-cells first, then 1-cells, then 0-cells, so that lower
    // dimensional strata stay visible; ties keep the input (sorted) order.
    let mut order: Vec<(usize, usize)> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let hull = c.hull();
            let dim = if hull.len() >= 3 {
                2
            } else if c.points.len() >= 2 {
                1
            } else {
                0
            };
            (i, dim)
        })
        .collect();
    order.sort_by_key(|&(i, dim)| (std::cmp::Reverse(dim), i));

    for &(i, dim) in &order {
        let cell = &cells[i];
        match dim {
            2 => {
                let fill = PALETTE[i % PALETTE.len()];
                writeln!(
                    s,
                    "  <polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.55\" stroke=\"#444444\" stroke-width=\"1\"/>",
                    ring_attr(&frame, &cell.hull()),
                    fill
                )
                .unwrap();
            }
            1 => {
                let a = &cell.points[0];
                let b = cell.points.last().unwrap();
                writeln!(
                    s,
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#222222\" stroke-width=\"2\"/>",
                    frame.x(&a[0]),
                    frame.y(&a[1]),
                    frame.x(&b[0]),
                    frame.y(&b[1])
                )
                .unwrap();
            }
            _ => {
                let p = &cell.points[0];
                writeln!(
                    s,
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#000000\"/>",
                    frame.x(&p[0]),
                    frame.y(&p[1])
                )
                .unwrap();
            }
        }
    }

    writeln!(
        s,
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>",
        ring_attr(&frame, &domain)
    )
    .unwrap();
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}
