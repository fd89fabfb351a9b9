//! Versioned JSON interchange for monoids, orders, curves, monodromy
//! homomorphisms and Picard classes, plus the CSV cell export. Rationals are
//! written as JSON numbers when they are integers below 2^53 in magnitude and
//! as exact "p/q" strings otherwise, so round-trips are lossless.

use crate::cells::Cell;
use crate::curve::{Edge, TropicalCurve};
use crate::error::{Error, Result};
use crate::monodromy::{MonodromyHom, Trivialization};
use crate::ordmonoid::{SharpMonoid, ValuationOrder};
use crate::picard::TroPicClass;
use crate::rat::{format_rational, LatVec, Q};
use num::bigint::BigInt;
use num::{One, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

pub const FORMAT_VERSION: u32 = 1;

/// An exact rational in interchange form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JNum(pub Q);

const SAFE: i64 = 1 << 53;

impl Serialize for JNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let q = &self.0;
        if q.denom().is_one() {
            if let Some(n) = q.numer().to_i64() {
                if n.abs() < SAFE {
                    return s.serialize_i64(n);
                }
            }
        }
        s.serialize_str(&format_rational(q))
    }
}

struct JNumVisitor;

impl Visitor<'_> for JNumVisitor {
    type Value = JNum;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        write!(f, "an integer or a \"p/q\" rational string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JNum, E> {
        Ok(JNum(Q::from(BigInt::from(v))))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JNum, E> {
        Ok(JNum(Q::from(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JNum, E> {
        Err(E::custom(format!(
            "floating point value {} is not accepted; use an exact \"p/q\" string",
            v
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JNum, E> {
        crate::rat::parse_rational(v)
            .map(JNum)
            .ok_or_else(|| E::custom(format!("cannot parse {:?} as a rational", v)))
    }
}

impl<'de> Deserialize<'de> for JNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<JNum, D::Error> {
        d.deserialize_any(JNumVisitor)
    }
}

fn vec_to_jnum(v: &LatVec) -> Vec<JNum> {
    v.coords.iter().map(|q| JNum(q.clone())).collect()
}

fn vec_from_jnum(v: &[JNum]) -> LatVec {
    LatVec::new(v.iter().map(|j| j.0.clone()).collect())
}

fn row_to_jnum(v: &[Q]) -> Vec<JNum> {
    v.iter().map(|q| JNum(q.clone())).collect()
}

fn check_format(format: u32) -> Result<()> {
    if format != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported format version {} (expected {})",
            format, FORMAT_VERSION
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Monoids and orders

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MonoidFile {
    pub format: u32,
    pub ambient_rank: usize,
    pub generators: Vec<Vec<JNum>>,
}

pub fn monoid_to_file(m: &SharpMonoid) -> MonoidFile {
    MonoidFile {
        format: FORMAT_VERSION,
        ambient_rank: m.ambient_rank(),
        generators: m.generators().iter().map(vec_to_jnum).collect(),
    }
}

pub fn monoid_from_file(f: &MonoidFile) -> Result<SharpMonoid> {
    check_format(f.format)?;
    SharpMonoid::new(
        f.ambient_rank,
        f.generators.iter().map(|g| vec_from_jnum(g)).collect(),
    )
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct OrderFile {
    pub format: u32,
    pub ambient_rank: usize,
    pub generators: Vec<Vec<JNum>>,
    pub weights: Vec<Vec<JNum>>,
}

pub fn order_to_file(v: &ValuationOrder) -> OrderFile {
    OrderFile {
        format: FORMAT_VERSION,
        ambient_rank: v.ambient_rank(),
        generators: v.base().generators().iter().map(vec_to_jnum).collect(),
        weights: v.weights().iter().map(|r| row_to_jnum(r)).collect(),
    }
}

pub fn order_from_file(f: &OrderFile) -> Result<ValuationOrder> {
    check_format(f.format)?;
    let base = SharpMonoid::new(
        f.ambient_rank,
        f.generators.iter().map(|g| vec_from_jnum(g)).collect(),
    )?;
    ValuationOrder::new(
        base,
        f.weights
            .iter()
            .map(|r| r.iter().map(|j| j.0.clone()).collect())
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Curves

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EdgeFile {
    pub from: Option<String>,
    pub to: Option<String>,
    pub length: Vec<JNum>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CurveFile {
    pub format: u32,
    pub monoid: MonoidFile,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
    /// Optional pinned integer cycle basis (one row per cycle, one entry per
    /// edge); the deterministic spanning-tree basis is used when absent.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<Vec<Vec<i64>>>,
}

pub fn curve_to_file(c: &TropicalCurve) -> CurveFile {
    CurveFile {
        format: FORMAT_VERSION,
        monoid: monoid_to_file(c.monoid()),
        vertices: c.vertex_names().to_vec(),
        edges: c
            .edges()
            .iter()
            .map(|e| EdgeFile {
                from: e.tail.map(|t| c.vertex_names()[t].clone()),
                to: e.head.map(|h| c.vertex_names()[h].clone()),
                length: vec_to_jnum(&e.length),
            })
            .collect(),
        basis: c.pinned_basis().map(|b| b.to_vec()),
    }
}

pub fn curve_from_file(f: &CurveFile) -> Result<TropicalCurve> {
    check_format(f.format)?;
    let monoid = monoid_from_file(&f.monoid)?;
    let index = |name: &Option<String>| -> Result<Option<usize>> {
        match name {
            None => Ok(None),
            Some(n) => f
                .vertices
                .iter()
                .position(|v| v == n)
                .map(Some)
                .ok_or_else(|| Error::Parse(format!("unknown vertex name {:?} in edges", n))),
        }
    };
    let mut edges = Vec::new();
    for e in &f.edges {
        edges.push(Edge {
            tail: index(&e.from)?,
            head: index(&e.to)?,
            length: vec_from_jnum(&e.length),
        });
    }
    TropicalCurve::new(monoid, f.vertices.clone(), edges, f.basis.clone())
}

// ---------------------------------------------------------------------------
// Monodromy homomorphisms and classes

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HomFile {
    pub format: u32,
    /// One lattice vector per basis cycle, in basis order.
    pub values: Vec<Vec<JNum>>,
}

pub fn hom_to_file(mu: &MonodromyHom) -> HomFile {
    HomFile {
        format: FORMAT_VERSION,
        values: mu.values.iter().map(vec_to_jnum).collect(),
    }
}

pub fn hom_from_file(f: &HomFile) -> Result<MonodromyHom> {
    check_format(f.format)?;
    Ok(MonodromyHom {
        values: f.values.iter().map(|v| vec_from_jnum(v)).collect(),
    })
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ClassFile {
    pub format: u32,
    /// Vertex name -> multiplicity; omitted vertices are zero.
    pub divisor: BTreeMap<String, i64>,
    pub values: Vec<Vec<JNum>>,
}

pub fn class_to_file(curve: &TropicalCurve, class: &TroPicClass) -> ClassFile {
    let mut divisor = BTreeMap::new();
    for (v, &d) in class.divisor.iter().enumerate() {
        if d != 0 {
            divisor.insert(curve.vertex_names()[v].clone(), d);
        }
    }
    ClassFile {
        format: FORMAT_VERSION,
        divisor,
        values: class.mu.values.iter().map(vec_to_jnum).collect(),
    }
}

pub fn class_from_file(curve: &TropicalCurve, f: &ClassFile) -> Result<TroPicClass> {
    check_format(f.format)?;
    let mut divisor = vec![0i64; curve.num_vertices()];
    for (name, &d) in &f.divisor {
        let v = curve
            .vertex_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown vertex name {:?} in divisor", name)))?;
        divisor[v] = d;
    }
    let mu = MonodromyHom {
        values: f.values.iter().map(|v| vec_from_jnum(v)).collect(),
    };
    TroPicClass::new(curve, divisor, mu)
}

// ---------------------------------------------------------------------------
// Trivialization and normalization artifacts

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TrivializationFile {
    pub format: u32,
    pub curve: CurveFile,
    pub cochain: Vec<JNum>,
    pub edge_origin: Vec<usize>,
    pub mapped_basis: Vec<Vec<i64>>,
}

pub fn trivialization_to_file(t: &Trivialization) -> TrivializationFile {
    TrivializationFile {
        format: FORMAT_VERSION,
        curve: curve_to_file(&t.curve),
        cochain: t
            .cochain
            .iter()
            .map(|c| JNum(Q::from(c.clone())))
            .collect(),
        edge_origin: t.edge_origin.clone(),
        mapped_basis: t.mapped_basis.clone(),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct NormalizationFile {
    pub format: u32,
    /// Normalized representative, one lattice vector per basis cycle.
    pub zeta: Vec<Vec<JNum>>,
    /// Lattice vector subtracted through the pairing.
    pub gamma: Vec<JNum>,
}

pub fn normalization_to_file(zeta: &MonodromyHom, gamma: &[BigInt]) -> NormalizationFile {
    NormalizationFile {
        format: FORMAT_VERSION,
        zeta: zeta.values.iter().map(vec_to_jnum).collect(),
        gamma: gamma.iter().map(|g| JNum(Q::from(g.clone()))).collect(),
    }
}

// ---------------------------------------------------------------------------
// Serialization helpers and CSV

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

pub fn from_json_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// One row per cell: subdivided edges, divisor, slopes, polytope vertices.
pub fn cells_to_csv(cells: &[Cell]) -> String {
    let mut out = String::from("model,divisor,slopes,vertices\n");
    for cell in cells {
        let model = if cell.subdivided.is_empty() {
            "-".to_string()
        } else {
            cell.subdivided
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("+")
        };
        let divisor = cell
            .divisor
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let slopes = cell
            .slopes
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let vertices = cell
            .points
            .iter()
            .map(|p| {
                format!(
                    "({})",
                    p.iter().map(format_rational).collect::<Vec<_>>().join(" ")
                )
            })
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("{},{},{},{}\n", model, divisor, slopes, vertices));
    }
    out
}
