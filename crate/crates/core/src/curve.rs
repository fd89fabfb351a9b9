//! Tropical curves: graphs with monoid-valued edge lengths, presented either
//! as (vertices, edges) or as the equivalent flag structure (G, r, i, l) with
//! involution i, partial retraction r and length l. Homology (spanning tree,
//! cycle basis), the intersection pairing, subdivision and edge contraction.

use crate::error::{Error, Result};
use crate::linalg;
use crate::ordmonoid::{SharpMonoid, ValuationOrder};
use crate::rat::{LatVec, Q};
use num::{One, Signed};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Canonical orientation tail -> head; None marks an open end.
    pub tail: Option<usize>,
    pub head: Option<usize>,
    pub length: LatVec,
}

/// Raw flag data, the paper-facing presentation. Vertex flags are the ones
/// with zero length; the retraction is partial (None on flags of open ends).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagData {
    pub invol: Vec<usize>,
    pub retract: Vec<Option<usize>>,
    pub length: Vec<LatVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    monoid: SharpMonoid,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    /// Optional explicit integer cycle basis (validated against the
    /// fundamental one); used to pin presentation conventions in golden data.
    pinned_basis: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    /// Per-edge marker of the deterministic spanning forest.
    pub tree: Vec<bool>,
    /// g integer vectors indexed by edges, with zero vertex boundary.
    pub cycles: Vec<Vec<i64>>,
}

/// Context for strict interiority checks when subdividing.
#[derive(Clone, Copy)]
pub enum OrderCtx<'a> {
    /// The attached monoid's partial order.
    Monoid,
    /// A total order refining it.
    Valuation(&'a ValuationOrder),
}

pub struct Subdivision {
    pub curve: TropicalCurve,
    /// The subdivided edge keeps its index and becomes the tail segment.
    pub edge: usize,
    /// Appended index of the head segment.
    pub new_edge: usize,
    pub new_vertex: usize,
}

impl Subdivision {
    /// Carry an old cycle to the subdivided curve: both segments inherit the
    /// coefficient of the split edge.
    pub fn map_cycle(&self, old: &[i64]) -> Vec<i64> {
        let mut v = old.to_vec();
        v.push(old[self.edge]);
        v
    }
}

pub struct Contraction {
    pub curve: TropicalCurve,
    pub vertex_map: Vec<usize>,
    /// None for contracted edges.
    pub edge_map: Vec<Option<usize>>,
}

impl Contraction {
    /// Push a cycle forward: restrict coefficients to surviving edges.
    pub fn push_cycle(&self, old: &[i64]) -> Vec<i64> {
        let mut v = vec![0i64; self.curve.num_edges()];
        for (e, coeff) in old.iter().enumerate() {
            if let Some(ne) = self.edge_map[e] {
                v[ne] += coeff;
            }
        }
        v
    }
}

impl TropicalCurve {
    pub fn new(
        monoid: SharpMonoid,
        vertices: Vec<String>,
        edges: Vec<Edge>,
        pinned_basis: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let nv = vertices.len();
        let n = monoid.ambient_rank();
        for e in &edges {
            for v in [e.tail, e.head].into_iter().flatten() {
                if v >= nv {
                    return Err(Error::InvalidCurve(format!("edge endpoint {} out of range", v)));
                }
            }
            if e.length.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: e.length.dim() });
            }
            if e.length.is_zero() {
                return Err(Error::InvalidCurve("edge of length zero".into()));
            }
        }
        let curve = TropicalCurve { monoid, vertices, edges, pinned_basis };
        if curve.pinned_basis.is_some() {
            // Eagerly check the pinned basis is a genuine integral basis.
            curve.cycle_basis()?;
        }
        Ok(curve)
    }

    pub fn monoid(&self) -> &SharpMonoid {
        &self.monoid
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn pinned_basis(&self) -> Option<&[Vec<i64>]> {
        self.pinned_basis.as_deref()
    }

    pub fn is_compact(&self) -> bool {
        self.edges.iter().all(|e| e.tail.is_some() && e.head.is_some())
    }

    /// The flag presentation: vertex x gets flag x; edge j gets flags
    /// nv + 2j (tail side) and nv + 2j + 1 (head side).
    pub fn flag_data(&self) -> FlagData {
        let nv = self.num_vertices();
        let n = self.monoid.ambient_rank();
        let mut invol: Vec<usize> = (0..nv).collect();
        let mut retract: Vec<Option<usize>> = (0..nv).map(Some).collect();
        let mut length: Vec<LatVec> = vec![LatVec::zeros(n); nv];
        for (j, e) in self.edges.iter().enumerate() {
            let a = nv + 2 * j;
            let b = a + 1;
            invol.push(b);
            invol.push(a);
            retract.push(e.tail);
            retract.push(e.head);
            length.push(e.length.clone());
            length.push(e.length.clone());
        }
        FlagData { invol, retract, length }
    }

    /// Rebuild a curve from flag data; fails if `validate_flags` reports
    /// violations. Edges are the involution orbits of nonzero-length flags,
    /// oriented lower flag index first; vertex names are generated.
    pub fn from_flag_data(monoid: SharpMonoid, fd: &FlagData) -> Result<Self> {
        let report = validate_flags(fd, &monoid);
        if !report.is_empty() {
            return Err(Error::InvalidCurve(report.join("; ")));
        }
        let vertex_flags: Vec<usize> =
            (0..fd.invol.len()).filter(|&x| fd.length[x].is_zero()).collect();
        let vindex = |flag: usize| vertex_flags.iter().position(|&f| f == flag);
        let vertices: Vec<String> = (0..vertex_flags.len()).map(|i| format!("v{}", i)).collect();
        let mut edges = Vec::new();
        for x in 0..fd.invol.len() {
            let y = fd.invol[x];
            if fd.length[x].is_zero() || x > y {
                continue;
            }
            edges.push(Edge {
                tail: fd.retract[x].and_then(vindex),
                head: fd.retract[y].and_then(vindex),
                length: fd.length[x].clone(),
            });
        }
        TropicalCurve::new(monoid, vertices, edges, None)
    }

    /// Diagnostic report of all invariant violations (empty = valid).
    pub fn validate(&self) -> Vec<String> {
        let mut report = validate_flags(&self.flag_data(), &self.monoid);
        if let Some(basis) = &self.pinned_basis {
            if let Err(e) = self.check_pinned(basis) {
                report.push(format!("pinned basis: {}", e));
            }
        }
        report
    }

    /// Connected component of each vertex (component ids are ordered by their
    /// smallest vertex).
    fn components(&self) -> Vec<usize> {
        let nv = self.num_vertices();
        let mut comp = vec![usize::MAX; nv];
        let mut next = 0;
        for start in 0..nv {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    if let (Some(t), Some(h)) = (e.tail, e.head) {
                        for (a, b) in [(t, h), (h, t)] {
                            if a == v && comp[b] == usize::MAX {
                                comp[b] = next;
                                stack.push(b);
                            }
                        }
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn num_components(&self) -> usize {
        let comp = self.components();
        comp.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    pub fn betti(&self) -> Result<(usize, usize)> {
        if !self.is_compact() {
            return Err(Error::NotCompact);
        }
        let b0 = self.num_components();
        let b1 = self.num_edges() + b0 - self.num_vertices();
        Ok((b0, b1))
    }

    /// Deterministic spanning forest: BFS growth from the lowest-index vertex
    /// of each component, edges scanned in index order.
    fn spanning_forest(&self) -> Vec<bool> {
        let nv = self.num_vertices();
        let mut seen = vec![false; nv];
        let mut tree = vec![false; self.num_edges()];
        for start in 0..nv {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut frontier = vec![start];
            while !frontier.is_empty() {
                let mut next_frontier = Vec::new();
                for &v in &frontier {
                    for (j, e) in self.edges.iter().enumerate() {
                        if let (Some(t), Some(h)) = (e.tail, e.head) {
                            for (a, b) in [(t, h), (h, t)] {
                                if a == v && !seen[b] {
                                    seen[b] = true;
                                    tree[j] = true;
                                    next_frontier.push(b);
                                }
                            }
                        }
                    }
                }
                frontier = next_frontier;
            }
        }
        tree
    }

    /// Fundamental cycle of a non-tree edge within a given forest: +1 on the
    /// edge, closed up through the tree from head back to tail.
    pub(crate) fn fundamental_cycle(&self, tree: &[bool], e: usize) -> Vec<i64> {
        let nv = self.num_vertices();
        // Parent pointers toward each component root along the forest.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv]; // (vertex, via edge)
        let mut depth = vec![0usize; nv];
        let mut seen = vec![false; nv];
        for start in 0..nv {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for (j, ed) in self.edges.iter().enumerate() {
                    if !tree[j] {
                        continue;
                    }
                    let (t, h) = (ed.tail.unwrap(), ed.head.unwrap());
                    for (a, b) in [(t, h), (h, t)] {
                        if a == v && !seen[b] {
                            seen[b] = true;
                            parent[b] = Some((v, j));
                            depth[b] = depth[v] + 1;
                            stack.push(b);
                        }
                    }
                }
            }
        }
        let mut gamma = vec![0i64; self.num_edges()];
        gamma[e] = 1;
        // Walk head -> tail: traversing tree edge j from child to parent goes
        // against its orientation iff the child is the tail.
        let (mut u, mut w) = (self.edges[e].head.unwrap(), self.edges[e].tail.unwrap());
        while u != w {
            if depth[u] >= depth[w] {
                let (p, j) = parent[u].expect("forest path");
                gamma[j] += if self.edges[j].head == Some(u) { -1 } else { 1 };
                u = p;
            } else {
                // Walk the tail end upward too: that part of the path is
                // traversed from parent to child in the cycle direction.
                let (p, j) = parent[w].expect("forest path");
                gamma[j] += if self.edges[j].head == Some(w) { 1 } else { -1 };
                w = p;
            }
        }
        gamma
    }

    /// Vertex boundary of an edge chain: head gets +, tail gets -.
    pub fn chain_boundary(&self, gamma: &[i64]) -> Vec<i64> {
        let mut b = vec![0i64; self.num_vertices()];
        for (j, e) in self.edges.iter().enumerate() {
            if gamma[j] != 0 {
                b[e.head.expect("compact curve")] += gamma[j];
                b[e.tail.expect("compact curve")] -= gamma[j];
            }
        }
        b
    }

    fn check_pinned(&self, basis: &[Vec<i64>]) -> Result<()> {
        let tree = self.spanning_forest();
        let fundamental: Vec<Vec<i64>> = (0..self.num_edges())
            .filter(|&j| !tree[j])
            .map(|j| self.fundamental_cycle(&tree, j))
            .collect();
        if basis.len() != fundamental.len() {
            return Err(Error::InvalidCurve(format!(
                "pinned basis has {} cycles, genus is {}",
                basis.len(),
                fundamental.len()
            )));
        }
        for c in basis {
            if c.len() != self.num_edges() {
                return Err(Error::InvalidCurve("pinned cycle has wrong length".into()));
            }
            if self.chain_boundary(c).iter().any(|&x| x != 0) {
                return Err(Error::InvalidCurve("pinned cycle has nonzero boundary".into()));
            }
        }
        if fundamental.is_empty() {
            return Ok(());
        }
        // Change of basis must be integral and unimodular.
        let cols: Vec<Vec<Q>> = (0..self.num_edges())
            .map(|e| fundamental.iter().map(|f| Q::from(num::BigInt::from(f[e]))).collect())
            .collect();
        let mut x_rows = Vec::new();
        for c in basis {
            let rhs: Vec<Q> = c.iter().map(|&v| Q::from(num::BigInt::from(v))).collect();
            let x = linalg::solve(&cols, &rhs)
                .ok_or_else(|| Error::InvalidCurve("pinned cycle outside homology".into()))?;
            if x.iter().any(|v| !v.denom().is_one()) {
                return Err(Error::InvalidCurve("pinned basis is not integral".into()));
            }
            x_rows.push(x);
        }
        let d = linalg::det(&x_rows);
        if !(d.clone().abs()).is_one() {
            return Err(Error::InvalidCurve("pinned basis does not span the cycle lattice".into()));
        }
        Ok(())
    }

    /// The curve's cycle basis: the pinned one when present, otherwise the
    /// deterministic fundamental basis of the BFS forest.
    pub fn cycle_basis(&self) -> Result<CycleBasis> {
        if !self.is_compact() {
            return Err(Error::NotCompact);
        }
        let tree = self.spanning_forest();
        if let Some(b) = &self.pinned_basis {
            self.check_pinned(b)?;
            return Ok(CycleBasis { tree, cycles: b.clone() });
        }
        let cycles = (0..self.num_edges())
            .filter(|&j| !tree[j])
            .map(|j| self.fundamental_cycle(&tree, j))
            .collect();
        Ok(CycleBasis { tree, cycles })
    }

    pub fn genus(&self) -> Result<usize> {
        Ok(self.betti()?.1)
    }

    /// Total length of a cycle: sum of |coefficient| times edge length.
    pub fn cycle_length(&self, gamma: &[i64]) -> LatVec {
        let mut l = LatVec::zeros(self.monoid.ambient_rank());
        for (j, &c) in gamma.iter().enumerate() {
            if c != 0 {
                l = l.add(&self.edges[j].length.scale_i64(c.abs()));
            }
        }
        l
    }

    /// Intersection pairing of two cycles: shared edges contribute
    /// +l(e) per aligned traversal and -l(e) per opposed traversal.
    pub fn pair_cycles(&self, a: &[i64], b: &[i64]) -> LatVec {
        let mut p = LatVec::zeros(self.monoid.ambient_rank());
        for (j, e) in self.edges.iter().enumerate() {
            let c = a[j] * b[j];
            if c != 0 {
                p = p.add(&e.length.scale_i64(c));
            }
        }
        p
    }

    pub fn intersection_matrix(&self, basis: &CycleBasis) -> Vec<Vec<LatVec>> {
        basis
            .cycles
            .iter()
            .map(|a| basis.cycles.iter().map(|b| self.pair_cycles(a, b)).collect())
            .collect()
    }

    /// Split an edge at interior point t (measured from the tail). Strictness
    /// is judged in the supplied order context.
    pub fn subdivide(&self, edge: usize, t: &LatVec, ctx: OrderCtx) -> Result<Subdivision> {
        let e = &self.edges[edge];
        let rest = e.length.sub(t);
        let interior = match ctx {
            OrderCtx::Monoid => {
                !t.is_zero()
                    && !rest.is_zero()
                    && self.monoid.contains(t)?
                    && self.monoid.contains(&rest)?
            }
            OrderCtx::Valuation(v) => {
                v.lex_sign(t) == Ordering::Greater && v.lex_sign(&rest) == Ordering::Greater
            }
        };
        if !interior {
            return Err(Error::NotInterior);
        }
        let mut vertices = self.vertices.clone();
        let mut name = format!("s{}", vertices.len());
        while vertices.contains(&name) {
            name.push('\'');
        }
        let new_vertex = vertices.len();
        vertices.push(name);
        let mut edges = self.edges.clone();
        let head = edges[edge].head;
        edges[edge].head = Some(new_vertex);
        edges[edge].length = t.clone();
        let new_edge = edges.len();
        edges.push(Edge { tail: Some(new_vertex), head, length: rest });
        let pinned = self.pinned_basis.as_ref().map(|basis| {
            basis
                .iter()
                .map(|c| {
                    let mut v = c.clone();
                    v.push(c[edge]);
                    v
                })
                .collect()
        });
        Ok(Subdivision {
            curve: TropicalCurve {
                monoid: self.monoid.clone(),
                vertices,
                edges,
                pinned_basis: pinned,
            },
            edge,
            new_edge,
            new_vertex,
        })
    }

    /// Contract along a monoid homomorphism (rational matrix rows of the
    /// target rank): edges whose mapped length vanishes are collapsed.
    pub fn contract(&self, hom: &[Vec<Q>], target: SharpMonoid) -> Result<Contraction> {
        let n = self.monoid.ambient_rank();
        if hom.len() != target.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: target.ambient_rank(), got: hom.len() });
        }
        for row in hom {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        let mapped: Vec<LatVec> = self
            .edges
            .iter()
            .map(|e| LatVec::new(linalg::mat_vec(hom, &e.length.coords)))
            .collect();
        for (e, l) in self.edges.iter().zip(&mapped) {
            if l.is_zero() && (e.tail.is_none() || e.head.is_none()) {
                return Err(Error::DanglingContraction);
            }
        }
        // Union-find over the contracted edges.
        let nv = self.num_vertices();
        let mut repr: Vec<usize> = (0..nv).collect();
        fn find(repr: &mut Vec<usize>, mut x: usize) -> usize {
            while repr[x] != x {
                repr[x] = repr[repr[x]];
                x = repr[x];
            }
            x
        }
        for (e, l) in self.edges.iter().zip(&mapped) {
            if l.is_zero() {
                let (a, b) = (find(&mut repr, e.tail.unwrap()), find(&mut repr, e.head.unwrap()));
                // Keep the smaller index as representative.
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                repr[hi] = lo;
            }
        }
        let mut vertex_map = vec![0usize; nv];
        let mut new_names = Vec::new();
        let mut seen: Vec<Option<usize>> = vec![None; nv];
        for v in 0..nv {
            let r = find(&mut repr, v);
            vertex_map[v] = *seen[r].get_or_insert_with(|| {
                new_names.push(self.vertices[r].clone());
                new_names.len() - 1
            });
        }
        let mut edge_map = vec![None; self.num_edges()];
        let mut edges = Vec::new();
        for (j, (e, l)) in self.edges.iter().zip(&mapped).enumerate() {
            if l.is_zero() {
                continue;
            }
            edge_map[j] = Some(edges.len());
            edges.push(Edge {
                tail: e.tail.map(|v| vertex_map[v]),
                head: e.head.map(|v| vertex_map[v]),
                length: l.clone(),
            });
        }
        let curve = TropicalCurve::new(target, new_names, edges, None)?;
        Ok(Contraction { curve, vertex_map, edge_map })
    }
}

/// Check the defining conditions of a flag structure against a monoid; returns
/// one message per violation.
pub fn validate_flags(fd: &FlagData, monoid: &SharpMonoid) -> Vec<String> {
    let mut report = Vec::new();
    let n = fd.invol.len();
    if fd.retract.len() != n || fd.length.len() != n {
        report.push("flag arrays have mismatched lengths".to_string());
        return report;
    }
    for x in 0..n {
        if fd.invol[x] >= n {
            report.push(format!("flag {}: involution out of range", x));
            continue;
        }
        if fd.invol[fd.invol[x]] != x {
            report.push(format!("flag {}: involution is not an involution", x));
        }
        if fd.length[fd.invol[x]] != fd.length[x] {
            report.push(format!("flag {}: length differs across the involution", x));
        }
        let is_vertex = fd.length[x].is_zero();
        if is_vertex != (fd.invol[x] == x) {
            report.push(format!(
                "flag {}: zero length must coincide with being an involution fixed point",
                x
            ));
        }
        if is_vertex != (fd.retract[x] == Some(x)) {
            report.push(format!(
                "flag {}: zero length must coincide with being a retraction fixed point",
                x
            ));
        }
        if let Some(r) = fd.retract[x] {
            if r >= n {
                report.push(format!("flag {}: retraction out of range", x));
            } else {
                if !fd.length[r].is_zero() {
                    report.push(format!("flag {}: retraction does not land on a vertex", x));
                }
                if fd.retract[r] != Some(r) {
                    report.push(format!("flag {}: retraction is not idempotent", x));
                }
            }
        }
        if !is_vertex {
            if fd.length[x].dim() != monoid.ambient_rank() {
                report.push(format!("flag {}: length has wrong dimension", x));
            } else if !monoid.contains(&fd.length[x]).unwrap_or(false) {
                report.push(format!("flag {}: length is not an element of the monoid", x));
            }
        }
    }
    report
}

/// Ready-made curves used by tests, benches and documentation examples.
pub mod fixtures {
    use super::*;

    /// The two-vertex, three-parallel-edge graph with the chain cycle basis
    /// {e1 - e2, e2 - e3} pinned, over N^3 with independent symbolic lengths.
    pub fn theta_symbolic() -> TropicalCurve {
        let m = SharpMonoid::orthant(3);
        let edges = (0..3)
            .map(|i| {
                let mut l = vec![0i64; 3];
                l[i] = 1;
                Edge { tail: Some(0), head: Some(1), length: LatVec::from_ints(&l) }
            })
            .collect();
        TropicalCurve::new(
            m,
            vec!["v1".into(), "v2".into()],
            edges,
            Some(vec![vec![1, -1, 0], vec![0, 1, -1]]),
        )
        .unwrap()
    }

    /// Theta graph with real (rank-1) lengths and the chain basis pinned.
    pub fn theta_real(l1: i64, l2: i64, l3: i64) -> TropicalCurve {
        let m = SharpMonoid::orthant(1);
        let edges = [l1, l2, l3]
            .iter()
            .map(|&l| Edge { tail: Some(0), head: Some(1), length: LatVec::from_ints(&[l]) })
            .collect();
        TropicalCurve::new(
            m,
            vec!["v1".into(), "v2".into()],
            edges,
            Some(vec![vec![1, -1, 0], vec![0, 1, -1]]),
        )
        .unwrap()
    }

    /// Cycle of n vertices and n edges with the given symbolic lengths in N^n.
    pub fn tate_cycle(n: usize) -> TropicalCurve {
        let m = SharpMonoid::orthant(n);
        let vertices = (0..n).map(|i| format!("v{}", i)).collect();
        let edges = (0..n)
            .map(|i| {
                let mut l = vec![0i64; n];
                l[i] = 1;
                Edge { tail: Some(i), head: Some((i + 1) % n), length: LatVec::from_ints(&l) }
            })
            .collect();
        TropicalCurve::new(m, vertices, edges, None).unwrap()
    }

    /// Single loop of the given rank-1 length.
    pub fn loop_real(len: i64) -> TropicalCurve {
        let m = SharpMonoid::orthant(1);
        TropicalCurve::new(
            m,
            vec!["v".into()],
            vec![Edge { tail: Some(0), head: Some(0), length: LatVec::from_ints(&[len]) }],
            None,
        )
        .unwrap()
    }
}
