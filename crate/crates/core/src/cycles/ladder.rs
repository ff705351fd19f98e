//! The truncated ladder `Γ'_y` together with the horizontal cells of the
//! neighbouring ladders that meet it along the `e±_k` edges.
//!
//! With `x = m·α + n·y` the ladder has, for each index `k`, an edge `d_k`
//! (the cell of `{γ+, γ-, α + k·y}`), edges `c±_k` joining `d_k` to
//! `d_{k+1}` and edges `e±_k` running to the apex of the vertical triangle
//! over `d_k`. Indices run over `-K ..= min(l, K)` with `l = floor(n/m)`;
//! when `l <= K` the ladder closes with the triangle on `c±_l` and `d_l`.
//! Every 2-cell carries an oriented list of curve classes (with `α = a1`,
//! `y = a2`) so that `Ψ` can be read off the actual basic cycles.

use super::{psi_max, CellInstance};
use crate::error::{Error, Result};
use crate::lattice::HVector;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LadderVertex {
    Bottom(i64),
    Top(i64),
    Apex(i64),
    Left,
    Outer(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LadderEdgeTag {
    D(i64),
    CPlus(i64),
    CMinus(i64),
    EPlus(i64),
    EMinus(i64),
    Outer(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderEdge {
    pub tag: LadderEdgeTag,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LadderCellTag {
    /// Rectangle between `d_k` and `d_{k+1}`.
    Rect(i64),
    /// The triangle on `d_l` closing the ladder.
    LeftTriangle(i64),
    /// Vertical triangle on `d_k`, `e+_k`, `e-_k`.
    Vertical(i64),
    /// Horizontal cell of a neighbouring ladder through `e±_k`.
    NeighbourRect {
        k: i64,
        plus: bool,
    },
    NeighbourTriangle {
        k: i64,
        plus: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderCell {
    pub tag: LadderCellTag,
    pub horizontal: bool,
    /// Oriented boundary as (edge index, sign).
    pub boundary: Vec<(usize, i64)>,
    /// Oriented curve classes of the multicurve of the cell.
    pub classes: Vec<HVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderComplex {
    pub m: i64,
    pub n: i64,
    pub l: i64,
    pub k_trunc: i64,
    pub vertices: Vec<LadderVertex>,
    pub edges: Vec<LadderEdge>,
    pub cells: Vec<LadderCell>,
}

struct Builder {
    vertices: Vec<LadderVertex>,
    vindex: BTreeMap<LadderVertex, usize>,
    edges: Vec<LadderEdge>,
    eindex: BTreeMap<LadderEdgeTag, usize>,
    outer: usize,
}

impl Builder {
    fn vertex(&mut self, v: LadderVertex) -> usize {
        if let Some(&i) = self.vindex.get(&v) {
            return i;
        }
        self.vertices.push(v);
        self.vindex.insert(v, self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    fn fresh_vertex(&mut self) -> usize {
        self.outer += 1;
        self.vertex(LadderVertex::Outer(self.outer))
    }

    fn edge(&mut self, tag: LadderEdgeTag, tail: usize, head: usize) -> usize {
        self.edges.push(LadderEdge { tag, tail, head });
        self.eindex.insert(tag, self.edges.len() - 1);
        self.edges.len() - 1
    }

    fn fresh_edge(&mut self, tail: usize, head: usize) -> usize {
        self.outer += 1;
        self.edge(LadderEdgeTag::Outer(self.outer), tail, head)
    }
}

/// Builds the truncated ladder for `x = m·α + n·y`.
pub fn build_ladder(m: i64, n: i64, k_trunc: i64) -> Result<LadderComplex> {
    if m <= 0 || n <= 0 || k_trunc < 1 {
        return Err(Error::InvalidParameters(format!("ladder needs m, n > 0 and K >= 1, got ({m}, {n}, {k_trunc})")));
    }
    if num_integer::gcd(m, n) != 1 {
        return Err(Error::InvalidParameters(format!("(m, n) = ({m}, {n}) is not coprime")));
    }
    let l = n / m;
    let top = l.min(k_trunc);
    let ks: Vec<i64> = (-k_trunc..=top).collect();
    let alpha = HVector::a(1);
    let y = HVector::a(2);
    let ak = |k: i64| alpha + k * y;

    let mut b =
        Builder { vertices: Vec::new(), vindex: BTreeMap::new(), edges: Vec::new(), eindex: BTreeMap::new(), outer: 0 };
    for &k in &ks {
        let (bo, to, ap) =
            (b.vertex(LadderVertex::Bottom(k)), b.vertex(LadderVertex::Top(k)), b.vertex(LadderVertex::Apex(k)));
        b.edge(LadderEdgeTag::D(k), bo, to);
        b.edge(LadderEdgeTag::EPlus(k), bo, ap);
        b.edge(LadderEdgeTag::EMinus(k), to, ap);
    }
    for &k in &ks {
        if k < top {
            let (b0, b1) = (b.vindex[&LadderVertex::Bottom(k)], b.vindex[&LadderVertex::Bottom(k + 1)]);
            let (t0, t1) = (b.vindex[&LadderVertex::Top(k)], b.vindex[&LadderVertex::Top(k + 1)]);
            b.edge(LadderEdgeTag::CPlus(k), b0, b1);
            b.edge(LadderEdgeTag::CMinus(k), t0, t1);
        } else if k == l {
            let left = b.vertex(LadderVertex::Left);
            let (b0, t0) = (b.vindex[&LadderVertex::Bottom(k)], b.vindex[&LadderVertex::Top(k)]);
            b.edge(LadderEdgeTag::CPlus(k), b0, left);
            b.edge(LadderEdgeTag::CMinus(k), t0, left);
        }
    }

    let e = |b: &Builder, t: LadderEdgeTag| b.eindex[&t];
    let mut cells = Vec::new();
    for &k in &ks {
        if k < top {
            cells.push(LadderCell {
                tag: LadderCellTag::Rect(k),
                horizontal: true,
                boundary: vec![
                    (e(&b, LadderEdgeTag::CPlus(k)), 1),
                    (e(&b, LadderEdgeTag::D(k + 1)), 1),
                    (e(&b, LadderEdgeTag::CMinus(k)), -1),
                    (e(&b, LadderEdgeTag::D(k)), -1),
                ],
                classes: vec![y, y, ak(k), ak(k + 1)],
            });
        } else if k == l {
            cells.push(LadderCell {
                tag: LadderCellTag::LeftTriangle(k),
                horizontal: true,
                boundary: vec![
                    (e(&b, LadderEdgeTag::CPlus(k)), 1),
                    (e(&b, LadderEdgeTag::CMinus(k)), -1),
                    (e(&b, LadderEdgeTag::D(k)), -1),
                ],
                classes: vec![y, y, ak(k), ak(k + 1)],
            });
        }
        cells.push(LadderCell {
            tag: LadderCellTag::Vertical(k),
            horizontal: false,
            boundary: vec![
                (e(&b, LadderEdgeTag::EPlus(k)), 1),
                (e(&b, LadderEdgeTag::EMinus(k)), -1),
                (e(&b, LadderEdgeTag::D(k)), -1),
            ],
            classes: vec![y, y, ak(k), y - ak(k)],
        });
        for plus in [true, false] {
            let tag = if plus { LadderEdgeTag::EPlus(k) } else { LadderEdgeTag::EMinus(k) };
            let ei = e(&b, tag);
            let (tail, head) = (b.edges[ei].tail, b.edges[ei].head);
            // Rectangle: e, head -> p, p -> q, q -> tail.
            let p = b.fresh_vertex();
            let q = b.fresh_vertex();
            let f1 = b.fresh_edge(head, p);
            let f2 = b.fresh_edge(p, q);
            let f3 = b.fresh_edge(q, tail);
            cells.push(LadderCell {
                tag: LadderCellTag::NeighbourRect { k, plus },
                horizontal: true,
                boundary: vec![(ei, 1), (f1, 1), (f2, 1), (f3, 1)],
                classes: vec![ak(k), ak(k), y, ak(k) - y],
            });
            // Triangle: e, head -> r, r -> tail.
            let r = b.fresh_vertex();
            let g1 = b.fresh_edge(head, r);
            let g2 = b.fresh_edge(r, tail);
            cells.push(LadderCell {
                tag: LadderCellTag::NeighbourTriangle { k, plus },
                horizontal: true,
                boundary: vec![(ei, 1), (g1, 1), (g2, 1)],
                classes: vec![y - ak(k), y - ak(k), ak(k), y],
            });
        }
    }
    Ok(LadderComplex { m, n, l, k_trunc, vertices: b.vertices, edges: b.edges, cells })
}

impl LadderComplex {
    pub fn x(&self) -> HVector {
        self.m * HVector::a(1) + self.n * HVector::a(2)
    }

    pub fn edge_index(&self, tag: LadderEdgeTag) -> Option<usize> {
        self.edges.iter().position(|e| e.tag == tag)
    }

    pub fn cell_index(&self, tag: LadderCellTag) -> Option<usize> {
        self.cells.iter().position(|c| c.tag == tag)
    }

    /// Indices of the 2-cells whose boundary contains edge `e`.
    pub fn cells_on_edge(&self, e: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| self.cells[c].boundary.iter().any(|&(f, _)| f == e)).collect()
    }

    /// Indices `k` whose `d_k` is away from the truncation boundary.
    pub fn interior_indices(&self) -> Vec<i64> {
        let top = self.l.min(self.k_trunc);
        (-self.k_trunc..=top).filter(|&k| k > -self.k_trunc && (k < top || k == self.l)).collect()
    }

    /// Number of edges carrying each kind of tag.
    pub fn edge_census(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            let name = match e.tag {
                LadderEdgeTag::D(_) => "d",
                LadderEdgeTag::CPlus(_) => "c+",
                LadderEdgeTag::CMinus(_) => "c-",
                LadderEdgeTag::EPlus(_) => "e+",
                LadderEdgeTag::EMinus(_) => "e-",
                LadderEdgeTag::Outer(_) => "outer",
            };
            *out.entry(name).or_insert(0) += 1;
        }
        out
    }

    /// Signed vertex boundary of every 2-cell boundary; zero for a closed loop.
    pub fn boundary_of_boundary(&self, cell: usize) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for &(e, s) in &self.cells[cell].boundary {
            *out.entry(self.edges[e].head).or_insert(0) += s;
            *out.entry(self.edges[e].tail).or_insert(0) -= s;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// The cell of the multicurve attached to a 2-cell, for `x = m·α + n·y`.
    pub fn cell_instance(&self, cell: usize) -> Result<CellInstance> {
        CellInstance::from_classes(&self.cells[cell].classes, self.x())
    }

    pub fn psi(&self, cell: usize) -> Result<i64> {
        psi_max(&self.cell_instance(cell)?)
    }

    /// Checks the structural invariants of the ladder.
    pub fn check_invariants(&self) -> Result<()> {
        for (i, _) in self.cells.iter().enumerate() {
            if !self.boundary_of_boundary(i).is_empty() {
                return Err(Error::Inconsistent(format!("boundary of cell {i} is not closed")));
            }
        }
        for k in self.interior_indices() {
            let d = self.edge_index(LadderEdgeTag::D(k)).expect("d_k exists");
            let count = self.cells_on_edge(d).len();
            if count != 3 {
                return Err(Error::Inconsistent(format!("d_{k} bounds {count} cells")));
            }
        }
        // After gluing the endpoints of each d_k, c+_k and c-_k (and e+_k,
        // e-_k) share both endpoints.
        let glue = |v: usize| match self.vertices[v] {
            LadderVertex::Top(k) => self.vertices.iter().position(|&w| w == LadderVertex::Bottom(k)).unwrap(),
            _ => v,
        };
        for e in &self.edges {
            let partner = match e.tag {
                LadderEdgeTag::CPlus(k) => LadderEdgeTag::CMinus(k),
                LadderEdgeTag::EPlus(k) => LadderEdgeTag::EMinus(k),
                _ => continue,
            };
            let f = &self.edges[self.edge_index(partner).expect("partner edge exists")];
            if (glue(e.tail), glue(e.head)) != (glue(f.tail), glue(f.head)) {
                return Err(Error::Inconsistent(format!("{:?} and {partner:?} do not share endpoints", e.tag)));
            }
        }
        for (i, c) in self.cells.iter().enumerate() {
            if c.horizontal {
                continue;
            }
            let free = c.boundary.iter().any(|&(e, _)| {
                matches!(self.edges[e].tag, LadderEdgeTag::D(_))
                    && self.cells_on_edge(e).iter().all(|&o| o == i || self.cells[o].horizontal)
            });
            if !free {
                return Err(Error::Inconsistent(format!("vertical cell {i} has no private horizontal edge")));
            }
        }
        for (i, c) in self.cells.iter().enumerate() {
            if !c.horizontal {
                continue;
            }
            let free = c
                .boundary
                .iter()
                .any(|&(e, _)| self.cells_on_edge(e).iter().all(|&o| o == i || !self.cells[o].horizontal));
            if !free {
                return Err(Error::Inconsistent(format!("horizontal cell {i} has no free edge")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::boundary_faces;

    #[test]
    fn invariants_hold() {
        for (m, n) in [(1, 1), (1, 2), (2, 3), (3, 1), (1, 5)] {
            for k in 1..=6 {
                build_ladder(m, n, k).unwrap().check_invariants().unwrap();
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_ladder(0, 1, 2).is_err());
        assert!(build_ladder(1, -1, 2).is_err());
        assert!(build_ladder(2, 4, 2).is_err());
    }

    #[test]
    fn d0_meets_prime_double_prime_and_vertical() {
        let lad = build_ladder(1, 1, 3).unwrap();
        let d0 = lad.edge_index(LadderEdgeTag::D(0)).unwrap();
        let mut tags: Vec<LadderCellTag> = lad.cells_on_edge(d0).iter().map(|&c| lad.cells[c].tag).collect();
        tags.sort();
        assert_eq!(tags, vec![LadderCellTag::Rect(-1), LadderCellTag::Rect(0), LadderCellTag::Vertical(0)]);
    }

    #[test]
    fn e_plus_meets_vertical_and_two_horizontal() {
        let lad = build_ladder(1, 1, 3).unwrap();
        let e = lad.edge_index(LadderEdgeTag::EPlus(0)).unwrap();
        let cells = lad.cells_on_edge(e);
        assert_eq!(cells.len(), 3);
        let horiz: Vec<_> =
            cells.iter().filter(|&&c| lad.cells[c].horizontal).map(|&c| lad.cells[c].boundary.len()).collect();
        let mut horiz = horiz;
        horiz.sort();
        assert_eq!(horiz, vec![3, 4]);
    }

    #[test]
    fn edge_census_one_two() {
        let lad = build_ladder(1, 2, 2).unwrap();
        assert_eq!(lad.l, 2);
        let c = lad.edge_census();
        // Indices -2..=2; the closing triangle sits at k = l = 2.
        for tag in ["d", "c+", "c-", "e+", "e-"] {
            assert_eq!(c[tag], 5, "{tag}");
        }
        // Truncated before the closing triangle.
        let lad = build_ladder(1, 5, 2).unwrap();
        let c = lad.edge_census();
        assert_eq!(c["d"], 5);
        assert_eq!(c["c+"], 4);
    }

    #[test]
    fn psi_values() {
        for (m, n) in [(1, 1), (1, 2), (2, 3)] {
            let lad = build_ladder(m, n, 3).unwrap();
            let at = |t| lad.psi(lad.cell_index(t).unwrap()).unwrap();
            assert_eq!(at(LadderCellTag::Rect(0)), m + n);
            assert_eq!(at(LadderCellTag::Rect(-1)), 2 * m + n);
            assert_eq!(at(LadderCellTag::NeighbourRect { k: 0, plus: true }), 2 * m + n);
            assert_eq!(at(LadderCellTag::NeighbourTriangle { k: 0, plus: true }), m + 2 * n);
        }
    }

    #[test]
    fn prime_rectangle_faces_match_class_level_faces() {
        let lad = build_ladder(1, 2, 3).unwrap();
        let c = lad.cell_instance(lad.cell_index(LadderCellTag::Rect(0)).unwrap()).unwrap();
        assert_eq!(c.dim, 2);
        assert_eq!(c.verts.len(), 4);
        let faces = boundary_faces(&c).unwrap();
        assert_eq!(faces.len(), 4);
        // Opposite sides (disjoint vertex sets) carry opposite signs.
        for (s, f) in &faces {
            let opposite: Vec<i64> =
                faces.iter().filter(|(_, g)| g.verts.iter().all(|v| !f.verts.contains(v))).map(|(t, _)| *t).collect();
            assert_eq!(opposite, vec![-s]);
        }
    }
}
