//! Basic 1-cycles, the polytope cells `P_M` they span, and their boundaries.

mod alpha;
pub mod ladder;

pub use alpha::{restrict_to_alpha, AlphaExtension};
pub use ladder::{build_ladder, LadderCell, LadderCellTag, LadderComplex, LadderEdge, LadderEdgeTag, LadderVertex};

use crate::error::{Error, Result};
use crate::lattice::{rank, HVector, IntMatrix};
use crate::surface::{basic_cycle_supports, DecompGraph, LabeledMulticurve};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A positive integral 1-cycle `sum k_i [gamma_i] = x` on independent curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasicCycle {
    /// Curve identifiers, ascending.
    pub support: Vec<usize>,
    /// Coefficient of each support curve, in the same order.
    pub coefficients: Vec<i64>,
    pub target: HVector,
}

impl BasicCycle {
    pub fn coefficient(&self, curve: usize) -> i64 {
        self.support.iter().position(|&c| c == curve).map_or(0, |i| self.coefficients[i])
    }
}

/// `psi(v) = sum of the coefficients`.
pub fn psi(v: &BasicCycle) -> i64 {
    v.coefficients.iter().sum()
}

/// All basic cycles for `x` supported in the curves of `m`.
pub fn enumerate_basic_cycles(m: &LabeledMulticurve, x: &HVector) -> Result<Vec<BasicCycle>> {
    let ids: Vec<usize> = (0..m.classes.len()).collect();
    basic_cycles_over(&m.classes, &ids, x)
}

fn basic_cycles_over(classes: &[HVector], ids: &[usize], x: &HVector) -> Result<Vec<BasicCycle>> {
    if x.is_zero() {
        return Err(Error::Degenerate("basic cycles of the zero class".into()));
    }
    let mut out: Vec<BasicCycle> = basic_cycle_supports(classes, x)
        .into_iter()
        .map(|(s, k)| BasicCycle { support: s.iter().map(|&i| ids[i]).collect(), coefficients: k, target: *x })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// A cell `P_M`: the convex hull of the basic cycles supported in `M`.
///
/// Curves carry identifiers so that faces share vertices with the cells
/// they bound. The decomposition graph is optional; cells built directly
/// from class lists (as in the ladder) have none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellInstance {
    pub curve_ids: Vec<usize>,
    pub classes: Vec<HVector>,
    pub x: HVector,
    pub graph: Option<DecompGraph>,
    pub verts: Vec<BasicCycle>,
    pub dim: usize,
}

impl CellInstance {
    /// The cell of a labelled multicurve for its own class `x`.
    pub fn from_multicurve(m: &LabeledMulticurve) -> Result<Self> {
        let ids = (0..m.classes.len()).collect();
        Self::build(ids, m.classes.clone(), m.x, Some(m.graph.clone()))
    }

    /// A cell from a bare list of (oriented) curve classes.
    pub fn from_classes(classes: &[HVector], x: HVector) -> Result<Self> {
        Self::build((0..classes.len()).collect(), classes.to_vec(), x, None)
    }

    fn build(curve_ids: Vec<usize>, classes: Vec<HVector>, x: HVector, graph: Option<DecompGraph>) -> Result<Self> {
        let verts = basic_cycles_over(&classes, &curve_ids, &x)?;
        if verts.is_empty() {
            return Err(Error::MalformedCell("no basic cycle is supported in the multicurve".into()));
        }
        let rk = if classes.is_empty() {
            0
        } else {
            rank(&IntMatrix::from_cols(&classes.iter().map(|c| c.0.to_vec()).collect::<Vec<_>>(), 6))
        };
        let dim = classes.len() - rk;
        Ok(CellInstance { curve_ids, classes, x, graph, verts, dim })
    }

    /// Position of a curve identifier in this cell's curve list.
    fn slot(&self, id: usize) -> usize {
        self.curve_ids.iter().position(|&c| c == id).expect("curve belongs to the cell")
    }

    /// Coefficient vector of a vertex in this cell's coordinates.
    fn dense(&self, v: &BasicCycle) -> Vec<i64> {
        let mut out = vec![0; self.curve_ids.len()];
        for (&c, &k) in v.support.iter().zip(&v.coefficients) {
            out[self.slot(c)] = k;
        }
        out
    }

    /// Dimension of the affine hull of the vertices.
    pub fn affine_dim(&self) -> usize {
        self.frame().len()
    }

    /// Vertices chosen greedily (in sorted order) to span the affine hull:
    /// the base vertex followed by `dim` further vertices.
    fn frame_vertices(&self) -> Vec<&BasicCycle> {
        let base = &self.verts[0];
        let b = self.dense(base);
        let mut chosen = vec![base];
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for v in &self.verts[1..] {
            let d: Vec<i64> = self.dense(v).iter().zip(&b).map(|(p, q)| p - q).collect();
            let mut trial = rows.clone();
            trial.push(d);
            if rank(&IntMatrix::from_rows(&trial, self.curve_ids.len())) == trial.len() {
                rows = trial;
                chosen.push(v);
            }
        }
        chosen
    }

    /// Difference vectors `v_i - v_0` of the frame, in this cell's coordinates.
    fn frame(&self) -> Vec<Vec<i64>> {
        let fv = self.frame_vertices();
        let b = self.dense(fv[0]);
        fv[1..].iter().map(|v| self.dense(v).iter().zip(&b).map(|(p, q)| p - q).collect()).collect()
    }

    /// The sub-cell spanned by the curves with the given identifiers.
    fn sub_cell(&self, keep: &[usize]) -> Result<CellInstance> {
        let slots: Vec<usize> = keep.iter().map(|&id| self.slot(id)).collect();
        let graph = self.graph.as_ref().map(|g| {
            let mut g = g.clone();
            let mut removed: Vec<usize> = (0..self.curve_ids.len()).filter(|s| !slots.contains(s)).collect();
            removed.sort_unstable_by(|a, b| b.cmp(a));
            for s in removed {
                g = g.contract_edge(s);
            }
            g
        });
        Self::build(keep.to_vec(), slots.iter().map(|&s| self.classes[s]).collect(), self.x, graph)
    }

    /// Orientation sign of a codimension-one face `f` in the boundary of
    /// `self`: outward direction first, then the face's own frame, measured
    /// against this cell's frame.
    fn induced_sign(&self, f: &CellInstance) -> i64 {
        let own = self.frame();
        let d = own.len();
        let fv = f.frame_vertices();
        let w0 = self.dense(fv[0]);
        let face_ids: BTreeSet<&BasicCycle> = f.verts.iter().collect();
        let p = self.verts.iter().find(|v| !face_ids.contains(v)).expect("face is proper");
        let p = self.dense(p);
        let mut other: Vec<Vec<i64>> = vec![w0.iter().zip(&p).map(|(a, b)| a - b).collect()];
        for v in &fv[1..] {
            other.push(self.dense(v).iter().zip(&w0).map(|(a, b)| a - b).collect());
        }
        // Pick d coordinates on which the cell frame is nonsingular.
        let n = self.curve_ids.len();
        let mut coords: Vec<usize> = Vec::new();
        for c in 0..n {
            let mut trial = coords.clone();
            trial.push(c);
            let m = IntMatrix::from_rows(
                &own.iter().map(|r| trial.iter().map(|&i| r[i]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                trial.len(),
            );
            if rank(&m) == trial.len() {
                coords = trial;
            }
            if coords.len() == d {
                break;
            }
        }
        let project = |rows: &[Vec<i64>]| {
            IntMatrix::from_rows(
                &rows.iter().map(|r| coords.iter().map(|&i| r[i]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                d,
            )
        };
        let a = project(&own).det();
        let b = project(&other).det();
        debug_assert!(a != 0 && b != 0);
        a.signum() * b.signum()
    }
}

/// `dim P_M`, cross-checked against `|V| - 1` when a graph is present and
/// against the affine dimension of the vertices.
pub fn cell_dim(c: &CellInstance) -> Result<usize> {
    if let Some(g) = &c.graph {
        if g.vertex_count() - 1 != c.dim {
            return Err(Error::Inconsistent(format!(
                "|M| - rk M = {} but |components| - 1 = {}",
                c.dim,
                g.vertex_count() - 1
            )));
        }
    }
    if c.affine_dim() != c.dim {
        return Err(Error::Inconsistent(format!(
            "|M| - rk M = {} but the vertices span dimension {}",
            c.dim,
            c.affine_dim()
        )));
    }
    Ok(c.dim)
}

/// `Ψ(P_M)`, the largest `psi` over the vertices.
pub fn psi_max(c: &CellInstance) -> Result<i64> {
    c.verts.iter().map(psi).max().ok_or_else(|| Error::MalformedCell("cell has no vertices".into()))
}

/// Codimension-one faces of `c` with their induced orientation signs.
///
/// A face is `P_{M'}` for a sub-multicurve `M'` that is exactly the union
/// of the supports of the basic cycles it carries. Faces are listed in a
/// deterministic order (by vertex set).
pub fn boundary_faces(c: &CellInstance) -> Result<Vec<(i64, CellInstance)>> {
    if c.dim == 0 {
        return Err(Error::Precondition("a vertex has no boundary".into()));
    }
    let n = c.curve_ids.len();
    let mut faces: Vec<(i64, CellInstance)> = Vec::new();
    let mut seen: BTreeSet<Vec<BasicCycle>> = BTreeSet::new();
    for mask in 1u32..(1 << n) - 1 {
        let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| c.curve_ids[i]).collect();
        let verts: Vec<BasicCycle> =
            c.verts.iter().filter(|v| v.support.iter().all(|s| keep.contains(s))).cloned().collect();
        if verts.is_empty() {
            continue;
        }
        let used: BTreeSet<usize> = verts.iter().flat_map(|v| v.support.iter().copied()).collect();
        if used.len() != keep.len() || !seen.insert(verts.clone()) {
            continue;
        }
        let f = c.sub_cell(&keep)?;
        debug_assert_eq!(f.verts, verts);
        if f.affine_dim() + 1 == c.affine_dim() {
            let s = c.induced_sign(&f);
            faces.push((s, f));
        }
    }
    faces.sort_by(|a, b| a.1.verts.cmp(&b.1.verts));
    Ok(faces)
}

/// `∂∂c` as a combination of codimension-two faces keyed by vertex sets;
/// empty when the orientations are coherent.
pub fn boundary_squared(c: &CellInstance) -> Result<BTreeMap<Vec<BasicCycle>, i64>> {
    let mut out = BTreeMap::new();
    for (s, f) in boundary_faces(c)? {
        if f.dim == 0 {
            continue;
        }
        for (t, g) in boundary_faces(&f)? {
            *out.entry(g.verts).or_insert(0) += s * t;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}
