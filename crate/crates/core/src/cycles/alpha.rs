//! The subcomplex `B_α(y)`: cells of `B(y)` whose multicurve can be made
//! disjoint from a curve `α` of class `x`.
//!
//! Without isotopy data, disjointness is tested on the decomposition graph:
//! `α` must fit into one complementary component, either as a
//! nonseparating curve there (a loop, lowering that component's genus) or
//! by cutting the component in two (a vertex split whose new edge carries
//! the boundary class of one side).

use crate::error::{Error, Result};
use crate::lattice::{intersection, HVector};
use crate::surface::{DecompGraph, LabeledMulticurve};
use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// The multicurve `M ∪ α` found as a disjointness witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaExtension {
    pub extended: LabeledMulticurve,
    /// Index of the `α` edge in the extended graph.
    pub alpha_edge: usize,
    pub kind: ExtensionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionKind {
    Loop { vertex: usize },
    Split { vertex: usize },
}

/// Membership test for cells of `B_α(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaRestriction {
    pub x: HVector,
    pub y: HVector,
}

pub fn restrict_to_alpha(x: HVector, alpha_class: HVector, y: HVector) -> Result<AlphaRestriction> {
    if y.is_zero() || y == x {
        return Err(Error::Precondition(format!("y = {y} must be nonzero and differ from x = {x}")));
    }
    if intersection(&x, &y) != 0 {
        return Err(Error::Precondition(format!("<x, y> = {} is not zero", intersection(&x, &y))));
    }
    if alpha_class != x && alpha_class != -x {
        return Err(Error::Precondition(format!("alpha has class {alpha_class}, expected {x}")));
    }
    Ok(AlphaRestriction { x, y })
}

impl AlphaRestriction {
    pub fn accepts(&self, m: &LabeledMulticurve) -> bool {
        self.witness(m).is_some()
    }

    /// Searches loop extensions first, then vertex splits, in vertex order.
    pub fn witness(&self, m: &LabeledMulticurve) -> Option<AlphaExtension> {
        if m.x != self.y {
            return None;
        }
        if m.classes.iter().any(|c| intersection(c, &self.x) != 0) {
            return None;
        }
        let g = &m.graph;
        let try_build = |graph: DecompGraph, class: HVector, kind| {
            let mut classes = m.classes.clone();
            classes.push(class);
            let ext = LabeledMulticurve::new(graph, classes, self.x).ok()?;
            ext.validate().ok()?;
            if ext.has_nonnegative_relation() {
                return None;
            }
            Some(AlphaExtension { alpha_edge: ext.classes.len() - 1, extended: ext, kind })
        };
        for v in 0..g.vertex_count() {
            let h = g.genera()[v];
            if h == 0 {
                continue;
            }
            let mut genera = g.genera().to_vec();
            genera[v] = h - 1;
            let mut edges = g.edges().to_vec();
            edges.push((v, v));
            let Ok(graph) = DecompGraph::new(genera, edges) else { continue };
            if let Some(w) = try_build(graph, self.x, ExtensionKind::Loop { vertex: v }) {
                return Some(w);
            }
        }
        for v in 0..g.vertex_count() {
            if let Some(w) = self.split_at(m, v, &try_build) {
                return Some(w);
            }
        }
        None
    }

    /// Cuts component `v` into two pieces; the new vertex takes a subset of
    /// the edge ends at `v` and part of its genus.
    fn split_at(
        &self,
        m: &LabeledMulticurve,
        v: usize,
        try_build: &dyn Fn(DecompGraph, HVector, ExtensionKind) -> Option<AlphaExtension>,
    ) -> Option<AlphaExtension> {
        let g = &m.graph;
        // Edge ends at v as (edge, is_tail); a loop contributes two ends.
        let ends: Vec<(usize, bool)> = g
            .edges()
            .iter()
            .enumerate()
            .flat_map(|(i, &(a, b))| {
                let mut out = Vec::new();
                if a == v {
                    out.push((i, true));
                }
                if b == v {
                    out.push((i, false));
                }
                out
            })
            .collect();
        let w = g.vertex_count();
        for size in 1..ends.len() {
            for moved in ends.iter().copied().combinations(size) {
                for h_new in 0..=g.genera()[v] {
                    let mut genera = g.genera().to_vec();
                    genera[v] -= h_new;
                    genera.push(h_new);
                    let mut edges = g.edges().to_vec();
                    let mut side = HVector::ZERO;
                    for &(e, tail) in &moved {
                        if tail {
                            edges[e].0 = w;
                            side = side + m.classes[e];
                        } else {
                            edges[e].1 = w;
                            side = side - m.classes[e];
                        }
                    }
                    if side != self.x && side != -self.x {
                        continue;
                    }
                    // The new edge runs from w to v; its class balances w.
                    edges.push((w, v));
                    let Ok(graph) = DecompGraph::new(genera, edges) else { continue };
                    if let Some(ext) = try_build(graph, -side, ExtensionKind::Split { vertex: v }) {
                        return Some(ext);
                    }
                }
            }
        }
        None
    }
}
