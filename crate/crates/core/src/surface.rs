//! Multicurves on a closed surface, recorded by their decomposition graphs.
//!
//! A vertex is a component of the cut surface together with its genus; an
//! edge is a curve joining the two sides it bounds (a loop when both sides
//! are the same component). Edge `(tail, head)` also fixes an orientation:
//! the class counts with sign `+` at the tail and `-` at the head.

use crate::error::{Error, Result};
use crate::lattice::{intersection, kernel_basis, rank, HVector, IntMatrix, DIM};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecompGraph {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl DecompGraph {
    pub fn new(genera: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= genera.len() || v >= genera.len() {
                return Err(Error::MalformedGraph(format!("edge ({u}, {v}) has no endpoint")));
            }
        }
        Ok(DecompGraph { genera, edges })
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edge ends at `v`; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    /// Euler characteristic `2 - 2 genus - degree` of the component `v`.
    pub fn chi(&self, v: usize) -> i64 {
        2 - 2 * self.genera[v] as i64 - self.degree(v) as i64
    }

    pub fn total_chi(&self) -> i64 {
        (0..self.vertex_count()).map(|v| self.chi(v)).sum()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(None) == 1
    }

    /// True when deleting edge `e` disconnects the graph (a separating curve).
    pub fn is_bridge(&self, e: usize) -> bool {
        self.components_without(Some(e)) > 1
    }

    fn components_without(&self, skip: Option<usize>) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for (i, &(a, b)) in self.edges.iter().enumerate() {
                    if Some(i) == skip {
                        continue;
                    }
                    let other = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if !seen[other] {
                        seen[other] = true;
                        queue.push_back(other);
                    }
                }
            }
        }
        count
    }

    /// Checks connectivity and `chi <= -1` at every vertex.
    pub fn validate(&self) -> Result<()> {
        if self.genera.is_empty() {
            return Err(Error::MalformedGraph("no vertices".into()));
        }
        if !self.is_connected() {
            return Err(Error::MalformedGraph("graph is disconnected".into()));
        }
        for v in 0..self.vertex_count() {
            if self.chi(v) > -1 {
                return Err(Error::MalformedGraph(format!("vertex {v} has Euler characteristic {}", self.chi(v))));
            }
        }
        Ok(())
    }

    /// The graph of the multicurve with curve `e` removed: the two sides of
    /// `e` are glued back together.
    pub fn contract_edge(&self, e: usize) -> DecompGraph {
        let (u, v) = self.edges[e];
        let mut edges: Vec<(usize, usize)> =
            self.edges.iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &p)| p).collect();
        if u == v {
            let mut genera = self.genera.clone();
            genera[u] += 1;
            return DecompGraph { genera, edges };
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let relabel = |w: usize| {
            let w = if w == gone { keep } else { w };
            if w > gone {
                w - 1
            } else {
                w
            }
        };
        for p in edges.iter_mut() {
            *p = (relabel(p.0), relabel(p.1));
        }
        let mut genera = self.genera.clone();
        genera[keep] += genera[gone];
        genera.remove(gone);
        DecompGraph { genera, edges }
    }

    /// Canonical form up to vertex relabelling and edge reordering
    /// (orientation forgotten), by exhaustive search over permutations.
    pub fn canonical_form(&self) -> (Vec<u32>, Vec<(usize, usize)>) {
        let n = self.vertex_count();
        (0..n)
            .permutations(n)
            .map(|perm| {
                let mut genera = vec![0; n];
                for (old, &new) in perm.iter().enumerate() {
                    genera[new] = self.genera[old];
                }
                let mut edges: Vec<(usize, usize)> = self
                    .edges
                    .iter()
                    .map(|&(a, b)| {
                        let (a, b) = (perm[a], perm[b]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                edges.sort();
                (genera, edges)
            })
            .min()
            .expect("at least one permutation")
    }

    pub fn is_isomorphic(&self, other: &DecompGraph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut genus_multiset = self.genera.clone();
        genus_multiset.sort();
        let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(a, b) in &self.edges {
            *mult.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        let mut multiedge_profile: Vec<(u32, bool)> = mult.iter().map(|(&(a, b), &m)| (m, a == b)).collect();
        multiedge_profile.sort();
        Fingerprint { vertices: self.vertex_count(), edges: self.edge_count(), genus_multiset, multiedge_profile }
    }
}

/// Genus of the closed surface assembled from the graph's components.
pub fn ambient_genus(g: &DecompGraph) -> Result<u32> {
    g.validate()?;
    let total = g.total_chi();
    if total % 2 != 0 || total > 2 {
        return Err(Error::MalformedGraph(format!("total Euler characteristic {total}")));
    }
    Ok(((2 - total) / 2) as u32)
}

/// Isomorphism-invariant summary of a decomposition graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub vertices: usize,
    pub edges: usize,
    pub genus_multiset: Vec<u32>,
    /// `(multiplicity, is_loop)` per adjacent vertex pair, sorted.
    pub multiedge_profile: Vec<(u32, bool)>,
}

/// A decomposition graph with a homology class on every (oriented) edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledMulticurve {
    pub graph: DecompGraph,
    pub classes: Vec<HVector>,
    pub x: HVector,
}

impl LabeledMulticurve {
    pub fn new(graph: DecompGraph, classes: Vec<HVector>, x: HVector) -> Result<Self> {
        if classes.len() != graph.edge_count() {
            return Err(Error::MalformedGraph(format!("{} classes for {} edges", classes.len(), graph.edge_count())));
        }
        Ok(LabeledMulticurve { graph, classes, x })
    }

    pub fn curve_count(&self) -> usize {
        self.classes.len()
    }

    /// Signed sum of the classes at vertex `v` (tail `+`, head `-`).
    pub fn vertex_boundary(&self, v: usize) -> HVector {
        self.graph
            .edges()
            .iter()
            .zip(&self.classes)
            .map(|(&(a, b), &c)| {
                let s = (a == v) as i64 - (b == v) as i64;
                s * c
            })
            .sum()
    }

    pub fn class_matrix(&self) -> IntMatrix {
        IntMatrix::from_cols(&self.classes.iter().map(|c| c.0.to_vec()).collect::<Vec<_>>(), DIM)
    }

    pub fn class_rank(&self) -> usize {
        if self.classes.is_empty() {
            0
        } else {
            rank(&self.class_matrix())
        }
    }

    /// Checks the vertex relations, pairwise disjointness at the homology
    /// level and the rank identity `rk = |E| - |V| + 1`.
    pub fn validate(&self) -> Result<()> {
        self.graph.validate()?;
        for v in 0..self.graph.vertex_count() {
            let s = self.vertex_boundary(v);
            if !s.is_zero() {
                return Err(Error::MalformedGraph(format!("boundary of component {v} is {s}, not 0")));
            }
        }
        for (i, c) in self.classes.iter().enumerate() {
            for d in &self.classes[i + 1..] {
                if intersection(c, d) != 0 {
                    return Err(Error::MalformedGraph(format!("classes {c} and {d} intersect")));
                }
            }
        }
        let expected = self.graph.edge_count() + 1 - self.graph.vertex_count();
        if self.class_rank() != expected {
            return Err(Error::MalformedGraph(format!(
                "class rank {} differs from |E| - |V| + 1 = {expected}",
                self.class_rank()
            )));
        }
        Ok(())
    }

    /// Number of components of positive genus.
    pub fn p_count(&self) -> usize {
        self.graph.genera().iter().filter(|&&h| h > 0).count()
    }

    /// Curves minus distinct classes (classes compared up to sign).
    pub fn bp_count(&self) -> usize {
        let distinct: BTreeSet<HVector> = self.classes.iter().map(|c| c.sign_normalized()).collect();
        self.classes.len() - distinct.len()
    }

    /// `3g - 3 - P - |M| + BP` for the ambient genus of the graph.
    pub fn cd_upper_bound(&self) -> Result<i64> {
        let g = ambient_genus(&self.graph)? as i64;
        Ok(3 * g - 3 - self.p_count() as i64 - self.curve_count() as i64 + self.bp_count() as i64)
    }

    /// Whether some nonzero nonnegative combination of the classes vanishes.
    ///
    /// Extreme rays of `{k >= 0 : A k = 0}` are supported on circuits, so it
    /// is enough to test every circuit's (one-dimensional) relation for a
    /// constant sign.
    pub fn has_nonnegative_relation(&self) -> bool {
        has_nonnegative_relation(&self.classes)
    }
}

pub fn has_nonnegative_relation(classes: &[HVector]) -> bool {
    let n = classes.len();
    let col_rank = |idx: &[usize]| -> usize {
        if idx.is_empty() {
            return 0;
        }
        rank(&IntMatrix::from_cols(&idx.iter().map(|&i| classes[i].0.to_vec()).collect::<Vec<_>>(), DIM))
    };
    for size in 1..=n {
        for subset in (0..n).combinations(size) {
            if col_rank(&subset) != size - 1 {
                continue;
            }
            let minimal = subset.iter().all(|&skip| {
                let rest: Vec<usize> = subset.iter().copied().filter(|&i| i != skip).collect();
                col_rank(&rest) == size - 1
            });
            if !minimal {
                continue;
            }
            let m = IntMatrix::from_cols(&subset.iter().map(|&i| classes[i].0.to_vec()).collect::<Vec<_>>(), DIM);
            let ker = kernel_basis(&m);
            debug_assert_eq!(ker.len(), 1);
            let k = &ker[0];
            if k.iter().all(|&c| c > 0) || k.iter().all(|&c| c < 0) {
                return true;
            }
        }
    }
    false
}

/// Labels every edge by the signed fundamental cycles through it. Non-tree
/// edge `j` (in edge order) gets the basis class `a_{j+1}`.
fn fundamental_labeling(g: &DecompGraph) -> Option<Vec<HVector>> {
    let n = g.vertex_count();
    // BFS spanning tree; parent[v] = (parent vertex, edge id, sign of walking down).
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree = vec![false; g.edge_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                tree[i] = true;
                parent[w] = Some((v, i));
                queue.push_back(w);
            }
        }
    }
    let non_tree: Vec<usize> = (0..g.edge_count()).filter(|&i| !tree[i]).collect();
    if non_tree.len() > 3 {
        return None;
    }
    let path_to_root = |mut v: usize| {
        // Signed edge walk from v up to the root, as (edge, sign along the walk).
        let mut walk = Vec::new();
        while let Some((p, e)) = parent[v] {
            let (a, _) = g.edges()[e];
            walk.push((e, if a == v { 1 } else { -1 }));
            v = p;
        }
        walk
    };
    let mut classes = vec![HVector::ZERO; g.edge_count()];
    for (j, &e) in non_tree.iter().enumerate() {
        let basis = HVector::a(j + 1);
        classes[e] = classes[e] + basis;
        let (a, b) = g.edges()[e];
        // The cycle runs tail -> head along e, then head -> root -> tail.
        for (te, s) in path_to_root(b) {
            classes[te] = classes[te] + s * basis;
        }
        for (te, s) in path_to_root(a) {
            classes[te] = classes[te] - s * basis;
        }
    }
    Some(classes)
}

/// All basic cycles as (support, coefficients) over the class list.
pub(crate) fn basic_cycle_supports(classes: &[HVector], x: &HVector) -> Vec<(Vec<usize>, Vec<i64>)> {
    let n = classes.len();
    let mut out = Vec::new();
    for size in 1..=n.min(DIM) {
        for subset in (0..n).combinations(size) {
            let m = IntMatrix::from_cols(&subset.iter().map(|&i| classes[i].0.to_vec()).collect::<Vec<_>>(), DIM);
            if let Some(k) = crate::lattice::solve_unique(&m, &x.0) {
                if k.iter().all(|&c| c >= 1) {
                    out.push((subset, k));
                }
            }
        }
    }
    out
}

/// Searches for a labelling of `g` satisfying the vertex relations and both
/// admissibility conditions, together with a class `x` for which every curve
/// lies in a basic 1-cycle.
pub fn realizability_check(g: &DecompGraph) -> Option<LabeledMulticurve> {
    if g.validate().is_err() || g.edge_count() == 0 {
        return None;
    }
    let base = fundamental_labeling(g)?;
    let flippable: Vec<usize> = (0..g.edge_count()).filter(|&e| !g.is_loop(e)).collect();
    for mask in 0u32..(1 << flippable.len()) {
        let mut edges = g.edges().to_vec();
        let mut classes = base.clone();
        for (bit, &e) in flippable.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                edges[e] = (edges[e].1, edges[e].0);
                classes[e] = -classes[e];
            }
        }
        if has_nonnegative_relation(&classes) {
            continue;
        }
        let graph = DecompGraph { genera: g.genera.clone(), edges };
        if let Some(x) = covering_class(&classes, g.vertex_count() - 1) {
            let m = LabeledMulticurve { graph, classes, x };
            debug_assert!(m.validate().is_ok());
            return Some(m);
        }
    }
    None
}

/// A class `x` (a small positive combination of the classes) such that
/// every curve lies in the support of a basic cycle and the basic cycles
/// span a polytope of dimension `dim`.
fn covering_class(classes: &[HVector], dim: usize) -> Option<HVector> {
    let n = classes.len();
    for size in 1..=n.min(DIM) {
        for subset in (0..n).combinations(size) {
            for coeffs in (0..size).map(|_| 1i64..=2).multi_cartesian_product() {
                let x: HVector = subset.iter().zip(&coeffs).map(|(&i, &k)| k * classes[i]).sum();
                if x.is_zero() {
                    continue;
                }
                let cycles = basic_cycle_supports(classes, &x);
                let covered: BTreeSet<usize> = cycles.iter().flat_map(|(s, _)| s.iter().copied()).collect();
                if covered.len() == n && affine_dim(&cycles, n) == dim {
                    return Some(x);
                }
            }
        }
    }
    None
}

pub(crate) fn affine_dim(cycles: &[(Vec<usize>, Vec<i64>)], n: usize) -> usize {
    if cycles.len() <= 1 {
        return 0;
    }
    let dense = |(s, k): &(Vec<usize>, Vec<i64>)| {
        let mut v = vec![0i64; n];
        for (&i, &c) in s.iter().zip(k) {
            v[i] = c;
        }
        v
    };
    let v0 = dense(&cycles[0]);
    let diffs: Vec<Vec<i64>> =
        cycles[1..].iter().map(|c| dense(c).iter().zip(&v0).map(|(a, b)| a - b).collect()).collect();
    rank(&IntMatrix::from_rows(&diffs, n))
}

/// One combinatorial type of the census.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusType {
    pub name: String,
    pub dim: usize,
    pub fingerprint: Fingerprint,
    pub witness: LabeledMulticurve,
}

impl CensusType {
    pub fn bp(&self) -> usize {
        self.witness.bp_count()
    }

    pub fn p_count(&self) -> usize {
        self.witness.p_count()
    }

    pub fn cd_bound(&self) -> i64 {
        self.witness.cd_upper_bound().expect("census witness is valid")
    }
}

/// Names used in the literature for the genus-3 types, keyed by shape.
fn type_name(g: &DecompGraph) -> String {
    let fp = g.fingerprint();
    let e = fp.edges;
    let has_loop = fp.multiedge_profile.iter().any(|&(_, l)| l);
    let max_between = fp.multiedge_profile.iter().filter(|&&(_, l)| !l).map(|&(m, _)| m).max().unwrap_or(0);
    match fp.vertices {
        1 => format!("M_0^{e}"),
        2 => match max_between {
            2 => format!("M_1^{e}"),
            3 => format!("N_1^{e}"),
            _ => "M'_1".to_string(),
        },
        3 if e == 4 => "M_2^4".to_string(),
        3 if has_loop => "M_2^5".to_string(),
        3 => "M'_2".to_string(),
        _ if max_between >= 2 => "M'_3".to_string(),
        _ => "M''_3".to_string(),
    }
}

/// Connected genus-3 multicurve types whose cells have dimension `p`.
///
/// Graphs with `p + 1` vertices, every `chi <= -1` and total `chi = -4` are
/// enumerated, reduced up to isomorphism and kept when a realizing labelling
/// exists. Returns an empty list for `p > 3`.
pub fn classify_types(p: usize) -> Vec<CensusType> {
    const GENUS: u32 = 3;
    let n = p + 1;
    // Every component has chi <= -1 and the total is 2 - 2g = -4.
    if n > 2 * GENUS as usize - 2 {
        return Vec::new();
    }
    let mut found: BTreeMap<(Vec<u32>, Vec<(usize, usize)>), DecompGraph> = BTreeMap::new();
    // Euler characteristic: sum(h) + |E| - |V| = g - 1.
    for genera in (0..n).map(|_| 0..=GENUS).multi_cartesian_product() {
        let hsum: u32 = genera.iter().sum();
        let edges = (GENUS as i64 - 1 + n as i64) - hsum as i64;
        if edges < 0 {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        for chosen in pairs.iter().copied().combinations_with_replacement(edges as usize) {
            let g = DecompGraph { genera: genera.clone(), edges: chosen };
            if g.validate().is_err() {
                continue;
            }
            found.entry(g.canonical_form()).or_insert(g);
        }
    }
    let mut out: Vec<CensusType> = found
        .into_values()
        .filter_map(|g| {
            let witness = realizability_check(&g)?;
            Some(CensusType { name: type_name(&g), dim: p, fingerprint: g.fingerprint(), witness })
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        let g = DecompGraph::new(vec![3], vec![]).unwrap();
        assert_eq!(ambient_genus(&g).unwrap(), 3);
        let k4 = DecompGraph::new(vec![0; 4], vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(ambient_genus(&k4).unwrap(), 3);
        let m = DecompGraph::new(vec![0, 0, 0], vec![(0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]).unwrap();
        assert_eq!((0..3).map(|v| m.chi(v)).collect::<Vec<_>>(), vec![-1, -1, -2]);
        assert_eq!(ambient_genus(&m).unwrap(), 3);
        let annulus = DecompGraph::new(vec![0, 1], vec![(0, 1), (0, 1)]).unwrap();
        assert!(ambient_genus(&annulus).is_err());
    }

    #[test]
    fn contraction_glues_sides() {
        let k4 = DecompGraph::new(vec![0; 4], vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = k4.contract_edge(0);
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.total_chi(), -4);
        let one = DecompGraph::new(vec![2], vec![(0, 0)]).unwrap();
        assert_eq!(one.contract_edge(0).genera(), &[3]);
    }

    #[test]
    fn bridges_are_not_realizable() {
        let g = DecompGraph::new(vec![1, 2], vec![(0, 1)]).unwrap();
        assert!(g.is_bridge(0));
        assert!(realizability_check(&g).is_none());
        let loop1 = DecompGraph::new(vec![2], vec![(0, 0)]).unwrap();
        let w = realizability_check(&loop1).unwrap();
        assert_eq!(w.classes.len(), 1);
        assert_eq!(w.x, w.classes[0]);
    }

    #[test]
    fn nonnegative_relations() {
        let a1 = HVector::a(1);
        assert!(has_nonnegative_relation(&[a1, -a1]));
        assert!(!has_nonnegative_relation(&[a1, a1]));
        assert!(has_nonnegative_relation(&[HVector::ZERO]));
        let a2 = HVector::a(2);
        assert!(has_nonnegative_relation(&[a1, a2, -(a1 + a2)]));
        assert!(!has_nonnegative_relation(&[a1, a2, a1 + a2]));
    }

    #[test]
    fn fundamental_labels_satisfy_relations() {
        let k4 = DecompGraph::new(vec![0; 4], vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let classes = fundamental_labeling(&k4).unwrap();
        let m = LabeledMulticurve::new(k4, classes, HVector::a(1)).unwrap();
        m.validate().unwrap();
        assert_eq!(m.class_rank(), 3);
    }

    #[test]
    fn census_counts() {
        let counts: Vec<usize> = (0..=4).map(|p| classify_types(p).len()).collect();
        assert_eq!(counts, vec![3, 6, 3, 2, 0]);
    }

    #[test]
    fn census_names_and_bounds() {
        let cd: BTreeMap<String, (i64, usize)> =
            (0..=3).flat_map(classify_types).map(|t| (t.name.clone(), (t.cd_bound(), t.bp()))).collect();
        assert_eq!(cd["N_1^3"], (2, 0));
        assert_eq!(cd["N_1^4"], (2, 0));
        assert_eq!(cd["M'_1"], (2, 0));
        assert_eq!(cd["M_0^2"], (3, 0));
        assert_eq!(cd["M'_3"], (1, 1));
        assert_eq!(cd["M''_3"], (0, 0));
        assert_eq!(cd.len(), 14);
    }
}
