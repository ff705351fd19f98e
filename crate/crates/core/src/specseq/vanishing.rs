//! Entries of the `E^1` page killed by the cohomological dimension bound.

use crate::cycles::{cell_dim, restrict_to_alpha, AlphaExtension, CellInstance};
use crate::error::{Error, Result};
use crate::lattice::HVector;
use crate::surface::{classify_types, LabeledMulticurve};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingEntry {
    pub type_name: String,
    pub dim: usize,
    pub q: usize,
    pub cd_bound: i64,
    /// `H_q` of the stabilizer vanishes because `q` exceeds its cd.
    pub vanishes: bool,
}

/// `H_q(Stab)` for every census type and `q <= 4`.
pub fn vanishing_census() -> Vec<VanishingEntry> {
    let mut out = Vec::new();
    for p in 0..=3 {
        for t in classify_types(p) {
            let cd = t.cd_bound();
            for q in 0..=4 {
                out.push(VanishingEntry {
                    type_name: t.name.clone(),
                    dim: p,
                    q,
                    cd_bound: cd,
                    vanishes: q as i64 > cd,
                });
            }
        }
    }
    out
}

/// A vertex of the auxiliary complex together with the curve `α` added to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TildeWitness {
    pub type_name: String,
    pub multicurve: LabeledMulticurve,
    pub extension: AlphaExtension,
    /// cd bound for the stabilizer of `M ∪ α`.
    pub extended_cd: i64,
}

/// For each vertex type, a labelling with `x = a1`, `y = a2` that is
/// disjoint from `α` and the cd bound of the stabilizer of `M ∪ α`.
///
/// The stabilizer of a vertex in the auxiliary complex fixes `α` too, so
/// `H_4` of every vertex stabilizer vanishes once these bounds are `< 4`.
pub fn tilde_e04_witnesses() -> Result<Vec<TildeWitness>> {
    let x = HVector::a(1);
    let y = HVector::a(2);
    let r = restrict_to_alpha(x, x, y)?;
    // Classes in span(a1, a2, a3) are pairwise orthogonal and orthogonal to x.
    let candidates: Vec<HVector> = (0..27)
        .map(|n| HVector::new([n % 3 - 1, 0, n / 3 % 3 - 1, 0, n / 9 - 1, 0]))
        .filter(|v| !v.is_zero())
        .collect();
    let mut out = Vec::new();
    for t in classify_types(0) {
        let g = &t.witness.graph;
        let found = candidates.iter().copied().combinations(g.edge_count()).find_map(|classes| {
            let m = LabeledMulticurve::new(g.clone(), classes, y).ok()?;
            m.validate().ok()?;
            let cell = CellInstance::from_multicurve(&m).ok()?;
            cell_dim(&cell).ok()?;
            let used: BTreeSet<usize> = cell.verts.iter().flat_map(|v| v.support.iter().copied()).collect();
            if used.len() != m.classes.len() {
                return None;
            }
            let ext = r.witness(&m)?;
            Some((m, ext))
        });
        let (m, ext) = found.ok_or_else(|| Error::Inconsistent(format!("no α-disjoint labelling of {}", t.name)))?;
        let extended_cd = ext.extended.cd_upper_bound()?;
        out.push(TildeWitness { type_name: t.name.clone(), multicurve: m, extension: ext, extended_cd });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry<'a>(t: &'a [VanishingEntry], name: &str, q: usize) -> &'a VanishingEntry {
        t.iter().find(|e| e.type_name == name && e.q == q).unwrap()
    }

    #[test]
    fn census_zeros() {
        let t = vanishing_census();
        assert!(entry(&t, "N_1^3", 3).vanishes);
        assert!(entry(&t, "N_1^4", 3).vanishes);
        assert!(entry(&t, "M'_1", 3).vanishes);
        assert!(entry(&t, "M_0^2", 4).vanishes);
        assert!(entry(&t, "M_0^3", 4).vanishes);
        assert!(entry(&t, "M''_3", 1).vanishes);
        assert!(!entry(&t, "M_0^1", 4).vanishes);
    }

    #[test]
    fn auxiliary_vertices_have_small_cd() {
        let w = tilde_e04_witnesses().unwrap();
        assert_eq!(w.len(), 3);
        for t in &w {
            assert!(t.extended_cd < 4, "{} {}", t.type_name, t.extended_cd);
            assert_eq!(t.extension.extended.classes[t.extension.alpha_edge].sign_normalized(), HVector::a(1));
        }
    }
}
