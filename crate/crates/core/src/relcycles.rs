//! Relative cycles on the sphere with `2g` marked points `p_1..p_g`,
//! `q_1..q_g`, modelled at the level of endpoint matchings, and the arc
//! labels attached to splittings.

use crate::error::{Error, Result};
use crate::lattice::{Splitting, SplittingKey};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Arcs `p_i -> q_j` of a multiarc, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiarcSupport {
    pub g: usize,
    /// `(p, q, multiplicity)`, indices in `1..=g`.
    pub pairs: Vec<(usize, usize, u32)>,
}

impl MultiarcSupport {
    /// Whether the arcs use every `p` once as a source and every `q` once
    /// as a sink, so that the boundary is `sum (q_i - p_i)`.
    pub fn satisfies_boundary_condition(&self) -> bool {
        let in_range = self.pairs.iter().all(|&(p, q, _)| (1..=self.g).contains(&p) && (1..=self.g).contains(&q));
        let count = |f: fn(&(usize, usize, u32)) -> usize| {
            (1..=self.g).all(|i| self.pairs.iter().filter(|t| f(t) == i).map(|t| t.2).sum::<u32>() == 1)
        };
        in_range && count(|t| t.0) && count(|t| t.1)
    }
}

/// All matching-level supports: one arc `p_i -> q_{σ(i)}` per bijection `σ`.
pub fn enumerate_matching_supports(g: i64) -> Result<Vec<MultiarcSupport>> {
    if g <= 0 {
        return Err(Error::InvalidParameters(format!("genus {g} must be positive")));
    }
    let g = g as usize;
    Ok((1..=g)
        .permutations(g)
        .map(|sigma| MultiarcSupport { g, pairs: sigma.iter().enumerate().map(|(i, &q)| (i + 1, q, 1)).collect() })
        .collect())
}

/// `dim σ + cd Stab(σ) <= 2g - 3`.
pub fn dim_cd_inequality(dim_sigma: i64, cd_stab: i64, g: i64) -> bool {
    dim_sigma + cd_stab <= 2 * g - 3
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingArcLabel {
    pub splitting: Splitting,
    pub key: SplittingKey,
    pub arcs: MultiarcSupport,
}

/// One label per splitting. The arcs join `p_i` to `q_i` inside the `i`-th
/// part (in canonical order), so labels are keyed by the canonical form.
pub fn make_arc_labels(splittings: &[Splitting]) -> Result<Vec<SplittingArcLabel>> {
    let mut seen = BTreeSet::new();
    let arcs = MultiarcSupport { g: 3, pairs: vec![(1, 1, 1), (2, 2, 1), (3, 3, 1)] };
    splittings
        .iter()
        .map(|s| {
            let key = s.key();
            if !seen.insert(key.clone()) {
                return Err(Error::DuplicateKey(format!("splitting {key:?} occurs twice")));
            }
            Ok(SplittingArcLabel { splitting: s.canonical(), key, arcs: arcs.clone() })
        })
        .collect()
}
