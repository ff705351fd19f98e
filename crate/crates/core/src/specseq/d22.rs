//! `d^1_{2,2}` on the ladder: each 2-cell tensored with `A_U` maps to the
//! signed sum of its boundary edges, every face carrying the same `A_U`.
//!
//! Two families of sources are modelled on the same ladder shape: cells of
//! type `M_2^4` and cells of type `M_2^5`. Their faces are of different
//! types, so their images must land on disjoint sets of labels; this is
//! checked on every assembled matrix.

use super::{admissible_subgroups, BasisLabel, E1Truncation, GeneratorTag, SparseIntMatrix, TruncationParams};
use crate::cycles::{build_ladder, LadderComplex, LadderEdgeTag};
use crate::error::{Error, Result};
use crate::lattice::SymplecticSubgroup;
use std::collections::{BTreeSet, HashMap};

/// Source families and the face types their boundary edges carry:
/// `(name, d_k face, c/e face, outer face)`.
pub const FAMILIES: [(&str, &str, &str, &str); 2] =
    [("M_2^4", "M_1^3[α∉U]", "N_1^3", "N_1^3"), ("M_2^5", "M_1^3[α∈U]", "N_1^4", "M_1^4")];

fn face_type(family: usize, tag: LadderEdgeTag) -> &'static str {
    let (_, d, ce, outer) = FAMILIES[family];
    match tag {
        LadderEdgeTag::D(_) => d,
        LadderEdgeTag::Outer(_) => outer,
        _ => ce,
    }
}

fn cell_orbit(family: usize, ladder: &LadderComplex, c: usize) -> String {
    format!("{} {:?}", FAMILIES[family].0, ladder.cells[c].tag)
}

fn edge_orbit(family: usize, ladder: &LadderComplex, e: usize) -> String {
    let tag = ladder.edges[e].tag;
    format!("{} in {} {:?}", face_type(family, tag), FAMILIES[family].0, tag)
}

/// Admissible `U` for the cells of the ladder: all its curves lie in
/// `span(α, y)`, so the conditions are those of one rectangle.
pub fn ladder_subgroups(ladder: &LadderComplex, height: i64) -> Result<Vec<SymplecticSubgroup>> {
    let c = ladder
        .cells
        .iter()
        .position(|c| c.horizontal)
        .ok_or_else(|| Error::MalformedCell("ladder has no horizontal cell".into()))?;
    Ok(admissible_subgroups(&ladder.cell_instance(c)?, height))
}

fn context(p: &TruncationParams) -> Result<(LadderComplex, Vec<SymplecticSubgroup>)> {
    let ladder = build_ladder(p.mn.0, p.mn.1, p.k)?;
    let us = ladder_subgroups(&ladder, p.height)?;
    Ok((ladder, us))
}

pub(super) fn source_basis(p: &TruncationParams) -> Result<Vec<BasisLabel>> {
    let (ladder, us) = context(p)?;
    let mut out = Vec::new();
    for f in 0..FAMILIES.len() {
        for u in &us {
            for c in 0..ladder.cells.len() {
                out.push(BasisLabel::new(cell_orbit(f, &ladder, c), GeneratorTag::A2 { u: u.clone() }));
            }
        }
    }
    Ok(out)
}

pub(super) fn target_basis(p: &TruncationParams) -> Result<Vec<BasisLabel>> {
    let (ladder, us) = context(p)?;
    let mut out = Vec::new();
    for f in 0..FAMILIES.len() {
        for u in &us {
            for e in 0..ladder.edges.len() {
                out.push(BasisLabel::new(edge_orbit(f, &ladder, e), GeneratorTag::A2 { u: u.clone() }));
            }
        }
    }
    Ok(out)
}

/// Matrix of `d^1_{2,2}` from `src` into `target` over `ladder`.
pub fn d22_apply(src: &E1Truncation, target: &E1Truncation, ladder: &LadderComplex) -> Result<SparseIntMatrix> {
    let mut cells: HashMap<String, (usize, usize)> = HashMap::new();
    for f in 0..FAMILIES.len() {
        for c in 0..ladder.cells.len() {
            cells.insert(cell_orbit(f, ladder, c), (f, c));
        }
    }
    let idx = target.index();
    let mut m = SparseIntMatrix::new(target.basis.clone(), src.basis.clone());
    let mut hit: [BTreeSet<&str>; 2] = Default::default();
    for (col, l) in src.basis.iter().enumerate() {
        let GeneratorTag::A2 { u } = &l.tag else {
            return Err(Error::Admissibility(format!("{l:?} does not carry A_U")));
        };
        let &(f, c) = cells.get(&l.orbit).ok_or_else(|| Error::TruncationOverflow {
            what: format!("source cell {} is not in the ladder", l.orbit),
            suggested_k: ladder.k_trunc + 1,
        })?;
        for &(e, s) in &ladder.cells[c].boundary {
            let lab = BasisLabel::new(edge_orbit(f, ladder, e), GeneratorTag::A2 { u: u.clone() });
            let r = *idx.get(&lab).ok_or_else(|| Error::TruncationOverflow {
                what: format!("face {} lies outside the (1,2) truncation", lab.orbit),
                suggested_k: ladder.k_trunc + 1,
            })?;
            m.add(r, col, s);
            hit[f].insert(face_type(f, ladder.edges[e].tag));
        }
    }
    if !hit[0].is_disjoint(&hit[1]) {
        return Err(Error::Inconsistent(format!(
            "images of the two families share face types {:?}",
            hit[0].intersection(&hit[1]).collect::<Vec<_>>()
        )));
    }
    Ok(m)
}
