//! `d^1_{3,1}`: from the bounding-pair generators on `M'_3` cells to the
//! family `Q` of `M'_2` cells.
//!
//! Removing either curve of the bounding pair of `M'_3` leaves an `M'_2`
//! cell, and the two faces enter the boundary with opposite signs. Inside a
//! family, the `M'_3` orbit indexed by `k` has faces `Q(2f, k)` and
//! `Q(2f + 1, -k)`: conjugating by `T_δ^k` moves `γ1` to `T_δ^k(γ1)` on one
//! face and the roles are mirrored on the other.

use super::{BasisLabel, GeneratorTag, SparseIntMatrix, TruncationParams};
use crate::cycles::{boundary_faces, CellInstance};
use crate::error::{Error, Result};
use crate::surface::classify_types;
use std::sync::OnceLock;

/// Signs of the two `M'_2` faces of each `M'_3` type, obtained by removing
/// one curve of its bounding pair.
pub fn m3_prime_face_signs() -> Result<Vec<(i64, i64)>> {
    let census2 = classify_types(2);
    let m2p =
        census2.iter().find(|t| t.name == "M'_2").ok_or_else(|| Error::Inconsistent("census lacks M'_2".into()))?;
    let mut out = Vec::new();
    for t in classify_types(3).into_iter().filter(|t| t.name == "M'_3") {
        let cell = CellInstance::from_multicurve(&t.witness)?;
        let classes = &cell.classes;
        let is_bp = |i: usize| {
            (0..classes.len()).any(|j| j != i && classes[j].sign_normalized() == classes[i].sign_normalized())
        };
        let mut signs = Vec::new();
        for (s, f) in boundary_faces(&cell)? {
            let removed: Vec<usize> = cell.curve_ids.iter().copied().filter(|c| !f.curve_ids.contains(c)).collect();
            if removed.len() != 1 || !is_bp(removed[0]) {
                continue;
            }
            let g = f.graph.as_ref().expect("census faces keep their graph");
            if g.fingerprint() != m2p.fingerprint {
                return Err(Error::Inconsistent("bounding-pair face of M'_3 is not of type M'_2".into()));
            }
            signs.push(s);
        }
        match signs[..] {
            [a, b] if a == -b => out.push((a, b)),
            _ => return Err(Error::Inconsistent(format!("unexpected bounding-pair faces {signs:?}"))),
        }
    }
    Ok(out)
}

fn families() -> &'static Vec<(i64, i64)> {
    static F: OnceLock<Vec<(i64, i64)>> = OnceLock::new();
    F.get_or_init(|| m3_prime_face_signs().expect("census is consistent"))
}

fn source_orbit(f: usize, k: i64) -> String {
    format!("M'_3 #{f} k={k}")
}

fn target_orbit(j: usize) -> String {
    format!("M'_2 #{j}")
}

pub(super) fn source_basis(p: &TruncationParams) -> Vec<BasisLabel> {
    (0..families().len())
        .flat_map(|f| (-p.k..=p.k).map(move |k| BasisLabel::new(source_orbit(f, k), GeneratorTag::BPTwist { k: 0 })))
        .collect()
}

pub(super) fn target_basis(p: &TruncationParams) -> Vec<BasisLabel> {
    (0..2 * families().len())
        .flat_map(|j| (-p.k..=p.k).map(move |k| BasisLabel::new(target_orbit(j), GeneratorTag::BPTwist { k })))
        .collect()
}

fn parse_source(l: &BasisLabel) -> Result<(usize, i64)> {
    let bad = || Error::Admissibility(format!("{l:?} is not an M'_3 generator"));
    if l.tag != (GeneratorTag::BPTwist { k: 0 }) {
        return Err(bad());
    }
    let rest = l.orbit.strip_prefix("M'_3 #").ok_or_else(bad)?;
    let (f, k) = rest.split_once(" k=").ok_or_else(bad)?;
    Ok((f.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?))
}

/// Matrix of `d^1_{3,1}` from `src` into `target`.
pub fn d31_apply(src: &super::E1Truncation, target: &super::E1Truncation) -> Result<SparseIntMatrix> {
    let idx = target.index();
    let mut m = SparseIntMatrix::new(target.basis.clone(), src.basis.clone());
    let fams = families();
    for (c, l) in src.basis.iter().enumerate() {
        let (f, k) = parse_source(l)?;
        let &(s1, s2) = fams.get(f).ok_or_else(|| Error::Admissibility(format!("no M'_3 family {f}")))?;
        for (j, kk, s) in [(2 * f, k, s1), (2 * f + 1, -k, s2)] {
            let lab = BasisLabel::new(target_orbit(j), GeneratorTag::BPTwist { k: kk });
            let r = *idx.get(&lab).ok_or_else(|| Error::TruncationOverflow {
                what: format!("{lab:?} lies outside the (2,1) truncation"),
                suggested_k: kk.abs(),
            })?;
            m.add(r, c, s);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::super::{build_e1, check_injective, E1Truncation, Position};
    use super::*;

    #[test]
    fn faces_have_opposite_signs() {
        let f = m3_prime_face_signs().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0, -f[0].1);
    }

    #[test]
    fn basis_sizes() {
        let p = TruncationParams { k: 2, ..Default::default() };
        assert_eq!(build_e1(Position::new(2, 1), &p).unwrap().len(), 10);
        let p0 = TruncationParams { k: 0, ..Default::default() };
        assert_eq!(build_e1(Position::new(3, 1), &p0).unwrap().len(), 1);
    }

    #[test]
    fn columns_are_disjoint_differences() {
        let p = TruncationParams { k: 3, ..Default::default() };
        let src = build_e1(Position::new(3, 1), &p).unwrap();
        let tgt = build_e1(Position::new(2, 1), &p).unwrap();
        let m = d31_apply(&src, &tgt).unwrap();
        let mut used = std::collections::BTreeSet::new();
        for c in 0..src.len() {
            let col = m.column(c);
            assert_eq!(col.len(), 2);
            assert_eq!(col.iter().map(|&(_, v)| v).sum::<i64>(), 0);
            for (r, _) in col {
                assert!(used.insert(r));
            }
        }
        assert!(check_injective(&m));
    }

    #[test]
    fn overflow_and_empty() {
        let big = TruncationParams { k: 3, ..Default::default() };
        let small = TruncationParams { k: 2, ..Default::default() };
        let src = build_e1(Position::new(3, 1), &big).unwrap();
        let tgt = build_e1(Position::new(2, 1), &small).unwrap();
        assert!(matches!(d31_apply(&src, &tgt), Err(Error::TruncationOverflow { suggested_k: 3, .. })));
        let empty = E1Truncation::new(Position::new(3, 1), vec![], small).unwrap();
        let m = d31_apply(&empty, &tgt).unwrap();
        assert!(m.entries.is_empty());
    }
}
