//! `d^1_{1,3}` and its counterpart on the auxiliary page, organised by
//! splittings of `H`.
//!
//! For a splitting `U1 ⊕ U2 ⊕ U3` write `x = x1 + x2 + x3`. The page
//! `E^1_{1,3}` has one generator per nonzero component (one, two or three
//! for types (a), (b), (c)). Only type (c) generators survive the
//! differential, all three landing on the abelian cycle `A_{U1,U3,U2}` of
//! the vertex `P_{α1 ∪ α2 ∪ α3}`. On the auxiliary page, splittings with
//! `x ∈ U1` are sorted by the components of `y` and the images follow the
//! same pattern with bounding pairs `β_j`.

use super::{
    splitting_label, truncated_splittings, BasisLabel, E1Truncation, GeneratorTag, Position, SparseIntMatrix,
    TruncationParams,
};
use crate::error::{Error, Result};
use crate::lattice::{
    hermite_rows, splitting_type_wrt_x, splitting_type_wrt_y, HVector, Splitting, SymplecticSubgroup, XType, YType,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// One generator of a source page with the image of the underlying
/// (uncanonicalised) element.
#[derive(Debug, Clone)]
struct Generator {
    label: BasisLabel,
    /// The element written in the literature equals `sign · label`.
    sign: i64,
    image: Vec<(BasisLabel, i64)>,
    splitting: usize,
}

/// Expected kernel vectors of one splitting, as combinations of the
/// literature elements (indices into that splitting's generators).
type Pattern = Vec<Vec<(usize, i64)>>;

struct Family {
    gens: Vec<Generator>,
    patterns: Vec<(Vec<usize>, Pattern)>,
}

fn pair(orbit: String, u: &SymplecticSubgroup, v: &SymplecticSubgroup) -> Result<(BasisLabel, i64)> {
    let (s, tag) = GeneratorTag::a2_pair(u, v)?;
    Ok((BasisLabel::new(orbit, tag), s))
}

/// `A_{V1,V2,V3}` for an ordered triple of parts, as (label, sign) with the
/// tag keyed by the unordered splitting.
fn triple(orbit: String, s: &Splitting, order: [usize; 3]) -> (BasisLabel, i64) {
    let keys = s.part_keys();
    let mut idx = order;
    // Sign of the permutation sorting the parts by key.
    let mut sign = 1;
    for i in 0..3 {
        for j in i + 1..3 {
            if keys[idx[i]] > keys[idx[j]] {
                idx.swap(i, j);
                sign = -sign;
            }
        }
    }
    (BasisLabel::new(orbit, GeneratorTag::a3(s)), sign)
}

fn push_gen(
    gens: &mut Vec<Generator>,
    splitting: usize,
    (label, sign): (BasisLabel, i64),
    image: Vec<(BasisLabel, i64)>,
) {
    gens.push(Generator { label, sign, image, splitting });
}

/// The three generators of a type (c) splitting, in the order of its parts:
/// the `j`-th one doubles `α_j` and carries `A_{U_{j+1}, U_{j+2}}`.
fn type_c_elements(s: &Splitting) -> Result<[(BasisLabel, i64); 3]> {
    let u = |i: usize| s.part(i - 1).clone();
    let sl = splitting_label(s);
    Ok([
        pair(format!("P(α1∪α'1∪α2∪α3) {sl}"), &u(2), &u(3))?,
        pair(format!("P(α1∪α2∪α'2∪α3) {sl}"), &u(3), &u(1))?,
        pair(format!("P(α1∪α2∪α3∪α'3) {sl}"), &u(1), &u(2))?,
    ])
}

/// Literature elements `g_1, g_2, g_3` of a splitting of type (c) with
/// respect to `x`, with parts in canonical order, each as `(label, sign)`
/// meaning `g_j = sign · label`.
pub(crate) fn type_c_generators(x: &HVector, s: &Splitting) -> Result<[(BasisLabel, i64); 3]> {
    let s = s.canonical();
    let (t, _) = splitting_type_wrt_x(x, &s)?;
    if t != XType::C {
        return Err(Error::Precondition(format!("splitting is of type {t:?} with respect to x, not C")));
    }
    type_c_elements(&s)
}

fn family_x(p: &TruncationParams) -> Result<Family> {
    let mut gens = Vec::new();
    let mut patterns = Vec::new();
    for (si, s) in truncated_splittings(p).iter().enumerate() {
        let (t, perm) = splitting_type_wrt_x(&p.x, s)?;
        let s = s.permuted(perm);
        let u = |i: usize| s.part(i - 1).clone();
        let sl = splitting_label(&s);
        let start = gens.len();
        let pattern: Pattern = match t {
            XType::A => {
                push_gen(&mut gens, si, pair(format!("P(α1∪α'1) {sl}"), &u(2), &u(3))?, vec![]);
                vec![vec![(0, 1)]]
            }
            XType::B => {
                push_gen(&mut gens, si, pair(format!("P(α1∪α'1∪α2) {sl}"), &u(2), &u(3))?, vec![]);
                push_gen(&mut gens, si, pair(format!("P(α1∪α2∪α'2) {sl}"), &u(1), &u(3))?, vec![]);
                vec![vec![(0, 1)], vec![(1, 1)]]
            }
            XType::C => {
                let img = vec![triple(format!("P(α1∪α2∪α3) {sl}"), &s, [0, 2, 1])];
                for g in type_c_elements(&s)? {
                    push_gen(&mut gens, si, g, img.clone());
                }
                vec![vec![(0, 1), (1, -1)], vec![(1, 1), (2, -1)]]
            }
        };
        patterns.push(((start..gens.len()).collect(), pattern));
    }
    Ok(Family { gens, patterns })
}

fn family_y(p: &TruncationParams) -> Result<Family> {
    let mut gens = Vec::new();
    let mut patterns = Vec::new();
    for (si, s) in truncated_splittings(p).iter().enumerate() {
        if splitting_type_wrt_x(&p.x, s)?.0 != XType::A {
            continue;
        }
        // Splittings with y inside the part of x carry no generator.
        let Ok((t, perm)) = splitting_type_wrt_y(&p.x, &p.y, s) else { continue };
        let s = s.permuted(perm);
        let u = |i: usize| s.part(i - 1).clone();
        let sl = splitting_label(&s);
        let start = gens.len();
        let diff = |a: String,
                    b: String,
                    u2: &SymplecticSubgroup,
                    u3: &SymplecticSubgroup|
         -> Result<Vec<(BasisLabel, i64)>> {
            let (la, sa) = pair(a, u2, u3)?;
            let (lb, sb) = pair(b, u2, u3)?;
            Ok(vec![(la, sa), (lb, -sb)])
        };
        let pattern: Pattern = match t {
            YType::One => {
                push_gen(&mut gens, si, pair(format!("P(β2∪β'2) {sl}"), &u(1), &u(3))?, vec![]);
                vec![vec![(0, 1)]]
            }
            YType::Two => {
                let img = diff(format!("P(β1∪β2) {sl}"), format!("P(β'1∪β2) {sl}"), &u(2), &u(3))?;
                push_gen(&mut gens, si, pair(format!("P(β1∪β'1∪β2) {sl}"), &u(2), &u(3))?, img);
                push_gen(&mut gens, si, pair(format!("P(β1∪β2∪β'2) {sl}"), &u(1), &u(3))?, vec![]);
                vec![vec![(1, 1)]]
            }
            YType::Three => {
                let img = vec![triple(format!("P(β2∪β3) {sl}"), &s, [0, 2, 1])];
                push_gen(&mut gens, si, pair(format!("P(β2∪β'2∪β3) {sl}"), &u(3), &u(1))?, img.clone());
                push_gen(&mut gens, si, pair(format!("P(β2∪β3∪β'3) {sl}"), &u(1), &u(2))?, img);
                vec![vec![(0, 1), (1, -1)]]
            }
            YType::Four => {
                let img = diff(format!("P(β1∪β2∪β3) {sl}"), format!("P(β'1∪β2∪β3) {sl}"), &u(2), &u(3))?;
                push_gen(&mut gens, si, pair(format!("P(β1∪β'1∪β2∪β3) {sl}"), &u(2), &u(3))?, img);
                let img = vec![triple(format!("P(β1∪β2∪β3) {sl}"), &s, [0, 2, 1])];
                push_gen(&mut gens, si, pair(format!("P(β1∪β2∪β'2∪β3) {sl}"), &u(3), &u(1))?, img.clone());
                push_gen(&mut gens, si, pair(format!("P(β1∪β2∪β3∪β'3) {sl}"), &u(1), &u(2))?, img);
                vec![vec![(1, 1), (2, -1)]]
            }
        };
        patterns.push(((start..gens.len()).collect(), pattern));
    }
    Ok(Family { gens, patterns })
}

fn targets(f: &Family) -> Vec<BasisLabel> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in &f.gens {
        for (l, _) in &g.image {
            if seen.insert(l.clone()) {
                out.push(l.clone());
            }
        }
    }
    out
}

pub(super) fn source_basis(p: &TruncationParams) -> Result<Vec<BasisLabel>> {
    Ok(family_x(p)?.gens.into_iter().map(|g| g.label).collect())
}

pub(super) fn target_basis(p: &TruncationParams) -> Result<Vec<BasisLabel>> {
    Ok(targets(&family_x(p)?))
}

pub(super) fn tilde_source_basis(p: &TruncationParams) -> Result<Vec<BasisLabel>> {
    Ok(family_y(p)?.gens.into_iter().map(|g| g.label).collect())
}

pub(super) fn tilde_target_basis(p: &TruncationParams) -> Result<Vec<BasisLabel>> {
    Ok(targets(&family_y(p)?))
}

fn assemble(f: &Family, src: &E1Truncation, target: &E1Truncation) -> Result<SparseIntMatrix> {
    let by_label: HashMap<&BasisLabel, &Generator> = f.gens.iter().map(|g| (&g.label, g)).collect();
    let idx = target.index();
    let mut m = SparseIntMatrix::new(target.basis.clone(), src.basis.clone());
    for (c, l) in src.basis.iter().enumerate() {
        let g = by_label
            .get(l)
            .ok_or_else(|| Error::Admissibility(format!("{} is not a classified generator", l.orbit)))?;
        for (t, v) in &g.image {
            let r = *idx.get(t).ok_or_else(|| Error::TruncationOverflow {
                what: format!("image {} lies outside the target truncation", t.orbit),
                suggested_k: src.params.k,
            })?;
            // The basis element is sign times the literature element.
            m.add(r, c, g.sign * v);
        }
    }
    Ok(m)
}

/// Matrix of `d^1_{1,3}`.
pub fn d13_apply(src: &E1Truncation, target: &E1Truncation) -> Result<SparseIntMatrix> {
    assemble(&family_x(&src.params)?, src, target)
}

/// Matrix of the differential on the auxiliary page.
pub fn d13_tilde_apply(src: &E1Truncation, target: &E1Truncation) -> Result<SparseIntMatrix> {
    assemble(&family_y(&src.params)?, src, target)
}

/// Kernel of a differential together with its comparison against the
/// expected basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub position: Position,
    pub basis_size: usize,
    pub rank: usize,
    pub kernel_rank: usize,
    pub expected_kernel_rank: usize,
    pub matches_pattern: bool,
    pub kernel_basis: Vec<Vec<(BasisLabel, i64)>>,
}

/// Expected kernel vectors in the basis of `src`, from the pattern per splitting.
fn expected(f: &Family) -> Vec<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for (cols, pattern) in &f.patterns {
        for v in pattern {
            // Literature element g_i = sign_i · e_i.
            out.push(v.iter().map(|&(i, c)| (cols[i], c * f.gens[cols[i]].sign)).collect());
        }
    }
    out
}

pub fn expected_kernel_13(p: &TruncationParams) -> Result<Vec<Vec<(usize, i64)>>> {
    Ok(expected(&family_x(p)?))
}

pub fn expected_kernel_13_tilde(p: &TruncationParams) -> Result<Vec<Vec<(usize, i64)>>> {
    Ok(expected(&family_y(p)?))
}

fn kernel_report(f: &Family, m: &SparseIntMatrix, position: Position) -> KernelReport {
    let kernel = m.kernel_basis();
    let exp = expected(f);
    // Compare lattices splitting by splitting; blocks never straddle two.
    let group = |v: &[(usize, i64)]| f.gens[v[0].0].splitting;
    let mut by_group: BTreeMap<usize, (Vec<Vec<(usize, i64)>>, Vec<Vec<(usize, i64)>>)> = BTreeMap::new();
    for v in &kernel {
        by_group.entry(group(v)).or_default().0.push(v.clone());
    }
    for v in &exp {
        by_group.entry(group(v)).or_default().1.push(v.clone());
    }
    let matches = by_group.values().all(|(a, b)| {
        let cols: Vec<usize> = {
            let mut c: Vec<usize> = a.iter().chain(b).flatten().map(|&(i, _)| i).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        let local = |vs: &Vec<Vec<(usize, i64)>>| -> Vec<Vec<i64>> {
            vs.iter()
                .map(|v| {
                    let mut d = vec![0; cols.len()];
                    for &(i, x) in v {
                        d[cols.binary_search(&i).expect("column in group")] = x;
                    }
                    d
                })
                .collect()
        };
        hermite_rows(&local(a), cols.len()) == hermite_rows(&local(b), cols.len())
    });
    KernelReport {
        position,
        basis_size: m.cols.len(),
        rank: m.cols.len() - kernel.len(),
        kernel_rank: kernel.len(),
        expected_kernel_rank: exp.len(),
        matches_pattern: matches && kernel.len() == exp.len(),
        kernel_basis: kernel.iter().map(|v| v.iter().map(|&(i, x)| (m.cols[i].clone(), x)).collect()).collect(),
    }
}

/// Kernel of `d^1_{1,3}` on the truncated splitting family.
pub fn e2_13_kernel(p: &TruncationParams) -> Result<KernelReport> {
    let f = family_x(p)?;
    let src = E1Truncation::new(Position::new(1, 3), f.gens.iter().map(|g| g.label.clone()).collect(), p.clone())?;
    let tgt = E1Truncation::new(Position::new(0, 3), targets(&f), p.clone())?;
    let m = assemble(&f, &src, &tgt)?;
    Ok(kernel_report(&f, &m, src.position))
}

/// Kernel of the auxiliary differential on the truncated splitting family.
pub fn e2_13_tilde_kernel(p: &TruncationParams) -> Result<KernelReport> {
    let f = family_y(p)?;
    let src = E1Truncation::new(Position::tilde(1, 3), f.gens.iter().map(|g| g.label.clone()).collect(), p.clone())?;
    let tgt = E1Truncation::new(Position::tilde(0, 3), targets(&f), p.clone())?;
    let m = assemble(&f, &src, &tgt)?;
    Ok(kernel_report(&f, &m, src.position))
}

/// `(n_a, n_b, n_c)` over the truncated family.
pub fn splitting_counts_x(p: &TruncationParams) -> Result<[usize; 3]> {
    let mut out = [0; 3];
    for s in truncated_splittings(p) {
        out[splitting_type_wrt_x(&p.x, &s)?.0 as usize] += 1;
    }
    Ok(out)
}

/// `(n_1, n_2, n_3, n_4)` over the splittings with `x` in one part.
pub fn splitting_counts_y(p: &TruncationParams) -> Result<[usize; 4]> {
    let mut out = [0; 4];
    for s in truncated_splittings(p) {
        if splitting_type_wrt_x(&p.x, &s)?.0 != XType::A {
            continue;
        }
        if let Ok((t, _)) = splitting_type_wrt_y(&p.x, &p.y, &s) {
            out[t as usize] += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::build_e1;
    use super::*;

    fn params(x: HVector, y: HVector, n: usize) -> TruncationParams {
        TruncationParams { x, y, max_splittings: Some(n), ..Default::default() }
    }

    #[test]
    fn type_c_columns_agree_up_to_sign() {
        let x = HVector::a(1) + HVector::a(2) + HVector::a(3);
        let p = params(x, HVector::a(2), 400);
        let src = build_e1(Position::new(1, 3), &p).unwrap();
        let tgt = build_e1(Position::new(0, 3), &p).unwrap();
        let m = d13_apply(&src, &tgt).unwrap();
        let counts = splitting_counts_x(&p).unwrap();
        assert!(counts[2] > 0, "{counts:?}");
        for b in m.blocks() {
            if b.rows.is_empty() {
                continue;
            }
            assert_eq!(b.rows.len(), 1);
            assert_eq!(b.cols.len(), 3);
            assert!(b.entries.iter().all(|e| e.2.abs() == 1));
            assert!(matches!(m.rows[b.rows[0]].tag, GeneratorTag::A3 { .. }));
        }
    }

    #[test]
    fn kernel_rank_formula() {
        for x in [HVector::a(1), HVector::a(1) + HVector::a(2), HVector::a(1) + HVector::a(2) + HVector::a(3)] {
            let p = params(x, HVector::a(2), 300);
            let [na, nb, nc] = splitting_counts_x(&p).unwrap();
            let r = e2_13_kernel(&p).unwrap();
            assert_eq!(r.kernel_rank, na + 2 * nb + 2 * nc);
            assert!(r.matches_pattern);
        }
    }

    #[test]
    fn tilde_kernel_rank_formula() {
        let p = params(HVector::a(1), HVector::a(2) + HVector::a(3), 2000);
        let n = splitting_counts_y(&p).unwrap();
        let r = e2_13_tilde_kernel(&p).unwrap();
        assert_eq!(r.kernel_rank, n.iter().sum::<usize>());
        assert!(r.matches_pattern);
    }

    #[test]
    fn unclassified_generator_is_rejected() {
        let p = params(HVector::a(1), HVector::a(2), 10);
        let tgt = build_e1(Position::new(0, 3), &p).unwrap();
        let bogus = BasisLabel::new("nowhere", GeneratorTag::BPTwist { k: 0 });
        let src = E1Truncation::new(Position::new(1, 3), vec![bogus], p).unwrap();
        assert!(matches!(d13_apply(&src, &tgt), Err(Error::Admissibility(_))));
    }
}
