//! s-classes inside `E^2_{1,3}` for splittings of type (c).
//!
//! For a type (c) splitting with parts `U1, U2, U3` in canonical order let
//! `g_j` be the generator of `E^1_{1,3}` doubling `α_j`. The class
//! `s(U_i, ·, ·)` is sent to `g_{i+1} - g_{i+2}` (indices mod 3). Only the
//! first part matters, so the swap relation holds by construction, while the sum over
//! the three rotations cancels termwise: the cyclic relation is observed, not imposed.

use super::{nf_generator, SClassElement};
use crate::error::{Error, Result};
use crate::lattice::{rank, splitting_type_wrt_x, HVector, IntMatrix, Splitting, XType};
use crate::specseq::{
    build_e1, d13_apply, truncated_splittings, type_c_generators, BasisLabel, Position, TruncationParams,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// The sign fixed for the image of `s(U1, U2, U3)`, recorded in reports.
pub const SIGN_CONVENTION: &str = "s(U1,U2,U3) -> +(g2 - g3), g_j doubling alpha_j, parts in canonical order";

/// Image of the generator `s` in the basis of the `(1,3)` truncation.
pub fn sclass_image_in_e2(s: &Splitting, x: &HVector) -> Result<Vec<(BasisLabel, i64)>> {
    let g = type_c_generators(x, s)?;
    let i = super::leading_index(s);
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    Ok(vec![(g[j].0.clone(), g[j].1), (g[k].0.clone(), -g[k].1)])
}

/// Linear extension of [`sclass_image_in_e2`], zero coefficients dropped.
pub fn sclass_image_of(e: &SClassElement, x: &HVector) -> Result<BTreeMap<BasisLabel, i64>> {
    let mut out: BTreeMap<BasisLabel, i64> = BTreeMap::new();
    for (s, &c) in e.terms() {
        for (l, v) in sclass_image_in_e2(s, x)? {
            *out.entry(l).or_default() += c * v;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// Verdicts over the first type (c) splittings of a truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicRelationReport {
    pub splittings: usize,
    /// `d^1_{1,3}` kills every image.
    pub in_kernel: bool,
    /// The three rotations of each splitting sum to zero.
    pub rotations_vanish: bool,
    pub nf_images: usize,
    pub nf_rank: usize,
    pub sign_convention: String,
}

impl CyclicRelationReport {
    pub fn passed(&self) -> bool {
        self.splittings >= 1 && self.in_kernel && self.rotations_vanish && self.nf_rank == self.nf_images
    }
}

/// Builds the `(1,3)` truncation for `params`, maps the s-classes of up to
/// `count` type (c) splittings into it and checks the relations.
pub fn cyclic_relation_check(params: &TruncationParams, count: usize) -> Result<CyclicRelationReport> {
    let x = params.x;
    let chosen: Vec<Splitting> = truncated_splittings(params)
        .into_iter()
        .filter(|s| matches!(splitting_type_wrt_x(&x, s), Ok((XType::C, _))))
        .take(count)
        .collect();
    if chosen.is_empty() {
        return Err(Error::Precondition(format!("no splitting of type (c) with respect to {x} in the truncation")));
    }
    let src = build_e1(Position::new(1, 3), params)?;
    let tgt = build_e1(Position::new(0, 3), params)?;
    let d = d13_apply(&src, &tgt)?;
    let idx = src.index();
    let coords = |img: &BTreeMap<BasisLabel, i64>| -> Result<Vec<(usize, i64)>> {
        img.iter()
            .map(|(l, &v)| {
                idx.get(l).map(|&i| (i, v)).ok_or_else(|| Error::TruncationOverflow {
                    what: format!("{} is not in the (1,3) truncation", l.orbit),
                    suggested_k: params.k,
                })
            })
            .collect()
    };
    let mut in_kernel = true;
    let mut rotations_vanish = true;
    let mut nf_vectors = Vec::new();
    for s in &chosen {
        let mut total = SClassElement::zero();
        for rot in [[0, 1, 2], [1, 2, 0], [2, 0, 1]] {
            let g = SClassElement::generator(s.permuted(rot));
            let v = coords(&sclass_image_of(&g, &x)?)?;
            let mut dv: BTreeMap<usize, i64> = BTreeMap::new();
            for &(c, a) in &v {
                for (r, m) in d.column(c) {
                    *dv.entry(r).or_default() += a * m;
                }
            }
            in_kernel &= dv.values().all(|&t| t == 0);
            total = total + g;
        }
        rotations_vanish &= sclass_image_of(&total, &x)?.is_empty();
        for i in 0..2 {
            nf_vectors.push(coords(&sclass_image_of(&SClassElement::generator(nf_generator(s, i)), &x)?)?);
        }
    }
    let cols: BTreeSet<usize> = nf_vectors.iter().flatten().map(|&(c, _)| c).collect();
    let cols: Vec<usize> = cols.into_iter().collect();
    let rows: Vec<Vec<i64>> = nf_vectors
        .iter()
        .map(|v| {
            let mut r = vec![0; cols.len()];
            for &(c, a) in v {
                r[cols.binary_search(&c).expect("collected column")] = a;
            }
            r
        })
        .collect();
    Ok(CyclicRelationReport {
        splittings: chosen.len(),
        in_kernel,
        rotations_vanish,
        nf_images: rows.len(),
        nf_rank: rank(&IntMatrix::from_rows(&rows, cols.len())),
        sign_convention: SIGN_CONVENTION.into(),
    })
}
