//! Machine-readable reports for the command line tool.
//!
//! Every command produces a [`Report`] holding named verdicts. A verdict
//! whose key appears in the expectations table is compared against the
//! predicted value; the process exit code is zero iff nothing mismatches.
//! The JSON layout is documented in `docs/report-schema.md`.

use crate::cycles::{boundary_squared, build_ladder, cell_dim, CellInstance, LadderCellTag, LadderEdgeTag};
use crate::error::{Error, Result};
use crate::lattice::HVector;
use crate::sclasses::{
    cyclic_relation_check, default_suite, detection_configuration, detection_pairings, lantern_check,
    lantern_from_boundary, normal_form, normal_form_kernel_is_relation_span, o_module_detect, o_module_reduce,
    per_splitting_rank, quotient_image, rearranged_lantern_words, s3_equivariance_check, transvection_word,
    verify_suite, SClassElement,
};
use crate::specseq::{
    build_e1, check_injective, d22_apply, d31_apply, e2_13_kernel, e2_13_tilde_kernel, splitting_counts_x,
    splitting_counts_y, splitting_family, tilde_e04_witnesses, vanishing_census, KernelReport, Position,
    TruncationParams,
};
use crate::surface::classify_types;
use log::{debug, info};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::time::Instant;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The predicted verdicts shipped with the crate.
pub const EXPECTATIONS_JSON: &str = include_str!("../data/expectations.json");

/// Parameters shared by all commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub genus: u32,
    pub x: HVector,
    pub y: HVector,
    /// Truncation `K`.
    pub k: i64,
    /// Coefficient bound of the splitting family.
    pub height: i64,
    pub mn: (i64, i64),
    /// Restricts `types` and `cells` to one dimension.
    pub dim: Option<usize>,
    /// Prefix of the sorted splitting family to use.
    pub max_splittings: Option<usize>,
    /// Seed for the randomized samples.
    pub seed: u64,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            genus: 3,
            x: HVector::a(1),
            y: HVector::a(2) + HVector::a(3),
            k: 4,
            height: 1,
            mn: (1, 1),
            dim: None,
            max_splittings: None,
            seed: 0,
            samples: 64,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.genus != 3 {
            return Err(Error::InvalidParameters(format!("genus {} is not supported", self.genus)));
        }
        if self.k < 1 {
            return Err(Error::InvalidParameters(format!("K = {} must be at least 1", self.k)));
        }
        if self.height < 1 {
            return Err(Error::InvalidParameters(format!("height = {} must be at least 1", self.height)));
        }
        if self.x.is_zero() || self.y.is_zero() {
            return Err(Error::InvalidParameters("x and y must be nonzero".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> TruncationParams {
        TruncationParams {
            k: self.k,
            height: self.height,
            mn: self.mn,
            max_splittings: self.max_splittings,
            x: self.x,
            y: self.y,
        }
    }
}

/// A verdict that differs from its prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub key: String,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub verdicts: BTreeMap<String, Value>,
    pub data: BTreeMap<String, Value>,
    pub mismatches: Vec<Mismatch>,
    pub timing_ms: u64,
    pub tool_version: String,
}

impl Report {
    fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            command: command.into(),
            config: config.clone(),
            verdicts: BTreeMap::new(),
            data: BTreeMap::new(),
            mismatches: Vec::new(),
            timing_ms: 0,
            tool_version: TOOL_VERSION.into(),
        }
    }

    fn verdict(&mut self, key: &str, v: impl Serialize) {
        self.verdicts.insert(key.into(), serde_json::to_value(v).expect("serializable verdict"));
    }

    fn datum(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.into(), serde_json::to_value(v).expect("serializable data"));
    }

    /// Compares the verdicts against `e`, replacing earlier mismatches.
    pub fn judge(&mut self, e: &Expectations) {
        self.mismatches = self
            .verdicts
            .iter()
            .filter_map(|(k, actual)| {
                let expected = e.verdicts.get(k)?;
                (expected != actual).then(|| Mismatch {
                    key: k.clone(),
                    expected: expected.clone(),
                    actual: actual.clone(),
                })
            })
            .collect();
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Number of verdicts that have a prediction in `e`.
    pub fn judged_count(&self, e: &Expectations) -> usize {
        self.verdicts.keys().filter(|k| e.verdicts.contains_key(*k)).count()
    }

    /// Combines reports: verdicts and data are merged (later keys win) and
    /// data keys are prefixed with the command they came from.
    pub fn merge(command: &str, config: &RunConfig, parts: Vec<Report>) -> Report {
        let mut out = Report::new(command, config);
        for p in parts {
            out.timing_ms += p.timing_ms;
            out.verdicts.extend(p.verdicts);
            for (k, v) in p.data {
                out.data.insert(format!("{}.{k}", p.command), v);
            }
            out.mismatches.extend(p.mismatches);
        }
        out
    }
}

/// The table of predicted verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectations {
    pub version: u32,
    pub verdicts: BTreeMap<String, Value>,
}

impl Expectations {
    pub fn bundled() -> Self {
        Self::from_json(EXPECTATIONS_JSON).expect("bundled expectations parse")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

fn timed(command: &str, config: &RunConfig, f: impl FnOnce(&mut Report) -> Result<()>) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let mut r = Report::new(command, config);
    info!("running {command}");
    f(&mut r)?;
    r.timing_ms = start.elapsed().as_millis() as u64;
    r.judge(&Expectations::bundled());
    debug!("{command}: {} verdicts, {} mismatches", r.verdicts.len(), r.mismatches.len());
    Ok(r)
}

fn dims(config: &RunConfig) -> Vec<usize> {
    config.dim.map_or_else(|| (0..=3).collect(), |d| vec![d])
}

/// Counts and fingerprints of the combinatorial types per dimension.
pub fn cmd_types(config: &RunConfig) -> Result<Report> {
    timed("types", config, |r| {
        let mut listing = Vec::new();
        for p in dims(config) {
            let types = classify_types(p);
            r.verdict(&format!("types.count.dim{p}"), types.len());
            for t in types {
                listing.push(json!({
                    "name": t.name,
                    "dim": p,
                    "fingerprint": t.fingerprint,
                    "curves": t.witness.curve_count(),
                    "bp": t.bp(),
                    "p": t.p_count(),
                }));
            }
        }
        r.datum("types", listing);
        Ok(())
    })
}

/// Cell dimensions, cd bounds and orientation coherence on the census.
pub fn cmd_cells(config: &RunConfig) -> Result<Report> {
    timed("cells", config, |r| {
        let mut rows = Vec::new();
        let mut bounded = true;
        let mut dims_match = true;
        let mut coherent = true;
        for p in dims(config) {
            for t in classify_types(p) {
                let cell = CellInstance::from_multicurve(&t.witness)?;
                let dim = cell_dim(&cell)?;
                let cd = t.cd_bound();
                let three_g = 3 * i64::from(config.genus) - 3;
                let arithmetic =
                    format!("{three_g} - {} - {} + {} = {cd}", t.p_count(), t.witness.curve_count(), t.bp());
                bounded &= dim as i64 + cd <= 4;
                dims_match &= dim == p;
                if dim >= 1 {
                    coherent &= boundary_squared(&cell)?.is_empty();
                }
                if ["N_1^3", "M_0^2"].contains(&t.name.as_str()) {
                    r.verdict(&format!("cells.cd.{}", t.name), cd);
                    r.verdict(&format!("cells.cd_arithmetic.{}", t.name), &arithmetic);
                }
                rows.push(json!({
                    "name": t.name,
                    "dim": dim,
                    "vertices": cell.verts.len(),
                    "cd_bound": cd,
                    "arithmetic": arithmetic,
                }));
            }
        }
        r.verdict("cells.dim_plus_cd_le_4", bounded);
        r.verdict("cells.dims_match_census", dims_match);
        r.verdict("cells.boundary_squared_zero", coherent);
        r.datum("cells", rows);
        Ok(())
    })
}

/// Structure of the ladder for `x = m·α + n·y`.
pub fn cmd_ladder(config: &RunConfig) -> Result<Report> {
    timed("ladder", config, |r| {
        let (m, n) = config.mn;
        let lad = build_ladder(m, n, config.k)?;
        r.verdict("ladder.invariants", lad.check_invariants().is_ok());
        let three = lad
            .interior_indices()
            .iter()
            .all(|&k| lad.edge_index(LadderEdgeTag::D(k)).is_some_and(|e| lad.cells_on_edge(e).len() == 3));
        r.verdict("ladder.d_edges_bound_three_cells", three);
        // With m > n the ladder closes at k = 0 and has no rectangle R_0.
        if m <= n {
            let psi = |t| -> Result<i64> {
                let c = lad.cell_index(t).ok_or_else(|| Error::MalformedCell(format!("no cell {t:?}")))?;
                lad.psi(c)
            };
            let got = [
                psi(LadderCellTag::Rect(0))?,
                psi(LadderCellTag::Rect(-1))?,
                psi(LadderCellTag::NeighbourTriangle { k: 0, plus: true })?,
            ];
            r.verdict("ladder.psi_matches", got == [m + n, 2 * m + n, m + 2 * n]);
            r.datum("psi", got);
        }
        r.datum("l", lad.l);
        // Cells touching `d_l`, whose incidence follows the drawn figure.
        let closing: Vec<String> = lad
            .cells
            .iter()
            .filter(|c| match c.tag {
                LadderCellTag::LeftTriangle(k) | LadderCellTag::Vertical(k) => k == lad.l,
                LadderCellTag::Rect(k) => k + 1 == lad.l,
                LadderCellTag::NeighbourRect { k, .. } | LadderCellTag::NeighbourTriangle { k, .. } => k == lad.l,
            })
            .map(|c| format!("{:?}", c.tag))
            .collect();
        r.datum("closing_cells", closing);
        r.datum("edge_census", lad.edge_census());
        r.datum("cells", lad.cells.len());
        Ok(())
    })
}

/// Which differential `check` examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckTarget {
    D31,
    D22,
    D13,
    D13Tilde,
}

impl std::str::FromStr for CheckTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d31" => Ok(CheckTarget::D31),
            "d22" => Ok(CheckTarget::D22),
            "d13" => Ok(CheckTarget::D13),
            "d13-tilde" => Ok(CheckTarget::D13Tilde),
            _ => Err(Error::InvalidParameters(format!("unknown differential {s}"))),
        }
    }
}

fn kernel_summary(k: &KernelReport, sample: usize) -> Value {
    json!({
        "position": k.position,
        "basis_size": k.basis_size,
        "rank": k.rank,
        "kernel_rank": k.kernel_rank,
        "expected_kernel_rank": k.expected_kernel_rank,
        "matches_pattern": k.matches_pattern,
        "kernel_basis_sample": k.kernel_basis.iter().take(sample).collect::<Vec<_>>(),
    })
}

fn check_d13(r: &mut Report, params: &TruncationParams, prefix: &str) -> Result<()> {
    let [na, nb, nc] = splitting_counts_x(params)?;
    let k = e2_13_kernel(params)?;
    r.verdict(&format!("{prefix}.kernel_rank_formula"), k.kernel_rank == na + 2 * nb + 2 * nc);
    r.verdict(&format!("{prefix}.pattern"), k.matches_pattern);
    r.datum("counts_abc", [na, nb, nc]);
    r.datum("d13", kernel_summary(&k, 10));
    Ok(())
}

fn check_d13_tilde(r: &mut Report, params: &TruncationParams, prefix: &str) -> Result<()> {
    let n = splitting_counts_y(params)?;
    let k = e2_13_tilde_kernel(params)?;
    r.verdict(&format!("{prefix}.kernel_rank_formula"), k.kernel_rank == n.iter().sum::<usize>());
    r.verdict(&format!("{prefix}.pattern"), k.matches_pattern);
    let e04 = build_e1(Position::tilde(0, 4), params)?;
    r.verdict(&format!("{prefix}.e04_vanishes"), e04.is_empty());
    r.datum("counts_1234", n);
    r.datum("d13_tilde", kernel_summary(&k, 10));
    let witnesses: Vec<Value> =
        tilde_e04_witnesses()?.iter().map(|w| json!({"type": w.type_name, "extended_cd": w.extended_cd})).collect();
    r.datum("e04_witnesses", witnesses);
    Ok(())
}

/// Injectivity or kernel verdicts for one differential.
pub fn cmd_check(config: &RunConfig, which: CheckTarget) -> Result<Report> {
    timed("check", config, |r| {
        let p = config.params();
        match which {
            CheckTarget::D31 => {
                let src = build_e1(Position::new(3, 1), &p)?;
                let tgt = build_e1(Position::new(2, 1), &p)?;
                let m = d31_apply(&src, &tgt)?;
                r.verdict("check.d31.injective", check_injective(&m));
                r.datum("d31", json!({"K": p.k, "columns": src.len(), "rows": tgt.len(), "rank": m.rank()}));
            }
            CheckTarget::D22 => {
                let src = build_e1(Position::new(2, 2), &p)?;
                let tgt = build_e1(Position::new(1, 2), &p)?;
                let lad = build_ladder(p.mn.0, p.mn.1, p.k)?;
                let m = d22_apply(&src, &tgt, &lad)?;
                let block_diagonal = m.entries.keys().all(|&(i, j)| m.rows[i].tag == m.cols[j].tag);
                r.verdict("check.d22.injective", check_injective(&m));
                r.verdict("check.d22.block_diagonal", block_diagonal);
                r.datum(
                    "d22",
                    json!({"K": p.k, "mn": p.mn, "columns": src.len(), "rows": tgt.len(), "rank": m.rank()}),
                );
            }
            CheckTarget::D13 => check_d13(r, &p, "check.d13")?,
            CheckTarget::D13Tilde => check_d13_tilde(r, &p, "check.d13_tilde")?,
        }
        Ok(())
    })
}

/// Both `E^2_{1,3}` kernels with sample basis vectors and the vanishing census.
pub fn cmd_kernel(config: &RunConfig) -> Result<Report> {
    timed("kernel", config, |r| {
        let p = config.params();
        check_d13(r, &p, "kernel.d13")?;
        check_d13_tilde(r, &p, "kernel.d13_tilde")?;
        let zeros: Vec<String> = vanishing_census()
            .into_iter()
            .filter(|e| e.vanishes)
            .map(|e| format!("{} q={}", e.type_name, e.q))
            .collect();
        r.datum("vanishing", zeros);
        Ok(())
    })
}

/// Seeded random elements: normal forms are idempotent, additive and keep
/// the image in `Z^3/Δ`.
fn sample_normal_forms(config: &RunConfig) -> bool {
    let fam = splitting_family(config.height);
    let mut rng = StdRng::seed_from_u64(config.seed);
    let perms = crate::sclasses::PERMS;
    let random_element = |rng: &mut StdRng| {
        let mut e = SClassElement::zero();
        for _ in 0..rng.gen_range(1..6) {
            let s = &fam[rng.gen_range(0..fam.len())];
            e.add_term(s.permuted(perms[rng.gen_range(0..6)]), rng.gen_range(-3..=3));
        }
        e
    };
    (0..config.samples).all(|_| {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        let na = normal_form(&a);
        normal_form(&na) == na
            && normal_form(&(a.clone() + b.clone())) == na.clone() + normal_form(&b)
            && quotient_image(&na) == quotient_image(&a)
    })
}

/// The s-class module, the pairing values and the relation between rotations.
pub fn cmd_smodule(config: &RunConfig) -> Result<Report> {
    timed("smodule", config, |r| {
        let rank = per_splitting_rank();
        r.verdict("smodule.rank", rank.free_rank);
        r.verdict("smodule.torsion_free", rank.torsion.is_empty());
        let eq = s3_equivariance_check()?;
        r.verdict("smodule.equivariant", eq.passed());
        let fam = splitting_family(config.height);
        let step = (fam.len() / config.samples.max(1)).max(1);
        r.verdict("smodule.normal_form_kernel", fam.iter().step_by(step).all(normal_form_kernel_is_relation_span));
        r.verdict("smodule.random_samples", sample_normal_forms(config));
        let conf = detection_configuration()?;
        let pairings = detection_pairings(&conf)?;
        r.verdict("smodule.cup_values", pairings[0]);
        r.verdict("smodule.o_reduce_111", o_module_reduce([1, 1, 1]));
        let mut rng = StdRng::seed_from_u64(config.seed);
        let mut detect = true;
        for _ in 0..config.samples {
            let l: [i64; 3] = [rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(-9..=9)];
            let [r1, r2] = o_module_reduce(l);
            detect &= o_module_detect(&conf, l)? == [r1 - r2, r2, -r1];
        }
        r.verdict("smodule.detection_consistent", detect);
        let rel_params = TruncationParams {
            x: HVector::a(1) + HVector::a(2) + HVector::a(3),
            height: config.height,
            max_splittings: Some(config.max_splittings.unwrap_or(400)),
            ..Default::default()
        };
        let rel = cyclic_relation_check(&rel_params, config.samples)?;
        r.verdict("smodule.cyclic_relation_emerges", rel.in_kernel && rel.rotations_vanish);
        r.verdict("smodule.nf_images_independent", rel.splittings >= 3 && rel.nf_rank == rel.nf_images);
        r.datum("per_splitting", rank);
        r.datum("equivariance", eq);
        r.datum("pairings", pairings);
        r.datum("cyclic_relation", rel);
        Ok(())
    })
}

/// The homology-level lantern suite.
pub fn cmd_lantern(config: &RunConfig, suite: &str) -> Result<Report> {
    timed("lantern", config, |r| {
        if suite != "default" {
            return Err(Error::InvalidParameters(format!("unknown lantern suite {suite}")));
        }
        let configs = default_suite()?;
        let outcomes = verify_suite(&configs);
        r.verdict("lantern.suite_at_least_5", configs.len() >= 5);
        r.verdict("lantern.all_hold", outcomes.iter().all(|o| o.holds));
        r.verdict(
            "lantern.perturbations_rejected",
            outcomes.iter().all(|o| o.perturbations_rejected == o.perturbations),
        );
        let (lhs, rhs) = rearranged_lantern_words(HVector::a(2));
        r.verdict("lantern.rearranged_form", transvection_word(&lhs) == transvection_word(&rhs));
        // Random boundary triples in the Lagrangian span(a1, a2, a3).
        let mut rng = StdRng::seed_from_u64(config.seed);
        let mut random_ok = true;
        for i in 0..config.samples {
            let mut v = || HVector::new([rng.gen_range(-3..=3), 0, rng.gen_range(-3..=3), 0, rng.gen_range(-3..=3), 0]);
            let c = lantern_from_boundary(&format!("random {i}"), v(), v(), v())?;
            random_ok &= lantern_check(&c)?;
        }
        r.verdict("lantern.random_hold", random_ok);
        r.datum("outcomes", outcomes);
        r.datum("configurations", configs);
        Ok(())
    })
}

/// Every command above with the given configuration, merged.
pub fn cmd_report(config: &RunConfig, all: bool) -> Result<Report> {
    let start = Instant::now();
    let mut parts = vec![cmd_types(config)?, cmd_cells(config)?, cmd_ladder(config)?];
    for t in [CheckTarget::D31, CheckTarget::D22, CheckTarget::D13, CheckTarget::D13Tilde] {
        let mut r = cmd_check(config, t)?;
        r.command = format!("check.{}", serde_json::to_value(t).expect("enum").as_str().unwrap_or("?"));
        parts.push(r);
    }
    if all {
        parts.push(cmd_kernel(config)?);
    }
    parts.push(cmd_smodule(config)?);
    parts.push(cmd_lantern(config, "default")?);
    let mut r = Report::merge("report", config, parts);
    r.timing_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig { max_splittings: Some(300), samples: 8, k: 2, ..Default::default() }
    }

    #[test]
    fn expectations_parse_and_cover_types() {
        let e = Expectations::bundled();
        assert_eq!(e.verdicts["types.count.dim3"], json!(2));
    }

    #[test]
    fn types_report_matches() {
        let r = cmd_types(&small()).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.verdicts["types.count.dim1"], json!(6));
        let r4 = cmd_types(&RunConfig { dim: Some(4), ..small() }).unwrap();
        assert_eq!(r4.verdicts["types.count.dim4"], json!(0));
    }

    #[test]
    fn mismatch_is_reported() {
        let mut r = cmd_types(&small()).unwrap();
        r.verdict("types.count.dim0", 4);
        r.judge(&Expectations::bundled());
        assert_eq!(r.mismatches.len(), 1);
        assert!(!r.passed());
    }

    #[test]
    fn deterministic_modulo_timing() {
        let strip = |mut r: Report| {
            r.timing_ms = 0;
            serde_json::to_string(&r).unwrap()
        };
        let c = small();
        assert_eq!(strip(cmd_lantern(&c, "default").unwrap()), strip(cmd_lantern(&c, "default").unwrap()));
        assert_eq!(strip(cmd_smodule(&c).unwrap()), strip(cmd_smodule(&c).unwrap()));
    }

    #[test]
    fn bad_config_is_rejected() {
        let c = RunConfig { k: 0, ..small() };
        assert!(matches!(cmd_types(&c), Err(Error::InvalidParameters(_))));
        assert!(cmd_lantern(&small(), "other").is_err());
    }

    #[test]
    fn merged_report_passes_on_small_truncation() {
        let r = cmd_report(&small(), true).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert!(r.judged_count(&Expectations::bundled()) >= 30);
    }
}
