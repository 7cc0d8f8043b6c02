//! Seeded Monte Carlo campaigns over the process and the static model.
//!
//! Trials run in parallel with seeds derived from the master seed, `n` and
//! the trial index, and are collected in trial order, so identical configs
//! give byte-identical output.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cocycle::{check_conditions, Caps};
use crate::error::{Error, Result};
use crate::homology::{homology, homology_is_zero};
use crate::process::{derive_seed, run_trial, sample_static, ProcessState, TrialRecord};
use crate::simplex::{binomial, isolated_facets, isolated_pairs_sharing_ridge};
use crate::Int;

/// Master seed used by the command-line front end when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Hitting,
    Rank,
    Torsion,
    Noadjacent,
}

impl std::fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ExperimentKind::Hitting => "hitting",
            ExperimentKind::Rank => "rank",
            ExperimentKind::Torsion => "torsion",
            ExperimentKind::Noadjacent => "noadjacent",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExperimentKind> {
        match s {
            "hitting" => Ok(ExperimentKind::Hitting),
            "rank" => Ok(ExperimentKind::Rank),
            "torsion" => Ok(ExperimentKind::Torsion),
            "noadjacent" => Ok(ExperimentKind::Noadjacent),
            _ => Err(Error::InvalidParameter(format!("unknown experiment `{s}`"))),
        }
    }
}

fn default_stride() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub d: usize,
    pub ns: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub caps: Caps,
    /// Directory receiving `<kind>_trials.jsonl` and `<kind>_summary.csv`.
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Snapshot spacing of the torsion scan.
    #[serde(default = "default_stride")]
    pub stride: usize,
    /// Constant `c` in `p = c log n / n` for the isolated-pair campaign;
    /// defaults to `d`.
    #[serde(default)]
    pub c: Option<f64>,
    /// Fixed face probability overriding `c`.
    #[serde(default)]
    pub p: Option<f64>,
    /// Evaluate the three conditions on every rank-structure trial.
    #[serde(default = "yes")]
    pub check_conditions: bool,
    #[serde(default)]
    pub threads: Option<usize>,
}

fn yes() -> bool {
    true
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, d: usize, ns: Vec<usize>, trials: usize, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            kind,
            d,
            ns,
            trials,
            seed,
            caps: Caps::default(),
            out: None,
            stride: 1,
            c: None,
            p: None,
            check_conditions: true,
            threads: None,
        }
    }

    pub fn from_json(text: &str) -> Result<ExperimentConfig> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.d == 0 {
            return bad("d must be at least 1".into());
        }
        if self.ns.is_empty() {
            return bad("no values of n given".into());
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n <= self.d) {
            return bad(format!("n = {n} must exceed d = {}", self.d));
        }
        if self.stride == 0 {
            return bad("stride must be at least 1".into());
        }
        if let Some(p) = self.p.filter(|p| !(0.0..=1.0).contains(p)) {
            return bad(format!("probability {p} outside [0, 1]"));
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }

    fn trial_seed(&self, n: usize, t: usize) -> u64 {
        derive_seed(derive_seed(self.seed, n as u64), t as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankRecord {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub m: usize,
    pub free_rank: usize,
    pub torsion: Vec<Int>,
    pub isolated: usize,
    pub rank_eq: bool,
    pub cond1: Option<bool>,
    pub cond2: Option<bool>,
    pub cond3: Option<bool>,
    /// `false` when the conditions hold but the rank statement fails.
    pub oracle_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionEvent {
    pub m: usize,
    pub torsion: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionRecord {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub stride: usize,
    pub events: Vec<TorsionEvent>,
    /// Largest torsion subgroup order seen, 1 if none.
    pub max_order: Int,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoAdjacentRecord {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub p: f64,
    pub isolated: usize,
    pub adjacent_pair: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Record {
    Hitting(TrialRecord),
    Rank(RankRecord),
    Torsion(TorsionRecord),
    NoAdjacent(NoAdjacentRecord),
}

/// Aggregates for one value of `n`. Columns that do not apply to the
/// campaign are left empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub trials: usize,
    pub coincide_frac: Option<f64>,
    pub mean_gap: Option<f64>,
    pub max_gap: Option<usize>,
    pub rank_eq_frac: Option<f64>,
    pub torsion_events: Option<usize>,
    pub stderr_coincide: Option<f64>,
    pub stderr_rank_eq: Option<f64>,
    pub violation_frac: Option<f64>,
    pub stderr_violation: Option<f64>,
    pub conditions_passed: Option<usize>,
    pub oracle_violations: Option<usize>,
    pub max_torsion_order: Option<String>,
}

impl SummaryRow {
    fn empty(n: usize, trials: usize) -> SummaryRow {
        SummaryRow {
            n,
            trials,
            coincide_frac: None,
            mean_gap: None,
            max_gap: None,
            rank_eq_frac: None,
            torsion_events: None,
            stderr_coincide: None,
            stderr_rank_eq: None,
            violation_frac: None,
            stderr_violation: None,
            conditions_passed: None,
            oracle_violations: None,
            max_torsion_order: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub kind: ExperimentKind,
    pub d: usize,
    pub rows: Vec<SummaryRow>,
    /// Every trial record, in `(n, trial)` order.
    pub records: Vec<Record>,
}

impl CampaignSummary {
    pub fn row(&self, n: usize) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `<kind>_trials.jsonl` and `<kind>_summary.csv` into `dir`.
    pub fn save(&self, dir: &std::path::Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut jsonl = BufWriter::new(File::create(dir.join(format!("{}_trials.jsonl", self.kind)))?);
        self.write_jsonl(&mut jsonl)?;
        jsonl.flush()?;
        self.write_csv(File::create(dir.join(format!("{}_summary.csv", self.kind)))?)
    }
}

fn frac(count: usize, total: usize) -> f64 {
    count as f64 / total as f64
}

/// Normal-approximation standard error of a proportion.
pub fn std_error(f: f64, trials: usize) -> f64 {
    (f * (1.0 - f) / trials as f64).sqrt()
}

fn run_trials<T: Send>(cfg: &ExperimentConfig, n: usize, f: impl Fn(u64) -> Result<T> + Sync) -> Result<Vec<T>> {
    (0..cfg.trials).into_par_iter().map(|t| f(cfg.trial_seed(n, t))).collect()
}

fn in_pool<T: Send>(cfg: &ExperimentConfig, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    cfg.validate()?;
    match cfg.threads {
        None => job(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(job),
    }
}

/// Persists the campaign when the config names an output directory.
fn finish(cfg: &ExperimentConfig, summary: CampaignSummary) -> Result<CampaignSummary> {
    if let Some(dir) = &cfg.out {
        summary.save(dir)?;
    }
    Ok(summary)
}

/// Hitting times of isolated-facet coverage and homology vanishing.
pub fn run_hitting(cfg: &ExperimentConfig) -> Result<CampaignSummary> {
    in_pool(cfg, || {
        let mut rows = Vec::new();
        let mut records = Vec::new();
        for &n in &cfg.ns {
            info!("hitting: d = {}, n = {n}, {} trials", cfg.d, cfg.trials);
            let trials = run_trials(cfg, n, |seed| run_trial(n, cfg.d, seed))?;
            let gaps: Vec<usize> = trials.iter().map(|t| t.t_hom - t.t_iso).collect();
            let coincide = trials.iter().filter(|t| t.coincide).count();
            let f = frac(coincide, trials.len());
            rows.push(SummaryRow {
                coincide_frac: Some(f),
                mean_gap: Some(gaps.iter().sum::<usize>() as f64 / gaps.len() as f64),
                max_gap: gaps.iter().max().copied(),
                stderr_coincide: Some(std_error(f, trials.len())),
                ..SummaryRow::empty(n, trials.len())
            });
            records.extend(trials.into_iter().map(Record::Hitting));
        }
        finish(cfg, CampaignSummary { kind: ExperimentKind::Hitting, d: cfg.d, rows, records })
    })
}

/// Number of faces at which the rank structure is probed:
/// `round(((d - 1/4) log n / n) C(n, d+1))`, clamped to the simplex.
pub fn rank_probe_m(n: usize, d: usize) -> usize {
    let total = binomial(n, d + 1);
    let m = ((d as f64 - 0.25) * (n as f64).ln() / n as f64 * total as f64).round();
    (m.max(0.0) as u64).min(total) as usize
}

fn rank_trial(cfg: &ExperimentConfig, n: usize, m: usize, seed: u64) -> Result<RankRecord> {
    let mut state = ProcessState::new(n, cfg.d, seed)?;
    state.advance_to(m)?;
    let y = state.snapshot(m)?;
    let h = homology(&y);
    let isolated = isolated_facets(&y).len();
    let rank_eq = h.torsion.is_empty() && h.free_rank == isolated;
    let report = if cfg.check_conditions { Some(check_conditions(&y, &cfg.caps)?) } else { None };
    let oracle_ok = !report.as_ref().is_some_and(|r| r.rank_premises_hold()) || rank_eq;
    Ok(RankRecord {
        n,
        d: cfg.d,
        seed,
        m,
        free_rank: h.free_rank,
        torsion: h.torsion,
        isolated,
        rank_eq,
        cond1: report.as_ref().and_then(|r| r.cond1),
        cond2: report.as_ref().map(|r| r.cond2),
        cond3: report.as_ref().map(|r| r.cond3),
        oracle_ok,
    })
}

/// Homology at the rank-structure probe point, with the three conditions
/// used as an oracle: whenever they hold, the homology must be free of rank
/// equal to the number of isolated facets. Violations are written out and
/// then reported as an error.
pub fn run_rank_structure(cfg: &ExperimentConfig) -> Result<CampaignSummary> {
    run_rank_at(cfg, |n| rank_probe_m(n, cfg.d))
}

/// [`run_rank_structure`] at a caller-chosen number of faces per `n`.
pub fn run_rank_at(cfg: &ExperimentConfig, probe: impl Fn(usize) -> usize + Sync) -> Result<CampaignSummary> {
    in_pool(cfg, || {
        let mut rows = Vec::new();
        let mut records = Vec::new();
        for &n in &cfg.ns {
            let m = probe(n);
            info!("rank structure: d = {}, n = {n}, m = {m}, {} trials", cfg.d, cfg.trials);
            let trials = run_trials(cfg, n, |seed| rank_trial(cfg, n, m, seed))?;
            let eq = trials.iter().filter(|t| t.rank_eq).count();
            let f = frac(eq, trials.len());
            let passed = trials.iter().filter(|t| t.cond2 == Some(true) && t.cond1 != Some(false)).count();
            rows.push(SummaryRow {
                rank_eq_frac: Some(f),
                stderr_rank_eq: Some(std_error(f, trials.len())),
                torsion_events: Some(trials.iter().filter(|t| !t.torsion.is_empty()).count()),
                conditions_passed: cfg.check_conditions.then_some(passed),
                oracle_violations: Some(trials.iter().filter(|t| !t.oracle_ok).count()),
                ..SummaryRow::empty(n, trials.len())
            });
            records.extend(trials.into_iter().map(Record::Rank));
        }
        let violations: usize = rows.iter().filter_map(|r| r.oracle_violations).sum();
        let summary = finish(cfg, CampaignSummary { kind: ExperimentKind::Rank, d: cfg.d, rows, records })?;
        if violations > 0 {
            return Err(Error::Violation(format!(
                "{violations} trials satisfy the conditions but fail the rank statement"
            )));
        }
        Ok(summary)
    })
}

/// Scans a whole process at the given stride for torsion.
pub fn torsion_scan(state: &mut ProcessState, stride: usize) -> Result<TorsionRecord> {
    state.advance_to(state.total())?;
    let mut events = Vec::new();
    let mut max_order = Int::from(1);
    let mut vanished_at = None;
    let mut m = 0;
    loop {
        let h = homology(&state.snapshot(m)?);
        if h.is_zero() {
            vanished_at.get_or_insert(m);
        } else if let Some(v) = vanished_at {
            return Err(Error::Violation(format!("homology vanished at m = {v} but not at m = {m}")));
        }
        if !h.torsion.is_empty() {
            let order = h.torsion.iter().fold(Int::from(1), |acc, t| &acc * t);
            if order.cmp_abs(&max_order).is_gt() {
                max_order = order;
            }
            events.push(TorsionEvent { m, torsion: h.torsion });
        }
        if m == state.total() {
            break;
        }
        m = (m + stride).min(state.total());
    }
    Ok(TorsionRecord { n: state.n(), d: state.d(), seed: state.seed().unwrap_or_default(), stride, events, max_order })
}

pub fn run_torsion_scan(cfg: &ExperimentConfig) -> Result<CampaignSummary> {
    in_pool(cfg, || {
        let mut rows = Vec::new();
        let mut records = Vec::new();
        for &n in &cfg.ns {
            info!("torsion scan: d = {}, n = {n}, stride {}, {} trials", cfg.d, cfg.stride, cfg.trials);
            let trials = run_trials(cfg, n, |seed| torsion_scan(&mut ProcessState::new(n, cfg.d, seed)?, cfg.stride))?;
            let max = trials.iter().map(|t| &t.max_order).max_by(|a, b| a.cmp_abs(b)).cloned();
            rows.push(SummaryRow {
                torsion_events: Some(trials.iter().map(|t| t.events.len()).sum()),
                max_torsion_order: max.map(|m| m.to_string()),
                ..SummaryRow::empty(n, trials.len())
            });
            records.extend(trials.into_iter().map(Record::Torsion));
        }
        finish(cfg, CampaignSummary { kind: ExperimentKind::Torsion, d: cfg.d, rows, records })
    })
}

/// Static samples at `p = c log n / n` (or the configured `p`), counting
/// those with two isolated facets sharing a ridge.
pub fn run_noadjacent(cfg: &ExperimentConfig) -> Result<CampaignSummary> {
    in_pool(cfg, || {
        let c = cfg.c.unwrap_or(cfg.d as f64);
        let mut rows = Vec::new();
        let mut records = Vec::new();
        for &n in &cfg.ns {
            let p = cfg.p.unwrap_or_else(|| (c * (n as f64).ln() / n as f64).min(1.0));
            info!("isolated pairs: d = {}, n = {n}, p = {p}, {} trials", cfg.d, cfg.trials);
            let trials = run_trials(cfg, n, |seed| {
                let y = sample_static(n, cfg.d, p, seed)?;
                Ok(NoAdjacentRecord {
                    n,
                    d: cfg.d,
                    seed,
                    p,
                    isolated: isolated_facets(&y).len(),
                    adjacent_pair: !isolated_pairs_sharing_ridge(&y)?.is_empty(),
                })
            })?;
            let f = frac(trials.iter().filter(|t| t.adjacent_pair).count(), trials.len());
            rows.push(SummaryRow {
                violation_frac: Some(f),
                stderr_violation: Some(std_error(f, trials.len())),
                ..SummaryRow::empty(n, trials.len())
            });
            records.extend(trials.into_iter().map(Record::NoAdjacent));
        }
        finish(cfg, CampaignSummary { kind: ExperimentKind::Noadjacent, d: cfg.d, rows, records })
    })
}

pub fn run(cfg: &ExperimentConfig) -> Result<CampaignSummary> {
    match cfg.kind {
        ExperimentKind::Hitting => run_hitting(cfg),
        ExperimentKind::Rank => run_rank_structure(cfg),
        ExperimentKind::Torsion => run_torsion_scan(cfg),
        ExperimentKind::Noadjacent => run_noadjacent(cfg),
    }
}

/// Whether homology vanishing is monotone along the whole process.
pub fn vanishing_is_monotone(state: &mut ProcessState) -> Result<bool> {
    state.advance_to(state.total())?;
    let mut seen_zero = false;
    for m in 0..=state.total() {
        let zero = homology_is_zero(&state.snapshot(m)?);
        if seen_zero && !zero {
            return Ok(false);
        }
        seen_zero |= zero;
    }
    Ok(seen_zero)
}
