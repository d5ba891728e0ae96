//! Price-of-fairness study: how much utilitarian and egalitarian welfare
//! each rule keeps relative to the unconstrained optimum, over seeded
//! random instances.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{PfcError, Result};
use crate::gen::{generate, is_admissible_crowdfunding, GeneratorConfig, Regime};
use crate::rules::{solve_over, RuleId, Welfare};
use crate::search::{enumerate_feasible_sets, Caps, Constraint, SearchOptions};

pub const CSV_HEADER: [&str; 12] = [
    "regime",
    "seed",
    "n",
    "m",
    "rule",
    "funded_count",
    "util_welfare",
    "egal_min",
    "ratio_util",
    "ratio_egal",
    "millis",
    "timeout",
];

pub const SUMMARY_HEADER: [&str; 10] = [
    "regime",
    "rule",
    "count",
    "timeouts",
    "mean_ratio_util",
    "min_ratio_util",
    "halfwidth_util",
    "mean_ratio_egal",
    "min_ratio_egal",
    "halfwidth_egal",
];

#[derive(Clone, Debug)]
pub struct BatchOptions {
    pub caps: Caps,
    pub time_budget: Duration,
    pub approval_probability: f64,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions { caps: Caps::default(), time_budget: Duration::from_secs(60), approval_probability: 0.5 }
    }
}

/// One rule's result on one instance. Ratio fields are meaningless when
/// `timeout` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleRow {
    pub rule: RuleId,
    pub funded_count: usize,
    pub util_welfare: u64,
    pub egal_min: u64,
    pub ratio_util: f64,
    pub ratio_egal: f64,
    pub millis: u128,
    pub timeout: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub regime: Regime,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub admissible: bool,
    pub rows: Vec<RuleRow>,
}

impl ExperimentRecord {
    pub fn row(&self, rule: RuleId) -> Option<&RuleRow> {
        self.rows.iter().find(|r| r.rule == rule)
    }
}

/// `num / den`, or 1 when nothing was achievable in the first place.
pub fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

fn timed_out(rule: RuleId, millis: u128) -> RuleRow {
    RuleRow {
        rule,
        funded_count: 0,
        util_welfare: 0,
        egal_min: 0,
        ratio_util: f64::NAN,
        ratio_egal: f64::NAN,
        millis,
        timeout: true,
    }
}

/// Solves one generated instance under every requested rule.
pub fn run_instance(regime: Regime, seed: u64, rules: &[RuleId], opts: &BatchOptions) -> Result<ExperimentRecord> {
    let mut cfg = GeneratorConfig::new(regime, seed);
    cfg.approval_probability = opts.approval_probability;
    let inst = generate(&cfg)?;

    let mut constraints: Vec<Constraint> = rules.iter().map(|r| r.constraint).collect();
    constraints.push(Constraint::None);
    constraints.sort();
    constraints.dedup();

    // one enumeration per constraint, shared by its three welfare rules
    let mut sets = BTreeMap::new();
    for &constraint in &constraints {
        let start = Instant::now();
        let search = SearchOptions { caps: opts.caps, deadline: Some(start + opts.time_budget) };
        let found = match enumerate_feasible_sets(&inst, constraint, &search) {
            Ok(found) => Some(found),
            Err(PfcError::Timeout) => None,
            Err(e) => return Err(e),
        };
        sets.insert(constraint, (found, start.elapsed()));
    }

    let baseline = |welfare: Welfare| -> Result<Option<u64>> {
        let Some(none_sets) = &sets[&Constraint::None].0 else {
            return Ok(None);
        };
        let r = solve_over(&inst, RuleId::new(welfare, Constraint::None), none_sets)?;
        Ok(Some(match welfare {
            Welfare::Egal => r.welfare.egalitarian_min(),
            _ => r.welfare.utilitarian,
        }))
    };
    let best_util = baseline(Welfare::Util)?;
    let best_egal = baseline(Welfare::Egal)?;

    let mut rows = Vec::with_capacity(rules.len());
    for &rule in rules {
        let (found, enum_time) = &sets[&rule.constraint];
        let (Some(found), Some(best_util), Some(best_egal)) = (found, best_util, best_egal) else {
            rows.push(timed_out(rule, enum_time.as_millis()));
            continue;
        };
        let start = Instant::now();
        let r = solve_over(&inst, rule, found)?;
        let millis = (*enum_time + start.elapsed()).as_millis();
        let util = r.welfare.utilitarian;
        let egal = r.welfare.egalitarian_min();
        rows.push(RuleRow {
            rule,
            funded_count: r.outcome.funded.len(),
            util_welfare: util,
            egal_min: egal,
            ratio_util: ratio(util, best_util),
            ratio_egal: ratio(egal, best_egal),
            millis,
            timeout: false,
        });
    }
    Ok(ExperimentRecord {
        regime,
        seed,
        n: inst.n(),
        m: inst.m(),
        admissible: regime != Regime::Crowdfunding || is_admissible_crowdfunding(&inst),
        rows,
    })
}

/// Runs every seed in parallel; records come back in seed order.
pub fn run_batch(regime: Regime, seeds: &[u64], rules: &[RuleId], opts: &BatchOptions) -> Result<Vec<ExperimentRecord>> {
    seeds.par_iter().map(|&seed| run_instance(regime, seed, rules, opts)).collect()
}

/// Percentile-bootstrap interval for the mean of `values`.
pub fn bootstrap_mean_interval(values: &[f64], level: f64, resamples: usize, seed: u64) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = values.len();
    let mut means: Vec<f64> = (0..resamples)
        .map(|_| (0..k).map(|_| values[rng.gen_range(0..k)]).sum::<f64>() / k as f64)
        .collect();
    means.sort_by(|a, b| a.total_cmp(b));
    let tail = (1.0 - level) / 2.0;
    let pick = |q: f64| means[((q * (resamples - 1) as f64).round() as usize).min(resamples - 1)];
    (pick(tail), pick(1.0 - tail))
}

/// Percentile-bootstrap interval for `mean(a) - mean(b)`, resampling the two
/// samples independently.
pub fn bootstrap_diff_interval(a: &[f64], b: &[f64], level: f64, resamples: usize, seed: u64) -> (f64, f64) {
    if a.is_empty() || b.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut resample_mean = |v: &[f64]| (0..v.len()).map(|_| v[rng.gen_range(0..v.len())]).sum::<f64>() / v.len() as f64;
    let mut diffs: Vec<f64> = (0..resamples).map(|_| resample_mean(a) - resample_mean(b)).collect();
    diffs.sort_by(|x, y| x.total_cmp(y));
    let tail = (1.0 - level) / 2.0;
    let pick = |q: f64| diffs[((q * (resamples - 1) as f64).round() as usize).min(resamples - 1)];
    (pick(tail), pick(1.0 - tail))
}

pub const BOOTSTRAP_RESAMPLES: usize = 2000;
pub const BOOTSTRAP_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub regime: Regime,
    pub rule: RuleId,
    pub count: usize,
    pub timeouts: usize,
    pub mean_ratio_util: f64,
    pub min_ratio_util: f64,
    pub halfwidth_util: f64,
    pub mean_ratio_egal: f64,
    pub min_ratio_egal: f64,
    pub halfwidth_egal: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub rows: Vec<SummaryRow>,
}

impl ExperimentSummary {
    pub fn row(&self, regime: Regime, rule: RuleId) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.regime == regime && r.rule == rule)
    }
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn half_width(values: &[f64]) -> f64 {
    let (lo, hi) = bootstrap_mean_interval(values, 0.90, BOOTSTRAP_RESAMPLES, BOOTSTRAP_SEED);
    (hi - lo) / 2.0
}

/// Ratio column of one rule across records, skipping timeouts.
pub fn ratios(records: &[ExperimentRecord], rule: RuleId, egalitarian: bool) -> Vec<f64> {
    records
        .iter()
        .filter_map(|r| r.row(rule))
        .filter(|row| !row.timeout)
        .map(|row| if egalitarian { row.ratio_egal } else { row.ratio_util })
        .collect()
}

/// Mean and worst-case ratios per (regime, rule), in first-seen order.
pub fn summarize(records: &[ExperimentRecord]) -> Result<ExperimentSummary> {
    if records.is_empty() {
        return Err(PfcError::Input("cannot summarize an empty batch".into()));
    }
    let mut keys: Vec<(Regime, RuleId)> = Vec::new();
    for rec in records {
        for row in &rec.rows {
            if !keys.contains(&(rec.regime, row.rule)) {
                keys.push((rec.regime, row.rule));
            }
        }
    }
    let mut rows = Vec::new();
    for (regime, rule) in keys {
        let subset: Vec<ExperimentRecord> = records.iter().filter(|r| r.regime == regime).cloned().collect();
        let util = ratios(&subset, rule, false);
        let egal = ratios(&subset, rule, true);
        let timeouts = subset.iter().filter_map(|r| r.row(rule)).filter(|row| row.timeout).count();
        let min = |v: &[f64]| v.iter().copied().fold(f64::NAN, f64::min);
        rows.push(SummaryRow {
            regime,
            rule,
            count: util.len(),
            timeouts,
            mean_ratio_util: mean(&util),
            min_ratio_util: min(&util),
            halfwidth_util: half_width(&util),
            mean_ratio_egal: mean(&egal),
            min_ratio_egal: min(&egal),
            halfwidth_egal: half_width(&egal),
        });
    }
    Ok(ExperimentSummary { rows })
}

fn fmt_ratio(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.6}")
    }
}

/// One CSV line per (instance, rule), header first.
pub fn write_records_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        for row in &rec.rows {
            w.write_record([
                rec.regime.to_string(),
                rec.seed.to_string(),
                rec.n.to_string(),
                rec.m.to_string(),
                row.rule.to_string(),
                row.funded_count.to_string(),
                row.util_welfare.to_string(),
                row.egal_min.to_string(),
                fmt_ratio(row.ratio_util),
                fmt_ratio(row.ratio_egal),
                row.millis.to_string(),
                row.timeout.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Summary table; contains no timings, so it is reproducible byte for byte.
pub fn write_summary_csv<W: Write>(summary: &ExperimentSummary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for row in &summary.rows {
        w.write_record([
            row.regime.to_string(),
            row.rule.to_string(),
            row.count.to_string(),
            row.timeouts.to_string(),
            fmt_ratio(row.mean_ratio_util),
            fmt_ratio(row.min_ratio_util),
            fmt_ratio(row.halfwidth_util),
            fmt_ratio(row.mean_ratio_egal),
            fmt_ratio(row.min_ratio_egal),
            fmt_ratio(row.halfwidth_egal),
        ])?;
    }
    w.flush()?;
    Ok(())
}
