//! Welfare-maximising rules (UTIL, EGAL, NASH), optionally restricted to
//! minimal-return or implementable outcomes, and a constructive procedure
//! producing an implementable, individually rational, PO-IMP outcome.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::axioms::{best_alone, check, Axiom};
use crate::error::{PfcError, Result};
use crate::feasibility::{greedy_fill, is_implementable_set, is_mr_feasible_set};
use crate::model::{
    utility_vector_unchecked, Instance, Money, Outcome, OutcomeJson, PaymentMatrix, ProjectSet, UtilityVector,
};
use crate::search::{enumerate_feasible_sets, Constraint, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Welfare {
    Util,
    Egal,
    Nash,
}

impl Welfare {
    pub const ALL: [Welfare; 3] = [Welfare::Util, Welfare::Egal, Welfare::Nash];

    pub fn as_str(self) -> &'static str {
        match self {
            Welfare::Util => "UTIL",
            Welfare::Egal => "EGAL",
            Welfare::Nash => "NASH",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId {
    pub welfare: Welfare,
    pub constraint: Constraint,
}

impl RuleId {
    pub const fn new(welfare: Welfare, constraint: Constraint) -> Self {
        RuleId { welfare, constraint }
    }

    /// All nine rules, grouped by constraint.
    pub fn all() -> Vec<RuleId> {
        Constraint::ALL
            .iter()
            .flat_map(|&c| Welfare::ALL.iter().map(move |&w| RuleId::new(w, c)))
            .collect()
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constraint {
            Constraint::None => f.write_str(self.welfare.as_str()),
            c => write!(f, "{}-{}", self.welfare.as_str(), c),
        }
    }
}

impl FromStr for RuleId {
    type Err = PfcError;

    /// Accepts `UTIL`, `UTIL-NONE`, `EGAL-MR`, `nash-imp`, ...
    fn from_str(s: &str) -> Result<RuleId> {
        let upper = s.trim().to_ascii_uppercase().replace('_', "-");
        let (w, c) = upper.split_once('-').unwrap_or((upper.as_str(), "NONE"));
        let welfare = match w {
            "UTIL" => Welfare::Util,
            "EGAL" => Welfare::Egal,
            "NASH" => Welfare::Nash,
            _ => return Err(PfcError::Input(format!("unknown rule {s:?}"))),
        };
        Ok(RuleId::new(welfare, c.parse()?))
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Nash welfare as an exact, totally ordered key: fewer zero utilities is
/// better, then a larger product of the positive utilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashValue {
    pub zero_count: usize,
    pub product: BigUint,
}

impl NashValue {
    pub fn of(utilities: &UtilityVector) -> NashValue {
        let mut zero_count = 0;
        let mut product = BigUint::from(1u32);
        for u in &utilities.0 {
            if u.0 == 0 {
                zero_count += 1;
            } else {
                product *= u.0;
            }
        }
        NashValue { zero_count, product }
    }

    /// The plain product, zero whenever any utility is zero.
    pub fn plain_product(&self) -> BigUint {
        if self.zero_count > 0 {
            BigUint::default()
        } else {
            self.product.clone()
        }
    }
}

impl Ord for NashValue {
    fn cmp(&self, other: &Self) -> Ordering {
        other.zero_count.cmp(&self.zero_count).then_with(|| self.product.cmp(&other.product))
    }
}

impl PartialOrd for NashValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Utilities sorted non-decreasingly, compared lexicographically (leximin).
pub fn leximin_key(utilities: &UtilityVector) -> Vec<u64> {
    let mut v = utilities.values();
    v.sort_unstable();
    v
}

/// Comparison key of one set under one welfare notion; larger is better.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum WelfareKey {
    Util(u64),
    Egal(Vec<u64>),
    Nash(NashValue),
}

fn welfare_key(welfare: Welfare, utilities: &UtilityVector) -> WelfareKey {
    match welfare {
        Welfare::Util => WelfareKey::Util(utilities.0.iter().map(|m| m.0).sum()),
        Welfare::Egal => WelfareKey::Egal(leximin_key(utilities)),
        Welfare::Nash => WelfareKey::Nash(NashValue::of(utilities)),
    }
}

#[derive(Clone, Debug)]
pub struct WelfareSummary {
    pub utilitarian: u64,
    pub sorted_utilities: Vec<u64>,
    pub nash: NashValue,
}

impl WelfareSummary {
    pub fn of(utilities: &UtilityVector) -> Self {
        WelfareSummary {
            utilitarian: utilities.0.iter().map(|m| m.0).sum(),
            sorted_utilities: leximin_key(utilities),
            nash: NashValue::of(utilities),
        }
    }

    pub fn egalitarian_min(&self) -> u64 {
        self.sorted_utilities.first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct RuleResult {
    /// Rule name, e.g. `NASH-IMP`.
    pub rule: String,
    pub outcome: Outcome,
    pub utilities: UtilityVector,
    pub welfare: WelfareSummary,
    /// Every enumerated set tied with the winner on welfare.
    pub optimal_sets: Vec<ProjectSet>,
}

impl RuleResult {
    pub fn payments(&self) -> Option<&PaymentMatrix> {
        self.outcome.payments.as_ref()
    }
}

#[derive(Serialize)]
struct NashJson {
    zero_count: usize,
    positive_product: String,
    product: String,
}

#[derive(Serialize)]
struct RuleResultJson {
    rule: String,
    #[serde(flatten)]
    outcome: OutcomeJson,
    utilities: std::collections::BTreeMap<String, u64>,
    utilitarian_welfare: u64,
    egalitarian_welfare: Vec<u64>,
    nash_welfare: NashJson,
    optimal_sets: Vec<Vec<String>>,
}

impl RuleResult {
    pub fn to_json_value(&self, inst: &Instance) -> serde_json::Value {
        let json = RuleResultJson {
            rule: self.rule.clone(),
            outcome: OutcomeJson::from_outcome(inst, &self.outcome),
            utilities: inst.agents().iter().zip(&self.utilities.0).map(|(a, u)| (a.id.clone(), u.0)).collect(),
            utilitarian_welfare: self.welfare.utilitarian,
            egalitarian_welfare: self.welfare.sorted_utilities.clone(),
            nash_welfare: NashJson {
                zero_count: self.welfare.nash.zero_count,
                positive_product: self.welfare.nash.product.to_string(),
                product: self.welfare.nash.plain_product().to_string(),
            },
            optimal_sets: self.optimal_sets.iter().map(|&s| inst.project_ids(s)).collect(),
        };
        serde_json::to_value(json).expect("rule result serializes")
    }
}

/// Charges (and payments, when implementable) attached to a chosen set.
///
/// Unconstrained: greedy fill up to budgets. MR: greedy fill up to
/// `min(b_i, u_i(S))`. IMP: the max-flow payment witness.
pub fn outcome_for(inst: &Instance, set: ProjectSet, constraint: Constraint) -> Result<Outcome> {
    let out = match constraint {
        Constraint::None => {
            let budgets: Vec<Money> = inst.agents().iter().map(|a| a.budget).collect();
            let charges = greedy_fill(inst.set_cost(set), &budgets)
                .ok_or_else(|| PfcError::Input("project set is not affordable".into()))?;
            Outcome { funded: set, charges, payments: None }
        }
        Constraint::Mr => {
            let charges = is_mr_feasible_set(inst, set)
                .ok_or_else(|| PfcError::Input("project set admits no minimal-return outcome".into()))?;
            Outcome { funded: set, charges, payments: None }
        }
        Constraint::Imp => {
            let y = is_implementable_set(inst, set)
                .payments()
                .ok_or_else(|| PfcError::Input("project set is not implementable".into()))?;
            Outcome { funded: set, charges: y.charges(), payments: Some(y) }
        }
    };
    out.validate(inst)?;
    Ok(out)
}

/// Picks the welfare-optimal set among `sets`. Ties on welfare go to the
/// cheaper set, then the canonically least one.
pub fn select(inst: &Instance, sets: &[ProjectSet], welfare: Welfare) -> Option<(ProjectSet, Vec<ProjectSet>)> {
    let mut best: Option<(WelfareKey, Money, ProjectSet)> = None;
    let mut tied = Vec::new();
    for &set in sets {
        let key = welfare_key(welfare, &utility_vector_unchecked(inst, set));
        let cost = inst.set_cost(set);
        match &best {
            Some((k, _, _)) if key < *k => {}
            Some((k, c, s)) if key == *k => {
                tied.push(set);
                if (cost, set) < (*c, *s) {
                    best = Some((key, cost, set));
                }
            }
            _ => {
                tied.clear();
                tied.push(set);
                best = Some((key, cost, set));
            }
        }
    }
    best.map(|(_, _, set)| (set, tied))
}

fn result_for(inst: &Instance, label: String, outcome: Outcome, optimal_sets: Vec<ProjectSet>) -> RuleResult {
    let utilities = utility_vector_unchecked(inst, outcome.funded);
    RuleResult { rule: label, welfare: WelfareSummary::of(&utilities), utilities, outcome, optimal_sets }
}

/// Applies a rule to pre-enumerated feasible sets of its constraint.
pub fn solve_over(inst: &Instance, rule: RuleId, sets: &[ProjectSet]) -> Result<RuleResult> {
    let (set, tied) = select(inst, sets, rule.welfare).ok_or_else(|| PfcError::Input("no feasible set".into()))?;
    let outcome = outcome_for(inst, set, rule.constraint)?;
    Ok(result_for(inst, rule.to_string(), outcome, tied))
}

/// Exact optimum of a rule by exhaustive search over its feasible sets.
pub fn solve(inst: &Instance, rule: RuleId, opts: &SearchOptions) -> Result<RuleResult> {
    let sets = enumerate_feasible_sets(inst, rule.constraint, opts)?;
    solve_over(inst, rule, &sets)
}

/// Axioms every outcome of `rule` satisfies on every instance with positive
/// project costs.
pub fn guaranteed_axioms(rule: RuleId) -> &'static [Axiom] {
    match rule.constraint {
        Constraint::None => &[Axiom::Po, Axiom::PoMr, Axiom::PoImp, Axiom::PoPay, Axiom::Exh],
        Constraint::Mr => &[Axiom::Mr, Axiom::PoMr, Axiom::PoImp, Axiom::PoPay, Axiom::Exh],
        Constraint::Imp => &[Axiom::Mr, Axiom::Imp, Axiom::Prop, Axiom::PoImp, Axiom::Exh],
    }
}

/// Re-checks a solved outcome against every axiom its rule guarantees;
/// returns the failed ones.
pub fn verify_guarantees(inst: &Instance, result: &RuleResult, rule: RuleId, opts: &SearchOptions) -> Result<Vec<Axiom>> {
    let mut failed = Vec::new();
    for &axiom in guaranteed_axioms(rule) {
        if !check(inst, &result.outcome, axiom, opts.caps)?.holds {
            failed.push(axiom);
        }
    }
    Ok(failed)
}

/// Builds an IMP + IR + PO-IMP outcome: every agent funds its best solo set
/// in full, over-funded projects refund their surplus equally among their
/// payers, and the result is then Pareto-improved within implementable sets
/// until no improvement remains.
pub fn construct_imp_ir_poimp(inst: &Instance, opts: &SearchOptions) -> Result<RuleResult> {
    opts.caps.check_projects(inst)?;
    let (n, m) = (inst.n(), inst.m());
    let solo: Vec<ProjectSet> = (0..n).map(|i| best_alone(inst, i).1).collect();
    let funded = solo.iter().fold(ProjectSet::EMPTY, |acc, &s| acc.union(s));

    // each payer of c first contributes w(c); split it equally instead,
    // handing the indivisible remainder to the first payers
    let mut y = PaymentMatrix::zeros(n, m);
    for c in funded.iter() {
        let payers: Vec<usize> = (0..n).filter(|&i| solo[i].contains(c)).collect();
        let k = payers.len() as u64;
        let (share, extra) = (inst.cost(c).0 / k, inst.cost(c).0 % k);
        for (rank, &i) in payers.iter().enumerate() {
            y.set(i, c, Money(share + u64::from((rank as u64) < extra)));
        }
    }
    let mut outcome = Outcome { funded, charges: y.charges(), payments: Some(y) };
    outcome.validate(inst)?;

    let candidates = enumerate_feasible_sets(inst, Constraint::Imp, opts)?;
    let mut current = utility_vector_unchecked(inst, outcome.funded);
    loop {
        let better = candidates
            .iter()
            .copied()
            .find(|&s| utility_vector_unchecked(inst, s).pareto_dominates(&current));
        match better {
            Some(set) => {
                outcome = outcome_for(inst, set, Constraint::Imp)?;
                current = utility_vector_unchecked(inst, set);
            }
            None => break,
        }
    }
    Ok(result_for(inst, "IMP-IR-PO_IMP".into(), outcome, Vec::new()))
}
