//! Domain types for participatory funding: agents with budgets and approval
//! sets, priced projects, and outcomes (funded set plus per-agent charges).
//!
//! Agents and projects are stored in canonical (lexicographic id) order and
//! addressed internally by index. Project sets are bitsets over project
//! indices, which caps an instance at [`MAX_PROJECTS`] projects.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{PfcError, Result};

/// Hard limit on the number of projects in one instance.
pub const MAX_PROJECTS: usize = 64;

/// A non-negative amount of money in indivisible currency units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Money(pub u64);

impl Money {
    pub const ZERO: Money = Money(0);

    pub fn saturating_sub(self, other: Money) -> Money {
        Money(self.0.saturating_sub(other.0))
    }
}

impl Add for Money {
    type Output = Money;
    fn add(self, rhs: Money) -> Money {
        Money(self.0 + rhs.0)
    }
}

impl AddAssign for Money {
    fn add_assign(&mut self, rhs: Money) {
        self.0 += rhs.0;
    }
}

impl Sub for Money {
    type Output = Money;
    fn sub(self, rhs: Money) -> Money {
        Money(self.0 - rhs.0)
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        Money(iter.map(|m| m.0).sum())
    }
}

impl<'a> Sum<&'a Money> for Money {
    fn sum<I: Iterator<Item = &'a Money>>(iter: I) -> Money {
        Money(iter.map(|m| m.0).sum())
    }
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A set of projects, as a bitset over project indices.
///
/// The canonical order on sets is the numeric order of the bitmask, so the
/// "least" set among several candidates is the one with the smallest mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectSet(pub u64);

impl ProjectSet {
    pub const EMPTY: ProjectSet = ProjectSet(0);

    pub fn full(m: usize) -> ProjectSet {
        if m >= 64 {
            ProjectSet(u64::MAX)
        } else {
            ProjectSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(c: usize) -> ProjectSet {
        ProjectSet(1 << c)
    }

    pub fn contains(self, c: usize) -> bool {
        self.0 >> c & 1 == 1
    }

    pub fn with(self, c: usize) -> ProjectSet {
        ProjectSet(self.0 | 1 << c)
    }

    pub fn without(self, c: usize) -> ProjectSet {
        ProjectSet(self.0 & !(1 << c))
    }

    pub fn union(self, other: ProjectSet) -> ProjectSet {
        ProjectSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ProjectSet) -> ProjectSet {
        ProjectSet(self.0 & other.0)
    }

    pub fn difference(self, other: ProjectSet) -> ProjectSet {
        ProjectSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ProjectSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Project indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    /// All subsets of `self`, in increasing mask order, including the empty set.
    pub fn subsets(self) -> impl Iterator<Item = ProjectSet> {
        let universe = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == universe {
                None
            } else {
                // next subset of `universe` in increasing numeric order
                Some(((cur | !universe).wrapping_add(1)) & universe)
            };
            Some(ProjectSet(cur))
        })
    }
}

impl FromIterator<usize> for ProjectSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(ProjectSet::EMPTY, ProjectSet::with)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agent {
    pub id: String,
    pub budget: Money,
    pub approves: ProjectSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Project {
    pub id: String,
    pub cost: Money,
}

/// A funding setting: agents with budgets and approval sets over priced projects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    agents: Vec<Agent>,
    projects: Vec<Project>,
}

/// Builder-side description of one agent, with approvals given by project id.
#[derive(Clone, Debug)]
pub struct AgentSpec {
    pub id: String,
    pub budget: u64,
    pub approves: Vec<String>,
}

impl AgentSpec {
    pub fn new(id: impl Into<String>, budget: u64, approves: &[&str]) -> Self {
        AgentSpec {
            id: id.into(),
            budget,
            approves: approves.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl Instance {
    /// Builds an instance, sorting agents and projects into canonical order.
    pub fn new(agents: Vec<AgentSpec>, projects: Vec<(String, u64)>) -> Result<Instance> {
        if agents.is_empty() {
            return Err(PfcError::parse("agents", "at least one agent is required"));
        }
        if projects.is_empty() {
            return Err(PfcError::parse("projects", "at least one project is required"));
        }
        if projects.len() > MAX_PROJECTS {
            return Err(PfcError::parse(
                "projects",
                format!("at most {MAX_PROJECTS} projects are supported, got {}", projects.len()),
            ));
        }
        let mut projects: Vec<Project> = projects
            .into_iter()
            .map(|(id, cost)| Project { id, cost: Money(cost) })
            .collect();
        projects.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in projects.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(PfcError::parse("projects", format!("duplicate project id {:?}", pair[0].id)));
            }
        }
        let index: BTreeMap<&str, usize> =
            projects.iter().enumerate().map(|(c, p)| (p.id.as_str(), c)).collect();

        let mut built = Vec::with_capacity(agents.len());
        for spec in agents {
            let mut approves = ProjectSet::EMPTY;
            for pid in &spec.approves {
                let c = *index.get(pid.as_str()).ok_or_else(|| {
                    PfcError::parse(
                        format!("agents[{}].approves", spec.id),
                        format!("unknown project {pid:?}"),
                    )
                })?;
                approves = approves.with(c);
            }
            built.push(Agent { id: spec.id, budget: Money(spec.budget), approves });
        }
        built.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in built.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(PfcError::parse("agents", format!("duplicate agent id {:?}", pair[0].id)));
            }
        }
        Ok(Instance { agents: built, projects })
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn projects(&self) -> &[Project] {
        &self.projects
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn m(&self) -> usize {
        self.projects.len()
    }

    pub fn all_projects(&self) -> ProjectSet {
        ProjectSet::full(self.m())
    }

    pub fn budget(&self, i: usize) -> Money {
        self.agents[i].budget
    }

    pub fn approvals(&self, i: usize) -> ProjectSet {
        self.agents[i].approves
    }

    pub fn cost(&self, c: usize) -> Money {
        self.projects[c].cost
    }

    /// w(S), the total cost of a project set.
    pub fn set_cost(&self, set: ProjectSet) -> Money {
        set.iter().map(|c| self.projects[c].cost).sum()
    }

    /// b(N), the sum of all budgets.
    pub fn total_budget(&self) -> Money {
        self.agents.iter().map(|a| a.budget).sum()
    }

    pub fn agent_index(&self, id: &str) -> Result<usize> {
        self.agents
            .binary_search_by(|a| a.id.as_str().cmp(id))
            .map_err(|_| PfcError::UnknownAgent(id.to_string()))
    }

    pub fn project_index(&self, id: &str) -> Result<usize> {
        self.projects
            .binary_search_by(|p| p.id.as_str().cmp(id))
            .map_err(|_| PfcError::UnknownProject(id.to_string()))
    }

    /// Resolves project ids to a set.
    pub fn project_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<ProjectSet> {
        ids.iter()
            .map(|id| self.project_index(id.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().collect())
    }

    /// Project ids of a set, in canonical order.
    pub fn project_ids(&self, set: ProjectSet) -> Vec<String> {
        set.iter().map(|c| self.projects[c].id.clone()).collect()
    }

    pub fn agent_ids(&self, agents: &[usize]) -> Vec<String> {
        agents.iter().map(|&i| self.agents[i].id.clone()).collect()
    }

    fn check_set(&self, set: ProjectSet) -> Result<()> {
        if set.is_subset(self.all_projects()) {
            Ok(())
        } else {
            let c = (set.0 >> self.m()).trailing_zeros() as usize + self.m();
            Err(PfcError::UnknownProject(format!("index {c}")))
        }
    }

    /// Returns a copy with agent `i`'s approval set replaced.
    pub fn with_approvals(&self, i: usize, approves: ProjectSet) -> Result<Instance> {
        self.check_set(approves)?;
        let mut out = self.clone();
        out.agents[i].approves = approves;
        Ok(out)
    }
}

/// u_i(S): the total cost of the funded projects agent `i` approves.
pub fn utility(inst: &Instance, set: ProjectSet, i: usize) -> Result<Money> {
    inst.check_set(set)?;
    if i >= inst.n() {
        return Err(PfcError::UnknownAgent(format!("index {i}")));
    }
    Ok(utility_unchecked(inst, set, i))
}

#[inline]
pub(crate) fn utility_unchecked(inst: &Instance, set: ProjectSet, i: usize) -> Money {
    inst.set_cost(set.intersection(inst.approvals(i)))
}

/// Per-agent utilities in canonical agent order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtilityVector(pub Vec<Money>);

impl UtilityVector {
    pub fn values(&self) -> Vec<u64> {
        self.0.iter().map(|m| m.0).collect()
    }

    /// Weak domination in every coordinate, strict in at least one.
    pub fn pareto_dominates(&self, other: &UtilityVector) -> bool {
        let mut strict = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return false;
            }
            strict |= a > b;
        }
        strict
    }
}

pub fn utility_vector(inst: &Instance, set: ProjectSet) -> Result<UtilityVector> {
    inst.check_set(set)?;
    Ok(utility_vector_unchecked(inst, set))
}

pub(crate) fn utility_vector_unchecked(inst: &Instance, set: ProjectSet) -> UtilityVector {
    UtilityVector((0..inst.n()).map(|i| utility_unchecked(inst, set, i)).collect())
}

/// Per (agent, project) contributions witnessing implementability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaymentMatrix {
    entries: Vec<Vec<Money>>,
}

impl PaymentMatrix {
    pub fn zeros(n: usize, m: usize) -> Self {
        PaymentMatrix { entries: vec![vec![Money::ZERO; m]; n] }
    }

    pub fn get(&self, i: usize, c: usize) -> Money {
        self.entries[i][c]
    }

    pub fn set(&mut self, i: usize, c: usize, amount: Money) {
        self.entries[i][c] = amount;
    }

    pub fn agent_total(&self, i: usize) -> Money {
        self.entries[i].iter().sum()
    }

    pub fn project_total(&self, c: usize) -> Money {
        self.entries.iter().map(|row| row[c]).sum()
    }

    pub fn charges(&self) -> Vec<Money> {
        (0..self.entries.len()).map(|i| self.agent_total(i)).collect()
    }

    /// Checks every matrix invariant for funding `set` with charges `charges`.
    pub fn is_valid_for(&self, inst: &Instance, set: ProjectSet, charges: &[Money]) -> bool {
        if self.entries.len() != inst.n() || self.entries.iter().any(|r| r.len() != inst.m()) {
            return false;
        }
        for i in 0..inst.n() {
            if self.agent_total(i) != charges[i] {
                return false;
            }
            let approved = inst.approvals(i);
            if (0..inst.m()).any(|c| !approved.contains(c) && self.get(i, c) > Money::ZERO) {
                return false;
            }
        }
        (0..inst.m()).all(|c| {
            let total = self.project_total(c);
            if set.contains(c) {
                total == inst.cost(c)
            } else {
                total == Money::ZERO
            }
        })
    }
}

/// A funded project set together with the charge levied on each agent.
///
/// Valid outcomes satisfy `x_i <= b_i` and `sum(x) == w(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub funded: ProjectSet,
    pub charges: Vec<Money>,
    pub payments: Option<PaymentMatrix>,
}

impl Outcome {
    pub fn new(inst: &Instance, funded: ProjectSet, charges: Vec<Money>) -> Result<Outcome> {
        let out = Outcome { funded, charges, payments: None };
        out.validate(inst)?;
        Ok(out)
    }

    pub fn empty(inst: &Instance) -> Outcome {
        Outcome { funded: ProjectSet::EMPTY, charges: vec![Money::ZERO; inst.n()], payments: None }
    }

    pub fn with_payments(mut self, payments: PaymentMatrix) -> Outcome {
        self.payments = Some(payments);
        self
    }

    pub fn total_charge(&self) -> Money {
        self.charges.iter().sum()
    }

    pub fn validate(&self, inst: &Instance) -> Result<()> {
        inst.check_set(self.funded)?;
        if self.charges.len() != inst.n() {
            return Err(PfcError::InvalidOutcome(format!(
                "expected {} charges, got {}",
                inst.n(),
                self.charges.len()
            )));
        }
        for (i, (x, a)) in self.charges.iter().zip(inst.agents()).enumerate() {
            if *x > a.budget {
                return Err(PfcError::InvalidOutcome(format!(
                    "agent {} charged {} above budget {}",
                    inst.agents()[i].id,
                    x,
                    a.budget
                )));
            }
        }
        let cost = inst.set_cost(self.funded);
        if self.total_charge() != cost {
            return Err(PfcError::InvalidOutcome(format!(
                "charges sum to {} but funded projects cost {}",
                self.total_charge(),
                cost
            )));
        }
        if let Some(p) = &self.payments {
            if !p.is_valid_for(inst, self.funded, &self.charges) {
                return Err(PfcError::InvalidOutcome("payments do not match funded set and charges".into()));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON wire format

#[derive(Serialize)]
struct AgentJson<'a> {
    id: &'a str,
    budget: u64,
    approves: Vec<&'a str>,
}

#[derive(Serialize)]
struct ProjectJson<'a> {
    id: &'a str,
    cost: u64,
}

#[derive(Serialize)]
struct InstanceJson<'a> {
    agents: Vec<AgentJson<'a>>,
    projects: Vec<ProjectJson<'a>>,
}

fn field<'v>(obj: &'v Value, key: &str, path: &str) -> Result<&'v Value> {
    obj.get(key).ok_or_else(|| PfcError::parse(format!("{path}.{key}"), "missing field"))
}

fn money_field(obj: &Value, key: &str, path: &str) -> Result<u64> {
    let v = field(obj, key, path)?;
    v.as_u64().ok_or_else(|| {
        PfcError::parse(format!("{path}.{key}"), format!("expected a non-negative integer, got {v}"))
    })
}

fn str_value<'v>(v: &'v Value, path: &str) -> Result<&'v str> {
    v.as_str().ok_or_else(|| PfcError::parse(path, format!("expected a string, got {v}")))
}

fn array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| PfcError::parse(path, "expected an array"))
}

fn object<'v>(v: &'v Value, path: &str) -> Result<&'v serde_json::Map<String, Value>> {
    v.as_object().ok_or_else(|| PfcError::parse(path, "expected an object"))
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| PfcError::parse("$", e.to_string()))?;
    object(&root, "$")?;
    let mut agents = Vec::new();
    for (k, a) in array(field(&root, "agents", "$")?, "agents")?.iter().enumerate() {
        let path = format!("agents[{k}]");
        object(a, &path)?;
        let id = str_value(field(a, "id", &path)?, &format!("{path}.id"))?.to_string();
        let budget = money_field(a, "budget", &path)?;
        let approves_path = format!("{path}.approves");
        let mut approves = Vec::new();
        let mut seen = HashSet::new();
        for p in array(field(a, "approves", &path)?, &approves_path)? {
            let pid = str_value(p, &approves_path)?;
            if !seen.insert(pid) {
                return Err(PfcError::parse(approves_path, format!("duplicate project {pid:?}")));
            }
            approves.push(pid.to_string());
        }
        agents.push(AgentSpec { id, budget, approves });
    }
    let mut projects = Vec::new();
    for (k, p) in array(field(&root, "projects", "$")?, "projects")?.iter().enumerate() {
        let path = format!("projects[{k}]");
        object(p, &path)?;
        let id = str_value(field(p, "id", &path)?, &format!("{path}.id"))?.to_string();
        projects.push((id, money_field(p, "cost", &path)?));
    }
    Instance::new(agents, projects)
}

/// Canonical compact JSON, newline-terminated.
pub fn serialize_instance(inst: &Instance) -> Vec<u8> {
    let json = InstanceJson {
        agents: inst
            .agents
            .iter()
            .map(|a| AgentJson {
                id: &a.id,
                budget: a.budget.0,
                approves: a.approves.iter().map(|c| inst.projects[c].id.as_str()).collect(),
            })
            .collect(),
        projects: inst.projects.iter().map(|p| ProjectJson { id: &p.id, cost: p.cost.0 }).collect(),
    };
    let mut out = serde_json::to_vec(&json).expect("instance serializes");
    out.push(b'\n');
    out
}

#[derive(Serialize)]
pub(crate) struct OutcomeJson {
    pub funded: Vec<String>,
    pub charges: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payments: Option<BTreeMap<String, BTreeMap<String, u64>>>,
}

impl OutcomeJson {
    pub(crate) fn from_outcome(inst: &Instance, out: &Outcome) -> OutcomeJson {
        OutcomeJson {
            funded: inst.project_ids(out.funded),
            charges: inst.agents.iter().zip(&out.charges).map(|(a, x)| (a.id.clone(), x.0)).collect(),
            payments: out.payments.as_ref().map(|p| {
                inst.agents
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        let row = (0..inst.m())
                            .filter(|&c| p.get(i, c) > Money::ZERO)
                            .map(|c| (inst.projects[c].id.clone(), p.get(i, c).0))
                            .collect();
                        (a.id.clone(), row)
                    })
                    .collect()
            }),
        }
    }
}

/// Parses an outcome against its instance and validates every invariant.
pub fn parse_outcome(inst: &Instance, bytes: &[u8]) -> Result<Outcome> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| PfcError::parse("$", e.to_string()))?;
    object(&root, "$")?;
    let mut funded = ProjectSet::EMPTY;
    for p in array(field(&root, "funded", "$")?, "funded")? {
        let pid = str_value(p, "funded")?;
        let c = inst.project_index(pid).map_err(|_| PfcError::parse("funded", format!("unknown project {pid:?}")))?;
        if funded.contains(c) {
            return Err(PfcError::parse("funded", format!("duplicate project {pid:?}")));
        }
        funded = funded.with(c);
    }
    let mut charges = vec![Money::ZERO; inst.n()];
    for (aid, v) in object(field(&root, "charges", "$")?, "charges")? {
        let path = format!("charges.{aid}");
        let i = inst.agent_index(aid).map_err(|_| PfcError::parse(&path, "unknown agent"))?;
        charges[i] = Money(v.as_u64().ok_or_else(|| {
            PfcError::parse(&path, format!("expected a non-negative integer, got {v}"))
        })?);
    }
    let payments = match root.get("payments") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let mut matrix = PaymentMatrix::zeros(inst.n(), inst.m());
            for (aid, row) in object(v, "payments")? {
                let path = format!("payments.{aid}");
                let i = inst.agent_index(aid).map_err(|_| PfcError::parse(&path, "unknown agent"))?;
                for (pid, amount) in object(row, &path)? {
                    let cell = format!("{path}.{pid}");
                    let c = inst.project_index(pid).map_err(|_| PfcError::parse(&cell, "unknown project"))?;
                    let amount = amount.as_u64().ok_or_else(|| {
                        PfcError::parse(&cell, format!("expected a non-negative integer, got {amount}"))
                    })?;
                    matrix.set(i, c, Money(amount));
                }
            }
            Some(matrix)
        }
    };
    let out = Outcome { funded, charges, payments };
    out.validate(inst)?;
    Ok(out)
}

pub fn serialize_outcome(inst: &Instance, out: &Outcome) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(&OutcomeJson::from_outcome(inst, out)).expect("outcome serializes");
    bytes.push(b'\n');
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn table2_utilities() {
        let inst = fixtures::table2();
        let abc = inst.project_set(&["A", "B", "C"]).unwrap();
        let de = inst.project_set(&["D", "E"]).unwrap();
        assert_eq!(utility(&inst, abc, 0).unwrap(), Money(4));
        assert_eq!(utility(&inst, de, 4).unwrap(), Money(7));
        for i in 0..inst.n() {
            assert_eq!(utility(&inst, ProjectSet::EMPTY, i).unwrap(), Money::ZERO);
        }
    }

    #[test]
    fn utility_vector_columns() {
        let inst = fixtures::table2();
        let bd = inst.project_set(&["B", "D"]).unwrap();
        assert_eq!(utility_vector(&inst, bd).unwrap().values(), vec![4, 0, 0, 7, 7]);
        let de = inst.project_set(&["D", "E"]).unwrap();
        assert_eq!(utility_vector(&inst, de).unwrap().values(), vec![7; 5]);
        assert_eq!(utility_vector(&inst, ProjectSet::EMPTY).unwrap().values(), vec![0; 5]);
    }

    #[test]
    fn unknown_ids_are_input_errors() {
        let inst = fixtures::table2();
        assert!(matches!(inst.project_set(&["Q"]), Err(PfcError::UnknownProject(_))));
        assert!(matches!(inst.agent_index("9"), Err(PfcError::UnknownAgent(_))));
        assert!(utility(&inst, ProjectSet::singleton(10), 0).is_err());
        assert!(utility(&inst, ProjectSet::EMPTY, 17).is_err());
    }

    #[test]
    fn table1_round_trip() {
        let inst = fixtures::table1();
        let bytes = serialize_instance(&inst);
        let back = parse_instance(&bytes).unwrap();
        assert_eq!(back, inst);
        assert_eq!(serialize_instance(&back), bytes);
    }

    #[test]
    fn empty_approvals_accepted() {
        let json = br#"{"agents":[{"id":"a","budget":3,"approves":[]}],"projects":[{"id":"X","cost":2}]}"#;
        let inst = parse_instance(json).unwrap();
        assert!(inst.approvals(0).is_empty());
    }

    #[test]
    fn negative_cost_names_field() {
        let json = br#"{"agents":[{"id":"a","budget":3,"approves":["X"]}],"projects":[{"id":"X","cost":-3}]}"#;
        match parse_instance(json) {
            Err(PfcError::Parse { field, .. }) => assert_eq!(field, "projects[0].cost"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_rejections() {
        let dup = br#"{"agents":[{"id":"a","budget":3,"approves":[]},{"id":"a","budget":1,"approves":[]}],"projects":[{"id":"X","cost":2}]}"#;
        assert!(matches!(parse_instance(dup), Err(PfcError::Parse { .. })));
        let unknown = br#"{"agents":[{"id":"a","budget":3,"approves":["Y"]}],"projects":[{"id":"X","cost":2}]}"#;
        match parse_instance(unknown) {
            Err(PfcError::Parse { field, .. }) => assert!(field.contains("approves")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_instance(b"{not json").is_err());
        let no_projects = br#"{"agents":[{"id":"a","budget":3,"approves":[]}],"projects":[]}"#;
        assert!(parse_instance(no_projects).is_err());
    }

    #[test]
    fn outcome_round_trip_with_payments() {
        let inst = fixtures::table2();
        let abc = inst.project_set(&["A", "B", "C"]).unwrap();
        let mut y = PaymentMatrix::zeros(5, 5);
        let (a, b, c) = (0, 1, 2);
        y.set(0, b, Money(4));
        y.set(1, a, Money(1));
        y.set(2, a, Money(1));
        y.set(3, a, Money(5));
        y.set(4, c, Money(3));
        let out = Outcome::new(&inst, abc, [4, 1, 1, 5, 3].map(Money).to_vec()).unwrap().with_payments(y);
        out.validate(&inst).unwrap();
        let bytes = serialize_outcome(&inst, &out);
        assert_eq!(parse_outcome(&inst, &bytes).unwrap(), out);
    }

    #[test]
    fn outcome_invariants() {
        let inst = fixtures::mr_not_imp();
        let xy = inst.project_set(&["X", "Y"]).unwrap();
        // over-collection is not a valid outcome
        assert!(Outcome::new(&inst, xy, [20, 20, 5].map(Money).to_vec()).is_err());
        assert!(Outcome::new(&inst, xy, [20, 20, 0].map(Money).to_vec()).is_ok());
        assert!(Outcome::new(&inst, xy, [25, 15, 0].map(Money).to_vec()).is_err());
    }

    #[test]
    fn subsets_enumerate_in_mask_order() {
        let s = ProjectSet(0b1010);
        let subs: Vec<u64> = s.subsets().map(|p| p.0).collect();
        assert_eq!(subs, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(ProjectSet::full(3).subsets().count(), 8);
    }
}
