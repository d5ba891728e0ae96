//! Axiom checkers for outcomes. Each returns a verdict, and every negative
//! verdict carries a witness that [`verify_witness`] can re-check from
//! scratch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{PfcError, Result};
use crate::feasibility::{is_implementable_outcome, Implementability};
use crate::model::{utility_unchecked, utility_vector_unchecked, Instance, Money, Outcome, ProjectSet};
use crate::search::{enumerate_feasible_sets, Caps, Constraint, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Axiom {
    Mr,
    Imp,
    Ir,
    Exh,
    Po,
    PoMr,
    PoImp,
    PoPay,
    PoIr,
    Core,
    Prop,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::Mr,
        Axiom::Imp,
        Axiom::Ir,
        Axiom::Exh,
        Axiom::Po,
        Axiom::PoMr,
        Axiom::PoImp,
        Axiom::PoPay,
        Axiom::PoIr,
        Axiom::Core,
        Axiom::Prop,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Mr => "MR",
            Axiom::Imp => "IMP",
            Axiom::Ir => "IR",
            Axiom::Exh => "EXH",
            Axiom::Po => "PO",
            Axiom::PoMr => "PO_MR",
            Axiom::PoImp => "PO_IMP",
            Axiom::PoPay => "PO_PAY",
            Axiom::PoIr => "PO_IR",
            Axiom::Core => "CORE",
            Axiom::Prop => "PROP",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axiom {
    type Err = PfcError;

    fn from_str(s: &str) -> Result<Axiom> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Axiom::ALL
            .into_iter()
            .find(|a| a.as_str() == norm)
            .ok_or_else(|| PfcError::Input(format!("unknown axiom {s:?}")))
    }
}

/// Counterexample attached to a failed axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An agent charged more than it gets back.
    OverCharged { agent: String, utility: u64, charge: u64 },
    /// Funded projects whose supporters together cannot cover them within
    /// their charges.
    Unsupported { projects: Vec<String>, supporters: Vec<String>, capacity: u64, cost: u64 },
    /// An agent who would do better spending its budget alone.
    BetterAlone { agent: String, utility: u64, alone: u64, projects: Vec<String> },
    /// Approvers of an unfunded project whose leftover budget covers it.
    PooledSlack { project: String, agents: Vec<String>, slack: u64, cost: u64 },
    /// A permitted project set every agent weakly prefers, someone strictly.
    Dominating { funded: Vec<String>, cost: u64, utilities: Vec<u64> },
    /// A group that can afford projects it (or each member) prefers.
    Coalition { agents: Vec<String>, projects: Vec<String>, budget: u64, cost: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn pass(axiom: Axiom) -> Self {
        AxiomReport { axiom, holds: true, witness: None }
    }

    fn fail(axiom: Axiom, witness: Witness) -> Self {
        AxiomReport { axiom, holds: false, witness: Some(witness) }
    }
}

/// One entry of [`check_all`]: a verdict, or the reason the check was skipped.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CheckEntry {
    Checked(AxiomReport),
    Skipped { axiom: Axiom, skipped: String },
}

pub fn check_mr(inst: &Instance, out: &Outcome) -> AxiomReport {
    for i in 0..inst.n() {
        let u = utility_unchecked(inst, out.funded, i);
        if u < out.charges[i] {
            return AxiomReport::fail(
                Axiom::Mr,
                Witness::OverCharged { agent: inst.agents()[i].id.clone(), utility: u.0, charge: out.charges[i].0 },
            );
        }
    }
    AxiomReport::pass(Axiom::Mr)
}

pub fn check_imp(inst: &Instance, out: &Outcome) -> AxiomReport {
    match is_implementable_outcome(inst, out) {
        Implementability::Feasible(_) => AxiomReport::pass(Axiom::Imp),
        Implementability::Infeasible { violation, .. } => AxiomReport::fail(
            Axiom::Imp,
            Witness::Unsupported {
                projects: inst.project_ids(violation.projects),
                supporters: inst.agent_ids(&violation.supporters),
                capacity: violation.supporter_capacity.0,
                cost: violation.cost.0,
            },
        ),
    }
}

/// The most agent `i` can usefully spend alone: a max-cost subset of its
/// approved projects within its budget. Ties go to the least set.
pub fn best_alone(inst: &Instance, i: usize) -> (Money, ProjectSet) {
    let items: Vec<(usize, u64)> = inst.approvals(i).iter().map(|c| (c, inst.cost(c).0)).collect();
    let capacity = inst.budget(i).0;
    // suffix sums for the optimistic bound
    let mut rest = vec![0u64; items.len() + 1];
    for k in (0..items.len()).rev() {
        rest[k] = rest[k + 1] + items[k].1;
    }
    let mut best = (0u64, ProjectSet::EMPTY);
    fn go(
        k: usize,
        value: u64,
        set: ProjectSet,
        items: &[(usize, u64)],
        rest: &[u64],
        capacity: u64,
        best: &mut (u64, ProjectSet),
    ) {
        if value + rest[k] < best.0 {
            return;
        }
        if k == items.len() {
            if value > best.0 || (value == best.0 && set < best.1) {
                *best = (value, set);
            }
            return;
        }
        let (c, w) = items[k];
        if value + w <= capacity {
            go(k + 1, value + w, set.with(c), items, rest, capacity, best);
        }
        go(k + 1, value, set, items, rest, capacity, best);
    }
    go(0, 0, ProjectSet::EMPTY, &items, &rest, capacity, &mut best);
    (Money(best.0), best.1)
}

pub fn check_ir(inst: &Instance, out: &Outcome) -> AxiomReport {
    for i in 0..inst.n() {
        let u = utility_unchecked(inst, out.funded, i);
        let (alone, set) = best_alone(inst, i);
        if u < alone {
            return AxiomReport::fail(
                Axiom::Ir,
                Witness::BetterAlone {
                    agent: inst.agents()[i].id.clone(),
                    utility: u.0,
                    alone: alone.0,
                    projects: inst.project_ids(set),
                },
            );
        }
    }
    AxiomReport::pass(Axiom::Ir)
}

/// Slack is additive, so the strongest pooling group for an unfunded project
/// is all of its approvers.
pub fn check_exh(inst: &Instance, out: &Outcome) -> AxiomReport {
    for c in inst.all_projects().difference(out.funded).iter() {
        let approvers: Vec<usize> = (0..inst.n()).filter(|&i| inst.approvals(i).contains(c)).collect();
        if approvers.is_empty() {
            continue;
        }
        let slack: Money = approvers.iter().map(|&i| inst.budget(i) - out.charges[i]).sum();
        if slack >= inst.cost(c) {
            let mut agents: Vec<usize> =
                approvers.iter().copied().filter(|&i| inst.budget(i) > out.charges[i]).collect();
            if agents.is_empty() {
                agents = approvers;
            }
            return AxiomReport::fail(
                Axiom::Exh,
                Witness::PooledSlack {
                    project: inst.projects()[c].id.clone(),
                    agents: inst.agent_ids(&agents),
                    slack: slack.0,
                    cost: inst.cost(c).0,
                },
            );
        }
    }
    AxiomReport::pass(Axiom::Exh)
}

fn is_ir_set(inst: &Instance, set: ProjectSet, alone: &[Money]) -> bool {
    (0..inst.n()).all(|i| utility_unchecked(inst, set, i) >= alone[i])
}

/// Project sets a Pareto check of the given kind compares against.
pub fn pareto_candidates(inst: &Instance, out: &Outcome, axiom: Axiom, caps: Caps) -> Result<Vec<ProjectSet>> {
    let opts = SearchOptions::with_caps(caps);
    Ok(match axiom {
        Axiom::Po => enumerate_feasible_sets(inst, Constraint::None, &opts)?,
        Axiom::PoMr => enumerate_feasible_sets(inst, Constraint::Mr, &opts)?,
        Axiom::PoImp => enumerate_feasible_sets(inst, Constraint::Imp, &opts)?,
        Axiom::PoPay => {
            let price = out.total_charge();
            enumerate_feasible_sets(inst, Constraint::None, &opts)?
                .into_iter()
                .filter(|&s| inst.set_cost(s) <= price)
                .collect()
        }
        Axiom::PoIr => {
            let alone: Vec<Money> = (0..inst.n()).map(|i| best_alone(inst, i).0).collect();
            enumerate_feasible_sets(inst, Constraint::None, &opts)?
                .into_iter()
                .filter(|&s| is_ir_set(inst, s, &alone))
                .collect()
        }
        other => return Err(PfcError::Input(format!("{other} is not a Pareto axiom"))),
    })
}

/// Pareto optimality of the funded set against every set passing the
/// variant's filter. Only the funded set matters, not who pays.
pub fn check_po_family(inst: &Instance, out: &Outcome, axiom: Axiom, caps: Caps) -> Result<AxiomReport> {
    let current = utility_vector_unchecked(inst, out.funded);
    for set in pareto_candidates(inst, out, axiom, caps)? {
        let u = utility_vector_unchecked(inst, set);
        if u.pareto_dominates(&current) {
            return Ok(AxiomReport::fail(
                axiom,
                Witness::Dominating { funded: inst.project_ids(set), cost: inst.set_cost(set).0, utilities: u.values() },
            ));
        }
    }
    Ok(AxiomReport::pass(axiom))
}

/// A coalition blocks if it can afford some C' giving each member strictly
/// more than now. For fixed C' the best coalition is every agent who would
/// gain, so the search runs over C' only.
pub fn check_core(inst: &Instance, out: &Outcome, caps: Caps) -> Result<AxiomReport> {
    caps.check_projects(inst)?;
    let now: Vec<Money> = (0..inst.n()).map(|i| utility_unchecked(inst, out.funded, i)).collect();
    for candidate in inst.all_projects().subsets().skip(1) {
        let gainers: Vec<usize> =
            (0..inst.n()).filter(|&i| utility_unchecked(inst, candidate, i) > now[i]).collect();
        if gainers.is_empty() {
            continue;
        }
        let budget: Money = gainers.iter().map(|&i| inst.budget(i)).sum();
        let cost = inst.set_cost(candidate);
        if cost <= budget {
            return Ok(AxiomReport::fail(
                Axiom::Core,
                Witness::Coalition {
                    agents: inst.agent_ids(&gainers),
                    projects: inst.project_ids(candidate),
                    budget: budget.0,
                    cost: cost.0,
                },
            ));
        }
    }
    Ok(AxiomReport::pass(Axiom::Core))
}

/// A group of agents who all approve exactly the same projects C' and can
/// jointly afford C' must see all of C' funded. Taking every holder of an
/// approval set gives the largest budget, so one group per distinct set
/// suffices. Agents approving nothing form no group.
pub fn check_prop(inst: &Instance, out: &Outcome) -> AxiomReport {
    let mut groups: Vec<(ProjectSet, Vec<usize>)> = Vec::new();
    for i in 0..inst.n() {
        let a = inst.approvals(i);
        if a.is_empty() {
            continue;
        }
        match groups.iter_mut().find(|(s, _)| *s == a) {
            Some((_, members)) => members.push(i),
            None => groups.push((a, vec![i])),
        }
    }
    for (projects, members) in groups {
        let budget: Money = members.iter().map(|&i| inst.budget(i)).sum();
        let cost = inst.set_cost(projects);
        if budget >= cost && !projects.is_subset(out.funded) {
            return AxiomReport::fail(
                Axiom::Prop,
                Witness::Coalition {
                    agents: inst.agent_ids(&members),
                    projects: inst.project_ids(projects),
                    budget: budget.0,
                    cost: cost.0,
                },
            );
        }
    }
    AxiomReport::pass(Axiom::Prop)
}

pub fn check(inst: &Instance, out: &Outcome, axiom: Axiom, caps: Caps) -> Result<AxiomReport> {
    Ok(match axiom {
        Axiom::Mr => check_mr(inst, out),
        Axiom::Imp => check_imp(inst, out),
        Axiom::Ir => check_ir(inst, out),
        Axiom::Exh => check_exh(inst, out),
        Axiom::Core => check_core(inst, out, caps)?,
        Axiom::Prop => check_prop(inst, out),
        po => check_po_family(inst, out, po, caps)?,
    })
}

/// Runs the requested checkers; those over the enumeration caps are
/// reported as skipped.
pub fn check_many(inst: &Instance, out: &Outcome, axioms: &[Axiom], caps: Caps) -> Result<Vec<CheckEntry>> {
    axioms
        .iter()
        .map(|&axiom| match check(inst, out, axiom, caps) {
            Ok(report) => Ok(CheckEntry::Checked(report)),
            Err(e @ PfcError::Capacity { .. }) => Ok(CheckEntry::Skipped { axiom, skipped: e.to_string() }),
            Err(e) => Err(e),
        })
        .collect()
}

pub fn check_all(inst: &Instance, out: &Outcome, caps: Caps) -> Vec<CheckEntry> {
    check_many(inst, out, &Axiom::ALL, caps).expect("only capacity errors can occur")
}

/// Re-checks a negative verdict's witness directly against the definitions.
pub fn verify_witness(inst: &Instance, out: &Outcome, report: &AxiomReport) -> Result<bool> {
    let Some(witness) = &report.witness else {
        return Ok(report.holds);
    };
    if report.holds {
        return Ok(false);
    }
    let agents_of = |ids: &[String]| ids.iter().map(|a| inst.agent_index(a)).collect::<Result<Vec<_>>>();
    let now = |i: usize| utility_unchecked(inst, out.funded, i);
    Ok(match (report.axiom, witness) {
        (Axiom::Mr, Witness::OverCharged { agent, .. }) => {
            let i = inst.agent_index(agent)?;
            now(i) < out.charges[i]
        }
        (Axiom::Imp, Witness::Unsupported { projects, supporters, .. }) => {
            let projects = inst.project_set(projects)?;
            let supporters = agents_of(supporters)?;
            let everyone_listed = (0..inst.n())
                .filter(|&i| !inst.approvals(i).intersection(projects).is_empty())
                .all(|i| supporters.contains(&i));
            let capacity: Money = supporters.iter().map(|&i| out.charges[i]).sum();
            projects.is_subset(out.funded) && everyone_listed && capacity < inst.set_cost(projects)
        }
        (Axiom::Ir, Witness::BetterAlone { agent, projects, .. }) => {
            let i = inst.agent_index(agent)?;
            let alone = inst.project_set(projects)?;
            alone.is_subset(inst.approvals(i)) && inst.set_cost(alone) <= inst.budget(i) && now(i) < inst.set_cost(alone)
        }
        (Axiom::Exh, Witness::PooledSlack { project, agents, .. }) => {
            let c = inst.project_index(project)?;
            let agents = agents_of(agents)?;
            let slack: Money = agents.iter().map(|&i| inst.budget(i) - out.charges[i]).sum();
            !out.funded.contains(c)
                && !agents.is_empty()
                && agents.iter().all(|&i| inst.approvals(i).contains(c))
                && slack >= inst.cost(c)
        }
        (po @ (Axiom::Po | Axiom::PoMr | Axiom::PoImp | Axiom::PoPay | Axiom::PoIr), Witness::Dominating { funded, .. }) => {
            let set = inst.project_set(funded)?;
            let constraint_ok = match po {
                Axiom::Po => Constraint::None.admits(inst, set),
                Axiom::PoMr => Constraint::Mr.admits(inst, set),
                Axiom::PoImp => Constraint::Imp.admits(inst, set),
                Axiom::PoPay => inst.set_cost(set) <= out.total_charge(),
                _ => {
                    Constraint::None.admits(inst, set)
                        && (0..inst.n()).all(|i| utility_unchecked(inst, set, i) >= best_alone(inst, i).0)
                }
            };
            constraint_ok
                && utility_vector_unchecked(inst, set).pareto_dominates(&utility_vector_unchecked(inst, out.funded))
        }
        (Axiom::Core, Witness::Coalition { agents, projects, .. }) => {
            let agents = agents_of(agents)?;
            let set = inst.project_set(projects)?;
            let budget: Money = agents.iter().map(|&i| inst.budget(i)).sum();
            !agents.is_empty()
                && inst.set_cost(set) <= budget
                && agents.iter().all(|&i| now(i) < utility_unchecked(inst, set, i))
        }
        (Axiom::Prop, Witness::Coalition { agents, projects, .. }) => {
            let agents = agents_of(agents)?;
            let set = inst.project_set(projects)?;
            let budget: Money = agents.iter().map(|&i| inst.budget(i)).sum();
            !agents.is_empty()
                && agents.iter().all(|&i| inst.approvals(i) == set)
                && budget >= inst.set_cost(set)
                && !set.is_subset(out.funded)
        }
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::AgentSpec;

    fn outcome(inst: &Instance, ids: &[&str], charges: &[u64]) -> Outcome {
        Outcome::new(inst, inst.project_set(ids).unwrap(), charges.iter().map(|&x| Money(x)).collect()).unwrap()
    }

    fn two_halves() -> Instance {
        Instance::new(vec![AgentSpec::new("1", 1, &["X"]), AgentSpec::new("2", 1, &["X"])], vec![("X".into(), 2)])
            .unwrap()
    }

    fn assert_fails_verifiably(inst: &Instance, out: &Outcome, report: &AxiomReport) {
        assert!(!report.holds, "{report:?}");
        assert!(verify_witness(inst, out, report).unwrap(), "{report:?}");
    }

    #[test]
    fn mr_examples() {
        let inst = fixtures::util_not_mr();
        let out = outcome(&inst, &["X"], &[10, 10]);
        let r = check_mr(&inst, &out);
        assert_eq!(r.witness, Some(Witness::OverCharged { agent: "2".into(), utility: 0, charge: 10 }));
        assert_fails_verifiably(&inst, &out, &r);

        assert!(check_mr(&inst, &Outcome::empty(&inst)).holds);

        let inst = fixtures::egal_not_mr();
        let out = outcome(&inst, &["X", "Y"], &[25, 5]);
        let r = check_mr(&inst, &out);
        assert_eq!(r.witness, Some(Witness::OverCharged { agent: "1".into(), utility: 20, charge: 25 }));
    }

    #[test]
    fn imp_examples() {
        let inst = fixtures::table2();
        assert!(check_imp(&inst, &outcome(&inst, &["A", "B", "C"], &[4, 1, 1, 5, 3])).holds);
        assert!(check_imp(&inst, &Outcome::empty(&inst)).holds);
        let inst = fixtures::mr_not_imp();
        let out = outcome(&inst, &["X", "Y"], &[20, 20, 0]);
        let r = check_imp(&inst, &out);
        assert_fails_verifiably(&inst, &out, &r);
    }

    #[test]
    fn best_alone_examples() {
        let inst = fixtures::util_mr_not_ir();
        let (v, s) = best_alone(&inst, 0);
        assert_eq!(v, Money(6));
        assert_eq!(s, inst.project_set(&["W", "X"]).unwrap());

        let lonely = Instance::new(vec![AgentSpec::new("a", 9, &[])], vec![("X".into(), 1)]).unwrap();
        assert_eq!(best_alone(&lonely, 0), (Money::ZERO, ProjectSet::EMPTY));

        // costs 2, 2, 3 with budget 3: brute force over the 8 subsets gives
        // only {P3} reaching 3
        let inst = Instance::new(
            vec![AgentSpec::new("a", 3, &["P1", "P2", "P3"])],
            vec![("P1".into(), 2), ("P2".into(), 2), ("P3".into(), 3)],
        )
        .unwrap();
        let brute = inst
            .all_projects()
            .subsets()
            .filter(|&s| inst.set_cost(s) <= Money(3))
            .map(|s| inst.set_cost(s))
            .max()
            .unwrap();
        assert_eq!(brute, Money(3));
        assert_eq!(best_alone(&inst, 0), (Money(3), inst.project_set(&["P3"]).unwrap()));
    }

    #[test]
    fn best_alone_tie_takes_least_set() {
        let inst = Instance::new(
            vec![AgentSpec::new("a", 4, &["P", "Q", "R"])],
            vec![("P".into(), 4), ("Q".into(), 2), ("R".into(), 2)],
        )
        .unwrap();
        // {P} = mask 0b001 beats {Q,R} = 0b110
        assert_eq!(best_alone(&inst, 0).1, inst.project_set(&["P"]).unwrap());
    }

    #[test]
    fn ir_examples() {
        let inst = fixtures::util_mr_not_ir();
        let out = outcome(&inst, &["Y", "Z"], &[4, 11]);
        let r = check_ir(&inst, &out);
        match &r.witness {
            Some(Witness::BetterAlone { agent, projects, .. }) => {
                assert_eq!(agent, "1");
                assert_eq!(projects, &vec!["W".to_string(), "X".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_fails_verifiably(&inst, &out, &r);

        let pricey = Instance::new(
            vec![AgentSpec::new("a", 3, &["X", "Y"]), AgentSpec::new("b", 4, &["Y"])],
            vec![("X".into(), 5), ("Y".into(), 6)],
        )
        .unwrap();
        assert!(check_ir(&pricey, &Outcome::empty(&pricey)).holds);

        let inst = fixtures::egal_not_ir();
        let out = outcome(&inst, &["Y"], &[5, 5]);
        let r = check_ir(&inst, &out);
        assert_eq!(
            r.witness,
            Some(Witness::BetterAlone { agent: "1".into(), utility: 10, alone: 20, projects: vec!["X".into()] })
        );
    }

    #[test]
    fn exh_examples() {
        let inst = fixtures::table2();
        let all = inst.all_projects();
        // total cost 28 exceeds the budget, so use a tiny instance for "all funded"
        assert!(!Constraint::None.admits(&inst, all));
        let tiny = two_halves();
        let funded = outcome(&tiny, &["X"], &[1, 1]);
        assert!(check_exh(&tiny, &funded).holds);

        let empty = Outcome::empty(&tiny);
        let r = check_exh(&tiny, &empty);
        assert_eq!(
            r.witness,
            Some(Witness::PooledSlack { project: "X".into(), agents: vec!["1".into(), "2".into()], slack: 2, cost: 2 })
        );
        assert_fails_verifiably(&tiny, &empty, &r);

        let inst = fixtures::imp_not_po_mr();
        assert!(check_exh(&inst, &outcome(&inst, &["X"], &[5, 5, 0])).holds);
    }

    #[test]
    fn po_pay_fails_on_table2_abc() {
        let inst = fixtures::table2();
        let out = outcome(&inst, &["A", "B", "C"], &[4, 1, 1, 5, 3]);
        let r = check_po_family(&inst, &out, Axiom::PoPay, Caps::default()).unwrap();
        match &r.witness {
            Some(Witness::Dominating { funded, .. }) => assert_eq!(funded, &vec!["D".to_string(), "E".to_string()]),
            other => panic!("unexpected {other:?}"),
        }
        assert_fails_verifiably(&inst, &out, &r);
        assert!(check_po_family(&inst, &out, Axiom::PoImp, Caps::default()).unwrap().holds);
        assert!(!check_po_family(&inst, &out, Axiom::Po, Caps::default()).unwrap().holds);
    }

    #[test]
    fn po_holds_for_everyone_maximal_set() {
        let tiny = two_halves();
        let out = outcome(&tiny, &["X"], &[1, 1]);
        for axiom in [Axiom::Po, Axiom::PoMr, Axiom::PoImp, Axiom::PoPay, Axiom::PoIr] {
            assert!(check_po_family(&tiny, &out, axiom, Caps::default()).unwrap().holds, "{axiom}");
        }
    }

    #[test]
    fn po_mr_fails_for_imp_optimum() {
        let inst = fixtures::imp_not_po_mr();
        let out = outcome(&inst, &["X"], &[5, 5, 0]);
        let r = check_po_family(&inst, &out, Axiom::PoMr, Caps::default()).unwrap();
        assert_fails_verifiably(&inst, &out, &r);
    }

    #[test]
    fn core_examples() {
        let tiny = two_halves();
        let empty = Outcome::empty(&tiny);
        let r = check_core(&tiny, &empty, Caps::default()).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::Coalition { agents: vec!["1".into(), "2".into()], projects: vec!["X".into()], budget: 2, cost: 2 })
        );
        assert_fails_verifiably(&tiny, &empty, &r);
        assert!(check_core(&tiny, &outcome(&tiny, &["X"], &[1, 1]), Caps::default()).unwrap().holds);
    }

    #[test]
    fn prop_examples() {
        let tiny = two_halves();
        let empty = Outcome::empty(&tiny);
        let r = check_prop(&tiny, &empty);
        assert_fails_verifiably(&tiny, &empty, &r);

        let inst = fixtures::table2();
        assert!(check_prop(&inst, &outcome(&inst, &["A", "B", "C"], &[4, 1, 1, 5, 3])).holds);

        let poor = Instance::new(
            vec![AgentSpec::new("a", 1, &["X"]), AgentSpec::new("b", 1, &["X", "Y"])],
            vec![("X".into(), 5), ("Y".into(), 5)],
        )
        .unwrap();
        assert!(check_prop(&poor, &Outcome::empty(&poor)).holds);
    }

    #[test]
    fn prop_uses_identical_approval_groups() {
        // Agents with different approval sets do not form a group even if
        // their pooled budget covers the union: funding X alone is the only
        // implementable choice here.
        let inst = Instance::new(
            vec![AgentSpec::new("1", 10, &["X"]), AgentSpec::new("2", 1, &["Y"])],
            vec![("X".into(), 5), ("Y".into(), 5)],
        )
        .unwrap();
        let out = outcome(&inst, &["X"], &[5, 0]);
        assert!(check_imp(&inst, &out).holds);
        assert!(check_po_family(&inst, &out, Axiom::PoImp, Caps::default()).unwrap().holds);
        assert!(check_prop(&inst, &out).holds);
    }

    #[test]
    fn check_all_table2() {
        let inst = fixtures::table2();
        let out = outcome(&inst, &["A", "B", "C"], &[4, 1, 1, 5, 3]);
        let entries = check_all(&inst, &out, Caps::default());
        let verdict = |a: Axiom| {
            entries.iter().find_map(|e| match e {
                CheckEntry::Checked(r) if r.axiom == a => Some(r.holds),
                _ => None,
            })
        };
        assert_eq!(verdict(Axiom::Mr), Some(true));
        assert_eq!(verdict(Axiom::Imp), Some(true));
        assert_eq!(verdict(Axiom::PoPay), Some(false));

        let empty = Outcome::empty(&inst);
        let entries = check_all(&inst, &empty, Caps { agents: 16, projects: 2 });
        assert!(entries.iter().any(|e| matches!(e, CheckEntry::Skipped { axiom: Axiom::Core, .. })));
        assert!(entries.iter().any(|e| matches!(e, CheckEntry::Checked(r) if r.axiom == Axiom::Mr && r.holds)));
        assert!(entries.iter().any(|e| matches!(e, CheckEntry::Checked(r) if r.axiom == Axiom::Imp && r.holds)));
    }

    #[test]
    fn util_mr_not_ir_outcome() {
        let inst = fixtures::util_mr_not_ir();
        let out = outcome(&inst, &["Y", "Z"], &[4, 11]);
        assert!(check_imp(&inst, &out).holds);
        assert!(!check_ir(&inst, &out).holds);
    }

    #[test]
    fn axiom_names() {
        assert_eq!("po-pay".parse::<Axiom>().unwrap(), Axiom::PoPay);
        assert_eq!(serde_json::to_string(&Axiom::PoImp).unwrap(), "\"PO_IMP\"");
        assert!("FOO".parse::<Axiom>().is_err());
    }
}
