//! Random corpora and brute-force oracles shared by the integration tests.
//! The oracles deliberately avoid the library's flow and search code.

#![allow(dead_code)]

use std::ops::RangeInclusive;

use pfc::axioms::Axiom;
use pfc::model::{AgentSpec, Instance, Money, Outcome, ProjectSet};
use pfc::rules::{construct_imp_ir_poimp, solve, RuleId};
use pfc::search::{Constraint, SearchOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Shape {
    pub agents: RangeInclusive<usize>,
    pub projects: RangeInclusive<usize>,
    pub budget: RangeInclusive<u64>,
    pub cost: RangeInclusive<u64>,
}

/// Small instances for axiom suites: costs start at 1 so strict Pareto
/// improvements exist whenever a project is added.
pub const SMALL: Shape = Shape { agents: 1..=5, projects: 1..=6, budget: 0..=20, cost: 1..=20 };

/// Tiny instances that the exhaustive oracles can handle; zero costs allowed.
pub const TINY: Shape = Shape { agents: 1..=4, projects: 1..=4, budget: 0..=6, cost: 0..=6 };

pub fn random_instance(rng: &mut ChaCha8Rng, shape: &Shape) -> Instance {
    let n = rng.gen_range(shape.agents.clone());
    let m = rng.gen_range(shape.projects.clone());
    let projects: Vec<(String, u64)> =
        (0..m).map(|c| (format!("P{c}"), rng.gen_range(shape.cost.clone()))).collect();
    let agents = (0..n)
        .map(|i| {
            let budget = rng.gen_range(shape.budget.clone());
            let approves = projects.iter().filter(|_| rng.gen_bool(0.5)).map(|(id, _)| id.clone()).collect();
            AgentSpec { id: format!("{}", i + 1), budget, approves }
        })
        .collect();
    Instance::new(agents, projects).expect("generated instance is valid")
}

pub fn corpus(seed: u64, count: usize, shape: &Shape) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, shape)).collect()
}

pub fn opts() -> SearchOptions {
    SearchOptions::default()
}

pub fn all_rule_outcomes(inst: &Instance) -> Vec<(RuleId, Outcome)> {
    RuleId::all().into_iter().map(|r| (r, solve(inst, r, &opts()).expect("solve").outcome)).collect()
}

/// Rule outcomes, the constructed outcome and the empty outcome.
pub fn sample_outcomes(inst: &Instance) -> Vec<(String, Outcome)> {
    let mut outs: Vec<(String, Outcome)> =
        all_rule_outcomes(inst).into_iter().map(|(r, o)| (r.to_string(), o)).collect();
    outs.push(("construct".into(), construct_imp_ir_poimp(inst, &opts()).expect("construct").outcome));
    outs.push(("empty".into(), Outcome::empty(inst)));
    outs
}

pub fn util(inst: &Instance, set: ProjectSet, i: usize) -> u64 {
    set.iter().filter(|&c| inst.approvals(i).contains(c)).map(|c| inst.cost(c).0).sum()
}

pub fn utils(inst: &Instance, set: ProjectSet) -> Vec<u64> {
    (0..inst.n()).map(|i| util(inst, set, i)).collect()
}

pub fn dominates(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

pub fn all_sets(inst: &Instance) -> impl Iterator<Item = ProjectSet> {
    (0..1u64 << inst.m()).map(ProjectSet)
}

/// Is there a vector `0 <= v_i <= caps[i]` summing to `total`? Enumerated.
pub fn brute_vector_exists(caps: &[u64], total: u64) -> bool {
    fn go(caps: &[u64], left: u64) -> bool {
        match caps.split_first() {
            None => left == 0,
            Some((&cap, rest)) => (0..=cap.min(left)).any(|v| go(rest, left - v)),
        }
    }
    go(caps, total)
}

/// Enumerates every payment matrix restricted to approved projects.
pub fn brute_implementable(inst: &Instance, set: ProjectSet) -> bool {
    fn split(inst: &Instance, projects: &[usize], left: &mut Vec<u64>) -> bool {
        let Some((&c, rest)) = projects.split_first() else { return true };
        let supporters: Vec<usize> = (0..inst.n()).filter(|&i| inst.approvals(i).contains(c)).collect();
        share(inst, c, &supporters, inst.cost(c).0, rest, left)
    }
    fn share(inst: &Instance, c: usize, who: &[usize], owed: u64, rest: &[usize], left: &mut Vec<u64>) -> bool {
        let Some((&i, others)) = who.split_first() else {
            return owed == 0 && split(inst, rest, left);
        };
        for pay in 0..=owed.min(left[i]) {
            left[i] -= pay;
            let ok = share(inst, c, others, owed - pay, rest, left);
            left[i] += pay;
            if ok {
                return true;
            }
        }
        false
    }
    let projects: Vec<usize> = set.iter().collect();
    let mut left: Vec<u64> = (0..inst.n()).map(|i| inst.budget(i).0).collect();
    split(inst, &projects, &mut left)
}

/// Some charge vector with `x_i <= min(b_i, u_i(S))` covers `w(S)`.
pub fn brute_mr_feasible(inst: &Instance, set: ProjectSet) -> bool {
    let caps: Vec<u64> = (0..inst.n()).map(|i| inst.budget(i).0.min(util(inst, set, i))).collect();
    brute_vector_exists(&caps, inst.set_cost(set).0)
}

pub fn brute_admits(inst: &Instance, set: ProjectSet, constraint: Constraint) -> bool {
    match constraint {
        Constraint::None => inst.set_cost(set) <= inst.total_budget(),
        Constraint::Mr => brute_mr_feasible(inst, set),
        Constraint::Imp => brute_implementable(inst, set),
    }
}

pub fn brute_feasible_sets(inst: &Instance, constraint: Constraint) -> Vec<ProjectSet> {
    all_sets(inst).filter(|&s| brute_admits(inst, s, constraint)).collect()
}

/// Max-cost affordable subset of the agent's approvals; least mask on ties.
pub fn brute_best_alone(inst: &Instance, i: usize) -> (Money, ProjectSet) {
    let mut best = (Money::ZERO, ProjectSet::EMPTY);
    for s in all_sets(inst) {
        if s.is_subset(inst.approvals(i)) && inst.set_cost(s) <= inst.budget(i) && inst.set_cost(s) > best.0 {
            best = (inst.set_cost(s), s);
        }
    }
    best
}

/// CORE over every (N', C') pair with no pruning.
pub fn brute_core(inst: &Instance, out: &Outcome) -> bool {
    let have = utils(inst, out.funded);
    for group in 1..1u64 << inst.n() {
        let members: Vec<usize> = (0..inst.n()).filter(|&i| group >> i & 1 == 1).collect();
        let budget: u64 = members.iter().map(|&i| inst.budget(i).0).sum();
        for c in all_sets(inst) {
            if inst.set_cost(c).0 <= budget && members.iter().all(|&i| have[i] < util(inst, c, i)) {
                return false;
            }
        }
    }
    true
}

/// Weak PO-Pay: no set dominating `S` can be paid for with every agent
/// paying at most what it pays now. Payment vectors are enumerated.
pub fn weak_po_pay_holds(inst: &Instance, out: &Outcome) -> bool {
    let have = utils(inst, out.funded);
    let caps: Vec<u64> = out.charges.iter().map(|x| x.0).collect();
    !all_sets(inst).any(|s| dominates(&utils(inst, s), &have) && brute_vector_exists(&caps, inst.set_cost(s).0))
}

/// PO within `filter`, by plain enumeration.
pub fn brute_po(inst: &Instance, out: &Outcome, filter: impl Fn(ProjectSet) -> bool) -> bool {
    let have = utils(inst, out.funded);
    !all_sets(inst).any(|s| filter(s) && dominates(&utils(inst, s), &have))
}

pub fn brute_po_holds(inst: &Instance, out: &Outcome, axiom: Axiom) -> bool {
    let paid = out.total_charge();
    match axiom {
        Axiom::Po => brute_po(inst, out, |s| inst.set_cost(s) <= inst.total_budget()),
        Axiom::PoMr => brute_po(inst, out, |s| brute_mr_feasible(inst, s)),
        Axiom::PoImp => brute_po(inst, out, |s| brute_implementable(inst, s)),
        Axiom::PoPay => brute_po(inst, out, |s| inst.set_cost(s) <= paid),
        other => panic!("{other} is not a PO variant"),
    }
}

/// Compares library answers with the oracles on `count` tiny instances and
/// returns a description of every disagreement.
pub fn oracle_mismatches(seed: u64, count: usize) -> Vec<String> {
    use pfc::axioms::{best_alone, check_core};
    use pfc::feasibility::is_implementable_set;
    use pfc::search::enumerate_feasible_sets;

    let mut bad = Vec::new();
    for (k, inst) in corpus(seed, count, &TINY).iter().enumerate() {
        for s in all_sets(inst) {
            if is_implementable_set(inst, s).is_feasible() != brute_implementable(inst, s) {
                bad.push(format!("instance {k}: is_implementable_set disagrees on {:?}", inst.project_ids(s)));
            }
        }
        for constraint in Constraint::ALL {
            let got = enumerate_feasible_sets(inst, constraint, &opts()).expect("enumerate");
            if got != brute_feasible_sets(inst, constraint) {
                bad.push(format!("instance {k}: enumerate_feasible_sets({constraint}) disagrees"));
            }
        }
        for i in 0..inst.n() {
            if best_alone(inst, i) != brute_best_alone(inst, i) {
                bad.push(format!("instance {k}: best_alone({i}) disagrees"));
            }
        }
        for (label, out) in sample_outcomes(inst) {
            let report = check_core(inst, &out, Default::default()).expect("core");
            if report.holds != brute_core(inst, &out) {
                bad.push(format!("instance {k}: check_core disagrees on {label}"));
            }
        }
    }
    bad
}
