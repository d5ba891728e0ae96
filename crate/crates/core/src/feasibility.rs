//! Which project sets admit payments under a given participation constraint.
//!
//! Implementability reduces to a bipartite flow: source → agent (capacity =
//! the agent's budget or charge), agent → approved funded project, funded
//! project → sink (capacity = cost). A set is implementable iff the flow
//! saturates every project arc.

use crate::flow::FlowNetwork;
use crate::model::{utility_unchecked, Instance, Money, Outcome, PaymentMatrix, ProjectSet};

/// Flow network over agents and the projects of one candidate set, with
/// arc handles kept for reading payments back.
pub struct FundingNetwork {
    pub net: FlowNetwork,
    pub source: usize,
    pub sink: usize,
    agent_arcs: Vec<usize>,
    payment_arcs: Vec<(usize, usize, usize)>,
}

impl FundingNetwork {
    /// Node layout: source 0, agents 1..=n, projects n+1..=n+m, sink n+m+1.
    pub fn build(inst: &Instance, set: ProjectSet, agent_caps: &[Money]) -> Self {
        let (n, m) = (inst.n(), inst.m());
        let source = 0;
        let sink = n + m + 1;
        let mut net = FlowNetwork::new(n + m + 2);
        // agent→project arcs never bind below the agent's own cap
        let unbounded = agent_caps.iter().map(|x| x.0).sum::<u64>() + 1;
        let mut agent_arcs = Vec::with_capacity(n);
        let mut payment_arcs = Vec::new();
        for (i, cap) in agent_caps.iter().enumerate() {
            agent_arcs.push(net.add_arc(source, 1 + i, cap.0));
        }
        for i in 0..n {
            for c in set.intersection(inst.approvals(i)).iter() {
                let arc = net.add_arc(1 + i, 1 + n + c, unbounded);
                payment_arcs.push((i, c, arc));
            }
        }
        for c in set.iter() {
            net.add_arc(1 + n + c, sink, inst.cost(c).0);
        }
        FundingNetwork { net, source, sink, agent_arcs, payment_arcs }
    }

    pub fn solve(&mut self) -> Money {
        Money(self.net.max_flow(self.source, self.sink))
    }

    pub fn payments(&self, n: usize, m: usize) -> PaymentMatrix {
        let mut y = PaymentMatrix::zeros(n, m);
        for &(i, c, arc) in &self.payment_arcs {
            y.set(i, c, Money(self.net.flow_on(arc)));
        }
        y
    }

    pub fn agent_flow(&self, i: usize) -> Money {
        Money(self.net.flow_on(self.agent_arcs[i]))
    }
}

/// Why a project set cannot be implemented: the listed projects cost more
/// than everyone who approves any of them can pay in total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallViolation {
    pub projects: ProjectSet,
    pub supporters: Vec<usize>,
    pub supporter_capacity: Money,
    pub cost: Money,
}

/// Result of an implementability test.
#[derive(Clone, Debug)]
pub enum Implementability {
    Feasible(PaymentMatrix),
    Infeasible { flow: Money, violation: HallViolation },
}

impl Implementability {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Implementability::Feasible(_))
    }

    pub fn payments(self) -> Option<PaymentMatrix> {
        match self {
            Implementability::Feasible(y) => Some(y),
            Implementability::Infeasible { .. } => None,
        }
    }
}

fn flow_test(inst: &Instance, set: ProjectSet, caps: &[Money]) -> Implementability {
    let mut network = FundingNetwork::build(inst, set, caps);
    let flow = network.solve();
    if flow == inst.set_cost(set) {
        return Implementability::Feasible(network.payments(inst.n(), inst.m()));
    }
    // Projects unreachable in the residual graph form a min cut: all of their
    // supporters are cut off too, and together they cannot cover them.
    let n = inst.n();
    let reach = network.net.residual_reachable(network.source);
    let projects: ProjectSet = set.iter().filter(|&c| !reach[1 + n + c]).collect();
    let supporters: Vec<usize> =
        (0..n).filter(|&i| !inst.approvals(i).intersection(projects).is_empty()).collect();
    let supporter_capacity = supporters.iter().map(|&i| caps[i]).sum();
    let violation = HallViolation { projects, supporters, supporter_capacity, cost: inst.set_cost(projects) };
    debug_assert!(violation.supporter_capacity < violation.cost);
    Implementability::Infeasible { flow, violation }
}

/// Can `set` be funded with every agent paying only for projects it
/// approves, within its budget?
pub fn is_implementable_set(inst: &Instance, set: ProjectSet) -> Implementability {
    let caps: Vec<Money> = inst.agents().iter().map(|a| a.budget).collect();
    flow_test(inst, set, &caps)
}

/// Implementability of a concrete outcome: the flow uses each agent's charge
/// as its cap. Since charges sum to the set cost, saturating the projects
/// also spends every charge exactly.
pub fn is_implementable_outcome(inst: &Instance, out: &Outcome) -> Implementability {
    flow_test(inst, out.funded, &out.charges)
}

/// Maximum flow of the budget-capped network for `set`.
pub fn max_fundable(inst: &Instance, set: ProjectSet) -> Money {
    let caps: Vec<Money> = inst.agents().iter().map(|a| a.budget).collect();
    FundingNetwork::build(inst, set, &caps).solve()
}

/// Cap on what agent `i` may pay for `set` while keeping minimal return.
fn mr_cap(inst: &Instance, set: ProjectSet, i: usize) -> Money {
    inst.budget(i).min(utility_unchecked(inst, set, i))
}

/// A set admits a minimal-return outcome iff its cost fits under
/// `sum_i min(b_i, u_i(S))`. Returns greedy witness charges on success.
pub fn is_mr_feasible_set(inst: &Instance, set: ProjectSet) -> Option<Vec<Money>> {
    let caps: Vec<Money> = (0..inst.n()).map(|i| mr_cap(inst, set, i)).collect();
    greedy_fill(inst.set_cost(set), &caps)
}

/// Charges agents in canonical order, each up to its cap, until `total` is
/// covered. `None` if the caps cannot cover it.
pub fn greedy_fill(total: Money, caps: &[Money]) -> Option<Vec<Money>> {
    let mut remaining = total;
    let charges = caps
        .iter()
        .map(|&cap| {
            let x = cap.min(remaining);
            remaining = remaining - x;
            x
        })
        .collect();
    (remaining == Money::ZERO).then_some(charges)
}

/// Some outcome funds `set` at all: `w(S) <= b(N)`.
pub fn is_affordable_set(inst: &Instance, set: ProjectSet) -> bool {
    inst.set_cost(set) <= inst.total_budget()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(inst: &Instance, ids: &[&str]) -> ProjectSet {
        inst.project_set(ids).unwrap()
    }

    #[test]
    fn table2_de_not_implementable() {
        let inst = fixtures::table2();
        let de = set(&inst, &["D", "E"]);
        match is_implementable_set(&inst, de) {
            Implementability::Infeasible { flow, violation } => {
                assert_eq!(flow, Money(13));
                assert_eq!(violation.projects, set(&inst, &["E"]));
                assert_eq!(violation.supporter_capacity, Money(6));
            }
            Implementability::Feasible(_) => panic!("D,E must not be implementable"),
        }
        assert_eq!(max_fundable(&inst, de), Money(13));
    }

    #[test]
    fn empty_set_implementable_with_zero_matrix() {
        let inst = fixtures::table2();
        let y = is_implementable_set(&inst, ProjectSet::EMPTY).payments().unwrap();
        assert_eq!(y, PaymentMatrix::zeros(5, 5));
    }

    #[test]
    fn table2_abc_each_agent_pays_single_project() {
        let inst = fixtures::table2();
        let abc = set(&inst, &["A", "B", "C"]);
        let y = is_implementable_set(&inst, abc).payments().unwrap();
        assert_eq!(y.charges(), [4, 1, 1, 5, 3].map(Money).to_vec());
        assert!(y.is_valid_for(&inst, abc, &y.charges()));
    }

    #[test]
    fn outcome_caps() {
        let inst = fixtures::table2();
        let abc = set(&inst, &["A", "B", "C"]);
        let out = Outcome::new(&inst, abc, [4, 1, 1, 5, 3].map(Money).to_vec()).unwrap();
        assert!(is_implementable_outcome(&inst, &out).is_feasible());
        assert!(is_implementable_outcome(&inst, &Outcome::empty(&inst)).is_feasible());

        let inst = fixtures::mr_not_imp();
        let xy = set(&inst, &["X", "Y"]);
        let out = Outcome::new(&inst, xy, [20, 20, 0].map(Money).to_vec()).unwrap();
        match is_implementable_outcome(&inst, &out) {
            Implementability::Infeasible { violation, .. } => {
                assert_eq!(violation.projects, set(&inst, &["Y"]));
                assert_eq!(violation.supporters, vec![2]);
            }
            _ => panic!("agent 3 cannot cover Y alone"),
        }
    }

    #[test]
    fn mr_feasibility_examples() {
        let inst = fixtures::imp_not_po_mr();
        let xy = set(&inst, &["X", "Y"]);
        assert_eq!(is_mr_feasible_set(&inst, xy), Some([10, 10, 2].map(Money).to_vec()));
        assert_eq!(is_mr_feasible_set(&inst, ProjectSet::EMPTY), Some(vec![Money::ZERO; 3]));

        let inst = fixtures::util_not_mr();
        assert_eq!(is_mr_feasible_set(&inst, set(&inst, &["X"])), None);
    }

    #[test]
    fn affordability() {
        let t1 = fixtures::table1();
        assert!(!is_affordable_set(&t1, set(&t1, &["A", "B"])));
        assert!(is_affordable_set(&t1, ProjectSet::EMPTY));
        let t2 = fixtures::table2();
        assert!(is_affordable_set(&t2, set(&t2, &["D", "E"])));
    }

    #[test]
    fn single_agent_network() {
        let inst = Instance::new(
            vec![crate::model::AgentSpec::new("a", 5, &["X"])],
            vec![("X".into(), 3)],
        )
        .unwrap();
        assert_eq!(max_fundable(&inst, inst.all_projects()), Money(3));
    }

    #[test]
    fn greedy_fill_stops_at_total() {
        assert_eq!(greedy_fill(Money(5), &[Money(3), Money(3), Money(3)]), Some([3, 2, 0].map(Money).to_vec()));
        assert_eq!(greedy_fill(Money(10), &[Money(3), Money(3)]), None);
    }
}
