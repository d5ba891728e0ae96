//! Worked instances from the literature on participatory funding, used by the
//! regression tests and the CLI examples. Agent ids are "1", "2", ...

use crate::model::{AgentSpec, Instance};

fn build(projects: &[(&str, u64)], agents: &[(u64, &[&str])]) -> Instance {
    Instance::new(
        agents
            .iter()
            .enumerate()
            .map(|(k, (budget, approves))| AgentSpec::new((k + 1).to_string(), *budget, approves))
            .collect(),
        projects.iter().map(|(id, cost)| (id.to_string(), *cost)).collect(),
    )
    .expect("fixture is well formed")
}

/// Five agents, six projects; the introductory example.
pub fn table1() -> Instance {
    build(
        &[("A", 7), ("B", 6), ("C", 1), ("D", 1), ("E", 8), ("F", 7)],
        &[
            (3, &["A", "C", "E"]),
            (3, &["A", "D", "E"]),
            (3, &["B", "C", "F"]),
            (2, &["B", "D", "F"]),
            (1, &["A", "E"]),
        ],
    )
}

/// The instance on which the IMP-constrained rules fail PO-Pay.
pub fn table2() -> Instance {
    build(
        &[("A", 7), ("B", 4), ("C", 3), ("D", 7), ("E", 7)],
        &[
            (4, &["B", "E"]),
            (1, &["A", "E"]),
            (1, &["A", "E"]),
            (5, &["A", "D"]),
            (3, &["C", "D"]),
        ],
    )
}

/// UTIL/NASH manipulation example, truthful profile.
pub fn table5() -> Instance {
    build(
        &[("X", 10), ("Y", 4), ("Z", 9)],
        &[(8, &["Y", "Z"]), (1, &["Y", "Z"]), (10, &["X", "Y", "Z"])],
    )
}

/// Table 5 with agent 3 hiding its approval of Y.
pub fn table7() -> Instance {
    build(
        &[("X", 10), ("Y", 4), ("Z", 9)],
        &[(8, &["Y", "Z"]), (1, &["Y", "Z"]), (10, &["X", "Z"])],
    )
}

/// EGAL manipulation example, truthful profile.
pub fn table8() -> Instance {
    build(&[("X", 3), ("Y", 2), ("Z", 1)], &[(1, &["Y", "Z"]), (1, &["Y", "Z"]), (3, &["X", "Y"])])
}

/// Table 8 with agent 3 hiding its approval of Y.
pub fn table10() -> Instance {
    build(&[("X", 3), ("Y", 2), ("Z", 1)], &[(1, &["Y", "Z"]), (1, &["Y", "Z"]), (3, &["X"])])
}

/// UTIL and NASH violate MR and IR.
pub fn util_not_mr() -> Instance {
    build(&[("X", 20), ("Y", 10)], &[(10, &["X"]), (10, &["Y"])])
}

/// EGAL violates MR.
pub fn egal_not_mr() -> Instance {
    build(&[("X", 20), ("Y", 10)], &[(25, &["X"]), (5, &["Y"])])
}

/// EGAL violates IR.
pub fn egal_not_ir() -> Instance {
    build(&[("X", 20), ("Y", 10)], &[(20, &["X", "Y"]), (5, &["Y"])])
}

/// IMP-constrained rules violate PO-MR.
pub fn imp_not_po_mr() -> Instance {
    build(&[("X", 10), ("Y", 12)], &[(10, &["X"]), (10, &["X"]), (2, &["Y"])])
}

/// UTIL-MR and NASH-MR violate IMP.
pub fn mr_not_imp() -> Instance {
    build(&[("X", 30), ("Y", 10)], &[(20, &["X"]), (20, &["X"]), (5, &["Y"])])
}

/// UTIL-MR and UTIL-IMP violate IR.
pub fn util_mr_not_ir() -> Instance {
    build(&[("W", 3), ("X", 3), ("Y", 5), ("Z", 10)], &[(6, &["W", "X", "Y"]), (11, &["Y", "Z"])])
}

/// Every paper instance, named.
pub fn all() -> Vec<(&'static str, Instance)> {
    vec![
        ("table1", table1()),
        ("table2", table2()),
        ("table5", table5()),
        ("table7", table7()),
        ("table8", table8()),
        ("table10", table10()),
        ("util-not-mr", util_not_mr()),
        ("egal-not-mr", egal_not_mr()),
        ("egal-not-ir", egal_not_ir()),
        ("imp-not-po-mr", imp_not_po_mr()),
        ("mr-not-imp", mr_not_imp()),
        ("util-mr-not-ir", util_mr_not_ir()),
    ]
}
