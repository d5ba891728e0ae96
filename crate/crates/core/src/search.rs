//! Exhaustive enumeration of fundable project sets.
//!
//! Every welfare rule and every Pareto-type axiom is NP-hard even for one
//! agent, so the backbone is an exact depth-first search over project
//! inclusion with two prunings: supersets of a set costing more than the
//! total budget are never affordable, and supersets of a non-implementable
//! set are never implementable.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{PfcError, Result};
use crate::feasibility::{is_implementable_set, is_mr_feasible_set};
use crate::model::{Instance, Money, ProjectSet};

/// Enumeration limits on agents and projects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub agents: usize,
    pub projects: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { agents: 16, projects: 24 }
    }
}

impl Caps {
    pub fn check_projects(&self, inst: &Instance) -> Result<()> {
        if inst.m() > self.projects {
            return Err(PfcError::Capacity { what: "projects", size: inst.m(), cap: self.projects });
        }
        Ok(())
    }

    pub fn check_agents(&self, inst: &Instance) -> Result<()> {
        if inst.n() > self.agents {
            return Err(PfcError::Capacity { what: "agents", size: inst.n(), cap: self.agents });
        }
        Ok(())
    }
}

impl FromStr for Caps {
    type Err = PfcError;

    /// Parses `n=16,m=24`; either key may be omitted.
    fn from_str(s: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| PfcError::Input(format!("bad caps entry {part:?}, expected key=value")))?;
            let value: usize =
                value.trim().parse().map_err(|_| PfcError::Input(format!("bad caps value {value:?}")))?;
            match key.trim() {
                "n" => caps.agents = value,
                "m" => caps.projects = value,
                other => return Err(PfcError::Input(format!("unknown caps key {other:?}"))),
            }
        }
        Ok(caps)
    }
}

/// Which outcomes a rule or Pareto check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Constraint {
    #[serde(rename = "NONE")]
    None,
    #[serde(rename = "MR")]
    Mr,
    #[serde(rename = "IMP")]
    Imp,
}

impl Constraint {
    pub const ALL: [Constraint; 3] = [Constraint::None, Constraint::Mr, Constraint::Imp];

    pub fn as_str(self) -> &'static str {
        match self {
            Constraint::None => "NONE",
            Constraint::Mr => "MR",
            Constraint::Imp => "IMP",
        }
    }

    /// Whether `set` admits an outcome of this kind.
    pub fn admits(self, inst: &Instance, set: ProjectSet) -> bool {
        match self {
            Constraint::None => inst.set_cost(set) <= inst.total_budget(),
            Constraint::Mr => is_mr_feasible_set(inst, set).is_some(),
            Constraint::Imp => is_implementable_set(inst, set).is_feasible(),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Constraint {
    type Err = PfcError;

    fn from_str(s: &str) -> Result<Constraint> {
        match s.to_ascii_uppercase().as_str() {
            "NONE" | "" => Ok(Constraint::None),
            "MR" => Ok(Constraint::Mr),
            "IMP" => Ok(Constraint::Imp),
            _ => Err(PfcError::Input(format!("unknown constraint {s:?}"))),
        }
    }
}

/// Limits for one search: enumeration caps plus an optional wall-clock deadline.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    pub caps: Caps,
    pub deadline: Option<Instant>,
}

impl SearchOptions {
    pub fn with_caps(caps: Caps) -> Self {
        SearchOptions { caps, deadline: None }
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

struct Dfs<'a> {
    inst: &'a Instance,
    constraint: Constraint,
    budget: Money,
    opts: SearchOptions,
    visited: u64,
    found: Vec<ProjectSet>,
}

impl Dfs<'_> {
    fn run(&mut self, c: usize, set: ProjectSet, cost: Money) -> Result<()> {
        self.visited += 1;
        if self.visited % 1024 == 0 && self.opts.expired() {
            return Err(PfcError::Timeout);
        }
        if c == self.inst.m() {
            let keep = match self.constraint {
                Constraint::Mr => is_mr_feasible_set(self.inst, set).is_some(),
                // affordability and implementability are enforced on the way down
                Constraint::None | Constraint::Imp => true,
            };
            if keep {
                self.found.push(set);
            }
            return Ok(());
        }
        let with_cost = cost + self.inst.cost(c);
        if with_cost <= self.budget {
            let bigger = set.with(c);
            let ok = match self.constraint {
                Constraint::Imp => is_implementable_set(self.inst, bigger).is_feasible(),
                _ => true,
            };
            if ok {
                self.run(c + 1, bigger, with_cost)?;
            }
        }
        self.run(c + 1, set, cost)
    }
}

/// All project sets admitting an outcome of the given kind, each once, in
/// canonical (increasing mask) order.
pub fn enumerate_feasible_sets(
    inst: &Instance,
    constraint: Constraint,
    opts: &SearchOptions,
) -> Result<Vec<ProjectSet>> {
    opts.caps.check_projects(inst)?;
    let mut dfs =
        Dfs { inst, constraint, budget: inst.total_budget(), opts: *opts, visited: 0, found: Vec::new() };
    dfs.run(0, ProjectSet::EMPTY, Money::ZERO)?;
    let mut found = dfs.found;
    found.sort_unstable();
    Ok(found)
}

/// Sets in `sets` not strictly contained in another member.
pub fn maximal_sets(sets: &[ProjectSet]) -> Vec<ProjectSet> {
    sets.iter()
        .copied()
        .filter(|s| !sets.iter().any(|t| t != s && s.is_subset(*t)))
        .collect()
}
