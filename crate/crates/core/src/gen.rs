//! Seeded random instances for the two simulation regimes.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, which is
//! portable across platforms; the exact stream is fixed by the `rand` and
//! `rand_chacha` versions pinned in `Cargo.lock`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PfcError, Result};
use crate::model::{AgentSpec, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Sharehouse,
    Crowdfunding,
}

impl Regime {
    pub const ALL: [Regime; 2] = [Regime::Sharehouse, Regime::Crowdfunding];

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Sharehouse => "sharehouse",
            Regime::Crowdfunding => "crowdfunding",
        }
    }

    pub fn default_ranges(self) -> Ranges {
        match self {
            Regime::Sharehouse => Ranges { agents: 3..=6, projects: 5..=12, budget: 300..=600, cost: 50..=1000 },
            Regime::Crowdfunding => {
                Ranges { agents: 20..=50, projects: 3..=8, budget: 0..=400, cost: 1000..=10000 }
            }
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = PfcError;

    fn from_str(s: &str) -> Result<Regime> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "sharehouse" => Ok(Regime::Sharehouse),
            "crowdfunding" => Ok(Regime::Crowdfunding),
            _ => Err(PfcError::Input(format!("unknown regime {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranges {
    pub agents: RangeInclusive<usize>,
    pub projects: RangeInclusive<usize>,
    pub budget: RangeInclusive<u64>,
    pub cost: RangeInclusive<u64>,
}

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub regime: Regime,
    pub seed: u64,
    pub ranges: Ranges,
    /// Independent probability that an agent approves a project.
    pub approval_probability: f64,
}

impl GeneratorConfig {
    pub fn new(regime: Regime, seed: u64) -> Self {
        GeneratorConfig { regime, seed, ranges: regime.default_ranges(), approval_probability: 0.5 }
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.ranges;
        if r.agents.is_empty() || r.projects.is_empty() || r.budget.is_empty() || r.cost.is_empty() {
            return Err(PfcError::Input("generator ranges must be nonempty".into()));
        }
        if *r.agents.start() == 0 || *r.projects.start() == 0 {
            return Err(PfcError::Input("instances need at least one agent and one project".into()));
        }
        if *r.projects.end() > crate::model::MAX_PROJECTS {
            return Err(PfcError::Input("too many projects".into()));
        }
        if !(0.0..=1.0).contains(&self.approval_probability) {
            return Err(PfcError::Input("approval probability must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

/// Draws one instance. Agents are `a01, a02, ...` and projects `p01, ...`,
/// zero-padded so canonical order matches generation order.
pub fn generate(cfg: &GeneratorConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let r = &cfg.ranges;
    let n = rng.gen_range(r.agents.clone());
    let m = rng.gen_range(r.projects.clone());
    let projects: Vec<(String, u64)> =
        (0..m).map(|c| (format!("p{:02}", c + 1), rng.gen_range(r.cost.clone()))).collect();
    let mut agents = Vec::with_capacity(n);
    for i in 0..n {
        let budget = rng.gen_range(r.budget.clone());
        let approves = projects
            .iter()
            .filter(|_| rng.gen_bool(cfg.approval_probability))
            .map(|(id, _)| id.clone())
            .collect();
        agents.push(AgentSpec { id: format!("a{:02}", i + 1), budget, approves });
    }
    Instance::new(agents, projects)
}

/// Whether the pooled budget affords some but not all projects, the regime
/// the crowdfunding ranges aim for. Instances failing this are still used.
pub fn is_admissible_crowdfunding(inst: &Instance) -> bool {
    let total = inst.total_budget();
    let cheapest = inst.projects().iter().map(|p| p.cost).min().unwrap_or_default();
    total >= cheapest && total < inst.set_cost(inst.all_projects())
}

/// File name for a generated instance: `<regime>-<seed>.json`.
pub fn file_name(regime: Regime, seed: u64) -> String {
    format!("{regime}-{seed}.json")
}
