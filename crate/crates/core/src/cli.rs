//! Command-line front end. Machine-readable JSON on stdout by default,
//! aligned tables with `--pretty`. Exit codes: 0 success, 1 domain error,
//! 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::axioms::{check_many, Axiom, CheckEntry};
use crate::experiments::{run_batch, summarize, write_records_csv, write_summary_csv, BatchOptions};
use crate::feasibility::{is_affordable_set, is_implementable_set, is_mr_feasible_set, Implementability};
use crate::gen::{file_name, generate, GeneratorConfig, Regime};
use crate::model::{parse_instance, parse_outcome, serialize_instance, Instance, Outcome, OutcomeJson};
use crate::rules::{construct_imp_ir_poimp, solve, verify_guarantees, RuleId, RuleResult};
use crate::search::{Caps, Constraint, SearchOptions};

#[derive(Parser, Debug)]
#[command(name = "pfc", version, about = "Participatory funding: exact rules, axiom checks, experiments")]
struct Cli {
    /// Print aligned tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Enumeration limits, e.g. `n=16,m=24`.
    #[arg(long, global = true, default_value = "n=16,m=24")]
    caps: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a rule's welfare-optimal outcome.
    Solve {
        instance: PathBuf,
        /// UTIL, EGAL or NASH, optionally suffixed -MR or -IMP.
        #[arg(long)]
        rule: String,
        /// Re-check every axiom the rule guarantees before printing.
        #[arg(long)]
        verify: bool,
    },
    /// Check an outcome against axioms.
    Check {
        instance: PathBuf,
        outcome: PathBuf,
        /// Comma-separated axiom names; all axioms when omitted.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
    },
    /// Build an implementable, individually rational, PO-IMP outcome.
    Construct { instance: PathBuf },
    /// Generate random instances.
    Gen {
        #[arg(long)]
        regime: String,
        #[arg(long, env = "PFC_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Approval probability.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Run the welfare-ratio experiment and write per-instance CSV.
    Experiment {
        /// sharehouse, crowdfunding or all.
        #[arg(long)]
        regime: String,
        /// A count `N` (seeds 0..N), a range `a..b`, or a list `1,5,9`.
        #[arg(long, default_value = "200")]
        seeds: String,
        /// Comma-separated rules; all nine when omitted.
        #[arg(long, value_delimiter = ',')]
        rules: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the summary CSV here.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Per-solve time budget in seconds.
        #[arg(long, default_value_t = 60)]
        time_budget: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Test whether a project set admits an outcome of some kind.
    Feasible {
        instance: PathBuf,
        /// Comma-separated project ids; empty for the empty set.
        #[arg(long, default_value = "")]
        set: String,
        /// NONE, MR or IMP.
        #[arg(long, default_value = "NONE")]
        constraint: String,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let caps: Caps = match cli.caps.parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: --caps: {e}");
            return 2;
        }
    };
    match dispatch(cli.command, cli.pretty, caps, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn emit(stdout: &mut dyn Write, value: &Value) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

fn table(stdout: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ")
    };
    writeln!(stdout, "{}", line(header.to_vec()).trim_end())?;
    for row in rows {
        writeln!(stdout, "{}", line(row.iter().map(String::as_str).collect()).trim_end())?;
    }
    Ok(())
}

fn print_result(stdout: &mut dyn Write, inst: &Instance, r: &RuleResult, pretty: bool) -> anyhow::Result<()> {
    if !pretty {
        return emit(stdout, &r.to_json_value(inst));
    }
    writeln!(stdout, "rule: {}", r.rule)?;
    writeln!(stdout, "funded: {{{}}}", inst.project_ids(r.outcome.funded).join(","))?;
    writeln!(
        stdout,
        "utilitarian: {}  egalitarian: {:?}  nash zeros: {}  nash product: {}",
        r.welfare.utilitarian, r.welfare.sorted_utilities, r.welfare.nash.zero_count, r.welfare.nash.product
    )?;
    let rows: Vec<Vec<String>> = inst
        .agents()
        .iter()
        .enumerate()
        .map(|(i, a)| vec![a.id.clone(), a.budget.to_string(), r.outcome.charges[i].to_string(), r.utilities.0[i].to_string()])
        .collect();
    table(stdout, &["agent", "budget", "charge", "utility"], &rows)
}

fn parse_seeds(spec: &str) -> anyhow::Result<Vec<u64>> {
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
        if a >= b {
            bail!("empty seed range {spec}");
        }
        return Ok((a..b).collect());
    }
    if spec.contains(',') {
        return spec.split(',').map(|s| Ok(s.trim().parse()?)).collect();
    }
    let count: u64 = spec.parse().with_context(|| format!("bad --seeds {spec:?}"))?;
    if count == 0 {
        bail!("--seeds must be positive");
    }
    Ok((0..count).collect())
}

fn dispatch(command: Command, pretty: bool, caps: Caps, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let opts = SearchOptions::with_caps(caps);
    match command {
        Command::Solve { instance, rule, verify } => {
            let rule: RuleId = rule.parse()?;
            let inst = read_instance(&instance)?;
            let result = solve(&inst, rule, &opts)?;
            if verify {
                let failed = verify_guarantees(&inst, &result, rule, &opts)?;
                if !failed.is_empty() {
                    bail!("{rule} outcome fails guaranteed axioms {failed:?}");
                }
            }
            print_result(stdout, &inst, &result, pretty)
        }
        Command::Construct { instance } => {
            let inst = read_instance(&instance)?;
            let result = construct_imp_ir_poimp(&inst, &opts)?;
            print_result(stdout, &inst, &result, pretty)
        }
        Command::Check { instance, outcome, axioms } => {
            let inst = read_instance(&instance)?;
            let bytes = fs::read(&outcome).with_context(|| format!("reading {}", outcome.display()))?;
            let out = parse_outcome(&inst, &bytes).with_context(|| format!("parsing {}", outcome.display()))?;
            let axioms: Vec<Axiom> = if axioms.is_empty() {
                Axiom::ALL.to_vec()
            } else {
                axioms.iter().map(|a| a.parse()).collect::<Result<_, _>>()?
            };
            let entries = check_many(&inst, &out, &axioms, caps)?;
            if pretty {
                let rows: Vec<Vec<String>> = entries
                    .iter()
                    .map(|e| match e {
                        CheckEntry::Checked(r) => vec![
                            r.axiom.to_string(),
                            r.holds.to_string(),
                            r.witness.as_ref().map(|w| serde_json::to_string(w).unwrap()).unwrap_or_default(),
                        ],
                        CheckEntry::Skipped { axiom, skipped } => {
                            vec![axiom.to_string(), "skipped".into(), skipped.clone()]
                        }
                    })
                    .collect();
                table(stdout, &["axiom", "holds", "witness"], &rows)
            } else {
                emit(stdout, &serde_json::to_value(&entries)?)
            }
        }
        Command::Gen { regime, seed, count, out_dir, p } => {
            let regime: Regime = regime.parse()?;
            fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
            let mut written = Vec::new();
            for s in seed..seed + count {
                let mut cfg = GeneratorConfig::new(regime, s);
                cfg.approval_probability = p;
                let inst = generate(&cfg)?;
                let path = out_dir.join(file_name(regime, s));
                fs::write(&path, serialize_instance(&inst)).with_context(|| format!("writing {}", path.display()))?;
                written.push(path.display().to_string());
            }
            if pretty {
                for w in &written {
                    writeln!(stdout, "{w}")?;
                }
                Ok(())
            } else {
                emit(stdout, &json!({ "written": written }))
            }
        }
        Command::Experiment { regime, seeds, rules, out, summary, time_budget, p } => {
            let regimes: Vec<Regime> =
                if regime.eq_ignore_ascii_case("all") { Regime::ALL.to_vec() } else { vec![regime.parse()?] };
            let seeds = parse_seeds(&seeds)?;
            let rules: Vec<RuleId> = if rules.is_empty() {
                RuleId::all()
            } else {
                rules.iter().map(|r| r.parse()).collect::<Result<_, _>>()?
            };
            let batch = BatchOptions { caps, time_budget: Duration::from_secs(time_budget), approval_probability: p };
            let mut records = Vec::new();
            for regime in regimes {
                records.extend(run_batch(regime, &seeds, &rules, &batch)?);
            }
            let file = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_records_csv(&records, file)?;
            let stats = summarize(&records)?;
            if let Some(path) = summary {
                let file = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                write_summary_csv(&stats, file)?;
            }
            if pretty {
                let rows: Vec<Vec<String>> = stats
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.regime.to_string(),
                            r.rule.to_string(),
                            r.count.to_string(),
                            format!("{:.4}", r.mean_ratio_util),
                            format!("{:.4}", r.min_ratio_util),
                            format!("{:.4}", r.mean_ratio_egal),
                            format!("{:.4}", r.min_ratio_egal),
                        ]
                    })
                    .collect();
                table(stdout, &["regime", "rule", "n", "mean_util", "min_util", "mean_egal", "min_egal"], &rows)
            } else {
                emit(stdout, &serde_json::to_value(&stats)?)
            }
        }
        Command::Feasible { instance, set, constraint } => {
            let inst = read_instance(&instance)?;
            let constraint: Constraint = constraint.parse()?;
            let ids: Vec<&str> = set.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let projects = inst.project_set(&ids)?;
            let mut value = json!({
                "set": inst.project_ids(projects),
                "constraint": constraint.as_str(),
                "cost": inst.set_cost(projects).0,
            });
            let (feasible, witness) = match constraint {
                Constraint::None => (is_affordable_set(&inst, projects), None),
                Constraint::Mr => match is_mr_feasible_set(&inst, projects) {
                    Some(charges) => {
                        let out = Outcome { funded: projects, charges, payments: None };
                        (true, Some(serde_json::to_value(OutcomeJson::from_outcome(&inst, &out))?))
                    }
                    None => (false, None),
                },
                Constraint::Imp => match is_implementable_set(&inst, projects) {
                    Implementability::Feasible(y) => {
                        let out = Outcome { funded: projects, charges: y.charges(), payments: Some(y) };
                        (true, Some(serde_json::to_value(OutcomeJson::from_outcome(&inst, &out))?))
                    }
                    Implementability::Infeasible { flow, violation } => {
                        value["max_flow"] = json!(flow.0);
                        value["unsupported"] = json!({
                            "projects": inst.project_ids(violation.projects),
                            "supporters": inst.agent_ids(&violation.supporters),
                            "capacity": violation.supporter_capacity.0,
                            "cost": violation.cost.0,
                        });
                        (false, None)
                    }
                },
            };
            value["feasible"] = json!(feasible);
            if let Some(w) = witness {
                value["outcome"] = w;
            }
            if pretty {
                writeln!(
                    stdout,
                    "{{{}}} cost {} under {}: {}",
                    inst.project_ids(projects).join(","),
                    inst.set_cost(projects),
                    constraint,
                    if feasible { "feasible" } else { "infeasible" }
                )?;
                Ok(())
            } else {
                emit(stdout, &value)
            }
        }
    }
}
