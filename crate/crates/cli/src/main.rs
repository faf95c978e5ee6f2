use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cqlab_core::checks::{
    check_all, check_foscms, check_gmfcq, check_hinted_simplified_pn, check_hinted_soscpn, check_pq_normality,
    check_pseudo_normality, check_soscms, check_soscpn, check_soscpqn, require_admissible, CheckConfig, CheckSummary,
    Condition,
};
use cqlab_core::fixtures::{find_fixture, fixtures, run_fixture};
use cqlab_core::kernel::rational::parse_rational;
use cqlab_core::kernel::QVec;
use cqlab_core::model::{GmpInstance, MultiIndex};
use cqlab_core::multipliers::m_stationarity;
use cqlab_core::problem::load_instance;
use cqlab_core::report::{ConesReport, Report};
use cqlab_core::table::{parse_cell, render, table4};
use cqlab_core::Error;

#[derive(Parser)]
#[command(name = "cqlab", version, about = "Constraint qualification checks for disjunctive programs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run constraint qualification checks on a problem file
    Analyze {
        file: PathBuf,
        /// comma-separated checks, e.g. gmfcq,foscms,qn; default: all
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// multi-index for the PQ-normality family, e.g. 1,1
        #[arg(long)]
        delta: Option<String>,
        /// use the directional variant of the requested checks
        #[arg(long)]
        directional: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// candidate curves per witness search
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// include wall-clock time in the report
        #[arg(long)]
        timing: bool,
    },
    /// Print tangent and normal cones of Γ at F(x̄) or a given point
    Cones {
        file: PathBuf,
        /// point of Γ, comma-separated; default F(x̄)
        #[arg(long)]
        point: Option<String>,
        /// direction for the directional limiting normal cone
        #[arg(long)]
        direction: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// First certifying condition over the quartic family
    Table4 {
        /// `all`, or cells `a,b,c,d` separated by `;`
        #[arg(long, default_value = "all")]
        cells: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List or run the shipped fixtures
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Run {
        /// fixture names; default: all
        names: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_vec(s: &str) -> Result<QVec, Error> {
    s.split(',').map(|x| parse_rational(x).map_err(Error::Input)).collect()
}

fn read_instance(path: &Path) -> Result<GmpInstance, Error> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("problem");
    load_instance(&src, stem)
}

struct AnalyzeArgs<'a> {
    checks: &'a [String],
    delta: Option<&'a str>,
    directional: bool,
    seed: u64,
    budget: Option<usize>,
}

fn selected(inst: &GmpInstance, a: &AnalyzeArgs, cfg: &CheckConfig) -> Result<CheckSummary, Error> {
    let delta = a.delta.map(str::parse::<MultiIndex>).transpose()?;
    if a.checks.is_empty() {
        if let Some(d) = &delta {
            require_admissible(inst, d)?;
        }
        return check_all(inst, cfg);
    }
    let mut verdicts = Vec::new();
    let mut probe = None;
    let mut chain = None;
    let dir = a.directional;
    let need_delta = || delta.clone().ok_or_else(|| Error::Input("this check needs --delta".into()));
    for name in a.checks {
        let c: Condition = name.parse()?;
        let v = match c {
            Condition::Gmfcq => check_gmfcq(inst)?,
            Condition::Foscms => check_foscms(inst)?,
            Condition::Soscms => check_soscms(inst)?,
            Condition::Soscpn => check_soscpn(inst)?,
            Condition::Soscqn => {
                let d = delta.clone().unwrap_or_else(|| MultiIndex::quasi(inst.d()));
                require_admissible(inst, &d)?;
                check_soscpqn(inst, &d, dir)?
            }
            Condition::Soscpqn => {
                let d = need_delta()?;
                require_admissible(inst, &d)?;
                check_soscpqn(inst, &d, dir)?
            }
            Condition::PseudoNormality => check_pseudo_normality(inst, dir, cfg)?,
            Condition::DirPseudoNormality => check_pseudo_normality(inst, true, cfg)?,
            Condition::QuasiNormality | Condition::DirQuasiNormality => {
                let d = delta.clone().unwrap_or_else(|| MultiIndex::quasi(inst.d()));
                check_pq_normality(inst, &d, dir || c == Condition::DirQuasiNormality, cfg)?
            }
            Condition::PqNormality | Condition::DirPqNormality => {
                check_pq_normality(inst, &need_delta()?, dir || c == Condition::DirPqNormality, cfg)?
            }
            Condition::Mscq => {
                let all = check_all(inst, cfg)?;
                probe = all.probe.clone();
                chain = all.chain.clone();
                all.get(Condition::Mscq).cloned().expect("check_all reports MSCQ")
            }
            Condition::HintedSoscpn => check_hinted_soscpn(inst)?,
            Condition::HintedSimplifiedPn => check_hinted_simplified_pn(inst, cfg)?,
        };
        verdicts.push(v);
    }
    Ok(CheckSummary { verdicts, chain, probe })
}

fn analyze(path: &Path, a: AnalyzeArgs, format: Format, timing: bool) -> Result<String, Error> {
    let start = Instant::now();
    let inst = read_instance(path)?;
    let mut cfg = CheckConfig::with_seed(a.seed);
    if let Some(b) = a.budget {
        cfg.witness.budget = b;
    }
    let summary = selected(&inst, &a, &cfg)?;
    let mut report = Report::new(&inst, a.seed, summary);
    if inst.objective.is_some() && inst.disjunctive().is_ok() {
        report.stationarity = Some(m_stationarity(&inst)?);
    }
    if timing {
        report.seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    })
}

fn cones(path: &Path, point: Option<&str>, direction: Option<&str>, format: Format) -> Result<String, Error> {
    let inst = read_instance(path)?;
    let gamma = inst.disjunctive()?;
    let y = match point {
        Some(p) => parse_vec(p)?,
        None => inst.fbar().clone(),
    };
    let d = direction.map(parse_vec).transpose()?;
    let r = ConesReport::new(gamma, &y, d.as_deref())?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&r).expect("reports serialize"),
        Format::Text => r.to_text(),
    })
}

fn run(cli: Cli) -> Result<(String, ExitCode), Error> {
    match cli.cmd {
        Cmd::Analyze { file, checks, delta, directional, seed, budget, format, timing } => {
            let a = AnalyzeArgs { checks: &checks, delta: delta.as_deref(), directional, seed, budget };
            Ok((analyze(&file, a, format, timing)?, ExitCode::SUCCESS))
        }
        Cmd::Cones { file, point, direction, format } => {
            Ok((cones(&file, point.as_deref(), direction.as_deref(), format)?, ExitCode::SUCCESS))
        }
        Cmd::Table4 { cells, format } => {
            let list = match cells.trim() {
                "all" => None,
                s => Some(s.split(';').map(parse_cell).collect::<Result<Vec<_>, _>>()?),
            };
            let rows = table4(list.as_deref(), &CheckConfig::default())?;
            let ok = rows.iter().all(|r| r.matched);
            let out = match format {
                Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
                Format::Text => render(&rows),
            };
            Ok((out, if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }))
        }
        Cmd::Fixtures { action: FixtureAction::List } => {
            let lines: Vec<String> = fixtures().iter().map(|f| format!("{:<20} {}", f.name, f.description)).collect();
            Ok((lines.join("\n") + "\n", ExitCode::SUCCESS))
        }
        Cmd::Fixtures { action: FixtureAction::Run { names, format } } => {
            let chosen = if names.is_empty() {
                fixtures()
            } else {
                names.iter().map(|n| find_fixture(n)).collect::<Result<Vec<_>, _>>()?
            };
            let cfg = CheckConfig::default();
            let outcomes = chosen.iter().map(|f| run_fixture(f, &cfg)).collect::<Result<Vec<_>, _>>()?;
            let ok = outcomes.iter().all(|o| o.passed);
            let out = match format {
                Format::Json => serde_json::to_string_pretty(&outcomes).expect("outcomes serialize"),
                Format::Text => {
                    let mut s = String::new();
                    for o in &outcomes {
                        s.push_str(&format!("{:<20} {}\n", o.name, if o.passed { "pass" } else { "FAIL" }));
                        for m in &o.mismatches {
                            s.push_str(&format!("    {m}\n"));
                        }
                    }
                    let failed = outcomes.iter().filter(|o| !o.passed).count();
                    s.push_str(&format!("{} fixtures, {failed} failed\n", outcomes.len()));
                    s
                }
            };
            Ok((out, if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((mut out, code)) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
