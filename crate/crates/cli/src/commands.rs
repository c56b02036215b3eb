//! Subcommand implementations. Each handler validates its inputs, runs
//! the corresponding library routines, and assembles a [`RunReport`].
//!
//! Error classes map to distinct exit codes so CI can react without
//! parsing messages:
//!
//! | code | class |
//! |------|----------------------------------------------|
//! | 0    | all checks passed                            |
//! | 1    | a check row failed                           |
//! | 2    | usage error (bad flags, ranges, domains)     |
//! | 3    | resource limit (enumeration budget, size cap)|
//! | 4    | even characteristic                          |
//! | 5    | duplicate parameters                         |
//! | 6    | file parse error (config or params file)     |

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use isoquad::flips::{chain_rank, poincare_trace, rank_trace};
use isoquad::isotropic::{
    count_isotropic_with_budget, isotropic_subspaces, naive_count, polynomial_experiment,
    IsotropyInstance, ParamRule, PrimeResult, DEFAULT_CANDIDATE_BUDGET,
};
use isoquad::ranks::{
    rank_closed_form, rank_double_sum, rank_square_sum, rank_triangular_sum,
    subset_intersection_total, variance_identity,
};
use isoquad::sod::{
    build_hyperplanes, check_general_position, enumerate_components, stage_component_count,
    stage_rank, total_rank,
};
use isoquad::{BigInt, BigRational, Error, Genus};
use serde::Deserialize;

use crate::report::RunReport;

/// Largest genus the range-taking subcommands accept; keeps every default
/// invocation at desk scale.
const MAX_CLI_GENUS: u32 = 200;

/// Largest ambient dimension (`2g + 1`) for which component listings and
/// enumeration cross-checks are performed.
const MAX_ENUMERABLE_AMBIENT: u32 = 17;

pub enum CliError {
    /// Bad flag combinations, ranges, or domain violations. Exit 2.
    Usage(String),
    /// Library-level failure; the exit code depends on the variant.
    Core(Error),
    /// A config or params file could not be read or parsed. Exit 6.
    FileParse { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::BudgetExceeded { .. } | Error::SizeCapExceeded { .. } => 3,
                Error::EvenCharacteristic => 4,
                Error::DuplicateParameter { .. } => 5,
                _ => 2,
            },
            CliError::FileParse { .. } => 6,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::FileParse { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

// ===== ranks =====

/// Parses the inclusive range syntax `lo..hi`.
pub fn parse_range(text: &str) -> Result<(u32, u32)> {
    let parts: Vec<&str> = text.split("..").collect();
    let parsed = match parts.as_slice() {
        [lo, hi] => lo.parse::<u32>().ok().zip(hi.parse::<u32>().ok()),
        _ => None,
    };
    parsed.ok_or_else(|| {
        CliError::Usage(format!(
            "expected an inclusive range like 2..6, got {text:?}"
        ))
    })
}

pub fn ranks(range: &str) -> Result<RunReport> {
    let (lo, hi) = parse_range(range)?;
    if lo < 2 || lo > hi || hi > MAX_CLI_GENUS {
        return Err(CliError::Usage(format!(
            "--g expects 2 <= lo <= hi <= {MAX_CLI_GENUS}, got {lo}..{hi}"
        )));
    }
    let mut report = RunReport::new("ranks");
    report.param("g", format!("{lo}..{hi}"));
    for gv in lo..=hi {
        let genus = Genus::new(gv)?;
        let expected = rank_closed_form(gv);
        report.check(
            format!("g={gv} double sum"),
            &expected,
            rank_double_sum(genus),
        );
        report.check(
            format!("g={gv} triangular sum"),
            &expected,
            rank_triangular_sum(genus),
        );
        report.check(
            format!("g={gv} square sum"),
            &expected,
            rank_square_sum(genus),
        );
        report.check(
            format!("g={gv} component ledger"),
            &expected,
            total_rank(genus),
        );
        report.check(format!("g={gv} flip chain"), &expected, chain_rank(genus));
    }
    Ok(report.finish())
}

// ===== identity =====

pub fn identity(max_g: u32) -> Result<RunReport> {
    if !(1..=14).contains(&max_g) {
        return Err(CliError::Usage(format!(
            "--max-g expects 1..14 (the brute force walks 4^g subset pairs), got {max_g}"
        )));
    }
    let mut report = RunReport::new("identity");
    report.param("max-g", max_g);
    for gv in 1..=max_g {
        report.check(
            format!("g={gv} subset pairs"),
            rank_closed_form(gv),
            subset_intersection_total(gv)?,
        );
    }
    for gv in 1..=max_g {
        let variance = variance_identity(gv);
        report.check(
            format!("g={gv} variance"),
            &variance.expected,
            &variance.weighted_sum,
        );
    }
    Ok(report.finish())
}

// ===== sod =====

pub fn sod(gv: u32, k: u32, list: bool) -> Result<RunReport> {
    let genus = Genus::new(gv)?;
    if gv > MAX_CLI_GENUS {
        return Err(CliError::Usage(format!(
            "--g expects at most {MAX_CLI_GENUS}, got {gv}"
        )));
    }
    let count = stage_component_count(genus, k)?;
    let rank = stage_rank(genus, k)?;

    let mut report = RunReport::new("sod");
    report.param("g", gv);
    report.param("k", k);
    report.info("component count", &count);
    report.info("stage rank", &rank);
    report.info("total rank (all stages)", total_rank(genus));

    let enumerable = 2 * gv < MAX_ENUMERABLE_AMBIENT;
    if list && !enumerable {
        return Err(CliError::Usage(format!(
            "--list is limited to 2g+1 <= {MAX_ENUMERABLE_AMBIENT} (g <= 8), got g={gv}"
        )));
    }
    if enumerable {
        let components = enumerate_components(genus, k)?;
        report.check("enumerated count", &count, components.len());
        let rank_sum: u64 = components.iter().map(|c| c.rank as u64).sum();
        report.check("enumerated rank sum", &rank, rank_sum);
        if list {
            for (idx, comp) in components.iter().enumerate() {
                let indices = comp
                    .indices
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                report.info(
                    format!("component {}", idx + 1),
                    format!("I={{{indices}}} dim={} rank={}", comp.dim, comp.rank),
                );
            }
        }
    }
    Ok(report.finish())
}

// ===== flips =====

pub fn flips(gv: u32, trace: bool, poincare: bool) -> Result<RunReport> {
    let genus = Genus::new(gv)?;
    if gv > MAX_CLI_GENUS {
        return Err(CliError::Usage(format!(
            "--g expects at most {MAX_CLI_GENUS}, got {gv}"
        )));
    }
    let walk = rank_trace(genus);
    let mut report = RunReport::new("flips");
    report.param("g", gv);
    report.check("final rank", rank_closed_form(gv), walk.final_rank());
    report.info("start rank", &walk.ranks[0]);
    if trace {
        for step in &walk.steps {
            report.info(
                format!("step {}", step.index),
                format!(
                    "n={} dim_up={} dim_down={} added={} removed={} delta={} rank={}",
                    step.center_count,
                    step.blowup_center_dim,
                    step.blowdown_center_dim,
                    step.rank_added,
                    step.rank_removed,
                    step.rank_delta,
                    walk.ranks[step.index as usize + 1],
                ),
            );
        }
    }
    if poincare {
        let refined = poincare_trace(genus);
        let stages = refined.poincare.as_ref().expect("refined trace has stages");
        for (s, poly) in stages.iter().enumerate() {
            report.info(format!("stage {s} polynomial"), poly);
            report.check(
                format!("stage {s} palindromic"),
                true,
                poly.is_palindromic(),
            );
            report.check(
                format!("stage {s} value at 1"),
                &walk.ranks[s],
                poly.eval(&BigInt::from(1)),
            );
        }
    }
    Ok(report.finish())
}

// ===== count =====

/// Instance selection shared by `count`: either explicit flags or a small
/// TOML config file.
pub struct CountArgs {
    pub p: Option<u64>,
    pub g: Option<u32>,
    pub params: Option<String>,
    pub rule: Option<String>,
    pub config: Option<std::path::PathBuf>,
    pub naive: bool,
    pub compare: bool,
    pub verbose: bool,
    pub budget: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    p: Option<u64>,
    g: Option<u32>,
    params: Option<Vec<u64>>,
    rule: Option<String>,
}

struct InstanceSpec {
    p: u64,
    g: u32,
    rule: ParamRule,
}

fn parse_u64_list(text: &str, flag: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| {
                CliError::Usage(format!(
                    "{flag}: expected a comma-separated integer list, got {part:?}"
                ))
            })
        })
        .collect()
}

fn parse_rule_name(name: &str) -> Result<ParamRule> {
    match name {
        "consecutive" => Ok(ParamRule::Consecutive),
        other => Err(CliError::Usage(format!(
            "unknown rule {other:?}; the only named rule is \"consecutive\""
        ))),
    }
}

fn resolve_instance(args: &CountArgs) -> Result<InstanceSpec> {
    if let Some(path) = &args.config {
        if args.p.is_some() || args.g.is_some() || args.params.is_some() || args.rule.is_some() {
            return Err(CliError::Usage(
                "--config replaces --p/--g/--params/--rule; give one or the other".into(),
            ));
        }
        let file_parse = |message: String| CliError::FileParse {
            path: path.display().to_string(),
            message,
        };
        let text = fs::read_to_string(path).map_err(|e| file_parse(e.to_string()))?;
        let config: ConfigFile = toml::from_str(&text).map_err(|e| file_parse(e.to_string()))?;
        let p = config
            .p
            .ok_or_else(|| file_parse("missing key: p".into()))?;
        let g = config
            .g
            .ok_or_else(|| file_parse("missing key: g".into()))?;
        let rule = match (config.params, config.rule.as_deref()) {
            (Some(params), None) => ParamRule::Explicit(params),
            (None, Some("consecutive")) => ParamRule::Consecutive,
            (None, Some(other)) => {
                return Err(file_parse(format!(
                    "unknown rule {other:?}; the only named rule is \"consecutive\""
                )))
            }
            (None, None) | (Some(_), Some(_)) => {
                return Err(file_parse("set exactly one of: params, rule".into()))
            }
        };
        return Ok(InstanceSpec { p, g, rule });
    }

    let p = args
        .p
        .ok_or_else(|| CliError::Usage("--p is required (or use --config)".into()))?;
    let g = args
        .g
        .ok_or_else(|| CliError::Usage("--g is required (or use --config)".into()))?;
    let rule = match (&args.params, args.rule.as_deref()) {
        (Some(list), None) => ParamRule::Explicit(parse_u64_list(list, "--params")?),
        (None, Some(name)) => parse_rule_name(name)?,
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either explicit --params or a named --rule, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "give the parameters with --params or a named --rule".into(),
            ))
        }
    };
    Ok(InstanceSpec { p, g, rule })
}

pub fn count(args: &CountArgs) -> Result<RunReport> {
    let spec = resolve_instance(args)?;
    let genus = Genus::new(spec.g)?;
    let instance = match &spec.rule {
        ParamRule::Explicit(params) => IsotropyInstance::new(spec.p, genus, params)?,
        ParamRule::Consecutive => IsotropyInstance::consecutive(spec.p, genus)?,
    };
    let budget = args.budget.unwrap_or(DEFAULT_CANDIDATE_BUDGET);

    let mut report = RunReport::new("count");
    report.param("p", spec.p);
    report.param("g", spec.g);
    match &spec.rule {
        ParamRule::Explicit(params) => report.param(
            "params",
            params
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ParamRule::Consecutive => report.param("rule", "consecutive"),
    }
    if let Some(b) = args.budget {
        report.param("budget", b);
    }

    let total;
    if args.verbose {
        let witnesses = isotropic_subspaces(&instance, budget)?;
        total = BigInt::from(witnesses.len());
        for (idx, w) in witnesses.iter().enumerate() {
            report.info(format!("witness {}", idx + 1), w);
        }
    } else {
        total = count_isotropic_with_budget(&instance, budget)?;
    }
    report.info("count", &total);

    if args.naive {
        report.check("naive oracle agrees", &total, naive_count(&instance)?);
    }
    if args.compare {
        let stages = poincare_trace(genus)
            .poincare
            .expect("refined trace has stages");
        let prediction = stages
            .last()
            .expect("at least one stage")
            .eval(&BigInt::from(spec.p));
        report.info("prediction", &prediction);
        report.info("difference", &total - &prediction);
    }
    Ok(report.finish())
}

// ===== snc =====

pub fn snc(k: usize, params_file: &Path) -> Result<RunReport> {
    if k == 0 {
        return Err(CliError::Usage(
            "--k expects at least 1 (hyperplanes in projective k-space)".into(),
        ));
    }
    let params = read_rationals(params_file)?;
    let system = build_hyperplanes(k, &params)?;
    let outcome = check_general_position(&system);

    let mut report = RunReport::new("snc");
    report.param("k", k);
    report.param("params-file", params_file.display().to_string());
    report.info("hyperplanes", params.len());
    report.info("subsets checked", outcome.subsets_checked);
    report.check(
        "general position",
        "pass",
        if outcome.passed { "pass" } else { "fail" },
    );
    if let Some(violation) = &outcome.violation {
        let subset = violation
            .subset
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",");
        report.info("violating subset", format!("{{{subset}}}"));
        report.info(
            "violating subset rank",
            format!(
                "{} (expected {})",
                violation.actual_rank, violation.expected_rank
            ),
        );
    }
    Ok(report.finish())
}

/// Reads one rational per line; `#` starts a comment, blank lines are
/// skipped, values are `num/den` or plain integers.
fn read_rationals(path: &Path) -> Result<Vec<BigRational>> {
    let file_parse = |message: String| CliError::FileParse {
        path: path.display().to_string(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| file_parse(e.to_string()))?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let value = BigRational::from_str(line)
            .map_err(|e| file_parse(format!("line {}: {line:?}: {e}", idx + 1)))?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(file_parse("no parameters found".into()));
    }
    Ok(values)
}

// ===== experiment =====

pub struct ExperimentArgs {
    pub g: u32,
    pub primes: String,
    pub params: Option<String>,
    pub budget: Option<u64>,
}

pub fn experiment(args: &ExperimentArgs) -> Result<RunReport> {
    let genus = Genus::new(args.g)?;
    let primes = parse_u64_list(&args.primes, "--primes")?;
    let rule = match &args.params {
        Some(list) => ParamRule::Explicit(parse_u64_list(list, "--params")?),
        None => ParamRule::Consecutive,
    };
    let budget = args.budget.unwrap_or(DEFAULT_CANDIDATE_BUDGET);

    let outcome = polynomial_experiment(genus, &primes, &rule, budget);

    let mut report = RunReport::new("experiment");
    report.param("g", args.g);
    report.param("primes", &args.primes);
    match &rule {
        ParamRule::Explicit(params) => report.param(
            "params",
            params
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ParamRule::Consecutive => report.param("rule", "consecutive"),
    }
    if let Some(b) = args.budget {
        report.param("budget", b);
    }

    for prime_outcome in &outcome.outcomes {
        let p = prime_outcome.prime;
        match &prime_outcome.result {
            PrimeResult::Counted {
                count,
                prediction,
                difference,
            } => {
                report.info(format!("p={p} count"), count);
                report.info(format!("p={p} prediction"), prediction);
                report.info(format!("p={p} difference"), difference);
            }
            PrimeResult::Failed { error } => {
                report.info(format!("p={p} error"), error);
            }
        }
    }
    report.info("all differences zero", outcome.all_differences_zero());
    Ok(report.finish())
}
