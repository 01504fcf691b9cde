//! `ifr` command line.
//!
//! Exit status: 0 success, 1 computation failure, 2 usage error, 3 invalid
//! hierarchy or data, 4 I/O failure, 5 unknown country/year.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::aggregate::{build_scorecards, rank, Level, MissingDataPolicy, ScoreKind};
use crate::ingest::{load_observations, validate_dataset, Dataset, IngestError};
use crate::normalize::{normalize_dataset, BoundsMode, BoundsPolicy, NormalizeError};
use crate::report::{self, Format, RunManifest};
use crate::sensitivity::{
    normalization_switch_analysis, run_sensitivity, SensitivityConfig, SensitivityError,
};
use crate::taxonomy::{
    build_default_ifr_hierarchy, parse_hierarchy, serialize_hierarchy, validate_hierarchy,
    HierarchySpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_LOOKUP: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "ifr", version, about = "Index of Future Readiness engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the default IFR hierarchy document.
    InitHierarchy {
        /// Output path.
        path: PathBuf,
    },
    /// Check a hierarchy and a data file; print diagnostics and coverage.
    Validate {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Compute every scorecard.
    Score {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rank countries by one score for one year.
    Rank {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "nfri", value_parser = parse_score_kind)]
        score_kind: ScoreKind,
        /// Year to rank; defaults to the latest year in the data.
        #[arg(long)]
        year: Option<i32>,
    },
    /// Rank robustness under weight perturbation.
    Sensitivity {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0.2, value_parser = parse_sigma)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Levels to perturb (comma separated).
        #[arg(long, value_delimiter = ',', default_values_t = ["indicator".to_owned(), "sub_element".to_owned(), "element".to_owned()])]
        levels: Vec<String>,
        #[arg(long)]
        year: Option<i32>,
        /// Also compare NFRI rankings across these bounds policies.
        #[arg(long, value_enum, value_delimiter = ',')]
        compare_bounds: Vec<BoundsArg>,
    },
    /// Breakdown of one country from NFRI down to indicators.
    Profile {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        country: String,
        /// Defaults to the latest year for the country.
        #[arg(long)]
        year: Option<i32>,
        /// Emit long-format CSV series for external charting.
        #[arg(long)]
        plot_data: bool,
    },
}

#[derive(Args, Debug)]
struct Inputs {
    /// Hierarchy document; the built-in default when omitted.
    #[arg(long)]
    hierarchy: Option<PathBuf>,
    /// Observation CSV (`country,year,indicator,value`).
    #[arg(long)]
    data: PathBuf,
}

#[derive(Args, Debug)]
struct PolicyArgs {
    #[arg(long, value_enum, default_value_t = BoundsArg::InSample)]
    bounds: BoundsArg,
    /// Minimum share of present children for a node to be scored.
    #[arg(long, default_value_t = 0.5, value_parser = parse_theta)]
    theta: f64,
    /// Score NFRI from the available elements instead of requiring all six.
    #[arg(long)]
    partial_nfri: bool,
    /// Score for indicators whose bounds collapse (min == max).
    #[arg(long, default_value_t = 50.5)]
    degenerate_score: f64,
    /// Winsorize observed bounds at these percentiles, e.g. `5,95`.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    trim_percentiles: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Also write the run manifest (with timestamp) to this path.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BoundsArg {
    InSample,
    Pooled,
    Goalposts,
}

impl From<BoundsArg> for BoundsMode {
    fn from(b: BoundsArg) -> Self {
        match b {
            BoundsArg::InSample => BoundsMode::InSamplePerYear,
            BoundsArg::Pooled => BoundsMode::PooledPanel,
            BoundsArg::Goalposts => BoundsMode::FixedGoalposts,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn parse_score_kind(s: &str) -> Result<ScoreKind, String> {
    s.parse()
}

fn parse_theta(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if t > 0.0 && t <= 1.0 {
        Ok(t)
    } else {
        Err(format!("theta must lie in (0, 1], got {t}"))
    }
}

fn parse_sigma(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("sigma must be finite and non-negative, got {v}"))
    }
}

impl PolicyArgs {
    fn bounds(&self) -> Result<BoundsPolicy, CliError> {
        let policy = BoundsPolicy {
            mode: self.bounds.into(),
            degenerate_score: self.degenerate_score,
            trim_percentiles: self.trim_percentiles.as_ref().map(|v| (v[0], v[1])),
        };
        policy
            .validate()
            .map_err(|e| CliError::new(EXIT_USAGE, e.to_string()))?;
        Ok(policy)
    }

    fn missing(&self) -> MissingDataPolicy {
        MissingDataPolicy {
            coverage_threshold: self.theta,
            element_required_for_nfri: !self.partial_nfri,
        }
    }
}

#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::new(EXIT_IO, format!("{}: {e}", path.display()))
    }
}

impl From<NormalizeError> for CliError {
    fn from(e: NormalizeError) -> Self {
        CliError::new(EXIT_VALIDATION, e.to_string())
    }
}

impl From<SensitivityError> for CliError {
    fn from(e: SensitivityError) -> Self {
        let code = match e {
            SensitivityError::InvalidConfig(_) => EXIT_USAGE,
            SensitivityError::Normalize(_) => EXIT_VALIDATION,
            SensitivityError::Domain(_) => EXIT_FAILURE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<report::ReportError> for CliError {
    fn from(e: report::ReportError) -> Self {
        CliError::new(EXIT_LOOKUP, e.to_string())
    }
}

fn load_hierarchy(path: Option<&Path>) -> Result<HierarchySpec, CliError> {
    let Some(path) = path else {
        return Ok(build_default_ifr_hierarchy());
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_hierarchy(&text)
        .map_err(|e| CliError::new(EXIT_VALIDATION, format!("{}: {e}", path.display())))
}

fn load_data(path: &Path) -> Result<Dataset, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    load_observations(bytes.as_slice())
        .map_err(|e| CliError::new(EXIT_VALIDATION, format!("{}: {e}", path.display())))
}

/// Loads both inputs and checks the data against the hierarchy.
fn load_inputs(inputs: &Inputs) -> Result<(HierarchySpec, Dataset), CliError> {
    let spec = load_hierarchy(inputs.hierarchy.as_deref())?;
    let data = load_data(&inputs.data)?;
    validate_dataset(&data, &spec).map_err(|e| CliError::new(EXIT_VALIDATION, e.to_string()))?;
    Ok((spec, data))
}

fn write_manifest(output: &OutputArgs, manifest: &RunManifest) -> Result<(), CliError> {
    if let Some(path) = &output.manifest {
        fs::write(path, manifest.to_sidecar_json()).map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

fn cmd_validate(
    inputs: &Inputs,
    policy: &PolicyArgs,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let bounds = policy.bounds()?;
    let mut errors: Vec<String> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    let spec = match &inputs.hierarchy {
        None => Some(build_default_ifr_hierarchy()),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            match parse_hierarchy(&text) {
                Ok(s) => Some(s),
                Err(crate::taxonomy::TaxonomyError::Semantic(diags)) => {
                    errors.extend(diags.iter().map(|d| format!("hierarchy: {d}")));
                    None
                }
                Err(e) => {
                    errors.push(format!("hierarchy: {e}"));
                    None
                }
            }
        }
    };
    let data = match load_observations(
        fs::read(&inputs.data)
            .map_err(|e| CliError::io(&inputs.data, e))?
            .as_slice(),
    ) {
        Ok(d) => Some(d),
        Err(e) => {
            errors.push(format!("data: {e}"));
            None
        }
    };

    let mut coverage = None;
    if let (Some(spec), Some(data)) = (&spec, &data) {
        debug_assert!(validate_hierarchy(spec).is_empty());
        for ind in spec.indicators.iter().filter(|i| i.orientation_provisional) {
            warnings.push(format!("provisional orientation: {}", ind.id));
        }
        match validate_dataset(data, spec) {
            Ok(report) => {
                if report.global == 0.0 {
                    warnings.push("coverage is 0: no present observations".into());
                }
                match normalize_dataset(data, spec, &bounds) {
                    Ok(scores) => {
                        let mut degenerate: Vec<(String, i32)> = scores
                            .iter()
                            .filter(|s| s.degenerate)
                            .map(|s| (s.indicator_id.clone(), s.year))
                            .collect();
                        degenerate.sort();
                        degenerate.dedup();
                        warnings.extend(
                            degenerate
                                .into_iter()
                                .map(|(i, y)| format!("degenerate bounds: {i} ({y})")),
                        );
                    }
                    Err(e) => errors.push(format!("normalization: {e}")),
                }
                coverage = Some(report);
            }
            Err(IngestError::UnknownIndicators(ids)) => {
                errors.extend(ids.iter().map(|id| format!("data: unknown indicator {id}")));
            }
            Err(e) => errors.push(format!("data: {e}")),
        }
    }

    if format == Format::Json {
        #[derive(serde::Serialize)]
        struct Doc<'a> {
            errors: &'a [String],
            warnings: &'a [String],
            coverage: Option<serde_json::Value>,
        }
        let cov = coverage
            .as_ref()
            .map(|c| serde_json::from_str(&report::coverage(c, Format::Json)).expect("valid json"));
        let text = serde_json::to_string_pretty(&Doc {
            errors: &errors,
            warnings: &warnings,
            coverage: cov,
        })
        .expect("serializable");
        writeln!(out, "{text}").map_err(|e| CliError::new(EXIT_IO, e.to_string()))?;
    } else {
        let mut text = String::new();
        for e in &errors {
            text.push_str(&format!("error: {e}\n"));
        }
        for w in &warnings {
            text.push_str(&format!("warning: {w}\n"));
        }
        if let Some(c) = &coverage {
            text.push_str(&report::coverage(c, format));
        }
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::new(EXIT_IO, e.to_string()))?;
    }
    Ok(if errors.is_empty() {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    })
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::new(EXIT_IO, e.to_string()))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::InitHierarchy { path } => {
            fs::write(&path, serialize_hierarchy(&build_default_ifr_hierarchy()))
                .map_err(|e| CliError::io(&path, e))?;
            Ok(EXIT_OK)
        }
        Command::Validate {
            inputs,
            policy,
            format,
        } => cmd_validate(&inputs, &policy, format.into(), out),
        Command::Score {
            inputs,
            policy,
            output,
        } => {
            let (spec, data) = load_inputs(&inputs)?;
            let (bounds, missing) = (policy.bounds()?, policy.missing());
            let cards = build_scorecards(&data, &spec, &bounds, &missing)?;
            let manifest = RunManifest::new(&spec, &data, &bounds, &missing);
            write_manifest(&output, &manifest)?;
            emit(
                out,
                &report::scorecards(&cards, &spec, &manifest, output.format.into()),
            )?;
            Ok(EXIT_OK)
        }
        Command::Rank {
            inputs,
            policy,
            output,
            score_kind,
            year,
        } => {
            let (spec, data) = load_inputs(&inputs)?;
            let (bounds, missing) = (policy.bounds()?, policy.missing());
            let cards = build_scorecards(&data, &spec, &bounds, &missing)?;
            let year = year.or_else(|| data.latest_year());
            let cross: Vec<_> = cards.into_iter().filter(|c| Some(c.year) == year).collect();
            let table = rank(&cross, score_kind);
            let manifest = RunManifest::new(&spec, &data, &bounds, &missing);
            write_manifest(&output, &manifest)?;
            emit(
                out,
                &report::rank_table(&table, &manifest, output.format.into()),
            )?;
            Ok(EXIT_OK)
        }
        Command::Sensitivity {
            inputs,
            policy,
            output,
            trials,
            sigma,
            seed,
            levels,
            year,
            compare_bounds,
        } => {
            let levels = levels
                .iter()
                .map(|l| l.parse::<Level>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::new(EXIT_USAGE, e))?;
            let config = SensitivityConfig {
                trials: trials as usize,
                sigma,
                seed,
                levels,
                year,
            };
            let (spec, data) = load_inputs(&inputs)?;
            let (bounds, missing) = (policy.bounds()?, policy.missing());
            let report_body = run_sensitivity(&data, &spec, &bounds, &missing, &config)?;
            let switch = if compare_bounds.is_empty() {
                None
            } else {
                let policies: Vec<BoundsPolicy> = compare_bounds
                    .iter()
                    .map(|b| BoundsPolicy {
                        mode: (*b).into(),
                        ..bounds
                    })
                    .collect();
                Some(normalization_switch_analysis(
                    &data, &spec, &missing, &policies,
                )?)
            };
            let manifest =
                RunManifest::new(&spec, &data, &bounds, &missing).with_sensitivity(&config);
            write_manifest(&output, &manifest)?;
            emit(
                out,
                &report::robustness(
                    &report_body,
                    switch.as_ref(),
                    &manifest,
                    output.format.into(),
                ),
            )?;
            Ok(EXIT_OK)
        }
        Command::Profile {
            inputs,
            policy,
            output,
            country,
            year,
            plot_data,
        } => {
            let (spec, data) = load_inputs(&inputs)?;
            let (bounds, missing) = (policy.bounds()?, policy.missing());
            let cards = build_scorecards(&data, &spec, &bounds, &missing)?;
            let p = report::profile(&cards, &spec, &country, year)?;
            let manifest = RunManifest::new(&spec, &data, &bounds, &missing);
            write_manifest(&output, &manifest)?;
            let text = if plot_data {
                report::profile_plot_data(&p)
            } else {
                report::profile_report(&p, &manifest, output.format.into())
            };
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI with explicit arguments (the first is the program name) and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
