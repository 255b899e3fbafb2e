//! Command-line front end: score ingestion, entropy weights, metric
//! computation, compromise ranking, dominance hierarchies, and a
//! strategy-weight sweep, individually or as a one-shot pipeline.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcdm_core::error::Error;
use mcdm_core::{aism, fusion, model, sensitivity, topsis, vikor, weights};
use mcdm_core::{
    fmt_fixed, CriteriaProfile, CriterionSpec, DecisionMatrix, MetricTable, NormalizedMatrix,
    WeightVector,
};

#[derive(Parser)]
#[command(
    name = "mcdm",
    version,
    about = "Compromise ranking of alternatives with adversarial dominance hierarchies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print entropy weights of a raw score matrix
    Weights(WeightsArgs),
    /// Compute the six metrics and the blended ranking
    Rank(RankArgs),
    /// Build a dominance hierarchy and render it as DOT
    Aism(AismArgs),
    /// Sweep the strategy weight k and report rank stability
    Sensitivity(SensitivityArgs),
    /// Run every stage and write all artifacts into a directory
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Input CSV; repeat the flag to average several questionnaire sheets
    #[arg(long = "input", required = true, value_name = "FILE")]
    inputs: Vec<PathBuf>,
    /// Input interpretation; auto spots a metric table by its header
    #[arg(long, value_enum, default_value_t = FromMode::Auto)]
    from: FromMode,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FromMode {
    Auto,
    Raw,
    Metrics,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct WeightsArgs {
    #[command(flatten)]
    ingest: IngestArgs,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    ingest: IngestArgs,
    /// Criterion weights: "entropy" or a CSV file of criterion,weight rows
    #[arg(long, default_value = "entropy", value_name = "MODE|FILE")]
    weights: String,
    /// Strategy weight in [0, 1]
    #[arg(long, default_value_t = 0.5)]
    k: f64,
    /// Directory for metrics.csv and ranking.csv; prints to stdout when omitted
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Sixmetric,
    Sdr,
    Q,
}

impl Profile {
    fn dir_name(self) -> &'static str {
        match self {
            Profile::Sixmetric => "sixmetric",
            Profile::Sdr => "sdr",
            Profile::Q => "q",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Up,
    Down,
    Both,
}

#[derive(Args)]
struct AismArgs {
    #[command(flatten)]
    ingest: IngestArgs,
    /// Criterion weights: "entropy" or a CSV file of criterion,weight rows
    #[arg(long, default_value = "entropy", value_name = "MODE|FILE")]
    weights: String,
    /// Strategy weight used by the sdr and q profiles
    #[arg(long, default_value_t = 0.5)]
    k: f64,
    /// Which comparability profile to analyze
    #[arg(long, value_enum, default_value_t = Profile::Sixmetric)]
    profile: Profile,
    /// Hierarchy direction to render
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    /// Write DOT here instead of stdout; with --mode both, writes
    /// <stem>.up.dot and <stem>.down.dot
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Dump the A, B, R, S matrices as 0/1 CSV into this directory
    #[arg(long, value_name = "DIR")]
    matrices: Option<PathBuf>,
    /// Absolute tolerance for dominance comparisons
    #[arg(long, default_value_t = 0.0, value_name = "EPS")]
    dominance_eps: f64,
}

#[derive(Args)]
struct SensitivityArgs {
    #[command(flatten)]
    ingest: IngestArgs,
    /// Criterion weights: "entropy" or a CSV file of criterion,weight rows
    #[arg(long, default_value = "entropy", value_name = "MODE|FILE")]
    weights: String,
    /// Strategy-weight grid as start:stop:step
    #[arg(long, default_value = "0:1:0.05", value_name = "GRID")]
    k_grid: String,
    /// Grid point every ranking is compared against
    #[arg(long, default_value_t = 0.5)]
    reference: f64,
    /// File for the sweep CSV; prints to stdout when omitted
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    #[command(flatten)]
    ingest: IngestArgs,
    /// Criterion weights: "entropy" or a CSV file of criterion,weight rows
    #[arg(long, default_value = "entropy", value_name = "MODE|FILE")]
    weights: String,
    /// Strategy weight in [0, 1]
    #[arg(long, default_value_t = 0.5)]
    k: f64,
    /// Strategy-weight grid as start:stop:step
    #[arg(long, default_value = "0:1:0.05", value_name = "GRID")]
    k_grid: String,
    /// Grid point every ranking is compared against
    #[arg(long, default_value_t = 0.5)]
    reference: f64,
    /// Absolute tolerance for dominance comparisons
    #[arg(long, default_value_t = 0.0, value_name = "EPS")]
    dominance_eps: f64,
    /// Artifact directory, created if missing
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

/// A diagnosed failure carrying its process exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

/// Converts a core error, prefixing the pipeline stage that raised it.
fn stage<T>(name: &str, result: mcdm_core::Result<T>) -> CliResult<T> {
    result.map_err(|e| {
        let mut failure = Failure::from(e);
        failure.message = format!("{name}: {}", failure.message);
        failure
    })
}

fn data_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Weights(args) => run_weights(args),
        Command::Rank(args) => run_rank(args),
        Command::Aism(args) => run_aism(args),
        Command::Sensitivity(args) => run_sensitivity(args),
        Command::Pipeline(args) => run_pipeline(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// What ingestion produced: raw scores still need the full metric chain,
/// a metric table skips straight to fusion.
enum Source {
    Raw(DecisionMatrix),
    Metrics(MetricTable),
}

fn load_matrix(inputs: &[PathBuf]) -> CliResult<DecisionMatrix> {
    let mut sheets = Vec::with_capacity(inputs.len());
    for path in inputs {
        let text = fs::read_to_string(path).map_err(|e| {
            data_error(format!("cannot read {}: {e}", path.display()))
        })?;
        let matrix = model::parse_decision_matrix::<f64>(&text)
            .map_err(|e| data_error(format!("{}: {e}", path.display())))?;
        sheets.push(matrix);
    }
    if sheets.len() == 1 {
        Ok(sheets.pop().expect("one sheet"))
    } else {
        stage("questionnaire aggregation", model::aggregate_questionnaires(&sheets))
    }
}

fn ingest(args: &IngestArgs) -> CliResult<Source> {
    let matrix = load_matrix(&args.inputs)?;
    let looks_like_metrics = fusion::is_metric_header(matrix.criteria());
    match args.from {
        FromMode::Raw => Ok(Source::Raw(matrix)),
        FromMode::Auto if !looks_like_metrics => Ok(Source::Raw(matrix)),
        _ => stage(
            "metric table ingestion",
            MetricTable::from_decision_matrix(&matrix),
        )
        .map(Source::Metrics),
    }
}

fn read_weight_file(path: &Path, criteria: &[CriterionSpec]) -> CliResult<WeightVector> {
    let text = fs::read_to_string(path).map_err(|e| {
        data_error(format!("cannot read {}: {e}", path.display()))
    })?;
    let mut entries: BTreeMap<String, f64> = BTreeMap::new();
    let mut first_content = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let header = first_content
            && line
                .split(',')
                .next()
                .is_some_and(|f| f.trim().eq_ignore_ascii_case("criterion"));
        first_content = false;
        if header {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(data_error(format!(
                "{}: line {}: expected 'criterion,weight'",
                path.display(),
                idx + 1
            )));
        }
        let value: f64 = fields[1].parse().map_err(|_| {
            data_error(format!(
                "{}: line {}: weight '{}' is not a number",
                path.display(),
                idx + 1,
                fields[1]
            ))
        })?;
        if !value.is_finite() || value < 0.0 {
            return Err(data_error(format!(
                "{}: line {}: weight {value} must be finite and nonnegative",
                path.display(),
                idx + 1
            )));
        }
        if entries.insert(fields[0].to_string(), value).is_some() {
            return Err(data_error(format!(
                "{}: criterion '{}' listed twice",
                path.display(),
                fields[0]
            )));
        }
    }
    let mut ordered = Vec::with_capacity(criteria.len());
    for spec in criteria {
        match entries.remove(&spec.id) {
            Some(v) => ordered.push(v),
            None => {
                return Err(data_error(format!(
                    "{}: no weight for criterion '{}'",
                    path.display(),
                    spec.id
                )))
            }
        }
    }
    if let Some(extra) = entries.keys().next() {
        return Err(data_error(format!(
            "{}: weight for unknown criterion '{extra}'",
            path.display()
        )));
    }
    let sum: f64 = ordered.iter().sum();
    if (sum - 1.0).abs() > 0.01 {
        return Err(data_error(format!(
            "{}: weights sum to {sum:.6}, more than 1% away from 1",
            path.display()
        )));
    }
    if (sum - 1.0).abs() > 1e-9 {
        eprintln!(
            "note: weights in {} sum to {sum:.6}; renormalizing",
            path.display()
        );
        for w in &mut ordered {
            *w /= sum;
        }
    }
    stage("weight file", WeightVector::new(ordered))
}

fn resolve_weights(
    flag: &str,
    matrix: &DecisionMatrix,
    normalized: &NormalizedMatrix,
) -> CliResult<WeightVector> {
    if flag == "entropy" {
        Ok(stage("entropy weighting", weights::entropy_weights(normalized))?.weights)
    } else {
        read_weight_file(Path::new(flag), matrix.criteria())
    }
}

/// Metric table plus, for raw inputs, the applied weights.
struct Computed {
    criteria: Vec<String>,
    weights: Option<WeightVector>,
    metrics: MetricTable,
}

fn compute_metrics(source: Source, weights_flag: &str) -> CliResult<Computed> {
    match source {
        Source::Metrics(metrics) => Ok(Computed {
            criteria: Vec::new(),
            weights: None,
            metrics,
        }),
        Source::Raw(matrix) => {
            let normalized = model::normalize(&matrix);
            let w = resolve_weights(weights_flag, &matrix, &normalized)?;
            let weighted = stage("weight application", model::apply_weights(&normalized, &w))?;
            let ideal = stage(
                "ideal solutions",
                topsis::ideal_solutions(&weighted, matrix.criteria()),
            )?;
            let sep = stage("separation measures", topsis::separations(&weighted, &ideal))?;
            let range = stage(
                "best-worst ranges",
                vikor::best_worst(&normalized, matrix.criteria()),
            )?;
            let ur = stage(
                "utility-regret measures",
                vikor::utility_regret(&normalized, &w, &range),
            )?;
            let metrics = stage("metric table", MetricTable::from_parts(&sep, &ur))?;
            Ok(Computed {
                criteria: matrix.criteria().iter().map(|c| c.id.clone()).collect(),
                weights: Some(w),
                metrics,
            })
        }
    }
}

fn weight_report_csv(criteria: &[String], w: &WeightVector) -> String {
    let mut out = String::from("criterion,weight,percent\n");
    for (id, &v) in criteria.iter().zip(w.as_slice()) {
        out.push_str(&format!("{id},{},{:.3}\n", fmt_fixed(v), v * 100.0));
    }
    out
}

fn weight_report_text(criteria: &[String], w: &WeightVector) -> String {
    let width = criteria
        .iter()
        .map(String::len)
        .chain(["criterion".len()])
        .max()
        .expect("nonempty");
    let mut out = format!("{:<width$}  {:>8}  {:>8}\n", "criterion", "weight", "percent");
    for (id, &v) in criteria.iter().zip(w.as_slice()) {
        out.push_str(&format!(
            "{id:<width$}  {:>8}  {:>7.3}%\n",
            fmt_fixed(v),
            v * 100.0
        ));
    }
    out
}

fn create_dir(path: &Path) -> CliResult<()> {
    fs::create_dir_all(path)
        .map_err(|e| data_error(format!("cannot create {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    fs::write(path, content)
        .map_err(|e| data_error(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn run_weights(args: WeightsArgs) -> CliResult<()> {
    let matrix = match ingest(&args.ingest)? {
        Source::Raw(matrix) => matrix,
        Source::Metrics(_) => {
            return Err(data_error(
                "input is a precomputed metric table; entropy weights need raw scores \
                 (pass --from raw to force)"
                    .into(),
            ))
        }
    };
    let normalized = model::normalize(&matrix);
    let report = stage("entropy weighting", weights::entropy_weights(&normalized))?;
    let ids: Vec<String> = matrix.criteria().iter().map(|c| c.id.clone()).collect();
    match args.format {
        Format::Csv => print!("{}", weight_report_csv(&ids, &report.weights)),
        Format::Text => print!("{}", weight_report_text(&ids, &report.weights)),
    }
    Ok(())
}

fn run_rank(args: RankArgs) -> CliResult<()> {
    let computed = compute_metrics(ingest(&args.ingest)?, &args.weights)?;
    let sdr = fusion::sdr_means_of(&computed.metrics);
    let table = stage(
        "compromise ranking",
        fusion::compromise(&computed.metrics.alternatives, &sdr, args.k),
    )?;
    let report = fusion::rank_report(&table);
    match &args.out {
        Some(dir) => {
            create_dir(dir)?;
            write_file(&dir.join("metrics.csv"), &computed.metrics.to_csv_string())?;
            write_file(&dir.join("ranking.csv"), &report)?;
        }
        None => print!("{report}"),
    }
    Ok(())
}

fn hierarchy_for(
    metrics: &MetricTable,
    profile: Profile,
    k: f64,
    eps: f64,
) -> CliResult<aism::HierarchyResult> {
    let data: CriteriaProfile = match profile {
        Profile::Sixmetric => metrics.six_metric_profile(),
        Profile::Sdr | Profile::Q => {
            let sdr = fusion::sdr_means_of(metrics);
            let table = stage(
                "compromise ranking",
                fusion::compromise(&metrics.alternatives, &sdr, k),
            )?;
            match profile {
                Profile::Sdr => fusion::sdr_profile(&table),
                _ => fusion::q_profile(&table),
            }
        }
    };
    stage("hierarchy analysis", aism::analyze(&data, eps))
}

fn dump_matrices(dir: &Path, h: &aism::HierarchyResult) -> CliResult<()> {
    let skeleton_full = stage("cycle expansion", aism::expand_cycles(&h.skeleton, &h.groups))?;
    write_file(&dir.join("A.csv"), &h.adjacency.to_csv_string())?;
    write_file(&dir.join("B.csv"), &h.adjacency.or_identity().to_csv_string())?;
    write_file(&dir.join("R.csv"), &h.closure.to_csv_string())?;
    write_file(&dir.join("S.csv"), &skeleton_full.to_csv_string())?;
    Ok(())
}

/// out.dot, "up" -> out.up.dot
fn suffixed(path: &Path, tag: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("hierarchy");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("dot");
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}

fn run_aism(args: AismArgs) -> CliResult<()> {
    let computed = compute_metrics(ingest(&args.ingest)?, &args.weights)?;
    let h = hierarchy_for(&computed.metrics, args.profile, args.k, args.dominance_eps)?;
    if let Some(dir) = &args.matrices {
        create_dir(dir)?;
        dump_matrices(dir, &h)?;
    }
    let modes = match args.mode {
        Mode::Up => vec![aism::ExtractionMode::Up],
        Mode::Down => vec![aism::ExtractionMode::Down],
        Mode::Both => vec![aism::ExtractionMode::Up, aism::ExtractionMode::Down],
    };
    match &args.dot {
        Some(path) => {
            if modes.len() == 1 {
                write_file(path, &aism::to_dot(&h, modes[0]))?;
            } else {
                write_file(&suffixed(path, "up"), &aism::to_dot(&h, aism::ExtractionMode::Up))?;
                write_file(
                    &suffixed(path, "down"),
                    &aism::to_dot(&h, aism::ExtractionMode::Down),
                )?;
            }
        }
        None => {
            for mode in modes {
                print!("{}", aism::to_dot(&h, mode));
            }
        }
    }
    Ok(())
}

fn run_sensitivity(args: SensitivityArgs) -> CliResult<()> {
    let computed = compute_metrics(ingest(&args.ingest)?, &args.weights)?;
    let sdr = fusion::sdr_means_of(&computed.metrics);
    let grid: Vec<f64> = stage("grid parsing", sensitivity::parse_grid(&args.k_grid))?;
    let trajectory = stage(
        "strategy sweep",
        sensitivity::sweep_k(&computed.metrics.alternatives, &sdr, &grid),
    )?;
    let shifts = stage(
        "rank shift",
        sensitivity::max_rank_shift(&trajectory, args.reference),
    )?;
    let csv = sensitivity::trajectory_csv(&trajectory);
    match &args.out {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    let worst = shifts.iter().copied().max().unwrap_or(0);
    eprintln!(
        "max rank shift relative to k={}: {worst}",
        fmt_fixed(args.reference)
    );
    Ok(())
}

fn run_pipeline(args: PipelineArgs) -> CliResult<()> {
    let computed = compute_metrics(ingest(&args.ingest)?, &args.weights)?;
    create_dir(&args.out)?;
    if let Some(w) = &computed.weights {
        write_file(
            &args.out.join("weights.csv"),
            &weight_report_csv(&computed.criteria, w),
        )?;
    }
    write_file(&args.out.join("metrics.csv"), &computed.metrics.to_csv_string())?;
    let sdr = fusion::sdr_means_of(&computed.metrics);
    let table = stage(
        "compromise ranking",
        fusion::compromise(&computed.metrics.alternatives, &sdr, args.k),
    )?;
    write_file(&args.out.join("ranking.csv"), &fusion::rank_report(&table))?;
    let grid: Vec<f64> = stage("grid parsing", sensitivity::parse_grid(&args.k_grid))?;
    let trajectory = stage(
        "strategy sweep",
        sensitivity::sweep_k(&computed.metrics.alternatives, &sdr, &grid),
    )?;
    stage(
        "rank shift",
        sensitivity::max_rank_shift(&trajectory, args.reference),
    )?;
    write_file(&args.out.join("sweep.csv"), &sensitivity::trajectory_csv(&trajectory))?;
    for profile in [Profile::Sixmetric, Profile::Sdr, Profile::Q] {
        let h = hierarchy_for(&computed.metrics, profile, args.k, args.dominance_eps)?;
        let dir = args.out.join("aism").join(profile.dir_name());
        create_dir(&dir)?;
        dump_matrices(&dir, &h)?;
        write_file(&dir.join("up.dot"), &aism::to_dot(&h, aism::ExtractionMode::Up))?;
        write_file(&dir.join("down.dot"), &aism::to_dot(&h, aism::ExtractionMode::Down))?;
    }
    Ok(())
}
