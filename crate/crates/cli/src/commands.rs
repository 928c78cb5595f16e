//! The `run`, `compare` and `converge` subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use weno_core::diagnostics::{
    convergence_rows, format_csv, format_table, l1_error, linf_error, symmetry_error,
    total_conserved, ConvergenceRow, Mirror,
};
use weno_core::mesh::Grid;
use weno_core::problems::{ProblemId, ProblemSpec, Reference};
use weno_core::run::{reference_solution, simulate, RunOutput, Snapshot};
use weno_core::stencil::Scheme;

use crate::config::{config_hash, RunConfig};
use crate::output::{
    ensure_dir, field_table, snapshot_columns, write_field, write_json, write_table, write_text,
    FieldMeta, SCHEMA_VERSION,
};
use crate::CliError;

/// Error of the primary variable (scalar or density) against a reference.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub reference: String,
    pub l1: f64,
    pub linf: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub mirror: String,
    pub error: f64,
}

/// Summary of one solve. Wall time is reported on the console only so that
/// written files stay bit-identical between repeated runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub problem: String,
    pub scheme: String,
    pub n: usize,
    pub ny: Option<usize>,
    pub t: f64,
    pub steps: usize,
    pub config_hash: String,
    pub errors: Option<ErrorReport>,
    pub symmetry: Option<SymmetryReport>,
    pub totals_initial: Vec<f64>,
    pub totals_final: Vec<f64>,
    pub files: Vec<String>,
    #[serde(skip)]
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} {} n={}{} t={} steps={} wall={:.2}s",
            self.problem,
            self.scheme,
            self.n,
            self.ny.map_or(String::new(), |ny| format!("x{ny}")),
            self.t,
            self.steps,
            self.wall_time_s
        );
        if let Some(e) = &self.errors {
            s += &format!(" L1={:e} Linf={:e} ({})", e.l1, e.linf, e.reference);
        }
        if let Some(y) = &self.symmetry {
            s += &format!(" symmetry[{}]={:e}", y.mirror, y.error);
        }
        s
    }
}

/// The mirror under which a 2D problem's exact solution is invariant.
pub fn symmetry_mirror(id: ProblemId) -> Option<Mirror> {
    match id {
        ProblemId::Rt => Some(Mirror::X),
        ProblemId::Implosion | ProblemId::Riemann2d => Some(Mirror::Diagonal),
        _ => None,
    }
}

fn mirror_name(m: Mirror) -> &'static str {
    match m {
        Mirror::X => "x",
        Mirror::Y => "y",
        Mirror::Diagonal => "diagonal",
    }
}

fn reference_name(r: Reference) -> Option<String> {
    match r {
        Reference::ExactTranslation | Reference::ExactRiemann { .. } => Some("exact".into()),
        Reference::FineGridJs { intervals } => Some(format!("js-{intervals}")),
        Reference::None => None,
    }
}

fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Solves one scheme at `n` intervals and evaluates errors against
/// `reference` (computed on demand when `None` and the problem has one).
pub fn execute(
    cfg: &RunConfig,
    scheme: Scheme,
    n: usize,
    reference: Option<&Snapshot<f64>>,
) -> Result<(RunOutput<f64>, RunReport), CliError> {
    let settings = cfg.settings(scheme, n)?;
    let start = Instant::now();
    let out = simulate(&cfg.spec, &settings, |_, _, _| {})?;
    let wall_time_s = start.elapsed().as_secs_f64();
    let errors = match (reference_name(cfg.spec.reference), reference) {
        (None, _) => None,
        (Some(name), Some(r)) => Some(error_report(name, &out, r)?),
        (Some(name), None) => {
            let r = reference_solution(&cfg.spec, &out.grid, out.stats.t)?;
            Some(error_report(name, &out, &r)?)
        }
    };
    let symmetry = match symmetry_mirror(cfg.spec.id) {
        Some(m) if out.grid.is_2d() => Some(SymmetryReport {
            mirror: mirror_name(m).into(),
            error: symmetry_error(&out.state.primary(), &out.grid, m)
                .map_err(|e| CliError::Config(e.to_string()))?,
        }),
        _ => None,
    };
    let measure = out.grid.cell_measure();
    let report = RunReport {
        problem: cfg.spec.name().into(),
        scheme: scheme.name().into(),
        n,
        ny: settings.ny.filter(|_| out.grid.is_2d()),
        t: out.stats.t,
        steps: out.stats.steps,
        config_hash: config_hash(&cfg.spec, &settings),
        errors,
        symmetry,
        totals_initial: total_conserved(&out.initial.conserved(), measure),
        totals_final: total_conserved(&out.state.conserved(), measure),
        files: Vec::new(),
        wall_time_s,
    };
    Ok((out, report))
}

fn error_report(
    name: String,
    out: &RunOutput<f64>,
    reference: &Snapshot<f64>,
) -> Result<ErrorReport, CliError> {
    let (a, b) = (out.state.primary(), reference.primary());
    let shape = |e: weno_core::error::ConfigError| CliError::Config(e.to_string());
    Ok(ErrorReport {
        reference: name,
        l1: l1_error(&a, &b, out.grid.cell_measure()).map_err(shape)?,
        linf: linf_error(&a, &b).map_err(shape)?,
    })
}

fn stem(spec: &ProblemSpec, scheme: &str, grid: &Grid<f64>) -> String {
    let dims = if grid.is_2d() {
        format!("{}x{}", grid.x.intervals, grid.y.map_or(0, |y| y.intervals))
    } else {
        grid.x.intervals.to_string()
    };
    format!("{}_{scheme}_{dims}", spec.name())
}

fn file_name(p: &Path) -> String {
    p.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

fn field_meta(cfg: &RunConfig, report: &RunReport, out: &RunOutput<f64>, columns: Vec<String>) -> FieldMeta {
    FieldMeta {
        schema_version: SCHEMA_VERSION,
        problem: report.problem.clone(),
        scheme: report.scheme.clone(),
        domain_x: [cfg.spec.x.0, cfg.spec.x.1],
        domain_y: cfg.spec.y.map(|(a, b)| [a, b]),
        n: report.n,
        ny: report.ny,
        t: out.stats.t,
        steps: out.stats.steps,
        columns,
        config_hash: report.config_hash.clone(),
    }
}

fn write_run(cfg: &RunConfig, out: &RunOutput<f64>, report: &mut RunReport) -> Result<(), CliError> {
    let path = cfg.out.join(format!("{}.csv", stem(&cfg.spec, &report.scheme, &out.grid)));
    let cols = out.state.columns().iter().map(|(n, _)| n.to_string()).collect();
    let meta = field_meta(cfg, report, out, cols);
    let files = write_field(&out.state, &out.grid, &path, &meta)?;
    report.files.extend(files.iter().map(|p| file_name(p)));
    Ok(())
}

/// `run`: one scheme, one grid. Writes the field, its sidecar and a report.
pub fn run(cfg: &RunConfig) -> Result<RunReport, CliError> {
    let (scheme, n) = (cfg.schemes[0], cfg.ns[0]);
    with_threads(cfg.threads, || {
        let (out, mut report) = execute(cfg, scheme, n, None)?;
        ensure_dir(&cfg.out)?;
        write_run(cfg, &out, &mut report)?;
        let report_path: PathBuf =
            cfg.out.join(format!("{}.report.json", stem(&cfg.spec, scheme.name(), &out.grid)));
        report.files.push(file_name(&report_path));
        write_json(&report_path, &report)?;
        Ok(report)
    })?
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub problem: String,
    pub runs: Vec<RunReport>,
    pub combined: String,
}

/// `compare`: every requested scheme on the same grid, plus one combined CSV
/// with `<scheme>_<column>` columns (and `exact_<column>` when available).
pub fn compare(cfg: &RunConfig) -> Result<CompareReport, CliError> {
    let n = cfg.ns[0];
    with_threads(cfg.threads, || {
        ensure_dir(&cfg.out)?;
        let mut reference: Option<Snapshot<f64>> = None;
        let mut runs = Vec::new();
        let mut combined: Vec<(String, Vec<f64>)> = Vec::new();
        let mut grid = None;
        for &scheme in &cfg.schemes {
            let settings = cfg.settings(scheme, n)?;
            if reference.is_none() && reference_name(cfg.spec.reference).is_some() {
                let g = cfg.spec.grid::<f64>(n, settings.ny);
                reference = Some(reference_solution(&cfg.spec, &g, settings.control.t_final)?);
            }
            let (out, mut report) = execute(cfg, scheme, n, reference.as_ref())?;
            write_run(cfg, &out, &mut report)?;
            combined.extend(
                snapshot_columns(&out.state)
                    .into_iter()
                    .map(|(c, v)| (format!("{}_{c}", scheme.name()), v)),
            );
            grid = Some(out.grid);
            runs.push(report);
        }
        let grid = grid.ok_or_else(|| CliError::Config("no schemes to compare".into()))?;
        if let Some(r) = &reference {
            let label = if matches!(cfg.spec.reference, Reference::FineGridJs { .. }) {
                "reference"
            } else {
                "exact"
            };
            combined.extend(
                snapshot_columns(r)
                    .into_iter()
                    .map(|(c, v)| (format!("{label}_{c}"), v)),
            );
        }
        let (header, rows) = field_table(&grid, &combined);
        let name = format!("{}_compare.csv", stem(&cfg.spec, "all", &grid));
        write_table(&cfg.out.join(&name), &header, &rows)?;
        let report = CompareReport {
            problem: cfg.spec.name().into(),
            runs,
            combined: name,
        };
        let report_name = format!("{}_compare.report.json", stem(&cfg.spec, "all", &grid));
        write_json(&cfg.out.join(report_name), &report)?;
        Ok(report)
    })?
}

/// A convergence row in serialisable form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowReport {
    pub n: usize,
    pub l1: f64,
    pub order_l1: Option<f64>,
    pub linf: f64,
    pub order_linf: Option<f64>,
}

impl From<ConvergenceRow> for RowReport {
    fn from(r: ConvergenceRow) -> Self {
        Self {
            n: r.n,
            l1: r.l1,
            order_l1: r.order_l1,
            linf: r.linf,
            order_linf: r.order_linf,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub problem: String,
    pub scheme: String,
    pub rows: Vec<RowReport>,
    /// Grids whose run failed, with the error message.
    pub failures: Vec<(usize, String)>,
    pub table: String,
}

impl ConvergenceReport {
    pub fn row(&self, n: usize) -> Option<&RowReport> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Errors and observed orders over `ns`. A failed grid is recorded and the
/// remaining grids still run; orders are taken between successive successes.
pub fn convergence_suite(
    cfg: &RunConfig,
    scheme: Scheme,
    ns: &[usize],
) -> Result<ConvergenceReport, CliError> {
    if !matches!(
        cfg.spec.reference,
        Reference::ExactTranslation | Reference::ExactRiemann { .. }
    ) {
        return Err(CliError::Config(format!(
            "{} has no exact reference; convergence needs one",
            cfg.spec.name()
        )));
    }
    with_threads(cfg.threads, || {
        let mut errors = Vec::new();
        let mut failures = Vec::new();
        for &n in ns {
            match execute(cfg, scheme, n, None) {
                Ok((_, r)) => {
                    let e = r.errors.expect("exact reference present");
                    errors.push((n, e.l1, e.linf));
                }
                Err(e) => failures.push((n, e.to_string())),
            }
        }
        let rows = convergence_rows(&errors);
        let title = format!("{} {} (L1, Linf)", cfg.spec.name(), scheme.name());
        Ok(ConvergenceReport {
            problem: cfg.spec.name().into(),
            scheme: scheme.name().into(),
            table: format_table(&title, &rows),
            rows: rows.into_iter().map(RowReport::from).collect(),
            failures,
        })
    })?
}

/// `converge`: runs the suite and writes `.txt`, `.csv` and `.report.json`.
pub fn converge(cfg: &RunConfig) -> Result<ConvergenceReport, CliError> {
    let scheme = cfg.schemes[0];
    let report = convergence_suite(cfg, scheme, &cfg.ns)?;
    ensure_dir(&cfg.out)?;
    let base = format!("{}_{}_convergence", cfg.spec.name(), scheme.name());
    write_text(&cfg.out.join(format!("{base}.txt")), &report.table)?;
    let rows: Vec<ConvergenceRow> = report
        .rows
        .iter()
        .map(|r| ConvergenceRow {
            n: r.n,
            l1: r.l1,
            linf: r.linf,
            order_l1: r.order_l1,
            order_linf: r.order_linf,
        })
        .collect();
    write_text(&cfg.out.join(format!("{base}.csv")), &format_csv(&rows))?;
    write_json(&cfg.out.join(format!("{base}.report.json")), &report)?;
    Ok(report)
}
