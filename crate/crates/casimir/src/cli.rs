//! Command-line front end: single evaluations, parameter sweeps, Third-Law
//! diagnostics, calibration tables, and CSV/JSON emission with run metadata.
//!
//! Output contract: CSV starts with `#`-prefixed metadata lines echoing the
//! fully resolved configuration, then a header row with units in brackets,
//! then data rows at full (17 significant digit) precision, LF line endings.
//! JSON mirrors the same content as a metadata envelope plus one object per
//! row. Exit codes: 0 success, 2 validation error, 3 numerical failure.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constants::CONSTANTS_VERSION;
use crate::electrostatics::{
    effective_screening_length, field_energy_per_area, ideal_field_energy_per_area,
    pfa_sphere_plate_force, screening_ratio, separation_correction_factor, surface_potential,
    CalibrationScenario,
};
use crate::error::Error;
use crate::lifshitz::ScreeningSpec;
use crate::materials::{validity_max_frequency, CarrierKinetics, DielectricModel};
use crate::quad::QuadratureSpec;
use crate::thermal::{
    entropy, entropy_n_zero, free_energy, free_energy_t0, matsubara_frequency, pressure,
    pressure_t0, sum_vs_integral_gap, GapConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Parse a `start:stop:count[log]` range specification into an inclusive,
/// ordered list of values. `log` requests logarithmic spacing.
pub fn parse_range(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!(
            "range `{spec}` must have the form start:stop:count[log]"
        ));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| format!("range token `{}` is not a number", parts[0]))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| format!("range token `{}` is not a number", parts[1]))?;
    let (count_token, log) = match parts[2].strip_suffix("log") {
        Some(c) => (c, true),
        None => (parts[2], false),
    };
    let count: usize = count_token
        .parse()
        .map_err(|_| format!("range token `{}` is not a count", count_token))?;
    if count < 2 {
        return Err(format!("range count `{count}` must be at least 2"));
    }
    if log && (start <= 0.0 || stop <= 0.0) {
        return Err(format!(
            "log spacing needs positive endpoints, got {start} and {stop}"
        ));
    }
    let n = count - 1;
    let values = (0..count)
        .map(|i| {
            if i == 0 {
                start
            } else if i == n {
                stop
            } else if log {
                (start.ln() + (stop.ln() - start.ln()) * i as f64 / n as f64).exp()
            } else {
                start + (stop - start) * i as f64 / n as f64
            }
        })
        .collect();
    Ok(values)
}

/// A scalar or a range, as accepted by `--d` and `--T`.
fn parse_scalar_or_range(spec: &str) -> Result<Vec<f64>, String> {
    if let Ok(v) = spec.parse::<f64>() {
        return Ok(vec![v]);
    }
    parse_range(spec)
}

#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    version,
    about = "Finite-temperature Casimir free energy and pressure with Debye-screened \
             material response, and screened electrostatic calibration tables"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free energy per unit area with its Matsubara breakdown at one (d, T)
    Energy(ThermalArgs),
    /// Casimir pressure at one (d, T); negative values are attractive
    Pressure(ThermalArgs),
    /// Sweep separation or temperature, optionally ratioed against a
    /// perfect conductor at the same (d, T)
    Sweep(SweepArgs),
    /// Entropy per unit area (full sum and isolated n = 0 term)
    Entropy(EntropyArgs),
    /// Relative deviation of the Matsubara sum from the T = 0 integral
    Gapcheck(GapcheckArgs),
    /// Screened electrostatic calibration energy per unit area
    CalibEnergy(CalibArgs),
    /// Sphere-plate calibration force via the proximity force approximation
    CalibForce(CalibForceArgs),
    /// Separation-correction factor table over y = eps_s*d/lambda
    Fig1(Fig1Args),
    /// Effective screening length table over the dimensionless potential
    Fig2(Fig2Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// Ideal mirror
    Perfect,
    /// Drude conductivity metal
    Drude,
    /// Frequency-independent dielectric
    Dielectric,
    /// Intrinsic semiconductor
    Semiconductor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScreeningKind {
    /// No Debye term in the material wavevector
    Off,
    /// Fixed screening length from --lambda
    Fixed,
    /// Screening length from eps_s and carrier density at the run temperature
    Computed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Material model of both half-spaces
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Drude conductivity sigma (S/m); required for --model drude
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Relative permittivity eps_s; required for dielectric/semiconductor
    #[arg(long)]
    pub eps_s: Option<f64>,
    /// Total carrier density c_t (1/m^3); required for semiconductor
    #[arg(long)]
    pub carrier_density: Option<f64>,
    /// Carrier mobility (m^2/(V s)); defaults to the germanium scale 0.2
    #[arg(long)]
    pub mobility: Option<f64>,
}

impl ModelArgs {
    fn build(&self) -> Result<DielectricModel, String> {
        match self.model {
            ModelKind::Perfect => Ok(DielectricModel::PerfectConductor),
            ModelKind::Drude => {
                let sigma = self.sigma.ok_or("--model drude requires --sigma")?;
                DielectricModel::drude(sigma).map_err(|e| e.to_string())
            }
            ModelKind::Dielectric => {
                let eps = self.eps_s.ok_or("--model dielectric requires --eps-s")?;
                DielectricModel::static_dielectric(eps).map_err(|e| e.to_string())
            }
            ModelKind::Semiconductor => {
                let eps = self.eps_s.ok_or("--model semiconductor requires --eps-s")?;
                let ct = self
                    .carrier_density
                    .ok_or("--model semiconductor requires --carrier-density")?;
                match self.mobility {
                    Some(mu) => DielectricModel::intrinsic_semiconductor_with_mobility(eps, ct, mu),
                    None => DielectricModel::intrinsic_semiconductor(eps, ct),
                }
                .map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct ScreeningArgs {
    /// Debye screening of the material wavevector
    #[arg(long, value_enum, default_value = "off")]
    pub screening: ScreeningKind,
    /// Fixed screening length lambda (m); required for --screening fixed
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Whether the Debye term also enters the TM wavevector
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub apply_to_tm: bool,
    /// Thermal carrier velocity v_c (m/s); enables validity warnings against
    /// the v_c/lambda bound
    #[arg(long)]
    pub vc: Option<f64>,
}

impl ScreeningArgs {
    fn build(&self, model_args: &ModelArgs) -> Result<ScreeningSpec, String> {
        match self.screening {
            ScreeningKind::Off => Ok(ScreeningSpec::off()),
            ScreeningKind::Fixed => {
                let lambda = self.lambda.ok_or("--screening fixed requires --lambda")?;
                ScreeningSpec::debye_fixed(lambda, self.apply_to_tm).map_err(|e| e.to_string())
            }
            ScreeningKind::Computed => {
                let eps = model_args
                    .eps_s
                    .ok_or("--screening computed requires --eps-s")?;
                let ct = model_args
                    .carrier_density
                    .ok_or("--screening computed requires --carrier-density")?;
                ScreeningSpec::debye_computed(eps, ct, self.apply_to_tm).map_err(|e| e.to_string())
            }
        }
    }

    fn kinetics(&self) -> Result<Option<CarrierKinetics>, String> {
        self.vc
            .map(CarrierKinetics::new)
            .transpose()
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Relative truncation tolerance for the Matsubara sum
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Matsubara index cap
    #[arg(long, default_value_t = 100_000)]
    pub n_max: usize,
    /// Relative tolerance for the q and omega quadratures
    #[arg(long, default_value_t = 1e-9)]
    pub quad_tol: f64,
    /// Subdivision budget per adaptive quadrature
    #[arg(long, default_value_t = 400)]
    pub quad_max_subdivisions: usize,
}

impl ToleranceArgs {
    fn quad(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.quad_tol,
            abs_tol: 1e-300,
            max_subdivisions: self.quad_max_subdivisions,
        }
    }

    fn gap(&self, separation: f64, temperature: f64) -> Result<GapConfig, String> {
        let gap = GapConfig {
            separation,
            temperature,
            sum_rel_tol: self.rel_tol,
            n_max: self.n_max,
            quad: self.quad(),
            kinetics: None,
        };
        gap.validate().map_err(|e| e.to_string())?;
        Ok(gap)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output path; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ThermalArgs {
    /// Plate separation d (m)
    #[arg(long)]
    pub d: f64,
    /// Temperature (K)
    #[arg(long = "T", visible_alias = "temperature")]
    pub temperature: f64,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub screening: ScreeningArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Separation (m): a number, or a range start:stop:count with optional log suffix
    #[arg(long)]
    pub d: String,
    /// Temperature (K): a number, or a range start:stop:count with optional log suffix
    #[arg(long = "T")]
    pub temperature: String,
    /// Also compute a perfect-conductor reference at each point and emit
    /// ratio columns
    #[arg(long, value_parser = ["perfect"])]
    pub ratio_vs: Option<String>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub screening: ScreeningArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// Plate separation d (m)
    #[arg(long)]
    pub d: f64,
    /// Temperature (K): a number, or a range start:stop:count with optional log suffix
    #[arg(long = "T")]
    pub temperature: String,
    /// Finite-difference step as a fraction of T
    #[arg(long, default_value_t = 1e-3)]
    pub dt_frac: f64,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub screening: ScreeningArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GapcheckArgs {
    /// Plate separation d (m)
    #[arg(long)]
    pub d: f64,
    /// Temperatures (K): a number, or a range start:stop:count with optional log suffix
    #[arg(long = "T")]
    pub temperature: String,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub screening: ScreeningArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CalibArgs {
    /// Total plate-to-plate voltage (V): scalar or range
    #[arg(long = "V", allow_hyphen_values = true)]
    pub voltage: String,
    /// Plate separation d (m)
    #[arg(long)]
    pub d: f64,
    /// Plate relative permittivity
    #[arg(long)]
    pub eps_s: f64,
    /// Debye screening length (m)
    #[arg(long)]
    pub lambda: f64,
    /// Temperature (K)
    #[arg(long = "T", conflicts_with = "kt_mev")]
    pub temperature: Option<f64>,
    /// Thermal energy k_B*T expressed in meV (convenience alternative to --T)
    #[arg(long = "kT-meV")]
    pub kt_mev: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl CalibArgs {
    fn temperature(&self) -> Result<f64, String> {
        match (self.temperature, self.kt_mev) {
            (Some(t), None) => Ok(t),
            (None, Some(mev)) => {
                Ok(mev * 1e-3 * crate::constants::ELEMENTARY_CHARGE / crate::constants::BOLTZMANN)
            }
            (None, None) => Err("provide either --T or --kT-meV".into()),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        }
    }
}

#[derive(Debug, Args)]
pub struct CalibForceArgs {
    #[command(flatten)]
    pub calib: CalibArgs,
    /// Sphere radius (m); the proximity approximation wants R >> d
    #[arg(long = "R")]
    pub radius: f64,
}

#[derive(Debug, Args)]
pub struct Fig1Args {
    /// y range start:stop:count with optional log suffix
    #[arg(long)]
    pub y: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    /// Phi range start:stop:count with optional log suffix; Phi may be negative
    #[arg(long, allow_hyphen_values = true)]
    pub phi: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// One table cell; the formatting rules per type keep CSV bodies
/// byte-identical across runs.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Flag(bool),
    Text(String),
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            // 17 significant digits: round-trip exact for f64
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Flag(v) => if *v { "1" } else { "0" }.to_string(),
            Cell::Text(v) => v.clone(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Float(v) => serde_json::json!(v),
            Cell::Int(v) => serde_json::json!(v),
            Cell::Flag(v) => serde_json::json!(v),
            Cell::Text(v) => serde_json::json!(v),
        }
    }
}

/// Fixed-schema output row.
pub type ResultRow = Vec<Cell>;

/// A complete run result: resolved-configuration metadata, a column schema
/// with units, and the data rows.
#[derive(Debug, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<ResultRow>,
}

impl Table {
    fn meta(&mut self, key: &str, value: impl std::fmt::Display) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    fn meta_float(&mut self, key: &str, value: f64) {
        self.metadata
            .push((key.to_string(), format!("{value:.16e}")));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let metadata: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::json!(v)))
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row.iter())
                    .map(|(c, cell)| (c.to_string(), cell.to_json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({ "metadata": metadata, "rows": rows });
        let mut body = serde_json::to_string_pretty(&doc).expect("serializable");
        body.push('\n');
        body
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

enum CliError {
    Validation(String),
    Numerical(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numerical(e)
    }
}

/// Run a parsed configuration, writing the artifact to the configured
/// destination. Returns the process exit code.
pub fn run(config: RunConfig) -> i32 {
    let (output, format) = output_settings(&config.command);
    match execute(&config.command) {
        Ok(table) => match write_output(&output, table.render(format)) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                EXIT_VALIDATION
            }
        },
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            EXIT_VALIDATION
        }
        Err(CliError::Numerical(e)) => {
            let mut table = Table::default();
            table.meta("error_kind", error_kind(&e));
            table.meta("error", &e);
            let _ = write_output(&output, table.render(format));
            eprintln!("error: {e}");
            EXIT_NUMERICAL
        }
    }
}

/// Parse the given argument list and run it. The entry point used by the
/// binary and by integration tests.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(config),
        Err(e) => {
            // clap prints help/version through the error path with status 0
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let _ = e.print();
            code
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain { .. } => "domain",
        Error::Contract(_) => "contract",
        Error::QuadratureNonConvergence { .. } => "quadrature-non-convergence",
        Error::SumNonConvergence { .. } => "sum-non-convergence",
        Error::FixedPointNonConvergence { .. } => "fixed-point-non-convergence",
    }
}

fn output_settings(command: &Command) -> (Option<PathBuf>, OutputFormat) {
    let o = match command {
        Command::Energy(a) | Command::Pressure(a) => &a.output,
        Command::Sweep(a) => &a.output,
        Command::Entropy(a) => &a.output,
        Command::Gapcheck(a) => &a.output,
        Command::CalibEnergy(a) => &a.output,
        Command::CalibForce(a) => &a.calib.output,
        Command::Fig1(a) => &a.output,
        Command::Fig2(a) => &a.output,
    };
    (o.output.clone(), o.format)
}

fn write_output(path: &Option<PathBuf>, body: String) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, body),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
        }
    }
}

fn execute(command: &Command) -> Result<Table, CliError> {
    match command {
        Command::Energy(args) => energy_command(args),
        Command::Pressure(args) => pressure_command(args),
        Command::Sweep(args) => sweep_command(args),
        Command::Entropy(args) => entropy_command(args),
        Command::Gapcheck(args) => gapcheck_command(args),
        Command::CalibEnergy(args) => calib_energy_command(args),
        Command::CalibForce(args) => calib_force_command(args),
        Command::Fig1(args) => fig1_command(args),
        Command::Fig2(args) => fig2_command(args),
    }
}

fn base_metadata(table: &mut Table, command: &str) {
    table.meta("command", command);
    table.meta("constants", CONSTANTS_VERSION);
    table.meta(
        "sign_convention",
        "negative pressure and energy = attractive",
    );
}

fn model_metadata(table: &mut Table, model: &DielectricModel) {
    table.meta("model", model.label());
    match *model {
        DielectricModel::DrudeConductivity { sigma } => table.meta_float("sigma[S/m]", sigma),
        DielectricModel::StaticDielectric { eps_s } => table.meta_float("eps_s[1]", eps_s),
        DielectricModel::IntrinsicSemiconductor {
            eps_s,
            carrier_density,
            mobility,
        } => {
            table.meta_float("eps_s[1]", eps_s);
            table.meta_float("carrier_density[1/m^3]", carrier_density);
            table.meta_float("mobility[m^2/(V s)]", mobility);
        }
        DielectricModel::PerfectConductor => {}
    }
}

fn screening_metadata(
    table: &mut Table,
    spec: &ScreeningSpec,
    kinetics: Option<CarrierKinetics>,
    temperature: Option<f64>,
) {
    table.meta("screening", spec.label());
    if let Ok(resolved) = spec.resolve(temperature) {
        if let Some(lambda) = resolved.lambda {
            table.meta_float("lambda[m]", lambda);
            table.meta("apply_to_tm", resolved.apply_to_tm);
            if let Some(k) = kinetics {
                table.meta_float("vc[m/s]", k.thermal_velocity);
                if let Ok(bound) = validity_max_frequency(k, lambda) {
                    table.meta_float("validity_max_frequency[rad/s]", bound);
                }
            }
        }
    }
}

fn tolerance_metadata(table: &mut Table, t: &ToleranceArgs) {
    table.meta_float("rel_tol", t.rel_tol);
    table.meta("n_max", t.n_max);
    table.meta_float("quad_tol", t.quad_tol);
    table.meta("quad_max_subdivisions", t.quad_max_subdivisions);
}

fn energy_command(args: &ThermalArgs) -> Result<Table, CliError> {
    let model = args.model.build().map_err(CliError::Validation)?;
    let screening = args
        .screening
        .build(&args.model)
        .map_err(CliError::Validation)?;
    let kinetics = args.screening.kinetics().map_err(CliError::Validation)?;
    let mut gap = args
        .tolerances
        .gap(args.d, args.temperature)
        .map_err(CliError::Validation)?;
    gap.kinetics = kinetics;

    let mut table = Table::default();
    base_metadata(&mut table, "energy");
    model_metadata(&mut table, &model);
    screening_metadata(&mut table, &screening, kinetics, Some(args.temperature));
    tolerance_metadata(&mut table, &args.tolerances);
    table.columns = vec![
        "d[m]",
        "T[K]",
        "free_energy[J/m^2]",
        "n_zero_te[J/m^2]",
        "n_zero_tm[J/m^2]",
        "n_used",
        "truncation_estimate[J/m^2]",
        "warn_validity",
    ];

    if args.temperature == 0.0 {
        // zero kelvin is served by the integral form; the Matsubara columns
        // have no content there
        table.meta("temperature_mode", "zero-kelvin-integral");
        let e = free_energy_t0(args.d, &model, &screening, &args.tolerances.quad())?;
        table.rows.push(vec![
            Cell::Float(args.d),
            Cell::Float(0.0),
            Cell::Float(e),
            Cell::Float(0.0),
            Cell::Float(0.0),
            Cell::Int(0),
            Cell::Float(0.0),
            Cell::Flag(false),
        ]);
        return Ok(table);
    }

    let b = free_energy(&gap, &model, &screening)?;
    table.rows.push(vec![
        Cell::Float(args.d),
        Cell::Float(args.temperature),
        Cell::Float(b.total),
        Cell::Float(b.n_zero_te),
        Cell::Float(b.n_zero_tm),
        Cell::Int(b.n_used as u64),
        Cell::Float(b.truncation_estimate),
        Cell::Flag(!b.validity_warnings.is_empty()),
    ]);
    for w in &b.validity_warnings {
        table.meta("warning", w);
    }
    Ok(table)
}

fn pressure_command(args: &ThermalArgs) -> Result<Table, CliError> {
    let model = args.model.build().map_err(CliError::Validation)?;
    let screening = args
        .screening
        .build(&args.model)
        .map_err(CliError::Validation)?;
    let kinetics = args.screening.kinetics().map_err(CliError::Validation)?;
    let mut gap = args
        .tolerances
        .gap(args.d, args.temperature)
        .map_err(CliError::Validation)?;
    gap.kinetics = kinetics;

    let mut table = Table::default();
    base_metadata(&mut table, "pressure");
    model_metadata(&mut table, &model);
    screening_metadata(&mut table, &screening, kinetics, Some(args.temperature));
    tolerance_metadata(&mut table, &args.tolerances);
    table.columns = vec!["d[m]", "T[K]", "pressure[Pa]", "warn_validity"];

    if args.temperature == 0.0 {
        table.meta("temperature_mode", "zero-kelvin-integral");
        let p = pressure_t0(args.d, &model, &screening, &args.tolerances.quad())?;
        table.rows.push(vec![
            Cell::Float(args.d),
            Cell::Float(0.0),
            Cell::Float(p),
            Cell::Flag(false),
        ]);
        return Ok(table);
    }

    let p = pressure(&gap, &model, &screening)?;
    let warn = validity_flag(&gap, &screening, kinetics)?;
    table.rows.push(vec![
        Cell::Float(args.d),
        Cell::Float(args.temperature),
        Cell::Float(p),
        Cell::Flag(warn),
    ]);
    Ok(table)
}

/// Whether Matsubara frequencies the sum draws on exceed the v_c/lambda
/// bound; mirrors the warning free_energy attaches. The sum truncates once
/// 2ω_n d/c reaches the integration window, so the highest contributing
/// frequency is about max(ω_1, 22.5·c/d).
fn validity_flag(
    gap: &GapConfig,
    screening: &ScreeningSpec,
    kinetics: Option<CarrierKinetics>,
) -> Result<bool, CliError> {
    let resolved = screening.resolve(Some(gap.temperature))?;
    if let (Some(k), Some(lambda)) = (kinetics, resolved.lambda) {
        let bound = validity_max_frequency(k, lambda)?;
        let first = matsubara_frequency(1, gap.temperature)?;
        let decay_cap = 22.5 * crate::constants::LIGHT_SPEED / gap.separation;
        return Ok(first.max(decay_cap) > bound);
    }
    Ok(false)
}

fn sweep_command(args: &SweepArgs) -> Result<Table, CliError> {
    let model = args.model.build().map_err(CliError::Validation)?;
    let screening = args
        .screening
        .build(&args.model)
        .map_err(CliError::Validation)?;
    let kinetics = args.screening.kinetics().map_err(CliError::Validation)?;
    let d_values = parse_scalar_or_range(&args.d).map_err(CliError::Validation)?;
    let t_values = parse_scalar_or_range(&args.temperature).map_err(CliError::Validation)?;
    if d_values.len() > 1 && t_values.len() > 1 {
        return Err(CliError::Validation(
            "sweep varies one abscissa: give a range for --d or --T, not both".into(),
        ));
    }
    let reference = args.ratio_vs.is_some();

    let mut table = Table::default();
    base_metadata(&mut table, "sweep");
    model_metadata(&mut table, &model);
    screening_metadata(&mut table, &screening, kinetics, Some(t_values[0]));
    tolerance_metadata(&mut table, &args.tolerances);
    table.meta("d", &args.d);
    table.meta("T", &args.temperature);
    table.meta("ratio_vs", args.ratio_vs.as_deref().unwrap_or("none"));
    table.columns = vec![
        "d[m]",
        "T[K]",
        "free_energy[J/m^2]",
        "pressure[Pa]",
        "n_zero_te[J/m^2]",
        "n_zero_tm[J/m^2]",
        "n_used",
        "warn_validity",
    ];
    if reference {
        table.columns.extend([
            "ref_free_energy[J/m^2]",
            "ref_pressure[Pa]",
            "energy_ratio",
            "pressure_ratio",
        ]);
    }

    for &d in &d_values {
        for &t in &t_values {
            let mut gap = args.tolerances.gap(d, t).map_err(CliError::Validation)?;
            gap.kinetics = kinetics;
            let b = free_energy(&gap, &model, &screening)?;
            let p = pressure(&gap, &model, &screening)?;
            let mut row = vec![
                Cell::Float(d),
                Cell::Float(t),
                Cell::Float(b.total),
                Cell::Float(p),
                Cell::Float(b.n_zero_te),
                Cell::Float(b.n_zero_tm),
                Cell::Int(b.n_used as u64),
                Cell::Flag(!b.validity_warnings.is_empty()),
            ];
            if reference {
                let ref_gap = args.tolerances.gap(d, t).map_err(CliError::Validation)?;
                let pc = DielectricModel::PerfectConductor;
                let off = ScreeningSpec::off();
                let ref_b = free_energy(&ref_gap, &pc, &off)?;
                let ref_p = pressure(&ref_gap, &pc, &off)?;
                row.extend([
                    Cell::Float(ref_b.total),
                    Cell::Float(ref_p),
                    Cell::Float(b.total / ref_b.total),
                    Cell::Float(p / ref_p),
                ]);
            }
            table.rows.push(row);
        }
    }
    Ok(table)
}

fn entropy_command(args: &EntropyArgs) -> Result<Table, CliError> {
    let model = args.model.build().map_err(CliError::Validation)?;
    let screening = args
        .screening
        .build(&args.model)
        .map_err(CliError::Validation)?;
    let t_values = parse_scalar_or_range(&args.temperature).map_err(CliError::Validation)?;
    if !(args.dt_frac > 0.0 && args.dt_frac < 1.0) {
        return Err(CliError::Validation(format!(
            "--dt-frac must lie in (0, 1), got {}",
            args.dt_frac
        )));
    }

    let mut table = Table::default();
    base_metadata(&mut table, "entropy");
    model_metadata(&mut table, &model);
    screening_metadata(&mut table, &screening, None, Some(t_values[0]));
    tolerance_metadata(&mut table, &args.tolerances);
    table.meta_float("dt_frac", args.dt_frac);
    table.meta("entropy_sign", "S = -dF/dT");
    table.columns = vec![
        "d[m]",
        "T[K]",
        "entropy[J/(K m^2)]",
        "entropy_n_zero[J/(K m^2)]",
    ];

    for &t in &t_values {
        let gap = args
            .tolerances
            .gap(args.d, t)
            .map_err(CliError::Validation)?;
        let dt = t * args.dt_frac;
        let s = entropy(&gap, &model, &screening, dt)?;
        let s0 = entropy_n_zero(&gap, &model, &screening, dt)?;
        table.rows.push(vec![
            Cell::Float(args.d),
            Cell::Float(t),
            Cell::Float(s),
            Cell::Float(s0),
        ]);
    }
    Ok(table)
}

fn gapcheck_command(args: &GapcheckArgs) -> Result<Table, CliError> {
    let model = args.model.build().map_err(CliError::Validation)?;
    let screening = args
        .screening
        .build(&args.model)
        .map_err(CliError::Validation)?;
    let t_values = parse_scalar_or_range(&args.temperature).map_err(CliError::Validation)?;
    let base = args
        .tolerances
        .gap(args.d, t_values[0])
        .map_err(CliError::Validation)?;

    let mut table = Table::default();
    base_metadata(&mut table, "gapcheck");
    model_metadata(&mut table, &model);
    screening_metadata(&mut table, &screening, None, Some(t_values[0]));
    tolerance_metadata(&mut table, &args.tolerances);
    table.columns = vec!["T[K]", "deviation"];

    let report = sum_vs_integral_gap(&base, &model, &screening, &t_values)?;
    table.meta_float("reference_t0[J/m^2]", report.reference_t0);
    table.meta("degenerate", report.degenerate);
    for (t, dev) in report.rows {
        table.rows.push(vec![Cell::Float(t), Cell::Float(dev)]);
    }
    Ok(table)
}

fn calibration_scenario(args: &CalibArgs, voltage: f64) -> Result<CalibrationScenario, CliError> {
    let t = args.temperature().map_err(CliError::Validation)?;
    CalibrationScenario::new(voltage, args.d, args.eps_s, args.lambda, t)
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn calib_metadata(table: &mut Table, args: &CalibArgs) -> Result<(), CliError> {
    let t = args.temperature().map_err(CliError::Validation)?;
    table.meta_float("d[m]", args.d);
    table.meta_float("eps_s[1]", args.eps_s);
    table.meta_float("lambda[m]", args.lambda);
    table.meta_float("T[K]", t);
    table.meta_float("thermal_voltage[V]", crate::constants::thermal_voltage(t));
    Ok(())
}

fn calib_row(scenario: &CalibrationScenario) -> Result<Vec<Cell>, CliError> {
    let vs = surface_potential(scenario)?;
    let energy = field_energy_per_area(scenario)?;
    let ideal = ideal_field_energy_per_area(scenario)?;
    let factor = separation_correction_factor(scenario.y())?;
    let eff = effective_screening_length(scenario)?;
    Ok(vec![
        Cell::Float(scenario.applied_voltage),
        Cell::Float(scenario.y()),
        Cell::Float(vs),
        Cell::Float(energy),
        Cell::Float(ideal),
        Cell::Float(factor),
        Cell::Float(eff.lambda_prime),
        Cell::Float(eff.phi),
    ])
}

fn calib_energy_command(args: &CalibArgs) -> Result<Table, CliError> {
    let voltages = parse_scalar_or_range(&args.voltage).map_err(CliError::Validation)?;
    let mut table = Table::default();
    base_metadata(&mut table, "calib-energy");
    calib_metadata(&mut table, args)?;
    table.columns = vec![
        "V[V]",
        "y",
        "surface_potential[V]",
        "energy_per_area[J/m^2]",
        "ideal_energy_per_area[J/m^2]",
        "correction_factor",
        "lambda_prime[m]",
        "phi",
    ];
    for &v in &voltages {
        let scenario = calibration_scenario(args, v)?;
        table.rows.push(calib_row(&scenario)?);
    }
    Ok(table)
}

fn calib_force_command(args: &CalibForceArgs) -> Result<Table, CliError> {
    let voltages = parse_scalar_or_range(&args.calib.voltage).map_err(CliError::Validation)?;
    let mut table = Table::default();
    base_metadata(&mut table, "calib-force");
    calib_metadata(&mut table, &args.calib)?;
    table.meta_float("radius[m]", args.radius);
    table.meta("force_sign", "positive = attractive");
    table.columns = vec![
        "V[V]",
        "y",
        "force[N]",
        "ideal_force[N]",
        "correction_factor",
        "warn_radius",
    ];
    for &v in &voltages {
        let scenario = calibration_scenario(&args.calib, v)?;
        let f = pfa_sphere_plate_force(&scenario, args.radius)?;
        let ideal =
            2.0 * std::f64::consts::PI * args.radius * ideal_field_energy_per_area(&scenario)?;
        table.rows.push(vec![
            Cell::Float(v),
            Cell::Float(scenario.y()),
            Cell::Float(f.force),
            Cell::Float(ideal),
            Cell::Float(separation_correction_factor(scenario.y())?),
            Cell::Flag(f.radius_warning),
        ]);
    }
    Ok(table)
}

fn fig1_command(args: &Fig1Args) -> Result<Table, CliError> {
    let ys = parse_range(&args.y).map_err(CliError::Validation)?;
    let mut table = Table::default();
    base_metadata(&mut table, "fig1");
    table.meta("y", &args.y);
    table.columns = vec!["y", "separation_correction_factor"];
    for &y in &ys {
        table.rows.push(vec![
            Cell::Float(y),
            Cell::Float(separation_correction_factor(y)?),
        ]);
    }
    Ok(table)
}

fn fig2_command(args: &Fig2Args) -> Result<Table, CliError> {
    let phis = parse_range(&args.phi).map_err(CliError::Validation)?;
    let mut table = Table::default();
    base_metadata(&mut table, "fig2");
    table.meta("phi", &args.phi);
    table.columns = vec!["phi", "lambda_ratio"];
    for &phi in &phis {
        table
            .rows
            .push(vec![Cell::Float(phi), Cell::Float(screening_ratio(phi))]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parse_range_linear() {
        assert_eq!(parse_range("1:3:3").unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn parse_range_log() {
        let v = parse_range("1:100:3log").unwrap();
        assert_eq!(v[0], 1.0);
        assert_relative_eq!(v[1], 10.0, max_relative = 1e-14);
        assert_eq!(v[2], 100.0);
    }

    #[test]
    fn parse_range_rejects_small_count() {
        let err = parse_range("5:5:1").unwrap_err();
        assert!(err.contains("at least 2"), "got: {err}");
    }

    #[test]
    fn parse_range_names_bad_token() {
        let err = parse_range("a:5:3").unwrap_err();
        assert!(err.contains("`a`"), "got: {err}");
        assert!(parse_range("1:2").is_err());
        assert!(parse_range("-1:10:4log").is_err());
    }

    #[test]
    fn scalar_or_range() {
        assert_eq!(parse_scalar_or_range("2.5").unwrap(), vec![2.5]);
        assert_eq!(parse_scalar_or_range("1:2:2").unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn csv_formatting_full_precision() {
        let mut t = Table::default();
        t.meta("command", "test");
        t.columns = vec!["a", "b"];
        t.rows.push(vec![Cell::Float(1.0 / 3.0), Cell::Flag(true)]);
        let csv = t.to_csv();
        assert!(csv.starts_with("# command = test\n"));
        assert!(csv.contains("3.3333333333333331e-1"));
        assert!(csv.ends_with(",1\n"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_contains_metadata_envelope() {
        let mut t = Table::default();
        t.meta("command", "test");
        t.columns = vec!["a"];
        t.rows.push(vec![Cell::Int(7)]);
        let parsed: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(parsed["metadata"]["command"], "test");
        assert_eq!(parsed["rows"][0]["a"], 7);
    }
}
