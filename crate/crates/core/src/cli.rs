//! Command-line front end: argument parsing, subcommand drivers and exit
//! codes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::diagrams::{same_wirtinger, DiagramError, DiskArcPresentation, GaussCode};
use crate::ext::{ExtError, Limits, Verdict};
use crate::fixtures;
use crate::groups::GroupError;
use crate::laurent::{is_prime, LambdaMatrix};
use crate::modules::{is_symmetric_poly, InvariantReport, ModuleError, PresentedModule, DEFAULT_PRIMES};
use crate::realization::{
    classify, e2_generators, general_genus_lower_bound, natural_genus, normalized_presentation, realize,
    ribbon_genus_lower_bound, Classification, GeneralBound, RealizationInput, RealizeError,
};
use crate::words::Word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub limits: Limits,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { primes: DEFAULT_PRIMES.to_vec(), limits: Limits::default(), format: Format::Json, seed: 0 }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Bound(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => EXIT_VALIDATION,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Bound(_) => EXIT_UNKNOWN,
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ExtError> for CliError {
    fn from(e: ExtError) -> Self {
        match e {
            ExtError::Module(m) => m.into(),
            ExtError::BoundExceeded { .. } | ExtError::DegreeCap { .. } | ExtError::Overflow => CliError::Bound(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<RealizeError> for CliError {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::Module(m) => m.into(),
            RealizeError::Ext(x) => x.into(),
            RealizeError::PartitionInfeasible { requested, minimum } => {
                CliError::Infeasible(format!("partition infeasible: requested genus {requested}, minimal feasible genus {minimum}"))
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// A rendered report and its exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub body: Value,
    pub code: i32,
}

impl Outcome {
    fn new<T: Serialize>(v: &T, unknown: bool) -> Outcome {
        Outcome { body: serde_json::to_value(v).expect("reports serialize"), code: if unknown { EXIT_UNKNOWN } else { EXIT_OK } }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.body).expect("JSON values serialize") + "\n",
            Format::Text => {
                let mut out = String::new();
                flatten("", &self.body, &mut out);
                out
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{prefix}: [{}]", parts.join(", "));
        }
        other => {
            let _ = writeln!(out, "{prefix}: {}", scalar(other));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn read_module(path: &Path) -> Result<PresentedModule, CliError> {
    Ok(PresentedModule::from_json(&read_input(path)?)?)
}

fn read_code(path: &Path) -> Result<GaussCode, CliError> {
    Ok(GaussCode::parse(read_input(path)?.trim_end_matches(['\n', '\r']))?)
}

fn matrix_strings(m: &LambdaMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|p| p.to_text()).collect()).collect()
}

#[derive(Serialize)]
pub struct ModuleAnalysis {
    pub invariants: InvariantReport,
    pub symmetric_alexander: Vec<bool>,
    pub dm_order: String,
    pub dm_battery: crate::ext::FiniteBattery,
    pub e_e2: usize,
    pub classification: Classification,
}

pub fn analyze_module(m: &PresentedModule, components: Option<usize>, cfg: &RunConfig) -> Result<ModuleAnalysis, CliError> {
    let invariants = m.report(&cfg.primes);
    let symmetric_alexander = m.alexander_polynomials().iter().map(is_symmetric_poly).collect();
    let d = crate::ext::dm(m, &cfg.limits)?;
    let e = e2_generators(m, &cfg.limits)?;
    let classification = classify(m, components, None, &cfg.limits)?;
    Ok(ModuleAnalysis {
        invariants,
        symmetric_alexander,
        dm_order: d.order().to_string(),
        dm_battery: d.battery(),
        e_e2: e,
        classification,
    })
}

#[derive(Serialize)]
struct DiagramReport {
    code: String,
    components: usize,
    crossings: usize,
    wirtinger: String,
    jacobian: Vec<Vec<String>>,
    module: ModuleAnalysis,
}

pub fn cmd_analyze_diagram(code: &GaussCode, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let group = code.wirtinger();
    let m = group.alexander_module(0)?;
    let module = analyze_module(&m, Some(code.num_components()), cfg)?;
    let report = DiagramReport {
        code: code.to_text(),
        components: code.num_components(),
        crossings: code.num_crossings(),
        wirtinger: group.to_text(),
        jacobian: matrix_strings(&group.jacobian()),
        module,
    };
    Ok(Outcome::new(&report, false))
}

pub fn cmd_analyze_matrix(m: &PresentedModule, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let a = analyze_module(m, None, cfg)?;
    Ok(Outcome::new(&a, false))
}

#[derive(Serialize)]
struct RealizeReport {
    genus: usize,
    lower_bound: usize,
    output: crate::realization::RealizationOutput,
}

pub fn cmd_realize(m: &PresentedModule, partition: Option<Vec<usize>>, normalize: bool, cfg: &RunConfig) -> Result<(Outcome, crate::realization::RealizationOutput), CliError> {
    let (module, gap) = if normalize {
        let n = normalized_presentation(m, &cfg.limits)?;
        (n.module, n.gap)
    } else {
        (m.clone(), false)
    };
    let partition = match partition {
        Some(p) => p,
        None => {
            let mut p = vec![0; module.corank()? + 1];
            p[0] = natural_genus(&module)?;
            p
        }
    };
    let out = realize(&RealizationInput { module: module.clone(), partition })?;
    let lower_bound = ribbon_genus_lower_bound(&module, &cfg.limits)?;
    let report = RealizeReport { genus: out.genus(), lower_bound, output: out.clone() };
    Ok((Outcome::new(&report, gap), out))
}

#[derive(Serialize)]
struct SatohReport {
    diskarc: DiskArcPresentation,
    genera: Vec<usize>,
    consistent: bool,
}

pub fn cmd_satoh(code: &GaussCode) -> Result<Outcome, CliError> {
    let diskarc = code.satoh();
    let consistent = same_wirtinger(&diskarc.wirtinger(), &code.wirtinger());
    let report = SatohReport { genera: diskarc.genera(), diskarc, consistent };
    Ok(Outcome::new(&report, false))
}

#[derive(Serialize)]
struct BoundsReport {
    ribbon: usize,
    general: GeneralBound,
}

pub fn cmd_bounds(m: &PresentedModule, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ribbon = ribbon_genus_lower_bound(m, &cfg.limits)?;
    let general = general_genus_lower_bound(m, &cfg.limits)?;
    let unknown = general.fallback || general.witness_unknown;
    Ok(Outcome::new(&BoundsReport { ribbon, general }, unknown))
}

pub fn cmd_classify(m: &PresentedModule, r: Option<usize>, g: Option<usize>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = classify(m, r, g, &cfg.limits)?;
    let unknown = c.ribbon == Verdict::Unknown;
    Ok(Outcome::new(&c, unknown))
}

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct SelftestReport {
    seed: u64,
    checks: Vec<Check>,
    passed: usize,
    failed: usize,
}

/// Deterministic checks over the fixtures and a seeded random sample.
pub fn cmd_selftest(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut checks = Vec::new();
    let mut push = |name: String, pass: bool, detail: String| checks.push(Check { name, pass, detail });
    let lim = &cfg.limits;
    for (name, code) in fixtures::diagrams() {
        let m = code.wirtinger().alexander_module(0)?;
        let delta = m.alexander_polynomial(0).to_text();
        push(format!("satoh:{name}"), crate::diagrams::satoh_consistent(&code), format!("delta0 = {delta}"));
    }
    let example = fixtures::code(fixtures::VIRTUAL_EXAMPLE).wirtinger().alexander_module(0)?;
    let c = classify(&example, Some(2), None, lim)?;
    push(
        "virtual-example".into(),
        c.virtual_link && c.not_classical && c.dm_order.as_deref() == Some("2"),
        format!("dm order {:?}, e(E2M) {:?}", c.dm_order, c.e_e2),
    );
    for (name, m, r) in fixtures::realization_matrices() {
        let mut partition = vec![0; r];
        partition[0] = natural_genus(&m)?;
        let ok = realize(&RealizationInput { module: m.clone(), partition }).is_ok();
        push(format!("realize:{name}"), ok, String::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut fox_ok = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let len = rng.gen_range(0..=40);
        let w = Word::new((0..len).map(|_| crate::words::Letter::new(rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 })));
        if w.fox_identity_holds(n) {
            fox_ok += 1;
        }
    }
    push("fox-identity".into(), fox_ok == 100, format!("{fox_ok}/100 words"));
    let mut rt = 0;
    for _ in 0..20 {
        let m = fixtures::random_cokernel_free(&mut rng, 3, 4, 3, 3);
        let mut partition = vec![0; m.corank()? + 1];
        partition[0] = natural_genus(&m)?;
        if let Ok(out) = realize(&RealizationInput { module: m.clone(), partition }) {
            if out.group.alexander_module(0)?.relations() == &out.b_prime {
                rt += 1;
            }
        }
    }
    push("random-round-trip".into(), rt == 20, format!("{rt}/20 matrices"));
    let mut sat = 0;
    for _ in 0..20 {
        let (n, r) = (rng.gen_range(0..=6), rng.gen_range(1..=3));
        let code = GaussCode::random(&mut rng, n, r);
        if crate::diagrams::satoh_consistent(&code) {
            sat += 1;
        }
    }
    push("random-satoh".into(), sat == 20, format!("{sat}/20 codes"));
    let m2 = fixtures::separating_family(2, 1);
    let gb = general_genus_lower_bound(&m2, lim)?;
    push("separating-family".into(), ribbon_genus_lower_bound(&m2, lim)? == 2 && gb.bound == 1, format!("general {}", gb.bound));
    let failed = checks.iter().filter(|c| !c.pass).count();
    let report = SelftestReport { seed: cfg.seed, passed: checks.len() - failed, failed, checks };
    let mut o = Outcome::new(&report, false);
    if failed > 0 {
        o.code = 1;
    }
    Ok(o)
}

#[derive(Parser, Debug)]
#[command(name = "alexmod", version, about = "Alexander modules of virtual links and ribbon surface-links")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Comma-separated primes for the F_p batteries.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = DEFAULT_PRIMES.to_vec())]
    pub primes: Vec<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest finite-module order enumerated by searches.
    #[arg(long, global = true, default_value_t = Limits::default().max_order)]
    pub max_order: u64,
    /// Largest t-degree allowed in Gröbner computations.
    #[arg(long, global = true, default_value_t = Limits::default().degree_cap)]
    pub degree_cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of the module of a Gauss-code diagram.
    AnalyzeDiagram { file: PathBuf },
    /// Invariants of a module given as JSON.
    AnalyzeMatrix { file: PathBuf },
    /// Realize a module as a ribbon surface-link.
    Realize {
        file: PathBuf,
        /// Genus of each component, comma separated.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<usize>>,
        /// Number of components; must equal corank + 1.
        #[arg(long)]
        r: Option<usize>,
        /// Rewrite the presentation towards the minimal genus first.
        #[arg(long)]
        normalize: bool,
        /// Directory receiving group.txt, diskarc.json and report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disk-arc presentation of the Satoh surface-link of a diagram.
    Satoh { file: PathBuf },
    /// Ribbon and general genus lower bounds.
    Bounds { file: PathBuf },
    /// Realizability verdicts.
    Classify {
        file: PathBuf,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Deterministic self checks.
    Selftest,
}

impl GlobalArgs {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        if self.primes.is_empty() {
            return Err(CliError::Validation("--primes must not be empty".into()));
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(CliError::Validation(format!("{p} is not prime")));
        }
        if self.max_order == 0 || self.degree_cap == 0 {
            return Err(CliError::Validation("caps must be positive".into()));
        }
        let limits = Limits { max_order: self.max_order, degree_cap: self.degree_cap, ..Limits::default() };
        Ok(RunConfig { primes: self.primes.clone(), limits, format: self.format, seed: self.seed })
    }
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(dir.join(name), body).map_err(|e| CliError::Io(e.to_string()))
}

pub fn execute(cli: &Cli) -> Result<(Outcome, Format), CliError> {
    let cfg = cli.global.config()?;
    let outcome = match &cli.command {
        Command::AnalyzeDiagram { file } => cmd_analyze_diagram(&read_code(file)?, &cfg)?,
        Command::AnalyzeMatrix { file } => cmd_analyze_matrix(&read_module(file)?, &cfg)?,
        Command::Realize { file, partition, r, normalize, out } => {
            let m = read_module(file)?;
            if let (Some(r), Some(p)) = (r, partition) {
                if *r != p.len() {
                    return Err(CliError::Validation(format!("--r {r} disagrees with a partition of length {}", p.len())));
                }
            }
            let partition = match (partition, r) {
                (Some(p), _) => Some(p.clone()),
                (None, Some(r)) => {
                    let corank = m.corank()?;
                    if corank + 1 != *r {
                        return Err(CliError::Validation(format!("module has corank {corank}, so r must be {}", corank + 1)));
                    }
                    None
                }
                (None, None) => None,
            };
            let (o, realized) = cmd_realize(&m, partition, *normalize, &cfg)?;
            if let Some(dir) = out {
                write_file(dir, "group.txt", &(realized.group.to_text() + "\n"))?;
                write_file(dir, "diskarc.json", &(serde_json::to_string_pretty(&realized.diskarc).unwrap() + "\n"))?;
                write_file(dir, "report.json", &o.render(Format::Json))?;
            }
            o
        }
        Command::Satoh { file } => cmd_satoh(&read_code(file)?)?,
        Command::Bounds { file } => cmd_bounds(&read_module(file)?, &cfg)?,
        Command::Classify { file, r, genus } => cmd_classify(&read_module(file)?, *r, *genus, &cfg)?,
        Command::Selftest => cmd_selftest(&cfg)?,
    };
    Ok((outcome, cfg.format))
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((o, format)) => {
            print!("{}", o.render(format));
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
