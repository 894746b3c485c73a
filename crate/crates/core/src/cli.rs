//! The `gama` command line: instance generation, basis inspection, solving
//! and the verification suite.
//!
//! `solve` writes into `--out`:
//!
//! * `<instance>.result.json` per instance;
//! * `aggregate.csv` with columns `instance,size,best_f,distinct_terminals,best_share,status`,
//!   where `size` is the flat dimension `n·k` and `status` is `ok` or the
//!   error message. It holds no timings, so reruns with the same flags and
//!   rng seed reproduce it byte for byte;
//! * `timing.csv` with columns `instance,size,wall_ms`.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GamaError, Result};
use crate::graver::{self, counts, io as basis_io, BasisOptions, ConstraintKind, GraverBasis};
use crate::problems::{generate_instance, Curvature, GeneratorConfig, ProblemClass, QuadraticInstance};
use crate::seeds::SeedOptions;
use crate::solver::{
    format_exact, generate_seeds, solve_from_seeds, AugmentOptions, MovePolicy, NumericMode, ResultsFile, SolveReport,
    SolverConfig,
};
use crate::verify::{run_verification, structured_basis, VerifyOptions};

pub const AGGREGATE_HEADER: &str = "instance,size,best_f,distinct_terminals,best_share,status";
pub const TIMING_HEADER: &str = "instance,size,wall_ms";
pub const TERMINALS_HEADER: &str = "instance,seed,terminal_f,steps";

#[derive(Debug, Parser)]
#[command(name = "gama", version, about = "Graver augmentation from multiple seeds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write random instances as JSON files.
    Generate(GenerateArgs),
    /// Build a Graver basis and compare its size with the closed form.
    Graver(GraverArgs),
    /// Solve instance files.
    Solve(SolveArgs),
    /// Cross-check bases and the solver against the oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CurvatureArg {
    Indefinite,
    Gram,
    Separable,
}

impl From<CurvatureArg> for Curvature {
    fn from(c: CurvatureArg) -> Self {
        match c {
            CurvatureArg::Indefinite => Curvature::Indefinite,
            CurvatureArg::Gram => Curvature::Gram,
            CurvatureArg::Separable => Curvature::SeparableConvex,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: ProblemClass,
    /// Number of bricks (variables for CBQP).
    #[arg(long)]
    pub n: usize,
    /// Variables per brick.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Right-hand side, comma separated; random when omitted.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub b: Option<Vec<i64>>,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, env = "GAMA_RNG_SEED", default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = CurvatureArg::Indefinite)]
    pub curvature: CurvatureArg,
    /// Probability that an entry of Q is nonzero.
    #[arg(long, default_value_t = 1.0)]
    pub density: f64,
    #[arg(long, default_value_t = -100, allow_negative_numbers = true)]
    pub min_value: i64,
    #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
    pub max_value: i64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Cardinality,
    BrickCardinality,
    CoordinateCardinality,
    Assignment,
}

#[derive(Debug, Args)]
pub struct GraverArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Basis file to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Keep only cycles up to this length in an assignment basis.
    #[arg(long)]
    pub max_cycle_len: Option<usize>,
    /// Largest basis enumerated without `--max-cycle-len`.
    #[arg(long, default_value_t = graver::DEFAULT_ELEMENT_CAP)]
    pub cap: u128,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    First,
    Best,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Double,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance files, or directories of `*.json` instances.
    #[arg(required = true)]
    pub instances: Vec<PathBuf>,
    /// Seeds per instance; 50 for CBQP and n·k otherwise when omitted.
    #[arg(long, env = "GAMA_SEEDS")]
    pub seeds: Option<usize>,
    #[arg(long, value_enum, env = "GAMA_POLICY", default_value_t = PolicyArg::First)]
    pub policy: PolicyArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Double)]
    pub mode: ModeArg,
    #[arg(long, env = "GAMA_THREADS", default_value_t = 1)]
    pub threads: usize,
    #[arg(long, env = "GAMA_RNG_SEED", default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long)]
    pub max_cycle_len: Option<usize>,
    #[arg(long, default_value_t = graver::DEFAULT_ELEMENT_CAP)]
    pub cap: u128,
    /// Random-walk length range for QAP seeds, `MIN:MAX` or a single value.
    #[arg(long, value_parser = parse_range)]
    pub walk_len: Option<RangeInclusive<usize>>,
    /// Random liftings tried after a stall with a truncated basis.
    #[arg(long)]
    pub sampler_budget: Option<usize>,
    /// Drop repeated seeds.
    #[arg(long)]
    pub dedup: bool,
    /// Include the seeds in each results file.
    #[arg(long)]
    pub dump_seeds: bool,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// Also write every seed's terminal value to this CSV.
    #[arg(long)]
    pub terminals_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    pub max_dim: usize,
    /// Random instances per class and shape in the exhaustive-seed check.
    #[arg(long, default_value_t = 3)]
    pub instances: usize,
    #[arg(long, env = "GAMA_RNG_SEED", default_value_t = 0)]
    pub rng_seed: u64,
}

fn parse_class(s: &str) -> std::result::Result<ProblemClass, String> {
    s.parse().map_err(|e: GamaError| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (lo, hi) = s.split_once(':').unwrap_or((s, s));
    let lo: usize = lo.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("walk length range {lo}:{hi} must satisfy 1 <= MIN <= MAX"));
    }
    Ok(lo..=hi)
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<ExitCode> {
    match cli.command {
        Command::Generate(args) => cmd_generate(&args, out),
        Command::Graver(args) => cmd_graver(&args, out),
        Command::Solve(args) => cmd_solve(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
    }
}

pub fn cmd_generate<W: Write>(args: &GenerateArgs, out: &mut W) -> Result<ExitCode> {
    if args.min_value > args.max_value {
        return Err(GamaError::InvalidDimension("--min-value exceeds --max-value".into()));
    }
    if !(0.0..=1.0).contains(&args.density) {
        return Err(GamaError::InvalidDimension("--density must lie in [0, 1]".into()));
    }
    let k = if args.class == ProblemClass::Cbqp { 1 } else { args.k };
    args.class.kind(args.n, k)?.validate()?;
    if args.count == 0 {
        return Ok(ExitCode::SUCCESS);
    }
    fs::create_dir_all(&args.out)?;
    let config = GeneratorConfig {
        density: args.density,
        value_range: (args.min_value, args.max_value),
        curvature: args.curvature.into(),
        b: args.b.clone(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.rng_seed);
    for i in 0..args.count {
        let inst = generate_instance(&mut rng, args.class, args.n, k, &config)?;
        let name = format!("{}_{i}", inst.name());
        let path = args.out.join(format!("{name}.json"));
        inst.with_name(name).write(&path)?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn graver_kind(kind: KindArg, n: usize, k: usize) -> ConstraintKind {
    match kind {
        KindArg::Cardinality => ConstraintKind::Cardinality { n },
        KindArg::BrickCardinality => ConstraintKind::BrickCardinality { n, k },
        KindArg::CoordinateCardinality => ConstraintKind::CoordinateCardinality { n, k },
        KindArg::Assignment => ConstraintKind::Assignment { n, k },
    }
}

pub fn cmd_graver<W: Write>(args: &GraverArgs, out: &mut W) -> Result<ExitCode> {
    let kind = graver_kind(args.kind, args.n, args.k);
    kind.validate()?;
    let (basis, predicted): (GraverBasis, Option<u128>) = match kind {
        ConstraintKind::Assignment { n, k } => {
            let full = n.min(k);
            let t = match args.max_cycle_len {
                Some(t) => t.min(full),
                None => {
                    let count = counts::assignment_count(n, k, full);
                    if count.is_none_or(|c| c > args.cap) {
                        return Err(GamaError::Resource(format!(
                            "assignment basis for n = {n}, k = {k} has {} elements, over the cap of {}; \
                             pass --max-cycle-len to keep short cycles only",
                            count.map_or_else(|| "too many".to_string(), |c| c.to_string()),
                            args.cap
                        )));
                    }
                    full
                }
            };
            if let Some(c) = counts::assignment_count(n, k, t).filter(|&c| c > args.cap) {
                return Err(GamaError::Resource(format!(
                    "{c} elements with cycles up to length {t} exceeds the cap of {}; lower --max-cycle-len",
                    args.cap
                )));
            }
            let options = BasisOptions {
                element_cap: args.cap,
                max_cycle_len: Some(t),
                ..Default::default()
            };
            (graver::build_basis(&kind, &options)?, counts::assignment_count(n, k, t))
        }
        _ => (structured_basis(&kind)?, graver::predicted_cardinality(&kind)),
    };
    let predicted = predicted.unwrap_or(0);
    writeln!(out, "kind: {kind:?}")?;
    writeln!(out, "dimension: {}", basis.dim())?;
    writeln!(out, "predicted: {predicted}")?;
    writeln!(out, "actual: {}", basis.len())?;
    if basis.is_truncated() {
        writeln!(
            out,
            "truncated: cycles up to length {}",
            args.max_cycle_len.unwrap_or(0)
        )?;
    }
    if let Some(path) = &args.out {
        let file = BufWriter::new(fs::File::create(path)?);
        basis_io::write_basis(file, basis.dim(), basis.elements(), Some(&format!("{kind:?}")))?;
    }
    if predicted != basis.len() as u128 {
        writeln!(out, "MISMATCH")?;
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

/// Expands directories into their `*.json` instance files, sorted by name.
pub fn collect_instance_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| {
                    let name = f.file_name().and_then(|s| s.to_str()).unwrap_or("");
                    name.ends_with(".json") && !name.ends_with(".result.json")
                })
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

fn instance_stem(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("instance")
        .to_string()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl SolveArgs {
    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            seeds: self.seeds,
            augment: AugmentOptions {
                policy: match self.policy {
                    PolicyArg::First => MovePolicy::FirstImprovement,
                    PolicyArg::Best => MovePolicy::BestImprovement,
                },
                sampler_budget: self.sampler_budget,
            },
            mode: match self.mode {
                ModeArg::Exact => NumericMode::Exact,
                ModeArg::Double => NumericMode::Double,
            },
            threads: self.threads,
            rng_seed: self.rng_seed,
            basis: BasisOptions {
                element_cap: self.cap,
                max_cycle_len: self.max_cycle_len,
                ..Default::default()
            },
            seed_options: SeedOptions {
                walk_len: self.walk_len.clone(),
                dedup: self.dedup,
            },
            ..Default::default()
        }
    }
}

fn solve_one(path: &Path, config: &SolverConfig) -> Result<(QuadraticInstance, SolveReport, Vec<Vec<i64>>)> {
    let inst = QuadraticInstance::read(path)?;
    let basis = graver::build_basis(inst.kind(), &config.basis)?;
    let seeds = generate_seeds(&inst, &basis, config)?;
    let report = solve_from_seeds(&inst, &basis, &seeds, config)?;
    Ok((inst, report, seeds))
}

pub fn cmd_solve<W: Write>(args: &SolveArgs, out: &mut W) -> Result<ExitCode> {
    let files = collect_instance_files(&args.instances)?;
    let config = args.solver_config();
    fs::create_dir_all(&args.out)?;
    let mut aggregate = BufWriter::new(fs::File::create(args.out.join("aggregate.csv"))?);
    let mut timing = BufWriter::new(fs::File::create(args.out.join("timing.csv"))?);
    writeln!(aggregate, "{AGGREGATE_HEADER}")?;
    writeln!(timing, "{TIMING_HEADER}")?;
    let mut terminals = match &args.terminals_csv {
        Some(p) => {
            let mut w = BufWriter::new(fs::File::create(p)?);
            writeln!(w, "{TERMINALS_HEADER}")?;
            Some(w)
        }
        None => None,
    };
    let mut failed = 0;
    for path in &files {
        let stem = instance_stem(path);
        let start = Instant::now();
        let outcome = solve_one(path, &config);
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok((inst, report, seeds)) => {
                let size = inst.dim();
                let results = ResultsFile::from_report(&report, wall_ms, args.dump_seeds.then_some(seeds));
                fs::write(
                    args.out.join(format!("{stem}.result.json")),
                    serde_json::to_string_pretty(&results)?,
                )?;
                writeln!(
                    aggregate,
                    "{},{size},{},{},{:.6},ok",
                    csv_field(&stem),
                    format_exact(&report.best.terminal_f),
                    report.distinct_terminal_values.len(),
                    report.best_share()
                )?;
                writeln!(timing, "{},{size},{wall_ms:.3}", csv_field(&stem))?;
                if let Some(w) = terminals.as_mut() {
                    for r in &report.all_terminals {
                        writeln!(
                            w,
                            "{},{},{},{}",
                            csv_field(&stem),
                            r.seed_index,
                            format_exact(&r.terminal_f),
                            r.steps
                        )?;
                    }
                }
                writeln!(
                    out,
                    "{stem}: best {} over {} seeds, {} distinct terminal values, {}",
                    format_exact(&report.best.terminal_f),
                    report.seed_count(),
                    report.distinct_terminal_values.len(),
                    report.landscape_class.name()
                )?;
            }
            Err(e) => {
                failed += 1;
                writeln!(
                    aggregate,
                    "{},,,,,{}",
                    csv_field(&stem),
                    csv_field(&format!("error: {e}"))
                )?;
                writeln!(timing, "{},,{wall_ms:.3}", csv_field(&stem))?;
                writeln!(out, "{stem}: error: {e}")?;
            }
        }
    }
    aggregate.flush()?;
    timing.flush()?;
    if let Some(mut w) = terminals {
        w.flush()?;
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

pub fn cmd_verify<W: Write>(args: &VerifyArgs, out: &mut W) -> Result<ExitCode> {
    let options = VerifyOptions {
        max_dim: args.max_dim,
        instances: args.instances,
        rng_seed: args.rng_seed,
    };
    let report = run_verification(&options, &structured_basis);
    out.write_all(report.render().as_bytes())?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

/// Parses the process arguments and runs, printing errors to stderr.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
