//! Command-line front end: `generate`, `solve`, `verify` and `bench`.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 resource
//! limit.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convolution::SumsMode;
use crate::error::{Error, Result};
use crate::knapsack::{solve_01_knapsack, KnapsackAlgo, KnapsackOptions};
use crate::model::{parse_instance, serialize_instance, Instance, Item, ItemSelection, KnapsackInstance, SubsetSumInstance};
use crate::oracles::{bitset_subset_sums, brute_force_knapsack};
use crate::stats::Counters;
use crate::subset_sum::{solve_subset_sum, SubsetSumOptions, DEFAULT_PROXIMITY_C};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const CSV_HEADER: &str = "suite,n,w_max,t,algo,value,millis,entries,conv_len";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Knapsack,
    Subsetsum,
    /// Few distinct weights and nearly equal efficiencies.
    AdversarialDense,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub kind: GenKind,
    pub n: usize,
    pub w_max: i64,
    pub p_max: i64,
    /// Fixed capacity; otherwise `t_ratio` of the total weight.
    pub t: Option<i64>,
    pub t_ratio: f64,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            kind: GenKind::Knapsack,
            n: 10,
            w_max: 10,
            p_max: 100,
            t: None,
            t_ratio: 0.5,
            seed: 0,
        }
    }
}

/// Deterministic random instance.
pub fn generate(params: &GenParams) -> Result<Instance> {
    if params.w_max < 1 {
        return Err(Error::BadParameter("w_max must be at least 1".into()));
    }
    if params.p_max < 0 {
        return Err(Error::BadParameter("p_max must be non-negative".into()));
    }
    if !(0.0..=1.0).contains(&params.t_ratio) {
        return Err(Error::BadParameter("t-ratio must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let w = params.w_max;
    let items: Vec<Item> = match params.kind {
        GenKind::Knapsack | GenKind::Subsetsum => (0..params.n)
            .map(|_| {
                let weight = rng.gen_range(1..=w);
                Item::new(weight, rng.gen_range(0..=params.p_max))
            })
            .collect(),
        GenKind::AdversarialDense => {
            let heavy = [w, (w - 1).max(1), (w / 2).max(1)];
            let per_unit = (params.p_max / w).max(1);
            (0..params.n)
                .map(|_| {
                    let weight = heavy[rng.gen_range(0..heavy.len())];
                    let jitter = rng.gen_range(0..=1);
                    Item::new(weight, (weight * per_unit + jitter).min(params.p_max.max(1)))
                })
                .collect()
        }
    };
    let total: i64 = items.iter().map(|it| it.weight).sum();
    let t = params
        .t
        .unwrap_or_else(|| (total as f64 * params.t_ratio).round() as i64);
    let inst = match params.kind {
        GenKind::Subsetsum => Instance::SubsetSum(SubsetSumInstance::new(
            t,
            items.iter().map(|it| it.weight).collect(),
        )),
        _ => Instance::Knapsack(KnapsackInstance::new(t, items)),
    };
    inst.as_knapsack().check_limits()?;
    Ok(inst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveAlgo {
    Auto,
    Bellman,
    Proximity,
    Brute,
    SubsetsumFast,
    SubsetsumBitset,
}

impl SolveAlgo {
    pub fn name(self) -> &'static str {
        match self {
            SolveAlgo::Auto => "auto",
            SolveAlgo::Bellman => "bellman",
            SolveAlgo::Proximity => "proximity",
            SolveAlgo::Brute => "brute",
            SolveAlgo::SubsetsumFast => "subsetsum-fast",
            SolveAlgo::SubsetsumBitset => "subsetsum-bitset",
        }
    }

    pub fn is_subset_sum(self) -> bool {
        matches!(self, SolveAlgo::SubsetsumFast | SolveAlgo::SubsetsumBitset)
    }

    pub fn parse(s: &str) -> Result<Self> {
        <SolveAlgo as ValueEnum>::from_str(s, true)
            .map_err(|_| Error::BadParameter(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveSettings {
    pub proximity_c: u32,
    /// Seed for the randomized subset-sum backend.
    pub randomized: Option<u64>,
}

impl Default for SolveSettings {
    fn default() -> Self {
        SolveSettings {
            proximity_c: DEFAULT_PROXIMITY_C,
            randomized: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub algo: String,
    pub value: i64,
    pub selection: Option<ItemSelection>,
    /// Whether the target is hit exactly, for subset-sum algorithms.
    pub decision: Option<bool>,
    pub millis: f64,
    pub counters: Counters,
}

impl RunReport {
    pub fn render(&self, witness: bool) -> String {
        let mut out = format!("value {}\n", self.value);
        if witness {
            if let Some(sel) = &self.selection {
                out.push_str("items");
                for i in sel.iter() {
                    out.push_str(&format!(" {i}"));
                }
                out.push('\n');
            }
        }
        if let Some(d) = self.decision {
            out.push_str(if d { "decision yes\n" } else { "decision no\n" });
        }
        out
    }
}

fn subset_sum_view(inst: &Instance) -> Result<SubsetSumInstance> {
    match inst {
        Instance::SubsetSum(s) => Ok(s.clone()),
        Instance::Knapsack(k) if k.items.iter().all(|it| it.weight == it.profit) => Ok(
            SubsetSumInstance::new(k.capacity, k.items.iter().map(|it| it.weight).collect()),
        ),
        Instance::Knapsack(_) => Err(Error::BadParameter(
            "subset-sum algorithms need a subsetsum instance".into(),
        )),
    }
}

pub fn run_algo(inst: &Instance, algo: SolveAlgo, settings: &SolveSettings) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport {
        algo: algo.name().to_string(),
        value: 0,
        selection: None,
        decision: None,
        millis: 0.0,
        counters: Counters::default(),
    };
    match algo {
        SolveAlgo::Auto | SolveAlgo::Proximity | SolveAlgo::Bellman => {
            let opts = KnapsackOptions {
                algo: match algo {
                    SolveAlgo::Auto => KnapsackAlgo::Auto,
                    SolveAlgo::Proximity => KnapsackAlgo::Proximity,
                    _ => KnapsackAlgo::Bellman,
                },
                proximity_c: settings.proximity_c,
            };
            let out = solve_01_knapsack(&inst.as_knapsack(), &opts)?;
            report.value = out.value;
            report.selection = Some(out.selection);
            report.counters = out.counters;
        }
        SolveAlgo::Brute => {
            let (v, sel) = brute_force_knapsack(&inst.as_knapsack())?;
            report.value = v;
            report.selection = Some(sel);
        }
        SolveAlgo::SubsetsumFast => {
            let ss = subset_sum_view(inst)?;
            let opts = SubsetSumOptions {
                proximity_c: settings.proximity_c,
                mode: match settings.randomized {
                    Some(seed) => SumsMode::Randomized { seed },
                    None => SumsMode::Deterministic,
                },
            };
            let out = solve_subset_sum(&ss, &opts)?;
            report.value = out.value;
            report.decision = Some(out.decision);
            report.counters = out.counters;
        }
        SolveAlgo::SubsetsumBitset => {
            let ss = subset_sum_view(inst)?;
            crate::model::validate(&ss.to_knapsack())?;
            let reach = bitset_subset_sums(&ss.elements, ss.target)?;
            let best = reach.iter().rposition(|&b| b).unwrap_or(0);
            report.value = best as i64;
            report.decision = Some(best as i64 == ss.target);
        }
    }
    report.millis = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Result of a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Passed { trials: usize },
    Mismatch {
        trial: usize,
        left: i64,
        right: i64,
        artifact: PathBuf,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub max_n: usize,
    pub max_w: i64,
    pub seed: u64,
    pub subset_sum: bool,
    pub artifact: PathBuf,
}

/// Random instance for trial `k` of a verification run.
pub fn verify_instance(cfg: &VerifyConfig, k: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k as u64));
    let kind = if cfg.subset_sum {
        GenKind::Subsetsum
    } else if k % 4 == 3 {
        GenKind::AdversarialDense
    } else {
        GenKind::Knapsack
    };
    generate(&GenParams {
        kind,
        n: rng.gen_range(0..=cfg.max_n),
        w_max: rng.gen_range(1..=cfg.max_w.max(1)),
        p_max: 100,
        t: None,
        t_ratio: rng.gen_range(0.0..=1.0),
        seed: rng.gen(),
    })
}

/// Compare two value functions on seeded instances. The first mismatching
/// instance is written to `cfg.artifact`.
pub fn verify_with<A, B>(cfg: &VerifyConfig, left: A, right: B) -> Result<VerifyOutcome>
where
    A: Fn(&Instance) -> Result<i64>,
    B: Fn(&Instance) -> Result<i64>,
{
    for k in 0..cfg.trials {
        let inst = verify_instance(cfg, k)?;
        let (a, b) = (left(&inst)?, right(&inst)?);
        if a != b {
            std::fs::write(&cfg.artifact, serialize_instance(&inst))
                .map_err(|e| Error::BadParameter(format!("cannot write {}: {e}", cfg.artifact.display())))?;
            return Ok(VerifyOutcome::Mismatch {
                trial: k,
                left: a,
                right: b,
                artifact: cfg.artifact.clone(),
            });
        }
    }
    Ok(VerifyOutcome::Passed { trials: cfg.trials })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    KnapsackScaling,
    SubsetsumScaling,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::BadParameter("empty suite name".into()));
        }
        <Suite as ValueEnum>::from_str(s, true)
            .map_err(|_| Error::BadParameter(format!("unknown suite {s:?}")))
    }

    fn name(self) -> &'static str {
        match self {
            Suite::KnapsackScaling => "knapsack-scaling",
            Suite::SubsetsumScaling => "subsetsum-scaling",
        }
    }
}

/// CSV rows, one per algorithm and weight bound.
pub fn bench(suite: Suite, widths: &[i64]) -> Result<String> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let (n, kind, algos) = match suite {
        Suite::KnapsackScaling => (64, GenKind::Knapsack, [SolveAlgo::Bellman, SolveAlgo::Proximity]),
        Suite::SubsetsumScaling => (256, GenKind::Subsetsum, [SolveAlgo::SubsetsumBitset, SolveAlgo::SubsetsumFast]),
    };
    for &w in widths {
        let inst = generate(&GenParams {
            kind,
            n,
            w_max: w,
            p_max: 1 << 20,
            t: None,
            t_ratio: 0.5,
            seed: w as u64,
        })?;
        let t = inst.as_knapsack().capacity;
        for algo in algos {
            let r = run_algo(&inst, algo, &SolveSettings::default())?;
            out.push_str(&format!(
                "{},{n},{w},{t},{},{},{:.3},{},{}\n",
                suite.name(),
                r.algo,
                r.value,
                r.millis,
                r.counters.entries,
                r.counters.conv_len
            ));
        }
    }
    Ok(out)
}

pub const BENCH_WIDTHS: [i64; 3] = [64, 256, 1024];

#[derive(Debug, Parser)]
#[command(name = "proxknap", about = "Exact knapsack and subset sum solvers", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random instance to standard output.
    Generate {
        #[arg(long, value_enum, default_value = "knapsack")]
        kind: GenKind,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        w_max: i64,
        #[arg(long, default_value_t = 100)]
        p_max: i64,
        #[arg(long, conflicts_with = "t_ratio")]
        t: Option<i64>,
        #[arg(long, default_value_t = 0.5)]
        t_ratio: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve an instance file (`-` reads standard input).
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        algo: SolveAlgo,
        /// Also print the chosen items.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_PROXIMITY_C)]
        proximity_c: u32,
        /// Re-run with twice the proximity constant and warn on disagreement.
        #[arg(long)]
        paranoid: bool,
        /// Use the seeded randomized subset-sum backend.
        #[arg(long)]
        randomized: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare two algorithms on seeded random instances.
    Verify {
        /// Two algorithms separated by a comma, e.g. `proximity,bellman`.
        #[arg(long)]
        algos: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        wmax: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the first failing instance.
        #[arg(long, default_value = "verify-failure.txt")]
        artifact: PathBuf,
    },
    /// Time algorithms on a scaling suite and write CSV.
    Bench {
        #[arg(long)]
        suite: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    if e.is_resource() {
        EXIT_RESOURCE
    } else {
        EXIT_INPUT
    }
}

fn read_input(path: &Path) -> Result<Instance> {
    let mut text = String::new();
    let io = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    io.map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Malformed(format!("write failed: {e}"));
    match cmd {
        Command::Generate { kind, n, w_max, p_max, t, t_ratio, seed } => {
            let inst = generate(&GenParams { kind, n, w_max, p_max, t, t_ratio, seed })?;
            out.write_all(serialize_instance(&inst).as_bytes()).map_err(io)?;
        }
        Command::Solve { input, algo, witness, proximity_c, paranoid, randomized, seed } => {
            let inst = read_input(&input)?;
            let settings = SolveSettings {
                proximity_c,
                randomized: randomized.then_some(seed),
            };
            let report = run_algo(&inst, algo, &settings)?;
            if paranoid {
                let wide = SolveSettings { proximity_c: 2 * proximity_c, ..settings };
                let check = run_algo(&inst, algo, &wide)?;
                if check.value != report.value {
                    writeln!(
                        err,
                        "warning: value {} with C = {proximity_c} but {} with C = {}",
                        report.value,
                        check.value,
                        2 * proximity_c
                    )
                    .map_err(io)?;
                }
            }
            out.write_all(report.render(witness).as_bytes()).map_err(io)?;
        }
        Command::Verify { algos, trials, n, wmax, seed, artifact } => {
            let names: Vec<&str> = algos.split(',').map(str::trim).collect();
            if names.len() != 2 {
                return Err(Error::BadParameter(format!("--algos needs two names, got {algos:?}")));
            }
            let a = SolveAlgo::parse(names[0])?;
            let b = SolveAlgo::parse(names[1])?;
            let cfg = VerifyConfig {
                trials,
                max_n: n,
                max_w: wmax,
                seed,
                subset_sum: a.is_subset_sum() || b.is_subset_sum(),
                artifact,
            };
            let s = SolveSettings::default();
            let outcome = verify_with(
                &cfg,
                |i| Ok(run_algo(i, a, &s)?.value),
                |i| Ok(run_algo(i, b, &s)?.value),
            )?;
            match outcome {
                VerifyOutcome::Passed { trials } => {
                    writeln!(out, "{trials}/{trials} ok").map_err(io)?;
                }
                VerifyOutcome::Mismatch { trial, left, right, artifact } => {
                    writeln!(
                        err,
                        "mismatch on trial {trial}: {} = {left}, {} = {right}; instance written to {}",
                        a.name(),
                        b.name(),
                        artifact.display()
                    )
                    .map_err(io)?;
                    return Ok(EXIT_MISMATCH);
                }
            }
        }
        Command::Bench { suite, out: path } => {
            let csv = bench(Suite::parse(&suite)?, &BENCH_WIDTHS)?;
            match path {
                Some(p) => std::fs::write(&p, csv)
                    .map_err(|e| Error::BadParameter(format!("cannot write {}: {e}", p.display())))?,
                None => out.write_all(csv.as_bytes()).map_err(io)?,
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parse `args` (program name first) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
