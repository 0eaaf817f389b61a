use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use faid_core::codes::{build_tanner_155, parse_alist, serialize_alist, SymmetryGroup, TannerGraph};
use faid_core::diversity::{coverage_check, select_diversity, DiversitySet, MatrixCache, SelectionError};
use faid_core::errorsets::{
    build_error_set, parse_error_set, reduction_factor, write_error_set, DedupRule, EsetOptions, PatternIdentity, Weights,
};
use faid_core::faid::{builtin, builtin_rules, validate_rule, Decoder, DecoderConfig, FaidRule, TieBreak};
use faid_core::harness::{
    check_guarantee, dset_stages, fer_csv, guarantee_csv, parse_config, selection_csv, simulate_fer, FerConfig,
    GuaranteeMode, GuaranteeOptions,
};
use faid_core::topology::{
    ab_summary, classify, enumerate_trapping_sets, parse_ts_list, reduce_by_homomorphism, write_ts_list, EnumConfig,
    TsClass,
};

#[derive(Parser)]
#[command(name = "faid", version, about = "FAID decoding, trapping sets and decoder diversity")]
struct Cli {
    /// Key-value file supplying defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build or inspect codes
    #[command(subcommand)]
    Code(CodeCmd),
    /// Validate and list update rules
    #[command(subcommand)]
    Rule(RuleCmd),
    /// Decode one error pattern
    Decode(DecodeArgs),
    /// Trapping-set enumeration and classification
    #[command(subcommand)]
    Ts(TsCmd),
    /// Error-set construction
    #[command(subcommand)]
    Eset(EsetCmd),
    /// Diversity selection and verification
    #[command(subcommand)]
    Div(DivCmd),
    /// Monte Carlo simulation
    #[command(subcommand)]
    Sim(SimCmd),
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Write the (155,64) Tanner code as alist
    BuildTanner {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print size, dimension, girth and degree profile
    Info { alist: PathBuf },
}

#[derive(Subcommand)]
enum RuleCmd {
    /// Check symmetry, monotonicity and range of a rule file
    Validate { file: PathBuf },
    /// List the bundled rules
    ListBuiltin {
        /// Print every table
        #[arg(long)]
        tables: bool,
    },
}

#[derive(Args)]
struct DecoderFlags {
    /// Channel weight in the decision sum
    #[arg(long)]
    omega: Option<i32>,
    /// Decision when the sum is zero
    #[arg(long)]
    tie: Option<TieBreak>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    code: Option<PathBuf>,
    /// Builtin id or rule file
    #[arg(long)]
    rule: Option<String>,
    /// Comma-separated error positions
    #[arg(long)]
    errors: String,
    #[arg(long)]
    iters: Option<usize>,
    #[command(flatten)]
    dec: DecoderFlags,
}

#[derive(Subcommand)]
enum TsCmd {
    /// Enumerate trapping sets with a <= A, b <= B
    Enum {
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        max_a: Option<usize>,
        #[arg(long)]
        max_b: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep one representative per symmetry orbit
        #[arg(long)]
        reduce: bool,
        /// Keep sets with pendant variables
        #[arg(long)]
        keep_leaves: bool,
        /// Lift the size ceiling
        #[arg(long)]
        allow_large: bool,
    },
    /// Print the parameters and type label of one variable set
    Classify {
        #[arg(long)]
        code: Option<PathBuf>,
        /// Comma-separated variable indices
        #[arg(long)]
        set: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DedupArg {
    Lexicographic,
    StrictBoth,
    SmallerSize,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Orbit,
    Support,
}

#[derive(Args)]
struct EsetFlags {
    /// Drop patterns already found in these classes
    #[arg(long, value_enum, default_value = "lexicographic")]
    dedup: DedupArg,
    /// When two patterns count as the same
    #[arg(long, value_enum, default_value = "orbit")]
    identity: IdentityArg,
    /// Include every weight up to T
    #[arg(long)]
    up_to: bool,
}

impl EsetFlags {
    fn options(&self) -> EsetOptions {
        EsetOptions {
            dedup: match self.dedup {
                DedupArg::Lexicographic => DedupRule::Lexicographic,
                DedupArg::StrictBoth => DedupRule::StrictBoth,
                DedupArg::SmallerSize => DedupRule::SmallerSize,
            },
            identity: match self.identity {
                IdentityArg::Orbit => PatternIdentity::Orbit,
                IdentityArg::Support => PatternIdentity::Support,
            },
            weights: if self.up_to { Weights::UpTo } else { Weights::Exactly },
        }
    }
}

#[derive(Subcommand)]
enum EsetCmd {
    /// Weight-T patterns supported on trapping sets with a <= A, b <= B
    Build {
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        ts: PathBuf,
        #[arg(short = 't')]
        t: usize,
        #[arg(short = 'A')]
        a: usize,
        #[arg(short = 'B')]
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: EsetFlags,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Qc,
    Eset,
}

#[derive(Subcommand)]
enum DivCmd {
    /// Greedy selection over error sets of weight k_start..=T
    Select {
        #[arg(long)]
        code: Option<PathBuf>,
        /// "builtin" or comma-separated ids and rule files
        #[arg(long)]
        base: Option<String>,
        #[arg(short = 't')]
        t: usize,
        #[arg(short = 'B')]
        b: usize,
        /// First weight to select on
        #[arg(long)]
        k_start: Option<usize>,
        #[arg(long)]
        iters: Option<usize>,
        /// Trapping sets from `ts enum`; enumerated when absent
        #[arg(long)]
        ts: Option<PathBuf>,
        /// Directory for cached correctability rows
        #[arg(long)]
        cache: Option<PathBuf>,
        /// CSV of residual sizes after each pick
        #[arg(long)]
        trajectory: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: EsetFlags,
        #[command(flatten)]
        dec: DecoderFlags,
    },
    /// Patterns of an error set that the diversity set misses
    Check {
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        dset: Option<PathBuf>,
        #[arg(long)]
        eset: PathBuf,
        /// Directory of rule files named <id>.rule
        #[arg(long)]
        rules_dir: Option<PathBuf>,
        #[command(flatten)]
        dec: DecoderFlags,
    },
    /// Verify correction of every pattern of weight at most T
    Guarantee {
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        dset: Option<PathBuf>,
        #[arg(short = 't')]
        t: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        /// Error set for eset mode
        #[arg(long)]
        eset: Option<PathBuf>,
        #[arg(long)]
        first_failure: bool,
        /// Largest pattern count of one weight
        #[arg(long)]
        ceiling: Option<u128>,
        #[arg(long)]
        rules_dir: Option<PathBuf>,
        /// Write the verdict as CSV
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        dec: DecoderFlags,
    },
}

#[derive(Subcommand)]
enum SimCmd {
    /// Frame error rate of every stage of a diversity set
    Fer {
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        dset: Option<PathBuf>,
        /// Comma-separated crossover probabilities
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        max_frames: Option<u64>,
        #[arg(long)]
        target_errors: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Stage whose errors stop the run; the last by default
        #[arg(long)]
        stop_stage: Option<usize>,
        #[arg(long)]
        rules_dir: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        dec: DecoderFlags,
    },
}

/// Config-file values, consulted when a flag is absent.
struct Settings(BTreeMap<String, String>);

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self(BTreeMap::new())),
            Some(p) => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Ok(Self(parse_config(&text).with_context(|| format!("parsing {}", p.display()))?))
            }
        }
    }

    fn pick<T: FromStr>(&self, cli: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if cli.is_some() {
            return Ok(cli);
        }
        self.0
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| anyhow!("config key {key}: {e}")))
            .transpose()
    }

    fn or<T: FromStr>(&self, cli: Option<T>, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.pick(cli, key)?.unwrap_or(default))
    }

    fn need<T: FromStr>(&self, cli: Option<T>, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.pick(cli, key)?.ok_or_else(|| anyhow!("--{key} is required"))
    }

    fn decoder(&self, f: &DecoderFlags) -> Result<DecoderConfig> {
        let d = DecoderConfig::default();
        Ok(DecoderConfig { omega: self.or(f.omega, "omega", d.omega)?, tie: self.or(f.tie, "tie", d.tie)? })
    }

    /// The code from `--code` or config, the Tanner code when neither is set.
    fn code(&self, cli: Option<PathBuf>) -> Result<TannerGraph> {
        match self.pick(cli, "code")? {
            None => Ok(build_tanner_155()),
            Some(p) => {
                let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                Ok(parse_alist(&text).with_context(|| format!("parsing {}", p.display()))?.with_inferred_qc())
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|e| anyhow!("bad list item {t:?}: {e}")))
        .collect()
}

/// A builtin id, or a rule file named after its stem.
fn load_rule(name: &str) -> Result<FaidRule> {
    let path = Path::new(name);
    if path.is_file() {
        let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name);
        return FaidRule::parse(id, &read(path)?).with_context(|| format!("parsing {}", path.display()));
    }
    builtin(name).with_context(|| format!("{name:?} is neither a file nor a builtin rule"))
}

fn dset_rules(dset: &DiversitySet, dir: Option<&Path>) -> Result<Vec<FaidRule>> {
    dset.rules
        .iter()
        .map(|id| match dir.map(|d| d.join(format!("{id}.rule"))) {
            Some(p) if p.is_file() => load_rule(p.to_str().unwrap_or(id)),
            _ => load_rule(id),
        })
        .collect()
}

fn load_dset(settings: &Settings, cli: Option<PathBuf>) -> Result<DiversitySet> {
    let p: PathBuf = settings.need(cli, "dset")?;
    DiversitySet::parse(&read(&p)?).with_context(|| format!("parsing {}", p.display()))
}

/// Trapping sets with their enumeration bound, read from the `# max_a A max_b B` header.
fn load_classes(g: &TannerGraph, path: &Path) -> Result<((usize, usize), Vec<TsClass>)> {
    let text = read(path)?;
    let bound = text
        .lines()
        .find_map(|l| {
            let mut it = l.strip_prefix("# max_a ")?.split_whitespace();
            let a = it.next()?.parse().ok()?;
            (it.next()? == "max_b").then_some(())?;
            Some((a, it.next()?.parse().ok()?))
        })
        .ok_or_else(|| anyhow!("{} lacks a `# max_a A max_b B` header", path.display()))?;
    let sets = parse_ts_list(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((bound, reduce_by_homomorphism(g, &sets)?))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let s = Settings::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Code(CodeCmd::BuildTanner { out }) => {
            emit(s.pick(out, "out")?.as_deref(), &serialize_alist(&build_tanner_155()))?;
        }
        Cmd::Code(CodeCmd::Info { alist }) => {
            let g = s.code(Some(alist))?;
            let (vd, cd) = g.degree_profile();
            println!("N {}", g.n_var());
            println!("M {}", g.n_chk());
            println!("K {}", g.dimension());
            println!("girth {}", g.girth().map_or("inf".to_string(), |x| x.to_string()));
            println!("variable degrees {vd:?}");
            println!("check degrees {cd:?}");
            if let Some(qc) = g.qc() {
                println!("quasi-cyclic L {} alpha {} beta {}", qc.block, qc.alpha, qc.beta);
            }
        }
        Cmd::Rule(RuleCmd::Validate { file }) => {
            let rule = load_rule(file.to_str().unwrap_or_default())?;
            let report = validate_rule(&rule);
            println!("{}: {report}", rule.id());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Rule(RuleCmd::ListBuiltin { tables }) => {
            for r in builtin_rules() {
                if tables {
                    println!("# {}\n{}", r.id(), r.to_text());
                } else {
                    println!("{} levels {}", r.id(), r.levels());
                }
            }
        }
        Cmd::Decode(a) => {
            let g = s.code(a.code)?;
            let rule = load_rule(&s.or(a.rule, "rule", "D0".to_string())?)?;
            let iters = s.or(a.iters, "iters", 100)?;
            let errors: Vec<usize> = parse_list(&a.errors)?;
            let mut word = vec![0u8; g.n_var()];
            for &e in &errors {
                *word.get_mut(e).ok_or_else(|| anyhow!("error position {e} out of range"))? ^= 1;
            }
            let mut dec = Decoder::new(&g, s.decoder(&a.dec)?)?;
            let out = dec.decode_bits(&rule, &word, iters)?;
            let correct = out.converged && out.estimate.iter().all(|&b| b == 0);
            println!("rule {} converged {} iterations {} correct {}", rule.id(), out.converged, out.iterations_used, correct);
        }
        Cmd::Ts(TsCmd::Enum { code, max_a, max_b, out, reduce, keep_leaves, allow_large }) => {
            let g = s.code(code)?;
            let (a, b) = (s.need(max_a, "max-a")?, s.need(max_b, "max-b")?);
            let mut cfg = EnumConfig::new(a, b);
            cfg.leafless = !keep_leaves;
            if allow_large {
                cfg = cfg.allow_large();
            }
            let sets = enumerate_trapping_sets(&g, &cfg)?;
            let mut text = format!("# max_a {a} max_b {b}\n");
            if reduce {
                let classes = reduce_by_homomorphism(&g, &sets)?;
                for ((a, b), (total, sigma, reduced)) in ab_summary(&classes) {
                    eprintln!("({a},{b}) total {total} sigma {sigma} reduced {reduced}");
                }
                text += &write_ts_list(classes.iter().flat_map(|c| &c.representatives));
            } else {
                eprintln!("{} sets", sets.len());
                text += &write_ts_list(&sets);
            }
            emit(s.pick(out, "out")?.as_deref(), &text)?;
        }
        Cmd::Ts(TsCmd::Classify { code, set }) => {
            let g = s.code(code)?;
            let vars: Vec<usize> = parse_list(&set)?;
            if let Some(v) = vars.iter().find(|&&v| v >= g.n_var()) {
                bail!("variable {v} out of range");
            }
            let ts = classify(&g, &vars);
            println!("a {} b {} type {}", ts.a(), ts.b(), ts.type_label());
        }
        Cmd::Eset(EsetCmd::Build { code, ts, t, a, b, out, flags }) => {
            let g = s.code(code)?;
            let (coverage, classes) = load_classes(&g, &ts)?;
            let group = SymmetryGroup::for_graph(&g).ok();
            let e = build_error_set(&classes, coverage, t, (a, b), group.as_ref(), flags.options())?;
            eprintln!(
                "{}: {} patterns, raw {}, reduction factor {:.3e}",
                e.label,
                e.len(),
                e.raw_count,
                reduction_factor(g.n_var(), t, e.len())
            );
            emit(s.pick(out, "out")?.as_deref(), &write_error_set(&e))?;
        }
        Cmd::Div(DivCmd::Select { code, base, t, b, k_start, iters, ts, cache, trajectory, out, flags, dec }) => {
            let g = s.code(code)?;
            let base_spec = s.or(base, "base", "builtin".to_string())?;
            let base: Vec<FaidRule> = if base_spec == "builtin" {
                builtin_rules()
            } else {
                base_spec.split(',').map(|r| load_rule(r.trim())).collect::<Result<_>>()?
            };
            let k_start = s.or(k_start, "k-start", t.min(5))?;
            if k_start == 0 || k_start > t {
                bail!("k-start must lie in 1..={t}");
            }
            let iters = s.need(iters, "iters")?;
            let (coverage, classes) = match s.pick(ts, "ts")? {
                Some(p) => load_classes(&g, &p)?,
                None => {
                    let sets = enumerate_trapping_sets(&g, &EnumConfig::new(2 * t, b).allow_large())?;
                    ((2 * t, b), reduce_by_homomorphism(&g, &sets)?)
                }
            };
            let group = SymmetryGroup::for_graph(&g).ok();
            let stages = (k_start..=t)
                .map(|k| Ok((k, build_error_set(&classes, coverage, k, (2 * k, b), group.as_ref(), flags.options())?)))
                .collect::<Result<Vec<_>>>()?;
            let cache = s.pick(cache, "cache")?.map(MatrixCache::new);
            let ids: Vec<String> = base.iter().map(|r| r.id().to_string()).collect();
            match select_diversity(&g, &base, &stages, iters, s.decoder(&dec)?, cache.as_ref()) {
                Ok(sel) => {
                    if let Some(p) = s.pick(trajectory, "trajectory")? {
                        emit(Some(&p), &selection_csv(&sel.stages, &ids))?;
                    }
                    emit(s.pick(out, "out")?.as_deref(), &sel.set.to_string())?;
                }
                Err(SelectionError::Exhausted { k, residual, partial, stages }) => {
                    if let Some(p) = s.pick(trajectory, "trajectory")? {
                        emit(Some(&p), &selection_csv(&stages, &ids))?;
                    }
                    eprint!("partial set:\n{partial}");
                    for r in &residual {
                        eprintln!("uncorrected {:?}", r.support());
                    }
                    eprintln!("selection failed at weight {k}: {} patterns remain", residual.len());
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Cmd::Div(DivCmd::Check { code, dset, eset, rules_dir, dec }) => {
            let g = s.code(code)?;
            let dset = load_dset(&s, dset)?;
            let rules = dset_rules(&dset, s.pick(rules_dir, "rules-dir")?.as_deref())?;
            let e = parse_error_set(&read(&eset)?).with_context(|| format!("parsing {}", eset.display()))?;
            let residual = coverage_check(&g, &rules, dset.n_iter, s.decoder(&dec)?, &e)?;
            for r in &residual {
                println!("uncorrected {:?}", r.support());
            }
            println!("{}: {} of {} patterns uncorrected", e.label, residual.len(), e.len());
            if !residual.is_empty() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Div(DivCmd::Guarantee { code, dset, t, mode, eset, first_failure, ceiling, rules_dir, out, dec }) => {
            let g = s.code(code)?;
            let dset = load_dset(&s, dset)?;
            let rules = dset_rules(&dset, s.pick(rules_dir, "rules-dir")?.as_deref())?;
            let mode = match mode {
                ModeArg::Exhaustive => GuaranteeMode::Exhaustive,
                ModeArg::Qc => GuaranteeMode::Qc,
                ModeArg::Eset => {
                    let p: PathBuf = s.need(eset, "eset")?;
                    GuaranteeMode::ErrorSet(parse_error_set(&read(&p)?).with_context(|| format!("parsing {}", p.display()))?)
                }
            };
            let d = GuaranteeOptions::default();
            let opts = GuaranteeOptions { first_failure, ceiling: s.or(ceiling, "ceiling", d.ceiling)?, ..d };
            let v = check_guarantee(&g, &rules, dset.n_iter, s.decoder(&dec)?, t, &mode, opts)?;
            for f in &v.failures {
                println!("uncorrected {:?}", f.support());
            }
            println!(
                "t {} mode {} checked {} represented {} failures {} {}",
                v.t,
                v.mode,
                v.checked,
                v.represented,
                v.failing_represented,
                if v.passed() { "PASS" } else { "FAIL" }
            );
            if let Some(p) = s.pick(out, "out")? {
                emit(Some(&p), &guarantee_csv(std::slice::from_ref(&v)))?;
            }
            if !v.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Sim(SimCmd::Fer { code, dset, alpha, max_frames, target_errors, seed, workers, stop_stage, rules_dir, out, dec }) => {
            let g = s.code(code)?;
            let dset = load_dset(&s, dset)?;
            let rules = dset_rules(&dset, s.pick(rules_dir, "rules-dir")?.as_deref())?;
            let stages = dset_stages(&dset, &rules);
            let alphas: Vec<f64> = parse_list(&s.need(alpha, "alpha")?)?;
            let d = FerConfig::default();
            let base = FerConfig {
                max_frames: s.or(max_frames, "max-frames", d.max_frames)?,
                target_errors: s.or(target_errors, "target-errors", d.target_errors)?,
                seed: s.or(seed, "seed", d.seed)?,
                workers: s.or(workers, "workers", std::thread::available_parallelism().map_or(1, |n| n.get()))?,
                stop_stage: s.or(stop_stage, "stop-stage", stages.len().saturating_sub(1))?,
                ..d
            };
            let dcfg = s.decoder(&dec)?;
            let points = alphas
                .iter()
                .map(|&alpha| {
                    let p = simulate_fer(&g, &stages, dcfg, &FerConfig { alpha, ..base })?;
                    eprintln!("alpha {alpha}: {} frames, errors {:?}", p.frames, p.errors);
                    Ok(p)
                })
                .collect::<Result<Vec<_>>>()?;
            emit(s.pick(out, "out")?.as_deref(), &fer_csv(&points))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
