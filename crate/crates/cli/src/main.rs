//! `tametop`: command-line front end.
//!
//! Exit codes: 0 success, 1 computation or input error, 2 verification failure.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Float;
use tametop::acceptance::{self, CriterionResult, DEFAULT_SEED};
use tametop::cellcomplex::{check_rank_inequalities_seeded, StratComplex, ORACLE_MAX};
use tametop::ordinal::Ordinal;
use tametop::tame1d::{parse_set, stratify_line, verify_stratification, Tame1DSet};
use tametop::whitney::{check_condition, gallery_source, Condition, PairSpec, VerdictKind, GALLERY};

#[derive(Parser)]
#[command(name = "tametop", version, about = "Rank calculus on tame sets and Whitney condition checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Computations on a subset of the line given as a set expression.
    Tame1d {
        action: SetAction,
        expr: String,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Ordinal arithmetic in Cantor normal form (`w^2*3 + w + 4`).
    Ordinal {
        #[command(subcommand)]
        op: OrdinalOp,
    },
    /// Pillay rank and rank inequalities on a stratified complex (JSON file).
    Complex {
        action: ComplexAction,
        path: PathBuf,
        #[arg(long, env = "TAMETOP_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Sampled sets per inequality.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Whitney (a), (b) or Verdier (w) on a gallery pair or a pair file.
    Whitney {
        /// Gallery name or path to a pair file.
        #[arg(long)]
        pair: String,
        #[arg(long)]
        cond: CondArg,
        #[arg(long)]
        scales: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        r0: Option<f64>,
        /// Offset into the low-discrepancy sequence.
        #[arg(long, env = "TAMETOP_SEED", default_value_t = 0)]
        seed: u64,
        /// Exit with 2 unless the verdict matches.
        #[arg(long)]
        expect: Option<ExpectArg>,
        #[arg(long)]
        csv_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Precision::F64)]
        precision: Precision,
    },
    /// Runs the acceptance suite and checks every data file.
    Selftest {
        /// Run only checks with this tag or name fragment.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, env = "TAMETOP_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Directory with complex files and `gallery/`.
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SetAction {
    Rank,
    Frontier,
    Lc,
    Depth,
    Stratify,
    Decompose,
}

#[derive(Subcommand)]
enum OrdinalOp {
    /// Parse and print in normal form.
    Show { a: String },
    /// Ordinary sum `a + b`.
    Add { a: String, b: String },
    /// Natural sum `a ⊕ b`.
    Nsum { a: String, b: String },
    /// `a · r`, `a` added to itself `r` times.
    Mul { a: String, r: u64 },
    Cmp { a: String, b: String },
    /// `ω^n`.
    OmegaPow { n: u64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexAction {
    Validate,
    Rkp,
    Inequalities,
}

#[derive(Clone, Copy, ValueEnum)]
enum CondArg {
    A,
    B,
    W,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectArg {
    #[value(name = "HOLDS", alias = "holds")]
    Holds,
    #[value(name = "FAILS", alias = "fails")]
    Fails,
    #[value(name = "INCONCLUSIVE", alias = "inconclusive")]
    Inconclusive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Precision {
    F32,
    F64,
}

/// `Ok(true)` success, `Ok(false)` verification failure, `Err` computation error.
type Outcome = Result<bool, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Tame1d { action, expr, json } => run_tame1d(action, &expr, json),
        Command::Ordinal { op } => run_ordinal(op),
        Command::Complex { action, path, seed, samples } => run_complex(action, &path, seed, samples),
        Command::Whitney { pair, cond, scales, samples, r0, seed, expect, csv_out, precision } => {
            let opts = WhitneyOpts { scales, samples, r0, seed, expect, csv_out };
            match precision {
                Precision::F64 => run_whitney::<f64>(&pair, cond, &opts),
                Precision::F32 => run_whitney::<f32>(&pair, cond, &opts),
            }
        }
        Command::Selftest { filter, seed, data } => run_selftest(filter.as_deref(), seed, data),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn s<E: Display>(e: E) -> String {
    e.to_string()
}

fn json_out(v: serde_json::Value) -> Outcome {
    println!("{}", serde_json::to_string_pretty(&v).map_err(s)?);
    Ok(true)
}

fn run_tame1d(action: SetAction, expr: &str, json: bool) -> Outcome {
    let a = parse_set(expr).map_err(s)?;
    match action {
        SetAction::Rank => {
            let r = a.cb_rank().map_err(s)?;
            if json {
                return json_out(serde_json::json!({ "cb_rank": r.to_string() }));
            }
            println!("cb_rank: {r}");
        }
        SetAction::Frontier => {
            let f = a.frontier().map_err(s)?;
            if json {
                return json_out(serde_json::json!(f.view()));
            }
            println!("frontier: {}", f.as_expr());
        }
        SetAction::Lc => {
            let nlc = a.nlc_part().map_err(s)?;
            if json {
                return json_out(serde_json::json!({ "locally_closed": nlc.is_empty(), "nlc": nlc.view() }));
            }
            println!("locally_closed: {}", if nlc.is_empty() { "yes" } else { "no" });
            println!("nlc: {}", nlc.as_expr());
        }
        SetAction::Depth => {
            let d = a.constructible_depth().map_err(s)?;
            if json {
                return json_out(serde_json::json!({ "constructible_depth": d }));
            }
            println!("constructible_depth: {d}");
        }
        SetAction::Stratify => {
            let family = [a];
            let st = stratify_line(&family).map_err(s)?;
            let verdict = verify_stratification(&st, &family);
            if json {
                json_out(serde_json::json!({
                    "strata": st.views(),
                    "rounds": st.rounds,
                    "frontier_condition": verdict.is_ok(),
                }))?;
            } else {
                for (i, stratum) in st.strata.iter().enumerate() {
                    let fr: Vec<String> = st.frontier[i].iter().map(|j| format!("S{j}")).collect();
                    println!("S{i} dim={} {} frontier=[{}]", stratum.dim, stratum.set.as_expr(), fr.join(", "));
                }
                println!("rounds: {}", st.rounds);
                match &verdict {
                    Ok(()) => println!("frontier_condition: PASS"),
                    Err(why) => println!("frontier_condition: FAIL {why}"),
                }
            }
            return Ok(verdict.is_ok());
        }
        SetAction::Decompose => {
            let pieces = a.decompose_locally_closed().map_err(s)?;
            // discrete layers only exist without interior
            let layers = if a.interior().map_err(s)?.is_empty() {
                let n = a.cb_rank().map_err(s)?.as_finite().expect("finite rank on the line") as usize;
                Some(a.decompose_discrete(n).map_err(s)?)
            } else {
                None
            };
            if json {
                let pv: Vec<_> = pieces.iter().map(Tame1DSet::view).collect();
                let lv: Option<Vec<_>> = layers.as_ref().map(|l| l.iter().map(Tame1DSet::view).collect());
                return json_out(serde_json::json!({ "locally_closed": pv, "discrete": lv }));
            }
            for (i, p) in pieces.iter().enumerate() {
                println!("lc[{i}]: {}", p.as_expr());
            }
            for (i, l) in layers.iter().flatten().enumerate() {
                println!("discrete[{i}]: {}", l.as_expr());
            }
        }
    }
    Ok(true)
}

fn ord(src: &str) -> Result<Ordinal, String> {
    src.parse().map_err(|e| format!("'{src}': {e}"))
}

fn run_ordinal(op: OrdinalOp) -> Outcome {
    let out = match op {
        OrdinalOp::Show { a } => ord(&a)?.to_string(),
        OrdinalOp::Add { a, b } => ord(&a)?.add(&ord(&b)?).to_string(),
        OrdinalOp::Nsum { a, b } => ord(&a)?.natural_sum(&ord(&b)?).to_string(),
        OrdinalOp::Mul { a, r } => ord(&a)?.mul_nat(r).map_err(s)?.to_string(),
        OrdinalOp::Cmp { a, b } => match ord(&a)?.cmp(&ord(&b)?) {
            std::cmp::Ordering::Less => "<".into(),
            std::cmp::Ordering::Equal => "=".into(),
            std::cmp::Ordering::Greater => ">".into(),
        },
        OrdinalOp::OmegaPow { n } => Ordinal::omega_pow(Ordinal::from(n)).to_string(),
    };
    println!("{out}");
    Ok(true)
}

fn load_complex(path: &Path) -> Result<StratComplex, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    StratComplex::from_json(&src)
        .and_then(StratComplex::validated)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn run_complex(action: ComplexAction, path: &Path, seed: u64, samples: usize) -> Outcome {
    let k = load_complex(path)?;
    match action {
        ComplexAction::Validate => {
            println!("valid: {} cells, max dim {}", k.len(), k.max_dim(k.all()).map_or("-".into(), |d| d.to_string()));
            println!("dimension_graded: {}", k.is_dimension_graded());
        }
        ComplexAction::Rkp => match k.pillay_rank(k.all()) {
            Some(r) => println!("rkP = {r}"),
            None => println!("rkP = -1"),
        },
        ComplexAction::Inequalities => {
            let checks = check_rank_inequalities_seeded(&k, seed, samples);
            for c in &checks {
                println!("{c}");
            }
            return Ok(checks.iter().all(|c| c.pass));
        }
    }
    Ok(true)
}

struct WhitneyOpts {
    scales: Option<usize>,
    samples: Option<usize>,
    r0: Option<f64>,
    seed: u64,
    expect: Option<ExpectArg>,
    csv_out: Option<PathBuf>,
}

fn run_whitney<T: Float + Display>(pair: &str, cond: CondArg, o: &WhitneyOpts) -> Outcome {
    let src = if GALLERY.contains(&pair) {
        gallery_source(pair).map_err(s)?.to_string()
    } else {
        std::fs::read_to_string(pair).map_err(|e| format!("{pair}: {e}"))?
    };
    let mut spec: PairSpec<T> = PairSpec::from_json(&src).map_err(|e| format!("{pair}: {e}"))?;
    if let Some(n) = o.scales {
        spec.scales = n;
    }
    if let Some(n) = o.samples {
        spec.samples = n;
    }
    if let Some(r) = o.r0 {
        spec.r0 = T::from(r).ok_or("r0 is not representable")?;
    }
    spec = spec.with_seed(o.seed);
    spec.validate().map_err(s)?;
    let condition = match cond {
        CondArg::A => Condition::A,
        CondArg::B => Condition::B,
        CondArg::W => Condition::W,
    };
    let (v, sweep) = check_condition(condition, &spec).map_err(s)?;
    let csv = sweep.to_csv();
    println!("pair: {}", spec.name);
    println!("condition: {condition}");
    print!("{csv}");
    if sweep.rank_deficient > 0 {
        println!("rank_deficient_samples: {}", sweep.rank_deficient);
    }
    println!("verdict: {}", v.kind);
    println!("margin: {:.3}", v.margin);
    if let Some(path) = &o.csv_out {
        std::fs::write(path, &csv).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(match o.expect {
        None => true,
        Some(e) => {
            let want = match e {
                ExpectArg::Holds => VerdictKind::Holds,
                ExpectArg::Fails => VerdictKind::Fails,
                ExpectArg::Inconclusive => VerdictKind::Inconclusive,
            };
            if want != v.kind {
                println!("expected: {want}");
            }
            want == v.kind
        }
    })
}

fn default_data_dir() -> PathBuf {
    let local = PathBuf::from("data");
    if local.join("gallery").is_dir() {
        local
    } else {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
    }
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    Ok(v)
}

/// Documented ranks of the shipped complexes.
const KNOWN_RANKS: [(&str, u64); 2] = [("chain3.json", 3), ("interval.json", 1)];

fn complex_check(path: &Path, k: &StratComplex, seed: u64) -> CriterionResult {
    let name = path.file_name().map_or("?".into(), |n| n.to_string_lossy().into_owned());
    let mut problems = Vec::new();
    let rank = k.pillay_rank(k.all());
    if let Some((_, want)) = KNOWN_RANKS.iter().find(|(f, _)| *f == name) {
        if rank != Some(Ordinal::from(*want)) {
            problems.push(format!("rkP = {rank:?}, documented {want}"));
        }
    }
    if k.len() <= ORACLE_MAX {
        match k.pillay_rank_oracle(k.all()) {
            Ok(o) if o == rank => {}
            Ok(o) => problems.push(format!("oracle gives {o:?}")),
            Err(e) => problems.push(e.to_string()),
        }
    }
    for c in check_rank_inequalities_seeded(k, seed, 64) {
        if !c.pass {
            problems.push(c.to_string());
        }
    }
    let shown = rank.map_or("-1".into(), |r| r.to_string());
    CriterionResult {
        id: 0,
        name: "data-complex",
        pass: problems.is_empty(),
        detail: if problems.is_empty() { format!("{name}: rkP = {shown}, oracle and inequalities agree") } else { format!("{name}: {}", problems.join("; ")) },
    }
}

fn matches(filter: Option<&str>, tags: &[&str]) -> bool {
    filter.map_or(true, |f| {
        let f = f.to_ascii_lowercase();
        tags.iter().any(|t| t.contains(f.as_str()))
    })
}

fn run_selftest(filter: Option<&str>, seed: u64, data: Option<PathBuf>) -> Outcome {
    let dir = data.unwrap_or_else(default_data_dir);
    let mut results = Vec::new();
    // load every data file first: unreadable input is an error, not a failed check
    if matches(filter, &["data", "complex", "cellcomplex"]) {
        for path in json_files(&dir)? {
            let k = load_complex(&path)?;
            results.push(complex_check(&path, &k, seed));
        }
    }
    if matches(filter, &["data", "whitney", "gallery"]) {
        let gdir = dir.join("gallery");
        for path in json_files(&gdir)? {
            let src = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let spec = PairSpec::<f64>::from_json(&src).map_err(|e| format!("{}: {e}", path.display()))?;
            let stem = path.file_stem().map_or(String::new(), |s| s.to_string_lossy().into_owned());
            let builtin = gallery_source(&stem).ok();
            let pass = builtin.map_or(true, |b| b == src);
            results.push(CriterionResult {
                id: 0,
                name: "data-pair",
                pass,
                detail: if pass {
                    format!("{}: {} charts on X, {} on Y", stem, spec.x.charts.len(), spec.y.charts.len())
                } else {
                    format!("{}: differs from the pair compiled into the binary", path.display())
                },
            });
        }
    }
    if matches(filter, &["ordinal", "ordinal-laws"]) {
        results.push(acceptance::ordinal_laws(seed));
    }
    results.extend(acceptance::run(filter, seed));
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("selftest: {} passed, {failed} failed (seed {seed})", results.len() - failed);
    Ok(failed == 0)
}
