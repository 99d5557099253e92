use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lyndon_reorder::baseline::{
    effectiveness_verdict, sample_baseline, Metric, MetricSummary, Summary, VerdictReport, DEFAULT_SAMPLES,
};
use lyndon_reorder::corpus::{format_permutation, load_text, read_permutation, DatasetInfo};
use lyndon_reorder::lyndon::FactorizationReport;
use lyndon_reorder::strategies::{
    evaluate, run_strategy, Objective, SearchReport, SearchResult, Strategy, Target, DEFAULT_EXHAUSTIVE_LIMIT,
};
use lyndon_reorder::{duval_factorize, Alphabet, AlphabetOrdering, Error, ParikhVector, Result};

/// Lyndon factorization under alphabet reorderings.
#[derive(Debug, Parser)]
#[command(name = "lyndon-reorder", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for baseline sampling and exhaustive search.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report length, alphabet size and size in MB of a dataset.
    Info(InputArgs),
    /// Factorize a text under an ordering.
    Factorize(FactorizeArgs),
    /// Compute an ordering with a strategy and write it as a permutation file.
    Order(OrderArgs),
    /// Sample random orderings and summarize the resulting k and m.
    Baseline(BaselineArgs),
    /// Search for an ordering optimizing an objective.
    Search(SearchArgs),
    /// Judge whether an ordering beats the random baseline.
    Verdict(VerdictArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    input: PathBuf,

    /// Only read the first B bytes.
    #[arg(long, value_name = "B")]
    max_bytes: Option<u64>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct FactorizeArgs {
    #[command(flatten)]
    input: InputArgs,

    /// identity | mfs | lfs | random:<seed> | file:<path>
    #[arg(long, default_value = "identity")]
    order: OrderingSpec,

    /// Also print factor end offsets.
    #[arg(long)]
    show_boundaries: bool,
}

#[derive(Debug, Args)]
struct SearchOptions {
    /// {min,max}-{k,m}
    #[arg(long, default_value = "max-k")]
    objective: Objective,

    /// Extra evaluations for greedy-bt [default: 10 * sigma].
    #[arg(long)]
    budget: Option<usize>,

    /// Largest alphabet accepted by exhaustive search.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    exhaustive_limit: usize,
}

#[derive(Debug, Args)]
struct OrderArgs {
    #[command(flatten)]
    input: InputArgs,

    /// mfs | lfs | greedy | greedy-bt | exhaustive
    #[arg(long)]
    strategy: Strategy,

    #[command(flatten)]
    search: SearchOptions,

    /// Where to write the permutation; standard output when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[command(flatten)]
    input: InputArgs,

    /// greedy | greedy-bt | exhaustive
    #[arg(long, default_value = "greedy")]
    method: Strategy,

    #[command(flatten)]
    search: SearchOptions,
}

#[derive(Debug, Args)]
struct BaselineArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Also write the per-sample CSV here.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Also write the k and m_pct summaries (JSON array) here.
    #[arg(long, value_name = "PATH")]
    summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerdictArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Ordering to judge: identity | mfs | lfs | random:<seed> | file:<path>
    #[arg(long, default_value = "identity")]
    order: OrderingSpec,

    /// {min,max}-{k,m}; m is judged as a percentage of the text length.
    #[arg(long, default_value = "max-k")]
    objective: Objective,

    /// Use this value instead of evaluating --order.
    #[arg(long)]
    candidate: Option<f64>,

    /// Read the baseline summary from a previous `baseline` run instead of
    /// sampling.
    #[arg(long, value_name = "PATH")]
    baseline_summary: Option<PathBuf>,

    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum OrderingSpec {
    Identity,
    Mfs,
    Lfs,
    Random(u64),
    File(PathBuf),
}

impl FromStr for OrderingSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "identity" => return Ok(OrderingSpec::Identity),
            "mfs" => return Ok(OrderingSpec::Mfs),
            "lfs" => return Ok(OrderingSpec::Lfs),
            _ => {}
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed
                .parse()
                .map(OrderingSpec::Random)
                .map_err(|_| format!("invalid seed {seed:?}"));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(OrderingSpec::File(path.into()));
        }
        Err(format!(
            "unknown ordering {s:?}, expected identity, mfs, lfs, random:<seed> or file:<path>"
        ))
    }
}

impl OrderingSpec {
    fn resolve(&self, text: &[u8], alphabet: &Alphabet) -> Result<AlphabetOrdering> {
        Ok(match self {
            OrderingSpec::Identity => AlphabetOrdering::identity(alphabet),
            OrderingSpec::Mfs => AlphabetOrdering::most_frequent_first(&ParikhVector::new(text, alphabet)?),
            OrderingSpec::Lfs => AlphabetOrdering::least_frequent_first(&ParikhVector::new(text, alphabet)?),
            OrderingSpec::Random(seed) => AlphabetOrdering::random(alphabet, *seed),
            OrderingSpec::File(path) => read_permutation(path, alphabet)?,
        })
    }
}

impl InputArgs {
    fn load(&self) -> Result<Vec<u8>> {
        load_text(&self.input, self.max_bytes)
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.to_owned(),
        source: e,
    })
}

fn cmd_info(args: &InputArgs) -> Result<String> {
    let text = args.load()?;
    let info = DatasetInfo::new(&args.input, &text)?;
    Ok(match args.format {
        Format::Json => to_json(&info),
        Format::Csv => format!("path,n,sigma,size_mb\n{},{},{},{}\n", info.path, info.n, info.sigma, info.size_mb),
        Format::Text => format!(
            "path\t{}\nn\t{}\nsigma\t{}\nsize_mb\t{}\n",
            info.path, info.n, info.sigma, info.size_mb
        ),
    })
}

fn cmd_factorize(args: &FactorizeArgs) -> Result<String> {
    let text = args.input.load()?;
    let alphabet = Alphabet::detect(&text)?;
    let ordering = args.order.resolve(&text, &alphabet)?;
    let f = duval_factorize(&text, &ordering)?;
    let report = FactorizationReport::new(&f, args.show_boundaries);
    let mut out = String::new();
    match args.input.format {
        Format::Json => out = to_json(&report),
        Format::Csv => {
            out.push_str("n,k,m,m_pct\n");
            writeln!(out, "{},{},{},{:.2}", report.n, report.k, report.m, report.m_pct).unwrap();
        }
        Format::Text => {
            writeln!(out, "n\t{}\nk\t{}\nm\t{}\nm_pct\t{:.2}%", report.n, report.k, report.m, report.m_pct).unwrap();
        }
    }
    if let (Some(b), false) = (&report.boundaries, args.input.format == Format::Json) {
        let list: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        writeln!(out, "boundaries\t{}", list.join(" ")).unwrap();
    }
    Ok(out)
}

fn search_result(args: &InputArgs, strategy: Strategy, opts: &SearchOptions) -> Result<SearchResult> {
    let text = args.load()?;
    run_strategy(&text, strategy, opts.objective, opts.budget, opts.exhaustive_limit)
}

fn render_search(result: &SearchResult, format: Format) -> String {
    let report = SearchReport::from(result);
    match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let perm: Vec<String> = report.perm.iter().map(|b| b.to_string()).collect();
            format!(
                "strategy,objective,perm,k,m,evaluations,optimal\n{},{},{},{},{},{},{}\n",
                report.strategy,
                report.objective,
                perm.join(" "),
                report.k,
                report.m,
                report.evaluations,
                report.optimal
            )
        }
        Format::Text => format!(
            "strategy\t{}\nobjective\t{}\nperm\t{}k\t{}\nm\t{}\nm_pct\t{:.2}%\nevaluations\t{}\noptimal\t{}\n",
            report.strategy,
            report.objective,
            format_permutation(&result.ordering),
            report.k,
            report.m,
            result.stats.m_pct(),
            report.evaluations,
            report.optimal
        ),
    }
}

fn cmd_order(args: &OrderArgs) -> Result<String> {
    if args.strategy == Strategy::Identity {
        return Err(Error::Usage(
            "order needs one of mfs, lfs, greedy, greedy-bt, exhaustive".into(),
        ));
    }
    let result = search_result(&args.input, args.strategy, &args.search)
        .map_err(|e| match e {
            e @ Error::AlphabetTooLarge { .. } => {
                Error::Usage(format!("{e}; raise --exhaustive-limit or use greedy / greedy-bt"))
            }
            e => e,
        })?;
    let perm = format_permutation(&result.ordering);
    match &args.out {
        Some(path) => {
            write_file(path, &perm)?;
            Ok(render_search(&result, args.input.format))
        }
        None => {
            let s = result.stats;
            eprintln!("k={} m={} m_pct={:.2}%", s.k, s.m, s.m_pct());
            Ok(perm)
        }
    }
}

fn cmd_search(args: &SearchArgs) -> Result<String> {
    let result = search_result(&args.input, args.method, &args.search)?;
    Ok(render_search(&result, args.input.format))
}

fn cmd_baseline(args: &BaselineArgs) -> Result<String> {
    let text = args.input.load()?;
    let dist = sample_baseline(&text, args.samples, args.seed)?;
    let summaries = [dist.summary(Metric::FactorCount)?, dist.summary(Metric::LongestPct)?];
    let csv = dist.csv_string();
    if let Some(path) = &args.csv {
        write_file(path, &csv)?;
    }
    if let Some(path) = &args.summary {
        write_file(path, &to_json(&summaries))?;
    }
    Ok(match args.input.format {
        Format::Csv => csv,
        Format::Json => to_json(&summaries),
        Format::Text => {
            let mut out = format!("samples\t{}\nseed\t{}\n", dist.n_samples(), dist.base_seed);
            out.push_str("metric\tmin\tq1\tmedian\tq3\tmax\n");
            for ms in &summaries {
                let s = &ms.summary;
                let name = match ms.metric {
                    Metric::FactorCount => "k",
                    Metric::LongestPct => "m_pct",
                };
                writeln!(out, "{name}\t{}\t{}\t{}\t{}\t{}", s.min, s.q1, s.median, s.q3, s.max).unwrap();
            }
            out
        }
    })
}

fn read_summary(path: &Path, metric: Metric) -> Result<Summary> {
    let contents = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_owned(),
        source: e,
    })?;
    let bad = |e: serde_json::Error| Error::MalformedSummary(e.to_string());
    let value: serde_json::Value = serde_json::from_str(&contents).map_err(bad)?;
    let list: Vec<MetricSummary> = if value.is_array() {
        serde_json::from_value(value).map_err(bad)?
    } else {
        vec![serde_json::from_value(value).map_err(bad)?]
    };
    list.into_iter()
        .find(|ms| ms.metric == metric)
        .map(|ms| ms.summary)
        .ok_or_else(|| Error::MalformedSummary(format!("no summary for metric {metric:?}")))
}

fn cmd_verdict(args: &VerdictArgs) -> Result<String> {
    let metric = match args.objective.target {
        Target::FactorCount => Metric::FactorCount,
        Target::LongestFactor => Metric::LongestPct,
    };
    let needs_text = args.candidate.is_none() || args.baseline_summary.is_none();
    let text = if needs_text { Some(args.input.load()?) } else { None };

    let candidate = match (args.candidate, &text) {
        (Some(c), _) => c,
        (None, Some(text)) => {
            let alphabet = Alphabet::detect(text)?;
            let ordering = args.order.resolve(text, &alphabet)?;
            metric.of(&evaluate(text, &ordering)?)
        }
        (None, None) => unreachable!(),
    };
    let summary = match (&args.baseline_summary, &text) {
        (Some(path), _) => read_summary(path, metric)?,
        (None, Some(text)) => sample_baseline(text, args.samples, args.seed)?.summary(metric)?.summary,
        (None, None) => unreachable!(),
    };

    let verdict = effectiveness_verdict(candidate, &summary, args.objective.direction);
    let report = VerdictReport::from(&verdict);
    Ok(match args.input.format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "candidate,direction,side,effective\n{},{},{},{}\n",
            report.candidate,
            report.direction,
            serde_json::to_value(report.side).unwrap().as_str().unwrap(),
            report.effective
        ),
        Format::Text => format!(
            "candidate\t{}\ndirection\t{}\nq1\t{}\nq3\t{}\nside\t{}\neffective\t{}\n",
            report.candidate,
            report.direction,
            summary.q1,
            summary.q3,
            serde_json::to_value(report.side).unwrap().as_str().unwrap(),
            report.effective
        ),
    })
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Info(a) => cmd_info(a),
        Command::Factorize(a) => cmd_factorize(a),
        Command::Order(a) => cmd_order(a),
        Command::Baseline(a) => cmd_baseline(a),
        Command::Search(a) => cmd_search(a),
        Command::Verdict(a) => cmd_verdict(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };

    let outcome = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Usage(e.to_string()))
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };

    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lyndon-reorder: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
