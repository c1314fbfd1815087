//! `graphlets`: exact graphlet census, analytics and benchmarks from the
//! command line.
//!
//! Errors are reported on stderr as one JSON object. Exit status is 2 for
//! usage errors, 1 for IO and parse errors and 3 when the census fails an
//! internal consistency check.

mod error;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graphlet_core::analytics::{
    feature_matrix, gfd, gfd_distance, rank_from_micro, write_ranking_csv, DistanceMetric, EdgePattern, FeatureOptions,
    GfdScope, GfdVector,
};
use graphlet_core::census::{census_with_micro, write_micro_csv, CountsMap};
use graphlet_core::graph::{load_edge_list_file, IdMode};
use graphlet_core::parallel::{available_workers, measure_speedup, EdgeOrdering, DEFAULT_BATCH_SIZE};
use graphlet_core::{generators, graphlet_census, Graph, GraphletClass, GraphletFrequencies, ParallelConfig, ParseOptions};
use serde::Serialize;
use serde_json::json;

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "graphlets", version, about = "Exact census of all 2-, 3- and 4-node graphlets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count all 17 graphlet classes.
    Count(CountArgs),
    /// Graphlet frequency distribution of one or more graphs.
    Gfd(GfdArgs),
    /// Rank edges by how many graphlets of a pattern contain them.
    Rank(RankArgs),
    /// Feature matrix with one row per graph.
    Features(FeaturesArgs),
    /// Time the census at several worker counts.
    Bench(BenchArgs),
    /// Start the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct RunOptions {
    /// Worker threads [default: available cores]
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Edges handed to a worker at a time.
    #[arg(long, value_name = "B", default_value_t = DEFAULT_BATCH_SIZE)]
    batch: usize,
    /// Order in which edges are scheduled.
    #[arg(long, default_value = "input",
          value_parser = PossibleValuesParser::new(["input", "degree"]).map(|s| s.parse::<EdgeOrdering>().unwrap()))]
    ordering: EdgeOrdering,
    /// Treat vertex ids as contiguous integers from BASE, keeping isolated ids
    /// inside the range. By default ids are remapped and only vertices with an
    /// edge exist.
    #[arg(long, value_name = "BASE")]
    contiguous_ids: Option<u64>,
}

impl RunOptions {
    fn parallel(&self) -> Result<ParallelConfig, CliError> {
        let config = ParallelConfig {
            workers: self.threads.unwrap_or_else(available_workers),
            batch_size: self.batch,
            ordering: self.ordering,
        };
        config.validate()?;
        Ok(config)
    }

    fn parse_options(&self) -> ParseOptions {
        match self.contiguous_ids {
            Some(base) => ParseOptions { id_mode: IdMode::Contiguous { base }, ..ParseOptions::default() },
            None => ParseOptions::default(),
        }
    }

    fn load(&self, path: &Path) -> Result<Graph, CliError> {
        load_edge_list_file(path, &self.parse_options()).map_err(|e| match CliError::from(e) {
            CliError::Io(m) => CliError::Io(format!("{}: {m}", path.display())),
            CliError::Parse { line, message } => CliError::Parse { line, message: format!("{}: {message}", path.display()) },
            other => other,
        })
    }
}

#[derive(Debug, Args)]
struct CountArgs {
    /// Edge list file.
    #[arg(short, long)]
    input: PathBuf,
    /// Output file [default: stdout]
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write per-edge role counts as CSV to this path.
    #[arg(long, value_name = "PATH")]
    micro: Option<PathBuf>,
    /// Leave `runtime_seconds` out so outputs compare byte for byte.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    run: RunOptions,
}

#[derive(Debug, Args)]
struct GfdArgs {
    /// Edge list files. With more than one, pairwise distances are included.
    #[arg(short, long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Graphlet size.
    #[arg(long, default_value_t = 4, value_parser = PossibleValuesParser::new(["3", "4"]).map(|s| s.parse::<usize>().unwrap()))]
    k: usize,
    #[arg(long, default_value = "connected",
          value_parser = PossibleValuesParser::new(["connected", "all"]).map(|s| s.parse::<GfdScope>().unwrap()))]
    scope: GfdScope,
    #[arg(long, default_value = "euclidean",
          value_parser = PossibleValuesParser::new(["euclidean", "cosine"]).map(|s| s.parse::<DistanceMetric>().unwrap()))]
    metric: DistanceMetric,
    #[command(flatten)]
    run: RunOptions,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long,
          value_parser = PossibleValuesParser::new(["star4", "clique4", "triangle", "cycle4"]).map(|s| s.parse::<EdgePattern>().unwrap()))]
    pattern: EdgePattern,
    /// Number of edges to report.
    #[arg(long, value_name = "K", default_value_t = 10)]
    top: usize,
    #[command(flatten)]
    run: RunOptions,
}

#[derive(Debug, Args)]
struct FeaturesArgs {
    /// Edge list files or directories of them.
    #[arg(short, long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// log(1 + count) before normalizing.
    #[arg(long)]
    log_scale: bool,
    /// Divide each value by the total of its size group.
    #[arg(long)]
    normalize: bool,
    /// Append the census time of each graph.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    run: RunOptions,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Edge list file. Without it a synthetic graph is generated.
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Edge count of the synthetic graph.
    #[arg(long, default_value_t = 1_000_000)]
    synthetic_edges: usize,
    /// Seed of the synthetic graph.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Worker counts to time, comma separated; the first is the baseline.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    workers: Vec<usize>,
    #[command(flatten)]
    run: RunOptions,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    addr: SocketAddr,
    /// Largest accepted upload in edges.
    #[arg(long, default_value_t = 5_000_000)]
    max_edges: usize,
    /// Idle session lifetime in seconds.
    #[arg(long, default_value_t = 3600)]
    session_ttl: u64,
    #[command(flatten)]
    run: RunOptions,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim_end().to_string());
            eprintln!("{}", err.to_json());
            std::process::exit(err.exit_code());
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("{}", err.to_json());
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Count(a) => count(a),
        Command::Gfd(a) => gfd_cmd(a),
        Command::Rank(a) => rank(a),
        Command::Features(a) => features(a),
        Command::Bench(a) => bench(a),
        Command::Serve(a) => serve(a),
    }
}

fn write_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), CliError> {
    let result = match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io(p.display(), e))?;
            let mut w = BufWriter::new(file);
            body(&mut w).and_then(|_| w.flush())
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            body(&mut w).and_then(|_| w.flush())
        }
    };
    result.map_err(|e| CliError::io("writing output", e))
}

#[derive(Serialize)]
struct CountReport<'a> {
    n: u64,
    m: u64,
    counts: CountsMap<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_seconds: Option<f64>,
}

fn count(a: CountArgs) -> Result<(), CliError> {
    let config = a.run.parallel()?;
    let g = a.run.load(&a.input)?;
    // timed around the census only, not parsing or output
    let start = Instant::now();
    let (freqs, micro) = match &a.micro {
        Some(_) => {
            let (f, m) = census_with_micro(&g, &config)?;
            (f, Some(m))
        }
        None => (graphlet_census(&g, &config)?, None),
    };
    let seconds = start.elapsed().as_secs_f64();
    if let (Some(path), Some(micro)) = (&a.micro, &micro) {
        write_output(Some(path), |w| write_micro_csv(&g, micro, w))?;
    }
    let runtime = (!a.no_timing).then_some(seconds);
    write_output(a.output.as_deref(), |w| match a.format {
        Format::Json => {
            let report = CountReport { n: freqs.n(), m: freqs.m(), counts: CountsMap(freqs.counts()), runtime_seconds: runtime };
            serde_json::to_writer(&mut *w, &report)?;
            writeln!(w)
        }
        Format::Csv => write_counts_csv(&freqs, w),
    })
}

fn write_counts_csv(freqs: &GraphletFrequencies, w: &mut dyn Write) -> std::io::Result<()> {
    writeln!(w, "class,name,count")?;
    for c in GraphletClass::ALL {
        writeln!(w, "{},{},{}", c.id(), c.name(), freqs.get(c))?;
    }
    Ok(())
}

fn gfd_cmd(a: GfdArgs) -> Result<(), CliError> {
    let config = a.run.parallel()?;
    let mut vectors: Vec<(String, GfdVector)> = Vec::with_capacity(a.input.len());
    for path in &a.input {
        let g = a.run.load(path)?;
        let freqs = graphlet_census(&g, &config)?;
        vectors.push((path.display().to_string(), gfd(&freqs, a.k, a.scope)?));
    }
    let mut distances = vec![vec![0.0; vectors.len()]; vectors.len()];
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let d = gfd_distance(&vectors[i].1, &vectors[j].1, a.metric)?;
            distances[i][j] = d;
            distances[j][i] = d;
        }
    }
    write_output(a.output.as_deref(), |w| {
        match a.format {
            Format::Json if vectors.len() == 1 => serde_json::to_writer(&mut *w, &vectors[0].1)?,
            Format::Json => {
                let inputs: Vec<_> = vectors.iter().map(|(name, v)| json!({ "input": name, "gfd": v })).collect();
                let metric = match a.metric {
                    DistanceMetric::Euclidean => "euclidean",
                    DistanceMetric::Cosine => "cosine",
                };
                serde_json::to_writer(&mut *w, &json!({ "inputs": inputs, "metric": metric, "distances": distances }))?
            }
            Format::Csv => {
                write!(w, "input")?;
                for c in &vectors[0].1.classes {
                    write!(w, ",{}", c.id())?;
                }
                writeln!(w)?;
                for (name, v) in &vectors {
                    write!(w, "{name}")?;
                    for x in &v.values {
                        write!(w, ",{x}")?;
                    }
                    writeln!(w)?;
                }
                return Ok(());
            }
        }
        writeln!(w)
    })
}

fn rank(a: RankArgs) -> Result<(), CliError> {
    let config = a.run.parallel()?;
    let g = a.run.load(&a.input)?;
    let (_, micro) = census_with_micro(&g, &config)?;
    let ranked = rank_from_micro(&g, &micro, a.pattern, a.top);
    write_output(a.output.as_deref(), |w| match a.format {
        Format::Csv => write_ranking_csv(&ranked, w),
        Format::Json => {
            serde_json::to_writer(&mut *w, &ranked)?;
            writeln!(w)
        }
    })
}

// Directories expand to the regular files inside them, sorted by name.
fn expand_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| CliError::io(p.display(), e))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|f| f.is_file())
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn features(a: FeaturesArgs) -> Result<(), CliError> {
    let config = a.run.parallel()?;
    let options = FeatureOptions { log_scale: a.log_scale, normalize: a.normalize };
    let files = expand_inputs(&a.input)?;
    let parse = a.run.parse_options();
    let graphs = files.iter().map(|f| {
        let name = f.file_stem().map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
        (name, load_edge_list_file(f, &parse))
    });
    let matrix = feature_matrix(graphs, &config, &options);
    for failure in &matrix.failures {
        eprintln!("{}", json!({ "code": "skipped", "input": failure.name, "message": failure.reason }));
    }
    if matrix.rows.is_empty() {
        return Err(CliError::Parse { line: None, message: "no input graph could be counted".into() });
    }
    write_output(a.output.as_deref(), |w| matrix.write_csv(&options, a.timing, w))
}

fn bench(a: BenchArgs) -> Result<(), CliError> {
    let base = a.run.parallel()?;
    if a.workers.is_empty() || a.workers.contains(&0) {
        return Err(CliError::Usage("worker counts must be positive".into()));
    }
    let g = match &a.input {
        Some(p) => a.run.load(p)?,
        None => {
            // 8 attachments per vertex gives about 8 edges per vertex
            let n = (a.synthetic_edges / 8).max(9);
            generators::preferential_attachment(n, 8, a.seed)
        }
    };
    let rows = measure_speedup(&g, &a.workers, &base)?;
    write_output(a.output.as_deref(), |w| match a.format {
        Format::Csv => {
            writeln!(w, "workers,seconds,speedup")?;
            for r in &rows {
                writeln!(w, "{},{:.6},{:.3}", r.workers, r.seconds, r.speedup)?;
            }
            Ok(())
        }
        Format::Json => {
            let report = json!({
                "n": g.num_vertices(),
                "m": g.num_edges(),
                "hardware_threads": available_workers(),
                "rows": rows,
            });
            serde_json::to_writer(&mut *w, &report)?;
            writeln!(w)
        }
    })
}

fn serve(a: ServeArgs) -> Result<(), CliError> {
    let config = graphlet_service::ServiceConfig {
        max_edges: a.max_edges,
        session_ttl: Duration::from_secs(a.session_ttl),
        parallel: a.run.parallel()?,
        ..Default::default()
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::io("starting runtime", e))?;
    eprintln!("{}", json!({ "listening": a.addr.to_string() }));
    runtime.block_on(graphlet_service::serve(a.addr, config)).map_err(|e| CliError::io(a.addr, e))
}
