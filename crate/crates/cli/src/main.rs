use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use djgraph::generators::{GenSpec, KRange, Probability, DEFAULT_BOX};
use djgraph_cli::commands::{self, Finished};
use djgraph_cli::search::{Family, SearchConfig};
use djgraph_cli::{parse_claims, CliError, EXIT_INPUT_ERROR, PARALLELISM_ENV};

#[derive(Parser)]
#[command(name = "djgraph", version)]
#[command(about = "Count, analyze and verify disjoint edge pairs in geometric graphs")]
struct Cli {
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for random generators (master seed for search)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Suppress the summary line on stderr
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance in the graph interchange format
    Generate(GenerateArgs),
    /// Aggregate counts and per-vertex data of a graph file
    Analyze { input: PathBuf },
    /// Check claims on a graph file
    Verify {
        input: PathBuf,
        /// Comma-separated claim names, or `all`
        #[arg(long, default_value = "all")]
        claims: String,
        /// Saved analysis report to audit against the graph
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Recount disjoint pairs with the independent oracles
    Oracle { input: PathBuf },
    /// Run a seeded search over a random family
    Search(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Extremal,
    Stars,
    Complete,
    RandomConvex,
    RandomGeneral,
}

#[derive(Args)]
struct GenerateArgs {
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// Width parameter of the extremal family
    #[arg(long)]
    k: Option<usize>,
    /// Accept k = 2 for the extremal family
    #[arg(long)]
    allow_k2: bool,
    /// Edge probability as p/q
    #[arg(long, default_value = "1/2")]
    p: Probability,
    /// Half-width of the coordinate box for random-general
    #[arg(long = "box", default_value_t = DEFAULT_BOX)]
    coord_box: i64,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "random-convex")]
    family: Family,
    #[arg(long, default_value_t = 1000)]
    instances: u64,
    /// Inclusive vertex-count range A:B
    #[arg(long, default_value = "6:14")]
    n_range: String,
    /// Comma-separated edge probabilities
    #[arg(long, default_value = "1/4,1/2,3/4")]
    p: String,
    #[arg(long = "box", default_value_t = DEFAULT_BOX)]
    coord_box: i64,
    /// Redraw instances until every vertex has this degree
    #[arg(long, default_value_t = 0)]
    min_degree: usize,
    /// Comma-separated claim names, or `all`
    #[arg(long, default_value = "all")]
    claims: String,
    /// Worker threads (default: available cores)
    #[arg(long, env = PARALLELISM_ENV)]
    parallelism: Option<usize>,
    #[arg(long)]
    stop_on_violation: bool,
    /// Also write the tally table as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Config(format!("n range {s:?} is not of the form A:B"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_probabilities(s: &str) -> Result<Vec<Probability>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|e| CliError::Config(format!("probability {p:?}: {e}")))
        })
        .collect()
}

fn gen_spec(args: &GenerateArgs, seed: u64) -> Result<GenSpec, CliError> {
    let n = args.n;
    Ok(match args.kind {
        Kind::Extremal => GenSpec::ExtremalGnk {
            n,
            k: args
                .k
                .ok_or_else(|| CliError::Config("extremal needs --k".into()))?,
            k_range: if args.allow_k2 {
                KRange::IncludeTwo
            } else {
                KRange::Strict
            },
        },
        Kind::Stars => GenSpec::DisjointStars { n },
        Kind::Complete => GenSpec::ConvexComplete { n },
        Kind::RandomConvex => GenSpec::RandomConvex { n, p: args.p, seed },
        Kind::RandomGeneral => GenSpec::RandomGeneral {
            n,
            p: args.p,
            seed,
            coord_box: args.coord_box,
        },
    })
}

fn search_config(args: &SearchArgs, seed: u64) -> Result<SearchConfig, CliError> {
    let parallelism = match args.parallelism {
        Some(p) => p,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    Ok(SearchConfig {
        family: args.family,
        n_range: parse_range(&args.n_range)?,
        p: parse_probabilities(&args.p)?,
        coord_box: args.coord_box,
        min_degree: args.min_degree,
        instances: args.instances,
        master_seed: seed,
        claims: parse_claims(&args.claims)?,
        stop_on_violation: args.stop_on_violation,
        parallelism,
    })
}

fn run(cli: &Cli) -> Result<Finished, CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Generate(args) => commands::generate(&gen_spec(args, cli.seed)?, out),
        Command::Analyze { input } => commands::analyze_file(input, out),
        Command::Verify {
            input,
            claims,
            report,
        } => commands::verify_file(input, &parse_claims(claims)?, report.as_deref(), out),
        Command::Oracle { input } => commands::oracle_file(input, out),
        Command::Search(args) => {
            commands::search(&search_config(args, cli.seed)?, out, args.csv.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(done) => {
            if !cli.quiet {
                eprintln!("{}", done.summary);
            }
            ExitCode::from(done.outcome.code())
        }
        Err(e) => {
            eprintln!("djgraph: {e}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
