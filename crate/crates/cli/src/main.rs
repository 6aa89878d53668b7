//! `tcone`: tangent cones of Schubert varieties in type A from the command line.

mod cache;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use tcone_core::verify::{
    check_adstar, check_conjecture1, check_conjecture2, check_conjecture3_evidence, check_coxeter,
    check_dimensions, compare_corpus, cone_classes, load_allowlist, load_corpus, Allowlist, CheckReport, ConeSet,
    Corpus, DiffReport, Direct,
};
use tcone_core::{parse_cycles, ConeSource};

use crate::cache::Cache;
use crate::output::Format;

/// Largest rank the cycle notation (single-digit points) can express.
const MAX_RANK: usize = 8;

#[derive(Parser)]
#[command(name = "tcone", version, about = "Tangent cones of type A Schubert varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for sweeps over the whole group.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for cached results.
    #[arg(long, env = "TCONE_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache even if a directory is configured.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Tangent cone of one element.
    Compute {
        #[arg(long)]
        rank: usize,
        /// Cycle notation, e.g. "(13)(24)" or "e".
        #[arg(long)]
        w: String,
    },
    /// Cones of every element of the Weyl group, grouped by equal cones.
    Table {
        #[arg(long)]
        rank: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        rank: usize,
        /// Corpus file or directory of JSON files.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Allowlist of confirmed discrepancies.
        #[arg(long)]
        allowlist: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Dims,
    Conj1,
    Conj2,
    Conj3,
    Coxeter,
    Corpus,
    Adstar,
    All,
}

const DEFAULT_CORPUS: &str = "corpus/tables";
const DEFAULT_ALLOWLIST: &str = "corpus/allowlist.json";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

fn check_rank(rank: usize) -> Result<(), CliError> {
    if rank == 0 || rank > MAX_RANK {
        return Err(CliError::Input(format!("rank must be between 1 and {MAX_RANK}, got {rank}")));
    }
    Ok(())
}

fn source(cli: &Cli) -> Box<dyn ConeSource> {
    match (&cli.cache_dir, cli.no_cache) {
        (Some(dir), false) => Box::new(Cache::new(dir)),
        _ => Box::new(Direct),
    }
}

fn jobs(cli: &Cli) -> Result<usize, CliError> {
    match cli.jobs {
        Some(0) => Err(CliError::Input("--jobs must be at least 1".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn sweep(cli: &Cli, rank: usize) -> Result<ConeSet, CliError> {
    ConeSet::compute(rank, source(cli).as_ref(), jobs(cli)?).map_err(|e| CliError::Compute(e.to_string()))
}

fn load_corpus_path(path: &Path) -> Result<Corpus, CliError> {
    let files = if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        files
    } else if path.is_file() {
        vec![path.to_path_buf()]
    } else {
        return Err(CliError::Input(format!("corpus not found: {}", path.display())));
    };
    let mut parts = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(&f)?;
        parts.push(load_corpus(&text).map_err(|e| CliError::Input(format!("{}: {e}", f.display())))?);
    }
    Ok(Corpus::merge(parts))
}

fn load_allowlist_path(path: Option<&Path>) -> Result<Allowlist, CliError> {
    let (path, required) = match path {
        Some(p) => (p, true),
        None => (Path::new(DEFAULT_ALLOWLIST), false),
    };
    if !path.is_file() {
        if required {
            return Err(CliError::Input(format!("allowlist not found: {}", path.display())));
        }
        return Ok(Allowlist::default());
    }
    let text = std::fs::read_to_string(path)?;
    load_allowlist(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Compute { rank, w } => {
            check_rank(*rank)?;
            let w = parse_cycles(w, *rank).map_err(|e| CliError::Input(format!("cannot read w: {e}")))?;
            let cone = source(cli)
                .tangent_cone(&w)
                .map_err(|e| CliError::Compute(e.to_string()))?;
            print!("{}", output::cone(&cone, cli.format));
            Ok(true)
        }
        Command::Table { rank } => {
            check_rank(*rank)?;
            let set = sweep(cli, *rank)?;
            let classes = cone_classes(&set).map_err(|e| CliError::Compute(e.to_string()))?;
            print!("{}", output::table(&set, &classes, cli.format));
            Ok(true)
        }
        Command::Verify {
            suite,
            rank,
            corpus,
            allowlist,
        } => {
            check_rank(*rank)?;
            verify(cli, *suite, *rank, corpus.as_deref(), allowlist.as_deref())
        }
    }
}

fn verify(
    cli: &Cli,
    suite: Suite,
    rank: usize,
    corpus: Option<&Path>,
    allowlist: Option<&Path>,
) -> Result<bool, CliError> {
    let wants = |s: Suite| suite == s || suite == Suite::All;
    // resolve inputs before the expensive sweep
    let corpus = if wants(Suite::Corpus) {
        match corpus {
            Some(p) => Some(load_corpus_path(p)?),
            None if Path::new(DEFAULT_CORPUS).exists() => Some(load_corpus_path(Path::new(DEFAULT_CORPUS))?),
            None if suite == Suite::Corpus => {
                return Err(CliError::Input(format!(
                    "no --corpus given and {DEFAULT_CORPUS} does not exist"
                )))
            }
            None => None,
        }
    } else {
        None
    };
    let allow = if corpus.is_some() {
        load_allowlist_path(allowlist)?
    } else {
        Allowlist::default()
    };

    let set = sweep(cli, rank)?;
    let mut checks: Vec<CheckReport> = Vec::new();
    if wants(Suite::Dims) {
        checks.push(check_dimensions(&set));
    }
    if wants(Suite::Conj1) {
        checks.push(check_conjecture1(&set));
    }
    if wants(Suite::Conj2) {
        checks.push(check_conjecture2(&set));
    }
    if wants(Suite::Coxeter) {
        checks.push(check_coxeter(&set));
    }
    if wants(Suite::Adstar) {
        checks.push(check_adstar(&set));
    }
    if wants(Suite::Conj3) {
        for k in 1..rank {
            let small = sweep(cli, k)?;
            checks.push(check_conjecture3_evidence(&small, &set));
        }
    }
    let diff: Option<DiffReport> = corpus.map(|c| compare_corpus(&set, &c, &allow));
    let pass = checks.iter().all(CheckReport::is_pass) && diff.as_ref().is_none_or(DiffReport::is_pass);
    print!("{}", output::verification(&checks, diff.as_ref(), pass, cli.format));
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
