//! `khlab`: Khovanov homology and related invariants from the command line.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::RangedU64ValueParser;
use clap::{ArgGroup, Parser, ValueEnum};
use khlab::corpus::{corpus, CorpusEntry};
use khlab::{parse_diagram, Coefficients};

use report::{Format, RunConfig, Task};

#[derive(Parser, Debug)]
#[command(name = "khlab", version, about = "Khovanov homology, Lee homology and the Rasmussen invariant")]
#[command(group(ArgGroup::new("input").required(true).args(["pd", "braid", "file", "corpus"])))]
struct Cli {
    /// Planar diagram code, e.g. "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]".
    #[arg(long)]
    pd: Option<String>,

    /// Braid word, e.g. "B[2; 1,1,1]".
    #[arg(long)]
    braid: Option<String>,

    /// File with one diagram per line, optionally prefixed by `name:`.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Bundled corpus: `small`, `reidemeister`, `all` or a single entry name.
    #[arg(long)]
    corpus: Option<String>,

    /// Computation to run; repeat for several.
    #[arg(long = "task", value_enum, required = true)]
    tasks: Vec<Task>,

    #[arg(long, value_enum, default_value = "z")]
    coeff: CoeffArg,

    /// Largest crossing count to accept.
    #[arg(long, env = "KHLAB_CAP", default_value_t = khlab::DEFAULT_CAP,
          value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    cap: usize,

    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Seed for the Hadamard sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Hadamard-test samples for the quantum task; omitted means no sampling.
    #[arg(long = "q-samples", value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    q_samples: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffArg {
    Z,
    Q,
    F2,
}

impl From<CoeffArg> for Coefficients {
    fn from(c: CoeffArg) -> Self {
        match c {
            CoeffArg::Z => Coefficients::Integers,
            CoeffArg::Q => Coefficients::Rationals,
            CoeffArg::F2 => Coefficients::F2,
        }
    }
}

fn entry(name: &str, text: &str) -> anyhow::Result<CorpusEntry> {
    let diagram = parse_diagram(text).map_err(|e| anyhow::anyhow!("{name}: {e}"))?;
    Ok(CorpusEntry { name: name.to_string(), diagram })
}

fn read_file(path: &PathBuf) -> anyhow::Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    let mut out = vec![];
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, code) = match line.split_once(':') {
            Some((n, c)) => (n.trim().to_string(), c.trim()),
            None => (format!("line-{}", k + 1), line),
        };
        out.push(entry(&name, code)?);
    }
    anyhow::ensure!(!out.is_empty(), "{} contains no diagrams", path.display());
    Ok(out)
}

fn inputs(cli: &Cli) -> anyhow::Result<Vec<CorpusEntry>> {
    if let Some(pd) = &cli.pd {
        Ok(vec![entry("pd", pd)?])
    } else if let Some(b) = &cli.braid {
        Ok(vec![entry("braid", b)?])
    } else if let Some(path) = &cli.file {
        read_file(path)
    } else {
        let name = cli.corpus.as_deref().unwrap_or_default();
        Ok(corpus(name)?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let entries = match inputs(&cli) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut tasks = cli.tasks.clone();
    tasks.sort();
    tasks.dedup();
    let cfg = RunConfig {
        tasks,
        coeff: cli.coeff.into(),
        cap: cli.cap,
        format: cli.format,
        seed: cli.seed,
        q_samples: cli.q_samples,
    };
    let reports = report::run(&cfg, &entries);
    match report::render(&cfg, &reports) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut failed = false;
    for r in &reports {
        for (task, msg) in &r.errors {
            eprintln!("error: {}: {}: {msg}", r.name, task.name());
            failed = true;
        }
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
