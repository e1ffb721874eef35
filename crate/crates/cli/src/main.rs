use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use quantal::cooccur::{CooccurrenceConfig, NormalizedMatrix, Scheme};
use quantal::oracle::RelModel;
use quantal::sweep::SweepConfig;
use quantal::vect::DistModel;
use quantal_cli::*;

#[derive(Parser)]
#[command(name = "quantal", version, about = "Quantified sentences in relations and vector spaces")]
struct Cli {
    /// Print one JSON report per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type assignment and reduction links of a sentence.
    Parse {
        #[arg(long)]
        grammar: Option<PathBuf>,
        sentence: String,
    },
    /// The compiled morphism term of a sentence.
    Term {
        #[arg(long)]
        grammar: Option<PathBuf>,
        sentence: String,
    },
    /// Truth of a sentence in a relational model.
    #[command(group(ArgGroup::new("mode").args(["oracle", "categorical", "both"])))]
    Truth {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        grammar: Option<PathBuf>,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        categorical: bool,
        #[arg(long)]
        both: bool,
        sentence: String,
    },
    /// Sentence vector in a distributional model.
    Vector {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        grammar: Option<PathBuf>,
        sentence: String,
    },
    /// Pointwise entailment between two sentence vectors.
    Entail {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        grammar: Option<PathBuf>,
        premise: String,
        conclusion: String,
    },
    /// Windowed co-occurrence counts and their normalisation.
    Cooccur {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "prob")]
        scheme: Scheme,
        /// Write the rows as a distributional model with singleton features.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the normalised matrix, for `cosine`.
        #[arg(long)]
        matrix_out: Option<PathBuf>,
    },
    /// Cosine similarity of two rows of a normalised matrix.
    Cosine {
        #[arg(long)]
        matrix: PathBuf,
        left: String,
        right: String,
    },
    /// Oracle, relational and vector-space truth agree on every small model.
    EquivSweep {
        #[arg(long = "maxU", default_value_t = 3)]
        max_universe: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long = "verbSamples", default_value_t = 10)]
        verb_samples: usize,
        #[arg(long)]
        exhaustive_verbs: bool,
    },
    /// The "all/some animals run" table.
    PaperExample {
        #[arg(long)]
        values_only: bool,
    },
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid {what}: {e}"))
}

fn run(command: Command, inputs: &mut Inputs) -> Result<Outcome, String> {
    match command {
        Command::Parse { grammar, sentence } => cmd_parse(&load_grammar(inputs, grammar.as_deref())?, &sentence),
        Command::Term { grammar, sentence } => cmd_term(&load_grammar(inputs, grammar.as_deref())?, &sentence),
        Command::Truth { model, grammar, oracle, categorical, both: _, sentence } => {
            let g = load_grammar(inputs, grammar.as_deref())?;
            let m = RelModel::from_json(&inputs.read(&model)?).map_err(|e| e.to_string())?;
            let mode = match (oracle, categorical) {
                (true, _) => TruthMode::Oracle,
                (_, true) => TruthMode::Categorical,
                _ => TruthMode::Both,
            };
            cmd_truth(&g, &m, &sentence, mode)
        }
        Command::Vector { model, grammar, sentence } => {
            let g = load_grammar(inputs, grammar.as_deref())?;
            let m = DistModel::from_json(&inputs.read(&model)?).map_err(|e| e.to_string())?;
            cmd_vector(&g, &m, &sentence)
        }
        Command::Entail { model, grammar, premise, conclusion } => {
            let g = load_grammar(inputs, grammar.as_deref())?;
            let m = DistModel::from_json(&inputs.read(&model)?).map_err(|e| e.to_string())?;
            cmd_entail(&g, &m, &premise, &conclusion)
        }
        Command::Cooccur { corpus, config, scheme, out, matrix_out } => {
            let text = inputs.read(&corpus)?;
            let cfg: CooccurrenceConfig = parse_json(&inputs.read(&config)?, "co-occurrence config")?;
            cmd_cooccur(&text, &cfg, scheme, out.as_deref(), matrix_out.as_deref())
        }
        Command::Cosine { matrix, left, right } => {
            let m: NormalizedMatrix = parse_json(&inputs.read(&matrix)?, "matrix file")?;
            cmd_cosine(&m, &left, &right)
        }
        Command::EquivSweep { max_universe, seed, verb_samples, exhaustive_verbs } => {
            cmd_equiv_sweep(&SweepConfig { max_universe, seed, verb_samples, exhaustive_verbs })
        }
        Command::PaperExample { values_only } => Ok(cmd_paper_example(values_only)),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::new(&args[1..]);
    let result = run(cli.command, &mut inputs);
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(outcome) => {
            if cli.json {
                let report = RunReport {
                    command: args[1..].to_vec(),
                    inputs_digest: inputs.digest(),
                    outputs: outcome.outputs,
                    passed: outcome.passed,
                    wall_time_ms,
                };
                println!("{}", serde_json::to_string(&report).expect("reports serialize"));
            } else {
                print!("{}", outcome.text);
            }
            if outcome.passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(message) => {
            if cli.json {
                println!("{}", serde_json::json!({ "command": &args[1..], "error": message }));
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(2)
        }
    }
}
