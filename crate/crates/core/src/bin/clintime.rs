use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use clintime::corpus::{read_standoff, write_standoff};
use clintime::eval::{evaluate_corpus, EvalOptions, TlinkSubset};
use clintime::pipeline::{
    build_timeline, generate_corpus, read_corpus_dir, read_input_dir, timeline_csv, timeline_table, train_models,
    write_corpus_dir, Pipeline, PipelineConfig, PipelineError, SyntheticConfig, STANDOFF_EXT,
};

const USAGE: u8 = 1;
const DATA: u8 = 2;
const THRESHOLD: u8 = 3;

#[derive(Parser)]
#[command(name = "clintime", version, about = "Clinical events, temporal expressions and temporal links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Pipeline configuration file (key = value lines)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one configuration key, e.g. `--set closure=true`
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Worker threads
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Train the EVENT category models and the temporal expression model
    Train {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Directory of gold .standoff files
        #[arg(long)]
        corpus: PathBuf,
        /// Output directory for the models
        #[arg(long)]
        models: PathBuf,
    },
    /// Run the full pipeline over .txt or .standoff files
    Tag {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long)]
        models: Option<PathBuf>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Score system output against gold annotations
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        system: PathBuf,
        /// Restrict TLINK scoring to sectime, intra or inter links
        #[arg(long)]
        tlink_subset: Option<TlinkSubset>,
        /// Also write the key-value report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// Fail with exit code 3 when a score is below its minimum
        #[arg(long = "min", value_name = "KEY=VALUE")]
        minimums: Vec<String>,
    },
    /// Chronological event listing of a tagged document
    Timeline {
        /// A tagged .standoff file
        input: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Write the synthetic gold corpus
    GenSynthetic {
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 50)]
        documents: usize,
        #[arg(long, default_value_t = 10)]
        sentences: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn fail(e: PipelineError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_usage() { USAGE } else { DATA })
}

fn config(args: &ConfigArgs) -> Result<PipelineConfig, PipelineError> {
    let mut cfg = match &args.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    for o in &args.overrides {
        let err = |reason: String| PipelineError::Config {
            path: PathBuf::from("--set"),
            line: 0,
            reason,
        };
        let (k, v) = o.split_once('=').ok_or_else(|| err(format!("expected KEY=VALUE, got `{o}`")))?;
        cfg.set(k.trim(), v.trim(), Path::new(".")).map_err(err)?;
    }
    if let Some(w) = args.workers {
        cfg.workers = w.max(1);
    }
    Ok(cfg)
}

fn train(cfg: &ConfigArgs, corpus: &Path, models: &Path) -> Result<(), PipelineError> {
    let pipeline = Pipeline::new(config(cfg)?)?;
    let docs = read_corpus_dir(corpus)?;
    let trained = train_models(&pipeline, &docs)?;
    trained.save(models)?;
    for (name, r) in &trained.reports {
        println!(
            "{name}: {} features, {} iterations, final objective {:.6}",
            r.num_features,
            r.iterations,
            r.final_objective()
        );
    }
    Ok(())
}

fn tag(cfg: &ConfigArgs, models: Option<&Path>, input: &Path, output: &Path) -> Result<(), PipelineError> {
    let cfg = config(cfg)?;
    let model_dir = models.map(Path::to_path_buf).or_else(|| cfg.model_dir.clone());
    let mut pipeline = Pipeline::new(cfg)?;
    match model_dir {
        Some(d) => pipeline = pipeline.load_models(&d)?,
        None if pipeline.config.events => {
            return Err(PipelineError::Config {
                path: PathBuf::from("tag"),
                line: 0,
                reason: "event extraction needs --models or model_dir".into(),
            })
        }
        None => {}
    }
    std::fs::create_dir_all(output).map_err(|e| PipelineError::Io {
        path: output.to_path_buf(),
        source: e,
    })?;
    let inputs = read_input_dir(input)?;
    let mut errors = Vec::new();
    let mut docs = Vec::new();
    let mut paths = Vec::new();
    for i in inputs {
        match i.doc {
            Ok(d) => {
                docs.push(d);
                paths.push(i.path);
            }
            Err(e) => errors.push(format!("{}: {e}", i.path.display())),
        }
    }
    let mut written = 0;
    for (path, r) in paths.iter().zip(pipeline.tag_batch(docs)) {
        match r {
            Ok(t) => {
                for w in &t.warnings {
                    eprintln!("warning: {}: {w}", t.doc.doc.id);
                }
                let out = output.join(format!("{}.{STANDOFF_EXT}", t.doc.doc.id));
                write_standoff(&t.doc, &out).map_err(|source| PipelineError::Corpus { path: out, source })?;
                written += 1;
            }
            Err(e) => errors.push(format!("{}: {e}", path.display())),
        }
    }
    let log = output.join("errors.log");
    if errors.is_empty() {
        let _ = std::fs::remove_file(&log);
    } else {
        std::fs::write(&log, errors.join("\n") + "\n").map_err(|e| PipelineError::Io { path: log.clone(), source: e })?;
        eprintln!("{} document(s) quarantined, see {}", errors.len(), log.display());
    }
    println!("tagged {written} document(s)");
    Ok(())
}

fn parse_minimums(items: &[String]) -> Result<Vec<(String, f64)>, String> {
    items
        .iter()
        .map(|m| {
            let (k, v) = m.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{m}`"))?;
            let v: f64 = v.trim().parse().map_err(|_| format!("bad minimum `{v}`"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Train { cfg, corpus, models } => match train(&cfg, &corpus, &models) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Tag {
            cfg,
            models,
            input,
            output,
        } => match tag(&cfg, models.as_deref(), &input, &output) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Eval {
            gold,
            system,
            tlink_subset,
            report,
            minimums,
        } => {
            let minimums = match parse_minimums(&minimums) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            let result = (|| {
                let g = read_corpus_dir(&gold)?;
                let s = read_corpus_dir(&system)?;
                Ok::<_, PipelineError>(evaluate_corpus(&g, &s, &EvalOptions { tlink_subset })?)
            })();
            let r = match result {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            print!("{}", r.to_table());
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            if let Some(p) = report {
                if let Err(e) = std::fs::write(&p, r.to_key_values()) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(DATA);
                }
            }
            let violations = r.check_thresholds(&minimums);
            for v in &violations {
                eprintln!("threshold: {v}");
            }
            if violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(THRESHOLD)
            }
        }
        Command::Timeline { input, csv } => match read_standoff(&input) {
            Ok(ad) => {
                let t = build_timeline(&ad);
                print!("{}", if csv { timeline_csv(&t) } else { timeline_table(&t) });
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {}: {e}", input.display());
                ExitCode::from(DATA)
            }
        },
        Command::GenSynthetic {
            output,
            documents,
            sentences,
            seed,
        } => {
            let docs = generate_corpus(&SyntheticConfig {
                documents,
                sentences_per_document: sentences,
                seed,
            });
            match write_corpus_dir(&output, &docs) {
                Ok(()) => {
                    println!("wrote {} document(s) to {}", docs.len(), output.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
    }
}
