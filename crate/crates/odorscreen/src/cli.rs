//! Command-line interface.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use odorscreen_core::descriptors::{descriptor_vector, FeatureSchema};
use odorscreen_core::genmetrics::{benchmark, validity};
use odorscreen_core::likeliness::{evaluate_criteria, linear_shap, run_workflow, CriteriaResult, Matrix, ShapExplanation};
use odorscreen_core::molgraph::{prepare, sanitize, SanitizeFailure};
use odorscreen_core::smiles::{canonicalize_unchecked, parse_canonical, parse_smiles};
use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::load_dataset;
use crate::emit;
use crate::error::{io_err, Error, Result};
use crate::graph::{parse_graph, AtomGraph};
use crate::knn::LabelIndex;
use crate::model::{Score, ScoringModel};
use crate::pubchem::{PubChemClient, PubChemStatus};
use crate::screen::{screen, ScreenOptions};
use crate::settings::Settings;
use crate::smiles_file::{parse_smiles_text, read_smiles_file, SmilesLine};

#[derive(Debug, Parser)]
#[command(name = "odorscreen", version, about = "Screen generated molecules for odor likeliness")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Random seed for splits and oversampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Never touch the network; PubChem lookups report `unavailable`.
    #[arg(long, global = true)]
    pub offline: bool,
    /// Directory for the PubChem cache.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override one config key, e.g. `--set knn_k=3`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub overrides: Vec<String>,
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// SMILES strings given directly.
    pub smiles: Vec<String>,
    /// SMILES file, one per line; `-` for stdin.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Write here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArg {
    /// Model file written by `train`; defaults to the shipped five-feature model.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CanonFormat {
    Json,
    /// Canonical SMILES only, one per valid input.
    Plain,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SchemaChoice {
    Eq4,
    Training,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Atom graphs (element, charge, H count, valence, hybridization, ...) as JSON.
    Parse(InputArgs),
    /// Canonical SMILES.
    Canonicalize {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: CanonFormat,
    },
    /// Sanitization checks as JSON.
    Sanitize(InputArgs),
    /// Descriptor table as CSV.
    Descriptors {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value = "eq4")]
        schema: SchemaChoice,
        /// Explicit comma-separated feature names; overrides --schema.
        #[arg(long, value_delimiter = ',')]
        features: Option<Vec<String>>,
    },
    /// Rule of three, FL property and GDB-17 verdicts as JSON.
    Criteria(InputArgs),
    /// Fit the logistic model on a labelled dataset.
    Train {
        #[arg(long)]
        dataset: PathBuf,
        /// Receives model.tsv, training.json, roc.csv, roc.svg and shap.csv.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Odor-likeliness logit and probability as JSON.
    Score {
        #[command(flatten)]
        io: InputArgs,
        #[command(flatten)]
        model: ModelArg,
    },
    /// Per-feature SHAP contributions as JSON.
    Shap {
        #[command(flatten)]
        io: InputArgs,
        #[command(flatten)]
        model: ModelArg,
        /// Also write (feature, row, value, contribution) points as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Full screen of a SMILES file against a dataset.
    Screen {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        #[command(flatten)]
        model: ModelArg,
        /// JSON report path (stdout if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Per-record CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Skip the PubChem existence check.
        #[arg(long)]
        no_pubchem: bool,
    },
    /// Generation metrics of a SMILES file against a training set.
    Benchmark {
        #[arg(long)]
        generated: PathBuf,
        /// Training SMILES file.
        #[arg(long, conflicts_with = "dataset", required_unless_present = "dataset")]
        training: Option<PathBuf>,
        /// Training set taken from a dataset CSV instead.
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// `metric,value` CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Descriptor histograms CSV for the KS comparison.
        #[arg(long)]
        histograms: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        bins: usize,
    },
    /// PubChem existence check of canonical SMILES.
    Pubchem(InputArgs),
}

fn read_inputs(io: &InputArgs) -> Result<Vec<SmilesLine>> {
    let mut lines: Vec<SmilesLine> = io
        .smiles
        .iter()
        .enumerate()
        .map(|(i, s)| SmilesLine {
            line: i + 1,
            smiles: s.clone(),
            name: None,
        })
        .collect();
    match &io.input {
        Some(p) if p.as_os_str() == "-" => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).map_err(io_err("<stdin>"))?;
            lines.extend(parse_smiles_text(&text));
        }
        Some(p) => lines.extend(read_smiles_file(p)?),
        None => {}
    }
    if lines.is_empty() {
        return Err(Error::EmptyInput { path: PathBuf::from("<arguments>") });
    }
    Ok(lines)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(io_err(p)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(io_err("<stdout>"))?;
            out.flush().map_err(io_err("<stdout>"))
        }
    }
}

fn load_model(arg: &ModelArg) -> Result<ScoringModel> {
    match &arg.model {
        Some(p) => ScoringModel::load(p),
        None => Ok(ScoringModel::shipped_eq4()),
    }
}

#[derive(Serialize)]
struct Listing<T> {
    schema_version: u32,
    records: Vec<T>,
}

fn listing<T: Serialize>(records: Vec<T>) -> String {
    emit::to_json(&Listing {
        schema_version: 1,
        records,
    })
}

#[derive(Serialize)]
struct ParseRecord {
    line: usize,
    input: String,
    graph: Option<AtomGraph>,
    error: Option<String>,
}

#[derive(Serialize)]
struct CanonRecord {
    line: usize,
    input: String,
    canonical: Option<String>,
    error: Option<String>,
}

#[derive(Serialize)]
struct SanitizeRecord {
    line: usize,
    input: String,
    parsed: bool,
    valid: bool,
    parse_error: Option<String>,
    failures: Vec<SanitizeFailure>,
}

#[derive(Serialize)]
struct CriteriaRecord {
    line: usize,
    input: String,
    canonical: Option<String>,
    criteria: Option<CriteriaResult>,
    error: Option<String>,
}

#[derive(Serialize)]
struct ScoreRecord {
    line: usize,
    input: String,
    canonical: Option<String>,
    features: Option<Vec<(String, f64)>>,
    score: Option<Score>,
    error: Option<String>,
}

#[derive(Serialize)]
struct ShapRecord {
    line: usize,
    input: String,
    canonical: Option<String>,
    explanation: Option<ShapExplanation>,
    error: Option<String>,
}

#[derive(Serialize)]
struct PubChemRecord {
    line: usize,
    input: String,
    canonical: Option<String>,
    status: Option<PubChemStatus>,
    error: Option<String>,
}

/// Canonical form of every line in parallel, input order kept.
fn canonical_all(lines: &[SmilesLine]) -> Vec<Result<(odorscreen_core::Molecule, String), String>> {
    lines
        .par_iter()
        .map(|l| parse_canonical(&l.smiles).map_err(|e| e.to_string()))
        .collect()
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    let mut settings = Settings::default();
    if let Some(p) = &cli.global.config {
        settings.apply_file(p)?;
    }
    for o in &cli.global.overrides {
        settings.apply_override(o)?;
    }
    let g = &cli.global;
    if let Some(s) = g.seed {
        settings.seed = s;
    }
    if let Some(t) = g.threads {
        settings.threads = Some(t).filter(|&t| t > 0);
    }
    settings.offline |= g.offline;
    if let Some(d) = &g.cache_dir {
        settings.cache_dir = Some(d.clone());
    }
    if let Some(t) = settings.threads {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }

    match cli.command {
        Command::Parse(io) => {
            let lines = read_inputs(&io)?;
            let records: Vec<ParseRecord> = lines
                .par_iter()
                .map(|l| match parse_graph(&l.smiles) {
                    Ok(g) => ParseRecord {
                        line: l.line,
                        input: l.smiles.clone(),
                        graph: Some(g),
                        error: None,
                    },
                    Err(e) => ParseRecord {
                        line: l.line,
                        input: l.smiles.clone(),
                        graph: None,
                        error: Some(e.to_string()),
                    },
                })
                .collect();
            write_out(io.output.as_deref(), &listing(records))?;
        }
        Command::Canonicalize { io, format } => {
            let lines = read_inputs(&io)?;
            let canon = canonical_all(&lines);
            let text = match format {
                CanonFormat::Plain => canon
                    .iter()
                    .filter_map(|r| r.as_ref().ok().map(|(_, c)| format!("{c}\n")))
                    .collect(),
                CanonFormat::Json => listing(
                    lines
                        .iter()
                        .zip(canon)
                        .map(|(l, r)| {
                            let (canonical, error) = match r {
                                Ok((_, c)) => (Some(c), None),
                                Err(e) => (None, Some(e)),
                            };
                            CanonRecord {
                                line: l.line,
                                input: l.smiles.clone(),
                                canonical,
                                error,
                            }
                        })
                        .collect(),
                ),
            };
            write_out(io.output.as_deref(), &text)?;
        }
        Command::Sanitize(io) => {
            let lines = read_inputs(&io)?;
            let records: Vec<SanitizeRecord> = lines
                .par_iter()
                .map(|l| match parse_smiles(&l.smiles) {
                    Ok(mut m) => {
                        prepare(&mut m);
                        let r = sanitize(&m);
                        SanitizeRecord {
                            line: l.line,
                            input: l.smiles.clone(),
                            parsed: true,
                            valid: r.valid,
                            parse_error: None,
                            failures: r.failures,
                        }
                    }
                    Err(e) => SanitizeRecord {
                        line: l.line,
                        input: l.smiles.clone(),
                        parsed: false,
                        valid: false,
                        parse_error: Some(e.to_string()),
                        failures: Vec::new(),
                    },
                })
                .collect();
            write_out(io.output.as_deref(), &listing(records))?;
        }
        Command::Descriptors { io, schema, features } => {
            let schema = match (features, schema) {
                (Some(f), _) => FeatureSchema::new("custom", &f)?,
                (None, SchemaChoice::Eq4) => FeatureSchema::eq4(),
                (None, SchemaChoice::Training) => FeatureSchema::training(),
            };
            let lines = read_inputs(&io)?;
            let canon = canonical_all(&lines);
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["line".to_owned(), "input".to_owned(), "canonical".to_owned()];
            header.extend(schema.names().iter().map(|s| s.to_string()));
            w.write_record(&header).expect("in-memory write");
            for (l, r) in lines.iter().zip(&canon) {
                let mut row = vec![l.line.to_string(), l.smiles.clone()];
                match r {
                    Ok((m, c)) => {
                        row.push(c.clone());
                        row.extend(descriptor_vector(m, &schema).values.iter().map(f64::to_string));
                    }
                    Err(_) => row.extend(std::iter::repeat_n(String::new(), schema.len() + 1)),
                }
                w.write_record(&row).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory write");
            write_out(io.output.as_deref(), &String::from_utf8(bytes).expect("csv of utf-8 fields"))?;
        }
        Command::Criteria(io) => {
            let lines = read_inputs(&io)?;
            let records: Vec<CriteriaRecord> = lines
                .iter()
                .zip(canonical_all(&lines))
                .map(|(l, r)| match r {
                    Ok((m, c)) => CriteriaRecord {
                        line: l.line,
                        input: l.smiles.clone(),
                        canonical: Some(c),
                        criteria: Some(evaluate_criteria(&m)),
                        error: None,
                    },
                    Err(e) => CriteriaRecord {
                        line: l.line,
                        input: l.smiles.clone(),
                        canonical: None,
                        criteria: None,
                        error: Some(e),
                    },
                })
                .collect();
            write_out(io.output.as_deref(), &listing(records))?;
        }
        Command::Train { dataset, out_dir } => {
            let data = load_dataset(&dataset, &settings.dataset)?;
            let schema = FeatureSchema::training();
            let (x, y) = data.feature_matrix(&schema)?;
            let names: Vec<String> = schema.names().iter().map(|s| s.to_string()).collect();
            let report = run_workflow(&x, &y, &names, &settings.workflow())?;
            std::fs::create_dir_all(&out_dir).map_err(io_err(&out_dir))?;
            let header = format!(
                "# trained on {} ({} molecules), seed {}\n",
                dataset.display(),
                data.len(),
                settings.seed
            );
            let model_path = out_dir.join("model.tsv");
            std::fs::write(&model_path, header + &report.model.to_text()).map_err(io_err(&model_path))?;
            emit::write_json(&out_dir.join("training.json"), &report)?;
            emit::write_roc_csv(&out_dir.join("roc.csv"), &report.roc)?;
            emit::write_roc_svg(&out_dir.join("roc.svg"), &report.roc, report.test_metrics.roc_auc)?;
            let cols: Vec<usize> = report
                .model
                .feature_names
                .iter()
                .map(|n| names.iter().position(|m| m == n).expect("selected from the schema"))
                .collect();
            let selected = x.select_columns(&cols);
            let scaled = match &report.model.scaler {
                Some(s) => s.transform(&selected),
                None => selected,
            };
            emit::write_shap_csv(&out_dir.join("shap.csv"), &emit::shap_points(&report.model, &scaled))?;
            let m = &report.test_metrics;
            println!(
                "features: {}\nROC AUC {:.4}  F1 {:.4}  accuracy {:.4}  precision {:.4}  recall {:.4}",
                report.model.feature_names.join(", "),
                m.roc_auc,
                m.f1,
                m.accuracy,
                m.precision,
                m.recall
            );
        }
        Command::Score { io, model } => {
            let model = load_model(&model)?;
            let lines = read_inputs(&io)?;
            let records: Vec<ScoreRecord> = lines
                .iter()
                .zip(canonical_all(&lines))
                .map(|(l, r)| match r {
                    Ok((m, c)) => {
                        let fv = model.features(&m);
                        ScoreRecord {
                            line: l.line,
                            input: l.smiles.clone(),
                            canonical: Some(c),
                            score: Some(model.score_features(&fv.values)),
                            features: Some(fv.names.into_iter().zip(fv.values).collect()),
                            error: None,
                        }
                    }
                    Err(e) => ScoreRecord {
                        line: l.line,
                        input: l.smiles.clone(),
                        canonical: None,
                        features: None,
                        score: None,
                        error: Some(e),
                    },
                })
                .collect();
            write_out(io.output.as_deref(), &listing(records))?;
        }
        Command::Shap { io, model, csv } => {
            let model = load_model(&model)?;
            let lines = read_inputs(&io)?;
            let mut rows = Vec::new();
            let records: Vec<ShapRecord> = lines
                .iter()
                .zip(canonical_all(&lines))
                .map(|(l, r)| match r {
                    Ok((m, c)) => {
                        let x = model.model.prepare_row(&model.features(&m).values);
                        let e = linear_shap(&model.model, &x);
                        rows.push(x);
                        ShapRecord {
                            line: l.line,
                            input: l.smiles.clone(),
                            canonical: Some(c),
                            explanation: Some(e),
                            error: None,
                        }
                    }
                    Err(e) => ShapRecord {
                        line: l.line,
                        input: l.smiles.clone(),
                        canonical: None,
                        explanation: None,
                        error: Some(e),
                    },
                })
                .collect();
            if let Some(p) = csv {
                let points = if rows.is_empty() {
                    Vec::new()
                } else {
                    emit::shap_points(&model.model, &Matrix::from_rows(&rows)?)
                };
                emit::write_shap_csv(&p, &points)?;
            }
            write_out(io.output.as_deref(), &listing(records))?;
        }
        Command::Screen {
            input,
            dataset,
            model,
            output,
            csv,
            no_pubchem,
        } => {
            let model = load_model(&model)?;
            let lines = read_smiles_file(&input)?;
            let data = load_dataset(&dataset, &settings.dataset)?;
            let index = LabelIndex::new(&data)?;
            let client = if no_pubchem {
                None
            } else {
                Some(PubChemClient::new(settings.pubchem())?)
            };
            let options = ScreenOptions { knn_k: settings.knn_k };
            let report = screen(&lines, &data, &model, Some(&index), client.as_ref(), &options);
            if let Some(c) = &client {
                info!("PubChem network calls: {}", c.network_calls());
            }
            write_out(output.as_deref(), &emit::to_json(&report))?;
            if let Some(p) = csv {
                emit::write_screen_csv(&p, &report)?;
            }
            let s = &report.summary;
            let pct = |v: Option<f64>| v.map_or("n/a".to_owned(), |p| format!("{p:.1}%"));
            eprintln!(
                "{} lines, {} valid, {} unique, {} novel; GDB-17 {}, rule of three {}, FL {}, logistic {}",
                s.total,
                s.valid,
                s.unique,
                s.novel,
                pct(s.gdb17_percent),
                pct(s.rule_of_three_percent),
                pct(s.fl_property_percent),
                pct(s.logistic_percent)
            );
        }
        Command::Benchmark {
            generated,
            training,
            dataset,
            output,
            csv,
            histograms,
            bins,
        } => {
            let gen: Vec<String> = read_smiles_file(&generated)?.into_iter().map(|l| l.smiles).collect();
            let train: Vec<String> = match (training, dataset) {
                (Some(t), _) => read_smiles_file(&t)?.into_iter().map(|l| l.smiles).collect(),
                (None, Some(d)) => load_dataset(&d, &settings.dataset)?
                    .entries
                    .into_iter()
                    .map(|e| e.canonical)
                    .collect(),
                (None, None) => unreachable!("clap requires one of --training and --dataset"),
            };
            let report = benchmark(&gen, &train)?;
            write_out(output.as_deref(), &emit::to_json(&report))?;
            if let Some(p) = csv {
                emit::write_benchmark_csv(&p, &report)?;
            }
            if let Some(p) = histograms {
                let schema = FeatureSchema::eq4();
                let rows = |smiles: &[String]| -> Result<Vec<Vec<f64>>> {
                    let (_, valid) = validity(smiles)?;
                    Ok(valid
                        .par_iter()
                        .map(|v| descriptor_vector(&v.molecule, &schema).values)
                        .collect())
                };
                let bins = emit::descriptor_histograms(&schema.names(), &rows(&gen)?, &rows(&train)?, bins);
                emit::write_histograms_csv(&p, &bins)?;
            }
        }
        Command::Pubchem(io) => {
            let lines = read_inputs(&io)?;
            let client = PubChemClient::new(settings.pubchem())?;
            let records: Vec<PubChemRecord> = lines
                .iter()
                .map(|l| {
                    // Queries use the canonical form so cache keys are stable.
                    let canonical = parse_smiles(&l.smiles).ok().map(|mut m| {
                        prepare(&mut m);
                        canonicalize_unchecked(&m)
                    });
                    match canonical {
                        Some(c) => PubChemRecord {
                            line: l.line,
                            input: l.smiles.clone(),
                            status: Some(client.lookup(&c)),
                            canonical: Some(c),
                            error: None,
                        },
                        None => PubChemRecord {
                            line: l.line,
                            input: l.smiles.clone(),
                            canonical: None,
                            status: None,
                            error: Some("unparseable SMILES".into()),
                        },
                    }
                })
                .collect();
            info!("PubChem network calls: {}", client.network_calls());
            write_out(io.output.as_deref(), &listing(records))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
