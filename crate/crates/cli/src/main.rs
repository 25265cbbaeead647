//! `read`: command-line front end for feature extraction, model training,
//! the replication report, writing suggestions and the HTTP service.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use read_api::documents::{self, FeatureDocument, PairDocument};
use read_core::advisor::{AdvisorConfig, AnnotationDocument};
use read_core::model::cross_validate;
use read_core::replication::FeatureSource;
use read_core::{
    build_design, casewise_accuracy, load_dataset, predict_pair, render_report, train, Advisor,
    ColumnMap, DesignConfig, DesignMode, Feature, FeatureExtractor, ReportFormat, Resources,
    TrainedModel,
};

#[derive(Parser)]
#[command(name = "read", version, about = "READ lexical features, pairwise model and synonym advice")]
struct Cli {
    /// Resource cache written by `read ingest`.
    #[arg(long, global = true, env = "READ_CACHE", default_value = "read-cache.json")]
    cache: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse WordNet, SentiWordNet and a Zipf table into a cache file.
    Ingest {
        /// Directory holding the WNDB data.* and index.* files.
        #[arg(long)]
        wordnet: PathBuf,
        /// SentiWordNet 3.0 table; without it all affect scores are 0.
        #[arg(long)]
        sentiwordnet: Option<PathBuf>,
        /// Word/Zipf table.
        #[arg(long)]
        freq: Option<PathBuf>,
        /// Cache file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the ten READ measures of a word.
    Features {
        #[arg(required_unless_present = "batch", conflicts_with = "batch")]
        word: Option<String>,
        #[arg(long)]
        json: bool,
        /// One word per line; writes TSV to stdout.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Fit the pairwise regression on a rated dataset.
    Train {
        /// Pair table (CSV).
        #[arg(long)]
        data: PathBuf,
        /// Column map (TOML); defaults to the built-in column names.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Design: plain, mirrored or composite.
        #[arg(long, default_value = "composite")]
        mode: DesignMode,
        /// Feature values: from the dataset's columns or computed from the cache.
        #[arg(long, value_enum)]
        features: Option<SourceArg>,
        /// Model file to write.
        #[arg(long)]
        out: PathBuf,
        /// Also report k-fold cross-validated accuracy (out-of-sample; not
        /// part of the replication).
        #[arg(long, value_name = "K")]
        holdout: Option<usize>,
    },
    /// Predict which of two words draws more engagement.
    ScorePair {
        word_a: String,
        word_b: String,
        #[arg(long, env = "READ_MODEL")]
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the full statistical battery on a dataset.
    Replicate {
        /// Pair table (CSV).
        #[arg(long)]
        data: PathBuf,
        /// Column map (TOML).
        #[arg(long)]
        config: PathBuf,
        /// JSON report.
        #[arg(long)]
        out: PathBuf,
        /// Markdown report.
        #[arg(long)]
        markdown: Option<PathBuf>,
        /// Predicted vs observed rate differences, as TSV.
        #[arg(long)]
        scatter: Option<PathBuf>,
        /// Add a battery on features computed from the resource cache.
        #[arg(long)]
        local: bool,
    },
    /// Suggest higher-engagement synonyms for each word of a text.
    Suggest {
        #[arg(long, env = "READ_MODEL")]
        model: PathBuf,
        #[arg(long)]
        text: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 5)]
        limit: usize,
    },
    /// Annotate a text file; writes the annotation document.
    Annotate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = "READ_MODEL")]
        model: PathBuf,
    },
    /// Run the HTTP service. `READ_BIND` overrides the bind address.
    Serve {
        /// Service configuration (TOML).
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Dataset,
    Local,
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("info")),
        )
        .with_writer(std::io::stderr)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let cache = cli.cache;
    match cli.command {
        Command::Ingest {
            wordnet,
            sentiwordnet,
            freq,
            out,
        } => ingest(&wordnet, sentiwordnet.as_deref(), freq.as_deref(), &out),
        Command::Features { word, json, batch } => {
            let resources = load_cache(&cache)?;
            let ex = FeatureExtractor::from_resources(&resources);
            match batch {
                Some(path) => features_batch(&ex, &path),
                None => features_one(&ex, word.as_deref().unwrap_or_default(), json),
            }
        }
        Command::Train {
            data,
            config,
            mode,
            features,
            out,
            holdout,
        } => train_cmd(&cache, &data, config.as_deref(), mode, features, &out, holdout),
        Command::ScorePair {
            word_a,
            word_b,
            model,
            json,
        } => {
            let resources = load_cache(&cache)?;
            let model = load_model(&model)?;
            score_pair(&resources, &model, &word_a, &word_b, json)
        }
        Command::Replicate {
            data,
            config,
            out,
            markdown,
            scatter,
            local,
        } => {
            let resources = if local { Some(load_cache(&cache)?) } else { None };
            replicate(&data, &config, resources.as_ref(), &out, markdown.as_deref(), scatter.as_deref())
        }
        Command::Suggest {
            model,
            text,
            json,
            limit,
        } => {
            let resources = load_cache(&cache)?;
            let model = load_model(&model)?;
            let config = AdvisorConfig {
                limit,
                ..AdvisorConfig::default()
            };
            let advisor = Advisor::new(FeatureExtractor::from_resources(&resources), &model, config);
            suggest(&advisor, &text, json)
        }
        Command::Annotate { input, out, model } => {
            let resources = load_cache(&cache)?;
            let model = load_model(&model)?;
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let advisor = Advisor::new(
                FeatureExtractor::from_resources(&resources),
                &model,
                AdvisorConfig::default(),
            );
            let doc = advisor.annotate_document(&text)?;
            write(&out, &doc.to_json()?)?;
            eprintln!("{} annotated tokens written to {}", doc.annotations.len(), out.display());
            Ok(())
        }
        Command::Serve { config } => {
            let cfg = read_api::ServiceConfig::load(&config)?.with_env()?;
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(read_api::serve(cfg))?;
            Ok(())
        }
    }
}

fn load_cache(path: &Path) -> Result<Resources> {
    Resources::read_cache(path).with_context(|| {
        format!("loading resource cache {} (create it with `read ingest`)", path.display())
    })
}

fn load_model(path: &Path) -> Result<TrainedModel> {
    TrainedModel::load(path).with_context(|| format!("loading model {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn ingest(wordnet: &Path, swn: Option<&Path>, freq: Option<&Path>, out: &Path) -> Result<()> {
    if swn.is_none() {
        eprintln!("warning: no --sentiwordnet; affect measures will be 0");
    }
    if freq.is_none() {
        eprintln!("warning: no --freq; frequency will be 0");
    }
    let resources = Resources::load(wordnet, swn, freq)?;
    resources.write_cache(out)?;
    println!(
        "{} synsets, {} sentiment scores, {} frequency entries -> {}",
        resources.lexicon.len(),
        resources.sentiment.len(),
        resources.frequency.len(),
        out.display()
    );
    Ok(())
}

fn format_value(feature: Feature, value: f64) -> String {
    match feature {
        Feature::PosMax | Feature::NegMax | Feature::Emotionality | Feature::Frequency => {
            format!("{value}")
        }
        _ => format!("{}", value as u64),
    }
}

fn features_one(ex: &FeatureExtractor<'_>, word: &str, json: bool) -> Result<()> {
    let report = ex.extract(word)?;
    if json {
        print!("{}", documents::to_json(&FeatureDocument::new(report)));
        return Ok(());
    }
    println!("word\t{}", report.word);
    for f in Feature::ALL {
        println!("{}\t{}", f.name(), format_value(f, report.features.get(f)));
    }
    let c = report.coverage;
    for (flag, set) in [
        ("lexicon_oov", c.lexicon_oov),
        ("frequency_oov", c.frequency_oov),
        ("no_sentiment", c.no_sentiment),
    ] {
        if set {
            println!("flag\t{flag}");
        }
    }
    Ok(())
}

fn features_batch(ex: &FeatureExtractor<'_>, path: &Path) -> Result<()> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let names: Vec<&str> = Feature::ALL.iter().map(|f| f.name()).collect();
    writeln!(out, "word\t{}\tlexicon_oov\tfrequency_oov\tno_sentiment", names.join("\t"))?;
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let word = line.trim();
        if word.is_empty() || word.starts_with('#') {
            continue;
        }
        let r = ex
            .extract(word)
            .with_context(|| format!("{}:{}", path.display(), n + 1))?;
        let values: Vec<String> = Feature::ALL
            .iter()
            .map(|&f| format_value(f, r.features.get(f)))
            .collect();
        let flag = |b: bool| if b { "1" } else { "0" };
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            r.word,
            values.join("\t"),
            flag(r.coverage.lexicon_oov),
            flag(r.coverage.frequency_oov),
            flag(r.coverage.no_sentiment)
        )?;
    }
    out.flush()?;
    Ok(())
}

fn train_cmd(
    cache: &Path,
    data: &Path,
    map: Option<&Path>,
    mode: DesignMode,
    source: Option<SourceArg>,
    out: &Path,
    holdout: Option<usize>,
) -> Result<()> {
    let map = match map {
        Some(p) => ColumnMap::load(p)?,
        None => ColumnMap::default(),
    };
    let mut dataset = load_dataset(data, &map)?;
    let source = match source {
        Some(SourceArg::Dataset) => FeatureSource::Dataset,
        Some(SourceArg::Local) => FeatureSource::Local,
        None if dataset.has_features(FeatureSource::Dataset) => FeatureSource::Dataset,
        None => FeatureSource::Local,
    };
    if source == FeatureSource::Local {
        let resources = load_cache(cache)?;
        dataset = dataset.with_local_features(&FeatureExtractor::from_resources(&resources))?;
    } else if !dataset.has_features(FeatureSource::Dataset) {
        bail!("{} has no feature columns; use --features local", data.display());
    }
    let features = dataset.feature_map(source);
    let pairs = dataset.pairs();
    let config = DesignConfig::with_mode(mode);
    let model = train(&build_design(&pairs, &features, &config)?)?;
    let acc = casewise_accuracy(&model, &pairs, &features)?;
    let fit = &model.fit;
    println!(
        "{mode}: {} pairs, R² = {:.4}, F({}, {}) = {:.3} (p = {:.3e}), in-sample accuracy {}/{}",
        pairs.len(),
        fit.r_squared,
        fit.f_df.0,
        fit.f_df.1,
        fit.f_stat,
        fit.f_p_value,
        acc.hits,
        acc.total
    );
    if fit.ill_conditioned {
        eprintln!("warning: design is ill-conditioned (condition {:.3e})", fit.condition_number);
    }
    if let Some(k) = holdout {
        let cv = cross_validate(&pairs, &features, &config, k)?;
        println!(
            "{k}-fold cross-validated accuracy {}/{} (out-of-sample extension)",
            cv.accuracy.hits, cv.accuracy.total
        );
    }
    model.save(out)?;
    Ok(())
}

fn score_pair(resources: &Resources, model: &TrainedModel, a: &str, b: &str, json: bool) -> Result<()> {
    let ex = FeatureExtractor::from_resources(resources);
    let ra = ex.extract(a)?;
    let rb = ex.extract(b)?;
    let prediction = predict_pair(model, &ra.features, &rb.features)?;
    let doc = PairDocument::new(&ra, &rb, prediction);
    if json {
        print!("{}", documents::to_json(&doc));
        return Ok(());
    }
    match &doc.winner {
        Some(w) => println!("winner\t{w}"),
        None => println!("winner\ttie"),
    }
    println!("margin\t{:+.6}", doc.margin);
    println!("feature\tdelta\tcontribution");
    for c in &doc.contributions {
        // Adding 0.0 turns -0.0 into 0.0.
        println!("{}\t{:.6}\t{:+.6}", c.feature.name(), c.delta + 0.0, c.contribution + 0.0);
    }
    for (w, cov) in [(&doc.word_a, doc.coverage_a), (&doc.word_b, doc.coverage_b)] {
        if cov.lexicon_oov {
            eprintln!("warning: {w:?} is not in the lexicon");
        }
    }
    Ok(())
}

fn replicate(
    data: &Path,
    map: &Path,
    resources: Option<&Resources>,
    out: &Path,
    markdown: Option<&Path>,
    scatter: Option<&Path>,
) -> Result<()> {
    let report = documents::replication_report(data, map, resources)?;
    write(out, &render_report(&report, ReportFormat::Json)?)?;
    if let Some(p) = markdown {
        write(p, &render_report(&report, ReportFormat::Markdown)?)?;
    }
    if let Some(p) = scatter {
        write(p, &render_report(&report, ReportFormat::Scatter)?)?;
    }
    for battery in &report.batteries {
        let source = match battery.feature_source {
            FeatureSource::Dataset => "dataset",
            FeatureSource::Local => "local",
        };
        for v in &battery.verdicts {
            println!("{source}\t{}\t{}\t{}", v.hypothesis, v.verdict.label(), v.evidence);
        }
    }
    eprintln!("report written to {}", out.display());
    Ok(())
}

fn suggest(advisor: &Advisor<'_>, text: &str, json: bool) -> Result<()> {
    let doc: AnnotationDocument = advisor.annotate_document(text)?;
    if json {
        print!("{}", doc.to_json()?);
        return Ok(());
    }
    for t in &doc.annotations {
        let note = if t.oov {
            " (not in lexicon)".to_string()
        } else if t.no_synonyms {
            " (no synonyms)".to_string()
        } else {
            String::new()
        };
        println!("{} [{}..{}]{note}", t.word, t.start, t.end);
        for c in &t.candidates {
            println!("  {}\t{:+.6}", c.word, c.margin);
        }
    }
    Ok(())
}
