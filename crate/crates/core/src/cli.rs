//! Command-line front end.
//!
//! Exit statuses: 0 clean, 1 domain errors (malformed labels), 2 usage, I/O
//! or format failures. Data goes to `out`, diagnostics to `err`.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::conll::{read_conll, write_conll, ConllError, Document, LabelColumn, ReadOptions};
use crate::label::TagScheme;
use crate::metrics::Scorer;
use crate::parse::parse_spans;
use crate::span::{ResolutionPolicy, SpanError};
use crate::transitions::build_transition_table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "spantag",
    version,
    about = "Validate, convert, parse and score span-labelled CoNLL files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every sentence against the scheme's grammar.
    Validate {
        file: PathBuf,
        #[arg(long, value_parser = parse_scheme)]
        scheme: TagScheme,
        #[command(flatten)]
        read: ReadArgs,
    },
    /// Convert labels between schemes; refuses malformed input.
    Convert {
        file: PathBuf,
        #[arg(long, value_parser = parse_scheme)]
        from: TagScheme,
        #[arg(long, value_parser = parse_scheme)]
        to: TagScheme,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        read: ReadArgs,
    },
    /// List the spans in each sentence.
    Parse {
        file: PathBuf,
        #[arg(long, value_parser = parse_scheme)]
        scheme: TagScheme,
        #[arg(long, value_parser = parse_policy, default_value = "conlleval")]
        policy: ResolutionPolicy,
        /// Exit 1 if any sentence has errors.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        read: ReadArgs,
    },
    /// Exact-match span precision, recall and F1.
    Score {
        gold: PathBuf,
        predicted: PathBuf,
        #[arg(long, value_parser = parse_scheme)]
        scheme: TagScheme,
        #[arg(long, value_parser = parse_policy, default_value = "conlleval")]
        policy: ResolutionPolicy,
        /// Fail (exit 1) if the gold file is not well-formed.
        #[arg(long)]
        strict_gold: bool,
        /// Also print `metric.<type>.<field>=<value>` lines.
        #[arg(long)]
        machine: bool,
        #[command(flatten)]
        read: ReadArgs,
    },
    /// Print the legal-transition table or mask for a label vocabulary.
    Transitions {
        #[arg(long, value_parser = parse_scheme)]
        scheme: TagScheme,
        /// Comma-separated entity types.
        #[arg(long, value_delimiter = ',', required = true)]
        types: Vec<String>,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Table,
    Mask,
}

#[derive(Debug, Args)]
struct ReadArgs {
    /// 0-based label column, or `last`.
    #[arg(long, value_parser = parse_label_column, default_value = "last")]
    label_column: LabelColumn,
    /// Drop `-DOCSTART-` rows.
    #[arg(long)]
    skip_docstart: bool,
    /// Ignore lines starting with this prefix.
    #[arg(long)]
    comment_prefix: Option<String>,
    /// Uppercase label prefixes before decoding (`b-org` becomes `B-org`).
    #[arg(long)]
    uppercase_prefixes: bool,
}

impl ReadArgs {
    fn options(&self) -> ReadOptions {
        ReadOptions {
            label_column: self.label_column,
            skip_docstart: self.skip_docstart,
            comment_prefix: self.comment_prefix.clone(),
            uppercase_prefixes: self.uppercase_prefixes,
        }
    }
}

fn parse_scheme(s: &str) -> Result<TagScheme, String> {
    s.parse()
        .map_err(|e: crate::label::UnknownScheme| e.to_string())
}

fn parse_policy(s: &str) -> Result<ResolutionPolicy, String> {
    s.parse()
        .map_err(|e: crate::span::UnknownPolicy| e.to_string())
}

fn parse_label_column(s: &str) -> Result<LabelColumn, String> {
    if s == "last" {
        return Ok(LabelColumn::Last);
    }
    s.parse()
        .map(LabelColumn::Index)
        .map_err(|_| format!("expected a column index or 'last', got '{s}'"))
}

/// Runs the CLI with explicit arguments and output streams; returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate { file, scheme, read } => validate(&file, scheme, &read, out, err),
        Command::Convert {
            file,
            from,
            to,
            output,
            read,
        } => convert(&file, from, to, output.as_deref(), &read, out, err),
        Command::Parse {
            file,
            scheme,
            policy,
            strict,
            read,
        } => parse(&file, scheme, policy, strict, &read, out, err),
        Command::Score {
            gold,
            predicted,
            scheme,
            policy,
            strict_gold,
            machine,
            read,
        } => score(
            &gold,
            &predicted,
            scheme,
            policy,
            strict_gold,
            machine,
            &read,
            out,
            err,
        ),
        Command::Transitions {
            scheme,
            types,
            format,
        } => transitions(scheme, &types, format, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn load(path: &Path, read: &ReadArgs) -> Result<Document, String> {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    read_conll(BufReader::new(file), &read.options())
        .map_err(|e: ConllError| format!("{}: {e}", path.display()))
}

fn labels<'a>(doc: &'a Document, read: &ReadArgs) -> Vec<Vec<&'a str>> {
    doc.sentences
        .iter()
        .map(|s| {
            s.labels(read.label_column)
                .expect("reader checked the label column")
        })
        .collect()
}

fn diagnostic(err: &mut dyn Write, path: &Path, line: usize, e: &SpanError) -> io::Result<()> {
    writeln!(
        err,
        "{}:{line}: {}: {} (label '{}')",
        path.display(),
        e.kind,
        e.message,
        e.label
    )
}

fn validate(
    path: &Path,
    scheme: TagScheme,
    read: &ReadArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let doc = load(path, read)?;
    let (mut spans, mut errors) = (0, 0);
    for (sentence, labels) in doc.sentences.iter().zip(labels(&doc, read)) {
        let result = parse_spans(&labels, scheme, ResolutionPolicy::Conlleval);
        spans += result.spans.len();
        errors += result.errors.len();
        for e in &result.errors {
            diagnostic(err, path, sentence.line(e.token_index), e).map_err(|e| e.to_string())?;
        }
    }
    writeln!(
        out,
        "{}: {} sentences, {spans} spans, {errors} errors",
        path.display(),
        doc.sentences.len()
    )
    .map_err(|e| e.to_string())?;
    Ok(if errors == 0 { EXIT_OK } else { EXIT_DOMAIN })
}

fn convert(
    path: &Path,
    from: TagScheme,
    to: TagScheme,
    output: Option<&Path>,
    read: &ReadArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let doc = load(path, read)?;
    let mut converted = Vec::with_capacity(doc.sentences.len());
    let mut failed = false;
    for (sentence, labels) in doc.sentences.iter().zip(labels(&doc, read)) {
        match crate::convert::convert(&labels, from, to) {
            Ok(new_labels) => converted.push(
                sentence
                    .with_labels(read.label_column, &new_labels)
                    .expect("conversion preserves length"),
            ),
            Err(e) => {
                failed = true;
                for e in &e.errors {
                    diagnostic(err, path, sentence.line(e.token_index), e)
                        .map_err(|e| e.to_string())?;
                }
            }
        }
    }
    if failed {
        return Ok(EXIT_DOMAIN);
    }
    let text = write_conll(&Document {
        sentences: converted,
    });
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string())?,
    }
    Ok(EXIT_OK)
}

fn parse(
    path: &Path,
    scheme: TagScheme,
    policy: ResolutionPolicy,
    strict: bool,
    read: &ReadArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let doc = load(path, read)?;
    let mut any_errors = false;
    for (n, (sentence, labels)) in doc.sentences.iter().zip(labels(&doc, read)).enumerate() {
        let result = parse_spans(&labels, scheme, policy);
        let tokens = sentence.tokens();
        for s in &result.spans {
            writeln!(
                out,
                "{n} {} {} {} {}",
                s.entity_type(),
                s.start(),
                s.end(),
                tokens[s.start()..s.end()].join(" ")
            )
            .map_err(|e| e.to_string())?;
        }
        for e in &result.errors {
            any_errors = true;
            diagnostic(err, path, sentence.line(e.token_index), e).map_err(|e| e.to_string())?;
        }
    }
    Ok(if strict && any_errors {
        EXIT_DOMAIN
    } else {
        EXIT_OK
    })
}

#[allow(clippy::too_many_arguments)]
fn score(
    gold_path: &Path,
    pred_path: &Path,
    scheme: TagScheme,
    policy: ResolutionPolicy,
    strict_gold: bool,
    machine: bool,
    read: &ReadArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let gold_doc = load(gold_path, read)?;
    let pred_doc = load(pred_path, read)?;
    let (gold, pred) = (labels(&gold_doc, read), labels(&pred_doc, read));
    if gold.len() != pred.len() {
        return Err(format!(
            "sentence {}: gold has {} sentences but predictions have {}",
            gold.len().min(pred.len()),
            gold.len(),
            pred.len()
        ));
    }
    if let Some(i) = gold.iter().zip(&pred).position(|(g, p)| g.len() != p.len()) {
        return Err(format!(
            "sentence {i}: gold has {} tokens but prediction has {}",
            gold[i].len(),
            pred[i].len()
        ));
    }

    let mut scorer = Scorer::new();
    let mut gold_errors = false;
    for ((sentence, g), p) in gold_doc.sentences.iter().zip(&gold).zip(&pred) {
        let g = parse_spans(g, scheme, policy);
        if strict_gold {
            for e in &g.errors {
                gold_errors = true;
                diagnostic(err, gold_path, sentence.line(e.token_index), e)
                    .map_err(|e| e.to_string())?;
            }
        }
        scorer.add_sequence(&g.spans, &parse_spans(p, scheme, policy).spans);
    }
    if gold_errors {
        return Ok(EXIT_DOMAIN);
    }
    let report = scorer.report();
    out.write_all(report.render_table().as_bytes())
        .map_err(|e| e.to_string())?;
    if machine {
        out.write_all(report.render_machine().as_bytes())
            .map_err(|e| e.to_string())?;
    }
    Ok(EXIT_OK)
}

fn transitions(
    scheme: TagScheme,
    types: &[String],
    format: TableFormat,
    out: &mut dyn Write,
    _err: &mut dyn Write,
) -> Result<i32, String> {
    let table = build_transition_table(types, scheme).map_err(|e| e.to_string())?;
    let text = match format {
        TableFormat::Table => table.render_table(),
        TableFormat::Mask => table.render_mask(),
    };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}
