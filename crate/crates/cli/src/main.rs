mod import;
mod reasoner;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use standpoint::frontend::{assemble_kb, assemble_plain, parse_document, parse_formula_xml, parse_simple_query};
use standpoint::model::{Formula, StandpointKb};
use standpoint::normalizer::{count_precisifications, normalize_kb, to_nnf};
use standpoint::oracle::{check_entailment_bounded, SearchLimits, Verdict};
use standpoint::par::Parallelism;
use standpoint::serializer::serialize_kb;
use standpoint::translator::{translate_kb_with, TranslateOptions};

use reasoner::Consistency;

const OK: u8 = 0;
const ENTAILED: u8 = 0;
const ERROR: u8 = 2;
const NOT_ENTAILED: u8 = 3;
const INCONCLUSIVE: u8 = 4;

/// Translate standpoint-annotated ontologies to plain OWL 2 and query them.
#[derive(Parser)]
#[command(name = "standpoint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a standpoint ontology into a plain one.
    Translate {
        input: PathBuf,
        /// Output file [default: <input>.translated.ofn]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the result instead of writing a file.
        #[arg(long)]
        dump: bool,
        /// Ontology IRI of the output [default: <input IRI>/translated]
        #[arg(long, value_name = "IRI")]
        rebase: Option<String>,
    },
    /// Import a plain ontology under a standpoint.
    Import {
        input: PathBuf,
        source: PathBuf,
        #[arg(long)]
        standpoint: String,
        /// Output file [default: <input>.imported.ofn, or <input>.translated.ofn with --translate]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Translate the merged ontology instead of saving it.
        #[arg(long)]
        translate: bool,
        #[arg(long)]
        dump: bool,
    },
    /// Ask whether a Boolean combination of standpoint axioms is entailed.
    Query(QueryArgs),
}

#[derive(Args)]
struct QueryArgs {
    input: PathBuf,
    /// Query in the simple syntax, e.g. `[LU](Forest sub Land)`.
    #[arg(long, conflicts_with = "query_file", required_unless_present = "query_file")]
    simple: Option<String>,
    /// File holding a formula in the label XML syntax.
    #[arg(long, value_name = "PATH")]
    query_file: Option<PathBuf>,
    /// Command deciding consistency of the translated ontology; the file
    /// path is appended.
    #[arg(long, value_name = "CMD")]
    reasoner_cmd: Option<String>,
    #[arg(long, value_name = "N", default_value_t = 3)]
    domain_bound: usize,
    /// [default: number of precisifications of the query ontology]
    #[arg(long, value_name = "M")]
    prec_bound: Option<usize>,
    /// Largest number of interpretation bits per search.
    #[arg(long, default_value_t = SearchLimits::default().max_bits)]
    max_bits: usize,
    /// Solver conflicts allowed per search.
    #[arg(long, default_value_t = SearchLimits::default().max_conflicts)]
    max_conflicts: u64,
    /// Search on a single thread.
    #[arg(long)]
    sequential: bool,
}

fn load(path: &Path) -> Result<StandpointKb> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = parse_document(&text).with_context(|| format!("{}", path.display()))?;
    assemble_kb(&doc).with_context(|| format!("{}", path.display()))
}

fn sibling(input: &Path, suffix: &str) -> PathBuf {
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    input.with_file_name(format!("{stem}{suffix}"))
}

fn emit(text: &str, dump: bool, out: PathBuf) -> Result<()> {
    if dump {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(&out, text).with_context(|| format!("cannot write {}", out.display()))?;
        eprintln!("wrote {}", out.display());
    }
    Ok(())
}

fn translate(kb: &StandpointKb, output_iri: Option<String>) -> Result<String> {
    let kb = normalize_kb(kb)?;
    let p = count_precisifications(&kb);
    let opts = TranslateOptions {
        output_iri,
        ..TranslateOptions::default()
    };
    let plain = translate_kb_with(&kb, &opts)?;
    eprintln!("p = {p}, {} axioms", plain.axioms.len());
    Ok(serialize_kb(&plain))
}

fn cmd_translate(input: &Path, out: Option<PathBuf>, dump: bool, rebase: Option<String>) -> Result<u8> {
    let text = translate(&load(input)?, rebase)?;
    emit(&text, dump, out.unwrap_or_else(|| sibling(input, ".translated.ofn")))?;
    Ok(OK)
}

fn cmd_import(
    input: &Path,
    source: &Path,
    standpoint: &str,
    out: Option<PathBuf>,
    translate_merged: bool,
    dump: bool,
) -> Result<u8> {
    let kb = load(input)?;
    let text = fs::read_to_string(source).with_context(|| format!("cannot read {}", source.display()))?;
    let doc = parse_document(&text).with_context(|| format!("{}", source.display()))?;
    let src = assemble_plain(&doc).with_context(|| format!("{}", source.display()))?;
    let merged = import::import(&kb, &src, standpoint);
    // Reading the result back validates the standpoint name.
    let merged = assemble_kb(&parse_document(&serialize_kb(&merged))?)?;
    eprintln!("imported {} axioms under {standpoint}", src.axioms.len());
    if translate_merged {
        let text = translate(&merged, None)?;
        emit(&text, dump, out.unwrap_or_else(|| sibling(input, ".translated.ofn")))?;
    } else {
        emit(&serialize_kb(&merged), dump, out.unwrap_or_else(|| sibling(input, ".imported.ofn")))?;
    }
    Ok(OK)
}

fn cmd_query(args: &QueryArgs) -> Result<u8> {
    let kb = load(&args.input)?;
    let prefixes = parse_document(&fs::read_to_string(&args.input)?)?.prefixes;
    let query = match (&args.simple, &args.query_file) {
        (Some(q), _) => parse_simple_query(q, &prefixes).context("query")?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            parse_formula_xml(&text, &prefixes).with_context(|| format!("{}", path.display()))?
        }
        (None, None) => unreachable!("clap requires a query"),
    };
    let mut negated = kb.clone();
    negated.formulas.push(to_nnf(&Formula::not(query.clone())));
    let negated = normalize_kb(&negated)?;
    let p = count_precisifications(&negated);
    eprintln!("query: {query}");
    eprintln!("p = {p}");

    if let Some(cmd) = &args.reasoner_cmd {
        let plain = translate_kb_with(&negated, &TranslateOptions::default())?;
        let mut file = tempfile::Builder::new().suffix(".ofn").tempfile()?;
        file.write_all(serialize_kb(&plain).as_bytes())?;
        file.flush()?;
        return Ok(match reasoner::check(cmd, file.path()) {
            Ok(Consistency::Inconsistent) => {
                eprintln!("ENTAILED");
                ENTAILED
            }
            Ok(Consistency::Consistent) => {
                eprintln!("NOT_ENTAILED");
                NOT_ENTAILED
            }
            Err(e) => {
                eprintln!("INCONCLUSIVE: {e:#}");
                INCONCLUSIVE
            }
        });
    }

    let n = args.domain_bound;
    let m = args.prec_bound.unwrap_or(p);
    let limits = SearchLimits {
        max_bits: args.max_bits,
        max_conflicts: args.max_conflicts,
        parallelism: if args.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        },
    };
    Ok(match check_entailment_bounded(&kb, &query, n, m, &limits) {
        Verdict::EntailedWithinBounds => {
            eprintln!("ENTAILED_WITHIN_BOUNDS: no countermodel with at most {n} elements and {m} precisifications");
            ENTAILED
        }
        Verdict::NotEntailed(d) => {
            eprintln!("NOT_ENTAILED; countermodel:\n{d}");
            NOT_ENTAILED
        }
        Verdict::Inconclusive(e) => {
            eprintln!("INCONCLUSIVE: {e}");
            INCONCLUSIVE
        }
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Translate {
            input,
            out,
            dump,
            rebase,
        } => cmd_translate(&input, out, dump, rebase),
        Command::Import {
            input,
            source,
            standpoint,
            out,
            translate,
            dump,
        } => cmd_import(&input, &source, &standpoint, out, translate, dump),
        Command::Query(args) => cmd_query(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
