//! The `ehrmon` command line: evaluate terms in a model, normalize FLAd
//! terms, run checkers and enumerate trees.

pub mod checks;
pub mod model;
pub mod term;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ehrmon_core::coherence::Verdict;
use ehrmon_core::normalform::NormalForm;
use ehrmon_core::xtree::{enumerate_trees, enumerate_trees_by_depth, prune, random_raw_tree, TreeClass};
use ehrmon_core::{Alphabet, BaseMonoid, Sym, XTree};

use checks::CheckArgs;
use model::{eval, ModelSpec, TreeModel};

/// Exit code for usage errors and malformed parameters.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "ehrmon", version, about = "Free inverse, ample and Ehresmann monoids, and coherence checkers")]
pub struct Cli {
    /// Cap on the number of trees any enumeration may visit.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub budget: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a term in a model.
    Eval {
        term: String,
        #[arg(long, default_value = "fad")]
        model: ModelSpec,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Normal form of a term of FLAd(X).
    Normalize {
        term: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a checker; the exit code is 0 on pass, 1 on fail, 2 if inconclusive.
    Check {
        /// One of forbidden-config, bgr, ghe, triangle, lemma-m-n, annihilator,
        /// left-intersect, right-intersect, mm-fi-iso, theta-morphism.
        name: String,
        #[command(flatten)]
        args: CheckArgs,
    },
    /// List pruned trees, exhaustively or at random.
    Enumerate {
        /// fad or flad.
        #[arg(long, default_value = "fad")]
        model: ModelSpec,
        /// Edge bound.
        #[arg(long, default_value_t = 2)]
        bound: usize,
        /// Directed depth bound instead of an edge bound (flad only).
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        /// Draw this many random trees instead of enumerating.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// What a command printed and how it exited.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e:#}\n") },
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Eval { term, model, format } => eval_command(term, *model, *format).map(Outcome::ok),
        Command::Normalize { term, format } => normalize_command(term, *format).map(Outcome::ok),
        Command::Check { name, args } => {
            let (report, extra) = checks::run_check(name, args, cli.budget)?;
            let mut out = json!({"check": name, "result": report.verdict});
            if let Value::Object(extra) = extra {
                out.as_object_mut().expect("object").extend(extra);
            }
            if let Value::Object(fields) = report.to_json() {
                out.as_object_mut().expect("object").extend(fields);
            }
            let code = match report.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Inconclusive => 2,
            };
            Ok(Outcome { code, stdout: pretty(&out), stderr: String::new() })
        }
        Command::Enumerate { model, bound, depth, letters, random, seed, format } => {
            enumerate_command(*model, *bound, *depth, *letters, *random, *seed, *format, cli.budget).map(Outcome::ok)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn eval_command(text: &str, spec: ModelSpec, format: Format) -> Result<String> {
    let term = term::parse(text)?;
    with_model!(spec, m => {
        let e = eval(&mut m, &term)?;
        Ok(match format {
            Format::Json => pretty(&m.ctx().elem_to_json(&e)),
            Format::Text => format!("{}\n", m.text(&e)),
            Format::Dot => match m.dot(&e) {
                Some(dot) => dot,
                None => bail!("dot output unsupported in model {spec}"),
            },
        })
    })
}

fn normalize_command(text: &str, format: Format) -> Result<String> {
    let mut m = TreeModel::new(true);
    let t = eval(&mut m, &term::parse(text)?)?;
    let nf = NormalForm::of_tree(&t);
    let alphabet = &m.ctx.alphabet;
    Ok(match format {
        Format::Text => format!("{}\n", nf.format_pretty(alphabet)),
        Format::Json => pretty(&json!({
            "words": nf.words().iter().map(|w| alphabet.format_word(w)).collect::<Vec<_>>(),
            "idempotents": nf.idempotents().iter().map(|e| e.to_term(alphabet)).collect::<Vec<_>>(),
            "text": nf.format_text(alphabet),
        })),
        Format::Dot => bail!("dot output is not available for normal forms"),
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_command(
    spec: ModelSpec,
    bound: usize,
    depth: Option<usize>,
    letters: usize,
    random: Option<usize>,
    seed: u64,
    format: Format,
    budget: usize,
) -> Result<String> {
    let class = match spec {
        ModelSpec::Fad => TreeClass::Ehresmann,
        ModelSpec::Flad => TreeClass::LeftEhresmann,
        other => bail!("enumerate covers fad and flad, not {other}"),
    };
    let alphabet = Alphabet::standard(letters);
    let labels: Vec<Sym> = alphabet.syms().collect();
    let trees: Vec<XTree> = match (random, depth) {
        (Some(n), _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| prune(&random_raw_tree(&mut rng, &labels, bound, class))).collect()
        }
        (None, Some(d)) if class == TreeClass::LeftEhresmann => enumerate_trees_by_depth(&labels, d, budget)?,
        (None, Some(_)) => bail!("--depth enumeration is only available for flad"),
        (None, None) => enumerate_trees(&labels, bound, class, budget)?,
    };
    Ok(match format {
        Format::Text => trees.iter().map(|t| format!("{}\n", t.to_term(&alphabet))).collect(),
        Format::Json => pretty(&Value::Array(trees.iter().map(|t| t.to_json(&alphabet)).collect())),
        Format::Dot => trees.iter().map(|t| ehrmon_core::xtree::to_dot(t.raw(), &alphabet)).collect(),
    })
}
