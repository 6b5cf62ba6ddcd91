//! The `qreg` command line: distances, witnesses and certificates.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qreg::derivatives::fundamental_decomposition;
use qreg::metric::{distance_over, Config, Distance};
use qreg::oracle::brute_distance;
use qreg::proof::{self, Certificate, SynthesisError};
use qreg::scalar::{format_decimal, format_rational, parse_rational};
use qreg::syntax::infer_alphabet;
use qreg::{build, Alphabet, Regex, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qreg",
    version,
    about = "Shortest-distinguishing-word distance between regular expressions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance and shortest distinguishing word of two expressions
    Dist(DistArgs),
    /// Write a certificate for `LEFT ≡[EPS] RIGHT`
    Prove(ProveArgs),
    /// Check a certificate file
    Check(CheckArgs),
    /// Distances for a file of tab-separated expression pairs
    Batch(BatchArgs),
    /// One-step normal form of an expression and its certificate
    Nf(NfArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Discount factor, as p/q or a decimal strictly between 0 and 1
    #[arg(long, default_value = "1/2")]
    pub lambda: String,
    /// Input letters, e.g. `ab`; inferred from the expressions by default
    #[arg(long)]
    pub alphabet: Option<String>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    pub left: String,
    pub right: String,
    #[command(flatten)]
    pub common: Common,
    /// Cross-check against brute-force word enumeration
    #[arg(long)]
    pub verify: bool,
    /// Show the descent at the root pair
    #[arg(long)]
    pub trace: bool,
    /// Write the automaton of both expressions in Graphviz format
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ProveArgs {
    pub left: String,
    pub right: String,
    /// Distance to prove; omit with --tight
    #[arg(required_unless_present = "tight", allow_negative_numbers = true)]
    pub eps: Option<String>,
    /// Prove at exactly the computed distance
    #[arg(long, conflicts_with = "eps")]
    pub tight: bool,
    #[command(flatten)]
    pub common: Common,
    /// Output file; standard output by default
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    /// Required discount factor; the certificate's own by default
    #[arg(long)]
    pub lambda: Option<String>,
    /// Template instances checked beyond index 0
    #[arg(long, default_value_t = qreg::metric::DEFAULT_SPOT_CHECKS)]
    pub spot_checks: usize,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// One `LEFT<TAB>RIGHT` pair per line
    pub file: PathBuf,
    #[arg(long, default_value = "1/2")]
    pub lambda: String,
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct NfArgs {
    pub expr: String,
    #[command(flatten)]
    pub common: Common,
    /// Write the certificate here instead of standard output
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// What `dist` reports, in human form or as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub left: String,
    pub right: String,
    pub lambda: String,
    pub distance: String,
    pub decimal: String,
    /// Shortest distinguishing word; `None` at distance 0.
    pub witness: Option<String>,
    pub alphabet: String,
    pub iterations: usize,
    pub states: usize,
    pub pairs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    pub elapsed_ms: f64,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn refused(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_REFUSED,
        message: message.into(),
    }
}

fn io_error(path: &Path, err: std::io::Error) -> Failure {
    input(format!("{}: {err}", path.display()))
}

type Outcome = Result<(), Failure>;

/// A reader that stopped listening is not an error.
fn closed_pipe(e: std::io::Error) -> Outcome {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        Ok(())
    } else {
        Err(input(e.to_string()))
    }
}

/// Runs one command and returns its exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Dist(args) => dist(args, out),
        Command::Prove(args) => prove(args, out, err),
        Command::Check(args) => check(args, out),
        Command::Batch(args) => batch(args, out),
        Command::Nf(args) => nf(args, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "qreg: {}", f.message);
            f.code
        }
    }
}

pub fn parse_config(lambda: &str) -> Result<Config, Failure> {
    let value = parse_rational(lambda).map_err(|e| input(format!("--lambda: {e}")))?;
    Config::new(value).map_err(|e| input(format!("--lambda: {e}")))
}

fn parse_alphabet(text: &str) -> Result<Alphabet, Failure> {
    text.parse().map_err(|e| input(format!("--alphabet: {e}")))
}

fn parse_expr(text: &str, alphabet: Option<&Alphabet>) -> Result<Regex, Failure> {
    let parsed = match alphabet {
        Some(a) => Regex::parse(text, a),
        None => Regex::parse_any(text),
    };
    parsed.map_err(|e| input(format!("cannot parse `{text}`: {e}")))
}

/// Both expressions and the alphabet they are read over.
fn parse_pair(left: &str, right: &str, alphabet: Option<&str>) -> Result<(Regex, Regex, Alphabet), Failure> {
    let given = alphabet.map(parse_alphabet).transpose()?;
    let e = parse_expr(left, given.as_ref())?;
    let f = parse_expr(right, given.as_ref())?;
    let alphabet = given.unwrap_or_else(|| infer_alphabet(&e, &f));
    Ok((e, f, alphabet))
}

fn measure(e: &Regex, f: &Regex, alphabet: &Alphabet, cfg: &Config) -> Result<Distance, Failure> {
    distance_over(e, f, alphabet, cfg).map_err(|e| input(e.to_string()))
}

/// The empty word is shown as `""`.
pub fn show_word(w: &Word) -> String {
    if w.is_empty() {
        "\"\"".to_string()
    } else {
        w.to_string()
    }
}

/// `Err` with exit code 3 when the oracle disagrees.
fn verify(e: &Regex, f: &Regex, d: &Distance, cfg: &Config) -> Outcome {
    let brute = brute_distance(e, f, d.pairs, cfg);
    if brute == d.value {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_MISMATCH,
            message: format!(
                "verify mismatch for {e} vs {f}: descent gives {}, enumeration gives {}",
                format_rational(&d.value),
                format_rational(&brute)
            ),
        })
    }
}

pub fn dist(args: &DistArgs, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let cfg = parse_config(&args.common.lambda)?;
    let (e, f, alphabet) = parse_pair(&args.left, &args.right, args.common.alphabet.as_deref())?;
    let d = measure(&e, &f, &alphabet, &cfg)?;
    if args.verify {
        verify(&e, &f, &d, &cfg)?;
    }
    if let Some(path) = &args.dot {
        let aut = build(&[e.clone(), f.clone()], &alphabet).map_err(|e| input(e.to_string()))?;
        fs::write(path, aut.to_dot()).map_err(|e| io_error(path, e))?;
    }
    let report = RunReport {
        left: e.to_string(),
        right: f.to_string(),
        lambda: format_rational(cfg.lambda()),
        distance: format_rational(&d.value),
        decimal: format_decimal(&d.value),
        witness: d.witness.as_ref().map(|w| w.to_string()),
        alphabet: alphabet.to_string(),
        iterations: d.iterations,
        states: d.states,
        pairs: d.pairs,
        trace: args
            .trace
            .then(|| d.root_trace.iter().map(|v| format_rational(&cfg.value(*v))).collect()),
        verified: args.verify.then_some(true),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let text = if args.json {
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        human(&report)
    };
    writeln!(out, "{text}").or_else(closed_pipe)
}

fn human(r: &RunReport) -> String {
    let witness = match &r.witness {
        None => "-".to_string(),
        Some(w) if w.is_empty() => "\"\"".to_string(),
        Some(w) => w.clone(),
    };
    let mut lines = vec![
        format!("left        {}", r.left),
        format!("right       {}", r.right),
        format!("lambda      {}", r.lambda),
        format!("distance    {} ({})", r.distance, r.decimal),
        format!("witness     {witness}"),
        format!("alphabet    {}", r.alphabet),
        format!("states      {}", r.states),
        format!("pairs       {}", r.pairs),
        format!("iterations  {}", r.iterations),
    ];
    if let Some(trace) = &r.trace {
        for (i, v) in trace.iter().enumerate() {
            lines.push(format!("psi[{i}]      {v}"));
        }
    }
    if r.verified == Some(true) {
        lines.push("verified    yes".to_string());
    }
    lines.push(format!("time        {:.3} ms", r.elapsed_ms));
    lines.join("\n")
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => writeln!(out, "{text}").or_else(closed_pipe),
    }
}

pub fn prove(args: &ProveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let cfg = parse_config(&args.common.lambda)?;
    let (e, f, alphabet) = parse_pair(&args.left, &args.right, args.common.alphabet.as_deref())?;
    let eps = match &args.eps {
        Some(text) => parse_rational(text).map_err(|e| input(format!("epsilon: {e}")))?,
        None => measure(&e, &f, &alphabet, &cfg)?.value,
    };
    let cert = match proof::synthesize_certificate(&e, &f, &eps, &cfg) {
        Ok(c) => c,
        Err(SynthesisError::TooSmall { distance, witness }) => {
            let w = witness.as_ref().map_or("-".to_string(), show_word);
            return Err(refused(format!(
                "cannot prove {e} ≡[{}] {f}: the distance is {} (witness {w})",
                format_rational(&eps),
                format_rational(&distance)
            )));
        }
        Err(other) => return Err(input(other.to_string())),
    };
    write_output(args.output.as_deref(), &proof::to_json(&cert), out)?;
    if let Some(path) = &args.output {
        let _ = writeln!(
            err,
            "wrote {} ({} nodes) to {}",
            cert.conclusion(),
            cert.root.node_count(),
            path.display()
        );
    }
    Ok(())
}

pub fn check(args: &CheckArgs, out: &mut dyn Write) -> Outcome {
    let text = fs::read_to_string(&args.file).map_err(|e| io_error(&args.file, e))?;
    let cert: Certificate = proof::from_json(&text).map_err(|e| input(format!("{}: {e}", args.file.display())))?;
    let cfg = match &args.lambda {
        Some(l) => parse_config(l)?,
        None => Config::new(cert.lambda.clone()).map_err(|e| input(e.to_string()))?,
    }
    .with_spot_checks(args.spot_checks);
    match proof::check(&cert, &cfg) {
        Ok(()) => writeln!(out, "ok: {} ({} nodes)", cert.conclusion(), cert.root.node_count()).or_else(closed_pipe),
        Err(e) => Err(refused(format!("check failed {e}"))),
    }
}

/// One output row of `batch`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchRow {
    pub left: String,
    pub right: String,
    pub distance: String,
    pub witness: String,
    pub error: String,
    pub mismatch: bool,
}

impl BatchRow {
    fn tsv(&self) -> String {
        [&self.left, &self.right, &self.distance, &self.witness, &self.error]
            .map(|s| s.as_str())
            .join("\t")
    }
}

pub const BATCH_HEADER: &str = "left\tright\tdistance\twitness\terror";

/// Evaluates one input line.
pub fn batch_row(line: &str, cfg: &Config, check_oracle: bool) -> BatchRow {
    let mut row = BatchRow {
        left: String::new(),
        right: String::new(),
        distance: "-".to_string(),
        witness: "-".to_string(),
        error: String::new(),
        mismatch: false,
    };
    let Some((l, r)) = line.split_once('\t') else {
        row.left = line.to_string();
        row.error = "expected two tab-separated expressions".to_string();
        return row;
    };
    row.left = l.trim().to_string();
    row.right = r.trim().to_string();
    let result = parse_pair(l, r, None).and_then(|(e, f, alphabet)| {
        let d = measure(&e, &f, &alphabet, cfg)?;
        if check_oracle {
            verify(&e, &f, &d, cfg)?;
        }
        Ok(d)
    });
    match result {
        Ok(d) => {
            row.distance = format_rational(&d.value);
            row.witness = d.witness.as_ref().map_or("-".to_string(), show_word);
        }
        Err(f) => {
            row.mismatch = f.code == EXIT_MISMATCH;
            row.error = f.message;
        }
    }
    row
}

pub fn batch(args: &BatchArgs, out: &mut dyn Write) -> Outcome {
    let cfg = parse_config(&args.lambda)?;
    let text = fs::read_to_string(&args.file).map_err(|e| io_error(&args.file, e))?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let rows: Vec<BatchRow> = lines.par_iter().map(|l| batch_row(l, &cfg, args.verify)).collect();
    let write = |out: &mut dyn Write, s: &str| writeln!(out, "{s}").or_else(closed_pipe);
    if !rows.is_empty() {
        write(out, BATCH_HEADER)?;
    }
    for row in &rows {
        write(out, &row.tsv())?;
    }
    let failed = rows.iter().filter(|r| !r.error.is_empty()).count();
    if rows.iter().any(|r| r.mismatch) {
        Err(Failure {
            code: EXIT_MISMATCH,
            message: "verify mismatch in batch".to_string(),
        })
    } else if failed > 0 {
        Err(input(format!("{failed} of {} rows failed", rows.len())))
    } else {
        Ok(())
    }
}

pub fn nf(args: &NfArgs, out: &mut dyn Write) -> Outcome {
    let cfg = parse_config(&args.common.lambda)?;
    let given = args.common.alphabet.as_deref().map(parse_alphabet).transpose()?;
    let e = parse_expr(&args.expr, given.as_ref())?;
    let alphabet = given.unwrap_or_else(|| infer_alphabet(&e, &e));
    let proof = proof::normal_form_proof(&e, &alphabet).map_err(|e| input(e.to_string()))?;
    writeln!(out, "{}", fundamental_decomposition(&e, &alphabet)).or_else(closed_pipe)?;
    let cert = Certificate::new(cfg.lambda().clone(), proof);
    write_output(args.output.as_deref(), &proof::to_json(&cert), out)
}
