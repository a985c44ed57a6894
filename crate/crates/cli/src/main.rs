use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sqword::{BinaryWord, CountReport, DirectiveSequence, ParamBounds, Params, SquareStream};

#[derive(Parser, Serialize)]
#[command(
    name = "sqword",
    version,
    about = "Solutions of X1^2...Xn^2 = (X1...Xn)^2 over minimal squares"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Generate standard, Fibonacci or central words
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Square root of a product of minimal squares
    Sqrt(SqrtArgs),
    /// Check whether a word is a solution
    Check(CheckArgs),
    /// Classify a solution as type I, type II or a power
    Classify(ClassifyArgs),
    /// Number of solutions of length n
    Count(CountArgs),
    /// List the solutions of length n that start with 0 and avoid 11
    List(ListArgs),
    /// Orbits of the doubling map modulo l
    Orbits(OrbitsArgs),
    /// Prefixes of infinite fixed points and periodic points of the square root map
    Fixedpoint(FixedpointArgs),
    /// Eventual period of a word
    Period(PeriodArgs),
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum GenCommand {
    /// Standard word of a directive sequence such as 2,1,1,1
    Standard {
        #[arg(long, value_delimiter = ',', required = true)]
        directive: Vec<u32>,
        /// Print the reversal
        #[arg(long)]
        reversed: bool,
    },
    /// Fibonacci word s_k, k >= -1
    Fibonacci {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        reversed: bool,
    },
    /// Central word of slope c/d
    Central {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        d: u64,
    },
}

#[derive(Args, Serialize)]
struct WordInput {
    /// Word over {0, 1}
    #[arg(
        long,
        required_unless_present = "word_file",
        conflicts_with = "word_file"
    )]
    word: Option<String>,
    /// File holding the word; surrounding whitespace is ignored
    #[arg(long)]
    word_file: Option<PathBuf>,
}

impl WordInput {
    fn read(&self) -> Result<BinaryWord, CliError> {
        let text = match (&self.word, &self.word_file) {
            (Some(w), _) => w.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?,
            (None, None) => return Err(CliError::Usage("a word is required".into())),
        };
        Ok(text.trim().parse()?)
    }
}

#[derive(Args, Serialize)]
struct ParamArgs {
    #[arg(long)]
    a: u32,
    #[arg(long, default_value_t = 0)]
    b: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, CliError> {
        Ok(Params::new(self.a, self.b)?)
    }
}

#[derive(Args, Serialize)]
struct BoundArgs {
    /// Largest a searched; defaults to twice the word length
    #[arg(long)]
    a_max: Option<u32>,
    /// Largest b searched; defaults to twice the word length
    #[arg(long)]
    b_max: Option<u32>,
}

impl BoundArgs {
    fn bounds(&self, len: usize) -> ParamBounds {
        let default = ParamBounds::for_len(len);
        ParamBounds::new(
            self.a_max.unwrap_or(default.a_max),
            self.b_max.unwrap_or(default.b_max),
        )
    }
}

#[derive(Args, Serialize)]
struct SqrtArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: WordInput,
    #[command(flatten)]
    #[serde(flatten)]
    params: ParamArgs,
    /// Drop letters after the last complete minimal square instead of failing
    #[arg(long)]
    trim: bool,
}

#[derive(Args, Serialize)]
struct CheckArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: WordInput,
    /// Check at these parameters; without them all parameters within bounds are searched
    #[arg(long, requires = "b")]
    a: Option<u32>,
    #[arg(long, requires = "a")]
    b: Option<u32>,
    #[command(flatten)]
    #[serde(flatten)]
    bounds: BoundArgs,
}

#[derive(Args, Serialize)]
struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: WordInput,
    #[command(flatten)]
    #[serde(flatten)]
    bounds: BoundArgs,
}

#[derive(Args, Serialize)]
struct CountArgs {
    #[arg(long, required_unless_present = "range", conflicts_with = "range")]
    n: Option<u64>,
    /// Inclusive range A..B
    #[arg(long)]
    range: Option<String>,
    /// Also count by exhaustive search
    #[arg(long)]
    brute: bool,
}

#[derive(Args, Serialize)]
struct ListArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    #[serde(flatten)]
    bounds: BoundArgs,
}

#[derive(Args, Serialize)]
struct OrbitsArgs {
    #[arg(long)]
    l: u64,
    /// Print the orbits themselves
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Sl,
    Nosquare,
    Biperiodic,
}

#[derive(Args, Serialize)]
struct FixedpointArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 1)]
    a: u32,
    /// Only the sl kind accepts b > 0
    #[arg(long, default_value_t = 0)]
    b: u32,
    #[arg(long, default_value_t = 1)]
    c: u32,
    /// Reversed standard seed for the sl kind; defaults to the reversal of
    /// the standard word with directive (a+1, b+1, 1, 1)
    #[arg(long)]
    s: Option<String>,
    #[arg(long, default_value_t = 1000)]
    length: usize,
}

#[derive(Args, Serialize)]
struct PeriodArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: WordInput,
    #[arg(long)]
    max_period: Option<usize>,
    /// Report whether the period word is a rotation of this word
    #[arg(long)]
    reference: Option<String>,
}

enum CliError {
    Domain(sqword::Error),
    Usage(String),
}

impl From<sqword::Error> for CliError {
    fn from(e: sqword::Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Serialize)]
struct Envelope<'a, I: Serialize, R: Serialize> {
    command: &'a str,
    inputs: &'a I,
    result: &'a R,
    version: &'a str,
}

/// Rendered forms of one command result.
struct Output {
    json: String,
    text: String,
    csv: Option<String>,
}

fn output<I: Serialize, R: Serialize>(
    command: &str,
    inputs: &I,
    result: &R,
    text: String,
    csv: Option<String>,
) -> Result<Output, CliError> {
    let envelope = Envelope {
        command,
        inputs,
        result,
        version: env!("CARGO_PKG_VERSION"),
    };
    let json = serde_json::to_string_pretty(&envelope)
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;
    Ok(Output { json, text, csv })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn params_list(params: &[Params]) -> String {
    let parts: Vec<String> = params
        .iter()
        .map(|p| format!("({},{})", p.a(), p.b()))
        .collect();
    parts.join(" ")
}

fn gen(what: &GenCommand) -> Result<Output, CliError> {
    #[derive(Serialize)]
    struct Generated {
        word: BinaryWord,
        length: usize,
    }
    let word = match what {
        GenCommand::Standard {
            directive,
            reversed,
        } => {
            let s = sqword::standard_from_directive(&DirectiveSequence::new(directive.clone())?)?;
            if *reversed {
                s.reversed()
            } else {
                s
            }
        }
        GenCommand::Fibonacci { k, reversed } => {
            let s = sqword::fibonacci_word(*k)?;
            if *reversed {
                s.reversed()
            } else {
                s
            }
        }
        GenCommand::Central { c, d } => sqword::central_word(*c, *d)?,
    };
    let result = Generated {
        length: word.len(),
        word,
    };
    let text = format!("{}\n", result.word);
    output("gen", what, &result, text, None)
}

fn sqrt(args: &SqrtArgs) -> Result<Output, CliError> {
    let word = args.input.read()?;
    let p = args.params.params()?;
    let result = if args.trim {
        sqword::sqrt_prefix(&word, p, true)?
    } else {
        sqword::SqrtPrefix {
            root: sqword::sqrt_word(&word, p)?,
            trimmed: 0,
        }
    };
    let text = format!("{}\n", result.root);
    output("sqrt", args, &result, text, None)
}

fn check(args: &CheckArgs) -> Result<Output, CliError> {
    #[derive(Serialize)]
    struct Checked {
        word: BinaryWord,
        solution: bool,
        params: Vec<Params>,
        factorization: Option<sqword::SquareFactorization>,
        #[serde(flatten)]
        bounds: Option<ParamBounds>,
    }
    let word = args.input.read()?;
    let result = match (args.a, args.b) {
        (Some(a), Some(b)) => {
            let p = Params::new(a, b)?;
            let solution = sqword::is_solution(&word, p)?;
            Checked {
                factorization: sqword::factor_minimal_squares(&word.pow(2), p).ok(),
                params: if solution { vec![p] } else { Vec::new() },
                solution,
                word,
                bounds: None,
            }
        }
        _ => {
            let bounds = args.bounds.bounds(word.len());
            let params = sqword::find_params(&word, bounds)?;
            Checked {
                factorization: params
                    .first()
                    .and_then(|&p| sqword::factor_minimal_squares(&word.pow(2), p).ok()),
                solution: !params.is_empty(),
                params,
                word,
                bounds: Some(bounds),
            }
        }
    };
    let mut text = format!("solution: {}\n", yes_no(result.solution));
    if !result.params.is_empty() {
        let _ = writeln!(text, "params: {}", params_list(&result.params));
    }
    output("check", args, &result, text, None)
}

fn classify(args: &ClassifyArgs) -> Result<Output, CliError> {
    let word = args.input.read()?;
    let c = sqword::classify(&word, args.bounds.bounds(word.len()))?;
    let mut text = format!("{}\n", c.verdict);
    if let (Some(s), Some(u)) = (&c.witness_s, &c.witness_u) {
        let _ = writeln!(text, "S = {s}, u = {u}");
    }
    if let Some((root, k)) = &c.root {
        let _ = writeln!(text, "root = {root}, exponent {k}");
    }
    if !c.params.is_empty() {
        let _ = writeln!(text, "params: {}", params_list(&c.params));
    }
    output("classify", args, &c, text, None)
}

fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "range must look like A..B with 1 <= A <= B, got {s:?}"
        ))
    };
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn count(args: &CountArgs) -> Result<Output, CliError> {
    let (lo, hi) = match (&args.n, &args.range) {
        (Some(0), _) => return Err(CliError::Usage("n must be at least 1".into())),
        (Some(n), _) => (*n, *n),
        (None, Some(r)) => parse_range(r)?,
        (None, None) => return Err(CliError::Usage("--n or --range is required".into())),
    };
    let mut reports: Vec<CountReport> = Vec::new();
    for n in lo..=hi {
        let mut r = sqword::count_solutions(n)?;
        if args.brute {
            let brute = sqword::brute_force_solutions(n as usize, None).len() as u128;
            r = r.with_brute_count(brute);
        }
        reports.push(r);
    }

    let mut text = String::new();
    let mut csv = String::from(if args.brute {
        "n,count,brute_count\n"
    } else {
        "n,count\n"
    });
    for r in &reports {
        match r.brute_count {
            Some(b) => {
                let _ = writeln!(text, "S({}) = {} (brute force {})", r.n, r.formula_count, b);
                let _ = writeln!(csv, "{},{},{}", r.n, r.formula_count, b);
            }
            None => {
                let _ = writeln!(
                    text,
                    "{}",
                    if lo == hi {
                        r.formula_count.to_string()
                    } else {
                        format!("S({}) = {}", r.n, r.formula_count)
                    }
                );
                let _ = writeln!(csv, "{},{}", r.n, r.formula_count);
            }
        }
    }
    let disagreements: Vec<u64> = reports
        .iter()
        .filter(|r| r.agrees() == Some(false))
        .map(|r| r.n)
        .collect();
    let out = if args.n.is_some() {
        output("count", args, &reports[0], text, Some(csv))?
    } else {
        output("count", args, &reports, text, Some(csv))?
    };
    if !disagreements.is_empty() {
        eprintln!("brute force disagrees with the formula at n = {disagreements:?}");
    }
    Ok(out)
}

fn list(args: &ListArgs) -> Result<Output, CliError> {
    #[derive(Serialize)]
    struct Listed {
        n: usize,
        count: usize,
        words: Vec<BinaryWord>,
        #[serde(flatten)]
        bounds: ParamBounds,
    }
    if args.n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let bounds = args.bounds.bounds(args.n);
    let words = sqword::brute_force_solutions(args.n, Some(bounds));
    let text: String = words.iter().map(|w| format!("{w}\n")).collect();
    let csv = format!("word\n{text}");
    let result = Listed {
        n: args.n,
        count: words.len(),
        words,
        bounds,
    };
    output("list", args, &result, text, Some(csv))
}

fn orbits(args: &OrbitsArgs) -> Result<Output, CliError> {
    #[derive(Serialize)]
    struct Orbits {
        l: u64,
        count: u64,
        direct_count: u64,
        orbits: Option<Vec<Vec<usize>>>,
    }
    if args.l == 0 {
        return Err(CliError::Usage("l must be at least 1".into()));
    }
    let partition = args.list.then(|| sqword::doubling_orbits(args.l as usize));
    let result = Orbits {
        l: args.l,
        count: sqword::orbit_count(args.l),
        direct_count: partition
            .as_ref()
            .map_or_else(|| sqword::orbit_count_direct(args.l), |p| p.len() as u64),
        orbits: partition,
    };
    let mut text = format!("{}\n", result.count);
    for orbit in result.orbits.iter().flatten() {
        let parts: Vec<String> = orbit.iter().map(usize::to_string).collect();
        let _ = writeln!(text, "{{{}}}", parts.join(","));
    }
    output("orbits", args, &result, text, None)
}

fn fixedpoint(args: &FixedpointArgs) -> Result<Output, CliError> {
    #[derive(Serialize)]
    struct Fixed {
        stream: sqword::StreamKind,
        params: Params,
        length: usize,
        word: BinaryWord,
        materialized_len: usize,
        trace: Vec<u8>,
        sqrt_is_prefix: bool,
        sqrt2_is_prefix: bool,
    }
    if args.length == 0 {
        return Err(CliError::Usage("length must be at least 1".into()));
    }
    if args.kind != Kind::Sl && args.b != 0 {
        return Err(CliError::Usage("only --kind sl accepts b > 0".into()));
    }
    let mut stream: SquareStream = match args.kind {
        Kind::Sl => {
            let s = match &args.s {
                Some(s) => s.parse()?,
                None => {
                    let directive = DirectiveSequence::new(vec![args.a + 1, args.b + 1, 1, 1])?;
                    sqword::standard_from_directive(&directive)?.reversed()
                }
            };
            sqword::sl_fixed_point(&s, args.c)?
        }
        Kind::Nosquare => sqword::no_square_prefix_word(args.a)?,
        Kind::Biperiodic => sqword::two_periodic_word(args.a)?,
    };
    let once = sqword::iterated_root_check(&mut stream, args.length, 1)?;
    let twice = sqword::iterated_root_check(&mut stream, args.length, 2)?;
    let word = stream.word();
    let result = Fixed {
        stream: stream.kind().clone(),
        params: stream.params(),
        length: args.length,
        word: word.prefix(args.length),
        materialized_len: word.len(),
        trace: stream.trace().to_vec(),
        sqrt_is_prefix: once.is_prefix,
        sqrt2_is_prefix: twice.is_prefix,
    };
    let text = format!(
        "{}\nsqrt is a prefix: {}\nsqrt of sqrt is a prefix: {}\n",
        result.word,
        yes_no(result.sqrt_is_prefix),
        yes_no(result.sqrt2_is_prefix)
    );
    output("fixedpoint", args, &result, text, None)
}

fn period(args: &PeriodArgs) -> Result<Output, CliError> {
    let word = args.input.read()?;
    let reference: Option<BinaryWord> = args.reference.as_deref().map(str::parse).transpose()?;
    let report = sqword::detect_period(&word, args.max_period, reference.as_ref());
    let text = match &report {
        Some(r) => format!(
            "preperiod {} period {} ({}){}\n",
            r.preperiod,
            r.period,
            r.period_word,
            if r.conjugate_to.is_some() {
                ", conjugate to the reference"
            } else {
                ""
            }
        ),
        None => "no period within bounds\n".to_string(),
    };
    output("period", args, &report, text, None)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SQWORD_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "SQWORD_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure threads: {e}")))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    configure_threads()?;
    let out = match &cli.command {
        Command::Gen { what } => gen(what)?,
        Command::Sqrt(a) => sqrt(a)?,
        Command::Check(a) => check(a)?,
        Command::Classify(a) => classify(a)?,
        Command::Count(a) => count(a)?,
        Command::List(a) => list(a)?,
        Command::Orbits(a) => orbits(a)?,
        Command::Fixedpoint(a) => fixedpoint(a)?,
        Command::Period(a) => period(a)?,
    };
    Ok(match cli.format {
        Format::Json => out.json + "\n",
        Format::Text => out.text,
        Format::Csv => out.csv.ok_or_else(|| {
            CliError::Usage("csv output is only available for count and list".into())
        })?,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nUsage: sqword [--format json|csv|text] <COMMAND>; see sqword --help");
            ExitCode::from(2)
        }
    }
}
