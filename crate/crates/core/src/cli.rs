//! Command-line front end.
//!
//! Everything except process plumbing lives here so it can be driven from
//! tests through [`run`]; the `boson-order` binary only forwards arguments
//! and writes the [`Outcome`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::algebra::{self, BosonWord, Letter, NormalForm};
use crate::combinat::{self, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::series;
use crate::stirling::{self, DEFAULT_MAX_TERMS};
use crate::types::StringType;

/// Splits `text` into whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn parse_positive(text: &str, offset: usize) -> Result<u32> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(
            offset,
            format!("expected a positive integer, found {text:?}"),
        ));
    }
    match text.parse::<u32>() {
        Ok(0) => Err(parse_error(offset, "expected a positive integer, found 0")),
        Ok(v) => Ok(v),
        Err(_) => Err(parse_error(offset, format!("integer {text} is too large"))),
    }
}

/// Parses a word such as `ad^3 a^2 ad a`. Tokens are `ad` or `a`, optionally
/// followed by `^<positive int>`, read left to right in algebraic order.
pub fn parse_word(text: &str) -> Result<BosonWord> {
    let mut word = BosonWord::identity();
    for (offset, tok) in tokens(text) {
        let (base, power) = match tok.find('^') {
            Some(i) => (&tok[..i], Some((&tok[i + 1..], offset + i + 1))),
            None => (tok, None),
        };
        let letter = match base {
            "ad" => Letter::Creation,
            "a" => Letter::Annihilation,
            _ => {
                return Err(parse_error(
                    offset,
                    format!("expected `ad` or `a`, found {base:?}"),
                ))
            }
        };
        let count = match power {
            Some((p, at)) => parse_positive(p, at)?,
            None => 1,
        };
        word.push_power(letter, count as usize);
    }
    Ok(word)
}

fn parse_list(text: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        let lead = part.len() - part.trim_start().len();
        out.push(parse_positive(trimmed, offset + lead)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Parses `--r` and `--s` lists (comma-separated, index order `1..n`).
pub fn parse_type(r_text: &str, s_text: &str) -> Result<StringType> {
    let r = parse_list(r_text)?;
    let s = parse_list(s_text)?;
    StringType::new(r, s)
}

/// The string type of a word shaped `(ad^{r_n} a^{s_n}) ⋯ (ad^{r_1} a^{s_1})`,
/// if it has that shape.
pub fn type_from_word(word: &BosonWord) -> Option<StringType> {
    let runs = word.runs();
    if runs.is_empty() || !runs.len().is_multiple_of(2) || runs[0].0 != Letter::Creation {
        return None;
    }
    let mut r = Vec::new();
    let mut s = Vec::new();
    for pair in runs.chunks(2).rev() {
        r.push(pair[0].1 as u32);
        s.push(pair[1].1 as u32);
    }
    StringType::new(r, s).ok()
}

/// Parses `3`, `-2`, `3/2` or `0.125` as an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || parse_error(0, format!("expected a rational number, found {text:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = num_traits::pow(BigInt::from(10u8), frac.len());
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = BigRational::new(int_part.magnitude().clone().into(), BigInt::one())
            + BigRational::new(frac_part, den);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Method {
    /// Normal ordering by the rewrite engine.
    Rewrite,
    /// One-factor-at-a-time recurrence.
    #[default]
    Recurrence,
    /// Alternating closed form per k.
    ClosedForm,
    /// Colony enumeration.
    Enumeration,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Rewrite => "rewrite",
            Method::Recurrence => "recurrence",
            Method::ClosedForm => "closed-form",
            Method::Enumeration => "enumeration",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "boson-order",
    version,
    about = "Normal ordering of boson strings and generalized Stirling/Bell numbers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Significant digits for numeric results.
    #[arg(long, default_value_t = 50, global = true)]
    pub digits: u32,

    /// Term cap for numeric series.
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS, global = true)]
    pub max_terms: usize,

    /// Cap on the number of enumerated structures.
    #[arg(long, env = "BOSON_ORDER_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP, global = true)]
    pub enum_cap: u64,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct Input {
    /// Boson word, e.g. "ad^3 a^2 ad a".
    #[arg(long)]
    pub word: Option<String>,
    /// Comma-separated r_1,…,r_n.
    #[arg(long)]
    pub r: Option<String>,
    /// Comma-separated s_1,…,s_n.
    #[arg(long)]
    pub s: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-order a word or string type.
    Order(Input),
    /// Generalized Stirling numbers S(k).
    Stirling {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
    },
    /// Generalized Bell number and polynomial.
    Bell {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
    },
    /// Dobiński-series evaluation of the Bell polynomial.
    Dobinski {
        #[command(flatten)]
        input: Input,
        /// Nonnegative rational argument, e.g. 1, 3/2 or 0.25.
        #[arg(long, default_value = "1")]
        x: String,
    },
    /// Enumerate colonies.
    Colonies {
        #[command(flatten)]
        input: Input,
        /// Print counts by free legs only.
        #[arg(long)]
        count_only: bool,
        /// Emit Graphviz DOT, one graph per colony.
        #[arg(long)]
        dot: bool,
    },
    /// Count m-settlements.
    Settlements {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        m: u64,
        /// Count only settlements occupying every ground cell.
        #[arg(long)]
        surjective: bool,
    },
    /// Count increasing r-ary forests.
    Forests {
        #[arg(long)]
        arity: u32,
        #[arg(long)]
        n: usize,
    },
    /// Forest generating function and the explicit Bell sum.
    Series {
        #[arg(long)]
        arity: u32,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Cross-check every method on one type.
    Selfcheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        m_max: u64,
        /// Comma-separated integers for the polynomial identity.
        #[arg(long, default_value = "-3,0,1,2,5,8,13")]
        x_samples: String,
    },
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

enum Resolved {
    Word(BosonWord),
    Type(StringType),
}

impl Resolved {
    fn word(&self) -> BosonWord {
        match self {
            Resolved::Word(w) => w.clone(),
            Resolved::Type(t) => algebra::word_from_type(t),
        }
    }

    fn string_type(&self) -> Option<StringType> {
        match self {
            Resolved::Word(w) => type_from_word(w),
            Resolved::Type(t) => Some(t.clone()),
        }
    }

    fn require_type(&self) -> Result<StringType> {
        self.string_type().ok_or_else(|| {
            Error::InvalidType("this command needs --r/--s or a word shaped ad^r a^s ⋯".into())
        })
    }
}

fn resolve(input: &Input) -> Result<Resolved> {
    match (&input.word, &input.r, &input.s) {
        (Some(w), None, None) => Ok(Resolved::Word(parse_word(w)?)),
        (None, Some(r), Some(s)) => Ok(Resolved::Type(parse_type(r, s)?)),
        _ => Err(Error::InvalidType(
            "give exactly one input form: --word, or --r together with --s".into(),
        )),
    }
}

fn render_error(err: &Error) -> Outcome {
    Outcome {
        code: if err.is_usage() {
            EXIT_USAGE
        } else {
            EXIT_COMPUTATION
        },
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (code, body) = match execute(&cli) {
        Ok(result) => result,
        Err(err) => return render_error(&err),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_COMPUTATION,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let out = match &cli.command {
        Command::Order(input) => cmd_order(cli, &resolve(input)?),
        Command::Stirling { input, method } => cmd_stirling(cli, &resolve(input)?, *method, false),
        Command::Bell { input, method } => cmd_stirling(cli, &resolve(input)?, *method, true),
        Command::Dobinski { input, x } => cmd_dobinski(cli, &resolve(input)?, x),
        Command::Colonies {
            input,
            count_only,
            dot,
        } => cmd_colonies(cli, &resolve(input)?, *count_only, *dot),
        Command::Settlements {
            input,
            m,
            surjective,
        } => cmd_settlements(cli, &resolve(input)?, *m, *surjective),
        Command::Forests { arity, n } => cmd_forests(cli, *arity, *n),
        Command::Series { arity, order } => cmd_series(cli, *arity, *order),
        Command::Selfcheck {
            input,
            m_max,
            x_samples,
        } => {
            let t = resolve(input)?.require_type()?;
            let xs = parse_samples(x_samples)?;
            let report = run_selfcheck(&t, *m_max, &xs, cli.enum_cap, cli.digits)?;
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_COMPUTATION
            };
            return Ok((code, report.render(cli.format)));
        }
    }?;
    Ok((EXIT_OK, out))
}

fn parse_samples(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| parse_error(0, format!("expected an integer sample, found {p:?}")))
        })
        .collect()
}

/// Serializes a `k ↦ value` table as a JSON object with keys in ascending
/// numeric order and values as decimal strings.
struct OrderedTable<'a>(&'a BTreeMap<usize, BigUint>);

impl Serialize for OrderedTable<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&k.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TypeJson<'a> {
    r: &'a [u32],
    s: &'a [u32],
}

#[derive(Serialize)]
struct StirlingJson<'a> {
    #[serde(rename = "type")]
    ty: Option<TypeJson<'a>>,
    d: i64,
    stirling: OrderedTable<'a>,
    bell: String,
    method: &'a str,
}

fn type_json(t: &Option<StringType>) -> Option<TypeJson<'_>> {
    t.as_ref().map(|t| TypeJson { r: t.r(), s: t.s() })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable output");
    s.push('\n');
    s
}

fn csv_table(header: &str, rows: impl IntoIterator<Item = (String, String)>) -> String {
    let mut out = format!("{header}\n");
    for (a, b) in rows {
        writeln!(out, "{a},{b}").unwrap();
    }
    out
}

fn stirling_by(
    method: Method,
    input: &Resolved,
    cap: u64,
) -> Result<(i64, BTreeMap<usize, BigUint>)> {
    if method == Method::Rewrite {
        let nf = algebra::normal_order(&input.word());
        return algebra::extract_stirling(&nf);
    }
    let t = input.require_type()?;
    if t.excess() < 0 {
        return Err(Error::NegativeExcess(t.excess()));
    }
    let table = match method {
        Method::Rewrite => unreachable!(),
        Method::Recurrence => stirling::stirling_recurrence(&t).values,
        Method::Enumeration => combinat::count_colonies_by_free_legs(&t, cap)?,
        Method::ClosedForm => {
            let mut out = BTreeMap::new();
            for k in t.first_s()..=t.total_s() {
                let v = stirling::stirling_closed_form(&t, k)?;
                if !v.is_zero() {
                    out.insert(k, v);
                }
            }
            out
        }
    };
    Ok((t.excess(), table))
}

fn cmd_order(cli: &Cli, input: &Resolved) -> Result<String> {
    let word = input.word();
    let nf = algebra::normal_order(&word);
    Ok(match cli.format {
        Format::Plain => format!(
            "word: {}\nexcess: {}\nnormal form: {}\n",
            if word.is_empty() {
                "1".to_string()
            } else {
                word.to_string()
            },
            nf.excess(),
            nf.to_operator_string()
        ),
        Format::Json => to_json(&order_json(&word, &nf)),
        Format::Csv => csv_table(
            "creation,annihilation,coefficient",
            nf.terms()
                .map(|(c, a, v)| (format!("{c},{a}"), v.to_string())),
        ),
    })
}

#[derive(Serialize)]
struct TermJson {
    creation: u64,
    annihilation: u64,
    coefficient: String,
}

#[derive(Serialize)]
struct OrderJson {
    word: String,
    excess: i64,
    coeffs: Vec<(usize, String)>,
    terms: Vec<TermJson>,
}

fn order_json(word: &BosonWord, nf: &NormalForm) -> OrderJson {
    OrderJson {
        word: word.to_string(),
        excess: nf.excess(),
        coeffs: nf
            .coeffs()
            .iter()
            .map(|(k, v)| (*k, v.to_string()))
            .collect(),
        terms: nf
            .terms()
            .map(|(c, a, v)| TermJson {
                creation: c,
                annihilation: a,
                coefficient: v.to_string(),
            })
            .collect(),
    }
}

fn cmd_stirling(cli: &Cli, input: &Resolved, method: Method, bell_only: bool) -> Result<String> {
    let (d, table) = stirling_by(method, input, cli.enum_cap)?;
    let bell: BigUint = table.values().sum();
    let ty = input.string_type();
    Ok(match cli.format {
        Format::Json => to_json(&StirlingJson {
            ty: type_json(&ty),
            d,
            stirling: OrderedTable(&table),
            bell: bell.to_string(),
            method: method.name(),
        }),
        Format::Csv if bell_only => {
            csv_table("quantity,value", [("bell".into(), bell.to_string())])
        }
        Format::Csv => csv_table(
            "k,S_k",
            table.iter().map(|(k, v)| (k.to_string(), v.to_string())),
        ),
        Format::Plain => {
            let mut out = String::new();
            if let Some(t) = &ty {
                writeln!(out, "type: {t}").unwrap();
            }
            writeln!(out, "d: {d}").unwrap();
            if bell_only {
                let poly: Vec<String> = table.iter().map(|(k, v)| monomial(v, *k)).collect();
                writeln!(out, "bell polynomial: {}", poly.join(" + ")).unwrap();
            } else {
                for (k, v) in &table {
                    writeln!(out, "S({k}) = {v}").unwrap();
                }
            }
            writeln!(out, "bell: {bell}").unwrap();
            writeln!(out, "method: {}", method.name()).unwrap();
            out
        }
    })
}

fn monomial(c: &BigUint, k: usize) -> String {
    let c = if c.is_one() && k > 0 {
        String::new()
    } else {
        c.to_string()
    };
    match k {
        0 => c,
        1 => format!("{c}x"),
        _ => format!("{c}x^{k}"),
    }
}

fn cmd_dobinski(cli: &Cli, input: &Resolved, x_text: &str) -> Result<String> {
    let t = input.require_type()?;
    let x = parse_rational(x_text)?;
    let approx = stirling::dobinski_eval_with(&t, &x, cli.digits, cli.max_terms)?;
    let exact = stirling::bell_polynomial(&t).eval(&x);
    Ok(match cli.format {
        Format::Json => to_json(&serde_json::json!({
            "type": type_json(&Some(t.clone())),
            "x": x.to_string(),
            "value": approx.value.to_string(),
            "digits": approx.precision_digits,
            "terms_used": approx.terms_used,
            "exact": exact.to_string(),
        })),
        Format::Csv => csv_table(
            "quantity,value",
            [
                ("value".into(), approx.value.to_string()),
                ("terms_used".into(), approx.terms_used.to_string()),
                ("exact".into(), exact.to_string()),
            ],
        ),
        Format::Plain => format!(
            "type: {t}\nx: {x}\nvalue: {}\nterms used: {}\nexact B(x): {exact}\n",
            approx.value, approx.terms_used
        ),
    })
}

fn cmd_colonies(cli: &Cli, input: &Resolved, count_only: bool, dot: bool) -> Result<String> {
    let t = input.require_type()?;
    if count_only {
        let counts = combinat::count_colonies_by_free_legs(&t, cli.enum_cap)?;
        let total: BigUint = counts.values().sum();
        return Ok(match cli.format {
            Format::Json => to_json(&serde_json::json!({
                "type": type_json(&Some(t.clone())),
                "by_free_legs": serde_json::to_value(OrderedTable(&counts)).unwrap(),
                "total": total.to_string(),
            })),
            Format::Csv => csv_table(
                "k,colonies",
                counts.iter().map(|(k, v)| (k.to_string(), v.to_string())),
            ),
            Format::Plain => {
                let mut out = format!("type: {t}\n");
                for (k, v) in &counts {
                    writeln!(out, "free legs {k}: {v}").unwrap();
                }
                writeln!(out, "total: {total}").unwrap();
                out
            }
        });
    }
    let colonies = combinat::enumerate_colonies(&t, cli.enum_cap)?;
    Ok(match (cli.format, dot) {
        (_, true) => colonies
            .iter()
            .map(|c| c.to_dot())
            .collect::<Vec<_>>()
            .join("\n"),
        (Format::Json, false) => to_json(&serde_json::json!({
            "type": type_json(&Some(t.clone())),
            "colonies": colonies
                .iter()
                .map(|c| c.to_text().lines().map(str::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })),
        (Format::Csv, false) => {
            let mut out = String::from("colony,foot,placement\n");
            for (i, c) in colonies.iter().enumerate() {
                for line in c.to_text().lines() {
                    let (foot, place) =
                        line.trim_start_matches("foot ").split_once(" -> ").unwrap();
                    writeln!(out, "{},{foot},{place}", i + 1).unwrap();
                }
            }
            out
        }
        (Format::Plain, false) => {
            let mut out = String::new();
            for (i, c) in colonies.iter().enumerate() {
                writeln!(out, "# colony {} ({} free legs)", i + 1, c.free_legs()).unwrap();
                out.push_str(&c.to_text());
            }
            out
        }
    })
}

fn cmd_settlements(cli: &Cli, input: &Resolved, m: u64, surjective: bool) -> Result<String> {
    let t = input.require_type()?;
    let (label, enumerated, formula) = if surjective {
        let count = combinat::count_surjective_settlements(&t, m, cli.enum_cap)?;
        let formula =
            stirling::stirling_recurrence(&t).get(m as usize) * crate::arith::factorial(m);
        ("surjective settlements", count, BigInt::from(formula))
    } else {
        let count = combinat::enumerate_settlements(&t, m, cli.enum_cap)?;
        ("settlements", count, stirling::settlement_product(&t, m))
    };
    Ok(match cli.format {
        Format::Json => to_json(&serde_json::json!({
            "type": type_json(&Some(t.clone())),
            "m": m,
            "surjective": surjective,
            "enumerated": enumerated.to_string(),
            "formula": formula.to_string(),
        })),
        Format::Csv => csv_table(
            "quantity,value",
            [
                ("enumerated".into(), enumerated.to_string()),
                ("formula".into(), formula.to_string()),
            ],
        ),
        Format::Plain => format!("type: {t}\nm: {m}\n{label}: {enumerated}\nformula: {formula}\n"),
    })
}

fn cmd_forests(cli: &Cli, arity: u32, n: usize) -> Result<String> {
    let forests = combinat::count_increasing_forests(arity, n, cli.enum_cap)?;
    let colonies = if n == 0 {
        BigUint::one()
    } else {
        stirling::bell_number(&StringType::uniform(arity, 1, n)?)
    };
    Ok(match cli.format {
        Format::Json => to_json(&serde_json::json!({
            "arity": arity,
            "n": n,
            "forests": forests.to_string(),
            "colonies": colonies.to_string(),
        })),
        Format::Csv => csv_table(
            "quantity,value",
            [
                ("forests".into(), forests.to_string()),
                ("colonies".into(), colonies.to_string()),
            ],
        ),
        Format::Plain => {
            format!("arity: {arity}\nn: {n}\nforests: {forests}\ncolonies: {colonies}\n")
        }
    })
}

fn cmd_series(cli: &Cli, arity: u32, order: usize) -> Result<String> {
    let egf = series::forest_egf(arity, order)?;
    let tree = series::tree_series(arity, order)?;
    let rows: Vec<(usize, String, String)> = (0..=order)
        .map(|n| {
            (
                n,
                egf.egf_coefficient(n).to_string(),
                tree.egf_coefficient(n).to_string(),
            )
        })
        .collect();
    Ok(match cli.format {
        Format::Json => to_json(&serde_json::json!({
            "arity": arity,
            "order": order,
            "forest_counts": rows.iter().map(|r| r.1.clone()).collect::<Vec<_>>(),
            "tree_counts": rows.iter().map(|r| r.2.clone()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("n,forests,trees\n");
            for (n, f, t) in &rows {
                writeln!(out, "{n},{f},{t}").unwrap();
            }
            out
        }
        Format::Plain => {
            let mut out = format!("arity: {arity}\n");
            for (n, f, t) in &rows {
                writeln!(out, "n={n}: forests {f}, trees {t}").unwrap();
            }
            if order >= 1 {
                let numeric =
                    series::bell_r1_numeric_with(arity, order as u32, cli.digits, cli.max_terms)?;
                writeln!(out, "explicit sum at n={order}: {}", numeric.value).unwrap();
            }
            out
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfcheckReport {
    pub checks: Vec<CheckResult>,
}

impl SelfcheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(&serde_json::json!({
                "checks": self.checks,
                "passed": self.all_passed(),
            })),
            Format::Csv => {
                let mut out = String::from("check,status\n");
                for c in &self.checks {
                    let status = serde_json::to_value(c.status).unwrap();
                    writeln!(out, "{},{}", c.name, status.as_str().unwrap()).unwrap();
                }
                out
            }
            Format::Plain => {
                let mut out = String::new();
                for c in &self.checks {
                    let tag = match c.status {
                        CheckStatus::Pass => "PASS",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::Skipped => "SKIP",
                    };
                    if c.detail.is_empty() {
                        writeln!(out, "{tag} {}", c.name).unwrap();
                    } else {
                        writeln!(out, "{tag} {}: {}", c.name, c.detail).unwrap();
                    }
                }
                writeln!(
                    out,
                    "{}",
                    if self.all_passed() {
                        "all checks passed"
                    } else {
                        "some checks FAILED"
                    }
                )
                .unwrap();
                out
            }
        }
    }
}

fn compare<T: PartialEq + std::fmt::Debug>(name: &str, expected: T, got: T) -> CheckResult {
    if expected == got {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            detail: String::new(),
        }
    } else {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            detail: format!("expected {expected:?}, got {got:?}"),
        }
    }
}

fn skipped(name: &str, why: &str) -> CheckResult {
    CheckResult {
        name: name.into(),
        status: CheckStatus::Skipped,
        detail: why.into(),
    }
}

/// Runs every cross-check on `t`: rewriting, recurrence, closed form and
/// enumeration agree; empty cells equal `d_n + k`; settlement counts match
/// the product formula for `m ≤ m_max`; the polynomial identity holds at
/// each `x` sample; surjective settlements number `S(m)·m!`; the operator
/// recursion and Dobiński series reproduce the Bell polynomial.
pub fn run_selfcheck(
    t: &StringType,
    m_max: u64,
    x_samples: &[i64],
    cap: u64,
    digits: u32,
) -> Result<SelfcheckReport> {
    let mut checks = Vec::new();
    let recurrence = stirling::stirling_recurrence(t).values;

    // rewrite engine, keyed by annihilation degree to cover negative excess
    let nf = algebra::normal_order(&algebra::word_from_type(t));
    let offset = (-t.excess()).max(0) as usize;
    let rewritten: BTreeMap<usize, BigUint> = nf
        .coeffs()
        .iter()
        .map(|(k, v)| (k + offset, v.clone()))
        .collect();
    checks.push(compare("rewrite = recurrence", &recurrence, &rewritten));

    let canonical = t.has_nonnegative_prefix();
    if canonical {
        let mut closed = BTreeMap::new();
        for k in t.first_s()..=t.total_s() {
            let v = stirling::stirling_closed_form(t, k)?;
            if !v.is_zero() {
                closed.insert(k, v);
            }
        }
        checks.push(compare("closed form = recurrence", &recurrence, &closed));
    } else {
        checks.push(skipped(
            "closed form = recurrence",
            "negative prefix excess",
        ));
    }

    let enumerated = combinat::count_colonies_by_free_legs(t, cap)?;
    checks.push(compare(
        "enumeration = recurrence",
        &recurrence,
        &enumerated,
    ));

    let mut cell_failures = 0usize;
    combinat::for_each_colony(t, cap, |c| {
        if combinat::empty_cells(c) as i64 != t.excess() + c.free_legs() as i64 {
            cell_failures += 1;
        }
    })?;
    checks.push(compare("empty cells = d_n + free legs", 0, cell_failures));

    for m in 0..=m_max {
        let counted = BigInt::from(combinat::enumerate_settlements(t, m, cap)?);
        checks.push(compare(
            &format!("settlements m={m}"),
            stirling::settlement_product(t, m),
            counted,
        ));
    }

    for m in 0..=m_max {
        let counted = combinat::count_surjective_settlements(t, m, cap)?;
        let expected =
            recurrence.get(&(m as usize)).cloned().unwrap_or_default() * crate::arith::factorial(m);
        checks.push(compare(
            &format!("surjective settlements m={m}"),
            expected,
            counted,
        ));
    }

    if canonical {
        for &x in x_samples {
            let ok = stirling::check_polynomial_identity(t, x)?;
            checks.push(compare(&format!("polynomial identity x={x}"), true, ok));
        }
        let by_ops = stirling::bell_polynomial_by_operators(t)?;
        checks.push(compare(
            "operator recursion = Bell polynomial",
            stirling::bell_polynomial(t),
            by_ops,
        ));
        let bell = BigRational::from_integer(stirling::bell_number(t).into());
        let approx = stirling::dobinski_eval(t, &BigRational::one(), digits)?;
        let tol = BigRational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(10u8), digits.saturating_sub(5) as usize),
        );
        let err = approx.value.relative_error(&bell);
        let name = "Dobinski series at x=1";
        checks.push(if err < tol {
            CheckResult {
                name: name.into(),
                status: CheckStatus::Pass,
                detail: String::new(),
            }
        } else {
            CheckResult {
                name: name.into(),
                status: CheckStatus::Fail,
                detail: format!("expected {bell}, got {}", approx.value),
            }
        });
    } else {
        checks.push(skipped("polynomial identity", "negative prefix excess"));
        checks.push(skipped(
            "operator recursion = Bell polynomial",
            "negative prefix excess",
        ));
        checks.push(skipped("Dobinski series at x=1", "negative prefix excess"));
    }

    Ok(SelfcheckReport { checks })
}
