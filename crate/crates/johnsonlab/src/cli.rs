//! Command-line surface: every oracle and computation behind one binary with
//! a JSON envelope `{status, data, diagnostics}` on stdout.
//!
//! Exit codes: 0 = ok, 1 = failed self-test criteria, 2 = input/parse
//! problems, 3 = domain rejections (an input that parses but the mathematics
//! refuses, like a map outside the requested filtration level), 4 =
//! obstructions (a gluing map that is not a rational homology sphere at p, or
//! a blown monomial budget).

use std::ffi::OsString;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::filtrations::{membership, sample_series, FiltrationError, SeriesKind, Verdict};
use crate::freegroup::{Word, WordError};
use crate::groupring::{CoefficientRing, GroupRingElement, RingError};
use crate::johnson::{
    fox_matrix, perron_member, tau, tau1_s, taylor_block, wedge3_membership, JohnsonError,
};
use crate::magnus::{magnus_embed, valuation_with_witness, SeriesError, Valuation};
use crate::mapclass::{parse_expression, FreeAutomorphism, MapClassError, MapClassJson};
use crate::selftest::{run_criterion, CriterionReport, CRITERION_COUNT, CRITERION_NAMES};
use crate::symplectic::{heegaard_reduce, SpMatrix, SymplecticError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CRITERIA: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_OBSTRUCTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "johnsonlab",
    version,
    about = "Series membership, Johnson homomorphisms, and symplectic reductions for surface groups"
)]
pub struct Cli {
    /// Seed for anything sampled; fixed seed means byte-identical output.
    #[arg(long, global = true, default_value_t = crate::selftest::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test a word against one of the three series oracles.
    Member(MemberArgs),
    /// Evaluate a Johnson homomorphism on a mapping class.
    Tau(TauArgs),
    /// Iterated Fox derivatives of a word over Z or F_p.
    Fox(FoxArgs),
    /// Magnus expansion of a word: full series or one coefficient.
    Magnus(MagnusArgs),
    /// Normalize a symplectic gluing map mod p.
    Heegaard(HeegaardArgs),
    /// Sample elements of a series level.
    Sample(SampleArgs),
    /// Fox-matrix filtration membership of a mapping class.
    Perron(PerronArgs),
    /// Run the conformance criteria, one pass/fail line each.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SeriesArg {
    Lcs,
    Stallings,
    Zassenhaus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TauVariant {
    /// Lower central series, integer coefficients.
    Integral,
    /// Zassenhaus series mod p.
    Z,
    /// Stallings series mod p (level 1 only).
    S,
}

#[derive(Args, Debug)]
pub struct MemberArgs {
    #[arg(long, value_enum)]
    pub series: SeriesArg,
    /// Depth k >= 1.
    #[arg(long)]
    pub depth: usize,
    /// Odd prime modulus; required for stallings and zassenhaus.
    #[arg(long)]
    pub p: Option<u64>,
    /// Word like "x1 X2 x1" (capital letter = inverse).
    #[arg(long, conflicts_with = "stdin")]
    pub word: Option<String>,
    /// Read the word from standard input.
    #[arg(long)]
    pub stdin: bool,
    /// Number of generators (2 * genus).
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
}

#[derive(Args, Debug)]
pub struct TauArgs {
    /// Catalog expression like "Tc1^-1*bp12", or raw mapping-class JSON
    /// (anything starting with '{').
    #[arg(long)]
    pub map: String,
    #[arg(long, default_value_t = 2)]
    pub genus: usize,
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    #[arg(long, value_enum)]
    pub variant: TauVariant,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Args, Debug)]
pub struct FoxArgs {
    #[arg(long, conflicts_with = "stdin")]
    pub word: Option<String>,
    #[arg(long)]
    pub stdin: bool,
    /// Comma-separated derivation indices, first index applied first:
    /// "2,1" differentiates by x2, then by x1.
    #[arg(long)]
    pub indices: String,
    /// "Z" or "F<p>" for an odd prime p.
    #[arg(long, default_value = "Z")]
    pub ring: String,
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    /// Also report the bar involution (inverted group elements) of the result.
    #[arg(long)]
    pub bar: bool,
}

#[derive(Args, Debug)]
pub struct MagnusArgs {
    #[arg(long, conflicts_with = "stdin")]
    pub word: Option<String>,
    #[arg(long)]
    pub stdin: bool,
    #[arg(long, default_value_t = 3)]
    pub truncation: usize,
    /// "Z" or "F<p>" for an odd prime p.
    #[arg(long, default_value = "Z")]
    pub ring: String,
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    /// Report only this monomial's coefficient: "1,2,1"; "-" for the
    /// constant term.
    #[arg(long)]
    pub monomial: Option<String>,
}

#[derive(Args, Debug)]
pub struct HeegaardArgs {
    /// Path to a matrix JSON file ({g, ring, entries}), or "-" for stdin.
    #[arg(long)]
    pub matrix: String,
    #[arg(long)]
    pub p: u64,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub series: SeriesArg,
    #[arg(long)]
    pub depth: usize,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
}

#[derive(Args, Debug)]
pub struct PerronArgs {
    /// Catalog expression or raw mapping-class JSON.
    #[arg(long)]
    pub map: String,
    #[arg(long, default_value_t = 2)]
    pub genus: usize,
    /// Filtration level to test.
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: u64,
    /// Include the degree-0..k-1 coefficient tables of the Fox matrix.
    #[arg(long)]
    pub blocks: bool,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// "all", a 1-based criterion index, or a criterion name.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Emit one JSON envelope instead of a line per criterion.
    #[arg(long)]
    pub json: bool,
}

/// A classified failure: exit code, machine-readable kind, and message.
#[derive(Debug)]
pub struct CliFailure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliFailure {
    fn input(message: impl ToString) -> Self {
        CliFailure { code: EXIT_INPUT, kind: "input", message: message.to_string() }
    }

    fn domain(message: impl ToString) -> Self {
        CliFailure { code: EXIT_DOMAIN, kind: "domain", message: message.to_string() }
    }

    fn obstructed(kind: &'static str, message: impl ToString) -> Self {
        CliFailure { code: EXIT_OBSTRUCTED, kind, message: message.to_string() }
    }
}

impl From<WordError> for CliFailure {
    fn from(e: WordError) -> Self {
        CliFailure::input(e)
    }
}

impl From<MapClassError> for CliFailure {
    fn from(e: MapClassError) -> Self {
        CliFailure::input(e)
    }
}

impl From<RingError> for CliFailure {
    fn from(e: RingError) -> Self {
        CliFailure::input(e)
    }
}

impl From<SeriesError> for CliFailure {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::BudgetExceeded { .. } => CliFailure::obstructed("budget", e),
            other => CliFailure::domain(other),
        }
    }
}

impl From<FiltrationError> for CliFailure {
    fn from(e: FiltrationError) -> Self {
        match e {
            FiltrationError::Series(s) => s.into(),
            other => CliFailure::domain(other),
        }
    }
}

impl From<SymplecticError> for CliFailure {
    fn from(e: SymplecticError) -> Self {
        match e {
            SymplecticError::NotQHSAtP(_) => CliFailure::obstructed("not-qhs", e),
            SymplecticError::Ring(r) => r.into(),
            SymplecticError::BadData(_) | SymplecticError::IndexOutOfRange(..) => {
                CliFailure::input(e)
            }
            other => CliFailure::domain(other),
        }
    }
}

impl From<JohnsonError> for CliFailure {
    fn from(e: JohnsonError) -> Self {
        match e {
            JohnsonError::Series(s) => s.into(),
            JohnsonError::Ring(r) => r.into(),
            JohnsonError::Filtration(f) => f.into(),
            JohnsonError::Symplectic(s) => s.into(),
            JohnsonError::MapClass(m) => m.into(),
            other => CliFailure::domain(other),
        }
    }
}

/// Parses argv and runs; returns the process exit code. Parse problems print
/// clap's message and exit 2 (0 for --help/--version).
pub fn run_from<I, T>(iter: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(iter) {
        Ok(cli) => dispatch(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

pub fn dispatch(cli: Cli) -> i32 {
    let seed = cli.seed;
    let outcome = match cli.command {
        Command::Member(args) => cmd_member(args),
        Command::Tau(args) => cmd_tau(args),
        Command::Fox(args) => cmd_fox(args),
        Command::Magnus(args) => cmd_magnus(args),
        Command::Heegaard(args) => cmd_heegaard(args),
        Command::Sample(args) => cmd_sample(args, seed),
        Command::Perron(args) => cmd_perron(args),
        Command::Selftest(args) => return cmd_selftest(args, seed),
    };
    match outcome {
        Ok((data, diagnostics)) => {
            emit(&json!({ "status": "ok", "data": data, "diagnostics": diagnostics }));
            EXIT_OK
        }
        Err(failure) => {
            emit(&json!({
                "status": "error",
                "data": { "kind": failure.kind, "message": failure.message },
                "diagnostics": []
            }));
            failure.code
        }
    }
}

/// Prints one line, exiting quietly if the consumer closed the pipe.
fn print_line(text: impl std::fmt::Display) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{text}").is_err() {
        std::process::exit(EXIT_OK);
    }
}

fn emit(envelope: &serde_json::Value) {
    print_line(serde_json::to_string_pretty(envelope).expect("json serializes"));
}

type CmdResult = Result<(serde_json::Value, Vec<String>), CliFailure>;

fn read_word(word: Option<&str>, stdin: bool, rank: usize) -> Result<Word, CliFailure> {
    let text = match (word, stdin) {
        (Some(w), _) => w.to_string(),
        (None, true) => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliFailure::input(format!("reading stdin: {e}")))?;
            buf
        }
        (None, false) => return Err(CliFailure::input("pass --word or --stdin")),
    };
    Ok(Word::parse(rank, text.trim())?)
}

fn parse_ring(text: &str) -> Result<CoefficientRing, CliFailure> {
    if text == "Z" {
        return Ok(CoefficientRing::Integers);
    }
    if let Some(p) = text.strip_prefix('F') {
        let p: u64 = p
            .parse()
            .map_err(|_| CliFailure::input(format!("bad ring `{text}`; use Z or F<p>")))?;
        return Ok(CoefficientRing::prime_field(p)?);
    }
    Err(CliFailure::input(format!("bad ring `{text}`; use Z or F<p>")))
}

fn parse_indices(text: &str) -> Result<Vec<usize>, CliFailure> {
    if text == "-" || text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliFailure::input(format!("bad index `{t}` in `{text}`")))
        })
        .collect()
}

fn series_kind(series: SeriesArg, p: Option<u64>) -> Result<(SeriesKind, Vec<String>), CliFailure> {
    let mut diagnostics = Vec::new();
    let kind = match series {
        SeriesArg::Lcs => {
            if p.is_some() {
                diagnostics.push("--p is ignored for the lower central series".to_string());
            }
            SeriesKind::Lcs
        }
        SeriesArg::Stallings => {
            let p = p.ok_or_else(|| CliFailure::input("--p is required for stallings"))?;
            SeriesKind::Stallings(p)
        }
        SeriesArg::Zassenhaus => {
            let p = p.ok_or_else(|| CliFailure::input("--p is required for zassenhaus"))?;
            SeriesKind::Zassenhaus(p)
        }
    };
    if let Some(p) = kind.modulus() {
        // Validate the modulus up front so a bad prime is an input error.
        CoefficientRing::prime_field(p)?;
    }
    Ok((kind, diagnostics))
}

fn parse_map(genus: usize, text: &str) -> Result<FreeAutomorphism, CliFailure> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let json: MapClassJson = serde_json::from_str(trimmed)
            .map_err(|e| CliFailure::input(format!("bad mapping-class JSON: {e}")))?;
        return Ok(FreeAutomorphism::from_json(&json)?);
    }
    Ok(parse_expression(genus, trimmed)?)
}

fn cmd_member(args: MemberArgs) -> CmdResult {
    if args.depth == 0 {
        return Err(CliFailure::input("--depth must be at least 1"));
    }
    if args.rank == 0 {
        return Err(CliFailure::input("--rank must be at least 1"));
    }
    let (kind, diagnostics) = series_kind(args.series, args.p)?;
    let word = read_word(args.word.as_deref(), args.stdin, args.rank)?;
    let report = membership(&word, kind, args.depth)?;
    let data = json!({ "word": word.to_string(), "rank": args.rank, "report": report });
    Ok((data, diagnostics))
}

fn cmd_tau(args: TauArgs) -> CmdResult {
    let f = parse_map(args.genus, &args.map)?;
    if args.level == 0 {
        return Err(CliFailure::input("--level must be at least 1"));
    }
    let mut diagnostics = Vec::new();
    let data = match args.variant {
        TauVariant::Integral => {
            if args.p.is_some() {
                diagnostics.push("--p is ignored for the integral variant".to_string());
            }
            let value = tau(&f, args.level, SeriesKind::Lcs)?;
            json!({
                "map": f.label(),
                "level": args.level,
                "variant": "integral",
                "zero": value.is_zero(),
                "value": value.to_json(),
            })
        }
        TauVariant::Z => {
            let p = args.p.ok_or_else(|| CliFailure::input("--p is required for variant z"))?;
            let value = tau(&f, args.level, SeriesKind::Zassenhaus(p))?;
            let wedge = if args.level == 1 {
                Some(wedge3_membership(&value)?)
            } else {
                None
            };
            json!({
                "map": f.label(),
                "level": args.level,
                "variant": "z",
                "p": p,
                "zero": value.is_zero(),
                "value": value.to_json(),
                "wedge3": wedge,
            })
        }
        TauVariant::S => {
            let p = args.p.ok_or_else(|| CliFailure::input("--p is required for variant s"))?;
            if args.level != 1 {
                return Err(CliFailure::input(
                    "the Stallings variant is defined at --level 1 only",
                ));
            }
            let value = tau1_s(&f, p)?;
            json!({
                "map": f.label(),
                "level": 1,
                "variant": "s",
                "p": p,
                "zero": value.is_zero(),
                "value": value.to_json(),
            })
        }
    };
    Ok((data, diagnostics))
}

fn cmd_fox(args: FoxArgs) -> CmdResult {
    let ring = parse_ring(&args.ring)?;
    let word = read_word(args.word.as_deref(), args.stdin, args.rank)?;
    let indices = parse_indices(&args.indices)?;
    for &i in &indices {
        if i == 0 || i > args.rank {
            return Err(CliFailure::input(format!(
                "index {i} out of range for rank {}",
                args.rank
            )));
        }
    }
    let element = GroupRingElement::from_word(word.clone(), ring);
    let derivative = element.higher_fox_derivative(&indices);
    let mut data = json!({
        "word": word.to_string(),
        "indices": indices,
        "ring": ring.to_string(),
        "derivative": derivative.to_json(),
        "augmentation": ring.normalize(derivative.augmentation()).to_string(),
    });
    if args.bar {
        data["bar"] = serde_json::to_value(derivative.bar().to_json())
            .expect("group-ring json serializes");
    }
    Ok((data, Vec::new()))
}

fn cmd_magnus(args: MagnusArgs) -> CmdResult {
    if args.truncation == 0 {
        return Err(CliFailure::input("--truncation must be at least 1"));
    }
    let ring = parse_ring(&args.ring)?;
    let word = read_word(args.word.as_deref(), args.stdin, args.rank)?;
    let series = magnus_embed(&word, args.truncation, ring)?;
    let (valuation, witness) = valuation_with_witness(&word, ring, args.truncation)?;
    let valuation_json = match valuation {
        Valuation::Finite(d) => json!({ "exact": d }),
        Valuation::AtLeast(d) => json!({ "at_least": d }),
    };
    let data = match args.monomial.as_deref() {
        Some(text) => {
            let monomial = parse_indices(text)?;
            if monomial.len() > args.truncation {
                return Err(CliFailure::input(format!(
                    "monomial degree {} exceeds truncation {}",
                    monomial.len(),
                    args.truncation
                )));
            }
            for &i in &monomial {
                if i == 0 || i > args.rank {
                    return Err(CliFailure::input(format!(
                        "variable {i} out of range for rank {}",
                        args.rank
                    )));
                }
            }
            let coefficient = series.coefficient(&monomial)?;
            json!({
                "word": word.to_string(),
                "ring": ring.to_string(),
                "truncation": args.truncation,
                "monomial": monomial,
                "coefficient": coefficient.to_string(),
                "valuation": valuation_json,
                "witness_monomial": witness,
            })
        }
        None => json!({
            "word": word.to_string(),
            "ring": ring.to_string(),
            "truncation": args.truncation,
            "series": series.to_json(),
            "valuation": valuation_json,
            "witness_monomial": witness,
        }),
    };
    Ok((data, Vec::new()))
}

fn cmd_heegaard(args: HeegaardArgs) -> CmdResult {
    let text = if args.matrix == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliFailure::input(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(&args.matrix)
            .map_err(|e| CliFailure::input(format!("reading {}: {e}", args.matrix)))?
    };
    let json: crate::symplectic::MatrixJson = serde_json::from_str(&text)
        .map_err(|e| CliFailure::input(format!("bad matrix JSON: {e}")))?;
    let matrix = SpMatrix::from_json(&json)?;
    let report = heegaard_reduce(&matrix, args.p)?;
    Ok((serde_json::to_value(report).expect("report serializes"), Vec::new()))
}

fn cmd_sample(args: SampleArgs, seed: u64) -> CmdResult {
    if args.depth == 0 {
        return Err(CliFailure::input("--depth must be at least 1"));
    }
    if args.rank == 0 {
        return Err(CliFailure::input("--rank must be at least 1"));
    }
    let (kind, mut diagnostics) = series_kind(args.series, args.p)?;
    let words = sample_series(args.rank, kind, args.depth, args.count, seed);
    // Re-check every sample with the matching oracle where it is exact.
    let oracle_exact = !matches!(kind, SeriesKind::Stallings(_)) || args.depth <= 3;
    if oracle_exact {
        let mut verified = 0usize;
        for w in &words {
            let report = membership(w, kind, args.depth)?;
            if report.verdict != Verdict::True {
                return Err(CliFailure::domain(format!(
                    "sampler produced {w}, which fails the depth-{} oracle",
                    args.depth
                )));
            }
            verified += 1;
        }
        diagnostics.push(format!("all {verified} samples re-verified by the oracle"));
    } else {
        diagnostics.push(
            "oracle is inconclusive at this depth; samples are correct by construction"
                .to_string(),
        );
    }
    let data = json!({
        "series": kind.name(),
        "depth": args.depth,
        "p": kind.modulus(),
        "rank": args.rank,
        "seed": seed,
        "words": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    Ok((data, diagnostics))
}

fn cmd_perron(args: PerronArgs) -> CmdResult {
    if args.k == 0 {
        return Err(CliFailure::input("--k must be at least 1"));
    }
    let f = parse_map(args.genus, &args.map)?;
    let member = perron_member(&f, args.k, args.p)?;
    let mut data = json!({
        "map": f.label(),
        "k": args.k,
        "p": args.p,
        "member": member,
    });
    if args.blocks {
        let matrix = fox_matrix(&f);
        let mut blocks = Vec::with_capacity(args.k);
        for level in 0..args.k {
            blocks.push(taylor_block(&matrix, level, args.p)?.to_json());
        }
        data["blocks"] = serde_json::Value::Array(blocks);
    }
    Ok((data, Vec::new()))
}

fn resolve_suite(suite: &str) -> Result<Vec<usize>, CliFailure> {
    if suite == "all" {
        return Ok((1..=CRITERION_COUNT).collect());
    }
    if let Ok(index) = suite.parse::<usize>() {
        if (1..=CRITERION_COUNT).contains(&index) {
            return Ok(vec![index]);
        }
        return Err(CliFailure::input(format!(
            "criterion index {index} out of range 1..={CRITERION_COUNT}"
        )));
    }
    if let Some(pos) = CRITERION_NAMES.iter().position(|n| *n == suite) {
        return Ok(vec![pos + 1]);
    }
    Err(CliFailure::input(format!(
        "unknown suite `{suite}`; use \"all\", an index, or one of: {}",
        CRITERION_NAMES.join(", ")
    )))
}

fn cmd_selftest(args: SelftestArgs, seed: u64) -> i32 {
    let indices = match resolve_suite(&args.suite) {
        Ok(indices) => indices,
        Err(failure) => {
            emit(&json!({
                "status": "error",
                "data": { "kind": failure.kind, "message": failure.message },
                "diagnostics": []
            }));
            return failure.code;
        }
    };
    let reports: Vec<CriterionReport> =
        indices.into_iter().map(|i| run_criterion(i, seed)).collect();
    let all_passed = reports.iter().all(|r| r.passed);
    if args.json {
        let status = if all_passed { "ok" } else { "error" };
        emit(&json!({
            "status": status,
            "data": { "seed": seed, "reports": reports },
            "diagnostics": []
        }));
    } else {
        for r in &reports {
            print_line(r);
        }
        let passed = reports.iter().filter(|r| r.passed).count();
        print_line(format_args!("{passed}/{} criteria passed (seed {seed})", reports.len()));
    }
    if all_passed {
        EXIT_OK
    } else {
        EXIT_CRITERIA
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).expect("parses")
    }

    #[test]
    fn member_command_runs() {
        let cli = parse(&[
            "johnsonlab", "member", "--series", "zassenhaus", "--depth", "3", "--p", "3",
            "--word", "x1 x1 x1",
        ]);
        assert_eq!(dispatch(cli), EXIT_OK);
    }

    #[test]
    fn missing_p_is_an_input_error() {
        let cli = parse(&[
            "johnsonlab", "member", "--series", "zassenhaus", "--depth", "3", "--word", "x1",
        ]);
        assert_eq!(dispatch(cli), EXIT_INPUT);
    }

    #[test]
    fn tau_outside_the_filtration_is_a_domain_error() {
        let cli = parse(&[
            "johnsonlab", "tau", "--map", "Ta1", "--variant", "integral", "--level", "1",
        ]);
        assert_eq!(dispatch(cli), EXIT_DOMAIN);
    }

    #[test]
    fn suite_resolution() {
        assert_eq!(resolve_suite("all").unwrap().len(), CRITERION_COUNT);
        assert_eq!(resolve_suite("2").unwrap(), vec![2]);
        assert_eq!(resolve_suite("power-signatures").unwrap(), vec![2]);
        assert!(resolve_suite("0").is_err());
        assert!(resolve_suite("nope").is_err());
    }

    #[test]
    fn ring_parsing() {
        assert_eq!(parse_ring("Z").unwrap(), CoefficientRing::Integers);
        assert_eq!(parse_ring("F5").unwrap(), CoefficientRing::PrimeField(5));
        assert!(parse_ring("F4").is_err());
        assert!(parse_ring("Q").is_err());
    }

    #[test]
    fn budget_exhaustion_is_obstructed() {
        let failure: CliFailure =
            SeriesError::BudgetExceeded { stored: 10, budget: 1 }.into();
        assert_eq!(failure.code, EXIT_OBSTRUCTED);
        let failure: CliFailure = SymplecticError::NotQHSAtP(3).into();
        assert_eq!(failure.code, EXIT_OBSTRUCTED);
        assert_eq!(failure.kind, "not-qhs");
    }
}
