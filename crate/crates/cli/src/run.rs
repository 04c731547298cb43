//! Command dispatch.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use cosheaf::chain::{assemble, ShortExactSequence};
use cosheaf::morse::generate_compatible_matching;
use cosheaf::mv::{build_morse_mv_ses, build_mv_ses, compare_les};
use cosheaf::random::random_invertible;
use cosheaf::{Cosheaf, Decomposition, Field, MorseComplex, PartialMatching, Simplex, SimplicialComplex};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use thiserror::Error;

use crate::formats::{parse_complex, parse_cosheaf, parse_matching, CosheafFileError, ParseError};
use crate::report::{InputDigest, LesTable, Report};

#[derive(Debug, Parser)]
#[command(name = "cosheaf", version, about = "Cosheaf homology, Morse reduction and Mayer-Vietoris checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the cosheaf, and the matching and decomposition when given.
    Validate(Args),
    /// Homology dimensions of the cosheaf chain complex.
    Homology(Args),
    /// Morse complex of a matching, compared with the full complex.
    Morse(Args),
    /// Mayer-Vietoris sequence of the cover given by --left and --right.
    Mv(Args),
    /// Morse Mayer-Vietoris sequence with its verification checks.
    MorseMv(Args),
    /// Compare the standard and Morse long exact sequences; without
    /// --matching a cover-compatible matching is generated.
    Compare(Args),
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Args {
    /// Complex file: one simplex per line.
    #[arg(long)]
    pub complex: PathBuf,
    /// Cosheaf file; defaults to the constant cosheaf.
    #[arg(long)]
    pub cosheaf: Option<PathBuf>,
    /// Field characteristic for the default cosheaf [default: 2].
    #[arg(long)]
    pub field: Option<u32>,
    /// Matching file: `pair <facet> <coface>` lines.
    #[arg(long, conflicts_with = "auto_matching")]
    pub matching: Option<PathBuf>,
    /// Generate a matching greedily.
    #[arg(long)]
    pub auto_matching: bool,
    /// Generators of the subcomplex L.
    #[arg(long, requires = "right")]
    pub left: Option<PathBuf>,
    /// Generators of the subcomplex M.
    #[arg(long, requires = "left")]
    pub right: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Run randomized self-checks with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Command {
    pub fn args(&self) -> &Args {
        match self {
            Command::Validate(a)
            | Command::Homology(a)
            | Command::Morse(a)
            | Command::Mv(a)
            | Command::MorseMv(a)
            | Command::Compare(a) => a,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            _ => 2,
        }
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        CliError::Parse {
            path: path.display().to_string(),
            line: e.line,
            message: e.message,
        }
    }
}

impl From<cosheaf::Error> for CliError {
    fn from(e: cosheaf::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Parsed inputs shared by all subcommands.
struct Inputs {
    digests: Vec<InputDigest>,
    complex: SimplicialComplex,
    cosheaf: Result<Cosheaf, String>,
    field: Field,
}

fn read(path: &Path, role: &str, digests: &mut Vec<InputDigest>) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    digests.push(InputDigest::new(role, &path.display().to_string(), &text));
    Ok(text)
}

fn load(args: &Args) -> Result<Inputs, CliError> {
    let mut digests = Vec::new();
    let text = read(&args.complex, "complex", &mut digests)?;
    let complex = parse_complex(&text).map_err(|e| CliError::parse(&args.complex, e))?;
    let (cosheaf, field) = match &args.cosheaf {
        Some(path) => {
            let text = read(path, "cosheaf", &mut digests)?;
            match parse_cosheaf(&text, &complex) {
                Ok(c) => {
                    let field = c.field();
                    (Ok(c), field)
                }
                Err(CosheafFileError::Parse(e)) => return Err(CliError::parse(path, e)),
                Err(CosheafFileError::Invalid(m)) => {
                    let field = declared_field(&text).unwrap_or_default();
                    (Err(format!("{}: {m}", path.display())), field)
                }
            }
        }
        None => {
            let p = args.field.unwrap_or(2);
            let field = Field::new(p).map_err(|e| CliError::Usage(format!("--field: {e}")))?;
            (Ok(Cosheaf::constant(&complex, 1, field)), field)
        }
    };
    if let (Some(p), Some(_)) = (args.field, &args.cosheaf) {
        if p != field.characteristic() {
            return Err(CliError::Usage(format!(
                "--field {p} disagrees with the cosheaf file (field {})",
                field.characteristic()
            )));
        }
    }
    Ok(Inputs {
        digests,
        complex,
        cosheaf,
        field,
    })
}

fn declared_field(text: &str) -> Option<Field> {
    text.lines()
        .find_map(|l| l.trim().strip_prefix("field "))
        .and_then(|p| p.trim().parse().ok())
        .and_then(|p| Field::new(p).ok())
}

fn load_subcomplex(path: &Path, role: &str, digests: &mut Vec<InputDigest>) -> Result<SimplicialComplex, CliError> {
    let text = read(path, role, digests)?;
    parse_complex(&text).map_err(|e| CliError::parse(path, e))
}

fn load_decomposition(args: &Args, k: &SimplicialComplex, digests: &mut Vec<InputDigest>) -> Result<Option<Decomposition>, CliError> {
    let (Some(l), Some(m)) = (&args.left, &args.right) else {
        return Ok(None);
    };
    let l = load_subcomplex(l, "left", digests)?;
    let m = load_subcomplex(m, "right", digests)?;
    Ok(Some(Decomposition::new(k.clone(), l, m)?))
}

fn require_decomposition(args: &Args, k: &SimplicialComplex, digests: &mut Vec<InputDigest>) -> Result<Decomposition, CliError> {
    load_decomposition(args, k, digests)?
        .ok_or_else(|| CliError::Usage("this command needs --left and --right".into()))
}

/// The matching from `--matching`, without validation.
fn read_matching(args: &Args, digests: &mut Vec<InputDigest>) -> Result<Option<PartialMatching>, CliError> {
    let Some(path) = &args.matching else {
        return Ok(None);
    };
    let text = read(path, "matching", digests)?;
    parse_matching(&text)
        .map(Some)
        .map_err(|e| CliError::parse(path, e))
}

/// The matching to reduce with: read and validated, or generated.
fn matching(
    args: &Args,
    k: &SimplicialComplex,
    c: &Cosheaf,
    subcomplexes: &[&SimplicialComplex],
    digests: &mut Vec<InputDigest>,
) -> Result<PartialMatching, CliError> {
    if args.auto_matching {
        return Ok(generate_compatible_matching(k, c, subcomplexes));
    }
    let Some(m) = read_matching(args, digests)? else {
        return Err(CliError::Usage(
            "this command needs --matching or --auto-matching".into(),
        ));
    };
    let path = args.matching.as_ref().expect("read").display();
    if let Some(v) = m.validate(k).first() {
        return Err(CliError::Validation(format!("{path}: {v}")));
    }
    m.check_morse(k, c)
        .map_err(|e| CliError::Validation(format!("{path}: {e}")))?;
    Ok(m)
}

fn cosheaf(inputs: &Inputs) -> Result<&Cosheaf, CliError> {
    inputs
        .cosheaf
        .as_ref()
        .map_err(|m| CliError::Validation(m.clone()))
}

/// Runs one subcommand. `echo` is recorded as the report's command line.
pub fn run(command: &Command, echo: &str) -> Result<Report, CliError> {
    let start = Instant::now();
    let args = command.args();
    let mut inputs = load(args)?;
    let mut report = Report {
        command: echo.to_string(),
        field: inputs.field.characteristic(),
        ..Report::default()
    };
    let mut digests = std::mem::take(&mut inputs.digests);
    match command {
        Command::Validate(_) => validate(args, &inputs, &mut digests, &mut report)?,
        Command::Homology(_) => homology(args, &inputs, &mut report)?,
        Command::Morse(_) => morse(args, &inputs, &mut digests, &mut report)?,
        Command::Mv(_) => mv(args, &inputs, &mut digests, &mut report)?,
        Command::MorseMv(_) => morse_mv(args, &inputs, &mut digests, &mut report)?,
        Command::Compare(_) => compare(args, &inputs, &mut digests, &mut report)?,
    }
    report.inputs = digests;
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn validate(args: &Args, inputs: &Inputs, digests: &mut Vec<InputDigest>, report: &mut Report) -> Result<(), CliError> {
    let k = &inputs.complex;
    report.verdicts.insert("cosheaf_valid".into(), inputs.cosheaf.is_ok());
    if let Err(m) = &inputs.cosheaf {
        report.diagnostics.push(m.clone());
    }
    let decomposition = match load_decomposition(args, k, digests) {
        Ok(d) => {
            if d.is_some() {
                report.verdicts.insert("decomposition_valid".into(), true);
            }
            d
        }
        Err(CliError::Validation(m)) => {
            report.verdicts.insert("decomposition_valid".into(), false);
            report.diagnostics.push(m);
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(m) = read_matching(args, digests)? {
        let path = args.matching.as_ref().expect("read").display().to_string();
        let violations = m.validate(k);
        report.verdicts.insert("matching_valid".into(), violations.is_empty());
        report
            .diagnostics
            .extend(violations.iter().map(|v| format!("{path}: {v}")));
        if violations.is_empty() {
            let acyclic = m.is_acyclic(k);
            report.verdicts.insert("matching_acyclic".into(), acyclic);
            if let Ok(c) = &inputs.cosheaf {
                report
                    .verdicts
                    .insert("matching_compatible".into(), m.is_cosheaf_compatible(c));
            }
            if let Some(d) = &decomposition {
                let ok = m.is_subcomplex_compatible(d.l()) && m.is_subcomplex_compatible(d.m());
                report.verdicts.insert("matching_subcomplex_compatible".into(), ok);
            }
        }
    }
    Ok(())
}

fn homology_dims(c: &cosheaf::ChainComplex) -> Vec<usize> {
    (0..c.len()).map(|k| c.homology(k).dimension()).collect()
}

/// The same cosheaf in a random basis of every costalk.
fn scrambled(c: &Cosheaf, rng: &mut StdRng) -> Result<Cosheaf, CliError> {
    let basis: BTreeMap<Simplex, cosheaf::Matrix> = c
        .base()
        .iter()
        .map(|s| (s.clone(), random_invertible(rng, c.field(), c.stalk_dim(s))))
        .collect();
    Ok(c.change_basis(&basis)?)
}

fn homology(args: &Args, inputs: &Inputs, report: &mut Report) -> Result<(), CliError> {
    let k = &inputs.complex;
    let c = cosheaf(inputs)?;
    let cx = assemble(k, c)?;
    let dims = homology_dims(&cx);
    report.verdicts.insert("square_zero".into(), cx.square_zero_failure().is_none());
    if let Some(seed) = args.seed {
        let mut rng = StdRng::seed_from_u64(seed);
        let other = assemble(k, &scrambled(c, &mut rng)?)?;
        report
            .verdicts
            .insert("basis_change_invariant".into(), homology_dims(&other) == dims);
    }
    report.homology = Some(dims);
    Ok(())
}

fn morse(args: &Args, inputs: &Inputs, digests: &mut Vec<InputDigest>, report: &mut Report) -> Result<(), CliError> {
    let k = &inputs.complex;
    let c = cosheaf(inputs)?;
    let sigma = matching(args, k, c, &[], digests)?;
    let mc = MorseComplex::assemble(k, c, &sigma)?;
    let check = mc.quasi_isomorphism_check()?;
    report.critical_cells = Some(mc.critical_counts());
    report.verdicts.insert("square_zero".into(), mc.complex().square_zero_failure().is_none());
    report.verdicts.insert("quasi_isomorphic".into(), check.holds());
    if let Some(seed) = args.seed {
        let mut rng = StdRng::seed_from_u64(seed);
        let other = MorseComplex::assemble(k, &scrambled(c, &mut rng)?, &sigma)?;
        report.verdicts.insert(
            "basis_change_invariant".into(),
            homology_dims(other.complex()) == check.morse,
        );
    }
    report.homology = Some(check.standard);
    report.morse_homology = Some(check.morse);
    Ok(())
}

fn record_exactness(ses: &ShortExactSequence, report: &mut Report) {
    for e in ses.exactness() {
        report.verdicts.insert(format!("ses_exact_degree_{}", e.degree), e.holds());
    }
}

/// Recomputes every connecting map with shuffled pivot orders.
fn lift_invariance(ses: &ShortExactSequence, seed: u64) -> Result<bool, CliError> {
    let mut rng = StdRng::seed_from_u64(seed);
    for k in 1..ses.len() {
        let base = ses.connecting_homomorphism(k)?;
        let mut order: Vec<usize> = (0..ses.middle().dim(k)).collect();
        for _ in 0..4 {
            order.shuffle(&mut rng);
            if ses.connecting_homomorphism_with_order(k, &order)? != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn mv(args: &Args, inputs: &Inputs, digests: &mut Vec<InputDigest>, report: &mut Report) -> Result<(), CliError> {
    let k = &inputs.complex;
    let c = cosheaf(inputs)?;
    let d = require_decomposition(args, k, digests)?;
    let mv = build_mv_ses(&d, c)?;
    record_exactness(mv.ses(), report);
    let les = mv.long_exact_sequence()?;
    report.verdicts.insert("les_exact".into(), les.is_exact());
    report.les.push(LesTable::new("standard", &les));
    report.homology = Some(homology_dims(mv.ses().right()));
    if let Some(seed) = args.seed {
        report
            .verdicts
            .insert("connecting_map_lift_invariant".into(), lift_invariance(mv.ses(), seed)?);
    }
    Ok(())
}

fn morse_mv(args: &Args, inputs: &Inputs, digests: &mut Vec<InputDigest>, report: &mut Report) -> Result<(), CliError> {
    let k = &inputs.complex;
    let c = cosheaf(inputs)?;
    let d = require_decomposition(args, k, digests)?;
    let sigma = matching(args, k, c, &[d.l(), d.m()], digests)?;
    let mmv = build_morse_mv_ses(&d, c, &sigma)?;
    record_exactness(mmv.ses(), report);
    report
        .verdicts
        .insert("straddling_blocks_vanish".into(), mmv.straddling_blocks_vanish());
    report.verdicts.insert("cube_commutes".into(), mmv.cube_commutes());
    for s in mmv.straddling() {
        for (alpha, omega) in &s.nonzero {
            report
                .diagnostics
                .push(format!("nonzero block [{alpha}:{omega}] for {} in {}", s.sub, s.sup));
        }
    }
    let standard = mmv.standard().long_exact_sequence()?;
    let morse = mmv.ses().long_exact_sequence()?;
    report.verdicts.insert("les_exact".into(), morse.is_exact());
    let cmp = compare_les(&standard, &morse);
    report.verdicts.insert("les_isomorphic".into(), cmp.agree);
    report.diagnostics.extend(cmp.first_difference);
    report.les.push(LesTable::new("standard", &standard));
    report.les.push(LesTable::new("morse", &morse));
    let mk = mmv.morse_complex(cosheaf::mv::Piece::K);
    report.critical_cells = Some(mk.critical_counts());
    report.homology = Some(homology_dims(mmv.standard().ses().right()));
    report.morse_homology = Some(homology_dims(mk.complex()));
    if let Some(seed) = args.seed {
        report
            .verdicts
            .insert("connecting_map_lift_invariant".into(), lift_invariance(mmv.ses(), seed)?);
    }
    Ok(())
}

fn compare(args: &Args, inputs: &Inputs, digests: &mut Vec<InputDigest>, report: &mut Report) -> Result<(), CliError> {
    let k = &inputs.complex;
    let c = cosheaf(inputs)?;
    let d = require_decomposition(args, k, digests)?;
    let sigma = match args.matching {
        Some(_) => matching(args, k, c, &[d.l(), d.m()], digests)?,
        None => generate_compatible_matching(k, c, &[d.l(), d.m()]),
    };
    let mmv = build_morse_mv_ses(&d, c, &sigma)?;
    let standard = mmv.standard().long_exact_sequence()?;
    let morse = mmv.ses().long_exact_sequence()?;
    let cmp = compare_les(&standard, &morse);
    report.verdicts.insert("les_isomorphic".into(), cmp.agree);
    report.diagnostics.extend(cmp.first_difference);
    report.les.push(LesTable::new("standard", &standard));
    report.les.push(LesTable::new("morse", &morse));
    Ok(())
}

/// Parses `argv`, runs, writes the report and returns the exit status.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo = argv.get(1..).unwrap_or_default().join(" ");
    match run(&cli.command, &echo) {
        Ok(report) => {
            let json = report.to_json();
            match &cli.command.args().report {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &json) {
                        eprintln!("{}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{json}"),
            }
            for d in &report.diagnostics {
                eprintln!("{d}");
            }
            let failed: Vec<&String> = report
                .verdicts
                .iter()
                .filter(|(_, &v)| !v)
                .map(|(k, _)| k)
                .collect();
            if failed.is_empty() {
                0
            } else {
                for f in failed {
                    eprintln!("check failed: {f}");
                }
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
