//! Command-line front end: argument handling, report assembly and exit codes.
//!
//! Exit codes: 0 success, 1 oracle mismatch, 2 configuration error,
//! 3 truncated enumeration under `--strict` or an oracle run over its budget.

pub mod doc;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zpr_fsr::oracle::{oracle_min_char, oracle_shortest_feedback};
use zpr_fsr::param::{analyze_sequence, current_complexity};
use zpr_fsr::{
    complexity_profile, enumerate_min_char_reciprocal, enumerate_shortest_feedback, synthesize,
    Error, Mode, Modulus, Poly, Residue, DEFAULT_CAP,
};

use doc::{EnumDoc, ModulusDoc, OracleDoc, ParamDoc, PolyDoc, ReciprocalDoc, Report, SetDiff, TraceDoc};

#[derive(Debug, Parser)]
#[command(name = "zpr-fsr", version, about = "Shortest feedback shift registers over Z_p and Z_{p^r}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complexity, a shortest feedback polynomial and the parametrization of all of them.
    Synth(RunArgs),
    /// Complexity of every prefix.
    Profile(RunArgs),
    /// Lists every shortest feedback polynomial.
    Enumerate(RunArgs),
    /// Compares the engine with a brute-force search.
    OracleCheck(RunArgs),
    /// Per-step discrepancies, partitions, pivots and update matrices.
    Trace(RunArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Field,
    Ring,
    BmCompat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Prime p.
    #[arg(long)]
    pub p: u64,
    /// Exponent r of the modulus p^r.
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Sequence values separated by commas or spaces.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "seq_file")]
    pub seq: Option<String>,
    /// File with one sequence value per line.
    #[arg(long)]
    pub seq_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Scale feedback polynomials to constant term 1.
    #[arg(long)]
    pub normalized: bool,
    /// Scale characteristic polynomials to leading coefficient 1.
    #[arg(long)]
    pub monic: bool,
    /// Maximal number of parameter tuples to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u128,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Fail with exit code 3 when an enumeration is truncated.
    #[arg(long)]
    pub strict: bool,
    /// Include per-step traces.
    #[arg(long)]
    pub trace: bool,
    /// Include the full enumeration of shortest feedback polynomials.
    #[arg(long)]
    pub parametrize: bool,
    /// Include results for the reversed sequence.
    #[arg(long)]
    pub reciprocal: bool,
    /// Include the complexity profile.
    #[arg(long)]
    pub profile: bool,
}

/// Which optional sections to produce.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Outputs {
    pub trace: bool,
    pub parametrize: bool,
    pub reciprocal: bool,
    pub oracle_check: bool,
    pub profile: bool,
}

/// Validated settings of one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub sequence: Vec<Residue>,
    pub reduced: bool,
    pub modulus: Modulus,
    pub mode: Mode,
    pub outputs: Outputs,
    pub normalized: bool,
    pub monic: bool,
    pub cap: u128,
    pub format: Format,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Config(String),
    Mismatch(String),
    Truncated(String),
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Config(_) => 2,
            CliError::Truncated(_) | CliError::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Mismatch(m) | CliError::Truncated(m) | CliError::Infeasible(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            Error::InternalInvariant(_) => CliError::Mismatch(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

/// Splits on commas and whitespace and reduces modulo `p^r`. Returns the
/// residues and whether any value needed reducing.
pub fn parse_sequence(text: &str, modulus: Modulus) -> Result<(Vec<Residue>, bool), CliError> {
    let mut reduced = false;
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: i64 = t
                .parse()
                .map_err(|_| CliError::Config(format!("invalid sequence value {t:?}")))?;
            let res = modulus.residue_i64(v);
            reduced |= res.value() as i64 != v;
            Ok::<_, CliError>(res)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((values, reduced))
}

impl RunConfig {
    pub fn from_args(args: &RunArgs, outputs: Outputs) -> Result<Self, CliError> {
        let modulus = Modulus::new(args.p, args.r)?;
        let mode = match args.mode {
            ModeArg::Auto => Mode::auto(modulus),
            ModeArg::Field => Mode::GrobnerField,
            ModeArg::Ring => Mode::GrobnerRing,
            ModeArg::BmCompat => Mode::BmCompatField,
        };
        if mode.is_field_mode() && !modulus.is_field() {
            return Err(CliError::Config(format!(
                "mode {} requires r = 1, got r = {}",
                mode.name(),
                modulus.r()
            )));
        }
        let text = match (&args.seq, &args.seq_file) {
            (Some(s), _) => s.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?,
            (None, None) => return Err(CliError::Config("one of --seq or --seq-file is required".into())),
        };
        let (sequence, reduced) = parse_sequence(&text, modulus)?;
        if mode == Mode::BmCompatField && (outputs.parametrize || outputs.reciprocal || outputs.oracle_check) {
            return Err(CliError::Config(
                "bm-compat mode provides complexity, feedback polynomial, profile and trace only".into(),
            ));
        }
        Ok(RunConfig {
            sequence,
            reduced,
            modulus,
            mode,
            outputs,
            normalized: args.normalized,
            monic: args.monic,
            cap: args.cap,
            format: args.format,
            strict: args.strict,
        })
    }
}

/// Complexities and full solution sets as computed by an engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineSets {
    pub complexity: usize,
    pub feedback: Vec<Poly>,
    pub reciprocal_complexity: usize,
    pub min_char: Vec<Poly>,
}

/// Signature of the engine compared by `oracle-check`.
pub type Engine = dyn Fn(&RunConfig) -> Result<EngineSets, CliError>;

/// Synthesis followed by full enumeration of both families.
pub fn default_engine(cfg: &RunConfig) -> Result<EngineSets, CliError> {
    let report = analyze_sequence(&cfg.sequence, cfg.modulus, cfg.mode)?;
    let fwd = enumerate_shortest_feedback(&report, cfg.normalized, cfg.cap)?;
    let rec = enumerate_min_char_reciprocal(&report, cfg.monic, cfg.cap)?;
    if fwd.truncated || rec.truncated {
        return Err(CliError::Truncated(format!(
            "enumeration exceeds the cap of {} tuples; raise --cap to compare full sets",
            cfg.cap
        )));
    }
    Ok(EngineSets {
        complexity: report.complexity,
        feedback: fwd.polys,
        reciprocal_complexity: report.reciprocal_complexity,
        min_char: rec.polys,
    })
}

fn oracle_section(cfg: &RunConfig, engine: &Engine) -> Result<OracleDoc, CliError> {
    let sets = engine(cfg)?;
    let fwd = oracle_shortest_feedback(&cfg.sequence, cfg.modulus, cfg.normalized)?;
    let rev: Vec<Residue> = cfg.sequence.iter().rev().copied().collect();
    let rec = oracle_min_char(&rev, cfg.modulus, cfg.monic)?;
    let forward = SetDiff::new((sets.complexity, &sets.feedback), (fwd.complexity, &fwd.solutions));
    let reciprocal = SetDiff::new(
        (sets.reciprocal_complexity, &sets.min_char),
        (rec.complexity, &rec.solutions),
    );
    Ok(OracleDoc {
        agree: forward.agrees() && reciprocal.agrees(),
        forward,
        reciprocal,
    })
}

fn feedback_doc(f: &Poly, normalized: bool) -> PolyDoc {
    if normalized {
        f.normalized_constant().as_ref().unwrap_or(f).into()
    } else {
        f.into()
    }
}

/// Assembles the report for `cfg`.
pub fn build_report(cfg: &RunConfig, engine: &Engine) -> Result<Report, CliError> {
    let m = cfg.modulus;
    let (state, traces) = synthesize(&cfg.sequence, m, cfg.mode)?;
    let mut report = Report {
        version: env!("CARGO_PKG_VERSION"),
        modulus: ModulusDoc { p: m.p(), r: m.r() },
        mode: cfg.mode.name(),
        sequence: cfg.sequence.iter().map(|x| x.value()).collect(),
        reduced: cfg.reduced,
        complexity: current_complexity(&state),
        feedback_poly: feedback_doc(&state.rows()[state.levels()].g2, cfg.normalized),
        parametrization: None,
        enumeration: None,
        reciprocal: None,
        profile: None,
        trace: None,
        oracle: None,
    };
    if cfg.mode != Mode::BmCompatField {
        let analysis = zpr_fsr::analyze(&state)?;
        report.parametrization = Some(ParamDoc::new(&analysis.param_forward, analysis.count_forward));
        if cfg.outputs.parametrize {
            let e = enumerate_shortest_feedback(&analysis, cfg.normalized, cfg.cap)?;
            report.enumeration = Some(EnumDoc::from(&e));
        }
        if cfg.outputs.reciprocal {
            let e = enumerate_min_char_reciprocal(&analysis, cfg.monic, cfg.cap)?;
            let min_char = if cfg.monic {
                analysis.min_char_poly.monic().unwrap_or(analysis.min_char_poly.clone())
            } else {
                analysis.min_char_poly.clone()
            };
            report.reciprocal = Some(ReciprocalDoc::new(
                analysis.reciprocal_complexity,
                &min_char,
                analysis.bidirectional_pivot,
                ParamDoc::new(&analysis.param_reciprocal, analysis.count_reciprocal),
                &e,
            ));
        }
    }
    if cfg.outputs.profile {
        report.profile = Some(complexity_profile(&cfg.sequence, m, cfg.mode)?);
    }
    if cfg.outputs.trace {
        report.trace = Some(traces.iter().map(TraceDoc::from).collect());
    }
    if cfg.outputs.oracle_check {
        report.oracle = Some(oracle_section(cfg, engine)?);
    }
    Ok(report)
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn render(cfg: &RunConfig, report: &Report) -> String {
    match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => doc::render_text(report),
    }
}

fn execute(command: &Command, engine: &Engine) -> Result<(RunConfig, Report), (Option<String>, CliError)> {
    let (args, outputs) = match command {
        Command::Synth(a) => (
            a,
            Outputs {
                trace: a.trace,
                parametrize: a.parametrize,
                reciprocal: a.reciprocal,
                oracle_check: false,
                profile: a.profile,
            },
        ),
        Command::Profile(a) => (a, Outputs { profile: true, ..Outputs::default() }),
        Command::Enumerate(a) => (
            a,
            Outputs {
                parametrize: true,
                reciprocal: a.reciprocal,
                ..Outputs::default()
            },
        ),
        Command::OracleCheck(a) => (a, Outputs { oracle_check: true, ..Outputs::default() }),
        Command::Trace(a) => (a, Outputs { trace: true, ..Outputs::default() }),
    };
    let cfg = RunConfig::from_args(args, outputs).map_err(|e| (None, e))?;
    let report = build_report(&cfg, engine).map_err(|e| (None, e))?;
    if let Some(o) = &report.oracle {
        if !o.agree {
            return Err((Some(render(&cfg, &report)), CliError::Mismatch("engine and oracle disagree".into())));
        }
    }
    if cfg.strict && report.truncated() {
        return Err((
            Some(render(&cfg, &report)),
            CliError::Truncated(format!("enumeration truncated at {} tuples", cfg.cap)),
        ));
    }
    Ok((cfg, report))
}

/// Parses `args` (program name first) and runs the command against `engine`.
pub fn run_with<I, T>(args: I, engine: &Engine) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command, engine) {
        Ok((cfg, report)) => {
            let stderr = if cfg.reduced {
                "note: sequence values were reduced modulo p^r\n".to_string()
            } else {
                String::new()
            };
            Outcome { code: 0, stdout: render(&cfg, &report), stderr }
        }
        Err((stdout, e)) => Outcome {
            code: e.exit_code(),
            stdout: stdout.unwrap_or_default(),
            stderr: format!("error: {}\n", e.message()),
        },
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &default_engine)
}
