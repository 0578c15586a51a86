//! Command-line front end. Every command returns its exit code and output
//! instead of printing directly, so it can be driven in-process.
//!
//! Exit codes: 0 when every applicable check passes, 1 when one fails, 2 on
//! invalid input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::complex::{InvariantComplex, StructureType};
use crate::lefschetz::LefschetzReport;
use crate::linalg::Rational;
use crate::model::{
    generate_model, parse_rational, preset, GenerateOptions, ModelFile, ModelKind, PRESETS,
};
use crate::spectral::PageGrid;
use crate::transverse::{
    check_star_relation, l_power, lambda_op, primitive_decompose, wedge, Frame, Multivector,
};
use crate::verify::{
    analyze, basic_betti_from_derham, primitive_betti_from_derham, Outcome, VerificationReport,
    VerifyError,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "invariant-sseq",
    version,
    about = "Exact spectral sequences of invariant forms on K-manifold models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Also write the machine-readable result to this file.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Suppress the human-readable output.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the spectral sequence and every applicable check on a model.
    Analyze {
        /// Model file (JSON).
        #[arg(required_unless_present = "preset", conflicts_with = "preset")]
        model: Option<PathBuf>,
        /// Analyze a built-in preset instead of a file.
        #[arg(long)]
        preset: Option<String>,
        /// Seed recorded in the report (defaults to the model's own seed).
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Write a seeded random model file.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        max_primitive_dim: usize,
        /// S (every dη_i = ω), C (closed η's) or mixed.
        #[arg(long = "type", default_value = "S")]
        kind: ModelKind,
        /// Explicit λ's, comma separated rationals.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambdas: Option<Vec<String>>,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Recover primitive / basic Betti numbers from de Rham Betti numbers.
    Recursion {
        /// Comma-separated Betti numbers b_0, …, b_{2n+s}.
        #[arg(long, value_delimiter = ',')]
        betti: Vec<usize>,
        #[arg(long)]
        s: usize,
        /// Half the basic dimension; derived from the list length if omitted.
        #[arg(long)]
        n: Option<usize>,
        /// S or C.
        #[arg(long, alias = "type", default_value = "S")]
        structure: ModelKind,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustively check the Hodge star relation on R^{2n+s}.
    StarCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        common: Common,
    },
    /// List presets, or print one as a model file.
    Presets {
        name: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Lefschetz decomposition of a transverse form, e.g. "e1^e2 - 1/2 e3^e4".
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn invalid(message: impl std::fmt::Display) -> Self {
        CommandOutput {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                CommandOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn execute(command: Command) -> CommandOutput {
    match command {
        Command::Analyze {
            model,
            preset: name,
            seed,
            common,
        } => cmd_analyze(model.as_deref(), name.as_deref(), seed, &common),
        Command::Generate {
            seed,
            n,
            s,
            max_primitive_dim,
            kind,
            lambdas,
            out,
            common,
        } => cmd_generate(
            seed,
            n,
            s,
            max_primitive_dim,
            kind,
            lambdas,
            out.as_deref(),
            &common,
        ),
        Command::Recursion {
            betti,
            s,
            n,
            structure,
            common,
        } => cmd_recursion(&betti, s, n, structure, &common),
        Command::StarCheck { n, s, common } => cmd_star_check(n, s, &common),
        Command::Presets { name, common } => cmd_presets(name.as_deref(), &common),
        Command::Decompose { n, form, common } => cmd_decompose(n, &form, &common),
    }
}

fn finish(code: i32, human: String, json: Option<String>, common: &Common) -> CommandOutput {
    let mut out = CommandOutput {
        code,
        stdout: if common.quiet { String::new() } else { human },
        stderr: String::new(),
    };
    if let (Some(path), Some(json)) = (&common.json, json) {
        if let Err(e) = std::fs::write(path, json) {
            out.code = EXIT_INVALID;
            out.stderr = format!("error: cannot write {}: {e}\n", path.display());
        }
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub name: Option<String>,
    pub description: Option<String>,
    pub n: usize,
    pub s: usize,
    pub lambdas: Vec<String>,
    pub base_dims: Vec<usize>,
}

/// Everything `analyze` computes. Deterministic given the model and seed,
/// except for `elapsed_ms`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub model: ModelSummary,
    pub seed: Option<u64>,
    pub structure: StructureType,
    pub hard_lefschetz: LefschetzReport,
    /// Dimension grids of `E_0, …, E_{stable_at}`.
    pub pages: Vec<PageGrid>,
    pub stable_at: usize,
    pub cohomology: Vec<usize>,
    pub verifications: Vec<VerificationReport>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn load_model(path: &Path) -> Result<ModelFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    ModelFile::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn run_report(file: &ModelFile, seed: Option<u64>) -> Result<RunReport, String> {
    let start = Instant::now();
    let c: InvariantComplex = file.to_complex().map_err(|e| e.to_string())?;
    let analysis = analyze(&c).map_err(|e| match e {
        VerifyError::Engine(e) => format!("invalid model: {e}"),
        other => other.to_string(),
    })?;
    Ok(RunReport {
        model: ModelSummary {
            name: file.name.clone(),
            description: file.description.clone(),
            n: file.n,
            s: file.s,
            lambdas: file.lambdas.clone(),
            base_dims: file.base_dims.clone(),
        },
        seed: seed.or(file.seed),
        structure: analysis.structure,
        hard_lefschetz: c.base().check_hard_lefschetz(),
        pages: analysis
            .convergence
            .pages
            .iter()
            .map(|p| p.grid())
            .collect(),
        stable_at: analysis.convergence.stable_at,
        cohomology: analysis.cohomology_dims.clone(),
        passed: analysis.passed(),
        verifications: analysis.reports,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `E_r` as a `(p, q)` grid, highest `q` on top.
pub fn format_grid(grid: &PageGrid) -> String {
    let width = grid
        .rows
        .iter()
        .flatten()
        .map(|d| d.to_string().len())
        .max()
        .unwrap_or(1)
        .max(2);
    let mut out = String::new();
    let _ = writeln!(out, "E_{}:", grid.r);
    for (i, row) in grid.rows.iter().enumerate().rev() {
        let q = grid.q_min + i as i64;
        let cells: Vec<String> = row.iter().map(|d| format!("{d:>width$}")).collect();
        let _ = writeln!(out, "  q={q:>2} | {}", cells.join(" "));
    }
    let ps: Vec<String> = (0..grid.rows.first().map_or(0, Vec::len))
        .map(|p| format!("{p:>width$}"))
        .collect();
    let _ = writeln!(out, "       +-{}", "-".repeat(ps.join(" ").len()));
    let _ = writeln!(out, "      p: {}", ps.join(" "));
    out
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

pub fn format_report(report: &RunReport) -> String {
    let mut out = String::new();
    let m = &report.model;
    let _ = writeln!(
        out,
        "model {}: n = {}, s = {}, lambdas = ({}), structure {:?}",
        m.name.as_deref().unwrap_or("(unnamed)"),
        m.n,
        m.s,
        m.lambdas.join(", "),
        report.structure
    );
    let _ = writeln!(
        out,
        "base dims ({}), hard Lefschetz: {}",
        join(&m.base_dims),
        if report.hard_lefschetz.hlp {
            "yes"
        } else {
            "no"
        }
    );
    out.push('\n');
    for grid in &report.pages {
        out.push_str(&format_grid(grid));
        out.push('\n');
    }
    let _ = writeln!(out, "degenerates at page {}", report.stable_at);
    let _ = writeln!(out, "cohomology dims ({})", join(&report.cohomology));
    for v in &report.verifications {
        let tag = match &v.outcome {
            Outcome::Pass => "pass".to_string(),
            Outcome::Fail => "FAIL".to_string(),
            Outcome::HypothesisViolated(reason) => format!("n/a ({reason})"),
        };
        let _ = writeln!(out, "[{tag}] {}", v.theorem);
        for w in &v.witnesses {
            let _ = writeln!(out, "    {w}");
        }
    }
    out
}

pub fn cmd_analyze(
    path: Option<&Path>,
    preset_name: Option<&str>,
    seed: Option<u64>,
    common: &Common,
) -> CommandOutput {
    let file = match (path, preset_name) {
        (_, Some(name)) => preset(name).map_err(|e| e.to_string()),
        (Some(path), None) => load_model(path),
        (None, None) => Err("no model given".to_string()),
    };
    let report = match file.and_then(|f| run_report(&f, seed)) {
        Ok(r) => r,
        Err(e) => return CommandOutput::invalid(e),
    };
    let code = if report.passed { EXIT_PASS } else { EXIT_FAIL };
    finish(code, format_report(&report), Some(report.to_json()), common)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_generate(
    seed: u64,
    n: usize,
    s: usize,
    max_primitive_dim: usize,
    kind: ModelKind,
    lambdas: Option<Vec<String>>,
    out: Option<&Path>,
    common: &Common,
) -> CommandOutput {
    let lambdas = match lambdas
        .map(|v| {
            v.iter()
                .map(|t| parse_rational(t))
                .collect::<Result<Vec<Rational>, _>>()
        })
        .transpose()
    {
        Ok(l) => l,
        Err(e) => return CommandOutput::invalid(format!("--lambdas: {e}")),
    };
    let opts = GenerateOptions {
        seed,
        n,
        s,
        max_primitive_dim,
        kind,
        lambdas,
    };
    let text = match generate_model(&opts) {
        Ok(m) => m.to_json(),
        Err(e) => return CommandOutput::invalid(e),
    };
    match out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => finish(
                EXIT_PASS,
                format!("wrote {}\n", path.display()),
                Some(text),
                common,
            ),
            Err(e) => CommandOutput::invalid(format!("cannot write {}: {e}", path.display())),
        },
        None => finish(EXIT_PASS, text.clone(), Some(text), common),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionResult {
    pub structure: String,
    pub s: usize,
    pub n: usize,
    pub betti: Vec<usize>,
    pub primitive: Option<Vec<usize>>,
    pub basic: Vec<usize>,
}

pub fn cmd_recursion(
    betti: &[usize],
    s: usize,
    n: Option<usize>,
    structure: ModelKind,
    common: &Common,
) -> CommandOutput {
    if s == 0 {
        return CommandOutput::invalid("s must be at least 1");
    }
    let span = betti.len().checked_sub(s + 1);
    let n = match (n, span) {
        (Some(n), Some(span)) if span == 2 * n => n,
        (Some(n), _) => {
            return CommandOutput::invalid(format!(
                "expected {} Betti numbers (2n + s + 1), found {}",
                2 * n + s + 1,
                betti.len()
            ))
        }
        (None, Some(span)) if span % 2 == 0 => span / 2,
        (None, _) => {
            return CommandOutput::invalid(format!(
                "{} Betti numbers cannot be 2n + s + 1 for s = {s}",
                betti.len()
            ))
        }
    };
    let result = match structure {
        ModelKind::S => primitive_betti_from_derham(betti, s, n).map(|(p, b)| (Some(p), b)),
        ModelKind::C => basic_betti_from_derham(betti, s).map(|b| (None, b)),
        ModelKind::Mixed => return CommandOutput::invalid("recursion needs structure S or C"),
    };
    match result {
        Ok((primitive, basic)) => {
            let mut human = String::new();
            if let Some(p) = &primitive {
                let _ = writeln!(human, "primitive basic Betti (k = 0..={n}): ({})", join(p));
            }
            let _ = writeln!(human, "basic Betti (k = 0..={}): ({})", 2 * n, join(&basic));
            let json = to_json(&RecursionResult {
                structure: structure.to_string(),
                s,
                n,
                betti: betti.to_vec(),
                primitive,
                basic,
            });
            finish(EXIT_PASS, human, Some(json), common)
        }
        Err(e @ (VerifyError::Negative { .. } | VerifyError::NonzeroTail { .. })) => {
            CommandOutput {
                code: EXIT_FAIL,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
        Err(e) => CommandOutput::invalid(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCheckResult {
    pub n: usize,
    pub s: usize,
    pub cases: usize,
    pub passed: bool,
    pub counterexamples: Vec<String>,
}

pub fn cmd_star_check(n: usize, s: usize, common: &Common) -> CommandOutput {
    if n > 3 || s > 4 {
        return CommandOutput::invalid("star-check supports n <= 3 and s <= 4");
    }
    let check = check_star_relation(n, s);
    let counterexamples: Vec<String> = check
        .mismatches
        .iter()
        .map(|m| {
            format!(
                "α = {:#b}, I = {:#b}: {} ≠ {}",
                m.alpha, m.subset, m.lhs, m.rhs
            )
        })
        .collect();
    let mut human = if check.passed() {
        format!("pass: n = {n}, s = {s}, {} cases\n", check.cases)
    } else {
        format!(
            "FAIL: n = {n}, s = {s}, {} of {} cases differ\n",
            counterexamples.len(),
            check.cases
        )
    };
    for c in counterexamples.iter().take(10) {
        let _ = writeln!(human, "  {c}");
    }
    let json = to_json(&StarCheckResult {
        n,
        s,
        cases: check.cases,
        passed: check.passed(),
        counterexamples,
    });
    finish(
        if check.passed() { EXIT_PASS } else { EXIT_FAIL },
        human,
        Some(json),
        common,
    )
}

pub fn cmd_presets(name: Option<&str>, common: &Common) -> CommandOutput {
    match name {
        None => {
            let mut human = String::new();
            for p in PRESETS {
                let _ = writeln!(human, "{:<10} {}", p.name, p.description);
            }
            let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
            finish(EXIT_PASS, human, Some(to_json(&names)), common)
        }
        Some(name) => match preset(name) {
            Ok(m) => {
                let text = m.to_json();
                finish(EXIT_PASS, text.clone(), Some(text), common)
            }
            Err(e) => CommandOutput::invalid(e),
        },
    }
}

/// Parses a homogeneous transverse form such as `"e1^e2 - 1/2 e3∧e4"` or
/// `"3"`.
pub fn parse_form(n: usize, text: &str) -> Result<Multivector, String> {
    let frame = Frame::transverse(n);
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty form".into());
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !current.is_empty() {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);

    let mut total: Option<Multivector> = None;
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let split = body.find('e').unwrap_or(body.len());
        let coeff_text = body[..split].trim_end_matches('*');
        let coeff = if coeff_text.is_empty() {
            Rational::from_integer(sign.into())
        } else {
            parse_rational(coeff_text)? * Rational::from_integer(sign.into())
        };
        let mut piece = Multivector::one(frame).scale(&coeff);
        let monomial = &body[split..];
        if !monomial.is_empty() {
            for factor in monomial.split(['^', '∧']) {
                let index: usize = factor
                    .strip_prefix('e')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| format!("`{factor}` is not of the form e<i>"))?;
                if !(1..=2 * n).contains(&index) {
                    return Err(format!("e{index} is outside e1..e{}", 2 * n));
                }
                piece = wedge(&piece, &Multivector::e(frame, index)).map_err(|e| e.to_string())?;
            }
        }
        total = Some(match total {
            None => piece,
            Some(t) => t
                .add(&piece)
                .map_err(|_| "the form must be homogeneous".to_string())?,
        });
    }
    Ok(total.expect("at least one term"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeComponent {
    pub power: usize,
    pub degree: usize,
    pub primitive: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeResult {
    pub n: usize,
    pub form: String,
    pub components: Vec<DecomposeComponent>,
    pub reconstructs: bool,
    pub components_primitive: bool,
}

pub fn cmd_decompose(n: usize, form: &str, common: &Common) -> CommandOutput {
    if n > 8 {
        return CommandOutput::invalid("decompose supports n <= 8");
    }
    let a = match parse_form(n, form) {
        Ok(a) => a,
        Err(e) => return CommandOutput::invalid(format!("--form: {e}")),
    };
    let parts = primitive_decompose(&a);
    let mut sum = Multivector::zero(a.frame(), a.degree());
    let mut all_primitive = true;
    for (i, beta) in &parts {
        sum = sum
            .add(&l_power(beta, *i))
            .expect("components have matching degrees");
        all_primitive &= lambda_op(beta).is_zero();
    }
    let reconstructs = sum == a;
    let mut human = format!("{a}\n  =");
    if parts.is_empty() {
        human.push_str(" 0");
    }
    for (k, (i, beta)) in parts.iter().enumerate() {
        let sep = if k == 0 { " " } else { "\n  + " };
        let _ = write!(human, "{sep}L^{i} [{beta}]");
    }
    let _ = writeln!(
        human,
        "\nreconstruction {}, components {}primitive",
        if reconstructs { "exact" } else { "FAILED" },
        if all_primitive { "" } else { "NOT " }
    );
    let ok = reconstructs && all_primitive;
    let json = to_json(&DecomposeResult {
        n,
        form: a.to_string(),
        components: parts
            .iter()
            .map(|(i, beta)| DecomposeComponent {
                power: *i,
                degree: beta.degree(),
                primitive: beta.to_string(),
            })
            .collect(),
        reconstructs,
        components_primitive: all_primitive,
    });
    finish(
        if ok { EXIT_PASS } else { EXIT_FAIL },
        human,
        Some(json),
        common,
    )
}
