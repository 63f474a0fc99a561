//! Command-line front end: argument parsing, input resolution, dispatch to
//! the library checks, and deterministic text or JSON reports.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dsl::{parse_operad, parse_theory, render_theory};
use crate::error::{Error, Result};
use crate::finset::FinFunction;
use crate::lawvere::{
    all_factorizations, check_category_laws, check_psi, classify_morphism, factorize,
    indecomposability_of_one, rigidity_check_lawvere, simple_automorphisms_check, span_equal,
    theory_from_operad, triangle_identities, LawvereTheory, SpanMorphism, SpanTheory, TermTheory,
};
use crate::monads::{
    check_kappa, check_monad_laws, check_phi, eval_analytic, eval_coend, eval_polynomial,
    AnalyticCoefficients,
};
use crate::operads::{
    check_operad_laws, default_node_budget, free_symmetric_operad, make_sym, operad_from_theory,
    terminal_operad, SymmetricOperadData,
};
use crate::terms::Signature;
use crate::theories::{
    builtin_theory, refute_rigidity, ProverStrategy, RigidityBudget, SearchBudget, TheoryPresentation,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "antheory", version, about = "Equational theories, Lawvere theories, operads and analytic monads")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Truncation arity N.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub max_arity: u64,

    /// Size K of the test set X = {a, b, …}.
    #[arg(long, global = true, default_value_t = 2)]
    pub set_size: usize,

    /// Node budget for term enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: Option<u64>,

    /// Step budget for bounded proof search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_steps: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Regularity classes of a presentation.
    Classify { theory: String },
    /// Search for a provable t = τ·t with τ ≠ id.
    RefuteRigidity { theory: String },
    /// The operad of linear-regular term classes.
    ToOperad { theory: String },
    /// A presentation whose Lawvere theory is the span theory of an operad.
    ToLawvere {
        #[arg(long, default_value = "sym")]
        operad: String,
    },
    /// Enumerate hom(n, m) of a theory, or of the span theory with --operad.
    Hom {
        /// Theory name or file, or an operad with --operad.
        source: String,
        n: usize,
        m: usize,
        /// Read the source as an operad and use its span theory.
        #[arg(long)]
        operad: bool,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Structural-analytic factorization of a span, or of every span up to --max-object.
    Factorize {
        #[arg(long, default_value = "sym")]
        operad: String,
        /// Values of φ : (r] → (n], comma separated.
        #[arg(long)]
        phi: Option<String>,
        /// Values of f : (r] → (m], comma separated.
        #[arg(long)]
        fun: Option<String>,
        #[arg(long)]
        source: Option<usize>,
        #[arg(long)]
        target: Option<usize>,
        /// Operation names, one per element of (m], comma separated.
        #[arg(long)]
        ops: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_object: usize,
    },
    /// Sizes of M(X), analytic for operads and a coend for theories.
    EvalMonad {
        /// Theory name or file, or an operad with --operad.
        source: String,
        /// Read the source as an operad; the monad is analytic.
        #[arg(long)]
        operad: bool,
        /// Also check the unit and associativity laws.
        #[arg(long)]
        laws: bool,
        /// Σ Xⁿ × O_n without the quotient.
        #[arg(long)]
        polynomial: bool,
        /// Hom bound for the coend of a theory (default 2N-1).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// κ : analytic monad → coend monad of the span theory.
    KappaCheck {
        #[arg(long, default_value = "sym")]
        operad: String,
    },
    /// Lawvere-theory checks on a theory, or on the span theory with --operad.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        /// Theory name or file, or an operad with --operad.
        source: String,
        /// Read the source as an operad and use its span theory.
        #[arg(long)]
        operad: bool,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "sym")]
        operad: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Analytic,
    Rigid,
    SimpleAut,
    Indecomposable,
    Category,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    OperadLaws,
    Adjunction,
    Factorization,
    MonadLaws,
    Phi,
    Psi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    /// Informational output, one entry per line.
    pub output: Vec<String>,
    pub checks: Vec<CheckLine>,
}

impl Report {
    fn new(command: String) -> Self {
        Report {
            command,
            ..Default::default()
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.output.push(s.into());
    }

    fn check(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>, witnesses: Vec<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            status,
            detail: detail.into(),
            witnesses,
        });
    }

    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&ReportJson { report: self, result: self.status() })
                    .expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("command: {}\n", self.command);
                for l in &self.output {
                    let _ = writeln!(s, "{l}");
                }
                for c in &self.checks {
                    let _ = writeln!(s, "check {}: {} ({})", c.name, c.status.label(), c.detail);
                    for w in &c.witnesses {
                        let _ = writeln!(s, "  witness: {w}");
                    }
                }
                let _ = writeln!(s, "result: {}", self.status().label());
                s
            }
        }
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    #[serde(flatten)]
    report: &'a Report,
    result: Status,
}

/// Reads a theory from a built-in name or a file.
pub fn load_theory(source: &str) -> Result<TheoryPresentation> {
    if let Some(t) = builtin_theory(source) {
        return Ok(t);
    }
    parse_theory(&read_source(source)?)
}

/// Reads an operad from `sym`, `terminal`, `free` (on one binary operation)
/// or a file, truncated at `max_arity`.
pub fn load_operad(source: &str, max_arity: usize) -> Result<SymmetricOperadData> {
    match source {
        "sym" => Ok(make_sym(max_arity)),
        "terminal" => Ok(terminal_operad(max_arity)),
        "free" => free_symmetric_operad(&Signature::from_pairs([("m", 2)])?, max_arity),
        _ => parse_operad(&read_source(source)?),
    }
}

fn read_source(path: &str) -> Result<String> {
    if !Path::new(path).is_file() {
        return Err(Error::Validation(format!("`{path}` is neither a built-in name nor a readable file")));
    }
    std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read `{path}`: {e}")))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn apply_budget(theory: TheoryPresentation, cli: &Cli) -> Result<TheoryPresentation> {
    match (&theory.prover, cli.budget_steps) {
        (ProverStrategy::BoundedSearch(b), Some(steps)) => theory.with_prover(ProverStrategy::BoundedSearch(SearchBudget {
            max_steps: steps as usize,
            ..*b
        })),
        _ => Ok(theory),
    }
}

fn echo(args: &[String]) -> String {
    args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ")
}

/// Parses `args` (program name first), runs the command and returns the
/// rendered report with its exit code.
pub fn main_with(args: &[String]) -> (String, i32) {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return (e.to_string(), code);
        }
    };
    match run(&cli, echo(args)) {
        Ok(report) => (report.render(cli.format), report.exit_code()),
        Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
    }
}

pub fn run(cli: &Cli, command: String) -> Result<Report> {
    let n_max = cli.max_arity as usize;
    let mut report = Report::new(command);
    match &cli.command {
        Command::Classify { theory } => classify(&load_theory(theory)?, &mut report),
        Command::RefuteRigidity { theory } => {
            let theory = apply_budget(load_theory(theory)?, cli)?;
            refute(&theory, cli, &mut report)?;
        }
        Command::ToOperad { theory } => {
            let theory = apply_budget(load_theory(theory)?, cli)?;
            let nodes = cli.budget_nodes.map_or_else(|| default_node_budget(&theory, n_max), |b| b as usize);
            let operad = operad_from_theory(&theory, n_max, nodes)?;
            describe_operad(&operad, &mut report)?;
        }
        Command::ToLawvere { operad } => {
            let operad = load_operad(operad, n_max)?;
            let theory = theory_from_operad(Arc::new(operad))?;
            for l in render_theory(&theory).lines() {
                report.line(l);
            }
        }
        Command::Hom { source, n, m, operad, bound } => {
            if *operad {
                hom_lines(&SpanTheory::new(Arc::new(load_operad(source, n_max)?)), *n, *m, *bound, &mut report)?
            } else {
                let theory = apply_budget(load_theory(source)?, cli)?;
                hom_lines(&TermTheory::new(theory), *n, *m, *bound, &mut report)?
            }
        }
        Command::Factorize { operad, phi, fun, source, target, ops, max_object } => {
            let theory = SpanTheory::new(Arc::new(load_operad(operad, n_max)?));
            match (phi, fun, source, target) {
                (Some(phi), Some(fun), Some(n), Some(m)) => {
                    let span = parse_span(&theory, phi, fun, *n, *m, ops.as_deref().unwrap_or(""))?;
                    factorize_one(&theory, &span, &mut report)?;
                }
                (None, None, None, None) => factorization_suite(&theory, *max_object, n_max, &mut report)?,
                _ => return Err(Error::Validation("a span needs --phi, --fun, --source and --target".into())),
            }
        }
        Command::EvalMonad { source, operad, laws, polynomial, bound } => {
            if *operad {
                let operad = Arc::new(load_operad(source, n_max)?);
                eval_operad_monad(&operad, cli.set_size, n_max, *laws, *polynomial, &mut report)?;
            } else {
                let theory = apply_budget(load_theory(source)?, cli)?;
                let bound = bound.unwrap_or(2 * n_max - 1);
                let th = TermTheory::new(theory);
                let value = eval_coend(&th, cli.set_size, n_max, bound)?;
                report.line(format!("coend of {} on |X| = {}, N = {n_max}, bound {bound}", th.name(), cli.set_size));
                report.line(format!("size: {}", value.size()));
                let status = if value.authoritative { Status::Pass } else { Status::Inconclusive };
                report.check(
                    "coend",
                    status,
                    format!("{} relation instances left the fragment", value.uncovered),
                    Vec::new(),
                );
            }
        }
        Command::KappaCheck { operad } => {
            let operad = Arc::new(load_operad(operad, n_max)?);
            let r = check_kappa(&operad, cli.set_size, n_max)?;
            for (k, a, c) in &r.sizes {
                report.line(format!("|X| = {k}: analytic {a}, coend {c}"));
            }
            report.check(
                format!("kappa[{}]", r.operad),
                Status::of(r.passed()),
                format!(
                    "{} representatives, {} units, {} products, {} naturality instances",
                    r.members_checked, r.unit_checked, r.multiplication_checked, r.naturality_checked
                ),
                r.failures,
            );
        }
        Command::Check { kind, source, operad, bound } => {
            if *operad {
                let th = SpanTheory::new(Arc::new(load_operad(source, n_max)?));
                lawvere_check(&th, *kind, n_max, *bound, &mut report)?
            } else {
                let th = TermTheory::new(apply_budget(load_theory(source)?, cli)?);
                lawvere_check(&th, *kind, n_max, *bound, &mut report)?
            }
        }
        Command::Verify { suite, operad } => verify(*suite, operad, cli, &mut report)?,
    }
    Ok(report)
}

fn classify(theory: &TheoryPresentation, report: &mut Report) {
    report.line(format!("theory: {}", theory.name));
    report.line(format!("regular: {}", yes_no(theory.is_regular_presentation())));
    report.line(format!("linear-regular: {}", yes_no(theory.is_linear_regular_presentation())));
    report.line(format!("strongly regular: {}", yes_no(theory.is_strongly_regular_presentation())));
    report.line(format!("prover: {}", theory.prover.describe()));
}

fn refute(theory: &TheoryPresentation, cli: &Cli, report: &mut Report) -> Result<()> {
    let budget = RigidityBudget {
        max_nodes: cli.budget_nodes.map_or(3, |b| b as usize),
        max_context: cli.max_arity as usize,
    };
    let r = refute_rigidity(theory, budget)?;
    if let Some(w) = &r.warning {
        report.line(format!("warning: {w}"));
    }
    let name = format!("rigidity[{}]", theory.name);
    let coverage = format!(
        "{} candidates, {} undecided, nodes ≤ {}, context ≤ {}",
        r.candidates_checked, r.unknown, budget.max_nodes, budget.max_context
    );
    match &r.witness {
        Some(w) => report.check(
            name,
            Status::Fail,
            format!("not rigid; {coverage}"),
            vec![format!("{} = {} with τ = {}", w.term, w.permuted, w.tau)],
        ),
        None => report.check(name, Status::Inconclusive, format!("no witness within budget; {coverage}"), Vec::new()),
    }
    Ok(())
}

fn describe_operad(operad: &SymmetricOperadData, report: &mut Report) -> Result<()> {
    report.line(operad.summary());
    for n in 0..=operad.max_arity() {
        let names: Vec<&str> = operad.operations(n).map(|a| operad.op_name(a)).collect();
        report.line(format!("O_{n} free action: {}; {}", yes_no(operad.is_free_action(n)?), names.join(" ")));
    }
    if !operad.is_authoritative() {
        report.check(
            "operad",
            Status::Inconclusive,
            "built with an incomplete prover or a non-linear-regular presentation",
            Vec::new(),
        );
    }
    Ok(())
}

fn hom_lines<T: LawvereTheory>(th: &T, n: usize, m: usize, bound: usize, report: &mut Report) -> Result<()> {
    let frag = th.hom(n, m, bound)?;
    report.line(format!("hom({n}, {m}) in {} within bound {bound}: {} morphisms", th.name(), frag.morphisms.len()));
    for a in &frag.morphisms {
        let tag = if th.is_analytic(a)? { "analytic" } else { "" };
        report.line(format!("{} {tag}", th.display(a)).trim_end().to_string());
    }
    if !frag.authoritative {
        report.check("hom", Status::Inconclusive, "classes decided by an incomplete prover", Vec::new());
    }
    Ok(())
}

fn parse_values(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| v.parse().map_err(|_| Error::Validation(format!("`{v}` is not a positive integer"))))
        .collect()
}

/// Splits at commas outside brackets, so that `[2,1],[1]` gives two names.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn parse_span(theory: &SpanTheory, phi: &str, fun: &str, n: usize, m: usize, ops: &str) -> Result<SpanMorphism> {
    let operad = theory.operad();
    let ops = split_top_level(ops)
        .into_iter()
        .filter(|o| !o.is_empty())
        .map(|o| operad.find(o).ok_or_else(|| Error::UnknownSymbol(o.to_string())))
        .collect::<Result<Vec<_>>>()?;
    theory.span(FinFunction::new(n, parse_values(phi)?)?, FinFunction::new(m, parse_values(fun)?)?, ops)
}

fn factorize_one(theory: &SpanTheory, s: &SpanMorphism, report: &mut Report) -> Result<()> {
    let (l, r) = factorize(theory, s)?;
    let operad = theory.operad();
    report.line(format!("span: {}", theory.display(s)));
    report.line(format!("structural: {}", theory.display(&l)));
    report.line(format!("analytic: {}", theory.display(&r)));
    let c = classify_morphism(s, operad);
    report.line(format!("span is structural: {}, analytic: {}", yes_no(c.structural), yes_no(c.analytic)));
    let recomposed = theory.compose(&r, &l)?;
    let ok = span_equal(&recomposed, s, operad)?
        && classify_morphism(&l, operad).structural
        && classify_morphism(&r, operad).analytic;
    let others = all_factorizations(theory, s, s.arity())?.len();
    report.check(
        "factorization",
        Status::of(ok),
        format!("{others} factorizations found by search"),
        if ok { Vec::new() } else { vec![theory.display(&recomposed)] },
    );
    Ok(())
}

fn factorization_suite(theory: &SpanTheory, max_object: usize, max_arity: usize, report: &mut Report) -> Result<()> {
    let r = crate::lawvere::check_factorization_system(theory, max_object, max_arity)?;
    report.check(
        format!("factorization[{}]", r.operad),
        Status::of(r.passed()),
        format!(
            "{} spans between objects ≤ {max_object}, arity ≤ {max_arity}; {} factorization pairs; {} squares",
            r.spans, r.uniqueness_checked, r.squares_checked
        ),
        r.failures,
    );
    Ok(())
}

fn eval_operad_monad(
    operad: &Arc<SymmetricOperadData>,
    set_size: usize,
    max_arity: usize,
    laws: bool,
    polynomial: bool,
    report: &mut Report,
) -> Result<()> {
    let value = if polynomial {
        eval_polynomial(operad, set_size, max_arity)?
    } else {
        eval_analytic(operad, set_size, max_arity)?
    };
    let kind = if polynomial { "polynomial" } else { "analytic" };
    report.line(format!("{kind} monad of {} on |X| = {set_size}, N = {max_arity}", operad.name()));
    report.line(format!("size: {}", value.size()));
    report.line(format!("sizes by arity: {}", list(&value.sizes_by_arity())));
    if value.size() <= 40 {
        for c in 0..value.size() {
            report.line(value.display_class(c));
        }
    }
    if laws {
        monad_law_check(&value, report)?;
    }
    Ok(())
}

fn monad_law_check(value: &crate::monads::MonadValue, report: &mut Report) -> Result<()> {
    let r = check_monad_laws(value)?;
    report.check(
        format!("monad-laws[{}, |X|={}]", r.operad, r.set_size),
        Status::of(r.passed()),
        format!(
            "left unit {}, right unit {}, well-defined {}, associativity {}",
            r.left_unit, r.right_unit, r.well_defined, r.associativity
        ),
        r.violations,
    );
    Ok(())
}

fn lawvere_check<T: LawvereTheory>(
    th: &T,
    kind: CheckKind,
    max_arity: usize,
    bound: usize,
    report: &mut Report,
) -> Result<()> {
    match kind {
        CheckKind::Analytic => {
            let mut authoritative = true;
            for n in 0..=max_arity {
                let frag = th.analytic_hom(n, 1, bound)?;
                authoritative &= frag.authoritative;
                report.line(format!("analytic hom({n}, 1): {}", frag.morphisms.len()));
            }
            if !authoritative {
                report.check("analytic", Status::Inconclusive, "classes decided by an incomplete prover", Vec::new());
            }
        }
        CheckKind::Rigid => {
            let mut witnesses = Vec::new();
            for n in 2..=max_arity {
                if let Some((a, sigma)) = rigidity_check_lawvere(th, n, bound)? {
                    witnesses.push(format!("{} ∘ π_{sigma} = itself", th.display(&a)));
                }
            }
            report.check(
                format!("rigid[{}]", th.name()),
                Status::of(witnesses.is_empty()),
                format!("analytic a : n → 1 for n ≤ {max_arity}, bound {bound}"),
                witnesses,
            );
        }
        CheckKind::SimpleAut => {
            for n in 0..=max_arity {
                let r = simple_automorphisms_check(th, n, bound)?;
                report.check(
                    format!("simple-aut[n={n}]"),
                    Status::of(r.holds()),
                    format!(
                        "|Aut(n)| = {}, |Aut(1)| = {}, n!·|Aut(1)|ⁿ = {}, injective {}, surjective {}",
                        r.automorphisms_of_n,
                        r.automorphisms_of_one,
                        r.domain_size,
                        yes_no(r.injective),
                        yes_no(r.surjective)
                    ),
                    Vec::new(),
                );
            }
        }
        CheckKind::Indecomposable => {
            let r = indecomposability_of_one(th, max_arity.max(2), max_arity, bound)?;
            let witnesses = r
                .decomposition
                .iter()
                .map(|d| format!("1 ≅ {} × {} via {} and {}", d.left_object, d.right_object, d.left, d.right))
                .collect();
            report.check(
                "indecomposable",
                Status::of(r.indecomposable),
                format!("{} candidate pairs", r.candidates_checked),
                witnesses,
            );
        }
        CheckKind::Category => {
            let r = check_category_laws(th, max_arity.min(2), bound)?;
            let status = match (r.passed(), r.authoritative) {
                (false, _) => Status::Fail,
                (true, true) => Status::Pass,
                (true, false) => Status::Inconclusive,
            };
            report.check(
                "category-laws",
                status,
                format!("{} instances, {} truncated", r.checked, r.truncated),
                r.violations,
            );
        }
    }
    Ok(())
}

fn verify(suite: Suite, operad_name: &str, cli: &Cli, report: &mut Report) -> Result<()> {
    let n_max = cli.max_arity as usize;
    let operad = Arc::new(load_operad(operad_name, n_max)?);
    report.line(operad.summary());
    match suite {
        Suite::OperadLaws => {
            let r = check_operad_laws(&operad);
            report.check(
                format!("operad-laws[{}]", operad.name()),
                Status::of(r.passed()),
                format!("{} instances, associativity {:?}, {} errors", r.checked, r.associativity, r.errors),
                r.violations.iter().map(|v| format!("{}: {}", v.law, v.witness)).collect(),
            );
        }
        Suite::Adjunction => {
            let r = triangle_identities(Arc::clone(&operad), n_max, n_max.min(2))?;
            let mut witnesses = r.first_failures.clone();
            witnesses.extend(r.second_failures.iter().cloned());
            report.check(
                format!("adjunction[{}]", r.operad),
                Status::of(r.passed()),
                format!(
                    "{} operations, {} spans, unit is an operad morphism: {}",
                    r.first_checked,
                    r.second_checked,
                    yes_no(r.unit_is_operad_morphism)
                ),
                witnesses,
            );
        }
        Suite::Factorization => {
            factorization_suite(&SpanTheory::new(Arc::clone(&operad)), n_max.min(3), n_max, report)?;
        }
        Suite::MonadLaws => {
            for k in 0..=cli.set_size {
                monad_law_check(&eval_analytic(&operad, k, n_max)?, report)?;
            }
        }
        Suite::Phi => {
            let r = check_phi(&AnalyticCoefficients::of_operad(&operad)?, n_max, cli.set_size)?;
            report.check(
                format!("phi[{}]", r.coefficients),
                Status::of(r.passed()),
                format!(
                    "{} generators, {} representative variations, {} evaluations, {} truncated",
                    r.generators_checked, r.representatives_checked, r.evaluations_checked, r.truncated
                ),
                r.failures,
            );
        }
        Suite::Psi => {
            let budget = SearchBudget {
                max_steps: cli.budget_steps.map_or(3, |b| b as usize),
                max_size: 8,
            };
            let nodes = cli.budget_nodes.map_or(3, |b| b as usize);
            let r = check_psi(Arc::clone(&operad), n_max.min(2), nodes, budget)?;
            let status = if !r.passed() {
                Status::Fail
            } else if r.inconclusive > 0 {
                Status::Inconclusive
            } else {
                Status::Pass
            };
            let mut witnesses = r.axiom_failures.clone();
            for f in [&r.round_trip_failures, &r.representative_failures, &r.fullness_failures, &r.functoriality_failures] {
                witnesses.extend(f.iter().cloned());
            }
            report.check(
                format!("psi[{}]", r.operad),
                status,
                format!(
                    "{} axioms, {} round trips, {} representatives, {} fullness, {} functoriality, {} undecided",
                    r.axioms, r.round_trips, r.representatives, r.fullness, r.functoriality, r.inconclusive
                ),
                witnesses,
            );
        }
    }
    Ok(())
}
