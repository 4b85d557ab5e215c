//! Command dispatch. Exit codes: 0 pass, 1 predicate or diff failure,
//! 2 usage or model error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use super::document::{parse_dga, DocumentError, Expectation};
use super::expected::{cell_name, diff, parse_expected, DiffOutcome};
use crate::cohomology::{check_theorem_hypotheses, CohomologyTable, Theory};
use crate::linalg::GaussianRational;
use crate::models::{
    build_from_spec, builtin, builtin_names, deformation_scan, family_names, Closure,
    GeneratorListSpec, Model, ModelError, Property,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Document { path: String, source: DocumentError },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Parser, Debug)]
#[command(
    name = "solvcohom",
    version,
    about = "Exact cohomology of double complexes of solvmanifolds and their deformations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Pretty,
    Machine,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Built-in model name, or a path to a .dga file.
    pub model_or_file: Option<String>,
    /// Built-in model name.
    #[arg(long, conflicts_with_all = ["file", "model_or_file"])]
    pub model: Option<String>,
    /// DGA description file.
    #[arg(long, conflicts_with = "model_or_file")]
    pub file: Option<PathBuf>,
    /// Deformation parameter, e.g. `1/2` or `1/3+1/5i`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, value_enum, default_value = "pretty")]
    pub output: OutputMode,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute cohomology tables.
    Compute {
        #[command(flatten)]
        model: ModelArgs,
        /// dolbeault, del, bott-chern, aeppli, de-rham, frolicher,
        /// frolicher-page-R, or all.
        #[arg(long, value_delimiter = ',', default_value = "dolbeault")]
        theory: Vec<String>,
        /// Compare against an expected-dimension file.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Evaluate predicates; exit 0 iff all hold.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        /// ddbar-lemma, e1-degeneration (or e1), hypotheses.
        #[arg(long, value_delimiter = ',', required = true)]
        predicate: Vec<String>,
    },
    /// Scan a deformation family over several parameter values.
    Scan {
        family: String,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        t: Vec<String>,
        /// dolbeault, e1 (e1-degeneration), ddbar-lemma, or all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        report: Vec<String>,
        #[arg(long, value_enum, default_value = "pretty")]
        output: OutputMode,
    },
    /// Compare computed dimensions with an expected-dimension file.
    Diff {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Parse and build a model, checking d² = 0.
    Validate {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// List built-in models and scan families.
    List,
}

fn parse_t(s: &str) -> Result<GaussianRational, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("--t: {e}")))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A model source with the expectations written in it.
struct Loaded {
    spec: GeneratorListSpec,
    expectations: Vec<Expectation>,
}

fn load(args: &ModelArgs) -> Result<Loaded, CliError> {
    let t = args.t.as_deref().map(parse_t).transpose()?;
    let (name, file) = match (&args.model_or_file, &args.model, &args.file) {
        (_, _, Some(f)) => (None, Some(f.clone())),
        (_, Some(m), _) => (Some(m.clone()), None),
        (Some(x), _, _) if x.ends_with(".dga") || Path::new(x).is_file() => {
            (None, Some(PathBuf::from(x)))
        }
        (Some(x), _, _) => (Some(x.clone()), None),
        _ => return Err(CliError::Usage("give a model name or --file".into())),
    };
    if let Some(name) = name {
        return Ok(Loaded {
            spec: builtin(&name, t.as_ref())?,
            expectations: Vec::new(),
        });
    }
    let path = file.expect("one of the two");
    let doc_err = |source| CliError::Document {
        path: path.display().to_string(),
        source,
    };
    let doc = parse_dga(&read(&path)?).map_err(|e| doc_err(e.into()))?;
    let overrides: BTreeMap<String, GaussianRational> =
        t.into_iter().map(|v| ("t".to_string(), v)).collect();
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".into());
    let spec = doc.to_spec(&stem, &overrides).map_err(doc_err)?;
    Ok(Loaded {
        spec,
        expectations: doc.expectations,
    })
}

/// A requested theory list, resolved against the model dimension.
fn resolve_theories(names: &[String], n: usize) -> Result<Vec<Theory>, CliError> {
    let mut out = Vec::new();
    for name in names {
        match name.as_str() {
            "all" => out.extend(Theory::ALL),
            "frolicher" => out.extend((1..=n + 1).map(Theory::Frolicher)),
            other => out.push(
                other
                    .parse()
                    .map_err(|e: String| CliError::Usage(format!("--theory: {e}")))?,
            ),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn title(model: &Model) -> String {
    let mut s = model.name().to_string();
    for (k, v) in &model.spec.params {
        let _ = write!(s, " ({k} = {v})");
    }
    if model.closure == Closure::DelbarOnly {
        s.push_str(" [closed under delbar only]");
    }
    s
}

/// One line per cell, sorted by theory name, then degree.
pub fn machine_lines(tables: &[CohomologyTable]) -> Vec<String> {
    let mut sorted: Vec<&CohomologyTable> = tables.iter().collect();
    sorted.sort_by_key(|t| t.theory.to_string());
    sorted
        .iter()
        .flat_map(|t| {
            t.dims
                .iter()
                .map(|(&d, n)| format!("{} = {n}", cell_name(t.theory, d)))
        })
        .collect()
}

/// Bidegree rows, grouped by total degree with `h^{k,0}` first; one column
/// per theory, and `b_k` on the first row of degree `k`.
pub fn pretty_table(n: usize, tables: &[CohomologyTable]) -> String {
    let bigraded: Vec<&CohomologyTable> = tables
        .iter()
        .filter(|t| t.theory != Theory::DeRham)
        .collect();
    let betti = tables.iter().find(|t| t.theory == Theory::DeRham);
    let mut header = vec!["(p,q)".to_string()];
    header.extend(bigraded.iter().map(|t| t.theory.to_string()));
    if betti.is_some() {
        header.push("de-rham".to_string());
    }
    let mut rows = vec![header];
    for k in 0..=2 * n {
        let ps: Vec<usize> = (0..=k).rev().filter(|&p| p <= n && k - p <= n).collect();
        for (i, &p) in ps.iter().enumerate() {
            let mut row = vec![format!("({p},{})", k - p)];
            row.extend(bigraded.iter().map(|t| t.get(p, k - p).to_string()));
            if let Some(b) = betti {
                row.push(if i == 0 {
                    b.betti(k).to_string()
                } else {
                    String::new()
                });
            }
            rows.push(row);
        }
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (s, &w))| {
                if c == 0 {
                    format!("{s:<w$}")
                } else {
                    format!("{s:>w$}")
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn report_diff(out: &mut dyn Write, outcome: &DiffOutcome) -> std::io::Result<()> {
    for m in &outcome.mismatches {
        writeln!(out, "{m}")?;
    }
    if outcome.passed() {
        writeln!(out, "diff: {} cells match", outcome.compared)
    } else {
        writeln!(
            out,
            "diff: {} of {} cells differ",
            outcome.mismatches.len(),
            outcome.compared
        )
    }
}

fn compare(model: &Model, expectations: &[Expectation]) -> Result<DiffOutcome, CliError> {
    let mut tables = BTreeMap::new();
    for e in expectations {
        if let std::collections::btree_map::Entry::Vacant(slot) = tables.entry(e.theory) {
            slot.insert(model.table(e.theory)?);
        }
    }
    Ok(diff(expectations, &tables))
}

fn expected_sections(path: &Path) -> Result<Vec<super::expected::ExpectedSection>, CliError> {
    parse_expected(&read(path)?).map_err(|e| CliError::Document {
        path: path.display().to_string(),
        source: e.into(),
    })
}

/// Diffs every section; the leading section applies to `primary`.
fn diff_file(
    path: &Path,
    primary: Option<&Model>,
    t: Option<&GaussianRational>,
) -> Result<DiffOutcome, CliError> {
    let mut total = DiffOutcome::default();
    for section in expected_sections(path)? {
        let outcome = match &section.model {
            None => {
                let model = primary.ok_or_else(|| {
                    CliError::Usage(format!(
                        "{}: expectations without a `model` line need a model argument",
                        path.display()
                    ))
                })?;
                compare(model, &section.expectations)?
            }
            Some(name) => {
                let t = section.t.as_ref().or(t);
                let model = build_from_spec(builtin(name, t)?)?;
                compare(&model, &section.expectations)?
            }
        };
        total.merge(outcome);
    }
    Ok(total)
}

fn has_model(args: &ModelArgs) -> bool {
    args.model_or_file.is_some() || args.model.is_some() || args.file.is_some()
}

fn compute(
    out: &mut dyn Write,
    args: &ModelArgs,
    theory: &[String],
    expected: Option<&Path>,
) -> Result<i32, CliError> {
    let loaded = load(args)?;
    let model = build_from_spec(loaded.spec)?;
    let n = model.complex().n();
    let theories = resolve_theories(theory, n)?;
    let explicit = !theory.iter().any(|t| t == "all");
    let mut tables = Vec::new();
    let mut notes = Vec::new();
    for th in theories {
        match model.table(th) {
            Ok(t) => tables.push(t),
            Err(e @ ModelError::Unavailable { .. }) if !explicit => notes.push(e.to_string()),
            Err(e) => return Err(e.into()),
        }
    }
    let w = |e: std::io::Error| CliError::Io {
        path: "<stdout>".into(),
        source: e,
    };
    match args.output {
        OutputMode::Machine => {
            writeln!(out, "# {}", title(&model)).map_err(w)?;
            for note in &notes {
                writeln!(out, "# {note}").map_err(w)?;
            }
            for line in machine_lines(&tables) {
                writeln!(out, "{line}").map_err(w)?;
            }
        }
        OutputMode::Pretty => {
            writeln!(out, "{}", title(&model)).map_err(w)?;
            let (pages, rest): (Vec<CohomologyTable>, Vec<CohomologyTable>) = tables
                .iter()
                .cloned()
                .partition(|t| matches!(t.theory, Theory::Frolicher(_)));
            if !rest.is_empty() {
                write!(out, "{}", pretty_table(n, &rest)).map_err(w)?;
            }
            if !pages.is_empty() {
                write!(out, "{}", pretty_table(n, &pages)).map_err(w)?;
            }
            for note in &notes {
                writeln!(out, "note: {note}").map_err(w)?;
            }
        }
    }
    let mut outcome = None;
    if !loaded.expectations.is_empty() {
        outcome = Some(compare(&model, &loaded.expectations)?);
    }
    if let Some(path) = expected {
        let t = args.t.as_deref().map(parse_t).transpose()?;
        let o = diff_file(path, Some(&model), t.as_ref())?;
        outcome.get_or_insert_with(DiffOutcome::default).merge(o);
    }
    match outcome {
        Some(o) => {
            report_diff(out, &o).map_err(w)?;
            Ok(if o.passed() { 0 } else { 1 })
        }
        None => Ok(0),
    }
}

fn check(out: &mut dyn Write, args: &ModelArgs, predicates: &[String]) -> Result<i32, CliError> {
    let loaded = load(args)?;
    let mut model: Option<Model> = None;
    let mut all = true;
    let mut lines = Vec::new();
    for p in predicates {
        let verdict = match p.as_str() {
            "hypotheses" => {
                let spec = &loaded.spec;
                let metric = spec.metric_indices()?.ok_or_else(|| {
                    CliError::Usage(format!("model `{}` declares no metric frame", spec.name))
                })?;
                let report = check_theorem_hypotheses(&spec.span, &metric);
                lines.extend(report.to_string().lines().map(String::from));
                lines.push(format!(
                    "bott-chern setting: {}",
                    if report.bott_chern_setting() { "pass" } else { "fail" }
                ));
                report.dolbeault_setting()
            }
            "ddbar-lemma" | "e1-degeneration" | "e1" => {
                if model.is_none() {
                    model = Some(build_from_spec(loaded.spec.clone())?);
                }
                let m = model.as_ref().expect("built above");
                if p == "ddbar-lemma" {
                    m.deldelbar_lemma()?
                } else {
                    m.e1_degeneration()?
                }
            }
            other => {
                return Err(CliError::Usage(format!(
                    "--predicate: unknown predicate `{other}` (ddbar-lemma, e1-degeneration, hypotheses)"
                )))
            }
        };
        let name = if p == "e1" {
            "e1-degeneration"
        } else {
            p.as_str()
        };
        lines.push(match args.output {
            OutputMode::Machine => format!("{name} = {verdict}"),
            OutputMode::Pretty => format!("{name}: {verdict}"),
        });
        all &= verdict;
    }
    for l in lines {
        writeln!(out, "{l}").map_err(|e| CliError::Io {
            path: "<stdout>".into(),
            source: e,
        })?;
    }
    Ok(if all { 0 } else { 1 })
}

fn scan(
    out: &mut dyn Write,
    family: &str,
    ts: &[String],
    report: &[String],
    output: OutputMode,
) -> Result<i32, CliError> {
    let ts: Vec<GaussianRational> = ts.iter().map(|s| parse_t(s)).collect::<Result<_, _>>()?;
    let mut props = Vec::new();
    for r in report {
        match r.as_str() {
            "all" => props.extend(Property::ALL),
            "dolbeault" => props.push(Property::Dolbeault),
            "e1" | "e1-degeneration" => props.push(Property::E1Degeneration),
            "ddbar-lemma" => props.push(Property::DeldelbarLemma),
            other => {
                return Err(CliError::Usage(format!(
                    "--report: unknown property `{other}` (dolbeault, e1, ddbar-lemma, all)"
                )))
            }
        }
    }
    props.sort();
    props.dedup();
    let rep = deformation_scan(family, &ts, &props)?;
    let text = match output {
        OutputMode::Pretty => rep.to_string(),
        OutputMode::Machine => {
            let mut s = String::new();
            for row in &rep.rows {
                if let Some(h) = &row.dolbeault {
                    for (d, n) in &h.dims {
                        let _ = writeln!(s, "t[{}] {} = {n}", row.t, cell_name(h.theory, *d));
                    }
                }
                for (name, v) in [
                    ("e1-degeneration", row.e1_degeneration),
                    ("ddbar-lemma", row.deldelbar_lemma),
                ] {
                    if let Some(v) = v {
                        let _ = writeln!(s, "t[{}] {name} = {v}", row.t);
                    }
                }
                for e in &row.errors {
                    let _ = writeln!(s, "# t = {}: {e}", row.t);
                }
            }
            for line in &rep.summary {
                let _ = writeln!(s, "summary = {line}");
            }
            s
        }
    };
    write!(out, "{text}").map_err(|e| CliError::Io {
        path: "<stdout>".into(),
        source: e,
    })?;
    Ok(0)
}

fn run_command(out: &mut dyn Write, cli: Cli) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: "<stdout>".into(),
        source: e,
    };
    match cli.command {
        Command::Compute {
            model,
            theory,
            expected,
        } => compute(out, &model, &theory, expected.as_deref()),
        Command::Check { model, predicate } => check(out, &model, &predicate),
        Command::Scan {
            family,
            t,
            report,
            output,
        } => scan(out, &family, &t, &report, output),
        Command::Diff { model, expected } => {
            let t = model.t.as_deref().map(parse_t).transpose()?;
            let mut outcome = DiffOutcome::default();
            let built = if has_model(&model) {
                let loaded = load(&model)?;
                let m = build_from_spec(loaded.spec)?;
                outcome.merge(compare(&m, &loaded.expectations)?);
                Some(m)
            } else {
                None
            };
            match &expected {
                Some(path) => outcome.merge(diff_file(path, built.as_ref(), t.as_ref())?),
                None if outcome.compared == 0 => {
                    return Err(CliError::Usage(
                        "nothing to compare: give --expected or a .dga file with expect lines"
                            .into(),
                    ))
                }
                None => {}
            }
            report_diff(out, &outcome).map_err(io)?;
            Ok(if outcome.passed() { 0 } else { 1 })
        }
        Command::Validate { model } => {
            let loaded = load(&model)?;
            let m = build_from_spec(loaded.spec)?;
            let c = m.complex();
            let closure = match m.closure {
                Closure::Double => "a double complex",
                Closure::DelbarOnly => "closed under delbar only",
            };
            writeln!(
                out,
                "ok: {}: n = {}, total dimension {}, {closure}",
                m.name(),
                c.n(),
                c.total_dim()
            )
            .map_err(io)?;
            Ok(0)
        }
        Command::List => {
            writeln!(out, "models: {}", builtin_names().join(", ")).map_err(io)?;
            writeln!(out, "scan families: {}", family_names().join(", ")).map_err(io)?;
            Ok(0)
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run_command(out, cli) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
