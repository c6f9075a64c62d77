//! Command-line front end: targets, the `report` pipeline and algebra files.

mod catalog;
mod file;
mod pipeline;
mod report;

pub use catalog::{build_model, CodiffChoice, Member, ModelInfo, Target, MODELS};
pub use file::{AlgebraFile, BasisEntry, BracketEntry, CodiffFile, IntLit, ParsedAlgebra, TermEntry};
pub use pipeline::{run_pipeline, PipelineOptions};
pub use report::{emit, rational_list, Check, Format, Report, Section, Status, Table};

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "filtered-lie", version, about = "Exact checks for filtered Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification pipeline and print a report.
    Report(ReportArgs),
    /// Write a catalog model as an algebra file.
    Export(ExportArgs),
    /// List the catalog models and their parameters.
    Models,
}

#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    /// `ode`, `model:NAME`, a bare model name, or `file:PATH`.
    pub target: Option<String>,
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Model parameter `key=value`; may be repeated.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// `kostant`, `subriem`, `ode`, `file:PATH` or `none`; defaults per model.
    #[arg(long)]
    pub codiff: Option<String>,
    /// Largest prolongation degree to compute.
    #[arg(long)]
    pub prolong_cap: Option<usize>,
    #[arg(long)]
    pub no_prolong: bool,
    /// Homogeneity range `a..b` shown in the tables.
    #[arg(long)]
    pub degrees: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Which member of a multi-algebra model to write.
    #[arg(long, default_value_t = 0)]
    pub member: usize,
    /// Also write the normalization condition and negligible submodule of
    /// the model's default codifferential.
    #[arg(long)]
    pub with_condition: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn input_error(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_params(args: &TargetArgs) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for p in &args.params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| input_error("param", format!("'{p}' is not key=value")))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    for (k, v) in [("k", args.k), ("m", args.m), ("n", args.n)] {
        if let Some(v) = v {
            out.push((k.to_string(), v.to_string()));
        }
    }
    Ok(out)
}

/// Resolves the target flags to a list of algebras.
pub fn resolve_target(args: &TargetArgs) -> Result<Target> {
    let given = match (&args.target, &args.model, &args.file) {
        (Some(t), None, None) => t.clone(),
        (None, Some(m), None) => format!("model:{m}"),
        (None, None, Some(p)) => format!("file:{}", p.display()),
        (None, None, None) => return Err(input_error("target", "no target given")),
        _ => return Err(input_error("target", "give exactly one of TARGET, --model, --file")),
    };
    let params = parse_params(args)?;
    if let Some(path) = given.strip_prefix("file:") {
        if !params.is_empty() {
            return Err(input_error("param", "file targets take no parameters"));
        }
        return file_target(Path::new(path));
    }
    let name = given.strip_prefix("model:").unwrap_or(&given);
    build_model(name, &params)
}

fn file_target(path: &Path) -> Result<Target> {
    let parsed = AlgebraFile::read(path)?.parse_unchecked()?;
    Ok(Target {
        name: format!("file:{}", path.display()),
        params: Vec::new(),
        members: vec![Member {
            n: parsed.n,
            ntilde: parsed.ntilde,
            ..Member::plain(parsed.name, parsed.alg)
        }],
        default_codiff: CodiffChoice::None,
        compare_graded: false,
    })
}

pub fn parse_codiff(s: &str) -> Result<CodiffChoice> {
    if let Some(path) = s.strip_prefix("file:") {
        let c = CodiffFile::read(Path::new(path))?.to_codifferential()?;
        return Ok(CodiffChoice::Given(Box::new(c)));
    }
    match s {
        "kostant" => Ok(CodiffChoice::Kostant),
        "subriem" => Ok(CodiffChoice::Subriem),
        "ode" => Ok(CodiffChoice::Ode),
        "none" => Ok(CodiffChoice::None),
        _ => Err(input_error("codiff", format!("unknown codifferential '{s}'"))),
    }
}

pub fn parse_degrees(s: &str) -> Result<(i32, i32)> {
    let bad = || input_error("degrees", format!("'{s}' is not a range a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i32 = a.trim().parse().map_err(|_| bad())?;
    let b: i32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Builds the report for `report` arguments.
pub fn report(args: &ReportArgs) -> Result<Report> {
    let target = resolve_target(&args.target)?;
    let opts = PipelineOptions {
        codiff: args.codiff.as_deref().map(parse_codiff).transpose()?,
        prolong: !args.no_prolong,
        prolong_cap: args.prolong_cap,
        degrees: args.degrees.as_deref().map(parse_degrees).transpose()?,
        seed: args.seed,
    };
    Ok(run_pipeline(&target, &opts))
}

fn export(args: &ExportArgs) -> Result<String> {
    let target = resolve_target(&args.target)?;
    let member = target
        .members
        .get(args.member)
        .ok_or_else(|| input_error("member", format!("target has {} members", target.members.len())))?;
    let mut file = AlgebraFile::from_algebra(&member.name, &member.alg);
    if args.with_condition {
        let pair = crate::normcond::FilteredPair::new(member.alg.clone())?;
        let c = match (&target.default_codiff, &member.inner) {
            (CodiffChoice::Kostant, _) => crate::normcond::kostant_codifferential(&pair)?,
            (_, Some((ip, kind))) => crate::normcond::adjoint_codifferential(&pair, ip, *kind)?,
            _ => return Err(Error::Precondition("model has no default codifferential".into())),
        };
        let (n, nt) = crate::normcond::condition_from_codifferential(&pair, &c)?;
        file = file.with_subspaces(Some(&n), Some(&nt));
    }
    Ok(file.to_json())
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn list_models() -> String {
    let mut s = String::new();
    for m in MODELS {
        let params: Vec<String> = m.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        s.push_str(&format!("{:<16} {:<22} {}\n", m.name, params.join(" "), m.summary));
    }
    s
}

/// Runs a parsed command line and returns the process exit code:
/// 0 when every executed check passes, 1 on a failing check, 2 on bad input.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Report(args) => report(args).and_then(|r| {
            write_out(args.out.as_deref(), &emit(&r, args.format))?;
            Ok(r.exit_code())
        }),
        Command::Export(args) => export(args).and_then(|s| write_out(args.out.as_deref(), &s).map(|_| 0)),
        Command::Models => write_out(None, &list_models()).map(|_| 0),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(line: &str) -> ReportArgs {
        let cli = Cli::try_parse_from(line.split_whitespace()).unwrap();
        match cli.command {
            Command::Report(a) => a,
            _ => panic!("not a report"),
        }
    }

    #[test]
    fn target_forms_resolve_to_the_same_model() {
        let a = resolve_target(&args("x report ode --k 2 --m 1").target).unwrap();
        let b = resolve_target(&args("x report model:ode --param k=2").target).unwrap();
        let c = resolve_target(&args("x report --model ode --param k=2 --param m=1").target).unwrap();
        assert_eq!(a.members[0].alg, b.members[0].alg);
        assert_eq!(b.members[0].alg, c.members[0].alg);
        assert!(resolve_target(&args("x report").target).is_err());
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("1..4").unwrap(), (1, 4));
        assert_eq!(parse_degrees("-1..0").unwrap(), (-1, 0));
        assert!(parse_degrees("4..1").is_err());
        assert!(parse_degrees("3").is_err());
    }

    #[test]
    fn json_reports_are_deterministic() {
        let a = args("x report model:heisenberg --format json --seed 7");
        let r1 = emit(&report(&a).unwrap(), Format::Json);
        let r2 = emit(&report(&a).unwrap(), Format::Json);
        assert_eq!(r1, r2);
        assert!(report(&a).unwrap().passed(), "{r1}");
    }

    #[test]
    fn mutation_report_compares_gradeds() {
        let r = report(&args("x report model:mutation_triple --n 2")).unwrap();
        let s = r.section("graded_comparison").unwrap();
        assert_eq!(s.status_of("gr_equal"), Status::Pass);
        assert_eq!(r.sections.len(), 4);
        assert!(r.passed(), "{}", emit(&r, Format::Text));
    }

    #[test]
    fn broken_file_fails_jacobi_and_skips_the_rest() {
        let dir = std::env::temp_dir().join(format!("filtered-lie-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let g = crate::models::parabolic_grading(crate::models::SimpleType::Sl(2), &[1]).unwrap();
        let mut file = AlgebraFile::from_algebra("bad", &crate::liealg::FilteredLieAlgebra::from_graded(&g));
        let entry = file.brackets.iter_mut().find(|b| b.terms[0].num == IntLit::Small(-2)).unwrap();
        entry.terms[0].num = IntLit::Small(-3);
        let path = dir.join("bad.json");
        std::fs::write(&path, file.to_json()).unwrap();
        let r = report(&args(&format!("x report file:{}", path.display()))).unwrap();
        let s = &r.sections[0];
        assert_eq!(s.status_of("jacobi"), Status::Fail);
        assert!(s.checks.iter().skip(1).all(|c| c.status == Status::Skip));
        assert_eq!(r.exit_code(), 1);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
