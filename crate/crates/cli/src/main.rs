use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncderham::calculus::{parse_selection, Calculus};
use ncderham::exterior::{TowerOptions, DEFAULT_DEGREE_CAP, DEFAULT_TERM_BUDGET};
use ncderham::graph::ManifoldGraph;
use ncderham::group::FiniteGroup;
use ncderham::knots::{self, BraidWord, Chirality};
use ncderham::report::{self, Report, RunOptions, Status};
use ncderham::Error;

#[derive(Parser)]
#[command(name = "ncderham", version, about = "Differential calculi on finite groups: cohomology, Hodge theory, knot values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, Betti numbers, KN values and invariant checks for one calculus.
    Report(ReportArgs),
    /// The group-manifold graph in Graphviz format.
    Graph(Selection),
    /// Runs every invariant check, by default on all star-closed calculi of the group.
    Check(CheckArgs),
    /// Knot values from the braiding and the metric.
    Knot(KnotArgs),
    /// Lists the calculi of a group.
    Calculi(GroupArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// `builtin:NAME` (S3, D4, Q, Zn, Dn, Sn, products like Z2xZ4) or a JSON table file.
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Selection {
    #[command(flatten)]
    group: GroupArgs,
    /// Comma-separated classes, named by an element label or a roman numeral.
    #[arg(long)]
    classes: String,
    /// Reject selections that are not closed under inverses instead of completing them.
    #[arg(long)]
    strict_star: bool,
}

#[derive(Args)]
struct TowerArgs {
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Largest number of tensor terms spent on one degree of the exterior algebra.
    #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
    term_budget: u64,
    /// Include wall-clock time in the output.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    sel: Selection,
    #[command(flatten)]
    tower: TowerArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// A group as for `report`, or `all` for every builtin group of order at most 8.
    #[arg(long)]
    group: String,
    /// Restrict to one calculus.
    #[arg(long)]
    classes: Option<String>,
    #[arg(long)]
    strict_star: bool,
    #[command(flatten)]
    tower: TowerArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KnotArgs {
    #[command(flatten)]
    sel: Selection,
    /// A braid word such as `1,1,-2`; its closure is evaluated as well.
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Number of strands of the braid (default: one more than the largest generator).
    #[arg(long)]
    strands: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// Failure of a command: input problems exit with 2, failed invariants with 1.
enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedTable(_)
            | Error::NoIdentity
            | Error::NoInverse(_)
            | Error::NotAssociative(..)
            | Error::UnknownName(_)
            | Error::ParameterOutOfRange(_)
            | Error::NotAUnionOfClasses(_)
            | Error::NotStarClosed(_)
            | Error::GeneratorNotInCalculus(_)
            | Error::MalformedWord(_) => Failure::Input(e.to_string()),
            other => Failure::Invariant(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Report(a) => cmd_report(a),
        Command::Graph(a) => cmd_graph(a),
        Command::Check(a) => cmd_check(a),
        Command::Knot(a) => cmd_knot(a),
        Command::Calculi(a) => cmd_calculi(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_group(spec: &str) -> Result<(String, FiniteGroup), Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok((name.to_string(), FiniteGroup::builtin(name)?));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::Input(format!("cannot read {spec}: {e}")))?;
    let name = std::path::Path::new(spec).file_stem().map_or(spec.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((name, FiniteGroup::from_json(&text)?))
}

/// The selected calculus; without `strict`, a selection not closed under
/// inverses is completed with a warning.
fn select(group: FiniteGroup, classes: &str, strict: bool, complete: bool) -> Result<Calculus, Failure> {
    let sel = parse_selection(&group, classes)?;
    let c = Calculus::new(group, &sel)?;
    if c.is_star_closed() {
        return Ok(c);
    }
    if strict {
        c.require_star_closed()?;
    }
    if !complete {
        eprintln!("warning: {} is not closed under inverses", c.describe());
        return Ok(c);
    }
    let done = c.star_completion();
    eprintln!("warning: {} is not closed under inverses, using {}", c.describe(), done.describe());
    Ok(done)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_options(t: &TowerArgs) -> RunOptions {
    RunOptions { tower: TowerOptions { degree_cap: t.degree_cap, term_budget: t.term_budget }, timing: t.timing }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Table => report.to_table(),
    }
}

fn cmd_report(a: ReportArgs) -> Result<(), Failure> {
    let (name, group) = load_group(&a.sel.group.group)?;
    let c = select(group, &a.sel.classes, a.sel.strict_star, true)?;
    let report = report::analyze(&name, &c, &run_options(&a.tower))?;
    emit(&render(&report, a.sel.group.format), &a.sel.group.out)?;
    match report.failures().as_slice() {
        [] => Ok(()),
        failed => Err(Failure::Invariant(format!("failed checks: {}", failed.join(", ")))),
    }
}

fn cmd_graph(a: Selection) -> Result<(), Failure> {
    let (_, group) = load_group(&a.group.group)?;
    let c = select(group, &a.classes, a.strict_star, false)?;
    emit(&ManifoldGraph::new(&c).to_dot(), &a.group.out)
}

fn cmd_check(a: CheckArgs) -> Result<(), Failure> {
    let groups: Vec<(String, FiniteGroup)> = if a.group == "all" {
        FiniteGroup::small_builtins()
            .into_iter()
            .map(|n| Ok((n.to_string(), FiniteGroup::builtin(n)?)))
            .collect::<Result<_, Error>>()?
    } else {
        vec![load_group(&a.group)?]
    };
    let opts = run_options(&a.tower);
    let mut reports = Vec::new();
    for (name, group) in groups {
        let calculi = match &a.classes {
            Some(cls) => vec![select(group, cls, a.strict_star, true)?],
            None => Calculus::enumerate(&group).into_iter().filter(Calculus::is_star_closed).collect(),
        };
        for c in calculi {
            reports.push(report::analyze(&name, &c, &opts)?);
        }
    }
    let text = match a.format {
        Format::Json => {
            let values: Vec<serde_json::Value> = reports.iter().map(|r| serde_json::from_str(&r.to_json()).expect("valid json")).collect();
            serde_json::to_string_pretty(&values).expect("serializes") + "\n"
        }
        Format::Table => check_matrix(&reports),
    };
    emit(&text, &a.out)?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} {{{}}}: {}", r.group.name, r.calculus.generators.join(","), r.failures().join(", ")))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("failed checks in {}", failed.join("; "))))
    }
}

/// One row per calculus, one column per check: `.` pass, `F` fail, `-` skipped, `i` reported.
fn check_matrix(reports: &[Report]) -> String {
    let mut names: Vec<&str> = reports.iter().flat_map(|r| r.checks.keys().map(String::as_str)).collect();
    names.sort_unstable();
    names.dedup();
    let mut s = String::from("checks:\n");
    for (i, n) in names.iter().enumerate() {
        s.push_str(&format!("  {:>2} {n}\n", i + 1));
    }
    let labels: Vec<String> = reports.iter().map(|r| format!("{} {{{}}}", r.group.name, r.calculus.generators.join(","))).collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut header = " ".repeat(width + 2);
    for i in 0..names.len() {
        header.push_str(&format!("{:>3}", i + 1));
    }
    s.push_str(&header);
    s.push('\n');
    for (r, label) in reports.iter().zip(&labels) {
        let pad = width - label.chars().count();
        s.push_str(&format!("{label}{}  ", " ".repeat(pad)));
        for n in &names {
            let mark = match r.checks.get(*n).map(|c| c.status) {
                Some(Status::Pass) => '.',
                Some(Status::Fail) => 'F',
                Some(Status::Reported) => 'i',
                Some(Status::Skipped) | None => '-',
            };
            s.push_str(&format!("{mark:>3}"));
        }
        s.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    s.push_str(&format!("{} calculi, {} with failures\n", reports.len(), failed));
    s
}

fn cmd_knot(a: KnotArgs) -> Result<(), Failure> {
    let (_, group) = load_group(&a.sel.group.group)?;
    let c = select(group, &a.sel.classes, a.sel.strict_star, true)?;
    let unknot = knots::kn_unknot(&c)?;
    let right = knots::kn_trefoil(&c, Chirality::Right)?;
    let left = knots::kn_trefoil(&c, Chirality::Left)?;
    let braid = match &a.braid {
        Some(text) => {
            let w = BraidWord::parse(text, a.strands)?;
            Some((w.to_string(), w.strands, knots::evaluate_braid(&c, &w)?))
        }
        None => None,
    };
    let r = knots::reidemeister_check(&c)?;
    let text = match a.sel.group.format {
        Format::Json => {
            let mut v = serde_json::json!({
                "calculus": c.describe(),
                "unknot": unknot,
                "trefoil_right": right,
                "trefoil_left": left,
                "reidemeister": {
                    "move1": r.move1,
                    "move2": r.move2,
                    "yang_baxter": r.yang_baxter,
                    "metric_braiding": r.metric_braiding,
                },
            });
            if let Some((w, s, val)) = &braid {
                v["braid"] = serde_json::json!({"word": w, "strands": s, "value": val});
            }
            serde_json::to_string_pretty(&v).expect("serializes") + "\n"
        }
        Format::Table => {
            let mut s = format!("calculus {}\nunknot {unknot}\ntrefoil {right} (left {left})\n", c.describe());
            if let Some((w, strands, val)) = &braid {
                s.push_str(&format!("braid [{w}] on {strands} strands: {val}\n"));
            }
            s.push_str(&format!("reidemeister {}\n", if r.ok() { "pass" } else { "FAIL" }));
            s
        }
    };
    emit(&text, &a.sel.group.out)?;
    if r.ok() {
        Ok(())
    } else {
        Err(Failure::Invariant("Reidemeister identities fail".into()))
    }
}

fn cmd_calculi(a: GroupArgs) -> Result<(), Failure> {
    let (name, group) = load_group(&a.group)?;
    let bound = 2 * group.ad_group_size();
    let rows: Vec<serde_json::Value> = Calculus::enumerate(&group)
        .iter()
        .map(|c| {
            let reps: Vec<&str> = c.classes().iter().map(|&k| group.label(group.classes()[k][0])).collect();
            serde_json::json!({
                "classes": c.class_names(),
                "representatives": reps,
                "generators": c.describe(),
                "m": c.m(),
                "star_closed": c.is_star_closed(),
                "braiding_order": c.braiding().order(),
            })
        })
        .collect();
    let text = match a.format {
        Format::Json => {
            let v = serde_json::json!({"group": name, "order": group.order(), "ad_size": group.ad_group_size(), "calculi": rows});
            serde_json::to_string_pretty(&v).expect("serializes") + "\n"
        }
        Format::Table => {
            let mut s = format!("group {name} (order {}, |ad| = {}, 2|ad| = {bound})\n", group.order(), group.ad_group_size());
            s.push_str("  classes        m  s  star  generators\n");
            for r in &rows {
                let cls: Vec<String> = r["representatives"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
                s.push_str(&format!(
                    "  {:<13} {:>2} {:>2}  {:<4}  {}\n",
                    cls.join(","),
                    r["m"].as_u64().unwrap(),
                    r["braiding_order"].as_u64().unwrap(),
                    if r["star_closed"].as_bool().unwrap() { "yes" } else { "no" },
                    r["generators"].as_str().unwrap()
                ));
            }
            s
        }
    };
    emit(&text, &a.out)
}
