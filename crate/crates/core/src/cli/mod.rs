//! The `fpa` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::equiv::{
    check_generator_map, compare_hilbert, dimension_check, tietze_simplify, EquivVerdict, EquivalenceReport,
    GeneratorMap,
};
use crate::error::{Error, Result};
use crate::freealg::{MonomialOrder, Polynomial};
use crate::grading::even_part_presentation;
use crate::ncgb::{complete_truncated, hilbert_profile, ideal_member, HilbertVector, RewriteSystem, Verdict};
use crate::peirce::{
    peirce_component_presentation, peirce_component_presentation_unchecked, stored_witnesses, IdempotentSpec,
    PeirceOutcome,
};
use crate::presio::{
    expand_schemas, format_polynomial, parse_polynomial, parse_presentation, print_canonical, Presentation,
};

#[derive(Debug, Parser)]
#[command(
    name = "fpa",
    version,
    about = "Finite presentations of associative algebras over Q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Truncation degree
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_deg: u64,
    /// Simplify output presentations
    #[arg(long)]
    pub simplify: bool,
    /// Generator precedence, smallest first (e.g. "y,x")
    #[arg(long)]
    pub precedence: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Ignore relation schemas instead of expanding them to --max-deg
    #[arg(long)]
    pub no_schemas: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate and print in canonical form
    Parse {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Truncated rewriting system of the relations
    Gb {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Normal-word counts per degree
    Hilbert {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Ideal membership of an element
    Member {
        input: PathBuf,
        #[arg(long)]
        element: String,
        #[command(flatten)]
        common: Common,
    },
    /// Presentation of the even subalgebra on pair generators
    EvenPart {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Presentation of the corner eAe
    Peirce {
        input: PathBuf,
        /// Proceed even if the witnesses do not verify
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compare dims(second)[d] with dims(first)[ratio*d]
    VerifyEquiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        ratio: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Check that a generator map sends relations into the target ideal
    CheckMap {
        source: PathBuf,
        target: PathBuf,
        /// e.g. "a=x*y, b=y^2, c=y*x"
        #[arg(long)]
        map: String,
        #[command(flatten)]
        common: Common,
    },
    /// Tietze simplification
    Simplify {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Parse { common, .. }
            | Command::Gb { common, .. }
            | Command::Hilbert { common, .. }
            | Command::Member { common, .. }
            | Command::EvenPart { common, .. }
            | Command::Peirce { common, .. }
            | Command::VerifyEquiv { common, .. }
            | Command::CheckMap { common, .. }
            | Command::Simplify { common, .. } => common,
        }
    }
}

/// A rendered run: text and JSON forms plus the exit code.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Exit code for a failed run.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::DegreeExceedsTruncation { .. }
        | Error::DegreeOutOfRange(_)
        | Error::WitnessesNotVerified(_) => 3,
        _ => 2,
    }
}

fn load(path: &Path) -> Result<Presentation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    parse_presentation(&text)
}

fn prepare(p: &Presentation, max_deg: usize, no_schemas: bool) -> Presentation {
    if no_schemas {
        let mut q = p.clone();
        q.set_relations(p.relations().to_vec()).expect("same generators");
        strip_schemas(q)
    } else {
        expand_schemas(p, max_deg)
    }
}

fn strip_schemas(p: Presentation) -> Presentation {
    let mut out = p.plain();
    if let Some(e) = p.idempotent() {
        out.set_idempotent(Some(e)).expect("declared");
        for side in [crate::presio::Side::E, crate::presio::Side::F] {
            out.set_witness(p.witness(side).cloned(), side)
                .expect("validated");
        }
    }
    out
}

fn order_for(p: &Presentation, precedence: Option<&str>) -> Result<MonomialOrder> {
    let Some(spec) = precedence else {
        return Ok(p.default_order());
    };
    let letters = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|n| {
            p.generator_index(n)
                .ok_or_else(|| Error::UndeclaredGenerator(n.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    MonomialOrder::with_precedence(&letters)
}

fn dec(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

fn hilbert_json(h: &HilbertVector) -> Value {
    json!({
        "dims": h.dims.iter().map(dec).collect::<Vec<_>>(),
        "exact": h.exact,
    })
}

fn hilbert_text(h: &HilbertVector) -> String {
    let dims: Vec<String> = h.dims.iter().map(u128::to_string).collect();
    format!(
        "[{}]{}",
        dims.join(", "),
        if h.exact { "" } else { " (upper bounds)" }
    )
}

fn system(p: &Presentation, ord: &MonomialOrder, max_deg: usize) -> Result<RewriteSystem> {
    complete_truncated(&p.relation_polys(), ord, max_deg)
}

/// Profile of a presentation's own relations up to `d`, completing at
/// least as far as its largest relation.
fn profile_of(p: &Presentation, d: usize) -> Result<HilbertVector> {
    let rs = system(p, &p.default_order(), d.max(p.max_relation_degree()))?;
    hilbert_profile(&rs, d)
}

fn run_parse(p: &Presentation) -> Report {
    let text = print_canonical(p);
    Report {
        json: json!({ "presentation": text }),
        text,
        code: 0,
    }
}

fn run_gb(p: &Presentation, ord: &MonomialOrder, max_deg: usize) -> Result<Report> {
    let rs = system(p, ord, max_deg)?;
    let names = p.generators();
    let rules: Vec<(String, String)> = rs
        .rules()
        .iter()
        .map(|r| {
            (
                format_polynomial(&Polynomial::word(r.lhs.clone()), names, ord),
                format_polynomial(&r.rhs, names, ord),
            )
        })
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "degree bound: {max_deg}");
    let _ = writeln!(text, "complete: {}", rs.is_complete());
    let _ = writeln!(text, "homogeneous: {}", rs.is_homogeneous());
    let _ = writeln!(text, "saturated: {}", rs.is_saturated());
    let _ = writeln!(text, "degenerate: {}", rs.is_degenerate());
    let _ = writeln!(text, "rules: {}", rules.len());
    for (l, r) in &rules {
        let _ = writeln!(text, "  {l} -> {r}");
    }
    Ok(Report {
        json: json!({
            "rules": rules.iter().map(|(l, r)| json!({"lhs": l, "rhs": r})).collect::<Vec<_>>(),
            "degree_bound": dec(max_deg),
            "complete": rs.is_complete(),
            "homogeneous": rs.is_homogeneous(),
            "saturated": rs.is_saturated(),
            "degenerate": rs.is_degenerate(),
        }),
        text,
        code: if rs.is_complete() { 0 } else { 3 },
    })
}

fn run_hilbert(p: &Presentation, ord: &MonomialOrder, max_deg: usize) -> Result<Report> {
    let rs = system(p, ord, max_deg)?;
    let h = hilbert_profile(&rs, max_deg)?;
    let mut text = String::from("degree dim\n");
    for (d, n) in h.dims.iter().enumerate() {
        let _ = writeln!(text, "{d:>6} {n}");
    }
    let _ = writeln!(text, "exact: {}", h.exact);
    let mut json = hilbert_json(&h);
    json["degree_bound"] = dec(max_deg);
    json["complete"] = Value::Bool(rs.is_complete());
    Ok(Report {
        text,
        json,
        code: if h.exact { 0 } else { 3 },
    })
}

fn run_member(p: &Presentation, ord: &MonomialOrder, max_deg: usize, element: &str) -> Result<Report> {
    let q = parse_polynomial(p, element)?;
    let rs = system(p, ord, max_deg)?;
    let verdict = ideal_member(&q, &rs)?;
    let nf = format_polynomial(&rs.reduce(&q), p.generators(), ord);
    let elem = format_polynomial(&q, p.generators(), ord);
    let text = format!(
        "element: {elem}\nnormal form: {nf}\nverdict: {verdict}\ndegree bound: {max_deg}\ncomplete: {}\n",
        rs.is_complete()
    );
    let code = match verdict {
        Verdict::Member => 0,
        Verdict::NonMemberUpToDegree => 1,
        Verdict::Unknown => 3,
    };
    Ok(Report {
        json: json!({
            "element": elem,
            "normal_form": nf,
            "verdict": verdict.to_string(),
            "degree_bound": dec(max_deg),
            "complete": rs.is_complete(),
        }),
        text,
        code,
    })
}

fn run_even_part(p: &Presentation, max_deg: usize, simplify: bool) -> Result<Report> {
    let y = even_part_presentation(p, max_deg, simplify)?;
    let half = max_deg / 2;
    let check = compare_hilbert(&p.plain(), &y, half, 2)?;
    let h = profile_of(&y, half)?;
    let mut text = format!(
        "# even part: {} pair generators, {} relations\n# dimension check up to degree {half}: {}\n",
        y.num_generators(),
        y.relations().len(),
        check.verdict
    );
    text.push_str(&print_canonical(&y));
    let code = match check.verdict {
        EquivVerdict::Mismatch { .. } => 1,
        _ => 0,
    };
    Ok(Report {
        json: json!({
            "presentation": print_canonical(&y),
            "hilbert": hilbert_json(&h),
            "verdict": check.verdict.to_string(),
            "degree_bound": dec(max_deg),
            "complete": check.exact,
        }),
        text,
        code,
    })
}

fn peirce_report(out: &PeirceOutcome, max_deg: usize) -> Result<Report> {
    let y = &out.presentation;
    let ord = y.default_order();
    let h = profile_of(y, 4.min(max_deg))?;
    let e_y = format_polynomial(&out.e_y, y.generators(), &ord);
    let f_y = format_polynomial(&out.f_y, y.generators(), &ord);
    let unit = out
        .unit_check
        .map_or("not checked".to_string(), |v| v.to_string());
    let mut text = format!(
        "# witnesses: {}\n# Ω generators: {}\n# e_Y = {e_y}\n# f_Y = {f_y}\n# e_Y - 1: {unit}\n# hilbert: {}\n",
        out.witnesses,
        out.omega.num_generators(),
        hilbert_text(&h)
    );
    for w in &out.warnings {
        let _ = writeln!(text, "# note: {w}");
    }
    text.push_str(&print_canonical(y));
    let code = match out.unit_check {
        Some(Verdict::Member) | None => 0,
        _ => 3,
    };
    Ok(Report {
        json: json!({
            "presentation": print_canonical(y),
            "hilbert": hilbert_json(&h),
            "verdict": out.witnesses.to_string(),
            "degree_bound": dec(max_deg),
            "complete": h.exact,
            "e_y": e_y,
            "f_y": f_y,
            "unit_check": unit,
            "warnings": out.warnings,
        }),
        text,
        code,
    })
}

fn run_peirce(p: &Presentation, max_deg: usize, simplify: bool, force: bool) -> Result<Report> {
    let spec = IdempotentSpec::of(p)?;
    let (we, wf) = stored_witnesses(p)?;
    let out = if force {
        peirce_component_presentation_unchecked(p, spec, &we, &wf, max_deg, simplify)?
    } else {
        peirce_component_presentation(p, spec, &we, &wf, max_deg, simplify)?
    };
    peirce_report(&out, max_deg)
}

fn equiv_report(r: &EquivalenceReport) -> Report {
    let mut text = String::new();
    if !r.rows.is_empty() {
        let _ = writeln!(text, "degree first(ratio*d) second(d)");
        for row in &r.rows {
            let _ = writeln!(text, "{:>6} {:>15} {:>9}", row.degree, row.first, row.second);
        }
    }
    for m in &r.memberships {
        let _ = writeln!(text, "{} -> {}: {}", m.relation, m.image, m.verdict);
    }
    let _ = writeln!(text, "ratio: {}", r.ratio);
    let _ = writeln!(text, "degree bound: {}", r.degree_bound);
    let _ = writeln!(text, "exact: {}", r.exact);
    let _ = writeln!(text, "verdict: {}", r.verdict);
    Report {
        json: json!({
            "rows": r.rows.iter().map(|row| json!({
                "degree": dec(row.degree),
                "first": dec(row.first),
                "second": dec(row.second),
            })).collect::<Vec<_>>(),
            "memberships": r.memberships.iter().map(|m| json!({
                "relation": m.relation,
                "image": m.image,
                "verdict": m.verdict.to_string(),
            })).collect::<Vec<_>>(),
            "verdict": r.verdict.to_string(),
            "degree_bound": dec(r.degree_bound),
            "ratio": dec(r.ratio),
            "complete": r.exact,
        }),
        text,
        code: r.verdict.exit_code(),
    }
}

fn run_simplify(p: &Presentation, max_deg: usize) -> Result<Report> {
    let s = tietze_simplify(&p.plain(), max_deg)?;
    let after = profile_of(&s, max_deg.min(6))?;
    let check = dimension_check(p, &s, max_deg.min(6))?;
    let mut text = format!(
        "# {} -> {} generators, {} -> {} relations\n# dimension check up to degree {}: {check}\n",
        p.num_generators(),
        s.num_generators(),
        p.relations().len(),
        s.relations().len(),
        max_deg.min(6)
    );
    text.push_str(&print_canonical(&s));
    Ok(Report {
        json: json!({
            "presentation": print_canonical(&s),
            "hilbert": hilbert_json(&after),
            "verdict": check.to_string(),
            "degree_bound": dec(max_deg),
            "complete": after.exact,
        }),
        text,
        code: 0,
    })
}

/// Runs a parsed command.
pub fn dispatch(cmd: &Command) -> Result<Report> {
    let c = cmd.common();
    let max_deg = c.max_deg as usize;
    let load_prepared =
        |path: &Path, deg: usize| -> Result<Presentation> { Ok(prepare(&load(path)?, deg, c.no_schemas)) };
    match cmd {
        Command::Parse { input, .. } => Ok(run_parse(&load(input)?)),
        Command::Gb { input, .. } => {
            let p = load_prepared(input, max_deg)?;
            run_gb(&p, &order_for(&p, c.precedence.as_deref())?, max_deg)
        }
        Command::Hilbert { input, .. } => {
            let p = load_prepared(input, max_deg)?;
            run_hilbert(&p, &order_for(&p, c.precedence.as_deref())?, max_deg)
        }
        Command::Member { input, element, .. } => {
            let p = load_prepared(input, max_deg)?;
            run_member(&p, &order_for(&p, c.precedence.as_deref())?, max_deg, element)
        }
        Command::EvenPart { input, .. } => {
            run_even_part(&load_prepared(input, max_deg)?, max_deg, c.simplify)
        }
        Command::Peirce { input, force, .. } => {
            run_peirce(&load_prepared(input, max_deg)?, max_deg, c.simplify, *force)
        }
        Command::VerifyEquiv {
            first, second, ratio, ..
        } => {
            let ratio = *ratio as usize;
            let p1 = load_prepared(first, ratio * max_deg)?;
            let p2 = load_prepared(second, max_deg)?;
            Ok(equiv_report(&compare_hilbert(&p1, &p2, max_deg, ratio)?))
        }
        Command::CheckMap {
            source, target, map, ..
        } => {
            let src = load_prepared(source, max_deg)?;
            let dst = load_prepared(target, max_deg)?;
            let gm = GeneratorMap::parse(&src, &dst, map)?;
            Ok(equiv_report(&check_generator_map(&src, &dst, &gm, max_deg)?))
        }
        Command::Simplify { input, .. } => run_simplify(&load_prepared(input, max_deg)?, max_deg),
    }
}

/// Entry point: parses `args`, runs, writes the report, returns the exit
/// code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let common = cli.command.common().clone();
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let out = report.render(common.format);
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, out) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{out}"),
    }
    report.code
}
