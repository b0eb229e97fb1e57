//! `gcf`: evaluate, verify and search general continued fractions.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gcf_core::bignum::rational::{format_rational_short, parse_rational};
use gcf_core::bignum::BigFloat;
use gcf_core::cf::{
    agreement_digits, estimate_limit, euler_value_with, eval_finite, instantiate, parse_polyseq, pq_convergents,
    scale_equivalence, to_euler_form, CFSpec, CfError, LimitEstimate,
};
use gcf_core::families::{Family, Family1Params, Family2Params, Family3Params, FamilyError};
use gcf_core::report::family_report;
use gcf_core::scanner::{constant_value, scan, scan_resume, ScanConfig, ScanError};
use gcf_core::Rational;
use serde_json::json;

const EXIT_EVAL: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "gcf", version, about = "General continued fractions [a(n) : b(n)]")]
struct Cli {
    /// Significant digits for numerical work.
    #[arg(long, short = 'p', global = true, default_value_t = 50)]
    precision: u32,
    /// Most convergents examined when estimating a limit.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_terms: usize,
    #[arg(long, short = 'f', global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Partial denominators a(n), e.g. "4*n-2".
    #[arg(long, short = 'a', allow_hyphen_values = true)]
    a: Option<String>,
    /// Partial numerators b(n), e.g. "-n*(2*n-1)".
    #[arg(long, short = 'b', allow_hyphen_values = true)]
    b: Option<String>,
    /// Spec as JSON, {"a": [...], "b": [...]}.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    spec: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact value of a finite fraction, or the limit of a spec.
    Eval {
        /// Simple fraction partial denominators, e.g. "1x10" or "1,2,2x3".
        #[arg(long, conflicts_with_all = ["pairs", "a", "b", "spec"])]
        simple: Option<String>,
        /// Explicit pairs "a1:b1,a2:b2,..."; the last b is unused.
        #[arg(long, conflicts_with_all = ["a", "b", "spec"])]
        pairs: Option<String>,
        #[command(flatten)]
        spec: SpecArgs,
        /// Depth of the convergent; without it the limit is estimated.
        #[arg(short = 'K', long = "depth")]
        depth: Option<usize>,
    },
    /// Table of exact convergents p(m)/q(m).
    Convergents {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'K', long = "depth", default_value_t = 10)]
        depth: usize,
    },
    /// Closed form of a family member, cross-checked against its convergents.
    Family(FamilyArgs),
    /// Checks a spec's limit against a claimed value.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Decimal value to compare with.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["constant", "mobius"])]
        value: Option<String>,
        /// Constant name for a Möbius form: e, pi, zeta3, sqrt2, phi.
        #[arg(long, requires = "mobius")]
        constant: Option<String>,
        /// "p1,p2,p3,p4" for (p1 + p2 C)/(p3 + p4 C).
        #[arg(long, allow_hyphen_values = true, requires = "constant")]
        mobius: Option<String>,
    },
    /// Searches small specs for limits matching known constants.
    Scan {
        /// JSON scan configuration; flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        coeff_bound: Option<i64>,
        #[arg(long)]
        moebius_bound: Option<i64>,
        /// Comma-separated constant names; empty for none.
        #[arg(long)]
        constants: Option<String>,
        /// JSONL output file.
        #[arg(long, short = 'o')]
        out: PathBuf,
        /// Continue after the candidate recorded in the resume marker.
        #[arg(long)]
        resume: bool,
    },
    /// Equivalence transformation or Euler series form of a spec.
    Transform {
        #[command(flatten)]
        spec: SpecArgs,
        /// Scaling sequence c(n) with c(0) = 1.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "euler")]
        scale: Option<String>,
        /// Rewrite [r(n-1) + 1 : -r(n)] as r(0) + 1/Σ Π r(j).
        #[arg(long)]
        euler: bool,
    },
    /// Markdown verification report for a family member.
    Report {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file; standard output when absent.
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// 1: [n + k : a n], 2: [a n^2 + b n + 1 : -a n^2 - b n], 3: [(n-1)^k + n^k : -n^(2k)].
    id: u8,
    #[arg(long = "a", allow_hyphen_values = true)]
    fa: Option<String>,
    #[arg(long = "b", allow_hyphen_values = true)]
    fb: Option<String>,
    #[arg(long = "k", allow_hyphen_values = true)]
    k: Option<i64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Eval(String),
    Verify(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Eval(_) => EXIT_EVAL,
            CliError::Verify(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Eval(m) | CliError::Verify(m) => m,
        }
    }
}

impl From<CfError> for CliError {
    fn from(e: CfError) -> Self {
        match e {
            CfError::Parse(_) | CfError::DegreeTooHigh { .. } | CfError::Json(_) | CfError::Precision(_) => {
                CliError::Usage(e.to_string())
            }
            CfError::InvalidScale(_) | CfError::ZeroDenominatorPoly => CliError::Usage(e.to_string()),
            _ => CliError::Eval(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::InvalidParams(_) => CliError::Usage(e.to_string()),
            FamilyError::CrossCheckFailed(_) => CliError::Verify(e.to_string()),
            FamilyError::Cf(c) => c.into(),
            _ => CliError::Eval(e.to_string()),
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Config(_) => CliError::Usage(e.to_string()),
            ScanError::Cf(c) => c.into(),
            ScanError::Io { .. } => CliError::Eval(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn rational_arg(s: &str) -> Result<Rational> {
    parse_rational(s.trim()).map_err(|e| usage(format!("{s:?}: {e}")))
}

fn spec_from(args: &SpecArgs) -> Result<CFSpec> {
    if let Some(j) = &args.spec {
        return Ok(CFSpec::from_json_str(j)?);
    }
    match (&args.a, &args.b) {
        (Some(a), Some(b)) => Ok(CFSpec::new(parse_polyseq(a)?, parse_polyseq(b)?)),
        _ => Err(usage("give both --a and --b, or --spec")),
    }
}

/// `"1x10"`, `"1,2,2x3"`: terms, each optionally repeated.
fn parse_simple(s: &str) -> Result<Vec<(Rational, Rational)>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let (v, n) = match item.split_once('x') {
            Some((v, n)) => (
                v,
                n.trim()
                    .parse::<usize>()
                    .map_err(|_| usage(format!("bad repeat count in {item:?}")))?,
            ),
            None => (item, 1),
        };
        let v = rational_arg(v)?;
        out.extend(std::iter::repeat_n((v, Rational::from_integer(1.into())), n));
    }
    Ok(out)
}

fn parse_pairs(s: &str) -> Result<Vec<(Rational, Rational)>> {
    s.split(',')
        .map(|item| {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| usage(format!("expected a:b, got {item:?}")))?;
            Ok((rational_arg(a)?, rational_arg(b)?))
        })
        .collect()
}

fn decimal(r: &Rational, precision: u32) -> String {
    BigFloat::from_rational(r, precision + 5).to_decimal_string(precision)
}

fn csv_rows(rows: &[(&str, String)]) -> String {
    let head: Vec<&str> = rows.iter().map(|r| r.0).collect();
    let vals: Vec<String> = rows.iter().map(|r| csv_field(&r.1)).collect();
    format!("{}\n{}\n", head.join(","), vals.join(","))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render(format: Format, rows: Vec<(&str, String)>, json: serde_json::Value, plain: String) -> String {
    match format {
        Format::Plain => plain,
        Format::Json => serde_json::to_string_pretty(&json).expect("json") + "\n",
        Format::Csv => csv_rows(&rows),
    }
}

fn limit_rows(est: &LimitEstimate) -> Vec<(&'static str, String)> {
    vec![
        ("value", est.value.to_decimal_string(est.achieved_digits.max(1))),
        ("achieved_digits", est.achieved_digits.to_string()),
        ("convergence", est.convergence_class.to_string()),
        ("terms_used", est.terms_used.to_string()),
    ]
}

fn limit_json(est: &LimitEstimate) -> serde_json::Value {
    json!({
        "value": est.value.to_decimal_string(est.achieved_digits.max(1)),
        "achieved_digits": est.achieved_digits,
        "convergence": est.convergence_class,
        "terms_used": est.terms_used,
    })
}

fn run_eval(
    cli: &Cli,
    simple: &Option<String>,
    pairs: &Option<String>,
    sa: &SpecArgs,
    depth: Option<usize>,
) -> Result<String> {
    let pairs = match (simple, pairs) {
        (Some(s), _) => Some(parse_simple(s)?),
        (_, Some(p)) => Some(parse_pairs(p)?),
        _ => None,
    };
    let pairs = match (pairs, depth) {
        (Some(p), _) => p,
        (None, Some(k)) => instantiate(&spec_from(sa)?, k)?,
        (None, None) => {
            let spec = spec_from(sa)?;
            let est = estimate_limit(&spec, cli.precision, cli.max_terms)?;
            let mut rows = vec![("spec", spec.to_string())];
            rows.extend(limit_rows(&est));
            let mut j = limit_json(&est);
            j["spec"] = spec.to_json();
            let plain = format!(
                "{}\n({} digits, {} convergence, {} terms)\n",
                est.value.to_decimal_string(est.achieved_digits.max(1)),
                est.achieved_digits,
                est.convergence_class,
                est.terms_used
            );
            return Ok(render(cli.format, rows, j, plain));
        }
    };
    let v = eval_finite(&pairs)?;
    let exact = format_rational_short(&v);
    let dec = decimal(&v, cli.precision);
    let rows = vec![
        ("depth", pairs.len().to_string()),
        ("value", exact.clone()),
        ("decimal", dec.clone()),
    ];
    let j = json!({ "depth": pairs.len(), "value": exact, "decimal": dec });
    Ok(render(cli.format, rows, j, format!("{exact}\n")))
}

fn run_convergents(cli: &Cli, sa: &SpecArgs, depth: usize) -> Result<String> {
    if depth == 0 {
        return Err(usage("depth must be at least 1"));
    }
    let spec = spec_from(sa)?;
    let pq = pq_convergents(&spec, depth - 1)?;
    let mut plain = String::new();
    let mut csv = String::from("depth,p,q,value,decimal\n");
    let mut rows = Vec::new();
    for c in &pq {
        let (p, q) = (format_rational_short(&c.p), format_rational_short(&c.q));
        let (v, d) = match c.value() {
            Some(v) => (format_rational_short(&v), decimal(&v, cli.precision.min(30))),
            None => ("undefined".to_string(), String::new()),
        };
        writeln!(plain, "{:>4}  {v}", c.depth()).unwrap();
        writeln!(csv, "{},{p},{q},{v},{d}", c.depth()).unwrap();
        rows.push(json!({ "depth": c.depth(), "p": p, "q": q, "value": v, "decimal": d }));
    }
    Ok(match cli.format {
        Format::Plain => plain,
        Format::Csv => csv,
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "spec": spec.to_json(), "convergents": rows })).unwrap() + "\n"
        }
    })
}

fn family_from(f: &FamilyArgs) -> Result<Family> {
    fn need<'a>(o: &'a Option<String>, id: u8, n: &str) -> Result<&'a str> {
        o.as_deref().ok_or_else(|| usage(format!("family {id} needs --{n}")))
    }
    let k = || f.k.ok_or_else(|| usage(format!("family {} needs --k", f.id)));
    Ok(match f.id {
        1 => {
            let a: i64 = need(&f.fa, f.id, "a")?
                .trim()
                .parse()
                .map_err(|_| usage("family 1 needs an integer --a"))?;
            if f.fb.is_some() {
                return Err(usage("family 1 takes --a and --k"));
            }
            Family::Linear(Family1Params::new(a, k()?)?)
        }
        2 => {
            if f.k.is_some() {
                return Err(usage("family 2 takes --a and --b"));
            }
            Family::Quadratic(Family2Params::new(
                rational_arg(need(&f.fa, f.id, "a")?)?,
                rational_arg(need(&f.fb, f.id, "b")?)?,
            )?)
        }
        3 => {
            if f.fa.is_some() || f.fb.is_some() {
                return Err(usage("family 3 takes --k"));
            }
            let k = u32::try_from(k()?).map_err(|_| usage("family 3 needs k >= 2"))?;
            Family::Zeta(Family3Params::new(k)?)
        }
        n => return Err(usage(format!("unknown family {n}; expected 1, 2 or 3"))),
    })
}

fn run_family(cli: &Cli, fa: &FamilyArgs) -> Result<String> {
    let fam = family_from(fa)?;
    let spec = fam.spec();
    let closed = fam.limit(cli.precision)?;
    let xp = cli.precision.min(30);
    let est = estimate_limit(&spec, xp, cli.max_terms)?;
    let agree = agreement_digits(&est.value, &closed.value);
    let diff = (&est.value - &closed.value.with_precision(xp + 10)).abs();
    let residual_exp = if diff.is_zero() {
        -(xp as i64)
    } else {
        diff.log10_abs().floor() as i64
    };
    let pass = est.achieved_digits >= 6 && agree >= 6f64.max(est.achieved_digits as f64 - 2.0);
    let value = closed.value.to_decimal_string(cli.precision);
    let rows = vec![
        ("family", fam.label()),
        ("spec", spec.to_string()),
        ("closed_form", closed.expr.clone()),
        ("value", value.clone()),
        (
            "convergent_limit",
            est.value.to_decimal_string(est.achieved_digits.max(1)),
        ),
        ("residual_exp", residual_exp.to_string()),
        ("pass", pass.to_string()),
    ];
    let mut j = closed.to_json();
    j["family"] = json!(fam.label());
    j["spec"] = spec.to_json();
    j["cross_check"] = json!({
        "limit": limit_json(&est),
        "residual_exp": residual_exp,
        "pass": pass,
    });
    let plain = format!(
        "{}\n{spec}\n{} = {value}\nconvergents: {} ({} digits, {} convergence, {} terms)\nresidual: 1e{residual_exp}  {}\n",
        fam.label(),
        closed.expr,
        est.value.to_decimal_string(est.achieved_digits.max(1)),
        est.achieved_digits,
        est.convergence_class,
        est.terms_used,
        if pass { "ok" } else { "MISMATCH" },
    );
    let out = render(cli.format, rows, j, plain);
    if pass {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Verify(format!(
            "{}: closed form and convergents disagree",
            fam.label()
        )))
    }
}

fn run_verify(
    cli: &Cli,
    sa: &SpecArgs,
    value: &Option<String>,
    constant: &Option<String>,
    mobius: &Option<String>,
) -> Result<String> {
    let spec = spec_from(sa)?;
    let wp = cli.precision + 10;
    let (target, claim) = match (value, constant, mobius) {
        (Some(v), _, _) => (
            BigFloat::parse(v.trim(), wp).map_err(|e| usage(e.to_string()))?,
            v.clone(),
        ),
        (None, Some(c), Some(m)) => {
            let cv = constant_value(c, wp).ok_or_else(|| usage(format!("unknown constant {c:?}")))?;
            let p: Vec<i64> = m
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| usage(format!("bad Möbius coefficient {x:?}")))
                })
                .collect::<Result<_>>()?;
            let [p1, p2, p3, p4] = p[..] else {
                return Err(usage("--mobius needs four integers"));
            };
            let i = |k: i64| BigFloat::from_i64(k, wp);
            let den = &i(p3) + &cv.mul_i64(p4);
            if den.is_zero() {
                return Err(usage("Möbius denominator is zero"));
            }
            (
                &(&i(p1) + &cv.mul_i64(p2)) / &den,
                format!("({p1} + {p2}*{c})/({p3} + {p4}*{c})"),
            )
        }
        _ => return Err(usage("give --value, or --constant with --mobius")),
    };
    let est = estimate_limit(&spec, cli.precision, cli.max_terms)?;
    let agree = agreement_digits(&est.value, &target);
    let pass = est.achieved_digits >= 6 && agree >= 6f64.max(est.achieved_digits as f64 - 2.0);
    let shown = agree.min(est.achieved_digits as f64).floor() as i64;
    let mut rows = vec![("spec", spec.to_string()), ("claim", claim.clone())];
    rows.extend(limit_rows(&est));
    rows.push(("agreeing_digits", shown.to_string()));
    rows.push(("pass", pass.to_string()));
    let j = json!({ "spec": spec.to_json(), "claim": claim, "limit": limit_json(&est), "agreeing_digits": shown, "pass": pass });
    let plain = format!(
        "{spec} -> {}\nclaim {claim}: {shown} digits agree of {} trusted  {}\n",
        est.value.to_decimal_string(est.achieved_digits.max(1)),
        est.achieved_digits,
        if pass { "ok" } else { "MISMATCH" },
    );
    let out = render(cli.format, rows, j, plain);
    if pass {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Verify("limit does not match the claim".into()))
    }
}

#[allow(clippy::too_many_arguments)]
fn run_scan(
    cli: &Cli,
    config: &Option<PathBuf>,
    max_degree: Option<u32>,
    coeff_bound: Option<i64>,
    moebius_bound: Option<i64>,
    constants: &Option<String>,
    out: &Path,
    resume: bool,
    precision_given: bool,
) -> Result<String> {
    let mut cfg = match config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            serde_json::from_str::<ScanConfig>(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?
        }
        None => ScanConfig::default(),
    };
    if let Some(d) = max_degree {
        cfg.max_degree = d;
    }
    if let Some(b) = coeff_bound {
        cfg.coeff_bound = b;
    }
    if let Some(b) = moebius_bound {
        cfg.moebius_bound = b;
    }
    if let Some(c) = constants {
        cfg.constants = c
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
    }
    if precision_given {
        cfg.precision = cli.precision;
    }
    let summary = if resume {
        scan_resume(&cfg, out)?
    } else {
        scan(&cfg, out)?
    };
    let rows = vec![
        ("candidates", summary.candidates.to_string()),
        ("converged", summary.converged.to_string()),
        ("matched", summary.matched.to_string()),
        ("rational", summary.rational.to_string()),
        ("spurious", summary.spurious.to_string()),
    ];
    let plain = format!(
        "candidates {}\nconverged {}\nmatched {}\nrational {}\nspurious {}\n",
        summary.candidates, summary.converged, summary.matched, summary.rational, summary.spurious
    );
    Ok(render(cli.format, rows, serde_json::to_value(&summary).unwrap(), plain))
}

fn run_transform(cli: &Cli, sa: &SpecArgs, scale: &Option<String>, euler: bool) -> Result<String> {
    let spec = spec_from(sa)?;
    if let Some(c) = scale {
        let t = scale_equivalence(&spec, &parse_polyseq(c)?)?;
        let rows = vec![("a", t.a.to_string()), ("b", t.b.to_string())];
        return Ok(render(cli.format, rows, t.to_json(), format!("{t}\n")));
    }
    if !euler {
        return Err(usage("give --scale or --euler"));
    }
    let r = to_euler_form(&spec)
        .ok_or_else(|| CliError::Eval(format!("{spec} is not of the form [r(n-1) + 1 : -r(n)]")))?;
    let est = euler_value_with(&r, cli.precision, cli.max_terms)?;
    let mut rows = vec![("r", r.to_string())];
    rows.extend(limit_rows(&est));
    let j = json!({ "r": r.to_string(), "limit": limit_json(&est) });
    let plain = format!(
        "r(n) = {r}\nr(0) + 1/sum prod r(j) = {}\n",
        est.value.to_decimal_string(est.achieved_digits.max(1))
    );
    Ok(render(cli.format, rows, j, plain))
}

fn run_report(cli: &Cli, fa: &FamilyArgs, out: &Option<PathBuf>) -> Result<String> {
    let fam = family_from(fa)?;
    let text = family_report(&fam, cli.precision)?;
    match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| CliError::Eval(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run(cli: &Cli, precision_given: bool) -> Result<String> {
    if cli.precision < 10 {
        return Err(usage(format!("precision must be at least 10, got {}", cli.precision)));
    }
    match &cli.command {
        Command::Eval {
            simple,
            pairs,
            spec,
            depth,
        } => run_eval(cli, simple, pairs, spec, *depth),
        Command::Convergents { spec, depth } => run_convergents(cli, spec, *depth),
        Command::Family(f) => run_family(cli, f),
        Command::Verify {
            spec,
            value,
            constant,
            mobius,
        } => run_verify(cli, spec, value, constant, mobius),
        Command::Scan {
            config,
            max_degree,
            coeff_bound,
            moebius_bound,
            constants,
            out,
            resume,
        } => run_scan(
            cli,
            config,
            *max_degree,
            *coeff_bound,
            *moebius_bound,
            constants,
            out,
            *resume,
            precision_given,
        ),
        Command::Transform { spec, scale, euler } => run_transform(cli, spec, scale, *euler),
        Command::Report { family, out } => run_report(cli, family, out),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let precision_given = argv
        .iter()
        .any(|a| a == "--precision" || a == "-p" || a.starts_with("--precision="));
    match run(&cli, precision_given) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
