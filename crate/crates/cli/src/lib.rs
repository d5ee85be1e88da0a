//! Batch front-end: reads polynomial, divisor and selection files, runs one
//! subcommand and returns its report (JSON, or SVG for `render`).

pub mod render;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use troplift_core::geometry::dual_subdivision;
use troplift_core::intersect::{classify_trop, ValidationResult};
use troplift_core::json::{
    parse_poly, CurveJson, DivisorJson, LaurentJson, LiftJson, PolyInput, ReportJson, SelectionJson,
    TropJson, VerifyJson,
};
use troplift_core::rational::parse_q;
use troplift_core::{
    classify, curve_complex, lift, tropicalize, validate_divisor, verify_divisor, DualSubdivision,
    Divisor, Error, IntersectionReport, LaurentPoly2, LiftConfig, Mode, Result, TropPoly2, Q,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Tropicalization, curve and dual subdivision of `-f`.
    Trop,
    /// Intersection report of `-f` and `-g`.
    Intersect,
    /// Validates the divisor `-d` against the selection.
    Check,
    /// Patches `-g` so that the selected components carry `-d`.
    Lift,
    /// Solves each selected component of `-f` and `-g` and compares with `-d`.
    Verify,
    /// SVG of the curves, their subdivisions and `-d`.
    Render,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    /// Order by the margin bound.
    Thm45,
    /// Order by spans of patched exponents.
    Thm46,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Thm45 => Mode::Margin,
            ModeArg::Thm46 => Mode::Span,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "troplift", version, about = "Tropical intersections and divisor lifting")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// First polynomial (tropical or Laurent JSON).
    #[arg(short = 'f', value_name = "F.json")]
    pub f: PathBuf,
    #[arg(short = 'g', value_name = "G.json")]
    pub g: Option<PathBuf>,
    /// Target divisor.
    #[arg(short = 'd', value_name = "D.json")]
    pub d: Option<PathBuf>,
    /// Component indices; all selectable components when absent.
    #[arg(long = "select", value_name = "SEL.json")]
    pub select: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    /// Depth to which empty rays are certified.
    #[arg(long, default_value = "16")]
    pub cap: String,
    /// Relative precision of series inverses.
    #[arg(long, env = "TROPLIFT_PRECISION")]
    pub precision: Option<String>,
    /// Output file; standard output when absent.
    #[arg(short = 'o', value_name = "OUT")]
    pub out: Option<PathBuf>,
    /// Half-width of the plotted window around the origin; fitted to the
    /// data when absent.
    #[arg(long = "box", value_name = "p/q")]
    pub bbox: Option<String>,
    /// Panel size in pixels.
    #[arg(long, default_value_t = 320)]
    pub scale: u32,
}

/// What a subcommand produced and the exit code to leave with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropReport {
    pub tropical: TropJson,
    pub curve: CurveJson,
    pub subdivision: DualSubdivision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub components: Vec<VerifyJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: String,
    pub message: String,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport {
            error: e.kind().into(),
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn poly(path: &Path) -> Result<PolyInput> {
    parse_poly(&read(path)?)
}

fn trop_of(p: &PolyInput) -> Result<TropPoly2> {
    match p {
        PolyInput::Trop(t) => Ok(t.clone()),
        PolyInput::Laurent(l) => tropicalize(l),
    }
}

fn laurent(path: &Path) -> Result<LaurentPoly2> {
    match poly(path)? {
        PolyInput::Laurent(l) => Ok(l),
        PolyInput::Trop(_) => Err(Error::Parse(format!(
            "{}: lifting needs Laurent coefficients, found a tropical polynomial",
            path.display()
        ))),
    }
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| Error::Parse(format!("missing {flag}")))
}

fn divisor(path: &Path) -> Result<Divisor> {
    let j: DivisorJson = serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    Divisor::try_from(&j)
}

fn selection(cli: &Cli, report: &IntersectionReport) -> Result<Vec<usize>> {
    match &cli.select {
        None => Ok(report.selectable()),
        Some(p) => {
            let j: SelectionJson = serde_json::from_str(&read(p)?).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(j.indices().to_vec())
        }
    }
}

fn positive(s: &str, what: &str, strict: bool) -> Result<Q> {
    let x = parse_q(s)?;
    let zero = Q::from_integer(0.into());
    if x < zero || (strict && x == zero) {
        return Err(Error::Parse(format!("{what} must be {}: {s}", if strict { "positive" } else { "non-negative" })));
    }
    Ok(x)
}

impl Cli {
    pub fn config(&self) -> Result<LiftConfig> {
        Ok(LiftConfig {
            mode: self.mode.into(),
            cap: positive(&self.cap, "--cap", false)?,
            precision: self.precision.as_deref().map(|p| positive(p, "--precision", true)).transpose()?,
        })
    }

    fn report(&self) -> Result<IntersectionReport> {
        let f = poly(&self.f)?;
        let g = poly(required(&self.g, "-g")?)?;
        match (&f, &g) {
            (PolyInput::Laurent(f), PolyInput::Laurent(g)) => classify(f, g),
            _ => Ok(classify_trop(&trop_of(&f)?, &trop_of(&g)?)),
        }
    }
}

/// Runs one subcommand. Errors carry the exit code through
/// [`Error::exit_code`]; a well-formed but failing `check` or `verify`
/// returns its report with code 2.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = cli.config()?;
    let ok = |body| Ok(Outcome { body, code: 0 });
    match cli.command {
        Command::Trop => {
            let t = trop_of(&poly(&cli.f)?)?;
            ok(json(&TropReport {
                tropical: (&t).into(),
                curve: (&curve_complex(&t)).into(),
                subdivision: dual_subdivision(&t),
            }))
        }
        Command::Intersect => ok(json(&ReportJson::from(&cli.report()?))),
        Command::Check => {
            let report = cli.report()?;
            let d = divisor(required(&cli.d, "-d")?)?;
            let v: ValidationResult = validate_divisor(&d, &report, &selection(cli, &report)?);
            Ok(Outcome {
                code: if v.valid { 0 } else { 2 },
                body: json(&v),
            })
        }
        Command::Lift => {
            let f = laurent(&cli.f)?;
            let g = laurent(required(&cli.g, "-g")?)?;
            let d = divisor(required(&cli.d, "-d")?)?;
            let report = classify(&f, &g)?;
            let out = lift(&f, &g, &d, &selection(cli, &report)?, &cfg)?;
            ok(json(&LiftJson::from(&out)))
        }
        Command::Verify => {
            let f = laurent(&cli.f)?;
            let g = laurent(required(&cli.g, "-g")?)?;
            let d = divisor(required(&cli.d, "-d")?)?;
            let report = classify(&f, &g)?;
            let records = verify_divisor(&f, &g, &d, &selection(cli, &report)?, &cfg)?;
            let all = records.iter().all(|r| r.ok);
            Ok(Outcome {
                code: if all { 0 } else { 2 },
                body: json(&VerifyReport {
                    ok: all,
                    components: records.iter().map(Into::into).collect(),
                }),
            })
        }
        Command::Render => {
            let f = trop_of(&poly(&cli.f)?)?;
            let g = cli.g.as_deref().map(|p| poly(p).and_then(|x| trop_of(&x))).transpose()?;
            let d = cli.d.as_deref().map(divisor).transpose()?;
            let mut scene = render::Scene::new(cli.scale);
            if let Some(b) = &cli.bbox {
                scene.half_width = Some(positive(b, "--box", true)?);
            }
            scene.curves.push(f.clone());
            if let Some(g) = &g {
                scene.curves.push(g.clone());
                let report = classify_trop(&f, g);
                let sel = selection(cli, &report)?;
                for &k in &sel {
                    let c = report.components.get(k).ok_or(Error::NotALsComponent(k))?;
                    if let Some(s) = c.phi1 {
                        scene.marked.push((0, s));
                    }
                    if let Some(s) = c.phi2 {
                        scene.marked.push((1, s));
                    }
                }
            }
            scene.divisors.extend(d);
            ok(scene.to_svg())
        }
    }
}

/// Writes the outcome where `-o` points, or to standard output.
pub fn emit(cli: &Cli, out: &Outcome) -> Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, &out.body).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{}", out.body);
            Ok(())
        }
    }
}

/// Re-reads a `lift` report's `g'` as a Laurent polynomial.
pub fn gprime_of(report: &LiftJson) -> Result<LaurentPoly2> {
    LaurentPoly2::try_from(&report.gprime)
}

pub fn laurent_json(p: &LaurentPoly2) -> String {
    json(&LaurentJson::from(p))
}
