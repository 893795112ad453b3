//! The `residual` subcommand.

use std::path::{Path, PathBuf};

use clap::Args;
use num_rational::BigRational;
use num_traits::Zero;

use stada::equations::{
    plane_wave, reduction_defect, DiracSystem, Energy, EquationForm, GridSpec, Reduction, ResidualReport,
};
use stada::field::{parse_analytic, AnalyticField, FieldOps, GridField, GridHeader};
use stada::random::{rng, stream_id};
use stada::scalar::parse_rational;
use stada::suite::SuiteScalar;
use stada::{Backend, Error, Exact, Float};

#[derive(Args)]
pub struct ResidualArgs {
    #[arg(long, default_value = "tde")]
    form: EquationForm,
    /// exact or float; grid states always use float.
    #[arg(long)]
    backend: Option<Backend>,
    /// Particle mass (taken from --plane-wave when omitted).
    #[arg(long)]
    mass: Option<String>,
    /// Free plane wave `m=1,p=p0,p1,p2,p3[,energy=+|-][,which=0|1]`.
    #[arg(long, conflicts_with = "state")]
    plane_wave: Option<String>,
    /// `zero`, an analytic expression, or a file holding one or a grid dump.
    #[arg(long)]
    state: Option<String>,
    /// Potential 1-form, in the same formats as --state (default zero).
    #[arg(long)]
    potential: Option<String>,
    /// canonical, or random (drawn from --seed).
    #[arg(long, default_value = "canonical")]
    generators: Generators,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// With --form ilk, check the reduction by t-HI, t-H or t-e5 instead.
    #[arg(long)]
    reduce: Option<Reduction>,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    /// Where to write the JSON report (default: stdout, and
    /// $STADA_REPORT_DIR if set).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Generators {
    Canonical,
    Random,
}

enum Input {
    Zero,
    Analytic(AnalyticField<Exact>),
    Grid(GridField<Float>, GridHeader),
}

struct PlaneWaveSpec {
    mass: BigRational,
    p: [BigRational; 4],
    energy: Energy,
    which: usize,
}

pub fn run(args: ResidualArgs) -> Result<bool, Error> {
    let wave = args.plane_wave.as_deref().map(parse_plane_wave).transpose()?;
    let mass = match (&args.mass, &wave) {
        (Some(text), w) => {
            let m = rational(text)?;
            if let Some(w) = w {
                if w.mass != m {
                    return Err(Error::Malformed("--mass disagrees with the plane-wave mass".into()));
                }
            }
            m
        }
        (None, Some(w)) => w.mass.clone(),
        (None, None) => BigRational::from_integer(1.into()),
    };
    let state = match (&args.state, &wave) {
        (Some(s), _) => load(s)?,
        (None, Some(_)) => Input::Zero,
        (None, None) if args.reduce.is_some() => Input::Zero,
        (None, None) => return Err(Error::Malformed("give --state or --plane-wave".into())),
    };
    let potential = args.potential.as_deref().map(load).transpose()?.unwrap_or(Input::Zero);
    if args.reduce.is_some() && args.form != EquationForm::Ilk {
        return Err(Error::Malformed("--reduce applies to --form ilk".into()));
    }
    let grid = matches!(state, Input::Grid(..)) || matches!(potential, Input::Grid(..));
    let backend = match (args.backend, grid) {
        (Some(Backend::Exact), true) => return Err(Error::Malformed("grid data needs --backend float".into())),
        (Some(b), _) => b,
        (None, true) => Backend::Float,
        (None, false) => Backend::Exact,
    };
    let report = match (state, backend) {
        (Input::Grid(g, header), _) => grid_report(&args, &mass, &g, potential, header)?,
        (state, Backend::Exact) => evaluate::<Exact>(&args, &mass, wave.as_ref(), state, potential)?,
        (state, Backend::Float) => evaluate::<Float>(&args, &mass, wave.as_ref(), state, potential)?,
    };
    let json = serde_json::to_string_pretty(&report)?;
    let default_name = format!("residual-{}.json", report.form);
    match crate::report_path(args.report.clone(), &default_name) {
        Some(path) => {
            crate::write_report(&path, &json)?;
            if args.report.is_none() {
                crate::say!("{json}");
            }
        }
        None => crate::say!("{json}"),
    }
    Ok(report.passed())
}

fn system<S: SuiteScalar>(args: &ResidualArgs, mass: &BigRational) -> Result<DiracSystem<S>, Error> {
    let m = S::real_from_rational(mass);
    match args.generators {
        Generators::Canonical => DiracSystem::canonical(m),
        Generators::Random => {
            let mut r = rng(args.seed, stream_id("generators"));
            let tol = if S::EXACT { 0.0 } else { 1e-10 };
            DiracSystem::with_generators(m, S::generators(&mut r), tol)
        }
    }
}

/// Analytic states on either backend.
fn evaluate<S: SuiteScalar>(
    args: &ResidualArgs,
    mass: &BigRational,
    wave: Option<&PlaneWaveSpec>,
    state: Input,
    potential: Input,
) -> Result<ResidualReport, Error> {
    let sys = system::<S>(args, mass)?;
    let mut notes = Vec::new();
    let state = match (state, wave) {
        (_, Some(w)) => plane_wave(&sys, args.form, &w.p.each_ref().map(S::real_from_rational), w.energy, w.which)?,
        (Input::Zero, None) if args.reduce.is_some() => {
            notes.push(format!("random ILK state from seed {}", args.seed));
            AnalyticField::random(&mut rng(args.seed, stream_id("state")), 3)
        }
        (Input::Zero, None) => AnalyticField::zero(),
        (Input::Analytic(f), None) => S::field_from_exact(f),
        (Input::Grid(..), None) => unreachable!("grid states are dispatched before"),
    };
    let a = match potential {
        Input::Zero => state.zero_like(),
        Input::Analytic(f) => S::field_from_exact(f),
        Input::Grid(..) => return Err(Error::Shape("a grid potential needs a grid state".into())),
    };
    let mut report = finish(&sys, args, &state, &a)?;
    if args.generators == Generators::Random || args.reduce.is_some() {
        report.seed = Some(args.seed);
    }
    report.notes.extend(notes);
    Ok(report)
}

fn grid_report(
    args: &ResidualArgs,
    mass: &BigRational,
    state: &GridField<Float>,
    potential: Input,
    header: GridHeader,
) -> Result<ResidualReport, Error> {
    let sys = system::<Float>(args, mass)?;
    let a = match potential {
        Input::Grid(g, _) if g.same_shape(state) => g,
        Input::Grid(..) => return Err(Error::Shape("potential grid differs from the state grid".into())),
        Input::Zero => state.zero_like(),
        Input::Analytic(f) => GridField::sample(&f.to_float(), header.dims, header.h, state.execution()).0,
    };
    let mut report = finish(&sys, args, state, &a)?;
    if args.generators == Generators::Random {
        report.seed = Some(args.seed);
    }
    report.grid = Some(GridSpec { n: header.dims, h: header.h });
    report.notes.push("central differences on a periodic lattice".into());
    Ok(report)
}

/// Plain residual, or the ILK reduction defect when `--reduce` is given.
fn finish<S: SuiteScalar, F: FieldOps<S>>(
    sys: &DiracSystem<S>,
    args: &ResidualArgs,
    state: &F,
    a: &F,
) -> Result<ResidualReport, Error> {
    match args.reduce {
        Some(reduction) => {
            let defect = reduction_defect(sys, reduction, state, a);
            let mut report = ResidualReport::from_residual(sys, reduction.target(), &defect, args.tolerance);
            report.notes.push(format!("ilk reduction by {reduction}: R_{}(rho P) - R_ilk(rho) P", reduction.target()));
            Ok(report)
        }
        None => {
            let tol = if S::EXACT { 0.0 } else { args.tolerance.max(1e-12) };
            let residual = sys.residual(args.form, state, a, tol)?;
            Ok(ResidualReport::from_residual(sys, args.form, &residual, args.tolerance))
        }
    }
}

fn rational(text: &str) -> Result<BigRational, Error> {
    parse_rational(text.trim()).ok_or_else(|| Error::Malformed(format!("not a rational number: `{text}`")))
}

fn parse_plane_wave(text: &str) -> Result<PlaneWaveSpec, Error> {
    let mut mass = None;
    let mut p = Vec::new();
    let mut energy = Energy::Positive;
    let mut which = 0;
    let mut key = String::new();
    for token in text.split(',').map(str::trim) {
        let value = match token.split_once('=') {
            Some((k, v)) => {
                key = k.trim().to_string();
                v.trim()
            }
            None => token,
        };
        match key.as_str() {
            "m" => mass = Some(rational(value)?),
            "p" => {
                let negative = value.starts_with('-');
                let r = rational(value.trim_start_matches('-'))?;
                p.push(if negative { -r } else { r });
            }
            "energy" => {
                energy = match value {
                    "+" | "positive" => Energy::Positive,
                    "-" | "negative" => Energy::Negative,
                    other => return Err(Error::Malformed(format!("energy must be + or -, got `{other}`"))),
                }
            }
            "which" => {
                which = value.parse().map_err(|_| Error::Malformed(format!("bad amplitude index `{value}`")))?
            }
            "" => return Err(Error::Malformed(format!("plane wave spec must start with a key: `{text}`"))),
            other => return Err(Error::Malformed(format!("unknown plane wave key `{other}`"))),
        }
    }
    let mass = mass.ok_or_else(|| Error::Malformed("plane wave needs m=".into()))?;
    if mass < BigRational::zero() {
        return Err(Error::Malformed("mass must be non-negative".into()));
    }
    let p: [BigRational; 4] =
        p.try_into().map_err(|_| Error::Malformed("plane wave needs four momentum components p=p0,p1,p2,p3".into()))?;
    Ok(PlaneWaveSpec { mass, p, energy, which })
}

/// `zero`, a path to a grid dump or analytic expression, or an inline
/// analytic expression.
fn load(arg: &str) -> Result<Input, Error> {
    if arg.trim() == "zero" {
        return Ok(Input::Zero);
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(Input::Analytic(parse_analytic(arg)?));
    }
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(b"STGF") {
        let (g, h) = GridField::from_bytes(&bytes)?;
        return Ok(Input::Grid(g, h));
    }
    let text = String::from_utf8(bytes).map_err(|_| Error::Malformed(format!("{arg}: not UTF-8 text")))?;
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(&text)?;
        let (g, h) = GridField::from_json(&v)?;
        return Ok(Input::Grid(g, h));
    }
    Ok(Input::Analytic(parse_analytic(text.trim())?))
}
