//! Seeded verification batteries and their JSON reports.
//!
//! Every check draws from its own generator, derived from the run seed and
//! the check id, so checks can run in any order or in parallel and the report
//! (sorted by id) is byte-identical for a given spec.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::Serialize;

use crate::blade::{self, Blade, ETA};
use crate::equations::{
    boosted_momentum, covariance_transform, current, gauge_transform, global_spin_transform, grid_divergence,
    lagrangian, maxwell_residuals, plane_wave, reduction_defect, trace_f_squared, translate, translate_residual, DiracSystem, Energy,
    EquationForm, Reduction,
};
use crate::error::{Error, Result};
use crate::exterior::{
    clifford_product_direct, clifford_product_via_table, com_bracket, hodge_star, hodge_star_direct,
    missing_case_audit,
};
use crate::field::{
    self, d, delta, grid_upsilon_error, laplace, laplace_hodge, laplace_split_square, laplace_wave, upsilon,
    upsilon_clifford, AnalyticField, FieldOps, GridField, Poly,
};
use crate::ideal::{dirac_matrices, IdealBasis, SecondaryGenerators};
use crate::literal::{self, BasisSymbol, LiteralScalar};
use crate::matrix4::Matrix4;
use crate::multivector::Multivector;
use crate::oracle;
use crate::par::{map_range, Execution};
use crate::random::{self, rng, stream_id, RandomScalar, TestRng};
use crate::scalar::{rational, Backend, Exact, Float, Scalar};
use crate::spin::{recover_spin, SpinElement};

/// Scalars the suites can run on.
pub trait SuiteScalar: RandomScalar + LiteralScalar {
    fn spin(rng: &mut TestRng) -> SpinElement<Self>;
    fn generators(rng: &mut TestRng) -> SecondaryGenerators<Self>;
    fn real(num: i64, den: i64) -> Self::Real;
    fn real_from_rational(r: &num_rational::BigRational) -> Self::Real;
    fn field_from_exact(f: AnalyticField<Exact>) -> AnalyticField<Self>;
}

impl SuiteScalar for Exact {
    fn spin(rng: &mut TestRng) -> SpinElement<Self> {
        SpinElement::<Exact>::random(rng, 3)
    }

    fn generators(rng: &mut TestRng) -> SecondaryGenerators<Self> {
        SecondaryGenerators::<Exact>::random(rng)
    }

    fn real(num: i64, den: i64) -> num_rational::BigRational {
        rational(num, den)
    }

    fn real_from_rational(r: &num_rational::BigRational) -> num_rational::BigRational {
        r.clone()
    }

    fn field_from_exact(f: AnalyticField<Exact>) -> AnalyticField<Self> {
        f
    }
}

impl SuiteScalar for Float {
    fn spin(rng: &mut TestRng) -> SpinElement<Self> {
        SpinElement::<Float>::random(rng)
    }

    fn generators(rng: &mut TestRng) -> SecondaryGenerators<Self> {
        SecondaryGenerators::<Float>::random(rng)
    }

    fn real(num: i64, den: i64) -> f64 {
        num as f64 / den as f64
    }

    fn real_from_rational(r: &num_rational::BigRational) -> f64 {
        num_traits::ToPrimitive::to_f64(r).expect("finite rational")
    }

    fn field_from_exact(f: AnalyticField<Exact>) -> AnalyticField<Self> {
        f.to_float()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Hodge,
    Spin,
    Representation,
    Fields,
    Equations,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 6] =
        [Suite::Algebra, Suite::Hodge, Suite::Spin, Suite::Representation, Suite::Fields, Suite::Equations];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Hodge => "hodge",
            Suite::Spin => "spin",
            Suite::Representation => "representation",
            Suite::Fields => "fields",
            Suite::Equations => "equations",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::MODULES
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// What to run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSpec {
    pub suite: Suite,
    pub seed: u64,
    pub backend: Backend,
    pub iterations: usize,
    pub tolerance: Option<f64>,
}

impl SuiteSpec {
    pub fn new(suite: Suite, seed: u64) -> Self {
        SuiteSpec { suite, seed, backend: Backend::Exact, iterations: 20, tolerance: None }
    }

    fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Malformed("iterations must be positive".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::Malformed("tolerance must be a non-negative number".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost(f64),
    Within(f64, f64),
}

impl Bound {
    fn admits(&self, x: f64) -> bool {
        match *self {
            Bound::AtMost(b) => x <= b,
            Bound::Within(lo, hi) => (lo..=hi).contains(&x),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check's outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub tag: String,
    pub status: Status,
    pub measured: f64,
    pub bound: Bound,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Environment {
    pub version: String,
    pub os: String,
    pub arch: String,
    pub parallel: bool,
}

impl Environment {
    pub fn current() -> Self {
        Environment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            parallel: cfg!(feature = "parallel"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub spec: SuiteSpec,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
    pub environment: Environment,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.summary.status == Status::Pass
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn record(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }
}

/// Per-check inputs.
pub struct Ctx {
    seed: u64,
    backend: Backend,
    iterations: usize,
    tolerance: Option<f64>,
    id: &'static str,
}

impl Ctx {
    fn rng(&self) -> TestRng {
        rng(self.seed, stream_id(self.id))
    }

    /// Float tolerance, unless overridden.
    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    /// Zero on the exact backend, the (overridable) tolerance otherwise.
    fn bound<S: Scalar>(&self, default: f64) -> Bound {
        Bound::AtMost(if S::EXACT { 0.0 } else { self.tol(default) })
    }
}

struct Outcome {
    measured: f64,
    bound: Bound,
    detail: String,
}

fn outcome(measured: f64, bound: Bound, detail: impl Into<String>) -> Outcome {
    Outcome { measured, bound, detail: detail.into() }
}

type CheckFn = fn(&Ctx) -> Result<Outcome>;

struct CheckDef {
    id: &'static str,
    suite: Suite,
    tag: &'static str,
    run: CheckFn,
}

macro_rules! by_backend {
    ($ctx:expr, $f:ident) => {
        match $ctx.backend {
            Backend::Exact => $f::<Exact>($ctx),
            Backend::Float => $f::<Float>($ctx),
        }
    };
}

fn checks() -> Vec<CheckDef> {
    use Suite::*;
    let c = |id, suite, tag, run| CheckDef { id, suite, tag, run };
    vec![
        c("algebra.associativity", Algebra, "identity", |x| by_backend!(x, associativity)),
        c("algebra.blade-products", Algebra, "exhaustive", blade_products),
        c("algebra.generators", Algebra, "identity", |x| by_backend!(x, generator_relations)),
        c("algebra.involutions", Algebra, "identity", |x| by_backend!(x, involutions)),
        c("algebra.inverse", Algebra, "identity", |x| by_backend!(x, inverses)),
        c("algebra.literals", Algebra, "round-trip", |x| by_backend!(x, literal_round_trip)),
        c("algebra.trace", Algebra, "identity", |x| by_backend!(x, trace_cyclic)),
        c("hodge.com-bracket", Hodge, "identity", |x| by_backend!(x, com_is_commutator)),
        c("hodge.double-star", Hodge, "identity", |x| by_backend!(x, double_star)),
        c("hodge.table-audit", Hodge, "exhaustive", table_audit),
        c("hodge.table-product", Hodge, "exhaustive", table_product),
        c("hodge.table-random", Hodge, "identity", |x| by_backend!(x, table_random)),
        c("spin.covering", Spin, "identity", spin_covering),
        c("spin.homomorphism", Spin, "identity", |x| by_backend!(x, spin_homomorphism)),
        c("spin.recovery", Spin, "theorem", |x| by_backend!(x, spin_recovery)),
        c("representation.anticommutation", Representation, "identity", gamma_anticommutation),
        c("representation.dirac-matrices", Representation, "exact", dirac_reproduction),
        c("representation.even-bijection", Representation, "theorem", |x| by_backend!(x, even_bijection)),
        c("representation.homomorphism", Representation, "identity", |x| by_backend!(x, gamma_homomorphism)),
        c("representation.spin-invariance", Representation, "theorem", |x| by_backend!(x, spin_invariance)),
        c("fields.grid-convergence", Fields, "numerics", grid_convergence),
        c("fields.grid-d-squared", Fields, "exact", grid_d_squared),
        c("fields.grid-laplace", Fields, "numerics", grid_laplace_routes),
        c("fields.identities", Fields, "identity", |x| by_backend!(x, operator_identities)),
        c("equations.covariance", Equations, "theorem", |x| by_backend!(x, covariance)),
        c("equations.current", Equations, "theorem", |x| by_backend!(x, current_conservation)),
        c("equations.current-grid", Equations, "numerics", current_grid),
        c("equations.gauge", Equations, "theorem", gauge),
        c("equations.global-spin", Equations, "theorem", |x| by_backend!(x, global_spin)),
        c("equations.ilk-reductions", Equations, "theorem", |x| by_backend!(x, ilk_reductions)),
        c("equations.maxwell", Equations, "identity", |x| by_backend!(x, maxwell)),
        c("equations.plane-waves", Equations, "theorem", |x| by_backend!(x, plane_waves)),
        c("equations.translation", Equations, "theorem", |x| by_backend!(x, translation)),
    ]
}

/// Ids of the checks a suite runs.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    checks().into_iter().filter(|c| suite == Suite::All || c.suite == suite).map(|c| c.id).collect()
}

fn execute(def: &CheckDef, spec: &SuiteSpec) -> CheckRecord {
    let ctx = Ctx {
        seed: spec.seed,
        backend: spec.backend,
        iterations: spec.iterations,
        tolerance: spec.tolerance,
        id: def.id,
    };
    let (measured, bound, detail) = match (def.run)(&ctx) {
        Ok(o) => (o.measured, o.bound, o.detail),
        Err(e) => (f64::INFINITY, Bound::AtMost(0.0), format!("error: {e}")),
    };
    let status = if measured.is_finite() && bound.admits(measured) { Status::Pass } else { Status::Fail };
    CheckRecord { id: def.id.to_string(), tag: def.tag.to_string(), status, measured, bound, detail }
}

/// Runs one check by id under `spec` (its `suite` field is ignored).
pub fn run_check(id: &str, spec: &SuiteSpec) -> Result<CheckRecord> {
    spec.validate()?;
    let def = checks().into_iter().find(|c| c.id == id).ok_or_else(|| Error::Malformed(format!("unknown check `{id}`")))?;
    Ok(execute(&def, spec))
}

/// Runs `spec` with checks spread over `exec`.
pub fn run_suite_with(spec: &SuiteSpec, exec: Execution) -> Result<RunReport> {
    spec.validate()?;
    let defs: Vec<CheckDef> =
        checks().into_iter().filter(|c| spec.suite == Suite::All || c.suite == spec.suite).collect();
    let mut records = map_range(defs.len(), exec, |k| execute(&defs[k], spec));
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = records.iter().filter(|r| r.status == Status::Pass).count();
    let summary = Summary {
        total: records.len(),
        passed,
        failed: records.len() - passed,
        status: if passed == records.len() { Status::Pass } else { Status::Fail },
    };
    Ok(RunReport { spec: spec.clone(), records, summary, environment: Environment::current() })
}

pub fn run_suite(spec: &SuiteSpec) -> Result<RunReport> {
    run_suite_with(spec, Execution::default())
}

// Measurement helpers.

fn mv_defect<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>) -> f64 {
    if S::EXACT {
        if a == b {
            0.0
        } else {
            a.max_abs_diff(b).max(f64::MIN_POSITIVE)
        }
    } else {
        a.max_abs_diff(b)
    }
}

fn field_defect<S: Scalar, F: FieldOps<S>>(f: &F) -> f64 {
    if S::EXACT {
        if f.is_identically_zero() {
            0.0
        } else {
            f.max_norm().max(f64::MIN_POSITIVE)
        }
    } else {
        f.max_norm()
    }
}

/// Defect of `a - b`, relative to `|b|` on the float backend.
fn relative_defect<S: Scalar, F: FieldOps<S>>(a: &F, b: &F) -> f64 {
    let diff = field_defect(&a.minus(b));
    if S::EXACT {
        diff
    } else {
        diff / b.max_norm().max(1.0)
    }
}

fn matrix_defect<S: Scalar>(a: &Matrix4<S>, b: &Matrix4<S>) -> f64 {
    if S::EXACT {
        if a == b {
            0.0
        } else {
            a.max_abs_diff(b).max(f64::MIN_POSITIVE)
        }
    } else {
        a.max_abs_diff(b)
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

// algebra

fn associativity<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let m = worst((0..ctx.iterations * 10).map(|_| {
        let (a, b, c) = (random::multivector::<S>(&mut r), random::multivector(&mut r), random::multivector(&mut r));
        mv_defect(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)))
    }));
    Ok(outcome(m, ctx.bound::<S>(1e-12), format!("{} random triples", ctx.iterations * 10)))
}

fn blade_products(_: &Ctx) -> Result<Outcome> {
    let mut matched = 0;
    for a in Blade::all() {
        for b in Blade::all() {
            if blade::product(a, b) == oracle::blade_product(a, b) {
                matched += 1;
            }
        }
    }
    Ok(outcome((256 - matched) as f64, Bound::AtMost(0.0), format!("{matched}/256 blade products matched")))
}

fn generator_relations<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let m = worst((0..4).flat_map(|mu| {
        (0..4).map(move |nu| {
            let (a, b) = (Multivector::<S>::basis_vector(mu), Multivector::<S>::basis_vector(nu));
            let expected = if mu == nu { Multivector::scalar(S::from_i64(2 * ETA[mu] as i64)) } else { Multivector::zero() };
            mv_defect(&a.anticommutator(&b), &expected)
        })
    }));
    Ok(outcome(m, ctx.bound::<S>(1e-14), "l^mu l^nu + l^nu l^mu = 2 eta^{mu nu} l"))
}

fn involutions<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let h = Multivector::<S>::basis_vector(0);
    let m = worst((0..ctx.iterations).map(|_| {
        let (u, v) = (random::multivector::<S>(&mut r), random::multivector(&mut r));
        let star = mv_defect(&u.mul(&v).star(), &v.star().mul(&u.star())).max(mv_defect(&u.star().star(), &u));
        let rev = mv_defect(&u.mul(&v).reverse(), &v.reverse().mul(&u.reverse()));
        let dag = u.hermitian_conjugate(&h, 0.0).and_then(|ud| {
            Ok(mv_defect(&u.mul(&v).hermitian_conjugate(&h, 0.0)?, &v.hermitian_conjugate(&h, 0.0)?.mul(&ud)))
        });
        star.max(rev).max(dag.unwrap_or(f64::INFINITY))
    }));
    Ok(outcome(m, ctx.bound::<S>(1e-12), "(UV)* = V*U*, U** = U, reversion and Hermitian conjugation anti-multiplicative"))
}

fn inverses<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let tol = if S::EXACT { 0.0 } else { 1e-12 };
    let mut inverted = 0;
    let m = worst((0..ctx.iterations).map(|_| {
        let u = random::multivector::<S>(&mut r);
        match u.inverse(tol) {
            Some(inv) => {
                inverted += 1;
                mv_defect(&u.mul(&inv), &Multivector::one()).max(mv_defect(&inv.mul(&u), &Multivector::one()))
            }
            None => 0.0,
        }
    }));
    Ok(outcome(m, ctx.bound::<S>(1e-9), format!("{inverted}/{} random elements inverted", ctx.iterations)))
}

fn literal_round_trip<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let mut failures = 0usize;
    for _ in 0..ctx.iterations {
        let u = random::multivector::<Exact>(&mut r);
        for symbol in [BasisSymbol::E, BasisSymbol::L] {
            let text = literal::format(&u, symbol);
            if literal::parse_exact(&text).map(|v| v != u).unwrap_or(true) {
                failures += 1;
            }
        }
        let v = random::multivector::<S>(&mut r);
        if literal::from_json::<S>(&literal::to_json(&v)).map(|w| w != v).unwrap_or(true) {
            failures += 1;
        }
    }
    Ok(outcome(failures as f64, Bound::AtMost(0.0), "format/parse and JSON round trips"))
}

fn trace_cyclic<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let m = worst((0..ctx.iterations).map(|_| {
        let (u, v) = (random::multivector::<S>(&mut r), random::multivector(&mut r));
        mv_defect(&Multivector::scalar(u.mul(&v).trace()), &Multivector::scalar(v.mul(&u).trace()))
    }));
    Ok(outcome(m, ctx.bound::<S>(1e-12), "Tr(UV) = Tr(VU)"))
}

// hodge

fn com_is_commutator<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let mut m = 0.0f64;
    for _ in 0..ctx.iterations {
        let (u, v) = (random::homogeneous::<S>(&mut r, 2, false), random::homogeneous(&mut r, 2, false));
        m = m.max(mv_defect(&com_bracket(&u, &v)?, &u.commutator(&v)));
    }
    Ok(outcome(m, ctx.bound::<S>(1e-12), "Com(U, V) = UV - VU on 2-forms"))
}

fn double_star<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let mut m = 0.0f64;
    for _ in 0..ctx.iterations {
        let u = random::multivector::<S>(&mut r);
        for k in 0..=4 {
            let part = u.grade_part(k)?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            m = m.max(mv_defect(&hodge_star(&hodge_star(&part)), &part.scale(&S::from_i64(sign))));
            m = m.max(mv_defect(&hodge_star(&part), &hodge_star_direct(&part)));
        }
    }
    Ok(outcome(m, ctx.bound::<S>(1e-12), "star star = (-1)^(k+1) on grade k; memoized star = direct sum"))
}

fn table_audit(_: &Ctx) -> Result<Outcome> {
    let report = missing_case_audit();
    let disagreements = report.entries.iter().filter(|e| !e.overlaps_agree).count();
    let uncovered = report.entries.iter().filter(|e| e.rule.is_none()).count();
    Ok(outcome(
        (disagreements + uncovered) as f64,
        Bound::AtMost(0.0),
        format!("{} grade pairs, {uncovered} uncovered, {disagreements} overlapping rules disagree", report.entries.len()),
    ))
}

fn table_product(_: &Ctx) -> Result<Outcome> {
    let mut matched = 0;
    for a in Blade::all() {
        for b in Blade::all() {
            let (x, y) = (Multivector::<Exact>::blade(a), Multivector::<Exact>::blade(b));
            if clifford_product_direct(&x, &y) == x.mul(&y) {
                matched += 1;
            }
        }
    }
    Ok(outcome((256 - matched) as f64, Bound::AtMost(0.0), format!("{matched}/256 blade pairs agree with the sign rule")))
}

fn table_random<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let m = worst((0..ctx.iterations).map(|_| {
        let (u, v) = (random::multivector::<S>(&mut r), random::multivector(&mut r));
        mv_defect(&clifford_product_via_table(&u, &v), &u.mul(&v))
            .max(mv_defect(&oracle::product(&u, &v), &u.mul(&v)))
    }));
    Ok(outcome(m, ctx.bound::<S>(1e-12), "table product = sign rule = reordering oracle on random elements"))
}

// spin

fn spin_covering(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let mut m = 0.0f64;
    let mut orthochronous = true;
    for _ in 0..ctx.iterations.max(1) {
        let s = SpinElement::<Float>::random(&mut r);
        let p = s.lorentz(1e-10)?;
        m = m.max(p.metric_defect()).max((p.determinant() - 1.0).abs());
        orthochronous &= *p.get(0, 0) > 0.0;
        if s.neg().lorentz(1e-10)? != p {
            return Ok(outcome(f64::INFINITY, Bound::AtMost(ctx.tol(1e-10)), "P(-S) differs from P(S)"));
        }
    }
    if !orthochronous {
        return Ok(outcome(f64::INFINITY, Bound::AtMost(ctx.tol(1e-10)), "p^0_0 <= 0 encountered"));
    }
    Ok(outcome(m, Bound::AtMost(ctx.tol(1e-10)), "|P^T g P - g|, |det P - 1| over bivector exponentials; P(-S) = P(S)"))
}

fn spin_homomorphism<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let tol = if S::EXACT { 0.0 } else { 1e-10 };
    let mut m = 0.0f64;
    for _ in 0..ctx.iterations {
        let (a, b) = (S::spin(&mut r), S::spin(&mut r));
        let lhs = a.compose(&b).lorentz(tol)?;
        let rhs = a.lorentz(tol)?.compose(&b.lorentz(tol)?);
        let diff = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| (lhs.to_f64().get(i, j) - rhs.to_f64().get(i, j)).abs())
            .fold(0.0, f64::max);
        let exact_mismatch = S::EXACT && lhs != rhs;
        m = m.max(if exact_mismatch { diff.max(f64::MIN_POSITIVE) } else { diff });
    }
    Ok(outcome(m, ctx.bound::<S>(1e-10), "P(S1 S2) = P(S1) P(S2)"))
}

fn spin_recovery<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let tol = if S::EXACT { 0.0 } else { 1e-9 };
    let canonical = SecondaryGenerators::<S>::canonical();
    let mut m = 0.0f64;
    for _ in 0..ctx.iterations {
        let s0 = S::spin(&mut r);
        let moved = canonical.transformed(&s0);
        let found = recover_spin(moved.h(), moved.i(), moved.k(), tol)?;
        let target = s0.inverse();
        let d = mv_defect(found.spin.element(), target.element())
            .min(mv_defect(found.alternate.element(), target.element()));
        m = m.max(d);
        if found.nullspace_dim != 1 {
            m = f64::INFINITY;
        }
    }
    Ok(outcome(m, ctx.bound::<S>(1e-9), "generators S0* G S0 recover S = +-S0 from a one-dimensional null space"))
}

// representation

fn gamma_anticommutation(_: &Ctx) -> Result<Outcome> {
    let g = dirac_matrices::<Exact>();
    let mut failures = 0;
    for mu in 0..4 {
        for nu in mu..4 {
            let lhs = g[mu].mul(&g[nu]).add(&g[nu].mul(&g[mu]));
            let eta = if mu == nu { 2 * ETA[mu] as i64 } else { 0 };
            if lhs != Matrix4::identity().scale(&rational(eta, 1).into()) {
                failures += 1;
            }
        }
    }
    Ok(outcome(failures as f64, Bound::AtMost(0.0), "10 unordered pairs gamma^mu gamma^nu + gamma^nu gamma^mu = 2 eta^{mu nu}"))
}

fn dirac_reproduction(_: &Ctx) -> Result<Outcome> {
    let basis = IdealBasis::<Exact>::canonical();
    let g = dirac_matrices::<Exact>();
    let mismatched = (0..4)
        .filter(|&mu| basis.gamma_checked(&Multivector::basis_vector(mu), 0.0).map(|m| m != g[mu]).unwrap_or(true))
        .count();
    Ok(outcome(mismatched as f64, Bound::AtMost(0.0), "gamma(l^mu) with canonical generators equals the Dirac matrices"))
}

fn even_bijection<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let tol = if S::EXACT { 0.0 } else { 1e-10 };
    let mut m = 0.0f64;
    let mut low_rank = 0;
    for _ in 0..ctx.iterations {
        let basis = IdealBasis::new(S::generators(&mut r), tol)?;
        if basis.even_map_rank() != 8 {
            low_rank += 1;
        }
        let omega = random::even_real::<S>(&mut r);
        let back = basis.even_from_ideal(&omega.mul(basis.t()), tol.max(1e-12 * (!S::EXACT) as u8 as f64))?;
        m = m.max(mv_defect(&back, &omega));
    }
    if low_rank > 0 {
        return Ok(outcome(f64::INFINITY, ctx.bound::<S>(1e-10), format!("{low_rank} generator sets with rank != 8")));
    }
    Ok(outcome(m, ctx.bound::<S>(1e-10), "rank(Omega -> Omega t) = 8 and even -> ideal -> even is the identity"))
}

fn gamma_homomorphism<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let basis = IdealBasis::<S>::canonical();
    let m = worst((0..ctx.iterations).map(|_| {
        let (u, v) = (random::multivector::<S>(&mut r), random::multivector(&mut r));
        matrix_defect(&basis.gamma(&u.mul(&v)), &basis.gamma(&u).mul(&basis.gamma(&v)))
    }));
    Ok(outcome(m, ctx.bound::<S>(1e-12), "gamma(UV) = gamma(U) gamma(V)"))
}

fn spin_invariance<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let basis = IdealBasis::<S>::canonical();
    let m = worst((0..ctx.iterations).map(|_| {
        let psi = random::even_real::<S>(&mut r);
        let s = S::spin(&mut r);
        let defect = basis.spin_invariance_defect(&psi, &s);
        mv_defect(&defect, &Multivector::zero())
    }));
    Ok(outcome(m, ctx.bound::<S>(1e-10), "Psi S t' = psi'^k t'_k after the change of generators"))
}

// fields

fn operator_identities<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let mut m = 0.0f64;
    for _ in 0..ctx.iterations {
        let f = AnalyticField::<S>::random(&mut r, 3);
        m = m.max(field_defect(&d(&d(&f))));
        m = m.max(field_defect(&delta(&delta(&f))));
        let ups = upsilon(&f);
        m = m.max(field_defect(&ups.minus(&upsilon_clifford(&f))));
        let lap = laplace(&f);
        for other in [laplace_split_square(&f), laplace_hodge(&f), laplace_wave(&f)] {
            m = m.max(field_defect(&lap.minus(&other)));
        }
        let star_star = field::star(&field::star(&f));
        let signed = f.map_linear(&|v| {
            Multivector::from_fn(|i| {
                let k = Blade::new(i as u8).expect("mask").grade();
                if k % 2 == 1 { v.coeffs()[i].clone() } else { v.coeffs()[i].negated() }
            })
        });
        m = m.max(field_defect(&star_star.minus(&signed)));
        m = m.max(field_defect(&laplace(&d(&f)).minus(&d(&lap))));
        m = m.max(field_defect(&laplace(&delta(&f)).minus(&delta(&lap))));
        m = m.max(field_defect(&laplace(&ups).minus(&upsilon(&lap))));
        m = m.max(field_defect(&laplace(&field::star(&f)).minus(&field::star(&lap))));
    }
    Ok(outcome(
        m,
        ctx.bound::<S>(1e-9),
        "d^2 = delta^2 = 0, Upsilon = d - delta = e^mu d_mu, four Laplacians agree, star star sign, Laplacian commutes with d, delta, Upsilon, star",
    ))
}

fn grid_d_squared(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let dims = [4; 4];
    let values: Vec<Multivector<Exact>> = (0..256).map(|_| random::multivector(&mut r)).collect();
    let h = [rational(1, 2), rational(1, 3), rational(1, 1), rational(3, 2)];
    let f = GridField::from_fn(dims, h, Execution::default(), |c| {
        values[((c[0] * 4 + c[1]) * 4 + c[2]) * 4 + c[3]].clone()
    });
    let m = field_defect(&d(&d(&f))).max(field_defect(&delta(&delta(&f))));
    Ok(outcome(m, Bound::AtMost(0.0), "central differences commute, so d^2 = delta^2 = 0 exactly on the lattice"))
}

fn grid_laplace_routes(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let k: [f64; 4] = std::array::from_fn(|_| random::index(&mut r, 3) as f64);
    let n = 8;
    let h = [2.0 * PI / n as f64; 4];
    let field = AnalyticField::<Float>::plane_wave(random::multivector(&mut r), &k)
        .plus(&AnalyticField::plane_wave(random::multivector(&mut r), &k.map(|x| -x)));
    let (g, warnings) = GridField::sample(&field, [n; 4], h, Execution::default());
    let lap = laplace(&g);
    let scale = lap.max_norm().max(1.0);
    let m = worst(
        [laplace_split_square(&g), laplace_hodge(&g), laplace_wave(&g)].iter().map(|o| lap.minus(o).max_norm() / scale),
    );
    Ok(outcome(m, Bound::AtMost(ctx.tol(1e-10)), format!("relative spread of four Laplacians on an 8^4 lattice; {} warnings", warnings.len())))
}

/// Errors of grid `Υ` for a plane wave with `|p| h ≈ 0.098`, at `h` and `h/2`.
pub fn upsilon_convergence(exec: Execution) -> (f64, f64) {
    let p = [0.0, 1.0, 0.0, 0.0];
    let wave = AnalyticField::<Float>::plane_wave(Multivector::basis(&[0, 1]).add(&Multivector::one()), &p);
    let n = 64;
    let h = 2.0 * PI / n as f64;
    let (coarse, _) = grid_upsilon_error(&wave, [4, n, 4, 4], [1.0, h, 1.0, 1.0], exec);
    let (fine, _) = grid_upsilon_error(&wave, [4, 2 * n, 4, 4], [1.0, h / 2.0, 1.0, 1.0], exec);
    (coarse, fine)
}

fn grid_convergence(_: &Ctx) -> Result<Outcome> {
    let (coarse, fine) = upsilon_convergence(Execution::default());
    Ok(outcome(coarse / fine, Bound::Within(3.2, 4.8), format!("Upsilon error {coarse:.3e} -> {fine:.3e} under h -> h/2")))
}

// equations

fn rest_momentum<S: SuiteScalar>() -> [S::Real; 4] {
    [S::real(1, 1), S::real(0, 1), S::real(0, 1), S::real(0, 1)]
}

/// Rest-frame momentum plus three boosted on-shell momenta for `m = 1`.
pub fn test_momenta<S: SuiteScalar>(rng: &mut TestRng) -> Result<Vec<[S::Real; 4]>> {
    let mut out = vec![rest_momentum::<S>()];
    for _ in 0..3 {
        let s = random::open_unit_rational(rng);
        let a = random::small_rational(rng, 3);
        let b = random::small_rational(rng, 3);
        let p = boosted_momentum(&rational(1, 1), &s, &a, &b)?;
        out.push(std::array::from_fn(|mu| S::real_from_rational(&p[mu])));
    }
    Ok(out)
}

fn system<S: SuiteScalar>(rng: &mut TestRng, canonical: bool) -> Result<DiracSystem<S>> {
    let m = S::real(random::index(rng, 4) as i64 + 1, 2);
    if canonical {
        DiracSystem::canonical(m)
    } else {
        DiracSystem::with_generators(m, S::generators(rng), if S::EXACT { 0.0 } else { 1e-10 })
    }
}

/// Real 1-form field with a few polynomial and plane-wave terms.
pub fn random_potential<S: SuiteScalar>(rng: &mut TestRng) -> AnalyticField<S> {
    AnalyticField::random_supported(rng, 2, true, |b| b.grade() == 1)
}

fn random_bispinor_field<S: SuiteScalar>(rng: &mut TestRng) -> AnalyticField<S> {
    AnalyticField::random_supported(rng, 3, false, |b| b.index() < 4)
}

fn check_tol<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        1e-9
    }
}

fn translation<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    use EquationForm::*;
    let mut r = ctx.rng();
    let tol = check_tol::<S>();
    let mut m = 0.0f64;
    let mut detected = 0;
    for k in 0..ctx.iterations {
        let sys = system::<S>(&mut r, k % 2 == 0)?;
        let a = random_potential::<S>(&mut r);
        let psi = random_bispinor_field::<S>(&mut r);
        let r_dirac = sys.residual(Dirac, &psi, &a, tol)?;
        if field_defect(&r_dirac) > 0.0 {
            detected += 1;
        }
        let theta = translate(&sys, Dirac, Ideal, &psi)?;
        let r_ideal = sys.residual(Ideal, &theta, &a, tol)?;
        m = m.max(field_defect(&translate_residual(&sys, Dirac, Ideal, &r_dirac)?.minus(&r_ideal)));
        let even = translate(&sys, Ideal, Hestenes, &theta)?;
        let r_h = sys.residual(Hestenes, &even, &a, tol)?;
        m = m.max(field_defect(&translate_residual(&sys, Ideal, Hestenes, &r_ideal)?.minus(&r_h)));
        m = m.max(field_defect(&r_h.right_mul(sys.basis().t()).minus(&r_ideal)));
        let r_t = sys.residual(Tensor, &even, &a, tol)?;
        m = m.max(field_defect(&r_t.minus(&r_h)));
        m = m.max(field_defect(&translate(&sys, Tensor, Dirac, &even)?.minus(&psi)));
    }
    Ok(outcome(
        m,
        ctx.bound::<S>(1e-10),
        format!("{} random non-solution states ({detected} with nonzero residual); residuals map across dirac, ideal, hde, tde", ctx.iterations),
    ))
}

fn plane_waves<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let sys = DiracSystem::<S>::canonical(S::real(1, 1))?;
    let tol = check_tol::<S>();
    let mut m = 0.0f64;
    let mut count = 0;
    for p in test_momenta::<S>(&mut r)? {
        for energy in [Energy::Positive, Energy::Negative] {
            for which in 0..2 {
                for form in EquationForm::ALL {
                    let state = plane_wave(&sys, form, &p, energy, which)?;
                    let res = sys.residual(form, &state, &state.zero_like(), tol)?;
                    m = m.max(if S::EXACT { field_defect(&res) } else { res.max_norm_by(&sys.norm_fn(form)) });
                    count += 1;
                }
            }
        }
    }
    Ok(outcome(m, ctx.bound::<S>(1e-12), format!("{count} plane-wave solutions (rest frame and three boosts, both energies, all forms)")))
}

fn ilk_reductions<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let mut m = 0.0f64;
    for k in 0..ctx.iterations {
        let sys = system::<S>(&mut r, k % 2 == 1)?;
        let a = random_potential::<S>(&mut r);
        let rho = AnalyticField::<S>::random(&mut r, 3);
        for reduction in Reduction::ALL {
            m = m.max(field_defect(&reduction_defect(&sys, reduction, &rho, &a)));
        }
    }
    Ok(outcome(m, ctx.bound::<S>(1e-10), format!("{} random states, three idempotents", ctx.iterations)))
}

fn gauge(ctx: &Ctx) -> Result<Outcome> {
    use EquationForm::*;
    let mut r = ctx.rng();
    let sys = DiracSystem::<Float>::canonical(1.0)?;
    let lambdas = [
        Poly::variable(1).scale(&0.3),
        Poly::variable(0).mul(&Poly::variable(2)).scale(&0.2).add(&Poly::variable(3).pow(2).scale(&-0.1)),
        Poly::variable(0).pow(3).scale(&0.05).add(&Poly::variable(1).mul(&Poly::variable(2)).scale(&0.4)),
    ];
    let mut m = 0.0f64;
    for form in EquationForm::ALL {
        let norm = sys.norm_fn(form);
        let solution = plane_wave(&sys, form, &rest_momentum::<Float>(), Energy::Positive, 0)?;
        for _ in 0..ctx.iterations.div_ceil(4) {
            let random_state = match form {
                Dirac | Ideal | Hestenes | Tensor => translate(&sys, Dirac, form, &random_bispinor_field::<Float>(&mut r))?,
                _ => AnalyticField::random(&mut r, 3),
            };
            let a = random_potential::<Float>(&mut r);
            for lambda in &lambdas {
                for (state, pot) in [(&solution, solution.zero_like()), (&random_state, a.clone())] {
                    let before = sys.operator(form, state, &pot).probe_values();
                    let (s2, a2) = gauge_transform(&sys, form, state, &pot, lambda);
                    let after = sys.operator(form, &s2, &a2).probe_values();
                    let change = before.iter().zip(&after).map(|(x, y)| (norm(x) - norm(y)).abs());
                    m = m.max(worst(change));
                }
            }
        }
    }
    Ok(outcome(m, Bound::AtMost(ctx.tol(1e-10)), "pointwise residual norm change under state exp(lambda J), A - d lambda"))
}

fn covariance<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    use EquationForm::*;
    let mut r = ctx.rng();
    let tol = check_tol::<S>();
    let sys = DiracSystem::<S>::canonical(S::real(1, 1))?;
    let mut m = 0.0f64;
    for _ in 0..ctx.iterations.div_ceil(4) {
        let s = S::spin(&mut r);
        let a = random_potential::<S>(&mut r);
        for form in [Dirac, Ideal, Hestenes, Tensor] {
            let wave = plane_wave(&sys, form, &rest_momentum::<S>(), Energy::Positive, 0)?;
            let (moved, a0) = covariance_transform(&sys, form, &s, &wave, &wave.zero_like(), tol)?;
            m = m.max(field_defect(&sys.operator(form, &moved, &a0)));
            let state = translate(&sys, Dirac, form, &random_bispinor_field::<S>(&mut r))?;
            let before = sys.operator(form, &state, &a);
            let (moved, a2) = covariance_transform(&sys, form, &s, &state, &a, 1e-10)?;
            let (expected, _) = covariance_transform(&sys, form, &s, &before, &a.zero_like(), 1e-10)?;
            m = m.max(relative_defect(&sys.operator(form, &moved, &a2), &expected));
        }
        // Bispinor and Hestenes transforms commute with translation.
        let psi = random_bispinor_field::<S>(&mut r);
        let even = translate(&sys, Dirac, Hestenes, &psi)?;
        let (psi_moved, _) = covariance_transform(&sys, Dirac, &s, &psi, &a, 1e-10)?;
        let (even_moved, _) = covariance_transform(&sys, Hestenes, &s, &even, &a, 1e-10)?;
        m = m.max(relative_defect(&translate(&sys, Hestenes, Dirac, &even_moved)?, &psi_moved));
    }
    Ok(outcome(m, ctx.bound::<S>(1e-10), "boosted solutions stay solutions; residuals of random states transform covariantly (relative)"))
}

fn global_spin<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    use EquationForm::*;
    let mut r = ctx.rng();
    let sys = DiracSystem::<S>::canonical(S::real(1, 1))?;
    let wave = plane_wave(&sys, Tensor, &rest_momentum::<S>(), Energy::Positive, 0)?;
    let mut m = 0.0f64;
    for _ in 0..ctx.iterations.div_ceil(4) {
        let s = S::spin(&mut r);
        let a = random_potential::<S>(&mut r);
        let (moved_sys, moved) = global_spin_transform(&sys, &s, &wave)?;
        m = m.max(field_defect(&moved_sys.operator(Tensor, &moved, &moved.zero_like())));
        let before = sys.operator(Tensor, &wave, &a);
        let after = moved_sys.operator(Tensor, &moved, &a);
        m = m.max(field_defect(&after.minus(&before.right_mul(s.element()))));
    }
    Ok(outcome(m, ctx.bound::<S>(1e-10), "(Phi S, S*HS, S*IS) maps residual R to R S"))
}

fn current_conservation<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    use EquationForm::*;
    let mut r = ctx.rng();
    let sys = DiracSystem::<S>::canonical(S::real(1, 1))?;
    let tol = check_tol::<S>();
    let momenta = test_momenta::<S>(&mut r)?;
    let mut m = 0.0f64;
    let mut min_density = f64::INFINITY;
    for (k, p) in momenta.iter().enumerate() {
        let q = &momenta[(k + 1) % momenta.len()];
        let phi = plane_wave(&sys, Tensor, p, Energy::Positive, 0)?.plus(&plane_wave(&sys, Tensor, q, Energy::Positive, 1)?);
        let j = current(&sys, &phi, tol)?;
        m = m.max(field_defect(&j.divergence)).max(field_defect(&j.codifferential));
        m = m.max(field_defect(&j.trace_components.minus(&j.vector)));
        for v in j.vector.probe_values() {
            min_density = min_density.min(v.coeff(Blade::vector(0)).re);
        }
    }
    for _ in 0..ctx.iterations.div_ceil(4) {
        let phi = AnalyticField::<S>::random_supported(&mut r, 3, true, |b| b.grade() % 2 == 0);
        let j = current(&sys, &phi, tol)?;
        m = m.max(field_defect(&j.trace_components.minus(&j.vector)));
    }
    if min_density <= 0.0 {
        return Ok(outcome(f64::INFINITY, ctx.bound::<S>(1e-12), format!("j^0 not positive: {min_density}")));
    }
    let _ = Dirac;
    Ok(outcome(
        m,
        ctx.bound::<S>(1e-12),
        format!("divergence of j for superposed plane waves; J = Phi H Phi* is a real 1-form; min j^0 = {min_density:.3}"),
    ))
}

/// Grid divergence of the current of two superposed tensor-form plane
/// waves on a 16^4 lattice at spacing `h` and `h/2`. The cross term's
/// wave vector `q` fits the box in both runs.
pub fn current_convergence(exec: Execution) -> Result<(f64, f64)> {
    let sys = DiracSystem::<Float>::canonical(1.0)?;
    let rest = [1.0, 0.0, 0.0, 0.0];
    let boosted = boosted_momentum(&1.0, &0.5, &1.0, &0.0)?;
    let phi = plane_wave(&sys, EquationForm::Tensor, &rest, Energy::Positive, 0)?
        .plus(&plane_wave(&sys, EquationForm::Tensor, &boosted, Energy::Positive, 1)?);
    let j = current(&sys, &phi, 1e-12)?;
    let q = [rest[0] - boosted[0], rest[1] - boosted[1]];
    let h = [4.0 * PI / (16.0 * q[0].abs()), 8.0 * PI / (16.0 * q[1].abs()), 1.0, 1.0];
    let (coarse, w1) = grid_divergence(&j.vector, [16; 4], h, exec);
    let (fine, w2) = grid_divergence(&j.vector, [16; 4], h.map(|x| x / 2.0), exec);
    if !w1.is_empty() || !w2.is_empty() {
        return Err(Error::NumericalFailure(format!("sampling is not periodic: {}", [w1, w2].concat().join("; "))));
    }
    Ok((coarse, fine))
}

fn current_grid(_: &Ctx) -> Result<Outcome> {
    let (coarse, fine) = current_convergence(Execution::default())?;
    Ok(outcome(coarse / fine, Bound::Within(3.2, 4.8), format!("grid divergence {coarse:.3e} -> {fine:.3e} under h -> h/2 on 16^4")))
}

fn maxwell<S: SuiteScalar>(ctx: &Ctx) -> Result<Outcome> {
    let mut r = ctx.rng();
    let sys = DiracSystem::<S>::canonical(S::real(1, 1))?;
    let tol = check_tol::<S>();
    let wave = plane_wave(&sys, EquationForm::Tensor, &rest_momentum::<S>(), Energy::Positive, 0)?;
    let (matter, _, _) = lagrangian(&sys, &wave, &wave.zero_like());
    let mut m = field_defect(&matter);
    for _ in 0..ctx.iterations.div_ceil(4) {
        let a = random_potential::<S>(&mut r);
        let (direct, components) = trace_f_squared(&a);
        m = m.max(field_defect(&direct.minus(&components)));
        let res = maxwell_residuals(&sys, &wave, &a, tol)?;
        m = m.max(field_defect(&res.field_strength)).max(field_defect(&res.sign_relation));
    }
    let constant = AnalyticField::<S>::constant(Multivector::basis_vector(1));
    m = m.max(field_defect(&trace_f_squared(&constant).0));
    Ok(outcome(
        m,
        ctx.bound::<S>(1e-10),
        "Tr(HCI) = 0 on solutions, Tr(F^2) = -f^{mu nu} f_{mu nu}/2, dA = F, delta F = -(d_mu f^{mu nu}) lowered",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn ids_are_unique_and_prefixed() {
        let ids = check_ids(Suite::All);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        for s in Suite::MODULES {
            for id in check_ids(s) {
                assert!(id.starts_with(s.name()));
            }
        }
    }
}
