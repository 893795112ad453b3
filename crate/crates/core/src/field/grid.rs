//! Periodic lattice fields with central-difference derivatives.

use std::f64::consts::PI;

use serde_json::{json, Value};

use super::analytic::AnalyticField;
use super::{FieldOps, ValueMap, ValuePairing};
use crate::error::{Error, Result};
use crate::literal::{self, BasisSymbol, LiteralScalar};
use crate::multivector::Multivector;
use crate::par::{map_range, Execution};
use crate::scalar::{Field, Float, RealField, Scalar};

const MAGIC: &[u8; 4] = b"STGF";
const VERSION: u32 = 1;

/// Lattice with `dims[mu]` points and spacing `h[mu]` along axis `mu`,
/// periodic in every axis. Values are stored site-major with the last axis
/// fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField<S: Scalar> {
    dims: [usize; 4],
    h: [S::Real; 4],
    values: Vec<Multivector<S>>,
    exec: Execution,
}

/// Shape metadata carried by dumps.
#[derive(Clone, Debug, PartialEq)]
pub struct GridHeader {
    pub dims: [usize; 4],
    pub h: [f64; 4],
    pub basis: BasisSymbol,
}

impl<S: Scalar> GridField<S> {
    pub fn from_fn(
        dims: [usize; 4],
        h: [S::Real; 4],
        exec: Execution,
        f: impl Fn([usize; 4]) -> Multivector<S> + Sync + Send,
    ) -> Self {
        let n = dims.iter().product();
        let values = map_range(n, exec, |site| f(site_coords(&dims, site)));
        GridField { dims, h, values, exec }
    }

    pub fn constant(dims: [usize; 4], h: [S::Real; 4], value: &Multivector<S>) -> Self {
        Self::from_fn(dims, h, Execution::default(), |_| value.clone())
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn spacing(&self) -> &[S::Real; 4] {
        &self.h
    }

    pub fn values(&self) -> &[Multivector<S>] {
        &self.values
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.dims == other.dims && self.h == other.h
    }

    pub fn site_count(&self) -> usize {
        self.values.len()
    }

    pub fn header(&self, basis: BasisSymbol) -> GridHeader {
        GridHeader { dims: self.dims, h: std::array::from_fn(|mu| self.h[mu].to_f64()), basis }
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.same_shape(other),
            "grid fields on different lattices: {:?} vs {:?}",
            self.dims,
            other.dims
        );
    }

    fn pointwise(&self, f: impl Fn(usize) -> Multivector<S> + Sync + Send) -> Self {
        GridField {
            dims: self.dims,
            h: self.h.clone(),
            values: map_range(self.values.len(), self.exec, f),
            exec: self.exec,
        }
    }

    /// Index of the site displaced by `step` along `mu`, wrapping around.
    fn shifted(&self, site: usize, mu: usize, step: isize) -> usize {
        let mut c = site_coords(&self.dims, site);
        let n = self.dims[mu] as isize;
        c[mu] = (c[mu] as isize + step).rem_euclid(n) as usize;
        site_index(&self.dims, &c)
    }
}

impl GridField<Float> {
    /// Samples at `x^mu = i_mu h_mu` on the box `[0, n h)^4`. The second
    /// value lists terms that are not periodic on that box.
    pub fn sample<S: Scalar>(
        field: &AnalyticField<S>,
        dims: [usize; 4],
        h: [f64; 4],
        exec: Execution,
    ) -> (Self, Vec<String>) {
        let grid = Self::from_fn(dims, h, exec, |c| {
            let x: [f64; 4] = std::array::from_fn(|mu| c[mu] as f64 * h[mu]);
            field.evaluate(&x)
        });
        (grid, aliasing_warnings(field, dims, h))
    }

    pub fn to_json(&self, basis: BasisSymbol) -> Value {
        json!({
            "dims": self.dims,
            "h": self.h,
            "basis": basis.letter().to_string(),
            "values": self.values.iter().map(|v| {
                Value::Array(v.coeffs().iter().map(LiteralScalar::to_json).collect())
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<(Self, GridHeader)> {
        let malformed = |m: &str| Error::Malformed(format!("grid dump: {m}"));
        let dims: [usize; 4] = serde_json::from_value(v.get("dims").cloned().ok_or_else(|| malformed("missing dims"))?)?;
        let h: [f64; 4] = serde_json::from_value(v.get("h").cloned().ok_or_else(|| malformed("missing h"))?)?;
        let basis = match v.get("basis").and_then(Value::as_str) {
            Some(s) => s.parse::<BasisSymbol>().map_err(|e| malformed(&e))?,
            None => BasisSymbol::E,
        };
        let raw = v.get("values").and_then(Value::as_array).ok_or_else(|| malformed("missing values"))?;
        let values = raw
            .iter()
            .map(|site| {
                let cs = site.as_array().filter(|a| a.len() == 16).ok_or_else(|| malformed("site needs 16 coefficients"))?;
                let coeffs: Vec<Float> = cs.iter().map(Float::from_json).collect::<Result<_>>()?;
                Ok(Multivector::from_fn(|i| coeffs[i]))
            })
            .collect::<Result<Vec<_>>>()?;
        let grid = Self::from_parts(dims, h, values)?;
        Ok((grid, GridHeader { dims, h, basis }))
    }

    pub fn from_parts(dims: [usize; 4], h: [f64; 4], values: Vec<Multivector<Float>>) -> Result<Self> {
        if dims.contains(&0) || values.len() != dims.iter().product::<usize>() {
            return Err(Error::Shape(format!("{} values for lattice {:?}", values.len(), dims)));
        }
        Ok(GridField { dims, h, values, exec: Execution::default() })
    }

    /// Little-endian binary dump: magic `STGF`, version, dims, spacings,
    /// basis letter, then 16 `(re, im)` pairs per site.
    pub fn to_bytes(&self, basis: BasisSymbol) -> Vec<u8> {
        let mut out = Vec::with_capacity(61 + self.values.len() * 256);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        for n in self.dims {
            out.extend_from_slice(&(n as u32).to_le_bytes());
        }
        for h in self.h {
            out.extend_from_slice(&h.to_le_bytes());
        }
        out.push(basis.letter() as u8);
        for v in &self.values {
            for c in v.coeffs() {
                out.extend_from_slice(&c.re.to_le_bytes());
                out.extend_from_slice(&c.im.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<(Self, GridHeader)> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(Error::Malformed("grid dump: bad magic".into()));
        }
        let version = r.u32()?;
        if version != VERSION {
            return Err(Error::Malformed(format!("grid dump: unsupported version {version}")));
        }
        let mut dims = [0usize; 4];
        for d in &mut dims {
            *d = r.u32()? as usize;
        }
        let mut h = [0.0; 4];
        for x in &mut h {
            *x = r.f64()?;
        }
        let basis = match r.take(1)?[0] {
            b'e' => BasisSymbol::E,
            b'l' => BasisSymbol::L,
            other => return Err(Error::Malformed(format!("grid dump: unknown basis tag {other}"))),
        };
        let n: usize = dims.iter().product();
        let mut values = Vec::with_capacity(n);
        for _ in 0..n {
            let mut coeffs = [Float::new(0.0, 0.0); 16];
            for c in &mut coeffs {
                *c = Float::new(r.f64()?, r.f64()?);
            }
            values.push(Multivector::from_coeffs(coeffs));
        }
        if r.pos != bytes.len() {
            return Err(Error::Malformed("grid dump: trailing bytes".into()));
        }
        Ok((Self::from_parts(dims, h, values)?, GridHeader { dims, h, basis }))
    }

    /// Largest pointwise distance to an analytic field sampled on the same sites.
    pub fn max_error_against<S: Scalar>(&self, exact: &AnalyticField<S>) -> f64 {
        let h = self.h;
        let dims = self.dims;
        map_range(self.values.len(), self.exec, |site| {
            let c = site_coords(&dims, site);
            let x: [f64; 4] = std::array::from_fn(|mu| c[mu] as f64 * h[mu]);
            self.values[site].sub(&exact.evaluate(&x)).norm()
        })
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl<S: LiteralScalar> GridField<S> {
    /// Short human-readable summary.
    pub fn describe(&self) -> String {
        let nonzero = self.values.iter().filter(|v| !v.is_zero()).count();
        format!("lattice {:?}, {} nonzero sites", self.dims, nonzero)
    }

    pub fn value_literal(&self, site: usize, basis: BasisSymbol) -> String {
        literal::format(&self.values[site], basis)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let end = self.pos + n;
        let slice = self
            .bytes
            .get(self.pos..end)
            .ok_or_else(|| Error::Malformed("grid dump: truncated".into()))?;
        self.pos = end;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

/// Terms of `field` that do not repeat on the box `[0, n h)^4`.
pub fn aliasing_warnings<S: Scalar>(field: &AnalyticField<S>, dims: [usize; 4], h: [f64; 4]) -> Vec<String> {
    let mut out = Vec::new();
    for (k, t) in field.terms().iter().enumerate() {
        if t.powers != [0; 4] {
            out.push(format!("term {k}: polynomial factor {:?} is not periodic", t.powers));
        }
        if t.phase.degree() > 1 {
            out.push(format!("term {k}: phase of degree {} is not periodic", t.phase.degree()));
            continue;
        }
        for (a, p) in t.phase.terms() {
            let mu = a.iter().position(|&e| e == 1).expect("linear phase");
            let turns = p.to_f64() * dims[mu] as f64 * h[mu] / (2.0 * PI);
            if (turns - turns.round()).abs() > 1e-9 {
                out.push(format!(
                    "term {k}: p_{mu} n h = 2π·{turns:.6} is not a multiple of 2π (aliasing)"
                ));
            }
        }
    }
    out
}

fn site_coords(dims: &[usize; 4], mut site: usize) -> [usize; 4] {
    let mut c = [0; 4];
    for mu in (0..4).rev() {
        c[mu] = site % dims[mu];
        site /= dims[mu];
    }
    c
}

fn site_index(dims: &[usize; 4], c: &[usize; 4]) -> usize {
    (0..4).fold(0, |acc, mu| acc * dims[mu] + c[mu])
}

impl<S: Scalar> FieldOps<S> for GridField<S> {
    fn zero_like(&self) -> Self {
        self.pointwise(|_| Multivector::zero())
    }

    fn constant_like(&self, value: &Multivector<S>) -> Self {
        self.pointwise(|_| value.clone())
    }

    /// `(f(x + h e_mu) - f(x - h e_mu)) / (2h)`.
    fn partial(&self, mu: usize) -> Self {
        let two_h = self.h[mu].plus(&self.h[mu]);
        let inv = S::from_real(two_h.recip().expect("nonzero spacing"));
        self.pointwise(|site| {
            let fwd = &self.values[self.shifted(site, mu, 1)];
            let bwd = &self.values[self.shifted(site, mu, -1)];
            fwd.sub(bwd).scale(&inv)
        })
    }

    fn plus(&self, other: &Self) -> Self {
        self.check_shape(other);
        self.pointwise(|s| self.values[s].add(&other.values[s]))
    }

    fn scaled(&self, c: &S) -> Self {
        self.pointwise(|s| self.values[s].scale(c))
    }

    fn map_linear(&self, f: ValueMap<'_, S>) -> Self {
        self.pointwise(|s| f(&self.values[s]))
    }

    fn map_real_linear(&self, f: ValueMap<'_, S>) -> Self {
        self.map_linear(f)
    }

    fn product_with(&self, other: &Self, f: ValuePairing<'_, S>) -> Self {
        self.check_shape(other);
        self.pointwise(|s| f(&self.values[s], &other.values[s]))
    }

    fn probe_values(&self) -> Vec<Multivector<Float>> {
        map_range(self.values.len(), self.exec, |s| self.values[s].to_float())
    }

    fn is_identically_zero(&self) -> bool {
        self.values.iter().all(Multivector::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{d, upsilon};
    use crate::random::{self, rng};
    use crate::scalar::{rational, Exact};

    #[test]
    fn coordinates_round_trip() {
        let dims = [3, 4, 5, 6];
        for site in 0..360 {
            assert_eq!(site_index(&dims, &site_coords(&dims, site)), site);
        }
    }

    #[test]
    fn exact_grid_d_squared_vanishes() {
        let mut r = rng(11, 0);
        let vals: Vec<Multivector<Exact>> = (0..256).map(|_| random::multivector(&mut r)).collect();
        let h = [rational(1, 2), rational(1, 3), rational(1, 1), rational(2, 1)];
        let f = GridField::from_fn([4; 4], h, Execution::Sequential, |c| vals[site_index(&[4; 4], &c)].clone());
        assert!(d(&d(&f)).is_identically_zero());
    }

    #[test]
    fn binary_and_json_dumps_round_trip() {
        let p = [1.0, 0.0, 0.0, 0.0];
        let wave = AnalyticField::<Float>::plane_wave(Multivector::basis(&[0, 1]), &p);
        let (g, warnings) = GridField::sample(&wave, [4; 4], [PI / 2.0; 4], Execution::Sequential);
        assert!(warnings.is_empty());
        let (back, header) = GridField::from_bytes(&g.to_bytes(BasisSymbol::L)).unwrap();
        assert_eq!(back.values(), g.values());
        assert_eq!(back.spacing(), g.spacing());
        assert_eq!(header.basis, BasisSymbol::L);
        let (back, _) = GridField::from_json(&g.to_json(BasisSymbol::E)).unwrap();
        assert_eq!(back.values(), g.values());
    }

    #[test]
    fn mismatched_box_warns() {
        let wave = AnalyticField::<Float>::plane_wave(Multivector::one(), &[1.0, 0.0, 0.0, 0.0]);
        let (_, warnings) = GridField::sample(&wave, [4; 4], [0.3; 4], Execution::Sequential);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let wave = AnalyticField::<Float>::plane_wave(Multivector::basis(&[2]), &[0.0, 1.0, 1.0, 0.0]);
        let (g, _) = GridField::sample(&wave, [8; 4], [PI / 4.0; 4], Execution::Sequential);
        let a = upsilon(&g);
        let b = upsilon(&g.with_execution(Execution::Parallel));
        assert_eq!(a.values(), b.values());
    }
}
