//! Analytic continuation of `Lambda_{-t}(f)(c_j)` along polylines.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::integrate_segment;
use super::residues::{residue_at, root_of_unity, Classification};
use super::{log_lambda_series, singular_period, ComplexClassFunction};
use crate::error::{Error, Result};
use crate::groups::GroupData;

pub const DEFAULT_CLEARANCE: f64 = 0.05;

/// Polyline starting inside the unit disk.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub waypoints: Vec<Complex64>,
    /// Smallest allowed distance from the path to a root of unity.
    pub min_clearance: f64,
}

impl PathSpec {
    pub fn new(waypoints: Vec<Complex64>) -> Self {
        PathSpec {
            waypoints,
            min_clearance: DEFAULT_CLEARANCE,
        }
    }

    pub fn with_clearance(mut self, min_clearance: f64) -> Self {
        self.min_clearance = min_clearance;
        self
    }

    /// Parse whitespace-separated `re,im` pairs.
    pub fn parse(text: &str) -> Result<Self> {
        let waypoints = text
            .split_whitespace()
            .map(|pair| {
                let (re, im) = pair
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidPath(format!("expected re,im, got {pair:?}")))?;
                let parse = |s: &str| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::InvalidPath(format!("{s:?}: {e}")))
                };
                Ok(Complex64::new(parse(re)?, parse(im)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PathSpec::new(waypoints))
    }

    /// Closed polygon with `sides` vertices on the circle `|t - centre| = radius`,
    /// starting and ending at `centre + radius`.
    pub fn circle(centre: Complex64, radius: f64, sides: usize) -> Self {
        let waypoints = (0..=sides)
            .map(|i| centre + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * i as f64 / sides as f64))
            .collect();
        PathSpec::new(waypoints)
    }

    /// Check the start is in the open unit disk and every segment keeps
    /// `min_clearance` from all `n`-th roots of unity.
    pub fn validate(&self, n: u64) -> Result<()> {
        let Some(&start) = self.waypoints.first() else {
            return Err(Error::InvalidPath("no waypoints".into()));
        };
        if start.norm() >= 1.0 {
            return Err(Error::InvalidPath(format!("start {start} is not inside the unit disk")));
        }
        if let Some(w) = self.waypoints.iter().find(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::InvalidPath(format!("non-finite waypoint {w}")));
        }
        for seg in self.waypoints.windows(2) {
            for p in 0..n {
                let z = root_of_unity(n, p);
                let d = segment_distance(seg[0], seg[1], z);
                if d < self.min_clearance {
                    return Err(Error::InvalidPath(format!(
                        "segment {} -> {} passes within {d:.3e} of {z}",
                        seg[0], seg[1]
                    )));
                }
            }
        }
        if self.waypoints.len() == 1 {
            let d = (0..n)
                .map(|p| (start - root_of_unity(n, p)).norm())
                .fold(f64::INFINITY, f64::min);
            if d < self.min_clearance {
                return Err(Error::InvalidPath(format!(
                    "start {start} is within {d:.3e} of a root of unity"
                )));
            }
        }
        Ok(())
    }
}

fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let s = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (a + ab * s - z).norm()
}

/// `d/dt log Lambda_{-t}(f)(c_j) = -sum_{r<P} f(c_j^{r+1}) t^r / (1 - t^P)`
/// with `P = ord_j`. Outside the unit circle the fraction is rewritten in
/// `1/t` so large `|t|` does not overflow.
pub fn log_derivative(g: &GroupData, f: &ComplexClassFunction, j: usize, t: Complex64) -> Complex64 {
    let period = g.classes()[j].order;
    let table = g.power_table();
    let vals = (0..period).map(|r| f.values[table.get(j, r + 1)]);
    if t.norm() <= 1.0 {
        let mut num = Complex64::new(0.0, 0.0);
        let mut tr = Complex64::new(1.0, 0.0);
        for v in vals {
            num += v * tr;
            tr *= t;
        }
        -num / (Complex64::new(1.0, 0.0) - tr)
    } else {
        let s = 1.0 / t;
        let sp = s.powu(period as u32);
        // t^r / (1 - t^P) = s^{P-r} / (s^P - 1)
        let mut num = Complex64::new(0.0, 0.0);
        let mut spr = sp;
        for v in vals {
            num += v * spr;
            spr *= t;
        }
        -num / (sp - 1.0)
    }
}

/// Continued value and its logarithm (the branch picked by the path).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Continued {
    pub log_value: Complex64,
    pub value: Complex64,
}

pub fn continue_along_path(
    g: &GroupData,
    f: &ComplexClassFunction,
    j: usize,
    path: &PathSpec,
    tol: f64,
) -> Result<Continued> {
    f.check_group(g)?;
    path.validate(singular_period(g))?;
    let start = path.waypoints[0];
    let mut log_value = log_lambda_series(g, f, j, start, tol / 10.0)?;
    let segments = path.waypoints.len().saturating_sub(1).max(1);
    let deriv = |t: Complex64| log_derivative(g, f, j, t);
    for seg in path.waypoints.windows(2) {
        log_value += integrate_segment(&deriv, seg[0], seg[1], tol / segments as f64)?;
    }
    Ok(Continued {
        log_value,
        value: log_value.exp(),
    })
}

/// `Lambda_{-t}(f)(c_j)`: the series inside the disk, otherwise continued
/// along the straight line from 0.
pub fn lambda_at(g: &GroupData, f: &ComplexClassFunction, j: usize, t: Complex64, tol: f64) -> Result<Complex64> {
    if t.norm() < 1.0 {
        return Ok(log_lambda_series(g, f, j, t, tol)?.exp());
    }
    let path = PathSpec::new(vec![Complex64::new(0.0, 0.0), t]);
    Ok(continue_along_path(g, f, j, &path, tol)?.value)
}

/// `Psi_t(f)(c_j) = (Lambda_{-t}(f)(c_j) - 1) / (-t)`. At `t = 0` the
/// limit `f(c_j)` is returned inside the error.
pub fn psi_eval(g: &GroupData, f: &ComplexClassFunction, j: usize, t: Complex64, tol: f64) -> Result<Complex64> {
    f.check_group(g)?;
    if t == Complex64::new(0.0, 0.0) {
        return Err(Error::PsiAtZero { limit: f.values[j] });
    }
    Ok((lambda_at(g, f, j, t, tol)? - 1.0) / (-t))
}

/// Whether `Lambda_1(f) = Lambda_{-t}(f)|_{t=-1}` makes sense.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum MinusOne {
    /// `|G|` is odd, so `-1` is never a singular point.
    DefinedEverywhere,
    /// `|G|` is even but every class has a finite value at `-1` for this `f`.
    Defined,
    /// Classes with a pole or branch point at `-1`.
    Divergent { classes: Vec<usize> },
}

pub fn minus_one_defined(g: &GroupData, f: &ComplexClassFunction) -> Result<MinusOne> {
    f.check_group(g)?;
    if g.order() % 2 == 1 {
        return Ok(MinusOne::DefinedEverywhere);
    }
    let n = singular_period(g);
    let classes: Vec<usize> = (0..g.class_count())
        .filter(|&j| !Classification::from_residue(residue_at(g, f, j, n, n / 2)).is_finite())
        .collect();
    Ok(if classes.is_empty() {
        MinusOne::Defined
    } else {
        MinusOne::Divergent { classes }
    })
}

/// One row of a sampled table of `Lambda` and `Psi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: [f64; 2],
    pub class_id: usize,
    pub lambda: [f64; 2],
    pub psi: [f64; 2],
}

pub fn sweep(g: &GroupData, f: &ComplexClassFunction, ts: &[Complex64], tol: f64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(ts.len() * g.class_count());
    for &t in ts {
        for j in 0..g.class_count() {
            let lambda = lambda_at(g, f, j, t, tol)?;
            let psi = match psi_eval(g, f, j, t, tol) {
                Err(Error::PsiAtZero { limit }) => limit,
                other => other?,
            };
            rows.push(SweepRow {
                t: [t.re, t.im],
                class_id: j,
                lambda: [lambda.re, lambda.im],
                psi: [psi.re, psi.im],
            });
        }
    }
    Ok(rows)
}
