//! `Lambda_{-t}(f)` and `Psi_t(f)` as functions of a complex `t`.
//!
//! Inside the unit disk everything is a convergent series. Outside, values
//! come from integrating the logarithmic derivative along a path that keeps
//! clear of the roots of unity where the continued function has regular
//! singularities.

pub mod continuation;
pub mod quadrature;
pub mod residues;
pub mod series;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fixpoints::CyclotomicClassFunction;
use crate::groups::GroupData;

pub use continuation::{continue_along_path, lambda_at, minus_one_defined, psi_eval, Continued, MinusOne, PathSpec};
pub use residues::{residues, Classification, ResidueEntry, SingularityReport};

/// Largest group order used directly as the period `n` of the singular set;
/// bigger groups use their exponent, which gives the same singularities.
pub const PERIOD_ORDER_CAP: u128 = 1024;

/// `n` such that every singular point of `Lambda_{-t}(f)(c_j)` is an `n`-th
/// root of unity: `|G|` for small groups, else the group exponent.
pub fn singular_period(g: &GroupData) -> u64 {
    let order = g.order();
    if order <= PERIOD_ORDER_CAP {
        order as u64
    } else {
        g.exponent()
    }
}

/// Class function `sum_j f_j chi_j` in the basis of class indicators.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexClassFunction {
    pub values: Vec<Complex64>,
}

impl ComplexClassFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::ClassFunctionMismatch(format!("non-finite value {v}")));
        }
        Ok(ComplexClassFunction { values })
    }

    pub fn constant(l: usize, c: Complex64) -> Self {
        ComplexClassFunction { values: vec![c; l] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_group(&self, g: &GroupData) -> Result<()> {
        if self.len() != g.class_count() {
            return Err(Error::SizeMismatch(self.len(), g.class_count()));
        }
        Ok(())
    }

    /// Parse `{"0": 1, "1": [0.5, -0.25]}`; every class id of a group with
    /// `l` classes must appear once.
    pub fn from_json(text: &str, l: usize) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Value {
            Real(f64),
            Pair([f64; 2]),
        }
        let map: BTreeMap<usize, Value> =
            serde_json::from_str(text).map_err(|e| Error::ClassFunctionMismatch(e.to_string()))?;
        if map.len() != l || map.keys().copied().ne(0..l) {
            return Err(Error::ClassFunctionMismatch(format!(
                "expected values for class ids 0..{l}, got {:?}",
                map.keys().collect::<Vec<_>>()
            )));
        }
        Self::new(
            map.into_values()
                .map(|v| match v {
                    Value::Real(re) => Complex64::new(re, 0.0),
                    Value::Pair([re, im]) => Complex64::new(re, im),
                })
                .collect(),
        )
    }
}

impl From<&CyclotomicClassFunction> for ComplexClassFunction {
    fn from(f: &CyclotomicClassFunction) -> Self {
        ComplexClassFunction { values: f.values() }
    }
}

fn check_disk(t: Complex64) -> Result<()> {
    if t.norm() >= 1.0 {
        return Err(Error::OutsideDisk(t.norm()));
    }
    Ok(())
}

/// `log Lambda_{-t}(f)(c_j) = -sum_{k>=1} f(c_j^k) t^k / k` for `|t| < 1`.
///
/// Terms are added until `max|f| |t|^{K+1} / ((K+1)(1-|t|))`, a bound on the
/// remaining tail, drops below `tol`.
pub fn log_lambda_series(
    g: &GroupData,
    f: &ComplexClassFunction,
    j: usize,
    t: Complex64,
    tol: f64,
) -> Result<Complex64> {
    f.check_group(g)?;
    check_disk(t)?;
    let m = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let r = t.norm();
    let table = g.power_table();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut tk = Complex64::new(1.0, 0.0);
    let mut rk1 = r;
    let mut k = 1u64;
    loop {
        tk *= t;
        sum -= f.values[table.get(j, k)] * tk / k as f64;
        rk1 *= r;
        if m * rk1 / ((k + 1) as f64 * (1.0 - r)) < tol {
            return Ok(sum);
        }
        k += 1;
    }
}

pub fn lambda_eval(g: &GroupData, f: &ComplexClassFunction, j: usize, t: Complex64, tol: f64) -> Result<Complex64> {
    Ok(log_lambda_series(g, f, j, t, tol)?.exp())
}

/// `H(alpha, u) = sum_{k>=0} u^k / (k + alpha)` for `alpha > 0`, `|u| < 1`.
pub fn hurwitz_h(alpha: f64, u: Complex64, tol: f64) -> Result<Complex64> {
    let r = u.norm();
    if alpha <= 0.0 || r >= 1.0 || !alpha.is_finite() {
        return Err(Error::HurwitzDomain { abs_u: r, alpha });
    }
    let mut sum = Complex64::new(1.0 / alpha, 0.0);
    let mut uk = Complex64::new(1.0, 0.0);
    let mut rk1 = r;
    let mut k = 1u64;
    while rk1 / ((k as f64 + alpha) * (1.0 - r)) >= tol {
        uk *= u;
        sum += uk / (k as f64 + alpha);
        rk1 *= r;
        k += 1;
    }
    Ok(sum)
}

/// `log Lambda_{-t}(f)(c_j)` regrouped by residue of `k` modulo `n`:
/// `-sum_{r<n} f(c_j^{r+1}) t^{r+1} / n * H((r+1)/n, t^n)`.
pub fn log_lambda_via_hurwitz(
    g: &GroupData,
    f: &ComplexClassFunction,
    j: usize,
    t: Complex64,
    tol: f64,
) -> Result<Complex64> {
    f.check_group(g)?;
    check_disk(t)?;
    let n = singular_period(g);
    let table = g.power_table();
    let tn = t.powu(n as u32);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut tr1 = Complex64::new(1.0, 0.0);
    for r in 0..n {
        tr1 *= t;
        let h = hurwitz_h((r + 1) as f64 / n as f64, tn, tol / n as f64)?;
        sum -= f.values[table.get(j, r + 1)] * tr1 / n as f64 * h;
    }
    Ok(sum)
}
