//! Residues of `d/dt log Lambda_{-t}(f)(c_j)` at roots of unity.
//!
//! With `n` the period of the singular set,
//! `d/dt log Lambda = -sum_{r<n} f(c_j^{r+1}) t^r / (1 - t^n)` and
//! `Res_{t=z} t^r / (1 - t^n) = -z^{r+1} / n`, so the residue at
//! `w^p` (`w = exp(2 pi i / n)`) is `k_p = (1/n) sum_r w^{p(r+1)} f(c_j^{r+1})`.
//! Near `w^p` the continued function behaves like `(t - w^p)^{k_p}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{singular_period, ComplexClassFunction};
use crate::error::Result;
use crate::groups::GroupData;

/// Absolute tolerance for deciding that `k_p` is an integer.
pub const INTEGER_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Regular,
    /// Zero of the given order.
    RemovableZero {
        order: u64,
    },
    /// Pole of the given order.
    Pole {
        order: u64,
    },
    BranchPoint,
}

impl Classification {
    pub fn from_residue(k: Complex64) -> Self {
        let nearest = k.re.round();
        if (k - Complex64::new(nearest, 0.0)).norm() > INTEGER_TOL {
            Classification::BranchPoint
        } else if nearest >= 1.0 {
            Classification::RemovableZero { order: nearest as u64 }
        } else if nearest <= -1.0 {
            Classification::Pole {
                order: (-nearest) as u64,
            }
        } else {
            Classification::Regular
        }
    }

    /// Finite value at the point (possibly zero).
    pub fn is_finite(self) -> bool {
        matches!(self, Classification::Regular | Classification::RemovableZero { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueEntry {
    pub p: u64,
    pub root: [f64; 2],
    pub residue: [f64; 2],
    pub is_integer: bool,
    pub classification: Classification,
}

impl ResidueEntry {
    pub fn root(&self) -> Complex64 {
        Complex64::new(self.root[0], self.root[1])
    }

    pub fn residue(&self) -> Complex64 {
        Complex64::new(self.residue[0], self.residue[1])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub class_id: usize,
    pub n: u64,
    pub entries: Vec<ResidueEntry>,
}

pub fn root_of_unity(n: u64, p: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (p % n) as f64 / n as f64)
}

/// `k_p` at a single `p`.
pub fn residue_at(g: &GroupData, f: &ComplexClassFunction, j: usize, n: u64, p: u64) -> Complex64 {
    let table = g.power_table();
    let mut sum = Complex64::new(0.0, 0.0);
    for r in 0..n {
        // Reduce the exponent first so large n does not lose phase accuracy.
        let e = (p as u128 * (r + 1) as u128 % n as u128) as u64;
        sum += root_of_unity(n, e) * f.values[table.get(j, r + 1)];
    }
    sum / n as f64
}

pub fn residues(g: &GroupData, f: &ComplexClassFunction, j: usize) -> Result<SingularityReport> {
    f.check_group(g)?;
    let n = singular_period(g);
    let entries = (0..n)
        .map(|p| {
            let k = residue_at(g, f, j, n, p);
            let root = root_of_unity(n, p);
            let classification = Classification::from_residue(k);
            ResidueEntry {
                p,
                root: [root.re, root.im],
                residue: [k.re, k.im],
                is_integer: classification != Classification::BranchPoint,
                classification,
            }
        })
        .collect();
    Ok(SingularityReport {
        class_id: j,
        n,
        entries,
    })
}
