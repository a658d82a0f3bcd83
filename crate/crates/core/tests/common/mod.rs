#![allow(dead_code)]

use std::f64::consts::PI;

use adams_fixpoints::analytic::continuation::log_derivative;
use adams_fixpoints::analytic::ComplexClassFunction;
use adams_fixpoints::groups::{FiniteGroupModel, GroupData};
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn data(m: FiniteGroupModel) -> GroupData {
    GroupData::new(m).unwrap()
}

/// `(1 / 2 pi i) * contour integral` of `d/dt log Lambda` over a circle, by
/// the trapezoid rule (spectrally accurate for periodic integrands).
pub fn contour_residue(g: &GroupData, f: &ComplexClassFunction, j: usize, centre: Complex64, radius: f64) -> Complex64 {
    let m = 512;
    let mut sum = c(0.0, 0.0);
    for i in 0..m {
        let w = Complex64::from_polar(1.0, 2.0 * PI * i as f64 / m as f64);
        // dt = i r w dtheta
        sum += log_derivative(g, f, j, centre + w * radius) * w * radius * c(0.0, 1.0);
    }
    sum * (2.0 * PI / m as f64) / c(0.0, 2.0 * PI)
}

/// Path from 0 to just inside `w`, once around `w` at `radius`, and back to
/// the same point.
pub fn loop_around(w: Complex64, radius: f64, sides: usize) -> Vec<Complex64> {
    let theta0 = (-w).arg();
    let mut pts = vec![c(0.0, 0.0)];
    for i in 0..=sides {
        pts.push(w + Complex64::from_polar(radius, theta0 + 2.0 * PI * i as f64 / sides as f64));
    }
    pts
}
