//! Adaptive Gauss-Kronrod (7/15 point) integration along straight segments
//! in the complex plane.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Cap on the number of panels a single segment may be split into.
pub const MAX_PANELS: usize = 20_000;

/// One G7/K15 panel on `[a, b]`: Kronrod value and `|K15 - G7|`.
fn panel<F: Fn(Complex64) -> Complex64>(f: &F, a: Complex64, b: Complex64) -> (Complex64, f64) {
    let mid = (a + b) * 0.5;
    let half = (b - a) * 0.5;
    let centre = f(mid);
    let mut kronrod = centre * WGK[7];
    let mut gauss = centre * WG[3];
    for i in 0..7 {
        let v = f(mid + half * XGK[i]) + f(mid - half * XGK[i]);
        kronrod += v * WGK[i];
        if i % 2 == 1 {
            gauss += v * WG[i / 2];
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

struct Panel {
    a: Complex64,
    b: Complex64,
    value: Complex64,
    err: f64,
}

/// `int_a^b f(z) dz` along the segment.
///
/// Globally adaptive: the panel with the largest error estimate is bisected
/// until the summed estimate is below `tol` (or at rounding level relative to
/// the integral).
pub fn integrate_segment<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let (value, err) = panel(f, a, b);
    let mut panels = vec![Panel { a, b, value, err }];
    let (mut total, mut err_sum) = (value, err);
    loop {
        if err_sum <= tol || err_sum <= 1e-14 * total.norm() {
            // Re-add to shed drift from the running sum.
            return Ok(panels.iter().map(|p| p.value).sum());
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::Quadrature(panels.len()));
        }
        let worst = (0..panels.len())
            .max_by(|&i, &j| panels[i].err.total_cmp(&panels[j].err))
            .expect("at least one panel");
        let old = panels.swap_remove(worst);
        total -= old.value;
        err_sum -= old.err;
        let mid = (old.a + old.b) * 0.5;
        for (lo, hi) in [(old.a, mid), (mid, old.b)] {
            let (value, err) = panel(f, lo, hi);
            total += value;
            err_sum += err;
            panels.push(Panel {
                a: lo,
                b: hi,
                value,
                err,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let f = |z: Complex64| z * z * z + Complex64::new(2.0, 0.0);
        let (a, b) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0));
        let got = integrate_segment(&f, a, b, 1e-13).unwrap();
        let want = b.powu(4) / 4.0 + b * 2.0;
        assert!((got - want).norm() < 1e-13);
    }

    #[test]
    fn log_derivative_along_unit_square() {
        // Integral of 1/z around a square about 0 is 2 pi i.
        let f = |z: Complex64| 1.0 / z;
        let pts = [
            Complex64::new(1.0, -1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, -1.0),
        ];
        let total: Complex64 = pts
            .windows(2)
            .map(|w| integrate_segment(&f, w[0], w[1], 1e-12).unwrap())
            .sum();
        assert!((total - Complex64::new(0.0, 2.0 * std::f64::consts::PI)).norm() < 1e-10);
    }
}
