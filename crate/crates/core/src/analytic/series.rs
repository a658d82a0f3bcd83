//! Truncated power series in `t` for `log Lambda_{-t}`, `Lambda_{-t}` and
//! `Psi_t` at one conjugacy class.

use num_complex::Complex64;

use crate::groups::GroupData;

/// Coefficients `b_0..=b_d` of `exp(A(t))` for `A(t) = sum_{k>=1} a_k t^k`
/// (`a[0]` is ignored). Uses `n b_n = sum_{k=1}^n k a_k b_{n-k}`.
pub fn exp_series(a: &[Complex64]) -> Vec<Complex64> {
    let d = a.len().saturating_sub(1);
    let mut b = vec![Complex64::new(0.0, 0.0); d + 1];
    b[0] = Complex64::new(1.0, 0.0);
    for n in 1..=d {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=n {
            acc += a[k] * b[n - k] * k as f64;
        }
        b[n] = acc / n as f64;
    }
    b
}

/// `log Lambda_{-t}(f)(c_j) = -sum_{k>=1} f(c_j^k) t^k / k`, through degree `d`.
pub fn log_lambda_coefficients(g: &GroupData, f: &[Complex64], class: usize, d: usize) -> Vec<Complex64> {
    let table = g.power_table();
    let mut a = vec![Complex64::new(0.0, 0.0); d + 1];
    for (k, coeff) in a.iter_mut().enumerate().skip(1) {
        *coeff = -f[table.get(class, k as u64)] / k as f64;
    }
    a
}

pub fn lambda_coefficients(g: &GroupData, f: &[Complex64], class: usize, d: usize) -> Vec<Complex64> {
    exp_series(&log_lambda_coefficients(g, f, class, d))
}

/// `Psi_t(f)(c_j) = (Lambda_{-t}(f)(c_j) - 1) / (-t)` through degree `d`:
/// the `i`-th coefficient is `-lambda_{i+1}`.
pub fn psi_coefficients(g: &GroupData, f: &[Complex64], class: usize, d: usize) -> Vec<Complex64> {
    lambda_coefficients(g, f, class, d + 1)
        .into_iter()
        .skip(1)
        .map(|c| -c)
        .collect()
}

/// Largest coefficient deviation of `Psi_t(f)` from the constant series `f`,
/// over all classes, through degree `d`.
pub fn psi_fixed_point_residual(g: &GroupData, f: &[Complex64], d: usize) -> f64 {
    (0..g.class_count())
        .map(|j| {
            psi_coefficients(g, f, j, d)
                .iter()
                .enumerate()
                .map(|(i, &c)| if i == 0 { (c - f[j]).norm() } else { c.norm() })
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
