//! Diagonal reduction of integer matrices over `Z/NZ`.
//!
//! Row and column operations are 2x2 Bezout transforms with determinant 1,
//! so they are invertible modulo every `N` and entries stay reduced in
//! `[0, N)`. The diagonal is not normalised to a divisibility chain; callers
//! only need `gcd(d_i, N)` per diagonal entry.

/// Result of [`diagonalize_mod`]: `P A Q = diag(diagonal)` for some
/// invertible `P`. `q` is stored column-major: `q[c]` is column `c`.
#[derive(Clone, Debug)]
pub struct ModDiagonal {
    pub modulus: u64,
    pub diagonal: Vec<u64>,
    pub q: Vec<Vec<u64>>,
}

/// Extended gcd on non-negative values: `(g, s, t)` with `s a + t b = g`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
    (g, t, s - (a / b) * t)
}

pub fn diagonalize_mod(rows: &[Vec<u64>], ncols: usize, modulus: u64) -> ModDiagonal {
    let n = modulus as i128;
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols);
            r.iter().map(|&x| x as i128 % n).collect()
        })
        .collect();
    let mut q: Vec<Vec<i128>> = (0..ncols)
        .map(|c| (0..ncols).map(|r| i128::from(r == c)).collect())
        .collect();
    let nrows = a.len();
    let mut diagonal = Vec::new();

    for t in 0..nrows.min(ncols) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut best: Option<(usize, usize, i128)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (k, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((i, k, v));
                }
            }
        }
        let Some((pi, pk, _)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pk);
        }
        q.swap(t, pk);

        loop {
            for i in t + 1..nrows {
                if a[i][t] != 0 {
                    row_combine(&mut a, t, i, t, n);
                }
            }
            let mut touched = false;
            for k in t + 1..ncols {
                if a[t][k] != 0 {
                    col_combine(&mut a, &mut q, t, k, t, n);
                    touched = true;
                }
            }
            if !touched || (t + 1..nrows).all(|i| a[i][t] == 0) {
                break;
            }
        }
        diagonal.push(a[t][t] as u64);
    }

    ModDiagonal {
        modulus,
        diagonal,
        q: q.into_iter()
            .map(|col| col.into_iter().map(|x| x.rem_euclid(n) as u64).collect())
            .collect(),
    }
}

/// Bezout coefficients that reduce to plain elimination when `x | y`, so a
/// pivot dividing its whole row and column is never disturbed.
fn bezout(x: i128, y: i128) -> (i128, i128, i128) {
    if y % x == 0 {
        (x, 1, 0)
    } else {
        ext_gcd(x, y)
    }
}

/// Replace rows `p` and `i` so that `a[p][c]` becomes `gcd(a[p][c], a[i][c])`
/// and `a[i][c]` becomes 0.
fn row_combine(a: &mut [Vec<i128>], p: usize, i: usize, c: usize, n: i128) {
    let (x, y) = (a[p][c], a[i][c]);
    let (g, s, t) = bezout(x, y);
    let (u, v) = (x / g, y / g);
    for k in 0..a[p].len() {
        let (ap, ai) = (a[p][k], a[i][k]);
        a[p][k] = (s * ap + t * ai).rem_euclid(n);
        a[i][k] = (u * ai - v * ap).rem_euclid(n);
    }
}

fn col_combine(a: &mut [Vec<i128>], q: &mut [Vec<i128>], p: usize, k: usize, r: usize, n: i128) {
    let (x, y) = (a[r][p], a[r][k]);
    let (g, s, t) = bezout(x, y);
    let (u, v) = (x / g, y / g);
    for row in a.iter_mut() {
        let (ap, ak) = (row[p], row[k]);
        row[p] = (s * ap + t * ak).rem_euclid(n);
        row[k] = (u * ak - v * ap).rem_euclid(n);
    }
    // Q's columns follow the same column operations.
    let (qp, qk) = (q[p].clone(), q[k].clone());
    for idx in 0..qp.len() {
        q[p][idx] = (s * qp[idx] + t * qk[idx]).rem_euclid(n);
        q[k][idx] = (u * qk[idx] - v * qp[idx]).rem_euclid(n);
    }
}
