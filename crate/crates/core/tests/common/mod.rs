//! Independent oracles used by the integration tests. Nothing here calls
//! into the crate's own norm/minimal-polynomial machinery: the resultant
//! goes through a Sylvester matrix with Bareiss elimination, and the
//! minimal polynomial through floating-point expansion of the root product.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// det of the Sylvester matrix of f and g (ascending coefficients, trimmed),
/// via fraction-free Bareiss elimination. For monic f this equals the
/// product of g over the roots of f.
pub fn sylvester_resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let trim = |c: &[BigInt]| {
        let mut v = c.to_vec();
        while v.last().map(|x| x.is_zero()).unwrap_or(false) {
            v.pop();
        }
        v
    };
    let f = trim(f);
    let g = trim(g);
    assert!(!f.is_empty() && !g.is_empty(), "resultant of zero polynomial");
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // n rows of f coefficients (descending), then m rows of g.
    for row in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }

    let mut sign = 1i32;
    let mut denom = BigInt::one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &denom;
            }
            mat[i][k] = BigInt::zero();
        }
        denom = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Coefficients of prod_{j=1..d} (t - 2cos(2 pi j / r)) by floating-point
/// expansion, rounded to integers. Returns (rounded, max rounding error).
pub fn float_min_poly(r: u64) -> (Vec<BigInt>, f64) {
    let d = ((r - 1) / 2) as usize;
    let mut coeffs = vec![1.0f64];
    for j in 1..=d {
        let root = 2.0 * (2.0 * std::f64::consts::PI * j as f64 / r as f64).cos();
        let mut next = vec![0.0f64; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * root;
        }
        coeffs = next;
    }
    let mut max_err: f64 = 0.0;
    let rounded = coeffs
        .iter()
        .map(|&c| {
            let r = c.round();
            max_err = max_err.max((c - r).abs());
            BigInt::from(r as i64)
        })
        .collect();
    (rounded, max_err)
}

/// Numeric product of the Galois conjugates of an element given by its
/// power-basis coefficients; the conjugates substitute 2cos(2 pi m / r).
pub fn float_norm(r: u64, coeffs: &[BigInt]) -> f64 {
    let d = ((r - 1) / 2) as usize;
    let mut product = 1.0f64;
    for m in 1..=d {
        let alpha = 2.0 * (2.0 * std::f64::consts::PI * m as f64 / r as f64).cos();
        let mut value = 0.0f64;
        for c in coeffs.iter().rev() {
            let cf = c.to_string().parse::<f64>().expect("decimal parses");
            value = value * alpha + cf;
        }
        product *= value;
    }
    product
}

/// |n| as f64 comparison helper.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

#[allow(dead_code)]
pub fn unused() {}
