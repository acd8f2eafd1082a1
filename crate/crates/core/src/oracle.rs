//! Slow, structurally independent reference implementations.
//!
//! Everything here exists to cross-examine the fast kernels in
//! [`crate::matrix`]: a factorial-time permanent, an ODE-based matrix
//! exponential, and eigenvalues from explicit characteristic
//! polynomials. None of it shares code with the implementations under
//! test.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Largest dimension accepted by the naive permanent (n! growth).
pub const NAIVE_PERMANENT_MAX_DIM: usize = 10;

/// Permanent by first-row Laplace expansion. Exponentially slower than
/// the production kernel and sharing none of its structure.
pub fn naive_permanent(a: &CMatrix) -> Result<C64> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "permanent needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() > NAIVE_PERMANENT_MAX_DIM {
        return Err(Error::Capability(format!(
            "naive permanent supports dimension <= {}, got {}",
            NAIVE_PERMANENT_MAX_DIM,
            a.rows()
        )));
    }
    fn expand(a: &CMatrix, row: usize, used: &mut [bool]) -> C64 {
        let n = a.rows();
        if row == n {
            return C64::new(1.0, 0.0);
        }
        let mut acc = C64::new(0.0, 0.0);
        for col in 0..n {
            if used[col] {
                continue;
            }
            let entry = a[(row, col)];
            if entry.norm() == 0.0 {
                continue;
            }
            used[col] = true;
            acc += entry * expand(a, row + 1, used);
            used[col] = false;
        }
        acc
    }
    let mut used = vec![false; a.rows()];
    Ok(expand(a, 0, &mut used))
}

/// Matrix exponential `exp(a t)` by integrating `U' = a U` from the
/// identity with fixed-step RK4, doubling the step count until two
/// consecutive runs agree to `tol` in max-abs.
pub fn expm_ode(a: &CMatrix, t: f64, tol: f64) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "matrix exponential needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !t.is_finite() {
        return Err(Error::Validation(format!("propagation time must be finite, got {}", t)));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Validation(format!("tolerance must be positive, got {}", tol)));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(CMatrix::identity(0));
    }

    let run = |steps: usize| -> CMatrix {
        let h = t / steps as f64;
        let mut u = CMatrix::identity(n);
        for _ in 0..steps {
            let k1 = a.mul(&u);
            let mut stage = u.clone();
            stage.add_scaled_assign(C64::new(0.5 * h, 0.0), &k1);
            let k2 = a.mul(&stage);
            let mut stage = u.clone();
            stage.add_scaled_assign(C64::new(0.5 * h, 0.0), &k2);
            let k3 = a.mul(&stage);
            let mut stage = u.clone();
            stage.add_scaled_assign(C64::new(h, 0.0), &k3);
            let k4 = a.mul(&stage);
            let w = h / 6.0;
            u.add_scaled_assign(C64::new(w, 0.0), &k1);
            u.add_scaled_assign(C64::new(2.0 * w, 0.0), &k2);
            u.add_scaled_assign(C64::new(2.0 * w, 0.0), &k3);
            u.add_scaled_assign(C64::new(w, 0.0), &k4);
        }
        u
    };

    let scale = a.one_norm() * t.abs();
    let mut steps = 32usize.max((16.0 * scale).ceil() as usize);
    let mut coarse = run(steps);
    for _ in 0..12 {
        steps *= 2;
        let fine = run(steps);
        let residual = coarse.max_abs_diff(&fine);
        if residual <= tol {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(Error::Convergence { op: "ode matrix exponential", residual: f64::NAN, iterations: steps })
}

/// Roots of `z^2 + b z + c` with complex coefficients, picked for
/// cancellation-free subtraction.
pub fn quadratic_roots(b: C64, c: C64) -> [C64; 2] {
    let disc = (b * b - 4.0 * c).sqrt();
    // Choose the sign that enlarges |b + sign * disc|.
    let plus = b + disc;
    let minus = b - disc;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };
    if big.norm() == 0.0 {
        return [C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    }
    let r1 = -big / 2.0;
    let r2 = c / r1;
    [r1, r2]
}

/// Roots of `z^3 + a z^2 + b z + c` by Cardano's method in complex
/// arithmetic.
pub fn cubic_roots(a: C64, b: C64, c: C64) -> [C64; 3] {
    // Depress: z = t - a/3 gives t^3 + p t + q.
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = c + (2.0 * a * a * a - 9.0 * a * b) / 27.0;
    if p.norm() == 0.0 && q.norm() == 0.0 {
        return [-shift; 3];
    }
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u3 = -q / 2.0 + disc;
    if u3.norm() < 1e-3 * (q.norm() / 2.0 + disc.norm()) {
        u3 = -q / 2.0 - disc;
    }
    let u = u3.cbrt();
    let v = if u.norm() == 0.0 { C64::new(0.0, 0.0) } else { -p / (3.0 * u) };
    let omega = C64::new(-0.5, 0.75f64.sqrt());
    let omega2 = omega.conj();
    [
        u + v - shift,
        omega * u + omega2 * v - shift,
        omega2 * u + omega * v - shift,
    ]
}

/// Eigenvalues of a 2x2 or 3x3 matrix straight from the characteristic
/// polynomial, bypassing the iterative factorization entirely.
pub fn charpoly_roots(a: &CMatrix) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    match a.rows() {
        2 => {
            let tr = a.trace();
            let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
            Ok(quadratic_roots(-tr, det).to_vec())
        }
        3 => {
            let tr = a.trace();
            let tr2 = a.mul(a).trace();
            let minors = (tr * tr - tr2) / 2.0;
            let det = a[(0, 0)] * (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)])
                - a[(0, 1)] * (a[(1, 0)] * a[(2, 2)] - a[(1, 2)] * a[(2, 0)])
                + a[(0, 2)] * (a[(1, 0)] * a[(2, 1)] - a[(1, 1)] * a[(2, 0)]);
            Ok(cubic_roots(-tr, minors, -det).to_vec())
        }
        n => Err(Error::Capability(format!(
            "characteristic-polynomial eigenvalues cover dimensions 2 and 3, got {}",
            n
        ))),
    }
}

/// Worst pairing distance between two eigenvalue multisets under greedy
/// nearest-neighbour matching.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "multiset comparison needs equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for &x in a {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for (j, &y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (x - y).norm();
            if d < best {
                best = d;
                best_j = j;
            }
        }
        used[best_j] = true;
        worst = worst.max(best);
    }
    Ok(worst)
}
