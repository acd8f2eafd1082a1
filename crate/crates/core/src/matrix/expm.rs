//! Matrix exponential by scaling and squaring with diagonal Pade
//! approximants, following Higham's degree-selection rule.
//!
//! The propagators this feeds are taken at exceptional points, where the
//! generator is defective. Pade plus squaring never looks at eigenvectors,
//! so it has no trouble there; that is the reason this routine exists
//! instead of an eigendecomposition shortcut.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::matrix::lu::lu_factor;
use crate::matrix::CMatrix;

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.53939833006323e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068;
const THETA_13: f64 = 5.371920351148152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Evaluates the degree-m approximant given the even powers of `a`,
/// returning `(u, v)` with `exp(a) ~ (v - u)^-1 (v + u)`.
fn pade_uv(a: &CMatrix, powers: &[&CMatrix], b: &[f64]) -> (CMatrix, CMatrix) {
    let n = a.rows();
    // Odd coefficients build U = A * sum_k b_{2k+1} A^{2k}; even build V.
    let mut u_inner = CMatrix::identity(n).scale(real(b[1]));
    let mut v = CMatrix::identity(n).scale(real(b[0]));
    for (k, p) in powers.iter().enumerate() {
        u_inner.add_scaled_assign(real(b[2 * k + 3]), p);
        v.add_scaled_assign(real(b[2 * k + 2]), p);
    }
    (a.mul(&u_inner), v)
}

/// Degree-13 approximant; the high-order terms are factored through an
/// extra multiply by `a6` to keep the operation count down.
fn pade13_uv(a: &CMatrix, a2: &CMatrix, a4: &CMatrix, a6: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.rows();
    let b = &B13;
    let mut u_high = a6.scale(real(b[13]));
    u_high.add_scaled_assign(real(b[11]), a4);
    u_high.add_scaled_assign(real(b[9]), a2);
    let mut u_inner = a6.mul(&u_high);
    u_inner.add_scaled_assign(real(b[7]), a6);
    u_inner.add_scaled_assign(real(b[5]), a4);
    u_inner.add_scaled_assign(real(b[3]), a2);
    u_inner.add_scaled_assign(real(b[1]), &CMatrix::identity(n));
    let u = a.mul(&u_inner);

    let mut v_high = a6.scale(real(b[12]));
    v_high.add_scaled_assign(real(b[10]), a4);
    v_high.add_scaled_assign(real(b[8]), a2);
    let mut v = a6.mul(&v_high);
    v.add_scaled_assign(real(b[6]), a6);
    v.add_scaled_assign(real(b[4]), a4);
    v.add_scaled_assign(real(b[2]), a2);
    v.add_scaled_assign(real(b[0]), &CMatrix::identity(n));
    (u, v)
}

/// Computes `exp(a * t)`.
///
/// Correct for defective arguments; the only failure modes are bad input
/// (non-square or non-finite entries).
pub fn mat_exp(a: &CMatrix, t: f64) -> Result<CMatrix> {
    let n = a.ensure_square("mat_exp")?;
    a.ensure_finite("mat_exp")?;
    if !t.is_finite() {
        return Err(crate::error::Error::Validation("mat_exp given a non-finite time".into()));
    }
    if n == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    let scaled = a.scale(real(t));
    let norm = scaled.one_norm();
    if norm == 0.0 {
        return Ok(CMatrix::identity(n));
    }

    let a2 = scaled.mul(&scaled);
    let (u, v, squarings) = if norm <= THETA_3 {
        let (u, v) = pade_uv(&scaled, &[&a2], &B3);
        (u, v, 0)
    } else if norm <= THETA_5 {
        let a4 = a2.mul(&a2);
        let (u, v) = pade_uv(&scaled, &[&a2, &a4], &B5);
        (u, v, 0)
    } else if norm <= THETA_7 {
        let a4 = a2.mul(&a2);
        let a6 = a2.mul(&a4);
        let (u, v) = pade_uv(&scaled, &[&a2, &a4, &a6], &B7);
        (u, v, 0)
    } else if norm <= THETA_9 {
        let a4 = a2.mul(&a2);
        let a6 = a2.mul(&a4);
        let a8 = a4.mul(&a4);
        let (u, v) = pade_uv(&scaled, &[&a2, &a4, &a6, &a8], &B9);
        (u, v, 0)
    } else {
        let s = ((norm / THETA_13).log2().ceil() as i32).max(0);
        let down = scaled.scale(real(0.5f64.powi(s)));
        let a2 = down.mul(&down);
        let a4 = a2.mul(&a2);
        let a6 = a2.mul(&a4);
        let (u, v) = pade13_uv(&down, &a2, &a4, &a6);
        (u, v, s)
    };

    // exp(a) ~ (V - U)^-1 (V + U); the denominator is nonsingular for any
    // norm below the theta bound, so a singular pivot cannot occur here.
    let numer = v.add(&u);
    let denom = v.sub(&u);
    let mut x = lu_factor(&denom)?.solve_mat(&numer)?;
    for _ in 0..squarings {
        x = x.mul(&x);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn exp_of_zero_matrix_is_identity() {
        let z = CMatrix::zeros(4, 4);
        let e = mat_exp(&z, 1.0).unwrap();
        assert_eq!(e.max_abs_vs_identity(), 0.0);
    }

    #[test]
    fn exp_at_time_zero_is_identity() {
        let a = CMatrix::from_fn(3, |i, j| c(i as f64, j as f64));
        let e = mat_exp(&a, 0.0).unwrap();
        assert_eq!(e.max_abs_vs_identity(), 0.0);
    }

    #[test]
    fn exp_of_diagonal_is_entrywise_exp() {
        let lambda = [c(0.3, -1.2), c(-2.0, 0.7), c(0.0, 3.0)];
        let a = CMatrix::from_fn(3, |i, j| if i == j { lambda[i] } else { c(0.0, 0.0) });
        for &t in &[0.25, 1.0, 3.5] {
            let e = mat_exp(&a, t).unwrap();
            for i in 0..3 {
                let expect = (lambda[i] * t).exp();
                assert!((e[(i, i)] - expect).norm() < 1e-13 * expect.norm().max(1.0));
            }
            assert!(e[(0, 1)].norm() < 1e-14);
        }
    }

    #[test]
    fn exp_of_scaled_pauli_x_rotation() {
        // exp(-i (pi/4) sigma_x) = [[c, -is], [-is, c]] with c = s = 1/sqrt(2).
        let sx = CMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0)])
            .unwrap();
        let e = mat_exp(&sx, std::f64::consts::FRAC_PI_4).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect = CMatrix::new(
            2,
            2,
            vec![c(r, 0.0), c(0.0, -r), c(0.0, -r), c(r, 0.0)],
        )
        .unwrap();
        assert!(e.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn exp_of_jordan_block_carries_the_nilpotent_term() {
        // exp([[l, 1], [0, l]]) = e^l [[1, 1], [0, 1]]; defective on purpose.
        let l = c(-0.4, 1.1);
        let a = CMatrix::new(2, 2, vec![l, c(1.0, 0.0), c(0.0, 0.0), l]).unwrap();
        let e = mat_exp(&a, 1.0).unwrap();
        let el = l.exp();
        assert!((e[(0, 0)] - el).norm() < 1e-13);
        assert!((e[(0, 1)] - el).norm() < 1e-13);
        assert!(e[(1, 0)].norm() < 1e-14);
        assert!((e[(1, 1)] - el).norm() < 1e-13);
    }

    #[test]
    fn exp_at_the_coupler_exceptional_point() {
        // For H = [[0, 1], [1, -2i]] (defective), exp(-iH) has the closed
        // form e^-1 [[2, -i], [-i, 0]].
        let a = CMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(-2.0, 0.0)],
        )
        .unwrap();
        let e = mat_exp(&a, 1.0).unwrap();
        let w = (-1.0f64).exp();
        let expect = CMatrix::new(
            2,
            2,
            vec![c(2.0 * w, 0.0), c(0.0, -w), c(0.0, -w), c(0.0, 0.0)],
        )
        .unwrap();
        assert!(e.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn large_norm_takes_the_squaring_path() {
        // Norm ~ 40 forces degree 13 plus squaring; diagonal answer is exact.
        let a = CMatrix::from_fn(2, |i, j| if i == j { c(-20.0, 15.0) } else { c(0.0, 0.0) });
        let e = mat_exp(&a, 2.0).unwrap();
        let expect = (c(-20.0, 15.0) * 2.0).exp();
        assert!((e[(0, 0)] - expect).norm() < 1e-12 * expect.norm().max(1e-30));
    }

    #[test]
    fn semigroup_property_holds() {
        let a = CMatrix::new(
            3,
            3,
            vec![
                c(0.1, -0.3), c(0.5, 0.2), c(-0.4, 0.0),
                c(0.0, 0.9), c(-0.2, -0.1), c(0.3, 0.3),
                c(0.7, 0.1), c(-0.6, 0.4), c(0.0, -0.5),
            ],
        )
        .unwrap();
        let whole = mat_exp(&a, 1.7).unwrap();
        let part = mat_exp(&a, 0.9).unwrap().mul(&mat_exp(&a, 0.8).unwrap());
        assert!(whole.max_abs_diff(&part) < 1e-12);
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        assert!(mat_exp(&CMatrix::zeros(2, 3), 1.0).is_err());
        let mut a = CMatrix::identity(2);
        a[(1, 1)] = c(f64::INFINITY, 0.0);
        assert!(mat_exp(&a, 1.0).is_err());
        assert!(mat_exp(&CMatrix::identity(2), f64::NAN).is_err());
    }

    #[test]
    fn empty_matrix_round_trips() {
        let e = mat_exp(&CMatrix::zeros(0, 0), 1.0).unwrap();
        assert_eq!(e.rows(), 0);
    }
}
