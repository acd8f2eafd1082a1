//! Pivoted LU factorization, used for determinants and for the linear
//! solve inside the matrix exponential.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Compact LU factorization with partial pivoting: `P A = L U` stored in
/// one matrix, unit lower-triangular part implicit.
pub(crate) struct Lu {
    lu: CMatrix,
    pivots: Vec<usize>,
    swaps: usize,
}

pub(crate) fn lu_factor(a: &CMatrix) -> Result<Lu> {
    let n = a.ensure_square("LU factorization")?;
    a.ensure_finite("LU factorization")?;
    let mut lu = a.clone();
    let mut pivots = Vec::with_capacity(n);
    let mut swaps = 0usize;
    for k in 0..n {
        let mut p = k;
        let mut best = lu[(k, k)].norm();
        for i in (k + 1)..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        pivots.push(p);
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            swaps += 1;
        }
        let pivot = lu[(k, k)];
        if pivot.norm() == 0.0 {
            // Singular column: leave the zero pivot in place. The
            // determinant comes out exactly zero; solves will refuse it.
            continue;
        }
        for i in (k + 1)..n {
            let m = lu[(i, k)] / pivot;
            lu[(i, k)] = m;
            if m.norm() == 0.0 {
                continue;
            }
            for j in (k + 1)..n {
                let sub = m * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
        }
    }
    Ok(Lu { lu, pivots, swaps })
}

impl Lu {
    pub(crate) fn det(&self) -> C64 {
        let n = self.lu.rows();
        let sign = if self.swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut det = C64::new(sign, 0.0);
        for i in 0..n {
            det *= self.lu[(i, i)];
        }
        det
    }

    /// Solves `A X = B` for `X` given the factorization of `A`.
    pub(crate) fn solve_mat(&self, b: &CMatrix) -> Result<CMatrix> {
        let n = self.lu.rows();
        if b.rows() != n {
            return Err(Error::Dimension(format!(
                "solve: matrix is {}x{} but right-hand side has {} rows",
                n,
                n,
                b.rows()
            )));
        }
        for i in 0..n {
            if self.lu[(i, i)].norm() == 0.0 {
                return Err(Error::Consistency("linear solve hit a singular pivot".into()));
            }
        }
        let mut x = b.clone();
        // Apply the row swaps in factorization order.
        for (k, &p) in self.pivots.iter().enumerate() {
            if p != k {
                for j in 0..x.cols() {
                    let tmp = x[(k, j)];
                    x[(k, j)] = x[(p, j)];
                    x[(p, j)] = tmp;
                }
            }
        }
        // Forward substitution with the unit lower factor.
        for i in 1..n {
            for k in 0..i {
                let m = self.lu[(i, k)];
                if m.norm() == 0.0 {
                    continue;
                }
                for j in 0..x.cols() {
                    let sub = m * x[(k, j)];
                    x[(i, j)] -= sub;
                }
            }
        }
        // Back substitution with the upper factor.
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let m = self.lu[(i, k)];
                if m.norm() == 0.0 {
                    continue;
                }
                for j in 0..x.cols() {
                    let sub = m * x[(k, j)];
                    x[(i, j)] -= sub;
                }
            }
            let d = self.lu[(i, i)];
            for j in 0..x.cols() {
                x[(i, j)] /= d;
            }
        }
        Ok(x)
    }
}

/// Determinant via pivoted LU. Exact for triangular input up to the
/// product roundoff; zero (not an error) for singular input.
pub fn determinant(a: &CMatrix) -> Result<C64> {
    let n = a.ensure_square("determinant")?;
    a.ensure_finite("determinant")?;
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(lu_factor(a)?.det())
}
