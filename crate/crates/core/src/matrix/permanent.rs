//! Matrix permanent via Ryser's inclusion-exclusion formula with Gray-code
//! subset updates, O(2^n * n) instead of the naive O(n! * n).

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Largest order accepted; 2^20 subset sweeps is the point where the cost
/// stops being interactive, and nothing in this library needs more modes.
pub const PERMANENT_MAX_DIM: usize = 20;

/// Permanent of a square matrix.
///
/// perm(A) = (-1)^n sum over nonempty column subsets S of (-1)^|S|
/// prod_i sum_{j in S} a_ij. Subsets are walked in Gray-code order so each
/// step updates the row sums with one column.
pub fn permanent(a: &CMatrix) -> Result<C64> {
    let n = a.ensure_square("permanent")?;
    a.ensure_finite("permanent")?;
    if n > PERMANENT_MAX_DIM {
        return Err(Error::Capability(format!(
            "permanent supports order up to {}, got {}",
            PERMANENT_MAX_DIM, n
        )));
    }
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }

    let zero = C64::new(0.0, 0.0);
    let mut row_sums = vec![zero; n];
    let mut total = zero;
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let next = k ^ (k >> 1);
        let flipped = next ^ gray;
        let j = flipped.trailing_zeros() as usize;
        if next & flipped != 0 {
            for i in 0..n {
                row_sums[i] += a[(i, j)];
            }
        } else {
            for i in 0..n {
                row_sums[i] -= a[(i, j)];
            }
        }
        gray = next;
        let mut prod = C64::new(1.0, 0.0);
        for s in &row_sums {
            prod *= s;
        }
        // Sign (-1)^(n - |S|) folds the leading (-1)^n into the subset term.
        if (n as u32).wrapping_sub(next.count_ones()) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}
