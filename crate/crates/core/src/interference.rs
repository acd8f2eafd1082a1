//! Two-particle coincidence statistics from scattering matrices.
//!
//! The transmission amplitude of two indistinguishable particles sent one
//! per input mode, both detected one per output mode, is the permanent of
//! the mode propagator for bosons and its determinant for fermions. All
//! of this module is built on that pair of matrix functions; the Lindblad
//! machinery in [`crate::lindblad`] reproduces the same curves from open
//! system dynamics and serves as the cross-check.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::{determinant, mat_exp, permanent, spectral_norm, CMatrix};
use crate::system::{build_effective_hamiltonian, ModeNetworkSpec, RotationMode, SectionLayout};

/// Slack allowed above exact unity before a probability is reported as is.
pub const PROB_CLIP: f64 = 1e-9;
/// Slack above unity treated as a numerical fault rather than roundoff.
pub const PROB_GUARD: f64 = 1e-6;
/// Passivity guard: largest singular value a propagator may reach.
pub const PASSIVITY_SLACK: f64 = 1e-10;

const ROTATION_UNITARITY_TOL: f64 = 1e-10;

/// Computation route that produced a coincidence point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Scattering,
    Lindblad,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Scattering => "scattering",
            Method::Lindblad => "lindblad",
            Method::ClosedForm => "closed_form",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scattering" => Ok(Method::Scattering),
            "lindblad" => Ok(Method::Lindblad),
            "closed_form" => Ok(Method::ClosedForm),
            other => Err(Error::Validation(format!(
                "unknown method '{}' (expected scattering, lindblad or closed_form)",
                other
            ))),
        }
    }
}

/// Coincidence probabilities for both statistics at one loss level.
#[derive(Debug, Clone, Copy)]
pub struct CoincidencePoint {
    pub gamma: f64,
    pub p_boson: f64,
    pub p_fermion: f64,
    pub method: Method,
}

/// A sweep over loss levels, tagged with a digest of the configuration
/// that generated it.
#[derive(Debug, Clone)]
pub struct CoincidenceCurve {
    pub points: Vec<CoincidencePoint>,
    pub spec_digest: String,
}

impl CoincidenceCurve {
    /// Validates monotonicity and bounds: strictly increasing gamma, one
    /// method throughout, probabilities within the clip window.
    pub fn new(points: Vec<CoincidencePoint>, spec_digest: String) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Validation("a curve needs at least one point".into()));
        }
        let method = points[0].method;
        for pair in points.windows(2) {
            if pair[1].gamma <= pair[0].gamma {
                return Err(Error::Validation(format!(
                    "curve gammas must strictly increase: {} then {}",
                    pair[0].gamma, pair[1].gamma
                )));
            }
        }
        for p in &points {
            if p.method != method {
                return Err(Error::Validation("curve mixes computation methods".into()));
            }
            for (name, v) in [("p_boson", p.p_boson), ("p_fermion", p.p_fermion)] {
                if !v.is_finite() || !(0.0..=1.0 + PROB_CLIP).contains(&v) {
                    return Err(Error::Validation(format!(
                        "{} = {} at gamma = {} is outside [0, 1]",
                        name, v, p.gamma
                    )));
                }
            }
        }
        Ok(CoincidenceCurve { points, spec_digest })
    }

    pub fn method(&self) -> Method {
        self.points[0].method
    }
}

/// Mode propagator `exp(-i H(gamma) z)`, checked to be passive (largest
/// singular value at most 1 + 1e-10).
pub fn propagator(spec: &ModeNetworkSpec, gamma: f64, z: f64) -> Result<CMatrix> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::Validation(format!(
            "propagation length must be finite and nonnegative, got {}",
            z
        )));
    }
    let h = build_effective_hamiltonian(spec, gamma)?;
    let generator = h.scale(C64::new(0.0, -1.0));
    let u = mat_exp(&generator, z)?;
    let sigma = spectral_norm(&u)?;
    if sigma > 1.0 + PASSIVITY_SLACK {
        return Err(Error::Consistency(format!(
            "propagator gained energy: largest singular value {:.12} at gamma = {}, z = {}",
            sigma, gamma, z
        )));
    }
    Ok(u)
}

/// `rotation-adjoint * exp(-i H(gamma) z) * rotation`: the lossy stretch
/// viewed in the frame singled out at the threshold.
pub fn sandwiched_propagator(
    spec: &ModeNetworkSpec,
    gamma: f64,
    z: f64,
    rotation: &CMatrix,
) -> Result<CMatrix> {
    if rotation.rows() != spec.n_modes() || rotation.cols() != spec.n_modes() {
        return Err(Error::Dimension(format!(
            "rotation is {}x{} for a {}-mode network",
            rotation.rows(),
            rotation.cols(),
            spec.n_modes()
        )));
    }
    let defect = rotation.unitarity_defect();
    if defect > ROTATION_UNITARITY_TOL {
        return Err(Error::Validation(format!(
            "rotation is not unitary: defect {:.3e}",
            defect
        )));
    }
    let u = propagator(spec, gamma, z)?;
    Ok(rotation.adjoint().mul(&u).mul(rotation))
}

/// Full transmission matrix through a layout.
///
/// Physical mode multiplies the per-section propagators (lossless
/// sections propagate at gamma = 0); the rotation argument is not
/// consulted. Abstract mode wraps the section product in the rotation
/// sandwich and therefore requires one.
pub fn layout_propagator(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    gamma: f64,
) -> Result<CMatrix> {
    layout.validate_against(spec)?;
    let mut u = CMatrix::identity(spec.n_modes());
    for section in &layout.sections {
        let g = if section.loss_on { gamma } else { 0.0 };
        let step = propagator(spec, g, section.length)?;
        u = step.mul(&u);
    }
    match layout.rotation_mode {
        RotationMode::Physical => Ok(u),
        RotationMode::Abstract => {
            let r = rotation.ok_or_else(|| {
                Error::Validation("abstract rotation mode needs a rotation matrix".into())
            })?;
            if r.rows() != spec.n_modes() || r.cols() != spec.n_modes() {
                return Err(Error::Dimension(format!(
                    "rotation is {}x{} for a {}-mode network",
                    r.rows(),
                    r.cols(),
                    spec.n_modes()
                )));
            }
            let defect = r.unitarity_defect();
            if defect > ROTATION_UNITARITY_TOL {
                return Err(Error::Validation(format!(
                    "rotation is not unitary: defect {:.3e}",
                    defect
                )));
            }
            Ok(r.adjoint().mul(&u).mul(r))
        }
    }
}

/// `(|perm|^2, |det|^2)` of a transmission matrix, clipped into
/// `[0, 1 + 1e-9]`; anything above `1 + 1e-6` is a numerical fault.
pub fn coincidence_probabilities(u1: &CMatrix) -> Result<(f64, f64)> {
    u1.ensure_square("coincidence probabilities")?;
    let p_boson = permanent(u1)?.norm_sqr();
    let p_fermion = determinant(u1)?.norm_sqr();
    for (name, v) in [("boson", p_boson), ("fermion", p_fermion)] {
        if v > 1.0 + PROB_GUARD {
            return Err(Error::Consistency(format!(
                "{} coincidence probability {} exceeds 1",
                name, v
            )));
        }
    }
    Ok((p_boson.min(1.0 + PROB_CLIP), p_fermion.min(1.0 + PROB_CLIP)))
}

/// One scattering-method point at loss level `gamma`.
pub fn coincidence_at(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    gamma: f64,
) -> Result<CoincidencePoint> {
    let u1 = layout_propagator(spec, layout, rotation, gamma)?;
    let (p_boson, p_fermion) = coincidence_probabilities(&u1)?;
    Ok(CoincidencePoint { gamma, p_boson, p_fermion, method: Method::Scattering })
}

/// Uniform inclusive grid. A single-point grid is allowed when the range
/// collapses to one value.
pub fn gamma_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !lo.is_finite() || !hi.is_finite() || lo < 0.0 {
        return Err(Error::Validation(format!(
            "gamma range must be finite and nonnegative, got [{}, {}]",
            lo, hi
        )));
    }
    match steps {
        0 => Err(Error::Validation("a sweep needs at least one point".into())),
        1 => {
            if hi != lo {
                return Err(Error::Validation(
                    "a single-point sweep needs gamma_min = gamma_max".into(),
                ));
            }
            Ok(vec![lo])
        }
        n => {
            if hi <= lo {
                return Err(Error::Validation(format!(
                    "sweep range needs gamma_max > gamma_min, got [{}, {}]",
                    lo, hi
                )));
            }
            // The last point is pinned so the grid hits gamma_max
            // exactly regardless of rounding in the interior points.
            Ok((0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
                    }
                })
                .collect())
        }
    }
}

/// Scattering-method sweep over a gamma grid; points come back in grid
/// order regardless of scheduling.
#[cfg(feature = "parallel")]
pub fn sweep_gamma(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    grid: &[f64],
    digest: &str,
) -> Result<CoincidenceCurve> {
    use rayon::prelude::*;
    let points = grid
        .par_iter()
        .map(|&g| coincidence_at(spec, layout, rotation, g))
        .collect::<Result<Vec<_>>>()?;
    CoincidenceCurve::new(points, digest.to_string())
}

/// Scattering-method sweep over a gamma grid (serial build).
#[cfg(not(feature = "parallel"))]
pub fn sweep_gamma(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    grid: &[f64],
    digest: &str,
) -> Result<CoincidenceCurve> {
    sweep_gamma_serial(spec, layout, rotation, grid, digest)
}

/// Sequential reference sweep; the parallel path must match it bit for
/// bit, and the benches race the two.
pub fn sweep_gamma_serial(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    grid: &[f64],
    digest: &str,
) -> Result<CoincidenceCurve> {
    let points = grid
        .iter()
        .map(|&g| coincidence_at(spec, layout, rotation, g))
        .collect::<Result<Vec<_>>>()?;
    CoincidenceCurve::new(points, digest.to_string())
}

/// Bisects for the gamma where the bosonic and fermionic curves cross.
///
/// Requires a sign change of `p_boson - p_fermion` across the range;
/// refines to 1e-9 of the range width.
pub fn find_crossing(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    gamma_lo: f64,
    gamma_hi: f64,
) -> Result<f64> {
    if !gamma_lo.is_finite() || !gamma_hi.is_finite() || gamma_lo < 0.0 || gamma_hi <= gamma_lo {
        return Err(Error::Validation(format!(
            "crossing search needs 0 <= gamma_lo < gamma_hi, got [{}, {}]",
            gamma_lo, gamma_hi
        )));
    }
    let diff = |g: f64| -> Result<f64> {
        let p = coincidence_at(spec, layout, rotation, g)?;
        Ok(p.p_boson - p.p_fermion)
    };
    let f_lo = diff(gamma_lo)?;
    if f_lo == 0.0 {
        return Ok(gamma_lo);
    }
    let f_hi = diff(gamma_hi)?;
    if f_hi == 0.0 {
        return Ok(gamma_hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoCrossing { lo: gamma_lo, hi: gamma_hi });
    }
    let tol = 1e-9 * (gamma_hi - gamma_lo);
    let (mut a, mut b, mut f_a) = (gamma_lo, gamma_hi, f_lo);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let f_mid = diff(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_a.signum() {
            a = mid;
            f_a = f_mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
