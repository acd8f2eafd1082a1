//! Closed-form and reduced-variable routes for the two-mode coupler.
//!
//! For the coupler (coupling `kappa` between modes 1 and 2, loss on mode
//! 2 only) the bosonic two-photon density matrix closes on six real
//! variables, and both coincidence probabilities have elementary closed
//! forms. These are the independent cross-checks for the scattering and
//! generic-Lindblad routes.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::interference::{CoincidenceCurve, CoincidencePoint, Method, PROB_CLIP, PROB_GUARD};
use crate::matrix::CMatrix;
use crate::lindblad::{section_steps, Statistics};

/// Reduced bosonic two-photon state of the coupler.
///
/// Components, in terms of density-matrix elements over the basis
/// `(0,0), (0,1), (0,2), (1,0), (1,1), (2,0)`:
/// `x1 = rho_{11,11}`, `rho_{02,11} = i x2`, `rho_{20,11} = i x3`,
/// `x4 = rho_{20,20}`, `x5 = Re rho_{02,20}`, `x6 = rho_{02,02}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedCouplerState(pub [f64; 6]);

impl ReducedCouplerState {
    /// Both photons present, one per mode.
    pub fn coincidence_input() -> Self {
        ReducedCouplerState([1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Coincidence probability carried by this state.
    pub fn coincidence(&self) -> f64 {
        self.0[0]
    }
}

/// Right-hand side of the reduced system at loss scale `gamma`.
pub fn coupler_x_rhs(x: &[f64; 6], kappa: f64, gamma: f64) -> [f64; 6] {
    let r2k = std::f64::consts::SQRT_2 * kappa;
    let [x1, x2, x3, x4, x5, x6] = *x;
    [
        -2.0 * gamma * x1 + 2.0 * r2k * (x2 + x3),
        -3.0 * gamma * x2 + r2k * (x6 + x5 - x1),
        -gamma * x3 + r2k * (x4 + x5 - x1),
        -2.0 * r2k * x3,
        -2.0 * gamma * x5 - r2k * (x2 + x3),
        -4.0 * gamma * x6 - 2.0 * r2k * x2,
    ]
}

/// Fixed-step RK4 integration of the reduced system over one section.
pub fn integrate_coupler_x(
    state: ReducedCouplerState,
    kappa: f64,
    gamma: f64,
    length: f64,
    steps: usize,
) -> Result<ReducedCouplerState> {
    if steps == 0 {
        return Err(Error::Validation("step count must be positive".into()));
    }
    if !length.is_finite() || length < 0.0 {
        return Err(Error::Validation(format!(
            "section length must be finite and nonnegative, got {}",
            length
        )));
    }
    let h = length / steps as f64;
    let mut x = state.0;
    for _ in 0..steps {
        let k1 = coupler_x_rhs(&x, kappa, gamma);
        let k2 = coupler_x_rhs(&stage(&x, &k1, 0.5 * h), kappa, gamma);
        let k3 = coupler_x_rhs(&stage(&x, &k2, 0.5 * h), kappa, gamma);
        let k4 = coupler_x_rhs(&stage(&x, &k3, h), kappa, gamma);
        for i in 0..6 {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok(ReducedCouplerState(x))
}

fn stage(x: &[f64; 6], k: &[f64; 6], h: f64) -> [f64; 6] {
    let mut out = *x;
    for i in 0..6 {
        out[i] += h * k[i];
    }
    out
}

/// Runs the full three-section coupler protocol in reduced variables:
/// lossless quarter-beat, lossy section of length `l2`, lossless
/// seven-quarter-beat. Returns the final coincidence probability.
pub fn coupler_x_protocol(kappa: f64, gamma: f64, l2: f64, step_scale: u32) -> Result<f64> {
    validate_coupler_args(kappa, gamma, l2)?;
    let quarter = std::f64::consts::FRAC_PI_4 / kappa;
    let mut x = ReducedCouplerState::coincidence_input();
    for (len, g) in [(quarter, 0.0), (l2, gamma), (7.0 * quarter, 0.0)] {
        if len == 0.0 {
            continue;
        }
        let steps = section_steps(len, kappa.max(g)) << step_scale;
        x = integrate_coupler_x(x, kappa, g, len, steps)?;
    }
    Ok(x.coincidence())
}

/// Reads the reduced variables out of a bosonic coupler density matrix
/// (basis `(0,0), (0,1), (0,2), (1,0), (1,1), (2,0)`).
pub fn x_from_density(elements: &CMatrix) -> Result<[f64; 6]> {
    if elements.rows() != 6 || elements.cols() != 6 {
        return Err(Error::Dimension(format!(
            "reduced coupler extraction needs the 6x6 two-boson matrix, got {}x{}",
            elements.rows(),
            elements.cols()
        )));
    }
    Ok([
        elements[(4, 4)].re,
        elements[(2, 4)].im,
        elements[(5, 4)].im,
        elements[(5, 5)].re,
        elements[(2, 5)].re,
        elements[(2, 2)].re,
    ])
}

fn validate_coupler_args(kappa: f64, gamma: f64, l2: f64) -> Result<()> {
    if !kappa.is_finite() || kappa <= 0.0 {
        return Err(Error::Validation(format!(
            "coupling rate must be finite and positive, got {}",
            kappa
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Validation(format!(
            "loss scale gamma must be finite and nonnegative, got {}",
            gamma
        )));
    }
    if !l2.is_finite() || l2 < 0.0 {
        return Err(Error::Validation(format!(
            "lossy length must be finite and nonnegative, got {}",
            l2
        )));
    }
    Ok(())
}

/// Closed-form coincidence probability of the coupler protocol.
///
/// With `omega = sqrt(kappa^2 - (gamma/2)^2)` taken in complex
/// arithmetic so the expression crosses the threshold smoothly:
/// fermions give `exp(-2 gamma l2)`, bosons
/// `(sin^2(omega l2) - cos^2(omega l2))^2 exp(-2 gamma l2)`.
pub fn coupler_closed_form(
    kappa: f64,
    gamma: f64,
    l2: f64,
    statistics: Statistics,
) -> Result<f64> {
    validate_coupler_args(kappa, gamma, l2)?;
    let damp = (-2.0 * gamma * l2).exp();
    let p = match statistics {
        Statistics::Fermion => damp,
        Statistics::Boson => {
            let omega = C64::new(kappa * kappa - 0.25 * gamma * gamma, 0.0).sqrt();
            let arg = omega * l2;
            let amp = arg.sin().powu(2) - arg.cos().powu(2);
            let p = amp * amp * damp;
            if p.im.abs() > 1e-10 * p.re.abs().max(1.0) {
                return Err(Error::Consistency(format!(
                    "closed-form amplitude has imaginary residue {:.3e}",
                    p.im
                )));
            }
            p.re
        }
    };
    if !p.is_finite() || !(-PROB_GUARD..=1.0 + PROB_GUARD).contains(&p) {
        return Err(Error::Consistency(format!(
            "closed-form probability {} at gamma = {} is unphysical",
            p, gamma
        )));
    }
    Ok(p.clamp(0.0, 1.0 + PROB_CLIP))
}

/// Closed-form sweep over a gamma grid for a coupler with lossy length
/// `l2`.
pub fn sweep_closed_form(
    kappa: f64,
    l2: f64,
    grid: &[f64],
    digest: &str,
) -> Result<CoincidenceCurve> {
    let points = grid
        .iter()
        .map(|&g| {
            Ok(CoincidencePoint {
                gamma: g,
                p_boson: coupler_closed_form(kappa, g, l2, Statistics::Boson)?,
                p_fermion: coupler_closed_form(kappa, g, l2, Statistics::Fermion)?,
                method: Method::ClosedForm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CoincidenceCurve::new(points, digest.to_string())
}
