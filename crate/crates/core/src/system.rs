//! Mode networks with tunable loss: the effective generator, its
//! spectrum, and the search for the loss level where two eigenvalues
//! coalesce.
//!
//! A network is a Hermitian coupling matrix plus a fixed nonnegative loss
//! profile; the dial is a single scale `gamma` multiplying the profile.
//! The generator `H(gamma) = coupling - i gamma diag(profile)` is not
//! Hermitian, and at isolated `gamma` values its eigenvalues collide
//! pairwise. Those collisions are what [`find_ep_threshold`] hunts for,
//! by minimizing the smallest pairwise eigenvalue gap.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::{eigenvalues, schur_decompose, CMatrix, SchurFactorization};

/// Coarse samples taken before golden-section refinement.
pub const EP_SCAN_POINTS: usize = 512;
/// Bracket width at which golden-section refinement stops, relative to
/// the searched range.
pub const EP_REFINE_RELATIVE: f64 = 1e-9;
/// A refined gap above this fraction of the spectral scale means no
/// eigenvalue pair actually coalesces in the range.
pub const EP_GAP_RELATIVE: f64 = 1e-4;

const HERMITICITY_RELATIVE: f64 = 1e-12;

/// Static description of a lossy mode network.
#[derive(Debug, Clone)]
pub struct ModeNetworkSpec {
    n_modes: usize,
    coupling: CMatrix,
    loss_profile: Vec<f64>,
}

impl ModeNetworkSpec {
    /// Validates and freezes a network: `coupling` Hermitian, the loss
    /// profile nonnegative with at least one positive weight.
    pub fn new(coupling: CMatrix, loss_profile: Vec<f64>) -> Result<Self> {
        let n = coupling.ensure_square("mode network coupling")?;
        coupling.ensure_finite("mode network coupling")?;
        if n == 0 {
            return Err(Error::Validation("network needs at least one mode".into()));
        }
        if loss_profile.len() != n {
            return Err(Error::Dimension(format!(
                "loss profile has {} entries for {} modes",
                loss_profile.len(),
                n
            )));
        }
        let defect = coupling.hermiticity_defect();
        if defect > HERMITICITY_RELATIVE * coupling.max_abs().max(1.0) {
            return Err(Error::Validation(format!(
                "coupling is not Hermitian: defect {:.3e}",
                defect
            )));
        }
        if loss_profile.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Validation("loss profile must be finite and nonnegative".into()));
        }
        if loss_profile.iter().all(|&w| w == 0.0) {
            return Err(Error::Validation(
                "loss profile must have at least one positive weight".into(),
            ));
        }
        Ok(ModeNetworkSpec { n_modes: n, coupling, loss_profile })
    }

    /// The canonical two-mode coupler: symmetric coupling `kappa`, loss
    /// on the second mode only.
    pub fn coupler(kappa: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(Error::Validation(format!("coupler needs kappa > 0, got {}", kappa)));
        }
        let k = C64::new(kappa, 0.0);
        let z = C64::new(0.0, 0.0);
        let coupling = CMatrix::new(2, 2, vec![z, k, k, z])?;
        ModeNetworkSpec::new(coupling, vec![0.0, 1.0])
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn coupling(&self) -> &CMatrix {
        &self.coupling
    }

    pub fn loss_profile(&self) -> &[f64] {
        &self.loss_profile
    }

    /// Largest coupling modulus; the rate scale integrator steps are
    /// measured against.
    pub fn coupling_scale(&self) -> f64 {
        self.coupling.max_abs()
    }

    /// Returns the coupling strength if this network is the canonical
    /// two-mode coupler (off-diagonal real kappa, loss profile [0, 1]).
    pub fn as_coupler(&self) -> Option<f64> {
        if self.n_modes != 2 {
            return None;
        }
        let k = self.coupling[(0, 1)];
        let tol = 1e-12 * self.coupling.max_abs().max(1.0);
        let diag_zero = self.coupling[(0, 0)].norm() <= tol && self.coupling[(1, 1)].norm() <= tol;
        let symmetric_real = k.im.abs() <= tol && k.re > 0.0;
        let canonical_loss =
            self.loss_profile[0].abs() <= 1e-12 && (self.loss_profile[1] - 1.0).abs() <= 1e-12;
        if diag_zero && symmetric_real && canonical_loss {
            Some(k.re)
        } else {
            None
        }
    }
}

/// `H(gamma) = coupling - i gamma diag(loss_profile)`.
pub fn build_effective_hamiltonian(spec: &ModeNetworkSpec, gamma: f64) -> Result<CMatrix> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Validation(format!(
            "loss scale gamma must be finite and nonnegative, got {}",
            gamma
        )));
    }
    let mut h = spec.coupling.clone();
    for (m, &w) in spec.loss_profile.iter().enumerate() {
        h[(m, m)] += C64::new(0.0, -gamma * w);
    }
    Ok(h)
}

/// Spectrum of the effective generator at one loss level.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub gamma: f64,
    /// Ordered by descending imaginary part, ties by ascending real part.
    pub eigenvalues: Vec<C64>,
    /// Smallest pairwise eigenvalue distance; infinite for one mode.
    pub min_pair_gap: f64,
    /// Largest imaginary part; nonpositive (up to roundoff) for any
    /// passive network.
    pub max_imag: f64,
}

fn min_pair_gap(evals: &[C64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..evals.len() {
        for j in (i + 1)..evals.len() {
            gap = gap.min((evals[i] - evals[j]).norm());
        }
    }
    gap
}

pub fn spectral_report(spec: &ModeNetworkSpec, gamma: f64) -> Result<SpectralReport> {
    let h = build_effective_hamiltonian(spec, gamma)?;
    let evals = eigenvalues(&h)?;
    let gap = min_pair_gap(&evals);
    let max_imag = evals.iter().map(|l| l.im).fold(f64::NEG_INFINITY, f64::max);
    Ok(SpectralReport { gamma, eigenvalues: evals, min_pair_gap: gap, max_imag })
}

/// Loss level at which the smallest eigenvalue gap bottoms out, plus the
/// gap achieved there.
#[derive(Debug, Clone, Copy)]
pub struct EpThreshold {
    pub gamma: f64,
    pub gap: f64,
}

/// Locates the exceptional point inside `[gamma_lo, gamma_hi]`.
///
/// A 512-point coarse scan brackets the smallest-gap sample, golden
/// section shrinks the bracket to 1e-9 of the range, and the best gamma
/// seen anywhere is returned. If even that gap stays above 1e-4 of the
/// spectral scale the range holds no coalescence and the search reports
/// failure rather than a spurious minimum.
pub fn find_ep_threshold(spec: &ModeNetworkSpec, gamma_lo: f64, gamma_hi: f64) -> Result<EpThreshold> {
    if !gamma_lo.is_finite() || !gamma_hi.is_finite() || gamma_lo < 0.0 || gamma_hi <= gamma_lo {
        return Err(Error::Validation(format!(
            "threshold search needs 0 <= gamma_lo < gamma_hi, got [{}, {}]",
            gamma_lo, gamma_hi
        )));
    }
    if spec.n_modes < 2 {
        return Err(Error::Validation("threshold search needs at least two modes".into()));
    }

    let gap_at = |gamma: f64| -> Result<(f64, f64)> {
        let report = spectral_report(spec, gamma)?;
        let radius = report.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
        Ok((report.min_pair_gap, radius))
    };

    let mut best_gamma = gamma_lo;
    let mut best_gap = f64::INFINITY;
    let mut spectral_scale: f64 = 0.0;
    let record = |gamma: f64, gap: f64, best_gamma: &mut f64, best_gap: &mut f64| {
        if gap < *best_gap {
            *best_gap = gap;
            *best_gamma = gamma;
        }
    };

    let steps = EP_SCAN_POINTS - 1;
    let mut scan_best_index = 0usize;
    for i in 0..EP_SCAN_POINTS {
        let gamma = gamma_lo + (gamma_hi - gamma_lo) * (i as f64) / (steps as f64);
        let (gap, radius) = gap_at(gamma)?;
        spectral_scale = spectral_scale.max(radius);
        if gap < best_gap {
            scan_best_index = i;
        }
        record(gamma, gap, &mut best_gamma, &mut best_gap);
    }

    let grid = |i: usize| gamma_lo + (gamma_hi - gamma_lo) * (i as f64) / (steps as f64);
    let mut a = grid(scan_best_index.saturating_sub(1));
    let mut b = grid((scan_best_index + 1).min(steps));

    // Golden-section shrink; the gap is V-shaped around a coalescence so
    // unimodality holds on the bracket.
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let xtol = EP_REFINE_RELATIVE * (gamma_hi - gamma_lo);
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let (mut fc, _) = gap_at(c)?;
    record(c, fc, &mut best_gamma, &mut best_gap);
    let (mut fd, _) = gap_at(d)?;
    record(d, fd, &mut best_gamma, &mut best_gap);
    while (b - a) > xtol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            let (f, _) = gap_at(c)?;
            fc = f;
            record(c, fc, &mut best_gamma, &mut best_gap);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            let (f, _) = gap_at(d)?;
            fd = f;
            record(d, fd, &mut best_gamma, &mut best_gap);
        }
    }

    let threshold = EP_GAP_RELATIVE * spectral_scale;
    if best_gap > threshold {
        return Err(Error::NoExceptionalPoint {
            lo: gamma_lo,
            hi: gamma_hi,
            gamma: best_gamma,
            gap: best_gap,
            threshold,
        });
    }
    Ok(EpThreshold { gamma: best_gamma, gap: best_gap })
}

/// Schur factorization of the generator at the threshold; its rotation is
/// the protocol's mode-mixing transform.
pub fn rotation_at_threshold(spec: &ModeNetworkSpec, gamma_th: f64) -> Result<SchurFactorization> {
    let h = build_effective_hamiltonian(spec, gamma_th)?;
    schur_decompose(&h)
}

/// Whether the mode transform enters as an instantaneous rotation or as
/// physical propagation through lossless coupler segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationMode {
    Abstract,
    Physical,
}

/// One propagation segment: a length and whether loss is switched on.
#[derive(Debug, Clone, Copy)]
pub struct Section {
    pub length: f64,
    pub loss_on: bool,
}

/// Ordered propagation segments plus the rotation convention.
#[derive(Debug, Clone)]
pub struct SectionLayout {
    pub sections: Vec<Section>,
    pub rotation_mode: RotationMode,
}

impl SectionLayout {
    pub fn new(sections: Vec<Section>, rotation_mode: RotationMode) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::Validation("layout needs at least one section".into()));
        }
        if sections.iter().any(|s| !s.length.is_finite() || s.length <= 0.0) {
            return Err(Error::Validation("section lengths must be finite and positive".into()));
        }
        Ok(SectionLayout { sections, rotation_mode })
    }

    /// Single dissipative section of length `l2`, rotations applied
    /// abstractly around it.
    pub fn abstract_single(l2: f64) -> Result<Self> {
        SectionLayout::new(vec![Section { length: l2, loss_on: true }], RotationMode::Abstract)
    }

    /// The three-segment physical realization for a coupler of strength
    /// `kappa`: lossless lengths pi/(4 kappa) and 7 pi/(4 kappa) realize
    /// the rotation and its inverse around the lossy stretch.
    pub fn coupler_physical(kappa: f64, l2: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(Error::Validation(format!("coupler needs kappa > 0, got {}", kappa)));
        }
        let quarter = std::f64::consts::PI / (4.0 * kappa);
        SectionLayout::new(
            vec![
                Section { length: quarter, loss_on: false },
                Section { length: l2, loss_on: true },
                Section { length: 7.0 * quarter, loss_on: false },
            ],
            RotationMode::Physical,
        )
    }

    /// Total length with loss switched on.
    pub fn lossy_length(&self) -> f64 {
        self.sections.iter().filter(|s| s.loss_on).map(|s| s.length).sum()
    }

    /// Checks the layout is realizable on `spec`. Physical mode demands
    /// the canonical coupler with the lossless bookend lengths that
    /// realize the threshold rotation; abstract mode accepts any network.
    pub fn validate_against(&self, spec: &ModeNetworkSpec) -> Result<()> {
        match self.rotation_mode {
            RotationMode::Abstract => Ok(()),
            RotationMode::Physical => {
                let kappa = spec.as_coupler().ok_or_else(|| {
                    Error::Validation(
                        "physical rotation mode is defined only for the two-mode coupler".into(),
                    )
                })?;
                if self.sections.len() < 3 {
                    return Err(Error::Validation(
                        "physical layout needs lossless bookends around the lossy region".into(),
                    ));
                }
                let first = &self.sections[0];
                let last = &self.sections[self.sections.len() - 1];
                let quarter = std::f64::consts::PI / (4.0 * kappa);
                let ok_len = |have: f64, want: f64| (have - want).abs() <= 1e-9 * want;
                if first.loss_on || !ok_len(first.length, quarter) {
                    return Err(Error::Validation(format!(
                        "physical layout must open with a lossless section of length {:.12} (pi / 4 kappa)",
                        quarter
                    )));
                }
                if last.loss_on || !ok_len(last.length, 7.0 * quarter) {
                    return Err(Error::Validation(format!(
                        "physical layout must close with a lossless section of length {:.12} (7 pi / 4 kappa)",
                        7.0 * quarter
                    )));
                }
                if !self.sections[1..self.sections.len() - 1].iter().any(|s| s.loss_on) {
                    return Err(Error::Validation(
                        "physical layout needs a lossy section between the bookends".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}
