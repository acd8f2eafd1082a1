//! Open-system route to the same coincidence curves: density matrices in
//! a truncated Fock space evolved under a Lindblad generator whose jump
//! operators drain the lossy modes.
//!
//! The convention tying this module to the effective generator in
//! [`crate::system`] is fixed here once: a mode with loss weight `w`
//! carries the jump operator `sqrt(2 gamma w) a_m`, equivalently the pair
//! `(rate, op) = (2 gamma w, a_m)`. The factor two makes the single
//! particle sector decay exactly like `exp(-i H(gamma) z)` with
//! `H = coupling - i gamma diag(w)`, so all three computation routes
//! share one meaning of `gamma`.
//!
//! Mode rotations enter in two ways, matching [`RotationMode`]: physical
//! layouts integrate the lossless sections, abstract layouts conjugate
//! the state by the Fock-space image of the mode-space rotation.

pub mod coupler;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::interference::{CoincidenceCurve, CoincidencePoint, Method, PROB_CLIP, PROB_GUARD};
use crate::matrix::CMatrix;
use crate::system::{ModeNetworkSpec, RotationMode, SectionLayout};

/// Step-halving acceptance: the final states of the `h` and `h/2` runs
/// must agree to this in max-abs before a result is returned.
pub const STEP_TOL: f64 = 1e-8;
/// Halvings attempted beyond the base step before giving up.
pub const MAX_HALVINGS: usize = 4;

const UNITARITY_TOL: f64 = 1e-10;

/// Exchange statistics of the particles in the register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Boson,
    Fermion,
}

/// Occupation-number basis for `n_modes` modes, truncated at a total
/// particle number, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    n_modes: usize,
    max_total: u32,
    statistics: Statistics,
    states: Vec<Vec<u32>>,
}

/// Enumerates occupations with `sum <= max_total` (and per-mode 0 or 1
/// for fermions) in ascending lexicographic order.
pub fn enumerate_fock_basis(
    n_modes: usize,
    max_total: u32,
    statistics: Statistics,
) -> Result<FockBasis> {
    if n_modes == 0 {
        return Err(Error::Validation("a Fock basis needs at least one mode".into()));
    }
    if statistics == Statistics::Fermion && max_total as usize > n_modes {
        return Err(Error::Validation(format!(
            "{} fermions cannot occupy {} modes",
            max_total, n_modes
        )));
    }
    let mut states = Vec::new();
    let mut current = vec![0u32; n_modes];
    fn fill(
        states: &mut Vec<Vec<u32>>,
        current: &mut Vec<u32>,
        mode: usize,
        remaining: u32,
        fermionic: bool,
    ) {
        if mode == current.len() {
            states.push(current.clone());
            return;
        }
        let cap = if fermionic { remaining.min(1) } else { remaining };
        for occ in 0..=cap {
            current[mode] = occ;
            fill(states, current, mode + 1, remaining - occ, fermionic);
        }
        current[mode] = 0;
    }
    fill(&mut states, &mut current, 0, max_total, statistics == Statistics::Fermion);
    Ok(FockBasis { n_modes, max_total, statistics, states })
}

impl FockBasis {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn max_total(&self) -> u32 {
        self.max_total
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Vec<u32>] {
        &self.states
    }

    pub fn state(&self, index: usize) -> &[u32] {
        &self.states[index]
    }

    /// Index of an occupation tuple; lexicographic order makes this a
    /// binary search.
    pub fn index_of(&self, occupations: &[u32]) -> Option<usize> {
        self.states.binary_search_by(|s| s.as_slice().cmp(occupations)).ok()
    }
}

/// Matrix of the annihilation operator for one mode.
///
/// Bosonic amplitudes are `sqrt(n)`; fermionic ones carry the sign
/// `(-1)^(number of occupied lower-index modes)` from anticommuting the
/// operator past the occupied modes in front.
pub fn annihilation_matrix(basis: &FockBasis, mode: usize) -> Result<CMatrix> {
    if mode >= basis.n_modes {
        return Err(Error::Validation(format!(
            "mode {} out of range for {} modes",
            mode, basis.n_modes
        )));
    }
    let d = basis.dimension();
    let mut a = CMatrix::zeros(d, d);
    for (col, s) in basis.states.iter().enumerate() {
        let n = s[mode];
        if n == 0 {
            continue;
        }
        let mut target = s.clone();
        target[mode] = n - 1;
        // Total occupation drops, so the image state is always in range.
        let row = basis.index_of(&target).expect("lower sector state present");
        let amp = match basis.statistics {
            Statistics::Boson => (n as f64).sqrt(),
            Statistics::Fermion => {
                let swaps: u32 = s[..mode].iter().sum();
                if swaps.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        a[(row, col)] = C64::new(amp, 0.0);
    }
    Ok(a)
}

/// Second-quantized image of a one-mode Hamiltonian:
/// `sum_{n,l} h[n][l] a_n-dagger a_l`.
pub fn mode_hamiltonian_fock(basis: &FockBasis, h_mode: &CMatrix) -> Result<CMatrix> {
    if h_mode.rows() != basis.n_modes || h_mode.cols() != basis.n_modes {
        return Err(Error::Dimension(format!(
            "mode Hamiltonian is {}x{} for {} modes",
            h_mode.rows(),
            h_mode.cols(),
            basis.n_modes
        )));
    }
    let d = basis.dimension();
    let ops: Vec<CMatrix> =
        (0..basis.n_modes).map(|m| annihilation_matrix(basis, m)).collect::<Result<_>>()?;
    let mut h = CMatrix::zeros(d, d);
    for n in 0..basis.n_modes {
        for l in 0..basis.n_modes {
            let coeff = h_mode[(n, l)];
            if coeff.norm() == 0.0 {
                continue;
            }
            h.add_scaled_assign(coeff, &ops[n].adjoint().mul(&ops[l]));
        }
    }
    Ok(h)
}

/// `(rate, operator)` pairs for the lossy modes at loss scale `gamma`.
pub fn jump_operators(
    basis: &FockBasis,
    spec: &ModeNetworkSpec,
    gamma: f64,
) -> Result<Vec<(f64, CMatrix)>> {
    if basis.n_modes != spec.n_modes() {
        return Err(Error::Dimension(format!(
            "basis has {} modes, network has {}",
            basis.n_modes,
            spec.n_modes()
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Validation(format!(
            "loss scale gamma must be finite and nonnegative, got {}",
            gamma
        )));
    }
    let mut jumps = Vec::new();
    for (m, &w) in spec.loss_profile().iter().enumerate() {
        let rate = 2.0 * gamma * w;
        if rate > 0.0 {
            jumps.push((rate, annihilation_matrix(basis, m)?));
        }
    }
    Ok(jumps)
}

/// Density operator over a truncated Fock basis.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    basis: FockBasis,
    elements: CMatrix,
}

impl DensityMatrix {
    pub fn new(basis: FockBasis, elements: CMatrix) -> Result<Self> {
        let d = basis.dimension();
        if elements.rows() != d || elements.cols() != d {
            return Err(Error::Dimension(format!(
                "elements are {}x{} for a dimension-{} basis",
                elements.rows(),
                elements.cols(),
                d
            )));
        }
        elements.ensure_finite("density matrix")?;
        Ok(DensityMatrix { basis, elements })
    }

    /// Pure occupation-number state `|occ><occ|`.
    pub fn number_state(basis: &FockBasis, occupations: &[u32]) -> Result<Self> {
        let idx = basis.index_of(occupations).ok_or_else(|| {
            Error::Validation(format!("occupations {:?} are not in the basis", occupations))
        })?;
        let mut elements = CMatrix::zeros(basis.dimension(), basis.dimension());
        elements[(idx, idx)] = C64::new(1.0, 0.0);
        Ok(DensityMatrix { basis: basis.clone(), elements })
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn elements(&self) -> &CMatrix {
        &self.elements
    }

    pub fn trace(&self) -> C64 {
        self.elements.trace()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.elements.hermiticity_defect()
    }

    /// Smallest eigenvalue of the (Hermitian) operator; barely negative
    /// values flag a state drifting out of the physical cone.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let evals = crate::matrix::eigenvalues(&self.elements)?;
        Ok(evals.iter().map(|l| l.re).fold(f64::INFINITY, f64::min))
    }
}

/// Lindblad right-hand side: `-i[h, rho] + sum_k rate_k (J rho J-dagger
/// - 1/2 {J-dagger J, rho})`. Trace-free by construction.
pub fn lindblad_rhs(
    rho: &DensityMatrix,
    h: &CMatrix,
    jumps: &[(f64, CMatrix)],
) -> Result<DensityMatrix> {
    let d = rho.basis.dimension();
    if h.rows() != d || h.cols() != d {
        return Err(Error::Dimension(format!(
            "Hamiltonian is {}x{} for a dimension-{} basis",
            h.rows(),
            h.cols(),
            d
        )));
    }
    for (rate, j) in jumps {
        if !rate.is_finite() || *rate < 0.0 {
            return Err(Error::Validation(format!("jump rate must be nonnegative, got {}", rate)));
        }
        if j.rows() != d || j.cols() != d {
            return Err(Error::Dimension("jump operator dimension mismatch".into()));
        }
    }
    let worker = Stepper::new(h, jumps);
    let elements = worker.rhs(&rho.elements);
    DensityMatrix::new(rho.basis.clone(), elements)
}

/// Precomputed generator pieces for the integrator: the non-Hermitian
/// drift `h_eff = h - i/2 sum rate J-dagger J` and the refill terms.
struct Stepper {
    h_eff: CMatrix,
    refill: Vec<(f64, CMatrix, CMatrix)>,
}

impl Stepper {
    fn new(h: &CMatrix, jumps: &[(f64, CMatrix)]) -> Self {
        let mut h_eff = h.clone();
        let mut refill = Vec::with_capacity(jumps.len());
        for (rate, j) in jumps {
            if *rate == 0.0 {
                continue;
            }
            h_eff.add_scaled_assign(C64::new(0.0, -0.5 * rate), &j.adjoint().mul(j));
            refill.push((*rate, j.clone(), j.adjoint()));
        }
        Stepper { h_eff, refill }
    }

    /// `rho' = -i (h_eff rho - rho h_eff-dagger) + sum rate J rho J-dagger`.
    fn rhs(&self, rho: &CMatrix) -> CMatrix {
        let mut out = self.h_eff.mul(rho).scale(C64::new(0.0, -1.0));
        out.add_scaled_assign(C64::new(0.0, 1.0), &rho.mul(&self.h_eff.adjoint()));
        for (rate, j, j_dag) in &self.refill {
            out.add_scaled_assign(C64::new(*rate, 0.0), &j.mul(rho).mul(j_dag));
        }
        out
    }

    fn rk4_step(&self, rho: &CMatrix, h: f64) -> CMatrix {
        let k1 = self.rhs(rho);
        let mut stage = rho.clone();
        stage.add_scaled_assign(C64::new(0.5 * h, 0.0), &k1);
        let k2 = self.rhs(&stage);
        let mut stage = rho.clone();
        stage.add_scaled_assign(C64::new(0.5 * h, 0.0), &k2);
        let k3 = self.rhs(&stage);
        let mut stage = rho.clone();
        stage.add_scaled_assign(C64::new(h, 0.0), &k3);
        let k4 = self.rhs(&stage);
        let mut out = rho.clone();
        let w = h / 6.0;
        out.add_scaled_assign(C64::new(w, 0.0), &k1);
        out.add_scaled_assign(C64::new(2.0 * w, 0.0), &k2);
        out.add_scaled_assign(C64::new(2.0 * w, 0.0), &k3);
        out.add_scaled_assign(C64::new(w, 0.0), &k4);
        out
    }

    fn integrate(&self, rho: &CMatrix, length: f64, steps: usize) -> CMatrix {
        let h = length / steps as f64;
        let mut state = rho.clone();
        for _ in 0..steps {
            state = self.rk4_step(&state, h);
        }
        state
    }
}

/// Base step count for a section: step `h = min(length / 1000,
/// 1 / (50 max_rate))` rounded to divide the length.
pub fn section_steps(length: f64, max_rate: f64) -> usize {
    let cap = if max_rate > 0.0 { 1.0 / (50.0 * max_rate) } else { f64::INFINITY };
    let h = (length / 1000.0).min(cap);
    (length / h).ceil() as usize
}

/// Evolves a density matrix through one homogeneous section with a
/// caller-chosen fixed RK4 step count. The layout integrator above is
/// the production route; this entry point exists for cross-checks that
/// need exact control over the discretization.
pub fn evolve_section_fixed(
    rho0: &DensityMatrix,
    h_fock: &CMatrix,
    jumps: &[(f64, CMatrix)],
    length: f64,
    steps: usize,
) -> Result<DensityMatrix> {
    if steps == 0 {
        return Err(Error::Validation("step count must be positive".into()));
    }
    if !length.is_finite() || length < 0.0 {
        return Err(Error::Validation(format!(
            "section length must be finite and nonnegative, got {}",
            length
        )));
    }
    let d = rho0.basis.dimension();
    if h_fock.rows() != d || h_fock.cols() != d {
        return Err(Error::Dimension(format!(
            "Hamiltonian is {}x{} for a dimension-{} basis",
            h_fock.rows(),
            h_fock.cols(),
            d
        )));
    }
    for (rate, j) in jumps {
        if !rate.is_finite() || *rate < 0.0 {
            return Err(Error::Validation(format!("jump rate must be nonnegative, got {}", rate)));
        }
        if j.rows() != d || j.cols() != d {
            return Err(Error::Dimension("jump operator dimension mismatch".into()));
        }
    }
    let stepper = Stepper::new(h_fock, jumps);
    let elements = stepper.integrate(&rho0.elements, length, steps);
    DensityMatrix::new(rho0.basis.clone(), elements)
}

/// Fock-space image of a mode-space unitary.
///
/// Columns are built by applying the transformed creation operators to
/// the vacuum: the image of `|s>` is `prod_m (sum_l V[l][m]
/// a_l-dagger)^(s_m) / sqrt(s_m!) |0>`, modes applied highest first so
/// fermionic operator order matches the basis convention.
pub fn induced_fock_unitary(basis: &FockBasis, mode_unitary: &CMatrix) -> Result<CMatrix> {
    if mode_unitary.rows() != basis.n_modes || mode_unitary.cols() != basis.n_modes {
        return Err(Error::Dimension(format!(
            "mode unitary is {}x{} for {} modes",
            mode_unitary.rows(),
            mode_unitary.cols(),
            basis.n_modes
        )));
    }
    let defect = mode_unitary.unitarity_defect();
    if defect > UNITARITY_TOL {
        return Err(Error::Validation(format!(
            "mode transform is not unitary: defect {:.3e}",
            defect
        )));
    }
    let d = basis.dimension();
    let creators: Vec<CMatrix> = (0..basis.n_modes)
        .map(|m| annihilation_matrix(basis, m).map(|a| a.adjoint()))
        .collect::<Result<_>>()?;
    // Transformed creators b_m-dagger = sum_l V[l][m] a_l-dagger.
    let transformed: Vec<CMatrix> = (0..basis.n_modes)
        .map(|m| {
            let mut b = CMatrix::zeros(d, d);
            for l in 0..basis.n_modes {
                b.add_scaled_assign(mode_unitary[(l, m)], &creators[l]);
            }
            b
        })
        .collect();

    let vacuum = basis.index_of(&vec![0; basis.n_modes]).expect("vacuum in basis");
    let mut image = CMatrix::zeros(d, d);
    for (col, s) in basis.states.iter().enumerate() {
        let mut v = vec![C64::new(0.0, 0.0); d];
        v[vacuum] = C64::new(1.0, 0.0);
        let mut norm = 1.0;
        for m in (0..basis.n_modes).rev() {
            for k in 1..=s[m] {
                v = transformed[m].mul_vec(&v);
                norm *= k as f64;
            }
        }
        let scale = C64::new(1.0 / norm.sqrt(), 0.0);
        for r in 0..d {
            image[(r, col)] = v[r] * scale;
        }
    }
    Ok(image)
}

fn integrate_layout(
    start: &CMatrix,
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    basis: &FockBasis,
    gamma: f64,
    halvings: u32,
) -> Result<Vec<CMatrix>> {
    let h_fock = mode_hamiltonian_fock(basis, spec.coupling())?;
    let mut state = start.clone();
    let mut boundaries = Vec::with_capacity(layout.sections.len());
    for section in &layout.sections {
        let g = if section.loss_on { gamma } else { 0.0 };
        let jumps = jump_operators(basis, spec, g)?;
        let stepper = Stepper::new(&h_fock, &jumps);
        let max_rate = spec.coupling_scale().max(g);
        let steps = section_steps(section.length, max_rate) << halvings;
        state = stepper.integrate(&state, section.length, steps);
        boundaries.push(state.clone());
    }
    Ok(boundaries)
}

/// Evolves a density matrix through a layout, returning the state at
/// every section boundary (the last entry is the final state, after the
/// closing rotation in abstract mode).
///
/// Integration is fixed-step RK4 with a step-halving acceptance check on
/// the final state; the step count doubles until two consecutive runs
/// agree to 1e-8 in max-abs, giving up after four halvings.
pub fn evolve_density_boundaries(
    rho0: &DensityMatrix,
    layout: &SectionLayout,
    spec: &ModeNetworkSpec,
    gamma: f64,
    rotation: Option<&CMatrix>,
) -> Result<Vec<DensityMatrix>> {
    layout.validate_against(spec)?;
    if rho0.basis.n_modes != spec.n_modes() {
        return Err(Error::Dimension(format!(
            "state has {} modes, network has {}",
            rho0.basis.n_modes,
            spec.n_modes()
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Validation(format!(
            "loss scale gamma must be finite and nonnegative, got {}",
            gamma
        )));
    }

    // Abstract mode conjugates by the induced rotation before and after
    // the sections; physical mode realizes the rotations inside the
    // layout itself.
    let (start, closing) = match layout.rotation_mode {
        RotationMode::Physical => (rho0.elements.clone(), None),
        RotationMode::Abstract => {
            let r = rotation.ok_or_else(|| {
                Error::Validation("abstract rotation mode needs a rotation matrix".into())
            })?;
            let r_fock = induced_fock_unitary(&rho0.basis, r)?;
            let opened = r_fock.mul(&rho0.elements).mul(&r_fock.adjoint());
            (opened, Some(r_fock))
        }
    };

    let mut previous = integrate_layout(&start, spec, layout, &rho0.basis, gamma, 0)?;
    let mut accepted = None;
    for halving in 1..=MAX_HALVINGS as u32 {
        let finer = integrate_layout(&start, spec, layout, &rho0.basis, gamma, halving)?;
        let residual = previous
            .last()
            .expect("layout has sections")
            .max_abs_diff(finer.last().expect("layout has sections"));
        if residual <= STEP_TOL {
            accepted = Some(finer);
            break;
        }
        if halving as usize == MAX_HALVINGS {
            return Err(Error::Integration {
                residual,
                halvings: MAX_HALVINGS,
                tolerance: STEP_TOL,
            });
        }
        previous = finer;
    }
    let mut boundaries = accepted.expect("loop either accepts or errors");

    if let Some(r_fock) = closing {
        let last = boundaries.last().expect("layout has sections");
        let closed = r_fock.adjoint().mul(last).mul(&r_fock);
        boundaries.push(closed);
    }
    boundaries
        .into_iter()
        .map(|elements| DensityMatrix::new(rho0.basis.clone(), elements))
        .collect()
}

/// Final state of [`evolve_density_boundaries`].
pub fn evolve_density(
    rho0: &DensityMatrix,
    layout: &SectionLayout,
    spec: &ModeNetworkSpec,
    gamma: f64,
    rotation: Option<&CMatrix>,
) -> Result<DensityMatrix> {
    let mut boundaries = evolve_density_boundaries(rho0, layout, spec, gamma, rotation)?;
    Ok(boundaries.pop().expect("layout has sections"))
}

/// Probability that every mode holds at least its share of the full
/// coincidence pattern: `Tr(rho prod_m n_m)`. The number operators are
/// diagonal in the Fock basis, so this is a weighted diagonal sum.
pub fn coincidence_from_density(rho: &DensityMatrix) -> f64 {
    let mut p = 0.0;
    for (i, s) in rho.basis.states.iter().enumerate() {
        let weight: u32 = s.iter().product();
        if weight > 0 {
            p += weight as f64 * rho.elements[(i, i)].re;
        }
    }
    p
}

fn clip_probability(name: &str, p: f64, gamma: f64) -> Result<f64> {
    if !p.is_finite() || !(-PROB_GUARD..=1.0 + PROB_GUARD).contains(&p) {
        return Err(Error::Consistency(format!(
            "{} coincidence probability {} at gamma = {} is unphysical",
            name, p, gamma
        )));
    }
    Ok(p.clamp(0.0, 1.0 + PROB_CLIP))
}

/// One Lindblad-method point: both statistics sent through the layout
/// from the all-modes-singly-occupied input.
pub fn lindblad_coincidence_at(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    gamma: f64,
) -> Result<CoincidencePoint> {
    let n = spec.n_modes();
    let input = vec![1u32; n];
    let mut probs = [0.0f64; 2];
    for (slot, stats) in [Statistics::Boson, Statistics::Fermion].into_iter().enumerate() {
        let basis = enumerate_fock_basis(n, n as u32, stats)?;
        let rho0 = DensityMatrix::number_state(&basis, &input)?;
        let rho = evolve_density(&rho0, layout, spec, gamma, rotation)?;
        let name = if slot == 0 { "boson" } else { "fermion" };
        probs[slot] = clip_probability(name, coincidence_from_density(&rho), gamma)?;
    }
    Ok(CoincidencePoint {
        gamma,
        p_boson: probs[0],
        p_fermion: probs[1],
        method: Method::Lindblad,
    })
}

/// Lindblad-method sweep over a gamma grid.
#[cfg(feature = "parallel")]
pub fn sweep_lindblad(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    grid: &[f64],
    digest: &str,
) -> Result<CoincidenceCurve> {
    use rayon::prelude::*;
    let points = grid
        .par_iter()
        .map(|&g| lindblad_coincidence_at(spec, layout, rotation, g))
        .collect::<Result<Vec<_>>>()?;
    CoincidenceCurve::new(points, digest.to_string())
}

/// Lindblad-method sweep over a gamma grid (serial build).
#[cfg(not(feature = "parallel"))]
pub fn sweep_lindblad(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    grid: &[f64],
    digest: &str,
) -> Result<CoincidenceCurve> {
    sweep_lindblad_serial(spec, layout, rotation, grid, digest)
}

/// Sequential reference for the Lindblad sweep.
pub fn sweep_lindblad_serial(
    spec: &ModeNetworkSpec,
    layout: &SectionLayout,
    rotation: Option<&CMatrix>,
    grid: &[f64],
    digest: &str,
) -> Result<CoincidenceCurve> {
    let points = grid
        .iter()
        .map(|&g| lindblad_coincidence_at(spec, layout, rotation, g))
        .collect::<Result<Vec<_>>>()?;
    CoincidenceCurve::new(points, digest.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::rotation_at_threshold;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn boson_basis() -> FockBasis {
        enumerate_fock_basis(2, 2, Statistics::Boson).unwrap()
    }

    fn fermion_basis() -> FockBasis {
        enumerate_fock_basis(2, 2, Statistics::Fermion).unwrap()
    }

    #[test]
    fn boson_basis_enumeration_is_lexicographic() {
        let b = boson_basis();
        let expect: Vec<Vec<u32>> = vec![
            vec![0, 0],
            vec![0, 1],
            vec![0, 2],
            vec![1, 0],
            vec![1, 1],
            vec![2, 0],
        ];
        assert_eq!(b.states(), expect.as_slice());
        assert_eq!(b.dimension(), 6);
    }

    #[test]
    fn fermion_basis_respects_pauli_exclusion() {
        let b = fermion_basis();
        let expect: Vec<Vec<u32>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        assert_eq!(b.states(), expect.as_slice());
    }

    #[test]
    fn three_mode_boson_basis_size() {
        // C(3+3-1,3) states per total k, summed for k = 0..3.
        let b = enumerate_fock_basis(3, 3, Statistics::Boson).unwrap();
        assert_eq!(b.dimension(), 20);
    }

    #[test]
    fn fermion_basis_rejects_overfilling() {
        assert!(enumerate_fock_basis(2, 3, Statistics::Fermion).is_err());
        assert!(enumerate_fock_basis(0, 1, Statistics::Boson).is_err());
    }

    #[test]
    fn index_lookup_round_trips() {
        let b = boson_basis();
        for i in 0..b.dimension() {
            assert_eq!(b.index_of(b.state(i)), Some(i));
        }
        assert_eq!(b.index_of(&[2, 1]), None);
    }

    #[test]
    fn bosonic_annihilation_carries_sqrt_amplitudes() {
        let b = enumerate_fock_basis(1, 2, Statistics::Boson).unwrap();
        let a = annihilation_matrix(&b, 0).unwrap();
        // States |0>, |1>, |2>: a|1> = |0>, a|2> = sqrt(2)|1>.
        assert_eq!(a[(0, 1)], c(1.0, 0.0));
        assert!((a[(1, 2)] - c(2.0f64.sqrt(), 0.0)).norm() < 1e-15);
        assert_eq!(a[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn truncated_commutator_is_identity_on_lower_sectors() {
        let b = boson_basis();
        for m in 0..2 {
            let a = annihilation_matrix(&b, m).unwrap();
            let comm = a.mul(&a.adjoint()).sub(&a.adjoint().mul(&a));
            for (i, s) in b.states().iter().enumerate() {
                if s.iter().sum::<u32>() < b.max_total() {
                    assert!((comm[(i, i)] - c(1.0, 0.0)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn fermionic_sign_convention() {
        let b = fermion_basis();
        let a2 = annihilation_matrix(&b, 1).unwrap();
        let i11 = b.index_of(&[1, 1]).unwrap();
        let i10 = b.index_of(&[1, 0]).unwrap();
        let i01 = b.index_of(&[0, 1]).unwrap();
        let i00 = b.index_of(&[0, 0]).unwrap();
        // a_2 |1,1> = -|1,0>: the operator anticommutes past mode 1.
        assert_eq!(a2[(i10, i11)], c(-1.0, 0.0));
        assert_eq!(a2[(i00, i01)], c(1.0, 0.0));
        let a1 = annihilation_matrix(&b, 0).unwrap();
        assert_eq!(a1[(i01, i11)], c(1.0, 0.0));
    }

    #[test]
    fn fermionic_anticommutators() {
        let b = fermion_basis();
        let a1 = annihilation_matrix(&b, 0).unwrap();
        let a2 = annihilation_matrix(&b, 1).unwrap();
        let anti = |x: &CMatrix, y: &CMatrix| x.mul(y).add(&y.mul(x));
        assert!(anti(&a1, &a1.adjoint()).max_abs_vs_identity() < 1e-14);
        assert!(anti(&a2, &a2.adjoint()).max_abs_vs_identity() < 1e-14);
        assert!(anti(&a1, &a2).max_abs() < 1e-15);
        assert!(anti(&a1, &a2.adjoint()).max_abs() < 1e-15);
    }

    #[test]
    fn annihilation_rejects_out_of_range_mode() {
        assert!(annihilation_matrix(&boson_basis(), 2).is_err());
    }

    #[test]
    fn fock_hamiltonian_matches_manual_matrix_element() {
        let b = boson_basis();
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let h = mode_hamiltonian_fock(&b, spec.coupling()).unwrap();
        assert!(h.hermiticity_defect() < 1e-14);
        // <0,2| H |1,1> = kappa sqrt(2).
        let i02 = b.index_of(&[0, 2]).unwrap();
        let i11 = b.index_of(&[1, 1]).unwrap();
        assert!((h[(i02, i11)] - c(2.0f64.sqrt(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rhs_is_trace_free() {
        let b = boson_basis();
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let h = mode_hamiltonian_fock(&b, spec.coupling()).unwrap();
        let jumps = jump_operators(&b, &spec, 0.8).unwrap();
        // An arbitrary Hermitian state-like matrix.
        let mut m = CMatrix::zeros(6, 6);
        for i in 0..6 {
            for j in 0..6 {
                m[(i, j)] = c(0.1 * (i * j) as f64, 0.05 * (i as f64 - j as f64));
            }
        }
        let sym = m.add(&m.adjoint()).scale(c(0.5, 0.0));
        let rho = DensityMatrix::new(b, sym).unwrap();
        let rhs = lindblad_rhs(&rho, &h, &jumps).unwrap();
        assert!(rhs.trace().norm() < 1e-12);
        assert!(rhs.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn jump_convention_reproduces_single_particle_decay() {
        // One particle in the lossy mode: population decays at 2 gamma,
        // matching |exp(-i H z)|^2 of the effective generator.
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let b = boson_basis();
        let gamma = 0.9;
        let h_zero = CMatrix::zeros(6, 6);
        let jumps = jump_operators(&b, &spec, gamma).unwrap();
        let rho0 = DensityMatrix::number_state(&b, &[0, 1]).unwrap();
        let stepper = Stepper::new(&h_zero, &jumps);
        let z = 0.7;
        let out = stepper.integrate(&rho0.elements, z, 2000);
        let i01 = b.index_of(&[0, 1]).unwrap();
        let expect = (-2.0 * gamma * z).exp();
        assert!((out[(i01, i01)].re - expect).abs() < 1e-10);
    }

    #[test]
    fn induced_unitary_of_identity_is_identity() {
        let b = boson_basis();
        let r = induced_fock_unitary(&b, &CMatrix::identity(2)).unwrap();
        assert!(r.max_abs_vs_identity() < 1e-14);
    }

    #[test]
    fn induced_unitary_of_mode_swap() {
        let b = boson_basis();
        let swap = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = induced_fock_unitary(&b, &swap).unwrap();
        let i02 = b.index_of(&[0, 2]).unwrap();
        let i20 = b.index_of(&[2, 0]).unwrap();
        let i11 = b.index_of(&[1, 1]).unwrap();
        assert!((r[(i20, i02)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((r[(i11, i11)] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn induced_unitary_of_fermionic_swap_picks_up_the_exchange_sign() {
        let b = fermion_basis();
        let swap = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = induced_fock_unitary(&b, &swap).unwrap();
        let i11 = b.index_of(&[1, 1]).unwrap();
        // b_1-dagger b_2-dagger |0> = a_2-dagger a_1-dagger |0> = -|1,1>.
        assert!((r[(i11, i11)] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(r.unitarity_defect() < 1e-12);
    }

    #[test]
    fn induced_unitary_is_multiplicative() {
        let b = boson_basis();
        let theta = 0.37;
        let rot = |t: f64| {
            CMatrix::new(
                2,
                2,
                vec![
                    c(t.cos(), 0.0),
                    c(0.0, -t.sin()),
                    c(0.0, -t.sin()),
                    c(t.cos(), 0.0),
                ],
            )
            .unwrap()
        };
        let v = rot(theta);
        let w = rot(0.91);
        let lhs = induced_fock_unitary(&b, &v.mul(&w)).unwrap();
        let rhs = induced_fock_unitary(&b, &v).unwrap().mul(&induced_fock_unitary(&b, &w).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        assert!(lhs.unitarity_defect() < 1e-13);
    }

    #[test]
    fn induced_unitary_rejects_non_unitary_input() {
        let b = boson_basis();
        let mut bad = CMatrix::identity(2);
        bad[(0, 0)] = c(2.0, 0.0);
        assert!(induced_fock_unitary(&b, &bad).is_err());
        assert!(induced_fock_unitary(&b, &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn coincidence_functional_on_pure_states() {
        let b = boson_basis();
        let rho = DensityMatrix::number_state(&b, &[1, 1]).unwrap();
        assert!((coincidence_from_density(&rho) - 1.0).abs() < 1e-15);
        let rho = DensityMatrix::number_state(&b, &[2, 0]).unwrap();
        assert_eq!(coincidence_from_density(&rho), 0.0);
        let rho = DensityMatrix::number_state(&b, &[0, 0]).unwrap();
        assert_eq!(coincidence_from_density(&rho), 0.0);
    }

    #[test]
    fn number_state_requires_a_basis_member() {
        let b = boson_basis();
        assert!(DensityMatrix::number_state(&b, &[2, 1]).is_err());
    }

    #[test]
    fn hom_dip_from_the_density_route() {
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let r = rotation_at_threshold(&spec, 2.0).unwrap().rotation;
        let layout = SectionLayout::abstract_single(std::f64::consts::FRAC_PI_4).unwrap();
        let p = lindblad_coincidence_at(&spec, &layout, Some(&r), 0.0).unwrap();
        assert!(p.p_boson < 1e-8, "p_boson = {}", p.p_boson);
        assert!((p.p_fermion - 1.0).abs() < 1e-8, "p_fermion = {}", p.p_fermion);
    }

    #[test]
    fn fermion_coincidence_decays_at_twice_gamma() {
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let r = rotation_at_threshold(&spec, 2.0).unwrap().rotation;
        let l2 = 0.6;
        let layout = SectionLayout::abstract_single(l2).unwrap();
        for &gamma in &[0.5, 2.0, 3.1] {
            let basis = enumerate_fock_basis(2, 2, Statistics::Fermion).unwrap();
            let rho0 = DensityMatrix::number_state(&basis, &[1, 1]).unwrap();
            let rho = evolve_density(&rho0, &layout, &spec, gamma, Some(&r)).unwrap();
            let p = coincidence_from_density(&rho);
            assert!(
                (p - (-2.0 * gamma * l2).exp()).abs() < 1e-8,
                "gamma = {}: p = {}",
                gamma,
                p
            );
        }
    }

    #[test]
    fn threshold_coincidence_matches_the_closed_value() {
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let r = rotation_at_threshold(&spec, 2.0).unwrap().rotation;
        let layout = SectionLayout::abstract_single(std::f64::consts::FRAC_PI_4).unwrap();
        let p = lindblad_coincidence_at(&spec, &layout, Some(&r), 2.0).unwrap();
        let e_pi = (-std::f64::consts::PI).exp();
        assert!((p.p_boson - e_pi).abs() < 1e-6, "p_boson = {}", p.p_boson);
        assert!((p.p_fermion - e_pi).abs() < 1e-6, "p_fermion = {}", p.p_fermion);
    }

    #[test]
    fn evolution_preserves_trace_and_hermiticity() {
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let r = rotation_at_threshold(&spec, 2.0).unwrap().rotation;
        let layout = SectionLayout::coupler_physical(1.0, 0.9).unwrap();
        let basis = enumerate_fock_basis(2, 2, Statistics::Boson).unwrap();
        let rho0 = DensityMatrix::number_state(&basis, &[1, 1]).unwrap();
        let states = evolve_density_boundaries(&rho0, &layout, &spec, 1.4, Some(&r)).unwrap();
        assert_eq!(states.len(), 3);
        for s in &states {
            assert!((s.trace().re - 1.0).abs() < 1e-8);
            assert!(s.trace().im.abs() < 1e-12);
            assert!(s.hermiticity_defect() < 1e-10);
            assert!(s.min_eigenvalue().unwrap() > -1e-8);
        }
    }

    #[test]
    fn abstract_boundaries_include_the_closing_rotation() {
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let r = rotation_at_threshold(&spec, 2.0).unwrap().rotation;
        let layout = SectionLayout::abstract_single(0.5).unwrap();
        let basis = enumerate_fock_basis(2, 2, Statistics::Boson).unwrap();
        let rho0 = DensityMatrix::number_state(&basis, &[1, 1]).unwrap();
        let states = evolve_density_boundaries(&rho0, &layout, &spec, 1.0, Some(&r)).unwrap();
        // One section plus the closing rotation.
        assert_eq!(states.len(), 2);
    }

    #[test]
    fn evolve_rejects_mismatched_input() {
        let spec = ModeNetworkSpec::coupler(1.0).unwrap();
        let layout = SectionLayout::abstract_single(0.5).unwrap();
        let basis = enumerate_fock_basis(3, 3, Statistics::Boson).unwrap();
        let rho0 = DensityMatrix::number_state(&basis, &[1, 1, 1]).unwrap();
        assert!(evolve_density(&rho0, &layout, &spec, 1.0, None).is_err());

        let basis2 = enumerate_fock_basis(2, 2, Statistics::Boson).unwrap();
        let rho2 = DensityMatrix::number_state(&basis2, &[1, 1]).unwrap();
        // Abstract mode without a rotation.
        assert!(evolve_density(&rho2, &layout, &spec, 1.0, None).is_err());
        // Negative gamma.
        let r = CMatrix::identity(2);
        assert!(evolve_density(&rho2, &layout, &spec, -1.0, Some(&r)).is_err());
    }
}
