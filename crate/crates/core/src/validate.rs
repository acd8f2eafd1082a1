//! Built-in cross-validation suite.
//!
//! [`run_all`] exercises every computation route against the others and
//! against independent references from [`crate::oracle`], on a mixture
//! of pinned configurations and seeded random ensembles, and returns one
//! report per check. The suite is deterministic: random draws come from
//! fixed-seed generators, so two runs produce identical reports.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::interference::{
    coincidence_at, find_crossing, gamma_grid, propagator, sweep_gamma_serial,
};
use crate::lindblad::coupler::{
    coupler_closed_form, integrate_coupler_x, x_from_density, ReducedCouplerState,
};
use crate::lindblad::{
    enumerate_fock_basis, evolve_density_boundaries, evolve_section_fixed, jump_operators,
    lindblad_coincidence_at, mode_hamiltonian_fock, section_steps, DensityMatrix, Statistics,
};
use crate::matrix::{
    determinant, eigenvalues, mat_exp, permanent, schur_decompose, spectral_norm, CMatrix,
};
use crate::oracle::{charpoly_roots, expm_ode, multiset_distance, naive_permanent};
use crate::system::{
    find_ep_threshold, rotation_at_threshold, spectral_report, ModeNetworkSpec, SectionLayout,
};

/// Outcome of one self-check.
///
/// The `check_*` functions below are exported individually so external
/// harnesses can assert single checks; [`run_all`] runs the full suite.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

fn check(
    name: &'static str,
    tolerance: f64,
    body: impl FnOnce() -> Result<(f64, String)>,
) -> CheckReport {
    match body() {
        Ok((worst_residual, detail)) => CheckReport {
            name,
            passed: worst_residual <= tolerance,
            worst_residual,
            tolerance,
            detail,
        },
        Err(e) => CheckReport {
            name,
            passed: false,
            worst_residual: f64::INFINITY,
            tolerance,
            detail: format!("errored: {}", e),
        },
    }
}

fn random_complex_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> CMatrix {
    let mut data = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        data.push(C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)));
    }
    CMatrix::new(n, n, data).expect("sized to fit")
}

/// Random Hermitian coupling with zero diagonal plus a random admissible
/// loss profile.
fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> ModeNetworkSpec {
    let mut coupling = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            coupling[(i, j)] = v;
            coupling[(j, i)] = v.conj();
        }
    }
    let mut loss: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    loss[rng.gen_range(0..n)] = 1.0;
    ModeNetworkSpec::new(coupling, loss).expect("construction is admissible")
}

const SWEEP_POINTS: usize = 401;
const COUPLER_L2: f64 = std::f64::consts::FRAC_PI_4;

fn reference_setup() -> Result<(ModeNetworkSpec, SectionLayout, CMatrix)> {
    let spec = ModeNetworkSpec::coupler(1.0)?;
    let layout = SectionLayout::abstract_single(COUPLER_L2)?;
    let rotation = rotation_at_threshold(&spec, 2.0)?.rotation;
    Ok((spec, layout, rotation))
}

pub fn check_sweep_endpoints() -> CheckReport {
    check("sweep endpoints", 1e-9, || {
        let (spec, layout, rotation) = reference_setup()?;
        let grid = gamma_grid(0.0, 4.0, SWEEP_POINTS)?;
        let curve = sweep_gamma_serial(&spec, &layout, Some(&rotation), &grid, "validate")?;
        let first = &curve.points[0];
        let worst = (first.p_fermion - 1.0).abs().max(first.p_boson.abs());
        Ok((
            worst,
            format!(
                "lossless limit of a {}-point sweep: p_fermion = {:.3e} from 1, p_boson = {:.3e}",
                SWEEP_POINTS,
                (first.p_fermion - 1.0).abs(),
                first.p_boson
            ),
        ))
    })
}

pub fn check_crossing_location() -> CheckReport {
    check("crossing location", 1e-6, || {
        // Full user path: locate the degeneracy, build the rotation
        // there, then bisect for the curve crossing.
        let spec = ModeNetworkSpec::coupler(1.0)?;
        let layout = SectionLayout::abstract_single(COUPLER_L2)?;
        let threshold = find_ep_threshold(&spec, 0.0, 4.0)?;
        let rotation = rotation_at_threshold(&spec, threshold.gamma)?.rotation;
        let crossing = find_crossing(&spec, &layout, Some(&rotation), 1.0, 3.5)?;
        Ok((
            (crossing - 2.0).abs(),
            format!("bisection crossing at gamma = {:.12} against 2 kappa", crossing),
        ))
    })
}

pub fn check_closed_form_agreement() -> CheckReport {
    check("closed-form agreement", 1e-9, || {
        let (spec, layout, rotation) = reference_setup()?;
        let grid = gamma_grid(0.0, 4.0, SWEEP_POINTS)?;
        let mut worst = 0.0f64;
        for &g in &grid {
            let p = coincidence_at(&spec, &layout, Some(&rotation), g)?;
            let cb = coupler_closed_form(1.0, g, COUPLER_L2, Statistics::Boson)?;
            let cf = coupler_closed_form(1.0, g, COUPLER_L2, Statistics::Fermion)?;
            worst = worst.max((p.p_boson - cb).abs()).max((p.p_fermion - cf).abs());
        }
        Ok((
            worst,
            format!("{}-point scattering sweep against the analytic coupler curves", grid.len()),
        ))
    })
}

pub fn check_density_route_agreement() -> CheckReport {
    check("density-route agreement", 1e-6, || {
        let (spec, layout, rotation) = reference_setup()?;
        let grid = gamma_grid(0.0, 4.0, 21)?;
        let mut worst = 0.0f64;
        for &g in &grid {
            let scatter = coincidence_at(&spec, &layout, Some(&rotation), g)?;
            let density = lindblad_coincidence_at(&spec, &layout, Some(&rotation), g)?;
            worst = worst
                .max((scatter.p_boson - density.p_boson).abs())
                .max((scatter.p_fermion - density.p_fermion).abs());
        }
        Ok((worst, format!("dissipative evolution against scattering at {} points", grid.len())))
    })
}

pub fn check_reduced_embedding() -> CheckReport {
    check("reduced-system embedding", 1e-8, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let kappa = rng.gen_range(0.5..2.0);
            let gamma = rng.gen_range(0.0..3.0 * kappa);
            let l2 = rng.gen_range(0.3..1.5);
            let spec = ModeNetworkSpec::coupler(kappa)?;
            let basis = enumerate_fock_basis(2, 2, Statistics::Boson)?;
            let h = mode_hamiltonian_fock(&basis, spec.coupling())?;
            let jumps = jump_operators(&basis, &spec, gamma)?;
            let rho0 = DensityMatrix::number_state(&basis, &[1, 1])?;
            let steps = section_steps(l2, kappa.max(gamma)) * 2;
            let rho = evolve_section_fixed(&rho0, &h, &jumps, l2, steps)?;
            let x = integrate_coupler_x(
                ReducedCouplerState::coincidence_input(),
                kappa,
                gamma,
                l2,
                steps,
            )?;
            let mapped = x_from_density(rho.elements())?;
            for (m, v) in mapped.iter().zip(&x.0) {
                worst = worst.max((m - v).abs());
            }
        }
        Ok((worst, "six tracked components over 20 random coupler sections".into()))
    })
}

pub fn check_threshold_location() -> CheckReport {
    check("threshold location", 1e-6, || {
        let mut worst = 0.0f64;
        for &kappa in &[0.5, 1.0, 2.0] {
            let spec = ModeNetworkSpec::coupler(kappa)?;
            let found = find_ep_threshold(&spec, 0.0, 8.0 * kappa)?;
            worst = worst.max((found.gamma - 2.0 * kappa).abs());
        }
        // Three-site chain with loss on the middle mode degenerates at
        // 2 sqrt(2) times the hop rate.
        let coupling = CMatrix::from_real_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.0],
        ])?;
        let chain = ModeNetworkSpec::new(coupling, vec![0.0, 1.0, 0.0])?;
        let found = find_ep_threshold(&chain, 0.0, 5.0)?;
        worst = worst.max((found.gamma - 8.0f64.sqrt()).abs());
        Ok((worst, "coupler thresholds at three scales plus a three-site chain".into()))
    })
}

pub fn check_threshold_normal_form() -> CheckReport {
    check("threshold normal form", 1e-9, || {
        let mut worst = 0.0f64;
        for &kappa in &[0.5, 1.0, 2.0] {
            let spec = ModeNetworkSpec::coupler(kappa)?;
            let factorization = rotation_at_threshold(&spec, 2.0 * kappa)?;
            let t = &factorization.triangular;
            let target = C64::new(0.0, -kappa);
            worst = worst
                .max((t[(0, 0)] - target).norm())
                .max((t[(1, 1)] - target).norm())
                .max((t[(0, 1)].norm() - 2.0 * kappa).abs())
                .max(t.below_diagonal_max());
            // The rotated threshold propagator must be triangular too.
            let layout = SectionLayout::abstract_single(COUPLER_L2 / kappa)?;
            let u1 = crate::interference::layout_propagator(
                &spec,
                &layout,
                Some(&factorization.rotation),
                2.0 * kappa,
            )?;
            worst = worst.max(u1.below_diagonal_max());
        }
        Ok((worst, "triangular factor entries and rotated propagator triangularity".into()))
    })
}

pub fn check_permanent_determinant_collapse() -> CheckReport {
    check("permanent-determinant collapse", 1e-8, || {
        let mut worst = 0.0f64;
        for &kappa in &[0.5, 1.0, 2.0] {
            let spec = ModeNetworkSpec::coupler(kappa)?;
            let rotation = rotation_at_threshold(&spec, 2.0 * kappa)?.rotation;
            let layout = SectionLayout::abstract_single(COUPLER_L2 / kappa)?;
            let u1 = crate::interference::layout_propagator(
                &spec,
                &layout,
                Some(&rotation),
                2.0 * kappa,
            )?;
            let diff = (permanent(&u1)? - determinant(&u1)?).norm();
            worst = worst.max(diff);
        }
        Ok((worst, "permanent equals determinant on the triangular threshold propagator".into()))
    })
}

pub fn check_statistics_ordering() -> CheckReport {
    check("statistics ordering", 0.0, || {
        let (spec, layout, rotation) = reference_setup()?;
        let grid = gamma_grid(0.0, 4.0, SWEEP_POINTS)?;
        let curve = sweep_gamma_serial(&spec, &layout, Some(&rotation), &grid, "validate")?;
        let margin = 0.02; // one grid cell on either side of the crossing
        let mut violations = 0usize;
        for p in &curve.points {
            if p.gamma < 2.0 - margin && p.p_fermion <= p.p_boson {
                violations += 1;
            }
            if p.gamma > 2.0 + margin && p.p_boson <= p.p_fermion {
                violations += 1;
            }
        }
        Ok((
            violations as f64,
            "fermions win strictly below the threshold, bosons strictly above".into(),
        ))
    })
}

pub fn check_permanent_cross() -> CheckReport {
    check("permanent cross-check", 1e-12, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let mut worst = 0.0f64;
        for trial in 0..200 {
            let n = 1 + trial % 6;
            let a = random_complex_matrix(&mut rng, n, 1.0);
            let fast = permanent(&a)?;
            let slow = naive_permanent(&a)?;
            worst = worst.max((fast - slow).norm() / slow.norm().max(1.0));
        }
        Ok((worst, "200 random matrices up to dimension 6, relative error".into()))
    })
}

pub fn check_expm_degenerate() -> CheckReport {
    check("exponential at the degenerate point", 1e-8, || {
        let mut worst = 0.0f64;
        for &kappa in &[0.5, 1.0, 2.0] {
            let spec = ModeNetworkSpec::coupler(kappa)?;
            let h = crate::system::build_effective_hamiltonian(&spec, 2.0 * kappa)?;
            let gen = h.scale(C64::new(0.0, -1.0));
            for &t in &[0.5, 1.0, 2.0] {
                let fast = mat_exp(&gen, t)?;
                let slow = expm_ode(&gen, t, 1e-11)?;
                worst = worst.max(fast.max_abs_diff(&slow));
            }
        }
        Ok((worst, "scaling-and-squaring against an ODE integration where the generator is defective".into()))
    })
}

pub fn check_expm_group_laws() -> CheckReport {
    check("exponential group laws", 1e-9, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
        let mut worst = 0.0f64;
        for _ in 0..25 {
            let n = rng.gen_range(2..=6);
            let a = random_complex_matrix(&mut rng, n, 1.0);
            let (s, t) = (rng.gen_range(0.1..1.5), rng.gen_range(0.1..1.5));
            let joint = mat_exp(&a, s + t)?;
            let split = mat_exp(&a, s)?.mul(&mat_exp(&a, t)?);
            worst = worst.max(joint.max_abs_diff(&split));

            // Skew-Hermitian generators exponentiate to unitaries.
            let g = random_complex_matrix(&mut rng, n, 1.0);
            let skew = g.sub(&g.adjoint()).scale(C64::new(0.5, 0.0));
            worst = worst.max(mat_exp(&skew, 1.0)?.unitarity_defect());
        }
        Ok((worst, "semigroup property and unitarity of skew-Hermitian exponentials".into()))
    })
}

fn schur_ensemble(body: impl Fn(&CMatrix, &crate::matrix::SchurFactorization) -> f64) -> Result<(f64, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let n = 2 + trial % 7;
        let a = random_complex_matrix(&mut rng, n, 1.0);
        let f = schur_decompose(&a)?;
        worst = worst.max(body(&a, &f));
    }
    Ok((worst, "1000 random matrices, dimensions 2 through 8".into()))
}

pub fn check_schur_reconstruction() -> CheckReport {
    check("schur reconstruction", 1e-9, || {
        schur_ensemble(|a, f| {
            let rebuilt = f.rotation.mul(&f.triangular).mul(&f.rotation.adjoint());
            rebuilt.max_abs_diff(a).max(f.triangular.below_diagonal_max())
        })
    })
}

pub fn check_schur_unitarity() -> CheckReport {
    check("schur unitarity", 1e-10, || {
        schur_ensemble(|_, f| f.rotation.unitarity_defect())
    })
}

pub fn check_propagator_passivity() -> CheckReport {
    check("propagator passivity", 1e-10, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
        let mut worst = 0.0f64;
        for _ in 0..30 {
            let n = rng.gen_range(2..=4);
            let spec = random_spec(&mut rng, n);
            let z = rng.gen_range(0.1..2.0);
            // Lossless propagation is exactly unitary.
            worst = worst.max(propagator(&spec, 0.0, z)?.unitarity_defect());
            // Lossy propagation never amplifies.
            let gamma = rng.gen_range(0.0..3.0);
            let u = propagator(&spec, gamma, z)?;
            worst = worst.max((spectral_norm(&u)? - 1.0).max(0.0));
        }
        Ok((worst, "unitarity at zero loss and spectral contraction under loss".into()))
    })
}

pub fn check_spectral_passivity() -> CheckReport {
    check("spectral passivity", 1e-10, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
        let mut worst = 0.0f64;
        for _ in 0..30 {
            let n = rng.gen_range(2..=4);
            let spec = random_spec(&mut rng, n);
            let gamma = rng.gen_range(0.0..3.0);
            let report = spectral_report(&spec, gamma)?;
            worst = worst.max(report.max_imag);
        }
        Ok((worst, "effective eigenvalues stay in the lower half-plane".into()))
    })
}

fn boundary_states() -> Result<Vec<DensityMatrix>> {
    let spec = ModeNetworkSpec::coupler(1.0)?;
    let layout = SectionLayout::coupler_physical(1.0, COUPLER_L2)?;
    let basis = enumerate_fock_basis(2, 2, Statistics::Boson)?;
    let rho0 = DensityMatrix::number_state(&basis, &[1, 1])?;
    let mut states = Vec::new();
    for &gamma in &[0.5, 2.0, 3.5] {
        states.extend(evolve_density_boundaries(&rho0, &layout, &spec, gamma, None)?);
    }
    Ok(states)
}

pub fn check_boundary_trace() -> CheckReport {
    check("boundary trace", 1e-8, || {
        let mut worst = 0.0f64;
        for s in boundary_states()? {
            worst = worst.max((s.trace().re - 1.0).abs()).max(s.trace().im.abs());
        }
        Ok((worst, "trace preserved at every section boundary".into()))
    })
}

pub fn check_boundary_hermiticity() -> CheckReport {
    check("boundary hermiticity", 1e-10, || {
        let mut worst = 0.0f64;
        for s in boundary_states()? {
            worst = worst.max(s.hermiticity_defect());
        }
        Ok((worst, "states stay Hermitian at every section boundary".into()))
    })
}

pub fn check_boundary_positivity() -> CheckReport {
    check("boundary positivity", 1e-8, || {
        let mut worst = 0.0f64;
        for s in boundary_states()? {
            worst = worst.max((-s.min_eigenvalue()?).max(0.0));
        }
        Ok((worst, "spectra stay nonnegative at every section boundary".into()))
    })
}

pub fn check_fermionic_decoupling() -> CheckReport {
    check("fermionic decoupling", 1e-10, || {
        // The doubly occupied element of any fermionic state decays at
        // exactly twice the loss rate, independent of the coupling.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
        let spec = ModeNetworkSpec::coupler(1.3)?;
        let basis = enumerate_fock_basis(2, 2, Statistics::Fermion)?;
        let h = mode_hamiltonian_fock(&basis, spec.coupling())?;
        let i11 = basis.index_of(&[1, 1]).expect("doubly occupied state");
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let g = random_complex_matrix(&mut rng, basis.dimension(), 1.0);
            let mut raw = g.mul(&g.adjoint());
            let norm = raw.trace().re;
            raw = raw.scale(C64::new(1.0 / norm, 0.0));
            let rho0 = DensityMatrix::new(basis.clone(), raw)?;
            let gamma = rng.gen_range(0.5..2.5);
            let length = rng.gen_range(0.3..1.0);
            let jumps = jump_operators(&basis, &spec, gamma)?;
            let steps = section_steps(length, spec.coupling_scale().max(gamma)) * 2;
            let rho = evolve_section_fixed(&rho0, &h, &jumps, length, steps)?;
            let expect = rho0.elements()[(i11, i11)].re * (-2.0 * gamma * length).exp();
            worst = worst.max((rho.elements()[(i11, i11)].re - expect).abs());
        }
        Ok((worst, "doubly occupied population follows the bare decay law".into()))
    })
}

pub fn check_layout_equivalence_scattering() -> CheckReport {
    check("layout equivalence (scattering)", 1e-12, || {
        let spec = ModeNetworkSpec::coupler(1.0)?;
        let rotation = rotation_at_threshold(&spec, 2.0)?.rotation;
        let abstract_layout = SectionLayout::abstract_single(COUPLER_L2)?;
        let physical_layout = SectionLayout::coupler_physical(1.0, COUPLER_L2)?;
        let mut worst = 0.0f64;
        for &g in &[0.0, 0.7, 2.0, 2.9, 4.0] {
            let a = coincidence_at(&spec, &abstract_layout, Some(&rotation), g)?;
            let p = coincidence_at(&spec, &physical_layout, None, g)?;
            worst =
                worst.max((a.p_boson - p.p_boson).abs()).max((a.p_fermion - p.p_fermion).abs());
        }
        Ok((worst, "instantaneous rotations against lossless sections, scattering route".into()))
    })
}

pub fn check_layout_equivalence_density() -> CheckReport {
    check("layout equivalence (density)", 1e-8, || {
        let spec = ModeNetworkSpec::coupler(1.0)?;
        let rotation = rotation_at_threshold(&spec, 2.0)?.rotation;
        let abstract_layout = SectionLayout::abstract_single(COUPLER_L2)?;
        let physical_layout = SectionLayout::coupler_physical(1.0, COUPLER_L2)?;
        let mut worst = 0.0f64;
        for &g in &[0.0, 2.0, 3.5] {
            let a = lindblad_coincidence_at(&spec, &abstract_layout, Some(&rotation), g)?;
            let p = lindblad_coincidence_at(&spec, &physical_layout, None, g)?;
            worst =
                worst.max((a.p_boson - p.p_boson).abs()).max((a.p_fermion - p.p_fermion).abs());
        }
        Ok((worst, "instantaneous rotations against lossless sections, density route".into()))
    })
}

pub fn check_charpoly_cross() -> CheckReport {
    check("characteristic-root cross-check", 1e-8, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
        let mut worst = 0.0f64;
        for trial in 0..60 {
            let n = 2 + trial % 2;
            let a = random_complex_matrix(&mut rng, n, 1.0);
            let iterative = eigenvalues(&a)?;
            let direct = charpoly_roots(&a)?;
            worst = worst.max(multiset_distance(&iterative, &direct)?);
        }
        Ok((worst, "iterative eigenvalues against explicit polynomial roots".into()))
    })
}

pub fn check_determinant_decay_law() -> CheckReport {
    check("determinant decay law", 1e-12, || {
        // |det|^2 of a lossy propagator is exp(-2 gamma sum(w) z)
        // exactly, so the fermionic curve obeys it for any network.
        let mut worst = 0.0f64;
        let spec = ModeNetworkSpec::coupler(1.0)?;
        let rotation = rotation_at_threshold(&spec, 2.0)?.rotation;
        let layout = SectionLayout::abstract_single(COUPLER_L2)?;
        for &g in &[0.0, 1.0, 2.5, 4.0] {
            let p = coincidence_at(&spec, &layout, Some(&rotation), g)?;
            worst = worst.max((p.p_fermion - (-2.0 * g * COUPLER_L2).exp()).abs());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
        let spec3 = random_spec(&mut rng, 3);
        let weight: f64 = spec3.loss_profile().iter().sum();
        let l2 = 0.6;
        let layout3 = SectionLayout::abstract_single(l2)?;
        let identity = CMatrix::identity(3);
        for &g in &[0.0, 0.8, 1.9] {
            let p = coincidence_at(&spec3, &layout3, Some(&identity), g)?;
            worst = worst.max((p.p_fermion - (-2.0 * g * weight * l2).exp()).abs());
        }
        Ok((worst, "fermionic curve against the exact determinant modulus".into()))
    })
}

/// Runs the full suite in a fixed order.
pub fn run_all() -> Vec<CheckReport> {
    vec![
        check_sweep_endpoints(),
        check_crossing_location(),
        check_closed_form_agreement(),
        check_density_route_agreement(),
        check_reduced_embedding(),
        check_threshold_location(),
        check_threshold_normal_form(),
        check_permanent_determinant_collapse(),
        check_statistics_ordering(),
        check_permanent_cross(),
        check_expm_degenerate(),
        check_expm_group_laws(),
        check_schur_reconstruction(),
        check_schur_unitarity(),
        check_propagator_passivity(),
        check_spectral_passivity(),
        check_boundary_trace(),
        check_boundary_hermiticity(),
        check_boundary_positivity(),
        check_fermionic_decoupling(),
        check_layout_equivalence_scattering(),
        check_layout_equivalence_density(),
        check_charpoly_cross(),
        check_determinant_decay_law(),
    ]
}
