//! Adiabatic conditional phase gate between two ions of a chain.
//!
//! Each ion has levels (g1, s, p) driven by a laser on g1-s and the MW field
//! on s-p; a second ground state g2 is inert. The three nontrivial input
//! configurations g1g1, g1g2 and g2g1 evolve in 9, 3 and 3 dimensional
//! blocks. Frequencies are rad/s, times are s, and hbar = 1.

use nalgebra::{Complex, DMatrix, DVector, SMatrix};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::crystal::CrystalGeometry;

/// Consecutive tracked eigenvectors must overlap at least this much.
pub const MIN_TRACKING_OVERLAP: f64 = 0.9;
const MAX_BISECTIONS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GateError {
    #[error("invalid gate configuration: {0}")]
    InvalidConfig(String),
    #[error("time {t} s outside the pulse window [0, {duration}] s")]
    OutOfRange { t: f64, duration: f64 },
    #[error("lost track of the {block} eigenstate at t = {t} s (overlap {overlap})")]
    TrackingLost { block: Block, t: f64, overlap: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    G1G1,
    G1G2,
    G2G1,
}

impl std::fmt::Display for Block {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Block::G1G1 => "g1g1",
            Block::G1G2 => "g1g2",
            Block::G2G1 => "g2g1",
        })
    }
}

pub const BLOCKS: [Block; 3] = [Block::G1G1, Block::G1G2, Block::G2G1];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Envelope {
    /// Omega_s(t) = peak sin^2(pi t / T).
    SinSquared,
    /// Omega_s(t) = peak throughout; only useful for diagnostics since it
    /// does not switch off at the pulse edges.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum DetuningProfile {
    Constant {
        value: f64,
    },
    /// Linear from `start` at t = 0 to `end` at t = T.
    LinearRamp {
        start: f64,
        end: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseProfile {
    /// Pulse length T (s).
    pub duration: f64,
    /// Peak laser Rabi frequency (rad/s).
    pub peak_rabi: f64,
    pub envelope: Envelope,
    pub detuning: DetuningProfile,
}

impl PulseProfile {
    fn validate(&self) -> Result<(), GateError> {
        if !(self.duration > 0.0) || !self.duration.is_finite() {
            return Err(GateError::InvalidConfig(
                "pulse duration must be positive".into(),
            ));
        }
        let detunings = match self.detuning {
            DetuningProfile::Constant { value } => [value, value],
            DetuningProfile::LinearRamp { start, end } => [start, end],
        };
        if !self.peak_rabi.is_finite() || detunings.iter().any(|d| !d.is_finite()) {
            return Err(GateError::InvalidConfig(
                "pulse parameters must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// (Omega_s(t), Delta_s(t)) in rad/s.
pub fn pulse(profile: &PulseProfile, t: f64) -> Result<(f64, f64), GateError> {
    let duration = profile.duration;
    if !(0.0..=duration).contains(&t) {
        return Err(GateError::OutOfRange { t, duration });
    }
    let rabi = match profile.envelope {
        Envelope::SinSquared => profile.peak_rabi * (PI * t / duration).sin().powi(2),
        Envelope::Constant => profile.peak_rabi,
    };
    let detuning = match profile.detuning {
        DetuningProfile::Constant { value } => value,
        DetuningProfile::LinearRamp { start, end } => start + (end - start) * t / duration,
    };
    Ok((rabi, detuning))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateConfig {
    /// Chain indices (0-based) of the two ions.
    pub ions: [usize; 2],
    /// MW Rabi frequency on s-p (rad/s).
    pub omega2: f64,
    /// MW detunings seen by the two ions (rad/s).
    pub delta2: [f64; 2],
    /// Matrix element of the |s,p> - |p,s> exchange (rad/s).
    pub flip_flop: f64,
    pub pulse: PulseProfile,
}

impl GateConfig {
    pub fn validate(&self) -> Result<(), GateError> {
        if self.ions[0] == self.ions[1] {
            return Err(GateError::InvalidConfig("the two ions must differ".into()));
        }
        if ![self.omega2, self.delta2[0], self.delta2[1], self.flip_flop]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(GateError::InvalidConfig(
                "frequencies must be finite".into(),
            ));
        }
        self.pulse.validate()
    }

    /// Parameters of the reference gate: ions 1 and 2 of a ten-ion chain,
    /// Omega2 = 2 pi 57.5 MHz, Delta2 = 2 pi (-279, -667) MHz, J = 2 pi 500 MHz,
    /// a 10 us sin^2 pulse with T Omega_s = 100 and Delta_s = 2 pi 0.5 MHz.
    pub fn reference(geometry: &CrystalGeometry) -> Result<Self, GateError> {
        let two_pi_mhz = 2.0 * PI * 1e6;
        let duration = 10e-6;
        Ok(GateConfig {
            ions: [0, 1],
            omega2: 57.5 * two_pi_mhz,
            delta2: [-279.0 * two_pi_mhz, -667.0 * two_pi_mhz],
            flip_flop: chain_flip_flop(geometry, 0, 1, 500.0 * two_pi_mhz)?,
            pulse: PulseProfile {
                duration,
                peak_rabi: 100.0 / duration,
                envelope: Envelope::SinSquared,
                detuning: DetuningProfile::Constant {
                    value: 0.5 * two_pi_mhz,
                },
            },
        })
    }
}

/// Exchange element J / |u_m - u_n|^3 between two ions of a chain, J in rad/s.
pub fn chain_flip_flop(
    geometry: &CrystalGeometry,
    m: usize,
    n: usize,
    coupling: f64,
) -> Result<f64, GateError> {
    let len = geometry.len();
    if m >= len || n >= len || m == n {
        return Err(GateError::InvalidConfig(format!(
            "ions ({m}, {n}) invalid for a {len}-ion chain"
        )));
    }
    Ok(coupling
        / (geometry.positions[m] - geometry.positions[n])
            .abs()
            .powi(3))
}

/// Single-ion Hamiltonian in the basis (g1, s, p).
fn single_ion(rabi: f64, detuning: f64, omega2: f64, delta2: f64) -> SMatrix<f64, 3, 3> {
    SMatrix::<f64, 3, 3>::new(
        detuning,
        0.5 * rabi,
        0.0,
        0.5 * rabi,
        0.0,
        0.5 * omega2,
        0.0,
        0.5 * omega2,
        -delta2,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockHamiltonians {
    /// Basis index 3a + b with a, b in (g1, s, p) for the first and second ion.
    pub g1g1: DMatrix<f64>,
    /// First ion in g1, second in g2.
    pub g1g2: DMatrix<f64>,
    /// First ion in g2, second in g1.
    pub g2g1: DMatrix<f64>,
}

impl BlockHamiltonians {
    pub fn get(&self, block: Block) -> &DMatrix<f64> {
        match block {
            Block::G1G1 => &self.g1g1,
            Block::G1G2 => &self.g1g2,
            Block::G2G1 => &self.g2g1,
        }
    }
}

/// |s,p> and |p,s> in the two-ion basis.
const SP: usize = 5;
const PS: usize = 7;

pub fn block_hamiltonians(cfg: &GateConfig, t: f64) -> Result<BlockHamiltonians, GateError> {
    let (rabi, detuning) = pulse(&cfg.pulse, t)?;
    let a = single_ion(rabi, detuning, cfg.omega2, cfg.delta2[0]);
    let b = single_ion(rabi, detuning, cfg.omega2, cfg.delta2[1]);
    let eye = SMatrix::<f64, 3, 3>::identity();
    let mut pair = DMatrix::from_fn(9, 9, |r, c| {
        let (ra, rb, ca, cb) = (r / 3, r % 3, c / 3, c % 3);
        a[(ra, ca)] * eye[(rb, cb)] + eye[(ra, ca)] * b[(rb, cb)]
    });
    pair[(SP, PS)] += cfg.flip_flop;
    pair[(PS, SP)] += cfg.flip_flop;
    Ok(BlockHamiltonians {
        g1g1: pair,
        g1g2: DMatrix::from_iterator(3, 3, a.iter().copied()),
        g2g1: DMatrix::from_iterator(3, 3, b.iter().copied()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateOptions {
    /// Uniform intervals for eigenvalue tracking and the phase integral.
    pub tracking_steps: usize,
    /// Magnus steps of the full time-dependent evolution.
    pub tdse_steps: usize,
}

impl Default for GateOptions {
    fn default() -> Self {
        GateOptions {
            tracking_steps: 4000,
            tdse_steps: 4000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub block: Block,
    /// Integral of the tracked eigenvalue over the pulse (rad).
    pub dynamical_phase: f64,
    /// 1 - |<initial|psi(T)>|^2 from the full evolution.
    pub leakage: f64,
    /// arg <initial|psi(T)> from the full evolution (rad).
    pub returned_phase: f64,
    /// Largest Rydberg population of the tracked eigenstate.
    pub max_rydberg_population: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateReport {
    pub times: Vec<f64>,
    pub rabi: Vec<f64>,
    pub detuning: Vec<f64>,
    /// Tracked eigenvalues of the g1g1, g1g2 and g2g1 blocks (rad/s).
    pub energies: [Vec<f64>; 3],
    /// Cumulative entanglement phase (rad).
    pub phase: Vec<f64>,
    pub blocks: [BlockSummary; 3],
    /// Final entanglement phase from the eigenvalue integral (rad).
    pub final_phase: f64,
    /// The same phase extracted from the full evolution, wrapped to (-pi, pi] (rad).
    pub evolution_phase: f64,
    /// Wrapped difference between the two phase estimates (rad).
    pub phase_discrepancy: f64,
}

impl GateReport {
    pub fn max_leakage(&self) -> f64 {
        self.blocks.iter().map(|b| b.leakage).fold(0.0, f64::max)
    }
}

/// Wrap an angle to (-pi, pi].
pub fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Cumulative integral of uniformly sampled data with Simpson weights. Each
/// odd-indexed point uses the three-point rule for its half of a panel.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * h * (values[0] + values[1]);
        return out;
    }
    let mut k = 1;
    while k < n {
        let f0 = values[k - 1];
        let f1 = values[k];
        if k + 1 < n {
            let f2 = values[k + 1];
            out[k] = out[k - 1] + h / 12.0 * (5.0 * f0 + 8.0 * f1 - f2);
            out[k + 1] = out[k - 1] + h / 3.0 * (f0 + 4.0 * f1 + f2);
            k += 2;
        } else {
            let fm = values[k - 2];
            out[k] = out[k - 1] + h / 12.0 * (-fm + 8.0 * f0 + 5.0 * f1);
            k += 1;
        }
    }
    out
}

struct Tracked {
    energies: Vec<f64>,
    max_rydberg_population: f64,
}

fn eigen(h: &DMatrix<f64>) -> nalgebra::SymmetricEigen<f64, nalgebra::Dyn> {
    h.clone().symmetric_eigen()
}

/// Eigenvector of `h` with the largest overlap with `previous`, signed to
/// overlap positively, and that overlap.
fn best_match(h: &DMatrix<f64>, previous: &DVector<f64>) -> (f64, DVector<f64>, f64) {
    let eig = eigen(h);
    let (k, overlap) = (0..eig.eigenvalues.len())
        .map(|k| (k, eig.eigenvectors.column(k).dot(previous)))
        .fold(
            (0, 0.0f64),
            |best, x| if x.1.abs() > best.1.abs() { x } else { best },
        );
    let mut v = eig.eigenvectors.column(k).into_owned();
    if overlap < 0.0 {
        v.neg_mut();
    }
    (eig.eigenvalues[k], v, overlap.abs())
}

fn track_block(cfg: &GateConfig, block: Block, times: &[f64]) -> Result<Tracked, GateError> {
    let hamiltonian = |t: f64| block_hamiltonians(cfg, t).map(|b| b.get(block).clone());
    let h0 = hamiltonian(times[0])?;
    let mut current = DVector::zeros(h0.nrows());
    current[0] = 1.0;
    let (e0, v0, _) = best_match(&h0, &current);
    current = v0;
    // Index 0 is the all-ground configuration in every block.
    let rydberg = |v: &DVector<f64>| 1.0 - v[0] * v[0];
    let mut energies = vec![e0];
    let mut max_pop = rydberg(&current);
    for w in times.windows(2) {
        let (e, v) = step_tracking(&hamiltonian, block, &current, w[0], w[1], 0)?;
        current = v;
        max_pop = max_pop.max(rydberg(&current));
        energies.push(e);
    }
    Ok(Tracked {
        energies,
        max_rydberg_population: max_pop,
    })
}

fn step_tracking(
    hamiltonian: &impl Fn(f64) -> Result<DMatrix<f64>, GateError>,
    block: Block,
    previous: &DVector<f64>,
    t0: f64,
    t1: f64,
    depth: usize,
) -> Result<(f64, DVector<f64>), GateError> {
    let (e, v, overlap) = best_match(&hamiltonian(t1)?, previous);
    if overlap >= MIN_TRACKING_OVERLAP {
        return Ok((e, v));
    }
    if depth == MAX_BISECTIONS {
        return Err(GateError::TrackingLost {
            block,
            t: t1,
            overlap,
        });
    }
    let mid = 0.5 * (t0 + t1);
    let (_, v_mid) = step_tracking(hamiltonian, block, previous, t0, mid, depth + 1)?;
    step_tracking(hamiltonian, block, &v_mid, mid, t1, depth + 1)
}

/// exp(-i K) for Hermitian K.
fn unitary_exp(k: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = k.clone().symmetric_eigen();
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex::from_polar(1.0, -l)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Full evolution of the bare initial state of one block with a fourth-order
/// Magnus integrator. Returns <initial|psi(T)>.
fn evolve_block(cfg: &GateConfig, block: Block, steps: usize) -> Result<Complex64, GateError> {
    let duration = cfg.pulse.duration;
    let dt = duration / steps as f64;
    let offset = 3f64.sqrt() / 6.0;
    let hamiltonian = |t: f64| -> Result<DMatrix<Complex64>, GateError> {
        Ok(block_hamiltonians(cfg, t.clamp(0.0, duration))?
            .get(block)
            .map(|x| Complex64::new(x, 0.0)))
    };
    let dim = if block == Block::G1G1 { 9 } else { 3 };
    let mut psi = DVector::<Complex64>::zeros(dim);
    psi[0] = Complex64::new(1.0, 0.0);
    let commutator_weight = Complex64::new(0.0, -3f64.sqrt() / 12.0 * dt * dt);
    for k in 0..steps {
        let t = k as f64 * dt;
        let h1 = hamiltonian(t + (0.5 - offset) * dt)?;
        let h2 = hamiltonian(t + (0.5 + offset) * dt)?;
        let commutator = &h2 * &h1 - &h1 * &h2;
        let kmat = (&h1 + &h2) * Complex64::new(0.5 * dt, 0.0) + commutator * commutator_weight;
        psi = unitary_exp(&kmat) * psi;
    }
    Ok(psi[0])
}

/// Tracks the adiabatic eigenvalues of the three blocks, integrates the
/// entanglement phase and cross-checks it against the full evolution.
pub fn entanglement_phase(cfg: &GateConfig, options: GateOptions) -> Result<GateReport, GateError> {
    cfg.validate()?;
    if options.tracking_steps < 2 || options.tdse_steps < 1 {
        return Err(GateError::InvalidConfig("too few time steps".into()));
    }
    let duration = cfg.pulse.duration;
    let h = duration / options.tracking_steps as f64;
    let times: Vec<f64> = (0..=options.tracking_steps)
        .map(|k| (k as f64 * h).min(duration))
        .collect();
    let mut rabi = Vec::with_capacity(times.len());
    let mut detuning = Vec::with_capacity(times.len());
    for &t in &times {
        let (r, d) = pulse(&cfg.pulse, t)?;
        rabi.push(r);
        detuning.push(d);
    }

    let results: Vec<Result<(Tracked, Complex64), GateError>> = BLOCKS
        .par_iter()
        .map(|&block| {
            let tracked = track_block(cfg, block, &times)?;
            let amplitude = evolve_block(cfg, block, options.tdse_steps)?;
            Ok((tracked, amplitude))
        })
        .collect();
    let mut tracked = Vec::with_capacity(3);
    for r in results {
        tracked.push(r?);
    }

    let integrals: Vec<Vec<f64>> = tracked
        .iter()
        .map(|(t, _)| cumulative_simpson(&t.energies, h))
        .collect();
    let phase: Vec<f64> = (0..times.len())
        .map(|k| integrals[0][k] - integrals[1][k] - integrals[2][k])
        .collect();
    let final_phase = *phase.last().unwrap();
    let args: Vec<f64> = tracked.iter().map(|(_, a)| a.arg()).collect();
    // A returning amplitude carries exp(-i integral of energy).
    let evolution_phase = wrap_phase(-(args[0] - args[1] - args[2]));
    let summaries: Vec<BlockSummary> = BLOCKS
        .iter()
        .zip(&tracked)
        .zip(&integrals)
        .map(|((&block, (t, a)), integral)| BlockSummary {
            block,
            dynamical_phase: *integral.last().unwrap(),
            leakage: (1.0 - a.norm_sqr()).max(0.0),
            returned_phase: a.arg(),
            max_rydberg_population: t.max_rydberg_population,
        })
        .collect();
    let mut energies = tracked.into_iter().map(|(t, _)| t.energies);
    Ok(GateReport {
        energies: [
            energies.next().unwrap(),
            energies.next().unwrap(),
            energies.next().unwrap(),
        ],
        times,
        rabi,
        detuning,
        phase,
        blocks: [
            summaries[0].clone(),
            summaries[1].clone(),
            summaries[2].clone(),
        ],
        final_phase,
        evolution_phase,
        phase_discrepancy: wrap_phase(final_phase - evolution_phase),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::equilibrium_positions;

    fn reference() -> GateConfig {
        GateConfig::reference(&equilibrium_positions(10).unwrap()).unwrap()
    }

    fn quick() -> GateOptions {
        GateOptions {
            tracking_steps: 400,
            tdse_steps: 400,
        }
    }

    #[test]
    fn pulse_shapes() {
        let p = reference().pulse;
        assert_eq!(pulse(&p, 0.0).unwrap().0, 0.0);
        assert!(pulse(&p, p.duration).unwrap().0.abs() < 1e-9 * p.peak_rabi);
        assert!((pulse(&p, p.duration / 2.0).unwrap().0 - p.peak_rabi).abs() < 1e-9);
        for t in [0.0, 3e-6, p.duration] {
            assert_eq!(pulse(&p, t).unwrap().1, 2.0 * PI * 0.5e6);
        }
        let ramp = PulseProfile {
            detuning: DetuningProfile::LinearRamp {
                start: -1.0,
                end: 3.0,
            },
            ..p
        };
        assert!((pulse(&ramp, p.duration / 4.0).unwrap().1 - 0.0).abs() < 1e-12);
        assert!(matches!(
            pulse(&p, -1e-9),
            Err(GateError::OutOfRange { .. })
        ));
        assert!(matches!(
            pulse(&p, 2.0 * p.duration),
            Err(GateError::OutOfRange { .. })
        ));
    }

    #[test]
    fn bare_blocks_are_diagonal() {
        let mut cfg = reference();
        cfg.omega2 = 0.0;
        let b = block_hamiltonians(&cfg, 0.0).unwrap();
        let ds = 2.0 * PI * 0.5e6;
        let expected = [ds, 0.0, -cfg.delta2[0]];
        for (r, &diag) in expected.iter().enumerate() {
            for c in 0..3 {
                let e = if r == c { diag } else { 0.0 };
                assert_eq!(b.g1g2[(r, c)], e);
            }
        }
    }

    #[test]
    fn uncoupled_ions_are_additive() {
        let mut cfg = reference();
        cfg.flip_flop = 0.0;
        let b = block_hamiltonians(&cfg, 2.7e-6).unwrap();
        let eye = DMatrix::<f64>::identity(3, 3);
        let sum = b.g1g2.kronecker(&eye) + eye.kronecker(&b.g2g1);
        assert!((b.g1g1 - sum).amax() == 0.0);
    }

    #[test]
    fn reference_blocks_are_hermitian() {
        let cfg = reference();
        for t in [0.0, 1e-6, 5e-6, 10e-6] {
            let b = block_hamiltonians(&cfg, t).unwrap();
            for block in BLOCKS {
                let h = b.get(block);
                assert!((h - h.transpose()).amax() <= 1e-12 * h.amax());
            }
        }
        let u = equilibrium_positions(10).unwrap().positions;
        let expected = 2.0 * PI * 500e6 / (u[1] - u[0]).powi(3);
        assert!((cfg.flip_flop / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = reference();
        cfg.ions = [1, 1];
        assert!(entanglement_phase(&cfg, quick()).is_err());
        let mut cfg = reference();
        cfg.pulse.duration = 0.0;
        assert!(cfg.validate().is_err());
        let g = equilibrium_positions(3).unwrap();
        assert!(chain_flip_flop(&g, 0, 3, 1.0).is_err());
        assert!(chain_flip_flop(&g, 1, 1, 1.0).is_err());
    }

    #[test]
    fn simpson_integrates_cubics_exactly() {
        let h = 0.1;
        let f: Vec<f64> = (0..=9)
            .map(|k| (k as f64 * h).powi(3) - 2.0 * k as f64 * h)
            .collect();
        let cum = cumulative_simpson(&f, h);
        for (k, c) in cum.iter().enumerate() {
            let t = k as f64 * h;
            let exact = t.powi(4) / 4.0 - t * t;
            // Even points are exact for cubics; odd points carry a small O(h^4) term.
            let tol = if k % 2 == 0 { 1e-13 } else { 1e-4 };
            assert!((c - exact).abs() < tol, "k={k}: {c} vs {exact}");
        }
        let quad: Vec<f64> = (0..=8).map(|k| (k as f64 * h).powi(2)).collect();
        for (k, c) in cumulative_simpson(&quad, h).iter().enumerate() {
            assert!((c - (k as f64 * h).powi(3) / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn wrapping() {
        assert!((wrap_phase(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(0.5 - 4.0 * PI) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn no_laser_no_phase() {
        let mut cfg = reference();
        cfg.pulse.peak_rabi = 0.0;
        let r = entanglement_phase(&cfg, quick()).unwrap();
        assert!(r.phase.iter().all(|p| p.abs() < 1e-6));
        assert!(r.final_phase.abs() < 1e-6);
        assert!(r.max_leakage() < 1e-12);
    }

    #[test]
    fn no_coupling_no_phase() {
        let mut cfg = reference();
        cfg.flip_flop = 0.0;
        let r = entanglement_phase(&cfg, quick()).unwrap();
        let scale = r.blocks[0].dynamical_phase.abs();
        assert!(
            r.final_phase.abs() < 1e-9 * scale.max(1.0),
            "{}",
            r.final_phase
        );
        assert_eq!(r.phase[0], 0.0);
    }

    #[test]
    fn bare_energies_are_additive_at_pulse_start() {
        let r = entanglement_phase(&reference(), quick()).unwrap();
        let [e11, e12, e21] = &r.energies;
        assert!((e11[0] - e12[0] - e21[0]).abs() < 1e-6);
        assert!((e11[0] - 2.0 * 2.0 * PI * 0.5e6).abs() < 1e-3);
    }

    #[test]
    fn reference_gate_is_adiabatic() {
        let r = entanglement_phase(&reference(), GateOptions::default()).unwrap();
        assert_eq!(r.phase[0], 0.0);
        assert!(r.max_leakage() < 0.01);
        assert!(r.phase_discrepancy.abs() < 1e-2);
        // Golden value of the reference gate.
        assert!((r.final_phase - 0.879146).abs() < 1e-6, "{}", r.final_phase);
    }

    #[test]
    fn frozen_pulse_accumulates_linearly() {
        let mut cfg = reference();
        cfg.pulse.envelope = Envelope::Constant;
        cfg.pulse.peak_rabi = 2e6;
        let r = entanglement_phase(
            &cfg,
            GateOptions {
                tracking_steps: 100,
                tdse_steps: 1,
            },
        )
        .unwrap();
        let slope = r.phase[1] / r.times[1];
        for (t, p) in r.times.iter().zip(&r.phase) {
            assert!((p - slope * t).abs() < 1e-9 * r.final_phase.abs().max(1.0));
        }
    }
}
