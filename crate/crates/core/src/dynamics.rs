//! Unitary time evolution of spin chains and the excitation transfer experiment.
//!
//! Times are in units of hbar divided by the model's energy unit (hbar / |J| for
//! J-unit models, seconds times 1/hbar for SI models).

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crystal::{equilibrium_positions, CrystalError};
use crate::spinchain::{
    site_magnetizations, PairConvention, SpinChainError, SpinChainModel, SpinOperator, SpinState,
};

/// Chains up to this size are propagated through a full eigendecomposition.
pub const SPECTRAL_LIMIT: usize = 10;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_DT: f64 = 0.005;
const KRYLOV_DIMENSION: usize = 30;
const MAX_STEP_HALVINGS: usize = 40;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    Spin(#[from] SpinChainError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("initial state norm is {0}, expected 1")]
    NotNormalized(f64),
    #[error("state has {state} spins, model has {model}")]
    SizeMismatch { state: usize, model: usize },
    #[error("time grid must be non-empty and strictly increasing")]
    InvalidTimes,
    #[error("Krylov step failed to reach tolerance at t = {t}")]
    ToleranceFailure { t: f64 },
    #[error("spectral propagation supports at most {limit} sites, got {n}")]
    TooLargeForSpectral { n: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Propagator {
    /// Spectral for small chains, Krylov above.
    #[default]
    Auto,
    Spectral,
    Krylov,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    pub propagator: Propagator,
    /// Local error target of the Krylov propagator.
    pub tolerance: f64,
    pub store_states: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            propagator: Propagator::Auto,
            tolerance: DEFAULT_TOLERANCE,
            store_states: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// magnetization[k][i] = <S_z> of site i at times[k].
    pub magnetization: Vec<Vec<f64>>,
    pub states: Option<Vec<SpinState>>,
    /// max_k | ||psi(t_k)|| - 1 |.
    pub norm_drift: f64,
    /// |<H>(t_end) - <H>(t_0)| / max(|<H>(t_0)|, 1).
    pub energy_drift: f64,
    pub propagator: Propagator,
}

impl Trajectory {
    /// Up-state population of `site` over time.
    pub fn up_population(&self, site: usize) -> Vec<f64> {
        self.magnetization.iter().map(|m| m[site] + 0.5).collect()
    }
}

pub fn site_magnetization(psi: &SpinState, site: usize) -> Result<f64, DynamicsError> {
    Ok(psi.magnetization(site)?)
}

fn norm(v: &[Complex64]) -> f64 {
    v.par_iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.par_iter()
        .zip(b.par_iter())
        .map(|(x, y)| x.conj() * y)
        .sum()
}

/// Evolve `psi0` under the time-independent `model`, sampling at `times`.
/// The state at times[0] is psi0.
pub fn evolve(
    model: &SpinChainModel,
    psi0: &SpinState,
    times: &[f64],
    options: EvolveOptions,
) -> Result<Trajectory, DynamicsError> {
    if psi0.n != model.n {
        return Err(DynamicsError::SizeMismatch {
            state: psi0.n,
            model: model.n,
        });
    }
    let n0 = psi0.norm();
    if (n0 - 1.0).abs() > 1e-8 {
        return Err(DynamicsError::NotNormalized(n0));
    }
    if times.is_empty()
        || times.windows(2).any(|w| !(w[1] > w[0]))
        || times.iter().any(|t| !t.is_finite())
    {
        return Err(DynamicsError::InvalidTimes);
    }
    if !(options.tolerance > 0.0) {
        return Err(DynamicsError::InvalidArgument(
            "tolerance must be positive".into(),
        ));
    }
    let propagator = match options.propagator {
        Propagator::Auto if model.n <= SPECTRAL_LIMIT => Propagator::Spectral,
        Propagator::Auto => Propagator::Krylov,
        p => p,
    };
    if propagator == Propagator::Spectral && model.n > SPECTRAL_LIMIT {
        return Err(DynamicsError::TooLargeForSpectral {
            n: model.n,
            limit: SPECTRAL_LIMIT,
        });
    }

    let op = model.operator()?;
    let mut recorder = Recorder::new(model.n, options.store_states);
    match propagator {
        Propagator::Spectral => propagate_spectral(model, psi0, times, &mut recorder)?,
        _ => propagate_krylov(&op, psi0, times, options.tolerance, &mut recorder)?,
    }
    let e0 = op.expectation(&psi0.amplitudes);
    let e1 = op.expectation(&recorder.last);
    Ok(Trajectory {
        times: times.to_vec(),
        magnetization: recorder.magnetization,
        states: recorder.states,
        norm_drift: recorder.norm_drift,
        energy_drift: (e1 - e0).abs() / e0.abs().max(1.0),
        propagator,
    })
}

struct Recorder {
    n: usize,
    magnetization: Vec<Vec<f64>>,
    states: Option<Vec<SpinState>>,
    norm_drift: f64,
    last: Vec<Complex64>,
}

impl Recorder {
    fn new(n: usize, store: bool) -> Self {
        Recorder {
            n,
            magnetization: Vec::new(),
            states: store.then(Vec::new),
            norm_drift: 0.0,
            last: Vec::new(),
        }
    }

    fn record(&mut self, psi: &[Complex64]) {
        self.norm_drift = self.norm_drift.max((norm(psi) - 1.0).abs());
        self.magnetization.push(site_magnetizations(psi, self.n));
        if let Some(states) = &mut self.states {
            states.push(SpinState {
                n: self.n,
                amplitudes: psi.to_vec(),
            });
        }
        self.last = psi.to_vec();
    }
}

fn propagate_spectral(
    model: &SpinChainModel,
    psi0: &SpinState,
    times: &[f64],
    recorder: &mut Recorder,
) -> Result<(), DynamicsError> {
    let h = model.dense()?;
    let eig = SymmetricEigen::new(h);
    let v = &eig.eigenvectors;
    let re = DVector::from_iterator(psi0.amplitudes.len(), psi0.amplitudes.iter().map(|a| a.re));
    let im = DVector::from_iterator(psi0.amplitudes.len(), psi0.amplitudes.iter().map(|a| a.im));
    let (c_re, c_im) = (v.tr_mul(&re), v.tr_mul(&im));
    let t0 = times[0];
    let dim = re.len();
    // Columns 0 and 1 hold real and imaginary parts of the rotated coefficients.
    let mut rotated = DMatrix::<f64>::zeros(dim, 2);
    for &t in times {
        for k in 0..dim {
            let c = Complex64::new(c_re[k], c_im[k])
                * Complex64::from_polar(1.0, -eig.eigenvalues[k] * (t - t0));
            rotated[(k, 0)] = c.re;
            rotated[(k, 1)] = c.im;
        }
        let psi_parts = v * &rotated;
        let psi: Vec<Complex64> = (0..dim)
            .map(|r| Complex64::new(psi_parts[(r, 0)], psi_parts[(r, 1)]))
            .collect();
        recorder.record(&psi);
    }
    Ok(())
}

/// Lanczos basis of the Krylov space spanned by psi, H psi, ... with full
/// reorthogonalization. Returns the basis, the tridiagonal coefficients and
/// the trailing off-diagonal element (zero on invariant subspaces).
struct Lanczos {
    basis: Vec<Vec<Complex64>>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    residual: f64,
}

fn lanczos(op: &SpinOperator, psi: &[Complex64], m_max: usize) -> Lanczos {
    let dim = psi.len();
    let m_max = m_max.min(dim);
    let nrm = norm(psi);
    let mut basis = vec![psi.iter().map(|a| a / nrm).collect::<Vec<_>>()];
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    loop {
        let j = basis.len() - 1;
        op.apply(&basis[j], &mut w);
        alpha.push(dot(&basis[j], &w).re);
        for v in basis.iter() {
            let proj = dot(v, &w);
            w.par_iter_mut()
                .zip(v.par_iter())
                .for_each(|(a, b)| *a -= b * proj);
        }
        let b = norm(&w);
        let scale = 1.0 + alpha[j].abs() + beta.last().copied().unwrap_or(0.0);
        let breakdown = b <= 1e-13 * scale;
        if basis.len() == m_max || breakdown {
            return Lanczos {
                basis,
                alpha,
                beta,
                residual: if breakdown { 0.0 } else { b },
            };
        }
        beta.push(b);
        basis.push(w.iter().map(|a| a / b).collect());
    }
}

/// exp(-i T dt) e1 for the tridiagonal T.
fn small_propagator(eig: &SymmetricEigen<f64, nalgebra::Dyn>, dt: f64) -> Vec<Complex64> {
    let m = eig.eigenvalues.len();
    (0..m)
        .map(|r| {
            (0..m)
                .map(|k| {
                    let v = &eig.eigenvectors;
                    Complex64::from_polar(v[(r, k)] * v[(0, k)], -eig.eigenvalues[k] * dt)
                })
                .sum()
        })
        .collect()
}

fn propagate_krylov(
    op: &SpinOperator,
    psi0: &SpinState,
    times: &[f64],
    tolerance: f64,
    recorder: &mut Recorder,
) -> Result<(), DynamicsError> {
    let mut psi = psi0.amplitudes.clone();
    recorder.record(&psi);
    let mut t = times[0];
    let mut trial_step = times.get(1).map_or(1.0, |t1| t1 - times[0]);
    for &target in &times[1..] {
        while t < target {
            let lz = lanczos(op, &psi, KRYLOV_DIMENSION);
            let m = lz.alpha.len();
            let mut tri = DMatrix::zeros(m, m);
            for k in 0..m {
                tri[(k, k)] = lz.alpha[k];
                if k + 1 < m {
                    tri[(k, k + 1)] = lz.beta[k];
                    tri[(k + 1, k)] = lz.beta[k];
                }
            }
            let eig = SymmetricEigen::new(tri);
            let remaining = target - t;
            let mut dt = trial_step.min(remaining);
            let mut accepted = None;
            for _ in 0..MAX_STEP_HALVINGS {
                let coeffs = small_propagator(&eig, dt);
                let err = lz.residual * coeffs[m - 1].norm();
                if err <= tolerance {
                    accepted = Some(coeffs);
                    break;
                }
                dt *= 0.5;
            }
            let coeffs = accepted.ok_or(DynamicsError::ToleranceFailure { t })?;
            let nrm = norm(&psi);
            psi.par_iter_mut().enumerate().for_each(|(i, a)| {
                *a = lz
                    .basis
                    .iter()
                    .zip(&coeffs)
                    .map(|(v, c)| v[i] * c)
                    .sum::<Complex64>()
                    * nrm;
            });
            t = if dt >= remaining { target } else { t + dt };
            // Grow the trial step again once a step has gone through unreduced.
            trial_step = if dt == trial_step.min(remaining) {
                trial_step * 1.5
            } else {
                dt
            };
        }
        recorder.record(&psi);
    }
    Ok(())
}

/// Uniform grid 0, dt, 2 dt, ..., up to t_max inclusive.
pub fn uniform_grid(t_max: f64, dt: f64) -> Result<Vec<f64>, DynamicsError> {
    if !(dt > 0.0) || !(t_max > 0.0) || !dt.is_finite() || !t_max.is_finite() {
        return Err(DynamicsError::InvalidArgument(
            "t_max and dt must be positive".into(),
        ));
    }
    let steps = (t_max / dt).round() as usize;
    Ok((0..=steps).map(|k| k as f64 * dt).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferParams {
    pub n_ions: usize,
    /// B_z / |J|.
    pub bz: f64,
    /// hbar Omega2 / |J|.
    pub omega2: f64,
    /// Sign of J; the physical coupling is negative.
    pub coupling_sign: f64,
    pub convention: PairConvention,
    /// Scan window in hbar / |J|.
    pub t_max: f64,
    pub dt: f64,
    /// Start with ion 1 down and every other ion up.
    pub invert_initial: bool,
}

impl Default for TransferParams {
    fn default() -> Self {
        TransferParams {
            n_ions: 10,
            bz: 0.65,
            omega2: 0.01,
            coupling_sign: -1.0,
            convention: PairConvention::Ordered,
            t_max: 3.0,
            dt: DEFAULT_DT,
            invert_initial: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    /// Peak population of the last ion in the state ion 1 started in.
    pub efficiency: f64,
    /// Time of that peak (hbar / |J|).
    pub transfer_time: f64,
    pub trajectory: Trajectory,
}

/// Maximum of sampled data refined by a parabola through the best sample and its neighbours.
pub fn interpolated_peak(times: &[f64], values: &[f64]) -> (f64, f64) {
    let k = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if *v > values[best] { i } else { best });
    if k == 0 || k + 1 >= values.len() {
        return (times[k], values[k]);
    }
    let (y0, y1, y2) = (values[k - 1], values[k], values[k + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    if curvature >= 0.0 {
        return (times[k], y1);
    }
    // Offset in units of the local spacing; assumes a uniform grid around k.
    let h = 0.5 * (times[k + 1] - times[k - 1]);
    let x = 0.5 * (y0 - y2) / curvature;
    (times[k] + x * h, y1 - 0.25 * (y0 - y2) * x)
}

pub fn transfer_experiment(params: &TransferParams) -> Result<TransferReport, DynamicsError> {
    let n = params.n_ions;
    if n < 2 {
        return Err(DynamicsError::InvalidArgument(
            "transfer needs at least two ions".into(),
        ));
    }
    let geometry = equilibrium_positions(n)?;
    let model = SpinChainModel::dimensionless(
        &geometry,
        params.bz,
        params.omega2,
        params.coupling_sign,
        params.convention,
    )?;
    let up: Vec<usize> = if params.invert_initial {
        (1..n).collect()
    } else {
        vec![0]
    };
    let psi0 = SpinState::with_up_sites(n, &up)?;
    let times = uniform_grid(params.t_max, params.dt)?;
    let trajectory = evolve(&model, &psi0, &times, EvolveOptions::default())?;
    let population: Vec<f64> = trajectory
        .magnetization
        .iter()
        .map(|m| {
            let up = m[n - 1] + 0.5;
            if params.invert_initial {
                1.0 - up
            } else {
                up
            }
        })
        .collect();
    let (transfer_time, efficiency) = interpolated_peak(&trajectory.times, &population);
    Ok(TransferReport {
        efficiency: efficiency.clamp(0.0, 1.0),
        transfer_time,
        trajectory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinchain::EnergyUnits;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_model(n: usize, seed: u64) -> SpinChainModel {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut xy = vec![vec![0.0; n]; n];
        let mut zz = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                xy[i][j] = rng.random_range(-1.0..1.0);
                xy[j][i] = xy[i][j];
                zz[i][j] = rng.random_range(-0.5..0.5);
                zz[j][i] = zz[i][j];
            }
        }
        SpinChainModel {
            n,
            hx: (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
            hz: (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
            xy,
            zz,
            zfield_extra: vec![0.0; n],
            scalar_offset: 0.0,
            units: EnergyUnits::JUnits,
            convention: PairConvention::Ordered,
        }
    }

    fn random_state(n: usize, seed: u64) -> SpinState {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut v: Vec<Complex64> = (0..1 << n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let nrm = norm(&v);
        v.iter_mut().for_each(|a| *a /= nrm);
        SpinState::from_amplitudes(n, v).unwrap()
    }

    fn opts(p: Propagator) -> EvolveOptions {
        EvolveOptions {
            propagator: p,
            store_states: true,
            ..Default::default()
        }
    }

    #[test]
    fn zero_hamiltonian_is_identity() {
        let mut m = random_model(3, 1);
        m.hx = vec![0.0; 3];
        m.hz = vec![0.0; 3];
        m.xy = vec![vec![0.0; 3]; 3];
        m.zz = vec![vec![0.0; 3]; 3];
        let psi = random_state(3, 2);
        for p in [Propagator::Spectral, Propagator::Krylov] {
            let tr = evolve(&m, &psi, &[0.0, 1.0, 5.0], opts(p)).unwrap();
            for s in tr.states.unwrap() {
                assert!((s.inner(&psi).re - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_spin_rabi() {
        let omega = 1.3;
        let g = equilibrium_positions(1).unwrap();
        let m =
            SpinChainModel::dimensionless(&g, 0.0, omega, -1.0, PairConvention::Ordered).unwrap();
        let psi = SpinState::basis(1, 0).unwrap();
        let times = uniform_grid(10.0, 0.1).unwrap();
        for p in [Propagator::Spectral, Propagator::Krylov] {
            let tr = evolve(&m, &psi, &times, opts(p)).unwrap();
            for (t, pop) in tr.times.iter().zip(tr.up_population(0)) {
                assert!(
                    (pop - (omega * t / 2.0).sin().powi(2)).abs() < 1e-8,
                    "{p:?} t={t}"
                );
            }
        }
    }

    #[test]
    fn evolution_is_reversible() {
        let m = random_model(3, 4);
        let psi = random_state(3, 5);
        let fwd = evolve(&m, &psi, &[0.0, 2.5], opts(Propagator::Spectral)).unwrap();
        let mid = fwd.states.unwrap().pop().unwrap();
        let mut back_model = m.clone();
        back_model.hx.iter_mut().for_each(|x| *x = -*x);
        back_model.hz.iter_mut().for_each(|x| *x = -*x);
        back_model.xy.iter_mut().flatten().for_each(|x| *x = -*x);
        back_model.zz.iter_mut().flatten().for_each(|x| *x = -*x);
        let back = evolve(&back_model, &mid, &[0.0, 2.5], opts(Propagator::Krylov)).unwrap();
        let end = back.states.unwrap().pop().unwrap();
        let diff: f64 = end
            .amplitudes
            .iter()
            .zip(&psi.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-7, "diff {diff}");
    }

    #[test]
    fn spectral_and_krylov_agree() {
        for n in [2usize, 5, 8] {
            let m = random_model(n, 10 + n as u64);
            let psi = random_state(n, 20 + n as u64);
            let times = uniform_grid(2.0, 0.25).unwrap();
            let a = evolve(&m, &psi, &times, opts(Propagator::Spectral)).unwrap();
            let b = evolve(&m, &psi, &times, opts(Propagator::Krylov)).unwrap();
            for (sa, sb) in a.states.unwrap().iter().zip(b.states.unwrap()) {
                let d: f64 = sa
                    .amplitudes
                    .iter()
                    .zip(&sb.amplitudes)
                    .map(|(x, y)| (x - y).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(d < 1e-8, "N={n}: {d}");
            }
            assert!(a.norm_drift < 1e-8 && b.norm_drift < 1e-8);
            assert!(a.energy_drift < 1e-8 && b.energy_drift < 1e-8);
        }
    }

    #[test]
    fn two_ion_transfer_matches_exact_diagonalization() {
        let params = TransferParams {
            n_ions: 2,
            omega2: 0.0,
            t_max: 5.0,
            ..Default::default()
        };
        let report = transfer_experiment(&params).unwrap();
        // Both sites see the same longitudinal field, so |10> and |01> are
        // resonant and the flip-flop matrix element alone sets the period.
        let g = equilibrium_positions(2).unwrap();
        let m =
            SpinChainModel::dimensionless(&g, 0.65, 0.0, -1.0, PairConvention::Ordered).unwrap();
        let element = m.dense().unwrap()[(1, 2)].abs();
        assert!(report.efficiency > 0.999);
        let expected = std::f64::consts::PI / (2.0 * element);
        assert!(
            (report.transfer_time - expected).abs() < 1e-3,
            "{} vs {expected}",
            report.transfer_time
        );
    }

    #[test]
    fn all_down_is_stationary_without_transverse_field() {
        let g = equilibrium_positions(6).unwrap();
        let m =
            SpinChainModel::dimensionless(&g, 0.65, 0.0, -1.0, PairConvention::Ordered).unwrap();
        let psi = SpinState::basis(6, 0).unwrap();
        let tr = evolve(
            &m,
            &psi,
            &uniform_grid(3.0, 0.1).unwrap(),
            EvolveOptions::default(),
        )
        .unwrap();
        for row in &tr.magnetization {
            for v in row {
                assert!((v + 0.5).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn excitation_number_and_mirror_symmetry() {
        let n = 7;
        let g = equilibrium_positions(n).unwrap();
        let m =
            SpinChainModel::dimensionless(&g, 0.65, 0.0, -1.0, PairConvention::Ordered).unwrap();
        // Symmetric initial state: single excitation shared by both ends.
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[1] = r;
        amps[1 << (n - 1)] = r;
        let psi = SpinState::from_amplitudes(n, amps).unwrap();
        let tr = evolve(
            &m,
            &psi,
            &uniform_grid(3.0, 0.05).unwrap(),
            EvolveOptions::default(),
        )
        .unwrap();
        for row in &tr.magnetization {
            let excitations: f64 = row.iter().map(|s| s + 0.5).sum();
            assert!((excitations - 1.0).abs() < 1e-10);
            for i in 0..n {
                assert!((row[i] - row[n - 1 - i]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn input_validation() {
        let m = random_model(2, 0);
        let psi = SpinState::basis(2, 0).unwrap();
        assert_eq!(
            evolve(&m, &psi, &[], EvolveOptions::default()),
            Err(DynamicsError::InvalidTimes)
        );
        assert_eq!(
            evolve(&m, &psi, &[0.0, 0.0], EvolveOptions::default()),
            Err(DynamicsError::InvalidTimes)
        );
        let unnormalized =
            SpinState::from_amplitudes(2, vec![Complex64::new(1.0, 0.0); 4]).unwrap();
        assert!(matches!(
            evolve(&m, &unnormalized, &[0.0], EvolveOptions::default()),
            Err(DynamicsError::NotNormalized(_))
        ));
        let other = SpinState::basis(3, 0).unwrap();
        assert!(matches!(
            evolve(&m, &other, &[0.0], EvolveOptions::default()),
            Err(DynamicsError::SizeMismatch { .. })
        ));
        let big = random_model(11, 0);
        let psi11 = SpinState::basis(11, 0).unwrap();
        assert!(matches!(
            evolve(&big, &psi11, &[0.0], opts(Propagator::Spectral)),
            Err(DynamicsError::TooLargeForSpectral { .. })
        ));
        assert!(site_magnetization(&psi, 2).is_err());
    }

    #[test]
    fn reference_transfer_golden() {
        let r = transfer_experiment(&TransferParams::default()).unwrap();
        assert!((r.efficiency - 0.8981).abs() < 1e-4, "{}", r.efficiency);
        assert!(
            (r.transfer_time - 1.7818).abs() < 1e-4,
            "{}",
            r.transfer_time
        );
    }

    #[test]
    fn peak_interpolation() {
        let times: Vec<f64> = (0..21).map(|k| k as f64 * 0.1).collect();
        let values: Vec<f64> = times.iter().map(|t| 1.0 - (t - 1.23f64).powi(2)).collect();
        let (t, v) = interpolated_peak(&times, &values);
        assert!((t - 1.23).abs() < 1e-12 && (v - 1.0).abs() < 1e-12);
        assert_eq!(interpolated_peak(&[0.0, 1.0], &[0.0, 2.0]), (1.0, 2.0));
    }

    #[test]
    fn inverted_initial_state_mirrors_transfer() {
        // With omega2 = 0 and no longitudinal field the model is invariant
        // under a global spin flip, so both initial states transfer alike.
        let base = TransferParams {
            n_ions: 4,
            bz: 0.0,
            omega2: 0.0,
            t_max: 2.0,
            ..Default::default()
        };
        let a = transfer_experiment(&base).unwrap();
        let b = transfer_experiment(&TransferParams {
            invert_initial: true,
            ..base
        })
        .unwrap();
        assert!((a.efficiency - b.efficiency).abs() < 1e-10);
        assert!((a.transfer_time - b.transfer_time).abs() < 1e-10);
    }
}
