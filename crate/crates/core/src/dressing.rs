//! Microwave dressing of Rydberg levels and laser dressing of ground states.
//!
//! All frequencies are angular (rad/s) and energies are expressed as
//! frequencies with hbar = 1 inside this module.

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::physcore::CODATA_2018;

/// Adiabatic elimination of the far level needs |Omega1 / Delta1| below this.
pub const MAX_ADMIXTURE_RATIO: f64 = 0.3;
/// |Delta1| must exceed the two-level scales by this factor.
pub const MIN_DETUNING_SEPARATION: f64 = 5.0;
/// Laser couplings must stay below this fraction of the smallest energy gap.
pub const MAX_PERTURBATION_RATIO: f64 = 0.2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DressingError {
    #[error("Delta1 = 0 with nonzero Omega1: the admixed level is resonant")]
    ResonantAdmixture,
    #[error("ground state g{ground} is resonant with a dressed Rydberg state (determinant {determinant:e})")]
    Degenerate { ground: u8, determinant: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Rabi frequency -d E / (3 hbar) of a linearly polarized field on an s-p
/// transition with radial dipole element `dipole` (C m) and amplitude `field` (V/m).
pub fn rabi_frequency(dipole: f64, field: f64) -> f64 {
    -dipole * field / (3.0 * CODATA_2018.hbar)
}

/// Two MW fields: one far detuned on |n,s> - |n',p>, one near resonant on |n,s> - |n,p>.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MwConfig {
    /// Rabi frequency of the far-detuned field (rad/s).
    pub omega1: f64,
    /// Rabi frequency of the near-resonant field (rad/s).
    pub omega2: f64,
    /// Detuning of the far field (rad/s).
    pub delta1: f64,
    /// Detuning of the near-resonant field (rad/s).
    pub delta2: f64,
    /// e <n,s|r|n',p> (C m).
    pub d1: f64,
    /// e <n,s|r|n,p> (C m).
    pub d2: f64,
}

impl MwConfig {
    /// Whether the elimination of |n',p> is quantitatively justified.
    pub fn is_valid(&self) -> bool {
        let ratio_ok =
            self.omega1 == 0.0 || (self.omega1 / self.delta1).abs() < MAX_ADMIXTURE_RATIO;
        let separated =
            self.delta1.abs() > MIN_DETUNING_SEPARATION * self.omega2.abs().max(self.delta2.abs());
        ratio_ok && separated
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DressedTwoLevel {
    /// Admixture of |n',p> into |n,s>, Omega1 / (2 Delta1).
    pub eta: f64,
    /// Light-shifted detuning Delta2 - Omega1^2 / (4 Delta1) (rad/s).
    pub shifted_detuning: f64,
    /// Effective field (Omega2, 0, shifted detuning) coupling to the spin (rad/s).
    pub field: [f64; 3],
    /// (d1/3)^2 (C^2 m^2).
    pub d1_sq: f64,
    /// (d2/3)^2 (C^2 m^2).
    pub d2_sq: f64,
    /// Far-detuning and weak-admixture conditions hold.
    pub valid: bool,
    /// Energy of the admixed |n',p> level after its light shift (rad/s).
    pub admixed_level_energy: f64,
}

impl DressedTwoLevel {
    /// h . S with S = sigma/2, in the basis (up, down) (rad/s).
    pub fn effective_hamiltonian(&self) -> [[f64; 2]; 2] {
        let [hx, _, hz] = self.field;
        [[0.5 * hz, 0.5 * hx], [0.5 * hx, -0.5 * hz]]
    }

    /// Amplitude of the S_z-dependent dipole term oscillating at the far MW frequency (C m).
    pub fn diagonal_dipole_amplitude(&self) -> f64 {
        -self.eta * self.d1_sq.sqrt()
    }

    /// Amplitude of the rotating transverse dipole (C m).
    pub fn transverse_dipole_amplitude(&self) -> f64 {
        self.d2_sq.sqrt()
    }
}

pub fn dress_rydberg(cfg: &MwConfig) -> Result<DressedTwoLevel, DressingError> {
    let values = [
        cfg.omega1, cfg.omega2, cfg.delta1, cfg.delta2, cfg.d1, cfg.d2,
    ];
    if values.iter().any(|v| !v.is_finite()) {
        return Err(DressingError::InvalidArgument(
            "MW parameters must be finite".into(),
        ));
    }
    let (eta, light_shift) = if cfg.omega1 == 0.0 {
        (0.0, 0.0)
    } else if cfg.delta1 == 0.0 {
        return Err(DressingError::ResonantAdmixture);
    } else {
        (
            cfg.omega1 / (2.0 * cfg.delta1),
            cfg.omega1 * cfg.omega1 / (4.0 * cfg.delta1),
        )
    };
    let shifted = cfg.delta2 - light_shift;
    Ok(DressedTwoLevel {
        eta,
        shifted_detuning: shifted,
        field: [cfg.omega2, 0.0, shifted],
        d1_sq: (cfg.d1 / 3.0).powi(2),
        d2_sq: (cfg.d2 / 3.0).powi(2),
        valid: cfg.is_valid(),
        admixed_level_energy: cfg.delta1 + light_shift,
    })
}

/// MW dressing plus two weak lasers coupling g1 to |n,s> and g2 to |n,p>.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiveLevelConfig {
    pub mw: MwConfig,
    pub omega_s: f64,
    pub omega_p: f64,
    pub delta_s: f64,
    pub delta_p: f64,
}

/// Rydberg admixture of one dressed ground state.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Admixture {
    pub p_prime: f64,
    pub s: f64,
    pub p: f64,
}

impl Admixture {
    fn from_vector(v: &Vector3<f64>) -> Self {
        Admixture {
            p_prime: v[0],
            s: v[1],
            p: v[2],
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p_prime, self.s, self.p]
    }

    pub fn max_abs(&self) -> f64 {
        self.as_array().iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundDressing {
    pub g1: Admixture,
    pub g2: Admixture,
    /// Prefactor of the closed-form g1 coefficients.
    pub gamma_s: f64,
    /// Prefactor of the closed-form g2 coefficients.
    pub gamma_p: f64,
    /// Frobenius norm of [H0, S] + H_pert.
    pub decoupling_residual: f64,
    /// Frobenius norm of H_pert.
    pub perturbation_norm: f64,
    /// Laser couplings are small against every ground-Rydberg gap.
    pub perturbative: bool,
}

/// MW-coupled Rydberg block in the basis (|n',p>, |n,s>, |n,p>).
pub fn rydberg_block(mw: &MwConfig) -> Matrix3<f64> {
    Matrix3::new(
        mw.delta1,
        0.5 * mw.omega1,
        0.0,
        0.5 * mw.omega1,
        0.0,
        0.5 * mw.omega2,
        0.0,
        0.5 * mw.omega2,
        -mw.delta2,
    )
}

/// Five-level basis order used by the explicit matrices.
pub const FIVE_LEVEL_BASIS: [&str; 5] = ["g1", "g2", "n'p", "ns", "np"];

/// Unperturbed five-level Hamiltonian in the rotating frame (rad/s).
pub fn five_level_h0(cfg: &FiveLevelConfig) -> nalgebra::SMatrix<f64, 5, 5> {
    let mut h = nalgebra::SMatrix::<f64, 5, 5>::zeros();
    h[(0, 0)] = cfg.delta_s;
    h[(1, 1)] = cfg.delta_p;
    h.fixed_view_mut::<3, 3>(2, 2)
        .copy_from(&rydberg_block(&cfg.mw));
    h
}

/// Laser couplings g1 - |n,s> and g2 - |n,p> (rad/s).
pub fn five_level_perturbation(cfg: &FiveLevelConfig) -> nalgebra::SMatrix<f64, 5, 5> {
    let mut h = nalgebra::SMatrix::<f64, 5, 5>::zeros();
    h[(0, 3)] = 0.5 * cfg.omega_s;
    h[(3, 0)] = 0.5 * cfg.omega_s;
    h[(1, 4)] = 0.5 * cfg.omega_p;
    h[(4, 1)] = 0.5 * cfg.omega_p;
    h
}

/// Anti-Hermitian generator with S|g> = sum_r c_r |r>.
pub fn generator(gd: &GroundDressing) -> nalgebra::SMatrix<f64, 5, 5> {
    let mut s = nalgebra::SMatrix::<f64, 5, 5>::zeros();
    for (g, adm) in [(0, gd.g1), (1, gd.g2)] {
        for (k, c) in adm.as_array().into_iter().enumerate() {
            s[(2 + k, g)] = c;
            s[(g, 2 + k)] = -c;
        }
    }
    s
}

/// Closed-form denominator (E + Delta2)[4(Delta1 - E)E + Omega1^2] + (E - Delta1)Omega2^2,
/// which equals 4 det(R - E).
fn gamma_denominator(mw: &MwConfig, energy: f64) -> f64 {
    (energy + mw.delta2) * (4.0 * (mw.delta1 - energy) * energy + mw.omega1 * mw.omega1)
        + (energy - mw.delta1) * mw.omega2 * mw.omega2
}

fn solve_admixture(
    block: &Matrix3<f64>,
    energy: f64,
    coupling: Vector3<f64>,
    ground: u8,
) -> Result<Vector3<f64>, DressingError> {
    let shifted = block - Matrix3::identity() * energy;
    let scale = shifted.amax().max(f64::MIN_POSITIVE);
    let det = shifted.determinant();
    if det.abs() <= 1e-12 * scale.powi(3) {
        return Err(DressingError::Degenerate {
            ground,
            determinant: det,
        });
    }
    shifted
        .lu()
        .solve(&(-coupling))
        .ok_or(DressingError::Degenerate {
            ground,
            determinant: det,
        })
}

/// First-order Schrieffer-Wolff dressing of the two ground states.
///
/// The generator is found by solving (R - E_g) c_g = -V_g for each ground
/// state. The g2 prefactor is Omega_p / (2 x denominator); the g1 prefactor
/// is Omega_s / denominator.
pub fn dress_ground(cfg: &FiveLevelConfig) -> Result<GroundDressing, DressingError> {
    let values = [cfg.omega_s, cfg.omega_p, cfg.delta_s, cfg.delta_p];
    if values.iter().any(|v| !v.is_finite()) {
        return Err(DressingError::InvalidArgument(
            "laser parameters must be finite".into(),
        ));
    }
    let r = rydberg_block(&cfg.mw);
    let c1 = solve_admixture(
        &r,
        cfg.delta_s,
        Vector3::new(0.0, 0.5 * cfg.omega_s, 0.0),
        1,
    )?;
    let c2 = solve_admixture(
        &r,
        cfg.delta_p,
        Vector3::new(0.0, 0.0, 0.5 * cfg.omega_p),
        2,
    )?;

    let eig = SymmetricEigen::new(r).eigenvalues;
    let min_gap = [cfg.delta_s, cfg.delta_p]
        .iter()
        .flat_map(|e| eig.iter().map(move |l| (e - l).abs()))
        .fold(f64::INFINITY, f64::min);
    let perturbative = cfg.omega_s.abs().max(cfg.omega_p.abs()) < MAX_PERTURBATION_RATIO * min_gap;

    let mut gd = GroundDressing {
        g1: Admixture::from_vector(&c1),
        g2: Admixture::from_vector(&c2),
        gamma_s: cfg.omega_s / gamma_denominator(&cfg.mw, cfg.delta_s),
        gamma_p: cfg.omega_p / (2.0 * gamma_denominator(&cfg.mw, cfg.delta_p)),
        decoupling_residual: 0.0,
        perturbation_norm: 0.0,
        perturbative,
    };
    let h0 = five_level_h0(cfg);
    let hp = five_level_perturbation(cfg);
    let s = generator(&gd);
    gd.decoupling_residual = (h0 * s - s * h0 + hp).norm();
    gd.perturbation_norm = hp.norm();
    Ok(gd)
}

/// Laser detunings for which g1 mixes only with |n,p> and g2 avoids |n,p>.
pub fn special_detunings(delta1: f64, delta2: f64, omega1: f64) -> (f64, f64) {
    (-delta2, 0.5 * (delta1 - delta1.hypot(omega1)))
}

/// Dipole operator parameters of the dressed ground-state qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundDipole {
    /// Amplitude of the (1 - 2 S_z) term oscillating at the far MW frequency (C m).
    pub diagonal: f64,
    /// Amplitude of the rotating transverse term (C m).
    pub transverse: f64,
}

pub fn ground_dipole(gd: &GroundDressing, d1_sq: f64, d2_sq: f64) -> GroundDipole {
    GroundDipole {
        diagonal: gd.g2.s * gd.g2.p_prime * d1_sq.sqrt(),
        transverse: gd.g1.p * gd.g2.s * d2_sq.sqrt(),
    }
}

/// Photon scattering rate |c|^2 Gamma of a state with Rydberg admixture c.
pub fn scattering_rate(admixture: f64, decay_rate: f64) -> Result<f64, DressingError> {
    if !(decay_rate > 0.0) {
        return Err(DressingError::InvalidArgument(format!(
            "decay rate must be positive, got {decay_rate}"
        )));
    }
    Ok(admixture * admixture * decay_rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mw(omega1: f64, omega2: f64, delta1: f64, delta2: f64) -> MwConfig {
        MwConfig {
            omega1,
            omega2,
            delta1,
            delta2,
            d1: 1e-26,
            d2: 2e-26,
        }
    }

    #[test]
    fn rabi_frequency_sign_and_scale() {
        let w = rabi_frequency(3.0 * CODATA_2018.hbar, 2.0);
        assert!((w + 2.0).abs() < 1e-12);
    }

    #[test]
    fn no_admixture_without_far_field() {
        let d = dress_rydberg(&mw(0.0, 1.0, 0.0, 0.3)).unwrap();
        assert_eq!(d.eta, 0.0);
        assert_eq!(d.shifted_detuning, 0.3);
        assert_eq!(d.field, [1.0, 0.0, 0.3]);
        assert_eq!(d.diagonal_dipole_amplitude(), 0.0);
    }

    #[test]
    fn closed_form_admixture() {
        let delta1 = 50.0;
        let d = dress_rydberg(&mw(0.2 * delta1, 1.0, delta1, 2.0)).unwrap();
        assert!((d.eta - 0.1).abs() < 1e-15);
        assert!((d.shifted_detuning - (2.0 - 0.01 * delta1)).abs() < 1e-12);
        assert!(d.valid);
        assert!((d.d1_sq - (1e-26f64 / 3.0).powi(2)).abs() < 1e-70);
        assert!((d.transverse_dipole_amplitude() - 2e-26 / 3.0).abs() < 1e-38);
        assert!((d.diagonal_dipole_amplitude() + 0.1 * 1e-26 / 3.0).abs() < 1e-38);
    }

    #[test]
    fn resonant_admixture_is_an_error() {
        assert_eq!(
            dress_rydberg(&mw(1.0, 1.0, 0.0, 0.0)),
            Err(DressingError::ResonantAdmixture)
        );
    }

    #[test]
    fn validity_flag() {
        assert!(!dress_rydberg(&mw(40.0, 1.0, 100.0, 1.0)).unwrap().valid);
        assert!(!dress_rydberg(&mw(10.0, 30.0, 100.0, 1.0)).unwrap().valid);
        assert!(dress_rydberg(&mw(10.0, 3.0, -100.0, 1.0)).unwrap().valid);
    }

    #[test]
    fn light_shift_matches_exact_two_level() {
        for (omega1, delta1) in [(1.0, 20.0), (2.0, -15.0), (0.5, 7.0)] {
            let d = dress_rydberg(&mw(omega1, 0.0, delta1, 0.0)).unwrap();
            // Upper (or lower, for negative delta1) branch of [[d1, o1/2], [o1/2, 0]].
            let exact = 0.5 * (delta1 + delta1.signum() * delta1.hypot(omega1));
            let bound = 2.0 * omega1.powi(4) / delta1.abs().powi(3);
            assert!((d.admixed_level_energy - exact).abs() < bound);
        }
    }

    #[test]
    fn effective_hamiltonian_spectrum() {
        let d = dress_rydberg(&mw(3.0, 1.5, 40.0, -0.7)).unwrap();
        let h = d.effective_hamiltonian();
        let tr = h[0][0] + h[1][1];
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let half_gap = 0.5 * d.field[0].hypot(d.field[2]);
        assert!(tr.abs() < 1e-15);
        assert!((det + half_gap * half_gap).abs() < 1e-12);
        assert_eq!(h[0][1], h[1][0]);
    }

    fn five(
        mw: MwConfig,
        omega_s: f64,
        omega_p: f64,
        delta_s: f64,
        delta_p: f64,
    ) -> FiveLevelConfig {
        FiveLevelConfig {
            mw,
            omega_s,
            omega_p,
            delta_s,
            delta_p,
        }
    }

    #[test]
    fn no_lasers_no_admixture() {
        let gd = dress_ground(&five(mw(1.0, 2.0, 30.0, 0.5), 0.0, 0.0, 3.0, -4.0)).unwrap();
        assert_eq!(gd.g1, Admixture::default());
        assert_eq!(gd.g2, Admixture::default());
        assert_eq!(gd.decoupling_residual, 0.0);
    }

    #[test]
    fn special_detuning_closed_forms() {
        assert_eq!(special_detunings(5.0, 2.0, 0.0), (-2.0, 0.0));
        let (ds, dp) = special_detunings(3.0, 1.0, 4.0);
        assert_eq!(ds, -1.0);
        assert!((dp + 1.0).abs() < 1e-15);
    }

    #[test]
    fn special_detunings_without_far_field() {
        let m = mw(0.0, 2.0, 30.0, 0.7);
        let (ds, dp) = special_detunings(m.delta1, m.delta2, m.omega1);
        let (os, op) = (0.05, 0.08);
        let gd = dress_ground(&five(m, os, op, ds, dp)).unwrap();
        assert!((gd.g1.p + os / m.omega2).abs() < 1e-12);
        assert!((gd.g2.s + op / m.omega2).abs() < 1e-12);
        for c in [gd.g1.p_prime, gd.g1.s, gd.g2.p_prime, gd.g2.p] {
            assert!(c.abs() < 1e-12);
        }
        let dip = ground_dipole(&gd, 4.0, 9.0);
        assert!(dip.diagonal.abs() < 1e-12);
        assert!((dip.transverse - os * op / (m.omega2 * m.omega2) * 3.0).abs() < 1e-12);
    }

    #[test]
    fn special_detunings_with_far_field() {
        let m = mw(6.0, 2.0, 30.0, 0.7);
        let (ds, dp) = special_detunings(m.delta1, m.delta2, m.omega1);
        let (os, op) = (0.03, 0.04);
        let gd = dress_ground(&five(m, os, op, ds, dp)).unwrap();
        let root = m.delta1.hypot(m.omega1);
        assert!((gd.g1.p + os / m.omega2).abs() < 1e-12);
        assert!(gd.g1.p_prime.abs() < 1e-12 && gd.g1.s.abs() < 1e-12);
        assert!((gd.g2.s + op / m.omega2).abs() < 1e-12);
        assert!(gd.g2.p.abs() < 1e-12);
        let expected = m.omega1 * op / (m.omega2 * (m.delta1 + root));
        assert!((gd.g2.p_prime - expected).abs() < 1e-12);
    }

    #[test]
    fn closed_form_coefficients_match_direct_solve() {
        let m = mw(4.0, 1.3, 25.0, -0.4);
        let (ds, dp) = (0.9, -1.7);
        let cfg = five(m, 0.02, 0.03, ds, dp);
        let gd = dress_ground(&cfg).unwrap();
        let (d1, d2, o1, o2) = (m.delta1, m.delta2, m.omega1, m.omega2);
        let g1 =
            [-(ds + d2) * o1, 2.0 * (d1 - ds) * (ds + d2), (d1 - ds) * o2].map(|x| gd.gamma_s * x);
        let g2 = [
            -o1 * o2,
            2.0 * (d1 - dp) * o2,
            4.0 * (d1 - dp) * dp + o1 * o1,
        ]
        .map(|x| gd.gamma_p * x);
        for (a, b) in gd.g1.as_array().iter().zip(g1) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
        for (a, b) in gd.g2.as_array().iter().zip(g2) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn resonant_ground_state_is_degenerate() {
        let m = mw(0.0, 0.0, 30.0, 0.7);
        // g1 at the bare |n,s> energy with no MW coupling.
        match dress_ground(&five(m, 0.01, 0.01, 0.0, 5.0)) {
            Err(DressingError::Degenerate { ground: 1, .. }) => {}
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }

    #[test]
    fn perturbative_flag() {
        let m = mw(4.0, 1.3, 25.0, -0.4);
        assert!(
            dress_ground(&five(m, 0.01, 0.01, 3.0, -3.0))
                .unwrap()
                .perturbative
        );
        assert!(
            !dress_ground(&five(m, 2.0, 0.01, 3.0, -3.0))
                .unwrap()
                .perturbative
        );
    }

    #[test]
    fn scattering() {
        assert_eq!(scattering_rate(0.0, 1e5).unwrap(), 0.0);
        assert!((scattering_rate(0.1, 1.0 / 10e-6).unwrap() - 1e3).abs() < 1e-9);
        let r = scattering_rate(0.05, 7.0).unwrap();
        assert!((scattering_rate(0.1, 7.0).unwrap() / r - 4.0).abs() < 1e-12);
        assert!(scattering_rate(0.1, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn decoupling_residual_vanishes(
            omega1 in -5.0..5.0f64,
            omega2 in 0.5..3.0f64,
            delta1 in 20.0..60.0f64,
            delta2 in -1.0..1.0f64,
            delta_s in -10.0..10.0f64,
            delta_p in -10.0..10.0f64,
            os in -0.05..0.05f64,
            op in -0.05..0.05f64,
        ) {
            let cfg = five(mw(omega1, omega2, delta1, delta2), os, op, delta_s, delta_p);
            if let Ok(gd) = dress_ground(&cfg) {
                prop_assert!(gd.decoupling_residual <= 1e-10 * gd.perturbation_norm.max(f64::MIN_POSITIVE));
            }
        }

        #[test]
        fn ground_dipole_is_bilinear(os in 0.01..0.05f64, op in 0.01..0.05f64, k in 0.1..2.0f64) {
            let m = mw(3.0, 1.5, 30.0, 0.2);
            let base = dress_ground(&five(m, os, op, 2.0, -2.5)).unwrap();
            let scaled = dress_ground(&five(m, k * os, k * op, 2.0, -2.5)).unwrap();
            let a = ground_dipole(&base, 1.0, 1.0);
            let b = ground_dipole(&scaled, 1.0, 1.0);
            prop_assert!((b.transverse - k * k * a.transverse).abs() <= 1e-12 * a.transverse.abs().max(1e-300));
            prop_assert!((b.diagonal - k * k * a.diagonal).abs() <= 1e-12 * a.diagonal.abs().max(1e-300));
        }

        #[test]
        fn dressed_field_is_hermitian_two_level(o1 in -3.0..3.0f64, o2 in -3.0..3.0f64, d1 in 20.0..50.0f64, d2 in -3.0..3.0f64) {
            let d = dress_rydberg(&mw(o1, o2, d1, d2)).unwrap();
            prop_assert_eq!(d.field[0], o2);
            prop_assert_eq!(d.field[1], 0.0);
            prop_assert!((d.field[2] - (d2 - o1 * o1 / (4.0 * d1))).abs() < 1e-12);
            prop_assert!(d.eta.abs() < MAX_ADMIXTURE_RATIO);
        }
    }
}
