//! Single-ion Paul trap physics: secular frequencies, the classical field
//! ionization threshold, quadrupole level shifts, and the Born-Oppenheimer
//! renormalization of trap frequencies for an ion in a Rydberg s state.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::physcore::{IonSpecies, RydbergLevel, CODATA_2018};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrapError {
    #[error("invalid trap configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "radially unstable: (e alpha / (M w_rf))^2 = {rf_term:e} s^-2 does not exceed e beta / M = {static_term:e} s^-2"
    )]
    RadialInstability { rf_term: f64, static_term: f64 },
    #[error("quadrupole shift only defined for l = 0, 1 (got l = {0})")]
    UnsupportedL(u32),
    #[error("s-p splitting must be non-zero")]
    ZeroSplitting,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Electric quadrupole trap: Phi = alpha cos(w t)(x^2 - y^2) - beta (x^2 + y^2 - 2 z^2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapConfig {
    /// RF gradient alpha (V/m^2).
    pub rf_gradient: f64,
    /// Static gradient beta (V/m^2).
    pub static_gradient: f64,
    /// RF drive angular frequency (rad/s).
    pub rf_frequency: f64,
}

impl TrapConfig {
    pub fn new(
        rf_gradient: f64,
        static_gradient: f64,
        rf_frequency: f64,
    ) -> Result<Self, TrapError> {
        for (name, v) in [
            ("alpha", rf_gradient),
            ("beta", static_gradient),
            ("omega_rf", rf_frequency),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(TrapError::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(Self {
            rf_gradient,
            static_gradient,
            rf_frequency,
        })
    }

    /// The trap quoted for Ca+: alpha = 1e9 V/m^2, beta = 1e7 V/m^2, w_rf = 2 pi 15 MHz.
    pub fn reference() -> Self {
        Self {
            rf_gradient: 1e9,
            static_gradient: 1e7,
            rf_frequency: 2.0 * PI * 15e6,
        }
    }

    /// (e alpha / (M w_rf))^2 and e beta / M, both in s^-2.
    fn terms(&self, species: &IonSpecies) -> (f64, f64) {
        let e = CODATA_2018.elementary_charge;
        let rf = (e * self.rf_gradient / (species.mass * self.rf_frequency)).powi(2);
        let st = e * self.static_gradient / species.mass;
        (rf, st)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecularFrequencies {
    /// Axial angular frequency (rad/s).
    pub axial: f64,
    /// Radial angular frequency (rad/s).
    pub radial: f64,
}

impl SecularFrequencies {
    /// A linear chain needs the radial confinement to dominate.
    pub fn supports_linear_chain(&self) -> bool {
        self.radial > self.axial && self.axial > 0.0
    }
}

/// w_z = 2 sqrt(e beta / M), w_rho = sqrt(2) sqrt((e alpha / (M w_rf))^2 - e beta / M).
pub fn secular_frequencies(
    species: &IonSpecies,
    trap: &TrapConfig,
) -> Result<SecularFrequencies, TrapError> {
    let (rf_term, static_term) = trap.terms(species);
    if rf_term <= static_term {
        return Err(TrapError::RadialInstability {
            rf_term,
            static_term,
        });
    }
    Ok(SecularFrequencies {
        axial: 2.0 * static_term.sqrt(),
        radial: (2.0 * (rf_term - static_term)).sqrt(),
    })
}

/// Classical ionization gradient (V/m^2) of a level with principal quantum number n:
/// beta_ion = (4/27) e^7 m^3 / ((4 pi eps0)^4 hbar^6 n^6).
pub fn ionization_gradient(n: u32) -> f64 {
    let c = CODATA_2018;
    let e = c.elementary_charge;
    let k = 4.0 * PI * c.vacuum_permittivity;
    4.0 / 27.0 * e.powi(7) * c.electron_mass.powi(3)
        / (k.powi(4) * c.hbar.powi(6) * f64::from(n).powi(6))
}

/// Saddle points of V'(r) = -2 e^2 / (4 pi eps0 r) + e beta (x^2 + y^2 - 2 z^2) on the z axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IonizationSaddle {
    /// |z| of the two saddle points (m).
    pub z: f64,
    /// Potential energy at the saddle (J).
    pub energy: f64,
}

/// Saddle geometry for a static gradient beta (V/m^2).
///
/// Setting dV'/dz = 0 on the axis gives z^3 = e / (8 pi eps0 beta), where
/// V' = -(3/2) (e^5 beta / (pi^2 eps0^2))^(1/3).
pub fn ionization_saddle(beta: f64) -> IonizationSaddle {
    let c = CODATA_2018;
    let e = c.elementary_charge;
    let eps0 = c.vacuum_permittivity;
    IonizationSaddle {
        z: (e / (8.0 * PI * eps0 * beta)).cbrt(),
        energy: -1.5 * (e.powi(5) * beta / (PI * PI * eps0 * eps0)).cbrt(),
    }
}

/// First-order shift of a level in the static quadrupole field:
/// zero for s, (2/15) e beta <r^2> (2|m| - j - 9/2) for p.
pub fn quadrupole_shift(level: &RydbergLevel, beta_eff: f64, r2: f64) -> Result<f64, TrapError> {
    match level.l {
        0 => Ok(0.0),
        1 => {
            let e = CODATA_2018.elementary_charge;
            let bracket = 2.0 * level.abs_m() - level.j() - 4.5;
            Ok(2.0 / 15.0 * e * beta_eff * r2 * bracket)
        }
        l => Err(TrapError::UnsupportedL(l)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftDirection {
    /// Confinement weakens (s state below the p state).
    Shallower,
    Stiffer,
}

/// Relative trap-frequency shifts of an ion in |n,s>, from second-order
/// coupling to |n,p>.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyShifts {
    /// |delta w_z| / w_z.
    pub axial: f64,
    /// |delta w_rho| / w_rho.
    pub radial: f64,
    pub direction: ShiftDirection,
}

/// `sp_splitting` is E(n,p) - E(n,s) (J) and `d_sp` the radial element <n,s|r|n,p> (m).
pub fn rydberg_frequency_shifts(
    species: &IonSpecies,
    trap: &TrapConfig,
    sp_splitting: f64,
    d_sp: f64,
) -> Result<FrequencyShifts, TrapError> {
    if sp_splitting == 0.0 || !sp_splitting.is_finite() {
        return Err(TrapError::ZeroSplitting);
    }
    let (rf_term, static_term) = trap.terms(species);
    if rf_term <= static_term {
        return Err(TrapError::RadialInstability {
            rf_term,
            static_term,
        });
    }
    let e = CODATA_2018.elementary_charge;
    let alpha = trap.rf_gradient;
    let beta = trap.static_gradient;
    let ratio = d_sp * d_sp / sp_splitting.abs();
    let axial = 4.0 / 3.0 * e * beta * ratio;
    let pseudo = alpha * alpha / (species.mass * trap.rf_frequency.powi(2)) - beta / e;
    let radial = (alpha * alpha + 2.0 * beta * beta) / (6.0 * pseudo) * ratio;
    Ok(FrequencyShifts {
        axial,
        radial,
        direction: if sp_splitting > 0.0 {
            ShiftDirection::Shallower
        } else {
            ShiftDirection::Stiffer
        },
    })
}

/// Order-of-magnitude van der Waals energy between two s-state ions a distance
/// `zeta` apart: e^4 |<r>|^4 / ((4 pi eps0)^2 |dE_sp| zeta^6).
pub fn vdw_estimate(sp_splitting: f64, d_sp: f64, zeta: f64) -> Result<f64, TrapError> {
    if sp_splitting == 0.0 {
        return Err(TrapError::ZeroSplitting);
    }
    if !(zeta > 0.0) {
        return Err(TrapError::InvalidArgument(format!(
            "zeta must be positive, got {zeta}"
        )));
    }
    let k = CODATA_2018.coulomb_energy_length();
    Ok((k * d_sp * d_sp).powi(2) / (sp_splitting.abs() * zeta.powi(6)))
}
