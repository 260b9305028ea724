//! SI physical constants (CODATA 2018).

use std::f64::consts::PI;

/// Physical constants in SI units.
///
/// A value type rather than a set of bare `const`s so that scaling tests can
/// perturb individual entries (e.g. doubling the Rydberg energy).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Elementary charge (C).
    pub elementary_charge: f64,
    /// Vacuum permittivity (F/m).
    pub vacuum_permittivity: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Electron mass (kg).
    pub electron_mass: f64,
    /// Bohr radius (m).
    pub bohr_radius: f64,
    /// Rydberg energy, 13.6 eV (J).
    pub rydberg_energy: f64,
    /// Unified atomic mass unit (kg).
    pub atomic_mass_unit: f64,
}

/// CODATA 2018 recommended values.
pub const CODATA_2018: Constants = Constants {
    elementary_charge: 1.602_176_634e-19,
    vacuum_permittivity: 8.854_187_812_8e-12,
    hbar: 1.054_571_817e-34,
    electron_mass: 9.109_383_701_5e-31,
    bohr_radius: 5.291_772_109_03e-11,
    rydberg_energy: 2.179_872_361_103_5e-18,
    atomic_mass_unit: 1.660_539_066_60e-27,
};

impl Default for Constants {
    fn default() -> Self {
        CODATA_2018
    }
}

impl Constants {
    /// Coulomb constant e^2 / (4 pi eps0) in J m.
    pub fn coulomb_energy_length(&self) -> f64 {
        self.elementary_charge.powi(2) / (4.0 * PI * self.vacuum_permittivity)
    }

    /// Bohr radius recomputed from e, eps0, hbar and m_e.
    pub fn derived_bohr_radius(&self) -> f64 {
        4.0 * PI * self.vacuum_permittivity * self.hbar.powi(2)
            / (self.electron_mass * self.elementary_charge.powi(2))
    }

    /// Rydberg energy recomputed as e^2 / (8 pi eps0 a0) from the derived a0.
    pub fn derived_rydberg_energy(&self) -> f64 {
        self.elementary_charge.powi(2)
            / (8.0 * PI * self.vacuum_permittivity * self.derived_bohr_radius())
    }

    pub fn all_positive(&self) -> bool {
        [
            self.elementary_charge,
            self.vacuum_permittivity,
            self.hbar,
            self.electron_mass,
            self.bohr_radius,
            self.rydberg_energy,
            self.atomic_mass_unit,
        ]
        .iter()
        .all(|v| *v > 0.0)
    }
}
