//! Radial matrix elements between s and p Rydberg states.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::constants::CODATA_2018;
use super::PhyscoreError;

/// User-supplied radial matrix elements (SI units).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MatrixElementTable {
    /// <n,l|r|n',l'> keyed by (n, l, n', l'), in m.
    pub dipole: HashMap<(u32, u32, u32, u32), f64>,
    /// <n,l|r^2|n,l> keyed by (n, l), in m^2.
    pub quadrupole: HashMap<(u32, u32), f64>,
}

impl MatrixElementTable {
    pub fn validate(&self) -> Result<(), PhyscoreError> {
        let bad_dipole = self.dipole.iter().find(|(_, v)| !(**v > 0.0));
        if let Some((k, v)) = bad_dipole {
            return Err(PhyscoreError::InvalidMatrixElement(format!(
                "<r>{k:?} = {v}"
            )));
        }
        let bad_quad = self.quadrupole.iter().find(|(_, v)| !(**v > 0.0));
        if let Some((k, v)) = bad_quad {
            return Err(PhyscoreError::InvalidMatrixElement(format!(
                "<r^2>{k:?} = {v}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub enum MatrixElementModel {
    /// <r> ~ a0 n^2 and <r^2> ~ a0^2 n^4.
    #[default]
    Hydrogenic,
    UserTable(MatrixElementTable),
}

/// Radial elements used by the trap and dressing estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialElements {
    /// <n,s|r|n',p> (m).
    pub d_sp: f64,
    /// <n',p|r^2|n',p> (m^2).
    pub r2_p: f64,
}

/// Returns `<n,s|r|n',p>` and `<n',p|r^2|n',p>`.
pub fn radial_elements(
    model: &MatrixElementModel,
    n: u32,
    n_prime: u32,
) -> Result<RadialElements, PhyscoreError> {
    if n < 10 || n_prime < 10 {
        return Err(PhyscoreError::InvalidLevel(format!(
            "radial elements need n, n' >= 10 (got {n}, {n_prime})"
        )));
    }
    match model {
        MatrixElementModel::Hydrogenic => {
            let a0 = CODATA_2018.bohr_radius;
            Ok(RadialElements {
                d_sp: a0 * f64::from(n).powi(2),
                r2_p: a0 * a0 * f64::from(n_prime).powi(4),
            })
        }
        MatrixElementModel::UserTable(table) => {
            let d_sp = *table.dipole.get(&(n, 0, n_prime, 1)).ok_or(
                PhyscoreError::MissingMatrixElement(format!("<{n},s|r|{n_prime},p>")),
            )?;
            let r2_p =
                *table
                    .quadrupole
                    .get(&(n_prime, 1))
                    .ok_or(PhyscoreError::MissingMatrixElement(format!(
                        "<{n_prime},p|r^2|{n_prime},p>"
                    )))?;
            Ok(RadialElements { d_sp, r2_p })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogenic_n50() {
        let a0 = CODATA_2018.bohr_radius;
        let r = radial_elements(&MatrixElementModel::Hydrogenic, 50, 50).unwrap();
        assert!((r.d_sp / (2500.0 * a0) - 1.0).abs() < 1e-15);
        assert!((r.r2_p / (6.25e6 * a0 * a0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hydrogenic_scaling_is_exact() {
        for n in [10u32, 17, 40] {
            let a = radial_elements(&MatrixElementModel::Hydrogenic, n, n).unwrap();
            let b = radial_elements(&MatrixElementModel::Hydrogenic, 2 * n, 2 * n).unwrap();
            assert!((b.d_sp / a.d_sp - 4.0).abs() < 1e-14);
            assert!((b.r2_p / a.r2_p - 16.0).abs() < 1e-14);
        }
    }

    #[test]
    fn user_table_lookup() {
        let mut table = MatrixElementTable::default();
        table.dipole.insert((50, 0, 50, 1), 2.0e-7);
        table.quadrupole.insert((50, 1), 3.0e-14);
        table.validate().unwrap();
        let model = MatrixElementModel::UserTable(table);
        let r = radial_elements(&model, 50, 50).unwrap();
        assert_eq!(r.d_sp, 2.0e-7);
        assert_eq!(r.r2_p, 3.0e-14);
        assert!(matches!(
            radial_elements(&model, 51, 50),
            Err(PhyscoreError::MissingMatrixElement(_))
        ));
    }

    #[test]
    fn user_table_rejects_non_positive() {
        let mut table = MatrixElementTable::default();
        table.dipole.insert((50, 0, 50, 1), -1.0);
        assert!(table.validate().is_err());
    }
}
