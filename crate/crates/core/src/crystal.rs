//! Linear ion crystals: equilibrium positions, stiffness matrices, phonon
//! modes and the position dependent field gradient felt by each ion.
//!
//! Positions are dimensionless, u_i = Z_i / zeta with
//! zeta = [e^2 / (4 pi eps0 M w_z^2)]^(1/3), so that the axial force balance reads
//! u_i = sum_{j<i} (u_i - u_j)^-2 - sum_{j>i} (u_j - u_i)^-2.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::physcore::{IonSpecies, CODATA_2018};

pub const MAX_IONS: usize = 50;
const RESIDUAL_TARGET: f64 = 1e-12;
const MAX_NEWTON_ITERATIONS: usize = 200;
/// Relative eigenvalue gap below which modes are treated as degenerate.
const DEGENERACY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrystalError {
    #[error("ion count must be in 1..={MAX_IONS}, got {0}")]
    InvalidIonCount(usize),
    #[error(
        "equilibrium solve did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("{axis:?} stiffness matrix has negative eigenvalue {eigenvalue:e} rad^2/s^2")]
    StructuralInstability { axis: Axis, eigenvalue: f64 },
    #[error("geometry has no physical length scale")]
    MissingLengthScale,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// Coulomb curvature prefactor c_alpha of the stiffness matrix.
    fn coulomb_factor(self) -> f64 {
        match self {
            Axis::X | Axis::Y => 1.0,
            Axis::Z => -2.0,
        }
    }
}

/// zeta = [e^2 / (4 pi eps0 M w_z^2)]^(1/3) (m).
pub fn length_scale(species: &IonSpecies, axial_frequency: f64) -> Result<f64, CrystalError> {
    if !(axial_frequency > 0.0) {
        return Err(CrystalError::InvalidArgument(format!(
            "axial frequency must be positive, got {axial_frequency}"
        )));
    }
    let k = CODATA_2018.coulomb_energy_length();
    Ok((k / (species.mass * axial_frequency * axial_frequency)).cbrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrystalGeometry {
    /// Dimensionless equilibrium positions, ascending.
    pub positions: Vec<f64>,
    /// zeta (m), if the chain has been placed in a physical trap.
    pub length_scale: Option<f64>,
    /// Max |force imbalance| of the dimensionless equilibrium equations.
    pub residual: f64,
}

impl CrystalGeometry {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn with_length_scale(mut self, zeta: f64) -> Self {
        self.length_scale = Some(zeta);
        self
    }

    /// |u_i - u_j|^-3 with zeros on the diagonal.
    pub fn inverse_cubed_distances(&self) -> DMatrix<f64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                (self.positions[i] - self.positions[j]).abs().powi(-3)
            }
        })
    }

    /// sum_{j != i} |u_i - u_j|^-3 for every ion.
    pub fn neighbor_sums(&self) -> Vec<f64> {
        self.inverse_cubed_distances()
            .row_iter()
            .map(|r| r.sum())
            .collect()
    }

    /// Physical positions Z_i = zeta u_i (m).
    pub fn physical_positions(&self) -> Result<Vec<f64>, CrystalError> {
        let zeta = self.length_scale.ok_or(CrystalError::MissingLengthScale)?;
        Ok(self.positions.iter().map(|u| u * zeta).collect())
    }
}

fn force_imbalance(u: &[f64]) -> DVector<f64> {
    let n = u.len();
    DVector::from_fn(n, |i, _| {
        let mut f = u[i];
        for (j, uj) in u.iter().enumerate() {
            if j != i {
                let d = u[i] - uj;
                f -= d.signum() / (d * d);
            }
        }
        f
    })
}

/// d(force imbalance)/du, which equals K^z / w_z^2.
fn axial_hessian(u: &[f64]) -> DMatrix<f64> {
    let n = u.len();
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut diag = 1.0;
        for j in 0..n {
            if j != i {
                let c = 2.0 * (u[i] - u[j]).abs().powi(-3);
                h[(i, j)] = -c;
                diag += c;
            }
        }
        h[(i, i)] = diag;
    }
    h
}

fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn strictly_increasing(u: &[f64]) -> bool {
    u.windows(2).all(|w| w[1] > w[0])
}

/// Dimensionless equilibrium positions of an N-ion chain, solved by damped
/// Newton iteration from a linearly spaced guess.
pub fn equilibrium_positions(n: usize) -> Result<CrystalGeometry, CrystalError> {
    if n == 0 || n > MAX_IONS {
        return Err(CrystalError::InvalidIonCount(n));
    }
    let spacing = 2.0 * (n as f64).powf(-0.56);
    let mut u: Vec<f64> = (0..n)
        .map(|i| (i as f64 - (n as f64 - 1.0) / 2.0) * spacing)
        .collect();

    let mut residual = max_abs(&force_imbalance(&u));
    let mut iterations = 0;
    while residual > RESIDUAL_TARGET {
        if iterations == MAX_NEWTON_ITERATIONS {
            return Err(CrystalError::NoConvergence {
                iterations,
                residual,
            });
        }
        iterations += 1;
        let f = force_imbalance(&u);
        let step = axial_hessian(&u)
            .cholesky()
            .map(|c| c.solve(&(-&f)))
            .ok_or(CrystalError::NoConvergence {
                iterations,
                residual,
            })?;

        let mut damping = 1.0;
        loop {
            let trial: Vec<f64> = u
                .iter()
                .zip(step.iter())
                .map(|(a, b)| a + damping * b)
                .collect();
            let trial_res = max_abs(&force_imbalance(&trial));
            if strictly_increasing(&trial) && (trial_res < residual || damping < 1e-6) {
                u = trial;
                residual = trial_res;
                break;
            }
            damping *= 0.5;
        }
    }

    // Remove round-off asymmetry; the exact solution is mirror symmetric.
    let mirrored: Vec<f64> = (0..n).map(|i| 0.5 * (u[i] - u[n - 1 - i])).collect();
    let residual = max_abs(&force_imbalance(&mirrored));
    Ok(CrystalGeometry {
        positions: mirrored,
        length_scale: None,
        residual,
    })
}

/// Stiffness matrix K^alpha (rad^2/s^2) with the Coulomb curvature written
/// through w_z^2 |u_i - u_j|^-3.
pub fn stiffness_matrix(
    geometry: &CrystalGeometry,
    axial_frequency: f64,
    radial_frequency: f64,
    axis: Axis,
) -> DMatrix<f64> {
    let w2z = axial_frequency * axial_frequency;
    let trap = match axis {
        Axis::Z => w2z,
        Axis::X | Axis::Y => radial_frequency * radial_frequency,
    };
    let c = axis.coulomb_factor();
    let inv3 = geometry.inverse_cubed_distances();
    let sums = geometry.neighbor_sums();
    let n = geometry.len();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            trap - c * w2z * sums[i]
        } else {
            c * w2z * inv3[(i, j)]
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalModes {
    pub axis: Axis,
    /// Mode angular frequencies, ascending (rad/s).
    pub frequencies: Vec<f64>,
    /// Orthogonal matrix whose columns are the mode vectors.
    pub modes: DMatrix<f64>,
}

impl NormalModes {
    pub fn mode(&self, k: usize) -> Vec<f64> {
        self.modes.column(k).iter().copied().collect()
    }
}

/// Phonon modes along one axis from the eigendecomposition of K^alpha.
///
/// Mode vectors are signed so their largest-magnitude entry is positive.
/// Degenerate subspaces are replaced by a canonical orthonormal basis.
pub fn normal_modes(
    geometry: &CrystalGeometry,
    axial_frequency: f64,
    radial_frequency: f64,
    axis: Axis,
) -> Result<NormalModes, CrystalError> {
    if !(axial_frequency > 0.0) {
        return Err(CrystalError::InvalidArgument(
            "axial frequency must be positive".into(),
        ));
    }
    if axis != Axis::Z && !(radial_frequency > 0.0) {
        return Err(CrystalError::InvalidArgument(
            "radial frequency must be positive".into(),
        ));
    }
    let k = stiffness_matrix(geometry, axial_frequency, radial_frequency, axis);
    let n = k.nrows();
    let eig = SymmetricEigen::new(k);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|a, b| eig.eigenvalues[*a].total_cmp(&eig.eigenvalues[*b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);

    if let Some(&bad) = values.iter().find(|v| **v < 0.0) {
        return Err(CrystalError::StructuralInstability {
            axis,
            eigenvalue: bad,
        });
    }

    let scale = values
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (values[end] - values[start]).abs() <= DEGENERACY_TOLERANCE * scale {
            end += 1;
        }
        if end - start > 1 {
            canonicalize_block(&mut vectors, start, end);
        }
        start = end;
    }
    for c in 0..n {
        fix_sign(&mut vectors, c);
    }

    Ok(NormalModes {
        axis,
        frequencies: values.iter().map(|v| v.sqrt()).collect(),
        modes: vectors,
    })
}

fn largest_entry_index(v: &DMatrix<f64>, col: usize) -> usize {
    let mut best = 0;
    for r in 1..v.nrows() {
        // Ties resolve to the lowest index.
        if v[(r, col)].abs() > v[(best, col)].abs() * (1.0 + 1e-12) {
            best = r;
        }
    }
    best
}

fn fix_sign(v: &mut DMatrix<f64>, col: usize) {
    let idx = largest_entry_index(v, col);
    if v[(idx, col)] < 0.0 {
        v.column_mut(col).neg_mut();
    }
}

/// Replace columns start..end with a basis of their span that does not depend
/// on the eigensolver's arbitrary rotation: reduced row echelon form of the
/// transposed block, then Gram-Schmidt, then ordering by largest entry.
fn canonicalize_block(v: &mut DMatrix<f64>, start: usize, end: usize) {
    let n = v.nrows();
    let d = end - start;
    let mut rows = v.columns(start, d).transpose();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == d {
            break;
        }
        let (best, best_val) =
            (pivot_row..d)
                .map(|r| (r, rows[(r, col)].abs()))
                .fold(
                    (pivot_row, -1.0),
                    |acc, x| if x.1 > acc.1 { x } else { acc },
                );
        if best_val < 1e-8 {
            continue;
        }
        rows.swap_rows(pivot_row, best);
        let p = rows[(pivot_row, col)];
        for c in 0..n {
            rows[(pivot_row, c)] /= p;
        }
        for r in 0..d {
            if r != pivot_row {
                let f = rows[(r, col)];
                if f != 0.0 {
                    for c in 0..n {
                        rows[(r, c)] -= f * rows[(pivot_row, c)];
                    }
                }
            }
        }
        pivot_row += 1;
    }
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(d);
    for r in 0..d {
        let mut w: DVector<f64> = rows.row(r).transpose();
        for b in &basis {
            let proj = b.dot(&w);
            w -= b * proj;
        }
        let norm = w.norm();
        basis.push(w / norm);
    }
    basis.sort_by_key(|b| {
        let mut best = 0;
        for i in 1..n {
            if b[i].abs() > b[best].abs() * (1.0 + 1e-12) {
                best = i;
            }
        }
        best
    });
    for (k, b) in basis.into_iter().enumerate() {
        v.set_column(start + k, &b);
    }
}

/// Extra static gradient at each ion from the quadrupole field of its
/// neighbours: delta_beta_i = e / (8 pi eps0) sum_{j != i} |Z_i - Z_j|^-3 (V/m^2).
pub fn site_gradient_shifts(geometry: &CrystalGeometry) -> Result<Vec<f64>, CrystalError> {
    let zeta = geometry
        .length_scale
        .ok_or(CrystalError::MissingLengthScale)?;
    let c = CODATA_2018;
    let prefactor =
        c.elementary_charge / (8.0 * std::f64::consts::PI * c.vacuum_permittivity * zeta.powi(3));
    Ok(geometry
        .neighbor_sums()
        .into_iter()
        .map(|s| prefactor * s)
        .collect())
}

/// Position dependent MW detunings Delta_2,i = B_z sum_{j != i} |u_i - u_j|^-3,
/// in whatever energy unit `b_z` carries.
pub fn site_detunings(geometry: &CrystalGeometry, b_z: f64) -> Vec<f64> {
    geometry
        .neighbor_sums()
        .into_iter()
        .map(|s| b_z * s)
        .collect()
}

/// B_z = (2/5) M w_z^2 <n,p|r^2|n,p> (J).
///
/// Positive: the neighbours' gradient lowers the p_1/2 level, which raises
/// the detuning of a MW field tuned to the unperturbed s-p gap.
pub fn detuning_scale(species: &IonSpecies, axial_frequency: f64, r2_p: f64) -> f64 {
    0.4 * species.mass * axial_frequency * axial_frequency * r2_p
}
