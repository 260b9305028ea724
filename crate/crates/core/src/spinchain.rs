//! Effective spin-1/2 model of a dressed Rydberg ion chain.
//!
//! H = sum_i [hx_i S_x + (hz_i + zfield_extra_i) S_z]
//!   + w sum_{i<j} [xy_ij (S_x S_x + S_y S_y) + zz_ij S_z S_z] + scalar_offset
//!
//! with S = sigma/2 and w = 2 when the pair sum runs over ordered pairs, 1 when
//! each unordered pair is counted once. Basis index bit k is site k (0-based),
//! bit value 1 is spin up.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crystal::CrystalGeometry;
use crate::dressing::DressedTwoLevel;
use crate::physcore::{IonSpecies, CODATA_2018};

/// Largest chain for which a dense matrix is built.
pub const DENSE_LIMIT: usize = 14;
/// Largest chain for the matrix-free operator.
pub const MATRIX_FREE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinChainError {
    #[error("{what} supports at most {limit} sites, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("geometry has no physical length scale")]
    MissingLengthScale,
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("site index {site} out of range for {n} sites")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairConvention {
    /// Sum over i != j, every pair contributes twice.
    #[default]
    Ordered,
    /// Each unordered pair contributes once.
    Distinct,
}

impl PairConvention {
    pub fn weight(self) -> f64 {
        match self {
            PairConvention::Ordered => 2.0,
            PairConvention::Distinct => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyUnits {
    /// Joules.
    Si,
    /// Multiples of |J|, the nearest-scale coupling energy.
    JUnits,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinChainModel {
    pub n: usize,
    pub hx: Vec<f64>,
    pub hz: Vec<f64>,
    /// Transverse coupling per ordered pair, symmetric with zero diagonal.
    pub xy: Vec<Vec<f64>>,
    /// Longitudinal coupling per ordered pair.
    pub zz: Vec<Vec<f64>>,
    pub zfield_extra: Vec<f64>,
    pub scalar_offset: f64,
    pub units: EnergyUnits,
    pub convention: PairConvention,
}

/// J = -(2 M w_z^2 / e^2) D2 (J), the coupling energy of two ions one length unit apart.
pub fn coupling_scale(species: &IonSpecies, axial_frequency: f64, d2_sq: f64) -> f64 {
    let e = CODATA_2018.elementary_charge;
    -2.0 * species.mass * axial_frequency * axial_frequency / (e * e) * d2_sq
}

fn square(n: usize) -> Vec<Vec<f64>> {
    vec![vec![0.0; n]; n]
}

impl SpinChainModel {
    /// Chain in units of |J| with uniform transverse field `omega2` and
    /// longitudinal fields `bz` sum_j |u_i - u_j|^-3. The flip-flop coupling
    /// per ordered pair is `coupling_sign` / |u_i - u_j|^3.
    pub fn dimensionless(
        geometry: &CrystalGeometry,
        bz: f64,
        omega2: f64,
        coupling_sign: f64,
        convention: PairConvention,
    ) -> Result<Self, SpinChainError> {
        if !bz.is_finite() || !omega2.is_finite() || !coupling_sign.is_finite() {
            return Err(SpinChainError::InvalidArgument(
                "parameters must be finite".into(),
            ));
        }
        let n = geometry.len();
        let inv3 = geometry.inverse_cubed_distances();
        let mut xy = square(n);
        for i in 0..n {
            for j in 0..n {
                xy[i][j] = coupling_sign * inv3[(i, j)];
            }
        }
        Ok(SpinChainModel {
            n,
            hx: vec![omega2; n],
            hz: geometry
                .neighbor_sums()
                .into_iter()
                .map(|s| bz * s)
                .collect(),
            xy,
            zz: square(n),
            zfield_extra: vec![0.0; n],
            scalar_offset: 0.0,
            units: EnergyUnits::JUnits,
            convention,
        })
    }

    /// Chain in joules from per-ion dressing results. The geometry must carry
    /// its length scale.
    pub fn physical(
        geometry: &CrystalGeometry,
        dressed: &[DressedTwoLevel],
        convention: PairConvention,
    ) -> Result<Self, SpinChainError> {
        let n = geometry.len();
        if dressed.len() != n {
            return Err(SpinChainError::Inconsistent(format!(
                "{} dressing entries for {n} ions",
                dressed.len()
            )));
        }
        let z = geometry
            .physical_positions()
            .map_err(|_| SpinChainError::MissingLengthScale)?;
        let c = CODATA_2018;
        let hbar = c.hbar;
        let nu = |i: usize, j: usize| {
            -2.0 / (4.0
                * std::f64::consts::PI
                * c.vacuum_permittivity
                * (z[i] - z[j]).abs().powi(3))
        };
        let mut xy = square(n);
        let mut zz = square(n);
        let mut zfield_extra = vec![0.0; n];
        let mut scalar_offset = 0.0;
        let half_w = 0.5 * convention.weight();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = nu(i, j);
                let d1 = (dressed[i].d1_sq * dressed[j].d1_sq).sqrt();
                let d2 = (dressed[i].d2_sq * dressed[j].d2_sq).sqrt();
                let (ei, ej) = (dressed[i].eta, dressed[j].eta);
                xy[i][j] = v * d2;
                zz[i][j] = v * d1 * ei * ej;
                zfield_extra[i] += half_w * d1 * v * ei * ej;
                scalar_offset += half_w * 0.25 * d1 * v * ei * ei;
            }
        }
        Ok(SpinChainModel {
            n,
            hx: dressed.iter().map(|d| hbar * d.field[0]).collect(),
            hz: dressed.iter().map(|d| hbar * d.field[2]).collect(),
            xy,
            zz,
            zfield_extra,
            scalar_offset,
            units: EnergyUnits::Si,
            convention,
        })
    }

    pub fn dimension(&self) -> usize {
        1usize << self.n
    }

    /// Copy with every energy divided by `scale`, e.g. |J| to go from joules to J-units.
    pub fn rescaled(&self, scale: f64) -> Result<Self, SpinChainError> {
        if self.units != EnergyUnits::Si {
            return Err(SpinChainError::Inconsistent(
                "model is already dimensionless".into(),
            ));
        }
        if !(scale > 0.0) {
            return Err(SpinChainError::InvalidArgument(
                "scale must be positive".into(),
            ));
        }
        let div = |v: &Vec<f64>| v.iter().map(|x| x / scale).collect::<Vec<_>>();
        Ok(SpinChainModel {
            n: self.n,
            hx: div(&self.hx),
            hz: div(&self.hz),
            xy: self.xy.iter().map(div).collect(),
            zz: self.zz.iter().map(div).collect(),
            zfield_extra: div(&self.zfield_extra),
            scalar_offset: self.scalar_offset / scale,
            units: EnergyUnits::JUnits,
            convention: self.convention,
        })
    }

    pub fn operator(&self) -> Result<SpinOperator, SpinChainError> {
        SpinOperator::new(self)
    }

    /// Dense real symmetric Hamiltonian.
    pub fn dense(&self) -> Result<DMatrix<f64>, SpinChainError> {
        if self.n > DENSE_LIMIT {
            return Err(SpinChainError::TooLarge {
                what: "dense Hamiltonian",
                n: self.n,
                limit: DENSE_LIMIT,
            });
        }
        let op = self.operator()?;
        let dim = self.dimension();
        let mut h = DMatrix::zeros(dim, dim);
        for b in 0..dim {
            h[(b, b)] = op.diagonal[b];
            for &(mask, c) in &op.flips {
                h[(b ^ mask, b)] += c;
            }
            for &(mask, c) in &op.hops {
                // A hop needs exactly one of the two bits set.
                let bits = b & mask;
                if bits != 0 && bits != mask {
                    h[(b ^ mask, b)] += c;
                }
            }
        }
        Ok(h)
    }
}

/// Matrix-free form of the chain Hamiltonian.
#[derive(Debug, Clone)]
pub struct SpinOperator {
    pub n: usize,
    diagonal: Vec<f64>,
    /// Single-spin flips from the transverse field: (mask, hx/2).
    flips: Vec<(usize, f64)>,
    /// Flip-flop exchange between two sites: (mask, w xy/2).
    hops: Vec<(usize, f64)>,
}

impl SpinOperator {
    pub fn new(model: &SpinChainModel) -> Result<Self, SpinChainError> {
        let n = model.n;
        if n > MATRIX_FREE_LIMIT {
            return Err(SpinChainError::TooLarge {
                what: "matrix-free operator",
                n,
                limit: MATRIX_FREE_LIMIT,
            });
        }
        let w = model.convention.weight();
        let flips = (0..n)
            .filter(|&i| model.hx[i] != 0.0)
            .map(|i| (1usize << i, 0.5 * model.hx[i]))
            .collect();
        let mut hops = Vec::new();
        let mut zz_pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mask = (1usize << i) | (1usize << j);
                if model.xy[i][j] != 0.0 {
                    hops.push((mask, 0.5 * w * model.xy[i][j]));
                }
                if model.zz[i][j] != 0.0 {
                    zz_pairs.push((i, j, w * model.zz[i][j]));
                }
            }
        }
        let fields: Vec<f64> = (0..n)
            .map(|i| model.hz[i] + model.zfield_extra[i])
            .collect();
        let diagonal = (0..1usize << n)
            .into_par_iter()
            .map(|b| {
                let s = |i: usize| if b >> i & 1 == 1 { 0.5 } else { -0.5 };
                let mut e = model.scalar_offset;
                for (i, f) in fields.iter().enumerate() {
                    e += f * s(i);
                }
                for &(i, j, c) in &zz_pairs {
                    e += c * s(i) * s(j);
                }
                e
            })
            .collect();
        Ok(SpinOperator {
            n,
            diagonal,
            flips,
            hops,
        })
    }

    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    /// out = H psi.
    pub fn apply(&self, psi: &[Complex64], out: &mut [Complex64]) {
        assert_eq!(psi.len(), self.dimension());
        assert_eq!(out.len(), self.dimension());
        out.par_iter_mut()
            .enumerate()
            .with_min_len(1024)
            .for_each(|(b, o)| {
                let mut acc = psi[b] * self.diagonal[b];
                for &(mask, c) in &self.flips {
                    acc += psi[b ^ mask] * c;
                }
                for &(mask, c) in &self.hops {
                    let bits = b & mask;
                    if bits != 0 && bits != mask {
                        acc += psi[b ^ mask] * c;
                    }
                }
                *o = acc;
            });
    }

    /// <psi|H|psi>, real because H is Hermitian.
    pub fn expectation(&self, psi: &[Complex64]) -> f64 {
        let mut h_psi = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.apply(psi, &mut h_psi);
        psi.par_iter()
            .zip(h_psi.par_iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}

/// State vector of N spins with bit k of the basis index holding site k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinState {
    pub n: usize,
    pub amplitudes: Vec<Complex64>,
}

impl SpinState {
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex64>) -> Result<Self, SpinChainError> {
        if n > MATRIX_FREE_LIMIT {
            return Err(SpinChainError::TooLarge {
                what: "spin state",
                n,
                limit: MATRIX_FREE_LIMIT,
            });
        }
        if amplitudes.len() != 1usize << n {
            return Err(SpinChainError::Inconsistent(format!(
                "{} amplitudes for {n} spins",
                amplitudes.len()
            )));
        }
        Ok(SpinState { n, amplitudes })
    }

    pub fn basis(n: usize, index: usize) -> Result<Self, SpinChainError> {
        let dim = 1usize << n.min(MATRIX_FREE_LIMIT + 1);
        if index >= dim {
            return Err(SpinChainError::InvalidArgument(format!(
                "basis index {index} out of range"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        SpinState::from_amplitudes(n, amps)
    }

    /// Product state with the listed sites up and the rest down.
    pub fn with_up_sites(n: usize, up: &[usize]) -> Result<Self, SpinChainError> {
        let mut index = 0;
        for &site in up {
            if site >= n {
                return Err(SpinChainError::SiteOutOfRange { site, n });
            }
            index |= 1 << site;
        }
        SpinState::basis(n, index)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// <S_z> of one site.
    pub fn magnetization(&self, site: usize) -> Result<f64, SpinChainError> {
        if site >= self.n {
            return Err(SpinChainError::SiteOutOfRange { site, n: self.n });
        }
        Ok(site_magnetizations(&self.amplitudes, self.n)[site])
    }

    pub fn inner(&self, other: &SpinState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// <S_z> of every site, accumulated in one pass over the amplitudes.
pub fn site_magnetizations(amplitudes: &[Complex64], n: usize) -> Vec<f64> {
    let up = amplitudes
        .par_iter()
        .enumerate()
        .with_min_len(4096)
        .fold(
            || vec![0.0; n],
            |mut acc, (b, a)| {
                let p = a.norm_sqr();
                for (k, slot) in acc.iter_mut().enumerate() {
                    if b >> k & 1 == 1 {
                        *slot += p;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0.0; n],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            },
        );
    let total: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    up.into_iter().map(|p| p - 0.5 * total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::equilibrium_positions;
    use crate::dressing::{dress_rydberg, MwConfig};
    use proptest::prelude::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_model(n: usize, seed: u64) -> SpinChainModel {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut xy = square(n);
        let mut zz = square(n);
        for i in 0..n {
            for j in (i + 1)..n {
                xy[i][j] = rng.random_range(-1.0..1.0);
                xy[j][i] = xy[i][j];
                zz[i][j] = rng.random_range(-1.0..1.0);
                zz[j][i] = zz[i][j];
            }
        }
        SpinChainModel {
            n,
            hx: (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
            hz: (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
            xy,
            zz,
            zfield_extra: (0..n).map(|_| rng.random_range(-0.1..0.1)).collect(),
            scalar_offset: 0.3,
            units: EnergyUnits::JUnits,
            convention: PairConvention::Ordered,
        }
    }

    fn random_vector(dim: usize, rng: &mut StdRng) -> Vec<Complex64> {
        (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    fn pauli_total_sz(n: usize) -> DMatrix<f64> {
        DMatrix::from_fn(1 << n, 1 << n, |r, c| {
            if r == c {
                (0..n)
                    .map(|k| if r >> k & 1 == 1 { 0.5 } else { -0.5 })
                    .sum()
            } else {
                0.0
            }
        })
    }

    #[test]
    fn single_site_two_level_splitting() {
        let g = equilibrium_positions(1).unwrap();
        let m = SpinChainModel::dimensionless(&g, 0.0, 1.7, -1.0, PairConvention::Ordered).unwrap();
        let h = m.dense().unwrap();
        let eig = h.symmetric_eigenvalues();
        let (lo, hi) = (eig.min(), eig.max());
        assert!((lo + 0.85).abs() < 1e-14 && (hi - 0.85).abs() < 1e-14);
    }

    #[test]
    fn single_dressed_ion_reduces_to_effective_field() {
        let mw = MwConfig {
            omega1: 2e8,
            omega2: 3e7,
            delta1: 2e9,
            delta2: 1e7,
            d1: 1e-26,
            d2: 1e-26,
        };
        let d = dress_rydberg(&mw).unwrap();
        let g = equilibrium_positions(1).unwrap().with_length_scale(4e-6);
        let m = SpinChainModel::physical(&g, &[d], PairConvention::Ordered).unwrap();
        let h = m.dense().unwrap();
        let two = d.effective_hamiltonian();
        let hbar = CODATA_2018.hbar;
        // Basis order (down, up) for bit 0.
        assert!((h[(1, 1)] - hbar * two[0][0]).abs() < 1e-40);
        assert!((h[(0, 0)] - hbar * two[1][1]).abs() < 1e-40);
        assert!((h[(0, 1)] - hbar * two[0][1]).abs() < 1e-40);
    }

    #[test]
    fn two_ion_coupling_in_j_units() {
        let g = equilibrium_positions(2).unwrap();
        let m =
            SpinChainModel::dimensionless(&g, 0.65, 0.01, 1.0, PairConvention::Ordered).unwrap();
        assert!((m.xy[0][1] - 0.5).abs() < 1e-10);
        assert_eq!(m.xy[0][1], m.xy[1][0]);
        assert_eq!(m.xy[0][0], 0.0);
        // |01> <-> |10> element is w xy / 2.
        let h = m.dense().unwrap();
        assert!((h[(1, 2)] - 0.5).abs() < 1e-10);
        let distinct =
            SpinChainModel::dimensionless(&g, 0.65, 0.01, 1.0, PairConvention::Distinct).unwrap();
        assert!((distinct.dense().unwrap()[(1, 2)] - 0.25).abs() < 1e-10);
    }

    #[test]
    fn physical_coupling_matches_scale() {
        let sp = IonSpecies::calcium40();
        let wz = 2.0 * std::f64::consts::PI * 1.56e6;
        let zeta = crate::crystal::length_scale(&sp, wz).unwrap();
        let g = equilibrium_positions(2).unwrap().with_length_scale(zeta);
        let mw = MwConfig {
            omega1: 0.0,
            omega2: 1e7,
            delta1: 1e9,
            delta2: 0.0,
            d1: 2e-26,
            d2: 3e-26,
        };
        let d = dress_rydberg(&mw).unwrap();
        let m = SpinChainModel::physical(&g, &[d, d], PairConvention::Ordered).unwrap();
        let j = coupling_scale(&sp, wz, d.d2_sq);
        assert!(j < 0.0);
        let u = g.positions[1] - g.positions[0];
        assert!((m.xy[0][1] / j - u.abs().powi(-3)).abs() < 1e-9);
        // eta = 0 leaves no static-dipole terms.
        assert!(m.zz.iter().flatten().all(|v| *v == 0.0));
        assert!(m.zfield_extra.iter().all(|v| *v == 0.0));
        assert_eq!(m.scalar_offset, 0.0);

        let scaled = m.rescaled(j.abs()).unwrap();
        assert_eq!(scaled.units, EnergyUnits::JUnits);
        assert!((scaled.xy[0][1] + 0.5).abs() < 1e-9);
        assert!(scaled.rescaled(1.0).is_err());
    }

    #[test]
    fn admixture_generates_static_dipole_terms() {
        let mw = MwConfig {
            omega1: 2e8,
            omega2: 1e7,
            delta1: 2e9,
            delta2: 0.0,
            d1: 2e-26,
            d2: 3e-26,
        };
        let d = dress_rydberg(&mw).unwrap();
        let g = equilibrium_positions(3).unwrap().with_length_scale(5e-6);
        let m = SpinChainModel::physical(&g, &[d, d, d], PairConvention::Ordered).unwrap();
        let ratio = m.zz[0][1] / m.xy[0][1];
        assert!((ratio - d.eta * d.eta * d.d1_sq / d.d2_sq).abs() < 1e-12);
        let expected: f64 = (0..3).filter(|&j| j != 1).map(|j| m.zz[1][j]).sum();
        assert!((m.zfield_extra[1] - expected).abs() < 1e-12 * expected.abs());
        assert!(m.scalar_offset != 0.0);
    }

    #[test]
    fn couplings_decay_as_inverse_cube() {
        let g = equilibrium_positions(3).unwrap();
        let m = SpinChainModel::dimensionless(&g, 0.0, 0.0, -1.0, PairConvention::Ordered).unwrap();
        let u = &g.positions;
        let ratio = m.xy[0][2] / m.xy[0][1];
        assert!((ratio - ((u[1] - u[0]) / (u[2] - u[0])).powi(3)).abs() < 1e-12);
        assert!((ratio - 0.125).abs() < 1e-12);
    }

    #[test]
    fn mismatched_inputs() {
        let g = equilibrium_positions(2).unwrap().with_length_scale(5e-6);
        let d = dress_rydberg(&MwConfig {
            omega1: 0.0,
            omega2: 1.0,
            delta1: 10.0,
            delta2: 0.0,
            d1: 1.0,
            d2: 1.0,
        })
        .unwrap();
        assert!(matches!(
            SpinChainModel::physical(&g, &[d], PairConvention::Ordered),
            Err(SpinChainError::Inconsistent(_))
        ));
        let bare = equilibrium_positions(2).unwrap();
        assert_eq!(
            SpinChainModel::physical(&bare, &[d, d], PairConvention::Ordered),
            Err(SpinChainError::MissingLengthScale)
        );
    }

    #[test]
    fn size_limits() {
        let m = random_model(15, 1);
        assert!(matches!(m.dense(), Err(SpinChainError::TooLarge { .. })));
        let big = SpinChainModel {
            n: 25,
            ..random_model(1, 1)
        };
        assert!(matches!(
            big.operator(),
            Err(SpinChainError::TooLarge { .. })
        ));
    }

    #[test]
    fn dense_matches_matrix_free() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in [2usize, 4] {
            let m = random_model(n, 11 + n as u64);
            let h = m.dense().unwrap();
            let op = m.operator().unwrap();
            for _ in 0..20 {
                let v = random_vector(1 << n, &mut rng);
                let mut out = vec![Complex64::new(0.0, 0.0); 1 << n];
                op.apply(&v, &mut out);
                for r in 0..(1 << n) {
                    let dense: Complex64 = (0..(1 << n)).map(|c| v[c] * h[(r, c)]).sum();
                    assert!((dense - out[r]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hermitian() {
        let h = random_model(5, 3).dense().unwrap();
        assert!((&h - h.transpose()).amax() <= 1e-12 * h.amax());
    }

    #[test]
    fn excitation_number_conserved_without_transverse_field() {
        let g = equilibrium_positions(3).unwrap();
        let mut m =
            SpinChainModel::dimensionless(&g, 0.65, 0.0, -1.0, PairConvention::Ordered).unwrap();
        m.zz[0][2] = 0.3;
        m.zz[2][0] = 0.3;
        let h = m.dense().unwrap();
        let sz = pauli_total_sz(3);
        assert!((&h * &sz - &sz * &h).norm() < 1e-12);
        let with_field =
            SpinChainModel::dimensionless(&g, 0.65, 0.1, -1.0, PairConvention::Ordered).unwrap();
        let h = with_field.dense().unwrap();
        assert!((&h * &sz - &sz * &h).norm() > 1e-3);
    }

    #[test]
    fn mirror_symmetry() {
        let n = 5;
        let g = equilibrium_positions(n).unwrap();
        let m =
            SpinChainModel::dimensionless(&g, 0.65, 0.2, -1.0, PairConvention::Ordered).unwrap();
        let h = m.dense().unwrap();
        let reverse = |b: usize| (0..n).fold(0, |acc, k| acc | ((b >> k & 1) << (n - 1 - k)));
        let p = DMatrix::from_fn(
            1 << n,
            1 << n,
            |r, c| if reverse(c) == r { 1.0 } else { 0.0 },
        );
        assert!((&h * &p - &p * &h).norm() < 1e-12);
    }

    #[test]
    fn magnetization_of_simple_states() {
        let s = SpinState::with_up_sites(4, &[0]).unwrap();
        assert_eq!(s.magnetization(0).unwrap(), 0.5);
        for k in 1..4 {
            assert_eq!(s.magnetization(k).unwrap(), -0.5);
        }
        assert!(s.magnetization(4).is_err());

        let amp = Complex64::new(0.25, 0.0);
        let uniform = SpinState::from_amplitudes(4, vec![amp; 16]).unwrap();
        for k in 0..4 {
            assert!(uniform.magnetization(k).unwrap().abs() < 1e-15);
        }

        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let bell = SpinState::from_amplitudes(2, vec![z, r, r, z]).unwrap();
        assert!(bell.magnetization(0).unwrap().abs() < 1e-15);
        assert!(bell.magnetization(1).unwrap().abs() < 1e-15);
        assert!((bell.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_matches_dense() {
        let m = random_model(4, 5);
        let h = m.dense().unwrap();
        let op = m.operator().unwrap();
        let mut rng = StdRng::seed_from_u64(2);
        let v = random_vector(16, &mut rng);
        let dense: f64 = (0..16)
            .flat_map(|r| (0..16).map(move |c| (r, c)))
            .map(|(r, c)| (v[r].conj() * v[c] * h[(r, c)]).re)
            .sum();
        assert!((op.expectation(&v) - dense).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn eigenvalues_real_and_trace_consistent(seed in 0u64..1000) {
            let m = random_model(3, seed);
            let h = m.dense().unwrap();
            // tr H = 2^N scalar_offset since every spin operator is traceless.
            prop_assert!((h.trace() - 8.0 * m.scalar_offset).abs() < 1e-12);
            prop_assert!((&h - h.transpose()).amax() < 1e-15);
        }

        #[test]
        fn magnetizations_bounded(seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut v = random_vector(32, &mut rng);
            let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            v.iter_mut().for_each(|a| *a /= norm);
            for m in site_magnetizations(&v, 5) {
                prop_assert!((-0.5 - 1e-12..=0.5 + 1e-12).contains(&m));
            }
        }
    }
}
