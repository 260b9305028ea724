//! Ion species data and Rydberg level energetics.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::constants::{Constants, CODATA_2018};
use super::PhyscoreError;

/// p-series quantum defect of the bundled Ca+ table.
pub const CA40_P_DEFECT: f64 = 1.44;

/// Reference level of the Ca+ calibration.
pub const CA40_CALIBRATION_N: u32 = 60;

/// s-p splitting at n = 60 that the bundled Ca+ table reproduces, as an angular
/// frequency (rad/s). The splitting energy is hbar times this value.
pub const CA40_SP_SPLITTING_RAD_S: f64 = 280e9;

/// Mass of the 40Ca+ ion in atomic mass units (neutral isotope mass minus one electron).
pub const CA40_MASS_AMU: f64 = 39.962_042;

/// Radiative lifetime prefactor for Ca+ low-l Rydberg states, tau(n) = tau0 * n^3 (s).
/// Chosen so that tau(50) = 10 us.
pub const CA40_TAU0_S: f64 = 80e-12;

/// A singly charged alkaline-earth ion: a doubly charged core plus one valence electron.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IonSpecies {
    pub name: String,
    /// Mass of the ion (kg).
    pub mass: f64,
    /// Quantum defects indexed by orbital quantum number l.
    pub defects: Vec<f64>,
    /// Lifetime prefactor tau0 with tau(n) = tau0 n^3 (s).
    pub tau0: Option<f64>,
}

impl IonSpecies {
    /// Charge number of the ionic core seen by the Rydberg electron.
    pub const CORE_CHARGE: u32 = 2;

    pub fn new(
        name: impl Into<String>,
        mass: f64,
        defects: Vec<f64>,
        tau0: Option<f64>,
    ) -> Result<Self, PhyscoreError> {
        let name = name.into();
        if !(mass > 1000.0 * CODATA_2018.electron_mass) {
            return Err(PhyscoreError::InvalidSpecies(format!(
                "{name}: mass {mass:e} kg is not heavier than 1000 electron masses"
            )));
        }
        if defects.len() < 2 {
            return Err(PhyscoreError::InvalidSpecies(format!(
                "{name}: defect table must cover at least l = 0 and l = 1"
            )));
        }
        if let Some((l, d)) = defects
            .iter()
            .enumerate()
            .find(|(_, d)| !(d.is_finite() && **d >= 0.0))
        {
            return Err(PhyscoreError::InvalidSpecies(format!(
                "{name}: defect for l = {l} must be finite and non-negative, got {d}"
            )));
        }
        if let Some(t) = tau0 {
            if !(t > 0.0) {
                return Err(PhyscoreError::InvalidSpecies(format!(
                    "{name}: tau0 must be positive, got {t}"
                )));
            }
        }
        Ok(Self {
            name,
            mass,
            defects,
            tau0,
        })
    }

    /// Bundled 40Ca+ species.
    ///
    /// The s defect is calibrated against [`CA40_SP_SPLITTING_RAD_S`] at
    /// n = [`CA40_CALIBRATION_N`] with the p defect fixed to [`CA40_P_DEFECT`].
    /// These are stand-in values, not a spectroscopic table.
    pub fn calcium40() -> Self {
        let c = CODATA_2018;
        let splitting = c.hbar * CA40_SP_SPLITTING_RAD_S;
        let s = calibrated_s_defect(&c, CA40_P_DEFECT, CA40_CALIBRATION_N, splitting)
            .expect("bundled calibration is well posed");
        Self {
            name: "ca40".into(),
            mass: CA40_MASS_AMU * c.atomic_mass_unit,
            defects: vec![s, CA40_P_DEFECT],
            tau0: Some(CA40_TAU0_S),
        }
    }

    /// Look up a species by its registry name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ca40" | "ca+" | "40ca+" => Some(Self::calcium40()),
            _ => None,
        }
    }

    pub fn defect(&self, l: u32) -> Result<f64, PhyscoreError> {
        self.defects
            .get(l as usize)
            .copied()
            .ok_or(PhyscoreError::MissingDefect { l })
    }

    /// Radiative lifetime tau0 n^3, if the species carries a lifetime scale.
    pub fn lifetime(&self, n: u32) -> Option<f64> {
        self.tau0.map(|t| t * f64::from(n).powi(3))
    }

    /// Parse a species document (TOML):
    ///
    /// ```toml
    /// name = "ca40"
    /// mass_amu = 39.962042
    /// tau0_ns = 0.08
    /// [defects]
    /// s = 1.778
    /// p = 1.44
    /// ```
    pub fn from_toml_str(text: &str) -> Result<Self, PhyscoreError> {
        let doc: SpeciesDocument =
            toml::from_str(text).map_err(|e| PhyscoreError::Parse(e.to_string()))?;
        doc.into_species()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, PhyscoreError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| PhyscoreError::Parse(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpeciesDocument {
    name: String,
    mass_amu: f64,
    defects: BTreeMap<String, f64>,
    #[serde(default)]
    tau0_ns: Option<f64>,
}

impl SpeciesDocument {
    fn into_species(self) -> Result<IonSpecies, PhyscoreError> {
        const LETTERS: [&str; 6] = ["s", "p", "d", "f", "g", "h"];
        let mut by_l = BTreeMap::new();
        for (key, value) in &self.defects {
            let l = LETTERS
                .iter()
                .position(|s| s == key)
                .ok_or_else(|| PhyscoreError::Parse(format!("unknown defect key `{key}`")))?;
            by_l.insert(l, *value);
        }
        // The table must be contiguous from l = 0.
        let mut defects = Vec::with_capacity(by_l.len());
        for (expected, (l, d)) in by_l.into_iter().enumerate() {
            if l != expected {
                return Err(PhyscoreError::Parse(format!(
                    "defect table has a gap before `{}`",
                    LETTERS[l]
                )));
            }
            defects.push(d);
        }
        IonSpecies::new(
            self.name,
            self.mass_amu * CODATA_2018.atomic_mass_unit,
            defects,
            self.tau0_ns.map(|t| t * 1e-9),
        )
    }
}

/// A fine-structure resolved Rydberg level |n, l, j, m>.
///
/// `j` and `m` are stored doubled so they stay integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RydbergLevel {
    pub n: u32,
    pub l: u32,
    pub twice_j: u32,
    pub twice_m: i32,
}

impl RydbergLevel {
    pub const MIN_N: u32 = 10;

    pub fn new(n: u32, l: u32, twice_j: u32, twice_m: i32) -> Result<Self, PhyscoreError> {
        let invalid = |why: &str| {
            Err(PhyscoreError::InvalidLevel(format!(
                "n={n} l={l} j={twice_j}/2 m={twice_m}/2: {why}"
            )))
        };
        if n < Self::MIN_N {
            return invalid("principal quantum number below 10");
        }
        if l >= n {
            return invalid("l must be smaller than n");
        }
        let twice_l = 2 * l;
        let allowed = twice_j == twice_l + 1 || (l > 0 && twice_j + 1 == twice_l);
        if !allowed {
            return invalid("j must equal l +/- 1/2");
        }
        if twice_m.unsigned_abs() > twice_j || (twice_m - twice_j as i32) % 2 != 0 {
            return invalid("m must lie in -j..=j in integer steps");
        }
        Ok(Self {
            n,
            l,
            twice_j,
            twice_m,
        })
    }

    /// |n, s, 1/2, m>.
    pub fn s_half(n: u32, twice_m: i32) -> Result<Self, PhyscoreError> {
        Self::new(n, 0, 1, twice_m)
    }

    /// |n, p, j, m>.
    pub fn p(n: u32, twice_j: u32, twice_m: i32) -> Result<Self, PhyscoreError> {
        Self::new(n, 1, twice_j, twice_m)
    }

    pub fn j(&self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    pub fn abs_m(&self) -> f64 {
        f64::from(self.twice_m.unsigned_abs()) / 2.0
    }
}

/// Level energy -4 E_Ryd / (n - delta(l))^2 of a Rydberg electron bound to a
/// doubly charged core. The fine-structure contribution is not included.
pub fn rydberg_energy(
    constants: &Constants,
    species: &IonSpecies,
    level: &RydbergLevel,
) -> Result<f64, PhyscoreError> {
    let defect = species.defect(level.l)?;
    let n = f64::from(level.n);
    if n <= defect {
        return Err(PhyscoreError::PrincipalBelowDefect { n: level.n, defect });
    }
    let z = f64::from(IonSpecies::CORE_CHARGE);
    Ok(-z * z * constants.rydberg_energy / (n - defect).powi(2))
}

/// E(n, p) - E(n, s): positive when the s defect exceeds the p defect.
pub fn sp_splitting(
    constants: &Constants,
    species: &IonSpecies,
    n: u32,
) -> Result<f64, PhyscoreError> {
    let s = RydbergLevel::s_half(n, 1)?;
    let p = RydbergLevel::p(n, 1, 1)?;
    Ok(rydberg_energy(constants, species, &p)? - rydberg_energy(constants, species, &s)?)
}

/// s defect that produces the requested E(n,p) - E(n,s) for a given p defect.
pub fn calibrated_s_defect(
    constants: &Constants,
    p_defect: f64,
    n: u32,
    splitting: f64,
) -> Result<f64, PhyscoreError> {
    let n = f64::from(n);
    let scale = 4.0 * constants.rydberg_energy;
    let inv_sq = (n - p_defect).powi(-2) + splitting / scale;
    if !(inv_sq > 0.0) {
        return Err(PhyscoreError::InvalidSpecies(format!(
            "splitting {splitting:e} J cannot be reached from p defect {p_defect}"
        )));
    }
    let s = n - inv_sq.sqrt().recip();
    if s < 0.0 {
        return Err(PhyscoreError::InvalidSpecies(format!(
            "calibration gives a negative s defect ({s})"
        )));
    }
    Ok(s)
}
