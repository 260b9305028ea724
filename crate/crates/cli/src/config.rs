//! Subcommand parameter documents. Every physical key carries its unit in
//! the name; unknown keys are rejected. Values left out fall back to the
//! reference parameters.

use std::f64::consts::PI;
use std::path::Path;

use rydberg_ions::dressing::special_detunings;
use rydberg_ions::physcore::IonSpecies;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub fn load<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T, CliError> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Overwrite `slot` when a flag was given.
pub fn set<T>(slot: &mut Option<T>, flag: Option<T>) {
    if flag.is_some() {
        *slot = flag;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrequencyConvention {
    /// Values are ordinary frequencies f; the code uses 2 pi f.
    #[default]
    Ordinary,
    /// Values are already angular frequencies.
    Angular,
}

impl FrequencyConvention {
    pub fn mhz_to_rad_s(self, mhz: f64) -> f64 {
        match self {
            FrequencyConvention::Ordinary => 2.0 * PI * mhz * 1e6,
            FrequencyConvention::Angular => mhz * 1e6,
        }
    }

    pub fn rad_s_to_mhz(self, w: f64) -> f64 {
        match self {
            FrequencyConvention::Ordinary => w / (2.0 * PI * 1e6),
            FrequencyConvention::Angular => w / 1e6,
        }
    }
}

pub fn resolve_species(name: &str, file: Option<&str>) -> Result<IonSpecies, CliError> {
    if let Some(path) = file {
        return Ok(IonSpecies::from_file(path)?);
    }
    IonSpecies::builtin(name).ok_or_else(|| {
        CliError::Validation(format!(
            "unknown species '{name}' (try ca40 or a species file)"
        ))
    })
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::Validation(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

pub fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Validation(format!("{name} must be finite")))
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrapDoc {
    pub species: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub species_file: Option<String>,
    #[serde(rename = "alpha_V_per_m2")]
    pub alpha: Option<f64>,
    #[serde(rename = "beta_V_per_m2")]
    pub beta: Option<f64>,
    #[serde(rename = "rf_frequency_MHz")]
    pub rf_mhz: Option<f64>,
    /// Principal quantum number of the Rydberg estimates.
    pub n: Option<u32>,
    /// Ion spacing for the van der Waals estimate.
    #[serde(rename = "spacing_um")]
    pub spacing_um: Option<f64>,
}

impl TrapDoc {
    pub fn resolved(mut self) -> Result<Self, CliError> {
        self.species.get_or_insert_with(|| "ca40".into());
        positive("alpha_V_per_m2", *self.alpha.get_or_insert(1e9))?;
        positive("beta_V_per_m2", *self.beta.get_or_insert(1e7))?;
        positive("rf_frequency_MHz", *self.rf_mhz.get_or_insert(15.0))?;
        self.n.get_or_insert(50);
        positive("spacing_um", *self.spacing_um.get_or_insert(5.0))?;
        Ok(self)
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrystalDoc {
    pub n_ions: Option<usize>,
    pub species: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub species_file: Option<String>,
    /// Ordinary axial trap frequency; defaults to the reference trap.
    #[serde(rename = "axial_frequency_MHz")]
    pub axial_mhz: Option<f64>,
    #[serde(rename = "radial_frequency_MHz")]
    pub radial_mhz: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserDoc {
    #[serde(rename = "omega_s_MHz")]
    pub omega_s: f64,
    #[serde(rename = "omega_p_MHz")]
    pub omega_p: f64,
    /// Both detunings default to the values that isolate |n,p> in g1.
    #[serde(rename = "delta_s_MHz")]
    pub delta_s: Option<f64>,
    #[serde(rename = "delta_p_MHz")]
    pub delta_p: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DressDoc {
    pub frequency_convention: Option<FrequencyConvention>,
    #[serde(rename = "omega1_MHz")]
    pub omega1: Option<f64>,
    #[serde(rename = "omega2_MHz")]
    pub omega2: Option<f64>,
    #[serde(rename = "delta1_MHz")]
    pub delta1: Option<f64>,
    #[serde(rename = "delta2_MHz")]
    pub delta2: Option<f64>,
    /// Radial dipole elements in units of e a0.
    #[serde(rename = "d1_ea0")]
    pub d1: Option<f64>,
    #[serde(rename = "d2_ea0")]
    pub d2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laser: Option<LaserDoc>,
    /// Rydberg lifetime for scattering estimates.
    #[serde(rename = "lifetime_us", skip_serializing_if = "Option::is_none")]
    pub lifetime_us: Option<f64>,
}

impl DressDoc {
    pub fn resolved(mut self) -> Result<Self, CliError> {
        self.frequency_convention
            .get_or_insert_with(Default::default);
        let required = [
            ("omega1_MHz", self.omega1),
            ("omega2_MHz", self.omega2),
            ("delta1_MHz", self.delta1),
            ("delta2_MHz", self.delta2),
        ];
        for (name, v) in required {
            finite(
                name,
                v.ok_or_else(|| CliError::Validation(format!("missing {name}")))?,
            )?;
        }
        // Hydrogenic scale n^2 e a0 at n = 50.
        finite("d1_ea0", *self.d1.get_or_insert(2500.0))?;
        finite("d2_ea0", *self.d2.get_or_insert(2500.0))?;
        if let Some(laser) = &mut self.laser {
            finite("omega_s_MHz", laser.omega_s)?;
            finite("omega_p_MHz", laser.omega_p)?;
            // The special detunings scale linearly, so MHz in gives MHz out.
            let (ds, dp) = special_detunings(
                self.delta1.unwrap_or_default(),
                self.delta2.unwrap_or_default(),
                self.omega1.unwrap_or_default(),
            );
            finite("delta_s_MHz", *laser.delta_s.get_or_insert(ds))?;
            finite("delta_p_MHz", *laser.delta_p.get_or_insert(dp))?;
        }
        if let Some(l) = self.lifetime_us {
            positive("lifetime_us", l)?;
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferDoc {
    pub n_ions: Option<usize>,
    #[serde(rename = "bz_over_J")]
    pub bz: Option<f64>,
    #[serde(rename = "omega2_over_J")]
    pub omega2: Option<f64>,
    #[serde(rename = "t_max_hbar_per_J")]
    pub t_max: Option<f64>,
    #[serde(rename = "dt_hbar_per_J")]
    pub dt: Option<f64>,
    pub pair_convention: Option<rydberg_ions::spinchain::PairConvention>,
    pub coupling_sign: Option<f64>,
    pub invert_initial: Option<bool>,
}

impl TransferDoc {
    pub fn resolved(mut self) -> Result<Self, CliError> {
        self.n_ions.get_or_insert(10);
        finite("bz_over_J", *self.bz.get_or_insert(0.65))?;
        finite("omega2_over_J", *self.omega2.get_or_insert(0.01))?;
        positive("t_max_hbar_per_J", *self.t_max.get_or_insert(3.0))?;
        positive("dt_hbar_per_J", *self.dt.get_or_insert(0.005))?;
        self.pair_convention.get_or_insert_with(Default::default);
        let sign = *self.coupling_sign.get_or_insert(-1.0);
        if sign != 1.0 && sign != -1.0 {
            return Err(CliError::Validation(format!(
                "coupling_sign must be +1 or -1, got {sign}"
            )));
        }
        self.invert_initial.get_or_insert(false);
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeName {
    #[default]
    SinSquared,
    Constant,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateDoc {
    pub frequency_convention: Option<FrequencyConvention>,
    pub n_ions: Option<usize>,
    /// 1-based positions of the two ions in the chain.
    pub ions: Option<[usize; 2]>,
    #[serde(rename = "omega2_MHz")]
    pub omega2: Option<f64>,
    #[serde(rename = "delta2_MHz")]
    pub delta2: Option<[f64; 2]>,
    /// Coupling J; the exchange element is J / |u_m - u_n|^3.
    #[serde(rename = "coupling_MHz")]
    pub coupling: Option<f64>,
    #[serde(rename = "duration_us")]
    pub duration_us: Option<f64>,
    #[serde(rename = "peak_rabi_MHz")]
    pub peak_rabi: Option<f64>,
    pub envelope: Option<EnvelopeName>,
    /// Constant laser detuning; ignored when a ramp is given.
    #[serde(rename = "detuning_MHz")]
    pub detuning: Option<f64>,
    #[serde(rename = "detuning_ramp_MHz", skip_serializing_if = "Option::is_none")]
    pub detuning_ramp: Option<[f64; 2]>,
    pub tracking_steps: Option<usize>,
    pub tdse_steps: Option<usize>,
}

impl GateDoc {
    pub fn resolved(mut self) -> Result<Self, CliError> {
        let conv = *self
            .frequency_convention
            .get_or_insert_with(Default::default);
        self.n_ions.get_or_insert(10);
        self.ions.get_or_insert([1, 2]);
        let two_pi = match conv {
            FrequencyConvention::Ordinary => 1.0,
            FrequencyConvention::Angular => 2.0 * PI,
        };
        finite("omega2_MHz", *self.omega2.get_or_insert(57.5 * two_pi))?;
        let d2 = self
            .delta2
            .get_or_insert([-279.0 * two_pi, -667.0 * two_pi]);
        finite("delta2_MHz", d2[0] + d2[1])?;
        finite("coupling_MHz", *self.coupling.get_or_insert(500.0 * two_pi))?;
        let duration = positive("duration_us", *self.duration_us.get_or_insert(10.0))?;
        // T Omega_s = 100 by default.
        let peak = conv.rad_s_to_mhz(100.0 / (duration * 1e-6));
        finite("peak_rabi_MHz", *self.peak_rabi.get_or_insert(peak))?;
        self.envelope.get_or_insert_with(Default::default);
        finite("detuning_MHz", *self.detuning.get_or_insert(0.5 * two_pi))?;
        self.tracking_steps.get_or_insert(4000);
        self.tdse_steps.get_or_insert(4000);
        Ok(self)
    }
}
