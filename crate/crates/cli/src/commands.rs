//! One function per subcommand. Each takes a resolved parameter document
//! and returns the JSON report printed on stdout.

use std::f64::consts::PI;

use rydberg_ions::crystal::{
    equilibrium_positions, length_scale, normal_modes, site_gradient_shifts, Axis,
};
use rydberg_ions::dressing::{
    dress_ground, dress_rydberg, ground_dipole, scattering_rate, FiveLevelConfig, MwConfig,
};
use rydberg_ions::dynamics::{transfer_experiment, TransferParams, TransferReport};
use rydberg_ions::gate::{
    chain_flip_flop, entanglement_phase, DetuningProfile, Envelope, GateConfig, GateOptions,
    GateReport, PulseProfile,
};
use rydberg_ions::physcore::{
    radial_elements, sp_splitting, MatrixElementModel, RydbergLevel, CODATA_2018,
};
use rydberg_ions::trap::{
    ionization_gradient, ionization_saddle, quadrupole_shift, rydberg_frequency_shifts,
    secular_frequencies, vdw_estimate, TrapConfig,
};
use serde_json::{json, Value};

use crate::config::{
    resolve_species, CrystalDoc, DressDoc, EnvelopeName, GateDoc, TransferDoc, TrapDoc,
};
use crate::error::CliError;
use crate::output::Artifacts;

const MHZ: f64 = 1e6;

fn two_pi_mhz(w: f64) -> f64 {
    w / (2.0 * PI * MHZ)
}

pub fn trap(doc: &TrapDoc) -> Result<Value, CliError> {
    let species = resolve_species(
        doc.species.as_deref().unwrap_or("ca40"),
        doc.species_file.as_deref(),
    )?;
    let trap = TrapConfig::new(
        doc.alpha.unwrap_or_default(),
        doc.beta.unwrap_or_default(),
        2.0 * PI * doc.rf_mhz.unwrap_or_default() * MHZ,
    )?;
    let n = doc.n.unwrap_or(50);
    let secular = secular_frequencies(&species, &trap)?;
    let saddle = ionization_saddle(trap.static_gradient);
    let beta_ion = ionization_gradient(n);

    let split = sp_splitting(&CODATA_2018, &species, n)?;
    let elements = radial_elements(&MatrixElementModel::Hydrogenic, n, n)?;
    let shifts = rydberg_frequency_shifts(&species, &trap, split, elements.d_sp)?;
    let spacing = doc.spacing_um.unwrap_or(5.0) * 1e-6;
    let vdw = vdw_estimate(split, elements.d_sp, spacing)?;
    let h = 2.0 * PI * CODATA_2018.hbar;

    let mut quadrupole = serde_json::Map::new();
    for (label, twice_j, twice_m) in [
        ("p1/2_m1/2", 1, 1),
        ("p3/2_m1/2", 3, 1),
        ("p3/2_m3/2", 3, 3),
    ] {
        let level = RydbergLevel::p(n, twice_j, twice_m)?;
        let shift = quadrupole_shift(&level, trap.static_gradient, elements.r2_p)?;
        quadrupole.insert(label.into(), json!({ "J": shift, "MHz": shift / h / MHZ }));
    }

    Ok(json!({
        "config": doc,
        "species": { "name": species.name, "mass_kg": species.mass },
        "secular": {
            "axial_rad_per_s": secular.axial,
            "radial_rad_per_s": secular.radial,
            "axial_MHz": two_pi_mhz(secular.axial),
            "radial_MHz": two_pi_mhz(secular.radial),
            "linear_chain": secular.supports_linear_chain(),
        },
        "ionization": {
            "n": n,
            "threshold_V_per_m2": beta_ion,
            "prefactor_V_per_m2": ionization_gradient(1),
            "below_threshold": trap.static_gradient < beta_ion,
            "saddle_z_m": saddle.z,
            "saddle_energy_J": saddle.energy,
        },
        "rydberg": {
            "sp_splitting_J": split,
            "sp_splitting_rad_per_s": split / CODATA_2018.hbar,
            "d_sp_m": elements.d_sp,
            "r2_p_m2": elements.r2_p,
            "axial_shift_relative": shifts.axial,
            "radial_shift_relative": shifts.radial,
            "shift_direction": shifts.direction,
            "quadrupole_shifts": quadrupole,
            "vdw_J": vdw,
            "vdw_kHz": vdw / h / 1e3,
            "lifetime_s": species.lifetime(n),
        },
    }))
}

pub fn crystal(doc: &CrystalDoc, out: &Artifacts) -> Result<Value, CliError> {
    let species = resolve_species(
        doc.species.as_deref().unwrap_or("ca40"),
        doc.species_file.as_deref(),
    )?;
    let n = doc
        .n_ions
        .ok_or_else(|| CliError::Validation("missing n_ions".into()))?;
    let wz = 2.0 * PI * MHZ * doc.axial_mhz.unwrap_or_default();
    let wr = 2.0 * PI * MHZ * doc.radial_mhz.unwrap_or_default();

    let zeta = length_scale(&species, wz)?;
    let geometry = equilibrium_positions(n)?.with_length_scale(zeta);
    let physical = geometry.physical_positions()?;
    let sums = geometry.neighbor_sums();
    let gradients = site_gradient_shifts(&geometry)?;

    let mut modes = serde_json::Map::new();
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        let m = normal_modes(&geometry, wz, wr, axis)?;
        let vectors: Vec<Vec<f64>> = (0..n).map(|k| m.mode(k)).collect();
        let mhz: Vec<f64> = m.frequencies.iter().map(|w| two_pi_mhz(*w)).collect();
        let name = serde_json::to_value(axis).map_err(|e| CliError::Io(e.to_string()))?;
        modes.insert(
            name.as_str().unwrap_or("axis").to_string(),
            json!({ "frequencies_MHz": mhz, "frequencies_rad_per_s": m.frequencies, "vectors": vectors }),
        );
    }

    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            vec![
                (i + 1) as f64,
                geometry.positions[i],
                physical[i] * 1e6,
                sums[i],
                gradients[i],
            ]
        })
        .collect();
    out.write_csv(
        "crystal.csv",
        doc,
        &[
            "ion",
            "u",
            "z_um",
            "neighbor_sum",
            "gradient_shift_V_per_m2",
        ]
        .map(String::from),
        &rows,
    )?;

    let report = json!({
        "config": doc,
        "length_scale_m": zeta,
        "positions": geometry.positions,
        "positions_m": physical,
        "residual": geometry.residual,
        "neighbor_sums": sums,
        "gradient_shifts_V_per_m2": gradients,
        "modes": modes,
    });
    out.write_json("crystal.json", &report)?;
    Ok(report)
}

pub fn dress(doc: &DressDoc, out: &Artifacts) -> Result<Value, CliError> {
    let conv = doc.frequency_convention.unwrap_or_default();
    let w = |mhz: Option<f64>| conv.mhz_to_rad_s(mhz.unwrap_or_default());
    let ea0 = CODATA_2018.elementary_charge * CODATA_2018.bohr_radius;
    let mw = MwConfig {
        omega1: w(doc.omega1),
        omega2: w(doc.omega2),
        delta1: w(doc.delta1),
        delta2: w(doc.delta2),
        d1: doc.d1.unwrap_or_default() * ea0,
        d2: doc.d2.unwrap_or_default() * ea0,
    };
    let dressed = dress_rydberg(&mw)?;
    let mut warnings = Vec::new();
    if !dressed.valid {
        warnings.push("MW elimination outside its validity range".to_string());
    }

    let mut report = json!({
        "config": doc,
        "rydberg": {
            "eta": dressed.eta,
            "shifted_detuning_MHz": conv.rad_s_to_mhz(dressed.shifted_detuning),
            "field_MHz": dressed.field.map(|f| conv.rad_s_to_mhz(f)),
            "admixed_level_energy_MHz": conv.rad_s_to_mhz(dressed.admixed_level_energy),
            "d1_sq_C2m2": dressed.d1_sq,
            "d2_sq_C2m2": dressed.d2_sq,
            "diagonal_dipole_Cm": dressed.diagonal_dipole_amplitude(),
            "transverse_dipole_Cm": dressed.transverse_dipole_amplitude(),
            "valid": dressed.valid,
        },
    });

    if let Some(laser) = &doc.laser {
        let cfg = FiveLevelConfig {
            mw,
            omega_s: conv.mhz_to_rad_s(laser.omega_s),
            omega_p: conv.mhz_to_rad_s(laser.omega_p),
            delta_s: conv.mhz_to_rad_s(laser.delta_s.unwrap_or_default()),
            delta_p: conv.mhz_to_rad_s(laser.delta_p.unwrap_or_default()),
        };
        let gd = dress_ground(&cfg)?;
        if !gd.perturbative {
            warnings.push("laser couplings are not small against the ground-Rydberg gaps".into());
        }
        let dipole = ground_dipole(&gd, dressed.d1_sq, dressed.d2_sq);
        let mut ground = json!({
            "delta_s_MHz": conv.rad_s_to_mhz(cfg.delta_s),
            "delta_p_MHz": conv.rad_s_to_mhz(cfg.delta_p),
            "g1": gd.g1,
            "g2": gd.g2,
            "gamma_s": gd.gamma_s,
            "gamma_p": gd.gamma_p,
            "decoupling_residual": gd.decoupling_residual,
            "perturbation_norm": gd.perturbation_norm,
            "perturbative": gd.perturbative,
            "diagonal_dipole_Cm": dipole.diagonal,
            "transverse_dipole_Cm": dipole.transverse,
        });
        if let Some(tau) = doc.lifetime_us {
            let gamma = 1.0 / (tau * 1e-6);
            let total = |a: [f64; 3]| a.iter().map(|c| c * c).sum::<f64>().sqrt();
            ground["scattering_rate_g1_per_s"] =
                json!(scattering_rate(total(gd.g1.as_array()), gamma)?);
            ground["scattering_rate_g2_per_s"] =
                json!(scattering_rate(total(gd.g2.as_array()), gamma)?);
        }
        report["ground"] = ground;
    }
    report["warnings"] = json!(warnings);
    out.write_json("dress.json", &report)?;
    Ok(report)
}

pub fn transfer_params(doc: &TransferDoc) -> TransferParams {
    let d = TransferParams::default();
    TransferParams {
        n_ions: doc.n_ions.unwrap_or(d.n_ions),
        bz: doc.bz.unwrap_or(d.bz),
        omega2: doc.omega2.unwrap_or(d.omega2),
        coupling_sign: doc.coupling_sign.unwrap_or(d.coupling_sign),
        convention: doc.pair_convention.unwrap_or(d.convention),
        t_max: doc.t_max.unwrap_or(d.t_max),
        dt: doc.dt.unwrap_or(d.dt),
        invert_initial: doc.invert_initial.unwrap_or(d.invert_initial),
    }
}

pub fn transfer(doc: &TransferDoc, out: &Artifacts) -> Result<(Value, TransferReport), CliError> {
    let report = transfer_experiment(&transfer_params(doc))?;
    let traj = &report.trajectory;
    let n = doc.n_ions.unwrap_or_default();

    let mut header = vec!["time_hbar_per_J".to_string()];
    header.extend((1..=n).map(|i| format!("sz_{i}")));
    let rows: Vec<Vec<f64>> = traj
        .times
        .iter()
        .zip(&traj.magnetization)
        .map(|(t, m)| std::iter::once(*t).chain(m.iter().copied()).collect())
        .collect();
    out.write_csv("transfer.csv", doc, &header, &rows)?;

    let summary = json!({
        "config": doc,
        "efficiency": report.efficiency,
        "transfer_time_hbar_per_J": report.transfer_time,
        "norm_drift": traj.norm_drift,
        "energy_drift": traj.energy_drift,
        "propagator": traj.propagator,
        "samples": traj.times.len(),
    });
    out.write_json("transfer.json", &summary)?;
    Ok((summary, report))
}

pub fn gate_config(doc: &GateDoc) -> Result<(GateConfig, GateOptions), CliError> {
    let conv = doc.frequency_convention.unwrap_or_default();
    let n = doc.n_ions.unwrap_or(10);
    let [a, b] = doc.ions.unwrap_or([1, 2]);
    if a == 0 || b == 0 || a > n || b > n {
        return Err(CliError::Validation(format!(
            "ions ({a}, {b}) are 1-based positions in a {n}-ion chain"
        )));
    }
    let geometry = equilibrium_positions(n)?;
    let w = |mhz: f64| conv.mhz_to_rad_s(mhz);
    let delta2 = doc.delta2.unwrap_or_default();
    let detuning = match doc.detuning_ramp {
        Some([start, end]) => DetuningProfile::LinearRamp {
            start: w(start),
            end: w(end),
        },
        None => DetuningProfile::Constant {
            value: w(doc.detuning.unwrap_or_default()),
        },
    };
    let cfg = GateConfig {
        ions: [a - 1, b - 1],
        omega2: w(doc.omega2.unwrap_or_default()),
        delta2: [w(delta2[0]), w(delta2[1])],
        flip_flop: chain_flip_flop(&geometry, a - 1, b - 1, w(doc.coupling.unwrap_or_default()))?,
        pulse: PulseProfile {
            duration: doc.duration_us.unwrap_or_default() * 1e-6,
            peak_rabi: w(doc.peak_rabi.unwrap_or_default()),
            envelope: match doc.envelope.unwrap_or_default() {
                EnvelopeName::SinSquared => Envelope::SinSquared,
                EnvelopeName::Constant => Envelope::Constant,
            },
            detuning,
        },
    };
    cfg.validate()?;
    let steps = |name: &str, v: Option<usize>| match v {
        Some(s) if s >= 2 => Ok(s),
        _ => Err(CliError::Validation(format!("{name} must be at least 2"))),
    };
    let options = GateOptions {
        tracking_steps: steps("tracking_steps", doc.tracking_steps)?,
        tdse_steps: steps("tdse_steps", doc.tdse_steps)?,
    };
    Ok((cfg, options))
}

pub fn gate(doc: &GateDoc, out: &Artifacts) -> Result<(Value, GateReport), CliError> {
    let conv = doc.frequency_convention.unwrap_or_default();
    let (cfg, options) = gate_config(doc)?;
    let report = entanglement_phase(&cfg, options)?;

    let mhz = |w: f64| conv.rad_s_to_mhz(w);
    let header = [
        "t_us",
        "omega_s_MHz",
        "delta_s_MHz",
        "eps_g1g1_MHz",
        "eps_g1g2_MHz",
        "eps_g2g1_MHz",
        "phi_ent_rad",
    ]
    .map(String::from);
    let rows: Vec<Vec<f64>> = (0..report.times.len())
        .map(|k| {
            vec![
                report.times[k] * 1e6,
                mhz(report.rabi[k]),
                mhz(report.detuning[k]),
                mhz(report.energies[0][k]),
                mhz(report.energies[1][k]),
                mhz(report.energies[2][k]),
                report.phase[k],
            ]
        })
        .collect();
    out.write_csv("gate.csv", doc, &header, &rows)?;

    let summary = json!({
        "config": doc,
        "flip_flop_MHz": mhz(cfg.flip_flop),
        "entanglement_phase_rad": report.final_phase,
        "evolution_phase_rad": report.evolution_phase,
        "phase_discrepancy_rad": report.phase_discrepancy,
        "max_leakage": report.max_leakage(),
        "blocks": report.blocks,
    });
    out.write_json("gate.json", &summary)?;
    Ok((summary, report))
}

/// A reproduction check: name, pass flag and a human-readable detail.
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn within_rel(value: f64, target: f64, tol: f64) -> bool {
    ((value - target) / target).abs() <= tol
}

fn within_factor(value: f64, target: f64, factor: f64) -> bool {
    value / target <= factor && target / value <= factor
}

pub fn reproduce_fig5(out: &Artifacts) -> Result<Vec<Check>, CliError> {
    let doc = TransferDoc::default().resolved()?;
    let (_, report) = transfer(&doc, out)?;
    Ok(vec![
        Check {
            name: "transfer efficiency",
            pass: (report.efficiency - 0.89).abs() <= 0.03,
            detail: format!("{:.4} (target 0.89 +- 0.03)", report.efficiency),
        },
        Check {
            name: "transfer time",
            pass: (report.transfer_time - 1.8).abs() <= 0.15,
            detail: format!("{:.4} hbar/J (target 1.8 +- 0.15)", report.transfer_time),
        },
    ])
}

pub fn reproduce_trapfreqs(out: &Artifacts) -> Result<Vec<Check>, CliError> {
    let doc = TrapDoc::default().resolved()?;
    let report = trap(&doc)?;
    out.write_json("trap.json", &report)?;
    let num = |path: &str| {
        report
            .pointer(path)
            .and_then(Value::as_f64)
            .unwrap_or(f64::NAN)
    };
    let (z, r) = (num("/secular/axial_MHz"), num("/secular/radial_MHz"));
    let prefactor = num("/ionization/prefactor_V_per_m2");
    let beta50 = num("/ionization/threshold_V_per_m2");
    let (dz, dr) = (
        num("/rydberg/axial_shift_relative"),
        num("/rydberg/radial_shift_relative"),
    );
    Ok(vec![
        Check {
            name: "secular frequencies",
            pass: within_rel(z, 1.56, 0.01) && within_rel(r, 5.64, 0.01),
            detail: format!("w_z = 2pi {z:.4} MHz, w_rho = 2pi {r:.4} MHz (1%)"),
        },
        Check {
            name: "ionization threshold",
            pass: within_rel(prefactor, 1.44e21, 0.01) && within_rel(beta50, 9.2e10, 0.02),
            detail: format!("prefactor {prefactor:.4e} V/m^2, n = 50 threshold {beta50:.4e} V/m^2"),
        },
        Check {
            name: "Rydberg trap-frequency shifts",
            pass: within_factor(dr, 3.5e-2, 2.0) && within_factor(dz, 7.4e-4, 2.0),
            detail: format!("dw_rho/w_rho = {dr:.4e}, dw_z/w_z = {dz:.4e} (factor 2)"),
        },
    ])
}

/// Resolve the crystal document against the reference trap of its species.
pub fn crystal_defaults(mut doc: CrystalDoc) -> Result<CrystalDoc, CliError> {
    let species = resolve_species(
        doc.species.get_or_insert_with(|| "ca40".into()),
        doc.species_file.as_deref(),
    )?;
    if doc.axial_mhz.is_none() || doc.radial_mhz.is_none() {
        let f = secular_frequencies(&species, &TrapConfig::reference())?;
        doc.axial_mhz.get_or_insert(two_pi_mhz(f.axial));
        doc.radial_mhz.get_or_insert(two_pi_mhz(f.radial));
    }
    for (name, v) in [
        ("axial_frequency_MHz", doc.axial_mhz),
        ("radial_frequency_MHz", doc.radial_mhz),
    ] {
        if !v.is_some_and(|v| v.is_finite() && v > 0.0) {
            return Err(CliError::Validation(format!("{name} must be positive")));
        }
    }
    Ok(doc)
}
