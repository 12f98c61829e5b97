//! Cold-atom parameters realising the effective link Hamiltonian.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ChargeConfig, LatticeSpec, Vertex};

/// Default bound on a ratio for "a ≪ b" to hold.
pub const DEFAULT_HIERARCHY_THRESHOLD: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomicInputs {
    pub lambda: f64,
    pub mu: f64,
    pub omega: f64,
    pub epsilon: f64,
    pub u0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkDetuning {
    pub link: usize,
    pub source: Vertex,
    pub direction: u8,
    pub plus: f64,
    pub minus: f64,
    pub zero: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HierarchyRatio {
    /// e.g. `"omega/lambda"`, the small scale over the large one.
    pub relation: String,
    pub ratio: f64,
    pub threshold: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomicParameters {
    pub inputs: AtomicInputs,
    /// Common value of `t₊ˢ = t₋ˢ = t₊ᵈ = t₋ᵈ`.
    pub t_pm: f64,
    pub t0_d: f64,
    pub t0_s: f64,
    pub delta: f64,
    pub z: f64,
    pub u2: f64,
    pub detunings: Vec<LinkDetuning>,
    pub hierarchy: Vec<HierarchyRatio>,
    pub hierarchy_satisfied: bool,
}

pub fn atomic_parameters(
    inputs: AtomicInputs,
    lattice: &LatticeSpec,
    charges: &ChargeConfig,
    threshold: f64,
) -> Result<AtomicParameters> {
    let AtomicInputs {
        lambda,
        mu,
        omega,
        epsilon,
        u0,
    } = inputs;
    for (name, v) in [("lambda", lambda), ("mu", mu), ("omega", omega), ("epsilon", epsilon), ("u0", u0)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!("{name} must be positive, got {v}")));
        }
    }
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::Domain(format!("hierarchy threshold must be positive, got {threshold}")));
    }
    if 24.0 * lambda <= 5.0 * epsilon {
        return Err(Error::Domain(format!(
            "imaginary tunneling: 24*lambda = {} <= 5*epsilon = {}",
            24.0 * lambda,
            5.0 * epsilon
        )));
    }
    charges.validate(lattice)?;

    let a = 24.0 * lambda - 5.0 * epsilon;
    let b = epsilon + 24.0 * lambda;
    let t_pm = 0.25 * (u0 * a * b / (6.0 * epsilon)).sqrt();
    let t0_d = omega * (3.0 * u0 * a / (2.0 * epsilon * b)).sqrt();
    let delta = -12.0 * lambda - epsilon;
    let z = 0.25 - 6.0 * lambda / epsilon;

    let detunings = lattice
        .links()
        .iter()
        .enumerate()
        .map(|(i, link)| {
            let q = (charges.charge(link.source) + charges.charge(lattice.link_target(i))) as f64;
            let base = delta / 2.0 + 2.0 * lambda + mu;
            LinkDetuning {
                link: i,
                source: link.source,
                direction: link.direction.number(),
                plus: base - 2.0 * lambda * q,
                minus: base + 2.0 * lambda * q,
                zero: 0.0,
            }
        })
        .collect();

    let hierarchy: Vec<HierarchyRatio> = [
        ("lambda^2/u0 / epsilon", lambda * lambda / u0 / epsilon),
        ("epsilon/omega", epsilon / omega),
        ("omega/lambda", omega / lambda),
        ("mu/lambda", mu / lambda),
        ("lambda/u0", lambda / u0),
    ]
    .into_iter()
    .map(|(relation, ratio)| HierarchyRatio {
        relation: relation.to_string(),
        ratio,
        threshold,
        satisfied: ratio <= threshold,
    })
    .collect();
    let hierarchy_satisfied = hierarchy.iter().all(|h| h.satisfied);

    Ok(AtomicParameters {
        inputs,
        t_pm,
        t0_d,
        t0_s: 0.0,
        delta,
        z,
        u2: z * u0,
        detunings,
        hierarchy,
        hierarchy_satisfied,
    })
}
