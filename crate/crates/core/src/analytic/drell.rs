//! Weak-coupling single-plaquette references.
//!
//! The tight-binding ground state of the charged plaquette has m-basis
//! amplitudes `a_m = exp(−g²(m − 3/4)²)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative size of the first amplitude left out of a [`DrellState`].
pub const WINDOW_CUTOFF: f64 = 1e-18;

const CENTRE: f64 = 0.75;

fn check_coupling(g: f64) -> Result<()> {
    if g.is_finite() && g > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("coupling must be positive and finite, got {g}")))
    }
}

/// `⟨E1⟩ = 3/4 + (π/g⁴)·((π² − 4)/2)·exp(−π²/(2g²))`.
pub fn drell_e1(g: f64) -> Result<f64> {
    check_coupling(g)?;
    let g2 = g * g;
    Ok(CENTRE + PI / (g2 * g2) * ((PI * PI - 4.0) / 2.0) * (-PI * PI / (2.0 * g2)).exp())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrellState {
    g: f64,
    window: i64,
    amplitudes: Vec<f64>,
}

impl DrellState {
    /// Smallest symmetric window `[−M, M]` whose first excluded amplitude is
    /// below [`WINDOW_CUTOFF`] of the peak.
    pub fn new(g: f64) -> Result<Self> {
        check_coupling(g)?;
        // nearest excluded level is m = M + 1, at distance M + 1/4 from the centre
        let reach = (-WINDOW_CUTOFF.ln()).sqrt() / g;
        let window = (reach - 0.25).ceil().max(1.0) as i64;
        Self::with_window(g, window)
    }

    pub fn with_window(g: f64, window: i64) -> Result<Self> {
        check_coupling(g)?;
        if window < 1 {
            return Err(Error::Domain(format!("window must be at least 1, got {window}")));
        }
        let amplitudes = (-window..=window)
            .map(|m| (-g * g * (m as f64 - CENTRE).powi(2)).exp())
            .collect();
        Ok(Self { g, window, amplitudes })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn amplitude(&self, m: i64) -> f64 {
        if m.abs() > self.window {
            0.0
        } else {
            self.amplitudes[(m + self.window) as usize]
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    /// Weight inside `m ∈ [lo, hi]`, normalised.
    pub fn weight(&self, lo: i64, hi: i64) -> f64 {
        let inside: f64 = (lo.max(-self.window)..=hi.min(self.window))
            .map(|m| self.amplitude(m).powi(2))
            .sum();
        inside / self.norm_squared()
    }
}

/// `P_l(g)`: weight of the weak-coupling state in `m ∈ [−l+1, l]`.
pub fn truncation_probability(l: u32, g: f64) -> Result<f64> {
    if l == 0 {
        return Err(Error::Domain("l must be at least 1".into()));
    }
    let state = DrellState::new(g)?;
    let state = if state.window() < l as i64 {
        DrellState::with_window(g, l as i64)?
    } else {
        state
    };
    Ok(state.weight(1 - l as i64, l as i64))
}
