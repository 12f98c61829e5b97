//! Superlattice optical potential and classification of its minima.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{Error, Result};

/// Minimum grid resolution per period and axis.
pub const MIN_POINTS_PER_PERIOD: usize = 64;

/// Depths closer than this fraction of `V0` fall in the same class.
pub const DEPTH_CLUSTER_FRACTION: f64 = 0.01;

// (a, phase) with factor cos²(a·k·x + phase); sin² is cos² shifted by π/2.
const TERMS: [[(f64, f64); 2]; 5] = [
    [(2.0, 0.0), (2.0, 0.0)],
    [(1.0, 0.0), (2.0, 0.0)],
    [(2.0, 0.0), (1.0, 0.0)],
    [(0.5, -FRAC_PI_4), (0.5, -FRAC_PI_4)],
    [(0.5, -FRAC_PI_4 - PI / 2.0), (0.5, -FRAC_PI_4 - PI / 2.0)],
];

fn factor(a: f64, phase: f64, k: f64, x: f64) -> (f64, f64) {
    let arg = a * k * x + phase;
    let c = arg.cos();
    (c * c, -a * k * (2.0 * arg).sin())
}

fn value_and_gradient(x: f64, y: f64, v0: f64, k: f64) -> (f64, [f64; 2]) {
    let mut v = 0.0;
    let mut g = [0.0; 2];
    for [(ax, px), (ay, py)] in TERMS {
        let (fx, dfx) = factor(ax, px, k, x);
        let (fy, dfy) = factor(ay, py, k, y);
        v += fx * fy;
        g[0] += dfx * fy;
        g[1] += fx * dfy;
    }
    (-v0 * v, [-v0 * g[0], -v0 * g[1]])
}

/// `V(x, y) = −V0·[cos²(2kx)cos²(2ky) + cos²(kx)cos²(2ky) + cos²(2kx)cos²(ky)
/// + cos²(kx/2 − π/4)cos²(ky/2 − π/4) + sin²(kx/2 − π/4)sin²(ky/2 − π/4)]`.
pub fn optical_potential(x: f64, y: f64, v0: f64, k: f64) -> f64 {
    value_and_gradient(x, y, v0, k).0
}

/// Spatial period along either axis.
pub fn potential_period(k: f64) -> f64 {
    2.0 * PI / k
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthClass {
    /// `V/V0` at the minima of this class.
    pub depth: f64,
    /// Minima per unit cell of side [`potential_period`].
    pub count: usize,
    /// Positions in units of `π/k`, wrapped into `[0, 2)`.
    pub sites: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimaReport {
    pub v0: f64,
    pub k: f64,
    pub points_per_period: usize,
    /// Deepest first.
    pub classes: Vec<DepthClass>,
    /// Deepest class is exactly the lattice `(π/k)·ℤ²`.
    pub deepest_on_link_sites: bool,
}

fn refine(mut p: [f64; 2], v0: f64, k: f64) -> [f64; 2] {
    let h = 1e-6 / k;
    for _ in 0..100 {
        let (v, g) = value_and_gradient(p[0], p[1], v0, k);
        if g[0].hypot(g[1]) <= 1e-13 * v0 * k {
            break;
        }
        // Newton step from a finite-difference Hessian, gradient step otherwise
        let gx = |q: [f64; 2]| value_and_gradient(q[0], q[1], v0, k).1;
        let (gxp, gxm) = (gx([p[0] + h, p[1]]), gx([p[0] - h, p[1]]));
        let (gyp, gym) = (gx([p[0], p[1] + h]), gx([p[0], p[1] - h]));
        let hxx = (gxp[0] - gxm[0]) / (2.0 * h);
        let hyy = (gyp[1] - gym[1]) / (2.0 * h);
        let hxy = 0.5 * ((gxp[1] - gxm[1]) + (gyp[0] - gym[0])) / (2.0 * h);
        let det = hxx * hyy - hxy * hxy;
        let mut step = if hxx > 0.0 && det > 0.0 {
            [-(hyy * g[0] - hxy * g[1]) / det, -(hxx * g[1] - hxy * g[0]) / det]
        } else {
            let scale = 0.1 / (v0 * k * k);
            [-scale * g[0], -scale * g[1]]
        };
        let limit = 0.25 / k;
        let len = step[0].hypot(step[1]);
        if len > limit {
            step = [step[0] * limit / len, step[1] * limit / len];
        }
        let mut t = 1.0;
        loop {
            let q = [p[0] + t * step[0], p[1] + t * step[1]];
            if optical_potential(q[0], q[1], v0, k) <= v || t < 1e-12 {
                p = q;
                break;
            }
            t *= 0.5;
        }
    }
    p
}

fn wrap(x: f64, period: f64) -> f64 {
    let w = x.rem_euclid(period);
    if period - w < 1e-9 * period {
        0.0
    } else {
        w
    }
}

fn periodic_distance(a: [f64; 2], b: [f64; 2], period: f64) -> f64 {
    let d = |u: f64, v: f64| {
        let r = (u - v).rem_euclid(period);
        r.min(period - r)
    };
    d(a[0], b[0]).hypot(d(a[1], b[1]))
}

/// Finds all minima of one unit cell by grid search plus local refinement
/// and groups them by depth.
pub fn classify_minima(v0: f64, k: f64, points_per_period: usize) -> Result<MinimaReport> {
    if !(v0.is_finite() && v0 > 0.0 && k.is_finite() && k > 0.0) {
        return Err(Error::Domain(format!("V0 and k must be positive, got V0={v0}, k={k}")));
    }
    if points_per_period < MIN_POINTS_PER_PERIOD {
        return Err(Error::Domain(format!(
            "grid needs at least {MIN_POINTS_PER_PERIOD} points per period, got {points_per_period}"
        )));
    }
    let n = points_per_period;
    let period = potential_period(k);
    let step = period / n as f64;
    let grid: Vec<f64> = (0..n * n)
        .map(|idx| optical_potential((idx / n) as f64 * step, (idx % n) as f64 * step, v0, k))
        .collect();
    let at = |i: isize, j: isize| grid[(i.rem_euclid(n as isize) as usize) * n + j.rem_euclid(n as isize) as usize];

    let mut found: Vec<([f64; 2], f64)> = Vec::new();
    for i in 0..n as isize {
        for j in 0..n as isize {
            let v = at(i, j);
            let is_min = (-1..=1)
                .flat_map(|di| (-1..=1).map(move |dj| (di, dj)))
                .filter(|&d| d != (0, 0))
                .all(|(di, dj)| v <= at(i + di, j + dj));
            if !is_min {
                continue;
            }
            let p = refine([i as f64 * step, j as f64 * step], v0, k);
            let p = [wrap(p[0], period), wrap(p[1], period)];
            if found.iter().all(|(q, _)| periodic_distance(p, *q, period) > 1e-6 * period) {
                found.push((p, optical_potential(p[0], p[1], v0, k)));
            }
        }
    }

    found.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0[0].total_cmp(&b.0[0])).then(a.0[1].total_cmp(&b.0[1])));
    let mut classes: Vec<DepthClass> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (p, v) in found {
        if classes.is_empty() || v - last > DEPTH_CLUSTER_FRACTION * v0 {
            classes.push(DepthClass {
                depth: v / v0,
                count: 0,
                sites: Vec::new(),
            });
        }
        last = v;
        let class = classes.last_mut().expect("pushed above");
        class.count += 1;
        class.sites.push([p[0] * k / PI, p[1] * k / PI]);
    }

    let on_lattice = |u: f64| (u - u.round()).abs() < 1e-6;
    let deepest_on_link_sites = classes.first().is_some_and(|c| {
        c.count == 4 && c.sites.iter().all(|s| on_lattice(s[0]) && on_lattice(s[1]))
    });
    Ok(MinimaReport {
        v0,
        k,
        points_per_period,
        classes,
        deepest_on_link_sites,
    })
}
