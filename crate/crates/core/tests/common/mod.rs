#![allow(dead_code)]

use spingauge::lattice::{gauss_value, ChargeConfig, ConfigBasis, FullBasis, GaussConvention, LatticeSpec};
use spingauge::spinops::SpinRep;

/// Gauss-law states found by filtering every product state.
pub fn brute_force_sector(lattice: &LatticeSpec, l: u32, charges: &ChargeConfig) -> Vec<Vec<i32>> {
    let full = FullBasis::new(lattice, SpinRep::new(l).unwrap()).unwrap();
    let vertices: Vec<_> = lattice.vertices().collect();
    let mut out: Vec<Vec<i32>> = (0..full.dim())
        .map(|i| full.config(i))
        .filter(|c| {
            vertices.iter().all(|&v| {
                gauss_value(lattice, c, v, GaussConvention::Divergence).unwrap() == charges.charge(v)
            })
        })
        .collect();
    out.sort();
    out
}

pub fn sorted_states<B: ConfigBasis>(basis: &B) -> Vec<Vec<i32>> {
    let mut s: Vec<Vec<i32>> = (0..basis.dim()).map(|i| basis.config(i)).collect();
    s.sort();
    s
}

/// Every assignment of charges in `[−bound, bound]` to the lattice vertices.
pub fn all_charge_configs(lattice: &LatticeSpec, bound: i64) -> Vec<ChargeConfig> {
    let vertices: Vec<_> = lattice.vertices().collect();
    let width = (2 * bound + 1) as usize;
    let total = width.pow(vertices.len() as u32);
    (0..total)
        .map(|mut code| {
            ChargeConfig::from_pairs(vertices.iter().map(|&v| {
                let q = (code % width) as i64 - bound;
                code /= width;
                (v, q)
            }))
        })
        .collect()
}
