//! Lattice geometry, static charges, Gauss-law generators and the
//! enumeration of gauge-invariant sectors.
//!
//! # Conventions
//!
//! Vertices are `(n1, n2)` with `0 ≤ n1 < N1`, `0 ≤ n2 < N2`. Link `(n, k)`
//! leaves `n` in direction `k̂` and ends at `n + k̂`. Links are ordered
//! lexicographically in `(n2, n1, k)`, so the single plaquette's links come
//! out as bottom, left, right, top.
//!
//! The divergence generator is
//! `G_v = Σ_k L_z(v, k) − Σ_k L_z(v − k̂, k)`, outgoing minus incoming.
//! With this convention the charged single-plaquette family
//! `|m, m−1, 1−m, 1−m⟩` (bottom link, then counter-clockwise) lies in the
//! sector with `+1` at the lower-left vertex `(0, 0)` and `−1` at the
//! lower-right vertex `(1, 0)`.
//!
//! The all-plus generator `G_v = Σ` of `L_z` on every incident link is the
//! form used by the effective cold-atom Hamiltonians; the staggered sign map
//! turns one into the other.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::{BasisTag, SparseOperator};
use crate::spinops::SpinRep;

/// Largest product space, in bits, that may be enumerated.
pub const ENUMERATION_LIMIT_BITS: f64 = 34.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    One,
    Two,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::One, Direction::Two];

    pub fn number(self) -> u8 {
        match self {
            Direction::One => 1,
            Direction::Two => 2,
        }
    }
}

/// Lattice vertex `(n1, n2)`. Ordered by `(n2, n1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub n1: usize,
    pub n2: usize,
}

impl Vertex {
    pub fn new(n1: usize, n2: usize) -> Self {
        Self { n1, n2 }
    }

    /// `(−1)^{n1+n2}`.
    pub fn parity(&self) -> i32 {
        if (self.n1 + self.n2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n2, self.n1).cmp(&(other.n2, other.n1))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n1, self.n2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Link {
    pub source: Vertex,
    pub direction: Direction,
}

/// Elementary square, links listed counter-clockwise from the bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Plaquette {
    pub origin: Vertex,
    pub bottom: usize,
    pub right: usize,
    pub top: usize,
    pub left: usize,
}

impl Plaquette {
    /// `(link, raise)` pattern of the oriented plaquette operator
    /// `L+(bottom) L+(right) L−(top) L−(left)`.
    pub fn oriented(&self) -> [(usize, bool); 4] {
        [
            (self.bottom, true),
            (self.right, true),
            (self.top, false),
            (self.left, false),
        ]
    }

    /// Horizontal/vertical link pairs sharing a corner of this plaquette.
    pub fn corner_pairs(&self) -> [(usize, usize); 4] {
        [
            (self.bottom, self.left),
            (self.bottom, self.right),
            (self.top, self.left),
            (self.top, self.right),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussConvention {
    /// Outgoing minus incoming links.
    Divergence,
    /// Plain sum over incident links.
    AllPlus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    n1: usize,
    n2: usize,
    boundary: Boundary,
    links: Vec<Link>,
    link_index: HashMap<(Vertex, Direction), usize>,
}

impl LatticeSpec {
    pub fn new(n1: usize, n2: usize, boundary: Boundary) -> Result<Self> {
        let min = match boundary {
            Boundary::Open => 1,
            Boundary::Periodic => 2,
        };
        if n1 < min || n2 < min {
            return Err(Error::Domain(format!(
                "{boundary:?} lattice needs at least {min} vertices per direction, got {n1}x{n2}"
            )));
        }
        let mut lattice = Self {
            n1,
            n2,
            boundary,
            links: Vec::new(),
            link_index: HashMap::new(),
        };
        for n2i in 0..n2 {
            for n1i in 0..n1 {
                let v = Vertex::new(n1i, n2i);
                for dir in Direction::BOTH {
                    if lattice.step(v, dir, true).is_some() {
                        lattice.link_index.insert((v, dir), lattice.links.len());
                        lattice.links.push(Link {
                            source: v,
                            direction: dir,
                        });
                    }
                }
            }
        }
        Ok(lattice)
    }

    /// The open 2×2-vertex lattice with one plaquette and four links.
    pub fn single_plaquette() -> Self {
        Self::new(2, 2, Boundary::Open).expect("2x2 open lattice is valid")
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn num_links(&self) -> usize {
        self.links.len()
    }

    pub fn describe(&self) -> String {
        let b = match self.boundary {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        };
        format!("{}x{}-{b}", self.n1, self.n2)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n2).flat_map(move |b| (0..self.n1).map(move |a| Vertex::new(a, b)))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.n1 < self.n1 && v.n2 < self.n2
    }

    /// Neighbour of `v` one step along (`forward`) or against `dir`.
    pub fn step(&self, v: Vertex, dir: Direction, forward: bool) -> Option<Vertex> {
        let (coord, size) = match dir {
            Direction::One => (v.n1, self.n1),
            Direction::Two => (v.n2, self.n2),
        };
        let next = match (forward, self.boundary) {
            (true, Boundary::Open) => (coord + 1 < size).then_some(coord + 1),
            (false, Boundary::Open) => coord.checked_sub(1),
            (true, Boundary::Periodic) => Some((coord + 1) % size),
            (false, Boundary::Periodic) => Some((coord + size - 1) % size),
        }?;
        Some(match dir {
            Direction::One => Vertex::new(next, v.n2),
            Direction::Two => Vertex::new(v.n1, next),
        })
    }

    pub fn link_at(&self, v: Vertex, dir: Direction) -> Option<usize> {
        self.link_index.get(&(v, dir)).copied()
    }

    pub fn link_target(&self, link: usize) -> Vertex {
        let l = self.links[link];
        self.step(l.source, l.direction, true)
            .expect("every stored link has a target")
    }

    /// Links incident on `v` with their divergence sign (+1 outgoing,
    /// −1 incoming). Missing links on open boundaries are simply absent.
    pub fn incidence(&self, v: Vertex) -> Result<Vec<(usize, i32)>> {
        if !self.contains(v) {
            return Err(Error::Domain(format!(
                "vertex {v} not in {} lattice",
                self.describe()
            )));
        }
        let mut out = Vec::with_capacity(4);
        for dir in Direction::BOTH {
            if let Some(l) = self.link_at(v, dir) {
                out.push((l, 1));
            }
            if let Some(prev) = self.step(v, dir, false) {
                if let Some(l) = self.link_at(prev, dir) {
                    out.push((l, -1));
                }
            }
        }
        Ok(out)
    }

    pub fn plaquettes(&self) -> Vec<Plaquette> {
        let mut out = Vec::new();
        for v in self.vertices() {
            let (Some(east), Some(north)) = (
                self.step(v, Direction::One, true),
                self.step(v, Direction::Two, true),
            ) else {
                continue;
            };
            let links = (
                self.link_at(v, Direction::One),
                self.link_at(east, Direction::Two),
                self.link_at(north, Direction::One),
                self.link_at(v, Direction::Two),
            );
            if let (Some(bottom), Some(right), Some(top), Some(left)) = links {
                out.push(Plaquette {
                    origin: v,
                    bottom,
                    right,
                    top,
                    left,
                });
            }
        }
        out
    }

    /// Unordered (horizontal, vertical) link pairs sharing both a vertex and
    /// a plaquette, in first-seen plaquette order.
    pub fn diagonal_pairs(&self) -> Vec<(usize, usize)> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for p in self.plaquettes() {
            for pair in p.corner_pairs() {
                if seen.insert(pair) {
                    out.push(pair);
                }
            }
        }
        out
    }

    /// `(−1)^{n1+n2}` of every link's source vertex.
    pub fn link_parities(&self) -> Vec<i32> {
        self.links.iter().map(|l| l.source.parity()).collect()
    }

    fn check_capacity(&self, rep: SpinRep, what: &str) -> Result<()> {
        let needed = self.num_links() as f64 * (rep.dim() as f64).log2();
        if needed > ENUMERATION_LIMIT_BITS {
            return Err(Error::Capacity {
                what: format!("{what} on {} lattice at l={}", self.describe(), rep.l()),
                needed,
                limit: ENUMERATION_LIMIT_BITS,
            });
        }
        Ok(())
    }
}

/// Static charge per vertex; absent vertices carry zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ChargeConfig {
    charges: BTreeMap<Vertex, i64>,
}

impl ChargeConfig {
    pub fn neutral() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, i64)>) -> Self {
        let mut c = Self::default();
        for (v, q) in pairs {
            c.set(v, q);
        }
        c
    }

    /// `+1` at `(0,0)` and `−1` at `(1,0)`: the charged single plaquette in
    /// the divergence convention.
    pub fn charged_plaquette() -> Self {
        Self::from_pairs([(Vertex::new(0, 0), 1), (Vertex::new(1, 0), -1)])
    }

    pub fn set(&mut self, v: Vertex, q: i64) {
        if q == 0 {
            self.charges.remove(&v);
        } else {
            self.charges.insert(v, q);
        }
    }

    pub fn charge(&self, v: Vertex) -> i64 {
        self.charges.get(&v).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.charges.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        self.charges.iter().map(|(v, q)| (*v, *q))
    }

    /// Checks every charged vertex exists and, for periodic lattices, that
    /// the total charge vanishes.
    pub fn validate(&self, lattice: &LatticeSpec) -> Result<()> {
        if let Some((v, _)) = self.iter().find(|(v, _)| !lattice.contains(*v)) {
            return Err(Error::Domain(format!(
                "charge at vertex {v} outside {} lattice",
                lattice.describe()
            )));
        }
        if lattice.boundary() == Boundary::Periodic && self.total() != 0 {
            return Err(Error::Domain(format!(
                "periodic lattice requires zero total charge, got {}",
                self.total()
            )));
        }
        Ok(())
    }

    /// `Q_n = (−1)^{n1+n2} q_n`; an involution.
    pub fn staggered(&self) -> Self {
        Self::from_pairs(self.iter().map(|(v, q)| (v, v.parity() as i64 * q)))
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.iter().map(|(v, q)| format!("{v}:{q}")).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Gauss generator eigenvalue of a product state at `v`.
pub fn gauss_value(
    lattice: &LatticeSpec,
    config: &[i32],
    v: Vertex,
    convention: GaussConvention,
) -> Result<i64> {
    Ok(lattice
        .incidence(v)?
        .into_iter()
        .map(|(link, sign)| {
            let m = config[link] as i64;
            match convention {
                GaussConvention::Divergence => sign as i64 * m,
                GaussConvention::AllPlus => m,
            }
        })
        .sum())
}

/// A basis of link-configuration product states.
pub trait ConfigBasis {
    fn lattice(&self) -> &LatticeSpec;
    fn rep(&self) -> SpinRep;
    fn dim(&self) -> usize;
    /// `m` value per link of basis state `index`.
    fn config(&self, index: usize) -> Vec<i32>;
    fn index_of(&self, config: &[i32]) -> Option<usize>;
    fn tag(&self) -> BasisTag;
}

/// The full `(2l+1)^{#links}` product basis, lexicographic in the link
/// tuple (link 0 most significant).
#[derive(Clone, Debug)]
pub struct FullBasis {
    lattice: LatticeSpec,
    rep: SpinRep,
    dim: usize,
}

impl FullBasis {
    pub fn new(lattice: &LatticeSpec, rep: SpinRep) -> Result<Self> {
        lattice.check_capacity(rep, "full product basis")?;
        let dim = rep.dim().pow(lattice.num_links() as u32);
        Ok(Self {
            lattice: lattice.clone(),
            rep,
            dim,
        })
    }
}

impl ConfigBasis for FullBasis {
    fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    fn rep(&self) -> SpinRep {
        self.rep
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn config(&self, index: usize) -> Vec<i32> {
        let d = self.rep.dim();
        let mut cfg = vec![0; self.lattice.num_links()];
        let mut rest = index;
        for slot in cfg.iter_mut().rev() {
            *slot = self.rep.m_of(rest % d);
            rest /= d;
        }
        cfg
    }

    fn index_of(&self, config: &[i32]) -> Option<usize> {
        if config.len() != self.lattice.num_links() {
            return None;
        }
        let d = self.rep.dim();
        config
            .iter()
            .try_fold(0usize, |acc, &m| Some(acc * d + self.rep.index_of(m)?))
    }

    fn tag(&self) -> BasisTag {
        BasisTag::Full {
            lattice: self.lattice.describe(),
            l: self.rep.l(),
        }
    }
}

/// Product states obeying Gauss's law (divergence convention) for a fixed
/// static-charge configuration.
#[derive(Clone, Debug)]
pub struct GaugeSector {
    lattice: LatticeSpec,
    rep: SpinRep,
    charges: ChargeConfig,
    states: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
}

impl GaugeSector {
    pub fn charges(&self) -> &ChargeConfig {
        &self.charges
    }

    pub fn states(&self) -> &[Vec<i32>] {
        &self.states
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn descriptor(&self) -> String {
        format!(
            "{} l={} q={}",
            self.lattice.describe(),
            self.rep.l(),
            self.charges.describe()
        )
    }
}

impl ConfigBasis for GaugeSector {
    fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    fn rep(&self) -> SpinRep {
        self.rep
    }

    fn dim(&self) -> usize {
        self.states.len()
    }

    fn config(&self, index: usize) -> Vec<i32> {
        self.states[index].clone()
    }

    fn index_of(&self, config: &[i32]) -> Option<usize> {
        self.index.get(config).copied()
    }

    fn tag(&self) -> BasisTag {
        BasisTag::Sector {
            descriptor: self.descriptor(),
        }
    }
}

/// Enumerates the gauge sector by depth-first assignment in link order.
///
/// Every vertex is checked as soon as its last incident link is assigned;
/// that link's value is then forced by the vertex constraint rather than
/// scanned.
pub fn enumerate_gauge_sector(
    lattice: &LatticeSpec,
    rep: SpinRep,
    charges: &ChargeConfig,
) -> Result<GaugeSector> {
    lattice.check_capacity(rep, "gauge sector enumeration")?;
    charges.validate(lattice)?;

    // For each link, the vertices whose last incident link it is.
    let mut closing: Vec<Vec<(Vertex, Vec<(usize, i32)>)>> = vec![Vec::new(); lattice.num_links()];
    for v in lattice.vertices() {
        let inc = lattice.incidence(v)?;
        match inc.iter().map(|(l, _)| *l).max() {
            Some(last) => closing[last].push((v, inc)),
            None if charges.charge(v) != 0 => {
                // isolated charged vertex: no state can satisfy it
                return Ok(empty_sector(lattice, rep, charges));
            }
            None => {}
        }
    }

    let mut states = Vec::new();
    let mut config = vec![0i32; lattice.num_links()];
    let l = rep.l() as i32;

    // Candidate values for link `i` given links `0..i` are fixed.
    let candidates = |i: usize, config: &[i32]| -> Vec<i32> {
        let mut forced: Option<i32> = None;
        for (v, inc) in &closing[i] {
            let mut partial = 0i64;
            let mut own = 0i32;
            for &(link, sign) in inc {
                if link == i {
                    own += sign;
                } else {
                    partial += sign as i64 * config[link] as i64;
                }
            }
            let need = charges.charge(*v) - partial;
            // own is ±1, or 0/±2 when a periodic link touches v twice
            let value = match own {
                0 => {
                    if need != 0 {
                        return Vec::new();
                    }
                    continue;
                }
                s if need % s as i64 != 0 => return Vec::new(),
                s => need / s as i64,
            };
            if value.abs() > l as i64 {
                return Vec::new();
            }
            match forced {
                Some(f) if f as i64 != value => return Vec::new(),
                _ => forced = Some(value as i32),
            }
        }
        match forced {
            Some(f) => vec![f],
            None => (-l..=l).collect(),
        }
    };

    if lattice.num_links() == 0 {
        return Ok(empty_sector(lattice, rep, charges));
    }
    let mut frames: Vec<(Vec<i32>, usize)> = vec![(candidates(0, &config), 0)];
    while !frames.is_empty() {
        let depth = frames.len() - 1;
        let (cands, pos) = &mut frames[depth];
        if *pos >= cands.len() {
            frames.pop();
            continue;
        }
        config[depth] = cands[*pos];
        *pos += 1;
        if depth + 1 == lattice.num_links() {
            states.push(config.clone());
        } else {
            let next = candidates(depth + 1, &config);
            frames.push((next, 0));
        }
    }

    let index = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(GaugeSector {
        lattice: lattice.clone(),
        rep,
        charges: charges.clone(),
        states,
        index,
    })
}

fn empty_sector(lattice: &LatticeSpec, rep: SpinRep, charges: &ChargeConfig) -> GaugeSector {
    GaugeSector {
        lattice: lattice.clone(),
        rep,
        charges: charges.clone(),
        states: Vec::new(),
        index: HashMap::new(),
    }
}

/// Gauss generator at `v` as a diagonal operator on `basis`.
pub fn gauss_generator_in<T: Scalar, B: ConfigBasis>(
    basis: &B,
    v: Vertex,
    convention: GaussConvention,
) -> Result<SparseOperator<T>> {
    let lattice = basis.lattice();
    lattice.incidence(v)?;
    let diag = (0..basis.dim())
        .map(|i| gauss_value(lattice, &basis.config(i), v, convention).map(T::from_i64))
        .collect::<Result<Vec<T>>>()?;
    Ok(SparseOperator::from_diagonal(basis.tag(), diag))
}

/// Gauss generator at `v` on the full product space.
pub fn gauss_generator<T: Scalar>(
    lattice: &LatticeSpec,
    rep: SpinRep,
    v: Vertex,
    convention: GaussConvention,
) -> Result<SparseOperator<T>> {
    gauss_generator_in(&FullBasis::new(lattice, rep)?, v, convention)
}

/// Per-link signs `(−1)^{n1+n2}` of the source vertex. A `−1` link is
/// reflected `m → −m`, which also swaps `L+` and `L−` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaggeredSignMap {
    signs: Vec<i32>,
}

impl StaggeredSignMap {
    pub fn signs(&self) -> &[i32] {
        &self.signs
    }

    pub fn apply(&self, config: &[i32]) -> Vec<i32> {
        config.iter().zip(&self.signs).map(|(m, s)| m * s).collect()
    }
}

/// The staggered sign map. Periodic lattices need even side lengths for the
/// signs to be consistent around the torus.
pub fn staggered_sign_map(lattice: &LatticeSpec) -> Result<StaggeredSignMap> {
    if lattice.boundary() == Boundary::Periodic && (lattice.n1() % 2 != 0 || lattice.n2() % 2 != 0) {
        return Err(Error::Domain(format!(
            "staggering needs even side lengths on periodic lattices, got {}",
            lattice.describe()
        )));
    }
    Ok(StaggeredSignMap {
        signs: lattice.link_parities(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(l: u32) -> SpinRep {
        SpinRep::new(l).unwrap()
    }

    #[test]
    fn single_plaquette_geometry() {
        let lat = LatticeSpec::single_plaquette();
        assert_eq!(lat.num_links(), 4);
        let names: Vec<(usize, usize, u8)> = lat
            .links()
            .iter()
            .map(|l| (l.source.n1, l.source.n2, l.direction.number()))
            .collect();
        assert_eq!(names, vec![(0, 0, 1), (0, 0, 2), (1, 0, 2), (0, 1, 1)]);
        let p = lat.plaquettes();
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].bottom, p[0].left, p[0].right, p[0].top), (0, 1, 2, 3));
        assert_eq!(lat.diagonal_pairs().len(), 4);
    }

    #[test]
    fn periodic_links_and_plaquettes() {
        let lat = LatticeSpec::new(3, 2, Boundary::Periodic).unwrap();
        assert_eq!(lat.num_links(), 12);
        assert_eq!(lat.plaquettes().len(), 6);
        for v in lat.vertices() {
            assert_eq!(lat.incidence(v).unwrap().len(), 4);
        }
        assert!(LatticeSpec::new(1, 3, Boundary::Periodic).is_err());
    }

    #[test]
    fn charged_plaquette_sector_matches_published_family() {
        let lat = LatticeSpec::single_plaquette();
        for l in 1..=3u32 {
            let s = enumerate_gauge_sector(&lat, rep(l), &ChargeConfig::charged_plaquette()).unwrap();
            assert_eq!(s.dim(), 2 * l as usize);
            for m in (1 - l as i32)..=(l as i32) {
                // link order: bottom, left, right, top
                let cfg = vec![m, 1 - m, m - 1, 1 - m];
                assert!(s.index_of(&cfg).is_some(), "l={l} m={m}");
            }
        }
        let s1 = enumerate_gauge_sector(&lat, rep(1), &ChargeConfig::charged_plaquette()).unwrap();
        assert_eq!(s1.states(), &[vec![0, 1, -1, 1], vec![1, 0, 0, 0]]);
    }

    #[test]
    fn neutral_plaquette_sector() {
        let lat = LatticeSpec::single_plaquette();
        let s = enumerate_gauge_sector(&lat, rep(1), &ChargeConfig::neutral()).unwrap();
        assert_eq!(s.states(), &[vec![-1, 1, -1, 1], vec![0, 0, 0, 0], vec![1, -1, 1, -1]]);
    }

    #[test]
    fn unreachable_charges_give_empty_sector() {
        let lat = LatticeSpec::single_plaquette();
        let q = ChargeConfig::from_pairs([(Vertex::new(0, 0), 1)]);
        assert!(enumerate_gauge_sector(&lat, rep(1), &q).unwrap().is_empty());
        let q = ChargeConfig::from_pairs([(Vertex::new(0, 0), 5), (Vertex::new(1, 1), -5)]);
        assert!(enumerate_gauge_sector(&lat, rep(2), &q).unwrap().is_empty());
    }

    #[test]
    fn capacity_guard() {
        let lat = LatticeSpec::new(4, 4, Boundary::Open).unwrap();
        let err = enumerate_gauge_sector(&lat, rep(1), &ChargeConfig::neutral()).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
        assert!(err.to_string().contains("34"));
        assert!(FullBasis::new(&lat, rep(1)).is_err());
    }

    #[test]
    fn bad_charges_rejected() {
        let lat = LatticeSpec::new(2, 2, Boundary::Periodic).unwrap();
        let q = ChargeConfig::from_pairs([(Vertex::new(0, 0), 1)]);
        assert!(enumerate_gauge_sector(&lat, rep(1), &q).is_err());
        let q = ChargeConfig::from_pairs([(Vertex::new(5, 0), 1)]);
        assert!(q.validate(&LatticeSpec::single_plaquette()).is_err());
    }

    #[test]
    fn unknown_vertex_is_domain_error() {
        let lat = LatticeSpec::single_plaquette();
        let r = gauss_generator::<f64>(&lat, rep(1), Vertex::new(2, 0), GaussConvention::Divergence);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn full_basis_indexing_round_trips() {
        let lat = LatticeSpec::single_plaquette();
        let b = FullBasis::new(&lat, rep(1)).unwrap();
        assert_eq!(b.dim(), 81);
        assert_eq!(b.config(0), vec![-1, -1, -1, -1]);
        assert_eq!(b.config(80), vec![1, 1, 1, 1]);
        for i in 0..b.dim() {
            assert_eq!(b.index_of(&b.config(i)), Some(i));
        }
        assert_eq!(b.index_of(&[2, 0, 0, 0]), None);
    }

    #[test]
    fn gauss_on_vacuum_is_zero() {
        let lat = LatticeSpec::single_plaquette();
        let b = FullBasis::new(&lat, rep(1)).unwrap();
        let vac = b.index_of(&[0, 0, 0, 0]).unwrap();
        for v in lat.vertices() {
            for conv in [GaussConvention::Divergence, GaussConvention::AllPlus] {
                let g: SparseOperator<f64> = gauss_generator(&lat, rep(1), v, conv).unwrap();
                assert_eq!(g.get(vac, vac), 0.0);
            }
        }
    }

    #[test]
    fn sign_map() {
        let lat = LatticeSpec::single_plaquette();
        let map = staggered_sign_map(&lat).unwrap();
        let origin_1 = lat.link_at(Vertex::new(0, 0), Direction::One).unwrap();
        let east_2 = lat.link_at(Vertex::new(1, 0), Direction::Two).unwrap();
        assert_eq!(map.signs()[origin_1], 1);
        assert_eq!(map.signs()[east_2], -1);
        let cfg = vec![1, -1, 1, 0];
        assert_eq!(map.apply(&map.apply(&cfg)), cfg);
        let odd = LatticeSpec::new(3, 2, Boundary::Periodic).unwrap();
        assert!(staggered_sign_map(&odd).is_err());
    }

    #[test]
    fn staggered_charges_are_involutive() {
        let q = ChargeConfig::charged_plaquette();
        let s = q.staggered();
        assert_eq!(s.charge(Vertex::new(0, 0)), 1);
        assert_eq!(s.charge(Vertex::new(1, 0)), 1);
        assert_eq!(s.staggered(), q);
    }
}
