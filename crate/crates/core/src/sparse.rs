//! Coordinate-format sparse operators bound to a named basis.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Identifies the basis an operator's rows and columns refer to.
///
/// Two operators may only be combined when their tags are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// Single link multiplet of dimension `2l + 1`.
    Link { l: u32 },
    /// Full tensor-product space over every link of a lattice.
    Full { lattice: String, l: u32 },
    /// A Gauss-law sector; the string pins lattice, spin and charges.
    Sector { descriptor: String },
    /// Anything else, e.g. a hand-built test matrix.
    Generic,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::Link { l } => write!(f, "link(l={l})"),
            BasisTag::Full { lattice, l } => write!(f, "full({lattice}, l={l})"),
            BasisTag::Sector { descriptor } => write!(f, "sector({descriptor})"),
            BasisTag::Generic => write!(f, "generic"),
        }
    }
}

/// Square sparse matrix stored as `(row, col, value)` triplets sorted by
/// `(row, col)`, duplicates summed, negligible entries removed.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator<T> {
    dim: usize,
    tag: BasisTag,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Scalar> SparseOperator<T> {
    pub fn zeros(dim: usize, tag: BasisTag) -> Self {
        Self {
            dim,
            tag,
            entries: Vec::new(),
        }
    }

    pub fn identity(dim: usize, tag: BasisTag) -> Self {
        Self::from_diagonal(tag, (0..dim).map(|_| T::one()).collect())
    }

    pub fn from_diagonal(tag: BasisTag, diagonal: Vec<T>) -> Self {
        let dim = diagonal.len();
        Self::from_triplets(
            dim,
            tag,
            diagonal.into_iter().enumerate().map(|(i, v)| (i, i, v)),
        )
    }

    /// Builds an operator, summing repeated coordinates and pruning entries
    /// at or below [`Scalar::prune_threshold`].
    ///
    /// Panics if a coordinate lies outside `dim`.
    pub fn from_triplets<I>(dim: usize, tag: BasisTag, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "entry ({r}, {c}) outside dimension {dim}");
            match acc.get_mut(&(r, c)) {
                Some(slot) => *slot = slot.clone() + v,
                None => {
                    acc.insert((r, c), v);
                }
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_negligible())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Self { dim, tag, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> &BasisTag {
        &self.tag
    }

    pub fn entries(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
            .map(|i| self.entries[i].2.clone())
            .unwrap_or_else(|_| T::zero())
    }

    pub fn retag(mut self, tag: BasisTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|(r, c, _)| r == c)
    }

    pub fn diagonal(&self) -> Vec<T> {
        let mut d = vec![T::zero(); self.dim];
        for (r, c, v) in &self.entries {
            if r == c {
                d[*r] = v.clone();
            }
        }
        d
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.dim,
            self.tag.clone(),
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())),
        )
    }

    /// Entry-wise exact symmetry (real operators: Hermiticity).
    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|(r, c, v)| r == c || self.get(*c, *r) == *v)
    }

    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .map(|(_, _, v)| v.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn trace(&self) -> T {
        self.entries
            .iter()
            .filter(|(r, c, _)| r == c)
            .map(|(_, _, v)| v.clone())
            .sum()
    }

    pub fn scale(&self, factor: T) -> Self {
        Self::from_triplets(
            self.dim,
            self.tag.clone(),
            self.entries
                .iter()
                .map(|(r, c, v)| (*r, *c, v.clone() * factor.clone())),
        )
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::BasisMismatch {
                expected: self.tag.to_string(),
                found: other.tag.to_string(),
            });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_triplets(
            self.dim,
            self.tag.clone(),
            self.entries.iter().chain(other.entries.iter()).cloned(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_triplets(
            self.dim,
            self.tag.clone(),
            self.entries.iter().cloned().chain(
                other
                    .entries
                    .iter()
                    .map(|(r, c, v)| (*r, *c, -v.clone())),
            ),
        ))
    }

    /// Sparse product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); other.dim];
        for (r, c, v) in &other.entries {
            rows[*r].push((*c, v.clone()));
        }
        let mut out = Vec::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &rows[*k] {
                out.push((*r, *c, a.clone() * b.clone()));
            }
        }
        Ok(Self::from_triplets(self.dim, self.tag.clone(), out))
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut y = vec![T::zero(); self.dim];
        for (r, c, v) in &self.entries {
            y[*r] = y[*r].clone() + v.clone() * x[*c].clone();
        }
        Ok(y)
    }

    /// `xᵀ·A·x` for real vectors.
    pub fn quadratic_form(&self, x: &[T]) -> Result<T> {
        let ax = self.matvec(x)?;
        Ok(x.iter().zip(ax).map(|(a, b)| a.clone() * b).sum())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseOperator<U> {
        SparseOperator::from_triplets(
            self.dim,
            self.tag.clone(),
            self.entries.iter().map(|(r, c, v)| (*r, *c, f(v))),
        )
    }

    pub fn to_f64(&self) -> SparseOperator<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in &self.entries {
            m[(*r, *c)] += v.to_f64();
        }
        m
    }

    /// Restricts to the rows and columns listed in `keep`, in that order.
    pub fn restrict(&self, keep: &[usize], tag: BasisTag) -> Self {
        let mut position = vec![usize::MAX; self.dim];
        for (new, &old) in keep.iter().enumerate() {
            position[old] = new;
        }
        Self::from_triplets(
            keep.len(),
            tag,
            self.entries.iter().filter_map(|(r, c, v)| {
                let (nr, nc) = (position[*r], position[*c]);
                (nr != usize::MAX && nc != usize::MAX).then(|| (nr, nc, v.clone()))
            }),
        )
    }

    /// Conjugates by the permutation matrix sending basis state `i` to
    /// `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: perm.len(),
            });
        }
        Ok(Self::from_triplets(
            self.dim,
            self.tag.clone(),
            self.entries
                .iter()
                .map(|(r, c, v)| (perm[*r], perm[*c], v.clone())),
        ))
    }
}

impl SparseOperator<f64> {
    /// Writes one `row col value` line per stored entry, values at 17
    /// significant digits.
    pub fn write_coo<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# dim {} basis {}", self.dim, self.tag)?;
        for (r, c, v) in &self.entries {
            writeln!(out, "{r} {c} {v:.16e}")?;
        }
        Ok(())
    }

    /// Parses the output of [`write_coo`](Self::write_coo). The basis tag is
    /// not recoverable from text and comes back as [`BasisTag::Generic`].
    pub fn read_coo<R: BufRead>(input: R) -> Result<Self> {
        let mut dim = None;
        let mut triplets = Vec::new();
        for line in input.lines() {
            let line = line?;
            let line = line.trim();
            if let Some(header) = line.strip_prefix('#') {
                let mut words = header.split_whitespace();
                if words.next() == Some("dim") {
                    let d = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad header `{line}`")))?;
                    dim = Some(d);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("expected 3 fields in `{line}`")));
            }
            let parse_err = |_| Error::Parse(format!("malformed entry `{line}`"));
            let r: usize = fields[0].parse().map_err(parse_err)?;
            let c: usize = fields[1].parse().map_err(parse_err)?;
            let v: f64 = fields[2]
                .parse()
                .map_err(|_| Error::Parse(format!("malformed value `{line}`")))?;
            triplets.push((r, c, v));
        }
        let dim = dim.ok_or_else(|| Error::Parse("missing `# dim` header".into()))?;
        if let Some((r, c, _)) = triplets.iter().find(|(r, c, _)| *r >= dim || *c >= dim) {
            return Err(Error::Parse(format!("entry ({r}, {c}) outside dimension {dim}")));
        }
        Ok(Self::from_triplets(dim, BasisTag::Generic, triplets))
    }
}
