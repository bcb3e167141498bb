//! Point sets and dyadic indices.

use crate::error::{Error, Result};

/// Finest dyadic level accepted along one axis. Keeps `2^j` and packed box
/// keys inside a `u64`.
pub const MAX_LEVEL: i32 = 62;

/// `N` points in `[0,1)^d`, stored row-major, with optional real weights.
///
/// Duplicate points are allowed; `N` counts multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    weights: Option<Vec<f64>>,
}

impl PointSet {
    /// Validates raw coordinates (and optional weights) into a point set.
    pub fn new(points: Vec<Vec<f64>>, weights: Option<Vec<f64>>, dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidDimension(dim));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    point: i,
                    expected: dim,
                    got: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(coords, weights, dim)
    }

    /// Same as [`PointSet::new`] for row-major coordinates.
    pub fn from_flat(coords: Vec<f64>, weights: Option<Vec<f64>>, dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidDimension(dim));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                point: coords.len() / dim,
                expected: dim,
                got: coords.len() % dim,
            });
        }
        let n = coords.len() / dim;
        if n == 0 {
            return Err(Error::EmptySet);
        }
        for (k, &x) in coords.iter().enumerate() {
            // NaN fails both comparisons
            if !(0.0..1.0).contains(&x) {
                return Err(Error::CoordinateOutOfRange {
                    point: k / dim,
                    axis: k % dim,
                    value: x,
                });
            }
        }
        if let Some(w) = &weights {
            if w.len() != n {
                return Err(Error::WeightCountMismatch {
                    points: n,
                    weights: w.len(),
                });
            }
            if let Some(index) = w.iter().position(|a| !a.is_finite()) {
                return Err(Error::NonFiniteWeight { index });
            }
        }
        Ok(PointSet {
            dim,
            coords,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points `N`, the cardinality used by the volume term even
    /// when the set is weighted.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[i])
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Replaces the weights, keeping the points.
    pub fn with_weights(&self, weights: Option<Vec<f64>>) -> Result<Self> {
        Self::from_flat(self.coords.clone(), weights, self.dim)
    }

    pub fn unweighted(&self) -> Self {
        PointSet {
            dim: self.dim,
            coords: self.coords.clone(),
            weights: None,
        }
    }
}

/// Level vector `j ∈ {-1,0,1,…}^d` and position vector `m ∈ D_j`.
///
/// Level `-1` stands for the constant function on `[0,1)` and carries
/// `m = 0`; level `j ≥ 0` covers the dyadic interval
/// `[m 2^-j, (m+1) 2^-j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicIndex {
    j: Vec<i32>,
    m: Vec<u64>,
}

impl DyadicIndex {
    pub fn new(j: Vec<i32>, m: Vec<u64>) -> Result<Self> {
        if j.is_empty() || j.len() != m.len() {
            return Err(Error::InvalidIndex(format!(
                "level vector has length {}, position vector {}",
                j.len(),
                m.len()
            )));
        }
        for (&ji, &mi) in j.iter().zip(&m) {
            check_1d(ji, mi)?;
        }
        Ok(DyadicIndex { j, m })
    }

    /// The unique index at the coarsest level, `j = (-1,…,-1)`.
    pub fn root(dim: usize) -> Self {
        DyadicIndex {
            j: vec![-1; dim],
            m: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.j.len()
    }

    pub fn levels(&self) -> &[i32] {
        &self.j
    }

    pub fn positions(&self) -> &[u64] {
        &self.m
    }

    /// `Σ max(0, j_i)`; the box `I_{j,m}` has volume `2^-level_sum`.
    pub fn level_sum(&self) -> u32 {
        level_sum(&self.j)
    }

    pub fn volume(&self) -> f64 {
        (-(self.level_sum() as f64)).exp2()
    }

    /// `true` when every `j_i ≥ 0`.
    pub fn is_proper(&self) -> bool {
        self.j.iter().all(|&j| j >= 0)
    }

    /// Closed-open bounds of the supporting interval along `axis`.
    pub fn interval(&self, axis: usize) -> (f64, f64) {
        interval_1d(self.j[axis], self.m[axis])
    }
}

pub(crate) fn check_1d(j: i32, m: u64) -> Result<()> {
    if !(-1..=MAX_LEVEL).contains(&j) {
        return Err(Error::InvalidIndex(format!(
            "level {j} outside -1..={MAX_LEVEL}"
        )));
    }
    let count = if j < 0 { 1 } else { 1u64 << j };
    if m >= count {
        return Err(Error::InvalidIndex(format!(
            "position {m} outside 0..{count} at level {j}"
        )));
    }
    Ok(())
}

pub(crate) fn level_sum(j: &[i32]) -> u32 {
    j.iter().map(|&x| x.max(0) as u32).sum()
}

pub(crate) fn interval_1d(j: i32, m: u64) -> (f64, f64) {
    if j < 0 {
        return (0.0, 1.0);
    }
    let len = (-(j as f64)).exp2();
    (m as f64 * len, (m + 1) as f64 * len)
}
