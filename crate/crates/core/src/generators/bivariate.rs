//! Staircase maintainer for `d = 2`.
//!
//! In the plane the generators form a staircase: sorted by first coordinate
//! they increase strictly in `x₁` from `0` and decrease strictly in `x₂` down
//! to `0`. The region is then the disjoint union of the rectangles
//! `[g⁽ⁱ⁾₁, g⁽ⁱ⁺¹⁾₁) × [g⁽ⁱ⁾₂, 1)`. A new record kills a contiguous run of the
//! staircase and replaces it with exactly two corners, so both the lookup and
//! the splice work on sorted positions instead of pairwise comparisons.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::geometry::{check_same_dim, Point};
use crate::generators::GeneratorSet;

/// Generators of a planar region, sorted by first coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateFrontier {
    steps: Vec<Point>,
}

impl Default for BivariateFrontier {
    fn default() -> Self {
        Self::new()
    }
}

impl BivariateFrontier {
    /// The whole square, generated by the origin.
    pub fn new() -> Self {
        BivariateFrontier { steps: vec![Point::from_unchecked(vec![0.0, 0.0])] }
    }

    /// Sorts a planar generator set into staircase order.
    pub fn from_generator_set(g: &GeneratorSet) -> Result<Self> {
        if g.dim().get() != 2 {
            return Err(Error::InvalidArgument(format!(
                "staircase maintenance needs d = 2, got d = {}",
                g.dim()
            )));
        }
        let mut steps = g.points().to_vec();
        steps.sort_by(|a, b| a[0].total_cmp(&b[0]));
        let frontier = BivariateFrontier { steps };
        frontier.check_invariants()?;
        Ok(frontier)
    }

    pub fn generators(&self) -> &[Point] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The current records, read off the staircase's outer corners:
    /// `r⁽ⁱ⁾ = (g⁽ⁱ⁺¹⁾₁, g⁽ⁱ⁾₂)`.
    pub fn records(&self) -> Vec<Point> {
        self.steps
            .windows(2)
            .map(|w| Point::from_unchecked(vec![w[1][0], w[0][1]]))
            .collect()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let (Some(first), Some(last)) = (self.steps.first(), self.steps.last()) else {
            return Err(Error::Internal("empty staircase".into()));
        };
        if first[0] != 0.0 || last[1] != 0.0 {
            return Err(Error::Internal(format!(
                "staircase must start on the x₂ axis and end on the x₁ axis: {first}, {last}"
            )));
        }
        for w in self.steps.windows(2) {
            if !(w[0][0] < w[1][0] && w[0][1] > w[1][1]) {
                return Err(Error::Internal(format!("staircase not monotone at {} / {}", w[0], w[1])));
            }
        }
        Ok(())
    }

    /// Inserts a record. Returns the new staircase and the index range of the
    /// steps that were killed (empty when `r` only touches the boundary).
    pub fn insert(&self, r: &Point) -> Result<(BivariateFrontier, Range<usize>)> {
        check_same_dim(2, r)?;
        let (x, y) = (r[0], r[1]);
        // Rightmost step with g₁ ≤ x has the lowest g₂ among those left of r.
        let left = self.steps.partition_point(|g| g[0] <= x);
        if left == 0 || self.steps[left - 1][1] > y {
            return Err(Error::NotInRegion(r.coords().to_vec()));
        }
        // Killed steps satisfy g₁ < x and g₂ < y; they are contiguous.
        let start = self.steps.partition_point(|g| g[1] >= y);
        let end = self.steps.partition_point(|g| g[0] < x);
        if start >= end {
            return Ok((self.clone(), start..start));
        }
        let mut corners = Vec::with_capacity(2);
        // A corner that would sit on a neighbour's edge is not minimal.
        if start == 0 || self.steps[start - 1][1] != y {
            corners.push(Point::from_unchecked(vec![self.steps[start][0], y]));
        }
        if end == self.steps.len() || self.steps[end][0] != x {
            corners.push(Point::from_unchecked(vec![x, self.steps[end - 1][1]]));
        }
        let mut steps = Vec::with_capacity(self.steps.len() + 2 - (end - start));
        steps.extend_from_slice(&self.steps[..start]);
        steps.extend(corners);
        steps.extend_from_slice(&self.steps[end..]);
        Ok((BivariateFrontier { steps }, start..end))
    }
}

pub fn update_bivariate(frontier: &BivariateFrontier, r: &Point) -> Result<BivariateFrontier> {
    if r.dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "staircase maintenance needs d = 2, got d = {}",
            r.dim()
        )));
    }
    Ok(frontier.insert(r)?.0)
}
