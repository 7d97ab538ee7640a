//! Maintenance of the generator set: the minimal elements of the
//! record-setting region under the weak componentwise order.
//!
//! The region is always the union of the closed positive orthants rooted at
//! the generators, and it starts out as the whole cube with the single
//! generator `0`. When a new record `r` arrives, every orthant `O⁺_g` is
//! intersected with the complement of `{y : y ≺ r}`, which is the union of
//! the orthants rooted at `r_k e^(k)`. The new generators are therefore the
//! minima of the candidates `g ∨ r_k e^(k)`.
//!
//! Two maintainers are provided:
//!
//! * [`GeneratorSet::update_naive`] builds all `d·γ` candidates and keeps
//!   their minima.
//! * [`GeneratorSet::update_efficient`] first splits the generators into the
//!   survivors (`g ⊀ r`), which are kept as they are, and the killed ones
//!   (`g ≺ r`). Only the killed generators are lifted, and only their lifts
//!   are compared pairwise.
//!
//! Both return identical sets in an identical order, so a seeded simulation
//! draws the same records whichever maintainer it uses. The bivariate
//! staircase maintainer lives in [`bivariate`].

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{check_same_dim, Dimension, Point, Scale, WeakOrder};

pub mod bivariate;

pub use bivariate::{update_bivariate, BivariateFrontier};

/// Relative tolerance for the cached total volume against a fresh sum.
pub const VOLUME_DRIFT_TOLERANCE: f64 = 1e-12;

/// Which maintainer updates the generators after each record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Naive,
    Efficient,
    Bivariate,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Naive, Variant::Efficient, Variant::Bivariate];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Naive => "naive",
            Variant::Efficient => "efficient",
            Variant::Bivariate => "bivariate",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Variant::Naive),
            "efficient" => Ok(Variant::Efficient),
            "bivariate" => Ok(Variant::Bivariate),
            other => Err(Error::InvalidArgument(format!("unknown variant {other:?}"))),
        }
    }
}

/// Running sum with Neumaier compensation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
    /// Value at the last full recomputation.
    reference: f64,
}

/// Once the total falls this far below its reference value the remaining
/// compensation error is no longer small relative to it.
const REBUILD_RATIO: f64 = 1.0 / 65536.0;

impl CompensatedSum {
    fn of(values: &[f64]) -> Self {
        let mut s = CompensatedSum::default();
        for &v in values {
            s.add(v);
        }
        s.reference = s.value();
        s
    }

    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Counts reported by one generator update.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateReport {
    /// Generators strictly below the new record (`ν`).
    pub killed_generators: usize,
    /// Generators kept unchanged.
    pub survivor_count: usize,
    /// Generators created by the update.
    pub new_minima_count: usize,
    /// Current records strictly below the new record. Only known to callers
    /// that track the records themselves, such as `RecordState`.
    pub records_broken: Option<usize>,
    /// Point-to-point dominance tests performed by the update.
    pub comparisons: u64,
}

/// The generators of the current record-setting region, in insertion order,
/// with cached orthant volumes.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    dim: Dimension,
    scale: Scale,
    items: Vec<Point>,
    volumes: Vec<f64>,
    total: CompensatedSum,
}

/// JSON shape of a generator dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSnapshot {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "is_uniform")]
    pub scale: Scale,
    pub gamma: usize,
    pub generators: Vec<Vec<f64>>,
}

fn is_uniform(scale: &Scale) -> bool {
    *scale == Scale::Uniform
}

impl GeneratorSet {
    /// The initial set `{0}`.
    pub fn new(d: Dimension) -> Self {
        GeneratorSet::with_scale(d, Scale::Uniform)
    }

    /// The initial set `{0}` for coordinates on `scale`.
    pub fn with_scale(d: Dimension, scale: Scale) -> Self {
        let total = CompensatedSum::of(&[1.0]);
        GeneratorSet { dim: d, scale, items: vec![Point::origin(d)], volumes: vec![1.0], total }
    }

    /// Builds a set from explicit points, which must be nonempty, distinct and
    /// pairwise incomparable under `≤`.
    pub fn from_points(d: Dimension, points: Vec<Point>) -> Result<Self> {
        GeneratorSet::from_points_on(d, Scale::Uniform, points)
    }

    pub fn from_points_on(d: Dimension, scale: Scale, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("a generator set cannot be empty".into()));
        }
        for p in &points {
            check_same_dim(d.get(), p)?;
            if let Some((index, &value)) = p.coords().iter().enumerate().find(|(_, &c)| !scale.admits(c)) {
                return Err(Error::CoordinateOutOfRange { index, value });
            }
        }
        let set = GeneratorSet::assemble(d, scale, points);
        set.check_invariants()?;
        Ok(set)
    }

    fn assemble(dim: Dimension, scale: Scale, items: Vec<Point>) -> Self {
        let volumes: Vec<f64> = items.iter().map(|g| scale.orthant_probability(g)).collect();
        let total = CompensatedSum::of(&volumes);
        GeneratorSet { dim, scale, items, volumes, total }
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn scale(&self) -> Scale {
        self.scale
    }

    /// `γ`, the number of generators.
    #[inline]
    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// Always false; kept for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.items.iter()
    }

    #[inline]
    pub fn volumes(&self) -> &[f64] {
        &self.volumes
    }

    /// Sum of the orthant volumes, the probability of the region.
    #[inline]
    pub fn total_volume(&self) -> f64 {
        self.total.value()
    }

    /// Some generator lies weakly below `x`.
    pub fn covers(&self, x: &Point) -> bool {
        self.items.iter().any(|g| g.is_weakly_below(x))
    }

    /// Number of generators whose orthant contains `x`.
    pub fn covering_count(&self, x: &Point) -> usize {
        self.items.iter().filter(|g| g.is_weakly_below(x)).count()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.items.iter().any(|g| g == p)
    }

    /// Generators sorted lexicographically, for order-insensitive comparison.
    pub fn sorted_points(&self) -> Vec<Point> {
        let mut v = self.items.clone();
        v.sort();
        v
    }

    pub fn same_set(&self, other: &GeneratorSet) -> bool {
        self.dim == other.dim && self.scale == other.scale && self.sorted_points() == other.sorted_points()
    }

    /// Verifies minimality, distinctness, coordinate range and the cached volumes.
    pub fn check_invariants(&self) -> Result<()> {
        if self.items.is_empty() {
            return Err(Error::Internal("empty generator set".into()));
        }
        for (i, g) in self.items.iter().enumerate() {
            for h in &self.items[i + 1..] {
                match g.weak_order(h) {
                    WeakOrder::Incomparable => {}
                    WeakOrder::Equal => {
                        return Err(Error::Internal(format!("duplicate generator {g}")));
                    }
                    _ => {
                        return Err(Error::Internal(format!("generators {g} and {h} are comparable")));
                    }
                }
            }
        }
        if self.volumes.len() != self.items.len() {
            return Err(Error::Internal("volume cache length mismatch".into()));
        }
        let mut fresh = 0.0;
        for (g, &v) in self.items.iter().zip(&self.volumes) {
            if self.scale.orthant_probability(g).to_bits() != v.to_bits() {
                return Err(Error::Internal(format!("stale cached volume for {g}")));
            }
            fresh += v;
        }
        let cached = self.total_volume();
        if (cached - fresh).abs() > VOLUME_DRIFT_TOLERANCE * fresh.abs() {
            return Err(Error::Internal(format!(
                "total volume drifted: cached {cached}, recomputed {fresh}"
            )));
        }
        Ok(())
    }

    pub fn snapshot(&self) -> GeneratorSnapshot {
        GeneratorSnapshot {
            dim: self.dim.get(),
            scale: self.scale,
            gamma: self.len(),
            generators: self.items.iter().map(|g| g.coords().to_vec()).collect(),
        }
    }

    pub fn from_snapshot(snapshot: &GeneratorSnapshot) -> Result<Self> {
        let d = Dimension::new(snapshot.dim)?;
        if snapshot.gamma != snapshot.generators.len() {
            return Err(Error::InvalidArgument(format!(
                "snapshot declares gamma = {} but lists {} generators",
                snapshot.gamma,
                snapshot.generators.len()
            )));
        }
        let points = snapshot
            .generators
            .iter()
            .map(|c| Point::with_scale(c.clone(), snapshot.scale))
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::from_points_on(d, snapshot.scale, points)
    }

    /// Keeps the survivors in their current order and appends `new_points`.
    ///
    /// The running total subtracts the killed volumes in generator order and
    /// then adds the new ones, so every maintainer that reaches the same list
    /// also reaches the same total bit for bit. When the region has shrunk by
    /// a large factor since the last recomputation, the total is summed afresh.
    pub(crate) fn successor(&self, killed: &[bool], new_points: Vec<Point>) -> GeneratorSet {
        debug_assert_eq!(killed.len(), self.items.len());
        let mut total = self.total;
        let mut items = Vec::with_capacity(self.items.len() + new_points.len());
        let mut volumes = Vec::with_capacity(items.capacity());
        for ((g, &v), &dead) in self.items.iter().zip(&self.volumes).zip(killed) {
            if dead {
                total.add(-v);
            } else {
                items.push(g.clone());
                volumes.push(v);
            }
        }
        for p in new_points {
            let v = self.scale.orthant_probability(&p);
            total.add(v);
            items.push(p);
            volumes.push(v);
        }
        if total.value() < total.reference * REBUILD_RATIO {
            total = CompensatedSum::of(&volumes);
        }
        let next = GeneratorSet { dim: self.dim, scale: self.scale, items, volumes, total };
        #[cfg(debug_assertions)]
        {
            let fresh: f64 = next.volumes.iter().sum();
            debug_assert!(
                (next.total_volume() - fresh).abs() <= VOLUME_DRIFT_TOLERANCE * fresh,
                "total volume drift: cached {} vs {}",
                next.total_volume(),
                fresh
            );
        }
        next
    }

    fn require_in_region(&self, r: &Point) -> Result<()> {
        check_same_dim(self.dim.get(), r)?;
        if let Some((index, &value)) = r.coords().iter().enumerate().find(|(_, &c)| !self.scale.admits(c)) {
            return Err(Error::CoordinateOutOfRange { index, value });
        }
        if !self.covers(r) {
            return Err(Error::NotInRegion(r.coords().to_vec()));
        }
        Ok(())
    }

    /// Minima of all lifts `g ∨ r_k e^(k)`.
    pub fn update_naive(&self, r: &Point) -> Result<(GeneratorSet, UpdateReport)> {
        self.require_in_region(r)?;
        let candidates = distinct_lifts(self.items.iter(), r);
        let mut comparisons = 0;
        let minima = pairwise_minima(candidates, &mut comparisons);

        // Old generators that are still minimal keep their place; the rest of
        // the minima are new, already in order of first appearance.
        let minima_set: HashSet<&Point> = minima.iter().collect();
        let killed: Vec<bool> = self.items.iter().map(|g| !minima_set.contains(g)).collect();
        let old_set: HashSet<&Point> = self.items.iter().collect();
        let new_points: Vec<Point> =
            minima.iter().filter(|h| !old_set.contains(h)).cloned().collect();

        let killed_count = killed.iter().filter(|&&k| k).count();
        let report = UpdateReport {
            killed_generators: killed_count,
            survivor_count: self.len() - killed_count,
            new_minima_count: new_points.len(),
            records_broken: None,
            comparisons,
        };
        Ok((self.successor(&killed, new_points), report))
    }

    /// Survivor split followed by minima of the killed generators' lifts.
    pub fn update_efficient(&self, r: &Point) -> Result<(GeneratorSet, UpdateReport)> {
        check_same_dim(self.dim.get(), r)?;
        let mut comparisons = 0u64;
        let mut covered = false;
        let mut killed = Vec::with_capacity(self.items.len());
        for g in &self.items {
            comparisons += 1;
            let (weak, strict) = below_weak_and_strict(g, r);
            covered |= weak;
            killed.push(strict);
        }
        if !covered {
            return Err(Error::NotInRegion(r.coords().to_vec()));
        }
        let dead = self.items.iter().zip(&killed).filter(|(_, &k)| k).map(|(g, _)| g);
        let candidates = distinct_lifts(dead, r);
        let new_points = pairwise_minima(candidates, &mut comparisons);

        let killed_count = killed.iter().filter(|&&k| k).count();
        let report = UpdateReport {
            killed_generators: killed_count,
            survivor_count: self.len() - killed_count,
            new_minima_count: new_points.len(),
            records_broken: None,
            comparisons,
        };
        Ok((self.successor(&killed, new_points), report))
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// `(g ≤ r, g ≺ r)` in one pass.
#[inline]
fn below_weak_and_strict(g: &Point, r: &Point) -> (bool, bool) {
    let mut strict = true;
    for (a, b) in g.coords().iter().zip(r.coords()) {
        if a > b {
            return (false, false);
        }
        if a == b {
            strict = false;
        }
    }
    (true, strict)
}

/// `g ∨ r_k e^(k)` for each `g` in order and each `k`, first occurrence kept.
fn distinct_lifts<'a>(parents: impl Iterator<Item = &'a Point>, r: &Point) -> Vec<Point> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in parents {
        for k in 0..r.dim() {
            let h = g.lift(k, r[k]);
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
    }
    out
}

/// Minimal elements of `candidates`, preserving their order. Every unordered
/// pair is compared exactly once, so `comparisons` grows by `C(m, 2)`.
pub(crate) fn pairwise_minima(candidates: Vec<Point>, comparisons: &mut u64) -> Vec<Point> {
    let m = candidates.len();
    let mut dominated = vec![false; m];
    for i in 0..m {
        for j in i + 1..m {
            *comparisons += 1;
            match candidates[i].weak_order(&candidates[j]) {
                WeakOrder::Below | WeakOrder::Equal => dominated[j] = true,
                WeakOrder::Above => dominated[i] = true,
                WeakOrder::Incomparable => {}
            }
        }
    }
    candidates
        .into_iter()
        .zip(dominated)
        .filter(|(_, dead)| !dead)
        .map(|(p, _)| p)
        .collect()
}

pub fn new_generator_set(d: Dimension) -> GeneratorSet {
    GeneratorSet::new(d)
}

pub fn update_naive(g: &GeneratorSet, r: &Point) -> Result<(GeneratorSet, UpdateReport)> {
    g.update_naive(r)
}

pub fn update_efficient(g: &GeneratorSet, r: &Point) -> Result<(GeneratorSet, UpdateReport)> {
    g.update_efficient(r)
}

/// Number of `records` strictly below `r`, i.e. broken by it.
pub fn count_broken_records(records: &[Point], r: &Point) -> usize {
    records.iter().filter(|q| q.is_strictly_below(r)).count()
}

/// `C(n, 2)` as used in the comparison accounting.
pub fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}
