//! Brute-force reconstructions of the generator set from the current records
//! alone. They share no code with the incremental maintainers beyond the
//! point type and serve as ground truth for them.
//!
//! Two independent routes are provided.
//!
//! **Ordered partitions.** Assign every record to one coordinate
//! (`k : [ρ] → [d]`). Each assignment yields the candidate whose `j`-th
//! coordinate is the largest `j`-th coordinate among the records sent to `j`
//! (or `0` when none is). The region is the union of the orthants rooted at
//! all `d^ρ` candidates, so the generators are their minima.
//!
//! **Projections.** A point with all coordinates nonzero is a generator
//! exactly when it lies in the region and there are `d` distinct records
//! `i₁, …, i_d` with `g_j = r⁽ⁱʲ⁾_j = min_ℓ r⁽ⁱˡ⁾_j` for every `j`. A generator
//! with nonzero coordinates `T` is the zero-padding of such an interior
//! generator of the records projected onto `T`.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::geometry::{check_same_dim, check_tie_free, in_record_setting_region, Dimension, Point, WeakOrder};
use crate::generators::GeneratorSet;

/// Largest record count accepted by the partition enumeration.
pub const MAX_PARTITION_RECORDS: usize = 12;

/// Assignment of each record index to a coordinate, enumerated as a
/// mixed-radix counter over `[d]^[ρ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartitionIndex {
    assignment: Vec<usize>,
    d: usize,
}

impl OrderedPartitionIndex {
    pub fn first(rho: usize, d: Dimension) -> Self {
        OrderedPartitionIndex { assignment: vec![0; rho], d: d.get() }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Records assigned to coordinate `j`.
    pub fn cell(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment.iter().enumerate().filter(move |(_, &k)| k == j).map(|(i, _)| i)
    }

    /// Advances to the next assignment; false after the last one.
    pub fn advance(&mut self) -> bool {
        for digit in self.assignment.iter_mut() {
            *digit += 1;
            if *digit < self.d {
                return true;
            }
            *digit = 0;
        }
        false
    }
}

/// Nonempty subset of coordinates, listed in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordinateSubset(Vec<usize>);

impl CoordinateSubset {
    pub fn new(mut coords: Vec<usize>, d: Dimension) -> Result<Self> {
        coords.sort_unstable();
        coords.dedup();
        if coords.is_empty() || coords.last().is_some_and(|&j| j >= d.get()) {
            return Err(Error::InvalidArgument(format!("bad coordinate subset {coords:?} for d = {d}")));
        }
        Ok(CoordinateSubset(coords))
    }

    fn from_mask(mask: u32, d: usize) -> Self {
        CoordinateSubset((0..d).filter(|j| mask & (1 << j) != 0).collect())
    }

    /// All nonempty subsets of `[d]`.
    pub fn all(d: Dimension) -> impl Iterator<Item = CoordinateSubset> {
        let d = d.get();
        (1u32..(1 << d)).map(move |mask| CoordinateSubset::from_mask(mask, d))
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn project(&self, x: &Point) -> Point {
        Point::from_unchecked(self.0.iter().map(|&j| x[j]).collect())
    }

    /// Zero-pads a `|T|`-dimensional point back into `d` dimensions.
    pub fn inject(&self, y: &Point, d: Dimension) -> Point {
        let mut coords = vec![0.0; d.get()];
        for (&j, &v) in self.0.iter().zip(y.coords()) {
            coords[j] = v;
        }
        Point::from_unchecked(coords)
    }
}

fn validate_records(records: &[Point], d: Dimension) -> Result<()> {
    for r in records {
        check_same_dim(d.get(), r)?;
    }
    check_tie_free(records)
}

/// Minima of the `d^ρ` partition candidates.
pub fn generators_via_partitions(d: Dimension, records: &[Point]) -> Result<GeneratorSet> {
    validate_records(records, d)?;
    let rho = records.len();
    if rho > MAX_PARTITION_RECORDS {
        return Err(Error::ResourceLimit(format!(
            "partition enumeration needs d^ρ work; ρ = {rho} exceeds {MAX_PARTITION_RECORDS}"
        )));
    }
    let mut index = OrderedPartitionIndex::first(rho, d);
    let mut seen: HashSet<Point> = HashSet::new();
    let mut minima: Vec<Point> = Vec::new();
    let mut coords = vec![0.0f64; d.get()];
    loop {
        coords.iter_mut().for_each(|c| *c = 0.0);
        for (i, &j) in index.assignment().iter().enumerate() {
            coords[j] = coords[j].max(records[i][j]);
        }
        let candidate = Point::from_unchecked(coords.clone());
        if seen.insert(candidate.clone()) {
            insert_minimum(&mut minima, candidate);
        }
        if !index.advance() {
            break;
        }
    }
    GeneratorSet::from_points(d, minima)
}

/// Adds `p` to an antichain of minima, evicting anything it lies below.
fn insert_minimum(minima: &mut Vec<Point>, p: Point) {
    let mut i = 0;
    while i < minima.len() {
        match minima[i].weak_order(&p) {
            WeakOrder::Below | WeakOrder::Equal => return,
            WeakOrder::Above => {
                minima.swap_remove(i);
            }
            WeakOrder::Incomparable => i += 1,
        }
    }
    minima.push(p);
}

/// Generators of `records` with every coordinate nonzero.
///
/// Every interior generator is realized by exactly one ordered tuple of
/// distinct records; a second realization is reported as an internal error.
pub fn interior_generators(d: Dimension, records: &[Point]) -> Result<Vec<Point>> {
    validate_records(records, d)?;
    let d = d.get();
    let rho = records.len();
    if rho < d {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    let mut seen = HashSet::new();
    let mut tuple = Vec::with_capacity(d);
    let mut used = vec![false; rho];
    collect_interior(records, d, &mut tuple, &mut used, &mut |tuple: &[usize]| {
        let g = Point::from_unchecked((0..d).map(|j| records[tuple[j]][j]).collect());
        let is_tuple_min = (0..d).all(|j| tuple.iter().all(|&i| records[i][j] >= g[j]));
        if !is_tuple_min || !in_record_setting_region(&g, records).unwrap_or(false) {
            return Ok(());
        }
        if !seen.insert(g.clone()) {
            return Err(Error::Internal(format!("interior generator {g} realized twice")));
        }
        found.push(g);
        Ok(())
    })?;
    Ok(found)
}

fn collect_interior(
    records: &[Point],
    d: usize,
    tuple: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if tuple.len() == d {
        return visit(tuple);
    }
    let j = tuple.len();
    for i in 0..records.len() {
        if used[i] {
            continue;
        }
        // Prune: r⁽ⁱ⁾_j must stay the minimum of coordinate j, and earlier
        // chosen coordinates must stay minimal against r⁽ⁱ⁾.
        if tuple.iter().any(|&t| records[t][j] < records[i][j]) {
            continue;
        }
        if tuple.iter().enumerate().any(|(l, &t)| records[i][l] < records[t][l]) {
            continue;
        }
        used[i] = true;
        tuple.push(i);
        collect_interior(records, d, tuple, used, visit)?;
        tuple.pop();
        used[i] = false;
    }
    Ok(())
}

/// Union over nonempty `T ⊆ [d]` of the zero-padded interior generators of
/// the projected records.
pub fn generators_via_projection(d: Dimension, records: &[Point]) -> Result<GeneratorSet> {
    validate_records(records, d)?;
    if records.is_empty() {
        return Ok(GeneratorSet::new(d));
    }
    let mut all = Vec::new();
    for subset in CoordinateSubset::all(d) {
        let projected: Vec<Point> = records.iter().map(|r| subset.project(r)).collect();
        check_tie_free(&projected)?;
        let t = Dimension::new(subset.len())?;
        for g in interior_generators(t, &projected)? {
            all.push(subset.inject(&g, d));
        }
    }
    GeneratorSet::from_points(d, all)
}

/// Generator count per support set `T`.
pub fn support_census(g: &GeneratorSet) -> BTreeMap<Vec<usize>, usize> {
    let mut census = BTreeMap::new();
    for p in g {
        *census.entry(p.support()).or_insert(0) += 1;
    }
    census
}
