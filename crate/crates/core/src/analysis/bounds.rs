//! Deterministic bounds on the number of generators.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::geometry::{Dimension, Point};

/// `(d-1)ρ + 1`, the fewest generators `ρ` current records can leave.
pub fn lower_bound(rho: u64, d: Dimension) -> Result<u128> {
    (d.get() as u128 - 1)
        .checked_mul(rho as u128)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("lower generator bound"))
}

/// `C(ρ+d-1, d-1)`, the most generators `ρ` current records can leave.
pub fn upper_bound(rho: u64, d: Dimension) -> Result<u128> {
    let n = rho as u128 + d.get() as u128 - 1;
    let k = (d.get() as u128 - 1).min(rho as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc · (n - i) / (i + 1) = C(n, i + 1) is exact at every step
        acc = acc.checked_mul(n - i).ok_or(Error::Overflow("upper generator bound"))? / (i + 1);
    }
    Ok(acc)
}

/// `(lower, upper)` bounds on `γ` given `ρ` current records.
pub fn bounds(rho: u64, d: Dimension) -> Result<(u128, u128)> {
    Ok((lower_bound(rho, d)?, upper_bound(rho, d)?))
}

/// `{d + a(d-a) : 1 ≤ a ≤ ⌊d/2⌋}`, the values `γ` takes with two current records.
pub fn attainable_gammas_two_records(d: Dimension) -> Result<BTreeSet<u64>> {
    let d = d.get() as u64;
    if d < 2 {
        return Err(Error::InvalidDimension { found: d as usize, min: 2 });
    }
    Ok((1..=d / 2).map(|a| d + a * (d - a)).collect())
}

/// `ρ` records whose first coordinates decrease and whose other coordinates
/// increase. No record breaks another and each one adds exactly `d - 1`
/// generators, so the generator count is `(d-1)ρ + 1`.
///
/// In one dimension two records are always comparable, so `ρ ≤ 1` there.
pub fn lower_bound_witness(d: Dimension, rho: usize) -> Result<Vec<Point>> {
    let dd = d.get();
    if dd == 1 && rho > 1 {
        return Err(Error::InvalidArgument(
            "one-dimensional records are totally ordered; at most one is current".into(),
        ));
    }
    let denom = ((rho + 1) * (dd + 1)) as f64;
    (0..rho)
        .map(|i| {
            let coords = (0..dd)
                .map(|k| {
                    let step = if k == 0 { rho - i } else { i + 1 };
                    (step * (dd + 1) + k) as f64 / denom
                })
                .collect();
            Point::new(coords)
        })
        .collect()
}

/// Inserts `records` in order, starting from the origin.
pub fn generators_after(d: Dimension, records: &[Point]) -> Result<GeneratorSet> {
    records
        .iter()
        .try_fold(GeneratorSet::new(d), |g, r| g.update_efficient(r).map(|(next, _)| next))
}

/// The generator counts reached by two incomparable records, found by
/// trying every split of the coordinates into those where the first record
/// is smaller and those where it is larger.
pub fn census_two_records(d: Dimension) -> Result<BTreeSet<u64>> {
    let dd = d.get();
    if dd < 2 {
        return Err(Error::InvalidDimension { found: dd, min: 2 });
    }
    if dd > 20 {
        return Err(Error::ResourceLimit(format!("census over 2^{dd} patterns")));
    }
    let mut seen = BTreeSet::new();
    for mask in 1..(1u32 << dd) - 1 {
        let low = |j: usize| 0.3 + 0.01 * j as f64;
        let high = |j: usize| 0.6 + 0.01 * j as f64;
        let first: Vec<f64> = (0..dd).map(|j| if mask >> j & 1 == 1 { low(j) } else { high(j) }).collect();
        let second: Vec<f64> = (0..dd).map(|j| if mask >> j & 1 == 1 { high(j) } else { low(j) }).collect();
        let g = GeneratorSet::new(d).update_naive(&Point::new(first)?)?.0.update_naive(&Point::new(second)?)?.0;
        seen.insert(g.len() as u64);
    }
    Ok(seen)
}
