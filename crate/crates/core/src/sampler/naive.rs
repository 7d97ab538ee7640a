use crate::error::Result;
use crate::generators::GeneratorSet;
use crate::geometry::{Dimension, Point};
use crate::sampler::random::RandomSource;

/// A record found by scanning raw observations.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveRecord {
    /// 1-based observation number at which the record was set.
    pub time: u64,
    pub point: Point,
    /// Current records it broke.
    pub broken: usize,
}

#[derive(Debug, Clone)]
pub struct NaiveStream {
    pub dim: Dimension,
    pub observations: u64,
    /// Records in order of occurrence.
    pub records: Vec<NaiveRecord>,
    /// Records still unbroken after the last observation.
    pub current: Vec<Point>,
}

impl NaiveStream {
    /// Generators of the region left by the current records.
    pub fn generators(&self) -> Result<GeneratorSet> {
        let mut g = GeneratorSet::new(self.dim);
        for r in &self.current {
            g = g.update_efficient(r)?.0;
        }
        Ok(g)
    }
}

/// Draws `n_obs` i.i.d. uniform observations (`d` uniforms each) and keeps
/// those that set a record, i.e. are not strictly below any earlier one.
///
/// Comparing against the current records suffices: anything strictly below
/// an earlier observation is strictly below some current record.
pub fn naive_record_stream(d: Dimension, n_obs: u64, seed: u64) -> NaiveStream {
    let mut rng = RandomSource::new(seed);
    let mut records = Vec::new();
    let mut current: Vec<Point> = Vec::new();
    let mut coords = vec![0.0; d.get()];
    for time in 1..=n_obs {
        coords.iter_mut().for_each(|c| *c = rng.uniform());
        if current.iter().any(|r| coords.iter().zip(r.coords()).all(|(a, b)| a < b)) {
            continue;
        }
        let x = Point::from_unchecked(coords.clone());
        let before = current.len();
        current.retain(|r| !r.is_strictly_below(&x));
        let broken = before - current.len();
        current.push(x.clone());
        records.push(NaiveRecord { time, point: x, broken });
    }
    NaiveStream { dim: d, observations: n_obs, records, current }
}
