//! Fixtures shared by the benchmarks in `benches/`.

use pareto_records::{next_record, Dimension, GeneratorSet, Point, RandomSource, RecordState, Scale, Variant};

/// State after `m` records on the exponential scale, plus the record that
/// would arrive next.
pub fn state_and_next(d: usize, m: u64, seed: u64) -> (RecordState, Point) {
    let d = Dimension::new(d).expect("positive dimension");
    let mut state = RecordState::with_scale(d, Variant::Efficient, Scale::Exponential).expect("valid state");
    let mut rng = RandomSource::new(seed);
    for _ in 0..m {
        let (r, rejections) = next_record(&state, &mut rng).expect("sampler runs");
        state.insert(r, rejections).expect("record is admissible");
    }
    let (next, _) = next_record(&state, &mut rng).expect("sampler runs");
    (state, next)
}

pub fn generators_of(state: &RecordState) -> &GeneratorSet {
    state.generators()
}
