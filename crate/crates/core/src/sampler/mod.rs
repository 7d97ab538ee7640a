//! Importance sampling of Pareto records.
//!
//! One step draws a generator `g` with probability proportional to its
//! orthant volume `∏(1 - g_j)`, draws `R` uniformly on `O⁺_g`, and accepts it
//! with probability `1 / #{h : R ∈ O⁺_h}`. Accepted points are exactly
//! uniform on the record-setting region, and each attempt succeeds with
//! probability at least `1/γ`.
//!
//! Randomness is consumed in a fixed order so that every maintainer variant
//! reproduces the same stream for a given seed: one uniform to pick the
//! generator (inverse CDF over the prefix sums of the cached volumes), `d`
//! uniforms for the point, and one more uniform for the accept/reject coin
//! only when the covering count exceeds one.
//!
//! On the uniform scale the region shrinks towards the far corner of the
//! cube, and after a few hundred records (in the plane) its boundary is
//! closer to one than doubles can resolve. Long runs therefore use the
//! exponential scale, where the same draws are kept as `-ln(1 - u)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::analysis::bounds;
use crate::error::{Error, Result};
use crate::generators::{count_broken_records, BivariateFrontier, GeneratorSet, UpdateReport, Variant};
use crate::geometry::{check_same_dim, Dimension, Point, Scale};
use crate::ledger::RunLedger;

mod naive;
mod random;

pub use naive::{naive_record_stream, NaiveRecord, NaiveStream};
pub use random::{derive_seed, RandomSource};

/// Largest double below one.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Uniform coordinates this close to one are refused: beyond it, distinct
/// draws start to collide.
pub const UNIFORM_RESOLUTION: f64 = 1.0 / (1u64 << 32) as f64;

/// `R_j = g_j + (1 - g_j) U_j`, a uniform point of `O⁺_g`. Consumes `d` uniforms.
pub fn sample_in_orthant(g: &Point, rng: &mut RandomSource) -> Point {
    let coords = g
        .coords()
        .iter()
        .map(|&gj| {
            let x = gj + (1.0 - gj) * rng.uniform();
            // rounding can land on 1 when g_j is close to it
            if x < 1.0 {
                x
            } else {
                BELOW_ONE
            }
        })
        .collect();
    Point::from_unchecked(coords)
}

/// [`sample_in_orthant`] on `scale`. On the exponential scale the same
/// uniforms give `R_j = g_j - ln(1 - U_j)`.
pub fn sample_in_orthant_on(g: &Point, scale: Scale, rng: &mut RandomSource) -> Point {
    match scale {
        Scale::Uniform => sample_in_orthant(g, rng),
        Scale::Exponential => Point::from_unchecked(
            g.coords().iter().map(|&gj| gj + exponential_quantile(rng.uniform())).collect(),
        ),
    }
}

/// Index of a generator drawn with probability proportional to its orthant
/// volume. Consumes one uniform.
pub fn choose_generator(g: &GeneratorSet, rng: &mut RandomSource) -> Result<usize> {
    let total = g.total_volume();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Internal(format!("degenerate total orthant volume {total}")));
    }
    let target = rng.uniform() * total;
    let mut cumulative = 0.0;
    for (i, v) in g.volumes().iter().enumerate() {
        cumulative += v;
        if target < cumulative {
            return Ok(i);
        }
    }
    Ok(g.len() - 1)
}

/// One row of a simulation history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordEntry {
    /// 1-based position in the record sequence.
    pub index: u64,
    pub record: Point,
    pub records_broken: usize,
    pub rho_after: usize,
    pub gamma_after: usize,
    pub rejections: u64,
    pub killed_generators: usize,
    pub comparisons: u64,
}

/// Records, generators and history of one simulation run.
#[derive(Debug, Clone)]
pub struct RecordState {
    dim: Dimension,
    variant: Variant,
    records: Vec<Point>,
    generators: GeneratorSet,
    frontier: Option<BivariateFrontier>,
    history: Vec<RecordEntry>,
}

impl RecordState {
    pub fn new(d: Dimension, variant: Variant) -> Result<Self> {
        RecordState::with_scale(d, variant, Scale::Uniform)
    }

    pub fn with_scale(d: Dimension, variant: Variant, scale: Scale) -> Result<Self> {
        let frontier = match variant {
            Variant::Bivariate if d.get() != 2 => {
                return Err(Error::InvalidArgument(format!(
                    "the bivariate variant needs d = 2, got d = {d}"
                )));
            }
            Variant::Bivariate => Some(BivariateFrontier::new()),
            _ => None,
        };
        Ok(RecordState {
            dim: d,
            variant,
            records: Vec::new(),
            generators: GeneratorSet::with_scale(d, scale),
            frontier,
            history: Vec::new(),
        })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn scale(&self) -> Scale {
        self.generators.scale()
    }

    /// Current (unbroken) records.
    pub fn records(&self) -> &[Point] {
        &self.records
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn history(&self) -> &[RecordEntry] {
        &self.history
    }

    pub fn into_history(self) -> Vec<RecordEntry> {
        self.history
    }

    /// Adds a new record, which must lie in the current region, and updates
    /// the generators with this state's maintainer.
    pub fn insert(&mut self, r: Point, rejections: u64) -> Result<UpdateReport> {
        check_same_dim(self.dim.get(), &r)?;
        let broken = count_broken_records(&self.records, &r);
        let (next, mut report) = match self.variant {
            Variant::Naive => self.generators.update_naive(&r)?,
            Variant::Efficient => self.generators.update_efficient(&r)?,
            Variant::Bivariate => self.update_staircase(&r)?,
        };
        report.records_broken = Some(broken);
        if broken > 0 {
            self.records.retain(|q| !q.is_strictly_below(&r));
        }
        self.records.push(r.clone());
        self.generators = next;

        let gamma = self.generators.len();
        let rho = self.records.len();
        check_bounds(rho, self.dim, gamma)?;

        self.history.push(RecordEntry {
            index: self.history.len() as u64 + 1,
            record: r,
            records_broken: broken,
            rho_after: rho,
            gamma_after: gamma,
            rejections,
            killed_generators: report.killed_generators,
            comparisons: report.comparisons,
        });
        Ok(report)
    }

    fn update_staircase(&mut self, r: &Point) -> Result<(GeneratorSet, UpdateReport)> {
        let frontier = self.frontier.as_ref().expect("bivariate state keeps a staircase");
        let (next, killed_range) = frontier.insert(r)?;
        let killed_points: HashSet<&Point> = frontier.generators()[killed_range.clone()].iter().collect();
        let corners_len = next.len() + killed_range.len() - frontier.len();
        let corners: HashSet<&Point> =
            next.generators()[killed_range.start..killed_range.start + corners_len].iter().collect();

        // Same order as the other maintainers: corners by first appearance
        // among the killed generators' lifts.
        let killed: Vec<bool> = self.generators.iter().map(|g| killed_points.contains(g)).collect();
        let mut ordered = Vec::with_capacity(corners.len());
        for g in self.generators.iter().filter(|g| killed_points.contains(g)) {
            for k in 0..2 {
                let h = g.lift(k, r[k]);
                if corners.contains(&h) && !ordered.contains(&h) {
                    ordered.push(h);
                }
            }
        }
        if ordered.len() != corners.len() {
            return Err(Error::Internal(format!(
                "staircase corners {corners:?} are not lifts of the killed generators"
            )));
        }
        let report = UpdateReport {
            killed_generators: killed_points.len(),
            survivor_count: self.generators.len() - killed_points.len(),
            new_minima_count: ordered.len(),
            records_broken: None,
            comparisons: 0,
        };
        let set = self.generators.successor(&killed, ordered);
        self.frontier = Some(next);
        Ok((set, report))
    }
}

/// Fails when `γ` escapes `[(d-1)ρ + 1, C(ρ+d-1, d-1)]`. An upper bound too
/// large for `u128` is treated as no constraint.
fn check_bounds(rho: usize, d: Dimension, gamma: usize) -> Result<()> {
    let lower = (d.get() as u128 - 1) * rho as u128 + 1;
    let upper = bounds::upper_bound(rho as u64, d).unwrap_or(u128::MAX);
    let g = gamma as u128;
    if g < lower || g > upper {
        return Err(Error::Internal(format!(
            "generator count {gamma} outside [{lower}, {upper}] for rho = {rho}, d = {d}"
        )));
    }
    Ok(())
}

/// Draws the next record from the region of `state`. Returns the record and
/// the number of rejected attempts before it.
pub fn next_record(state: &RecordState, rng: &mut RandomSource) -> Result<(Point, u64)> {
    let g = state.generators();
    let scale = g.scale();
    if g.total_volume() < 1e-280 {
        return Err(Error::Numeric {
            routine: "next_record",
            detail: format!("region probability {:e} is too small to sample", g.total_volume()),
        });
    }
    let mut rejections = 0u64;
    loop {
        let i = choose_generator(g, rng)?;
        let candidate = sample_in_orthant_on(&g.points()[i], scale, rng);
        if scale == Scale::Uniform && candidate.coords().iter().any(|&x| 1.0 - x < UNIFORM_RESOLUTION) {
            return Err(Error::Numeric {
                routine: "next_record",
                detail: format!(
                    "after {} records the region is within 2^-32 of the far corner; \
                     use the exponential scale for runs this long",
                    state.history().len()
                ),
            });
        }
        let cover = g.covering_count(&candidate);
        debug_assert!(cover >= 1);
        if cover == 1 || rng.uniform() * (cover as f64) < 1.0 {
            return Ok((candidate, rejections));
        }
        rejections += 1;
    }
}

/// Ledger plus one entry per generated record.
#[derive(Debug, Clone)]
pub struct RecordStream {
    pub ledger: RunLedger,
    pub entries: Vec<RecordEntry>,
}

/// Runs the sampler for `m` records and returns the stream with the final state.
pub fn simulate(d: Dimension, m: u64, seed: u64, variant: Variant) -> Result<(RecordStream, RecordState)> {
    simulate_on(d, m, seed, variant, Scale::Uniform)
}

/// [`simulate`] with coordinates on `scale`.
pub fn simulate_on(
    d: Dimension,
    m: u64,
    seed: u64,
    variant: Variant,
    scale: Scale,
) -> Result<(RecordStream, RecordState)> {
    let mut state = RecordState::with_scale(d, variant, scale)?;
    let mut rng = RandomSource::new(seed);
    for _ in 0..m {
        let (r, rejections) = next_record(&state, &mut rng)?;
        state.insert(r, rejections)?;
    }
    let stream = RecordStream {
        ledger: RunLedger::new("simulate", d.get(), m, seed, variant.as_str()).with_scale(scale),
        entries: state.history().to_vec(),
    };
    Ok((stream, state))
}

pub fn run_simulation(d: Dimension, m: u64, seed: u64, variant: Variant) -> Result<RecordStream> {
    simulate(d, m, seed, variant).map(|(stream, _)| stream)
}

/// Applies a quantile transform to each coordinate of an emitted record,
/// e.g. [`exponential_quantile`] for standard exponential marginals. The
/// sampler itself always works with uniform coordinates.
pub fn quantile_transform(record: &Point, quantile: impl Fn(f64) -> f64) -> Vec<f64> {
    record.coords().iter().map(|&u| quantile(u)).collect()
}

/// Standard exponential quantile `-ln(1 - u)`.
pub fn exponential_quantile(u: f64) -> f64 {
    -(-u).ln_1p()
}
