//! Points of the unit hypercube, the componentwise orders on them, and the
//! orthant primitives used to describe the record-setting region.
//!
//! Notation follows the usual conventions for Pareto records: `x ≺ y` when
//! every coordinate of `x` is strictly below the matching coordinate of `y`,
//! `x ≤ y` when every coordinate is weakly below, and `x ∨ y` is the
//! coordinatewise maximum. The closed positive orthant rooted at `g` is
//! `{y : y ≥ g}`; its probability under the uniform law is `∏(1 - g_j)`.
//!
//! A point `x` can still set a record exactly when `x ⊀ r` for every current
//! record `r`. Equivalently, `x` lies above one of the generators of the
//! region.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::GeneratorSet;

/// Number of coordinates per observation. Always at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension { found: 0, min: 1 });
        }
        Ok(Dimension(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;
    fn try_from(d: usize) -> Result<Self> {
        Dimension::new(d)
    }
}

impl From<Dimension> for usize {
    fn from(d: Dimension) -> usize {
        d.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A point of `[0, 1)^d`, or of `[0, ∞)^d` on the [`Scale::Exponential`] scale.
///
/// Equality and hashing are on the exact bit patterns of the coordinates, so
/// two points compare equal only when every coordinate is the same double.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Box<[f64]>);

/// Outcome of comparing two points under the weak componentwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakOrder {
    Equal,
    Below,
    Above,
    Incomparable,
}

impl Point {
    /// Builds a point, rejecting empty inputs and coordinates outside `[0, 1)`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDimension { found: 0, min: 1 });
        }
        for (index, &value) in coords.iter().enumerate() {
            if !(0.0..1.0).contains(&value) {
                return Err(Error::CoordinateOutOfRange { index, value });
            }
        }
        Ok(Point::from_unchecked(coords))
    }

    /// Builds a point whose coordinates are valid on `scale`.
    pub fn with_scale(coords: Vec<f64>, scale: Scale) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDimension { found: 0, min: 1 });
        }
        for (index, &value) in coords.iter().enumerate() {
            if !scale.admits(value) {
                return Err(Error::CoordinateOutOfRange { index, value });
            }
        }
        Ok(Point::from_unchecked(coords))
    }

    /// Skips range validation. Callers must already know the coordinates are
    /// valid on the scale in use.
    #[inline]
    pub(crate) fn from_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        debug_assert!(coords.iter().all(|c| *c >= 0.0 && c.is_finite()), "{coords:?}");
        // -0.0 and 0.0 must hash alike.
        Point(coords.into_iter().map(|c| c + 0.0).collect())
    }

    pub fn origin(d: Dimension) -> Self {
        Point(vec![0.0; d.get()].into_boxed_slice())
    }

    /// `value · e^(k)`: zero everywhere except coordinate `k`.
    pub fn axis(d: Dimension, k: usize, value: f64) -> Result<Self> {
        if k >= d.get() {
            return Err(Error::InvalidArgument(format!("axis {k} out of range for d = {d}")));
        }
        let mut coords = vec![0.0; d.get()];
        coords[k] = value;
        Point::new(coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0.into_vec()
    }

    /// `self ≺ other`.
    #[inline]
    pub fn is_strictly_below(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a < b)
    }

    /// `self ≤ other`.
    #[inline]
    pub fn is_weakly_below(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Classifies the pair in a single pass over the coordinates.
    #[inline]
    pub fn weak_order(&self, other: &Point) -> WeakOrder {
        debug_assert_eq!(self.dim(), other.dim());
        let mut below = true;
        let mut above = true;
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                above = false;
            } else if a > b {
                below = false;
            }
            if !below && !above {
                return WeakOrder::Incomparable;
            }
        }
        match (below, above) {
            (true, true) => WeakOrder::Equal,
            (true, false) => WeakOrder::Below,
            (false, true) => WeakOrder::Above,
            (false, false) => WeakOrder::Incomparable,
        }
    }

    /// Coordinatewise maximum `self ∨ other`.
    pub fn join(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(other.0.iter()).map(|(a, b)| a.max(*b)).collect())
    }

    /// `self ∨ (value · e^(k))`: raises coordinate `k` to at least `value`.
    pub fn lift(&self, k: usize, value: f64) -> Point {
        let mut coords = self.0.clone();
        coords[k] = coords[k].max(value);
        Point(coords)
    }

    /// Uniform probability of the closed positive orthant rooted here.
    #[inline]
    pub fn orthant_probability(&self) -> f64 {
        self.0.iter().map(|g| 1.0 - g).product()
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(j, _)| j)
            .collect()
    }
}

/// How coordinates encode an observation.
///
/// Dominance only depends on the order of each coordinate, so any increasing
/// map of `[0, 1)` gives the same records and generators. The exponential
/// scale `e = -ln(1 - u)` keeps full relative precision for uniform values
/// within `1e-300` of one, which long runs reach quickly.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// Coordinates in `[0, 1)`; orthant volume `∏(1 - g_j)`.
    #[default]
    Uniform,
    /// Coordinates in `[0, ∞)`; orthant volume `exp(-Σ g_j)`.
    Exponential,
}

impl Scale {
    pub const ALL: [Scale; 2] = [Scale::Uniform, Scale::Exponential];

    pub fn as_str(self) -> &'static str {
        match self {
            Scale::Uniform => "uniform",
            Scale::Exponential => "exponential",
        }
    }

    /// Whether `value` is a valid coordinate on this scale.
    pub fn admits(self, value: f64) -> bool {
        match self {
            Scale::Uniform => (0.0..1.0).contains(&value),
            Scale::Exponential => value >= 0.0 && value.is_finite(),
        }
    }

    /// Probability that a uniform observation lands in `O⁺_g`.
    #[inline]
    pub fn orthant_probability(self, g: &Point) -> f64 {
        match self {
            Scale::Uniform => g.orthant_probability(),
            Scale::Exponential => (-g.coords().iter().sum::<f64>()).exp(),
        }
    }

    /// Moves a uniform coordinate `u` to this scale.
    pub fn from_uniform(self, u: f64) -> f64 {
        match self {
            Scale::Uniform => u,
            Scale::Exponential => -(-u).ln_1p(),
        }
    }

    /// Moves a coordinate on this scale back to `[0, 1]`; values within
    /// `2^-53` of one round to one.
    pub fn to_uniform(self, x: f64) -> f64 {
        match self {
            Scale::Uniform => x,
            Scale::Exponential => -(-x).exp_m1(),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Scale::Uniform),
            "exponential" => Ok(Scale::Exponential),
            other => Err(Error::InvalidArgument(format!(
                "unknown scale {other:?}; expected uniform or exponential"
            ))),
        }
    }
}

impl Index<usize> for Point {
    type Output = f64;
    #[inline]
    fn index(&self, j: usize) -> &f64 {
        &self.0[j]
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(other.0.iter()).all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.len().hash(state);
        for c in self.0.iter() {
            c.to_bits().hash(state);
        }
    }
}

/// Lexicographic on coordinates; used only to canonicalize sets for comparison.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Point").field(&&*self.0).finish()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Vec<f64> {
        p.into_vec()
    }
}

#[inline]
pub(crate) fn check_same_dim(expected: usize, p: &Point) -> Result<()> {
    if p.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: p.dim() });
    }
    Ok(())
}

/// `x ≺ y`: every coordinate of `x` is strictly below the matching one of `y`.
pub fn strictly_dominates(x: &Point, y: &Point) -> Result<bool> {
    check_same_dim(x.dim(), y)?;
    Ok(x.is_strictly_below(y))
}

/// `x ≤ y` componentwise.
pub fn weakly_dominates(x: &Point, y: &Point) -> Result<bool> {
    check_same_dim(x.dim(), y)?;
    Ok(x.is_weakly_below(y))
}

pub fn join(x: &Point, y: &Point) -> Result<Point> {
    check_same_dim(x.dim(), y)?;
    Ok(x.join(y))
}

pub fn orthant_probability(g: &Point) -> f64 {
    g.orthant_probability()
}

/// Direct test against the records: `x ⊀ r` for every `r`.
///
/// The records are expected to be pairwise incomparable; this is not checked.
pub fn in_record_setting_region(x: &Point, records: &[Point]) -> Result<bool> {
    for r in records {
        check_same_dim(x.dim(), r)?;
    }
    Ok(!records.iter().any(|r| x.is_strictly_below(r)))
}

/// Test through the generator representation: some `g ≤ x`.
pub fn covered_by_generators(x: &Point, generators: &GeneratorSet) -> Result<bool> {
    check_same_dim(generators.dim().get(), x)?;
    Ok(generators.covers(x))
}

/// Fails on the first coordinate in which two of `points` share a value.
pub fn check_tie_free(points: &[Point]) -> Result<()> {
    let Some(first) = points.first() else {
        return Ok(());
    };
    let d = first.dim();
    let mut column = Vec::with_capacity(points.len());
    for j in 0..d {
        column.clear();
        for p in points {
            check_same_dim(d, p)?;
            column.push(p[j]);
        }
        column.sort_by(f64::total_cmp);
        if let Some(w) = column.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::CoordinateTie { coordinate: j, value: w[0] });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn example_records() -> Vec<Point> {
        vec![p(&[0.2, 0.8, 0.3, 0.7]), p(&[0.5, 0.1, 0.4, 0.6])]
    }

    #[test]
    fn strict_dominance() {
        assert!(strictly_dominates(&p(&[0.1, 0.2]), &p(&[0.3, 0.4])).unwrap());
        assert!(!strictly_dominates(&p(&[0.1, 0.5]), &p(&[0.3, 0.4])).unwrap());
        let x = p(&[0.3, 0.3]);
        assert!(!strictly_dominates(&x, &x).unwrap());
    }

    #[test]
    fn weak_dominance() {
        let x = p(&[0.3, 0.7]);
        assert!(weakly_dominates(&x, &x).unwrap());
        assert!(weakly_dominates(&p(&[0.0, 0.0]), &x).unwrap());
        assert!(!weakly_dominates(&p(&[0.5, 0.1]), &p(&[0.2, 0.8])).unwrap());
        assert!(!weakly_dominates(&p(&[0.2, 0.8]), &p(&[0.5, 0.1])).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = p(&[0.1, 0.2]);
        let b = p(&[0.1, 0.2, 0.3]);
        assert!(matches!(strictly_dominates(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(weakly_dominates(&a, &b).is_err());
        assert!(join(&a, &b).is_err());
        assert!(in_record_setting_region(&a, &[b]).is_err());
    }

    #[test]
    fn out_of_range_coordinates_are_rejected() {
        assert!(Point::new(vec![0.5, 1.0]).is_err());
        assert!(Point::new(vec![-0.1]).is_err());
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![]).is_err());
        assert!(Dimension::new(0).is_err());
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&p(&[0.2, 0.8]), &p(&[0.5, 0.1])).unwrap(), p(&[0.5, 0.8]));
        let x = p(&[0.25, 0.5, 0.125]);
        let zero = Point::origin(Dimension::new(3).unwrap());
        assert_eq!(x.join(&zero), x);
        assert_eq!(x.join(&x), x);
    }

    #[test]
    fn orthant_probability_examples() {
        let d2 = Dimension::new(2).unwrap();
        assert_eq!(orthant_probability(&Point::origin(d2)), 1.0);
        assert_eq!(orthant_probability(&p(&[0.5, 0.5])), 0.25);
        // 0.8 * 0.9 * 1 * 1
        let v = orthant_probability(&p(&[0.2, 0.1, 0.0, 0.0]));
        assert!((v - 0.72).abs() < 1e-15);
    }

    #[test]
    fn region_membership_examples() {
        assert!(in_record_setting_region(&p(&[0.9, 0.9]), &[]).unwrap());
        let records = example_records();
        // strictly below (0.2, 0.8, 0.3, 0.7)
        assert!(!in_record_setting_region(&p(&[0.1, 0.05, 0.1, 0.1]), &records).unwrap());
        assert!(in_record_setting_region(&p(&[0.5, 0.0, 0.0, 0.0]), &records).unwrap());
    }

    #[test]
    fn weak_order_classification() {
        let a = p(&[0.1, 0.2]);
        assert_eq!(a.weak_order(&a), WeakOrder::Equal);
        assert_eq!(a.weak_order(&p(&[0.1, 0.3])), WeakOrder::Below);
        assert_eq!(p(&[0.1, 0.3]).weak_order(&a), WeakOrder::Above);
        assert_eq!(a.weak_order(&p(&[0.0, 0.3])), WeakOrder::Incomparable);
    }

    #[test]
    fn tie_detection() {
        assert!(check_tie_free(&example_records()).is_ok());
        let tied = vec![p(&[0.2, 0.8]), p(&[0.5, 0.8])];
        assert_eq!(
            check_tie_free(&tied),
            Err(Error::CoordinateTie { coordinate: 1, value: 0.8 })
        );
    }

    #[test]
    fn serde_rejects_invalid_points() {
        let ok: Point = serde_json::from_str("[0.5, 0.25]").unwrap();
        assert_eq!(ok, p(&[0.5, 0.25]));
        assert!(serde_json::from_str::<Point>("[0.5, 1.5]").is_err());
    }

    fn unit_point(d: usize) -> impl Strategy<Value = Point> {
        prop::collection::vec(0.0f64..1.0, d).prop_map(|c| Point::new(c).unwrap())
    }

    fn triple() -> impl Strategy<Value = (Point, Point, Point)> {
        (1usize..7).prop_flat_map(|d| (unit_point(d), unit_point(d), unit_point(d)))
    }

    #[test]
    fn scales_round_trip_and_agree_on_volume() {
        for u in [0.0, 1e-12, 0.3, 0.9, 1.0 - 1e-9] {
            let e = Scale::Exponential.from_uniform(u);
            assert!(Scale::Exponential.admits(e));
            assert!((Scale::Exponential.to_uniform(e) - u).abs() <= 1e-15);
            assert_eq!(Scale::Uniform.from_uniform(u), u);
        }
        let g = p(&[0.2, 0.5, 0.0]);
        let e = Point::with_scale(g.coords().iter().map(|&u| Scale::Exponential.from_uniform(u)).collect(), Scale::Exponential)
            .unwrap();
        let (a, b) = (Scale::Uniform.orthant_probability(&g), Scale::Exponential.orthant_probability(&e));
        assert!((a - b).abs() < 1e-15, "{a} vs {b}");
    }

    #[test]
    fn scale_admissibility_and_names() {
        assert!(!Scale::Uniform.admits(1.0));
        assert!(Scale::Exponential.admits(40.0));
        assert!(!Scale::Exponential.admits(f64::INFINITY));
        assert!(!Scale::Exponential.admits(-0.5));
        for s in Scale::ALL {
            assert_eq!(s.to_string().parse::<Scale>().unwrap(), s);
        }
        assert!("gaussian".parse::<Scale>().is_err());
        assert_eq!(Scale::default(), Scale::Uniform);
    }

    proptest! {
        #[test]
        fn join_is_a_semilattice((x, y, z) in triple()) {
            prop_assert_eq!(x.join(&y).join(&z), x.join(&y.join(&z)));
            prop_assert_eq!(x.join(&y), y.join(&x));
            prop_assert_eq!(x.join(&x), x.clone());
            let zero = Point::origin(Dimension::new(x.dim()).unwrap());
            prop_assert_eq!(x.join(&zero), x.clone());
        }

        #[test]
        fn strict_implies_weak((x, y, _z) in triple()) {
            if x.is_strictly_below(&y) {
                prop_assert!(x.is_weakly_below(&y));
            }
        }

        #[test]
        fn weak_order_is_antisymmetric_and_transitive((x, y, z) in triple()) {
            if x.is_weakly_below(&y) && y.is_weakly_below(&x) {
                prop_assert_eq!(&x, &y);
            }
            if x.is_weakly_below(&y) && y.is_weakly_below(&z) {
                prop_assert!(x.is_weakly_below(&z));
            }
        }

        #[test]
        fn join_shrinks_orthant((x, y, _z) in triple()) {
            let joined = x.join(&y).orthant_probability();
            prop_assert!(joined <= x.orthant_probability().min(y.orthant_probability()));
        }

        #[test]
        fn weak_order_agrees_with_predicates((x, y, _z) in triple()) {
            let expected = match (x.is_weakly_below(&y), y.is_weakly_below(&x)) {
                (true, true) => WeakOrder::Equal,
                (true, false) => WeakOrder::Below,
                (false, true) => WeakOrder::Above,
                (false, false) => WeakOrder::Incomparable,
            };
            prop_assert_eq!(x.weak_order(&y), expected);
        }
    }
}
