//! Expected generator counts after `n` uniform observations.
//!
//! The expected number of interior generators is
//!
//! ```text
//! I(d, n) = n(n-1)…(n-d+1) ∫_{[0,1)^d} t^{d-1} (1 - t)^{n-d} dx,   t = ∏(1 - x_j).
//! ```
//!
//! Under independent uniforms `t` is a product of `d` uniforms with density
//! `(-ln t)^{d-1} / (d-1)!`, which turns the cube integral into a single one.
//! Writing `t = e^{-s}` removes the endpoint singularities altogether:
//!
//! ```text
//! I(d, n) = n^(d) / (d-1)! ∫_0^∞ e^{-ds} s^{d-1} (1 - e^{-s})^{n-d} ds.
//! ```
//!
//! The integrand peaks near `s = ln n` with unit width, so it is integrated
//! adaptively on a window around that point. All prefactors are handled in
//! log space, which keeps `n` up to `10⁹` safe from overflow.
//!
//! The expected total over all supports is `G(d, n) = Σ_k C(d, k) I(k, n)`
//! with `I(0, n) = [n = 0]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::quadrature::{integrate, Tolerance};
use crate::analysis::special::gamma_derivative;
use crate::error::{Error, Result};
use crate::geometry::Dimension;

/// Which factor `K(s)` multiplies `e^{-cs} s^{d-1}` in the reduced integral.
#[derive(Debug, Clone, Copy)]
enum Kernel {
    /// `(1 - e^{-s})^p`
    Binomial(f64),
    /// `exp(-n e^{-s})`
    Poisson(f64),
}

impl Kernel {
    #[inline]
    fn ln(self, s: f64) -> f64 {
        match self {
            Kernel::Binomial(p) if p == 0.0 => 0.0,
            Kernel::Binomial(p) => p * ln_one_minus_exp(s),
            Kernel::Poisson(n) => -n * (-s).exp(),
        }
    }
}

/// `ln(1 - e^{-s})`, accurate for both small and large `s`.
fn ln_one_minus_exp(s: f64) -> f64 {
    if s < std::f64::consts::LN_2 {
        (-(-s).exp_m1()).ln()
    } else {
        (-(-s).exp()).ln_1p()
    }
}

/// `exp(ln_prefactor) ∫_0^∞ e^{-rate·s} s^{d-1} K(s) ds`.
fn reduced_integral(d: usize, n: f64, rate: f64, ln_prefactor: f64, kernel: Kernel) -> Result<f64> {
    let peak = n.max(1.0).ln();
    // Below `lo` the kernel is below e^{-700}; beyond `hi` the exponential
    // factor has decayed far past double precision relative to the peak.
    let lo = if n > 700.0 { (n / 700.0).ln() } else { 0.0 };
    let hi = peak + 40.0 + 10.0 * d as f64;
    let powers = (d - 1) as f64;
    let integrand = |s: f64| {
        let ln_s = if d == 1 { 0.0 } else { powers * s.ln() };
        (ln_prefactor - rate * s + ln_s + kernel.ln(s)).exp()
    };
    let breaks = [peak - 8.0, peak - 2.0, peak, peak + 2.0, peak + 8.0, peak + 20.0];
    let tol = Tolerance { absolute: 1e-12, relative: 1e-14, max_intervals: 4000 };
    integrate(integrand, lo, hi, &breaks, tol).map(|r| r.value).map_err(|e| match e {
        Error::Numeric { detail, .. } => Error::Numeric {
            routine: "reduced_integral",
            detail: format!("d = {d}, n = {n}: {detail}"),
        },
        other => other,
    })
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `ln n(n-1)…(n-d+1)`; requires `n ≥ d`.
fn ln_falling(n: u64, d: usize) -> f64 {
    (0..d as u64).map(|i| ((n - i) as f64).ln()).sum()
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Expected number of interior generators after `n` observations.
pub fn interior_expected(d: Dimension, n: u64) -> Result<f64> {
    let d = d.get();
    if n < d as u64 {
        return Ok(0.0);
    }
    if d == 1 {
        // n ∫ (1-t)^{n-1} dt
        return Ok(1.0);
    }
    let ln_pre = ln_falling(n, d) - ln_factorial(d - 1);
    reduced_integral(d, n as f64, d as f64, ln_pre, Kernel::Binomial((n - d as u64) as f64))
}

/// Expected number of generators after `n` observations.
pub fn generators_expected(d: Dimension, n: u64) -> Result<f64> {
    let dd = d.get();
    let mut total = if n == 0 { 1.0 } else { 0.0 };
    for k in 1..=dd {
        total += binomial_f64(dd, k) * interior_expected(Dimension::new(k)?, n)?;
    }
    Ok(total)
}

/// Poissonized interior count
/// `n^d ∫ t^{d-1} exp(-n t) dx` with `t = ∏(1 - x_j)`.
pub fn poissonized_interior(d: Dimension, n: u64) -> Result<f64> {
    let dd = d.get();
    if n == 0 {
        return Err(Error::InvalidArgument("the Poissonized count needs n ≥ 1".into()));
    }
    let nf = n as f64;
    if dd == 1 {
        return Ok(-(-nf).exp_m1());
    }
    let ln_pre = dd as f64 * nf.ln() - ln_factorial(dd - 1);
    reduced_integral(dd, nf, dd as f64, ln_pre, Kernel::Poisson(nf))
}

/// `n^d ∫ t^{d-1} (1 - t)^n dx`, the fixed-`n` counterpart of
/// [`poissonized_interior`]; it never exceeds the Poissonized value.
pub fn binomial_kernel_interior(d: Dimension, n: u64) -> Result<f64> {
    let dd = d.get();
    let nf = n as f64;
    if n == 0 {
        return Ok(0.0);
    }
    let ln_pre = dd as f64 * nf.ln() - ln_factorial(dd - 1);
    reduced_integral(dd, nf, dd as f64, ln_pre, Kernel::Binomial(nf))
}

/// `n^{d+1} ∫ t^{d+1} exp(-n t) dx`, an upper bound on the gap between
/// the Poissonized and fixed-`n` counts.
pub fn depoissonization_bound(d: Dimension, n: u64) -> Result<f64> {
    let dd = d.get();
    if n == 0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let ln_pre = (dd + 1) as f64 * nf.ln() - ln_factorial(dd - 1);
    reduced_integral(dd, nf, (dd + 2) as f64, ln_pre, Kernel::Poisson(nf))
}

/// The log-power expansion of the Poissonized count,
/// `(ln n)^{d-1} Σ_j (-1)^j Γ^(j)(d) / (j! (d-1-j)!) (ln n)^{-j}`.
pub fn poissonized_expansion(d: Dimension, n: u64) -> Result<f64> {
    let dd = d.get();
    if n < 2 {
        return Err(Error::InvalidArgument("the expansion needs n ≥ 2".into()));
    }
    let l = (n as f64).ln();
    let mut sum = 0.0;
    for j in 0..dd {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * gamma_derivative(j, dd as u32)?
            / ((ln_factorial(j) + ln_factorial(dd - 1 - j)).exp());
        sum += c * l.powi((dd - 1 - j) as i32);
    }
    Ok(sum)
}

/// Coefficients of `G(d, n) ≈ Σ_j a_{d,j} (ln n)^{d-1-j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCoefficients {
    pub d: usize,
    pub a: Vec<f64>,
}

impl AsymptoticCoefficients {
    /// Sum of the first `terms` terms of the expansion at `n`.
    pub fn truncated(&self, n: u64, terms: usize) -> f64 {
        let l = (n as f64).ln();
        self.a
            .iter()
            .take(terms)
            .enumerate()
            .map(|(j, a)| a * l.powi((self.d - 1 - j) as i32))
            .sum()
    }
}

/// `a_{d,j} = Σ_{k=0}^{j} C(d, d-j+k) (-1)^k Γ^(k)(d-j+k) / (k! (d-1-j)!)`.
pub fn asymptotic_coefficients(d: Dimension) -> Result<AsymptoticCoefficients> {
    let dd = d.get();
    let mut a = Vec::with_capacity(dd);
    for j in 0..dd {
        let mut sum = 0.0;
        for k in 0..=j {
            let x = dd - j + k;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let denom = (1..=k).product::<usize>() as f64 * (1..=dd - 1 - j).product::<usize>() as f64;
            sum += binomial_f64(dd, x) * sign * gamma_derivative(k, x as u32)? / denom;
        }
        a.push(sum);
    }
    Ok(AsymptoticCoefficients { d: dd, a })
}

/// `(ln n)^{d-1} Σ_j a_{d,j} (ln n)^{-j}`.
pub fn asymptotic_expected(d: Dimension, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("the expansion needs n ≥ 2".into()));
    }
    let coeffs = asymptotic_coefficients(d)?;
    Ok(coeffs.truncated(n, d.get()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationRow {
    pub n: u64,
    pub i_exact: f64,
    pub g_exact: f64,
    pub i_poissonized: Option<f64>,
    pub g_asymptotic: Option<f64>,
}

impl ExpectationRow {
    /// `|G_exact - G_asymptotic|` when the expansion was computed.
    pub fn abs_gap(&self) -> Option<f64> {
        self.g_asymptotic.map(|a| (self.g_exact - a).abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationTable {
    pub d: usize,
    pub rows: Vec<ExpectationRow>,
}

/// Evaluates one row per `n`, in parallel. The Poissonized column is skipped
/// for `n = 0` and the asymptotic one for `n < 2`, where they are undefined.
pub fn expectation_table(
    d: Dimension,
    ns: &[u64],
    poissonized: bool,
    asymptotic: bool,
) -> Result<ExpectationTable> {
    let rows = ns
        .par_iter()
        .map(|&n| {
            Ok(ExpectationRow {
                n,
                i_exact: interior_expected(d, n)?,
                g_exact: generators_expected(d, n)?,
                i_poissonized: if poissonized && n >= 1 { Some(poissonized_interior(d, n)?) } else { None },
                g_asymptotic: if asymptotic && n >= 2 { Some(asymptotic_expected(d, n)?) } else { None },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpectationTable { d: d.get(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::special::EULER_GAMMA;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn harmonic(n: u64) -> f64 {
        (1..=n).rev().map(|i| 1.0 / i as f64).sum()
    }

    #[test]
    fn below_dimension_is_zero() {
        assert_eq!(interior_expected(dim(3), 2).unwrap(), 0.0);
        assert_eq!(interior_expected(dim(3), 0).unwrap(), 0.0);
    }

    #[test]
    fn one_dimension() {
        for n in [1, 2, 50, 1_000_000] {
            assert_eq!(interior_expected(dim(1), n).unwrap(), 1.0);
            assert_eq!(generators_expected(dim(1), n).unwrap(), 1.0);
        }
        assert_eq!(generators_expected(dim(1), 0).unwrap(), 1.0);
    }

    #[test]
    fn no_observations_means_only_the_origin() {
        for d in 1..=6 {
            assert_eq!(generators_expected(dim(d), 0).unwrap(), 1.0);
        }
    }

    #[test]
    fn planar_count_is_one_plus_harmonic() {
        // γ = ρ + 1 and E[ρ] = H_n
        for n in [1, 2, 3, 10, 100, 1000, 100_000, 10_000_000] {
            let g = generators_expected(dim(2), n).unwrap();
            assert!((g - (1.0 + harmonic(n))).abs() < 1e-9, "n = {n}: {g}");
        }
    }

    #[test]
    fn poissonized_one_dimension() {
        for n in [1, 3, 20] {
            let v = poissonized_interior(dim(1), n).unwrap();
            assert!((v - (1.0 - (-(n as f64)).exp())).abs() < 1e-15);
        }
        assert!(poissonized_interior(dim(2), 0).is_err());
    }

    #[test]
    fn planar_coefficients() {
        let a = asymptotic_coefficients(dim(2)).unwrap();
        assert_eq!(a.a[0], 1.0);
        assert!((a.a[1] - (1.0 + EULER_GAMMA)).abs() < 1e-15);
        assert_eq!(asymptotic_coefficients(dim(1)).unwrap().a, vec![1.0]);
    }

    #[test]
    fn leading_coefficient_is_one() {
        for d in 1..=9 {
            assert_eq!(asymptotic_coefficients(dim(d)).unwrap().a[0], 1.0);
        }
        assert!(asymptotic_coefficients(dim(10)).is_err());
    }

    #[test]
    fn one_dimensional_expansion_is_constant() {
        for n in [2, 10, 1_000_000] {
            assert_eq!(asymptotic_expected(dim(1), n).unwrap(), 1.0);
        }
        assert!(asymptotic_expected(dim(2), 1).is_err());
    }

    #[test]
    fn table_skips_undefined_columns() {
        let t = expectation_table(dim(2), &[0, 1, 10], true, true).unwrap();
        assert_eq!(t.rows[0].g_exact, 1.0);
        assert_eq!(t.rows[0].i_poissonized, None);
        assert!(t.rows[1].i_poissonized.is_some());
        assert_eq!(t.rows[1].g_asymptotic, None);
        assert!(t.rows[2].abs_gap().is_some());
    }

    #[test]
    fn huge_n_stays_finite() {
        for d in 2..=8 {
            let v = generators_expected(dim(d), 1_000_000_000).unwrap();
            assert!(v.is_finite() && v > 0.0);
        }
    }
}
