//! Derivatives of the Gamma function at positive integers.
//!
//! `Γ = exp(ln Γ)` and `(ln Γ)^(k+1) = ψ^(k)`, so the derivatives follow from
//! the Faà di Bruno (complete Bell polynomial) recurrence
//! `Γ^(j) = Σ_{k<j} C(j-1, k) ψ^(k) Γ^(j-1-k)`. The polygammas at `1` are
//! `ψ(1) = -γ` and `ψ^(k)(1) = (-1)^(k+1) k! ζ(k+1)`, and they are carried to
//! larger integers with `ψ^(k)(x+1) = ψ^(k)(x) + (-1)^k k! / x^(k+1)`.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// `ζ(2), …, ζ(9)`.
const ZETA: [f64; 8] = [
    1.644_934_066_848_226_436_472_415_166_646,
    1.202_056_903_159_594_285_399_738_161_511,
    1.082_323_233_711_138_191_516_003_696_541,
    1.036_927_755_143_369_926_331_365_486_457,
    1.017_343_061_984_449_139_714_517_929_790,
    1.008_349_277_381_922_826_839_797_549_849,
    1.004_077_356_197_944_339_378_685_238_508,
    1.002_008_392_826_082_214_417_852_769_232,
];

/// Highest derivative order supported.
pub const MAX_DERIVATIVE: usize = 8;

/// Largest integer argument whose factorial is finite in `f64`.
pub const MAX_ARGUMENT: u32 = 171;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `ψ^(k)(x)` for integer `x ≥ 1` and `k ≤ 7`.
pub fn polygamma_at_integer(k: usize, x: u32) -> Result<f64> {
    if k >= MAX_DERIVATIVE {
        return Err(Error::InvalidArgument(format!("polygamma order {k} not supported")));
    }
    if x == 0 || x > MAX_ARGUMENT {
        return Err(Error::InvalidArgument(format!("polygamma argument {x} not supported")));
    }
    let k_fact = factorial(k as u32);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let at_one = if k == 0 { -EULER_GAMMA } else { -sign * k_fact * ZETA[k - 1] };
    // Sum the recurrence terms smallest first.
    let tail: f64 = (1..x).rev().map(|i| (i as f64).powi(-(k as i32 + 1))).sum();
    Ok(at_one + sign * k_fact * tail)
}

/// `Γ^(j)(x)` for `0 ≤ j ≤ 8` and integer `1 ≤ x ≤ 171`.
pub fn gamma_derivative(j: usize, x: u32) -> Result<f64> {
    if j > MAX_DERIVATIVE {
        return Err(Error::InvalidArgument(format!(
            "Gamma derivative order {j} exceeds {MAX_DERIVATIVE}"
        )));
    }
    if x == 0 || x > MAX_ARGUMENT {
        return Err(Error::InvalidArgument(format!("Gamma derivative argument {x} not supported")));
    }
    let psi: Vec<f64> = (0..j).map(|k| polygamma_at_integer(k, x)).collect::<Result<_>>()?;
    let mut derivs = Vec::with_capacity(j + 1);
    derivs.push(factorial(x - 1));
    for order in 1..=j {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for k in 0..order {
            acc += binom * psi[k] * derivs[order - 1 - k];
            binom = binom * (order - 1 - k) as f64 / (k + 1) as f64;
        }
        derivs.push(acc);
    }
    Ok(derivs[j])
}
