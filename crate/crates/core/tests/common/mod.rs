#![allow(dead_code)]

use pareto_records::{Dimension, Point};
use statrs::distribution::{ChiSquared, ContinuousCDF};

pub fn dim(d: usize) -> Dimension {
    Dimension::new(d).unwrap()
}

pub fn p(c: &[f64]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

/// Mean and standard error of the mean.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Pearson χ² statistic and upper-tail p-value.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> (f64, f64) {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let df = (observed.len() - 1) as f64;
    (stat, ChiSquared::new(df).unwrap().sf(stat))
}

/// Kolmogorov tail `Q(λ) = 2 Σ (-1)^{k-1} e^{-2k²λ²}`.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn ks_p(d: f64, n_eff: f64) -> f64 {
    let s = n_eff.sqrt();
    kolmogorov_q((s + 0.12 + 0.11 / s) * d)
}

/// One-sample Kolmogorov–Smirnov test against the CDF `cdf`.
pub fn ks_one_sample(sample: &[f64], cdf: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let d = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max);
    (d, ks_p(d, n))
}

/// Two-sample Kolmogorov–Smirnov test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    (d, ks_p(d, na * nb / (na + nb)))
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { x } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = m as f64 * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((0.5 * (x + 1.0), 0.5 * w));
    }
    rule
}

/// `n(n-1)…(n-d+1) ∫_{[0,1]^d} t^{d-1} (1-t)^{n-d} dx` with `t = ∏(1 - x_j)`,
/// by a tensor Gauss–Legendre rule. The integrand is a polynomial of degree
/// `n - 1` in each variable, so the rule is exact once it has `n/2 + 1` nodes.
pub fn interior_expected_by_cube(d: usize, n: u64) -> f64 {
    if n < d as u64 {
        return 0.0;
    }
    let rule = gauss_legendre(n as usize / 2 + 2);
    let m = rule.len();
    let mut idx = vec![0usize; d];
    let mut total = 0.0;
    loop {
        let mut w = 1.0;
        let mut t = 1.0;
        for &i in &idx {
            w *= rule[i].1;
            t *= 1.0 - rule[i].0;
        }
        total += w * t.powi(d as i32 - 1) * (1.0 - t).powi((n - d as u64) as i32);
        let mut k = 0;
        loop {
            if k == d {
                let falling: f64 = (0..d as u64).map(|i| (n - i) as f64).product();
                return falling * total;
            }
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn harmonic(n: u64) -> f64 {
    (1..=n).rev().map(|i| 1.0 / i as f64).sum()
}

/// Draws `draws` records from the region left by the single record
/// `(0.4, 0.6)`, which is the union of the overlapping orthants of `(0.4, 0)`
/// and `(0, 0.6)`, and compares cell counts with exact probabilities by χ².
pub fn two_generator_cell_test(draws: usize, seed: u64) -> (f64, f64) {
    use pareto_records::{next_record, RandomSource, RecordState, Variant};
    let mut state = RecordState::new(dim(2), Variant::Efficient).unwrap();
    state.insert(p(&[0.4, 0.6]), 0).unwrap();
    assert_eq!(state.generators().len(), 2);

    let xs = [0.0, 0.2, 0.4, 0.7, 1.0];
    let ys = [0.0, 0.3, 0.6, 0.8, 1.0];
    // region volume by inclusion–exclusion: 0.6 + 0.4 - 0.24
    let region = 0.6 * 1.0 + 1.0 * 0.4 - 0.6 * 0.4;
    let mut cells = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let inside = !(xs[i + 1] <= 0.4 && ys[j + 1] <= 0.6);
            if inside {
                cells.push((i, j, (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]) / region));
            }
        }
    }
    let mut counts = vec![0u64; cells.len()];
    let mut rng = RandomSource::new(seed);
    for _ in 0..draws {
        let (r, _) = next_record(&state, &mut rng).unwrap();
        let i = xs.partition_point(|&x| x <= r[0]) - 1;
        let j = ys.partition_point(|&y| y <= r[1]) - 1;
        let cell = cells.iter().position(|&(a, b, _)| a == i && b == j).expect("sample outside the region");
        counts[cell] += 1;
    }
    let probs: Vec<f64> = cells.iter().map(|c| c.2).collect();
    chi_square(&counts, &probs)
}
