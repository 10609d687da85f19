//! Test-only oracles, independent of the library's special-function code.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Γ((ν+1)/2) / Γ(ν/2) for integer ν by the recurrence r(ν+2) = r(ν)·(ν+1)/ν.
pub fn t_gamma_ratio(df: u32) -> f64 {
    let mut r = if df % 2 == 1 { 1.0 / PI.sqrt() } else { PI.sqrt() / 2.0 };
    let mut nu = if df % 2 == 1 { 1 } else { 2 };
    while nu < df {
        r *= f64::from(nu + 1) / f64::from(nu);
        nu += 2;
    }
    r
}

pub fn t_density(t: f64, df: u32) -> f64 {
    let nu = f64::from(df);
    t_gamma_ratio(df) / (nu * PI).sqrt() * (1.0 + t * t / nu).powf(-(nu + 1.0) / 2.0)
}

/// Composite Simpson rule with `panels` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels.is_multiple_of(2));
    let h = (b - a) / panels as f64;
    let mut s = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// CDF of Student's t by integrating the density from 0 (density is symmetric).
pub fn t_cdf_by_quadrature(t: f64, df: u32) -> f64 {
    if t == 0.0 {
        return 0.5;
    }
    let panels = ((t.abs() * 20_000.0).ceil() as usize).max(2_000) * 2;
    let half = simpson(|u| t_density(u, df), 0.0, t.abs(), panels);
    if t > 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// Bisection of an increasing function for `f(x) = target`.
pub fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn sample_cov(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>() / (n - 1.0)
}
