//! Independent oracles shared by the integration tests.
//!
//! Nothing in here calls back into the implementation paths under test:
//! quadrature is plain adaptive Simpson, the normal CDF oracle is a Maclaurin
//! series for erf, and the KS statistic works straight off the sorted sample.

#![allow(dead_code)]

/// Adaptive Simpson quadrature of `f` on [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fb, m, fm, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, fm, lm, flm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, fb, rm, frm, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson over a panel grid. Plain adaptive Simpson can accept a
/// spuriously tiny answer when its three initial probes all land on near-zero
/// values (a peaked or symmetric integrand); pre-splitting at the supplied
/// breakpoints removes that failure mode.
pub fn adaptive_simpson_grid<F: Fn(f64) -> f64>(f: &F, breakpoints: &[f64], tol: f64) -> f64 {
    let per_panel = tol / breakpoints.len() as f64;
    breakpoints
        .windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], per_panel))
        .sum()
}

/// Breakpoints covering (0, 1] densely: geometric decades from 1e-100 up to
/// 0.1, then 36 uniform panels to 1. Suits unit-interval densities whose
/// mass can sit at scales like e^{−α|b|} for large α.
pub fn unit_interval_breakpoints() -> Vec<f64> {
    let mut pts: Vec<f64> = (1..=100).map(|i| 10f64.powi(-101 + i)).collect(); // 1e-100 ..= 1e-1
    for i in 1..=36 {
        pts.push(0.1 + 0.9 * i as f64 / 36.0);
    }
    pts
}

/// Uniform breakpoints, `n` panels on [a, b].
pub fn uniform_breakpoints(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// Φ(x) by the Maclaurin series of erf (oracle route, independent of the
/// rational-approximation kernel under test). Accurate to ~1e-15 for
/// |x| ≤ 6; the series is alternating with factorially shrinking terms.
pub fn phi_oracle(x: f64) -> f64 {
    let z = x / std::f64::consts::SQRT_2;
    // erf(z) = 2/√π Σ (−1)^n z^{2n+1} / (n!(2n+1))
    let mut term = z;
    let mut sum = z;
    let mut n = 0usize;
    while term.abs() > 1e-18 && n < 300 {
        n += 1;
        term *= -z * z / n as f64;
        sum += term / (2.0 * n as f64 + 1.0);
    }
    let erf = 2.0 / std::f64::consts::PI.sqrt() * sum;
    0.5 * (1.0 + erf)
}

/// Upper-tail oracle 1 − Φ(x) for x ≥ 3 via the Mills-ratio continued
/// fraction m(x) = 1/(x + 1/(x + 2/(x + 3/(x + …)))), evaluated bottom-up
/// with enough levels for full double accuracy. Complements [`phi_oracle`],
/// whose Maclaurin route loses absolute accuracy out in the tail.
pub fn normal_tail_oracle_cf(x: f64) -> f64 {
    let mut frac = 0.0;
    for k in (1..=120u32).rev() {
        frac = f64::from(k) / (x + frac);
    }
    let mills = 1.0 / (x + frac);
    let phi = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    phi * mills
}

/// Mills-ratio asymptotic series for e^{x²/2}(1 − Φ(x)), valid for large x:
/// (1/(x√(2π)))·(1 − 1/x² + 3/x⁴ − 15/x⁶ + 105/x⁸).
pub fn scaled_tail_asymptotic(x: f64) -> f64 {
    let x2 = x * x;
    (1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2) + 105.0 / (x2 * x2 * x2 * x2))
        / (x * (2.0 * std::f64::consts::PI).sqrt())
}

/// χ²₃ density w^{1/2} e^{−w/2} / √(2π).
pub fn chi2_3_density(w: f64) -> f64 {
    if w <= 0.0 {
        return 0.0;
    }
    w.sqrt() * (-0.5 * w).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Kolmogorov–Smirnov statistic of a sample against a model CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite sample"));
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let model = cdf(x);
        let above = (i + 1) as f64 / n;
        let below = i as f64 / n;
        d = d.max((above - model).abs()).max((below - model).abs());
    }
    d
}

/// The 5% KS acceptance bound 1.36/√n.
pub fn ks_bound(n: usize) -> f64 {
    1.36 / (n as f64).sqrt()
}

/// Argmax of `f` by golden-section search refined from a coarse scan.
///
/// `f` must be unimodal on (lo, hi); returns the maximizer to ~`tol`.
pub fn numeric_argmax<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    // coarse scan to localize the peak
    let steps = 4000usize;
    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=steps {
        let x = lo + (hi - lo) * i as f64 / steps as f64;
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut a = lo + (hi - lo) * best_i.saturating_sub(1) as f64 / steps as f64;
    let mut b = lo + (hi - lo) * (best_i + 1).min(steps) as f64 / steps as f64;
    // golden-section refinement
    let inv_phi = 0.6180339887498949;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Sample mean.
pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample variance (denominator n).
pub fn variance(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64
}
