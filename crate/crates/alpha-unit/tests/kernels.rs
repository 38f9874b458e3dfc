//! Oracle checks for the special-function kernels: series, asymptotic, and
//! quadrature routes that never touch the rational approximations under test.

mod common;

use alpha_unit::numeric::{chi_square_cdf, scaled_normal_tail, std_normal_cdf, std_normal_pdf};
use common::{adaptive_simpson, chi2_3_density, phi_oracle, scaled_tail_asymptotic};

#[test]
fn normal_cdf_matches_series_oracle_in_the_body() {
    // The Maclaurin route keeps absolute accuracy only while e^{x²/2} stays
    // small; the tail is covered by the continued-fraction oracle below.
    let mut x = -3.0;
    while x <= 3.0 {
        let got = std_normal_cdf(x);
        let want = phi_oracle(x);
        assert!((got - want).abs() <= 5e-14, "x={x}: {got} vs {want}");
        x += 0.093;
    }
    assert!((std_normal_cdf(1.96) - phi_oracle(1.96)).abs() < 1e-15);
    assert!((std_normal_cdf(1.96) - 0.9750021048517795).abs() < 1e-15);
}

#[test]
fn normal_cdf_matches_continued_fraction_oracle_in_the_tail() {
    // Both routes evaluate an e^{−x²/2}-scale quantity, so their shared
    // noise floor grows with the exponent's argument rounding, ~x²·ε/2.
    let mut x = 3.0;
    while x <= 37.0 {
        let got = std_normal_cdf(-x); // lower tail carries the precision
        let want = common::normal_tail_oracle_cf(x);
        let tol_rel = 1e-14 + 4e-16 * x * x;
        assert!(
            (got - want).abs() <= tol_rel * want,
            "x={x}: {got} vs {want} (rel {:.2e})",
            (got - want).abs() / want
        );
        x += 0.517;
    }
}

#[test]
fn scaled_tail_matches_quadrature_oracle() {
    // e^{x²/2}(1−Φ(x)) = ∫₀^∞ e^{−t²/2− xt} dt / √(2π), a cancellation-free
    // integral representation valid for every x ≥ 0.
    let norm = (2.0 * std::f64::consts::PI).sqrt();
    for x in [0.0, 0.3, 0.468, 0.47, 1.0, 2.0, 3.99, 4.01, 6.0, 10.0, 30.0] {
        let f = |t: f64| (-0.5 * t * t - x * t).exp() / norm;
        let upper = 45.0 / (1.0 + x); // integrand is below 1e-300 past here
        let want = adaptive_simpson(&f, 0.0, upper, 1e-15);
        let got = scaled_normal_tail(x).unwrap();
        assert!(
            (got - want).abs() <= 1e-12 * want,
            "x={x}: {got} vs {want} (rel {:.2e})",
            (got - want).abs() / want
        );
    }
}

#[test]
fn scaled_tail_matches_mills_asymptote() {
    for x in [50.0, 100.0, 1e3, 1e4] {
        let got = scaled_normal_tail(x).unwrap();
        let want = scaled_tail_asymptotic(x);
        assert!((got - want).abs() <= 1e-6 * want, "x={x}");
    }
    // at x = 100 the leading term alone is 1/(100√(2π)) ≈ 0.0039894
    let leading = 1.0 / (100.0 * (2.0 * std::f64::consts::PI).sqrt());
    assert!((scaled_normal_tail(100.0).unwrap() - leading).abs() < 1e-6);
}

#[test]
fn chi_square_cdf_matches_simpson_on_the_density() {
    let mut w = 0.5;
    while w <= 30.0 {
        let got = chi_square_cdf(w, 3).unwrap();
        let want = adaptive_simpson(&chi2_3_density, 0.0, w, 1e-12);
        assert!((got - want).abs() <= 1e-8, "w={w}: {got} vs {want}");
        w += 1.37;
    }
}

#[test]
fn chi_square_cdf_other_dofs_against_quadrature() {
    // density w^{a−1} e^{−w/2} / (2^a Γ(a)), a = dof/2. The head [0, 1] is
    // integrated in t = √w, which removes the integrable singularity the
    // dof = 1 density has at the origin.
    for dof in [1u32, 5, 60] {
        let a = f64::from(dof) / 2.0;
        let log_norm = a * 2.0f64.ln() + alpha_unit::numeric::log_gamma(a).unwrap();
        let density = move |w: f64| {
            if w <= 0.0 {
                0.0
            } else {
                ((a - 1.0) * w.ln() - 0.5 * w - log_norm).exp()
            }
        };
        let head_in_sqrt = move |t: f64| 2.0 * t * density(t * t);
        for w in [0.9, 4.0, 20.0, 70.0] {
            let got = chi_square_cdf(w, dof).unwrap();
            let head_end = w.min(1.0);
            let want = adaptive_simpson(&head_in_sqrt, 0.0, head_end.sqrt(), 1e-13)
                + if w > 1.0 { adaptive_simpson(&density, 1.0, w, 1e-13) } else { 0.0 };
            assert!((got - want).abs() <= 1e-9, "dof={dof} w={w}: {got} vs {want}");
        }
    }
}

#[test]
fn normal_pdf_integrates_to_cdf() {
    // Φ(b) − Φ(a) against Simpson on φ
    for (a, b) in [(-1.0, 1.0), (-3.0, 0.5), (0.0, 4.0)] {
        let want = adaptive_simpson(&std_normal_pdf, a, b, 1e-14);
        let got = std_normal_cdf(b) - std_normal_cdf(a);
        assert!((got - want).abs() < 1e-12);
    }
}
