//! The Alpha-Unit distribution AU(α) on (0, 1].
//!
//! With u = ln(x)/α the density is f(x | α) = (2/(xα)) u² φ(u) and the CDF is
//! F(x | α) = 2Φ(u) − 2uφ(u). The r-th moment has the closed form
//!
//! E[X^r] = 2 e^{z²/2} [(1 + z²)(1 − Φ(z)) − zφ(z)],  z = rα,
//!
//! which is evaluated here through the scaled normal tail: since
//! e^{z²/2} φ(z) = 1/√(2π) exactly,
//!
//! E[X^r] = 2(1 + z²)·e^{z²/2}(1 − Φ(z)) − 2z/√(2π),
//!
//! and the first factor never overflows no matter how large rα gets.

use crate::numeric::{
    scaled_normal_tail, std_normal_cdf, std_normal_pdf, Tolerance, FRAC_1_SQRT_2PI,
};
use crate::{Error, Result};
use serde::Serialize;

/// Alpha-Unit distribution with scale parameter α > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaUnit {
    alpha: f64,
}

/// A highest-density interval: the shortest interval carrying `mass`
/// probability; for a unimodal density its endpoints have equal density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HdiInterval {
    pub lower: f64,
    pub upper: f64,
    pub mass: f64,
}

impl AlphaUnit {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be positive and finite, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn check_support(&self, x: f64) -> Result<()> {
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::Domain(format!("x must lie in (0, 1], got {x}")));
        }
        Ok(())
    }

    /// Density (2/(xα)) (ln(x)/α)² φ(ln(x)/α); zero at x = 1, unimodal on (0, 1).
    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        let u = x.ln() / self.alpha;
        Ok(2.0 / (x * self.alpha) * u * u * std_normal_pdf(u))
    }

    /// Log-density in one-parameter exponential-family form,
    /// c(α)T(x) + d(α) + S(x) with
    ///
    /// c(α) = −1/(2α²), T(x) = [ln x]², d(α) = −3 ln α,
    /// S(x) = ln(2 [ln x]² / (x√(2π))).
    ///
    /// Defined for x strictly inside (0, 1); at x = 1 the density vanishes
    /// and the log-density is −∞, which is rejected as a boundary case.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("log-density needs x in (0, 1), got {x}")));
        }
        let lx = x.ln();
        let c_t = -lx * lx / (2.0 * self.alpha * self.alpha);
        let d = -3.0 * self.alpha.ln();
        let s = (2.0 * lx * lx).ln() - lx - 0.5 * (2.0 * std::f64::consts::PI).ln();
        Ok(c_t + d + s)
    }

    /// CDF 2Φ(u) − 2uφ(u) with u = ln(x)/α ≤ 0; both terms are nonnegative
    /// on the support so there is no cancellation in the lower tail.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        let u = x.ln() / self.alpha;
        Ok((2.0 * std_normal_cdf(u) - 2.0 * u * std_normal_pdf(u)).clamp(0.0, 1.0))
    }

    /// Quantile function: solves Φ(u) − uφ(u) − p/2 = 0 for u = ln(x)/α on
    /// [−40, 0] and maps back through x = e^{αu}.
    ///
    /// The kernel g(u) = Φ(u) − uφ(u) has derivative u²φ(u) ≥ 0, so it is
    /// monotone and bisection is safe; F(e^{−40α}) < 10⁻³⁰⁰ for any usable α,
    /// so the bracket covers every p in (0, 1]. The bisection runs on the
    /// bracket width rather than |g|: in the far tail g is flat at the
    /// underflow floor, and a residual-based stop would accept a grossly
    /// wrong u long before the root.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Domain(format!("quantile needs p in (0, 1], got {p}")));
        }
        if p == 1.0 {
            return Ok(1.0);
        }
        let target = 0.5 * p;
        let g = |u: f64| std_normal_cdf(u) - u * std_normal_pdf(u) - target;
        // g(0) = (1 − p)/2 > 0 and g(−40) ≈ −p/2 < 0
        let mut lo = -40.0f64;
        let mut hi = 0.0f64;
        let mut u = 0.5 * (lo + hi);
        for _ in 0..200 {
            if g(u) < 0.0 {
                lo = u;
            } else {
                hi = u;
            }
            u = 0.5 * (lo + hi);
            if hi - lo <= 1e-13 * (1.0 + u.abs()) {
                break;
            }
        }
        // Newton polish with g'(u) = u²φ(u); skipped automatically when the
        // derivative underflows in the deep tail.
        let mut gu = g(u);
        for _ in 0..3 {
            let d = u * u * std_normal_pdf(u);
            if d <= 0.0 || !d.is_finite() || gu == 0.0 {
                break;
            }
            let next = u - gu / d;
            if !next.is_finite() || next < lo || next > hi {
                break;
            }
            let gnext = g(next);
            if gnext.abs() >= gu.abs() {
                break;
            }
            u = next;
            gu = gnext;
        }
        Ok((self.alpha * u).exp().min(1.0))
    }

    /// The r-th raw moment E[X^r] for r ≥ 0, via the overflow-free form
    /// 2(1 + r²α²)·scaled_normal_tail(rα) − 2rα/√(2π).
    pub fn moment(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("moment order must satisfy r >= 0, got {r}")));
        }
        let z = r * self.alpha;
        let tail = scaled_normal_tail(z).expect("r*alpha >= 0");
        Ok(2.0 * (1.0 + z * z) * tail - 2.0 * z * FRAC_1_SQRT_2PI)
    }

    pub fn mean(&self) -> f64 {
        self.moment(1.0).expect("r = 1")
    }

    pub fn variance(&self) -> f64 {
        let m1 = self.mean();
        self.moment(2.0).expect("r = 2") - m1 * m1
    }

    /// The unique mode exp(−(α² + √(α⁴ + 8α²))/2).
    ///
    /// In t = −ln x > 0 the stationary-point equation of the log-density is
    /// t² − α²t − 2α² = 0; only the positive root keeps x inside (0, 1).
    pub fn mode(&self) -> f64 {
        let a2 = self.alpha * self.alpha;
        let t = 0.5 * (a2 + (a2 * a2 + 8.0 * a2).sqrt());
        (-t).exp()
    }

    /// Moment-generating function ψ(t) = Σ_{k≥0} t^k E[X^k]/k!.
    ///
    /// Because every moment lies in (0, 1], the series tail after K terms is
    /// bounded by Σ_{k>K} |t|^k/k!; summation stops once the next-term bound
    /// |t|^{K+1}/(K+1)! drops below `tol.abs_tol` in the decreasing regime.
    pub fn mgf(&self, t: f64, tol: &Tolerance) -> f64 {
        let mut sum = 1.0;
        let mut coeff = 1.0; // t^k / k!
        let mut k = 0usize;
        loop {
            k += 1;
            coeff *= t / k as f64;
            if coeff == 0.0 {
                break;
            }
            let moment = self.moment(k as f64).expect("k >= 0");
            sum += coeff * moment;
            let next_bound = coeff.abs() * t.abs() / (k as f64 + 1.0);
            if next_bound < tol.abs_tol && (k as f64) >= t.abs() {
                break;
            }
            if k >= 2000 {
                break;
            }
        }
        sum
    }

    /// Highest-density interval of probability `mass` in (0, 1).
    ///
    /// Parameterized by the lower-tail probability q: the candidate interval
    /// [Q(q), Q(q + mass)] carries the requested mass at every iterate by
    /// construction, and the endpoint-density gap
    /// h(q) = f(Q(q)) − f(Q(q + mass)) changes sign exactly once because the
    /// density is unimodal. Bisection on q therefore converges to the unique
    /// equal-density interval.
    pub fn hdi(&self, mass: f64) -> Result<HdiInterval> {
        if !(mass > 0.0 && mass < 1.0) {
            return Err(Error::Domain(format!("HDI mass must lie in (0, 1), got {mass}")));
        }
        let mut lo = 1e-15;
        let mut hi = (1.0 - mass) - 1e-15;
        if hi <= lo {
            return Err(Error::Domain(format!("mass {mass} leaves no room for a tail search")));
        }
        let gap = |q: f64| -> Result<f64> {
            let a = self.quantile(q)?;
            let b = self.quantile(q + mass)?;
            Ok(self.pdf(a)? - self.pdf(b)?)
        };
        let g_lo = gap(lo)?;
        let g_hi = gap(hi)?;
        if g_lo > 0.0 || g_hi < 0.0 {
            // Should not happen for a unimodal density; bail out rather than
            // return a non-HDI interval.
            return Err(Error::NoSignChange { lo, hi });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let g_mid = gap(mid)?;
            if g_mid <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        let q = 0.5 * (lo + hi);
        let lower = self.quantile(q)?;
        let upper = self.quantile(q + mass)?;
        Ok(HdiInterval { lower, upper, mass })
    }
}
