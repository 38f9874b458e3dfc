//! The bimodal normal BN(k) distribution.
//!
//! BN(k) has density b^{2k}φ(b)/c with normalizer c = ∏_{j=1}^{k}(2j−1).
//! Squaring a BN(k) variate gives χ²_{2k+1}, and conversely a random sign
//! times √(χ²_{2k+1}) is BN(k); the CDF below leans on that identity.

use crate::numeric::{chi_square_cdf, FRAC_1_SQRT_2PI};
use crate::{Error, Result};

/// Bimodal normal distribution of order k ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BimodalNormal {
    k: u32,
}

impl BimodalNormal {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("bimodal normal order k must be >= 1".into()));
        }
        Ok(Self { k })
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    /// Degrees of freedom of the squared variate, 2k + 1.
    pub fn chi_square_dof(&self) -> u32 {
        2 * self.k + 1
    }

    /// Normalizer c = ∏_{j=1}^{k}(2j−1), the double factorial (2k−1)!!.
    ///
    /// Small orders multiply directly; larger ones go through
    /// [`log_normalizer`](Self::log_normalizer) to avoid intermediate
    /// overflow.
    pub fn normalizer(&self) -> f64 {
        if self.k <= 50 {
            (1..=self.k).map(|j| f64::from(2 * j - 1)).product()
        } else {
            self.log_normalizer().exp()
        }
    }

    /// ln c via the identity (2k−1)!! = 2^k Γ(k + 1/2)/√π.
    pub fn log_normalizer(&self) -> f64 {
        let k = f64::from(self.k);
        let lgamma = crate::numeric::log_gamma(k + 0.5).expect("k + 1/2 > 0");
        k * std::f64::consts::LN_2 + lgamma - 0.5 * std::f64::consts::PI.ln()
    }

    /// Density b^{2k}φ(b)/c, evaluated in log space so large orders cannot
    /// overflow b^{2k}. Zero exactly at b = 0 and symmetric in b.
    pub fn pdf(&self, b: f64) -> f64 {
        if b == 0.0 {
            return 0.0;
        }
        if !b.is_finite() {
            return 0.0;
        }
        let log_pdf = 2.0 * f64::from(self.k) * b.abs().ln() - self.log_normalizer()
            - 0.5 * b * b
            + FRAC_1_SQRT_2PI.ln();
        log_pdf.exp()
    }

    /// CDF via the chi-square link: F(b) = ½F_{χ²}(b²) + ½ for b ≥ 0 and
    /// the symmetric reflection for b < 0.
    pub fn cdf(&self, b: f64) -> f64 {
        if b.is_nan() {
            return f64::NAN;
        }
        let body = chi_square_cdf(b * b, self.chi_square_dof()).expect("b^2 >= 0");
        if b >= 0.0 {
            0.5 * body + 0.5
        } else {
            0.5 - 0.5 * body
        }
    }

    /// The two maximizers (−√(2k), +√(2k)) of the density.
    ///
    /// Stationary points of b^{2k}e^{−b²/2} solve 2k/b − b = 0; the second
    /// derivative is negative only at b² = 2k.
    pub fn modes(&self) -> (f64, f64) {
        let m = (2.0 * f64::from(self.k)).sqrt();
        (-m, m)
    }
}

/// Convenience free function: the BN(k) normalizer ∏(2j−1).
pub fn bn_normalizer(k: u32) -> Result<f64> {
    Ok(BimodalNormal::new(k)?.normalizer())
}
