use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

const GAMMA_LO: f64 = 0.0;
const GAMMA_HI: f64 = 6.0;

/// Truncated power law `q(k) ∝ k^-γ` on `k_min..=k_max`.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeDistribution {
    pub k_min: u32,
    pub k_max: u32,
    pub gamma: f64,
    probs: Vec<f64>,
    #[serde(skip)]
    index: WeightedIndex<f64>,
}

fn weights(k_min: u32, k_max: u32, gamma: f64) -> Vec<f64> {
    (k_min..=k_max).map(|k| (k as f64).powf(-gamma)).collect()
}

fn mean_of(k_min: u32, k_max: u32, gamma: f64) -> f64 {
    let w = weights(k_min, k_max, gamma);
    let total: f64 = w.iter().sum();
    w.iter().zip(k_min..).map(|(w, k)| w * k as f64).sum::<f64>() / total
}

/// Exponent whose truncated power law on `k_min..=k_max` has mean `d`,
/// found by bisection on `[0, 6]`.
pub fn calibrate_gamma(d: f64, k_min: u32, k_max: u32) -> Result<f64> {
    if k_min == 0 || k_max < k_min {
        return Err(Error::InvalidParameter(format!("bad degree support {k_min}..={k_max}")));
    }
    if k_min == k_max {
        return if (d - k_min as f64).abs() < 1e-9 {
            Ok(0.0)
        } else {
            Err(Error::InvalidParameter(format!("mean {d} impossible on point mass {k_min}")))
        };
    }
    let (hi_mean, lo_mean) = (mean_of(k_min, k_max, GAMMA_LO), mean_of(k_min, k_max, GAMMA_HI));
    if !(lo_mean..=hi_mean).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "mean degree {d} outside achievable range [{lo_mean:.3}, {hi_mean:.3}]"
        )));
    }
    let (mut lo, mut hi) = (GAMMA_LO, GAMMA_HI);
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..100 {
        mid = 0.5 * (lo + hi);
        let m = mean_of(k_min, k_max, mid);
        if (m - d).abs() < 1e-9 {
            break;
        }
        // the mean falls as γ grows
        if m > d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

impl DegreeDistribution {
    pub fn power_law(k_min: u32, k_max: u32, gamma: f64) -> Result<Self> {
        if k_min == 0 || k_max < k_min || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "bad power law k={k_min}..={k_max}, gamma={gamma}"
            )));
        }
        let w = weights(k_min, k_max, gamma);
        let total: f64 = w.iter().sum();
        let probs: Vec<f64> = w.iter().map(|x| x / total).collect();
        let index = WeightedIndex::new(&probs).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(Self {
            k_min,
            k_max,
            gamma,
            probs,
            index,
        })
    }

    pub fn calibrated(d: f64, k_min: u32, k_max: u32) -> Result<Self> {
        Self::power_law(k_min, k_max, calibrate_gamma(d, k_min, k_max)?)
    }

    /// The onion model's distribution for mean degree `d` on a network of
    /// `n` vertices: support `2..=ceil(sqrt(n d))`, or a point mass at 2
    /// when `d <= 2`.
    pub fn for_network(d: u32, n: usize) -> Result<Self> {
        if d <= 2 {
            return Self::power_law(2, 2, 0.0);
        }
        let k_max = ((n as f64 * d as f64).sqrt().ceil() as u32).max(d + 1);
        Self::calibrated(d as f64, 2, k_max)
    }

    pub fn prob(&self, k: u32) -> f64 {
        if (self.k_min..=self.k_max).contains(&k) {
            self.probs[(k - self.k_min) as usize]
        } else {
            0.0
        }
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().zip(self.k_min..).map(|(p, k)| p * k as f64).sum()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        self.k_min + self.index.sample(rng) as u32
    }
}
