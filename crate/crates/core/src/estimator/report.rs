use std::time::Duration;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Outcome of [`estimate`](super::estimate): every trial's product `X_t`
/// (the sample is `Z_t = X_t / aut`) plus summary statistics in exact
/// arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateReport {
    aut: BigUint,
    products: Vec<BigUint>,
    seed: u64,
    targets: Option<(f64, f64)>,
    batch_means: Vec<BigRational>,
    point_estimate: BigRational,
    mean: BigRational,
    variance: BigRational,
    sum: BigUint,
    sum_sq: BigUint,
    elapsed: Duration,
}

impl EstimateReport {
    pub(crate) fn new(
        aut: BigUint,
        products: Vec<BigUint>,
        seed: u64,
        targets: Option<(f64, f64)>,
        batches: Option<(Vec<BigRational>, BigRational)>,
    ) -> EstimateReport {
        let t = products.len() as u64;
        let sum: BigUint = products.iter().sum();
        let sum_sq: BigUint = products.iter().map(|x| x * x).sum();
        let mean = ratio(sum.clone(), BigUint::from(t) * &aut);
        // Unbiased sample variance of Z = X / aut.
        let variance = if t > 1 {
            let t_big = BigRational::from_integer(t.into());
            let centred = BigRational::from_integer(sum_sq.clone().into())
                - BigRational::from_integer((&sum * &sum).into()) / &t_big;
            centred / BigRational::from_integer((BigUint::from(t - 1) * &aut * &aut).into())
        } else {
            BigRational::zero()
        };
        let (batch_means, point_estimate) = batches.unwrap_or_else(|| (Vec::new(), mean.clone()));
        EstimateReport {
            aut,
            products,
            seed,
            targets,
            batch_means,
            point_estimate,
            mean,
            variance,
            sum,
            sum_sq,
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }

    /// The same report with the wall-clock time cleared, for comparing runs.
    pub fn without_timing(mut self) -> Self {
        self.elapsed = Duration::ZERO;
        self
    }

    pub fn trials(&self) -> u64 {
        self.products.len() as u64
    }

    /// `X_t` for every trial, in trial order.
    pub fn products(&self) -> &[BigUint] {
        &self.products
    }

    /// `Z_t = X_t / aut` for every trial.
    pub fn outputs(&self) -> impl Iterator<Item = BigRational> + '_ {
        self.products.iter().map(|x| ratio(x.clone(), self.aut.clone()))
    }

    pub fn aut(&self) -> &BigUint {
        &self.aut
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `(epsilon, delta)` in adaptive mode.
    pub fn targets(&self) -> Option<(f64, f64)> {
        self.targets
    }

    /// Exact mean of all trial outputs.
    pub fn mean(&self) -> &BigRational {
        &self.mean
    }

    /// Unbiased sample variance of the trial outputs.
    pub fn variance(&self) -> &BigRational {
        &self.variance
    }

    /// Sorted batch means in adaptive mode; empty otherwise.
    pub fn batch_means(&self) -> &[BigRational] {
        &self.batch_means
    }

    /// The reported estimate: the median of batch means in adaptive mode,
    /// the mean otherwise.
    pub fn point_estimate(&self) -> &BigRational {
        &self.point_estimate
    }

    pub fn zero_count(&self) -> u64 {
        self.products.iter().filter(|x| x.is_zero()).count() as u64
    }

    pub fn zero_fraction(&self) -> f64 {
        self.zero_count() as f64 / self.trials() as f64
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.elapsed.as_millis() as u64
    }

    /// Flat record for CSV and JSON output.
    pub fn row(&self, template: &str, base: &str, n: usize, p: Option<f64>) -> ReportRow {
        ReportRow {
            template: template.to_string(),
            base: base.to_string(),
            n,
            p,
            seed: self.seed,
            trials: self.trials(),
            mean_num: self.point_estimate.numer().to_string(),
            mean_den: self.point_estimate.denom().to_string(),
            variance: to_f64(&self.variance),
            zero_fraction: self.zero_fraction(),
            ratio: critical_ratio_empirical(self).ok().map(|r| to_f64(&r)),
            elapsed_ms: self.elapsed_ms(),
        }
    }
}

/// `T * sum(Z^2) / (sum Z)^2`, the empirical critical ratio
/// `mean(Z^2) / mean(Z)^2`.
pub fn critical_ratio_empirical(report: &EstimateReport) -> Result<BigRational> {
    if report.sum.is_zero() {
        return Err(Error::UndefinedRatio);
    }
    Ok(ratio(BigUint::from(report.trials()) * &report.sum_sq, &report.sum * &report.sum))
}

/// One line of estimator output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub template: String,
    pub base: String,
    pub n: usize,
    pub p: Option<f64>,
    pub seed: u64,
    pub trials: u64,
    /// Numerator of the point estimate, in decimal.
    pub mean_num: String,
    /// Denominator of the point estimate, in decimal.
    pub mean_den: String,
    pub variance: f64,
    pub zero_fraction: f64,
    pub ratio: Option<f64>,
    pub elapsed_ms: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(xs: &[u32]) -> EstimateReport {
        EstimateReport::new(1u32.into(), xs.iter().map(|&x| x.into()).collect(), 0, None, None)
    }

    #[test]
    fn ratios() {
        assert_eq!(critical_ratio_empirical(&report(&[5, 5, 5])).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(critical_ratio_empirical(&report(&[0, 2, 0, 2])).unwrap(), BigRational::from_integer(2.into()));
        assert!(matches!(critical_ratio_empirical(&report(&[0, 0])), Err(Error::UndefinedRatio)));
    }

    #[test]
    fn statistics() {
        let r = EstimateReport::new(2u32.into(), vec![2u32.into(), 4u32.into(), 0u32.into()], 9, None, None);
        assert_eq!(r.mean(), &BigRational::new(1.into(), 1.into()));
        // Z = 1, 2, 0: sample variance 1.
        assert_eq!(r.variance(), &BigRational::from_integer(1.into()));
        assert_eq!(r.zero_count(), 1);
        let row = r.row("t", "b", 3, None);
        assert_eq!((row.mean_num.as_str(), row.mean_den.as_str()), ("1", "1"));
        // mean(Z^2) / mean(Z)^2 = (5 / 3) / 1.
        assert!((row.ratio.unwrap() - 5.0 / 3.0).abs() < 1e-12);
        assert_eq!(report(&[7]).variance(), &BigRational::zero());
    }
}
