//! Right-censored samples, product-limit estimators of the lifetime and
//! censoring distributions, and inverse-probability-of-censoring weights.
//!
//! All estimators operate on a [`RankedSample`] and follow the per-point
//! product-limit sums: with `n_i = N - i + 1` subjects at risk at the `i`-th
//! ranked time,
//!
//! ```text
//! F(Y_(i)) = sum_{k<=i} d_k / n_k * prod_{j<k} (1 - d_j / n_j)
//! ```
//!
//! and `G` is the same expression with `d` replaced by `1 - d`.

use crate::error::{Error, Result};
use crate::scalar::Field;
use std::cmp::Ordering;

/// Observation times with event indicators (`true` = event observed).
#[derive(Debug, Clone, PartialEq)]
pub struct CensoredSample<T> {
    times: Vec<T>,
    events: Vec<bool>,
    tau: Option<T>,
}

impl<T: Field> CensoredSample<T> {
    pub fn new(times: Vec<T>, events: Vec<bool>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidSample("sample is empty".into()));
        }
        if times.len() != events.len() {
            return Err(Error::InvalidSample(format!(
                "{} times but {} indicators",
                times.len(),
                events.len()
            )));
        }
        if let Some(i) = times.iter().position(|t| !(*t >= T::zero())) {
            return Err(Error::InvalidSample(format!(
                "time at position {i} is negative or not a number"
            )));
        }
        Ok(Self {
            times,
            events,
            tau: None,
        })
    }

    /// Builds a sample from numeric indicators, which must be 0 or 1.
    pub fn from_indicators(times: Vec<T>, delta: &[u8]) -> Result<Self> {
        let events = delta
            .iter()
            .enumerate()
            .map(|(i, &d)| match d {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::InvalidSample(format!(
                    "indicator {other} at position {i} is not 0 or 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(times, events)
    }

    /// Attaches a normalization constant. The times must already lie in `[0, 1]`.
    pub fn with_tau(mut self, tau: T) -> Result<Self> {
        if !(tau > T::zero()) {
            return Err(Error::InvalidSample("tau must be positive".into()));
        }
        if self.times.iter().any(|t| *t > T::one()) {
            return Err(Error::InvalidSample(
                "normalized times must lie in [0, 1]".into(),
            ));
        }
        self.tau = Some(tau);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn events(&self) -> &[bool] {
        &self.events
    }

    pub fn tau(&self) -> Option<&T> {
        self.tau.as_ref()
    }

    pub fn indicators(&self) -> Vec<u8> {
        self.events.iter().map(|&e| e as u8).collect()
    }

    pub fn event_count(&self) -> usize {
        self.events.iter().filter(|&&e| e).count()
    }

    pub fn censored_fraction(&self) -> f64 {
        1.0 - self.event_count() as f64 / self.len() as f64
    }

    /// Same times with every indicator flipped.
    pub fn flipped(&self) -> Self {
        Self {
            times: self.times.clone(),
            events: self.events.iter().map(|e| !e).collect(),
            tau: self.tau.clone(),
        }
    }
}

/// Sample sorted by time; events precede censorings at tied times.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedSample<T> {
    pub times: Vec<T>,
    pub events: Vec<bool>,
    /// `perm[i]` is the original position of the `i`-th ranked observation.
    pub perm: Vec<usize>,
}

impl<T: Field> RankedSample<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

pub fn rank_sample<T: Field>(s: &CensoredSample<T>) -> RankedSample<T> {
    let mut perm: Vec<usize> = (0..s.len()).collect();
    perm.sort_by(|&a, &b| {
        s.times[a]
            .partial_cmp(&s.times[b])
            .unwrap_or(Ordering::Equal)
            .then_with(|| s.events[b].cmp(&s.events[a]))
    });
    RankedSample {
        times: perm.iter().map(|&i| s.times[i].clone()).collect(),
        events: perm.iter().map(|&i| s.events[i]).collect(),
        perm,
    }
}

/// Which distribution a product-limit curve estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmTarget {
    /// Lifetime distribution `F`; jumps at events.
    Event,
    /// Censoring distribution `G`; jumps at censorings.
    Censoring,
}

/// Product-limit step function evaluated at the ranked observation times.
#[derive(Debug, Clone, PartialEq)]
pub struct KaplanMeierCurve<T> {
    pub times: Vec<T>,
    /// Right-continuous value at each ranked time.
    pub cdf: Vec<T>,
    /// Mass placed at each ranked time.
    pub jumps: Vec<T>,
    pub target: KmTarget,
}

impl<T: Field> KaplanMeierCurve<T> {
    /// Total mass, i.e. the value at the largest observation.
    pub fn total_mass(&self) -> T {
        self.cdf.last().cloned().unwrap_or_else(T::zero)
    }

    /// Value just before the `i`-th ranked time.
    pub fn left_limit(&self, i: usize) -> T {
        if i == 0 {
            T::zero()
        } else {
            self.cdf[i - 1].clone()
        }
    }
}

fn product_limit<T: Field>(r: &RankedSample<T>, active: &[bool], target: KmTarget) -> KaplanMeierCurve<T> {
    let n = r.len();
    let mut survival = T::one();
    let mut cumulative = T::zero();
    let mut jumps = Vec::with_capacity(n);
    let mut cdf = Vec::with_capacity(n);
    for (i, &hit) in active.iter().enumerate() {
        let at_risk = T::from_count(n - i);
        let jump = if hit {
            let j = survival.clone() / at_risk.clone();
            survival = survival * (T::one() - T::one() / at_risk);
            j
        } else {
            T::zero()
        };
        cumulative = cumulative + jump.clone();
        jumps.push(jump);
        cdf.push(cumulative.clone());
    }
    KaplanMeierCurve {
        times: r.times.clone(),
        cdf,
        jumps,
        target,
    }
}

/// Kaplan–Meier estimate of the lifetime distribution `F`.
pub fn km_event<T: Field>(r: &RankedSample<T>) -> KaplanMeierCurve<T> {
    product_limit(r, &r.events, KmTarget::Event)
}

/// Kaplan–Meier estimate of the censoring distribution `G`.
pub fn km_censoring<T: Field>(r: &RankedSample<T>) -> KaplanMeierCurve<T> {
    let flipped: Vec<bool> = r.events.iter().map(|e| !e).collect();
    product_limit(r, &flipped, KmTarget::Censoring)
}

/// `1 - G(Y_(i)-)`: censoring survival just before each ranked time.
///
/// The product runs over strictly earlier ranks and never vanishes, since the
/// only factor that can be zero belongs to the last rank.
pub fn censoring_survival_before<T: Field>(r: &RankedSample<T>) -> Vec<T> {
    let n = r.len();
    let mut out = Vec::with_capacity(n);
    let mut survival = T::one();
    for (i, &event) in r.events.iter().enumerate() {
        out.push(survival.clone());
        if !event {
            survival = survival * (T::one() - T::one() / T::from_count(n - i));
        }
    }
    out
}

/// Inverse-probability-of-censoring weights `d_(i) / (1 - G(Y_(i)-))`.
///
/// Uses the closed product
/// `1 / (1 - G(Y_(i)-)) = N / (N-i+1) * prod_{j<i} ((N-j) / (N-j+1))^{d_(j)}`,
/// so `w_i / N` equals the lifetime Kaplan–Meier jump at `Y_(i)`.
pub fn ipcw_weights<T: Field>(r: &RankedSample<T>) -> Result<Vec<T>> {
    let n = r.len();
    let total = T::from_count(n);
    let mut product = T::one();
    let mut weights = Vec::with_capacity(n);
    for (i, &event) in r.events.iter().enumerate() {
        let at_risk = T::from_count(n - i);
        if event {
            if !(product > T::zero()) {
                return Err(Error::DegenerateWeight(i));
            }
            weights.push(total.clone() / at_risk.clone() * product.clone());
            product = product * (T::from_count(n - i - 1) / at_risk);
        } else {
            weights.push(T::zero());
        }
    }
    Ok(weights)
}
