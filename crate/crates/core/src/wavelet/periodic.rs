//! Periodized scaling functions `phi^per_{J,k}(x) = 2^{J/2} sum_l phi(2^J (x - l) - k)`.

use super::{WaveletFilter, DEFAULT_DEPTH};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Resolution level and translation of a periodized basis function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodizedIndex {
    level: u32,
    shift: usize,
}

impl PeriodizedIndex {
    pub const MAX_LEVEL: u32 = 30;

    pub fn new(level: u32, shift: usize) -> Result<Self> {
        if level > Self::MAX_LEVEL {
            return Err(Error::InvalidLevel(level));
        }
        if shift >= 1usize << level {
            return Err(Error::InvalidConfig(format!(
                "translation {shift} outside 0..{} at level {level}",
                1usize << level
            )));
        }
        Ok(Self { level, shift })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn shift(&self) -> usize {
        self.shift
    }
}

/// Nonzero values of `phi^per_{J,k}(x)` over `k`, for one abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisRow<T> {
    pub level: u32,
    /// `(k, value)` pairs with distinct `k`, in no particular order.
    pub entries: Vec<(usize, T)>,
}

impl<T: Real> BasisRow<T> {
    pub fn value(&self, shift: usize) -> T {
        self.entries
            .iter()
            .find(|(k, _)| *k == shift)
            .map(|(_, v)| *v)
            .unwrap_or_else(T::zero)
    }

    /// Dense vector of length `2^J`.
    pub fn to_dense(&self) -> Vec<T> {
        let mut out = vec![T::zero(); 1usize << self.level];
        for &(k, v) in &self.entries {
            out[k] = out[k] + v;
        }
        out
    }

    /// `sum_k coeffs[k] * phi^per_{J,k}(x)`.
    pub fn dot(&self, coeffs: &[T]) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, &(k, v)| acc + coeffs[k] * v)
    }
}

/// Reduces `x` to `[0, 1)` with a floor-based modulus.
pub(crate) fn wrap_unit<T: Real>(x: T) -> T {
    let r = x - x.floor();
    if r >= T::one() {
        T::zero()
    } else {
        r
    }
}

impl<T: Real> WaveletFilter<T> {
    /// `phi^per_{J,k}(x)` by direct lattice summation over the translates whose
    /// support meets the argument.
    pub fn eval_periodized(&self, idx: PeriodizedIndex, x: T) -> T {
        self.eval_periodized_with_depth(idx, x, DEFAULT_DEPTH)
    }

    pub fn eval_periodized_with_depth(&self, idx: PeriodizedIndex, x: T, depth: u32) -> T {
        if !x.is_finite() {
            return T::zero();
        }
        let scale = T::lit((1u64 << idx.level) as f64);
        let width = T::from_count(self.support_length() - 1);
        let u = scale * wrap_unit(x) - T::from_count(idx.shift);
        // phi(u - scale*l) != 0 requires 0 <= u - scale*l <= L-1.
        let l_min = ((u - width) / scale).ceil().to_i64().unwrap_or(0);
        let l_max = (u / scale).floor().to_i64().unwrap_or(0);
        let mut acc = T::zero();
        for l in l_min..=l_max {
            acc = acc + self.eval_scaling(u - scale * T::lit(l as f64), depth);
        }
        scale.sqrt() * acc
    }

    /// All nonzero `phi^per_{J,k}(x)` for one `x`, from a single window
    /// evaluation.
    pub fn periodized_row(&self, level: u32, x: T) -> BasisRow<T> {
        let n = self.integer_values.len();
        let mut window = vec![T::zero(); n];
        let mut scratch = vec![T::zero(); n];
        let mut entries = Vec::with_capacity(n);
        self.periodized_row_into(level, x, &mut window, &mut scratch, &mut entries);
        BasisRow { level, entries }
    }

    pub(crate) fn periodized_row_into(
        &self,
        level: u32,
        x: T,
        window: &mut [T],
        scratch: &mut [T],
        entries: &mut Vec<(usize, T)>,
    ) {
        entries.clear();
        if !x.is_finite() {
            return;
        }
        let count = 1i64 << level;
        let scale = T::lit(count as f64);
        let u = scale * wrap_unit(x);
        let whole = u.floor();
        let base = whole.to_i64().unwrap_or(0);
        self.window_into(u - whole, DEFAULT_DEPTH, window, scratch);
        let norm = scale.sqrt();
        for (j, &phi) in window.iter().enumerate() {
            if phi == T::zero() {
                continue;
            }
            // argument t + j = u - m with m = base - j
            let k = (base - j as i64).rem_euclid(count) as usize;
            let v = norm * phi;
            match entries.iter_mut().find(|(kk, _)| *kk == k) {
                Some(slot) => slot.1 = slot.1 + v,
                None => entries.push((k, v)),
            }
        }
    }
}
