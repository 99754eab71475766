//! Daubechies–Lagarias evaluation of the scaling function.
//!
//! For `t` in `[0, 1)` let `v(t) = (phi(t), phi(t+1), ..., phi(t+L-2))`. The
//! refinement equation gives `v(t) = T_d v(2t - d)` where `d` is the leading
//! binary digit of `t`, so `v(0.d1 d2 ... dn) = T_d1 ... T_dn v(0)`.

use super::{WaveletFilter, DEFAULT_DEPTH};
use crate::scalar::Real;

impl<T: Real> WaveletFilter<T> {
    /// `phi(x)` with the default depth.
    pub fn eval(&self, x: T) -> T {
        self.eval_scaling(x, DEFAULT_DEPTH)
    }

    /// `phi(x)` using at most `depth` binary digits of the fractional part of
    /// `x`. Returns exactly zero outside `[0, L-1]`.
    pub fn eval_scaling(&self, x: T, depth: u32) -> T {
        let (lo, hi) = self.support();
        if !(x >= lo && x <= hi) {
            return T::zero();
        }
        let whole = x.floor();
        let offset = whole.to_usize().unwrap_or(0);
        if offset >= self.integer_values.len() {
            // x == L-1
            return T::zero();
        }
        let window = self.window(x - whole, depth);
        window[offset]
    }

    /// `[phi(t), phi(t+1), ..., phi(t+L-2)]` for `t` in `[0, 1)`.
    pub fn window(&self, t: T, depth: u32) -> Vec<T> {
        let mut out = self.integer_values.clone();
        let mut scratch = vec![T::zero(); out.len()];
        self.window_into(t, depth, &mut out, &mut scratch);
        out
    }

    /// Allocation-free form of [`WaveletFilter::window`]; `out` and `scratch`
    /// must have length `L-1`.
    pub(crate) fn window_into(&self, t: T, depth: u32, out: &mut [T], scratch: &mut [T]) {
        let n = self.integer_values.len();
        debug_assert_eq!(out.len(), n);
        debug_assert_eq!(scratch.len(), n);

        // Binary digits of t, stopping once the expansion terminates.
        let mut digits = [false; 128];
        let mut count = 0usize;
        let two = T::lit(2.0);
        let mut rem = t;
        while count < (depth as usize).min(digits.len()) && rem > T::zero() {
            rem = rem * two;
            let bit = rem >= T::one();
            if bit {
                rem = rem - T::one();
            }
            digits[count] = bit;
            count += 1;
        }

        out.copy_from_slice(&self.integer_values);
        for &bit in digits[..count].iter().rev() {
            let m = if bit { &self.t1 } else { &self.t0 };
            for (i, dst) in scratch.iter_mut().enumerate() {
                let row = &m[i * n..(i + 1) * n];
                *dst = row
                    .iter()
                    .zip(out.iter())
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b);
            }
            out.copy_from_slice(scratch);
        }
    }
}

/// Eigenvector of `T0` for eigenvalue 1, normalized to unit sum.
pub(super) fn integer_values<T: Real>(t0: &[T], n: usize) -> Vec<T> {
    // Solve (T0 - I) v = 0 with the last equation replaced by sum(v) = 1.
    let mut a = vec![T::zero(); n * n];
    let mut b = vec![T::zero(); n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = t0[i * n + j] - if i == j { T::one() } else { T::zero() };
        }
    }
    for j in 0..n {
        a[(n - 1) * n + j] = T::one();
    }
    b[n - 1] = T::one();
    solve_dense(&mut a, &mut b, n);
    b
}

/// Gaussian elimination with partial pivoting; the solution overwrites `b`.
fn solve_dense<T: Real>(a: &mut [T], b: &mut [T], n: usize) {
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i * n + col]
                    .abs()
                    .partial_cmp(&a[j * n + col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            b.swap(col, pivot);
        }
        let p = a[col * n + col];
        for i in col + 1..n {
            let factor = a[i * n + col] / p;
            if factor == T::zero() {
                continue;
            }
            for j in col..n {
                a[i * n + j] = a[i * n + j] - factor * a[col * n + j];
            }
            b[i] = b[i] - factor * b[col];
        }
    }
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in i + 1..n {
            acc = acc - a[i * n + j] * b[j];
        }
        b[i] = acc / a[i * n + i];
    }
}
