//! Log-domain accumulation helpers.
//!
//! Scale values such as `exp(tau(g)^k)` overflow `f64` almost immediately, so
//! every sum of scale values in this crate is carried out on logarithms with
//! the usual log-sum-exp trick.

use crate::scalar::Scalar;

/// `log(exp(a) + exp(b))` without overflow.
pub fn logsumexp2<T: Scalar>(a: T, b: T) -> T {
    if a == T::neg_infinity() {
        return b;
    }
    if b == T::neg_infinity() {
        return a;
    }
    if a > b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// `log(sum_i exp(x_i))` without overflow; empty input yields `-inf`.
pub fn logsumexp<T: Scalar>(xs: impl IntoIterator<Item = T>) -> T {
    let xs: Vec<T> = xs.into_iter().collect();
    let m = xs
        .iter()
        .cloned()
        .fold(T::neg_infinity(), |acc, x| if x > acc { x } else { acc });
    if m == T::neg_infinity() || m == T::infinity() {
        return m;
    }
    let s = xs
        .iter()
        .fold(T::zero(), |acc, &x| acc + (x - m).exp());
    m + s.ln()
}

/// `log(exp(a) - exp(b))` for `a >= b`; returns `-inf` when `a == b`.
pub fn logdiffexp<T: Scalar>(a: T, b: T) -> T {
    debug_assert!(a >= b, "logdiffexp requires a >= b");
    if b == T::neg_infinity() {
        return a;
    }
    if a == b {
        return T::neg_infinity();
    }
    // log(e^a - e^b) = a + log(1 - e^(b-a)) = a + ln_1p(-e^(b-a))
    a + (-((b - a).exp())).ln_1p()
}

/// Streaming log-domain accumulator for `log(sum exp(x_i))`.
#[derive(Debug, Clone, Copy)]
pub struct LogAccumulator<T: Scalar> {
    total: T,
}

impl<T: Scalar> Default for LogAccumulator<T> {
    fn default() -> Self {
        Self {
            total: T::neg_infinity(),
        }
    }
}

impl<T: Scalar> LogAccumulator<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a term given by its logarithm.
    pub fn add_log(&mut self, x: T) {
        self.total = logsumexp2(self.total, x);
    }

    /// Current `log(sum)`; `-inf` when nothing was added.
    pub fn log_total(&self) -> T {
        self.total
    }
}
