//! Log-space combinatorics. Products of binomial ratios raised to powers of
//! order `n` underflow in linear space long before the bounds become
//! uninteresting, so everything here returns natural logs.

use statrs::function::gamma::ln_gamma;

/// Largest `k` for which `ln_choose` sums logs of factors directly.
const DIRECT_PRODUCT_MAX: i64 = 64;

/// `ln C(m, k)`, with `C(m, k) = 0` (so `-inf`) whenever `k > m` or either is negative.
pub fn ln_choose(m: i64, k: i64) -> f64 {
    if k < 0 || m < 0 || k > m {
        return f64::NEG_INFINITY;
    }
    let k = k.min(m - k);
    if k <= DIRECT_PRODUCT_MAX {
        (0..k)
            .map(|l| ((m - l) as f64 / (k - l) as f64).ln())
            .sum()
    } else {
        ln_gamma(m as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((m - k) as f64 + 1.0)
    }
}

/// `ln (C(x, k) / C(y, k))` for `x <= y`, `k <= y`.
///
/// Each factor `(x - l)/(y - l)` near one goes through `ln_1p` of its
/// distance from one, so the log keeps full relative precision when it is
/// later multiplied by an exponent of order `n`. Factors far from one are
/// logged directly.
pub fn ln_choose_ratio(x: i64, y: i64, k: i64) -> f64 {
    debug_assert!(x <= y && k >= 0 && k <= y);
    if x < k {
        return f64::NEG_INFINITY;
    }
    let gap = (y - x) as f64;
    (0..k)
        .map(|l| {
            let deficit = gap / (y - l) as f64;
            if deficit < 0.5 {
                (-deficit).ln_1p()
            } else {
                ((x - l) as f64 / (y - l) as f64).ln()
            }
        })
        .sum()
}

/// `exponent * ln_base` under the convention `0^0 = 1`.
pub fn ln_pow(ln_base: f64, exponent: i64) -> f64 {
    if exponent == 0 {
        0.0
    } else {
        ln_base * exponent as f64
    }
}

/// `ln(e^a + e^b)`.
pub fn ln_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(e^a - e^b)` for `a > b`.
pub fn ln_sub_exp(a: f64, b: f64) -> f64 {
    debug_assert!(a > b);
    if b == f64::NEG_INFINITY {
        return a;
    }
    a + (-(b - a).exp_m1()).ln()
}

/// `ln(k!)`.
pub fn ln_factorial(k: u64) -> f64 {
    if k <= DIRECT_PRODUCT_MAX as u64 {
        (2..=k).map(|j| (j as f64).ln()).sum()
    } else {
        ln_gamma(k as f64 + 1.0)
    }
}
