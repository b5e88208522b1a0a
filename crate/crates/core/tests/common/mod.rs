//! Exact-arithmetic reference values, computed from big-integer binomials
//! without touching the crate's log-space code paths.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn binom(m: i64, k: i64) -> BigUint {
    if k < 0 || m < 0 || k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((m - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

pub fn frac(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` with `0^0 = 1`.
pub fn rpow(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    num_traits::pow(base.clone(), exp as usize)
}

pub fn isolated_set(n: i64, k: i64, r: i64) -> BigRational {
    let pick = binom(n - 1, k);
    let inside = frac(binom(r - 1, k), pick.clone());
    let outside = frac(binom(n - r - 1, k), pick);
    rpow(&inside, r) * rpow(&outside, n - r)
}

pub fn union_bound(n: i64, k: i64) -> BigRational {
    let mut acc = BigRational::zero();
    for r in (k + 1)..=(n / 2) {
        acc += BigRational::from_integer(BigInt::from(binom(n, r))) * isolated_set(n, k, r);
    }
    acc
}

pub fn s1(n: i64, k: i64) -> BigRational {
    let pick = binom(n - 1, k);
    BigRational::from_integer(BigInt::from(binom(n, k + 1)))
        * rpow(&frac(BigUint::one(), pick.clone()), k + 1)
        * rpow(&frac(binom(n - k - 2, k), pick), n - k - 1)
}

/// Pair sum with multiplier `mu_num / mu_den`.
pub fn s2(n: i64, k: i64, mu_num: u32, mu_den: u32) -> BigRational {
    let pick = binom(n - 1, k);
    BigRational::new(BigInt::from(mu_num), BigInt::from(mu_den))
        * BigRational::from_integer(BigInt::from(binom(n, k + 1) * binom(n - k - 1, k + 1)))
        * rpow(&frac(BigUint::one(), pick.clone()), 2 * (k + 1))
        * rpow(&frac(binom(n - 2 * k - 3, k), pick), n - 2 * (k + 1))
}

pub fn q_exact(n: i64, k: i64) -> BigRational {
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    rpow(&r(k + 1, n), k * k - 1) + r(n, 2) * rpow(&r(k + 2, n), (k + 2) * (k - 1))
}

/// Natural log of a positive big integer, shifting off low bits first.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 900 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(x: &BigRational) -> f64 {
    ln_big(x.numer()) - ln_big(x.denom())
}

/// `ln S1` for large `n`: exact integer binomials, with the near-one ratio
/// taken through `ln_1p` of its exact distance from one.
pub fn ln_s1_large(n: i64, k: i64) -> f64 {
    let pick = BigInt::from(binom(n - 1, k));
    let inner = BigInt::from(binom(n - k - 2, k));
    let ratio_minus_one = BigRational::new(inner - &pick, pick.clone()).to_f64().unwrap();
    ln_big(&BigInt::from(binom(n, k + 1))) - (k + 1) as f64 * ln_big(&pick)
        + (n - k - 1) as f64 * ratio_minus_one.ln_1p()
}

pub fn ln_s2_large(n: i64, k: i64, ln_mu: f64) -> f64 {
    let pick = BigInt::from(binom(n - 1, k));
    let inner = BigInt::from(binom(n - 2 * k - 3, k));
    let ratio_minus_one = BigRational::new(inner - &pick, pick.clone()).to_f64().unwrap();
    ln_mu + ln_big(&BigInt::from(binom(n, k + 1))) + ln_big(&BigInt::from(binom(n - k - 1, k + 1)))
        - (2 * (k + 1)) as f64 * ln_big(&pick)
        + (n - 2 * (k + 1)) as f64 * ratio_minus_one.ln_1p()
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
