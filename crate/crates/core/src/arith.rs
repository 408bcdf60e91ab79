//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The coefficient field. Every check in the crate is an exact equality over it.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^k` for any integer `k`.
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn factorial(k: u32) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    Q::from_integer(acc)
}

/// Falling factorial `n (n-1) ... (n-j+1)`; the empty product for `j = 0`.
pub fn falling(n: i64, j: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j as i64 {
        acc *= n - i;
    }
    acc
}

/// Generalized binomial coefficient `C(r, k)` for any integer `r`, `k >= 0`.
///
/// Built by the multiplicative recurrence `C(r, i+1) = C(r, i) (r - i) / (i + 1)`,
/// so it never routes through [`falling`].
pub fn binomial(r: i64, k: u32) -> Q {
    let mut acc = Q::one();
    for i in 0..k as i64 {
        acc = acc * q(r - i) / q(i + 1);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Renders a rational as `"num/den"` (denominator always printed).
pub fn render(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Human-oriented rendering: integers without a denominator.
pub fn pretty(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
