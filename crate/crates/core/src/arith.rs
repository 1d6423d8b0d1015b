//! Exact elementary number theory on machine integers: totients, divisor
//! lists, and Möbius inversion of divisor sums.
//!
//! Everything is computed through trial-division factorization with checked
//! arithmetic; overflow is reported as an error, never wrapped.

use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("argument must be >= 1")]
    ZeroArgument,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("no value supplied for divisor {0}")]
    MissingDivisor(u64),
}

/// Prime factorization of `n` by trial division, as `(prime, exponent)`
/// pairs in ascending prime order. `factorize(1)` is the empty product.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(factors)
}

/// Euler's totient `phi(n)`: the number of `0 <= k < n` with
/// `gcd(k, n) = 1`.
pub fn euler_phi(n: u64) -> Result<u64, ArithError> {
    let mut phi: u64 = 1;
    for (p, e) in factorize(n)? {
        let head = p.checked_pow(e - 1).ok_or(ArithError::Overflow)?;
        phi =
            phi.checked_mul(head).and_then(|v| v.checked_mul(p - 1)).ok_or(ArithError::Overflow)?;
    }
    Ok(phi)
}

/// The rank-two totient `psi2(n) = n^2 * prod_{p | n} (1 - 1/p^2)`: the
/// number of pairs `0 <= k1, k2 < n` with `gcd(k1, k2, n) = 1`.
pub fn psi2(n: u64) -> Result<u64, ArithError> {
    let mut psi: u64 = 1;
    for (p, e) in factorize(n)? {
        let p2 = p.checked_mul(p).ok_or(ArithError::Overflow)?;
        let head = p2.checked_pow(e - 1).ok_or(ArithError::Overflow)?;
        psi = psi
            .checked_mul(head)
            .and_then(|v| v.checked_mul(p2 - 1))
            .ok_or(ArithError::Overflow)?;
    }
    Ok(psi)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u64 = 1;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// Möbius function: 0 when a square divides `n`, otherwise `(-1)^k` for
/// `k` distinct prime factors.
pub fn moebius(n: u64) -> Result<i64, ArithError> {
    let factors = factorize(n)?;
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Möbius inversion of a divisor sum: `sum_{d | n} mu(n/d) * g(d)`.
///
/// When `g(m) = sum_{e | m} f(e)` for every divisor `m` of `n`, this
/// recovers `f(n)`. The map must supply a value for every divisor of `n`;
/// a missing divisor is an error, not a zero.
pub fn divisor_sum_invert(g: &BTreeMap<u64, i128>, n: u64) -> Result<i128, ArithError> {
    let mut acc: i128 = 0;
    for d in divisors(n)? {
        let gd = *g.get(&d).ok_or(ArithError::MissingDivisor(d))?;
        let mu = moebius(n / d)? as i128;
        acc = mu
            .checked_mul(gd)
            .and_then(|term| acc.checked_add(term))
            .ok_or(ArithError::Overflow)?;
    }
    Ok(acc)
}
