//! Closed-form counts `D(n, N)` and `L(n, N)`.
//!
//! `D(n, N)` counts the dessins d'enfants underlying integral Lamé
//! equations of index `n` whose projective monodromy is dihedral of order
//! dividing `2N`; `L(n, N)` counts the equations themselves (up to scalar
//! equivalence) with monodromy of order exactly `2N`. The two are linked
//! by the divisor sum `sum_{d | N} L(n, d) = D(n, N)`, which is checked
//! here by recomputing `L` through Möbius inversion.
//!
//! Both counts are polynomial in `n` only through `n(n+1)`, so they are
//! invariant under `n -> -n - 1`; all entry points accept any integer
//! index. Evaluation is exact in `i128` with the divisions performed last
//! and checked for exactness.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("N must be >= 1")]
    InvalidOrder,
    #[error("count numerator {numerator} at (n={n}, N={half_order}) is not divisible by 12")]
    NonIntegralCount { n: i64, half_order: u64, numerator: i128 },
    #[error("count at (n={n}, N={half_order}) evaluated to the negative value {value}")]
    NegativeCount { n: i64, half_order: u64, value: i128 },
    #[error("integer overflow evaluating the count at (n={n}, N={half_order})")]
    Overflow { n: i64, half_order: u64 },
}

/// One row of the census table: both counts at a single `(n, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub n: i64,
    #[serde(rename = "N")]
    pub half_order: u64,
    pub dessins: u64,
    pub lame: u64,
}

/// Correction term of the dessin count: 1 when 3 divides `half_order` and
/// `n` is congruent to 1 mod 3 (nonnegative residue), else 0.
pub fn epsilon_dessin(n: i64, half_order: u64) -> u64 {
    u64::from(half_order.is_multiple_of(3) && n.rem_euclid(3) == 1)
}

/// Correction term of the Lamé count: 1 when `half_order` is exactly 3 and
/// `n` is congruent to 1 mod 3 (nonnegative residue), else 0.
pub fn epsilon_lame(n: i64, half_order: u64) -> u64 {
    u64::from(half_order == 3 && n.rem_euclid(3) == 1)
}

fn finish_twelfth(numerator: i128, n: i64, half_order: u64) -> Result<u64, CensusError> {
    if numerator % 12 != 0 {
        return Err(CensusError::NonIntegralCount { n, half_order, numerator });
    }
    let value = numerator / 12;
    if value < 0 {
        return Err(CensusError::NegativeCount { n, half_order, value });
    }
    u64::try_from(value).map_err(|_| CensusError::Overflow { n, half_order })
}

/// `D(n, N)`: the number of dessins with admissible ramification at
/// `(n, N)`, namely `n(n+1)(N-1)(N-2)/12 + (2/3) epsilon_dessin(n, N)`.
pub fn dessin_count(n: i64, half_order: u64) -> Result<u64, CensusError> {
    if half_order == 0 {
        return Err(CensusError::InvalidOrder);
    }
    let ni = n as i128;
    let oi = half_order as i128;
    let quadratic = ni * (ni + 1); // |n| <= 2^63 keeps this inside i128
    let order_part = (oi - 1).checked_mul(oi - 2).ok_or(CensusError::Overflow { n, half_order })?;
    let numerator = quadratic
        .checked_mul(order_part)
        .and_then(|v| v.checked_add(8 * epsilon_dessin(n, half_order) as i128))
        .ok_or(CensusError::Overflow { n, half_order })?;
    finish_twelfth(numerator, n, half_order)
}

/// `L(n, N)`: the number of Lamé equations with dihedral projective
/// monodromy of order exactly `2N`, up to scalar equivalence. Zero for
/// `N = 1`; otherwise
/// `n(n+1)(psi2(N) - 3 phi(N))/12 + (2/3) epsilon_lame(n, N)`.
pub fn lame_count(n: i64, half_order: u64) -> Result<u64, CensusError> {
    if half_order == 0 {
        return Err(CensusError::InvalidOrder);
    }
    if half_order == 1 {
        return Ok(0);
    }
    let ni = n as i128;
    let quadratic = ni * (ni + 1);
    let totient_part = arith::psi2(half_order)? as i128 - 3 * arith::euler_phi(half_order)? as i128;
    let numerator = quadratic
        .checked_mul(totient_part)
        .and_then(|v| v.checked_add(8 * epsilon_lame(n, half_order) as i128))
        .ok_or(CensusError::Overflow { n, half_order })?;
    finish_twelfth(numerator, n, half_order)
}

/// `L(n, N)` recomputed by Möbius inversion of `d -> D(n, d)` over the
/// divisors of `N`. Independent route to the same value as
/// [`lame_count`]; used to cross-check the closed form.
pub fn lame_count_via_inversion(n: i64, half_order: u64) -> Result<u64, CensusError> {
    if half_order == 0 {
        return Err(CensusError::InvalidOrder);
    }
    let mut g: BTreeMap<u64, i128> = BTreeMap::new();
    for d in arith::divisors(half_order)? {
        g.insert(d, dessin_count(n, d)? as i128);
    }
    let value = arith::divisor_sum_invert(&g, half_order)?;
    if value < 0 {
        return Err(CensusError::NegativeCount { n, half_order, value });
    }
    u64::try_from(value).map_err(|_| CensusError::Overflow { n, half_order })
}

/// Both counts for every pair in the rectangle
/// `n_min..=n_max` x `order_min..=order_max`, ordered by `n` then `N`.
/// Empty ranges yield an empty table; `order_min` must still be >= 1.
pub fn census_table(
    n_min: i64,
    n_max: i64,
    order_min: u64,
    order_max: u64,
) -> Result<Vec<CensusEntry>, CensusError> {
    if order_min == 0 {
        return Err(CensusError::InvalidOrder);
    }
    let mut table = Vec::new();
    for n in n_min..=n_max {
        for half_order in order_min..=order_max {
            table.push(CensusEntry {
                n,
                half_order,
                dessins: dessin_count(n, half_order)?,
                lame: lame_count(n, half_order)?,
            });
        }
    }
    Ok(table)
}
