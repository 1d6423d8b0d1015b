//! Ramification data of the admissible covers.
//!
//! Every dessin counted by the census comes from a degree-`nN` cover of
//! the projective line branched over 0, 1, and infinity whose ramification
//! falls into one of five tables, labelled `Ia`, `Ib`, `Ic`, `Id`, and
//! `II`. A table instantiates at `(n, N)` only when every entry it
//! prescribes — each "number of extra points" and each multiplicity — is a
//! nonnegative whole number; those conditions encode the parity and size
//! constraints on `nN`. All instantiated profiles have genus 0, which
//! [`riemann_hurwitz_check`] recomputes from first principles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Profiles are materialized as explicit part lists; beyond this degree
/// the lists no longer fit in memory and construction refuses instead.
pub const MAX_MATERIALIZED_DEGREE: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamificationError {
    #[error("cycle type parts must be >= 1")]
    ZeroPart,
    #[error("branch data sums to the odd quantity {numerator}, so the genus is not an integer")]
    NonIntegralGenus { numerator: i128 },
    #[error("branch data yields the negative genus {genus}")]
    NegativeGenus { genus: i128 },
}

/// A multiset of positive cycle lengths, stored descending. Serializes as
/// a plain JSON array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CycleType {
    parts: Vec<u64>,
}

impl CycleType {
    /// Builds a cycle type from parts in any order; zero parts are
    /// rejected.
    pub fn new(mut parts: Vec<u64>) -> Result<Self, RamificationError> {
        if parts.contains(&0) {
            return Err(RamificationError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    /// Parts in descending order.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Sum of the parts: the degree of a permutation with this type.
    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// How many parts equal `value`.
    pub fn multiplicity_of(&self, value: u64) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Labels of the five ramification tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    Ia,
    Ib,
    Ic,
    Id,
    II,
}

impl CaseLabel {
    /// All labels in their fixed presentation order.
    pub const ALL: [CaseLabel; 5] =
        [CaseLabel::Ia, CaseLabel::Ib, CaseLabel::Ic, CaseLabel::Id, CaseLabel::II];
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::Ia => "Ia",
            CaseLabel::Ib => "Ib",
            CaseLabel::Ic => "Ic",
            CaseLabel::Id => "Id",
            CaseLabel::II => "II",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown case label `{0}`; expected one of Ia, Ib, Ic, Id, II")]
pub struct ParseCaseError(String);

impl FromStr for CaseLabel {
    type Err = ParseCaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Ia" => Ok(CaseLabel::Ia),
            "Ib" => Ok(CaseLabel::Ib),
            "Ic" => Ok(CaseLabel::Ic),
            "Id" => Ok(CaseLabel::Id),
            "II" => Ok(CaseLabel::II),
            other => Err(ParseCaseError(other.to_string())),
        }
    }
}

/// The four singular points of the Lamé equation on the source curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SourcePoint {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "inf")]
    Infinity,
}

/// The three branch points on the target line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetPoint {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

/// Where one singular point sits in the cover: over which branch point and
/// with which local multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub source: SourcePoint,
    pub target: TargetPoint,
    pub multiplicity: u64,
}

/// One instantiated ramification table: the three fiber cycle types of a
/// degree-`nN` cover plus the positions of the four singular points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub case: CaseLabel,
    pub n: u64,
    #[serde(rename = "N")]
    pub half_order: u64,
    pub degree: u64,
    #[serde(rename = "over0")]
    pub over_zero: CycleType,
    #[serde(rename = "over1")]
    pub over_one: CycleType,
    #[serde(rename = "overInf")]
    pub over_infinity: CycleType,
    pub marks: Vec<MarkedPoint>,
}

/// Why a table does not instantiate at some `(n, N)`: every violated entry
/// is named with its offending value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileInvalidity {
    pub case: CaseLabel,
    pub n: u64,
    pub half_order: u64,
    pub violations: Vec<String>,
}

impl fmt::Display for ProfileInvalidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {} does not instantiate at (n={}, N={}): {}",
            self.case,
            self.n,
            self.half_order,
            self.violations.join("; ")
        )
    }
}

impl std::error::Error for ProfileInvalidity {}

fn fraction(numerator: i128, denominator: i128) -> String {
    if numerator % denominator == 0 {
        (numerator / denominator).to_string()
    } else {
        format!("{numerator}/{denominator}")
    }
}

/// Validates that `numerator / 2` is a nonnegative whole count of extra
/// double points; on failure records a violation and yields 0.
fn double_point_count(
    numerator: i128,
    formula: &str,
    fiber: &str,
    violations: &mut Vec<String>,
) -> u64 {
    if numerator < 0 || numerator % 2 != 0 {
        violations.push(format!(
            "{fiber}: {formula} = {} is not a nonnegative integer count of points",
            fraction(numerator, 2)
        ));
        0
    } else {
        (numerator / 2) as u64
    }
}

/// Validates that `numerator / 2` is a positive whole multiplicity; on
/// failure records a violation and yields 1 as a placeholder.
fn half_multiplicity(
    numerator: i128,
    formula: &str,
    fiber: &str,
    violations: &mut Vec<String>,
) -> u64 {
    if numerator < 2 || numerator % 2 != 0 {
        violations.push(format!(
            "{fiber}: {formula} = {} is not a positive integer multiplicity",
            fraction(numerator, 2)
        ));
        1
    } else {
        (numerator / 2) as u64
    }
}

fn push_repeated(parts: &mut Vec<u64>, value: u64, count: u64) {
    parts.extend(std::iter::repeat_n(value, count as usize));
}

fn mark(source: SourcePoint, target: TargetPoint, multiplicity: u64) -> MarkedPoint {
    MarkedPoint { source, target, multiplicity }
}

/// Instantiates one table at `(n, N)`. Fails with a report naming every
/// violated table entry when the parameters do not satisfy the table's
/// integrality and nonnegativity constraints.
pub fn build_profile(
    case: CaseLabel,
    n: u64,
    half_order: u64,
) -> Result<RamificationProfile, ProfileInvalidity> {
    let mut violations: Vec<String> = Vec::new();
    if n < 1 {
        violations.push("the index n must be >= 1".to_string());
    }
    if half_order < 1 {
        violations.push("the order parameter N must be >= 1".to_string());
    }
    let wide_degree = n as u128 * half_order as u128;
    if wide_degree > MAX_MATERIALIZED_DEGREE as u128 {
        violations.push(format!(
            "the degree nN = {wide_degree} exceeds the materialization limit {MAX_MATERIALIZED_DEGREE}"
        ));
    }
    if !violations.is_empty() {
        return Err(ProfileInvalidity { case, n, half_order, violations });
    }

    let degree = wide_degree as u64;
    let d = degree as i128;
    let ni = n as i128;
    let oi = half_order as i128;

    let mut over_zero: Vec<u64> = Vec::new();
    let mut over_one: Vec<u64> = Vec::new();
    let mut over_infinity: Vec<u64> = Vec::new();
    let v = &mut violations;

    use SourcePoint as S;
    use TargetPoint as T;
    let marks: Vec<MarkedPoint> = match case {
        CaseLabel::Ia => {
            push_repeated(&mut over_one, 2, double_point_count(d, "nN/2", "over 1", v));
            push_repeated(&mut over_infinity, half_order, n);
            over_zero.extend([2 * n + 1, 1, 1, 1]);
            let extra = double_point_count(d - 2 * ni - 4, "(nN - 2n - 4)/2", "over 0", v);
            push_repeated(&mut over_zero, 2, extra);
            vec![
                mark(S::Zero, T::Zero, 1),
                mark(S::One, T::Zero, 1),
                mark(S::Lambda, T::Zero, 1),
                mark(S::Infinity, T::Zero, 2 * n + 1),
            ]
        }
        CaseLabel::Ib => {
            push_repeated(&mut over_one, 2, double_point_count(d - 1, "(nN - 1)/2", "over 1", v));
            over_one.push(1);
            push_repeated(&mut over_infinity, half_order, n);
            over_zero.extend([2 * n + 1, 1, 1]);
            let extra = double_point_count(d - 2 * ni - 3, "(nN - 2n - 3)/2", "over 0", v);
            push_repeated(&mut over_zero, 2, extra);
            vec![
                mark(S::Zero, T::Zero, 1),
                mark(S::One, T::Zero, 1),
                mark(S::Lambda, T::One, 1),
                mark(S::Infinity, T::Zero, 2 * n + 1),
            ]
        }
        CaseLabel::Ic => {
            push_repeated(&mut over_one, 2, double_point_count(d - 2, "(nN - 2)/2", "over 1", v));
            over_one.extend([1, 1]);
            push_repeated(&mut over_infinity, half_order, n);
            over_zero.extend([2 * n + 1, 1]);
            let extra = double_point_count(d - 2 * ni - 2, "(nN - 2n - 2)/2", "over 0", v);
            push_repeated(&mut over_zero, 2, extra);
            vec![
                mark(S::Zero, T::Zero, 1),
                mark(S::One, T::One, 1),
                mark(S::Lambda, T::One, 1),
                mark(S::Infinity, T::Zero, 2 * n + 1),
            ]
        }
        CaseLabel::Id => {
            push_repeated(&mut over_one, 2, double_point_count(d - 3, "(nN - 3)/2", "over 1", v));
            over_one.extend([1, 1, 1]);
            push_repeated(&mut over_infinity, half_order, n);
            over_zero.push(2 * n + 1);
            let extra = double_point_count(d - 2 * ni - 1, "(nN - 2n - 1)/2", "over 0", v);
            push_repeated(&mut over_zero, 2, extra);
            vec![
                mark(S::Zero, T::One, 1),
                mark(S::One, T::One, 1),
                mark(S::Lambda, T::One, 1),
                mark(S::Infinity, T::Zero, 2 * n + 1),
            ]
        }
        CaseLabel::II => {
            push_repeated(&mut over_one, 2, double_point_count(d, "nN/2", "over 1", v));
            push_repeated(&mut over_infinity, half_order, n - 1);
            let half = half_multiplicity(oi, "N/2", "over inf", v);
            over_infinity.extend([half, half]);
            over_zero.extend([2 * n + 1, 1]);
            let extra = double_point_count(d - 2 * ni - 2, "(nN - 2n - 2)/2", "over 0", v);
            push_repeated(&mut over_zero, 2, extra);
            vec![
                mark(S::Zero, T::Zero, 1),
                mark(S::One, T::Infinity, half),
                mark(S::Lambda, T::Infinity, half),
                mark(S::Infinity, T::Zero, 2 * n + 1),
            ]
        }
    };

    if !violations.is_empty() {
        return Err(ProfileInvalidity { case, n, half_order, violations });
    }

    let over_zero = CycleType::new(over_zero).expect("table parts are positive");
    let over_one = CycleType::new(over_one).expect("table parts are positive");
    let over_infinity = CycleType::new(over_infinity).expect("table parts are positive");
    // The three fibers of a degree-nN cover must each contain nN points;
    // a mismatch can only be a transcription bug in the tables above.
    for (fiber, ty) in [("over 0", &over_zero), ("over 1", &over_one), ("over inf", &over_infinity)]
    {
        assert_eq!(ty.degree(), degree, "{fiber} parts of case {case} must sum to the degree");
    }

    Ok(RamificationProfile {
        case,
        n,
        half_order,
        degree,
        over_zero,
        over_one,
        over_infinity,
        marks,
    })
}

/// Every table that instantiates at `(n, N)`, in the fixed order Ia, Ib,
/// Ic, Id, II.
pub fn profiles_for(n: u64, half_order: u64) -> Vec<RamificationProfile> {
    CaseLabel::ALL.iter().filter_map(|&case| build_profile(case, n, half_order).ok()).collect()
}

/// Genus of a cover with the profile's branch data, from the
/// Riemann–Hurwitz relation `2 - 2g = 2 deg - sum (e - 1)`. Every profile
/// built from the tables must come out to 0.
pub fn riemann_hurwitz_check(profile: &RamificationProfile) -> Result<i64, RamificationError> {
    let d = profile.degree as i128;
    let branching: i128 = [&profile.over_zero, &profile.over_one, &profile.over_infinity]
        .iter()
        .flat_map(|ty| ty.parts().iter())
        .map(|&part| part as i128 - 1)
        .sum();
    let numerator = 2 - 2 * d + branching;
    if numerator % 2 != 0 {
        return Err(RamificationError::NonIntegralGenus { numerator });
    }
    let genus = numerator / 2;
    if genus < 0 {
        return Err(RamificationError::NegativeGenus { genus });
    }
    Ok(genus as i64)
}

/// Folds an arbitrary index onto the equivalent nonnegative one: `n` and
/// `-n - 1` give the same counts, so negative indices map to `-n - 1`.
/// Returns `None` for `n = 0` and `n = -1`, where `n(n+1) = 0` and no
/// cover exists.
pub fn normalized_index(n: i64) -> Option<u64> {
    let folded: i128 = if n < 0 { -(n as i128) - 1 } else { n as i128 };
    if folded >= 1 {
        Some(folded as u64)
    } else {
        None
    }
}
