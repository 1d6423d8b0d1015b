//! Brute-force dessin counting.
//!
//! A dessin with ramification profile `(over0, over1, overInf)` is a triple
//! of permutations `(g0, g1, gInf)` of the cover degree with those cycle
//! types, product `g0 ∘ g1 ∘ gInf = id`, and transitive action, taken up
//! to simultaneous conjugation. Composition applies the right factor
//! first.
//!
//! The search fixes `gInf` to a canonical block permutation, enumerates
//! candidates for `g0` by backtracking (so `g1` is determined by the
//! product identity), and counts conjugation orbits under the centralizer
//! of `gInf` — which is exactly what simultaneous conjugation leaves once
//! `gInf` is pinned. The sweep is split into prefix states and processed
//! in parallel; results are merged through an ordered set, so counts and
//! representatives do not depend on worker count or scheduling.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ramification::{CaseLabel, CycleType, RamificationProfile};

/// Default refusal bound for the cover degree: 12 keeps the candidate
/// space below a few tens of millions of permutations.
pub const DEFAULT_MAX_DEGREE: u64 = 12;

/// Permutations are stored as byte image arrays with 64-bit point masks.
const HARD_DEGREE_CAP: u64 = 64;

/// Number of placed points after which a search branch is handed to a
/// worker; at degree 12 this yields a few thousand even-sized chunks.
const SPLIT_PLACED: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("cover degree {degree} exceeds the enumeration bound {bound}")]
    DegreeOverBound { degree: u64, bound: u64 },
    #[error("permutation degrees differ: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image array is not a permutation of 0..degree")]
    NotAPermutation,
    #[error("permutation is not in canonical descending-block form")]
    NotCanonicalBlockForm,
    #[error("triple product g0 * g1 * gInf is not the identity")]
    ProductNotIdentity,
    #[error("the triple does not act transitively")]
    NotTransitive,
    #[error("could not build the worker pool: {0}")]
    WorkerPool(String),
}

/// Controls for the brute-force search.
#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    /// Largest cover degree the search will attempt; larger degrees are
    /// refused rather than searched.
    pub max_degree: u64,
    /// Worker threads for the sweep: 1 runs sequentially on the calling
    /// thread, 0 uses the default thread pool.
    pub workers: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { max_degree: DEFAULT_MAX_DEGREE, workers: 0 }
    }
}

/// A permutation of `{0, .., degree-1}` as an image array, degree at most
/// 64. Ordering is lexicographic on the image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(
            degree <= HARD_DEGREE_CAP as usize,
            "degree {degree} exceeds the supported maximum"
        );
        Perm { images: (0..degree as u8).collect() }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<u8>) -> Result<Perm, EnumerationError> {
        let degree = images.len();
        if degree > HARD_DEGREE_CAP as usize {
            return Err(EnumerationError::DegreeOverBound {
                degree: degree as u64,
                bound: HARD_DEGREE_CAP,
            });
        }
        let mut seen = 0u64;
        for &y in &images {
            if y as usize >= degree || seen & (1u64 << y) != 0 {
                return Err(EnumerationError::NotAPermutation);
            }
            seen |= 1u64 << y;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u8 == y)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, EnumerationError> {
        if self.degree() != other.degree() {
            return Err(EnumerationError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Perm { images }
    }

    pub fn cycle_type(&self) -> CycleType {
        let degree = self.degree();
        let mut seen = 0u64;
        let mut lengths = Vec::new();
        for start in 0..degree {
            if seen & (1u64 << start) != 0 {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            loop {
                seen |= 1u64 << x;
                len += 1;
                x = self.images[x] as usize;
                if x == start {
                    break;
                }
            }
            lengths.push(len);
        }
        CycleType::new(lengths).expect("cycle lengths are positive")
    }
}

/// Whether the generators act transitively on `{0, .., degree-1}`.
/// Forward images suffice: a finite set closed under injections is closed
/// under their inverses too.
pub fn is_transitive(generators: &[Perm], degree: usize) -> bool {
    if degree <= 1 {
        return true;
    }
    for g in generators {
        assert_eq!(g.degree(), degree, "generator degree mismatch");
    }
    let mut visited = 1u64;
    let mut stack = vec![0u8];
    let mut reached = 1usize;
    while let Some(x) = stack.pop() {
        for g in generators {
            let y = g.images[x as usize];
            if visited & (1u64 << y) == 0 {
                visited |= 1u64 << y;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == degree
}

/// The fixed representative of a cycle type: consecutive blocks in
/// descending length order, each cycled by one. Type `[4,2]` gives
/// `[1,2,3,0,5,4]`.
pub fn canonical_sigma_inf(ty: &CycleType) -> Perm {
    let degree = ty.degree();
    assert!(degree <= HARD_DEGREE_CAP, "degree {degree} exceeds the supported maximum");
    let mut images = Vec::with_capacity(degree as usize);
    let mut start = 0u8;
    for &len in ty.parts() {
        let len = len as u8;
        for i in 0..len {
            images.push(start + (i + 1) % len);
        }
        start += len;
    }
    Perm { images }
}

/// Generators of the centralizer of a canonical block permutation: one
/// rotation per block of length >= 2 plus one pointwise swap per adjacent
/// pair of equal-length blocks. Together they generate the full
/// centralizer (cyclic groups within blocks, symmetric groups permuting
/// equal blocks).
pub fn centralizer_generators(p: &Perm) -> Result<Vec<Perm>, EnumerationError> {
    let ty = p.cycle_type();
    if *p != canonical_sigma_inf(&ty) {
        return Err(EnumerationError::NotCanonicalBlockForm);
    }
    let degree = p.degree();
    let mut generators = Vec::new();
    let mut start = 0usize;
    let mut previous: Option<(usize, usize)> = None;
    for &len_wide in ty.parts() {
        let len = len_wide as usize;
        if len >= 2 {
            let mut images: Vec<u8> = (0..degree as u8).collect();
            images[start..start + len].copy_from_slice(&p.images[start..start + len]);
            generators.push(Perm { images });
        }
        if let Some((prev_start, prev_len)) = previous {
            if prev_len == len {
                let mut images: Vec<u8> = (0..degree as u8).collect();
                for i in 0..len {
                    images[prev_start + i] = (start + i) as u8;
                    images[start + i] = (prev_start + i) as u8;
                }
                generators.push(Perm { images });
            }
        }
        previous = Some((start, len));
        start += len;
    }
    Ok(generators)
}

/// Order of the centralizer of a permutation with this cycle type in the
/// full symmetric group: the product over lengths `l` with multiplicity
/// `m` of `l^m * m!`.
pub fn centralizer_order(ty: &CycleType) -> u128 {
    let parts = ty.parts();
    let mut order: u128 = 1;
    let mut i = 0;
    while i < parts.len() {
        let len = parts[i];
        let mut m: u128 = 0;
        while i < parts.len() && parts[i] == len {
            m += 1;
            i += 1;
        }
        for k in 1..=m {
            order *= len as u128 * k;
        }
    }
    order
}

/// A transitive permutation triple with identity product: the algebraic
/// form of one dessin. All invariants are checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constellation {
    g0: Perm,
    g1: Perm,
    g_inf: Perm,
}

impl Constellation {
    pub fn new(g0: Perm, g1: Perm, g_inf: Perm) -> Result<Constellation, EnumerationError> {
        for other in [&g1, &g_inf] {
            if g0.degree() != other.degree() {
                return Err(EnumerationError::DegreeMismatch {
                    left: g0.degree(),
                    right: other.degree(),
                });
            }
        }
        if !g0.compose(&g1)?.compose(&g_inf)?.is_identity() {
            return Err(EnumerationError::ProductNotIdentity);
        }
        // g_inf lies in the group generated by g0 and g1, so two
        // generators decide transitivity.
        if !is_transitive(&[g0.clone(), g1.clone()], g0.degree()) {
            return Err(EnumerationError::NotTransitive);
        }
        Ok(Constellation { g0, g1, g_inf })
    }

    pub fn degree(&self) -> usize {
        self.g0.degree()
    }

    pub fn g0(&self) -> &Perm {
        &self.g0
    }

    pub fn g1(&self) -> &Perm {
        &self.g1
    }

    pub fn g_inf(&self) -> &Perm {
        &self.g_inf
    }
}

/// Wire form of one constellation for newline-delimited JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstellationRecord {
    pub degree: u64,
    pub case: CaseLabel,
    pub g0: Vec<u8>,
    pub g1: Vec<u8>,
    #[serde(rename = "gInf")]
    pub g_inf: Vec<u8>,
}

impl ConstellationRecord {
    pub fn new(case: CaseLabel, constellation: &Constellation) -> ConstellationRecord {
        ConstellationRecord {
            degree: constellation.degree() as u64,
            case,
            g0: constellation.g0().images().to_vec(),
            g1: constellation.g1().images().to_vec(),
            g_inf: constellation.g_inf().images().to_vec(),
        }
    }
}

// ---------------------------------------------------------------------
// Backtracking generation of all permutations with a fixed cycle type.
//
// Cycles are placed longest first. Each cycle is written starting from its
// least point (the leader), so every other member is chosen strictly above
// the leader; leaders of equal-length cycles increase strictly. Both rules
// are forced normalizations, so each permutation of the type is produced
// exactly once.
// ---------------------------------------------------------------------

/// A suspended search branch: the assignment so far plus the position in
/// the cycle placement where expansion stopped.
#[derive(Debug, Clone)]
struct SplitState {
    images: Vec<u8>,
    used: u64,
    part_idx: usize,
    /// `(leader, prev, remaining)` of a cycle under construction, or
    /// `None` when between cycles.
    cursor: Option<(u8, u8, u8)>,
    last_leader: u8,
}

enum Mode<'a> {
    /// Expand to completion.
    Run,
    /// Stop once `threshold` points are placed and park the branch.
    Split { threshold: u32, out: &'a mut Vec<SplitState> },
}

struct TypeSearch<'a> {
    degree: usize,
    parts: &'a [u8],
    images: Vec<u8>,
    used: u64,
}

impl<'a> TypeSearch<'a> {
    fn new(degree: usize, parts: &'a [u8]) -> TypeSearch<'a> {
        TypeSearch { degree, parts, images: vec![0; degree], used: 0 }
    }

    fn next_cycle<F: FnMut(&[u8])>(
        &mut self,
        part_idx: usize,
        last_leader: u8,
        mode: &mut Mode,
        emit: &mut F,
    ) {
        if part_idx == self.parts.len() {
            emit(&self.images);
            return;
        }
        if let Mode::Split { threshold, out } = mode {
            if self.used.count_ones() >= *threshold {
                out.push(SplitState {
                    images: self.images.clone(),
                    used: self.used,
                    part_idx,
                    cursor: None,
                    last_leader,
                });
                return;
            }
        }
        let len = self.parts[part_idx];
        let floor =
            if part_idx > 0 && self.parts[part_idx - 1] == len { last_leader + 1 } else { 0 };
        for leader in floor..self.degree as u8 {
            if self.used & (1u64 << leader) != 0 {
                continue;
            }
            self.used |= 1u64 << leader;
            if len == 1 {
                self.images[leader as usize] = leader;
                self.next_cycle(part_idx + 1, leader, mode, emit);
            } else {
                self.extend_cycle(part_idx, leader, leader, len - 1, mode, emit);
            }
            self.used &= !(1u64 << leader);
        }
    }

    fn extend_cycle<F: FnMut(&[u8])>(
        &mut self,
        part_idx: usize,
        leader: u8,
        prev: u8,
        remaining: u8,
        mode: &mut Mode,
        emit: &mut F,
    ) {
        if let Mode::Split { threshold, out } = mode {
            if self.used.count_ones() >= *threshold {
                out.push(SplitState {
                    images: self.images.clone(),
                    used: self.used,
                    part_idx,
                    cursor: Some((leader, prev, remaining)),
                    last_leader: leader,
                });
                return;
            }
        }
        if remaining == 0 {
            self.images[prev as usize] = leader;
            self.next_cycle(part_idx + 1, leader, mode, emit);
            return;
        }
        for next in (leader + 1)..self.degree as u8 {
            if self.used & (1u64 << next) != 0 {
                continue;
            }
            self.images[prev as usize] = next;
            self.used |= 1u64 << next;
            self.extend_cycle(part_idx, leader, next, remaining - 1, mode, emit);
            self.used &= !(1u64 << next);
        }
    }
}

fn run_full<F: FnMut(&[u8])>(degree: usize, parts: &[u8], emit: &mut F) {
    let mut search = TypeSearch::new(degree, parts);
    search.next_cycle(0, 0, &mut Mode::Run, emit);
}

fn run_from_state<F: FnMut(&[u8])>(degree: usize, parts: &[u8], state: &SplitState, emit: &mut F) {
    let mut search = TypeSearch { degree, parts, images: state.images.clone(), used: state.used };
    match state.cursor {
        Some((leader, prev, remaining)) => {
            search.extend_cycle(state.part_idx, leader, prev, remaining, &mut Mode::Run, emit)
        }
        None => search.next_cycle(state.part_idx, state.last_leader, &mut Mode::Run, emit),
    }
}

/// Visits every permutation with exactly this cycle type, each once.
/// Intended for oracles at small degree; refuses degrees above the
/// supported maximum.
pub fn for_each_permutation_with_type(
    ty: &CycleType,
    mut f: impl FnMut(&Perm),
) -> Result<(), EnumerationError> {
    let degree = ty.degree();
    if degree > HARD_DEGREE_CAP {
        return Err(EnumerationError::DegreeOverBound { degree, bound: HARD_DEGREE_CAP });
    }
    let parts: Vec<u8> = ty.parts().iter().map(|&p| p as u8).collect();
    let mut emit = |images: &[u8]| f(&Perm { images: images.to_vec() });
    run_full(degree as usize, &parts, &mut emit);
    Ok(())
}

// ---------------------------------------------------------------------
// The sweep: filter candidates, then count conjugation orbits.
// ---------------------------------------------------------------------

fn length_histogram(ty: &CycleType) -> [u8; 65] {
    let mut histogram = [0u8; 65];
    for &p in ty.parts() {
        histogram[p as usize] += 1;
    }
    histogram
}

/// The survivor test for a candidate `g0`: the product `h = gInf ∘ g0`
/// must have the fiber type over 1 (h and the `g1` it determines are
/// mutually inverse, hence of equal type), and `<g0, h>` must be
/// transitive (it equals `<g0, g1>`).
fn survives(g0: &[u8], g_inf: &[u8], histogram_over_one: &[u8; 65]) -> bool {
    let degree = g0.len();
    let mut h = [0u8; HARD_DEGREE_CAP as usize];
    for x in 0..degree {
        h[x] = g_inf[g0[x] as usize];
    }

    let mut remaining = *histogram_over_one;
    let mut seen = 0u64;
    for start in 0..degree {
        if seen & (1u64 << start) != 0 {
            continue;
        }
        let mut len = 0usize;
        let mut x = start;
        loop {
            seen |= 1u64 << x;
            len += 1;
            x = h[x] as usize;
            if x == start {
                break;
            }
        }
        if remaining[len] == 0 {
            return false;
        }
        remaining[len] -= 1;
    }

    let mut visited = 1u64;
    let mut stack = [0u8; HARD_DEGREE_CAP as usize];
    let mut top = 1usize;
    let mut reached = 1usize;
    while top > 0 {
        top -= 1;
        let x = stack[top] as usize;
        for y in [g0[x], h[x]] {
            if visited & (1u64 << y) == 0 {
                visited |= 1u64 << y;
                stack[top] = y;
                top += 1;
                reached += 1;
            }
        }
    }
    reached == degree
}

/// Lexicographically least member of each conjugation orbit, ascending.
/// Ascending iteration over the full survivor set makes the first
/// unvisited member of an orbit its minimum.
fn orbit_minima(degree: usize, survivors: &BTreeSet<Vec<u8>>, generators: &[Perm]) -> Vec<Vec<u8>> {
    let conjugators: Vec<(Vec<u8>, Vec<u8>)> =
        generators.iter().map(|z| (z.images().to_vec(), z.inverse().images().to_vec())).collect();
    let mut visited: HashSet<Vec<u8>> = HashSet::with_capacity(survivors.len());
    let mut minima = Vec::new();
    for seed in survivors {
        if visited.contains(seed) {
            continue;
        }
        minima.push(seed.clone());
        visited.insert(seed.clone());
        let mut queue = vec![seed.clone()];
        while let Some(g) = queue.pop() {
            for (z, z_inv) in &conjugators {
                let mut conjugate = vec![0u8; degree];
                for (x, slot) in conjugate.iter_mut().enumerate() {
                    *slot = z[g[z_inv[x] as usize] as usize];
                }
                if !visited.contains(&conjugate) {
                    assert!(
                        survivors.contains(&conjugate),
                        "conjugation by the centralizer must preserve the survivor set"
                    );
                    visited.insert(conjugate.clone());
                    queue.push(conjugate);
                }
            }
        }
    }
    minima
}

fn survivor_orbit_minima(
    profile: &RamificationProfile,
    config: &EnumerationConfig,
) -> Result<Vec<Vec<u8>>, EnumerationError> {
    let degree = profile.degree;
    let bound = config.max_degree.min(HARD_DEGREE_CAP);
    if degree > bound {
        return Err(EnumerationError::DegreeOverBound { degree, bound });
    }
    let d = degree as usize;
    let g_inf = canonical_sigma_inf(&profile.over_infinity);
    let g_inf_images = g_inf.images().to_vec();
    let parts0: Vec<u8> = profile.over_zero.parts().iter().map(|&p| p as u8).collect();
    let histogram = length_histogram(&profile.over_one);

    let survivors: BTreeSet<Vec<u8>> = if config.workers == 1 {
        let mut found: Vec<Vec<u8>> = Vec::new();
        let mut emit = |images: &[u8]| {
            if survives(images, &g_inf_images, &histogram) {
                found.push(images.to_vec());
            }
        };
        run_full(d, &parts0, &mut emit);
        found.into_iter().collect()
    } else {
        let mut states = Vec::new();
        let mut shallow: Vec<Vec<u8>> = Vec::new();
        {
            let mut mode = Mode::Split { threshold: SPLIT_PLACED, out: &mut states };
            let mut emit = |images: &[u8]| {
                if survives(images, &g_inf_images, &histogram) {
                    shallow.push(images.to_vec());
                }
            };
            let mut search = TypeSearch::new(d, &parts0);
            search.next_cycle(0, 0, &mut mode, &mut emit);
        }
        let sweep = || -> Vec<Vec<u8>> {
            states
                .par_iter()
                .flat_map_iter(|state| {
                    let mut found: Vec<Vec<u8>> = Vec::new();
                    let mut emit = |images: &[u8]| {
                        if survives(images, &g_inf_images, &histogram) {
                            found.push(images.to_vec());
                        }
                    };
                    run_from_state(d, &parts0, state, &mut emit);
                    found.into_iter()
                })
                .collect()
        };
        let deep = if config.workers == 0 {
            sweep()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.workers)
                .build()
                .map_err(|e| EnumerationError::WorkerPool(e.to_string()))?;
            pool.install(sweep)
        };
        shallow.into_iter().chain(deep).collect()
    };

    let generators = centralizer_generators(&g_inf)?;
    Ok(orbit_minima(d, &survivors, &generators))
}

/// Counts the dessins with this profile's ramification data by exhaustive
/// search: transitive triples of the prescribed cycle types with identity
/// product, up to simultaneous conjugation.
pub fn count_dessins(
    profile: &RamificationProfile,
    config: &EnumerationConfig,
) -> Result<u64, EnumerationError> {
    Ok(survivor_orbit_minima(profile, config)?.len() as u64)
}

/// One canonical representative per dessin class, ordered by `g0`: `gInf`
/// is the canonical block permutation of the fiber over infinity, `g0` the
/// least member of its conjugation orbit, and `g1` the permutation forced
/// by the product identity.
pub fn enumerate_representatives(
    profile: &RamificationProfile,
    config: &EnumerationConfig,
) -> Result<Vec<Constellation>, EnumerationError> {
    let g_inf = canonical_sigma_inf(&profile.over_infinity);
    survivor_orbit_minima(profile, config)?
        .into_iter()
        .map(|images| {
            let g0 = Perm { images };
            // g0 ∘ g1 ∘ gInf = id  =>  g1 = (gInf ∘ g0)^-1
            let g1 = g_inf.compose(&g0)?.inverse();
            Constellation::new(g0, g1, g_inf.clone())
        })
        .collect()
}

/// Brute-force dessin counts at `(n, N)` broken down by case, in the
/// fixed table order.
pub fn dessins_by_case(
    n: u64,
    half_order: u64,
    config: &EnumerationConfig,
) -> Result<Vec<(CaseLabel, u64)>, EnumerationError> {
    let degree = n as u128 * half_order as u128;
    let bound = config.max_degree.min(HARD_DEGREE_CAP);
    if degree > bound as u128 {
        let degree = degree.min(u64::MAX as u128) as u64;
        return Err(EnumerationError::DegreeOverBound { degree, bound });
    }
    crate::ramification::profiles_for(n, half_order)
        .iter()
        .map(|profile| Ok((profile.case, count_dessins(profile, config)?)))
        .collect()
}

/// Total brute-force dessin count at `(n, N)`: the sum over all valid
/// profiles. This is the independent route to the closed-form `D(n, N)`.
pub fn total_dessins_bruteforce(
    n: u64,
    half_order: u64,
    config: &EnumerationConfig,
) -> Result<u64, EnumerationError> {
    Ok(dessins_by_case(n, half_order, config)?.iter().map(|&(_, count)| count).sum())
}
