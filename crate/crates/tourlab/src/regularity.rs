//! Density chain structures and the machinery around them: exact
//! verification, bad-vertex smoothing, backward matchings with vertex covers,
//! transitive merging, criticality, and the advisory threshold formulas.
//!
//! A chain structure is a sequence of disjoint vertex sets, each tagged
//! linear (size at least `c * n`) or transitive (induces a transitive
//! tournament of size at least `c * tr(T)`), with pairwise forward density at
//! least `1 - lambda`. A structure is smooth when the density bound holds per
//! vertex in both directions for every pair of sets.
//!
//! All structural decisions compare exact integers (`count * den >= (den -
//! num) * total` and so on). The logarithmic threshold formulas are advisory
//! floating-point outputs only and never gate a combinatorial decision.
//!
//! On hosts small enough for the exact subset table (up to 24 vertices) the
//! transitive size bound is checked against the true `tr(T)`. Larger hosts
//! fall back to a documented lower-bound reference: the greedy chain of the
//! host, improved by the structure's own transitive sets.

use crate::frac::Frac;
use crate::tournament::{Error, Tournament, VertexSet};
use crate::transitive::{self, TrTable, TR_EXACT_MAX};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Shape and bounds of a chain structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSpec {
    /// One entry per set: 0 linear, 1 transitive.
    pub w: Vec<u8>,
    pub c: Frac,
    pub lambda: Frac,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SpecError {
    #[error("w must be nonempty and 0/1 valued")]
    BadShape,
    #[error("c must be positive")]
    BadC,
    #[error("lambda must be positive")]
    BadLambda,
}

impl StructureSpec {
    pub fn new(w: Vec<u8>, c: Frac, lambda: Frac) -> Result<StructureSpec, SpecError> {
        if w.is_empty() || w.iter().any(|&x| x > 1) {
            return Err(SpecError::BadShape);
        }
        if c.is_zero() {
            return Err(SpecError::BadC);
        }
        // Fresh structures use lambda < 1/2, but the smoothing step
        // multiplies lambda by 4k, which can pass one; from there on the
        // density constraint is vacuous, so any positive value is legal.
        if lambda.is_zero() {
            return Err(SpecError::BadLambda);
        }
        Ok(StructureSpec { w, c, lambda })
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }
}

/// Ordered disjoint vertex sets in a host tournament, tagged by `spec.w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStructure {
    pub spec: StructureSpec,
    pub sets: Vec<VertexSet>,
}

/// JSON form: `{"w":[0,0,1],"c":"1/8","lambda":"1/12","sets":[[1,4],[2],[3,5]]}`
/// with 1-based vertex labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainStructureJson {
    pub w: Vec<u8>,
    pub c: Frac,
    pub lambda: Frac,
    pub sets: Vec<Vec<usize>>,
}

impl ChainStructure {
    pub fn to_json(&self) -> ChainStructureJson {
        ChainStructureJson {
            w: self.spec.w.clone(),
            c: self.spec.c,
            lambda: self.spec.lambda,
            sets: self.sets.iter().map(|s| s.to_one_based()).collect(),
        }
    }

    pub fn from_json(json: &ChainStructureJson, universe: usize) -> Result<ChainStructure, Error> {
        let spec = StructureSpec::new(json.w.clone(), json.c, json.lambda)
            .map_err(|_| Error::InvalidOrdering(json.w.len()))?;
        let sets = json
            .sets
            .iter()
            .map(|members| VertexSet::from_one_based(universe, members))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChainStructure { spec, sets })
    }
}

/// First failed invariant of a structure check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    LinearTooSmall {
        index: usize,
        size: usize,
    },
    NotTransitive {
        index: usize,
    },
    TransitiveTooSmall {
        index: usize,
        size: usize,
        tr_reference: usize,
    },
    PairDensity {
        i: usize,
        j: usize,
        edges: usize,
    },
    VertexOutDensity {
        i: usize,
        j: usize,
        vertex: usize,
    },
    VertexInDensity {
        i: usize,
        j: usize,
        vertex: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::LinearTooSmall { index, size } => {
                write!(f, "linear set {} has only {} vertices", index + 1, size)
            }
            Violation::NotTransitive { index } => {
                write!(
                    f,
                    "set {} does not induce a transitive tournament",
                    index + 1
                )
            }
            Violation::TransitiveTooSmall {
                index,
                size,
                tr_reference,
            } => write!(
                f,
                "transitive set {} has {} vertices against reference tr {}",
                index + 1,
                size,
                tr_reference
            ),
            Violation::PairDensity { i, j, edges } => write!(
                f,
                "density from set {} to set {} too low ({} forward edges)",
                i + 1,
                j + 1,
                edges
            ),
            Violation::VertexOutDensity { i, j, vertex } => write!(
                f,
                "vertex v{} of set {} has too many inneighbors in set {}",
                vertex + 1,
                i + 1,
                j + 1
            ),
            Violation::VertexInDensity { i, j, vertex } => write!(
                f,
                "vertex v{} of set {} has too many outneighbors into set {}",
                vertex + 1,
                i + 1,
                j + 1
            ),
        }
    }
}

/// Reference value standing in for `tr(T)` in size bounds: exact when the
/// host fits the subset table, otherwise the best certified lower bound
/// available (greedy chain, improved by the structure's own transitive sets).
pub fn tr_reference(t: &Tournament, chain: &ChainStructure) -> usize {
    let mut best = if t.n() <= TR_EXACT_MAX {
        TrTable::build(t).expect("size checked").tr_full()
    } else {
        transitive::greedy_transitive(t).len()
    };
    for (i, set) in chain.sets.iter().enumerate() {
        if chain.spec.w[i] == 1 && t.is_transitive_set(set) {
            best = best.max(set.len());
        }
    }
    best
}

/// `count >= (1 - lambda) * total`, exactly; vacuously true once lambda
/// reaches one.
fn density_ok(count: usize, total: usize, lambda: Frac) -> bool {
    count as u128 * lambda.den() as u128
        >= lambda.den().saturating_sub(lambda.num()) as u128 * total as u128
}

/// `size >= c * base`, exactly.
fn size_ok(size: usize, base: usize, c: Frac) -> bool {
    size as u128 * c.den() as u128 >= c.num() as u128 * base as u128
}

/// Checks the chain-structure invariants; in smooth mode additionally checks
/// the per-vertex densities in both directions for every pair of sets.
/// Returns the first violation in a fixed order (sizes, then pair densities,
/// then per-vertex densities). Malformed input (overlapping sets, out-of-range
/// vertices, shape mismatch) is an error, not a violation.
pub fn verify_structure(
    t: &Tournament,
    chain: &ChainStructure,
    smooth: bool,
) -> Result<Option<Violation>, Error> {
    let k = chain.spec.len();
    if chain.sets.len() != k {
        return Err(Error::InvalidOrdering(k));
    }
    for set in &chain.sets {
        if set.universe() != t.n() {
            return Err(Error::UniverseMismatch);
        }
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if !chain.sets[i].is_disjoint(&chain.sets[j]) {
                return Err(Error::OverlappingSets);
            }
        }
    }

    let c = chain.spec.c;
    let lambda = chain.spec.lambda;
    let needs_tr = chain.spec.w.contains(&1);
    let tr_ref = if needs_tr { tr_reference(t, chain) } else { 0 };

    for (i, set) in chain.sets.iter().enumerate() {
        let size = set.len();
        if chain.spec.w[i] == 0 {
            if !size_ok(size, t.n(), c) {
                return Ok(Some(Violation::LinearTooSmall { index: i, size }));
            }
        } else {
            if !t.is_transitive_set(set) {
                return Ok(Some(Violation::NotTransitive { index: i }));
            }
            if !size_ok(size, tr_ref, c) {
                return Ok(Some(Violation::TransitiveTooSmall {
                    index: i,
                    size,
                    tr_reference: tr_ref,
                }));
            }
        }
    }

    for i in 0..k {
        for j in (i + 1)..k {
            let si = &chain.sets[i];
            let sj = &chain.sets[j];
            let edges = t.edges_between(si, sj);
            if !density_ok(edges, si.len() * sj.len(), lambda) {
                return Ok(Some(Violation::PairDensity { i, j, edges }));
            }
        }
    }

    if smooth {
        for i in 0..k {
            for j in (i + 1)..k {
                let si = &chain.sets[i];
                let sj = &chain.sets[j];
                for v in si.iter() {
                    let wins = t.edges_from_vertex_to_set(v, sj);
                    if !density_ok(wins, sj.len(), lambda) {
                        return Ok(Some(Violation::VertexOutDensity { i, j, vertex: v }));
                    }
                }
                for v in sj.iter() {
                    let losses_to_si = t.edges_from_set_to_vertex(si, v);
                    if !density_ok(losses_to_si, si.len(), lambda) {
                        return Ok(Some(Violation::VertexInDensity { i, j, vertex: v }));
                    }
                }
            }
        }
    }

    Ok(None)
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RefineError {
    #[error("input structure fails verification: {0}")]
    InputInvalid(Violation),
    #[error(transparent)]
    Core(#[from] Error),
}

/// Bad-set smoothing. With `k` sets and `M = 2k`, removes from each set every
/// vertex adjacent from more than `M * lambda * |S_j|` vertices of a later set
/// `S_j`, or adjacent to more than that many vertices of an earlier set
/// (strictly more; ties stay). The result keeps at least half of every set
/// and verifies smooth at `4k * lambda` with `c` halved.
pub fn smooth_refine(
    t: &Tournament,
    chain: &ChainStructure,
) -> Result<ChainStructure, RefineError> {
    if let Some(v) = verify_structure(t, chain, false)? {
        return Err(RefineError::InputInvalid(v));
    }
    let k = chain.spec.len();
    let m = 2 * k as u64;
    let lambda = chain.spec.lambda;

    let mut refined_sets = Vec::with_capacity(k);
    for i in 0..k {
        let mut kept = chain.sets[i].clone();
        for v in chain.sets[i].iter() {
            let mut bad = false;
            for (j, sj) in chain.sets.iter().enumerate() {
                if j == i {
                    continue;
                }
                let count = if i < j {
                    t.edges_from_set_to_vertex(sj, v)
                } else {
                    t.edges_from_vertex_to_set(v, sj)
                };
                // count > M * lambda * |S_j|, exact.
                if count as u128 * lambda.den() as u128
                    > m as u128 * lambda.num() as u128 * sj.len() as u128
                {
                    bad = true;
                    break;
                }
            }
            if bad {
                kept.remove(v);
            }
        }
        refined_sets.push(kept);
    }

    let spec = StructureSpec::new(
        chain.spec.w.clone(),
        chain.spec.c.halve(),
        lambda.scale(2 * m),
    )
    .expect("halving and scaling preserve validity");
    Ok(ChainStructure {
        spec,
        sets: refined_sets,
    })
}

/// Outcome of the backward matching between two sets: either `m` vertex pairs
/// carrying backward edges, or a König vertex cover certifying that what is
/// left outside the cover is fully forward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingOutcome {
    /// Pairs `(x, y)` with the edge running `y -> x`, distinct on both sides.
    Pairs(Vec<(usize, usize)>),
    /// No matching of the requested size: `x_side` is complete to `y_side`,
    /// and the cover (of size below `m`) certifies maximality.
    CompletePair {
        x_side: VertexSet,
        y_side: VertexSet,
        cover_x: VertexSet,
        cover_y: VertexSet,
    },
}

/// Maximum matching in the bipartite backward graph on `(X, Y)` (edge when
/// the tournament edge runs from Y to X), as pairs sorted by X vertex.
pub fn maximum_backward_pairs(t: &Tournament, x: &VertexSet, y: &VertexSet) -> Vec<(usize, usize)> {
    let xs = x.members();
    let ys = y.members();
    let adj: Vec<Vec<usize>> = xs
        .iter()
        .map(|&xv| {
            ys.iter()
                .enumerate()
                .filter(|&(_, &yv)| t.has_edge(yv, xv))
                .map(|(yi, _)| yi)
                .collect()
        })
        .collect();

    fn augment(
        xi: usize,
        adj: &[Vec<usize>],
        match_y: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &yi in &adj[xi] {
            if visited[yi] {
                continue;
            }
            visited[yi] = true;
            if match_y[yi].is_none()
                || augment(match_y[yi].expect("checked"), adj, match_y, visited)
            {
                match_y[yi] = Some(xi);
                return true;
            }
        }
        false
    }

    let mut match_y: Vec<Option<usize>> = vec![None; ys.len()];
    for xi in 0..xs.len() {
        let mut visited = vec![false; ys.len()];
        augment(xi, &adj, &mut match_y, &mut visited);
    }
    let mut pairs: Vec<(usize, usize)> = match_y
        .iter()
        .enumerate()
        .filter_map(|(yi, &mx)| mx.map(|xi| (xs[xi], ys[yi])))
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Backward matching with a König fallback. Builds the bipartite graph on
/// `(X, Y)` with an edge when the tournament edge runs `y -> x`. If a matching
/// of size at least `m` exists, returns the first `m` pairs of a maximum
/// matching. Otherwise extracts a minimum vertex cover via alternating
/// reachability and returns the complement sides, which are complete (X side
/// to Y side) by the cover property; the reported sizes are the actual ones.
pub fn backward_matching(
    t: &Tournament,
    x: &VertexSet,
    y: &VertexSet,
    m: usize,
) -> Result<MatchingOutcome, Error> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet);
    }
    if !x.is_disjoint(y) {
        return Err(Error::OverlappingSets);
    }
    if m == 0 {
        return Err(Error::InvalidOrdering(0));
    }
    let xs = x.members();
    let ys = y.members();
    let adj: Vec<Vec<usize>> = xs
        .iter()
        .map(|&xv| {
            ys.iter()
                .enumerate()
                .filter(|&(_, &yv)| t.has_edge(yv, xv))
                .map(|(yi, _)| yi)
                .collect()
        })
        .collect();

    let pairs = maximum_backward_pairs(t, x, y);
    if pairs.len() >= m {
        return Ok(MatchingOutcome::Pairs(pairs.into_iter().take(m).collect()));
    }

    // König cover from alternating reachability out of the unmatched X side.
    let mut match_of_x: Vec<Option<usize>> = vec![None; xs.len()];
    let mut match_of_y: Vec<Option<usize>> = vec![None; ys.len()];
    for &(xv, yv) in &pairs {
        let xi = xs.iter().position(|&v| v == xv).expect("member");
        let yi = ys.iter().position(|&v| v == yv).expect("member");
        match_of_x[xi] = Some(yi);
        match_of_y[yi] = Some(xi);
    }
    let mut seen_x = vec![false; xs.len()];
    let mut seen_y = vec![false; ys.len()];
    let mut queue: Vec<usize> = (0..xs.len())
        .filter(|&xi| match_of_x[xi].is_none())
        .collect();
    for &xi in &queue {
        seen_x[xi] = true;
    }
    while let Some(xi) = queue.pop() {
        for &yi in &adj[xi] {
            if seen_y[yi] {
                continue;
            }
            seen_y[yi] = true;
            if let Some(back) = match_of_y[yi] {
                if !seen_x[back] {
                    seen_x[back] = true;
                    queue.push(back);
                }
            }
        }
    }
    let mut cover_x = VertexSet::empty(t.n());
    let mut cover_y = VertexSet::empty(t.n());
    let mut x_side = VertexSet::empty(t.n());
    let mut y_side = VertexSet::empty(t.n());
    for (xi, &xv) in xs.iter().enumerate() {
        if seen_x[xi] {
            x_side.insert(xv);
        } else {
            cover_x.insert(xv);
        }
    }
    for (yi, &yv) in ys.iter().enumerate() {
        if seen_y[yi] {
            cover_y.insert(yv);
        } else {
            y_side.insert(yv);
        }
    }
    debug_assert_eq!(cover_x.len() + cover_y.len(), pairs.len());
    debug_assert!(x_side
        .iter()
        .all(|xv| y_side.iter().all(|yv| t.has_edge(xv, yv))));
    Ok(MatchingOutcome::CompletePair {
        x_side,
        y_side,
        cover_x,
        cover_y,
    })
}

/// Merges two transitive sets, one complete to the other, into one transitive
/// set; returns it with its transitive ordering.
pub fn merge_transitive(
    t: &Tournament,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<(VertexSet, Vec<usize>), Error> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    if !a.is_disjoint(b) {
        return Err(Error::OverlappingSets);
    }
    let order_a = t.transitive_order_of(a)?;
    let order_b = t.transitive_order_of(b)?;
    let a_to_b = a.iter().all(|u| b.iter().all(|v| t.has_edge(u, v)));
    let b_to_a = !a_to_b && b.iter().all(|u| a.iter().all(|v| t.has_edge(u, v)));
    let order: Vec<usize> = if a_to_b {
        order_a.iter().chain(order_b.iter()).copied().collect()
    } else if b_to_a {
        order_b.iter().chain(order_a.iter()).copied().collect()
    } else {
        return Err(Error::NotComplete);
    };
    let merged = a.union(b);
    debug_assert!(t.is_transitive_set(&merged));
    Ok((merged, order))
}

/// The three advisory threshold formulas: `log_c(1-f)`, `log_{c/2}(1/2)` and
/// `log_N(2)`. Floating point, for precondition reports only; comparisons
/// against them should allow [`THRESHOLD_TOLERANCE`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub merge_bound: f64,
    pub matching_bound: f64,
    pub size_bound: f64,
}

pub const THRESHOLD_TOLERANCE: f64 = 1e-12;

pub fn epsilon_thresholds(c: Frac, f: Frac, n: u64) -> Result<Thresholds, Error> {
    if c.is_zero() || c >= Frac::one() || f.is_zero() || f >= Frac::one() || n < 2 {
        return Err(Error::InvalidOrdering(0));
    }
    let cf = c.to_f64();
    let ff = f.to_f64();
    Ok(Thresholds {
        merge_bound: (1.0 - ff).ln() / cf.ln(),
        matching_bound: 0.5_f64.ln() / (cf / 2.0).ln(),
        size_bound: 2.0_f64.ln() / (n as f64).ln(),
    })
}

/// Result of the criticality test. When the tournament is not critical the
/// first violating subset is reported: the full vertex set when `tr(T)` is
/// already large enough, otherwise the first proper subset (by size, then
/// lexicographic) whose transitive capacity falls below its size raised to
/// epsilon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalityResult {
    Critical,
    NotCritical { violating: VertexSet },
}

/// Exact criticality test for a rational exponent `eps = p/q`: requires
/// `tr(T)^q < n^p` and, for every proper nonempty subset `S`,
/// `tr(S)^q >= |S|^p`. Power comparisons are exact big-integer comparisons.
pub fn is_epsilon_critical(t: &Tournament, eps: Frac) -> Result<CriticalityResult, Error> {
    let n = t.n();
    if n > 20 {
        return Err(Error::TooLarge {
            what: "criticality check",
            n,
            max: 20,
        });
    }
    let p = u32::try_from(eps.num()).map_err(|_| Error::InvalidOrdering(0))?;
    let q = u32::try_from(eps.den()).map_err(|_| Error::InvalidOrdering(0))?;
    let table = TrTable::build(t)?;
    // size_pow[s] = s^p, tr_pow[k] = k^q.
    let size_pow: Vec<BigUint> = (0..=n).map(|s| BigUint::from(s).pow(p)).collect();
    let tr_pow: Vec<BigUint> = (0..=n).map(|k| BigUint::from(k).pow(q)).collect();

    if tr_pow[table.tr_full()] >= size_pow[n] {
        return Ok(CriticalityResult::NotCritical {
            violating: VertexSet::full(n),
        });
    }
    let mut violator: Option<VertexSet> = None;
    'sizes: for (size, size_p) in size_pow.iter().enumerate().take(n).skip(1) {
        let mut result = None;
        crate::perm::for_each_combination(n, size, |members| {
            let mut mask = 0u32;
            for &v in members {
                mask |= 1 << v;
            }
            if tr_pow[table.tr_of_mask(mask)] < *size_p {
                result = Some(VertexSet::from_members(n, members).expect("in range"));
                return false;
            }
            true
        });
        if let Some(set) = result {
            violator = Some(set);
            break 'sizes;
        }
    }
    match violator {
        Some(violating) => Ok(CriticalityResult::NotCritical { violating }),
        None => Ok(CriticalityResult::Critical),
    }
}

/// Heuristic search for a chain structure matching `spec`: greedy seeding by
/// out-degree with a local swap repair. A `Some` result always passes
/// verification; `None` is not a proof of absence.
pub fn find_structure(t: &Tournament, spec: &StructureSpec) -> Option<ChainStructure> {
    let n = t.n();
    let k = spec.len();

    // Required sizes. Unsatisfiable targets end the search immediately.
    let tr_ref_host = if n <= TR_EXACT_MAX {
        TrTable::build(t).ok()?.tr_full()
    } else {
        transitive::greedy_transitive(t).len()
    };
    let need = |w: u8| -> usize {
        let base = if w == 0 { n } else { tr_ref_host };
        // smallest s with s * den >= num * base
        ((spec.c.num() as u128 * base as u128).div_ceil(spec.c.den() as u128)) as usize
    };
    let targets: Vec<usize> = spec.w.iter().map(|&w| need(w).max(1)).collect();
    if targets.iter().sum::<usize>() > n {
        return None;
    }
    for (i, &w) in spec.w.iter().enumerate() {
        if w == 1 && targets[i] > tr_ref_host {
            return None;
        }
    }

    // Vertices sorted by out-degree, highest first (stable on index).
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(t.out_degree(v)));

    let mut pool: Vec<usize> = by_degree;
    let mut sets: Vec<VertexSet> = Vec::with_capacity(k);
    for i in 0..k {
        // Aim for an even share of the remaining pool (degree bands align
        // with slots that way), but never below this slot's target and never
        // so much that a later slot cannot meet its own target.
        let remaining_targets: usize = targets[i + 1..].iter().sum();
        let share = pool.len() / (k - i);
        let want = targets[i]
            .max(share)
            .min(pool.len().saturating_sub(remaining_targets));
        if want < targets[i] || pool.len() < want {
            return None;
        }
        if spec.w[i] == 0 {
            let taken: Vec<usize> = pool.drain(..want).collect();
            sets.push(VertexSet::from_members(n, &taken).ok()?);
        } else {
            // Greedy transitive chain through the pool in order.
            let mut chain: Vec<usize> = Vec::new();
            let mut chosen = vec![false; pool.len()];
            for (pi, &v) in pool.iter().enumerate() {
                let mut slot = 0;
                while slot < chain.len() && t.has_edge(chain[slot], v) {
                    slot += 1;
                }
                if chain[slot..].iter().all(|&c| t.has_edge(v, c)) {
                    chain.insert(slot, v);
                    chosen[pi] = true;
                    if chain.len() == want {
                        break;
                    }
                }
            }
            if chain.len() < targets[i] {
                return None;
            }
            let set = VertexSet::from_members(n, &chain).ok()?;
            debug_assert!(t.is_transitive_set(&set));
            pool = pool
                .iter()
                .enumerate()
                .filter(|&(pi, _)| !chosen[pi])
                .map(|(_, &v)| v)
                .collect();
            sets.push(set);
        }
    }

    let mut chain = ChainStructure {
        spec: spec.clone(),
        sets,
    };

    // Local repair: move the worst offender of a violated pair to the other
    // side of the boundary when that strictly improves the forward count.
    for _round in 0..64 {
        match verify_structure(t, &chain, false) {
            Ok(None) => return Some(chain),
            Ok(Some(Violation::PairDensity { i, j, .. })) => {
                let si = chain.sets[i].clone();
                let sj = chain.sets[j].clone();
                // Worst vertex of si: most losses into sj. Worst of sj: most
                // wins against si. Swap them when both sets are linear.
                if chain.spec.w[i] != 0 || chain.spec.w[j] != 0 {
                    return None;
                }
                let bad_i = si
                    .iter()
                    .max_by_key(|&v| t.edges_from_set_to_vertex(&sj, v))
                    .expect("nonempty");
                let bad_j = sj
                    .iter()
                    .max_by_key(|&v| t.edges_from_vertex_to_set(v, &si))
                    .expect("nonempty");
                let before = t.edges_between(&si, &sj);
                let mut ni = si.clone();
                let mut nj = sj.clone();
                ni.remove(bad_i);
                nj.remove(bad_j);
                ni.insert(bad_j);
                nj.insert(bad_i);
                let after = t.edges_between(&ni, &nj);
                if after <= before {
                    return None;
                }
                chain.sets[i] = ni;
                chain.sets[j] = nj;
            }
            _ => return None,
        }
    }
    None
}
