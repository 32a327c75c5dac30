//! Replay engines for the two six-vertex extensions of C5.
//!
//! Given a host tournament equipped with a smooth chain structure of the
//! right shape (`w = (0,0,1,0,0,0)` for L2, `w = (0,0,1,0,0,0,0)` for L1,
//! lambda at most 1/12), `replay` executes the constructive case analysis
//! step by step and returns either an explicit pattern embedding (with the
//! distinguished ordering it realizes, forest or cyclic) or a merge
//! certificate: two sets, one complete to the other, one transitive, whose
//! union witnesses a combined transitive subtournament. Branches that a
//! criticality argument would close with a contradiction emit the
//! corresponding certificate instead, since concrete finite instances carry
//! no such hypothesis.
//!
//! Every choice ("pick j", "pick u", "pick s", backward-edge scans) takes the
//! lexicographically first valid element, so identical inputs produce
//! identical traces.

use crate::frac::Frac;
use crate::patterns::{
    l1_cyclic_ordering, l1_forest_ordering, l2_cyclic_ordering, l2_forest_ordering, named,
    PatternName, PatternOrderingKind,
};
use crate::regularity::{
    maximum_backward_pairs, tr_reference, verify_structure, ChainStructure, StructureSpec,
    Violation,
};
use crate::tournament::{pair_index, Error, Tournament, VertexSet, MAX_IO_VERTICES, MAX_VERTICES};
use crate::transitive::{tr_witness_of_subset, TR_EXACT_MAX};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReplayPattern {
    L1,
    L2,
}

impl ReplayPattern {
    pub fn expected_w(self) -> &'static [u8] {
        match self {
            ReplayPattern::L2 => &[0, 0, 1, 0, 0, 0],
            ReplayPattern::L1 => &[0, 0, 1, 0, 0, 0, 0],
        }
    }

    pub fn pattern_name(self) -> PatternName {
        match self {
            ReplayPattern::L1 => PatternName::L1,
            ReplayPattern::L2 => PatternName::L2,
        }
    }
}

impl std::fmt::Display for ReplayPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReplayPattern::L1 => f.write_str("l1"),
            ReplayPattern::L2 => f.write_str("l2"),
        }
    }
}

/// Which branch of the case analysis an instance is planted to exercise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlantCase {
    /// Both `x_j -> u` and `v -> y_j` hold: forest-ordering construction.
    Both,
    /// `u -> x_j` holds: cyclic-ordering construction around u.
    MirrorU,
    /// `x_j -> u` but `y_j -> v`: the mirrored cyclic construction around v.
    MirrorV,
}

impl PlantCase {
    pub const ALL: [PlantCase; 3] = [PlantCase::Both, PlantCase::MirrorU, PlantCase::MirrorV];
}

/// One direction of completeness between the certificate sets.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeDirection {
    BulkToTransitive,
    TransitiveToBulk,
}

/// Constructive content of a closed branch: `transitive_part` induces a
/// transitive tournament, `bulk` is complete to it (or from it), and merging
/// the best transitive subset of `bulk` with `transitive_part` yields a
/// transitive set of exactly `claimed_gain` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeCertificate {
    pub transitive_part: VertexSet,
    pub bulk: VertexSet,
    pub direction: MergeDirection,
    pub claimed_gain: usize,
}

/// A found pattern copy: the six host vertices in position order of the named
/// ordering (`vertices[p]` plays the pattern vertex at position `p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternEmbedding {
    pub ordering_kind: PatternOrderingKind,
    pub vertices: [usize; 6],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayResult {
    Embedding(PatternEmbedding),
    Merge(MergeCertificate),
}

#[derive(Clone, Debug)]
pub struct ReplayOutcome {
    pub pattern: ReplayPattern,
    pub result: ReplayResult,
    pub trace: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ReplayError {
    #[error("chain shape does not match {pattern}: expected w = {expected:?}")]
    WrongShape {
        pattern: ReplayPattern,
        expected: Vec<u8>,
    },
    #[error("lambda {0} exceeds 1/12")]
    LambdaTooLarge(Frac),
    #[error("chain fails smooth verification: {0}")]
    ChainInvalid(Violation),
    #[error("transitive set smaller than three after trimming to a multiple of three")]
    TransitiveSetTooSmall,
    #[error("certificate bulk exceeds the exact-gain limit of {TR_EXACT_MAX} vertices")]
    BulkTooLargeForGain,
    #[error(transparent)]
    Core(#[from] Error),
}

/// Does the 6-tuple, read in position order, induce exactly the named
/// ordering of the pattern?
pub fn tuple_realizes_ordering(
    t: &Tournament,
    tuple: &[usize; 6],
    pattern: ReplayPattern,
    kind: PatternOrderingKind,
) -> bool {
    let ordering = match (pattern, kind) {
        (ReplayPattern::L1, PatternOrderingKind::Forest) => l1_forest_ordering(),
        (ReplayPattern::L1, PatternOrderingKind::Cyclic) => l1_cyclic_ordering(),
        (ReplayPattern::L2, PatternOrderingKind::Forest) => l2_forest_ordering(),
        (ReplayPattern::L2, PatternOrderingKind::Cyclic) => l2_cyclic_ordering(),
    };
    let pat = named(pattern.pattern_name());
    let mut seen = VertexSet::empty(t.n());
    for &v in tuple {
        if v >= t.n() || seen.contains(v) {
            return false;
        }
        seen.insert(v);
    }
    for p in 0..6 {
        for q in (p + 1)..6 {
            let want = pat.has_edge(ordering.vertex_at(p), ordering.vertex_at(q));
            if t.has_edge(tuple[p], tuple[q]) != want {
                return false;
            }
        }
    }
    true
}

/// First backward edge `z -> w` with `z` in `from_later`, `w` in `to_earlier`
/// (z ascending, then w ascending).
fn first_backward_edge(
    t: &Tournament,
    from_later: &VertexSet,
    to_earlier: &VertexSet,
) -> Option<(usize, usize)> {
    for z in from_later.iter() {
        for w in to_earlier.iter() {
            if t.has_edge(z, w) {
                return Some((z, w));
            }
        }
    }
    None
}

fn filter_set(
    t: &Tournament,
    base: &VertexSet,
    outneighbor_of: &[usize],
    inneighbor_of: &[usize],
) -> VertexSet {
    let mut out = VertexSet::empty(base.universe());
    'members: for a in base.iter() {
        for &s in outneighbor_of {
            if !t.has_edge(s, a) {
                continue 'members;
            }
        }
        for &s in inneighbor_of {
            if !t.has_edge(a, s) {
                continue 'members;
            }
        }
        out.insert(a);
    }
    out
}

fn certificate(
    t: &Tournament,
    bulk: VertexSet,
    transitive_part: VertexSet,
    direction: MergeDirection,
) -> Result<MergeCertificate, ReplayError> {
    if bulk.len() > TR_EXACT_MAX {
        return Err(ReplayError::BulkTooLargeForGain);
    }
    let (tr_bulk, _) = tr_witness_of_subset(t, &bulk)?;
    debug_assert!(t.is_transitive_set(&transitive_part));
    Ok(MergeCertificate {
        claimed_gain: tr_bulk + transitive_part.len(),
        transitive_part,
        bulk,
        direction,
    })
}

/// Executes the constructive case analysis on a concrete instance.
pub fn replay(
    t: &Tournament,
    chain: &ChainStructure,
    pattern: ReplayPattern,
) -> Result<ReplayOutcome, ReplayError> {
    let expected = pattern.expected_w();
    if chain.spec.w != expected {
        return Err(ReplayError::WrongShape {
            pattern,
            expected: expected.to_vec(),
        });
    }
    if chain.spec.lambda > Frac::new(1, 12) {
        return Err(ReplayError::LambdaTooLarge(chain.spec.lambda));
    }
    if let Some(v) = verify_structure(t, chain, true)? {
        return Err(ReplayError::ChainInvalid(v));
    }

    let mut trace: Vec<String> = Vec::new();
    let a1 = &chain.sets[0];
    let a2 = &chain.sets[1];
    let t0 = &chain.sets[2];
    let y_source = &chain.sets[5]; // fifth linear set for both patterns

    // (a) Trim the transitive set to a multiple of three, dropping the tail
    // of its transitive order.
    let t0_order = t.transitive_order_of(t0)?;
    let keep = t0_order.len() - t0_order.len() % 3;
    if keep < 3 {
        return Err(ReplayError::TransitiveSetTooSmall);
    }
    trace.push(format!("trim(|S|={keep})"));

    // (b) Split into thirds by transitive position.
    let third = keep / 3;
    let n = t.n();
    let t1 = VertexSet::from_members(n, &t0_order[..third])?;
    let t2 = VertexSet::from_members(n, &t0_order[third..2 * third])?;
    let t3 = VertexSet::from_members(n, &t0_order[2 * third..keep])?;
    trace.push(format!("split({third},{third},{third})"));

    // (c) Backward matching between the first linear set and the fifth.
    let pairs = maximum_backward_pairs(t, a1, y_source);
    trace.push(format!("match(k={})", pairs.len()));
    if pairs.is_empty() {
        // No backward edge at all: the first set is complete to the fifth.
        trace.push("merge-complete-pair".into());
        let (_, witness) = tr_witness_of_subset(t, y_source)?;
        let part = VertexSet::from_members(n, &witness)?;
        let cert = certificate(t, a1.clone(), part, MergeDirection::BulkToTransitive)?;
        return Ok(ReplayOutcome {
            pattern,
            result: ReplayResult::Merge(cert),
            trace,
        });
    }

    // (d) Wrong sets: matched x's complete to T3, matched y's complete from T1.
    let x_wrong: Vec<usize> = pairs
        .iter()
        .map(|&(x, _)| x)
        .filter(|&x| t3.iter().all(|w| t.has_edge(x, w)))
        .collect();
    let y_wrong: Vec<usize> = pairs
        .iter()
        .map(|&(_, y)| y)
        .filter(|&y| t1.iter().all(|w| t.has_edge(w, y)))
        .collect();
    let good = pairs
        .iter()
        .find(|&&(x, y)| !x_wrong.contains(&x) && !y_wrong.contains(&y));
    let Some(&(xj, yj)) = good else {
        trace.push("wrong-sets".into());
        if !x_wrong.is_empty() {
            trace.push("merge-wrong-x".into());
            let bulk = VertexSet::from_members(n, &x_wrong)?;
            let cert = certificate(t, bulk, t3, MergeDirection::BulkToTransitive)?;
            return Ok(ReplayOutcome {
                pattern,
                result: ReplayResult::Merge(cert),
                trace,
            });
        }
        trace.push("merge-wrong-y".into());
        let bulk = VertexSet::from_members(n, &y_wrong)?;
        let cert = certificate(t, bulk, t1, MergeDirection::TransitiveToBulk)?;
        return Ok(ReplayOutcome {
            pattern,
            result: ReplayResult::Merge(cert),
            trace,
        });
    };

    // (e) First outneighbor of y_j in T1 and first inneighbor of x_j in T3.
    let u = t1
        .iter()
        .find(|&u| t.has_edge(yj, u))
        .expect("y_j is not wrong, so it has an outneighbor in T1");
    let v = t3
        .iter()
        .find(|&v| t.has_edge(v, xj))
        .expect("x_j is not wrong, so it has an inneighbor in T3");
    trace.push(format!(
        "pick-j(x=v{},y=v{},u=v{},v=v{})",
        xj + 1,
        yj + 1,
        u + 1,
        v + 1
    ));

    // (f) Three-way case split on the edges (x_j, u) and (v, y_j).
    let both = t.has_edge(xj, u) && t.has_edge(v, yj);
    if both {
        trace.push("case-BOTH".into());
        let t2_star = filter_set(t, &t2, &[xj], &[yj]);
        type TupleBuilder = fn(usize, usize, usize, usize, usize, usize) -> [usize; 6];
        let (star_set, tuple_builder): (VertexSet, TupleBuilder) = match pattern {
            ReplayPattern::L2 => (
                filter_set(t, &chain.sets[3], &[xj, u, v], &[yj]),
                |xj, u, w, v, z, yj| [xj, u, w, v, z, yj],
            ),
            ReplayPattern::L1 => (
                filter_set(t, &chain.sets[6], &[xj, u, v, yj], &[]),
                |xj, u, w, v, z, yj| [xj, u, w, v, yj, z],
            ),
        };
        match first_backward_edge(t, &star_set, &t2_star) {
            Some((z, w)) => {
                trace.push(format!("forest-assemble(w=v{},z=v{})", w + 1, z + 1));
                let tuple = tuple_builder(xj, u, w, v, z, yj);
                assert!(
                    tuple_realizes_ordering(t, &tuple, pattern, PatternOrderingKind::Forest),
                    "assembled tuple must induce the forest ordering"
                );
                return Ok(ReplayOutcome {
                    pattern,
                    result: ReplayResult::Embedding(PatternEmbedding {
                        ordering_kind: PatternOrderingKind::Forest,
                        vertices: tuple,
                    }),
                    trace,
                });
            }
            None => {
                trace.push("merge-no-backward".into());
                let cert = certificate(t, star_set, t2_star, MergeDirection::TransitiveToBulk)?;
                return Ok(ReplayOutcome {
                    pattern,
                    result: ReplayResult::Merge(cert),
                    trace,
                });
            }
        }
    }

    // Cyclic constructions. MIRROR-U pivots on u when u -> x_j; otherwise
    // x_j -> u holds and y_j -> v must, so the mirrored branch pivots on v.
    let (case_name, pivot) = if t.has_edge(u, xj) {
        ("case-MIRROR-U", u)
    } else {
        debug_assert!(t.has_edge(yj, v));
        ("case-MIRROR-V", v)
    };
    trace.push(case_name.into());

    let a2_star = filter_set(t, a2, &[xj], &[pivot, yj]);
    let first_star = match pattern {
        ReplayPattern::L2 => filter_set(t, &chain.sets[4], &[xj, pivot], &[yj]),
        ReplayPattern::L1 => filter_set(t, &chain.sets[3], &[xj, pivot], &[yj]),
    };
    match first_backward_edge(t, &first_star, &a2_star) {
        Some((z, w)) => {
            let second_star = match pattern {
                ReplayPattern::L2 => filter_set(t, &chain.sets[3], &[xj, w, pivot], &[z, yj]),
                ReplayPattern::L1 => filter_set(t, &chain.sets[4], &[xj, w, pivot, z], &[yj]),
            };
            let s = second_star
                .iter()
                .next()
                .expect("smoothness keeps the starred set nonempty");
            trace.push(format!(
                "cyclic-assemble(w=v{},z=v{},s=v{})",
                w + 1,
                z + 1,
                s + 1
            ));
            let tuple = match pattern {
                ReplayPattern::L2 => [xj, w, pivot, s, z, yj],
                ReplayPattern::L1 => [xj, w, pivot, z, s, yj],
            };
            assert!(
                tuple_realizes_ordering(t, &tuple, pattern, PatternOrderingKind::Cyclic),
                "assembled tuple must induce the cyclic ordering"
            );
            Ok(ReplayOutcome {
                pattern,
                result: ReplayResult::Embedding(PatternEmbedding {
                    ordering_kind: PatternOrderingKind::Cyclic,
                    vertices: tuple,
                }),
                trace,
            })
        }
        None => {
            trace.push("merge-no-backward".into());
            let (_, witness) = tr_witness_of_subset(t, &first_star)?;
            let part = VertexSet::from_members(n, &witness)?;
            let cert = certificate(t, a2_star, part, MergeDirection::BulkToTransitive)?;
            Ok(ReplayOutcome {
                pattern,
                result: ReplayResult::Merge(cert),
                trace,
            })
        }
    }
}

/// Why an outcome failed re-verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeFlaw(pub String);

impl std::fmt::Display for OutcomeFlaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Independent re-check of a replay outcome: embeddings are re-verified
/// against the named pattern edge by edge, merge certificates are re-verified
/// for transitivity, completeness, exact claimed gain, and constructibility
/// of the merged witness. The trace is ignored.
pub fn verify_outcome(t: &Tournament, outcome: &ReplayOutcome) -> Result<(), OutcomeFlaw> {
    match &outcome.result {
        ReplayResult::Embedding(emb) => {
            if !tuple_realizes_ordering(t, &emb.vertices, outcome.pattern, emb.ordering_kind) {
                return Err(OutcomeFlaw(format!(
                    "tuple does not induce the {} ordering of {}",
                    emb.ordering_kind, outcome.pattern
                )));
            }
            Ok(())
        }
        ReplayResult::Merge(cert) => {
            if cert.transitive_part.is_empty() || cert.bulk.is_empty() {
                return Err(OutcomeFlaw("certificate has an empty side".into()));
            }
            if !cert.transitive_part.is_disjoint(&cert.bulk) {
                return Err(OutcomeFlaw("certificate sides overlap".into()));
            }
            if !t.is_transitive_set(&cert.transitive_part) {
                return Err(OutcomeFlaw("transitive part is not transitive".into()));
            }
            let (from, to) = match cert.direction {
                MergeDirection::BulkToTransitive => (&cert.bulk, &cert.transitive_part),
                MergeDirection::TransitiveToBulk => (&cert.transitive_part, &cert.bulk),
            };
            for a in from.iter() {
                for b in to.iter() {
                    if !t.has_edge(a, b) {
                        return Err(OutcomeFlaw(format!(
                            "completeness fails at v{} -> v{}",
                            a + 1,
                            b + 1
                        )));
                    }
                }
            }
            if cert.bulk.len() > TR_EXACT_MAX {
                return Err(OutcomeFlaw("bulk too large for exact gain check".into()));
            }
            let (tr_bulk, witness) =
                tr_witness_of_subset(t, &cert.bulk).map_err(|e| OutcomeFlaw(e.to_string()))?;
            if cert.claimed_gain != tr_bulk + cert.transitive_part.len() {
                return Err(OutcomeFlaw(format!(
                    "claimed gain {} differs from tr(bulk) + |part| = {}",
                    cert.claimed_gain,
                    tr_bulk + cert.transitive_part.len()
                )));
            }
            let witness_set =
                VertexSet::from_members(t.n(), &witness).map_err(|e| OutcomeFlaw(e.to_string()))?;
            let (merged, _) =
                crate::regularity::merge_transitive(t, &witness_set, &cert.transitive_part)
                    .map_err(|e| OutcomeFlaw(format!("merged witness not constructible: {e}")))?;
            if merged.len() != cert.claimed_gain {
                return Err(OutcomeFlaw("merged witness has the wrong size".into()));
            }
            Ok(())
        }
    }
}

// ---- instance generation ----

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PlantError {
    #[error("expected {expected} set sizes, got {got}")]
    WrongSizeCount { expected: usize, got: usize },
    #[error("set {index} needs at least {required} vertices for this case, got {got}")]
    SizesTooSmall {
        index: usize,
        required: usize,
        got: usize,
    },
    #[error("instance would have {n} vertices, limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Core(#[from] Error),
}

/// Deterministic bit stream over the ChaCha8 keystream: successive 64-bit
/// words consumed low bit first.
struct BitStream {
    rng: ChaCha8Rng,
    buf: u64,
    left: u32,
}

impl BitStream {
    fn new(seed: u64) -> BitStream {
        BitStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
            buf: 0,
            left: 0,
        }
    }

    fn bit(&mut self) -> bool {
        if self.left == 0 {
            self.buf = self.rng.next_u64();
            self.left = 64;
        }
        let b = self.buf & 1 == 1;
        self.buf >>= 1;
        self.left -= 1;
        b
    }

    fn below(&mut self, n: usize) -> usize {
        (self.rng.next_u64() % n as u64) as usize
    }
}

/// Uniformly seeded tournament: each pair's orientation is one bit of the
/// ChaCha8 stream, pairs in lexicographic order. Deterministic in the seed.
pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament, Error> {
    if n == 0 || n > MAX_IO_VERTICES {
        return Err(Error::TooLarge {
            what: "random tournament",
            n,
            max: MAX_IO_VERTICES,
        });
    }
    Ok(random_tournament_any(n, seed))
}

/// Internal variant without the interchange cap, for large test hosts.
pub(crate) fn random_tournament_any(n: usize, seed: u64) -> Tournament {
    let mut bits = BitStream::new(seed);
    Tournament::from_fn(n, |_, _| bits.bit()).expect("size checked by caller")
}

/// Smallest usable size per set for a (pattern, case) pair. A planted
/// backward edge incident to a set needs per-vertex slack `lambda * size >=
/// 1`, i.e. size 12 at lambda = 1/12; the mirror cases put two backward edges
/// on one vertex against the transitive set, hence 24 there.
pub fn required_sizes(pattern: ReplayPattern, case: PlantCase) -> Vec<usize> {
    match (pattern, case) {
        (ReplayPattern::L2, PlantCase::Both) => vec![12, 1, 12, 12, 1, 12],
        (ReplayPattern::L2, _) => vec![12, 12, 24, 1, 12, 12],
        (ReplayPattern::L1, PlantCase::Both) => vec![12, 1, 12, 1, 1, 12, 12],
        (ReplayPattern::L1, _) => vec![12, 12, 24, 12, 1, 12, 12],
    }
}

/// Default plant sizes: 12 per linear set, transitive set 12 (24 for the
/// mirror cases).
pub fn default_sizes(pattern: ReplayPattern, case: PlantCase) -> Vec<usize> {
    let k = pattern.expected_w().len();
    let mut sizes = vec![12usize; k];
    if case != PlantCase::Both {
        sizes[2] = 24;
    }
    sizes
}

/// Builds a host tournament plus a smooth chain (lambda = 1/12) forcing the
/// designated replay case: cross-set edges run forward except for the planted
/// backward edges, edges inside linear sets are sampled uniformly, and a few
/// extra random backward cross edges are attempted and kept only when smooth
/// verification still passes. Deterministic in the seed.
pub fn plant_instance(
    pattern: ReplayPattern,
    case: PlantCase,
    sizes: &[usize],
    seed: u64,
) -> Result<(Tournament, ChainStructure), PlantError> {
    let k = pattern.expected_w().len();
    if sizes.len() != k {
        return Err(PlantError::WrongSizeCount {
            expected: k,
            got: sizes.len(),
        });
    }
    let minimums = required_sizes(pattern, case);
    for (i, (&got, &req)) in sizes.iter().zip(&minimums).enumerate() {
        if got < req {
            return Err(PlantError::SizesTooSmall {
                index: i,
                required: req,
                got,
            });
        }
    }
    let n: usize = sizes.iter().sum();
    if n > MAX_VERTICES {
        return Err(PlantError::TooLarge {
            n,
            max: MAX_VERTICES,
        });
    }

    let mut starts = Vec::with_capacity(k);
    let mut acc = 0;
    for &s in sizes {
        starts.push(acc);
        acc += s;
    }
    let set_of = |vertex: usize| -> usize {
        match starts.binary_search(&vertex) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    };

    let transitive_slot = 2usize;
    let mut bits = BitStream::new(seed);
    // forward flag per pair; cross-set and transitive-internal edges forward,
    // linear-internal edges uniform.
    let m = n * (n - 1) / 2;
    let mut forward = vec![true; m];
    for i in 0..n {
        for j in (i + 1)..n {
            if set_of(i) == set_of(j) && set_of(i) != transitive_slot {
                forward[pair_index(n, i, j)] = bits.bit();
            }
        }
    }

    // Planted special vertices.
    let x = starts[0];
    let y = starts[5];
    let s_start = starts[transitive_slot];
    let s_len = sizes[transitive_slot];
    let keep = s_len - s_len % 3;
    let third = keep / 3;
    let u = s_start; // first of T1
    let v = s_start + 2 * third; // first of T3
    let w_both = s_start + third; // first of T2
    let (z, w2) = match (pattern, case) {
        (ReplayPattern::L2, PlantCase::Both) => (starts[3], w_both),
        (ReplayPattern::L1, PlantCase::Both) => (starts[6], w_both),
        (ReplayPattern::L2, _) => (starts[4], starts[1]),
        (ReplayPattern::L1, _) => (starts[3], starts[1]),
    };

    let flip = |forward: &mut [bool], from: usize, to: usize| {
        debug_assert!(from > to);
        forward[pair_index(n, to, from)] = false;
    };
    flip(&mut forward, y, x);
    flip(&mut forward, y, u);
    flip(&mut forward, v, x);
    flip(&mut forward, z, w2);
    match case {
        PlantCase::Both => {}
        PlantCase::MirrorU => flip(&mut forward, u, x),
        PlantCase::MirrorV => flip(&mut forward, y, v),
    }

    let build = |forward: &[bool]| {
        Tournament::from_fn(n, |i, j| forward[pair_index(n, i, j)]).expect("size checked")
    };
    let t = build(&forward);

    // Chain with the tightest c the sizes allow.
    let sets: Vec<VertexSet> = (0..k)
        .map(|i| {
            VertexSet::from_members(n, &(starts[i]..starts[i] + sizes[i]).collect::<Vec<_>>())
                .expect("contiguous members")
        })
        .collect();
    let lambda = Frac::new(1, 12);
    let chain_c = |t: &Tournament, sets: &[VertexSet]| -> Frac {
        let probe = ChainStructure {
            spec: StructureSpec::new(pattern.expected_w().to_vec(), Frac::new(1, 2), lambda)
                .expect("valid spec"),
            sets: sets.to_vec(),
        };
        let tr_ref = tr_reference(t, &probe);
        let mut c = Frac::new(sizes[transitive_slot] as u64, tr_ref as u64);
        for (i, &size) in sizes.iter().enumerate() {
            if i != transitive_slot {
                c = c.min(Frac::new(size as u64, n as u64));
            }
        }
        c
    };
    let make_chain = |t: &Tournament| -> ChainStructure {
        ChainStructure {
            spec: StructureSpec::new(pattern.expected_w().to_vec(), chain_c(t, &sets), lambda)
                .expect("valid spec"),
            sets: sets.clone(),
        }
    };

    let chain = make_chain(&t);
    debug_assert_eq!(verify_structure(&t, &chain, true), Ok(None));

    // A few extra random backward cross edges, kept only when the chain still
    // verifies smooth. Pairs that pin the replay choices are excluded, as are
    // the special vertices.
    let specials = [x, y, u, v, z, w2];
    let protected = [(5usize, 0usize), (5, 2), (2, 0)];
    let mut t_current = t;
    for _ in 0..4 {
        let j = 1 + bits.below(k - 1);
        let i = bits.below(j);
        if protected.contains(&(j, i)) {
            continue;
        }
        let a = starts[j] + bits.below(sizes[j]);
        let b = starts[i] + bits.below(sizes[i]);
        if specials.contains(&a) || specials.contains(&b) {
            continue;
        }
        let idx = pair_index(n, b, a);
        if !forward[idx] {
            continue;
        }
        forward[idx] = false;
        let candidate = build(&forward);
        let cand_chain = make_chain(&candidate);
        if verify_structure(&candidate, &cand_chain, true) == Ok(None) {
            t_current = candidate;
        } else {
            forward[idx] = true;
        }
    }

    let final_chain = make_chain(&t_current);
    assert_eq!(
        verify_structure(&t_current, &final_chain, true),
        Ok(None),
        "planted instance must verify smooth"
    );
    Ok((t_current, final_chain))
}

// ---- reporting ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MergeReport {
    pub transitive_part: Vec<usize>,
    pub bulk: Vec<usize>,
    pub direction: MergeDirection,
    pub claimed_gain: usize,
}

/// JSON report: `{"pattern":"l2","outcome":"embedding","ordering_name":
/// "forest","vertices":[..],"merge":null,"trace":[..]}` with 1-based labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReplayReport {
    pub pattern: ReplayPattern,
    pub outcome: String,
    pub ordering_name: Option<PatternOrderingKind>,
    pub vertices: Option<Vec<usize>>,
    pub merge: Option<MergeReport>,
    pub trace: Vec<String>,
}

impl ReplayOutcome {
    pub fn report(&self) -> ReplayReport {
        match &self.result {
            ReplayResult::Embedding(emb) => ReplayReport {
                pattern: self.pattern,
                outcome: "embedding".into(),
                ordering_name: Some(emb.ordering_kind),
                vertices: Some(emb.vertices.iter().map(|&v| v + 1).collect()),
                merge: None,
                trace: self.trace.clone(),
            },
            ReplayResult::Merge(cert) => ReplayReport {
                pattern: self.pattern,
                outcome: "merge".into(),
                ordering_name: None,
                vertices: None,
                merge: Some(MergeReport {
                    transitive_part: cert.transitive_part.to_one_based(),
                    bulk: cert.bulk.to_one_based(),
                    direction: cert.direction,
                    claimed_gain: cert.claimed_gain,
                }),
                trace: self.trace.clone(),
            },
        }
    }
}
