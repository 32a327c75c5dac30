//! Canonical forms, isomorphism testing, exhaustive enumeration of
//! isomorphism classes, and pattern containment.
//!
//! The canonical form of a small tournament is the lexicographically minimal
//! TRN1 bit string over all vertex relabelings. Minimization is exhaustive
//! but pruned: the minimal string must start with a minimum-out-degree vertex
//! followed by all of its inneighbors and then all of its outneighbors, so
//! only orderings of that shape are scanned. Two tournaments on at most eight
//! vertices are isomorphic exactly when their canonical forms coincide.
//!
//! Tie-breaking everywhere is lexicographic on bit strings, so enumeration
//! output is deterministic and diffable across runs and platforms.

use crate::perm::next_permutation;
use crate::tournament::{pair_index, Error, Ordering, Tournament, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Exhaustive canonicalization bound.
pub const MAX_CANONICAL_VERTICES: usize = 8;

/// Enumeration bound (456 classes at n = 7).
pub const MAX_ENUMERATION_VERTICES: usize = 7;

/// Lexicographically minimal TRN1 bit string over all relabelings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: String,
}

/// Packed bit-string form for n <= 8: the character at string index `idx`
/// sits at bit `m - 1 - idx`, so integer order equals string order.
pub(crate) fn to_packed(t: &Tournament) -> u32 {
    let n = t.n();
    let m = n * (n - 1) / 2;
    let mut packed = 0u32;
    for i in 0..n {
        for j in (i + 1)..n {
            if t.has_edge(i, j) {
                packed |= 1 << (m - 1 - pair_index(n, i, j));
            }
        }
    }
    packed
}

pub(crate) fn from_packed(n: usize, packed: u32) -> Tournament {
    let m = n * (n - 1) / 2;
    Tournament::from_fn(n, |i, j| packed >> (m - 1 - pair_index(n, i, j)) & 1 == 1)
        .expect("n within range")
}

pub(crate) fn packed_to_bits(n: usize, packed: u32) -> String {
    let m = n * (n - 1) / 2;
    (0..m)
        .map(|idx| {
            if packed >> (m - 1 - idx) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Shared lookup tables for one vertex count.
pub(crate) struct Canonicalizer {
    n: usize,
    m: usize,
    shift: [[u8; 8]; 8],
    invert: [[bool; 8]; 8],
    pair_positions: Vec<(usize, usize)>,
}

impl Canonicalizer {
    pub(crate) fn new(n: usize) -> Canonicalizer {
        assert!((1..=MAX_CANONICAL_VERTICES).contains(&n));
        let m = n * (n - 1) / 2;
        let mut shift = [[0u8; 8]; 8];
        let mut invert = [[false; 8]; 8];
        let mut pair_positions = Vec::with_capacity(m);
        for i in 0..n {
            for j in (i + 1)..n {
                let s = (m - 1 - pair_index(n, i, j)) as u8;
                shift[i][j] = s;
                shift[j][i] = s;
                invert[j][i] = true;
                pair_positions.push((i, j));
            }
        }
        Canonicalizer {
            n,
            m,
            shift,
            invert,
            pair_positions,
        }
    }

    #[inline]
    fn bit(&self, packed: u32, u: usize, v: usize) -> u32 {
        let b = packed >> self.shift[u][v] & 1;
        if self.invert[u][v] {
            1 - b
        } else {
            b
        }
    }

    /// Packed value of `packed` relabeled by `order` (position -> vertex),
    /// or None as soon as the value is known to exceed `best`.
    fn relabeled_value(&self, packed: u32, order: &[usize], best: Option<u32>) -> Option<u32> {
        let mut val = 0u32;
        let mut comparing = best.is_some();
        let best = best.unwrap_or(0);
        for (idx, &(a, b)) in self.pair_positions.iter().enumerate() {
            let bit = self.bit(packed, order[a], order[b]);
            if comparing {
                let bbit = best >> (self.m - 1 - idx) & 1;
                if bit > bbit {
                    return None;
                }
                if bit < bbit {
                    comparing = false;
                }
            }
            val |= bit << (self.m - 1 - idx);
        }
        Some(val)
    }

    fn out_degrees(&self, packed: u32) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(i, j) in &self.pair_positions {
            if self.bit(packed, i, j) == 1 {
                deg[i] += 1;
            } else {
                deg[j] += 1;
            }
        }
        deg
    }

    /// Scans the restricted ordering family. `f` gets each candidate order;
    /// returning false stops the scan.
    fn scan_family(&self, packed: u32, mut f: impl FnMut(&[usize]) -> bool) {
        let deg = self.out_degrees(packed);
        let dmin = *deg.iter().min().expect("nonempty");
        let mut order = vec![0usize; self.n];
        for (u, _) in deg.iter().enumerate().filter(|&(_, d)| *d == dmin) {
            let inns: Vec<usize> = (0..self.n)
                .filter(|&w| w != u && self.bit(packed, w, u) == 1)
                .collect();
            let outs: Vec<usize> = (0..self.n)
                .filter(|&w| w != u && self.bit(packed, u, w) == 1)
                .collect();
            let mut inn_perm = inns.clone();
            loop {
                let mut out_perm = outs.clone();
                loop {
                    order[0] = u;
                    order[1..=inns.len()].copy_from_slice(&inn_perm);
                    order[1 + inns.len()..].copy_from_slice(&out_perm);
                    if !f(&order) {
                        return;
                    }
                    if !next_permutation(&mut out_perm) {
                        break;
                    }
                }
                if !next_permutation(&mut inn_perm) {
                    break;
                }
            }
        }
    }

    /// Minimal packed form plus the first ordering achieving it.
    pub(crate) fn canonical(&self, packed: u32) -> (u32, Vec<usize>) {
        let mut best: Option<(u32, Vec<usize>)> = None;
        self.scan_family(packed, |order| {
            let bound = best.as_ref().map(|(v, _)| *v);
            if let Some(val) = self.relabeled_value(packed, order, bound) {
                match &best {
                    Some((b, _)) if val >= *b => {}
                    _ => best = Some((val, order.to_vec())),
                }
            }
            true
        });
        best.expect("family is nonempty")
    }

    /// True when no relabeling produces a strictly smaller packed form.
    pub(crate) fn is_canonical(&self, packed: u32) -> bool {
        let mut canonical = true;
        self.scan_family(packed, |order| {
            if let Some(val) = self.relabeled_value(packed, order, Some(packed)) {
                if val < packed {
                    canonical = false;
                    return false;
                }
            }
            true
        });
        canonical
    }
}

fn check_canonical_size(t: &Tournament) -> Result<(), Error> {
    if t.n() > MAX_CANONICAL_VERTICES {
        return Err(Error::TooLarge {
            what: "canonical form",
            n: t.n(),
            max: MAX_CANONICAL_VERTICES,
        });
    }
    Ok(())
}

pub fn canonical_form(t: &Tournament) -> Result<CanonicalForm, Error> {
    Ok(canonical_form_with_ordering(t)?.0)
}

/// Canonical form together with an ordering realizing it: relabeling the
/// tournament by the ordering yields exactly the canonical bit string.
pub fn canonical_form_with_ordering(t: &Tournament) -> Result<(CanonicalForm, Ordering), Error> {
    check_canonical_size(t)?;
    let cz = Canonicalizer::new(t.n());
    let (packed, order) = cz.canonical(to_packed(t));
    let form = CanonicalForm {
        n: t.n(),
        bits: packed_to_bits(t.n(), packed),
    };
    Ok((form, Ordering::new(order)?))
}

/// Isomorphism test with witness. `Ok(None)` means not isomorphic (a size
/// mismatch is simply "not isomorphic", not an error). A returned ordering
/// maps vertices of `a` onto vertices of `b` edge-exactly.
pub fn is_isomorphic(a: &Tournament, b: &Tournament) -> Result<Option<Ordering>, Error> {
    if a.n() != b.n() {
        return Ok(None);
    }
    check_canonical_size(a)?;
    let (ca, order_a) = canonical_form_with_ordering(a)?;
    let (cb, order_b) = canonical_form_with_ordering(b)?;
    if ca != cb {
        return Ok(None);
    }
    // order_a[pos] in a matches order_b[pos] in b.
    let mut map = vec![0usize; a.n()];
    for pos in 0..a.n() {
        map[order_a.vertex_at(pos)] = order_b.vertex_at(pos);
    }
    let witness = Ordering::new(map)?;
    debug_assert!(isomorphism_holds(a, b, &witness));
    Ok(Some(witness))
}

/// Checks an explicit vertex map `a -> b` edge by edge.
pub fn isomorphism_holds(a: &Tournament, b: &Tournament, map: &Ordering) -> bool {
    if a.n() != b.n() || map.len() != a.n() {
        return false;
    }
    for u in 0..a.n() {
        for v in (u + 1)..a.n() {
            if a.has_edge(u, v) != b.has_edge(map.vertex_at(u), map.vertex_at(v)) {
                return false;
            }
        }
    }
    true
}

/// One representative per isomorphism class, deduplicated by canonical form,
/// sorted ascending by bit string. This route sweeps every labeled tournament
/// and keeps those equal to their own canonical form.
pub fn enumerate_classes(n: usize) -> Result<Vec<CanonicalForm>, Error> {
    enumerate_classes_jobs(n, 1)
}

/// Same output as [`enumerate_classes`], optionally sweeping the labeled
/// space across `jobs` threads. The merged output is byte-identical to the
/// single-threaded result.
pub fn enumerate_classes_jobs(n: usize, jobs: usize) -> Result<Vec<CanonicalForm>, Error> {
    if n == 0 || n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge {
            what: "class enumeration",
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let m = n * (n - 1) / 2;
    let total: u64 = 1 << m;
    let jobs = jobs.clamp(1, 64);
    let chunk = total.div_ceil(jobs as u64);
    let mut packed_classes: Vec<u32> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for job in 0..jobs {
            let lo = job as u64 * chunk;
            let hi = (lo + chunk).min(total);
            handles.push(scope.spawn(move || {
                let cz = Canonicalizer::new(n);
                let mut found = Vec::new();
                for p in lo..hi {
                    let p = p as u32;
                    if cz.is_canonical(p) {
                        found.push(p);
                    }
                }
                found
            }));
        }
        for h in handles {
            packed_classes.extend(h.join().expect("enumeration worker"));
        }
    });
    Ok(packed_classes
        .into_iter()
        .map(|p| CanonicalForm {
            n,
            bits: packed_to_bits(n, p),
        })
        .collect())
}

/// Independent enumeration route: orderly generation by vertex extension.
/// Every class on `k` vertices arises from some class on `k - 1` vertices by
/// appending a vertex with one of the `2^(k-1)` orientation patterns, so
/// canonicalizing all extensions of all smaller classes reaches everything.
pub fn enumerate_classes_orderly(n: usize) -> Result<Vec<CanonicalForm>, Error> {
    if n == 0 || n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge {
            what: "class enumeration",
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut reps: Vec<u32> = vec![0]; // the single one-vertex tournament
    for size in 2..=n {
        let cz = Canonicalizer::new(size);
        let mut next = BTreeSet::new();
        for &rep in &reps {
            let base = from_packed(size - 1, rep);
            for pattern in 0u32..(1 << (size - 1)) {
                let extended = Tournament::from_fn(size, |i, j| {
                    if j == size - 1 {
                        pattern >> i & 1 == 1
                    } else {
                        base.has_edge(i, j)
                    }
                })
                .expect("size within range");
                next.insert(cz.canonical(to_packed(&extended)).0);
            }
        }
        reps = next.into_iter().collect();
    }
    Ok(reps
        .into_iter()
        .map(|p| CanonicalForm {
            n,
            bits: packed_to_bits(n, p),
        })
        .collect())
}

/// An injective, edge-preserving map from a pattern into a host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub pattern: Tournament,
    /// `map[p]` is the host vertex playing pattern vertex `p`.
    pub map: Vec<usize>,
}

pub fn embedding_holds(host: &Tournament, emb: &Embedding) -> bool {
    let p = emb.pattern.n();
    if emb.map.len() != p {
        return false;
    }
    let mut seen = VertexSet::empty(host.n());
    for &v in &emb.map {
        if v >= host.n() || seen.contains(v) {
            return false;
        }
        seen.insert(v);
    }
    for u in 0..p {
        for v in (u + 1)..p {
            if emb.pattern.has_edge(u, v) != host.has_edge(emb.map[u], emb.map[v]) {
                return false;
            }
        }
    }
    true
}

/// First embedding of `pattern` into `host` (vertices filled in pattern-label
/// order, candidates scanned ascending), or None when the host is
/// pattern-free. Patterns are limited to eight vertices.
pub fn find_embedding(host: &Tournament, pattern: &Tournament) -> Result<Option<Embedding>, Error> {
    let p = pattern.n();
    if p > MAX_CANONICAL_VERTICES {
        return Err(Error::TooLarge {
            what: "embedding pattern",
            n: p,
            max: MAX_CANONICAL_VERTICES,
        });
    }
    if p > host.n() {
        return Ok(None);
    }
    let hn = host.n();
    let out_sets: Vec<VertexSet> = (0..hn).map(|v| host.out_set(v)).collect();
    let in_sets: Vec<VertexSet> = (0..hn).map(|v| host.in_set(v)).collect();

    struct Search<'a> {
        pattern: &'a Tournament,
        out_sets: &'a [VertexSet],
        in_sets: &'a [VertexSet],
        hn: usize,
        map: Vec<usize>,
        used: VertexSet,
    }

    impl Search<'_> {
        fn go(&mut self, slot: usize) -> bool {
            if slot == self.pattern.n() {
                return true;
            }
            let mut cand = VertexSet::full(self.hn).difference(&self.used);
            for t in 0..slot {
                let row = if self.pattern.has_edge(t, slot) {
                    &self.out_sets[self.map[t]]
                } else {
                    &self.in_sets[self.map[t]]
                };
                cand = cand.intersection(row);
            }
            for v in cand.members() {
                self.map.push(v);
                self.used.insert(v);
                if self.go(slot + 1) {
                    return true;
                }
                self.used.remove(v);
                self.map.pop();
            }
            false
        }
    }

    let mut search = Search {
        pattern,
        out_sets: &out_sets,
        in_sets: &in_sets,
        hn,
        map: Vec::with_capacity(p),
        used: VertexSet::empty(hn),
    };
    if search.go(0) {
        let emb = Embedding {
            pattern: pattern.clone(),
            map: search.map,
        };
        debug_assert!(embedding_holds(host, &emb));
        Ok(Some(emb))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{named, PatternName};
    use crate::perm::for_each_permutation;

    /// Plain full-permutation minimizer, the oracle for the pruned one.
    fn canonical_brute(t: &Tournament) -> String {
        let mut best: Option<String> = None;
        for_each_permutation(t.n(), |perm| {
            let ord = Ordering::new(perm.to_vec()).unwrap();
            let bits = t.apply_ordering(&ord).unwrap().orientation_bits();
            if best.as_ref().is_none_or(|b| bits < *b) {
                best = Some(bits);
            }
            true
        });
        best.unwrap()
    }

    #[test]
    fn pruned_canonicalizer_matches_brute_force() {
        // Every labeled tournament on 4 vertices, plus a spot check on 5.
        for packed in 0u32..(1 << 6) {
            let t = from_packed(4, packed);
            assert_eq!(canonical_form(&t).unwrap().bits, canonical_brute(&t));
        }
        for seed in [0u32, 77, 511, 900] {
            let t = from_packed(5, seed);
            assert_eq!(canonical_form(&t).unwrap().bits, canonical_brute(&t));
        }
    }

    #[test]
    fn canonical_of_transitive_triangle() {
        // Brute-force minimum over all 6 relabelings of the transitive triangle.
        let t3 = Tournament::transitive(3).unwrap();
        assert_eq!(canonical_form(&t3).unwrap().bits, canonical_brute(&t3));
    }

    #[test]
    fn canonical_is_relabeling_invariant() {
        let k6 = named(PatternName::K6);
        let base = canonical_form(&k6).unwrap();
        let shuffled = k6
            .apply_ordering(&Ordering::new(vec![3, 5, 0, 2, 4, 1]).unwrap())
            .unwrap();
        assert_eq!(canonical_form(&shuffled).unwrap(), base);
    }

    #[test]
    fn c5_is_self_converse() {
        let c5 = named(PatternName::C5);
        assert_eq!(
            canonical_form(&c5).unwrap(),
            canonical_form(&c5.reverse()).unwrap()
        );
    }

    #[test]
    fn iso_basics() {
        let c5 = named(PatternName::C5);
        let w = is_isomorphic(&c5, &c5).unwrap().unwrap();
        assert!(isomorphism_holds(&c5, &c5, &w));

        let t5 = Tournament::transitive(5).unwrap();
        assert!(is_isomorphic(&c5, &t5).unwrap().is_none());

        // Size mismatch is "not isomorphic", not an error.
        assert!(is_isomorphic(&c5, &named(PatternName::K6))
            .unwrap()
            .is_none());
    }

    #[test]
    fn l1_is_not_self_converse() {
        let l1 = named(PatternName::L1);
        assert!(is_isomorphic(&l1, &l1.reverse()).unwrap().is_none());
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate_classes(1).unwrap().len(), 1);
        assert_eq!(enumerate_classes(2).unwrap().len(), 1);
        assert_eq!(enumerate_classes(3).unwrap().len(), 2);
        assert_eq!(enumerate_classes(4).unwrap().len(), 4);
        assert_eq!(enumerate_classes(5).unwrap().len(), 12);
    }

    #[test]
    fn enumeration_routes_agree_on_small_sizes() {
        for n in 1..=5 {
            assert_eq!(
                enumerate_classes(n).unwrap(),
                enumerate_classes_orderly(n).unwrap()
            );
        }
    }

    #[test]
    fn parallel_sweep_is_byte_identical() {
        assert_eq!(
            enumerate_classes_jobs(5, 4).unwrap(),
            enumerate_classes(5).unwrap()
        );
    }

    #[test]
    fn enumeration_rejects_out_of_range() {
        assert!(enumerate_classes(0).is_err());
        assert!(enumerate_classes(8).is_err());
    }

    #[test]
    fn embedding_examples() {
        let l1 = named(PatternName::L1);
        let c5 = named(PatternName::C5);
        let emb = find_embedding(&l1, &c5).unwrap().unwrap();
        assert!(embedding_holds(&l1, &emb));

        // Transitive hosts contain no cycle, so no K6.
        let t8 = Tournament::transitive(8).unwrap();
        assert!(find_embedding(&t8, &named(PatternName::K6))
            .unwrap()
            .is_none());

        // A single vertex embeds anywhere.
        let single = Tournament::single();
        assert!(find_embedding(&t8, &single).unwrap().is_some());

        // Pattern larger than host: none, not an error.
        assert!(find_embedding(&c5, &l1).unwrap().is_none());
    }
}
