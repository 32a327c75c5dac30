//! Maximum transitive subtournaments via exact subset dynamic programming.
//!
//! For a subset `S` the recursion is `m(S) = max over v in S of
//! 1 + m(S ∩ outneighbors(v))`, memoized densely over the whole subset
//! lattice. The table is built on demand (never at parse time) and answers
//! `tr` for every subset, which is what the criticality checker needs.
//!
//! The exact table is limited to [`TR_EXACT_MAX`] vertices. Larger hosts get
//! a certified greedy lower bound instead; every caller that needs an exact
//! value (criticality, merge gains) works on subsets small enough for a local
//! exact table.

use crate::tournament::{Error, Tournament, VertexSet};

/// Cap for the dense subset table (`2^n` byte entries).
pub const TR_EXACT_MAX: usize = 24;

/// Dense table of `tr` over every subset of a small tournament.
pub struct TrTable {
    n: usize,
    table: Vec<u8>,
    out: Vec<u32>,
}

impl TrTable {
    pub fn build(t: &Tournament) -> Result<TrTable, Error> {
        let n = t.n();
        if n > TR_EXACT_MAX {
            return Err(Error::TooLarge {
                what: "exact tr table",
                n,
                max: TR_EXACT_MAX,
            });
        }
        let out: Vec<u32> = (0..n)
            .map(|v| {
                let mut m = 0u32;
                for u in 0..n {
                    if u != v && t.has_edge(v, u) {
                        m |= 1 << u;
                    }
                }
                m
            })
            .collect();
        let mut table = vec![0u8; 1usize << n];
        for mask in 1u32..(1u32 << n) {
            let mut best = 0u8;
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let sub = mask & out[v];
                let cand = 1 + table[sub as usize];
                if cand > best {
                    best = cand;
                }
            }
            table[mask as usize] = best;
        }
        Ok(TrTable { n, table, out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tr_full(&self) -> usize {
        self.table[(1usize << self.n) - 1] as usize
    }

    pub fn tr_of_mask(&self, mask: u32) -> usize {
        self.table[mask as usize] as usize
    }

    pub fn tr_of(&self, set: &VertexSet) -> usize {
        self.tr_of_mask(mask_of(set))
    }

    /// A transitive subset of `mask` of maximum size, in transitive order
    /// (each vertex beats all later ones). Ties break toward the smallest
    /// vertex so the witness is deterministic.
    pub fn witness_of_mask(&self, mut mask: u32) -> Vec<usize> {
        let mut order = Vec::new();
        while mask != 0 {
            let want = self.table[mask as usize];
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let sub = mask & self.out[v];
                if 1 + self.table[sub as usize] == want {
                    order.push(v);
                    mask = sub;
                    break;
                }
            }
        }
        order
    }

    pub fn witness(&self, set: &VertexSet) -> Vec<usize> {
        self.witness_of_mask(mask_of(set))
    }
}

fn mask_of(set: &VertexSet) -> u32 {
    let mut m = 0u32;
    for v in set.iter() {
        debug_assert!(v < 32);
        m |= 1 << v;
    }
    m
}

/// Exact `tr` with a witness set. Requires `n <= 24`.
pub fn max_transitive(t: &Tournament) -> Result<(usize, VertexSet), Error> {
    let table = TrTable::build(t)?;
    let order = table.witness_of_mask(((1u64 << t.n()) - 1) as u32);
    let set = VertexSet::from_members(t.n(), &order)?;
    Ok((table.tr_full(), set))
}

/// Exact `tr` of a subset inside an arbitrarily large host, by building a
/// local table on the induced subtournament. The subset itself must have at
/// most [`TR_EXACT_MAX`] members.
pub fn tr_of_subset(t: &Tournament, set: &VertexSet) -> Result<usize, Error> {
    Ok(tr_witness_of_subset(t, set)?.0)
}

/// Exact `tr` of a subset plus a witness (in host labels, transitive order).
pub fn tr_witness_of_subset(t: &Tournament, set: &VertexSet) -> Result<(usize, Vec<usize>), Error> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let (sub, labels) = t.induced(set)?;
    let table = TrTable::build(&sub)?;
    let order = table.witness_of_mask(((1u64 << sub.n()) - 1) as u32);
    let witness = order.into_iter().map(|v| labels[v]).collect();
    Ok((table.tr_full(), witness))
}

/// Greedy transitive chain, a certified lower bound for `tr` on hosts too
/// large for the exact table. Repeatedly picks the remaining vertex with the
/// highest out-degree inside the remaining pool and restricts the pool to its
/// outneighbors, then tries to extend the chain with an insertion pass.
pub fn greedy_transitive(t: &Tournament) -> VertexSet {
    let n = t.n();
    let mut pool = VertexSet::full(n);
    let mut chain: Vec<usize> = Vec::new();
    while !pool.is_empty() {
        let mut best = usize::MAX;
        let mut best_deg = 0usize;
        for v in pool.iter() {
            let deg = t.edges_from_vertex_to_set(v, &pool);
            if best == usize::MAX || deg > best_deg {
                best = v;
                best_deg = deg;
            }
        }
        chain.push(best);
        let outs = t.out_set(best);
        pool = pool.intersection(&outs);
    }
    // Insertion pass: add any vertex that fits a consistent slot.
    for v in 0..n {
        if chain.contains(&v) {
            continue;
        }
        let mut slot = 0;
        while slot < chain.len() && t.has_edge(chain[slot], v) {
            slot += 1;
        }
        if chain[slot..].iter().all(|&c| t.has_edge(v, c)) {
            chain.insert(slot, v);
        }
    }
    VertexSet::from_members(n, &chain).expect("chain within range")
}
