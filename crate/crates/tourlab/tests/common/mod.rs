//! Shared helpers for the integration suites: a local PRNG (independent of
//! the library's documented generator), seed-indexed permutations, random
//! valid chain structures, and brute-force oracles.
//!
//! Each test target compiles this module separately, so not every helper is
//! used by every target.
#![allow(dead_code)]

use tourlab::regularity::{tr_reference, verify_structure, ChainStructure, StructureSpec};
use tourlab::{Frac, Tournament, VertexSet};

/// SplitMix64, deterministic and dependency-free.
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn bit(&mut self) -> bool {
        self.next() & 1 == 1
    }
}

/// Random tournament from the local PRNG (not the library generator).
pub fn local_random_tournament(n: usize, rng: &mut Rng) -> Tournament {
    let mut flags = Vec::with_capacity(n * (n - 1) / 2);
    for _ in 0..n * (n - 1) / 2 {
        flags.push(rng.bit());
    }
    let mut idx = 0;
    Tournament::from_fn(n, |_, _| {
        let f = flags[idx];
        idx += 1;
        f
    })
    .expect("size in range")
}

/// The k-th permutation of 0..n in the factorial number system.
pub fn nth_permutation(n: usize, mut k: u64) -> Vec<usize> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for radix in (1..=n).rev() {
        let i = (k % radix as u64) as usize;
        k /= radix as u64;
        out.push(items.remove(i));
    }
    out
}

/// A random chain structure that passes non-smooth verification at
/// `lambda = 1/(4k)`: cross-set edges forward, a sampled number of backward
/// flips per set pair within the exact density budget, uniform edges inside
/// linear sets, and a few spare vertices outside every set.
pub fn random_valid_chain(seed: u64) -> (Tournament, ChainStructure) {
    let mut rng = Rng(seed);
    let k = 2 + rng.below(5); // 2..=6 sets
    let mut w: Vec<u8> = (0..k).map(|_| u8::from(rng.below(3) == 0)).collect();
    if rng.bit() {
        w[rng.below(k)] = 1;
    }
    let sizes: Vec<usize> = (0..k).map(|_| 6 + rng.below(11)).collect();
    let spare = rng.below(4);
    let n: usize = sizes.iter().sum::<usize>() + spare;

    let mut starts = Vec::with_capacity(k);
    let mut acc = 0;
    for &s in &sizes {
        starts.push(acc);
        acc += s;
    }
    let set_of = |v: usize| -> Option<usize> {
        (0..k).find(|&i| v >= starts[i] && v < starts[i] + sizes[i])
    };

    // Base orientation.
    let mut backward: Vec<(usize, usize)> = Vec::new();
    let lambda = if rng.bit() {
        Frac::new(1, 4 * k as u64)
    } else {
        Frac::new(1, 8 * k as u64)
    };
    for i in 0..k {
        for j in (i + 1)..k {
            let budget = (lambda.num() as usize * sizes[i] * sizes[j]) / lambda.den() as usize;
            if budget == 0 {
                continue;
            }
            let count = rng.below(budget + 1);
            for _ in 0..count {
                let b = starts[i] + rng.below(sizes[i]);
                let a = starts[j] + rng.below(sizes[j]);
                backward.push((a, b)); // edge a -> b, a in the later set
            }
        }
    }
    backward.sort_unstable();
    backward.dedup();

    let mut internal = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let same_linear = match (set_of(i), set_of(j)) {
                (Some(a), Some(b)) if a == b => w[a] == 0,
                (None, _) | (_, None) => true, // spare vertices unconstrained
                _ => false,
            };
            if same_linear {
                internal.push(((i, j), rng.bit()));
            }
        }
    }
    let t = Tournament::from_fn(n, |i, j| {
        if backward.binary_search(&(j, i)).is_ok() {
            return false;
        }
        if let Ok(pos) = internal.binary_search_by_key(&(i, j), |&(p, _)| p) {
            return internal[pos].1;
        }
        true
    })
    .expect("size in range");

    let sets: Vec<VertexSet> = (0..k)
        .map(|i| {
            VertexSet::from_members(n, &(starts[i]..starts[i] + sizes[i]).collect::<Vec<_>>())
                .expect("members in range")
        })
        .collect();
    let probe = ChainStructure {
        spec: StructureSpec::new(w.clone(), Frac::new(1, 2), lambda).expect("valid"),
        sets: sets.clone(),
    };
    let tr_ref = tr_reference(&t, &probe);
    let mut c = Frac::one();
    for i in 0..k {
        let base = if w[i] == 0 { n } else { tr_ref };
        c = c.min(Frac::new(sizes[i] as u64, base as u64));
    }
    let chain = ChainStructure {
        spec: StructureSpec::new(w, c, lambda).expect("valid"),
        sets,
    };
    assert_eq!(
        verify_structure(&t, &chain, false),
        Ok(None),
        "generated chain must verify (seed {seed})"
    );
    (t, chain)
}

/// Independent transitivity test: no directed 3-cycle among the members.
pub fn transitive_by_triples(t: &Tournament, members: &[usize]) -> bool {
    let k = members.len();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if a != b && b != c && a != c {
                    let (x, y, z) = (members[a], members[b], members[c]);
                    if t.has_edge(x, y) && t.has_edge(y, z) && t.has_edge(z, x) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Brute-force tr over an explicit member list: largest sub-subset whose
/// within-subset out-degrees are pairwise distinct.
pub fn tr_brute(t: &Tournament, members: &[usize]) -> usize {
    let k = members.len();
    let mut best = 0;
    for mask in 1u32..(1 << k) {
        let sub: Vec<usize> = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| members[i])
            .collect();
        let mut degs: Vec<usize> = sub
            .iter()
            .map(|&v| sub.iter().filter(|&&u| u != v && t.has_edge(v, u)).count())
            .collect();
        degs.sort_unstable();
        if degs.iter().enumerate().all(|(i, &d)| d == i) {
            best = best.max(sub.len());
        }
    }
    best
}

/// Recursive brute-force maximum matching size in a bipartite graph given as
/// adjacency lists from the left side.
pub fn matching_brute(adj: &[Vec<usize>], right: usize) -> usize {
    fn go(adj: &[Vec<usize>], used: &mut [bool], left: usize) -> usize {
        if left == adj.len() {
            return 0;
        }
        let mut best = go(adj, used, left + 1); // skip this left vertex
        for &r in &adj[left] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + go(adj, used, left + 1));
                used[r] = false;
            }
        }
        best
    }
    let mut used = vec![false; right];
    go(adj, &mut used, 0)
}
