//! Core tournament representation.
//!
//! A tournament is a complete graph with every edge oriented: for each pair of
//! vertices exactly one of the two directions is present. Vertices are labeled
//! `0..n-1` internally and rendered 1-based (`v1..vn`) in all text output.
//!
//! The interchange format is TRN1:
//!
//! ```text
//! line 1:  decimal vertex count n
//! line 2:  binary string of length n(n-1)/2, one character per unordered
//!          pair (i,j), 1 <= i < j <= n, in lexicographic order
//!          (1,2),(1,3),...,(1,n),(2,3),...; '1' means the edge vi -> vj.
//! ```
//!
//! A trailing newline is optional on input and emitted on output. TRN1 I/O is
//! capped at [`MAX_IO_VERTICES`]; in-memory tournaments may be larger (up to
//! [`MAX_VERTICES`]) because the density-structure machinery works on hosts
//! with a few hundred vertices.
//!
//! Every value here is immutable after construction and every operation is a
//! pure function, so concurrent evaluation is safe.

use crate::frac::Frac;
use thiserror::Error;

/// Hard cap for in-memory tournaments.
pub const MAX_VERTICES: usize = 256;

/// Cap for the TRN1 interchange format (and for the exact subset machinery).
pub const MAX_IO_VERTICES: usize = 24;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseError {
    #[error("malformed TRN1 header: {0}")]
    MalformedHeader(String),
    #[error("vertex count {n} outside 1..={max}")]
    VertexCountOutOfRange { n: usize, max: usize },
    #[error("orientation string has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("orientation string contains non-binary character {0:?}")]
    NonBinaryCharacter(char),
    #[error("unexpected trailing content after orientation line")]
    TrailingContent,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum Error {
    #[error("vertex {vertex} out of range for {n}-vertex tournament")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("sequence is not a permutation of 0..{0}")]
    InvalidOrdering(usize),
    #[error("{what} supports at most {max} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("set does not induce a transitive tournament")]
    NotTransitive,
    #[error("neither side is complete to the other")]
    NotComplete,
    #[error("universe mismatch between sets")]
    UniverseMismatch,
}

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Subset of the vertices `0..universe`, bit-mask semantics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> VertexSet {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> VertexSet {
        let mut s = VertexSet::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_members(universe: usize, members: &[usize]) -> Result<VertexSet, Error> {
        let mut s = VertexSet::empty(universe);
        for &v in members {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: universe,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Members as 1-based labels, sorted ascending. Used by all JSON output.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    pub fn from_one_based(universe: usize, members: &[usize]) -> Result<VertexSet, Error> {
        let mut s = VertexSet::empty(universe);
        for &v in members {
            if v == 0 || v > universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: universe,
                });
            }
            s.insert(v - 1);
        }
        Ok(s)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        VertexSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        VertexSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        VertexSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub(crate) fn intersection_len(&self, words: &[u64]) -> usize {
        self.words
            .iter()
            .zip(words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

/// Vertex ordering: `perm[position] = vertex`. Always a bijection on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ordering {
    perm: Vec<usize>,
    inv: Vec<usize>,
}

impl Ordering {
    pub fn new(perm: Vec<usize>) -> Result<Ordering, Error> {
        let n = perm.len();
        let mut inv = vec![usize::MAX; n];
        for (pos, &v) in perm.iter().enumerate() {
            if v >= n || inv[v] != usize::MAX {
                return Err(Error::InvalidOrdering(n));
            }
            inv[v] = pos;
        }
        Ok(Ordering { perm, inv })
    }

    pub fn identity(n: usize) -> Ordering {
        Ordering {
            perm: (0..n).collect(),
            inv: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Vertex sitting at `position`.
    pub fn vertex_at(&self, position: usize) -> usize {
        self.perm[position]
    }

    /// Position of `vertex`.
    pub fn position_of(&self, vertex: usize) -> usize {
        self.inv[vertex]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn reversed(&self) -> Ordering {
        let mut perm = self.perm.clone();
        perm.reverse();
        Ordering::new(perm).expect("reversal of a bijection")
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|v| v + 1).collect()
    }

    pub fn from_one_based(labels: &[usize]) -> Result<Ordering, Error> {
        let n = labels.len();
        let mut perm = Vec::with_capacity(n);
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::InvalidOrdering(n));
            }
            perm.push(l - 1);
        }
        Ordering::new(perm)
    }
}

// Orderings travel through JSON as 1-based vertex lists in position order.
impl serde::Serialize for Ordering {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Ordering {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Ordering, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        Ordering::from_one_based(&labels).map_err(serde::de::Error::custom)
    }
}

/// Index of pair `(i,j)`, `i < j`, in the TRN1 lexicographic pair order.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Complete orientation on `n` labeled vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    wpr: usize,
    /// Flat out-neighbor bitmasks, `wpr` words per vertex.
    rows: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Tournament(n={}, bits={})",
            self.n,
            self.orientation_bits()
        )
    }
}

impl Tournament {
    /// Builds a tournament from an orientation oracle: `forward(i, j)` (called
    /// with `i < j`) is true when the edge runs `i -> j`.
    pub fn from_fn(
        n: usize,
        mut forward: impl FnMut(usize, usize) -> bool,
    ) -> Result<Tournament, Error> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "tournament",
                n,
                max: MAX_VERTICES,
            });
        }
        let wpr = words_for(n);
        let mut rows = vec![0u64; n * wpr];
        for i in 0..n {
            for j in (i + 1)..n {
                let (src, dst) = if forward(i, j) { (i, j) } else { (j, i) };
                rows[src * wpr + dst / WORD_BITS] |= 1 << (dst % WORD_BITS);
            }
        }
        Ok(Tournament { n, wpr, rows })
    }

    pub fn single() -> Tournament {
        Tournament::from_fn(1, |_, _| true).expect("single vertex")
    }

    /// Transitive tournament with all edges running left to right.
    pub fn transitive(n: usize) -> Result<Tournament, Error> {
        Tournament::from_fn(n, |_, _| true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// True when the edge runs `u -> v`. `u` and `v` must differ.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.wpr + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub(crate) fn out_row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.wpr..(v + 1) * self.wpr]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_row(v)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.n - 1 - self.out_degree(v)
    }

    pub fn out_set(&self, v: usize) -> VertexSet {
        VertexSet {
            universe: self.n,
            words: self.out_row(v).to_vec(),
        }
    }

    pub fn in_set(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::full(self.n);
        s.remove(v);
        s.difference(&self.out_set(v))
    }

    /// Number of edges running from `v` into `set`.
    pub fn edges_from_vertex_to_set(&self, v: usize, set: &VertexSet) -> usize {
        set.intersection_len(self.out_row(v))
    }

    /// Number of edges running from `set` into `v`.
    pub fn edges_from_set_to_vertex(&self, set: &VertexSet, v: usize) -> usize {
        let wins = set.intersection_len(self.out_row(v));
        set.len() - wins - usize::from(set.contains(v))
    }

    /// Number of directed edges from `x` to `y` (disjoint sets).
    pub fn edges_between(&self, x: &VertexSet, y: &VertexSet) -> usize {
        x.iter().map(|v| self.edges_from_vertex_to_set(v, y)).sum()
    }

    // ---- TRN1 ----

    pub fn parse(text: &str) -> Result<Tournament, ParseError> {
        Tournament::parse_with_limit(text, MAX_IO_VERTICES)
    }

    /// Same grammar as [`Tournament::parse`] but with the in-memory vertex
    /// cap instead of the interchange cap, for density-structure hosts that
    /// exceed 24 vertices (planted replay instances, smoothing test beds).
    pub fn parse_host(text: &str) -> Result<Tournament, ParseError> {
        Tournament::parse_with_limit(text, MAX_VERTICES)
    }

    fn parse_with_limit(text: &str, max_n: usize) -> Result<Tournament, ParseError> {
        let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
        let header = lines
            .next()
            .ok_or_else(|| ParseError::MalformedHeader("empty input".into()))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| ParseError::MalformedHeader(header.to_string()))?;
        if n == 0 || n > max_n {
            return Err(ParseError::VertexCountOutOfRange { n, max: max_n });
        }
        let expected = n * (n - 1) / 2;
        let bits = lines.next().unwrap_or("");
        for extra in lines {
            if !extra.trim().is_empty() {
                return Err(ParseError::TrailingContent);
            }
        }
        if bits.len() != expected {
            return Err(ParseError::WrongLength {
                expected,
                got: bits.len(),
            });
        }
        let mut flags = Vec::with_capacity(expected);
        for ch in bits.chars() {
            match ch {
                '0' => flags.push(false),
                '1' => flags.push(true),
                other => return Err(ParseError::NonBinaryCharacter(other)),
            }
        }
        Ok(Tournament::from_fn(n, |i, j| flags[pair_index(n, i, j)]).expect("n within range"))
    }

    /// The orientation line alone (no header, no newline).
    pub fn orientation_bits(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                s.push(if self.has_edge(i, j) { '1' } else { '0' });
            }
        }
        s
    }

    /// Canonical TRN1 text (with trailing newline). Rejects `n > 24`.
    pub fn serialize(&self) -> Result<String, Error> {
        if self.n > MAX_IO_VERTICES {
            return Err(Error::TooLarge {
                what: "TRN1 serialization",
                n: self.n,
                max: MAX_IO_VERTICES,
            });
        }
        Ok(format!("{}\n{}\n", self.n, self.orientation_bits()))
    }

    // ---- structural operations ----

    /// Tournament with every edge flipped.
    pub fn reverse(&self) -> Tournament {
        Tournament::from_fn(self.n, |i, j| !self.has_edge(i, j)).expect("same size")
    }

    /// Copy with the edge between `from` and `to` forced to run `from -> to`.
    pub fn with_edge(&self, from: usize, to: usize) -> Tournament {
        debug_assert!(from != to && from < self.n && to < self.n);
        let pair = (from.min(to), from.max(to));
        Tournament::from_fn(self.n, |i, j| {
            if (i, j) == pair {
                from < to
            } else {
                self.has_edge(i, j)
            }
        })
        .expect("same size")
    }

    /// Subtournament induced on `set`, plus the original labels of its
    /// vertices in ascending order.
    pub fn induced(&self, set: &VertexSet) -> Result<(Tournament, Vec<usize>), Error> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        for v in set.iter() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        let labels = set.members();
        let sub = Tournament::from_fn(labels.len(), |i, j| self.has_edge(labels[i], labels[j]))?;
        Ok((sub, labels))
    }

    /// Position-indexed view: the result has the edge `i -> j` exactly when
    /// this tournament has `ordering[i] -> ordering[j]`.
    pub fn apply_ordering(&self, ordering: &Ordering) -> Result<Tournament, Error> {
        if ordering.len() != self.n {
            return Err(Error::InvalidOrdering(self.n));
        }
        Tournament::from_fn(self.n, |i, j| {
            self.has_edge(ordering.vertex_at(i), ordering.vertex_at(j))
        })
    }

    /// Replaces vertex `v` by a copy of `inner`. The copy occupies labels
    /// `v..v+|inner|` and inherits `v`'s adjacencies, so it is a homogeneous
    /// set in the result.
    pub fn substitute(&self, v: usize, inner: &Tournament) -> Result<Tournament, Error> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let n2 = inner.n;
        let n = self.n + n2 - 1;
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "substitution result",
                n,
                max: MAX_VERTICES,
            });
        }
        // Old label for a new label outside the block.
        let back = |x: usize| if x < v { x } else { x - (n2 - 1) };
        let in_block = |x: usize| x >= v && x < v + n2;
        Tournament::from_fn(n, |i, j| match (in_block(i), in_block(j)) {
            (true, true) => inner.has_edge(i - v, j - v),
            (true, false) => self.has_edge(v, back(j)),
            (false, true) => self.has_edge(back(i), v),
            (false, false) => self.has_edge(back(i), back(j)),
        })
    }

    /// Directed density from `x` to `y`, exact.
    pub fn density(&self, x: &VertexSet, y: &VertexSet) -> Result<Frac, Error> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::EmptySet);
        }
        if !x.is_disjoint(y) {
            return Err(Error::OverlappingSets);
        }
        let e = self.edges_between(x, y);
        Ok(Frac::new(e as u64, (x.len() * y.len()) as u64))
    }

    /// Graph of backward edges under `ordering`.
    pub fn backward_graph(&self, ordering: &Ordering) -> Result<BackwardEdgeGraph, Error> {
        if ordering.len() != self.n {
            return Err(Error::InvalidOrdering(self.n));
        }
        let mut edges = Vec::new();
        for pi in 0..self.n {
            for pj in (pi + 1)..self.n {
                let earlier = ordering.vertex_at(pi);
                let later = ordering.vertex_at(pj);
                if self.has_edge(later, earlier) {
                    edges.push((later, earlier));
                }
            }
        }
        Ok(BackwardEdgeGraph {
            ordering: ordering.clone(),
            edges,
        })
    }

    // ---- transitivity helpers ----

    /// Out-degrees restricted to `set`, for members of `set`.
    fn degrees_within(&self, set: &VertexSet) -> Vec<usize> {
        set.iter()
            .map(|v| set.intersection_len(self.out_row(v)))
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.is_transitive_set(&VertexSet::full(self.n))
    }

    /// True when `set` induces a transitive tournament. A tournament on `k`
    /// vertices is transitive exactly when its out-degree sequence is a
    /// permutation of `0..k`.
    pub fn is_transitive_set(&self, set: &VertexSet) -> bool {
        let mut degs = self.degrees_within(set);
        degs.sort_unstable();
        degs.iter().enumerate().all(|(i, &d)| d == i)
    }

    /// Transitive ordering of `set` (first vertex beats all later ones), or an
    /// error when `set` is not transitive.
    pub fn transitive_order_of(&self, set: &VertexSet) -> Result<Vec<usize>, Error> {
        let members = set.members();
        let degs = self.degrees_within(set);
        let mut order: Vec<(usize, usize)> = members.into_iter().zip(degs).collect();
        order.sort_by_key(|&(_, d)| std::cmp::Reverse(d));
        let k = order.len();
        for (i, &(_, d)) in order.iter().enumerate() {
            if d != k - 1 - i {
                return Err(Error::NotTransitive);
            }
        }
        Ok(order.into_iter().map(|(v, _)| v).collect())
    }
}

/// Backward edges of a tournament under a fixed ordering, stored as directed
/// pairs `(from, to)` where `from` sits at the later position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackwardEdgeGraph {
    pub ordering: Ordering,
    pub edges: Vec<(usize, usize)>,
}

impl BackwardEdgeGraph {
    /// Edge set as position-sorted unordered pairs `(earlier, later)` of
    /// positions, for shape tests that ignore direction.
    pub fn position_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(from, to)| {
                let a = self.ordering.position_of(to);
                let b = self.ordering.position_of(from);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// Directed edges as (later position, earlier position), sorted.
    pub fn directed_position_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(from, to)| {
                (
                    self.ordering.position_of(from),
                    self.ordering.position_of(to),
                )
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// True when the (undirected) backward-edge graph is acyclic.
    pub fn is_forest(&self) -> bool {
        let n = self.ordering.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Unordered vertex pairs, sorted, for set comparisons.
    pub fn unordered_vertex_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        pairs.sort_unstable();
        pairs
    }
}
