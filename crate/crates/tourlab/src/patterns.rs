//! The named tournaments: K6, C5, the two six-vertex extensions L1 and L2,
//! and their edge reversals.
//!
//! L1 extends C5 by a vertex adjacent to exactly one of its vertices; L2
//! extends C5 by a vertex adjacent from three vertices that induce a cyclic
//! triangle. Both are pinned here through their forest orderings, which agree
//! with those textual definitions (the test suite re-derives both properties).

use crate::tournament::{Ordering, Tournament};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// K6 under its canonical ordering: backward edges (v4,v1),(v6,v3),(v6,v1),(v5,v2).
const K6_TRN1: &str = "6\n110101101110111";
/// C5: the unique five-vertex tournament with all degrees (2 out, 2 in).
const C5_TRN1: &str = "5\n1100110111";
/// L1: C5 plus v6 with a single outneighbor (v5).
const L1_TRN1: &str = "6\n110011101111110";
/// L2: C5 plus v6 adjacent from the cyclic triangle {v1,v2,v4}.
const L2_TRN1: &str = "6\n110011101110110";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternName {
    K6,
    C5,
    L1,
    L2,
    K6c,
    C5c,
    L1c,
    L2c,
}

impl PatternName {
    pub const ALL: [PatternName; 8] = [
        PatternName::K6,
        PatternName::C5,
        PatternName::L1,
        PatternName::L2,
        PatternName::K6c,
        PatternName::C5c,
        PatternName::L1c,
        PatternName::L2c,
    ];
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternName::K6 => "k6",
            PatternName::C5 => "c5",
            PatternName::L1 => "l1",
            PatternName::L2 => "l2",
            PatternName::K6c => "k6c",
            PatternName::C5c => "c5c",
            PatternName::L1c => "l1c",
            PatternName::L2c => "l2c",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPattern(pub String);

impl fmt::Display for UnknownPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown pattern name {:?} (expected one of k6, c5, l1, l2, k6c, c5c, l1c, l2c)",
            self.0
        )
    }
}

impl std::error::Error for UnknownPattern {}

impl FromStr for PatternName {
    type Err = UnknownPattern;

    fn from_str(s: &str) -> Result<PatternName, UnknownPattern> {
        match s.to_ascii_lowercase().as_str() {
            "k6" => Ok(PatternName::K6),
            "c5" => Ok(PatternName::C5),
            "l1" => Ok(PatternName::L1),
            "l2" => Ok(PatternName::L2),
            "k6c" => Ok(PatternName::K6c),
            "c5c" => Ok(PatternName::C5c),
            "l1c" => Ok(PatternName::L1c),
            "l2c" => Ok(PatternName::L2c),
            other => Err(UnknownPattern(other.to_string())),
        }
    }
}

/// The authoritative tournament for a name.
pub fn named(name: PatternName) -> Tournament {
    let parse = |s: &str| Tournament::parse(s).expect("pinned pattern bits");
    match name {
        PatternName::K6 => parse(K6_TRN1),
        PatternName::C5 => parse(C5_TRN1),
        PatternName::L1 => parse(L1_TRN1),
        PatternName::L2 => parse(L2_TRN1),
        PatternName::K6c => parse(K6_TRN1).reverse(),
        PatternName::C5c => parse(C5_TRN1).reverse(),
        PatternName::L1c => parse(L1_TRN1).reverse(),
        PatternName::L2c => parse(L2_TRN1).reverse(),
    }
}

/// Which of the two distinguished orderings of L1/L2 a replay produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternOrderingKind {
    Forest,
    Cyclic,
}

impl fmt::Display for PatternOrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternOrderingKind::Forest => f.write_str("forest"),
            PatternOrderingKind::Cyclic => f.write_str("cyclic"),
        }
    }
}

/// Forest ordering of L1: (v3,v4,v5,v1,v2,v6).
pub fn l1_forest_ordering() -> Ordering {
    Ordering::new(vec![2, 3, 4, 0, 1, 5]).expect("fixed permutation")
}

/// Cyclic ordering of L1: (v2,v4,v1,v3,v6,v5).
pub fn l1_cyclic_ordering() -> Ordering {
    Ordering::new(vec![1, 3, 0, 2, 5, 4]).expect("fixed permutation")
}

/// Forest ordering of L2: (v1,v2,v3,v4,v6,v5).
pub fn l2_forest_ordering() -> Ordering {
    Ordering::new(vec![0, 1, 2, 3, 5, 4]).expect("fixed permutation")
}

/// Cyclic ordering of L2: (v2,v4,v1,v6,v3,v5).
pub fn l2_cyclic_ordering() -> Ordering {
    Ordering::new(vec![1, 3, 0, 5, 2, 4]).expect("fixed permutation")
}
