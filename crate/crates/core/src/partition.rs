//! Partitions, the dominance order, and its cover structure.
//!
//! A partition is the universal coordinate here: finite-length modules over
//! k[[x]] and all finitely generated modules over k[[x]]/(x^m) are classified
//! by one. Degeneration between such modules is exactly dominance on
//! partitions, and single cover steps are single box moves.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hasse::HasseDiagram;

/// A weakly decreasing sequence of positive integers. Canonicalized at
/// construction: parts are sorted in decreasing order and zeros are dropped,
/// so equality is structural. The empty partition (weight 0) is valid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u64>,
    weight: u64,
}

impl Partition {
    /// Builds a partition from arbitrary non-negative entries; zeros are
    /// dropped and the rest sorted decreasingly.
    pub fn new(parts: impl IntoIterator<Item = u64>) -> Self {
        let mut parts: Vec<u64> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Partition { parts, weight }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Number of (positive) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// 1-based part access; rows past the end read as 0.
    pub fn part(&self, i: usize) -> u64 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn max_part(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Multiset union with another partition.
    pub fn union(&self, other: &Partition) -> Partition {
        Partition::new(self.parts.iter().chain(other.parts.iter()).copied())
    }

    /// Adjoins `count` copies of `part`.
    pub fn pad(&self, part: u64, count: u64) -> Partition {
        Partition::new(
            self.parts
                .iter()
                .copied()
                .chain(std::iter::repeat(part).take(count as usize)),
        )
    }

    /// Removes one copy of `part`, if present.
    pub fn remove_one(&self, part: u64) -> Option<Partition> {
        let idx = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(idx);
        Some(Partition::new(parts))
    }

    /// Dominance: true iff every partial sum of `self` is at least the
    /// corresponding partial sum of `other`. Only defined within one weight
    /// class; comparing across weights is a caller bug, not `false`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.weight != other.weight {
            return Err(Error::IncomparableWeights {
                left: self.weight,
                right: other.weight,
            });
        }
        let rows = self.parts.len().max(other.parts.len());
        let mut sum_p = 0u64;
        let mut sum_q = 0u64;
        for j in 1..=rows {
            sum_p += self.part(j);
            sum_q += other.part(j);
            if sum_p < sum_q {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Moves one box from row `i` down to row `j` (1-based, i < j; `j` may be
    /// one past the last row, creating a new part 1). Requires
    /// `part(i) - part(j) >= 2`; the result is re-sorted and strictly
    /// dominated by `self`.
    pub fn box_move(&self, i: usize, j: usize) -> Result<Partition> {
        let fail = |reason: &str| Error::InvalidBoxMove {
            reason: reason.to_string(),
        };
        if i < 1 || i > self.parts.len() {
            return Err(fail(&format!("row i = {i} out of range")));
        }
        if j <= i || j > self.parts.len() + 1 {
            return Err(fail(&format!("row j = {j} must satisfy i < j <= len + 1")));
        }
        let pi = self.part(i);
        let pj = self.part(j);
        if pi < pj + 2 {
            return Err(fail(&format!("parts {pi} and {pj} differ by less than 2")));
        }
        let mut parts = self.parts.clone();
        parts[i - 1] -= 1;
        if j <= self.parts.len() {
            parts[j - 1] += 1;
        } else {
            parts.push(1);
        }
        Ok(Partition::new(parts))
    }

    /// All distinct results of a single box move.
    pub fn box_moves(&self) -> BTreeSet<Partition> {
        let mut out = BTreeSet::new();
        for i in 1..=self.parts.len() {
            for j in (i + 1)..=(self.parts.len() + 1) {
                if let Ok(q) = self.box_move(i, j) {
                    out.insert(q);
                }
            }
        }
        out
    }

    /// Immediate lower neighbours in the dominance order: all box-move
    /// results, reduced to their maximal elements. Candidate generation plus
    /// reduction is used because the move form is necessary for covers, not
    /// assumed sufficient.
    pub fn predecessors(&self) -> BTreeSet<Partition> {
        let candidates = self.box_moves();
        candidates
            .iter()
            .filter(|q| {
                !candidates
                    .iter()
                    .any(|r| r != *q && r.dominates(q).unwrap_or(false))
            })
            .cloned()
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Partitions serialize as plain JSON arrays, e.g. [3,1,1].
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PartsVisitor;
        impl<'de> Visitor<'de> for PartsVisitor {
            type Value = Partition;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of non-negative integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Partition, A::Error> {
                let mut parts = Vec::new();
                while let Some(p) = seq.next_element::<u64>()? {
                    parts.push(p);
                }
                Ok(Partition::new(parts))
            }
        }
        deserializer.deserialize_seq(PartsVisitor)
    }
}

/// All partitions of `n`, in decreasing lexicographic order on parts
/// ((n) first, (1,...,1) last).
pub fn partitions_of(n: u64) -> Vec<Partition> {
    partitions_bounded(n, n)
}

/// All partitions of `n` with every part at most `max_part`, in decreasing
/// lexicographic order.
pub fn partitions_bounded(n: u64, max_part: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(remaining: u64, cap: u64, stack: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::new(stack.iter().copied()));
            return;
        }
        let mut p = cap.min(remaining);
        while p >= 1 {
            stack.push(p);
            rec(remaining - p, p, stack, out);
            stack.pop();
            p -= 1;
        }
    }
    rec(n, max_part, &mut stack, &mut out);
    out
}

/// The dominance order on all partitions of `n` as a Hasse diagram: nodes in
/// decreasing lexicographic order, edges pointing from the dominating
/// partition down to each of its covers.
pub fn dominance_hasse(n: u64) -> HasseDiagram<Partition> {
    let nodes = partitions_of(n);
    let labels: Vec<String> = nodes.iter().map(|p| p.to_string()).collect();
    let mut edges = Vec::new();
    for (u, p) in nodes.iter().enumerate() {
        for q in p.predecessors() {
            let v = nodes.iter().position(|r| *r == q).expect("same weight class");
            edges.push((u, v));
        }
    }
    HasseDiagram::new(nodes, edges, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    #[test]
    fn canonicalizes_on_construction() {
        assert_eq!(p(&[1, 3, 0, 1]).parts(), &[3, 1, 1]);
        assert_eq!(p(&[]).weight(), 0);
        assert_eq!(p(&[0, 0]), Partition::empty());
    }

    #[test]
    fn dominates_examples() {
        assert!(p(&[2, 1]).dominates(&p(&[1, 1, 1])).unwrap());
        let q = p(&[3, 2, 1]);
        assert!(q.dominates(&q).unwrap());
        assert!(!p(&[2, 2]).dominates(&p(&[3, 1])).unwrap());
    }

    #[test]
    fn dominates_rejects_unequal_weights() {
        let err = p(&[2, 1]).dominates(&p(&[1, 1])).unwrap_err();
        assert!(matches!(err, Error::IncomparableWeights { left: 3, right: 2 }));
    }

    #[test]
    fn box_move_examples() {
        assert_eq!(p(&[3, 1]).box_move(1, 2).unwrap(), p(&[2, 2]));
        // j one past the end creates a new part 1
        assert_eq!(p(&[2]).box_move(1, 2).unwrap(), p(&[1, 1]));
        assert!(p(&[2, 2]).box_move(1, 2).is_err());
    }

    #[test]
    fn box_move_strictly_dominated() {
        for n in 1..=8 {
            for q in partitions_of(n) {
                for r in q.box_moves() {
                    assert!(q.dominates(&r).unwrap());
                    assert_ne!(q, r);
                }
            }
        }
    }

    #[test]
    fn predecessors_examples() {
        // expected values derived by exhaustive transitive reduction below
        assert_eq!(p(&[3]).predecessors(), [p(&[2, 1])].into_iter().collect());
        assert_eq!(
            p(&[2, 2]).predecessors(),
            [p(&[2, 1, 1])].into_iter().collect()
        );
        assert!(p(&[1, 1, 1]).predecessors().is_empty());
    }

    /// Independent cover oracle: covers of q among all partitions of the same
    /// weight, computed from the raw dominance relation.
    fn cover_oracle(q: &Partition) -> BTreeSet<Partition> {
        let all = partitions_of(q.weight());
        let below: Vec<&Partition> = all
            .iter()
            .filter(|r| *r != q && q.dominates(r).unwrap())
            .collect();
        below
            .iter()
            .filter(|r| {
                !below
                    .iter()
                    .any(|s| s != *r && s.dominates(r).unwrap())
            })
            .map(|r| (*r).clone())
            .collect()
    }

    #[test]
    fn predecessors_match_cover_oracle() {
        for n in 0..=8 {
            for q in partitions_of(n) {
                assert_eq!(q.predecessors(), cover_oracle(&q), "covers of {q}");
            }
        }
    }

    #[test]
    fn predecessor_moves_have_the_necessary_form() {
        for n in 1..=8 {
            for q in partitions_of(n) {
                for r in q.predecessors() {
                    let found = (1..=q.len()).any(|i| {
                        ((i + 1)..=(q.len() + 1)).any(|j| {
                            q.box_move(i, j).map(|s| s == r).unwrap_or(false)
                                && q.part(i) >= q.part(j) + 2
                                && q.part(i) > q.part(i + 1)
                                && (j == 1 || q.part(j - 1) > q.part(j))
                        })
                    });
                    assert!(found, "{q} -> {r} is not a well-formed move");
                }
            }
        }
    }

    #[test]
    fn hasse_trivial_and_small() {
        let h0 = dominance_hasse(0);
        assert_eq!(h0.nodes.len(), 1);
        assert!(h0.edges.is_empty());

        let h4 = dominance_hasse(4);
        assert_eq!(h4.nodes.len(), 5);
        assert_eq!(h4.nodes[0], p(&[4]));
        assert_eq!(h4.nodes[4], p(&[1, 1, 1, 1]));
        // dominance on partitions of 4 is a chain: (4) > (3,1) > (2,2) > (2,1,1) > (1^4)
        assert_eq!(h4.edges.len(), 4);
        for ((u, v), (eu, ev)) in h4.edges.iter().zip([(0, 1), (1, 2), (2, 3), (3, 4)]) {
            assert_eq!((*u, *v), (eu, ev));
        }
    }

    #[test]
    fn hasse_six_has_incomparable_pair() {
        let h6 = dominance_hasse(6);
        assert_eq!(h6.nodes.len(), 11);
        let a = p(&[3, 1, 1, 1]);
        let b = p(&[2, 2, 2]);
        assert!(!a.dominates(&b).unwrap());
        assert!(!b.dominates(&a).unwrap());
    }

    #[test]
    fn serde_round_trip() {
        let q = p(&[3, 1, 1]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[3,1,1]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        // non-canonical input is canonicalized
        let fixed: Partition = serde_json::from_str("[1,0,3]").unwrap();
        assert_eq!(fixed, p(&[3, 1]));
    }
}
