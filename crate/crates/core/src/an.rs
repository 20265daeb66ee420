//! Maximal Cohen-Macaulay modules over the even-dimensional (A_n)
//! hypersurface singularities k[[x_0..x_d]]/(x_0^{n+1} + x_1^2 + ... + x_d^2).
//!
//! The indecomposables are the free module F and ideals I_1..I_n; a module is
//! a multiplicity vector over them. Degeneration is decided by transporting
//! through the stable equivalence with k[[x]]/(x^{n+1}) (each I_j becomes the
//! cyclic module with part j, free summands vanish) and testing padded
//! dominance, together with equality of a computable Grothendieck-class
//! invariant kappa = (rank, sum j*mult(I_j) mod n+1). This simultaneously
//! decides the degeneration and extension orders.
//!
//! kappa is validated for d = 2 (where it separates exactly the observed
//! degeneration components) and degenerates to the length invariant for
//! d = 0; for d >= 4 the ranks of the I_j are not pinned down and the
//! defaults are flagged experimental.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclic::padded_dominates;
use crate::error::{Error, Result};
use crate::hasse::HasseDiagram;
use crate::partition::Partition;

/// Ranks assigned to the indecomposables: `free` for F, `ideal[j-1]` for I_j.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RankTable {
    pub free: u64,
    pub ideal: Vec<u64>,
}

impl RankTable {
    /// Defaults: for d = 0 the ring is artinian and the Grothendieck class is
    /// the length, so F has rank m = n+1 and I_j rank j; for d = 2 the I_j
    /// are rank-one ideals; for d >= 4 the default 2^(d/2-1) tracks size
    /// growth under doubling and is experimental.
    pub fn default_for(n: u64, d: u64) -> RankTable {
        if d == 0 {
            RankTable {
                free: n + 1,
                ideal: (1..=n).collect(),
            }
        } else {
            RankTable {
                free: 1,
                ideal: vec![1u64 << (d / 2 - 1); n as usize],
            }
        }
    }
}

/// The ring of the (A_n) singularity of even dimension d, with the rank
/// table its Grothendieck invariant uses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ANRing {
    n: u64,
    d: u64,
    rank_table: RankTable,
}

impl ANRing {
    pub fn new(n: u64, d: u64) -> Result<Self> {
        let table = RankTable::default_for(n, d);
        ANRing::with_rank_table(n, d, table)
    }

    pub fn with_rank_table(n: u64, d: u64, rank_table: RankTable) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidRing {
                reason: "n must be >= 1".into(),
            });
        }
        if d % 2 != 0 {
            return Err(Error::InvalidRing {
                reason: format!("dimension d = {d} must be even"),
            });
        }
        if rank_table.ideal.len() != n as usize {
            return Err(Error::InvalidRing {
                reason: format!(
                    "rank table has {} ideal entries but n = {n}",
                    rank_table.ideal.len()
                ),
            });
        }
        if rank_table.free == 0 || rank_table.ideal.iter().any(|&r| r == 0) {
            return Err(Error::InvalidRing {
                reason: "ranks must be positive".into(),
            });
        }
        Ok(ANRing { n, d, rank_table })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// The modulus of the transported one-variable ring, m = n + 1.
    pub fn modulus(&self) -> u64 {
        self.n + 1
    }

    pub fn rank_table(&self) -> &RankTable {
        &self.rank_table
    }

    pub fn rank_of_free(&self) -> u64 {
        self.rank_table.free
    }

    pub fn rank_of_ideal(&self, j: u64) -> u64 {
        self.rank_table.ideal[(j - 1) as usize]
    }

    /// True when the rank defaults are not validated (d >= 4).
    pub fn ranks_experimental(&self) -> bool {
        self.d >= 4
    }
}

/// A maximal Cohen-Macaulay module: multiplicities of F and the I_j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ANModule {
    ring: ANRing,
    free: u64,
    ideal_mult: Vec<u64>,
}

/// The computable Grothendieck-class invariant: total rank and the residue
/// theta = sum j*mult(I_j) mod (n+1). Degenerations preserve it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct KappaClass {
    pub rank: u64,
    pub theta: u64,
}

impl ANModule {
    pub fn new(ring: ANRing, free: u64, ideal_mult: Vec<u64>) -> Result<Self> {
        if ideal_mult.len() != ring.n() as usize {
            return Err(Error::InvalidRing {
                reason: format!(
                    "multiplicity vector has {} entries but n = {}",
                    ideal_mult.len(),
                    ring.n()
                ),
            });
        }
        Ok(ANModule {
            ring,
            free,
            ideal_mult,
        })
    }

    pub fn zero(ring: ANRing) -> Self {
        let n = ring.n() as usize;
        ANModule {
            ring,
            free: 0,
            ideal_mult: vec![0; n],
        }
    }

    pub fn ring(&self) -> &ANRing {
        &self.ring
    }

    pub fn free_mult(&self) -> u64 {
        self.free
    }

    /// Multiplicity of I_j, 1-based.
    pub fn ideal_mult(&self, j: u64) -> u64 {
        self.ideal_mult[(j - 1) as usize]
    }

    pub fn ideal_mults(&self) -> &[u64] {
        &self.ideal_mult
    }

    pub fn total_mult(&self) -> u64 {
        self.free + self.ideal_mult.iter().sum::<u64>()
    }

    /// Stable transport to k[[x]]/(x^{n+1}): one part j per copy of I_j; free
    /// summands vanish stably and their count rides alongside.
    pub fn transport(&self) -> (Partition, u64) {
        let parts = self.ideal_mult.iter().enumerate().flat_map(|(idx, &mult)| {
            std::iter::repeat(idx as u64 + 1).take(mult as usize)
        });
        (Partition::new(parts), self.free)
    }

    pub fn kappa(&self) -> KappaClass {
        let rank = self.free * self.ring.rank_of_free()
            + self
                .ideal_mult
                .iter()
                .enumerate()
                .map(|(idx, &mult)| mult * self.ring.rank_of_ideal(idx as u64 + 1))
                .sum::<u64>();
        let theta = self
            .ideal_mult
            .iter()
            .enumerate()
            .map(|(idx, &mult)| (idx as u64 + 1) * mult)
            .sum::<u64>()
            % self.ring.modulus();
        KappaClass { rank, theta }
    }

    /// Decides both the degeneration and extension orders: kappa must agree
    /// and the transported partitions must satisfy padded dominance at the
    /// minimal free padding.
    pub fn deg_leq(&self, other: &ANModule) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.kappa() != other.kappa() {
            return Ok(false);
        }
        let (p, _) = self.transport();
        let (q, _) = other.transport();
        Ok(padded_dominates(&p, &q, self.ring.modulus())?.holds)
    }

    /// Immediate degeneration successors: maximal elements strictly below
    /// `self`, found inside the (finite) kappa class and transitively
    /// reduced.
    pub fn cover_moves(&self) -> Vec<ANModule> {
        let class = enumerate_class(&self.ring, self.kappa(), self.kappa().rank);
        let below: Vec<&ANModule> = class
            .iter()
            .filter(|n| *n != self && self.deg_leq(n).expect("same ring"))
            .collect();
        below
            .iter()
            .filter(|n| {
                !below
                    .iter()
                    .any(|w| w != *n && w.deg_leq(n).expect("same ring"))
            })
            .map(|n| (*n).clone())
            .collect()
    }

    /// Descending lexicographic sort key on (free, mult(I_1), ...).
    fn sort_key(&self) -> Vec<u64> {
        let mut key = vec![self.free];
        key.extend(&self.ideal_mult);
        key
    }
}

// Canonical expression form: "R^2 + p", with p/q bound to I_1/I_2 for n = 2
// to match the usual labels, "I<j>" otherwise.
impl fmt::Display for ANModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces = Vec::new();
        let atom_name = |j: u64| -> String {
            if self.ring.n() == 2 {
                match j {
                    1 => "p".to_string(),
                    _ => "q".to_string(),
                }
            } else {
                format!("I{j}")
            }
        };
        if self.free > 0 {
            pieces.push(if self.free == 1 {
                "R".to_string()
            } else {
                format!("R^{}", self.free)
            });
        }
        for (idx, &mult) in self.ideal_mult.iter().enumerate() {
            if mult == 0 {
                continue;
            }
            let name = atom_name(idx as u64 + 1);
            pieces.push(if mult == 1 {
                name
            } else {
                format!("{name}^{mult}")
            });
        }
        if pieces.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", pieces.join(" + "))
        }
    }
}

impl Serialize for ANModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let default_table = RankTable::default_for(self.ring.n(), self.ring.d());
        let custom = self.ring.rank_table() != &default_table;
        let mut st = s.serialize_struct("ANModule", if custom { 4 } else { 3 })?;
        st.serialize_field("n", &self.ring.n())?;
        st.serialize_field("d", &self.ring.d())?;
        let mut mult = BTreeMap::new();
        if self.free > 0 {
            mult.insert("F".to_string(), self.free);
        }
        for (idx, &m) in self.ideal_mult.iter().enumerate() {
            if m > 0 {
                mult.insert(format!("I{}", idx + 1), m);
            }
        }
        st.serialize_field("mult", &mult)?;
        if custom {
            st.serialize_field("rank_table", self.ring.rank_table())?;
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for ANModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ANModule;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object {n, d, mult, rank_table?}")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<ANModule, A::Error> {
                let mut n = None;
                let mut dim = None;
                let mut mult: Option<BTreeMap<String, u64>> = None;
                let mut table: Option<RankTable> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "n" => n = Some(map.next_value()?),
                        "d" => dim = Some(map.next_value()?),
                        "mult" => mult = Some(map.next_value()?),
                        "rank_table" => table = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::unknown_field(
                                other,
                                &["n", "d", "mult", "rank_table"],
                            ))
                        }
                    }
                }
                let n: u64 = n.ok_or_else(|| de::Error::missing_field("n"))?;
                let dim: u64 = dim.ok_or_else(|| de::Error::missing_field("d"))?;
                let mult = mult.ok_or_else(|| de::Error::missing_field("mult"))?;
                let ring = match table {
                    Some(t) => ANRing::with_rank_table(n, dim, t),
                    None => ANRing::new(n, dim),
                }
                .map_err(de::Error::custom)?;
                let mut free = 0;
                let mut ideal = vec![0u64; n as usize];
                for (name, count) in mult {
                    if name == "F" {
                        free = count;
                    } else if let Some(j) = name.strip_prefix('I').and_then(|s| s.parse::<u64>().ok())
                    {
                        if j < 1 || j > n {
                            return Err(de::Error::custom(Error::IndexExceedsN { index: j, n }));
                        }
                        ideal[(j - 1) as usize] = count;
                    } else {
                        return Err(de::Error::custom(format!("unknown indecomposable {name}")));
                    }
                }
                ANModule::new(ring, free, ideal).map_err(de::Error::custom)
            }
        }
        d.deserialize_map(V)
    }
}

/// All modules in the kappa class with total multiplicity <= bound, in
/// decreasing lexicographic order on (free, mult vector). Every rank is
/// positive, so bound = kappa.rank enumerates the whole class.
pub fn enumerate_class(ring: &ANRing, kappa: KappaClass, max_total_mult: u64) -> Vec<ANModule> {
    let n = ring.n() as usize;
    let mut out = Vec::new();
    let mut mults = vec![0u64; n];
    fn rec(
        ring: &ANRing,
        kappa: KappaClass,
        bound: u64,
        j: usize,
        used_rank: u64,
        used_mult: u64,
        mults: &mut Vec<u64>,
        out: &mut Vec<ANModule>,
    ) {
        if j == mults.len() {
            let remaining = kappa.rank - used_rank;
            if remaining % ring.rank_of_free() != 0 {
                return;
            }
            let free = remaining / ring.rank_of_free();
            if used_mult + free > bound {
                return;
            }
            let module = ANModule::new(ring.clone(), free, mults.clone()).expect("sized");
            if module.kappa() == kappa {
                out.push(module);
            }
            return;
        }
        let rank_j = ring.rank_of_ideal(j as u64 + 1);
        let max_by_rank = (kappa.rank - used_rank) / rank_j;
        let max_by_mult = bound - used_mult;
        for count in 0..=max_by_rank.min(max_by_mult) {
            mults[j] = count;
            rec(
                ring,
                kappa,
                bound,
                j + 1,
                used_rank + count * rank_j,
                used_mult + count,
                mults,
                out,
            );
            mults[j] = 0;
        }
    }
    rec(ring, kappa, max_total_mult, 0, 0, 0, &mut mults, &mut out);
    out.sort_by(|a, b| b.sort_key().cmp(&a.sort_key()));
    out
}

/// The degeneration Hasse diagram of one kappa class, restricted to total
/// multiplicity <= bound.
pub fn hasse_for_class(ring: &ANRing, kappa: KappaClass, max_total_mult: u64) -> HasseDiagram<ANModule> {
    let nodes = enumerate_class(ring, kappa, max_total_mult);
    let labels = nodes.iter().map(|m| m.to_string()).collect();
    HasseDiagram::from_order(nodes, labels, |a, b| a.deg_leq(b).expect("same ring"))
}

/// All kappa classes of the given rank, concatenated into one diagram (one
/// connected component per class), classes ordered by theta.
pub fn hasse_for_rank(ring: &ANRing, rank: u64, max_total_mult: u64) -> HasseDiagram<ANModule> {
    let mut nodes = Vec::new();
    for theta in 0..ring.modulus() {
        nodes.extend(enumerate_class(
            ring,
            KappaClass { rank, theta },
            max_total_mult,
        ));
    }
    let labels = nodes.iter().map(|m| m.to_string()).collect();
    HasseDiagram::from_order(nodes, labels, |a, b| a.deg_leq(b).expect("same ring"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> ANRing {
        ANRing::new(2, 2).unwrap()
    }

    /// For n = 2: module R^free (+) p^p_mult (+) q^q_mult.
    fn m2(free: u64, p_mult: u64, q_mult: u64) -> ANModule {
        ANModule::new(ring2(), free, vec![p_mult, q_mult]).unwrap()
    }

    #[test]
    fn transport_examples() {
        let (parts, free) = m2(1, 1, 1).transport();
        assert_eq!(parts, Partition::new([2, 1]));
        assert_eq!(free, 1);
        assert_eq!(m2(0, 3, 0).transport(), (Partition::new([1, 1, 1]), 0));
        assert_eq!(m2(3, 0, 0).transport(), (Partition::empty(), 3));
    }

    #[test]
    fn kappa_examples() {
        // R (+) q^2 and p^2 (+) q sit in the same class
        assert_eq!(m2(1, 0, 2).kappa(), KappaClass { rank: 3, theta: 1 });
        assert_eq!(m2(3, 0, 0).kappa(), KappaClass { rank: 3, theta: 0 });
        assert_eq!(m2(0, 2, 1).kappa(), KappaClass { rank: 3, theta: 1 });
    }

    #[test]
    fn deg_leq_rank3_examples() {
        assert!(m2(3, 0, 0).deg_leq(&m2(1, 1, 1)).unwrap());
        assert!(m2(1, 1, 1).deg_leq(&m2(0, 0, 3)).unwrap());
        assert!(!m2(2, 1, 0).deg_leq(&m2(2, 0, 1)).unwrap()); // theta 1 vs 2
        assert!(!m2(0, 3, 0).deg_leq(&m2(0, 0, 3)).unwrap());
        assert!(!m2(0, 0, 3).deg_leq(&m2(0, 3, 0)).unwrap());
    }

    #[test]
    fn deg_leq_rejects_ring_mismatch() {
        let other = ANModule::new(ANRing::new(3, 2).unwrap(), 1, vec![0, 0, 0]).unwrap();
        assert!(matches!(
            m2(1, 0, 0).deg_leq(&other),
            Err(Error::RingMismatch)
        ));
    }

    #[test]
    fn cover_moves_examples() {
        assert_eq!(m2(1, 1, 1).cover_moves(), vec![m2(0, 3, 0), m2(0, 0, 3)]);
        assert!(m2(0, 3, 0).cover_moves().is_empty());
        assert_eq!(m2(3, 0, 0).cover_moves(), vec![m2(1, 1, 1)]);
    }

    #[test]
    fn hasse_rank3_components() {
        let ring = ring2();
        let class0 = hasse_for_class(&ring, KappaClass { rank: 3, theta: 0 }, 3);
        assert_eq!(
            class0.nodes,
            vec![m2(3, 0, 0), m2(1, 1, 1), m2(0, 3, 0), m2(0, 0, 3)]
        );
        assert_eq!(class0.edges, vec![(0, 1), (1, 2), (1, 3)]);

        let class1 = hasse_for_class(&ring, KappaClass { rank: 3, theta: 1 }, 3);
        assert_eq!(
            class1.labels,
            vec!["R^2 + p", "R + q^2", "p^2 + q"]
        );
        assert_eq!(class1.edges, vec![(0, 1), (1, 2)]);

        let class2 = hasse_for_class(&ring, KappaClass { rank: 3, theta: 2 }, 3);
        assert_eq!(
            class2.labels,
            vec!["R^2 + q", "R + p^2", "p + q^2"]
        );
        assert_eq!(class2.edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn hasse_for_rank_collects_all_components() {
        let diagram = hasse_for_rank(&ring2(), 3, 3);
        assert_eq!(diagram.nodes.len(), 10);
        assert_eq!(diagram.components().len(), 3);
    }

    #[test]
    fn display_uses_paper_labels_for_n2() {
        assert_eq!(m2(1, 1, 1).to_string(), "R + p + q");
        assert_eq!(m2(0, 0, 3).to_string(), "q^3");
        assert_eq!(m2(0, 0, 0).to_string(), "0");
        let n3 = ANModule::new(ANRing::new(3, 2).unwrap(), 2, vec![1, 0, 2]).unwrap();
        assert_eq!(n3.to_string(), "R^2 + I1 + I3^2");
    }

    #[test]
    fn serde_wire_format() {
        let m = m2(2, 1, 0);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"n":2,"d":2,"mult":{"F":2,"I1":1}}"#);
        let back: ANModule = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ANModule>(r#"{"n":2,"d":2,"mult":{"I5":1}}"#).is_err());
    }

    #[test]
    fn d0_rank_table_is_length() {
        let ring = ANRing::new(2, 0).unwrap();
        let module = ANModule::new(ring, 1, vec![1, 1]).unwrap();
        // length of R (+) R/(x) (+) R/(x^2) over k[[x]]/(x^3)
        assert_eq!(module.kappa().rank, 3 + 1 + 2);
    }

    #[test]
    fn d4_defaults_are_flagged() {
        let ring = ANRing::new(2, 4).unwrap();
        assert!(ring.ranks_experimental());
        assert_eq!(ring.rank_of_ideal(1), 2);
        assert!(!ring2().ranks_experimental());
    }
}
