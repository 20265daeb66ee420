//! Direct sums of cyclic modules over k[[x]] and k[[x]]/(x^m).
//!
//! A module is a partition plus a ring modulus: part p contributes a summand
//! R/(x^p), and over a finite modulus m a part equal to m is a free summand.
//! Degeneration and extension orders coincide here and are decided by
//! dominance; single degeneration steps carry an explicit short exact
//! sequence witness.

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// The ring: k[[x]]/(x^m) for finite m >= 1, or k[[x]] itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Modulus {
    Finite(u64),
    Infinite,
}

impl Modulus {
    pub fn is_finite(self) -> bool {
        matches!(self, Modulus::Finite(_))
    }

    pub fn admits(self, part: u64) -> bool {
        match self {
            Modulus::Finite(m) => part <= m,
            Modulus::Infinite => true,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(m) => write!(f, "{m}"),
            Modulus::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Modulus::Finite(m) => s.serialize_u64(*m),
            Modulus::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Modulus;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive integer or the string \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Modulus, E> {
                if v >= 1 {
                    Ok(Modulus::Finite(v))
                } else {
                    Err(E::custom("modulus must be >= 1"))
                }
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Modulus, E> {
                if v >= 1 {
                    Ok(Modulus::Finite(v as u64))
                } else {
                    Err(E::custom("modulus must be >= 1"))
                }
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Modulus, E> {
                match v {
                    "inf" => Ok(Modulus::Infinite),
                    _ => Err(E::custom("expected \"inf\"")),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// A finite direct sum of cyclic modules over the ring named by `modulus`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclicModule {
    modulus: Modulus,
    parts: Partition,
}

impl CyclicModule {
    pub fn new(modulus: Modulus, parts: Partition) -> Result<Self> {
        if let Modulus::Finite(m) = modulus {
            if m < 1 {
                return Err(Error::InvalidRing {
                    reason: "modulus must be >= 1".into(),
                });
            }
            if let Some(&p) = parts.parts().iter().find(|&&p| p > m) {
                return Err(Error::PartExceedsModulus { part: p, modulus: m });
            }
        }
        Ok(CyclicModule { modulus, parts })
    }

    pub fn zero(modulus: Modulus) -> Self {
        CyclicModule {
            modulus,
            parts: Partition::empty(),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn parts(&self) -> &Partition {
        &self.parts
    }

    pub fn length(&self) -> u64 {
        self.parts.weight()
    }

    /// Fitting exponents over k[[x]]: entry i is the tail sum of parts after
    /// the first i, ending at the first 0 (exponent e encodes the ideal
    /// (x^e), with e = 0 the unit ideal).
    pub fn fitting_exponents(&self) -> Result<Vec<u64>> {
        if self.modulus.is_finite() {
            return Err(Error::InfiniteModulusRequired);
        }
        let parts = self.parts.parts();
        let mut out = Vec::with_capacity(parts.len() + 1);
        let mut tail: u64 = parts.iter().sum();
        out.push(tail);
        for &p in parts {
            tail -= p;
            out.push(tail);
        }
        // trailing zeros collapse into the single final 0
        while out.len() >= 2 && out[out.len() - 2] == 0 {
            out.pop();
        }
        Ok(out)
    }

    /// Decides both the degeneration order and the extension order (they
    /// coincide over these rings): true iff the lengths agree and the parts
    /// of `self` dominate the parts of `other`. Unequal lengths are `false`,
    /// the Grothendieck-class obstruction, not an error.
    pub fn deg_leq(&self, other: &CyclicModule) -> Result<bool> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.to_string(),
                right: other.modulus.to_string(),
            });
        }
        if self.length() != other.length() {
            return Ok(false);
        }
        self.parts.dominates(&other.parts)
    }

    /// One degeneration-by-extension step: replaces parts {a, b} (a >= b + 2,
    /// b = 0 reads as the zero summand) by {a-1, b+1} and returns the short
    /// exact sequence witness 0 -> R/(x^{a-1}) -> R/(x^a) (+) R/(x^b) ->
    /// R/(x^{b+1}) -> 0 together with the resulting module.
    pub fn ext_step_witness(&self, a: u64, b: u64) -> Result<(ExtWitness, CyclicModule)> {
        if a < b + 2 {
            return Err(Error::SplitMove { a, b });
        }
        let after_a = self
            .parts
            .remove_one(a)
            .ok_or(Error::MissingPart { part: a })?;
        let rest = if b == 0 {
            after_a
        } else {
            after_a.remove_one(b).ok_or(Error::MissingPart { part: b })?
        };
        let single = |p: u64| {
            CyclicModule::new(self.modulus, Partition::new([p])).expect("parts shrink")
        };
        let witness = ExtWitness {
            sub: single(a - 1),
            mid: CyclicModule::new(self.modulus, Partition::new([a, b]))?,
            quot: single(b + 1),
            map_description: "1 -> (x, 1)".to_string(),
        };
        let result = CyclicModule::new(self.modulus, rest.union(&Partition::new([a - 1, b + 1])))?;
        Ok((witness, result))
    }

    /// Splits off free summands: the parts strictly below m, plus the count
    /// of parts equal to m (which vanish in the stable category).
    pub fn stable_reduce(&self) -> Result<(Partition, u64)> {
        let m = match self.modulus {
            Modulus::Finite(m) => m,
            Modulus::Infinite => return Err(Error::FiniteModulusRequired),
        };
        let stable = Partition::new(self.parts.parts().iter().copied().filter(|&p| p < m));
        let free = self.parts.parts().iter().filter(|&&p| p == m).count() as u64;
        Ok((stable, free))
    }
}

// Canonical expression form: parts descending, "x^a" atoms with "*k"
// multiplicities, e.g. "x^3*2 + x".
impl fmt::Display for CyclicModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let parts = self.parts.parts();
        let mut i = 0;
        while i < parts.len() {
            let p = parts[i];
            let mut count = 1;
            while i + count < parts.len() && parts[i + count] == p {
                count += 1;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if p == 1 {
                write!(f, "x")?;
            } else {
                write!(f, "x^{p}")?;
            }
            if count > 1 {
                write!(f, "*{count}")?;
            }
            i += count;
        }
        Ok(())
    }
}

impl Serialize for CyclicModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CyclicModule", 2)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("parts", &self.parts)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CyclicModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CyclicModule;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object {modulus, parts}")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<CyclicModule, A::Error> {
                let mut modulus = None;
                let mut parts = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "modulus" => modulus = Some(map.next_value::<Modulus>()?),
                        "parts" => parts = Some(map.next_value::<Partition>()?),
                        other => return Err(de::Error::unknown_field(other, &["modulus", "parts"])),
                    }
                }
                let modulus = modulus.ok_or_else(|| de::Error::missing_field("modulus"))?;
                let parts = parts.ok_or_else(|| de::Error::missing_field("parts"))?;
                CyclicModule::new(modulus, parts).map_err(de::Error::custom)
            }
        }
        d.deserialize_map(V)
    }
}

/// A short exact sequence 0 -> sub -> mid -> quot -> 0 witnessing one
/// degeneration-by-extension step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtWitness {
    pub sub: CyclicModule,
    pub mid: CyclicModule,
    pub quot: CyclicModule,
    pub map_description: String,
}

/// Outcome of a padded stable comparison: whether the relation holds, and the
/// minimal free paddings (a, b) that equalize the weights (absent when no
/// padding can).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PaddedDominance {
    pub holds: bool,
    pub witness: Option<(u64, u64)>,
}

/// Stable degeneration test behind the even-dimensional decision procedure:
/// true iff p (+) {m}^a dominates q (+) {m}^b for the minimal non-negative
/// (a, b) with weight(p) + a m = weight(q) + b m. Parts equal to m are
/// stably trivial and stripped first; minimal padding suffices because
/// adjoining a maximal part to both sides preserves dominance.
pub fn padded_dominates(p: &Partition, q: &Partition, m: u64) -> Result<PaddedDominance> {
    if m < 1 {
        return Err(Error::InvalidRing {
            reason: "modulus must be >= 1".into(),
        });
    }
    for part in p.parts().iter().chain(q.parts()) {
        if *part > m {
            return Err(Error::PartExceedsModulus { part: *part, modulus: m });
        }
    }
    let strip = |r: &Partition| Partition::new(r.parts().iter().copied().filter(|&x| x < m));
    let p = strip(p);
    let q = strip(q);
    let (wp, wq) = (p.weight(), q.weight());
    let diff = wq.abs_diff(wp);
    if diff % m != 0 {
        return Ok(PaddedDominance {
            holds: false,
            witness: None,
        });
    }
    let (a, b) = if wq >= wp { (diff / m, 0) } else { (0, diff / m) };
    let holds = p.pad(m, a).dominates(&q.pad(m, b))?;
    Ok(PaddedDominance {
        holds,
        witness: Some((a, b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u64]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    fn module(m: Modulus, parts: &[u64]) -> CyclicModule {
        CyclicModule::new(m, part(parts)).unwrap()
    }

    const INF: Modulus = Modulus::Infinite;

    #[test]
    fn construction_validates_parts() {
        assert!(CyclicModule::new(Modulus::Finite(3), part(&[3, 2])).is_ok());
        let err = CyclicModule::new(Modulus::Finite(3), part(&[4])).unwrap_err();
        assert!(matches!(err, Error::PartExceedsModulus { part: 4, modulus: 3 }));
    }

    #[test]
    fn fitting_exponents_examples() {
        assert_eq!(module(INF, &[3, 1]).fitting_exponents().unwrap(), vec![4, 1, 0]);
        assert_eq!(module(INF, &[]).fitting_exponents().unwrap(), vec![0]);
        assert_eq!(
            module(INF, &[2, 2, 1]).fitting_exponents().unwrap(),
            vec![5, 3, 1, 0]
        );
        assert!(module(Modulus::Finite(3), &[2]).fitting_exponents().is_err());
    }

    #[test]
    fn deg_leq_examples() {
        assert!(module(INF, &[3, 1]).deg_leq(&module(INF, &[2, 2])).unwrap());
        assert!(!module(INF, &[2, 2]).deg_leq(&module(INF, &[3, 1])).unwrap());
        // unequal lengths: false, not an error
        assert!(!module(INF, &[2, 1]).deg_leq(&module(INF, &[1, 1])).unwrap());
        let err = module(INF, &[1])
            .deg_leq(&module(Modulus::Finite(2), &[1]))
            .unwrap_err();
        assert!(matches!(err, Error::ModulusMismatch { .. }));
    }

    #[test]
    fn ext_step_examples() {
        let (w, result) = module(INF, &[3, 1]).ext_step_witness(3, 1).unwrap();
        assert_eq!(w.sub, module(INF, &[2]));
        assert_eq!(w.mid, module(INF, &[3, 1]));
        assert_eq!(w.quot, module(INF, &[2]));
        assert_eq!(w.map_description, "1 -> (x, 1)");
        assert_eq!(result, module(INF, &[2, 2]));
        assert_eq!(w.mid.length(), w.sub.length() + w.quot.length());

        // b = 0 reads R/(x^0) = 0
        let (w, result) = module(INF, &[2]).ext_step_witness(2, 0).unwrap();
        assert_eq!(w.sub, module(INF, &[1]));
        assert_eq!(w.quot, module(INF, &[1]));
        assert_eq!(result, module(INF, &[1, 1]));

        assert!(matches!(
            module(INF, &[2, 2]).ext_step_witness(2, 2).unwrap_err(),
            Error::SplitMove { a: 2, b: 2 }
        ));
        assert!(matches!(
            module(INF, &[3, 1]).ext_step_witness(4, 1).unwrap_err(),
            Error::MissingPart { part: 4 }
        ));
    }

    #[test]
    fn ext_step_result_is_dominated() {
        let m = module(INF, &[4, 2, 1]);
        for (a, b) in [(4, 2), (4, 1), (4, 0), (2, 0)] {
            let (_, result) = m.ext_step_witness(a, b).unwrap();
            assert!(m.deg_leq(&result).unwrap(), "({a},{b})");
        }
    }

    #[test]
    fn stable_reduce_examples() {
        let m3 = Modulus::Finite(3);
        assert_eq!(
            module(m3, &[3, 2, 1]).stable_reduce().unwrap(),
            (part(&[2, 1]), 1)
        );
        assert_eq!(module(m3, &[3, 3]).stable_reduce().unwrap(), (part(&[]), 2));
        assert_eq!(
            module(Modulus::Finite(5), &[2, 1]).stable_reduce().unwrap(),
            (part(&[2, 1]), 0)
        );
    }

    #[test]
    fn stable_reduce_round_trips() {
        for m in 1..=5u64 {
            for parts in crate::partition::partitions_bounded(8, m) {
                let module = CyclicModule::new(Modulus::Finite(m), parts.clone()).unwrap();
                let (stable, free) = module.stable_reduce().unwrap();
                assert_eq!(stable.pad(m, free), parts);
            }
        }
    }

    #[test]
    fn padded_dominates_examples() {
        // stable shadow of R^3 degenerating to R (+) p (+) q
        let r = padded_dominates(&part(&[]), &part(&[2, 1]), 3).unwrap();
        assert_eq!(
            r,
            PaddedDominance {
                holds: true,
                witness: Some((1, 0))
            }
        );
        let r = padded_dominates(&part(&[1]), &part(&[2, 2]), 3).unwrap();
        assert_eq!(
            r,
            PaddedDominance {
                holds: true,
                witness: Some((1, 0))
            }
        );
        let r = padded_dominates(&part(&[2, 1]), &part(&[2, 1]), 3).unwrap();
        assert_eq!(
            r,
            PaddedDominance {
                holds: true,
                witness: Some((0, 0))
            }
        );
        // weights 1 and 2 can never be equalized mod 3
        let r = padded_dominates(&part(&[1]), &part(&[1, 1]), 3).unwrap();
        assert_eq!(
            r,
            PaddedDominance {
                holds: false,
                witness: None
            }
        );
    }

    #[test]
    fn padded_dominates_strips_maximal_parts() {
        let with_free = padded_dominates(&part(&[3, 2, 1]), &part(&[2, 1]), 3).unwrap();
        let stripped = padded_dominates(&part(&[2, 1]), &part(&[2, 1]), 3).unwrap();
        assert_eq!(with_free, stripped);
    }

    #[test]
    fn display_canonical_form() {
        assert_eq!(module(INF, &[3, 1]).to_string(), "x^3 + x");
        assert_eq!(module(INF, &[3, 3, 1]).to_string(), "x^3*2 + x");
        assert_eq!(module(INF, &[]).to_string(), "0");
        assert_eq!(module(INF, &[1, 1]).to_string(), "x*2");
    }

    #[test]
    fn serde_matches_wire_format() {
        let m = module(Modulus::Finite(3), &[3, 1]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"modulus":3,"parts":[3,1]}"#);
        assert_eq!(serde_json::from_str::<CyclicModule>(&s).unwrap(), m);

        let inf = module(INF, &[2]);
        let s = serde_json::to_string(&inf).unwrap();
        assert_eq!(s, r#"{"modulus":"inf","parts":[2]}"#);
        assert_eq!(serde_json::from_str::<CyclicModule>(&s).unwrap(), inf);

        assert!(serde_json::from_str::<CyclicModule>(r#"{"modulus":3,"parts":[4]}"#).is_err());
    }
}
