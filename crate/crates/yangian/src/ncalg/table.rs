//! Commutator tables and the normal-ordering rewriter.

use std::collections::BTreeMap;

use super::{AlgError, Family, GenId, NCPoly, Word};
use crate::scalar::Scalar;

/// Complete set of straightened brackets `[a, b]` for generator pairs with
/// `a > b`. Values are normal-ordered and strictly smaller than the pair in
/// the `(mode sum, word length)` filtration; that bound is checked on insert
/// and guarantees the rewriter terminates.
#[derive(Clone, Debug)]
pub struct CommTable {
    families: Vec<Family>,
    cap: u8,
    entries: BTreeMap<(GenId, GenId), NCPoly>,
}

impl CommTable {
    pub fn new(families: &[Family], cap: u8) -> CommTable {
        CommTable {
            families: families.to_vec(),
            cap,
            entries: BTreeMap::new(),
        }
    }

    pub fn cap(&self) -> u8 {
        self.cap
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(GenId, GenId), &NCPoly)> {
        self.entries.iter()
    }

    /// Insert `[a, b]` in either orientation; stored as the pair with the
    /// larger generator first. Rejects entries that do not strictly decrease
    /// the filtration.
    pub fn insert_commutator(&mut self, a: GenId, b: GenId, value: NCPoly) -> Result<(), AlgError> {
        assert!(a != b, "commutator of a generator with itself is zero");
        let (key, val) = if a > b {
            ((a, b), value)
        } else {
            ((b, a), value.neg())
        };
        let pair_modes = u32::from(key.0.mode) + u32::from(key.1.mode);
        for (w, _) in val.terms() {
            let below = w.mode_sum() < pair_modes || (w.mode_sum() == pair_modes && w.len() < 2);
            if !below {
                return Err(AlgError::Filtration { a: key.0, b: key.1 });
            }
            if w.0.iter().any(|g| u16::from(g.mode) > u16::from(self.cap)) {
                return Err(AlgError::Capacity {
                    mode: w.0.iter().map(|g| u16::from(g.mode)).max().unwrap(),
                    cap: self.cap,
                });
            }
        }
        self.entries.insert(key, val);
        Ok(())
    }

    /// Stored entry for `a > b`.
    pub fn entry(&self, a: GenId, b: GenId) -> Result<&NCPoly, AlgError> {
        self.entries
            .get(&(a, b))
            .ok_or(AlgError::MissingEntry { a, b })
    }

    /// `[a, b]` for arbitrary orientation.
    pub fn bracket(&self, a: GenId, b: GenId) -> Result<NCPoly, AlgError> {
        use std::cmp::Ordering;
        match a.cmp(&b) {
            Ordering::Equal => Ok(NCPoly::zero()),
            Ordering::Greater => self.entry(a, b).cloned(),
            Ordering::Less => Ok(self.entry(b, a)?.neg()),
        }
    }

    /// Replace one entry (test scaffolding for negative controls).
    pub fn corrupt_entry(&mut self, a: GenId, b: GenId, value: NCPoly) {
        let (key, val) = if a > b {
            ((a, b), value)
        } else {
            ((b, a), value.neg())
        };
        self.entries.insert(key, val);
    }

    /// Every pair of distinct generators in the registered families with
    /// `mode(a) + mode(b) <= cap` has an entry.
    pub fn is_complete(&self) -> bool {
        let gens = self.generators();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[..i] {
                if u32::from(a.mode) + u32::from(b.mode) <= u32::from(self.cap)
                    && !self.entries.contains_key(&(a, b))
                {
                    return false;
                }
            }
        }
        true
    }

    /// All generators of the registered families up to the capacity, sorted.
    pub fn generators(&self) -> Vec<GenId> {
        let mut gens: Vec<GenId> = Vec::new();
        for &fam in &self.families {
            for mode in 0..=self.cap {
                gens.push(GenId::new(fam, mode));
            }
        }
        gens.sort();
        gens
    }

    /// Straighten every word into non-decreasing generator order modulo the
    /// relations. The result is normal and the map is a projection.
    pub fn normal_order(&self, x: &NCPoly) -> Result<NCPoly, AlgError> {
        let mut result = NCPoly::zero();
        let mut work: Vec<(Word, Scalar)> =
            x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((w, c)) = work.pop() {
            match w.first_inversion() {
                None => result.add_term(w, c),
                Some(i) => {
                    let a = w.0[i];
                    let b = w.0[i + 1];
                    let entry = self.entry(a, b)?;
                    let mut swapped = w.clone();
                    swapped.0.swap(i, i + 1);
                    work.push((swapped, c.clone()));
                    for (ew, ec) in entry.terms() {
                        let mut spliced = Vec::with_capacity(w.len() + ew.len() - 2);
                        spliced.extend_from_slice(&w.0[..i]);
                        spliced.extend_from_slice(&ew.0);
                        spliced.extend_from_slice(&w.0[i + 2..]);
                        work.push((Word(spliced), c.mul(ec)));
                    }
                }
            }
        }
        Ok(result)
    }

    /// Deterministic textual dump, sorted by generator pair.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for ((a, b), v) in &self.entries {
            out.push_str(&format!("[{a}, {b}] = {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{e, f, h};
    use crate::scalar::{ParamId, Scalar};

    /// Tiny hand-built table: [e0, f0] = h0, [h0, e0] = 2 e0, [h0, f0] = -2 f0.
    fn toy_table() -> CommTable {
        let mut t = CommTable::new(&[Family::F, Family::H, Family::E], 2);
        t.insert_commutator(e(0), f(0), NCPoly::gen(h(0))).unwrap();
        t.insert_commutator(h(0), f(0), NCPoly::gen(f(0)).scale(&Scalar::int(-2)))
            .unwrap();
        t.insert_commutator(e(0), h(0), NCPoly::gen(e(0)).scale(&Scalar::int(-2)))
            .unwrap();
        t
    }

    #[test]
    fn straighten_single_inversion() {
        let t = toy_table();
        let x = NCPoly::word_of(&[e(0), f(0)]);
        let n = t.normal_order(&x).unwrap();
        // e0 f0 = f0 e0 + h0
        let mut expect = NCPoly::word_of(&[f(0), e(0)]);
        expect.add_term(Word::single(h(0)), Scalar::one());
        assert_eq!(n, expect);
    }

    #[test]
    fn normal_order_is_projection() {
        let t = toy_table();
        let x = NCPoly::word_of(&[e(0), h(0), f(0)]).scale(&Scalar::param(ParamId::HBAR));
        let once = t.normal_order(&x).unwrap();
        let twice = t.normal_order(&once).unwrap();
        assert!(once.is_normal());
        assert_eq!(once, twice);
    }

    #[test]
    fn missing_entry_is_reported() {
        let t = toy_table();
        let x = NCPoly::word_of(&[e(1), f(0)]);
        assert_eq!(
            t.normal_order(&x),
            Err(AlgError::MissingEntry { a: e(1), b: f(0) })
        );
    }

    #[test]
    fn filtration_violation_rejected() {
        let mut t = toy_table();
        // [e0, f0] = e0*f0 would not decrease the filtration.
        let bad = NCPoly::word_of(&[f(0), e(0)]);
        assert_eq!(
            t.insert_commutator(e(0), f(0), bad),
            Err(AlgError::Filtration { a: e(0), b: f(0) })
        );
    }

    #[test]
    fn capacity_violation_rejected() {
        let mut t = CommTable::new(&[Family::F, Family::E], 1);
        // Entry mentioning mode 2 exceeds cap 1. Use a pair whose mode sum
        // stays above the entry's filtration so only capacity can fail.
        let val = NCPoly::gen(GenId::new(Family::F, 2)).scale(&Scalar::one());
        let err = t.insert_commutator(
            GenId::new(Family::E, 1),
            GenId::new(Family::F, 1),
            val.scale(&Scalar::one()),
        );
        assert!(matches!(err, Err(AlgError::Capacity { .. })));
    }
}
