//! Free associative algebra over `Scalar` on graded mode generators, with
//! normal ordering driven by a commutator table.
//!
//! Words are straightened into non-decreasing generator order by rewriting
//! each inversion `a b -> b a + [a, b]` against the table. Table entries are
//! required to be strictly smaller than the pair in the `(mode sum, word
//! length)` filtration, which makes the rewriting terminate.

mod table;
mod tensor;

pub use table::CommTable;
pub use tensor::TensorPoly;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgError {
    #[error("mode {mode} exceeds the session capacity {cap}")]
    Capacity { mode: u16, cap: u8 },
    #[error("incomplete presentation: no commutator entry for ({a}, {b})")]
    MissingEntry { a: GenId, b: GenId },
    #[error("table entry for ({a}, {b}) does not decrease the filtration")]
    Filtration { a: GenId, b: GenId },
    #[error("tensor degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("{0}")]
    Scalar(#[from] crate::scalar::ScalarError),
}

/// Generator family. The derived order `F < Hp < H < E` is the normal-order
/// convention: lowering modes to the left, raising modes to the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    F,
    Hp,
    H,
    E,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::F => "f",
            Family::Hp => "hp",
            Family::H => "h",
            Family::E => "e",
        }
    }
}

/// One graded generator: a family plus a mode index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId {
    pub family: Family,
    pub mode: u8,
}

impl GenId {
    pub fn new(family: Family, mode: u8) -> GenId {
        GenId { family, mode }
    }

    /// Capacity-checked constructor.
    pub fn checked(family: Family, mode: u16, cap: u8) -> Result<GenId, AlgError> {
        if mode > u16::from(cap) {
            return Err(AlgError::Capacity { mode, cap });
        }
        Ok(GenId {
            family,
            mode: mode as u8,
        })
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.mode)
    }
}

pub fn e(mode: u8) -> GenId {
    GenId::new(Family::E, mode)
}
pub fn f(mode: u8) -> GenId {
    GenId::new(Family::F, mode)
}
pub fn h(mode: u8) -> GenId {
    GenId::new(Family::H, mode)
}
pub fn hp(mode: u8) -> GenId {
    GenId::new(Family::Hp, mode)
}

/// Finite product of generators; the empty word is the algebra unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn single(g: GenId) -> Word {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mode_sum(&self) -> u32 {
        self.0.iter().map(|g| u32::from(g.mode)).sum()
    }

    /// Non-decreasing in the generator order.
    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// First adjacent inversion, if any.
    fn first_inversion(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Noncommutative polynomial: finitely many words with scalar coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn one() -> NCPoly {
        NCPoly::term(Word::unit(), Scalar::one())
    }

    pub fn gen(g: GenId) -> NCPoly {
        NCPoly::term(Word::single(g), Scalar::one())
    }

    pub fn term(word: Word, coeff: Scalar) -> NCPoly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NCPoly { terms }
    }

    /// Raw product of generators as a single word (no straightening).
    pub fn word_of(gens: &[GenId]) -> NCPoly {
        NCPoly::term(Word(gens.to_vec()), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Word::unit())
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Concatenation product; the result is generally not normal-ordered.
    pub fn mul_raw(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.mul(cb));
            }
        }
        out
    }

    /// Straightened product.
    pub fn mul(&self, other: &NCPoly, table: &CommTable) -> Result<NCPoly, AlgError> {
        table.normal_order(&self.mul_raw(other))
    }

    /// Substitute scalars: apply `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Drop every term whose word mentions the given family.
    pub fn without_family(&self, fam: Family) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            if w.0.iter().all(|g| g.family != fam) {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_normal)
    }
}

/// Coefficients with internal structure get wrapped so `c*word` stays
/// unambiguous in dumps.
pub(crate) fn coeff_display(c: &Scalar) -> String {
    let s = c.to_string();
    if s.contains(' ') || s.contains('/') || s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() && !w.is_empty() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{}*{w}", coeff_display(c))?;
            }
        }
        Ok(())
    }
}

/// `[a, b]` straightened against the table.
pub fn commutator(a: &NCPoly, b: &NCPoly, table: &CommTable) -> Result<NCPoly, AlgError> {
    table.normal_order(&a.mul_raw(b).sub(&b.mul_raw(a)))
}

/// `{a, b}` straightened against the table.
pub fn anticommutator(a: &NCPoly, b: &NCPoly, table: &CommTable) -> Result<NCPoly, AlgError> {
    table.normal_order(&a.mul_raw(b).add(&b.mul_raw(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParamId;

    #[test]
    fn word_ordering_and_normality() {
        // F < Hp < H < E, modes ascending within a family.
        assert!(f(3) < hp(0));
        assert!(hp(5) < h(0));
        assert!(h(2) < e(0));
        assert!(e(1) < e(2));
        assert!(Word(vec![f(0), h(1), e(0)]).is_normal());
        assert!(!Word(vec![e(0), f(0)]).is_normal());
    }

    #[test]
    fn capacity_checked() {
        assert!(GenId::checked(Family::E, 3, 6).is_ok());
        assert_eq!(
            GenId::checked(Family::E, 9, 6),
            Err(AlgError::Capacity { mode: 9, cap: 6 })
        );
    }

    #[test]
    fn polynomial_accumulation() {
        let mut p = NCPoly::zero();
        p.add_term(Word::single(e(0)), Scalar::one());
        p.add_term(Word::single(e(0)), Scalar::int(-1));
        assert!(p.is_zero());
        let q = NCPoly::gen(e(0)).scale(&Scalar::param(ParamId::HBAR));
        assert_eq!(q.num_terms(), 1);
    }

    #[test]
    fn display_is_stable() {
        let p = NCPoly::gen(h(0))
            .mul_raw(&NCPoly::gen(e(1)))
            .scale(&Scalar::int(2));
        assert_eq!(p.to_string(), "2*h0*e1");
    }
}
