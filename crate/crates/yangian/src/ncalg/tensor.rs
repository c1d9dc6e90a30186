//! Tensor powers of the mode algebra, for coproduct arithmetic.
//!
//! Legs are straightened independently; generators on different legs commute
//! by construction, so no cross-leg rewriting exists.

use std::collections::BTreeMap;
use std::fmt;

use super::{AlgError, CommTable, Family, GenId, NCPoly, Word};
use crate::scalar::Scalar;

/// Element of the `degree`-fold tensor power (degree 2 or 3), stored as a map
/// from leg-word tuples to coefficients with per-leg words normal.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorPoly {
    degree: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorPoly {
    pub fn zero(degree: usize) -> TensorPoly {
        assert!(degree == 2 || degree == 3, "tensor degree must be 2 or 3");
        TensorPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(degree: usize) -> TensorPoly {
        let mut t = TensorPoly::zero(degree);
        t.add_term(vec![Word::unit(); degree], Scalar::one());
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, legs: Vec<Word>, coeff: Scalar) {
        assert_eq!(legs.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
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

    /// `x (x) 1 + ... ` builder: place a polynomial on one leg, units elsewhere.
    pub fn on_leg(degree: usize, leg: usize, p: &NCPoly) -> TensorPoly {
        let mut t = TensorPoly::zero(degree);
        for (w, c) in p.terms() {
            let mut legs = vec![Word::unit(); degree];
            legs[leg] = w.clone();
            t.add_term(legs, c.clone());
        }
        t
    }

    /// Primitive element `x (x) 1 + 1 (x) x`.
    pub fn primitive(g: GenId) -> TensorPoly {
        let p = NCPoly::gen(g);
        TensorPoly::on_leg(2, 0, &p).add(&TensorPoly::on_leg(2, 1, &p))
    }

    /// Pure tensor `a (x) b`.
    pub fn pair(a: &NCPoly, b: &NCPoly) -> TensorPoly {
        let mut t = TensorPoly::zero(2);
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                t.add_term(vec![wa.clone(), wb.clone()], ca.mul(cb));
            }
        }
        t
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (legs, c) in &other.terms {
            out.add_term(legs.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TensorPoly {
        TensorPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> TensorPoly {
        if s.is_zero() {
            return TensorPoly::zero(self.degree);
        }
        TensorPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Componentwise product, each leg straightened.
    pub fn mul(&self, other: &TensorPoly, table: &CommTable) -> Result<TensorPoly, AlgError> {
        if self.degree != other.degree {
            return Err(AlgError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = TensorPoly::zero(self.degree);
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                // Straighten each leg; distribute the cross products.
                let mut parts: Vec<NCPoly> = Vec::with_capacity(self.degree);
                for (wa, wb) in la.iter().zip(lb.iter()) {
                    let mut concat = wa.0.clone();
                    concat.extend_from_slice(&wb.0);
                    parts.push(table.normal_order(&NCPoly::term(Word(concat), Scalar::one()))?);
                }
                let coeff = ca.mul(cb);
                distribute(&mut out, &parts, &coeff);
            }
        }
        Ok(out)
    }

    pub fn commutator(
        &self,
        other: &TensorPoly,
        table: &CommTable,
    ) -> Result<TensorPoly, AlgError> {
        Ok(self.mul(other, table)?.sub(&other.mul(self, table)?))
    }

    pub fn anticommutator(
        &self,
        other: &TensorPoly,
        table: &CommTable,
    ) -> Result<TensorPoly, AlgError> {
        Ok(self.mul(other, table)?.add(&other.mul(self, table)?))
    }

    /// Exchange the two legs of a degree-2 element.
    pub fn flip(&self) -> TensorPoly {
        assert_eq!(self.degree, 2, "flip is defined on degree 2");
        let mut out = TensorPoly::zero(2);
        for (legs, c) in &self.terms {
            out.add_term(vec![legs[1].clone(), legs[0].clone()], c.clone());
        }
        out
    }

    /// Embed a degree-2 element into degree 3 on the named legs (0-indexed
    /// pair), identity on the omitted leg.
    pub fn embed(&self, legs: (usize, usize)) -> TensorPoly {
        assert_eq!(self.degree, 2, "embed is defined on degree 2");
        assert!(
            legs.0 < legs.1 && legs.1 < 3,
            "legs must be one of 01, 02, 12"
        );
        let mut out = TensorPoly::zero(3);
        for (two, c) in &self.terms {
            let mut three = vec![Word::unit(), Word::unit(), Word::unit()];
            three[legs.0] = two[0].clone();
            three[legs.1] = two[1].clone();
            out.add_term(three, c.clone());
        }
        out
    }

    /// Apply a coproduct to one leg: every letter of that leg's word is
    /// replaced by its coproduct and the leg splits in two, raising degree 2
    /// to 3. `coproducts` must cover every letter encountered.
    pub fn coproduct_on_leg(
        &self,
        leg: usize,
        coproducts: &BTreeMap<GenId, TensorPoly>,
        table: &CommTable,
    ) -> Result<TensorPoly, AlgError> {
        assert_eq!(self.degree, 2);
        let mut out = TensorPoly::zero(3);
        for (legs, c) in &self.terms {
            let mut split = TensorPoly::unit(2);
            for g in &legs[leg].0 {
                let d = coproducts
                    .get(g)
                    .ok_or(AlgError::MissingEntry { a: *g, b: *g })?;
                split = split.mul(d, table)?;
            }
            let other = &legs[1 - leg];
            for (two, c2) in &split.terms {
                let three = if leg == 0 {
                    vec![two[0].clone(), two[1].clone(), other.clone()]
                } else {
                    vec![other.clone(), two[0].clone(), two[1].clone()]
                };
                out.add_term(three, c.mul(c2));
            }
        }
        Ok(out)
    }

    /// Contract one leg with the counit (generators to zero, unit to one),
    /// returning the polynomial on the remaining leg.
    pub fn counit_on_leg(&self, leg: usize) -> NCPoly {
        assert_eq!(self.degree, 2);
        let mut out = NCPoly::zero();
        for (legs, c) in &self.terms {
            if legs[leg].is_empty() {
                out.add_term(legs[1 - leg].clone(), c.clone());
            }
        }
        out
    }

    /// Drop every term mentioning the family on any leg.
    pub fn without_family(&self, fam: Family) -> TensorPoly {
        let mut out = TensorPoly::zero(self.degree);
        for (legs, c) in &self.terms {
            if legs.iter().all(|w| w.0.iter().all(|g| g.family != fam)) {
                out.add_term(legs.clone(), c.clone());
            }
        }
        out
    }

    /// Scale every coefficient through `f`.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> TensorPoly {
        let mut out = TensorPoly::zero(self.degree);
        for (legs, c) in &self.terms {
            out.add_term(legs.clone(), f(c));
        }
        out
    }
}

fn distribute(out: &mut TensorPoly, parts: &[NCPoly], coeff: &Scalar) {
    // Cartesian product over the legs' straightened polynomials.
    let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), coeff.clone())];
    for part in parts {
        let mut next = Vec::new();
        for (legs, c) in &acc {
            for (w, cw) in part.terms() {
                let mut l2 = legs.clone();
                l2.push(w.clone());
                next.push((l2, c.mul(cw)));
            }
        }
        acc = next;
    }
    for (legs, c) in acc {
        out.add_term(legs, c);
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (legs, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "{}*", super::coeff_display(c))?;
            }
            for (i, w) in legs.iter().enumerate() {
                if i > 0 {
                    f.write_str(" (x) ")?;
                }
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}
