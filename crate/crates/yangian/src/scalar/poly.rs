//! Multivariate polynomials with integer coefficients over the fixed
//! parameter registry.
//!
//! Monomials are compared in graded lexicographic order (total degree first,
//! then exponents with lower parameter index more significant). `Poly` is the
//! engine under `Scalar`; the GCD is a primitive-PRS computed recursively in
//! one variable at a time.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::params::{ParamId, NPARAMS};

/// Exponent vector over the registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub(crate) [u16; NPARAMS]);

impl Mono {
    pub fn unit() -> Mono {
        Mono([0; NPARAMS])
    }

    pub fn param(id: ParamId) -> Mono {
        let mut m = Mono::unit();
        m.0[id.index()] = 1;
        m
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn exp(&self, id: ParamId) -> u16 {
        self.0[id.index()]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        m
    }

    /// Componentwise division; `None` when not divisible.
    fn div(&self, other: &Mono) -> Option<Mono> {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(m)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer-coefficient multivariate polynomial. No zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly {
        Poly::int(1)
    }

    pub fn int(n: i64) -> Poly {
        Poly::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !n.is_zero() {
            terms.insert(Mono::unit(), n);
        }
        Poly { terms }
    }

    pub fn param(id: ParamId) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::param(id), BigInt::one());
        Poly { terms }
    }

    pub fn monomial(mono: Mono, coeff: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::unit()).is_some_and(|c| c.is_one())
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        if self.terms.len() == 1 {
            self.terms.get(&Mono::unit())
        } else {
            None
        }
    }

    fn add_term(&mut self, mono: Mono, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_int(&self, n: &BigInt) -> Poly {
        if n.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * n)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Leading term under the graded order.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Sign of the leading coefficient: -1, 0, or 1.
    pub fn leading_sign(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some((_, c)) => {
                if c.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// GCD of all integer coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = gcd_int(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, n: &BigInt) -> Poly {
        assert!(!n.is_zero());
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let (q, r) = num_integer_div_rem(c, n);
                    assert!(r.is_zero(), "non-exact integer division in poly");
                    (*m, q)
                })
                .collect(),
        }
    }

    /// Exact polynomial division; `None` when `self` is not a multiple of `d`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (*m, c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (*m, c.clone())
            };
            let qm = rm.div(&dm)?;
            let (qc, r) = num_integer_div_rem(&rc, &dc);
            if !r.is_zero() {
                return None;
            }
            let qt = Poly::monomial(qm, qc);
            quot = quot.add(&qt);
            rem = rem.sub(&qt.mul(d));
        }
        Some(quot)
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: ParamId) -> Option<u32> {
        self.terms.keys().map(|m| u32::from(m.exp(var))).max()
    }

    /// Minimal exponent of `var` across terms; `None` for zero.
    pub fn min_degree_in(&self, var: ParamId) -> Option<u32> {
        self.terms.keys().map(|m| u32::from(m.exp(var))).min()
    }

    pub fn depends_on(&self, var: ParamId) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Coefficient of `var^k`, with the `var` factor removed.
    pub fn coeff_of(&self, var: ParamId, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if u32::from(m.exp(var)) == k {
                let mut m2 = *m;
                m2.0[var.index()] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Dense coefficient list in `var`, ascending degree.
    pub fn as_univariate(&self, var: ParamId) -> Vec<Poly> {
        let deg = match self.degree_in(var) {
            None => return vec![],
            Some(d) => d,
        };
        (0..=deg).map(|k| self.coeff_of(var, k)).collect()
    }

    pub fn from_univariate(var: ParamId, coeffs: &[Poly]) -> Poly {
        let v = Poly::param(var);
        let mut out = Poly::zero();
        let mut vp = Poly::one();
        for c in coeffs {
            out = out.add(&c.mul(&vp));
            vp = vp.mul(&v);
        }
        out
    }

    /// Substitute an integer value for every parameter (test helper).
    pub fn eval_ints(&self, values: &[i64; NPARAMS]) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= BigInt::from(values[i]);
                }
            }
            total += term;
        }
        total
    }

    /// Highest-index parameter actually present.
    fn main_var(&self) -> Option<ParamId> {
        let mut best: Option<usize> = None;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && best.is_none_or(|b| i > b) {
                    best = Some(i);
                }
            }
        }
        best.map(ParamId)
    }

    /// Normalize sign so the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Poly {
        if self.leading_sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

pub fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Polynomial GCD over the integers, sign-normalized, including content.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalize_sign();
    }
    if b.is_zero() {
        return a.normalize_sign();
    }
    let var = match a.main_var().into_iter().chain(b.main_var()).max() {
        None => {
            // Both constant.
            return Poly::from_bigint(gcd_int(a.as_constant().unwrap(), b.as_constant().unwrap()));
        }
        Some(v) => v,
    };

    let ua = a.as_univariate(var);
    let ub = b.as_univariate(var);
    let cont_a = coeff_gcd(&ua);
    let cont_b = coeff_gcd(&ub);
    let cont = poly_gcd(&cont_a, &cont_b);
    let pa: Vec<Poly> = ua.iter().map(|c| c.exact_div(&cont_a).unwrap()).collect();
    let pb: Vec<Poly> = ub.iter().map(|c| c.exact_div(&cont_b).unwrap()).collect();

    let pp = primitive_prs(var, pa, pb);
    cont.mul(&Poly::from_univariate(var, &pp)).normalize_sign()
}

/// GCD of a coefficient list (content with respect to the main variable).
fn coeff_gcd(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        g = poly_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive PRS in `var`; inputs are primitive, output is primitive.
fn primitive_prs(var: ParamId, a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut r0, mut r1) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if r1.iter().all(|c| c.is_zero()) {
            return make_primitive(r0);
        }
        let rem = pseudo_rem(var, &r0, &r1);
        r0 = r1;
        r1 = make_primitive(rem);
    }
}

fn make_primitive(mut coeffs: Vec<Poly>) -> Vec<Poly> {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return coeffs;
    }
    let g = coeff_gcd(&coeffs);
    let mut out: Vec<Poly> = coeffs.iter().map(|c| c.exact_div(&g).unwrap()).collect();
    // Deterministic sign: positive leading coefficient.
    if out.last().unwrap().leading_sign() < 0 {
        for c in &mut out {
            *c = c.neg();
        }
    }
    out
}

/// Pseudo-remainder of dense coefficient vectors in `var`.
fn pseudo_rem(_var: ParamId, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r := lb * r - lr * x^(dr-db) * b
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&lr.mul(bc));
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(id: ParamId) -> Poly {
        Poly::param(id)
    }

    #[test]
    fn arithmetic_basics() {
        let u = p(ParamId::U);
        let v = p(ParamId::V);
        let a = u.add(&v);
        let b = u.sub(&v);
        let prod = a.mul(&b);
        let expect = u.mul(&u).sub(&v.mul(&v));
        assert_eq!(prod, expect);
    }

    #[test]
    fn exact_division() {
        let u = p(ParamId::U);
        let v = p(ParamId::V);
        let d = u.sub(&v);
        let n = u.mul(&u).sub(&v.mul(&v));
        let q = n.exact_div(&d).unwrap();
        assert_eq!(q, u.add(&v));
        assert!(u.exact_div(&d).is_none());
    }

    #[test]
    fn gcd_univariate() {
        let u = p(ParamId::U);
        let a = u.add(&Poly::one()).mul(&u.sub(&Poly::one()));
        let b = u.add(&Poly::one()).mul(&u.add(&Poly::int(2)));
        assert_eq!(poly_gcd(&a, &b), u.add(&Poly::one()));
    }

    #[test]
    fn gcd_multivariate() {
        let u = p(ParamId::U);
        let v = p(ParamId::V);
        let t = p(ParamId::T);
        let g = u.sub(&v);
        let a = g.mul(&t).mul(&Poly::int(6));
        let b = g.mul(&g).mul(&Poly::int(4));
        let got = poly_gcd(&a, &b);
        assert_eq!(got, g.mul(&Poly::int(2)));
    }

    #[test]
    fn gcd_with_content() {
        let a = Poly::int(12);
        let b = Poly::int(-18);
        assert_eq!(poly_gcd(&a, &b), Poly::int(6));
    }

    #[test]
    fn grlex_order() {
        let u = Mono::param(ParamId::U);
        let hbar2 = {
            let mut m = Mono::unit();
            m.0[ParamId::HBAR.index()] = 2;
            m
        };
        // degree 2 beats degree 1
        assert!(hbar2 > u);
    }
}
