//! Exact arithmetic over multivariate rational functions in the registered
//! formal parameters.
//!
//! A `Scalar` is a fraction of integer polynomials kept in canonical form:
//! numerator and denominator share no factor, and the denominator's leading
//! coefficient under the graded monomial order is positive. Equality of
//! canonical representations is equality of values, so every "residual is
//! zero" check downstream is exact.

mod params;
mod poly;
pub mod series;
pub mod text;

pub use params::{ParamId, NPARAMS, PARAM_NAMES};
pub use poly::{gcd_int, poly_gcd, Mono, Poly};
pub use series::SeriesAtInfinity;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("substitution produces a zero denominator")]
    ZeroDenominator,
    #[error("expression has a pole at infinity in {0}")]
    PoleAtInfinity(ParamId),
    #[error("denominator is not a monomial in {0}; no finite stratum decomposition")]
    NotLaurent(ParamId),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exact multivariate rational function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

/// Outcome of a one-sided limit at `var -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(Scalar),
    Divergent { order: u32, leading: Scalar },
}

impl Scalar {
    fn canonical(num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.exact_div(&g).unwrap();
        let mut den = den.exact_div(&g).unwrap();
        if den.leading_sign() < 0 {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Scalar {
        Scalar {
            num: Poly::int(n),
            den: Poly::one(),
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0);
        Scalar::canonical(Poly::int(num), Poly::int(den))
    }

    pub fn param(id: ParamId) -> Scalar {
        Scalar {
            num: Poly::param(id),
            den: Poly::one(),
        }
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        Scalar::canonical(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        Scalar::canonical(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        Scalar::one().div(self)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, n: i32) -> Result<Scalar, ScalarError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut out = Scalar::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        Ok(out)
    }

    pub fn depends_on(&self, var: ParamId) -> bool {
        self.num.depends_on(var) || self.den.depends_on(var)
    }

    /// Exact substitution `var -> value`.
    pub fn substitute(&self, var: ParamId, value: &Scalar) -> Result<Scalar, ScalarError> {
        let num = subst_poly(&self.num, var, value);
        let den = subst_poly(&self.den, var, value);
        // num and den are (poly, power-of-value-denominator) pairs; combine.
        let new_num = num.0.mul(&den.1);
        let new_den = den.0.mul(&num.1);
        if new_den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(Scalar::canonical(new_num, new_den))
    }

    /// Order of vanishing at `var -> 0`: positive means a zero, negative a
    /// pole. `None` for the zero scalar.
    pub fn order_at_zero(&self, var: ParamId) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let a = i64::from(self.num.min_degree_in(var).unwrap());
        let b = i64::from(self.den.min_degree_in(var).unwrap());
        Some(a - b)
    }

    /// Classify the limit `var -> 0`: the finite value when regular, or the
    /// pole order together with the leading coefficient.
    pub fn boundary_limit(&self, var: ParamId) -> Limit {
        if self.is_zero() {
            return Limit::Finite(Scalar::zero());
        }
        let a = self.num.min_degree_in(var).unwrap();
        let b = self.den.min_degree_in(var).unwrap();
        let lead_num = self.num.coeff_of(var, a);
        let lead_den = self.den.coeff_of(var, b);
        if a >= b {
            if a > b {
                Limit::Finite(Scalar::zero())
            } else {
                Limit::Finite(Scalar::canonical(lead_num, lead_den))
            }
        } else {
            Limit::Divergent {
                order: b - a,
                leading: Scalar::canonical(lead_num, lead_den),
            }
        }
    }

    /// True when `self / param^k` is still regular at `param -> 0` for all
    /// `k <= n`; used for divisibility-by-`p` checks.
    pub fn divisible_by_param(&self, var: ParamId, n: i64) -> bool {
        match self.order_at_zero(var) {
            None => true,
            Some(ord) => ord >= n,
        }
    }

    /// Split into strata by the order in `var`. Requires the denominator to
    /// be a monomial in `var` (times a `var`-free polynomial), so the result
    /// is a finite Laurent decomposition.
    pub fn strata(
        &self,
        var: ParamId,
    ) -> Result<std::collections::BTreeMap<i64, Scalar>, ScalarError> {
        let mut out = std::collections::BTreeMap::new();
        if self.is_zero() {
            return Ok(out);
        }
        let b = self.den.min_degree_in(var).unwrap();
        let d = self.den.degree_in(var).unwrap();
        if b != d {
            return Err(ScalarError::NotLaurent(var));
        }
        let den_free = self.den.coeff_of(var, b);
        let top = self.num.degree_in(var).unwrap();
        for k in self.num.min_degree_in(var).unwrap()..=top {
            let c = self.num.coeff_of(var, k);
            if c.is_zero() {
                continue;
            }
            out.insert(
                i64::from(k) - i64::from(b),
                Scalar::canonical(c, den_free.clone()),
            );
        }
        Ok(out)
    }

    /// Truncated expansion in powers of `var^-1` at infinity. Inputs with a
    /// genuine pole at infinity (numerator degree exceeding denominator
    /// degree in `var`) are rejected.
    pub fn expand_at_infinity(
        &self,
        var: ParamId,
        order: u32,
    ) -> Result<SeriesAtInfinity, ScalarError> {
        if self.is_zero() {
            return Ok(SeriesAtInfinity::zero(var, order));
        }
        let nd = self.num.degree_in(var).unwrap_or(0);
        let dd = self.den.degree_in(var).unwrap_or(0);
        if nd > dd {
            return Err(ScalarError::PoleAtInfinity(var));
        }
        // Coefficients of the reciprocal-variable expansion: write both sides
        // in descending powers of var and divide as power series. The
        // denominator's top coefficient is invertible in the coefficient
        // field of var-free scalars.
        let shift = dd - nd;
        let num_rev: Vec<Poly> = (0..=nd).map(|k| self.num.coeff_of(var, nd - k)).collect();
        let den_rev: Vec<Poly> = (0..=dd).map(|k| self.den.coeff_of(var, dd - k)).collect();
        let d0 = Scalar::canonical(den_rev[0].clone(), Poly::one());
        let mut coeffs: Vec<Scalar> = Vec::with_capacity(order as usize + 1);
        for m in 0..=order {
            if m < shift {
                coeffs.push(Scalar::zero());
                continue;
            }
            let j = m - shift;
            let mut acc = if (j as usize) < num_rev.len() {
                Scalar::canonical(num_rev[j as usize].clone(), Poly::one())
            } else {
                Scalar::zero()
            };
            for i in 0..j {
                let di = (j - i) as usize;
                if di < den_rev.len() && !den_rev[di].is_zero() {
                    let d = Scalar::canonical(den_rev[di].clone(), Poly::one());
                    acc = acc.sub(&coeffs[(shift + i) as usize].mul(&d));
                }
            }
            coeffs.push(acc.div(&d0).expect("nonzero leading denominator"));
        }
        Ok(SeriesAtInfinity::from_coeffs(var, coeffs))
    }

    /// Laurent coefficient view in a pair of variables; requires the
    /// denominator to be a single monomial. Keys are the actual exponents of
    /// `(x, y)`, values are free of both.
    pub fn laurent_coeffs(
        &self,
        x: ParamId,
        y: ParamId,
    ) -> Result<std::collections::BTreeMap<(i64, i64), Scalar>, ScalarError> {
        let mut out = std::collections::BTreeMap::new();
        if self.is_zero() {
            return Ok(out);
        }
        if !self.den.is_monomial() {
            return Err(ScalarError::NotLaurent(x));
        }
        let (dm, dc) = self.den.leading().unwrap();
        let (ax, ay) = (i64::from(dm.exp(x)), i64::from(dm.exp(y)));
        let mut den_rest = *dm;
        den_rest.0[x.index()] = 0;
        den_rest.0[y.index()] = 0;
        let den_scalar = Poly::monomial(den_rest, dc.clone());
        for (m, c) in self.num.terms() {
            let (ex, ey) = (i64::from(m.exp(x)), i64::from(m.exp(y)));
            let mut m2 = *m;
            m2.0[x.index()] = 0;
            m2.0[y.index()] = 0;
            let part = Scalar::canonical(Poly::monomial(m2, c.clone()), den_scalar.clone());
            let key = (ex - ax, ey - ay);
            let entry = out.entry(key).or_insert_with(Scalar::zero);
            *entry = entry.add(&part);
        }
        out.retain(|_, v: &mut Scalar| !v.is_zero());
        Ok(out)
    }

    /// Test helper: evaluate at integer parameter values (denominator must
    /// not vanish there).
    pub fn eval_ints(&self, values: &[i64; NPARAMS]) -> (BigInt, BigInt) {
        (self.num.eval_ints(values), self.den.eval_ints(values))
    }

    /// Integer content as a fraction: numerator content over denominator
    /// content. Zero scalar reports zero.
    pub fn rational_content(&self) -> (BigInt, BigInt) {
        (self.num.content(), self.den.content())
    }

    /// Sign of the numerator's leading coefficient.
    pub fn leading_sign(&self) -> i32 {
        self.num.leading_sign()
    }
}

/// Substitute `var -> value` in a polynomial; returns `(numerator, den_power)`
/// with `den_power` the needed power of the value's denominator.
fn subst_poly(p: &Poly, var: ParamId, value: &Scalar) -> (Poly, Poly) {
    let deg = match p.degree_in(var) {
        None => return (Poly::zero(), Poly::one()),
        Some(d) => d,
    };
    if deg == 0 {
        return (p.clone(), Poly::one());
    }
    let vn = value.numerator();
    let vd = value.denominator();
    // sum_k coeff_k * vn^k * vd^(deg-k), over common denominator vd^deg
    let mut acc = Poly::zero();
    for k in 0..=deg {
        let c = p.coeff_of(var, k);
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&c.mul(&vn.pow(k)).mul(&vd.pow(deg - k)));
    }
    (acc, vd.pow(deg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(id: ParamId) -> Scalar {
        Scalar::param(id)
    }

    #[test]
    fn cancellation() {
        // (p/(u-v)) * (u-v) = p
        let p = sp(ParamId::P);
        let k = sp(ParamId::U).sub(&sp(ParamId::V));
        let r = p.div(&k).unwrap().mul(&k);
        assert_eq!(r, p);
    }

    #[test]
    fn kernel_antisymmetry() {
        // 1/(u-v) + 1/(v-u) = 0
        let uv = sp(ParamId::U).sub(&sp(ParamId::V));
        let vu = sp(ParamId::V).sub(&sp(ParamId::U));
        let r = uv.inv().unwrap().add(&vu.inv().unwrap());
        assert!(r.is_zero());
    }

    #[test]
    fn eighth_of_kernel() {
        // div(1/8, u-v) has denominator 8(u-v)
        let r = Scalar::rational(1, 8)
            .div(&sp(ParamId::U).sub(&sp(ParamId::V)))
            .unwrap();
        let den = r.denominator();
        let expect = Poly::int(8).mul(&Poly::param(ParamId::U).sub(&Poly::param(ParamId::V)));
        assert_eq!(den, &expect);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Scalar::one().div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn substitution_examples() {
        // hbar -> p t
        let pt = sp(ParamId::P).mul(&sp(ParamId::T));
        assert_eq!(
            sp(ParamId::HBAR).substitute(ParamId::HBAR, &pt).unwrap(),
            pt
        );
        // t/(p+t) at t=0 is 0
        let s = sp(ParamId::T)
            .div(&sp(ParamId::P).add(&sp(ParamId::T)))
            .unwrap();
        assert_eq!(
            s.substitute(ParamId::T, &Scalar::zero()).unwrap(),
            Scalar::zero()
        );
        // 1/t at t=0 errors
        let pole = sp(ParamId::T).inv().unwrap();
        assert_eq!(
            pole.substitute(ParamId::T, &Scalar::zero()),
            Err(ScalarError::ZeroDenominator)
        );
    }

    #[test]
    fn boundary_limit_examples() {
        let t = ParamId::T;
        assert_eq!(
            Scalar::rational(1, 2).mul(&sp(t)).boundary_limit(t),
            Limit::Finite(Scalar::zero())
        );
        let half_p = sp(ParamId::P).mul(&Scalar::rational(1, 2));
        assert_eq!(half_p.boundary_limit(t), Limit::Finite(half_p.clone()));
        // p/(8t) diverges with order 1 and leading p/8
        let s = sp(ParamId::P).div(&Scalar::int(8).mul(&sp(t))).unwrap();
        assert_eq!(
            s.boundary_limit(t),
            Limit::Divergent {
                order: 1,
                leading: sp(ParamId::P).mul(&Scalar::rational(1, 8)),
            }
        );
        // p + t^2 -> p
        let s = sp(ParamId::P).add(&sp(t).mul(&sp(t)));
        assert_eq!(s.boundary_limit(t), Limit::Finite(sp(ParamId::P)));
    }

    #[test]
    fn strata_split() {
        let t = ParamId::T;
        let p = sp(ParamId::P);
        // p/t + 2 + 3t  ->  strata {-1: p, 0: 2, 1: 3}
        let s = p
            .div(&sp(t))
            .unwrap()
            .add(&Scalar::int(2))
            .add(&Scalar::int(3).mul(&sp(t)));
        let strata = s.strata(t).unwrap();
        assert_eq!(strata.len(), 3);
        assert_eq!(strata[&-1], p);
        assert_eq!(strata[&0], Scalar::int(2));
        assert_eq!(strata[&1], Scalar::int(3));
        // 1/(1+t) has no finite stratum decomposition
        let bad = Scalar::one().div(&Scalar::one().add(&sp(t))).unwrap();
        assert!(bad.strata(t).is_err());
    }

    #[test]
    fn laurent_coeffs_window() {
        let u = ParamId::U;
        let v = ParamId::V;
        // (u^2 v - 3) / (u v^2)
        let num = sp(u).mul(&sp(u)).mul(&sp(v)).sub(&Scalar::int(3));
        let den = sp(u).mul(&sp(v)).mul(&sp(v));
        let s = num.div(&den).unwrap();
        let m = s.laurent_coeffs(u, v).unwrap();
        assert_eq!(m[&(1, -1)], Scalar::one());
        assert_eq!(m[&(-1, -2)], Scalar::int(-3));
    }
}
