//! Truncated expansions at infinity in one variable.
//!
//! Coefficients are generic so the same machinery serves plain scalars,
//! noncommutative polynomials, and tensor-algebra values. Index `k` holds the
//! coefficient of `var^-k`; the constant term sits at `k = 0`. Operations on
//! mismatched truncation orders truncate to the smaller one.

use super::{ParamId, Scalar};

/// Coefficient ring interface for series arithmetic.
pub trait SeriesCoeff: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
}

impl SeriesCoeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        self.mul(s)
    }
}

/// Truncated series `sum_k c_k var^-k`, `k = 0..=order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    pub var: ParamId,
    pub coeffs: Vec<C>,
}

pub type SeriesAtInfinity = Series<Scalar>;

impl<C: SeriesCoeff> Series<C> {
    pub fn zero(var: ParamId, order: u32) -> Series<C> {
        Series {
            var,
            coeffs: vec![C::zero(); order as usize + 1],
        }
    }

    pub fn from_coeffs(var: ParamId, coeffs: Vec<C>) -> Series<C> {
        assert!(!coeffs.is_empty());
        Series { var, coeffs }
    }

    /// Constant series.
    pub fn constant(var: ParamId, order: u32, c: C) -> Series<C> {
        let mut s = Series::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Coefficient of `var^-k`; zero beyond the kept window.
    pub fn coeff(&self, k: u32) -> C {
        self.coeffs.get(k as usize).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: u32) -> Series<C> {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order as usize + 1);
        while coeffs.len() < order as usize + 1 {
            coeffs.push(C::zero());
        }
        Series {
            var: self.var,
            coeffs,
        }
    }

    pub fn add(&self, other: &Series<C>) -> Series<C> {
        assert_eq!(self.var, other.var, "series variable mismatch");
        let order = self.order().min(other.order());
        let mut out: Series<C> = Series::zero(self.var, order);
        for k in 0..=order as usize {
            out.coeffs[k] = self.coeffs[k].add(&other.coeffs[k]);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Series<C> {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Cauchy product with a caller-supplied coefficient multiplication.
    pub fn mul_with(&self, other: &Series<C>, mul: impl Fn(&C, &C) -> C) -> Series<C> {
        assert_eq!(self.var, other.var, "series variable mismatch");
        let order = self.order().min(other.order());
        let mut out: Series<C> = Series::zero(self.var, order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order as usize {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&mul(a, b));
            }
        }
        out
    }

    /// Reindex under `var -> var + shift` using the binomial series
    /// `(var+shift)^(-k) = sum_j C(-k, j) shift^j var^(-k-j)`.
    pub fn shift_argument(&self, shift: &Scalar) -> Series<C> {
        let order = self.order();
        let mut out: Series<C> = Series::zero(self.var, order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k == 0 {
                out.coeffs[0] = out.coeffs[0].add(c);
                continue;
            }
            let mut shift_pow = Scalar::one();
            for j in 0..=(order as usize - k) {
                let b = binomial_neg(k as i64, j as u32);
                let factor = b.mul(&shift_pow);
                out.coeffs[k + j] = out.coeffs[k + j].add(&c.scale(&factor));
                shift_pow = shift_pow.mul(shift);
            }
        }
        out
    }
}

/// Binomial coefficient `C(-k, j) = (-1)^j C(k+j-1, j)` as a scalar.
fn binomial_neg(k: i64, j: u32) -> Scalar {
    let mut num: i64 = 1;
    let mut den: i64 = 1;
    for i in 0..i64::from(j) {
        num *= k + i;
        den *= i + 1;
    }
    let sign = if j.is_multiple_of(2) { 1 } else { -1 };
    Scalar::rational(sign * num, den)
}

impl SeriesAtInfinity {
    /// Invariant check: coefficients must not mention the expansion variable.
    pub fn coefficients_are_var_free(&self) -> bool {
        self.coeffs.iter().all(|c| !c.depends_on(self.var))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParamId;

    fn sp(id: ParamId) -> Scalar {
        Scalar::param(id)
    }

    #[test]
    fn geometric_kernel() {
        // 1/(u-v) = u^-1 + v u^-2 + v^2 u^-3 in the |u| > |v| region
        let s = sp(ParamId::U).sub(&sp(ParamId::V)).inv().unwrap();
        let ser = s.expand_at_infinity(ParamId::U, 3).unwrap();
        assert!(ser.coefficients_are_var_free());
        assert_eq!(ser.coeff(0), Scalar::zero());
        assert_eq!(ser.coeff(1), Scalar::one());
        assert_eq!(ser.coeff(2), sp(ParamId::V));
        assert_eq!(ser.coeff(3), sp(ParamId::V).mul(&sp(ParamId::V)));
    }

    #[test]
    fn binomial_shift() {
        // 1/(u+hbar) = u^-1 - hbar u^-2 + ...
        let s = sp(ParamId::U).add(&sp(ParamId::HBAR)).inv().unwrap();
        let ser = s.expand_at_infinity(ParamId::U, 2).unwrap();
        assert_eq!(ser.coeff(1), Scalar::one());
        assert_eq!(ser.coeff(2), sp(ParamId::HBAR).neg());
    }

    #[test]
    fn product_of_kernels() {
        // 1/((u-v)(u+hbar)) starts at u^-2, coefficient 1.
        let a = sp(ParamId::U).sub(&sp(ParamId::V));
        let b = sp(ParamId::U).add(&sp(ParamId::HBAR));
        let s = a.mul(&b).inv().unwrap();
        let ser = s.expand_at_infinity(ParamId::U, 2).unwrap();
        assert_eq!(ser.coeff(0), Scalar::zero());
        assert_eq!(ser.coeff(1), Scalar::zero());
        assert_eq!(ser.coeff(2), Scalar::one());
        // Oracle: the product of the two truncated expansions agrees.
        let sa = a.inv().unwrap().expand_at_infinity(ParamId::U, 3).unwrap();
        let sb = b.inv().unwrap().expand_at_infinity(ParamId::U, 3).unwrap();
        let prod = sa.mul_with(&sb, |x, y| x.mul(y));
        let direct = s.expand_at_infinity(ParamId::U, 3).unwrap();
        assert_eq!(prod, direct);
    }

    #[test]
    fn shift_matches_direct_expansion() {
        // Expanding 1/u then shifting u -> u + hbar equals expanding 1/(u+hbar).
        let u = sp(ParamId::U);
        let hbar = sp(ParamId::HBAR);
        let base = u.inv().unwrap().expand_at_infinity(ParamId::U, 4).unwrap();
        let shifted = base.shift_argument(&hbar);
        let direct = u
            .add(&hbar)
            .inv()
            .unwrap()
            .expand_at_infinity(ParamId::U, 4)
            .unwrap();
        assert_eq!(shifted, direct);
    }

    #[test]
    fn pole_at_infinity_rejected() {
        let s = sp(ParamId::U).mul(&sp(ParamId::U));
        assert!(s.expand_at_infinity(ParamId::U, 2).is_err());
    }
}
