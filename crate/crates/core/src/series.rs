//! Truncated bivariate power series in `y`, `z` with exact rational
//! coefficients, and the hypersurface Hodge-number generating function.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::rational::Rational;

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Series truncated at total degree `order`: every monomial `y^i z^j` with
/// `i + j <= order` is tracked, everything above is discarded.
///
/// Storage is sparse; absent entries are zero and zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    order: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl BiSeries {
    pub fn zero(order: u32) -> Self {
        BiSeries {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: u32, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 0, c);
        s
    }

    /// `c * y^i * z^j`, or zero if the monomial lies above the truncation.
    pub fn monomial(order: u32, i: u32, j: u32, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.set(i, j, c);
        s
    }

    /// Builds a series from `(i, j, coefficient)` terms; like terms add up.
    pub fn from_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Rational)>,
    {
        let mut s = Self::zero(order);
        for (i, j, c) in terms {
            let cur = s.coeff(i, j);
            s.set(i, j, cur + c);
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Non-zero terms in `(i, j)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn set(&mut self, i: u32, j: u32, c: Rational) {
        if i + j > self.order {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    /// Same series viewed at a lower (or equal) truncation order.
    pub fn truncate(&self, order: u32) -> Self {
        BiSeries {
            order: order.min(self.order),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(i, j), _)| i + j <= order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            let cur = out.coeff(i, j);
            out.set(i, j, cur + c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for (&(i, j), v) in &self.coeffs {
            out.set(i, j, v * c);
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order;
        let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &other.coeffs {
                let (i, j) = (i1 + i2, j1 + j2);
                if i + j > n {
                    continue;
                }
                *acc.entry((i, j)).or_insert_with(Rational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(BiSeries {
            order: n,
            coeffs: acc,
        })
    }

    /// Multiplicative inverse of a series with non-zero constant term,
    /// computed homogeneous degree by homogeneous degree.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let n = self.order;
        let mut out = Self::constant(n, inv0.clone());
        for k in 1..=n {
            for i in 0..=k {
                let j = k - i;
                // b_{ij} = -(1/a_00) * sum_{(i',j') != (0,0)} a_{i'j'} b_{i-i', j-j'}
                let mut s = Rational::zero();
                for (&(ai, aj), a) in &self.coeffs {
                    if (ai, aj) == (0, 0) || ai > i || aj > j {
                        continue;
                    }
                    if let Some(b) = out.coeffs.get(&(i - ai, j - aj)) {
                        s += a * b;
                    }
                }
                out.set(i, j, -(s * &inv0));
            }
        }
        Ok(out)
    }

    /// Exact quotient by `(z - y)`.
    ///
    /// The result has order `order - 1`, since the degree-`order` part of
    /// `self` only determines the quotient through degree `order - 1`.
    pub fn div_exact_z_minus_y(&self) -> Result<Self, SeriesError> {
        if !self.coeff(0, 0).is_zero() {
            return Err(SeriesError::NotDivisible { degree: 0 });
        }
        let n = self.order;
        let out_order = n.saturating_sub(1);
        let mut out = Self::zero(out_order);
        // Homogeneous degree k of self equals (z - y) * (degree k-1 of quotient):
        //   a_{i, k-i} = b_{i, k-i-1} - b_{i-1, k-i}
        for k in 1..=n {
            let mut prev = Rational::zero(); // b_{i-1, k-i}
            for i in 0..k {
                let b = self.coeff(i, k - i) + &prev;
                out.set(i, k - 1 - i, b.clone());
                prev = b;
            }
            // the y^k coefficient must cancel: a_{k,0} = -b_{k-1,0}
            if !(self.coeff(k, 0) + &prev).is_zero() {
                return Err(SeriesError::NotDivisible { degree: k });
            }
        }
        Ok(out)
    }

    /// `(1 + y)^e` truncated.
    pub fn one_plus_y_pow(order: u32, e: u64) -> Self {
        Self::from_terms(
            order,
            (0..=order.min(e as u32)).map(|i| (i, 0, Rational::from(binomial(e, i as i64)))),
        )
    }

    /// `(1 + z)^e` truncated.
    pub fn one_plus_z_pow(order: u32, e: u64) -> Self {
        Self::from_terms(
            order,
            (0..=order.min(e as u32)).map(|j| (0, j, Rational::from(binomial(e, j as i64)))),
        )
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        let mut first = true;
        for (&(i, j), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "*y^{i}")?;
            }
            if j > 0 {
                write!(f, "*z^{j}")?;
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

/// Primitive Hodge numbers `h_0^{p,q}` of the smooth degree-`d`
/// hypersurface of dimension `p + q`, as the coefficients of
///
/// ```text
///   sum_{i,j>=0} C(d-1, i+j+1) y^i z^j  /  (1 - sum_{i,j>=1} C(d, i+j) y^i z^j)
/// ```
///
/// truncated at total degree `order`. The denominator has constant term one,
/// so it inverts as a geometric series.
pub fn hodge_generating_series(d: u64, order: u32) -> BiSeries {
    if d == 0 {
        return BiSeries::zero(order);
    }
    let numerator = BiSeries::from_terms(
        order,
        (0..=order).flat_map(|i| {
            (0..=order - i)
                .map(move |j| (i, j, Rational::from(binomial(d - 1, (i + j + 1) as i64))))
        }),
    );
    let correction = BiSeries::from_terms(
        order,
        (1..=order).flat_map(|i| {
            (1..=order - i).map(move |j| (i, j, Rational::from(binomial(d, (i + j) as i64))))
        }),
    );
    let denominator = BiSeries::one(order).sub(&correction).expect("same order");
    let inverse = denominator
        .invert_unit()
        .expect("denominator has constant term 1");
    numerator.mul(&inverse).expect("same order")
}

/// Same expansion computed from the rational function
///
/// ```text
///   ((1+z)^{d-1} - (1+y)^{d-1}) / (z (1+y)^d - y (1+z)^d)
/// ```
///
/// after cancelling the common factor `(z - y)` from numerator and
/// denominator. Independent of [`hodge_generating_series`]; used to
/// cross-check it.
pub fn hodge_generating_series_ratio(d: u64, order: u32) -> BiSeries {
    if d == 0 {
        return BiSeries::zero(order);
    }
    let wide = order + 1;
    let numerator = BiSeries::one_plus_z_pow(wide, d - 1)
        .sub(&BiSeries::one_plus_y_pow(wide, d - 1))
        .expect("same order");
    let z = BiSeries::monomial(wide, 0, 1, Rational::one());
    let y = BiSeries::monomial(wide, 1, 0, Rational::one());
    let denominator = z
        .mul(&BiSeries::one_plus_y_pow(wide, d))
        .and_then(|a| {
            y.mul(&BiSeries::one_plus_z_pow(wide, d))
                .and_then(|b| a.sub(&b))
        })
        .expect("same order");
    let num_q = numerator
        .div_exact_z_minus_y()
        .expect("numerator vanishes on the diagonal");
    let den_q = denominator
        .div_exact_z_minus_y()
        .expect("denominator vanishes on the diagonal");
    num_q
        .mul(
            &den_q
                .invert_unit()
                .expect("reduced denominator has constant term 1"),
        )
        .expect("same order")
}

/// Converts a primitive Hodge number into the full Hodge number `h^{p,q}`
/// by adding back the hyperplane-class power on the diagonal.
pub fn primitive_to_hodge(p: u32, q: u32, c: &Rational) -> Result<i64, SeriesError> {
    let v = c
        .to_i64()
        .filter(|v| *v >= 0)
        .ok_or_else(|| SeriesError::NotANonNegativeInteger(c.to_string()))?;
    Ok(if p == q { v + 1 } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn poly(order: u32, terms: &[(u32, u32, i64)]) -> BiSeries {
        BiSeries::from_terms(order, terms.iter().map(|&(i, j, c)| (i, j, r(c))))
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn mul_examples() {
        let a = poly(2, &[(0, 0, 1), (1, 0, 1)]);
        let b = poly(2, &[(0, 0, 1), (0, 1, 1)]);
        assert_eq!(
            a.mul(&b).unwrap(),
            poly(2, &[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
        );
        assert_eq!(a.mul(&BiSeries::one(2)).unwrap(), a);
        let s = poly(2, &[(1, 0, 1), (0, 1, 1)]);
        let d = poly(2, &[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(s.mul(&d).unwrap(), poly(2, &[(2, 0, 1), (0, 2, -1)]));
    }

    #[test]
    fn mul_order_mismatch() {
        let err = BiSeries::one(2).mul(&BiSeries::one(3)).unwrap_err();
        assert!(matches!(
            err,
            SeriesError::OrderMismatch { left: 2, right: 3 }
        ));
    }

    #[test]
    fn invert_examples() {
        let a = poly(3, &[(0, 0, 1), (1, 0, -1)]);
        assert_eq!(
            a.invert_unit().unwrap(),
            poly(3, &[(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1)])
        );
        assert_eq!(
            BiSeries::constant(2, r(2)).invert_unit().unwrap(),
            BiSeries::constant(2, Rational::new(1, 2))
        );
        let b = poly(4, &[(0, 0, 1), (1, 1, -1)]);
        assert_eq!(
            b.invert_unit().unwrap(),
            poly(4, &[(0, 0, 1), (1, 1, 1), (2, 2, 1)])
        );
        assert!(matches!(
            poly(2, &[(1, 0, 1)]).invert_unit(),
            Err(SeriesError::ZeroConstantTerm)
        ));
    }

    #[test]
    fn division_by_z_minus_y() {
        let a = poly(2, &[(0, 2, 1), (2, 0, -1)]);
        assert_eq!(
            a.div_exact_z_minus_y().unwrap(),
            poly(1, &[(0, 1, 1), (1, 0, 1)])
        );
        let a = poly(1, &[(0, 1, 1), (1, 0, -1)]);
        assert_eq!(a.div_exact_z_minus_y().unwrap(), poly(0, &[(0, 0, 1)]));
        // (1+z)^3 - (1+y)^3 = 3(z-y) + 3(z^2-y^2) + (z^3-y^3)
        let a = BiSeries::one_plus_z_pow(3, 3)
            .sub(&BiSeries::one_plus_y_pow(3, 3))
            .unwrap();
        assert_eq!(
            a.div_exact_z_minus_y().unwrap(),
            poly(
                2,
                &[
                    (0, 0, 3),
                    (1, 0, 3),
                    (0, 1, 3),
                    (2, 0, 1),
                    (1, 1, 1),
                    (0, 2, 1)
                ]
            )
        );
    }

    #[test]
    fn division_rejects_non_multiples() {
        assert!(matches!(
            poly(2, &[(0, 2, 1)]).div_exact_z_minus_y(),
            Err(SeriesError::NotDivisible { degree: 2 })
        ));
        assert!(matches!(
            BiSeries::one(2).div_exact_z_minus_y(),
            Err(SeriesError::NotDivisible { degree: 0 })
        ));
    }

    #[test]
    fn generating_series_anchors() {
        let h4 = hodge_generating_series(4, 2);
        assert_eq!(h4.coeff(1, 1), r(19));
        assert_eq!(primitive_to_hodge(1, 1, &h4.coeff(1, 1)).unwrap(), 20);
        let h5 = hodge_generating_series(5, 3);
        assert_eq!(h5.coeff(1, 2), r(101));
        assert!(hodge_generating_series(1, 6).is_zero());
    }

    #[test]
    fn generating_series_frozen_sextic() {
        // reference values from an independent symbolic expansion
        let h6 = hodge_generating_series(6, 4);
        assert_eq!(h6.coeff(0, 4), r(1));
        assert_eq!(h6.coeff(1, 3), r(426));
        assert_eq!(h6.coeff(2, 2), r(1751));
        assert_eq!(h6.coeff(0, 2), r(10));
        assert_eq!(h6.coeff(1, 1), r(85));
        assert_eq!(h6.coeff(1, 2), r(255));
    }

    #[test]
    fn deligne_matches_ratio_form() {
        for d in 1..=10 {
            for order in 0..=10 {
                assert_eq!(
                    hodge_generating_series(d, order),
                    hodge_generating_series_ratio(d, order),
                    "d={d} order={order}"
                );
            }
        }
    }

    #[test]
    fn generating_series_coefficients_are_naturals() {
        for d in 1..=10 {
            for (_, _, c) in hodge_generating_series(d, 8).terms() {
                assert!(c.is_integer() && !c.is_negative());
            }
        }
    }

    #[test]
    fn primitive_to_hodge_examples() {
        assert_eq!(primitive_to_hodge(1, 1, &r(19)).unwrap(), 20);
        assert_eq!(primitive_to_hodge(0, 2, &r(4)).unwrap(), 4);
        assert_eq!(primitive_to_hodge(2, 2, &r(0)).unwrap(), 1);
        assert!(primitive_to_hodge(0, 1, &Rational::new(1, 2)).is_err());
        assert!(primitive_to_hodge(0, 1, &r(-1)).is_err());
    }

    fn arb_series(order: u32) -> impl Strategy<Value = BiSeries> {
        proptest::collection::vec((0..=order, 0..=order, -5i64..=5, 1i64..=3), 0..8).prop_map(
            move |terms| {
                BiSeries::from_terms(
                    order,
                    terms
                        .into_iter()
                        .map(|(i, j, n, d)| (i, j, Rational::new(n, d))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(4), b in arb_series(4), c in arb_series(4)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_is_inverse(a in arb_series(5), c0 in 1i64..5) {
            let unit = a.add(&BiSeries::constant(5, Rational::from(c0) - a.coeff(0, 0))).unwrap();
            let inv = unit.invert_unit().unwrap();
            prop_assert_eq!(unit.mul(&inv).unwrap(), BiSeries::one(5));
        }

        #[test]
        fn multiply_then_divide(b in arb_series(4)) {
            let zy = BiSeries::from_terms(5, [(0, 1, Rational::one()), (1, 0, -Rational::one())]);
            let b5 = BiSeries::from_terms(5, b.terms().map(|(i, j, c)| (i, j, c.clone())));
            let a = zy.mul(&b5).unwrap();
            prop_assert_eq!(a.div_exact_z_minus_y().unwrap(), b);
        }
    }
}
