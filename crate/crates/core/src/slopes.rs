//! Newton-polygon slope data of Frobenius on crystalline cohomology and the
//! slope numbers `m^{i,j}` built from it.
//!
//! A [`SlopeProfile`] is the multiset of slopes of one cohomology degree; a
//! [`CrystalProfile`] collects the profiles of all degrees `0..=2n` of an
//! `n`-dimensional variety. Profiles are validated, never repaired.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SlopeError;
use crate::matrix::IntMatrix;
use crate::rational::Rational;

/// Slopes of Frobenius on `H^degree`, as `(lambda, multiplicity)` pairs with
/// strictly increasing `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeProfile {
    pub degree: u32,
    #[serde(rename = "slopes")]
    pub entries: Vec<(Rational, i64)>,
}

/// How much of the Dieudonne structure to enforce while validating.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    #[default]
    Lenient,
    /// Additionally require that a slope `r/s` in lowest terms occurs with
    /// multiplicity divisible by `s`.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileViolation {
    SlopeOutOfRange { slope: Rational },
    NotStrictlyIncreasing { at: usize },
    NonPositiveMultiplicity { slope: Rational, mult: i64 },
    NotIsoclinic { slope: Rational, mult: i64 },
}

impl fmt::Display for ProfileViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileViolation::SlopeOutOfRange { .. } => write!(f, "slope out of range"),
            ProfileViolation::NotStrictlyIncreasing { .. } => {
                write!(f, "slopes not strictly increasing")
            }
            ProfileViolation::NonPositiveMultiplicity { .. } => {
                write!(f, "non-positive multiplicity")
            }
            ProfileViolation::NotIsoclinic { slope, mult } => write!(
                f,
                "multiplicity {mult} of slope {slope} not divisible by its denominator"
            ),
        }
    }
}

impl SlopeProfile {
    pub fn new(degree: u32, entries: Vec<(Rational, i64)>) -> Self {
        SlopeProfile { degree, entries }
    }

    /// Profile from integer-pair slopes `(num, den, mult)`.
    pub fn from_fractions(degree: u32, entries: &[(i64, i64, i64)]) -> Self {
        SlopeProfile {
            degree,
            entries: entries
                .iter()
                .map(|&(n, d, m)| (Rational::new(n, d), m))
                .collect(),
        }
    }

    pub fn empty(degree: u32) -> Self {
        SlopeProfile {
            degree,
            entries: Vec::new(),
        }
    }

    /// Single slope `lambda` with multiplicity `mult`.
    pub fn pure(degree: u32, lambda: Rational, mult: i64) -> Self {
        if mult == 0 {
            return Self::empty(degree);
        }
        SlopeProfile {
            degree,
            entries: vec![(lambda, mult)],
        }
    }

    /// The Betti number `b_degree`.
    pub fn betti(&self) -> i64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, lambda: &Rational) -> i64 {
        self.entries
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    pub fn min_slope(&self) -> Option<&Rational> {
        self.entries.first().map(|(l, _)| l)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every slope equals `lambda` (vacuously true when empty).
    pub fn is_pure(&self, lambda: &Rational) -> bool {
        self.entries.iter().all(|(l, _)| l == lambda)
    }

    /// True when every slope lies in the closed interval `[lo, hi]`.
    pub fn within(&self, lo: &Rational, hi: &Rational) -> bool {
        self.entries.iter().all(|(l, _)| l >= lo && l <= hi)
    }

    /// Same multiset after `lambda -> center - lambda`, re-sorted.
    fn reflected(&self, center: &Rational, degree: u32) -> SlopeProfile {
        let mut entries: Vec<_> = self.entries.iter().map(|(l, m)| (center - l, *m)).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        SlopeProfile { degree, entries }
    }

    /// True when the multiset is fixed by `lambda -> degree - lambda`.
    pub fn is_symmetric(&self) -> bool {
        self.reflected(&Rational::from(self.degree as i64), self.degree) == *self
    }
}

/// Range, ordering and multiplicity checks on one profile.
pub fn validate_profile(p: &SlopeProfile, strictness: Strictness) -> Vec<ProfileViolation> {
    let mut out = Vec::new();
    let top = Rational::from(p.degree as i64);
    for (idx, (lambda, mult)) in p.entries.iter().enumerate() {
        if lambda.is_negative() || *lambda > top {
            out.push(ProfileViolation::SlopeOutOfRange {
                slope: lambda.clone(),
            });
        }
        if idx > 0 && p.entries[idx - 1].0 >= *lambda {
            out.push(ProfileViolation::NotStrictlyIncreasing { at: idx });
        }
        if *mult <= 0 {
            out.push(ProfileViolation::NonPositiveMultiplicity {
                slope: lambda.clone(),
                mult: *mult,
            });
        } else if strictness == Strictness::Strict {
            let den = lambda.denom();
            if num_integer::Integer::mod_floor(&num_bigint::BigInt::from(*mult), den)
                != num_bigint::BigInt::from(0)
            {
                out.push(ProfileViolation::NotIsoclinic {
                    slope: lambda.clone(),
                    mult: *mult,
                });
            }
        }
    }
    out
}

fn ensure_valid(p: &SlopeProfile) -> Result<(), SlopeError> {
    let v = validate_profile(p, Strictness::Lenient);
    if v.is_empty() {
        Ok(())
    } else {
        Err(SlopeError::InvalidProfile {
            degree: p.degree,
            violations: v
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        })
    }
}

/// Poincare dual of a degree-`k` profile on an `n`-dimensional variety: the
/// degree `2n - k` profile with slopes `n - lambda`.
pub fn poincare_dual(p: &SlopeProfile, n: u32) -> Result<SlopeProfile, SlopeError> {
    if p.degree > 2 * n {
        return Err(SlopeError::DegreeTooLarge {
            degree: p.degree,
            dim: n,
        });
    }
    Ok(p.reflected(&Rational::from(n as i64), 2 * n - p.degree))
}

/// Contribution of one profile to the slope number `m^{i, degree - i}`:
///
/// ```text
///   sum_{lambda in [i-1, i)} (lambda - i + 1) m_lambda
/// + sum_{lambda in [i, i+1)} (i + 1 - lambda) m_lambda
/// ```
///
/// Both windows are half-open, so `lambda == i` lands in the second window
/// with weight one.
pub fn slope_number_part(p: &SlopeProfile, i: i64) -> Rational {
    let lo = Rational::from(i - 1);
    let mid = Rational::from(i);
    let hi = Rational::from(i + 1);
    let mut acc = Rational::zero();
    for (lambda, mult) in &p.entries {
        let m = Rational::from(*mult);
        if *lambda >= lo && *lambda < mid {
            acc += (lambda - &lo) * m;
        } else if *lambda >= mid && *lambda < hi {
            acc += (&hi - lambda) * m;
        }
    }
    acc
}

fn as_slope_number(value: Rational, i: usize, j: usize) -> Result<i64, SlopeError> {
    value
        .to_i64()
        .filter(|v| *v >= 0)
        .ok_or(SlopeError::NonIntegralSlopeNumber {
            i,
            j,
            value: value.to_string(),
        })
}

/// Slope number `m^{i, degree - i}` of a single profile, asserted integral.
pub fn slope_number(p: &SlopeProfile, i: u32) -> Result<i64, SlopeError> {
    ensure_valid(p)?;
    let j = p.degree.saturating_sub(i) as usize;
    as_slope_number(slope_number_part(p, i as i64), i as usize, j)
}

/// Slope data of every cohomology degree `0..=2 * dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalProfile {
    pub dim: u32,
    pub profiles: Vec<SlopeProfile>,
}

impl CrystalProfile {
    pub fn new(dim: u32, profiles: Vec<SlopeProfile>) -> Self {
        CrystalProfile { dim, profiles }
    }

    /// Builds a crystal from its lower half (`degree <= dim`), filling the
    /// upper half by Poincare duality.
    pub fn from_lower_half(dim: u32, lower: Vec<SlopeProfile>) -> Result<Self, SlopeError> {
        let mut profiles = lower;
        for k in (0..dim).rev() {
            let p = profiles
                .iter()
                .find(|p| p.degree == k)
                .ok_or(SlopeError::MissingDegree(k))?
                .clone();
            profiles.push(poincare_dual(&p, dim)?);
        }
        profiles.sort_by_key(|p| p.degree);
        Ok(CrystalProfile { dim, profiles })
    }

    pub fn profile(&self, degree: u32) -> Option<&SlopeProfile> {
        self.profiles.iter().find(|p| p.degree == degree)
    }
}

/// Structural checks on a whole crystal: every degree present once, each
/// profile valid, slopes of `H^k` inside `[max(0, k-n), min(k, n)]`,
/// Poincare duality between degrees `k` and `2n - k`, and connectedness
/// (`H^0` is `{(0,1)}`, `H^{2n}` is `{(n,1)}`).
pub fn validate_crystal(c: &CrystalProfile, strictness: Strictness) -> Vec<String> {
    let n = c.dim;
    let mut out = Vec::new();
    for k in 0..=2 * n {
        let count = c.profiles.iter().filter(|p| p.degree == k).count();
        if count != 1 {
            out.push(format!("degree {k} has {count} profiles, expected 1"));
        }
    }
    if let Some(p) = c.profiles.iter().find(|p| p.degree > 2 * n) {
        out.push(format!("degree {} exceeds 2n = {}", p.degree, 2 * n));
    }
    for p in &c.profiles {
        for v in validate_profile(p, strictness) {
            out.push(format!("H^{}: {v}", p.degree));
        }
        if p.degree <= 2 * n {
            let lo = Rational::from((p.degree as i64 - n as i64).max(0));
            let hi = Rational::from((p.degree as i64).min(n as i64));
            if !p.within(&lo, &hi) {
                out.push(format!("H^{}: slope outside [{lo}, {hi}]", p.degree));
            }
        }
    }
    for k in 0..n {
        if let (Some(lo), Some(hi)) = (c.profile(k), c.profile(2 * n - k)) {
            match poincare_dual(lo, n) {
                Ok(d) if d == *hi => {}
                _ => out.push(format!("H^{k} and H^{} are not Poincare dual", 2 * n - k)),
            }
        }
    }
    if let Some(p) = c.profile(0) {
        if *p != SlopeProfile::pure(0, Rational::zero(), 1) {
            out.push("H^0 is not {(0,1)}".to_string());
        }
    }
    if let Some(p) = c.profile(2 * n) {
        if *p != SlopeProfile::pure(2 * n, Rational::from(n as i64), 1) {
            out.push(format!("H^{} is not {{({n},1)}}", 2 * n));
        }
    }
    out
}

/// Slope numbers `m^{i,j}` for `0 <= i, j <= n`.
///
/// Fails if any profile is malformed or any `m^{i,j}` is not a non-negative
/// integer, which means the slope data cannot come from a variety.
pub fn slope_numbers(c: &CrystalProfile) -> Result<IntMatrix, SlopeError> {
    for p in &c.profiles {
        ensure_valid(p)?;
    }
    let size = c.dim as usize + 1;
    let mut m = IntMatrix::zeros(size);
    for i in 0..size {
        for j in 0..size {
            let Some(p) = c.profile((i + j) as u32) else {
                continue;
            };
            let v = slope_number_part(p, i as i64);
            m.set(i, j, as_slope_number(v, i, j)?);
        }
    }
    Ok(m)
}

/// `m^{i,j} = m^{j,i} = m^{n-i,n-j}` on the computed matrix.
pub fn check_slope_symmetries(c: &CrystalProfile) -> bool {
    let Ok(m) = slope_numbers(c) else {
        return false;
    };
    let n = c.dim as usize;
    let symmetric = m
        .entries()
        .all(|(i, j, v)| v == m.get(j, i) && v == m.get(n - i, n - j));
    symmetric
}

/// Betti number `b_k` read off the degree-`k` profile, cross-checked against
/// `sum_{i+j=k} m^{i,j}`.
pub fn betti_from_slopes(c: &CrystalProfile, k: u32) -> Result<i64, SlopeError> {
    let p = c.profile(k).ok_or(SlopeError::MissingDegree(k))?;
    let betti = p.betti();
    let sum = slope_numbers(c)?.antidiagonal_sum(k as usize);
    if sum != betti {
        return Err(SlopeError::BettiMismatch {
            degree: k,
            sum,
            betti,
        });
    }
    Ok(betti)
}

/// Length of `M / VM` for a Dieudonne module with slopes in `[0, 1)`:
/// `sum (1 - lambda) m_lambda`.
pub fn crew_vmod_length(p: &SlopeProfile) -> Result<Rational, SlopeError> {
    let one = Rational::one();
    if let Some((l, _)) = p.entries.iter().find(|(l, _)| l.is_negative() || *l >= one) {
        return Err(SlopeError::SlopeNotBelowOne(l.to_string()));
    }
    let len: Rational = p
        .entries
        .iter()
        .map(|(l, m)| (&one - l) * Rational::from(*m))
        .sum();
    if !len.is_integer() || len.is_negative() {
        return Err(SlopeError::NonIntegralLength(len.to_string()));
    }
    Ok(len)
}

/// Splits `m^{1,1}` of a self-dual `H^2` profile as
/// `m_1 + 2 * sum_{0 < lambda < 1} lambda m_lambda`.
///
/// Returns `(m_1, 2 * sum_{0 < lambda < 1} lambda m_lambda)`.
pub fn m11_decomposition(p: &SlopeProfile) -> Result<(i64, Rational), SlopeError> {
    if p.degree != 2 {
        return Err(SlopeError::WrongDegree(2));
    }
    ensure_valid(p)?;
    if !p.is_symmetric() {
        return Err(SlopeError::NotSelfDual(2));
    }
    let one = Rational::one();
    let m1 = p.multiplicity(&one);
    let sub: Rational = p
        .entries
        .iter()
        .filter(|(l, _)| !l.is_zero() && *l < one)
        .map(|(l, m)| l * &Rational::from(*m))
        .sum();
    Ok((m1, sub * Rational::from(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3_finite_height() -> SlopeProfile {
        SlopeProfile::from_fractions(2, &[(1, 2, 2), (1, 1, 18), (3, 2, 2)])
    }

    fn surface(h1: SlopeProfile, h2: SlopeProfile) -> CrystalProfile {
        CrystalProfile::from_lower_half(2, vec![SlopeProfile::pure(0, Rational::zero(), 1), h1, h2])
            .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_profile(&k3_finite_height(), Strictness::Lenient).is_empty());
        let v = validate_profile(
            &SlopeProfile::from_fractions(2, &[(5, 2, 1)]),
            Strictness::Lenient,
        );
        assert_eq!(
            v.iter().map(ToString::to_string).collect::<Vec<_>>(),
            vec!["slope out of range"]
        );
        let v = validate_profile(
            &SlopeProfile::from_fractions(1, &[(0, 1, 1), (0, 1, 1)]),
            Strictness::Lenient,
        );
        assert_eq!(
            v.iter().map(ToString::to_string).collect::<Vec<_>>(),
            vec!["slopes not strictly increasing"]
        );
        let v = validate_profile(
            &SlopeProfile::from_fractions(1, &[(1, 2, 0)]),
            Strictness::Lenient,
        );
        assert_eq!(v[0].to_string(), "non-positive multiplicity");
    }

    #[test]
    fn strict_mode_checks_isoclinic_multiplicity() {
        let p = SlopeProfile::from_fractions(2, &[(1, 3, 2), (1, 1, 1)]);
        assert!(validate_profile(&p, Strictness::Lenient).is_empty());
        let v = validate_profile(&p, Strictness::Strict);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], ProfileViolation::NotIsoclinic { .. }));
        assert!(validate_profile(&k3_finite_height(), Strictness::Strict).is_empty());
    }

    #[test]
    fn poincare_dual_examples() {
        assert_eq!(
            poincare_dual(&k3_finite_height(), 2).unwrap(),
            k3_finite_height()
        );
        assert_eq!(
            poincare_dual(&SlopeProfile::from_fractions(1, &[(0, 1, 2), (1, 1, 2)]), 2).unwrap(),
            SlopeProfile::from_fractions(3, &[(1, 1, 2), (2, 1, 2)])
        );
        let mid = SlopeProfile::from_fractions(3, &[(3, 2, 4)]);
        assert_eq!(poincare_dual(&mid, 3).unwrap(), mid);
        assert!(matches!(
            poincare_dual(&SlopeProfile::empty(5), 2),
            Err(SlopeError::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn slope_numbers_k3() {
        let c = surface(SlopeProfile::empty(1), k3_finite_height());
        assert!(validate_crystal(&c, Strictness::Strict).is_empty());
        let m = slope_numbers(&c).unwrap();
        assert_eq!(m.get(1, 1), 20);
        assert_eq!(m.get(0, 2), 1);
        assert_eq!(m.get(2, 0), 1);
        assert_eq!(m.get(0, 1), 0);
        assert!(check_slope_symmetries(&c));
        assert_eq!(betti_from_slopes(&c, 2).unwrap(), 22);
        assert_eq!(betti_from_slopes(&c, 0).unwrap(), 1);
    }

    #[test]
    fn slope_numbers_supersingular_k3() {
        let c = surface(
            SlopeProfile::empty(1),
            SlopeProfile::from_fractions(2, &[(1, 1, 22)]),
        );
        let m = slope_numbers(&c).unwrap();
        assert_eq!((m.get(0, 2), m.get(1, 1), m.get(2, 0)), (0, 22, 0));
        assert_eq!(betti_from_slopes(&c, 2).unwrap(), 22);
    }

    #[test]
    fn empty_degree_gives_zero() {
        let c = surface(SlopeProfile::empty(1), SlopeProfile::empty(2));
        let m = slope_numbers(&c).unwrap();
        assert_eq!(m.antidiagonal_sum(1), 0);
        assert_eq!(m.antidiagonal_sum(2), 0);
        assert!(check_slope_symmetries(&c));
    }

    #[test]
    fn asymmetric_h1_detected() {
        let c = surface(
            SlopeProfile::from_fractions(1, &[(0, 1, 2)]),
            SlopeProfile::empty(2),
        );
        let m = slope_numbers(&c).unwrap();
        assert_eq!((m.get(0, 1), m.get(1, 0)), (2, 0));
        assert!(!check_slope_symmetries(&c));
    }

    #[test]
    fn non_integral_slope_number_is_error() {
        let c = surface(
            SlopeProfile::empty(1),
            SlopeProfile::from_fractions(2, &[(1, 3, 1), (1, 1, 1), (5, 3, 1)]),
        );
        assert!(matches!(
            slope_numbers(&c),
            Err(SlopeError::NonIntegralSlopeNumber { .. })
        ));
        assert!(!check_slope_symmetries(&c));
    }

    #[test]
    fn crystal_validation_catches_duality_break() {
        let mut c = surface(
            SlopeProfile::from_fractions(1, &[(0, 1, 1), (1, 1, 1)]),
            k3_finite_height(),
        );
        assert!(validate_crystal(&c, Strictness::Lenient).is_empty());
        c.profiles[3] = SlopeProfile::from_fractions(3, &[(1, 1, 2)]);
        let v = validate_crystal(&c, Strictness::Lenient);
        assert!(v.iter().any(|s| s.contains("not Poincare dual")), "{v:?}");
    }

    #[test]
    fn crew_lengths() {
        assert_eq!(
            crew_vmod_length(&SlopeProfile::from_fractions(1, &[(0, 1, 3)])).unwrap(),
            Rational::from(3)
        );
        assert_eq!(
            crew_vmod_length(&SlopeProfile::from_fractions(2, &[(1, 2, 2)])).unwrap(),
            Rational::from(1)
        );
        assert_eq!(
            crew_vmod_length(&SlopeProfile::from_fractions(2, &[(1, 3, 3), (2, 3, 3)])).unwrap(),
            Rational::from(3)
        );
        assert!(matches!(
            crew_vmod_length(&SlopeProfile::from_fractions(2, &[(1, 1, 1)])),
            Err(SlopeError::SlopeNotBelowOne(_))
        ));
        assert!(matches!(
            crew_vmod_length(&SlopeProfile::from_fractions(2, &[(1, 2, 1)])),
            Err(SlopeError::NonIntegralLength(_))
        ));
    }

    #[test]
    fn m11_decomposition_examples() {
        assert_eq!(
            m11_decomposition(&k3_finite_height()).unwrap(),
            (18, Rational::from(2))
        );
        assert_eq!(
            m11_decomposition(&SlopeProfile::from_fractions(2, &[(1, 1, 22)])).unwrap(),
            (22, Rational::zero())
        );
        let p = SlopeProfile::from_fractions(2, &[(0, 1, 1), (1, 1, 2), (2, 1, 1)]);
        assert_eq!(m11_decomposition(&p).unwrap(), (2, Rational::zero()));
        assert_eq!(slope_number(&p, 1).unwrap(), 2);
        assert!(matches!(
            m11_decomposition(&SlopeProfile::from_fractions(2, &[(1, 2, 2), (1, 1, 1)])),
            Err(SlopeError::NotSelfDual(2))
        ));
    }

    #[test]
    fn profile_json_schema() {
        let json = r#"{"degree": 2, "slopes": [["1/2", 2], ["1", 18], ["3/2", 2]]}"#;
        let p: SlopeProfile = serde_json::from_str(json).unwrap();
        assert_eq!(p, k3_finite_height());
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"degree":2,"slopes":[["1/2",2],["1",18],["3/2",2]]}"#
        );
    }

    /// Random self-dual `H^2` profile with isoclinic multiplicities and
    /// Betti number at most ~40.
    fn arb_self_dual_h2() -> impl Strategy<Value = SlopeProfile> {
        (
            proptest::collection::btree_map((1i64..=6, 1i64..=6), 1i64..=3, 0..3),
            0i64..6,
            0i64..3,
        )
            .prop_map(|(halves, m1, m0)| {
                let mut entries: Vec<(Rational, i64)> = Vec::new();
                for ((a, b), k) in halves {
                    let lambda = Rational::new(a.min(b), a.max(b) + 1); // in (0, 1)
                    let mult = k * lambda.denom().to_string().parse::<i64>().unwrap();
                    entries.push((lambda, mult));
                }
                entries.sort_by(|x, y| x.0.cmp(&y.0));
                entries.dedup_by(|x, y| x.0 == y.0);
                let mut all = Vec::new();
                if m0 > 0 {
                    all.push((Rational::zero(), m0));
                }
                all.extend(entries.iter().cloned());
                if m1 > 0 {
                    all.push((Rational::one(), m1));
                }
                all.extend(
                    entries
                        .iter()
                        .rev()
                        .map(|(l, m)| (Rational::from(2) - l, *m)),
                );
                if m0 > 0 {
                    all.push((Rational::from(2), m0));
                }
                SlopeProfile::new(2, all)
            })
    }

    proptest! {
        #[test]
        fn dual_is_involution(p in arb_self_dual_h2(), n in 2u32..4) {
            let q = poincare_dual(&p, n).unwrap();
            prop_assert_eq!(poincare_dual(&q, n).unwrap(), p);
        }

        #[test]
        fn m11_split_matches_slope_number(p in arb_self_dual_h2()) {
            let (m1, twice) = m11_decomposition(&p).unwrap();
            let c = surface(SlopeProfile::empty(1), p);
            let m = slope_numbers(&c).unwrap();
            prop_assert_eq!(Rational::from(m1) + twice, Rational::from(m.get(1, 1)));
            prop_assert!(check_slope_symmetries(&c));
            prop_assert!(m.entries().all(|(_, _, v)| v >= 0));
        }

        #[test]
        fn ordinary_length(m in 0i64..50) {
            let p = SlopeProfile::pure(1, Rational::zero(), m);
            prop_assert_eq!(crew_vmod_length(&p).unwrap(), Rational::from(m));
        }
    }
}
