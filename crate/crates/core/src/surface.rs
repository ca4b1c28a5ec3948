//! Numerical invariants of smooth projective surfaces in characteristic `p`:
//! Noether-type consistency, the Hodge-Witt numbers `h^{0,1}_W`,
//! `h^{0,2}_W`, `h^{1,1}_W`, and the Chern-number inequalities that
//! `h^{1,1}_W`, `m^{1,1}` and `T^{0,2}` control.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SurfaceError;
use crate::rational::Rational;
use crate::slopes::{slope_number, validate_profile, SlopeProfile, Strictness};

/// Named predicates; `None` means the record lacks the data to decide.
pub type Predicates = BTreeMap<String, Option<bool>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kodaira {
    NegInfinity,
    Zero,
    One,
    Two,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kodaira::NegInfinity => "-inf",
            Kodaira::Zero => "0",
            Kodaira::One => "1",
            Kodaira::Two => "2",
        })
    }
}

impl std::str::FromStr for Kodaira {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "-inf" | "-infinity" | "-oo" => Ok(Kodaira::NegInfinity),
            "0" => Ok(Kodaira::Zero),
            "1" => Ok(Kodaira::One),
            "2" => Ok(Kodaira::Two),
            other => Err(format!("unknown Kodaira dimension {other:?}")),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Kodaira::NegInfinity => serializer.serialize_str("-inf"),
            Kodaira::Zero => serializer.serialize_i64(0),
            Kodaira::One => serializer.serialize_i64(1),
            Kodaira::Two => serializer.serialize_i64(2),
        }
    }
}

impl<'de> Deserialize<'de> for Kodaira {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => n.to_string().parse(),
            Repr::Str(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SurfaceFlags {
    pub minimal: bool,
    pub hodge_witt: bool,
    pub ordinary: bool,
    pub mazur_ogus: bool,
    pub pic_reduced: bool,
    pub h2cris_torsion_free: bool,
    pub supersingular: bool,
    pub quasi_elliptic: bool,
}

/// Classical numerical invariants of a surface plus hypothesis flags.
///
/// `c1sq` is `K_X^2`, `c2` the etale Euler characteristic, `chi` is
/// `chi(O_X)`. Non-negative quantities are stored signed so that bad input
/// can be reported rather than rejected at parse time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub p: u64,
    pub c1sq: i64,
    pub c2: i64,
    pub b1: i64,
    pub b2: i64,
    pub q: i64,
    pub h01: i64,
    pub pg: i64,
    #[serde(default)]
    pub h11: Option<i64>,
    pub chi: i64,
    pub kodaira: Kodaira,
    #[serde(default)]
    pub flags: SurfaceFlags,
    #[serde(default)]
    pub h2_slopes: Option<SlopeProfile>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl SurfaceInvariants {
    /// `b_1 + (5 c_2 - c_1^2) / 6`.
    pub fn hw11_ekedahl(&self) -> Rational {
        Rational::from(self.b1) + Rational::new(5 * self.c2 - self.c1sq, 6)
    }

    /// `10 chi(O_X) - c_1^2 + b_1`.
    pub fn hw11_noether(&self) -> i64 {
        10 * self.chi - self.c1sq + self.b1
    }

    /// `h^{1,1}_W`, from the Chern numbers.
    pub fn hw11(&self) -> Result<i64, SurfaceError> {
        let e = self.hw11_ekedahl();
        e.to_i64().ok_or_else(|| {
            SurfaceError::Integrality(format!(
                "h^{{1,1}}_W = {e} is not an integer (5c2 - c1^2 = {} not divisible by 6)",
                5 * self.c2 - self.c1sq
            ))
        })
    }

    /// `m^{1,1}` from the `H^2` slopes, if present.
    pub fn m11(&self) -> Result<Option<i64>, SurfaceError> {
        match &self.h2_slopes {
            None => Ok(None),
            Some(p) => Ok(Some(slope_number(p, 1)?)),
        }
    }

    /// `T^{0,2} = (m^{1,1} - h^{1,1}_W) / 2`, if slopes are present.
    pub fn t02(&self) -> Result<Option<i64>, SurfaceError> {
        let Some(m11) = self.m11()? else {
            return Ok(None);
        };
        let diff = m11 - self.hw11()?;
        if diff < 0 || diff % 2 != 0 {
            return Err(SurfaceError::BadDomino(Rational::new(diff, 2).to_string()));
        }
        Ok(Some(diff / 2))
    }
}

/// All consistency violations of a record; empty when it is valid.
pub fn validate_surface(s: &SurfaceInvariants) -> Vec<String> {
    validate_surface_with(s, Strictness::Lenient)
}

/// As [`validate_surface`], with the given slope-profile strictness.
pub fn validate_surface_with(s: &SurfaceInvariants, strictness: Strictness) -> Vec<String> {
    let mut out = Vec::new();
    if !is_prime(s.p) {
        out.push(format!("characteristic {} is not prime", s.p));
    }
    for (name, v) in [
        ("b1", s.b1),
        ("b2", s.b2),
        ("q", s.q),
        ("h01", s.h01),
        ("pg", s.pg),
    ] {
        if v < 0 {
            out.push(format!("{name} = {v} is negative"));
        }
    }
    if let Some(h11) = s.h11 {
        if h11 < 0 {
            out.push(format!("h11 = {h11} is negative"));
        }
    }
    if 12 * s.chi != s.c1sq + s.c2 {
        out.push(format!(
            "Noether fails: 12chi = {} but c1^2 + c2 = {}",
            12 * s.chi,
            s.c1sq + s.c2
        ));
    }
    let lhs = 10 + 12 * s.pg;
    let rhs = s.c1sq + s.b2 + 8 * s.q + 12 * (s.h01 - s.q);
    if lhs != rhs {
        out.push(format!(
            "Noether (Betti form) fails: 10 + 12pg = {lhs} but c1^2 + b2 + 8q + 12(h01 - q) = {rhs}"
        ));
    }
    if s.b1 != 2 * s.q {
        out.push(format!("b1 = {} but 2q = {}", s.b1, 2 * s.q));
    }
    if s.h01 - s.q < 0 || s.h01 - s.q > s.pg {
        out.push(format!(
            "Bombieri bound 0 <= h01 - q <= pg fails (h01 - q = {}, pg = {})",
            s.h01 - s.q,
            s.pg
        ));
    }
    if s.chi != 1 - s.h01 + s.pg {
        out.push(format!(
            "chi = {} but 1 - h01 + pg = {}",
            s.chi,
            1 - s.h01 + s.pg
        ));
    }
    if (5 * s.c2 - s.c1sq + 6 * s.b1) % 6 != 0 {
        out.push(format!(
            "5c2 - c1^2 + 6b1 = {} is not divisible by 6",
            5 * s.c2 - s.c1sq + 6 * s.b1
        ));
    }
    let f = &s.flags;
    if f.ordinary && !f.hodge_witt {
        out.push("ordinary but not flagged Hodge-Witt".to_string());
    }
    if f.mazur_ogus && !(f.pic_reduced && f.h2cris_torsion_free) {
        out.push("Mazur-Ogus requires reduced Pic and torsion-free H^2_cris".to_string());
    }
    if f.quasi_elliptic && !(s.p == 2 || s.p == 3) {
        out.push(format!(
            "quasi-elliptic fibrations only exist for p in {{2, 3}}, not p = {}",
            s.p
        ));
    }
    if let Some(prof) = &s.h2_slopes {
        if prof.degree != 2 {
            out.push(format!("h2_slopes has degree {}, expected 2", prof.degree));
        }
        if prof.betti() != s.b2 {
            out.push(format!(
                "h2_slopes has total multiplicity {} but b2 = {}",
                prof.betti(),
                s.b2
            ));
        }
        for v in validate_profile(prof, strictness) {
            out.push(format!("h2_slopes: {v}"));
        }
    }
    out
}

/// Hodge-Witt numbers of a surface and the predicates derived from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub hw01: i64,
    pub hw02: i64,
    pub hw11: i64,
    pub m11: Option<i64>,
    pub t02: Option<i64>,
    pub predicates: Predicates,
    pub diagnostics: Vec<String>,
}

pub fn hw_numbers_surface(s: &SurfaceInvariants) -> Result<SurfaceReport, SurfaceError> {
    if s.b1 % 2 != 0 {
        return Err(SurfaceError::Integrality(format!("b1 = {} is odd", s.b1)));
    }
    let ekedahl = s.hw11_ekedahl();
    let noether = s.hw11_noether();
    if ekedahl != Rational::from(noether) {
        return Err(SurfaceError::FormulaDisagreement {
            ekedahl: ekedahl.to_string(),
            noether: noether.to_string(),
        });
    }
    let hw11 = s.hw11()?;
    let m11 = s.m11()?;
    let t02 = s.t02()?;
    let predicates = chern_predicates(s)?;
    let diag = diagnose_negativity(s);
    let mut diagnostics = vec![diag.to_string()];
    if let Some(c) = diag.contradiction {
        diagnostics.push(c);
    }
    Ok(SurfaceReport {
        hw01: s.b1 / 2,
        hw02: s.chi - 1 + s.b1 / 2,
        hw11,
        m11,
        t02,
        predicates,
        diagnostics,
    })
}

/// Chern-number inequalities and their Hodge-Witt reformulations:
///
/// * `c1^2 <= 5c2` iff `hW11 >= b1` iff `2T02 + b1 <= m11`
/// * `c1^2 <= 5c2 + 6b1` iff `hW11 >= 0`
///
/// plus the Mazur-Ogus (`h11 >= b1`) and Hodge-Witt (`m11 >= 2m01`)
/// variants when the record carries the needed flags and data. The
/// equivalences are arithmetic identities; a failure means the record is
/// internally inconsistent.
pub fn chern_predicates(s: &SurfaceInvariants) -> Result<Predicates, SurfaceError> {
    let hw11 = s.hw11()?;
    let mut out = Predicates::new();
    let a1 = s.c1sq <= 5 * s.c2;
    let a2 = hw11 >= s.b1;
    let b1 = s.c1sq <= 5 * s.c2 + 6 * s.b1;
    let b2 = hw11 >= 0;
    out.insert("c1sq<=5c2".into(), Some(a1));
    out.insert("hW11>=b1".into(), Some(a2));
    out.insert("c1sq<=5c2+6b1".into(), Some(b1));
    out.insert("hW11>=0".into(), Some(b2));
    if a1 != a2 {
        return Err(SurfaceError::EquivalenceViolated(
            "c1^2 <= 5c2 vs hW11 >= b1".into(),
        ));
    }
    if b1 != b2 {
        return Err(SurfaceError::EquivalenceViolated(
            "c1^2 <= 5c2 + 6b1 vs hW11 >= 0".into(),
        ));
    }

    let slope_data = match (s.m11()?, s.t02()?) {
        (Some(m11), Some(t02)) => Some((m11, t02)),
        _ => None,
    };
    let a3 = slope_data.map(|(m11, t02)| 2 * t02 + s.b1 <= m11);
    out.insert("2T02+b1<=m11".into(), a3);
    if a3.is_some_and(|a3| a3 != a1) {
        return Err(SurfaceError::EquivalenceViolated(
            "c1^2 <= 5c2 vs 2T02 + b1 <= m11".into(),
        ));
    }

    let mo = match s.h11 {
        Some(h11) if s.flags.mazur_ogus => {
            if h11 != hw11 {
                return Err(SurfaceError::Inconsistent(format!(
                    "Mazur-Ogus surface with h11 = {h11} != hW11 = {hw11}"
                )));
            }
            Some(h11 >= s.b1)
        }
        _ => None,
    };
    out.insert("h11>=b1".into(), mo);

    let hw = match slope_data {
        Some((m11, t02)) if s.flags.hodge_witt => {
            if t02 != 0 {
                return Err(SurfaceError::Inconsistent(format!(
                    "Hodge-Witt surface with T02 = {t02}"
                )));
            }
            // m01 = m10 and m01 + m10 = b1
            Some(m11 >= s.b1)
        }
        _ => None,
    };
    out.insert("m11>=2m01".into(), hw);
    Ok(out)
}

/// Blows up `k >= 1` points: `c1^2 - k`, `c2 + k`, `b2 + k`, `h11 + k`, and
/// `k` extra classes of slope one in `H^2`; everything else is unchanged.
pub fn blowup_transform(s: &SurfaceInvariants, k: i64) -> Result<SurfaceInvariants, SurfaceError> {
    if k < 1 {
        return Err(SurfaceError::Precondition(format!(
            "number of blown-up points must be >= 1, got {k}"
        )));
    }
    let mut out = s.clone();
    out.c1sq -= k;
    out.c2 += k;
    out.b2 += k;
    out.h11 = s.h11.map(|h| h + k);
    out.flags.minimal = false;
    if let Some(prof) = &mut out.h2_slopes {
        let one = Rational::one();
        match prof.entries.iter_mut().find(|(l, _)| *l == one) {
            Some(entry) => entry.1 += k,
            None => {
                prof.entries.push((one, k));
                prof.entries.sort_by(|a, b| a.0.cmp(&b.0));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NegativityVerdict {
    NoConstraint,
    GeneralTypeForced,
    GeneralTypeOrQuasiElliptic,
}

impl fmt::Display for NegativityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NegativityVerdict::NoConstraint => "no constraint",
            NegativityVerdict::GeneralTypeForced => "general type (kappa=2) forced",
            NegativityVerdict::GeneralTypeOrQuasiElliptic => {
                "general type or quasi-elliptic (kappa=1) forced"
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativityDiagnosis {
    pub hw11: Rational,
    pub verdict: NegativityVerdict,
    pub notes: Vec<String>,
    pub contradiction: Option<String>,
}

impl fmt::Display for NegativityDiagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        Ok(())
    }
}

/// What a negative `h^{1,1}_W` forces on the surface, and whether the
/// record's Kodaira dimension label agrees.
pub fn diagnose_negativity(s: &SurfaceInvariants) -> NegativityDiagnosis {
    let hw11 = s.hw11_ekedahl();
    if !hw11.is_negative() {
        return NegativityDiagnosis {
            hw11,
            verdict: NegativityVerdict::NoConstraint,
            notes: Vec::new(),
            contradiction: None,
        };
    }
    let mut notes = vec!["not Hodge-Witt; T^{0,2} >= 1".to_string()];
    let (verdict, contradiction) = if s.p >= 5 {
        let c = (s.kodaira != Kodaira::Two).then(|| {
            format!(
                "contradiction: hW11 < 0 with p = {} forces kappa = 2, record says kappa = {}",
                s.p, s.kodaira
            )
        });
        (NegativityVerdict::GeneralTypeForced, c)
    } else {
        let c = match s.kodaira {
            Kodaira::NegInfinity | Kodaira::Zero => Some(format!(
                "contradiction: hW11 < 0 with p = {} forces kappa in {{1, 2}}, record says kappa = {}",
                s.p, s.kodaira
            )),
            Kodaira::One if !s.flags.quasi_elliptic => {
                notes.push("kappa = 1 requires a quasi-elliptic fibration".to_string());
                None
            }
            _ => None,
        };
        (NegativityVerdict::GeneralTypeOrQuasiElliptic, c)
    };
    if s.b1 != 0 && hw11 >= Rational::new(-s.c1sq, 6) {
        notes.push(
            "conjectural: Albanese image one-dimensional (not checkable numerically)".to_string(),
        );
    }
    NegativityDiagnosis {
        hw11,
        verdict,
        notes,
        contradiction,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaynaudReport {
    pub checks: Predicates,
    pub notes: Vec<String>,
}

/// Lower bounds on `h^{1,1}_W` for surfaces of general type:
/// `hW11 >= -c1^2` (outside a small-`p` fibred exception), `hW11 > -c1^2/6`
/// when `c2 > 0`, and `hW11 <= h11`.
pub fn raynaud_bounds(s: &SurfaceInvariants) -> Result<RaynaudReport, SurfaceError> {
    if s.kodaira != Kodaira::Two {
        return Err(SurfaceError::Precondition(
            "lower bounds on hW11 need a surface of general type".into(),
        ));
    }
    let hw11 = s.hw11_ekedahl();
    let mut checks = Predicates::new();
    let mut notes = Vec::new();

    let case1 = hw11 >= Rational::from(-s.c1sq);
    checks.insert("hW11>=-c1sq".into(), Some(case1));
    if !case1 {
        if s.p <= 7 {
            notes.push(
                "p <= 7 exceptional fibration case required: fibred over a curve of genus >= 2 \
                 with singular rational generic fibre of arithmetic genus <= 4"
                    .to_string(),
            );
        } else {
            notes.push(format!(
                "hW11 < -c1^2 is impossible for p = {} > 7: inconsistent invariants",
                s.p
            ));
        }
    }

    let sixth = Rational::new(-s.c1sq, 6);
    let case2 = (s.c2 > 0).then(|| hw11 > sixth);
    checks.insert("hW11>-c1sq/6".into(), case2);
    if case2 == Some(false) {
        notes.push("hW11 <= -c1^2/6 with c2 > 0: inconsistent invariants".to_string());
    }
    if hw11 < sixth {
        notes.push("hW11 < -c1^2/6: X fibres over a curve of genus >= 1".to_string());
    }

    let upper = s.h11.map(|h11| hw11 <= Rational::from(h11));
    checks.insert("hW11<=h11".into(), upper);
    if upper == Some(false) {
        notes.push("hW11 > h11 violates Ekedahl's bound: inconsistent invariants".to_string());
    }
    Ok(RaynaudReport { checks, notes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub hypotheses_met: bool,
    pub conclusion_holds: bool,
}

/// Evaluates the three hypothesis sets known to force `c1^2 <= 5c2` on a
/// minimal surface of general type with `H^2` slope data, and checks the
/// conclusion on the record for each set that is met.
pub fn sufficient_conditions_5c2(
    s: &SurfaceInvariants,
) -> Result<Vec<HypothesisCheck>, SurfaceError> {
    if s.kodaira != Kodaira::Two || !s.flags.minimal {
        return Err(SurfaceError::Precondition(
            "needs a minimal surface of general type".into(),
        ));
    }
    let prof = s
        .h2_slopes
        .as_ref()
        .ok_or_else(|| SurfaceError::Precondition("needs H^2 slope data".into()))?;
    let m11 = slope_number(prof, 1)?;
    let f = &s.flags;
    let half = Rational::new(1, 2);
    let min_slope_ok = prof.min_slope().is_none_or(|l| *l >= half);
    let sets = [
        (
            "hodge_witt & c2>0 & m11>=2pg",
            f.hodge_witt && s.c2 > 0 && m11 >= 2 * s.pg,
        ),
        (
            "mazur_ogus & c2>0 & m11>=4pg",
            f.mazur_ogus && s.c2 > 0 && m11 >= 4 * s.pg,
        ),
        (
            "c2>0 & pg>0 & hodge_witt & (pic_reduced | h2cris_torsion_free) & slopes>=1/2",
            s.c2 > 0
                && s.pg > 0
                && f.hodge_witt
                && (f.pic_reduced || f.h2cris_torsion_free)
                && min_slope_ok,
        ),
    ];
    let conclusion = s.c1sq <= 5 * s.c2;
    let mut out = Vec::new();
    for (name, met) in sets {
        if met && !conclusion {
            return Err(SurfaceError::Inconsistent(format!(
                "hypotheses [{name}] hold but c1^2 = {} > 5c2 = {}",
                s.c1sq,
                5 * s.c2
            )));
        }
        out.push(HypothesisCheck {
            name: name.to_string(),
            hypotheses_met: met,
            conclusion_holds: conclusion,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dichotomy {
    /// `c1^2 <= 5c2`.
    InequalityHolds,
    /// `c2 < 2chi`: no smooth deformation lifts to characteristic zero.
    NonliftableRegime,
}

/// For supersingular Mazur-Ogus minimal surfaces of general type with
/// `pg > 0` and `c2 > 0`: either `c1^2 <= 5c2` or `c2 < 2chi(O_X)`.
pub fn supersingular_dichotomy(s: &SurfaceInvariants) -> Result<Dichotomy, SurfaceError> {
    let f = &s.flags;
    let mut missing = Vec::new();
    if !f.minimal {
        missing.push("minimal");
    }
    if s.kodaira != Kodaira::Two {
        missing.push("general type");
    }
    if s.pg <= 0 {
        missing.push("pg > 0");
    }
    if s.c2 <= 0 {
        missing.push("c2 > 0");
    }
    if !f.mazur_ogus {
        missing.push("Mazur-Ogus");
    }
    if !f.supersingular {
        missing.push("supersingular");
    }
    if !missing.is_empty() {
        return Err(SurfaceError::Precondition(format!(
            "missing hypotheses: {}",
            missing.join(", ")
        )));
    }
    if s.c1sq <= 5 * s.c2 {
        Ok(Dichotomy::InequalityHolds)
    } else if s.c2 < 2 * s.chi {
        Ok(Dichotomy::NonliftableRegime)
    } else {
        Err(SurfaceError::Inconsistent(format!(
            "c1^2 = {} > 5c2 = {} and c2 = {} >= 2chi = {}",
            s.c1sq,
            5 * s.c2,
            s.c2,
            2 * s.chi
        )))
    }
}

pub const ORDINARY_CONJECTURE_LABEL: &str =
    "CONDITIONAL: assumes injectivity of the cup product H^1(W O_X) x H^0(W Omega^1) -> H^1(W Omega^1) for ordinary surfaces";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionalChecks {
    pub label: &'static str,
    pub checks: Predicates,
}

/// Consequences of the ordinary cup-product conjecture for minimal ordinary
/// surfaces of general type: `c1^2 <= 5c2 + 6`, and `c1^2 <= 6c2` once
/// `c2 >= 6`. Only meaningful under that conjecture.
pub fn ordinary_conjecture_consequences(
    s: &SurfaceInvariants,
) -> Result<ConditionalChecks, SurfaceError> {
    if !s.flags.ordinary || !s.flags.minimal || s.kodaira != Kodaira::Two {
        return Err(SurfaceError::Precondition(
            "needs an ordinary minimal surface of general type".into(),
        ));
    }
    let mut checks = Predicates::new();
    checks.insert("c1sq<=5c2+6".into(), Some(s.c1sq <= 5 * s.c2 + 6));
    checks.insert(
        "c1sq<=6c2".into(),
        (s.c2 >= 6).then_some(s.c1sq <= 6 * s.c2),
    );
    Ok(ConditionalChecks {
        label: ORDINARY_CONJECTURE_LABEL,
        checks,
    })
}

/// Frobenius-iterated fibrations `S_n -> C` with fibre genus `g`, base genus
/// `q`, and `d = deg f_* Omega^1_{S/C}`. `b1` is supplied by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzpiroFamily {
    pub g: i64,
    pub q: i64,
    pub d: i64,
    pub p: u64,
    pub b1: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzpiroMember {
    pub n: u32,
    pub c1sq: i64,
    pub c2: i64,
    pub b1: i64,
    pub hw11: i64,
}

impl SzpiroFamily {
    fn check(&self) -> Result<(), SurfaceError> {
        if self.g < 2 || self.q < 2 {
            return Err(SurfaceError::Precondition(format!(
                "genera must be >= 2 (g = {}, q = {})",
                self.g, self.q
            )));
        }
        if self.d < 1 {
            return Err(SurfaceError::Precondition(format!(
                "d = {} must be >= 1",
                self.d
            )));
        }
        if !is_prime(self.p) {
            return Err(SurfaceError::Precondition(format!(
                "p = {} is not prime",
                self.p
            )));
        }
        if self.b1 < 0 || self.b1 % 2 != 0 {
            return Err(SurfaceError::Precondition(format!(
                "b1 = {} must be even and non-negative",
                self.b1
            )));
        }
        Ok(())
    }

    /// `c2 = 4(g-1)(q-1)`.
    pub fn c2(&self) -> i64 {
        4 * (self.g - 1) * (self.q - 1)
    }

    /// `c1^2(S_n) = p^n d + 8(g-1)(q-1)`.
    pub fn c1sq(&self, n: u32) -> Result<i64, SurfaceError> {
        let overflow = || SurfaceError::Overflow(format!("p^n d for p = {}, n = {n}", self.p));
        let pn = i64::try_from(self.p)
            .ok()
            .and_then(|p| p.checked_pow(n))
            .ok_or_else(overflow)?;
        pn.checked_mul(self.d)
            .and_then(|v| v.checked_add(8 * (self.g - 1) * (self.q - 1)))
            .ok_or_else(overflow)
    }

    pub fn member(&self, n: u32) -> Result<SzpiroMember, SurfaceError> {
        self.check()?;
        let c2 = self.c2();
        let c1sq = self.c1sq(n)?;
        let num = 5 * c2 - c1sq + 6 * self.b1;
        if num % 6 != 0 {
            return Err(SurfaceError::Integrality(format!(
                "5c2 - c1^2 + 6b1 = {num} not divisible by 6 at n = {n}: \
                 p^n d = {} must be divisible by 6",
                c1sq - 8 * (self.g - 1) * (self.q - 1)
            )));
        }
        Ok(SzpiroMember {
            n,
            c1sq,
            c2,
            b1: self.b1,
            hw11: num / 6,
        })
    }

    /// Least `n >= 0` with `c1^2(S_n) > p^m c2`.
    pub fn least_n_exceeding(&self, m: u32) -> Result<u32, SurfaceError> {
        self.check()?;
        let bound = i64::try_from(self.p)
            .ok()
            .and_then(|p| p.checked_pow(m))
            .and_then(|pm| pm.checked_mul(self.c2()))
            .ok_or_else(|| SurfaceError::Overflow(format!("p^m c2 for m = {m}")))?;
        let mut n = 0;
        loop {
            if self.c1sq(n)? > bound {
                return Ok(n);
            }
            n += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p2() -> SurfaceInvariants {
        SurfaceInvariants {
            p: 5,
            c1sq: 9,
            c2: 3,
            b1: 0,
            b2: 1,
            q: 0,
            h01: 0,
            pg: 0,
            h11: Some(1),
            chi: 1,
            kodaira: Kodaira::NegInfinity,
            flags: SurfaceFlags {
                minimal: true,
                ..Default::default()
            },
            h2_slopes: None,
        }
    }

    fn k3() -> SurfaceInvariants {
        SurfaceInvariants {
            p: 5,
            c1sq: 0,
            c2: 24,
            b1: 0,
            b2: 22,
            q: 0,
            h01: 0,
            pg: 1,
            h11: Some(20),
            chi: 2,
            kodaira: Kodaira::Zero,
            flags: SurfaceFlags {
                minimal: true,
                ..Default::default()
            },
            h2_slopes: None,
        }
    }

    fn quintic() -> SurfaceInvariants {
        SurfaceInvariants {
            p: 7,
            c1sq: 5,
            c2: 55,
            b1: 0,
            b2: 53,
            q: 0,
            h01: 0,
            pg: 4,
            h11: Some(45),
            chi: 5,
            kodaira: Kodaira::Two,
            flags: SurfaceFlags {
                minimal: true,
                mazur_ogus: true,
                pic_reduced: true,
                h2cris_torsion_free: true,
                ..Default::default()
            },
            h2_slopes: Some(SlopeProfile::from_fractions(
                2,
                &[(0, 1, 4), (1, 1, 45), (2, 1, 4)],
            )),
        }
    }

    /// Genus-2 ordinary curve times genus-2 supersingular curve.
    fn curve_product() -> SurfaceInvariants {
        SurfaceInvariants {
            p: 3,
            c1sq: 8,
            c2: 4,
            b1: 8,
            b2: 18,
            q: 4,
            h01: 4,
            pg: 4,
            h11: None,
            chi: 1,
            kodaira: Kodaira::Two,
            flags: SurfaceFlags {
                minimal: true,
                hodge_witt: true,
                pic_reduced: true,
                ..Default::default()
            },
            h2_slopes: Some(SlopeProfile::from_fractions(
                2,
                &[(1, 2, 8), (1, 1, 2), (3, 2, 8)],
            )),
        }
    }

    #[test]
    fn validate_examples() {
        assert!(validate_surface(&p2()).is_empty());
        assert!(validate_surface(&k3()).is_empty());
        assert!(validate_surface(&quintic()).is_empty());
        assert!(validate_surface(&curve_product()).is_empty());
        let mut bad = p2();
        bad.c2 = 4;
        let v = validate_surface(&bad);
        assert!(v[0].starts_with("Noether fails"), "{v:?}");
    }

    #[test]
    fn validate_flags() {
        let mut s = k3();
        s.flags.ordinary = true;
        s.flags.quasi_elliptic = true;
        s.flags.mazur_ogus = true;
        let v = validate_surface(&s);
        assert_eq!(v.len(), 3, "{v:?}");
    }

    #[test]
    fn hw_numbers_examples() {
        assert_eq!(hw_numbers_surface(&p2()).unwrap().hw11, 1);
        let r = hw_numbers_surface(&k3()).unwrap();
        assert_eq!((r.hw01, r.hw02, r.hw11), (0, 1, 20));
        let mut ss = k3();
        ss.h2_slopes = Some(SlopeProfile::from_fractions(2, &[(1, 1, 22)]));
        let r = hw_numbers_surface(&ss).unwrap();
        assert_eq!((r.m11, r.t02), (Some(22), Some(1)));
    }

    #[test]
    fn hw_numbers_detect_noether_failure() {
        let mut bad = k3();
        bad.chi = 3;
        assert!(matches!(
            hw_numbers_surface(&bad),
            Err(SurfaceError::FormulaDisagreement { .. })
        ));
    }

    #[test]
    fn negative_domino_rejected() {
        let mut s = k3();
        // m11 = 18 < hW11 = 20 would need T02 = -1
        s.h2_slopes = Some(SlopeProfile::from_fractions(
            2,
            &[(0, 1, 2), (1, 1, 18), (2, 1, 2)],
        ));
        assert!(matches!(s.t02(), Err(SurfaceError::BadDomino(_))));
    }

    #[test]
    fn chern_predicate_examples() {
        let p = chern_predicates(&k3()).unwrap();
        assert_eq!(p["c1sq<=5c2"], Some(true));
        assert_eq!(p["c1sq<=5c2+6b1"], Some(true));
        assert_eq!(p["2T02+b1<=m11"], None);

        let szpiro = SurfaceInvariants {
            c1sq: 158,
            c2: 4,
            b1: 4,
            q: 2,
            kodaira: Kodaira::Two,
            ..k3()
        };
        let p = chern_predicates(&szpiro).unwrap();
        assert_eq!(p["c1sq<=5c2"], Some(false));
        assert_eq!(p["c1sq<=5c2+6b1"], Some(false));
        assert_eq!(p["hW11>=0"], Some(false));

        // ruled surface over a genus-2 curve
        let ruled = SurfaceInvariants {
            p: 5,
            c1sq: -8,
            c2: -4,
            b1: 4,
            b2: 2,
            q: 2,
            h01: 2,
            pg: 0,
            h11: Some(2),
            chi: -1,
            kodaira: Kodaira::NegInfinity,
            flags: SurfaceFlags::default(),
            h2_slopes: None,
        };
        assert!(validate_surface(&ruled).is_empty());
        assert_eq!(ruled.hw11().unwrap(), 2);
        assert_eq!(
            chern_predicates(&ruled).unwrap()["c1sq<=5c2+6b1"],
            Some(true)
        );
    }

    #[test]
    fn chern_predicates_with_slopes_and_flags() {
        let p = chern_predicates(&curve_product()).unwrap();
        assert_eq!(p["2T02+b1<=m11"], Some(true));
        assert_eq!(p["m11>=2m01"], Some(true));
        let p = chern_predicates(&quintic()).unwrap();
        assert_eq!(p["h11>=b1"], Some(true));
    }

    #[test]
    fn blowup_examples() {
        let b = blowup_transform(&p2(), 1).unwrap();
        assert_eq!((b.c1sq, b.c2), (8, 4));
        assert_eq!(b.hw11().unwrap(), 2);
        assert!(validate_surface(&b).is_empty());
        assert!(blowup_transform(&p2(), 0).is_err());
        let b = blowup_transform(&k3(), 3).unwrap();
        assert_eq!(b.hw11().unwrap(), 23);
        assert!(!b.flags.minimal);
    }

    #[test]
    fn blowup_keeps_domino() {
        let mut ss = k3();
        ss.h2_slopes = Some(SlopeProfile::from_fractions(2, &[(1, 1, 22)]));
        let b = blowup_transform(&ss, 2).unwrap();
        assert_eq!(b.t02().unwrap(), Some(1));
        assert_eq!(b.m11().unwrap(), Some(24));
        assert!(validate_surface(&b).is_empty());
    }

    #[test]
    fn negativity_diagnostics() {
        let szpiro = SurfaceInvariants {
            c1sq: 158,
            c2: 4,
            b1: 4,
            q: 2,
            kodaira: Kodaira::Two,
            ..k3()
        };
        let d = diagnose_negativity(&szpiro);
        assert_eq!(d.hw11, Rational::from(-19));
        assert_eq!(d.verdict, NegativityVerdict::GeneralTypeForced);
        assert!(d.to_string().contains("T^{0,2} >= 1"));
        assert!(d.contradiction.is_none());

        assert_eq!(diagnose_negativity(&k3()).to_string(), "no constraint");

        // hW11 = b1 + (5c2 - c1^2)/6 = -1 with p = 3, labelled kappa = 0
        let weird = SurfaceInvariants {
            p: 3,
            c1sq: 26,
            c2: 4,
            b1: 0,
            kodaira: Kodaira::Zero,
            ..k3()
        };
        let d = diagnose_negativity(&weird);
        assert_eq!(d.hw11, Rational::from(-1));
        assert_eq!(d.verdict, NegativityVerdict::GeneralTypeOrQuasiElliptic);
        assert!(d.contradiction.is_some());
    }

    #[test]
    fn raynaud_examples() {
        let szpiro = SurfaceInvariants {
            c1sq: 158,
            c2: 4,
            b1: 4,
            q: 2,
            h11: None,
            kodaira: Kodaira::Two,
            ..k3()
        };
        let r = raynaud_bounds(&szpiro).unwrap();
        assert_eq!(r.checks["hW11>-c1sq/6"], Some(true));
        assert_eq!(r.checks["hW11>=-c1sq"], Some(true));
        assert_eq!(r.checks["hW11<=h11"], None);

        // c1^2 = 1, c2 = -7 gives hW11 = -6 < -c1^2
        let exotic = SurfaceInvariants {
            p: 5,
            c1sq: 1,
            c2: -7,
            b1: 0,
            kodaira: Kodaira::Two,
            ..k3()
        };
        assert_eq!(exotic.hw11().unwrap(), -6);
        let r = raynaud_bounds(&exotic).unwrap();
        assert_eq!(r.checks["hW11>=-c1sq"], Some(false));
        assert_eq!(r.checks["hW11>-c1sq/6"], None);
        assert!(r.notes[0].starts_with("p <= 7 exceptional fibration case required"));

        assert!(raynaud_bounds(&k3()).is_err());
    }

    #[test]
    fn sufficient_conditions() {
        let checks = sufficient_conditions_5c2(&curve_product()).unwrap();
        assert!(checks[0].hypotheses_met);
        assert!(!checks[1].hypotheses_met);
        assert!(checks[2].hypotheses_met);
        assert!(checks.iter().all(|c| c.conclusion_holds));

        let checks = sufficient_conditions_5c2(&quintic()).unwrap();
        assert!(checks[1].hypotheses_met && checks[1].conclusion_holds);

        let mut planted = curve_product();
        planted.c1sq = 30;
        assert!(matches!(
            sufficient_conditions_5c2(&planted),
            Err(SurfaceError::Inconsistent(_))
        ));
    }

    fn supersingular_mo(b1: i64, pg: i64, b2: i64) -> SurfaceInvariants {
        let q = b1 / 2;
        let c2 = b2 - 2 * b1 + 2;
        let chi = 1 - q + pg;
        SurfaceInvariants {
            p: 3,
            c1sq: 12 * chi - c2,
            c2,
            b1,
            b2,
            q,
            h01: q,
            pg,
            h11: Some(b2 - 2 * pg),
            chi,
            kodaira: Kodaira::Two,
            flags: SurfaceFlags {
                minimal: true,
                mazur_ogus: true,
                pic_reduced: true,
                h2cris_torsion_free: true,
                supersingular: true,
                ..Default::default()
            },
            h2_slopes: Some(SlopeProfile::from_fractions(2, &[(1, 1, b2)])),
        }
    }

    #[test]
    fn supersingular_examples() {
        let holds = supersingular_mo(0, 4, 53);
        assert!(validate_surface(&holds).is_empty());
        assert_eq!(
            supersingular_dichotomy(&holds).unwrap(),
            Dichotomy::InequalityHolds
        );

        let nl = supersingular_mo(4, 3, 8);
        assert!(validate_surface(&nl).is_empty());
        assert!(nl.b2 < nl.b1 + 2 * nl.pg);
        assert_eq!(
            supersingular_dichotomy(&nl).unwrap(),
            Dichotomy::NonliftableRegime
        );
        assert!(nl.c2 < 2 * nl.chi);
        // T02 = pg in the supersingular Mazur-Ogus case
        assert_eq!(nl.t02().unwrap(), Some(3));

        assert!(matches!(
            supersingular_dichotomy(&quintic()),
            Err(SurfaceError::Precondition(_))
        ));
    }

    #[test]
    fn ordinary_consequences() {
        let base = SurfaceInvariants {
            flags: SurfaceFlags {
                minimal: true,
                ordinary: true,
                hodge_witt: true,
                ..Default::default()
            },
            kodaira: Kodaira::Two,
            ..k3()
        };
        let with = |c1sq, c2| SurfaceInvariants {
            c1sq,
            c2,
            ..base.clone()
        };
        let r = ordinary_conjecture_consequences(&with(40, 7)).unwrap();
        assert_eq!(r.checks["c1sq<=5c2+6"], Some(true));
        assert_eq!(r.checks["c1sq<=6c2"], Some(true));
        let r = ordinary_conjecture_consequences(&with(36, 5)).unwrap();
        assert_eq!(r.checks["c1sq<=5c2+6"], Some(false));
        assert_eq!(r.checks["c1sq<=6c2"], None);
        let r = ordinary_conjecture_consequences(&with(30, 6)).unwrap();
        assert_eq!(r.checks["c1sq<=5c2+6"], Some(true));
        assert_eq!(r.checks["c1sq<=6c2"], Some(true));
        assert!(r.label.starts_with("CONDITIONAL"));
        assert!(ordinary_conjecture_consequences(&k3()).is_err());
    }

    #[test]
    fn szpiro_examples() {
        let fam = SzpiroFamily {
            g: 2,
            q: 2,
            d: 6,
            p: 5,
            b1: 4,
        };
        let m1 = fam.member(1).unwrap();
        assert_eq!((m1.c2, m1.c1sq, m1.hw11), (4, 38, 1));
        let m2 = fam.member(2).unwrap();
        assert_eq!((m2.c1sq, m2.hw11), (158, -19));
        let m3 = fam.member(3).unwrap();
        assert_eq!((m3.c1sq, m3.hw11), (758, -119));
        let hws: Vec<i64> = (0..=10).map(|n| fam.member(n).unwrap().hw11).collect();
        assert!(hws.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(fam.least_n_exceeding(1).unwrap(), 1);
        assert_eq!(fam.least_n_exceeding(2).unwrap(), 2);
    }

    #[test]
    fn szpiro_integrality() {
        let fam = SzpiroFamily {
            g: 2,
            q: 2,
            d: 1,
            p: 5,
            b1: 4,
        };
        let err = fam.member(1).unwrap_err();
        assert!(err.to_string().contains("divisible by 6"), "{err}");
        assert!(SzpiroFamily { p: 4, ..fam }.member(1).is_err());
        assert!(SzpiroFamily { b1: 3, d: 6, ..fam }.member(1).is_err());
    }

    #[test]
    fn json_round_trip_schema() {
        let json = r#"{
            "p": 5, "c1sq": 0, "c2": 24, "b1": 0, "b2": 22, "q": 0, "h01": 0,
            "pg": 1, "h11": 20, "chi": 2, "kodaira": 0,
            "flags": {"minimal": true},
            "h2_slopes": {"degree": 2, "slopes": [["1", 22]]}
        }"#;
        let s: SurfaceInvariants = serde_json::from_str(json).unwrap();
        assert_eq!(s.kodaira, Kodaira::Zero);
        assert!(s.flags.minimal && !s.flags.ordinary);
        assert!(validate_surface(&s).is_empty());
        let ruled: Kodaira = serde_json::from_str("\"-inf\"").unwrap();
        assert_eq!(ruled, Kodaira::NegInfinity);
        assert_eq!(
            serde_json::to_string(&Kodaira::NegInfinity).unwrap(),
            "\"-inf\""
        );
    }
}
