//! Hodge-Witt arithmetic of threefolds, mostly Calabi-Yau: `chi(Omega^1)`
//! from Chern numbers, the Calabi-Yau formulaire, and the numerical
//! characterization of non-liftable Calabi-Yau threefolds by `b_3 = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ThreefoldError;
use crate::hodgewitt::{check_crew_formula, check_hw_symmetries, HodgeWittTable};
use crate::matrix::IntMatrix;
use crate::rational::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldInvariants {
    /// `c_1 · c_2`.
    #[serde(default)]
    pub c1c2: i64,
    #[serde(default)]
    pub c3: Option<i64>,
    pub b2: i64,
    #[serde(default)]
    pub b3: Option<i64>,
    #[serde(default)]
    pub hodge: Option<IntMatrix>,
    #[serde(default)]
    pub is_calabi_yau: bool,
    #[serde(default)]
    pub hodge_witt: Option<bool>,
    #[serde(default)]
    pub h2cris_torsion_free: Option<bool>,
    #[serde(default)]
    pub h0_omega1_zero: Option<bool>,
}

impl ThreefoldInvariants {
    pub fn calabi_yau(b2: i64, c3: Option<i64>, b3: Option<i64>) -> Self {
        ThreefoldInvariants {
            b2,
            c3,
            b3,
            is_calabi_yau: true,
            ..Default::default()
        }
    }

    /// `c_3`, supplied or (for Calabi-Yau threefolds with `b_1 = b_5 = 0`)
    /// derived as `2 + 2b_2 - b_3`. When both are supplied they must agree.
    pub fn c3(&self) -> Result<i64, ThreefoldError> {
        let derived = self
            .b3
            .filter(|_| self.is_calabi_yau)
            .map(|b3| 2 + 2 * self.b2 - b3);
        match (self.c3, derived) {
            (Some(c3), Some(d)) if c3 != d => Err(ThreefoldError::Inconsistent(format!(
                "c3 = {c3} but 2 + 2b2 - b3 = {d}"
            ))),
            (Some(c3), _) => Ok(c3),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(ThreefoldError::Precondition(
                "c3 is required (or b3 for a Calabi-Yau threefold)".into(),
            )),
        }
    }

    /// `b_3`, supplied or derived as `2 + 2b_2 - c_3` for Calabi-Yau threefolds.
    pub fn b3(&self) -> Result<Option<i64>, ThreefoldError> {
        if let Some(b3) = self.b3 {
            self.c3()?;
            return Ok(Some(b3));
        }
        if self.is_calabi_yau {
            Ok(Some(2 + 2 * self.b2 - self.c3()?))
        } else {
            Ok(None)
        }
    }
}

/// All consistency violations of a record; empty when it is valid.
pub fn validate_threefold(t: &ThreefoldInvariants) -> Vec<String> {
    let mut out = Vec::new();
    if t.b2 < 0 {
        out.push(format!("b2 = {} is negative", t.b2));
    }
    if let Some(b3) = t.b3 {
        if b3 < 0 {
            out.push(format!("b3 = {b3} is negative"));
        }
    }
    if let Err(e) = t.c3() {
        out.push(e.to_string());
    } else if let Ok(Some(b3)) = t.b3() {
        if b3 < 0 {
            out.push(format!("derived b3 = {b3} is negative"));
        }
    }
    if let Some(h) = &t.hodge {
        if h.size() != 4 {
            out.push(format!("hodge is {0}x{0}, expected 4x4", h.size()));
        }
    }
    if t.is_calabi_yau {
        if t.c1c2 != 0 {
            out.push(format!("Calabi-Yau threefold with c1c2 = {} != 0", t.c1c2));
        }
        if let Some(h) = &t.hodge {
            if h.size() == 4 && h.rows()[0] != [1, 0, 0, 1] {
                out.push(format!(
                    "Calabi-Yau hodge row 0 is {:?}, expected [1, 0, 0, 1]",
                    h.rows()[0]
                ));
            }
        }
    }
    out
}

/// `chi(Omega^1) = -(23/24) c_1c_2 - c_3/2`.
pub fn chi_omega1(t: &ThreefoldInvariants) -> Result<i64, ThreefoldError> {
    let c3 = t.c3()?;
    let v = Rational::new(-23 * t.c1c2, 24) - Rational::new(c3, 2);
    v.to_i64().ok_or_else(|| {
        ThreefoldError::NonIntegral(format!(
            "chi(Omega^1) = {v} for c1c2 = {}, c3 = {c3}",
            t.c1c2
        ))
    })
}

fn require_cy(t: &ThreefoldInvariants) -> Result<(), ThreefoldError> {
    if t.is_calabi_yau {
        Ok(())
    } else {
        Err(ThreefoldError::Precondition(
            "needs a Calabi-Yau threefold".into(),
        ))
    }
}

/// `h^{1,2}_W = b_2 - c_3/2` for a Calabi-Yau threefold.
pub fn cy_hw12(t: &ThreefoldInvariants) -> Result<i64, ThreefoldError> {
    require_cy(t)?;
    let c3 = t.c3()?;
    if c3 % 2 != 0 {
        return Err(ThreefoldError::NonIntegral(format!(
            "h^{{1,2}}_W = b2 - c3/2 with odd c3 = {c3}"
        )));
    }
    Ok(t.b2 - c3 / 2)
}

/// Hodge-Witt numbers of a Calabi-Yau threefold: row 0 is `(1,0,0,1)`,
/// `h^{1,1}_W = b_2`, `h^{1,2}_W = b_2 - c_3/2`, `h^{1,3}_W = 0`, the rest by
/// symmetry. `chi(Omega^i)` is attached so Crew's formula can be checked.
///
/// When `h^{1,2}_W < 0` the split into slope and domino numbers is forced
/// (`m^{1,2} = 0`, `T^{0,3} = T^{1,2} = 1`) and is filled in as well.
pub fn cy_formulaire(t: &ThreefoldInvariants) -> Result<HodgeWittTable, ThreefoldError> {
    require_cy(t)?;
    let b2 = t.b2;
    let hw12 = cy_hw12(t)?;
    if hw12 < -1 {
        return Err(ThreefoldError::Inconsistent(format!(
            "h^{{1,2}}_W = {hw12} < -1 is impossible"
        )));
    }
    let hw = IntMatrix::from_rows(vec![
        vec![1, 0, 0, 1],
        vec![0, b2, hw12, 0],
        vec![0, hw12, b2, 0],
        vec![1, 0, 0, 1],
    ])
    .expect("square");
    let chi1 = chi_omega1(t)?;
    let (m, dominoes) = if hw12 < 0 {
        let m = IntMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 0) | (3, 3) => 1,
            (1, 1) | (2, 2) => b2,
            _ => 0,
        });
        let mut dom = IntMatrix::zeros(4);
        dom.set(0, 3, 1);
        dom.set(1, 2, 1);
        (Some(m), Some(dom))
    } else {
        (None, None)
    };
    Ok(HodgeWittTable {
        dim: 3,
        m,
        t: dominoes,
        hw,
        hodge: t.hodge.clone(),
        chi: Some(vec![0, chi1, -chi1, 0]),
    })
}

/// `h^{1,2}_W = m^{1,2} - T^{0,3}` and `h^{1,1}_W = m^{1,1} - 2T^{0,2}`.
pub fn hw_threefold_parts(m: &IntMatrix, t03: i64, t02: i64) -> Result<(i64, i64), ThreefoldError> {
    if m.size() != 4 {
        return Err(ThreefoldError::Precondition(format!(
            "slope numbers are {0}x{0}, expected 4x4",
            m.size()
        )));
    }
    if t03 < 0 || t02 < 0 {
        return Err(ThreefoldError::Precondition(format!(
            "domino numbers must be non-negative (T03 = {t03}, T02 = {t02})"
        )));
    }
    Ok((m.get(1, 2) - t03, m.get(1, 1) - 2 * t02))
}

/// `c_3 <= 2b_2`; false proves the Calabi-Yau threefold does not lift to
/// characteristic zero.
pub fn liftability_necessary(t: &ThreefoldInvariants) -> Result<bool, ThreefoldError> {
    require_cy(t)?;
    Ok(t.c3()? <= 2 * t.b2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionStatus {
    Holds,
    Fails,
    NotCheckable,
}

impl fmt::Display for ConditionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionStatus::Holds => "holds",
            ConditionStatus::Fails => "fails",
            ConditionStatus::NotCheckable => "not-checkable",
        })
    }
}

impl From<bool> for ConditionStatus {
    fn from(b: bool) -> Self {
        if b {
            ConditionStatus::Holds
        } else {
            ConditionStatus::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub id: u8,
    pub statement: &'static str,
    pub status: ConditionStatus,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonliftableReport {
    pub hw12: i64,
    pub c3: i64,
    pub b3: i64,
    pub conditions: Vec<Condition>,
    pub nonliftable: bool,
}

/// The five equivalent conditions characterizing non-liftable Calabi-Yau
/// threefolds. Conditions 1, 2 and 4 are numerical and must agree;
/// 3 and 5 need cohomological data and are reported as implied or not.
pub fn nonliftable_characterization(
    t: &ThreefoldInvariants,
) -> Result<NonliftableReport, ThreefoldError> {
    require_cy(t)?;
    let c3 = t.c3()?;
    let b3 = t.b3()?.expect("Calabi-Yau b3 is always resolvable");
    let hw12 = cy_hw12(t)?;
    let c1 = hw12 == -1;
    let c2 = hw12 < 0;
    let c4 = b3 == 0;
    if c1 != c2 || c2 != c4 {
        return Err(ThreefoldError::Inconsistent(format!(
            "hW12 = -1: {c1}, hW12 < 0: {c2}, b3 = 0: {c4} should all agree"
        )));
    }
    let implied = |what: &str| {
        Some(if c4 {
            format!("{what}: implied by b3 = 0, not checkable from numerical data")
        } else {
            format!("{what}: fails since b3 != 0, not checkable from numerical data")
        })
    };
    let conditions = vec![
        Condition {
            id: 1,
            statement: "h^{1,2}_W = -1",
            status: c1.into(),
            note: None,
        },
        Condition {
            id: 2,
            statement: "h^{1,2}_W < 0",
            status: c2.into(),
            note: None,
        },
        Condition {
            id: 3,
            statement: "H^3_cris(X/W) is a torsion W-module",
            status: ConditionStatus::NotCheckable,
            note: implied("H^3 torsion"),
        },
        Condition {
            id: 4,
            statement: "b_3 = 0",
            status: c4.into(),
            note: None,
        },
        Condition {
            id: 5,
            statement: "X is not Hodge-Witt and m^{1,2} = 0",
            status: match t.hodge_witt {
                Some(true) if c4 => {
                    return Err(ThreefoldError::Inconsistent(
                        "b3 = 0 forces X not Hodge-Witt, but the record is flagged Hodge-Witt"
                            .into(),
                    ))
                }
                _ => ConditionStatus::NotCheckable,
            },
            note: implied("not Hodge-Witt with m^{1,2} = 0"),
        },
    ];
    Ok(NonliftableReport {
        hw12,
        c3,
        b3,
        conditions,
        nonliftable: c4,
    })
}

pub const LIFTABILITY_CONJECTURE_LABEL: &str =
    "conjectural: a Calabi-Yau threefold with H^0(Omega^1) = 0 and c3 <= 2b2 lifts to characteristic zero";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreefoldReport {
    pub c3: i64,
    pub b3: Option<i64>,
    pub chi_omega1: i64,
    pub hodge_witt: Option<HodgeWittTable>,
    pub crew_consistent: Option<bool>,
    pub symmetries_consistent: Option<bool>,
    pub characterization: Option<NonliftableReport>,
    pub liftability_necessary: Option<bool>,
    pub conjecturally_liftable: Option<String>,
}

/// Everything computable from the record; the Calabi-Yau sections are
/// `None` for other threefolds.
pub fn threefold_report(t: &ThreefoldInvariants) -> Result<ThreefoldReport, ThreefoldError> {
    let c3 = t.c3()?;
    let b3 = t.b3()?;
    let chi1 = chi_omega1(t)?;
    if !t.is_calabi_yau {
        return Ok(ThreefoldReport {
            c3,
            b3,
            chi_omega1: chi1,
            hodge_witt: None,
            crew_consistent: None,
            symmetries_consistent: None,
            characterization: None,
            liftability_necessary: None,
            conjecturally_liftable: None,
        });
    }
    let table = cy_formulaire(t)?;
    let lift = liftability_necessary(t)?;
    let conj = match (lift, t.h0_omega1_zero) {
        (true, Some(true)) => Some(format!(
            "conjecturally liftable ({LIFTABILITY_CONJECTURE_LABEL})"
        )),
        (false, _) => Some("not liftable: c3 > 2b2".to_string()),
        _ => None,
    };
    Ok(ThreefoldReport {
        c3,
        b3,
        chi_omega1: chi1,
        crew_consistent: Some(check_crew_formula(&table)),
        symmetries_consistent: Some(check_hw_symmetries(&table)),
        hodge_witt: Some(table),
        characterization: Some(nonliftable_characterization(t)?),
        liftability_necessary: Some(lift),
        conjecturally_liftable: conj,
    })
}
