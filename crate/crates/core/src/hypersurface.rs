//! Hodge, Betti and maximal domino numbers of smooth hypersurfaces
//! `X ⊂ P^{n+1}` of degree `d`.
//!
//! Hodge numbers come from interchangeable [`HodgeSource`] strategies: the
//! generating-function expansion (two independent forms) and the tabulated
//! closed forms for `n ∈ {2, 3, 4}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::HypersurfaceError;
use crate::hodgewitt::mazur_ogus_dominoes;
use crate::matrix::IntMatrix;
use crate::rational::Rational;
use crate::series::{
    hodge_generating_series, hodge_generating_series_ratio, primitive_to_hodge, BiSeries,
};
use crate::slopes::{slope_numbers, CrystalProfile, SlopeProfile};

/// Evaluates `prod(factors) / denom` exactly.
fn poly(d: u64, factors: &[fn(i64) -> i64], denom: i64) -> Rational {
    let d = d as i64;
    let num = factors
        .iter()
        .fold(BigInt::from(1), |acc, f| acc * BigInt::from(f(d)));
    Rational::new(num, denom)
}

fn integral(name: &str, d: u64, r: Rational) -> Result<i64, HypersurfaceError> {
    r.to_i64().ok_or_else(|| {
        HypersurfaceError::NonIntegral(format!("{name} at d = {d} evaluates to {r}"))
    })
}

fn check_dim(n: u32) -> Result<(), HypersurfaceError> {
    if (2..=4).contains(&n) {
        Ok(())
    } else {
        Err(HypersurfaceError::UnsupportedDimension(n))
    }
}

fn check_degree(d: u64) -> Result<(), HypersurfaceError> {
    if d == 0 {
        Err(HypersurfaceError::ZeroDegree)
    } else {
        Ok(())
    }
}

/// The tabulated closed form for `h^{p,n-p}` with `p <= n/2`.
fn closed_middle(n: u32, p: u32, d: u64) -> Rational {
    match (n, p) {
        (2, 0) => poly(d, &[|d| d - 1, |d| d - 2, |d| d - 3], 6),
        (2, 1) => poly(d, &[|d| d, |d| 2 * d * d - 6 * d + 7], 3),
        (3, 0) => poly(d, &[|d| d - 1, |d| d - 2, |d| d - 3, |d| d - 4], 24),
        (3, 1) => poly(d, &[|d| d - 1, |d| d - 2, |d| 11 * d * d - 17 * d + 12], 24),
        (4, 0) => poly(
            d,
            &[|d| d - 1, |d| d - 2, |d| d - 3, |d| d - 4, |d| d - 5],
            120,
        ),
        (4, 1) => poly(
            d,
            &[
                |_| 2,
                |d| d - 1,
                |d| d - 2,
                |d| 13 * d * d * d - 51 * d * d + 56 * d - 30,
            ],
            120,
        ),
        (4, 2) => poly(
            d,
            &[
                |d| d - 1,
                |d| d - 2,
                |d| 3 * d * d * d - 11 * d * d + 11 * d - 5,
            ],
            10,
        ),
        _ => unreachable!("closed forms exist for n in 2..=4"),
    }
}

/// Fills an `(n+1) x (n+1)` Hodge matrix from its middle row `h^{p,n-p}`
/// (`p <= n/2`), using Hodge symmetry and `h^{p,q} = δ_{p,q}` off the middle.
fn assemble(n: u32, half_row: &[i64]) -> IntMatrix {
    let n = n as usize;
    IntMatrix::from_fn(n + 1, |i, j| {
        if i + j == n {
            half_row[i.min(j)]
        } else if i == j {
            1
        } else {
            0
        }
    })
}

/// Full Hodge matrix from the tabulated closed forms.
pub fn hodge_numbers_closed(n: u32, d: u64) -> Result<IntMatrix, HypersurfaceError> {
    check_dim(n)?;
    check_degree(d)?;
    let half = (0..=n / 2)
        .map(|p| integral(&format!("h^{{{p},{}}}", n - p), d, closed_middle(n, p, d)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble(n, &half))
}

fn hodge_from_series(n: u32, series: &BiSeries) -> Result<IntMatrix, HypersurfaceError> {
    let half = (0..=n / 2)
        .map(|p| primitive_to_hodge(p, n - p, &series.coeff(p, n - p)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble(n, &half))
}

/// Full Hodge matrix from the generating-function expansion; any `n >= 1`.
pub fn hodge_numbers_series(n: u32, d: u64) -> Result<IntMatrix, HypersurfaceError> {
    check_degree(d)?;
    if n == 0 {
        return Err(HypersurfaceError::UnsupportedDimension(n));
    }
    hodge_from_series(n, &hodge_generating_series(d, n))
}

/// `b_n` from the tabulated closed form, checked against the Hodge sum of
/// the closed-form Hodge numbers.
pub fn betti_numbers(n: u32, d: u64) -> Result<i64, HypersurfaceError> {
    check_dim(n)?;
    check_degree(d)?;
    let closed = match n {
        2 => poly(d, &[|d| d * d * d - 4 * d * d + 6 * d - 2], 1),
        3 => poly(d, &[|d| d - 1, |d| d - 2, |d| d * d - 2 * d + 2], 1),
        _ => poly(
            d,
            &[
                |d| d - 1,
                |d| d - 2,
                |d| 3 * d * d * d - 12 * d * d + 15 * d - 10,
            ],
            4,
        ),
    };
    let b = integral(&format!("b_{n}"), d, closed)?;
    let hodge_sum = hodge_numbers_closed(n, d)?.antidiagonal_sum(n as usize);
    if b != hodge_sum {
        return Err(HypersurfaceError::Mismatch(format!(
            "b_{n} = {b} but the Hodge numbers sum to {hodge_sum} at d = {d}"
        )));
    }
    Ok(b)
}

/// Topological Euler characteristic `((1-d)^{n+2} - 1)/d + n + 2`.
pub fn euler_characteristic(n: u32, d: u64) -> Result<BigInt, HypersurfaceError> {
    check_degree(d)?;
    let d = BigInt::from(d);
    let one = BigInt::from(1);
    Ok((num_traits::pow(&one - &d, n as usize + 2) - &one) / &d + BigInt::from(n + 2))
}

/// `(d-1)(d-2)(14d^3 - 63d^2 + 103d - 90)/120`, the tabulated value of the
/// maximal `T^{1,3}` of a fourfold. It is exactly half of
/// `h^{1,3} + 2h^{0,4}` and need not be an integer.
pub fn t13_tabulated(d: u64) -> Rational {
    poly(
        d,
        &[
            |d| d - 1,
            |d| d - 2,
            |d| 14 * d * d * d - 63 * d * d + 103 * d - 90,
        ],
        120,
    )
}

/// Whether a middle-degree slope profile meets the condition under which
/// `T^{0,n} = h^{0,n}`: `H^n` free of slopes in `[0,1)` (and, by duality,
/// in `(n-1,n]`).
pub fn t0n_condition(n: u32, p: &SlopeProfile) -> bool {
    let n_r = Rational::from(n as i64);
    p.within(&Rational::one(), &(n_r - Rational::one()))
}

/// Whether a fourfold's `H^4` is of pure slope two, the condition under
/// which `T^{1,3} = h^{1,3} + 2h^{0,4}`.
pub fn t13_condition(p: &SlopeProfile) -> bool {
    p.is_pure(&Rational::from(2))
}

/// The full slope condition for maximal domino numbers in dimension `n`:
/// pure slope one for surfaces, slopes in `[1,2]` for threefolds, pure slope
/// two for fourfolds.
pub fn maximal_slope_condition(n: u32, p: &SlopeProfile) -> Result<bool, HypersurfaceError> {
    check_dim(n)?;
    Ok(match n {
        2 => p.is_pure(&Rational::one()),
        3 => t0n_condition(3, p),
        _ => t13_condition(p),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominoBound {
    pub i: usize,
    pub j: usize,
    pub upper: i64,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DominoOutcome {
    Exact { t: IntMatrix },
    Bounds { bounds: Vec<DominoBound> },
}

/// Slope numbers of a hypersurface whose middle cohomology has the single
/// slope `n/2`: `H^{2k}` is `(k, 1)` off the middle, odd degrees vanish.
pub fn pure_middle_slope_numbers(
    n: u32,
    middle_betti: i64,
) -> Result<IntMatrix, HypersurfaceError> {
    let lower = (0..=n)
        .map(|k| {
            if k == n {
                SlopeProfile::pure(k, Rational::new(n as i64, 2), middle_betti)
            } else if k % 2 == 0 {
                SlopeProfile::pure(k, Rational::from((k / 2) as i64), 1)
            } else {
                SlopeProfile::empty(k)
            }
        })
        .collect();
    let crystal = CrystalProfile::from_lower_half(n, lower)?;
    Ok(slope_numbers(&crystal)?)
}

/// Maximal domino numbers computed from a Hodge matrix. When the slope
/// condition holds the Mazur-Ogus recursion is run on the pure-slope slope
/// numbers; otherwise only the upper bounds are returned.
pub fn maximal_dominoes_from_hodge(
    hodge: &IntMatrix,
    slope_condition_met: bool,
) -> Result<DominoOutcome, HypersurfaceError> {
    let n = (hodge.size() - 1) as u32;
    check_dim(n)?;
    let nu = n as usize;
    if slope_condition_met {
        let m = pure_middle_slope_numbers(n, hodge.antidiagonal_sum(nu))?;
        let t = mazur_ogus_dominoes(hodge, &m, n)?;
        return Ok(DominoOutcome::Exact { t });
    }
    let h0n = hodge.get(0, nu);
    let mut bounds = vec![DominoBound {
        i: 0,
        j: nu,
        upper: h0n,
        relation: format!("T^{{0,{n}}} <= h^{{0,{n}}}"),
    }];
    if n == 4 {
        bounds.push(DominoBound {
            i: 1,
            j: 3,
            upper: hodge.get(1, 3) + 2 * h0n,
            relation: "T^{1,3} <= h^{1,3} + 2T^{0,4}".to_string(),
        });
    }
    Ok(DominoOutcome::Bounds { bounds })
}

/// Maximal domino numbers of a degree-`d` hypersurface of dimension `n`.
pub fn maximal_domino_numbers(
    n: u32,
    d: u64,
    slope_condition_met: bool,
) -> Result<DominoOutcome, HypersurfaceError> {
    check_dim(n)?;
    maximal_dominoes_from_hodge(&hodge_numbers_series(n, d)?, slope_condition_met)
}

/// `(h^{1,1} - 2p_g, h^{1,1} - 4p_g)` of a degree-`d` surface in `P^3`, from
/// `(d^3 - 4d + 6)/3` and `2d^2 - 5d + 4`, checked against the Hodge numbers.
pub fn general_type_margins(d: u64) -> Result<(i64, i64), HypersurfaceError> {
    check_degree(d)?;
    let m2 = integral(
        "(d^3 - 4d + 6)/3",
        d,
        poly(d, &[|d| d * d * d - 4 * d + 6], 3),
    )?;
    let m4 = integral("2d^2 - 5d + 4", d, poly(d, &[|d| 2 * d * d - 5 * d + 4], 1))?;
    let h = hodge_numbers_closed(2, d)?;
    let (pg, h11) = (h.get(0, 2), h.get(1, 1));
    if m2 != h11 - 2 * pg || m4 != h11 - 4 * pg {
        return Err(HypersurfaceError::Mismatch(format!(
            "margins ({m2}, {m4}) vs direct ({}, {}) at d = {d}",
            h11 - 2 * pg,
            h11 - 4 * pg
        )));
    }
    if d >= 5 && m4 <= 0 {
        return Err(HypersurfaceError::Mismatch(format!(
            "h^{{1,1}} - 4p_g = {m4} is not positive at d = {d}"
        )));
    }
    Ok((m2, m4))
}

/// A way of producing the Hodge matrix of a hypersurface.
pub trait HodgeSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn hodge_matrix(&self, n: u32, d: u64) -> Result<IntMatrix, HypersurfaceError>;
}

pub struct DeligneSeries;

impl HodgeSource for DeligneSeries {
    fn name(&self) -> &'static str {
        "deligne"
    }
    fn description(&self) -> &'static str {
        "generating function, binomial-sum form"
    }
    fn hodge_matrix(&self, n: u32, d: u64) -> Result<IntMatrix, HypersurfaceError> {
        hodge_numbers_series(n, d)
    }
}

pub struct RatioSeries;

impl HodgeSource for RatioSeries {
    fn name(&self) -> &'static str {
        "ratio"
    }
    fn description(&self) -> &'static str {
        "generating function, rational-function form"
    }
    fn hodge_matrix(&self, n: u32, d: u64) -> Result<IntMatrix, HypersurfaceError> {
        check_degree(d)?;
        if n == 0 {
            return Err(HypersurfaceError::UnsupportedDimension(n));
        }
        hodge_from_series(n, &hodge_generating_series_ratio(d, n))
    }
}

pub struct ClosedForms;

impl HodgeSource for ClosedForms {
    fn name(&self) -> &'static str {
        "closed"
    }
    fn description(&self) -> &'static str {
        "tabulated closed forms (n = 2, 3, 4)"
    }
    fn hodge_matrix(&self, n: u32, d: u64) -> Result<IntMatrix, HypersurfaceError> {
        hodge_numbers_closed(n, d)
    }
}

/// Named [`HodgeSource`] strategies, selectable at runtime.
pub struct HodgeRegistry {
    sources: BTreeMap<&'static str, Box<dyn HodgeSource>>,
}

impl HodgeRegistry {
    pub const DEFAULT: &'static str = "deligne";

    pub fn empty() -> Self {
        HodgeRegistry {
            sources: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(DeligneSeries));
        r.register(Box::new(RatioSeries));
        r.register(Box::new(ClosedForms));
        r
    }

    pub fn register(&mut self, source: Box<dyn HodgeSource>) {
        self.sources.insert(source.name(), source);
    }

    pub fn get(&self, name: &str) -> Result<&dyn HodgeSource, HypersurfaceError> {
        self.sources
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| HypersurfaceError::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.sources.keys().copied()
    }
}

impl Default for HodgeRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypersurfaceReport {
    pub dim: u32,
    pub degree: u64,
    pub method: String,
    pub hodge: IntMatrix,
    pub betti: i64,
    pub euler_characteristic: String,
    pub dominoes: Option<DominoOutcome>,
}

/// Hodge matrix, middle Betti number and (for `n ∈ {2,3,4}`) maximal
/// domino numbers from the chosen source.
pub fn hypersurface_report(
    source: &dyn HodgeSource,
    n: u32,
    d: u64,
    slope_condition_met: bool,
) -> Result<HypersurfaceReport, HypersurfaceError> {
    let hodge = source.hodge_matrix(n, d)?;
    let betti = hodge.antidiagonal_sum(n as usize);
    let dominoes = if (2..=4).contains(&n) {
        Some(maximal_dominoes_from_hodge(&hodge, slope_condition_met)?)
    } else {
        None
    };
    Ok(HypersurfaceReport {
        dim: n,
        degree: d,
        method: source.name().to_string(),
        euler_characteristic: euler_characteristic(n, d)?.to_string(),
        hodge,
        betti,
        dominoes,
    })
}
