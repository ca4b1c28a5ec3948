//! Built-in fixture checks with known published values.

use anyhow::Result;
use serde::Serialize;

use hwgeo_core::hypersurface::{general_type_margins, hodge_numbers_series};
use hwgeo_core::slopes::SlopeProfile;
use hwgeo_core::surface::{
    blowup_transform, chern_predicates, Kodaira, SurfaceFlags, SurfaceInvariants, SzpiroFamily,
};
use hwgeo_core::threefold::{
    cy_formulaire, hw_threefold_parts, liftability_necessary, nonliftable_characterization,
    ThreefoldInvariants,
};
use hwgeo_core::{IntMatrix, Rational};

use crate::commands::Outcome;
use crate::output::Report;

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn k3(slopes: SlopeProfile) -> SurfaceInvariants {
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
        h2_slopes: Some(slopes),
    }
}

fn checks() -> Vec<Check> {
    let hirokado = ThreefoldInvariants::calabi_yau(23, Some(48), Some(0));
    vec![
        check("K3 quartic has b2 = 22", || {
            let b2 = hodge_numbers_series(2, 4)?.antidiagonal_sum(2);
            Ok((b2 == 22, format!("b2 = {b2}")))
        }),
        check("h11 - 2pg = (d^3 - 4d + 6)/3 for d = 1..12", || {
            let mut all = true;
            for d in 1..=12u64 {
                let h = hodge_numbers_series(2, d)?;
                let di = d as i64;
                all &= Rational::from(h.get(1, 1) - 2 * h.get(0, 2))
                    == Rational::new(di * di * di - 4 * di + 6, 3);
            }
            Ok((all, "checked against the generating function".into()))
        }),
        check("h11 - 4pg = 2d^2 - 5d + 4 is positive for d >= 5", || {
            let ok = (5..=12u64).all(|d| general_type_margins(d).is_ok_and(|(_, m4)| m4 > 0));
            Ok((ok, "d = 5..12".into()))
        }),
        check("supersingular K3 has T02 = pg", || {
            let s = k3(SlopeProfile::pure(2, Rational::one(), 22));
            let t02 = s.t02()?;
            Ok((
                t02 == Some(s.pg),
                format!("T02 = {}, pg = {}", crate::output::opt(t02), s.pg),
            ))
        }),
        check(
            "Szpiro surfaces: hW11 strictly decreasing to -infinity",
            || {
                let fam = SzpiroFamily {
                    g: 2,
                    q: 2,
                    d: 6,
                    p: 5,
                    b1: 4,
                };
                let hw: Vec<i64> = (0..=10)
                    .map(|n| fam.member(n).map(|m| m.hw11))
                    .collect::<Result<_, _>>()?;
                let ok = hw.windows(2).all(|w| w[1] < w[0]);
                Ok((ok, format!("n = 0..10: {} .. {}", hw[0], hw[10])))
            },
        ),
        check("blowups raise hW11 by one per point and keep T02", || {
            let s = k3(SlopeProfile::pure(2, Rational::one(), 22));
            let b = blowup_transform(&s, 3)?;
            let ok = b.hw11()? == s.hw11()? + 3 && b.t02()? == s.t02()?;
            Ok((ok, format!("hW11 {} -> {}", s.hw11()?, b.hw11()?)))
        }),
        check("c1^2 <= 5c2 iff hW11 >= b1 on the Szpiro surfaces", || {
            let fam = SzpiroFamily {
                g: 2,
                q: 2,
                d: 6,
                p: 5,
                b1: 4,
            };
            let mut ok = true;
            for n in 1..=5 {
                let m = fam.member(n)?;
                let s = SurfaceInvariants {
                    c1sq: m.c1sq,
                    c2: m.c2,
                    b1: m.b1,
                    kodaira: Kodaira::Two,
                    h2_slopes: None,
                    ..k3(SlopeProfile::empty(2))
                };
                let p = chern_predicates(&s)?;
                ok &= p["c1sq<=5c2"] == p["hW11>=b1"] && p["c1sq<=5c2+6b1"] == p["hW11>=0"];
            }
            Ok((ok, "n = 1..5".into()))
        }),
        check("Calabi-Yau formulaire: hW11 = m11 = b2", || {
            let m = IntMatrix::from_fn(4, |i, j| match (i, j) {
                (0, 0) | (3, 3) => 1,
                (1, 1) | (2, 2) => 23,
                _ => 0,
            });
            let (hw12, hw11) = hw_threefold_parts(&m, 1, 0)?;
            let table = cy_formulaire(&hirokado)?;
            let ok = hw11 == 23 && table.hw.get(1, 1) == 23 && hw12 == -1;
            Ok((ok, format!("hW11 = {hw11}, hW12 = m12 - T03 = {hw12}")))
        }),
        check("Hirokado/Schroer threefold: hW12 = -1 and b3 = 0", || {
            let r = nonliftable_characterization(&hirokado)?;
            Ok((
                r.hw12 == -1 && r.b3 == 0 && r.nonliftable,
                format!("hW12 = {}", r.hw12),
            ))
        }),
        check(
            "Hirokado/Schroer threefold: c3 = 48 > 2b2 = 46, not liftable",
            || {
                let lifts = liftability_necessary(&hirokado)?;
                Ok((!lifts, format!("c3 <= 2b2: {lifts}")))
            },
        ),
    ]
}

pub fn selftest() -> Result<Outcome> {
    let checks = checks();
    let ok = checks.iter().all(|c| c.passed);
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                if c.passed { "PASS" } else { "FAIL" }.to_string(),
                c.name.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    let headers = vec!["status".into(), "check".into(), "detail".into()];
    let doc = serde_json::json!({ "checks": checks, "ok": ok });
    Ok(Outcome {
        report: Report::rows(&doc, headers, rows)?,
        ok,
    })
}
