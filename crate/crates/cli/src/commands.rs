use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use serde_json::{json, Value};

use hwgeo_core::hypersurface::{
    hodge_numbers_series, hypersurface_report, DominoOutcome, HodgeRegistry,
};
use hwgeo_core::slopes::{SlopeProfile, Strictness};
use hwgeo_core::surface::{
    blowup_transform, diagnose_negativity, hw_numbers_surface, ordinary_conjecture_consequences,
    raynaud_bounds, sufficient_conditions_5c2, supersingular_dichotomy, validate_surface_with,
    Kodaira, SurfaceFlags, SurfaceInvariants, SzpiroFamily,
};
use hwgeo_core::threefold::{threefold_report, validate_threefold, ThreefoldInvariants};
use hwgeo_core::{Rational, SurfaceError, ThreefoldError};

use crate::output::{opt, tri, Report};
use crate::UsageError;

/// A rendered report and whether every check on it passed.
pub struct Outcome {
    pub report: Report,
    pub ok: bool,
}

#[derive(Args, Debug)]
pub struct HypersurfaceArgs {
    /// Dimension n of the hypersurface in P^{n+1}.
    #[arg(long)]
    pub dim: u32,
    /// Degree d.
    #[arg(long)]
    pub degree: u64,
    /// Assume the slope condition for maximal domino numbers holds.
    #[arg(long)]
    pub slope_condition: bool,
    /// Hodge number source: deligne, ratio or closed.
    #[arg(long, default_value = HodgeRegistry::DEFAULT)]
    pub method: String,
}

fn domino_cells(n: usize, d: &Option<DominoOutcome>) -> Vec<(String, String)> {
    match d {
        None => Vec::new(),
        Some(DominoOutcome::Exact { t }) => t
            .entries()
            .filter(|(i, j, _)| i + j == n)
            .map(|(i, j, v)| (format!("T{i}{j}"), v.to_string()))
            .collect(),
        Some(DominoOutcome::Bounds { bounds }) => bounds
            .iter()
            .map(|b| (format!("T{}{}_max", b.i, b.j), b.upper.to_string()))
            .collect(),
    }
}

pub fn hypersurface(args: &HypersurfaceArgs) -> Result<Outcome> {
    let registry = HodgeRegistry::builtin();
    let source = registry.get(&args.method).map_err(|e| {
        UsageError(format!(
            "--method: {e}; available: {}",
            registry.names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let report = hypersurface_report(source, args.dim, args.degree, args.slope_condition)?;
    let n = args.dim as usize;
    let series = hodge_numbers_series(args.dim, args.degree)?;
    let agrees = series == report.hodge;

    let mut cells = vec![
        ("dim".to_string(), report.dim.to_string()),
        ("degree".to_string(), report.degree.to_string()),
    ];
    let mut hodge_numbers = BTreeMap::new();
    for (i, j, v) in report.hodge.entries() {
        cells.push((format!("h{i}{j}"), v.to_string()));
        hodge_numbers.insert(format!("h{i}{j}"), v);
    }
    cells.push((format!("b{n}"), report.betti.to_string()));
    cells.extend(domino_cells(n, &report.dominoes));

    let mut doc = serde_json::to_value(&report)?;
    let obj = doc.as_object_mut().expect("struct serializes to object");
    obj.insert(
        "hodge_numbers".into(),
        serde_json::to_value(&hodge_numbers)?,
    );
    obj.insert(format!("b{n}"), json!(report.betti));
    obj.insert("agrees_with_series".into(), json!(agrees));

    let (headers, values): (Vec<String>, Vec<String>) = cells.into_iter().unzip();
    let mut notes = vec![format!(
        "method: {} ({})",
        source.name(),
        source.description()
    )];
    if !agrees {
        notes.push(format!(
            "warning: differs from the generating-function expansion (middle row {:?})",
            series
                .rows()
                .iter()
                .enumerate()
                .map(|(i, r)| r[n - i])
                .collect::<Vec<_>>()
        ));
    }
    let report = Report::rows(&doc, headers, vec![values]).map(|r| r.with_notes(notes))?;
    Ok(Outcome { report, ok: true })
}

#[derive(Args, Debug, Default)]
pub struct SurfaceArgs {
    /// JSON file with a surface record; overrides the inline flags.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1sq: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<i64>,
    #[arg(long)]
    pub b1: Option<i64>,
    #[arg(long)]
    pub b2: Option<i64>,
    #[arg(long)]
    pub q: Option<i64>,
    #[arg(long)]
    pub h01: Option<i64>,
    #[arg(long)]
    pub pg: Option<i64>,
    #[arg(long)]
    pub h11: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<i64>,
    /// Kodaira dimension: -inf, 0, 1 or 2.
    #[arg(long, allow_hyphen_values = true)]
    pub kodaira: Option<Kodaira>,
    /// H^2 slopes as `lambda:mult,...`, e.g. `1/2:8,1:2,3/2:8`.
    #[arg(long)]
    pub h2_slopes: Option<String>,
    #[arg(long)]
    pub minimal: bool,
    #[arg(long)]
    pub hodge_witt: bool,
    #[arg(long)]
    pub ordinary: bool,
    #[arg(long)]
    pub mazur_ogus: bool,
    #[arg(long)]
    pub pic_reduced: bool,
    #[arg(long)]
    pub h2cris_torsion_free: bool,
    #[arg(long)]
    pub supersingular: bool,
    #[arg(long)]
    pub quasi_elliptic: bool,
    /// Blow up this many points before evaluating.
    #[arg(long)]
    pub blowup: Option<i64>,
}

pub fn parse_slopes(degree: u32, spec: &str) -> Result<SlopeProfile, UsageError> {
    let mut entries: Vec<(Rational, i64)> = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (l, m) = part
            .split_once(':')
            .ok_or_else(|| UsageError(format!("slope entry {part:?} is not lambda:mult")))?;
        let l: Rational = l
            .parse()
            .map_err(|e| UsageError(format!("slope entry {part:?}: {e}")))?;
        let m: i64 = m
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("slope entry {part:?}: bad multiplicity")))?;
        entries.push((l, m));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SlopeProfile::new(degree, entries))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn surface_from_args(a: &SurfaceArgs) -> Result<SurfaceInvariants> {
    if let Some(path) = &a.input {
        return read_json(path);
    }
    let mut missing = Vec::new();
    macro_rules! need {
        ($field:ident, $flag:literal) => {
            a.$field.unwrap_or_else(|| {
                missing.push($flag);
                Default::default()
            })
        };
    }
    let p = need!(p, "--p");
    let c1sq = need!(c1sq, "--c1sq");
    let c2 = need!(c2, "--c2");
    let b1 = need!(b1, "--b1");
    let b2 = need!(b2, "--b2");
    let q = need!(q, "--q");
    let h01 = need!(h01, "--h01");
    let pg = need!(pg, "--pg");
    let chi = need!(chi, "--chi");
    let kodaira = a.kodaira.unwrap_or_else(|| {
        missing.push("--kodaira");
        Kodaira::Two
    });
    if !missing.is_empty() {
        return Err(UsageError(format!(
            "missing required flags (or use --input): {}",
            missing.join(", ")
        ))
        .into());
    }
    let h2_slopes = a
        .h2_slopes
        .as_deref()
        .map(|s| parse_slopes(2, s))
        .transpose()?;
    Ok(SurfaceInvariants {
        p,
        c1sq,
        c2,
        b1,
        b2,
        q,
        h01,
        pg,
        h11: a.h11,
        chi,
        kodaira,
        flags: SurfaceFlags {
            minimal: a.minimal,
            hodge_witt: a.hodge_witt,
            ordinary: a.ordinary,
            mazur_ogus: a.mazur_ogus,
            pic_reduced: a.pic_reduced,
            h2cris_torsion_free: a.h2cris_torsion_free,
            supersingular: a.supersingular,
            quasi_elliptic: a.quasi_elliptic,
        },
        h2_slopes,
    })
}

/// An optional analysis: not applicable on a failed precondition, an error
/// (and a failed run) on anything else.
fn section<T: Serialize>(r: Result<T, SurfaceError>, ok: &mut bool) -> Result<(Value, Option<T>)> {
    Ok(match r {
        Ok(v) => (serde_json::to_value(&v)?, Some(v)),
        Err(SurfaceError::Precondition(msg)) => (json!({ "not_applicable": msg }), None),
        Err(e) => {
            *ok = false;
            (json!({ "error": e.to_string() }), None)
        }
    })
}

pub fn surface(args: &SurfaceArgs, strictness: Strictness) -> Result<Outcome> {
    let mut s = surface_from_args(args)?;
    if let Some(k) = args.blowup {
        s = blowup_transform(&s, k).map_err(|e| UsageError(format!("--blowup: {e}")))?;
    }
    let violations = validate_surface_with(&s, strictness);
    let mut ok = violations.is_empty();
    let mut rows: Vec<(String, String)> = violations
        .iter()
        .map(|v| ("violation".to_string(), v.clone()))
        .collect();
    let mut notes = Vec::new();

    let (hw_json, hw) = section(hw_numbers_surface(&s), &mut ok)?;
    if let Some(r) = &hw {
        rows.push(("hW01".into(), r.hw01.to_string()));
        rows.push(("hW02".into(), r.hw02.to_string()));
        rows.push(("hW11".into(), r.hw11.to_string()));
        rows.push(("m11".into(), opt(r.m11)));
        rows.push(("T02".into(), opt(r.t02)));
        for (k, v) in &r.predicates {
            rows.push((k.clone(), tri(*v)));
        }
    } else if let Some(e) = hw_json.get("error") {
        rows.push(("error".into(), e.as_str().unwrap_or_default().to_string()));
    }

    let diag = diagnose_negativity(&s);
    rows.push(("negativity".into(), diag.to_string()));
    if let Some(c) = &diag.contradiction {
        ok = false;
        rows.push(("contradiction".into(), c.clone()));
    }

    let (raynaud_json, raynaud) = section(raynaud_bounds(&s), &mut ok)?;
    if let Some(r) = &raynaud {
        for (k, v) in &r.checks {
            rows.push((format!("raynaud:{k}"), tri(*v)));
            if *v == Some(false) {
                ok = false;
            }
        }
        notes.extend(r.notes.iter().cloned());
    }

    let (suff_json, suff) = section(sufficient_conditions_5c2(&s), &mut ok)?;
    for c in suff.iter().flatten() {
        rows.push((
            format!("5c2:{}", c.name),
            if c.hypotheses_met {
                "met".into()
            } else {
                "not met".into()
            },
        ));
    }

    let (dich_json, dich) = section(supersingular_dichotomy(&s), &mut ok)?;
    if let Some(d) = dich {
        rows.push(("supersingular_dichotomy".into(), format!("{d:?}")));
    }

    let (ord_json, ord) = section(ordinary_conjecture_consequences(&s), &mut ok)?;
    if let Some(o) = &ord {
        for (k, v) in &o.checks {
            rows.push((format!("conditional:{k}"), tri(*v)));
        }
        notes.push(o.label.to_string());
    }
    rows.push(("status".into(), if ok { "ok" } else { "failed" }.into()));

    let doc = json!({
        "input": s,
        "violations": violations,
        "hodge_witt": hw_json,
        "negativity": {
            "hw11": diag.hw11,
            "verdict": diag.verdict.to_string(),
            "notes": diag.notes,
            "contradiction": diag.contradiction,
        },
        "raynaud": raynaud_json,
        "sufficient_conditions_5c2": suff_json,
        "supersingular_dichotomy": dich_json,
        "ordinary_conditional": ord_json,
        "ok": ok,
    });
    Ok(Outcome {
        report: Report::fields(&doc, rows)?.with_notes(notes),
        ok,
    })
}

#[derive(Args, Debug, Default)]
pub struct ThreefoldArgs {
    /// JSON file with a threefold record; overrides the inline flags.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub c1c2: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub c3: Option<i64>,
    #[arg(long)]
    pub b2: Option<i64>,
    #[arg(long)]
    pub b3: Option<i64>,
    #[arg(long)]
    pub calabi_yau: bool,
    /// H^0(X, Omega^1) = 0 is known.
    #[arg(long)]
    pub h0_omega1_zero: bool,
    /// The threefold is known to be Hodge-Witt.
    #[arg(long)]
    pub hodge_witt: bool,
}

pub fn threefold(args: &ThreefoldArgs) -> Result<Outcome> {
    let t: ThreefoldInvariants = match &args.input {
        Some(path) => read_json(path)?,
        None => ThreefoldInvariants {
            c1c2: args.c1c2,
            c3: args.c3,
            b2: args
                .b2
                .ok_or_else(|| UsageError("missing required flag --b2 (or use --input)".into()))?,
            b3: args.b3,
            hodge: None,
            is_calabi_yau: args.calabi_yau,
            hodge_witt: args.hodge_witt.then_some(true),
            h2cris_torsion_free: None,
            h0_omega1_zero: args.h0_omega1_zero.then_some(true),
        },
    };
    let violations = validate_threefold(&t);
    let mut ok = violations.is_empty();
    let mut rows: Vec<(String, String)> = violations
        .iter()
        .map(|v| ("violation".to_string(), v.clone()))
        .collect();
    let report = match threefold_report(&t) {
        Ok(r) => Some(r),
        Err(ThreefoldError::Precondition(msg)) => return Err(UsageError(msg).into()),
        Err(e) => {
            ok = false;
            rows.push(("error".into(), e.to_string()));
            None
        }
    };
    if let Some(r) = &report {
        rows.push(("c3".into(), r.c3.to_string()));
        rows.push(("b3".into(), opt(r.b3)));
        rows.push(("chi(Omega^1)".into(), r.chi_omega1.to_string()));
        if let Some(table) = &r.hodge_witt {
            for (i, row) in table.hw.rows().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                rows.push((format!("hW row {i}"), cells.join(" ")));
            }
            rows.push(("hW12".into(), table.hw.get(1, 2).to_string()));
        }
        rows.push(("crew_consistent".into(), tri(r.crew_consistent)));
        if r.crew_consistent == Some(false) || r.symmetries_consistent == Some(false) {
            ok = false;
        }
        if let Some(c) = &r.characterization {
            for cond in &c.conditions {
                rows.push((
                    format!("condition {}: {}", cond.id, cond.statement),
                    cond.status.to_string(),
                ));
            }
            rows.push((
                "liftability".into(),
                if c.nonliftable {
                    "non-liftable"
                } else {
                    "not excluded"
                }
                .into(),
            ));
        }
        rows.push(("c3<=2b2".into(), tri(r.liftability_necessary)));
        if let Some(label) = &r.conjecturally_liftable {
            rows.push(("conjecture".into(), label.clone()));
        }
    }
    rows.push(("status".into(), if ok { "ok" } else { "failed" }.into()));
    let doc = json!({ "input": t, "violations": violations, "report": report, "ok": ok });
    Ok(Outcome {
        report: Report::fields(&doc, rows)?,
        ok,
    })
}

#[derive(Args, Debug)]
pub struct SzpiroArgs {
    #[arg(long)]
    pub g: i64,
    #[arg(long)]
    pub q: i64,
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub b1: i64,
    #[arg(long, default_value_t = 1)]
    pub n_min: u32,
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
    /// Report the least n with c1^2 > p^m c2 for each m.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32])]
    pub m: Vec<u32>,
}

pub const SZPIRO_HEADERS: [&str; 8] = [
    "n",
    "c1sq",
    "c2",
    "b1",
    "hW11",
    "c1sq<=5c2",
    "c1sq<=5c2+6b1",
    "hW11>=0",
];

pub fn szpiro_row(fam: &SzpiroFamily, n: u32) -> Result<Vec<String>, SurfaceError> {
    let m = fam.member(n)?;
    Ok(vec![
        m.n.to_string(),
        m.c1sq.to_string(),
        m.c2.to_string(),
        m.b1.to_string(),
        m.hw11.to_string(),
        (m.c1sq <= 5 * m.c2).to_string(),
        (m.c1sq <= 5 * m.c2 + 6 * m.b1).to_string(),
        (m.hw11 >= 0).to_string(),
    ])
}

pub fn szpiro(args: &SzpiroArgs) -> Result<Outcome> {
    if args.n_min > args.n_max {
        return Err(UsageError(format!(
            "--n-min {} exceeds --n-max {}",
            args.n_min, args.n_max
        ))
        .into());
    }
    let fam = SzpiroFamily {
        g: args.g,
        q: args.q,
        d: args.d,
        p: args.p,
        b1: args.b1,
    };
    let mut members = Vec::new();
    let mut rows = Vec::new();
    for n in args.n_min..=args.n_max {
        members.push(fam.member(n)?);
        rows.push(szpiro_row(&fam, n)?);
    }
    let mut least = BTreeMap::new();
    let mut notes = Vec::new();
    for &m in &args.m {
        let n = fam.least_n_exceeding(m)?;
        notes.push(format!("least n with c1^2 > p^{m} c2: {n}"));
        least.insert(m.to_string(), n);
    }
    let decreasing = members.windows(2).all(|w| w[1].hw11 < w[0].hw11);
    let doc = json!({
        "family": fam,
        "members": members,
        "least_n_exceeding": least,
        "hw11_strictly_decreasing": decreasing,
    });
    let headers = SZPIRO_HEADERS.iter().map(|s| s.to_string()).collect();
    Ok(Outcome {
        report: Report::rows(&doc, headers, rows)?.with_notes(notes),
        ok: decreasing,
    })
}
