//! Batch scans over parameter grids. Each family is a [`ScanFamily`]
//! registered by name; rows are computed in parallel and emitted in
//! lexicographic grid order.

use std::collections::BTreeMap;

use anyhow::Result;
use clap::Args;
use rayon::prelude::*;
use serde_json::json;

use hwgeo_core::hypersurface::{
    euler_characteristic, general_type_margins, hodge_numbers_series, maximal_domino_numbers,
    DominoOutcome,
};
use hwgeo_core::surface::SzpiroFamily;

use crate::commands::{szpiro_row, Outcome, SZPIRO_HEADERS};
use crate::output::Report;
use crate::UsageError;

pub trait ScanFamily: Send + Sync {
    fn name(&self) -> &'static str;
    /// Grid axes in iteration order, each with its default value.
    fn axes(&self) -> &'static [(&'static str, i64)];
    /// Output columns after the axis columns.
    fn columns(&self) -> Vec<String>;
    fn evaluate(&self, point: &[i64]) -> Result<Vec<String>, String>;
}

pub struct SzpiroScan;

impl ScanFamily for SzpiroScan {
    fn name(&self) -> &'static str {
        "szpiro"
    }

    fn axes(&self) -> &'static [(&'static str, i64)] {
        &[("g", 2), ("q", 2), ("d", 6), ("p", 5), ("b1", 4), ("n", 1)]
    }

    fn columns(&self) -> Vec<String> {
        SZPIRO_HEADERS
            .iter()
            .filter(|h| !["n", "b1"].contains(h))
            .map(|s| s.to_string())
            .collect()
    }

    fn evaluate(&self, point: &[i64]) -> Result<Vec<String>, String> {
        let &[g, q, d, p, b1, n] = point else {
            unreachable!("six axes")
        };
        let p = u64::try_from(p).map_err(|_| format!("p = {p} is negative"))?;
        let n = u32::try_from(n).map_err(|_| format!("n = {n} is negative"))?;
        let fam = SzpiroFamily { g, q, d, p, b1 };
        let row = szpiro_row(&fam, n).map_err(|e| e.to_string())?;
        Ok(SZPIRO_HEADERS
            .iter()
            .zip(row)
            .filter(|(h, _)| !["n", "b1"].contains(h))
            .map(|(_, v)| v)
            .collect())
    }
}

pub struct HypersurfaceScan;

impl ScanFamily for HypersurfaceScan {
    fn name(&self) -> &'static str {
        "hypersurface"
    }

    fn axes(&self) -> &'static [(&'static str, i64)] {
        &[("dim", 2), ("d", 4)]
    }

    fn columns(&self) -> Vec<String> {
        [
            "h0n",
            "h1n-1",
            "h2n-2",
            "bn",
            "euler",
            "T0n_max",
            "T13_max",
            "h11-2pg",
            "h11-4pg",
            "h11-4pg>0",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect()
    }

    fn evaluate(&self, point: &[i64]) -> Result<Vec<String>, String> {
        let &[dim, d] = point else {
            unreachable!("two axes")
        };
        let n = u32::try_from(dim).map_err(|_| format!("dim = {dim} is negative"))?;
        let d = u64::try_from(d).map_err(|_| format!("d = {d} is negative"))?;
        let h = hodge_numbers_series(n, d).map_err(|e| e.to_string())?;
        let nu = n as usize;
        let middle = |p: usize| {
            if p <= nu / 2 {
                h.get(p, nu - p).to_string()
            } else {
                String::new()
            }
        };
        let (t0n, t13) = if (2..=4).contains(&n) {
            match maximal_domino_numbers(n, d, true).map_err(|e| e.to_string())? {
                DominoOutcome::Exact { t } => (
                    t.get(0, nu).to_string(),
                    if n == 4 {
                        t.get(1, 3).to_string()
                    } else {
                        String::new()
                    },
                ),
                DominoOutcome::Bounds { .. } => unreachable!("slope condition assumed"),
            }
        } else {
            (String::new(), String::new())
        };
        let margins = if n == 2 {
            let (m2, m4) = general_type_margins(d).map_err(|e| e.to_string())?;
            [m2.to_string(), m4.to_string(), (m4 > 0).to_string()]
        } else {
            Default::default()
        };
        let euler = euler_characteristic(n, d).map_err(|e| e.to_string())?;
        let mut row = vec![
            middle(0),
            middle(1),
            middle(2),
            h.antidiagonal_sum(nu).to_string(),
            euler.to_string(),
            t0n,
            t13,
        ];
        row.extend(margins);
        Ok(row)
    }
}

/// Named scan families, selectable at runtime.
pub struct ScanRegistry {
    families: BTreeMap<&'static str, Box<dyn ScanFamily>>,
}

impl ScanRegistry {
    pub fn builtin() -> Self {
        let mut r = ScanRegistry {
            families: BTreeMap::new(),
        };
        r.register(Box::new(SzpiroScan));
        r.register(Box::new(HypersurfaceScan));
        r
    }

    pub fn register(&mut self, family: Box<dyn ScanFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn ScanFamily> {
        self.families.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.keys().copied().collect()
    }
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Family to scan: szpiro or hypersurface.
    pub family: String,
    /// Axis ranges as `a..b`, `a` or `a,b,c`.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub dim: Option<String>,
}

impl ScanArgs {
    fn given(&self) -> Vec<(&'static str, &str)> {
        [
            ("d", &self.d),
            ("p", &self.p),
            ("g", &self.g),
            ("q", &self.q),
            ("n", &self.n),
            ("b1", &self.b1),
            ("dim", &self.dim),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect()
    }
}

/// Parses `a..b` (inclusive), `a`, or a comma list.
pub fn parse_range(axis: &str, spec: &str) -> Result<Vec<i64>, UsageError> {
    let bad = || UsageError(format!("--{axis}: cannot parse range {spec:?}"));
    let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    let values = if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (int(a)?, int(b.trim_start_matches('='))?);
        (a..=b).collect()
    } else {
        spec.split(',').map(int).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err(UsageError(format!("--{axis}: range {spec:?} is empty")));
    }
    Ok(values)
}

fn grid(axes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    axes.iter().fold(vec![Vec::new()], |acc, values| {
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect()
    })
}

pub fn scan(args: &ScanArgs) -> Result<Outcome> {
    let registry = ScanRegistry::builtin();
    let family = registry.get(&args.family).ok_or_else(|| {
        UsageError(format!(
            "unknown scan family {:?}; available: {}",
            args.family,
            registry.names().join(", ")
        ))
    })?;
    let mut ranges = BTreeMap::new();
    for (axis, spec) in args.given() {
        if !family.axes().iter().any(|(a, _)| *a == axis) {
            return Err(UsageError(format!(
                "--{axis} is not an axis of the {} family",
                family.name()
            ))
            .into());
        }
        ranges.insert(axis, parse_range(axis, spec)?);
    }
    let axes: Vec<Vec<i64>> = family
        .axes()
        .iter()
        .map(|(a, default)| ranges.remove(a).unwrap_or_else(|| vec![*default]))
        .collect();
    let points = grid(&axes);

    let results: Vec<Result<Vec<String>, String>> =
        points.par_iter().map(|p| family.evaluate(p)).collect();

    let mut headers: Vec<String> = family.axes().iter().map(|(a, _)| a.to_string()).collect();
    let columns = family.columns();
    headers.extend(columns.iter().cloned());
    headers.push("error".into());
    let mut rows = Vec::with_capacity(points.len());
    let mut records = Vec::with_capacity(points.len());
    let mut ok = true;
    for (point, result) in points.iter().zip(results) {
        let mut row: Vec<String> = point.iter().map(i64::to_string).collect();
        let mut record = serde_json::Map::new();
        for ((axis, _), v) in family.axes().iter().zip(point) {
            record.insert(axis.to_string(), json!(v));
        }
        match result {
            Ok(cells) => {
                for (c, v) in columns.iter().zip(&cells) {
                    record.insert(c.clone(), json!(v));
                }
                row.extend(cells);
                row.resize(headers.len() - 1, String::new());
                row.push(String::new());
            }
            Err(e) => {
                ok = false;
                record.insert("error".into(), json!(e));
                row.resize(headers.len() - 1, String::new());
                row.push(e);
            }
        }
        rows.push(row);
        records.push(record);
    }
    let doc = json!({ "family": family.name(), "rows": records });
    Ok(Outcome {
        report: Report::rows(&doc, headers, rows)?,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("n", "1..3").unwrap(), [1, 2, 3]);
        assert_eq!(parse_range("n", "4").unwrap(), [4]);
        assert_eq!(parse_range("n", "2,5").unwrap(), [2, 5]);
        assert_eq!(parse_range("n", "-1..0").unwrap(), [-1, 0]);
        assert!(parse_range("n", "3..1").is_err());
        assert!(parse_range("n", "x").is_err());
    }

    #[test]
    fn grid_is_lexicographic() {
        let g = grid(&[vec![1, 2], vec![7, 8]]);
        assert_eq!(g, [[1, 7], [1, 8], [2, 7], [2, 8]]);
    }

    #[test]
    fn registry_names() {
        assert_eq!(ScanRegistry::builtin().names(), ["hypersurface", "szpiro"]);
    }
}
