//! Hodge-Witt numbers `h^{i,j}_W = m^{i,j} + T^{i,j} - 2T^{i-1,j+1} + T^{i-2,j+2}`,
//! the domino recursion for Mazur-Ogus varieties, and the identities that
//! tie Hodge-Witt numbers to Hodge and Betti numbers.

use serde::{Deserialize, Serialize};

use crate::error::HodgeWittError;
use crate::matrix::IntMatrix;

/// Hodge-Witt data of one `dim`-dimensional variety.
///
/// `m` and `T` are optional because some constructions (for instance the
/// Calabi-Yau formulaire) pin down `h^{i,j}_W` without determining how it
/// splits into slope and domino parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeWittTable {
    pub dim: u32,
    pub m: Option<IntMatrix>,
    #[serde(rename = "T")]
    pub t: Option<IntMatrix>,
    #[serde(rename = "hW")]
    pub hw: IntMatrix,
    pub hodge: Option<IntMatrix>,
    pub chi: Option<Vec<i64>>,
}

impl HodgeWittTable {
    /// Table from slope and domino numbers, with `hW` computed.
    pub fn from_parts(dim: u32, m: IntMatrix, t: IntMatrix) -> Result<Self, HodgeWittError> {
        let hw = hodge_witt_from_parts(&m, &t)?;
        Ok(HodgeWittTable {
            dim,
            m: Some(m),
            t: Some(t),
            hw,
            hodge: None,
            chi: None,
        })
    }

    pub fn with_hodge(mut self, hodge: IntMatrix) -> Self {
        self.hodge = Some(hodge);
        self
    }

    /// `chi(Omega^i)`, from the stored list or else from the Hodge numbers.
    pub fn chi_values(&self) -> Option<Vec<i64>> {
        self.chi
            .clone()
            .or_else(|| self.hodge.as_ref().map(alternating_row_sums))
    }

    /// Structural problems: shapes, negative dominoes, and `hW` disagreeing
    /// with the defining formula.
    pub fn violations(&self) -> Vec<String> {
        let size = self.dim as usize + 1;
        let mut out = Vec::new();
        let named = [
            ("m", self.m.as_ref()),
            ("T", self.t.as_ref()),
            ("hW", Some(&self.hw)),
            ("hodge", self.hodge.as_ref()),
        ];
        for (name, mat) in named {
            if let Some(mat) = mat {
                if mat.size() != size {
                    out.push(format!(
                        "{name} is {0}x{0}, expected {size}x{size}",
                        mat.size()
                    ));
                }
            }
        }
        if let Some(t) = &self.t {
            if let Some((i, j, v)) = t.entries().find(|(_, _, v)| *v < 0) {
                out.push(format!("T^{{{i},{j}}} = {v} is negative"));
            }
        }
        if let (Some(m), Some(t)) = (&self.m, &self.t) {
            match hodge_witt_from_parts(m, t) {
                Ok(hw) if hw == self.hw => {}
                Ok(_) => out.push("hW does not match m + T - 2T + T".to_string()),
                Err(e) => out.push(e.to_string()),
            }
        }
        out
    }
}

/// `sum_j (-1)^j row_i[j]` for every row.
pub fn alternating_row_sums(mat: &IntMatrix) -> Vec<i64> {
    mat.rows()
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, v)| if j % 2 == 0 { *v } else { -*v })
                .sum()
        })
        .collect()
}

fn hw_entry(m: &IntMatrix, t: &IntMatrix, i: i64, j: i64) -> i64 {
    m.at(i, j) + t.at(i, j) - 2 * t.at(i - 1, j + 1) + t.at(i - 2, j + 2)
}

/// `h^{i,j}_W = m^{i,j} + T^{i,j} - 2T^{i-1,j+1} + T^{i-2,j+2}` entrywise.
pub fn hodge_witt_from_parts(m: &IntMatrix, t: &IntMatrix) -> Result<IntMatrix, HodgeWittError> {
    if m.size() != t.size() {
        return Err(HodgeWittError::ShapeMismatch(format!(
            "m is {0}x{0}, T is {1}x{1}",
            m.size(),
            t.size()
        )));
    }
    if let Some((i, j, value)) = t.entries().find(|(_, _, v)| *v < 0) {
        return Err(HodgeWittError::NegativeDomino { i, j, value });
    }
    Ok(IntMatrix::from_fn(m.size(), |i, j| {
        hw_entry(m, t, i as i64, j as i64)
    }))
}

/// Domino numbers of a Mazur-Ogus variety, where `h^{i,j}_W = h^{i,j}`:
///
/// ```text
///   T^{i,j} = h^{i,j} - m^{i,j} + 2T^{i-1,j+1} - T^{i-2,j+2}
/// ```
///
/// evaluated for `j = n` down to `0`, and within each column for `i`
/// ascending. Every entry on the right is then either out of range or
/// already known. A negative entry proves the input is not Mazur-Ogus.
pub fn mazur_ogus_dominoes(
    hodge: &IntMatrix,
    m: &IntMatrix,
    n: u32,
) -> Result<IntMatrix, HodgeWittError> {
    let size = n as usize + 1;
    if hodge.size() != size || m.size() != size {
        return Err(HodgeWittError::ShapeMismatch(format!(
            "hodge is {0}x{0}, m is {1}x{1}, expected {size}x{size}",
            hodge.size(),
            m.size()
        )));
    }
    let mut t = IntMatrix::zeros(size);
    for j in (0..size).rev() {
        for i in 0..size {
            let (ii, jj) = (i as i64, j as i64);
            let value =
                hodge.get(i, j) - m.get(i, j) + 2 * t.at(ii - 1, jj + 1) - t.at(ii - 2, jj + 2);
            if value < 0 {
                return Err(HodgeWittError::NotMazurOgus { i, j, value });
            }
            t.set(i, j, value);
        }
    }
    Ok(t)
}

/// `sum_j (-1)^j h^{i,j}_W = chi(Omega^i) = sum_j (-1)^j h^{i,j}` for each
/// `i`. Needs `hodge` or `chi`; when both are present all three must agree.
pub fn check_crew_formula(t: &HodgeWittTable) -> bool {
    let Some(chi) = t.chi_values() else {
        return false;
    };
    let from_hw = alternating_row_sums(&t.hw);
    if from_hw != chi {
        return false;
    }
    match &t.hodge {
        Some(h) => alternating_row_sums(h) == chi,
        None => true,
    }
}

/// `h^{i,j}_W <= h^{i,j}` entrywise, with equality demanded for Mazur-Ogus
/// varieties. False when Hodge numbers are absent.
pub fn check_ekedahl_bound(t: &HodgeWittTable, mazur_ogus: bool) -> bool {
    let Some(h) = &t.hodge else {
        return false;
    };
    if h.size() != t.hw.size() {
        return false;
    }
    if mazur_ogus {
        t.hw == *h
    } else {
        t.hw.entries().all(|(i, j, v)| v <= h.get(i, j))
    }
}

/// `T^{i,j} = T^{n-i-2, n-j+2}` for every in-range `(i, j)`, reading
/// out-of-range dual slots as zero.
pub fn check_domino_duality(t: &IntMatrix, n: u32) -> bool {
    let n = n as i64;
    if t.size() as i64 != n + 1 {
        return false;
    }
    t.entries()
        .all(|(i, j, v)| v == t.at(n - i as i64 - 2, n - j as i64 + 2))
}

/// Hodge-Witt symmetry (`h^{i,j}_W = h^{j,i}_W`, only for `dim <= 3`),
/// Hodge-Witt duality (`h^{i,j}_W = h^{n-i,n-j}_W`), and the Betti sums
/// `sum_{i+j=k} h^{i,j}_W = sum_{i+j=k} m^{i,j}` when slope numbers are
/// present.
pub fn check_hw_symmetries(t: &HodgeWittTable) -> bool {
    let hw = &t.hw;
    let n = hw.size().saturating_sub(1);
    if t.dim <= 3 && *hw != hw.transpose() {
        return false;
    }
    if !hw.entries().all(|(i, j, v)| v == hw.get(n - i, n - j)) {
        return false;
    }
    if let Some(m) = &t.m {
        if m.size() != hw.size() {
            return false;
        }
        return (0..=2 * n).all(|k| hw.antidiagonal_sum(k) == m.antidiagonal_sum(k));
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn k3_hodge() -> IntMatrix {
        mat(&[&[1, 0, 1], &[0, 20, 0], &[1, 0, 1]])
    }

    fn supersingular_k3_m() -> IntMatrix {
        mat(&[&[1, 0, 0], &[0, 22, 0], &[0, 0, 1]])
    }

    #[test]
    fn zero_dominoes_give_slope_numbers() {
        let m = k3_hodge();
        assert_eq!(hodge_witt_from_parts(&m, &IntMatrix::zeros(3)).unwrap(), m);
    }

    #[test]
    fn supersingular_k3_hw11() {
        let mut t = IntMatrix::zeros(3);
        t.set(0, 2, 1);
        let hw = hodge_witt_from_parts(&supersingular_k3_m(), &t).unwrap();
        assert_eq!(hw.get(1, 1), 20);
        assert_eq!(hw, k3_hodge());
    }

    #[test]
    fn threefold_negative_hw12() {
        let m = IntMatrix::zeros(4);
        let mut t = IntMatrix::zeros(4);
        t.set(0, 3, 1);
        t.set(1, 2, 1);
        let hw = hodge_witt_from_parts(&m, &t).unwrap();
        assert_eq!(hw.get(1, 2), -1);
    }

    #[test]
    fn shape_and_sign_errors() {
        assert!(matches!(
            hodge_witt_from_parts(&IntMatrix::zeros(3), &IntMatrix::zeros(4)),
            Err(HodgeWittError::ShapeMismatch(_))
        ));
        let mut t = IntMatrix::zeros(3);
        t.set(0, 2, -1);
        assert!(matches!(
            hodge_witt_from_parts(&IntMatrix::zeros(3), &t),
            Err(HodgeWittError::NegativeDomino {
                i: 0,
                j: 2,
                value: -1
            })
        ));
    }

    #[test]
    fn mazur_ogus_examples() {
        let t = mazur_ogus_dominoes(&k3_hodge(), &supersingular_k3_m(), 2).unwrap();
        let mut expected = IntMatrix::zeros(3);
        expected.set(0, 2, 1);
        assert_eq!(t, expected);

        // ordinary K3: slope numbers equal Hodge numbers
        assert_eq!(
            mazur_ogus_dominoes(&k3_hodge(), &k3_hodge(), 2).unwrap(),
            IntMatrix::zeros(3)
        );

        // quintic surface, H^2 pure slope one
        let hodge = mat(&[&[1, 0, 4], &[0, 45, 0], &[4, 0, 1]]);
        let m = mat(&[&[1, 0, 0], &[0, 53, 0], &[0, 0, 1]]);
        let t = mazur_ogus_dominoes(&hodge, &m, 2).unwrap();
        assert_eq!(t.get(0, 2), 4);
        assert_eq!(hodge_witt_from_parts(&m, &t).unwrap(), hodge);
    }

    #[test]
    fn mazur_ogus_rejects_inconsistent_input() {
        // slope numbers exceeding Hodge numbers in the corner
        let hodge = k3_hodge();
        let m = mat(&[&[1, 0, 2], &[0, 18, 0], &[2, 0, 1]]);
        assert!(matches!(
            mazur_ogus_dominoes(&hodge, &m, 2),
            Err(HodgeWittError::NotMazurOgus {
                i: 0,
                j: 2,
                value: -1
            })
        ));
    }

    #[test]
    fn crew_formula_k3() {
        let table = HodgeWittTable::from_parts(2, k3_hodge(), IntMatrix::zeros(3))
            .unwrap()
            .with_hodge(k3_hodge());
        assert_eq!(table.chi_values().unwrap()[0], 2);
        assert!(check_crew_formula(&table));
        let mut broken = table.clone();
        broken.hw.set(0, 2, 2);
        assert!(!check_crew_formula(&broken));
        let mut missing = table;
        missing.hodge = None;
        assert!(!check_crew_formula(&missing));
    }

    #[test]
    fn ekedahl_bound() {
        let mut t = IntMatrix::zeros(3);
        t.set(0, 2, 1);
        let ss = HodgeWittTable::from_parts(2, supersingular_k3_m(), t)
            .unwrap()
            .with_hodge(k3_hodge());
        assert!(check_ekedahl_bound(&ss, true));

        // hW^{1,1} strictly below h^{1,1}, possibly negative
        let mut deep = ss.clone();
        deep.hw.set(1, 1, -19);
        assert!(check_ekedahl_bound(&deep, false));
        assert!(!check_ekedahl_bound(&deep, true));

        let mut over = ss;
        over.hw.set(1, 1, 21);
        assert!(!check_ekedahl_bound(&over, false));
    }

    #[test]
    fn domino_duality() {
        let mut t = IntMatrix::zeros(3);
        t.set(0, 2, 3);
        assert!(check_domino_duality(&t, 2));

        let mut t3 = IntMatrix::zeros(4);
        t3.set(0, 3, 1);
        assert!(!check_domino_duality(&t3, 3));
        t3.set(1, 2, 1);
        assert!(check_domino_duality(&t3, 3));

        let mut t4 = IntMatrix::zeros(5);
        t4.set(0, 4, 1);
        t4.set(1, 3, 428);
        assert!(!check_domino_duality(&t4, 4));
        t4.set(2, 2, 1);
        assert!(check_domino_duality(&t4, 4));
    }

    #[test]
    fn hw_symmetries() {
        let p2 = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let table = HodgeWittTable::from_parts(2, p2.clone(), IntMatrix::zeros(3)).unwrap();
        assert!(check_hw_symmetries(&table));
        let mut broken = table;
        broken.hw.set(0, 1, 1);
        assert!(!check_hw_symmetries(&broken));
    }

    #[test]
    fn table_json_field_names() {
        let table = HodgeWittTable::from_parts(2, k3_hodge(), IntMatrix::zeros(3))
            .unwrap()
            .with_hodge(k3_hodge());
        let v: serde_json::Value = serde_json::to_value(&table).unwrap();
        for key in ["dim", "m", "T", "hW", "hodge", "chi"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["hW"][1][1], 20);
        assert!(table.violations().is_empty());
    }
}
