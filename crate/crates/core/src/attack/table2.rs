//! Tabulated x-representation attack columns with their published `(d_x, d_z)` values.

use num_complex::Complex64;
use serde::Serialize;

use super::{column_z_from_x, detection_from_column, AttackColumn};

/// Agreement required between recomputed and published detection probabilities.
pub const TABLE2_TOL: f64 = 5e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Row {
    /// `(a_0, b_0, c_0)` exactly as printed.
    pub column: [Complex64; 3],
    pub d_x: f64,
    pub d_z: f64,
    pub symmetric: bool,
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const fn row(a: Complex64, b: Complex64, cc: Complex64, d_x: f64, d_z: f64, symmetric: bool) -> Table2Row {
    Table2Row { column: [a, b, cc], d_x, d_z, symmetric }
}

const ROWS: [Table2Row; 18] = [
    row(c(-0.910684, 0.0), c(0.244017, 0.0), c(-0.333333, 0.0), 0.170655, 0.666667, false),
    row(c(-0.807162, 0.0), c(0.309719, 0.0), c(-0.502558, 0.0), 0.348490, 0.666667, false),
    row(c(-0.709081, 0.0), c(0.331451, 0.0), c(-0.622370, 0.0), 0.497204, 0.666667, false),
    row(c(-0.666667, 0.0), c(0.333333, 0.0), c(-0.666667, 0.0), 0.555556, 0.666667, false),
    row(c(-0.577406, 0.0), c(0.325969, 0.0), c(-0.748563, 0.0), 0.666603, 0.666667, false),
    row(c(0.530210, -0.8), c(0.169304, -0.1), c(0.014630, 0.2), 0.078878, 0.666667, false),
    row(c(-0.909127, 0.1), c(-0.133042, -0.2), c(0.125653, -0.3), 0.163489, 0.666667, false),
    row(c(0.204236, 0.83), c(0.026660, -0.3), c(0.136663, 0.4), 0.269388, 0.666667, false),
    row(c(0.737034, 0.3), c(-0.031581, -0.5), c(0.160573, -0.3), 0.366781, 0.666667, false),
    row(c(0.674712, 0.3), c(0.525520, 0.2), c(-0.220436, -0.3), 0.454764, 0.666667, false),
    row(c(-0.531662, 0.3), c(0.463325, 0.2), c(-0.531662, 0.3), 0.627335, 0.666667, false),
    row(c(-0.497557, 0.293), c(0.459068, 0.2), c(-0.570890, 0.3), 0.666667, 0.666667, false),
    row(c(-0.953939, 0.1), c(0.0, -0.2), c(0.0, -0.2), 0.08, 0.666667, true),
    row(c(0.305505, 0.8), c(0.305505, -0.2), c(0.305505, -0.2), 0.266667, 0.666667, true),
    row(c(0.027387, 0.7), c(0.463276, -0.2), c(0.463276, -0.2), 0.50925, 0.666667, true),
    row(c(0.577350, 0.0), c(-0.288675, 0.5), c(-0.288675, 0.5), 0.666667, 0.666667, true),
    row(c(0.0, 0.577350), c(0.5, -0.288675), c(0.5, -0.288675), 0.666667, 0.666667, true),
    row(c(0.577350, 0.0), c(0.288675, 0.5), c(0.288675, 0.5), 0.666667, 0.222222, true),
];

pub fn table2_rows() -> &'static [Table2Row; 18] {
    &ROWS
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table2Check {
    pub index: usize,
    pub symmetric: bool,
    pub norm_sq: f64,
    pub d_x: f64,
    pub d_z: f64,
    pub published_d_x: f64,
    pub published_d_z: f64,
    pub dev_x: f64,
    pub dev_z: f64,
}

impl Table2Check {
    pub fn max_deviation(&self) -> f64 {
        self.dev_x.max(self.dev_z)
    }

    pub fn passes(&self) -> bool {
        self.max_deviation() <= TABLE2_TOL
    }
}

/// Recomputes `d_x = 1 − |a_0|²` and `d_z = 1 − |a_0 + b_0 + c_0|²/3` for every row.
///
/// The printed columns are normalized only to their printed precision, so they are evaluated
/// as given, without renormalization.
pub fn verify_table2() -> Vec<Table2Check> {
    ROWS.iter()
        .enumerate()
        .map(|(index, r)| {
            let col = AttackColumn::unchecked(r.column);
            let d_x = detection_from_column(&col);
            let d_z = 1.0 - column_z_from_x(&col)[0];
            Table2Check {
                index,
                symmetric: r.symmetric,
                norm_sq: col.values().iter().map(|z| z.norm_sqr()).sum(),
                d_x,
                d_z,
                published_d_x: r.d_x,
                published_d_z: r.d_z,
                dev_x: (d_x - r.d_x).abs(),
                dev_z: (d_z - r.d_z).abs(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_row_four() {
        let check = verify_table2()[3];
        assert!((check.d_x - 0.555556).abs() < 5e-6);
        assert!((check.d_z - 0.666667).abs() < 5e-6);
    }

    #[test]
    fn complex_row_six() {
        let check = verify_table2()[5];
        assert!((check.d_x - 0.078878).abs() < 5e-6);
        assert!((check.d_z - 0.666667).abs() < 5e-6);
    }

    #[test]
    fn symmetric_rows_have_equal_side_moduli() {
        for r in ROWS.iter().filter(|r| r.symmetric) {
            assert!((r.column[1].norm() - r.column[2].norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn six_digit_rows_are_unit_columns() {
        // Every printed column except the one with a three-digit imaginary part is normalized
        // to the printed precision.
        for (k, check) in verify_table2().iter().enumerate() {
            if k != 11 {
                assert!((check.norm_sq - 1.0).abs() < 2e-6, "row {k}: {}", check.norm_sq);
            }
        }
    }
}
