use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ALGEBRAIC_TOL};

const SUM_TOL: f64 = 1e-12;
const FILE_SUM_TOL: f64 = 1e-9;

/// Frequencies `p[i][j]` of the ternary bigrams, i.e. of the coding operations `U_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable {
    p: [[f64; 3]; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FrequencyFile {
    p: [[f64; 3]; 3],
}

impl FrequencyTable {
    pub fn new(p: [[f64; 3]; 3]) -> Result<Self> {
        Self::validate(&p, SUM_TOL)?;
        Ok(Self { p })
    }

    pub fn uniform() -> Self {
        Self { p: [[1.0 / 9.0; 3]; 3] }
    }

    fn validate(p: &[[f64; 3]; 3], tol: f64) -> Result<f64> {
        for (i, row) in p.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidFrequencies(format!("p{i}{j} is not finite")));
                }
                if v < 0.0 {
                    return Err(Error::InvalidFrequencies(format!("p{i}{j} = {v} is negative")));
                }
            }
        }
        let total: f64 = p.iter().flatten().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidFrequencies(format!("entries sum to {total}, expected 1")));
        }
        Ok(total)
    }

    /// Parses `{"p": [[p00,p01,p02],[p10,p11,p12],[p20,p21,p22]]}`; the sum may be off by up
    /// to `1e-9` and is then rescaled to one.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: FrequencyFile = serde_json::from_str(text)?;
        let total = Self::validate(&file.p, FILE_SUM_TOL)?;
        if (total - 1.0).abs() <= ALGEBRAIC_TOL {
            return Ok(Self { p: file.p });
        }
        Ok(Self { p: file.p.map(|row| row.map(|v| v / total)) })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain numbers serialize")
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i][j]
    }

    pub fn as_array(&self) -> &[[f64; 3]; 3] {
        &self.p
    }

    /// `{p_0j, p_1j, p_2j}`: the frequencies of the coding operations sharing shift `j`.
    pub fn group(&self, j: usize) -> [f64; 3] {
        [self.p[0][j], self.p[1][j], self.p[2][j]]
    }

    pub fn group_sums(&self) -> [f64; 3] {
        std::array::from_fn(|j| self.group(j).iter().sum())
    }

    /// Flattened in bigram order `00, 01, 02, 10, …` (index `3i + j`).
    pub fn flat(&self) -> [f64; 9] {
        std::array::from_fn(|n| self.p[n / 3][n % 3])
    }
}

/// Frequency sets of the five curves of the information-vs-detection figure, with their
/// published source entropies (trit per bigram).
pub fn table1() -> [(FrequencyTable, f64); 5] {
    // Published column order is p00 p10 p20 p01 p11 p21 p02 p12 p22.
    let from_columns = |v: [f64; 9]| FrequencyTable {
        p: [[v[0], v[3], v[6]], [v[1], v[4], v[7]], [v[2], v[5], v[8]]],
    };
    let (a, b, c) = (1.0 / 6.0, 1.0 / 9.0, 1.0 / 18.0);
    [
        (FrequencyTable::uniform(), 2.000),
        (from_columns([a, b, c, a, c, b, c, b, a]), 1.921),
        (from_columns([2.0 / 9.0, 0.0, 2.0 / 9.0, 0.0, 2.0 / 9.0, 0.0, 2.0 / 9.0, 0.0, 1.0 / 9.0]), 1.439),
        (from_columns([0.4, 0.1, 0.0, 0.0, 0.4, 0.1, 0.0, 0.0, 0.0]), 1.086),
        (from_columns([2.0 / 3.0, 0.0, 0.0, 0.0, 1.0 / 3.0, 0.0, 0.0, 0.0, 0.0]), 0.579),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_rows_are_valid() {
        for (t, _) in table1() {
            FrequencyTable::new(*t.as_array()).unwrap();
        }
        let row4 = table1()[3].0;
        assert_eq!(row4.get(0, 0), 0.4);
        assert_eq!(row4.get(1, 0), 0.1);
        assert_eq!(row4.get(1, 1), 0.4);
        assert_eq!(row4.get(2, 1), 0.1);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let t = table1()[1].0;
        assert_eq!(FrequencyTable::from_json(&t.to_json()).unwrap(), t);
        let err = FrequencyTable::from_json(r#"{"p":[[0.1,0.1,0.1],[0.1,0.1,0.1],[0.1,0.1,0.1]]}"#).unwrap_err();
        assert!(err.to_string().contains("sum"), "{err}");
        let err = FrequencyTable::from_json(r#"{"p":[[1.1,-0.1,0],[0,0,0],[0,0,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("negative"), "{err}");
        assert!(FrequencyTable::from_json(r#"{"p":[[1,0,0],[0,0,0]]}"#).is_err());
        assert!(FrequencyTable::from_json(r#"{"q":[[1,0,0],[0,0,0],[0,0,0]]}"#).is_err());
    }

    #[test]
    fn groups_fix_the_second_index() {
        let t = table1()[4].0;
        assert_eq!(t.group(0), [2.0 / 3.0, 0.0, 0.0]);
        assert_eq!(t.group(1), [0.0, 1.0 / 3.0, 0.0]);
        assert_eq!(t.group_sums(), [2.0 / 3.0, 1.0 / 3.0, 0.0]);
    }
}
