//! JSON matrix format: `{"n": 3, "re": [[..], ..], "im": [[..], ..]}`.
//! `im` may be omitted, meaning zero. Row index first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Complex, ComplexMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn into_matrix(self) -> Result<ComplexMatrix> {
        let n = self.n;
        let check = |rows: &Vec<Vec<f64>>, what: &str| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("`{what}` must be an {n}x{n} array")));
            }
            Ok(())
        };
        check(&self.re, "re")?;
        if let Some(im) = &self.im {
            check(im, "im")?;
        }
        let data = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                Complex::new(self.re[i][j], self.im.as_ref().map_or(0.0, |im| im[i][j]))
            })
            .collect();
        ComplexMatrix::from_row_major(n, data)
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.n();
        let rows =
            |f: fn(&Complex) -> f64| (0..n).map(|i| m.row(i).iter().map(f).collect()).collect();
        Self {
            n,
            re: rows(|z| z.re),
            im: Some(rows(|z| z.im)),
        }
    }
}

pub fn parse_matrix(s: &str) -> Result<ComplexMatrix> {
    let doc: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_matrix()
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixJson::from_matrix(m)).expect("plain data serialises")
}
