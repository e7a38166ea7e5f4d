//! JSON file formats: matrices with stringly exact entries, and (x, y) pair
//! files built from two matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Domain, Matrix, Scalar};
use crate::orbits::NilpotentPair;

/// On-disk matrix: row-major entry strings, each parsed in the named domain
/// ("a/b" rationals with positive reduced denominator, bare residues for
/// prime fields, comma-joined coordinates for cyclotomics).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub domain: String,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &Matrix) -> MatrixFile {
        MatrixFile {
            rows: m.rows(),
            cols: m.cols(),
            domain: m.domain().to_string(),
            entries: (0..m.rows())
                .map(|i| m.row(i).iter().map(Scalar::entry_string).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        let domain: Domain = self.domain.parse()?;
        if self.entries.len() != self.rows
            || self.entries.iter().any(|r| r.len() != self.cols)
        {
            return Err(Error::ShapeMismatch(format!(
                "entry grid does not match declared {}x{}",
                self.rows, self.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for row in &self.entries {
            for cell in row {
                entries.push(Scalar::parse_entry(cell, &domain)?);
            }
        }
        Matrix::new(self.rows, self.cols, domain, entries)
    }
}

/// On-disk (x, y) pair: two matrices in the same format, x mapping the
/// q-space to the p-space and y the other way.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub x: MatrixFile,
    pub y: MatrixFile,
}

impl PairFile {
    pub fn from_pair(pair: &NilpotentPair) -> PairFile {
        PairFile {
            x: MatrixFile::from_matrix(pair.x()),
            y: MatrixFile::from_matrix(pair.y()),
        }
    }

    pub fn to_pair(&self) -> Result<NilpotentPair> {
        NilpotentPair::new(self.x.to_matrix()?, self.y.to_matrix()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedsl2::GradedDecomposition;
    use crate::orbits::representative;

    #[test]
    fn matrix_round_trip_all_domains() {
        let q = Matrix::from_int_rows(&Domain::Rational, &[vec![1, -2], vec![0, 7]]).unwrap();
        let mut q = q;
        q.set(
            0,
            0,
            Scalar::parse_entry("-3/4", &Domain::Rational).unwrap(),
        );
        let f5 = Matrix::from_int_rows(&Domain::prime_field(5).unwrap(), &[vec![3, 4]]).unwrap();
        let mut cyc = Matrix::zero(1, 1, &Domain::cyclotomic(4).unwrap());
        cyc.set(0, 0, Scalar::cyclotomic_root(4, 1).unwrap());
        for m in [q, f5, cyc] {
            let file = MatrixFile::from_matrix(&m);
            let text = serde_json::to_string(&file).unwrap();
            let back: MatrixFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_matrix().unwrap(), m);
        }
    }

    #[test]
    fn entry_strings_are_reduced_rationals() {
        let mut m = Matrix::zero(1, 2, &Domain::Rational);
        m.set(
            0,
            0,
            Scalar::parse_entry("2/4", &Domain::Rational).unwrap(),
        );
        m.set(0, 1, Scalar::from_int(-3, &Domain::Rational));
        let file = MatrixFile::from_matrix(&m);
        assert_eq!(file.entries, vec![vec!["1/2".to_string(), "-3".to_string()]]);
    }

    #[test]
    fn shape_and_domain_validation() {
        let bad = MatrixFile {
            rows: 2,
            cols: 1,
            domain: "Q".into(),
            entries: vec![vec!["1".into()]],
        };
        assert!(bad.to_matrix().is_err());
        let bad_domain = MatrixFile {
            rows: 1,
            cols: 1,
            domain: "F:5".into(),
            entries: vec![vec!["1".into()]],
        };
        assert!(bad_domain.to_matrix().is_err());
    }

    #[test]
    fn pair_round_trip() {
        let dec = GradedDecomposition::from_pairs(&[(2, 1)]);
        let pair = representative(&dec, &Domain::Rational).unwrap();
        let file = PairFile::from_pair(&pair);
        let text = serde_json::to_string_pretty(&file).unwrap();
        let back: PairFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_pair().unwrap(), pair);
    }
}
