//! Dense matrices over one exact scalar domain. Everything here is exact:
//! elimination over the rationals runs on cleared-denominator integer rows with
//! content reduction, and the field domains eliminate with exact inverses.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::Polynomial;
use crate::exact::scalar::{Domain, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, domain: Domain, entries: Vec<Scalar>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.domain() != domain {
                return Err(Error::DomainMismatch(
                    domain.to_string(),
                    e.domain().to_string(),
                ));
            }
        }
        Ok(Matrix {
            rows,
            cols,
            domain,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        domain: &Domain,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Matrix> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, domain.clone(), entries)
    }

    pub fn from_int_rows(domain: &Domain, grid: &[Vec<i64>]) -> Result<Matrix> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if grid.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged integer grid".into()));
        }
        let entries = grid
            .iter()
            .flat_map(|r| r.iter().map(|&v| Scalar::from_int(v, domain)))
            .collect();
        Matrix::new(rows, cols, domain.clone(), entries)
    }

    pub fn zero(rows: usize, cols: usize, domain: &Domain) -> Matrix {
        Matrix {
            rows,
            cols,
            domain: domain.clone(),
            entries: vec![Scalar::zero(domain); rows * cols],
        }
    }

    pub fn identity(n: usize, domain: &Domain) -> Matrix {
        let mut m = Matrix::zero(n, n, domain);
        for i in 0..n {
            *m.entry_mut(i, i) = Scalar::one(domain);
        }
        m
    }

    pub fn from_columns(rows: usize, domain: &Domain, cols: &[Vec<Scalar>]) -> Result<Matrix> {
        for c in cols {
            if c.len() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "column of length {} in a {rows}-row matrix",
                    c.len()
                )));
            }
        }
        Matrix::from_fn(rows, cols.len(), domain, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.domain(), self.domain, "entry domain mismatch");
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, &self.domain, |i, j| {
            self.get(j, i).clone()
        })
        .unwrap()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn flatten(&self) -> &[Scalar] {
        &self.entries
    }

    fn check_same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch(
                self.domain.to_string(),
                rhs.domain.to_string(),
            ));
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            domain: self.domain.clone(),
            entries,
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            domain: self.domain.clone(),
            entries: self.entries.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            domain: self.domain.clone(),
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch(
                self.domain.to_string(),
                rhs.domain.to_string(),
            ));
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, rhs.cols, &self.domain);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.rows, &self.domain);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t = Scalar::zero(&self.domain);
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        Ok(t)
    }

    /// Exact rank. Rational matrices are cleared to integer rows and reduced
    /// fraction-free; field domains eliminate directly.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match &self.domain {
            Domain::Rational => {
                let rows: Vec<Vec<BigInt>> =
                    (0..self.rows).map(|i| clear_row(self.row(i))).collect();
                integer_rank(rows)
            }
            _ => {
                let mut work: Vec<Vec<Scalar>> =
                    (0..self.rows).map(|i| self.row(i).to_vec()).collect();
                field_rref(&mut work).len()
            }
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut work: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = field_rref(&mut work);
        let entries = work.into_iter().flatten().collect();
        (
            Matrix {
                rows: self.rows,
                cols: self.cols,
                domain: self.domain.clone(),
                entries,
            },
            pivots,
        )
    }

    /// Basis of the right kernel, one column per free variable, in column
    /// order. The deterministic RREF construction makes the output canonical.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut m = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                m[col] = Some(row);
            }
            m
        };
        let free: Vec<usize> = (0..self.cols).filter(|j| pivot_set[*j].is_none()).collect();
        let mut basis = Matrix::zero(self.cols, free.len(), &self.domain);
        for (k, &fj) in free.iter().enumerate() {
            *basis.entry_mut(fj, k) = Scalar::one(&self.domain);
            for j in 0..self.cols {
                if let Some(prow) = pivot_set[j] {
                    *basis.entry_mut(j, k) = r.get(prow, fj).neg();
                }
            }
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one(&self.domain));
        }
        let mut work: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Scalar::one(&self.domain);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !work[r][col].is_zero()) else {
                return Ok(Scalar::zero(&self.domain));
            };
            if p != col {
                work.swap(p, col);
                det = det.neg();
            }
            let pivot = work[col][col].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv()?;
            for r in col + 1..n {
                let factor = work[r][col].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let t = work[col][c].mul(&factor);
                    work[r][c] = work[r][c].sub(&t);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut work: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Scalar::one(&self.domain)
                    } else {
                        Scalar::zero(&self.domain)
                    }
                }));
                row
            })
            .collect();
        let pivots = field_rref(&mut work);
        if pivots.len() < n || pivots.iter().enumerate().any(|(r, &c)| c != r) {
            return Err(Error::Singular);
        }
        Matrix::from_fn(n, n, &self.domain, |i, j| work[i][n + j].clone())
    }

    /// Particular solution of `self * X = rhs` (free variables set to zero).
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch(
                self.domain.to_string(),
                rhs.domain.to_string(),
            ));
        }
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{} equation rows vs {} rhs rows",
                self.rows, rhs.rows
            )));
        }
        let mut work: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend(rhs.row(i).iter().cloned());
                row
            })
            .collect();
        let pivots = field_rref(&mut work);
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::Inconsistency("linear system has no solution".into()));
        }
        let mut x = Matrix::zero(self.cols, rhs.cols, &self.domain);
        for (row, &col) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                *x.entry_mut(col, j) = work[row][self.cols + j].clone();
            }
        }
        Ok(x)
    }

    /// Least-degree monic polynomial killing the matrix, found by the first
    /// linear dependence among flattened powers I, M, M², …
    pub fn minimal_polynomial(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Polynomial::new(self.domain.clone(), vec![Scalar::one(&self.domain)]);
        }
        let mut powers: Vec<Matrix> = vec![Matrix::identity(n, &self.domain)];
        for d in 1..=n {
            let next = powers.last().unwrap().mul(self)?;
            powers.push(next);
            let stacked = Matrix::from_fn(n * n, d + 1, &self.domain, |i, j| {
                powers[j].entries[i].clone()
            })?;
            if stacked.rank() < d + 1 {
                let kernel = stacked.kernel_basis();
                debug_assert_eq!(kernel.cols(), 1);
                let coeffs = kernel.column(0);
                // The top coefficient is nonzero: powers up to d−1 were independent.
                let lead_inv = coeffs[d].inv()?;
                let cs = coeffs.iter().map(|c| c.mul(&lead_inv)).collect();
                return Polynomial::new(self.domain.clone(), cs);
            }
        }
        Err(Error::Inconsistency(
            "no dependence among matrix powers up to the dimension".into(),
        ))
    }

    /// Characteristic polynomial det(tI − M) by the trace recurrence
    /// M_k = M(M_{k−1} + c_{k−1}I), c_k = −tr(M_k)/k, which divides by
    /// 1..n and therefore needs characteristic 0 or > n.
    pub fn char_polynomial(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let l = self.domain.characteristic();
        if l != 0 && l <= n as u64 {
            return Err(Error::SmallCharacteristic {
                modulus: l,
                needed: n,
            });
        }
        let mut coeffs = vec![Scalar::zero(&self.domain); n + 1];
        coeffs[n] = Scalar::one(&self.domain);
        let mut mk = self.clone();
        let mut ck = Scalar::one(&self.domain);
        for k in 1..=n {
            if k > 1 {
                let shifted = mk.add(&Matrix::identity(n, &self.domain).scale(&ck))?;
                mk = self.mul(&shifted)?;
            }
            ck = mk
                .trace()?
                .neg()
                .div(&Scalar::from_int(k as i64, &self.domain))?;
            coeffs[n - k] = ck.clone();
        }
        Polynomial::new(self.domain.clone(), coeffs)
    }
}

/// Dimension of the span of the given matrices inside the full matrix space,
/// each matrix flattened to a vector. All inputs must share shape and domain.
pub fn span_rank(mats: &[Matrix]) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Ok(0);
    };
    let (r, c, domain) = (first.rows(), first.cols(), first.domain().clone());
    for m in mats {
        if m.rows() != r || m.cols() != c {
            return Err(Error::ShapeMismatch("span of mixed shapes".into()));
        }
        if *m.domain() != domain {
            return Err(Error::DomainMismatch(
                domain.to_string(),
                m.domain().to_string(),
            ));
        }
    }
    let stacked = Matrix::from_fn(mats.len(), r * c, &domain, |i, j| {
        mats[i].flatten()[j].clone()
    })?;
    Ok(stacked.rank())
}

/// In-place reduced row echelon form over a field; returns pivot columns.
fn field_rref(work: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = work.len();
    let cols = work.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow >= rows {
            break;
        }
        let Some(p) = (prow..rows).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(p, prow);
        let inv = work[prow][col].inv().expect("nonzero field element inverts");
        for c in col..cols {
            work[prow][c] = work[prow][c].mul(&inv);
        }
        for r in 0..rows {
            if r == prow || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            for c in col..cols {
                let t = work[prow][c].mul(&factor);
                work[r][c] = work[r][c].sub(&t);
            }
        }
        pivots.push(col);
        prow += 1;
    }
    pivots
}

fn clear_row(row: &[Scalar]) -> Vec<BigInt> {
    let rats: Vec<BigRational> = row
        .iter()
        .map(|s| match s {
            Scalar::Rat(r) => r.clone(),
            _ => unreachable!("integer clearing on non-rational row"),
        })
        .collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    reduce_content(ints)
}

fn reduce_content(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for v in &row {
        g = g.gcd(v);
        if g.is_one() {
            return row;
        }
    }
    if g > BigInt::one() {
        for v in &mut row {
            *v = &*v / &g;
        }
    }
    row
}

/// Fraction-free elimination: cross-multiply rows, divide by the pivot/entry
/// gcd up front, reduce content after each update. Only the rank survives.
fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prow = 0;
    for col in 0..ncols {
        if prow >= nrows {
            break;
        }
        // Smallest nonzero pivot keeps the cross-multiplication growth down.
        let pivot_row = (prow..nrows)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].magnitude().clone());
        let Some(p) = pivot_row else {
            continue;
        };
        rows.swap(p, prow);
        let pivot = rows[prow][col].clone();
        for r in prow + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let g = pivot.gcd(&rows[r][col]);
            let mp = &pivot / &g;
            let mr = &rows[r][col] / &g;
            for c in col..ncols {
                let t = &rows[r][c] * &mp - &rows[prow][c] * &mr;
                rows[r][c] = t;
            }
            let reduced = reduce_content(std::mem::take(&mut rows[r]));
            rows[r] = reduced;
        }
        rank += 1;
        prow += 1;
    }
    rank
}
