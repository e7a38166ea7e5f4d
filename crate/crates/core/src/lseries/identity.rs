//! The product identity for the partition-restricted Schur generating series:
//! Σ_{λ, last part 0} s_λ(x)·t^{|λ|}
//!   = (1 − t^n·x₁⋯x_n) · ∏_i (1−x_i t)^{−1} · ∏_{i<j} (1−x_i x_j t²)^{−1},
//! valid for odd n, verified coefficientwise with symbolic coefficients.

use super::mpoly::MultiPoly;
use super::partitions::partitions_with_last_zero;
use super::ring::Ring;
use super::schur::schur;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::par;

/// Schur generating series over partitions with vanishing last part, through
/// t-degree `truncation`. The Schur evaluations are independent and run in
/// parallel; accumulation order is fixed, so output is deterministic.
pub fn lhs_series<R>(xs: &[R], truncation: usize) -> Result<TruncatedSeries<R>>
where
    R: Ring + Send + Sync,
{
    if xs.is_empty() {
        return Err(Error::InvalidParameter("no evaluation points".into()));
    }
    let partitions = partitions_with_last_zero(xs.len(), truncation);
    let terms = par::map_collect(partitions, |lambda| {
        let weight: i64 = lambda.iter().sum();
        let value = schur(&lambda, xs).expect("enumerated partitions are valid");
        (weight as usize, value)
    });
    let mut series = TruncatedSeries::zero(&xs[0], truncation);
    for (degree, value) in &terms {
        series.add_term(*degree, value);
    }
    Ok(series)
}

/// The closed product side, expanded through t-degree `truncation` by exact
/// binomial multiplication and division. Odd point counts only.
pub fn rhs_product<R: Ring>(xs: &[R], truncation: usize) -> Result<TruncatedSeries<R>> {
    let n = xs.len();
    if n == 0 {
        return Err(Error::InvalidParameter("no evaluation points".into()));
    }
    if n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "product identity needs an odd point count, got {n}"
        )));
    }
    let mut series = TruncatedSeries::one(&xs[0], truncation);
    let mut prod_all = xs[0].ring_one();
    for x in xs {
        prod_all = prod_all.mul(x);
    }
    series.mul_one_minus(&prod_all, n);
    for x in xs {
        series.div_one_minus(x, 1);
    }
    for i in 0..n {
        for j in i + 1..n {
            series.div_one_minus(&xs[i].mul(&xs[j]), 2);
        }
    }
    Ok(series)
}

/// Compares both sides with fully symbolic coefficients (polynomials in
/// x1..xn) through t-degree `truncation`.
pub fn verify_identity(n: usize, truncation: usize) -> Result<bool> {
    let xs: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let lhs = lhs_series(&xs, truncation)?;
    let rhs = rhs_product(&xs, truncation)?;
    Ok(lhs == rhs)
}
