//! Schur polynomial evaluation: division-free via the determinant of
//! complete homogeneous symmetric values, with the alternant ratio as an
//! independent oracle and the hook-style product for the all-ones point.

use num::{BigRational, One};

use super::ring::Ring;
use crate::error::{Error, Result};
use crate::exact::{Domain, Matrix, Scalar};

fn validate_partition(lambda: &[i64], len: usize) -> Result<()> {
    if lambda.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "partition length {} does not match {} points",
            lambda.len(),
            len
        )));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda.last().is_some_and(|&l| l < 0) {
        return Err(Error::InvalidParameter(format!(
            "not a partition: {lambda:?}"
        )));
    }
    Ok(())
}

/// e_0..e_n of the points, from the product ∏(1 + x_i·t).
fn elementary<R: Ring>(xs: &[R], proto: &R) -> Vec<R> {
    let mut e = vec![proto.ring_one()];
    for x in xs {
        let mut next = Vec::with_capacity(e.len() + 1);
        next.push(e[0].clone());
        for k in 1..e.len() {
            next.push(e[k].add(&x.mul(&e[k - 1])));
        }
        next.push(x.mul(&e[e.len() - 1]));
        e = next;
    }
    e
}

/// h_0..h_upto via the Newton-style recurrence h_k = Σ (−1)^{i−1} e_i h_{k−i}.
fn complete_homogeneous<R: Ring>(xs: &[R], upto: usize, proto: &R) -> Vec<R> {
    let e = elementary(xs, proto);
    let mut h = vec![proto.ring_one()];
    for k in 1..=upto {
        let mut acc = proto.ring_zero();
        for i in 1..=k.min(xs.len()) {
            let term = e[i].mul(&h[k - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        h.push(acc);
    }
    h
}

/// Division-free determinant by expansion over column subsets, memoized:
/// O(2^ℓ·ℓ) ring products.
fn det_by_subsets<R: Ring>(m: &[Vec<R>], proto: &R) -> R {
    let l = m.len();
    if l == 0 {
        return proto.ring_one();
    }
    let mut memo: std::collections::HashMap<u64, R> = std::collections::HashMap::new();
    memo.insert(0, proto.ring_one());
    fn rec<R: Ring>(
        mask: u64,
        m: &[Vec<R>],
        proto: &R,
        memo: &mut std::collections::HashMap<u64, R>,
    ) -> R {
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let l = m.len();
        let row = l - (mask.count_ones() as usize);
        let mut acc = proto.ring_zero();
        let mut sign_flip = false;
        for col in 0..l {
            if mask & (1 << col) == 0 {
                continue;
            }
            let sub = rec(mask & !(1 << col), m, proto, memo);
            let term = m[row][col].mul(&sub);
            acc = if sign_flip { acc.sub(&term) } else { acc.add(&term) };
            sign_flip = !sign_flip;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    rec((1 << l) - 1, m, proto, &mut memo)
}

/// Schur polynomial s_λ at the given points, by the determinant of complete
/// homogeneous values. Works over any ring, including symbolic coefficients.
pub fn schur<R: Ring>(lambda: &[i64], xs: &[R]) -> Result<R> {
    if xs.is_empty() {
        return Err(Error::InvalidParameter("no evaluation points".into()));
    }
    validate_partition(lambda, xs.len())?;
    let proto = &xs[0];
    let l = lambda.iter().filter(|&&v| v > 0).count();
    if l == 0 {
        return Ok(proto.ring_one());
    }
    let upto = (lambda[0] + l as i64 - 1) as usize;
    let h = complete_homogeneous(xs, upto, proto);
    let mut m = Vec::with_capacity(l);
    for i in 0..l {
        let mut row = Vec::with_capacity(l);
        for j in 0..l {
            let idx = lambda[i] - i as i64 + j as i64;
            row.push(if idx < 0 {
                proto.ring_zero()
            } else {
                h[idx as usize].clone()
            });
        }
        m.push(row);
    }
    Ok(det_by_subsets(&m, proto))
}

/// Oracle form: ratio of the alternant det(x_i^{λ_j+n−j}) to the Vandermonde
/// determinant. Needs pairwise distinct points.
pub fn schur_bialternant(lambda: &[i64], xs: &[Scalar]) -> Result<Scalar> {
    let n = xs.len();
    if n == 0 {
        return Err(Error::InvalidParameter("no evaluation points".into()));
    }
    validate_partition(lambda, n)?;
    let domain = xs[0].domain();
    for x in xs {
        if x.domain() != domain {
            return Err(Error::DomainMismatch(
                x.domain().to_string(),
                domain.to_string(),
            ));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if xs[i] == xs[j] {
                return Err(Error::InvalidParameter(format!(
                    "alternant ratio needs distinct points, x{} = x{}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let alternant = |shift: &dyn Fn(usize) -> u64| -> Result<Scalar> {
        Matrix::from_fn(n, n, &domain, |i, j| xs[i].pow(shift(j)))?.det()
    };
    let numerator = alternant(&|j| (lambda[j] + (n - 1 - j) as i64) as u64)?;
    let denominator = alternant(&|j| (n - 1 - j) as u64)?;
    numerator.div(&denominator)
}

/// s_λ(1,…,1) as the product ∏_{i<j} (λ_i − λ_j + j − i)/(j − i): the
/// classical dimension count, exact in rational arithmetic.
pub fn principal_specialization(lambda: &[i64], n: usize) -> Result<Scalar> {
    validate_partition(lambda, n)?;
    let mut value = BigRational::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i) as i64;
            let num = BigRational::from_integer((lambda[i] - lambda[j] + gap).into());
            let den = BigRational::from_integer(gap.into());
            value *= num / den;
        }
    }
    Scalar::from_rational_in(&value, &Domain::Rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lseries::mpoly::MultiPoly;
    use crate::lseries::partitions::partitions_padded;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v, &Domain::Rational)
    }

    #[test]
    fn symbolic_micro_examples() {
        let xs: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(3, i)).collect();
        assert_eq!(schur(&[0, 0, 0], &xs).unwrap().to_string(), "1");
        assert_eq!(schur(&[1, 0, 0], &xs).unwrap().to_string(), "x1 + x2 + x3");
        assert_eq!(
            schur(&[1, 1, 0], &xs).unwrap().to_string(),
            "x1*x2 + x1*x3 + x2*x3"
        );
    }

    #[test]
    fn bialternant_examples() {
        assert_eq!(schur_bialternant(&[0, 0], &[s(2), s(3)]).unwrap(), s(1));
        // h₂(2,3) = 4 + 6 + 9.
        assert_eq!(schur_bialternant(&[2, 0], &[s(2), s(3)]).unwrap(), s(19));
        assert!(schur_bialternant(&[1, 0], &[s(2), s(2)]).is_err());
        assert!(schur(&[1, -1], &[s(2), s(3)]).is_err());
        assert!(schur(&[0, 1], &[s(2), s(3)]).is_err());
    }

    #[test]
    fn determinant_and_alternant_agree_everywhere() {
        let points = [s(1), s(2), s(3), s(5)];
        for n in 1..=4usize {
            let xs = &points[..n];
            for lambda in partitions_padded(n, 6) {
                let a = schur(&lambda, xs).unwrap();
                let b = schur_bialternant(&lambda, xs).unwrap();
                assert_eq!(a, b, "λ = {lambda:?}, n = {n}");
            }
        }
    }

    #[test]
    fn all_ones_point_matches_product_formula() {
        for n in 1..=4usize {
            let xs = vec![s(1); n];
            for lambda in partitions_padded(n, 5) {
                let direct = schur(&lambda, &xs).unwrap();
                let formula = principal_specialization(&lambda, n).unwrap();
                assert_eq!(direct, formula, "λ = {lambda:?}, n = {n}");
            }
        }
    }

    #[test]
    fn larger_subset_determinant_is_consistent() {
        // 5×5 alternating-sign check of the subset-expansion determinant
        // against the exact-matrix elimination determinant.
        let grid: Vec<Vec<i64>> = (0..5)
            .map(|i| (0..5).map(|j| ((i * j + i + 2 * j) % 7) as i64 - 3).collect())
            .collect();
        let rows: Vec<Vec<Scalar>> = grid
            .iter()
            .map(|r| r.iter().map(|&v| s(v)).collect())
            .collect();
        let by_subsets = det_by_subsets(&rows, &s(0));
        let by_elimination = Matrix::from_int_rows(&Domain::Rational, &grid)
            .unwrap()
            .det()
            .unwrap();
        assert_eq!(by_subsets, by_elimination);
    }
}
