//! Power series in one variable t, truncated at a fixed degree, with exact
//! coefficients in any ring. Multiplication and division by binomials
//! 1 − c·t^k are the only operations the product expansions need.

use super::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    truncation: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// The zero series, shaped like `proto`.
    pub fn zero(proto: &R, truncation: usize) -> TruncatedSeries<R> {
        TruncatedSeries {
            truncation,
            coeffs: vec![proto.ring_zero(); truncation + 1],
        }
    }

    /// The constant series 1, shaped like `proto`.
    pub fn one(proto: &R, truncation: usize) -> TruncatedSeries<R> {
        let mut series = TruncatedSeries::zero(proto, truncation);
        series.coeffs[0] = proto.ring_one();
        series
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, degree: usize) -> &R {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn add_term(&mut self, degree: usize, value: &R) {
        if degree <= self.truncation {
            self.coeffs[degree] = self.coeffs[degree].add(value);
        }
    }

    /// Multiply in place by (1 − c·t^k).
    pub fn mul_one_minus(&mut self, c: &R, k: usize) {
        if k == 0 {
            panic!("binomial multiplication needs positive degree");
        }
        for d in (k..=self.truncation).rev() {
            let shifted = c.mul(&self.coeffs[d - k]);
            self.coeffs[d] = self.coeffs[d].sub(&shifted);
        }
    }

    /// Divide in place by (1 − c·t^k), i.e. multiply by the geometric series
    /// Σ c^m t^{km}.
    pub fn div_one_minus(&mut self, c: &R, k: usize) {
        if k == 0 {
            panic!("binomial division needs positive degree");
        }
        for d in k..=self.truncation {
            let shifted = c.mul(&self.coeffs[d - k]);
            self.coeffs[d] = self.coeffs[d].add(&shifted);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Domain, Scalar};

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v, &Domain::Rational)
    }

    #[test]
    fn binomial_multiply_and_divide_are_inverse() {
        let mut series = TruncatedSeries::one(&s(0), 8);
        series.div_one_minus(&s(2), 1);
        // 1/(1−2t) = Σ 2^d t^d.
        for d in 0..=8 {
            assert_eq!(*series.coeff(d), s(1 << d));
        }
        series.mul_one_minus(&s(2), 1);
        assert_eq!(series, TruncatedSeries::one(&s(0), 8));

        let mut series = TruncatedSeries::one(&s(0), 7);
        series.div_one_minus(&s(3), 2);
        for d in 0..=7 {
            let expect = if d % 2 == 0 { s(3i64.pow(d as u32 / 2)) } else { s(0) };
            assert_eq!(*series.coeff(d), expect);
        }
        series.mul_one_minus(&s(3), 2);
        assert_eq!(series, TruncatedSeries::one(&s(0), 7));
    }

    #[test]
    fn binomial_beyond_truncation_is_identity() {
        let mut series = TruncatedSeries::one(&s(0), 2);
        series.mul_one_minus(&s(5), 3);
        assert_eq!(series, TruncatedSeries::one(&s(0), 2));
    }
}
