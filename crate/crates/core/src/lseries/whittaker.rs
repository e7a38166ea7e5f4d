//! Spherical vector values on diagonal prime-power elements: the half-power
//! modular exponent, the dominance-supported determinant ratio, the
//! odd-size interleaved embedding, and the parabolic-subgroup modular
//! exponent that matches it.

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

/// An exponent counted in halves of the formal symbol q. Whittaker exponents
/// are proven integral for odd sizes; the conversion guards misuse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfLaurent {
    halves: i64,
}

impl HalfLaurent {
    pub fn from_halves(halves: i64) -> HalfLaurent {
        HalfLaurent { halves }
    }

    pub fn halves(&self) -> i64 {
        self.halves
    }

    pub fn integer_exponent(&self) -> Result<i64> {
        if self.halves % 2 != 0 {
            return Err(Error::NonIntegralExponent {
                halves: self.halves,
            });
        }
        Ok(self.halves / 2)
    }
}

/// Exponent of q in δ^{1/2} at the diagonal element with entry exponents λ:
/// −Σ λ_i(n+1−2i)/2, integral whenever n is odd.
pub fn delta_half_exponent(lambda: &[i64], n: usize) -> Result<i64> {
    if lambda.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for size {n}",
            lambda.len()
        )));
    }
    let mut halves = 0i64;
    for (i, l) in lambda.iter().enumerate() {
        let weight = n as i64 + 1 - 2 * (i as i64 + 1);
        halves -= l * weight;
    }
    HalfLaurent::from_halves(halves).integer_exponent()
}

/// A spherical value: coeff · q^{q_exponent} with q a formal symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct WhittakerValue {
    pub q_exponent: i64,
    pub coeff: Scalar,
}

/// Value of the normalized spherical vector at the diagonal element with
/// entry exponents λ: zero off the dominant cone, otherwise
/// q^{δ-exponent} times the central twist and the Schur value.
pub fn whittaker_value(lambda: &[i64], chars: &[Scalar]) -> Result<WhittakerValue> {
    let n = chars.len();
    if n == 0 {
        return Err(Error::InvalidParameter("no character values".into()));
    }
    if lambda.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for {n} characters",
            lambda.len()
        )));
    }
    let domain = chars[0].domain();
    for c in chars {
        if c.domain() != domain {
            return Err(Error::DomainMismatch(
                c.domain().to_string(),
                domain.to_string(),
            ));
        }
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Ok(WhittakerValue {
            q_exponent: 0,
            coeff: Scalar::zero(&domain),
        });
    }
    let q_exponent = delta_half_exponent(lambda, n)?;
    let shift = lambda[n - 1];
    let shifted: Vec<i64> = lambda.iter().map(|l| l - shift).collect();
    let mut central = Scalar::one(&domain);
    for c in chars {
        central = central.mul(c);
    }
    let coeff = central
        .pow_signed(shift)?
        .mul(&super::schur::schur(&shifted, chars)?);
    Ok(WhittakerValue { q_exponent, coeff })
}

/// Embeds a p-square and a (p+1)-square matrix into a (2p+1)-square one, the
/// larger factor on the odd coordinates (1-indexed) and the smaller on the
/// even ones. Multiplicative in both arguments.
pub fn interleave_embed(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let p = a.rows();
    if !a.is_square() || !b.is_square() || b.rows() != p + 1 {
        return Err(Error::ShapeMismatch(format!(
            "need p×p and (p+1)×(p+1), got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(
            a.domain().to_string(),
            b.domain().to_string(),
        ));
    }
    let n = 2 * p + 1;
    Matrix::from_fn(n, n, a.domain(), |i, j| {
        if i % 2 == 0 && j % 2 == 0 {
            b.get(i / 2, j / 2).clone()
        } else if i % 2 == 1 && j % 2 == 1 {
            a.get(i / 2, j / 2).clone()
        } else {
            Scalar::zero(a.domain())
        }
    })
}

/// Modular exponent of the diagonal element with exponents λ on the upper
/// triangular part of the interleaved block pattern: −Σ over same-parity
/// positions i<j of (λ_i − λ_j). Agrees with `delta_half_exponent(λ, 2p+1)`
/// whenever the last exponent vanishes.
pub fn modular_exponent_ph(lambda: &[i64], p: usize) -> Result<i64> {
    let n = 2 * p + 1;
    if lambda.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for size {n}",
            lambda.len()
        )));
    }
    if lambda[n - 1] != 0 {
        return Err(Error::InvalidParameter(
            "last exponent must vanish for a parabolic torus element".into(),
        ));
    }
    let mut total = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            if i % 2 == j % 2 {
                total += lambda[i] - lambda[j];
            }
        }
    }
    Ok(-total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Domain;
    use crate::lseries::partitions::partitions_with_last_zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v, &Domain::Rational)
    }

    #[test]
    fn delta_exponent_examples() {
        assert_eq!(delta_half_exponent(&[0, 0, 0], 3).unwrap(), 0);
        assert_eq!(delta_half_exponent(&[1, 0, 0], 3).unwrap(), -1);
        assert_eq!(delta_half_exponent(&[2, 1, 0], 3).unwrap(), -2);
        // Central shifts do not move the exponent: the weights sum to zero.
        assert_eq!(delta_half_exponent(&[4, 3, 2], 3).unwrap(), -2);
        // Even sizes can produce genuine half-exponents.
        assert!(matches!(
            delta_half_exponent(&[1, 0], 2),
            Err(Error::NonIntegralExponent { halves: -1 })
        ));
        assert!(delta_half_exponent(&[1, 0], 3).is_err());
    }

    #[test]
    fn spherical_value_examples() {
        // Normalized at the identity coset.
        let w = whittaker_value(&[0, 0, 0], &[s(2), s(3), s(5)]).unwrap();
        assert_eq!((w.q_exponent, w.coeff), (0, s(1)));
        // Size one: powers of the single character, negative ones included.
        let w = whittaker_value(&[4], &[s(3)]).unwrap();
        assert_eq!((w.q_exponent, w.coeff), (0, s(81)));
        let half = s(1).div(&s(2)).unwrap();
        let w = whittaker_value(&[-1], &[s(2)]).unwrap();
        assert_eq!((w.q_exponent, w.coeff), (0, half));
        // Size three, fundamental coweight: q^{−1}·e₁.
        let w = whittaker_value(&[1, 0, 0], &[s(2), s(3), s(5)]).unwrap();
        assert_eq!((w.q_exponent, w.coeff), (-1, s(10)));
        // A negative dominant triple picks up the central character.
        let w = whittaker_value(&[0, -1, -1], &[s(2), s(3), s(5)]).unwrap();
        // ∏χ = 30, shift −1, shifted λ = (1,0,0): 30^{−1}·10 = 1/3.
        assert_eq!(w.coeff, s(1).div(&s(3)).unwrap());
        assert_eq!(w.q_exponent, delta_half_exponent(&[0, -1, -1], 3).unwrap());
    }

    #[test]
    fn support_is_exactly_the_dominant_cone() {
        let chars = [s(2), s(3), s(5)];
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    let lambda = [a, b, c];
                    let dominant = a >= b && b >= c;
                    let w = whittaker_value(&lambda, &chars).unwrap();
                    assert_eq!(
                        !w.coeff.is_zero(),
                        dominant,
                        "support mismatch at {lambda:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn interleave_layout_and_homomorphism() {
        let dom = Domain::Rational;
        let a = Matrix::from_int_rows(&dom, &[vec![7]]).unwrap();
        let b = Matrix::from_int_rows(&dom, &[vec![1, 2], vec![3, 4]]).unwrap();
        let c = interleave_embed(&a, &b).unwrap();
        let expect = Matrix::from_int_rows(
            &dom,
            &[vec![1, 0, 2], vec![0, 7, 0], vec![3, 0, 4]],
        )
        .unwrap();
        assert_eq!(c, expect);
        assert_eq!(
            interleave_embed(
                &Matrix::identity(2, &dom),
                &Matrix::identity(3, &dom)
            )
            .unwrap(),
            Matrix::identity(5, &dom)
        );
        assert!(interleave_embed(&b, &a).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut rand_mat = |k: usize| {
            Matrix::from_fn(k, k, &dom, |_, _| s(rng.gen_range(-4..=4))).unwrap()
        };
        for p in 1..=2usize {
            for _ in 0..10 {
                let (a1, a2) = (rand_mat(p), rand_mat(p));
                let (b1, b2) = (rand_mat(p + 1), rand_mat(p + 1));
                let lhs = interleave_embed(&a1.mul(&a2).unwrap(), &b1.mul(&b2).unwrap()).unwrap();
                let rhs = interleave_embed(&a1, &b1)
                    .unwrap()
                    .mul(&interleave_embed(&a2, &b2).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn parabolic_exponent_matches_delta() {
        assert_eq!(modular_exponent_ph(&[0, 0, 0], 1).unwrap(), 0);
        assert_eq!(modular_exponent_ph(&[1, 0, 0], 1).unwrap(), -1);
        assert_eq!(
            modular_exponent_ph(&[2, 1, 1, 0, 0], 2).unwrap(),
            delta_half_exponent(&[2, 1, 1, 0, 0], 5).unwrap()
        );
        for p in 1..=2usize {
            let n = 2 * p + 1;
            for lambda in partitions_with_last_zero(n, 6) {
                assert_eq!(
                    modular_exponent_ph(&lambda, p).unwrap(),
                    delta_half_exponent(&lambda, n).unwrap(),
                    "λ = {lambda:?}"
                );
            }
        }
        assert!(modular_exponent_ph(&[1, 0, 1], 1).is_err());
    }
}
