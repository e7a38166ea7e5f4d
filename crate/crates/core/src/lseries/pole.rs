//! Order and leading coefficient at t = 1 of the closed product
//! (1 − t^n) · ∏_i (1−x_i t)^{−1} · ∏_{i<j} (1−x_i x_j t²)^{−1}
//! for character values with trivial product. Computed on the closed form as
//! a finite factor count, never from a truncated expansion.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct PoleData {
    /// Pole order at t = 1: positive for a pole, negative for a zero.
    pub order: i64,
    /// Leading Laurent coefficient in powers of (1 − t); for order 0 this is
    /// the plain value at t = 1.
    pub leading: Scalar,
}

impl Serialize for PoleData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PoleData", 2)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("leading", &self.leading.entry_string())?;
        s.end()
    }
}

/// Counts vanishing factors at t = 1 and evaluates the non-vanishing rest.
///
/// Every factor contributes an exact power of (1 − t) and a value:
/// the numerator 1 − t^n gives one power and value n; a factor (1 − x_i t)
/// with x_i = 1 gives a pole power; a pair factor with x_i x_j = 1 gives a
/// pole power and value 1/2 from 1 − t² = (1 − t)(1 + t).
pub fn pole_order_at_one(xs: &[Scalar], p: usize) -> Result<PoleData> {
    let n = 2 * p + 1;
    if xs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} character values for size {n}",
            xs.len()
        )));
    }
    let domain = xs[0].domain();
    for x in xs {
        if x.domain() != domain {
            return Err(Error::DomainMismatch(
                x.domain().to_string(),
                domain.to_string(),
            ));
        }
    }
    let one = Scalar::one(&domain);
    let mut product = one.clone();
    for x in xs {
        product = product.mul(x);
    }
    if product != one {
        return Err(Error::ProductNotOne(product.entry_string()));
    }
    let mut order: i64 = -1;
    let mut denominator_value = one.clone();
    let two = Scalar::from_int(2, &domain);
    for x in xs {
        if *x == one {
            order += 1;
        } else {
            denominator_value = denominator_value.mul(&one.sub(x));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let pair = xs[i].mul(&xs[j]);
            if pair == one {
                order += 1;
                denominator_value = denominator_value.mul(&two);
            } else {
                denominator_value = denominator_value.mul(&one.sub(&pair));
            }
        }
    }
    let leading = Scalar::from_int(n as i64, &domain).div(&denominator_value)?;
    Ok(PoleData { order, leading })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Domain;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v, &Domain::Rational)
    }

    fn frac(a: i64, b: i64) -> Scalar {
        s(a).div(&s(b)).unwrap()
    }

    #[test]
    fn anchor_all_ones() {
        let d = pole_order_at_one(&[s(1), s(1), s(1)], 1).unwrap();
        assert_eq!(d.order, 5);
        assert_eq!(d.leading, frac(3, 8));
    }

    #[test]
    fn anchor_single_vanishing_pair() {
        let d = pole_order_at_one(&[s(2), frac(1, 2), s(1)], 1).unwrap();
        assert_eq!(d.order, 1);
        assert_eq!(d.leading, s(6));
    }

    #[test]
    fn anchor_trivial_product_without_pole() {
        let d = pole_order_at_one(&[s(2), s(2), frac(1, 4)], 1).unwrap();
        assert_eq!(d.order, -1);
        assert_eq!(d.leading, frac(-16, 3));
    }

    #[test]
    fn anchor_cube_roots_of_unity() {
        let z = Scalar::cyclotomic_root(3, 1).unwrap();
        let d = pole_order_at_one(&[z.clone(), z.clone(), z], 1).unwrap();
        assert_eq!(d.order, -1);
        let dom = Domain::cyclotomic(3).unwrap();
        let expect = Scalar::from_int(1, &dom)
            .div(&Scalar::from_int(9, &dom))
            .unwrap();
        assert_eq!(d.leading, expect);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            pole_order_at_one(&[s(2), s(3), s(1)], 1),
            Err(Error::ProductNotOne(_))
        ));
        assert!(pole_order_at_one(&[s(1), s(1)], 1).is_err());
    }

    #[test]
    fn json_rendering() {
        let d = pole_order_at_one(&[s(1), s(1), s(1)], 1).unwrap();
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"order":5,"leading":"3/8"}"#
        );
    }
}
