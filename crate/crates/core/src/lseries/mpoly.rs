//! Exact multivariate polynomials over ℚ with a canonical printed form, used
//! as fully symbolic coefficients in truncated series identities.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use super::ring::Ring;

/// Polynomial in x1..x_nvars with rational coefficients. Terms are keyed by
/// exponent vector; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        if !value.is_zero() {
            p.terms.insert(vec![0; nvars], value);
        }
        p
    }

    pub fn from_int(nvars: usize, value: i64) -> MultiPoly {
        MultiPoly::constant(nvars, BigRational::from_integer(value.into()))
    }

    /// The variable x_{index+1}.
    pub fn var(nvars: usize, index: usize) -> MultiPoly {
        assert!(index < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(exps, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, exps: Vec<u32>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Ring for MultiPoly {
    fn ring_zero(&self) -> MultiPoly {
        MultiPoly::zero(self.nvars)
    }

    fn ring_one(&self) -> MultiPoly {
        MultiPoly::from_int(self.nvars, 1)
    }

    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }

    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

/// Canonical form: terms in descending lexicographic exponent order, '*'
/// between factors, '^' for powers, unit coefficients omitted, signs folded
/// into the separators. The zero polynomial prints as "0".
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", magnitude, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn arithmetic_and_normalization() {
        let sum = x(0).add(&x(1)).add(&x(2));
        assert_eq!(sum.term_count(), 3);
        let cancel = sum.sub(&sum);
        assert!(cancel.is_zero());
        let prod = x(0).add(&x(1)).mul(&x(0).sub(&x(1)));
        // (x1+x2)(x1−x2) = x1² − x2².
        let direct = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        assert_eq!(prod, direct);
    }

    #[test]
    fn canonical_display() {
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
        assert_eq!(MultiPoly::from_int(3, -5).to_string(), "-5");
        assert_eq!(x(0).add(&x(1)).add(&x(2)).to_string(), "x1 + x2 + x3");
        assert_eq!(x(0).sub(&x(1)).to_string(), "x1 - x2");
        let two_x1x2 = MultiPoly::from_int(3, 2).mul(&x(0)).mul(&x(1));
        assert_eq!(two_x1x2.to_string(), "2*x1*x2");
        let sq = x(2).mul(&x(2)).sub(&MultiPoly::from_int(3, 1));
        assert_eq!(sq.to_string(), "x3^2 - 1");
        let half = MultiPoly::constant(
            3,
            BigRational::new(1.into(), 2.into()),
        );
        assert_eq!(half.mul(&x(0)).to_string(), "1/2*x1");
    }

    #[test]
    fn display_orders_descending_lex() {
        // h₂ + e₂ in three variables.
        let mut acc = MultiPoly::zero(3);
        for i in 0..3 {
            for j in 0..3 {
                if i <= j {
                    acc = acc.add(&x(i).mul(&x(j)));
                }
                if i < j {
                    acc = acc.add(&x(i).mul(&x(j)));
                }
            }
        }
        assert_eq!(
            acc.to_string(),
            "x1^2 + 2*x1*x2 + 2*x1*x3 + x2^2 + 2*x2*x3 + x3^2"
        );
    }
}
