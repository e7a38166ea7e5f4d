//! A minimal commutative-ring interface so series and symmetric-function
//! kernels run identically over exact scalars and symbolic polynomials.

use crate::exact::Scalar;

pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    /// Additive identity shaped like `self` (same domain / variable count).
    fn ring_zero(&self) -> Self;
    /// Multiplicative identity shaped like `self`.
    fn ring_one(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Scalar {
    fn ring_zero(&self) -> Scalar {
        Scalar::zero(&self.domain())
    }

    fn ring_one(&self) -> Scalar {
        Scalar::one(&self.domain())
    }

    fn add(&self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }

    fn sub(&self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }

    fn mul(&self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }

    fn neg(&self) -> Scalar {
        Scalar::neg(self)
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}
