//! Symmetric-function and L-factor machinery: Schur evaluation, spherical
//! vector values with formal q-exponents, the interleaved odd-size embedding
//! and its modular exponent, the partition-restricted product identity, and
//! pole-order analysis of the closed product at t = 1.

pub mod identity;
pub mod mpoly;
pub mod partitions;
pub mod pole;
pub mod ring;
pub mod schur;
pub mod series;
pub mod whittaker;

pub use identity::{lhs_series, rhs_product, verify_identity};
pub use mpoly::MultiPoly;
pub use partitions::{partitions_padded, partitions_with_last_zero};
pub use pole::{pole_order_at_one, PoleData};
pub use ring::Ring;
pub use schur::{principal_specialization, schur, schur_bialternant};
pub use series::TruncatedSeries;
pub use whittaker::{
    delta_half_exponent, interleave_embed, modular_exponent_ph, whittaker_value, HalfLaurent,
    WhittakerValue,
};
