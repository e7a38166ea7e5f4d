//! The signature involution on invertible (p+q)-square matrices, closedness
//! of double cosets under the two-sided block action, designated coset
//! representatives, and their complete invariants (k, ν, block parameters).

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{span_rank, Domain, Matrix, Polynomial, Scalar};

/// diag(1_p, −1_q).
pub fn omega_matrix(p: usize, q: usize, domain: &Domain) -> Matrix {
    Matrix::from_fn(p + q, p + q, domain, |i, j| {
        if i != j {
            Scalar::zero(domain)
        } else if i < p {
            Scalar::one(domain)
        } else {
            Scalar::one(domain).neg()
        }
    })
    .expect("diagonal construction")
}

/// τ(g) = g·ω·g⁻¹·ω. Its determinant is identically 1, which is asserted.
pub fn tau(g: &Matrix, p: usize, q: usize) -> Result<Matrix> {
    let n = p + q;
    if g.rows() != n || g.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "expected {n}x{n} for signature ({p},{q}), got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let omega = omega_matrix(p, q, g.domain());
    let t = g.mul(&omega)?.mul(&g.inverse()?)?.mul(&omega)?;
    assert!(
        t.det()?.is_one(),
        "internal inconsistency: involution image has determinant != 1"
    );
    Ok(t)
}

/// A double coset is closed iff the minimal polynomial of τ(g) is squarefree,
/// i.e. τ(g) is semisimple.
pub fn is_closed(g: &Matrix, p: usize, q: usize) -> Result<bool> {
    tau(g, p, q)?.minimal_polynomial()?.is_squarefree()
}

/// The involution swapping the first k plus-coordinates with the first k
/// minus-coordinates: e_i ↔ e_{p+i} for i < k, identity elsewhere.
pub fn rep_xpk(p: usize, q: usize, k: usize, domain: &Domain) -> Result<Matrix> {
    if !(k <= p && p <= q) {
        return Err(Error::InvalidParameter(format!(
            "need k ≤ p ≤ q, got k={k}, p={p}, q={q}"
        )));
    }
    let n = p + q;
    let mut g = Matrix::identity(n, domain);
    let one = Scalar::one(domain);
    let zero = Scalar::zero(domain);
    for i in 0..k {
        g.set(i, i, zero.clone());
        g.set(p + i, p + i, zero.clone());
        g.set(i, p + i, one.clone());
        g.set(p + i, i, one.clone());
    }
    Ok(g)
}

/// Representative carrying ν = a_values.len() paired 2×2 blocks
/// [[1, 1], [a−1, a+1]] on coordinate pairs (i, n−ν+i), with the k-swap
/// representative of the remaining (p−ν, q−ν) space in the middle.
pub fn rep_nu_block(
    p: usize,
    q: usize,
    k: usize,
    a_values: &[Scalar],
    domain: &Domain,
) -> Result<Matrix> {
    let nu = a_values.len();
    if nu + k > p || p > q {
        return Err(Error::InvalidParameter(format!(
            "need ν+k ≤ p ≤ q, got ν={nu}, k={k}, p={p}, q={q}"
        )));
    }
    if domain.characteristic() == 2 {
        return Err(Error::SmallCharacteristic {
            modulus: 2,
            needed: 2,
        });
    }
    let one = Scalar::one(domain);
    for a in a_values {
        if a.domain() != *domain {
            return Err(Error::DomainMismatch(
                a.domain().to_string(),
                domain.to_string(),
            ));
        }
        if *a == one || *a == one.neg() {
            return Err(Error::InvalidParameter(
                "block parameter a = ±1 does not give a closed coset".into(),
            ));
        }
    }
    let n = p + q;
    let mut g = Matrix::zero(n, n, domain);
    for (i, a) in a_values.iter().enumerate() {
        g.set(i, i, one.clone());
        g.set(i, n - nu + i, one.clone());
        g.set(n - nu + i, i, a.sub(&one));
        g.set(n - nu + i, n - nu + i, a.add(&one));
    }
    let inner = rep_xpk(p - nu, q - nu, k, domain)?;
    for r in 0..n - 2 * nu {
        for c in 0..n - 2 * nu {
            g.set(nu + r, nu + c, inner.get(r, c).clone());
        }
    }
    Ok(g)
}

/// Complete invariant of a closed double coset: the swap count k, the paired
/// block count ν, and the multiset of block parameters a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetInvariant {
    pub k: usize,
    pub nu: usize,
    pub a_values: Vec<Scalar>,
}

impl Serialize for CosetInvariant {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CosetInvariant", 3)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("nu", &self.nu)?;
        let strings: Vec<String> = self.a_values.iter().map(Scalar::entry_string).collect();
        s.serialize_field("a_values", &strings)?;
        s.end()
    }
}

/// Reads the invariant off the characteristic polynomial of τ(g):
/// χ = (t−1)^α (t+1)^{2k} ∏_i (t² − 2a_i t + 1). Block parameters are found
/// by root search on the trace transform of the residual; domains without
/// root search (higher cyclotomic parameters) need the hinted variant.
pub fn coset_invariants(g: &Matrix, p: usize, q: usize) -> Result<CosetInvariant> {
    coset_invariants_impl(g, p, q, None)
}

/// Same as `coset_invariants`, but block parameters are supplied up front and
/// verified by exact division instead of being searched for.
pub fn coset_invariants_with_hints(
    g: &Matrix,
    p: usize,
    q: usize,
    hints: &[Scalar],
) -> Result<CosetInvariant> {
    coset_invariants_impl(g, p, q, Some(hints))
}

fn coset_invariants_impl(
    g: &Matrix,
    p: usize,
    q: usize,
    hints: Option<&[Scalar]>,
) -> Result<CosetInvariant> {
    let domain = g.domain().clone();
    if domain.characteristic() == 2 {
        return Err(Error::SmallCharacteristic {
            modulus: 2,
            needed: 2,
        });
    }
    let t = tau(g, p, q)?;
    if !t.minimal_polynomial()?.is_squarefree()? {
        return Err(Error::NotClosed);
    }
    let chi = t.char_polynomial()?;
    let one = Scalar::one(&domain);
    let (rest, alpha) = chi.strip_root(&one)?;
    let (rest, beta) = rest.strip_root(&one.neg())?;
    if beta % 2 != 0 {
        return Err(Error::Inconsistency(format!(
            "eigenvalue -1 of the involution image has odd multiplicity {beta}"
        )));
    }
    let k = beta / 2;
    let two = Scalar::from_int(2, &domain);
    let mut a_values: Vec<Scalar> = Vec::new();
    match hints {
        Some(hints) => {
            let mut rest = rest;
            for a in hints {
                if a.domain() != domain {
                    return Err(Error::DomainMismatch(
                        a.domain().to_string(),
                        domain.to_string(),
                    ));
                }
                let block = Polynomial::new(
                    domain.clone(),
                    vec![one.clone(), a.mul(&two).neg(), one.clone()],
                )?;
                let (quot, rem) = rest.divrem(&block)?;
                if !rem.is_zero() {
                    return Err(Error::Inconsistency(format!(
                        "hinted block parameter {} does not divide the residual",
                        a.entry_string()
                    )));
                }
                rest = quot;
                a_values.push(a.clone());
            }
            if rest.degree() != Some(0) {
                return Err(Error::Inconsistency(
                    "hints do not account for every paired block".into(),
                ));
            }
        }
        None => {
            let s = rest.palindromic_trace_poly()?;
            let (roots, residual) = s.roots_in_domain()?;
            if residual.degree() != Some(0) {
                return Err(Error::Inconsistency(
                    "block parameters not expressible in the coefficient domain".into(),
                ));
            }
            for (root, mult) in roots {
                let a = root.div(&two)?;
                if a == one || a == one.neg() {
                    return Err(Error::Inconsistency(
                        "extracted block parameter a = ±1 from a closed coset".into(),
                    ));
                }
                for _ in 0..mult {
                    a_values.push(a.clone());
                }
            }
        }
    }
    let nu = a_values.len();
    if alpha + 2 * k + 2 * nu != p + q {
        return Err(Error::Inconsistency(format!(
            "eigenvalue multiplicities {alpha} + 2·{k} + 2·{nu} do not fill dimension {}",
            p + q
        )));
    }
    a_values.sort_by(Scalar::canonical_cmp);
    Ok(CosetInvariant { k, nu, a_values })
}

/// Matrix units of the block subalgebra gl_p ⊕ gl_q inside gl_{p+q}.
pub fn h_basis(p: usize, q: usize, domain: &Domain) -> Vec<Matrix> {
    let n = p + q;
    let mut basis = Vec::with_capacity(p * p + q * q);
    let unit = |r: usize, c: usize| {
        let mut m = Matrix::zero(n, n, domain);
        m.set(r, c, Scalar::one(domain));
        m
    };
    for i in 0..p {
        for j in 0..p {
            basis.push(unit(i, j));
        }
    }
    for i in 0..q {
        for j in 0..q {
            basis.push(unit(p + i, p + j));
        }
    }
    basis
}

/// Codimension in gl_{p+q} of the span of the block subalgebra together with
/// its Ad_g image: the dimension transverse to the double coset through g.
pub fn normal_space_dim(g: &Matrix, p: usize, q: usize) -> Result<usize> {
    let n = p + q;
    if g.rows() != n || g.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "expected {n}x{n} for signature ({p},{q}), got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let ginv = g.inverse()?;
    let mut mats = h_basis(p, q, g.domain());
    let block_positions: Vec<(usize, usize)> = (0..p)
        .flat_map(|i| (0..p).map(move |j| (i, j)))
        .chain((0..q).flat_map(|i| (0..q).map(move |j| (p + i, p + j))))
        .collect();
    for (i, j) in block_positions {
        // Ad_g(E_ij) = g E_ij g⁻¹ = (column i of g) · (row j of g⁻¹).
        let m = Matrix::from_fn(n, n, g.domain(), |r, c| g.get(r, i).mul(ginv.get(j, c)))?;
        mats.push(m);
    }
    Ok(n * n - span_rank(&mats)?)
}

/// Transverse dimension of the coset of the k-swap representative:
/// 2k² + 2(p−k)(q−k).
pub fn swap_normal_dim(p: usize, q: usize, k: usize) -> usize {
    2 * k * k + 2 * (p - k) * (q - k)
}
