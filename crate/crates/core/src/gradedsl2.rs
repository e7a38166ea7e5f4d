//! Graded chain decompositions and their invariants.
//!
//! A decomposition is a multiset of components (λ, ω): an irreducible chain of
//! λ+1 weight vectors v_0..v_λ whose parities alternate, ω being the parity of
//! the lowest vector v_λ. The parity-0 dimensions sum to p, the parity-1
//! dimensions to q, and decompositions of (p, q) classify the nilpotent orbits
//! of the block-diagonal group on pairs (x: q→p, y: p→q).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Domain, Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Component {
    pub lambda: u32,
    pub omega: u8,
}

impl Component {
    pub fn new(lambda: u32, omega: u8) -> Result<Component> {
        if omega > 1 {
            return Err(Error::InvalidParameter(format!(
                "component parity must be 0 or 1, got {omega}"
            )));
        }
        Ok(Component { lambda, omega })
    }

    /// (dim of parity-0 part, dim of parity-1 part).
    pub fn dims(&self) -> (usize, usize) {
        parity_dims(self.lambda, self.omega)
    }

    /// Parity of the basis vector v_j; the lowest vector v_λ carries ω.
    pub fn parity_of(&self, j: u32) -> u8 {
        ((self.omega as u32 + self.lambda + j) % 2) as u8
    }

    pub fn weight_of(&self, j: u32) -> i64 {
        self.lambda as i64 - 2 * j as i64
    }
}

/// Dimensions of the two parity subspaces of the chain (λ, ω). Odd λ splits
/// evenly; even λ gives the ω side one extra dimension.
pub fn parity_dims(lambda: u32, omega: u8) -> (usize, usize) {
    let l = lambda as usize;
    if lambda % 2 == 1 {
        ((l + 1) / 2, (l + 1) / 2)
    } else if omega == 0 {
        (l / 2 + 1, l / 2)
    } else {
        (l / 2, l / 2 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GradedDecomposition {
    components: Vec<Component>,
}

impl GradedDecomposition {
    /// Canonicalizes to descending (λ, ω) order; parities must be 0 or 1.
    pub fn new(mut components: Vec<Component>) -> Result<GradedDecomposition> {
        if let Some(c) = components.iter().find(|c| c.omega > 1) {
            return Err(Error::InvalidParameter(format!(
                "component parity must be 0 or 1, got {}",
                c.omega
            )));
        }
        components.sort_by(|a, b| b.cmp(a));
        Ok(GradedDecomposition { components })
    }

    pub fn from_pairs(pairs: &[(u32, u8)]) -> GradedDecomposition {
        let comps = pairs
            .iter()
            .map(|&(l, o)| Component { lambda: l, omega: o })
            .collect();
        GradedDecomposition::new(comps).expect("valid component pairs")
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn dims(&self) -> (usize, usize) {
        let mut p = 0;
        let mut q = 0;
        for c in &self.components {
            let (d0, d1) = c.dims();
            p += d0;
            q += d1;
        }
        (p, q)
    }

    pub fn p(&self) -> usize {
        self.dims().0
    }

    pub fn q(&self) -> usize {
        self.dims().1
    }

    pub fn total_dim(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.lambda as usize + 1)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.lambda == 0)
    }
}

impl<'de> Deserialize<'de> for GradedDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            components: Vec<Component>,
        }
        let raw = Raw::deserialize(deserializer)?;
        GradedDecomposition::new(raw.components).map_err(serde::de::Error::custom)
    }
}

/// All decompositions with parity dimensions exactly (p, q), each multiset
/// once, emitted in descending lexicographic order of the canonical component
/// list.
pub fn enumerate_decompositions(p: usize, q: usize) -> Vec<GradedDecomposition> {
    let mut candidates = Vec::new();
    if p + q > 0 {
        for lambda in (0..=(p + q - 1) as u32).rev() {
            for omega in [1u8, 0] {
                candidates.push(Component { lambda, omega });
            }
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dfs(&candidates, 0, p, q, &mut stack, &mut out);
    out
}

fn dfs(
    candidates: &[Component],
    from: usize,
    rem_p: usize,
    rem_q: usize,
    stack: &mut Vec<Component>,
    out: &mut Vec<GradedDecomposition>,
) {
    if rem_p == 0 && rem_q == 0 {
        out.push(GradedDecomposition {
            components: stack.clone(),
        });
        return;
    }
    for i in from..candidates.len() {
        let c = candidates[i];
        if c.lambda as usize + 1 > rem_p + rem_q {
            continue;
        }
        let (d0, d1) = c.dims();
        if d0 > rem_p || d1 > rem_q {
            continue;
        }
        stack.push(c);
        dfs(candidates, i, rem_p - d0, rem_q - d1, stack, out);
        stack.pop();
    }
}

/// Interior layout of the chain basis for a decomposition: global index per
/// (component, position), with parity, weight, neighbours along the chain,
/// and the raising coefficient j(λ−j+1) that moves v_j to v_{j−1}.
pub(crate) struct ChainLayout {
    pub parities: Vec<u8>,
    pub weights: Vec<i64>,
    pub pred: Vec<Option<usize>>,
    pub succ: Vec<Option<usize>>,
    pub raise_coeff: Vec<i64>,
}

pub(crate) fn chain_layout(d: &GradedDecomposition) -> ChainLayout {
    let n = d.total_dim();
    let mut layout = ChainLayout {
        parities: Vec::with_capacity(n),
        weights: Vec::with_capacity(n),
        pred: Vec::with_capacity(n),
        succ: Vec::with_capacity(n),
        raise_coeff: Vec::with_capacity(n),
    };
    let mut base = 0usize;
    for c in d.components() {
        let len = c.lambda as usize + 1;
        for j in 0..len {
            let ju = j as u32;
            layout.parities.push(c.parity_of(ju));
            layout.weights.push(c.weight_of(ju));
            layout.pred.push(if j > 0 { Some(base + j - 1) } else { None });
            layout
                .succ
                .push(if j + 1 < len { Some(base + j + 1) } else { None });
            layout
                .raise_coeff
                .push(j as i64 * (c.lambda as i64 - j as i64 + 1));
        }
        base += len;
    }
    layout
}

#[derive(Debug, Clone)]
pub struct Sl2Triple {
    pub h: Matrix,
    pub e: Matrix,
    pub f: Matrix,
    /// Parity of each basis vector, in chain order.
    pub parities: Vec<u8>,
    /// h-eigenvalue of each basis vector.
    pub weights: Vec<i64>,
}

/// Explicit matrices with h v_j = (λ−2j)v_j, f v_j = v_{j+1},
/// e v_j = j(λ−j+1)v_{j−1} on each chain, block by block.
pub fn build_sl2_triple(d: &GradedDecomposition, domain: &Domain) -> Result<Sl2Triple> {
    let layout = chain_layout(d);
    let n = layout.parities.len();
    let mut h = Matrix::zero(n, n, domain);
    let mut e = Matrix::zero(n, n, domain);
    let mut f = Matrix::zero(n, n, domain);
    for u in 0..n {
        h.set(u, u, Scalar::from_int(layout.weights[u], domain));
        if let Some(p) = layout.pred[u] {
            e.set(p, u, Scalar::from_int(layout.raise_coeff[u], domain));
        }
        if let Some(s) = layout.succ[u] {
            f.set(s, u, Scalar::one(domain));
        }
    }
    Ok(Sl2Triple {
        h,
        e,
        f,
        parities: layout.parities,
        weights: layout.weights,
    })
}

/// Pairing number of two components: how the odd maps between the two chains
/// decompose, by parity of λ and matching of ω.
pub fn m_pair(lambda_i: u32, omega_i: u8, lambda_j: u32, omega_j: u8) -> i64 {
    let (li, lj) = (lambda_i as i64, lambda_j as i64);
    let min = li.min(lj);
    match (lambda_i % 2, lambda_j % 2) {
        (1, 1) if omega_i == omega_j => 2 * min + 2,
        (1, 1) => 0,
        (0, 0) if omega_i == omega_j => -(li - lj).abs() - 1,
        (0, 0) => li + lj + 3,
        _ => min + 1,
    }
}

fn m_sum(d: &GradedDecomposition) -> i64 {
    let cs = d.components();
    let mut s = 0;
    for a in cs {
        for b in cs {
            s += m_pair(a.lambda, a.omega, b.lambda, b.omega);
        }
    }
    s
}

/// tr(2−h) on the f-centralizer of the odd space, by the closed pairing
/// formula: 2pq + ½(Σ over ordered component pairs of m + (p−q)²).
pub fn trace_formula(d: &GradedDecomposition) -> i64 {
    let (p, q) = d.dims();
    let (p, q) = (p as i64, q as i64);
    let half_arg = m_sum(d) + (p - q) * (p - q);
    assert!(
        half_arg % 2 == 0,
        "internal inconsistency: pairing sum {half_arg} is odd"
    );
    2 * p * q + half_arg / 2
}

/// Same quantity from matrices: realize the odd maps as matrix units, cut out
/// the kernel of ad f, restrict ad h to it, and return 2·dim − trace. Fully
/// independent of the pairing formula.
pub fn trace_bruteforce(d: &GradedDecomposition) -> Result<i64> {
    let dom = Domain::Rational;
    let layout = chain_layout(d);
    let n = layout.parities.len();
    let mut odd_units = Vec::new();
    let mut even_units = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if layout.parities[r] != layout.parities[c] {
                odd_units.push((r, c));
            } else {
                even_units.push((r, c));
            }
        }
    }
    let even_index: std::collections::HashMap<(usize, usize), usize> = even_units
        .iter()
        .enumerate()
        .map(|(i, &u)| (u, i))
        .collect();
    // [f, E_{rc}] = E_{succ(r),c} − E_{r,pred(c)}; both targets are even units.
    let mut ad_f = Matrix::zero(even_units.len(), odd_units.len(), &dom);
    for (col, &(r, c)) in odd_units.iter().enumerate() {
        if let Some(s) = layout.succ[r] {
            let row = even_index[&(s, c)];
            let v = ad_f.get(row, col).add(&Scalar::one(&dom));
            ad_f.set(row, col, v);
        }
        if let Some(pc) = layout.pred[c] {
            let row = even_index[&(r, pc)];
            let v = ad_f.get(row, col).sub(&Scalar::one(&dom));
            ad_f.set(row, col, v);
        }
    }
    let kernel = ad_f.kernel_basis();
    let m = kernel.cols();
    if m == 0 {
        return Ok(0);
    }
    // ad h is diagonal on units with eigenvalue w(r) − w(c); the kernel is
    // ad h-stable, so solve K·C = (ad h)K and take the trace of C.
    let mut hk = kernel.clone();
    for (row, &(r, c)) in odd_units.iter().enumerate() {
        let w = Scalar::from_int(layout.weights[r] - layout.weights[c], &dom);
        for col in 0..m {
            let v = hk.get(row, col).mul(&w);
            hk.set(row, col, v);
        }
    }
    let restricted = kernel.solve(&hk)?;
    let tr = restricted.trace()?;
    let tr_int = tr
        .as_rational()
        .filter(|r| r.is_integer())
        .map(|r| {
            use num::ToPrimitive;
            r.to_integer().to_i64()
        })
        .flatten()
        .ok_or_else(|| Error::Inconsistency("non-integral restricted trace".into()))?;
    Ok(2 * m as i64 - tr_int)
}

/// Orbit dimension (p²+q²) − dim centralizer, as the rank of ad e from the
/// even units into the odd units. The map shifts weight by exactly 2, so the
/// rank splits over weight blocks; summing small block ranks is fast.
pub fn orbit_dim(d: &GradedDecomposition) -> usize {
    let layout = chain_layout(d);
    let n = layout.parities.len();
    use std::collections::BTreeMap;
    let mut even_by_weight: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    let mut odd_index_by_weight: BTreeMap<i64, BTreeMap<(usize, usize), usize>> = BTreeMap::new();
    for r in 0..n {
        for c in 0..n {
            let w = layout.weights[r] - layout.weights[c];
            if layout.parities[r] == layout.parities[c] {
                even_by_weight.entry(w).or_default().push((r, c));
            } else {
                let m = odd_index_by_weight.entry(w).or_default();
                let next = m.len();
                m.insert((r, c), next);
            }
        }
    }
    let dom = Domain::Rational;
    let mut total_rank = 0;
    for (w, cols) in &even_by_weight {
        let Some(rows) = odd_index_by_weight.get(&(w + 2)) else {
            continue;
        };
        let mut block = Matrix::zero(rows.len(), cols.len(), &dom);
        for (col, &(r, c)) in cols.iter().enumerate() {
            // [e, E_{rc}] = raise(r)·E_{pred(r),c} − raise(succ(c))·E_{r,succ(c)}
            if let Some(pr) = layout.pred[r] {
                let row = rows[&(pr, c)];
                let v = block
                    .get(row, col)
                    .add(&Scalar::from_int(layout.raise_coeff[r], &dom));
                block.set(row, col, v);
            }
            if let Some(sc) = layout.succ[c] {
                let row = rows[&(r, sc)];
                let v = block
                    .get(row, col)
                    .sub(&Scalar::from_int(layout.raise_coeff[sc], &dom));
                block.set(row, col, v);
            }
        }
        total_rank += block.rank();
    }
    total_rank
}

/// One dense rank over the whole even-unit space; cross-checks the weight
/// blocking in [`orbit_dim`].
pub fn orbit_dim_dense(d: &GradedDecomposition) -> Result<usize> {
    let triple = build_sl2_triple(d, &Domain::Rational)?;
    let n = triple.parities.len();
    let dom = Domain::Rational;
    let mut even_units = Vec::new();
    let mut odd_units = std::collections::HashMap::new();
    for r in 0..n {
        for c in 0..n {
            if triple.parities[r] == triple.parities[c] {
                even_units.push((r, c));
            } else {
                let next = odd_units.len();
                odd_units.insert((r, c), next);
            }
        }
    }
    let mut ad_e = Matrix::zero(odd_units.len(), even_units.len(), &dom);
    for (col, &(r, c)) in even_units.iter().enumerate() {
        for rp in 0..n {
            let coeff = triple.e.get(rp, r);
            if !coeff.is_zero() {
                let row = odd_units[&(rp, c)];
                let v = ad_e.get(row, col).add(coeff);
                ad_e.set(row, col, v);
            }
        }
        for cp in 0..n {
            let coeff = triple.e.get(c, cp);
            if !coeff.is_zero() {
                let row = odd_units[&(r, cp)];
                let v = ad_e.get(row, col).sub(coeff);
                ad_e.set(row, col, v);
            }
        }
    }
    Ok(ad_e.rank())
}

/// True iff the orbit dimension is maximal among all decompositions of (p, q).
pub fn is_regular(d: &GradedDecomposition, p: usize, q: usize) -> Result<bool> {
    if d.dims() != (p, q) {
        return Err(Error::DimensionMismatch(format!(
            "decomposition has dims {:?}, expected ({p}, {q})",
            d.dims()
        )));
    }
    let mine = orbit_dim(d);
    let max = enumerate_decompositions(p, q)
        .iter()
        .map(orbit_dim)
        .max()
        .unwrap_or(0);
    Ok(mine == max)
}
