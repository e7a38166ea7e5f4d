//! Nilpotent pairs (x, y), their complete rank-word invariant, classification
//! back to a graded decomposition, and the transpose involution on orbits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Domain, Matrix, Scalar};
use crate::gradedsl2::{
    build_sl2_triple, chain_layout, enumerate_decompositions, Component, GradedDecomposition,
};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentPair {
    x: Matrix,
    y: Matrix,
}

impl NilpotentPair {
    /// x maps the q-space into the p-space (p×q), y the other way (q×p).
    pub fn new(x: Matrix, y: Matrix) -> Result<NilpotentPair> {
        if x.domain() != y.domain() {
            return Err(Error::DomainMismatch(
                x.domain().to_string(),
                y.domain().to_string(),
            ));
        }
        if x.rows() != y.cols() || x.cols() != y.rows() {
            return Err(Error::ShapeMismatch(format!(
                "x is {}x{}, y is {}x{}; need p×q and q×p",
                x.rows(),
                x.cols(),
                y.rows(),
                y.cols()
            )));
        }
        Ok(NilpotentPair { x, y })
    }

    pub fn zero(p: usize, q: usize, domain: &Domain) -> NilpotentPair {
        NilpotentPair {
            x: Matrix::zero(p, q, domain),
            y: Matrix::zero(q, p, domain),
        }
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    pub fn p(&self) -> usize {
        self.x.rows()
    }

    pub fn q(&self) -> usize {
        self.x.cols()
    }

    pub fn domain(&self) -> &Domain {
        self.x.domain()
    }
}

/// True iff (xy)^p = 0.
pub fn is_nilpotent_pair(e: &NilpotentPair) -> bool {
    let xy = e.x.mul(&e.y).expect("shapes validated at construction");
    xy.pow(e.p() as u32).expect("square").is_zero()
}

/// Ranks of all alternating words in (x, y), each sequence indexed by
/// k = 0..=p+q. Distinct orbits have distinct tables, and equal tables imply
/// equal orbits, over any exact domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitInvariant {
    /// rank((xy)^k)
    pub xy_ranks: Vec<usize>,
    /// rank((yx)^k)
    pub yx_ranks: Vec<usize>,
    /// rank(x·(yx)^k)
    pub x_word_ranks: Vec<usize>,
    /// rank(y·(xy)^k)
    pub y_word_ranks: Vec<usize>,
}

pub fn rank_invariant(e: &NilpotentPair) -> OrbitInvariant {
    let cap = e.p() + e.q();
    let xy = e.x.mul(&e.y).expect("shapes validated");
    let yx = e.y.mul(&e.x).expect("shapes validated");
    let mut xy_pow = Matrix::identity(e.p(), e.domain());
    let mut yx_pow = Matrix::identity(e.q(), e.domain());
    let mut inv = OrbitInvariant {
        xy_ranks: Vec::with_capacity(cap + 1),
        yx_ranks: Vec::with_capacity(cap + 1),
        x_word_ranks: Vec::with_capacity(cap + 1),
        y_word_ranks: Vec::with_capacity(cap + 1),
    };
    for _ in 0..=cap {
        inv.xy_ranks.push(xy_pow.rank());
        inv.yx_ranks.push(yx_pow.rank());
        inv.x_word_ranks.push(e.x.mul(&yx_pow).unwrap().rank());
        inv.y_word_ranks.push(e.y.mul(&xy_pow).unwrap().rank());
        xy_pow = xy_pow.mul(&xy).unwrap();
        yx_pow = yx_pow.mul(&yx).unwrap();
    }
    inv
}

/// The invariant a decomposition's representative must have, counted directly
/// on the chains: position j of a chain survives the m-th raising step iff
/// j ≥ m, and contributes to the sequence matching its parity.
pub fn invariant_of_decomposition(d: &GradedDecomposition) -> OrbitInvariant {
    let (p, q) = d.dims();
    let cap = p + q;
    let count = |m: usize, parity: u8| -> usize {
        d.components()
            .iter()
            .map(|c| {
                (m..=c.lambda as usize)
                    .filter(|&j| c.parity_of(j as u32) == parity)
                    .count()
            })
            .sum()
    };
    let mut inv = OrbitInvariant {
        xy_ranks: Vec::with_capacity(cap + 1),
        yx_ranks: Vec::with_capacity(cap + 1),
        x_word_ranks: Vec::with_capacity(cap + 1),
        y_word_ranks: Vec::with_capacity(cap + 1),
    };
    for k in 0..=cap {
        inv.xy_ranks.push(count(2 * k, 0));
        inv.yx_ranks.push(count(2 * k, 1));
        inv.x_word_ranks.push(count(2 * k + 1, 1));
        inv.y_word_ranks.push(count(2 * k + 1, 0));
    }
    inv
}

/// Builds the canonical pair of a decomposition: the raising operator of the
/// chain realization, cut into its two parity blocks. Prime fields need
/// characteristic > p+q so no raising coefficient j(λ−j+1) vanishes.
pub fn representative(d: &GradedDecomposition, domain: &Domain) -> Result<NilpotentPair> {
    let (p, q) = d.dims();
    let l = domain.characteristic();
    if l != 0 && l <= (p + q) as u64 {
        return Err(Error::SmallCharacteristic {
            modulus: l,
            needed: p + q,
        });
    }
    let layout = chain_layout(d);
    let n = layout.parities.len();
    // Global basis index → (parity, position within that parity class).
    let mut slot = vec![0usize; n];
    let mut counts = [0usize; 2];
    for u in 0..n {
        let par = layout.parities[u] as usize;
        slot[u] = counts[par];
        counts[par] += 1;
    }
    debug_assert_eq!(counts, [p, q]);
    let mut x = Matrix::zero(p, q, domain);
    let mut y = Matrix::zero(q, p, domain);
    for u in 0..n {
        let Some(target) = layout.pred[u] else {
            continue;
        };
        let coeff = Scalar::from_int(layout.raise_coeff[u], domain);
        if layout.parities[u] == 1 {
            x.set(slot[target], slot[u], coeff);
        } else {
            y.set(slot[target], slot[u], coeff);
        }
    }
    NilpotentPair::new(x, y)
}

/// Recovers the decomposition of a nilpotent pair from its rank table.
///
/// Writing s_π(m) for the rank of the m-th raising power restricted to the
/// parity-π source block, chains of length exactly λ+1 are the only ones
/// contributing to s_π(λ) beyond what longer chains force, which inverts the
/// table triangularly from long chains down.
pub fn classify(e: &NilpotentPair) -> Result<GradedDecomposition> {
    let (p, q) = (e.p(), e.q());
    let l = e.domain().characteristic();
    if l != 0 && l <= (p + q) as u64 {
        return Err(Error::SmallCharacteristic {
            modulus: l,
            needed: p + q,
        });
    }
    if !is_nilpotent_pair(e) {
        return Err(Error::NotNilpotent { power: p });
    }
    let inv = rank_invariant(e);
    let d = classify_invariant(&inv, p, q)?;
    if invariant_of_decomposition(&d) != inv {
        return Err(Error::Inconsistency(
            "rank table does not match any decomposition".into(),
        ));
    }
    Ok(d)
}

fn classify_invariant(inv: &OrbitInvariant, p: usize, q: usize) -> Result<GradedDecomposition> {
    if p + q == 0 {
        return GradedDecomposition::new(vec![]);
    }
    let lmax = p + q - 1;
    // s[π][m]
    let s = |pi: u8, m: usize| -> i64 {
        let k = m / 2;
        let v = match (m % 2, pi) {
            (0, 0) => inv.xy_ranks.get(k),
            (0, 1) => inv.yx_ranks.get(k),
            (1, 1) => inv.x_word_ranks.get(k),
            _ => inv.y_word_ranks.get(k),
        };
        v.copied().unwrap_or(0) as i64
    };
    // Chains of length λ'+1 contribute to s_π(m) one position for each offset
    // u in [0, λ'−m] with u ≡ π + ω' (mod 2).
    let offsets = |len: i64, par: i64| -> i64 {
        if len < par {
            0
        } else {
            (len - par) / 2 + 1
        }
    };
    let mut counts = vec![[0i64; 2]; lmax + 1];
    for lambda in (0..=lmax).rev() {
        for pi in 0..2u8 {
            let mut expected = 0;
            for longer in lambda + 1..=lmax {
                for omega in 0..2usize {
                    let par = (pi as usize + omega) as i64 % 2;
                    expected += counts[longer][omega] * offsets((longer - lambda) as i64, par);
                }
            }
            let c = s(pi, lambda) - expected;
            if c < 0 {
                return Err(Error::Inconsistency(format!(
                    "negative multiplicity for chain ({lambda}, {pi})"
                )));
            }
            counts[lambda][pi as usize] = c;
        }
    }
    let mut comps = Vec::new();
    for (lambda, pair) in counts.iter().enumerate() {
        for omega in 0..2u8 {
            for _ in 0..pair[omega as usize] {
                comps.push(Component {
                    lambda: lambda as u32,
                    omega,
                });
            }
        }
    }
    let d = GradedDecomposition::new(comps)?;
    if d.dims() != (p, q) {
        return Err(Error::Inconsistency(format!(
            "recovered dims {:?} instead of ({p}, {q})",
            d.dims()
        )));
    }
    Ok(d)
}

/// The transpose involution on pairs: (x, y) ↦ (yᵗ, xᵗ).
pub fn transpose_move(e: &NilpotentPair) -> NilpotentPair {
    NilpotentPair {
        x: e.y.transpose(),
        y: e.x.transpose(),
    }
}

/// The induced map on orbits: even-λ components are fixed, odd-λ components
/// flip ω. Certified against classify∘transpose_move in the test suite.
pub fn transpose_orbit(d: &GradedDecomposition) -> GradedDecomposition {
    let comps = d
        .components()
        .iter()
        .map(|c| Component {
            lambda: c.lambda,
            omega: if c.lambda % 2 == 1 {
                1 - c.omega
            } else {
                c.omega
            },
        })
        .collect();
    GradedDecomposition::new(comps).expect("parities stay valid")
}

pub fn is_transpose_stable(d: &GradedDecomposition) -> bool {
    transpose_orbit(d) == *d
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub p: usize,
    pub q: usize,
    pub pairs_scanned: u64,
    pub nilpotent_pairs: u64,
    pub distinct_invariants: usize,
    pub enumerated_orbits: usize,
    /// Observed invariant set equals the set predicted by the enumeration.
    pub matches_enumeration: bool,
}

const CENSUS_ENTRY_CAP: u32 = 16;

/// Scans every pair over F_2 (all 2^{2pq} of them), keeps the nilpotent ones,
/// and compares the set of observed rank tables with the tables of all
/// enumerated decompositions. Chains over F_2 use unit raising coefficients,
/// so the tables are the same as in characteristic zero.
pub fn f2_rank_census(p: usize, q: usize) -> Result<CensusReport> {
    let bits = 2 * p * q;
    if bits as u32 > CENSUS_ENTRY_CAP {
        return Err(Error::InvalidParameter(format!(
            "census over F_2 needs 2pq ≤ {CENSUS_ENTRY_CAP}, got {bits}"
        )));
    }
    let dom = Domain::prime_field(2).expect("2 is prime");
    let total: u64 = 1 << bits;
    let chunk = 1u64 << bits.min(10);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let chunk_results = par::map_collect(starts, |start| {
        let mut seen = std::collections::BTreeSet::new();
        let mut nilpotent = 0u64;
        for code in start..(start + chunk).min(total) {
            let pair = pair_from_code(code, p, q, &dom);
            if !is_nilpotent_pair(&pair) {
                continue;
            }
            nilpotent += 1;
            seen.insert(rank_invariant(&pair));
        }
        (seen, nilpotent)
    });
    let mut seen = std::collections::BTreeSet::new();
    let mut nilpotent = 0;
    for (s, n) in chunk_results {
        seen.extend(s);
        nilpotent += n;
    }
    let expected: std::collections::BTreeSet<OrbitInvariant> = enumerate_decompositions(p, q)
        .iter()
        .map(invariant_of_decomposition)
        .collect();
    Ok(CensusReport {
        p,
        q,
        pairs_scanned: total,
        nilpotent_pairs: nilpotent,
        distinct_invariants: seen.len(),
        enumerated_orbits: expected.len(),
        matches_enumeration: seen == expected,
    })
}

fn pair_from_code(code: u64, p: usize, q: usize, dom: &Domain) -> NilpotentPair {
    let bit = |i: usize| Scalar::from_int(((code >> i) & 1) as i64, dom);
    let x = Matrix::from_fn(p, q, dom, |i, j| bit(i * q + j)).unwrap();
    let y = Matrix::from_fn(q, p, dom, |i, j| bit(p * q + i * p + j)).unwrap();
    NilpotentPair::new(x, y).unwrap()
}

/// The chain raising operator of the whole decomposition as one (p+q)-square
/// matrix in parity-sorted basis order: [[0, x], [y, 0]].
pub fn assembled_endomorphism(e: &NilpotentPair) -> Matrix {
    let (p, q) = (e.p(), e.q());
    let n = p + q;
    let dom = e.domain();
    let mut m = Matrix::zero(n, n, dom);
    for i in 0..p {
        for j in 0..q {
            m.set(i, p + j, e.x.get(i, j).clone());
        }
    }
    for i in 0..q {
        for j in 0..p {
            m.set(p + i, j, e.y.get(i, j).clone());
        }
    }
    m
}

/// Cross-check helper: the representative's assembled endomorphism must be
/// conjugate to the triple's raising matrix; both square to equal rank
/// profiles. Used in tests rather than production paths.
pub fn representative_consistent_with_triple(d: &GradedDecomposition) -> Result<bool> {
    let dom = Domain::Rational;
    let pair = representative(d, &dom)?;
    let assembled = assembled_endomorphism(&pair);
    let triple = build_sl2_triple(d, &dom)?;
    for k in 0..=(d.p() + d.q()) as u32 {
        if assembled.pow(k)?.rank() != triple.e.pow(k)?.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Domain {
        Domain::Rational
    }

    fn d(pairs: &[(u32, u8)]) -> GradedDecomposition {
        GradedDecomposition::from_pairs(pairs)
    }

    #[test]
    fn nilpotency_checks() {
        assert!(is_nilpotent_pair(&NilpotentPair::zero(1, 2, &q())));
        // x = (1 0), y = (1, 0)ᵗ gives xy = (1): not nilpotent.
        let x = Matrix::from_int_rows(&q(), &[vec![1, 0]]).unwrap();
        let y = Matrix::from_int_rows(&q(), &[vec![1], vec![0]]).unwrap();
        let bad = NilpotentPair::new(x.clone(), y).unwrap();
        assert!(!is_nilpotent_pair(&bad));
        assert!(matches!(classify(&bad), Err(Error::NotNilpotent { power: 1 })));
        // Regular pair at (1,2): xy = 0.
        let y0 = Matrix::from_int_rows(&q(), &[vec![0], vec![1]]).unwrap();
        assert!(is_nilpotent_pair(&NilpotentPair::new(x, y0).unwrap()));
    }

    #[test]
    fn representative_anchor_6_8() {
        let anchor = d(&[(8, 1), (2, 1), (1, 1)]);
        let pair = representative(&anchor, &q()).unwrap();
        assert_eq!((pair.p(), pair.q()), (6, 8));
        assert_eq!(pair.x().rank(), 6);
        assert_eq!(pair.y().rank(), 5);
        assert!(is_nilpotent_pair(&pair));
        assert!(!is_transpose_stable(&anchor));
        assert_eq!(classify(&pair).unwrap(), anchor);
    }

    #[test]
    fn representative_micro_cases() {
        // Chain (1, 1): lowest vector has parity 1, so the single raising step
        // maps the parity-1 line onto the parity-0 line: x ≠ 0, y = 0.
        let pair = representative(&d(&[(1, 1)]), &q()).unwrap();
        assert!(!pair.x().is_zero());
        assert!(pair.y().is_zero());
        // Chain (1, 0) is the mirror image.
        let pair = representative(&d(&[(1, 0)]), &q()).unwrap();
        assert!(pair.x().is_zero());
        assert!(!pair.y().is_zero());
        // Zero decomposition.
        let z = representative(&d(&[(0, 0), (0, 1), (0, 1)]), &q()).unwrap();
        assert!(z.x().is_zero() && z.y().is_zero());
    }

    #[test]
    fn classify_micro_cases() {
        let zero = NilpotentPair::zero(1, 2, &q());
        assert_eq!(classify(&zero).unwrap(), d(&[(0, 0), (0, 1), (0, 1)]));
        let x = Matrix::from_int_rows(&q(), &[vec![1, 0]]).unwrap();
        let y = Matrix::zero(2, 1, &q());
        let e = NilpotentPair::new(x, y).unwrap();
        assert_eq!(classify(&e).unwrap(), d(&[(1, 1), (0, 1)]));
        let reg = representative(&d(&[(2, 1)]), &q()).unwrap();
        assert_eq!(classify(&reg).unwrap(), d(&[(2, 1)]));
    }

    #[test]
    fn round_trip_all_small() {
        for p in 0..=3 {
            for q_ in 0..=3 {
                if p + q_ == 0 {
                    continue;
                }
                for dec in enumerate_decompositions(p, q_) {
                    let pair = representative(&dec, &q()).unwrap();
                    assert!(is_nilpotent_pair(&pair), "{dec:?}");
                    assert_eq!(classify(&pair).unwrap(), dec, "round trip at {dec:?}");
                    assert_eq!(
                        rank_invariant(&pair),
                        invariant_of_decomposition(&dec),
                        "combinatorial invariant at {dec:?}"
                    );
                    assert!(representative_consistent_with_triple(&dec).unwrap());
                }
            }
        }
    }

    #[test]
    fn invariants_are_pairwise_distinct() {
        for (p, q_) in [(2, 2), (2, 3), (3, 3)] {
            let tables: Vec<OrbitInvariant> = enumerate_decompositions(p, q_)
                .iter()
                .map(invariant_of_decomposition)
                .collect();
            let mut sorted = tables.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), tables.len(), "collision at ({p},{q_})");
        }
    }

    #[test]
    fn transpose_rule_matches_matrix_oracle() {
        for p in 0..=3 {
            for q_ in 0..=3 {
                if p + q_ == 0 {
                    continue;
                }
                for dec in enumerate_decompositions(p, q_) {
                    let pair = representative(&dec, &q()).unwrap();
                    let moved = transpose_move(&pair);
                    assert_eq!(
                        classify(&moved).unwrap(),
                        transpose_orbit(&dec),
                        "transpose rule at {dec:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose_orbit(&d(&[(1, 0), (0, 1)])), d(&[(1, 1), (0, 1)]));
        assert_eq!(
            transpose_orbit(&d(&[(8, 1), (2, 1), (1, 1)])),
            d(&[(8, 1), (2, 1), (1, 0)])
        );
        assert!(is_transpose_stable(&d(&[(2, 1)])));
        assert!(is_transpose_stable(&d(&[(0, 0), (0, 1)])));
        // Involution.
        for p in 0..=3 {
            for q_ in 0..=3 {
                for dec in enumerate_decompositions(p, q_) {
                    assert_eq!(transpose_orbit(&transpose_orbit(&dec)), dec);
                    let (dp, dq) = transpose_orbit(&dec).dims();
                    assert_eq!((dp, dq), (p, q_), "transpose preserves dims");
                }
            }
        }
    }

    #[test]
    fn stable_iff_no_odd_chains_mismatch() {
        // A decomposition is transpose-stable iff for each odd λ the two
        // parities appear with equal multiplicity.
        for dec in enumerate_decompositions(2, 3) {
            let mut balance = std::collections::BTreeMap::new();
            for c in dec.components() {
                if c.lambda % 2 == 1 {
                    *balance.entry(c.lambda).or_insert(0i64) +=
                        if c.omega == 0 { 1 } else { -1 };
                }
            }
            let expect = balance.values().all(|&v| v == 0);
            assert_eq!(is_transpose_stable(&dec), expect, "{dec:?}");
        }
    }

    #[test]
    fn small_characteristic_guard() {
        let f2 = Domain::prime_field(2).unwrap();
        let dec = d(&[(2, 1)]);
        assert!(matches!(
            representative(&dec, &f2),
            Err(Error::SmallCharacteristic { .. })
        ));
        let pair = NilpotentPair::zero(1, 2, &f2);
        assert!(matches!(
            classify(&pair),
            Err(Error::SmallCharacteristic { .. })
        ));
        // Large enough prime field classifies fine.
        let f11 = Domain::prime_field(11).unwrap();
        let rep = representative(&dec, &f11).unwrap();
        assert_eq!(classify(&rep).unwrap(), dec);
    }

    #[test]
    fn census_tiny() {
        let r = f2_rank_census(1, 1).unwrap();
        assert_eq!(r.pairs_scanned, 4);
        // (0,0), (1,0), (0,1) are nilpotent; (1,1) has xy = 1.
        assert_eq!(r.nilpotent_pairs, 3);
        assert_eq!(r.distinct_invariants, 3);
        assert_eq!(r.enumerated_orbits, 3);
        assert!(r.matches_enumeration);

        let r = f2_rank_census(1, 2).unwrap();
        assert_eq!(r.distinct_invariants, 4);
        assert!(r.matches_enumeration);

        assert!(f2_rank_census(4, 4).is_err());
    }
}
