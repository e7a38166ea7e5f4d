//! Exact scalar domains: rationals, prime fields F_l, and cyclotomic fields
//! Q[x]/Phi_m(x). Every value is kept in canonical form (reduced fractions,
//! residues in [0, l), cyclotomic coordinates reduced mod Phi_m and padded to
//! degree phi(m)), so `==` is structural equality of mathematical values.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::error::{Error, Result};

/// Tag identifying one of the supported coefficient fields.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    Rational,
    /// F_l for a prime l.
    PrimeField(u64),
    /// Q[x]/Phi_m(x), the m-th cyclotomic field.
    Cyclotomic(u32),
}

impl Domain {
    /// Validated constructor for F_l; rejects composite moduli.
    pub fn prime_field(modulus: u64) -> Result<Domain> {
        if is_prime_u64(modulus) {
            Ok(Domain::PrimeField(modulus))
        } else {
            Err(Error::InvalidParameter(format!(
                "{modulus} is not prime; prime-field domains need a prime modulus"
            )))
        }
    }

    pub fn cyclotomic(order: u32) -> Result<Domain> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "cyclotomic order must be positive".into(),
            ));
        }
        Ok(Domain::Cyclotomic(order))
    }

    /// Degree over Q (1 for Q itself and for prime fields).
    pub fn degree(&self) -> usize {
        match self {
            Domain::Cyclotomic(m) => euler_phi(*m) as usize,
            _ => 1,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::PrimeField(l) => *l,
            _ => 0,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::PrimeField(l) => write!(f, "Fp:{l}"),
            Domain::Cyclotomic(m) => write!(f, "Cyc:{m}"),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Domain> {
        if s == "Q" {
            return Ok(Domain::Rational);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let l: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime-field modulus {rest:?}")))?;
            return Domain::prime_field(l);
        }
        if let Some(rest) = s.strip_prefix("Cyc:") {
            let m: u32 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclotomic order {rest:?}")))?;
            return Domain::cyclotomic(m);
        }
        Err(Error::Parse(format!(
            "unknown domain {s:?} (expected Q, Fp:<l> or Cyc:<m>)"
        )))
    }
}

/// An exact field element. All arithmetic between mismatched domains is a
/// programming error and panics; fallible entry points validate domains first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { residue: u64, modulus: u64 },
    /// Coordinates c_0..c_{phi(m)-1} w.r.t. powers of zeta_m, reduced mod Phi_m.
    Cyc { coeffs: Vec<BigRational>, order: u32 },
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rat(_) => Domain::Rational,
            Scalar::Mod { modulus, .. } => Domain::PrimeField(*modulus),
            Scalar::Cyc { order, .. } => Domain::Cyclotomic(*order),
        }
    }

    pub fn zero(domain: &Domain) -> Scalar {
        Scalar::from_int(0, domain)
    }

    pub fn one(domain: &Domain) -> Scalar {
        Scalar::from_int(1, domain)
    }

    /// The integer v embedded into `domain`.
    pub fn from_int(v: i64, domain: &Domain) -> Scalar {
        match domain {
            Domain::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Domain::PrimeField(l) => Scalar::Mod {
                residue: (v as i128).rem_euclid(*l as i128) as u64,
                modulus: *l,
            },
            Domain::Cyclotomic(m) => {
                let deg = Domain::Cyclotomic(*m).degree();
                let mut coeffs = vec![BigRational::zero(); deg];
                coeffs[0] = BigRational::from_integer(BigInt::from(v));
                Scalar::Cyc { coeffs, order: *m }
            }
        }
    }

    /// A rational number embedded into `domain` (reduces mod l for prime
    /// fields; fails if the denominator vanishes there).
    pub fn from_rational_in(r: &BigRational, domain: &Domain) -> Result<Scalar> {
        match domain {
            Domain::Rational => Ok(Scalar::Rat(r.clone())),
            Domain::PrimeField(l) => {
                let num = bigint_mod(r.numer(), *l);
                let den = bigint_mod(r.denom(), *l);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Mod {
                    residue: mul_mod(num, inv_mod(den, *l).ok_or(Error::DivisionByZero)?, *l),
                    modulus: *l,
                })
            }
            Domain::Cyclotomic(m) => {
                let deg = domain.degree();
                let mut coeffs = vec![BigRational::zero(); deg];
                coeffs[0] = r.clone();
                let _ = deg;
                Ok(Scalar::Cyc {
                    coeffs,
                    order: *m,
                })
            }
        }
    }

    /// zeta_m^j as an element of Cyc:m.
    pub fn cyclotomic_root(order: u32, power: u32) -> Result<Scalar> {
        let domain = Domain::cyclotomic(order)?;
        let j = (power % order) as usize;
        let mut raw = vec![BigRational::zero(); j + 1];
        raw[j] = BigRational::one();
        Ok(reduce_cyclotomic(raw, order, domain.degree()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { residue, .. } => *residue == 0,
            Scalar::Cyc { coeffs, .. } => coeffs.iter().all(BigRational::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one(&self.domain())
    }

    /// The underlying rational, if this is a rational (or a constant
    /// cyclotomic) value.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc { coeffs, .. } if coeffs[1..].iter().all(BigRational::is_zero) => {
                Some(&coeffs[0])
            }
            _ => None,
        }
    }

    fn assert_same_domain(&self, rhs: &Scalar) {
        debug_assert_eq!(
            self.domain(),
            rhs.domain(),
            "scalar arithmetic across domains"
        );
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.assert_same_domain(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { residue: a, modulus }, Scalar::Mod { residue: b, .. }) => Scalar::Mod {
                residue: add_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            (Scalar::Cyc { coeffs: a, order }, Scalar::Cyc { coeffs: b, .. }) => Scalar::Cyc {
                coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                order: *order,
            },
            _ => panic!("scalar arithmetic across domains"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { residue, modulus } => Scalar::Mod {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
            Scalar::Cyc { coeffs, order } => Scalar::Cyc {
                coeffs: coeffs.iter().map(|c| -c).collect(),
                order: *order,
            },
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.assert_same_domain(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { residue: a, modulus }, Scalar::Mod { residue: b, .. }) => Scalar::Mod {
                residue: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            (Scalar::Cyc { coeffs: a, order }, Scalar::Cyc { coeffs: b, .. }) => {
                let deg = a.len();
                let mut raw = vec![BigRational::zero(); 2 * deg];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            raw[i + j] += x * y;
                        }
                    }
                }
                reduce_cyclotomic(raw, *order, deg)
            }
            _ => panic!("scalar arithmetic across domains"),
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rat(a) => Ok(Scalar::Rat(a.recip())),
            Scalar::Mod { residue, modulus } => Ok(Scalar::Mod {
                residue: inv_mod(*residue, *modulus).ok_or(Error::DivisionByZero)?,
                modulus: *modulus,
            }),
            Scalar::Cyc { coeffs, order } => {
                // Extended Euclid against Phi_m in Q[x]; Phi_m is irreducible,
                // so any nonzero residue is a unit.
                let phi: Vec<BigRational> = cyclotomic_polynomial(*order)
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                let inv = poly_mod_inverse(coeffs, &phi).ok_or_else(|| {
                    Error::Inconsistency("cyclotomic inverse failed for a nonzero element".into())
                })?;
                let deg = coeffs.len();
                Ok(reduce_cyclotomic(inv, *order, deg))
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: u64) -> Scalar {
        let mut acc = Scalar::one(&self.domain());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer power with negative exponents allowed (needs invertibility).
    pub fn pow_signed(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// A deterministic total order inside one domain, used to canonicalize
    /// multisets for output. Panics across domains.
    pub fn canonical_cmp(&self, rhs: &Scalar) -> Ordering {
        self.assert_same_domain(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { residue: a, .. }, Scalar::Mod { residue: b, .. }) => a.cmp(b),
            (Scalar::Cyc { coeffs: a, .. }, Scalar::Cyc { coeffs: b, .. }) => a
                .iter()
                .zip(b)
                .map(|(x, y)| x.cmp(y))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal),
            _ => unreachable!(),
        }
    }

    /// Canonical matrix-entry rendering: `a` or `a/b` for rationals, the
    /// residue for prime fields, comma-joined coordinates for cyclotomics.
    pub fn entry_string(&self) -> String {
        match self {
            Scalar::Rat(r) => format_rational(r),
            Scalar::Mod { residue, .. } => residue.to_string(),
            Scalar::Cyc { coeffs, .. } => coeffs
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    /// Parses the entry syntax of `entry_string` for a known domain.
    pub fn parse_entry(s: &str, domain: &Domain) -> Result<Scalar> {
        let s = s.trim();
        match domain {
            Domain::Rational => Ok(Scalar::Rat(parse_rational(s)?)),
            Domain::PrimeField(l) => {
                let v: i128 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                Ok(Scalar::Mod {
                    residue: v.rem_euclid(*l as i128) as u64,
                    modulus: *l,
                })
            }
            Domain::Cyclotomic(m) => {
                let deg = domain.degree();
                let parts: Vec<&str> = s.split(',').collect();
                if parts.len() > deg {
                    return Err(Error::Parse(format!(
                        "cyclotomic entry {s:?} has {} coordinates, domain degree is {deg}",
                        parts.len()
                    )));
                }
                let mut coeffs = vec![BigRational::zero(); deg];
                for (i, p) in parts.iter().enumerate() {
                    coeffs[i] = parse_rational(p.trim())?;
                }
                Ok(Scalar::Cyc {
                    coeffs,
                    order: *m,
                })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entry_string())
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let numer = BigInt::from_str(n.trim()).map_err(|_| bad_rat(s))?;
        let denom = BigInt::from_str(d.trim()).map_err(|_| bad_rat(s))?;
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(numer, denom))
    } else {
        let numer = BigInt::from_str(s).map_err(|_| bad_rat(s))?;
        Ok(BigRational::from_integer(numer))
    }
}

fn bad_rat(s: &str) -> Error {
    Error::Parse(format!("bad rational {s:?}"))
}

// ---- prime field helpers ----

fn add_mod(a: u64, b: u64, l: u64) -> u64 {
    ((a as u128 + b as u128) % l as u128) as u64
}

fn mul_mod(a: u64, b: u64, l: u64) -> u64 {
    ((a as u128 * b as u128) % l as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut acc = 1 % l;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, l);
        }
        a = mul_mod(a, a, l);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, l: u64) -> Option<u64> {
    if a % l == 0 {
        return None;
    }
    // l is prime, so Fermat works and avoids signed bookkeeping.
    Some(pow_mod(a, l - 2, l))
}

fn bigint_mod(v: &BigInt, l: u64) -> u64 {
    let m = BigInt::from(l);
    let r = v.mod_floor(&m);
    let (_, digits) = r.to_u64_digits();
    *digits.first().unwrap_or(&0)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn euler_phi(mut m: u32) -> u32 {
    let mut phi = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

// ---- cyclotomic helpers ----

/// Phi_m as a monic integer polynomial (ascending coefficients), cached.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

/// Exact division of integer polynomials with monic divisor.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let t = dc * &c;
            rem[k + i] -= t;
        }
    }
    assert!(rem.iter().all(BigInt::is_zero), "division was not exact");
    quot
}

/// Reduces raw coordinates (any length) mod Phi_m and pads to length deg.
fn reduce_cyclotomic(mut raw: Vec<BigRational>, order: u32, deg: usize) -> Scalar {
    let phi = cyclotomic_polynomial(order);
    while raw.len() > deg {
        let top = raw.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = raw.len() - deg; // subtract top * x^k * Phi
        for (i, c) in phi.iter().take(deg).enumerate() {
            if !c.is_zero() {
                let t = &top * BigRational::from_integer(c.clone());
                raw[k + i] -= t;
            }
        }
    }
    raw.resize(deg, BigRational::zero());
    Scalar::Cyc {
        coeffs: raw,
        order,
    }
}

/// Inverse of `a` modulo the monic polynomial `modulus` over Q, via extended
/// Euclid; None if a is zero or shares a factor (cannot happen for Phi_m).
fn poly_mod_inverse(a: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    type P = Vec<BigRational>;
    fn deg(p: &P) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }
    fn divrem(num: &P, den: &P) -> (P, P) {
        let dd = deg(den).expect("division by zero polynomial");
        let lead = den[dd].clone();
        let mut rem = num.clone();
        let mut quot = vec![BigRational::zero(); num.len().max(dd + 1)];
        while let Some(nd) = deg(&rem) {
            if nd < dd {
                break;
            }
            let c = &rem[nd] / &lead;
            quot[nd - dd] = c.clone();
            for i in 0..=dd {
                let t = &den[i] * &c;
                rem[nd - dd + i] -= t;
            }
        }
        (quot, rem)
    }
    fn mul(a: &P, b: &P) -> P {
        let mut out = vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }
    fn sub(a: &P, b: &P) -> P {
        let mut out = a.clone();
        out.resize(a.len().max(b.len()), BigRational::zero());
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        out
    }

    deg(&a.to_vec())?;
    // Invariants: r0 = s0*a + t0*modulus, r1 = s1*a + t1*modulus (t's dropped).
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    let mut s0: P = vec![BigRational::zero()];
    let mut s1: P = vec![BigRational::one()];
    while deg(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is now a nonzero constant gcd; scale s0 by its inverse.
    let d = deg(&r0)?;
    if d != 0 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.iter().map(|x| x * &c).collect())
}
