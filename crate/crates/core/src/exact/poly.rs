//! Univariate polynomials over one exact scalar domain. Coefficients are
//! ascending with no trailing zeros (the zero polynomial has an empty
//! coefficient vector), so equality is canonical.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::{Domain, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    domain: Domain,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(domain: Domain, mut coeffs: Vec<Scalar>) -> Result<Polynomial> {
        for c in &coeffs {
            if c.domain() != domain {
                return Err(Error::DomainMismatch(
                    domain.to_string(),
                    c.domain().to_string(),
                ));
            }
        }
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Ok(Polynomial { domain, coeffs })
    }

    pub fn from_int_coeffs(domain: &Domain, coeffs: &[i64]) -> Polynomial {
        let cs = coeffs.iter().map(|&v| Scalar::from_int(v, domain)).collect();
        Polynomial::new(domain.clone(), cs).expect("integer coefficients embed cleanly")
    }

    pub fn zero(domain: &Domain) -> Polynomial {
        Polynomial {
            domain: domain.clone(),
            coeffs: vec![],
        }
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::new(c.domain(), vec![c]).unwrap()
    }

    /// x^k
    pub fn monomial(domain: &Domain, k: usize) -> Polynomial {
        let mut coeffs = vec![Scalar::zero(domain); k + 1];
        coeffs[k] = Scalar::one(domain);
        Polynomial {
            domain: domain.clone(),
            coeffs,
        }
    }

    /// x - r
    pub fn x_minus(r: &Scalar) -> Polynomial {
        Polynomial::new(r.domain(), vec![r.neg(), Scalar::one(&r.domain())]).unwrap()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.domain))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(Scalar::is_one)
    }

    fn normalized(domain: Domain, mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { domain, coeffs }
    }

    fn check_domain(&self, rhs: &Polynomial) -> Result<()> {
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch(
                self.domain.to_string(),
                rhs.domain.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_domain(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Ok(Polynomial::normalized(self.domain.clone(), coeffs))
    }

    pub fn sub(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            domain: self.domain.clone(),
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_domain(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Polynomial::zero(&self.domain));
        }
        let mut coeffs =
            vec![Scalar::zero(&self.domain); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(Polynomial::normalized(self.domain.clone(), coeffs))
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Polynomial {
        Polynomial::normalized(
            self.domain.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, rhs: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_domain(rhs)?;
        let Some(dd) = rhs.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = rhs.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd && !(rem.len() == dd + 1) {
            // degree(self) < degree(rhs)
        }
        let qlen = self.coeffs.len().saturating_sub(dd);
        let mut quot = vec![Scalar::zero(&self.domain); qlen.max(1)];
        while rem.len() > dd {
            let nd = rem.len() - 1;
            let c = rem[nd].mul(&lead_inv);
            if !c.is_zero() {
                quot[nd - dd] = c.clone();
                for i in 0..=dd {
                    let t = rhs.coeffs[i].mul(&c);
                    rem[nd - dd + i] = rem[nd - dd + i].sub(&t);
                }
            }
            rem.pop(); // leading term is now exactly zero
            while rem.last().is_some_and(Scalar::is_zero) && rem.len() > dd {
                rem.pop();
            }
        }
        Ok((
            Polynomial::normalized(self.domain.clone(), quot),
            Polynomial::normalized(self.domain.clone(), rem),
        ))
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&Scalar::from_int(i as i64, &self.domain)))
            .collect();
        Polynomial::normalized(self.domain.clone(), coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(&self.domain);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn make_monic(&self) -> Result<Polynomial> {
        let lead = self.lead().ok_or(Error::ZeroPolynomial)?;
        Ok(self.mul_scalar(&lead.inv()?))
    }

    /// Monic gcd via Euclid; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_domain(rhs)?;
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.make_monic()
        }
    }

    /// True iff gcd(f, f') is a unit. Valid in characteristic 0 or when the
    /// characteristic exceeds the degree; smaller prime fields are rejected
    /// because the derivative criterion breaks down there.
    pub fn is_squarefree(&self) -> Result<bool> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        let l = self.domain.characteristic();
        if l != 0 && l <= deg as u64 {
            return Err(Error::SmallCharacteristic {
                modulus: l,
                needed: deg,
            });
        }
        if deg == 0 {
            return Ok(true);
        }
        let g = self.gcd(&self.derivative())?;
        Ok(g.degree() == Some(0))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Scalar::one(&self.domain));
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// Divides out (x − r) as often as it goes; returns (quotient, multiplicity).
    pub fn strip_root(&self, r: &Scalar) -> Result<(Polynomial, usize)> {
        let lin = Polynomial::x_minus(r);
        let mut f = self.clone();
        let mut mult = 0;
        while !f.is_zero() && f.eval(r).is_zero() {
            let (q, rem) = f.divrem(&lin)?;
            debug_assert!(rem.is_zero());
            f = q;
            mult += 1;
        }
        Ok((f, mult))
    }

    /// All roots lying in the coefficient domain, with multiplicities, plus the
    /// residual factor with no roots in the domain. Rational roots come from
    /// divisor enumeration (with a quadratic-discriminant shortcut); prime
    /// fields are scanned; higher-degree cyclotomic search is unsupported.
    pub fn roots_in_domain(&self) -> Result<(Vec<(Scalar, usize)>, Polynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots: Vec<(Scalar, usize)> = Vec::new();
        let mut f = self.clone();
        // x = 0 first, so the constant term is nonzero afterwards.
        let zero = Scalar::zero(&self.domain);
        let (f0, m0) = f.strip_root(&zero)?;
        if m0 > 0 {
            roots.push((zero, m0));
            f = f0;
        }
        loop {
            match f.degree() {
                None | Some(0) => break,
                Some(1) => {
                    let r = f.coeff(0).neg().div(&f.coeff(1))?;
                    let (q, m) = f.strip_root(&r)?;
                    merge_root(&mut roots, r, m);
                    f = q;
                    continue;
                }
                Some(_) => {}
            }
            let found = match &self.domain {
                Domain::Rational => find_rational_root(&f)?,
                Domain::PrimeField(l) => find_prime_field_root(&f, *l)?,
                Domain::Cyclotomic(_) => {
                    return Err(Error::Unsupported {
                        domain: self.domain.to_string(),
                        what: "root search in degree > 1".into(),
                    })
                }
            };
            match found {
                Some(r) => {
                    let (q, m) = f.strip_root(&r)?;
                    debug_assert!(m > 0);
                    merge_root(&mut roots, r, m);
                    f = q;
                }
                None => break,
            }
        }
        roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Ok((roots, f))
    }

    /// For a palindromic polynomial R of even degree 2u, returns the monic
    /// degree-u polynomial S with R(t) = t^u · S(t + 1/t); the roots of S are
    /// the trace parameters of R's quadratic factors t² − st + 1.
    pub fn palindromic_trace_poly(&self) -> Result<Polynomial> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg % 2 != 0 {
            return Err(Error::Inconsistency(format!(
                "palindromic reduction needs even degree, got {deg}"
            )));
        }
        let u = deg / 2;
        for k in 0..=deg {
            if self.coeff(k) != self.coeff(deg - k) {
                return Err(Error::Inconsistency(
                    "polynomial is not palindromic".into(),
                ));
            }
        }
        // t^k + t^{-k} = P_k(t + 1/t): P_0 = 2, P_1 = x, P_{k+1} = x·P_k − P_{k−1}.
        let d = &self.domain;
        let x = Polynomial::monomial(d, 1);
        let mut p_prev = Polynomial::from_int_coeffs(d, &[2]);
        let mut p_cur = x.clone();
        // S = c_u + Σ_{k≥1} c_{u+k} · P_k
        let mut s = Polynomial::constant(self.coeff(u));
        for k in 1..=u {
            s = s.add(&p_cur.mul_scalar(&self.coeff(u + k)))?;
            let next = x.mul(&p_cur)?.sub(&p_prev)?;
            p_prev = p_cur;
            p_cur = next;
        }
        Ok(s)
    }
}

fn merge_root(roots: &mut Vec<(Scalar, usize)>, r: Scalar, m: usize) {
    for entry in roots.iter_mut() {
        if entry.0 == r {
            entry.1 += m;
            return;
        }
    }
    roots.push((r, m));
}

fn find_prime_field_root(f: &Polynomial, l: u64) -> Result<Option<Scalar>> {
    const SCAN_CAP: u64 = 1 << 20;
    if l > SCAN_CAP {
        return Err(Error::Unsupported {
            domain: f.domain().to_string(),
            what: format!("root scan over F_{l} (modulus above {SCAN_CAP})"),
        });
    }
    for r in 0..l {
        let cand = Scalar::Mod {
            residue: r,
            modulus: l,
        };
        if f.eval(&cand).is_zero() {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

fn find_rational_root(f: &Polynomial) -> Result<Option<Scalar>> {
    // Quadratics: discriminant must be a rational square.
    if f.degree() == Some(2) {
        let (a, b, c) = (
            rat(&f.coeff(2)),
            rat(&f.coeff(1)),
            rat(&f.coeff(0)),
        );
        let disc = &b * &b - BigRational::from_integer(BigInt::from(4)) * &a * &c;
        if disc.is_negative() {
            return Ok(None);
        }
        return Ok(rational_sqrt(&disc).map(|s| {
            let two_a = BigRational::from_integer(BigInt::from(2)) * &a;
            Scalar::Rat((&s - &b) / two_a)
        }));
    }
    // General: clear denominators, enumerate ±(divisor of c0)/(divisor of lead).
    let lcm = f
        .coeffs()
        .iter()
        .map(|c| rat(c).denom().clone())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let v = rat(c) * BigRational::from_integer(lcm.clone());
            debug_assert!(v.denom().is_one());
            v.numer().clone()
        })
        .collect();
    let c0 = ints.first().cloned().unwrap_or_default();
    let lead = ints.last().cloned().unwrap_or_default();
    debug_assert!(!c0.is_zero() && !lead.is_zero());
    let num_divs = divisors(&c0.abs())?;
    let den_divs = divisors(&lead.abs())?;
    for p in &num_divs {
        for q in &den_divs {
            for sign in [1i64, -1] {
                let cand = Scalar::Rat(BigRational::new(p * BigInt::from(sign), q.clone()));
                if f.eval(&cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

fn rat(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rat(r) => r.clone(),
        _ => unreachable!("rational root search on non-rational scalar"),
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// All positive divisors by trial-division factorization; gives up on inputs
/// whose unfactored part survives a 10^6 sieve, which desk-scale data never
/// hits.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    let cap = BigInt::from(1_000_000u64);
    while &p * &p <= rest && p <= cap {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest = rest / &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        if &rest > &(&cap * &cap) {
            return Err(Error::Unsupported {
                domain: "Q".into(),
                what: format!("factoring {rest} during rational root search"),
            });
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Ok(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(cs: &[i64]) -> Polynomial {
        Polynomial::from_int_coeffs(&Domain::Rational, cs)
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let p = qpoly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(qpoly(&[0]).is_zero());
        assert_eq!(qpoly(&[]).degree(), None);
    }

    #[test]
    fn divrem_and_gcd() {
        // (x^2 - 1) = (x + 1)(x - 1)
        let f = qpoly(&[-1, 0, 1]);
        let g = qpoly(&[1, 1]);
        let (q, r) = f.divrem(&g).unwrap();
        assert_eq!(q, qpoly(&[-1, 1]));
        assert!(r.is_zero());
        assert!(f.divrem(&Polynomial::zero(&Domain::Rational)).is_err());

        // gcd(x^3 - x, x^2 - 1) = x^2 - 1
        let a = qpoly(&[0, -1, 0, 1]);
        assert_eq!(a.gcd(&f).unwrap(), f);
        // gcd is monic even for scaled inputs
        let a2 = a.mul_scalar(&Scalar::from_int(6, &Domain::Rational));
        assert_eq!(a2.gcd(&f).unwrap(), f);
    }

    #[test]
    fn squarefree_examples() {
        assert!(qpoly(&[-1, 0, 1]).is_squarefree().unwrap()); // t^2 - 1
        assert!(!qpoly(&[0, 0, 1]).is_squarefree().unwrap()); // t^2
        assert!(qpoly(&[0, -1, 0, 1]).is_squarefree().unwrap()); // t^3 - t
        assert!(Polynomial::zero(&Domain::Rational).is_squarefree().is_err());
        // Small characteristic is rejected rather than silently wrong.
        let d = Domain::prime_field(3).unwrap();
        let f = Polynomial::from_int_coeffs(&d, &[1, 0, 0, 0, 1]);
        assert_eq!(
            f.is_squarefree(),
            Err(Error::SmallCharacteristic {
                modulus: 3,
                needed: 4
            })
        );
    }

    #[test]
    fn root_extraction_rational() {
        // (x-2)^2 (x+1/3) x
        let f = qpoly(&[-2, 1])
            .pow(2)
            .mul(&Polynomial::new(
                Domain::Rational,
                vec![
                    Scalar::parse_entry("1/3", &Domain::Rational).unwrap(),
                    Scalar::from_int(1, &Domain::Rational),
                ],
            )
            .unwrap())
            .unwrap()
            .mul(&qpoly(&[0, 1]))
            .unwrap();
        let (roots, residual) = f.roots_in_domain().unwrap();
        assert!(residual.degree() == Some(0));
        let rendered: Vec<(String, usize)> = roots
            .iter()
            .map(|(r, m)| (r.entry_string(), *m))
            .collect();
        assert_eq!(
            rendered,
            vec![
                ("-1/3".to_string(), 1),
                ("0".to_string(), 1),
                ("2".to_string(), 2)
            ]
        );
        // x^2 + 1 has no rational roots: residual untouched.
        let (roots, residual) = qpoly(&[1, 0, 1]).roots_in_domain().unwrap();
        assert!(roots.is_empty());
        assert_eq!(residual, qpoly(&[1, 0, 1]));
    }

    #[test]
    fn root_extraction_prime_field() {
        let d = Domain::prime_field(13).unwrap();
        // x^2 + 1 splits mod 13: roots 5 and 8.
        let f = Polynomial::from_int_coeffs(&d, &[1, 0, 1]);
        let (roots, residual) = f.roots_in_domain().unwrap();
        assert_eq!(residual.degree(), Some(0));
        let rs: Vec<u64> = roots
            .iter()
            .map(|(r, _)| match r {
                Scalar::Mod { residue, .. } => *residue,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(rs, vec![5, 8]);
    }

    #[test]
    fn palindromic_trace_transform() {
        // (t^2 - 4t + 1)(t^2 - 6t + 1): palindromic, S = (u-4)(u-6).
        let f = qpoly(&[1, -4, 1]).mul(&qpoly(&[1, -6, 1])).unwrap();
        let s = f.palindromic_trace_poly().unwrap();
        assert_eq!(s, qpoly(&[24, -10, 1]));
        let (roots, residual) = s.roots_in_domain().unwrap();
        assert_eq!(residual.degree(), Some(0));
        assert_eq!(roots.len(), 2);
        // Non-palindromic input is refused.
        assert!(qpoly(&[2, 1, 1]).palindromic_trace_poly().is_err());
    }

    #[test]
    fn eval_and_derivative() {
        let f = qpoly(&[1, -3, 0, 2]); // 2x^3 - 3x + 1
        assert_eq!(
            f.eval(&Scalar::from_int(2, &Domain::Rational)),
            Scalar::from_int(11, &Domain::Rational)
        );
        assert_eq!(f.derivative(), qpoly(&[-3, 0, 6]));
    }
}
