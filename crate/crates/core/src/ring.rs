//! The computable ring class `Z[S^-1]/(n)`.
//!
//! A ring is a localization of the integers at a finite set of primes `S`
//! (or at all primes, giving the rationals), optionally modulo `n >= 0` with
//! every prime factor of `n` outside `S`. `n = 0` means no quotient and
//! `n = 1` is the zero ring. Every ring here is a PID or a quotient of one,
//! so kernels, cokernels and normal forms are all effective.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The set of inverted primes: a finite list, or all of them (rationals).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Inverted {
    Primes(BTreeSet<u64>),
    All,
}

impl Inverted {
    pub fn none() -> Self {
        Inverted::Primes(BTreeSet::new())
    }

    pub fn primes(ps: &[u64]) -> Self {
        Inverted::Primes(ps.iter().copied().collect())
    }

    fn contains(&self, p: u64) -> bool {
        match self {
            Inverted::Primes(s) => s.contains(&p),
            Inverted::All => true,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Z[S^-1]/(n)`, or the rationals when all primes are inverted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ring {
    inverted: Inverted,
    modulus: u64,
}

impl Ring {
    pub fn new(inverted: Inverted, modulus: u64) -> Result<Self> {
        match &inverted {
            Inverted::All => {
                if modulus > 1 {
                    return Err(Error::InvalidRing(format!(
                        "rationals admit no quotient by {modulus}"
                    )));
                }
            }
            Inverted::Primes(ps) => {
                for &p in ps {
                    if !is_prime(p) {
                        return Err(Error::InvalidRing(format!("{p} is not prime")));
                    }
                    if modulus > 0 && modulus % p == 0 {
                        return Err(Error::InvalidRing(format!(
                            "modulus {modulus} is divisible by the inverted prime {p}"
                        )));
                    }
                }
            }
        }
        Ok(Ring { inverted, modulus })
    }

    /// The integers.
    pub fn integers() -> Self {
        Ring {
            inverted: Inverted::none(),
            modulus: 0,
        }
    }

    /// The rationals.
    pub fn rationals() -> Self {
        Ring {
            inverted: Inverted::All,
            modulus: 0,
        }
    }

    /// `Z[S^-1]` for a finite prime set.
    pub fn localization(primes: &[u64]) -> Result<Self> {
        Ring::new(Inverted::primes(primes), 0)
    }

    /// `Z/n`.
    pub fn quotient(n: u64) -> Result<Self> {
        Ring::new(Inverted::none(), n)
    }

    pub fn inverted(&self) -> &Inverted {
        &self.inverted
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero_ring(&self) -> bool {
        self.modulus == 1
    }

    pub fn is_rationals(&self) -> bool {
        self.inverted == Inverted::All && self.modulus == 0
    }

    /// True when the modulus is zero, i.e. the ring is a domain (PID).
    pub fn is_domain(&self) -> bool {
        self.modulus == 0
    }

    /// The covering localization `Z[S^-1]`, dropping the modulus.
    pub fn cover(&self) -> Ring {
        Ring {
            inverted: self.inverted.clone(),
            modulus: 0,
        }
    }

    /// Strips all inverted primes from `x` (and the sign), leaving the
    /// canonical associate: a nonnegative integer free of inverted primes.
    /// For the rationals every nonzero element is a unit, so the result is
    /// 0 or 1.
    pub fn unit_free_part(&self, x: &BigInt) -> BigInt {
        if x.is_zero() {
            return BigInt::zero();
        }
        match &self.inverted {
            Inverted::All => BigInt::one(),
            Inverted::Primes(ps) => {
                let mut m = x.abs();
                for &p in ps {
                    let bp = BigInt::from(p);
                    while (&m % &bp).is_zero() {
                        m /= &bp;
                    }
                }
                m
            }
        }
    }

    /// Euclidean norm of a ring element: the unit-free part of the numerator.
    /// Denominators are units by the element invariant, so they do not
    /// contribute.
    pub fn norm(&self, x: &BigRational) -> BigInt {
        self.unit_free_part(x.numer())
    }

    /// Is `x` a legal element of this ring, i.e. are all primes of the
    /// denominator inverted?
    pub fn admits(&self, x: &BigRational) -> bool {
        let den = x.denom().abs();
        match &self.inverted {
            Inverted::All => true,
            Inverted::Primes(_) => self.unit_free_part(&den).is_one(),
        }
    }

    /// Canonical form of an element: reduced fraction for a domain, the
    /// integer representative in `[0, n)` for a quotient ring.
    pub fn canon(&self, x: &BigRational) -> Result<BigRational> {
        if !self.admits(x) {
            return Err(Error::InvalidMatrix(format!(
                "{x} has a denominator not inverted in {self}"
            )));
        }
        if self.modulus == 0 {
            return Ok(x.clone());
        }
        let n = BigInt::from(self.modulus);
        // Denominator is invertible mod n: fold it in.
        let den = x.denom().mod_floor(&n);
        let inv = modular_inverse(&den, &n).ok_or_else(|| {
            Error::InvalidMatrix(format!("{x} has a denominator not invertible mod {n}"))
        })?;
        let v = (x.numer().mod_floor(&n) * inv).mod_floor(&n);
        Ok(BigRational::from_integer(v))
    }

    pub fn is_unit(&self, x: &BigRational) -> bool {
        if self.is_zero_ring() {
            return true;
        }
        if self.modulus == 0 {
            return !x.is_zero() && self.norm(x).is_one();
        }
        let n = BigInt::from(self.modulus);
        let v = match self.canon(x) {
            Ok(v) => v,
            Err(_) => return false,
        };
        v.numer().gcd(&n).is_one()
    }

    /// Does `a` divide `b` in this ring? Only meaningful for domains.
    pub fn divides(&self, a: &BigRational, b: &BigRational) -> bool {
        debug_assert!(self.is_domain());
        if a.is_zero() {
            return b.is_zero();
        }
        let q = b / a;
        self.admits(&q)
    }

    fn describe_inverted(&self) -> String {
        match &self.inverted {
            Inverted::All => "all".to_string(),
            Inverted::Primes(ps) => {
                let items: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", items.join(","))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.inverted, self.modulus) {
            (Inverted::All, 0) => write!(f, "Q"),
            (_, 1) => write!(f, "0-ring"),
            (Inverted::Primes(ps), 0) if ps.is_empty() => write!(f, "Z"),
            (Inverted::Primes(ps), n) if ps.is_empty() && n > 0 => write!(f, "Z/{n}"),
            (_, 0) => write!(f, "Z[{}^-1]", self.describe_inverted()),
            (_, n) => write!(f, "Z[{}^-1]/{n}", self.describe_inverted()),
        }
    }
}

pub fn modular_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

/// The canonical (unique unital) ring map between two rings of the class,
/// when it exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    source: Ring,
    target: Ring,
}

impl RingMap {
    /// Existence rule: (a) every inverted prime of the source becomes a unit
    /// in the target, and (b) the target modulus divides the target-unit-free
    /// part of the source modulus (a zero source modulus imposes nothing).
    pub fn canonical(source: &Ring, target: &Ring) -> Result<RingMap> {
        let fail = |reason: String| Error::NoCanonicalMap {
            src: source.to_string(),
            dst: target.to_string(),
            reason,
        };
        match source.inverted() {
            Inverted::All => {
                // Every prime must become a unit: only the rationals or the
                // zero ring qualify.
                if !(target.is_rationals() || target.is_zero_ring()) {
                    return Err(fail("not every prime is invertible in the target".into()));
                }
            }
            Inverted::Primes(ps) => {
                for &p in ps {
                    let ok = target.inverted().contains(p)
                        || (target.modulus() > 0 && target.modulus() % p != 0)
                        || target.is_zero_ring();
                    if !ok {
                        return Err(fail(format!("{p} is not invertible in the target")));
                    }
                }
            }
        }
        if source.modulus() > 0 {
            let free = target.unit_free_part(&BigInt::from(source.modulus()));
            let nt = BigInt::from(target.modulus());
            if nt.is_zero() || !(free.mod_floor(&nt)).is_zero() {
                return Err(fail(format!(
                    "target modulus {} does not divide {}",
                    target.modulus(),
                    free
                )));
            }
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
        })
    }

    pub fn identity(ring: &Ring) -> RingMap {
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// Image of a scalar, in target-canonical form.
    pub fn apply(&self, x: &BigRational) -> Result<BigRational> {
        self.target.canon(x)
    }

    /// Module-finite means the target is finitely generated as a module over
    /// the source: a positive target modulus (the target is then generated by
    /// 1), or the identity localization.
    pub fn is_module_finite(&self) -> bool {
        self.target.modulus() > 0 || self.source == self.target
    }

    /// Generator of the kernel of a module-finite canonical map, as a
    /// source-canonical scalar: the target modulus (0 for an identity map).
    pub fn kernel_generator(&self) -> Result<BigRational> {
        if !self.is_module_finite() {
            return Err(Error::NotModuleFinite {
                src: self.source.to_string(),
                dst: self.target.to_string(),
                arrow: None,
            });
        }
        if self.source == self.target {
            return Ok(BigRational::zero());
        }
        self.source
            .canon(&BigRational::from_integer(BigInt::from(self.target.modulus())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ring_invariants() {
        assert!(Ring::new(Inverted::primes(&[2]), 4).is_err());
        assert!(Ring::new(Inverted::primes(&[4]), 0).is_err());
        assert!(Ring::new(Inverted::All, 5).is_err());
        assert!(Ring::new(Inverted::All, 1).is_ok());
        assert!(Ring::new(Inverted::primes(&[2, 3]), 5).is_ok());
    }

    #[test]
    fn canonical_forms() {
        let z4 = Ring::quotient(4).unwrap();
        assert_eq!(z4.canon(&rat(7)).unwrap(), rat(3));
        assert_eq!(z4.canon(&rat(-1)).unwrap(), rat(3));
        let r = Ring::new(Inverted::primes(&[3]), 4).unwrap();
        // 1/3 = 3^-1 = 3 mod 4
        assert_eq!(r.canon(&frac(1, 3)).unwrap(), rat(3));
        let z12 = Ring::localization(&[2]).unwrap();
        assert!(z12.canon(&frac(1, 3)).is_err());
        assert_eq!(z12.canon(&frac(1, 4)).unwrap(), frac(1, 4));
    }

    #[test]
    fn units_and_norms() {
        let l2 = Ring::localization(&[2]).unwrap();
        assert!(l2.is_unit(&rat(2)));
        assert!(l2.is_unit(&frac(-1, 8)));
        assert!(!l2.is_unit(&rat(6)));
        assert_eq!(l2.norm(&rat(12)), BigInt::from(3));
        let q = Ring::rationals();
        assert!(q.is_unit(&frac(7, 5)));
        assert_eq!(q.norm(&frac(7, 5)), BigInt::one());
    }

    #[test]
    fn canonical_map_exists_z_to_z4() {
        assert!(RingMap::canonical(&Ring::integers(), &Ring::quotient(4).unwrap()).is_ok());
    }

    #[test]
    fn canonical_map_rejects_two_inverted_to_z4() {
        let err = RingMap::canonical(
            &Ring::localization(&[2]).unwrap(),
            &Ring::quotient(4).unwrap(),
        );
        assert!(matches!(err, Err(Error::NoCanonicalMap { .. })));
    }

    #[test]
    fn canonical_map_z12_to_z_inv3_mod4() {
        // Oracle: Z[1/3]/(4) is isomorphic to Z/4, and a unital map
        // Z/12 -> Z/4 exists exactly when 4 | 12. Exhaustive check: the image
        // of 1 must be 1, and 12 * 1 = 0 mod 4 holds.
        assert_eq!(12 % 4, 0);
        let tgt = Ring::new(Inverted::primes(&[3]), 4).unwrap();
        assert!(RingMap::canonical(&Ring::quotient(12).unwrap(), &tgt).is_ok());
    }

    #[test]
    fn no_map_from_quotient_to_rationals() {
        assert!(RingMap::canonical(&Ring::quotient(4).unwrap(), &Ring::rationals()).is_err());
        let zero = Ring::new(Inverted::All, 1).unwrap();
        assert!(RingMap::canonical(&Ring::quotient(4).unwrap(), &zero).is_ok());
    }

    #[test]
    fn module_finiteness() {
        let m = RingMap::canonical(&Ring::integers(), &Ring::quotient(4).unwrap()).unwrap();
        assert!(m.is_module_finite());
        assert_eq!(m.kernel_generator().unwrap(), rat(4));
        let loc = RingMap::canonical(&Ring::integers(), &Ring::localization(&[2]).unwrap()).unwrap();
        assert!(!loc.is_module_finite());
        let id = RingMap::identity(&Ring::localization(&[2]).unwrap());
        assert!(id.is_module_finite());
        assert_eq!(id.kernel_generator().unwrap(), rat(0));
    }
}
