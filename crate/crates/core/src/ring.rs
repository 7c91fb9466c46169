//! Exact coefficient rings: the integers, the rationals, and prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A coefficient ring selector. Division is only available over `Q` and `Fp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    Z,
    Q,
    Fp(u32),
}

impl Ring {
    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Z)
    }

    pub fn zero(self) -> Scalar {
        match self {
            Ring::Z => Scalar::Z(BigInt::zero()),
            Ring::Q => Scalar::Q(BigRational::zero()),
            Ring::Fp(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Ring::Z => Scalar::Z(BigInt::from(n)),
            Ring::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Ring::Fp(p) => {
                let m = n.rem_euclid(p as i64) as u32;
                Scalar::Fp { p, v: m }
            }
        }
    }

    /// Parses the CLI ring syntax: `z`, `q`, or `f<p>`.
    pub fn parse(s: &str) -> Result<Ring, RingError> {
        match s {
            "z" | "Z" => Ok(Ring::Z),
            "q" | "Q" => Ok(Ring::Q),
            _ => {
                let body = s
                    .strip_prefix('f')
                    .or_else(|| s.strip_prefix('F'))
                    .ok_or_else(|| RingError::Parse(s.to_string()))?;
                let p: u32 = body.parse().map_err(|_| RingError::Parse(s.to_string()))?;
                if p < 2 || !is_prime(p) {
                    return Err(RingError::NotPrime(p));
                }
                Ok(Ring::Fp(p))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "z"),
            Ring::Q => write!(f, "q"),
            Ring::Fp(p) => write!(f, "f{p}"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    let n = n as u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    Mismatch(Ring, Ring),
    #[error("cannot parse ring `{0}` (expected z, q, or f<p>)")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("division not defined over Z (use q or f<p>)")]
    NoDivision,
}

/// An exact scalar in one of the supported rings. Values are kept canonical:
/// rationals reduced, residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scalar {
    Z(BigInt),
    Q(BigRational),
    Fp { p: u32, v: u32 },
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Z(_) => Ring::Z,
            Scalar::Q(_) => Ring::Q,
            Scalar::Fp { p, .. } => Ring::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Z(n) => n.is_zero(),
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Z(n) => n.is_one(),
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), RingError> {
        if self.ring() != other.ring() {
            return Err(RingError::Mismatch(self.ring(), other.ring()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, RingError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Z(a), Scalar::Z(b)) => Scalar::Z(a + b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: ((*a as u64 + *b as u64) % (*p as u64)) as u32,
            },
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, RingError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Z(a), Scalar::Z(b)) => Scalar::Z(a * b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: ((*a as u64 * *b as u64) % (*p as u64)) as u32,
            },
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Z(a) => Scalar::Z(-a),
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, RingError> {
        if self.is_zero() {
            return Err(RingError::NoDivision);
        }
        match self {
            Scalar::Z(_) => Err(RingError::NoDivision),
            Scalar::Q(a) => Ok(Scalar::Q(a.recip())),
            Scalar::Fp { p, v } => {
                // Fermat inverse; p is prime.
                let mut acc = 1u64;
                let mut base = *v as u64;
                let mut e = (*p as u64) - 2;
                let m = *p as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Ok(Scalar::Fp { p: *p, v: acc as u32 })
            }
        }
    }

    /// Numerator/denominator-or-modulus pair used by the text serialization.
    pub fn to_num_den(&self) -> (String, String) {
        match self {
            Scalar::Z(a) => (a.to_string(), "1".to_string()),
            Scalar::Q(a) => (a.numer().to_string(), a.denom().to_string()),
            Scalar::Fp { p, v } => (v.to_string(), p.to_string()),
        }
    }

    pub fn from_num_den(ring: Ring, num: &str, den: &str) -> Result<Scalar, RingError> {
        let bad = || RingError::Parse(format!("{num}/{den}"));
        match ring {
            Ring::Z => {
                let n: BigInt = num.parse().map_err(|_| bad())?;
                Ok(Scalar::Z(n))
            }
            Ring::Q => {
                let n: BigInt = num.parse().map_err(|_| bad())?;
                let d: BigInt = den.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            Ring::Fp(p) => {
                let v: i64 = num.parse().map_err(|_| bad())?;
                Ok(Ring::Fp(p).from_i64(v))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Z(a) => write!(f, "{a}"),
            Scalar::Q(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Sign as a scalar: `(-1)^n` in the given ring.
pub fn sign(ring: Ring, n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        ring.one()
    } else {
        ring.one().neg()
    }
}

/// True when the scalar is `-1` (used by tests and display code).
pub fn is_minus_one(s: &Scalar) -> bool {
    match s {
        Scalar::Z(a) => (-a).is_one(),
        Scalar::Q(a) => (-a).is_one(),
        Scalar::Fp { p, v } => *v + 1 == *p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_canonical() {
        let r = Ring::Fp(5);
        assert_eq!(r.from_i64(-1), Scalar::Fp { p: 5, v: 4 });
        assert_eq!(r.from_i64(7), Scalar::Fp { p: 5, v: 2 });
        let two = r.from_i64(2);
        assert!(two.mul(&two.inv().unwrap()).unwrap().is_one());
    }

    #[test]
    fn rationals_reduce() {
        let a = Scalar::from_num_den(Ring::Q, "2", "4").unwrap();
        let b = Scalar::from_num_den(Ring::Q, "1", "2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mismatch_detected() {
        let a = Ring::Q.one();
        let b = Ring::Fp(3).one();
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn z_has_no_inverse() {
        assert_eq!(Ring::Z.from_i64(2).inv(), Err(RingError::NoDivision));
    }

    #[test]
    fn ring_parse_rejects_composite() {
        assert!(Ring::parse("f4").is_err());
        assert_eq!(Ring::parse("f2").unwrap(), Ring::Fp(2));
    }
}
