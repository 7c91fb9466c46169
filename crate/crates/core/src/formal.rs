//! Sparse formal linear combinations of canonical basis labels.

use crate::ring::{is_minus_one, Ring, RingError, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// Trait bound for basis labels: totally ordered, cloneable, printable.
pub trait BasisKey: Ord + Clone + fmt::Display + fmt::Debug {}
impl<T: Ord + Clone + fmt::Display + fmt::Debug> BasisKey for T {}

/// A tensor-product basis label, printed as `a⊗b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Pair<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
}

/// An n-fold tensor basis label, printed as `a⊗b⊗c`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor<K>(pub Vec<K>);

impl<K: fmt::Display> fmt::Display for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// A formal linear combination with exact coefficients. Zero coefficients are
/// never stored; iteration order is the label order, so printing is
/// byte-stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum<K: BasisKey> {
    ring: Ring,
    terms: BTreeMap<K, Scalar>,
}

impl<K: BasisKey> FormalSum<K> {
    pub fn zero(ring: Ring) -> Self {
        FormalSum { ring, terms: BTreeMap::new() }
    }

    pub fn basis(ring: Ring, key: K) -> Self {
        let mut s = Self::zero(ring);
        s.add_term(key, ring.one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(ring: Ring, it: I) -> Self {
        let mut s = Self::zero(ring);
        for (k, c) in it {
            s.add_term(k, c);
        }
        s
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Adds `c * key`, dropping the entry if the total becomes zero.
    pub fn add_term(&mut self, key: K, c: Scalar) {
        assert_eq!(self.ring, c.ring(), "scalar ring mismatch in formal sum");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(old) => {
                let s = old.add(&c).expect("ring checked above");
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    /// Returns `self + c * other` in canonical form.
    pub fn combine(&self, c: &Scalar, other: &FormalSum<K>) -> Result<FormalSum<K>, RingError> {
        if self.ring != other.ring {
            return Err(RingError::Mismatch(self.ring, other.ring));
        }
        if self.ring != c.ring() {
            return Err(RingError::Mismatch(self.ring, c.ring()));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), c.mul(v).expect("ring checked"));
        }
        Ok(out)
    }

    pub fn add(&self, other: &FormalSum<K>) -> FormalSum<K> {
        self.combine(&self.ring.one(), other)
            .expect("ring mismatch in add")
    }

    pub fn sub(&self, other: &FormalSum<K>) -> FormalSum<K> {
        self.combine(&self.ring.one().neg(), other)
            .expect("ring mismatch in sub")
    }

    pub fn scale(&self, c: &Scalar) -> FormalSum<K> {
        let mut out = Self::zero(self.ring);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), c.mul(v).expect("ring mismatch in scale"));
        }
        out
    }

    pub fn neg(&self) -> FormalSum<K> {
        self.scale(&self.ring.one().neg())
    }

    /// Applies `f` to every basis label and resums (a linear extension).
    pub fn map_sum<L: BasisKey>(&self, mut f: impl FnMut(&K) -> FormalSum<L>) -> FormalSum<L> {
        let mut out = FormalSum::zero(self.ring);
        for (k, c) in &self.terms {
            out = out.combine(c, &f(k)).expect("ring mismatch in map_sum");
        }
        out
    }

    /// Renames basis labels one-to-one (or many-to-one, resumming).
    pub fn map_keys<L: BasisKey>(&self, mut f: impl FnMut(&K) -> L) -> FormalSum<L> {
        let mut out = FormalSum::zero(self.ring);
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }
}

impl<K: BasisKey> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_one() {
                    write!(f, "{k}")?;
                } else if is_minus_one(c) && self.ring != Ring::Fp(2) {
                    write!(f, "-{k}")?;
                } else {
                    write!(f, "{c}*{k}")?;
                }
            } else if c.is_one() {
                write!(f, " + {k}")?;
            } else if is_minus_one(c) && self.ring != Ring::Fp(2) {
                write!(f, " - {k}")?;
            } else {
                write!(f, " + {c}*{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_inverse_cancels() {
        let x = FormalSum::basis(Ring::Q, "x");
        let r = x.combine(&Ring::Q.from_i64(1), &x.neg()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn zero_scalar_is_identity() {
        let x = FormalSum::basis(Ring::Q, "x");
        let y = FormalSum::basis(Ring::Q, "y");
        let r = x.combine(&Ring::Q.zero(), &y).unwrap();
        assert_eq!(r, x);
    }

    #[test]
    fn residue_arithmetic_mod_five() {
        // (2x) + 3*(x+y) over F_5 = 5x + 3y = 3y.
        let ring = Ring::Fp(5);
        let two_x = FormalSum::basis(ring, "x").scale(&ring.from_i64(2));
        let x_plus_y = FormalSum::basis(ring, "x").add(&FormalSum::basis(ring, "y"));
        let r = two_x.combine(&ring.from_i64(3), &x_plus_y).unwrap();
        assert_eq!(r, FormalSum::basis(ring, "y").scale(&ring.from_i64(3)));
        assert_eq!(r.coeff(&"x"), ring.zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let x = FormalSum::basis(Ring::Q, "x");
        let y = FormalSum::basis(Ring::Fp(2), "x");
        assert!(x.combine(&Ring::Q.one(), &y).is_err());
    }

    #[test]
    fn display_is_ordered() {
        let mut s = FormalSum::zero(Ring::Z);
        s.add_term("b", Ring::Z.from_i64(-1));
        s.add_term("a", Ring::Z.from_i64(2));
        assert_eq!(s.to_string(), "2*a - b");
    }
}
