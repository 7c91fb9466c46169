//! Graded homomorphisms between complexes, stored as sparse assignments on
//! basis labels.

use crate::formal::{BasisKey, FormalSum};
use crate::ring::{Ring, Scalar};
use std::collections::BTreeMap;

/// A homomorphism of graded modules of degree `degree` (homological
/// convention: it shifts lower degrees by `degree`). Labels absent from the
/// assignment map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHom<S: BasisKey, T: BasisKey> {
    ring: Ring,
    degree: i64,
    map: BTreeMap<S, FormalSum<T>>,
}

impl<S: BasisKey, T: BasisKey> GradedHom<S, T> {
    pub fn zero(ring: Ring, degree: i64) -> Self {
        GradedHom { ring, degree, map: BTreeMap::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn set(&mut self, from: S, to: FormalSum<T>) {
        assert_eq!(self.ring, to.ring(), "ring mismatch in graded hom");
        if to.is_zero() {
            self.map.remove(&from);
        } else {
            self.map.insert(from, to);
        }
    }

    pub fn add_to(&mut self, from: S, extra: &FormalSum<T>) {
        let cur = self.apply_basis(&from);
        self.set(from, cur.add(extra));
    }

    pub fn apply_basis(&self, key: &S) -> FormalSum<T> {
        self.map
            .get(key)
            .cloned()
            .unwrap_or_else(|| FormalSum::zero(self.ring))
    }

    pub fn apply(&self, x: &FormalSum<S>) -> FormalSum<T> {
        x.map_sum(|k| self.apply_basis(k))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&S, &FormalSum<T>)> {
        self.map.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    /// `self + c * other`; degrees must agree.
    pub fn combine(&self, c: &Scalar, other: &GradedHom<S, T>) -> GradedHom<S, T> {
        assert_eq!(self.degree, other.degree, "degree mismatch in hom sum");
        let mut out = self.clone();
        for (k, v) in &other.map {
            out.add_to(k.clone(), &v.scale(c));
        }
        out
    }

    pub fn add(&self, other: &GradedHom<S, T>) -> GradedHom<S, T> {
        self.combine(&self.ring.one(), other)
    }

    pub fn sub(&self, other: &GradedHom<S, T>) -> GradedHom<S, T> {
        self.combine(&self.ring.one().neg(), other)
    }

    pub fn scale(&self, c: &Scalar) -> GradedHom<S, T> {
        GradedHom::zero(self.ring, self.degree).combine(c, self)
    }

    /// Composition `self ∘ first` (apply `first`, then `self`).
    pub fn compose<R: BasisKey>(&self, first: &GradedHom<R, S>) -> GradedHom<R, T> {
        let mut out = GradedHom::zero(self.ring, self.degree + first.degree);
        for (k, v) in &first.map {
            out.set(k.clone(), self.apply(v));
        }
        out
    }

    pub fn map_source<R: BasisKey>(&self, mut f: impl FnMut(&S) -> R) -> GradedHom<R, T> {
        let mut out = GradedHom::zero(self.ring, self.degree);
        for (k, v) in &self.map {
            out.add_to(f(k), v);
        }
        out
    }

    pub fn map_target<R: BasisKey>(&self, mut f: impl FnMut(&T) -> R) -> GradedHom<S, R> {
        let mut out = GradedHom::zero(self.ring, self.degree);
        for (k, v) in &self.map {
            out.set(k.clone(), v.map_keys(&mut f));
        }
        out
    }
}

/// Builds a hom from a closure evaluated on an explicit list of basis labels.
pub fn hom_on_basis<S: BasisKey, T: BasisKey>(
    ring: Ring,
    degree: i64,
    basis: impl IntoIterator<Item = S>,
    mut f: impl FnMut(&S) -> FormalSum<T>,
) -> GradedHom<S, T> {
    let mut out = GradedHom::zero(ring, degree);
    for k in basis {
        let v = f(&k);
        out.set(k, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_in_order() {
        let mut f = GradedHom::zero(Ring::Q, 0);
        f.set("x", FormalSum::basis(Ring::Q, "y"));
        let mut g = GradedHom::zero(Ring::Q, -1);
        g.set("y", FormalSum::basis(Ring::Q, "z").scale(&Ring::Q.from_i64(3)));
        let h = g.compose(&f);
        assert_eq!(h.degree(), -1);
        assert_eq!(
            h.apply_basis(&"x"),
            FormalSum::basis(Ring::Q, "z").scale(&Ring::Q.from_i64(3))
        );
    }
}
