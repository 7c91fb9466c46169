//! Normalized chains of standard simplices: boundaries, the Alexander-Whitney
//! diagonal, the Eilenberg-MacLane shuffle map, and pushforward along the
//! min/max maps of the square.

use crate::formal::{FormalSum, Pair};
use crate::ring::{sign, Ring};
use std::fmt;

/// A simplex of a standard simplex `Δ^q`, given by its weakly increasing
/// vertex sequence. Nondegenerate iff the sequence is strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaSimplex {
    pub ambient: u32,
    pub vertices: Vec<u32>,
}

impl DeltaSimplex {
    pub fn new(ambient: u32, vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] <= w[1]), "vertices must be sorted");
        debug_assert!(vertices.iter().all(|&v| v <= ambient));
        DeltaSimplex { ambient, vertices }
    }

    pub fn vertex(ambient: u32, v: u32) -> Self {
        Self::new(ambient, vec![v])
    }

    /// The fundamental simplex `0⋯q` of `Δ^q`.
    pub fn fundamental(q: u32) -> Self {
        Self::new(q, (0..=q).collect())
    }

    pub fn dim(&self) -> i64 {
        self.vertices.len() as i64 - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.windows(2).any(|w| w[0] == w[1])
    }
}

impl fmt::Display for DeltaSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A simplex of a product `Δ^{q_1} × … × Δ^{q_n}`: componentwise vertex
/// sequences of equal length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductSimplex {
    pub components: Vec<DeltaSimplex>,
}

impl ProductSimplex {
    pub fn new(components: Vec<DeltaSimplex>) -> Self {
        debug_assert!(!components.is_empty());
        let n = components[0].vertices.len();
        debug_assert!(components.iter().all(|c| c.vertices.len() == n));
        ProductSimplex { components }
    }

    pub fn dim(&self) -> i64 {
        self.components[0].dim()
    }

    /// Degenerate iff some simplicial degeneracy applies to all components at
    /// once, i.e. some adjacent vertex tuple repeats.
    pub fn is_degenerate(&self) -> bool {
        let n = self.components[0].vertices.len();
        (1..n).any(|i| self.components.iter().all(|c| c.vertices[i - 1] == c.vertices[i]))
    }
}

impl fmt::Display for ProductSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Alternating sum of vertex deletions; degenerate faces are dropped.
pub fn boundary(ring: Ring, s: &DeltaSimplex) -> FormalSum<DeltaSimplex> {
    let mut out = FormalSum::zero(ring);
    if s.dim() == 0 {
        return out;
    }
    for i in 0..s.vertices.len() {
        let mut v = s.vertices.clone();
        v.remove(i);
        let face = DeltaSimplex::new(s.ambient, v);
        if !face.is_degenerate() {
            out.add_term(face, sign(ring, i as i64));
        }
    }
    out
}

/// Componentwise boundary of a product simplex (the simplicial-set boundary of
/// the diagonal realization), degenerate faces dropped.
pub fn boundary_product(ring: Ring, s: &ProductSimplex) -> FormalSum<ProductSimplex> {
    let mut out = FormalSum::zero(ring);
    if s.dim() == 0 {
        return out;
    }
    let n = s.components[0].vertices.len();
    for i in 0..n {
        let comps: Vec<DeltaSimplex> = s
            .components
            .iter()
            .map(|c| {
                let mut v = c.vertices.clone();
                v.remove(i);
                DeltaSimplex::new(c.ambient, v)
            })
            .collect();
        let face = ProductSimplex::new(comps);
        if !face.is_degenerate() {
            out.add_term(face, sign(ring, i as i64));
        }
    }
    out
}

/// The Alexander-Whitney diagonal: front face ⊗ back face.
pub fn aw_diagonal(ring: Ring, s: &DeltaSimplex) -> FormalSum<Pair<DeltaSimplex, DeltaSimplex>> {
    let mut out = FormalSum::zero(ring);
    let n = s.vertices.len();
    for k in 0..n {
        let front = DeltaSimplex::new(s.ambient, s.vertices[..=k].to_vec());
        let back = DeltaSimplex::new(s.ambient, s.vertices[k..].to_vec());
        if !front.is_degenerate() && !back.is_degenerate() {
            out.add_term(Pair(front, back), ring.one());
        }
    }
    out
}

/// Monotone lattice paths from `(0,0)` to `(m,n)`: each path is the sequence
/// of visited points; the sign is the parity of the associated `(m,n)`-shuffle
/// (the number of (up, right) inversions).
pub fn lattice_paths(m: usize, n: usize) -> Vec<(Vec<(usize, usize)>, i64)> {
    let mut out = Vec::new();
    // steps: bitmask choice of which of the m+n moves are "right".
    fn rec(
        x: usize,
        y: usize,
        m: usize,
        n: usize,
        path: &mut Vec<(usize, usize)>,
        inv: i64,
        ups_so_far: i64,
        out: &mut Vec<(Vec<(usize, usize)>, i64)>,
    ) {
        if x == m && y == n {
            out.push((path.clone(), inv));
            return;
        }
        if x < m {
            // a right step after `ups_so_far` up steps contributes that many
            // inversions to the shuffle permutation
            path.push((x + 1, y));
            rec(x + 1, y, m, n, path, inv + ups_so_far, ups_so_far, out);
            path.pop();
        }
        if y < n {
            path.push((x, y + 1));
            rec(x, y + 1, m, n, path, inv, ups_so_far + 1, out);
            path.pop();
        }
    }
    let mut path = vec![(0, 0)];
    rec(0, 0, m, n, &mut path, 0, 0, &mut out);
    out
}

/// The Eilenberg-MacLane (shuffle) map `N_*(X) ⊗ N_*(Y) → N_*(X × Y)` on a
/// pair of simplices, as a signed sum of product simplices.
pub fn em_shuffle(ring: Ring, s: &DeltaSimplex, t: &DeltaSimplex) -> FormalSum<ProductSimplex> {
    let m = s.dim() as usize;
    let n = t.dim() as usize;
    let mut out = FormalSum::zero(ring);
    for (path, inv) in lattice_paths(m, n) {
        let sv: Vec<u32> = path.iter().map(|&(x, _)| s.vertices[x]).collect();
        let tv: Vec<u32> = path.iter().map(|&(_, y)| t.vertices[y]).collect();
        let p = ProductSimplex::new(vec![
            DeltaSimplex::new(s.ambient, sv),
            DeltaSimplex::new(t.ambient, tv),
        ]);
        if !p.is_degenerate() {
            out.add_term(p, sign(ring, inv));
        }
    }
    out
}

/// Applies `min` (vertexwise) to a product simplex over `Δ^1 × Δ^1`, dropping
/// degenerate results.
pub fn push_min(ring: Ring, x: &FormalSum<ProductSimplex>) -> FormalSum<DeltaSimplex> {
    push_vertexwise(ring, x, |a, b| a.min(b))
}

/// Same with `max`.
pub fn push_max(ring: Ring, x: &FormalSum<ProductSimplex>) -> FormalSum<DeltaSimplex> {
    push_vertexwise(ring, x, |a, b| a.max(b))
}

fn push_vertexwise(
    ring: Ring,
    x: &FormalSum<ProductSimplex>,
    f: impl Fn(u32, u32) -> u32,
) -> FormalSum<DeltaSimplex> {
    let mut out = FormalSum::zero(ring);
    for (p, c) in x.iter() {
        assert_eq!(p.components.len(), 2, "push is defined on the square");
        let n = p.components[0].vertices.len();
        let v: Vec<u32> = (0..n)
            .map(|i| f(p.components[0].vertices[i], p.components[1].vertices[i]))
            .collect();
        let s = DeltaSimplex::new(1, v);
        if !s.is_degenerate() {
            out.add_term(s, c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Ring = Ring::Q;

    fn d(ambient: u32, v: &[u32]) -> DeltaSimplex {
        DeltaSimplex::new(ambient, v.to_vec())
    }

    #[test]
    fn boundary_of_edge() {
        let b = boundary(Q, &d(1, &[0, 1]));
        let mut expect = FormalSum::zero(Q);
        expect.add_term(d(1, &[1]), Q.one());
        expect.add_term(d(1, &[0]), Q.one().neg());
        assert_eq!(b, expect);
    }

    #[test]
    fn boundary_of_vertex_is_zero() {
        assert!(boundary(Q, &d(2, &[1])).is_zero());
    }

    #[test]
    fn boundary_of_triangle() {
        let b = boundary(Q, &d(2, &[0, 1, 2]));
        let mut expect = FormalSum::zero(Q);
        expect.add_term(d(2, &[1, 2]), Q.one());
        expect.add_term(d(2, &[0, 2]), Q.one().neg());
        expect.add_term(d(2, &[0, 1]), Q.one());
        assert_eq!(b, expect);
    }

    #[test]
    fn aw_of_edge_and_vertex() {
        let a = aw_diagonal(Q, &d(1, &[0, 1]));
        let mut expect = FormalSum::zero(Q);
        expect.add_term(Pair(d(1, &[0]), d(1, &[0, 1])), Q.one());
        expect.add_term(Pair(d(1, &[0, 1]), d(1, &[1])), Q.one());
        assert_eq!(a, expect);

        let v = aw_diagonal(Q, &d(3, &[2]));
        assert_eq!(v, FormalSum::basis(Q, Pair(d(3, &[2]), d(3, &[2]))));
    }

    #[test]
    fn aw_of_triangle_has_three_terms() {
        let a = aw_diagonal(Q, &d(2, &[0, 1, 2]));
        assert_eq!(a.len(), 3);
        assert!(a.coeff(&Pair(d(2, &[0, 1]), d(2, &[1, 2]))).is_one());
    }

    #[test]
    fn aw_coassociative_up_to_dim_4() {
        // (aw ⊗ id) ∘ aw = (id ⊗ aw) ∘ aw on every nondegenerate simplex of
        // Δ^q for q ≤ 4.
        for q in 0..=4u32 {
            for bits in 1u32..(1 << (q + 1)) {
                let verts: Vec<u32> = (0..=q).filter(|i| bits & (1 << i) != 0).collect();
                let s = d(q, &verts);
                let first = aw_diagonal(Q, &s);
                let left = first.map_sum(|Pair(a, b)| {
                    aw_diagonal(Q, a).map_keys(|Pair(a1, a2)| Pair(a1.clone(), Pair(a2.clone(), b.clone())))
                });
                let right = first.map_sum(|Pair(a, b)| {
                    aw_diagonal(Q, b).map_keys(|Pair(b1, b2)| Pair(a.clone(), Pair(b1.clone(), b2.clone())))
                });
                assert_eq!(left, right, "coassociativity fails on {s}");
            }
        }
    }

    #[test]
    fn em_base_cases() {
        // em(0, 01): single vertical path.
        let e = em_shuffle(Q, &d(1, &[0]), &d(1, &[0, 1]));
        assert_eq!(e.len(), 1);
        assert!(e
            .coeff(&ProductSimplex::new(vec![d(1, &[0, 0]), d(1, &[0, 1])]))
            .is_one());
        // em(01, 0): single horizontal path, sign +.
        let e = em_shuffle(Q, &d(1, &[0, 1]), &d(1, &[0]));
        assert_eq!(e.len(), 1);
        assert!(e
            .coeff(&ProductSimplex::new(vec![d(1, &[0, 1]), d(1, &[0, 0])]))
            .is_one());
    }

    #[test]
    fn em_of_two_edges_has_opposite_signs() {
        let e = em_shuffle(Q, &d(1, &[0, 1]), &d(1, &[0, 1]));
        assert_eq!(e.len(), 2);
        let right_up = ProductSimplex::new(vec![d(1, &[0, 1, 1]), d(1, &[0, 0, 1])]);
        let up_right = ProductSimplex::new(vec![d(1, &[0, 0, 1]), d(1, &[0, 1, 1])]);
        assert!(e.coeff(&right_up).is_one());
        assert_eq!(e.coeff(&up_right), Q.one().neg());
    }

    #[test]
    fn em_is_a_chain_map() {
        // ∂ ∘ em = em ∘ (∂⊗id + (-1)^{deg} id⊗∂) for small simplices.
        for (pm, pn) in [(1u32, 1u32), (1, 2), (2, 1), (2, 2)] {
            let s = DeltaSimplex::fundamental(pm);
            let t = DeltaSimplex::fundamental(pn);
            let em_st = em_shuffle(Q, &s, &t);
            let mut lhs = FormalSum::zero(Q);
            for (p, c) in em_st.iter() {
                lhs = lhs.combine(c, &boundary_product(Q, p)).unwrap();
            }
            let mut rhs = FormalSum::zero(Q);
            for (f, c) in boundary(Q, &s).iter() {
                rhs = rhs.combine(c, &em_shuffle(Q, f, &t)).unwrap();
            }
            let eps = sign(Q, s.dim());
            for (f, c) in boundary(Q, &t).iter() {
                rhs = rhs.combine(&c.mul(&eps).unwrap(), &em_shuffle(Q, &s, f)).unwrap();
            }
            assert_eq!(lhs, rhs, "EM chain map fails on ({pm},{pn})");
        }
    }

    #[test]
    fn min_connection_table() {
        // ∇_* = push_min ∘ em on N_*(Δ^1) ⊗ N_*(Δ^1).
        let v0 = d(1, &[0]);
        let v1 = d(1, &[1]);
        let e = d(1, &[0, 1]);
        let conn = |a: &DeltaSimplex, b: &DeltaSimplex| push_min(Q, &em_shuffle(Q, a, b));
        assert_eq!(conn(&v0, &v0), FormalSum::basis(Q, v0.clone()));
        assert_eq!(conn(&v1, &v0), FormalSum::basis(Q, v0.clone()));
        assert_eq!(conn(&v0, &v1), FormalSum::basis(Q, v0.clone()));
        assert_eq!(conn(&v1, &v1), FormalSum::basis(Q, v1.clone()));
        assert_eq!(conn(&v1, &e), FormalSum::basis(Q, e.clone()));
        assert_eq!(conn(&e, &v1), FormalSum::basis(Q, e.clone()));
        assert!(conn(&v0, &e).is_zero());
        assert!(conn(&e, &v0).is_zero());
        assert!(conn(&e, &e).is_zero());
    }

    #[test]
    fn max_connection_table() {
        let v0 = d(1, &[0]);
        let v1 = d(1, &[1]);
        let e = d(1, &[0, 1]);
        let conn = |a: &DeltaSimplex, b: &DeltaSimplex| push_max(Q, &em_shuffle(Q, a, b));
        assert_eq!(conn(&v0, &v0), FormalSum::basis(Q, v0.clone()));
        assert_eq!(conn(&v1, &v0), FormalSum::basis(Q, v1.clone()));
        assert_eq!(conn(&v0, &v1), FormalSum::basis(Q, v1.clone()));
        assert_eq!(conn(&v1, &v1), FormalSum::basis(Q, v1.clone()));
        assert!(conn(&v1, &e).is_zero());
        assert!(conn(&e, &v1).is_zero());
        assert_eq!(conn(&v0, &e), FormalSum::basis(Q, e.clone()));
        assert_eq!(conn(&e, &v0), FormalSum::basis(Q, e.clone()));
        assert!(conn(&e, &e).is_zero());
    }
}
