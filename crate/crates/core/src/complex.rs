//! Finite chain complexes over an exact ring, with homology-rank computation
//! by Gaussian elimination, tensor products, mapping cones, duals, and a
//! canonical text serialization.

use crate::formal::{BasisKey, FormalSum, Pair};
use crate::hom::GradedHom;
use crate::report::{CheckItem, Report};
use crate::ring::{sign, Ring, RingError, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// A chain complex with a finite ordered basis in each stored degree and a
/// differential of degree `-1`. Cochain-type data is stored through the
/// lower-grading conversion `M_* = M^{-*}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<K: BasisKey> {
    ring: Ring,
    degrees: BTreeMap<i64, Vec<K>>,
    diff: GradedHom<K, K>,
}

impl<K: BasisKey> Complex<K> {
    pub fn new(ring: Ring) -> Self {
        Complex {
            ring,
            degrees: BTreeMap::new(),
            diff: GradedHom::zero(ring, -1),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn add_basis(&mut self, degree: i64, key: K) {
        let v = self.degrees.entry(degree).or_default();
        debug_assert!(!v.contains(&key), "duplicate basis label {key}");
        v.push(key);
    }

    pub fn set_diff(&mut self, from: K, to: FormalSum<K>) {
        self.diff.set(from, to);
    }

    pub fn add_diff(&mut self, from: K, extra: &FormalSum<K>) {
        self.diff.add_to(from, extra);
    }

    pub fn diff(&self) -> &GradedHom<K, K> {
        &self.diff
    }

    pub fn d(&self, x: &FormalSum<K>) -> FormalSum<K> {
        self.diff.apply(x)
    }

    pub fn d_basis(&self, key: &K) -> FormalSum<K> {
        self.diff.apply_basis(key)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&i64, &Vec<K>)> {
        self.degrees.iter()
    }

    pub fn basis_in(&self, degree: i64) -> &[K] {
        self.degrees.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim_in(&self, degree: i64) -> usize {
        self.basis_in(degree).len()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(|v| v.len()).sum()
    }

    pub fn degree_of(&self, key: &K) -> Option<i64> {
        for (d, v) in &self.degrees {
            if v.contains(key) {
                return Some(*d);
            }
        }
        None
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.keys().next_back().copied()
    }

    /// Checks `d ∘ d = 0` on every stored basis element, reporting violations
    /// with witnesses.
    pub fn square_zero_check(&self) -> Report {
        let mut checked = 0usize;
        let mut witness = None;
        for v in self.degrees.values() {
            for k in v {
                checked += 1;
                let dd = self.d(&self.d_basis(k));
                if !dd.is_zero() && witness.is_none() {
                    witness = Some(format!("d(d({k})) = {dd}"));
                }
            }
        }
        Report::single(CheckItem::new("square_zero", witness.is_none(), checked).with_witness(witness))
    }

    /// Checks that every differential entry lands in (degree - 1) and that all
    /// labels referenced by the differential are stored basis labels.
    pub fn grading_check(&self) -> Report {
        let mut degree_of: BTreeMap<&K, i64> = BTreeMap::new();
        for (d, v) in &self.degrees {
            for k in v {
                degree_of.insert(k, *d);
            }
        }
        let mut checked = 0usize;
        let mut witness = None;
        for (from, to) in self.diff.entries() {
            checked += 1;
            let Some(df) = degree_of.get(from) else {
                witness.get_or_insert(format!("differential source {from} not in basis"));
                continue;
            };
            for (t, _) in to.iter() {
                match degree_of.get(t) {
                    None => {
                        witness.get_or_insert(format!("differential target {t} not in basis"));
                    }
                    Some(dt) if *dt != df - 1 => {
                        witness.get_or_insert(format!(
                            "d({from}) hits {t} in degree {dt}, expected {}",
                            df - 1
                        ));
                    }
                    _ => {}
                }
            }
        }
        Report::single(CheckItem::new("grading", witness.is_none(), checked).with_witness(witness))
    }

    /// The matrix of the differential from degree `d` to degree `d-1`, as rows
    /// indexed by the source basis.
    fn diff_matrix(&self, d: i64) -> Vec<Vec<Scalar>> {
        let src = self.basis_in(d);
        let tgt = self.basis_in(d - 1);
        let mut rows = Vec::with_capacity(src.len());
        for s in src {
            let image = self.d_basis(s);
            let row: Vec<Scalar> = tgt.iter().map(|t| image.coeff(t)).collect();
            rows.push(row);
        }
        rows
    }

    /// Ranks of homology `H_d = ker(d_d) / im(d_{d+1})` over a field, for all
    /// degrees within the stored support (or the given closed range).
    pub fn homology_ranks(&self, range: Option<(i64, i64)>) -> Result<BTreeMap<i64, usize>, RingError> {
        if !self.ring.is_field() {
            return Err(RingError::NoDivision);
        }
        let (lo, hi) = match range.or_else(|| Some((self.min_degree()?, self.max_degree()?))) {
            Some(r) => r,
            None => return Ok(BTreeMap::new()),
        };
        let mut out = BTreeMap::new();
        for d in lo..=hi {
            let n = self.dim_in(d);
            if n == 0 {
                continue;
            }
            let rank_d = matrix_rank(self.ring, self.diff_matrix(d));
            let rank_d1 = matrix_rank(self.ring, self.diff_matrix(d + 1));
            let h = n - rank_d - rank_d1;
            if h > 0 {
                out.insert(d, h);
            }
        }
        Ok(out)
    }

    /// Relabels the basis of the complex.
    pub fn map_keys<L: BasisKey>(&self, mut f: impl FnMut(&K) -> L) -> Complex<L> {
        let mut out = Complex::new(self.ring);
        for (d, v) in &self.degrees {
            for k in v {
                out.add_basis(*d, f(k));
            }
        }
        for (from, to) in self.diff.entries() {
            out.set_diff(f(from), to.map_keys(&mut f));
        }
        out
    }
}

/// Gaussian elimination rank over a field; consumes the row list.
pub fn matrix_rank(ring: Ring, mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0usize;
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].inv().expect("field element");
        for c in col..ncols {
            rows[pivot_row][c] = rows[pivot_row][c].mul(&inv).unwrap();
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].neg();
                for c in col..ncols {
                    let add = rows[pivot_row][c].mul(&factor).unwrap();
                    rows[r][c] = rows[r][c].add(&add).unwrap();
                }
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    let _ = ring;
    rank
}

/// Tensor product of complexes: basis pairs, Koszul differential
/// `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`.
pub fn tensor<A: BasisKey, B: BasisKey>(c1: &Complex<A>, c2: &Complex<B>) -> Result<Complex<Pair<A, B>>, RingError> {
    if c1.ring() != c2.ring() {
        return Err(RingError::Mismatch(c1.ring(), c2.ring()));
    }
    let ring = c1.ring();
    let mut out = Complex::new(ring);
    for (d1, v1) in c1.degrees() {
        for (d2, v2) in c2.degrees() {
            for a in v1 {
                for b in v2 {
                    out.add_basis(d1 + d2, Pair(a.clone(), b.clone()));
                }
            }
        }
    }
    for (d1, v1) in c1.degrees() {
        for a in v1 {
            let da = c1.d_basis(a);
            let koszul = sign(ring, *d1);
            for (_d2, v2) in c2.degrees() {
                for b in v2 {
                    let db = c2.d_basis(b);
                    let mut img = da.map_keys(|a2| Pair(a2.clone(), b.clone()));
                    img = img
                        .combine(&koszul, &db.map_keys(|b2| Pair(a.clone(), b2.clone())))
                        .expect("same ring");
                    if !img.is_zero() {
                        out.set_diff(Pair(a.clone(), b.clone()), img);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The one-dimensional complex `k` concentrated in degree 0.
pub fn unit_complex<K: BasisKey>(ring: Ring, label: K) -> Complex<K> {
    let mut c = Complex::new(ring);
    c.add_basis(0, label);
    c
}

/// Checks the chain-map property `d_tgt ∘ f = (-1)^{deg f} f ∘ d_src` on the
/// stored basis of the source.
pub fn check_chain_map<S: BasisKey, T: BasisKey>(
    name: &str,
    f: &GradedHom<S, T>,
    src: &Complex<S>,
    tgt: &Complex<T>,
) -> Report {
    let eps = sign(f.ring(), f.degree());
    let mut checked = 0usize;
    let mut witness = None;
    for (_d, v) in src.degrees() {
        for k in v {
            checked += 1;
            let lhs = tgt.d(&f.apply_basis(k));
            let rhs = f.apply(&src.d_basis(k)).scale(&eps);
            if lhs != rhs && witness.is_none() {
                witness = Some(format!("on {k}: d(f) = {lhs} but ±f(d) = {rhs}"));
            }
        }
    }
    Report::single(CheckItem::new(name, witness.is_none(), checked).with_witness(witness))
}

/// Checks `d∘H + H∘d = g - f` on the stored basis (for `f, g` of degree 0 and
/// `H` of degree +1).
pub fn check_homotopy<S: BasisKey, T: BasisKey>(
    name: &str,
    h: &GradedHom<S, T>,
    f: &GradedHom<S, T>,
    g: &GradedHom<S, T>,
    src: &Complex<S>,
    tgt: &Complex<T>,
) -> Report {
    let mut checked = 0usize;
    let mut witness = None;
    for (_d, v) in src.degrees() {
        for k in v {
            checked += 1;
            let lhs = tgt.d(&h.apply_basis(k)).add(&h.apply(&src.d_basis(k)));
            let rhs = g.apply_basis(k).sub(&f.apply_basis(k));
            if lhs != rhs && witness.is_none() {
                witness = Some(format!("on {k}: dH+Hd = {lhs} but g-f = {rhs}"));
            }
        }
    }
    Report::single(CheckItem::new(name, witness.is_none(), checked).with_witness(witness))
}

/// Key for mapping-cone basis elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConeKey<S, T> {
    Src(S),
    Tgt(T),
}

impl<S: fmt::Display, T: fmt::Display> fmt::Display for ConeKey<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeKey::Src(s) => write!(f, "s:{s}"),
            ConeKey::Tgt(t) => write!(f, "t:{t}"),
        }
    }
}

/// The mapping cone of a degree-0 chain map: `Cone(f)_n = S_{n-1} ⊕ T_n` with
/// `d(s, t) = (-d s, f(s) + d t)`. `f` is a quasi-isomorphism iff the cone is
/// acyclic.
pub fn mapping_cone<S: BasisKey, T: BasisKey>(
    f: &GradedHom<S, T>,
    src: &Complex<S>,
    tgt: &Complex<T>,
) -> Complex<ConeKey<S, T>> {
    assert_eq!(f.degree(), 0, "cone expects a degree-0 map");
    let ring = src.ring();
    let mut cone = Complex::new(ring);
    for (d, v) in src.degrees() {
        for k in v {
            cone.add_basis(d + 1, ConeKey::Src(k.clone()));
        }
    }
    for (d, v) in tgt.degrees() {
        for k in v {
            cone.add_basis(*d, ConeKey::Tgt(k.clone()));
        }
    }
    for (_d, v) in src.degrees() {
        for k in v {
            let ds = src.d_basis(k).neg().map_keys(|s| ConeKey::Src(s.clone()));
            let fs = f.apply_basis(k).map_keys(|t| ConeKey::Tgt(t.clone()));
            cone.set_diff(ConeKey::Src(k.clone()), ds.add(&fs));
        }
    }
    for (_d, v) in tgt.degrees() {
        for k in v {
            let dt = tgt.d_basis(k).map_keys(|t| ConeKey::Tgt(t.clone()));
            cone.set_diff(ConeKey::Tgt(k.clone()), dt);
        }
    }
    cone
}

/// True when the degree-0 chain map is a quasi-isomorphism (field ring).
pub fn is_quasi_iso<S: BasisKey, T: BasisKey>(
    f: &GradedHom<S, T>,
    src: &Complex<S>,
    tgt: &Complex<T>,
) -> Result<bool, RingError> {
    let cone = mapping_cone(f, src, tgt);
    Ok(cone.homology_ranks(None)?.is_empty())
}

/// The dual of a finite complex, with basis labels reused verbatim and the
/// differential pinned by `δ(0#) = -01#`, `δ(1#) = +01#` on the interval:
/// `δ(k^♯)` has coefficient `(-1)^{deg k} [k : d(k')]` on `k'^♯`.
pub fn dual_complex<K: BasisKey>(c: &Complex<K>) -> Complex<K> {
    let ring = c.ring();
    let mut out = Complex::new(ring);
    let mut degree_of: BTreeMap<K, i64> = BTreeMap::new();
    for (d, v) in c.degrees() {
        for k in v {
            out.add_basis(-d, k.clone());
            degree_of.insert(k.clone(), *d);
        }
    }
    // δ(k^♯) = (-1)^{-deg k^♯} Σ_{k'} [d(k') : k] k'^♯ where deg k^♯ = -deg k.
    let mut dual_diff: BTreeMap<K, FormalSum<K>> = BTreeMap::new();
    for (_d, v) in c.degrees() {
        for kp in v {
            let img = c.d_basis(kp);
            for (k, coef) in img.iter() {
                let eps = sign(ring, degree_of[k]);
                dual_diff
                    .entry(k.clone())
                    .or_insert_with(|| FormalSum::zero(ring))
                    .add_term(kp.clone(), coef.mul(&eps).unwrap());
            }
        }
    }
    for (k, v) in dual_diff {
        out.set_diff(k, v);
    }
    out
}

/// Serializes a complex to the canonical text format
/// `{"ring": …, "degrees": {d: [labels…]}, "diff": [[from,to,num,den-or-mod]…]}`.
pub fn to_json<K: BasisKey>(c: &Complex<K>) -> serde_json::Value {
    use serde_json::{json, Map, Value};
    let mut degrees = Map::new();
    for (d, v) in c.degrees() {
        degrees.insert(
            d.to_string(),
            Value::Array(v.iter().map(|k| Value::String(k.to_string())).collect()),
        );
    }
    let mut diff = Vec::new();
    for (from, img) in c.diff().entries() {
        for (to, coef) in img.iter() {
            let (num, den) = coef.to_num_den();
            diff.push(json!([from.to_string(), to.to_string(), num, den]));
        }
    }
    json!({ "ring": c.ring().to_string(), "degrees": degrees, "diff": diff })
}

/// Parses the canonical text format back into a string-labeled complex.
pub fn from_json(v: &serde_json::Value) -> Result<Complex<String>, String> {
    let ring = Ring::parse(v["ring"].as_str().ok_or("missing ring")?).map_err(|e| e.to_string())?;
    let mut c = Complex::new(ring);
    let degrees = v["degrees"].as_object().ok_or("missing degrees")?;
    for (d, labels) in degrees {
        let d: i64 = d.parse().map_err(|_| "bad degree")?;
        for l in labels.as_array().ok_or("bad degree list")? {
            c.add_basis(d, l.as_str().ok_or("bad label")?.to_string());
        }
    }
    if let Some(entries) = v["diff"].as_array() {
        for e in entries {
            let row = e.as_array().ok_or("bad diff row")?;
            if row.len() != 4 {
                return Err("diff row must be [from,to,num,den-or-mod]".into());
            }
            let from = row[0].as_str().ok_or("bad from")?.to_string();
            let to = row[1].as_str().ok_or("bad to")?.to_string();
            let num = row[2].as_str().ok_or("bad num")?;
            let den = row[3].as_str().ok_or("bad den")?;
            let coef = Scalar::from_num_den(ring, num, den).map_err(|e| e.to_string())?;
            let mut img = c.d_basis(&from);
            img.add_term(to, coef);
            c.set_diff(from, img);
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn interval_cochains(ring: Ring) -> Complex<String> {
        // N^*(Δ^1) in lower grading: 0#, 1# in degree 0; 01# in degree -1,
        // with δ(0#) = -01#, δ(1#) = +01#.
        let mut c = Complex::new(ring);
        c.add_basis(0, "0#".to_string());
        c.add_basis(0, "1#".to_string());
        c.add_basis(-1, "01#".to_string());
        c.set_diff("0#".to_string(), FormalSum::basis(ring, "01#".to_string()).neg());
        c.set_diff("1#".to_string(), FormalSum::basis(ring, "01#".to_string()));
        c
    }

    #[test]
    fn zero_differential_passes_square_zero() {
        let mut c: Complex<String> = Complex::new(Ring::Q);
        c.add_basis(0, "a".into());
        assert!(c.square_zero_check().passed());
    }

    #[test]
    fn two_term_identity_complex_passes() {
        let mut c: Complex<String> = Complex::new(Ring::Q);
        c.add_basis(1, "x".into());
        c.add_basis(0, "y".into());
        c.set_diff("x".to_string(), FormalSum::basis(Ring::Q, "y".to_string()));
        assert!(c.square_zero_check().passed());
        assert!(c.grading_check().passed());
        assert!(c.homology_ranks(None).unwrap().is_empty());
    }

    #[test]
    fn zero_diff_ranks_match_dims() {
        let mut c: Complex<String> = Complex::new(Ring::Q);
        c.add_basis(-1, "a".into());
        for i in 0..3 {
            c.add_basis(-2, format!("b{i}"));
        }
        let h = c.homology_ranks(None).unwrap();
        assert_eq!(h.get(&-1), Some(&1));
        assert_eq!(h.get(&-2), Some(&3));
    }

    #[test]
    fn interval_span_is_acyclic() {
        // span{0#, 01#} with δ(0#) = -01# has vanishing homology.
        let ring = Ring::Q;
        let mut c: Complex<String> = Complex::new(ring);
        c.add_basis(0, "0#".into());
        c.add_basis(-1, "01#".into());
        c.set_diff("0#".to_string(), FormalSum::basis(ring, "01#".to_string()).neg());
        assert!(c.homology_ranks(None).unwrap().is_empty());
    }

    #[test]
    fn z_ring_rejected_for_homology() {
        let c: Complex<String> = Complex::new(Ring::Z);
        assert!(c.homology_ranks(None).is_err());
    }

    #[test]
    fn unit_tensor_is_identity_sized() {
        let ring = Ring::Q;
        let i = interval_cochains(ring);
        let k = unit_complex(ring, "1".to_string());
        let t = tensor(&k, &i).unwrap();
        assert_eq!(t.total_dim(), 3);
        assert!(t.square_zero_check().passed());
    }

    #[test]
    fn interval_tensor_square_has_nine_cells() {
        let ring = Ring::Q;
        let i = interval_cochains(ring);
        let t = tensor(&i, &i).unwrap();
        assert_eq!(t.dim_in(0), 4);
        assert_eq!(t.dim_in(-1), 4);
        assert_eq!(t.dim_in(-2), 1);
        assert!(t.square_zero_check().passed());
        // d(01#⊗01#) = d(01#)⊗01# + (-1)^{-1} 01#⊗d(01#) = 0.
        assert!(t
            .d_basis(&Pair("01#".to_string(), "01#".to_string()))
            .is_zero());
    }

    #[test]
    fn dual_of_interval_chains_matches_pinned_signs() {
        // N_*(Δ^1): 0, 1 in degree 0, 01 in degree 1, d(01) = 1 - 0. The dual
        // must satisfy δ(0#) = -01#, δ(1#) = +01#.
        let ring = Ring::Q;
        let mut n: Complex<String> = Complex::new(ring);
        n.add_basis(0, "0".into());
        n.add_basis(0, "1".into());
        n.add_basis(1, "01".into());
        n.set_diff(
            "01".to_string(),
            FormalSum::basis(ring, "1".to_string()).sub(&FormalSum::basis(ring, "0".to_string())),
        );
        let dual = dual_complex(&n);
        assert_eq!(
            dual.d_basis(&"0".to_string()),
            FormalSum::basis(ring, "01".to_string()).neg()
        );
        assert_eq!(
            dual.d_basis(&"1".to_string()),
            FormalSum::basis(ring, "01".to_string())
        );
        assert!(dual.square_zero_check().passed());
    }

    #[test]
    fn cone_detects_quasi_iso() {
        let ring = Ring::Q;
        let i = interval_cochains(ring);
        // The inclusion of k (degree 0) as 0# + 1# is a quasi-isomorphism.
        let k = unit_complex(ring, "1".to_string());
        let mut f = GradedHom::zero(ring, 0);
        f.set(
            "1".to_string(),
            FormalSum::basis(ring, "0#".to_string()).add(&FormalSum::basis(ring, "1#".to_string())),
        );
        assert!(check_chain_map("unit", &f, &k, &i).passed());
        assert!(is_quasi_iso(&f, &k, &i).unwrap());
        // The zero map is not.
        let z = GradedHom::zero(ring, 0);
        assert!(!is_quasi_iso(&z, &k, &i).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let c = interval_cochains(Ring::Fp(2));
        let j = to_json(&c);
        let c2 = from_json(&j).unwrap();
        assert_eq!(to_json(&c2), j);
    }
}
