//! Finite abstract simplicial complexes.
//!
//! Simplices are stored with strictly increasing vertex ids. That fixes a
//! canonical local orientation, so the incidence symbol `[σ:τ]` depends only
//! on the position of the removed vertex.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An oriented simplex given by its strictly increasing vertex ids.
///
/// The derived ordering is lexicographic on the vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSimplex(vertices));
        }
        Ok(Simplex(vertices))
    }

    /// Builds a simplex from vertices in any order, sorting and deduplicating.
    pub fn from_unsorted<I: IntoIterator<Item = u32>>(vertices: I) -> Result<Self> {
        let set: BTreeSet<u32> = vertices.into_iter().collect();
        Self::new(set.into_iter().collect())
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The facet `σ_{-i}` obtained by deleting the vertex at position `i`.
    pub fn facet(&self, i: usize) -> Result<Simplex> {
        if self.dim() == 0 || i > self.dim() {
            return Err(Error::FacetOutOfRange {
                simplex: self.clone(),
                index: i,
            });
        }
        let mut v = self.0.clone();
        v.remove(i);
        Ok(Simplex(v))
    }

    /// All facets `σ_{-0}, …, σ_{-dim}` in order of the removed position.
    /// Vertices have no facets.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.dim() == 0 { 0 } else { self.0.len() };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// `true` when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    /// `true` when `self` is a codimension-one face of `other`.
    pub fn is_facet_of(&self, other: &Simplex) -> bool {
        self.0.len() + 1 == other.0.len() && self.is_face_of(other)
    }

    /// Position of the vertex deleted from `self` to obtain `facet`.
    pub fn facet_position(&self, facet: &Simplex) -> Option<usize> {
        if !facet.is_facet_of(self) {
            return None;
        }
        Some(
            self.0
                .iter()
                .zip(facet.0.iter().map(Some).chain(std::iter::once(None)))
                .position(|(a, b)| Some(a) != b)
                .unwrap_or(facet.0.len()),
        )
    }

    /// Every nonempty face, including `self`.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The incidence symbol `[σ:τ]`: `(-1)^i` when `τ` is `σ` with the vertex at
/// position `i` removed, and `0` otherwise.
pub fn incidence(sigma: &Simplex, tau: &Simplex) -> i8 {
    match sigma.facet_position(tau) {
        Some(i) if i % 2 == 0 => 1,
        Some(_) => -1,
        None => 0,
    }
}

/// A face-closed finite set of simplices, indexed by dimension.
///
/// Each dimension level is kept sorted lexicographically; that order is the
/// basis order of every chain group built on the complex.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    levels: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The smallest face-closed complex containing all generators.
    pub fn from_generators<I: IntoIterator<Item = Simplex>>(generators: I) -> Self {
        let mut all = BTreeSet::new();
        for g in generators {
            if all.contains(&g) {
                continue;
            }
            all.extend(g.faces());
        }
        Self::from_closed_set(all)
    }

    /// Like [`SimplicialComplex::from_generators`], for raw vertex lists.
    pub fn from_vertex_lists<V: AsRef<[u32]>>(lists: &[V]) -> Result<Self> {
        let gens = lists
            .iter()
            .map(|l| Simplex::new(l.as_ref().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_generators(gens))
    }

    fn from_closed_set(all: BTreeSet<Simplex>) -> Self {
        let mut levels: Vec<Vec<Simplex>> = Vec::new();
        for s in all {
            let d = s.dim();
            if levels.len() <= d {
                levels.resize_with(d + 1, Vec::new);
            }
            levels[d].push(s);
        }
        for level in &mut levels {
            level.sort();
        }
        SimplicialComplex { levels }
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// The simplices of dimension `d` in lexicographic order.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.levels.get(d).map_or(&[], Vec::as_slice)
    }

    /// Number of simplices per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// All simplices, by dimension then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.levels.iter().flatten()
    }

    /// Position of `s` within its dimension level.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.simplices(s.dim()).binary_search(s).ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Every `(coface, facet)` pair with `facet ◁ coface`.
    pub fn facet_pairs(&self) -> impl Iterator<Item = (&Simplex, Simplex)> + '_ {
        self.iter().flat_map(|s| s.facets().map(move |t| (s, t)))
    }

    /// Simplices having `s` as a facet.
    pub fn cofacets(&self, s: &Simplex) -> Vec<Simplex> {
        self.simplices(s.dim() + 1)
            .iter()
            .filter(|c| s.is_facet_of(c))
            .cloned()
            .collect()
    }

    /// The open star of `s`: every simplex having `s` as a face.
    pub fn open_star(&self, s: &Simplex) -> Result<Vec<Simplex>> {
        if !self.contains(s) {
            return Err(Error::NotInComplex(s.clone()));
        }
        Ok(self.iter().filter(|x| s.is_face_of(x)).cloned().collect())
    }

    /// Simplices that are not a proper face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.iter()
            .filter(|s| self.cofacets(s).is_empty())
            .cloned()
            .collect()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// Fails with the first simplex of `self` missing from `other`.
    pub fn check_subcomplex_of(&self, other: &SimplicialComplex) -> Result<()> {
        match self.iter().find(|s| !other.contains(s)) {
            Some(s) => Err(Error::NotSubcomplex(s.clone())),
            None => Ok(()),
        }
    }

    pub fn union(&self, other: &SimplicialComplex) -> Self {
        Self::from_generators(self.iter().chain(other.iter()).cloned())
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> Self {
        Self::from_closed_set(self.iter().filter(|s| other.contains(s)).cloned().collect())
    }

    /// The subcomplex of simplices satisfying `keep`. The predicate must be
    /// closed under taking faces.
    pub fn filter<F: FnMut(&Simplex) -> bool>(&self, mut keep: F) -> Self {
        Self::from_closed_set(self.iter().filter(|s| keep(s)).cloned().collect())
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Simplex> for SimplicialComplex {
    fn from_iter<T: IntoIterator<Item = Simplex>>(iter: T) -> Self {
        Self::from_generators(iter)
    }
}

/// Result of comparing two complexes as subsets of simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcomplexOps {
    pub is_subcomplex: bool,
    pub union: SimplicialComplex,
    pub intersection: SimplicialComplex,
}

/// `is_subcomplex` reports whether `a ⊆ b`.
pub fn subcomplex_ops(a: &SimplicialComplex, b: &SimplicialComplex) -> SubcomplexOps {
    SubcomplexOps {
        is_subcomplex: a.is_subcomplex_of(b),
        union: a.union(b),
        intersection: a.intersection(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn cx(lists: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(lists).unwrap()
    }

    #[test]
    fn simplex_rejects_malformed_vertex_lists() {
        assert!(Simplex::new(vec![]).is_err());
        assert!(Simplex::new(vec![0, 1, 1]).is_err());
        assert!(Simplex::new(vec![2, 1]).is_err());
        assert_eq!(Simplex::from_unsorted([2, 0, 2]).unwrap(), s(&[0, 2]));
    }

    #[test]
    fn close_under_faces_examples() {
        let tri = cx(&[&[0, 1, 2]]);
        assert_eq!(tri.len(), 7);
        assert_eq!(tri.f_vector(), vec![3, 3, 1]);
        assert_eq!(cx(&[&[0, 1], &[1, 2]]).len(), 5);
        let empty = SimplicialComplex::from_generators(Vec::new());
        assert!(empty.is_empty());
        assert_eq!(empty.dim(), None);
        // idempotent
        assert_eq!(SimplicialComplex::from_generators(tri.iter().cloned()), tri);
    }

    #[test]
    fn facet_examples() {
        assert_eq!(s(&[0, 1, 2]).facet(1).unwrap(), s(&[0, 2]));
        assert_eq!(s(&[0, 1]).facet(0).unwrap(), s(&[1]));
        assert_eq!(s(&[0, 1, 2, 3]).facet(3).unwrap(), s(&[0, 1, 2]));
        assert!(s(&[0, 1]).facet(2).is_err());
        assert!(s(&[4]).facet(0).is_err());
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(incidence(&s(&[0, 1, 2]), &s(&[0, 2])), -1);
        assert_eq!(incidence(&s(&[0, 1, 2]), &s(&[0, 1])), 1);
        assert_eq!(incidence(&s(&[0, 1, 2]), &s(&[1, 2])), 1);
        assert_eq!(incidence(&s(&[0, 1, 2]), &s(&[3])), 0);
        assert_eq!(incidence(&s(&[0, 1, 2]), &s(&[0])), 0);
        assert_eq!(incidence(&s(&[0, 1]), &s(&[1])), 1);
        assert_eq!(incidence(&s(&[0, 1]), &s(&[0])), -1);
    }

    #[test]
    fn subcomplex_algebra() {
        let circle = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        let same = subcomplex_ops(&circle, &circle);
        assert!(same.is_subcomplex);
        assert_eq!(same.union, circle);
        assert_eq!(same.intersection, circle);

        let arc_a = cx(&[&[0, 1], &[1, 2]]);
        let arc_b = cx(&[&[0, 2]]);
        let ops = subcomplex_ops(&arc_a, &arc_b);
        assert!(!ops.is_subcomplex);
        assert_eq!(ops.union, circle);
        let brute: Vec<Simplex> = circle
            .iter()
            .filter(|x| arc_a.contains(x) && arc_b.contains(x))
            .cloned()
            .collect();
        assert_eq!(ops.intersection.iter().cloned().collect::<Vec<_>>(), brute);
        assert_eq!(brute, vec![s(&[0]), s(&[2])]);

        assert!(SimplicialComplex::empty().is_subcomplex_of(&circle));
        assert!(arc_a.check_subcomplex_of(&circle).is_ok());
        assert_eq!(
            circle.check_subcomplex_of(&arc_a),
            Err(Error::NotSubcomplex(s(&[0, 2])))
        );
    }

    #[test]
    fn open_star_examples() {
        let edge = cx(&[&[0, 1]]);
        assert_eq!(edge.open_star(&s(&[0])).unwrap(), vec![s(&[0]), s(&[0, 1])]);
        let tri = cx(&[&[0, 1, 2]]);
        assert_eq!(tri.open_star(&s(&[0, 1, 2])).unwrap(), vec![s(&[0, 1, 2])]);
        let bowtie = cx(&[&[0, 1, 2], &[2, 3, 4]]);
        let star = bowtie.open_star(&s(&[2])).unwrap();
        let brute: Vec<Simplex> = bowtie
            .iter()
            .filter(|x| x.vertices().contains(&2))
            .cloned()
            .collect();
        assert_eq!(star, brute);
        assert_eq!(star.len(), 7);
        assert_eq!(
            bowtie.open_star(&s(&[0, 4])),
            Err(Error::NotInComplex(s(&[0, 4])))
        );
    }

    fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        prop::collection::vec(prop::collection::btree_set(0u32..7, 1..5), 0..6).prop_map(|gens| {
            SimplicialComplex::from_generators(
                gens.into_iter()
                    .map(|g| Simplex::new(g.into_iter().collect()).unwrap()),
            )
        })
    }

    proptest! {
        #[test]
        fn incidence_squares_cancel(v in prop::collection::btree_set(0u32..10, 3..6)) {
            let top = Simplex::new(v.into_iter().collect()).unwrap();
            for face2 in top.facets().flat_map(|t| t.facets().collect::<Vec<_>>()) {
                let total: i32 = top
                    .facets()
                    .map(|mid| incidence(&top, &mid) as i32 * incidence(&mid, &face2) as i32)
                    .sum();
                prop_assert_eq!(total, 0);
            }
        }

        #[test]
        fn closure_is_idempotent_and_face_closed(k in arb_complex()) {
            prop_assert_eq!(SimplicialComplex::from_generators(k.iter().cloned()), k.clone());
            for s in k.iter() {
                for f in s.facets() {
                    prop_assert!(k.contains(&f));
                }
            }
        }

        #[test]
        fn union_and_intersection_bound_their_inputs(a in arb_complex(), b in arb_complex()) {
            let ops = subcomplex_ops(&a, &b);
            prop_assert!(ops.intersection.is_subcomplex_of(&a));
            prop_assert!(ops.intersection.is_subcomplex_of(&b));
            prop_assert!(a.is_subcomplex_of(&ops.union));
            prop_assert!(b.is_subcomplex_of(&ops.union));
            prop_assert_eq!(ops.union.len(), a.len() + b.len() - ops.intersection.len());
            for x in ops.intersection.iter().chain(ops.union.iter()) {
                for f in x.facets() {
                    prop_assert!(ops.intersection.contains(&f) || !ops.intersection.contains(x));
                    prop_assert!(ops.union.contains(&f));
                }
            }
        }
    }
}
