//! Seeded generators for randomized trials.
//!
//! Random cosheaves are built as subquotients of one ambient space `F^n`:
//! each simplex gets `C_σ = S_σ / Q_σ` where `S_σ` and `Q_σ` shrink as `σ`
//! grows, and every extension map is induced by the inclusion `S_σ ⊆ S_τ`.
//! Functoriality then holds by construction, and a random change of basis
//! per costalk hides the structure from the algorithms under test.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::cosheaf::Cosheaf;
use crate::linalg::{Field, Matrix, Vector};

/// One of `F_2`, `F_3`, `F_5`.
pub fn random_field<R: Rng>(rng: &mut R) -> Field {
    let p = *[2u32, 3, 5].choose(rng).expect("nonempty");
    Field::new(p).expect("prime")
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| rng.gen_range(0..field.characteristic()))
        .collect();
    Matrix::from_vec(field, rows, cols, data).expect("shape")
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_vector<R: Rng>(rng: &mut R, field: Field, n: usize) -> Vector {
    (0..n).map(|_| rng.gen_range(0..field.characteristic())).collect()
}

/// A nonempty complex of dimension at most `max_dim` with at most
/// `max_simplices` simplices, on at most 7 vertices.
pub fn random_complex<R: Rng>(rng: &mut R, max_dim: usize, max_simplices: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=7u32);
    let vertices: Vec<u32> = (0..n).collect();
    let mut k = SimplicialComplex::from_generators([Simplex::vertex(0)]);
    for _ in 0..rng.gen_range(1..=12) {
        let size = rng.gen_range(1..=(max_dim + 1).min(n as usize));
        let pick: Vec<u32> = vertices.choose_multiple(rng, size).copied().collect();
        let s = Simplex::from_unsorted(pick).expect("distinct vertices");
        let grown = k.union(&SimplicialComplex::from_generators([s]));
        if grown.len() <= max_simplices {
            k = grown;
        }
    }
    k
}

/// A random valid cosheaf on `k` with costalks of dimension at most
/// `max_stalk`.
pub fn random_cosheaf<R: Rng>(rng: &mut R, k: &SimplicialComplex, field: Field, max_stalk: usize) -> Cosheaf {
    if k.is_empty() || max_stalk == 0 {
        return Cosheaf::zero(k, field);
    }
    let n = rng.gen_range(1..=max_stalk);
    let simplices: Vec<Simplex> = k.iter().cloned().collect();
    let mut c = subquotient_cosheaf(rng, k, field, n, &simplices);
    if n < max_stalk && rng.gen_bool(0.3) {
        let extra = if rng.gen_bool(0.5) {
            Cosheaf::constant(k, 1, field)
        } else {
            let s = simplices.choose(rng).expect("nonempty");
            Cosheaf::skyscraper(k, s, field).expect("simplex of k")
        };
        c = c.direct_sum(&extra).expect("same base");
    }
    let basis: BTreeMap<Simplex, Matrix> = simplices
        .iter()
        .map(|s| (s.clone(), random_invertible(rng, field, c.stalk_dim(s))))
        .collect();
    c.change_basis(&basis).expect("invertible")
}

fn subquotient_cosheaf<R: Rng>(
    rng: &mut R,
    k: &SimplicialComplex,
    field: Field,
    n: usize,
    simplices: &[Simplex],
) -> Cosheaf {
    // `S_σ` is spanned by the generators whose support contains `σ`.
    let gens: Vec<(Vector, Simplex)> = (0..rng.gen_range(1..=n + 2))
        .map(|_| {
            let support = simplices.choose(rng).expect("nonempty").clone();
            (random_vector(rng, field, n), support)
        })
        .collect();
    // Relations live in the span of generators with larger support, so
    // `Q_σ ⊆ S_σ` everywhere.
    let mut rels: Vec<(Vector, Simplex)> = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let support = simplices.choose(rng).expect("nonempty").clone();
        let mut h = vec![0; n];
        for (g, _) in gens.iter().filter(|(_, r)| support.is_face_of(r)) {
            let a = rng.gen_range(0..field.characteristic());
            for (x, y) in h.iter_mut().zip(g) {
                *x = field.add(*x, field.mul(a, *y));
            }
        }
        rels.push((h, support));
    }

    let mut frames: BTreeMap<&Simplex, (Vec<Vector>, Vec<Vector>)> = BTreeMap::new();
    for s in simplices {
        let span = |list: &[(Vector, Simplex)]| -> Vec<Vector> {
            list.iter()
                .filter(|(_, r)| s.is_face_of(r))
                .map(|(v, _)| v.clone())
                .collect()
        };
        let q_all = span(&rels);
        let q_mat = Matrix::from_columns(field, n, &q_all);
        let q: Vec<Vector> = q_mat.pivot_columns().into_iter().map(|j| q_all[j].clone()).collect();
        let s_all = span(&gens);
        let mut cols = q.clone();
        cols.extend(s_all.iter().cloned());
        let pivots = Matrix::from_columns(field, n, &cols).pivot_columns();
        let complement: Vec<Vector> = pivots
            .into_iter()
            .filter(|&j| j >= q.len())
            .map(|j| cols[j].clone())
            .collect();
        frames.insert(s, (q, complement));
    }

    let stalks = frames
        .iter()
        .map(|(s, (_, b))| ((*s).clone(), b.len()))
        .collect();
    let mut maps = BTreeMap::new();
    for (t, s) in k.facet_pairs() {
        let (q, b) = &frames[&s];
        let mut frame = q.clone();
        frame.extend(b.iter().cloned());
        let frame = Matrix::from_columns(field, n, &frame);
        let columns: Vec<Vector> = frames[t]
            .1
            .iter()
            .map(|v| {
                let x = frame.solve(v).expect("S_τ ⊆ S_σ");
                x[q.len()..].to_vec()
            })
            .collect();
        maps.insert((t.clone(), s.clone()), Matrix::from_columns(field, b.len(), &columns));
    }
    Cosheaf::new(k.clone(), field, stalks, maps).expect("maps on facet pairs")
}

/// Subcomplexes `L`, `M` with `L ∪ M = k`: each maximal simplex goes to `L`,
/// `M` or both. Occasionally `L` is empty.
pub fn random_decomposition<R: Rng>(rng: &mut R, k: &SimplicialComplex) -> (SimplicialComplex, SimplicialComplex) {
    let mut l = Vec::new();
    let mut m = Vec::new();
    let empty_left = rng.gen_bool(0.1);
    for s in k.maximal_simplices() {
        match if empty_left { 1 } else { rng.gen_range(0..3) } {
            0 => l.push(s),
            1 => m.push(s),
            _ => {
                l.push(s.clone());
                m.push(s);
            }
        }
    }
    (
        SimplicialComplex::from_generators(l),
        SimplicialComplex::from_generators(m),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn random_cosheaves_are_valid_and_bounded() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let k = random_complex(&mut rng, 3, 40);
            assert!(k.len() <= 40 && k.dim().unwrap() <= 3);
            let field = random_field(&mut rng);
            let c = random_cosheaf(&mut rng, &k, field, 3);
            assert!(c.validate().violations.is_empty());
            assert!(c.stalk_dims().all(|(_, d)| d <= 3));
        }
    }

    #[test]
    fn decompositions_cover() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..100 {
            let k = random_complex(&mut rng, 3, 40);
            let (l, m) = random_decomposition(&mut rng, &k);
            assert_eq!(l.union(&m), k);
        }
    }

    #[test]
    fn cosheaves_are_not_all_trivial() {
        let mut rng = StdRng::seed_from_u64(9);
        let mut nonzero_maps = 0;
        for _ in 0..50 {
            let k = random_complex(&mut rng, 3, 40);
            let c = random_cosheaf(&mut rng, &k, Field::new(3).unwrap(), 3);
            nonzero_maps += c.facet_maps().filter(|(_, m)| !m.is_zero()).count();
        }
        assert!(nonzero_maps > 50);
    }
}
