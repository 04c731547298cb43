//! Small named complexes and decompositions with known homology.

use crate::complex::SimplicialComplex;

fn closure(lists: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::from_vertex_lists(lists).expect("fixture simplices are sorted")
}

pub fn point() -> SimplicialComplex {
    closure(&[&[0]])
}

/// The edge `(0,1)`.
pub fn edge() -> SimplicialComplex {
    closure(&[&[0, 1]])
}

/// Path `0 - 1 - 2`.
pub fn interval() -> SimplicialComplex {
    closure(&[&[0, 1], &[1, 2]])
}

/// Boundary of the triangle `(0,1,2)`: three vertices, three edges.
pub fn circle() -> SimplicialComplex {
    closure(&[&[0, 1], &[1, 2], &[0, 2]])
}

/// The full triangle.
pub fn triangle() -> SimplicialComplex {
    closure(&[&[0, 1, 2]])
}

/// The full tetrahedron.
pub fn tetrahedron() -> SimplicialComplex {
    closure(&[&[0, 1, 2, 3]])
}

/// Boundary of the tetrahedron.
pub fn sphere() -> SimplicialComplex {
    closure(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

/// Möbius' 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> SimplicialComplex {
    let mut lists = Vec::new();
    for i in 0..7u32 {
        for offsets in [[0, 1, 3], [0, 2, 3]] {
            let mut t: Vec<u32> = offsets.iter().map(|o| (i + o) % 7).collect();
            t.sort_unstable();
            lists.push(t);
        }
    }
    SimplicialComplex::from_vertex_lists(&lists).expect("sorted")
}

/// The 6-vertex projective plane (hemi-icosahedron).
pub fn projective_plane() -> SimplicialComplex {
    closure(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[2, 4, 5],
        &[1, 3, 5],
    ])
}

/// A space `K` with subcomplexes `L`, `M` covering it.
#[derive(Debug, Clone)]
pub struct Split {
    pub name: &'static str,
    pub k: SimplicialComplex,
    pub l: SimplicialComplex,
    pub m: SimplicialComplex,
}

/// Circle as two arcs `{01, 12}` and `{02}` meeting in `{0, 2}`.
pub fn circle_split() -> Split {
    Split {
        name: "circle",
        k: circle(),
        l: closure(&[&[0, 1], &[1, 2]]),
        m: closure(&[&[0, 2]]),
    }
}

/// Hollow tetrahedron as two discs meeting along the 4-cycle `0-2-1-3`.
pub fn sphere_split() -> Split {
    Split {
        name: "sphere",
        k: sphere(),
        l: closure(&[&[0, 1, 2], &[0, 1, 3]]),
        m: closure(&[&[0, 2, 3], &[1, 2, 3]]),
    }
}

/// Interval split at its middle vertex.
pub fn interval_split() -> Split {
    Split {
        name: "interval",
        k: interval(),
        l: closure(&[&[0, 1]]),
        m: closure(&[&[1, 2]]),
    }
}

/// Torus as the closed star of vertex 0 and the remaining triangles; they
/// meet in the hexagonal link of 0.
pub fn torus_split() -> Split {
    let k = torus();
    let (star, rest): (Vec<_>, Vec<_>) = k
        .maximal_simplices()
        .into_iter()
        .partition(|s| s.vertices()[0] == 0);
    Split {
        name: "torus",
        l: SimplicialComplex::from_generators(star),
        m: SimplicialComplex::from_generators(rest),
        k,
    }
}

/// All named complexes.
pub fn complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("empty", SimplicialComplex::empty()),
        ("point", point()),
        ("edge", edge()),
        ("interval", interval()),
        ("circle", circle()),
        ("triangle", triangle()),
        ("tetrahedron", tetrahedron()),
        ("sphere", sphere()),
        ("torus", torus()),
        ("projective_plane", projective_plane()),
    ]
}

/// All named splits.
pub fn splits() -> Vec<Split> {
    vec![interval_split(), circle_split(), sphere_split(), torus_split()]
}
