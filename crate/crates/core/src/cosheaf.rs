//! Cosheaves of finite-dimensional vector spaces on a simplicial complex.
//!
//! A cosheaf assigns a costalk `C_σ` to every simplex and an extension map
//! `C_σ → C_τ` to every face relation `τ ≤ σ`. Only the codimension-one maps
//! are stored; deeper extension maps are composites, which is well defined
//! once every codimension-two square commutes.

use std::collections::BTreeMap;
use std::fmt;

use crate::chain::{self, HomologyGroup};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// A cosheaf on a finite simplicial complex.
#[derive(Clone, PartialEq, Eq)]
pub struct Cosheaf {
    base: SimplicialComplex,
    field: Field,
    stalks: BTreeMap<Simplex, usize>,
    maps: BTreeMap<(Simplex, Simplex), Matrix>,
}

/// One defect found by [`Cosheaf::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosheafViolation {
    /// The stored map `coface -> facet` does not have shape
    /// `stalk(facet) x stalk(coface)`.
    Shape {
        coface: Simplex,
        facet: Simplex,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// The two composites `top -> via[i] -> bottom` disagree.
    Square {
        top: Simplex,
        bottom: Simplex,
        via: [Simplex; 2],
    },
}

impl fmt::Display for CosheafViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosheafViolation::Shape {
                coface,
                facet,
                expected,
                found,
            } => write!(
                f,
                "map {coface} -> {facet} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            CosheafViolation::Square { top, bottom, via } => write!(
                f,
                "square {top} -> {bottom} does not commute (via {} and {})",
                via[0], via[1]
            ),
        }
    }
}

/// The outcome of validating a cosheaf; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CosheafReport {
    pub violations: Vec<CosheafViolation>,
}

impl CosheafReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Cosheaf {
    /// Assembles a cosheaf from costalk dimensions and facet maps keyed by
    /// `(coface, facet)`.
    ///
    /// Missing costalks default to zero. A missing map is filled with the
    /// forced zero matrix when either side is the zero space, and is an error
    /// otherwise. Shapes and commutativity are checked by
    /// [`Cosheaf::validate`], not here.
    pub fn new(
        base: SimplicialComplex,
        field: Field,
        stalks: BTreeMap<Simplex, usize>,
        mut maps: BTreeMap<(Simplex, Simplex), Matrix>,
    ) -> Result<Self> {
        if let Some(s) = stalks.keys().find(|s| !base.contains(s)) {
            return Err(Error::NotInComplex(s.clone()));
        }
        for ((coface, facet), m) in &maps {
            if !base.contains(coface) {
                return Err(Error::NotInComplex(coface.clone()));
            }
            if !facet.is_facet_of(coface) {
                return Err(Error::NotAFace {
                    simplex: coface.clone(),
                    face: facet.clone(),
                });
            }
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.characteristic(),
                    right: m.field().characteristic(),
                });
            }
        }
        let stalks: BTreeMap<Simplex, usize> = base
            .iter()
            .map(|s| (s.clone(), stalks.get(s).copied().unwrap_or(0)))
            .collect();
        for (coface, facet) in base.facet_pairs() {
            let key = (coface.clone(), facet);
            if maps.contains_key(&key) {
                continue;
            }
            let (rows, cols) = (stalks[&key.1], stalks[coface]);
            if rows > 0 && cols > 0 {
                return Err(Error::MissingMap {
                    coface: key.0,
                    facet: key.1,
                });
            }
            maps.insert(key, Matrix::zeros(field, rows, cols));
        }
        Ok(Cosheaf {
            base,
            field,
            stalks,
            maps,
        })
    }

    /// The zero cosheaf.
    pub fn zero(base: &SimplicialComplex, field: Field) -> Self {
        Self::constant(base, 0, field)
    }

    /// Every costalk `F^d`, every extension map the identity.
    pub fn constant(base: &SimplicialComplex, d: usize, field: Field) -> Self {
        let stalks = base.iter().map(|s| (s.clone(), d)).collect();
        let maps = base
            .facet_pairs()
            .map(|(c, f)| ((c.clone(), f), Matrix::identity(field, d)))
            .collect();
        Cosheaf {
            base: base.clone(),
            field,
            stalks,
            maps,
        }
    }

    /// `F` at `tau` and zero everywhere else.
    pub fn skyscraper(base: &SimplicialComplex, tau: &Simplex, field: Field) -> Result<Self> {
        if !base.contains(tau) {
            return Err(Error::NotInComplex(tau.clone()));
        }
        Self::new(
            base.clone(),
            field,
            BTreeMap::from([(tau.clone(), 1)]),
            BTreeMap::new(),
        )
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of the costalk at `s`; zero off the base.
    pub fn stalk_dim(&self, s: &Simplex) -> usize {
        self.stalks.get(s).copied().unwrap_or(0)
    }

    /// The stored extension map `coface -> facet`.
    pub fn facet_map(&self, coface: &Simplex, facet: &Simplex) -> Option<&Matrix> {
        self.maps.get(&(coface.clone(), facet.clone()))
    }

    /// All stored facet maps keyed by `(coface, facet)`.
    pub fn facet_maps(&self) -> impl Iterator<Item = (&(Simplex, Simplex), &Matrix)> {
        self.maps.iter()
    }

    /// Costalk dimensions in base order.
    pub fn stalk_dims(&self) -> impl Iterator<Item = (&Simplex, usize)> {
        self.base.iter().map(|s| (s, self.stalks[s]))
    }

    /// Reports every mis-shaped facet map and every non-commuting
    /// codimension-two square.
    pub fn validate(&self) -> CosheafReport {
        let mut violations = Vec::new();
        for ((coface, facet), m) in &self.maps {
            let expected = (self.stalk_dim(facet), self.stalk_dim(coface));
            if m.shape() != expected {
                violations.push(CosheafViolation::Shape {
                    coface: coface.clone(),
                    facet: facet.clone(),
                    expected,
                    found: m.shape(),
                });
            }
        }
        if !violations.is_empty() {
            return CosheafReport { violations };
        }
        for top in self.base.iter().filter(|s| s.dim() >= 2) {
            let n = top.vertices().len();
            for i in 0..n {
                for j in i + 1..n {
                    let via_i = top.facet(i).expect("in range");
                    let via_j = top.facet(j).expect("in range");
                    // deleting i shifts j down by one
                    let bottom = via_i.facet(j - 1).expect("in range");
                    let a = &self.maps[&(via_i.clone(), bottom.clone())]
                        * &self.maps[&(top.clone(), via_i.clone())];
                    let b = &self.maps[&(via_j.clone(), bottom.clone())]
                        * &self.maps[&(top.clone(), via_j.clone())];
                    if a != b {
                        violations.push(CosheafViolation::Square {
                            top: top.clone(),
                            bottom,
                            via: [via_i, via_j],
                        });
                    }
                }
            }
        }
        CosheafReport { violations }
    }

    /// Fails with the first violation when the cosheaf is not valid.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidCosheaf(format!(
                "{v} ({} violation(s))",
                report.violations.len()
            ))),
        }
    }

    /// The extension map `C_σ → C_τ` for `τ ≤ σ`, composed along the facet
    /// chain that removes the extra vertices left to right.
    pub fn extension_map(&self, sigma: &Simplex, tau: &Simplex) -> Result<Matrix> {
        if !self.base.contains(sigma) {
            return Err(Error::NotInComplex(sigma.clone()));
        }
        if !tau.is_face_of(sigma) {
            return Err(Error::NotAFace {
                simplex: sigma.clone(),
                face: tau.clone(),
            });
        }
        let mut current = sigma.clone();
        let mut acc = Matrix::identity(self.field, self.stalk_dim(sigma));
        while current != *tau {
            let pos = current
                .vertices()
                .iter()
                .position(|v| !tau.vertices().contains(v))
                .expect("proper face");
            let next = current.facet(pos)?;
            acc = &self.maps[&(current, next.clone())] * &acc;
            current = next;
        }
        Ok(acc)
    }

    /// Pointwise direct sum with block-diagonal extension maps.
    pub fn direct_sum(&self, other: &Cosheaf) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: other.field.characteristic(),
            });
        }
        Ok(Cosheaf {
            base: self.base.clone(),
            field: self.field,
            stalks: self
                .stalks
                .iter()
                .map(|(s, &d)| (s.clone(), d + other.stalks[s]))
                .collect(),
            maps: self
                .maps
                .iter()
                .map(|(k, m)| (k.clone(), m.direct_sum(&other.maps[k])))
                .collect(),
        })
    }

    /// Extension by zero to a complex containing the base.
    pub fn extend_by_zero(&self, ambient: &SimplicialComplex) -> Result<Self> {
        self.base.check_subcomplex_of(ambient)?;
        let stalks = ambient
            .iter()
            .map(|s| (s.clone(), self.stalk_dim(s)))
            .collect();
        let maps = ambient
            .facet_pairs()
            .map(|(c, f)| {
                let m = match self.facet_map(c, &f) {
                    Some(m) => m.clone(),
                    None => Matrix::zeros(self.field, self.stalk_dim(&f), self.stalk_dim(c)),
                };
                ((c.clone(), f), m)
            })
            .collect();
        Ok(Cosheaf {
            base: ambient.clone(),
            field: self.field,
            stalks,
            maps,
        })
    }

    /// Restriction `C|_L` to a subcomplex of the base.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<Self> {
        sub.check_subcomplex_of(&self.base)?;
        Ok(Cosheaf {
            base: sub.clone(),
            field: self.field,
            stalks: sub.iter().map(|s| (s.clone(), self.stalks[s])).collect(),
            maps: sub
                .facet_pairs()
                .map(|(c, f)| {
                    let key = (c.clone(), f);
                    let m = self.maps[&key].clone();
                    (key, m)
                })
                .collect(),
        })
    }

    /// The isomorphic cosheaf obtained by changing the basis of each costalk:
    /// `basis[σ]` has the new basis vectors of `C_σ` as its columns.
    ///
    /// Costalks without an entry keep their basis.
    pub fn change_basis(&self, basis: &BTreeMap<Simplex, Matrix>) -> Result<Self> {
        let mut inverses = BTreeMap::new();
        for (s, g) in basis {
            if g.shape() != (self.stalk_dim(s), self.stalk_dim(s)) {
                return Err(Error::ShapeMismatch {
                    context: "change of basis",
                    expected: (self.stalk_dim(s), self.stalk_dim(s)),
                    found: g.shape(),
                });
            }
            inverses.insert(s.clone(), g.invert()?);
        }
        let maps = self
            .maps
            .iter()
            .map(|((c, f), m)| {
                let mut out = m.clone();
                if let Some(g) = basis.get(c) {
                    out = &out * g;
                }
                if let Some(h) = inverses.get(f) {
                    out = h * &out;
                }
                ((c.clone(), f.clone()), out)
            })
            .collect();
        Ok(Cosheaf {
            maps,
            ..self.clone()
        })
    }

    /// The degree-`k` fibre cohomology cosheaf of a simplicial map `f: K → L`.
    ///
    /// The costalk at `τ ∈ L` is `H^k(τ/f)` with `τ/f = {σ ∈ K | f(σ) ≤ τ}`,
    /// and the extension map for `τ' ◁ τ` is induced by restricting cochains
    /// along `τ'/f ⊆ τ/f`. Bases are the deterministic cohomology
    /// representatives of [`HomologyGroup`].
    pub fn fibre_cohomology(map: &SimplicialMap, k: usize, field: Field) -> Result<Self> {
        let target = map.target();
        let mut groups = BTreeMap::new();
        for tau in target.iter() {
            let fibre = map.fibre(tau);
            groups.insert(tau.clone(), Cocycles::compute(&fibre, k, field));
        }
        let stalks = groups
            .iter()
            .map(|(s, g)| (s.clone(), g.group.dimension()))
            .collect();
        let mut maps = BTreeMap::new();
        for (tau, facet) in target.facet_pairs() {
            let big = &groups[tau];
            let small = &groups[&facet];
            let columns = big
                .group
                .representatives()
                .iter()
                .map(|cocycle| {
                    let restricted: Vec<u32> = small
                        .cells
                        .iter()
                        .map(|s| cocycle[big.position(s)])
                        .collect();
                    small
                        .group
                        .coordinates(&restricted)
                        .expect("restriction of a cocycle is a cocycle")
                })
                .collect::<Vec<_>>();
            let m = Matrix::from_columns(field, small.group.dimension(), &columns);
            maps.insert((tau.clone(), facet), m);
        }
        Cosheaf::new(target.clone(), field, stalks, maps)
    }
}

impl fmt::Debug for Cosheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cosheaf")
            .field("field", &self.field)
            .field("stalks", &self.stalks)
            .field("maps", &self.maps)
            .finish()
    }
}

/// Degree-`k` simplicial cohomology of a complex, with the `k`-simplices
/// that index cochain coordinates.
struct Cocycles {
    cells: Vec<Simplex>,
    group: HomologyGroup,
}

impl Cocycles {
    fn compute(complex: &SimplicialComplex, k: usize, field: Field) -> Self {
        let cc = chain::assemble(complex, &Cosheaf::constant(complex, 1, field))
            .expect("constant cosheaf is valid");
        // coboundary δ^k = (∂_{k+1})^T
        let incoming = cc.boundary(k).transpose();
        let outgoing = cc.boundary(k + 1).transpose();
        Cocycles {
            cells: complex.simplices(k).to_vec(),
            group: HomologyGroup::from_maps(k, &incoming, &outgoing),
        }
    }

    fn position(&self, s: &Simplex) -> usize {
        self.cells.binary_search(s).expect("cell of the larger fibre")
    }
}

/// A natural transformation between cosheaves on the same base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosheafMorphism {
    source: Cosheaf,
    target: Cosheaf,
    components: BTreeMap<Simplex, Matrix>,
}

impl CosheafMorphism {
    /// Checks shapes and every naturality square
    /// `target(σ▷τ)·φ_σ = φ_τ·source(σ▷τ)`.
    pub fn new(
        source: Cosheaf,
        target: Cosheaf,
        components: BTreeMap<Simplex, Matrix>,
    ) -> Result<Self> {
        if source.base != target.base {
            return Err(Error::BaseMismatch);
        }
        let mut full = BTreeMap::new();
        for s in source.base.iter() {
            let expected = (target.stalk_dim(s), source.stalk_dim(s));
            let m = components
                .get(s)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(source.field, expected.0, expected.1));
            if m.shape() != expected {
                return Err(Error::ShapeMismatch {
                    context: "cosheaf morphism component",
                    expected,
                    found: m.shape(),
                });
            }
            full.insert(s.clone(), m);
        }
        let morphism = CosheafMorphism {
            source,
            target,
            components: full,
        };
        if let Some((coface, facet)) = morphism.naturality_failures().into_iter().next() {
            return Err(Error::NotNatural { coface, facet });
        }
        Ok(morphism)
    }

    pub fn identity(c: &Cosheaf) -> Self {
        let components = c
            .base
            .iter()
            .map(|s| (s.clone(), Matrix::identity(c.field, c.stalk_dim(s))))
            .collect();
        CosheafMorphism {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Cosheaf {
        &self.source
    }

    pub fn target(&self) -> &Cosheaf {
        &self.target
    }

    pub fn component(&self, s: &Simplex) -> Option<&Matrix> {
        self.components.get(s)
    }

    /// Facet pairs whose naturality square fails.
    pub fn naturality_failures(&self) -> Vec<(Simplex, Simplex)> {
        self.source
            .base
            .facet_pairs()
            .filter(|(c, f)| {
                let left = &self.target.maps[&((*c).clone(), f.clone())] * &self.components[*c];
                let right = &self.components[f] * &self.source.maps[&((*c).clone(), f.clone())];
                left != right
            })
            .map(|(c, f)| (c.clone(), f))
            .collect()
    }

    /// The induced chain map `C_•(K; source) → C_•(K; target)`.
    pub fn chain_map(&self) -> Result<chain::ChainMap> {
        let src = chain::assemble(&self.source.base, &self.source)?;
        let tgt = chain::assemble(&self.target.base, &self.target)?;
        let top = self.source.base.dim().map_or(0, |d| d + 1);
        let levels = (0..top)
            .map(|d| {
                self.source
                    .base
                    .simplices(d)
                    .iter()
                    .fold(Matrix::zeros(self.source.field, 0, 0), |acc, s| {
                        acc.direct_sum(&self.components[s])
                    })
            })
            .collect();
        chain::ChainMap::new(src, tgt, levels)
    }
}

/// A simplicial map given by its action on vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: BTreeMap<u32, u32>,
}

impl SimplicialMap {
    /// Fails unless every source vertex is mapped and every source simplex
    /// lands on a simplex of the target.
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<u32, u32>,
    ) -> Result<Self> {
        for v in source.simplices(0) {
            if !vertex_map.contains_key(&v.vertices()[0]) {
                return Err(Error::NotSimplicial(format!("vertex {v} is not mapped")));
            }
        }
        let map = SimplicialMap {
            source,
            target,
            vertex_map,
        };
        for s in map.source.iter() {
            let image = map.image(s);
            if !map.target.contains(&image) {
                return Err(Error::NotSimplicial(format!(
                    "{s} maps to {image}, which is not a simplex of the target"
                )));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    /// The image simplex `f(σ)`.
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::from_unsorted(s.vertices().iter().map(|v| self.vertex_map[v]))
            .expect("nonempty image")
    }

    /// The subcomplex `τ/f = {σ | f(σ) ≤ τ}`.
    pub fn fibre(&self, tau: &Simplex) -> SimplicialComplex {
        self.source.filter(|s| self.image(s).is_face_of(tau))
    }
}
