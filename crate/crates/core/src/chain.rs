//! Chain complexes with cosheaf coefficients, homology, chain maps and exact
//! sequences.
//!
//! Chain groups are indexed by degree `0..=top`; boundary maps outside that
//! range are zero maps of the forced shapes. The basis of `C_k(K; C)` is the
//! concatenation of the costalks of the `k`-simplices in lexicographic order.

use std::fmt;

use crate::complex::{incidence, Simplex, SimplicialComplex};
use crate::cosheaf::Cosheaf;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Vector};

/// A basis vector of a chain group: coordinate `coordinate` of the costalk
/// at `simplex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub simplex: Simplex,
    pub coordinate: usize,
}

/// A bounded chain complex of finite-dimensional vector spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    dims: Vec<usize>,
    /// `boundaries[k]` is `∂_k : C_k → C_{k-1}`; `boundaries[0]` is `0 x dims[0]`.
    boundaries: Vec<Matrix>,
    basis: Vec<Vec<BasisLabel>>,
}

impl ChainComplex {
    /// Builds a complex from chain group dimensions and the boundary maps
    /// `∂_1, …, ∂_top`, checking shapes and `∂∘∂ = 0`.
    pub fn new(field: Field, dims: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        let basis = dims
            .iter()
            .map(|&d| {
                (0..d)
                    .map(|i| BasisLabel {
                        simplex: Simplex::vertex(0),
                        coordinate: i,
                    })
                    .collect()
            })
            .collect();
        Self::with_basis(field, dims, boundaries, basis)
    }

    /// Like [`ChainComplex::new`] with explicit basis labels.
    pub fn with_basis(
        field: Field,
        dims: Vec<usize>,
        boundaries: Vec<Matrix>,
        basis: Vec<Vec<BasisLabel>>,
    ) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::ShapeMismatch {
                context: "number of boundary maps",
                expected: (dims.len().saturating_sub(1), 1),
                found: (boundaries.len(), 1),
            });
        }
        let mut all = Vec::with_capacity(dims.len());
        if let Some(&d0) = dims.first() {
            all.push(Matrix::zeros(field, 0, d0));
        }
        for (k, m) in boundaries.into_iter().enumerate() {
            let expected = (dims[k], dims[k + 1]);
            if m.shape() != expected {
                return Err(Error::ShapeMismatch {
                    context: "boundary map",
                    expected,
                    found: m.shape(),
                });
            }
            all.push(m);
        }
        for (k, labels) in basis.iter().enumerate() {
            if labels.len() != dims[k] {
                return Err(Error::ShapeMismatch {
                    context: "basis labels",
                    expected: (dims[k], 1),
                    found: (labels.len(), 1),
                });
            }
        }
        let cc = ChainComplex {
            field,
            dims,
            boundaries: all,
            basis,
        };
        if let Some(degree) = cc.square_zero_failure() {
            return Err(Error::NotAComplex { degree });
        }
        Ok(cc)
    }

    /// The complex with no nonzero chain groups.
    pub fn zero(field: Field) -> Self {
        ChainComplex {
            field,
            dims: Vec::new(),
            boundaries: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of degrees carried explicitly (`top + 1`; zero when empty).
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.dims.clone()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `∂_k : C_k → C_{k-1}` for any `k`, as a zero map outside the stored range.
    pub fn boundary(&self, k: usize) -> Matrix {
        match self.boundaries.get(k) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.field, self.dim(k.wrapping_sub(1)), self.dim(k)),
        }
    }

    pub fn basis(&self, k: usize) -> &[BasisLabel] {
        self.basis.get(k).map_or(&[], Vec::as_slice)
    }

    /// The lowest `k` with `∂_k ∘ ∂_{k+1} ≠ 0`, if any.
    pub fn square_zero_failure(&self) -> Option<usize> {
        (1..self.dims.len()).find(|&k| !(&self.boundary(k) * &self.boundary(k + 1)).is_zero())
    }

    /// `dim H_k` from ranks alone.
    pub fn betti_by_rank(&self, k: usize) -> usize {
        self.dim(k) - self.boundary(k).rank() - self.boundary(k + 1).rank()
    }

    /// `dim H_k` for `k = 0..len()`, from explicit quotient bases.
    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..self.len()).map(|k| self.homology(k).dimension()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn homology(&self, k: usize) -> HomologyGroup {
        HomologyGroup::from_maps(k, &self.boundary(k + 1), &self.boundary(k))
    }

    /// `self ⊕ other` with block-diagonal boundaries.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: other.field.characteristic(),
            });
        }
        let n = self.len().max(other.len());
        let dims: Vec<usize> = (0..n).map(|k| self.dim(k) + other.dim(k)).collect();
        let boundaries = (1..n)
            .map(|k| self.boundary(k).direct_sum(&other.boundary(k)))
            .collect();
        let basis = (0..n)
            .map(|k| {
                self.basis(k)
                    .iter()
                    .chain(other.basis(k))
                    .cloned()
                    .collect()
            })
            .collect();
        Self::with_basis(self.field, dims, boundaries, basis)
    }

    /// A copy carrying at least `n` degrees (extra degrees are zero).
    pub fn padded(&self, n: usize) -> Self {
        let mut out = self.clone();
        while out.dims.len() < n {
            let k = out.dims.len();
            out.boundaries.push(Matrix::zeros(
                self.field,
                if k == 0 { 0 } else { out.dims[k - 1] },
                0,
            ));
            out.dims.push(0);
            out.basis.push(Vec::new());
        }
        out
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainComplex")
            .field("field", &self.field)
            .field("dims", &self.dims)
            .field("boundaries", &self.boundaries)
            .finish()
    }
}

/// Offsets of each simplex's costalk inside `C_d(K; C)`.
pub(crate) fn block_offsets(k: &SimplicialComplex, c: &Cosheaf, d: usize) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(k.simplices(d).len() + 1);
    let mut acc = 0;
    for s in k.simplices(d) {
        offsets.push(acc);
        acc += c.stalk_dim(s);
    }
    offsets.push(acc);
    offsets
}

/// Assembles `C_•(K; C)`: the degree-`d` group is the direct sum of the
/// costalks of the `d`-simplices and the `(σ, τ)` block of `∂_d` is
/// `[σ:τ]·C_{σ▷τ}`.
pub fn assemble(k: &SimplicialComplex, c: &Cosheaf) -> Result<ChainComplex> {
    if c.base() != k {
        return Err(Error::BaseMismatch);
    }
    c.ensure_valid()?;
    let field = c.field();
    let n = k.dim().map_or(0, |d| d + 1);
    let offsets: Vec<Vec<usize>> = (0..n).map(|d| block_offsets(k, c, d)).collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().expect("nonempty")).collect();
    let basis = (0..n)
        .map(|d| {
            k.simplices(d)
                .iter()
                .flat_map(|s| {
                    (0..c.stalk_dim(s)).map(move |i| BasisLabel {
                        simplex: s.clone(),
                        coordinate: i,
                    })
                })
                .collect()
        })
        .collect();
    let mut boundaries = Vec::with_capacity(n.saturating_sub(1));
    for d in 1..n {
        let mut m = Matrix::zeros(field, dims[d - 1], dims[d]);
        for (j, sigma) in k.simplices(d).iter().enumerate() {
            for tau in sigma.facets() {
                let i = k.index_of(&tau).expect("face-closed");
                let block = c.facet_map(sigma, &tau).expect("facet map present");
                let sign = field.sign(incidence(sigma, &tau));
                m.set_block(offsets[d - 1][i], offsets[d][j], &block.scale(sign));
            }
        }
        boundaries.push(m);
    }
    ChainComplex::with_basis(field, dims, boundaries, basis)
}

/// `H_k = Ker ∂_k / Im ∂_{k+1}` with a chosen basis of representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    degree: usize,
    ambient: usize,
    representatives: Vec<Vector>,
    boundary_count: usize,
    /// `[image basis | representatives]`; its columns form a basis of `Ker ∂_k`.
    solver: Matrix,
}

impl HomologyGroup {
    /// Homology at the middle of `· --incoming--> C --outgoing--> ·`.
    ///
    /// Representatives are found by extending a basis of the image of
    /// `incoming` to a basis of the kernel of `outgoing`, taking pivot columns
    /// of `[image | kernel basis]` in order.
    pub fn from_maps(degree: usize, incoming: &Matrix, outgoing: &Matrix) -> Self {
        let field = outgoing.field();
        let ambient = outgoing.cols();
        assert_eq!(incoming.rows(), ambient, "incoming map lands in the wrong space");
        let image: Vec<Vector> = incoming
            .pivot_columns()
            .into_iter()
            .map(|j| incoming.column(j))
            .collect();
        let kernel = outgoing.kernel_basis();
        let boundary_count = image.len();
        let mut columns = image;
        columns.extend(kernel);
        let stacked = Matrix::from_columns(field, ambient, &columns);
        let representatives: Vec<Vector> = stacked
            .pivot_columns()
            .into_iter()
            .filter(|&j| j >= boundary_count)
            .map(|j| columns[j].clone())
            .collect();
        let mut solver_cols = columns[..boundary_count].to_vec();
        solver_cols.extend(representatives.iter().cloned());
        HomologyGroup {
            degree,
            ambient,
            solver: Matrix::from_columns(field, ambient, &solver_cols),
            representatives,
            boundary_count,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    /// Cycles whose classes form a basis of the homology group.
    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    /// Coordinates of the class of `cycle` in the representative basis, or
    /// `None` when `cycle` is not a cycle.
    pub fn coordinates(&self, cycle: &[u32]) -> Option<Vector> {
        assert_eq!(cycle.len(), self.ambient, "chain has the wrong length");
        let x = self.solver.solve(cycle)?;
        Some(x[self.boundary_count..].to_vec())
    }

    /// `true` when `chain` is a boundary.
    pub fn is_boundary(&self, chain: &[u32]) -> bool {
        self.coordinates(chain)
            .is_some_and(|c| c.iter().all(|&x| x == 0))
    }
}

/// A degreewise family of maps commuting with the boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    levels: Vec<Matrix>,
}

impl ChainMap {
    /// Checks shapes and `∂^T_k ∘ φ_k = φ_{k-1} ∘ ∂^S_k` in every degree.
    /// Missing trailing levels are taken to be zero.
    pub fn new(source: ChainComplex, target: ChainComplex, levels: Vec<Matrix>) -> Result<Self> {
        let n = source.len().max(target.len());
        if levels.len() > n {
            return Err(Error::NotAChainMap(format!(
                "{} levels for a complex with {n} degrees",
                levels.len()
            )));
        }
        let mut full = levels;
        while full.len() < n {
            let k = full.len();
            full.push(Matrix::zeros(source.field, target.dim(k), source.dim(k)));
        }
        for (k, m) in full.iter().enumerate() {
            let expected = (target.dim(k), source.dim(k));
            if m.shape() != expected {
                return Err(Error::NotAChainMap(format!(
                    "level {k} has shape {:?}, expected {expected:?}",
                    m.shape()
                )));
            }
        }
        for k in 1..n {
            let left = &target.boundary(k) * &full[k];
            let right = &full[k - 1] * &source.boundary(k);
            if left != right {
                return Err(Error::NotAChainMap(format!(
                    "square at degree {k} does not commute"
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            levels: full,
        })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            levels: (0..c.len()).map(|k| Matrix::identity(c.field, c.dim(k))).collect(),
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        let n = source.len().max(target.len());
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            levels: (0..n)
                .map(|k| Matrix::zeros(source.field, target.dim(k), source.dim(k)))
                .collect(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn level(&self, k: usize) -> Matrix {
        match self.levels.get(k) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.source.field, self.target.dim(k), self.source.dim(k)),
        }
    }

    /// Number of degrees covered.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The matrix of `H_k(source) → H_k(target)`, `[z] ↦ [φ_k z]`, in the
    /// representative bases of both sides.
    pub fn induced_map(&self, k: usize) -> Result<Matrix> {
        let from = self.source.homology(k);
        let to = self.target.homology(k);
        self.induced_between(k, &from, &to)
    }

    pub(crate) fn induced_between(
        &self,
        k: usize,
        from: &HomologyGroup,
        to: &HomologyGroup,
    ) -> Result<Matrix> {
        let level = self.level(k);
        let columns = from
            .representatives()
            .iter()
            .map(|z| {
                to.coordinates(&level.mul_vec(z)).ok_or_else(|| {
                    Error::NotAChainMap(format!("image of a cycle in degree {k} is not a cycle"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(
            self.source.field,
            to.dimension(),
            &columns,
        ))
    }

    /// `true` iff every induced map is an isomorphism.
    pub fn is_quasi_isomorphism(&self) -> bool {
        (0..self.len()).all(|k| {
            self.induced_map(k)
                .map(|m| m.is_invertible())
                .unwrap_or(false)
        })
    }
}

/// Per-degree exactness of `0 → A --p--> B --q--> C → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeExactness {
    pub degree: usize,
    pub injective: bool,
    pub surjective: bool,
    /// `Ker q = Im p`.
    pub middle_exact: bool,
}

impl DegreeExactness {
    pub fn holds(&self) -> bool {
        self.injective && self.surjective && self.middle_exact
    }
}

/// A short exact sequence of chain complexes `0 → left → middle → right → 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortExactSequence {
    p: ChainMap,
    q: ChainMap,
}

impl ShortExactSequence {
    /// Checks that the maps compose and the sequence is exact in every degree.
    pub fn new(p: ChainMap, q: ChainMap) -> Result<Self> {
        if p.target != q.source {
            return Err(Error::NotAChainMap(
                "p does not land in the source of q".into(),
            ));
        }
        let ses = ShortExactSequence { p, q };
        if let Some(bad) = ses.exactness().into_iter().find(|e| !e.holds()) {
            let reason = if !bad.injective {
                "p is not injective"
            } else if !bad.surjective {
                "q is not surjective"
            } else {
                "Ker q != Im p"
            };
            return Err(Error::NotExact {
                degree: bad.degree,
                reason: reason.into(),
            });
        }
        Ok(ses)
    }

    pub fn left(&self) -> &ChainComplex {
        &self.p.source
    }

    pub fn middle(&self) -> &ChainComplex {
        &self.p.target
    }

    pub fn right(&self) -> &ChainComplex {
        &self.q.target
    }

    pub fn p(&self) -> &ChainMap {
        &self.p
    }

    pub fn q(&self) -> &ChainMap {
        &self.q
    }

    /// Number of degrees spanned by the three complexes.
    pub fn len(&self) -> usize {
        self.left().len().max(self.middle().len()).max(self.right().len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank checks in every degree: `p` injective, `q` surjective,
    /// `q∘p = 0` and `rank p + rank q = dim middle`.
    pub fn exactness(&self) -> Vec<DegreeExactness> {
        (0..self.len())
            .map(|k| {
                let p = self.p.level(k);
                let q = self.q.level(k);
                let rp = p.rank();
                let rq = q.rank();
                DegreeExactness {
                    degree: k,
                    injective: rp == self.left().dim(k),
                    surjective: rq == self.right().dim(k),
                    middle_exact: (&q * &p).is_zero() && rp + rq == self.middle().dim(k),
                }
            })
            .collect()
    }

    /// The snake-lemma map `δ_k : H_k(right) → H_{k-1}(left)`.
    pub fn connecting_homomorphism(&self, k: usize) -> Result<Matrix> {
        self.connecting_with_order(k, None)
    }

    /// [`ShortExactSequence::connecting_homomorphism`] with the lift through
    /// `q_k` chosen under a custom pivot order on the columns of `q_k`.
    pub fn connecting_homomorphism_with_order(&self, k: usize, order: &[usize]) -> Result<Matrix> {
        self.connecting_with_order(k, Some(order))
    }

    fn connecting_with_order(&self, k: usize, order: Option<&[usize]>) -> Result<Matrix> {
        let field = self.p.source.field;
        let from = self.right().homology(k);
        if k == 0 {
            return Ok(Matrix::zeros(field, 0, from.dimension()));
        }
        let to = self.left().homology(k - 1);
        self.connecting_between(k, &from, &to, order)
    }

    fn connecting_between(
        &self,
        k: usize,
        from: &HomologyGroup,
        to: &HomologyGroup,
        order: Option<&[usize]>,
    ) -> Result<Matrix> {
        let q = self.q.level(k);
        let p = self.p.level(k - 1);
        let d = self.middle().boundary(k);
        let columns = from
            .representatives()
            .iter()
            .map(|z| {
                let lift = match order {
                    Some(o) => q.solve_with_order(z, o),
                    None => q.solve(z),
                }
                .ok_or(Error::NotExact {
                    degree: k,
                    reason: "cycle does not lift through q".into(),
                })?;
                let pushed = d.mul_vec(&lift);
                let pulled = p.solve(&pushed).ok_or(Error::NotExact {
                    degree: k - 1,
                    reason: "boundary of the lift is not in Im p".into(),
                })?;
                to.coordinates(&pulled).ok_or(Error::NotExact {
                    degree: k - 1,
                    reason: "pulled-back chain is not a cycle".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(q.field(), to.dimension(), &columns))
    }

    /// The long exact homology sequence
    /// `… → H_k(left) → H_k(middle) → H_k(right) → H_{k-1}(left) → …`
    /// from the top degree down to `H_0(right) → 0`.
    pub fn long_exact_sequence(&self) -> Result<LesReport> {
        let n = self.len();
        let groups: Vec<[HomologyGroup; 3]> = (0..n)
            .map(|k| {
                [
                    self.left().homology(k),
                    self.middle().homology(k),
                    self.right().homology(k),
                ]
            })
            .collect();
        let mut nodes = Vec::new();
        let mut maps = Vec::new();
        for k in (0..n).rev() {
            let [a, b, c] = &groups[k];
            for (position, g) in [(Position::Left, a), (Position::Middle, b), (Position::Right, c)] {
                nodes.push(LesNode {
                    position,
                    degree: k,
                    dim: g.dimension(),
                });
            }
            maps.push(LesMap::new(MapKind::Left, k, self.p.induced_between(k, a, b)?));
            maps.push(LesMap::new(MapKind::Right, k, self.q.induced_between(k, b, c)?));
            if k > 0 {
                let delta = self.connecting_between(k, c, &groups[k - 1][0], None)?;
                maps.push(LesMap::new(MapKind::Connecting, k, delta));
            }
        }
        Ok(LesReport::new(nodes, maps))
    }
}

/// Which term of the short exact sequence a homology group comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    Left,
    Middle,
    Right,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::Left => "left",
            Position::Middle => "middle",
            Position::Right => "right",
        })
    }
}

/// The kind of map between consecutive long exact sequence nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// Induced by `p`.
    Left,
    /// Induced by `q`.
    Right,
    /// Connecting homomorphism.
    Connecting,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Left => "p*",
            MapKind::Right => "q*",
            MapKind::Connecting => "delta",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesNode {
    pub position: Position,
    pub degree: usize,
    pub dim: usize,
}

impl fmt::Display for LesNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{}({})", self.degree, self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesMap {
    pub kind: MapKind,
    /// Degree of the source node.
    pub degree: usize,
    pub matrix: Matrix,
    pub rank: usize,
}

impl LesMap {
    fn new(kind: MapKind, degree: usize, matrix: Matrix) -> Self {
        LesMap {
            kind,
            degree,
            rank: matrix.rank(),
            matrix,
        }
    }
}

/// A long exact sequence with `maps[i] : nodes[i] → nodes[i+1]` and an
/// exactness verdict at every node. Both ends are bounded by zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesReport {
    pub nodes: Vec<LesNode>,
    pub maps: Vec<LesMap>,
    pub exact: Vec<bool>,
}

impl LesReport {
    fn new(nodes: Vec<LesNode>, maps: Vec<LesMap>) -> Self {
        let exact = (0..nodes.len())
            .map(|i| {
                let incoming = if i == 0 { 0 } else { maps[i - 1].rank };
                let outgoing = maps.get(i).map_or(0, |m| m.rank);
                incoming + outgoing == nodes[i].dim
            })
            .collect();
        LesReport { nodes, maps, exact }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }

    /// The connecting map out of `H_k(right)`, if `k > 0` is in range.
    pub fn connecting(&self, k: usize) -> Option<&LesMap> {
        self.maps
            .iter()
            .find(|m| m.kind == MapKind::Connecting && m.degree == k)
    }

    /// The homology dimension at a node.
    pub fn dim_at(&self, position: Position, degree: usize) -> Option<usize> {
        self.nodes
            .iter()
            .find(|n| n.position == position && n.degree == degree)
            .map(|n| n.dim)
    }
}
