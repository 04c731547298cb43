//! Discrete Morse reduction of cosheaf chain complexes.
//!
//! A partial matching pairs simplices `σ ◁ τ`. When the matching is acyclic
//! and every matched extension map `C_{τ▷σ}` is invertible, the chain complex
//! collapses onto the costalks of the critical (unmatched) simplices. The
//! Morse boundary block `[α:ω]_Σ` between critical simplices is the direct
//! term `[α:ω]·C_{α▷ω}` plus one correction per Σ-path from a facet of `α`
//! to a coface of `ω`.
//!
//! Two routes compute these blocks. [`morse_boundary_block`] enumerates the
//! paths and sums their C-weights term by term. [`MorseComplex::assemble`]
//! propagates partial weights along the level graph in topological order so
//! each matched pair is visited once per critical source.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::chain::{BasisLabel, ChainComplex};
use crate::complex::{incidence, Simplex, SimplicialComplex};
use crate::cosheaf::Cosheaf;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A set of facet pairs `(σ ◁ τ)`, stored as `(σ, τ)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PartialMatching {
    pairs: Vec<(Simplex, Simplex)>,
    up: BTreeMap<Simplex, Simplex>,
    down: BTreeMap<Simplex, Simplex>,
}

/// One defect found by [`PartialMatching::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingViolation {
    NotInComplex(Simplex),
    NotAFacet { facet: Simplex, coface: Simplex },
    Reused(Simplex),
}

impl fmt::Display for MatchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingViolation::NotInComplex(s) => write!(f, "{s} is not in the complex"),
            MatchingViolation::NotAFacet { facet, coface } => {
                write!(f, "{facet} is not a facet of {coface}")
            }
            MatchingViolation::Reused(s) => write!(f, "{s} appears in more than one pair"),
        }
    }
}

impl PartialMatching {
    /// Collects pairs `(facet, coface)`. Duplicated pairs collapse; other
    /// defects are kept and reported by [`PartialMatching::validate`].
    pub fn new<I: IntoIterator<Item = (Simplex, Simplex)>>(pairs: I) -> Self {
        let set: BTreeSet<(Simplex, Simplex)> = pairs.into_iter().collect();
        let mut up = BTreeMap::new();
        let mut down = BTreeMap::new();
        for (s, t) in &set {
            up.entry(s.clone()).or_insert_with(|| t.clone());
            down.entry(t.clone()).or_insert_with(|| s.clone());
        }
        PartialMatching {
            pairs: set.into_iter().collect(),
            up,
            down,
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Pairs `(σ, τ)` with `σ ◁ τ`, sorted.
    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The coface `σ` is matched with, when `σ` is the lower half of a pair.
    pub fn partner_up(&self, s: &Simplex) -> Option<&Simplex> {
        self.up.get(s)
    }

    /// The facet `τ` is matched with, when `τ` is the upper half of a pair.
    pub fn partner_down(&self, t: &Simplex) -> Option<&Simplex> {
        self.down.get(t)
    }

    pub fn is_critical(&self, s: &Simplex) -> bool {
        !self.up.contains_key(s) && !self.down.contains_key(s)
    }

    /// Critical simplices of `k`, by dimension, in lexicographic order.
    pub fn critical_cells(&self, k: &SimplicialComplex) -> Vec<Vec<Simplex>> {
        (0..k.dim().map_or(0, |d| d + 1))
            .map(|d| {
                k.simplices(d)
                    .iter()
                    .filter(|s| self.is_critical(s))
                    .cloned()
                    .collect()
            })
            .collect()
    }

    pub fn critical_count(&self, k: &SimplicialComplex) -> usize {
        k.iter().filter(|s| self.is_critical(s)).count()
    }

    /// Reports pairs leaving `k`, pairs that are not facet relations, and
    /// simplices used by more than one pair.
    pub fn validate(&self, k: &SimplicialComplex) -> Vec<MatchingViolation> {
        let mut out = Vec::new();
        let mut seen: BTreeMap<&Simplex, usize> = BTreeMap::new();
        for (s, t) in &self.pairs {
            for x in [s, t] {
                if !k.contains(x) && !out.contains(&MatchingViolation::NotInComplex(x.clone())) {
                    out.push(MatchingViolation::NotInComplex(x.clone()));
                }
                *seen.entry(x).or_default() += 1;
            }
            if !s.is_facet_of(t) {
                out.push(MatchingViolation::NotAFacet {
                    facet: s.clone(),
                    coface: t.clone(),
                });
            }
        }
        out.extend(
            seen.into_iter()
                .filter(|&(_, n)| n > 1)
                .map(|(x, _)| MatchingViolation::Reused(x.clone())),
        );
        out
    }

    fn ensure_valid(&self, k: &SimplicialComplex) -> Result<()> {
        match self.validate(k).first() {
            Some(v) => Err(Error::InvalidMatching(v.to_string())),
            None => Ok(()),
        }
    }

    /// Edges of the level graph out of the pair `(σ, τ)`: every pair
    /// `(σ', τ')` with `σ' ◁ τ` and `σ' ≠ σ`.
    fn successors<'a>(&'a self, s: &'a Simplex, t: &'a Simplex) -> impl Iterator<Item = (Simplex, &'a Simplex)> + 'a {
        t.facets()
            .filter(move |x| x != s)
            .filter_map(move |x| self.up.get(&x).map(|y| (x, y)))
    }

    /// Pairs in an order where every level-graph edge points forward, or
    /// `None` if some level graph has a cycle.
    fn topological_order(&self) -> Option<Vec<(Simplex, Simplex)>> {
        let index: HashMap<&Simplex, usize> =
            self.pairs.iter().enumerate().map(|(i, (s, _))| (s, i)).collect();
        let mut indegree = vec![0usize; self.pairs.len()];
        let mut edges = vec![Vec::new(); self.pairs.len()];
        for (i, (s, t)) in self.pairs.iter().enumerate() {
            for (x, _) in self.successors(s, t) {
                let j = index[&x];
                edges[i].push(j);
                indegree[j] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..self.pairs.len()).filter(|&i| indegree[i] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(self.pairs.len());
        while let Some(i) = ready.pop() {
            order.push(self.pairs[i].clone());
            for &j in &edges[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(j);
                }
            }
        }
        (order.len() == self.pairs.len()).then_some(order)
    }

    /// `true` iff every Σ-path is gradient, i.e. every level graph is
    /// acyclic. Assumes a valid matching on `k`.
    pub fn is_acyclic(&self, _k: &SimplicialComplex) -> bool {
        self.topological_order().is_some()
    }

    /// `true` iff every matched extension map is an isomorphism. Maps between
    /// zero spaces count as invertible.
    pub fn is_cosheaf_compatible(&self, c: &Cosheaf) -> bool {
        self.first_incompatible(c).is_none()
    }

    fn first_incompatible(&self, c: &Cosheaf) -> Option<&(Simplex, Simplex)> {
        self.pairs.iter().find(|(s, t)| {
            !c.facet_map(t, s).is_some_and(Matrix::is_invertible)
        })
    }

    /// `true` iff no pair has exactly one of its simplices in `sub`.
    pub fn is_subcomplex_compatible(&self, sub: &SimplicialComplex) -> bool {
        self.first_straddling(sub).is_none()
    }

    fn first_straddling(&self, sub: &SimplicialComplex) -> Option<&(Simplex, Simplex)> {
        self.pairs
            .iter()
            .find(|(s, t)| sub.contains(s) != sub.contains(t))
    }

    /// `Σ_M`: the pairs lying in `sub`. Fails if some pair straddles `sub`.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<Self> {
        if let Some((s, t)) = self.first_straddling(sub) {
            return Err(Error::StraddlingPair {
                facet: s.clone(),
                coface: t.clone(),
            });
        }
        Ok(Self::new(
            self.pairs
                .iter()
                .filter(|(s, _)| sub.contains(s))
                .cloned(),
        ))
    }

    /// Checks validity, acyclicity and compatibility with `c`.
    pub fn check_morse(&self, k: &SimplicialComplex, c: &Cosheaf) -> Result<()> {
        self.ensure_valid(k)?;
        if !self.is_acyclic(k) {
            return Err(Error::CyclicMatching);
        }
        if let Some((s, t)) = self.first_incompatible(c) {
            return Err(Error::IncompatibleMatching {
                facet: s.clone(),
                coface: t.clone(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for PartialMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.pairs.iter().map(|(s, t)| format!("{s}<{t}")))
            .finish()
    }
}

/// Greedy coreduction matching, compatible with `c`.
///
/// Repeatedly pairs the smallest unprocessed simplex (by dimension, then
/// lexicographically) that has exactly one unprocessed facet, provided the
/// extension map between them is invertible; when no such simplex exists
/// the smallest unprocessed simplex becomes critical.
pub fn generate_matching(k: &SimplicialComplex, c: &Cosheaf) -> PartialMatching {
    generate_compatible_matching(k, c, &[])
}

/// [`generate_matching`] restricted to pairs that do not straddle any of the
/// given subcomplexes.
pub fn generate_compatible_matching(
    k: &SimplicialComplex,
    c: &Cosheaf,
    subcomplexes: &[&SimplicialComplex],
) -> PartialMatching {
    let key = |s: &Simplex| (s.dim(), s.clone());
    let mut unprocessed: BTreeSet<(usize, Simplex)> = k.iter().map(key).collect();
    let mut open_facets: HashMap<Simplex, usize> = k
        .iter()
        .map(|s| (s.clone(), if s.dim() == 0 { 0 } else { s.dim() + 1 }))
        .collect();
    let mut cofacets: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
    for (t, s) in k.facet_pairs() {
        cofacets.entry(s).or_default().push(t.clone());
    }
    let mut singles: BTreeSet<(usize, Simplex)> = BTreeSet::new();
    let mut pairs = Vec::new();

    let admissible = |s: &Simplex, t: &Simplex| {
        c.facet_map(t, s).is_some_and(Matrix::is_invertible)
            && subcomplexes.iter().all(|m| m.contains(s) == m.contains(t))
    };

    fn retire(
        x: &Simplex,
        unprocessed: &mut BTreeSet<(usize, Simplex)>,
        singles: &mut BTreeSet<(usize, Simplex)>,
        open_facets: &mut HashMap<Simplex, usize>,
        cofacets: &HashMap<Simplex, Vec<Simplex>>,
    ) {
        let key = (x.dim(), x.clone());
        unprocessed.remove(&key);
        singles.remove(&key);
        for t in cofacets.get(x).into_iter().flatten() {
            let n = open_facets.get_mut(t).expect("known simplex");
            *n -= 1;
            let tk = (t.dim(), t.clone());
            if !unprocessed.contains(&tk) {
                continue;
            }
            if *n == 1 {
                singles.insert(tk);
            } else {
                singles.remove(&tk);
            }
        }
    }

    while let Some(first) = unprocessed.first().cloned() {
        let found = singles.iter().find_map(|(_, t)| {
            let s = t
                .facets()
                .find(|f| unprocessed.contains(&(f.dim(), f.clone())))
                .expect("one open facet");
            admissible(&s, t).then(|| (s, t.clone()))
        });
        match found {
            Some((s, t)) => {
                retire(&s, &mut unprocessed, &mut singles, &mut open_facets, &cofacets);
                retire(&t, &mut unprocessed, &mut singles, &mut open_facets, &cofacets);
                pairs.push((s, t));
            }
            None => {
                retire(&first.1, &mut unprocessed, &mut singles, &mut open_facets, &cofacets);
            }
        }
    }
    PartialMatching::new(pairs)
}

/// A Σ-path `σ₁ ◁ τ₁ ▷ σ₂ ◁ τ₂ ▷ ⋯ ◁ τ_m`, stored as its matched pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPath {
    pub steps: Vec<(Simplex, Simplex)>,
}

impl SigmaPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn first_facet(&self) -> &Simplex {
        &self.steps[0].0
    }

    pub fn last_coface(&self) -> &Simplex {
        &self.steps[self.steps.len() - 1].1
    }

    /// Checks the zig-zag shape: every step is a matched pair, and each
    /// `σ_{i+1}` is a facet of `τ_i` different from `σ_i`.
    pub fn is_valid(&self, matching: &PartialMatching) -> bool {
        !self.steps.is_empty()
            && self
                .steps
                .iter()
                .all(|(s, t)| matching.partner_up(s) == Some(t))
            && self
                .steps
                .windows(2)
                .all(|w| w[1].0.is_facet_of(&w[0].1) && w[1].0 != w[0].0)
    }

    /// A path is gradient when it is a single step or `σ₁` is not a face of
    /// `τ_m`.
    pub fn is_gradient(&self) -> bool {
        self.steps.len() == 1 || !self.first_facet().is_face_of(self.last_coface())
    }
}

/// All Σ-paths from a matched facet of `alpha` to a matched coface of `omega`:
/// `σ₁ ◁ α` and `ω ◁ τ_m`. Empty unless `dim α = dim ω + 1`.
pub fn enumerate_paths(
    k: &SimplicialComplex,
    matching: &PartialMatching,
    alpha: &Simplex,
    omega: &Simplex,
) -> Result<Vec<SigmaPath>> {
    if !matching.is_acyclic(k) {
        return Err(Error::CyclicMatching);
    }
    let mut out = Vec::new();
    if alpha.dim() != omega.dim() + 1 {
        return Ok(out);
    }
    let mut stack: Vec<Vec<(Simplex, Simplex)>> = alpha
        .facets()
        .filter_map(|s| matching.partner_up(&s).map(|t| vec![(s, t.clone())]))
        .collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        let (s, t) = path.last().expect("nonempty").clone();
        if omega.is_facet_of(&t) {
            out.push(SigmaPath {
                steps: path.clone(),
            });
        }
        let mut next: Vec<_> = matching
            .successors(&s, &t)
            .map(|(x, y)| {
                let mut p = path.clone();
                p.push((x, y.clone()));
                p
            })
            .collect();
        next.reverse();
        stack.extend(next);
    }
    Ok(out)
}

/// The C-weight of a path: the signed composite
/// `C⁻¹_{τ_m▷σ_m} ∘ C_{τ_{m-1}▷σ_m} ∘ ⋯ ∘ C_{τ_1▷σ_2} ∘ C⁻¹_{τ_1▷σ_1}`
/// with sign `(-1)^m · Π[τ_i:σ_i] · Π[τ_i:σ_{i+1}]`, a map from the costalk of
/// `σ₁` to that of `τ_m`.
pub fn path_weight(path: &SigmaPath, c: &Cosheaf) -> Result<Matrix> {
    let field = c.field();
    let mut sign: i64 = if path.len() % 2 == 0 { 1 } else { -1 };
    let mut acc = Matrix::identity(field, c.stalk_dim(path.first_facet()));
    for (i, (s, t)) in path.steps.iter().enumerate() {
        if i > 0 {
            let prev = &path.steps[i - 1].1;
            sign *= incidence(prev, s) as i64;
            acc = facet_map(c, prev, s)? * &acc;
        }
        sign *= incidence(t, s) as i64;
        let inv = facet_map(c, t, s)?
            .invert()
            .map_err(|_| Error::IncompatibleMatching {
                facet: s.clone(),
                coface: t.clone(),
            })?;
        acc = &inv * &acc;
    }
    Ok(acc.scale(field.reduce(sign)))
}

fn facet_map<'a>(c: &'a Cosheaf, coface: &Simplex, facet: &Simplex) -> Result<&'a Matrix> {
    c.facet_map(coface, facet).ok_or_else(|| Error::NotAFace {
        simplex: coface.clone(),
        face: facet.clone(),
    })
}

/// `[α:ω]_Σ` by explicit path enumeration.
pub fn morse_boundary_block(
    k: &SimplicialComplex,
    c: &Cosheaf,
    matching: &PartialMatching,
    alpha: &Simplex,
    omega: &Simplex,
) -> Result<Matrix> {
    let field = c.field();
    let mut block = Matrix::zeros(field, c.stalk_dim(omega), c.stalk_dim(alpha));
    if alpha.dim() != omega.dim() + 1 {
        return Ok(block);
    }
    if omega.is_facet_of(alpha) {
        let direct = facet_map(c, alpha, omega)?.scale(field.sign(incidence(alpha, omega)));
        block = &block + &direct;
    }
    for path in enumerate_paths(k, matching, alpha, omega)? {
        let s = path.first_facet();
        let t = path.last_coface();
        let into = facet_map(c, alpha, s)?.scale(field.sign(incidence(alpha, s)));
        let out = facet_map(c, t, omega)?.scale(field.sign(incidence(t, omega)));
        let term = &(&out * &path_weight(&path, c)?) * &into;
        block = &block + &term;
    }
    Ok(block)
}

/// The Morse chain complex of `(K, C, Σ)` together with its critical cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseComplex {
    base: SimplicialComplex,
    cosheaf: Cosheaf,
    matching: PartialMatching,
    critical: Vec<Vec<Simplex>>,
    complex: ChainComplex,
}

/// Homology dimensions of the standard and Morse complexes, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiIsoCheck {
    pub standard: Vec<usize>,
    pub morse: Vec<usize>,
}

impl QuasiIsoCheck {
    pub fn holds(&self) -> bool {
        self.standard == self.morse
    }
}

impl MorseComplex {
    /// Builds the Morse complex; the matching must be valid, acyclic and
    /// compatible with `c`. Fails naming the first `(α, ω'')` block where
    /// the Morse boundary does not square to zero.
    pub fn assemble(
        k: &SimplicialComplex,
        c: &Cosheaf,
        matching: &PartialMatching,
    ) -> Result<Self> {
        if c.base() != k {
            return Err(Error::BaseMismatch);
        }
        c.ensure_valid()?;
        matching.check_morse(k, c)?;
        let field = c.field();
        let order = matching.topological_order().expect("acyclic");
        let inverses: HashMap<&Simplex, Matrix> = matching
            .pairs
            .iter()
            .map(|(s, t)| (s, facet_map(c, t, s).expect("pair in base").invert().expect("compatible")))
            .collect();
        let critical = matching.critical_cells(k);
        let n = critical.len();
        let offsets: Vec<BTreeMap<&Simplex, usize>> = critical
            .iter()
            .map(|level| {
                let mut acc = 0;
                level
                    .iter()
                    .map(|s| {
                        let o = acc;
                        acc += c.stalk_dim(s);
                        (s, o)
                    })
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = critical
            .iter()
            .map(|level| level.iter().map(|s| c.stalk_dim(s)).sum())
            .collect();
        let mut boundaries = Vec::with_capacity(n.saturating_sub(1));
        for d in 1..n {
            let level_order: Vec<&(Simplex, Simplex)> =
                order.iter().filter(|(s, _)| s.dim() == d - 1).collect();
            let mut m = Matrix::zeros(field, dims[d - 1], dims[d]);
            for alpha in &critical[d] {
                let col = offsets[d][alpha];
                for (omega, block) in flow_blocks(c, matching, &inverses, &level_order, alpha) {
                    m.set_block(offsets[d - 1][&omega], col, &block);
                }
            }
            boundaries.push(m);
        }
        if let Some((alpha, omega)) = first_nonzero_square(c, &critical, &offsets, &boundaries) {
            return Err(Error::MorseBoundaryNonzero { alpha, omega });
        }
        let basis = critical
            .iter()
            .map(|level| {
                level
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
        let complex = ChainComplex::with_basis(field, dims, boundaries, basis)?;
        Ok(MorseComplex {
            base: k.clone(),
            cosheaf: c.clone(),
            matching: matching.clone(),
            critical,
            complex,
        })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn matching(&self) -> &PartialMatching {
        &self.matching
    }

    /// Critical simplices of dimension `d`.
    pub fn critical(&self, d: usize) -> &[Simplex] {
        self.critical.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn critical_count(&self) -> usize {
        self.critical.iter().map(Vec::len).sum()
    }

    /// Critical simplex counts per dimension.
    pub fn critical_counts(&self) -> Vec<usize> {
        self.critical.iter().map(Vec::len).collect()
    }

    /// Offset of the costalk of the critical simplex `s` in its chain group.
    pub fn offset_of(&self, s: &Simplex) -> Option<usize> {
        let level = self.critical.get(s.dim())?;
        let pos = level.binary_search(s).ok()?;
        Some(level[..pos].iter().map(|x| self.cosheaf.stalk_dim(x)).sum())
    }

    /// The uncompressed complex `C_•(K; C)`.
    pub fn standard_complex(&self) -> Result<ChainComplex> {
        crate::chain::assemble(&self.base, &self.cosheaf)
    }

    /// Compares homology dimensions with the uncompressed complex.
    pub fn quasi_isomorphism_check(&self) -> Result<QuasiIsoCheck> {
        let standard = self.standard_complex()?;
        let n = standard.len().max(self.complex.len());
        Ok(QuasiIsoCheck {
            standard: (0..n).map(|k| standard.homology(k).dimension()).collect(),
            morse: (0..n).map(|k| self.complex.homology(k).dimension()).collect(),
        })
    }
}

/// Column of the Morse boundary for the critical simplex `alpha`: the blocks
/// `[α:ω]_Σ` for every critical facet-level `ω` reached.
///
/// `inflow[σ]` accumulates the sum over Σ-paths ending just before the pair
/// `(σ, τ)`; processing pairs in topological order guarantees it is complete
/// when the pair is visited.
fn flow_blocks(
    c: &Cosheaf,
    matching: &PartialMatching,
    inverses: &HashMap<&Simplex, Matrix>,
    level_order: &[&(Simplex, Simplex)],
    alpha: &Simplex,
) -> BTreeMap<Simplex, Matrix> {
    let field = c.field();
    let signed = |t: &Simplex, s: &Simplex| {
        c.facet_map(t, s)
            .expect("facet pair in base")
            .scale(field.sign(incidence(t, s)))
    };
    let mut blocks: BTreeMap<Simplex, Matrix> = BTreeMap::new();
    let mut inflow: HashMap<Simplex, Matrix> = HashMap::new();
    let add_to = |target: &mut Matrix, term: &Matrix| *target = &*target + term;

    for s in alpha.facets() {
        let term = signed(alpha, &s);
        if matching.is_critical(&s) {
            let b = blocks
                .entry(s.clone())
                .or_insert_with(|| Matrix::zeros(field, term.rows(), term.cols()));
            add_to(b, &term);
        } else if matching.partner_up(&s).is_some() {
            inflow.insert(s, term);
        }
    }
    for (s, t) in level_order {
        let Some(acc) = inflow.remove(s) else {
            continue;
        };
        let sign = field.neg(field.sign(incidence(t, s)));
        let weight = (&inverses[s] * &acc).scale(sign);
        for x in t.facets().filter(|x| x != s) {
            let term = &signed(t, &x) * &weight;
            if matching.is_critical(&x) {
                let b = blocks
                    .entry(x.clone())
                    .or_insert_with(|| Matrix::zeros(field, term.rows(), term.cols()));
                add_to(b, &term);
            } else if matching.partner_up(&x).is_some() {
                match inflow.get_mut(&x) {
                    Some(existing) => add_to(existing, &term),
                    None => {
                        inflow.insert(x, term);
                    }
                }
            }
        }
    }
    blocks
}

fn first_nonzero_square(
    c: &Cosheaf,
    critical: &[Vec<Simplex>],
    offsets: &[BTreeMap<&Simplex, usize>],
    boundaries: &[Matrix],
) -> Option<(Simplex, Simplex)> {
    for d in 1..boundaries.len() {
        let product = &boundaries[d - 1] * &boundaries[d];
        if product.is_zero() {
            continue;
        }
        for alpha in &critical[d + 1] {
            for omega in &critical[d - 1] {
                let block = product.block(
                    offsets[d - 1][omega],
                    offsets[d + 1][alpha],
                    c.stalk_dim(omega),
                    c.stalk_dim(alpha),
                );
                if !block.is_zero() {
                    return Some((alpha.clone(), omega.clone()));
                }
            }
        }
    }
    None
}

/// Text dump of the Hasse diagram with matched arrows inverted: one line per
/// facet relation, `coface -> facet` for unmatched relations and
/// `facet => coface` for matched pairs.
pub fn hasse_diagram(k: &SimplicialComplex, matching: &PartialMatching) -> String {
    let mut out = String::new();
    for (t, s) in k.facet_pairs() {
        if matching.partner_up(&s) == Some(t) {
            out.push_str(&format!("{s} => {t}\n"));
        } else {
            out.push_str(&format!("{t} -> {s}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::Field;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn m(pairs: &[(&[u32], &[u32])]) -> PartialMatching {
        PartialMatching::new(pairs.iter().map(|(a, b)| (s(a), s(b))))
    }

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn validation_examples() {
        let k = fixtures::triangle();
        assert!(PartialMatching::empty().validate(&k).is_empty());
        let reuse = m(&[(&[0], &[0, 1]), (&[0], &[0, 2])]).validate(&k);
        assert_eq!(reuse, vec![MatchingViolation::Reused(s(&[0]))]);
        let codim2 = m(&[(&[0], &[0, 1, 2])]).validate(&k);
        assert_eq!(
            codim2,
            vec![MatchingViolation::NotAFacet {
                facet: s(&[0]),
                coface: s(&[0, 1, 2])
            }]
        );
        let outside = m(&[(&[3], &[0, 3])]).validate(&k);
        assert_eq!(outside.len(), 2);
    }

    #[test]
    fn acyclicity_examples() {
        let k = fixtures::circle();
        assert!(PartialMatching::empty().is_acyclic(&k));
        assert!(m(&[(&[1], &[1, 2])]).is_acyclic(&k));
        let all = m(&[(&[0], &[0, 1]), (&[1], &[1, 2]), (&[2], &[0, 2])]);
        assert!(all.validate(&k).is_empty());
        assert!(!all.is_acyclic(&k));
        let c = Cosheaf::constant(&k, 1, f3());
        assert_eq!(
            MorseComplex::assemble(&k, &c, &all).unwrap_err(),
            Error::CyclicMatching
        );
        assert_eq!(
            enumerate_paths(&k, &all, &s(&[0, 1]), &s(&[0])).unwrap_err(),
            Error::CyclicMatching
        );
    }

    #[test]
    fn compatibility_examples() {
        let k = fixtures::edge();
        let sky = Cosheaf::skyscraper(&k, &s(&[0]), f3()).unwrap();
        assert!(m(&[(&[1], &[0, 1])]).is_cosheaf_compatible(&sky));
        assert!(!m(&[(&[0], &[0, 1])]).is_cosheaf_compatible(&sky));

        let mut stalks = BTreeMap::new();
        stalks.insert(s(&[0]), 2);
        stalks.insert(s(&[1]), 1);
        stalks.insert(s(&[0, 1]), 1);
        let mut maps = BTreeMap::new();
        maps.insert((s(&[0, 1]), s(&[0])), Matrix::from_rows(f3(), &[[1], [0]]));
        maps.insert((s(&[0, 1]), s(&[1])), Matrix::identity(f3(), 1));
        let c = Cosheaf::new(k.clone(), f3(), stalks, maps).unwrap();
        assert!(!m(&[(&[0], &[0, 1])]).is_cosheaf_compatible(&c));
        let err = MorseComplex::assemble(&k, &c, &m(&[(&[0], &[0, 1])])).unwrap_err();
        assert!(matches!(err, Error::IncompatibleMatching { .. }));
    }

    #[test]
    fn generated_matching_traces() {
        let k = fixtures::edge();
        let c = Cosheaf::constant(&k, 1, f3());
        assert_eq!(generate_matching(&k, &c), m(&[(&[1], &[0, 1])]));

        let k = fixtures::circle();
        let g = generate_matching(&k, &Cosheaf::constant(&k, 1, f3()));
        assert_eq!(g, m(&[(&[1], &[0, 1]), (&[2], &[0, 2])]));
        assert_eq!(g.critical_cells(&k), vec![vec![s(&[0])], vec![s(&[1, 2])]]);

        for k in [fixtures::triangle(), fixtures::tetrahedron()] {
            let g = generate_matching(&k, &Cosheaf::constant(&k, 1, f3()));
            assert_eq!(g.critical_count(&k), 1);
        }
    }

    #[test]
    fn generated_matching_respects_subcomplexes() {
        let split = fixtures::sphere_split();
        let c = Cosheaf::constant(&split.k, 1, f3());
        let g = generate_compatible_matching(&split.k, &c, &[&split.l, &split.m]);
        assert!(g.is_subcomplex_compatible(&split.l));
        assert!(g.is_subcomplex_compatible(&split.m));
        assert!(g.check_morse(&split.k, &c).is_ok());
    }

    #[test]
    fn generation_skips_singular_maps() {
        let k = fixtures::edge();
        let c = Cosheaf::zero(&k, f3()).direct_sum(&Cosheaf::skyscraper(&k, &s(&[0, 1]), f3()).unwrap()).unwrap();
        let g = generate_matching(&k, &c);
        assert!(g.is_empty());
        assert_eq!(g.critical_count(&k), 3);
    }

    #[test]
    fn circle_path_and_cancellation() {
        let k = fixtures::circle();
        let sigma = m(&[(&[1], &[0, 1]), (&[2], &[1, 2])]);
        let paths = enumerate_paths(&k, &sigma, &s(&[0, 2]), &s(&[0])).unwrap();
        assert_eq!(
            paths,
            vec![SigmaPath {
                steps: vec![(s(&[2]), s(&[1, 2])), (s(&[1]), s(&[0, 1]))]
            }]
        );
        assert!(paths[0].is_valid(&sigma) && paths[0].is_gradient());

        let c = Cosheaf::constant(&k, 1, f3());
        let block = morse_boundary_block(&k, &c, &sigma, &s(&[0, 2]), &s(&[0])).unwrap();
        assert!(block.is_zero());
        let mc = MorseComplex::assemble(&k, &c, &sigma).unwrap();
        assert_eq!(mc.complex().dims(), vec![1, 1]);
        assert!(mc.complex().boundary(1).is_zero());
        assert_eq!(mc.complex().betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn single_step_weight() {
        let k = fixtures::edge();
        let c = Cosheaf::constant(&k, 2, f3());
        let path = SigmaPath {
            steps: vec![(s(&[1]), s(&[0, 1]))],
        };
        // (-1)^1 · [e01:v1] = (-1)(1)
        assert_eq!(path_weight(&path, &c).unwrap(), Matrix::identity(f3(), 2).scale(2));
        let path = SigmaPath {
            steps: vec![(s(&[0]), s(&[0, 1]))],
        };
        // (-1)^1 · [e01:v0] = (-1)(-1)
        assert!(path_weight(&path, &c).unwrap().is_identity());
        let f2 = Cosheaf::constant(&k, 2, Field::F2);
        assert!(path_weight(&path, &f2).unwrap().is_identity());
    }

    #[test]
    fn two_step_weight_by_hand() {
        let k = fixtures::circle();
        let f = Field::new(5).unwrap();
        let base = Cosheaf::constant(&k, 2, f);
        let g = |rows: [[i64; 2]; 2]| Matrix::from_rows(f, &rows);
        let mut basis = BTreeMap::new();
        basis.insert(s(&[1]), g([[1, 2], [0, 1]]));
        basis.insert(s(&[2]), g([[2, 0], [1, 1]]));
        basis.insert(s(&[0, 1]), g([[0, 1], [1, 3]]));
        basis.insert(s(&[1, 2]), g([[1, 1], [4, 2]]));
        let c = base.change_basis(&basis).unwrap();
        let path = SigmaPath {
            steps: vec![(s(&[2]), s(&[1, 2])), (s(&[1]), s(&[0, 1]))],
        };
        let a = c.facet_map(&s(&[1, 2]), &s(&[2])).unwrap().invert().unwrap();
        let b = c.facet_map(&s(&[1, 2]), &s(&[1])).unwrap();
        let d = c.facet_map(&s(&[0, 1]), &s(&[1])).unwrap().invert().unwrap();
        // sign: (-1)^2 · [e12:v2]·[e12:v1]·[e01:v1] = (1)(-1)(1)
        let expected = (&(&d * b) * &a).scale(4);
        assert_eq!(path_weight(&path, &c).unwrap(), expected);
    }

    #[test]
    fn empty_matching_gives_standard_complex() {
        for (name, k) in fixtures::complexes() {
            let c = Cosheaf::constant(&k, 1, f3());
            let mc = MorseComplex::assemble(&k, &c, &PartialMatching::empty()).unwrap();
            let std = crate::chain::assemble(&k, &c).unwrap();
            assert_eq!(mc.critical_count(), k.len(), "{name}");
            assert_eq!(mc.complex().dims(), std.dims(), "{name}");
            for d in 0..std.len() {
                assert_eq!(mc.complex().boundary(d), std.boundary(d), "{name}");
            }
        }
    }

    #[test]
    fn triangle_collapses_to_a_point() {
        let k = fixtures::triangle();
        let c = Cosheaf::constant(&k, 1, f3());
        let mc = MorseComplex::assemble(&k, &c, &generate_matching(&k, &c)).unwrap();
        assert_eq!(mc.critical_counts(), vec![1, 0, 0]);
        assert_eq!(mc.complex().betti_numbers(), vec![1, 0, 0]);
        assert!(mc.quasi_isomorphism_check().unwrap().holds());
    }

    #[test]
    fn skyscraper_blocks_are_empty() {
        let k = fixtures::edge();
        let c = Cosheaf::skyscraper(&k, &s(&[0, 1]), f3()).unwrap();
        let b = morse_boundary_block(&k, &c, &PartialMatching::empty(), &s(&[0, 1]), &s(&[0])).unwrap();
        assert_eq!(b.shape(), (0, 1));
    }

    #[test]
    fn flow_matches_path_enumeration() {
        let f = Field::new(5).unwrap();
        for (name, k) in fixtures::complexes() {
            let c = Cosheaf::constant(&k, 1, f);
            let sigma = generate_matching(&k, &c);
            let mc = MorseComplex::assemble(&k, &c, &sigma).unwrap();
            for d in 1..mc.complex().len() {
                let bd = mc.complex().boundary(d);
                for alpha in mc.critical(d) {
                    for omega in mc.critical(d - 1) {
                        let block = morse_boundary_block(&k, &c, &sigma, alpha, omega).unwrap();
                        let from_flow = bd.block(
                            mc.offset_of(omega).unwrap(),
                            mc.offset_of(alpha).unwrap(),
                            block.rows(),
                            block.cols(),
                        );
                        assert_eq!(block, from_flow, "{name}: {alpha} -> {omega}");
                    }
                }
            }
        }
    }

    #[test]
    fn hasse_dump_inverts_matched_arrows() {
        let k = fixtures::edge();
        let text = hasse_diagram(&k, &m(&[(&[1], &[0, 1])]));
        assert_eq!(text, "(1) => (0,1)\n(0,1) -> (0)\n");
    }
}
