//! Mayer-Vietoris sequences for a cover `K = L ∪ M`, standard and Morse.
//!
//! Both sequences have the shape
//! `0 → X^I → X^L ⊕ X^M → X^K → 0` with `p = (i, j)` stacking the two
//! inclusions of `I = L ∩ M` and `q = [i' | -j']`. Inclusions are read off
//! basis labels, so the same code serves the full chain complexes and the
//! Morse complexes on critical costalks.

use std::collections::HashMap;
use std::fmt;

use crate::chain::{assemble, BasisLabel, ChainComplex, ChainMap, LesReport, MapKind, Position, ShortExactSequence};
use crate::complex::{Simplex, SimplicialComplex};
use crate::cosheaf::Cosheaf;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::morse::{MorseComplex, PartialMatching};

/// `K = L ∪ M` with `I = L ∩ M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    k: SimplicialComplex,
    l: SimplicialComplex,
    m: SimplicialComplex,
    i: SimplicialComplex,
}

impl Decomposition {
    /// Checks that `L` and `M` are subcomplexes of `K` covering it.
    pub fn new(k: SimplicialComplex, l: SimplicialComplex, m: SimplicialComplex) -> Result<Self> {
        l.check_subcomplex_of(&k)?;
        m.check_subcomplex_of(&k)?;
        let union = l.union(&m);
        if union != k {
            let missing = k.iter().find(|s| !union.contains(s)).expect("union is smaller");
            return Err(Error::InvalidDecomposition(format!(
                "{missing} lies in neither L nor M"
            )));
        }
        let i = l.intersection(&m);
        Ok(Decomposition { k, l, m, i })
    }

    pub fn k(&self) -> &SimplicialComplex {
        &self.k
    }

    pub fn l(&self) -> &SimplicialComplex {
        &self.l
    }

    pub fn m(&self) -> &SimplicialComplex {
        &self.m
    }

    pub fn intersection(&self) -> &SimplicialComplex {
        &self.i
    }

    pub fn piece(&self, piece: Piece) -> &SimplicialComplex {
        match piece {
            Piece::I => &self.i,
            Piece::L => &self.l,
            Piece::M => &self.m,
            Piece::K => &self.k,
        }
    }
}

/// One of the four spaces of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    I,
    L,
    M,
    K,
}

impl Piece {
    pub const ALL: [Piece; 4] = [Piece::I, Piece::L, Piece::M, Piece::K];

    /// The four inclusions `I ⊆ L`, `I ⊆ M`, `L ⊆ K`, `M ⊆ K`.
    pub const INCLUSIONS: [(Piece, Piece); 4] = [
        (Piece::I, Piece::L),
        (Piece::I, Piece::M),
        (Piece::L, Piece::K),
        (Piece::M, Piece::K),
    ];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Piece::I => "I",
            Piece::L => "L",
            Piece::M => "M",
            Piece::K => "K",
        })
    }
}

/// Where a basis vector of the middle term `C(L) ⊕ C(M)` sits in the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Region {
    LOnly,
    LShared,
    MShared,
    MOnly,
}

/// The chain map of the inclusion `sub → sup`, matching basis labels.
fn label_inclusion(sub: &ChainComplex, sup: &ChainComplex) -> Result<ChainMap> {
    let n = sub.len().max(sup.len());
    let levels = (0..n)
        .map(|k| {
            let index: HashMap<&BasisLabel, usize> =
                sup.basis(k).iter().enumerate().map(|(i, b)| (b, i)).collect();
            let mut m = Matrix::zeros(sup.field(), sup.dim(k), sub.dim(k));
            for (j, b) in sub.basis(k).iter().enumerate() {
                let &i = index.get(b).ok_or_else(|| {
                    Error::NotAChainMap(format!(
                        "basis vector {}[{}] has no image",
                        b.simplex, b.coordinate
                    ))
                })?;
                m.set(i, j, 1);
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(sub.clone(), sup.clone(), levels)
}

/// Builds `0 → X^I → X^L ⊕ X^M → X^K → 0` from the four complexes.
fn ses_from_pieces(pieces: &[ChainComplex; 4]) -> Result<ShortExactSequence> {
    let [ci, cl, cm, ck] = pieces;
    let middle = cl.direct_sum(cm)?;
    let i = label_inclusion(ci, cl)?;
    let j = label_inclusion(ci, cm)?;
    let i2 = label_inclusion(cl, ck)?;
    let j2 = label_inclusion(cm, ck)?;
    let n = [ci, &middle, ck].iter().map(|c| c.len()).max().unwrap_or(0);
    let p = (0..n).map(|k| i.level(k).vstack(&j.level(k))).collect();
    let q = (0..n)
        .map(|k| {
            let neg = j2.level(k);
            i2.level(k).hstack(&-&neg)
        })
        .collect();
    let p = ChainMap::new(ci.clone(), middle.clone(), p)?;
    let q = ChainMap::new(middle, ck.clone(), q)?;
    ShortExactSequence::new(p, q)
}

/// The induced maps on homology of the four inclusions, as ranks per degree.
fn inclusion_ranks(pieces: &[ChainComplex; 4]) -> Result<Vec<InclusionRank>> {
    let n = pieces.iter().map(ChainComplex::len).max().unwrap_or(0);
    let mut out = Vec::new();
    for (sub, sup) in Piece::INCLUSIONS {
        let map = label_inclusion(&pieces[sub.index()], &pieces[sup.index()])?;
        for k in 0..n {
            let induced = map.induced_map(k)?;
            out.push(InclusionRank {
                sub,
                sup,
                degree: k,
                source_dim: induced.cols(),
                target_dim: induced.rows(),
                rank: induced.rank(),
            });
        }
    }
    Ok(out)
}

/// Rank of `H_k(sub) → H_k(sup)` for one inclusion of the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionRank {
    pub sub: Piece,
    pub sup: Piece,
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

/// The standard Mayer-Vietoris sequence of chain complexes.
#[derive(Debug, Clone)]
pub struct MvSes {
    decomposition: Decomposition,
    pieces: [ChainComplex; 4],
    ses: ShortExactSequence,
}

impl MvSes {
    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn ses(&self) -> &ShortExactSequence {
        &self.ses
    }

    /// `C_•(X; C|_X)` for one piece of the cover.
    pub fn complex(&self, piece: Piece) -> &ChainComplex {
        &self.pieces[piece.index()]
    }

    pub fn long_exact_sequence(&self) -> Result<LesReport> {
        self.ses.long_exact_sequence()
    }

    /// Region of each basis vector of the middle term in degree `k`:
    /// the `L` summand first, then the `M` summand.
    pub fn regions(&self, k: usize) -> Vec<Region> {
        let d = &self.decomposition;
        let from_l = self.complex(Piece::L).basis(k).iter().map(|b| {
            if d.m.contains(&b.simplex) {
                Region::LShared
            } else {
                Region::LOnly
            }
        });
        let from_m = self.complex(Piece::M).basis(k).iter().map(|b| {
            if d.l.contains(&b.simplex) {
                Region::MShared
            } else {
                Region::MOnly
            }
        });
        from_l.chain(from_m).collect()
    }

    /// The permutation of the middle basis in degree `k` that groups it as
    /// `L∖M, L∩M (from L), L∩M (from M), M∖L`: entry `i` is the old index of
    /// the vector placed at position `i`.
    pub fn block_permutation(&self, k: usize) -> Vec<usize> {
        let regions = self.regions(k);
        let mut order: Vec<usize> = (0..regions.len()).collect();
        order.sort_by_key(|&i| regions[i]);
        order
    }

    /// Ranks of the homology maps induced by the four inclusions.
    pub fn inclusion_ranks(&self) -> Result<Vec<InclusionRank>> {
        inclusion_ranks(&self.pieces)
    }
}

/// `0 → C_•(I) → C_•(L) ⊕ C_•(M) → C_•(K) → 0`.
pub fn build_mv_ses(d: &Decomposition, c: &Cosheaf) -> Result<MvSes> {
    if c.base() != d.k() {
        return Err(Error::BaseMismatch);
    }
    c.ensure_valid()?;
    let pieces = Piece::ALL.map(|piece| {
        let x = d.piece(piece);
        c.restrict(x).and_then(|cx| assemble(x, &cx))
    });
    let pieces = collect_array(pieces)?;
    let ses = ses_from_pieces(&pieces)?;
    Ok(MvSes {
        decomposition: d.clone(),
        pieces,
        ses,
    })
}

fn collect_array<T>(items: [Result<T>; 4]) -> Result<[T; 4]> {
    let [a, b, c, d] = items;
    Ok([a?, b?, c?, d?])
}

/// `true` iff no pair of the matching has exactly one simplex in `sub`.
pub fn matching_subcomplex_compatible(matching: &PartialMatching, sub: &SimplicialComplex) -> bool {
    matching.is_subcomplex_compatible(sub)
}

/// The pairs of `matching` inside `sub`; fails when a pair straddles `sub`.
pub fn restrict_matching(matching: &PartialMatching, sub: &SimplicialComplex) -> Result<PartialMatching> {
    matching.restrict(sub)
}

/// Result of the checks tying the Morse complex of a subcomplex `B` to that
/// of `A ⊇ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraddleCheck {
    pub sub: Piece,
    pub sup: Piece,
    /// Number of blocks `[α:ω]_Σ` with `α ∈ B`, `ω ∈ A∖B` examined.
    pub checked: usize,
    /// Those among them that are nonzero.
    pub nonzero: Vec<(Simplex, Simplex)>,
    /// The critical simplices of `Σ_B` are exactly the `Σ_A`-critical
    /// simplices lying in `B`.
    pub critical_consistent: bool,
    /// The Morse boundary of `B` equals the `B`-critical sub-block of the
    /// Morse boundary of `A`.
    pub restriction_consistent: bool,
}

impl StraddleCheck {
    pub fn holds(&self) -> bool {
        self.nonzero.is_empty() && self.critical_consistent && self.restriction_consistent
    }
}

/// One edge of the homology-level cube: the ranks of the map induced by an
/// inclusion, on the standard and on the Morse side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeEdge {
    pub standard: InclusionRank,
    pub morse: InclusionRank,
}

impl CubeEdge {
    pub fn holds(&self) -> bool {
        let (a, b) = (&self.standard, &self.morse);
        a.source_dim == b.source_dim && a.target_dim == b.target_dim && a.rank == b.rank
    }
}

/// The Morse Mayer-Vietoris sequence with its verification data.
#[derive(Debug, Clone)]
pub struct MorseMvSes {
    standard: MvSes,
    morse: [MorseComplex; 4],
    ses: ShortExactSequence,
    straddling: Vec<StraddleCheck>,
    cube: Vec<CubeEdge>,
}

impl MorseMvSes {
    pub fn standard(&self) -> &MvSes {
        &self.standard
    }

    pub fn ses(&self) -> &ShortExactSequence {
        &self.ses
    }

    pub fn morse_complex(&self, piece: Piece) -> &MorseComplex {
        &self.morse[piece.index()]
    }

    pub fn straddling(&self) -> &[StraddleCheck] {
        &self.straddling
    }

    pub fn cube(&self) -> &[CubeEdge] {
        &self.cube
    }

    pub fn straddling_blocks_vanish(&self) -> bool {
        self.straddling.iter().all(StraddleCheck::holds)
    }

    pub fn cube_commutes(&self) -> bool {
        self.cube.iter().all(CubeEdge::holds)
    }

    /// Compares the standard and Morse long exact sequences.
    pub fn compare(&self) -> Result<LesComparison> {
        Ok(compare_les(
            &self.standard.long_exact_sequence()?,
            &self.ses.long_exact_sequence()?,
        ))
    }
}

/// `0 → M^I → M^L ⊕ M^M → M^K → 0` for a matching compatible with the
/// cosheaf and with both `L` and `M`.
pub fn build_morse_mv_ses(d: &Decomposition, c: &Cosheaf, matching: &PartialMatching) -> Result<MorseMvSes> {
    let standard = build_mv_ses(d, c)?;
    matching.check_morse(d.k(), c)?;
    let restricted = collect_array(Piece::ALL.map(|piece| {
        let x = d.piece(piece);
        let sigma = matching.restrict(x)?;
        let cx = c.restrict(x)?;
        MorseComplex::assemble(x, &cx, &sigma)
    }))?;
    let complexes = [0, 1, 2, 3].map(|i| restricted[i].complex().clone());
    let ses = ses_from_pieces(&complexes)?;

    let straddling = Piece::INCLUSIONS
        .iter()
        .map(|&(sub, sup)| straddle_check(d, c, &restricted, sub, sup))
        .collect();
    let standard_ranks = standard.inclusion_ranks()?;
    let morse_ranks = inclusion_ranks(&complexes)?;
    let cube = standard_ranks
        .into_iter()
        .zip(morse_ranks)
        .map(|(standard, morse)| CubeEdge { standard, morse })
        .collect();
    Ok(MorseMvSes {
        standard,
        morse: restricted,
        ses,
        straddling,
        cube,
    })
}

fn straddle_check(
    d: &Decomposition,
    c: &Cosheaf,
    morse: &[MorseComplex; 4],
    sub: Piece,
    sup: Piece,
) -> StraddleCheck {
    let b = d.piece(sub);
    let mb = &morse[sub.index()];
    let ma = &morse[sup.index()];
    let n = ma.complex().len();
    let mut checked = 0;
    let mut nonzero = Vec::new();
    let mut critical_consistent = true;
    let mut restriction_consistent = true;
    for k in 0..n {
        let in_b: Vec<Simplex> = ma.critical(k).iter().filter(|s| b.contains(s)).cloned().collect();
        critical_consistent &= in_b.as_slice() == mb.critical(k);
        if k == 0 {
            continue;
        }
        let bd = ma.complex().boundary(k);
        for alpha in ma.critical(k).iter().filter(|s| b.contains(s)) {
            let col = ma.offset_of(alpha).expect("critical");
            for omega in ma.critical(k - 1).iter().filter(|s| !b.contains(s)) {
                checked += 1;
                let row = ma.offset_of(omega).expect("critical");
                if !bd.block(row, col, c.stalk_dim(omega), c.stalk_dim(alpha)).is_zero() {
                    nonzero.push((alpha.clone(), omega.clone()));
                }
            }
        }
        if critical_consistent {
            let rows: Vec<usize> = indices_of(ma, mb, k - 1);
            let cols: Vec<usize> = indices_of(ma, mb, k);
            restriction_consistent &= bd.select(&rows, &cols) == mb.complex().boundary(k);
        }
    }
    StraddleCheck {
        sub,
        sup,
        checked,
        nonzero,
        critical_consistent,
        restriction_consistent,
    }
}

/// Positions in the degree-`k` basis of `ma` of the basis vectors of `mb`.
fn indices_of(ma: &MorseComplex, mb: &MorseComplex, k: usize) -> Vec<usize> {
    let index: HashMap<&BasisLabel, usize> = ma
        .complex()
        .basis(k)
        .iter()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect();
    mb.complex().basis(k).iter().map(|b| index[b]).collect()
}

/// Verdict of [`compare_les`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesComparison {
    pub agree: bool,
    /// Description of the first node or map that differs.
    pub first_difference: Option<String>,
}

/// Node-wise homology dimensions and ranks of corresponding maps agree.
/// Nodes and maps missing from one side count as zero.
pub fn compare_les(standard: &LesReport, morse: &LesReport) -> LesComparison {
    let dim = |r: &LesReport, p: Position, k: usize| r.dim_at(p, k).unwrap_or(0);
    let rank = |r: &LesReport, kind: MapKind, k: usize| {
        r.maps
            .iter()
            .find(|m| m.kind == kind && m.degree == k)
            .map_or(0, |m| m.rank)
    };
    let nodes = standard.nodes.iter().chain(&morse.nodes);
    let maps = standard.maps.iter().chain(&morse.maps);
    let difference = nodes
        .map(|n| (n, dim(standard, n.position, n.degree), dim(morse, n.position, n.degree)))
        .find(|(_, a, b)| a != b)
        .map(|(n, a, b)| format!("{n}: dimension {a} vs {b}"))
        .or_else(|| {
            maps.map(|m| (m, rank(standard, m.kind, m.degree), rank(morse, m.kind, m.degree)))
                .find(|(_, a, b)| a != b)
                .map(|(m, a, b)| format!("{} out of degree {}: rank {a} vs {b}", m.kind, m.degree))
        });
    LesComparison {
        agree: difference.is_none(),
        first_difference: difference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::Field;
    use crate::morse::{generate_compatible_matching, generate_matching};

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn split(x: fixtures::Split) -> Decomposition {
        Decomposition::new(x.k, x.l, x.m).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let k = fixtures::triangle();
        let d = Decomposition::new(k.clone(), k.clone(), k.clone()).unwrap();
        assert_eq!(d.intersection(), &k);
        let d = split(fixtures::circle_split());
        assert_eq!(d.intersection().iter().cloned().collect::<Vec<_>>(), vec![s(&[0]), s(&[2])]);
        let k = fixtures::circle();
        let l = SimplicialComplex::from_vertex_lists(&[[0, 1]]).unwrap();
        let m = SimplicialComplex::from_vertex_lists(&[[1, 2]]).unwrap();
        assert!(matches!(
            Decomposition::new(k.clone(), l.clone(), m).unwrap_err(),
            Error::InvalidDecomposition(_)
        ));
        let outside = SimplicialComplex::from_vertex_lists(&[[0, 5]]).unwrap();
        assert!(Decomposition::new(k, l, outside).is_err());
    }

    #[test]
    fn empty_m_makes_q_an_isomorphism() {
        let k = fixtures::sphere();
        let d = Decomposition::new(k.clone(), k.clone(), SimplicialComplex::empty()).unwrap();
        let mv = build_mv_ses(&d, &Cosheaf::constant(&k, 2, f3())).unwrap();
        assert_eq!(mv.ses().left().total_dim(), 0);
        for deg in 0..3 {
            assert!(mv.ses().q().level(deg).is_identity());
        }
    }

    #[test]
    fn equal_pieces_give_diagonal_and_difference() {
        let k = fixtures::circle();
        let d = Decomposition::new(k.clone(), k.clone(), k.clone()).unwrap();
        let mv = build_mv_ses(&d, &Cosheaf::constant(&k, 1, f3())).unwrap();
        let id = Matrix::identity(f3(), 3);
        assert_eq!(mv.ses().p().level(1), id.vstack(&id));
        assert_eq!(mv.ses().q().level(1), id.hstack(&-&id));
    }

    #[test]
    fn circle_split_sequence() {
        let d = split(fixtures::circle_split());
        let mv = build_mv_ses(&d, &Cosheaf::constant(d.k(), 1, f3())).unwrap();
        assert!(mv.ses().exactness().iter().all(|e| e.holds()));
        let les = mv.long_exact_sequence().unwrap();
        assert!(les.is_exact());
        let dims: Vec<usize> = les.nodes.iter().map(|n| n.dim).collect();
        // H_1: I, L⊕M, K then H_0: I, L⊕M, K
        assert_eq!(dims, vec![0, 0, 1, 2, 2, 1]);
        assert_eq!(les.connecting(1).unwrap().rank, 1);
        assert_eq!(
            mv.regions(0),
            vec![
                Region::LShared,
                Region::LOnly,
                Region::LShared,
                Region::MShared,
                Region::MShared
            ]
        );
        assert_eq!(mv.block_permutation(0), vec![1, 0, 2, 3, 4]);
    }

    #[test]
    fn sphere_split_sequence() {
        let d = split(fixtures::sphere_split());
        let mv = build_mv_ses(&d, &Cosheaf::constant(d.k(), 1, Field::F2)).unwrap();
        let les = mv.long_exact_sequence().unwrap();
        assert!(les.is_exact());
        assert_eq!(les.connecting(2).unwrap().rank, 1);
        assert_eq!(les.dim_at(Position::Left, 1), Some(1));
    }

    #[test]
    fn restriction_examples() {
        let d = split(fixtures::circle_split());
        let sigma = PartialMatching::new([(s(&[1]), s(&[0, 1])), (s(&[2]), s(&[0, 2]))]);
        assert_eq!(restrict_matching(&sigma, d.k()).unwrap(), sigma);
        assert!(restrict_matching(&sigma, &SimplicialComplex::empty()).unwrap().is_empty());
        assert!(matching_subcomplex_compatible(&PartialMatching::empty(), d.l()));
        // (2) < (0,2): the vertex is in L, the edge is not
        assert!(!matching_subcomplex_compatible(&sigma, d.l()));
        assert!(matches!(
            restrict_matching(&sigma, d.l()).unwrap_err(),
            Error::StraddlingPair { .. }
        ));
        let inner = PartialMatching::new([(s(&[1]), s(&[0, 1]))]);
        assert_eq!(restrict_matching(&inner, d.l()).unwrap(), inner);
        assert!(restrict_matching(&inner, d.m()).unwrap().is_empty());
    }

    #[test]
    fn empty_matching_reproduces_standard_sequence() {
        let d = split(fixtures::sphere_split());
        let c = Cosheaf::constant(d.k(), 1, f3());
        let mmv = build_morse_mv_ses(&d, &c, &PartialMatching::empty()).unwrap();
        let std = build_mv_ses(&d, &c).unwrap();
        assert_eq!(mmv.ses().left(), std.ses().left());
        assert_eq!(mmv.ses().right(), std.ses().right());
        assert_eq!(mmv.ses().p(), std.ses().p());
        assert_eq!(mmv.ses().q(), std.ses().q());
    }

    #[test]
    fn circle_matching_in_one_arc() {
        let d = split(fixtures::circle_split());
        let c = Cosheaf::constant(d.k(), 1, f3());
        let sigma = PartialMatching::new([(s(&[1]), s(&[0, 1]))]);
        let mmv = build_morse_mv_ses(&d, &c, &sigma).unwrap();
        assert!(mmv.straddling_blocks_vanish());
        assert!(mmv.cube_commutes());
        let cmp = mmv.compare().unwrap();
        assert!(cmp.agree, "{:?}", cmp.first_difference);
        assert!(mmv.ses().long_exact_sequence().unwrap().is_exact());
    }

    #[test]
    fn morse_mv_on_all_splits() {
        for x in fixtures::splits() {
            let name = x.name;
            let d = split(x);
            for field in [Field::F2, f3()] {
                let c = Cosheaf::constant(d.k(), 1, field);
                let sigma = generate_compatible_matching(d.k(), &c, &[d.l(), d.m()]);
                let mmv = build_morse_mv_ses(&d, &c, &sigma).unwrap();
                assert!(mmv.straddling_blocks_vanish(), "{name}");
                assert!(mmv.cube_commutes(), "{name}");
                assert!(mmv.compare().unwrap().agree, "{name}");
            }
        }
    }

    #[test]
    fn straddling_matching_rejected() {
        let d = split(fixtures::circle_split());
        let c = Cosheaf::constant(d.k(), 1, f3());
        let sigma = generate_matching(d.k(), &c);
        assert!(!sigma.is_subcomplex_compatible(d.l()));
        assert!(matches!(
            build_morse_mv_ses(&d, &c, &sigma).unwrap_err(),
            Error::StraddlingPair { .. }
        ));
    }

    #[test]
    fn comparison_reports_first_difference() {
        let circle = split(fixtures::circle_split());
        let sphere = split(fixtures::sphere_split());
        let a = build_mv_ses(&circle, &Cosheaf::constant(circle.k(), 1, f3()))
            .unwrap()
            .long_exact_sequence()
            .unwrap();
        let b = build_mv_ses(&sphere, &Cosheaf::constant(sphere.k(), 1, f3()))
            .unwrap()
            .long_exact_sequence()
            .unwrap();
        assert!(compare_les(&a, &a).agree);
        let cmp = compare_les(&a, &b);
        assert!(!cmp.agree);
        assert_eq!(cmp.first_difference.as_deref(), Some("H_1(left): dimension 0 vs 1"));
    }
}
