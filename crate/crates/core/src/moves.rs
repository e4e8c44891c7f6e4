//! Base surgeries.
//!
//! Every operation consumes a valid base (or word), returns the surgered
//! value together with a [`MoveRecord`], and leaves the input untouched.
//! Records carry structural hashes of both sides so a move log can be
//! replayed and checked move by move.
//!
//! Branch moves realize the elementary transformation
//! `(A_j, A_{j+1}) -> (A_j A_{j+1} A_j^{-1}, A_j)` on the corner word while
//! replacing `u_j` by `A_j u_{j+1}`; the inverse move is derived from the
//! defining relations. Slide parameters of the two corners involved reset
//! to 1/2, since the surgery does not track branch-curve endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::base::{half, Corner, DiskBase, Edge, FactorizationWord};
use crate::error::MoveError;
use crate::lattice::ParabolicMonodromy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveDirection {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TradeDirection {
    VertexToNode,
    NodeToVertex,
}

/// A replayable description of a single surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Branch { index: usize, direction: MoveDirection },
    Trade { index: usize, direction: TradeDirection },
    Slide { index: usize, t: BigRational },
    AtBlowup { edge: usize, t: BigRational },
    AtBlowdown { index: usize },
    ToricBlowup { index: usize },
    ToricBlowdown { edge: usize },
    Split { index: usize },
    Hurwitz { index: usize, direction: MoveDirection },
}

impl MoveKind {
    pub fn name(&self) -> &'static str {
        match self {
            MoveKind::Branch { .. } => "branch",
            MoveKind::Trade { .. } => "trade",
            MoveKind::Slide { .. } => "slide",
            MoveKind::AtBlowup { .. } => "at-blowup",
            MoveKind::AtBlowdown { .. } => "at-blowdown",
            MoveKind::ToricBlowup { .. } => "toric-blowup",
            MoveKind::ToricBlowdown { .. } => "toric-blowdown",
            MoveKind::Split { .. } => "split",
            MoveKind::Hurwitz { .. } => "hurwitz",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub before_hash: u64,
    pub after_hash: u64,
}

fn record(kind: MoveKind, before: &DiskBase, after: &DiskBase) -> MoveRecord {
    MoveRecord {
        kind,
        before_hash: before.structural_hash(),
        after_hash: after.structural_hash(),
    }
}

fn require_valid(base: &DiskBase) -> Result<(), MoveError> {
    let report = base.validate();
    if report.passed() {
        Ok(())
    } else {
        Err(MoveError::Invalid { report })
    }
}

fn check_index(index: usize, len: usize) -> Result<(), MoveError> {
    if index < len {
        Ok(())
    } else {
        Err(MoveError::IndexOutOfRange { index, len })
    }
}

fn node_data(base: &DiskBase, i: usize) -> Result<(ParabolicMonodromy, u64), MoveError> {
    match &base.corners[i] {
        Corner::Node { eigen, multiplicity, .. } => Ok((
            ParabolicMonodromy::from_eigen_vector(eigen.clone(), *multiplicity)?,
            *multiplicity,
        )),
        Corner::Vertex => Err(MoveError::CornerNotNode { index: i }),
    }
}

/// Elementary branch move at corner `j` (forward `T_j`, backward `T_j^-1`).
///
/// Both corners `j` and `j+1` must be nodes: the move re-routes one branch
/// curve past the next. Refuses if the resulting set is not a defining set.
pub fn branch_move(
    base: &DiskBase,
    j: usize,
    direction: MoveDirection,
) -> Result<(DiskBase, MoveRecord), MoveError> {
    require_valid(base)?;
    let k = base.len();
    check_index(j, k)?;
    let jn = (j + 1) % k;
    let (mono_j, mult_j) = node_data(base, j)?;
    let (mono_jn, mult_jn) = node_data(base, jn)?;
    let (eigen_j, eigen_jn) = match (&base.corners[j], &base.corners[jn]) {
        (Corner::Node { eigen: a, .. }, Corner::Node { eigen: b, .. }) => (a.clone(), b.clone()),
        _ => unreachable!("node_data checked both corners"),
    };
    let mut out = base.clone();
    match direction {
        MoveDirection::Forward => {
            // u_j <- A_j u_{j+1};  word (A_j, A_{j+1}) -> (A_j A_{j+1} A_j^-1, A_j)
            out.edges[j].normal = mono_j.apply(base.normal(jn));
            out.corners[j] = Corner::Node {
                eigen: mono_j.apply(&eigen_jn),
                multiplicity: mult_jn,
                slide: half(),
            };
            out.corners[jn] = Corner::Node { eigen: eigen_j, multiplicity: mult_j, slide: half() };
        }
        MoveDirection::Backward => {
            // u_j <- A_{j+1}^-1 u_{j-1};  word (A_j, A_{j+1}) -> (A_{j+1}, A_{j+1}^-1 A_j A_{j+1})
            out.edges[j].normal = mono_jn.apply_inverse(base.normal(base.prev(j)));
            out.corners[j] = Corner::Node { eigen: eigen_jn, multiplicity: mult_jn, slide: half() };
            out.corners[jn] = Corner::Node {
                eigen: mono_jn.apply_inverse(&eigen_j),
                multiplicity: mult_j,
                slide: half(),
            };
        }
    }
    let report = out.validate();
    if !report.passed() {
        return Err(MoveError::ResultInvalid { report });
    }
    let rec = record(MoveKind::Branch { index: j, direction }, base, &out);
    Ok((out, rec))
}

/// Trade a smooth vertex for a node or back. Requires `n_i = 1` and, for
/// the node-to-vertex direction, multiplicity one.
pub fn nodal_trade(
    base: &DiskBase,
    i: usize,
    direction: TradeDirection,
) -> Result<(DiskBase, MoveRecord), MoveError> {
    require_valid(base)?;
    check_index(i, base.len())?;
    let mut out = base.clone();
    match (&base.corners[i], direction) {
        (Corner::Vertex, TradeDirection::VertexToNode) => {
            let e = base.normal(i).sub(base.normal(base.prev(i)));
            out.corners[i] = Corner::Node { eigen: e, multiplicity: 1, slide: half() };
        }
        (Corner::Node { multiplicity, .. }, TradeDirection::NodeToVertex) => {
            if *multiplicity != 1 {
                return Err(MoveError::MultiplicityNotOne { index: i, multiplicity: *multiplicity });
            }
            let n = base.n_value(i);
            if !n.is_one() {
                return Err(MoveError::WrongN { index: i, n, expected: BigInt::one() });
            }
            out.corners[i] = Corner::Vertex;
        }
        (Corner::Vertex, TradeDirection::NodeToVertex) => {
            return Err(MoveError::CornerNotNode { index: i });
        }
        (Corner::Node { .. }, TradeDirection::VertexToNode) => {
            return Err(MoveError::CornerNotVertex { index: i });
        }
    }
    debug_assert!(out.validate().passed());
    let rec = record(MoveKind::Trade { index: i, direction }, base, &out);
    Ok((out, rec))
}

/// Move a node along its eigenray: only the slide parameter changes.
pub fn nodal_slide(
    base: &DiskBase,
    i: usize,
    new_t: BigRational,
) -> Result<(DiskBase, MoveRecord), MoveError> {
    require_valid(base)?;
    check_index(i, base.len())?;
    if !new_t.is_positive() || new_t > BigRational::one() {
        return Err(MoveError::SlideOutOfRange { value: new_t.to_string() });
    }
    let mut out = base.clone();
    match &mut out.corners[i] {
        Corner::Node { slide, .. } => *slide = new_t.clone(),
        Corner::Vertex => return Err(MoveError::CornerNotNode { index: i }),
    }
    let rec = record(MoveKind::Slide { index: i, t: new_t }, base, &out);
    Ok((out, rec))
}

/// Split one singular point off a multiplicity-`m` node (`m >= 2`), leaving
/// two adjacent nodes on the same eigenline separated by a new edge.
pub fn split_node(base: &DiskBase, i: usize) -> Result<(DiskBase, MoveRecord), MoveError> {
    require_valid(base)?;
    check_index(i, base.len())?;
    let (eigen, multiplicity, slide) = match &base.corners[i] {
        Corner::Node { eigen, multiplicity, slide } => (eigen.clone(), *multiplicity, slide.clone()),
        Corner::Vertex => return Err(MoveError::CornerNotNode { index: i }),
    };
    if multiplicity < 2 {
        return Err(MoveError::MultiplicityNotOne { index: i, multiplicity });
    }
    let single = ParabolicMonodromy::from_eigen_vector(eigen.clone(), 1)?;
    let intermediate = single.apply(base.normal(i));
    let mut out = base.clone();
    out.edges.insert(i, Edge::new(intermediate));
    out.corners[i] = Corner::Node {
        eigen: eigen.clone(),
        multiplicity: multiplicity - 1,
        slide: slide.clone(),
    };
    out.corners.insert(i + 1, Corner::Node { eigen, multiplicity: 1, slide });
    debug_assert!(out.validate().passed());
    let rec = record(MoveKind::Split { index: i }, base, &out);
    Ok((out, rec))
}

/// Almost toric blow-up on an edge: duplicate the edge and insert an
/// `n = 0` node between the copies, its eigenline parallel to the boundary.
pub fn at_blowup(
    base: &DiskBase,
    edge: usize,
    t: BigRational,
) -> Result<(DiskBase, MoveRecord), MoveError> {
    require_valid(base)?;
    check_index(edge, base.len())?;
    if !t.is_positive() || t >= BigRational::one() {
        return Err(MoveError::BlowupParamOutOfRange { value: t.to_string() });
    }
    let u = base.normal(edge).clone();
    let (len_a, len_b) = match &base.edges[edge].length {
        Some(l) => (Some(&t * l), Some((BigRational::one() - &t) * l)),
        None => (None, None),
    };
    let mut out = base.clone();
    out.edges[edge].length = len_a;
    out.edges.insert(edge + 1, Edge { normal: u.clone(), length: len_b });
    out.corners.insert(edge + 1, Corner::Node { eigen: u, multiplicity: 1, slide: half() });
    debug_assert!(out.validate().passed());
    let rec = record(MoveKind::AtBlowup { edge, t }, base, &out);
    Ok((out, rec))
}

/// Inverse of [`at_blowup`]: delete a multiplicity-one `n = 0` node and
/// merge its two equal-normal edges.
pub fn at_blowdown(base: &DiskBase, i: usize) -> Result<(DiskBase, MoveRecord), MoveError> {
    require_valid(base)?;
    let k = base.len();
    check_index(i, k)?;
    match &base.corners[i] {
        Corner::Node { multiplicity: 1, .. } => {}
        Corner::Node { multiplicity, .. } => {
            return Err(MoveError::MultiplicityNotOne { index: i, multiplicity: *multiplicity });
        }
        Corner::Vertex => return Err(MoveError::CornerNotNode { index: i }),
    }
    let n = base.n_value(i);
    if !n.is_zero() {
        return Err(MoveError::WrongN { index: i, n, expected: BigInt::zero() });
    }
    let prev = base.prev(i);
    let merged = match (&base.edges[prev].length, &base.edges[i].length) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    let mut out = base.clone();
    out.edges.remove(i);
    out.corners.remove(i);
    let merged_index = if i == 0 { k - 2 } else { i - 1 };
    out.edges[merged_index].length = merged;
    debug_assert!(out.validate().passed());
    let rec = record(MoveKind::AtBlowdown { index: i }, base, &out);
    Ok((out, rec))
}

/// Toric blow-up at a vertex: insert the ray `u_{i-1} + u_i`.
pub fn toric_blowup(base: &DiskBase, i: usize) -> Result<(DiskBase, MoveRecord), MoveError> {
    require_valid(base)?;
    check_index(i, base.len())?;
    if !base.corners[i].is_vertex() {
        return Err(MoveError::CornerNotVertex { index: i });
    }
    let w = base.normal(base.prev(i)).add(base.normal(i));
    let mut out = base.clone();
    out.edges.insert(i, Edge::new(w));
    out.corners.insert(i + 1, Corner::Vertex);
    debug_assert!(out.validate().passed());
    let rec = record(MoveKind::ToricBlowup { index: i }, base, &out);
    Ok((out, rec))
}

/// Toric blow-down of edge `i`: requires vertex corners on both sides and
/// `u_{i-1} + u_{i+1} = u_i`.
pub fn toric_blowdown(base: &DiskBase, i: usize) -> Result<(DiskBase, MoveRecord), MoveError> {
    require_valid(base)?;
    let k = base.len();
    check_index(i, k)?;
    let next_corner = (i + 1) % k;
    if !base.corners[i].is_vertex() {
        return Err(MoveError::CornerNotVertex { index: i });
    }
    if !base.corners[next_corner].is_vertex() {
        return Err(MoveError::CornerNotVertex { index: next_corner });
    }
    let sum = base.normal(base.prev(i)).add(base.normal((i + 1) % k));
    if &sum != base.normal(i) {
        return Err(MoveError::NotBlowdownRay { index: i });
    }
    let mut out = base.clone();
    out.edges.remove(i);
    out.corners.remove(if i == k - 1 { k - 1 } else { i + 1 });
    debug_assert!(out.validate().passed());
    let rec = record(MoveKind::ToricBlowdown { edge: i }, base, &out);
    Ok((out, rec))
}

/// Hurwitz move on a factorization word; the conjugated factor is
/// re-expressed as eigenvector plus multiplicity. The word product is
/// unchanged.
pub fn hurwitz_move(
    word: &FactorizationWord,
    j: usize,
    direction: MoveDirection,
) -> Result<(FactorizationWord, MoveRecord), MoveError> {
    if j + 1 >= word.len() {
        return Err(MoveError::IndexOutOfRange { index: j, len: word.len() });
    }
    let mut out = word.clone();
    match direction {
        MoveDirection::Forward => {
            let conj = word.factors[j + 1].conjugated(&word.factors[j].to_matrix())?;
            out.factors[j + 1] = word.factors[j].clone();
            out.factors[j] = conj;
        }
        MoveDirection::Backward => {
            let inv = word.factors[j + 1].to_matrix().inverse()?;
            let conj = word.factors[j].conjugated(&inv)?;
            out.factors[j] = word.factors[j + 1].clone();
            out.factors[j + 1] = conj;
        }
    }
    let rec = MoveRecord {
        kind: MoveKind::Hurwitz { index: j, direction },
        before_hash: word.structural_hash(),
        after_hash: out.structural_hash(),
    };
    Ok((out, rec))
}

/// Apply a recorded kind to a base.
pub fn apply_to_base(base: &DiskBase, kind: &MoveKind) -> Result<(DiskBase, MoveRecord), MoveError> {
    match kind {
        MoveKind::Branch { index, direction } => branch_move(base, *index, *direction),
        MoveKind::Trade { index, direction } => nodal_trade(base, *index, *direction),
        MoveKind::Slide { index, t } => nodal_slide(base, *index, t.clone()),
        MoveKind::AtBlowup { edge, t } => at_blowup(base, *edge, t.clone()),
        MoveKind::AtBlowdown { index } => at_blowdown(base, *index),
        MoveKind::ToricBlowup { index } => toric_blowup(base, *index),
        MoveKind::ToricBlowdown { edge } => toric_blowdown(base, *edge),
        MoveKind::Split { index } => split_node(base, *index),
        MoveKind::Hurwitz { .. } => {
            Err(MoveError::WrongTarget { kind: kind.name().into(), target: "base".into() })
        }
    }
}

/// Replay a move log, checking every hash along the way.
pub fn replay(base: &DiskBase, records: &[MoveRecord]) -> Result<DiskBase, MoveError> {
    let mut cur = base.clone();
    for rec in records {
        let found = cur.structural_hash();
        if found != rec.before_hash {
            return Err(MoveError::HashMismatch { expected: rec.before_hash, found });
        }
        let (next, fresh) = apply_to_base(&cur, &rec.kind)?;
        if fresh.after_hash != rec.after_hash {
            return Err(MoveError::HashMismatch {
                expected: rec.after_hash,
                found: fresh.after_hash,
            });
        }
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vec2;

    fn triangle() -> DiskBase {
        DiskBase::from_fan([vec2(1, 0), vec2(0, 1), vec2(-1, -1)])
    }

    fn traded_triangle() -> DiskBase {
        let mut base = triangle();
        for i in 0..3 {
            base = nodal_trade(&base, i, TradeDirection::VertexToNode).unwrap().0;
        }
        base
    }

    #[test]
    fn trade_produces_expected_eigenvectors() {
        let (base, _) = nodal_trade(&triangle(), 0, TradeDirection::VertexToNode).unwrap();
        assert_eq!(
            base.corners[0],
            Corner::Node { eigen: vec2(2, 1), multiplicity: 1, slide: half() }
        );
        let all = traded_triangle();
        assert!(all.validate().passed());
        assert_eq!(
            all.corners,
            vec![
                Corner::node(vec2(2, 1), 1),
                Corner::node(vec2(-1, 1), 1),
                Corner::node(vec2(-1, -2), 1),
            ]
        );
    }

    #[test]
    fn trade_untrade_round_trip() {
        let tri = triangle();
        let (traded, _) = nodal_trade(&tri, 1, TradeDirection::VertexToNode).unwrap();
        let (back, _) = nodal_trade(&traded, 1, TradeDirection::NodeToVertex).unwrap();
        assert_eq!(back, tri);
        assert!(matches!(
            nodal_trade(&tri, 1, TradeDirection::NodeToVertex),
            Err(MoveError::CornerNotNode { index: 1 })
        ));
    }

    #[test]
    fn untrade_refuses_orbifold_corner() {
        // corner 0 is a node with n = 2 (a rational-ball corner)
        let base = DiskBase {
            edges: vec![
                Edge::new(vec2(1, 0)),
                Edge::new(vec2(0, 1)),
                Edge::new(vec2(-1, -4)),
            ],
            corners: vec![Corner::node(vec2(1, 2), 1), Corner::Vertex, Corner::Vertex],
        };
        assert!(base.validate().passed());
        assert!(matches!(
            nodal_trade(&base, 0, TradeDirection::NodeToVertex),
            Err(MoveError::WrongN { index: 0, .. })
        ));
    }

    #[test]
    fn branch_move_example() {
        let base = traded_triangle();
        let (moved, _) = branch_move(&base, 0, MoveDirection::Forward).unwrap();
        assert_eq!(moved.edges[0].normal, vec2(4, 3));
        assert_eq!(moved.edges[1].normal, vec2(0, 1));
        assert_eq!(moved.edges[2].normal, vec2(-1, -1));
        // tau action: the new n sequence is (n_2, |u_2 x e_1|, n_3) = (1, 2, 1)
        assert_eq!(
            moved.n_values(),
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(1)]
        );
    }

    #[test]
    fn branch_move_round_trip() {
        let base = traded_triangle();
        for j in 0..3 {
            let (fwd, _) = branch_move(&base, j, MoveDirection::Forward).unwrap();
            let (back, _) = branch_move(&fwd, j, MoveDirection::Backward).unwrap();
            assert_eq!(back, base, "round trip at corner {j}");
        }
    }

    #[test]
    fn branch_move_requires_nodes() {
        let tri = triangle();
        assert!(matches!(
            branch_move(&tri, 0, MoveDirection::Forward),
            Err(MoveError::CornerNotNode { .. })
        ));
        let (one_node, _) = nodal_trade(&tri, 0, TradeDirection::VertexToNode).unwrap();
        assert!(matches!(
            branch_move(&one_node, 0, MoveDirection::Forward),
            Err(MoveError::CornerNotNode { index: 1 })
        ));
    }

    #[test]
    fn slide_changes_only_metadata() {
        let base = traded_triangle();
        let t = BigRational::new(BigInt::from(3), BigInt::from(4));
        let (slid, _) = nodal_slide(&base, 0, t.clone()).unwrap();
        assert_eq!(slid.edges, base.edges);
        assert_eq!(slid.n_values(), base.n_values());
        match &slid.corners[0] {
            Corner::Node { slide, .. } => assert_eq!(slide, &t),
            Corner::Vertex => panic!("corner became a vertex"),
        }
        assert!(matches!(
            nodal_slide(&base, 0, BigRational::new(BigInt::from(3), BigInt::from(2))),
            Err(MoveError::SlideOutOfRange { .. })
        ));
        assert!(matches!(
            nodal_slide(&triangle(), 0, half()),
            Err(MoveError::CornerNotNode { .. })
        ));
    }

    #[test]
    fn split_multiplicity_two_node() {
        let base = DiskBase {
            edges: vec![
                Edge::new(vec2(1, 0)),
                Edge::new(vec2(0, 1)),
                Edge::new(vec2(-1, -2)),
            ],
            corners: vec![Corner::node(vec2(1, 1), 2), Corner::Vertex, Corner::Vertex],
        };
        let before_chi = base.euler_characteristic();
        let before_mono = base.boundary_monodromy().unwrap();
        let (split, _) = split_node(&base, 0).unwrap();
        assert!(split.validate().passed());
        assert_eq!(split.len(), 4);
        assert_eq!(split.edges[0].normal, vec2(0, -1));
        assert_eq!(split.corners[0], Corner::node(vec2(1, 1), 1));
        assert_eq!(split.corners[1], Corner::node(vec2(1, 1), 1));
        assert_eq!(split.euler_characteristic(), before_chi);
        assert_eq!(split.boundary_monodromy().unwrap(), before_mono);
        assert!(matches!(
            split_node(&split, 0),
            Err(MoveError::MultiplicityNotOne { .. })
        ));
    }

    #[test]
    fn at_blowup_and_blowdown() {
        let tri = triangle();
        let (up, _) = at_blowup(&tri, 0, half()).unwrap();
        assert_eq!(
            up.edges.iter().map(|e| e.normal.clone()).collect::<Vec<_>>(),
            vec![vec2(1, 0), vec2(1, 0), vec2(0, 1), vec2(-1, -1)]
        );
        assert_eq!(up.corners[1], Corner::node(vec2(1, 0), 1));
        assert_eq!(up.n_value(1), BigInt::zero());
        assert_eq!(tri.euler_characteristic(), 3);
        assert_eq!(up.euler_characteristic(), 4);
        let (down, _) = at_blowdown(&up, 1).unwrap();
        assert_eq!(down, tri);
        assert!(matches!(at_blowdown(&tri, 0), Err(MoveError::CornerNotNode { .. })));
        let traded = traded_triangle();
        assert!(matches!(at_blowdown(&traded, 0), Err(MoveError::WrongN { .. })));
    }

    #[test]
    fn toric_blowup_gives_hirzebruch_fan() {
        let tri = triangle();
        let (up, _) = toric_blowup(&tri, 1).unwrap();
        assert_eq!(
            up.edges.iter().map(|e| e.normal.clone()).collect::<Vec<_>>(),
            vec![vec2(1, 0), vec2(1, 1), vec2(0, 1), vec2(-1, -1)]
        );
        assert!(up.corners.iter().all(|c| c.is_vertex()));
        assert!(up.validate().passed());
        let (down, _) = toric_blowdown(&up, 1).unwrap();
        assert_eq!(down, tri);
        assert!(matches!(
            toric_blowup(&traded_triangle(), 0),
            Err(MoveError::CornerNotVertex { .. })
        ));
    }

    #[test]
    fn toric_blowdown_refuses_triangle() {
        let tri = triangle();
        for i in 0..3 {
            assert!(matches!(
                toric_blowdown(&tri, i),
                Err(MoveError::NotBlowdownRay { .. })
            ));
        }
    }

    #[test]
    fn toric_blowdown_wrapping_edge() {
        let tri = triangle();
        let (up, _) = toric_blowup(&tri, 0).unwrap();
        // inserted ray sits at index 0; remove it again
        let (down, _) = toric_blowdown(&up, 0).unwrap();
        assert_eq!(down.len(), 3);
        assert!(down.validate().passed());
        // and exercise the wrap case by rotating the inserted ray to the end
        let rotated = up.rotated(1);
        let (down, _) = toric_blowdown(&rotated, 3).unwrap();
        assert!(down.validate().passed());
        assert_eq!(down.canonical_form().unwrap(), tri.canonical_form().unwrap());
    }

    #[test]
    fn hurwitz_example_and_round_trip() {
        let word = FactorizationWord::new(vec![
            ParabolicMonodromy::from_eigen(1, 0, 1).unwrap(),
            ParabolicMonodromy::from_eigen(0, 1, 1).unwrap(),
        ]);
        let (moved, _) = hurwitz_move(&word, 0, MoveDirection::Forward).unwrap();
        assert_eq!(moved.factors[0].eigen(), &vec2(1, 1));
        assert_eq!(moved.factors[1].eigen(), &vec2(1, 0));
        assert_eq!(moved.product(), word.product());
        let (back, _) = hurwitz_move(&moved, 0, MoveDirection::Backward).unwrap();
        assert_eq!(back, word);
        assert!(matches!(
            hurwitz_move(&word, 1, MoveDirection::Forward),
            Err(MoveError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn replay_checks_hashes() {
        let tri = triangle();
        let mut records = Vec::new();
        let mut base = tri.clone();
        for i in 0..3 {
            let (next, rec) = nodal_trade(&base, i, TradeDirection::VertexToNode).unwrap();
            records.push(rec);
            base = next;
        }
        let replayed = replay(&tri, &records).unwrap();
        assert_eq!(replayed, base);
        let (other, _) = at_blowup(&tri, 0, half()).unwrap();
        assert!(matches!(
            replay(&other, &records),
            Err(MoveError::HashMismatch { .. })
        ));
    }
}
