//! Normalization of disk bases.
//!
//! [`reduce_n`] drives every corner invariant `n_i` into {0, 1} by branch
//! moves: while some `n_s = N >= 2` is maximal, walk forward from `s` to the
//! first edge with `|u_j x e_s| < N` and push the hot branch curve there.
//! Each outer iteration removes one copy of `N` from the multiset of `n`
//! values and inserts something smaller, so the sorted multiset strictly
//! decreases; that is asserted at runtime.
//!
//! [`to_toric`] chains the full pipeline down to a Delzant fan, and
//! [`minimal_model`] blows a Delzant fan down to a 3- or 4-edge core.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::base::{Corner, DiskBase};
use crate::error::NormalizeError;
use crate::lattice::cross;
use crate::moves::{
    at_blowdown, branch_move, nodal_trade, split_node, toric_blowdown, toric_blowup,
    MoveDirection, MoveRecord, TradeDirection,
};

/// Upper bound on branch moves per [`reduce_n`] run. The strict-decrease
/// argument guarantees termination; the cap guards against implementation
/// bugs, not against inputs.
pub const MOVE_CAP: usize = 1_000_000;

/// Replayable log of a normalization run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalizationTrace {
    pub steps: Vec<MoveRecord>,
    /// Maximum `n` value at the start of each outer iteration; the final
    /// entry is always <= 1.
    pub max_n_history: Vec<BigInt>,
}

fn require_valid(base: &DiskBase) -> Result<(), NormalizeError> {
    let report = base.validate();
    if report.passed() {
        Ok(())
    } else {
        Err(NormalizeError::Invalid { report })
    }
}

fn sorted_desc(mut ns: Vec<BigInt>) -> Vec<BigInt> {
    ns.sort_unstable_by(|a, b| b.cmp(a));
    ns
}

/// Drive all `n_i` into {0, 1} by branch moves. Every corner must already
/// be a node; `n = 0` corners are carried through untouched.
pub fn reduce_n(base: &DiskBase) -> Result<(DiskBase, NormalizationTrace), NormalizeError> {
    require_valid(base)?;
    if base.corners.iter().any(|c| c.is_vertex()) {
        return Err(NormalizeError::VerticesPresent);
    }
    let mut cur = base.clone();
    let mut trace = NormalizationTrace::default();
    loop {
        let ns = cur.n_values();
        let n_max = ns.iter().max().expect("nonempty base").clone();
        trace.max_n_history.push(n_max.clone());
        if n_max <= BigInt::one() {
            break;
        }
        let k = cur.len();
        let s = ns.iter().position(|n| *n == n_max).expect("max attained");
        let eigen_s = match &cur.corners[s] {
            Corner::Node { eigen, .. } => eigen.clone(),
            Corner::Vertex => unreachable!("vertices were rejected above"),
        };
        // smallest forward offset whose edge sees the eigenline at a value
        // below N; existence is what makes the algorithm total
        let reach = (1..k).find(|r| cross(cur.normal((s + r) % k), &eigen_s).abs() < n_max);
        let reach = match reach {
            Some(r) => r,
            None => {
                return Err(NormalizeError::NoReduction { n: n_max, dump: format!("{cur:?}") })
            }
        };
        let before = sorted_desc(ns);
        for step in 0..reach {
            let j = (s + step) % k;
            let (next, rec) = branch_move(&cur, j, MoveDirection::Forward)?;
            cur = next;
            trace.steps.push(rec);
            if trace.steps.len() > MOVE_CAP {
                return Err(NormalizeError::MoveCapExceeded { cap: MOVE_CAP, ns: cur.n_values() });
            }
        }
        let after = sorted_desc(cur.n_values());
        if after >= before {
            return Err(NormalizeError::NoProgress { before, after });
        }
    }
    Ok((cur, trace))
}

/// All corners are vertices (validity then forces a Delzant fan).
pub fn is_delzant(base: &DiskBase) -> bool {
    base.validate().passed() && base.corners.iter().all(|c| c.is_vertex())
}

/// Transform any valid disk base into a Delzant fan with the same Euler
/// characteristic: trade vertices to nodes, split multiplicities, reduce
/// all `n` into {0, 1}, trade `n = 1` nodes back, and exchange each `n = 0`
/// node for a toric blow-up.
pub fn to_toric(base: &DiskBase) -> Result<(DiskBase, NormalizationTrace), NormalizeError> {
    require_valid(base)?;
    let chi = base.euler_characteristic();
    let mut cur = base.clone();
    let mut steps = Vec::new();
    for i in 0..cur.len() {
        if cur.corners[i].is_vertex() {
            let (next, rec) = nodal_trade(&cur, i, TradeDirection::VertexToNode)?;
            cur = next;
            steps.push(rec);
        }
    }
    while let Some(i) = cur.corners.iter().position(|c| match c {
        Corner::Node { multiplicity, .. } => *multiplicity >= 2,
        Corner::Vertex => false,
    }) {
        let (next, rec) = split_node(&cur, i)?;
        cur = next;
        steps.push(rec);
    }
    let (reduced, trace) = reduce_n(&cur)?;
    cur = reduced;
    steps.extend(trace.steps);
    for i in 0..cur.len() {
        if cur.corners[i].is_node() && cur.n_value(i).is_one() {
            let (next, rec) = nodal_trade(&cur, i, TradeDirection::NodeToVertex)?;
            cur = next;
            steps.push(rec);
        }
    }
    // each remaining node has n = 0; blow it down and restore the Euler
    // characteristic with a toric blow-up at the freed vertex
    while cur.corners.iter().any(|c| c.is_node()) {
        let k = cur.len();
        let i = (0..k)
            .find(|&i| cur.corners[i].is_node() && cur.corners[(i + 1) % k].is_vertex())
            .expect("a run of n = 0 nodes always ends at a vertex");
        debug_assert!(cur.n_value(i).is_zero());
        let (next, rec) = at_blowdown(&cur, i)?;
        cur = next;
        steps.push(rec);
        let new_k = cur.len();
        let merged_edge = if i == 0 { new_k - 1 } else { i - 1 };
        let corner_after = (merged_edge + 1) % new_k;
        let (next, rec) = toric_blowup(&cur, corner_after)?;
        cur = next;
        steps.push(rec);
    }
    debug_assert!(is_delzant(&cur));
    debug_assert_eq!(cur.euler_characteristic(), chi);
    Ok((cur, NormalizationTrace { steps, max_n_history: trace.max_n_history }))
}

/// Blow a Delzant fan down to a minimal model (3 or 4 edges), returning the
/// reduced fan and the number of blow-downs.
pub fn minimal_model(base: &DiskBase) -> Result<(DiskBase, usize), NormalizeError> {
    require_valid(base)?;
    if !is_delzant(base) {
        return Err(NormalizeError::VerticesPresent);
    }
    let mut cur = base.clone();
    let mut count = 0;
    loop {
        let k = cur.len();
        let removable = (0..k).find(|&i| {
            cur.normal(cur.prev(i)).add(cur.normal((i + 1) % k)) == *cur.normal(i)
        });
        match removable {
            Some(i) if k > 3 => {
                cur = toric_blowdown(&cur, i)?.0;
                count += 1;
            }
            _ => break,
        }
    }
    debug_assert!(cur.len() == 3 || cur.len() == 4, "minimal model has {} edges", cur.len());
    Ok((cur, count))
}
