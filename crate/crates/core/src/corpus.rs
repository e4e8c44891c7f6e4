//! Seed bases and the randomized scramble harness behind the test corpus.
//!
//! All randomness is drawn from a caller-seeded generator, so corpus runs
//! are reproducible from a single seed.

use rand::Rng;

use crate::base::{half, DiskBase, FactorizationWord};
use crate::lattice::{vec2, LatticeVector, ParabolicMonodromy};
use crate::moves::{at_blowup, branch_move, nodal_trade, MoveDirection, TradeDirection};

pub fn cp2_triangle() -> DiskBase {
    DiskBase::from_fan([vec2(1, 0), vec2(0, 1), vec2(-1, -1)])
}

pub fn square_fan() -> DiskBase {
    DiskBase::from_fan([vec2(1, 0), vec2(0, 1), vec2(-1, 0), vec2(0, -1)])
}

pub fn hirzebruch_one() -> DiskBase {
    DiskBase::from_fan([vec2(1, 0), vec2(1, 1), vec2(0, 1), vec2(-1, -1)])
}

pub fn delzant_pentagon() -> DiskBase {
    DiskBase::from_fan([vec2(1, 0), vec2(1, 1), vec2(0, 1), vec2(-1, -1), vec2(0, -1)])
}

/// The standard trivial-product word with `12n` parabolic factors,
/// alternating eigenvectors (0,1) and (1,0).
pub fn alternating_word(n: usize) -> FactorizationWord {
    let factors = (0..12 * n)
        .map(|i| {
            if i % 2 == 0 {
                ParabolicMonodromy::from_eigen(0, 1, 1).unwrap()
            } else {
                ParabolicMonodromy::from_eigen(1, 0, 1).unwrap()
            }
        })
        .collect();
    FactorizationWord::new(factors)
}

/// Build a disk base whose corner word is the given trivial-product word:
/// normals are propagated through `A_i u_i = u_{i-1}` from `u_{k-1} = (1,0)`.
pub fn disk_from_word(word: &FactorizationWord) -> DiskBase {
    let k = word.len();
    assert!(k >= 3, "need at least three factors");
    assert!(word.is_trivial(), "corner word of a vertex-free disk base must be trivial");
    let mut normals = vec![LatticeVector::zero(); k];
    normals[k - 1] = vec2(1, 0);
    for i in (0..k - 1).rev() {
        normals[i] = word.factors[i + 1].apply(&normals[i + 1]);
    }
    let edges = normals.into_iter().map(crate::base::Edge::new).collect();
    let corners = word
        .factors
        .iter()
        .map(|p| crate::base::Corner::Node {
            eigen: p.eigen().clone(),
            multiplicity: p.multiplicity(),
            slide: half(),
        })
        .collect();
    DiskBase::new(edges, corners)
}

/// The twelve-node vertex-free disk base with trivial boundary monodromy.
pub fn e1_disk() -> DiskBase {
    disk_from_word(&alternating_word(1))
}

/// The named seed bases the corpus scrambles start from.
pub fn generators() -> Vec<(&'static str, DiskBase)> {
    vec![
        ("cp2-triangle", cp2_triangle()),
        ("square-fan", square_fan()),
        ("hirzebruch-1", hirzebruch_one()),
        ("delzant-pentagon", delzant_pentagon()),
        ("e1-disk", e1_disk()),
    ]
}

/// Scramble a seed base: up to `max_blowups` almost toric blow-ups on
/// random edges, a full vertex-to-node trade pass, then up to `max_branch`
/// random branch moves (refused moves are skipped). Returns the scrambled
/// base and the number of blow-ups performed.
pub fn scramble(
    rng: &mut impl Rng,
    base: &DiskBase,
    max_blowups: usize,
    max_branch: usize,
) -> (DiskBase, usize) {
    let mut out = base.clone();
    let blowups = rng.gen_range(0..=max_blowups);
    for _ in 0..blowups {
        let edge = rng.gen_range(0..out.len());
        out = at_blowup(&out, edge, half()).expect("blow-up of a valid base").0;
    }
    for i in 0..out.len() {
        if out.corners[i].is_vertex() {
            out = nodal_trade(&out, i, TradeDirection::VertexToNode)
                .expect("trade of a smooth vertex")
                .0;
        }
    }
    let target = rng.gen_range(0..=max_branch);
    let mut performed = 0;
    let mut attempts = 0;
    while performed < target && attempts < 20 * (max_branch + 1) {
        attempts += 1;
        let j = rng.gen_range(0..out.len());
        let direction = if rng.gen_bool(0.5) {
            MoveDirection::Forward
        } else {
            MoveDirection::Backward
        };
        if let Ok((next, _)) = branch_move(&out, j, direction) {
            out = next;
            performed += 1;
        }
    }
    (out, blowups)
}
