//! Turning-angle accounting for factorization words.
//!
//! A node with monodromy `A` turns a boundary vector `v` by the angle
//! `theta` with `tan(theta) = (Av x v) / (Av . v)`. Both inputs to the
//! two-argument arctangent are exact integers, so this module is the only
//! place floating point enters, and it enters last.
//!
//! For a trivial-product word of `12n` single-multiplicity factors the
//! angles sum to `2 pi n`, independently of the starting vector.

use num_traits::ToPrimitive;

use crate::base::FactorizationWord;
use crate::error::TurningError;
use crate::lattice::{cross, dot, LatticeVector, ParabolicMonodromy};

/// Per-factor turning angles and their sum, in radians.
#[derive(Clone, Debug, PartialEq)]
pub struct TurningReport {
    pub angles: Vec<f64>,
    pub total: f64,
}

/// Angle between `v` and its image under the node monodromy, in (-pi, pi).
///
/// Always nonnegative in exact arithmetic: `Av x v = mult^2 (v x e)^2 >= 0`.
pub fn node_turning_angle(
    p: &ParabolicMonodromy,
    v: &LatticeVector,
) -> Result<f64, TurningError> {
    if v.is_zero() {
        return Err(TurningError::ZeroVector);
    }
    let image = p.apply(v);
    let c = cross(&image, v);
    let d = dot(&image, v);
    Ok(f64::atan2(big_to_f64(&c), big_to_f64(&d)))
}

/// Walk `v0` through the word, factor 0 first, summing the per-node angles.
pub fn total_turning(
    word: &FactorizationWord,
    v0: &LatticeVector,
) -> Result<TurningReport, TurningError> {
    if v0.is_zero() {
        return Err(TurningError::ZeroVector);
    }
    let mut angles = Vec::with_capacity(word.len());
    let mut current = v0.clone();
    for p in &word.factors {
        angles.push(node_turning_angle(p, &current)?);
        current = p.apply(&current);
    }
    let total = angles.iter().sum();
    Ok(TurningReport { angles, total })
}

fn big_to_f64(n: &num_bigint::BigInt) -> f64 {
    n.to_f64().expect("BigInt converts to f64, possibly with rounding")
}
