//! Diffeomorphism-type classification of closed almost toric four-manifolds.
//!
//! Disk bases run through [`crate::normalize::to_toric`] and
//! [`crate::normalize::minimal_model`]; the type then depends only on the
//! Euler characteristic, except at chi = 4 where the parity of the
//! Hirzebruch parameter separates the two possible types. Non-disk bases
//! are a table lookup gated by their node-count invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

use crate::base::{Base, DiskBase, FactorizationWord};
use crate::error::ClassifyError;
use crate::lattice::{cross, LatticeVector};
use crate::normalize::{minimal_model, to_toric};

/// The diffeomorphism type of the total space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassificationResult {
    /// `CP^2 # n conj(CP^2)`; `n = 0` is the projective plane itself.
    CP2BlownUp(u64),
    S2xS2,
    /// Sphere bundle over the torus, possibly blown up; `twisted` is the
    /// parity of the boundary twist.
    SphereBundleOverT2 { twisted: bool, blowups: u64 },
    K3,
    Enriques,
    TorusBundleOverT2 { lambda: i64, chern: (i64, i64) },
    TorusBundleOverK { lambda: i64, chern: (i64, i64) },
}

impl fmt::Display for ClassificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationResult::CP2BlownUp(0) => write!(f, "CP2"),
            ClassificationResult::CP2BlownUp(n) => write!(f, "CP2 # {n} CP2bar"),
            ClassificationResult::S2xS2 => write!(f, "S2 x S2"),
            ClassificationResult::SphereBundleOverT2 { twisted, blowups } => {
                let bundle = if *twisted { "S2 ~x T2" } else { "S2 x T2" };
                if *blowups == 0 {
                    write!(f, "{bundle}")
                } else {
                    write!(f, "{bundle} # {blowups} CP2bar")
                }
            }
            ClassificationResult::K3 => write!(f, "K3"),
            ClassificationResult::Enriques => write!(f, "Enriques"),
            ClassificationResult::TorusBundleOverT2 { lambda, chern: (m, n) } => {
                write!(f, "T2-bundle lambda={lambda} chern=({m},{n})")
            }
            ClassificationResult::TorusBundleOverK { lambda, chern: (m, n) } => {
                write!(f, "T2-bundle-over-K lambda={lambda} chern=({m},{n})")
            }
        }
    }
}

/// Classify the total space of any valid base.
pub fn classify(base: &Base) -> Result<ClassificationResult, ClassifyError> {
    let report = base.validate();
    if !report.passed() {
        return Err(ClassifyError::Invalid { report });
    }
    match base {
        Base::Disk(disk) => classify_disk(disk),
        Base::NonDisk(nb) => Ok(match nb.topology {
            crate::base::Topology::Cylinder | crate::base::Topology::Moebius => {
                ClassificationResult::SphereBundleOverT2 {
                    twisted: nb.lambda.rem_euclid(2) == 1,
                    blowups: nb.nodes,
                }
            }
            crate::base::Topology::Sphere => ClassificationResult::K3,
            crate::base::Topology::Rp2 => ClassificationResult::Enriques,
            crate::base::Topology::Torus => ClassificationResult::TorusBundleOverT2 {
                lambda: nb.lambda,
                chern: nb.chern.expect("validated torus base carries a Chern class"),
            },
            crate::base::Topology::KleinBottle => ClassificationResult::TorusBundleOverK {
                lambda: nb.lambda,
                chern: nb.chern.expect("validated klein base carries a Chern class"),
            },
        }),
    }
}

fn classify_disk(disk: &DiskBase) -> Result<ClassificationResult, ClassifyError> {
    let chi = disk.euler_characteristic();
    let (fan, _) = to_toric(disk)?;
    let (core, _) = minimal_model(&fan)?;
    debug_assert!(chi >= 3);
    let blowups = (chi - 3) as u64;
    match core.len() {
        3 => Ok(ClassificationResult::CP2BlownUp(blowups)),
        4 => {
            if chi == 4 {
                if hirzebruch_parameter(&core)?.is_even() {
                    Ok(ClassificationResult::S2xS2)
                } else {
                    Ok(ClassificationResult::CP2BlownUp(1))
                }
            } else {
                Ok(ClassificationResult::CP2BlownUp(blowups))
            }
        }
        n => unreachable!("minimal model has {n} edges"),
    }
}

/// The parameter `a` of a minimal four-edge Delzant fan, well defined up to
/// sign: after normalizing to `(1,0), (0,1), (-1,a), (0,-1)` the value
/// returned is `|a|`. Invariant under determinant +-1 changes of basis.
pub fn hirzebruch_parameter(fan: &DiskBase) -> Result<BigInt, ClassifyError> {
    if fan.len() != 4 || !crate::normalize::is_delzant(fan) {
        return Err(ClassifyError::NotHirzebruch);
    }
    for j in 0..2 {
        let p = fan.normal(j);
        if *fan.normal(j + 2) == p.neg() {
            let q = fan.normal(j + 1);
            let r = fan.normal((j + 3) % 4);
            let sum = q.add(r);
            // sum is parallel to p; read off the coefficient
            let a = if !p.x.is_zero() { &sum.x / &p.x } else { &sum.y / &p.y };
            debug_assert_eq!(p.scaled(&a), sum);
            return Ok(a.abs());
        }
    }
    Err(ClassifyError::NotHirzebruch)
}

/// How two Lagrangian torus-bundle descriptors `(lambda, m, n)` compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusBundleRelation {
    /// Equivalent as bundles: related by `lambda' = e lambda`, `n' = e n`,
    /// `m' = m + k lambda + l n`.
    EquivalentBundles,
    /// Not bundle-equivalent, but both lie in the `lambda = 0 or n = 0`
    /// regime (first Betti number >= 3) where the diffeomorphism type
    /// coarsens to that of some `(mu, 0, 0)` bundle.
    EqualDiffeoTypeB1Ge3,
    Distinct,
}

pub fn torus_bundle_equivalent(a: (i64, i64, i64), b: (i64, i64, i64)) -> TorusBundleRelation {
    let (la, ma, na) = a;
    let (lb, mb, nb) = b;
    for eps in [1i64, -1] {
        if lb == eps * la && nb == eps * na {
            let g = la.unsigned_abs().gcd(&na.unsigned_abs());
            let dm = mb - ma;
            let hit = if g == 0 { dm == 0 } else { dm.unsigned_abs() % g == 0 };
            if hit {
                return TorusBundleRelation::EquivalentBundles;
            }
        }
    }
    if (la == 0 || na == 0) && (lb == 0 || nb == 0) {
        return TorusBundleRelation::EqualDiffeoTypeB1Ge3;
    }
    TorusBundleRelation::Distinct
}

/// Two boundary words and a test vector for the gluing compatibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgerySpec {
    pub word_a: FactorizationWord,
    pub word_b: FactorizationWord,
    pub v: LatticeVector,
}

/// Outcome of the compatibility test: the two words must transport `v` to
/// the same vector and wind it past itself equally often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryReport {
    pub vector_match: bool,
    pub sign_changes_a: usize,
    pub sign_changes_b: usize,
    pub compatible: bool,
}

/// Count sign changes of `prefix_i(v) x v` along a word, zeros skipped.
fn sign_changes(word: &FactorizationWord, v: &LatticeVector) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for image in word.walk(v) {
        let c = cross(&image, v);
        if c.is_zero() {
            continue;
        }
        let positive = c.is_positive();
        if let Some(prev) = last {
            if prev != positive {
                changes += 1;
            }
        }
        last = Some(positive);
    }
    changes
}

pub fn surgery_compatible(spec: &SurgerySpec) -> Result<SurgeryReport, crate::error::TurningError> {
    if spec.v.is_zero() {
        return Err(crate::error::TurningError::ZeroVector);
    }
    let final_a = spec.word_a.walk(&spec.v).pop().unwrap_or_else(|| spec.v.clone());
    let final_b = spec.word_b.walk(&spec.v).pop().unwrap_or_else(|| spec.v.clone());
    let vector_match = final_a == final_b;
    let sign_changes_a = sign_changes(&spec.word_a, &spec.v);
    let sign_changes_b = sign_changes(&spec.word_b, &spec.v);
    Ok(SurgeryReport {
        vector_match,
        sign_changes_a,
        sign_changes_b,
        compatible: vector_match && sign_changes_a == sign_changes_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::NonDiskBase;
    use crate::corpus;
    use crate::lattice::{vec2, ParabolicMonodromy, UnimodularMatrix};

    fn word(eigens: &[(i64, i64)]) -> FactorizationWord {
        FactorizationWord::new(
            eigens
                .iter()
                .map(|(a, b)| ParabolicMonodromy::from_eigen(*a, *b, 1).unwrap())
                .collect(),
        )
    }

    #[test]
    fn table_lookups() {
        assert_eq!(
            classify(&Base::Disk(corpus::cp2_triangle())).unwrap(),
            ClassificationResult::CP2BlownUp(0)
        );
        assert_eq!(
            classify(&Base::Disk(corpus::square_fan())).unwrap(),
            ClassificationResult::S2xS2
        );
        assert_eq!(
            classify(&Base::Disk(corpus::hirzebruch_one())).unwrap(),
            ClassificationResult::CP2BlownUp(1)
        );
        assert_eq!(
            classify(&Base::Disk(corpus::delzant_pentagon())).unwrap(),
            ClassificationResult::CP2BlownUp(2)
        );
        assert_eq!(
            classify(&Base::Disk(corpus::e1_disk())).unwrap(),
            ClassificationResult::CP2BlownUp(9)
        );
        assert_eq!(classify(&Base::NonDisk(NonDiskBase::sphere())).unwrap(), ClassificationResult::K3);
        assert_eq!(
            classify(&Base::NonDisk(NonDiskBase::rp2())).unwrap(),
            ClassificationResult::Enriques
        );
        assert_eq!(
            classify(&Base::NonDisk(NonDiskBase::cylinder(1, 2))).unwrap(),
            ClassificationResult::SphereBundleOverT2 { twisted: true, blowups: 2 }
        );
        assert_eq!(
            classify(&Base::NonDisk(NonDiskBase::moebius(-2, 0))).unwrap(),
            ClassificationResult::SphereBundleOverT2 { twisted: false, blowups: 0 }
        );
        assert_eq!(
            classify(&Base::NonDisk(NonDiskBase::torus(2, (1, 0)))).unwrap(),
            ClassificationResult::TorusBundleOverT2 { lambda: 2, chern: (1, 0) }
        );
        assert_eq!(
            classify(&Base::NonDisk(NonDiskBase::klein(3, (4, 0)))).unwrap(),
            ClassificationResult::TorusBundleOverK { lambda: 3, chern: (4, 0) }
        );
    }

    #[test]
    fn classify_rejects_bad_node_counts() {
        let mut bad = NonDiskBase::sphere();
        bad.nodes = 23;
        assert!(matches!(
            classify(&Base::NonDisk(bad)),
            Err(ClassifyError::Invalid { .. })
        ));
    }

    #[test]
    fn hirzebruch_parameter_examples() {
        assert_eq!(hirzebruch_parameter(&corpus::square_fan()).unwrap(), BigInt::from(0));
        let f1_normal_form =
            DiskBase::from_fan([vec2(1, 0), vec2(0, 1), vec2(-1, 1), vec2(0, -1)]);
        assert_eq!(hirzebruch_parameter(&f1_normal_form).unwrap(), BigInt::from(1));
        let f2 = DiskBase::from_fan([vec2(1, 0), vec2(0, 1), vec2(-1, 2), vec2(0, -1)]);
        assert_eq!(hirzebruch_parameter(&f2).unwrap(), BigInt::from(2));
        assert!(matches!(
            hirzebruch_parameter(&corpus::cp2_triangle()),
            Err(ClassifyError::NotHirzebruch)
        ));
    }

    #[test]
    fn hirzebruch_parameter_is_unimodular_invariant() {
        let f2 = DiskBase::from_fan([vec2(1, 0), vec2(0, 1), vec2(-1, 2), vec2(0, -1)]);
        let u = UnimodularMatrix::new(2, 1, 1, 1);
        let moved = f2.transformed(&u).unwrap().rotated(2);
        assert!(moved.validate().passed());
        assert_eq!(hirzebruch_parameter(&moved).unwrap(), BigInt::from(2));
    }

    #[test]
    fn classify_is_invariant_under_canonical_form() {
        for (_, base) in corpus::generators() {
            let direct = classify(&Base::Disk(base.clone())).unwrap();
            let canon = base.canonical_form().unwrap();
            assert_eq!(classify(&Base::Disk(canon)).unwrap(), direct);
        }
    }

    #[test]
    fn torus_bundle_relation_examples() {
        assert_eq!(
            torus_bundle_equivalent((2, 1, 0), (2, 3, 0)),
            TorusBundleRelation::EquivalentBundles
        );
        assert_eq!(
            torus_bundle_equivalent((5, 7, 3), (-5, 7, -3)),
            TorusBundleRelation::EquivalentBundles
        );
        assert_eq!(
            torus_bundle_equivalent((2, 1, 0), (2, 0, 0)),
            TorusBundleRelation::EqualDiffeoTypeB1Ge3
        );
        assert_eq!(
            torus_bundle_equivalent((2, 0, 4), (2, 1, 4)),
            TorusBundleRelation::Distinct
        );
        assert_eq!(
            torus_bundle_equivalent((1, 0, 2), (3, 0, 2)),
            TorusBundleRelation::Distinct
        );
    }

    #[test]
    fn surgery_examples() {
        // identical words are always compatible
        let w = word(&[(1, 0), (2, 1)]);
        let spec = SurgerySpec { word_a: w.clone(), word_b: w, v: vec2(1, 1) };
        let report = surgery_compatible(&spec).unwrap();
        assert!(report.compatible);

        // words of different length fixing the shared eigenvector
        let spec = SurgerySpec {
            word_a: word(&[(1, 0)]),
            word_b: word(&[(1, 0), (1, 0)]),
            v: vec2(1, 0),
        };
        let report = surgery_compatible(&spec).unwrap();
        assert!(report.vector_match);
        assert_eq!((report.sign_changes_a, report.sign_changes_b), (0, 0));
        assert!(report.compatible);

        // mismatched transport
        let spec = SurgerySpec { word_a: word(&[(1, 0)]), word_b: word(&[(0, 1)]), v: vec2(1, 1) };
        let report = surgery_compatible(&spec).unwrap();
        assert!(!report.vector_match);
        assert!(!report.compatible);
        let a_image = spec.word_a.walk(&spec.v).pop().unwrap();
        let b_image = spec.word_b.walk(&spec.v).pop().unwrap();
        assert_eq!(a_image, vec2(2, 1));
        assert_eq!(b_image, vec2(1, 0));
    }

    #[test]
    fn surgery_rejects_zero_vector() {
        let spec = SurgerySpec {
            word_a: word(&[(1, 0)]),
            word_b: word(&[(1, 0)]),
            v: LatticeVector::zero(),
        };
        assert!(surgery_compatible(&spec).is_err());
    }

    #[test]
    fn display_grammar() {
        assert_eq!(ClassificationResult::CP2BlownUp(0).to_string(), "CP2");
        assert_eq!(ClassificationResult::CP2BlownUp(3).to_string(), "CP2 # 3 CP2bar");
        assert_eq!(ClassificationResult::S2xS2.to_string(), "S2 x S2");
        assert_eq!(ClassificationResult::K3.to_string(), "K3");
        assert_eq!(
            ClassificationResult::SphereBundleOverT2 { twisted: true, blowups: 2 }.to_string(),
            "S2 ~x T2 # 2 CP2bar"
        );
        assert_eq!(
            ClassificationResult::TorusBundleOverT2 { lambda: 2, chern: (1, 0) }.to_string(),
            "T2-bundle lambda=2 chern=(1,0)"
        );
    }
}
