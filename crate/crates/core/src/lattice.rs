//! Exact integer linear algebra on the rank-two lattice.
//!
//! - [`LatticeVector`]: arbitrary-precision integer 2-vectors (edge normals,
//!   eigenvectors, auxiliary vectors).
//! - [`UnimodularMatrix`]: 2x2 integer matrices of determinant +-1.
//! - [`ParabolicMonodromy`]: the trace-two matrices `A_(a,b)` attached to
//!   nodal fibers, stored as a primitive eigenvector plus a multiplicity.
//!
//! Everything here is exact; no floating point. Entries grow without bound
//! under repeated surgeries, hence `BigInt` throughout.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::LatticeError;

/// An integer vector in the rank-two lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVector {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Primitive means not zero and gcd(|x|, |y|) = 1.
    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.gcd(&self.y).is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.x, -&self.y)
    }

    pub fn scaled(&self, s: &BigInt) -> Self {
        Self::new(&self.x * s, &self.y * s)
    }

    /// Clockwise quarter turn `(x, y) -> (y, -x)`.
    ///
    /// For an inward edge normal this is the tangent direction of the edge
    /// when the boundary is traversed counterclockwise; for a corner
    /// eigenvector it is the direction of the eigenray drawn in a diagram.
    pub fn perp_cw(&self) -> Self {
        Self::new(self.y.clone(), -&self.x)
    }

    /// Sign-normalized representative of `{v, -v}`: y > 0, or y = 0 and x > 0.
    pub fn sign_normalized(&self) -> Self {
        if self.y.is_negative() || (self.y.is_zero() && self.x.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Shorthand used throughout tests and fixtures.
pub fn vec2(x: impl Into<BigInt>, y: impl Into<BigInt>) -> LatticeVector {
    LatticeVector::new(x, y)
}

/// The scalar cross product `v.x * w.y - v.y * w.x`.
pub fn cross(v: &LatticeVector, w: &LatticeVector) -> BigInt {
    &v.x * &w.y - &v.y * &w.x
}

/// The dot product `v.x * w.x + v.y * w.y`.
pub fn dot(v: &LatticeVector, w: &LatticeVector) -> BigInt {
    &v.x * &w.x + &v.y * &w.y
}

/// A 2x2 integer matrix `[[a, b], [c, d]]`, normally of determinant +-1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Self { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.det();
        d.is_one() || d == BigInt::from(-1)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y)
    }

    pub fn transpose(&self) -> Self {
        Self { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    /// Exact inverse; defined only for determinant +-1.
    pub fn inverse(&self) -> Result<Self, LatticeError> {
        let det = self.det();
        if det.is_one() {
            Ok(Self { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() })
        } else if det == BigInt::from(-1) {
            Ok(Self { a: -&self.d, b: self.b.clone(), c: self.c.clone(), d: -&self.a })
        } else {
            Err(LatticeError::NotUnimodular { det })
        }
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Affine monodromy from topological monodromy (and vice versa): the
/// inverse transpose, computed exactly. Involutive on its domain.
pub fn affine_from_topological(m: &UnimodularMatrix) -> Result<UnimodularMatrix, LatticeError> {
    Ok(m.inverse()?.transpose())
}

/// Monodromy of a node: a parabolic matrix with a primitive integer
/// eigenvector, raised to the node multiplicity.
///
/// With eigenvector `(a, b)` the underlying matrix is
/// `[[1 - ab, a^2], [-b^2, 1 + ab]]`; its k-th power replaces each
/// off-diagonal block by k times itself. The eigenvector is stored
/// sign-normalized (b > 0, or b = 0 and a > 0) so equality is decidable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicMonodromy {
    eigen: LatticeVector,
    multiplicity: u64,
}

impl ParabolicMonodromy {
    /// Build from an eigenvector `(a, b)` and a multiplicity.
    pub fn from_eigen(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        multiplicity: u64,
    ) -> Result<Self, LatticeError> {
        Self::from_eigen_vector(LatticeVector::new(a, b), multiplicity)
    }

    pub fn from_eigen_vector(eigen: LatticeVector, multiplicity: u64) -> Result<Self, LatticeError> {
        if eigen.is_zero() {
            return Err(LatticeError::ZeroEigenvector);
        }
        if !eigen.is_primitive() {
            return Err(LatticeError::NonPrimitiveEigenvector { vector: eigen.to_string() });
        }
        if multiplicity == 0 {
            return Err(LatticeError::ZeroMultiplicity);
        }
        Ok(Self { eigen: eigen.sign_normalized(), multiplicity })
    }

    /// Recover eigenvector and multiplicity from a matrix.
    ///
    /// Accepts exactly the orientation-preserving single-node monodromies:
    /// determinant +1, trace 2, not the identity, and lying in the conjugacy
    /// class of `[[1,1],[0,1]]` (rather than its inverse).
    pub fn from_matrix(m: &UnimodularMatrix) -> Result<Self, LatticeError> {
        let det = m.det();
        if det == BigInt::from(-1) {
            return Err(LatticeError::OrientationReversing);
        }
        if !det.is_one() {
            return Err(LatticeError::NotUnimodular { det });
        }
        if m.is_identity() {
            return Err(LatticeError::IdentityNotNode);
        }
        if m.trace() != BigInt::from(2) {
            return Err(LatticeError::NotParabolic { matrix: m.to_string() });
        }
        // M - I = mult * [[-ab, a^2], [-b^2, ab]]
        let n11 = &m.a - BigInt::one();
        let n12 = m.b.clone();
        let n21 = m.c.clone();
        if n12.is_negative() || n21.is_positive() {
            // trace-two class of [[1,-1],[0,1]]: not a nodal monodromy
            return Err(LatticeError::NotParabolic { matrix: m.to_string() });
        }
        let mult_big = n12.gcd(&n21).gcd(&n11);
        let multiplicity = u64::try_from(&mult_big)
            .map_err(|_| LatticeError::MultiplicityOverflow { value: mult_big.to_string() })?;
        let a2 = &n12 / &mult_big;
        let b2 = -&n21 / &mult_big;
        let ab = -&n11 / &mult_big;
        let a = a2.sqrt();
        let b_mag = b2.sqrt();
        let b = if ab.is_negative() { -&b_mag } else { b_mag.clone() };
        let result = Self::from_eigen_vector(LatticeVector::new(a, b), multiplicity)?;
        if &result.to_matrix() != m {
            return Err(LatticeError::NotParabolic { matrix: m.to_string() });
        }
        Ok(result)
    }

    pub fn eigen(&self) -> &LatticeVector {
        &self.eigen
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn to_matrix(&self) -> UnimodularMatrix {
        let k = BigInt::from(self.multiplicity);
        let a = &self.eigen.x;
        let b = &self.eigen.y;
        let ab = a * b;
        UnimodularMatrix {
            a: BigInt::one() - &k * &ab,
            b: &k * a * a,
            c: -(&k * b * b),
            d: BigInt::one() + &k * &ab,
        }
    }

    /// Apply the monodromy to a vector: `v - mult * (v x e) e`.
    ///
    /// Agrees with multiplication by `to_matrix`.
    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        let s = cross(v, &self.eigen) * BigInt::from(self.multiplicity);
        v.sub(&self.eigen.scaled(&s))
    }

    /// Apply the inverse monodromy: `v + mult * (v x e) e`.
    pub fn apply_inverse(&self, v: &LatticeVector) -> LatticeVector {
        let s = cross(v, &self.eigen) * BigInt::from(self.multiplicity);
        v.add(&self.eigen.scaled(&s))
    }

    /// Conjugate by a determinant +1 matrix: `U A U^-1` is again parabolic
    /// with eigenvector `U e` (up to sign) and the same multiplicity.
    pub fn conjugated(&self, u: &UnimodularMatrix) -> Result<Self, LatticeError> {
        if !u.det().is_one() {
            return Err(LatticeError::NotUnimodular { det: u.det() });
        }
        Ok(Self {
            eigen: u.apply(&self.eigen).sign_normalized(),
            multiplicity: self.multiplicity,
        })
    }
}

impl fmt::Display for ParabolicMonodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}^{}", self.eigen, self.multiplicity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(a: i64, b: i64, c: i64, d: i64) -> UnimodularMatrix {
        UnimodularMatrix::new(a, b, c, d)
    }

    #[test]
    fn cross_known_values() {
        assert_eq!(cross(&vec2(1, 0), &vec2(0, 1)), BigInt::from(1));
        assert_eq!(cross(&vec2(4, 3), &vec2(0, 1)), BigInt::from(4));
        assert_eq!(cross(&vec2(1, 0), &vec2(2, 1)), BigInt::from(1));
    }

    #[test]
    fn parabolic_from_eigen_matrices() {
        let p = ParabolicMonodromy::from_eigen(1, 0, 1).unwrap();
        assert_eq!(p.to_matrix(), mat(1, 1, 0, 1));
        let p = ParabolicMonodromy::from_eigen(0, 1, 1).unwrap();
        assert_eq!(p.to_matrix(), mat(1, 0, -1, 1));
        let p = ParabolicMonodromy::from_eigen(1, -1, 1).unwrap();
        assert_eq!(p.to_matrix(), mat(2, 1, -1, 0));
        // sign normalization flips (1,-1) to (-1,1)
        assert_eq!(p.eigen(), &vec2(-1, 1));
        let p = ParabolicMonodromy::from_eigen(1, 0, 3).unwrap();
        assert_eq!(p.to_matrix(), mat(1, 3, 0, 1));
    }

    #[test]
    fn parabolic_from_eigen_rejections() {
        assert!(matches!(
            ParabolicMonodromy::from_eigen(0, 0, 1),
            Err(LatticeError::ZeroEigenvector)
        ));
        assert!(matches!(
            ParabolicMonodromy::from_eigen(2, 0, 1),
            Err(LatticeError::NonPrimitiveEigenvector { .. })
        ));
        assert!(matches!(
            ParabolicMonodromy::from_eigen(1, 0, 0),
            Err(LatticeError::ZeroMultiplicity)
        ));
    }

    #[test]
    fn apply_parabolic_examples() {
        let p = ParabolicMonodromy::from_eigen(1, 0, 1).unwrap();
        assert_eq!(p.apply(&vec2(-1, 2)), vec2(1, 2));
        assert_eq!(p.apply(&vec2(1, 0)), vec2(1, 0));
        let p = ParabolicMonodromy::from_eigen(2, 1, 1).unwrap();
        assert_eq!(p.apply(&vec2(0, 1)), vec2(4, 3));
    }

    #[test]
    fn apply_matches_matrix_action() {
        let p = ParabolicMonodromy::from_eigen(3, -5, 4).unwrap();
        let m = p.to_matrix();
        let v = vec2(-7, 11);
        assert_eq!(p.apply(&v), m.apply(&v));
        assert_eq!(p.apply_inverse(&p.apply(&v)), v);
    }

    #[test]
    fn from_matrix_examples() {
        let p = ParabolicMonodromy::from_matrix(&mat(1, 3, 0, 1)).unwrap();
        assert_eq!(p.eigen(), &vec2(1, 0));
        assert_eq!(p.multiplicity(), 3);

        let p = ParabolicMonodromy::from_matrix(&mat(2, 1, -1, 0)).unwrap();
        assert_eq!(p.eigen(), &vec2(-1, 1));
        assert_eq!(p.multiplicity(), 1);

        assert!(matches!(
            ParabolicMonodromy::from_matrix(&UnimodularMatrix::identity()),
            Err(LatticeError::IdentityNotNode)
        ));
        assert!(matches!(
            ParabolicMonodromy::from_matrix(&mat(0, 1, 1, 0)),
            Err(LatticeError::OrientationReversing)
        ));
        assert!(matches!(
            ParabolicMonodromy::from_matrix(&mat(2, 1, 1, 1)),
            Err(LatticeError::NotParabolic { .. })
        ));
        // trace two but in the inverse conjugacy class
        assert!(matches!(
            ParabolicMonodromy::from_matrix(&mat(1, -1, 0, 1)),
            Err(LatticeError::NotParabolic { .. })
        ));
        assert!(matches!(
            ParabolicMonodromy::from_matrix(&mat(1, 0, 1, 1)),
            Err(LatticeError::NotParabolic { .. })
        ));
    }

    #[test]
    fn affine_from_topological_examples() {
        assert_eq!(affine_from_topological(&mat(1, 1, 0, 1)).unwrap(), mat(1, 0, -1, 1));
        let id = UnimodularMatrix::identity();
        assert_eq!(affine_from_topological(&id).unwrap(), id);
        let m = mat(3, 2, 1, 1);
        assert_eq!(affine_from_topological(&affine_from_topological(&m).unwrap()).unwrap(), m);
    }
}
