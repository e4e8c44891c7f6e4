//! Base models for almost toric fibrations.
//!
//! A [`DiskBase`] is a cyclic defining set: edge `i` carries a primitive
//! inward normal `u_i` (and an optional length), and corner `i` sits between
//! edges `i-1` and `i`. A corner is either a smooth `Vertex` or a `Node`
//! carrying the eigenvector, multiplicity and slide parameter of a nodal
//! fiber. The defining relations tie corner data to the normals:
//!
//! - `Vertex`: `u_{i-1} x u_i = 1`;
//! - `Node(e, m, t)`: `u_i - u_{i-1} = m * (u_i x e) * e`, which forces
//!   `u_{i-1} x u_i = m * n_i^2` for `n_i = |u_i x e|`.
//!
//! Either way the corner monodromy maps `u_i` to `u_{i-1}`, and the normals
//! must rotate counterclockwise through exactly one turn in steps smaller
//! than a half turn. Bases over surfaces other than the disk carry so little
//! combinatorial data that they are stored as a classified descriptor,
//! [`NonDiskBase`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{BaseError, ValidationReport};
use crate::lattice::{cross, LatticeVector, ParabolicMonodromy, UnimodularMatrix};

/// A boundary edge: primitive inward normal, optional affine length.
///
/// Lengths only support rendering; validation ignores them beyond
/// positivity and classification never reads them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub normal: LatticeVector,
    pub length: Option<BigRational>,
}

impl Edge {
    pub fn new(normal: LatticeVector) -> Self {
        Self { normal, length: None }
    }

    pub fn with_length(normal: LatticeVector, length: BigRational) -> Self {
        Self { normal, length: Some(length) }
    }
}

/// Corner decoration: a smooth toric vertex or a node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Corner {
    Vertex,
    Node {
        /// Primitive eigenvector of the corner monodromy, defined up to sign.
        eigen: LatticeVector,
        multiplicity: u64,
        /// Position of the node along its eigenray, in (0, 1]. Never affects
        /// validation or classification.
        slide: BigRational,
    },
}

impl Corner {
    pub fn node(eigen: LatticeVector, multiplicity: u64) -> Self {
        Corner::Node { eigen, multiplicity, slide: half() }
    }

    pub fn is_node(&self) -> bool {
        matches!(self, Corner::Node { .. })
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, Corner::Vertex)
    }
}

/// The default slide parameter, 1/2.
pub fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// A disk base as a cyclic sequence of edges and corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskBase {
    pub edges: Vec<Edge>,
    pub corners: Vec<Corner>,
}

impl DiskBase {
    pub fn new(edges: Vec<Edge>, corners: Vec<Corner>) -> Self {
        Self { edges, corners }
    }

    /// A Delzant-style base: the given normals with vertex corners only.
    pub fn from_fan<I>(normals: I) -> Self
    where
        I: IntoIterator<Item = LatticeVector>,
    {
        let edges: Vec<Edge> = normals.into_iter().map(Edge::new).collect();
        let corners = vec![Corner::Vertex; edges.len()];
        Self { edges, corners }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn normal(&self, i: usize) -> &LatticeVector {
        &self.edges[i % self.len()].normal
    }

    pub(crate) fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    /// The corner invariant `n_i`: 1 at a vertex, `|u_i x e_i|` at a node.
    pub fn n_value(&self, i: usize) -> BigInt {
        match &self.corners[i] {
            Corner::Vertex => BigInt::one(),
            Corner::Node { eigen, .. } => cross(self.normal(i), eigen).abs(),
        }
    }

    pub fn n_values(&self) -> Vec<BigInt> {
        (0..self.len()).map(|i| self.n_value(i)).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.corners.iter().filter(|c| c.is_vertex()).count()
    }

    /// Nodes counted with multiplicity.
    pub fn node_count(&self) -> u64 {
        self.corners
            .iter()
            .map(|c| match c {
                Corner::Vertex => 0,
                Corner::Node { multiplicity, .. } => *multiplicity,
            })
            .sum()
    }

    /// Check every defining-set invariant; an empty report is a pass.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let k = self.edges.len();
        if self.corners.len() != k {
            report.push(
                None,
                format!("{} edges but {} corners; counts must match", k, self.corners.len()),
            );
            return report;
        }
        if k < 3 {
            report.push(None, format!("{k} edges; a disk base needs at least 3"));
            return report;
        }
        for (i, edge) in self.edges.iter().enumerate() {
            if !edge.normal.is_primitive() {
                report.push(Some(i), format!("normal {} not primitive", edge.normal));
            }
            if let Some(len) = &edge.length {
                if !len.is_positive() {
                    report.push(Some(i), format!("length {len} not positive"));
                }
            }
        }
        if !report.passed() {
            return report;
        }
        for i in 0..k {
            let u = self.normal(i);
            let u_prev = self.normal(self.prev(i));
            match &self.corners[i] {
                Corner::Vertex => {
                    let c = cross(u_prev, u);
                    if !c.is_one() {
                        report.push(Some(i), format!("vertex corner has u[i-1] x u[i] = {c}, expected 1"));
                    }
                }
                Corner::Node { eigen, multiplicity, slide } => {
                    if !eigen.is_primitive() {
                        report.push(Some(i), format!("eigenvector {eigen} not primitive"));
                        continue;
                    }
                    if *multiplicity == 0 {
                        report.push(Some(i), "node multiplicity must be positive".to_string());
                        continue;
                    }
                    if !slide.is_positive() || slide > &BigRational::one() {
                        report.push(Some(i), format!("slide parameter {slide} outside (0, 1]"));
                    }
                    let s = cross(u, eigen) * BigInt::from(*multiplicity);
                    if u.sub(u_prev) != eigen.scaled(&s) {
                        report.push(
                            Some(i),
                            format!(
                                "node relation fails: u[i] - u[i-1] = {} but m (u[i] x e) e = {}",
                                u.sub(u_prev),
                                eigen.scaled(&s)
                            ),
                        );
                    }
                }
            }
        }
        self.check_winding(&mut report);
        self.check_contiguity(&mut report);
        report
    }

    /// Exact winding count of the normal sequence, as quadrant-free crossing
    /// counting against the fixed direction (1, 0). Steps must each rotate
    /// counterclockwise by less than a half turn.
    fn check_winding(&self, report: &mut ValidationReport) {
        let k = self.len();
        let mut turns = 0u64;
        let probe = LatticeVector::new(1, 0);
        for i in 0..k {
            let a = self.normal(self.prev(i));
            let b = self.normal(i);
            let c = cross(a, b);
            if c.is_negative() {
                report.push(Some(i), format!("normals rotate clockwise from {a} to {b}"));
                return;
            }
            if c.is_zero() {
                if a != b {
                    report.push(Some(i), format!("normals {a} and {b} are anti-parallel"));
                    return;
                }
                continue;
            }
            // does the half-open arc (a, b] contain the probe direction?
            let ad = cross(a, &probe);
            let db = cross(&probe, b);
            if ad.is_positive()
                && (db.is_positive()
                    || (db.is_zero() && crate::lattice::dot(&probe, b).is_positive()))
            {
                turns += 1;
            }
        }
        if turns != 1 {
            report.push(None, format!("normals wind {turns} turns around the origin, expected 1"));
        }
    }

    /// Occurrences of any given normal value must be cyclically contiguous.
    fn check_contiguity(&self, report: &mut ValidationReport) {
        let k = self.len();
        for i in 0..k {
            // a run boundary followed later by the same value again
            let u = self.normal(i);
            if self.normal(self.prev(i)) == u {
                continue;
            }
            let mut j = (i + 1) % k;
            let mut left_run = true;
            while j != i {
                if self.normal(j) == u {
                    if !left_run {
                        report.push(
                            Some(i),
                            format!("occurrences of normal {u} are not cyclically contiguous"),
                        );
                        return;
                    }
                } else {
                    left_run = false;
                }
                j = (j + 1) % k;
            }
        }
    }

    /// Monodromy attached to corner `i`: the node's parabolic, or for a
    /// vertex the unique parabolic carrying `u_i` to `u_{i-1}`.
    pub fn corner_monodromy(&self, i: usize) -> Result<ParabolicMonodromy, BaseError> {
        match &self.corners[i] {
            Corner::Node { eigen, multiplicity, .. } => {
                Ok(ParabolicMonodromy::from_eigen_vector(eigen.clone(), *multiplicity)?)
            }
            Corner::Vertex => {
                let e = self.normal(i).sub(self.normal(self.prev(i)));
                Ok(ParabolicMonodromy::from_eigen_vector(e, 1)?)
            }
        }
    }

    /// The monodromy word of the base, corner 0 first.
    pub fn corner_word(&self) -> Result<FactorizationWord, BaseError> {
        let factors = (0..self.len())
            .map(|i| self.corner_monodromy(i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FactorizationWord { factors })
    }

    /// Product of the corner monodromies `A_0 A_1 ... A_{k-1}`.
    pub fn boundary_monodromy(&self) -> Result<UnimodularMatrix, BaseError> {
        let report = self.validate();
        if !report.passed() {
            return Err(BaseError::Invalid { report });
        }
        Ok(self.corner_word()?.product())
    }

    /// Euler characteristic of the total space: node multiplicities plus
    /// vertex count.
    pub fn euler_characteristic(&self) -> i64 {
        self.node_count() as i64 + self.vertex_count() as i64
    }

    /// Rotate the cyclic indexing so that old index `r` becomes index 0.
    pub fn rotated(&self, r: usize) -> Self {
        let k = self.len();
        let r = r % k;
        let mut edges = self.edges.clone();
        let mut corners = self.corners.clone();
        edges.rotate_left(r);
        corners.rotate_left(r);
        Self { edges, corners }
    }

    /// Change lattice basis by a determinant +1 matrix: normals and
    /// eigenvectors transform, everything else is carried along.
    pub fn transformed(&self, u: &UnimodularMatrix) -> Result<Self, BaseError> {
        if !u.det().is_one() {
            return Err(BaseError::Lattice(crate::error::LatticeError::NotUnimodular {
                det: u.det(),
            }));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { normal: u.apply(&e.normal), length: e.length.clone() })
            .collect();
        let corners = self
            .corners
            .iter()
            .map(|c| match c {
                Corner::Vertex => Corner::Vertex,
                Corner::Node { eigen, multiplicity, slide } => Corner::Node {
                    eigen: u.apply(eigen),
                    multiplicity: *multiplicity,
                    slide: slide.clone(),
                },
            })
            .collect();
        Ok(Self { edges, corners })
    }

    /// Re-sign node eigenvectors into the defining convention:
    /// `u_i x e_i > 0`, and `e_i = u_i` when the cross product vanishes.
    fn with_canonical_eigens(mut self) -> Self {
        for i in 0..self.len() {
            let u = self.edges[i].normal.clone();
            if let Corner::Node { eigen, .. } = &mut self.corners[i] {
                let c = cross(&u, eigen);
                if c.is_negative() {
                    *eigen = eigen.neg();
                } else if c.is_zero() {
                    *eigen = u;
                }
            }
        }
        self
    }

    fn encoding(&self) -> Vec<EncToken> {
        let mut out = Vec::with_capacity(self.len() * 8);
        for i in 0..self.len() {
            let e = &self.edges[i];
            out.push(EncToken::Int(e.normal.x.clone()));
            out.push(EncToken::Int(e.normal.y.clone()));
            match &e.length {
                None => out.push(EncToken::Tag(0)),
                Some(l) => {
                    out.push(EncToken::Tag(1));
                    out.push(EncToken::Rat(l.clone()));
                }
            }
            match &self.corners[i] {
                Corner::Vertex => out.push(EncToken::Tag(0)),
                Corner::Node { eigen, multiplicity, slide } => {
                    out.push(EncToken::Tag(1));
                    out.push(EncToken::Int(eigen.x.clone()));
                    out.push(EncToken::Int(eigen.y.clone()));
                    out.push(EncToken::Int(BigInt::from(*multiplicity)));
                    out.push(EncToken::Rat(slide.clone()));
                }
            }
        }
        out
    }

    /// Canonical representative under cyclic rotation and determinant +1
    /// change of lattice basis.
    ///
    /// For each rotation the first normal is mapped to (1, 0); the residual
    /// shear freedom is pinned by reducing the first normal with nonzero y
    /// into the residue range [0, |y|); the minimum encoding over rotations
    /// wins. Two valid bases have equal canonical forms exactly when they
    /// differ by a rotation and a determinant +1 map.
    pub fn canonical_form(&self) -> Result<Self, BaseError> {
        let report = self.validate();
        if !report.passed() {
            return Err(BaseError::Invalid { report });
        }
        let k = self.len();
        let mut best: Option<(Vec<EncToken>, DiskBase)> = None;
        for r in 0..k {
            let rotated = self.rotated(r);
            let u0 = &rotated.edges[0].normal;
            let gcd = u0.x.extended_gcd(&u0.y);
            debug_assert!(gcd.gcd.is_one());
            // rows (p, q) and (-y, x) send u0 to (1, 0) with determinant +1
            let u_map = UnimodularMatrix {
                a: gcd.x.clone(),
                b: gcd.y.clone(),
                c: -&u0.y,
                d: u0.x.clone(),
            };
            let mapped = rotated.transformed(&u_map)?;
            let shear = mapped
                .edges
                .iter()
                .find(|e| !e.normal.y.is_zero())
                .map(|e| {
                    let y_abs = e.normal.y.abs();
                    let target = e.normal.x.mod_floor(&y_abs);
                    (target - &e.normal.x) / &e.normal.y
                })
                .unwrap_or_else(BigInt::zero);
            let shear_map = UnimodularMatrix::new(BigInt::one(), shear, BigInt::zero(), BigInt::one());
            let candidate = mapped.transformed(&shear_map)?.with_canonical_eigens();
            let enc = candidate.encoding();
            match &best {
                Some((best_enc, _)) if *best_enc <= enc => {}
                _ => best = Some((enc, candidate)),
            }
        }
        Ok(best.expect("at least one rotation").1)
    }

    /// Deterministic structural hash, used to pin move records to the bases
    /// they were recorded on.
    pub fn structural_hash(&self) -> u64 {
        let mut h = Fnv::new();
        h.absorb(b"disk");
        h.absorb(&self.len().to_le_bytes());
        for i in 0..self.len() {
            let e = &self.edges[i];
            h.absorb_int(&e.normal.x);
            h.absorb_int(&e.normal.y);
            match &e.length {
                None => h.absorb(b"-"),
                Some(l) => {
                    h.absorb_int(l.numer());
                    h.absorb_int(l.denom());
                }
            }
            match &self.corners[i] {
                Corner::Vertex => h.absorb(b"v"),
                Corner::Node { eigen, multiplicity, slide } => {
                    h.absorb(b"n");
                    h.absorb_int(&eigen.x);
                    h.absorb_int(&eigen.y);
                    h.absorb(&multiplicity.to_le_bytes());
                    h.absorb_int(slide.numer());
                    h.absorb_int(slide.denom());
                }
            }
        }
        h.finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EncToken {
    Tag(u8),
    Int(BigInt),
    Rat(BigRational),
}

/// 64-bit FNV-1a.
struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn absorb(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    fn absorb_int(&mut self, n: &BigInt) {
        let bytes = n.to_signed_bytes_le();
        self.absorb(&(bytes.len() as u32).to_le_bytes());
        self.absorb(&bytes);
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

/// Homeomorphism type of a non-disk base surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Cylinder,
    Moebius,
    Sphere,
    Rp2,
    Torus,
    KleinBottle,
}

impl Topology {
    pub fn name(&self) -> &'static str {
        match self {
            Topology::Cylinder => "cylinder",
            Topology::Moebius => "moebius",
            Topology::Sphere => "sphere",
            Topology::Rp2 => "rp2",
            Topology::Torus => "torus",
            Topology::KleinBottle => "klein",
        }
    }
}

/// Descriptor for a base over a surface other than the disk.
///
/// `nodes` counts nodes with multiplicity; over a cylinder or Moebius band
/// they are almost toric blow-ups. `lambda` is the boundary or fiber
/// monodromy twist, and `chern` the Chern class (m, n) of a torus bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonDiskBase {
    pub topology: Topology,
    pub nodes: u64,
    pub lambda: i64,
    pub chern: Option<(i64, i64)>,
}

impl NonDiskBase {
    pub fn sphere() -> Self {
        Self { topology: Topology::Sphere, nodes: 24, lambda: 0, chern: None }
    }

    pub fn rp2() -> Self {
        Self { topology: Topology::Rp2, nodes: 12, lambda: 0, chern: None }
    }

    pub fn cylinder(lambda: i64, blowups: u64) -> Self {
        Self { topology: Topology::Cylinder, nodes: blowups, lambda, chern: None }
    }

    pub fn moebius(lambda: i64, blowups: u64) -> Self {
        Self { topology: Topology::Moebius, nodes: blowups, lambda, chern: None }
    }

    pub fn torus(lambda: i64, chern: (i64, i64)) -> Self {
        Self { topology: Topology::Torus, nodes: 0, lambda, chern: Some(chern) }
    }

    pub fn klein(lambda: i64, chern: (i64, i64)) -> Self {
        Self { topology: Topology::KleinBottle, nodes: 0, lambda, chern: Some(chern) }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        match self.topology {
            Topology::Sphere => {
                if self.nodes != 24 {
                    report.push(None, format!("sphere base requires 24 nodes, found {}", self.nodes));
                }
            }
            Topology::Rp2 => {
                if self.nodes != 12 {
                    report.push(None, format!("rp2 base requires 12 nodes, found {}", self.nodes));
                }
            }
            Topology::Torus | Topology::KleinBottle => {
                if self.nodes != 0 {
                    report.push(
                        None,
                        format!("{} base admits no nodes, found {}", self.topology.name(), self.nodes),
                    );
                }
            }
            Topology::Cylinder | Topology::Moebius => {}
        }
        let wants_chern = matches!(self.topology, Topology::Torus | Topology::KleinBottle);
        match (&self.chern, wants_chern) {
            (Some(_), false) => {
                report.push(None, format!("{} base carries no Chern class", self.topology.name()))
            }
            (None, true) => {
                report.push(None, format!("{} base requires a Chern class", self.topology.name()))
            }
            _ => {}
        }
        if self.topology == Topology::KleinBottle {
            if let Some((m, n)) = self.chern {
                if m % 2 != 0 || n != 0 {
                    report.push(
                        None,
                        format!("klein base requires Chern class (m, 0) with m even, found ({m},{n})"),
                    );
                }
            }
        }
        report
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.nodes as i64
    }
}

/// Any almost toric base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Disk(DiskBase),
    NonDisk(NonDiskBase),
}

impl Base {
    pub fn validate(&self) -> ValidationReport {
        match self {
            Base::Disk(b) => b.validate(),
            Base::NonDisk(b) => b.validate(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        match self {
            Base::Disk(b) => b.euler_characteristic(),
            Base::NonDisk(b) => b.euler_characteristic(),
        }
    }
}

/// An ordered sequence of nodal monodromies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorizationWord {
    pub factors: Vec<ParabolicMonodromy>,
}

impl FactorizationWord {
    pub fn new(factors: Vec<ParabolicMonodromy>) -> Self {
        Self { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Matrix product `A_0 A_1 ... A_{k-1}` (factor 0 leftmost).
    pub fn product(&self) -> UnimodularMatrix {
        self.factors
            .iter()
            .fold(UnimodularMatrix::identity(), |acc, p| acc.mul(&p.to_matrix()))
    }

    pub fn is_trivial(&self) -> bool {
        self.product().is_identity()
    }

    /// Successive images of `v`: factor 0 is applied first.
    pub fn walk(&self, v: &LatticeVector) -> Vec<LatticeVector> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut cur = v.clone();
        for p in &self.factors {
            cur = p.apply(&cur);
            out.push(cur.clone());
        }
        out
    }

    pub fn structural_hash(&self) -> u64 {
        let mut h = Fnv::new();
        h.absorb(b"word");
        h.absorb(&self.factors.len().to_le_bytes());
        for p in &self.factors {
            h.absorb_int(&p.eigen().x);
            h.absorb_int(&p.eigen().y);
            h.absorb(&p.multiplicity().to_le_bytes());
        }
        h.finish()
    }
}
