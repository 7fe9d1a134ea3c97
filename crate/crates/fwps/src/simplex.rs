//! Fano simplices and their invariants.
//!
//! A Fano simplex has `n + 1` primitive lattice vertices in `Z^n` with the
//! origin strictly interior. It is the combinatorial shadow of a fake
//! weighted projective space: the vertices are the rays of the fan, the
//! unique positive relation among them is the weight system, and the index of
//! the vertex span in the ambient lattice is the multiplicity of the quotient.

use crate::lattice::{
    positive_relation, quotient_invariant_factors, sublattice_index, vec_gcd, IntMatrix,
    LatticeError, LatticePoint, SublatticeIndex,
};
use crate::wps::WeightError;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplexError {
    #[error("expected {expected} vertices for dimension {dim}, got {got}")]
    VertexCount { dim: usize, expected: usize, got: usize },
    #[error("vertex {index} is not primitive")]
    VertexNotPrimitive { index: usize },
    #[error("vertices do not span the ambient space")]
    NotFullDimensional,
    #[error("origin is not strictly interior")]
    OriginNotInterior,
}

/// Which singularity class a search or filter should demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityClass {
    /// Lattice points are exactly the vertices and the origin.
    Terminal,
    /// The origin is the only interior lattice point.
    Canonical,
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityClass::Terminal => write!(f, "terminal"),
            SingularityClass::Canonical => write!(f, "canonical"),
        }
    }
}

/// Coprime positive weights `(λ_0, …, λ_n)`, kept in the order they were
/// given (vertex order, for weights read off a simplex). Use [`Self::sorted`]
/// when an order-free representative is needed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightSystem {
    lambdas: Vec<BigInt>,
    h: BigInt,
}

impl WeightSystem {
    pub fn new(lambdas: Vec<BigInt>) -> Result<Self, WeightError> {
        if lambdas.len() < 2 {
            return Err(WeightError::TooFew { got: lambdas.len() });
        }
        if let Some(index) = lambdas.iter().position(|l| !l.is_positive()) {
            return Err(WeightError::NotPositive { index });
        }
        if !vec_gcd(&lambdas).is_one() {
            return Err(WeightError::NotCoprime);
        }
        let h = lambdas.iter().sum();
        Ok(WeightSystem { lambdas, h })
    }

    pub fn from_u64(lambdas: &[u64]) -> Result<Self, WeightError> {
        Self::new(lambdas.iter().map(|&l| BigInt::from(l)).collect())
    }

    /// Number of weights, `n + 1`.
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension `n` of the simplex carrying these weights.
    pub fn dim(&self) -> usize {
        self.lambdas.len() - 1
    }

    pub fn lambdas(&self) -> &[BigInt] {
        &self.lambdas
    }

    /// Weight sum `h = λ_0 + … + λ_n`.
    pub fn h(&self) -> &BigInt {
        &self.h
    }

    /// The same weights in ascending order.
    pub fn sorted(&self) -> WeightSystem {
        let mut lambdas = self.lambdas.clone();
        lambdas.sort();
        WeightSystem {
            lambdas,
            h: self.h.clone(),
        }
    }

    /// Product `λ_0 ⋯ λ_n`.
    pub fn product(&self) -> BigInt {
        self.lambdas.iter().product()
    }

    pub fn same_multiset(&self, other: &WeightSystem) -> bool {
        self.sorted().lambdas == other.sorted().lambdas
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lambdas.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A singular point of the toric variety, one per cone over a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSingularity {
    /// Index of the omitted vertex: the cone is spanned by all the others.
    pub facet: usize,
    /// Order of the local quotient group.
    pub order: BigInt,
    /// Invariant factors (each > 1) of the local quotient group.
    pub invariant_factors: Vec<BigInt>,
    /// For a cyclic local group of order `r`, the action weights
    /// `(a_1, …, a_n)` of the type `1/r (a_1, …, a_n)`, normalized to the
    /// lexicographically smallest representative over unit rescalings and
    /// coordinate permutations. `None` when the group is not cyclic.
    pub cyclic_weights: Option<Vec<BigInt>>,
}

impl ConeSingularity {
    pub fn is_smooth(&self) -> bool {
        self.order.is_one()
    }
}

impl fmt::Display for ConeSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_smooth() {
            return write!(f, "smooth");
        }
        match &self.cyclic_weights {
            Some(w) => {
                write!(f, "1/{}(", self.order)?;
                for (i, a) in w.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            None => write!(f, "noncyclic of order {}", self.order),
        }
    }
}

/// A full-dimensional lattice simplex with primitive vertices and the origin
/// strictly interior, together with the weight system and multiplicity it
/// determines.
#[derive(Clone, PartialEq, Eq)]
pub struct FanoSimplex {
    vertices: Vec<LatticePoint>,
    weights: WeightSystem,
    multiplicity: BigInt,
}

impl FanoSimplex {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self, SimplexError> {
        assert!(!vertices.is_empty(), "a simplex needs vertices");
        let dim = vertices[0].dim();
        assert!(
            vertices.iter().all(|v| v.dim() == dim),
            "vertices of mixed dimension"
        );
        if vertices.len() != dim + 1 {
            return Err(SimplexError::VertexCount {
                dim,
                expected: dim + 1,
                got: vertices.len(),
            });
        }
        if let Some(index) = vertices.iter().position(|v| !v.is_primitive()) {
            return Err(SimplexError::VertexNotPrimitive { index });
        }
        let lambdas = match positive_relation(&vertices) {
            Ok(l) => l,
            Err(LatticeError::NotSimplicialRelation) => {
                return Err(SimplexError::NotFullDimensional)
            }
            Err(LatticeError::OriginNotInterior { .. }) => {
                return Err(SimplexError::OriginNotInterior)
            }
            Err(_) => unreachable!("positive_relation raises no other error"),
        };
        let weights = WeightSystem::new(lambdas).expect("relation is positive and coprime");
        let multiplicity = match sublattice_index(&vertices) {
            SublatticeIndex::Finite(m) => m,
            SublatticeIndex::Infinite => unreachable!("full rank was just established"),
        };
        Ok(FanoSimplex {
            vertices,
            weights,
            multiplicity,
        })
    }

    pub fn from_i64_vertices(rows: &[&[i64]]) -> Result<Self, SimplexError> {
        Self::new(rows.iter().map(|r| LatticePoint::from_i64(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// The vertices as the rows of an `(n + 1) × n` matrix.
    pub fn vertex_matrix(&self) -> IntMatrix {
        IntMatrix::from_points(&self.vertices)
    }

    /// Weights in vertex order.
    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    /// Index of the sublattice spanned by the vertices; 1 exactly for
    /// genuine weighted projective space.
    pub fn multiplicity(&self) -> &BigInt {
        &self.multiplicity
    }

    /// Lattice-normalized volume: `n! vol P = h · mult P` holds exactly.
    pub fn normalized_volume(&self) -> BigRational {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n);
        for i in 1..=n {
            rows.push(
                self.vertices[i]
                    .coords()
                    .iter()
                    .zip(self.vertices[0].coords())
                    .map(|(a, b)| a - b)
                    .collect(),
            );
        }
        let det = IntMatrix::from_rows(rows).det();
        BigRational::new(det.abs(), factorial(n))
    }

    /// `|det F_i|` for each facet `F_i` (the one omitting vertex `i`): the
    /// determinant of the cone spanned by the remaining vertices. When the
    /// multiplicity is 1 these are exactly the weights.
    pub fn facet_volumes(&self) -> Vec<BigInt> {
        (0..self.vertices.len())
            .map(|i| self.facet_matrix(i).det().abs())
            .collect()
    }

    fn facet_matrix(&self, omit: usize) -> IntMatrix {
        let keep: Vec<usize> = (0..self.vertices.len()).filter(|&j| j != omit).collect();
        self.vertex_matrix().select_rows(&keep)
    }

    /// All lattice points of the closed simplex, sorted.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        self.scan_points(false)
    }

    /// All lattice points strictly inside, sorted. Always contains the
    /// origin.
    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        self.scan_points(true)
    }

    /// `(total, interior)` lattice point counts in one scan.
    pub fn lattice_point_counts(&self) -> (usize, usize) {
        let total = self.scan_points(false);
        let chart = BarycentricChart::new(self);
        let interior = total.iter().filter(|p| chart.strictly_inside(p)).count();
        (total.len(), interior)
    }

    fn scan_points(&self, strict: bool) -> Vec<LatticePoint> {
        let n = self.dim();
        let chart = BarycentricChart::new(self);
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in &self.vertices {
            for (k, c) in v.coords().iter().enumerate() {
                let c = c
                    .to_i64()
                    .expect("vertex coordinates beyond point-scan range");
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        let mut out = Vec::new();
        let mut cursor = lo.clone();
        'scan: loop {
            let p = LatticePoint::from_i64(&cursor);
            let keep = if strict {
                chart.strictly_inside(&p)
            } else {
                chart.inside(&p)
            };
            if keep {
                out.push(p);
            }
            for k in 0..n {
                if cursor[k] < hi[k] {
                    cursor[k] += 1;
                    continue 'scan;
                }
                cursor[k] = lo[k];
            }
            break;
        }
        out.sort();
        out
    }

    /// Whether the number of lattice points (strictly interior ones for
    /// `strict`) stays within `budget` — the scan aborts at the first point
    /// over budget, which makes the singularity-class predicates cheap on
    /// the many-pointed simplices an enumeration mostly rejects.
    fn point_count_within(&self, strict: bool, budget: usize) -> bool {
        let n = self.dim();
        let chart = BarycentricChart::new(self);
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in &self.vertices {
            for (k, c) in v.coords().iter().enumerate() {
                let c = c
                    .to_i64()
                    .expect("vertex coordinates beyond point-scan range");
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        let mut count = 0usize;
        let mut cursor = lo.clone();
        'scan: loop {
            let p = LatticePoint::from_i64(&cursor);
            let keep = if strict {
                chart.strictly_inside(&p)
            } else {
                chart.inside(&p)
            };
            if keep {
                count += 1;
                if count > budget {
                    return false;
                }
            }
            for k in 0..n {
                if cursor[k] < hi[k] {
                    cursor[k] += 1;
                    continue 'scan;
                }
                cursor[k] = lo[k];
            }
            break;
        }
        true
    }

    /// The origin is the only interior lattice point.
    pub fn is_canonical(&self) -> bool {
        // The origin is always strictly interior, so "within budget 1"
        // means "exactly the origin".
        self.point_count_within(true, 1)
    }

    /// The lattice points are exactly the vertices and the origin.
    pub fn is_terminal(&self) -> bool {
        // Vertices and origin are always present, so "within budget n + 2"
        // means "nothing else".
        self.point_count_within(false, self.vertices.len() + 1)
    }

    /// The polar dual `{u : <u, v> >= -1 for all v in P}`, with vertex `j`
    /// the solution of the `n` equations `<u, v_i> = -1`, `i != j`.
    pub fn dual(&self) -> RationalSimplex {
        let verts = (0..self.vertices.len())
            .map(|j| {
                let m = self.facet_matrix(j);
                let rhs = vec![-BigInt::one(); self.dim()];
                solve_system(&m, &rhs).expect("facet cones are nonsingular")
            })
            .collect();
        RationalSimplex::new(verts)
    }

    /// Whether the dual simplex has lattice vertices (the Gorenstein
    /// condition on the variety).
    pub fn is_reflexive(&self) -> bool {
        self.dual().is_integral()
    }

    /// Anticanonical degree `h^n / (mult · λ_0 ⋯ λ_n)`.
    pub fn degree(&self) -> BigRational {
        let n = self.dim() as u32;
        BigRational::new(
            self.weights.h().pow(n),
            &self.multiplicity * self.weights.product(),
        )
    }

    /// Invariant factors of the global quotient group `N / (Z ρ_0 + … + Z ρ_n)`.
    pub fn quotient_group(&self) -> Vec<BigInt> {
        quotient_invariant_factors(&self.vertices).expect("vertices span full rank")
    }

    /// The singular point carried by each facet cone.
    pub fn cone_singularities(&self) -> Vec<ConeSingularity> {
        (0..self.vertices.len())
            .map(|omit| {
                let g = self.facet_matrix(omit);
                let order = g.det().abs();
                let generators: Vec<LatticePoint> =
                    (0..g.rows()).map(|i| g.row_point(i)).collect();
                let invariant_factors = quotient_invariant_factors(&generators)
                    .expect("facet cone generators have full rank");
                let cyclic_weights = if invariant_factors.len() <= 1 && !order.is_one() {
                    Some(cyclic_action_weights(&g, &order))
                } else {
                    None
                };
                ConeSingularity {
                    facet: omit,
                    order,
                    invariant_factors,
                    cyclic_weights,
                }
            })
            .collect()
    }
}

impl fmt::Display for FanoSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FanoSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact membership tests from the affine barycentric coordinates of the
/// simplex: numerators are integer linear functionals, so each query is pure
/// integer arithmetic.
struct BarycentricChart {
    adj: IntMatrix,
    det_negative: bool,
}

impl BarycentricChart {
    fn new(p: &FanoSimplex) -> Self {
        let n = p.dim();
        let mut rows = Vec::with_capacity(n + 1);
        for k in 0..n {
            rows.push(p.vertices.iter().map(|v| v[k].clone()).collect());
        }
        rows.push(vec![BigInt::one(); n + 1]);
        let a = IntMatrix::from_rows(rows);
        let det = a.det();
        BarycentricChart {
            adj: a.adjugate(),
            det_negative: det.is_negative(),
        }
    }

    fn numerators(&self, x: &LatticePoint) -> Vec<BigInt> {
        let n = x.dim();
        (0..n + 1)
            .map(|i| {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    acc += &self.adj[(i, k)] * &x[k];
                }
                acc += &self.adj[(i, n)];
                if self.det_negative {
                    -acc
                } else {
                    acc
                }
            })
            .collect()
    }

    fn inside(&self, x: &LatticePoint) -> bool {
        self.numerators(x).iter().all(|m| !m.is_negative())
    }

    fn strictly_inside(&self, x: &LatticePoint) -> bool {
        self.numerators(x).iter().all(|m| m.is_positive())
    }
}

/// Action weights of the cyclic quotient attached to a full-rank cone: the
/// ambient lattice expressed in cone-generator coordinates is generated over
/// `Z^n` by the rows of `adj(G)/det`, so the quotient group is the subgroup
/// of `(Z/r)^n` those rows generate. Pick a generator and normalize.
fn cyclic_action_weights(g: &IntMatrix, order: &BigInt) -> Vec<BigInt> {
    let n = g.rows();
    let adj = g.adjugate();
    let reduce = |v: &BigInt| -> BigInt { v.mod_floor(order) };

    let generators: Vec<Vec<BigInt>> = (0..n)
        .map(|i| adj.row(i).iter().map(&reduce).collect())
        .collect();

    // Additive closure of the generators in (Z/r)^n.
    let mut elements: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    elements.insert(vec![BigInt::zero(); n]);
    let mut frontier: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]];
    while let Some(x) = frontier.pop() {
        for gen in &generators {
            let y: Vec<BigInt> = x
                .iter()
                .zip(gen)
                .map(|(a, b)| (a + b).mod_floor(order))
                .collect();
            if elements.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }

    let element_order = |e: &[BigInt]| -> BigInt {
        e.iter().fold(BigInt::one(), |acc, c| {
            acc.lcm(&(order / order.gcd(c)))
        })
    };

    elements
        .iter()
        .filter(|e| element_order(e) == *order)
        .map(|e| {
            let mut s = e.clone();
            s.sort();
            s
        })
        .min()
        .expect("a cyclic group contains a generator")
}

/// A simplex with rational vertices, as produced by dualizing.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalSimplex {
    vertices: Vec<Vec<BigRational>>,
}

impl RationalSimplex {
    pub fn new(vertices: Vec<Vec<BigRational>>) -> Self {
        assert!(!vertices.is_empty());
        let dim = vertices[0].len();
        assert!(vertices.iter().all(|v| v.len() == dim));
        assert_eq!(vertices.len(), dim + 1, "expected n + 1 vertices");
        RationalSimplex { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(|c| c.is_integer())
    }

    /// The vertices as lattice points, when all are integral.
    pub fn integral_vertices(&self) -> Option<Vec<LatticePoint>> {
        if !self.is_integral() {
            return None;
        }
        Some(
            self.vertices
                .iter()
                .map(|v| LatticePoint::new(v.iter().map(|c| c.to_integer()).collect()))
                .collect(),
        )
    }

    /// Polar dual with the same vertex/facet indexing convention as
    /// [`FanoSimplex::dual`].
    pub fn dual(&self) -> RationalSimplex {
        let n = self.dim();
        let verts = (0..self.vertices.len())
            .map(|j| {
                // Each defining equation <u, v_i> = -1 is scaled by the
                // denominator lcm of v_i to reach an integer system.
                let mut rows = Vec::with_capacity(n);
                let mut rhs = Vec::with_capacity(n);
                for (i, v) in self.vertices.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let scale = v
                        .iter()
                        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                    rows.push(
                        v.iter()
                            .map(|c| (c * BigRational::from(scale.clone())).to_integer())
                            .collect::<Vec<BigInt>>(),
                    );
                    rhs.push(-scale);
                }
                solve_system(&IntMatrix::from_rows(rows), &rhs)
                    .expect("dual facet system is nonsingular")
            })
            .collect();
        RationalSimplex::new(verts)
    }

    /// Lattice-normalized volume, exact.
    pub fn normalized_volume(&self) -> BigRational {
        let n = self.dim();
        let mut scaled_rows = Vec::with_capacity(n);
        let mut scale_product = BigInt::one();
        for i in 1..=n {
            let edge: Vec<BigRational> = self.vertices[i]
                .iter()
                .zip(&self.vertices[0])
                .map(|(a, b)| a - b)
                .collect();
            let scale = edge
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scaled_rows.push(
                edge.iter()
                    .map(|c| (c * BigRational::from(scale.clone())).to_integer())
                    .collect::<Vec<BigInt>>(),
            );
            scale_product *= scale;
        }
        let det = IntMatrix::from_rows(scaled_rows).det();
        BigRational::new(det.abs(), scale_product * factorial(n))
    }
}

impl fmt::Debug for RationalSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (k, c) in v.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact solution of `m x = rhs` for square nonsingular `m`, via the
/// adjugate.
pub(crate) fn solve_system(m: &IntMatrix, rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    let det = m.det();
    if det.is_zero() {
        return None;
    }
    let adj = m.adjugate();
    Some(
        (0..m.rows())
            .map(|i| {
                let num: BigInt = (0..m.cols()).map(|j| &adj[(i, j)] * &rhs[j]).sum();
                BigRational::new(num, det.clone())
            })
            .collect(),
    )
}
