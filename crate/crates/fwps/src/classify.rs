//! Hermite-matrix machinery and the enumeration pipeline: every fake
//! weighted projective space with given weights and singularity class, each
//! isomorphism class exactly once.
//!
//! The engine rests on two facts. First, every fake weighted projective
//! space arises from the genuine weighted projective space with the same
//! weights by shrinking the ambient lattice, and the index-`k` sublattices
//! of `Z^n` are in bijection with the lower-triangular Hermite matrices of
//! determinant `k` — so applying each such matrix to the vertex coordinates
//! of the base simplex reaches every candidate. Second, the multiplicity of
//! a canonical candidate is capped by `h^{n−1}/(λ₁⋯λₙ)`, which turns the
//! search into a finite sweep. Distinct matrices can hit isomorphic
//! simplices, so results are deduplicated by a permutation-minimized normal
//! form.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::canonical_mult_bound;
use crate::lattice::{column_hermite, IntMatrix, LatticePoint};
use crate::simplex::{factorial, ConeSingularity, FanoSimplex, WeightSystem};
use crate::wps::{wps_simplex, WeightError};

/// Lower-triangular integer matrix with positive diagonal entries and each
/// below-diagonal entry reduced modulo the diagonal entry of its *column*.
/// For fixed dimension and determinant these matrices parametrize the
/// index-`det` sublattices of `Z^n`, each exactly once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HermiteMatrix {
    entries: IntMatrix,
}

impl HermiteMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    /// Product of the diagonal, always positive.
    pub fn det(&self) -> BigInt {
        (0..self.dim()).map(|i| self.entries[(i, i)].clone()).product()
    }
}

impl fmt::Display for HermiteMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries)
    }
}

/// All Hermite matrices of dimension `n` and determinant `k`, in a fixed
/// deterministic order: diagonals lexicographically, then below-diagonal
/// entries lexicographically in row-major position order.
///
/// The count for `n = 2` is the divisor sum σ(k): one matrix family per
/// ordered factorization `k = d₁d₂`, with `d₁` choices of the entry below
/// the first diagonal.
pub fn enumerate_hermite(n: usize, k: u64) -> Vec<HermiteMatrix> {
    assert!(n >= 1, "dimension must be positive");
    assert!(k >= 1, "determinant must be positive");
    let mut out = Vec::new();
    let mut diag = Vec::with_capacity(n);
    fill_diagonals(n, k, &mut diag, &mut out);
    out
}

/// Extend the diagonal prefix with every ordered factorization of `k`,
/// ascending, and emit all matrices for each completed diagonal.
fn fill_diagonals(slots: usize, k: u64, diag: &mut Vec<u64>, out: &mut Vec<HermiteMatrix>) {
    if slots == 1 {
        diag.push(k);
        emit_off_diagonals(diag, out);
        diag.pop();
        return;
    }
    for d in 1..=k {
        if k % d == 0 {
            diag.push(d);
            fill_diagonals(slots - 1, k / d, diag, out);
            diag.pop();
        }
    }
}

/// Odometer over the below-diagonal entries: position `(i, j)` ranges over
/// `0..diag[j]`, and the rightmost position in row-major order moves
/// fastest, which is exactly lexicographic order of the value tuples.
fn emit_off_diagonals(diag: &[u64], out: &mut Vec<HermiteMatrix>) {
    let n = diag.len();
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .collect();
    let limits: Vec<u64> = positions.iter().map(|&(_, j)| diag[j]).collect();
    let mut values = vec![0u64; positions.len()];
    loop {
        let mut m = IntMatrix::zero(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        for (idx, &(i, j)) in positions.iter().enumerate() {
            m[(i, j)] = BigInt::from(values[idx]);
        }
        out.push(HermiteMatrix { entries: m });

        let mut idx = positions.len();
        loop {
            if idx == 0 {
                return;
            }
            idx -= 1;
            values[idx] += 1;
            if values[idx] < limits[idx] {
                break;
            }
            values[idx] = 0;
        }
    }
}

/// Image of a weighted-projective simplex under a Hermite matrix acting on
/// vertex coordinates. `None` when some image vertex is imprimitive: such a
/// candidate corresponds to no fake weighted projective space and is
/// filtered out, not failed.
///
/// Accepted images keep the source's weights and have multiplicity equal to
/// the matrix determinant.
pub fn apply_hermite(h: &HermiteMatrix, p: &FanoSimplex) -> Option<FanoSimplex> {
    assert!(
        p.multiplicity().is_one(),
        "the source must be a genuine weighted projective space"
    );
    let image = p.vertex_matrix().mul(&h.matrix().transpose());
    let vertices: Vec<LatticePoint> = (0..image.rows()).map(|i| image.row_point(i)).collect();
    if vertices.iter().any(|v| !v.is_primitive()) {
        return None;
    }
    let q = FanoSimplex::new(vertices)
        .expect("an invertible image of a valid simplex stays valid");
    debug_assert_eq!(*q.multiplicity(), h.det());
    debug_assert!(q.weights().same_multiset(p.weights()));
    Some(q)
}

/// Canonical vertex matrix of a simplex: over all vertex orderings, reduce
/// the vertex-row matrix by unimodular column operations and keep the
/// lexicographically smallest result.
///
/// Invariant under vertex relabeling and under any change of lattice basis,
/// so two simplices are lattice-equivalent exactly when their normal forms
/// agree; idempotent, since rebuilding a simplex from its normal form
/// changes neither the equivalence class nor the minimization.
pub fn normal_form(p: &FanoSimplex) -> IntMatrix {
    let count = p.vertices().len();
    let mut best: Option<IntMatrix> = None;
    for perm in (0..count).permutations(count) {
        let rows: Vec<Vec<BigInt>> = perm
            .iter()
            .map(|&i| p.vertices()[i].coords().to_vec())
            .collect();
        let reduced = column_hermite(&IntMatrix::from_rows(rows));
        if best.as_ref().is_none_or(|b| reduced < *b) {
            best = Some(reduced);
        }
    }
    best.expect("a simplex has at least two vertices")
}

/// One isomorphism class in a catalog: the canonical vertex matrix plus
/// every invariant a consumer needs without recomputation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    /// Canonical representative; [`normal_form`] of any member of the class.
    pub normal_form_vertices: IntMatrix,
    /// Weights shared by the whole class, sorted ascending.
    pub weights: WeightSystem,
    pub multiplicity: BigInt,
    pub terminal: bool,
    pub canonical: bool,
    pub reflexive: bool,
    pub degree: BigRational,
    /// Invariant factors of the quotient of the lattice by the vertex span.
    pub quotient: Vec<BigInt>,
    /// Singularity type of each cone over a facet of the representative.
    pub cone_singularities: Vec<ConeSingularity>,
}

impl ClassificationRecord {
    /// The canonical representative as a live simplex.
    pub fn simplex(&self) -> FanoSimplex {
        let rows: Vec<LatticePoint> = (0..self.normal_form_vertices.rows())
            .map(|i| self.normal_form_vertices.row_point(i))
            .collect();
        FanoSimplex::new(rows).expect("a stored normal form is a valid vertex list")
    }
}

/// Build the catalog row for an accepted candidate, re-deriving everything
/// from the canonical representative so the row is independent of which
/// member of the class was found first.
fn record_from_nf(nf: IntMatrix, w: &WeightSystem) -> ClassificationRecord {
    let vertices: Vec<LatticePoint> = (0..nf.rows()).map(|i| nf.row_point(i)).collect();
    let canon = FanoSimplex::new(vertices).expect("a normal form is a valid vertex list");
    assert!(
        canon.weights().same_multiset(w),
        "weights must survive the lattice change"
    );
    let n = canon.dim();
    assert_eq!(
        canon.normalized_volume() * BigRational::from(factorial(n)),
        BigRational::from(canon.weights().h() * canon.multiplicity()),
        "the volume identity must hold on every catalog row"
    );
    ClassificationRecord {
        weights: w.sorted(),
        multiplicity: canon.multiplicity().clone(),
        terminal: canon.is_terminal(),
        canonical: canon.is_canonical(),
        reflexive: canon.is_reflexive(),
        degree: canon.degree(),
        quotient: canon.quotient_group(),
        cone_singularities: canon.cone_singularities(),
        normal_form_vertices: nf,
    }
}

/// Which classes an enumeration keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassFilter {
    Terminal,
    Canonical,
    /// Reflexive simplices; always canonical, so the canonical cap applies.
    Gorenstein,
    /// No singularity restriction; needs an explicit multiplicity cap.
    All,
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassFilter::Terminal => "terminal",
            ClassFilter::Canonical => "canonical",
            ClassFilter::Gorenstein => "gorenstein",
            ClassFilter::All => "all",
        })
    }
}

fn passes(p: &FanoSimplex, class: ClassFilter) -> bool {
    match class {
        ClassFilter::Terminal => p.is_terminal(),
        ClassFilter::Canonical => p.is_canonical(),
        ClassFilter::Gorenstein => p.is_reflexive(),
        ClassFilter::All => true,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error("enumeration without a singularity restriction needs an explicit multiplicity cap")]
    MissingMultCap,
}

/// Result of one enumeration run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationOutcome {
    /// One record per isomorphism class, sorted by multiplicity and then by
    /// normal form.
    pub records: Vec<ClassificationRecord>,
    /// True when the genuine weighted projective space itself fails the
    /// class filter. Its quotients only ever add singularities, so the
    /// whole search short-circuits to empty.
    pub base_rejected: bool,
    /// Largest observed `mult·λ₀λ₁⋯λₙ/h^{n−1}` over the records — at most
    /// 1 exactly where the conjecturally sharper cap with the smallest
    /// weight included would hold. Recorded as data, never assumed.
    pub max_conjecture_ratio: Option<BigRational>,
}

/// `mult·λ₀λ₁⋯λₙ/h^{n−1}` for one record.
fn conjecture_ratio(r: &ClassificationRecord) -> BigRational {
    let n = r.weights.dim();
    BigRational::new(
        &r.multiplicity * r.weights.product(),
        num::pow::pow(r.weights.h().clone(), n - 1),
    )
}

/// Every fake weighted projective space with the given weights and
/// singularity class, one [`ClassificationRecord`] per isomorphism class.
///
/// The multiplicity cap defaults to the floor of `h^{n−1}/(λ₁⋯λₙ)` — sound
/// for the terminal, canonical, and Gorenstein filters, which all imply
/// canonical singularities. With no filter at all there is no finite
/// theorem cap, so `mult_cap` becomes required. An explicit `mult_cap`
/// always overrides the default.
///
/// The sweep over determinants runs in parallel; results are merged by a
/// set union keyed on normal form, so worker partitioning cannot change
/// the outcome.
pub fn enumerate_fake_wps(
    w: &WeightSystem,
    class: ClassFilter,
    mult_cap: Option<u64>,
) -> Result<EnumerationOutcome, EnumerateError> {
    let base = wps_simplex(w)?;
    let cap = match mult_cap {
        Some(c) => c,
        None if class == ClassFilter::All => return Err(EnumerateError::MissingMultCap),
        None => canonical_mult_bound(w)
            .floor()
            .to_integer()
            .to_u64()
            .expect("multiplicity cap beyond enumeration range"),
    };
    if !passes(&base, class) {
        log::info!(
            "weighted projective space for {w} already fails the {class} filter; \
             its quotients only add singularities, so the result is empty"
        );
        return Ok(EnumerationOutcome {
            records: Vec::new(),
            base_rejected: true,
            max_conjecture_ratio: None,
        });
    }
    let n = base.dim();
    let canonical_cap = canonical_mult_bound(w);
    let classes: BTreeMap<IntMatrix, ClassificationRecord> = (1..=cap)
        .into_par_iter()
        .map(|k| {
            let mut found: BTreeMap<IntMatrix, ClassificationRecord> = BTreeMap::new();
            for h in enumerate_hermite(n, k) {
                let Some(q) = apply_hermite(&h, &base) else {
                    continue;
                };
                if !passes(&q, class) {
                    continue;
                }
                // Terminal and reflexive simplices are canonical, so those
                // filters prove canonicity without another point scan.
                let canonical = match class {
                    ClassFilter::All => q.is_canonical(),
                    _ => true,
                };
                if canonical {
                    assert!(
                        BigRational::from(q.multiplicity().clone()) <= canonical_cap,
                        "a canonical quotient exceeded the multiplicity cap"
                    );
                }
                let nf = normal_form(&q);
                if !found.contains_key(&nf) {
                    let record = record_from_nf(nf, w);
                    found.insert(record.normal_form_vertices.clone(), record);
                }
            }
            found
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut records: Vec<ClassificationRecord> = classes.into_values().collect();
    records.sort_by(|a, b| {
        (&a.multiplicity, &a.normal_form_vertices).cmp(&(&b.multiplicity, &b.normal_form_vertices))
    });
    let max_conjecture_ratio = records.iter().map(conjecture_ratio).max();
    Ok(EnumerationOutcome {
        records,
        base_rejected: false,
        max_conjecture_ratio,
    })
}

/// The order-5 diagonal quotient of projective 3-space, constructed from
/// the lattice side of the quotient: the ambient lattice is enlarged by the
/// generator `(1, 2, 3)/5`, and the four rays of the projective-space fan
/// are rewritten in a basis of the enlarged lattice.
pub fn quotient_construction_simplex() -> FanoSimplex {
    // Generators of five times the enlarged lattice, inside Z³.
    let scaled = IntMatrix::from_i64([[5, 0, 0], [0, 5, 0], [0, 0, 5], [1, 2, 3]]);
    // A basis of that row lattice: column-reduce the transpose (same
    // column lattice) and keep the pivot columns.
    let reduced = column_hermite(&scaled.transpose()).transpose();
    assert!(reduced.row(3).iter().all(|e| e.is_zero()));
    let basis = reduced.select_rows(&[0, 1, 2]);
    let det = basis.det();
    assert_eq!(
        det.abs(),
        BigInt::from(25),
        "the enlarged lattice must contain Z³ with index 5"
    );
    // Rewrite each ray ρ in enlarged-lattice coordinates: the basis rows
    // are `basis/5`, so the coefficients are x = 5·ρ·adj(basis)/det(basis),
    // and they must come out integral.
    let rays = IntMatrix::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]);
    let cofactor_image = rays.mul(&basis.adjugate());
    let mut vertices = Vec::with_capacity(4);
    for i in 0..4 {
        let coords: Vec<BigInt> = cofactor_image
            .row(i)
            .iter()
            .map(|e| {
                let (quot, rem) = (e * BigInt::from(5)).div_rem(&det);
                assert!(rem.is_zero(), "rays must be lattice points of the enlarged lattice");
                quot
            })
            .collect();
        vertices.push(LatticePoint::new(coords));
    }
    FanoSimplex::new(vertices).expect("the quotient rays form a valid Fano simplex")
}

/// Whether the directly-constructed order-5 quotient of projective 3-space
/// is recognized by the weighted enumeration: its normal form is looked up
/// among the terminal records for weights (1, 1, 1, 1).
pub fn quotient_construction_crosscheck() -> bool {
    let q = quotient_construction_simplex();
    let w = WeightSystem::from_u64(&[1, 1, 1, 1]).expect("valid weights");
    let outcome =
        enumerate_fake_wps(&w, ClassFilter::Terminal, None).expect("well-formed weights");
    let nf = normal_form(&q);
    outcome.records.iter().any(|r| r.normal_form_vertices == nf)
}
