//! Exact-rational inequalities on the volume, multiplicity, and weights of
//! Fano simplices.
//!
//! Every check is packaged as a [`BoundReport`] comparing an exact left-hand
//! side to an exact right-hand side, oriented so that `holds` is true
//! precisely when `lhs ≤ rhs` (or `lhs < rhs` for strict variants) — for a
//! lower bound the constant therefore sits on the left. Nothing here is
//! approximate: some right-hand sides grow like `15^(2^n)` and are carried
//! as arbitrary-precision rationals.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One};

use crate::simplex::{factorial, FanoSimplex, SingularityClass, WeightSystem};
use crate::wps::{is_gorenstein_weights, sylvester};

/// One exact inequality check.
///
/// `slack = rhs − lhs`, so zero slack on a non-strict bound means the
/// instance meets the bound exactly, and negative slack means a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// Which inequality was checked.
    pub name: &'static str,
    /// Human-readable description of the instance checked.
    pub instance: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
    /// Whether the comparison demands strict inequality.
    pub strict: bool,
    /// Whether the inequality is satisfied.
    pub holds: bool,
    /// `rhs − lhs`.
    pub slack: BigRational,
}

impl BoundReport {
    fn check(
        name: &'static str,
        instance: String,
        lhs: BigRational,
        rhs: BigRational,
        strict: bool,
    ) -> Self {
        let holds = if strict { lhs < rhs } else { lhs <= rhs };
        let slack = &rhs - &lhs;
        BoundReport {
            name,
            instance,
            lhs,
            rhs,
            strict,
            holds,
            slack,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} {} for {}",
            self.name,
            self.lhs,
            if self.strict { "<" } else { "<=" },
            self.rhs,
            if self.holds { "holds" } else { "FAILS" },
            self.instance
        )
    }
}

/// Product of the sorted weights with the smallest one left out.
fn tail_product(sorted: &WeightSystem) -> BigInt {
    sorted.lambdas()[1..].iter().product()
}

/// Volume bound `vol P ≤ k·hⁿ/(n!·λ₁⋯λₙ)`, where `k` counts interior
/// lattice points and the smallest weight is excluded from the product.
///
/// Equivalent to [`mult_bound`] through the identity `n!·vol P = h·mult P`,
/// and tight on the same instances: the order-3 quotient of the projective
/// plane meets it with equality.
pub fn corput_volume_bound(p: &FanoSimplex) -> BoundReport {
    let n = p.dim();
    let (_, interior) = p.lattice_point_counts();
    let sorted = p.weights().sorted();
    let rhs = BigRational::new(
        BigInt::from(interior) * num::pow::pow(sorted.h().clone(), n),
        factorial(n) * tail_product(&sorted),
    );
    BoundReport::check(
        "corput_volume_bound",
        p.to_string(),
        p.normalized_volume(),
        rhs,
        false,
    )
}

/// Multiplicity bound `mult P ≤ k·h^{n−1}/(λ₁⋯λₙ)`, with `k` the interior
/// lattice-point count and the smallest weight excluded from the product.
pub fn mult_bound(p: &FanoSimplex) -> BoundReport {
    mult_bound_claimed(p.multiplicity(), p)
}

/// [`mult_bound`] with the left-hand side supplied by the caller instead of
/// recomputed. Catalog verification feeds the *stored* multiplicity through
/// here, so a corrupted record fails the bound rather than slipping past a
/// recomputation.
pub fn mult_bound_claimed(claimed: &BigInt, p: &FanoSimplex) -> BoundReport {
    let n = p.dim();
    let (_, interior) = p.lattice_point_counts();
    let sorted = p.weights().sorted();
    let rhs = BigRational::new(
        BigInt::from(interior) * num::pow::pow(sorted.h().clone(), n - 1),
        tail_product(&sorted),
    );
    BoundReport::check(
        "mult_bound",
        p.to_string(),
        BigRational::from(claimed.clone()),
        rhs,
        false,
    )
}

/// Multiplicity cap `h^{n−1}/(λ₁⋯λₙ)` for simplices with at worst canonical
/// singularities and weights `w`; the smallest weight is excluded from the
/// product. This is [`mult_bound`] specialized to a single interior point.
///
/// The same quantity factors as `(λ₀/h) · hⁿ/(λ₀λ₁⋯λₙ)`: the smallest
/// weight fraction times the anticanonical degree of the weighted
/// projective space with these weights. Both forms are computed and must
/// agree exactly; enumeration cutoffs take the floor of the result.
pub fn canonical_mult_bound(w: &WeightSystem) -> BigRational {
    let n = w.dim();
    let sorted = w.sorted();
    let cap = BigRational::new(
        num::pow::pow(sorted.h().clone(), n - 1),
        tail_product(&sorted),
    );
    let fraction = BigRational::new(sorted.lambdas()[0].clone(), sorted.h().clone());
    let degree = BigRational::new(num::pow::pow(sorted.h().clone(), n), sorted.product());
    assert_eq!(
        cap,
        fraction * degree,
        "the two algebraic forms of the canonical multiplicity cap must agree"
    );
    cap
}

/// Universal volume bound `(1/n!)·2^{3n−2}·15^{(n−1)·2^{n+1}}` for canonical
/// simplices in dimension `n`, as an exact rational.
///
/// Astronomically loose from dimension 2 upward (the dimension-2 constant
/// is already `8·15⁸`), but exact in dimension 1, where the segment
/// `[−1, 1]` has volume 2 and meets it with equality. It is a predicate,
/// never an iteration range.
pub fn pikhurko_volume_bound(n: usize) -> BigRational {
    assert!(n >= 1, "dimension must be positive");
    let fifteen_exp = (n - 1)
        .checked_mul(
            1usize
                .checked_shl(n as u32 + 1)
                .expect("dimension too large for the volume-bound exponent"),
        )
        .expect("dimension too large for the volume-bound exponent");
    let numerator = num::pow::pow(BigInt::from(2), 3 * n - 2)
        * num::pow::pow(BigInt::from(15), fifteen_exp);
    BigRational::new(numerator, factorial(n))
}

/// [`pikhurko_volume_bound`] checked against a concrete simplex. The bound
/// is a theorem only for canonical instances; callers pick the corpus.
pub fn pikhurko_volume_report(p: &FanoSimplex) -> BoundReport {
    BoundReport::check(
        "pikhurko_volume_bound",
        p.to_string(),
        p.normalized_volume(),
        pikhurko_volume_bound(p.dim()),
        false,
    )
}

/// Lower bound `λ₀/h ≥ 1/(8·15^{2^{n+1}})` on the smallest weight fraction
/// of a canonical simplex. The constant sits on the left, so `holds` is
/// satisfaction of the inequality as stated.
///
/// Like [`pikhurko_volume_bound`] this is a theorem only for canonical
/// instances; the check itself never looks at lattice points.
pub fn lambda0_lower_bound(w: &WeightSystem) -> BoundReport {
    let exp = 1usize
        .checked_shl(w.dim() as u32 + 1)
        .expect("dimension too large for the weight-bound exponent");
    let lhs = BigRational::new(
        BigInt::one(),
        BigInt::from(8) * num::pow::pow(BigInt::from(15), exp),
    );
    let sorted = w.sorted();
    let rhs = BigRational::new(sorted.lambdas()[0].clone(), sorted.h().clone());
    BoundReport::check("lambda0_lower_bound", w.to_string(), lhs, rhs, false)
}

/// Outcome of the Gorenstein weight bounds. The inequalities only apply to
/// Gorenstein systems; `gorenstein` records whether they did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NillReport {
    pub gorenstein: bool,
    pub reports: Vec<BoundReport>,
}

/// Bounds specific to Gorenstein weight systems: the weight sum satisfies
/// `h ≤ t_n`, and each sorted weight satisfies `λ_k/h ≥ 1/((k+1)·t_{n−k})`,
/// where `t_k` is one less than the `k`-th Sylvester number.
///
/// Non-Gorenstein weights get a flagged, empty report list — the
/// inequalities simply do not apply to them.
pub fn nill_bounds(w: &WeightSystem) -> NillReport {
    if !is_gorenstein_weights(w) {
        return NillReport {
            gorenstein: false,
            reports: Vec::new(),
        };
    }
    let n = w.dim();
    let table = sylvester(n);
    let sorted = w.sorted();
    let mut reports = vec![BoundReport::check(
        "nill_h_bound",
        w.to_string(),
        BigRational::from(sorted.h().clone()),
        BigRational::from(table.t(n)),
        false,
    )];
    for (k, lambda) in sorted.lambdas().iter().enumerate() {
        let lhs = BigRational::new(
            BigInt::one(),
            BigInt::from(k as u64 + 1) * table.t(n - k),
        );
        let rhs = BigRational::new(lambda.clone(), sorted.h().clone());
        reports.push(BoundReport::check(
            "nill_weight_bound",
            format!("{w}, k = {k}"),
            lhs,
            rhs,
            false,
        ));
    }
    NillReport {
        gorenstein: true,
        reports,
    }
}

/// Necessary conditions on the sorted weights of a simplex in the requested
/// singularity class: `λ_k/h ≤ 1/(n−k+2)` for each `k ∈ {2,…,n}`, with
/// strict inequality demanded for the terminal class.
///
/// Below dimension 2 the index range is empty and no reports are produced.
/// These are filters, not characterizations: weights passing every report
/// can still fail the exact lattice-point test.
pub fn barycentric_bound(w: &WeightSystem, class: SingularityClass) -> Vec<BoundReport> {
    let n = w.dim();
    let strict = class == SingularityClass::Terminal;
    let sorted = w.sorted();
    let mut out = Vec::new();
    for k in 2..=n {
        let lhs = BigRational::new(sorted.lambdas()[k].clone(), sorted.h().clone());
        let rhs = BigRational::new(BigInt::one(), BigInt::from((n - k + 2) as u64));
        out.push(BoundReport::check(
            "barycentric_bound",
            format!("{w}, k = {k}"),
            lhs,
            rhs,
            strict,
        ));
    }
    out
}

/// Accumulated result of one bound across a corpus.
#[derive(Debug, Clone)]
pub struct BoundStats {
    pub name: &'static str,
    /// How many reports the bound produced over the corpus.
    pub checks: usize,
    /// Reports that did not hold. Empty for the proved inequalities unless
    /// the implementation itself is wrong.
    pub failures: Vec<BoundReport>,
    /// The minimum-slack report: the instance that comes closest to the
    /// bound, or breaches it furthest if anything failed.
    pub tightest: Option<BoundReport>,
}

/// Summary of every applicable bound over a corpus of simplices.
#[derive(Debug, Clone)]
pub struct CorpusSummary {
    pub instances: usize,
    /// Per-bound statistics, ordered by bound name.
    pub stats: Vec<BoundStats>,
}

impl CorpusSummary {
    pub fn total_checks(&self) -> usize {
        self.stats.iter().map(|s| s.checks).sum()
    }

    pub fn total_failures(&self) -> usize {
        self.stats.iter().map(|s| s.failures.len()).sum()
    }

    /// True when no report failed. Anything else indicates a bug, since
    /// every inequality checked is a theorem on its applicable instances.
    pub fn is_clean(&self) -> bool {
        self.total_failures() == 0
    }

    /// Statistics for one bound, when the corpus exercised it at all.
    pub fn stat(&self, name: &str) -> Option<&BoundStats> {
        self.stats.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for CorpusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} instances, {} checks, {} failures",
            self.instances,
            self.total_checks(),
            self.total_failures()
        )?;
        for s in &self.stats {
            write!(f, "  {}: {} checks, {} failures", s.name, s.checks, s.failures.len())?;
            if let Some(t) = &s.tightest {
                write!(f, ", tightest slack {} at {}", t.slack, t.instance)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Run every applicable inequality on every instance and summarize.
///
/// Volume and multiplicity bounds apply to every simplex; the universal
/// volume bound, the smallest-weight lower bound, and the barycentric
/// filters apply to canonical instances (with strictness upgraded for
/// terminal ones); the Gorenstein bounds apply whenever the weights are
/// Gorenstein. A failure on a valid instance means an implementation bug,
/// and callers should treat it as fatal.
pub fn verify_corpus(instances: &[FanoSimplex]) -> CorpusSummary {
    let reports = instances.iter().flat_map(applicable_reports).collect();
    summarize_reports(instances.len(), reports)
}

/// Every report [`verify_corpus`] would produce for one simplex: the volume
/// and multiplicity bounds unconditionally, the canonical-only bounds when
/// the instance is canonical, and the Gorenstein bounds when the weights
/// are Gorenstein.
pub fn applicable_reports(p: &FanoSimplex) -> Vec<BoundReport> {
    let mut reports = vec![corput_volume_bound(p), mult_bound(p)];
    if p.is_canonical() {
        reports.push(BoundReport::check(
            "canonical_mult_bound",
            p.to_string(),
            BigRational::from(p.multiplicity().clone()),
            canonical_mult_bound(p.weights()),
            false,
        ));
        reports.push(pikhurko_volume_report(p));
        reports.push(lambda0_lower_bound(p.weights()));
        let class = if p.is_terminal() {
            SingularityClass::Terminal
        } else {
            SingularityClass::Canonical
        };
        reports.extend(barycentric_bound(p.weights(), class));
    }
    reports.extend(nill_bounds(p.weights()).reports);
    reports
}

/// Bucket loose reports into a [`CorpusSummary`]; `instances` is how many
/// simplices produced them.
pub fn summarize_reports(instances: usize, reports: Vec<BoundReport>) -> CorpusSummary {
    let mut buckets: BTreeMap<&'static str, Vec<BoundReport>> = BTreeMap::new();
    for r in reports {
        buckets.entry(r.name).or_default().push(r);
    }
    let stats = buckets
        .into_iter()
        .map(|(name, reports)| {
            let checks = reports.len();
            let tightest = reports.iter().min_by(|a, b| a.slack.cmp(&b.slack)).cloned();
            let failures = reports.into_iter().filter(|r| !r.holds).collect();
            BoundStats {
                name,
                checks,
                failures,
                tightest,
            }
        })
        .collect();
    CorpusSummary { instances, stats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wps::{enumerate_gorenstein_weights, is_well_formed, wps_simplex};
    use num::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    fn weights(raw: &[u64]) -> WeightSystem {
        WeightSystem::from_u64(raw).unwrap()
    }

    fn surface_quotient() -> FanoSimplex {
        FanoSimplex::from_i64_vertices(&[&[2, -1], &[-1, 2], &[-1, -1]]).unwrap()
    }

    fn threefold_quotient() -> FanoSimplex {
        FanoSimplex::from_i64_vertices(&[&[1, 0, 0], &[0, 1, 0], &[1, -3, 5], &[-2, 2, -5]])
            .unwrap()
    }

    fn plane() -> FanoSimplex {
        FanoSimplex::from_i64_vertices(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn segment() -> FanoSimplex {
        FanoSimplex::from_i64_vertices(&[&[1], &[-1]]).unwrap()
    }

    /// Random coprime weight system with `dim + 1` entries in `1..=max`.
    fn random_weights(rng: &mut ChaCha8Rng, dim: usize, max: u64) -> WeightSystem {
        loop {
            let raw: Vec<BigInt> = (0..=dim)
                .map(|_| BigInt::from(rng.gen_range(1..=max)))
                .collect();
            let g = raw
                .iter()
                .fold(BigInt::zero(), |acc, v| num::integer::gcd(acc, v.clone()));
            if let Ok(w) = WeightSystem::new(raw.iter().map(|v| v / &g).collect()) {
                return w;
            }
        }
    }

    /// Random well-formed weight system, suitable for simplex construction.
    fn random_well_formed(rng: &mut ChaCha8Rng, dim: usize, max: u64) -> WeightSystem {
        loop {
            let w = random_weights(rng, dim, max);
            if is_well_formed(&w) {
                return w;
            }
        }
    }

    /// Random Fano triangle with small vertices, by rejection. Unlike the
    /// weighted-projective samples these routinely have multiplicity > 1
    /// and several interior points.
    fn random_fano_surface(rng: &mut ChaCha8Rng) -> FanoSimplex {
        loop {
            let rows: Vec<Vec<i64>> = (0..3)
                .map(|_| (0..2).map(|_| rng.gen_range(-5..=5)).collect())
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            if let Ok(p) = FanoSimplex::from_i64_vertices(&refs) {
                return p;
            }
        }
    }

    #[test]
    fn corput_volume_is_tight_on_the_order_three_quotient() {
        let r = corput_volume_bound(&surface_quotient());
        assert_eq!(r.lhs, rat(9, 2));
        assert_eq!(r.rhs, rat(9, 2));
        assert!(!r.strict);
        assert!(r.holds);
        assert!(r.slack.is_zero());
    }

    #[test]
    fn corput_volume_on_the_order_five_quotient() {
        let r = corput_volume_bound(&threefold_quotient());
        assert_eq!(r.lhs, rat(10, 3));
        assert_eq!(r.rhs, rat(32, 3));
        assert!(r.holds);
        assert_eq!(r.slack, rat(22, 3));
    }

    #[test]
    fn corput_volume_on_the_plane_simplex() {
        let r = corput_volume_bound(&plane());
        assert_eq!(r.lhs, rat(3, 2));
        assert_eq!(r.rhs, rat(9, 2));
        assert!(r.holds);
    }

    #[test]
    fn mult_bound_is_tight_on_the_order_three_quotient() {
        let r = mult_bound(&surface_quotient());
        assert_eq!(r.lhs, rat(3, 1));
        assert_eq!(r.rhs, rat(3, 1));
        assert!(r.holds);
        assert!(r.slack.is_zero());
    }

    #[test]
    fn mult_bound_on_the_order_five_quotient_has_slack_eleven() {
        let r = mult_bound(&threefold_quotient());
        assert_eq!(r.lhs, rat(5, 1));
        assert_eq!(r.rhs, rat(16, 1));
        assert!(r.holds);
        assert_eq!(r.slack, rat(11, 1));
    }

    #[test]
    fn canonical_cap_known_values() {
        assert_eq!(canonical_mult_bound(&weights(&[1, 1, 1])), rat(3, 1));
        assert_eq!(canonical_mult_bound(&weights(&[1, 1, 1, 1])), rat(16, 1));
        assert_eq!(canonical_mult_bound(&weights(&[1, 2, 3])), rat(1, 1));
        assert_eq!(canonical_mult_bound(&weights(&[1, 1, 2])), rat(2, 1));
        // The cap is reached: the order-3 quotient is canonical with
        // multiplicity 3 on weights (1, 1, 1).
        assert_eq!(
            BigRational::from(surface_quotient().multiplicity().clone()),
            canonical_mult_bound(&weights(&[1, 1, 1]))
        );
    }

    #[test]
    fn canonical_cap_forms_agree_for_random_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xB0);
        for _ in 0..1000 {
            let dim = rng.gen_range(1..=4);
            let w = random_weights(&mut rng, dim, 40);
            let sorted = w.sorted();
            let degree =
                BigRational::new(num::pow::pow(sorted.h().clone(), dim), sorted.product());
            let fraction = BigRational::new(sorted.lambdas()[0].clone(), sorted.h().clone());
            assert_eq!(canonical_mult_bound(&w), fraction * degree, "{w}");
        }
    }

    #[test]
    fn universal_volume_constants() {
        assert_eq!(pikhurko_volume_bound(1), rat(2, 1));
        let dim2 = BigRational::from(big(8) * num::pow::pow(big(15), 8));
        assert_eq!(pikhurko_volume_bound(2), dim2);
        assert_eq!(dim2, BigRational::from(big(20_503_125_000)));
        let dim3 = BigRational::new(big(128) * num::pow::pow(big(15), 32), big(6));
        assert_eq!(pikhurko_volume_bound(3), dim3);
    }

    #[test]
    fn universal_volume_bound_is_exact_in_dimension_one() {
        let r = pikhurko_volume_report(&segment());
        assert_eq!(r.lhs, rat(2, 1));
        assert_eq!(r.rhs, rat(2, 1));
        assert!(r.holds);
        assert!(r.slack.is_zero());
    }

    #[test]
    fn universal_volume_bound_has_enormous_slack_in_dimension_two() {
        let r = pikhurko_volume_report(&surface_quotient());
        assert_eq!(r.lhs, rat(9, 2));
        assert!(r.holds);
        assert!(r.slack > BigRational::from(big(20_000_000_000)));
    }

    #[test]
    fn smallest_weight_lower_bound_known_values() {
        let r = lambda0_lower_bound(&weights(&[1, 1, 1]));
        assert_eq!(r.lhs, BigRational::new(BigInt::one(), big(20_503_125_000)));
        assert_eq!(r.rhs, rat(1, 3));
        assert!(r.holds);

        let r = lambda0_lower_bound(&weights(&[1, 2, 3]));
        assert_eq!(r.rhs, rat(1, 6));
        assert!(r.holds);

        let r = lambda0_lower_bound(&weights(&[1, 1, 1, 1]));
        assert_eq!(
            r.lhs,
            BigRational::new(BigInt::one(), big(8) * num::pow::pow(big(15), 16))
        );
        assert_eq!(r.rhs, rat(1, 4));
        assert!(r.holds);
    }

    #[test]
    fn gorenstein_bounds_on_one_two_three_meet_with_equality() {
        let nill = nill_bounds(&weights(&[1, 2, 3]));
        assert!(nill.gorenstein);
        // h ≤ t₂ and the k = 0 weight bound are both tight at h = 6.
        let h = &nill.reports[0];
        assert_eq!(h.name, "nill_h_bound");
        assert_eq!(h.lhs, rat(6, 1));
        assert_eq!(h.rhs, rat(6, 1));
        assert!(h.holds && h.slack.is_zero());

        let per_k: Vec<&BoundReport> = nill.reports[1..].iter().collect();
        assert_eq!(per_k.len(), 3);
        assert_eq!(per_k[0].lhs, rat(1, 6));
        assert_eq!(per_k[0].rhs, rat(1, 6));
        assert!(per_k[0].slack.is_zero());
        assert_eq!(per_k[1].lhs, rat(1, 4));
        assert_eq!(per_k[1].rhs, rat(1, 3));
        assert_eq!(per_k[2].lhs, rat(1, 3));
        assert_eq!(per_k[2].rhs, rat(1, 2));
        assert!(nill.reports.iter().all(|r| r.holds));
    }

    #[test]
    fn gorenstein_bounds_on_projective_plane_weights() {
        let nill = nill_bounds(&weights(&[1, 1, 1]));
        assert!(nill.gorenstein);
        let k0 = &nill.reports[1];
        assert_eq!(k0.lhs, rat(1, 6));
        assert_eq!(k0.rhs, rat(1, 3));
        assert!(k0.holds);
    }

    #[test]
    fn non_gorenstein_weights_are_flagged_and_unchecked() {
        let nill = nill_bounds(&weights(&[1, 1, 3]));
        assert!(!nill.gorenstein);
        assert!(nill.reports.is_empty());
    }

    #[test]
    fn gorenstein_bounds_hold_on_every_enumerated_system() {
        for n in 1..=3 {
            for w in enumerate_gorenstein_weights(n) {
                let nill = nill_bounds(&w);
                assert!(nill.gorenstein, "{w}");
                assert!(nill.reports.iter().all(|r| r.holds), "{w}");
            }
        }
    }

    #[test]
    fn barycentric_filter_known_values() {
        let reports = barycentric_bound(&weights(&[1, 1, 1, 1]), SingularityClass::Terminal);
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.strict && r.holds));
        assert_eq!(reports[0].lhs, rat(1, 4));
        assert_eq!(reports[0].rhs, rat(1, 3));
        assert_eq!(reports[1].lhs, rat(1, 4));
        assert_eq!(reports[1].rhs, rat(1, 2));

        // (1, 1, 3) breaches the canonical filter: 3/5 > 1/2.
        let fail = barycentric_bound(&weights(&[1, 1, 3]), SingularityClass::Canonical);
        assert_eq!(fail.len(), 1);
        assert_eq!(fail[0].lhs, rat(3, 5));
        assert_eq!(fail[0].rhs, rat(1, 2));
        assert!(!fail[0].holds);
        assert!(fail[0].slack < BigRational::zero());

        // (1, 2, 3) sits exactly on the canonical edge, so it passes the
        // non-strict filter and fails the strict one.
        let edge = barycentric_bound(&weights(&[1, 2, 3]), SingularityClass::Canonical);
        assert_eq!(edge.len(), 1);
        assert!(edge[0].holds);
        assert!(edge[0].slack.is_zero());
        let strict = barycentric_bound(&weights(&[1, 2, 3]), SingularityClass::Terminal);
        assert!(!strict[0].holds);
    }

    #[test]
    fn barycentric_filter_is_empty_below_dimension_two() {
        assert!(barycentric_bound(&weights(&[1, 1]), SingularityClass::Canonical).is_empty());
    }

    #[test]
    fn proved_bounds_hold_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xB1);
        let mut corpus = vec![surface_quotient(), threefold_quotient(), plane(), segment()];
        for _ in 0..60 {
            let dim = rng.gen_range(1..=3);
            let w = random_well_formed(&mut rng, dim, 12);
            corpus.push(wps_simplex(&w).unwrap());
        }
        for _ in 0..80 {
            corpus.push(random_fano_surface(&mut rng));
        }
        for p in &corpus {
            assert!(corput_volume_bound(p).holds, "{p}");
            assert!(mult_bound(p).holds, "{p}");
            if p.is_canonical() {
                assert!(pikhurko_volume_report(p).holds, "{p}");
                assert!(lambda0_lower_bound(p.weights()).holds, "{p}");
                let class = if p.is_terminal() {
                    SingularityClass::Terminal
                } else {
                    SingularityClass::Canonical
                };
                let filters = barycentric_bound(p.weights(), class);
                assert!(filters.iter().all(|r| r.holds), "{p}");
            }
            let nill = nill_bounds(p.weights());
            assert!(nill.reports.iter().all(|r| r.holds), "{p}");
        }
    }

    #[test]
    fn corpus_summary_flags_nothing_on_known_instances() {
        let corpus = vec![
            surface_quotient(),
            threefold_quotient(),
            wps_simplex(&weights(&[1, 1, 1])).unwrap(),
            wps_simplex(&weights(&[1, 1, 2])).unwrap(),
            wps_simplex(&weights(&[1, 2, 3])).unwrap(),
        ];
        let summary = verify_corpus(&corpus);
        assert_eq!(summary.instances, 5);
        assert!(summary.is_clean());
        let corput = summary.stat("corput_volume_bound").unwrap();
        assert_eq!(corput.checks, 5);
        // The order-3 quotient meets the volume bound exactly.
        assert!(corput.tightest.as_ref().unwrap().slack.is_zero());
        let rendered = summary.to_string();
        assert!(rendered.contains("mult_bound"));
        assert!(rendered.contains("0 failures"));
    }

    #[test]
    fn corpus_summary_on_the_threefold_alone() {
        let summary = verify_corpus(&[threefold_quotient()]);
        assert!(summary.is_clean());
        let mult = summary.stat("mult_bound").unwrap();
        assert_eq!(mult.checks, 1);
        assert_eq!(mult.tightest.as_ref().unwrap().slack, rat(11, 1));
    }

    #[test]
    fn empty_corpus_gives_empty_summary() {
        let summary = verify_corpus(&[]);
        assert_eq!(summary.instances, 0);
        assert!(summary.stats.is_empty());
        assert!(summary.is_clean());
    }

    #[test]
    fn canonical_cap_row_appears_exactly_for_canonical_instances() {
        let reports = applicable_reports(&surface_quotient());
        let cap = reports
            .iter()
            .find(|r| r.name == "canonical_mult_bound")
            .expect("canonical instances carry the cap row");
        assert_eq!(cap.lhs, rat(3, 1));
        assert_eq!(cap.rhs, rat(3, 1));
        assert!(cap.holds && cap.slack.is_zero());

        // P(1, 1, 3) has a second interior point, so no canonical-only rows.
        let loose = applicable_reports(&wps_simplex(&weights(&[1, 1, 3])).unwrap());
        assert!(loose.iter().all(|r| r.name != "canonical_mult_bound"));
        assert!(loose.iter().all(|r| r.name != "pikhurko_volume_bound"));
    }
}
