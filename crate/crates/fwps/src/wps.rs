//! Weight systems and the weighted projective spaces they define.
//!
//! A well-formed coprime weight system `(λ_0, …, λ_n)` determines a unique
//! Fano simplex with multiplicity one — the simplex of `P(λ_0, …, λ_n)` —
//! realized here by presenting `Z^{n+1} / Z·λ` as `Z^n` and taking the images
//! of the standard basis. The module also enumerates the weight systems
//! relevant to the classification searches: Gorenstein systems via unit
//! partitions, and bounded-`h` sweeps for the terminal/canonical searches.

use crate::bounds;
use crate::lattice::{column_hermite, smith_normal_form, IntMatrix, LatticePoint};
use crate::simplex::{FanoSimplex, SingularityClass, WeightSystem};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("a weight system needs at least two weights, got {got}")]
    TooFew { got: usize },
    #[error("weight {index} is not positive")]
    NotPositive { index: usize },
    #[error("weights are not coprime")]
    NotCoprime,
    #[error("weights are not well-formed: some n weights share a factor")]
    NotWellFormed,
}

/// Every `n`-element subset of the weights must be coprime; equivalently no
/// prime divides all weights but one. Exactly the condition for the weighted
/// projective space to have primitive rays.
pub fn is_well_formed(w: &WeightSystem) -> bool {
    let lambdas = w.lambdas();
    (0..lambdas.len()).all(|omit| {
        lambdas
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .fold(BigInt::zero(), |acc, (_, l)| acc.gcd(l))
            .is_one()
    })
}

/// Each weight divides the weight sum `h` — the condition for
/// `P(λ_0, …, λ_n)` to be Gorenstein.
pub fn is_gorenstein_weights(w: &WeightSystem) -> bool {
    lambdas_divide_h(w.lambdas(), w.h())
}

fn lambdas_divide_h(lambdas: &[BigInt], h: &BigInt) -> bool {
    lambdas.iter().all(|l| (h % l).is_zero())
}

/// The simplex of the weighted projective space `P(λ_0, …, λ_n)`: the unique
/// multiplicity-one Fano simplex whose vertex relation is `w`, with vertices
/// in weight order.
///
/// The quotient `Z^{n+1} / Z·λ` is presented as `Z^n` through the Smith
/// transform of the weight column, the vertices being the images of the
/// standard basis; the vertex matrix is then Hermite-reduced to a canonical
/// coordinate choice.
pub fn wps_simplex(w: &WeightSystem) -> Result<FanoSimplex, WeightError> {
    if !is_well_formed(w) {
        return Err(WeightError::NotWellFormed);
    }
    let count = w.len();
    let col = IntMatrix::from_rows(w.lambdas().iter().map(|l| vec![l.clone()]).collect());
    let s = smith_normal_form(&col);
    // left * λ = ±e_0 since the weights are coprime; fix the sign so the
    // kernel of "drop the first coordinate after applying W" is exactly Z·λ.
    let mut transform = s.left;
    let first: BigInt = (0..count)
        .map(|j| &transform[(0, j)] * &w.lambdas()[j])
        .sum();
    if first.is_negative() {
        for i in 0..count {
            transform.negate_row(i);
        }
    }
    let mut rows = Vec::with_capacity(count);
    for j in 0..count {
        rows.push((1..count).map(|i| transform[(i, j)].clone()).collect());
    }
    let reduced = column_hermite(&IntMatrix::from_rows(rows));
    let vertices: Vec<LatticePoint> = (0..count).map(|i| reduced.row_point(i)).collect();
    let simplex = FanoSimplex::new(vertices).expect("well-formed weights define a Fano simplex");
    debug_assert_eq!(simplex.weights(), w);
    debug_assert!(simplex.multiplicity().is_one());
    Ok(simplex)
}

/// Sylvester's sequence `y_0 = 2`, `y_k = 1 + y_0 ⋯ y_{k-1}`, and the
/// bounds `t_k = y_k − 1` derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterTable {
    y: Vec<BigInt>,
}

impl SylvesterTable {
    pub fn y(&self, k: usize) -> &BigInt {
        &self.y[k]
    }

    /// `t_k = y_k − 1`, the largest weight sum a Gorenstein system in
    /// dimension `k` can have.
    pub fn t(&self, k: usize) -> BigInt {
        &self.y[k] - BigInt::one()
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }
}

/// The Sylvester table through `y_upto` inclusive.
pub fn sylvester(upto: usize) -> SylvesterTable {
    let mut y = vec![BigInt::from(2)];
    let mut product = BigInt::from(2);
    for _ in 1..=upto {
        let next = &product + BigInt::one();
        product *= &next;
        y.push(next);
    }
    SylvesterTable { y }
}

/// All well-formed coprime Gorenstein weight systems in dimension `n`,
/// each sorted ascending, the whole list lexicographic.
///
/// A Gorenstein system is the same thing as a unit partition: writing
/// `m_j = h / λ_j`, the weights solve `1 = Σ 1/m_j`. Enumerating ascending
/// unit-partition denominators is exhaustive without any a-priori bound on
/// `h`; the classical bound `h ≤ t_n` is checked in the tests instead of
/// being assumed.
pub fn enumerate_gorenstein_weights(n: usize) -> Vec<WeightSystem> {
    let mut partitions = Vec::new();
    let mut prefix = Vec::with_capacity(n + 1);
    unit_partitions(
        BigRational::one(),
        n + 1,
        &BigInt::one(),
        &mut prefix,
        &mut partitions,
    );
    let mut out = BTreeSet::new();
    for ms in partitions {
        let lcm = ms.iter().fold(BigInt::one(), |acc, m| acc.lcm(m));
        let mut lambdas: Vec<BigInt> = ms.iter().map(|m| &lcm / m).collect();
        let g = lambdas.iter().fold(BigInt::zero(), |acc, l| acc.gcd(l));
        for l in &mut lambdas {
            *l /= &g;
        }
        lambdas.sort();
        let w = WeightSystem::new(lambdas).expect("unit partition weights are positive coprime");
        if is_well_formed(&w) {
            out.insert(w);
        }
    }
    out.into_iter().collect()
}

/// Ascending denominators `m` with `Σ 1/m = target`, `count` terms, each at
/// least `min`.
fn unit_partitions(
    target: BigRational,
    count: usize,
    min: &BigInt,
    prefix: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if !target.is_positive() {
        return;
    }
    if count == 1 {
        // 1/m = target exactly
        if target.numer().is_one() && target.denom() >= min {
            prefix.push(target.denom().clone());
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    // need m >= 1/target (else a single term already overshoots) and
    // m <= count/target (else the remaining terms cannot reach the target)
    let lower = target.recip().ceil().to_integer().max(min.clone());
    let upper = (BigRational::from(BigInt::from(count)) / &target)
        .floor()
        .to_integer();
    let mut m = lower;
    while m <= upper {
        let rest = &target - BigRational::new(BigInt::one(), m.clone());
        prefix.push(m.clone());
        unit_partitions(rest, count - 1, &m, prefix, out);
        prefix.pop();
        m += BigInt::one();
    }
}

/// Weight systems (ascending) in dimension `n` with `h ≤ h_max` whose
/// weighted projective space lies in the requested singularity class.
/// Candidates failing the barycentric or minimal-weight inequalities are
/// discarded before any lattice-point work.
pub fn search_weights(n: usize, h_max: u64, class: SingularityClass) -> Vec<WeightSystem> {
    search_weights_impl(n, h_max, class, true)
}

/// The same search with the inequality pre-filters disabled; exists so the
/// filters can be proven sound by comparison.
pub fn search_weights_unfiltered(
    n: usize,
    h_max: u64,
    class: SingularityClass,
) -> Vec<WeightSystem> {
    search_weights_impl(n, h_max, class, false)
}

fn search_weights_impl(
    n: usize,
    h_max: u64,
    class: SingularityClass,
    prefilter: bool,
) -> Vec<WeightSystem> {
    let mut candidates = Vec::new();
    let mut prefix: Vec<BigInt> = Vec::with_capacity(n + 1);
    ascending_tuples(
        n + 1,
        &BigInt::one(),
        &BigInt::from(h_max),
        &mut prefix,
        &mut candidates,
    );
    let mut out = Vec::new();
    for lambdas in candidates {
        let w = match WeightSystem::new(lambdas) {
            Ok(w) => w,
            Err(_) => continue,
        };
        if !is_well_formed(&w) {
            continue;
        }
        if prefilter {
            if !bounds::barycentric_bound(&w, class).iter().all(|r| r.holds) {
                continue;
            }
            if !bounds::lambda0_lower_bound(&w).holds {
                continue;
            }
        }
        let p = wps_simplex(&w).expect("well-formedness was checked");
        let keep = match class {
            SingularityClass::Terminal => p.is_terminal(),
            SingularityClass::Canonical => p.is_canonical(),
        };
        if keep {
            out.push(w);
        }
    }
    out.sort();
    out
}

/// Ascending tuples of the given length with entries ≥ `min` and sum ≤ `cap`.
fn ascending_tuples(
    len: usize,
    min: &BigInt,
    cap: &BigInt,
    prefix: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if len == 0 {
        out.push(prefix.clone());
        return;
    }
    let mut v = min.clone();
    // each of the remaining entries is at least v
    while &v * BigInt::from(len) <= *cap {
        prefix.push(v.clone());
        let rest = cap - &v;
        ascending_tuples(len - 1, &v, &rest, prefix, out);
        prefix.pop();
        v += BigInt::one();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::positive_relation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(ls: &[u64]) -> WeightSystem {
        WeightSystem::from_u64(ls).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sylvester_values() {
        let table = sylvester(4);
        let ys: Vec<BigInt> = (0..=4).map(|k| table.y(k).clone()).collect();
        assert_eq!(ys, vec![big(2), big(3), big(7), big(43), big(1807)]);
        assert_eq!(table.t(2), big(6));
        assert_eq!(table.t(3), big(42));
        // y_k = y_{k-1}^2 - y_{k-1} + 1
        for k in 1..=4 {
            let prev = table.y(k - 1);
            assert_eq!(*table.y(k), prev * prev - prev + BigInt::one());
        }
        // and y_k = 1 + y_0 ... y_{k-1}
        for k in 1..=4 {
            let prod: BigInt = (0..k).map(|j| table.y(j)).product();
            assert_eq!(*table.y(k), prod + BigInt::one());
        }
    }

    #[test]
    fn well_formedness() {
        assert!(is_well_formed(&w(&[1, 1, 1])));
        assert!(is_well_formed(&w(&[1, 2, 3])));
        assert!(is_well_formed(&w(&[2, 3, 5])));
        assert!(!is_well_formed(&w(&[1, 2, 2])));
        assert!(!is_well_formed(&w(&[1, 2, 4])));
        assert!(is_well_formed(&w(&[1, 1])));
        assert!(!is_well_formed(&w(&[1, 2])));
    }

    #[test]
    fn gorenstein_condition() {
        assert!(is_gorenstein_weights(&w(&[1, 1, 1])));
        assert!(is_gorenstein_weights(&w(&[1, 1, 2])));
        assert!(is_gorenstein_weights(&w(&[1, 2, 3])));
        assert!(!is_gorenstein_weights(&w(&[1, 1, 3])));
        assert!(!is_gorenstein_weights(&w(&[2, 3, 5])));
    }

    #[test]
    fn wps_simplex_round_trips_the_weights_in_order() {
        for ls in [
            vec![1u64, 1, 1],
            vec![1, 1, 2],
            vec![1, 2, 3],
            vec![3, 1, 2],
            vec![1, 1, 1, 1],
            vec![1, 1, 4, 6],
            vec![5, 2, 3],
            vec![1, 1],
        ] {
            let weights = w(&ls);
            let p = wps_simplex(&weights).unwrap();
            assert!(p.multiplicity().is_one());
            assert_eq!(p.weights(), &weights, "weights moved for {weights}");
            assert_eq!(
                positive_relation(p.vertices()).unwrap(),
                weights.lambdas(),
                "relation disagrees for {weights}"
            );
        }
    }

    #[test]
    fn wps_simplex_facet_volumes_are_the_weights() {
        let p = wps_simplex(&w(&[1, 2, 3])).unwrap();
        assert_eq!(p.facet_volumes(), vec![big(1), big(2), big(3)]);
        assert_eq!(
            p.normalized_volume(),
            BigRational::new(big(6), big(2))
        );
    }

    #[test]
    fn wps_simplex_rejects_malformed_weights() {
        assert_eq!(wps_simplex(&w(&[1, 2, 2])), Err(WeightError::NotWellFormed));
        assert_eq!(wps_simplex(&w(&[2, 3, 4])), Err(WeightError::NotWellFormed));
    }

    #[test]
    fn wps_simplex_random_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let mut seen = 0;
        while seen < 120 {
            let n = rng.gen_range(1..=3);
            let lambdas: Vec<BigInt> =
                (0..=n).map(|_| big(rng.gen_range(1..=6))).collect();
            let Ok(weights) = WeightSystem::new(lambdas) else {
                continue;
            };
            if !is_well_formed(&weights) {
                continue;
            }
            let p = wps_simplex(&weights).unwrap();
            assert_eq!(p.weights(), &weights);
            assert!(p.multiplicity().is_one());
            // n! vol = h for a genuine weighted projective space
            let nf = crate::simplex::factorial(n);
            assert_eq!(
                p.normalized_volume() * BigRational::from(nf),
                BigRational::from(weights.h().clone())
            );
            seen += 1;
        }
    }

    #[test]
    fn gorenstein_dim1_and_dim2() {
        let dim1 = enumerate_gorenstein_weights(1);
        assert_eq!(dim1, vec![w(&[1, 1])]);

        let dim2 = enumerate_gorenstein_weights(2);
        assert_eq!(dim2, vec![w(&[1, 1, 1]), w(&[1, 1, 2]), w(&[1, 2, 3])]);
    }

    /// Independent route: scan all ascending tuples with h ≤ t_n directly
    /// for the divisibility, coprimality and well-formedness conditions.
    fn gorenstein_by_scan(n: usize, h_cap: u64) -> Vec<WeightSystem> {
        let mut candidates = Vec::new();
        let mut prefix = Vec::new();
        ascending_tuples(
            n + 1,
            &BigInt::one(),
            &BigInt::from(h_cap),
            &mut prefix,
            &mut candidates,
        );
        let mut out = Vec::new();
        for lambdas in candidates {
            let Ok(ws) = WeightSystem::new(lambdas) else {
                continue;
            };
            if is_well_formed(&ws) && is_gorenstein_weights(&ws) {
                out.push(ws);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn gorenstein_enumeration_matches_direct_scan() {
        assert_eq!(enumerate_gorenstein_weights(1), gorenstein_by_scan(1, 2));
        assert_eq!(enumerate_gorenstein_weights(2), gorenstein_by_scan(2, 6));
        assert_eq!(enumerate_gorenstein_weights(3), gorenstein_by_scan(3, 42));
    }

    #[test]
    fn gorenstein_dim3_census() {
        let dim3 = enumerate_gorenstein_weights(3);
        assert_eq!(dim3.len(), 14);
        for sample in [
            vec![1u64, 1, 1, 1],
            vec![1, 1, 2, 4],
            vec![1, 2, 3, 6],
            vec![1, 1, 4, 6],
            vec![1, 6, 14, 21],
        ] {
            assert!(dim3.contains(&w(&sample)), "missing {sample:?}");
        }
        let t3 = sylvester(3).t(3);
        for ws in &dim3 {
            assert!(*ws.h() <= t3, "h bound violated by {ws}");
            assert!(wps_simplex(ws).unwrap().is_reflexive(), "{ws} not reflexive");
        }
    }

    #[test]
    fn search_weights_terminal_surface() {
        let found = search_weights(2, 10, SingularityClass::Terminal);
        assert_eq!(found, vec![w(&[1, 1, 1])]);
    }

    #[test]
    fn search_weights_canonical_surface() {
        let found = search_weights(2, 6, SingularityClass::Canonical);
        assert_eq!(found, vec![w(&[1, 1, 1]), w(&[1, 1, 2]), w(&[1, 2, 3])]);
    }

    #[test]
    fn search_prefilter_is_sound() {
        for class in [SingularityClass::Terminal, SingularityClass::Canonical] {
            assert_eq!(
                search_weights(2, 12, class),
                search_weights_unfiltered(2, 12, class),
                "filter dropped a surface system ({class})"
            );
            assert_eq!(
                search_weights(3, 8, class),
                search_weights_unfiltered(3, 8, class),
                "filter dropped a threefold system ({class})"
            );
        }
    }
}
