//! Exact integer linear algebra: lattice points, dense matrices and the
//! Smith/Hermite normal forms the rest of the crate is built on.
//!
//! All arithmetic is arbitrary precision. The normal form routines track the
//! unimodular transforms they apply, so every factorization can be checked by
//! multiplying it back out.

use num::{BigInt, Integer, One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("generators do not span a full-rank sublattice")]
    NotFullRank,
    #[error("rays admit no one-dimensional relation: not simplicial")]
    NotSimplicialRelation,
    #[error("relation coefficient {index} is not positive: origin is not interior")]
    OriginNotInterior { index: usize },
}

/// A point of the ambient lattice `Z^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    coords: Vec<BigInt>,
}

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        assert!(!coords.is_empty(), "lattice point needs at least one coordinate");
        LatticePoint { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![BigInt::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Greatest common divisor of the coordinates; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        vec_gcd(&self.coords)
    }

    /// A vector is primitive when its coordinates are coprime. The zero
    /// vector is not primitive.
    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The primitive vector on the same ray, for nonzero input.
    pub fn primitivized(&self) -> LatticePoint {
        let g = self.content();
        assert!(!g.is_zero(), "zero vector spans no ray");
        LatticePoint::new(self.coords.iter().map(|c| c / &g).collect())
    }
}

impl Index<usize> for LatticePoint {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64<const R: usize, const C: usize>(entries: [[i64; C]; R]) -> Self {
        Self::from_rows(
            entries
                .iter()
                .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
                .collect(),
        )
    }

    /// Matrix whose rows are the given points.
    pub fn from_points(points: &[LatticePoint]) -> Self {
        Self::from_rows(points.iter().map(|p| p.coords.clone()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_point(&self, i: usize) -> LatticePoint {
        LatticePoint::new(self.row(i).to_vec())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &rhs[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// Image of a column vector under this (square) matrix.
    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        assert_eq!(self.cols, p.dim(), "dimension mismatch applying matrix");
        let coords = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(p.coords())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        LatticePoint::new(coords)
    }

    /// Submatrix keeping the listed rows, in the listed order.
    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        Self::from_rows(keep.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// `row[dst] += c * row[src]`
    pub fn add_multiple_of_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        assert_ne!(dst, src);
        for j in 0..self.cols {
            let delta = c * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// `col[dst] += c * col[src]`
    pub fn add_multiple_of_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        assert_ne!(dst, src);
        for i in 0..self.rows {
            let delta = c * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign_negative = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign_negative = !sign_negative;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign_negative {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Adjugate matrix, so that `self * adjugate = det * identity`.
    pub fn adjugate(&self) -> IntMatrix {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        let mut adj = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.strike_out(i, j);
                let cof = minor.det();
                adj[(j, i)] = if (i + j) % 2 == 0 { cof } else { -cof };
            }
        }
        adj
    }

    fn strike_out(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.rows;
        if n == 1 {
            return IntMatrix::from_rows(vec![vec![BigInt::one()]]);
        }
        let mut rows = Vec::with_capacity(n - 1);
        for i in 0..n {
            if i == row {
                continue;
            }
            let r: Vec<BigInt> = (0..n)
                .filter(|&j| j != col)
                .map(|j| self[(i, j)].clone())
                .collect();
            rows.push(r);
        }
        IntMatrix::from_rows(rows)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

pub(crate) fn vec_gcd(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// The outcome of `left * m * right = diag` with `left`, `right` unimodular,
/// diagonal entries nonnegative, each dividing the next, zeros trailing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal as a full matrix of the original shape.
    pub fn diag_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.left.rows(), self.right.rows());
        for (i, d) in self.diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }
}

/// Smallest-absolute-value nonzero entry of the trailing submatrix starting
/// at `(t, t)`, scanning row major so ties resolve deterministically.
fn min_abs_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].abs() <= a[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Clear row `t` and column `t` beyond the pivot at `(t, t)` by Euclidean
/// row/column steps, mirroring every step into the transform accumulators.
/// Whenever a nonzero remainder appears it is swapped into the pivot, so the
/// pivot strictly shrinks and the loop terminates with the pivot dividing
/// nothing but itself in its row and column.
fn eliminate(a: &mut IntMatrix, left: &mut IntMatrix, right: &mut IntMatrix, t: usize) {
    'restart: loop {
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        for i in t + 1..a.rows() {
            if a[(i, t)].is_zero() {
                continue;
            }
            let (q, rem) = a[(i, t)].div_mod_floor(&a[(t, t)]);
            if !q.is_zero() {
                let c = -q;
                a.add_multiple_of_row(i, t, &c);
                left.add_multiple_of_row(i, t, &c);
            }
            if !rem.is_zero() {
                a.swap_rows(t, i);
                left.swap_rows(t, i);
                continue 'restart;
            }
        }
        for j in t + 1..a.cols() {
            if a[(t, j)].is_zero() {
                continue;
            }
            let (q, rem) = a[(t, j)].div_mod_floor(&a[(t, t)]);
            if !q.is_zero() {
                let c = -q;
                a.add_multiple_of_col(j, t, &c);
                right.add_multiple_of_col(j, t, &c);
            }
            if !rem.is_zero() {
                a.swap_cols(t, j);
                right.swap_cols(t, j);
                continue 'restart;
            }
        }
        return;
    }
}

/// Smith normal form with tracked transforms.
///
/// Pivots are chosen as the smallest nonzero entry in absolute value, ties
/// broken row major, which keeps intermediate entries small and makes the
/// computation deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    let k = r.min(c);

    let mut t = 0;
    while t < k {
        let Some((pi, pj)) = min_abs_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        eliminate(&mut a, &mut left, &mut right, t);
        t += 1;
    }

    // Repair the divisibility chain: merging a bad pair by a column add and
    // re-eliminating replaces (d_i, d_j) with (gcd, lcm); the product of the
    // leading entries strictly drops, so the sweep stabilizes.
    loop {
        let mut fixed = false;
        for i in 0..k.saturating_sub(1) {
            let di = a[(i, i)].clone();
            let dj = a[(i + 1, i + 1)].clone();
            if di.is_zero() || (&dj % &di).is_zero() {
                continue;
            }
            let one = BigInt::one();
            a.add_multiple_of_col(i, i + 1, &one);
            right.add_multiple_of_col(i, i + 1, &one);
            eliminate(&mut a, &mut left, &mut right, i);
            fixed = true;
        }
        if !fixed {
            break;
        }
    }

    for i in 0..k {
        if a[(i, i)].is_negative() {
            a.negate_row(i);
            left.negate_row(i);
        }
    }

    let diag: Vec<BigInt> = (0..k).map(|i| a[(i, i)].clone()).collect();
    let out = SmithDecomposition { left, diag, right };
    debug_assert_eq!(out.left.mul(m).mul(&out.right), out.diag_matrix());
    out
}

/// How a set of lattice vectors sits inside the ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SublatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// Index `[Z^n : <generators>]`, or `Infinite` when the generators do not
/// span a finite-index sublattice.
pub fn sublattice_index(generators: &[LatticePoint]) -> SublatticeIndex {
    let n = check_common_dim(generators);
    let s = smith_normal_form(&IntMatrix::from_points(generators));
    if s.rank() < n {
        return SublatticeIndex::Infinite;
    }
    SublatticeIndex::Finite(s.diag.iter().product())
}

/// Invariant factors (each greater than one) of `Z^n` modulo the sublattice
/// spanned by the generators; the trivial quotient yields an empty list.
pub fn quotient_invariant_factors(
    generators: &[LatticePoint],
) -> Result<Vec<BigInt>, LatticeError> {
    let n = check_common_dim(generators);
    let s = smith_normal_form(&IntMatrix::from_points(generators));
    if s.rank() < n {
        return Err(LatticeError::NotFullRank);
    }
    Ok(s.diag.into_iter().filter(|d| !d.is_one()).collect())
}

/// The unique coprime positive relation `sum λ_i ρ_i = 0` among `n + 1` rays
/// spanning `R^n` with the origin interior to their convex hull.
///
/// The relation lattice of `n + 1` rays of full rank is one dimensional; its
/// primitive generator is read off the last row of the Smith left transform.
/// Rays that span a lower-dimensional space are rejected, as is any relation
/// with a nonpositive coefficient (the origin then fails to be interior).
pub fn positive_relation(rays: &[LatticePoint]) -> Result<Vec<BigInt>, LatticeError> {
    let n = check_common_dim(rays);
    assert_eq!(rays.len(), n + 1, "expected n + 1 rays in dimension n");
    let s = smith_normal_form(&IntMatrix::from_points(rays));
    if s.rank() < n {
        return Err(LatticeError::NotSimplicialRelation);
    }
    let mut lam: Vec<BigInt> = s.left.row(n).to_vec();
    let g = vec_gcd(&lam);
    for l in &mut lam {
        *l /= &g;
    }
    if lam.iter().all(|l| l.is_negative()) {
        for l in &mut lam {
            *l = -std::mem::take(l);
        }
    }
    if let Some(index) = lam.iter().position(|l| !l.is_positive()) {
        return Err(LatticeError::OriginNotInterior { index });
    }
    Ok(lam)
}

fn check_common_dim(points: &[LatticePoint]) -> usize {
    assert!(!points.is_empty(), "empty generator list");
    let n = points[0].dim();
    assert!(
        points.iter().all(|p| p.dim() == n),
        "points of mixed dimension"
    );
    n
}

/// Column-style Hermite form of an arbitrary integer matrix under
/// right-multiplication by a unimodular matrix.
///
/// Pivot rows carry a positive pivot, zeros to its right, and entries to its
/// left reduced into `[0, pivot)`; rows with no pivot are whatever the column
/// lattice forces them to be. This is the unique such representative of the
/// column lattice, so it is a canonical form for `m * GL(cols, Z)`.
pub fn column_hermite(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (r, c) = (a.rows(), a.cols());
    let mut pivot_col = 0;
    for row in 0..r {
        if pivot_col == c {
            break;
        }
        if (pivot_col..c).all(|j| a[(row, j)].is_zero()) {
            continue;
        }
        // Euclid across the active columns until only the pivot column meets
        // this row.
        loop {
            let j0 = (pivot_col..c)
                .filter(|&j| !a[(row, j)].is_zero())
                .min_by_key(|&j| (a[(row, j)].abs(), j))
                .expect("nonzero entry exists");
            a.swap_cols(pivot_col, j0);
            if a[(row, pivot_col)].is_negative() {
                a.negate_col(pivot_col);
            }
            let mut clean = true;
            for j in pivot_col + 1..c {
                if a[(row, j)].is_zero() {
                    continue;
                }
                let (q, rem) = a[(row, j)].div_mod_floor(&a[(row, pivot_col)]);
                if !q.is_zero() {
                    let coef = -q;
                    a.add_multiple_of_col(j, pivot_col, &coef);
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // Reduce this pivot row's earlier entries into [0, pivot). The pivot
        // column is zero above this row, so nothing already fixed moves.
        for j in 0..pivot_col {
            let q = a[(row, j)].div_floor(&a[(row, pivot_col)]);
            if !q.is_zero() {
                let coef = -q;
                a.add_multiple_of_col(j, pivot_col, &coef);
            }
        }
        pivot_col += 1;
    }
    a
}

/// Hermite reduction of a square nonsingular matrix: the unique
/// lower-triangular representative of `m * GL(n, Z)` with positive diagonal
/// and each below-diagonal entry reduced modulo the diagonal entry of its
/// row. Determinant is preserved up to sign.
pub fn hermite_reduce(m: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    assert!(m.is_square(), "hermite_reduce expects a square matrix");
    let h = column_hermite(m);
    let n = h.rows();
    if (0..n).any(|i| h[(i, i)].is_zero()) {
        return Err(LatticeError::SingularMatrix);
    }
    Ok(h)
}
