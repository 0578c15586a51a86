//! Exact linear algebra over the rationals.
//!
//! Every kernel, image, intersection and subquotient in the crate goes
//! through this module. Subspaces are kept as the nonzero rows of a reduced
//! row-echelon form, which is unique, so two subspaces are equal exactly
//! when their stored bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("map does not descend to the quotients: {0}")]
    NotWellDefined(&'static str),
    #[error("matrix is singular")]
    Singular,
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. A zero-row input gives a `0 x cols` matrix,
    /// so the column count must be passed explicitly.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Integer matrix literal; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix literal")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product. Panics when the inner dimensions disagree.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_in_place(&mut rows, self.cols).len()
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() < n || pivots.last().is_some_and(|&c| c >= n) {
            return Err(LinalgError::Singular);
        }
        Self::from_rows(n, aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Solves `self * x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &c) in aug.iter().zip(&pivots) {
            x[c] = row[self.cols].clone();
        }
        Some(x)
    }
}

/// Reduced row-echelon form of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix) -> Rref {
    let mut rows = m.to_rows();
    let pivot_cols = rref_in_place(&mut rows, m.cols);
    let rank = pivot_cols.len();
    Rref {
        reduced: Matrix::from_rows(m.cols, rows).expect("rows keep their length"),
        pivot_cols,
        rank,
    }
}

/// Gauss-Jordan elimination in place. Rows keep their order up to swaps, all
/// zero rows end up at the bottom, and the pivot columns are returned.
fn rref_in_place(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let factor = other[c].clone();
            for (x, p) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the null space, read off from the free columns of the RREF.
fn null_vectors(reduced: &[Vec<Rational>], pivots: &[usize], ncols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(pivots) {
                if !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            v
        })
        .collect()
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    let mut rows = m.to_rows();
    let pivots = rref_in_place(&mut rows, m.cols);
    Subspace::from_vectors(m.cols, null_vectors(&rows, &pivots, m.cols))
}

pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::from_vectors(m.rows, m.columns())
}

/// A linear subspace of `Q^ambient`, stored canonically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    // Nonzero rows of the RREF of any spanning set.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) [", self.dim(), self.ambient)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, 0..ambient)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let rows = idx
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace {
            ambient,
            rows,
            pivots: idx,
        }
    }

    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut rows: Vec<Vec<Rational>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length must match ambient"))
            .collect();
        let pivots = rref_in_place(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The canonical basis vectors.
    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Basis as the columns of an `ambient x dim` matrix.
    pub fn basis(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.rows)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.rows.iter().all(|v| self.contains_vector(v))
    }

    /// Rows spanning the annihilator `{w : w . v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        null_vectors(&self.rows, &self.pivots, self.ambient)
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        if self.dim() == self.ambient {
            return Ok(other.clone());
        }
        if other.dim() == self.ambient {
            return Ok(self.clone());
        }
        // a ∩ b is cut out by the equations of both.
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        let m = Matrix::from_rows(self.ambient, eqs)?;
        Ok(kernel_basis(&m))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        Ok(Subspace::from_vectors(
            self.ambient,
            self.rows.iter().chain(&other.rows).cloned(),
        ))
    }

    /// Image of this subspace under `f`.
    pub fn image_under(&self, f: &Matrix) -> Result<Subspace, LinalgError> {
        if f.cols() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: f.cols(),
            });
        }
        Ok(Subspace::from_vectors(
            f.rows(),
            self.rows.iter().map(|v| f.mul_vec(v)),
        ))
    }
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    a.intersect(b)
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    a.sum(b)
}

/// `{v : f v ∈ s}`.
pub fn preimage(f: &Matrix, s: &Subspace) -> Result<Subspace, LinalgError> {
    if f.rows() != s.ambient_dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: s.ambient_dim(),
            found: f.rows(),
        });
    }
    let eqs = s.annihilator();
    if eqs.is_empty() {
        return Ok(Subspace::full(f.cols()));
    }
    let q = Matrix::from_rows(f.rows(), eqs)?;
    Ok(kernel_basis(&q.mul(f)))
}

/// A subquotient `ambient / sub` with explicit coordinates.
///
/// `project` is a `dim x N` matrix that kills `sub` and sends the chosen
/// representatives (the columns of `section`) to the standard basis. It is
/// only meaningful on vectors of `ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub ambient: Subspace,
    pub sub: Subspace,
    pub project: Matrix,
    pub section: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.section.cols()
    }

    /// Representatives of the quotient basis, as vectors of the big space.
    pub fn representatives(&self) -> Vec<Vec<Rational>> {
        self.section.columns()
    }

    pub fn project_vector(&self, v: &[Rational]) -> Vec<Rational> {
        self.project.mul_vec(v)
    }
}

/// Incremental echelon basis used to pick complements greedily.
struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = &w[*p] / &row[*p];
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        w
    }

    /// Adds `v` if it is independent of what is already there.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}

pub fn quotient(ambient: &Subspace, sub: &Subspace) -> Result<Quotient, LinalgError> {
    ambient.check_same_ambient(sub)?;
    if !ambient.contains(sub) {
        return Err(LinalgError::NotContained);
    }
    let n = ambient.ambient_dim();
    let mut ech = Echelon::new();
    for v in sub.vectors() {
        ech.insert(v);
    }
    let complement: Vec<Vec<Rational>> = ambient
        .vectors()
        .iter()
        .filter(|v| ech.insert(v))
        .cloned()
        .collect();
    let dim = complement.len();
    debug_assert_eq!(dim + sub.dim(), ambient.dim());

    let section = Matrix::from_columns(n, &complement);
    if dim == 0 {
        return Ok(Quotient {
            ambient: ambient.clone(),
            sub: sub.clone(),
            project: Matrix::zeros(0, n),
            section,
        });
    }

    // Left inverse of [sub | complement], supported on a set of rows where
    // that matrix is invertible.
    let stacked: Vec<Vec<Rational>> = sub.vectors().iter().chain(&complement).cloned().collect();
    let m = stacked.len();
    let mut t = stacked.clone();
    let rows_used = rref_in_place(&mut t, n);
    debug_assert_eq!(rows_used.len(), m);
    let square = Matrix::from_rows(
        m,
        rows_used
            .iter()
            .map(|&i| stacked.iter().map(|col| col[i].clone()).collect())
            .collect(),
    )?;
    let inv = square.inverse()?;
    let mut project = Matrix::zeros(dim, n);
    for a in 0..dim {
        for (b, &i) in rows_used.iter().enumerate() {
            project[(a, i)] = inv[(sub.dim() + a, b)].clone();
        }
    }
    Ok(Quotient {
        ambient: ambient.clone(),
        sub: sub.clone(),
        project,
        section,
    })
}

/// Matrix of the map `src.ambient / src.sub -> dst.ambient / dst.sub`
/// induced by `f`. Fails if `f` does not carry the source pair into the
/// target pair.
pub fn induced_map(f: &Matrix, src: &Quotient, dst: &Quotient) -> Result<Matrix, LinalgError> {
    if f.cols() != src.ambient.ambient_dim() || f.rows() != dst.ambient.ambient_dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: src.ambient.ambient_dim(),
            found: f.cols(),
        });
    }
    if !dst.sub.contains(&src.sub.image_under(f)?) {
        return Err(LinalgError::NotWellDefined(
            "f(sub) is not inside the target sub",
        ));
    }
    if !dst.ambient.contains(&src.ambient.image_under(f)?) {
        return Err(LinalgError::NotWellDefined(
            "f(ambient) is not inside the target ambient",
        ));
    }
    Ok(dst.project.mul(&f.mul(&src.section)))
}

/// Binomial coefficient with `C(a, b) = 0` outside `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecq(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let r = rref(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 2], &[0, 0]]));

        let id = Matrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);

        let r = rref(&Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.reduced, Matrix::identity(2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, Subspace::from_vectors(2, [vecq(&[-2, 1])]));
        assert_eq!(kernel_basis(&Matrix::identity(3)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)), Subspace::full(3));
    }

    #[test]
    fn image_examples() {
        let im = image_basis(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(im, Subspace::from_vectors(2, [vecq(&[1, 2])]));
        assert_eq!(image_basis(&Matrix::zeros(3, 2)).dim(), 0);
        assert_eq!(image_basis(&Matrix::identity(3)), Subspace::full(3));
    }

    #[test]
    fn intersect_and_sum_examples() {
        let xy = Subspace::coordinate(3, [0, 1]);
        let xz = Subspace::coordinate(3, [0, 2]);
        assert_eq!(xy.intersect(&xz).unwrap(), Subspace::coordinate(3, [0]));
        assert_eq!(xy.intersect(&xy).unwrap(), xy);
        let a = Subspace::from_vectors(2, [vecq(&[1, 1])]);
        let b = Subspace::from_vectors(2, [vecq(&[1, -1])]);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));

        let x = Subspace::coordinate(3, [0]);
        let y = Subspace::coordinate(3, [1]);
        assert_eq!(x.sum(&y).unwrap(), xy);
        assert_eq!(xy.sum(&Subspace::zero(3)).unwrap(), xy);

        assert!(matches!(
            xy.intersect(&Subspace::full(2)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(xy.sum(&Subspace::full(4)).is_err());
    }

    #[test]
    fn preimage_examples() {
        let f = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(preimage(&f, &Subspace::full(2)).unwrap(), Subspace::full(2));
        assert_eq!(preimage(&f, &Subspace::zero(2)).unwrap(), kernel_basis(&f));
        let s = Subspace::from_vectors(2, [vecq(&[1, 0])]);
        assert_eq!(preimage(&f, &s).unwrap(), Subspace::full(2));
        assert!(preimage(&f, &Subspace::full(3)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let v = Subspace::from_vectors(3, [vecq(&[1, 2, 0]), vecq(&[0, 1, 1])]);
        assert_eq!(quotient(&v, &v).unwrap().dim(), 0);

        let q = quotient(&v, &Subspace::zero(3)).unwrap();
        assert_eq!(q.dim(), 2);
        // project restricted to V is invertible
        let restricted = q.project.mul(&v.basis());
        assert_eq!(restricted.rank(), 2);

        let q = quotient(&Subspace::full(2), &Subspace::coordinate(2, [0])).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project.mul(&q.section), Matrix::identity(1));
        assert!(q.project.mul_vec(&vecq(&[5, 0])).iter().all(Zero::is_zero));

        assert_eq!(
            quotient(&Subspace::coordinate(2, [0]), &Subspace::full(2)),
            Err(LinalgError::NotContained)
        );
    }

    #[test]
    fn induced_map_examples() {
        let amb = Subspace::full(3);
        let sub = Subspace::coordinate(3, [1]);
        let q = quotient(&amb, &sub).unwrap();
        assert_eq!(
            induced_map(&Matrix::identity(3), &q, &q).unwrap(),
            Matrix::identity(2)
        );
        assert!(induced_map(&Matrix::zeros(3, 3), &q, &q).unwrap().is_zero());

        // swapping coordinates 0 and 1 moves `sub` outside itself
        let swap = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(matches!(
            induced_map(&swap, &q, &q),
            Err(LinalgError::NotWellDefined(_))
        ));
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(
            Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(),
            Err(LinalgError::Singular)
        );
        let x = m.solve(&vecq(&[3, 2])).unwrap();
        assert_eq!(x, vecq(&[1, 1]));
        assert!(Matrix::from_i64(&[&[1, 1], &[1, 1]])
            .solve(&vecq(&[0, 1]))
            .is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(-1, 0), 0);
    }
}
