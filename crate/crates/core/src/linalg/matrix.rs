//! Dense matrices over a [`Field`] with exact Gauss-Jordan elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the shape when `rows` is empty.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for x in row {
                debug_assert_eq!(x.field(), field);
                data.push(x);
            }
        }
        Matrix {
            field,
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    /// A single column vector.
    pub fn column(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_rows(field, 1, v.iter().map(|x| vec![x.clone()]).collect())
    }

    /// A single row vector.
    pub fn row_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_rows(field, v.len(), vec![v.to_vec()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.field, other.field, "matrix product field mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        if c.is_zero() {
            return self.clone();
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| if b.is_zero() { a.clone() } else { a + &(c * b) })
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(x * a);
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let tr = Matrix::zeros(self.field, self.rows, other.cols);
        let bl = Matrix::zeros(self.field, other.rows, self.cols);
        Matrix::blocks(self, &tr, &bl, other)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_rows(
            self.field,
            cols.len(),
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }

    pub fn column_range(&self, start: usize, end: usize) -> Matrix {
        let cols: Vec<usize> = (start..end).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        let rows: Vec<usize> = (start..end).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let mut a: Vec<Vec<Scalar>> = self.to_rows();
        let pivots = rref_in_place(&mut a, self.cols);
        Echelon {
            reduced: Matrix::from_rows(self.field, self.cols, a),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        rref_in_place(&mut a, self.cols).len()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut a = self.to_rows();
        let pivots = rref_in_place(&mut a, self.cols);
        kernel_from_rref(self.field, &a, &pivots, self.cols)
    }

    /// Basis of the left null space `{y : y * self = 0}`.
    pub fn left_kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel_basis()
    }

    /// One solution of `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = self.hstack(&Matrix::column(self.field, b));
        let mut a = aug.to_rows();
        let pivots = rref_in_place(&mut a, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = a[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(ech.reduced.column_range(n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// In-place reduction of the first `cols` columns; returns pivot columns.
fn rref_in_place(a: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        if !inv.is_one() {
            for x in a[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref(field: Field, a: &[Vec<Scalar>], pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// A nonzero primitive integer vector in the null space of a rational matrix,
/// normalized so that its first nonzero entry is positive.
pub fn integer_nullvector(m: &Matrix) -> Result<Vec<BigInt>> {
    if m.field() != Field::Rationals {
        return Err(Error::FieldMismatch(
            "integer null vectors need a rational matrix".into(),
        ));
    }
    let basis = m.kernel_basis();
    let v = basis.first().ok_or(Error::TrivialNullSpace)?;
    let rats: Vec<_> = v.iter().map(|x| x.as_rational().unwrap().clone()).collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    Ok(ints)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn q(v: i64) -> Scalar {
        Q.from_i64(v)
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::identity(Q, 3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_of_single_row() {
        let k = Matrix::from_i64(Q, &[&[1, 2]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 3);
        let b = vec![q(1), q(-4), q(7)];
        assert_eq!(id.solve(&b).unwrap(), b);
        assert!(Matrix::zeros(Q, 2, 2).solve(&[q(1), q(0)]).is_none());
        let x = Matrix::from_i64(Q, &[&[2]]).solve(&[q(1)]).unwrap();
        assert_eq!(x, vec![Q.from_ratio(1, 2)]);
    }

    #[test]
    fn empty_matrices_multiply() {
        let a = Matrix::zeros(Q, 3, 0);
        let b = Matrix::zeros(Q, 0, 2);
        let c = a.mul(&b);
        assert_eq!(c.shape(), (3, 2));
        assert!(c.is_zero());
        assert!(Matrix::zeros(Q, 0, 0).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(Q, 0, 4).kernel_basis().len(), 4);
    }

    #[test]
    fn integer_nullvector_examples() {
        let z = integer_nullvector(&Matrix::from_i64(Q, &[&[1, 2]])).unwrap();
        assert_eq!(z, vec![BigInt::from(2), BigInt::from(-1)]);

        let m = Matrix::from_i64(Q, &[&[1, 0, 1], &[0, 1, 0]]);
        let z = integer_nullvector(&m).unwrap();
        assert_eq!(z, vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1)]);

        let z = integer_nullvector(&Matrix::from_i64(Q, &[&[1, 1, 1]])).unwrap();
        assert!(z.iter().any(|x| !x.is_zero()));
        assert!(z.iter().sum::<BigInt>().is_zero());

        assert!(integer_nullvector(&Matrix::identity(Q, 2)).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(Q, &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(Q, 2));
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
