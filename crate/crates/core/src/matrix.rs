//! Dense matrices over a [`Scalar`] field, with the block structure used by
//! twisted operators.

use std::fmt;


use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, S::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn scalar(n: usize, v: &S) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &S) {
        let cur = self.get(i, j).clone();
        self.set(i, j, cur + v.clone());
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_at(i, j, &(a.clone() * b.clone()));
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square());
        let mut t = S::zero();
        for i in 0..self.rows {
            t = t + self.get(i, i).clone();
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Entry-wise comparison under the field's validation equality.
    pub fn validation_eq(&self, rhs: &Self) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self
                .data
                .iter()
                .zip(&rhs.data)
                .all(|(a, b)| a.validation_eq(b))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.validation_eq(&Self::identity(self.rows))
    }

    /// g is unitary iff g g* = 1 under validation equality.
    pub fn is_unitary(&self) -> bool {
        self.is_square() && self.matmul(&self.conj_transpose()).is_identity()
    }

    /// Determinant by Gaussian elimination with pivoting by magnitude.
    ///
    /// Exact over the exact fields. The determinant of the 0x0 matrix is 1.
    pub fn determinant(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut pivot = col;
            let mut best = m.get(col, col).pivot_magnitude();
            for row in col + 1..n {
                let w = m.get(row, col).pivot_magnitude();
                if w > best {
                    best = w;
                    pivot = row;
                }
            }
            if m.get(pivot, col).is_zero() {
                return S::zero();
            }
            if pivot != col {
                for j in 0..n {
                    let a = m.get(col, j).clone();
                    let b = m.get(pivot, j).clone();
                    m.set(col, j, b);
                    m.set(pivot, j, a);
                }
                det = -det;
            }
            let p = m.get(col, col).clone();
            let p_inv = p.inv().expect("nonzero pivot");
            det = det * p.clone();
            for row in col + 1..n {
                if m.get(row, col).is_zero() {
                    continue;
                }
                let factor = m.get(row, col).clone() * p_inv.clone();
                for j in col..n {
                    let v = m.get(row, j).clone() - factor.clone() * m.get(col, j).clone();
                    m.set(row, j, v);
                }
            }
        }
        det
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A square operator with an object x object block structure, each block
/// r x r over the coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix<S: Scalar> {
    pub objects: usize,
    pub r: usize,
    mat: Mat<S>,
}

impl<S: Scalar> BlockMatrix<S> {
    pub fn zeros(objects: usize, r: usize) -> Self {
        Self {
            objects,
            r,
            mat: Mat::zeros(objects * r, objects * r),
        }
    }

    pub fn identity(objects: usize, r: usize) -> Self {
        Self {
            objects,
            r,
            mat: Mat::identity(objects * r),
        }
    }

    pub fn dim(&self) -> usize {
        self.objects * self.r
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.mat
    }

    pub fn into_matrix(self) -> Mat<S> {
        self.mat
    }

    pub fn from_matrix(objects: usize, r: usize, mat: Mat<S>) -> Self {
        assert_eq!(mat.rows(), objects * r);
        assert_eq!(mat.cols(), objects * r);
        Self { objects, r, mat }
    }

    pub fn block(&self, i: usize, j: usize) -> Mat<S> {
        let mut b = Mat::zeros(self.r, self.r);
        for a in 0..self.r {
            for c in 0..self.r {
                b.set(a, c, self.mat.get(i * self.r + a, j * self.r + c).clone());
            }
        }
        b
    }

    pub fn add_block(&mut self, i: usize, j: usize, blk: &Mat<S>) {
        assert_eq!((blk.rows(), blk.cols()), (self.r, self.r));
        for a in 0..self.r {
            for c in 0..self.r {
                self.mat.add_at(i * self.r + a, j * self.r + c, blk.get(a, c));
            }
        }
    }

    pub fn set_block(&mut self, i: usize, j: usize, blk: &Mat<S>) {
        assert_eq!((blk.rows(), blk.cols()), (self.r, self.r));
        for a in 0..self.r {
            for c in 0..self.r {
                self.mat
                    .set(i * self.r + a, j * self.r + c, blk.get(a, c).clone());
            }
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.objects, rhs.objects);
        assert_eq!(self.r, rhs.r);
        Self {
            objects: self.objects,
            r: self.r,
            mat: self.mat.matmul(&rhs.mat),
        }
    }

    pub fn trace(&self) -> S {
        self.mat.trace()
    }

    pub fn validation_eq(&self, rhs: &Self) -> bool {
        self.objects == rhs.objects && self.r == rhs.r && self.mat.validation_eq(&rhs.mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_rational::BigRational;

    fn rmat(rows: Vec<Vec<i64>>) -> Mat<Rational> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rational::from_i64).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_small() {
        assert_eq!(
            rmat(vec![vec![1, 2], vec![3, 4]]).determinant(),
            Rational::from_i64(-2)
        );
        assert_eq!(
            rmat(vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]).determinant(),
            Rational::from_i64(30)
        );
        // Singular.
        assert_eq!(
            rmat(vec![vec![1, 2], vec![2, 4]]).determinant(),
            Rational::from_i64(0)
        );
        // Empty matrix has determinant 1.
        let empty: Mat<Rational> = Mat::zeros(0, 0);
        assert_eq!(empty.determinant(), Rational::from_i64(1));
    }

    #[test]
    fn determinant_needs_pivot() {
        let m = rmat(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), Rational::from_i64(-1));
    }

    #[test]
    fn unitary_check() {
        // 2x2 rational rotation (3/5, 4/5).
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        let g = Mat::from_rows(vec![
            vec![r(3, 5), r(4, 5)],
            vec![r(-4, 5), r(3, 5)],
        ]);
        assert!(g.is_unitary());
        let bad = rmat(vec![vec![2]]);
        assert!(!bad.is_unitary());
    }

    #[test]
    fn block_structure() {
        let mut b: BlockMatrix<Rational> = BlockMatrix::zeros(2, 2);
        let blk = rmat(vec![vec![1, 2], vec![3, 4]]);
        b.add_block(0, 1, &blk);
        assert_eq!(b.block(0, 1), blk);
        assert!(b.block(1, 0).is_zero());
        assert_eq!(b.matrix().get(0, 3), &Rational::from_i64(2));
    }
}
