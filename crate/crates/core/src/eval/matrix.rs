use std::fmt;

use super::ring::Ring;
use super::EvalError;

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn scalar(x: R) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            data: vec![x],
        }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, EvalError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(EvalError::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Result<Self, EvalError> {
        if data.len() != rows * cols {
            return Err(EvalError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: R) {
        self.data[r * self.cols + c] = x;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn as_scalar(&self) -> Option<&R> {
        (self.rows == 1 && self.cols == 1).then(|| &self.data[0])
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn add(&self, other: &Self) -> Result<Self, EvalError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(EvalError::Dimension(format!(
                "adding {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// `self * other` (apply `other` first).
    pub fn mul(&self, other: &Self) -> Result<Self, EvalError> {
        if self.cols != other.rows {
            return Err(EvalError::Dimension(format!(
                "multiplying {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
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
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self` indexes the more significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + k, j * other.cols + l, a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    /// Apply `block` to the tensor factors `[pos, pos + in_arity)` of the row
    /// space, where rows index a word of `width` factors of dimension `rank`
    /// (factor 0 most significant). Returns `(id ⊗ block ⊗ id) * self`.
    pub fn apply_local(
        &self,
        rank: usize,
        width: usize,
        pos: usize,
        in_arity: usize,
        out_arity: usize,
        block: &Matrix<R>,
    ) -> Result<Self, EvalError> {
        let pw = |k: usize| rank.pow(k as u32);
        if self.rows != pw(width) || pos + in_arity > width {
            return Err(EvalError::Dimension(format!(
                "local block at {pos} on a width-{width} word with {} rows",
                self.rows
            )));
        }
        if block.rows != pw(out_arity) || block.cols != pw(in_arity) {
            return Err(EvalError::Dimension(format!(
                "block is {}x{}, expected {}x{}",
                block.rows,
                block.cols,
                pw(out_arity),
                pw(in_arity)
            )));
        }
        let low = width - pos - in_arity;
        let low_size = pw(low);
        let mid_in = pw(in_arity);
        let mid_out = pw(out_arity);
        let new_width = width - in_arity + out_arity;
        let mut out = Self::zeros(pw(new_width), self.cols);
        for row in 0..self.rows {
            let lo = row % low_size;
            let mid = (row / low_size) % mid_in;
            let hi = row / (low_size * mid_in);
            for col in 0..self.cols {
                let x = self.get(row, col);
                if x.is_zero() {
                    continue;
                }
                for o in 0..mid_out {
                    let b = block.get(o, mid);
                    if b.is_zero() {
                        continue;
                    }
                    let new_row = (hi * mid_out + o) * low_size + lo;
                    let idx = new_row * out.cols + col;
                    out.data[idx] = out.data[idx].add(&b.mul(x));
                }
            }
        }
        Ok(out)
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn apply_local_agrees_with_kronecker() {
        let block = m(&[&[1, 2], &[3, 4]]);
        let state = m(&[&[1, 0], &[2, 1], &[0, 5], &[7, 1]]);
        // block on factor 1 of a width-2 word: (I ⊗ block) * state
        let expected = Matrix::identity(2).kron(&block).mul(&state).unwrap();
        assert_eq!(state.apply_local(2, 2, 1, 1, 1, &block).unwrap(), expected);
        let expected = block.kron(&Matrix::identity(2)).mul(&state).unwrap();
        assert_eq!(state.apply_local(2, 2, 0, 1, 1, &block).unwrap(), expected);
    }

    #[test]
    fn apply_local_changes_width() {
        let cup = m(&[&[0], &[1], &[-1], &[0]]);
        let id = Matrix::<BigInt>::identity(2);
        let out = id.apply_local(2, 1, 1, 0, 2, &cup).unwrap();
        assert_eq!(out, id.kron(&cup));
        assert_eq!(out.rows(), 8);
    }

    #[test]
    fn dimension_errors() {
        let a = m(&[&[1, 2]]);
        assert!(a.mul(&a).is_err());
        assert!(Matrix::from_rows(vec![vec![BigInt::from(1)], vec![]]).is_err());
    }
}
