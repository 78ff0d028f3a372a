//! Dense exact matrices over the Gaussian rationals.
//!
//! Row reduction is fraction-free: each row is scaled to Gaussian-integer
//! entries, eliminated by cross-multiplication and divided by its integer
//! content after every update. Division only happens when kernel vectors or
//! solutions are read off the reduced form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::poly::ExactComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactComplex>,
}

/// Pivot row selection within the leftmost column that still has a nonzero entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Largest numerator bit length; ties go to the smallest row index.
    #[default]
    MaxNumeratorBits,
    /// Smallest row index with a nonzero entry.
    FirstNonzero,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ExactComplex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactComplex::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactComplex>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a `rows × columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<ExactComplex>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactComplex {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactComplex) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExactComplex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ExactComplex> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactComplex::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    /// Matrix product, skipping zero entries of `self`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
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
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[ExactComplex]) -> Vec<ExactComplex> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ExactComplex::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &ExactComplex) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn row_reduce(&self, rule: PivotRule) -> Echelon {
        Echelon::compute(self, self.cols, rule)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce(PivotRule::default()).rank()
    }

    /// Basis of the right kernel, one vector per free column, each with a 1
    /// at its free column and 0 at every other free column.
    pub fn kernel(&self) -> Vec<Vec<ExactComplex>> {
        self.kernel_with(PivotRule::default())
    }

    pub fn kernel_with(&self, rule: PivotRule) -> Vec<Vec<ExactComplex>> {
        let ech = self.row_reduce(rule);
        let pivot_cols: Vec<usize> = ech.pivots.clone();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![ExactComplex::zero(); self.cols];
            v[free] = ExactComplex::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                let e = &ech.rows[r][free];
                if !e.is_zero() {
                    v[pc] = -(e.to_exact() / ech.rows[r][pc].to_exact());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self · X = rhs`. Returns `None` unless the solution exists and is unique.
    pub fn solve(&self, rhs: &Matrix, rule: PivotRule) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        let ech = Echelon::compute(&aug, self.cols, rule);
        if ech.rank() != self.cols {
            return None;
        }
        for r in ech.rank()..ech.rows.len() {
            if ech.rows[r].iter().any(|v| !v.is_zero()) {
                return None;
            }
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            let piv = ech.rows[r][pc].to_exact();
            for j in 0..rhs.cols {
                let v = &ech.rows[r][self.cols + j];
                if !v.is_zero() {
                    x.set(pc, j, v.to_exact() / &piv);
                }
            }
        }
        Some(x)
    }

    pub fn inverse(&self, rule: PivotRule) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.solve(&Matrix::identity(self.rows), rule)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[ExactComplex]> = (0..self.rows).map(|i| self.row(i)).collect();
        let mut st = s.serialize_struct("Matrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// Gaussian integer used inside fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }

    pub fn to_exact(&self) -> ExactComplex {
        ExactComplex::new(
            num_rational::BigRational::from_integer(self.re.clone()),
            num_rational::BigRational::from_integer(self.im.clone()),
        )
    }
}

fn integral_row(row: &[ExactComplex]) -> Vec<GaussInt> {
    let mut l = BigInt::one();
    for v in row {
        l = l.lcm(v.re.denom());
        l = l.lcm(v.im.denom());
    }
    let mut out: Vec<GaussInt> = row
        .iter()
        .map(|v| GaussInt {
            re: v.re.numer() * (&l / v.re.denom()),
            im: v.im.numer() * (&l / v.im.denom()),
        })
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [GaussInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        g = g.gcd(&v.re);
        g = g.gcd(&v.im);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for v in row.iter_mut() {
        v.re = &v.re / &g;
        v.im = &v.im / &g;
    }
}

/// Fully reduced (Gauss–Jordan) form with Gaussian-integer rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced rows; the first `rank()` carry pivots.
    pub rows: Vec<Vec<GaussInt>>,
    /// Pivot column of each leading row.
    pub pivots: Vec<usize>,
}

impl Echelon {
    /// Reduces `m`, choosing pivots only among the first `pivot_cols` columns.
    fn compute(m: &Matrix, pivot_cols: usize, rule: PivotRule) -> Self {
        let mut rows: Vec<Vec<GaussInt>> = (0..m.rows).map(|i| integral_row(m.row(i))).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..pivot_cols {
            if r == rows.len() {
                break;
            }
            let candidates = (r..rows.len()).filter(|&i| !rows[i][col].is_zero());
            let chosen = match rule {
                PivotRule::FirstNonzero => candidates.min(),
                PivotRule::MaxNumeratorBits => {
                    // max_by_key keeps the last maximum; reverse to keep the first
                    candidates.rev().max_by_key(|&i| rows[i][col].bits())
                }
            };
            let Some(p) = chosen else { continue };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            let pv = pivot_row[col].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let e = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if y.is_zero() {
                        if !x.is_zero() {
                            *x = x.mul(&pv);
                        }
                    } else {
                        *x = x.mul(&pv).sub(&e.mul(y));
                    }
                }
                remove_content(row);
            }
            pivots.push(col);
            r += 1;
        }
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| ExactComplex::from_int(v)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel_of_laplacian_row() {
        let a = m(&[&[4, 0, 0, 4]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(ExactComplex::is_zero));
        }
        assert_eq!(k[2][0], ExactComplex::from_int(-1));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let inv = a.inverse(PivotRule::default()).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let inv2 = a.inverse(PivotRule::FirstNonzero).unwrap();
        assert_eq!(inv, inv2);
        assert!(m(&[&[1, 2], &[2, 4]]).inverse(PivotRule::default()).is_none());
    }

    #[test]
    fn complex_entries() {
        let i = ExactComplex::i();
        let a = Matrix::from_rows(vec![
            vec![ExactComplex::one(), i.clone()],
            vec![i.clone(), ExactComplex::from_int(-1)],
        ]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(ExactComplex::is_zero));
    }

    #[test]
    fn rational_rows_are_integralized() {
        let a = Matrix::from_rows(vec![vec![ExactComplex::from_ratio(1, 2), ExactComplex::from_ratio(1, 3)]]);
        let k = a.kernel();
        assert_eq!(k, vec![vec![ExactComplex::from_ratio(-2, 3), ExactComplex::one()]]);
    }
}
