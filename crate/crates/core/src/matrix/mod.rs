//! Dense exact linear algebra over the coefficient field.

mod eigen;
mod subspace;

pub use eigen::{PolyE, JordanParts};
pub use subspace::{Quotient, Subspace};

use crate::error::{Error, Result};
use crate::scalar::{FieldCtx, Scalar};

/// A dense row-major matrix over `E` with nonzero dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixE {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of Gaussian elimination on a matrix.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
    matrix: MatrixE,
}

impl Elimination {
    /// One preimage of `b` under the eliminated matrix.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.solve(b)
    }
}

impl MatrixE {
    pub fn new(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("zero-dimensional matrix".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|x| x.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(MatrixE { ctx: ctx.clone(), rows, cols, data })
    }

    pub fn from_rows(ctx: &FieldCtx, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        MatrixE::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ctx: &FieldCtx, cols: &[Vec<Scalar>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|v| v.len() != r) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        MatrixE::new(ctx, r, c, data)
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(ctx: &FieldCtx, rows: &[&[i64]]) -> Result<Self> {
        MatrixE::from_rows(ctx, rows.iter().map(|r| r.iter().map(|&v| ctx.int(v)).collect()).collect())
    }

    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zero-dimensional matrix");
        MatrixE { ctx: ctx.clone(), rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: &FieldCtx, d: usize) -> Self {
        MatrixE::diagonal(ctx, &vec![ctx.one(); d])
    }

    pub fn diagonal(ctx: &FieldCtx, diag: &[Scalar]) -> Self {
        let d = diag.len();
        let mut m = MatrixE::zeros(ctx, d, d);
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Block-diagonal matrix of square blocks.
    pub fn block_diag(ctx: &FieldCtx, blocks: &[&MatrixE]) -> Result<Self> {
        if blocks.iter().any(|b| !b.is_square()) {
            return Err(Error::DimensionMismatch("block_diag needs square blocks".into()));
        }
        if blocks.iter().any(|b| b.ctx != *ctx) {
            return Err(Error::ContextMismatch);
        }
        let d: usize = blocks.iter().map(|b| b.rows).sum();
        if d == 0 {
            return Err(Error::DimensionMismatch("zero-dimensional matrix".into()));
        }
        let mut m = MatrixE::zeros(ctx, d, d);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        Ok(m)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
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

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> MatrixE {
        let mut t = MatrixE::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(self.ctx.zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn scale(&self, c: &Scalar) -> MatrixE {
        MatrixE { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &MatrixE) -> MatrixE {
        self.assert_same_shape(other);
        MatrixE {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &MatrixE) -> MatrixE {
        self.assert_same_shape(other);
        MatrixE {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    fn assert_same_shape(&self, other: &MatrixE) {
        assert!(self.rows == other.rows && self.cols == other.cols, "matrix shape mismatch");
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &Scalar) -> MatrixE {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = self.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    /// Matrix product. Panics on incompatible shapes; see [`MatrixE::try_mul`].
    pub fn mul(&self, other: &MatrixE) -> MatrixE {
        self.try_mul(other).expect("matrix shape mismatch in product")
    }

    pub fn try_mul(&self, other: &MatrixE) -> Result<MatrixE> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatrixE::zeros(&self.ctx, self.rows, other.cols);
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
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ctx.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Result<MatrixE> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = MatrixE::identity(&self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Result<MatrixE> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let d = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..d)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..d).map(|j| if i == j { self.ctx.one() } else { self.ctx.zero() }));
                r
            })
            .collect();
        let pivots = rref(&mut aug, 2 * d);
        if pivots.len() < d || pivots[d - 1] >= d {
            return Err(Error::NotInvertible);
        }
        MatrixE::from_rows(&self.ctx, aug.into_iter().map(|r| r[d..].to_vec()).collect())
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let d = self.rows;
        let mut m = self.row_vectors();
        let mut det = self.ctx.one();
        for col in 0..d {
            let Some(p) = (col..d).find(|&r| !m[r][col].is_zero()) else {
                return self.ctx.zero();
            };
            if p != col {
                m.swap(p, col);
                det = -&det;
            }
            let piv = m[col][col].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in col + 1..d {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] * &inv;
                for c in col..d {
                    let t = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vectors();
        rref(&mut rows, self.cols).len()
    }

    pub fn kernel(&self) -> Subspace {
        let mut rows = self.row_vectors();
        let pivots = rref(&mut rows, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.ctx.zero(); self.cols];
                v[f] = self.ctx.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&rows[i][f];
                }
                v
            })
            .collect();
        Subspace::span(&self.ctx, self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.ctx, self.rows, self.column_vectors())
    }

    pub fn eliminate(&self) -> Elimination {
        let kernel = self.kernel();
        let image = self.image();
        Elimination { rank: image.dim(), kernel, image, matrix: self.clone() }
    }

    /// One solution `x` of `self * x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let mut aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i);
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref(&mut aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![self.ctx.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug[i][self.cols].clone();
        }
        Ok(x)
    }
}

/// In-place reduced row echelon form over the first `ncols` columns, pivot
/// = first nonzero entry. Zero rows are dropped; returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl std::fmt::Debug for MatrixE {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for MatrixE {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(1, 2).unwrap()
    }

    #[test]
    fn zero_and_identity_elimination() {
        let e = ctx();
        let z = MatrixE::zeros(&e, 2, 2);
        let el = z.eliminate();
        assert_eq!(el.rank, 0);
        assert_eq!(el.kernel, Subspace::full(&e, 2));
        let id = MatrixE::identity(&e, 3);
        let el = id.eliminate();
        assert_eq!(el.rank, 3);
        assert_eq!(el.kernel.dim(), 0);
    }

    #[test]
    fn rank_one_with_sqrt_q() {
        let e = ctx();
        let s = e.s();
        let m = MatrixE::from_rows(&e, vec![vec![e.one(), s.clone()], vec![s.clone(), e.int(2)]]).unwrap();
        let el = m.eliminate();
        assert_eq!(el.rank, 1);
        let v = vec![-&s, e.one()];
        assert_eq!(el.kernel, Subspace::span(&e, 2, vec![v.clone()]));
        assert!(m.apply(&v).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_and_no_solution() {
        let e = ctx();
        let m = MatrixE::from_ints(&e, &[&[1, 2], &[2, 4]]).unwrap();
        let x = m.solve(&[e.int(3), e.int(6)]).unwrap();
        assert_eq!(m.apply(&x), vec![e.int(3), e.int(6)]);
        assert_eq!(m.eliminate().solve(&[e.int(1), e.int(0)]), Err(Error::NoSolution));
    }

    #[test]
    fn inverse_and_det() {
        let e = FieldCtx::new(3, 2).unwrap();
        let m = MatrixE::from_rows(&e, vec![vec![e.zeta(1), e.s()], vec![e.one(), e.int(3)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.det(), &(&e.zeta(1) * &e.int(3)) - &e.s());
        let sing = MatrixE::from_ints(&e, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn negative_power() {
        let e = ctx();
        let m = MatrixE::from_ints(&e, &[&[1, 1], &[0, 1]]).unwrap();
        let expect = MatrixE::from_ints(&e, &[&[1, -3], &[0, 1]]).unwrap();
        assert_eq!(m.pow(-3).unwrap(), expect);
    }

    #[test]
    fn rejects_empty() {
        assert!(MatrixE::new(&ctx(), 0, 2, vec![]).is_err());
    }
}
