use super::{rref, MatrixE};
use crate::error::{Error, Result};
use crate::scalar::{FieldCtx, Scalar};

/// A subspace of `E^d`, stored as the rows of its reduced row echelon basis.
///
/// The echelon form is canonical, so derived equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ctx: FieldCtx,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

/// Projection `B -> B/A` for nested subspaces `A` in `B`.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Echelon complement of `A` inside `B`; its vectors give the quotient basis.
    pub complement: Vec<Vec<Scalar>>,
    /// `dim(B/A) x d` matrix giving complement coordinates of vectors of `B`.
    /// `None` when the quotient is zero.
    pub matrix: Option<MatrixE>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }
}

impl Subspace {
    pub fn span(ctx: &FieldCtx, ambient: usize, mut vectors: Vec<Vec<Scalar>>) -> Subspace {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let pivots = rref(&mut vectors, ambient);
        Subspace { ctx: ctx.clone(), ambient, basis: vectors, pivots }
    }

    pub fn zero(ctx: &FieldCtx, ambient: usize) -> Subspace {
        Subspace { ctx: ctx.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ctx: &FieldCtx, ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { ctx.one() } else { ctx.zero() }).collect())
            .collect();
        Subspace { ctx: ctx.clone(), ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of E^{} and E^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis. Only meaningful for `v` in the
    /// subspace; read off the pivot positions.
    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let c = self.coordinates(v);
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(ci * y);
                }
            }
        }
        r.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span(&self.ctx, self.ambient, vectors))
    }

    /// The annihilator under the standard bilinear pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(&self.ctx, self.ambient);
        }
        MatrixE::from_rows(&self.ctx, self.basis.clone()).expect("nonempty basis").kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_subspace_of(other) {
            return Ok(self.clone());
        }
        if other.is_subspace_of(self) {
            return Ok(other.clone());
        }
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `{x : m x in self}`.
    pub fn preimage(&self, m: &MatrixE) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch("preimage: matrix rows vs ambient".into()));
        }
        let ann = self.annihilator();
        if ann.dim() == 0 {
            return Ok(Subspace::full(&self.ctx, m.cols()));
        }
        let a = MatrixE::from_rows(&self.ctx, ann.basis).expect("nonempty annihilator");
        Ok(a.mul(m).kernel())
    }

    /// `m(self)`.
    pub fn image(&self, m: &MatrixE) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("image: matrix columns vs ambient".into()));
        }
        Ok(Subspace::span(&self.ctx, m.rows(), self.basis.iter().map(|v| m.apply(v)).collect()))
    }

    /// Projection from `outer` onto `outer / self`, in the echelon complement
    /// basis of `self` inside `outer`.
    pub fn quotient_map(&self, outer: &Subspace) -> Result<Quotient> {
        self.check(outer)?;
        if !self.is_subspace_of(outer) {
            return Err(Error::DimensionMismatch("quotient_map needs A contained in B".into()));
        }
        let mut running = self.clone();
        let mut complement = Vec::new();
        for b in &outer.basis {
            if !running.contains(b) {
                complement.push(b.clone());
                running = running.sum(&Subspace::span(&self.ctx, self.ambient, vec![b.clone()]))?;
            }
        }
        if complement.is_empty() {
            return Ok(Quotient { complement, matrix: None });
        }
        // Extend A | C to a basis of E^d with unit vectors, invert, and keep
        // the rows dual to C.
        let mut cols: Vec<Vec<Scalar>> = self.basis.iter().chain(&complement).cloned().collect();
        for i in 0..self.ambient {
            let e: Vec<Scalar> =
                (0..self.ambient).map(|j| if i == j { self.ctx.one() } else { self.ctx.zero() }).collect();
            if !running.contains(&e) {
                running = running.sum(&Subspace::span(&self.ctx, self.ambient, vec![e.clone()]))?;
                cols.push(e);
            }
        }
        let inv = MatrixE::from_columns(&self.ctx, &cols)?.inverse()?;
        let start = self.dim();
        let rows = (start..start + complement.len()).map(|i| inv.row(i)).collect();
        Ok(Quotient { complement, matrix: Some(MatrixE::from_rows(&self.ctx, rows)?) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(1, 3).unwrap()
    }

    fn unit(e: &FieldCtx, d: usize, i: usize) -> Vec<Scalar> {
        (0..d).map(|j| if i == j { e.one() } else { e.zero() }).collect()
    }

    #[test]
    fn intersect_and_sum_identities() {
        let e = ctx();
        let x = Subspace::span(&e, 3, vec![vec![e.int(1), e.int(2), e.int(0)], vec![e.int(0), e.int(1), e.int(1)]]);
        assert_eq!(x.intersect(&x).unwrap(), x);
        assert_eq!(x.sum(&Subspace::zero(&e, 3)).unwrap(), x);
        let y = Subspace::span(&e, 3, vec![unit(&e, 3, 0), unit(&e, 3, 2)]);
        let meet = x.intersect(&y).unwrap();
        assert_eq!(meet.dim(), 1);
        // (1,2,0) - 2 (0,1,1) = (1,0,-2)
        assert!(meet.contains(&[e.int(1), e.int(0), e.int(-2)]));
    }

    #[test]
    fn preimage_of_line_under_shift() {
        let e = ctx();
        let shift = MatrixE::from_ints(&e, &[&[0, 0], &[1, 0]]).unwrap(); // e0 -> e1
        let line = Subspace::span(&e, 2, vec![unit(&e, 2, 1)]);
        assert_eq!(line.preimage(&shift).unwrap(), Subspace::full(&e, 2));
        let z = Subspace::zero(&e, 2);
        assert_eq!(z.preimage(&shift).unwrap(), line);
    }

    #[test]
    fn quotient_selects_complement_coordinate() {
        let e = ctx();
        let line = Subspace::span(&e, 2, vec![unit(&e, 2, 1)]);
        let q = line.quotient_map(&Subspace::full(&e, 2)).unwrap();
        assert_eq!(q.matrix.unwrap(), MatrixE::from_ints(&e, &[&[1, 0]]).unwrap());
        assert!(Subspace::full(&e, 2).quotient_map(&line).is_err());
    }

    #[test]
    fn image_and_dimension_mismatch() {
        let e = ctx();
        let m = MatrixE::from_ints(&e, &[&[1, 1], &[0, 0], &[2, 2]]).unwrap();
        let img = Subspace::full(&e, 2).image(&m).unwrap();
        assert_eq!(img, m.image());
        assert!(Subspace::full(&e, 3).intersect(&Subspace::full(&e, 2)).is_err());
    }
}
