use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::MatrixE;
use crate::error::{Error, Result};
use crate::scalar::{FieldCtx, Scalar};

/// A polynomial over `E`, coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyE {
    coeffs: Vec<Scalar>,
}

impl PolyE {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<Scalar>) -> PolyE {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ctx.zero());
        }
        PolyE { coeffs }
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(ctx: &FieldCtx, roots: &[Scalar]) -> PolyE {
        let mut p = vec![ctx.one()];
        for r in roots {
            let mut next = vec![ctx.zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * r);
            }
            p = next;
        }
        PolyE::new(ctx, p)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = x.ctx().zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Divides by `x - r`, returning the quotient if the remainder vanishes.
    pub fn divide_linear(&self, r: &Scalar) -> Option<PolyE> {
        let d = self.degree();
        if d == 0 {
            return None;
        }
        let ctx = r.ctx();
        let mut quot = vec![ctx.zero(); d];
        let mut carry = ctx.zero();
        for i in (0..d).rev() {
            carry = &self.coeffs[i + 1] + &(&carry * r);
            quot[i] = carry.clone();
        }
        let rem = &self.coeffs[0] + &(&carry * r);
        rem.is_zero().then(|| PolyE::new(ctx, quot))
    }
}

impl fmt::Display for PolyE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Commuting factors `M = semisimple * unipotent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanParts {
    pub semisimple: MatrixE,
    pub unipotent: MatrixE,
}

impl MatrixE {
    /// Monic characteristic polynomial `det(x I - M)`, via reduction to upper
    /// Hessenberg form.
    pub fn charpoly(&self) -> Result<PolyE> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("charpoly of a non-square matrix".into()));
        }
        let ctx = self.ctx().clone();
        let n = self.rows();
        let mut h = self.row_vectors();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let t_inv = h[m][m - 1].inv()?;
            for i in m + 1..n {
                if h[i][m - 1].is_zero() {
                    continue;
                }
                let u = &h[i][m - 1] * &t_inv;
                let row_m = h[m].clone();
                for (x, y) in h[i].iter_mut().zip(&row_m) {
                    if !y.is_zero() {
                        *x = &*x - &(&u * y);
                    }
                }
                for row in h.iter_mut() {
                    if !row[i].is_zero() {
                        row[m] = &row[m] + &(&u * &row[i]);
                    }
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_i h_im (h_{i+1,i} ... h_{m,m-1}) p_{i-1}
        let mut polys: Vec<Vec<Scalar>> = vec![vec![ctx.one()]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut p = vec![ctx.zero(); m + 1];
            for (k, c) in prev.iter().enumerate() {
                p[k + 1] = &p[k + 1] + c;
                p[k] = &p[k] - &(c * &h[m - 1][m - 1]);
            }
            let mut t = ctx.one();
            for i in (1..m).rev() {
                t = &t * &h[i][i - 1];
                if t.is_zero() {
                    break;
                }
                let coef = &t * &h[i - 1][m - 1];
                if coef.is_zero() {
                    continue;
                }
                for (k, c) in polys[i - 1].iter().enumerate() {
                    p[k] = &p[k] - &(&coef * c);
                }
            }
            polys.push(p);
        }
        Ok(PolyE::new(&ctx, polys.pop().expect("n >= 1")))
    }

    /// All eigenvalues with algebraic multiplicity, provided each nonzero one
    /// has the form `(root of unity) * s^k`.
    ///
    /// Candidate exponents `k` come from the characteristic polynomial of
    /// `M^(2N)`, whose roots are the rationals `q^(N k)`: by the rational root
    /// theorem `k` is bounded by the power of `q^N` dividing its constant
    /// coefficient and its common denominator.
    pub fn split_class_eigenvalues(&self) -> Result<Vec<(Scalar, usize)>> {
        let ctx = self.ctx().clone();
        let mut p = self.charpoly()?;
        let mut out: Vec<(Scalar, usize)> = Vec::new();
        let mut zero_mult = 0;
        while p.degree() > 0 && p.coeffs()[0].is_zero() {
            p = PolyE::new(&ctx, p.coeffs()[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((ctx.zero(), zero_mult));
        }
        if p.degree() == 0 {
            return Ok(out);
        }
        let order = ctx.order() as i64;
        let power = self.pow(2 * order)?.charpoly()?;
        let rational: Option<Vec<_>> = power.coeffs().iter().map(Scalar::as_rational).collect();
        let rational = rational.ok_or(Error::EigenvalueOutsideClass)?;
        let first = rational.iter().position(|c| !c.is_zero()).expect("monic");
        let lcm = rational.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let constant = rational[first].numer() * (&lcm / rational[first].denom());
        let qn = num_traits::pow(BigInt::from(ctx.q()), order as usize);
        let max_power = |mut v: BigInt| {
            let mut m = 0i64;
            v = num_traits::Signed::abs(&v);
            while !v.is_zero() && (&v % &qn).is_zero() {
                v /= &qn;
                m += 1;
            }
            m
        };
        let (k_lo, k_hi) = (-max_power(lcm), max_power(constant));
        let units = ctx.roots_of_unity();
        for k in k_lo..=k_hi {
            if p.degree() == 0 {
                break;
            }
            let target = ctx.q_pow(order * k);
            if !power.eval(&target).is_zero() {
                continue;
            }
            let sk = ctx.s_pow(k);
            for z in &units {
                let lambda = z * &sk;
                let mut mult = 0;
                while let Some(next) = p.divide_linear(&lambda) {
                    p = next;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((lambda, mult));
                }
            }
        }
        if p.degree() > 0 {
            return Err(Error::EigenvalueOutsideClass);
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Multiplicative Jordan decomposition of an invertible matrix whose
    /// eigenvalues lie in the supported class.
    pub fn jordan_multiplicative(&self) -> Result<JordanParts> {
        let ctx = self.ctx().clone();
        let eig = self.split_class_eigenvalues()?;
        if eig.iter().any(|(l, _)| l.is_zero()) {
            return Err(Error::NotInvertible);
        }
        let d = self.rows();
        if eig.len() == 1 {
            // single eigenvalue: the semisimple part is scalar
            let ss = MatrixE::diagonal(&ctx, &vec![eig[0].0.clone(); d]);
            let u = self.scale(&eig[0].0.inv()?);
            return Ok(JordanParts { semisimple: ss, unipotent: u });
        }
        let mut cols = Vec::with_capacity(d);
        let mut diag = Vec::with_capacity(d);
        for (lambda, mult) in &eig {
            let gen = self.shift(lambda).pow(*mult as i64)?.kernel();
            if gen.dim() != *mult {
                return Err(Error::Internal("generalized eigenspace dimension".into()));
            }
            for v in gen.basis() {
                cols.push(v.clone());
                diag.push(lambda.clone());
            }
        }
        let b = MatrixE::from_columns(&ctx, &cols)?;
        let ss = b.mul(&MatrixE::diagonal(&ctx, &diag)).mul(&b.inverse()?);
        let u = ss.inverse()?.mul(self);
        Ok(JordanParts { semisimple: ss, unipotent: u })
    }

    /// Jordan decomposition read off from `self^m`, for matrices whose own
    /// eigenvalues leave the class but whose `m`-th power stays inside it.
    pub fn jordan_multiplicative_via_power(&self, m: u64) -> Result<JordanParts> {
        if m <= 1 {
            return self.jordan_multiplicative();
        }
        let parts = self.pow(m as i64)?.jordan_multiplicative()?;
        if parts.unipotent.is_identity() {
            return Ok(JordanParts { semisimple: self.clone(), unipotent: parts.unipotent });
        }
        let u = parts.unipotent.unipotent_root(m)?;
        let ss = self.mul(&u.inverse()?);
        Ok(JordanParts { semisimple: ss, unipotent: u })
    }

    /// The unique unipotent `m`-th root `exp(log(self) / m)` of a unipotent matrix.
    pub fn unipotent_root(&self, m: u64) -> Result<MatrixE> {
        let ctx = self.ctx().clone();
        let d = self.rows();
        let x = self.shift(&ctx.one());
        if !x.pow(d as i64)?.is_zero() {
            return Err(Error::Internal("unipotent_root of a non-unipotent matrix".into()));
        }
        let mut log = MatrixE::zeros(&ctx, d, d);
        let mut xk = x.clone();
        for k in 1..=d as i64 {
            let c = ctx.frac(if k % 2 == 1 { 1 } else { -1 }, k);
            log = log.add(&xk.scale(&c));
            xk = xk.mul(&x);
        }
        let y = log.scale(&ctx.frac(1, m as i64));
        let mut out = MatrixE::identity(&ctx, d);
        let mut term = MatrixE::identity(&ctx, d);
        for k in 1..=d as i64 {
            term = term.mul(&y).scale(&ctx.frac(1, k));
            out = out.add(&term);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: det(x I - M) by elimination at sample points.
    fn charpoly_matches_det(m: &MatrixE) {
        let ctx = m.ctx();
        let p = m.charpoly().unwrap();
        assert_eq!(p.degree(), m.rows());
        assert!(p.coeffs().last().unwrap().is_one());
        for x in 0..=m.rows() as i64 + 1 {
            let xs = &ctx.int(x) + &ctx.s();
            let det = MatrixE::identity(ctx, m.rows()).scale(&xs).sub(m).det();
            assert_eq!(p.eval(&xs), det, "x = {xs}");
        }
    }

    #[test]
    fn unipotent_root_cubes_back() {
        let e = FieldCtx::new(1, 2).unwrap();
        let u = MatrixE::from_ints(&e, &[&[1, 3, 5], &[0, 1, -2], &[0, 0, 1]]).unwrap();
        let r = u.unipotent_root(3).unwrap();
        assert_eq!(r.pow(3).unwrap(), u);
        assert!(r.shift(&e.one()).pow(3).unwrap().is_zero());
    }

    #[test]
    fn jordan_through_power() {
        // eigenvalues are the square roots of s, outside E; the square is s I
        let e = FieldCtx::new(3, 2).unwrap();
        let comp = MatrixE::from_rows(&e, vec![vec![e.zero(), e.s()], vec![e.one(), e.zero()]]).unwrap();
        assert!(comp.jordan_multiplicative().is_err());
        let parts = comp.jordan_multiplicative_via_power(2).unwrap();
        assert_eq!(parts.semisimple, comp);
        assert!(parts.unipotent.is_identity());
    }

    #[test]
    fn charpoly_examples() {
        let e = FieldCtx::new(3, 2).unwrap();
        let id = MatrixE::identity(&e, 2);
        assert_eq!(id.charpoly().unwrap(), PolyE::from_roots(&e, &[e.one(), e.one()]));
        let d = MatrixE::diagonal(&e, &[e.one(), e.frac(1, 2)]);
        assert_eq!(d.charpoly().unwrap(), PolyE::from_roots(&e, &[e.one(), e.frac(1, 2)]));
        // companion matrix of x^2 - zeta_3
        let comp = MatrixE::from_rows(&e, vec![vec![e.zero(), e.zeta(1)], vec![e.one(), e.zero()]]).unwrap();
        let expect = PolyE::new(&e, vec![-&e.zeta(1), e.zero(), e.one()]);
        assert_eq!(comp.charpoly().unwrap(), expect);
    }

    #[test]
    fn charpoly_against_determinant_oracle() {
        let e = FieldCtx::new(4, 3).unwrap();
        let m = MatrixE::from_rows(
            &e,
            vec![
                vec![e.int(1), e.zeta(1), e.int(0), e.s()],
                vec![e.int(2), e.int(0), e.int(1), e.int(0)],
                vec![e.int(0), e.int(3), e.zeta(3), e.int(1)],
                vec![e.int(1), e.int(0), e.int(0), e.int(-1)],
            ],
        )
        .unwrap();
        charpoly_matches_det(&m);
        let nil = MatrixE::from_ints(&e, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        charpoly_matches_det(&nil);
    }

    #[test]
    fn class_eigenvalues() {
        let e = FieldCtx::new(3, 2).unwrap();
        let d = MatrixE::diagonal(&e, &[e.one(), e.q_pow(-1)]);
        let mut expect = vec![(e.one(), 1), (e.q_pow(-1), 1)];
        expect.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(d.split_class_eigenvalues().unwrap(), expect);

        let swap = MatrixE::from_ints(&e, &[&[0, 1], &[1, 0]]).unwrap();
        let mut expect = vec![(e.one(), 1), (e.int(-1), 1)];
        expect.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(swap.split_class_eigenvalues().unwrap(), expect);

        let unip = MatrixE::from_ints(&e, &[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(unip.split_class_eigenvalues().unwrap(), vec![(e.one(), 2)]);

        let weil = MatrixE::diagonal(&e, &[&e.zeta(2) * &e.s_pow(3), e.s_pow(-5)]);
        assert_eq!(weil.split_class_eigenvalues().unwrap().len(), 2);
    }

    #[test]
    fn eigenvalue_outside_class() {
        let e = FieldCtx::new(1, 2).unwrap();
        let m = MatrixE::from_ints(&e, &[&[1, 1], &[1, 0]]).unwrap(); // golden ratio
        assert_eq!(m.split_class_eigenvalues(), Err(Error::EigenvalueOutsideClass));
        let m = MatrixE::diagonal(&e, &[e.int(3)]);
        assert_eq!(m.split_class_eigenvalues(), Err(Error::EigenvalueOutsideClass));
    }

    #[test]
    fn jordan_examples() {
        let e = FieldCtx::new(1, 2).unwrap();
        let d = MatrixE::diagonal(&e, &[e.int(2), e.int(1)]);
        let j = d.jordan_multiplicative().unwrap();
        assert_eq!(j.semisimple, d);
        assert!(j.unipotent.is_identity());

        let u = MatrixE::from_ints(&e, &[&[1, 1], &[0, 1]]).unwrap();
        let j = u.jordan_multiplicative().unwrap();
        assert!(j.semisimple.is_identity());
        assert_eq!(j.unipotent, u);

        // distinct eigenvalues q^-1 and 1: already semisimple
        let m = MatrixE::from_rows(&e, vec![vec![e.q_pow(-1), e.one()], vec![e.zero(), e.one()]]).unwrap();
        let j = m.jordan_multiplicative().unwrap();
        assert_eq!(j.semisimple, m);
        assert!(j.unipotent.is_identity());

        let sing = MatrixE::from_ints(&e, &[&[0, 1], &[0, 0]]).unwrap();
        assert_eq!(sing.jordan_multiplicative(), Err(Error::NotInvertible));
    }

    #[test]
    fn jordan_mixed_block() {
        let e = FieldCtx::new(4, 3).unwrap();
        // diag(J_2(i), 2) conjugated by an integer matrix
        let core = MatrixE::from_rows(
            &e,
            vec![
                vec![e.zeta(1), e.one(), e.zero()],
                vec![e.zero(), e.zeta(1), e.zero()],
                vec![e.zero(), e.zero(), e.q_pow(1)],
            ],
        )
        .unwrap();
        let p = MatrixE::from_ints(&e, &[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
        let m = p.mul(&core).mul(&p.inverse().unwrap());
        let j = m.jordan_multiplicative().unwrap();
        assert_eq!(j.semisimple.mul(&j.unipotent), m);
        assert_eq!(j.unipotent.mul(&j.semisimple), m);
        let n = j.unipotent.sub(&MatrixE::identity(&e, 3));
        assert!(n.mul(&n).is_zero());
        assert!(!n.is_zero());
        assert_eq!(j.semisimple.trace(), m.trace());
    }
}
