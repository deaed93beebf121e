use super::WDRep;
use crate::error::Result;
use crate::matrix::{MatrixE, Quotient, Subspace};

/// The monodromy filtration `M_k`, stored for `k` in `[-d, d]`, together with
/// the actions of `sigma` and `phi` on the nonzero graded pieces.
#[derive(Clone, Debug)]
pub struct Filtration {
    dim: usize,
    steps: Vec<Subspace>,
    pub gradings: Vec<Grading>,
}

/// `gr_k = M_k / M_{k-1}` with the induced actions (monodromy zero).
#[derive(Clone, Debug)]
pub struct Grading {
    pub k: i64,
    pub quotient: Quotient,
    pub tame: MatrixE,
    pub frobenius: MatrixE,
}

impl Grading {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Quotient coordinates of a vector of `M_k`.
    pub fn project(&self, v: &[crate::scalar::Scalar]) -> Vec<crate::scalar::Scalar> {
        self.quotient.matrix.as_ref().expect("nonzero grading").apply(v)
    }
}

impl Filtration {
    /// `M_k`; constant `0` below `-d` and the whole space above `d`.
    pub fn step(&self, k: i64) -> &Subspace {
        let d = self.dim as i64;
        &self.steps[(k.clamp(-d - 1, d) + d + 1) as usize]
    }

    /// Index range `[-d, d]` of the stored steps.
    pub fn range(&self) -> std::ops::RangeInclusive<i64> {
        -(self.dim as i64)..=self.dim as i64
    }

    pub fn grading(&self, k: i64) -> Option<&Grading> {
        self.gradings.iter().find(|g| g.k == k)
    }

    /// Map `gr_from -> gr_to` induced by `m`, in the quotient bases. `None`
    /// when either piece is zero.
    pub fn induced_map(&self, from: i64, to: i64, m: &MatrixE) -> Option<MatrixE> {
        let src = self.grading(from)?;
        let dst = self.grading(to)?;
        let cols: Vec<_> = src.quotient.complement.iter().map(|c| dst.project(&m.apply(c))).collect();
        MatrixE::from_columns(m.ctx(), &cols).ok()
    }
}

impl WDRep {
    /// `M_k = sum_{i - j = k; i, j >= 0} ker N^(i+1) cap N^j V`.
    pub fn monodromy_filtration(&self) -> Result<Filtration> {
        let ctx = self.ctx();
        let d = self.dim();
        let n = self.monodromy();
        // kernels[i] = ker N^i, images[j] = N^j V, for 0..=d
        let mut kernels = Vec::with_capacity(d + 1);
        let mut images = Vec::with_capacity(d + 1);
        let mut power = MatrixE::identity(ctx, d);
        for _ in 0..=d {
            kernels.push(power.kernel());
            images.push(power.image());
            power = power.mul(n);
        }
        let full = Subspace::full(ctx, d);
        let ker = |i: usize| kernels.get(i).unwrap_or(&full);
        let mut steps = vec![Subspace::zero(ctx, d)];
        for k in -(d as i64)..=d as i64 {
            let mut m = Subspace::zero(ctx, d);
            for i in k.max(0)..=d as i64 {
                let j = (i - k) as usize;
                if j > d || images[j].dim() == 0 {
                    continue;
                }
                let term = ker(i as usize + 1).intersect(&images[j])?;
                m = m.sum(&term)?;
            }
            steps.push(m);
        }
        let mut gradings = Vec::new();
        for (idx, k) in (-(d as i64)..=d as i64).enumerate() {
            let quotient = steps[idx].quotient_map(&steps[idx + 1])?;
            let Some(proj) = quotient.matrix.clone() else {
                continue;
            };
            let basis = MatrixE::from_columns(ctx, &quotient.complement)?;
            let tame = proj.mul(self.tame()).mul(&basis);
            let frobenius = proj.mul(self.frobenius()).mul(&basis);
            gradings.push(Grading { k, quotient, tame, frobenius });
        }
        Ok(Filtration { dim: d, steps, gradings })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldCtx;

    #[test]
    fn zero_monodromy_single_grading() {
        let e = FieldCtx::new(1, 2).unwrap();
        let triv = WDRep::trivial(&e, 1);
        let r = triv.direct_sum(&triv).unwrap();
        let fil = r.monodromy_filtration().unwrap();
        assert_eq!(fil.step(-1).dim(), 0);
        assert_eq!(fil.step(0).dim(), 2);
        assert_eq!(fil.gradings.len(), 1);
        assert_eq!(fil.gradings[0].k, 0);
    }

    #[test]
    fn sp2_filtration() {
        let e = FieldCtx::new(1, 3).unwrap();
        let r = WDRep::sp(2, &WDRep::trivial(&e, 1)).unwrap();
        let fil = r.monodromy_filtration().unwrap();
        let image_n = r.monodromy().image();
        assert_eq!(fil.step(-2).dim(), 0);
        assert_eq!(fil.step(-1), &image_n);
        assert_eq!(fil.step(0), &image_n);
        assert_eq!(fil.step(1).dim(), 2);
        let ks: Vec<i64> = fil.gradings.iter().map(|g| g.k).collect();
        assert_eq!(ks, vec![-1, 1]);
        assert_eq!(fil.grading(-1).unwrap().frobenius, MatrixE::diagonal(&e, &[e.q_pow(-1)]));
        assert_eq!(fil.grading(1).unwrap().frobenius, MatrixE::diagonal(&e, &[e.one()]));
    }

    #[test]
    fn sp3_gradings() {
        let e = FieldCtx::new(1, 2).unwrap();
        let r = WDRep::sp(3, &WDRep::trivial(&e, 1)).unwrap();
        let fil = r.monodromy_filtration().unwrap();
        let got: Vec<(i64, MatrixE)> = fil.gradings.iter().map(|g| (g.k, g.frobenius.clone())).collect();
        let expect: Vec<(i64, MatrixE)> = [(-2, -2), (0, -1), (2, 0)]
            .iter()
            .map(|&(k, p)| (k, MatrixE::diagonal(&e, &[e.q_pow(p)])))
            .collect();
        assert_eq!(got, expect);
        let n2 = r.monodromy().pow(2).unwrap();
        assert!(fil.induced_map(2, -2, &n2).unwrap().inverse().is_ok());
    }
}
