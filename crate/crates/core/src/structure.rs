//! Special-block decomposition, the weight peel, reconstruction from
//! constituents, isomorphism witnesses and twist-equivalence certificates.

use std::fmt;

use crate::error::{Error, Result};
use crate::irred::{orbit_reps, ConstituentMultiset, InducedIrrep};
use crate::matrix::{MatrixE, Subspace};
use crate::scalar::{log_q, FieldCtx, Scalar};
use crate::wdrep::WDRep;

/// The summand `Sp_t(base)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpecialBlock {
    pub t: usize,
    pub base: InducedIrrep,
}

impl SpecialBlock {
    pub fn new(t: usize, base: InducedIrrep) -> Result<SpecialBlock> {
        if t == 0 {
            return Err(Error::Param("block length t must be >= 1".into()));
        }
        Ok(SpecialBlock { t, base })
    }

    pub fn dim(&self) -> usize {
        self.t * self.base.dim()
    }

    pub fn to_rep(&self) -> WDRep {
        WDRep::sp(self.t, &self.base.to_rep()).expect("model has zero monodromy")
    }
}

/// Direct sum of the canonical models of `blocks`, in order.
pub fn assemble(blocks: &[SpecialBlock]) -> Result<WDRep> {
    let (first, rest) = blocks.split_first().ok_or_else(|| Error::Param("no blocks".into()))?;
    rest.iter().try_fold(first.to_rep(), |acc, b| acc.direct_sum(&b.to_rep()))
}

/// Blocks sorted by `(t, base)` and a basis realizing them: the
/// representation equals `basis * assemble(blocks) * basis^-1`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub blocks: Vec<SpecialBlock>,
    pub basis: MatrixE,
    pub basis_inv: MatrixE,
}

impl Decomposition {
    pub fn model(&self) -> WDRep {
        assemble(&self.blocks).expect("decomposition has blocks")
    }
}

/// `(degree, length, generator)` for one chain of `N` inside a graded piece.
type Chain = (usize, usize, Vec<Scalar>);

/// Generators of maximal `N`-chains in `H_0 + ... + H_L`, where `N` raises
/// the degree by one. `kernels[t] = ker N^t`.
fn chain_generators(hs: &[Subspace], nm: &MatrixE, npows: &[MatrixE], kernels: &[Subspace]) -> Result<Vec<Chain>> {
    let top = hs.len();
    let ker = |t: usize| &kernels[t.min(kernels.len() - 1)];
    let mut out = Vec::new();
    for t in (1..=top).rev() {
        for e in 0..=top - t {
            let within = ker(t).intersect(&hs[e])?;
            let mut covered = ker(t - 1).intersect(&hs[e])?;
            if e > 0 {
                covered = covered.sum(&ker(t + 1).intersect(&hs[e - 1])?.image(nm)?)?;
            }
            let fresh = covered.quotient_map(&within)?.complement;
            // quiver count of intervals [e, e + t - 1]
            let rank = |i: isize, j: isize| -> Result<usize> {
                if i < 0 || j >= top as isize || i > j {
                    return Ok(0);
                }
                Ok(hs[i as usize].image(&npows[(j - i) as usize])?.dim())
            };
            let (i, j) = (e as isize, (e + t - 1) as isize);
            let expected = rank(i, j)? + rank(i - 1, j + 1)? - rank(i - 1, j)? - rank(i, j + 1)?;
            if expected != fresh.len() {
                return Err(Error::Internal(format!("chain count {} disagrees with quiver count {expected}", fresh.len())));
            }
            out.extend(fresh.into_iter().map(|v| (e, t, v)));
        }
    }
    Ok(out)
}

/// Splits distinct eigenvalues into classes differing by powers of `q^f`,
/// each sorted by degree: `alpha_e = alpha_0 q^(-f e)`.
fn chi_classes(alphas: &[Scalar], f: usize, q: u64) -> Vec<Vec<(usize, Scalar)>> {
    let offset = |a: &Scalar, b: &Scalar| -> Option<i64> {
        let k = log_q(&(a * &b.inv().ok()?).as_rational()?, q)?;
        (k % f as i64 == 0).then(|| -k / f as i64)
    };
    let mut classes: Vec<Vec<(i64, Scalar)>> = Vec::new();
    for a in alphas {
        match classes.iter_mut().find_map(|c| offset(a, &c[0].1).map(|o| (c, o))) {
            Some((c, o)) => c.push((o, a.clone())),
            None => classes.push(vec![(0, a.clone())]),
        }
    }
    classes
        .into_iter()
        .map(|c| {
            let lo = c.iter().map(|x| x.0).min().expect("nonempty");
            let mut c: Vec<(usize, Scalar)> = c.into_iter().map(|(o, a)| ((o - lo) as usize, a)).collect();
            c.sort_by_key(|x| x.0);
            c
        })
        .collect()
}

/// Decomposes a Frobenius-semisimple representation into special blocks.
/// With `frss_first` the semisimplification is taken first; otherwise a
/// non-semisimple Frobenius is an error.
pub fn decompose(rep: &WDRep, frss_first: bool) -> Result<Decomposition> {
    rep.check()?;
    let rep = if frss_first {
        rep.frss()?
    } else if rep.is_frobenius_semisimple()? {
        rep.clone()
    } else {
        return Err(Error::NotFrobeniusSemisimple);
    };
    let ctx = rep.ctx();
    let d = rep.dim();
    let (s, f, nm) = (rep.tame(), rep.frobenius(), rep.monodromy());
    let mut npows = vec![MatrixE::identity(ctx, d)];
    for _ in 0..=d {
        let next = npows.last().expect("nonempty").mul(nm);
        npows.push(next);
    }
    let kernels: Vec<Subspace> = npows.iter().map(|p| p.kernel()).collect();
    let f_pows: Vec<MatrixE> = (0..=d as i64).map(|k| f.pow(k)).collect::<Result<_>>()?;

    let constituents = rep.constituents()?;
    let mut found: Vec<(SpecialBlock, Vec<Vec<Scalar>>)> = Vec::new();
    for (j0, size) in orbit_reps(rep.n(), ctx.q()) {
        let eig = s.shift(&ctx.zeta_n(rep.n(), j0 as i64));
        if eig.kernel().dim() == 0 {
            continue;
        }
        let ff = &f_pows[size];
        let alphas: Vec<Scalar> = constituents
            .iter()
            .filter(|(ir, _)| ir.orbit_rep() == j0)
            .map(|(ir, _)| ir.alpha().clone())
            .collect();
        for class in chi_classes(&alphas, size, ctx.q()) {
            let (top_deg, top_alpha) = &class[0];
            debug_assert_eq!(*top_deg, 0);
            let levels = class.last().expect("nonempty").0 + 1;
            let mut hs = vec![Subspace::zero(ctx, d); levels];
            for (e, a) in &class {
                let mut rows = eig.row_vectors();
                rows.extend(ff.shift(a).row_vectors());
                hs[*e] = MatrixE::from_rows(ctx, rows)?.kernel();
            }
            for (e, t, v) in chain_generators(&hs, nm, &npows, &kernels)? {
                let alpha = top_alpha * &ctx.q_pow(-((size * e) as i64));
                let base = InducedIrrep::new(ctx, rep.n(), j0, alpha.clone())?;
                let alpha_inv = alpha.inv()?;
                let mut cols = Vec::with_capacity(t * size);
                for i in (0..t).rev() {
                    let e0 = npows[i].apply(&v);
                    let mut level = vec![e0.clone()];
                    for k in (1..size).rev() {
                        let c = &ctx.q_pow((k * i) as i64) * &alpha_inv;
                        level.push(f_pows[k].apply(&e0).iter().map(|x| x * &c).collect());
                    }
                    cols.extend(level);
                }
                found.push((SpecialBlock { t, base }, cols));
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let cols: Vec<Vec<Scalar>> = found.iter().flat_map(|(_, c)| c.iter().cloned()).collect();
    if cols.len() != d {
        return Err(Error::Internal(format!("decomposition found {} of {d} basis vectors", cols.len())));
    }
    let blocks: Vec<SpecialBlock> = found.into_iter().map(|(b, _)| b).collect();
    let basis = MatrixE::from_columns(ctx, &cols)?;
    let basis_inv = basis.inverse().map_err(|_| Error::Internal("decomposition basis is singular".into()))?;
    let out = Decomposition { blocks, basis, basis_inv };
    if rep.conjugate(&out.basis_inv, &out.basis) != out.model() {
        return Err(Error::Internal("decomposition basis does not realize the blocks".into()));
    }
    Ok(out)
}

/// An invertible `T` with `T b = a T` for `S`, `F` and `N`, if the two
/// Frobenius-semisimple representations are isomorphic.
pub fn isomorphic(a: &WDRep, b: &WDRep) -> Result<Option<MatrixE>> {
    if a.ctx() != b.ctx() || a.n() != b.n() {
        return Err(Error::ContextMismatch);
    }
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let da = decompose(a, false)?;
    let db = decompose(b, false)?;
    if da.blocks != db.blocks {
        return Ok(None);
    }
    let t = da.basis.mul(&db.basis_inv);
    if !intertwines(&t, a, b) {
        return Err(Error::Internal("block-matched intertwiner failed verification".into()));
    }
    Ok(Some(t))
}

/// Exact check of `T b(g) = a(g) T` for `g` in `S, F, N`.
pub fn intertwines(t: &MatrixE, a: &WDRep, b: &WDRep) -> bool {
    t.mul(b.tame()) == a.tame().mul(t)
        && t.mul(b.frobenius()) == a.frobenius().mul(t)
        && t.mul(b.monodromy()) == a.monodromy().mul(t)
        && t.inverse().is_ok()
}

/// Splits off `Sp_t(sigma)` for a maximal-weight constituent `sigma`, with `t`
/// read off from the weight spread.
pub fn peel(cs: &ConstituentMultiset) -> Result<(SpecialBlock, ConstituentMultiset)> {
    let mut weighted = Vec::new();
    for (ir, _) in cs.iter() {
        let u = ir
            .weight()
            .ok_or_else(|| Error::InconsistentPureTrace(format!("constituent with alpha {} has no integer weight", ir.alpha())))?;
        weighted.push((ir, u));
    }
    let wmax = weighted.iter().map(|x| x.1).max().ok_or_else(|| Error::Param("empty constituent multiset".into()))?;
    let wmin = weighted.iter().map(|x| x.1).min().expect("nonempty");
    if (wmax - wmin) % 2 != 0 {
        return Err(Error::InconsistentPureTrace(format!("weight spread {} is odd", wmax - wmin)));
    }
    let t = 1 + ((wmax - wmin) / 2) as usize;
    let sigma = weighted.iter().find(|x| x.1 == wmax).expect("maximum attained").0.clone();
    let mut rest = cs.clone();
    for j in 0..t {
        let tw = sigma.twist_chi(j as i64);
        if !rest.remove(&tw) {
            return Err(Error::InconsistentPureTrace(format!("missing twist chi^{j} of alpha {}", sigma.alpha())));
        }
    }
    Ok((SpecialBlock { t, base: sigma }, rest))
}

/// Blocks of `reconstruct(cs)`, in peel order.
pub fn peel_all(cs: &ConstituentMultiset) -> Result<Vec<SpecialBlock>> {
    let mut blocks = Vec::new();
    let mut rest = cs.clone();
    while !rest.is_empty() {
        let (b, r) = peel(&rest)?;
        blocks.push(b);
        rest = r;
    }
    Ok(blocks)
}

/// The Frobenius-semisimple pure representation with constituents `cs`.
pub fn reconstruct(cs: &ConstituentMultiset) -> Result<WDRep> {
    assemble(&peel_all(cs)?)
}

/// `T` with `T (psi^w rho2)^ss = rho1^ss T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCertificate {
    pub w: i64,
    pub intertwiner: MatrixE,
}

impl TwistCertificate {
    /// Re-checks the intertwining equations exactly.
    pub fn verify(&self, rho1: &WDRep, rho2: &WDRep) -> Result<bool> {
        let a = rho1.frss()?;
        let b = rho2.frss()?.twist_psi(self.w);
        Ok(intertwines(&self.intertwiner, &a, &b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotEquivalentReason {
    NotPure,
    NormalizedTracesDiffer,
}

impl fmt::Display for NotEquivalentReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotEquivalentReason::NotPure => "not pure",
            NotEquivalentReason::NormalizedTracesDiffer => "normalized traces differ",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistOutcome {
    Equivalent(TwistCertificate),
    NotEquivalent(NotEquivalentReason),
}

/// Decides whether `rho1^ss` and `psi^w rho2^ss` are isomorphic for the
/// weight difference `w` of two pure representations with equal normalized
/// traces, and returns a verified certificate if so.
pub fn twist_equivalence(rho1: &WDRep, rho2: &WDRep) -> Result<TwistOutcome> {
    if rho1.ctx() != rho2.ctx() || rho1.n() != rho2.n() {
        return Err(Error::ContextMismatch);
    }
    rho1.check()?;
    rho2.check()?;
    let (Some(w1), Some(w2)) = (rho1.purity()?.weight, rho2.purity()?.weight) else {
        return Ok(TwistOutcome::NotEquivalent(NotEquivalentReason::NotPure));
    };
    let c1 = rho1.twist_psi(-w1).constituents()?;
    let c2 = rho2.twist_psi(-w2).constituents()?;
    if !c1.trace_equal(&c2)? {
        return Ok(TwistOutcome::NotEquivalent(NotEquivalentReason::NormalizedTracesDiffer));
    }
    let w = w1 - w2;
    let t = isomorphic(&rho1.frss()?, &rho2.frss()?.twist_psi(w))?
        .ok_or_else(|| Error::Internal("pure representations with equal normalized traces are not twist-isomorphic".into()))?;
    let cert = TwistCertificate { w, intertwiner: t };
    if !cert.verify(rho1, rho2)? {
        return Err(Error::Internal("certificate failed verification".into()));
    }
    Ok(TwistOutcome::Equivalent(cert))
}

/// Constituent multiset of `blocks`, without building matrices.
pub fn block_constituents(ctx: &FieldCtx, n: u64, blocks: &[SpecialBlock]) -> Result<ConstituentMultiset> {
    let mut cs = ConstituentMultiset::new(ctx, n);
    for b in blocks {
        for i in 0..b.t {
            cs.insert(b.base.twist_chi(i as i64), 1)?;
        }
    }
    Ok(cs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triv(e: &FieldCtx) -> InducedIrrep {
        InducedIrrep::new(e, 1, 0, e.one()).unwrap()
    }

    #[test]
    fn irrep_is_single_block() {
        let e = FieldCtx::new(5, 2).unwrap();
        let ir = InducedIrrep::new(&e, 5, 2, e.zeta(3)).unwrap();
        let dec = decompose(&ir.to_rep(), false).unwrap();
        assert_eq!(dec.blocks, vec![SpecialBlock { t: 1, base: ir }]);
    }

    #[test]
    fn sp3_plus_twisted_line() {
        let e = FieldCtx::new(1, 2).unwrap();
        let a = WDRep::sp(3, &WDRep::trivial(&e, 1)).unwrap();
        let b = WDRep::trivial(&e, 1).twist_chi(1);
        let r = a.direct_sum(&b).unwrap();
        assert_eq!(r.purity().unwrap().weight, Some(-2));
        let dec = decompose(&r, false).unwrap();
        let expect = vec![SpecialBlock { t: 1, base: triv(&e).twist_chi(1) }, SpecialBlock { t: 3, base: triv(&e) }];
        assert_eq!(dec.blocks, expect);
    }

    #[test]
    fn sp_of_induced_after_conjugation() {
        let e = FieldCtx::new(3, 2).unwrap();
        let ir = InducedIrrep::new(&e, 3, 1, e.q_pow(2)).unwrap();
        let r = WDRep::sp(2, &ir.to_rep()).unwrap();
        let mut p = MatrixE::identity(&e, 4);
        p.set(0, 3, e.int(2));
        p.set(2, 1, e.int(-1));
        let pi = p.inverse().unwrap();
        let c = r.conjugate(&p, &pi);
        assert_eq!(decompose(&c, false).unwrap().blocks, vec![SpecialBlock { t: 2, base: ir }]);
    }

    #[test]
    fn non_semisimple_rejected_unless_frss_first() {
        let e = FieldCtx::new(1, 3).unwrap();
        let f = MatrixE::from_ints(&e, &[&[1, 1], &[0, 1]]).unwrap();
        let r = WDRep::new(&e, 1, MatrixE::identity(&e, 2), f, MatrixE::zeros(&e, 2, 2)).unwrap();
        assert!(matches!(decompose(&r, false), Err(Error::NotFrobeniusSemisimple)));
        assert_eq!(decompose(&r, true).unwrap().blocks.len(), 2);
    }

    #[test]
    fn peel_examples() {
        let e = FieldCtx::new(1, 2).unwrap();
        let cs = WDRep::sp(3, &WDRep::trivial(&e, 1)).unwrap().constituents().unwrap();
        let (b, rest) = peel(&cs).unwrap();
        assert_eq!(b, SpecialBlock { t: 3, base: triv(&e) });
        assert!(rest.is_empty());

        let mut two = ConstituentMultiset::new(&e, 1);
        two.insert(triv(&e), 2).unwrap();
        let (b, rest) = peel(&two).unwrap();
        assert_eq!(b.t, 1);
        assert_eq!(rest.multiplicity(&triv(&e)), 1);
    }

    #[test]
    fn peel_rejects_inconsistent() {
        let e = FieldCtx::new(1, 2).unwrap();
        let mut cs = ConstituentMultiset::new(&e, 1);
        cs.insert(triv(&e), 1).unwrap();
        cs.insert(triv(&e).twist_psi(1), 1).unwrap();
        assert!(matches!(peel(&cs), Err(Error::InconsistentPureTrace(_))));
        let mut gap = ConstituentMultiset::new(&e, 1);
        gap.insert(triv(&e), 1).unwrap();
        gap.insert(triv(&e).twist_chi(2), 1).unwrap();
        assert!(matches!(peel(&gap), Err(Error::InconsistentPureTrace(_))));
    }

    #[test]
    fn reconstruct_two_sp2() {
        let e = FieldCtx::new(1, 2).unwrap();
        let sp2 = WDRep::sp(2, &WDRep::trivial(&e, 1)).unwrap();
        let r = sp2.direct_sum(&sp2).unwrap();
        let blocks = peel_all(&r.constituents().unwrap()).unwrap();
        assert_eq!(blocks.iter().map(|b| b.t).collect::<Vec<_>>(), vec![2, 2]);
        assert!(isomorphic(&reconstruct(&r.constituents().unwrap()).unwrap(), &r).unwrap().is_some());
    }

    #[test]
    fn isomorphism_distinguishes_blocks() {
        let e = FieldCtx::new(1, 2).unwrap();
        let sp2 = WDRep::sp(2, &WDRep::trivial(&e, 1)).unwrap();
        let split = WDRep::trivial(&e, 1).direct_sum(&WDRep::trivial(&e, 1).twist_chi(1)).unwrap();
        assert!(isomorphic(&sp2, &split).unwrap().is_none());
        assert!(isomorphic(&sp2, &sp2).unwrap().is_some());
    }

    #[test]
    fn twist_certificate_sp2() {
        let e = FieldCtx::new(1, 2).unwrap();
        let a = WDRep::sp(2, &WDRep::trivial(&e, 1)).unwrap();
        let b = a.twist_psi(3);
        match twist_equivalence(&a, &b).unwrap() {
            TwistOutcome::Equivalent(c) => {
                assert_eq!(c.w, -3);
                assert!(c.verify(&a, &b).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn twist_equivalence_negatives() {
        let e = FieldCtx::new(1, 2).unwrap();
        let sp2 = WDRep::sp(2, &WDRep::trivial(&e, 1)).unwrap();
        let mixed = WDRep::trivial(&e, 1).direct_sum(&WDRep::trivial(&e, 1).twist_psi(2)).unwrap();
        assert_eq!(twist_equivalence(&sp2, &mixed).unwrap(), TwistOutcome::NotEquivalent(NotEquivalentReason::NotPure));
        let other = WDRep::sp(2, &WDRep::character(&e, 1, e.int(-1))).unwrap();
        assert_eq!(
            twist_equivalence(&sp2, &other).unwrap(),
            TwistOutcome::NotEquivalent(NotEquivalentReason::NormalizedTracesDiffer)
        );
    }
}
