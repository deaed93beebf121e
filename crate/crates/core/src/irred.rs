//! Irreducible Frobenius-semisimple representations in induced normal form,
//! and constituent multisets of arbitrary representations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::MatrixE;
use crate::scalar::{FieldCtx, Scalar};
use crate::wdrep::WDRep;

/// Irreducible representation induced from the orbit of `j0` under
/// multiplication by `q` modulo `n`; `alpha` is the eigenvalue of `phi^f` on
/// the `zeta_n^j0`-eigenline.
#[derive(Clone, Debug)]
pub struct InducedIrrep {
    ctx: FieldCtx,
    n: u64,
    j0: u64,
    f: usize,
    alpha: Scalar,
}

/// The `<x q>`-orbit of `j` modulo `n`, starting at `j`.
pub fn orbit_of(n: u64, q: u64, j: u64) -> Vec<u64> {
    let start = j % n;
    let mut out = vec![start];
    let mut cur = (start * q) % n;
    while cur != start {
        out.push(cur);
        cur = (cur * q) % n;
    }
    out
}

/// Minimal representatives and sizes of all orbits modulo `n`.
pub fn orbit_reps(n: u64, q: u64) -> Vec<(u64, usize)> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j as usize] {
            continue;
        }
        let orb = orbit_of(n, q, j);
        for &k in &orb {
            seen[k as usize] = true;
        }
        out.push((j, orb.len()));
    }
    out
}

impl InducedIrrep {
    /// `j` may be any member of the orbit; it is normalized to the minimum.
    pub fn new(ctx: &FieldCtx, n: u64, j: u64, alpha: Scalar) -> Result<InducedIrrep> {
        if n == 0 || !ctx.order().is_multiple_of(n) {
            return Err(Error::Param(format!("n = {n} must divide N = {}", ctx.order())));
        }
        if num_integer::gcd(n, ctx.q()) != 1 {
            return Err(Error::Param(format!("gcd(n, q) must be 1, got n = {n}")));
        }
        if alpha.is_zero() {
            return Err(Error::Param("alpha must be nonzero".into()));
        }
        if alpha.ctx() != ctx {
            return Err(Error::ContextMismatch);
        }
        let orb = orbit_of(n, ctx.q(), j);
        let j0 = *orb.iter().min().expect("nonempty orbit");
        Ok(InducedIrrep { ctx: ctx.clone(), n, j0, f: orb.len(), alpha })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Minimal orbit representative.
    pub fn orbit_rep(&self) -> u64 {
        self.j0
    }

    pub fn orbit_size(&self) -> usize {
        self.f
    }

    pub fn orbit(&self) -> Vec<u64> {
        orbit_of(self.n, self.ctx.q(), self.j0)
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.f
    }

    /// Integer `u` with `weil_weight(alpha) = f u`.
    pub fn weight(&self) -> Option<i64> {
        let k = self.alpha.weil_weight()?;
        let f = self.f as i64;
        (k % f == 0).then(|| k / f)
    }

    /// `psi^m` twist: `alpha -> s^(m f) alpha`.
    pub fn twist_psi(&self, m: i64) -> InducedIrrep {
        let mut out = self.clone();
        out.alpha = &self.alpha * &self.ctx.s_pow(m * self.f as i64);
        out
    }

    /// `chi^j` twist, equal to `psi^(-2j)`.
    pub fn twist_chi(&self, j: i64) -> InducedIrrep {
        self.twist_psi(-2 * j)
    }

    /// The explicit model. Basis `e_k` spans the `zeta_n^(q^k j0)`-line;
    /// `F e_k = e_(k-1)` and `F e_0 = alpha e_(f-1)`, so `F^f = alpha`.
    pub fn to_rep(&self) -> WDRep {
        let ctx = &self.ctx;
        let f = self.f;
        let diag: Vec<Scalar> = self.orbit().iter().map(|&j| ctx.zeta_n(self.n, j as i64)).collect();
        let s = MatrixE::diagonal(ctx, &diag);
        let mut fm = MatrixE::zeros(ctx, f, f);
        for k in 1..f {
            fm.set(k - 1, k, ctx.one());
        }
        fm.set(f - 1, 0, self.alpha.clone());
        WDRep::new(ctx, self.n, s, fm, MatrixE::zeros(ctx, f, f)).expect("square model")
    }
}

impl PartialEq for InducedIrrep {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for InducedIrrep {}

impl Ord for InducedIrrep {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.j0, &self.alpha).cmp(&(other.n, other.j0, &other.alpha))
    }
}

impl PartialOrd for InducedIrrep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multiset of irreducible constituents, ordered by canonical key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstituentMultiset {
    ctx: FieldCtx,
    n: u64,
    entries: BTreeMap<InducedIrrep, usize>,
}

impl ConstituentMultiset {
    pub fn new(ctx: &FieldCtx, n: u64) -> ConstituentMultiset {
        ConstituentMultiset { ctx: ctx.clone(), n, entries: BTreeMap::new() }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn insert(&mut self, ir: InducedIrrep, mult: usize) -> Result<()> {
        if ir.ctx() != &self.ctx || ir.n() != self.n {
            return Err(Error::ContextMismatch);
        }
        if mult > 0 {
            *self.entries.entry(ir).or_default() += mult;
        }
        Ok(())
    }

    /// Removes one copy; false if absent.
    pub fn remove(&mut self, ir: &InducedIrrep) -> bool {
        match self.entries.get_mut(ir) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.entries.remove(ir);
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, ir: &InducedIrrep) -> usize {
        self.entries.get(ir).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&InducedIrrep, usize)> {
        self.entries.iter().map(|(k, &m)| (k, m))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct constituents.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn dim(&self) -> usize {
        self.iter().map(|(ir, m)| ir.dim() * m).sum()
    }

    pub fn union(&self, other: &ConstituentMultiset) -> Result<ConstituentMultiset> {
        let mut out = self.clone();
        for (ir, m) in other.iter() {
            out.insert(ir.clone(), m)?;
        }
        Ok(out)
    }

    /// Brauer-Nesbitt: equal multisets iff equal traces of the semisimplifications.
    pub fn trace_equal(&self, other: &ConstituentMultiset) -> Result<bool> {
        if self.ctx != other.ctx || self.n != other.n {
            return Err(Error::ContextMismatch);
        }
        Ok(self.entries == other.entries)
    }
}

/// Constituents of the pair `(S, F)`: for each orbit, the eigenvalues of
/// `F^f` on the `zeta_n^j0`-eigenspace of `S`.
pub fn constituents_of(ctx: &FieldCtx, n: u64, s: &MatrixE, f: &MatrixE) -> Result<ConstituentMultiset> {
    let mut out = ConstituentMultiset::new(ctx, n);
    for (j0, size) in orbit_reps(n, ctx.q()) {
        let space = s.shift(&ctx.zeta_n(n, j0 as i64)).kernel();
        if space.dim() == 0 {
            continue;
        }
        let ff = f.pow(size as i64)?;
        let cols: Vec<Vec<Scalar>> = space.basis().iter().map(|b| space.coordinates(&ff.apply(b))).collect();
        let restricted = MatrixE::from_columns(ctx, &cols)?;
        for (alpha, mult) in restricted.split_class_eigenvalues()? {
            out.insert(InducedIrrep::new(ctx, n, j0, alpha)?, mult)?;
        }
    }
    if out.dim() != s.rows() {
        return Err(Error::Internal("constituent dimensions do not add up".into()));
    }
    Ok(out)
}

impl WDRep {
    /// Constituents of the semisimplification; the monodromy is ignored.
    pub fn constituents(&self) -> Result<ConstituentMultiset> {
        constituents_of(self.ctx(), self.n(), self.tame(), self.frobenius())
    }
}
