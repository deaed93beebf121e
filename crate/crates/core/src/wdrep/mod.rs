//! Weil-Deligne representations of the tame quotient
//! `<sigma, phi | sigma^n = 1, phi sigma phi^-1 = sigma^q>`.
//!
//! A representation is the triple of matrices `(S, F, N)`: the action of the
//! tame inertia generator, of the fixed geometric Frobenius lift, and the
//! nilpotent monodromy operator.

mod filtration;
mod purity;

pub use filtration::{Filtration, Grading};
pub use purity::{PurityReport, PurityViolation};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::MatrixE;
use crate::scalar::{FieldCtx, Scalar};

/// A Weil-Deligne representation datum. Construction only checks shapes;
/// use [`WDRep::validate`] for the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WDRep {
    ctx: FieldCtx,
    n: u64,
    s: MatrixE,
    f: MatrixE,
    nm: MatrixE,
}

/// One entry `tr(S^a F^b)` of a trace panel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PanelEntry {
    pub a: u64,
    pub b: u64,
    pub value: Scalar,
}

impl WDRep {
    pub fn new(ctx: &FieldCtx, n: u64, s: MatrixE, f: MatrixE, nm: MatrixE) -> Result<WDRep> {
        if n == 0 {
            return Err(Error::Param("tame inertia order n must be >= 1".into()));
        }
        let d = s.rows();
        for (name, m) in [("S", &s), ("F", &f), ("N", &nm)] {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(WDRep { ctx: ctx.clone(), n, s, f, nm })
    }

    /// The one-dimensional trivial representation.
    pub fn trivial(ctx: &FieldCtx, n: u64) -> WDRep {
        WDRep::character(ctx, n, ctx.one())
    }

    /// One-dimensional unramified representation with `phi -> alpha`.
    pub fn character(ctx: &FieldCtx, n: u64, alpha: Scalar) -> WDRep {
        let one = MatrixE::identity(ctx, 1);
        WDRep { ctx: ctx.clone(), n, s: one, f: MatrixE::diagonal(ctx, &[alpha]), nm: MatrixE::zeros(ctx, 1, 1) }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Order of the tame inertia quotient.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    /// Action of the tame inertia generator.
    pub fn tame(&self) -> &MatrixE {
        &self.s
    }

    /// Action of the geometric Frobenius lift.
    pub fn frobenius(&self) -> &MatrixE {
        &self.f
    }

    pub fn monodromy(&self) -> &MatrixE {
        &self.nm
    }

    /// Names every violated axiom; empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let ctx = &self.ctx;
        let d = self.dim();
        let id = MatrixE::identity(ctx, d);
        let mut bad = Vec::new();
        if self.n.gcd(&ctx.q()) != 1 {
            bad.push("gcd(n, q) = 1".to_string());
        }
        if !ctx.order().is_multiple_of(self.n) {
            bad.push("n divides N".to_string());
        }
        if self.s.pow(self.n as i64).map_or(true, |p| p != id) {
            bad.push("S^n = I".to_string());
        }
        let f_inv = self.f.inverse().is_ok();
        if !f_inv {
            bad.push("F invertible".to_string());
        }
        if !self.nm.pow(d as i64).is_ok_and(|p| p.is_zero()) {
            bad.push("N nilpotent".to_string());
        }
        let sq = self.s.pow(ctx.q() as i64).expect("square");
        if self.f.mul(&self.s) != sq.mul(&self.f) {
            bad.push("F S F^-1 = S^q".to_string());
        }
        if self.s.mul(&self.nm) != self.nm.mul(&self.s) {
            bad.push("S N S^-1 = N".to_string());
        }
        if self.f.mul(&self.nm) != self.nm.mul(&self.f).scale(&ctx.q_pow(-1)) {
            bad.push("F N F^-1 = q^-1 N".to_string());
        }
        bad
    }

    /// [`WDRep::validate`] as a `Result`.
    pub fn check(&self) -> Result<()> {
        let bad = self.validate();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidRep(bad))
        }
    }

    /// The special representation `Sp_t(base)`.
    ///
    /// Coordinates are ordered `V_{t-1}, ..., V_0`; `phi` acts on `V_i` by
    /// `q^-i F` and the monodromy is the identity `V_i -> V_{i+1}`.
    pub fn sp(t: usize, base: &WDRep) -> Result<WDRep> {
        if t == 0 {
            return Err(Error::Param("Sp_t needs t >= 1".into()));
        }
        if !base.nm.is_zero() {
            return Err(Error::NonzeroMonodromyBase);
        }
        let ctx = &base.ctx;
        let d = base.dim();
        let fs: Vec<MatrixE> = (0..t).rev().map(|i| base.f.scale(&ctx.q_pow(-(i as i64)))).collect();
        let f = MatrixE::block_diag(ctx, &fs.iter().collect::<Vec<_>>())?;
        let s = MatrixE::block_diag(ctx, &vec![&base.s; t])?;
        let mut nm = MatrixE::zeros(ctx, d * t, d * t);
        // block position p holds V_{t-1-p}; V_i -> V_{i+1} maps position p+1 to p
        for p in 0..t - 1 {
            for k in 0..d {
                nm.set(p * d + k, (p + 1) * d + k, ctx.one());
            }
        }
        Ok(WDRep { ctx: ctx.clone(), n: base.n, s, f, nm })
    }

    /// `psi^m (x) rep`, where `psi(phi) = s`.
    pub fn twist_psi(&self, m: i64) -> WDRep {
        let mut out = self.clone();
        out.f = self.f.scale(&self.ctx.s_pow(m));
        out
    }

    /// `chi^j (x) rep`, where `chi(phi) = q^-1`; equal to `psi^(-2j)`.
    pub fn twist_chi(&self, j: i64) -> WDRep {
        self.twist_psi(-2 * j)
    }

    pub fn direct_sum(&self, other: &WDRep) -> Result<WDRep> {
        if self.ctx != other.ctx || self.n != other.n {
            return Err(Error::ContextMismatch);
        }
        let ctx = &self.ctx;
        Ok(WDRep {
            ctx: ctx.clone(),
            n: self.n,
            s: MatrixE::block_diag(ctx, &[&self.s, &other.s])?,
            f: MatrixE::block_diag(ctx, &[&self.f, &other.f])?,
            nm: MatrixE::block_diag(ctx, &[&self.nm, &other.nm])?,
        })
    }

    /// `P rep P^-1`, given both `P` and its inverse.
    pub fn conjugate(&self, p: &MatrixE, p_inv: &MatrixE) -> WDRep {
        WDRep {
            ctx: self.ctx.clone(),
            n: self.n,
            s: p.mul(&self.s).mul(p_inv),
            f: p.mul(&self.f).mul(p_inv),
            nm: p.mul(&self.nm).mul(p_inv),
        }
    }

    /// Replaces the Frobenius matrix, keeping `S` and `N`.
    pub fn with_frobenius(&self, f: MatrixE) -> Result<WDRep> {
        WDRep::new(&self.ctx, self.n, self.s.clone(), f, self.nm.clone())
    }

    /// Frobenius-semisimplification: `phi` acts by the semisimple part of `F`.
    pub fn frss(&self) -> Result<WDRep> {
        let parts = self.frobenius_jordan()?;
        let mut out = self.clone();
        out.f = parts.semisimple;
        Ok(out)
    }

    pub fn is_frobenius_semisimple(&self) -> Result<bool> {
        Ok(self.frobenius_jordan()?.unipotent.is_identity())
    }

    /// Jordan parts of `F`, computed through `F^o` with `o` the order of `q`
    /// modulo `n`, whose eigenvalues lie in the supported class.
    fn frobenius_jordan(&self) -> Result<crate::matrix::JordanParts> {
        let mut o = 1;
        let mut x = self.ctx.q() % self.n;
        while self.n > 1 && x != 1 {
            x = x * self.ctx.q() % self.n;
            o += 1;
        }
        self.f.jordan_multiplicative_via_power(o)
    }

    /// `tr(S^a F^b)`; `b` may be negative.
    pub fn trace(&self, a: i64, b: i64) -> Result<Scalar> {
        Ok(self.s.pow(a.rem_euclid(self.n as i64))?.mul(&self.f.pow(b)?).trace())
    }

    /// Traces over `0 <= a < n`, `0 <= b <= bound`.
    pub fn trace_panel(&self, bound: u64) -> Result<Vec<PanelEntry>> {
        let d = self.dim();
        let s_pows: Vec<MatrixE> = (0..self.n).map(|a| self.s.pow(a as i64)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut fb = MatrixE::identity(&self.ctx, d);
        for b in 0..=bound {
            for (a, sa) in s_pows.iter().enumerate() {
                out.push(PanelEntry { a: a as u64, b, value: sa.mul(&fb).trace() });
            }
            fb = fb.mul(&self.f);
        }
        out.sort_by_key(|e| (e.a, e.b));
        Ok(out)
    }

    /// Trace panel of `psi^-w (x) rep` for the purity weight `w`.
    pub fn normalized_trace_panel(&self, bound: u64) -> Result<Vec<PanelEntry>> {
        let w = self.purity()?.weight.ok_or(Error::NotPure)?;
        self.twist_psi(-w).trace_panel(bound)
    }
}
