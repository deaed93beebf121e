//! Seeded generation of pure representations `sum Sp_t(r)` with optional
//! scrambling.

use crate::error::{Error, Result};
use crate::irred::{orbit_reps, InducedIrrep};
use crate::matrix::MatrixE;
use crate::scalar::{FieldCtx, Scalar};
use crate::structure::{assemble, SpecialBlock};
use crate::wdrep::WDRep;

/// SplitMix64: the whole state is one `u64` advanced by the golden-ratio
/// increment, and outputs go through the finalizer of MurmurHash3's 64-bit
/// variant. Identical seeds give identical streams on every platform.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish in `0..k` (modulo reduction).
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0, "empty range");
        self.next_u64() % k
    }

    /// Inclusive range `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub q: u64,
    /// Order `N` of the cyclotomic part of the coefficient field.
    pub order: u64,
    pub n: u64,
    pub w: i64,
    pub max_blocks: usize,
    pub max_t: usize,
    pub max_orbit: usize,
    pub max_dim: usize,
    pub conjugate: bool,
    pub unipotent_frobenius: bool,
    /// Repeat one block and link the copies inside `F`, so the output is not
    /// Frobenius-semisimple.
    pub duplicate_block: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            q: 2,
            order: 1,
            n: 1,
            w: 0,
            max_blocks: 3,
            max_t: 3,
            max_orbit: 4,
            max_dim: 12,
            conjugate: false,
            unipotent_frobenius: false,
            duplicate_block: false,
        }
    }
}

impl GenParams {
    pub fn check(&self) -> Result<FieldCtx> {
        let ctx = FieldCtx::new(self.order, self.q)?;
        if self.n == 0 || !self.order.is_multiple_of(self.n) {
            return Err(Error::Param(format!("n = {} must divide N = {}", self.n, self.order)));
        }
        if num_integer::gcd(self.n, self.q) != 1 {
            return Err(Error::Param(format!("gcd(n, q) must be 1, got n = {}", self.n)));
        }
        for (name, v) in
            [("max_blocks", self.max_blocks), ("max_t", self.max_t), ("max_orbit", self.max_orbit), ("max_dim", self.max_dim)]
        {
            if v == 0 {
                return Err(Error::Param(format!("{name} must be >= 1")));
            }
        }
        Ok(ctx)
    }
}

/// A generated representation and the blocks of its Frobenius
/// semisimplification, sorted by `(t, base)`.
#[derive(Clone, Debug)]
pub struct Generated {
    pub rep: WDRep,
    pub blocks: Vec<SpecialBlock>,
}

/// Random irreducible of weight `u` with orbit size at most `max_orbit`.
pub fn random_irrep(ctx: &FieldCtx, n: u64, u: i64, max_orbit: usize, rng: &mut SplitMix64) -> InducedIrrep {
    let orbits: Vec<(u64, usize)> = orbit_reps(n, ctx.q()).into_iter().filter(|o| o.1 <= max_orbit).collect();
    let &(j0, f) = rng.pick(&orbits);
    let zeta = rng.pick(&ctx.roots_of_unity()).clone();
    let alpha = &zeta * &ctx.s_pow(f as i64 * u);
    InducedIrrep::new(ctx, n, j0, alpha).expect("valid orbit")
}

/// Random nonzero scalar `k zeta` with `k` in `1..=3`.
pub fn random_unit(ctx: &FieldCtx, rng: &mut SplitMix64) -> Scalar {
    let zeta = rng.pick(&ctx.roots_of_unity()).clone();
    &ctx.int(rng.range(1, 3)) * &zeta
}

/// A product of `3d` elementary integer row operations and its inverse.
pub fn random_invertible(ctx: &FieldCtx, d: usize, rng: &mut SplitMix64) -> (MatrixE, MatrixE) {
    let mut p = MatrixE::identity(ctx, d);
    let mut p_inv = MatrixE::identity(ctx, d);
    if d < 2 {
        return (p, p_inv);
    }
    for _ in 0..3 * d {
        let i = rng.below(d as u64) as usize;
        let j = (i + 1 + rng.below(d as u64 - 1) as usize) % d;
        let c = ctx.int(if rng.coin() { rng.range(1, 2) } else { -rng.range(1, 2) });
        // P <- (I + c e_i e_j^T) P and P^-1 <- P^-1 (I - c e_i e_j^T)
        for k in 0..d {
            let v = p.get(i, k) + &(&c * p.get(j, k));
            p.set(i, k, v);
            let v = p_inv.get(k, j) - &(&c * p_inv.get(k, i));
            p_inv.set(k, j, v);
        }
    }
    (p, p_inv)
}

/// `P rep P^-1` for a random elementary `P`.
pub fn scramble_conjugate(rep: &WDRep, rng: &mut SplitMix64) -> WDRep {
    let (p, p_inv) = random_invertible(rep.ctx(), rep.dim(), rng);
    rep.conjugate(&p, &p_inv)
}

/// `F -> F (I + c N)` for a random nonzero `c`.
pub fn scramble_unipotent(rep: &WDRep, rng: &mut SplitMix64) -> WDRep {
    let c = random_unit(rep.ctx(), rng);
    let id = MatrixE::identity(rep.ctx(), rep.dim());
    let f = rep.frobenius().mul(&id.add(&rep.monodromy().scale(&c)));
    rep.with_frobenius(f).expect("same shape")
}

/// Samples a pure representation of weight `p.w` as a sum of special blocks,
/// then applies the requested scrambles.
pub fn gen_pure(p: &GenParams) -> Result<Generated> {
    let ctx = p.check()?;
    let mut rng = SplitMix64::new(p.seed);
    let smallest_orbit = orbit_reps(p.n, p.q).iter().map(|o| o.1).min().expect("orbit of 0");
    let target = 1 + rng.below(p.max_blocks as u64) as usize;
    let mut blocks: Vec<SpecialBlock> = Vec::new();
    let mut dim = 0;
    if p.duplicate_block && p.max_dim < 2 * smallest_orbit {
        return Err(Error::Param("max_dim leaves no room for a duplicated block".into()));
    }
    while blocks.len() < target {
        // the first block is budgeted twice when it will be duplicated
        let copies = if p.duplicate_block && blocks.is_empty() { 2 } else { 1 };
        let room = (p.max_dim - dim) / copies;
        if room < smallest_orbit {
            break;
        }
        let max_orbit = p.max_orbit.min(room);
        let ir = random_irrep(&ctx, p.n, 0, max_orbit, &mut rng);
        let f = ir.orbit_size();
        let t = 1 + rng.below(p.max_t.min(room / f) as u64) as usize;
        let base = ir.twist_psi(p.w + t as i64 - 1);
        dim += copies * t * f;
        blocks.push(SpecialBlock { t, base });
    }
    let mut linked = None;
    if p.duplicate_block {
        let copy = blocks[0].clone();
        linked = Some(copy.dim());
        blocks.insert(1, copy);
    }
    let mut rep = assemble(&blocks)?;
    if let Some(size) = linked {
        // E maps the second copy identically onto the first; it commutes
        // with S, F and N, so F (I + c E) has unipotent part I + c E.
        let c = random_unit(&ctx, &mut rng);
        let mut e = MatrixE::zeros(&ctx, rep.dim(), rep.dim());
        for k in 0..size {
            e.set(k, size + k, c.clone());
        }
        let f = rep.frobenius().mul(&MatrixE::identity(&ctx, rep.dim()).add(&e));
        rep = rep.with_frobenius(f)?;
    }
    if p.unipotent_frobenius {
        rep = scramble_unipotent(&rep, &mut rng);
    }
    if p.conjugate {
        rep = scramble_conjugate(&rep, &mut rng);
    }
    blocks.sort();
    Ok(Generated { rep, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::decompose;

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 1234567
        let mut r = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..3).map(|_| r.next_u64()).collect();
        assert_eq!(got, vec![6457827717110365317, 3203168211198807973, 9817491932198370423]);
    }

    #[test]
    fn single_trivial_block() {
        let p = GenParams { max_blocks: 1, max_t: 1, ..GenParams::default() };
        let g = gen_pure(&p).unwrap();
        assert_eq!(g.rep.dim(), 1);
        let f = g.rep.frobenius().get(0, 0).clone();
        assert!(g.rep.ctx().roots_of_unity().contains(&f));
    }

    #[test]
    fn deterministic() {
        let p = GenParams { seed: 9, q: 3, order: 4, n: 4, conjugate: true, unipotent_frobenius: true, ..GenParams::default() };
        assert_eq!(gen_pure(&p).unwrap().rep, gen_pure(&p).unwrap().rep);
    }

    #[test]
    fn invertible_pair() {
        let e = FieldCtx::new(1, 2).unwrap();
        let (p, pi) = random_invertible(&e, 5, &mut SplitMix64::new(3));
        assert!(p.mul(&pi).is_identity());
    }

    #[test]
    fn generated_reps_are_pure_and_decompose() {
        for seed in 0..12 {
            let p = GenParams { seed, q: 2, order: 3, n: 3, w: -1, conjugate: true, ..GenParams::default() };
            let g = gen_pure(&p).unwrap();
            assert!(g.rep.validate().is_empty());
            assert_eq!(g.rep.purity().unwrap().weight, Some(-1));
            assert_eq!(decompose(&g.rep, false).unwrap().blocks, g.blocks);
        }
    }

    #[test]
    fn duplicate_link_is_not_semisimple() {
        let p = GenParams { seed: 5, duplicate_block: true, max_dim: 12, ..GenParams::default() };
        let g = gen_pure(&p).unwrap();
        assert!(g.rep.validate().is_empty());
        assert!(!g.rep.is_frobenius_semisimple().unwrap());
        assert_eq!(decompose(&g.rep, true).unwrap().blocks, g.blocks);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(gen_pure(&GenParams { n: 2, ..GenParams::default() }).is_err());
        assert!(gen_pure(&GenParams { order: 3, n: 3, q: 3, ..GenParams::default() }).is_err());
        assert!(gen_pure(&GenParams { max_t: 0, ..GenParams::default() }).is_err());
    }
}
