//! Exact arithmetic in the coefficient field `E = Q(zeta_N)[s]/(s^2 - q)`.
//!
//! Elements are stored over a common positive denominator as integer
//! coefficient vectors in the power basis `1, z, ..., z^(deg-1)` (the "1"
//! part) followed by the same basis multiplied by `s`. Here `z = zeta_N` and
//! `deg = phi(N)`. After every operation the representation is reduced, so
//! structural equality is field equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Field parameters `(N, q)` with the cyclotomic reduction data cached.
///
/// Cloning is cheap; all clones share the cached tables.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldData>);

struct FieldData {
    order: u64,
    q: u64,
    degree: usize,
    cyclotomic: Vec<BigInt>,
    /// `zeta^m` for `m in 0..N`, reduced to the power basis.
    zeta_powers: Vec<Vec<BigInt>>,
}

impl FieldCtx {
    /// Builds the context for `Q(zeta_order, sqrt(q))`.
    ///
    /// Rejects parameters for which `s^2 - q` splits over `Q(zeta_order)`,
    /// since the quotient ring would then have zero divisors.
    pub fn new(order: u64, q: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidField("cyclotomic order N must be >= 1".into()));
        }
        if q < 2 {
            return Err(Error::InvalidField("q must be >= 2".into()));
        }
        if let Some(reason) = sqrt_q_splits(order, q) {
            return Err(Error::InvalidField(reason));
        }
        let cyclotomic = cyclotomic_poly(order);
        let degree = cyclotomic.len() - 1;
        let mut zeta_powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..order {
            zeta_powers.push(cur.clone());
            // multiply by x and reduce with the monic modulus
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for (c, m) in cur.iter_mut().zip(&cyclotomic) {
                    *c -= &top * m;
                }
            }
        }
        Ok(FieldCtx(Arc::new(FieldData { order, q, degree, cyclotomic, zeta_powers })))
    }

    /// The cyclotomic order `N`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// `phi(N)`, the degree of the cyclotomic part.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Coefficients of the cyclotomic polynomial, lowest degree first.
    pub fn cyclotomic(&self) -> &[BigInt] {
        &self.0.cyclotomic
    }

    pub fn zero(&self) -> Scalar {
        Scalar { ctx: self.clone(), num: vec![BigInt::zero(); 2 * self.degree()], den: BigInt::one() }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        let mut x = self.zero();
        x.num[0] = BigInt::from(v);
        x
    }

    pub fn rational(&self, r: &BigRational) -> Scalar {
        let mut x = self.zero();
        x.num[0] = r.numer().clone();
        x.den = r.denom().clone();
        x.normalize();
        x
    }

    pub fn frac(&self, num: i64, den: i64) -> Scalar {
        self.rational(&BigRational::new(num.into(), den.into()))
    }

    /// `zeta_N^j` for any integer `j`.
    pub fn zeta(&self, j: i64) -> Scalar {
        let m = j.rem_euclid(self.order() as i64) as usize;
        let mut x = self.zero();
        x.num[..self.degree()].clone_from_slice(&self.0.zeta_powers[m]);
        x
    }

    /// A primitive `n`-th root of unity, `zeta_N^(N/n)`. Requires `n | N`.
    pub fn zeta_n(&self, n: u64, j: i64) -> Scalar {
        assert!(n >= 1 && self.order().is_multiple_of(n), "n must divide N");
        self.zeta(j * (self.order() / n) as i64)
    }

    /// The formal square root `s` of `q`.
    pub fn s(&self) -> Scalar {
        let mut x = self.zero();
        x.num[self.degree()] = BigInt::one();
        x
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(&self, k: i64) -> Scalar {
        let half = k.div_euclid(2);
        let base = self.q_pow(half);
        if k.rem_euclid(2) == 1 {
            &base * &self.s()
        } else {
            base
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        let p = num_traits::pow(BigInt::from(self.q()), k.unsigned_abs() as usize);
        let r = if k >= 0 { BigRational::from_integer(p) } else { BigRational::new(BigInt::one(), p) };
        self.rational(&r)
    }

    /// The roots of unity `+-zeta_N^j`, deduplicated, in a fixed order.
    ///
    /// This is the group of order `lcm(2, N)` used for eigenvalue search.
    pub fn roots_of_unity(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = Vec::new();
        for j in 0..self.order() as i64 {
            out.push(self.zeta(j));
        }
        for j in 0..self.order() as i64 {
            let z = -&self.zeta(j);
            if !out.contains(&z) {
                out.push(z);
            }
        }
        out
    }

    /// Builds an element from rational coefficient vectors of the `1` and `s`
    /// parts. Both vectors must have length `phi(N)`.
    pub fn from_parts(&self, a0: &[BigRational], a1: &[BigRational]) -> Result<Scalar> {
        let deg = self.degree();
        if a0.len() != deg || a1.len() != deg {
            return Err(Error::DimensionMismatch(format!(
                "scalar parts must have length {deg}, got {} and {}",
                a0.len(),
                a1.len()
            )));
        }
        let den = a0.iter().chain(a1).fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = a0.iter().chain(a1).map(|r| r.numer() * (&den / r.denom())).collect();
        let mut x = Scalar { ctx: self.clone(), num, den };
        x.normalize();
        Ok(x)
    }

    fn same(&self, other: &FieldCtx) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.order() == other.order() && self.q() == other.q())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldCtx {}

impl Hash for FieldCtx {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.q().hash(state);
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(N={}, q={})", self.order(), self.q())
    }
}

/// Returns a reason when `sqrt(q)` already lies in `Q(zeta_N)`.
fn sqrt_q_splits(order: u64, q: u64) -> Option<String> {
    let d = squarefree_part(q);
    if d == 1 {
        return Some(format!("q = {q} is a perfect square"));
    }
    let disc = if d % 4 == 1 { d } else { 4 * d };
    let conductor = if order % 4 == 2 { order / 2 } else { order };
    if conductor % disc == 0 {
        return Some(format!("sqrt({q}) lies in Q(zeta_{order})"));
    }
    None
}

fn squarefree_part(mut q: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= q {
        let mut e = 0;
        while q.is_multiple_of(p) {
            q /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * q
}

/// `Phi_n` from `x^n - 1 = prod_{d | n} Phi_d`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_poly(d));
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An element of `E`; see the module documentation for the layout.
#[derive(Clone)]
pub struct Scalar {
    ctx: FieldCtx,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scalar {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Rational coefficients of the `1` part.
    pub fn part0(&self) -> Vec<BigRational> {
        self.num[..self.ctx.degree()].iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    /// Rational coefficients of the `s` part.
    pub fn part1(&self) -> Vec<BigRational> {
        self.num[self.ctx.degree()..].iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in &mut self.num {
                *c = &*c / &g;
            }
        }
    }

    fn check_ctx(&self, other: &Scalar) {
        assert!(self.ctx.same(&other.ctx), "scalar field contexts differ");
    }

    /// Reduces a raw product polynomial (any degree) modulo `Phi_N`.
    fn reduce_into(ctx: &FieldCtx, raw: &[BigInt], out: &mut [BigInt]) {
        let deg = ctx.degree();
        let n = ctx.order() as usize;
        for (m, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m < deg {
                out[m] += c;
            } else {
                for (o, z) in out.iter_mut().zip(&ctx.0.zeta_powers[m % n]) {
                    if !z.is_zero() {
                        *o += c * z;
                    }
                }
            }
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = &self.ctx;
        let deg = ctx.degree();
        // x^-1 = (a0 - s a1) / (a0^2 - q a1^2); invert the norm in Q(zeta_N).
        let mut bar = self.clone();
        for c in &mut bar.num[deg..] {
            *c = -&*c;
        }
        let norm = self * &bar;
        debug_assert!(norm.num[deg..].iter().all(Zero::is_zero));
        let norm_inv = cyclotomic_inverse(ctx, &norm.part0())?;
        let mut r = ctx.zero();
        let den = norm_inv.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        for (i, c) in norm_inv.iter().enumerate() {
            r.num[i] = c.numer() * (&den / c.denom());
        }
        r.den = den;
        r.normalize();
        Ok(&r * &bar)
    }

    /// The automorphism `zeta -> zeta^-1`, `s -> s`.
    pub fn conj(&self) -> Scalar {
        let ctx = &self.ctx;
        let deg = ctx.degree();
        let n = ctx.order() as usize;
        let mut out = ctx.zero();
        for half in 0..2 {
            for i in 0..deg {
                let c = &self.num[half * deg + i];
                if c.is_zero() {
                    continue;
                }
                let z = &ctx.0.zeta_powers[(n - i % n) % n];
                for (o, zc) in out.num[half * deg..(half + 1) * deg].iter_mut().zip(z) {
                    *o += c * zc;
                }
            }
        }
        out.den = self.den.clone();
        out.normalize();
        out
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Weight `k` of a Weil number of the form `(root of unity) * s^k`.
    ///
    /// Returns `Some(k)` iff `x * conj(x) = q^k` and `(x * s^-k)^(2N) = 1`.
    pub fn weil_weight(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let ctx = &self.ctx;
        let k = log_q(&(self * &self.conj()).as_rational()?, ctx.q())?;
        let unit = self * &ctx.s_pow(-k);
        unit.pow(2 * ctx.order() as i64).ok()?.is_one().then_some(k)
    }

    fn cmp_coeffs(&self, other: &Scalar) -> Ordering {
        for (a, b) in self.num.iter().zip(&other.num) {
            let o = (a * &other.den).cmp(&(b * &self.den));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

/// `k` with `r = q^k`, if any.
pub fn log_q(r: &BigRational, q: u64) -> Option<i64> {
    if !r.is_positive() {
        return None;
    }
    let q = BigInt::from(q);
    let (mut top, sign) = if r.denom().is_one() {
        (r.numer().clone(), 1)
    } else if r.numer().is_one() {
        (r.denom().clone(), -1)
    } else {
        return None;
    };
    let mut k = 0i64;
    while !top.is_one() {
        let (d, m) = top.div_rem(&q);
        if !m.is_zero() {
            return None;
        }
        top = d;
        k += 1;
    }
    Some(sign * k)
}

/// Inverse of a nonzero element of `Q(zeta_N)` by solving `a * y = 1`.
fn cyclotomic_inverse(ctx: &FieldCtx, a: &[BigRational]) -> Result<Vec<BigRational>> {
    let deg = ctx.degree();
    let n = ctx.order() as usize;
    // column j of the multiplication matrix is a * zeta^j
    let mut m = vec![vec![BigRational::zero(); deg + 1]; deg];
    for j in 0..deg {
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (r, z) in ctx.0.zeta_powers[(i + j) % n].iter().enumerate() {
                if !z.is_zero() {
                    m[r][j] += ai * BigRational::from_integer(z.clone());
                }
            }
        }
    }
    m[0][deg] = BigRational::one();
    for col in 0..deg {
        let piv = (col..deg).find(|&r| !m[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for c in &mut m[col][col..] {
            *c /= &p;
        }
        for r in 0..deg {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=deg {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[deg].clone()).collect())
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.den == other.den && self.num == other.num
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

/// Lexicographic order on the rational coefficients (`1` part, then `s`
/// part). Only used to give canonical keys a total order.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_coeffs(other)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> std::ops::Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check_ctx(rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let mut out = if self.den == rhs.den {
            Scalar {
                ctx: self.ctx.clone(),
                num: self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect(),
                den: self.den.clone(),
            }
        } else {
            Scalar {
                ctx: self.ctx.clone(),
                num: self.num.iter().zip(&rhs.num).map(|(a, b)| a * &rhs.den + b * &self.den).collect(),
                den: &self.den * &rhs.den,
            }
        };
        out.normalize();
        out
    }
}

impl<'a> std::ops::Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { ctx: self.ctx.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl<'a> std::ops::Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.check_ctx(rhs);
        let ctx = &self.ctx;
        if self.is_zero() || rhs.is_zero() {
            return ctx.zero();
        }
        let deg = ctx.degree();
        let q = BigInt::from(ctx.q());
        let (a0, a1) = self.num.split_at(deg);
        let (b0, b1) = rhs.num.split_at(deg);
        let conv = |x: &[BigInt], y: &[BigInt], raw: &mut [BigInt], scale: Option<&BigInt>| {
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if yj.is_zero() {
                        continue;
                    }
                    match scale {
                        Some(s) => raw[i + j] += xi * yj * s,
                        None => raw[i + j] += xi * yj,
                    }
                }
            }
        };
        let mut raw0 = vec![BigInt::zero(); 2 * deg - 1];
        let mut raw1 = vec![BigInt::zero(); 2 * deg - 1];
        conv(a0, b0, &mut raw0, None);
        conv(a1, b1, &mut raw0, Some(&q));
        conv(a0, b1, &mut raw1, None);
        conv(a1, b0, &mut raw1, None);
        let mut out = ctx.zero();
        Scalar::reduce_into(ctx, &raw0, &mut out.num[..deg]);
        Scalar::reduce_into(ctx, &raw1, &mut out.num[deg..]);
        out.den = &self.den * &rhs.den;
        out.normalize();
        out
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Human-readable form, e.g. `1/2 + 3*z - s*z^2` with `z = zeta_N`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.ctx.degree();
        let mut terms: Vec<(BigRational, String)> = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = i % deg;
            let mut mono = String::new();
            if i >= deg {
                mono.push('s');
            }
            if j > 0 {
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push('z');
                if j > 1 {
                    mono.push_str(&format!("^{j}"));
                }
            }
            terms.push((BigRational::new(c.clone(), self.den.clone()), mono));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, mono)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (a.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}
