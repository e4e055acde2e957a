//! Truncated p-adic arithmetic: `Z/p^N`, the unramified ring `Z_q mod p^N`,
//! the p-adic gamma function and Teichmüller lifts.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, Weak};

use num_rational::Ratio;

use crate::arith::inv_mod;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// Largest `p^N` for which a gamma table is built.
pub const MAX_GAMMA_TABLE: u64 = 1 << 25;

/// `(⟨x⟩, ⌊x⌋)`.
pub fn frac_floor(x: Ratio<i64>) -> (Ratio<i64>, i64) {
    let fl = x.floor().to_integer();
    (x - Ratio::from_integer(fl), fl)
}

/// `p^n`, or a budget error when it does not fit in 32 bits.
pub fn prime_power_modulus(p: u64, n: u32) -> Result<u64> {
    let mut m: u64 = 1;
    for _ in 0..n {
        m = m
            .checked_mul(p)
            .filter(|&m| m < 1 << 32)
            .ok_or(Error::PrecisionBudget { p, n })?;
    }
    Ok(m)
}

/// An element of `Z/p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    n: u32,
    pn: u64,
    v: u64,
}

impl PadicInt {
    pub fn new(p: u64, n: u32, v: i128) -> Result<Self> {
        let pn = prime_power_modulus(p, n)?;
        Ok(Self::with_modulus(p, n, pn, v))
    }

    fn with_modulus(p: u64, n: u32, pn: u64, v: i128) -> Self {
        Self {
            p,
            n,
            pn,
            v: v.rem_euclid(pn as i128) as u64,
        }
    }

    /// Residue of `num/den` with `p ∤ den`.
    pub fn from_ratio(p: u64, n: u32, x: Ratio<i64>) -> Result<Self> {
        let pn = prime_power_modulus(p, n)?;
        Ok(Self::with_modulus(
            p,
            n,
            pn,
            ratio_residue(x, p, pn)? as i128,
        ))
    }

    pub fn residue(self) -> u64 {
        self.v
    }
    pub fn precision(self) -> u32 {
        self.n
    }
    pub fn prime(self) -> u64 {
        self.p
    }
    pub fn modulus(self) -> u64 {
        self.pn
    }
    pub fn is_unit(self) -> bool {
        !self.v.is_multiple_of(self.p)
    }
    /// Representative in `(-p^N/2, p^N/2]`.
    pub fn balanced(self) -> i128 {
        crate::arith::balanced(self.v, self.pn)
    }
    /// `p`-adic valuation, capped at `N`.
    pub fn valuation(self) -> u32 {
        let mut v = self.v;
        if v == 0 {
            return self.n;
        }
        let mut k = 0;
        while v.is_multiple_of(self.p) {
            v /= self.p;
            k += 1;
        }
        k
    }

    fn same(self, o: Self) -> Self {
        assert_eq!((self.p, self.n), (o.p, o.n), "precision mismatch");
        o
    }
    pub fn add(self, o: Self) -> Self {
        let o = self.same(o);
        Self {
            v: (self.v + o.v) % self.pn,
            ..self
        }
    }
    pub fn sub(self, o: Self) -> Self {
        let o = self.same(o);
        Self {
            v: (self.v + self.pn - o.v) % self.pn,
            ..self
        }
    }
    pub fn neg(self) -> Self {
        Self {
            v: (self.pn - self.v) % self.pn,
            ..self
        }
    }
    pub fn mul(self, o: Self) -> Self {
        let o = self.same(o);
        Self {
            v: self.v * o.v % self.pn,
            ..self
        }
    }
    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self {
            v: 1 % self.pn,
            ..self
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }
    pub fn inv(self) -> Result<Self> {
        let v = inv_mod(self.v as i128, self.pn as i128).ok_or(Error::NotAUnit)?;
        Ok(Self {
            v: v as u64,
            ..self
        })
    }
}

/// `num · den^{-1} mod pn`.
fn ratio_residue(x: Ratio<i64>, p: u64, pn: u64) -> Result<u64> {
    let den = *x.denom();
    if den.rem_euclid(p as i64) == 0 {
        return Err(Error::DenominatorDivisibleByP { den, p });
    }
    let inv = inv_mod(den as i128, pn as i128).expect("p does not divide den");
    Ok(((*x.numer() as i128).rem_euclid(pn as i128) * inv % pn as i128) as u64)
}

/// `Γ_p(m) mod p^N` for every `0 ≤ m < p^N`.
#[derive(Debug)]
pub struct GammaTable {
    p: u64,
    n: u32,
    pn: u64,
    values: Vec<u32>,
}

impl GammaTable {
    fn build(p: u64, n: u32) -> Result<Self> {
        let pn = prime_power_modulus(p, n)?;
        if pn > MAX_GAMMA_TABLE {
            return Err(Error::PrecisionBudget { p, n });
        }
        let mut values = Vec::with_capacity(pn as usize);
        let mut g: u64 = 1;
        values.push(1);
        for m in 0..pn - 1 {
            // Γ(m+1) = -m Γ(m) if p ∤ m, else -Γ(m); Γ(0) = 1.
            let f = if m % p == 0 { 1 } else { m };
            g = (pn - g * f % pn) % pn;
            values.push(g as u32);
        }
        Ok(Self { p, n, pn, values })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.n
    }
    pub fn modulus(&self) -> u64 {
        self.pn
    }

    /// `Γ_p(m)` for an integer argument.
    pub fn at_int(&self, m: i128) -> u64 {
        self.values[m.rem_euclid(self.pn as i128) as usize] as u64
    }

    /// `Γ_p(x)` for `x ∈ Q ∩ Z_p`; by continuity only `x mod p^N` matters.
    pub fn at(&self, x: Ratio<i64>) -> Result<u64> {
        let m = ratio_residue(x, self.p, self.pn)?;
        Ok(self.values[m as usize] as u64)
    }
}

type GammaCache = Mutex<HashMap<(u64, u32), Weak<GammaTable>>>;

/// Shared gamma table for `(p, N)`; it lives as long as someone holds it.
pub fn gamma_table(p: u64, n: u32) -> Result<Arc<GammaTable>> {
    static CACHE: OnceLock<GammaCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = map.get(&(p, n)).and_then(Weak::upgrade) {
        return Ok(t);
    }
    let t = Arc::new(GammaTable::build(p, n)?);
    map.retain(|_, w| w.strong_count() > 0);
    map.insert((p, n), Arc::downgrade(&t));
    Ok(t)
}

/// `Γ_p(x) mod p^N`.
pub fn gamma_p(x: Ratio<i64>, p: u64, n: u32) -> Result<PadicInt> {
    let table = gamma_table(p, n)?;
    Ok(PadicInt::with_modulus(p, n, table.pn, table.at(x)? as i128))
}

/// `(Z/p^N)[x] / (f)` where `f` lifts the modulus of `F_q` to integer
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZqRing {
    p: u64,
    r: usize,
    n: u32,
    pn: u64,
    /// Low coefficients of the monic modulus.
    modulus: Vec<u64>,
}

/// Coefficients (low degree first) of an element of a [`ZqRing`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZqElem(Vec<u64>);

impl ZqElem {
    pub fn from_coeffs(c: Vec<u64>) -> Self {
        Self(c)
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

impl ZqRing {
    pub fn new(ctx: &FieldCtx, n: u32) -> Result<Self> {
        let p = ctx.p();
        let pn = prime_power_modulus(p, n)?;
        let r = ctx.r() as usize;
        Ok(Self {
            p,
            r,
            n,
            pn,
            modulus: ctx.modulus()[..r].iter().map(|&c| c as u64).collect(),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.n
    }
    pub fn modulus(&self) -> u64 {
        self.pn
    }
    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn zero(&self) -> ZqElem {
        ZqElem(vec![0; self.r])
    }
    pub fn one(&self) -> ZqElem {
        self.from_int(1)
    }
    pub fn from_int(&self, v: i128) -> ZqElem {
        let mut c = vec![0; self.r];
        c[0] = v.rem_euclid(self.pn as i128) as u64;
        ZqElem(c)
    }
    pub fn from_padic(&self, v: PadicInt) -> ZqElem {
        assert_eq!(v.pn, self.pn, "precision mismatch");
        self.from_int(v.v as i128)
    }
    /// The lift of `t` with coordinates in `[0, p)`.
    pub fn lift(&self, ctx: &FieldCtx, t: FqElem) -> ZqElem {
        ZqElem(ctx.coeffs(t).into_iter().map(|c| c as u64).collect())
    }
    /// Reduction mod `p` back to the residue field.
    pub fn project(&self, ctx: &FieldCtx, a: &ZqElem) -> FqElem {
        let c: Vec<i64> = a.0.iter().map(|&c| (c % self.p) as i64).collect();
        ctx.from_coeffs(&c).expect("degree matches")
    }

    pub fn add(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        ZqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.pn)
                .collect(),
        )
    }
    pub fn sub(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        ZqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + self.pn - y) % self.pn)
                .collect(),
        )
    }
    pub fn neg(&self, a: &ZqElem) -> ZqElem {
        ZqElem(a.0.iter().map(|&x| (self.pn - x) % self.pn).collect())
    }
    pub fn scale(&self, a: &ZqElem, k: u64) -> ZqElem {
        let k = k % self.pn;
        ZqElem(a.0.iter().map(|&x| x * k % self.pn).collect())
    }

    pub fn mul(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        let (r, m) = (self.r, self.pn);
        if r == 1 {
            return ZqElem(vec![a.0[0] * b.0[0] % m]);
        }
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y % m) % m;
            }
        }
        // x^r = -Σ f_i x^i
        for d in (r..2 * r - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &f) in self.modulus.iter().enumerate() {
                let k = d - r + i;
                prod[k] = (prod[k] + m - c * f % m) % m;
            }
        }
        prod.truncate(r);
        ZqElem(prod)
    }

    pub fn pow(&self, a: &ZqElem, mut e: u64) -> ZqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &ZqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
    pub fn is_unit(&self, a: &ZqElem) -> bool {
        a.0.iter().any(|&c| c % self.p != 0)
    }

    /// Inverse by Hensel refinement `y ↦ y(2 - ay)` of the residue-field inverse.
    pub fn inv(&self, ctx: &FieldCtx, a: &ZqElem) -> Result<ZqElem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let y0 = ctx.inv(self.project(ctx, a))?;
        let mut y = self.lift(ctx, y0);
        let two = self.from_int(2);
        let mut correct = 1u32;
        while correct < self.n {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            correct *= 2;
        }
        debug_assert_eq!(self.mul(a, &y), self.one());
        Ok(y)
    }

    /// The constant term when all higher coordinates vanish.
    pub fn to_padic(&self, a: &ZqElem) -> Option<PadicInt> {
        a.0[1..].iter().all(|&c| c == 0).then(|| PadicInt {
            p: self.p,
            n: self.n,
            pn: self.pn,
            v: a.0[0],
        })
    }

    /// The Teichmüller lift `ω(t)`: the `(q-1)`-th root of unity over `t`.
    pub fn teichmuller(&self, ctx: &FieldCtx, t: FqElem) -> Result<ZqElem> {
        if t.is_zero() {
            return Err(Error::ZeroArgument("teichmuller"));
        }
        let mut x = self.lift(ctx, t);
        for _ in 1..self.n {
            x = self.pow(&x, ctx.q());
        }
        Ok(x)
    }

    /// `a mod p^k` for `k ≤ N`, viewed in a ring of precision `k`.
    pub fn truncate(&self, a: &ZqElem, k: u32) -> Result<(ZqRing, ZqElem)> {
        assert!(k <= self.n);
        let pk = prime_power_modulus(self.p, k)?;
        let ring = ZqRing {
            n: k,
            pn: pk,
            modulus: self.modulus.clone(),
            ..*self
        };
        Ok((ring, ZqElem(a.0.iter().map(|&c| c % pk).collect())))
    }

    /// Balanced representative when the element lies in `Z/p^N`.
    pub fn to_integer(&self, a: &ZqElem) -> Option<i128> {
        self.to_padic(a).map(PadicInt::balanced)
    }
}

/// `Γ_p(m) mod pn` from the defining product `(-1)^m Π_{0<j<m, p∤j} j`.
pub fn gamma_by_product(p: u64, pn: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    for j in 1..m {
        if j % p != 0 {
            acc = acc * (j % pn) % pn;
        }
    }
    if m % 2 == 1 {
        (pn - acc) % pn
    } else {
        acc
    }
}
