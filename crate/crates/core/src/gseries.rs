//! McCarthy's p-adic hypergeometric series `_nG_n[a; b | t]_q` and the two
//! p-adic lemmas it leans on.

use num_rational::Ratio;
use std::fmt;

use crate::cyclotomic::CycRat;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::padic::{frac_floor, gamma_table, PadicInt, ZqElem, ZqRing};

/// Upper parameters `a_k` and lower parameters `b_k` of `_nG_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GParams {
    a: Vec<Ratio<i64>>,
    b: Vec<Ratio<i64>>,
}

impl GParams {
    pub fn new(a: Vec<Ratio<i64>>, b: Vec<Ratio<i64>>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::Domain(format!(
                "{} upper and {} lower parameters",
                a.len(),
                b.len()
            )));
        }
        Ok(Self { a, b })
    }

    /// `[1/4, 3/4; 0, 0]`.
    pub fn quarter() -> Self {
        Self {
            a: vec![Ratio::new(1, 4), Ratio::new(3, 4)],
            b: vec![Ratio::from_integer(0); 2],
        }
    }

    /// `[1/2, ..., 1/2; 0, ..., 0]` with `n` entries each.
    pub fn halves(n: usize) -> Self {
        Self {
            a: vec![Ratio::new(1, 2); n],
            b: vec![Ratio::from_integer(0); n],
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }
    pub fn upper(&self) -> &[Ratio<i64>] {
        &self.a
    }
    pub fn lower(&self) -> &[Ratio<i64>] {
        &self.b
    }

    fn check_denominators(&self, p: u64) -> Result<()> {
        for x in self.a.iter().chain(&self.b) {
            if x.denom().rem_euclid(p as i64) == 0 {
                return Err(Error::DenominatorDivisibleByP { den: *x.denom(), p });
            }
        }
        Ok(())
    }
}

impl fmt::Display for GParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[Ratio<i64>]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{}G{}[{}; {}]",
            self.n(),
            self.n(),
            j(&self.a),
            j(&self.b)
        )
    }
}

/// `S / p^shift` where `S` is known modulo `p^{N + shift}`, so the value is
/// known modulo `p^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GValue {
    ring: ZqRing,
    scaled: ZqElem,
    shift: u32,
    n: u32,
}

impl GValue {
    /// Requested precision `N`.
    pub fn precision(&self) -> u32 {
        self.n
    }

    /// True when the value is `0 mod p^N`.
    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.scaled)
    }

    /// `p`-adic valuation, `None` for the zero sentinel.
    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            return None;
        }
        let p = self.ring.prime();
        let v = self
            .scaled
            .coeffs()
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let (mut c, mut k) = (c, 0i32);
                while c % p == 0 {
                    c /= p;
                    k += 1;
                }
                k
            })
            .min()
            .unwrap();
        Some(v - self.shift as i32)
    }

    /// `p^k · value mod p^N`, or `None` when that is not integral.
    pub fn scaled_mod(&self, k: i32) -> Option<(ZqRing, ZqElem)> {
        let p = self.ring.prime();
        let e = k - self.shift as i32;
        let elem = if e >= 0 {
            self.ring.scale(&self.scaled, p.pow(e as u32))
        } else {
            let d = p.pow((-e) as u32);
            if self.scaled.coeffs().iter().any(|&c| c % d != 0) {
                return None;
            }
            let out = self.scaled.coeffs().iter().map(|&c| c / d).collect();
            return self.ring.truncate(&ZqElem::from_coeffs(out), self.n).ok();
        };
        self.ring.truncate(&elem, self.n).ok()
    }

    /// The value mod `p^N` when it is integral.
    pub fn integral(&self) -> Option<(ZqRing, ZqElem)> {
        self.scaled_mod(0)
    }

    /// Balanced integer representative when the value lies in `Z_p`.
    pub fn to_integer(&self) -> Option<i128> {
        let (ring, x) = self.integral()?;
        ring.to_integer(&x)
    }

    /// True when the value lies in `Z_p` (all higher coordinates vanish).
    pub fn is_diagonal(&self) -> bool {
        self.scaled.coeffs()[1..].iter().all(|&c| c == 0)
    }

    pub fn ring(&self) -> &ZqRing {
        &self.ring
    }
    pub fn raw(&self) -> (&ZqElem, u32) {
        (&self.scaled, self.shift)
    }
}

impl fmt::Display for GValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {}^{})", self.ring.prime(), self.n);
        }
        match self.integral() {
            Some((ring, x)) => match ring.to_integer(&x) {
                Some(v) => write!(f, "{v} (mod {}^{})", ring.prime(), self.n),
                None => write!(f, "{:?} (mod {}^{})", x.coeffs(), ring.prime(), self.n),
            },
            None => write!(
                f,
                "{:?}/{}^{} (mod {}^{})",
                self.scaled.coeffs(),
                self.ring.prime(),
                self.shift,
                self.ring.prime(),
                self.n
            ),
        }
    }
}

/// `_nG_n` for fixed parameters over a fixed field: the `t`-independent weight
/// of every summand is computed once.
#[derive(Debug, Clone)]
pub struct GEvaluator {
    params: GParams,
    ring: ZqRing,
    shift: u32,
    n: u32,
    /// `p^shift · (-1)^{an} · (-p)^{e_a} · Γ-quotient_a`, then times `-1/(q-1)`.
    weights: Vec<u64>,
}

impl GEvaluator {
    pub fn new(ctx: &FieldCtx, params: &GParams, n: u32) -> Result<Self> {
        let p = ctx.p();
        params.check_denominators(p)?;
        let q = ctx.q() as i64;
        let qm1 = q - 1;
        let r = ctx.r();
        let nn = params.n();

        // Exponents of -p per summand.
        let mut exps = Vec::with_capacity(qm1 as usize);
        for a in 0..qm1 {
            let mut e: i64 = 0;
            let mut pi = 1i64;
            for _ in 0..r {
                let s = Ratio::new(a * pi, qm1);
                for (ak, bk) in params.a.iter().zip(&params.b) {
                    let u = frac_floor(ak * pi).0;
                    let v = frac_floor(-bk * pi).0;
                    let ek = -(u - s).floor().to_integer() - (v + s).floor().to_integer();
                    assert!((-1..=1).contains(&ek), "exponent {ek} out of range");
                    if *bk.numer() == 0 {
                        assert!((0..=1).contains(&ek), "exponent {ek} with b = 0");
                    }
                    e += ek;
                }
                pi *= p as i64;
            }
            exps.push(e);
        }
        let shift = (-exps.iter().copied().min().unwrap_or(0)).max(0) as u32;
        debug_assert!(shift as usize <= nn * r as usize);
        let ring = ZqRing::new(ctx, n + shift)?;
        let gamma = gamma_table(p, n + shift)?;
        let pn = ring.modulus();

        // Denominators Γ(⟨a_k p^i⟩) Γ(⟨-b_k p^i⟩) do not depend on a.
        let mut den: u64 = 1;
        let mut pi = 1i64;
        for _ in 0..r {
            for (ak, bk) in params.a.iter().zip(&params.b) {
                den = den * gamma.at(frac_floor(ak * pi).0)? % pn;
                den = den * gamma.at(frac_floor(-bk * pi).0)? % pn;
            }
            pi *= p as i64;
        }
        let den_inv = PadicInt::new(p, n + shift, den as i128)?.inv()?;
        // -1/(q-1)
        let pref = PadicInt::new(p, n + shift, -1)?
            .mul(PadicInt::new(p, n + shift, qm1 as i128)?.inv()?)
            .mul(den_inv)
            .residue();

        let mut weights = Vec::with_capacity(qm1 as usize);
        for a in 0..qm1 {
            let mut w: u64 = 1;
            let mut pi = 1i64;
            for _ in 0..r {
                let s = Ratio::new(a * pi, qm1);
                for (ak, bk) in params.a.iter().zip(&params.b) {
                    w = w * gamma.at(frac_floor(ak * pi - s).0)? % pn;
                    w = w * gamma.at(frac_floor(-bk * pi + s).0)? % pn;
                }
                pi *= p as i64;
            }
            let e = exps[a as usize];
            let pw = e + shift as i64;
            // (-p)^e · p^shift = (-1)^e p^{e + shift}
            let negative = (e.rem_euclid(2) == 1) ^ (a * nn as i64 % 2 == 1);
            let mut mag = 1u64;
            for _ in 0..pw {
                mag = mag * p % pn;
            }
            w = w * mag % pn * pref % pn;
            if negative {
                w = (pn - w) % pn;
            }
            weights.push(w);
        }
        Ok(Self {
            params: params.clone(),
            ring,
            shift,
            n,
            weights,
        })
    }

    pub fn params(&self) -> &GParams {
        &self.params
    }
    pub fn precision(&self) -> u32 {
        self.n
    }

    /// `_nG_n[...| t]_q`.
    pub fn eval(&self, ctx: &FieldCtx, t: FqElem) -> Result<GValue> {
        if t.is_zero() {
            return Err(Error::ZeroArgument("t"));
        }
        let ring = &self.ring;
        // ω̄^a(t) = ω(t^{-1})^a
        let w = ring.teichmuller(ctx, ctx.inv(t)?)?;
        let mut pw = ring.one();
        let mut acc = ring.zero();
        for &c in &self.weights {
            if c != 0 {
                acc = ring.add(&acc, &ring.scale(&pw, c));
            }
            pw = ring.mul(&pw, &w);
        }
        Ok(GValue {
            ring: ring.clone(),
            scaled: acc,
            shift: self.shift,
            n: self.n,
        })
    }
}

/// One-shot `_nG_n[params | t]_q` at precision `n`.
pub fn p_g(params: &GParams, t: FqElem, ctx: &FieldCtx, n: u32) -> Result<GValue> {
    GEvaluator::new(ctx, params, n)?.eval(ctx, t)
}

/// Default precision: the least `N ≥ 3` with `p^N ≥ 40 q^2`.
pub fn default_precision(ctx: &FieldCtx) -> u32 {
    let bound = 40u128 * (ctx.q() as u128).pow(2);
    let p = ctx.p() as u128;
    let (mut n, mut pn) = (0u32, 1u128);
    while pn < bound {
        pn *= p;
        n += 1;
    }
    n.max(3)
}

/// Image of a cyclotomic value under `ζ_{q-1} ↦ ω(g)`, `g` the field generator.
/// The value must live in `Q(ζ_{q-1})` with denominator prime to `p`.
pub fn embed(ctx: &FieldCtx, ring: &ZqRing, x: &CycRat) -> Result<ZqElem> {
    let m = ctx.order() as usize;
    let num = x.numer();
    if num.order() != m {
        return Err(Error::Domain(format!(
            "value of order {} is not in Q(zeta_{m})",
            num.order()
        )));
    }
    let den = x.denom();
    let p = ctx.p() as i128;
    if den % p == 0 {
        return Err(Error::DenominatorDivisibleByP {
            den: den as i64,
            p: p as u64,
        });
    }
    let z = ring.teichmuller(ctx, ctx.generator())?;
    let mut acc = ring.zero();
    let mut zk = ring.one();
    for &c in num.coeffs() {
        if c != 0 {
            acc = ring.add(&acc, &ring.mul(&ring.from_int(c), &zk));
        }
        zk = ring.mul(&zk, &z);
    }
    let inv = PadicInt::new(ring.prime(), ring.precision(), den)?.inv()?;
    Ok(ring.mul(&acc, &ring.from_padic(inv)))
}

/// Both sides of `ω(t^{-ta}) Π_i [Γ_p(⟨-t p^i a/(q-1)⟩) Π_{h=1}^{t-1} Γ_p(⟨h p^i/t⟩)]
/// = Π_i Π_{h=0}^{t-1} Γ_p(⟨p^i (1+h)/t - p^i a/(q-1)⟩)` in `Z_q mod p^N`.
pub fn gamma_product_sides(ctx: &FieldCtx, t: u64, a: u64, n: u32) -> Result<(ZqElem, ZqElem)> {
    let p = ctx.p();
    if t.is_multiple_of(p) {
        return Err(Error::Domain(format!("p = {p} divides t = {t}")));
    }
    if t == 0 || a >= ctx.q() - 1 {
        return Err(Error::Domain(format!("t = {t}, a = {a} out of range")));
    }
    let ring = ZqRing::new(ctx, n)?;
    let gamma = gamma_table(p, n)?;
    let qm1 = ctx.order() as i64;
    let (ti, ai) = (t as i64, a as i64);
    // t^{-ta} in F_q, then its Teichmüller lift
    let tf = ctx.from_int(ti);
    let e = (ti * ai) as u64 % (ctx.order() as u64);
    let arg = ctx.inv(ctx.pow(tf, e))?;
    let mut lhs = ring.teichmuller(ctx, arg)?;
    let mut rhs = ring.one();
    let pn = ring.modulus();
    let mut lhs_g: u64 = 1;
    let mut rhs_g: u64 = 1;
    let mut pi = 1i64;
    for _ in 0..ctx.r() {
        lhs_g = lhs_g * gamma.at(frac_floor(Ratio::new(-ti * pi * ai, qm1)).0)? % pn;
        for h in 1..ti {
            lhs_g = lhs_g * gamma.at(frac_floor(Ratio::new(h * pi, ti)).0)? % pn;
        }
        for h in 0..ti {
            let x = Ratio::new(pi * (1 + h), ti) - Ratio::new(pi * ai, qm1);
            rhs_g = rhs_g * gamma.at(frac_floor(x).0)? % pn;
        }
        pi *= p as i64;
    }
    lhs = ring.scale(&lhs, lhs_g);
    rhs = ring.scale(&rhs, rhs_g);
    Ok((lhs, rhs))
}

/// Lemma on gamma products, evaluated exactly mod `p^N`.
pub fn gamma_product_identity_check(ctx: &FieldCtx, t: u64, a: u64, n: u32) -> Result<bool> {
    let (l, r) = gamma_product_sides(ctx, t, a, n)?;
    Ok(l == r)
}

/// Both sides of the floor identity
/// `-⌊-4ap^i/(q-1)⌋ + ⌊-2ap^i/(q-1)⌋ = -⌊⟨p^i/4⟩ - ap^i/(q-1)⌋ - ⌊⟨3p^i/4⟩ - ap^i/(q-1)⌋`.
pub fn floor_identity_sides(p: u64, r: u32, a: u64, i: u32) -> (i64, i64) {
    let q = (p as i64).pow(r);
    let pi = (p as i64).pow(i);
    let s = Ratio::new(a as i64 * pi, q - 1);
    let four = Ratio::from_integer(4);
    let two = Ratio::from_integer(2);
    let lhs = -(-four * s).floor().to_integer() + (-two * s).floor().to_integer();
    let u = frac_floor(Ratio::new(pi, 4)).0;
    let v = frac_floor(Ratio::new(3 * pi, 4)).0;
    let rhs = -(u - s).floor().to_integer() - (v - s).floor().to_integer();
    (lhs, rhs)
}

pub fn floor_identity_check(p: u64, r: u32, a: u64, i: u32) -> bool {
    let (l, r) = floor_identity_sides(p, r, a, i);
    l == r
}
