//! Finite fields `F_q`, `q = p^r` with `p` odd, backed by full exponent and
//! logarithm tables.
//!
//! Elements are stored as their index `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`
//! in the power basis of the field modulus. The modulus and the generator are
//! chosen deterministically (smallest index first), so every table, character
//! index and report is reproducible across runs.

use std::fmt;

use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An odd prime power `q = p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u32,
    r: u32,
    q: u32,
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let too_large = Error::FieldTooLarge {
            p,
            r,
            max: MAX_FIELD_ORDER,
        };
        let q = p.checked_pow(r).ok_or(too_large.clone())?;
        if q > MAX_FIELD_ORDER {
            return Err(too_large);
        }
        Ok(Self {
            p: p as u32,
            r,
            q: q as u32,
        })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn q(&self) -> u64 {
        self.q as u64
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.r)
        }
    }
}

/// An element of `F_q`, identified by its base-`p` coefficient index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0
    }
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Two-squares decomposition `p = x^2 + y^2` with `x` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoSquares {
    pub x: i64,
    pub y: i64,
    pub p: u64,
}

/// Canonical decomposition of a prime `p ≡ 1 (mod 4)` with `x, y > 0`, `x` odd.
pub fn two_squares(p: u64) -> Result<TwoSquares> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::NotOneModFour { p });
    }
    let mut x = 1i64;
    while (x * x) as u64 <= p {
        let rest = p as i64 - x * x;
        let y = (rest as f64).sqrt().round() as i64;
        for cand in [y - 1, y, y + 1] {
            if cand > 0 && cand * cand == rest {
                return Ok(TwoSquares { x, y: cand, p });
            }
        }
        x += 2;
    }
    unreachable!("Fermat: every prime 1 mod 4 is a sum of two squares")
}

/// A concrete finite field with generator and discrete-log tables.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    pp: PrimePower,
    /// Monic modulus, low degree first, length `r + 1`.
    modulus: Vec<u32>,
    gen: FqElem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.pp == other.pp && self.modulus == other.modulus
    }
}

impl FieldCtx {
    /// Builds `F_{p^r}` with the smallest monic irreducible modulus and the
    /// smallest generator of the multiplicative group.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        let pp = PrimePower::new(p, r)?;
        let modulus = smallest_irreducible(pp.p, r);
        let poly = PolyRing {
            p: pp.p as u64,
            modulus: modulus.iter().map(|&c| c as u64).collect(),
        };
        let q = pp.q as u64;
        let order = q - 1;
        let divisors = prime_divisors(order);
        let gen_index = (1..q as u32)
            .find(|&g| {
                let g = poly.unpack(g);
                divisors
                    .iter()
                    .all(|&d| !poly.is_one(&poly.pow(&g, order / d)))
            })
            .expect("F_q^x is cyclic");
        let gen = poly.unpack(gen_index);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = poly.unpack(1);
        for k in 0..order as u32 {
            let idx = poly.pack(&cur);
            exp.push(idx);
            log[idx as usize] = k;
            cur = poly.mul(&cur, &gen);
        }
        Ok(Self {
            pp,
            modulus,
            gen: FqElem(gen_index),
            exp,
            log,
        })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }
    pub fn p(&self) -> u64 {
        self.pp.p()
    }
    pub fn r(&self) -> u32 {
        self.pp.r()
    }
    pub fn q(&self) -> u64 {
        self.pp.q()
    }
    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u32 {
        self.pp.q - 1
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> FqElem {
        self.gen
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.pp.q).map(FqElem)
    }
    pub fn units(&self) -> impl Iterator<Item = FqElem> {
        (1..self.pp.q).map(FqElem)
    }

    /// Element with the given power-basis coordinates (reduced mod `p`).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FqElem> {
        if coeffs.len() > self.r() as usize {
            return Err(Error::Domain(format!(
                "{} coordinates given for a degree-{} field",
                coeffs.len(),
                self.r()
            )));
        }
        let p = self.pp.p as i64;
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * self.pp.p + c.rem_euclid(p) as u32;
        }
        Ok(FqElem(idx))
    }

    pub fn coeffs(&self, x: FqElem) -> Vec<u32> {
        let mut idx = x.0;
        (0..self.r())
            .map(|_| {
                let c = idx % self.pp.p;
                idx /= self.pp.p;
                c
            })
            .collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FqElem {
        FqElem(v.rem_euclid(self.pp.p as i64) as u32)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.pp.p;
        if self.pp.r == 1 {
            return FqElem((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let p = self.pp.p;
        if self.pp.r == 1 {
            return FqElem((p - a.0) % p);
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let n = self.order() as u64;
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
        FqElem(self.exp[k as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::ZeroArgument("inverse"));
        }
        let n = self.order();
        let k = (n - self.log[a.0 as usize]) % n;
        Ok(FqElem(self.exp[k as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with the exponent reduced modulo the group order.
    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        let n = self.order() as u64;
        let k = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        FqElem(self.exp[k as usize])
    }

    /// `gen^k`.
    pub fn exp(&self, k: i64) -> FqElem {
        let n = self.order() as i64;
        FqElem(self.exp[k.rem_euclid(n) as usize])
    }

    /// Discrete logarithm to the base of the field generator, in `[0, q-2]`.
    pub fn discrete_log(&self, x: FqElem) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::ZeroArgument("discrete logarithm"));
        }
        Ok(self.log[x.0 as usize])
    }

    /// Table lookup without the zero check; `None` for zero.
    #[inline]
    pub fn log_opt(&self, x: FqElem) -> Option<u32> {
        match self.log[x.0 as usize] {
            u32::MAX => None,
            k => Some(k),
        }
    }

    pub fn is_square(&self, a: FqElem) -> bool {
        self.log_opt(a).is_none_or(|k| k % 2 == 0)
    }

    /// Square roots of `a`: `{s, -s}` for a nonzero square, `{0}` for zero,
    /// `None` for a non-square.
    pub fn sqrt(&self, a: FqElem) -> Option<Vec<FqElem>> {
        match self.log_opt(a) {
            None => Some(vec![FqElem::ZERO]),
            Some(k) if k % 2 == 0 => {
                let s = FqElem(self.exp[(k / 2) as usize]);
                let mut roots = vec![s, self.neg(s)];
                roots.sort();
                Some(roots)
            }
            Some(_) => None,
        }
    }

    /// Absolute trace to the prime field, `a + a^p + ... + a^{p^{r-1}}`.
    pub fn trace(&self, a: FqElem) -> u32 {
        let mut acc = FqElem::ZERO;
        let mut cur = a;
        for _ in 0..self.r() {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p());
        }
        debug_assert!(acc.0 < self.pp.p, "trace left the prime field");
        acc.0
    }

    pub fn format(&self, x: FqElem) -> String {
        if self.r() == 1 {
            x.0.to_string()
        } else {
            let c: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
            format!("({})", c.join(","))
        }
    }

    pub fn format_modulus(&self) -> String {
        let mut terms = Vec::new();
        for (deg, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match deg {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{deg}"),
            };
            terms.push(match (c, deg) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Polynomial arithmetic over `F_p` modulo a monic polynomial; used only while
/// tables are being built.
struct PolyRing {
    p: u64,
    modulus: Vec<u64>,
}

impl PolyRing {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn unpack(&self, mut idx: u32) -> Vec<u64> {
        (0..self.degree())
            .map(|_| {
                let c = idx as u64 % self.p;
                idx /= self.p as u32;
                c
            })
            .collect()
    }

    fn pack(&self, a: &[u64]) -> u32 {
        a.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as u32
    }

    fn is_one(&self, a: &[u64]) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = self.degree();
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for top in (r..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..r {
                let sub = c * self.modulus[j] % self.p;
                let slot = &mut prod[top - r + j];
                *slot = (*slot + self.p - sub) % self.p;
            }
            prod[top] = 0;
        }
        prod.truncate(r);
        prod
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.unpack(1);
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Remainder of `f` modulo the monic `g` over `F_p`.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut f = f.to_vec();
    let dg = g.len() - 1;
    while f.len() > dg {
        let c = *f.last().unwrap();
        let shift = f.len() - 1 - dg;
        if c != 0 {
            for (j, &gj) in g.iter().enumerate() {
                let slot = &mut f[shift + j];
                *slot = (*slot + p - c * gj % p) % p;
            }
        }
        f.pop();
    }
    f
}

/// Smallest (by coefficient index) monic irreducible polynomial of degree `r`
/// over `F_p`, found by trial division by every monic polynomial of degree at
/// most `r / 2`.
fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let p64 = p as u64;
    let monic = |idx: u64, deg: u32| -> Vec<u64> {
        let mut v: Vec<u64> = (0..deg).map(|i| idx / p64.pow(i) % p64).collect();
        v.push(1);
        v
    };
    let count = p64.pow(r);
    for idx in 0..count {
        let f = monic(idx, r);
        let irreducible = (1..=r / 2).all(|d| {
            (0..p64.pow(d)).all(|gi| {
                let g = monic(gi, d);
                poly_rem(&f, &g, p64).iter().any(|&c| c != 0)
            })
        });
        if irreducible {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.generator(), FqElem(2));
        let f9 = FieldCtx::new(3, 2).unwrap();
        // x^2 + 1
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.format_modulus(), "x^2 + 1");
        assert_eq!(FieldCtx::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldCtx::new(2, 3).unwrap_err(), Error::EvenPrime);
        assert!(matches!(
            FieldCtx::new(3, 13),
            Err(Error::FieldTooLarge { .. })
        ));
        assert_eq!(FieldCtx::new(3, 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn smallest_generators_match_brute_force() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let brute = (2..p)
                .find(|&g| (1..p - 1).all(|k| crate::arith::pow_mod(g, k, p) != 1))
                .unwrap();
            assert_eq!(ctx.generator().index() as u64, brute, "p = {p}");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.inv(FqElem(2)).unwrap(), FqElem(3));
        assert_eq!(f5.inv(FqElem::ZERO), Err(Error::ZeroArgument("inverse")));
        let f9 = FieldCtx::new(3, 2).unwrap();
        let alpha = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(alpha, alpha), f9.from_int(-1));
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.pow(FqElem(3), 6), FqElem::ONE);
    }

    #[test]
    fn discrete_log_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.discrete_log(FqElem(4)).unwrap(), 2);
        assert_eq!(f5.discrete_log(FqElem(1)).unwrap(), 0);
        assert!(f5.discrete_log(FqElem::ZERO).is_err());
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.generator(), FqElem(3));
        assert_eq!(f7.discrete_log(FqElem(6)).unwrap(), 3);
    }

    #[test]
    fn sqrt_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.sqrt(FqElem(2)), Some(vec![FqElem(3), FqElem(4)]));
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.sqrt(FqElem(2)), None);
        assert_eq!(f5.sqrt(FqElem::ZERO), Some(vec![FqElem::ZERO]));
    }

    #[test]
    fn trace_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.trace(FqElem(5)), 5);
        let f9 = FieldCtx::new(3, 2).unwrap();
        let alpha = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.trace(alpha), 0);
        assert_eq!(f9.trace(FqElem::ONE), 2);
    }

    #[test]
    fn two_squares_examples() {
        assert_eq!(two_squares(5).unwrap(), TwoSquares { x: 1, y: 2, p: 5 });
        assert_eq!(two_squares(13).unwrap(), TwoSquares { x: 3, y: 2, p: 13 });
        assert_eq!(two_squares(7), Err(Error::NotOneModFour { p: 7 }));
    }

    #[test]
    fn field_axioms_in_f27() {
        let ctx = FieldCtx::new(3, 3).unwrap();
        for a in ctx.elements() {
            assert_eq!(ctx.add(a, ctx.neg(a)), FqElem::ZERO);
            for b in ctx.elements().step_by(5) {
                for c in ctx.elements().step_by(7) {
                    let lhs = ctx.mul(a, ctx.add(b, c));
                    let rhs = ctx.add(ctx.mul(a, b), ctx.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
