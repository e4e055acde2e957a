//! Multiplicative characters of `F_q^×`, Gauss sums, Jacobi sums and Greene's
//! binomial coefficients.
//!
//! Every character is a power `T^m` of the generator character
//! `T(gen) = ζ_{q-1}`, where `gen` is the field's canonical generator. All
//! characters vanish at zero, the trivial one included.

use std::fmt;

use crate::cyclotomic::{CycInt, CycRat, MAX_ORDER};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// Default field-size ceiling for exact Gauss sums.
pub const DEFAULT_GAUSS_MAX_Q: u64 = 32;

/// The character `T^m` on `F_q^×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MulChar {
    m: u32,
    group: u32,
}

impl MulChar {
    pub fn new(ctx: &FieldCtx, m: i64) -> Self {
        let group = ctx.order();
        Self {
            m: m.rem_euclid(group as i64) as u32,
            group,
        }
    }

    pub fn trivial(ctx: &FieldCtx) -> Self {
        Self::new(ctx, 0)
    }

    /// All `q - 1` characters, `T^0, T^1, ...`.
    pub fn all(ctx: &FieldCtx) -> impl Iterator<Item = MulChar> + '_ {
        (0..ctx.order() as i64).map(move |m| MulChar::new(ctx, m))
    }

    pub fn exponent(self) -> u32 {
        self.m
    }

    /// `q - 1`.
    pub fn group_order(self) -> u32 {
        self.group
    }

    pub fn is_trivial(self) -> bool {
        self.m == 0
    }

    pub fn order(self) -> u32 {
        self.group / crate::arith::gcd_u64(self.m as u64, self.group as u64) as u32
    }

    pub fn mul(self, other: MulChar) -> MulChar {
        debug_assert_eq!(self.group, other.group);
        MulChar {
            m: ((self.m as u64 + other.m as u64) % self.group as u64) as u32,
            group: self.group,
        }
    }

    /// The inverse character `χ̄`.
    pub fn conj(self) -> MulChar {
        MulChar {
            m: (self.group - self.m) % self.group,
            group: self.group,
        }
    }

    pub fn pow(self, k: i64) -> MulChar {
        let g = self.group as i64;
        MulChar {
            m: ((self.m as i64 * k.rem_euclid(g)) % g) as u32,
            group: self.group,
        }
    }

    /// Exponent `e` with `χ(x) = ζ_{q-1}^e`, or `None` at `x = 0`.
    #[inline]
    pub fn exp_at(self, ctx: &FieldCtx, x: FqElem) -> Option<u32> {
        ctx.log_opt(x)
            .map(|k| ((k as u64 * self.m as u64) % self.group as u64) as u32)
    }

    /// `χ(x)` as an element of `Z[ζ_{q-1}]`.
    pub fn eval(self, ctx: &FieldCtx, x: FqElem) -> CycInt {
        let n = self.group as usize;
        match self.exp_at(ctx, x) {
            Some(e) => CycInt::root(n, e as i64),
            None => CycInt::zero(n),
        }
    }

    /// `χ(-1) = (-1)^m`.
    pub fn at_minus_one(self) -> i128 {
        if self.m.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Value at a nonzero element when the character is real (`χ^2 = ε`).
    pub fn real_value(self, ctx: &FieldCtx, x: FqElem) -> i128 {
        debug_assert!(self.pow(2).is_trivial(), "character is not real");
        match self.exp_at(ctx, x) {
            None => 0,
            Some(0) => 1,
            Some(_) => -1,
        }
    }
}

impl fmt::Display for MulChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^{}", self.m)
    }
}

/// `δ(A)`: 1 on the trivial character, 0 otherwise.
pub fn delta_char(a: MulChar) -> i128 {
    a.is_trivial() as i128
}

/// `δ(x)`: 1 at zero, 0 otherwise.
pub fn delta_elem(x: FqElem) -> i128 {
    x.is_zero() as i128
}

/// The distinguished characters of a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StdChars {
    pub eps: MulChar,
    pub phi: MulChar,
    pub t: MulChar,
    /// `T^{(q-1)/4}`, present iff `q ≡ 1 (mod 4)`.
    pub chi4: Option<MulChar>,
    /// `T^{(q-1)/3}`, present iff `q ≡ 1 (mod 3)`.
    pub chi3: Option<MulChar>,
}

pub fn std_chars(ctx: &FieldCtx) -> StdChars {
    let n = ctx.order() as i64;
    StdChars {
        eps: MulChar::new(ctx, 0),
        phi: MulChar::new(ctx, n / 2),
        t: MulChar::new(ctx, 1),
        chi4: (n % 4 == 0).then(|| MulChar::new(ctx, n / 4)),
        chi3: (n % 3 == 0).then(|| MulChar::new(ctx, n / 3)),
    }
}

/// `φ(x)` for the quadratic character.
#[inline]
pub fn legendre(ctx: &FieldCtx, x: FqElem) -> i128 {
    match ctx.log_opt(x) {
        None => 0,
        Some(k) if k % 2 == 0 => 1,
        Some(_) => -1,
    }
}

/// Order of the ring holding Gauss sums, `p(q-1)`.
pub fn gauss_order(ctx: &FieldCtx) -> usize {
    ctx.p() as usize * ctx.order() as usize
}

/// `g(χ) = Σ_x χ(x) ζ_p^{tr(x)}` in `Z[ζ_{p(q-1)}]`.
pub fn gauss_sum(ctx: &FieldCtx, chi: MulChar, max_q: u64) -> Result<CycInt> {
    if ctx.q() > max_q {
        return Err(Error::GaussBudget {
            q: ctx.q(),
            max: max_q,
        });
    }
    let n = gauss_order(ctx);
    if n > MAX_ORDER {
        return Err(Error::OrderBudget(n));
    }
    let p = ctx.p() as usize;
    let qm1 = ctx.order() as usize;
    // ζ_{q-1} = ζ_n^p, ζ_p = ζ_n^{q-1}
    let mut g = CycInt::zero(n);
    for x in ctx.units() {
        let e = chi.exp_at(ctx, x).unwrap() as usize;
        let t = ctx.trace(x) as usize;
        g.bump((p * e + qm1 * t) % n, 1);
    }
    Ok(g)
}

/// All Gauss sums `g(T^k)`, `k = 0..q-2`.
#[derive(Debug, Clone)]
pub struct GaussTable {
    sums: Vec<CycInt>,
}

impl GaussTable {
    pub fn new(ctx: &FieldCtx, max_q: u64) -> Result<Self> {
        let sums = MulChar::all(ctx)
            .map(|chi| gauss_sum(ctx, chi, max_q))
            .collect::<Result<_>>()?;
        Ok(Self { sums })
    }

    pub fn get(&self, chi: MulChar) -> &CycInt {
        &self.sums[chi.exponent() as usize]
    }

    /// `1 / g(χ)` as `g(χ̄)·χ(-1)/q` (or `-1` for the trivial character).
    pub fn inverse(&self, chi: MulChar, q: u64) -> CycRat {
        if chi.is_trivial() {
            return CycRat::from_int(self.sums[0].order(), -1);
        }
        CycRat::new(self.get(chi.conj()).scale(chi.at_minus_one()), q as i128)
    }
}

/// `J(A, B) = Σ_x A(x) B(1 - x)` in `Z[ζ_{q-1}]`.
pub fn jacobi_sum(ctx: &FieldCtx, a: MulChar, b: MulChar) -> CycInt {
    let n = ctx.order() as usize;
    let mut j = CycInt::zero(n);
    for x in ctx.units() {
        let y = ctx.sub(FqElem::ONE, x);
        if let (Some(ea), Some(eb)) = (a.exp_at(ctx, x), b.exp_at(ctx, y)) {
            j.bump(ea as usize + eb as usize, 1);
        }
    }
    j
}

/// `q · {A choose B} = B(-1) J(A, B̄)`, an element of `Z[ζ_{q-1}]`.
pub fn binomial_numerator(ctx: &FieldCtx, a: MulChar, b: MulChar) -> CycInt {
    jacobi_sum(ctx, a, b.conj()).scale(b.at_minus_one())
}

/// Greene's binomial coefficient `{A choose B} = B(-1)/q · J(A, B̄)`.
pub fn binomial(ctx: &FieldCtx, a: MulChar, b: MulChar) -> CycRat {
    CycRat::new(binomial_numerator(ctx, a, b), ctx.q() as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, r: u32) -> FieldCtx {
        FieldCtx::new(p, r).unwrap()
    }

    #[test]
    fn char_eval_examples() {
        let f5 = field(5, 1);
        let sc = std_chars(&f5);
        assert_eq!(sc.phi.eval(&f5, f5.from_int(2)).to_integer(), Some(-1));
        assert!(sc.t.eval(&f5, FqElem::ZERO).is_zero());
        assert!(sc.eps.eval(&f5, FqElem::ZERO).is_zero());
        let f7 = field(7, 1);
        assert_eq!(
            MulChar::trivial(&f7).eval(&f7, f7.from_int(3)).to_integer(),
            Some(1)
        );
    }

    #[test]
    fn std_chars_examples() {
        let f5 = field(5, 1);
        assert_eq!(std_chars(&f5).chi4, Some(MulChar::new(&f5, 1)));
        let f7 = field(7, 1);
        let sc = std_chars(&f7);
        assert_eq!(sc.chi4, None);
        assert_eq!(sc.chi3, Some(MulChar::new(&f7, 2)));
        let f9 = field(3, 2);
        assert_eq!(std_chars(&f9).chi4, Some(MulChar::new(&f9, 2)));
        for ctx in [f5, f7, f9, field(13, 1)] {
            let sc = std_chars(&ctx);
            assert_eq!(sc.phi.order(), 2);
            if let Some(c) = sc.chi4 {
                assert_eq!(c.order(), 4);
            }
            if let Some(c) = sc.chi3 {
                assert_eq!(c.order(), 3);
            }
        }
    }

    #[test]
    fn gauss_sum_examples() {
        for (p, r) in [(3, 1), (5, 1), (3, 2)] {
            let ctx = field(p, r);
            let g = gauss_sum(&ctx, MulChar::trivial(&ctx), 32).unwrap();
            assert_eq!(g.to_integer(), Some(-1));
        }
        let f5 = field(5, 1);
        let phi = std_chars(&f5).phi;
        let g = gauss_sum(&f5, phi, 32).unwrap();
        assert_eq!(g.mul(&g).to_integer(), Some(5));
        let f7 = field(7, 1);
        let phi = std_chars(&f7).phi;
        let g = gauss_sum(&f7, phi, 32).unwrap();
        assert_eq!(g.mul(&g).to_integer(), Some(-7));
        let f37 = field(37, 1);
        assert!(matches!(
            gauss_sum(&f37, phi, 32),
            Err(Error::GaussBudget { q: 37, max: 32 })
        ));
    }

    #[test]
    fn jacobi_sum_examples() {
        let f5 = field(5, 1);
        let phi = std_chars(&f5).phi;
        assert_eq!(jacobi_sum(&f5, phi, phi).to_integer(), Some(-1));
        for (p, r) in [(5, 1), (7, 1), (3, 2)] {
            let ctx = field(p, r);
            let eps = MulChar::trivial(&ctx);
            assert_eq!(
                jacobi_sum(&ctx, eps, eps).to_integer(),
                Some(ctx.q() as i128 - 2)
            );
        }
        let f7 = field(7, 1);
        let sc = std_chars(&f7);
        assert_eq!(jacobi_sum(&f7, sc.phi, sc.eps).to_integer(), Some(-1));
    }

    #[test]
    fn binomial_examples() {
        use num_rational::Ratio;
        let f5 = field(5, 1);
        let sc = std_chars(&f5);
        assert_eq!(
            binomial(&f5, sc.phi, sc.eps).to_rational(),
            Some(Ratio::new(-1, 5))
        );
        assert_eq!(
            binomial(&f5, sc.eps, sc.eps).to_rational(),
            Some(Ratio::new(3, 5))
        );
        let f13 = field(13, 1);
        let sc = std_chars(&f13);
        let chi4 = sc.chi4.unwrap();
        let sum = binomial(&f13, chi4, sc.phi).add(&binomial(&f13, chi4.pow(3), sc.phi));
        assert_eq!(sum.to_rational(), Some(Ratio::new(-6, 13)));
    }
}
