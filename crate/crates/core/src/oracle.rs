//! Brute-force character sums used as ground truth. Only field and character
//! primitives are used here.

use num_rational::Ratio;

use crate::characters::{binomial_numerator, legendre, MulChar};
use crate::cyclotomic::{CycInt, CycRat};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// `Σ_y φ(y) φ(1 - 2y + x y^2)`.
pub fn phi_quadratic_sum(ctx: &FieldCtx, x: FqElem) -> i128 {
    let two = ctx.from_int(2);
    ctx.elements()
        .map(|y| {
            let y2 = ctx.mul(y, y);
            let v = ctx.add(ctx.sub(FqElem::ONE, ctx.mul(two, y)), ctx.mul(x, y2));
            legendre(ctx, y) * legendre(ctx, v)
        })
        .sum()
}

/// The binomial products `q^2 {φχ^2 choose χ}{φχ choose χ^k}` for every `χ`,
/// `k ∈ {1, 2}`, tabulated so that sweeps over `x` are `O(q)` each.
#[derive(Debug, Clone)]
pub struct OracleTables {
    q: u64,
    sum_a: Vec<CycInt>,
    sum_b: Vec<CycInt>,
}

impl OracleTables {
    pub fn new(ctx: &FieldCtx) -> Self {
        let phi = MulChar::new(ctx, ctx.order() as i64 / 2);
        let mut sum_a = Vec::new();
        let mut sum_b = Vec::new();
        for chi in MulChar::all(ctx) {
            let c2 = chi.pow(2);
            let first = binomial_numerator(ctx, phi.mul(c2), chi);
            sum_a.push(first.mul(&binomial_numerator(ctx, phi.mul(chi), chi)));
            sum_b.push(first.mul(&binomial_numerator(ctx, phi.mul(chi), c2)));
        }
        Self {
            q: ctx.q(),
            sum_a,
            sum_b,
        }
    }

    fn character_sum(&self, ctx: &FieldCtx, terms: &[CycInt], x: FqElem) -> CycRat {
        let n = ctx.order() as usize;
        let lx = ctx.log_opt(x).expect("nonzero argument") as usize;
        let mut acc = CycInt::zero(n);
        for (j, t) in terms.iter().enumerate() {
            acc.add_rotated(t, j * lx % n, 1);
        }
        CycRat::new(acc, (self.q as i128).pow(2))
    }

    /// `Σ_χ {φχ^2 choose χ}{φχ choose χ} χ(x/4)`.
    pub fn sum_a(&self, ctx: &FieldCtx, x: FqElem) -> Result<CycRat> {
        if x.is_zero() {
            return Err(Error::ZeroArgument("sum_A"));
        }
        let arg = ctx.div(x, ctx.from_int(4))?;
        Ok(self.character_sum(ctx, &self.sum_a, arg))
    }

    /// `Σ_χ {φχ^2 choose χ}{φχ choose χ^2} χ(x - 1)`.
    pub fn sum_b(&self, ctx: &FieldCtx, x: FqElem) -> Result<CycRat> {
        if x == FqElem::ONE {
            return Err(Error::Domain("sum_B requires x != 1".into()));
        }
        Ok(self.character_sum(ctx, &self.sum_b, ctx.sub(x, FqElem::ONE)))
    }

    /// `f(u) = p/(p-1) · sum_A(u)` over a prime field.
    pub fn f_u(&self, ctx: &FieldCtx, u: FqElem) -> Result<CycRat> {
        if ctx.r() != 1 {
            return Err(Error::Domain("f(u) is defined over F_p only".into()));
        }
        let p = ctx.p() as i128;
        Ok(self.sum_a(ctx, u)?.scale(Ratio::new(p, p - 1)))
    }
}

pub fn sum_a(ctx: &FieldCtx, x: FqElem) -> Result<CycRat> {
    OracleTables::new(ctx).sum_a(ctx, x)
}

pub fn sum_b(ctx: &FieldCtx, x: FqElem) -> Result<CycRat> {
    OracleTables::new(ctx).sum_b(ctx, x)
}

pub fn f_u(ctx: &FieldCtx, u: FqElem) -> Result<CycRat> {
    OracleTables::new(ctx).f_u(ctx, u)
}

/// `φ(2x) + q^2 φ(-2)/(q-1) · sum_A(x)`.
pub fn prop1_middle(ctx: &FieldCtx, tables: &OracleTables, x: FqElem) -> Result<CycRat> {
    let n = ctx.order() as usize;
    let q = ctx.q() as i128;
    let s = tables.sum_a(ctx, x)?;
    let phi_m2 = legendre(ctx, ctx.from_int(-2));
    let phi_2x = legendre(ctx, ctx.mul(ctx.from_int(2), x));
    Ok(CycRat::from_int(n, phi_2x).add(&s.scale(Ratio::new(q * q * phi_m2, q - 1))))
}

/// `2φ(x - 1) + q^2/(q-1) · sum_B(x)`.
pub fn prop2_middle(ctx: &FieldCtx, tables: &OracleTables, x: FqElem) -> Result<CycRat> {
    let n = ctx.order() as usize;
    let q = ctx.q() as i128;
    let s = tables.sum_b(ctx, x)?;
    let phi = legendre(ctx, ctx.sub(x, FqElem::ONE));
    Ok(CycRat::from_int(n, 2 * phi).add(&s.scale(Ratio::new(q * q, q - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, r: u32) -> FieldCtx {
        FieldCtx::new(p, r).unwrap()
    }

    #[test]
    fn quadratic_sum_at_one() {
        for (p, r) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (5, 2)] {
            let ctx = field(p, r);
            assert_eq!(phi_quadratic_sum(&ctx, FqElem::ONE), -1, "q = {}", ctx.q());
        }
    }

    #[test]
    fn quadratic_sum_bounds() {
        let f7 = field(7, 1);
        assert!(phi_quadratic_sum(&f7, f7.from_int(3)).abs() <= 9);
        for (p, r) in [(5, 1), (13, 1), (3, 2), (5, 2)] {
            let ctx = field(p, r);
            let q = ctx.q() as f64;
            for x in ctx.units().filter(|&x| x != FqElem::ONE) {
                let v = phi_quadratic_sum(&ctx, x) as f64;
                assert!(v.abs() <= 2.0 * q.sqrt() + 2.0);
            }
        }
    }

    #[test]
    fn middle_expressions_match_direct_sum() {
        for (p, r) in [(3, 1), (5, 1), (7, 1), (3, 2), (13, 1), (5, 2)] {
            let ctx = field(p, r);
            let t = OracleTables::new(&ctx);
            for x in ctx.elements() {
                let v = CycRat::from_int(ctx.order() as usize, phi_quadratic_sum(&ctx, x));
                if !x.is_zero() {
                    let m = prop1_middle(&ctx, &t, x).unwrap();
                    assert!(m.equals(&v), "prop1 q={} x={:?}", ctx.q(), x);
                    assert!(t.sum_a(&ctx, x).unwrap().to_rational().is_some());
                }
                if x != FqElem::ONE {
                    let m = prop2_middle(&ctx, &t, x).unwrap();
                    assert!(m.equals(&v), "prop2 q={} x={:?}", ctx.q(), x);
                    assert!(t.sum_b(&ctx, x).unwrap().to_rational().is_some());
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        let f5 = field(5, 1);
        assert!(sum_a(&f5, FqElem::ZERO).is_err());
        assert!(sum_b(&f5, FqElem::ONE).is_err());
        assert!(f_u(&f5, FqElem::ZERO).is_err());
        assert!(f_u(&field(3, 2), FqElem::ONE).is_err());
    }
}
