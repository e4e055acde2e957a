//! Greene's `_{n+1}F_n` finite field hypergeometric functions and McCarthy's
//! normalized variant `F*`.

use num_rational::Ratio;

use crate::characters::{binomial_numerator, gauss_order, GaussTable, MulChar};
use crate::cyclotomic::{CycInt, CycRat};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// Parameters `A_0, ..., A_n` over `B_1, ..., B_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypFParams {
    upper: Vec<MulChar>,
    lower: Vec<MulChar>,
}

impl HypFParams {
    pub fn new(upper: Vec<MulChar>, lower: Vec<MulChar>) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::Domain(format!(
                "{} upper and {} lower parameters",
                upper.len(),
                lower.len()
            )));
        }
        Ok(Self { upper, lower })
    }

    pub fn upper(&self) -> &[MulChar] {
        &self.upper
    }
    pub fn lower(&self) -> &[MulChar] {
        &self.lower
    }
    /// The `n` in `_{n+1}F_n`.
    pub fn depth(&self) -> usize {
        self.lower.len()
    }

    /// Lower parameters with the implicit `B_0 = ε` in front.
    fn lower_with_eps(&self) -> impl Iterator<Item = MulChar> + '_ {
        let eps = self.upper[0].pow(0);
        std::iter::once(eps).chain(self.lower.iter().copied())
    }
}

/// Greene's function with the per-character coefficients tabulated once, so
/// each evaluation is a rotate-and-add over `q - 1` terms.
#[derive(Debug, Clone)]
pub struct GreeneTable {
    q: u64,
    depth: usize,
    /// `coeffs[j] = Π_i q·{A_i T^j choose B_i T^j}`.
    coeffs: Vec<CycInt>,
}

impl GreeneTable {
    pub fn new(ctx: &FieldCtx, params: &HypFParams) -> Self {
        let coeffs = MulChar::all(ctx)
            .map(|chi| {
                params
                    .upper
                    .iter()
                    .zip(params.lower_with_eps())
                    .map(|(&a, b)| binomial_numerator(ctx, a.mul(chi), b.mul(chi)))
                    .reduce(|acc, b| acc.mul(&b))
                    .expect("at least one upper parameter")
            })
            .collect();
        Self {
            q: ctx.q(),
            depth: params.depth(),
            coeffs,
        }
    }

    /// `F(x) = q/(q-1) Σ_χ Π {A_iχ choose B_iχ} χ(x)`.
    pub fn eval(&self, ctx: &FieldCtx, x: FqElem) -> CycRat {
        let n = ctx.order() as usize;
        let Some(lx) = ctx.log_opt(x) else {
            return CycRat::zero(n);
        };
        let mut acc = CycInt::zero(n);
        for (j, c) in self.coeffs.iter().enumerate() {
            acc.add_rotated(c, (j * lx as usize) % n, 1);
        }
        let den = (self.q as i128 - 1) * (self.q as i128).pow(self.depth as u32);
        CycRat::new(acc, den)
    }
}

/// Greene's `_{n+1}F_n(A; B | x)` over `F_q`.
pub fn greene_f(ctx: &FieldCtx, params: &HypFParams, x: FqElem) -> CycRat {
    GreeneTable::new(ctx, params).eval(ctx, x)
}

/// McCarthy's `F*`, evaluated from the Gauss-sum quotient formula with
/// `1/g(A) = A(-1) g(Ā)/q`.
#[derive(Debug, Clone)]
pub struct FStarTable {
    q: u64,
    p: u64,
    constant: CycRat,
    terms: Vec<CycInt>,
}

impl FStarTable {
    pub fn new(ctx: &FieldCtx, params: &HypFParams, gauss: &GaussTable) -> Self {
        let q = ctx.q();
        let ng = gauss_order(ctx);
        let mut constant = CycRat::from_int(ng, 1);
        for &a in &params.upper {
            constant = constant.mul(&gauss.inverse(a, q));
        }
        for &b in &params.lower {
            constant = constant.mul(&gauss.inverse(b.conj(), q));
        }
        let sign_power = params.upper.len() as i64;
        let terms = MulChar::all(ctx)
            .map(|chi| {
                let mut t = gauss.get(chi.conj()).clone();
                for &a in &params.upper {
                    t = t.mul(gauss.get(a.mul(chi)));
                }
                for &b in &params.lower {
                    t = t.mul(gauss.get(b.mul(chi).conj()));
                }
                t.scale(chi.pow(sign_power).at_minus_one())
            })
            .collect();
        Self {
            q,
            p: ctx.p(),
            constant,
            terms,
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FqElem) -> CycRat {
        let ng = self.constant.order();
        let Some(lx) = ctx.log_opt(x) else {
            return CycRat::zero(ng);
        };
        let mut acc = CycInt::zero(ng);
        for (j, t) in self.terms.iter().enumerate() {
            // χ(x) = ζ_{q-1}^{j·log x} = ζ_{p(q-1)}^{p·j·log x}
            acc.add_rotated(t, (self.p as usize * j * lx as usize) % ng, 1);
        }
        CycRat::new(acc, 1)
            .mul(&self.constant)
            .scale(Ratio::new(1, self.q as i128 - 1))
    }
}

pub fn mccarthy_f_star(
    ctx: &FieldCtx,
    params: &HypFParams,
    x: FqElem,
    max_q: u64,
) -> Result<CycRat> {
    let gauss = GaussTable::new(ctx, max_q)?;
    Ok(FStarTable::new(ctx, params, &gauss).eval(ctx, x))
}

/// `Π_{i ≥ 1} {A_i choose B_i}`, the factor relating `F*` to `F`.
pub fn lower_binomial_product(ctx: &FieldCtx, params: &HypFParams) -> CycRat {
    let n = ctx.order() as usize;
    params.upper[1..]
        .iter()
        .zip(&params.lower)
        .fold(CycRat::from_int(n, 1), |acc, (&a, &b)| {
            acc.mul(&CycRat::new(binomial_numerator(ctx, a, b), ctx.q() as i128))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{binomial, std_chars, DEFAULT_GAUSS_MAX_Q};

    fn field(p: u64, r: u32) -> FieldCtx {
        FieldCtx::new(p, r).unwrap()
    }

    fn phi_phi(ctx: &FieldCtx) -> HypFParams {
        let sc = std_chars(ctx);
        HypFParams::new(vec![sc.phi, sc.phi], vec![sc.eps]).unwrap()
    }

    #[test]
    fn params_shape() {
        let f5 = field(5, 1);
        let sc = std_chars(&f5);
        assert!(HypFParams::new(vec![sc.phi], vec![sc.eps]).is_err());
        assert_eq!(phi_phi(&f5).depth(), 1);
    }

    #[test]
    fn greene_examples() {
        let f7 = field(7, 1);
        assert!(greene_f(&f7, &phi_phi(&f7), f7.from_int(2)).is_zero());
        let f13 = field(13, 1);
        let v = greene_f(&f13, &phi_phi(&f13), f13.from_int(2));
        assert_eq!(v.to_rational(), Some(Ratio::new(-6, 13)));
        assert!(greene_f(&f13, &phi_phi(&f13), FqElem::ZERO).is_zero());
    }

    /// Direct double sum for `2F1(A, B; C | x)`.
    fn greene_2f1_direct(ctx: &FieldCtx, a: MulChar, b: MulChar, c: MulChar, x: FqElem) -> CycRat {
        let n = ctx.order() as usize;
        let mut acc = CycRat::zero(n);
        for chi in MulChar::all(ctx) {
            let term = binomial(ctx, a.mul(chi), chi)
                .mul(&binomial(ctx, b.mul(chi), c.mul(chi)))
                .mul(&CycRat::new(chi.eval(ctx, x), 1));
            acc = acc.add(&term);
        }
        acc.scale(Ratio::new(ctx.q() as i128, ctx.q() as i128 - 1))
    }

    #[test]
    fn table_matches_definition() {
        let f9 = field(3, 2);
        let chars: Vec<_> = MulChar::all(&f9).step_by(3).collect();
        for &a in &chars {
            for &b in &chars {
                let params = HypFParams::new(vec![a, b], vec![chars[1]]).unwrap();
                let t = GreeneTable::new(&f9, &params);
                for x in f9.elements() {
                    let d = greene_2f1_direct(&f9, a, b, chars[1], x);
                    assert!(t.eval(&f9, x).equals(&d));
                }
            }
        }
    }

    #[test]
    fn greene_phi_phi_is_rational() {
        for (p, r) in [(5, 1), (7, 1), (3, 2), (13, 1)] {
            let ctx = field(p, r);
            let t = GreeneTable::new(&ctx, &phi_phi(&ctx));
            assert!(ctx
                .elements()
                .all(|x| t.eval(&ctx, x).to_rational().is_some()));
        }
    }

    #[test]
    fn f_star_relation() {
        for (p, r) in [(5, 1), (3, 2), (13, 1), (17, 1), (5, 2)] {
            let ctx = field(p, r);
            let gauss = GaussTable::new(&ctx, DEFAULT_GAUSS_MAX_Q).unwrap();
            let ng = gauss_order(&ctx);
            let chars: Vec<_> = MulChar::all(&ctx).collect();
            for &a0 in chars.iter().filter(|c| !c.is_trivial()) {
                for &a1 in chars.iter().step_by(2) {
                    for &b1 in chars.iter().filter(|&&b| b != a1).step_by(3) {
                        let params = HypFParams::new(vec![a0, a1], vec![b1]).unwrap();
                        let fs = FStarTable::new(&ctx, &params, &gauss);
                        let g = GreeneTable::new(&ctx, &params);
                        let k = lower_binomial_product(&ctx, &params);
                        for x in ctx.units() {
                            let lhs = fs.eval(&ctx, x).mul(&k.promote(ng).unwrap());
                            let rhs = g.eval(&ctx, x).promote(ng).unwrap();
                            assert!(lhs.equals(&rhs), "q={} {a0} {a1} {b1}", ctx.q());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_star_example() {
        let f5 = field(5, 1);
        let sc = std_chars(&f5);
        let chi4 = sc.chi4.unwrap();
        let params = HypFParams::new(vec![chi4, chi4.pow(3)], vec![sc.eps]).unwrap();
        let x = f5.from_int(2);
        let fs = mccarthy_f_star(&f5, &params, x, DEFAULT_GAUSS_MAX_Q).unwrap();
        let f = greene_f(&f5, &params, x).scale_int(-5);
        assert!(fs.equals(&f));
        assert!(mccarthy_f_star(&f5, &params, FqElem::ZERO, 32)
            .unwrap()
            .is_zero());
        assert!(mccarthy_f_star(&field(37, 1), &params, x, 32).is_err());
    }
}
