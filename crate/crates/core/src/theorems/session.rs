use std::sync::{Arc, OnceLock};

use crate::characters::{std_chars, GaussTable, MulChar, StdChars, DEFAULT_GAUSS_MAX_Q};
use crate::cyclotomic::CycRat;
use crate::error::Result;
use crate::field::{FieldCtx, FqElem};
use crate::greene::{FStarTable, GreeneTable, HypFParams};
use crate::gseries::{default_precision, embed, GEvaluator, GParams, GValue};
use crate::oracle::OracleTables;
use crate::padic::{gamma_table, GammaTable, ZqElem, ZqRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionOptions {
    /// Precision override; the default policy is used when `None`.
    pub precision: Option<u32>,
    pub gauss_max_q: u64,
}

impl Default for SessionOptions {
    fn default() -> Self {
        Self {
            precision: None,
            gauss_max_q: DEFAULT_GAUSS_MAX_Q,
        }
    }
}

/// Everything the checks need over one field, built lazily and shared.
pub struct Session {
    pub ctx: FieldCtx,
    pub chars: StdChars,
    n: u32,
    opts: SessionOptions,
    ring: ZqRing,
    gamma: OnceLock<Result<Arc<GammaTable>>>,
    g_quarter: OnceLock<Result<GEvaluator>>,
    g_half2: OnceLock<Result<GEvaluator>>,
    g_half3: OnceLock<Result<GEvaluator>>,
    f_phi: OnceLock<GreeneTable>,
    f_chi4: OnceLock<[Option<GreeneTable>; 2]>,
    f_phi3: OnceLock<GreeneTable>,
    oracle: OnceLock<OracleTables>,
    gauss: OnceLock<Option<GaussTable>>,
}

/// Which of `T^{(q-1)/4}`, `T^{3(q-1)/4}` plays the role of `χ_4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chi4Choice {
    First,
    Third,
}

impl Chi4Choice {
    pub const BOTH: [Chi4Choice; 2] = [Chi4Choice::First, Chi4Choice::Third];

    pub fn label(self) -> &'static str {
        match self {
            Chi4Choice::First => "chi4",
            Chi4Choice::Third => "chi4^3",
        }
    }
}

impl Session {
    pub fn new(p: u64, r: u32, opts: SessionOptions) -> Result<Self> {
        let ctx = FieldCtx::new(p, r)?;
        let n = opts.precision.unwrap_or_else(|| default_precision(&ctx));
        let ring = ZqRing::new(&ctx, n)?;
        Ok(Self {
            chars: std_chars(&ctx),
            ctx,
            n,
            opts,
            ring,
            gamma: OnceLock::new(),
            g_quarter: OnceLock::new(),
            g_half2: OnceLock::new(),
            g_half3: OnceLock::new(),
            f_phi: OnceLock::new(),
            f_chi4: OnceLock::new(),
            f_phi3: OnceLock::new(),
            oracle: OnceLock::new(),
            gauss: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }
    pub fn r(&self) -> u32 {
        self.ctx.r()
    }
    pub fn q(&self) -> u64 {
        self.ctx.q()
    }
    pub fn precision(&self) -> u32 {
        self.n
    }
    pub fn ring(&self) -> &ZqRing {
        &self.ring
    }
    pub fn options(&self) -> SessionOptions {
        self.opts
    }

    fn evaluator<'a>(
        &self,
        slot: &'a OnceLock<Result<GEvaluator>>,
        params: fn() -> GParams,
    ) -> Result<&'a GEvaluator> {
        slot.get_or_init(|| {
            // Hold the table while the evaluator is built; later evaluators
            // over the same (p, N) reuse it.
            let _table = self
                .gamma
                .get_or_init(|| gamma_table(self.p(), self.n))
                .clone()?;
            GEvaluator::new(&self.ctx, &params(), self.n)
        })
        .as_ref()
        .map_err(Clone::clone)
    }

    /// `_2G_2[1/4, 3/4; 0, 0 | t]`.
    pub fn g_quarter(&self, t: FqElem) -> Result<GValue> {
        self.evaluator(&self.g_quarter, GParams::quarter)?
            .eval(&self.ctx, t)
    }
    /// `_2G_2[1/2, 1/2; 0, 0 | t]`.
    pub fn g_half2(&self, t: FqElem) -> Result<GValue> {
        self.evaluator(&self.g_half2, || GParams::halves(2))?
            .eval(&self.ctx, t)
    }
    /// `_3G_3[1/2, 1/2, 1/2; 0, 0, 0 | t]`.
    pub fn g_half3(&self, t: FqElem) -> Result<GValue> {
        self.evaluator(&self.g_half3, || GParams::halves(3))?
            .eval(&self.ctx, t)
    }

    pub fn chi4(&self, c: Chi4Choice) -> Option<MulChar> {
        self.chars.chi4.map(|x| match c {
            Chi4Choice::First => x,
            Chi4Choice::Third => x.pow(3),
        })
    }

    pub fn phi_phi_params(&self) -> HypFParams {
        let sc = &self.chars;
        HypFParams::new(vec![sc.phi, sc.phi], vec![sc.eps]).expect("shape")
    }

    pub fn chi4_params(&self, c: Chi4Choice) -> Option<HypFParams> {
        let x = self.chi4(c)?;
        Some(HypFParams::new(vec![x, x.pow(3)], vec![self.chars.eps]).expect("shape"))
    }

    pub fn phi3_params(&self) -> HypFParams {
        let sc = &self.chars;
        HypFParams::new(vec![sc.phi; 3], vec![sc.eps; 2]).expect("shape")
    }

    /// `_2F_1(φ, φ; ε | x)`.
    pub fn f_phi(&self, x: FqElem) -> CycRat {
        self.f_phi
            .get_or_init(|| GreeneTable::new(&self.ctx, &self.phi_phi_params()))
            .eval(&self.ctx, x)
    }

    /// `_2F_1(χ_4, χ_4^3; ε | x)`, `None` when `q ≢ 1 mod 4`.
    pub fn f_chi4(&self, c: Chi4Choice, x: FqElem) -> Option<CycRat> {
        let tables = self.f_chi4.get_or_init(|| {
            Chi4Choice::BOTH.map(|c| {
                self.chi4_params(c)
                    .map(|params| GreeneTable::new(&self.ctx, &params))
            })
        });
        let idx = (c == Chi4Choice::Third) as usize;
        tables[idx].as_ref().map(|t| t.eval(&self.ctx, x))
    }

    /// `_3F_2(φ, φ, φ; ε, ε | x)`.
    pub fn f_phi3(&self, x: FqElem) -> CycRat {
        self.f_phi3
            .get_or_init(|| GreeneTable::new(&self.ctx, &self.phi3_params()))
            .eval(&self.ctx, x)
    }

    pub fn oracle(&self) -> &OracleTables {
        self.oracle.get_or_init(|| OracleTables::new(&self.ctx))
    }

    /// Gauss sums, when `q` is within the budget.
    pub fn gauss(&self) -> Option<&GaussTable> {
        self.gauss
            .get_or_init(|| GaussTable::new(&self.ctx, self.opts.gauss_max_q).ok())
            .as_ref()
    }

    /// McCarthy's `F*` for the given parameters, when Gauss sums are available.
    pub fn f_star(&self, params: &HypFParams, x: FqElem) -> Option<CycRat> {
        let g = self.gauss()?;
        Some(FStarTable::new(&self.ctx, params, g).eval(&self.ctx, x))
    }

    /// Image of a value of `Q(ζ_{q-1})` in `Z_q mod p^N`.
    pub fn embed(&self, x: &CycRat) -> Result<ZqElem> {
        embed(&self.ctx, &self.ring, x)
    }

    /// `φ(x)` as an integer in `{-1, 0, 1}`.
    pub fn phi(&self, x: FqElem) -> i128 {
        crate::characters::legendre(&self.ctx, x)
    }

    pub fn int(&self, v: i64) -> FqElem {
        self.ctx.from_int(v)
    }
}
