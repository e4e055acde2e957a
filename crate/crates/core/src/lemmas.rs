//! Exhaustive checks of the Gauss-sum, Jacobi-sum, binomial and p-adic lemmas
//! over a single field. Each returns the number of instances checked and a
//! description of every failing instance.

use num_rational::Ratio;

use crate::characters::{
    binomial, binomial_numerator, delta_char, gauss_order, jacobi_sum, GaussTable, MulChar,
};
use crate::cyclotomic::{CycInt, CycRat};
use crate::error::Result;
use crate::field::{FieldCtx, FqElem};
use crate::gseries::{floor_identity_sides, gamma_product_sides};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl LemmaOutcome {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: LemmaOutcome) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `g(T^k) g(T^{-k}) = q T^k(-1)` for `T^k ≠ ε`.
pub fn gauss_reflection(ctx: &FieldCtx, gauss: &GaussTable) -> LemmaOutcome {
    let mut out = LemmaOutcome::default();
    let n = gauss_order(ctx);
    for chi in MulChar::all(ctx).filter(|c| !c.is_trivial()) {
        let lhs = gauss.get(chi).mul(gauss.get(chi.conj()));
        let rhs = CycInt::from_int(n, ctx.q() as i128 * chi.at_minus_one());
        out.record(lhs.equals(&rhs), || format!("q={} chi={chi}", ctx.q()));
    }
    out
}

/// `J(A,B) g(AB) = g(A) g(B) + (q-1) B(-1) δ(AB) g(AB)`, the cross-multiplied
/// form of the Jacobi/Gauss quotient relation.
pub fn jacobi_gauss(ctx: &FieldCtx, gauss: &GaussTable) -> LemmaOutcome {
    let mut out = LemmaOutcome::default();
    let n = gauss_order(ctx);
    let q = ctx.q() as i128;
    for a in MulChar::all(ctx) {
        for b in MulChar::all(ctx) {
            let ab = a.mul(b);
            let j = jacobi_sum(ctx, a, b).promote(n).expect("divides");
            let lhs = j.mul(gauss.get(ab));
            let mut rhs = gauss.get(a).mul(gauss.get(b));
            if delta_char(ab) == 1 {
                rhs = rhs.add(&gauss.get(ab).scale((q - 1) * b.at_minus_one()));
            }
            out.record(lhs.equals(&rhs), || format!("q={} A={a} B={b}", ctx.q()));
        }
    }
    out
}

/// `{A choose B} = {A choose A B̄}`.
pub fn binomial_symmetry(ctx: &FieldCtx) -> LemmaOutcome {
    let mut out = LemmaOutcome::default();
    for a in MulChar::all(ctx) {
        for b in MulChar::all(ctx) {
            let ok = binomial(ctx, a, b).equals(&binomial(ctx, a, a.mul(b.conj())));
            out.record(ok, || format!("q={} A={a} B={b}", ctx.q()));
        }
    }
    out
}

/// `{A choose ε} = {A choose A} = -1/q + (q-1)/q δ(A)`.
pub fn binomial_trivial(ctx: &FieldCtx) -> LemmaOutcome {
    let mut out = LemmaOutcome::default();
    let n = ctx.order() as usize;
    let q = ctx.q() as i128;
    let eps = MulChar::trivial(ctx);
    for a in MulChar::all(ctx) {
        let expected = CycRat::from_ratio(n, Ratio::new(-1 + (q - 1) * delta_char(a), q));
        let ok = binomial(ctx, a, eps).equals(&expected) && binomial(ctx, a, a).equals(&expected);
        out.record(ok, || format!("q={} A={a}", ctx.q()));
    }
    out
}

/// `Σ_χ c_χ χ(x)` for coefficients indexed by the exponent of `χ`.
fn char_series(ctx: &FieldCtx, coeffs: &[CycInt], x: FqElem) -> CycInt {
    let n = ctx.order() as usize;
    let mut acc = CycInt::zero(n);
    if let Some(lx) = ctx.log_opt(x) {
        for (j, c) in coeffs.iter().enumerate() {
            acc.add_rotated(c, j * lx as usize % n, 1);
        }
    }
    acc
}

/// Both binomial-theorem analogues over every `A` and every `x`, checked as
/// `(q-1)(Ā(1-x) - δ(x)) = Σ_χ q{Aχ choose χ} χ(x)` and
/// `(q-1)(A(1+x) - δ(x)) = Σ_χ q{A choose χ} χ(x)`.
pub fn binomial_theorems(ctx: &FieldCtx) -> LemmaOutcome {
    let mut out = LemmaOutcome::default();
    let n = ctx.order() as usize;
    let q1 = ctx.order() as i128;
    for a in MulChar::all(ctx) {
        let first: Vec<CycInt> = MulChar::all(ctx)
            .map(|chi| binomial_numerator(ctx, a.mul(chi), chi))
            .collect();
        let second: Vec<CycInt> = MulChar::all(ctx)
            .map(|chi| binomial_numerator(ctx, a, chi))
            .collect();
        for x in ctx.elements() {
            let dx = CycInt::from_int(n, crate::characters::delta_elem(x));
            let l1 = a
                .conj()
                .eval(ctx, ctx.sub(FqElem::ONE, x))
                .sub(&dx)
                .scale(q1);
            out.record(l1.equals(&char_series(ctx, &first, x)), || {
                format!("conj form q={} A={a} x={}", ctx.q(), ctx.format(x))
            });
            let l2 = a.eval(ctx, ctx.add(FqElem::ONE, x)).sub(&dx).scale(q1);
            out.record(l2.equals(&char_series(ctx, &second, x)), || {
                format!("plus form q={} A={a} x={}", ctx.q(), ctx.format(x))
            });
        }
    }
    out
}

/// `Π_{χ^m=ε} g(χψ) = -g(ψ^m) ψ(m^{-m}) Π_{χ^m=ε} g(χ)` for every `ψ`.
/// Skipped (zero instances) unless `q ≡ 1 mod m`.
pub fn davenport_hasse(ctx: &FieldCtx, gauss: &GaussTable, m: u32) -> LemmaOutcome {
    let mut out = LemmaOutcome::default();
    let qm1 = ctx.order();
    if !qm1.is_multiple_of(m) || ctx.p().is_multiple_of(m as u64) {
        return out;
    }
    let n = gauss_order(ctx);
    let roots: Vec<MulChar> = (0..m)
        .map(|k| MulChar::new(ctx, (k * (qm1 / m)) as i64))
        .collect();
    let base = roots
        .iter()
        .fold(CycInt::one(n), |acc, &chi| acc.mul(gauss.get(chi)));
    let mm = ctx.from_int(m as i64);
    let arg = ctx.inv(ctx.pow(mm, m as u64)).expect("p does not divide m");
    for psi in MulChar::all(ctx) {
        let lhs = roots
            .iter()
            .fold(CycInt::one(n), |acc, &chi| acc.mul(gauss.get(chi.mul(psi))));
        let psi_val = psi.eval(ctx, arg).promote(n).expect("divides");
        let rhs = gauss.get(psi.pow(m as i64)).mul(&psi_val).mul(&base).neg();
        out.record(lhs.equals(&rhs), || {
            format!("q={} m={m} psi={psi}", ctx.q())
        });
    }
    out
}

/// The floor identity for every `a ∈ [0, q-2]` and `i ∈ [0, r-1]`.
pub fn floor_identity(p: u64, r: u32) -> LemmaOutcome {
    let mut out = LemmaOutcome::default();
    let q = p.pow(r);
    for a in 0..q - 1 {
        for i in 0..r {
            let (l, rr) = floor_identity_sides(p, r, a, i);
            out.record(l == rr, || format!("q={q} a={a} i={i}: {l} vs {rr}"));
        }
    }
    out
}

/// The gamma-product lemma for every `a ∈ [0, q-2]` at one `t`.
pub fn gamma_product(ctx: &FieldCtx, t: u64, n: u32) -> Result<LemmaOutcome> {
    let mut out = LemmaOutcome::default();
    if t.is_multiple_of(ctx.p()) {
        return Ok(out);
    }
    for a in 0..ctx.q() - 1 {
        let (l, r) = gamma_product_sides(ctx, t, a, n)?;
        out.record(l == r, || format!("q={} t={t} a={a}", ctx.q()));
    }
    Ok(out)
}

/// `χ(xy) = χ(x)χ(y)` and `Σ_x χ(x) = (q-1)δ(χ)` for every character.
pub fn character_orthogonality(ctx: &FieldCtx) -> LemmaOutcome {
    let mut out = LemmaOutcome::default();
    let n = ctx.order() as usize;
    for chi in MulChar::all(ctx) {
        let mut s = CycInt::zero(n);
        for x in ctx.elements() {
            s = s.add(&chi.eval(ctx, x));
        }
        let expected = CycInt::from_int(n, ctx.order() as i128 * delta_char(chi));
        out.record(s.equals(&expected), || {
            format!("q={} sum chi={chi}", ctx.q())
        });
        let g = ctx.generator();
        for y in ctx.units().step_by(1 + ctx.q() as usize / 16) {
            let lhs = chi.eval(ctx, ctx.mul(g, y));
            let rhs = chi.eval(ctx, g).mul(&chi.eval(ctx, y));
            out.record(lhs.equals(&rhs), || format!("q={} mult chi={chi}", ctx.q()));
        }
    }
    out
}
