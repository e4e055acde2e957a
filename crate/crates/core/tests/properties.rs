//! Randomized invariants over small fields.

use proptest::prelude::*;

use ffhyper::characters::{binomial, legendre, MulChar};
use ffhyper::cyclotomic::{CycInt, CycRat};
use ffhyper::field::FieldCtx;
use ffhyper::greene::{greene_f, HypFParams};
use ffhyper::gseries::{p_g, GParams};
use ffhyper::padic::{gamma_table, ZqRing};

const FIELDS: [(u64, u32); 8] = [
    (3, 1),
    (5, 1),
    (7, 1),
    (11, 1),
    (13, 1),
    (3, 2),
    (5, 2),
    (3, 3),
];

fn field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(FIELDS.to_vec()).prop_map(|(p, r)| FieldCtx::new(p, r).unwrap())
}

prop_compose! {
    fn field_and_pair()(ctx in field())(a in 0..ctx.q() as u32, b in 0..ctx.q() as u32, ctx in Just(ctx))
        -> (FieldCtx, u32, u32) {
        (ctx, a, b)
    }
}

fn elem(ctx: &FieldCtx, i: u32) -> ffhyper::FqElem {
    ctx.elements().nth(i as usize).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((ctx, a, b) in field_and_pair()) {
        let (x, y) = (elem(&ctx, a), elem(&ctx, b));
        prop_assert_eq!(ctx.add(x, y), ctx.add(y, x));
        prop_assert_eq!(ctx.mul(x, y), ctx.mul(y, x));
        prop_assert_eq!(ctx.sub(ctx.add(x, y), y), x);
        if !y.is_zero() {
            prop_assert_eq!(ctx.mul(ctx.div(x, y).unwrap(), y), x);
        }
        prop_assert_eq!(ctx.pow(x, ctx.q()), x);
    }

    #[test]
    fn characters_are_multiplicative((ctx, a, b) in field_and_pair(), m in 0i64..40) {
        let (x, y) = (elem(&ctx, a), elem(&ctx, b));
        let chi = MulChar::new(&ctx, m);
        prop_assert!(chi.eval(&ctx, ctx.mul(x, y)).equals(&chi.eval(&ctx, x).mul(&chi.eval(&ctx, y))));
        prop_assert_eq!(legendre(&ctx, ctx.mul(x, y)), legendre(&ctx, x) * legendre(&ctx, y));
    }

    #[test]
    fn binomial_conjugation(ctx in field(), a in 0i64..40, b in 0i64..40) {
        // {A choose B} = B(-1) {B Ā choose B}
        let (a, b) = (MulChar::new(&ctx, a), MulChar::new(&ctx, b));
        let n = ctx.order() as usize;
        let lhs = binomial(&ctx, a, b);
        let rhs = binomial(&ctx, b.mul(a.conj()), b).mul(&CycRat::from_int(n, b.at_minus_one()));
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn cyclotomic_ring_laws(n in 1usize..30, xs in prop::collection::vec(-5i128..5, 1..30),
                              ys in prop::collection::vec(-5i128..5, 1..30), k in -40i64..40) {
        let x = CycInt::from_coeffs(n, xs.into_iter().take(n).collect());
        let y = CycInt::from_coeffs(n, ys.into_iter().take(n).collect());
        prop_assert!(x.mul(&y).equals(&y.mul(&x)));
        prop_assert!(x.add(&y).sub(&y).equals(&x));
        prop_assert!(x.rotate(k).rotate(-k).equals(&x));
        prop_assert!(x.mul(&CycInt::root(n, k)).equals(&x.rotate(k)));
        prop_assert!(x.conj().conj().equals(&x));
    }

    #[test]
    fn teichmuller_is_multiplicative((ctx, a, b) in field_and_pair(), n in 1u32..5) {
        let (x, y) = (elem(&ctx, a), elem(&ctx, b));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let ring = ZqRing::new(&ctx, n).unwrap();
        let wx = ring.teichmuller(&ctx, x).unwrap();
        let wy = ring.teichmuller(&ctx, y).unwrap();
        prop_assert_eq!(ring.mul(&wx, &wy), ring.teichmuller(&ctx, ctx.mul(x, y)).unwrap());
    }

    #[test]
    fn gamma_reflection(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), m in 0i128..2000) {
        // Γ_p(x) Γ_p(1 - x) = ± 1
        let g = gamma_table(p, 3).unwrap();
        let pn = g.modulus() as i128;
        let prod = (g.at_int(m) as i128 * g.at_int(1 - m) as i128).rem_euclid(pn);
        prop_assert!(prod == 1 || prod == pn - 1);
    }

    #[test]
    fn greene_phi_phi_is_rational((ctx, a, _b) in field_and_pair()) {
        let eps = MulChar::trivial(&ctx);
        let phi = MulChar::new(&ctx, ctx.order() as i64 / 2);
        let params = HypFParams::new(vec![phi, phi], vec![eps]).unwrap();
        prop_assert!(greene_f(&ctx, &params, elem(&ctx, a)).to_rational().is_some());
    }

    #[test]
    fn g_values_lie_in_zp((ctx, a, _b) in field_and_pair()) {
        // rational parameters give values fixed by Frobenius, so in Z_p
        let t = elem(&ctx, a);
        prop_assume!(!t.is_zero());
        let g = p_g(&GParams::quarter(), t, &ctx, 3).unwrap();
        prop_assert!(g.is_diagonal());
    }
}
