use charsum_core::field::is_prime;
use charsum_core::{
    count_points_brute, two_f_one_quadratic_exact, two_f_one_special_value, two_squares_decomposition,
    validate_model, Character, CurveModel, ExactRational, FieldContext, SpecialArgument,
};
use proptest::prelude::*;

fn primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| p > 2 && is_prime(p)).collect()
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes(3, 2000))
}

/// When `1 - a⁴` is one of the special arguments the Edwards count is
/// `1 + p + p·(closed form)`.
#[test]
fn edwards_counts_at_special_arguments() {
    let mut hits = 0;
    for p in primes(7, 499) {
        let ctx = FieldContext::new(p).unwrap();
        for a in 1..p {
            let model = CurveModel::Edwards { a };
            if validate_model(&model, &ctx).is_err() {
                continue;
            }
            let lambda = ctx.sub(1, ctx.pow(a, 4));
            if SpecialArgument::classify(lambda, p).is_none() {
                continue;
            }
            let closed = two_f_one_special_value(p, lambda).unwrap();
            let n = count_points_brute(&model, &ctx).unwrap().total as i64;
            assert_eq!(
                ExactRational::from_integer(n),
                ExactRational::from_integer(1 + p as i64) + closed * p as i64,
                "p={p} a={a}"
            );
            hits += 1;
        }
    }
    assert!(hits > 100, "{hits}");
}

/// Twisted Edwards counts are those of the Legendre curve `E_{d/a}` twisted by `ϕ(-a)`.
#[test]
fn twisted_counts_follow_legendre_partner() {
    for p in primes(3, 43) {
        let ctx = FieldContext::new(p).unwrap();
        let pi = p as i64;
        for a in 1..p {
            let sign = ctx.quadratic_character(ctx.neg(a)) as i64;
            for d in (1..p).filter(|&d| d != a) {
                let lambda = ctx.mul(ctx.inv(a).unwrap(), d);
                let f = two_f_one_quadratic_exact(&ctx, lambda).unwrap();
                let n = count_points_brute(&CurveModel::TwistedEdwards { a, d }, &ctx).unwrap().total;
                let expected = ExactRational::from_integer(1 + pi) + f * (pi * sign);
                assert_eq!(ExactRational::from_integer(n as i64), expected, "p={p} a={a} d={d}");
                assert_eq!(n % 4, 0, "p={p} a={a} d={d}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn characters_are_multiplicative(p in prime(), k in any::<i64>(), x in 1u64..u64::MAX, y in 1u64..u64::MAX) {
        let ctx = FieldContext::new(p).unwrap();
        let (x, y) = (x % p, y % p);
        let chi = Character::by_index(&ctx, k);
        let n = ctx.group_order();
        prop_assert_eq!(chi.evaluate(ctx.mul(x, y)), chi.evaluate(x).mul(chi.evaluate(y), n));
        prop_assert_eq!(chi.pow(n as i64), Character::trivial(&ctx));
        let conj = chi.conjugate();
        prop_assert!(chi.multiply(&conj).unwrap().is_trivial());
    }

    #[test]
    fn logs_and_roots_invert(p in prime(), x in 1u64..u64::MAX) {
        let ctx = FieldContext::new(p).unwrap();
        let x = x % (p - 1) + 1;
        prop_assert_eq!(ctx.exp(ctx.discrete_log(x).unwrap()), x);
        let sq = ctx.mul(x, x);
        let r = ctx.sqrt(sq).unwrap();
        prop_assert_eq!(ctx.mul(r, r), sq);
        prop_assert!(r <= p - r);
        prop_assert_eq!(ctx.quadratic_character(sq), 1);
        prop_assert_eq!(ctx.mul(ctx.inv(x).unwrap(), x), 1);
    }

    #[test]
    fn two_squares_for_one_mod_four(p in prime().prop_filter("p ≡ 1 mod 4", |p| p % 4 == 1)) {
        let ts = two_squares_decomposition(p).unwrap();
        prop_assert_eq!(ts.x * ts.x + ts.y * ts.y, p);
        prop_assert_eq!(ts.x % 2, 1);
        prop_assert!(ts.signed_trace().unsigned_abs() < 2 * (p as f64).sqrt() as u64 + 1);
    }
}
