//! Cross-checks of the crate's exact computations against independent
//! routes: floating-point expansion for the minimal polynomial, a
//! Sylvester/Bareiss resultant for norms, and numeric conjugate products.

mod common;

use num_bigint::BigInt;
use num_traits::Signed;
use rrp_core::RingContext;

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn min_poly_matches_float_expansion() {
    for r in [7u64, 11, 13, 17, 19] {
        let ctx = RingContext::new(r).unwrap();
        let (rounded, err) = common::float_min_poly(r);
        assert!(err < 1e-6, "rounding error {err} too large for r = {r}");
        assert_eq!(
            ctx.min_poly(),
            &rounded[..],
            "exact and float minimal polynomials differ for r = {r}"
        );
    }
}

#[test]
fn norm_matches_sylvester_resultant_on_fixed_elements() {
    let ctx = RingContext::new(7).unwrap();
    // 5 + 2a: the resultant of the minimal polynomial with 2t + 5.
    let e = ctx.element(vec![bi(5), bi(2), bi(0)]);
    let res = common::sylvester_resultant(ctx.min_poly(), &[bi(5), bi(2)]);
    assert_eq!(res, bi(43));
    assert_eq!(e.norm(), res);
}

#[test]
fn norm_matches_sylvester_resultant_on_many_elements() {
    for r in [7u64, 11, 13] {
        let ctx = RingContext::new(r).unwrap();
        let d = ctx.degree();
        // A deterministic spread of small coefficient vectors.
        let mut seed = 0x243f6a8885a308d3u64;
        for _ in 0..40 {
            let coeffs: Vec<BigInt> = (0..d)
                .map(|_| {
                    seed ^= seed << 13;
                    seed ^= seed >> 7;
                    seed ^= seed << 17;
                    bi((seed % 19) as i64 - 9)
                })
                .collect();
            let e = ctx.element(coeffs.clone());
            if e.is_zero() {
                continue;
            }
            let res = common::sylvester_resultant(ctx.min_poly(), &coeffs);
            assert_eq!(e.norm(), res, "norm != resultant for {e} (r = {r})");
        }
    }
}

#[test]
fn alpha_difference_norm_magnitude_is_r() {
    // Each conjugate of alpha_1 - alpha_2 is again a difference of two
    // basis values, and the cyclotomic factorization of such differences
    // forces |norm| = r exactly.
    for r in [7u64, 11, 13, 17, 19] {
        let ctx = RingContext::new(r).unwrap();
        let diff = &ctx.alpha(1).unwrap() - &ctx.alpha(2).unwrap();
        assert_eq!(diff.norm().abs(), BigInt::from(r), "r = {r}");
    }
    // At degree 3 the three conjugate differences are exactly the root
    // differences, so the square of this norm is the discriminant, 49.
    let ctx = RingContext::new(7).unwrap();
    let diff = &ctx.alpha(1).unwrap() - &ctx.alpha(2).unwrap();
    let n = diff.norm();
    assert_eq!(&n * &n, bi(49));
}

#[test]
fn norm_matches_float_conjugate_product() {
    let ctx = RingContext::new(7).unwrap();
    let diff = &ctx.alpha(1).unwrap() - &ctx.alpha(2).unwrap();
    let numeric = common::float_norm(7, diff.coeffs());
    assert!(
        common::close(numeric, -7.0, 1e-9),
        "float conjugate product {numeric} != -7"
    );
    assert_eq!(diff.norm(), bi(-7));

    let e = ctx.element(vec![bi(5), bi(2), bi(0)]);
    let numeric = common::float_norm(7, e.coeffs());
    assert!(common::close(numeric, 43.0, 1e-9));
}

#[test]
fn discriminant_via_resultant_matches_conductor_power() {
    // disc = (-1)^(d(d-1)/2) * Res(psi, psi') for monic psi; these real
    // cyclotomic rings have |disc| = r^((r-3)/2).
    for r in [7u64, 11, 13] {
        let ctx = RingContext::new(r).unwrap();
        let psi = ctx.min_poly();
        let deriv: Vec<BigInt> = psi
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i as u64))
            .collect();
        let res = common::sylvester_resultant(psi, &deriv);
        let expected = BigInt::from(r).pow(((r - 3) / 2) as u32);
        assert_eq!(res.abs(), expected, "discriminant magnitude for r = {r}");
    }
}
