//! The factorization x^r + y^r = (x+y) * prod_{1<=j<=d} f_j over O_K with
//! f_j = x^2 + y^2 + alpha_j*x*y, its beta-valuation profile, and the
//! decomposition of each factor ideal into a p-th power part, a part
//! carried by the coefficient D, and a beta power.
//!
//! Sign convention: the plus sign in f_j is forced by
//! (x + zeta^j y)(x + zeta^(-j) y) = x^2 + alpha_j*xy + y^2 and is validated
//! by the exact product-identity check. With alpha_0 = 2 the same formula
//! gives f_0 = (x+y)^2, which is what the profile stores at index 0; the
//! ideal decomposition of the index-0 slot applies to (x+y) to the first
//! power.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::ideal::{beta_ideal, factor_rational_prime, IdealHnf};
use crate::ring::{RingContext, RingElement};

/// Shared validation: p must be a prime >= 5 different from r.
pub(crate) fn validate_exponent(r: u64, p: u64) -> Result<()> {
    if p < 5 || p == r || !arith::is_prime_u64(p) {
        return Err(Error::InvalidExponent { p, r });
    }
    Ok(())
}

fn validate_pair(x: &BigInt, y: &BigInt) -> Result<()> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::BothZero);
    }
    let g = x.gcd(y);
    if !g.is_one() {
        return Err(Error::NotCoprime {
            gcd: g.to_string(),
        });
    }
    Ok(())
}

/// Validate the coefficient D: nonzero, coprime to r and p-power-free.
/// Requires factoring |D|, so it is subject to the desk-scale caps.
pub(crate) fn validate_coefficient(r: u64, p: u64, d_coeff: &BigInt) -> Result<()> {
    if d_coeff.is_zero() {
        return Err(Error::InvalidCoefficient {
            reason: "D must be nonzero".into(),
        });
    }
    if (d_coeff % BigInt::from(r)).is_zero() {
        return Err(Error::InvalidCoefficient {
            reason: format!("gcd(D, {r}) != 1"),
        });
    }
    for (q, ex) in arith::factor_bigint(d_coeff)? {
        if u64::from(ex) >= p {
            return Err(Error::InvalidCoefficient {
                reason: format!("D contains the p-th power {q}^{p}"),
            });
        }
    }
    Ok(())
}

/// A validated instance (r, x, y, p, D, z) of x^r + y^r = D*z^p.
#[derive(Clone, Debug)]
pub struct SolutionContext {
    ctx: Arc<RingContext>,
    x: BigInt,
    y: BigInt,
    p: u64,
    d_coeff: BigInt,
    z: BigInt,
    is_trivial: bool,
    r_divides_z: bool,
}

impl SolutionContext {
    pub fn new(
        ctx: &Arc<RingContext>,
        x: BigInt,
        y: BigInt,
        p: u64,
        d_coeff: BigInt,
        z: BigInt,
    ) -> Result<Self> {
        validate_pair(&x, &y)?;
        validate_exponent(ctx.r(), p)?;
        validate_coefficient(ctx.r(), p, &d_coeff)?;
        let value = power_sum(ctx.r(), &x, &y);
        let zp = num_traits::pow::pow(z.clone(), p as usize);
        if &d_coeff * &zp != value {
            return Err(Error::NotASolution);
        }
        let is_trivial = (&x * &y * &z).abs() <= BigInt::one();
        let r_divides_z = !z.is_zero() && (&z % BigInt::from(ctx.r())).is_zero();
        Ok(SolutionContext {
            ctx: Arc::clone(ctx),
            x,
            y,
            p,
            d_coeff,
            z,
            is_trivial,
            r_divides_z,
        })
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }
    pub fn x(&self) -> &BigInt {
        &self.x
    }
    pub fn y(&self) -> &BigInt {
        &self.y
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn d_coeff(&self) -> &BigInt {
        &self.d_coeff
    }
    pub fn z(&self) -> &BigInt {
        &self.z
    }
    pub fn is_trivial(&self) -> bool {
        self.is_trivial
    }
    pub fn r_divides_z(&self) -> bool {
        self.r_divides_z
    }
    pub fn value(&self) -> BigInt {
        power_sum(self.ctx.r(), &self.x, &self.y)
    }
}

/// x^r + y^r as a rational integer.
pub fn power_sum(r: u64, x: &BigInt, y: &BigInt) -> BigInt {
    num_traits::pow::pow(x.clone(), r as usize) + num_traits::pow::pow(y.clone(), r as usize)
}

/// The factor list of x^r + y^r together with its beta-valuation profile.
///
/// `factors[0]` is f_0 = (x+y)^2; `factors[j]` is f_j for j >= 1. The
/// valuation at index 0 is `None` exactly when x + y = 0 (the zero element
/// has no valuation). `e` is the common valuation of the f_j, j >= 1, and
/// `e0` is the r-adic valuation of x + y.
#[derive(Clone, Debug)]
pub struct FactorProfile {
    ctx: Arc<RingContext>,
    x: BigInt,
    y: BigInt,
    x_plus_y: BigInt,
    factors: Vec<RingElement>,
    beta_vals: Vec<Option<u64>>,
    e: u64,
    e0: Option<u64>,
}

/// Build the factor profile of x^r + y^r for coprime (x, y).
pub fn build_factors(ctx: &Arc<RingContext>, x: &BigInt, y: &BigInt) -> Result<FactorProfile> {
    validate_pair(x, y)?;
    let d = ctx.degree();
    let s = x * x + y * y;
    let pr = x * y;
    let mut factors = Vec::with_capacity(d + 1);
    let mut beta_vals = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let f = &ctx.integer(s.clone()) + &ctx.alpha(j)?.scale(&pr);
        beta_vals.push(f.beta_valuation().ok());
        factors.push(f);
    }
    let e = beta_vals[1].expect("f_j is nonzero for j >= 1 since (x, y) != (0, 0)");
    let x_plus_y = x + y;
    let e0 = if x_plus_y.is_zero() {
        None
    } else {
        Some(arith::valuation(&x_plus_y, ctx.r()))
    };
    Ok(FactorProfile {
        ctx: Arc::clone(ctx),
        x: x.clone(),
        y: y.clone(),
        x_plus_y,
        factors,
        beta_vals,
        e,
        e0,
    })
}

impl FactorProfile {
    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }
    pub fn x(&self) -> &BigInt {
        &self.x
    }
    pub fn y(&self) -> &BigInt {
        &self.y
    }
    pub fn x_plus_y(&self) -> &BigInt {
        &self.x_plus_y
    }

    /// All stored factors; index 0 is (x+y)^2.
    pub fn factors(&self) -> &[RingElement] {
        &self.factors
    }

    pub fn factor(&self, j: usize) -> &RingElement {
        &self.factors[j]
    }

    pub fn beta_valuations(&self) -> &[Option<u64>] {
        &self.beta_vals
    }

    /// Common beta-valuation of the f_j, j >= 1; 0 or 1.
    pub fn e(&self) -> u64 {
        self.e
    }

    /// v_r(x + y); `None` when x + y = 0.
    pub fn e0(&self) -> Option<u64> {
        self.e0
    }

    /// v_beta(x + y) = degree * e0.
    pub fn beta_valuation_x_plus_y(&self) -> Option<u64> {
        self.e0.map(|v| v * self.ctx.degree() as u64)
    }

    pub fn value(&self) -> BigInt {
        power_sum(self.ctx.r(), &self.x, &self.y)
    }

    /// Exact check of (x+y) * prod_{j>=1} f_j = x^r + y^r in the ring.
    pub fn product_identity_holds(&self) -> bool {
        let mut acc = self.ctx.one();
        for f in &self.factors[1..] {
            acc = &acc * f;
        }
        acc.scale(&self.x_plus_y) == self.ctx.integer(self.value())
    }

    /// Checks that the multiset {v_beta(f_j) : j >= 1} is the constant e,
    /// that e <= 1, and that e = 1 exactly when r | x + y.
    pub fn beta_profile_consistent(&self) -> bool {
        let divisible =
            self.x_plus_y.is_zero() || (&self.x_plus_y % BigInt::from(self.ctx.r())).is_zero();
        self.e <= 1
            && (self.e == 1) == divisible
            && self.beta_vals[1..].iter().all(|v| *v == Some(self.e))
    }
}

/// One row of the pairwise-coprimality report: the ideal gcd of (f_i) and
/// (f_j) and whether its norm is a power of r.
#[derive(Clone, Debug)]
pub struct CoprimalityPair {
    pub i: usize,
    pub j: usize,
    pub gcd_norm: BigInt,
    pub power_of_r: bool,
}

/// Ideal gcds of all pairs of factors. Pairs involving a zero factor
/// (f_0 when x + y = 0) are skipped.
pub fn verify_pairwise_coprimality(profile: &FactorProfile) -> Result<Vec<CoprimalityPair>> {
    let d = profile.ctx.degree();
    let mut ideals: Vec<Option<IdealHnf>> = Vec::with_capacity(d + 1);
    for f in profile.factors() {
        ideals.push(if f.is_zero() {
            None
        } else {
            Some(IdealHnf::principal(f)?)
        });
    }
    let r = profile.ctx.r();
    let mut out = Vec::new();
    for i in 0..=d {
        for j in (i + 1)..=d {
            let (Some(a), Some(b)) = (&ideals[i], &ideals[j]) else {
                continue;
            };
            let gcd = a.sum(b)?;
            let gcd_norm = gcd.norm();
            let power_of_r = arith::is_power_of(&gcd_norm, r);
            out.push(CoprimalityPair {
                i,
                j,
                gcd_norm,
                power_of_r,
            });
        }
    }
    Ok(out)
}

/// The decomposition of one factor: target = i_part^p * d_part * beta^beta_exponent,
/// where target is (x+y) for index 0 and f_j otherwise.
#[derive(Clone, Debug)]
pub struct DecomposedFactor {
    pub index: usize,
    pub i_part: IdealHnf,
    pub d_part: IdealHnf,
    pub beta_exponent: u64,
}

/// Full ideal decomposition of the factor list against a coefficient D and
/// exponent p.
#[derive(Clone, Debug)]
pub struct FactorDecomposition {
    parts: Vec<DecomposedFactor>,
    e: u64,
    e0: u64,
}

impl FactorDecomposition {
    pub fn parts(&self) -> &[DecomposedFactor] {
        &self.parts
    }

    /// Common beta-exponent of the f_j, j >= 1.
    pub fn e(&self) -> u64 {
        self.e
    }

    /// Exponent of (r) in (x + y), the r-side normalization.
    pub fn e0(&self) -> u64 {
        self.e0
    }

    /// Beta-side exponent of x + y: e0 * degree.
    pub fn e0_beta_side(&self, ctx: &RingContext) -> u64 {
        self.e0 * ctx.degree() as u64
    }
}

/// Outcome of re-multiplying a decomposition back together.
#[derive(Clone, Copy, Debug)]
pub struct DecompositionChecks {
    pub reconstruction_ok: bool,
    pub i_parts_pairwise_coprime: bool,
    pub i_parts_prime_to_beta: bool,
    pub d_product_matches: bool,
}

impl DecompositionChecks {
    pub fn all_ok(&self) -> bool {
        self.reconstruction_ok
            && self.i_parts_pairwise_coprime
            && self.i_parts_prime_to_beta
            && self.d_product_matches
    }
}

/// Decompose every factor ideal as I_j^p * D_j * beta^e (and (x+y) as
/// I_0^p * D_0 * (r)^e0). A residual exponent not divisible by p, or a
/// prime of D that no factor absorbs, yields a structured
/// `DecompositionObstruction`: it means the input was not a solution
/// context, not that the computation failed.
pub fn decompose_factors(
    profile: &FactorProfile,
    d_coeff: &BigInt,
    p: u64,
) -> Result<FactorDecomposition> {
    let ctx = profile.ctx();
    let r = ctx.r();
    validate_exponent(r, p)?;
    validate_coefficient(r, p, d_coeff)?;
    if profile.x_plus_y().is_zero() {
        return Err(Error::ZeroValue);
    }

    // Primes of (D) with their per-prime-ideal valuations; all are
    // prime-to-beta because gcd(D, r) = 1.
    let d_primes = arith::factor_bigint(d_coeff)?;
    let mut absorbed: Vec<(u64, usize, u64, bool)> = Vec::new(); // (q, index above q, v_P(D), seen)
    let mut splittings: Vec<(u64, Vec<crate::ideal::PrimeIdeal>)> = Vec::new();
    for &(q, vq) in &d_primes {
        let split = factor_rational_prime(ctx, q)?;
        for (idx, (prime, _)) in split.iter().enumerate() {
            absorbed.push((q, idx, u64::from(prime.e()) * u64::from(vq), false));
        }
        splittings.push((q, split.into_iter().map(|(p, _)| p).collect()));
    }
    let split_for = |q: u64, splittings: &[(u64, Vec<crate::ideal::PrimeIdeal>)]| {
        splittings
            .iter()
            .find(|(qq, _)| *qq == q)
            .map(|(_, s)| s.clone())
    };

    let d = ctx.degree();
    let mut parts = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let (target, beta_exponent): (RingElement, u64) = if j == 0 {
            let xy = ctx.integer(profile.x_plus_y().clone());
            let v = profile
                .beta_valuation_x_plus_y()
                .expect("x + y != 0 checked above");
            (xy, v)
        } else {
            (
                profile.factor(j).clone(),
                profile.beta_valuations()[j].expect("f_j != 0"),
            )
        };
        let target_ideal = IdealHnf::principal(&target)?;
        let mut i_part = IdealHnf::unit(ctx);
        let mut d_part = IdealHnf::unit(ctx);
        for (q, _) in arith::factor_bigint(&target.norm())? {
            if q == r {
                continue; // beta side handled by the stored exponent
            }
            let split = match split_for(q, &splittings) {
                Some(s) => s,
                None => factor_rational_prime(ctx, q)?
                    .into_iter()
                    .map(|(p, _)| p)
                    .collect(),
            };
            let vq_d = d_primes
                .iter()
                .find(|(qq, _)| *qq == q)
                .map(|(_, v)| u64::from(*v))
                .unwrap_or(0);
            for (idx, prime) in split.iter().enumerate() {
                let w = prime.valuation_of(&target_ideal)?;
                if w == 0 {
                    continue;
                }
                let d_exp = u64::from(prime.e()) * vq_d;
                if w < d_exp {
                    return Err(Error::DecompositionObstruction {
                        factor_index: j,
                        q,
                        message: format!(
                            "factor carries exponent {w} but D requires {d_exp}"
                        ),
                    });
                }
                let rem = w - d_exp;
                if rem % p != 0 {
                    return Err(Error::DecompositionObstruction {
                        factor_index: j,
                        q,
                        message: format!(
                            "residual exponent {rem} is not divisible by p = {p}"
                        ),
                    });
                }
                if d_exp > 0 {
                    d_part = d_part.product(&prime.lattice().pow(d_exp)?)?;
                    if let Some(slot) = absorbed
                        .iter_mut()
                        .find(|(qq, ii, _, _)| *qq == q && *ii == idx)
                    {
                        slot.3 = true;
                    }
                }
                if rem > 0 {
                    i_part = i_part.product(&prime.lattice().pow(rem / p)?)?;
                }
            }
        }
        parts.push(DecomposedFactor {
            index: j,
            i_part,
            d_part,
            beta_exponent,
        });
    }

    if let Some((q, _, _, _)) = absorbed.iter().find(|(_, _, v, seen)| *v > 0 && !seen) {
        return Err(Error::DecompositionObstruction {
            factor_index: 0,
            q: *q,
            message: format!("the prime {q} divides D but no factor absorbs it"),
        });
    }

    Ok(FactorDecomposition {
        parts,
        e: profile.e(),
        e0: profile.e0().expect("x + y != 0 checked above"),
    })
}

impl FactorDecomposition {
    /// Re-multiply all parts and compare against the factor ideals and (D).
    pub fn verify(
        &self,
        profile: &FactorProfile,
        d_coeff: &BigInt,
        p: u64,
    ) -> Result<DecompositionChecks> {
        let ctx = profile.ctx();
        let beta = beta_ideal(ctx)?;
        let mut reconstruction_ok = true;
        for part in &self.parts {
            let target = if part.index == 0 {
                ctx.integer(profile.x_plus_y().clone())
            } else {
                profile.factor(part.index).clone()
            };
            let rebuilt = part
                .i_part
                .pow(p)?
                .product(&part.d_part)?
                .product(&beta.lattice().pow(part.beta_exponent)?)?;
            if rebuilt != IdealHnf::principal(&target)? {
                reconstruction_ok = false;
            }
        }
        let mut i_parts_pairwise_coprime = true;
        for i in 0..self.parts.len() {
            for j in (i + 1)..self.parts.len() {
                if !self.parts[i].i_part.sum(&self.parts[j].i_part)?.is_unit() {
                    i_parts_pairwise_coprime = false;
                }
            }
        }
        let i_parts_prime_to_beta = self
            .parts
            .iter()
            .all(|p| !beta.lattice().contains_ideal(&p.i_part));
        let mut d_product = IdealHnf::unit(ctx);
        for part in &self.parts {
            d_product = d_product.product(&part.d_part)?;
        }
        let d_product_matches = d_product == IdealHnf::principal(&ctx.integer(d_coeff.clone()))?;
        Ok(DecompositionChecks {
            reconstruction_ok,
            i_parts_pairwise_coprime,
            i_parts_prime_to_beta,
            d_product_matches,
        })
    }
}

/// The beta-adic bookkeeping identity p*v_beta(z) = v_beta(x+y) + sum_j v_beta(f_j),
/// which characterizes valid solution contexts. Returns the truth value for
/// the supplied (p, z); false means no such context exists.
pub fn valuation_balance_check(
    profile: &FactorProfile,
    d_coeff: &BigInt,
    p: u64,
    z: &BigInt,
) -> Result<bool> {
    let ctx = profile.ctx();
    validate_exponent(ctx.r(), p)?;
    validate_coefficient(ctx.r(), p, d_coeff)?;
    if z.is_zero() || profile.x_plus_y().is_zero() {
        return Err(Error::ZeroValue);
    }
    let d = ctx.degree() as u64;
    let lhs = p * d * arith::valuation(z, ctx.r());
    let rhs = profile
        .beta_valuation_x_plus_y()
        .expect("x + y != 0 checked above")
        + profile.beta_valuations()[1..]
            .iter()
            .map(|v| v.expect("f_j != 0"))
            .sum::<u64>();
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn profile(r: u64, x: i64, y: i64) -> FactorProfile {
        let ctx = RingContext::new(r).unwrap();
        build_factors(&ctx, &bi(x), &bi(y)).unwrap()
    }

    #[test]
    fn rejects_invalid_pairs() {
        let ctx = RingContext::new(7).unwrap();
        assert!(matches!(
            build_factors(&ctx, &bi(0), &bi(0)),
            Err(Error::BothZero)
        ));
        assert!(matches!(
            build_factors(&ctx, &bi(2), &bi(4)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn trivial_profile_x1_y0() {
        let p = profile(7, 1, 0);
        assert!(p.product_identity_holds());
        for j in 1..=3 {
            assert_eq!(p.factor(j), &p.ctx().one());
            assert_eq!(p.beta_valuations()[j], Some(0));
        }
        assert_eq!(p.x_plus_y(), &bi(1));
        assert_eq!(p.value(), bi(1));
    }

    #[test]
    fn profile_2_1() {
        let p = profile(7, 2, 1);
        assert!(p.product_identity_holds());
        assert_eq!(p.value(), bi(129));
        assert_eq!(p.x_plus_y(), &bi(3));
        let mut prod = p.ctx().one();
        for j in 1..=3 {
            prod = &prod * p.factor(j);
        }
        assert_eq!(prod, p.ctx().integer(43));
        assert_eq!(p.e(), 0);
        assert_eq!(p.e0(), Some(0));
        assert!(p.beta_profile_consistent());
    }

    #[test]
    fn profile_3_4_beta_profile() {
        let p = profile(7, 3, 4);
        assert!(p.product_identity_holds());
        assert_eq!(p.value(), bi(18571));
        assert_eq!(p.value(), bi(49 * 379));
        assert_eq!(p.e(), 1);
        assert_eq!(p.e0(), Some(1));
        assert_eq!(p.beta_valuation_x_plus_y(), Some(3));
        for j in 1..=3 {
            assert_eq!(p.beta_valuations()[j], Some(1));
        }
        assert!(p.beta_profile_consistent());
    }

    #[test]
    fn profile_with_zero_sum() {
        let p = profile(7, 1, -1);
        assert!(p.product_identity_holds());
        assert_eq!(p.e0(), None);
        assert_eq!(p.beta_valuations()[0], None);
        // f_j = 2 - alpha_j has valuation exactly one.
        assert_eq!(p.e(), 1);
        assert!(p.beta_profile_consistent());
    }

    #[test]
    fn pairwise_coprimality_reports() {
        let p = profile(7, 2, 1);
        let pairs = verify_pairwise_coprimality(&p).unwrap();
        assert_eq!(pairs.len(), 6);
        assert!(pairs.iter().all(|c| c.gcd_norm.is_one() && c.power_of_r));

        let p = profile(7, 3, 4);
        let pairs = verify_pairwise_coprimality(&p).unwrap();
        for c in &pairs {
            assert!(c.power_of_r, "pair ({}, {}) norm {}", c.i, c.j, c.gcd_norm);
            if c.i >= 1 {
                assert_eq!(c.gcd_norm, bi(7));
            }
        }

        let p = profile(7, 1, 0);
        let pairs = verify_pairwise_coprimality(&p).unwrap();
        assert!(pairs.iter().all(|c| c.gcd_norm.is_one()));
    }

    #[test]
    fn solution_context_validation() {
        let ctx = RingContext::new(7).unwrap();
        let sc =
            SolutionContext::new(&ctx, bi(2), bi(1), 5, bi(129), bi(1)).unwrap();
        assert!(!sc.is_trivial());
        assert!(!sc.r_divides_z());
        assert!(matches!(
            SolutionContext::new(&ctx, bi(2), bi(1), 5, bi(129), bi(2)),
            Err(Error::NotASolution)
        ));
        assert!(matches!(
            SolutionContext::new(&ctx, bi(2), bi(1), 7, bi(129), bi(1)),
            Err(Error::InvalidExponent { .. })
        ));
        assert!(matches!(
            SolutionContext::new(&ctx, bi(2), bi(1), 5, bi(7 * 129), bi(1)),
            Err(Error::InvalidCoefficient { .. })
        ));
        let trivial = SolutionContext::new(&ctx, bi(1), bi(0), 5, bi(1), bi(1)).unwrap();
        assert!(trivial.is_trivial());
    }

    #[test]
    fn decompose_trivial_and_2_1() {
        let ctx = RingContext::new(7).unwrap();
        let p0 = build_factors(&ctx, &bi(1), &bi(0)).unwrap();
        let dec = decompose_factors(&p0, &bi(1), 5).unwrap();
        assert_eq!(dec.e(), 0);
        assert_eq!(dec.e0(), 0);
        for part in dec.parts() {
            assert!(part.i_part.is_unit());
            assert!(part.d_part.is_unit());
            assert_eq!(part.beta_exponent, 0);
        }
        assert!(dec.verify(&p0, &bi(1), 5).unwrap().all_ok());

        let p = build_factors(&ctx, &bi(2), &bi(1)).unwrap();
        let dec = decompose_factors(&p, &bi(129), 5).unwrap();
        assert_eq!(dec.e(), 0);
        for part in dec.parts() {
            assert!(part.i_part.is_unit(), "no p-th powers available in 129");
        }
        // D_j absorb everything: the d_part norms multiply to norm((129)).
        let total: BigInt = dec.parts().iter().map(|p| p.d_part.norm()).product();
        assert_eq!(total, bi(129).pow(3));
        assert!(dec.verify(&p, &bi(129), 5).unwrap().all_ok());
    }

    #[test]
    fn decompose_diagnostic_fires_on_non_solutions() {
        let ctx = RingContext::new(7).unwrap();
        let p = build_factors(&ctx, &bi(2), &bi(1)).unwrap();
        // D = 3: the factor primes over 43 are left with exponent 1, not
        // divisible by p.
        match decompose_factors(&p, &bi(3), 5) {
            Err(Error::DecompositionObstruction { q, .. }) => assert_eq!(q, 43),
            other => panic!("expected obstruction, got {other:?}"),
        }
        // D = 5 on (2, 1): the x+y part carries a bare 3 that D cannot
        // absorb, and 1 is not divisible by p.
        match decompose_factors(&p, &bi(5), 5) {
            Err(Error::DecompositionObstruction { q, factor_index, .. }) => {
                assert_eq!((factor_index, q), (0, 3))
            }
            other => panic!("expected obstruction, got {other:?}"),
        }
        // D = 2 on (1, 0): all factors are units, so the prime 2 of D is
        // never absorbed.
        let unit_profile = build_factors(&ctx, &bi(1), &bi(0)).unwrap();
        match decompose_factors(&unit_profile, &bi(2), 5) {
            Err(Error::DecompositionObstruction { q, .. }) => assert_eq!(q, 2),
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn decompose_with_nontrivial_i_part() {
        // 242 + 1 = 3^5, so the z = 3 context puts a genuine fifth power
        // into the x+y slot: (243) = I_0^5 with I_0 the (inert) prime
        // over 3. The f_j each absorb one prime of D above 43, 953 and
        // 4881349817.
        let ctx = RingContext::new(7).unwrap();
        let p = build_factors(&ctx, &bi(242), &bi(1)).unwrap();
        let d_coeff: BigInt = "200032834150843".parse().unwrap();
        let dec = decompose_factors(&p, &d_coeff, 5).unwrap();
        assert_eq!(dec.e(), 0);
        assert_eq!(dec.e0(), 0);
        let part0 = &dec.parts()[0];
        assert_eq!(part0.i_part.norm(), bi(27));
        assert!(part0.d_part.is_unit());
        assert_eq!(part0.beta_exponent, 0);
        for part in &dec.parts()[1..] {
            assert!(part.i_part.is_unit());
            assert_eq!(part.d_part.norm(), d_coeff);
        }
        assert!(dec.verify(&p, &d_coeff, 5).unwrap().all_ok());
        assert!(valuation_balance_check(&p, &d_coeff, 5, &bi(3)).unwrap());
    }

    #[test]
    fn balance_check_examples() {
        let ctx = RingContext::new(7).unwrap();
        let p = build_factors(&ctx, &bi(2), &bi(1)).unwrap();
        assert!(valuation_balance_check(&p, &bi(129), 5, &bi(1)).unwrap());
        let p34 = build_factors(&ctx, &bi(3), &bi(4)).unwrap();
        // v_7(18571) = 2 cannot equal p*v_7(z) for p = 5, so every candidate
        // z fails the balance.
        assert!(!valuation_balance_check(&p34, &bi(379), 5, &bi(1)).unwrap());
        assert!(!valuation_balance_check(&p34, &bi(379), 5, &bi(7)).unwrap());
    }
}
