//! End-to-end orchestration: analyze a concrete (r, x, y, p, D, z) instance,
//! enumerate candidate (D, z) contexts, generate type-2 fixtures, run the
//! brute-force solution search, and batch-run the property sweep.
//!
//! Every entry point returns a serde-serializable report. `to_sorted_json`
//! renders reports with sorted keys and big integers as decimal strings, so
//! identical inputs produce byte-identical output. The sweep and the search
//! shard their input ranges across threads and merge shard results in index
//! order, which keeps the reports deterministic.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::fermat::{
    self, build_factors, decompose_factors, power_sum, valuation_balance_check,
    verify_pairwise_coprimality, FactorProfile, SolutionContext,
};
use crate::frey::{
    eichler_shimura_condition, frey_type1, frey_type2, generic_invariants, inertia_criterion,
    j_beta_valuation, j_lambda_check, level_data, reduction_type, FreyCurve, LevelData,
    ReductionType,
};
use crate::ideal::{beta_ideal, factor_rational_prime, IdealHnf};
use crate::ring::RingContext;

pub const SCHEMA_VERSION: u32 = 1;

/// Render any report with sorted keys; big integers are already strings.
pub fn to_sorted_json<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports are serializable");
    serde_json::to_string_pretty(&value).expect("values render")
}

fn big(s: &BigInt) -> String {
    s.to_string()
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub r: u64,
    pub x: String,
    pub y: String,
    pub p: u64,
    pub d: Option<String>,
    pub z: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorSummary {
    pub index: usize,
    pub norm: String,
    pub beta_valuation: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileSummary {
    pub x_plus_y: String,
    pub beta_valuation_x_plus_y: Option<u64>,
    pub e: u64,
    pub e0: Option<u64>,
    pub product_identity: bool,
    pub beta_profile_consistent: bool,
    pub factors: Vec<FactorSummary>,
}

fn profile_summary(profile: &FactorProfile) -> ProfileSummary {
    let factors = profile
        .factors()
        .iter()
        .enumerate()
        .map(|(index, f)| FactorSummary {
            index,
            norm: big(&f.norm()),
            beta_valuation: profile.beta_valuations()[index],
        })
        .collect();
    ProfileSummary {
        x_plus_y: big(profile.x_plus_y()),
        beta_valuation_x_plus_y: profile.beta_valuation_x_plus_y(),
        e: profile.e(),
        e0: profile.e0(),
        product_identity: profile.product_identity_holds(),
        beta_profile_consistent: profile.beta_profile_consistent(),
        factors,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoprimalityRow {
    pub i: usize,
    pub j: usize,
    pub gcd_norm: String,
    pub power_of_r: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionFactorRow {
    pub index: usize,
    pub i_part_norm: String,
    pub d_part_norm: String,
    pub beta_exponent: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionChecksOut {
    pub reconstruction: bool,
    pub i_parts_pairwise_coprime: bool,
    pub i_parts_prime_to_beta: bool,
    pub d_product_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSummary {
    pub e: u64,
    pub e0: u64,
    pub factors: Vec<DecompositionFactorRow>,
    pub checks: DecompositionChecksOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct BetaValuationsOut {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub c4: u64,
    pub c6: Option<u64>,
    pub disc: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicativePrimeOut {
    pub q: u64,
    pub residue_degree: u32,
    pub disc_valuation: u64,
    pub divides_d: bool,
    pub in_mp: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoAdicOut {
    pub residue_degree: u32,
    pub ramification: u32,
    pub exponent_range: [u64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelOut {
    pub beta_exponent_range: [u64; 2],
    pub two_adic: Vec<TwoAdicOut>,
    pub d_radical_norm: String,
    pub multiplicative_primes: Vec<MultiplicativePrimeOut>,
    pub mp_prime_count: usize,
    pub semistable_outside_two_and_beta: bool,
}

fn level_summary(level: &LevelData) -> LevelOut {
    LevelOut {
        beta_exponent_range: [level.beta_exponent_range.0, level.beta_exponent_range.1],
        two_adic: level
            .two_adic_ranges
            .iter()
            .map(|(p, range)| TwoAdicOut {
                residue_degree: p.f(),
                ramification: p.e(),
                exponent_range: [range.0, range.1],
            })
            .collect(),
        d_radical_norm: big(&level.d_radical.norm()),
        multiplicative_primes: level
            .multiplicative_primes
            .iter()
            .map(|m| MultiplicativePrimeOut {
                q: m.prime.q(),
                residue_degree: m.prime.f(),
                disc_valuation: m.disc_valuation,
                divides_d: m.divides_d,
                in_mp: m.in_mp,
            })
            .collect(),
        mp_prime_count: level.mp_primes().count(),
        semistable_outside_two_and_beta: level.semistable_outside_two_and_beta(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JLambdaOut {
    pub invariant_form: bool,
    pub lambda_form: bool,
    pub ratio_relation: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveOut {
    pub kind: String,
    pub beta_valuations: BetaValuationsOut,
    pub level: Option<LevelOut>,
    pub level_error: Option<String>,
    pub j_lambda: Option<JLambdaOut>,
    pub k: Option<u64>,
    pub j_beta_valuation: Option<i64>,
    pub expected_j_beta_valuation: Option<i64>,
    pub inertia_criterion: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChecklistOut {
    pub semistable_outside_two_and_beta: Option<bool>,
    pub p_divides_disc_valuation_outside_d: Option<bool>,
    pub type2_applicable: bool,
    pub inertia_criterion: Option<bool>,
    pub eichler_shimura_side_condition: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextAnalysis {
    pub d: String,
    pub z: String,
    pub is_trivial: bool,
    pub r_divides_z: bool,
    pub profile: ProfileSummary,
    pub coprimality: Option<Vec<CoprimalityRow>>,
    pub balance_identity: Option<bool>,
    pub decomposition: Option<DecompositionSummary>,
    pub decomposition_error: Option<String>,
    pub type1: Option<CurveOut>,
    pub type1_error: Option<String>,
    pub type2: Option<CurveOut>,
    pub type2_error: Option<String>,
    pub checklist: ChecklistOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub command: String,
    pub input: InputEcho,
    pub contexts: Vec<ContextAnalysis>,
}

fn curve_summary(
    curve: &FreyCurve,
    d_coeff: &BigInt,
    p: u64,
    type2_data: Option<(u64, i64)>,
) -> CurveOut {
    let vals = curve.beta_valuations();
    let (level, level_error) = match level_data(curve, d_coeff, p) {
        Ok(l) => (Some(level_summary(&l)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let j_lambda = j_lambda_check(curve).ok().map(|rep| JLambdaOut {
        invariant_form: rep.invariant_form,
        lambda_form: rep.lambda_form,
        ratio_relation: rep.ratio_relation,
    });
    let (k, jv, expected_jv, inertia) = match type2_data {
        Some((k, jv)) => {
            let r = curve.a().ctx().r();
            (
                Some(k),
                Some(jv),
                Some(crate::frey::expected_type2_j_valuation(r, p, k)),
                Some(inertia_criterion(jv, p)),
            )
        }
        None => (None, None, None, None),
    };
    CurveOut {
        kind: curve.kind().to_string(),
        beta_valuations: BetaValuationsOut {
            a: vals.a,
            b: vals.b,
            c: vals.c,
            c4: vals.c4,
            c6: vals.c6,
            disc: vals.disc,
        },
        level,
        level_error,
        j_lambda,
        k,
        j_beta_valuation: jv,
        expected_j_beta_valuation: expected_jv,
        inertia_criterion: inertia,
    }
}

fn analyze_context(sc: &SolutionContext) -> Result<ContextAnalysis> {
    let ctx = sc.ctx();
    let profile = build_factors(ctx, sc.x(), sc.y())?;
    let summary = profile_summary(&profile);
    let r = ctx.r();
    let p = sc.p();
    let es_condition = eichler_shimura_condition(r, p);

    if sc.is_trivial() {
        return Ok(ContextAnalysis {
            d: big(sc.d_coeff()),
            z: big(sc.z()),
            is_trivial: true,
            r_divides_z: sc.r_divides_z(),
            profile: summary,
            coprimality: None,
            balance_identity: None,
            decomposition: None,
            decomposition_error: None,
            type1: None,
            type1_error: None,
            type2: None,
            type2_error: None,
            checklist: ChecklistOut {
                semistable_outside_two_and_beta: None,
                p_divides_disc_valuation_outside_d: None,
                type2_applicable: sc.r_divides_z(),
                inertia_criterion: None,
                eichler_shimura_side_condition: es_condition,
            },
        });
    }

    let coprimality = verify_pairwise_coprimality(&profile)?
        .into_iter()
        .map(|c| CoprimalityRow {
            i: c.i,
            j: c.j,
            gcd_norm: big(&c.gcd_norm),
            power_of_r: c.power_of_r,
        })
        .collect();
    let balance = valuation_balance_check(&profile, sc.d_coeff(), p, sc.z()).ok();

    let (decomposition, decomposition_error) =
        match decompose_factors(&profile, sc.d_coeff(), p) {
            Ok(dec) => {
                let checks = dec.verify(&profile, sc.d_coeff(), p)?;
                let rows = dec
                    .parts()
                    .iter()
                    .map(|part| DecompositionFactorRow {
                        index: part.index,
                        i_part_norm: big(&part.i_part.norm()),
                        d_part_norm: big(&part.d_part.norm()),
                        beta_exponent: part.beta_exponent,
                    })
                    .collect();
                (
                    Some(DecompositionSummary {
                        e: dec.e(),
                        e0: dec.e0(),
                        factors: rows,
                        checks: DecompositionChecksOut {
                            reconstruction: checks.reconstruction_ok,
                            i_parts_pairwise_coprime: checks.i_parts_pairwise_coprime,
                            i_parts_prime_to_beta: checks.i_parts_prime_to_beta,
                            d_product_matches: checks.d_product_matches,
                        },
                    }),
                    None,
                )
            }
            Err(e) => (None, Some(e.to_string())),
        };

    let (type1, type1_error) = match frey_type1(&profile) {
        Ok(curve) => (
            Some(curve_summary(&curve, sc.d_coeff(), p, None)),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };

    let (type2, type2_error) = if sc.r_divides_z() && !sc.z().is_zero() {
        match frey_type2(&profile, p, sc.z()) {
            Ok(curve) => {
                let k = arith::valuation(sc.z(), r);
                match j_beta_valuation(&curve, p, k) {
                    Ok(jv) => (
                        Some(curve_summary(&curve, sc.d_coeff(), p, Some((k, jv)))),
                        None,
                    ),
                    Err(e) => (None, Some(e.to_string())),
                }
            }
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };

    let levels: Vec<&LevelOut> = type1
        .iter()
        .chain(type2.iter())
        .filter_map(|c| c.level.as_ref())
        .collect();
    let semistable = if levels.is_empty() {
        None
    } else {
        Some(levels.iter().all(|l| l.semistable_outside_two_and_beta))
    };
    let p_divides_outside_d = if levels.is_empty() {
        None
    } else {
        Some(levels.iter().all(|l| {
            l.multiplicative_primes
                .iter()
                .all(|m| m.divides_d || m.in_mp)
        }))
    };

    Ok(ContextAnalysis {
        d: big(sc.d_coeff()),
        z: big(sc.z()),
        is_trivial: false,
        r_divides_z: sc.r_divides_z(),
        profile: summary,
        coprimality: Some(coprimality),
        balance_identity: balance,
        decomposition,
        decomposition_error,
        type1,
        type1_error,
        checklist: ChecklistOut {
            semistable_outside_two_and_beta: semistable,
            p_divides_disc_valuation_outside_d: p_divides_outside_d,
            type2_applicable: sc.r_divides_z(),
            inertia_criterion: type2.as_ref().and_then(|c| c.inertia_criterion),
            eichler_shimura_side_condition: es_condition,
        },
        type2,
        type2_error,
    })
}

/// Analyze an instance end to end. With D and z omitted, every valid
/// context from the enumeration is analyzed; `NoValidContext` is returned
/// when none exists.
pub fn analyze(
    r: u64,
    x: &BigInt,
    y: &BigInt,
    p: u64,
    d_coeff: Option<BigInt>,
    z: Option<BigInt>,
) -> Result<AnalyzeReport> {
    let ctx = RingContext::new(r)?;
    let input = InputEcho {
        r,
        x: big(x),
        y: big(y),
        p,
        d: d_coeff.as_ref().map(big),
        z: z.as_ref().map(big),
    };
    let value = power_sum(r, x, y);
    let solution_contexts: Vec<SolutionContext> = match (d_coeff, z) {
        (Some(d), Some(z)) => vec![SolutionContext::new(&ctx, x.clone(), y.clone(), p, d, z)?],
        (Some(d), None) => {
            if d.is_zero() || !(&value % &d).is_zero() {
                return Err(Error::NotASolution);
            }
            let quotient = &value / &d;
            let z = if quotient.is_zero() {
                BigInt::zero()
            } else {
                arith::exact_root(&quotient, p).ok_or(Error::NotASolution)?
            };
            vec![SolutionContext::new(&ctx, x.clone(), y.clone(), p, d, z)?]
        }
        (None, Some(z)) => {
            if z.is_zero() {
                return Err(Error::NotASolution);
            }
            let zp = num_traits::pow::pow(z.clone(), p as usize);
            if !(&value % &zp).is_zero() {
                return Err(Error::NotASolution);
            }
            let d = &value / &zp;
            vec![SolutionContext::new(&ctx, x.clone(), y.clone(), p, d, z)?]
        }
        (None, None) => {
            let candidates = enumerate_candidates(&ctx, x, y, p)?;
            let valid: Vec<SolutionContext> = candidates
                .into_iter()
                .filter(|c| c.valid)
                .map(|c| SolutionContext::new(&ctx, x.clone(), y.clone(), p, c.d, c.z))
                .collect::<Result<_>>()?;
            if valid.is_empty() {
                return Err(Error::NoValidContext);
            }
            valid
        }
    };

    let mut contexts = Vec::with_capacity(solution_contexts.len());
    for sc in &solution_contexts {
        contexts.push(analyze_context(sc)?);
    }
    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        command: "analyze".into(),
        input,
        contexts,
    })
}

// ---------------------------------------------------------------------------
// contexts
// ---------------------------------------------------------------------------

struct Candidate {
    d: BigInt,
    z: BigInt,
    gcd_r_ok: bool,
    p_power_free: bool,
    valid: bool,
}

/// All z >= 1 with z^p | V, with validity flags on D = V / z^p.
fn enumerate_candidates(
    ctx: &Arc<RingContext>,
    x: &BigInt,
    y: &BigInt,
    p: u64,
) -> Result<Vec<Candidate>> {
    let r = ctx.r();
    fermat::validate_exponent(r, p)?;
    let value = power_sum(r, x, y);
    if value.is_zero() {
        return Err(Error::ZeroValue);
    }
    let factors = arith::factor_bigint(&value)?;
    let repeated: Vec<(u64, u32)> = factors
        .iter()
        .filter(|(_, e)| u64::from(*e) >= p)
        .map(|(q, e)| (*q, e / (p as u32)))
        .collect();

    // Enumerate exponent tuples for z over the primes with v_q(V) >= p.
    let mut zs = vec![BigInt::one()];
    for &(q, max_a) in &repeated {
        let mut next = Vec::with_capacity(zs.len() * (max_a as usize + 1));
        for z in &zs {
            let mut qpow = BigInt::one();
            for _ in 0..=max_a {
                next.push(z * &qpow);
                qpow *= BigInt::from(q);
            }
        }
        zs = next;
    }
    zs.sort();

    let mut out = Vec::with_capacity(zs.len());
    for z in zs {
        let zp = num_traits::pow::pow(z.clone(), p as usize);
        let d = &value / &zp;
        let gcd_r_ok = !(&d % BigInt::from(r)).is_zero();
        let p_power_free = arith::factor_bigint(&d)?
            .iter()
            .all(|(_, e)| u64::from(*e) < p);
        out.push(Candidate {
            valid: gcd_r_ok && p_power_free,
            d,
            z,
            gcd_r_ok,
            p_power_free,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextCandidateOut {
    pub d: String,
    pub z: String,
    pub valid: bool,
    pub gcd_r_ok: bool,
    pub p_power_free: bool,
    pub r_divides_z: bool,
    pub trivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextsReport {
    pub schema_version: u32,
    pub command: String,
    pub r: u64,
    pub x: String,
    pub y: String,
    pub p: u64,
    pub value: String,
    pub contexts: Vec<ContextCandidateOut>,
}

pub fn contexts(r: u64, x: &BigInt, y: &BigInt, p: u64) -> Result<ContextsReport> {
    let ctx = RingContext::new(r)?;
    // Surface coprimality problems before factoring anything.
    build_factors(&ctx, x, y)?;
    let candidates = enumerate_candidates(&ctx, x, y, p)?;
    let value = power_sum(r, x, y);
    let rows = candidates
        .into_iter()
        .map(|c| ContextCandidateOut {
            trivial: (x * y * &c.z).abs() <= BigInt::one(),
            r_divides_z: (&c.z % BigInt::from(r)).is_zero() && !c.z.is_zero(),
            d: big(&c.d),
            z: big(&c.z),
            valid: c.valid,
            gcd_r_ok: c.gcd_r_ok,
            p_power_free: c.p_power_free,
        })
        .collect();
    Ok(ContextsReport {
        schema_version: SCHEMA_VERSION,
        command: "contexts".into(),
        r,
        x: big(x),
        y: big(y),
        p,
        value: big(&value),
        contexts: rows,
    })
}

// ---------------------------------------------------------------------------
// fixture-type2
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub schema_version: u32,
    pub command: String,
    pub r: u64,
    pub p: u64,
    pub k: u64,
    pub seed: u64,
    pub x: String,
    pub y: String,
    pub x_plus_y_valuation: u64,
    pub value_valuation: u64,
    pub coprime: bool,
}

/// Deterministic (x, y) with v_r(x + y) = pk - 1, gcd(x, y) = 1 and
/// r not dividing x*y: x = a * r^(pk-1) + 1 with a derived from the seed,
/// y = -1. Seed 0 gives a = 1 (for r = 7, p = 5, k = 1 this is x = 2402).
pub fn fixture_type2(r: u64, p: u64, k: u64, seed: u64) -> Result<FixtureReport> {
    if r <= 5 || !arith::is_prime_u64(r) {
        return Err(Error::InvalidRingPrime(r));
    }
    if !arith::is_prime_u64(p) || p == r {
        return Err(Error::InvalidExponent { p, r });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let exponent = p
        .checked_mul(k)
        .and_then(|pk| pk.checked_sub(1))
        .ok_or_else(|| Error::InvalidArgument("p * k overflows".into()))?;
    // Rough size guard: |x| has about exponent * log2(r) bits.
    let bits_estimate = exponent.saturating_mul(64 - (r.leading_zeros() as u64));
    if bits_estimate > 1 << 20 {
        return Err(Error::DeskScaleExceeded {
            what: format!("fixture would need around {bits_estimate} bits"),
        });
    }
    let mut a = 1 + seed % 89;
    while a % r == 0 {
        a += 1;
    }
    let r_pow = num_traits::pow::pow(BigInt::from(r), exponent as usize);
    let x = BigInt::from(a) * &r_pow + BigInt::one();
    let y = BigInt::from(-1);
    let x_plus_y = &x + &y;
    let x_plus_y_valuation = arith::valuation(&x_plus_y, r);
    debug_assert_eq!(x_plus_y_valuation, exponent);
    let value = power_sum(r, &x, &y);
    let value_valuation = arith::valuation(&value, r);
    let coprime = x.gcd(&y).is_one();
    Ok(FixtureReport {
        schema_version: SCHEMA_VERSION,
        command: "fixture-type2".into(),
        r,
        p,
        k,
        seed,
        x: big(&x),
        y: big(&y),
        x_plus_y_valuation,
        value_valuation,
        coprime,
    })
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub command: String,
    pub r: u64,
    pub d: String,
    pub p: u64,
    pub bound: u64,
    pub scanned: u64,
    pub trivial: Vec<SearchHit>,
    pub nontrivial: Vec<SearchHit>,
}

/// Exhaustive scan over coprime |x|, |y| <= bound for (x^r + y^r) / D being
/// an exact p-th power. Trivial hits (|xyz| <= 1) are reported separately.
pub fn search(r: u64, d_coeff: &BigInt, p: u64, bound: u64) -> Result<SearchReport> {
    if r <= 5 || !arith::is_prime_u64(r) {
        return Err(Error::InvalidRingPrime(r));
    }
    // The scan accepts p = r: signature (r, r, r) questions are searchable
    // even though the curve-side analysis requires p != r.
    if p < 5 || !arith::is_prime_u64(p) {
        return Err(Error::InvalidExponent { p, r });
    }
    let cap = arith::bound_cap();
    if bound > cap {
        return Err(Error::DeskScaleExceeded {
            what: format!("bound {bound} exceeds the cap {cap} (set RRP_DESK_CAP_BOUND to raise)"),
        });
    }
    fermat::validate_coefficient(r, p, d_coeff)?;
    let b = bound as i64;
    let shards = shard_range(-b, b);
    let results: Vec<(u64, Vec<SearchHit>, Vec<SearchHit>)> = run_sharded(&shards, |lo, hi| {
        let mut scanned = 0u64;
        let mut trivial = Vec::new();
        let mut nontrivial = Vec::new();
        for x in lo..=hi {
            for y in -b..=b {
                if x == 0 && y == 0 {
                    continue;
                }
                if x.gcd(&y) != 1 {
                    continue;
                }
                scanned += 1;
                let bx = BigInt::from(x);
                let by = BigInt::from(y);
                let value = power_sum(r, &bx, &by);
                let (quot, rem) = value.div_rem(d_coeff);
                if !rem.is_zero() {
                    continue;
                }
                let z = if quot.is_zero() {
                    BigInt::zero()
                } else {
                    match arith::exact_root(&quot, p) {
                        Some(z) => z,
                        None => continue,
                    }
                };
                let hit = SearchHit {
                    x: bx.to_string(),
                    y: by.to_string(),
                    z: z.to_string(),
                };
                if (&bx * &by * &z).abs() <= BigInt::one() {
                    trivial.push(hit);
                } else {
                    nontrivial.push(hit);
                }
            }
        }
        (scanned, trivial, nontrivial)
    });
    let mut scanned = 0;
    let mut trivial = Vec::new();
    let mut nontrivial = Vec::new();
    for (s, t, n) in results {
        scanned += s;
        trivial.extend(t);
        nontrivial.extend(n);
    }
    Ok(SearchReport {
        schema_version: SCHEMA_VERSION,
        command: "search".into(),
        r,
        d: big(d_coeff),
        p,
        bound,
        scanned,
        trivial,
        nontrivial,
    })
}

// ---------------------------------------------------------------------------
// sharding helpers
// ---------------------------------------------------------------------------

fn shard_range(lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .clamp(1, 8) as i64;
    let len = hi - lo + 1;
    let chunk = (len + workers - 1) / workers.max(1);
    let mut shards = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = (start + chunk - 1).min(hi);
        shards.push((start, end));
        start = end + 1;
    }
    shards
}

/// Run one closure per shard on its own thread; results come back in shard
/// order, so downstream reports stay deterministic.
fn run_sharded<T, F>(shards: &[(i64, i64)], work: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64, i64) -> T + Sync,
{
    let work = &work;
    std::thread::scope(|scope| {
        let handles: Vec<_> = shards
            .iter()
            .map(|&(lo, hi)| scope.spawn(move || work(lo, hi)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    })
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub r: u64,
    pub cases: u64,
    pub failures: u64,
    pub skipped: u64,
    pub pass: bool,
    pub first_failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub command: String,
    pub r_list: Vec<u64>,
    pub bound: u64,
    pub properties: Vec<PropertyResult>,
    pub pass: bool,
}

enum CaseOutcome {
    Pass,
    Fail(String),
    Skip,
}

fn scan_pairs<F>(name: &str, r: u64, bound: u64, check: F) -> PropertyResult
where
    F: Fn(i64, i64) -> CaseOutcome + Sync,
{
    let b = bound as i64;
    let shards = shard_range(-b, b);
    let results = run_sharded(&shards, |lo, hi| {
        let mut cases = 0u64;
        let mut failures = 0u64;
        let mut skipped = 0u64;
        let mut first: Vec<String> = Vec::new();
        for x in lo..=hi {
            for y in -b..=b {
                if (x == 0 && y == 0) || x.gcd(&y) != 1 {
                    continue;
                }
                match check(x, y) {
                    CaseOutcome::Pass => cases += 1,
                    CaseOutcome::Skip => skipped += 1,
                    CaseOutcome::Fail(msg) => {
                        cases += 1;
                        failures += 1;
                        if first.len() < 4 {
                            first.push(format!("({x}, {y}): {msg}"));
                        }
                    }
                }
            }
        }
        (cases, failures, skipped, first)
    });
    let mut cases = 0;
    let mut failures = 0;
    let mut skipped = 0;
    let mut first_failures = Vec::new();
    for (c, f, s, msgs) in results {
        cases += c;
        failures += f;
        skipped += s;
        for m in msgs {
            if first_failures.len() < 8 {
                first_failures.push(m);
            }
        }
    }
    PropertyResult {
        name: name.into(),
        r,
        cases,
        failures,
        skipped,
        pass: failures == 0,
        first_failures,
    }
}

fn property_from_checks(name: &str, r: u64, checks: Vec<(String, bool)>) -> PropertyResult {
    let cases = checks.len() as u64;
    let failed: Vec<String> = checks
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(msg, _)| msg)
        .collect();
    PropertyResult {
        name: name.into(),
        r,
        cases,
        failures: failed.len() as u64,
        skipped: 0,
        pass: failed.is_empty(),
        first_failures: failed.into_iter().take(8).collect(),
    }
}

/// Per-(x, y) property checks, exposed individually so callers can pick the
/// ranges appropriate to each property.
pub mod properties {
    use super::*;

    /// The minimal polynomial vanishes on alpha, the table satisfies the
    /// two-term recurrence, and alpha_0 = 2.
    pub fn minimal_polynomial_checks(r: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        let mut checks = Vec::new();
        let alpha = ctx.alpha(1)?;
        let mut acc = ctx.zero();
        for k in (0..=ctx.degree()).rev() {
            acc = &(&acc * &alpha) + &ctx.integer(ctx.min_poly()[k].clone());
        }
        checks.push(("min_poly(alpha) == 0".into(), acc.is_zero()));
        checks.push(("alpha_0 == 2".into(), ctx.alpha(0)? == ctx.integer(2)));
        let mut recurrence_ok = true;
        for j in 1..ctx.degree() {
            let lhs = ctx.alpha(j + 1)?;
            let rhs = &(&alpha * &ctx.alpha(j)?) - &ctx.alpha(j - 1)?;
            recurrence_ok &= lhs == rhs;
        }
        checks.push(("alpha recurrence".into(), recurrence_ok));
        checks.push((
            "monic of degree (r-1)/2".into(),
            ctx.min_poly().len() == ctx.degree() + 1 && ctx.min_poly()[ctx.degree()].is_one(),
        ));
        Ok(property_from_checks("minimal_polynomial", r, checks))
    }

    /// v_beta(alpha_k - alpha_j) = 1 for all 0 <= k < j <= d.
    pub fn alpha_difference_valuation(r: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        let mut checks = Vec::new();
        for k in 0..ctx.degree() {
            for j in (k + 1)..=ctx.degree() {
                let diff = &ctx.alpha(k)? - &ctx.alpha(j)?;
                let v = diff.beta_valuation()?;
                checks.push((format!("v_beta(alpha_{k} - alpha_{j}) = {v}"), v == 1));
            }
        }
        Ok(property_from_checks("alpha_difference_valuation", r, checks))
    }

    /// (r) factors as a single prime with e = d, f = 1, and beta^d = (r).
    pub fn ramified_prime_shape(r: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        let primes = factor_rational_prime(&ctx, r)?;
        let mut checks = Vec::new();
        checks.push(("single prime over r".into(), primes.len() == 1));
        if let Some((beta, mult)) = primes.first() {
            let d = ctx.degree() as u32;
            checks.push((
                format!("e = {} and f = {}", beta.e(), beta.f()),
                beta.e() == d && beta.f() == 1 && *mult == d,
            ));
            let pow = beta.lattice().pow(ctx.degree() as u64)?;
            let r_ideal = IdealHnf::principal(&ctx.integer(r as i64))?;
            checks.push(("beta^d == (r)".into(), pow == r_ideal));
        }
        Ok(property_from_checks("ramified_prime_shape", r, checks))
    }

    /// Splitting consistency for all primes q < q_max: sum of e*f equals the
    /// degree and the product of the primes rebuilds (q).
    pub fn splitting_consistency(r: u64, q_max: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        let mut checks = Vec::new();
        for &q in arith::small_primes().iter().take_while(|&&q| q < q_max) {
            let split = factor_rational_prime(&ctx, q)?;
            let efsum: u32 = split.iter().map(|(p, m)| p.f() * m).sum();
            let mut acc = IdealHnf::unit(&ctx);
            for (p, m) in &split {
                acc = acc.product(&p.lattice().pow(u64::from(*m))?)?;
            }
            let ok = efsum as usize == ctx.degree()
                && acc == IdealHnf::principal(&ctx.integer(q as i64))?;
            checks.push((format!("splitting of {q}"), ok));
        }
        Ok(property_from_checks("splitting_consistency", r, checks))
    }

    /// (x+y) * prod f_j = x^r + y^r exactly, per coprime pair.
    pub fn product_identity(r: u64, bound: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        Ok(scan_pairs("product_identity", r, bound, |x, y| {
            match build_factors(&ctx, &BigInt::from(x), &BigInt::from(y)) {
                Ok(p) if p.product_identity_holds() => CaseOutcome::Pass,
                Ok(_) => CaseOutcome::Fail("product identity violated".into()),
                Err(e) => CaseOutcome::Fail(e.to_string()),
            }
        }))
    }

    /// The beta-valuation profile of the f_j is constant in {0, 1} and is 1
    /// exactly when r | x + y.
    pub fn factor_beta_profile(r: u64, bound: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        Ok(scan_pairs("factor_beta_profile", r, bound, |x, y| {
            match build_factors(&ctx, &BigInt::from(x), &BigInt::from(y)) {
                Ok(p) if p.beta_profile_consistent() => CaseOutcome::Pass,
                Ok(p) => CaseOutcome::Fail(format!(
                    "profile {:?} with e = {}",
                    p.beta_valuations(),
                    p.e()
                )),
                Err(e) => CaseOutcome::Fail(e.to_string()),
            }
        }))
    }

    /// Every pairwise ideal gcd of the factors has norm a power of r.
    pub fn pairwise_ideal_gcd(r: u64, bound: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        Ok(scan_pairs("pairwise_ideal_gcd", r, bound, |x, y| {
            let profile = match build_factors(&ctx, &BigInt::from(x), &BigInt::from(y)) {
                Ok(p) => p,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            match verify_pairwise_coprimality(&profile) {
                Ok(pairs) => {
                    if let Some(bad) = pairs.iter().find(|p| !p.power_of_r) {
                        CaseOutcome::Fail(format!(
                            "gcd norm {} at pair ({}, {})",
                            bad.gcd_norm, bad.i, bad.j
                        ))
                    } else {
                        CaseOutcome::Pass
                    }
                }
                Err(e) => CaseOutcome::Fail(e.to_string()),
            }
        }))
    }

    /// The lattice valuation at beta agrees with the norm shortcut on the
    /// factors and on x + y.
    pub fn beta_valuation_consistency(r: u64, bound: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        let beta = beta_ideal(&ctx)?;
        Ok(scan_pairs("beta_valuation_consistency", r, bound, |x, y| {
            let profile = match build_factors(&ctx, &BigInt::from(x), &BigInt::from(y)) {
                Ok(p) => p,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            let mut targets = vec![profile.factor(1).clone()];
            if !profile.x_plus_y().is_zero() {
                targets.push(ctx.integer(profile.x_plus_y().clone()));
            }
            for t in targets {
                let lattice = match beta.valuation_of_element(&t) {
                    Ok(v) => v,
                    Err(e) => return CaseOutcome::Fail(e.to_string()),
                };
                let shortcut = match t.beta_valuation() {
                    Ok(v) => v,
                    Err(e) => return CaseOutcome::Fail(e.to_string()),
                };
                if lattice != shortcut {
                    return CaseOutcome::Fail(format!(
                        "lattice {lattice} != norm shortcut {shortcut} at {t}"
                    ));
                }
            }
            CaseOutcome::Pass
        }))
    }

    /// Type-1 curve identities: A+B+C = 0, closed forms equal the generic
    /// route, c4^3 - c6^2 = 1728 disc, the beta valuations equal e + 1, and
    /// the j(lambda) checks hold.
    pub fn curve_invariant_forms(r: u64, bound: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        Ok(scan_pairs("curve_invariant_forms", r, bound, |x, y| {
            let profile = match build_factors(&ctx, &BigInt::from(x), &BigInt::from(y)) {
                Ok(p) => p,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            let curve = match frey_type1(&profile) {
                Ok(c) => c,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            if !(&(curve.a() + curve.b()) + curve.c()).is_zero() {
                return CaseOutcome::Fail("A + B + C != 0".into());
            }
            let (g4, g6, gd) = generic_invariants(curve.a(), curve.b());
            if curve.c4() != &g4 || curve.c6() != &g6 || curve.disc() != &gd {
                return CaseOutcome::Fail("closed forms differ from generic route".into());
            }
            let lhs = &curve.c4().pow(3) - &(curve.c6() * curve.c6());
            if lhs != curve.disc().scale(&BigInt::from(1728)) {
                return CaseOutcome::Fail("c4^3 - c6^2 != 1728 disc".into());
            }
            let vals = curve.beta_valuations();
            let t = profile.e() + 1;
            if vals.a != t || vals.b != t || vals.c != t {
                return CaseOutcome::Fail(format!(
                    "beta valuations ({}, {}, {}) != e + 1 = {t}",
                    vals.a, vals.b, vals.c
                ));
            }
            match j_lambda_check(&curve) {
                Ok(rep) if rep.all_ok() => CaseOutcome::Pass,
                Ok(rep) => CaseOutcome::Fail(format!("j(lambda) checks failed: {rep:?}")),
                Err(e) => CaseOutcome::Fail(e.to_string()),
            }
        }))
    }

    /// No additive reduction at any odd non-beta prime of the type-1 curve.
    pub fn reduction_shape(r: u64, bound: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        Ok(scan_pairs("reduction_shape", r, bound, |x, y| {
            let profile = match build_factors(&ctx, &BigInt::from(x), &BigInt::from(y)) {
                Ok(p) => p,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            let curve = match frey_type1(&profile) {
                Ok(c) => c,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            let mut qs: Vec<u64> = Vec::new();
            for j in 1..=3usize {
                let norm = profile.factor(j).norm();
                match arith::factor_bigint(&norm) {
                    Ok(fs) => {
                        for (q, _) in fs {
                            if q != 2 && q != r && !qs.contains(&q) {
                                qs.push(q);
                            }
                        }
                    }
                    Err(Error::DeskScaleExceeded { .. }) => return CaseOutcome::Skip,
                    Err(e) => return CaseOutcome::Fail(e.to_string()),
                }
            }
            for q in qs {
                let split = match factor_rational_prime(&ctx, q) {
                    Ok(s) => s,
                    Err(e) => return CaseOutcome::Fail(e.to_string()),
                };
                for (prime, _) in split {
                    match reduction_type(&curve, &prime) {
                        Ok(ReductionType::Additive) => {
                            return CaseOutcome::Fail(format!("additive reduction over {q}"))
                        }
                        Ok(_) => {}
                        Err(e) => return CaseOutcome::Fail(e.to_string()),
                    }
                }
            }
            CaseOutcome::Pass
        }))
    }

    /// For pairs admitting a valid (D, z) context at p = 5: the valuation
    /// balance holds, the ideal decomposition reconstructs, the level data
    /// covers every multiplicative prime, and when r | z the type-2 curve
    /// passes its valuation, j and inertia checks.
    pub fn solution_bookkeeping(r: u64, bound: u64) -> Result<PropertyResult> {
        let ctx = RingContext::new(r)?;
        let p = 5u64;
        Ok(scan_pairs("solution_bookkeeping", r, bound, |x, y| {
            let bx = BigInt::from(x);
            let by = BigInt::from(y);
            let candidates = match enumerate_candidates(&ctx, &bx, &by, p) {
                Ok(c) => c,
                Err(Error::ZeroValue) => return CaseOutcome::Skip,
                Err(Error::DeskScaleExceeded { .. }) => return CaseOutcome::Skip,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            let Some(cand) = candidates.into_iter().find(|c| c.valid) else {
                return CaseOutcome::Skip;
            };
            let profile = match build_factors(&ctx, &bx, &by) {
                Ok(pr) => pr,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            match valuation_balance_check(&profile, &cand.d, p, &cand.z) {
                Ok(true) => {}
                Ok(false) => return CaseOutcome::Fail("valuation balance failed".into()),
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            }
            let trivial = (&bx * &by * &cand.z).abs() <= BigInt::one();
            if trivial {
                return CaseOutcome::Pass;
            }
            match decompose_factors(&profile, &cand.d, p) {
                Ok(dec) => match dec.verify(&profile, &cand.d, p) {
                    Ok(checks) if checks.all_ok() => {}
                    Ok(checks) => {
                        return CaseOutcome::Fail(format!("decomposition checks {checks:?}"))
                    }
                    Err(e) => return CaseOutcome::Fail(e.to_string()),
                },
                Err(Error::DeskScaleExceeded { .. }) => return CaseOutcome::Skip,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            }
            let curve = match frey_type1(&profile) {
                Ok(c) => c,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            };
            match level_data(&curve, &cand.d, p) {
                Ok(level) => {
                    if !level.semistable_outside_two_and_beta() {
                        return CaseOutcome::Fail("additive prime in level data".into());
                    }
                    if !level.mp_covers_non_d_primes() {
                        return CaseOutcome::Fail(
                            "multiplicative prime outside D without p | v(disc)".into(),
                        );
                    }
                }
                Err(Error::DeskScaleExceeded { .. }) => return CaseOutcome::Skip,
                Err(e) => return CaseOutcome::Fail(e.to_string()),
            }
            let r_divides_z = !cand.z.is_zero() && (&cand.z % BigInt::from(r)).is_zero();
            if r_divides_z {
                let k = arith::valuation(&cand.z, r);
                let t2 = match frey_type2(&profile, p, &cand.z) {
                    Ok(c) => c,
                    Err(e) => return CaseOutcome::Fail(e.to_string()),
                };
                let jv = match j_beta_valuation(&t2, p, k) {
                    Ok(v) => v,
                    Err(e) => return CaseOutcome::Fail(e.to_string()),
                };
                if !inertia_criterion(jv, p) {
                    return CaseOutcome::Fail(format!("inertia criterion false at v(j) = {jv}"));
                }
            }
            CaseOutcome::Pass
        }))
    }
}

/// Batch-run all properties for each r at one bound.
pub fn sweep(r_list: &[u64], bound: u64) -> Result<SweepReport> {
    let cap = arith::bound_cap();
    if bound > cap {
        return Err(Error::DeskScaleExceeded {
            what: format!("bound {bound} exceeds the cap {cap} (set RRP_DESK_CAP_BOUND to raise)"),
        });
    }
    let mut results = Vec::new();
    for &r in r_list {
        results.push(properties::minimal_polynomial_checks(r)?);
        results.push(properties::alpha_difference_valuation(r)?);
        results.push(properties::ramified_prime_shape(r)?);
        results.push(properties::splitting_consistency(r, 50)?);
        results.push(properties::product_identity(r, bound)?);
        results.push(properties::factor_beta_profile(r, bound)?);
        results.push(properties::pairwise_ideal_gcd(r, bound)?);
        results.push(properties::beta_valuation_consistency(r, bound)?);
        results.push(properties::curve_invariant_forms(r, bound)?);
        results.push(properties::reduction_shape(r, bound)?);
        results.push(properties::solution_bookkeeping(r, bound)?);
    }
    let pass = results.iter().all(|p| p.pass);
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        command: "sweep".into(),
        r_list: r_list.to_vec(),
        bound,
        properties: results,
        pass,
    })
}
