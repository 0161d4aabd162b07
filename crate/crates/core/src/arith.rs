//! Rational-integer utilities: primality, factorization at desk scale,
//! valuations and exact roots.
//!
//! Factorization is trial division over a fixed sieve followed by Brent's
//! variant of Pollard rho on the cofactor. The cofactor must fit in
//! `RRP_DESK_CAP_BITS` bits (default 64) and every prime factor must fit in
//! a `u64`; anything larger is rejected with `Error::DeskScaleExceeded`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division bound used before handing the cofactor to Pollard rho.
const TRIAL_LIMIT: u64 = 10_000;

/// Default cap (in bits) on the cofactor left after trial division.
const DEFAULT_CAP_BITS: u64 = 64;

fn sieve_to(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes below `TRIAL_LIMIT`, computed once.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve_to(TRIAL_LIMIT))
}

/// Cofactor cap in bits, overridable through `RRP_DESK_CAP_BITS`.
pub fn factor_cap_bits() -> u64 {
    std::env::var("RRP_DESK_CAP_BITS")
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .map(|v| v.clamp(16, 192))
        .unwrap_or(DEFAULT_CAP_BITS)
}

/// Search/sweep bound cap, overridable through `RRP_DESK_CAP_BOUND`.
pub fn bound_cap() -> u64 {
    std::env::var("RRP_DESK_CAP_BOUND")
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .unwrap_or(200)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This base set is exact for all n < 2^64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin over `BigUint` with a fixed witness set; deterministic for
/// inputs below 2^64 and overwhelmingly reliable at desk scale beyond it.
pub fn is_prime_biguint(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = BigUint::one();
    let two = &one + &one;
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'witness: for &a in small_primes().iter().take(40) {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn brent_rho_u64(n: u64) -> u64 {
    // n odd composite with no factor below TRIAL_LIMIT. Deterministic: the
    // polynomial increment walks 1, 2, 3, ... until a factor splits off.
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let step = |v: u64| (mulmod(v, v, n) + c) % n;
        let mut y = 2u64;
        let mut x = y;
        let mut ys = y;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let chunk = 128u64.min(r - k);
                for _ in 0..chunk {
                    y = step(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += chunk;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time from the last checkpoint.
            g = 1;
            while g == 1 {
                ys = step(ys);
                g = x.abs_diff(ys).gcd(&n);
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = brent_rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

fn brent_rho_biguint(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u64);
        let mut y = x.clone();
        let mut d = one.clone();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_biguint_into(n: &BigUint, out: &mut Vec<u64>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(v) = n.to_u64() {
        factor_u64_into(v, out);
        return Ok(());
    }
    if is_prime_biguint(n) {
        return Err(Error::DeskScaleExceeded {
            what: format!("prime factor {n} does not fit in 64 bits"),
        });
    }
    let d = brent_rho_biguint(n);
    factor_biguint_into(&d, out)?;
    factor_biguint_into(&(n / &d), out)
}

/// Factor `|n|` into `(prime, exponent)` pairs sorted by prime.
///
/// Fails with `DeskScaleExceeded` when the post-trial-division cofactor is
/// wider than the configured cap or a prime factor does not fit in `u64`.
pub fn factor_bigint(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut m = n.abs().to_biguint().expect("abs is nonnegative");
    let mut primes: Vec<u64> = Vec::new();
    for &p in small_primes() {
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            primes.push(p);
        }
        if m.is_one() {
            break;
        }
    }
    if !m.is_one() {
        let cap = factor_cap_bits();
        if m.bits() > cap {
            return Err(Error::DeskScaleExceeded {
                what: format!(
                    "cofactor of {} bits exceeds the {}-bit cap (set RRP_DESK_CAP_BITS to raise)",
                    m.bits(),
                    cap
                ),
            });
        }
        factor_biguint_into(&m, &mut primes)?;
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// q-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, q: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let q = BigInt::from(q);
    let mut m = n.abs();
    let mut v = 0;
    while (&m % &q).is_zero() {
        m /= &q;
        v += 1;
    }
    v
}

/// Exact p-th root: `Some(z)` iff `z^p == n`. Negative `n` requires odd `p`.
pub fn exact_root(n: &BigInt, p: u64) -> Option<BigInt> {
    if n.is_negative() && p % 2 == 0 {
        return None;
    }
    let r = n.nth_root(p as u32);
    if num_traits::pow::pow(r.clone(), p as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// True iff `n` is `r^k` for some `k >= 0`.
pub fn is_power_of(n: &BigInt, r: u64) -> bool {
    if n.is_zero() || n.is_negative() {
        return false;
    }
    let r = BigInt::from(r);
    let mut m = n.clone();
    while (&m % &r).is_zero() {
        m /= &r;
    }
    m.is_one()
}
