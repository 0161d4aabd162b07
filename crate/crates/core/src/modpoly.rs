//! Dense polynomials over a prime field F_q and their complete
//! factorization: squarefree decomposition, distinct-degree splitting and
//! Cantor-Zassenhaus equal-degree splitting.
//!
//! Degrees stay below ten in this crate, but q ranges up to the 64-bit prime
//! factors of element norms, so the splitting steps use modular powering
//! rather than root scans. The equal-degree step draws its random polynomials
//! from a fixed-seed xorshift generator: results are deterministic for a
//! given input and returned in sorted order.

use num_bigint::BigUint;
use num_traits::{One, Zero};

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, q);
        }
        b = mulmod(b, b, q);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, q: u64) -> u64 {
    powmod(a, q - 2, q)
}

/// A polynomial over F_q, coefficients ascending and trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModPoly {
    coeffs: Vec<u64>,
    q: u64,
}

impl ModPoly {
    pub fn new(q: u64, coeffs: &[u64]) -> Self {
        let mut c: Vec<u64> = coeffs.iter().map(|&v| v % q).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { coeffs: c, q }
    }

    pub fn from_signed(q: u64, coeffs: &[i64]) -> Self {
        let qi = q as i64;
        let c: Vec<u64> = coeffs.iter().map(|&v| v.rem_euclid(qi) as u64).collect();
        ModPoly::new(q, &c)
    }

    pub fn zero(q: u64) -> Self {
        ModPoly { coeffs: vec![], q }
    }

    pub fn one(q: u64) -> Self {
        ModPoly::new(q, &[1])
    }

    pub fn x(q: u64) -> Self {
        ModPoly::new(q, &[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().expect("lead of zero polynomial")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0u64; n];
        for (i, slot) in c.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + b) % self.q;
        }
        ModPoly::new(self.q, &c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0u64; n];
        for (i, slot) in c.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + self.q - b) % self.q;
        }
        ModPoly::new(self.q, &c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.q);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.q)) % self.q;
            }
        }
        ModPoly::new(self.q, &c)
    }

    pub fn scale(&self, s: u64) -> Self {
        let c: Vec<u64> = self.coeffs.iter().map(|&v| mulmod(v, s, self.q)).collect();
        ModPoly::new(self.q, &c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lead(), self.q))
    }

    /// Quotient and remainder; `other` must be nonzero.
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let q = self.q;
        let dlead_inv = invmod(other.lead(), q);
        let dd = other.coeffs.len();
        if self.coeffs.len() < dd {
            return (ModPoly::zero(q), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd - 1];
            if top == 0 {
                continue;
            }
            let coef = mulmod(top, dlead_inv, q);
            quot[i] = coef;
            for (k, &dc) in other.coeffs.iter().enumerate() {
                let sub = mulmod(coef, dc, q);
                rem[i + k] = (rem[i + k] + q - sub) % q;
            }
        }
        (ModPoly::new(q, &quot), ModPoly::new(q, &rem))
    }

    pub fn rem(&self, other: &Self) -> Self {
        self.div_rem(other).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(self.q);
        }
        let c: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| mulmod(v, (i as u64) % self.q, self.q))
            .collect();
        ModPoly::new(self.q, &c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, self.q) + c) % self.q;
        }
        acc
    }

    fn mulrem(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// self^e mod `modulus` for a BigUint exponent.
    pub fn powmod(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = ModPoly::one(self.q);
        if e.is_zero() {
            return acc;
        }
        let base = self.rem(modulus);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mulrem(&acc, modulus);
            if e.bit(i) {
                acc = acc.mulrem(&base, modulus);
            }
        }
        acc
    }

    /// Frobenius power: self^q mod `modulus`.
    fn pow_q(&self, modulus: &Self) -> Self {
        self.powmod(&BigUint::from(self.q), modulus)
    }
}

/// Squarefree decomposition: returns pairwise-coprime squarefree monic
/// polynomials with their multiplicities in `f`.
fn squarefree_parts(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let q = f.modulus();
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let f = f.monic();
    let fp = f.derivative();
    if fp.is_zero() {
        // f = g(x^q); over the prime field the coefficients are fixed by
        // Frobenius, so g is read off directly.
        let step = q as usize;
        let g_coeffs: Vec<u64> = f.coeffs().iter().step_by(step).copied().collect();
        let g = ModPoly::new(q, &g_coeffs);
        for (h, m) in squarefree_parts(&g) {
            out.push((h, m * q as u32));
        }
        return out;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let part = w.div_exact(&y);
        if part.degree() > 0 {
            out.push((part, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let step = q as usize;
        let g_coeffs: Vec<u64> = c.coeffs().iter().step_by(step).copied().collect();
        let g = ModPoly::new(q, &g_coeffs);
        for (h, m) in squarefree_parts(&g) {
            out.push((h, m * q as u32));
        }
    }
    out
}

/// Distinct-degree splitting of a squarefree monic polynomial: returns
/// `(product_of_irreducibles, their_common_degree)` pairs.
fn distinct_degree_parts(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f_star = f.clone();
    let mut h = ModPoly::x(f.modulus());
    let mut k = 1usize;
    while f_star.degree() >= 2 * k {
        h = h.pow_q(&f_star);
        let g = h.sub(&ModPoly::x(f.modulus())).gcd(&f_star);
        if g.degree() > 0 {
            out.push((g.clone(), k));
            f_star = f_star.div_exact(&g);
            h = h.rem(&f_star);
        }
        k += 1;
    }
    if f_star.degree() > 0 {
        let d = f_star.degree();
        out.push((f_star, d));
    }
    out
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Equal-degree splitting (Cantor-Zassenhaus): `f` is a squarefree monic
/// product of irreducibles all of degree `k`.
fn equal_degree_split(f: &ModPoly, k: usize, rng: &mut XorShift) -> Vec<ModPoly> {
    let q = f.modulus();
    let n = f.degree();
    if n == k {
        return vec![f.monic()];
    }
    loop {
        let deg = n - 1;
        let coeffs: Vec<u64> = (0..=deg).map(|_| rng.next() % q).collect();
        let h = ModPoly::new(q, &coeffs);
        if h.degree() == 0 {
            continue;
        }
        let g = h.gcd(f);
        if g.degree() > 0 && g.degree() < n {
            let mut left = equal_degree_split(&g, k, rng);
            left.extend(equal_degree_split(&f.div_exact(&g), k, rng));
            return left;
        }
        let w = if q == 2 {
            // Trace map: h + h^2 + ... + h^(2^(k-1)).
            let mut acc = h.clone();
            let mut term = h.clone();
            for _ in 1..k {
                term = term.mulrem(&term, f);
                acc = acc.add(&term).rem(f);
            }
            acc
        } else {
            let exp = (BigUint::from(q).pow(k as u32) - BigUint::one()) / BigUint::from(2u64);
            h.powmod(&exp, f).sub(&ModPoly::one(q))
        };
        let g = w.gcd(f);
        if g.degree() > 0 && g.degree() < n {
            let mut left = equal_degree_split(&g, k, rng);
            left.extend(equal_degree_split(&f.div_exact(&g), k, rng));
            return left;
        }
    }
}

/// Full factorization into monic irreducibles with multiplicity, sorted by
/// degree then coefficients.
pub fn factor(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let seed = f
        .coeffs()
        .iter()
        .fold(f.modulus() | 1, |acc, &c| acc.wrapping_mul(0x9e3779b97f4a7c15) ^ c)
        | 1;
    let mut rng = XorShift(seed);
    let mut out: Vec<(ModPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_parts(f) {
        for (prod, k) in distinct_degree_parts(&part) {
            for irr in equal_degree_split(&prod, k, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs())
            .cmp(&(b.0.degree(), b.0.coeffs()))
    });
    let mut merged: Vec<(ModPoly, u32)> = Vec::new();
    for (p, m) in out {
        match merged.last_mut() {
            Some((lp, lm)) if *lp == p => *lm += m,
            _ => merged.push((p, m)),
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi7(q: u64) -> ModPoly {
        // t^3 + t^2 - 2t - 1
        ModPoly::from_signed(q, &[-1, -2, 1, 1])
    }

    #[test]
    fn psi7_mod_13_splits_into_known_roots() {
        let f = psi7(13);
        let factors = factor(&f);
        assert_eq!(factors.len(), 3);
        // Roots are 7, 8, 10, so the monic linear factors are t - root.
        let mut roots: Vec<u64> = factors
            .iter()
            .map(|(p, m)| {
                assert_eq!(p.degree(), 1);
                assert_eq!(*m, 1);
                (13 - p.coeffs()[0]) % 13
            })
            .collect();
        roots.sort_unstable();
        assert_eq!(roots, vec![7, 8, 10]);
    }

    #[test]
    fn psi7_mod_2_is_irreducible() {
        let f = psi7(2);
        let factors = factor(&f);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.degree(), 3);
        assert_eq!(factors[0].1, 1);
    }

    #[test]
    fn psi7_mod_7_is_a_perfect_cube() {
        let f = psi7(7);
        let factors = factor(&f);
        assert_eq!(factors.len(), 1);
        let (p, m) = &factors[0];
        assert_eq!(*m, 3);
        // (t - 2)^3 mod 7: the single linear factor is t + 5.
        assert_eq!(p.coeffs(), &[5, 1]);
    }

    #[test]
    fn factor_product_reconstructs_input() {
        for q in [2u64, 3, 5, 11, 29, 101, 413898707503] {
            let f = psi7(q);
            let mut prod = ModPoly::one(q);
            for (p, m) in factor(&f) {
                for _ in 0..m {
                    prod = prod.mul(&p);
                }
            }
            assert_eq!(prod, f.monic(), "reconstruction failed mod {q}");
        }
    }

    #[test]
    fn division_and_gcd_agree() {
        let q = 29;
        let a = ModPoly::new(q, &[3, 0, 1]).mul(&ModPoly::new(q, &[5, 1]));
        let (quot, rem) = a.div_rem(&ModPoly::new(q, &[5, 1]));
        assert!(rem.is_zero());
        assert_eq!(quot, ModPoly::new(q, &[3, 0, 1]));
        let g = a.gcd(&ModPoly::new(q, &[5, 1]));
        assert_eq!(g, ModPoly::new(q, &[5, 1]).monic());
    }
}
