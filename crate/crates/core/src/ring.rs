//! Exact arithmetic in O_K = Z[a] where a = zeta_r + zeta_r^(-1) generates
//! the maximal totally real subfield K of the r-th cyclotomic field, r an odd
//! prime > 5.
//!
//! Elements are integer coefficient vectors in the power basis of `a`; the
//! ring is monogenic, so every product reduces to this basis. The minimal
//! polynomial of `a` is built symbolically from the identity
//! `x^d * psi(x + 1/x) = 1 + x + ... + x^(r-1) / x^d` using the
//! second-kind recurrence `V_{k+1} = t*V_k - V_{k-1}` for `x^k + x^(-k)`,
//! so no floating point is involved. The norm is the product of all Galois
//! conjugates, and the beta-adic valuation (beta the unique prime over r)
//! is the r-adic valuation of the norm: beta is totally ramified with
//! residue degree one, so no other prime contributes r-powers.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Immutable per-r data: minimal polynomial, the table of
/// `alpha_j = zeta^j + zeta^(-j)` in the power basis, and cached conjugate
/// power tables. Shareable across threads.
#[derive(Debug)]
pub struct RingContext {
    r: u64,
    degree: usize,
    min_poly: Vec<BigInt>,
    alpha_table: Vec<Vec<BigInt>>,
    conj_pow: Vec<Vec<Vec<BigInt>>>,
}

fn add_into(acc: &mut Vec<BigInt>, v: &[BigInt]) {
    if acc.len() < v.len() {
        acc.resize(v.len(), BigInt::zero());
    }
    for (slot, c) in acc.iter_mut().zip(v.iter()) {
        *slot += c;
    }
}

fn shift_up(v: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(BigInt::zero());
    out.extend_from_slice(v);
    out
}

/// Reduce a raw coefficient vector modulo the monic `min_poly`, returning a
/// vector of length exactly `degree`.
fn reduce_mod(min_poly: &[BigInt], mut w: Vec<BigInt>) -> Vec<BigInt> {
    let d = min_poly.len() - 1;
    for i in (d..w.len()).rev() {
        let c = std::mem::replace(&mut w[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (k, pk) in min_poly.iter().enumerate().take(d) {
            let delta = &c * pk;
            w[i - d + k] -= delta;
        }
    }
    w.truncate(d);
    w.resize(d, BigInt::zero());
    w
}

fn mul_raw(min_poly: &[BigInt], a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let d = min_poly.len() - 1;
    let mut w = vec![BigInt::zero(); 2 * d - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            w[i + j] += ai * bj;
        }
    }
    reduce_mod(min_poly, w)
}

impl RingContext {
    /// Build the context for a prime r > 5.
    pub fn new(r: u64) -> Result<Arc<Self>> {
        if r <= 5 || !arith::is_prime_u64(r) {
            return Err(Error::InvalidRingPrime(r));
        }
        let d = ((r - 1) / 2) as usize;

        // psi = 1 + V_1 + V_2 + ... + V_d with V_0 = 2, V_1 = t.
        let mut v_prev: Vec<BigInt> = vec![BigInt::from(2)];
        let mut v_cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
        let mut min_poly: Vec<BigInt> = vec![BigInt::one()];
        add_into(&mut min_poly, &v_cur);
        for _ in 2..=d {
            let mut v_next = shift_up(&v_cur);
            for (slot, c) in v_next.iter_mut().zip(v_prev.iter()) {
                *slot -= c;
            }
            add_into(&mut min_poly, &v_next);
            v_prev = v_cur;
            v_cur = v_next;
        }
        debug_assert_eq!(min_poly.len(), d + 1);
        debug_assert!(min_poly[d].is_one());

        // alpha_j by the same recurrence, reduced into the power basis.
        let mut alpha_table: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
        let mut a0 = vec![BigInt::zero(); d];
        a0[0] = BigInt::from(2);
        let mut a1 = vec![BigInt::zero(); d];
        a1[1] = BigInt::one();
        alpha_table.push(a0);
        alpha_table.push(a1);
        for j in 2..=d {
            let prev = &alpha_table[j - 1];
            let prev2 = &alpha_table[j - 2];
            let mut w = shift_up(prev);
            for (slot, c) in w.iter_mut().zip(prev2.iter()) {
                *slot -= c;
            }
            alpha_table.push(reduce_mod(&min_poly, w));
        }

        // conj_pow[m-1][k] = alpha_m^k for m = 1..=d, k = 0..d.
        let mut conj_pow = Vec::with_capacity(d);
        for alpha_m in alpha_table.iter().skip(1) {
            let mut pows = Vec::with_capacity(d);
            let mut cur = vec![BigInt::zero(); d];
            cur[0] = BigInt::one();
            pows.push(cur.clone());
            for _ in 1..d {
                cur = mul_raw(&min_poly, &cur, alpha_m);
                pows.push(cur.clone());
            }
            conj_pow.push(pows);
        }

        Ok(Arc::new(RingContext {
            r,
            degree: d,
            min_poly,
            alpha_table,
            conj_pow,
        }))
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// Field degree (r - 1) / 2.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Ascending coefficients of the monic minimal polynomial of `a`.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    /// Power-basis coordinates of alpha_j.
    pub fn alpha_raw(&self, j: usize) -> &[BigInt] {
        &self.alpha_table[j]
    }

    /// alpha_j = zeta^j + zeta^(-j) as a ring element, 0 <= j <= degree.
    pub fn alpha(self: &Arc<Self>, j: usize) -> Result<RingElement> {
        if j > self.degree {
            return Err(Error::AlphaIndexOutOfRange {
                j,
                max: self.degree,
            });
        }
        Ok(RingElement {
            ctx: Arc::clone(self),
            coeffs: self.alpha_table[j].clone(),
        })
    }

    /// Embed a rational integer.
    pub fn integer(self: &Arc<Self>, n: impl Into<BigInt>) -> RingElement {
        let mut coeffs = vec![BigInt::zero(); self.degree];
        coeffs[0] = n.into();
        RingElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    pub fn zero(self: &Arc<Self>) -> RingElement {
        self.integer(0)
    }

    pub fn one(self: &Arc<Self>) -> RingElement {
        self.integer(1)
    }

    /// Element from power-basis coefficients; longer vectors are reduced
    /// modulo the minimal polynomial.
    pub fn element(self: &Arc<Self>, coeffs: Vec<BigInt>) -> RingElement {
        let coeffs = if coeffs.len() > self.degree {
            reduce_mod(&self.min_poly, coeffs)
        } else {
            let mut c = coeffs;
            c.resize(self.degree, BigInt::zero());
            c
        };
        RingElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// Fold an exponent of zeta into the representative index in [0, degree].
    pub fn fold_index(&self, i: u64) -> usize {
        let m = (i % self.r) as usize;
        if m > self.degree {
            self.r as usize - m
        } else {
            m
        }
    }
}

/// An algebraic integer of O_K in the power basis of `a`.
#[derive(Clone)]
pub struct RingElement {
    ctx: Arc<RingContext>,
    coeffs: Vec<BigInt>,
}

impl RingElement {
    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Returns `Some(n)` iff the element is the rational integer n.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Multiply by a rational integer.
    pub fn scale(&self, n: &BigInt) -> RingElement {
        RingElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> RingElement {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the automorphism determined by `zeta -> zeta^m` on the
    /// coordinate level, with m already folded into [1, degree].
    fn conjugate_folded(&self, m: usize) -> RingElement {
        let d = self.ctx.degree;
        let pows = &self.ctx.conj_pow[m - 1];
        let mut out = vec![BigInt::zero(); d];
        for (k, ck) in self.coeffs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (slot, base) in out.iter_mut().zip(pows[k].iter()) {
                *slot += ck * base;
            }
        }
        RingElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: out,
        }
    }

    /// The automorphism induced by zeta -> zeta^i, for gcd(i, r) = 1.
    /// Norm and beta-adic valuation are invariant under it.
    pub fn galois(&self, i: u64) -> Result<RingElement> {
        if i % self.ctx.r == 0 {
            return Err(Error::NotCoprimeToR { i, r: self.ctx.r });
        }
        let m = self.ctx.fold_index(i);
        Ok(self.conjugate_folded(m))
    }

    /// Field norm: the product of all Galois conjugates, a rational integer
    /// with the conjugate-product sign convention. Multiplicative.
    pub fn norm(&self) -> BigInt {
        let mut acc = self.ctx.one();
        for m in 1..=self.ctx.degree {
            acc = &acc * &self.conjugate_folded(m);
        }
        acc.as_integer()
            .expect("norm is a rational integer by Galois invariance")
    }

    /// Valuation at beta, the unique (totally ramified, residue degree one)
    /// prime over r: computed as the r-adic valuation of |norm|.
    pub fn beta_valuation(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(arith::valuation(&self.norm(), self.ctx.r))
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.r == other.ctx.r && self.coeffs == other.coeffs
    }
}

impl Eq for RingElement {}

fn assert_same_ctx(a: &RingElement, b: &RingElement) {
    assert_eq!(
        a.ctx.r, b.ctx.r,
        "ring elements from different contexts (r = {} vs {})",
        a.ctx.r, b.ctx.r
    );
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        assert_same_ctx(self, rhs);
        RingElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        assert_same_ctx(self, rhs);
        RingElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        assert_same_ctx(self, rhs);
        RingElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: mul_raw(&self.ctx.min_poly, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        &self + &rhs
    }
}

impl std::ops::Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl std::ops::Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        &self * &rhs
    }
}

impl std::ops::Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if k == 0 {
                    write!(f, "{c}")?;
                } else if c.is_one() {
                    write!(f, "a{}", if k > 1 { format!("^{k}") } else { String::new() })?;
                } else {
                    write!(f, "{c}*a{}", if k > 1 { format!("^{k}") } else { String::new() })?;
                }
            } else {
                let sign = if c.is_negative() { " - " } else { " + " };
                let mag = c.abs();
                write!(f, "{sign}")?;
                if k == 0 {
                    write!(f, "{mag}")?;
                } else if mag.is_one() {
                    write!(f, "a{}", if k > 1 { format!("^{k}") } else { String::new() })?;
                } else {
                    write!(f, "{mag}*a{}", if k > 1 { format!("^{k}") } else { String::new() })?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement(r={}, {})", self.ctx.r, self)
    }
}
