//! Integral ideals of O_K as full-rank integer lattices in Hermite normal
//! form, plus prime splitting via factorization of the minimal polynomial.
//!
//! Columns form an upper-triangular Z-basis in the power basis of `a`:
//! column j is supported on rows 0..=j, diagonals are positive and every
//! off-diagonal entry is reduced modulo the diagonal of its row. This form
//! is canonical, so ideal equality is matrix equality and the ideal gcd
//! (sum) and product reduce to re-running HNF on generating sets. The norm
//! is the product of the diagonal, i.e. the lattice index in O_K.
//!
//! Since O_K = Z[a] is monogenic with trivial conductor, the splitting of a
//! rational prime q mirrors the factorization of the minimal polynomial
//! mod q for every q.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::modpoly::{self, ModPoly};
use crate::ring::{RingContext, RingElement};

/// An integral ideal as a canonical HNF lattice.
#[derive(Clone, Debug)]
pub struct IdealHnf {
    ctx: Arc<RingContext>,
    /// cols[j] has length d with support in rows 0..=j.
    cols: Vec<Vec<BigInt>>,
}

impl PartialEq for IdealHnf {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.r() == other.ctx.r() && self.cols == other.cols
    }
}

impl Eq for IdealHnf {}

fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Column-style HNF of a spanning set; fails if the span has rank < d.
fn hnf_from_vectors(ctx: &Arc<RingContext>, gens: Vec<Vec<BigInt>>) -> Result<IdealHnf> {
    let d = ctx.degree();
    let mut work: Vec<Vec<BigInt>> = gens.into_iter().filter(|v| !is_zero_vec(v)).collect();
    let mut cols: Vec<Option<Vec<BigInt>>> = vec![None; d];

    for row in (0..d).rev() {
        loop {
            let live: Vec<usize> = work
                .iter()
                .enumerate()
                .filter(|(_, w)| !w[row].is_zero())
                .map(|(i, _)| i)
                .collect();
            if live.len() <= 1 {
                if let Some(&i) = live.first() {
                    cols[row] = Some(work.swap_remove(i));
                }
                break;
            }
            let (i, j) = (live[0], live[1]);
            let a = work[i][row].clone();
            let b = work[j][row].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let ca = &a / &g;
            let cb = &b / &g;
            let mut new_i = vec![BigInt::zero(); d];
            let mut new_j = vec![BigInt::zero(); d];
            for k in 0..d {
                new_i[k] = &s * &work[i][k] + &t * &work[j][k];
                new_j[k] = &cb * &work[i][k] - &ca * &work[j][k];
            }
            work[i] = new_i;
            work[j] = new_j;
        }
    }

    let mut cols: Vec<Vec<BigInt>> = cols
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::ZeroElement)?;

    for (j, col) in cols.iter_mut().enumerate() {
        if col[j].is_negative() {
            for c in col.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
    }
    // Reduce off-diagonal entries: 0 <= cols[j][i] < cols[i][i] for i < j.
    for j in 0..d {
        for i in (0..j).rev() {
            let q = cols[j][i].div_floor(&cols[i][i]);
            if q.is_zero() {
                continue;
            }
            let pivot = cols[i].clone();
            for k in 0..=i {
                let delta = &q * &pivot[k];
                cols[j][k] -= delta;
            }
        }
    }

    Ok(IdealHnf {
        ctx: Arc::clone(ctx),
        cols,
    })
}

impl IdealHnf {
    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    /// The unit ideal (identity lattice).
    pub fn unit(ctx: &Arc<RingContext>) -> IdealHnf {
        let d = ctx.degree();
        let mut cols = vec![vec![BigInt::zero(); d]; d];
        for (j, col) in cols.iter_mut().enumerate() {
            col[j] = BigInt::one();
        }
        IdealHnf {
            ctx: Arc::clone(ctx),
            cols,
        }
    }

    /// HNF lattice spanned by O_K-multiples of the given generators.
    pub fn from_generators(ctx: &Arc<RingContext>, gens: &[RingElement]) -> Result<IdealHnf> {
        let d = ctx.degree();
        let alpha = ctx.alpha(1)?;
        let mut vecs = Vec::with_capacity(gens.len() * d);
        for g in gens {
            let mut cur = g.clone();
            for _ in 0..d {
                vecs.push(cur.coeffs().to_vec());
                cur = &cur * &alpha;
            }
        }
        hnf_from_vectors(ctx, vecs)
    }

    /// Principal ideal (a); errors on the zero element.
    pub fn principal(a: &RingElement) -> Result<IdealHnf> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        IdealHnf::from_generators(a.ctx(), std::slice::from_ref(a))
    }

    /// Columns of the HNF basis.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.cols
    }

    /// Ideal norm = lattice index = product of the diagonal; positive.
    pub fn norm(&self) -> BigInt {
        let mut n = BigInt::one();
        for (j, col) in self.cols.iter().enumerate() {
            n *= &col[j];
        }
        n
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    fn assert_ctx(&self, other: &IdealHnf) -> Result<()> {
        if self.ctx.r() != other.ctx.r() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Ideal sum A + B, i.e. the ideal gcd.
    pub fn sum(&self, other: &IdealHnf) -> Result<IdealHnf> {
        self.assert_ctx(other)?;
        let mut vecs = self.cols.clone();
        vecs.extend(other.cols.iter().cloned());
        hnf_from_vectors(&self.ctx, vecs)
    }

    /// Ideal product A * B.
    pub fn product(&self, other: &IdealHnf) -> Result<IdealHnf> {
        self.assert_ctx(other)?;
        let mut vecs = Vec::with_capacity(self.cols.len() * other.cols.len());
        for a in &self.cols {
            let ea = self.ctx.element(a.clone());
            for b in &other.cols {
                let eb = self.ctx.element(b.clone());
                vecs.push((&ea * &eb).coeffs().to_vec());
            }
        }
        hnf_from_vectors(&self.ctx, vecs)
    }

    /// A^k by square-and-multiply; A^0 is the unit ideal.
    pub fn pow(&self, k: u64) -> Result<IdealHnf> {
        let mut acc = IdealHnf::unit(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.product(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base)?;
            }
        }
        Ok(acc)
    }

    /// Membership of a coordinate vector by back-substitution.
    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        let d = self.ctx.degree();
        let mut rem = v.to_vec();
        for j in (0..d).rev() {
            if rem[j].is_zero() {
                continue;
            }
            let (q, r) = rem[j].div_rem(&self.cols[j][j]);
            if !r.is_zero() {
                return false;
            }
            for (slot, base) in rem.iter_mut().zip(self.cols[j].iter()).take(j + 1) {
                *slot -= &q * base;
            }
        }
        true
    }

    pub fn contains_element(&self, a: &RingElement) -> bool {
        self.contains_vector(a.coeffs())
    }

    /// True iff other is contained in self (self divides other).
    pub fn contains_ideal(&self, other: &IdealHnf) -> bool {
        other.cols.iter().all(|c| self.contains_vector(c))
    }

    /// Closure under multiplication by `a` (an O_K-module check).
    pub fn is_alpha_stable(&self) -> bool {
        let alpha = match self.ctx.alpha(1) {
            Ok(a) => a,
            Err(_) => return false,
        };
        self.cols.iter().all(|c| {
            let prod = &self.ctx.element(c.clone()) * &alpha;
            self.contains_vector(prod.coeffs())
        })
    }
}

/// A prime ideal over the rational prime q, stored both as two-element data
/// (q, g(a)) and as its HNF lattice.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    q: u64,
    gen_poly: Vec<BigInt>,
    e: u32,
    f: u32,
    lattice: IdealHnf,
}

impl PrimeIdeal {
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic irreducible factor of the minimal polynomial mod q, lifted to
    /// coefficients in [0, q).
    pub fn gen_poly(&self) -> &[BigInt] {
        &self.gen_poly
    }

    /// Ramification index.
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Residue degree; the lattice norm is q^f.
    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn lattice(&self) -> &IdealHnf {
        &self.lattice
    }

    pub fn is_beta(&self) -> bool {
        self.q == self.lattice.ctx.r()
    }

    /// Largest k with A contained in P^k, by bounded iteration of
    /// membership tests against successive powers; the bound v_q(norm(A))
    /// guarantees termination.
    pub fn valuation_of(&self, a: &IdealHnf) -> Result<u64> {
        self.lattice.assert_ctx(a)?;
        let bound = arith::valuation(&a.norm(), self.q);
        let mut power = IdealHnf::unit(&self.lattice.ctx);
        let mut k = 0u64;
        while k < bound {
            power = power.product(&self.lattice)?;
            if !power.contains_ideal(a) {
                break;
            }
            k += 1;
        }
        Ok(k)
    }

    /// Valuation of a principal ideal (a).
    pub fn valuation_of_element(&self, a: &RingElement) -> Result<u64> {
        self.valuation_of(&IdealHnf::principal(a)?)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.lattice == other.lattice
    }
}

impl Eq for PrimeIdeal {}

/// Splitting of the rational prime q in O_K: factors the minimal polynomial
/// mod q and returns one prime ideal (q, g_i(a)) per irreducible factor,
/// paired with its exponent in (q). Sorted deterministically.
pub fn factor_rational_prime(ctx: &Arc<RingContext>, q: u64) -> Result<Vec<(PrimeIdeal, u32)>> {
    if !arith::is_prime_u64(q) {
        return Err(Error::NotPrime(q));
    }
    let d = ctx.degree();
    let qi = BigInt::from(q);
    let coeffs: Vec<u64> = ctx
        .min_poly()
        .iter()
        .map(|c| {
            c.mod_floor(&qi)
                .to_u64()
                .expect("residue fits in u64 because q does")
        })
        .collect();
    let psi_q = ModPoly::new(q, &coeffs);
    let mut out = Vec::new();
    for (g, mult) in modpoly::factor(&psi_q) {
        let gen_poly: Vec<BigInt> = g.coeffs().iter().map(|&c| BigInt::from(c)).collect();
        let f = g.degree() as u32;
        let gen_elt = ctx.element(gen_poly.clone());
        let gens = vec![ctx.integer(qi.clone()), gen_elt];
        let lattice = IdealHnf::from_generators(ctx, &gens)?;
        debug_assert_eq!(lattice.norm(), qi.pow(f));
        out.push((
            PrimeIdeal {
                q,
                gen_poly,
                e: mult,
                f,
                lattice,
            },
            mult,
        ));
    }
    debug_assert_eq!(
        out.iter().map(|(p, m)| p.f * m).sum::<u32>() as usize,
        d,
        "sum of e_i * f_i must equal the field degree"
    );
    Ok(out)
}

/// The unique prime over r.
pub fn beta_ideal(ctx: &Arc<RingContext>) -> Result<PrimeIdeal> {
    let mut primes = factor_rational_prime(ctx, ctx.r())?;
    debug_assert_eq!(primes.len(), 1, "r is totally ramified");
    Ok(primes.swap_remove(0).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn unit_ideal_properties() {
        let ctx = RingContext::new(7).unwrap();
        let one = IdealHnf::unit(&ctx);
        assert!(one.is_unit());
        assert_eq!(one.norm(), bi(1));
        assert!(one.contains_element(&ctx.alpha(2).unwrap()));
    }

    #[test]
    fn principal_ideal_norms() {
        let ctx = RingContext::new(7).unwrap();
        assert_eq!(IdealHnf::principal(&ctx.one()).unwrap().norm(), bi(1));
        let e = &ctx.integer(5) + &ctx.alpha(1).unwrap().scale(&bi(2));
        assert_eq!(IdealHnf::principal(&e).unwrap().norm(), bi(43));
        assert_eq!(
            IdealHnf::principal(&ctx.integer(7)).unwrap().norm(),
            bi(343)
        );
        assert!(IdealHnf::principal(&ctx.zero()).is_err());
    }

    #[test]
    fn principal_norm_matches_element_norm() {
        let ctx = RingContext::new(11).unwrap();
        let e = ctx.element(vec![bi(4), bi(-3), bi(2), bi(1), bi(-1)]);
        assert_eq!(IdealHnf::principal(&e).unwrap().norm(), e.norm().abs());
    }

    #[test]
    fn hnf_is_canonical_under_permutation() {
        let ctx = RingContext::new(7).unwrap();
        let a = ctx.element(vec![bi(3), bi(1), bi(0)]);
        let b = ctx.element(vec![bi(0), bi(2), bi(5)]);
        let i1 = IdealHnf::from_generators(&ctx, &[a.clone(), b.clone()]).unwrap();
        let i2 = IdealHnf::from_generators(&ctx, &[b, a]).unwrap();
        assert_eq!(i1, i2);
    }

    #[test]
    fn sum_absorption_and_idempotence() {
        let ctx = RingContext::new(7).unwrap();
        let e = &ctx.integer(5) + &ctx.alpha(1).unwrap().scale(&bi(2));
        let a = IdealHnf::principal(&e).unwrap();
        let one = IdealHnf::unit(&ctx);
        assert_eq!(a.sum(&one).unwrap(), one);
        assert_eq!(a.sum(&a).unwrap(), a);
    }

    #[test]
    fn product_with_unit_is_identity() {
        let ctx = RingContext::new(7).unwrap();
        let e = ctx.element(vec![bi(2), bi(0), bi(3)]);
        let a = IdealHnf::principal(&e).unwrap();
        assert_eq!(a.product(&IdealHnf::unit(&ctx)).unwrap(), a);
    }

    #[test]
    fn product_norm_multiplicative() {
        let ctx = RingContext::new(7).unwrap();
        let a = IdealHnf::principal(&ctx.element(vec![bi(2), bi(1), bi(0)])).unwrap();
        let b = IdealHnf::principal(&ctx.element(vec![bi(1), bi(-1), bi(2)])).unwrap();
        assert_eq!(a.product(&b).unwrap().norm(), a.norm() * b.norm());
    }

    #[test]
    fn splitting_r_is_totally_ramified() {
        for r in [7u64, 11, 13] {
            let ctx = RingContext::new(r).unwrap();
            let primes = factor_rational_prime(&ctx, r).unwrap();
            assert_eq!(primes.len(), 1);
            let (beta, mult) = &primes[0];
            assert_eq!(*mult, ctx.degree() as u32);
            assert_eq!(beta.e(), ctx.degree() as u32);
            assert_eq!(beta.f(), 1);
            assert_eq!(beta.lattice().norm(), BigInt::from(r));
            // beta^d = (r)
            let pow = beta.lattice().pow(ctx.degree() as u64).unwrap();
            let r_ideal = IdealHnf::principal(&ctx.integer(r as i64)).unwrap();
            assert_eq!(pow, r_ideal);
        }
    }

    #[test]
    fn splitting_13_and_2_for_r7() {
        let ctx = RingContext::new(7).unwrap();
        let split = factor_rational_prime(&ctx, 13).unwrap();
        assert_eq!(split.len(), 3);
        for (p, m) in &split {
            assert_eq!((p.e(), p.f(), *m), (1, 1, 1));
            assert_eq!(p.lattice().norm(), bi(13));
        }
        let inert = factor_rational_prime(&ctx, 2).unwrap();
        assert_eq!(inert.len(), 1);
        assert_eq!((inert[0].0.e(), inert[0].0.f()), (1, 3));
        assert_eq!(inert[0].0.lattice().norm(), bi(8));
    }

    #[test]
    fn prime_products_reconstruct_q() {
        // High-degree rings included: r = 17 and 19 push the splitting
        // machinery through degrees 8 and 9.
        for r in [7u64, 17, 19] {
            let ctx = RingContext::new(r).unwrap();
            for q in [2u64, 3, 5, 7, 13, 29, 43, 103] {
                let split = factor_rational_prime(&ctx, q).unwrap();
                let mut acc = IdealHnf::unit(&ctx);
                let mut efsum = 0u32;
                for (p, m) in &split {
                    acc = acc.product(&p.lattice().pow(*m as u64).unwrap()).unwrap();
                    efsum += p.e() * p.f();
                    assert_eq!(p.lattice().norm(), BigInt::from(q).pow(p.f()));
                }
                assert_eq!(efsum as usize, ctx.degree());
                let q_ideal = IdealHnf::principal(&ctx.integer(q as i64)).unwrap();
                assert_eq!(acc, q_ideal, "prime product failed to rebuild ({q}) in r = {r}");
            }
        }
    }

    #[test]
    fn valuations_at_beta() {
        let ctx = RingContext::new(7).unwrap();
        let beta = beta_ideal(&ctx).unwrap();
        let r_ideal = IdealHnf::principal(&ctx.integer(7)).unwrap();
        assert_eq!(beta.valuation_of(&r_ideal).unwrap(), 3);
        assert_eq!(beta.valuation_of(&IdealHnf::unit(&ctx)).unwrap(), 0);
        let diff = &ctx.alpha(1).unwrap() - &ctx.alpha(2).unwrap();
        assert_eq!(beta.valuation_of_element(&diff).unwrap(), 1);
    }

    #[test]
    fn lattice_valuation_agrees_with_norm_shortcut() {
        let ctx = RingContext::new(7).unwrap();
        let beta = beta_ideal(&ctx).unwrap();
        for coeffs in [[3i64, 1, 0], [7, 0, 0], [5, 2, 0], [14, 7, -7], [1, 1, 1]] {
            let e = ctx.element(coeffs.iter().map(|&c| bi(c)).collect());
            if e.is_zero() {
                continue;
            }
            assert_eq!(
                beta.valuation_of_element(&e).unwrap(),
                e.beta_valuation().unwrap(),
                "mismatch at {e}"
            );
        }
    }

    #[test]
    fn ideals_are_alpha_stable() {
        let ctx = RingContext::new(11).unwrap();
        let e = ctx.element(vec![bi(3), bi(2), bi(0), bi(-1), bi(4)]);
        let a = IdealHnf::principal(&e).unwrap();
        assert!(a.is_alpha_stable());
        for (p, _) in factor_rational_prime(&ctx, 3).unwrap() {
            assert!(p.lattice().is_alpha_stable());
        }
    }

    #[test]
    fn context_mismatch_is_reported() {
        let c7 = RingContext::new(7).unwrap();
        let c11 = RingContext::new(11).unwrap();
        let a = IdealHnf::unit(&c7);
        let b = IdealHnf::unit(&c11);
        assert!(matches!(a.sum(&b), Err(Error::ContextMismatch)));
        assert!(matches!(a.product(&b), Err(Error::ContextMismatch)));
    }
}
