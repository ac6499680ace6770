//! Finite-truncation laboratory for the fermionic p-adic q-integral:
//! level-N approximations of the integral, a grouped multivariate extension,
//! the measure's functional equation, and convergence diagnostics measured as
//! p-adic valuations against exact-engine targets.

use crate::error::{Error, Result};
use crate::exact::{BigRat, QRatFn};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Largest notional summation size p^(r*N) a single integral may request.
pub const SUMMATION_BUDGET: u64 = 10_000_000;

/// A residue modulo p^M with its precision carried alongside, the value type
/// of every integral approximation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PadicApprox {
    p: u64,
    precision: u32,
    residue: BigInt,
}

impl PadicApprox {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Residue in [0, p^M).
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    /// p-adic valuation of the difference from `target` (a residue mod p^M),
    /// capped at the precision M.
    pub fn valuation_vs(&self, target: &BigInt) -> u32 {
        vp_capped(&(&self.residue - target), self.p, self.precision)
    }
}

/// Closed set of integrands; each has an exact closed-form target elsewhere
/// in the crate, which is what makes the laboratory checkable. Parameters:
/// the constant value c, the exponent l of q^(l x), and (n, x0) for the three
/// families in x + x0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntegrandSpec {
    /// f(x) = c.
    Constant(i64),
    /// f(x) = q^(l x).
    QPower(u32),
    /// f(x) = [x + x0]_q^n.
    BracketPower(u32, u32),
    /// f(x) = binom([x + x0]_q, n); requires n < p so n! is a unit.
    BracketBinom(u32, u32),
    /// f(x) = (x + x0)(x + x0 - 1)...(x + x0 - n + 1) over the integers.
    Falling(u32, u32),
}

struct Ctx {
    p: u64,
    modulus: BigInt,
    q0: BigInt,
    neg_q: BigInt,
}

fn validate(p: u64, q0: i64, precision: u32) -> Result<Ctx> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if precision == 0 {
        return Err(Error::ZeroPrecision);
    }
    if (1 - i128::from(q0)).rem_euclid(i128::from(p)) != 0 {
        return Err(Error::BadPadicBase(q0));
    }
    let modulus = BigInt::from(p).pow(precision);
    let q0 = BigInt::from(q0).mod_floor(&modulus);
    let neg_q = (-&q0).mod_floor(&modulus);
    Ok(Ctx {
        p,
        modulus,
        q0,
        neg_q,
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Enforce the summation budget on p^(r * n_level) and return the per-axis
/// term count p^n_level.
fn level_size(p: u64, n_level: u32, r: u32) -> Result<u64> {
    let e = u64::from(n_level) * u64::from(r);
    let (size, over) = if e <= 64 {
        let size = BigInt::from(p).pow(e as u32);
        let over = size > BigInt::from(SUMMATION_BUDGET);
        (size.to_string(), over)
    } else {
        (format!("{p}^{e}"), true)
    };
    if over {
        return Err(Error::TruncationBudget {
            size,
            budget: SUMMATION_BUDGET,
        });
    }
    Ok(p.pow(n_level))
}

/// [0]_q, [1]_q, ..., [len-1]_q mod p^M by the integer recurrence
/// [m+1]_q = 1 + q [m]_q, which never divides by q - 1.
fn bracket_table(len: usize, ctx: &Ctx) -> Vec<BigInt> {
    let mut table = Vec::with_capacity(len);
    let mut b = BigInt::zero();
    for _ in 0..len {
        table.push(b.clone());
        b = (BigInt::one() + &ctx.q0 * &b).mod_floor(&ctx.modulus);
    }
    table
}

fn inv_mod(a: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(modulus).extended_gcd(modulus);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(modulus))
    } else {
        None
    }
}

/// Values f(offset), f(offset+1), ..., f(offset+count-1) mod p^M.
fn integrand_values(
    f: &IntegrandSpec,
    offset: u32,
    count: u64,
    ctx: &Ctx,
) -> Result<Vec<BigInt>> {
    let count = usize::try_from(count).expect("budget keeps counts addressable");
    let off = offset as usize;
    match *f {
        IntegrandSpec::Constant(c) => {
            let v = BigInt::from(c).mod_floor(&ctx.modulus);
            Ok(vec![v; count])
        }
        IntegrandSpec::QPower(l) => {
            let step = ctx.q0.modpow(&BigInt::from(l), &ctx.modulus);
            let mut cur = ctx
                .q0
                .modpow(&BigInt::from(u64::from(l) * u64::from(offset)), &ctx.modulus);
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                out.push(cur.clone());
                cur = (&cur * &step).mod_floor(&ctx.modulus);
            }
            Ok(out)
        }
        IntegrandSpec::BracketPower(n, x0) => {
            let table = bracket_table(off + x0 as usize + count + 1, ctx);
            let e = BigInt::from(n);
            Ok((0..count)
                .map(|x| table[x + off + x0 as usize].modpow(&e, &ctx.modulus))
                .collect())
        }
        IntegrandSpec::BracketBinom(n, x0) => {
            if u64::from(n) >= ctx.p {
                return Err(Error::BinomDegreeTooLarge { n, p: ctx.p });
            }
            let table = bracket_table(off + x0 as usize + count + 1, ctx);
            let mut fact = BigInt::one();
            for i in 1..=n {
                fact = (fact * BigInt::from(i)).mod_floor(&ctx.modulus);
            }
            let inv_fact = inv_mod(&fact, &ctx.modulus).expect("n! is a unit for n < p");
            let mut out = Vec::with_capacity(count);
            for x in 0..count {
                let base = &table[x + off + x0 as usize];
                let mut prod = inv_fact.clone();
                for i in 0..n {
                    prod = (prod * (base - BigInt::from(i))).mod_floor(&ctx.modulus);
                }
                out.push(prod);
            }
            Ok(out)
        }
        IntegrandSpec::Falling(n, x0) => {
            let mut out = Vec::with_capacity(count);
            for x in 0..count {
                let z = (x + off + x0 as usize) as i64;
                let mut prod = BigInt::one();
                for i in 0..i64::from(n) {
                    prod = (prod * BigInt::from(z - i)).mod_floor(&ctx.modulus);
                }
                out.push(prod);
            }
            Ok(out)
        }
    }
}

/// sum_{x < cap} f(x + offset) (-q)^x mod p^M.
fn level_sum(f: &IntegrandSpec, offset: u32, cap: u64, ctx: &Ctx) -> Result<BigInt> {
    let values = integrand_values(f, offset, cap, ctx)?;
    let mut sum = BigInt::zero();
    let mut sign = BigInt::one();
    for v in values {
        sum = (sum + v * &sign).mod_floor(&ctx.modulus);
        sign = (&sign * &ctx.neg_q).mod_floor(&ctx.modulus);
    }
    Ok(sum)
}

/// Inverse of the normalizer [p^N]_(-q) = (1 + q^(p^N))/(1 + q), which is
/// congruent to 1 mod p under the admissibility precondition; the inversion
/// itself is the unit assertion.
fn inv_normalizer(ctx: &Ctx, cap: u64) -> Result<BigInt> {
    let qp = ctx.q0.modpow(&BigInt::from(cap), &ctx.modulus);
    let num = (BigInt::one() + qp).mod_floor(&ctx.modulus);
    let den = (BigInt::one() + &ctx.q0).mod_floor(&ctx.modulus);
    let inv_den = inv_mod(&den, &ctx.modulus).ok_or(Error::NonUnitNormalizer)?;
    let norm = (num * inv_den).mod_floor(&ctx.modulus);
    inv_mod(&norm, &ctx.modulus).ok_or(Error::NonUnitNormalizer)
}

/// Level-N approximation of the fermionic q-integral of `f`:
/// (1/[p^N]_(-q)) sum_{x < p^N} f(x) (-q)^x, reduced mod p^M.
pub fn fermionic_integral(
    f: &IntegrandSpec,
    p: u64,
    q0: i64,
    n_level: u32,
    precision: u32,
) -> Result<PadicApprox> {
    let ctx = validate(p, q0, precision)?;
    let cap = level_size(p, n_level, 1)?;
    let sum = level_sum(f, 0, cap, &ctx)?;
    let inv = inv_normalizer(&ctx, cap)?;
    Ok(PadicApprox {
        p,
        precision,
        residue: (sum * inv).mod_floor(&ctx.modulus),
    })
}

/// Number of r-tuples in [0, cap)^r with coordinate sum s, by inclusion
/// and exclusion over the coordinates that overflow cap.
fn tuple_count(r: u32, s: u64, cap: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut j = 0u64;
    while j <= u64::from(r) && j * cap <= s {
        let c1 = num_integer::binomial(BigInt::from(r), BigInt::from(j));
        let c2 = num_integer::binomial(
            BigInt::from(s - j * cap + u64::from(r) - 1),
            BigInt::from(r - 1),
        );
        let term = c1 * c2;
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        j += 1;
    }
    total
}

/// Level-N approximation of the r-fold integral of [x_1 + ... + x_r]_q^n
/// against the product measure. The sum is grouped by s = x_1 + ... + x_r
/// with exact tuple counts, a pure reindexing of the defining sum that never
/// expands the integrand, so the result is an oracle independent of any
/// closed form derived for the higher-order polynomials.
pub fn multivariate_integral(
    n: u32,
    r: u32,
    p: u64,
    q0: i64,
    n_level: u32,
    precision: u32,
) -> Result<PadicApprox> {
    if r == 0 {
        return Err(Error::ZeroOrder);
    }
    let ctx = validate(p, q0, precision)?;
    let cap = level_size(p, n_level, r)?;
    let s_max = u64::from(r) * (cap - 1);
    let table = bracket_table(usize::try_from(s_max).expect("budget-bounded") + 1, &ctx);
    let e = BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut sign = BigInt::one();
    for s in 0..=s_max {
        let count = tuple_count(r, s, cap).mod_floor(&ctx.modulus);
        if !count.is_zero() {
            let b = table[s as usize].modpow(&e, &ctx.modulus);
            sum = (sum + count * b * &sign).mod_floor(&ctx.modulus);
        }
        sign = (&sign * &ctx.neg_q).mod_floor(&ctx.modulus);
    }
    let inv = inv_normalizer(&ctx, cap)?.modpow(&BigInt::from(r), &ctx.modulus);
    Ok(PadicApprox {
        p,
        precision,
        residue: (sum * inv).mod_floor(&ctx.modulus),
    })
}

/// Valuation (capped at M) of the residual of the measure's functional
/// equation q I(f(x+1)) + I(f) - [2]_q f(0) at level N.
pub fn check_functional_equation(
    f: &IntegrandSpec,
    p: u64,
    q0: i64,
    n_level: u32,
    precision: u32,
) -> Result<u32> {
    let ctx = validate(p, q0, precision)?;
    let cap = level_size(p, n_level, 1)?;
    let inv = inv_normalizer(&ctx, cap)?;
    let i0 = (level_sum(f, 0, cap, &ctx)? * &inv).mod_floor(&ctx.modulus);
    let i1 = (level_sum(f, 1, cap, &ctx)? * &inv).mod_floor(&ctx.modulus);
    let f0 = integrand_values(f, 0, 1, &ctx)?
        .pop()
        .expect("one value requested");
    let two_q = (BigInt::one() + &ctx.q0).mod_floor(&ctx.modulus);
    let residual = (&ctx.q0 * i1 + i0 - two_q * f0).mod_floor(&ctx.modulus);
    Ok(vp_capped(&residual, p, precision))
}

/// Reduce an exact rational-function target into Z/p^M at q = q0. The
/// denominator of the value must be a p-adic unit.
pub fn target_residue(target: &QRatFn, p: u64, q0: i64, precision: u32) -> Result<BigInt> {
    let ctx = validate(p, q0, precision)?;
    let value = target.eval_q(&BigRat::from_integer(BigInt::from(q0)))?;
    let den = value.denom().mod_floor(&ctx.modulus);
    let inv = inv_mod(&den, &ctx.modulus).ok_or(Error::NonUnitTarget)?;
    Ok((value.numer().mod_floor(&ctx.modulus) * inv).mod_floor(&ctx.modulus))
}

/// Valuations of fermionic_integral(f) minus `target`, for N = 1..=n_max.
/// Rising levels must drive the difference p-adically to zero, so the
/// sequence is expected to be nondecreasing and at least N - 1.
pub fn convergence_profile(
    f: &IntegrandSpec,
    target: &QRatFn,
    p: u64,
    q0: i64,
    n_max: u32,
    precision: u32,
) -> Result<Vec<u32>> {
    let t = target_residue(target, p, q0, precision)?;
    let mut out = Vec::with_capacity(n_max as usize);
    for level in 1..=n_max {
        out.push(fermionic_integral(f, p, q0, level, precision)?.valuation_vs(&t));
    }
    Ok(out)
}

fn vp_capped(x: &BigInt, p: u64, precision: u32) -> u32 {
    let modulus = BigInt::from(p).pow(precision);
    let mut x = x.mod_floor(&modulus);
    if x.is_zero() {
        return precision;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}
