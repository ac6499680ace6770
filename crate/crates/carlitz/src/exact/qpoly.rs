use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar. Zero is 0/1, the denominator is always positive and
/// coprime to the numerator; `num_rational` maintains those invariants.
pub type BigRat = BigRational;

pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Univariate polynomial in q with rational coefficients, stored by ascending
/// degree with no trailing zeros. The zero polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigRat>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    pub fn monomial(k: usize, c: BigRat) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    /// `1 - q`, the factor cleared by every bracket expansion.
    pub fn one_minus_q() -> Self {
        QPoly::from_coeffs(vec![BigRat::one(), -BigRat::one()])
    }

    /// `1 + q`, the q-integer [2]_q.
    pub fn two_q() -> Self {
        QPoly::from_coeffs(vec![BigRat::one(), BigRat::one()])
    }

    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRat {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, q0: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + c;
        }
        acc
    }

    /// Substitute q -> q^d.
    pub fn subst_q_pow(&self, d: u32) -> QPoly {
        assert!(d >= 1, "exponent substitution needs d >= 1");
        if self.is_zero() || d == 1 {
            return self.clone();
        }
        let d = d as usize;
        let mut coeffs = vec![BigRat::zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        QPoly { coeffs }
    }

    /// Euclidean division over the rationals: self = q*div + r with deg r < deg div.
    ///
    /// Panics on a zero divisor; rational-function code guards that case first.
    pub fn div_rem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd {
            return (QPoly::zero(), self.clone());
        }
        let lead = &div.coeffs[dd - 1];
        let mut quot = vec![BigRat::zero(); rem.len() - dd + 1];
        while rem.len() >= dd {
            let c = rem.last().expect("nonempty") / lead;
            let k = rem.len() - dd;
            for i in 0..dd - 1 {
                let t = &c * &div.coeffs[i];
                rem[k + i] -= t;
            }
            rem.pop();
            quot[k] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (QPoly::from_coeffs(quot), QPoly { coeffs: rem })
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, div: &QPoly) -> QPoly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Clear denominators and content: self = content * primitive, where the
    /// primitive part has integer coefficients with gcd 1 and positive leading
    /// coefficient. Returns (primitive integer coefficients, content).
    pub fn clear_content(&self) -> (Vec<BigInt>, BigRat) {
        if self.is_zero() {
            return (Vec::new(), BigRat::one());
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * &lcm / c.denom())
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = num_integer::gcd(gcd, v.clone());
        }
        if ints.last().expect("nonzero poly").is_negative() {
            gcd = -gcd;
        }
        let prim: Vec<BigInt> = ints.iter().map(|v| v / &gcd).collect();
        (prim, BigRat::new(gcd, lcm))
    }

    /// Primitive-part gcd with positive leading coefficient, computed by the
    /// primitive polynomial remainder sequence over the integers.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let g = super::gcd::primitive_gcd(self, other);
        QPoly::from_coeffs(g.into_iter().map(BigRat::from_integer).collect())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = QPoly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(p.degree(), Some(0));
        let q = &QPoly::from_ints(&[1, 1]) - &QPoly::from_ints(&[0, 1]);
        assert_eq!(q, QPoly::one());
    }

    #[test]
    fn div_rem_recovers_product() {
        let a = QPoly::from_ints(&[1, 2, 0, 3]);
        let b = QPoly::from_ints(&[-1, 1]);
        let (q, r) = (&(&a * &b) + &QPoly::from_ints(&[5])).div_rem(&b);
        assert_eq!(q, a);
        assert_eq!(r, QPoly::from_ints(&[5]));
    }

    #[test]
    fn content_split_is_primitive() {
        let p = QPoly::from_coeffs(vec![rat(2, 3), rat(4, 3)]);
        let (prim, content) = p.clear_content();
        assert_eq!(prim, vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(content, rat(2, 3));
        let (prim_neg, content_neg) = QPoly::from_ints(&[2, -4]).clear_content();
        assert_eq!(prim_neg, vec![BigInt::from(-1), BigInt::from(2)]);
        assert_eq!(content_neg, rat_int(-2));
    }

    #[test]
    fn subst_q_pow_spreads_exponents() {
        let p = QPoly::from_ints(&[1, -1, 2]);
        let s = p.subst_q_pow(3);
        assert_eq!(s.coeff(0), rat_int(1));
        assert_eq!(s.coeff(3), rat_int(-1));
        assert_eq!(s.coeff(6), rat_int(2));
        assert_eq!(s.degree(), Some(6));
    }

    #[test]
    fn eval_by_horner() {
        let p = QPoly::from_ints(&[1, 0, -1]);
        assert_eq!(p.eval(&rat(1, 2)), rat(3, 4));
    }
}
