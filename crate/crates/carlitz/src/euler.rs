//! Carlitz q-Euler numbers and polynomials, their rebased and higher-order
//! forms, and the classical Euler and Changhee polynomials they degenerate to
//! at q = 1.

use crate::combinat::{binomial, factorial, q_bracket_x, stirling1};
use crate::error::{Error, Result};
use crate::exact::{BigRat, QPoly, QRatFn, TSeries, YPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

static NUMBERS: LazyLock<RwLock<Vec<QRatFn>>> = LazyLock::new(|| RwLock::new(Vec::new()));
static POLYS: LazyLock<RwLock<Vec<YPoly>>> = LazyLock::new(|| RwLock::new(Vec::new()));
static REBASED: LazyLock<RwLock<HashMap<(usize, u32, u32), YPoly>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));
static HIGHER: LazyLock<RwLock<HashMap<(usize, u32), YPoly>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));
static CLASSICAL_NUMBERS: LazyLock<RwLock<Vec<BigRat>>> = LazyLock::new(|| RwLock::new(Vec::new()));

/// Carlitz q-Euler number E_{n,q}, computed from the closed form
/// [2]_q (1-q)^(-n) sum_l C(n,l) (-1)^l / (1 + q^(l+1)).
pub fn euler_q_number(n: usize) -> QRatFn {
    if let Some(v) = NUMBERS.read().expect("euler number cache").get(n) {
        return v.clone();
    }
    let mut cache = NUMBERS.write().expect("euler number cache");
    while cache.len() <= n {
        let m = cache.len();
        let v = number_uncached(m);
        cache.push(v);
    }
    cache[n].clone()
}

fn number_uncached(n: usize) -> QRatFn {
    let mut sum = QRatFn::zero();
    for l in 0..=n {
        let mut c = BigRat::from_integer(binomial(n, l));
        if l % 2 == 1 {
            c = -c;
        }
        let den = &QPoly::one() + &QPoly::monomial(l + 1, BigRat::one());
        let term = QRatFn::reduce(QPoly::constant(c), den).expect("nonzero denominator");
        sum = &sum + &term;
    }
    let one_minus_q = QRatFn::from_poly(QPoly::one_minus_q());
    let prefactor = &QRatFn::from_poly(QPoly::two_q())
        / &one_minus_q.pow(u32::try_from(n).expect("degree fits u32"));
    &prefactor * &sum
}

/// Carlitz q-Euler polynomial E_{n,q}(x) as a polynomial in y = q^x:
/// sum_l C(n,l) [x]_q^(n-l) y^l E_{l,q}.
pub fn euler_q_poly(n: usize) -> YPoly {
    if let Some(v) = POLYS.read().expect("euler poly cache").get(n) {
        return v.clone();
    }
    let mut cache = POLYS.write().expect("euler poly cache");
    while cache.len() <= n {
        let m = cache.len();
        let v = poly_uncached(m);
        cache.push(v);
    }
    cache[n].clone()
}

fn poly_uncached(n: usize) -> YPoly {
    let bracket = q_bracket_x();
    let mut acc = YPoly::zero();
    for l in 0..=n {
        let c = QRatFn::from_rat(BigRat::from_integer(binomial(n, l)));
        let coeff = &c * &euler_q_number(l);
        let term = &bracket.pow((n - l) as u32) * &YPoly::monomial_y(l, coeff);
        acc = &acc + &term;
    }
    acc
}

/// E_{n,Q}(z) for Q = q^d and z = (a+x)/d, expressed in y. Only integer
/// powers of q appear: Q^z = q^a y, so [z]_Q = (q^a y - 1)/(q^d - 1) and the
/// coefficient numbers are E_{l,q} with q replaced by q^d.
pub fn euler_q_poly_rebased(n: usize, d: u32, a: u32) -> Result<YPoly> {
    if d % 2 == 0 {
        return Err(Error::EvenModulus(d));
    }
    if a >= d {
        return Err(Error::ResidueOutOfRange { a, d });
    }
    let key = (n, d, a);
    if let Some(v) = REBASED.read().expect("rebased cache").get(&key) {
        return Ok(v.clone());
    }
    let value = rebased_uncached(n, d, a);
    REBASED
        .write()
        .expect("rebased cache")
        .insert(key, value.clone());
    Ok(value)
}

fn rebased_uncached(n: usize, d: u32, a: u32) -> YPoly {
    let qd_minus_one = &QPoly::monomial(d as usize, BigRat::one()) - &QPoly::one();
    let inv = QRatFn::from_poly(qd_minus_one)
        .inv()
        .expect("q^d - 1 is nonzero");
    let bracket_z = YPoly::from_coeffs(vec![-&inv, &QRatFn::q_pow(a as usize) * &inv]);
    let mut acc = YPoly::zero();
    for l in 0..=n {
        let c = QRatFn::from_rat(BigRat::from_integer(binomial(n, l)));
        let number = euler_q_number(l).subst_q_pow(d);
        let coeff = &(&c * &QRatFn::q_pow(a as usize * l)) * &number;
        let term = &bracket_z.pow((n - l) as u32) * &YPoly::monomial_y(l, coeff);
        acc = &acc + &term;
    }
    acc
}

/// Higher-order Carlitz q-Euler polynomial E^(r)_{n,q}(x), the r-fold
/// fermionic q-integral of [x_1 + ... + x_r + x]_q^n. Closed form obtained by
/// binomially expanding the bracket and integrating each q^(l x_i) factor
/// independently:
/// (1-q)^(-n) sum_l C(n,l) (-1)^l y^l ([2]_q / (1 + q^(l+1)))^r.
pub fn euler_q_higher(n: usize, r: u32) -> Result<YPoly> {
    if r == 0 {
        return Err(Error::ZeroOrder);
    }
    let key = (n, r);
    if let Some(v) = HIGHER.read().expect("higher euler cache").get(&key) {
        return Ok(v.clone());
    }
    let value = higher_uncached(n, r);
    HIGHER
        .write()
        .expect("higher euler cache")
        .insert(key, value.clone());
    Ok(value)
}

fn higher_uncached(n: usize, r: u32) -> YPoly {
    let prefactor = QRatFn::from_poly(QPoly::one_minus_q())
        .inv()
        .expect("1 - q is nonzero")
        .pow(u32::try_from(n).expect("degree fits u32"));
    let two_q = QRatFn::from_poly(QPoly::two_q());
    let coeffs: Vec<QRatFn> = (0..=n)
        .map(|l| {
            let mut c = BigRat::from_integer(binomial(n, l));
            if l % 2 == 1 {
                c = -c;
            }
            let den = &QPoly::one() + &QPoly::monomial(l + 1, BigRat::one());
            let ratio = (&two_q / &QRatFn::from_poly(den)).pow(r);
            &(&QRatFn::from_rat(c) * &prefactor) * &ratio
        })
        .collect();
    YPoly::from_coeffs(coeffs)
}

/// Polynomial in x with rational coefficients, ascending order. The target of
/// every q -> 1 comparison.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassicalPoly {
    coeffs: Vec<BigRat>,
}

impl ClassicalPoly {
    pub fn from_coeffs(coeffs: Vec<BigRat>) -> ClassicalPoly {
        let mut p = ClassicalPoly { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRat {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x0: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x0 + c;
        }
        acc
    }
}

/// Classical Euler number E_n, generated by the recurrence
/// sum_k C(n,k) E_k + E_n = 2 [n = 0].
fn classical_euler_number(n: usize) -> BigRat {
    if let Some(v) = CLASSICAL_NUMBERS
        .read()
        .expect("classical number cache")
        .get(n)
    {
        return v.clone();
    }
    let mut cache = CLASSICAL_NUMBERS.write().expect("classical number cache");
    while cache.len() <= n {
        let m = cache.len();
        let v = if m == 0 {
            BigRat::one()
        } else {
            let mut sum = BigRat::zero();
            for (k, e) in cache.iter().enumerate() {
                sum += BigRat::from_integer(binomial(m, k)) * e;
            }
            -sum / BigRat::from_integer(BigInt::from(2))
        };
        cache.push(v);
    }
    cache[n].clone()
}

/// Classical Euler polynomial E_n(x) = sum_k C(n,k) E_k x^(n-k).
pub fn classical_euler_poly(n: usize) -> ClassicalPoly {
    let mut coeffs = vec![BigRat::zero(); n + 1];
    for k in 0..=n {
        coeffs[n - k] += BigRat::from_integer(binomial(n, k)) * classical_euler_number(k);
    }
    ClassicalPoly::from_coeffs(coeffs)
}

/// Classical Changhee polynomial Ch_n(x) = sum_k S1(n,k) E_k(x).
pub fn classical_changhee_poly(n: usize) -> ClassicalPoly {
    let mut coeffs = vec![BigRat::zero(); n + 1];
    for k in 0..=n {
        let s = BigRat::from_integer(stirling1(n, k));
        if s.is_zero() {
            continue;
        }
        for (i, c) in classical_euler_poly(k).coeffs().iter().enumerate() {
            coeffs[i] += &s * c;
        }
    }
    ClassicalPoly::from_coeffs(coeffs)
}

/// Taylor expansion through t-order `order` of sum_n E^(r)_{n,q}(x) t^n / n!;
/// entry n holds euler_q_higher(n, r) / n!.
pub fn euler_gf(order: usize, r: u32) -> Result<TSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let inv_fact = QRatFn::from_rat(BigRat::new(BigInt::one(), factorial(n)));
        coeffs.push(euler_q_higher(n, r)?.scale(&inv_fact));
    }
    Ok(TSeries::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn rf(num: &[i64], den: &[i64]) -> QRatFn {
        QRatFn::reduce(QPoly::from_ints(num), QPoly::from_ints(den)).expect("test value")
    }

    #[test]
    fn first_numbers_match_hand_expansion() {
        assert_eq!(euler_q_number(0), QRatFn::one());
        assert_eq!(euler_q_number(1), rf(&[0, -1], &[1, 0, 1]));
        assert_eq!(euler_q_number(2), rf(&[0, -1, 1], &[1, -1, 2, -1, 1]));
        assert_eq!(
            euler_q_number(3),
            rf(&[0, -1, 1, 1, 1, -1], &[1, -1, 2, -1, 2, -1, 2, -1, 1])
        );
    }

    #[test]
    fn classical_limits_of_numbers() {
        assert_eq!(euler_q_number(2).limit_q1().expect("finite"), rat_int(0));
        assert_eq!(
            euler_q_number(1).limit_q1().expect("finite"),
            rat(-1, 2)
        );
    }

    #[test]
    fn degree_one_polynomial() {
        let p = euler_q_poly(1);
        assert_eq!(p.coeff(0), rf(&[-1], &[-1, 1]));
        let want1 = &rf(&[1], &[-1, 1]) - &rf(&[0, 1], &[1, 0, 1]);
        assert_eq!(p.coeff(1), want1);
        assert_eq!(p.degree_y(), Some(1));
    }

    #[test]
    fn polynomial_at_one_is_the_number() {
        for n in 0..=6 {
            assert_eq!(euler_q_poly(n).eval_y(&QRatFn::one()), euler_q_number(n));
        }
    }

    #[test]
    fn rebasing_by_one_is_identity() {
        for n in 0..=4 {
            assert_eq!(
                euler_q_poly_rebased(n, 1, 0).expect("valid (d, a)"),
                euler_q_poly(n)
            );
        }
    }

    #[test]
    fn rebased_degree_one_example() {
        let got = euler_q_poly_rebased(1, 3, 0).expect("valid (d, a)");
        let c0 = rf(&[-1], &[-1, 0, 0, 1]);
        let c1 = &rf(&[1], &[-1, 0, 0, 1]) - &rf(&[0, 0, 0, 1], &[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(got, YPoly::from_coeffs(vec![c0, c1]));
    }

    #[test]
    fn rebased_argument_validation() {
        assert_eq!(euler_q_poly_rebased(1, 2, 0), Err(Error::EvenModulus(2)));
        assert_eq!(
            euler_q_poly_rebased(1, 3, 3),
            Err(Error::ResidueOutOfRange { a: 3, d: 3 })
        );
    }

    #[test]
    fn order_one_reduces_to_plain_polynomial() {
        for n in 0..=5 {
            assert_eq!(euler_q_higher(n, 1).expect("r >= 1"), euler_q_poly(n));
        }
        assert_eq!(euler_q_higher(0, 4).expect("r >= 1"), YPoly::one());
        assert_eq!(euler_q_higher(3, 0), Err(Error::ZeroOrder));
    }

    #[test]
    fn classical_polynomials() {
        assert_eq!(classical_euler_poly(0).coeffs(), &[rat_int(1)]);
        assert_eq!(classical_euler_poly(1).coeffs(), &[rat(-1, 2), rat_int(1)]);
        assert_eq!(classical_euler_poly(3).eval(&rat_int(0)), rat(1, 4));
        assert_eq!(classical_changhee_poly(0).coeffs(), &[rat_int(1)]);
        assert_eq!(classical_changhee_poly(1).eval(&rat_int(0)), rat(-1, 2));
        assert_eq!(classical_changhee_poly(2).eval(&rat_int(0)), rat(1, 2));
    }

    #[test]
    fn polynomial_classical_limit_matches_classical_poly() {
        for n in 0..=4 {
            for x0 in 0..=2 {
                assert_eq!(
                    euler_q_poly(n).classical_limit(x0).expect("finite"),
                    classical_euler_poly(n).eval(&rat_int(x0 as i64)),
                    "(n, x0) = ({n}, {x0})"
                );
            }
        }
    }

    #[test]
    fn gf_entries_are_scaled_polynomials() {
        let gf = euler_gf(3, 1).expect("r >= 1");
        assert_eq!(gf.order(), 3);
        assert_eq!(gf.coeffs()[0], YPoly::one());
        assert_eq!(
            gf.coeffs()[3],
            euler_q_poly(3).scale(&QRatFn::from_rat(rat(1, 6)))
        );
    }
}
