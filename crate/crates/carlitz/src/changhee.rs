//! q-Changhee numbers and polynomials by every computation path the theory
//! provides, with exact residual verifiers for the shift recurrence and the
//! distribution relation, and truncated-series checks for the generating
//! function.

use crate::combinat::{binomial, factorial, q_bracket_x, q_integer, stirling1, stirling2};
use crate::error::{Error, Result};
use crate::euler::{euler_q_higher, euler_q_poly, euler_q_poly_rebased};
use crate::exact::{rat_int, BigRat, QPoly, QRatFn, QSeries, TSeries, YPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

static PLAIN: LazyLock<RwLock<Vec<YPoly>>> = LazyLock::new(|| RwLock::new(Vec::new()));
static HIGHER: LazyLock<RwLock<HashMap<(usize, u32), YPoly>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// A q-Changhee value: the polynomial in y = q^x paired with its number. The
/// number is always the polynomial evaluated at y = 1, never recomputed by a
/// second formula, so a path disagreement surfaces as a test failure instead
/// of silent divergence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChangheeQValue {
    n: usize,
    r: u32,
    poly: YPoly,
    number: QRatFn,
}

impl ChangheeQValue {
    fn new(n: usize, r: u32, poly: YPoly) -> ChangheeQValue {
        let number = poly.eval_y(&QRatFn::one());
        ChangheeQValue { n, r, poly, number }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn poly(&self) -> &YPoly {
        &self.poly
    }

    pub fn number(&self) -> &QRatFn {
        &self.number
    }
}

/// One verified identity instance: the parameters it was checked at and the
/// full residual polynomial, so a failure pinpoints the offending coefficient
/// rather than reporting a bare boolean.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Residual {
    pub identity: &'static str,
    pub params: Vec<(&'static str, i64)>,
    pub residual: YPoly,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

/// q-Changhee polynomial Ch_{n,q}(x) = sum_k S1(n,k) E_{k,q}(x); the primary
/// computation path.
pub fn changhee_q_poly(n: usize) -> ChangheeQValue {
    if let Some(p) = PLAIN.read().expect("changhee cache").get(n) {
        return ChangheeQValue::new(n, 1, p.clone());
    }
    let mut cache = PLAIN.write().expect("changhee cache");
    while cache.len() <= n {
        let m = cache.len();
        let p = plain_uncached(m);
        cache.push(p);
    }
    ChangheeQValue::new(n, 1, cache[n].clone())
}

fn plain_uncached(n: usize) -> YPoly {
    let mut acc = YPoly::zero();
    for k in 0..=n {
        let s = stirling1(n, k);
        if s.is_zero() {
            continue;
        }
        acc = &acc + &euler_q_poly(k).scale(&QRatFn::from_rat(BigRat::from_integer(s)));
    }
    acc
}

/// The same polynomial by the flat double sum
/// [2]_q sum_k S1(n,k) (1-q)^(-k) sum_l C(k,l) (-1)^l y^l / (1 + q^(l+1)),
/// which expands every bracket power instead of composing Euler polynomials.
/// Exists so the equality of the two routes is an executable cross-check.
pub fn changhee_q_poly_direct(n: usize) -> ChangheeQValue {
    let inv_one_minus_q = QRatFn::from_poly(QPoly::one_minus_q())
        .inv()
        .expect("1 - q is nonzero");
    let mut coeffs = vec![QRatFn::zero(); n + 1];
    for k in 0..=n {
        let s = stirling1(n, k);
        if s.is_zero() {
            continue;
        }
        let weight = &QRatFn::from_rat(BigRat::from_integer(s))
            * &inv_one_minus_q.pow(u32::try_from(k).expect("degree fits u32"));
        for l in 0..=k {
            let mut c = BigRat::from_integer(binomial(k, l));
            if l % 2 == 1 {
                c = -c;
            }
            let den = &QPoly::one() + &QPoly::monomial(l + 1, BigRat::one());
            let term = QRatFn::reduce(QPoly::constant(c), den).expect("nonzero denominator");
            coeffs[l] = &coeffs[l] + &(&term * &weight);
        }
    }
    let poly = YPoly::from_coeffs(coeffs).scale(&QRatFn::from_poly(QPoly::two_q()));
    ChangheeQValue::new(n, 1, poly)
}

/// Higher-order q-Changhee polynomial Ch^(r)_{n,q}(x) = sum_k S1(n,k)
/// E^(r)_{k,q}(x).
pub fn changhee_q_higher(n: usize, r: u32) -> Result<ChangheeQValue> {
    if r == 0 {
        return Err(Error::ZeroOrder);
    }
    let key = (n, r);
    if let Some(p) = HIGHER.read().expect("higher changhee cache").get(&key) {
        return Ok(ChangheeQValue::new(n, r, p.clone()));
    }
    let mut acc = YPoly::zero();
    for k in 0..=n {
        let s = stirling1(n, k);
        if s.is_zero() {
            continue;
        }
        acc = &acc + &euler_q_higher(k, r)?.scale(&QRatFn::from_rat(BigRat::from_integer(s)));
    }
    HIGHER
        .write()
        .expect("higher changhee cache")
        .insert(key, acc.clone());
    Ok(ChangheeQValue::new(n, r, acc))
}

/// Inverse transform: sum_k S2(n,k) Ch^(r)_{k,q}(x). By Stirling
/// orthogonality this must reproduce E^(r)_{n,q}(x) exactly.
pub fn euler_from_changhee(n: usize, r: u32) -> Result<YPoly> {
    if r == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut acc = YPoly::zero();
    for k in 0..=n {
        let s = stirling2(n, k);
        if s.is_zero() {
            continue;
        }
        let ch = changhee_q_higher(k, r)?;
        acc = &acc + &ch.poly().scale(&QRatFn::from_rat(BigRat::from_integer(s)));
    }
    Ok(acc)
}

/// Residual of the shift recurrence
/// q Ch_{n,q}(x+1) + Ch_{n,q}(x) = [2]_q sum_l S1(n,l) [x]_q^l.
pub fn verify_recurrence(n: usize) -> Residual {
    let ch = changhee_q_poly(n);
    let lhs = &ch.poly().shift_x(1).scale(&QRatFn::q_pow(1)) + ch.poly();
    let bracket = q_bracket_x();
    let mut rhs = YPoly::zero();
    for l in 0..=n {
        let s = stirling1(n, l);
        if s.is_zero() {
            continue;
        }
        let term = bracket
            .pow(u32::try_from(l).expect("degree fits u32"))
            .scale(&QRatFn::from_rat(BigRat::from_integer(s)));
        rhs = &rhs + &term;
    }
    rhs = rhs.scale(&QRatFn::from_poly(QPoly::two_q()));
    Residual {
        identity: "recurrence",
        params: vec![("n", n as i64)],
        residual: &lhs - &rhs,
    }
}

/// Residual of the distribution relation over an odd modulus d:
/// Ch_{n,q}(x) = ([2]_q/[2]_{q^d}) sum_k S1(n,k) [d]_q^k
///               sum_{a<d} (-q)^a E_{k,q^d}((a+x)/d).
pub fn verify_distribution(n: usize, d: u32) -> Result<Residual> {
    if d % 2 == 0 {
        return Err(Error::EvenModulus(d));
    }
    let ch = changhee_q_poly(n);
    let two_qd = &QPoly::one() + &QPoly::monomial(d as usize, BigRat::one());
    let front = &QRatFn::from_poly(QPoly::two_q()) / &QRatFn::from_poly(two_qd);
    let d_bracket = QRatFn::from_poly(q_integer(d as usize));
    let mut sum = YPoly::zero();
    for k in 0..=n {
        let s = stirling1(n, k);
        if s.is_zero() {
            continue;
        }
        let mut inner = YPoly::zero();
        for a in 0..d {
            let mut w = QRatFn::q_pow(a as usize);
            if a % 2 == 1 {
                w = -&w;
            }
            inner = &inner + &euler_q_poly_rebased(k, d, a)?.scale(&w);
        }
        let weight = &QRatFn::from_rat(BigRat::from_integer(s))
            * &d_bracket.pow(u32::try_from(k).expect("degree fits u32"));
        sum = &sum + &inner.scale(&weight);
    }
    Ok(Residual {
        identity: "distribution",
        params: vec![("n", n as i64), ("d", d as i64)],
        residual: ch.poly() - &sum.scale(&front),
    })
}

/// Partial sum of the generating function at a fixed t-degree n, as a q-series
/// through order k: [2]_q sum_{m<=M} (-q)^m (falling factorial of [m+x0]_q
/// taken n deep). The m-th term carries a factor q^m, so terms beyond the
/// series order contribute nothing and M >= k makes the truncation exact.
fn gf_partial_sum(n: usize, big_m: usize, k: usize, x0: u32) -> QSeries {
    let x_part = q_integer(x0 as usize);
    let mut total = QSeries::zero(k);
    for m in 0..=big_m.min(k) {
        let base_poly = &q_integer(m) + &(&QPoly::monomial(m, BigRat::one()) * &x_part);
        let base = QSeries::from_poly(&base_poly, k);
        let mut prod = QSeries::from_poly(&QPoly::one(), k);
        for i in 0..n {
            let shift = QSeries::from_poly(&QPoly::constant(rat_int(i as i64)), k);
            prod = &prod * &(&base - &shift);
        }
        let mut term = vec![BigRat::zero(); k + 1];
        for (j, c) in prod.coeffs().iter().enumerate() {
            if j + m <= k {
                term[j + m] = if m % 2 == 1 { -c } else { c.clone() };
            }
        }
        total = &total + &QSeries::from_coeffs(term);
    }
    &total * &QSeries::from_poly(&QPoly::two_q(), k)
}

/// Compare the generating-function route against the closed form for the
/// number Ch_{n,q}: returns (series from the summed generating function,
/// series of the number), both through q-order k. The contract is equality.
pub fn gf_check(n: usize, big_m: usize, k: usize) -> Result<(QSeries, QSeries)> {
    if big_m < k {
        return Err(Error::InsufficientTruncation { m: big_m, k });
    }
    let a = gf_partial_sum(n, big_m, k, 0);
    let b = changhee_q_poly(n).number().qseries(k)?;
    Ok((a, b))
}

/// Polynomial variant of `gf_check` at integer argument x0, using
/// [m+x0]_q = [m]_q + q^m [x0]_q on the generating side and the polynomial at
/// y = q^(x0) on the closed-form side.
pub fn gf_check_poly(n: usize, x0: u32, big_m: usize, k: usize) -> Result<(QSeries, QSeries)> {
    if big_m < k {
        return Err(Error::InsufficientTruncation { m: big_m, k });
    }
    let a = gf_partial_sum(n, big_m, k, x0);
    let b = changhee_q_poly(n).poly().at_x(x0).qseries(k)?;
    Ok((a, b))
}

/// Taylor expansion through t-order `order` of sum_n Ch^(r)_{n,q}(x) t^n / n!;
/// entry n holds the order-r polynomial divided by n!.
pub fn changhee_gf(order: usize, r: u32) -> Result<TSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let inv_fact = QRatFn::from_rat(BigRat::new(BigInt::one(), factorial(n)));
        coeffs.push(changhee_q_higher(n, r)?.poly().scale(&inv_fact));
    }
    Ok(TSeries::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn rf(num: &[i64], den: &[i64]) -> QRatFn {
        QRatFn::reduce(QPoly::from_ints(num), QPoly::from_ints(den)).expect("test value")
    }

    #[test]
    fn degree_zero_and_one() {
        let ch0 = changhee_q_poly(0);
        assert_eq!(ch0.poly(), &YPoly::one());
        assert_eq!(ch0.number(), &QRatFn::one());
        let ch1 = changhee_q_poly(1);
        assert_eq!(ch1.poly(), &euler_q_poly(1));
    }

    #[test]
    fn number_at_two_is_frozen() {
        let ch2 = changhee_q_poly(2);
        assert_eq!(ch2.number(), &rf(&[0, 0, 0, 1], &[1, -1, 2, -1, 1]));
        assert_eq!(ch2.number().limit_q1().expect("finite"), rat(1, 2));
    }

    #[test]
    fn both_paths_agree() {
        for n in 0..=6 {
            let a = changhee_q_poly(n);
            let b = changhee_q_poly_direct(n);
            assert_eq!(a.poly(), b.poly(), "n = {n}");
            assert_eq!(a.number(), b.number(), "n = {n}");
        }
    }

    #[test]
    fn direct_path_degree_one_closed_form() {
        let got = changhee_q_poly_direct(1);
        let factor = &QRatFn::from_poly(QPoly::two_q())
            * &rf(&[1], &[1, -1]);
        let inner = YPoly::from_coeffs(vec![rf(&[1], &[1, 1]), -&rf(&[1], &[1, 0, 1])]);
        assert_eq!(got.poly(), &inner.scale(&factor));
    }

    #[test]
    fn higher_order_reduction_and_validation() {
        for n in 0..=5 {
            let h = changhee_q_higher(n, 1).expect("r >= 1");
            assert_eq!(h.poly(), changhee_q_poly(n).poly(), "n = {n}");
        }
        assert_eq!(
            changhee_q_higher(0, 3).expect("r >= 1").poly(),
            &YPoly::one()
        );
        assert!(matches!(changhee_q_higher(2, 0), Err(Error::ZeroOrder)));
    }

    #[test]
    fn inverse_transform_recovers_euler() {
        for n in 0..=5 {
            assert_eq!(
                euler_from_changhee(n, 1).expect("r >= 1"),
                euler_q_poly(n),
                "n = {n}"
            );
        }
        for n in 0..=3 {
            assert_eq!(
                euler_from_changhee(n, 2).expect("r >= 1"),
                euler_q_higher(n, 2).expect("r >= 1"),
                "n = {n}"
            );
        }
    }

    #[test]
    fn recurrence_residuals_vanish() {
        for n in 0..=6 {
            let r = verify_recurrence(n);
            assert!(r.is_zero(), "n = {n}: residual {}", r.residual);
        }
    }

    #[test]
    fn distribution_residuals_vanish() {
        for n in 0..=4 {
            for d in [1, 3] {
                let r = verify_distribution(n, d).expect("odd d");
                assert!(r.is_zero(), "(n, d) = ({n}, {d})");
            }
        }
        assert!(matches!(
            verify_distribution(2, 4),
            Err(Error::EvenModulus(4))
        ));
    }

    #[test]
    fn gf_number_checks() {
        let (a, b) = gf_check(0, 10, 10).expect("M >= K");
        assert_eq!(a, b);
        let mut want = vec![rat_int(0); 11];
        want[0] = rat_int(1);
        assert_eq!(a.coeffs(), &want[..]);

        let (a1, b1) = gf_check(1, 10, 5).expect("M >= K");
        assert_eq!(a1, b1);
        assert_eq!(
            a1.coeffs(),
            &[rat_int(0), rat_int(-1), rat_int(0), rat_int(1), rat_int(0), rat_int(-1)]
        );

        assert_eq!(
            gf_check(1, 3, 5),
            Err(Error::InsufficientTruncation { m: 3, k: 5 })
        );
    }

    #[test]
    fn gf_polynomial_checks() {
        let (a, b) = gf_check_poly(2, 0, 12, 12).expect("M >= K");
        assert_eq!(a, b);
        let (c, d) = gf_check(2, 12, 12).expect("M >= K");
        assert_eq!(a, c);
        assert_eq!(b, d);
        let (e, f) = gf_check_poly(2, 1, 10, 10).expect("M >= K");
        assert_eq!(e, f);
    }

    #[test]
    fn gf_entries_are_scaled_polynomials() {
        let gf = changhee_gf(3, 1).expect("r >= 1");
        assert_eq!(gf.order(), 3);
        assert_eq!(gf.coeffs()[0], YPoly::one());
        assert_eq!(
            gf.coeffs()[2],
            changhee_q_poly(2).poly().scale(&QRatFn::from_rat(rat(1, 2)))
        );
    }
}
