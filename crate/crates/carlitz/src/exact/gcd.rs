//! Polynomial gcd over the rationals via the primitive polynomial remainder
//! sequence on integer coefficients. Contents are stripped at every step, which
//! keeps coefficient growth polynomial instead of exponential.

use super::qpoly::QPoly;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Strip integer content and force a positive leading coefficient.
fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = num_integer::gcd(g, c.clone());
    }
    if v.last().expect("nonempty").is_negative() {
        g = -g;
    }
    for c in &mut v {
        *c = &*c / &g;
    }
    v
}

/// Pseudo-remainder of a by b: the remainder of lc(b)^(deg a - deg b + 1) * a
/// divided by b, which stays integral throughout.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len();
    if a.len() < db {
        return a.to_vec();
    }
    let lead = &b[db - 1];
    let mult = lead.pow((a.len() - db + 1) as u32);
    let mut r: Vec<BigInt> = a.iter().map(|c| c * &mult).collect();
    while r.len() >= db {
        let k = r.len() - db;
        let c = r.last().expect("nonempty") / lead;
        for i in 0..db - 1 {
            let t = &c * &b[i];
            r[k + i] -= t;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Primitive gcd of two rational-coefficient polynomials, as integer
/// coefficients with gcd 1 and positive leading coefficient. The gcd of
/// anything with zero is the other argument's primitive part; two coprime
/// polynomials yield [1].
pub(crate) fn primitive_gcd(a: &QPoly, b: &QPoly) -> Vec<BigInt> {
    let (pa, _) = a.clear_content();
    let (pb, _) = b.clear_content();
    let (mut big, mut small) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    while !small.is_empty() {
        let r = pseudo_rem(&big, &small);
        big = small;
        small = make_primitive(r);
    }
    make_primitive(big)
}
