//! JSON encodings for engine values. Rationals are emitted as decimal
//! strings so output is bit-exact across platforms; polynomials are arrays
//! in ascending power order.

use carlitz::changhee::ChangheeQValue;
use carlitz::euler::ClassicalPoly;
use carlitz::exact::{BigRat, QPoly, QRatFn, QSeries, YPoly};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn int_value(i: &BigInt) -> Value {
    Value::String(i.to_string())
}

pub fn rat_value(r: &BigRat) -> Value {
    json!({ "n": r.numer().to_string(), "d": r.denom().to_string() })
}

pub fn qpoly_value(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_value).collect())
}

pub fn ratfn_value(f: &QRatFn) -> Value {
    json!({ "num": qpoly_value(f.num()), "den": qpoly_value(f.den()) })
}

pub fn ypoly_value(p: &YPoly) -> Value {
    Value::Array(p.coeffs().iter().map(ratfn_value).collect())
}

pub fn qseries_value(s: &QSeries) -> Value {
    Value::Array(s.coeffs().iter().map(rat_value).collect())
}

pub fn classical_value(p: &ClassicalPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_value).collect())
}

pub fn changhee_value(v: &ChangheeQValue) -> Value {
    json!({
        "object": "changhee",
        "n": v.n(),
        "r": v.order(),
        "poly": ypoly_value(v.poly()),
        "number": ratfn_value(v.number()),
    })
}
