//! Verification suites behind `carlitz verify`. Each suite re-checks one
//! identity family over a flag-controlled range and reports one row per
//! checked cell, carrying the exact residual as evidence.

use crate::encode;
use carlitz::changhee::{
    changhee_q_poly, changhee_q_poly_direct, euler_from_changhee, gf_check, gf_check_poly,
    verify_distribution, verify_recurrence,
};
use carlitz::combinat::{binomial, factorial, falling_factorial, stirling1, stirling2};
use carlitz::euler::{
    classical_changhee_poly, classical_euler_poly, euler_q_higher, euler_q_number, euler_q_poly,
    euler_q_poly_rebased,
};
use carlitz::exact::{q_bracket_x, BigRat, QPoly, QRatFn, YPoly};
use carlitz::padic::{
    convergence_profile, multivariate_integral, target_residue, IntegrandSpec, SUMMATION_BUDGET,
};
use carlitz::Result;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

pub struct Row {
    pub identity: &'static str,
    pub params: Vec<(&'static str, Value)>,
    pub zero: bool,
    pub residual: Value,
}

impl Row {
    pub fn to_value(&self) -> Value {
        let mut params = serde_json::Map::new();
        for (k, v) in &self.params {
            params.insert((*k).to_string(), v.clone());
        }
        json!({
            "identity": self.identity,
            "params": Value::Object(params),
            "zero": self.zero,
            "residual": self.residual,
        })
    }

    pub fn csv_line(&self) -> String {
        let row = self.to_value();
        format!(
            "{},{},{},{}",
            self.identity,
            csv_cell(&row["params"].to_string()),
            self.zero,
            csv_cell(&row["residual"].to_string()),
        )
    }
}

/// Quote a CSV cell unconditionally so embedded commas and quotes never
/// change the column count.
pub fn csv_cell(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn row(identity: &'static str, params: Vec<(&'static str, Value)>, zero: bool, residual: Value) -> Row {
    Row {
        identity,
        params,
        zero,
        residual,
    }
}

pub fn path_equality(max_n: usize) -> Vec<Row> {
    (0..=max_n)
        .map(|n| {
            let a = changhee_q_poly(n);
            let b = changhee_q_poly_direct(n);
            let diff = a.poly() - b.poly();
            row(
                "path-equality",
                vec![("n", n.into())],
                diff.is_zero(),
                encode::ypoly_value(&diff),
            )
        })
        .collect()
}

pub fn roundtrip(max_n: usize, max_r: u32) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let diff = &euler_from_changhee(n, 1)? - &euler_q_poly(n);
        rows.push(row(
            "roundtrip",
            vec![("n", n.into()), ("r", 1.into())],
            diff.is_zero(),
            encode::ypoly_value(&diff),
        ));
    }
    for r in 2..=max_r {
        for n in 0..=max_n.min(8) {
            let diff = &euler_from_changhee(n, r)? - &euler_q_higher(n, r)?;
            rows.push(row(
                "roundtrip",
                vec![("n", n.into()), ("r", r.into())],
                diff.is_zero(),
                encode::ypoly_value(&diff),
            ));
        }
    }
    Ok(rows)
}

pub fn recurrence(max_n: usize) -> Vec<Row> {
    (0..=max_n)
        .map(|n| {
            let res = verify_recurrence(n);
            let params = res
                .params
                .iter()
                .map(|(k, v)| (*k, Value::from(*v)))
                .collect();
            row(
                "recurrence",
                params,
                res.is_zero(),
                encode::ypoly_value(&res.residual),
            )
        })
        .collect()
}

pub fn distribution(max_n: usize, ds: &[u32]) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for &d in ds {
            let res = verify_distribution(n, d)?;
            let params = res
                .params
                .iter()
                .map(|(k, v)| (*k, Value::from(*v)))
                .collect();
            rows.push(row(
                "distribution",
                params,
                res.is_zero(),
                encode::ypoly_value(&res.residual),
            ));
        }
    }
    Ok(rows)
}

pub fn gf(max_n: usize, big_m: usize, k: usize) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let (a, b) = gf_check(n, big_m, k)?;
        let diff = &a - &b;
        rows.push(row(
            "gf",
            vec![("n", n.into())],
            diff.is_zero(),
            encode::qseries_value(&diff),
        ));
    }
    for n in 0..=max_n.min(6) {
        for x0 in 0..=2u32 {
            let (a, b) = gf_check_poly(n, x0, big_m, k)?;
            let diff = &a - &b;
            rows.push(row(
                "gf",
                vec![("n", n.into()), ("x0", x0.into())],
                diff.is_zero(),
                encode::qseries_value(&diff),
            ));
        }
    }
    Ok(rows)
}

pub fn classical(max_n: usize) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for x0 in 0..=5u32 {
            let x = BigRat::from_integer(BigInt::from(x0));
            let de = euler_q_poly(n).classical_limit(x0)? - classical_euler_poly(n).eval(&x);
            rows.push(row(
                "classical",
                vec![("family", "euler".into()), ("n", n.into()), ("x0", x0.into())],
                de.is_zero(),
                encode::rat_value(&de),
            ));
            let dc =
                changhee_q_poly(n).poly().classical_limit(x0)? - classical_changhee_poly(n).eval(&x);
            rows.push(row(
                "classical",
                vec![
                    ("family", "changhee".into()),
                    ("n", n.into()),
                    ("x0", x0.into()),
                ],
                dc.is_zero(),
                encode::rat_value(&dc),
            ));
        }
        // the q -> 1 Changhee number is (-1)^n n!/2^n
        let want = BigRat::new(
            BigInt::from(if n % 2 == 1 { -1 } else { 1 }) * factorial(n),
            BigInt::from(2).pow(n as u32),
        );
        let dn = changhee_q_poly(n).number().limit_q1()? - want;
        rows.push(row(
            "classical",
            vec![("family", "changhee-number".into()), ("n", n.into())],
            dn.is_zero(),
            encode::rat_value(&dn),
        ));
    }
    Ok(rows)
}

pub fn carlitz_suite(max_n: usize) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let mut sum = QRatFn::zero();
        for k in 0..=n {
            let c = QRatFn::from_rat(BigRat::from_integer(binomial(n, k)));
            sum = &sum + &(&(&c * &QRatFn::q_pow(k)) * &euler_q_number(k));
        }
        let rhs = if n == 0 {
            QRatFn::from_poly(QPoly::two_q())
        } else {
            QRatFn::zero()
        };
        let dn = &(&(&QRatFn::q_pow(1) * &sum) + &euler_q_number(n)) - &rhs;
        rows.push(row(
            "carlitz",
            vec![("check", "number-recurrence".into()), ("n", n.into())],
            dn.is_zero(),
            encode::ratfn_value(&dn),
        ));

        let p = euler_q_poly(n);
        let shift_rhs = q_bracket_x()
            .pow(n as u32)
            .scale(&QRatFn::from_poly(QPoly::two_q()));
        let ds = &(&p.shift_x(1).scale(&QRatFn::q_pow(1)) + &p) - &shift_rhs;
        rows.push(row(
            "carlitz",
            vec![("check", "shift".into()), ("n", n.into())],
            ds.is_zero(),
            encode::ypoly_value(&ds),
        ));

        let dr = &euler_q_poly_rebased(n, 1, 0)? - &p;
        rows.push(row(
            "carlitz",
            vec![("check", "rebase-trivial".into()), ("n", n.into())],
            dr.is_zero(),
            encode::ypoly_value(&dr),
        ));

        let dh = &euler_q_higher(n, 1)? - &p;
        rows.push(row(
            "carlitz",
            vec![("check", "order-one".into()), ("n", n.into())],
            dh.is_zero(),
            encode::ypoly_value(&dh),
        ));
    }
    Ok(rows)
}

pub fn stirling_suite(max_n: usize) -> Vec<Row> {
    let mut rows = Vec::new();
    // Bell numbers by the triangle, independent of the second-kind table
    let mut bell_row = vec![BigInt::one()];
    let y = YPoly::monomial_y(1, QRatFn::one());
    for n in 0..=max_n {
        let mut dev = BigInt::zero();
        for m in 0..=n {
            let mut s21 = BigInt::zero();
            let mut s12 = BigInt::zero();
            for k in m..=n {
                s21 += stirling2(n, k) * stirling1(k, m);
                s12 += stirling1(n, k) * stirling2(k, m);
            }
            let expected = if n == m { BigInt::one() } else { BigInt::zero() };
            dev += (s21 - &expected).abs() + (s12 - &expected).abs();
        }
        rows.push(row(
            "stirling",
            vec![("check", "orthogonality".into()), ("n", n.into())],
            dev.is_zero(),
            encode::int_value(&dev),
        ));

        let abs_sum: BigInt = (0..=n).map(|k| stirling1(n, k).abs()).sum();
        let s2_sum: BigInt = (0..=n).map(|k| stirling2(n, k)).sum();
        let sum_dev = (abs_sum - factorial(n)).abs() + (s2_sum - &bell_row[0]).abs();
        rows.push(row(
            "stirling",
            vec![("check", "row-sums".into()), ("n", n.into())],
            sum_dev.is_zero(),
            encode::int_value(&sum_dev),
        ));

        let expansion = YPoly::from_coeffs(
            (0..=n)
                .map(|k| QRatFn::from_rat(BigRat::from_integer(stirling1(n, k))))
                .collect(),
        );
        let diff = &falling_factorial(&y, n) - &expansion;
        rows.push(row(
            "stirling",
            vec![("check", "falling-expansion".into()), ("n", n.into())],
            diff.is_zero(),
            encode::ypoly_value(&diff),
        ));

        let mut next = Vec::with_capacity(bell_row.len() + 1);
        next.push(bell_row.last().expect("nonempty").clone());
        for v in &bell_row {
            let last = next.last().expect("nonempty").clone();
            next.push(last + v);
        }
        bell_row = next;
    }
    rows
}

/// Largest level count L <= want with p^(r*L) within the summation budget.
fn capped_levels(p: u64, r: u32, want: u32) -> u32 {
    (1..=want)
        .take_while(|&n| {
            p.checked_pow(r * n)
                .map_or(false, |size| size <= SUMMATION_BUDGET)
        })
        .last()
        .unwrap_or(0)
}

fn profile_ok(profile: &[u32]) -> bool {
    !profile.is_empty()
        && profile.iter().enumerate().all(|(i, &v)| v >= i as u32)
        && profile.windows(2).all(|w| w[0] <= w[1])
}

fn profile_value(profile: &[u32]) -> Value {
    Value::Array(profile.iter().map(|&v| Value::from(v)).collect())
}

pub fn padic_suite(
    ps: &[u64],
    q0_override: Option<i64>,
    levels: u32,
    precision: u32,
) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &p in ps {
        let q0 = q0_override.unwrap_or((p + 1) as i64);
        let uni = capped_levels(p, 1, levels);

        let mut cells: Vec<(IntegrandSpec, QRatFn, &'static str, i64)> = vec![
            (IntegrandSpec::Constant(1), QRatFn::one(), "constant", q0),
            (IntegrandSpec::QPower(1), q_power_target(1), "q-power-1", q0),
            (IntegrandSpec::QPower(2), q_power_target(2), "q-power-2", q0),
            (
                IntegrandSpec::BracketPower(1, 0),
                euler_q_number(1),
                "bracket-1-0",
                q0,
            ),
            (
                IntegrandSpec::BracketPower(2, 1),
                euler_q_poly(2).at_x(1),
                "bracket-2-1",
                q0,
            ),
            (
                IntegrandSpec::BracketBinom(1, 0),
                changhee_q_poly(1).number().clone(),
                "binom-1-0",
                q0,
            ),
            (
                IntegrandSpec::BracketBinom(2, 1),
                &changhee_q_poly(2).poly().at_x(1)
                    * &QRatFn::from_rat(BigRat::new(BigInt::one(), BigInt::from(2))),
                "binom-2-1",
                q0,
            ),
        ];
        // falling-factorial cells compare against the classical polynomials,
        // which only the q0 = 1 measure reproduces
        for (n, x0) in [(1u32, 0u32), (2, 1)] {
            let target = QRatFn::from_rat(
                classical_changhee_poly(n as usize).eval(&BigRat::from_integer(BigInt::from(x0))),
            );
            let name: &'static str = if n == 1 { "falling-1-0" } else { "falling-2-1" };
            cells.push((IntegrandSpec::Falling(n, x0), target, name, 1));
        }

        for (f, target, name, cell_q0) in cells {
            if uni == 0 {
                rows.push(row(
                    "padic",
                    vec![("cell", name.into()), ("p", p.into())],
                    false,
                    Value::String("no level fits the summation budget".into()),
                ));
                continue;
            }
            let profile = convergence_profile(&f, &target, p, cell_q0, uni, precision)?;
            rows.push(row(
                "padic",
                vec![("cell", name.into()), ("levels", uni.into()), ("p", p.into())],
                profile_ok(&profile),
                profile_value(&profile),
            ));
        }

        let multi = capped_levels(p, 2, levels);
        for n in 0..=2u32 {
            if multi == 0 {
                rows.push(row(
                    "padic",
                    vec![("cell", "multivariate".into()), ("n", n.into()), ("p", p.into())],
                    false,
                    Value::String("no level fits the summation budget".into()),
                ));
                continue;
            }
            let target = euler_q_higher(n as usize, 2)?.eval_y(&QRatFn::one());
            let t = target_residue(&target, p, q0, precision)?;
            let mut profile = Vec::with_capacity(multi as usize);
            for level in 1..=multi {
                let approx = multivariate_integral(n, 2, p, q0, level, precision)?;
                profile.push(approx.valuation_vs(&t));
            }
            rows.push(row(
                "padic",
                vec![
                    ("cell", "multivariate".into()),
                    ("levels", multi.into()),
                    ("n", n.into()),
                    ("p", p.into()),
                ],
                profile_ok(&profile),
                profile_value(&profile),
            ));
        }
    }
    Ok(rows)
}

pub fn q_power_target(l: u32) -> QRatFn {
    // integral of q^(l x): [2]_q / (1 + q^(l+1))
    let den = &QPoly::one() + &QPoly::monomial(l as usize + 1, BigRat::one());
    &QRatFn::from_poly(QPoly::two_q()) / &QRatFn::from_poly(den)
}
