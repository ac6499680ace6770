//! Stirling numbers of both kinds, falling factorials, generalized binomial
//! coefficients, and q-integers.

use crate::error::{Error, Result};
use crate::exact::{BigRat, QPoly, QRatFn, YPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{LazyLock, OnceLock, RwLock};

pub use crate::exact::q_bracket_x;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StirlingKind {
    /// Signed first kind: (x)_n = sum_k S1(n,k) x^k.
    First,
    /// Second kind: x^n = sum_k S2(n,k) (x)_k.
    Second,
}

/// Triangular table of Stirling numbers, grown on demand. Rows are complete:
/// row n holds entries for k = 0..=n.
struct Table {
    kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl Table {
    fn new(kind: StirlingKind) -> Table {
        Table {
            kind,
            rows: vec![vec![BigInt::one()]],
        }
    }

    fn ensure(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let prev = &self.rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let from_lower = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
                let same = if k < m { &prev[k] } else { &BigInt::zero() };
                let entry = match self.kind {
                    StirlingKind::First => from_lower - BigInt::from(m - 1) * same,
                    StirlingKind::Second => from_lower + BigInt::from(k) * same,
                };
                row.push(entry);
            }
            self.rows.push(row);
        }
    }
}

static S1: LazyLock<RwLock<Table>> = LazyLock::new(|| RwLock::new(Table::new(StirlingKind::First)));
static S2: LazyLock<RwLock<Table>> =
    LazyLock::new(|| RwLock::new(Table::new(StirlingKind::Second)));

/// Verification self-test seam: negate one table entry at read time.
static FLIP: OnceLock<(StirlingKind, usize, usize)> = OnceLock::new();

/// Install a single sign flip at entry (n, k) of one Stirling table, applied
/// on every read for the rest of the process. The verification CLI uses this
/// as a mutation smoke test: a correct suite must report failures with any
/// flip installed. Callable at most once per process, and meant to be called
/// before any computation has warmed the memo caches.
pub fn inject_stirling_flip(kind: StirlingKind, n: usize, k: usize) -> Result<()> {
    FLIP.set((kind, n, k)).map_err(|_| Error::FlipAlreadySet)
}

fn lookup(table: &RwLock<Table>, kind: StirlingKind, n: usize, k: usize) -> BigInt {
    assert!(k <= n, "stirling index out of range: k = {k} > n = {n}");
    {
        let guard = table.read().expect("stirling table lock");
        if n < guard.rows.len() {
            return apply_flip(kind, n, k, guard.rows[n][k].clone());
        }
    }
    let mut guard = table.write().expect("stirling table lock");
    guard.ensure(n);
    apply_flip(kind, n, k, guard.rows[n][k].clone())
}

fn apply_flip(kind: StirlingKind, n: usize, k: usize, value: BigInt) -> BigInt {
    match FLIP.get() {
        Some(&(fk, fn_, fk_)) if fk == kind && fn_ == n && fk_ == k => -value,
        _ => value,
    }
}

/// Signed Stirling number of the first kind.
///
/// Panics if k > n.
pub fn stirling1(n: usize, k: usize) -> BigInt {
    lookup(&S1, StirlingKind::First, n, k)
}

/// Stirling number of the second kind.
///
/// Panics if k > n.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    lookup(&S2, StirlingKind::Second, n, k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Falling factorial (z)_n = z(z-1)...(z-n+1) of a y-polynomial argument.
pub fn falling_factorial(z: &YPoly, n: usize) -> YPoly {
    let mut acc = YPoly::one();
    for i in 0..n {
        let shifted = z - &YPoly::constant(QRatFn::from_int(i as i64));
        acc = &acc * &shifted;
    }
    acc
}

/// Generalized binomial coefficient: falling factorial over n factorial.
pub fn gen_binom(z: &YPoly, n: usize) -> YPoly {
    let inv_fact = QRatFn::from_rat(BigRat::new(BigInt::one(), factorial(n)));
    falling_factorial(z, n).scale(&inv_fact)
}

/// The q-integer [m]_q = 1 + q + ... + q^(m-1); [0]_q = 0.
pub fn q_integer(m: usize) -> QPoly {
    QPoly::from_coeffs(vec![BigRat::one(); m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn first_kind_signed_values() {
        assert_eq!(stirling1(3, 2), BigInt::from(-3));
        assert_eq!(stirling1(4, 1), BigInt::from(-6));
        assert_eq!(stirling1(4, 2), BigInt::from(11));
        assert_eq!(stirling1(7, 7), BigInt::one());
        assert_eq!(stirling1(5, 0), BigInt::zero());
    }

    #[test]
    fn second_kind_values() {
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(6, 3), BigInt::from(90));
        assert_eq!(stirling2(5, 5), BigInt::one());
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn out_of_range_index_panics() {
        stirling1(2, 3);
    }

    #[test]
    fn falling_factorial_of_y_expands_first_kind_row() {
        // (y)_n = sum_k S1(n,k) y^k
        let y = YPoly::monomial_y(1, QRatFn::one());
        for n in 0..=8 {
            let ff = falling_factorial(&y, n);
            for k in 0..=n {
                assert_eq!(
                    ff.coeff(k),
                    QRatFn::from_rat(BigRat::from_integer(stirling1(n, k))),
                    "coefficient ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn gen_binom_examples() {
        let y = YPoly::monomial_y(1, QRatFn::one());
        let b2 = gen_binom(&y, 2);
        assert_eq!(b2.coeff(2), QRatFn::from_rat(rat(1, 2)));
        assert_eq!(b2.coeff(1), QRatFn::from_rat(rat(-1, 2)));
        assert_eq!(gen_binom(&y, 0), YPoly::one());
        // [2]_q choose 2 = (1+q)q/2
        let z = YPoly::constant(QRatFn::from_poly(QPoly::two_q()));
        let got = gen_binom(&z, 2);
        let want = YPoly::constant(QRatFn::from_poly(
            QPoly::from_coeffs(vec![rat(0, 1), rat(1, 2), rat(1, 2)]),
        ));
        assert_eq!(got, want);
    }

    #[test]
    fn q_integer_values() {
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(2), QPoly::two_q());
        assert_eq!(q_integer(5), QPoly::from_ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(factorial(0), BigInt::one());
    }
}
