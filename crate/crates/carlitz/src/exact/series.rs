use super::qpoly::{BigRat, QPoly};
use super::ypoly::YPoly;
use num_traits::Zero;
use std::ops::{Add, Mul, Sub};

/// Power series in q truncated at a fixed order: exactly order+1 coefficients
/// for q^0 .. q^order. Arithmetic requires matching orders; the generating
/// function checks fix one order up front and stay inside it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: Vec<BigRat>,
}

impl QSeries {
    pub fn zero(order: usize) -> QSeries {
        QSeries {
            coeffs: vec![BigRat::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRat>) -> QSeries {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        QSeries { coeffs }
    }

    /// Truncate a polynomial to a series of the given order.
    pub fn from_poly(p: &QPoly, order: usize) -> QSeries {
        let mut s = QSeries::zero(order);
        for (i, c) in p.coeffs().iter().take(order + 1).enumerate() {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, i: usize) -> &mut BigRat {
        &mut self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRat) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> QSeries {
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "series inverse needs a unit constant term");
        let k = self.order();
        let mut out = QSeries::zero(k);
        out.coeffs[0] = c0.recip();
        for i in 1..=k {
            let mut acc = BigRat::zero();
            for j in 1..=i {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out.coeffs[i - j];
                }
            }
            out.coeffs[i] = -acc / c0;
        }
        out
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        let k = self.order();
        let mut out = QSeries::zero(k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(k - i + 1).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// Power series in t truncated at a fixed order, with polynomial-in-(q, y)
/// coefficients. Holds expanded generating functions: the t^n coefficient of
/// an exponential generating function is the n-th object divided by n!.
#[derive(Clone, PartialEq, Debug)]
pub struct TSeries {
    coeffs: Vec<YPoly>,
}

impl TSeries {
    pub fn from_coeffs(coeffs: Vec<YPoly>) -> TSeries {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        TSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[YPoly] {
        &self.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qpoly::rat_int;

    #[test]
    fn inverse_of_one_plus_q_is_alternating() {
        let s = QSeries::from_poly(&QPoly::two_q(), 4).inv();
        assert_eq!(
            s.coeffs(),
            &[rat_int(1), rat_int(-1), rat_int(1), rat_int(-1), rat_int(1)]
        );
    }

    #[test]
    fn mul_truncates_at_order() {
        let a = QSeries::from_poly(&QPoly::from_ints(&[1, 1, 1]), 2);
        let sq = &a * &a;
        assert_eq!(sq.coeffs(), &[rat_int(1), rat_int(2), rat_int(3)]);
    }

    #[test]
    fn inv_is_two_sided() {
        let a = QSeries::from_poly(&QPoly::from_ints(&[2, -1, 3]), 6);
        let prod = &a * &a.inv();
        let mut unit = QSeries::zero(6);
        *unit.coeff_mut(0) = rat_int(1);
        assert_eq!(prod, unit);
    }
}
