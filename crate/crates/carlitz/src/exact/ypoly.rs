use super::qpoly::{BigRat, QPoly};
use super::ratfn::QRatFn;
use crate::error::Result;
use num_traits::One;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in the formal variable y with rational-function coefficients.
/// y stands for q^x and is never expanded: substituting x -> x+a multiplies
/// the y^l coefficient by q^(a*l), and "evaluation at x = x0" means y = q^x0.
/// Stored by ascending y-degree with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct YPoly {
    coeffs: Vec<QRatFn>,
}

impl YPoly {
    pub fn zero() -> YPoly {
        YPoly { coeffs: Vec::new() }
    }

    pub fn one() -> YPoly {
        YPoly::constant(QRatFn::one())
    }

    pub fn constant(c: QRatFn) -> YPoly {
        YPoly::from_coeffs(vec![c])
    }

    /// c * y^k.
    pub fn monomial_y(k: usize, c: QRatFn) -> YPoly {
        if c.is_zero() {
            return YPoly::zero();
        }
        let mut coeffs = vec![QRatFn::zero(); k + 1];
        coeffs[k] = c;
        YPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<QRatFn>) -> YPoly {
        let mut p = YPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(QRatFn::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[QRatFn] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> QRatFn {
        self.coeffs.get(k).cloned().unwrap_or_else(QRatFn::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &QRatFn) -> YPoly {
        if c.is_zero() {
            return YPoly::zero();
        }
        YPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> YPoly {
        let mut acc = YPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute x -> x + a, i.e. scale the y^l coefficient by q^(a*l).
    /// Negative shifts divide by the corresponding power of q.
    pub fn shift_x(&self, a: i64) -> YPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(l, c)| {
                let e = a.unsigned_abs() as usize * l;
                let q_pow = QRatFn::q_pow(e);
                if a >= 0 {
                    c * &q_pow
                } else {
                    c / &q_pow
                }
            })
            .collect();
        YPoly { coeffs }
    }

    /// Evaluate at an explicit rational-function value of y.
    pub fn eval_y(&self, y0: &QRatFn) -> QRatFn {
        let mut acc = QRatFn::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * y0) + c;
        }
        acc
    }

    /// Specialize y = q^x0, coupling y back to q for an integer argument.
    pub fn at_x(&self, x0: u32) -> QRatFn {
        self.eval_y(&QRatFn::q_pow(x0 as usize))
    }

    /// Classical limit: specialize y = q^x0, then let q -> 1.
    pub fn classical_limit(&self, x0: u32) -> Result<BigRat> {
        self.at_x(x0).limit_q1()
    }

    /// Substitute q -> q^d in every coefficient.
    pub fn subst_q_pow(&self, d: u32) -> YPoly {
        YPoly {
            coeffs: self.coeffs.iter().map(|c| c.subst_q_pow(d)).collect(),
        }
    }
}

impl Add for &YPoly {
    type Output = YPoly;
    fn add(self, rhs: &YPoly) -> YPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        YPoly::from_coeffs(coeffs)
    }
}

impl Sub for &YPoly {
    type Output = YPoly;
    fn sub(self, rhs: &YPoly) -> YPoly {
        self + &(-rhs)
    }
}

impl Neg for &YPoly {
    type Output = YPoly;
    fn neg(self) -> YPoly {
        YPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &YPoly {
    type Output = YPoly;
    fn mul(self, rhs: &YPoly) -> YPoly {
        if self.is_zero() || rhs.is_zero() {
            return YPoly::zero();
        }
        let mut coeffs = vec![QRatFn::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        YPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match l {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{l}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// The q-bracket [x]_q = (y - 1)/(q - 1) as a YPoly in y.
pub fn q_bracket_x() -> YPoly {
    let q_minus_1 = QPoly::from_coeffs(vec![-BigRat::one(), BigRat::one()]);
    let inv = QRatFn::from_poly(q_minus_1)
        .inv()
        .expect("q - 1 is nonzero");
    YPoly::from_coeffs(vec![-&inv, inv])
}
