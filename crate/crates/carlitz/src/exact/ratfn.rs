use super::qpoly::{rat_int, BigRat, QPoly};
use super::series::QSeries;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Rational function in q, kept in canonical form at all times: numerator and
/// denominator are coprime over the rationals, the denominator has integer
/// coefficients that are primitive with a positive leading coefficient. Equal
/// values therefore have identical representations, and `==` decides equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QRatFn {
    num: QPoly,
    den: QPoly,
}

impl QRatFn {
    /// Canonicalize num/den. The only failure is a zero denominator.
    pub fn reduce(num: QPoly, den: QPoly) -> Result<QRatFn> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(QRatFn::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() > Some(0) {
            (num.div_exact(&g), den.div_exact(&g))
        } else {
            (num, den)
        };
        let (den_ints, content) = den.clear_content();
        den = QPoly::from_coeffs(den_ints.into_iter().map(BigRat::from_integer).collect());
        num = num.scale(&content.recip());
        Ok(QRatFn { num, den })
    }

    pub fn zero() -> QRatFn {
        QRatFn {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> QRatFn {
        QRatFn::from_poly(QPoly::one())
    }

    pub fn from_poly(p: QPoly) -> QRatFn {
        QRatFn {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_rat(c: BigRat) -> QRatFn {
        QRatFn::from_poly(QPoly::constant(c))
    }

    pub fn from_int(n: i64) -> QRatFn {
        QRatFn::from_rat(rat_int(n))
    }

    /// The monomial q^k.
    pub fn q_pow(k: usize) -> QRatFn {
        QRatFn::from_poly(QPoly::monomial(k, BigRat::one()))
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == QPoly::one() && self.den == QPoly::one()
    }

    pub fn inv(&self) -> Result<QRatFn> {
        QRatFn::reduce(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, mut e: u32) -> QRatFn {
        let mut base = self.clone();
        let mut acc = QRatFn::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute q -> q^d. Canonical form survives the substitution: the
    /// exponent map is multiplicative, preserves primitivity and the leading
    /// sign, and common roots of the images would pull back to common roots.
    pub fn subst_q_pow(&self, d: u32) -> QRatFn {
        QRatFn {
            num: self.num.subst_q_pow(d),
            den: self.den.subst_q_pow(d),
        }
    }

    pub fn eval_q(&self, q0: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Value at q = 1. Canonical form has already cancelled every removable
    /// (q-1) factor, so a vanishing denominator here is a genuine pole.
    pub fn limit_q1(&self) -> Result<BigRat> {
        self.eval_q(&BigRat::one())
            .map_err(|_| Error::EssentialPoleAtOne)
    }

    /// Taylor coefficients at q = 0 through order k.
    pub fn qseries(&self, k: usize) -> Result<QSeries> {
        if self.den.coeff(0).is_zero() {
            return Err(Error::NotRegularAtZero);
        }
        let num = QSeries::from_poly(&self.num, k);
        let den = QSeries::from_poly(&self.den, k);
        Ok(&num * &den.inv())
    }
}

impl Add for &QRatFn {
    type Output = QRatFn;
    fn add(self, rhs: &QRatFn) -> QRatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Classic gcd-aware sum: with g = gcd(d1, d2), the only candidate
        // factor shared by the new numerator and d1*(d2/g) divides g.
        let g = self.den.gcd(&rhs.den);
        if g.degree() > Some(0) {
            let d2_red = rhs.den.div_exact(&g);
            let d1_red = self.den.div_exact(&g);
            let num = &(&self.num * &d2_red) + &(&rhs.num * &d1_red);
            QRatFn::reduce(num, &self.den * &d2_red).expect("nonzero denominator")
        } else {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            QRatFn::reduce(num, &self.den * &rhs.den).expect("nonzero denominator")
        }
    }
}

impl Sub for &QRatFn {
    type Output = QRatFn;
    fn sub(self, rhs: &QRatFn) -> QRatFn {
        self + &(-rhs)
    }
}

impl Neg for &QRatFn {
    type Output = QRatFn;
    fn neg(self) -> QRatFn {
        QRatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QRatFn {
    type Output = QRatFn;
    fn mul(self, rhs: &QRatFn) -> QRatFn {
        if self.is_zero() || rhs.is_zero() {
            return QRatFn::zero();
        }
        // Cross-cancel before multiplying so reduce() sees coprime factors.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = if g1.degree() > Some(0) {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        } else {
            (self.num.clone(), rhs.den.clone())
        };
        let (n2, d1) = if g2.degree() > Some(0) {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        } else {
            (rhs.num.clone(), self.den.clone())
        };
        QRatFn::reduce(&n1 * &n2, &d1 * &d2).expect("nonzero denominator")
    }
}

/// Panics on a zero divisor; callers dividing by runtime data use `inv`.
impl Div for &QRatFn {
    type Output = QRatFn;
    fn div(self, rhs: &QRatFn) -> QRatFn {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl fmt::Display for QRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
