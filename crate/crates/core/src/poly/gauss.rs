use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{fmt_rational, rational_to_f64, Coeff, Rational};

/// `re + i*im` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl Add<&GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(self, rhs: &Self) -> Self {
        GaussianRational::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: &Self) -> Self {
        GaussianRational::new(self.re - &rhs.re, self.im - &rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl Mul<&GaussianRational> for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: &Self) -> Self {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Coeff for GaussianRational {
    fn from_rational(r: Rational) -> Self {
        r.into()
    }
    fn scale(&self, r: &Rational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn render(&self) -> String {
        let im = |r: &Rational| {
            if r.is_one() {
                "i".to_string()
            } else if *r == -Rational::one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(r))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re),
            (true, false) => im(&self.im),
            (false, false) => {
                let s = im(&self.im);
                match s.strip_prefix('-') {
                    Some(rest) => format!("{} - {}", fmt_rational(&self.re), rest),
                    None => format!("{} + {}", fmt_rational(&self.re), s),
                }
            }
        }
    }
    fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}
