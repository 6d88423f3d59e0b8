//! Complex numbers with exact rational real and imaginary parts, and small
//! matrices over them.
//!
//! Points of the degree-2 upper half-space used in this crate always have
//! rational coordinates, so the usual Möbius/fractional-linear machinery can
//! be carried out exactly in ℚ(i).

use crate::mat::rat;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element of ℚ(i): `re + im·i` with rational `re`, `im`.
#[derive(Clone, PartialEq, Eq)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    /// The rational `r` as a complex number.
    pub fn from_rational(r: BigRational) -> Self {
        Gaussian { re: r, im: BigRational::zero() }
    }

    /// The integer `n` as a complex number.
    pub fn from_i64(n: i64) -> Self {
        Gaussian::from_rational(rat(n))
    }

    /// `a + b·i` with integer parts.
    pub fn from_i64_pair(a: i64, b: i64) -> Self {
        Gaussian { re: rat(a), im: rat(b) }
    }

    pub fn zero() -> Self {
        Gaussian { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Gaussian { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Gaussian { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²` (the norm to ℚ).
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "Gaussian::inv: division by zero");
        Gaussian { re: &self.re / &n, im: -(&self.im / &n) }
    }

    /// Whether the imaginary part is strictly positive.
    pub fn has_positive_im(&self) -> bool {
        self.im.is_positive()
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &Gaussian {
    type Output = Gaussian;
    fn div(self, rhs: &Gaussian) -> Gaussian {
        self * &rhs.inv()
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A 2×2 matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GMat2 {
    pub e: [[Gaussian; 2]; 2],
}

impl GMat2 {
    pub fn new(a: Gaussian, b: Gaussian, c: Gaussian, d: Gaussian) -> Self {
        GMat2 { e: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        GMat2::new(Gaussian::one(), Gaussian::zero(), Gaussian::zero(), Gaussian::one())
    }

    pub fn at(&self, i: usize, j: usize) -> &Gaussian {
        &self.e[i][j]
    }

    pub fn matmul(&self, o: &GMat2) -> GMat2 {
        let mut out = GMat2::new(Gaussian::zero(), Gaussian::zero(), Gaussian::zero(), Gaussian::zero());
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Gaussian::zero();
                for k in 0..2 {
                    acc = &acc + &(&self.e[i][k] * &o.e[k][j]);
                }
                out.e[i][j] = acc;
            }
        }
        out
    }

    pub fn det(&self) -> Gaussian {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    /// Inverse; panics if singular.
    pub fn inv(&self) -> GMat2 {
        let d = self.det();
        assert!(!d.is_zero(), "GMat2::inv: singular");
        let di = d.inv();
        GMat2::new(
            &self.e[1][1] * &di,
            &(-&self.e[0][1]) * &di,
            &(-&self.e[1][0]) * &di,
            &self.e[0][0] * &di,
        )
    }

    /// Whether the matrix is symmetric (`e[0][1] == e[1][0]`).
    pub fn is_symmetric(&self) -> bool {
        self.e[0][1] == self.e[1][0]
    }
}
