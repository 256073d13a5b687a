//! Dense univariate polynomials over the complex numbers.
//!
//! Coefficients are stored in ascending order: `coeffs[k]` multiplies `z^k`.
//! The zero polynomial is the empty coefficient list; any other polynomial
//! keeps a nonzero leading coefficient, so `degree` is well defined.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    /// Builds a polynomial from ascending coefficients, trimming exactly-zero
    /// leading terms so the representation is canonical.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn identity() -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    /// `c * z^k`.
    pub fn monomial(k: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Index of the lowest-order nonzero coefficient; `None` when zero.
    /// Coefficients at or below `tol` in magnitude count as zero so that
    /// structural monomial factors survive floating-point assembly.
    pub fn order(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().position(|c| c.norm_sqr() > tol * tol)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `p(a z + b)` by Horner over polynomial arithmetic.
    pub fn compose_affine(&self, a: Complex64, b: Complex64) -> Self {
        let inner = Self::new(vec![b, a]);
        let mut acc = Self::zero();
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Self::constant(c);
        }
        acc
    }

    /// Coefficients reversed: `z^deg * p(1/z)`. Zero stays zero.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().copied().collect())
    }

    /// Divides by `(z - root)`, returning quotient and remainder.
    pub fn divide_linear(&self, root: Complex64) -> (Self, Complex64) {
        if self.coeffs.is_empty() {
            return (Self::zero(), Complex64::new(0.0, 0.0));
        }
        let mut quotient = vec![Complex64::new(0.0, 0.0); self.coeffs.len() - 1];
        let mut carry = Complex64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if k == 0 {
                carry = c + carry * root;
            } else {
                carry = if k == self.coeffs.len() - 1 { c } else { c + carry * root };
                quotient[k - 1] = carry;
            }
        }
        (Self::new(quotient), carry)
    }

    /// Divides by `z^k`; the dropped low-order coefficients are discarded.
    pub fn shift_down(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        Self::new(self.coeffs[k..].to_vec())
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    /// Copy with leading coefficients dropped while their modulus stays below
    /// `rel_tol` times the largest coefficient modulus. Arithmetic whose exact
    /// result cancels a leading term often leaves it at ulp size instead;
    /// left in place it would inflate the degree and corrupt root counts.
    pub fn trim_leading(&self, rel_tol: f64) -> Self {
        let threshold = rel_tol * self.max_coeff_norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= threshold) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    /// Copy with leading coefficient normalized to 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        Self::new(self.coeffs.iter().map(|&c| c / lc).collect())
    }

    /// Equality up to a scalar factor, coefficient-wise after normalizing
    /// both leading coefficients to 1.
    pub fn approx_eq_up_to_scale(&self, other: &Self, tol: f64) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        let a = self.monic();
        let b = other.monic();
        if a.coeffs.len() != b.coeffs.len() {
            return false;
        }
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .all(|(x, y)| (x - y).norm() <= tol)
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        ComplexPoly::new(coeffs)
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        ComplexPoly::new(coeffs)
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut coeffs =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ComplexPoly::new(coeffs)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        ComplexPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}
