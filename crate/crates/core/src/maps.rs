//! Construction of Chebyshev and Newton iteration maps for functions of the
//! form p(z)e^{q(z)}, plus series data at infinity.
//!
//! Both methods applied to p e^q are rational: the exponential cancels
//! between f and its derivatives. With B = p' + pq' and
//! A = 2(p')^2 + 3p^2(q')^2 + 6pp'q' + pp'' + p^2 q'', the Chebyshev
//! iteration is z - pA/(2B^3) and the Newton iteration is z - p/B.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::ComplexPoly;
use crate::rational::{MapValue, RationalMap};
use crate::tol::{POLE_GUARD, SERIES_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildError {
    /// p is identically zero, so the function has no roots to find.
    ZeroFunction,
    /// p' + pq' is identically zero: the function is constant and neither
    /// iteration is defined.
    DegenerateInput,
}

impl core::fmt::Display for BuildError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ZeroFunction => write!(f, "p must not be the zero polynomial"),
            Self::DegenerateInput => {
                write!(f, "p' + pq' vanishes identically (constant function)")
            }
        }
    }
}

/// A function p(z)e^{q(z)} described by its two polynomials. The constant
/// term of q is dropped on construction; it scales the function but leaves
/// both iteration maps unchanged.
#[derive(Clone, Debug)]
pub struct ExpPolyFunction {
    p: ComplexPoly,
    q: ComplexPoly,
}

impl ExpPolyFunction {
    pub fn new(p: ComplexPoly, q: ComplexPoly) -> Result<Self, BuildError> {
        if p.is_zero() {
            return Err(BuildError::ZeroFunction);
        }
        let mut qc = q.coeffs().to_vec();
        if !qc.is_empty() {
            qc[0] = Complex64::new(0.0, 0.0);
        }
        Ok(Self {
            p,
            q: ComplexPoly::new(qc),
        })
    }

    /// The function z e^{z^n}.
    pub fn z_exp_zn(n: u32) -> Self {
        Self {
            p: ComplexPoly::identity(),
            q: ComplexPoly::monomial(n as usize, Complex64::new(1.0, 0.0)),
        }
    }

    pub fn p(&self) -> &ComplexPoly {
        &self.p
    }

    pub fn q(&self) -> &ComplexPoly {
        &self.q
    }

    /// p' + pq', the denominator core shared by both iteration maps.
    fn derivative_core(&self) -> ComplexPoly {
        &self.p.derivative() + &(&self.p * &self.q.derivative())
    }
}

pub fn build_chebyshev(f: &ExpPolyFunction) -> Result<RationalMap, BuildError> {
    let b = f.derivative_core();
    if b.is_zero() {
        return Err(BuildError::DegenerateInput);
    }
    let p = &f.p;
    let p1 = p.derivative();
    let p2 = p1.derivative();
    let q1 = f.q.derivative();
    let q2 = q1.derivative();

    let two = Complex64::new(2.0, 0.0);
    let a = &(&(&(&p1 * &p1).scale(two) + &(&(p * p) * &(&q1 * &q1)).scale(Complex64::new(3.0, 0.0)))
        + &(&(&(p * &p1) * &q1).scale(Complex64::new(6.0, 0.0)) + &(p * &p2)))
        + &(&(p * p) * &q2);

    let den = (&(&b * &b) * &b).scale(two);
    let num = &den.shift_up(1) - &(p * &a);
    Ok(RationalMap::new(num, den).expect("denominator is a nonzero polynomial"))
}

pub fn build_newton(f: &ExpPolyFunction) -> Result<RationalMap, BuildError> {
    let b = f.derivative_core();
    if b.is_zero() {
        return Err(BuildError::DegenerateInput);
    }
    let num = &b.shift_up(1) - &f.p;
    Ok(RationalMap::new(num, b).expect("denominator is a nonzero polynomial"))
}

/// The Chebyshev iteration for z e^{z^n}, from its closed coefficient form
/// n z^{n+1} (2n^2 z^{2n} + 3n z^n - n + 1) over 2(n z^n + 1)^3.
pub fn build_cn(n: u32) -> RationalMap {
    assert!(n >= 1, "n must be at least 1");
    let n = n as usize;
    let nf = n as f64;

    let mut num = vec![Complex64::new(0.0, 0.0); 3 * n + 2];
    num[n + 1] = Complex64::new(nf * (1.0 - nf), 0.0);
    num[2 * n + 1] = Complex64::new(3.0 * nf * nf, 0.0);
    num[3 * n + 1] = Complex64::new(2.0 * nf * nf * nf, 0.0);

    let mut den = vec![Complex64::new(0.0, 0.0); 3 * n + 1];
    den[0] = Complex64::new(2.0, 0.0);
    den[n] = Complex64::new(6.0 * nf, 0.0);
    den[2 * n] = Complex64::new(6.0 * nf * nf, 0.0);
    den[3 * n] = Complex64::new(2.0 * nf * nf * nf, 0.0);

    RationalMap::new(ComplexPoly::new(num), ComplexPoly::new(den))
        .expect("denominator is a nonzero polynomial")
}

/// Multiplier of the linear map that Chebyshev's method produces for z^d.
pub fn chebyshev_power_multiplier(d: u32) -> f64 {
    let d = d as f64;
    (2.0 * d - 1.0) * (d - 1.0) / (2.0 * d * d)
}

/// The Chebyshev iteration for e^{z^n}, n >= 2:
/// (2n^2 z^{2n} - 3n z^n - n + 1) / (2n^2 z^{2n-1}).
pub fn chebyshev_pure_exp(n: u32) -> RationalMap {
    assert!(n >= 2, "n must be at least 2");
    let n = n as usize;
    let nf = n as f64;

    let mut num = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
    num[0] = Complex64::new(1.0 - nf, 0.0);
    num[n] = Complex64::new(-3.0 * nf, 0.0);
    num[2 * n] = Complex64::new(2.0 * nf * nf, 0.0);

    let den = ComplexPoly::monomial(2 * n - 1, Complex64::new(2.0 * nf * nf, 0.0));
    RationalMap::new(ComplexPoly::new(num), den).expect("denominator is a nonzero polynomial")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// deg num <= deg den, so the map has a finite value at infinity.
    InfinityNotFixed,
    /// Infinity is fixed but its multiplier is not 1.
    NotParabolicAtInfinity,
}

impl core::fmt::Display for SeriesError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::InfinityNotFixed => write!(f, "the map does not fix infinity"),
            Self::NotParabolicAtInfinity => {
                write!(f, "infinity is not a parabolic fixed point of multiplier 1")
            }
        }
    }
}

/// Power series of g(z) = 1/R(1/z) at the origin, for maps with a parabolic
/// fixed point of multiplier 1 at infinity.
#[derive(Clone, Debug)]
pub struct InfinitySeries {
    /// a_1, a_2, ... of g(z) = a_1 z + a_2 z^2 + ...
    pub coeffs: Vec<Complex64>,
    /// Order of z = 0 as a root of g(z) - z: the first k >= 2 whose
    /// coefficient exceeds the series tolerance. None if no coefficient in
    /// range does.
    pub multiplicity: Option<usize>,
}

impl InfinitySeries {
    /// a_k, or zero beyond the computed range.
    pub fn coefficient(&self, k: usize) -> Complex64 {
        if k >= 1 && k <= self.coeffs.len() {
            self.coeffs[k - 1]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn petals(&self) -> Option<usize> {
        self.multiplicity.map(|m| m - 1)
    }
}

/// Expands 1/R(1/z) at the origin to `order` coefficients by power series
/// division of the reversed numerator and denominator. Requires infinity to
/// be a parabolic fixed point of multiplier 1, i.e. deg num = deg den + 1
/// with leading coefficients in ratio 1.
pub fn series_at_infinity(r: &RationalMap, order: usize) -> Result<InfinitySeries, SeriesError> {
    let dn = r.num().degree().unwrap_or(0);
    let dd = r.den().degree().unwrap_or(0);
    if r.num().is_zero() || dn <= dd {
        return Err(SeriesError::InfinityNotFixed);
    }
    if dn != dd + 1 {
        return Err(SeriesError::NotParabolicAtInfinity);
    }

    // 1/R(1/z) = z * revD(z)/revN(z); divide the reversed coefficient
    // sequences as power series.
    let rev_n = r.num().reversed();
    let rev_d = r.den().reversed();
    let lead = rev_n.coeff(0);

    let mut s = Vec::with_capacity(order);
    for j in 0..order {
        let mut acc = rev_d.coeff(j);
        for (i, si) in s.iter().enumerate() {
            acc -= si * rev_n.coeff(j - i);
        }
        s.push(acc / lead);
    }

    if (s[0] - Complex64::new(1.0, 0.0)).norm() > SERIES_TOL {
        return Err(SeriesError::NotParabolicAtInfinity);
    }

    let multiplicity = (2..=order).find(|&k| s[k - 1].norm() > SERIES_TOL);
    Ok(InfinitySeries {
        coeffs: s,
        multiplicity,
    })
}

/// Checks the affine conjugation identity for the Chebyshev iteration: with
/// T(z) = az + b and g = lambda * f(T(z)), the map built from g satisfies
/// T(C_g(T^{-1}(z))) = C_f(z). Returns the maximum deviation over random
/// pole-avoiding samples; errors propagate from degenerate inputs.
pub fn scaling_conjugate_check(
    f: &ExpPolyFunction,
    a: Complex64,
    b: Complex64,
    lambda: Complex64,
    samples: usize,
) -> Result<f64, BuildError> {
    let p_g = f.p.compose_affine(a, b).scale(lambda);
    let q_g = f.q.compose_affine(a, b);
    let g = ExpPolyFunction::new(p_g, q_g)?;

    let cf = build_chebyshev(f)?;
    let cg = build_chebyshev(&g)?;

    let cf_poles: Vec<Complex64> = cf.poles().iter().map(|r| r.value).collect();
    let cg_poles: Vec<Complex64> = cg.poles().iter().map(|r| r.value).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15);
    let mut worst = 0.0_f64;
    let mut taken = 0;
    let mut attempts = 0;
    while taken < samples && attempts < samples * 64 {
        attempts += 1;
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let w = (z - b) / a;
        if near_any(z, &cf_poles, POLE_GUARD) || near_any(w, &cg_poles, POLE_GUARD) {
            continue;
        }
        let (MapValue::Finite(lhs), MapValue::Finite(rhs)) = (cf.eval(z), cg.eval(w)) else {
            continue;
        };
        worst = worst.max((lhs - (a * rhs + b)).norm());
        taken += 1;
    }
    Ok(worst)
}

pub(crate) fn near_any(z: Complex64, points: &[Complex64], guard: f64) -> bool {
    points.iter().any(|&p| (z - p).norm() < guard)
}
