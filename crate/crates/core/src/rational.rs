//! Rational maps on the Riemann sphere, stored as a reduced fraction of
//! polynomials with a monic denominator.
//!
//! Reduction strips common monomial factors exactly, cancels matched
//! numerator/denominator root clusters by synthetic division with the same
//! averaged root (so the division errors cancel in the quotient of values),
//! and drops ulp-sized leading coefficients. Evaluation switches to the
//! reversed-coefficient form outside the unit disk, which stays finite for
//! arguments whose powers would overflow a direct Horner pass.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::poly::ComplexPoly;
use crate::roots::{find_roots_default, Root};
use crate::tol::CLUSTER_TOL;

/// Relative size below which a leading coefficient is treated as arithmetic
/// residue rather than genuine degree.
const REL_TRIM: f64 = 1e-10;

/// A point of the extended plane: the sphere minus nothing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MapValue {
    Finite(Complex64),
    Infinity,
}

impl MapValue {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, Self::Infinity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalMapError {
    ZeroDenominator,
}

impl core::fmt::Display for RationalMapError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ZeroDenominator => write!(f, "denominator is the zero polynomial"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RationalMap {
    num: ComplexPoly,
    den: ComplexPoly,
    // Reversed copies for evaluation outside the unit disk.
    rev_num: ComplexPoly,
    rev_den: ComplexPoly,
}

impl RationalMap {
    pub fn new(num: ComplexPoly, den: ComplexPoly) -> Result<Self, RationalMapError> {
        if den.is_zero() {
            return Err(RationalMapError::ZeroDenominator);
        }
        let (num, den) = reduce(num, den);
        Ok(Self::from_reduced(num, den))
    }

    pub fn from_poly(p: ComplexPoly) -> Self {
        Self::new(p, ComplexPoly::one()).expect("denominator is one")
    }

    /// Skips root-matched cancellation; used where the fraction is known to
    /// be reduced already, or where only evaluated values matter.
    fn new_uncancelled(num: ComplexPoly, den: ComplexPoly) -> Self {
        let num = num.trim_leading(REL_TRIM);
        let den = den.trim_leading(REL_TRIM);
        let k = num
            .order(0.0)
            .unwrap_or(0)
            .min(den.order(0.0).unwrap_or(0));
        Self::from_reduced(num.shift_down(k), den.shift_down(k))
    }

    fn from_reduced(num: ComplexPoly, den: ComplexPoly) -> Self {
        let lc = den.leading_coeff();
        let num = num.scale(lc.finv());
        let den = den.scale(lc.finv());
        let rev_num = num.reversed();
        let rev_den = den.reversed();
        Self {
            num,
            den,
            rev_num,
            rev_den,
        }
    }

    pub fn num(&self) -> &ComplexPoly {
        &self.num
    }

    pub fn den(&self) -> &ComplexPoly {
        &self.den
    }

    /// Degree as a map of the sphere: max of the two polynomial degrees.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn eval(&self, z: Complex64) -> MapValue {
        if self.num.is_zero() {
            return MapValue::Finite(Complex64::new(0.0, 0.0));
        }
        let v = if z.norm_sqr() > 1.0 {
            let w = z.finv();
            let dn = self.num.degree().unwrap_or(0) as i64;
            let dd = self.den.degree().unwrap_or(0) as i64;
            let dv = self.rev_den.eval(w);
            if dv.norm_sqr() == 0.0 {
                return MapValue::Infinity;
            }
            int_pow(z, dn - dd) * (self.rev_num.eval(w) / dv)
        } else {
            let dv = self.den.eval(z);
            if dv.norm_sqr() == 0.0 {
                return MapValue::Infinity;
            }
            self.num.eval(z) / dv
        };
        if v.is_finite() {
            MapValue::Finite(v)
        } else {
            MapValue::Infinity
        }
    }

    pub fn eval_extended(&self, v: MapValue) -> MapValue {
        match v {
            MapValue::Finite(z) => self.eval(z),
            MapValue::Infinity => self.value_at_infinity(),
        }
    }

    pub fn value_at_infinity(&self) -> MapValue {
        if self.num.is_zero() {
            return MapValue::Finite(Complex64::new(0.0, 0.0));
        }
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        match dn.cmp(&dd) {
            core::cmp::Ordering::Greater => MapValue::Infinity,
            core::cmp::Ordering::Equal => MapValue::Finite(self.num.leading_coeff()),
            core::cmp::Ordering::Less => MapValue::Finite(Complex64::new(0.0, 0.0)),
        }
    }

    /// The derivative as a map. Kept uncancelled beyond exact strips: at a
    /// multiple pole the numerator and squared denominator share factors, but
    /// every shared factor cancels in evaluated values, and critical point
    /// extraction goes through `wronskian` rather than this map's numerator.
    pub fn derivative(&self) -> Self {
        Self::new_uncancelled(self.wronskian(), &self.den * &self.den)
    }

    /// N'D - ND'. Its roots are the finite critical points that are not
    /// multiple poles; a pole of order m contributes a root of order m - 1.
    pub fn wronskian(&self) -> ComplexPoly {
        let w = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        w.trim_leading(REL_TRIM)
    }

    /// num - z * den; its roots are the finite fixed points with multiplicity.
    pub fn fixed_point_poly(&self) -> ComplexPoly {
        let phi = &self.num - &self.den.shift_up(1);
        phi.trim_leading(REL_TRIM)
    }

    /// Finite poles with multiplicity.
    pub fn poles(&self) -> Vec<Root> {
        match self.den.degree() {
            None | Some(0) => Vec::new(),
            Some(_) => match find_roots_default(&self.den) {
                Ok(set) => set.roots,
                Err(crate::roots::RootFindError::NonConvergence(set)) => set.roots,
                Err(crate::roots::RootFindError::ZeroPolynomial) => Vec::new(),
            },
        }
    }

    /// The map w -> 1/R(1/w), i.e. this map conjugated by inversion. Sends
    /// the behavior at infinity to the origin.
    pub fn invert_conjugate(&self) -> Result<Self, RationalMapError> {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let (num, den) = if dn >= dd {
            (self.den.reversed().shift_up(dn - dd), self.num.reversed())
        } else {
            (self.den.reversed(), self.num.reversed().shift_up(dd - dn))
        };
        Self::new(num, den)
    }

    /// Equality as maps, by cross-multiplication up to scale.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let lhs = (&self.num * &other.den).trim_leading(REL_TRIM);
        let rhs = (&other.num * &self.den).trim_leading(REL_TRIM);
        lhs.approx_eq_up_to_scale(&rhs, tol)
    }
}

fn int_pow(z: Complex64, k: i64) -> Complex64 {
    if k >= 0 {
        z.powu(k as u32)
    } else {
        z.finv().powu((-k) as u32)
    }
}

fn reduce(num: ComplexPoly, den: ComplexPoly) -> (ComplexPoly, ComplexPoly) {
    let num = num.trim_leading(REL_TRIM);
    let den = den.trim_leading(REL_TRIM);
    if num.is_zero() {
        return (num, ComplexPoly::one());
    }

    let k = num
        .order(0.0)
        .unwrap_or(0)
        .min(den.order(0.0).unwrap_or(0));
    let mut num = num.shift_down(k);
    let mut den = den.shift_down(k);

    if num.degree().unwrap_or(0) == 0 || den.degree().unwrap_or(0) == 0 {
        return (num, den);
    }
    // Root-matched cancellation needs trustworthy roots on both sides; if
    // either finder run misses its residual target, leave the fraction alone.
    let (num_roots, den_roots) = match (find_roots_default(&num), find_roots_default(&den)) {
        (Ok(n), Ok(d)) => (n, d),
        _ => return (num, den),
    };

    for dr in &den_roots.roots {
        let matched = num_roots.roots.iter().find(|nr| {
            (nr.value - dr.value).norm() <= CLUSTER_TOL * 1.0_f64.max(dr.value.norm())
        });
        if let Some(nr) = matched {
            let shared = (nr.value + dr.value) * 0.5;
            for _ in 0..nr.multiplicity.min(dr.multiplicity) {
                num = num.divide_linear(shared).0;
                den = den.divide_linear(shared).0;
            }
        }
    }
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn finite(v: MapValue) -> Complex64 {
        v.finite().expect("finite value")
    }

    #[test]
    fn shared_simple_root_cancels() {
        // (z^2 - 1)/(z - 1) == z + 1
        let r = RationalMap::new(
            ComplexPoly::from_real(&[-1.0, 0.0, 1.0]),
            ComplexPoly::from_real(&[-1.0, 1.0]),
        )
        .unwrap();
        assert_eq!(r.degree(), 1);
        assert_eq!(r.den().degree(), Some(0));
        assert!((finite(r.eval(c(5.0, 0.0))) - c(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn shared_double_root_cancels() {
        // (z-1)^2 (z+3) over (z-1)^2 (z-2)
        let sq = ComplexPoly::from_real(&[1.0, -2.0, 1.0]);
        let num = &sq * &ComplexPoly::from_real(&[3.0, 1.0]);
        let den = &sq * &ComplexPoly::from_real(&[-2.0, 1.0]);
        let r = RationalMap::new(num, den).unwrap();
        assert_eq!(r.degree(), 1);
        let v = finite(r.eval(c(4.0, 0.0)));
        assert!((v - c(3.5, 0.0)).norm() < 1e-9, "got {v}");
    }

    #[test]
    fn monomial_factor_strips_exactly() {
        // z^3 (1 + z) / z^2 == z (1 + z)
        let r = RationalMap::new(
            ComplexPoly::from_real(&[0.0, 0.0, 0.0, 1.0, 1.0]),
            ComplexPoly::from_real(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        assert_eq!(r.den().degree(), Some(0));
        assert!((finite(r.eval(c(2.0, 0.0))) - c(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn pole_evaluates_to_infinity() {
        let r = RationalMap::new(
            ComplexPoly::one(),
            ComplexPoly::from_real(&[-2.0, 1.0]),
        )
        .unwrap();
        assert_eq!(r.eval(c(2.0, 0.0)), MapValue::Infinity);
        assert_eq!(
            r.eval_extended(MapValue::Infinity),
            MapValue::Finite(c(0.0, 0.0))
        );
    }

    #[test]
    fn value_at_infinity_by_degree_gap() {
        let up = RationalMap::new(
            ComplexPoly::from_real(&[1.0, 0.0, 1.0]),
            ComplexPoly::from_real(&[-1.0, 1.0]),
        )
        .unwrap();
        assert_eq!(up.value_at_infinity(), MapValue::Infinity);

        let level = RationalMap::new(
            ComplexPoly::from_real(&[1.0, 2.0]),
            ComplexPoly::from_real(&[-1.0, 1.0]),
        )
        .unwrap();
        assert_eq!(level.value_at_infinity(), MapValue::Finite(c(2.0, 0.0)));
    }

    #[test]
    fn huge_arguments_use_reversed_form() {
        // z^2/(z - 1) at 1e200 overflows a direct Horner pass.
        let r = RationalMap::new(
            ComplexPoly::from_real(&[0.0, 0.0, 1.0]),
            ComplexPoly::from_real(&[-1.0, 1.0]),
        )
        .unwrap();
        let v = finite(r.eval(c(1e200, 0.0)));
        assert!((v.re / 1e200 - 1.0).abs() < 1e-12 && v.im == 0.0, "got {v}");
    }

    #[test]
    fn derivative_matches_quotient_rule() {
        // (z^2/(z+1))' = (z^2 + 2z)/(z+1)^2, so 3/4 at z = 1.
        let r = RationalMap::new(
            ComplexPoly::from_real(&[0.0, 0.0, 1.0]),
            ComplexPoly::from_real(&[1.0, 1.0]),
        )
        .unwrap();
        let d = r.derivative();
        assert!((finite(d.eval(c(1.0, 0.0))) - c(0.75, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn inversion_conjugation_linearizes_a_newton_map() {
        // 2z^3/(2z^2 + 1) becomes z + z^3/2 under z -> 1/z conjugation.
        let r = RationalMap::new(
            ComplexPoly::from_real(&[0.0, 0.0, 0.0, 2.0]),
            ComplexPoly::from_real(&[1.0, 0.0, 2.0]),
        )
        .unwrap();
        let g = r.invert_conjugate().unwrap();
        let expected = RationalMap::from_poly(ComplexPoly::from_real(&[0.0, 1.0, 0.0, 0.5]));
        assert!(g.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn approx_eq_ignores_overall_scale() {
        let a = RationalMap::new(
            ComplexPoly::from_real(&[-2.0, 0.0, 2.0]),
            ComplexPoly::from_real(&[-2.0, 2.0]),
        )
        .unwrap();
        let b = RationalMap::from_poly(ComplexPoly::from_real(&[1.0, 1.0]));
        assert!(a.approx_eq(&b, 1e-12));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(
            RationalMap::new(ComplexPoly::one(), ComplexPoly::zero()).unwrap_err(),
            RationalMapError::ZeroDenominator
        );
    }

    #[test]
    fn fixed_point_poly_drops_cancelled_top_degree() {
        // For z^2/(z - 1) the fixed point equation z^2 - z(z-1) = z has the
        // top terms cancel, leaving degree 1.
        let r = RationalMap::new(
            ComplexPoly::from_real(&[0.0, 0.0, 1.0]),
            ComplexPoly::from_real(&[-1.0, 1.0]),
        )
        .unwrap();
        let phi = r.fixed_point_poly();
        assert_eq!(phi.degree(), Some(1));
    }

    #[test]
    fn poles_report_multiplicity() {
        let den = ComplexPoly::from_real(&[1.0, 1.0]);
        let den3 = &(&den * &den) * &den;
        let r = RationalMap::new(ComplexPoly::one(), den3).unwrap();
        let poles = r.poles();
        assert_eq!(poles.len(), 1);
        assert_eq!(poles[0].multiplicity, 3);
        assert!((poles[0].value - c(-1.0, 0.0)).norm() < 1e-9);
    }
}
