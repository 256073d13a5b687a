//! Fixed and critical points of the iteration maps: location, multiplier,
//! multiplicity, and classification.
//!
//! For the family z e^{z^n} most quantities have closed forms. The fixed
//! points other than 0 and infinity solve 3n^2 w^2 + n(n+5) w + 2 = 0 in
//! w = z^n, and the free critical points solve the cubic
//! 2n^3 w^3 + n^2(3n+5) w^2 + n(2n^2+3n+4) w - (n^2-1) = 0. Both equations
//! are solved here and their solutions pulled back through the n-th roots.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use num_complex::Complex64;
// Inherent std methods cover this in test builds; libm backs it otherwise.
#[allow(unused_imports)]
use num_traits::Float;

use crate::maps::{build_chebyshev, series_at_infinity, BuildError, ExpPolyFunction};
use crate::rational::{MapValue, RationalMap};
use crate::roots::{find_roots_default, RootFindError};
use crate::tol::{CLASS_TOL, CLUSTER_TOL, FIX_TOL, PARABOLIC_MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Superattracting,
    Attracting,
    Parabolic,
    Repelling,
    /// On the unit circle but not near any low-order root of unity.
    NeutralIrrational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    /// A root of p, hence a point the iteration is meant to find.
    RootOfP,
    /// A fixed point of the map that is not a root of p.
    Extraneous,
    Infinity,
}

#[derive(Clone, Debug)]
pub struct FixedPointRecord {
    pub location: MapValue,
    pub multiplier: Complex64,
    pub multiplicity: usize,
    pub kind: PointKind,
    pub classification: Classification,
}

#[derive(Clone, Debug)]
pub enum FixedError {
    /// Degree-zero maps have no meaningful fixed point set.
    ConstantMap,
    /// The identity fixes everything.
    IdentityMap,
    NotAFixedPoint,
    Roots(RootFindError),
}

impl core::fmt::Display for FixedError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ConstantMap => write!(f, "map is constant"),
            Self::IdentityMap => write!(f, "map is the identity"),
            Self::NotAFixedPoint => write!(f, "point is not fixed by the map"),
            Self::Roots(e) => write!(f, "root finding failed: {e}"),
        }
    }
}

/// Buckets a multiplier. The neutral band is split by distance to roots of
/// unity of order up to `PARABOLIC_MAX_ORDER`.
pub fn classify(multiplier: Complex64) -> Classification {
    let m = multiplier.norm();
    if m < CLASS_TOL {
        return Classification::Superattracting;
    }
    if m < 1.0 - CLASS_TOL {
        return Classification::Attracting;
    }
    if m > 1.0 + CLASS_TOL {
        return Classification::Repelling;
    }
    for order in 1..=PARABOLIC_MAX_ORDER {
        for j in 0..order {
            let root = Complex64::from_polar(1.0, TAU * j as f64 / order as f64);
            if (multiplier - root).norm() <= CLASS_TOL {
                return Classification::Parabolic;
            }
        }
    }
    Classification::NeutralIrrational
}

/// Derivative of the map at a finite fixed point. Rejects points that the
/// map moves by more than `FIX_TOL * (1 + |z|)`.
pub fn multiplier(r: &RationalMap, z: Complex64) -> Result<Complex64, FixedError> {
    let MapValue::Finite(image) = r.eval(z) else {
        return Err(FixedError::NotAFixedPoint);
    };
    if (image - z).norm() > FIX_TOL * (1.0 + z.norm()) {
        return Err(FixedError::NotAFixedPoint);
    }
    match r.derivative().eval(z) {
        MapValue::Finite(d) => Ok(d),
        MapValue::Infinity => Err(FixedError::NotAFixedPoint),
    }
}

/// Multiplier at infinity: zero when the degree gap exceeds one, otherwise
/// the reciprocal leading-coefficient ratio of 1/R(1/z).
pub fn multiplier_at_infinity(r: &RationalMap) -> Result<Complex64, FixedError> {
    let dn = r.num().degree().unwrap_or(0);
    let dd = r.den().degree().unwrap_or(0);
    if r.num().is_zero() || dn <= dd {
        return Err(FixedError::NotAFixedPoint);
    }
    if dn > dd + 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // den is monic, so the ratio is 1 over the numerator's leading coefficient.
    Ok(r.num().leading_coeff().finv())
}

/// All fixed points of the map in the extended plane, counted with
/// multiplicity. Finite points are roots of num - z * den; infinity is fixed
/// exactly when deg num > deg den, with multiplicity read off the series
/// when its multiplier is 1.
pub fn fixed_points(r: &RationalMap) -> Result<Vec<FixedPointRecord>, FixedError> {
    if r.degree() == 0 {
        return Err(FixedError::ConstantMap);
    }
    let phi = r.fixed_point_poly();
    if phi.is_zero() {
        return Err(FixedError::IdentityMap);
    }

    let deriv = r.derivative();
    let mut records = Vec::new();
    for root in find_roots_default(&phi).map_err(FixedError::Roots)?.roots {
        let lam = match deriv.eval(root.value) {
            MapValue::Finite(d) => d,
            MapValue::Infinity => return Err(FixedError::Roots(RootFindError::ZeroPolynomial)),
        };
        records.push(FixedPointRecord {
            location: MapValue::Finite(root.value),
            multiplier: lam,
            multiplicity: root.multiplicity,
            kind: PointKind::Extraneous,
            classification: classify(lam),
        });
    }

    if let Ok(lam) = multiplier_at_infinity(r) {
        let multiplicity = if (lam - Complex64::new(1.0, 0.0)).norm() <= CLASS_TOL {
            series_at_infinity(r, r.degree() + 2)
                .ok()
                .and_then(|s| s.multiplicity)
                .unwrap_or(1)
        } else {
            1
        };
        records.push(FixedPointRecord {
            location: MapValue::Infinity,
            multiplier: lam,
            multiplicity,
            kind: PointKind::Infinity,
            classification: classify(lam),
        });
    }
    Ok(records)
}

#[derive(Clone, Debug)]
pub enum FunctionAnalysisError {
    Build(BuildError),
    Fixed(FixedError),
}

impl core::fmt::Display for FunctionAnalysisError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::Build(e) => write!(f, "{e}"),
            Self::Fixed(e) => write!(f, "{e}"),
        }
    }
}

/// Fixed points of the Chebyshev iteration for p e^q, with each point that
/// coincides with a root of p tagged as such.
pub fn fixed_points_of(
    f: &ExpPolyFunction,
) -> Result<Vec<FixedPointRecord>, FunctionAnalysisError> {
    let map = build_chebyshev(f).map_err(FunctionAnalysisError::Build)?;
    let mut records = fixed_points(&map).map_err(FunctionAnalysisError::Fixed)?;
    let p_roots = find_roots_default(f.p())
        .map_err(|e| FunctionAnalysisError::Fixed(FixedError::Roots(e)))?;
    for rec in &mut records {
        let MapValue::Finite(z) = rec.location else {
            continue;
        };
        if p_roots
            .roots
            .iter()
            .any(|root| (z - root.value).norm() <= FIX_TOL * (1.0 + root.value.norm()))
        {
            rec.kind = PointKind::RootOfP;
        }
    }
    Ok(records)
}

/// The two solutions of 3n^2 w^2 + n(n+5) w + 2 = 0, ordered
/// (further, nearer) to zero. Both are real and negative for every n >= 1.
fn extraneous_w(n: u32) -> (f64, f64) {
    let nf = n as f64;
    let disc = (nf * nf + 10.0 * nf + 1.0).sqrt();
    let w_far = (-(nf + 5.0) - disc) / (6.0 * nf);
    let w_near = (-(nf + 5.0) + disc) / (6.0 * nf);
    (w_far, w_near)
}

/// Multiplier of the map for z e^{z^n} at a fixed point with z^n = w:
/// 1 + n^2 w (n(n-1)w - (n+1)) / (2 (nw+1)^4).
fn extraneous_multiplier(n: u32, w: f64) -> f64 {
    let nf = n as f64;
    1.0 + 0.5 * nf * nf * w * (nf * (nf - 1.0) * w - (nf + 1.0)) / (nf * w + 1.0).powi(4)
}

/// The 2n finite fixed points of the map for z e^{z^n} that are not roots of
/// the function, from the closed form. Points sharing the same z^n share a
/// multiplier; all are simple and repelling. For odd n the member on the
/// negative real axis is produced with imaginary part exactly zero.
pub fn extraneous_cn(n: u32) -> Vec<FixedPointRecord> {
    assert!(n >= 1, "n must be at least 1");
    let (w_far, w_near) = extraneous_w(n);
    let mut out = Vec::with_capacity(2 * n as usize);
    for &w in &[w_far, w_near] {
        let lam = Complex64::new(extraneous_multiplier(n, w), 0.0);
        let classification = classify(lam);
        let rho = (-w).powf(1.0 / n as f64);
        for k in 0..n {
            let value = if n % 2 == 1 && 2 * k + 1 == n {
                Complex64::new(-rho, 0.0)
            } else {
                Complex64::from_polar(rho, PI * (2 * k + 1) as f64 / n as f64)
            };
            out.push(FixedPointRecord {
                location: MapValue::Finite(value),
                multiplier: lam,
                multiplicity: 1,
                kind: PointKind::Extraneous,
                classification,
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityError {
    EvenN,
}

impl core::fmt::Display for ParityError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "n must be odd")
    }
}

/// Magnitudes (e1, e2) of the two real extraneous fixed points -e1 < -e2 of
/// the map for z e^{z^n}, defined for odd n only.
pub fn real_extraneous_cn(n: u32) -> Result<(f64, f64), ParityError> {
    if n.is_multiple_of(2) {
        return Err(ParityError::EvenN);
    }
    let (w_far, w_near) = extraneous_w(n);
    let inv = 1.0 / n as f64;
    Ok(((-w_far).powf(inv), (-w_near).powf(inv)))
}

/// Which root of the critical cubic (in w = z^n) a free critical point's
/// n-th power equals: the positive real root, or one of the conjugate pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeTag {
    RealRoot,
    ComplexRoot,
    ConjugateRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalCategory {
    ZeroOfP,
    Pole,
    Free(Option<FreeTag>),
}

#[derive(Clone, Debug)]
pub struct CriticalPointRecord {
    pub location: Complex64,
    pub multiplicity: usize,
    pub category: CriticalCategory,
}

/// Roots of 2n^3 w^3 + n^2(3n+5) w^2 + n(2n^2+3n+4) w - (n^2-1) as
/// (real root in (0,1), conjugate-pair member with positive imaginary part).
pub(crate) fn critical_cubic_roots(n: u32) -> (f64, Complex64) {
    let nf = n as f64;
    let cubic = crate::poly::ComplexPoly::from_real(&[
        -(nf * nf - 1.0),
        nf * (2.0 * nf * nf + 3.0 * nf + 4.0),
        nf * nf * (3.0 * nf + 5.0),
        2.0 * nf * nf * nf,
    ]);
    let roots = find_roots_default(&cubic).expect("cubic with nonzero leading coefficient");
    let mut real = 0.0;
    let mut upper = Complex64::new(0.0, 0.0);
    for root in &roots.roots {
        if root.value.im.abs() < 1e-8 {
            real = root.value.re;
        } else if root.value.im > 0.0 {
            upper = root.value;
        }
    }
    (real, upper)
}

/// All critical points in the plane of the map for z e^{z^n}, n >= 2:
/// the origin with multiplicity n, the n poles with multiplicity two, and
/// 3n simple free points, the n-th roots of the critical cubic's roots.
pub fn critical_points_cn(n: u32) -> Vec<CriticalPointRecord> {
    assert!(n >= 2, "n must be at least 2; the n = 1 map has its own shape");
    let nf = n as f64;
    let (r, c_upper) = critical_cubic_roots(n);

    let mut out = vec![CriticalPointRecord {
        location: Complex64::new(0.0, 0.0),
        multiplicity: n as usize,
        category: CriticalCategory::ZeroOfP,
    }];

    // Poles: z^n = -1/n.
    let pole_rho = (1.0 / nf).powf(1.0 / nf);
    for k in 0..n {
        let location = if n % 2 == 1 && 2 * k + 1 == n {
            Complex64::new(-pole_rho, 0.0)
        } else {
            Complex64::from_polar(pole_rho, PI * (2 * k + 1) as f64 / nf)
        };
        out.push(CriticalPointRecord {
            location,
            multiplicity: 2,
            category: CriticalCategory::Pole,
        });
    }

    // Free points over the positive real root; k = 0 lands on the positive
    // real axis exactly.
    let r_rho = r.powf(1.0 / nf);
    for k in 0..n {
        let location = if k == 0 {
            Complex64::new(r_rho, 0.0)
        } else {
            Complex64::from_polar(r_rho, TAU * k as f64 / nf)
        };
        out.push(CriticalPointRecord {
            location,
            multiplicity: 1,
            category: CriticalCategory::Free(Some(FreeTag::RealRoot)),
        });
    }

    // Free points over the conjugate pair; the lower family mirrors the
    // upper one exactly.
    let c_rho = c_upper.norm().powf(1.0 / nf);
    let c_arg = c_upper.arg() / nf;
    for k in 0..n {
        let location = Complex64::from_polar(c_rho, c_arg + TAU * k as f64 / nf);
        out.push(CriticalPointRecord {
            location,
            multiplicity: 1,
            category: CriticalCategory::Free(Some(FreeTag::ComplexRoot)),
        });
        out.push(CriticalPointRecord {
            location: location.conj(),
            multiplicity: 1,
            category: CriticalCategory::Free(Some(FreeTag::ConjugateRoot)),
        });
    }
    out
}

/// Critical points in the plane of the map for z e^z: the origin with
/// multiplicity two and the conjugate pair -2 +- (sqrt(2)/2) i.
pub fn critical_points_c1() -> Vec<CriticalPointRecord> {
    let im = 2.0_f64.sqrt() / 2.0;
    vec![
        CriticalPointRecord {
            location: Complex64::new(0.0, 0.0),
            multiplicity: 2,
            category: CriticalCategory::ZeroOfP,
        },
        CriticalPointRecord {
            location: Complex64::new(-2.0, im),
            multiplicity: 1,
            category: CriticalCategory::Free(Some(FreeTag::ComplexRoot)),
        },
        CriticalPointRecord {
            location: Complex64::new(-2.0, -im),
            multiplicity: 1,
            category: CriticalCategory::Free(Some(FreeTag::ConjugateRoot)),
        },
    ]
}

/// Critical points in the plane of an arbitrary map, from the roots of
/// N'D - ND'. A pole of order m appears with multiplicity m - 1 and is
/// tagged; everything else is left untagged.
pub fn critical_points(r: &RationalMap) -> Result<Vec<CriticalPointRecord>, RootFindError> {
    let w = r.wronskian();
    let roots = find_roots_default(&w)?;
    let poles = r.poles();
    let mut out = Vec::with_capacity(roots.roots.len());
    for root in roots.roots {
        let is_pole = poles
            .iter()
            .any(|p| (root.value - p.value).norm() <= CLUSTER_TOL * (1.0 + p.value.norm()));
        out.push(CriticalPointRecord {
            location: root.value,
            multiplicity: root.multiplicity,
            category: if is_pole {
                CriticalCategory::Pole
            } else {
                CriticalCategory::Free(None)
            },
        });
    }
    Ok(out)
}

/// Critical points of the Chebyshev iteration for p e^q, with each point
/// that coincides with a root of p tagged as such.
pub fn critical_points_of(
    f: &ExpPolyFunction,
) -> Result<Vec<CriticalPointRecord>, FunctionAnalysisError> {
    let map = build_chebyshev(f).map_err(FunctionAnalysisError::Build)?;
    let mut records = critical_points(&map)
        .map_err(|e| FunctionAnalysisError::Fixed(FixedError::Roots(e)))?;
    let p_roots = find_roots_default(f.p())
        .map_err(|e| FunctionAnalysisError::Fixed(FixedError::Roots(e)))?;
    for rec in &mut records {
        if !matches!(rec.category, CriticalCategory::Free(_)) {
            continue;
        }
        if p_roots
            .roots
            .iter()
            .any(|root| (rec.location - root.value).norm() <= FIX_TOL * (1.0 + root.value.norm()))
        {
            rec.category = CriticalCategory::ZeroOfP;
        }
    }
    Ok(records)
}

/// Real zeros of the map for z e^{z^n}, ascending. Zeros other than the
/// origin satisfy x^n = (-3 +- sqrt(8n+1)) / (4n).
pub fn real_zeros_cn(n: u32) -> Vec<f64> {
    assert!(n >= 1, "n must be at least 1");
    let nf = n as f64;
    let disc = (8.0 * nf + 1.0).sqrt();
    let y_pos = (-3.0 + disc) / (4.0 * nf);
    let y_neg = (-3.0 - disc) / (4.0 * nf);

    let mut zeros = vec![0.0];
    if y_pos > 0.0 {
        let x = y_pos.powf(1.0 / nf);
        zeros.push(x);
        if n.is_multiple_of(2) {
            zeros.push(-x);
        }
    }
    if n % 2 == 1 {
        zeros.push(-(-y_neg).powf(1.0 / nf));
    }
    zeros.sort_by(f64::total_cmp);
    zeros
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::build_cn;
    use crate::poly::ComplexPoly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classification_bands() {
        assert_eq!(classify(c(0.0, 0.0)), Classification::Superattracting);
        assert_eq!(classify(c(0.5, 0.1)), Classification::Attracting);
        assert_eq!(classify(c(1.0, 0.0)), Classification::Parabolic);
        assert_eq!(
            classify(Complex64::from_polar(1.0, TAU / 3.0)),
            Classification::Parabolic
        );
        assert_eq!(classify(c(-1.5, 0.0)), Classification::Repelling);
        assert_eq!(
            classify(Complex64::from_polar(1.0, TAU * 0.381_966_011_250_105_1)),
            Classification::NeutralIrrational
        );
    }

    #[test]
    fn multiplier_validates_fixedness() {
        let c1 = build_cn(1);
        let at_zero = multiplier(&c1, c(0.0, 0.0)).unwrap();
        assert!(at_zero.norm() < 1e-12);

        // 1 - 1/sqrt(3) is the nearer real fixed point below zero.
        let e2 = 1.0 - 1.0 / 3.0_f64.sqrt();
        let lam = multiplier(&c1, c(-e2, 0.0)).unwrap();
        assert!((lam - c(4.803_847_577_293_368, 0.0)).norm() < 1e-9);

        assert!(matches!(
            multiplier(&c1, c(0.5, 0.0)),
            Err(FixedError::NotAFixedPoint)
        ));
    }

    #[test]
    fn fixed_point_census_for_z_exp_z() {
        let records = fixed_points(&build_cn(1)).unwrap();
        let total: usize = records.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 5);

        let at_infinity = records
            .iter()
            .find(|r| r.location == MapValue::Infinity)
            .unwrap();
        assert_eq!(at_infinity.multiplicity, 2);
        assert_eq!(at_infinity.classification, Classification::Parabolic);
        assert!((at_infinity.multiplier - c(1.0, 0.0)).norm() < 1e-12);

        let finite: Vec<_> = records
            .iter()
            .filter(|r| r.location != MapValue::Infinity)
            .collect();
        assert_eq!(finite.len(), 3);
        let super_count = finite
            .iter()
            .filter(|r| r.classification == Classification::Superattracting)
            .count();
        let repelling = finite
            .iter()
            .filter(|r| r.classification == Classification::Repelling)
            .count();
        assert_eq!((super_count, repelling), (1, 2));
    }

    #[test]
    fn fixed_point_census_scales_with_n() {
        for n in 2..=4 {
            let records = fixed_points(&build_cn(n)).unwrap();
            let total: usize = records.iter().map(|r| r.multiplicity).sum();
            assert_eq!(total, 3 * n as usize + 2, "census at n = {n}");

            let at_infinity = records
                .iter()
                .find(|r| r.location == MapValue::Infinity)
                .unwrap();
            assert_eq!(at_infinity.multiplicity, n as usize + 1);

            let repelling = records
                .iter()
                .filter(|r| r.classification == Classification::Repelling)
                .count();
            assert_eq!(repelling, 2 * n as usize, "extraneous count at n = {n}");
        }
    }

    #[test]
    fn roots_of_p_are_tagged() {
        let f = ExpPolyFunction::z_exp_zn(2);
        let records = fixed_points_of(&f).unwrap();
        let tagged: Vec<_> = records
            .iter()
            .filter(|r| r.kind == PointKind::RootOfP)
            .collect();
        assert_eq!(tagged.len(), 1);
        assert_eq!(tagged[0].classification, Classification::Superattracting);
        let extraneous = records
            .iter()
            .filter(|r| r.kind == PointKind::Extraneous)
            .count();
        assert_eq!(extraneous, 4);
    }

    #[test]
    fn multiple_root_multiplier_closed_form() {
        // p = z^k (z - 1), q = z: the multiplier at 0 is (2k-1)(k-1)/(2k^2).
        for k in 1..=4usize {
            let mut coeffs = vec![0.0; k + 2];
            coeffs[k] = -1.0;
            coeffs[k + 1] = 1.0;
            let f = ExpPolyFunction::new(
                ComplexPoly::from_real(&coeffs),
                ComplexPoly::identity(),
            )
            .unwrap();
            let map = build_chebyshev(&f).unwrap();
            let lam = multiplier(&map, c(0.0, 0.0)).unwrap();
            let kf = k as f64;
            let expected = (2.0 * kf - 1.0) * (kf - 1.0) / (2.0 * kf * kf);
            assert!(
                (lam - c(expected, 0.0)).norm() < 1e-8,
                "k = {k}: got {lam}, expected {expected}"
            );
        }
    }

    #[test]
    fn extraneous_closed_form_matches_numeric_multiplier() {
        for n in 1..=3 {
            let map = build_cn(n);
            let records = extraneous_cn(n);
            assert_eq!(records.len(), 2 * n as usize);
            for rec in &records {
                let MapValue::Finite(z) = rec.location else {
                    panic!("extraneous points are finite")
                };
                let numeric = multiplier(&map, z).unwrap();
                assert!(
                    (numeric - rec.multiplier).norm() < 1e-8,
                    "n = {n}, z = {z}: {numeric} vs {}",
                    rec.multiplier
                );
                assert_eq!(rec.classification, Classification::Repelling);
            }
        }
    }

    #[test]
    fn real_extraneous_values() {
        let (e1, e2) = real_extraneous_cn(1).unwrap();
        assert!((e1 - (1.0 + 1.0 / 3.0_f64.sqrt())).abs() < 1e-12);
        assert!((e2 - (1.0 - 1.0 / 3.0_f64.sqrt())).abs() < 1e-12);
        assert_eq!(real_extraneous_cn(2).unwrap_err(), ParityError::EvenN);

        // The odd-n records on the negative axis are exactly -e1 and -e2.
        let (e1, e2) = real_extraneous_cn(3).unwrap();
        let reals: Vec<f64> = extraneous_cn(3)
            .iter()
            .filter_map(|r| r.location.finite())
            .filter(|z| z.im == 0.0)
            .map(|z| z.re)
            .collect();
        assert_eq!(reals.len(), 2);
        assert!(reals.contains(&-e1) && reals.contains(&-e2));
    }

    #[test]
    fn critical_cubic_real_root_against_bisection() {
        // n = 2: 16 w^3 + 44 w^2 + 36 w - 3 by bisection on (0, 1).
        let eval = |w: f64| 16.0 * w.powi(3) + 44.0 * w * w + 36.0 * w - 3.0;
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if eval(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let (r, _) = critical_cubic_roots(2);
        assert!((r - oracle).abs() < 1e-10, "r = {r}, oracle = {oracle}");
        assert!((r - 0.076_065_917_854).abs() < 1e-10);
    }

    #[test]
    fn critical_census_for_n_2() {
        let records = critical_points_cn(2);
        assert_eq!(records.len(), 9);
        let total: usize = records.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 12);

        let map = build_cn(2);
        let deriv = map.derivative();
        let poles = map.poles();
        for rec in &records {
            match rec.category {
                CriticalCategory::Pole => {
                    assert_eq!(rec.multiplicity, 2);
                    assert!(
                        poles.iter().any(|p| (p.value - rec.location).norm() < 1e-10),
                        "{} is not near a pole",
                        rec.location
                    );
                }
                _ => {
                    let d = deriv.eval(rec.location).finite().unwrap();
                    assert!(d.norm() < 1e-10, "derivative {d} at {}", rec.location);
                }
            }
        }

        // The positive real free point is the n-th root of the cubic's
        // real root.
        let c_r = records
            .iter()
            .find(|r| {
                r.category == CriticalCategory::Free(Some(FreeTag::RealRoot))
                    && r.location.im == 0.0
                    && r.location.re > 0.0
            })
            .unwrap();
        assert!((c_r.location.re - 0.275_800).abs() < 1e-6);
    }

    #[test]
    fn critical_points_for_z_exp_z() {
        let records = critical_points_c1();
        let deriv = build_cn(1).derivative();
        for rec in &records {
            let d = deriv.eval(rec.location).finite().unwrap();
            assert!(d.norm() < 1e-10, "derivative {d} at {}", rec.location);
        }
        let origin = &records[0];
        assert_eq!(origin.multiplicity, 2);
        let im = 2.0_f64.sqrt() / 2.0;
        assert!((records[1].location - c(-2.0, im)).norm() < 1e-12);
        assert!((records[2].location - c(-2.0, -im)).norm() < 1e-12);
    }

    #[test]
    fn generic_critical_points_agree_with_closed_form() {
        let generic = critical_points(&build_cn(2)).unwrap();
        let closed = critical_points_cn(2);
        let total: usize = generic.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 12);
        for rec in &closed {
            let hit = generic
                .iter()
                .find(|g| (g.location - rec.location).norm() < 1e-7)
                .unwrap_or_else(|| panic!("missing critical point {}", rec.location));
            assert_eq!(hit.multiplicity, rec.multiplicity, "at {}", rec.location);
            let pole_expected = rec.category == CriticalCategory::Pole;
            assert_eq!(hit.category == CriticalCategory::Pole, pole_expected);
        }
    }

    #[test]
    fn function_aware_critical_points_tag_roots_of_p() {
        let records = critical_points_of(&ExpPolyFunction::z_exp_zn(2)).unwrap();
        let at_origin = records
            .iter()
            .find(|r| r.location.norm() < 1e-9)
            .expect("origin is critical");
        assert_eq!(at_origin.category, CriticalCategory::ZeroOfP);
        assert_eq!(at_origin.multiplicity, 2);
        let poles = records
            .iter()
            .filter(|r| r.category == CriticalCategory::Pole)
            .count();
        assert_eq!(poles, 2);
        assert!(records
            .iter()
            .any(|r| matches!(r.category, CriticalCategory::Free(_))));
    }

    #[test]
    fn real_zeros_match_radical_oracles() {
        let z1 = real_zeros_cn(1);
        assert_eq!(z1.len(), 2);
        assert!((z1[0] + 1.5).abs() < 1e-12 && z1[1] == 0.0);

        let z2 = real_zeros_cn(2);
        let oracle2 = ((17.0_f64.sqrt() - 3.0) / 8.0).sqrt();
        assert_eq!(z2.len(), 3);
        assert!((z2[0] + oracle2).abs() < 1e-12);
        assert_eq!(z2[1], 0.0);
        assert!((z2[2] - oracle2).abs() < 1e-12);

        let z3 = real_zeros_cn(3);
        assert_eq!(z3.len(), 3);
        assert!((z3[0] + (2.0 / 3.0_f64).powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((z3[2] - (1.0 / 6.0_f64).powf(1.0 / 3.0)).abs() < 1e-12);

        // Every listed zero evaluates to zero under the map.
        for n in 1..=4 {
            let map = build_cn(n);
            for &x in &real_zeros_cn(n) {
                let v = map.eval(c(x, 0.0)).finite().unwrap();
                assert!(v.norm() < 1e-10, "n = {n}, x = {x}");
            }
        }
    }
}
