//! Simultaneous polynomial root finding (Aberth-Ehrlich).
//!
//! All candidates start equally spaced on the Cauchy-bound circle, rotated by
//! a fixed irrational angle so symmetric polynomials do not trap the
//! iteration on a symmetry axis. Iteration runs until every step stagnates at
//! machine precision (multiple roots keep contracting linearly long after the
//! residual test would pass, and tight splinters are what makes multiplicity
//! detection work), then nearby approximations are merged into multiple roots.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use num_complex::Complex64;
// Inherent std methods cover this in test builds; libm backs it otherwise.
#[allow(unused_imports)]
use num_traits::Float;

use crate::poly::ComplexPoly;
use crate::tol::{CLUSTER_TOL, ROOT_ITERATION_CAP, ROOT_TOL};

/// Offset applied to the initial-guess circle, in radians. Irrational so the
/// guesses never align with the root symmetry of real or cyclotomic inputs.
const GUESS_ROTATION: f64 = 0.618_033_988_749_894_9;

/// Centroid distance within which separate clusters are considered for
/// consolidation into one multiple root (subject to the Taylor certificate).
const CONSOLIDATE_RADIUS: f64 = 1e-3;

/// Relative size below which a Taylor coefficient counts as vanishing when
/// certifying a multiple root. Tied to evaluation rounding noise: a genuine
/// m-fold root polished to machine accuracy leaves residues near 1e-15, while
/// m distinct roots at separation s leave a k = 0 residue near s^m, so the
/// certificate separates the hypotheses down to s around 1e-4.
const CONSOLIDATE_REL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    /// Largest |p(root)| over the reported roots.
    pub residual: f64,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Roots repeated according to multiplicity.
    pub fn flattened(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for r in &self.roots {
            for _ in 0..r.multiplicity {
                out.push(r.value);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RootFindError {
    ZeroPolynomial,
    /// The residual target was not reached within the sweep cap; the payload
    /// is the best approximation found.
    NonConvergence(RootSet),
}

impl core::fmt::Display for RootFindError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ZeroPolynomial => write!(f, "cannot find roots of the zero polynomial"),
            Self::NonConvergence(best) => write!(
                f,
                "root iteration did not reach the residual target (best residual {:.3e})",
                best.residual
            ),
        }
    }
}

/// Finds all roots of `p` with multiplicities, to residual `tol * max|coeff|`.
pub fn find_roots(p: &ComplexPoly, tol: f64) -> Result<RootSet, RootFindError> {
    if p.is_zero() {
        return Err(RootFindError::ZeroPolynomial);
    }
    let scale = p.max_coeff_norm();

    // An exact monomial factor z^k is read straight off the coefficients.
    let zero_mult = p.order(0.0).unwrap_or(0);
    let reduced = p.shift_down(zero_mult);

    let mut approx = solve_all(&reduced);
    approx.sort_unstable_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let mut clusters = cluster(&approx);
    consolidate(&reduced, &mut clusters);
    if zero_mult > 0 {
        // A near-zero cluster from the deflated part belongs to the monomial root.
        let mut mult = zero_mult;
        clusters.retain(|r| {
            if r.value.norm() <= CLUSTER_TOL {
                mult += r.multiplicity;
                false
            } else {
                true
            }
        });
        clusters.insert(
            0,
            Root {
                value: Complex64::new(0.0, 0.0),
                multiplicity: mult,
            },
        );
    }

    let residual = clusters
        .iter()
        .map(|r| p.eval(r.value).norm())
        .fold(0.0, f64::max);
    let set = RootSet {
        roots: clusters,
        residual,
    };
    if residual <= tol * scale {
        Ok(set)
    } else {
        Err(RootFindError::NonConvergence(set))
    }
}

/// Convenience wrapper at the crate's standard residual target.
pub fn find_roots_default(p: &ComplexPoly) -> Result<RootSet, RootFindError> {
    find_roots(p, ROOT_TOL)
}

fn solve_all(p: &ComplexPoly) -> Vec<Complex64> {
    match p.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![-p.coeff(0) / p.coeff(1)],
        Some(2) => solve_quadratic(p.coeff(0), p.coeff(1), p.coeff(2)).to_vec(),
        Some(_) => aberth(&p.monic()),
    }
}

/// Roots of `c + bz + az^2`, computed with the sign choice that avoids
/// cancellation in the larger root.
pub(crate) fn solve_quadratic(c: Complex64, b: Complex64, a: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // Pick the branch that enlarges |b -/+ disc|.
    let q = if (b + disc).norm_sqr() >= (b - disc).norm_sqr() {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    if q.norm_sqr() == 0.0 {
        return [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
    }
    [q / a, c / q]
}

fn aberth(p: &ComplexPoly) -> Vec<Complex64> {
    let d = p.degree().expect("degree >= 3 here");
    let dp = p.derivative();

    // Cauchy bound: every root has modulus below 1 + max |c_k / c_d|.
    let radius = 1.0
        + p.coeffs()[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = TAU * (k as f64) / (d as f64) + GUESS_ROTATION;
            Complex64::new(radius * theta.cos(), radius * theta.sin())
        })
        .collect();

    for _ in 0..ROOT_ITERATION_CAP {
        let mut max_step = 0.0_f64;
        for i in 0..d {
            let zi = z[i];
            let pv = p.eval(zi);
            let dv = dp.eval(zi);
            if pv.norm_sqr() == 0.0 {
                continue;
            }
            let newton = if dv.norm_sqr() == 0.0 {
                // Critical point hit: nudge off it and retry next sweep.
                z[i] += Complex64::new(1e-6, 1e-6) * (1.0 + zi.norm());
                max_step = f64::MAX;
                continue;
            } else {
                pv / dv
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let diff = zi - zj;
                    if diff.norm_sqr() == 0.0 {
                        continue;
                    }
                    sum += diff.finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm_sqr() == 0.0 || !denom.is_finite() {
                newton
            } else {
                newton / denom
            };
            if !step.is_finite() {
                continue;
            }
            z[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step <= 1e-15 {
            break;
        }
    }
    z
}

/// Greedy merge of sorted approximations within the cluster tolerance.
fn cluster(points: &[Complex64]) -> Vec<Root> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for &z in points {
        match out.iter_mut().find(|(center, _)| {
            (z - *center).norm() <= CLUSTER_TOL * 1.0_f64.max(center.norm()).max(z.norm())
        }) {
            Some((center, count)) => {
                // Running mean keeps the center at the splinter centroid.
                *center = (*center * (*count as f64) + z) / (*count as f64 + 1.0);
                *count += 1;
            }
            None => out.push((z, 1)),
        }
    }
    out.into_iter()
        .map(|(value, multiplicity)| Root {
            value,
            multiplicity,
        })
        .collect()
}

/// Merges groups of clusters that are really one multiple root. Aberth
/// splinters an m-fold root over a ring of radius ~ eps^(1/m), far wider than
/// the cluster tolerance for m >= 3, but the splinter centroid is accurate to
/// O(radius^2) and low-order Taylor coefficients vanish there. Candidate
/// groups are accepted only when that vanishing certificate holds, so
/// genuinely distinct nearby roots are left alone.
fn consolidate(p: &ComplexPoly, clusters: &mut Vec<Root>) {
    let mut i = 0;
    while i < clusters.len() {
        let mut group = vec![i];
        let mut center = clusters[i].value * clusters[i].multiplicity as f64;
        let mut mult = clusters[i].multiplicity;
        for j in (i + 1)..clusters.len() {
            let scale = 1.0_f64.max(clusters[i].value.norm());
            if (clusters[j].value - clusters[i].value).norm() <= CONSOLIDATE_RADIUS * scale {
                group.push(j);
                center += clusters[j].value * clusters[j].multiplicity as f64;
                mult += clusters[j].multiplicity;
            }
        }
        if group.len() > 1 && mult >= 3 {
            let value = polish_multiple(p, center / mult as f64, mult);
            if taylor_certificate(p, value, mult) {
                for &j in group.iter().skip(1).rev() {
                    clusters.remove(j);
                }
                clusters[i] = Root {
                    value,
                    multiplicity: mult,
                };
            }
        }
        i += 1;
    }
    for r in clusters.iter_mut() {
        if r.multiplicity >= 2 {
            r.value = polish_multiple(p, r.value, r.multiplicity);
        }
    }
}

/// Refines an m-fold root estimate by Newton iteration on the (m-1)-th
/// derivative, where the root is simple. Returns the original estimate if the
/// iteration wanders off instead of contracting.
fn polish_multiple(p: &ComplexPoly, alpha: Complex64, m: usize) -> Complex64 {
    let mut dk = p.clone();
    for _ in 0..(m - 1) {
        dk = dk.derivative();
    }
    let ddk = dk.derivative();
    let mut z = alpha;
    for _ in 0..30 {
        let dv = ddk.eval(z);
        if dv.norm_sqr() == 0.0 {
            break;
        }
        let step = dk.eval(z) / dv;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    let scale = 1.0_f64.max(alpha.norm());
    if (z - alpha).norm() <= CONSOLIDATE_RADIUS * scale {
        z
    } else {
        alpha
    }
}

/// True when the Taylor coefficients of `p` at `alpha` of order below m - 1
/// all vanish relative to their derivative's own scale, i.e. `alpha` is
/// consistent with an m-fold root. The order m - 1 coefficient is skipped:
/// it vanishes at the group centroid whether the group is one m-fold root or
/// m separate ones, so it carries no signal.
fn taylor_certificate(p: &ComplexPoly, alpha: Complex64, m: usize) -> bool {
    let mut dk = p.clone();
    for _ in 0..(m - 1) {
        let scale = dk.max_coeff_norm() * 1.0_f64.max(alpha.norm()).powi(dk.degree().unwrap_or(0) as i32);
        if dk.eval(alpha).norm() > CONSOLIDATE_REL * scale {
            return false;
        }
        dk = dk.derivative();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_contains(set: &RootSet, z: Complex64, mult: usize, tol: f64) {
        assert!(
            set.roots
                .iter()
                .any(|r| (r.value - z).norm() <= tol && r.multiplicity == mult),
            "no root {z} with multiplicity {mult} in {:?}",
            set.roots
        );
    }

    #[test]
    fn quadratic_with_imaginary_pair() {
        let p = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
        let set = find_roots_default(&p).unwrap();
        assert_eq!(set.total_multiplicity(), 2);
        assert_contains(&set, c(0.0, 1.0), 1, 1e-12);
        assert_contains(&set, c(0.0, -1.0), 1, 1e-12);
    }

    #[test]
    fn extraneous_quadratic_matches_quadratic_formula_oracle() {
        // 2 + 6w + 3w^2: the oracle is the explicit formula.
        let p = ComplexPoly::from_real(&[2.0, 6.0, 3.0]);
        let set = find_roots_default(&p).unwrap();
        let s = (3.0_f64).sqrt();
        assert_contains(&set, c(-1.0 + s / 3.0, 0.0), 1, 1e-12);
        assert_contains(&set, c(-1.0 - s / 3.0, 0.0), 1, 1e-12);
    }

    #[test]
    fn cubic_real_root_matches_bisection_oracle() {
        // -3 + 36w + 44w^2 + 16w^3 has exactly one real root in (0, 1).
        let p = ComplexPoly::from_real(&[-3.0, 36.0, 44.0, 16.0]);
        let eval = |w: f64| 16.0 * w.powi(3) + 44.0 * w * w + 36.0 * w - 3.0;
        let (mut lo, mut hi) = (0.05, 0.1);
        assert!(eval(lo) < 0.0 && eval(hi) > 0.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if eval(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        assert!((oracle - 0.076_066_0).abs() < 1e-6);

        let set = find_roots_default(&p).unwrap();
        assert_eq!(set.total_multiplicity(), 3);
        assert_contains(&set, c(oracle, 0.0), 1, 1e-10);
    }

    #[test]
    fn monomial_factor_multiplicity_is_exact() {
        // z^5 (z - 2)
        let p = ComplexPoly::from_real(&[0.0, 0.0, 0.0, 0.0, 0.0, -2.0, 1.0]);
        let set = find_roots_default(&p).unwrap();
        assert_contains(&set, c(0.0, 0.0), 5, 0.0);
        assert_contains(&set, c(2.0, 0.0), 1, 1e-10);
    }

    #[test]
    fn double_root_merges() {
        // (z-1)^2 (z+2)
        let p = ComplexPoly::from_real(&[2.0, -3.0, 0.0, 1.0]);
        let set = find_roots_default(&p).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert_contains(&set, c(1.0, 0.0), 2, 1e-6);
        assert_contains(&set, c(-2.0, 0.0), 1, 1e-10);
    }

    #[test]
    fn triple_root_consolidates() {
        // (z-1)^3
        let p = ComplexPoly::from_real(&[-1.0, 3.0, -3.0, 1.0]);
        let set = find_roots_default(&p).unwrap();
        assert_eq!(set.roots.len(), 1);
        assert_contains(&set, c(1.0, 0.0), 3, 1e-9);
    }

    #[test]
    fn close_but_distinct_roots_stay_separate() {
        // (z - 1)(z - 1.0001)(z + 1): separation well above the cluster
        // tolerance but inside the consolidation radius.
        let a = 1.0;
        let b = 1.0001;
        let p = &(&ComplexPoly::from_real(&[-a, 1.0]) * &ComplexPoly::from_real(&[-b, 1.0]))
            * &ComplexPoly::from_real(&[1.0, 1.0]);
        let set = find_roots_default(&p).unwrap();
        assert_eq!(set.roots.len(), 3);
        assert_contains(&set, c(a, 0.0), 1, 1e-8);
        assert_contains(&set, c(b, 0.0), 1, 1e-8);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            find_roots_default(&ComplexPoly::zero()),
            Err(RootFindError::ZeroPolynomial)
        );
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        let set = find_roots_default(&ComplexPoly::from_real(&[4.0])).unwrap();
        assert!(set.roots.is_empty());
    }
}
