//! Orbit classification and basin geometry.
//!
//! The maps of interest have a superattracting fixed point at 0 and a
//! parabolic one at infinity, so a plain modulus-threshold escape test never
//! fires: orbits drift outward by a bounded step each iteration. Escape is
//! instead detected in the petal coordinate s = z^n, where the dynamics near
//! infinity is s -> s - 3/2 + O(1/s). An orbit is charged to the basin of
//! infinity once it spends several consecutive steps deep inside the
//! attracting sector of the s-plane translation with the observed drift
//! matching, or once it leaves the safe floating range altogether. Both the
//! drift constant and the sector are scaled by the translation step delta,
//! so the same test serves any map with a known petal coordinate.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
// Inherent std methods cover this in test builds; libm backs it otherwise.
#[allow(unused_imports)]
use num_traits::Float;

use crate::fixed::{critical_cubic_roots, real_extraneous_cn, real_zeros_cn};
use crate::maps::{build_cn, near_any};
use crate::rational::{MapValue, RationalMap};
use crate::tol::{
    EPS_ZERO, ESCAPE_CONFIRM, PETAL_FAR_FACTOR, PETAL_SECTOR_MIN, POLE_GUARD, R_ESC,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basin {
    Zero,
    Infinity,
    Unresolved,
}

#[derive(Clone, Copy, Debug)]
pub struct OrbitResult {
    pub basin: Basin,
    /// Map applications performed before the orbit was classified.
    pub steps: u32,
    pub terminal: MapValue,
}

/// Configured orbit classifier: a map, the radius around 0 that counts as
/// converged, and optionally the petal coordinate at infinity.
#[derive(Clone, Debug)]
pub struct OrbitClassifier {
    map: RationalMap,
    target_radius: f64,
    /// (power, delta): s = z^power satisfies s -> s + delta near infinity.
    petal: Option<(u32, Complex64)>,
}

impl OrbitClassifier {
    pub fn new(map: RationalMap) -> Self {
        Self {
            map,
            target_radius: EPS_ZERO,
            petal: None,
        }
    }

    /// Declares the petal coordinate: s = z^power steps by delta near
    /// infinity.
    pub fn with_petal(mut self, power: u32, delta: Complex64) -> Self {
        self.petal = Some((power, delta));
        self
    }

    pub fn with_target_radius(mut self, radius: f64) -> Self {
        self.target_radius = radius;
        self
    }

    /// Classifier for the map of z e^{z^n}: s = z^n steps by -3/2 for
    /// every n.
    pub fn for_cn(n: u32) -> Self {
        Self::new(build_cn(n)).with_petal(n, Complex64::new(-1.5, 0.0))
    }

    pub fn map(&self) -> &RationalMap {
        &self.map
    }

    /// Runs the orbit of z0 for at most `budget` applications of the map.
    pub fn iterate_orbit(&self, z0: Complex64, budget: u32) -> OrbitResult {
        let mut z = z0;
        if z.norm() <= self.target_radius {
            return OrbitResult {
                basin: Basin::Zero,
                steps: 0,
                terminal: MapValue::Finite(z),
            };
        }

        let mut petal_streak = 0u32;
        let mut escape_streak = 0u32;
        let mut prev_s = self.petal.map(|(power, _)| z.powu(power));
        for step in 1..=budget {
            let next = match self.map.eval(z) {
                MapValue::Finite(v) => v,
                MapValue::Infinity => {
                    return OrbitResult {
                        basin: Basin::Infinity,
                        steps: step,
                        terminal: MapValue::Infinity,
                    }
                }
            };

            if next.norm() <= self.target_radius {
                return OrbitResult {
                    basin: Basin::Zero,
                    steps: step,
                    terminal: MapValue::Finite(next),
                };
            }

            if let Some((power, delta)) = self.petal {
                let s = next.powu(power);
                let u = s / delta;
                let drift_ok = prev_s.is_some_and(|p| (s - p - delta).norm() <= 0.5 * delta.norm());
                let far = s.norm() >= PETAL_FAR_FACTOR * delta.norm();
                if u.re >= PETAL_SECTOR_MIN && u.im.abs() < u.re && (drift_ok || far) {
                    petal_streak += 1;
                    if petal_streak >= ESCAPE_CONFIRM {
                        return OrbitResult {
                            basin: Basin::Infinity,
                            steps: step,
                            terminal: MapValue::Finite(next),
                        };
                    }
                } else {
                    petal_streak = 0;
                }
                prev_s = Some(s);
            }

            if next.norm() >= R_ESC && next.norm() >= z.norm() {
                escape_streak += 1;
                if escape_streak >= ESCAPE_CONFIRM {
                    return OrbitResult {
                        basin: Basin::Infinity,
                        steps: step,
                        terminal: MapValue::Finite(next),
                    };
                }
            } else {
                escape_streak = 0;
            }

            z = next;
        }

        OrbitResult {
            basin: Basin::Unresolved,
            steps: budget,
            terminal: MapValue::Finite(z),
        }
    }
}

/// A pixel grid over a rectangle in the plane. Pixel (0, 0) is the top-left
/// corner; points are pixel centers; the vertical step equals the horizontal
/// one, so height is determined by the pixel aspect ratio.
#[derive(Clone, Copy, Debug)]
pub struct Viewport {
    pub center: Complex64,
    /// Extent along the real axis in plane units.
    pub width: f64,
    pub px_w: usize,
    pub px_h: usize,
}

impl Viewport {
    pub fn new(center: Complex64, width: f64, px_w: usize, px_h: usize) -> Self {
        assert!(width > 0.0 && px_w > 0 && px_h > 0, "empty viewport");
        Self {
            center,
            width,
            px_w,
            px_h,
        }
    }

    pub fn step(&self) -> f64 {
        self.width / self.px_w as f64
    }

    pub fn height(&self) -> f64 {
        self.step() * self.px_h as f64
    }

    /// Center of pixel (col, row); row 0 has the largest imaginary part.
    pub fn point(&self, col: usize, row: usize) -> Complex64 {
        let step = self.step();
        let re = self.center.re + (col as f64 + 0.5 - 0.5 * self.px_w as f64) * step;
        let im = self.center.im + (0.5 * self.px_h as f64 - (row as f64 + 0.5)) * step;
        Complex64::new(re, im)
    }

    /// Pixel containing z, if inside the rectangle.
    pub fn pixel_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let step = self.step();
        let left = self.center.re - 0.5 * self.width;
        let top = self.center.im + 0.5 * self.height();
        let col = ((z.re - left) / step).floor();
        let row = ((top - z.im) / step).floor();
        if col < 0.0 || row < 0.0 || col >= self.px_w as f64 || row >= self.px_h as f64 {
            return None;
        }
        Some((col as usize, row as usize))
    }
}

/// Basin labels and step counts for every pixel of a viewport, row-major.
#[derive(Clone, Debug)]
pub struct BasinGrid {
    pub viewport: Viewport,
    cells: Vec<(Basin, u32)>,
}

impl BasinGrid {
    /// Assembles a grid from row-major cells; the length must match the
    /// viewport.
    pub fn from_cells(viewport: Viewport, cells: Vec<(Basin, u32)>) -> Self {
        assert_eq!(cells.len(), viewport.px_w * viewport.px_h, "cell count");
        Self { viewport, cells }
    }

    pub fn cell(&self, col: usize, row: usize) -> (Basin, u32) {
        self.cells[row * self.viewport.px_w + col]
    }

    pub fn label(&self, col: usize, row: usize) -> Basin {
        self.cell(col, row).0
    }

    pub fn cells(&self) -> &[(Basin, u32)] {
        &self.cells
    }

    pub fn fraction(&self, basin: Basin) -> f64 {
        let hits = self.cells.iter().filter(|(b, _)| *b == basin).count();
        hits as f64 / self.cells.len() as f64
    }
}

/// Classifies one pixel row. Rows are independent, so callers with a thread
/// pool can run them in parallel and assemble with `BasinGrid::from_cells`.
pub fn classify_row(
    classifier: &OrbitClassifier,
    viewport: &Viewport,
    row: usize,
    budget: u32,
) -> Vec<(Basin, u32)> {
    (0..viewport.px_w)
        .map(|col| {
            let r = classifier.iterate_orbit(viewport.point(col, row), budget);
            (r.basin, r.steps)
        })
        .collect()
}

/// Classifies every pixel serially.
pub fn render_basins(classifier: &OrbitClassifier, viewport: Viewport, budget: u32) -> BasinGrid {
    let mut cells = Vec::with_capacity(viewport.px_w * viewport.px_h);
    for row in 0..viewport.px_h {
        cells.extend(classify_row(classifier, &viewport, row, budget));
    }
    BasinGrid::from_cells(viewport, cells)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryError {
    /// The requested transform does not map this viewport onto itself.
    NotCentered,
}

impl core::fmt::Display for SymmetryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "viewport is not centered for this symmetry")
    }
}

fn mismatch_fraction(grid: &BasinGrid, transform: impl Fn(Complex64) -> Complex64) -> f64 {
    let vp = &grid.viewport;
    let mut compared = 0usize;
    let mut mismatched = 0usize;
    for row in 0..vp.px_h {
        for col in 0..vp.px_w {
            let a = grid.label(col, row);
            if a == Basin::Unresolved {
                continue;
            }
            let Some((tc, tr)) = vp.pixel_of(transform(vp.point(col, row))) else {
                continue;
            };
            let b = grid.label(tc, tr);
            if b == Basin::Unresolved {
                continue;
            }
            compared += 1;
            if a != b {
                mismatched += 1;
            }
        }
    }
    if compared == 0 {
        0.0
    } else {
        mismatched as f64 / compared as f64
    }
}

fn require_origin_center(grid: &BasinGrid) -> Result<(), SymmetryError> {
    if grid.viewport.center.norm() > 1e-12 * grid.viewport.width.max(1.0) {
        return Err(SymmetryError::NotCentered);
    }
    Ok(())
}

/// Fraction of resolved pixel pairs whose labels disagree under rotation by
/// 2 pi / n about the origin.
pub fn rotation_symmetry_mismatch(grid: &BasinGrid, n: u32) -> Result<f64, SymmetryError> {
    require_origin_center(grid)?;
    let rot = Complex64::from_polar(1.0, core::f64::consts::TAU / n as f64);
    Ok(mismatch_fraction(grid, |z| rot * z))
}

/// Label disagreement under z -> -z.
pub fn point_reflection_mismatch(grid: &BasinGrid) -> Result<f64, SymmetryError> {
    require_origin_center(grid)?;
    Ok(mismatch_fraction(grid, |z| -z))
}

/// Label disagreement under complex conjugation. The viewport must be
/// centered on the real axis.
pub fn conjugation_mismatch(grid: &BasinGrid) -> Result<f64, SymmetryError> {
    if grid.viewport.center.im.abs() > 1e-12 * grid.viewport.width.max(1.0) {
        return Err(SymmetryError::NotCentered);
    }
    Ok(mismatch_fraction(grid, |z| z.conj()))
}

/// Maximum of |A(z) - T(B(T^{-1}(z)))| over seeded random samples in
/// [-3, 3]^2, skipping points too close to a pole of either map and samples
/// where any evaluation leaves the finite plane.
pub fn conjugacy_deviation(
    a: &RationalMap,
    b: &RationalMap,
    t: impl Fn(Complex64) -> Complex64,
    t_inv: impl Fn(Complex64) -> Complex64,
    samples: usize,
) -> f64 {
    use rand::Rng;
    use rand::SeedableRng;

    let a_poles: Vec<Complex64> = a.poles().iter().map(|r| r.value).collect();
    let b_poles: Vec<Complex64> = b.poles().iter().map(|r| r.value).collect();

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x2545f4914f6cdd1d);
    let mut worst = 0.0_f64;
    let mut taken = 0;
    let mut attempts = 0;
    while taken < samples && attempts < samples * 64 {
        attempts += 1;
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let w = t_inv(z);
        if !w.is_finite()
            || near_any(z, &a_poles, POLE_GUARD)
            || near_any(w, &b_poles, POLE_GUARD)
        {
            continue;
        }
        let (MapValue::Finite(lhs), MapValue::Finite(bw)) = (a.eval(z), b.eval(w)) else {
            continue;
        };
        let rhs = t(bw);
        if !rhs.is_finite() {
            continue;
        }
        worst = worst.max((lhs - rhs).norm());
        taken += 1;
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleBoundaryError {
    PoleOutsideViewport,
}

impl core::fmt::Display for PoleBoundaryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "pole lies outside the rendered viewport")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PoleNeighborhood {
    pub pole: Complex64,
    pub zero_pixels: usize,
    pub infinity_pixels: usize,
    pub unresolved_pixels: usize,
}

impl PoleNeighborhood {
    /// Both basins meet this neighborhood, the signature of a pole sitting
    /// on the basin boundary.
    pub fn is_mixed(&self) -> bool {
        self.zero_pixels > 0 && self.infinity_pixels > 0
    }
}

/// Counts basin labels within `radius_px` pixels (Euclidean, in pixel units)
/// of each pole's pixel.
pub fn pole_boundary_check(
    grid: &BasinGrid,
    poles: &[Complex64],
    radius_px: usize,
) -> Result<Vec<PoleNeighborhood>, PoleBoundaryError> {
    let vp = &grid.viewport;
    let r = radius_px as isize;
    let mut out = Vec::with_capacity(poles.len());
    for &pole in poles {
        let Some((pc, pr)) = vp.pixel_of(pole) else {
            return Err(PoleBoundaryError::PoleOutsideViewport);
        };
        let mut counts = PoleNeighborhood {
            pole,
            zero_pixels: 0,
            infinity_pixels: 0,
            unresolved_pixels: 0,
        };
        for dy in -r..=r {
            for dx in -r..=r {
                if dx * dx + dy * dy > r * r {
                    continue;
                }
                let col = pc as isize + dx;
                let row = pr as isize + dy;
                if col < 0 || row < 0 || col >= vp.px_w as isize || row >= vp.px_h as isize {
                    continue;
                }
                match grid.label(col as usize, row as usize) {
                    Basin::Zero => counts.zero_pixels += 1,
                    Basin::Infinity => counts.infinity_pixels += 1,
                    Basin::Unresolved => counts.unresolved_pixels += 1,
                }
            }
        }
        out.push(counts);
    }
    Ok(out)
}

/// One open interval of the real line between consecutive breakpoints, with
/// the sampled signs of C(x) - x and C'(x): +1, -1, or 0 when the samples
/// disagree.
#[derive(Clone, Copy, Debug)]
pub struct IntervalSigns {
    pub lo: f64,
    pub hi: f64,
    pub displacement: i8,
    pub derivative: i8,
}

/// Sign structure of the map for z e^{z^n} on the real line. Breakpoints
/// are labeled by what they are: extraneous fixed points (-e1, -e2), real
/// zeros (z_minus, z_plus, z0 and -z0 for even n), the real pole, the
/// origin, and the positive real critical point c_r.
#[derive(Clone, Debug)]
pub struct RealLineProfile {
    pub n: u32,
    pub breakpoints: Vec<(&'static str, f64)>,
    pub intervals: Vec<IntervalSigns>,
}

fn sampled_sign(values: impl Iterator<Item = f64>) -> i8 {
    let mut sign = 0i8;
    for v in values {
        let s = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if sign == 0 {
            sign = s;
        } else if s != 0 && s != sign {
            return 0;
        }
    }
    sign
}

/// Samples the sign of displacement and derivative on each interval between
/// the named breakpoints of the real line.
pub fn real_line_profile(n: u32) -> RealLineProfile {
    assert!(n >= 1, "n must be at least 1");
    let nf = n as f64;
    let map = build_cn(n);
    let deriv = map.derivative();

    let mut breakpoints: Vec<(&'static str, f64)> = Vec::new();
    if n % 2 == 1 {
        let (e1, e2) = real_extraneous_cn(n).expect("n is odd");
        let zeros = real_zeros_cn(n);
        breakpoints.push(("-e1", -e1));
        breakpoints.push(("z_minus", zeros[0]));
        breakpoints.push(("pole", -(1.0 / nf).powf(1.0 / nf)));
        breakpoints.push(("-e2", -e2));
        breakpoints.push(("0", 0.0));
        if n >= 3 {
            let c_r = critical_cubic_roots(n).0.powf(1.0 / nf);
            breakpoints.push(("c_r", c_r));
            breakpoints.push(("z_plus", zeros[2]));
        }
    } else {
        let z0 = *real_zeros_cn(n).last().expect("even n has a positive zero");
        let c_r = critical_cubic_roots(n).0.powf(1.0 / nf);
        breakpoints.push(("-z0", -z0));
        breakpoints.push(("-c_r", -c_r));
        breakpoints.push(("0", 0.0));
        breakpoints.push(("c_r", c_r));
        breakpoints.push(("z0", z0));
    }
    breakpoints.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut intervals = Vec::with_capacity(breakpoints.len() + 1);
    let first = breakpoints.first().expect("nonempty").1;
    let last = breakpoints.last().expect("nonempty").1;
    let mut edges = vec![(f64::NEG_INFINITY, first)];
    for pair in breakpoints.windows(2) {
        edges.push((pair[0].1, pair[1].1));
    }
    edges.push((last, f64::INFINITY));

    const SAMPLES: usize = 33;
    for (lo, hi) in edges {
        let (a, b) = (
            if lo.is_finite() { lo } else { first - 2.0 },
            if hi.is_finite() { hi } else { last + 2.0 },
        );
        let xs = (0..SAMPLES).map(|i| a + (i as f64 + 0.5) / SAMPLES as f64 * (b - a));
        let displacement = sampled_sign(xs.clone().filter_map(|x| {
            let z = Complex64::new(x, 0.0);
            map.eval(z).finite().map(|v| (v - z).re)
        }));
        let derivative = sampled_sign(xs.filter_map(|x| {
            deriv.eval(Complex64::new(x, 0.0)).finite().map(|v| v.re)
        }));
        intervals.push(IntervalSigns {
            lo,
            hi,
            displacement,
            derivative,
        });
    }

    RealLineProfile {
        n,
        breakpoints,
        intervals,
    }
}
