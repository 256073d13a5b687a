//! Parallel basin rendering and PPM encoding.
//!
//! Palette: basin of zero on a warm ramp, basin of infinity on a cool ramp,
//! both darkening with iteration count on a log scale; unresolved pixels are
//! black. Output bytes depend only on the arguments, not on thread count.

use chebdyn_core::dynamics::{classify_row, Basin, OrbitClassifier, Viewport};
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum View {
    Plane,
    Infinity,
}

fn classify_row_inverted(
    classifier: &OrbitClassifier,
    viewport: &Viewport,
    row: usize,
    budget: u32,
) -> Vec<(Basin, u32)> {
    (0..viewport.px_w)
        .map(|col| {
            let w = viewport.point(col, row);
            if w.re == 0.0 && w.im == 0.0 {
                // The pixel at the origin of the w plane is infinity itself.
                return (Basin::Infinity, 0);
            }
            let r = classifier.iterate_orbit(Complex64::new(1.0, 0.0) / w, budget);
            (r.basin, r.steps)
        })
        .collect()
}

pub fn render_cells(
    classifier: &OrbitClassifier,
    viewport: &Viewport,
    budget: u32,
    view: View,
) -> Vec<(Basin, u32)> {
    (0..viewport.px_h)
        .into_par_iter()
        .flat_map_iter(|row| match view {
            View::Plane => classify_row(classifier, viewport, row, budget),
            View::Infinity => classify_row_inverted(classifier, viewport, row, budget),
        })
        .collect()
}

fn ramp(from: (f64, f64, f64), to: (f64, f64, f64), t: f64) -> [u8; 3] {
    let ch = |a: f64, b: f64| (a + (b - a) * t).round().clamp(0.0, 255.0) as u8;
    [ch(from.0, to.0), ch(from.1, to.1), ch(from.2, to.2)]
}

fn shade(steps: u32, budget: u32) -> f64 {
    ((1.0 + steps as f64).ln() / (1.0 + budget as f64).ln()).clamp(0.0, 1.0)
}

pub fn ppm_bytes(px_w: usize, px_h: usize, budget: u32, cells: &[(Basin, u32)]) -> Vec<u8> {
    assert_eq!(cells.len(), px_w * px_h);
    let mut out = format!("P6\n{px_w} {px_h}\n255\n").into_bytes();
    out.reserve(3 * cells.len());
    for &(basin, steps) in cells {
        let rgb = match basin {
            Basin::Zero => ramp((255.0, 214.0, 64.0), (150.0, 34.0, 10.0), shade(steps, budget)),
            Basin::Infinity => ramp((150.0, 224.0, 255.0), (10.0, 44.0, 130.0), shade(steps, budget)),
            Basin::Unresolved => [0, 0, 0],
        };
        out.extend_from_slice(&rgb);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_length() {
        let cells = vec![(Basin::Unresolved, 0); 6];
        let bytes = ppm_bytes(3, 2, 100, &cells);
        assert!(bytes.starts_with(b"P6\n3 2\n255\n"));
        assert_eq!(bytes.len(), b"P6\n3 2\n255\n".len() + 18);
    }

    #[test]
    fn palette_separates_basins() {
        let cells = vec![(Basin::Zero, 5), (Basin::Infinity, 5), (Basin::Unresolved, 5)];
        let bytes = ppm_bytes(3, 1, 100, &cells);
        let body = &bytes[b"P6\n3 1\n255\n".len()..];
        let zero = &body[0..3];
        let inf = &body[3..6];
        let unresolved = &body[6..9];
        assert!(zero[0] > zero[2], "warm ramp leads with red");
        assert!(inf[2] > inf[0], "cool ramp leads with blue");
        assert_eq!(unresolved, [0, 0, 0]);
    }

    #[test]
    fn inverted_view_marks_the_origin_as_infinity() {
        let classifier = OrbitClassifier::for_cn(4);
        let viewport = Viewport::new(Complex64::new(0.0, 0.0), 2.0, 3, 3);
        let cells = render_cells(&classifier, &viewport, 200, View::Infinity);
        assert_eq!(cells[4], (Basin::Infinity, 0));
    }
}
