//! Globally adaptive 15-point Gauss–Kronrod quadrature.
//!
//! Each panel is integrated with the 15-point Kronrod rule and its embedded
//! 7-point Gauss rule; the difference, rescaled as in QUADPACK, is the panel
//! error. The panel with the largest error is bisected until the summed error
//! falls below `max(rel_tol·|I|, abs_floor)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::QuadratureSettings;
use crate::error::{CasimirError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Scalar quadrature result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

/// Vector-valued quadrature result; `error` is the L1 norm of component errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VecEstimate<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    lo: f64,
    hi: f64,
    value: [f64; N],
    error: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<const N: usize> Eq for Panel<N> {}

impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for Panel<N> {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk15<const N: usize, F>(f: &mut F, lo: f64, hi: f64) -> Result<Panel<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let abs_half = half.abs();

    let mut fv1 = [[0.0; N]; 7];
    let mut fv2 = [[0.0; N]; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        fv1[j] = f(center - dx)?;
        fv2[j] = f(center + dx)?;
    }
    let fc = f(center)?;

    let mut value = [0.0; N];
    let mut error = 0.0;
    for c in 0..N {
        let mut res_k = fc[c] * WGK[7];
        let mut res_g = fc[c] * WG[3];
        let mut res_abs = fc[c].abs() * WGK[7];
        for j in 0..7 {
            let pair = fv1[j][c] + fv2[j][c];
            res_k += WGK[j] * pair;
            res_abs += WGK[j] * (fv1[j][c].abs() + fv2[j][c].abs());
            if j % 2 == 1 {
                res_g += WG[j / 2] * pair;
            }
        }
        let mean = 0.5 * res_k;
        let mut res_asc = WGK[7] * (fc[c] - mean).abs();
        for j in 0..7 {
            res_asc += WGK[j] * ((fv1[j][c] - mean).abs() + (fv2[j][c] - mean).abs());
        }
        value[c] = res_k * half;
        let raw = (res_k - res_g) * half;
        error += rescale_error(raw, res_abs * abs_half, res_asc * abs_half);
    }
    for v in value.iter() {
        if !v.is_finite() {
            return Err(CasimirError::Domain(format!(
                "integrand not finite on [{lo:e}, {hi:e}]"
            )));
        }
    }
    Ok(Panel {
        lo,
        hi,
        value,
        error,
    })
}

/// Integrates a fallible vector-valued `f` over the panels delimited by
/// `points` (ascending, at least two entries).
pub fn try_adaptive_quad_vec<const N: usize, F>(
    mut f: F,
    points: &[f64],
    settings: &QuadratureSettings,
) -> Result<VecEstimate<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    if points.len() < 2 {
        return Err(CasimirError::Domain("need at least two break points".into()));
    }
    for w in points.windows(2) {
        if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(CasimirError::Domain(format!(
                "integration limits must be finite and ascending, got [{}, {}]",
                w[0], w[1]
            )));
        }
    }

    let mut heap = BinaryHeap::with_capacity(2 * points.len() + 16);
    for w in points.windows(2) {
        heap.push(gk15(&mut f, w[0], w[1])?);
    }
    let mut subdivisions = heap.len();

    loop {
        let (value, error) = totals(&heap);
        let scale: f64 = value.iter().map(|v| v.abs()).sum();
        let tol = (settings.rel_tol * scale).max(settings.abs_floor);
        if error <= tol {
            return Ok(VecEstimate {
                value,
                error,
                subdivisions,
            });
        }
        if subdivisions >= settings.max_subdivisions {
            return Err(CasimirError::QuadratureConvergence {
                estimate: value.iter().sum(),
                error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel width at machine resolution; further bisection is futile.
            heap.push(worst);
            let (value, error) = totals(&heap);
            return Err(CasimirError::QuadratureConvergence {
                estimate: value.iter().sum(),
                error,
                subdivisions,
            });
        }
        heap.push(gk15(&mut f, worst.lo, mid)?);
        heap.push(gk15(&mut f, mid, worst.hi)?);
        subdivisions += 1;
    }
}

fn totals<const N: usize>(heap: &BinaryHeap<Panel<N>>) -> ([f64; N], f64) {
    // Sum in a position-sorted order so the result does not depend on heap layout.
    let mut panels: Vec<&Panel<N>> = heap.iter().collect();
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut value = [0.0; N];
    let mut error = 0.0;
    for p in panels {
        for c in 0..N {
            value[c] += p.value[c];
        }
        error += p.error;
    }
    (value, error)
}

/// Adaptive quadrature of `f` over `[lo, hi]`.
pub fn adaptive_quad<F>(mut f: F, lo: f64, hi: f64, settings: &QuadratureSettings) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> f64,
{
    adaptive_quad_points(|x| f(x), &[lo, hi], settings)
}

/// Adaptive quadrature with user-supplied interior break points.
pub fn adaptive_quad_points<F>(
    mut f: F,
    points: &[f64],
    settings: &QuadratureSettings,
) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> f64,
{
    let est = try_adaptive_quad_vec(|x| Ok([f(x)]), points, settings)?;
    Ok(QuadEstimate {
        value: est.value[0],
        error: est.error,
        subdivisions: est.subdivisions,
    })
}

/// ∫_lo^∞ f via x = lo + scale·u/(1−u), u ∈ [0, 1). `scale` should be of the
/// order of the width over which `f` decays.
pub fn adaptive_quad_semi_infinite<F>(
    mut f: F,
    lo: f64,
    scale: f64,
    settings: &QuadratureSettings,
) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> f64,
{
    if !(scale > 0.0) {
        return Err(CasimirError::Domain("scale must be positive".into()));
    }
    let g = |u: f64| {
        let one_minus = 1.0 - u;
        let x = lo + scale * u / one_minus;
        let jac = scale / (one_minus * one_minus);
        let v = f(x) * jac;
        // u → 1 maps to x → ∞ where any integrable f·jacobian tends to a finite limit.
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    adaptive_quad_points(g, &[0.0, 0.5, 0.9, 0.99, 1.0], settings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ZETA3;

    fn tight() -> QuadratureSettings {
        QuadratureSettings::default().with_rel_tol(1e-11)
    }

    #[test]
    fn constant_integrand_is_exact() {
        let r = adaptive_quad(|_| 1.0, 0.0, 1.0, &QuadratureSettings::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bose_kernel_gives_two_zeta3() {
        let r = adaptive_quad(|y: f64| y * y / y.exp_m1(), 0.0, 60.0, &tight()).unwrap();
        assert!((r.value - 2.0 * ZETA3).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn gamma_four() {
        let r = adaptive_quad(|y: f64| y.powi(3) * (-y).exp(), 0.0, 60.0, &tight()).unwrap();
        assert!((r.value - 6.0).abs() < 1e-8);
    }

    #[test]
    fn reports_budget_exhaustion() {
        let s = QuadratureSettings {
            max_subdivisions: 3,
            rel_tol: 1e-12,
            ..Default::default()
        };
        let err = adaptive_quad(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &s).unwrap_err();
        assert!(err.is_convergence());
    }

    #[test]
    fn rejects_reversed_limits() {
        assert!(adaptive_quad(|x| x, 1.0, 0.0, &QuadratureSettings::default()).is_err());
    }

    #[test]
    fn semi_infinite_lorentzian() {
        let r = adaptive_quad_semi_infinite(|x| 1.0 / (1.0 + x * x), 0.0, 1.0, &tight()).unwrap();
        assert!((r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn vector_components_are_independent() {
        let r = try_adaptive_quad_vec(|x| Ok([x, x * x]), &[0.0, 1.0, 2.0], &tight()).unwrap();
        assert!((r.value[0] - 2.0).abs() < 1e-13);
        assert!((r.value[1] - 8.0 / 3.0).abs() < 1e-13);
    }
}
