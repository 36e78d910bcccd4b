//! Finite-difference derivatives.

use crate::error::{CasimirError, Result};

/// A derivative estimate with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error: f64,
}

fn finite(v: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CasimirError::Derivative(format!("non-finite evaluation at {x:e}")))
    }
}

/// Central differences at steps `h` and `h/2` combined by one Richardson
/// extrapolation. Returns the extrapolated value and |D(h/2) − D(h)|, the raw
/// two-level discrepancy.
pub fn central_richardson<G>(mut g: G, x: f64, h: f64) -> Result<Derivative>
where
    G: FnMut(f64) -> Result<f64>,
{
    let mut central = |step: f64| -> Result<f64> {
        let up = finite(g(x + step)?, x + step)?;
        let down = finite(g(x - step)?, x - step)?;
        Ok((up - down) / (2.0 * step))
    };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    Ok(Derivative {
        value: (4.0 * fine - coarse) / 3.0,
        error: (fine - coarse).abs(),
    })
}

/// Derivative of `g` at `x` by Richardson-extrapolated central differences.
///
/// Starts at step `scale` and halves down to `scale/64`, keeping the level
/// whose two-level error estimate is smallest.
pub fn guarded_derivative<G>(mut g: G, x: f64, scale: f64) -> Result<Derivative>
where
    G: FnMut(f64) -> Result<f64>,
{
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(CasimirError::Derivative(format!("invalid step scale {scale}")));
    }
    let mut best: Option<Derivative> = None;
    let mut h = scale;
    while h >= scale / 64.0 {
        let d = central_richardson(&mut g, x, h)?;
        // Richardson removes the h² term; the remaining error is a fraction of the raw gap.
        let d = Derivative {
            value: d.value,
            error: d.error / 3.0,
        };
        let improved = best.map_or(true, |b| d.error < b.error);
        if improved {
            best = Some(d);
        } else {
            // Error grew: round-off now dominates, stop refining.
            break;
        }
        if d.error <= 1e-14 * d.value.abs() {
            break;
        }
        h *= 0.5;
    }
    Ok(best.expect("at least one level evaluated"))
}

/// Fornberg weights for the `order`-th derivative at 0 from samples at
/// `0, h, 2h, …, (n−1)h` (one-sided stencil with `n` nodes).
pub fn one_sided_weights(order: usize, n: usize, h: f64) -> Vec<f64> {
    assert!(n > order, "stencil needs more nodes than the derivative order");
    let nodes: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
    // c[i][k]: weight of node i for derivative k.
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[order]).collect()
}
