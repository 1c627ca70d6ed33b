use super::flush_underflow;
use crate::error::{domain, Result};

const MAX_ORDER: usize = 1_000_000;
const MAX_ARG: f64 = 1e6;
const RESCALE_AT: f64 = 1e250;

/// Integer-order Bessel function `J_order(x)` for `x >= 0`.
///
/// Negative orders are the caller's business: `J_{-n}(x) = (-1)^n J_n(x)`.
pub fn bessel_j(order: usize, x: f64) -> Result<f64> {
    Ok(bessel_j_sequence(order, x)?[order])
}

/// `J_0(x), ..., J_max_order(x)` from one Miller backward recurrence,
/// normalized by `J_0 + 2 sum_k J_{2k} = 1`.
pub fn bessel_j_sequence(max_order: usize, x: f64) -> Result<Vec<f64>> {
    if !x.is_finite() || x < 0.0 {
        return domain(format!("bessel_j needs a finite x >= 0, got {x}"));
    }
    if x > MAX_ARG {
        return domain(format!("bessel_j argument must be <= {MAX_ARG:e}, got {x}"));
    }
    if max_order > MAX_ORDER {
        return domain(format!("bessel_j order must be <= {MAX_ORDER}, got {max_order}"));
    }
    let mut out = vec![0.0; max_order + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }

    // the second bound keeps the start index past the turning point when
    // max_order is small compared with x
    let start = (max_order + 20usize.max((1.5 * x).ceil() as usize))
        .max((x + 15.0 * x.cbrt()).ceil() as usize + 25);
    let two_over_x = 2.0 / x;
    let mut above = 0.0; // J_{k+1}, unnormalized
    let mut current = 1e-300; // J_k, unnormalized
    let mut even_sum = 0.0;

    for k in (0..=start).rev() {
        if k <= max_order {
            out[k] = current;
        }
        if k == 0 {
            even_sum += current;
        } else if k % 2 == 0 {
            even_sum += 2.0 * current;
        }
        if k == 0 {
            break;
        }
        let below = (k as f64) * two_over_x * current - above;
        above = current;
        current = below;
        if current.abs() > RESCALE_AT {
            let s = 1.0 / RESCALE_AT;
            current *= s;
            above *= s;
            even_sum *= s;
            for v in out.iter_mut().skip(k.saturating_sub(1)) {
                *v *= s;
            }
        }
    }
    for v in out.iter_mut() {
        *v = flush_underflow(*v / even_sum);
    }
    Ok(out)
}
