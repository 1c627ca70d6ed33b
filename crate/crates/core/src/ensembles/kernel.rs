use nalgebra::DMatrix;

use super::ortho::{stieltjes_system, OrthoPolySystem};
use super::weight::{DiscreteWeight, TAIL_TOLERANCE};
use crate::error::{domain, precondition, Error, Result};
use crate::linalg::lu_determinant;

/// `K_N(x, y)` by the Christoffel-Darboux formula off the diagonal and by
/// `sum_{k<N} p_k(x)^2 w(x)` on it.
pub fn cd_kernel(ops: &OrthoPolySystem, weight: &DiscreteWeight, n: usize, x: usize, y: usize) -> Result<f64> {
    if n == 0 || n > ops.degree() {
        return precondition(format!("kernel order N = {n} needs 1 <= N <= K = {}", ops.degree()));
    }
    let last = weight.max_point();
    if x > last || y > last {
        return domain(format!("({x}, {y}) is off the support {{0..{last}}}"));
    }
    if x == y {
        return Ok((0..n).map(|k| ops.weighted_value(k, x).powi(2)).sum());
    }
    let q = |k, z| ops.weighted_value(k, z);
    let cross = q(n, x) * q(n - 1, y) - q(n - 1, x) * q(n, y);
    Ok(ops.kappa_ratio[n] * cross / (x as f64 - y as f64))
}

/// `K_N(x_i, x_j)` over a list of support points.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    pub domain: Vec<usize>,
    pub entries: DMatrix<f64>,
}

impl KernelMatrix {
    fn index_of(&self, x: usize) -> Result<usize> {
        self.domain
            .iter()
            .position(|&d| d == x)
            .ok_or_else(|| Error::Domain(format!("point {x} is not in the kernel domain")))
    }

    pub fn get(&self, x: usize, y: usize) -> Result<f64> {
        Ok(self.entries[(self.index_of(x)?, self.index_of(y)?)])
    }
}

/// `rho_m(x_1, ..., x_m) = det(K_N(x_i, x_j))`.
pub fn correlation_fn(kernel: &KernelMatrix, points: &[usize]) -> Result<f64> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return precondition(format!("correlation points must be distinct, {p} repeats"));
        }
    }
    let idx: Vec<usize> = points.iter().map(|&p| kernel.index_of(p)).collect::<Result<_>>()?;
    let m = idx.len();
    let sub = DMatrix::from_fn(m, m, |i, j| kernel.entries[(idx[i], idx[j])]);
    Ok(lu_determinant(sub).value)
}

/// An `N`-point orthogonal polynomial ensemble on a discrete weight.
#[derive(Debug, Clone)]
pub struct Ensemble {
    weight: DiscreteWeight,
    ops: OrthoPolySystem,
    n: usize,
}

impl Ensemble {
    pub fn new(weight: DiscreteWeight, n: usize) -> Result<Self> {
        if n == 0 || n >= weight.len() {
            return precondition(format!("need 1 <= N < |support| = {}, got N = {n}", weight.len()));
        }
        if weight.tail_bound() >= TAIL_TOLERANCE {
            return precondition(format!("weight tail bound {:e} is not below {TAIL_TOLERANCE:e}", weight.tail_bound()));
        }
        let ops = stieltjes_system(&weight, n)?;
        Ok(Self { weight, ops, n })
    }

    pub fn weight(&self) -> &DiscreteWeight {
        &self.weight
    }

    pub fn ops(&self) -> &OrthoPolySystem {
        &self.ops
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kernel(&self, x: usize, y: usize) -> Result<f64> {
        cd_kernel(&self.ops, &self.weight, self.n, x, y)
    }

    /// Kernel on the whole support, as `sum_{k<N} q_k(x) q_k(y)`.
    pub fn kernel_matrix(&self) -> KernelMatrix {
        let size = self.weight.len();
        let entries = DMatrix::from_fn(size, size, |x, y| {
            (0..self.n).map(|k| self.ops.weighted_value(k, x) * self.ops.weighted_value(k, y)).sum()
        });
        KernelMatrix { domain: (0..size).collect(), entries }
    }

    /// `P[x_max <= a]` for `a = 0..=M_cut`.
    ///
    /// Since `K_N = Q Q^T` with orthonormal columns, `det(I - K_N)` over the
    /// sites above `a` equals the `N x N` Gram determinant `det(Q_{<=a}^T Q_{<=a})`,
    /// which is positive semi-definite and accumulated one site at a time.
    pub fn xmax_cdf_table(&self) -> Result<Vec<f64>> {
        let n = self.n;
        let mut gram = DMatrix::<f64>::zeros(n, n);
        let mut out = Vec::with_capacity(self.weight.len());
        for a in 0..self.weight.len() {
            let row: Vec<f64> = (0..n).map(|k| self.ops.weighted_value(k, a)).collect();
            for i in 0..n {
                for j in 0..n {
                    gram[(i, j)] += row[i] * row[j];
                }
            }
            // fewer sites than particles forces the determinant to vanish
            let value = if a + 1 < n { 0.0 } else { lu_determinant(gram.clone()).value };
            if !value.is_finite() {
                return Err(Error::Conditioning(format!("rightmost-particle determinant at a = {a} is {value}")));
            }
            out.push(value.clamp(0.0, 1.0));
        }
        Ok(out)
    }

    /// `P[x_max <= a]`; one for `a` at or beyond the support maximum.
    pub fn xmax_cdf(&self, a: usize) -> Result<f64> {
        if a >= self.weight.max_point() {
            return Ok(1.0);
        }
        Ok(self.xmax_cdf_table()?[a])
    }
}

/// `P[x_max <= a]` for the `N`-point ensemble of `weight`.
pub fn xmax_cdf_discrete(weight: &DiscreteWeight, n: usize, a: usize) -> Result<f64> {
    Ensemble::new(weight.clone(), n)?.xmax_cdf(a)
}

/// `P[G(M, N) <= t]` for geometric(q) weights, from the Meixner ensemble
/// with `min(M, N)` particles: `G <= t` iff `x_max <= t + N - 1`.
pub fn meixner_lpp_cdf(m: usize, n: usize, q: f64, t: usize) -> Result<f64> {
    let (m, n) = (m.max(n), m.min(n));
    let ens = Ensemble::new(DiscreteWeight::meixner(m, n, q)?, n)?;
    ens.xmax_cdf(t + n - 1)
}
