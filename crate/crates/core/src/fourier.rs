//! Discrete Fourier analysis on the periodic grid: mode coefficients in the
//! orthonormal basis `theta_m(x) = (2 pi)^{-d/2} e^{i m.x}`, spectral Sobolev
//! norms for integer exponents, and the fast convolution `u *_h v`.
//!
//! Mode indices run over `m in [-l/2, l/2)^d`. With the orthonormal basis the
//! `s = 0` norm coincides with the discrete `L^2` norm exactly (discrete
//! Plancherel).

use crate::error::{Error, Result};
use crate::grid::{GridField, PeriodicGrid, TAU};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> = RefCell::new(HashMap::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cell| {
        cell.borrow_mut()
            .entry((len, inverse))
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                if inverse {
                    planner.plan_fft_inverse(len)
                } else {
                    planner.plan_fft_forward(len)
                }
            })
            .clone()
    })
}

/// In-place d-dimensional DFT of a flat row-major buffer.
fn fft_nd(grid: PeriodicGrid, data: &mut [Complex64], inverse: bool) {
    let l = grid.points_per_axis();
    let d = grid.dim();
    let fft = plan(l, inverse);
    let mut line = vec![Complex64::new(0.0, 0.0); l];
    for axis in 0..d {
        let stride = grid.stride(axis);
        // iterate over all lines along `axis`
        let n_lines = grid.len() / l;
        for line_idx in 0..n_lines {
            // compute base flat index of this line
            let outer = line_idx / stride;
            let inner = line_idx % stride;
            let base = outer * stride * l + inner;
            for (k, v) in line.iter_mut().enumerate() {
                *v = data[base + k * stride];
            }
            fft.process(&mut line);
            for (k, v) in line.iter().enumerate() {
                data[base + k * stride] = *v;
            }
        }
    }
}

/// Fourier coefficients of a field in the orthonormal basis.
#[derive(Debug, Clone)]
pub struct ModeCoefficients {
    grid: PeriodicGrid,
    /// raw DFT output `X_k = sum_j u_j exp(-2 pi i j k / l)` per axis
    data: Vec<Complex64>,
}

impl ModeCoefficients {
    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    /// Raw DFT buffer (unnormalized, index-ordered).
    pub fn into_raw(self) -> Vec<Complex64> {
        self.data
    }

    /// Coefficient `(u, theta_m)_h` for integer mode `m` with `|m_i| <= l/2`.
    pub fn coefficient(&self, m: &[i64]) -> Complex64 {
        let l = self.grid.points_per_axis() as i64;
        let d = self.grid.dim();
        debug_assert_eq!(m.len(), d);
        let mut flat = 0usize;
        let mut parity = 0i64;
        for &mi in m {
            debug_assert!(mi >= -l / 2 && mi < l / 2 + 1);
            let idx = mi.rem_euclid(l) as usize;
            flat = flat * l as usize + idx;
            parity += mi;
        }
        // node coordinates start at -pi: e^{-i m (-pi)} = (-1)^m per axis
        let sign = if parity.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let hd = self.grid.cell_volume();
        let norm = (TAU).powi(self.grid.dim() as i32);
        self.data[flat] * (sign * hd / norm.sqrt())
    }

    /// Iterate over all modes `m in [-l/2, l/2)^d`, yielding `(m, coefficient)`.
    pub fn for_each_mode(&self, mut f: impl FnMut(&[i64], Complex64)) {
        let l = self.grid.points_per_axis() as i64;
        let d = self.grid.dim();
        let mut m = vec![0i64; d];
        for flat in 0..self.grid.len() {
            let mut rest = flat;
            for axis in (0..d).rev() {
                let idx = (rest % l as usize) as i64;
                rest /= l as usize;
                m[axis] = if idx < l / 2 { idx } else { idx - l };
            }
            f(&m, self.coefficient_at_flat(flat, &m));
        }
    }

    fn coefficient_at_flat(&self, flat: usize, m: &[i64]) -> Complex64 {
        let parity: i64 = m.iter().sum();
        let sign = if parity.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let hd = self.grid.cell_volume();
        let norm = TAU.powi(self.grid.dim() as i32).sqrt();
        self.data[flat] * (sign * hd / norm)
    }
}

/// Forward transform to orthonormal-basis coefficients.
pub fn mode_coefficients(u: &GridField) -> ModeCoefficients {
    let grid = u.grid();
    let mut data: Vec<Complex64> = u
        .values()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    fft_nd(grid, &mut data, false);
    ModeCoefficients { grid, data }
}

/// Spectral Sobolev norm with integer exponent `s` (negative allowed):
/// `( sum_m (1 + |m|^2)^s |(u, theta_m)_h|^2 )^{1/2}`.
pub fn sobolev_norm(u: &GridField, s: i32) -> f64 {
    let coeffs = mode_coefficients(u);
    let mut acc = 0.0;
    coeffs.for_each_mode(|m, c| {
        let m2: f64 = m.iter().map(|&mi| (mi * mi) as f64).sum();
        acc += (1.0 + m2).powi(s) * c.norm_sqr();
    });
    acc.sqrt()
}

/// Positive-order Sobolev norm built from one-sided differences:
/// `sup_{|nu| <= s} || d_+^nu u ||_{L^2_h}` over multi-indices `nu`.
pub fn sobolev_norm_one_sided(u: &GridField, s: usize) -> f64 {
    fn forward_diff(u: &GridField, axis: usize) -> GridField {
        let grid = u.grid();
        let inv_h = 1.0 / grid.spacing();
        let vals = u.values();
        let mut out = vec![0.0; vals.len()];
        for (flat, o) in out.iter_mut().enumerate() {
            *o = (vals[grid.shift(flat, axis, 1)] - vals[flat]) * inv_h;
        }
        GridField::from_values(grid, out).expect("finite")
    }
    fn recurse(u: &GridField, remaining: usize, first_axis: usize, best: &mut f64) {
        *best = best.max(u.l2_norm());
        if remaining == 0 {
            return;
        }
        for axis in first_axis..u.grid().dim() {
            let du = forward_diff(u, axis);
            recurse(&du, remaining - 1, axis, best);
        }
    }
    let mut best: f64 = 0.0;
    recurse(u, s, 0, &mut best);
    best
}

/// Inverse DFT of a product spectrum, shifted by `l/2` per axis to account
/// for the `[-pi, pi)` coordinate origin of the lattice. This is the common
/// tail of every convolution evaluated through the transform.
pub fn inverse_dft_shifted(grid: PeriodicGrid, spec: &mut [Complex64]) -> GridField {
    fft_nd(grid, spec, true);
    let n = grid.len() as f64;
    let l = grid.points_per_axis();
    let d = grid.dim();
    let mut out = vec![0.0; grid.len()];
    let mut idx = vec![0usize; d];
    for (flat, o) in out.iter_mut().enumerate() {
        grid.multi_index(flat, &mut idx);
        let mut src = 0usize;
        for &i in &idx {
            src = src * l + (i + l / 2) % l;
        }
        *o = spec[src].re / n;
    }
    GridField::from_values(grid, out).expect("convolution output finite")
}

/// Fast discrete convolution `(u *_h v)(x) = sum_y h^d u(y) v(x - y)`.
pub fn convolve(u: &GridField, v: &GridField) -> Result<GridField> {
    if u.grid() != v.grid() {
        return Err(Error::GridMismatch("convolution operands".into()));
    }
    let grid = u.grid();
    let mut a: Vec<Complex64> = u.values().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut b: Vec<Complex64> = v.values().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft_nd(grid, &mut a, false);
    fft_nd(grid, &mut b, false);
    let hd = grid.cell_volume();
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y * hd;
    }
    Ok(inverse_dft_shifted(grid, &mut a))
}

/// Direct-sum convolution oracle, O(n^2); used to validate [`convolve`].
pub fn convolve_direct(u: &GridField, v: &GridField) -> Result<GridField> {
    if u.grid() != v.grid() {
        return Err(Error::GridMismatch("convolution operands".into()));
    }
    let grid = u.grid();
    let l = grid.points_per_axis();
    let d = grid.dim();
    let hd = grid.cell_volume();
    let n = grid.len();
    let mut out = vec![0.0; n];
    let mut xi = vec![0usize; d];
    let mut yi = vec![0usize; d];
    for (flat_x, o) in out.iter_mut().enumerate() {
        grid.multi_index(flat_x, &mut xi);
        let mut acc = 0.0;
        for flat_y in 0..n {
            grid.multi_index(flat_y, &mut yi);
            // index of x - y: coordinates subtract, plus origin offset l/2
            let mut flat_z = 0usize;
            for ax in 0..d {
                let zi = (xi[ax] + 2 * l - yi[ax] + l / 2) % l;
                flat_z = flat_z * l + zi;
            }
            acc += u.values()[flat_y] * v.values()[flat_z];
        }
        *o = acc * hd;
    }
    GridField::from_values(grid, out)
}
