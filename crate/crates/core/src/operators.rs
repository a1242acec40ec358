//! Periodic finite-difference operators.
//!
//! Two accuracy levels are provided. For `p = 1` the classical trio is used:
//! centered first difference, forward difference as its summation-by-parts
//! companion, and the 3-point second difference, for which
//! `(D2 u, v)_h = -(D u, D v)_h` holds exactly on the periodic grid.
//!
//! For `p = 3` the first difference is the 4th-order centered stencil and the
//! second difference is the standard 4th-order 5-point stencil. The companion
//! `D` is the spectral (Fejer-Riesz) factor of that 5-point stencil, i.e. the
//! unique (up to reflection) real 3-point operator with `D2 = -D^T D`, so the
//! summation-by-parts identity again holds to rounding.

use crate::grid::{GridField, PeriodicGrid};
use serde::{Deserialize, Serialize};

/// Spatial accuracy parameter; the operators have order `p + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorOrder {
    /// p = 1 (second-order stencils)
    P1,
    /// p = 3 (fourth-order stencils)
    P3,
}

impl OperatorOrder {
    pub fn p(self) -> usize {
        match self {
            OperatorOrder::P1 => 1,
            OperatorOrder::P3 => 3,
        }
    }

    pub fn from_p(p: usize) -> Option<Self> {
        match p {
            1 => Some(OperatorOrder::P1),
            3 => Some(OperatorOrder::P3),
            _ => None,
        }
    }
}

/// One-dimensional stencil with offsets in node units; `scale_pow` is the
/// power of `1/h` applied on a grid with spacing `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    pub taps: Vec<(isize, f64)>,
    pub scale_pow: i32,
}

impl Stencil {
    pub fn width(&self) -> usize {
        let lo = self.taps.iter().map(|t| t.0).min().unwrap_or(0);
        let hi = self.taps.iter().map(|t| t.0).max().unwrap_or(0);
        (hi - lo) as usize + 1
    }

    /// Adjoint with respect to `(.,.)_h`: offsets are negated.
    pub fn reflected(&self) -> Stencil {
        Stencil {
            taps: self.taps.iter().map(|&(o, c)| (-o, c)).collect(),
            scale_pow: self.scale_pow,
        }
    }

    /// Apply along `axis` of `u`, periodic wrap.
    pub fn apply_axis(&self, u: &GridField, axis: usize) -> GridField {
        let grid = u.grid();
        let scale = grid.spacing().powi(-self.scale_pow);
        let vals = u.values();
        let mut out = vec![0.0; vals.len()];
        let stride = grid.stride(axis);
        let l = grid.points_per_axis();
        // precompute wrapped offsets in flat units relative to axis index
        for (flat, o) in out.iter_mut().enumerate() {
            let i = (flat / stride) % l;
            let base = flat - i * stride;
            let mut acc = 0.0;
            for &(off, c) in &self.taps {
                let j = (i as isize + off).rem_euclid(l as isize) as usize;
                acc += c * vals[base + j * stride];
            }
            *o = acc * scale;
        }
        GridField::from_values(grid, out).expect("stencil output finite")
    }

    /// Fourier symbol at angle `theta` (per node), complex value multiplying
    /// `e^{i m x}` for `theta = m h`; includes the `h^{-scale_pow}` factor.
    pub fn symbol(&self, theta: f64, h: f64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for &(off, c) in &self.taps {
            acc += num_complex::Complex64::from_polar(c, off as f64 * theta);
        }
        acc * h.powi(-self.scale_pow)
    }
}

/// The operator family for a fixed accuracy order.
#[derive(Debug, Clone)]
pub struct DiffOps {
    order: OperatorOrder,
    first: Stencil,
    sbp_first: Stencil,
    second: Stencil,
}

impl DiffOps {
    pub fn new(order: OperatorOrder) -> Self {
        match order {
            OperatorOrder::P1 => DiffOps {
                order,
                first: Stencil {
                    taps: vec![(-1, -0.5), (1, 0.5)],
                    scale_pow: 1,
                },
                sbp_first: Stencil {
                    taps: vec![(0, -1.0), (1, 1.0)],
                    scale_pow: 1,
                },
                second: Stencil {
                    taps: vec![(-1, 1.0), (0, -2.0), (1, 1.0)],
                    scale_pow: 2,
                },
            },
            OperatorOrder::P3 => {
                // Fejer-Riesz factor of the 5-point second difference:
                // roots z = 1 and z = r with r = 7 - 4*sqrt(3).
                let r = 7.0 - 4.0 * 3.0f64.sqrt();
                let a = 1.0 / (12.0 * r).sqrt();
                DiffOps {
                    order,
                    first: Stencil {
                        taps: vec![
                            (-2, 1.0 / 12.0),
                            (-1, -8.0 / 12.0),
                            (1, 8.0 / 12.0),
                            (2, -1.0 / 12.0),
                        ],
                        scale_pow: 1,
                    },
                    sbp_first: Stencil {
                        taps: vec![(0, a * r), (1, -a * (1.0 + r)), (2, a)],
                        scale_pow: 1,
                    },
                    second: Stencil {
                        taps: vec![
                            (-2, -1.0 / 12.0),
                            (-1, 16.0 / 12.0),
                            (0, -30.0 / 12.0),
                            (1, 16.0 / 12.0),
                            (2, -1.0 / 12.0),
                        ],
                        scale_pow: 2,
                    },
                }
            }
        }
    }

    pub fn order(&self) -> OperatorOrder {
        self.order
    }

    pub fn p(&self) -> usize {
        self.order.p()
    }

    /// Widest stencil, for the `l > width` precondition.
    pub fn max_width(&self) -> usize {
        self.first
            .width()
            .max(self.sbp_first.width())
            .max(self.second.width())
    }

    pub fn check_fits(&self, grid: PeriodicGrid) -> crate::error::Result<()> {
        if grid.points_per_axis() <= self.max_width() {
            return Err(crate::error::Error::InvalidGrid(format!(
                "grid with {} points per axis cannot hold stencils of width {}",
                grid.points_per_axis(),
                self.max_width()
            )));
        }
        Ok(())
    }

    /// First difference along `axis`.
    pub fn first_diff(&self, u: &GridField, axis: usize) -> GridField {
        self.first.apply_axis(u, axis)
    }

    /// Summation-by-parts companion first difference along `axis`.
    pub fn sbp_first_diff(&self, u: &GridField, axis: usize) -> GridField {
        self.sbp_first.apply_axis(u, axis)
    }

    /// Second difference along `axis`.
    pub fn second_diff(&self, u: &GridField, axis: usize) -> GridField {
        self.second.apply_axis(u, axis)
    }

    /// Gradient: one field per axis.
    pub fn gradient(&self, u: &GridField) -> Vec<GridField> {
        (0..u.grid().dim()).map(|ax| self.first_diff(u, ax)).collect()
    }

    /// Gradient built from the SBP companion differences.
    pub fn sbp_gradient(&self, u: &GridField) -> Vec<GridField> {
        (0..u.grid().dim())
            .map(|ax| self.sbp_first_diff(u, ax))
            .collect()
    }

    /// Divergence of a vector field (one component per axis).
    pub fn divergence(&self, f: &[GridField]) -> GridField {
        let mut out = GridField::zeros(f[0].grid());
        for (ax, comp) in f.iter().enumerate() {
            out.axpy(1.0, &self.first_diff(comp, ax));
        }
        out
    }

    /// Negative adjoint divergence `-grad_h^R . f`; this is the operator the
    /// conservative noise and interaction fluxes use, so that pairings with
    /// test fields reproduce `-(f, grad_h phi)_h` exactly. For the centered
    /// first differences used here it coincides with [`DiffOps::divergence`].
    pub fn divergence_adjoint(&self, f: &[GridField]) -> GridField {
        let refl = self.first.reflected();
        let mut out = GridField::zeros(f[0].grid());
        for (ax, comp) in f.iter().enumerate() {
            out.axpy(-1.0, &refl.apply_axis(comp, ax));
        }
        out
    }

    /// Discrete Laplacian: sum of second differences.
    pub fn laplacian(&self, u: &GridField) -> GridField {
        let mut out = GridField::zeros(u.grid());
        for ax in 0..u.grid().dim() {
            out.axpy(1.0, &self.second_diff(u, ax));
        }
        out
    }

    /// Symbol of the (negative semidefinite) Laplacian on integer mode `m`:
    /// `lap cos(m.x) = -lambda(m) cos(m.x)`.
    pub fn laplacian_eigenvalue(&self, m: &[i64], h: f64) -> f64 {
        let mut acc = 0.0;
        for &mi in m {
            let s = self.second.symbol(mi as f64 * h, h);
            acc += -s.re;
        }
        acc
    }
}

/// Explicit-Euler / RK stability bound for `sigma * laplacian`:
/// `dt <= c / (sigma * lambda_max)` with `c = 2`. Callers typically apply a
/// safety factor on top.
pub fn diffusion_stability_bound(ops: &DiffOps, grid: PeriodicGrid, sigma_max: f64) -> f64 {
    let h = grid.spacing();
    let l = grid.points_per_axis() as i64;
    let m = vec![l / 2; grid.dim()];
    let lambda_max = ops.laplacian_eigenvalue(&m, h);
    2.0 / (sigma_max * lambda_max)
}
