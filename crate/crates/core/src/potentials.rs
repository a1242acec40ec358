//! Interaction potentials between species, their interaction-radius
//! rescaling, grid kernels for convolution drifts, and the separated
//! trigonometric expansion of the pair kernel `grad V(x - y)`.

use crate::error::{Error, Result};
use crate::fourier;
use crate::grid::{wrap_coord, GridField, PeriodicGrid, TAU};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Shape of the base potential `V` (before rescaling by the interaction radius).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PotentialFamily {
    Zero,
    /// Compactly supported smooth bump `c * prod_l exp(-1/(1-(x_l/w)^2))` on `|x_l| < w`.
    Bump { width: f64, amplitude: f64 },
    /// Band-limited even kernel `c * cos(k . x)`; requires interaction radius 1.
    Cosine { mode: i64, amplitude: f64 },
}

impl PotentialFamily {
    fn eval(&self, x: &[f64]) -> f64 {
        match *self {
            PotentialFamily::Zero => 0.0,
            PotentialFamily::Bump { width, amplitude } => {
                let mut v = amplitude;
                for &xi in x {
                    let t = xi / width;
                    if t.abs() >= 1.0 {
                        return 0.0;
                    }
                    v *= (-1.0 / (1.0 - t * t)).exp();
                }
                v
            }
            PotentialFamily::Cosine { mode, amplitude } => {
                let phase: f64 = x.iter().map(|&xi| mode as f64 * xi).sum();
                amplitude * phase.cos()
            }
        }
    }

    fn grad(&self, x: &[f64], out: &mut [f64]) {
        match *self {
            PotentialFamily::Zero => out.fill(0.0),
            PotentialFamily::Bump { width, amplitude } => {
                // b(t) = exp(-1/(1-t^2)), b'(t) = b(t) * (-2t/(1-t^2)^2)
                let mut b = vec![0.0; x.len()];
                let mut db = vec![0.0; x.len()];
                for (i, &xi) in x.iter().enumerate() {
                    let t = xi / width;
                    if t.abs() >= 1.0 {
                        out.fill(0.0);
                        return;
                    }
                    let q = 1.0 - t * t;
                    b[i] = (-1.0 / q).exp();
                    db[i] = b[i] * (-2.0 * t / (q * q)) / width;
                }
                for l in 0..x.len() {
                    let mut v = amplitude * db[l];
                    for (j, bj) in b.iter().enumerate() {
                        if j != l {
                            v *= bj;
                        }
                    }
                    out[l] = v;
                }
            }
            PotentialFamily::Cosine { mode, amplitude } => {
                let phase: f64 = x.iter().map(|&xi| mode as f64 * xi).sum();
                let s = -amplitude * (mode as f64) * phase.sin();
                out.fill(s);
            }
        }
    }
}

/// The full interaction structure: per-pair amplitude scaling of a common
/// family, with mass-preserving rescaling `V^r(x) = r^{-d} V(x/r)`.
#[derive(Debug, Clone)]
pub struct PotentialMatrix {
    d: usize,
    n_species: usize,
    family: PotentialFamily,
    r_interaction: f64,
    /// row-major `n_species x n_species` pair amplitude factors
    pair_scale: Vec<f64>,
}

impl PotentialMatrix {
    pub fn new(
        d: usize,
        n_species: usize,
        family: PotentialFamily,
        r_interaction: f64,
        pair_scale: Option<Vec<f64>>,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&r_interaction) || r_interaction == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "interaction radius must lie in (0, 1], got {r_interaction}"
            )));
        }
        if let PotentialFamily::Bump { width, .. } = family {
            if width <= 0.0 || r_interaction * width >= PI {
                return Err(Error::InvalidArgument(
                    "bump support must fit inside the torus (r * width < pi)".into(),
                ));
            }
        }
        if matches!(family, PotentialFamily::Cosine { .. }) && r_interaction != 1.0 {
            return Err(Error::InvalidArgument(
                "cosine kernel is only periodic for interaction radius 1".into(),
            ));
        }
        let pair_scale = pair_scale.unwrap_or_else(|| vec![1.0; n_species * n_species]);
        if pair_scale.len() != n_species * n_species {
            return Err(Error::InvalidArgument(
                "pair amplitude matrix has wrong size".into(),
            ));
        }
        Ok(Self {
            d,
            n_species,
            family,
            r_interaction,
            pair_scale,
        })
    }

    pub fn zero(d: usize, n_species: usize) -> Self {
        Self::new(d, n_species, PotentialFamily::Zero, 1.0, None).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n_species(&self) -> usize {
        self.n_species
    }

    pub fn r_interaction(&self) -> f64 {
        self.r_interaction
    }

    pub fn is_zero_pair(&self, alpha: usize, beta: usize) -> bool {
        matches!(self.family, PotentialFamily::Zero)
            || self.pair_scale[alpha * self.n_species + beta] == 0.0
    }

    pub fn is_zero(&self) -> bool {
        (0..self.n_species)
            .all(|a| (0..self.n_species).all(|b| self.is_zero_pair(a, b)))
    }

    /// `V^{r}_{alpha beta}(x)` with periodic wrap of the argument.
    pub fn eval(&self, alpha: usize, beta: usize, x: &[f64]) -> f64 {
        let r = self.r_interaction;
        let scaled: Vec<f64> = x.iter().map(|&xi| wrap_coord(xi) / r).collect();
        self.pair_scale[alpha * self.n_species + beta] * self.family.eval(&scaled)
            / r.powi(self.d as i32)
    }

    /// `grad V^{r}_{alpha beta}(x)`.
    pub fn grad(&self, alpha: usize, beta: usize, x: &[f64], out: &mut [f64]) {
        let r = self.r_interaction;
        let scaled: Vec<f64> = x.iter().map(|&xi| wrap_coord(xi) / r).collect();
        self.family.grad(&scaled, out);
        let scale = self.pair_scale[alpha * self.n_species + beta] / r.powi(self.d as i32 + 1);
        for o in out.iter_mut() {
            *o *= scale;
        }
    }

    /// Interpolation of one gradient component onto a grid.
    pub fn grad_component_field(
        &self,
        alpha: usize,
        beta: usize,
        axis: usize,
        grid: PeriodicGrid,
    ) -> GridField {
        let mut g = vec![0.0; self.d];
        GridField::sample(grid, |x| {
            self.grad(alpha, beta, x, &mut g);
            g[axis]
        })
    }

    /// Sine-series coefficients of `d_l V^r_{ab}(z) = sum_{k lex-positive} s_k sin(k.z)`,
    /// obtained by sampling on `l_quad` points per axis. Only modes with
    /// `|s_k| > tol` are kept.
    pub fn grad_sine_series(
        &self,
        alpha: usize,
        beta: usize,
        axis: usize,
        l_quad: usize,
        tol: f64,
    ) -> Vec<(Vec<i64>, f64)> {
        if self.is_zero_pair(alpha, beta) {
            return Vec::new();
        }
        let grid = PeriodicGrid::new(self.d, l_quad).expect("valid quadrature grid");
        let field = self.grad_component_field(alpha, beta, axis, grid);
        let coeffs = fourier::mode_coefficients(&field);
        let mut series = Vec::new();
        let norm = TAU.powi(self.d as i32).sqrt(); // theta_m = norm^{-1} e^{imx}
        coeffs.for_each_mode(|m, c| {
            if !lex_positive(m) {
                return;
            }
            // g_hat_k = coefficient / (2 pi)^{d/2}; s_k = -2 Im(g_hat_k)
            let s = -2.0 * c.im / norm;
            if s.abs() > tol {
                series.push((m.to_vec(), s));
            }
        });
        series
    }
}

/// Lexicographic positivity: first nonzero component is positive.
pub fn lex_positive(m: &[i64]) -> bool {
    for &mi in m {
        if mi > 0 {
            return true;
        }
        if mi < 0 {
            return false;
        }
    }
    false
}

/// Real trigonometric feature indexed by a signed mode: `cos(m.x)` when `m`
/// is lexicographically nonnegative, `sin((-m).x)` otherwise.
pub fn signed_trig(m: &[i64], x: &[f64]) -> f64 {
    let dot: f64 = m.iter().zip(x).map(|(&mi, &xi)| mi as f64 * xi).sum();
    if lex_positive(m) || m.iter().all(|&mi| mi == 0) {
        dot.cos()
    } else {
        (-dot).sin()
    }
}

/// Precomputed grid transforms of the gradient kernels, for fast repeated
/// convolution drifts.
pub struct GridKernels {
    grid: PeriodicGrid,
    n_species: usize,
    d: usize,
    /// per pair (row-major), per axis: DFT of the sampled gradient component
    grad_hat: Vec<Option<Vec<Vec<Complex64>>>>,
}

impl GridKernels {
    pub fn new(pot: &PotentialMatrix, grid: PeriodicGrid) -> Self {
        let n = pot.n_species();
        let d = pot.dim();
        let mut grad_hat = Vec::with_capacity(n * n);
        for alpha in 0..n {
            for beta in 0..n {
                if pot.is_zero_pair(alpha, beta) {
                    grad_hat.push(None);
                    continue;
                }
                let per_axis: Vec<Vec<Complex64>> = (0..d)
                    .map(|ax| {
                        let f = pot.grad_component_field(alpha, beta, ax, grid);
                        dft_forward(&f)
                    })
                    .collect();
                grad_hat.push(Some(per_axis));
            }
        }
        Self {
            grid,
            n_species: n,
            d,
            grad_hat,
        }
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn is_zero(&self) -> bool {
        self.grad_hat.iter().all(|g| g.is_none())
    }

    /// Convolution drifts `U_alpha = sum_beta I[grad V_ab] *_h rho_beta` for
    /// all species; result indexed `[alpha][axis]`.
    pub fn drift_all(&self, rho: &[GridField]) -> Vec<Vec<GridField>> {
        let rho_hat: Vec<Vec<Complex64>> = rho.iter().map(dft_forward).collect();
        let hd = self.grid.cell_volume();
        (0..self.n_species)
            .map(|alpha| {
                (0..self.d)
                    .map(|ax| {
                        let mut acc = vec![Complex64::new(0.0, 0.0); self.grid.len()];
                        let mut any = false;
                        for beta in 0..self.n_species {
                            if let Some(g) = &self.grad_hat[alpha * self.n_species + beta] {
                                any = true;
                                for (a, (k, r)) in
                                    acc.iter_mut().zip(g[ax].iter().zip(&rho_hat[beta]))
                                {
                                    *a += k * r * hd;
                                }
                            }
                        }
                        if !any {
                            return GridField::zeros(self.grid);
                        }
                        dft_inverse_conv(self.grid, acc)
                    })
                    .collect()
            })
            .collect()
    }

    /// `sum_beta sum_l I[d_l V_{beta alpha}] *_h w[beta][l]` for each alpha
    /// (the contracted convolution appearing in the backward test-function
    /// evolution; note the transposed pair index).
    pub fn conv_contract_transposed(&self, w: &[Vec<GridField>]) -> Vec<GridField> {
        let w_hat: Vec<Vec<Vec<Complex64>>> = w
            .iter()
            .map(|per_axis| per_axis.iter().map(dft_forward).collect())
            .collect();
        let hd = self.grid.cell_volume();
        (0..self.n_species)
            .map(|alpha| {
                let mut acc = vec![Complex64::new(0.0, 0.0); self.grid.len()];
                let mut any = false;
                for beta in 0..self.n_species {
                    if let Some(g) = &self.grad_hat[beta * self.n_species + alpha] {
                        any = true;
                        for ax in 0..self.d {
                            for (a, (k, r)) in
                                acc.iter_mut().zip(g[ax].iter().zip(&w_hat[beta][ax]))
                            {
                                *a += k * r * hd;
                            }
                        }
                    }
                }
                if !any {
                    return GridField::zeros(self.grid);
                }
                dft_inverse_conv(self.grid, acc)
            })
            .collect()
    }

    /// Convolution of one pair's gradient kernel with a single field.
    pub fn conv_grad(&self, alpha: usize, beta: usize, field: &GridField) -> Vec<GridField> {
        match &self.grad_hat[alpha * self.n_species + beta] {
            None => (0..self.d).map(|_| GridField::zeros(self.grid)).collect(),
            Some(g) => {
                let f_hat = dft_forward(field);
                let hd = self.grid.cell_volume();
                (0..self.d)
                    .map(|ax| {
                        let acc: Vec<Complex64> = g[ax]
                            .iter()
                            .zip(&f_hat)
                            .map(|(k, r)| k * r * hd)
                            .collect();
                        dft_inverse_conv(self.grid, acc)
                    })
                    .collect()
            }
        }
    }
}

fn dft_forward(u: &GridField) -> Vec<Complex64> {
    fourier::mode_coefficients(u).into_raw()
}

/// Inverse transform of a product spectrum, including the index shift that
/// accounts for the `[-pi, pi)` coordinate origin (see [`fourier::convolve`]).
fn dft_inverse_conv(grid: PeriodicGrid, mut spec: Vec<Complex64>) -> GridField {
    fourier::inverse_dft_shifted(grid, &mut spec)
}

/// Separated expansion of one gradient component of the pair kernel:
/// `d_l V^r_{ab}(x - y) = sum_{(m, n)} F[m, n] theta_m(y) theta_n(x)`
/// over signed modes (see [`signed_trig`]), truncated to `|m|_inf <= m_cut`.
#[derive(Debug, Clone)]
pub struct SplitCoefficients {
    pub alpha: usize,
    pub beta: usize,
    pub axis: usize,
    pub m_cut: usize,
    pub entries: BTreeMap<(Vec<i64>, Vec<i64>), f64>,
}

impl SplitCoefficients {
    /// Evaluate the truncated expansion at `(x, y)`.
    pub fn reconstruct(&self, x: &[f64], y: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|((m, n), &c)| c * signed_trig(m, y) * signed_trig(n, x))
            .sum()
    }

    /// Largest coefficient magnitude with `|m|_2 + |n|_2` in `[radius, radius + 1)`.
    pub fn max_at_radius(&self, radius: f64) -> Option<f64> {
        let mut best: Option<f64> = None;
        for ((m, n), &c) in &self.entries {
            let r: f64 = norm2(m) + norm2(n);
            if r >= radius && r < radius + 1.0 {
                best = Some(best.map_or(c.abs(), |b: f64| b.max(c.abs())));
            }
        }
        best
    }

    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "m,n,value")?;
        for ((m, n), c) in &self.entries {
            let ms: Vec<String> = m.iter().map(|v| v.to_string()).collect();
            let ns: Vec<String> = n.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{},{},{c:.17e}", ms.join(";"), ns.join(";"))?;
        }
        Ok(())
    }
}

fn norm2(m: &[i64]) -> f64 {
    m.iter().map(|&v| (v * v) as f64).sum::<f64>().sqrt()
}

/// Compute the separated-expansion table for pair `(alpha, beta)` and
/// gradient component `axis`, truncated to `|k|_inf <= m_cut`. Quadrature
/// uses `4 * m_cut` points per axis.
pub fn compute_split_coefficients(
    pot: &PotentialMatrix,
    alpha: usize,
    beta: usize,
    axis: usize,
    m_cut: usize,
) -> Result<SplitCoefficients> {
    if m_cut == 0 {
        return Err(Error::InvalidArgument("mode cutoff must be positive".into()));
    }
    let l_quad = (4 * m_cut).max(8);
    let series = pot.grad_sine_series(alpha, beta, axis, l_quad, 0.0);
    let s_max = series.iter().fold(0.0f64, |m, (_, s)| m.max(s.abs()));
    let mut entries = BTreeMap::new();
    for (k, s) in series {
        if k.iter().any(|&ki| ki.unsigned_abs() as usize > m_cut) {
            continue;
        }
        // drop transform round-off
        if s.abs() <= 1e-13 * s_max {
            continue;
        }
        let neg: Vec<i64> = k.iter().map(|&ki| -ki).collect();
        // sin(k.(x-y)) = sin(k.x) cos(k.y) - cos(k.x) sin(k.y)
        //             = theta_{-k}(x) theta_{k}(y) - theta_{k}(x) theta_{-k}(y)
        *entries.entry((k.clone(), neg.clone())).or_insert(0.0) += s;
        *entries.entry((neg, k)).or_insert(0.0) -= s;
    }
    Ok(SplitCoefficients {
        alpha,
        beta,
        axis,
        m_cut,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bump(width: f64, amplitude: f64) -> PotentialFamily {
        PotentialFamily::Bump { width, amplitude }
    }

    #[test]
    fn unit_radius_evaluation() {
        let pot = PotentialMatrix::new(1, 1, bump(1.0, 2.0), 1.0, None).unwrap();
        assert_relative_eq!(pot.eval(0, 0, &[0.0]), 2.0 * (-1.0f64).exp(), max_relative = 1e-14);
        assert_eq!(pot.eval(0, 0, &[1.5]), 0.0);
    }

    #[test]
    fn rescaling_definition() {
        // r = 1/2 in d = 1: V^r(x) = 2 V(2x)
        let pot_r = PotentialMatrix::new(1, 1, bump(1.0, 1.0), 0.5, None).unwrap();
        let pot_1 = PotentialMatrix::new(1, 1, bump(1.0, 1.0), 1.0, None).unwrap();
        for x in [-0.4, -0.1, 0.0, 0.2, 0.45] {
            assert_relative_eq!(
                pot_r.eval(0, 0, &[x]),
                2.0 * pot_1.eval(0, 0, &[2.0 * x]),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn gradient_is_odd() {
        let pot = PotentialMatrix::new(2, 1, bump(1.2, 1.0), 0.7, None).unwrap();
        let mut rng = crate::rng::stream(21, &[0]);
        use rand::Rng;
        let mut g1 = [0.0; 2];
        let mut g2 = [0.0; 2];
        for _ in 0..100 {
            let x = [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)];
            pot.grad(0, 0, &x, &mut g1);
            pot.grad(0, 0, &[-x[0], -x[1]], &mut g2);
            for ax in 0..2 {
                assert_relative_eq!(g1[ax], -g2[ax], epsilon = 1e-12, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let pot = PotentialMatrix::new(1, 1, bump(1.0, 1.5), 0.8, None).unwrap();
        let mut g = [0.0];
        for x in [-0.5, -0.2, 0.1, 0.33] {
            pot.grad(0, 0, &[x], &mut g);
            let eps = 1e-6;
            let fd = (pot.eval(0, 0, &[x + eps]) - pot.eval(0, 0, &[x - eps])) / (2.0 * eps);
            assert_relative_eq!(g[0], fd, epsilon = 1e-7, max_relative = 1e-5);
        }
    }

    #[test]
    fn mass_preserved_under_rescaling() {
        let grid = PeriodicGrid::new(1, 2048).unwrap();
        let mut masses = Vec::new();
        for r in [1.0, 0.5, 0.2, 0.1] {
            let pot = PotentialMatrix::new(1, 1, bump(1.0, 1.0), r, None).unwrap();
            let f = GridField::sample(grid, |x| pot.eval(0, 0, x));
            masses.push(f.quadrature());
        }
        for m in &masses[1..] {
            assert!((m - masses[0]).abs() < 1e-8, "masses = {masses:?}");
        }
    }

    #[test]
    fn drift_vanishes_for_constant_density() {
        let grid = PeriodicGrid::new(1, 32).unwrap();
        let pot = PotentialMatrix::new(1, 1, bump(1.0, 1.0), 0.5, None).unwrap();
        let kernels = GridKernels::new(&pot, grid);
        let rho = vec![GridField::constant(grid, 0.7)];
        let u = kernels.drift_all(&rho);
        assert!(u[0][0].linf_norm() < 1e-12);
    }

    #[test]
    fn drift_mode_one_closed_form() {
        // V = c cos(x), rho = 1 + cos(x): U = -c pi sin(x)
        let grid = PeriodicGrid::new(1, 64).unwrap();
        let c = 0.8;
        let pot = PotentialMatrix::new(
            1,
            1,
            PotentialFamily::Cosine { mode: 1, amplitude: c },
            1.0,
            None,
        )
        .unwrap();
        let kernels = GridKernels::new(&pot, grid);
        let rho = vec![GridField::sample(grid, |x| 1.0 + x[0].cos())];
        let u = kernels.drift_all(&rho);
        let expect = GridField::sample(grid, |x| -c * PI * x[0].sin());
        assert!(u[0][0].sub(&expect).linf_norm() < 1e-12);
    }

    #[test]
    fn decoupled_pair_does_not_contribute() {
        let grid = PeriodicGrid::new(1, 32).unwrap();
        // two species, V_12 = V_21 = 0
        let pair = vec![1.0, 0.0, 0.0, 1.0];
        let pot = PotentialMatrix::new(1, 2, bump(1.0, 1.0), 0.5, Some(pair)).unwrap();
        let kernels = GridKernels::new(&pot, grid);
        let rho1 = GridField::sample(grid, |x| 1.0 + 0.5 * x[0].cos());
        let rho2a = GridField::sample(grid, |x| 1.0 + 0.3 * x[0].sin());
        let rho2b = GridField::constant(grid, 2.0);
        let ua = kernels.drift_all(&[rho1.clone(), rho2a]);
        let ub = kernels.drift_all(&[rho1, rho2b]);
        assert!(ua[0][0].sub(&ub[0][0]).linf_norm() < 1e-13);
    }

    #[test]
    fn zero_potential_zero_drift() {
        let grid = PeriodicGrid::new(1, 16).unwrap();
        let pot = PotentialMatrix::zero(1, 1);
        let kernels = GridKernels::new(&pot, grid);
        let rho = vec![GridField::sample(grid, |x| 1.0 + 0.5 * x[0].cos())];
        assert!(kernels.drift_all(&rho)[0][0].linf_norm() == 0.0);
    }

    #[test]
    fn split_coefficients_of_sine_kernel() {
        // dV = -sin(z) for V = cos(z): entries only at |m| = |n| = 1
        let pot = PotentialMatrix::new(
            1,
            1,
            PotentialFamily::Cosine { mode: 1, amplitude: 1.0 },
            1.0,
            None,
        )
        .unwrap();
        let table = compute_split_coefficients(&pot, 0, 0, 0, 4).unwrap();
        assert_eq!(table.entries.len(), 2);
        let s = table.entries.get(&(vec![1], vec![-1])).copied().unwrap();
        assert_relative_eq!(s, -1.0, max_relative = 1e-12);
        let s2 = table.entries.get(&(vec![-1], vec![1])).copied().unwrap();
        assert_relative_eq!(s2, 1.0, max_relative = 1e-12);
        // analytic double-integral oracle: reconstruction equals -sin(x - y)
        for (x, y) in [(0.3, -1.2), (2.0, 0.7), (-2.5, 2.9)] {
            assert_relative_eq!(
                table.reconstruct(&[x], &[y]),
                -(x - y).sin(),
                epsilon = 1e-12,
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn split_coefficients_of_zero_potential() {
        let pot = PotentialMatrix::zero(1, 1);
        let table = compute_split_coefficients(&pot, 0, 0, 0, 4).unwrap();
        assert!(table.entries.is_empty());
    }

    #[test]
    fn split_reconstruction_error_halves_with_mcut() {
        let pot = PotentialMatrix::new(1, 1, bump(1.0, 1.0), 0.5, None).unwrap();
        let mut g = [0.0];
        let mut sup_err = |m_cut: usize| {
            let table = compute_split_coefficients(&pot, 0, 0, 0, m_cut).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..40 {
                for j in 0..7 {
                    let x = -PI + TAU * i as f64 / 40.0;
                    let y = -PI + TAU * j as f64 / 7.0;
                    pot.grad(0, 0, &[x - y], &mut g);
                    worst = worst.max((table.reconstruct(&[x], &[y]) - g[0]).abs());
                }
            }
            worst
        };
        let e2 = sup_err(2);
        let e4 = sup_err(4);
        let e8 = sup_err(8);
        assert!(e4 < e2 / 2.0, "e2 = {e2}, e4 = {e4}");
        assert!(e8 < e4 / 2.0, "e4 = {e4}, e8 = {e8}");
    }

    #[test]
    fn split_coefficients_decay() {
        // table decay exponent for the smooth bump beats (|m|+|n|)^{-3}
        let pot = PotentialMatrix::new(1, 1, bump(1.0, 1.0), 0.5, None).unwrap();
        let table = compute_split_coefficients(&pot, 0, 0, 0, 16).unwrap();
        let mut radii = Vec::new();
        let mut mags = Vec::new();
        for k in [2.0f64, 4.0, 8.0] {
            // entries live at (k, -k): |m|_2 + |n|_2 = 2k
            if let Some(m) = table.max_at_radius(2.0 * k) {
                if m > 0.0 {
                    radii.push(2.0 * k);
                    mags.push(m);
                }
            }
        }
        assert!(radii.len() >= 3, "expected populated radius bins");
        let slope = crate::fit::log_log_slope(&radii, &mags);
        assert!(slope < -3.0, "decay slope {slope}");
    }
}
