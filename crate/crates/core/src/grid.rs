//! Uniform periodic grid on the d-dimensional torus `[-pi, pi)^d` and real
//! scalar fields living on it.
//!
//! The grid has `l` points per axis (even), spacing `h = 2*pi/l`, and all
//! index arithmetic wraps modulo `l` per axis. Fields are stored flat in
//! row-major multi-index order (first axis slowest).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{Read, Write};

pub const TAU: f64 = 2.0 * PI;

/// Wrap a coordinate into `[-pi, pi)`.
pub fn wrap_coord(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    // rem_euclid can return exactly TAU - eps; map pi back to -pi
    if y >= PI {
        y - TAU
    } else {
        y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicGrid {
    d: usize,
    l: usize,
}

impl PeriodicGrid {
    pub fn new(d: usize, l: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidGrid("dimension must be positive".into()));
        }
        if l < 4 || l % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be even and >= 4, got {l}"
            )));
        }
        // keep l^d representable
        let size = (l as u128).pow(d as u32);
        if size > usize::MAX as u128 {
            return Err(Error::InvalidGrid("grid too large".into()));
        }
        Ok(Self { d, l })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn points_per_axis(&self) -> usize {
        self.l
    }

    /// Spacing `h`; stored implicitly so that `h * l == 2*pi` exactly by construction.
    #[inline]
    pub fn spacing(&self) -> f64 {
        TAU / self.l as f64
    }

    /// Total number of nodes `l^d`.
    #[inline]
    pub fn len(&self) -> usize {
        self.l.pow(self.d as u32)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// `h^d`, the quadrature weight per node.
    #[inline]
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.d as i32)
    }

    /// Coordinate of index `i` along one axis.
    #[inline]
    pub fn axis_coord(&self, i: usize) -> f64 {
        -PI + i as f64 * self.spacing()
    }

    /// Stride of `axis` in the flat row-major layout.
    #[inline]
    pub fn stride(&self, axis: usize) -> usize {
        self.l.pow((self.d - 1 - axis) as u32)
    }

    /// Decompose a flat index into per-axis indices.
    pub fn multi_index(&self, mut flat: usize, out: &mut [usize]) {
        for axis in (0..self.d).rev() {
            out[axis] = flat % self.l;
            flat /= self.l;
        }
    }

    /// Node coordinates for a flat index.
    pub fn node(&self, flat: usize, out: &mut [f64]) {
        let mut rest = flat;
        for axis in (0..self.d).rev() {
            out[axis] = self.axis_coord(rest % self.l);
            rest /= self.l;
        }
    }

    /// Shift `flat` by `offset` nodes along `axis`, wrapping periodically.
    #[inline]
    pub fn shift(&self, flat: usize, axis: usize, offset: isize) -> usize {
        let stride = self.stride(axis);
        let i = (flat / stride) % self.l;
        let j = (i as isize + offset).rem_euclid(self.l as isize) as usize;
        flat - i * stride + j * stride
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridField {
    grid: PeriodicGrid,
    /// Optional species tag carried through serialization.
    pub species: Option<usize>,
    values: Vec<f64>,
}

impl GridField {
    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self {
            grid,
            species: None,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn constant(grid: PeriodicGrid, c: f64) -> Self {
        Self {
            grid,
            species: None,
            values: vec![c; grid.len()],
        }
    }

    pub fn from_values(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "value buffer has length {}, grid has {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::Numerical("non-finite field value".into()));
        }
        Ok(Self {
            grid,
            species: None,
            values,
        })
    }

    /// Sample a continuous function at the grid nodes (the interpolation
    /// operator onto the grid).
    pub fn sample(grid: PeriodicGrid, mut f: impl FnMut(&[f64]) -> f64) -> Self {
        let mut values = vec![0.0; grid.len()];
        let mut x = vec![0.0; grid.dim()];
        for (flat, v) in values.iter_mut().enumerate() {
            grid.node(flat, &mut x);
            *v = f(&x);
        }
        Self {
            grid,
            species: None,
            values,
        }
    }

    #[inline]
    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn scale(&mut self, a: f64) {
        for v in &mut self.values {
            *v *= a;
        }
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: f64, other: &GridField) {
        debug_assert_eq!(self.grid, other.grid);
        for (v, w) in self.values.iter_mut().zip(&other.values) {
            *v += a * w;
        }
    }

    pub fn add(&self, other: &GridField) -> GridField {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &GridField) -> GridField {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    /// Pointwise product.
    pub fn mul(&self, other: &GridField) -> GridField {
        debug_assert_eq!(self.grid, other.grid);
        let mut out = self.clone();
        for (v, w) in out.values.iter_mut().zip(&other.values) {
            *v *= w;
        }
        out
    }

    fn check_same_grid(&self, other: &GridField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }

    /// Grid inner product `(u, v)_h = sum_x h^d u(x) v(x)`.
    pub fn inner_product(&self, other: &GridField) -> Result<f64> {
        self.check_same_grid(other)?;
        let hd = self.grid.cell_volume();
        Ok(hd
            * self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .sum::<f64>())
    }

    /// Quadrature `sum_x h^d u(x)`; spectrally accurate for smooth periodic data.
    pub fn quadrature(&self) -> f64 {
        self.grid.cell_volume() * self.values.iter().sum::<f64>()
    }

    /// Discrete `L^p` norm; `p = usize::MAX` is not used, see [`GridField::linf_norm`].
    pub fn lp_norm(&self, p: u32) -> f64 {
        assert!(p >= 1);
        let hd = self.grid.cell_volume();
        match p {
            1 => hd * self.values.iter().map(|v| v.abs()).sum::<f64>(),
            2 => (hd * self.values.iter().map(|v| v * v).sum::<f64>()).sqrt(),
            _ => (hd
                * self
                    .values
                    .iter()
                    .map(|v| v.abs().powi(p as i32))
                    .sum::<f64>())
            .powf(1.0 / p as f64),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        self.lp_norm(2)
    }

    pub fn linf_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Pointwise positive part.
    pub fn positive_part(&self) -> GridField {
        let mut out = self.clone();
        for v in &mut out.values {
            *v = v.max(0.0);
        }
        out
    }

    /// Write as a one-line JSON header `{d, l, species}` followed by the raw
    /// little-endian f64 array in row-major multi-index order.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        let header = serde_json::json!({
            "d": self.grid.dim(),
            "l": self.grid.points_per_axis(),
            "species": self.species,
        });
        serde_json::to_writer(&mut w, &header)?;
        w.write_all(b"\n")?;
        for v in &self.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<GridField> {
        let mut header = Vec::new();
        let mut byte = [0u8; 1];
        loop {
            r.read_exact(&mut byte)?;
            if byte[0] == b'\n' {
                break;
            }
            header.push(byte[0]);
        }
        #[derive(Deserialize)]
        struct Header {
            d: usize,
            l: usize,
            species: Option<usize>,
        }
        let header: Header = serde_json::from_slice(&header)?;
        let grid = PeriodicGrid::new(header.d, header.l)?;
        let mut values = vec![0.0; grid.len()];
        let mut buf = [0u8; 8];
        for v in &mut values {
            r.read_exact(&mut buf)?;
            *v = f64::from_le_bytes(buf);
        }
        let mut field = GridField::from_values(grid, values)?;
        field.species = header.species;
        Ok(field)
    }

    /// CSV export of the field (coordinates then value). Supported for
    /// 1-d fields and 2-d slices.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let d = self.grid.dim();
        if d > 2 {
            return Err(Error::InvalidArgument(
                "csv export only for 1-d and 2-d fields".into(),
            ));
        }
        if d == 1 {
            writeln!(w, "x,value")?;
        } else {
            writeln!(w, "x1,x2,value")?;
        }
        let mut x = vec![0.0; d];
        for (flat, v) in self.values.iter().enumerate() {
            self.grid.node(flat, &mut x);
            let coords: Vec<String> = x.iter().map(|c| format!("{c:.17e}")).collect();
            writeln!(w, "{},{v:.17e}", coords.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_odd_or_tiny_axis_counts() {
        assert!(PeriodicGrid::new(1, 7).is_err());
        assert!(PeriodicGrid::new(1, 2).is_err());
        assert!(PeriodicGrid::new(0, 8).is_err());
    }

    #[test]
    fn spacing_times_points_is_tau() {
        for l in [4usize, 8, 32, 128] {
            let g = PeriodicGrid::new(1, l).unwrap();
            assert_relative_eq!(g.spacing() * l as f64, TAU, max_relative = 1e-15);
        }
    }

    #[test]
    fn shift_wraps_per_axis() {
        let g = PeriodicGrid::new(2, 4).unwrap();
        // node (0, 3): flat = 0*4 + 3
        assert_eq!(g.shift(3, 1, 1), 0);
        assert_eq!(g.shift(3, 1, -1), 2);
        assert_eq!(g.shift(3, 0, 1), 7);
        assert_eq!(g.shift(12, 0, 1), 0);
        assert_eq!(g.shift(5, 0, -2), g.shift(g.shift(5, 0, -1), 0, -1));
    }

    #[test]
    fn inner_product_of_ones() {
        let g1 = PeriodicGrid::new(1, 8).unwrap();
        let u = GridField::constant(g1, 1.0);
        assert_relative_eq!(u.inner_product(&u).unwrap(), TAU, max_relative = 1e-14);

        let g2 = PeriodicGrid::new(2, 4).unwrap();
        let v = GridField::constant(g2, 1.0);
        assert_relative_eq!(v.inner_product(&v).unwrap(), TAU * TAU, max_relative = 1e-14);
    }

    #[test]
    fn inner_product_of_cosines_is_pi() {
        let g = PeriodicGrid::new(1, 16).unwrap();
        let u = GridField::sample(g, |x| x[0].cos());
        // direct-sum oracle
        let mut acc = 0.0;
        for i in 0..16 {
            let x = g.axis_coord(i);
            acc += g.spacing() * x.cos() * x.cos();
        }
        let ip = u.inner_product(&u).unwrap();
        assert_relative_eq!(ip, acc, max_relative = 1e-14);
        assert_relative_eq!(ip, std::f64::consts::PI, max_relative = 1e-13);
    }

    #[test]
    fn inner_product_rejects_grid_mismatch() {
        let a = GridField::constant(PeriodicGrid::new(1, 8).unwrap(), 1.0);
        let b = GridField::constant(PeriodicGrid::new(1, 16).unwrap(), 1.0);
        assert!(a.inner_product(&b).is_err());
    }

    #[test]
    fn quadrature_of_cos_vanishes() {
        for l in [4usize, 8, 12, 32] {
            let g = PeriodicGrid::new(1, l).unwrap();
            let u = GridField::sample(g, |x| x[0].cos());
            assert!(u.quadrature().abs() < 1e-13);
        }
        let g = PeriodicGrid::new(2, 8).unwrap();
        let one = GridField::constant(g, 1.0);
        assert_relative_eq!(one.quadrature(), TAU * TAU, max_relative = 1e-14);
    }

    #[test]
    fn quadrature_error_decays_spectrally() {
        // reference on a very fine grid
        let f = |x: &[f64]| x[0].sin().exp();
        let fine = GridField::sample(PeriodicGrid::new(1, 4096).unwrap(), f).quadrature();
        let errs: Vec<f64> = [8usize, 16, 32]
            .iter()
            .map(|&l| {
                (GridField::sample(PeriodicGrid::new(1, l).unwrap(), f).quadrature() - fine).abs()
            })
            .collect();
        // faster than h^4: each halving of h must shrink the error by > 16x
        // (or hit rounding level)
        assert!(errs[1] < errs[0] / 16.0 || errs[1] < 1e-13, "errs = {errs:?}");
        assert!(errs[2] < errs[1] / 16.0 || errs[2] < 1e-13, "errs = {errs:?}");
    }

    #[test]
    fn sampling_matches_nodes() {
        let g = PeriodicGrid::new(1, 4).unwrap();
        let u = GridField::sample(g, |x| x[0].sin());
        let expect = [0.0f64, -1.0, 0.0, 1.0];
        for (v, e) in u.values().iter().zip(&expect) {
            assert!((v - e).abs() < 1e-15, "{v} vs {e}");
        }
        let c = GridField::sample(g, |_| 3.25);
        assert!(c.values().iter().all(|&v| v == 3.25));
    }

    #[test]
    fn sampled_inner_product_matches_integral() {
        let g = PeriodicGrid::new(1, 16).unwrap();
        let u = GridField::sample(g, |x| (2.0 * x[0]).cos());
        assert_relative_eq!(
            u.inner_product(&u).unwrap(),
            std::f64::consts::PI,
            max_relative = 1e-13
        );
    }

    #[test]
    fn lp_norms() {
        let g = PeriodicGrid::new(1, 8).unwrap();
        let one = GridField::constant(g, 1.0);
        assert_relative_eq!(one.lp_norm(1), TAU, max_relative = 1e-14);
        assert_relative_eq!(one.linf_norm(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(one.lp_norm(2), TAU.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn holder_inequality_on_random_fields() {
        use rand::Rng;
        let mut rng = crate::rng::stream(7, &[99]);
        let g = PeriodicGrid::new(1, 32).unwrap();
        for _ in 0..50 {
            let u = GridField::from_values(
                g,
                (0..32).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            )
            .unwrap();
            let v = GridField::from_values(
                g,
                (0..32).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            )
            .unwrap();
            let ip = u.inner_product(&v).unwrap();
            assert!(ip <= u.lp_norm(1) * v.linf_norm() + 1e-12);
            assert!(ip <= u.lp_norm(2) * v.lp_norm(2) + 1e-12);
        }
    }

    #[test]
    fn binary_roundtrip() {
        let g = PeriodicGrid::new(2, 4).unwrap();
        let mut u = GridField::sample(g, |x| x[0].cos() + 0.3 * x[1].sin());
        u.species = Some(1);
        let mut buf = Vec::new();
        u.write_binary(&mut buf).unwrap();
        let v = GridField::read_binary(&buf[..]).unwrap();
        assert_eq!(u, v);
    }

    #[test]
    fn wrap_coord_stays_in_box() {
        for x in [-10.0, -PI, -PI - 1e-12, 0.0, PI, PI + 1e-9, 123.456] {
            let y = wrap_coord(x);
            assert!((-PI..PI).contains(&y), "{x} -> {y}");
            assert!(((y - x) / TAU - ((y - x) / TAU).round()).abs() < 1e-9);
        }
    }
}
