//! Periodic 4D lattices and the fields sampled on them.
//!
//! Sites are stored row-major over `(n0, n1, n2, n3)` with the component
//! index innermost. Momentum site `i` along an axis of size `N` carries the
//! centered mode `k = i − N/2`, i.e. `q_μ = (i_μ − N_μ/2)·Δq_μ`. The dual
//! position lattice has spacing `Δx_μ = 2π/(N_μ Δq_μ)` and sites
//! `x_μ = j_μ Δx_μ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::FourMomentum;
use crate::domain::{classify, DomainLabel};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub dims: [usize; 4],
    /// Momentum step `Δq` per axis, in units of `M`.
    pub spacing: [f64; 4],
    pub mass: f64,
}

impl Lattice {
    pub fn new(dims: [usize; 4], spacing: [f64; 4], mass: f64) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidLattice(format!("dims must be positive, got {dims:?}")));
        }
        if spacing.iter().any(|&d| !(d > 0.0) || !d.is_finite()) {
            return Err(Error::InvalidLattice(format!(
                "spacing must be positive and finite, got {spacing:?}"
            )));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidLattice(format!("M must be positive, got {mass}")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidLattice("lattice too large".into()))?;
        Ok(Lattice { dims, spacing, mass })
    }

    /// Uniform `n⁴` lattice.
    pub fn cubic(n: usize, dq: f64, mass: f64) -> Result<Self> {
        Lattice::new([n; 4], [dq; 4], mass)
    }

    pub fn num_sites(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position_spacing(&self) -> [f64; 4] {
        std::array::from_fn(|a| 2.0 * PI / (self.dims[a] as f64 * self.spacing[a]))
    }

    pub fn site_index(&self, idx: [usize; 4]) -> usize {
        let d = self.dims;
        ((idx[0] * d[1] + idx[1]) * d[2] + idx[2]) * d[3] + idx[3]
    }

    pub fn site_coords(&self, mut site: usize) -> [usize; 4] {
        let mut out = [0usize; 4];
        for a in (0..4).rev() {
            out[a] = site % self.dims[a];
            site /= self.dims[a];
        }
        out
    }

    /// Centered integer mode `k_μ = i_μ − N_μ/2`.
    pub fn mode(&self, site: usize) -> [i64; 4] {
        let c = self.site_coords(site);
        std::array::from_fn(|a| c[a] as i64 - (self.dims[a] / 2) as i64)
    }

    /// Site index of a centered mode (wrapped periodically).
    pub fn site_of_mode(&self, mode: [i64; 4]) -> usize {
        let idx = std::array::from_fn(|a| {
            let n = self.dims[a] as i64;
            (mode[a] + n / 2).rem_euclid(n) as usize
        });
        self.site_index(idx)
    }

    pub fn momentum(&self, site: usize) -> FourMomentum {
        let k = self.mode(site);
        FourMomentum(std::array::from_fn(|a| k[a] as f64 * self.spacing[a]))
    }

    pub fn position(&self, site: usize) -> [f64; 4] {
        let c = self.site_coords(site);
        let dx = self.position_spacing();
        std::array::from_fn(|a| c[a] as f64 * dx[a])
    }

    pub fn mode_q2(&self) -> Vec<f64> {
        (0..self.num_sites())
            .map(|s| self.momentum(s).minkowski_square())
            .collect()
    }

    pub fn domains(&self) -> Vec<DomainLabel> {
        (0..self.num_sites())
            .map(|s| classify(self.momentum(s).minkowski_square(), self.mass))
            .collect()
    }

    pub fn ensure_same(&self, other: &Lattice) -> Result<()> {
        if self != other {
            return Err(Error::LatticeMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}

/// A complex multi-component field sampled on the momentum lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumLatticeField {
    lattice: Lattice,
    components: usize,
    values: Vec<Complex64>,
    mode_q2: Vec<f64>,
}

impl MomentumLatticeField {
    pub fn zeros(lattice: Lattice, components: usize) -> Self {
        let components = components.max(1);
        MomentumLatticeField {
            values: vec![Complex64::new(0.0, 0.0); lattice.num_sites() * components],
            mode_q2: lattice.mode_q2(),
            lattice,
            components,
        }
    }

    pub fn from_values(lattice: Lattice, components: usize, values: Vec<Complex64>) -> Result<Self> {
        if components == 0 {
            return Err(Error::InvalidLattice("components must be >= 1".into()));
        }
        let expected = lattice.num_sites() * components;
        if values.len() != expected {
            return Err(Error::InvalidLattice(format!(
                "expected {expected} values, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(MomentumLatticeField {
            mode_q2: lattice.mode_q2(),
            lattice,
            components,
            values,
        })
    }

    /// Field whose value at each site and component is `f(q, component)`.
    pub fn from_fn(lattice: Lattice, components: usize, mut f: impl FnMut(&FourMomentum, usize) -> Complex64) -> Self {
        let mut field = Self::zeros(lattice, components);
        let c = field.components;
        for s in 0..lattice.num_sites() {
            let q = lattice.momentum(s);
            for k in 0..c {
                field.values[s * c + k] = f(&q, k);
            }
        }
        field
    }

    /// Deterministic random field with components uniform in the unit square.
    pub fn random(lattice: Lattice, components: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut field = Self::zeros(lattice, components);
        for v in field.values.iter_mut() {
            *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        field
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn num_sites(&self) -> usize {
        self.lattice.num_sites()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn mode_q2(&self) -> &[f64] {
        &self.mode_q2
    }

    pub fn site(&self, site: usize) -> &[Complex64] {
        &self.values[site * self.components..(site + 1) * self.components]
    }

    pub fn site_mut(&mut self, site: usize) -> &mut [Complex64] {
        let c = self.components;
        &mut self.values[site * c..(site + 1) * c]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn ensure_compatible(&self, other: &MomentumLatticeField) -> Result<()> {
        self.lattice.ensure_same(&other.lattice)?;
        if self.components != other.components {
            return Err(Error::LatticeMismatch(format!(
                "components {} vs {}",
                self.components, other.components
            )));
        }
        Ok(())
    }

    /// Same lattice and layout with every site's components replaced by
    /// `f(site, q², values)`.
    pub fn map_sites(&self, mut f: impl FnMut(usize, f64, &[Complex64], &mut [Complex64])) -> Self {
        let mut out = Self::zeros(self.lattice, self.components);
        let c = self.components;
        for s in 0..self.num_sites() {
            f(
                s,
                self.mode_q2[s],
                &self.values[s * c..(s + 1) * c],
                &mut out.values[s * c..(s + 1) * c],
            );
        }
        out
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out
    }

    pub fn zip_with(
        &self,
        other: &MomentumLatticeField,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for (o, b) in out.values.iter_mut().zip(&other.values) {
            *o = f(*o, *b);
        }
        Ok(out)
    }

    pub fn add(&self, other: &MomentumLatticeField) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MomentumLatticeField) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `max |self − other|` over all entries.
    pub fn max_abs_diff(&self, other: &MomentumLatticeField) -> Result<f64> {
        self.ensure_compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// A complex multi-component field on the position lattice dual to
/// [`Lattice`].
#[derive(Clone, Debug, PartialEq)]
pub struct PositionLatticeField {
    lattice: Lattice,
    components: usize,
    values: Vec<Complex64>,
    real: bool,
}

impl PositionLatticeField {
    pub fn from_values(lattice: Lattice, components: usize, values: Vec<Complex64>) -> Result<Self> {
        if components == 0 || values.len() != lattice.num_sites() * components {
            return Err(Error::InvalidLattice(format!(
                "expected {} values, got {}",
                lattice.num_sites() * components,
                values.len()
            )));
        }
        Ok(PositionLatticeField {
            lattice,
            components,
            values,
            real: false,
        })
    }

    /// A real field; the marker restricts [`crate::dynamics::gauge_translate`]
    /// to purely imaginary translations.
    pub fn from_real(lattice: Lattice, components: usize, values: Vec<f64>) -> Result<Self> {
        let mut f = Self::from_values(
            lattice,
            components,
            values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        )?;
        f.real = true;
        Ok(f)
    }

    pub fn from_fn(lattice: Lattice, components: usize, mut f: impl FnMut(&[f64; 4], usize) -> Complex64) -> Self {
        let c = components.max(1);
        let mut values = Vec::with_capacity(lattice.num_sites() * c);
        for s in 0..lattice.num_sites() {
            let x = lattice.position(s);
            for k in 0..c {
                values.push(f(&x, k));
            }
        }
        PositionLatticeField {
            lattice,
            components: c,
            values,
            real: false,
        }
    }

    pub(crate) fn with_reality(mut self, real: bool) -> Self {
        self.real = real;
        self
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn site(&self, site: usize) -> &[Complex64] {
        &self.values[site * self.components..(site + 1) * self.components]
    }

    pub fn max_abs_diff(&self, other: &PositionLatticeField) -> Result<f64> {
        self.lattice.ensure_same(&other.lattice)?;
        if self.components != other.components {
            return Err(Error::LatticeMismatch("component count".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
