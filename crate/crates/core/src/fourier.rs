//! Lattice Fourier transforms between momentum and position fields.
//!
//! `Φ(x) = (1/N) Σ_q Φ(q) e^{−iq·x}` and `Φ(q) = Σ_x Φ(x) e^{+iq·x}`, where
//! `q·x = q⁰x⁰ − q·x` and `N` is the total number of sites. The time axis
//! therefore runs a forward FFT and the spatial axes an inverse one; the
//! centered mode offset contributes a per-site phase.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::cone::METRIC_4D;
use crate::lattice::{Lattice, MomentumLatticeField, PositionLatticeField};

#[derive(Clone, Copy, PartialEq)]
enum Direction {
    ToPosition,
    ToMomentum,
}

fn transform(lattice: &Lattice, components: usize, data: &mut [Complex64], dir: Direction) {
    let dims = lattice.dims;
    let mut planner = FftPlanner::<f64>::new();
    for axis in 0..4 {
        let n = dims[axis];
        if n == 1 {
            continue;
        }
        let s = METRIC_4D[axis];
        // e^{−iq·x} carries e^{−i s q x} on this axis.
        let use_forward = match dir {
            Direction::ToPosition => s > 0.0,
            Direction::ToMomentum => s < 0.0,
        };
        let fft: Arc<dyn Fft<f64>> = if use_forward {
            planner.plan_fft_forward(n)
        } else {
            planner.plan_fft_inverse(n)
        };
        let offset = (n / 2) as f64;
        let phase_sign = match dir {
            Direction::ToPosition => s,
            Direction::ToMomentum => -s,
        };
        let phases: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, phase_sign * 2.0 * PI * offset * j as f64 / n as f64))
            .collect();

        let stride: usize = dims[axis + 1..].iter().product::<usize>() * components;
        let outer: usize = dims[..axis].iter().product();
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for o in 0..outer {
            for inner in 0..stride {
                let base = o * n * stride + inner;
                for (j, l) in line.iter_mut().enumerate() {
                    *l = data[base + j * stride];
                }
                if dir == Direction::ToMomentum {
                    line.iter_mut().zip(&phases).for_each(|(l, p)| *l *= p);
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                if dir == Direction::ToPosition {
                    line.iter_mut().zip(&phases).for_each(|(l, p)| *l *= p);
                }
                for (j, l) in line.iter().enumerate() {
                    data[base + j * stride] = *l;
                }
            }
        }
    }
    if dir == Direction::ToPosition {
        let norm = 1.0 / lattice.num_sites() as f64;
        data.iter_mut().for_each(|v| *v *= norm);
    }
}

pub fn to_position(f: &MomentumLatticeField) -> PositionLatticeField {
    let mut data = f.values().to_vec();
    transform(f.lattice(), f.components(), &mut data, Direction::ToPosition);
    PositionLatticeField::from_values(*f.lattice(), f.components(), data).expect("layout preserved by transform")
}

pub fn to_momentum(f: &PositionLatticeField) -> MomentumLatticeField {
    let mut data = f.values().to_vec();
    transform(f.lattice(), f.components(), &mut data, Direction::ToMomentum);
    MomentumLatticeField::from_values(*f.lattice(), f.components(), data).expect("finite input gives finite transform")
}
