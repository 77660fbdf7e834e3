//! Seeded random radial graphs `ρ = R₀(1 + Σ_{j=1..4} a_j cos(j·x + φ_j))`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const MODES: usize = 4;
pub const MAX_AMPLITUDE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Perturbation {
    pub index: u64,
    pub amplitudes: [f64; MODES],
    pub phases: [f64; MODES],
}

impl Perturbation {
    /// Draws the coefficients of batch member `index`. Each member reads
    /// its own ChaCha stream, so members are independent of batch size and
    /// evaluation order.
    pub fn draw(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let mut amplitudes = [0.0; MODES];
        let mut phases = [0.0; MODES];
        for j in 0..MODES {
            amplitudes[j] = rng.random_range(0.0..=MAX_AMPLITUDE);
            phases[j] = rng.random_range(0.0..2.0 * PI);
        }
        Perturbation {
            index,
            amplitudes,
            phases,
        }
    }

    /// Removes the phases, which keeps `ρ(φ)` even about both poles.
    pub fn axisymmetric(mut self) -> Self {
        self.phases = [0.0; MODES];
        self
    }

    /// `ρ` as an expression in `var`.
    pub fn rho_text(&self, r0: f64, var: &str) -> String {
        let mut s = format!("{r0:?}*(1");
        for j in 0..MODES {
            let (a, p) = (self.amplitudes[j], self.phases[j]);
            if p == 0.0 {
                s += &format!(" + {a:?}*cos({}*{var})", j + 1);
            } else {
                s += &format!(" + {a:?}*cos({}*{var} + {p:?})", j + 1);
            }
        }
        s.push(')');
        s
    }

    pub fn max_factor(&self) -> f64 {
        1.0 + self.amplitudes.iter().sum::<f64>()
    }
}
