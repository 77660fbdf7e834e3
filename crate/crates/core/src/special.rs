//! Gamma function and the unit sphere/ball constants built on it.

use crate::math::{self, PI};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) by the Lanczos approximation (g = 7, nine terms), with reflection
/// for `x < 1/2`.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / (math::sin(PI * x) * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    math::sqrt(2.0 * PI) * math::powf(t, x + 0.5) * math::exp(-t) * a
}

/// Area of the unit `k`-sphere `S^k ⊂ R^{k+1}`, `2π^{(k+1)/2} / Γ((k+1)/2)`.
///
/// For an `n`-dimensional model the distance spheres are `S^{n-1}`, so the
/// constant written `ω_{n-1}` is `unit_sphere_area(n - 1)`.
pub fn unit_sphere_area(k: usize) -> f64 {
    let half = (k as f64 + 1.0) / 2.0;
    2.0 * math::powf(PI, half) / gamma(half)
}

/// Volume of the unit ball in `R^m`, `π^{m/2} / Γ(m/2 + 1)`.
pub fn unit_ball_volume(m: usize) -> f64 {
    let half = m as f64 / 2.0;
    math::powf(PI, half) / gamma(half + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Γ at integers and half-integers by the recurrence Γ(x+1) = xΓ(x).
    fn gamma_by_recurrence(twice_x: u32) -> f64 {
        let (mut x, mut g) = if twice_x.is_multiple_of(2) {
            (1.0, 1.0)
        } else {
            (0.5, math::sqrt(PI))
        };
        while 2.0 * x < twice_x as f64 {
            g *= x;
            x += 1.0;
        }
        g
    }

    #[test]
    fn lanczos_matches_recurrence() {
        for twice_x in 1..=40 {
            let x = twice_x as f64 / 2.0;
            let exact = gamma_by_recurrence(twice_x);
            let rel = (gamma(x) - exact).abs() / exact;
            assert!(rel < 1e-12, "x={x}: rel {rel}");
        }
    }

    #[test]
    fn reflection_branch() {
        // Γ(1/4)Γ(3/4) = π√2
        let p = gamma(0.25) * gamma(0.75);
        assert!((p - PI * math::sqrt(2.0)).abs() < 1e-12);
    }

    #[test]
    fn sphere_and_ball_constants() {
        assert!((unit_sphere_area(1) - 2.0 * PI).abs() < 1e-13);
        assert!((unit_sphere_area(2) - 4.0 * PI).abs() < 1e-13);
        assert!((unit_sphere_area(3) - 2.0 * PI * PI).abs() < 1e-12);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-13);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-13);
        for m in 1..8 {
            // |S^{m-1}| = m · V_m
            let lhs = unit_sphere_area(m - 1);
            let rhs = m as f64 * unit_ball_volume(m);
            assert!((lhs - rhs).abs() < 1e-12 * rhs);
        }
    }
}
