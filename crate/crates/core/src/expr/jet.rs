use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::math;

/// Value and first three derivatives of a scalar function at a point.
///
/// Arithmetic propagates derivatives with the truncated Leibniz and
/// Faà di Bruno rules, so a jet built from [`Jet3::variable`] carries the
/// exact derivatives of the expression that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Jet3 {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
}

impl Jet3 {
    pub const fn new(v0: f64, v1: f64, v2: f64, v3: f64) -> Self {
        Jet3 { v0, v1, v2, v3 }
    }

    pub const fn constant(c: f64) -> Self {
        Jet3::new(c, 0.0, 0.0, 0.0)
    }

    /// The identity function seeded at `x`.
    pub const fn variable(x: f64) -> Self {
        Jet3::new(x, 1.0, 0.0, 0.0)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.v0, self.v1, self.v2, self.v3]
    }

    pub fn is_finite(&self) -> bool {
        self.v0.is_finite() && self.v1.is_finite() && self.v2.is_finite() && self.v3.is_finite()
    }

    pub fn scale(self, k: f64) -> Self {
        Jet3::new(k * self.v0, k * self.v1, k * self.v2, k * self.v3)
    }

    /// Chain rule: `outer` holds `φ(u), φ'(u), φ''(u), φ'''(u)` at `u = self.v0`.
    pub fn compose(self, outer: [f64; 4]) -> Self {
        let [p0, p1, p2, p3] = outer;
        let (g1, g2, g3) = (self.v1, self.v2, self.v3);
        Jet3::new(
            p0,
            p1 * g1,
            p2 * g1 * g1 + p1 * g2,
            p3 * g1 * g1 * g1 + 3.0 * p2 * g1 * g2 + p1 * g3,
        )
    }

    pub fn recip(self) -> Self {
        let u = self.v0;
        let inv = 1.0 / u;
        let inv2 = inv * inv;
        self.compose([inv, -inv2, 2.0 * inv2 * inv, -6.0 * inv2 * inv2])
    }

    /// Integer power by repeated squaring; valid for any base when `k ≥ 0`.
    pub fn powi(self, k: i32) -> Self {
        if k < 0 {
            return self.powi(-k).recip();
        }
        let mut acc = Jet3::constant(1.0);
        let mut base = self;
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Real power; the caller guarantees a positive base.
    pub fn powf(self, p: f64) -> Self {
        let u = self.v0;
        let f = math::powf(u, p);
        let d1 = p * f / u;
        let d2 = (p - 1.0) * d1 / u;
        let d3 = (p - 2.0) * d2 / u;
        self.compose([f, d1, d2, d3])
    }

    pub fn sin(self) -> Self {
        let (s, c) = (math::sin(self.v0), math::cos(self.v0));
        self.compose([s, c, -s, -c])
    }

    pub fn cos(self) -> Self {
        let (s, c) = (math::sin(self.v0), math::cos(self.v0));
        self.compose([c, -s, -c, s])
    }

    pub fn tan(self) -> Self {
        let t = math::tan(self.v0);
        let sec2 = 1.0 + t * t;
        self.compose([t, sec2, 2.0 * t * sec2, 2.0 * sec2 * (1.0 + 3.0 * t * t)])
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (math::sinh(self.v0), math::cosh(self.v0));
        self.compose([s, c, s, c])
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (math::sinh(self.v0), math::cosh(self.v0));
        self.compose([c, s, c, s])
    }

    pub fn tanh(self) -> Self {
        let t = math::tanh(self.v0);
        let sech2 = 1.0 - t * t;
        self.compose([t, sech2, -2.0 * t * sech2, (6.0 * t * t - 2.0) * sech2])
    }

    pub fn exp(self) -> Self {
        let e = math::exp(self.v0);
        self.compose([e, e, e, e])
    }

    pub fn ln(self) -> Self {
        let u = self.v0;
        let inv = 1.0 / u;
        self.compose([math::ln(u), inv, -inv * inv, 2.0 * inv * inv * inv])
    }

    pub fn sqrt(self) -> Self {
        let s = math::sqrt(self.v0);
        let s3 = s * s * s;
        self.compose([s, 0.5 / s, -0.25 / s3, 0.375 / (s3 * s * s)])
    }

    pub fn asinh(self) -> Self {
        let u = self.v0;
        let q = 1.0 + u * u;
        let rs = 1.0 / math::sqrt(q);
        let rs3 = rs / q;
        let rs5 = rs3 / q;
        self.compose([math::asinh(u), rs, -u * rs3, (2.0 * u * u - 1.0) * rs5])
    }

    pub fn atan(self) -> Self {
        let u = self.v0;
        let q = 1.0 / (1.0 + u * u);
        self.compose([math::atan(u), q, -2.0 * u * q * q, (6.0 * u * u - 2.0) * q * q * q])
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3::new(self.v0 + o.v0, self.v1 + o.v1, self.v2 + o.v2, self.v3 + o.v3)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        Jet3::new(self.v0 - o.v0, self.v1 - o.v1, self.v2 - o.v2, self.v3 - o.v3)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        self.scale(-1.0)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, o: Jet3) -> Jet3 {
        let (f, g) = (self, o);
        Jet3::new(
            f.v0 * g.v0,
            f.v1 * g.v0 + f.v0 * g.v1,
            f.v2 * g.v0 + 2.0 * f.v1 * g.v1 + f.v0 * g.v2,
            f.v3 * g.v0 + 3.0 * (f.v2 * g.v1 + f.v1 * g.v2) + f.v0 * g.v3,
        )
    }
}

impl Div for Jet3 {
    type Output = Jet3;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet3) -> Jet3 {
        self * o.recip()
    }
}
