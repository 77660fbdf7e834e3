//! The warped metric `dr² + w̃²(dφ² + sin²φ dθ²)` at a point, in
//! coordinates `(r, φ, θ)`; the 2-dimensional case uses `(r, θ)` with the
//! third slot unused.

#[derive(Debug, Clone, Copy)]
pub(crate) struct DiagMetric {
    g: [f64; 3],
}

pub(crate) type Vec3 = [f64; 3];

impl DiagMetric {
    /// `dr² + w̃² dθ²`.
    pub fn polar(w: f64) -> Self {
        DiagMetric { g: [1.0, w * w, 0.0] }
    }

    /// `dr² + w̃² dφ² + w̃² sin²φ dθ²`.
    pub fn spherical(w: f64, phi: f64) -> Self {
        let s = crate::math::sin(phi);
        DiagMetric {
            g: [1.0, w * w, w * w * s * s],
        }
    }

    pub fn component(&self, i: usize) -> f64 {
        self.g[i]
    }

    pub fn dot(&self, a: &Vec3, b: &Vec3) -> f64 {
        self.g[0] * a[0] * b[0] + self.g[1] * a[1] * b[1] + self.g[2] * a[2] * b[2]
    }

    pub fn norm(&self, a: &Vec3) -> f64 {
        crate::math::sqrt(self.dot(a, a))
    }

    /// Index raising of a covector.
    pub fn raise(&self, alpha: &Vec3) -> Vec3 {
        let mut v = [0.0; 3];
        for i in 0..3 {
            if self.g[i] != 0.0 {
                v[i] = alpha[i] / self.g[i];
            }
        }
        v
    }

    pub fn unit(&self, a: &Vec3) -> Vec3 {
        let n = self.norm(a);
        [a[0] / n, a[1] / n, a[2] / n]
    }
}
