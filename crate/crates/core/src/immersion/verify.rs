use alloc::format;
use alloc::vec::Vec;

use super::ambient::{AmbientModel, CurvatureRelation};
use super::domain::RadialGraphDomain;
use super::hypersurface::Hypersurface;
use crate::error::{Error, Result};
use crate::math;
use crate::model::RadialGrid;

/// Which side of the boundary term the Jellett left-hand side should fall on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Expected {
    Equal,
    Le,
    Ge,
}

impl Expected {
    pub fn name(self) -> &'static str {
        match self {
            Expected::Equal => "equal",
            Expected::Le => "le",
            Expected::Ge => "ge",
        }
    }

    /// The branch implied by how the two curvatures compare.
    pub fn from_relation(rel: CurvatureRelation) -> Option<Expected> {
        match rel {
            CurvatureRelation::Identical => Some(Expected::Equal),
            CurvatureRelation::AmbientBelow => Some(Expected::Le),
            CurvatureRelation::AmbientAbove => Some(Expected::Ge),
            CurvatureRelation::Mixed => None,
        }
    }

    fn admits(self, rel: CurvatureRelation) -> bool {
        matches!(
            (self, rel),
            (_, CurvatureRelation::Identical)
                | (Expected::Le, CurvatureRelation::AmbientBelow)
                | (Expected::Ge, CurvatureRelation::AmbientAbove)
        )
    }

    fn holds(self, residual: f64, slack: f64) -> bool {
        match self {
            Expected::Equal => residual.abs() <= slack,
            Expected::Le => residual <= slack,
            Expected::Ge => residual >= -slack,
        }
    }
}

impl core::str::FromStr for Expected {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" | "eq" => Ok(Expected::Equal),
            "le" => Ok(Expected::Le),
            "ge" => Ok(Expected::Ge),
            other => Err(Error::OutOfRange {
                what: "expected branch",
                value: f64::NAN,
                range: format!("equal|le|ge, got {other:?}"),
            }),
        }
    }
}

/// Outcome of a check whose hypotheses are sampled first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotVerified,
}

impl Verdict {
    fn from_parts(pass: bool, hypothesis: bool) -> Verdict {
        match (hypothesis, pass) {
            (false, _) => Verdict::HypothesisNotVerified,
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::Fail,
        }
    }
}

/// Something the Jellett identity can be evaluated on.
#[derive(Clone, Copy)]
pub enum Immersed<'a> {
    /// A full-dimensional domain; totally geodesic, so `H = 0`.
    Domain(&'a RadialGraphDomain),
    /// A closed hypersurface; the boundary term vanishes.
    Closed(&'a dyn Hypersurface),
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct JellettReport {
    pub m: usize,
    pub mu_w: f64,
    #[cfg_attr(feature = "serde", serde(rename = "tauH"))]
    pub tau_h: f64,
    /// `m μ_w + ∫⟨τ_w, H⟩ dμ_w`.
    pub lhs: f64,
    pub boundary: f64,
    pub residual: f64,
    pub expected: Expected,
    pub slack: f64,
    pub pass: bool,
    pub curvature_relation: CurvatureRelation,
    pub hypothesis_verified: bool,
    pub verdict: Verdict,
}

/// `m μ_w + ∫⟨τ_w, H⟩ dμ_w − ∫⟨τ_w, ν⟩ dσ_w` with its verdict.
pub fn jellett_residual(obj: Immersed<'_>, amb: &AmbientModel, expected: Expected) -> Result<JellettReport> {
    let (m, mu_w, tau_h, boundary, range) = match obj {
        Immersed::Domain(d) => {
            let mu = d.weighted_volume(amb)?;
            let b = d.tau_pairing_boundary(amb)?;
            let (_, hi) = d.radial_range()?;
            (d.dim(), mu, 0.0, b, (1e-3 * hi, hi))
        }
        Immersed::Closed(s) => {
            s.validate(amb)?;
            let mu = s.weighted_measure(amb)?;
            let th = s.integrate(amb, &mut |p| Ok(p.tau_dot_h * p.weight))?;
            (s.dim(), mu, th, 0.0, s.radial_range(amb)?)
        }
    };
    let lhs = m as f64 * mu_w + tau_h;
    let residual = lhs - boundary;
    let slack = 1e-6 * (1.0 + boundary.abs());
    let relation = amb.curvature_relation(range.0, range.1)?;
    let pass = expected.holds(residual, slack);
    let hypothesis_verified = expected.admits(relation);
    Ok(JellettReport {
        m,
        mu_w,
        tau_h,
        lhs,
        boundary,
        residual,
        expected,
        slack,
        pass,
        curvature_relation: relation,
        hypothesis_verified,
        verdict: Verdict::from_parts(pass, hypothesis_verified),
    })
}

const CMC_GATE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CmcVerdict {
    Match,
    Mismatch,
    /// `h` varies too much for the identity to apply; nothing is asserted.
    NotConstant,
    /// No bounded domain was supplied.
    NoDomain,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CmcReport {
    pub samples: usize,
    pub h_mean: f64,
    pub h_stddev: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub sigma_w: f64,
    pub mu_w: Option<f64>,
    pub jellett_h: Option<f64>,
    pub matched: Option<bool>,
    pub verdict: CmcVerdict,
}

impl CmcReport {
    pub fn pass(&self) -> bool {
        self.verdict != CmcVerdict::Mismatch
    }
}

/// Compares the sampled inward mean curvature with `(n−1)/n · σ_w/μ_w`.
pub fn cmc_check(surface: &dyn Hypersurface, dom: Option<&RadialGraphDomain>, amb: &AmbientModel) -> Result<CmcReport> {
    surface.validate(amb)?;
    let hs: Vec<f64> = surface.sample_frames(amb)?.iter().map(|p| p.h).collect();
    let n = hs.len() as f64;
    let mean = hs.iter().sum::<f64>() / n;
    let var = hs.iter().map(|h| (h - mean) * (h - mean)).sum::<f64>() / n;
    let stddev = math::sqrt(var);
    let sigma_w = surface.weighted_measure(amb)?;
    let (h_min, h_max) = hs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &h| (a.min(h), b.max(h)));
    let is_cmc = stddev < CMC_GATE * mean.abs();

    let (mu_w, jellett_h) = match dom {
        Some(d) => {
            let mu = d.weighted_volume(amb)?;
            let dim = amb.dim() as f64;
            (Some(mu), Some((dim - 1.0) / dim * sigma_w / mu))
        }
        None => (None, None),
    };
    let matched = match (is_cmc, jellett_h) {
        (true, Some(j)) => Some((mean - j).abs() <= CMC_GATE * mean.abs()),
        _ => None,
    };
    let verdict = match (dom, is_cmc, matched) {
        (None, _, _) => CmcVerdict::NoDomain,
        (_, false, _) => CmcVerdict::NotConstant,
        (_, true, Some(true)) => CmcVerdict::Match,
        _ => CmcVerdict::Mismatch,
    };
    Ok(CmcReport {
        samples: hs.len(),
        h_mean: mean,
        h_stddev: stddev,
        h_min,
        h_max,
        sigma_w,
        mu_w,
        jellett_h,
        matched,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HkReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub equality: bool,
    pub h_min: f64,
    pub aleksandrov_weak: bool,
    pub verdict: Verdict,
}

/// `(n−1) ∫_Σ 1/h dσ_w` against `n μ_w(Ω)` for a mean-convex boundary.
pub fn hk_functional(surface: &dyn Hypersurface, dom: &RadialGraphDomain, amb: &AmbientModel) -> Result<HkReport> {
    if amb.has_distinct_comparison() {
        return Err(Error::hypothesis(
            "the Heintze–Karcher inequality needs the comparison warp to be the ambient warp",
        ));
    }
    surface.validate(amb)?;
    let frames = surface.sample_frames(amb)?;
    let h_min = frames.iter().map(|p| p.h).fold(f64::INFINITY, f64::min);
    if !(h_min > 0.0) {
        return Err(Error::hypothesis(format!(
            "surface is not mean convex: h = {h_min} at a sample"
        )));
    }
    let n = amb.dim() as f64;
    let integral = surface.integrate(amb, &mut |p| {
        if p.h > 0.0 {
            Ok(p.weight / p.h)
        } else {
            Err(Error::hypothesis(format!(
                "surface is not mean convex: h = {} at parameter {}",
                p.h, p.param
            )))
        }
    })?;
    let lhs = (n - 1.0) * integral;
    let rhs = n * dom.weighted_volume(amb)?;
    let slack = 1e-8 * rhs.abs() + 1e-12;
    let (lo, hi) = surface.radial_range(amb)?;
    let grid = RadialGrid::linear(lo.min(1e-3 * hi), hi, 64);
    let aleksandrov_weak = amb.model().check_aleksandrov(&grid, false)?.overall;
    let pass = lhs >= rhs - slack;
    Ok(HkReport {
        lhs,
        rhs,
        slack,
        pass,
        equality: (lhs - rhs).abs() <= slack,
        h_min,
        aleksandrov_weak,
        verdict: Verdict::from_parts(pass, aleksandrov_weak),
    })
}

fn check_k(k: f64) -> Result<()> {
    if k > 1.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "k",
            value: k,
            range: "(1, inf)".into(),
        })
    }
}

/// `𝓘_k(Ω) = σ_w(∂Ω) / μ_w(Ω)^{(k−1)/k}`.
pub fn k_iso_quotient(dom: &RadialGraphDomain, amb: &AmbientModel, k: f64) -> Result<f64> {
    check_k(k)?;
    let sigma = dom.boundary_weighted_area(amb)?;
    let mu = dom.weighted_volume(amb)?;
    Ok(sigma / math::powf(mu, (k - 1.0) / k))
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct UnuacolReport {
    pub k: f64,
    pub m: usize,
    pub mu_w: f64,
    pub sigma_w: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub sup_tau: f64,
    pub sup_tau_at: f64,
    /// `(∫|H|^k dμ_w)^{1/k}`, zero for a full-dimensional domain.
    pub h_k_norm: f64,
    pub slack: f64,
    pub pass: bool,
    pub curvature_relation: CurvatureRelation,
    pub hypothesis_verified: bool,
    pub verdict: Verdict,
}

/// The k-isoperimetric quotient against `(m / sup|τ_w|) μ_w^{1/k} − ‖H‖_k`.
pub fn unuacol_check(dom: &RadialGraphDomain, amb: &AmbientModel, k: f64) -> Result<UnuacolReport> {
    check_k(k)?;
    let sigma_w = dom.boundary_weighted_area(amb)?;
    let mu_w = dom.weighted_volume(amb)?;
    let (sup_tau, sup_tau_at) = dom.sup_tau(amb)?;
    let m = dom.dim();
    let lhs = sigma_w / math::powf(mu_w, (k - 1.0) / k);
    let h_k_norm = 0.0;
    let rhs = m as f64 / sup_tau * math::powf(mu_w, 1.0 / k) - h_k_norm;
    let slack = 1e-8 * (1.0 + rhs.abs());
    let (_, hi) = dom.radial_range()?;
    let relation = amb.curvature_relation(1e-3 * hi, hi)?;
    let hypothesis_verified = Expected::Le.admits(relation);
    let pass = lhs >= rhs - slack;
    Ok(UnuacolReport {
        k,
        m,
        mu_w,
        sigma_w,
        lhs,
        rhs,
        sup_tau,
        sup_tau_at,
        h_k_norm,
        slack,
        pass,
        curvature_relation: relation,
        hypothesis_verified,
        verdict: Verdict::from_parts(pass, hypothesis_verified),
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RadiusIsoReport {
    pub sigma_w: f64,
    pub mu_w: f64,
    pub lhs: f64,
    /// `sup_Σ |τ_w|` over the boundary samples.
    pub sup_tau: f64,
    pub sup_tau_at: f64,
    /// `1/(n sup|τ_w|)`.
    pub rhs: f64,
    /// `n/sup|τ_w|`, which the same argument also yields.
    pub sharp_rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub sharp_pass: bool,
}

/// `σ_w(∂Ω)/μ_w(Ω)` against the bounds given by `sup_∂Ω |τ_w|`.
pub fn radius_isoperimetric_check(dom: &RadialGraphDomain, amb: &AmbientModel) -> Result<RadiusIsoReport> {
    if amb.has_distinct_comparison() {
        return Err(Error::hypothesis(
            "the radius bound is stated for a model ambient with its own warp as comparison",
        ));
    }
    let sigma_w = dom.boundary_weighted_area(amb)?;
    let mu_w = dom.weighted_volume(amb)?;
    let (sup_tau, sup_tau_at) = dom.boundary_sup_tau(amb)?;
    let n = dom.dim() as f64;
    let lhs = sigma_w / mu_w;
    let rhs = 1.0 / (n * sup_tau);
    let sharp_rhs = n / sup_tau;
    let slack = 1e-8 * (1.0 + lhs.abs());
    Ok(RadiusIsoReport {
        sigma_w,
        mu_w,
        lhs,
        sup_tau,
        sup_tau_at,
        rhs,
        sharp_rhs,
        slack,
        pass: lhs >= rhs - slack,
        sharp_pass: lhs >= sharp_rhs - slack,
    })
}

/// Lower bound `(m v^{1/k}/R − ‖H‖_k) v^{(k−1)/k}` on the isoperimetric
/// profile at volume `v`, clamped at zero.
pub fn bola_profile_bound(m: usize, v: f64, radius: f64, k: f64, h_k_norm: f64) -> Result<f64> {
    check_k(k)?;
    let positive = |what: &'static str, x: f64| {
        if x > 0.0 && x.is_finite() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what,
                value: x,
                range: "(0, inf)".into(),
            })
        }
    };
    positive("volume", v)?;
    positive("extrinsic radius", radius)?;
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "m",
            value: 0.0,
            range: "m >= 1".into(),
        });
    }
    if !(h_k_norm >= 0.0 && h_k_norm.is_finite()) {
        return Err(Error::OutOfRange {
            what: "mean curvature k-norm",
            value: h_k_norm,
            range: "[0, inf)".into(),
        });
    }
    let bound = (m as f64 * math::powf(v, 1.0 / k) / radius - h_k_norm) * math::powf(v, (k - 1.0) / k);
    Ok(bound.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Preset;
    use crate::immersion::{ClosedCurve, ParamFn, Resolution, RevolutionSurface};
    use crate::math::PI;
    use crate::model::ModelSpace;

    fn ambient(dim: usize, p: Preset) -> AmbientModel {
        AmbientModel::new(ModelSpace::new(dim, p.warp().unwrap()).unwrap())
    }

    const PRESETS: [Preset; 4] = [
        Preset::Euclidean,
        Preset::Hyperbolic(-1.0),
        Preset::Spherical(1.0),
        Preset::Paraboloid,
    ];

    #[test]
    fn geodesic_balls_give_equality() {
        for dim in [2, 3] {
            for p in PRESETS {
                let amb = ambient(dim, p);
                let d = RadialGraphDomain::ball(dim, 0.8).unwrap();
                let rep = jellett_residual(Immersed::Domain(&d), &amb, Expected::Equal).unwrap();
                assert!(rep.pass && rep.verdict == Verdict::Pass, "{p:?} n={dim}: {rep:?}");
                assert!(rep.residual.abs() < 1e-10 * rep.boundary);
            }
        }
    }

    #[test]
    fn cross_model_disk() {
        let amb = ambient(2, Preset::Hyperbolic(-1.0)).with_comparison(Preset::Euclidean.warp().unwrap());
        let d = RadialGraphDomain::ball(2, 1.0).unwrap();
        let rep = jellett_residual(Immersed::Domain(&d), &amb, Expected::Le).unwrap();
        let lhs = 2.0 * rep.mu_w;
        assert!((lhs - 4.0 * PI * (math::cosh(1.0) - 1.0)).abs() < 1e-10);
        assert!((rep.boundary - 2.0 * PI * math::sinh(1.0)).abs() < 1e-10);
        assert_eq!(rep.curvature_relation, CurvatureRelation::AmbientBelow);
        assert!(rep.residual < 0.0 && rep.verdict == Verdict::Pass);

        let wrong = jellett_residual(Immersed::Domain(&d), &amb, Expected::Ge).unwrap();
        assert_eq!(wrong.verdict, Verdict::HypothesisNotVerified);
    }

    #[test]
    fn swapped_cross_model_disk() {
        let amb = ambient(2, Preset::Euclidean).with_comparison(Preset::Hyperbolic(-1.0).warp().unwrap());
        let d = RadialGraphDomain::ball(2, 1.0).unwrap();
        let rep = jellett_residual(Immersed::Domain(&d), &amb, Expected::Ge).unwrap();
        assert!((rep.mu_w - 2.0 * PI * (1.0 - (-1.0f64).exp())).abs() < 1e-10);
        assert!(rep.residual > 0.0 && rep.verdict == Verdict::Pass);
    }

    #[test]
    fn unit_circle_minkowski() {
        let amb = ambient(2, Preset::Euclidean);
        let c = ClosedCurve::circle(1.0, 64).unwrap();
        let rep = jellett_residual(Immersed::Closed(&c), &amb, Expected::Equal).unwrap();
        assert_eq!(rep.m, 1);
        assert!((rep.mu_w - 2.0 * PI).abs() < 1e-12);
        assert!((rep.tau_h + 2.0 * PI).abs() < 1e-12);
        assert!(rep.residual.abs() < 1e-10);
    }

    #[test]
    fn hyperbolic_sphere_cmc() {
        let amb = ambient(3, Preset::Hyperbolic(-1.0));
        let s = RevolutionSurface::sphere(1.0, 64).unwrap();
        let d = RadialGraphDomain::ball(3, 1.0).unwrap();
        let rep = cmc_check(&s, Some(&d), &amb).unwrap();
        let expected = 2.0 / math::tanh(1.0);
        assert!((rep.h_mean - expected).abs() < 1e-12);
        assert!((rep.jellett_h.unwrap() - expected).abs() < 1e-10);
        assert_eq!(rep.verdict, CmcVerdict::Match);
    }

    #[test]
    fn euclidean_circle_cmc() {
        let amb = ambient(2, Preset::Euclidean);
        let c = ClosedCurve::circle(2.0, 64).unwrap();
        let d = RadialGraphDomain::ball(2, 2.0).unwrap();
        let rep = cmc_check(&c, Some(&d), &amb).unwrap();
        assert!((rep.h_mean - 0.5).abs() < 1e-14);
        assert!((rep.jellett_h.unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn torus_is_not_cmc() {
        let amb = ambient(3, Preset::Euclidean);
        let t = RevolutionSurface::euclidean_torus(3.0, 1.0, 128).unwrap();
        let rep = cmc_check(&t, None, &amb).unwrap();
        assert_eq!(rep.verdict, CmcVerdict::NoDomain);
        assert!(rep.h_stddev > CMC_GATE * rep.h_mean);
        assert!(rep.pass());
    }

    #[test]
    fn heintze_karcher_on_spheres() {
        let amb = ambient(3, Preset::Euclidean);
        let s = RevolutionSurface::sphere(1.0, 64).unwrap();
        let d = RadialGraphDomain::ball(3, 1.0).unwrap();
        let rep = hk_functional(&s, &d, &amb).unwrap();
        assert!((rep.lhs - 4.0 * PI).abs() < 1e-10);
        assert!((rep.rhs - 4.0 * PI).abs() < 1e-10);
        assert!(rep.equality && rep.verdict == Verdict::Pass);
    }

    #[test]
    fn heintze_karcher_is_strict_on_a_perturbed_graph() {
        let amb = ambient(3, Preset::Hyperbolic(-1.0));
        let rho = ParamFn::parse("1 + 0.2*cos(2*phi)", "phi").unwrap();
        let d = RadialGraphDomain::new(3, rho, Resolution::default()).unwrap();
        let b = d.boundary().unwrap();
        let rep = hk_functional(b.as_hypersurface(), &d, &amb).unwrap();
        assert!(rep.lhs > rep.rhs + 1e-3, "{rep:?}");
        assert!(!rep.equality && rep.verdict == Verdict::Pass);
    }

    #[test]
    fn k_isoperimetric_disk() {
        let amb = ambient(2, Preset::Euclidean);
        let d = RadialGraphDomain::ball(2, 1.0).unwrap();
        let q = k_iso_quotient(&d, &amb, 2.0).unwrap();
        assert!((q - 2.0 * PI.sqrt()).abs() < 1e-12);
        let rep = unuacol_check(&d, &amb, 2.0).unwrap();
        assert!((rep.rhs - 2.0 * PI.sqrt()).abs() < 1e-12 && rep.pass);
        let rep = unuacol_check(&d, &amb, 3.0).unwrap();
        assert!((rep.lhs - 2.0 * PI.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((rep.lhs - rep.rhs).abs() < 1e-12 && rep.pass);
    }

    #[test]
    fn radius_bound_on_hyperbolic_ball() {
        let amb = ambient(2, Preset::Hyperbolic(-1.0));
        let d = RadialGraphDomain::ball(2, 1.0).unwrap();
        let rep = radius_isoperimetric_check(&d, &amb).unwrap();
        assert!(rep.pass && rep.sharp_pass);
        assert!((rep.sup_tau - math::tanh(1.0)).abs() < 1e-14);
    }

    #[test]
    fn bola_values() {
        assert_eq!(bola_profile_bound(2, 1.0, 1.0, 2.0, 0.0).unwrap(), 2.0);
        assert_eq!(bola_profile_bound(2, 1.0, 2.0, 2.0, 1.0).unwrap(), 0.0);
        assert!((bola_profile_bound(3, 8.0, 1.0, 3.0, 0.0).unwrap() - 24.0).abs() < 1e-12);
        assert!(bola_profile_bound(2, 1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn hk_rejects_saddle_shapes() {
        let amb = ambient(3, Preset::Euclidean);
        let t = RevolutionSurface::euclidean_torus(2.0, 1.0, 64).unwrap();
        let d = RadialGraphDomain::ball(3, 1.0).unwrap();
        assert!(matches!(hk_functional(&t, &d, &amb), Err(Error::Hypothesis(_))));
    }
}
