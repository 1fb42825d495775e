//! Radial curvature profiles.
//!
//! The standard profile is constant on `[0, r_join]` and equals the
//! two-parameter tail `-kappa + beta/r^2` beyond, continuous at the join
//! (which forces the inner constant to `-kappa + beta/r_join^2`) and
//! nonpositive everywhere, which requires `beta <= kappa * r_join^2`.
//! A tabulated piecewise-linear variant exists for oracle tests; it carries
//! no tail parameters and is rejected by tail-dependent operations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Which side of a comparison argument the profile plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// Lower bound `R(r)` for the radial Ricci curvature of a model space.
    ModelLowerBound,
    /// Radial sectional curvature `K(r)` of a rotationally symmetric target.
    RadialCurvature,
}

impl ProfileKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProfileKind::ModelLowerBound => "model_lower_bound",
            ProfileKind::RadialCurvature => "radial_curvature",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "model_lower_bound" => Ok(ProfileKind::ModelLowerBound),
            "radial_curvature" => Ok(ProfileKind::RadialCurvature),
            other => Err(Error::InvalidParameter(format!("unknown kind `{other}`"))),
        }
    }
}

/// Tail parameters of a standard profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailParams {
    /// Asymptotic curvature scale; the tail tends to `-kappa`.
    pub kappa: f64,
    /// Inverse-square coefficient of the tail.
    pub beta: f64,
    /// Join radius: the profile is constant on `[0, r_join]`.
    pub r_join: f64,
    /// Constant value on the inner region, `-kappa + beta/r_join^2`.
    pub inner_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Tail(TailParams),
    /// Piecewise-linear table `(r_i, value_i)` with `r_0 = 0`, extended as a
    /// constant beyond the last node.
    Custom(Vec<(f64, f64)>),
}

/// A continuous nonpositive radial curvature function on `[0, infinity)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    kind: ProfileKind,
    shape: Shape,
}

impl CurvatureProfile {
    /// Standard profile: constant `-kappa + beta/r_join^2` on `[0, r_join]`,
    /// tail `-kappa + beta/r^2` beyond.
    pub fn with_tail(kappa: f64, beta: f64, r_join: f64, kind: ProfileKind) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter(format!("kappa must be positive, got {kappa}")));
        }
        if !(r_join.is_finite() && r_join > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "r_join must be positive, got {r_join}"
            )));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must be nonnegative, got {beta}"
            )));
        }
        if beta > kappa * r_join * r_join {
            return Err(Error::InvalidParameter(format!(
                "beta = {beta} exceeds kappa * r_join^2 = {}; the profile would turn positive",
                kappa * r_join * r_join
            )));
        }
        let inner_value = -kappa + beta / (r_join * r_join);
        Ok(CurvatureProfile {
            kind,
            shape: Shape::Tail(TailParams { kappa, beta, r_join, inner_value }),
        })
    }

    /// Tabulated profile for oracle tests: piecewise-linear through `points`,
    /// which must start at `r = 0`, be strictly increasing in `r`, and stay
    /// nonpositive. Constant beyond the last node.
    pub fn custom(points: Vec<(f64, f64)>, kind: ProfileKind) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("custom profile needs at least one point".into()));
        }
        if points[0].0 != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "custom profile must start at r = 0, got r = {}",
                points[0].0
            )));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidParameter(
                    "custom profile radii must be strictly increasing".into(),
                ));
            }
        }
        for &(r, v) in &points {
            if !v.is_finite() || v > 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "custom profile value {v} at r = {r} is not nonpositive"
                )));
            }
        }
        Ok(CurvatureProfile { kind, shape: Shape::Custom(points) })
    }

    /// The identically-zero (flat) profile.
    pub fn flat(kind: ProfileKind) -> Self {
        CurvatureProfile {
            kind,
            shape: Shape::Custom(alloc::vec![(0.0, 0.0), (1.0, 0.0)]),
        }
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Tail parameters, if this is a standard profile.
    pub fn tail(&self) -> Option<&TailParams> {
        match &self.shape {
            Shape::Tail(t) => Some(t),
            Shape::Custom(_) => None,
        }
    }

    /// Tail parameters or the error used by tail-dependent operations.
    pub fn require_tail(&self, op: &'static str) -> Result<&TailParams> {
        self.tail().ok_or(Error::MissingTail(op))
    }

    /// Evaluate the profile at radius `r >= 0`.
    pub fn eval(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        match &self.shape {
            Shape::Tail(t) => {
                if r < t.r_join {
                    t.inner_value
                } else {
                    -t.kappa + t.beta / (r * r)
                }
            }
            Shape::Custom(pts) => {
                if r <= pts[0].0 {
                    return pts[0].1;
                }
                let last = pts.len() - 1;
                if r >= pts[last].0 {
                    return pts[last].1;
                }
                let i = pts.partition_point(|p| p.0 <= r) - 1;
                let (r0, v0) = pts[i];
                let (r1, v1) = pts[i + 1];
                v0 + (v1 - v0) * (r - r0) / (r1 - r0)
            }
        }
    }

    /// Value at the origin (the inner constant for standard profiles).
    pub fn value_at_origin(&self) -> f64 {
        self.eval(0.0)
    }

    /// Approximate slope at the origin; zero for standard profiles, a finite
    /// difference over `[0, dr]` for tabulated ones. Feeds the series seeds.
    pub(crate) fn origin_slope(&self, dr: f64) -> f64 {
        match &self.shape {
            Shape::Tail(_) => 0.0,
            Shape::Custom(_) => (self.eval(dr) - self.eval(0.0)) / dr,
        }
    }

    /// Interior breakpoints (kinks) in `(lo, hi)`, for integrators that want
    /// them on the grid.
    pub(crate) fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        match &self.shape {
            Shape::Tail(t) => {
                if t.r_join > lo && t.r_join < hi {
                    out.push(t.r_join);
                }
            }
            Shape::Custom(pts) => {
                for &(r, _) in pts {
                    if r > lo && r < hi {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    /// Serialize the standard profile as the flat `key = value` block used by
    /// the CLI config format.
    pub fn to_config_block(&self) -> Result<String> {
        let t = self.require_tail("to_config_block")?;
        Ok(format!(
            "kappa = {}\nbeta = {}\nr_join = {}\nkind = {}\n",
            t.kappa,
            t.beta,
            t.r_join,
            self.kind.as_str()
        ))
    }

    /// Parse a profile from the flat `key = value` block; the inverse of
    /// [`CurvatureProfile::to_config_block`].
    pub fn from_config_block(text: &str) -> Result<Self> {
        let mut kappa = None;
        let mut beta = None;
        let mut r_join = None;
        let mut kind = None;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected `key = value`: {line}")))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "kappa" => kappa = Some(parse_f64(key, value)?),
                "beta" => beta = Some(parse_f64(key, value)?),
                "r_join" => r_join = Some(parse_f64(key, value)?),
                "kind" => kind = Some(ProfileKind::parse(value)?),
                other => {
                    return Err(Error::InvalidParameter(format!("unknown profile key `{other}`")))
                }
            }
        }
        let missing = |name: &str| Error::InvalidParameter(format!("missing profile key `{name}`"));
        CurvatureProfile::with_tail(
            kappa.ok_or_else(|| missing("kappa"))?,
            beta.ok_or_else(|| missing("beta"))?,
            r_join.ok_or_else(|| missing("r_join"))?,
            kind.ok_or_else(|| missing("kind"))?,
        )
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::InvalidParameter(format!("`{key}` is not a number: {value}")))
}
