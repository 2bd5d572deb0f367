//! Camera position from one shaped luminaire.
//!
//! The pipeline is:
//!
//! 1. recover the depth scale `L` (camera-to-ceiling distance) from the ratio
//!    of known feature separations to their image separations,
//! 2. turn each image distance `d_a` into a world range `d_A = d_a · L / f`
//!    by similar triangles,
//! 3. intersect the range spheres on the slice `Z = H − L`, either in closed
//!    form from three anchors or by least squares over all of them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{triangle_area_xy, Feature, FeatureSet, WorldPoint, PLANE_TOLERANCE_M};
use crate::projection::{image_distance, CameraIntrinsics, ImagePoint};

/// Image points closer than this (µm) are treated as the same point.
pub const MIN_IMAGE_SEPARATION_UM: f64 = 1e-9;

/// Below this |det| (m²) three sphere centers count as collinear.
pub const COLLINEAR_DET_M2: f64 = 1e-12;

/// Depth scales at or beyond `H + MAX_DEPTH_MARGIN_M` are rejected.
pub const MAX_DEPTH_MARGIN_M: f64 = 10.0;

/// Least-squares stops once an (X, Y) update is shorter than this, meters.
pub const LSQ_STEP_TOLERANCE_M: f64 = 1e-10;

pub const LSQ_MAX_ITERATIONS: usize = 100;

/// Gauss-Newton steps shorter than this are taken without a line search, meters.
const LSQ_LINE_SEARCH_MIN_STEP_M: f64 = 1e-6;

/// One measured feature in the image.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub label: String,
    pub point: ImagePoint,
}

impl Observation {
    pub fn new(label: impl Into<String>, point: ImagePoint) -> Self {
        Self {
            label: label.into(),
            point,
        }
    }
}

/// Range constraint `‖X − center‖ = radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereConstraint {
    pub center: WorldPoint,
    pub radius: f64,
}

impl SphereConstraint {
    pub fn new(center: WorldPoint, radius: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::NonFinite("sphere center"));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Self { center, radius })
    }

    /// Signed range residual of `p`.
    pub fn residual(&self, p: &WorldPoint) -> f64 {
        p.distance(&self.center) - self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationResult {
    pub position: WorldPoint,
    /// Camera-to-ceiling distance, meters.
    pub depth_scale: f64,
    /// RMS range residual over the anchors used by the solver, meters.
    pub residual_rms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Method {
    #[default]
    Trilaterate,
    LeastSquares,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Trilaterate => "tri",
            Method::LeastSquares => "lsq",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "tri" | "trilaterate" => Ok(Method::Trilaterate),
            "lsq" | "least_squares" => Ok(Method::LeastSquares),
            other => Err(format!("unknown method '{other}', expected 'tri' or 'lsq'")),
        }
    }
}

/// Pairs each observation with its feature, in feature-set order.
fn match_observations<'a>(
    obs: &'a [Observation],
    features: &'a FeatureSet,
) -> Result<Vec<(&'a Feature, ImagePoint)>> {
    for (i, o) in obs.iter().enumerate() {
        if !o.point.is_finite() {
            return Err(Error::NonFinite("observation"));
        }
        if obs[..i].iter().any(|p| p.label == o.label) {
            return Err(Error::DuplicateLabel(o.label.clone()));
        }
        if features.get(&o.label).is_none() {
            return Err(Error::UnmatchedLabel(o.label.clone()));
        }
    }
    Ok(features
        .iter()
        .filter_map(|f| {
            obs.iter()
                .find(|o| o.label == f.label)
                .map(|o| (f, o.point))
        })
        .collect())
}

fn depth_scale_from_matches(
    matched: &[(&Feature, ImagePoint)],
    k: &CameraIntrinsics,
) -> Result<f64> {
    if matched.len() < 2 {
        return Err(Error::TooFewObservations {
            need: 2,
            have: matched.len(),
        });
    }
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for (i, (fa, pa)) in matched.iter().enumerate() {
        let ia = k.to_isotropic(*pa);
        for (fb, pb) in &matched[i + 1..] {
            let sep = ia.distance(&k.to_isotropic(*pb));
            if sep < MIN_IMAGE_SEPARATION_UM {
                return Err(Error::CoincidentImagePoints(
                    fa.label.clone(),
                    fb.label.clone(),
                ));
            }
            sum += fa.point.planar_distance(&fb.point) / sep;
            pairs += 1;
        }
    }
    Ok(k.mean_focal() * sum / pairs as f64)
}

/// Recovers the camera-to-ceiling distance `L` from the luminaire's known size.
///
/// Averages `f · world_separation / image_separation` over every pair of
/// matched features. Noiseless observations give exactly `H − z_camera`.
pub fn estimate_depth_scale(
    obs: &[Observation],
    features: &FeatureSet,
    k: &CameraIntrinsics,
) -> Result<f64> {
    k.validate()?;
    let matched = match_observations(obs, features)?;
    depth_scale_from_matches(&matched, k)
}

/// World range `d_A = d_a · L / f` to a feature seen at image distance `d_a`.
pub fn feature_distance(d_a: f64, depth_scale: f64, k: &CameraIntrinsics) -> Result<f64> {
    if !(depth_scale.is_finite() && depth_scale > 0.0) {
        return Err(Error::DepthScaleOutOfBounds {
            depth: depth_scale,
            max: f64::INFINITY,
        });
    }
    Ok(d_a * depth_scale / k.mean_focal())
}

fn check_depth(height: f64, depth_scale: f64) -> Result<()> {
    let max = height + MAX_DEPTH_MARGIN_M;
    if !(depth_scale.is_finite() && depth_scale > 0.0 && depth_scale < max) {
        return Err(Error::DepthScaleOutOfBounds {
            depth: depth_scale,
            max,
        });
    }
    Ok(())
}

fn check_on_plane(spheres: &[SphereConstraint], height: f64) -> Result<()> {
    for s in spheres {
        if (s.center.z - height).abs() > PLANE_TOLERANCE_M {
            return Err(Error::CenterOffPlane {
                z: s.center.z,
                plane: height,
            });
        }
    }
    Ok(())
}

fn cross_xy(a: &WorldPoint, b: &WorldPoint, origin: &WorldPoint) -> f64 {
    (a.x - origin.x) * (b.y - origin.y) - (b.x - origin.x) * (a.y - origin.y)
}

/// Closed-form position from three range spheres whose centers lie on `z = H`.
///
/// `Z` is fixed to `H − L`; subtracting the sphere equations pairwise (A−B,
/// A−C) leaves a 2×2 linear system in `X` and `Y`.
pub fn trilaterate_planar(
    a: &SphereConstraint,
    b: &SphereConstraint,
    c: &SphereConstraint,
    height: f64,
    depth_scale: f64,
) -> Result<WorldPoint> {
    check_depth(height, depth_scale)?;
    check_on_plane(&[*a, *b, *c], height)?;

    // coordinates relative to A keep the right-hand side well scaled
    let (bx, by) = (b.center.x - a.center.x, b.center.y - a.center.y);
    let (cx, cy) = (c.center.x - a.center.x, c.center.y - a.center.y);
    let det = bx * cy - cx * by;
    if det.abs() < COLLINEAR_DET_M2 {
        return Err(Error::CollinearCenters { det });
    }
    let ra2 = a.radius * a.radius;
    let rhs_b = 0.5 * (ra2 - b.radius * b.radius + bx * bx + by * by);
    let rhs_c = 0.5 * (ra2 - c.radius * c.radius + cx * cx + cy * cy);
    let x = (rhs_b * cy - rhs_c * by) / det;
    let y = (bx * rhs_c - cx * rhs_b) / det;
    Ok(WorldPoint::new(
        a.center.x + x,
        a.center.y + y,
        height - depth_scale,
    ))
}

fn sum_sq_residuals(spheres: &[SphereConstraint], p: &WorldPoint) -> f64 {
    spheres.iter().map(|s| s.residual(p).powi(2)).sum()
}

/// Linearized (subtracted-pairs) normal-equations solution on `Z = H − L`.
fn linear_seed(spheres: &[SphereConstraint], height: f64, depth_scale: f64) -> Result<WorldPoint> {
    let origin = spheres[0];
    let r0 = origin.radius * origin.radius;
    let (mut sxx, mut sxy, mut syy, mut tx, mut ty) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for s in &spheres[1..] {
        let dx = s.center.x - origin.center.x;
        let dy = s.center.y - origin.center.y;
        let rhs = 0.5 * (r0 - s.radius * s.radius + dx * dx + dy * dy);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
        tx += dx * rhs;
        ty += dy * rhs;
    }
    let det = sxx * syy - sxy * sxy;
    if det.abs() < COLLINEAR_DET_M2 * COLLINEAR_DET_M2 {
        return Err(Error::CollinearCenters { det });
    }
    Ok(WorldPoint::new(
        origin.center.x + (syy * tx - sxy * ty) / det,
        origin.center.y + (sxx * ty - sxy * tx) / det,
        height - depth_scale,
    ))
}

/// Least-squares position from three or more range spheres on `z = H`.
///
/// With `Z = H − L` held fixed, minimizes `Σ (‖p − cᵢ‖ − rᵢ)²` over `(X, Y)`
/// by Gauss-Newton, started from the linearized solution. Long steps are
/// halved until the objective does not increase.
pub fn least_squares_multilaterate(
    spheres: &[SphereConstraint],
    height: f64,
    depth_scale: f64,
) -> Result<WorldPoint> {
    if spheres.len() < 3 {
        return Err(Error::TooFewFeatures {
            need: 3,
            have: spheres.len(),
        });
    }
    check_depth(height, depth_scale)?;
    check_on_plane(spheres, height)?;

    let o = spheres[0].center;
    let max_cross = spheres
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            spheres[i + 1..]
                .iter()
                .map(move |b| cross_xy(&a.center, &b.center, &o).abs())
        })
        .fold(0.0_f64, f64::max);
    if max_cross < COLLINEAR_DET_M2 {
        return Err(Error::CollinearCenters { det: max_cross });
    }

    let mut p = linear_seed(spheres, height, depth_scale)?;
    let mut cost = sum_sq_residuals(spheres, &p);
    for _ in 0..LSQ_MAX_ITERATIONS {
        let (mut jxx, mut jxy, mut jyy, mut gx, mut gy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for s in spheres {
            let d = p.distance(&s.center);
            let (ux, uy) = ((p.x - s.center.x) / d, (p.y - s.center.y) / d);
            let r = d - s.radius;
            jxx += ux * ux;
            jxy += ux * uy;
            jyy += uy * uy;
            gx += ux * r;
            gy += uy * r;
        }
        let det = jxx * jyy - jxy * jxy;
        if !(det.is_finite() && det > 0.0) {
            return Err(Error::CollinearCenters { det });
        }
        let mut step_x = -(jyy * gx - jxy * gy) / det;
        let mut step_y = -(jxx * gy - jxy * gx) / det;

        // Near the minimum the cost change of a step drops below the rounding
        // noise of the cost itself, so only large steps are line-searched.
        if step_x.hypot(step_y) >= LSQ_LINE_SEARCH_MIN_STEP_M {
            let mut halvings = 0;
            loop {
                let trial = WorldPoint::new(p.x + step_x, p.y + step_y, p.z);
                if sum_sq_residuals(spheres, &trial) <= cost {
                    break;
                }
                halvings += 1;
                if halvings > 40 {
                    return Err(Error::NoConvergence {
                        iterations: LSQ_MAX_ITERATIONS,
                    });
                }
                step_x *= 0.5;
                step_y *= 0.5;
            }
        }
        p = WorldPoint::new(p.x + step_x, p.y + step_y, p.z);
        cost = sum_sq_residuals(spheres, &p);
        if step_x.hypot(step_y) < LSQ_STEP_TOLERANCE_M {
            return Ok(p);
        }
    }
    Err(Error::NoConvergence {
        iterations: LSQ_MAX_ITERATIONS,
    })
}

/// Picks the three matched anchors spanning the largest triangle, earliest first on ties.
fn best_triple(spheres: &[SphereConstraint]) -> [usize; 3] {
    let n = spheres.len();
    let mut best = ([0, 1, 2], -1.0);
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let area =
                    triangle_area_xy(&spheres[i].center, &spheres[j].center, &spheres[l].center);
                if area > best.1 {
                    best = ([i, j, l], area);
                }
            }
        }
    }
    best.0
}

/// Full pipeline from one snapshot to a camera position.
///
/// `height` is the ceiling plane carrying the features. At least three
/// observations must match feature labels.
pub fn localize(
    obs: &[Observation],
    features: &FeatureSet,
    k: &CameraIntrinsics,
    height: f64,
    method: Method,
) -> Result<LocalizationResult> {
    k.validate()?;
    let matched = match_observations(obs, features)?;
    if matched.len() < 3 {
        return Err(Error::TooFewObservations {
            need: 3,
            have: matched.len(),
        });
    }
    let depth_scale = depth_scale_from_matches(&matched, k)?;
    check_depth(height, depth_scale)?;

    let spheres = matched
        .iter()
        .map(|(f, a)| {
            let range = feature_distance(image_distance(a, k), depth_scale, k)?;
            SphereConstraint::new(f.point, range)
        })
        .collect::<Result<Vec<_>>>()?;

    let (position, used): (WorldPoint, Vec<SphereConstraint>) = match method {
        Method::Trilaterate => {
            let [i, j, l] = best_triple(&spheres);
            let used = vec![spheres[i], spheres[j], spheres[l]];
            let p = trilaterate_planar(&used[0], &used[1], &used[2], height, depth_scale)?;
            (p, used)
        }
        Method::LeastSquares => {
            let p = least_squares_multilaterate(&spheres, height, depth_scale)?;
            (p, spheres)
        }
    };
    let residual_rms = (sum_sq_residuals(&used, &position) / used.len() as f64).sqrt();
    Ok(LocalizationResult {
        position,
        depth_scale,
        residual_rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{default_features, TransmitterModel};
    use crate::projection::project;

    fn sphere(x: f64, y: f64, z: f64, truth: &WorldPoint) -> SphereConstraint {
        let c = WorldPoint::new(x, y, z);
        SphereConstraint::new(c, c.distance(truth)).unwrap()
    }

    fn observe(cam: &WorldPoint, k: &CameraIntrinsics, fs: &FeatureSet) -> Vec<Observation> {
        fs.iter()
            .map(|f| Observation::new(f.label.clone(), project(cam, k, &f.point).unwrap()))
            .collect()
    }

    fn reference() -> (FeatureSet, CameraIntrinsics) {
        (
            default_features(&TransmitterModel::reference()).unwrap(),
            CameraIntrinsics::default(),
        )
    }

    #[test]
    fn depth_scale_from_two_features() {
        let (fs, k) = reference();
        let cam = WorldPoint::new(1.5, 1.5, 2.0);
        let obs: Vec<_> = observe(&cam, &k, &fs).into_iter().take(2).collect();
        let l = estimate_depth_scale(&obs, &fs, &k).unwrap();
        assert!((l - 3.0).abs() < 1e-12, "{l}");
    }

    #[test]
    fn depth_scale_is_invariant_to_image_units() {
        let (fs, k) = reference();
        let cam = WorldPoint::new(0.7, 2.1, 1.3);
        let obs = observe(&cam, &k, &fs);
        let s = 3.7;
        let k2 = CameraIntrinsics {
            fx: k.fx * s,
            fy: k.fy * s,
            ..k
        };
        let obs2: Vec<_> = obs
            .iter()
            .map(|o| {
                Observation::new(
                    o.label.clone(),
                    ImagePoint::new(o.point.u * s, o.point.v * s),
                )
            })
            .collect();
        let l1 = estimate_depth_scale(&obs, &fs, &k).unwrap();
        let l2 = estimate_depth_scale(&obs2, &fs, &k2).unwrap();
        assert!((l1 - l2).abs() < 1e-12);
    }

    #[test]
    fn depth_scale_errors() {
        let (fs, k) = reference();
        let one = vec![Observation::new("A", ImagePoint::new(1.0, 2.0))];
        assert_eq!(
            estimate_depth_scale(&one, &fs, &k),
            Err(Error::TooFewObservations { need: 2, have: 1 })
        );
        let same = vec![
            Observation::new("A", ImagePoint::new(1.0, 2.0)),
            Observation::new("B", ImagePoint::new(1.0, 2.0)),
        ];
        assert!(matches!(
            estimate_depth_scale(&same, &fs, &k),
            Err(Error::CoincidentImagePoints(..))
        ));
        let stray = vec![
            Observation::new("A", ImagePoint::new(1.0, 2.0)),
            Observation::new("Z", ImagePoint::new(5.0, 2.0)),
        ];
        assert_eq!(
            estimate_depth_scale(&stray, &fs, &k),
            Err(Error::UnmatchedLabel("Z".into()))
        );
    }

    #[test]
    fn feature_distance_on_axis_equals_depth() {
        let k = CameraIntrinsics::default();
        let d = feature_distance(k.mean_focal(), 3.0, &k).unwrap();
        assert!((d - 3.0).abs() < 1e-15);
        assert!(feature_distance(k.mean_focal(), 0.0, &k).is_err());
        assert!(feature_distance(k.mean_focal(), -1.0, &k).is_err());
    }

    #[test]
    fn feature_distance_matches_euclidean_range() {
        let k = CameraIntrinsics::default();
        assert!((k.mean_focal() - 4005.146816).abs() < 1e-5);
        let cam = WorldPoint::new(1.5, 1.5, 2.0);
        let a = WorldPoint::new(1.0, 1.0, 5.0);
        let d_a = image_distance(&project(&cam, &k, &a).unwrap(), &k);
        let d = feature_distance(d_a, 3.0, &k).unwrap();
        assert!((d - 9.5_f64.sqrt()).abs() < 1e-12);
        assert!((d - 3.082_207).abs() < 1e-6);
    }

    #[test]
    fn feature_distance_ratio_invariance() {
        let k = CameraIntrinsics::isotropic(4000.0).unwrap();
        let k2 = CameraIntrinsics::isotropic(8000.0).unwrap();
        let a = feature_distance(4200.0, 2.5, &k).unwrap();
        let b = feature_distance(8400.0, 2.5, &k2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn trilateration_recovers_constructed_point() {
        let truth = WorldPoint::new(1.5, 1.5, 2.0);
        let p = trilaterate_planar(
            &sphere(1.0, 1.0, 5.0, &truth),
            &sphere(2.0, 1.0, 5.0, &truth),
            &sphere(1.0, 2.0, 5.0, &truth),
            5.0,
            3.0,
        )
        .unwrap();
        assert!(p.distance(&truth) < 1e-12, "{p}");
        for s in [sphere(1.0, 1.0, 5.0, &truth), sphere(2.0, 1.0, 5.0, &truth)] {
            assert!((9.5_f64.sqrt() - s.radius).abs() < 1e-15);
        }
    }

    #[test]
    fn point_below_anchor_a() {
        let truth = WorldPoint::new(0.3, 2.2, 1.5);
        let a = sphere(0.3, 2.2, 4.0, &truth);
        assert!((a.radius - 2.5).abs() < 1e-15);
        let p = trilaterate_planar(
            &a,
            &sphere(2.9, 0.1, 4.0, &truth),
            &sphere(1.7, 2.9, 4.0, &truth),
            4.0,
            2.5,
        )
        .unwrap();
        assert!((p.x - 0.3).abs() < 1e-12 && (p.y - 2.2).abs() < 1e-12);
    }

    #[test]
    fn trilateration_errors() {
        let truth = WorldPoint::new(1.0, 0.0, 2.0);
        let s1 = sphere(1.0, 1.0, 5.0, &truth);
        let s2 = sphere(2.0, 2.0, 5.0, &truth);
        let s3 = sphere(3.0, 3.0, 5.0, &truth);
        assert!(matches!(
            trilaterate_planar(&s1, &s2, &s3, 5.0, 3.0),
            Err(Error::CollinearCenters { .. })
        ));
        let s4 = sphere(1.0, 2.0, 5.0, &truth);
        assert!(matches!(
            trilaterate_planar(&s1, &s2, &s4, 5.0, 0.0),
            Err(Error::DepthScaleOutOfBounds { .. })
        ));
        assert!(matches!(
            trilaterate_planar(&s1, &s2, &s4, 5.0, 15.0),
            Err(Error::DepthScaleOutOfBounds { .. })
        ));
        let off = sphere(1.0, 2.0, 4.5, &truth);
        assert!(matches!(
            trilaterate_planar(&s1, &s2, &off, 5.0, 3.0),
            Err(Error::CenterOffPlane { .. })
        ));
    }

    #[test]
    fn least_squares_matches_closed_form_on_three_spheres() {
        let truth = WorldPoint::new(0.4, 2.6, 1.2);
        let s = [
            sphere(1.0, 1.0, 5.0, &truth),
            sphere(2.0, 1.0, 5.0, &truth),
            sphere(1.0, 2.0, 5.0, &truth),
        ];
        let a = trilaterate_planar(&s[0], &s[1], &s[2], 5.0, 3.8).unwrap();
        let b = least_squares_multilaterate(&s, 5.0, 3.8).unwrap();
        assert!(a.distance(&b) < 1e-9);
    }

    #[test]
    fn least_squares_four_corners() {
        let truth = WorldPoint::new(0.5, 0.7, 2.0);
        let s: Vec<_> = [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (2.0, 2.0)]
            .iter()
            .map(|&(x, y)| sphere(x, y, 5.0, &truth))
            .collect();
        let p = least_squares_multilaterate(&s, 5.0, 3.0).unwrap();
        assert!(p.distance(&truth) < 1e-9, "{p}");
    }

    #[test]
    fn least_squares_errors() {
        let truth = WorldPoint::new(0.5, 0.7, 2.0);
        let two = [sphere(1.0, 1.0, 5.0, &truth), sphere(2.0, 1.0, 5.0, &truth)];
        assert!(matches!(
            least_squares_multilaterate(&two, 5.0, 3.0),
            Err(Error::TooFewFeatures { .. })
        ));
        let line: Vec<_> = (0..4)
            .map(|i| sphere(i as f64, i as f64, 5.0, &truth))
            .collect();
        assert!(matches!(
            least_squares_multilaterate(&line, 5.0, 3.0),
            Err(Error::CollinearCenters { .. })
        ));
    }

    #[test]
    fn localize_round_trip_center_and_corner() {
        let (fs, k) = reference();
        for cam in [
            WorldPoint::new(1.5, 1.5, 2.0),
            WorldPoint::new(0.2, 2.8, 1.0),
        ] {
            for method in [Method::Trilaterate, Method::LeastSquares] {
                let r = localize(&observe(&cam, &k, &fs), &fs, &k, 5.0, method).unwrap();
                assert!(r.position.distance(&cam) < 1e-6, "{method}: {}", r.position);
                assert!((r.depth_scale - (5.0 - cam.z)).abs() < 1e-9);
                assert!(r.residual_rms < 1e-9);
                assert!((r.position.z - (5.0 - r.depth_scale)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn localize_needs_three_features() {
        let (fs, k) = reference();
        let cam = WorldPoint::new(1.5, 1.5, 2.0);
        let obs: Vec<_> = observe(&cam, &k, &fs).into_iter().take(2).collect();
        assert_eq!(
            localize(&obs, &fs, &k, 5.0, Method::Trilaterate),
            Err(Error::TooFewObservations { need: 3, have: 2 })
        );
        let mut dup = observe(&cam, &k, &fs);
        dup[1].label = "A".into();
        assert!(matches!(
            localize(&dup, &fs, &k, 5.0, Method::Trilaterate),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn method_parsing() {
        assert_eq!("tri".parse::<Method>().unwrap(), Method::Trilaterate);
        assert_eq!("lsq".parse::<Method>().unwrap(), Method::LeastSquares);
        assert!("newton".parse::<Method>().is_err());
    }
}
