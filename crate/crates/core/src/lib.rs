//! Monocular visible-light positioning against a single shaped luminaire.
//!
//! A camera looking straight up at a ceiling luminaire of known position and
//! size can locate itself from one snapshot: the apparent size of the
//! luminaire fixes the camera's distance to the ceiling, similar triangles
//! turn image distances into ranges to a few anchor points on the luminaire,
//! and trilateration on the plane `Z = H − L` gives the position.
//!
//! ```
//! use vlp_mono::{
//!     default_features, localize, project, CameraIntrinsics, Method, Observation,
//!     TransmitterModel, WorldPoint,
//! };
//!
//! let led = TransmitterModel::reference();
//! let features = default_features(&led).unwrap();
//! let k = CameraIntrinsics::default();
//! let camera = WorldPoint::new(0.5, 2.0, 2.0);
//!
//! let obs: Vec<Observation> = features
//!     .iter()
//!     .map(|f| Observation::new(f.label.clone(), project(&camera, &k, &f.point).unwrap()))
//!     .collect();
//! let fix = localize(&obs, &features, &k, led.plane_height(), Method::Trilaterate).unwrap();
//! assert!(fix.position.distance(&camera) < 1e-9);
//! ```

pub mod error;
pub mod geometry;
pub mod localization;
pub mod projection;
pub mod simulation;

pub use error::{Error, Result};
pub use geometry::{
    default_features, virtual_point_grid, Feature, FeatureSet, RoomConfig, Shape, TransmitterModel,
    WorldPoint,
};
pub use localization::{
    estimate_depth_scale, feature_distance, least_squares_multilaterate, localize,
    trilaterate_planar, LocalizationResult, Method, Observation, SphereConstraint,
};
pub use projection::{
    apply_noise, back_project, image_distance, project, CameraIntrinsics, ImagePoint, NoiseModel,
};
pub use simulation::{
    build_cdf, compute_metrics, run_scenario, CdfSeries, ErrorStats, PointResult, ScenarioConfig,
    TrialOutcome,
};
