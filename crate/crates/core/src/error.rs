use thiserror::Error;

/// Errors raised by the geometry, projection, localization and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),

    #[error("invalid room dimensions: {0}")]
    InvalidRoom(String),

    #[error("invalid transmitter shape: {0}")]
    InvalidShape(String),

    #[error("transmitter '{id}' footprint leaves the ceiling rectangle")]
    FootprintOutsideCeiling { id: String },

    #[error("transmitter '{id}' is at z = {z} m but the ceiling is at {height} m")]
    TransmitterOffCeiling { id: String, z: f64, height: f64 },

    #[error("degenerate virtual-point grid {nx}x{ny}; need at least 2x2")]
    DegenerateGrid { nx: usize, ny: usize },

    #[error("need at least {need} features, got {have}")]
    TooFewFeatures { need: usize, have: usize },

    #[error("features '{0}' and '{1}' coincide")]
    CoincidentFeatures(String, String),

    #[error("first three features are collinear (triangle area {area:e} m^2)")]
    CollinearFeatures { area: f64 },

    #[error("feature '{label}' is off the transmitter plane (z = {z}, plane = {plane})")]
    FeatureOffPlane { label: String, z: f64, plane: f64 },

    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),

    #[error("invalid camera intrinsics: {0}")]
    InvalidIntrinsics(String),

    #[error("invalid noise model: {0}")]
    InvalidNoise(String),

    #[error("point is not in front of the camera (dz = {dz} m)")]
    BehindCamera { dz: f64 },

    #[error("need at least {need} matched observations, got {have}")]
    TooFewObservations { need: usize, have: usize },

    #[error("observation label '{0}' has no matching feature")]
    UnmatchedLabel(String),

    #[error("image points '{0}' and '{1}' coincide")]
    CoincidentImagePoints(String, String),

    #[error("depth scale {depth} m is outside (0, {max}) m")]
    DepthScaleOutOfBounds { depth: f64, max: f64 },

    #[error("sphere center is off the plane z = {plane} (z = {z})")]
    CenterOffPlane { z: f64, plane: f64 },

    #[error("sphere radius must be positive, got {0}")]
    InvalidRadius(f64),

    #[error("sphere centers are collinear (determinant {det:e} m^2)")]
    CollinearCenters { det: f64 },

    #[error("least squares did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("no estimates to summarize")]
    EmptyEstimates,

    #[error("empirical CDF needs at least one value")]
    EmptyCdf,

    #[error("empirical CDF value {0} is negative or non-finite")]
    InvalidCdfValue(f64),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

impl Error {
    /// Short stable identifier, used as the `status` column of trial tables.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite(_) => "non_finite",
            Error::InvalidRoom(_) => "invalid_room",
            Error::InvalidShape(_) => "invalid_shape",
            Error::FootprintOutsideCeiling { .. } => "footprint_outside_ceiling",
            Error::TransmitterOffCeiling { .. } => "transmitter_off_ceiling",
            Error::DegenerateGrid { .. } => "degenerate_grid",
            Error::TooFewFeatures { .. } => "too_few_features",
            Error::CoincidentFeatures(..) => "coincident_features",
            Error::CollinearFeatures { .. } => "collinear_features",
            Error::FeatureOffPlane { .. } => "feature_off_plane",
            Error::DuplicateLabel(_) => "duplicate_label",
            Error::InvalidIntrinsics(_) => "invalid_intrinsics",
            Error::InvalidNoise(_) => "invalid_noise",
            Error::BehindCamera { .. } => "behind_camera",
            Error::TooFewObservations { .. } => "too_few_observations",
            Error::UnmatchedLabel(_) => "unmatched_label",
            Error::CoincidentImagePoints(..) => "coincident_image_points",
            Error::DepthScaleOutOfBounds { .. } => "depth_scale_out_of_bounds",
            Error::CenterOffPlane { .. } => "center_off_plane",
            Error::InvalidRadius(_) => "invalid_radius",
            Error::CollinearCenters { .. } => "collinear_centers",
            Error::NoConvergence { .. } => "no_convergence",
            Error::EmptyEstimates => "empty_estimates",
            Error::EmptyCdf => "empty_cdf",
            Error::InvalidCdfValue(_) => "invalid_cdf_value",
            Error::InvalidScenario(_) => "invalid_scenario",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
