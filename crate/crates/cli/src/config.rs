//! On-disk formats for scenarios, intrinsics and transmitters.
//!
//! Every key carries its unit (`_m` for meters, `_um` for micrometers).

use std::fs;
use std::path::Path;

use serde::Deserialize;
use vlp_mono::{
    default_features, CameraIntrinsics, Feature, FeatureSet, Method, NoiseModel, RoomConfig,
    ScenarioConfig, Shape, TransmitterModel, WorldPoint,
};

use crate::error::{CliError, CliResult};

/// Scenario shipped with the binary; used when `--config` is omitted.
pub const REFERENCE_SCENARIO: &str = include_str!("../configs/reference.toml");

fn defaults() -> CameraIntrinsics {
    CameraIntrinsics::default()
}
fn default_fx() -> f64 {
    defaults().fx
}
fn default_fy() -> f64 {
    defaults().fy
}
fn default_cx() -> f64 {
    defaults().cx
}
fn default_cy() -> f64 {
    defaults().cy
}
fn default_pitch() -> f64 {
    defaults().pixel_pitch
}

/// Camera calibration; missing keys fall back to the reference camera.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntrinsicsFile {
    #[serde(default = "default_fx")]
    pub fx_um: f64,
    #[serde(default = "default_fy")]
    pub fy_um: f64,
    #[serde(default = "default_cx")]
    pub cx_um: f64,
    #[serde(default = "default_cy")]
    pub cy_um: f64,
    #[serde(default = "default_pitch")]
    pub pixel_pitch_um: f64,
}

impl Default for IntrinsicsFile {
    fn default() -> Self {
        let k = defaults();
        Self {
            fx_um: k.fx,
            fy_um: k.fy,
            cx_um: k.cx,
            cy_um: k.cy,
            pixel_pitch_um: k.pixel_pitch,
        }
    }
}

impl IntrinsicsFile {
    pub fn into_intrinsics(self) -> vlp_mono::Result<CameraIntrinsics> {
        CameraIntrinsics::new(
            self.fx_um,
            self.fy_um,
            self.cx_um,
            self.cy_um,
            self.pixel_pitch_um,
        )
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum ShapeSpec {
    Rectangle { width_x_m: f64, length_y_m: f64 },
    Circle { diameter_m: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureSpec {
    pub label: String,
    pub position_m: [f64; 3],
}

/// A luminaire, optionally with explicit anchor points.
#[derive(Debug, Clone, Deserialize)]
pub struct TransmitterSpec {
    pub id: String,
    pub center_m: [f64; 3],
    #[serde(flatten)]
    pub shape: ShapeSpec,
    #[serde(default)]
    pub features: Option<Vec<FeatureSpec>>,
}

impl TransmitterSpec {
    pub fn to_model(&self) -> vlp_mono::Result<TransmitterModel> {
        let [x, y, z] = self.center_m;
        let shape = match self.shape {
            ShapeSpec::Rectangle {
                width_x_m,
                length_y_m,
            } => Shape::Rectangle {
                width_x: width_x_m,
                length_y: length_y_m,
            },
            ShapeSpec::Circle { diameter_m } => Shape::Circle {
                diameter: diameter_m,
            },
        };
        TransmitterModel::new(self.id.clone(), WorldPoint::new(x, y, z), shape)
    }

    /// Explicit anchors when given, otherwise the default corner/rim choice.
    pub fn feature_set(&self) -> vlp_mono::Result<FeatureSet> {
        let model = self.to_model()?;
        match &self.features {
            None => default_features(&model),
            Some(list) => FeatureSet::new(
                list.iter()
                    .map(|f| {
                        let [x, y, z] = f.position_m;
                        Feature::new(f.label.clone(), WorldPoint::new(x, y, z))
                    })
                    .collect(),
            ),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoomSpec {
    pub width_x_m: f64,
    pub length_y_m: f64,
    pub height_m: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub receiver_height_m: f64,
    pub min_m: f64,
    pub max_m: f64,
    pub step_m: f64,
    pub trials_per_point: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum NoiseSpec {
    None,
    Gaussian { sigma_um: f64 },
    Quantize { pitch_um: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenario_id: String,
    pub seed: u64,
    #[serde(default = "default_method")]
    pub method: String,
    pub room: RoomSpec,
    pub transmitter: TransmitterSpec,
    #[serde(default)]
    pub camera: IntrinsicsFile,
    pub grid: GridSpec,
    pub noise: NoiseSpec,
}

fn default_method() -> String {
    Method::default().as_str().to_string()
}

impl ScenarioFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Builds and validates the scenario.
    pub fn into_scenario(self) -> CliResult<ScenarioConfig> {
        let cfg_err = |e: vlp_mono::Error| CliError::Config(e.to_string());
        let method: Method = self.method.parse().map_err(CliError::Config)?;
        let noise = match self.noise {
            NoiseSpec::None => NoiseModel::None,
            NoiseSpec::Gaussian { sigma_um } => NoiseModel::Gaussian { sigma: sigma_um },
            NoiseSpec::Quantize { pitch_um } => NoiseModel::Quantize { pitch: pitch_um },
        };
        if self.transmitter.features.is_some() {
            return Err(CliError::Config(
                "scenarios use the default anchors; remove transmitter.features".into(),
            ));
        }
        let cfg = ScenarioConfig {
            scenario_id: self.scenario_id,
            room: RoomConfig {
                width_x: self.room.width_x_m,
                length_y: self.room.length_y_m,
                height: self.room.height_m,
            },
            transmitter: self.transmitter.to_model().map_err(cfg_err)?,
            intrinsics: self.camera.into_intrinsics().map_err(cfg_err)?,
            receiver_height: self.grid.receiver_height_m,
            grid_min: self.grid.min_m,
            grid_max: self.grid.max_m,
            grid_step: self.grid.step_m,
            noise,
            trials_per_point: self.grid.trials_per_point,
            seed: self.seed,
            method,
        };
        cfg.validate().map_err(cfg_err)?;
        Ok(cfg)
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load_intrinsics(path: &Path) -> CliResult<CameraIntrinsics> {
    let file: IntrinsicsFile = toml::from_str(&read_text(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    file.into_intrinsics()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_transmitter(path: &Path) -> CliResult<TransmitterSpec> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
