//! Monte Carlo evaluation over a grid of receiver positions.
//!
//! Every (grid point, trial) pair draws from its own ChaCha stream keyed by
//! the scenario seed, so results do not depend on scheduling or on the number
//! of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{default_features, FeatureSet, RoomConfig, TransmitterModel, WorldPoint};
use crate::localization::{localize, LocalizationResult, Method, Observation};
use crate::projection::{apply_noise, project, CameraIntrinsics, NoiseModel};

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario_id: String,
    pub room: RoomConfig,
    pub transmitter: TransmitterModel,
    pub intrinsics: CameraIntrinsics,
    pub receiver_height: f64,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_step: f64,
    pub noise: NoiseModel,
    pub trials_per_point: usize,
    pub seed: u64,
    pub method: Method,
}

impl Default for ScenarioConfig {
    /// 3 × 3 × 5 m room, 1 m square luminaire in the middle of the ceiling,
    /// receivers on a 7 × 7 grid at z = 2 m, 1 µm quantization.
    fn default() -> Self {
        Self {
            scenario_id: "reference".to_string(),
            room: RoomConfig {
                width_x: 3.0,
                length_y: 3.0,
                height: 5.0,
            },
            transmitter: TransmitterModel::reference(),
            intrinsics: CameraIntrinsics::default(),
            receiver_height: 2.0,
            grid_min: 0.0,
            grid_max: 3.0,
            grid_step: 0.5,
            noise: NoiseModel::Quantize { pitch: 1.0 },
            trials_per_point: 100,
            seed: 20_220_607,
            method: Method::Trilaterate,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        self.room.validate()?;
        self.transmitter.validate_in_room(&self.room)?;
        self.intrinsics.validate()?;
        self.noise.validate()?;
        if !(self.grid_step.is_finite() && self.grid_step > 0.0) {
            return bad(format!("grid_step must be > 0, got {}", self.grid_step));
        }
        if !(self.grid_min.is_finite()
            && self.grid_max.is_finite()
            && self.grid_min < self.grid_max)
        {
            return bad(format!(
                "grid_min ({}) must be below grid_max ({})",
                self.grid_min, self.grid_max
            ));
        }
        if self.trials_per_point == 0 {
            return bad("trials_per_point must be >= 1".into());
        }
        if !(self.receiver_height > 0.0 && self.receiver_height < self.room.height) {
            return bad(format!(
                "receiver_height must be inside (0, {}), got {}",
                self.room.height, self.receiver_height
            ));
        }
        if self.grid_axis().len() > 100_000 {
            return bad("grid has more than 100000 points per axis".into());
        }
        Ok(())
    }

    /// Coordinates visited along each horizontal axis, `grid_min` to `grid_max` inclusive.
    pub fn grid_axis(&self) -> Vec<f64> {
        // tolerate rounding in (max - min) / step so the upper bound is kept
        let n = ((self.grid_max - self.grid_min) / self.grid_step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| self.grid_min + i as f64 * self.grid_step)
            .collect()
    }

    /// Ground-truth receiver positions, x-major.
    pub fn grid_points(&self) -> Vec<WorldPoint> {
        let axis = self.grid_axis();
        axis.iter()
            .flat_map(|&x| {
                axis.iter()
                    .map(move |&y| WorldPoint::new(x, y, self.receiver_height))
            })
            .collect()
    }
}

/// Error statistics of a set of estimates against one ground-truth point, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats {
    pub offset_max: f64,
    pub rmse_xy: f64,
    pub rmse_yz: f64,
    pub rmse_3d: f64,
}

pub fn compute_metrics(truth: &WorldPoint, estimates: &[WorldPoint]) -> Result<ErrorStats> {
    if estimates.is_empty() {
        return Err(Error::EmptyEstimates);
    }
    let n = estimates.len() as f64;
    let (mut sx, mut sy, mut sz, mut offset_max) = (0.0, 0.0, 0.0, 0.0_f64);
    for e in estimates {
        let d = *e - *truth;
        sx += d.x * d.x;
        sy += d.y * d.y;
        sz += d.z * d.z;
        offset_max = offset_max.max(d.norm());
    }
    Ok(ErrorStats {
        offset_max,
        rmse_xy: ((sx + sy) / n).sqrt(),
        rmse_yz: ((sy + sz) / n).sqrt(),
        rmse_3d: ((sx + sy + sz) / n).sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub result: std::result::Result<LocalizationResult, Error>,
}

/// All trials at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub grid_index: usize,
    pub truth: WorldPoint,
    pub trials: Vec<TrialOutcome>,
    /// `None` when every trial failed.
    pub stats: Option<ErrorStats>,
    pub failures: usize,
}

impl PointResult {
    pub fn estimates(&self) -> impl Iterator<Item = WorldPoint> + '_ {
        self.trials
            .iter()
            .filter_map(|t| t.result.as_ref().ok().map(|r| r.position))
    }

    pub fn successes(&self) -> usize {
        self.trials.len() - self.failures
    }
}

/// Generator for trial `trial` at grid point `grid_index`.
pub fn trial_rng(seed: u64, grid_index: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((grid_index as u64) << 32) | trial as u64);
    rng
}

/// Projects every feature from `camera`, perturbs the image points and localizes.
pub fn simulate_trial(
    cfg: &ScenarioConfig,
    features: &FeatureSet,
    camera: &WorldPoint,
    rng: &mut ChaCha8Rng,
) -> Result<LocalizationResult> {
    let obs = features
        .iter()
        .map(|f| {
            let clean = project(camera, &cfg.intrinsics, &f.point)?;
            Ok(Observation::new(
                f.label.clone(),
                apply_noise(clean, &cfg.noise, rng),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    localize(&obs, features, &cfg.intrinsics, cfg.room.height, cfg.method)
}

fn run_point(
    cfg: &ScenarioConfig,
    features: &FeatureSet,
    grid_index: usize,
    truth: WorldPoint,
) -> PointResult {
    let trials: Vec<TrialOutcome> = (0..cfg.trials_per_point)
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, grid_index, trial);
            TrialOutcome {
                trial,
                result: simulate_trial(cfg, features, &truth, &mut rng),
            }
        })
        .collect();
    let failures = trials.iter().filter(|t| t.result.is_err()).count();
    let estimates: Vec<WorldPoint> = trials
        .iter()
        .filter_map(|t| t.result.as_ref().ok().map(|r| r.position))
        .collect();
    PointResult {
        grid_index,
        truth,
        stats: compute_metrics(&truth, &estimates).ok(),
        trials,
        failures,
    }
}

/// Runs every trial at every grid point. Per-trial solver failures are
/// recorded in the results; only configuration problems are returned as errors.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Vec<PointResult>> {
    cfg.validate()?;
    let features = default_features(&cfg.transmitter)?;
    Ok(cfg
        .grid_points()
        .into_par_iter()
        .enumerate()
        .map(|(g, truth)| run_point(cfg, &features, g, truth))
        .collect())
}

/// Empirical CDF as (value, cumulative probability) steps.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfSeries {
    pub steps: Vec<(f64, f64)>,
}

impl CdfSeries {
    pub fn last_probability(&self) -> Option<f64> {
        self.steps.last().map(|s| s.1)
    }
}

pub fn build_cdf(values: &[f64]) -> Result<CdfSeries> {
    if values.is_empty() {
        return Err(Error::EmptyCdf);
    }
    if let Some(&v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidCdfValue(v));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut steps: Vec<(f64, f64)> = Vec::new();
    for (i, v) in sorted.iter().enumerate() {
        let p = (i + 1) as f64 / n;
        match steps.last_mut() {
            Some(last) if last.0 == *v => last.1 = p,
            _ => steps.push((*v, p)),
        }
    }
    Ok(CdfSeries { steps })
}

/// Median of the finite values, `None` if there are none.
pub fn median(values: &[f64]) -> Option<f64> {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        0.5 * (v[m - 1] + v[m])
    } else {
        v[m]
    })
}
