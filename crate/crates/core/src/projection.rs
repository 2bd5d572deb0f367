//! Pinhole image formation for an upward-facing camera.
//!
//! The camera's optical axis is world +z and its image axes are aligned with
//! world x and y. Image-plane quantities are physical lengths in micrometers,
//! measured from the principal point.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::geometry::WorldPoint;

/// Focal lengths and principal point, micrometers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    /// Physical size of one pixel; only used to convert pixel indices.
    pub pixel_pitch: f64,
}

impl Default for CameraIntrinsics {
    /// Calibrated values of the reference camera.
    fn default() -> Self {
        Self {
            fx: 4.0001e3,
            fy: 4.0102e3,
            cx: 2.6348e3,
            cy: 1.5286e3,
            pixel_pitch: 1.0,
        }
    }
}

impl CameraIntrinsics {
    pub fn new(fx: f64, fy: f64, cx: f64, cy: f64, pixel_pitch: f64) -> Result<Self> {
        let k = Self {
            fx,
            fy,
            cx,
            cy,
            pixel_pitch,
        };
        k.validate()?;
        Ok(k)
    }

    /// Isotropic camera with the principal point at the sensor origin.
    pub fn isotropic(f: f64) -> Result<Self> {
        Self::new(f, f, 0.0, 0.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fx.is_finite() && self.fx > 0.0 && self.fy.is_finite() && self.fy > 0.0) {
            return Err(Error::InvalidIntrinsics(format!(
                "focal lengths must be > 0, got fx = {}, fy = {}",
                self.fx, self.fy
            )));
        }
        if !(self.cx.is_finite() && self.cy.is_finite()) {
            return Err(Error::InvalidIntrinsics(
                "principal point must be finite".into(),
            ));
        }
        if !(self.pixel_pitch.is_finite() && self.pixel_pitch > 0.0) {
            return Err(Error::InvalidIntrinsics(format!(
                "pixel pitch must be > 0, got {}",
                self.pixel_pitch
            )));
        }
        Ok(())
    }

    /// Geometric mean focal length `sqrt(fx * fy)`.
    pub fn mean_focal(&self) -> f64 {
        if self.fx == self.fy {
            self.fx
        } else {
            (self.fx * self.fy).sqrt()
        }
    }

    /// Rescales an image point to an equivalent camera whose focal length is
    /// [`mean_focal`](Self::mean_focal) on both axes.
    pub fn to_isotropic(&self, a: ImagePoint) -> ImagePoint {
        if self.fx == self.fy {
            return a;
        }
        let f = self.mean_focal();
        ImagePoint::new(a.u * (f / self.fx), a.v * (f / self.fy))
    }

    /// Converts raw sensor coordinates (µm from the sensor origin) to a
    /// principal-point-centered image point.
    pub fn from_sensor(&self, x: f64, y: f64) -> ImagePoint {
        ImagePoint::new(x - self.cx, y - self.cy)
    }

    pub fn to_sensor(&self, a: ImagePoint) -> (f64, f64) {
        (a.u + self.cx, a.v + self.cy)
    }

    /// Converts pixel indices to a principal-point-centered image point.
    pub fn from_pixels(&self, px: f64, py: f64) -> ImagePoint {
        self.from_sensor(px * self.pixel_pitch, py * self.pixel_pitch)
    }
}

/// Image-plane position relative to the principal point, micrometers.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ImagePoint {
    pub u: f64,
    pub v: f64,
}

impl ImagePoint {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }

    pub fn distance(&self, other: &ImagePoint) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }
}

/// Projects `p` into the image of a camera at `camera_pos`.
pub fn project(
    camera_pos: &WorldPoint,
    k: &CameraIntrinsics,
    p: &WorldPoint,
) -> Result<ImagePoint> {
    if !camera_pos.is_finite() || !p.is_finite() {
        return Err(Error::NonFinite("projection input"));
    }
    let dz = p.z - camera_pos.z;
    if dz <= 0.0 {
        return Err(Error::BehindCamera { dz });
    }
    Ok(ImagePoint::new(
        k.fx * (p.x - camera_pos.x) / dz,
        k.fy * (p.y - camera_pos.y) / dz,
    ))
}

/// Intersects the viewing ray through `a` with the horizontal plane `z = plane_z`.
pub fn back_project(
    camera_pos: &WorldPoint,
    k: &CameraIntrinsics,
    a: &ImagePoint,
    plane_z: f64,
) -> Result<WorldPoint> {
    let dz = plane_z - camera_pos.z;
    if dz <= 0.0 {
        return Err(Error::BehindCamera { dz });
    }
    Ok(WorldPoint::new(
        camera_pos.x + a.u * dz / k.fx,
        camera_pos.y + a.v * dz / k.fy,
        plane_z,
    ))
}

/// Distance from the optical center to the image point `a`, micrometers.
///
/// Computed on the isotropic equivalent camera, so the result is
/// `sqrt(u² + v² + f²)` with `f` the mean focal length and is never below `f`.
pub fn image_distance(a: &ImagePoint, k: &CameraIntrinsics) -> f64 {
    let iso = k.to_isotropic(*a);
    let f = k.mean_focal();
    (iso.u * iso.u + iso.v * iso.v + f * f).sqrt()
}

/// Image measurement error model.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum NoiseModel {
    #[default]
    None,
    /// Independent zero-mean normal deviates on u and v, µm.
    Gaussian { sigma: f64 },
    /// Rounds u and v to the nearest multiple of `pitch` µm.
    Quantize { pitch: f64 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::None => Ok(()),
            NoiseModel::Gaussian { sigma } if sigma.is_finite() && sigma > 0.0 => Ok(()),
            NoiseModel::Gaussian { sigma } => Err(Error::InvalidNoise(format!(
                "sigma must be > 0, got {sigma}"
            ))),
            NoiseModel::Quantize { pitch } if pitch.is_finite() && pitch > 0.0 => Ok(()),
            NoiseModel::Quantize { pitch } => Err(Error::InvalidNoise(format!(
                "pitch must be > 0, got {pitch}"
            ))),
        }
    }

    /// Same model with every length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        match *self {
            NoiseModel::None => NoiseModel::None,
            NoiseModel::Gaussian { sigma } => NoiseModel::Gaussian { sigma: sigma * s },
            NoiseModel::Quantize { pitch } => NoiseModel::Quantize { pitch: pitch * s },
        }
    }
}

/// Applies `n` to `a`, drawing any randomness from `rng`.
pub fn apply_noise<R: Rng + ?Sized>(a: ImagePoint, n: &NoiseModel, rng: &mut R) -> ImagePoint {
    match *n {
        NoiseModel::None => a,
        NoiseModel::Gaussian { sigma } => {
            let normal = Normal::new(0.0, sigma).expect("sigma validated by NoiseModel::validate");
            let du = normal.sample(rng);
            let dv = normal.sample(rng);
            ImagePoint::new(a.u + du, a.v + dv)
        }
        NoiseModel::Quantize { pitch } => {
            ImagePoint::new((a.u / pitch).round() * pitch, (a.v / pitch).round() * pitch)
        }
    }
}
