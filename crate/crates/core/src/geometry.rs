//! World frame, room and luminaire model, and feature-point selection.
//!
//! The world frame is right-handed with its origin at a floor corner and z
//! pointing up. Luminaires sit on the ceiling plane `z = H`. A shaped
//! luminaire is treated as a set of evenly spaced virtual points, a few of
//! which serve as trilateration anchors.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// Tolerance for "lies on the plane z = H" checks, meters.
pub const PLANE_TOLERANCE_M: f64 = 1e-9;

/// Minimum triangle area for the first three features, m².
pub const MIN_FEATURE_AREA_M2: f64 = 1e-12;

/// A position in the room frame, meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WorldPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl WorldPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn distance(&self, other: &WorldPoint) -> f64 {
        (*self - *other).norm()
    }

    /// Distance between the projections of both points onto the xy-plane.
    pub fn planar_distance(&self, other: &WorldPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl Add for WorldPoint {
    type Output = WorldPoint;
    fn add(self, rhs: WorldPoint) -> WorldPoint {
        WorldPoint::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for WorldPoint {
    type Output = WorldPoint;
    fn sub(self, rhs: WorldPoint) -> WorldPoint {
        WorldPoint::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl fmt::Display for WorldPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Axis-aligned box room; `height` is the ceiling plane H.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoomConfig {
    pub width_x: f64,
    pub length_y: f64,
    pub height: f64,
}

impl RoomConfig {
    pub fn new(width_x: f64, length_y: f64, height: f64) -> Result<Self> {
        let room = Self {
            width_x,
            length_y,
            height,
        };
        room.validate()?;
        Ok(room)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("width_x", self.width_x),
            ("length_y", self.length_y),
            ("height", self.height),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidRoom(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// Physical outline of a luminaire, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Rectangle { width_x: f64, length_y: f64 },
    Circle { diameter: f64 },
}

impl Shape {
    /// Half extents of the axis-aligned bounding box.
    pub fn half_extents(&self) -> (f64, f64) {
        match *self {
            Shape::Rectangle { width_x, length_y } => (width_x / 2.0, length_y / 2.0),
            Shape::Circle { diameter } => (diameter / 2.0, diameter / 2.0),
        }
    }

    fn validate(&self) -> Result<()> {
        let dims: &[(&str, f64)] = match self {
            Shape::Rectangle { width_x, length_y } => {
                &[("width_x", *width_x), ("length_y", *length_y)]
            }
            Shape::Circle { diameter } => &[("diameter", *diameter)],
        };
        for (name, v) in dims {
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::InvalidShape(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// A shaped luminaire on the ceiling with a known center `E` and size.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmitterModel {
    pub id: String,
    pub center: WorldPoint,
    pub shape: Shape,
}

impl TransmitterModel {
    pub fn new(id: impl Into<String>, center: WorldPoint, shape: Shape) -> Result<Self> {
        let t = Self {
            id: id.into(),
            center,
            shape,
        };
        t.validate()?;
        Ok(t)
    }

    /// The 1 m × 1 m rectangle centered at (1.5, 1.5, 5) used by the reference scenario.
    pub fn reference() -> Self {
        Self {
            id: "LED-1".to_string(),
            center: WorldPoint::new(1.5, 1.5, 5.0),
            shape: Shape::Rectangle {
                width_x: 1.0,
                length_y: 1.0,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.center.is_finite() {
            return Err(Error::NonFinite("transmitter center"));
        }
        self.shape.validate()
    }

    /// Checks the luminaire hangs on this room's ceiling and fits inside it.
    pub fn validate_in_room(&self, room: &RoomConfig) -> Result<()> {
        self.validate()?;
        room.validate()?;
        if (self.center.z - room.height).abs() > PLANE_TOLERANCE_M {
            return Err(Error::TransmitterOffCeiling {
                id: self.id.clone(),
                z: self.center.z,
                height: room.height,
            });
        }
        let (hx, hy) = self.shape.half_extents();
        let c = self.center;
        let inside = c.x - hx >= 0.0
            && c.x + hx <= room.width_x
            && c.y - hy >= 0.0
            && c.y + hy <= room.length_y;
        if !inside {
            return Err(Error::FootprintOutsideCeiling {
                id: self.id.clone(),
            });
        }
        Ok(())
    }

    /// Ceiling height implied by the luminaire center.
    pub fn plane_height(&self) -> f64 {
        self.center.z
    }
}

/// Discretizes the luminaire into evenly spaced virtual points on its plane.
///
/// Rectangles yield exactly `nx * ny` points, boundary included, symmetric
/// about the center. Circles are sampled on the same grid over their bounding
/// square and then clipped to the disk.
pub fn virtual_point_grid(t: &TransmitterModel, nx: usize, ny: usize) -> Result<Vec<WorldPoint>> {
    if nx < 2 || ny < 2 {
        return Err(Error::DegenerateGrid { nx, ny });
    }
    t.validate()?;
    let (hx, hy) = t.shape.half_extents();
    let step_x = 2.0 * hx / (nx - 1) as f64;
    let step_y = 2.0 * hy / (ny - 1) as f64;
    let mid_x = (nx - 1) as f64 / 2.0;
    let mid_y = (ny - 1) as f64 / 2.0;

    let mut points = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        // offsets are formed from the index distance to the middle so that
        // mirrored indices get bit-identical magnitudes
        let dx = (i as f64 - mid_x) * step_x;
        for j in 0..ny {
            let dy = (j as f64 - mid_y) * step_y;
            if let Shape::Circle { diameter } = t.shape {
                let r = diameter / 2.0;
                if dx.hypot(dy) > r * (1.0 + 1e-12) {
                    continue;
                }
            }
            points.push(WorldPoint::new(
                t.center.x + dx,
                t.center.y + dy,
                t.center.z,
            ));
        }
    }
    Ok(points)
}

/// A labeled anchor point on the luminaire.
#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub label: String,
    pub point: WorldPoint,
}

impl Feature {
    pub fn new(label: impl Into<String>, point: WorldPoint) -> Self {
        Self {
            label: label.into(),
            point,
        }
    }
}

/// Ordered anchor points with known world coordinates.
///
/// Invariants: at least three points, all distinct, labels unique, all on a
/// common plane `z = H`, and the first three points span a triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    features: Vec<Feature>,
}

impl FeatureSet {
    pub fn new(features: Vec<Feature>) -> Result<Self> {
        if features.len() < 3 {
            return Err(Error::TooFewFeatures {
                need: 3,
                have: features.len(),
            });
        }
        for f in &features {
            if !f.point.is_finite() {
                return Err(Error::NonFinite("feature point"));
            }
        }
        let plane = features[0].point.z;
        for f in &features {
            if (f.point.z - plane).abs() > PLANE_TOLERANCE_M {
                return Err(Error::FeatureOffPlane {
                    label: f.label.clone(),
                    z: f.point.z,
                    plane,
                });
            }
        }
        for (i, a) in features.iter().enumerate() {
            for b in &features[i + 1..] {
                if a.label == b.label {
                    return Err(Error::DuplicateLabel(a.label.clone()));
                }
                if a.point.distance(&b.point) == 0.0 {
                    return Err(Error::CoincidentFeatures(a.label.clone(), b.label.clone()));
                }
            }
        }
        let area = triangle_area_xy(&features[0].point, &features[1].point, &features[2].point);
        if area <= MIN_FEATURE_AREA_M2 {
            return Err(Error::CollinearFeatures { area });
        }
        Ok(Self { features })
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Feature> {
        self.features.iter().find(|f| f.label == label)
    }

    /// Height of the plane shared by every feature.
    pub fn plane_height(&self) -> f64 {
        self.features[0].point.z
    }

    pub fn iter(&self) -> impl Iterator<Item = &Feature> {
        self.features.iter()
    }
}

/// Area of the xy-projection of a triangle.
pub fn triangle_area_xy(a: &WorldPoint, b: &WorldPoint, c: &WorldPoint) -> f64 {
    0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)).abs()
}

/// Picks the anchors used by the localizer.
///
/// Rectangles: A, B and C are the (min x, min y), (max x, min y) and
/// (min x, max y) corners. Circles: A, B and C sit on the rim at 90°, 210°
/// and 330°. Both append the center as `E`.
pub fn default_features(t: &TransmitterModel) -> Result<FeatureSet> {
    t.validate()?;
    let c = t.center;
    let mut features = match t.shape {
        Shape::Rectangle { .. } => {
            let (hx, hy) = t.shape.half_extents();
            vec![
                Feature::new("A", WorldPoint::new(c.x - hx, c.y - hy, c.z)),
                Feature::new("B", WorldPoint::new(c.x + hx, c.y - hy, c.z)),
                Feature::new("C", WorldPoint::new(c.x - hx, c.y + hy, c.z)),
            ]
        }
        Shape::Circle { diameter } => {
            let r = diameter / 2.0;
            ["A", "B", "C"]
                .iter()
                .zip([90.0_f64, 210.0, 330.0])
                .map(|(label, deg)| {
                    let a = deg * PI / 180.0;
                    Feature::new(
                        *label,
                        WorldPoint::new(c.x + r * a.cos(), c.y + r * a.sin(), c.z),
                    )
                })
                .collect()
        }
    };
    features.push(Feature::new("E", c));
    FeatureSet::new(features)
}
