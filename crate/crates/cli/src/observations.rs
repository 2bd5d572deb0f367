//! Snapshot measurements for `localize`.
//!
//! A CSV with a header row and one feature per line. The coordinate columns
//! select the frame:
//!
//! | columns          | meaning                                       |
//! |------------------|-----------------------------------------------|
//! | `u_um`, `v_um`   | µm from the principal point                   |
//! | `x_um`, `y_um`   | µm from the sensor origin                     |
//! | `px`, `py`       | pixel indices, scaled by the pixel pitch      |

use vlp_mono::{CameraIntrinsics, ImagePoint, Observation};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Frame {
    Centered,
    Sensor,
    Pixels,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn parse_observations(text: &str, k: &CameraIntrinsics) -> CliResult<Vec<Observation>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| bad(format!("observations: {e}")))?
        .clone();
    if headers.is_empty() {
        return Err(bad("observations file is empty"));
    }
    let col = |name: &str| headers.iter().position(|h| h == name);
    let label = col("label").ok_or_else(|| bad("observations: missing 'label' column"))?;
    let (frame, a, b) = [
        (Frame::Centered, "u_um", "v_um"),
        (Frame::Sensor, "x_um", "y_um"),
        (Frame::Pixels, "px", "py"),
    ]
    .iter()
    .find_map(|(f, a, b)| Some((*f, col(a)?, col(b)?)))
    .ok_or_else(|| bad("observations: need u_um,v_um or x_um,y_um or px,py columns"))?;

    let mut out = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(format!("observations: {e}")))?;
        let field = |i: usize| -> CliResult<f64> {
            let raw = record.get(i).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    bad(format!(
                        "observations row {}: '{raw}' is not a number",
                        line + 1
                    ))
                })
        };
        let name = record.get(label).unwrap_or("");
        if name.is_empty() {
            return Err(bad(format!("observations row {}: empty label", line + 1)));
        }
        let (p, q) = (field(a)?, field(b)?);
        let point = match frame {
            Frame::Centered => ImagePoint::new(p, q),
            Frame::Sensor => k.from_sensor(p, q),
            Frame::Pixels => k.from_pixels(p, q),
        };
        out.push(Observation::new(name, point));
    }
    if out.is_empty() {
        return Err(bad("observations file has no rows"));
    }
    Ok(out)
}
