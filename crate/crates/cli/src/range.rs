//! Parameter lists given as `start:stop:step` or a single value.

/// Inclusive arithmetic range, or one value.
#[derive(Debug, Clone, PartialEq)]
pub struct Range(pub Vec<f64>);

const MAX_POINTS: usize = 1_000_000;

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [one] => Ok(Range(vec![number(one)?])),
            [start, stop, step] => {
                let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
                if !(step > 0.0) {
                    return Err(format!("step {step} must be positive"));
                }
                if stop < start {
                    return Err(format!("stop {stop} is below start {start}"));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                if count > MAX_POINTS {
                    return Err(format!("{count} points exceed the limit of {MAX_POINTS}"));
                }
                Ok(Range((0..count).map(|k| start + k as f64 * step).collect()))
            }
            _ => Err(format!("'{s}' is neither a number nor start:stop:step")),
        }
    }
}

/// Three comma-separated numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray(pub [f64; 3]);

impl std::str::FromStr for Ray {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<f64> = s.split(',').map(number).collect::<Result<_, _>>()?;
        <[f64; 3]>::try_from(v).map(Ray).map_err(|_| format!("'{s}' needs exactly three components"))
    }
}
