//! `start:stop:count` grids over the moduli parameter.

use std::f64::consts::{FRAC_PI_3, PI};

/// Slack when checking grid ends against `[0, π/3]`, so that `pi/3` parses
/// into range despite rounding.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    spec: String,
}

impl ZetaGrid {
    pub fn parse(spec: &str) -> Result<Self, String> {
        let fields: Vec<&str> = spec.split(':').collect();
        let [start, stop, count] = fields[..] else {
            return Err(format!("zeta grid '{spec}' is not of the form start:stop:count"));
        };
        let start = parse_expr(start)?;
        let stop = parse_expr(stop)?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("grid count '{count}' is not an integer"))?;
        if count < 2 {
            return Err(format!("grid count must be at least 2, got {count}"));
        }
        if start >= stop {
            return Err(format!("grid start {start} must be below stop {stop}"));
        }
        if start < -RANGE_SLACK || stop > FRAC_PI_3 + RANGE_SLACK {
            return Err(format!("grid [{start}, {stop}] leaves [0, π/3]"));
        }
        Ok(Self {
            start: snap(start),
            stop: snap(stop),
            count,
            spec: spec.trim().to_string(),
        })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }

    /// The grid as the user wrote it.
    pub fn spec(&self) -> &str {
        &self.spec
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() <= RANGE_SLACK {
        0.0
    } else if (x - FRAC_PI_3).abs() <= RANGE_SLACK {
        FRAC_PI_3
    } else {
        x
    }
}

/// Products and quotients of decimal numbers and `pi`: `pi/3`, `2*pi/9`,
/// `0.5`, `π/6`.
fn parse_expr(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty grid bound".into());
    }
    let mut value = 1.0;
    let mut divide = false;
    let mut rest = s;
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let factor = parse_factor(&rest[..end]).ok_or_else(|| format!("cannot parse grid bound '{s}'"))?;
        if divide {
            value /= factor;
        } else {
            value *= factor;
        }
        if end == rest.len() {
            break;
        }
        divide = rest[end..].starts_with('/');
        rest = &rest[end + 1..];
    }
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("grid bound '{s}' is not finite"))
    }
}

fn parse_factor(s: &str) -> Option<f64> {
    match s.trim() {
        "pi" | "PI" | "π" => Some(PI),
        other => other.parse().ok(),
    }
}
