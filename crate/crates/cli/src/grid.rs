//! Parameter values and ranges on the command line.
//!
//! A value is a float or a multiple of π: `0.3`, `pi`, `-pi/4`, `2pi/3`,
//! `1e-8`. A range is `start:stop:steps` with steps ≥ 2 and start < stop,
//! both ends included.

use std::f64::consts::PI;
use std::str::FromStr;

pub fn parse_value(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| format!("not a number: {s:?}"));
    };
    let (head, tail) = (&t[..pos], &t[pos + 2..]);
    let factor = match head.trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| format!("bad multiple of pi: {s:?}"))?,
    };
    let divisor = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .ok_or_else(|| format!("bad divisor in {s:?}"))?,
    };
    Ok(factor * PI / divisor)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Single(f64),
    Range { start: f64, stop: f64, steps: usize },
}

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Grid::Single(parse_value(v)?)),
            [a, b, n] => {
                let (start, stop) = (parse_value(a)?, parse_value(b)?);
                let steps: usize = n.trim().parse().map_err(|_| format!("bad step count in {s:?}"))?;
                if steps < 2 {
                    return Err(format!("a range needs at least 2 steps, got {steps}"));
                }
                if !(start < stop) {
                    return Err(format!("range start {start} must be below stop {stop}"));
                }
                Ok(Grid::Range { start, stop, steps })
            }
            _ => Err(format!("expected a value or start:stop:steps, got {s:?}")),
        }
    }
}

impl Grid {
    pub fn linear(&self) -> Vec<f64> {
        match *self {
            Grid::Single(v) => vec![v],
            Grid::Range { start, stop, steps } => {
                let h = (stop - start) / (steps - 1) as f64;
                (0..steps).map(|k| if k + 1 == steps { stop } else { start + h * k as f64 }).collect()
            }
        }
    }

    /// Geometric spacing between positive endpoints.
    pub fn logarithmic(&self) -> Result<Vec<f64>, String> {
        match *self {
            Grid::Single(v) => Ok(vec![v]),
            Grid::Range { start, stop, steps } => {
                if start <= 0.0 {
                    return Err(format!("a logarithmic range needs positive ends, got {start}"));
                }
                let (a, b) = (start.ln(), stop.ln());
                let h = (b - a) / (steps - 1) as f64;
                Ok((0..steps)
                    .map(|k| match k {
                        0 => start,
                        k if k + 1 == steps => stop,
                        k => (a + h * k as f64).exp(),
                    })
                    .collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(parse_value("0.25").unwrap(), 0.25);
        assert_eq!(parse_value("pi").unwrap(), PI);
        assert_eq!(parse_value("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(parse_value("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_value("2*pi").unwrap(), 2.0 * PI);
        assert!(parse_value("x").is_err() && parse_value("pi/").is_err());
    }

    #[test]
    fn ranges() {
        let g: Grid = "0:pi:21".parse().unwrap();
        let v = g.linear();
        assert_eq!(v.len(), 21);
        assert_eq!((v[0], v[20]), (0.0, PI));
        assert_eq!("0:1:2".parse::<Grid>().unwrap().linear(), vec![0.0, 1.0]);
        let l = "1e-4:1e4:9".parse::<Grid>().unwrap().logarithmic().unwrap();
        assert!((l[4] - 1.0).abs() < 1e-12 && l[8] == 1e4);
        assert!("0:1:1".parse::<Grid>().is_err());
        assert!("1:0:5".parse::<Grid>().is_err());
        assert!("0:1".parse::<Grid>().is_err());
    }
}
