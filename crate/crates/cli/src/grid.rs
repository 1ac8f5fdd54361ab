//! Parameter grids given on the command line.

use std::str::FromStr;

use crate::error::CliError;

/// Values from `start:stop:count` (inclusive, evenly spaced), a comma list,
/// or a single number.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let number = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("not a finite number: {t:?}"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let values = match parts.as_slice() {
            [start, stop, count] => {
                let (a, b) = (number(start)?, number(stop)?);
                let count: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad point count {count:?}"))?;
                match count {
                    0 => return Err("a range needs at least one point".into()),
                    1 => vec![a],
                    _ => (0..count)
                        .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
                        .collect(),
                }
            }
            [_] => s.split(',').map(number).collect::<Result<_, _>>()?,
            _ => return Err(format!("expected start:stop:count or a list, got {s:?}")),
        };
        Ok(Grid(values))
    }
}

impl Grid {
    /// The values as chain lengths; each must be a whole number.
    pub fn sizes(&self) -> Result<Vec<usize>, CliError> {
        self.0
            .iter()
            .map(|&v| {
                let n = v.round();
                if (v - n).abs() > 1e-9 || n < 0.0 {
                    Err(CliError::Validation(format!("chain length {v} is not a whole number")))
                } else {
                    Ok(n as usize)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_includes_both_ends() {
        let g: Grid = "0:2:201".parse().unwrap();
        assert_eq!(g.0.len(), 201);
        assert_eq!(g.0[0], 0.0);
        assert_eq!(g.0[100], 1.0);
        assert_eq!(g.0[200], 2.0);
    }

    #[test]
    fn list_and_single_value() {
        assert_eq!("0.1, 0.5,1".parse::<Grid>().unwrap().0, vec![0.1, 0.5, 1.0]);
        assert_eq!("3".parse::<Grid>().unwrap().0, vec![3.0]);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "a", "0:1", "0:1:0", "0:1:x", "1,nan", "0:1:2:3"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn sizes_must_be_whole() {
        assert_eq!("100:1000:10".parse::<Grid>().unwrap().sizes().unwrap()[9], 1000);
        assert!("10.5".parse::<Grid>().unwrap().sizes().is_err());
    }
}
