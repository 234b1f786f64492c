//! `--k-grid` values: `start:stop:count` (linear), `start:stop:count,log`,
//! or an explicit list such as `0.5,1,2`. The axis endpoints `k = 0` and
//! `k = inf` are always added by the sweep.

use diamond_core::regions::{default_k_grid, log_grid, with_endpoints};

use crate::error::{CliError, Result};

pub fn parse_k_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| CliError::usage(format!("bad --k-grid `{text}`: {why}"));
    let trimmed = text.trim();
    let grid = if trimmed.contains(':') {
        let (range, scale) = match trimmed.rsplit_once(',') {
            Some((r, s)) => (r, s.trim()),
            None => (trimmed, "lin"),
        };
        let parts: Vec<&str> = range.split(':').map(str::trim).collect();
        let [start, stop, count] = parts[..] else { return Err(bad("expected start:stop:count")) };
        let start: f64 = start.parse().map_err(|_| bad("start is not a number"))?;
        let stop: f64 = stop.parse().map_err(|_| bad("stop is not a number"))?;
        let count: usize = count.parse().map_err(|_| bad("count is not a positive integer"))?;
        if count == 0 || !(start.is_finite() && stop.is_finite()) || stop < start {
            return Err(bad("need finite start <= stop and count >= 1"));
        }
        if count > 1 && start == stop {
            return Err(bad("start == stop with more than one point"));
        }
        match scale {
            "log" => {
                if start <= 0.0 {
                    return Err(bad("log spacing needs start > 0"));
                }
                log_grid(start, stop, count)
            }
            "lin" => (0..count)
                .map(|i| if count == 1 { start } else { start + (stop - start) * i as f64 / (count - 1) as f64 })
                .collect(),
            other => return Err(bad(&format!("unknown spacing `{other}`"))),
        }
    } else if trimmed == "default" {
        default_k_grid()
    } else {
        trimmed
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| bad(&format!("`{v}` is not a number"))))
            .collect::<Result<Vec<_>>>()?
    };
    with_endpoints(&grid).map_err(|e| bad(&e.to_string()))?;
    Ok(grid)
}
