//! Named parameter presets: the published experiment grid of 25 parameter
//! combinations, addressable from the CLI as `tableII:<row>` (1-based).

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::sim::{CodeConfig, SimMode};
use crate::tradeoff::SystemParams;

/// One row of the experiment grid: a full-repair instance with its field
/// size, helper surplus, and reference dimension target (ξ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentPreset {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub j_bar: usize,
    pub q: u64,
    pub e: usize,
    pub pstar: u64,
}

const GRID: [ExperimentPreset; 25] = [
    ExperimentPreset { n: 27, k: 15, d: 17, r: 5, j_bar: 1, q: 29, e: 0, pstar: 180 },
    ExperimentPreset { n: 27, k: 15, d: 17, r: 5, j_bar: 2, q: 29, e: 0, pstar: 155 },
    ExperimentPreset { n: 27, k: 15, d: 17, r: 5, j_bar: 3, q: 257, e: 2, pstar: 105 },
    ExperimentPreset { n: 24, k: 16, d: 16, r: 4, j_bar: 1, q: 29, e: 1, pstar: 160 },
    ExperimentPreset { n: 24, k: 16, d: 16, r: 4, j_bar: 2, q: 29, e: 1, pstar: 144 },
    ExperimentPreset { n: 24, k: 16, d: 16, r: 4, j_bar: 3, q: 29, e: 1, pstar: 112 },
    ExperimentPreset { n: 24, k: 16, d: 16, r: 4, j_bar: 4, q: 29, e: 0, pstar: 64 },
    ExperimentPreset { n: 20, k: 12, d: 12, r: 4, j_bar: 1, q: 29, e: 1, pstar: 96 },
    ExperimentPreset { n: 20, k: 12, d: 12, r: 4, j_bar: 2, q: 29, e: 1, pstar: 80 },
    ExperimentPreset { n: 20, k: 12, d: 12, r: 4, j_bar: 3, q: 29, e: 0, pstar: 48 },
    ExperimentPreset { n: 16, k: 12, d: 12, r: 3, j_bar: 1, q: 1021, e: 3, pstar: 90 },
    ExperimentPreset { n: 16, k: 12, d: 12, r: 3, j_bar: 2, q: 1021, e: 3, pstar: 81 },
    ExperimentPreset { n: 16, k: 12, d: 12, r: 3, j_bar: 3, q: 257, e: 3, pstar: 63 },
    ExperimentPreset { n: 16, k: 12, d: 12, r: 3, j_bar: 4, q: 257, e: 0, pstar: 36 },
    ExperimentPreset { n: 16, k: 8, d: 11, r: 2, j_bar: 1, q: 29, e: 1, pstar: 64 },
    ExperimentPreset { n: 16, k: 8, d: 11, r: 2, j_bar: 2, q: 29, e: 1, pstar: 60 },
    ExperimentPreset { n: 16, k: 8, d: 11, r: 2, j_bar: 3, q: 29, e: 1, pstar: 52 },
    ExperimentPreset { n: 16, k: 8, d: 11, r: 2, j_bar: 4, q: 29, e: 1, pstar: 40 },
    ExperimentPreset { n: 14, k: 10, d: 10, r: 2, j_bar: 1, q: 29, e: 2, pstar: 60 },
    ExperimentPreset { n: 14, k: 10, d: 10, r: 2, j_bar: 2, q: 29, e: 1, pstar: 56 },
    ExperimentPreset { n: 14, k: 10, d: 10, r: 2, j_bar: 3, q: 29, e: 2, pstar: 48 },
    ExperimentPreset { n: 14, k: 10, d: 10, r: 2, j_bar: 4, q: 29, e: 2, pstar: 36 },
    ExperimentPreset { n: 14, k: 10, d: 10, r: 2, j_bar: 5, q: 127, e: 0, pstar: 20 },
    ExperimentPreset { n: 9, k: 6, d: 6, r: 3, j_bar: 1, q: 1021, e: 3, pstar: 27 },
    ExperimentPreset { n: 9, k: 6, d: 6, r: 3, j_bar: 2, q: 1021, e: 0, pstar: 18 },
];

pub fn experiment_grid() -> &'static [ExperimentPreset] {
    &GRID
}

/// Resolve a preset name of the form `tableII:<row>` with 1-based rows.
pub fn lookup(name: &str) -> Result<&'static ExperimentPreset> {
    let row = name
        .strip_prefix("tableII:")
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| {
            Error::InvalidParams(format!(
                "unknown preset {name:?}; expected tableII:<row> with row in 1..={}",
                GRID.len()
            ))
        })?;
    if row == 0 || row > GRID.len() {
        return Err(Error::InvalidParams(format!(
            "preset row {row} out of range 1..={}",
            GRID.len()
        )));
    }
    Ok(&GRID[row - 1])
}

impl ExperimentPreset {
    /// The dimension-tracking full-repair configuration this row describes
    /// (ρ=0, ξ=1, minimal extension degree).
    pub fn config(&self, seed: u64) -> Result<CodeConfig> {
        let params = SystemParams::new(
            self.n,
            self.k,
            self.d,
            self.r,
            BigRational::zero(),
            BigRational::one(),
        )?;
        let s = self.d - (self.j_bar - 1) * self.r;
        CodeConfig::new(
            params,
            self.j_bar,
            self.e,
            1,
            self.q,
            (self.n - self.r) * s,
            SimMode::DimensionTracking,
            seed,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tradeoff::pstar;
    use num::BigRational;

    #[test]
    fn grid_rows_are_admissible_and_consistent() {
        for (i, row) in GRID.iter().enumerate() {
            assert_eq!(row.k % row.r, 0, "row {i}");
            assert!(row.j_bar >= 1 && row.j_bar <= row.k / row.r, "row {i}");
            assert!(row.e <= row.d - row.j_bar * row.r, "row {i}: e out of range");
            let p = pstar(row.k, row.d, row.r, row.j_bar, &BigRational::zero(), 1).unwrap();
            assert_eq!(p, row.pstar, "row {i}: target mismatch");
            let config = row.config(7).unwrap();
            assert_eq!(config.dimension_target(), row.pstar, "row {i}");
        }
    }

    #[test]
    fn lookup_parses_and_bounds() {
        assert_eq!(lookup("tableII:1").unwrap(), &GRID[0]);
        assert_eq!(lookup("tableII:25").unwrap(), &GRID[24]);
        let row8 = lookup("tableII:8").unwrap();
        assert_eq!((row8.n, row8.k, row8.d, row8.r, row8.j_bar), (20, 12, 12, 4, 1));
        assert!(lookup("tableII:0").is_err());
        assert!(lookup("tableII:26").is_err());
        assert!(lookup("grid:3").is_err());
        assert!(lookup("tableII:x").is_err());
    }
}
