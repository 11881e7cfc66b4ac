//! Basin-of-attraction rasters over the unit sphere in R^3.
//!
//! Each raster cell center maps to a start vector through the angular
//! parameterization `theta in [0, pi]`, `phi in [0, 2 pi)`; the cell is
//! colored by the canonical eigenpair its run converges to, black when the
//! run fails. Legend order (and so the palette assignment) is by descending
//! eigenvalue.

use rayon::prelude::*;

use teneig_core::solver::{
    canonicalize_real, pairs_match, sshopm, EigenPair, ShiftConfig, DEDUP_TOL,
};
use teneig_core::tensor::SymTensor;

/// Fixed palette of distinct hues, cycled when a raster somehow needs more.
pub const PALETTE: [[u8; 3]; 12] = [
    [230, 25, 75],   // red
    [60, 180, 75],   // green
    [67, 99, 216],   // blue
    [255, 225, 25],  // yellow
    [245, 130, 49],  // orange
    [145, 30, 180],  // purple
    [66, 212, 244],  // cyan
    [240, 50, 230],  // magenta
    [191, 239, 69],  // lime
    [250, 190, 212], // pink
    [70, 153, 144],  // teal
    [220, 190, 255], // lavender
];

pub const NONE_COLOR: [u8; 3] = [0, 0, 0];

#[derive(Debug, Clone)]
pub struct LegendEntry {
    pub pair: EigenPair,
    pub color: [u8; 3],
}

#[derive(Debug, Clone)]
pub struct BasinRaster {
    pub width: usize,
    pub height: usize,
    /// Row-major cells; `None` marks a non-converged start.
    pub cells: Vec<Option<u16>>,
    pub legend: Vec<LegendEntry>,
}

impl BasinRaster {
    pub fn none_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    /// Binary P6 pixmap bytes.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        for cell in &self.cells {
            let rgb = match cell {
                Some(id) => self.legend[*id as usize].color,
                None => NONE_COLOR,
            };
            out.extend_from_slice(&rgb);
        }
        out
    }

    /// CSV legend: id, eigenvalue, eigenvector, classification, color.
    pub fn legend_csv(&self) -> String {
        let mut out = String::from("id,lambda,x1,x2,x3,type,r,g,b\n");
        for (id, entry) in self.legend.iter().enumerate() {
            let p = &entry.pair;
            out.push_str(&format!(
                "{id},{},{},{},{},{},{},{},{}\n",
                p.lambda,
                p.x[0],
                p.x[1],
                p.x[2],
                p.classification,
                entry.color[0],
                entry.color[1],
                entry.color[2]
            ));
        }
        out
    }
}

/// Start vector for cell `(i, j)` of a `width x height` raster: cell-center
/// angles `theta = pi (j + 1/2) / H`, `phi = 2 pi (i + 1/2) / W`.
pub fn cell_start(i: usize, j: usize, width: usize, height: usize) -> [f64; 3] {
    let theta = std::f64::consts::PI * (j as f64 + 0.5) / height as f64;
    let phi = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / width as f64;
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// Runs the shifted iteration from every cell center and groups the results
/// into a colored raster. The tensor dimension must be 3.
pub fn compute(a: &SymTensor, cfg: &ShiftConfig, width: usize, height: usize) -> BasinRaster {
    assert_eq!(a.dim(), 3, "basin rasters are defined on the sphere in R^3");
    assert!(width >= 2 && height >= 2, "raster needs at least 2x2 cells");

    let outcomes: Vec<Option<EigenPair>> = (0..width * height)
        .into_par_iter()
        .map(|cell| {
            let i = cell % width;
            let j = cell / width;
            let x0 = cell_start(i, j, width, height);
            match sshopm(a, &x0, cfg) {
                Ok((pair, _)) if pair.converged && pair.residual <= 1e-8 => {
                    Some(canonicalize_real(&pair, a.order()))
                }
                _ => None,
            }
        })
        .collect();

    // First pass groups by canonical pair in scan order.
    let mut found: Vec<EigenPair> = Vec::new();
    let mut raw_ids: Vec<Option<usize>> = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        raw_ids.push(outcome.map(|pair| {
            match found.iter().position(|p| pairs_match(p, &pair, DEDUP_TOL)) {
                Some(k) => k,
                None => {
                    found.push(pair);
                    found.len() - 1
                }
            }
        }));
    }

    // Legend sorted by descending eigenvalue for a stable palette.
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&p, &q| {
        found[q]
            .lambda
            .partial_cmp(&found[p].lambda)
            .unwrap()
            .then_with(|| found[q].x.partial_cmp(&found[p].x).unwrap())
    });
    let mut remap = vec![0u16; found.len()];
    for (new_id, &old_id) in order.iter().enumerate() {
        remap[old_id] = new_id as u16;
    }
    let legend: Vec<LegendEntry> = order
        .iter()
        .enumerate()
        .map(|(new_id, &old_id)| LegendEntry {
            pair: found[old_id].clone(),
            color: PALETTE[new_id % PALETTE.len()],
        })
        .collect();
    let cells = raw_ids
        .into_iter()
        .map(|c| c.map(|old| remap[old]))
        .collect();

    BasinRaster {
        width,
        height,
        cells,
        legend,
    }
}
