//! Rasterized sets on a regular lattice, used to wrap minimizer states so
//! the generic checkers can treat them as ordinary sets.

/// A binary raster over an axis-aligned lattice of square cells.
#[derive(Debug, Clone)]
pub struct RasterSet {
    /// Lower corner of cell (0, .., 0).
    pub origin: Vec<f64>,
    /// Cell side length.
    pub h: f64,
    /// Cells per axis.
    pub shape: Vec<usize>,
    /// Row-major occupancy, last axis fastest.
    pub cells: Vec<bool>,
}

impl RasterSet {
    pub fn new(origin: Vec<f64>, h: f64, shape: Vec<usize>, cells: Vec<bool>) -> Self {
        assert_eq!(shape.iter().product::<usize>(), cells.len());
        RasterSet {
            origin,
            h,
            shape,
            cells,
        }
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    fn index_of(&self, idx: &[usize]) -> usize {
        let mut flat = 0;
        for (i, &k) in idx.iter().enumerate() {
            flat = flat * self.shape[i] + k;
        }
        flat
    }

    pub fn cell_center(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .enumerate()
            .map(|(i, &k)| self.origin[i] + (k as f64 + 0.5) * self.h)
            .collect()
    }

    /// Signed pseudo-distance; inside an occupied cell it is the distance to
    /// the cell's faces (the raster does not smooth across cells).
    pub fn margin(&self, x: &[f64]) -> f64 {
        let mut idx = Vec::with_capacity(x.len());
        let mut face = f64::INFINITY;
        for (i, &xi) in x.iter().enumerate() {
            let t = (xi - self.origin[i]) / self.h;
            if t < 0.0 || t >= self.shape[i] as f64 {
                // Outside the raster extent: distance to the extent box.
                let lo = self.origin[i];
                let hi = self.origin[i] + self.shape[i] as f64 * self.h;
                let d = if xi < lo { lo - xi } else { (xi - hi).max(0.0) };
                return -d.max(1e-300);
            }
            let k = t.floor() as usize;
            let frac = t - k as f64;
            face = face.min(frac.min(1.0 - frac) * self.h);
            idx.push(k.min(self.shape[i] - 1));
        }
        let occupied = self.cells[self.index_of(&idx)];
        if occupied {
            face
        } else {
            -face
        }
    }

    pub fn bounding_radius(&self) -> f64 {
        let far: f64 = self
            .origin
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                let hi = o + self.shape[i] as f64 * self.h;
                o.abs().max(hi.abs()).powi(2)
            })
            .sum::<f64>()
            .sqrt();
        far
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }
}
