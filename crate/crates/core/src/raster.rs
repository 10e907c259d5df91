//! Sampling plane queries on a rectangular grid, with PGM and CSV output.
//!
//! Sample `(i, j)` sits at the pixel centre
//! `(x_min + (i + 1/2) dx, y_min + (j + 1/2) dy)`. Output rows run from the
//! top of the region (`j = height - 1`) down to the bottom, so images come out
//! upright; within a row `i` runs left to right.

use std::io::{self, Write};

use thiserror::Error;

use crate::bcore::Real;
use crate::indicator::Point;
use crate::par::{self, Execution};
use crate::setlang::CompiledQuery;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A rectangular sampling region and its resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    y_min: f64,
    x_max: f64,
    y_max: f64,
    width: usize,
    height: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64, width: usize, height: usize) -> Result<Self, RasterError> {
        let finite = [x_min, y_min, x_max, y_max].iter().all(|v| v.is_finite());
        if !finite || x_min >= x_max || y_min >= y_max {
            return Err(RasterError::InvalidGrid(format!(
                "region ({x_min}, {y_min})..({x_max}, {y_max}) is empty or not finite"
            )));
        }
        if width == 0 || height == 0 {
            return Err(RasterError::InvalidGrid(format!("size {width}x{height} must be positive")));
        }
        Ok(GridSpec { x_min, y_min, x_max, y_max, width, height })
    }

    /// `[-3.75, 3] x [-3.75, 3]` at 600 x 600.
    pub fn four_disk_default() -> Self {
        GridSpec::new(-3.75, -3.75, 3.0, 3.0, 600, 600).expect("valid constant grid")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.width as f64
    }

    fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.height as f64
    }

    /// Centre of sample `(i, j)`.
    pub fn sample(&self, i: usize, j: usize) -> Point {
        let x = self.x_min + (i as f64 + 0.5) * self.dx();
        let y = self.y_min + (j as f64 + 0.5) * self.dy();
        (Real::new(x).expect("finite"), Real::new(y).expect("finite"))
    }

    /// The sample whose cell contains `(x, y)`, if inside the region.
    pub fn cell_of(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let fi = ((x - self.x_min) / self.dx()).floor();
        let fj = ((y - self.y_min) / self.dy()).floor();
        if fi < 0.0 || fj < 0.0 || fi >= self.width as f64 || fj >= self.height as f64 {
            return None;
        }
        Some((fi as usize, fj as usize))
    }
}

/// Integer-valued raster in output (top-to-bottom) row order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    width: usize,
    height: usize,
    maxval: i64,
    values: Vec<i64>,
}

impl Grid {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn maxval(&self) -> i64 {
        self.maxval
    }

    /// Value at sample `(i, j)` (grid coordinates, `j` growing upwards).
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.values[(self.height - 1 - j) * self.width + i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.values.chunks(self.width)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// Evaluates `query` at every sample. Rows are independent and may run in
/// parallel; the result does not depend on `exec`.
pub fn rasterize(query: &CompiledQuery<Point>, spec: &GridSpec, exec: Execution) -> Grid {
    let (w, h) = (spec.width, spec.height);
    let rows = par::map_range(exec, 0..h, |r| {
        let j = h - 1 - r;
        (0..w).map(|i| query.eval(&spec.sample(i, j))).collect::<Vec<_>>()
    });
    Grid {
        width: w,
        height: h,
        maxval: query.max_value().max(1),
        values: rows.concat(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PgmEncoding {
    /// `P2`, whitespace-separated decimal samples.
    #[default]
    Ascii,
    /// `P5`, one byte per sample (two, big-endian, when maxval > 255).
    Binary,
}

pub fn write_pgm<W: Write>(grid: &Grid, encoding: PgmEncoding, out: &mut W) -> io::Result<()> {
    let magic = match encoding {
        PgmEncoding::Ascii => "P2",
        PgmEncoding::Binary => "P5",
    };
    write!(out, "{magic}\n{} {}\n{}\n", grid.width, grid.height, grid.maxval)?;
    match encoding {
        PgmEncoding::Ascii => {
            for row in grid.rows() {
                let line: Vec<String> = row.iter().map(i64::to_string).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
        PgmEncoding::Binary => {
            let wide = grid.maxval > 255;
            let mut bytes = Vec::with_capacity(grid.values.len() * if wide { 2 } else { 1 });
            for &v in &grid.values {
                if wide {
                    bytes.extend_from_slice(&(v as u16).to_be_bytes());
                } else {
                    bytes.push(v as u8);
                }
            }
            out.write_all(&bytes)?;
        }
    }
    Ok(())
}

/// Row-major CSV, `,` separated, LF line endings, no header.
pub fn write_csv<W: Write>(grid: &Grid, out: &mut W) -> io::Result<()> {
    for row in grid.rows() {
        let line: Vec<String> = row.iter().map(i64::to_string).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
