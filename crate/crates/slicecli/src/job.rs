use std::f64::consts::PI;

use moebius::C64;

use crate::SliceError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl Window {
    /// One twist period `Re in [-c, c]`, `Im in [-pi, pi]`.
    pub fn default_for(c: f64) -> Self {
        Window { re: (-c, c), im: (-PI, PI) }
    }

    pub fn validate(&self) -> Result<(), SliceError> {
        let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a < b;
        if !ok(self.re) || !ok(self.im) {
            return Err(SliceError::InvalidJob(format!("empty window {self:?}")));
        }
        if self.im.0 < -PI || self.im.1 > PI {
            return Err(SliceError::InvalidJob(format!(
                "Im range [{}, {}] leaves [-pi, pi]",
                self.im.0, self.im.1
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RasterJob {
    pub c: f64,
    pub window: Window,
    pub width: usize,
    pub height: usize,
    pub budget: usize,
    /// Worker threads; 0 picks the machine's parallelism.
    pub threads: usize,
}

impl RasterJob {
    pub fn new(c: f64, window: Window, width: usize, height: usize, budget: usize) -> Self {
        RasterJob { c, window, width, height, budget, threads: 0 }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn validate(&self) -> Result<(), SliceError> {
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(SliceError::InvalidJob(format!("c must be positive, got {}", self.c)));
        }
        if self.width == 0 || self.height == 0 {
            return Err(SliceError::InvalidJob("image size must be at least 1x1".into()));
        }
        if self.budget == 0 {
            return Err(SliceError::InvalidJob("budget must be at least 1".into()));
        }
        self.window.validate()
    }

    pub fn dx(&self) -> f64 {
        (self.window.re.1 - self.window.re.0) / self.width as f64
    }

    pub fn dy(&self) -> f64 {
        (self.window.im.1 - self.window.im.0) / self.height as f64
    }

    /// `tau` at the center of pixel `(i, j)`; row 0 is the top.
    pub fn tau(&self, i: usize, j: usize) -> C64 {
        C64::new(
            self.window.re.0 + (i as f64 + 0.5) * self.dx(),
            self.window.im.1 - (j as f64 + 0.5) * self.dy(),
        )
    }

    /// Rows whose pixel band meets `Im tau = 0`.
    pub fn real_axis_rows(&self) -> Vec<usize> {
        let tol = 1e-9 * self.dy();
        (0..self.height)
            .filter(|&j| {
                let top = self.window.im.1 - j as f64 * self.dy();
                let bottom = top - self.dy();
                bottom <= tol && top >= -tol
            })
            .collect()
    }
}
