use bq::Outcome;

use crate::{render, RasterJob, SliceError, SliceImage};

/// Several slices over one window.
#[derive(Clone, Debug)]
pub struct Overlay {
    /// Ordered by increasing `c`.
    pub images: Vec<SliceImage>,
    /// Per pixel, index of the largest `c` whose verdict is QF.
    pub layer: Vec<Option<usize>>,
}

impl Overlay {
    /// Fraction of QF pixels at `c_large` that are also QF at `c_small`,
    /// for every pair `small < large`; `None` when `c_large` has no QF pixel.
    pub fn containment(&self) -> Vec<(f64, f64, Option<f64>)> {
        let mut out = Vec::new();
        for (a, small) in self.images.iter().enumerate() {
            for large in &self.images[a + 1..] {
                let both = small
                    .pixels
                    .iter()
                    .zip(&large.pixels)
                    .filter(|(s, l)| **s == Outcome::QF && **l == Outcome::QF)
                    .count();
                let denom = large.pixels.iter().filter(|l| **l == Outcome::QF).count();
                let f = (denom > 0).then(|| both as f64 / denom as f64);
                out.push((small.job.c, large.job.c, f));
            }
        }
        out
    }

    /// Layer colors run from red (smallest `c`) to blue (largest);
    /// pixels QF for no `c` are black. A single layer is the plain slice.
    pub fn to_ppm(&self) -> Vec<u8> {
        if let [one] = &self.images[..] {
            return one.to_ppm();
        }
        let n = self.images.len();
        let first = &self.images[0];
        let j = &first.job;
        let cs: Vec<String> = self.images.iter().map(|im| im.job.c.to_string()).collect();
        let mut out = format!(
            "P6\n# overlay cs={} re={},{} im={},{} budget={}\n{} {}\n255\n",
            cs.join(","),
            j.window.re.0,
            j.window.re.1,
            j.window.im.0,
            j.window.im.1,
            j.budget,
            j.width,
            j.height
        )
        .into_bytes();
        for l in &self.layer {
            out.extend(match l {
                None => [0, 0, 0],
                Some(k) => {
                    let t = *k as f64 / (n - 1) as f64;
                    [(255.0 * (1.0 - t)).round() as u8, 96, (255.0 * t).round() as u8]
                }
            });
        }
        out
    }
}

/// Render jobs sharing window and size and stack them by `c`.
pub fn overlay(jobs: &[RasterJob]) -> Result<Overlay, SliceError> {
    let first = jobs.first().ok_or_else(|| SliceError::InvalidJob("no jobs".into()))?;
    if jobs
        .iter()
        .any(|j| j.window != first.window || j.width != first.width || j.height != first.height)
    {
        return Err(SliceError::Mismatch);
    }
    let mut sorted = jobs.to_vec();
    sorted.sort_by(|a, b| a.c.total_cmp(&b.c));
    let images = sorted.iter().map(render).collect::<Result<Vec<_>, _>>()?;
    let layer = (0..first.width * first.height)
        .map(|p| images.iter().rposition(|im| im.pixels[p] == Outcome::QF))
        .collect();
    Ok(Overlay { images, layer })
}
