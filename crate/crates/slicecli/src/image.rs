use std::time::{Duration, Instant};

use bq::{classify_point, Outcome};
use rayon::prelude::*;

use crate::{RasterJob, SliceError, Window};

/// RGB colors for QF, NotQF, Undecided.
pub const PALETTE: [[u8; 3]; 3] = [[255, 255, 255], [0, 0, 0], [255, 0, 0]];

fn color(o: Outcome) -> [u8; 3] {
    PALETTE[o as usize]
}

#[derive(Clone, Debug)]
pub struct SliceImage {
    pub job: RasterJob,
    /// Row-major, row 0 at the top of the window.
    pub pixels: Vec<Outcome>,
    pub wall: Duration,
}

impl SliceImage {
    pub fn from_pixels(job: RasterJob, pixels: Vec<Outcome>) -> Result<Self, SliceError> {
        job.validate()?;
        if pixels.len() != job.width * job.height {
            return Err(SliceError::Format(format!(
                "{} pixels for a {}x{} image",
                pixels.len(),
                job.width,
                job.height
            )));
        }
        Ok(SliceImage { job, pixels, wall: Duration::ZERO })
    }

    pub fn get(&self, i: usize, j: usize) -> Outcome {
        self.pixels[j * self.job.width + i]
    }

    /// Pixel counts for QF, NotQF, Undecided.
    pub fn counts(&self) -> [usize; 3] {
        let mut n = [0; 3];
        for p in &self.pixels {
            n[*p as usize] += 1;
        }
        n
    }

    pub fn header(&self) -> String {
        let j = &self.job;
        format!(
            "P6\n# slice c={} re={},{} im={},{} budget={}\n{} {}\n255\n",
            j.c, j.window.re.0, j.window.re.1, j.window.im.0, j.window.im.1, j.budget, j.width, j.height
        )
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = self.header().into_bytes();
        out.extend(self.pixels.iter().flat_map(|p| color(*p)));
        out
    }
}

/// Classify every pixel center. Rows are computed in parallel and
/// assembled in index order, so the output does not depend on `threads`.
pub fn render(job: &RasterJob) -> Result<SliceImage, SliceError> {
    job.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.threads)
        .build()
        .map_err(|e| SliceError::InvalidJob(e.to_string()))?;
    let start = Instant::now();
    let rows: Vec<Vec<Outcome>> = pool.install(|| {
        (0..job.height)
            .into_par_iter()
            .map(|j| {
                (0..job.width)
                    .map(|i| classify_point(job.c, job.tau(i, j), job.budget).map(|v| v.outcome))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()
    })?;
    Ok(SliceImage {
        job: job.clone(),
        pixels: rows.into_iter().flatten().collect(),
        wall: start.elapsed(),
    })
}

fn parse_pair(s: &str) -> Option<(f64, f64)> {
    let (a, b) = s.split_once(',')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn parse_comment(line: &str) -> Option<(f64, Window, usize)> {
    let mut c = None;
    let mut re = None;
    let mut im = None;
    let mut budget = None;
    for tok in line.trim_start_matches('#').split_whitespace() {
        match tok.split_once('=') {
            Some(("c", v)) => c = v.parse().ok(),
            Some(("re", v)) => re = parse_pair(v),
            Some(("im", v)) => im = parse_pair(v),
            Some(("budget", v)) => budget = v.parse().ok(),
            _ => {}
        }
    }
    Some((c?, Window { re: re?, im: im? }, budget?))
}

/// Inverse of [`SliceImage::to_ppm`]; the job is recovered from the header comment.
pub fn read_ppm(bytes: &[u8]) -> Result<SliceImage, SliceError> {
    let bad = |m: &str| SliceError::Format(m.to_string());
    let mut pos = 0;
    let mut tokens = Vec::new();
    let mut meta = None;
    while tokens.len() < 4 {
        let end = bytes[pos..]
            .iter()
            .position(|b| *b == b'\n')
            .ok_or_else(|| bad("truncated header"))?
            + pos;
        let line = std::str::from_utf8(&bytes[pos..end]).map_err(|_| bad("header is not text"))?;
        pos = end + 1;
        if line.starts_with('#') {
            meta = meta.or_else(|| parse_comment(line));
            continue;
        }
        tokens.extend(line.split_whitespace().map(str::to_string));
    }
    if tokens[0] != "P6" || tokens[3] != "255" {
        return Err(bad("expected a P6 image with maxval 255"));
    }
    let (w, h): (usize, usize) = match (tokens[1].parse(), tokens[2].parse()) {
        (Ok(w), Ok(h)) => (w, h),
        _ => return Err(bad("bad dimensions")),
    };
    let (c, window, budget) = meta.ok_or_else(|| bad("missing slice metadata comment"))?;
    let body = &bytes[pos..];
    if body.len() != 3 * w * h {
        return Err(bad("pixel data length does not match dimensions"));
    }
    let pixels = body
        .chunks(3)
        .map(|rgb| match PALETTE.iter().position(|p| p == rgb) {
            Some(0) => Ok(Outcome::QF),
            Some(1) => Ok(Outcome::NotQF),
            Some(2) => Ok(Outcome::Undecided),
            _ => Err(bad("color outside the verdict palette")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    SliceImage::from_pixels(RasterJob::new(c, window, w, h, budget), pixels)
}
