use std::collections::VecDeque;

use bq::Outcome;

use crate::SliceImage;

/// 4-connected components of QF pixels.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentReport {
    pub count: usize,
    /// Pixel count per component, in discovery order (row-major scan).
    pub sizes: Vec<usize>,
    /// Components with a pixel on a row meeting `Im tau = 0`.
    pub real_axis: Vec<usize>,
    /// Per-pixel component index.
    pub labels: Vec<Option<usize>>,
}

impl ComponentReport {
    /// Exactly one component meets the real axis.
    pub fn bm_unique(&self) -> bool {
        self.real_axis.len() == 1
    }

    /// Share of QF pixels lying in the real-axis components.
    pub fn bm_fraction(&self) -> f64 {
        let total: usize = self.sizes.iter().sum();
        let bm: usize = self.real_axis.iter().map(|k| self.sizes[*k]).sum();
        if total == 0 {
            0.0
        } else {
            bm as f64 / total as f64
        }
    }
}

pub fn components(img: &SliceImage) -> ComponentReport {
    let (w, h) = (img.job.width, img.job.height);
    let mut labels: Vec<Option<usize>> = vec![None; w * h];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..w * h {
        if img.pixels[start] != Outcome::QF || labels[start].is_some() {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        labels[start] = Some(id);
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            size += 1;
            let (i, j) = (p % w, p / w);
            let mut visit = |q: usize| {
                if img.pixels[q] == Outcome::QF && labels[q].is_none() {
                    labels[q] = Some(id);
                    queue.push_back(q);
                }
            };
            if i > 0 {
                visit(p - 1);
            }
            if i + 1 < w {
                visit(p + 1);
            }
            if j > 0 {
                visit(p - w);
            }
            if j + 1 < h {
                visit(p + w);
            }
        }
        sizes.push(size);
    }
    let mut real_axis: Vec<usize> = img
        .job
        .real_axis_rows()
        .into_iter()
        .flat_map(|j| (0..w).filter_map(|i| labels[j * w + i]).collect::<Vec<_>>())
        .collect();
    real_axis.sort_unstable();
    real_axis.dedup();
    ComponentReport { count: sizes.len(), sizes, real_axis, labels }
}

const MISMATCH_CAP: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub enum CheckResult {
    Skipped(String),
    Done {
        pairs: usize,
        agree: usize,
        /// First mismatching pixels `(i, j)`, at most 100.
        mismatches: Vec<(usize, usize)>,
    },
}

impl CheckResult {
    pub fn fraction(&self) -> Option<f64> {
        match self {
            CheckResult::Done { pairs, agree, .. } if *pairs > 0 => Some(*agree as f64 / *pairs as f64),
            _ => None,
        }
    }

    fn tally(img: &SliceImage, partner: impl Fn(usize, usize) -> Option<(usize, usize)>) -> Self {
        let (mut pairs, mut agree, mut mismatches) = (0, 0, Vec::new());
        for j in 0..img.job.height {
            for i in 0..img.job.width {
                let Some((a, b)) = partner(i, j) else { continue };
                // each unordered pair once
                if (b, a) <= (j, i) {
                    continue;
                }
                pairs += 1;
                if img.get(i, j) == img.get(a, b) {
                    agree += 1;
                } else if mismatches.len() < MISMATCH_CAP {
                    mismatches.push((i, j));
                }
            }
        }
        if pairs == 0 {
            return CheckResult::Skipped("no pixel pairs inside the window".into());
        }
        CheckResult::Done { pairs, agree, mismatches }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    /// `tau` against `conj(tau)`.
    pub conjugation: CheckResult,
    /// `tau` against `-tau`.
    pub negation: CheckResult,
    /// `tau` against `tau + 2c`.
    pub periodicity: CheckResult,
}

fn symmetric(a: f64, b: f64, scale: f64) -> bool {
    (a + b).abs() <= 1e-9 * scale
}

pub fn symmetry_check(img: &SliceImage) -> SymmetryReport {
    let job = &img.job;
    let (w, h) = (job.width, job.height);
    let scale = (job.window.re.1 - job.window.re.0).max(job.window.im.1 - job.window.im.0);
    let im_sym = symmetric(job.window.im.0, job.window.im.1, scale);
    let re_sym = symmetric(job.window.re.0, job.window.re.1, scale);
    let conjugation = if im_sym {
        CheckResult::tally(img, |i, j| Some((i, h - 1 - j)))
    } else {
        CheckResult::Skipped("Im window not symmetric about 0".into())
    };
    let negation = if im_sym && re_sym {
        CheckResult::tally(img, |i, j| Some((w - 1 - i, h - 1 - j)))
    } else {
        CheckResult::Skipped("window not symmetric about 0".into())
    };
    let shift = 2.0 * job.c / job.dx();
    let periodicity = if job.window.re.1 - job.window.re.0 < 2.0 * job.c {
        CheckResult::Skipped("Re window narrower than 2c".into())
    } else if (shift - shift.round()).abs() > 1e-6 {
        CheckResult::Skipped(format!("2c is {shift} pixels, not a whole number"))
    } else {
        let s = shift.round() as usize;
        CheckResult::tally(img, |i, j| (i + s < w).then_some((i + s, j)))
    };
    SymmetryReport { conjugation, negation, periodicity }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{RasterJob, Window};

    fn image(w: usize, h: usize, f: impl Fn(usize, usize) -> Outcome) -> SliceImage {
        let job = RasterJob::new(1.0, Window { re: (-2.0, 2.0), im: (-1.0, 1.0) }, w, h, 10);
        let px = (0..h).flat_map(|j| (0..w).map(move |i| (i, j))).map(|(i, j)| f(i, j)).collect();
        SliceImage::from_pixels(job, px).unwrap()
    }

    #[test]
    fn checkerboard_components() {
        let img = image(6, 4, |i, j| if (i + j) % 2 == 0 { Outcome::QF } else { Outcome::NotQF });
        let r = components(&img);
        assert_eq!(r.count, 12);
        assert!(r.sizes.iter().all(|s| *s == 1));
        // rows 1 and 2 border Im = 0
        assert_eq!(r.real_axis.len(), 6);
    }

    #[test]
    fn blocks_and_undecided_gaps() {
        let img = image(5, 4, |i, _| match i {
            2 => Outcome::Undecided,
            _ => Outcome::QF,
        });
        let r = components(&img);
        assert_eq!(r.count, 2);
        assert_eq!(r.sizes, vec![8, 8]);
        assert!(!r.bm_unique());
        let one = components(&image(5, 4, |_, _| Outcome::QF));
        assert_eq!((one.count, one.bm_unique(), one.bm_fraction()), (1, true, 1.0));
    }

    #[test]
    fn uniform_image_is_symmetric() {
        let r = symmetry_check(&image(8, 6, |_, _| Outcome::QF));
        assert_eq!(r.conjugation.fraction(), Some(1.0));
        assert_eq!(r.negation.fraction(), Some(1.0));
        // 2c = 2 is 4 pixels of width 0.5
        assert_eq!(r.periodicity.fraction(), Some(1.0));
        assert!(matches!(r.periodicity, CheckResult::Done { pairs: 24, .. }));
    }

    #[test]
    fn mismatches_are_reported() {
        let r = symmetry_check(&image(8, 6, |i, j| if i == 0 && j == 0 { Outcome::NotQF } else { Outcome::QF }));
        assert_eq!(r.conjugation.fraction(), Some(23.0 / 24.0));
        let CheckResult::Done { mismatches, .. } = &r.negation else { panic!() };
        assert_eq!(mismatches, &vec![(0, 0)]);
    }

    #[test]
    fn skipped_checks() {
        let job = RasterJob::new(1.0, Window { re: (0.0, 1.5), im: (0.0, 1.0) }, 3, 2, 10);
        let img = SliceImage::from_pixels(job, vec![Outcome::QF; 6]).unwrap();
        let r = symmetry_check(&img);
        assert!(matches!(r.conjugation, CheckResult::Skipped(_)));
        assert!(matches!(r.negation, CheckResult::Skipped(_)));
        assert!(matches!(r.periodicity, CheckResult::Skipped(_)));
        let job = RasterJob::new(1.0, Window { re: (-1.5, 1.5), im: (-1.0, 1.0) }, 7, 2, 10);
        let img = SliceImage::from_pixels(job, vec![Outcome::QF; 14]).unwrap();
        assert!(matches!(symmetry_check(&img).periodicity, CheckResult::Skipped(_)));
    }
}
