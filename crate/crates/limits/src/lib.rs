//! Gluing data for the thrice-punctured sphere and numerical convergence
//! of the length-`c` construction to it as `c -> 0` with
//! `mu = (i pi - bold_mu) / c` held fixed.

use moebius::{Complex, Moebius, Real, SpherePoint};
use pants::{hypercycle_inf, omega, BoundaryLengths, PantsError, PantsGroup, Slot};
use surface::{j_map, t_map, SurfaceError};

/// Smallest `c` accepted; below it `coth(c/2)` amplifies rounding too much.
pub const PRECISION_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LimitError {
    #[error("Im(mu) must be positive, got {0}")]
    ImMu(f64),
    #[error("c sequence must be strictly decreasing and positive")]
    NotDecreasing,
    #[error("c = {0:e} is below the precision floor {PRECISION_FLOOR:e}")]
    Floor(f64),
    #[error("c = {0} too large: Im(i pi - mu c) leaves [0, pi)")]
    TooLarge(f64),
    #[error(transparent)]
    Pants(#[from] PantsError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// The cusped gluing maps and generators.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspedGluingData<T> {
    pub mu: Complex<T>,
    pub a_inf: Moebius<T>,
    pub a0: Moebius<T>,
    pub j: Moebius<T>,
    pub t: Moebius<T>,
    pub omega0: Moebius<T>,
    pub omega1: Moebius<T>,
    pub omega_inf: Moebius<T>,
    /// Height of the horocycle `Im z = Im(mu)/2` the strips are glued along.
    pub horocycle_height: T,
}

impl<T: Real> CuspedGluingData<T> {
    pub fn new(mu: Complex<T>) -> Result<Self, LimitError> {
        if !(mu.im > T::zero()) {
            return Err(LimitError::ImMu(mu.im.to_f64().unwrap_or(f64::NAN)));
        }
        let (o, z, one) = (T::one(), T::zero(), Complex::new(T::one(), T::zero()));
        let i = Complex::new(T::zero(), T::one());
        let nil = Complex::new(T::zero(), T::zero());
        Ok(CuspedGluingData {
            mu,
            a_inf: Moebius::from_real(o, T::lit(2.0), z, o),
            a0: Moebius::from_real(o, z, T::lit(-2.0), o),
            j: Moebius::new(-i, nil, nil, i),
            t: Moebius::new(one, mu, nil, one),
            omega0: Moebius::from_real(o, -o, o, z),
            omega1: Moebius::from_real(z, -o, o, -o),
            omega_inf: Moebius::identity(),
            horocycle_height: mu.im / T::lit(2.0),
        })
    }

    /// `J^-1 T_mu^-1 = i [[1, -mu], [0, -1]]`.
    pub fn gate(&self) -> Moebius<T> {
        (self.t * self.j).inverse()
    }
}

/// Quantities tracked by [`limit_check`], in report order.
pub const QUANTITIES: [&str; 9] = [
    "A_inf",
    "A_0",
    "Omega_0",
    "Omega_1",
    "gate",
    "hypercycle",
    "Fix A_inf",
    "Fix A_0",
    "Fix A_1",
];

#[derive(Clone, Debug, PartialEq)]
pub struct QuantityTrack<T> {
    pub name: &'static str,
    pub deviations: Vec<T>,
    pub monotone: bool,
    /// Final deviation within 10x the first, scaled by `c_last / c_first`.
    pub rate_ok: bool,
    /// Log-log least squares slope; informational.
    pub decay_order: Option<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport<T> {
    pub mu: Complex<T>,
    pub cs: Vec<T>,
    pub quantities: Vec<QuantityTrack<T>>,
}

impl<T: Real> ConvergenceReport<T> {
    pub fn get(&self, name: &str) -> Option<&QuantityTrack<T>> {
        self.quantities.iter().find(|q| q.name == name)
    }

    pub fn all_monotone(&self) -> bool {
        self.quantities.iter().all(|q| q.monotone)
    }

    pub fn to_table(&self) -> String {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let mut out = format!("{:<10}", "quantity");
        for c in &self.cs {
            out += &format!(" {:>12}", format!("c={}", f(*c)));
        }
        out += "  monotone  rate  order\n";
        for q in &self.quantities {
            out += &format!("{:<10}", q.name);
            for d in &q.deviations {
                out += &format!(" {:>12.4e}", f(*d));
            }
            let order = q.decay_order.map_or("-".to_string(), |o| format!("{:.2}", f(o)));
            out += &format!("  {:<8}  {:<4}  {}\n", q.monotone, q.rate_ok, order);
        }
        out
    }
}

fn deviations_at<T: Real>(mu: Complex<T>, c: T, lim: &CuspedGluingData<T>) -> Result<Vec<T>, LimitError> {
    let bold = Complex::new(T::zero(), T::PI()) - mu * c;
    if !(bold.im >= T::zero() && bold.im < T::PI()) {
        return Err(LimitError::TooLarge(c.to_f64().unwrap_or(f64::NAN)));
    }
    let lengths = BoundaryLengths::new(c, c, c);
    let p = PantsGroup::build(lengths)?;
    let gate = (t_map(c, bold)? * j_map(c)?).inverse();
    let hyp = hypercycle_inf(lengths, bold)?.imaginary_axis_point();
    let target = Complex::new(T::zero(), lim.horocycle_height);
    let far = |s: Slot, q: SpherePoint<T>| -> Result<T, LimitError> {
        let (x, y) = p.fixed_points(s)?;
        Ok(x.chordal(&q).max(y.chordal(&q)))
    };
    Ok(vec![
        p.a_inf.psl_distance(&lim.a_inf),
        p.a0.psl_distance(&lim.a0),
        omega(Slot::Zero, lengths)?.psl_distance(&lim.omega0),
        omega(Slot::One, lengths)?.psl_distance(&lim.omega1),
        gate.psl_distance(&lim.gate()),
        (hyp - target).norm(),
        far(Slot::Inf, SpherePoint::Infinity)?,
        far(Slot::Zero, SpherePoint::real(T::zero()))?,
        far(Slot::One, SpherePoint::real(T::one()))?,
    ])
}

fn slope<T: Real>(cs: &[T], ds: &[T]) -> Option<T> {
    let pts: Vec<(T, T)> = cs
        .iter()
        .zip(ds)
        .filter(|(_, d)| **d > T::zero())
        .map(|(c, d)| (c.ln(), d.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = T::from_usize(pts.len())?;
    let mx = pts.iter().fold(T::zero(), |s, p| s + p.0) / n;
    let my = pts.iter().fold(T::zero(), |s, p| s + p.1) / n;
    let sxy = pts.iter().fold(T::zero(), |s, p| s + (p.0 - mx) * (p.1 - my));
    let sxx = pts.iter().fold(T::zero(), |s, p| s + (p.0 - mx) * (p.0 - mx));
    (sxx > T::zero()).then(|| sxy / sxx)
}

/// Deviations of the length-`c` data from the cusped data along `cs`.
pub fn limit_check<T: Real>(mu: Complex<T>, cs: &[T]) -> Result<ConvergenceReport<T>, LimitError> {
    let lim = CuspedGluingData::new(mu)?;
    if cs.is_empty() || cs.windows(2).any(|w| !(w[1] < w[0])) || !(cs[cs.len() - 1] > T::zero()) {
        return Err(LimitError::NotDecreasing);
    }
    if let Some(c) = cs.iter().find(|c| **c < T::lit(PRECISION_FLOOR)) {
        return Err(LimitError::Floor(c.to_f64().unwrap_or(f64::NAN)));
    }
    let rows = cs.iter().map(|&c| deviations_at(mu, c, &lim)).collect::<Result<Vec<_>, _>>()?;
    let ratio = cs[cs.len() - 1] / cs[0];
    let quantities = QUANTITIES
        .iter()
        .enumerate()
        .map(|(k, &name)| {
            let deviations: Vec<T> = rows.iter().map(|r| r[k]).collect();
            let first = deviations[0];
            let last = deviations[deviations.len() - 1];
            QuantityTrack {
                name,
                monotone: deviations.windows(2).all(|w| w[1] <= w[0]),
                rate_ok: last <= T::lit(10.0) * first * ratio,
                decay_order: slope(cs, &deviations),
                deviations,
            }
        })
        .collect();
    Ok(ConvergenceReport { mu, cs: cs.to_vec(), quantities })
}

#[cfg(test)]
mod tests {
    use super::*;
    use moebius::{c, IsometryClass, Mat2C};

    #[test]
    fn cusped_maps() {
        let d = CuspedGluingData::new(c(0.0, 2.0)).unwrap();
        assert_eq!(d.t, Mat2C::new(c(1.0, 0.0), c(0.0, 2.0), c(0.0, 0.0), c(1.0, 0.0)));
        assert_eq!(d.t.classify(), IsometryClass::Parabolic);
        let mu = c(0.7, 1.3);
        let d = CuspedGluingData::new(mu).unwrap();
        let expect = Mat2C::new(c(1.0, 0.0), -mu, c(0.0, 0.0), c(-1.0, 0.0)).scale(c(0.0, 1.0));
        assert!(d.gate().psl_distance(&expect) < 1e-15);
        assert_eq!(CuspedGluingData::new(c(1.0, 2.0)).unwrap().horocycle_height, 1.0);
        assert!(CuspedGluingData::new(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn cusped_relation() {
        let d = CuspedGluingData::<f64>::new(c(0.0, 1.0)).unwrap();
        let a1 = (d.a_inf * d.a0).inverse();
        assert_eq!(a1.classify(), IsometryClass::Parabolic);
    }

    #[test]
    fn convergence_at_mu_2i() {
        let r = limit_check(c(0.0, 2.0), &[0.1, 0.01, 0.001]).unwrap();
        assert_eq!(r.quantities.len(), QUANTITIES.len());
        assert!(r.all_monotone(), "{}", r.to_table());
        for name in ["A_inf", "A_0", "Omega_0", "Omega_1", "gate"] {
            let last = *r.get(name).unwrap().deviations.last().unwrap();
            assert!(last <= 1e-5, "{name}: {last}");
        }
        assert!(*r.get("hypercycle").unwrap().deviations.last().unwrap() <= 1e-4);
        let order: f64 = r.get("A_inf").unwrap().decay_order.unwrap();
        assert!((order - 2.0).abs() < 0.1);
    }

    #[test]
    fn rejects_bad_sequences() {
        assert_eq!(limit_check(c(0.0, 2.0), &[0.01, 0.1]), Err(LimitError::NotDecreasing));
        assert_eq!(limit_check(c(0.0, 2.0), &[0.1, 1e-7]), Err(LimitError::Floor(1e-7)));
        assert_eq!(limit_check(c(0.0, -1.0), &[0.1]), Err(LimitError::ImMu(-1.0)));
        assert!(matches!(limit_check(c(0.0, 2.0), &[2.0, 1.0]), Err(LimitError::TooLarge(_))));
    }

    #[test]
    fn table_lists_every_quantity() {
        let r = limit_check(c(0.5, 1.0), &[0.1, 0.05]).unwrap();
        let t = r.to_table();
        assert_eq!(t.lines().count(), 1 + QUANTITIES.len());
    }
}
