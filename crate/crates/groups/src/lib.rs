//! Explicit groups for the once-punctured torus and the four-holed sphere.
//!
//! The torus group is an HNN extension of `<S1, S2>` by `R_mu`, the
//! sphere group an amalgamated product of `<V1, V2>` and its conjugate by
//! `U_mu`. Both serve as oracles and as the parameter source for the
//! trace-tree test.

use moebius::{Complex, Moebius, Real};

pub type Hnn = HnnGroup<f64>;
pub type Afp = AfpGroup<f64>;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error("length parameter must be positive, got {0}")]
    BadLength(f64),
    #[error("degenerate trace triple")]
    Degenerate,
}

fn coth<T: Real>(x: T) -> T {
    x.tanh().recip()
}

fn check<T: Real>(c: T) -> Result<(), GroupError> {
    if c > T::zero() && c.is_finite() {
        Ok(())
    } else {
        Err(GroupError::BadLength(c.to_f64().unwrap_or(f64::NAN)))
    }
}

pub fn s1<T: Real>(c: T) -> Moebius<T> {
    let ch = c.cosh();
    Moebius::from_real(ch, ch + T::one(), ch - T::one(), ch)
}

pub fn s2<T: Real>(c: T) -> Moebius<T> {
    let ch = c.cosh();
    Moebius::from_real(ch, ch - T::one(), ch + T::one(), ch)
}

pub fn r_mu<T: Real>(c: T, mu: Complex<T>) -> Moebius<T> {
    let h = mu / T::lit(2.0);
    let (ch, sh) = (h.cosh(), h.sinh());
    let k = c / T::lit(2.0);
    Moebius::new(ch.scale(coth(k)), -sh, -sh, ch.scale(k.tanh()))
}

pub fn u_mu<T: Real>(c: T, mu: Complex<T>) -> Moebius<T> {
    let h = mu / T::lit(2.0);
    let (ch, sh) = (h.cosh(), h.sinh());
    let k = c / T::lit(2.0);
    Moebius::new(sh, ch.scale(coth(k)), -ch.scale(k.tanh()), -sh)
}

/// Rotation by pi about `i`.
pub fn l_map<T: Real>() -> Moebius<T> {
    Moebius::from_real(T::zero(), -T::one(), T::one(), T::zero())
}

#[derive(Clone, Debug, PartialEq)]
pub struct HnnGroup<T> {
    pub c: T,
    pub mu: Complex<T>,
    pub s1: Moebius<T>,
    pub s2: Moebius<T>,
    pub r: Moebius<T>,
    pub u: Moebius<T>,
    pub k1: Moebius<T>,
    pub k2: Moebius<T>,
    /// Isometric circles `|z +- c1| = r1` of `S1^{-+1}` and `|z +- c2| = r2` of `S2^{-+1}`.
    pub circles: [(T, T); 2],
}

impl<T: Real> HnnGroup<T> {
    pub fn build(c: T, mu: Complex<T>) -> Result<Self, GroupError> {
        check(c)?;
        let (s1, s2) = (s1(c), s2(c));
        let ch = c.cosh();
        let one = T::one();
        Ok(HnnGroup {
            c,
            mu,
            s1,
            s2,
            r: r_mu(c, mu),
            u: u_mu(c, mu),
            k1: s2.inverse() * s1,
            k2: s1 * s2.inverse(),
            circles: [(ch / (ch - one), one / (ch - one)), (ch / (ch + one), one / (ch + one))],
        })
    }

    pub fn commutator(&self) -> Moebius<T> {
        self.s1 * self.r * self.s1.inverse() * self.r.inverse()
    }

    /// `Q3 = R_mu(i tanh(c/2))`, the image of the foot on the axis of `S2`.
    pub fn q3(&self) -> Complex<T> {
        let q2 = Complex::new(T::zero(), (self.c / T::lit(2.0)).tanh());
        self.r.apply_c(q2)
    }

    /// Traces `(tr S1, tr R, tr S1 R)` with signs chosen so that
    /// `Re x > 0` and `Re y > 0`; the Markov identity holds for any lift.
    pub fn trace_triple(&self) -> Result<[Complex<T>; 3], GroupError> {
        let mut x = self.s1.trace();
        let mut y = self.r.trace();
        let mut z = (self.s1 * self.r).trace();
        if x.re < T::zero() {
            x = -x;
            z = -z;
        }
        if y.re < T::zero() || (y.re == T::zero() && y.im < T::zero()) {
            y = -y;
            z = -z;
        }
        if [x, y, z].iter().any(|w| !w.norm().is_finite()) {
            return Err(GroupError::Degenerate);
        }
        Ok([x, y, z])
    }

    /// Named relation residuals (PSL distances, trace deviation).
    pub fn residuals(&self) -> Vec<(&'static str, T)> {
        let two = Complex::new(T::lit(-2.0), T::zero());
        vec![
            ("R S2 R^-1 = S1", self.s2.conjugated_by(&self.r).psl_distance(&self.s1)),
            ("U S1 U^-1 = S1^-1", self.s1.conjugated_by(&self.u).psl_distance(&self.s1.inverse())),
            ("R = U L", self.r.psl_distance(&(self.u * l_map()))),
            ("tr[S1,R] = -2", (self.commutator().trace() - two).norm()),
            ("tr K1 = -2", (self.k1.trace() - two).norm()),
            ("tr K2 = -2", (self.k2.trace() - two).norm()),
        ]
    }

    /// The hypercycle circle around the axis of `S2` that `R` carries onto
    /// its image circle around the axis of `S1`, as (center, radius).
    pub fn hypercycle_pair(&self) -> [(Complex<T>, T); 2] {
        let th = self.mu.im / T::lit(2.0);
        let k = self.c / T::lit(2.0);
        let (t, ct) = (k.tanh(), coth(k));
        [
            (Complex::new(T::zero(), t * th.tan()), t / th.cos()),
            (Complex::new(T::zero(), -ct * th.tan()), ct / th.cos()),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AfpGroup<T> {
    pub c: T,
    pub mu: Complex<T>,
    pub s1: Moebius<T>,
    pub u: Moebius<T>,
    pub v: [Moebius<T>; 4],
    /// `(C1', R1')` and `(|C2'|, R2')` of the alternative fundamental set:
    /// images of the unit circle under `V1`, `V2^-1`, and the isometric
    /// circles of `S1^{+-2}`.
    pub fhat: [(T, T); 2],
}

impl<T: Real> AfpGroup<T> {
    pub fn build(c: T, mu: Complex<T>) -> Result<Self, GroupError> {
        check(c)?;
        let ch = c.cosh();
        let one = T::one();
        let two = T::lit(2.0);
        let v1 = Moebius::from_real(ch + one, ch, -ch, one - ch);
        let v2 = Moebius::from_real(ch - one, -ch, ch, -ch - one);
        let u = u_mu(c, mu);
        let den = two * ch * (ch - one);
        Ok(AfpGroup {
            c,
            mu,
            s1: s1(c),
            u,
            v: [v1, v2, v1.conjugated_by(&u), v2.conjugated_by(&u)],
            fhat: [
                (two * ch / (two * ch - one), one / (two * ch - one)),
                (((one - two * ch * ch) / den).abs(), one / den),
            ],
        })
    }

    pub fn residuals(&self) -> Vec<(&'static str, T)> {
        let [v1, v2, v3, v4] = self.v;
        let s = self.s1;
        vec![
            ("V1 V2 V3 V4 = Id", (v1 * v2 * v3 * v4).psl_distance(&Moebius::identity())),
            ("V1 V2 = S1^-2", (v1 * v2).psl_distance(&s.pow(-2))),
            ("U S1 U^-1 = S1^-1", s.conjugated_by(&self.u).psl_distance(&s.inverse())),
        ]
    }
}
