//! Double-double complex numbers and the slice triple in closed form.
//!
//! Trace coordinates near the bottom of the tree are differences of
//! numbers of size `e^(2c + |Re tau|)`, so the search carries about 32
//! significant digits. The transcendental kernels are Taylor series in
//! double-double built on `twofloat`'s `+ - *` and division by `f64`
//! (its double-double by double-double quotient keeps only ~53 bits).

use moebius::C64;
use num_complex::Complex;
use twofloat::TwoFloat;

pub type Cdd = Complex<TwoFloat>;

pub fn lift(z: C64) -> Cdd {
    Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

pub fn lower(z: Cdd) -> C64 {
    C64::new(f64::from(z.re), f64::from(z.im))
}

/// `a / b` with one Newton correction.
pub fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q = a / b.hi();
    q + (a - b * q) / b.hi()
}

fn taylor(x: TwoFloat, terms: usize, step: impl Fn(usize) -> (usize, usize)) -> TwoFloat {
    let mut sum = TwoFloat::from(0.0);
    let mut term = TwoFloat::from(1.0);
    for k in 0..terms {
        if k > 0 {
            let (a, b) = step(k);
            term = term * x / ((a * b) as f64);
        }
        sum += term;
    }
    sum
}

/// `e^x` for real `x`, by halving into `[-1/2, 1/2]` and squaring back.
pub fn exp(x: f64) -> TwoFloat {
    let mut k = 0;
    let mut r = TwoFloat::from(x);
    while f64::from(r).abs() > 0.5 {
        r /= 2.0;
        k += 1;
    }
    let mut e = taylor(r, 30, |n| (n, 1));
    for _ in 0..k {
        e = e * e;
    }
    e
}

/// `(cos t, sin t)` for `|t| <= 2`.
pub fn cos_sin(t: f64) -> (TwoFloat, TwoFloat) {
    assert!(t.abs() <= 2.0);
    let t = TwoFloat::from(t);
    let t2 = -(t * t);
    let cos = taylor(t2, 40, |n| (2 * n - 1, 2 * n));
    let sin = t * taylor(t2, 40, |n| (2 * n, 2 * n + 1));
    (cos, sin)
}

/// `e^(tau/2)` for `|Im tau| <= pi`.
fn half_exp(tau: C64) -> Cdd {
    let m = exp(tau.re / 2.0);
    let (co, si) = cos_sin(tau.im / 2.0);
    Complex::new(m * co, m * si)
}

/// `(tr S1, tr R, tr S1 R)` for the once-punctured torus group at `(c, tau)`
/// with `Re tr R >= 0`.
pub fn slice_triple(c: f64, tau: C64) -> [Cdd; 3] {
    let one = TwoFloat::from(1.0);
    let two = TwoFloat::from(2.0);
    let ec = exp(c);
    let q = exp(-2.0 * c);
    let cosh2 = ec + exp(-c);
    let coth = div(one + q, one - q);
    let coth_m1 = div(two * q, one - q);
    let e = half_exp(tau);
    let ei = half_exp(-tau);
    let ch = (e + ei) * Complex::from(TwoFloat::from(0.5));
    let x = Complex::from(cosh2);
    let mut y = ch * Complex::from(two * coth);
    // coth(c) cosh(tau/2) - sinh(tau/2) without cancellation
    let mut z = (ch * Complex::from(coth_m1) + ei) * Complex::from(cosh2);
    let yre = f64::from(y.re);
    if yre < 0.0 || (yre == 0.0 && f64::from(y.im) < 0.0) {
        y = -y;
        z = -z;
    }
    [x, y, z]
}
