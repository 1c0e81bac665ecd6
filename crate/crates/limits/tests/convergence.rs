use limits::{limit_check, CuspedGluingData, LimitError, QUANTITIES};
use moebius::{c, Complex};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn deviations_shrink_like_c_squared(re in -2.0f64..2.0, im in 0.3f64..3.0) {
        let r = limit_check(c(re, im), &[0.05, 0.005, 0.0005]).unwrap();
        for name in ["A_inf", "A_0", "Omega_0", "Omega_1", "gate"] {
            let q = r.get(name).unwrap();
            prop_assert!(q.monotone && q.rate_ok, "{}", r.to_table());
            let order = q.decay_order.unwrap();
            prop_assert!(order > 1.8, "{} order {}", name, order);
        }
        let h = r.get("hypercycle").unwrap();
        prop_assert!(h.monotone && *h.deviations.last().unwrap() < 1e-4);
    }

    #[test]
    fn cusped_gate_conjugates_parabolics(re in -2.0f64..2.0, im in 0.1f64..3.0) {
        let d = CuspedGluingData::new(c(re, im)).unwrap();
        let g = d.gate();
        // the gate normalizes the stabilizer of infinity
        prop_assert!(d.a_inf.conjugated_by(&g).c.norm() < 1e-12);
    }
}

#[test]
fn single_precision_run() {
    let mu: Complex<f32> = c(0.0, 2.0);
    let r = limit_check(mu, &[0.1f32, 0.05, 0.02]).unwrap();
    assert_eq!(r.quantities.len(), QUANTITIES.len());
    let a = r.get("A_inf").unwrap();
    assert!(a.monotone && a.deviations[2] < 1e-3);
}

#[test]
fn errors() {
    assert!(matches!(limit_check(c(0.0, 2.0), &[]), Err(LimitError::NotDecreasing)));
    assert!(matches!(limit_check(c(0.0, 2.0), &[0.1, 0.1]), Err(LimitError::NotDecreasing)));
    assert!(matches!(limit_check(c(0.0, 2.0), &[1e-5, 5e-7]), Err(LimitError::Floor(_))));
}
