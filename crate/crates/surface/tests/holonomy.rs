use groups::{r_mu, u_mu};
use moebius::{c, Complex};
use proptest::prelude::*;
use surface::{
    convert_mu_to_t, convert_t_to_mu, holonomy, j_map, plumbing_coordinate, t_map, Curve, GluingParams,
    HolonomyChain, Slot, Surface,
};

fn params() -> impl Strategy<Value = (f64, Complex<f64>)> {
    (0.2..3.0f64, -3.0..3.0f64, 0.0..3.1f64).prop_map(|(cc, re, im)| (cc, c(re, im)))
}

fn genus_two(cs: [f64; 3], mus: [Complex<f64>; 3]) -> Surface {
    let slots = [Slot::Inf, Slot::Zero, Slot::One];
    let curves = (0..3)
        .map(|k| Curve { id: k, ends: [(0, slots[k]), (1, slots[k])], c: cs[k], mu: mus[k] })
        .collect();
    Surface::new(2, curves).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_curve_matches_the_hnn_generator((cc, mu) in params()) {
        let g = Surface::one_holed_torus(cc, mu).unwrap();
        let dual = holonomy(&g, &HolonomyChain::parse("gate(0,+)", &g).unwrap()).unwrap();
        let oracle = r_mu(cc, mu + c(cc, 0.0));
        let (a, b) = (dual.trace().norm(), oracle.trace().norm());
        prop_assert!((a - b).abs() <= 1e-6 * b.max(1.0));
        let pc = holonomy(&g, &HolonomyChain::parse("P0:[Ainf]", &g).unwrap()).unwrap();
        prop_assert!((pc.trace().norm() - 2.0 * cc.cosh()).abs() <= 1e-8);
    }

    #[test]
    fn tj_is_u_inverse((cc, mu) in params()) {
        let tj = t_map(cc, mu).unwrap() * j_map(cc).unwrap();
        prop_assert!(tj.psl_distance(&u_mu(cc, mu).inverse()) <= 1e-10 * tj.max_entry().max(1.0));
    }

    #[test]
    fn plumbing_identity((cc, mu) in params(), a in 0.2..2.9f64, s in -0.3..0.3f64) {
        let p = GluingParams::new(cc, mu).unwrap();
        let r = 1.0 / (cc / 2.0).tanh();
        let x = Complex::from_polar(r * s.exp(), a);
        let tj = t_map(cc, mu).unwrap() * j_map(cc).unwrap();
        let (u, _) = plumbing_coordinate(cc, x).unwrap();
        let (v, _) = plumbing_coordinate(cc, tj.apply_c(x)).unwrap();
        let expect = (c(0.0, std::f64::consts::PI) * convert_mu_to_t(p)).exp();
        prop_assert!((u * v - expect).norm() <= 1e-8 * expect.norm());
    }

    #[test]
    fn conversion_round_trip((cc, mu) in params()) {
        let t = convert_mu_to_t(GluingParams::new(cc, mu).unwrap());
        prop_assert!((convert_t_to_mu(cc, t) - mu).norm() <= 1e-12);
    }

    #[test]
    fn rotating_a_chain_preserves_its_trace(
        cs in proptest::array::uniform3(0.3..2.0f64),
        re in proptest::array::uniform3(-1.0..1.0f64),
        im in proptest::array::uniform3(0.0..1.5f64),
    ) {
        let g = genus_two(cs, [c(re[0], im[0]), c(re[1], im[1]), c(re[2], im[2])]);
        let chain = HolonomyChain::parse("P0:[Ainf A1] ; gate(1,+) ; P1:[A0 A1^-1] ; gate(2,-) ; P0:[A0]", &g).unwrap();
        let rotated = HolonomyChain::parse("P1:[A0 A1^-1] ; gate(2,-) ; P0:[A0] ; P0:[Ainf A1] ; gate(1,+)", &g).unwrap();
        let (x, y) = (holonomy(&g, &chain).unwrap().trace(), holonomy(&g, &rotated).unwrap().trace());
        prop_assert!((x - y).norm().min((x + y).norm()) <= 1e-8 * x.norm().max(1.0));
    }

    #[test]
    fn every_curve_has_length_2c(
        cs in proptest::array::uniform3(0.3..2.0f64),
        im in proptest::array::uniform3(0.0..1.5f64),
    ) {
        let g = genus_two(cs, [c(0.1, im[0]), c(-0.4, im[1]), c(0.7, im[2])]);
        for cv in &g.curves {
            for end in [0, 1] {
                let (p, s) = cv.ends[end];
                let letter = match s { Slot::Inf => "Ainf", Slot::Zero => "A0", Slot::One => "A1" };
                let chain = HolonomyChain::parse(&format!("P{p}:[{letter}]"), &g).unwrap();
                let l = holonomy(&g, &chain).unwrap().translation_length().unwrap();
                prop_assert!((l.re - 2.0 * cv.c).abs() <= 1e-8);
            }
        }
    }
}

#[test]
fn dehn_twist_changes_only_the_dual_trace() {
    let g = Surface::one_holed_torus(0.8, c(0.1, 0.6)).unwrap();
    let h = g.apply_twist(0, 1).unwrap();
    let pc = |s: &Surface| holonomy(s, &HolonomyChain::parse("P0:[Ainf]", s).unwrap()).unwrap().trace().norm();
    let dual = |s: &Surface| holonomy(s, &HolonomyChain::parse("gate(0,+)", s).unwrap()).unwrap().trace().norm();
    assert!((pc(&g) - pc(&h)).abs() < 1e-12);
    assert!((dual(&g) - dual(&h)).abs() > 1e-3);
    // the twisted dual curve is the original dual composed with the pants curve
    let comp = holonomy(&g, &HolonomyChain::parse("gate(0,+) ; P0:[A0^-1]", &g).unwrap()).unwrap();
    let comp2 = holonomy(&g, &HolonomyChain::parse("gate(0,+) ; P0:[A0]", &g).unwrap()).unwrap();
    let d = dual(&h);
    assert!((comp.trace().norm() - d).abs().min((comp2.trace().norm() - d).abs()) < 1e-9);
}

#[test]
fn four_holed_sphere_chain() {
    let g = Surface::four_holed_sphere(0.6, c(0.2, 0.4)).unwrap();
    let chain = HolonomyChain::parse("P0:[A0] ; gate(0,+) ; P1:[A0] ; gate(0,-)", &g).unwrap();
    let m = holonomy(&g, &chain).unwrap();
    assert!((m.det() - c(1.0, 0.0)).norm() < 1e-12);
}
