//! Surfaces assembled from standard pants glued along hypercycle strips.
//!
//! A [`SurfaceGraph`] records which boundary slots are glued and the
//! gluing data `(c, mu)` of each curve. Closed paths are given as
//! [`HolonomyChain`]s alternating pants-local words and gate crossings;
//! their holonomy is the ordered product of the local generators and the
//! transition maps `Omega_e^-1 J^-1 T_mu^-1 Omega_e'`.

mod chain;
mod file;
mod gluing;
mod graph;

pub use chain::{holonomy, HolonomyChain, Step};
pub use file::{parse_surface, surface_to_text};
pub use gluing::{
    convert_mu_to_t, convert_t_to_mu, gate_map, j_map, plumbing_coordinate, plumbing_matrix, t_map,
    GluingParams,
};
pub use graph::{Curve, SurfaceGraph};
pub use pants::Slot;

use pants::PantsError;

pub type Surface = SurfaceGraph<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SurfaceError {
    #[error("length parameter must be positive, got {0}")]
    BadLength(f64),
    #[error("Im(mu) = {0} outside [0, pi)")]
    ImaginaryRange(f64),
    #[error("pants index {0} out of range")]
    NoSuchPants(usize),
    #[error("no curve with id {0}")]
    NoSuchCurve(usize),
    #[error("duplicate curve id {0}")]
    DuplicateCurve(usize),
    #[error("slot P{0}.{1} used twice")]
    SlotReused(usize, Slot),
    #[error("puncture list does not match the unglued slots")]
    Punctures,
    #[error("chain step {step}: {reason}")]
    Chain { step: usize, reason: String },
    #[error("chain syntax: {0}")]
    Syntax(String),
    #[error("surface file: {0}")]
    File(String),
    #[error("pants P{pants}: {source}")]
    Pants { pants: usize, source: PantsError },
}

#[cfg(test)]
mod tests {
    use super::*;
    use moebius::{c, Complex, IsometryClass, Mat2C};
    use pants::{hypercycle_inf, Lengths};

    fn coth(x: f64) -> f64 {
        1.0 / x.tanh()
    }

    #[test]
    fn j_is_a_half_turn() {
        let j = j_map(1.0).unwrap();
        assert_eq!(j, Mat2C::from_real(0.0, -coth(0.5), 0.5f64.tanh(), 0.0));
        assert!((j * j).is_identity(1e-12));
        let p = c(0.0, coth(0.5));
        assert!((j.apply_c(p) - p).norm() < 1e-12);
        assert!(j_map(0.0).is_err());
        // the imaginary axis is preserved
        assert!(j.apply_c(c(0.0, 0.3)).re.abs() < 1e-12);
    }

    #[test]
    fn t_map_basics() {
        assert!(t_map(1.0, c(0.0, 0.0)).unwrap().is_identity(0.0));
        let t = t_map(1.0, c(0.3, 0.2)).unwrap();
        assert!((t.det() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn tj_preserves_inner_hypercycle() {
        let (cc, mu) = (0.9, c(0.4, 1.1));
        let h = hypercycle_inf(Lengths::new(cc, 1.0, 1.0), mu).unwrap();
        let tj = t_map(cc, mu).unwrap() * j_map(cc).unwrap();
        for a in [0.3, 1.2, 2.5] {
            let z = h.center + Complex::from_polar(h.radius, a);
            assert!(h.contains_point(tj.apply_c(z), 1e-12));
        }
    }

    #[test]
    fn gate_between_inf_slots() {
        let (cc, mu) = (0.8, c(0.3, 0.7));
        let g = Surface::four_holed_sphere(cc, mu).unwrap();
        let gate = gate_map(&g, 0, true).unwrap();
        let (ch, sh) = ((mu / 2.0).cosh(), (mu / 2.0).sinh());
        let expect = Mat2C::new(sh, ch * coth(cc / 2.0), -ch * (cc / 2.0).tanh(), -sh);
        assert!(gate.psl_distance(&expect) < 1e-12);
        let back = gate_map(&g, 0, false).unwrap();
        assert!((gate * back).is_identity(1e-12));
        // mu = i pi - m c
        let m = c(0.4, 1.3);
        let bold = c(0.0, std::f64::consts::PI) - m * cc;
        let g = Surface::four_holed_sphere(cc, bold).unwrap();
        let gate = gate_map(&g, 0, true).unwrap();
        let (ch, sh) = ((m * cc / 2.0).cosh(), (m * cc / 2.0).sinh());
        let expect = Mat2C::new(ch, -sh * coth(cc / 2.0), sh * (cc / 2.0).tanh(), -ch).scale(c(0.0, 1.0));
        assert!(gate.psl_distance(&expect) < 1e-12);
    }

    #[test]
    fn conversions() {
        let p = GluingParams::new(2.0, c(0.0, std::f64::consts::PI - 1e-15)).unwrap();
        assert!(convert_mu_to_t(p).norm() < 1e-14);
        let t = convert_mu_to_t(GluingParams::new(1.0, c(0.0, 0.0)).unwrap());
        assert!((t - c(0.0, std::f64::consts::PI)).norm() < 1e-15);
        let t = convert_mu_to_t(GluingParams::new(0.5, c(-0.5, 0.1)).unwrap());
        assert!((t - c(1.0, 2.0 * std::f64::consts::PI - 0.2)).norm() < 1e-12);
        assert!(GluingParams::new(1.0, c(0.0, 3.2)).is_err());
        assert!(GluingParams::new(-1.0, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn plumbing_on_the_axis() {
        let cc = 0.7;
        let r = coth(cc / 2.0);
        for a in [0.2, 1.0, 2.9] {
            let (zh, cut) = plumbing_coordinate(cc, Complex::from_polar(r, a)).unwrap();
            assert!(!cut);
            let expect = (-std::f64::consts::PI.powi(2) / (2.0 * cc)).exp();
            assert!((zh.norm() - expect).abs() < 1e-12 * expect.max(1e-300) + 1e-15);
        }
    }

    #[test]
    fn plumbing_is_invariant_under_the_boundary_element() {
        let cc: f64 = 0.6;
        let a = pants::standard_a_inf(cc);
        for z in [c(0.3, 0.9), c(-1.2, 0.4), c(2.0, 2.0)] {
            let (u, _) = plumbing_coordinate(cc, z).unwrap();
            let (v, _) = plumbing_coordinate(cc, a.apply_c(z)).unwrap();
            assert!((u - v).norm() <= 1e-9 * u.norm().max(1e-300));
        }
    }

    #[test]
    fn chain_parsing() {
        let g = Surface::four_holed_sphere(0.5, c(0.1, 0.2)).unwrap();
        let ch = HolonomyChain::parse("P0:[Ainf] ; gate(0,+) ; P1:[A0^-1 A1] ; gate(0,-)", &g).unwrap();
        assert_eq!(ch.base, Some(0));
        assert_eq!(ch.steps.len(), 4);
        assert_eq!(ch.to_string(), "P0:[Ainf] ; gate(0,+) ; P1:[A0^-1 A1] ; gate(0,-)");
        assert!(HolonomyChain::parse("P0:[B2]", &g).is_err());
        assert!(HolonomyChain::parse("gate(0,*)", &g).is_err());
        assert!(HolonomyChain::parse("gate(3,+)", &g).is_err());
    }

    #[test]
    fn holonomy_errors_name_the_step() {
        let g = Surface::four_holed_sphere(0.5, c(0.1, 0.2)).unwrap();
        let open = HolonomyChain::parse("P0:[Ainf] ; gate(0,+)", &g).unwrap();
        assert!(matches!(holonomy(&g, &open), Err(SurfaceError::Chain { step: 2, .. })));
        let wrong = HolonomyChain::parse("P0:[Ainf] ; P1:[A0]", &g).unwrap();
        assert!(matches!(holonomy(&g, &wrong), Err(SurfaceError::Chain { step: 1, .. })));
        let back = HolonomyChain::parse("P0:[Ainf] ; gate(0,-)", &g).unwrap();
        assert!(matches!(holonomy(&g, &back), Err(SurfaceError::Chain { step: 1, .. })));
        assert!(holonomy(&g, &HolonomyChain::default()).unwrap().is_identity(0.0));
    }

    #[test]
    fn curve_chains_have_the_curve_length() {
        let g = Surface::one_holed_torus(0.9, c(0.2, 0.5)).unwrap();
        let m = holonomy(&g, &g.curve_chain(0).unwrap()).unwrap();
        assert_eq!(m.classify(), IsometryClass::Loxodromic);
        assert!((m.translation_length().unwrap().re - 1.8).abs() < 1e-9);
    }

    #[test]
    fn graph_validation() {
        let cv = |id, ends, cc| Curve { id, ends, c: cc, mu: c(0.0, 0.0) };
        assert!(Surface::new(1, vec![cv(0, [(0, Slot::Inf), (0, Slot::Inf)], 1.0)]).is_err());
        assert!(Surface::new(1, vec![cv(0, [(0, Slot::Inf), (1, Slot::Zero)], 1.0)]).is_err());
        assert!(Surface::new(1, vec![cv(0, [(0, Slot::Inf), (0, Slot::Zero)], 0.0)]).is_err());
        let g = Surface::one_holed_torus(0.9, c(0.2, 0.5)).unwrap();
        assert_eq!(g.punctures(), vec![(0, Slot::One)]);
    }

    #[test]
    fn canonicalization_rotates_punctures_last() {
        let g = Surface::new(
            1,
            vec![Curve { id: 4, ends: [(0, Slot::Zero), (0, Slot::One)], c: 0.8, mu: c(0.0, 0.3) }],
        )
        .unwrap();
        assert!(g.pants_group(0).is_err());
        let (h, turns) = g.canonicalized();
        assert_eq!(turns, vec![1]);
        assert_eq!(h.curve(4).unwrap().ends, [(0, Slot::Inf), (0, Slot::Zero)]);
        assert!(h.pants_group(0).is_ok());
    }

    #[test]
    fn twisting() {
        let g = Surface::one_holed_torus(0.7, c(-0.7, 0.4)).unwrap();
        assert_eq!(g.apply_twist(0, 0).unwrap(), g);
        assert!(g.twist_count(0).unwrap().abs() < 1e-15);
        let h = g.apply_twist(0, 2).unwrap();
        assert!((h.curve(0).unwrap().mu - c(2.1, 0.4)).norm() < 1e-12);
        assert!((h.twist_count(0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn file_round_trip() {
        let text = "pants = 1\npunctures = [\"P0.1\"]\n\n[[curve]]\nid = 0\nends = [\"P0.inf\", \"P0.0\"]\nc = 0.7\nmu = [0.3, 0.2]\n";
        let g = parse_surface(text).unwrap();
        assert_eq!(g, Surface::one_holed_torus(0.7, c(0.3, 0.2)).unwrap());
        assert_eq!(parse_surface(&surface_to_text(&g)).unwrap(), g);
        assert!(parse_surface(&text.replace("P0.1", "P0.0")).is_err());
        assert!(parse_surface(&text.replace("P0.inf", "Q0.inf")).is_err());
        assert!(parse_surface("pants = 1\nbogus = 2\n").is_err());
    }
}
