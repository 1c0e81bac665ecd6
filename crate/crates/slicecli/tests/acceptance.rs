//! Acceptance criteria 1-9. Each criterion prints one PASS/FAIL line with
//! its measured figures; the test fails if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use groups::{r_mu, u_mu, Afp, Hnn};
use limits::limit_check;
use moebius::{c, IsometryClass, Mat2C, Point, C64};
use pants::{BoundaryLengths, PantsGroup, Slot};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slicecli::{components, render, symmetry_check, Outcome, RasterJob, Window};
use surface::{
    convert_mu_to_t, convert_t_to_mu, holonomy, j_map, plumbing_coordinate, t_map, GluingParams, HolonomyChain,
    Surface,
};

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn timed(f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pants_suite() -> Verdict {
    let mut r = rng(1);
    let mut worst = 0f64;
    for _ in 0..200 {
        let l = [0; 3].map(|_| r.gen_range(0.05..3.0));
        let p = PantsGroup::build(BoundaryLengths::new(l[0], l[1], l[2])).unwrap();
        let mut res = vec![(p.a_inf * p.a0 * p.a1).psl_distance(&Mat2C::identity())];
        for (k, s) in Slot::ALL.into_iter().enumerate() {
            let g = p.generator(s);
            res.push((g.det() - c(1.0, 0.0)).norm());
            res.push((g.trace() - c(2.0 * l[k].cosh(), 0.0)).norm());
        }
        let rr = 1.0 / (l[0] / 2.0).tanh();
        let (rep, att) = p.a_inf.fixed_points().unwrap();
        res.push(rep.chordal(&Point::real(-rr)));
        res.push(att.chordal(&Point::real(rr)));
        worst = res.into_iter().fold(worst, f64::max);
    }
    verdict(worst <= 1e-9, format!("200 triples, worst residual {worst:.2e}"))
}

fn degenerate_suite() -> Verdict {
    let mut ok = true;
    let mut worst = 0f64;
    for c1 in [0.05, 0.4, 1.0, 2.5] {
        let p = PantsGroup::build(BoundaryLengths::new(c1, 0.0, 0.0)).unwrap();
        ok &= p.a0 == Mat2C::from_real(1.0, 0.0, -2.0, 1.0);
        ok &= p.a0.classify() == IsometryClass::Parabolic && p.a1.classify() == IsometryClass::Parabolic;
        for c2 in [0.05, 0.7, 2.0] {
            let q = PantsGroup::build(BoundaryLengths::new(c1, c2, 0.0)).unwrap();
            worst = worst.max((q.a0.trace() - c(2.0 * c2.cosh(), 0.0)).norm());
            ok &= q.a1.classify() == IsometryClass::Parabolic;
        }
    }
    let z = PantsGroup::build(BoundaryLengths::new(0.0, 0.0, 0.0)).unwrap();
    ok &= Slot::ALL.iter().all(|s| z.generator(*s).classify() == IsometryClass::Parabolic);
    verdict(ok && worst <= 1e-9, format!("exact cusp matrix and parabolics: {ok}, tr A_0 residual {worst:.2e}"))
}

fn on_circle(z: C64, circle: (C64, f64)) -> f64 {
    ((z - circle.0).norm() - circle.1).abs() / (1.0 + circle.1)
}

fn explicit_groups() -> Verdict {
    let mut r = rng(3);
    let mut worst: (f64, &str) = (0.0, "");
    for _ in 0..1000 {
        let cc: f64 = r.gen_range(0.1..3.0);
        let mu = c(r.gen_range(-3.0..3.0), r.gen_range(-PI + 1e-6..PI));
        let h = Hnn::build(cc, mu).unwrap();
        let a = Afp::build(cc, mu).unwrap();
        let mut res = h.residuals();
        res.extend(a.residuals());
        let [inner, outer] = h.hypercycle_pair();
        for t in [0.4, 1.7, 2.9] {
            let z = inner.0 + c(0.0, t).exp() * inner.1;
            res.push(("R maps hypercycle to hypercycle", on_circle(h.r.apply_c(z), outer)));
        }
        for (name, v) in res {
            if v > worst.0 {
                worst = (v, name);
            }
        }
    }
    verdict(worst.0 <= 1e-8, format!("1000 samples, worst {:.2e} ({})", worst.0, worst.1))
}

fn gluing_identities() -> Verdict {
    let mut r = rng(4);
    let (mut tj, mut plumb, mut conv) = (0f64, 0f64, 0f64);
    for _ in 0..20 {
        let cc: f64 = r.gen_range(0.2..3.0);
        let mu = c(r.gen_range(-3.0..3.0), r.gen_range(0.0..3.1));
        let m = t_map(cc, mu).unwrap() * j_map(cc).unwrap();
        tj = tj.max(m.psl_distance(&u_mu(cc, mu).inverse()) / m.max_entry().max(1.0));
        let p = GluingParams::new(cc, mu).unwrap();
        let t = convert_mu_to_t(p);
        conv = conv.max((convert_t_to_mu(cc, t) - mu).norm());
        let expect = (c(0.0, PI) * t).exp();
        let rr = 1.0 / (cc / 2.0).tanh();
        for _ in 0..100 {
            let x = C64::from_polar(rr * r.gen_range(-0.3f64..0.3).exp(), r.gen_range(0.2..2.9));
            let (u, _) = plumbing_coordinate(cc, x).unwrap();
            let (v, _) = plumbing_coordinate(cc, m.apply_c(x)).unwrap();
            plumb = plumb.max((u * v - expect).norm() / expect.norm());
        }
    }
    verdict(
        tj <= 1e-10 && plumb <= 1e-8 && conv <= 1e-12,
        format!("TJ vs U^-1 {tj:.2e}, plumbing {plumb:.2e} (relative), mu/t round trip {conv:.2e}"),
    )
}

fn cusp_limits() -> Verdict {
    let rep = limit_check(c(0.0, 2.0), &[0.1, 0.01, 0.001]).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for name in ["A_inf", "A_0", "Omega_0", "Omega_1", "gate", "hypercycle"] {
        let q = rep.get(name).unwrap();
        let last = *q.deviations.last().unwrap();
        let bound = if name == "hypercycle" { 1e-4 } else { 1e-5 };
        ok &= q.monotone && last <= bound;
        notes.push(format!("{name} {last:.1e}"));
    }
    verdict(ok, format!("monotone, final: {}", notes.join(", ")))
}

fn holonomy_oracle() -> Verdict {
    let mut r = rng(6);
    let (mut pc_err, mut dual_err) = (0f64, 0f64);
    for _ in 0..50 {
        let cc: f64 = r.gen_range(0.2..3.0);
        let mu = c(r.gen_range(-3.0..3.0), r.gen_range(0.0..3.1));
        let g = Surface::one_holed_torus(cc, mu).unwrap();
        let pc = holonomy(&g, &HolonomyChain::parse("P0:[Ainf]", &g).unwrap()).unwrap();
        pc_err = pc_err.max((pc.trace().norm() - 2.0 * cc.cosh()).abs());
        let dual = holonomy(&g, &HolonomyChain::parse("gate(0,+)", &g).unwrap()).unwrap();
        // slice coordinate tau = mu + c for the gluing parameter mu
        let oracle = r_mu(cc, mu + cc).trace().norm();
        dual_err = dual_err.max((dual.trace().norm() - oracle).abs() / oracle.max(1.0));
    }
    verdict(
        pc_err <= 1e-8 && dual_err <= 1e-6,
        format!("50 points, pants curve {pc_err:.2e}, dual vs oracle {dual_err:.2e}"),
    )
}

fn outcome(cc: f64, tau: C64) -> Outcome {
    bq::classify_point(cc, tau, 50_000).unwrap().outcome
}

fn bq_suite() -> Verdict {
    let mut r = rng(7);
    let mut ok = true;
    for cc in [0.5, 1.0, 2.0] {
        for _ in 0..20 {
            ok &= outcome(cc, c(r.gen_range(-4.0..4.0), 0.0)) == Outcome::QF;
        }
    }
    let real_ok = ok;
    for _ in 0..50 {
        let x = c(r.gen_range(-1.99..1.99), 0.0);
        let y = c(r.gen_range(2.1..10.0), 0.0);
        let p = x * y;
        let z = (p + (p * p - (x * x + y * y) * 4.0).sqrt()) / 2.0;
        let t = bq::TraceTriple::new(x, y, z).unwrap();
        ok &= bq::bq_test(&t, 1000, bq::DEFAULT_TRACE_FLOOR).unwrap().outcome == Outcome::NotQF;
    }
    let elliptic_ok = ok;
    let mut invariant = 0;
    let mut seen = [0; 3];
    for _ in 0..100 {
        let cc = [0.5, 1.0, 2.0][r.gen_range(0..3)];
        let tau = c(r.gen_range(-cc..cc), r.gen_range(-3.0..3.0));
        let o = outcome(cc, tau);
        seen[o as usize] += 1;
        if o == outcome(cc, tau.conj()) && o == outcome(cc, tau + 2.0 * cc) {
            invariant += 1;
        }
    }
    ok &= invariant == 100;
    verdict(
        ok,
        format!(
            "real QF: {real_ok}, elliptic NotQF: {elliptic_ok}, invariant {invariant}/100 (QF/NotQF/Undecided {seen:?})"
        ),
    )
}

fn c1_job(threads: usize) -> RasterJob {
    RasterJob::new(1.0, Window { re: (-2.0, 2.0), im: (-3.1, 3.1) }, 200, 200, 50_000).with_threads(threads)
}

fn slice_regression() -> Verdict {
    let one = render(&c1_job(8)).unwrap();
    let r1 = components(&one);
    let s = symmetry_check(&one);
    let (conj, per) = (s.conjugation.fraction().unwrap_or(0.0), s.periodicity.fraction().unwrap_or(0.0));
    let real_rows_qf = one
        .job
        .real_axis_rows()
        .iter()
        .all(|&j| (0..200).all(|i| one.get(i, j) == Outcome::QF));
    let job20 = RasterJob::new(20.0, Window { re: (-20.0, 20.0), im: (-3.1, 3.1) }, 200, 200, 50_000).with_threads(8);
    let twenty = render(&job20).unwrap();
    let r20 = components(&twenty);
    verdict(
        r1.count == 1 && r1.bm_unique() && real_rows_qf && r20.count >= 2 && conj >= 0.99 && per >= 0.99,
        format!(
            "c=1: {} component(s), real axis QF {real_rows_qf}; c=20: {} components; conjugation {conj:.4}, periodicity {per:.4}",
            r1.count, r20.count
        ),
    )
}

fn determinism() -> Verdict {
    let imgs: Vec<Vec<u8>> = [1, 2, 8].iter().map(|t| render(&c1_job(*t)).unwrap().to_ppm()).collect();
    let same = imgs.windows(2).all(|w| w[0] == w[1]);
    verdict(same, format!("threads 1/2/8 identical: {same} ({} bytes)", imgs[0].len()))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Verdict, Option<f64>);
    let criteria: [Criterion; 9] = [
        ("pants-group relations", pants_suite, Some(1.0)),
        ("cusped and degenerate pants", degenerate_suite, None),
        ("punctured torus and four-holed sphere groups", explicit_groups, Some(5.0)),
        ("gluing identities", gluing_identities, None),
        ("convergence to the cusped structure", cusp_limits, Some(1.0)),
        ("holonomy against the explicit group", holonomy_oracle, None),
        ("trace-tree verdicts", bq_suite, None),
        ("slice regression", slice_regression, Some(60.0)),
        ("determinism across thread counts", determinism, None),
    ];
    let mut failed = Vec::new();
    for (k, (name, f, limit)) in criteria.into_iter().enumerate() {
        let (v, dt) = timed(f);
        let fast = limit.is_none_or(|l| dt.as_secs_f64() < l);
        let ok = v.ok && fast;
        let budget = limit.map_or(String::new(), |l| format!(" (limit {l} s)"));
        println!(
            "criterion {}: {} {name}: {}; {:.2} s{budget}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            dt.as_secs_f64()
        );
        if !ok {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
