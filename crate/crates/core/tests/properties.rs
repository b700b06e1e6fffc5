use proptest::prelude::*;

use sl2_cocycles::cochain::{d_right, d_up, Cochain};
use sl2_cocycles::harness::{run_suite, VerificationReport};
use sl2_cocycles::kernel::{
    alpha_g_a, alpha_g_n, alpha_g_n_cochain, beta_a_closed, beta_n_chase, beta_n_chase_via, omega_a, omega_n,
    AFunctional, NFunctional,
};
use sl2_cocycles::sampling::SamplerConfig;
use sl2_cocycles::sl2::{cross_ratio, delta, iwasawa, mobius, mobius_pair, project_a, project_n, transporter_vectors};
use sl2_cocycles::spaces::{
    generic_vec_pair, orbit_invariant_ga, orbit_parameter_n, transporter_to_gn_point, GenericityConfig, SpacePoint,
    SpaceTag,
};
use sl2_cocycles::{Field, Mat2, PairGA, ProjPoint, Scalar, Vec2};

fn real_group() -> impl Strategy<Value = Mat2> {
    (-2.0..2.0f64, -1.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(x, l, t)| {
        Mat2::unipotent(Scalar::real(x)).mul(&Mat2::torus(l)).unwrap().mul(&Mat2::rotation(t)).unwrap()
    })
}

fn complex_group() -> impl Strategy<Value = Mat2> {
    (-2.0..2.0f64, -2.0..2.0f64, -1.0..1.0f64, prop::array::uniform4(-1.0..1.0f64))
        .prop_filter("compact part needs a nonzero direction", |(_, _, _, k)| {
            k.iter().map(|t| t * t).sum::<f64>() > 1e-2
        })
        .prop_map(|(xr, xi, l, k)| {
            let r = k.iter().map(|t| t * t).sum::<f64>().sqrt();
            let a = Scalar::complex(k[0] / r, k[1] / r);
            let b = Scalar::complex(k[2] / r, k[3] / r);
            let k = Mat2::with_field([a, b, -b.conj(), a.conj()], Field::Complex).unwrap();
            Mat2::unipotent(Scalar::complex(xr, xi)).mul(&Mat2::torus(l)).unwrap().mul(&k).unwrap()
        })
}

fn real_vec() -> impl Strategy<Value = Vec2> {
    (-3.0..3.0f64, -3.0..3.0f64)
        .prop_filter("nonzero", |(a, b)| a * a + b * b > 1e-2)
        .prop_map(|(a, b)| Vec2::real(a, b).unwrap())
}

fn complex_vec() -> impl Strategy<Value = Vec2> {
    prop::array::uniform4(-3.0..3.0f64)
        .prop_filter("nonzero", |c| c.iter().map(|t| t * t).sum::<f64>() > 1e-2)
        .prop_map(|c| Vec2::new(Scalar::complex(c[0], c[1]), Scalar::complex(c[2], c[3])).unwrap())
}

fn point() -> impl Strategy<Value = ProjPoint> {
    (0.0..std::f64::consts::PI).prop_map(|t| ProjPoint::new(t.cos(), t.sin()).unwrap())
}

fn distinct(points: &[ProjPoint], m: f64) -> bool {
    points.iter().enumerate().all(|(i, a)| points[i + 1..].iter().all(|b| a.distance(b) >= m))
}

fn pairs<const K: usize>() -> impl Strategy<Value = [PairGA; K]> {
    prop::array::uniform2(point())
        .prop_map(|[p, q]| (p, q))
        .prop_filter("distinct pair", |(p, q)| p.distance(q) >= 1e-2)
        .prop_map(|(p, q)| PairGA::new(p, q).unwrap())
        .prop_flat_map(|first| {
            prop::collection::vec(prop::array::uniform2(point()).prop_map(|[p, q]| (p, q)), K - 1)
                .prop_map(move |rest| (first, rest))
        })
        .prop_filter("all points distinct", |(first, rest)| {
            let mut pts = vec![first.p, first.q];
            pts.extend(rest.iter().flat_map(|(p, q)| [*p, *q]));
            distinct(&pts, 1e-2)
        })
        .prop_map(|(first, rest)| {
            let mut out = [first; K];
            for (i, (p, q)) in rest.into_iter().enumerate() {
                out[i + 1] = PairGA::new(p, q).unwrap();
            }
            out
        })
}

fn well_separated(vs: &[Vec2]) -> bool {
    let cfg = GenericityConfig::uniform(1e-2);
    vs.iter().enumerate().all(|(i, u)| vs[i + 1..].iter().all(|v| generic_vec_pair(u, v, &cfg)))
}

proptest! {
    #[test]
    fn iwasawa_reconstructs(g in prop_oneof![real_group(), complex_group()]) {
        let f = iwasawa(&g).unwrap();
        prop_assert!(f.reconstruction_residual(&g).unwrap() <= 1e-10);
        prop_assert!(f.unitarity_residual() <= 1e-10);
        prop_assert!((project_n(&g) - f.n).abs() <= 1e-10 * (1.0 + f.n.abs()));
        if g.field() == Field::Real {
            prop_assert!((project_a(&g).unwrap() - f.log_lambda).abs() <= 1e-10);
        }
    }

    #[test]
    fn left_translation_laws(g in real_group(), x in -3.0..3.0f64, mu in -1.0..1.0f64) {
        let u = Mat2::unipotent(Scalar::real(x));
        prop_assert!((project_n(&u.mul(&g).unwrap()) - (Scalar::real(x) + project_n(&g))).abs() <= 1e-12 * (1.0 + x.abs()));
        let a = Mat2::torus(mu);
        prop_assert!((project_a(&a.mul(&g).unwrap()).unwrap() - (mu + project_a(&g).unwrap())).abs() <= 1e-12);
    }

    #[test]
    fn left_n_law_complex(g in complex_group(), xr in -3.0..3.0f64, xi in -3.0..3.0f64) {
        let x = Scalar::complex(xr, xi);
        let u = Mat2::unipotent(x);
        prop_assert!((project_n(&u.mul(&g).unwrap()) - (x + project_n(&g))).abs() <= 1e-12 * (1.0 + x.abs()));
    }

    #[test]
    fn transporter_vectors_unimodular(u in complex_vec(), v in complex_vec()) {
        prop_assume!(well_separated(&[u, v]));
        let g = transporter_vectors(&u, &v).unwrap();
        prop_assert!((g.det() - Scalar::ONE).abs() <= 1e-10);
    }

    #[test]
    fn gn_transporter_hits_its_point(v in prop_oneof![real_vec(), complex_vec()]) {
        let h = transporter_to_gn_point(&v).unwrap();
        let image = h.apply(&Vec2::e1(v.field())).unwrap();
        prop_assert!(image.distance(&v) <= 1e-12 * v.norm());
    }

    #[test]
    fn cross_ratio_is_mobius_invariant([x, y] in pairs::<2>(), g in real_group()) {
        let [gx, gy] = [mobius_pair(&g, &x).unwrap(), mobius_pair(&g, &y).unwrap()];
        let before = cross_ratio(&x.p, &x.q, &y.p, &y.q).unwrap();
        let after = cross_ratio(&gx.p, &gx.q, &gy.p, &gy.q).unwrap();
        prop_assert!((before - after).abs() <= 1e-9 * (1.0 + before.abs()));
    }

    #[test]
    fn orbit_labels_are_invariant(u in complex_vec(), v in complex_vec(), g in complex_group(), [x, y] in pairs::<2>(), h in real_group()) {
        prop_assume!(well_separated(&[u, v]));
        let cfg = GenericityConfig::default();
        let d = orbit_parameter_n(&u, &v, &cfg).unwrap();
        let dg = orbit_parameter_n(&g.apply(&u).unwrap(), &g.apply(&v).unwrap(), &cfg).unwrap();
        prop_assert!((d - dg).abs() <= 1e-9 * (1.0 + d.abs()));

        let before = orbit_invariant_ga(&x, &y, &cfg).unwrap();
        let after = orbit_invariant_ga(&mobius_pair(&h, &x).unwrap(), &mobius_pair(&h, &y).unwrap(), &cfg).unwrap();
        prop_assert_eq!(before.orientation, after.orientation);
        prop_assert!((before.b - after.b).abs() <= 1e-8 * (1.0 + before.b.abs()));
    }

    #[test]
    fn rejection_is_monotone_in_margin(u in real_vec(), v in real_vec(), m in 1e-8..0.5f64, shrink in 0.0..1.0f64) {
        let wide = GenericityConfig::uniform(m);
        let narrow = GenericityConfig::uniform(m * shrink.max(1e-3));
        if generic_vec_pair(&u, &v, &wide) {
            prop_assert!(generic_vec_pair(&u, &v, &narrow));
        }
    }

    #[test]
    fn induced_alpha_is_g_invariant(g0 in real_group(), g1 in real_group(), g in real_group(), x in real_vec()) {
        let c = alpha_g_n_cochain(NFunctional::real(1.0), Field::Real).unwrap();
        let xs = [SpacePoint::GN(x)];
        let moved = [SpacePoint::GN(g.apply(&x).unwrap())];
        let gs = [g.mul(&g0).unwrap(), g.mul(&g1).unwrap()];
        let a = c.eval(&[g0, g1], &xs).unwrap();
        let b = c.eval(&gs, &moved).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
    }

    #[test]
    fn bicomplex_squares(gs in prop::array::uniform3(real_group()), vs in prop::array::uniform3(real_vec())) {
        // a smooth test cochain in C^{0,1}
        let c = Cochain::new(0, 1, SpaceTag::GN, |gs, xs| {
            let v = xs[0].as_gn().unwrap();
            let [a, b, _, d] = gs[0].entries().map(|s| s.re());
            Ok((a * v.v1().re()).sin() + b * v.v2().re() - d.cos() * v.norm())
        });
        let xs: Vec<SpacePoint> = vs.iter().map(|v| SpacePoint::GN(*v)).collect();
        let uu = d_up(&d_up(&c)).eval(&gs, &xs[..1]).unwrap();
        let rr = d_right(&d_right(&c)).eval(&gs[..1], &xs).unwrap();
        let ur = d_up(&d_right(&c)).eval(&gs[..2], &xs[..2]).unwrap();
        let ru = d_right(&d_up(&c)).eval(&gs[..2], &xs[..2]).unwrap();
        prop_assert!(uu.abs() <= 1e-9 && rr.abs() <= 1e-9);
        prop_assert!((ur + ru).abs() <= 1e-9);
    }

    #[test]
    fn beta_n_is_coset_independent(g in complex_group(), lr in 0.3..3.0f64, t in 0.0..std::f64::consts::TAU, xr in -2.0..2.0f64, xi in -2.0..2.0f64) {
        let phi = NFunctional::new(0.8, -1.7).unwrap();
        let l = Scalar::complex(lr * t.cos(), lr * t.sin());
        let n = Mat2::unipotent(Scalar::complex(xr, xi));
        let a = beta_n_chase(&phi, &g, l).unwrap();
        let b = beta_n_chase_via(&phi, &delta(l).unwrap().mul(&n).unwrap(), &g).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
    }

    #[test]
    fn alpha_invariance(g0 in real_group(), g1 in real_group(), x in -3.0..3.0f64, mu in -1.0..1.0f64) {
        let phi = NFunctional::real(1.3);
        let u = Mat2::unipotent(Scalar::real(x));
        let before = alpha_g_n(&phi, &g0, &g1);
        let after = alpha_g_n(&phi, &u.mul(&g0).unwrap(), &u.mul(&g1).unwrap());
        prop_assert!((before - after).abs() <= 1e-9);
        let psi = AFunctional::new(-0.6).unwrap();
        let a = Mat2::torus(mu);
        let before = alpha_g_a(&psi, &g0, &g1).unwrap();
        let after = alpha_g_a(&psi, &a.mul(&g0).unwrap(), &a.mul(&g1).unwrap()).unwrap();
        prop_assert!((before - after).abs() <= 1e-9);
    }

    #[test]
    fn omega_n_cocycle_and_invariance(vs in prop::array::uniform4(complex_vec()), g in complex_group()) {
        prop_assume!(well_separated(&vs));
        for phi in [NFunctional::real(1.0), NFunctional::new(0.0, 1.0).unwrap()] {
            let w = |i: usize, j: usize, k: usize| omega_n(&phi, &vs[i], &vs[j], &vs[k]).unwrap();
            let sum = w(1, 2, 3) - w(0, 2, 3) + w(0, 1, 3) - w(0, 1, 2);
            prop_assert!(sum.abs() <= 1e-8);
            let moved: Vec<Vec2> = vs.iter().map(|v| g.apply(v).unwrap()).collect();
            prop_assume!(well_separated(&moved[..3]));
            let wm = omega_n(&phi, &moved[0], &moved[1], &moved[2]).unwrap();
            prop_assert!((wm - w(0, 1, 2)).abs() <= 1e-8);
        }
    }

    #[test]
    fn omega_a_cocycle_and_invariance(ps in pairs::<4>(), g in real_group()) {
        let phi = AFunctional::new(1.0).unwrap();
        let w = |i: usize, j: usize, k: usize| omega_a(&phi, &ps[i], &ps[j], &ps[k]).unwrap();
        let sum = w(1, 2, 3) - w(0, 2, 3) + w(0, 1, 3) - w(0, 1, 2);
        prop_assert!(sum.abs() <= 1e-8);
        let moved: Vec<PairGA> = ps.iter().map(|p| mobius_pair(&g, p).unwrap()).collect();
        let pts: Vec<ProjPoint> = moved[..3].iter().flat_map(|p| [p.p, p.q]).collect();
        prop_assume!(distinct(&pts, 1e-4));
        let wm = omega_a(&phi, &moved[0], &moved[1], &moved[2]).unwrap();
        prop_assert!((wm - w(0, 1, 2)).abs() <= 1e-8);
    }

    #[test]
    fn beta_a_ignores_y2([x, y, z] in pairs::<3>()) {
        let phi = AFunctional::new(1.0).unwrap();
        let other = PairGA::new(y.p, z.q).unwrap();
        prop_assert_eq!(beta_a_closed(&phi, &x, &y).unwrap(), beta_a_closed(&phi, &x, &other).unwrap());
    }

    #[test]
    fn mobius_preserves_distinctness_of_images(p in point(), g in real_group()) {
        let q = mobius(&g.inverse(), &mobius(&g, &p).unwrap()).unwrap();
        prop_assert!(p.distance(&q) <= 1e-12);
    }
}

fn strip(mut r: VerificationReport) -> VerificationReport {
    r.elapsed_ms = 0;
    r
}

#[test]
fn suites_are_reproducible_across_runs() {
    let cfg = SamplerConfig { trials: 128, seed: 99, ..SamplerConfig::default() };
    for name in ["transporters", "omega_constant_in_G", "linearity_in_functional"] {
        for field in [Field::Real, Field::Complex] {
            let a = strip(run_suite(name, &cfg, field).unwrap());
            let b = strip(run_suite(name, &cfg, field).unwrap());
            assert_eq!(a, b);
            assert!(a.passed(), "{a:?}");
        }
    }
}
