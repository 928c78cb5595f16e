use std::f64::consts::PI;

use proptest::prelude::*;
use weno_core::boundary::{Boundary, BoundarySet};
use weno_core::diagnostics::total_variation;
use weno_core::integrate::{rk3_step, Solver};
use weno_core::mesh::{Axis1, Field, Grid};
use weno_core::physics::{prim_to_cons_1d, prim_to_cons_2d, Burgers, Euler1d, Euler2d, LinearAdvection, Primitive1, Primitive2};
use weno_core::stencil::{Scheme, SchemeConfig};
use weno_core::Result;

#[test]
fn rk3_is_third_order_on_decay() {
    let exact = (-1.0f64).exp();
    let errors: Vec<f64> = [0.1, 0.05, 0.025, 0.0125]
        .iter()
        .map(|&dt| {
            let mut u = [[1.0f64]];
            let steps = (1.0 / dt as f64).round() as usize;
            let mut t = 0.0;
            for _ in 0..steps {
                rk3_step(&mut u, t, dt, |v, _, out| {
                    out[0][0] = -v[0][0];
                    Ok(())
                })
                .unwrap();
                t += dt;
            }
            (u[0][0] - exact).abs()
        })
        .collect();
    for p in errors.windows(2) {
        let slope = (p[0] / p[1]).log2();
        assert!((slope - 3.0).abs() <= 0.1, "slope {slope}");
    }
}

fn periodic_line(n: usize) -> Grid<f64> {
    Grid::new_1d(Axis1::new(-1.0, 1.0, n).periodic())
}

fn sum(f: &Field<f64, 1>) -> f64 {
    f.interior().map(|u| u[0]).sum()
}

#[test]
fn periodic_runs_conserve_the_total() {
    let grid = periodic_line(100);
    let ic = |x: f64, _: f64| [2.0 + (PI * x).sin() + if x.abs() < 0.3 { 1.0 } else { 0.0 }];
    for scheme in Scheme::ALL {
        let cfg = SchemeConfig::new(scheme);
        let mut adv = Solver::new(LinearAdvection::default(), grid, BoundarySet::periodic_1d(), cfg).unwrap();
        let mut burg = Solver::new(Burgers, grid, BoundarySet::periodic_1d(), cfg).unwrap();
        let mut u = Field::from_fn(&grid, ic);
        let mut v = u.clone();
        let (s0, dt) = (sum(&u), 0.4 * grid.dx() / 4.0);
        for k in 0..1000 {
            let t = k as f64 * dt;
            adv.step(&mut u, t, dt).unwrap();
            burg.step(&mut v, t, dt).unwrap();
        }
        for (name, f) in [("advection", &u), ("burgers", &v)] {
            let drift = (sum(f) - s0).abs() / s0.abs();
            assert!(drift <= 1e-12, "{scheme:?} {name}: drift {drift:e}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rk3_with_upwind_operator_is_tvd(
        data in prop::collection::vec(-5.0f64..5.0, 8..64),
        courant in 0.05f64..1.0,
    ) {
        // periodic first-order upwind for u_t + u_x = 0, TVD for dt <= dx
        let mut u: Vec<[f64; 1]> = data.iter().map(|&v| [v]).collect();
        let n = u.len();
        let tv = |u: &[[f64; 1]]| {
            let mut v: Vec<f64> = u.iter().map(|s| s[0]).collect();
            v.push(v[0]);
            total_variation(&v)
        };
        let mut prev = tv(&u);
        for _ in 0..20 {
            rk3_step(&mut u, 0.0, courant, |v, _, out| -> Result<()> {
                for i in 0..n {
                    out[i][0] = -(v[i][0] - v[(i + n - 1) % n][0]);
                }
                Ok(())
            }).unwrap();
            let now = tv(&u);
            prop_assert!(now <= prev * (1.0 + 1e-14) + 1e-14, "{} > {}", now, prev);
            prev = now;
        }
    }
}

fn shock_tube_1d(x: f64) -> [f64; 3] {
    let w = if x < 0.1 {
        Primitive1::new(1.0, 0.3, 1.0)
    } else {
        Primitive1::new(0.125, 0.0, 0.1)
    };
    prim_to_cons_1d(&w, 1.4).unwrap()
}

#[test]
fn y_invariant_data_reduce_to_the_1d_operator() {
    let ax = Axis1::new(-0.5, 0.5, 40);
    let g1 = Grid::new_1d(ax);
    let g2 = Grid::new_2d(ax, Axis1::new(0.0, 1.0, 8).periodic());
    for scheme in Scheme::ALL {
        let cfg = SchemeConfig::new(scheme);
        let mut s1 = Solver::new(
            Euler1d::new(1.4),
            g1,
            BoundarySet::new_1d(Boundary::ZeroGradient, Boundary::ZeroGradient),
            cfg,
        )
        .unwrap();
        let mut s2 = Solver::new(
            Euler2d::new(1.4),
            g2,
            BoundarySet::new_2d(
                [Boundary::ZeroGradient, Boundary::ZeroGradient],
                [Boundary::Periodic, Boundary::Periodic],
            ),
            cfg,
        )
        .unwrap();
        let u1 = Field::from_fn(&g1, |x, _| shock_tube_1d(x)).interior_vec();
        let u2 = Field::from_fn(&g2, |x, _| {
            let [r, m, e] = shock_tube_1d(x);
            [r, m, 0.0, e]
        })
        .interior_vec();
        let mut r1 = vec![[0.0; 3]; u1.len()];
        let mut r2 = vec![[0.0; 4]; u2.len()];
        s1.rhs(&u1, 0.0, &mut r1).unwrap();
        s2.rhs(&u2, 0.0, &mut r2).unwrap();
        let nx = g2.nx();
        for j in 0..g2.ny() {
            for i in 0..nx {
                let a = r1[i];
                let b = r2[j * nx + i];
                let scale = 1.0 + a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                for (c, k) in [(0, 0), (1, 1), (2, 3)] {
                    assert!((a[c] - b[k]).abs() <= 1e-12 * scale, "{scheme:?} ({i},{j}) {c}");
                }
                assert_eq!(b[2], 0.0, "{scheme:?} y-momentum at ({i},{j})");
            }
        }
    }
}

#[test]
fn transposed_data_give_transposed_operator() {
    let ax = Axis1::new(0.0, 1.0, 24);
    let grid = Grid::new_2d(ax, ax);
    let bcs = || BoundarySet::new_2d([Boundary::Reflective, Boundary::Reflective], [Boundary::Reflective, Boundary::Reflective]);
    let prim = |x: f64, y: f64| {
        let inside = x + 0.6 * y < 0.5;
        let rho = if inside { 0.3 } else { 1.0 } + 0.1 * (3.0 * x).sin() * (2.0 * y).cos();
        Primitive2::new(rho, 0.2 * x * y, -0.1 * y, if inside { 0.2 } else { 1.0 } + 0.05 * x)
    };
    let f = Field::from_fn(&grid, |x, y| prim_to_cons_2d(&prim(x, y), 1.4).unwrap()).interior_vec();
    let ft = Field::from_fn(&grid, |x, y| {
        let w = prim(y, x);
        prim_to_cons_2d(&Primitive2::new(w.rho, w.v, w.u, w.p), 1.4).unwrap()
    })
    .interior_vec();
    let n = grid.nx();
    for scheme in [Scheme::Js, Scheme::Theta6] {
        let mut s = Solver::new(Euler2d::new(1.4), grid, bcs(), SchemeConfig::new(scheme)).unwrap();
        let mut r = vec![[0.0; 4]; f.len()];
        let mut rt = vec![[0.0; 4]; f.len()];
        s.rhs(&f, 0.0, &mut r).unwrap();
        s.rhs(&ft, 0.0, &mut rt).unwrap();
        let scale = r.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        for j in 0..n {
            for i in 0..n {
                let a = r[j * n + i];
                let b = rt[i * n + j];
                for (c, k) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
                    assert!((a[c] - b[k]).abs() <= 1e-12 * scale, "{scheme:?} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn spatial_operator_is_sixth_order_on_smooth_data() {
    let errors: Vec<f64> = [20usize, 40, 80, 160]
        .iter()
        .map(|&n| {
            let grid = periodic_line(n);
            let mut s = Solver::new(
                LinearAdvection::default(),
                grid,
                BoundarySet::periodic_1d(),
                SchemeConfig::new(Scheme::Theta6),
            )
            .unwrap();
            let u = Field::from_fn(&grid, |x, _| [(PI * x).sin()]);
            let mut r = vec![[0.0]; n];
            s.rhs(&u.interior_vec(), 0.0, &mut r).unwrap();
            (0..n)
                .map(|i| (r[i][0] + PI * (PI * grid.xc(i as isize)).cos()).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    for p in errors.windows(2) {
        let slope = (p[0] / p[1]).log2();
        assert!(slope >= 5.5, "slope {slope} in {errors:?}");
    }
}
