//! Semi-discrete operator against an independent weak-form evaluation.

mod common;

use avalanche_dg::dg::rhs;
use avalanche_dg::{CellFlags, Discretization, Execution, Mesh, ModalField, PhysicalParams};
use common::{dp, gauss_legendre, p};

const C: f64 = 0.3;

/// Uniform slope ζ₀ over the whole domain, φ ≠ δ so that K_act ≠ K_pass.
fn inclined() -> PhysicalParams {
    let mut params = PhysicalParams::from_degrees(25.0, 33.0, 21.0).unwrap();
    params.x_incl_end = 100.0;
    params.x_trans_end = 104.0;
    params
}

fn manufactured(n: usize) -> ModalField {
    let mut f = ModalField::zeros(n, 2).unwrap();
    for j in 0..n {
        let s = j as f64;
        f.h[j] = [
            1.0 + 0.2 * (0.7 * s).sin(),
            0.11 * (1.3 * s).cos(),
            -0.04 + 0.01 * s.sin(),
        ];
        f.q[j] = f.h[j].map(|m| C * m);
    }
    f
}

struct Oracle {
    beta: f64,
    accel: f64,
}

impl Oracle {
    fn new(params: &PhysicalParams) -> Self {
        // velocity is uniform, so every cell is in the active regime
        let (phi, delta, zeta) = (params.phi, params.delta, params.zeta0);
        let sec2phi = 1.0 / phi.cos().powi(2);
        let k_act = 2.0 * sec2phi * (1.0 - (1.0 - phi.cos().powi(2) / delta.cos().powi(2)).sqrt()) - 1.0;
        Oracle {
            beta: params.epsilon * zeta.cos() * k_act,
            accel: zeta.sin() - C.signum() * delta.tan() * zeta.cos(),
        }
    }

    fn flux(&self, h: f64) -> [f64; 2] {
        let q = C * h;
        [q, q * q / h + 0.5 * self.beta * h * h]
    }

    fn llf(&self, hl: f64, hr: f64) -> [f64; 2] {
        let a = (C.abs() + (self.beta * hl).sqrt()).max(C.abs() + (self.beta * hr).sqrt());
        let (fl, fr) = (self.flux(hl), self.flux(hr));
        [
            0.5 * (fl[0] + fr[0]) - 0.5 * a * (hr - hl),
            0.5 * (fl[1] + fr[1]) - 0.5 * a * C * (hr - hl),
        ]
    }
}

fn eval(modes: &[f64; 3], xi: f64) -> f64 {
    (0..3).map(|l| modes[l] * p(l, xi)).sum()
}

#[test]
fn residual_matches_ten_point_weak_form() {
    let n = 7;
    let mesh = Mesh::uniform(3.5, n).unwrap();
    let params = inclined();
    let disc = Discretization::new(mesh, params, 2).unwrap();
    let field = manufactured(n);
    let flags = vec![CellFlags::wet_flowing(); n];
    let got = rhs(&disc, &field, &flags, Execution::Sequential);

    let oracle = Oracle::new(&params);
    let rule = gauss_legendre(10);
    let trace_r = |j: usize| eval(&field.h[j], 1.0);
    let trace_l = |j: usize| eval(&field.h[j], -1.0);
    let fluxes: Vec<[f64; 2]> = (0..=n)
        .map(|i| {
            if i == 0 {
                oracle.flux(trace_l(0))
            } else if i == n {
                oracle.flux(trace_r(n - 1))
            } else {
                oracle.llf(trace_r(i - 1), trace_l(i))
            }
        })
        .collect();

    let dx = mesh.dx();
    for j in 0..n {
        for l in 0..3 {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let (mut vol_h, mut vol_q, mut src) = (0.0, 0.0, 0.0);
            for &(xi, w) in &rule {
                let h = eval(&field.h[j], xi);
                let f = oracle.flux(h);
                vol_h += w * f[0] * dp(l, xi);
                vol_q += w * f[1] * dp(l, xi);
                src += w * h * oracle.accel * p(l, xi);
            }
            let scale = (2 * l + 1) as f64 / dx;
            let expect_h = scale * (vol_h - (fluxes[j + 1][0] - sign * fluxes[j][0]));
            let expect_q = scale * (vol_q - (fluxes[j + 1][1] - sign * fluxes[j][1]) + 0.5 * dx * src);
            assert!(
                (got.h[j][l] - expect_h).abs() < 1e-12,
                "h cell {j} mode {l}: {} vs {expect_h}",
                got.h[j][l]
            );
            assert!(
                (got.q[j][l] - expect_q).abs() < 1e-12,
                "q cell {j} mode {l}: {} vs {expect_q}",
                got.q[j][l]
            );
        }
    }
}

#[test]
fn parallel_rhs_is_bitwise_sequential() {
    let n = 64;
    let mesh = Mesh::uniform(30.0, n).unwrap();
    let disc = Discretization::new(mesh, PhysicalParams::from_degrees(35.0, 30.0, 25.0).unwrap(), 2).unwrap();
    let field = ModalField::project(&mesh, 2, |x| 1.0 + 0.5 * (x / 3.0).sin(), |x| 0.2 * (x / 5.0).cos()).unwrap();
    let flags = vec![CellFlags::wet_flowing(); n];
    let a = rhs(&disc, &field, &flags, Execution::Sequential);
    let b = rhs(&disc, &field, &flags, Execution::best_available());
    assert_eq!(a, b);
}
