//! Randomized invariants. Each property encodes a structural fact the rest
//! of the crate leans on: sign and bound conditions of the kernel pairings,
//! exact algebraic cancellations, linearity/parity of the velocity maps,
//! monotone responses of thresholds and clocks, and fixed points of the
//! integrator.

use proptest::prelude::*;

use blowup_lab::diagnostics::ode_comparator;
use blowup_lab::evolution::{run, StepControl, SystemState, Termination};
use blowup_lab::grid::{Domain, GridField, Parity};
use blowup_lab::kernels;
use blowup_lab::scenarios::{estimate_eps2, required_i0, PerturbationFn};
use blowup_lab::velocity::{velocity, KernelSpec};

/// Mean-zero odd trigonometric field from three mode amplitudes.
fn odd_field(d: Domain, c: [f64; 3]) -> GridField {
    let mu = d.mu();
    GridField::from_fn(d, |x| {
        c[0] * (2.0 * mu * x).sin() + c[1] * (4.0 * mu * x).sin() + c[2] * (6.0 * mu * x).sin()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The pairing integrand is strictly negative strictly inside the
    /// ordered triangle, for every layer parameter.
    #[test]
    fn pairing_negative_inside_triangle(
        x in 0.01f64..0.45,
        gap in 0.005f64..0.48,
        a in 1e-3f64..20.0,
        l in 0.5f64..3.0,
    ) {
        let y = (x + gap).min(0.497);
        prop_assume!(y > x + 1e-4);
        let f = kernels::eval_f_periodic(x * l, y * l, a, l);
        prop_assert!(f < 0.0, "F({x}, {y}, {a}) = {f} not negative");
    }

    /// The limiting pairing kernel is nonnegative on the open half-square
    /// and at least 2 on the ordered side.
    #[test]
    fn limit_kernel_lower_bounds(
        x in 0.01f64..0.49,
        y in 0.01f64..0.49,
        l in 0.5f64..3.0,
    ) {
        prop_assume!((x - y).abs() > 1e-4);
        let k = kernels::eval_k(x * l, y * l, l);
        prop_assert!(k >= 0.0, "K({x}, {y}) = {k} negative");
        if x < y {
            prop_assert!(k >= 2.0 - 1e-12, "K({x}, {y}) = {k} below 2 on the ordered side");
        }
    }

    /// The grouped quadratic and constant coefficients of the pairing
    /// expansion cancel to round-off, and the linear coefficient keeps its
    /// lower bound (periodic) or its closed form (real line).
    #[test]
    fn quad_cancellations_are_roundoff(
        x in 0.02f64..0.48,
        y in 0.02f64..0.48,
        l in 0.5f64..3.0,
    ) {
        prop_assume!((x - y).abs() > 1e-4);
        let q = kernels::quad_coeffs_periodic(x * l, y * l, l);
        let tol = 1e-9 * q.scale.max(1.0);
        prop_assert!(q.a2.abs() <= tol, "a2 = {} exceeds round-off {tol}", q.a2);
        prop_assert!(q.a0.abs() <= tol, "a0 = {} exceeds round-off {tol}", q.a0);
        prop_assert!(q.a1 >= 32.0 - tol, "a1 = {} below 32", q.a1);

        let qr = kernels::quad_coeffs_realline(x, y);
        let tolr = 1e-9 * qr.scale.max(1.0);
        prop_assert!(qr.a2.abs() <= tolr);
        prop_assert!(qr.a0.abs() <= tolr);
        prop_assert!((qr.a1 - 32.0 * x * y).abs() <= tolr, "a1 = {} vs 32xy", qr.a1);
    }

    /// Relabeling the layer depth into the periodic parameter is strictly
    /// monotone and positive.
    #[test]
    fn relabeling_is_monotone(
        d1 in 0.01f64..1.0,
        bump in 0.01f64..1.0,
        l in 0.5f64..4.0,
    ) {
        let d2 = d1 + bump;
        let a1 = kernels::relabel_a(d1, l);
        let a2 = kernels::relabel_a(d2, l);
        prop_assert!(a1 > 0.0);
        prop_assert!(a2 > a1, "relabel not monotone: {a1} !< {a2}");
    }

    /// Truncated image sums converge at the documented O(depth^2 / n_max)
    /// rate (checked with a doubled-constant slack).
    #[test]
    fn image_sum_tail_bound(
        depth in 0.02f64..0.1,
        z in 0.1f64..0.9,
    ) {
        let n_max = 500;
        let chk = kernels::periodization_check(depth, z, 1.0, n_max).unwrap();
        let bound = 2.0 * depth * depth / (std::f64::consts::PI * n_max as f64) + 1e-12;
        prop_assert!(
            chk.abs_diff <= bound,
            "tail {} exceeds bound {bound}",
            chk.abs_diff
        );
    }

    /// Thresholds respond monotonically: the required starting level grows
    /// with the perturbation constant and the scalar amplitude, and is zero
    /// without a perturbation.
    #[test]
    fn required_level_is_monotone(
        c_f in 0.0f64..5.0,
        m in 0.01f64..2.0,
        l in 0.5f64..3.0,
    ) {
        prop_assert_eq!(required_i0(0.0, m, l), 0.0);
        let base = required_i0(c_f, m, l);
        prop_assert!(required_i0(c_f + 0.5, m, l) >= base);
        prop_assert!(required_i0(c_f, m + 0.5, l) >= base);
        prop_assert!(base >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Every velocity route is linear in the vorticity and maps odd fields
    /// to odd fields.
    #[test]
    fn velocity_is_linear_and_odd(
        c in [(-2.0f64..2.0), (-2.0f64..2.0), (-2.0f64..2.0)],
        alpha in 0.1f64..4.0,
        a in 0.05f64..5.0,
    ) {
        let d = Domain::periodic(1.0, 64).unwrap();
        let w = odd_field(d, c);
        let scaled = GridField {
            domain: d,
            values: w.values.iter().map(|v| alpha * v).collect(),
        };
        for kernel in [KernelSpec::Hl, KernelSpec::modified(a).unwrap()] {
            let u = velocity(&w, &kernel).unwrap();
            let u_scaled = velocity(&scaled, &kernel).unwrap();
            let scale = u.max_abs().max(1e-300);
            let mut worst = 0.0f64;
            for j in 0..d.n {
                worst = worst.max((u_scaled.values[j] - alpha * u.values[j]).abs());
            }
            prop_assert!(worst <= 1e-12 * alpha.max(1.0) * scale.max(1.0),
                "linearity defect {worst} for {:?}", kernel.label());
            let defect = u.symmetry_defect(Parity::Odd);
            prop_assert!(defect <= 1e-12 * scale.max(1.0),
                "odd-parity defect {defect} for {:?}", kernel.label());
        }
    }

    /// A stronger perturbation never enlarges the admissible support radius.
    #[test]
    fn admissible_radius_shrinks(
        amp in 0.05f64..0.5,
        factor in 1.1f64..3.0,
    ) {
        let weak = PerturbationFn::cos_shift(amp, 1.0).unwrap();
        let strong = PerturbationFn::cos_shift(amp * factor, 1.0).unwrap();
        let e_weak = estimate_eps2(&weak, 128);
        let e_strong = estimate_eps2(&strong, 128);
        prop_assert!(
            e_strong <= e_weak + 1e-12,
            "radius grew: {e_strong} > {e_weak}"
        );
    }

    /// The comparison clock shrinks under stronger forcing or larger data.
    #[test]
    fn ode_clock_is_monotone(
        cc in 0.2f64..2.0,
        i0 in 0.5f64..2.0,
        factor in 1.2f64..3.0,
    ) {
        let base = ode_comparator(cc, i0, 1e-2).unwrap();
        let forced = ode_comparator(cc * factor, i0, 1e-2).unwrap();
        let larger = ode_comparator(cc, i0 * factor, 1e-2).unwrap();
        prop_assert!(forced.t_blowup < base.t_blowup);
        prop_assert!(larger.t_blowup < base.t_blowup);
    }

    /// Parity projection is idempotent (bitwise) and kills the defect.
    #[test]
    fn projection_idempotent(
        c in [(-2.0f64..2.0), (-2.0f64..2.0), (-2.0f64..2.0)],
        phase in 0.0f64..1.0,
    ) {
        let d = Domain::periodic(1.0, 64).unwrap();
        let mu = d.mu();
        let mixed = GridField::from_fn(d, |x| {
            c[0] * (2.0 * mu * (x - phase)).sin()
                + c[1] * (2.0 * mu * x).cos()
                + c[2] * (4.0 * mu * (x - phase)).cos()
        });
        let once = mixed.project_odd();
        let twice = once.project_odd();
        prop_assert_eq!(&once.values, &twice.values);
        let scale = once.max_abs().max(1.0);
        prop_assert!(once.symmetry_defect(Parity::Odd) <= 1e-15 * scale);
        let even = mixed.project_even();
        prop_assert!(even.symmetry_defect(Parity::Even) <= 1e-15 * even.max_abs().max(1.0));
    }

    /// The sampled integral is additive over adjacent windows.
    #[test]
    fn integral_is_additive(
        c in [(-2.0f64..2.0), (-2.0f64..2.0), (-2.0f64..2.0)],
        y in 0.1f64..0.9,
    ) {
        let d = Domain::periodic(1.0, 128).unwrap();
        let w = odd_field(d, c);
        let whole = w.integrate(0.0, 1.0).unwrap();
        let left = w.integrate(0.0, y).unwrap();
        let right = w.integrate(y, 1.0).unwrap();
        let scale = w.max_abs().max(1.0);
        prop_assert!(
            (left + right - whole).abs() <= 1e-10 * scale,
            "additivity defect {}",
            (left + right - whole).abs()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Zero data is an exact fixed point of the integrator.
    #[test]
    fn zero_data_is_fixed_point(
        n_pow in 5u32..7,
        a in 0.05f64..2.0,
    ) {
        let d = Domain::periodic(1.0, 1 << n_pow).unwrap();
        let state = SystemState {
            t: 0.0,
            omega: GridField::zeros(d),
            theta: GridField::zeros(d),
            kernel: KernelSpec::modified(a).unwrap(),
            symmetric: true,
        };
        let traj = run(&state, &StepControl::new(0.05)).unwrap();
        prop_assert_eq!(traj.termination, Termination::TMax);
        for s in &traj.samples {
            prop_assert_eq!(s.i, 0.0);
            prop_assert_eq!(s.j, 0.0);
            prop_assert_eq!(s.max_omega, 0.0);
        }
    }
}
