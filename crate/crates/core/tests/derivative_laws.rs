//! End-to-end derivative checks on the worked cases: differentiability of
//! matrix squaring and circle cubing, the finite-difference cross-check with
//! its exactly-known gap, the sum/scale/chain combinators against hand-built
//! derivatives, uniqueness along root sequences, and the continuity
//! consequence.

use std::sync::Arc;

use groupderiv_core::cases::{
    circle_cube_slope, circle_cube_slope_adjoint, circle_power_hom, linear_slope, matrix_square,
    matrix_square_slope, matrix_square_slope_perturbed, sylvester_hom, SquareSlopeForm,
};
use groupderiv_core::derivative::{
    check_differentiable, continuity_from_differentiability, frechet_fd_oracle, slope_chain,
    slope_scale, slope_sum, uniqueness_probe,
};
use groupderiv_core::hom::{hom_metric, Homomorphism, ProbeSet};
use groupderiv_core::{groups, GroupElement, MetricGroupSpec, Payload, Tolerances};

const SEED: u64 = 0xd1ff;
const RADII: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];

fn mat2(spec: &Arc<MetricGroupSpec>, e: [f64; 4]) -> GroupElement {
    spec.element(Payload::Matrix {
        n: 2,
        entries: e.to_vec(),
    })
    .unwrap()
}

/// The base matrix used throughout: small norm keeps continuity tails tight.
fn base_a(spec: &Arc<MetricGroupSpec>) -> GroupElement {
    mat2(spec, [0.3, -0.2, 0.1, 0.4])
}

#[test]
fn matrix_squaring_slope_witnesses_differentiability() {
    let m = groups::lookup("matrix-add:2").unwrap();
    let tols = Tolerances::default();
    let a = base_a(&m);
    let probe = ProbeSet::standard(m.clone(), 32, SEED).unwrap();
    for form in [SquareSlopeForm::BaseLeft, SquareSlopeForm::BaseRight] {
        let s = matrix_square_slope(&m, &a, form).unwrap();
        let report = check_differentiable(&s, &RADII, &probe, SEED, 40, 1e-2, &tols).unwrap();
        assert!(report.passed, "{form:?}: {report:?}");
        assert!(report.max_allowance_ratio <= 1.0, "{form:?}: {report:?}");
    }

    // The derivative is Y -> A.Y + Y.A; frozen spot value at Y = [[1,2],[3,4]].
    let s = matrix_square_slope(&m, &a, SquareSlopeForm::BaseLeft).unwrap();
    let d = s.derivative().unwrap();
    let y = mat2(&m, [1.0, 2.0, 3.0, 4.0]);
    let image = d.eval(&y).unwrap();
    let expect = mat2(&m, [0.2, 0.4, 2.6, 2.8]);
    assert!(m.metric(&image, &expect).unwrap() < 1e-15, "{image:?}");
}

#[test]
fn finite_differences_reproduce_the_exactly_known_gap() {
    // For squaring, ((A + hY)^2 - A^2) / h differs from A.Y + Y.A by
    // exactly h * Y^2, so the scaled gap equals the norm of Y^2 for every h.
    let m = groups::lookup("matrix-add:2").unwrap();
    let a = base_a(&m);
    let f = matrix_square(&m);
    let s = matrix_square_slope(&m, &a, SquareSlopeForm::BaseLeft).unwrap();
    let d = s.derivative().unwrap();
    let y = mat2(&m, [1.0, 2.0, 3.0, 4.0]);
    let y_squared = matrix_square(&m).eval(&y).unwrap();
    let norm_y2 = m.distance_to_identity(&y_squared).unwrap();
    for h in [1e-1, 1e-2, 1e-3] {
        let fd = frechet_fd_oracle(&f, &a, &y, h).unwrap();
        let gap = m.metric(&fd, &d.eval(&y).unwrap()).unwrap() / h;
        assert!(
            (gap - norm_y2).abs() <= 1e-9 * norm_y2,
            "h = {h}: gap {gap}, want {norm_y2}"
        );
    }
}

#[test]
fn circle_cubing_slopes_agree_and_witness_differentiability() {
    let c = groups::lookup("circle").unwrap();
    let tols = Tolerances::default();
    let a = c.element(Payload::Angle(0.7)).unwrap();
    let probe = ProbeSet::standard(c.clone(), 32, SEED).unwrap();

    let plain = circle_cube_slope(&c, &a).unwrap();
    let report = check_differentiable(&plain, &RADII, &probe, SEED, 40, 1e-6, &tols).unwrap();
    assert!(report.passed, "{report:?}");

    // The conjugation-written form agrees with the plain one everywhere
    // sampled, including the derivative itself.
    let viaconj = circle_cube_slope_adjoint(&c, &a).unwrap();
    for theta in [0.7, -1.3, 3.0, 0.05] {
        let x = c.element(Payload::Angle(theta)).unwrap();
        let gap = hom_metric(
            &plain.slope_at(&x).unwrap(),
            &viaconj.slope_at(&x).unwrap(),
            &probe,
        )
        .unwrap();
        assert!(gap <= 1e-12, "theta = {theta}: gap = {gap}");
    }
    let d_gap = hom_metric(
        &plain.derivative().unwrap(),
        &viaconj.derivative().unwrap(),
        &probe,
    )
    .unwrap();
    assert!(d_gap <= 1e-12);
}

#[test]
fn sum_rule_matches_the_pointwise_sum_of_derivatives() {
    let m = groups::lookup("matrix-add:2").unwrap();
    let a = base_a(&m);
    let probe = ProbeSet::standard(m.clone(), 64, SEED).unwrap();
    let sq = matrix_square_slope(&m, &a, SquareSlopeForm::BaseLeft).unwrap();
    let lin = linear_slope(&m, 5.0, &a).unwrap();
    let summed = slope_sum(&sq, &lin).unwrap();

    let manual = Homomorphism::oplus(
        &sq.derivative().unwrap(),
        &lin.derivative().unwrap(),
    )
    .unwrap();
    let gap = hom_metric(&summed.derivative().unwrap(), &manual, &probe).unwrap();
    assert!(gap <= 1e-10, "gap = {gap}");

    // The summed function is the pointwise product: X.X + 5X.
    let x = mat2(&m, [1.0, 2.0, 3.0, 4.0]);
    let image = summed.function().eval(&x).unwrap();
    let expect = mat2(&m, [12.0, 20.0, 30.0, 42.0]);
    assert!(m.metric(&image, &expect).unwrap() < 1e-15);
}

#[test]
fn homogeneity_holds_for_every_tested_scalar() {
    let m = groups::lookup("matrix-add:2").unwrap();
    let a = base_a(&m);
    let probe = ProbeSet::standard(m.clone(), 64, SEED).unwrap();
    let sq = matrix_square_slope(&m, &a, SquareSlopeForm::BaseLeft).unwrap();
    for alpha in [0.0, 1.0, 2.0, -3.5] {
        let scaled = slope_scale(alpha, &sq).unwrap();
        let manual = Homomorphism::scale(alpha, &sq.derivative().unwrap()).unwrap();
        let gap = hom_metric(&scaled.derivative().unwrap(), &manual, &probe).unwrap();
        assert!(gap <= 1e-10, "alpha = {alpha}: gap = {gap}");
    }
}

#[test]
fn chain_rule_builds_the_quartic_and_ninth_power_derivatives() {
    let tols = Tolerances::default();

    // Matrices: (X.X).(X.X) via squaring twice.
    let m = groups::lookup("matrix-add:2").unwrap();
    let a = base_a(&m);
    let probe = ProbeSet::standard(m.clone(), 32, SEED).unwrap();
    let inner = matrix_square_slope(&m, &a, SquareSlopeForm::BaseLeft).unwrap();
    let a2 = matrix_square(&m).eval(&a).unwrap();
    let outer = matrix_square_slope(&m, &a2, SquareSlopeForm::BaseLeft).unwrap();
    let quartic = slope_chain(&outer, &inner, SEED, 16).unwrap();

    // Hand-built derivative: Z -> A^2 (A.Z + Z.A) + (A.Z + Z.A) A^2.
    let manual = Homomorphism::compose(
        &sylvester_hom(&m, &a2, &a2).unwrap(),
        &sylvester_hom(&m, &a, &a).unwrap(),
    )
    .unwrap();
    let gap = hom_metric(&quartic.derivative().unwrap(), &manual, &probe).unwrap();
    assert!(gap <= 1e-9, "gap = {gap}");

    let report = check_differentiable(&quartic, &RADII, &probe, SEED, 40, 1e-2, &tols).unwrap();
    assert!(report.passed, "{report:?}");

    // Circle: cubing twice gives the ninth power.
    let c = groups::lookup("circle").unwrap();
    let b = c.element(Payload::Angle(0.4)).unwrap();
    let cprobe = ProbeSet::standard(c.clone(), 32, SEED).unwrap();
    let cin = circle_cube_slope(&c, &b).unwrap();
    let b3 = cin.function().eval(&b).unwrap();
    let cout = circle_cube_slope(&c, &b3).unwrap();
    let ninth = slope_chain(&cout, &cin, SEED, 16).unwrap();
    let gap = hom_metric(
        &ninth.derivative().unwrap(),
        &circle_power_hom(&c, 9),
        &cprobe,
    )
    .unwrap();
    assert!(gap <= 1e-12, "gap = {gap}");

    // Chaining with the identity slope changes nothing at all.
    let id_slope = groupderiv_core::cases::identity_slope(&m, &a2).unwrap();
    let neutral = slope_chain(&id_slope, &inner, SEED, 16).unwrap();
    let gap = hom_metric(
        &neutral.derivative().unwrap(),
        &inner.derivative().unwrap(),
        &probe,
    )
    .unwrap();
    assert_eq!(gap, 0.0);
}

#[test]
fn uniqueness_probe_drives_both_slope_forms_to_the_same_limit() {
    let m = groups::lookup("matrix-add:2").unwrap();
    let tols = Tolerances::default();
    let a = base_a(&m);
    let probe = ProbeSet::standard(m.clone(), 32, SEED).unwrap();
    let left = matrix_square_slope(&m, &a, SquareSlopeForm::BaseLeft).unwrap();
    let right = matrix_square_slope(&m, &a, SquareSlopeForm::BaseRight).unwrap();
    let z = mat2(&m, [1.0, 0.5, -0.5, 1.0]);
    let report =
        uniqueness_probe(&left, &right, &z, 1 << 20, &probe, 1e-10, 1e-3, &tols).unwrap();
    assert!(report.passed, "{report:?}");

    // The deliberately perturbed slope shares the factorization but not the
    // limit: its base value sits far from the true derivative.
    let bad = matrix_square_slope_perturbed(&m, &a).unwrap();
    let gap = hom_metric(
        &bad.derivative().unwrap(),
        &left.derivative().unwrap(),
        &probe,
    )
    .unwrap();
    // The difference is the identity map; the probe reaches norm 100, so
    // the bounded metric sits at 100 / 101.
    assert!((gap - 0.9900990099009901).abs() < 1e-9, "gap = {gap}");
    let report = check_differentiable(&bad, &RADII, &probe, SEED, 40, 1e-2, &tols).unwrap();
    assert!(!report.passed, "perturbed slope must fail the check");
}

#[test]
fn differentiable_functions_are_continuous_at_their_base_points() {
    let tols = Tolerances::default();
    let radii = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

    let m = groups::lookup("matrix-add:2").unwrap();
    let a = base_a(&m);
    let report = continuity_from_differentiability(
        &matrix_square(&m),
        &a,
        &radii,
        SEED,
        40,
        1e-5,
        &tols,
    )
    .unwrap();
    assert!(report.passed, "{report:?}");

    let c = groups::lookup("circle").unwrap();
    let b = c.element(Payload::Angle(0.7)).unwrap();
    let cube = circle_cube_slope(&c, &b).unwrap();
    let report = continuity_from_differentiability(
        cube.function(),
        &b,
        &radii,
        SEED,
        40,
        1e-5,
        &tols,
    )
    .unwrap();
    assert!(report.passed, "{report:?}");

    let g = groups::lookup("real-add").unwrap();
    let lin = linear_slope(&g, -2.5, &g.element(Payload::Real(2.0)).unwrap()).unwrap();
    let report = continuity_from_differentiability(
        lin.function(),
        lin.base(),
        &radii,
        SEED,
        40,
        1e-4,
        &tols,
    )
    .unwrap();
    assert!(report.passed, "{report:?}");
}
