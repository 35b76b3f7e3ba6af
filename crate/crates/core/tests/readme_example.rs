//! Keeps the README's library example honest: this is the same code, compiled
//! and run.

use groupderiv_core::cases::{matrix_square_slope, SquareSlopeForm};
use groupderiv_core::derivative::check_differentiable;
use groupderiv_core::hom::ProbeSet;
use groupderiv_core::{groups, Payload, Tolerances};

#[test]
fn readme_library_example_runs() {
    let m = groups::lookup("matrix-add:2").unwrap();
    let a = m
        .element(Payload::Matrix {
            n: 2,
            entries: vec![0.3, -0.2, 0.1, 0.4],
        })
        .unwrap();
    let slope = matrix_square_slope(&m, &a, SquareSlopeForm::BaseLeft).unwrap();

    let probe = ProbeSet::standard(m.clone(), 64, 42).unwrap();
    let radii = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];
    let report =
        check_differentiable(&slope, &radii, &probe, 42, 200, 1e-3, &Tolerances::default())
            .unwrap();
    assert!(report.passed);

    let d = slope.derivative().unwrap();
    assert_eq!(d.domain().id(), m.id());
}
