//! Worked functions and slopes used by the checks and the companion CLI:
//! matrix squaring with its two slope forms (and a deliberately broken
//! variant), circle power maps with plain and conjugation-written cube
//! slopes, inner automorphisms, and the constant / identity / linear
//! staples.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use crate::derivative::{GroupFunction, SlopeFunction};
use crate::element::{GroupElement, Payload};
use crate::error::{Error, Result};
use crate::group::MetricGroupSpec;
use crate::groups::{mat_mul, mat_zip, matrix};
use crate::hom::Homomorphism;
use crate::math::canonical_angle;

fn require_matrix(spec: &Arc<MetricGroupSpec>, x: &GroupElement, what: &str) -> Result<()> {
    spec.check_member(x, "matrix case input")?;
    match x.payload() {
        Payload::Matrix { .. } => Ok(()),
        other => Err(Error::Contract(format!(
            "{what} needs a matrix element, got {other}"
        ))),
    }
}

fn require_angle(spec: &Arc<MetricGroupSpec>, x: &GroupElement, what: &str) -> Result<()> {
    spec.check_member(x, "circle case input")?;
    match x.payload() {
        Payload::Angle(_) => Ok(()),
        other => Err(Error::Contract(format!(
            "{what} needs a circle element, got {other}"
        ))),
    }
}

/// Squaring on an additive matrix group: `X -> X . X` (matrix product).
pub fn matrix_square(spec: &Arc<MetricGroupSpec>) -> GroupFunction {
    let s = spec.clone();
    GroupFunction::new(spec.clone(), spec.clone(), "matrix-square", move |x| {
        let (n, e) = matrix(x.payload());
        s.element(Payload::Matrix {
            n,
            entries: mat_mul(n, e, e),
        })
        .expect("product of members is a member")
    })
}

/// The two-sided linear map `Y -> L.Y + Y.R` on an additive matrix group.
pub fn sylvester_hom(
    spec: &Arc<MetricGroupSpec>,
    l: &GroupElement,
    r: &GroupElement,
) -> Result<Homomorphism> {
    require_matrix(spec, l, "two-sided linear map")?;
    require_matrix(spec, r, "two-sided linear map")?;
    let s = spec.clone();
    let (l, r) = (l.clone(), r.clone());
    Ok(Homomorphism::primitive(
        spec.clone(),
        spec.clone(),
        "LY+YR",
        move |y| {
            let (n, ye) = matrix(y.payload());
            let (_, le) = matrix(l.payload());
            let (_, re) = matrix(r.payload());
            let sum = mat_zip(&mat_mul(n, le, ye), &mat_mul(n, ye, re), |p, q| p + q);
            s.element(Payload::Matrix { n, entries: sum })
                .expect("sum of members is a member")
        },
    ))
}

/// Which factorization of `X.X - A.A` a matrix squaring slope uses.
///
/// Both are valid slopes for the same function and base; they differ away
/// from the base and agree at it, which is exactly what derivative
/// uniqueness predicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareSlopeForm {
    /// `Y -> A.Y + Y.X` (base matrix on the left).
    BaseLeft,
    /// `Y -> X.Y + Y.A` (base matrix on the right).
    BaseRight,
}

/// A slope for matrix squaring at `a`: at the point `x` it is the two-sided
/// map the chosen form prescribes, and at `x = a` both forms become
/// `Y -> A.Y + Y.A`, the derivative.
pub fn matrix_square_slope(
    spec: &Arc<MetricGroupSpec>,
    a: &GroupElement,
    form: SquareSlopeForm,
) -> Result<SlopeFunction> {
    require_matrix(spec, a, "matrix squaring slope")?;
    let f = matrix_square(spec);
    let s = spec.clone();
    let base = a.clone();
    let a = a.clone();
    SlopeFunction::new(
        f,
        base,
        f64::INFINITY,
        &format!("matrix-square/{form:?}"),
        move |x| match form {
            SquareSlopeForm::BaseLeft => sylvester_hom(&s, &a, x),
            SquareSlopeForm::BaseRight => sylvester_hom(&s, x, &a),
        },
    )
}

/// A deliberately broken slope candidate for matrix squaring: away from the
/// base it is the valid `Y -> A.Y + Y.X`, but at the base it evaluates to
/// `Y -> A.Y + Y.A + Y`. The factorization still holds at every point, yet
/// the map is discontinuous at the base, so it fails the differentiability
/// check and its base value disagrees with the true derivative.
pub fn matrix_square_slope_perturbed(
    spec: &Arc<MetricGroupSpec>,
    a: &GroupElement,
) -> Result<SlopeFunction> {
    require_matrix(spec, a, "perturbed matrix squaring slope")?;
    let f = matrix_square(spec);
    let s = spec.clone();
    let base = a.clone();
    let a = a.clone();
    SlopeFunction::new(
        f,
        base,
        f64::INFINITY,
        "matrix-square/perturbed",
        move |x| {
            if x.payload() == a.payload() {
                Homomorphism::oplus(
                    &sylvester_hom(&s, &a, &a)?,
                    &Homomorphism::identity_map(s.clone()),
                )
            } else {
                sylvester_hom(&s, &a, x)
            }
        },
    )
}

/// The inner automorphism `t -> a * t * a^-1`; on an Abelian group it
/// coincides with the identity map up to rounding.
pub fn adjoint_hom(spec: &Arc<MetricGroupSpec>, a: &GroupElement) -> Result<Homomorphism> {
    spec.check_member(a, "inner automorphism base")?;
    let s = spec.clone();
    let a = a.clone();
    Ok(Homomorphism::primitive(
        spec.clone(),
        spec.clone(),
        "adjoint",
        move |t| {
            let a_inv = s.inverse(&a).expect("member has an inverse");
            s.compose(&s.compose(&a, t).expect("members compose"), &a_inv)
                .expect("members compose")
        },
    ))
}

/// The power map `t -> t^m` on the circle, as a plain function.
pub fn circle_power(spec: &Arc<MetricGroupSpec>, m: i32) -> GroupFunction {
    let s = spec.clone();
    GroupFunction::new(
        spec.clone(),
        spec.clone(),
        &format!("circle-power-{m}"),
        move |x| {
            let theta = crate::groups::angle(x.payload());
            s.element(Payload::Angle(canonical_angle(m as f64 * theta)))
                .expect("angles canonicalize")
        },
    )
}

/// The power map `t -> t^m` on the circle, as a homomorphism (it is one),
/// with the continuity hint `r -> |m| r`.
pub fn circle_power_hom(spec: &Arc<MetricGroupSpec>, m: i32) -> Homomorphism {
    let s = spec.clone();
    let bound = (m.unsigned_abs() as f64).max(1.0);
    Homomorphism::primitive_with_hint(
        spec.clone(),
        spec.clone(),
        &format!("circle-power-{m}"),
        move |r| bound * r,
        move |x| {
            let theta = crate::groups::angle(x.payload());
            s.element(Payload::Angle(canonical_angle(m as f64 * theta)))
                .expect("angles canonicalize")
        },
    )
}

/// The constant slope for circle cubing at `a`: every point gets the cubing
/// homomorphism `t -> t^3`, so the derivative is that same map.
pub fn circle_cube_slope(
    spec: &Arc<MetricGroupSpec>,
    a: &GroupElement,
) -> Result<SlopeFunction> {
    require_angle(spec, a, "circle cubing slope")?;
    let f = circle_power(spec, 3);
    let s = spec.clone();
    SlopeFunction::new(f, a.clone(), f64::INFINITY, "circle-cube", move |_| {
        Ok(circle_power_hom(&s, 3))
    })
}

/// The circle cubing slope written with conjugations: at `x` the value is
/// `t -> t * c(t * c(t))` where `c` conjugates by `x`. Conjugation is
/// trivial on the circle, so this agrees with [`circle_cube_slope`] up to
/// rounding; the form exercises the general-group shape of the expression.
pub fn circle_cube_slope_adjoint(
    spec: &Arc<MetricGroupSpec>,
    a: &GroupElement,
) -> Result<SlopeFunction> {
    require_angle(spec, a, "circle cubing slope")?;
    let f = circle_power(spec, 3);
    let s = spec.clone();
    SlopeFunction::new(
        f,
        a.clone(),
        f64::INFINITY,
        "circle-cube-adjoint",
        move |x| {
            let s2 = s.clone();
            let conj = adjoint_hom(&s, x)?;
            Ok(Homomorphism::primitive(
                s.clone(),
                s.clone(),
                "cube-via-conjugation",
                move |t| {
                    let inner = conj
                        .eval(t)
                        .and_then(|c| s2.compose(t, &c))
                        .and_then(|m| conj.eval(&m))
                        .expect("circle operations do not fail");
                    s2.compose(t, &inner).expect("circle operations do not fail")
                },
            ))
        },
    )
}

/// The constant function `x -> value`.
pub fn constant_function(
    domain: &Arc<MetricGroupSpec>,
    codomain: &Arc<MetricGroupSpec>,
    value: &GroupElement,
) -> Result<GroupFunction> {
    codomain.check_member(value, "constant function value")?;
    let v = value.clone();
    Ok(GroupFunction::new(
        domain.clone(),
        codomain.clone(),
        "constant",
        move |_| v.clone(),
    ))
}

/// The slope of a constant function at `base`: the zero map everywhere, so
/// the derivative is the zero map.
pub fn constant_slope(
    domain: &Arc<MetricGroupSpec>,
    codomain: &Arc<MetricGroupSpec>,
    value: &GroupElement,
    base: &GroupElement,
) -> Result<SlopeFunction> {
    let f = constant_function(domain, codomain, value)?;
    let (d, c) = (domain.clone(), codomain.clone());
    SlopeFunction::new(f, base.clone(), f64::INFINITY, "constant-slope", move |_| {
        Ok(Homomorphism::sigma(d.clone(), c.clone()))
    })
}

/// The identity function `x -> x`.
pub fn identity_function(spec: &Arc<MetricGroupSpec>) -> GroupFunction {
    GroupFunction::new(spec.clone(), spec.clone(), "identity", |x| x.clone())
}

/// The slope of the identity function at `base`: the identity map
/// everywhere, so the derivative is the identity map.
pub fn identity_slope(
    spec: &Arc<MetricGroupSpec>,
    base: &GroupElement,
) -> Result<SlopeFunction> {
    let f = identity_function(spec);
    let s = spec.clone();
    SlopeFunction::new(f, base.clone(), f64::INFINITY, "identity-slope", move |_| {
        Ok(Homomorphism::identity_map(s.clone()))
    })
}

/// The scalar-multiple map `x -> c x` on a group with a scalar action, as a
/// homomorphism.
pub fn linear_hom(spec: &Arc<MetricGroupSpec>, c: f64) -> Result<Homomorphism> {
    if !spec.has_scalar_action() {
        return Err(Error::Unsupported {
            group: spec.id().clone(),
            operation: "scalar_action",
        });
    }
    if !c.is_finite() {
        return Err(Error::Config(String::from("scalar must be finite")));
    }
    let s = spec.clone();
    Ok(Homomorphism::primitive_with_hint(
        spec.clone(),
        spec.clone(),
        &format!("linear-{c}"),
        move |r| c.abs() * r,
        move |x| s.scalar_action(c, x).expect("finite scalar"),
    ))
}

/// The scalar-multiple map `x -> c x` as a plain function.
pub fn linear_function(spec: &Arc<MetricGroupSpec>, c: f64) -> Result<GroupFunction> {
    if !spec.has_scalar_action() {
        return Err(Error::Unsupported {
            group: spec.id().clone(),
            operation: "scalar_action",
        });
    }
    if !c.is_finite() {
        return Err(Error::Config(String::from("scalar must be finite")));
    }
    let s = spec.clone();
    Ok(GroupFunction::new(
        spec.clone(),
        spec.clone(),
        &format!("linear-{c}"),
        move |x| s.scalar_action(c, x).expect("finite scalar"),
    ))
}

/// The slope of `x -> c x` at `base`: constantly the linear homomorphism,
/// so the derivative is `t -> c t`.
pub fn linear_slope(
    spec: &Arc<MetricGroupSpec>,
    c: f64,
    base: &GroupElement,
) -> Result<SlopeFunction> {
    let f = linear_function(spec, c)?;
    let s = spec.clone();
    SlopeFunction::new(
        f,
        base.clone(),
        f64::INFINITY,
        &format!("linear-slope-{c}"),
        move |_| linear_hom(&s, c),
    )
}
