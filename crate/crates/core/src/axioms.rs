//! Sampled checks of the group, metric, and divisibility laws a
//! [`MetricGroupSpec`] claims.
//!
//! Checks draw deterministically from a seed, judge violations against the
//! supplied [`Tolerances`], and record the worst offending inputs as a
//! witness when they fail.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::{MetricGroupSpec, TranslationConstant};
use crate::report::{ProfilePoint, Tolerances, VerificationReport, Witness};
use crate::sample::SampleStream;

fn witness(message: &str, elements: &[&GroupElement]) -> Witness {
    Witness {
        message: String::from(message),
        elements: elements.iter().map(|e| (*e).clone()).collect(),
    }
}

/// Verifies associativity, the identity laws, inverses, and (when claimed)
/// commutativity on sampled triples.
pub fn check_group_axioms(
    spec: &MetricGroupSpec,
    seed: u64,
    count: usize,
    tols: &Tolerances,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        &format!("group-laws/{}", spec.id()),
        "group laws (associativity, identity, inverses, commutativity)",
        tols.fp,
    );
    let mut stream = SampleStream::new(seed);
    let e = spec.identity();
    for _ in 0..count {
        let x = spec.draw(&mut stream);
        let y = spec.draw(&mut stream);
        let z = spec.draw(&mut stream);
        report.samples += 1;

        let xy = spec.compose(&x, &y).unwrap();
        let yz = spec.compose(&y, &z).unwrap();
        let assoc = spec
            .metric(&spec.compose(&xy, &z).unwrap(), &spec.compose(&x, &yz).unwrap())
            .unwrap();
        report.observe(assoc, || witness("associativity residual", &[&x, &y, &z]));

        let ident = spec
            .metric(&spec.compose(&x, &e).unwrap(), &x)
            .unwrap()
            .max(spec.metric(&spec.compose(&e, &x).unwrap(), &x).unwrap());
        report.observe(ident, || witness("identity law residual", &[&x]));

        let xi = spec.inverse(&x).unwrap();
        let inv = spec
            .distance_to_identity(&spec.compose(&x, &xi).unwrap())
            .unwrap()
            .max(
                spec.distance_to_identity(&spec.compose(&xi, &x).unwrap())
                    .unwrap(),
            );
        report.observe(inv, || witness("inverse law residual", &[&x]));

        if spec.is_abelian() {
            let comm = spec.metric(&xy, &spec.compose(&y, &x).unwrap()).unwrap();
            report.observe(comm, || witness("commutativity residual", &[&x, &y]));
        }
    }
    report.finish()
}

/// Verifies the metric laws on sampled pairs and triples: nonnegativity,
/// bit-exact symmetry, zero self-distance, distinguishing distinct samples,
/// and the triangle inequality within `fp`.
pub fn check_metric_axioms(
    spec: &MetricGroupSpec,
    seed: u64,
    count: usize,
    tols: &Tolerances,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        &format!("metric-laws/{}", spec.id()),
        "metric laws (symmetry, identity, triangle inequality)",
        tols.fp,
    );
    let mut stream = SampleStream::new(seed);
    for _ in 0..count {
        let x = spec.draw(&mut stream);
        let y = spec.draw(&mut stream);
        let z = spec.draw(&mut stream);
        report.samples += 1;

        let dxy = spec.metric(&x, &y).unwrap();
        if !dxy.is_finite() || dxy < 0.0 {
            report.and_condition(false, "metric produced a negative or non-finite value");
            if report.witness.is_none() {
                report.witness = Some(witness("negative or non-finite distance", &[&x, &y]));
            }
            continue;
        }
        let dyx = spec.metric(&y, &x).unwrap();
        if dxy.to_bits() != dyx.to_bits() {
            report.and_condition(false, "metric is not symmetric bit-for-bit");
            if report.witness.is_none() {
                report.witness = Some(witness("asymmetric distance", &[&x, &y]));
            }
        }
        if spec.metric(&x, &x).unwrap() != 0.0 {
            report.and_condition(false, "self-distance is not exactly zero");
            if report.witness.is_none() {
                report.witness = Some(witness("nonzero self-distance", &[&x]));
            }
        }
        if dxy == 0.0 && x.payload() != y.payload() {
            report.and_condition(false, "distinct sampled elements at distance zero");
            if report.witness.is_none() {
                report.witness = Some(witness("indistinguishable distinct elements", &[&x, &y]));
            }
        }
        let triangle =
            spec.metric(&x, &z).unwrap() - (dxy + spec.metric(&y, &z).unwrap());
        report.observe(triangle, || witness("triangle inequality residual", &[&x, &y, &z]));
    }
    report.finish()
}

/// Verifies the product inequality at the identity:
/// `d(x*y, e) <= d(x, e) * d(y, e) + d(x, e) + d(y, e)` on sampled pairs.
///
/// Requires the group to claim a compatible metric.
pub fn check_group_metric_axiom1(
    spec: &MetricGroupSpec,
    seed: u64,
    count: usize,
    tols: &Tolerances,
) -> Result<VerificationReport> {
    if !spec.claims_group_metric() {
        return Err(Error::Unsupported {
            group: spec.id().clone(),
            operation: "group metric checks",
        });
    }
    let mut report = VerificationReport::new(
        &format!("product-inequality/{}", spec.id()),
        "product inequality for the group metric at the identity",
        tols.fp,
    );
    let mut stream = SampleStream::new(seed);
    for _ in 0..count {
        let x = spec.draw(&mut stream);
        let y = spec.draw(&mut stream);
        report.samples += 1;
        let dx = spec.distance_to_identity(&x).unwrap();
        let dy = spec.distance_to_identity(&y).unwrap();
        let lhs = spec
            .distance_to_identity(&spec.compose(&x, &y).unwrap())
            .unwrap();
        let violation = lhs - (dx * dy + dx + dy);
        report.observe(violation, || witness("product inequality residual", &[&x, &y]));
    }
    Ok(report.finish())
}

/// Estimates the right-translation Lipschitz constant for a fixed `k`.
///
/// When the group ships a closed-form bound, that bound is returned and
/// flagged exact, with sampling used to validate it; otherwise the constant
/// is the largest sampled ratio `d(x*k, y*k) / d(x, y)`. Pairs at distance
/// zero are skipped and counted. Fails with an estimation error when no
/// usable pair was sampled.
pub fn estimate_translation_constant(
    spec: &MetricGroupSpec,
    k: &GroupElement,
    seed: u64,
    count: usize,
) -> Result<TranslationConstant> {
    spec.check_member(k, "estimate_translation_constant")?;
    if count == 0 {
        return Err(Error::Estimation(String::from(
            "translation estimate needs at least one pair",
        )));
    }
    let mut stream = SampleStream::new(seed);
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    let mut skipped = 0usize;
    for _ in 0..count {
        let x = spec.draw(&mut stream);
        let y = spec.draw(&mut stream);
        let dxy = spec.metric(&x, &y).unwrap();
        if dxy == 0.0 {
            skipped += 1;
            continue;
        }
        let dk = spec
            .metric(&spec.compose(&x, k).unwrap(), &spec.compose(&y, k).unwrap())
            .unwrap();
        pairs.push((dxy, dk));
    }
    if pairs.is_empty() {
        return Err(Error::Estimation(String::from(
            "every sampled pair was degenerate",
        )));
    }
    let max_ratio = pairs
        .iter()
        .map(|(dxy, dk)| dk / dxy)
        .fold(f64::NEG_INFINITY, f64::max);
    let closed = spec.translation_bound(k)?;
    let (constant, exact) = match closed {
        Some(c) => (c, true),
        None => (max_ratio, false),
    };
    let max_violation = pairs
        .iter()
        .map(|(dxy, dk)| dk - constant * dxy)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(TranslationConstant {
        constant,
        exact,
        samples: count,
        skipped,
        max_ratio,
        max_violation,
    })
}

/// Verifies the `n`-fold power of `nth_root(g, n)` recovers `g` within
/// `root`, for each sampled `g` and each requested order.
pub fn check_root_trip(
    spec: &MetricGroupSpec,
    seed: u64,
    count: usize,
    orders: &[u32],
    tols: &Tolerances,
) -> Result<VerificationReport> {
    if !spec.has_nth_root() {
        return Err(Error::Unsupported {
            group: spec.id().clone(),
            operation: "nth_root",
        });
    }
    if orders.is_empty() || orders.contains(&0) {
        return Err(Error::Config(String::from(
            "root orders must be a nonempty list of positive integers",
        )));
    }
    let mut report = VerificationReport::new(
        &format!("root-trip/{}", spec.id()),
        "unique n-th roots (n-fold power round trip)",
        tols.root,
    );
    let mut stream = SampleStream::new(seed);
    for _ in 0..count {
        let g = spec.draw(&mut stream);
        report.samples += 1;
        for &n in orders {
            let root = spec.nth_root(&g, n)?;
            let back = spec.power(&root, u64::from(n))?;
            let violation = spec.metric(&back, &g).unwrap();
            report.observe(violation, || {
                witness("root round-trip residual", &[&g, &root])
            });
        }
    }
    Ok(report.finish())
}

/// Verifies `d(nth_root(x, n), e)` decays along doubling orders up to
/// `n_max`: the recorded sequence must be eventually non-increasing (within
/// `fp` slack) and end below `tail_tol`.
///
/// The caller picks the element; the recorded profile lists one point per
/// order.
pub fn check_root_limit(
    spec: &MetricGroupSpec,
    x: &GroupElement,
    n_max: u32,
    tail_tol: f64,
    tols: &Tolerances,
) -> Result<VerificationReport> {
    spec.check_member(x, "check_root_limit")?;
    if !spec.has_nth_root() {
        return Err(Error::Unsupported {
            group: spec.id().clone(),
            operation: "nth_root",
        });
    }
    if n_max < 2 {
        return Err(Error::Config(String::from("n_max must be at least 2")));
    }
    let mut report = VerificationReport::new(
        &format!("root-limit/{}", spec.id()),
        "n-th roots shrink to the identity",
        tail_tol,
    );
    let mut values = Vec::new();
    let mut n = 2u32;
    loop {
        let d = spec.distance_to_identity(&spec.nth_root(x, n)?).unwrap();
        report.profile.push(ProfilePoint {
            parameter: f64::from(n),
            value: d,
        });
        values.push(d);
        report.samples += 1;
        match n.checked_mul(2) {
            Some(next) if next <= n_max => n = next,
            _ => break,
        }
    }
    let tail = *values.last().unwrap();
    report.max_violation = tail;
    report.and_condition(
        crate::report::eventually_decreasing(&values, tols.fp),
        "root distances do not decay",
    );
    report.notes.push(format!("tail at n={n}: {tail:e}"));
    if report.witness.is_none() && tail > tail_tol {
        report.witness = Some(witness("root limit tail above tolerance", &[x]));
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Payload;
    use crate::groups;
    use crate::math;

    #[test]
    fn shipped_groups_pass_group_and_metric_laws() {
        let tols = Tolerances::default();
        for name in groups::standard_names() {
            let spec = groups::lookup(&name).unwrap();
            let g = check_group_axioms(&spec, 11, 500, &tols);
            assert!(g.passed, "group laws failed for {name}: {g:?}");
            let m = check_metric_axioms(&spec, 12, 500, &tols);
            assert!(m.passed, "metric laws failed for {name}: {m:?}");
            let p = check_group_metric_axiom1(&spec, 13, 500, &tols).unwrap();
            assert!(p.passed, "product inequality failed for {name}: {p:?}");
        }
    }

    #[test]
    fn broken_metric_fails_with_witness() {
        // Same group as the additive reals but with a signed "metric".
        let broken = MetricGroupSpec::builder("broken-metric", Payload::Real(0.0))
            .abelian(true)
            .compose(|a, b| {
                let (Payload::Real(x), Payload::Real(y)) = (a, b) else {
                    unreachable!()
                };
                Payload::Real(x + y)
            })
            .inverse(|a| {
                let Payload::Real(x) = a else { unreachable!() };
                Payload::Real(-x)
            })
            .metric(|a, b| {
                let (Payload::Real(x), Payload::Real(y)) = (a, b) else {
                    unreachable!()
                };
                x - y
            })
            .validate(Ok)
            .draw(|s| Payload::Real(s.normal()))
            .build();
        let report = check_metric_axioms(&broken, 5, 200, &Tolerances::default());
        assert!(!report.passed);
        assert!(report.witness.is_some());
    }

    #[test]
    fn product_inequality_is_equality_for_real_arguments() {
        // For real x, y the three complex terms are collinear, so the
        // inequality is tight: |xy - 1| = (x-1)(y-1) + (x-1) + (y-1).
        let spec = groups::make_complex_multiplicative();
        let x = spec.element(Payload::Complex { re: 2.0, im: 0.0 }).unwrap();
        let y = spec.element(Payload::Complex { re: 3.0, im: 0.0 }).unwrap();
        let lhs = spec
            .distance_to_identity(&spec.compose(&x, &y).unwrap())
            .unwrap();
        let dx = spec.distance_to_identity(&x).unwrap();
        let dy = spec.distance_to_identity(&y).unwrap();
        assert_eq!(lhs, 5.0);
        assert!((lhs - (dx * dy + dx + dy)).abs() <= 1e-12);
    }

    #[test]
    fn translation_constant_matrix_is_exactly_one() {
        let spec = groups::make_matrix_additive(2).unwrap();
        let k = spec
            .element(Payload::Matrix {
                n: 2,
                entries: alloc::vec![3.0, -1.0, 0.5, 2.0],
            })
            .unwrap();
        let t = estimate_translation_constant(&spec, &k, 21, 2000).unwrap();
        assert!(t.exact);
        assert_eq!(t.constant, 1.0);
        assert!(t.max_violation <= 1e-12);
        assert!((t.max_ratio - 1.0).abs() < 1e-9);
    }

    #[test]
    fn translation_constant_complex_estimates_modulus() {
        let spec = groups::make_complex_multiplicative();
        let k = spec.element(Payload::Complex { re: 2.0, im: 0.0 }).unwrap();
        let t = estimate_translation_constant(&spec, &k, 22, 5000).unwrap();
        assert!(!t.exact);
        assert!((t.constant - 2.0).abs() < 1e-9, "constant {}", t.constant);
    }

    #[test]
    fn translation_estimate_with_zero_pairs_errors() {
        let spec = groups::make_real_additive();
        let k = spec.element(Payload::Real(1.0)).unwrap();
        assert!(matches!(
            estimate_translation_constant(&spec, &k, 1, 0),
            Err(Error::Estimation(_))
        ));
    }

    #[test]
    fn root_trips_hold_on_divisible_groups() {
        let tols = Tolerances::default();
        let orders = [2u32, 3, 4, 5, 8, 16, 32, 64];
        for name in ["real-add", "pos-real-mul", "circle", "matrix-add:2"] {
            let spec = groups::lookup(name).unwrap();
            let r = check_root_trip(&spec, 31, 200, &orders, &tols).unwrap();
            assert!(r.passed, "root trip failed for {name}: {r:?}");
        }
    }

    #[test]
    fn root_limit_decays_for_canonical_elements() {
        let tols = Tolerances::default();
        let real = groups::make_real_additive();
        let x = real.element(Payload::Real(1.0)).unwrap();
        let r = check_root_limit(&real, &x, 1024, 1e-2, &tols).unwrap();
        assert!(r.passed);
        // 1 / 1024 under the additive metric.
        let tail = r.profile.last().unwrap().value;
        assert!((tail - 1.0 / 1024.0).abs() < 1e-15);

        let circle = groups::make_circle();
        let c = circle.element(Payload::Angle(math::PI / 2.0)).unwrap();
        assert!(check_root_limit(&circle, &c, 1024, 1e-2, &tols)
            .unwrap()
            .passed);
    }

    #[test]
    fn root_checks_need_root_support() {
        let spec = groups::make_complex_multiplicative();
        let tols = Tolerances::default();
        assert!(matches!(
            check_root_trip(&spec, 1, 10, &[2], &tols),
            Err(Error::Unsupported { .. })
        ));
        let x = spec.element(Payload::Complex { re: 1.0, im: 1.0 }).unwrap();
        assert!(matches!(
            check_root_limit(&spec, &x, 16, 1e-2, &tols),
            Err(Error::Unsupported { .. })
        ));
    }
}
