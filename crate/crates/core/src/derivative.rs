//! Slope functions and the derivative built from them.
//!
//! A function `f` between metric groups is differentiable at a base point
//! `a` when a homomorphism-valued slope `phi` satisfies the factorization
//! `f(x) * f(a)^-1 = phi(x)[x * a^-1]` near `a` and is continuous at `a`;
//! the derivative is `phi(a)`. This module carries the function and slope
//! types, the sampled differentiability check, a root-based uniqueness
//! probe, the sum/scale/chain combinators, and a finite-difference
//! cross-check for additive codomains.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::MetricGroupSpec;
use crate::hom::{hom_metric, Homomorphism, ProbeSet};
use crate::report::{eventually_decreasing, ProfilePoint, Tolerances, VerificationReport, Witness};
use crate::sample::SampleStream;

type MapFn = Arc<dyn Fn(&GroupElement) -> GroupElement + Send + Sync>;
type SlopeFn = Arc<dyn Fn(&GroupElement) -> Result<Homomorphism> + Send + Sync>;

/// A plain function between two groups (no law assumed).
#[derive(Clone)]
pub struct GroupFunction {
    domain: Arc<MetricGroupSpec>,
    codomain: Arc<MetricGroupSpec>,
    label: String,
    map: MapFn,
}

impl GroupFunction {
    /// Wraps a raw map.
    pub fn new<F>(
        domain: Arc<MetricGroupSpec>,
        codomain: Arc<MetricGroupSpec>,
        label: &str,
        map: F,
    ) -> GroupFunction
    where
        F: Fn(&GroupElement) -> GroupElement + Send + Sync + 'static,
    {
        GroupFunction {
            domain,
            codomain,
            label: String::from(label),
            map: Arc::new(map),
        }
    }

    /// Domain description.
    pub fn domain(&self) -> &Arc<MetricGroupSpec> {
        &self.domain
    }

    /// Codomain description.
    pub fn codomain(&self) -> &Arc<MetricGroupSpec> {
        &self.codomain
    }

    /// Human-readable label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluates the function, checking membership on both sides.
    pub fn eval(&self, x: &GroupElement) -> Result<GroupElement> {
        self.domain.check_member(x, "function evaluation")?;
        let y = (self.map)(x);
        self.codomain.check_member(&y, "function output")?;
        Ok(y)
    }
}

impl core::fmt::Debug for GroupFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "GroupFunction({} : {} -> {})",
            self.label,
            self.domain.id(),
            self.codomain.id()
        )
    }
}

/// Composition `(g . f)(x) = g(f(x))`.
pub fn compose_functions(g: &GroupFunction, f: &GroupFunction) -> Result<GroupFunction> {
    if f.codomain.id() != g.domain.id() {
        return Err(Error::Contract(format!(
            "function composition needs inner codomain '{}' to match outer domain '{}'",
            f.codomain.id(),
            g.domain.id()
        )));
    }
    let (gm, fm) = (g.map.clone(), f.map.clone());
    Ok(GroupFunction {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        label: format!("({} . {})", g.label, f.label),
        map: Arc::new(move |x| gm(&fm(x))),
    })
}

/// A candidate slope for a function at a base point: a homomorphism-valued
/// map defined on the ball of `radius` around `base` (infinite radius means
/// everywhere).
///
/// Holding a `SlopeFunction` asserts nothing; [`check_differentiable`]
/// verifies the factorization and the continuity that make it an actual
/// slope, and [`SlopeFunction::derivative`] reads off the derivative.
#[derive(Clone)]
pub struct SlopeFunction {
    function: GroupFunction,
    base: GroupElement,
    radius: f64,
    label: String,
    slope_at: SlopeFn,
}

impl SlopeFunction {
    /// Bundles a function, a base point in its domain, a domain-of-validity
    /// radius (positive; `f64::INFINITY` for everywhere), and the slope map.
    pub fn new<F>(
        function: GroupFunction,
        base: GroupElement,
        radius: f64,
        label: &str,
        slope_at: F,
    ) -> Result<SlopeFunction>
    where
        F: Fn(&GroupElement) -> Result<Homomorphism> + Send + Sync + 'static,
    {
        function.domain.check_member(&base, "slope base point")?;
        if !(radius > 0.0) {
            return Err(Error::Config(String::from(
                "slope radius must be positive (possibly infinite)",
            )));
        }
        Ok(SlopeFunction {
            function,
            base,
            radius,
            label: String::from(label),
            slope_at: Arc::new(slope_at),
        })
    }

    /// The function this slope belongs to.
    pub fn function(&self) -> &GroupFunction {
        &self.function
    }

    /// The base point.
    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    /// The domain-of-validity radius around the base point.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Human-readable label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// The slope at `x`, which must lie within `radius` of the base point.
    pub fn slope_at(&self, x: &GroupElement) -> Result<Homomorphism> {
        self.function.domain.check_member(x, "slope evaluation")?;
        if self.radius.is_finite() {
            let d = self.function.domain.metric(x, &self.base)?;
            if d > self.radius {
                return Err(Error::Contract(format!(
                    "slope '{}' evaluated at distance {d:e} from its base, beyond radius {:e}",
                    self.label, self.radius
                )));
            }
        }
        (self.slope_at)(x)
    }

    /// The derivative: the slope's value at the base point.
    pub fn derivative(&self) -> Result<Homomorphism> {
        self.slope_at(&self.base)
    }
}

impl core::fmt::Debug for SlopeFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "SlopeFunction({} for {:?} at {})",
            self.label,
            self.function,
            self.base.payload()
        )
    }
}

/// Outcome of [`check_differentiable`]: the factorization residuals over
/// sampled points and the slope's continuity profile toward the base.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DifferentiabilityReport {
    /// Check identifier (derived from the slope label).
    pub check: String,
    /// Overall verdict.
    pub passed: bool,
    /// Sampled points across all radii.
    pub samples: usize,
    /// Largest raw factorization residual seen.
    pub max_factorization_residual: f64,
    /// Largest residual relative to its allowance
    /// `fact_abs + fact_rel * local magnitude` (at most 1 on a pass).
    pub max_allowance_ratio: f64,
    /// Largest slope-to-base distance per sweep radius.
    pub continuity_profile: Vec<ProfilePoint>,
    /// Final value of the continuity profile.
    pub continuity_tail: f64,
    /// Description of the probe set used for the slope distances.
    pub probe: String,
    /// First sampled point whose residual exceeded its allowance, if any.
    pub witness: Option<Witness>,
    /// Failure explanations and context.
    pub notes: Vec<String>,
}

/// Verifies that a slope function witnesses differentiability at its base:
/// on every sweep radius the factorization `f(x) * f(a)^-1 =
/// slope(x)[x * a^-1]` holds within `fact_abs + fact_rel * magnitude`, and
/// the slope's distance to its base value decays along the radii, ending
/// below `slope_tail_tol`.
///
/// `radii` must be strictly decreasing, positive, and within the slope's
/// validity radius.
pub fn check_differentiable(
    s: &SlopeFunction,
    radii: &[f64],
    probe: &ProbeSet,
    seed: u64,
    count: usize,
    slope_tail_tol: f64,
    tols: &Tolerances,
) -> Result<DifferentiabilityReport> {
    if radii.is_empty() || radii.iter().any(|r| !r.is_finite() || *r <= 0.0) {
        return Err(Error::Config(String::from(
            "radii must be a nonempty list of positive numbers",
        )));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Config(String::from(
            "radii must be strictly decreasing",
        )));
    }
    if radii.iter().any(|r| *r > s.radius) {
        return Err(Error::Config(format!(
            "sweep radius exceeds the slope's validity radius {:e}",
            s.radius
        )));
    }
    let f = &s.function;
    let domain = f.domain.clone();
    let codomain = f.codomain.clone();
    let a = s.base.clone();
    let fa = f.eval(&a)?;
    let fa_inv = codomain.inverse(&fa)?;
    let fa_mag = codomain.distance_to_identity(&fa)?;
    let base_slope = s.derivative()?;

    let mut report = DifferentiabilityReport {
        check: format!("differentiable/{}", s.label),
        passed: true,
        samples: 0,
        max_factorization_residual: 0.0,
        max_allowance_ratio: 0.0,
        continuity_profile: Vec::with_capacity(radii.len()),
        continuity_tail: f64::NAN,
        probe: String::from(probe.description()),
        witness: None,
        notes: Vec::new(),
    };

    let mut stream = SampleStream::new(seed);
    let mut continuity = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut slope_gap = 0.0f64;
        for _ in 0..count {
            let t = domain.probe_point(r, &mut stream)?;
            let x = domain.compose(&t, &a)?;
            report.samples += 1;

            let fx = f.eval(&x)?;
            let lhs = codomain.compose(&fx, &fa_inv)?;
            let slope_x = s.slope_at(&x)?;
            let rhs = slope_x.eval(&domain.compose(&x, &domain.inverse(&a)?)?)?;
            let residual = codomain.metric(&lhs, &rhs)?;
            let magnitude = codomain.distance_to_identity(&fx)?.max(fa_mag);
            let allowance = tols.fact_abs + tols.fact_rel * magnitude;
            let ratio = residual / allowance;
            report.max_factorization_residual = report.max_factorization_residual.max(residual);
            if ratio > report.max_allowance_ratio {
                report.max_allowance_ratio = ratio;
                if ratio > 1.0 && report.witness.is_none() {
                    report.witness = Some(Witness {
                        message: format!(
                            "factorization residual {residual:e} exceeds allowance {allowance:e}"
                        ),
                        elements: alloc::vec![x.clone()],
                    });
                }
            }

            slope_gap = slope_gap.max(hom_metric(&slope_x, &base_slope, probe)?);
        }
        report.continuity_profile.push(ProfilePoint {
            parameter: r,
            value: slope_gap,
        });
        continuity.push(slope_gap);
    }
    report.continuity_tail = *continuity.last().unwrap();

    if report.max_allowance_ratio > 1.0 {
        report.passed = false;
        report
            .notes
            .push(String::from("factorization residual out of tolerance"));
    }
    if !eventually_decreasing(&continuity, tols.fp) {
        report.passed = false;
        report
            .notes
            .push(String::from("slope distances to the base value do not decay"));
    }
    if !(report.continuity_tail < slope_tail_tol) {
        report.passed = false;
        report.notes.push(format!(
            "slope continuity tail {:e} not below {slope_tail_tol:e}",
            report.continuity_tail
        ));
    }
    report
        .notes
        .push(String::from("slope distances are probe lower bounds for the sup metric"));
    Ok(report)
}

/// Probes derivative uniqueness: two slope candidates for the same function
/// and base are driven toward the base along `x_n = z^(1/n) * a` with `n`
/// doubling up to `n_max`; both must converge to their base values (profile
/// decaying, tails below `tail_tol`) and those base values must agree within
/// `agreement_tol` in the probe metric.
///
/// Requires a divisible domain and `z` in it.
pub fn uniqueness_probe(
    s1: &SlopeFunction,
    s2: &SlopeFunction,
    z: &GroupElement,
    n_max: u32,
    probe: &ProbeSet,
    agreement_tol: f64,
    tail_tol: f64,
    tols: &Tolerances,
) -> Result<VerificationReport> {
    let domain = s1.function.domain.clone();
    if s2.function.domain.id() != domain.id()
        || s2.function.codomain.id() != s1.function.codomain.id()
    {
        return Err(Error::Contract(String::from(
            "uniqueness probe needs slopes over the same pair of groups",
        )));
    }
    if s1.base.payload() != s2.base.payload() {
        return Err(Error::Contract(String::from(
            "uniqueness probe needs slopes at the same base point",
        )));
    }
    if !domain.claims_divisible() {
        return Err(Error::Unsupported {
            group: domain.id().clone(),
            operation: "uniqueness probe (divisible domain required)",
        });
    }
    if n_max == 0 {
        return Err(Error::Config(String::from("n_max must be positive")));
    }
    domain.check_member(z, "uniqueness probe offset")?;

    let mut report = VerificationReport::new(
        &format!("uniqueness/{}", s1.function.label),
        "uniqueness of the derivative",
        tail_tol,
    );
    report.probe = Some(String::from(probe.description()));
    let d1_base = s1.derivative()?;
    let d2_base = s2.derivative()?;
    let agreement = hom_metric(&d1_base, &d2_base, probe)?;
    report.and_condition(
        agreement <= agreement_tol,
        "the two candidate derivatives disagree at the base point",
    );
    report.notes.push(format!(
        "derivative agreement at the base point: {agreement:e}"
    ));

    let mut gaps1 = Vec::new();
    let mut gaps2 = Vec::new();
    let mut merged = Vec::new();
    let mut n = 1u32;
    while n <= n_max {
        let x = domain.compose(&domain.nth_root(z, n)?, &s1.base)?;
        let g1 = hom_metric(&s1.slope_at(&x)?, &d1_base, probe)?;
        let g2 = hom_metric(&s2.slope_at(&x)?, &d2_base, probe)?;
        report.profile.push(ProfilePoint {
            parameter: n as f64,
            value: g1.max(g2),
        });
        gaps1.push(g1);
        gaps2.push(g2);
        merged.push(g1.max(g2));
        report.samples += 1;
        if n > n_max / 2 {
            break;
        }
        n *= 2;
    }
    report.max_violation = *merged.last().unwrap();
    report.and_condition(
        eventually_decreasing(&gaps1, tols.fp),
        "first slope's distances to its base value do not decay",
    );
    report.and_condition(
        eventually_decreasing(&gaps2, tols.fp),
        "second slope's distances to its base value do not decay",
    );
    report
        .notes
        .push(String::from("profile records the larger of the two slope gaps per step"));
    Ok(report.finish())
}

/// Continuity of a differentiable function at a point, observed directly:
/// for each sweep radius the largest displacement `d(f(x), f(a))` over
/// sampled `x` within that radius of `a`. Passes when the moduli decay and
/// end below `tail_tol`.
pub fn continuity_from_differentiability(
    f: &GroupFunction,
    a: &GroupElement,
    radii: &[f64],
    seed: u64,
    count: usize,
    tail_tol: f64,
    tols: &Tolerances,
) -> Result<VerificationReport> {
    if radii.is_empty() || radii.iter().any(|r| !r.is_finite() || *r <= 0.0) {
        return Err(Error::Config(String::from(
            "radii must be a nonempty list of positive numbers",
        )));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Config(String::from(
            "radii must be strictly decreasing",
        )));
    }
    f.domain.check_member(a, "continuity base point")?;
    let mut report = VerificationReport::new(
        &format!("continuity/{}", f.label),
        "differentiability implies continuity",
        tail_tol,
    );
    let fa = f.eval(a)?;
    let mut stream = SampleStream::new(seed);
    let mut moduli = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut modulus = 0.0f64;
        for _ in 0..count {
            let t = f.domain.probe_point(r, &mut stream)?;
            let x = f.domain.compose(&t, a)?;
            modulus = modulus.max(f.codomain.metric(&f.eval(&x)?, &fa)?);
            report.samples += 1;
        }
        report.profile.push(ProfilePoint {
            parameter: r,
            value: modulus,
        });
        moduli.push(modulus);
    }
    report.max_violation = *moduli.last().unwrap();
    report.and_condition(
        eventually_decreasing(&moduli, tols.fp),
        "displacement moduli do not decay",
    );
    Ok(report.finish())
}

/// Sum rule: from slopes for `f` and `g` at the same base, a slope for the
/// pointwise product `x -> f(x) * g(x)` whose value is the pointwise sum of
/// the inputs' slopes. Needs an Abelian codomain.
pub fn slope_sum(sf: &SlopeFunction, sg: &SlopeFunction) -> Result<SlopeFunction> {
    let (f, g) = (&sf.function, &sg.function);
    if f.domain.id() != g.domain.id() || f.codomain.id() != g.codomain.id() {
        return Err(Error::Contract(String::from(
            "sum rule needs slopes over the same pair of groups",
        )));
    }
    if sf.base.payload() != sg.base.payload() {
        return Err(Error::Contract(String::from(
            "sum rule needs slopes at the same base point",
        )));
    }
    if !f.codomain.is_abelian() {
        return Err(Error::Unsupported {
            group: f.codomain.id().clone(),
            operation: "sum rule (codomain must be Abelian)",
        });
    }
    let cod = f.codomain.clone();
    let (fm, gm) = (f.map.clone(), g.map.clone());
    let product = GroupFunction {
        domain: f.domain.clone(),
        codomain: f.codomain.clone(),
        label: format!("({} * {})", f.label, g.label),
        map: Arc::new(move |x| cod.compose(&fm(x), &gm(x)).expect("matching codomain")),
    };
    let (s1, s2) = (sf.clone(), sg.clone());
    SlopeFunction::new(
        product,
        sf.base.clone(),
        sf.radius.min(sg.radius),
        &format!("({} (+) {})", sf.label, sg.label),
        move |x| Homomorphism::oplus(&s1.slope_at(x)?, &s2.slope_at(x)?),
    )
}

/// Homogeneity: from a slope for `f`, a slope for `x -> alpha * f(x)` whose
/// value is `alpha` times the input's slope. Needs a scalar action on the
/// codomain.
pub fn slope_scale(alpha: f64, s: &SlopeFunction) -> Result<SlopeFunction> {
    if !s.function.codomain.has_scalar_action() {
        return Err(Error::Unsupported {
            group: s.function.codomain.id().clone(),
            operation: "scalar_action",
        });
    }
    if !alpha.is_finite() {
        return Err(Error::Config(String::from("scalar must be finite")));
    }
    let cod = s.function.codomain.clone();
    let fm = s.function.map.clone();
    let scaled = GroupFunction {
        domain: s.function.domain.clone(),
        codomain: s.function.codomain.clone(),
        label: format!("{}*({})", alpha, s.function.label),
        map: Arc::new(move |x| cod.scalar_action(alpha, &fm(x)).expect("finite scalar")),
    };
    let inner = s.clone();
    SlopeFunction::new(
        scaled,
        s.base.clone(),
        s.radius,
        &format!("{}*({})", alpha, s.label),
        move |x| Homomorphism::scale(alpha, &inner.slope_at(x)?),
    )
}

/// Chain rule: from a slope for `f` at `a` and a slope for `g` at `f(a)`, a
/// slope for `g . f` at `a` whose value at `x` is the composition
/// `slope_g(f(x)) . slope_f(x)`.
///
/// When the outer slope's validity radius is finite, the returned slope's
/// radius is shrunk (sampled with `seed`/`count`) until images of the inner
/// ball land inside the outer ball.
pub fn slope_chain(
    sg: &SlopeFunction,
    sf: &SlopeFunction,
    seed: u64,
    count: usize,
) -> Result<SlopeFunction> {
    let (f, g) = (&sf.function, &sg.function);
    if f.codomain.id() != g.domain.id() {
        return Err(Error::Contract(format!(
            "chain rule needs inner codomain '{}' to match outer domain '{}'",
            f.codomain.id(),
            g.domain.id()
        )));
    }
    let fa = f.eval(&sf.base)?;
    if fa.payload() != sg.base.payload() {
        return Err(Error::Contract(String::from(
            "chain rule needs the outer base to equal the inner function's value at its base",
        )));
    }
    let radius = if sg.radius.is_finite() {
        let mut r = if sf.radius.is_finite() {
            sf.radius
        } else {
            f.domain.sample_scale()
        };
        let mut stream = SampleStream::new(seed);
        'shrink: loop {
            let mut ok = true;
            for _ in 0..count.max(8) {
                let t = f.domain.probe_point(r, &mut stream)?;
                let x = f.domain.compose(&t, &sf.base)?;
                if g.domain.metric(&f.eval(&x)?, &fa)? > sg.radius {
                    ok = false;
                    break;
                }
            }
            if ok {
                break 'shrink r;
            }
            r /= 2.0;
            if r < 1e-12 * f.domain.sample_scale() {
                return Err(Error::Estimation(String::from(
                    "could not find a chain-rule radius keeping images inside the outer ball",
                )));
            }
        }
    } else {
        sf.radius
    };
    let composed = compose_functions(g, f)?;
    let (outer, inner) = (sg.clone(), sf.clone());
    let inner_map = f.clone();
    SlopeFunction::new(
        composed,
        sf.base.clone(),
        radius,
        &format!("({} o {})", sg.label, sf.label),
        move |x| {
            Homomorphism::compose(
                &outer.slope_at(&inner_map.eval(x)?)?,
                &inner.slope_at(x)?,
            )
        },
    )
}

/// Finite-difference cross-check for groups with scalar actions:
/// `(1/h) * (f(a * (h*y)) * f(a)^-1)`, the discrete directional derivative
/// of `f` at `a` along `y` with step `h > 0`.
pub fn frechet_fd_oracle(
    f: &GroupFunction,
    a: &GroupElement,
    y: &GroupElement,
    h: f64,
) -> Result<GroupElement> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Config(String::from(
            "finite-difference step must be positive and finite",
        )));
    }
    if !f.domain.has_scalar_action() || !f.codomain.has_scalar_action() {
        return Err(Error::Unsupported {
            group: f.domain.id().clone(),
            operation: "finite differences (scalar actions required on both sides)",
        });
    }
    let step = f.domain.scalar_action(h, y)?;
    let x = f.domain.compose(a, &step)?;
    let diff = f
        .codomain
        .compose(&f.eval(&x)?, &f.codomain.inverse(&f.eval(a)?)?)?;
    f.codomain.scalar_action(1.0 / h, &diff)
}
