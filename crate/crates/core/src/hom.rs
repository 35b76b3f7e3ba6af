//! The space of homomorphisms between two metric groups: pointwise group
//! structure, a bounded sup metric, and sampled law checks.
//!
//! A [`Homomorphism`] is an immutable expression tree over primitive maps:
//! pointwise sums, pointwise inverses, compositions, and scalar multiples.
//! Evaluation checks group membership at every boundary, so a malformed tree
//! surfaces as an error rather than a wrong value.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::MetricGroupSpec;
use crate::report::{eventually_decreasing, ProfilePoint, Tolerances, VerificationReport, Witness};
use crate::sample::SampleStream;

type PrimitiveFn = Arc<dyn Fn(&GroupElement) -> GroupElement + Send + Sync>;
type HintFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Body {
    Primitive(PrimitiveFn),
    Oplus(Arc<Homomorphism>, Arc<Homomorphism>),
    PointInverse(Arc<Homomorphism>),
    Compose {
        outer: Arc<Homomorphism>,
        inner: Arc<Homomorphism>,
    },
    Scale(f64, Arc<Homomorphism>),
}

/// A map between two groups, treated as a point of the homomorphism space.
///
/// Constructors only combine maps with matching groups; whether a map
/// actually satisfies the homomorphism law is a separate, sampled question
/// answered by [`check_homomorphism_law`].
#[derive(Clone)]
pub struct Homomorphism {
    domain: Arc<MetricGroupSpec>,
    codomain: Arc<MetricGroupSpec>,
    label: String,
    hint: Option<HintFn>,
    body: Body,
}

impl Homomorphism {
    /// Wraps a raw map.
    pub fn primitive<F>(
        domain: Arc<MetricGroupSpec>,
        codomain: Arc<MetricGroupSpec>,
        label: &str,
        f: F,
    ) -> Homomorphism
    where
        F: Fn(&GroupElement) -> GroupElement + Send + Sync + 'static,
    {
        Homomorphism {
            domain,
            codomain,
            label: String::from(label),
            hint: None,
            body: Body::Primitive(Arc::new(f)),
        }
    }

    /// Wraps a raw map together with a modulus-of-continuity hint at the
    /// identity: `hint(r)` bounds the image distance for inputs within `r`
    /// of the identity. The radius-sweep check validates the hint.
    pub fn primitive_with_hint<F, H>(
        domain: Arc<MetricGroupSpec>,
        codomain: Arc<MetricGroupSpec>,
        label: &str,
        hint: H,
        f: F,
    ) -> Homomorphism
    where
        F: Fn(&GroupElement) -> GroupElement + Send + Sync + 'static,
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut h = Homomorphism::primitive(domain, codomain, label, f);
        h.hint = Some(Arc::new(hint));
        h
    }

    /// The zero map: every input goes to the codomain identity.
    pub fn sigma(domain: Arc<MetricGroupSpec>, codomain: Arc<MetricGroupSpec>) -> Homomorphism {
        let e = codomain.identity();
        let mut h = Homomorphism::primitive(domain, codomain, "sigma", move |_| e.clone());
        h.hint = Some(Arc::new(|_| 0.0));
        h
    }

    /// The identity map of a group.
    pub fn identity_map(spec: Arc<MetricGroupSpec>) -> Homomorphism {
        let mut h =
            Homomorphism::primitive(spec.clone(), spec, "id", |x: &GroupElement| x.clone());
        h.hint = Some(Arc::new(|r| r));
        h
    }

    /// Pointwise sum `(phi (+) psi)[x] = phi[x] * psi[x]`.
    ///
    /// Requires matching domains and codomains and an Abelian codomain (the
    /// pointwise sum of homomorphisms lands back in the space only then).
    pub fn oplus(phi: &Homomorphism, psi: &Homomorphism) -> Result<Homomorphism> {
        if phi.domain.id() != psi.domain.id() || phi.codomain.id() != psi.codomain.id() {
            return Err(Error::Contract(format!(
                "pointwise sum needs matching spaces: ({} -> {}) vs ({} -> {})",
                phi.domain.id(),
                phi.codomain.id(),
                psi.domain.id(),
                psi.codomain.id()
            )));
        }
        if !phi.codomain.is_abelian() {
            return Err(Error::Unsupported {
                group: phi.codomain.id().clone(),
                operation: "pointwise sum (codomain must be Abelian)",
            });
        }
        Ok(Homomorphism {
            domain: phi.domain.clone(),
            codomain: phi.codomain.clone(),
            label: format!("({} (+) {})", phi.label, psi.label),
            hint: None,
            body: Body::Oplus(Arc::new(phi.clone()), Arc::new(psi.clone())),
        })
    }

    /// Pointwise inverse `phi^-1[x] = phi[x^-1]`.
    pub fn hom_inverse(phi: &Homomorphism) -> Homomorphism {
        Homomorphism {
            domain: phi.domain.clone(),
            codomain: phi.codomain.clone(),
            label: format!("inv({})", phi.label),
            hint: None,
            body: Body::PointInverse(Arc::new(phi.clone())),
        }
    }

    /// Composition `(outer . inner)[x] = outer[inner[x]]`.
    pub fn compose(outer: &Homomorphism, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.codomain.id() != outer.domain.id() {
            return Err(Error::Contract(format!(
                "composition needs inner codomain '{}' to match outer domain '{}'",
                inner.codomain.id(),
                outer.domain.id()
            )));
        }
        Ok(Homomorphism {
            domain: inner.domain.clone(),
            codomain: outer.codomain.clone(),
            label: format!("({} . {})", outer.label, inner.label),
            hint: None,
            body: Body::Compose {
                outer: Arc::new(outer.clone()),
                inner: Arc::new(inner.clone()),
            },
        })
    }

    /// Scalar multiple `(alpha phi)[x] = alpha * phi[x]`; needs a scalar
    /// action on the codomain.
    pub fn scale(alpha: f64, phi: &Homomorphism) -> Result<Homomorphism> {
        if !phi.codomain.has_scalar_action() {
            return Err(Error::Unsupported {
                group: phi.codomain.id().clone(),
                operation: "scalar_action",
            });
        }
        if !alpha.is_finite() {
            return Err(Error::Config(String::from("scalar must be finite")));
        }
        Ok(Homomorphism {
            domain: phi.domain.clone(),
            codomain: phi.codomain.clone(),
            label: format!("{}*({})", alpha, phi.label),
            hint: None,
            body: Body::Scale(alpha, Arc::new(phi.clone())),
        })
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

    /// Modulus-of-continuity hint at the identity, when one was supplied.
    pub fn continuity_hint(&self, radius: f64) -> Option<f64> {
        self.hint.as_ref().map(|h| h(radius))
    }

    /// Evaluates the map, checking membership at every boundary.
    pub fn eval(&self, x: &GroupElement) -> Result<GroupElement> {
        self.domain.check_member(x, "homomorphism evaluation")?;
        match &self.body {
            Body::Primitive(f) => {
                let y = f(x);
                self.codomain
                    .check_member(&y, "primitive homomorphism output")?;
                Ok(y)
            }
            Body::Oplus(l, r) => self.codomain.compose(&l.eval(x)?, &r.eval(x)?),
            Body::PointInverse(h) => h.eval(&self.domain.inverse(x)?),
            Body::Compose { outer, inner } => outer.eval(&inner.eval(x)?),
            Body::Scale(alpha, h) => self.codomain.scalar_action(*alpha, &h.eval(x)?),
        }
    }
}

impl core::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Homomorphism({} : {} -> {})",
            self.label,
            self.domain.id(),
            self.codomain.id()
        )
    }
}

/// A finite, nonempty set of evaluation points in one group.
///
/// The sup metric on homomorphisms is approximated from below by maximizing
/// over a probe set; enlarging the probe can only increase the value.
#[derive(Clone, Debug)]
pub struct ProbeSet {
    group: Arc<MetricGroupSpec>,
    points: Vec<GroupElement>,
    description: String,
}

impl ProbeSet {
    /// Wraps explicit points; they must be nonempty and share `group`.
    pub fn new(
        group: Arc<MetricGroupSpec>,
        points: Vec<GroupElement>,
        description: &str,
    ) -> Result<ProbeSet> {
        if points.is_empty() {
            return Err(Error::Config(String::from("probe set must be nonempty")));
        }
        for p in &points {
            group.check_member(p, "probe point")?;
        }
        Ok(ProbeSet {
            group,
            points,
            description: String::from(description),
        })
    }

    /// The default probe: `count` points whose distances from the identity
    /// are log-spaced over `[1e-2, 1e2]` times the group's sampling scale,
    /// with one eighth of the points moved into the identity's near
    /// neighborhood (scales from 1e-5 down).
    pub fn standard(group: Arc<MetricGroupSpec>, count: usize, seed: u64) -> Result<ProbeSet> {
        if count == 0 {
            return Err(Error::Config(String::from("probe count must be positive")));
        }
        if !group.has_probe_points() {
            return Err(Error::Unsupported {
                group: group.id().clone(),
                operation: "probe_point",
            });
        }
        let near = count / 8;
        let main = count - near;
        let scale = group.sample_scale();
        let (lo, hi) = (1e-2 * scale, 1e2 * scale);
        let mut stream = SampleStream::new(seed);
        let mut points = Vec::with_capacity(count);
        for i in 0..main {
            let t = if main == 1 {
                0.5
            } else {
                i as f64 / (main - 1) as f64
            };
            let s = lo * crate::math::powf(hi / lo, t);
            points.push(group.probe_point(s, &mut stream)?);
        }
        for j in 0..near {
            let s = scale * crate::math::powf(10.0, -5.0 - j as f64);
            points.push(group.probe_point(s, &mut stream)?);
        }
        let description = format!(
            "standard(count={count}, scales=[1e-2,1e2]x{scale}, near-identity={near}, seed={seed})"
        );
        Ok(ProbeSet {
            group,
            points,
            description: description.clone(),
        })
    }

    /// The probe's group.
    pub fn group(&self) -> &Arc<MetricGroupSpec> {
        &self.group
    }

    /// The points.
    pub fn points(&self) -> &[GroupElement] {
        &self.points
    }

    /// Human-readable description, recorded in reports.
    pub fn description(&self) -> &str {
        &self.description
    }

    /// Union of two probes over the same group (order preserved).
    pub fn merged(&self, other: &ProbeSet) -> Result<ProbeSet> {
        if self.group.id() != other.group.id() {
            return Err(Error::GroupMismatch {
                expected: self.group.id().clone(),
                found: other.group.id().clone(),
                context: "probe merge",
            });
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        Ok(ProbeSet {
            group: self.group.clone(),
            points,
            description: format!("{} + {}", self.description, other.description),
        })
    }
}

/// Bounded sup distance between two maps over a probe set:
/// `max_t d(phi[t], psi[t]) / (1 + d(phi[t], psi[t]))`.
///
/// Values lie in `[0, 1)`. The finite probe makes this a lower bound for the
/// true sup over the whole domain; enlarging the probe never decreases it.
pub fn hom_metric(phi: &Homomorphism, psi: &Homomorphism, probe: &ProbeSet) -> Result<f64> {
    if phi.domain.id() != psi.domain.id() || phi.codomain.id() != psi.codomain.id() {
        return Err(Error::Contract(format!(
            "hom metric needs matching spaces: ({} -> {}) vs ({} -> {})",
            phi.domain.id(),
            phi.codomain.id(),
            psi.domain.id(),
            psi.codomain.id()
        )));
    }
    if probe.group.id() != phi.domain.id() {
        return Err(Error::GroupMismatch {
            expected: phi.domain.id().clone(),
            found: probe.group.id().clone(),
            context: "hom metric probe",
        });
    }
    let mut worst = 0.0f64;
    for t in &probe.points {
        let d = phi.codomain.metric(&phi.eval(t)?, &psi.eval(t)?)?;
        worst = worst.max(d / (1.0 + d));
    }
    Ok(worst)
}

/// Verifies the homomorphism law `h[x * y] = h[x] * h[y]` on sampled pairs,
/// with the residual taken relative to the magnitude of the compared values.
pub fn check_homomorphism_law(
    h: &Homomorphism,
    seed: u64,
    count: usize,
    tols: &Tolerances,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        &format!("hom-law/{}", h.label),
        "homomorphism law",
        tols.hom,
    );
    let mut stream = SampleStream::new(seed);
    for _ in 0..count {
        let x = h.domain.draw(&mut stream);
        let y = h.domain.draw(&mut stream);
        report.samples += 1;
        let joined = h.eval(&h.domain.compose(&x, &y)?)?;
        let split = h.codomain.compose(&h.eval(&x)?, &h.eval(&y)?)?;
        let raw = h.codomain.metric(&joined, &split)?;
        let magnitude = h
            .codomain
            .distance_to_identity(&joined)?
            .max(h.codomain.distance_to_identity(&split)?);
        let violation = raw / (1.0 + magnitude);
        report.observe(violation, || Witness {
            message: String::from("homomorphism law residual"),
            elements: alloc::vec![x.clone(), y.clone()],
        });
    }
    Ok(report.finish())
}

/// Verifies the pointwise group structure of the homomorphism space on a
/// probe set: associativity and commutativity of the pointwise sum,
/// neutrality of the zero map, and `phi (+) phi^-1 = sigma`.
pub fn check_group_laws_on_hom(
    phi: &Homomorphism,
    psi: &Homomorphism,
    chi: &Homomorphism,
    probe: &ProbeSet,
    tols: &Tolerances,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        &format!("hom-group-laws/{}->{}", phi.domain.id(), phi.codomain.id()),
        "group structure of the homomorphism space",
        tols.fp,
    );
    report.probe = Some(String::from(probe.description()));
    let sigma = Homomorphism::sigma(phi.domain.clone(), phi.codomain.clone());
    let left = Homomorphism::oplus(&Homomorphism::oplus(phi, psi)?, chi)?;
    let right = Homomorphism::oplus(phi, &Homomorphism::oplus(psi, chi)?)?;
    let sum_pq = Homomorphism::oplus(phi, psi)?;
    let sum_qp = Homomorphism::oplus(psi, phi)?;
    let neutral = Homomorphism::oplus(phi, &sigma)?;
    let cancel = Homomorphism::oplus(phi, &Homomorphism::hom_inverse(phi))?;
    let cod = phi.codomain.clone();
    for t in probe.points() {
        report.samples += 1;
        let assoc = cod.metric(&left.eval(t)?, &right.eval(t)?)?;
        report.observe(assoc, || Witness {
            message: String::from("pointwise sum associativity residual"),
            elements: alloc::vec![t.clone()],
        });
        let comm = cod.metric(&sum_pq.eval(t)?, &sum_qp.eval(t)?)?;
        report.observe(comm, || Witness {
            message: String::from("pointwise sum commutativity residual"),
            elements: alloc::vec![t.clone()],
        });
        let neut = cod.metric(&neutral.eval(t)?, &phi.eval(t)?)?;
        report.observe(neut, || Witness {
            message: String::from("zero-map neutrality residual"),
            elements: alloc::vec![t.clone()],
        });
        let inv = cod.metric(&cancel.eval(t)?, &sigma.eval(t)?)?;
        report.observe(inv, || Witness {
            message: String::from("pointwise inverse residual"),
            elements: alloc::vec![t.clone()],
        });
    }
    Ok(report.finish())
}

/// Watches a sequence of maps approach a limit in the probe-approximated
/// metric: records the distance at every index and passes when the sequence
/// is eventually non-increasing (within `fp` slack) and ends below
/// `tail_tol`.
///
/// The finite probe makes each recorded distance a lower bound for the true
/// metric, so a pass certifies convergence on the probe, not beyond it; the
/// report notes say so.
pub fn pointwise_to_metric_convergence_probe(
    seq: &[Homomorphism],
    limit: &Homomorphism,
    probe: &ProbeSet,
    tail_tol: f64,
    tols: &Tolerances,
) -> Result<VerificationReport> {
    if seq.is_empty() {
        return Err(Error::Config(String::from(
            "convergence probe needs a nonempty sequence",
        )));
    }
    let mut report = VerificationReport::new(
        &format!("convergence/{}", limit.label),
        "pointwise convergence upgrades to metric convergence",
        tail_tol,
    );
    report.probe = Some(String::from(probe.description()));
    let mut values = Vec::with_capacity(seq.len());
    for (i, h) in seq.iter().enumerate() {
        let d = hom_metric(h, limit, probe)?;
        report.profile.push(ProfilePoint {
            parameter: (i + 1) as f64,
            value: d,
        });
        values.push(d);
        report.samples += 1;
    }
    let tail = *values.last().unwrap();
    report.max_violation = tail;
    report.and_condition(
        eventually_decreasing(&values, tols.fp),
        "distances to the limit do not decay",
    );
    report
        .notes
        .push(String::from("probe distances are lower bounds for the sup metric"));
    report.notes.push(format!("tail distance: {tail:e}"));
    Ok(report.finish())
}

/// Radius sweep of a map's continuity at the identity: for each radius the
/// largest image distance over sampled inputs within that radius of the
/// identity. Passes when the profile decays (within `fp` slack) and respects
/// the map's continuity hint where one is present.
pub fn check_continuity_at_identity(
    h: &Homomorphism,
    radii: &[f64],
    seed: u64,
    count: usize,
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
    let mut report = VerificationReport::new(
        &format!("continuity-at-identity/{}", h.label),
        "continuity at the identity",
        tols.fp,
    );
    let mut stream = SampleStream::new(seed);
    let at_identity = h.eval(&h.domain.identity())?;
    let mut moduli = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut modulus = 0.0f64;
        for _ in 0..count {
            let x = h.domain.probe_point(r, &mut stream)?;
            let d = h.codomain.metric(&h.eval(&x)?, &at_identity)?;
            modulus = modulus.max(d);
            report.samples += 1;
        }
        report.profile.push(ProfilePoint {
            parameter: r,
            value: modulus,
        });
        if let Some(bound) = h.continuity_hint(r) {
            report.and_condition(
                modulus <= bound + tols.fp,
                "observed modulus exceeds the supplied continuity hint",
            );
        }
        moduli.push(modulus);
    }
    report.and_condition(
        eventually_decreasing(&moduli, tols.fp),
        "modulus of continuity does not decay",
    );
    Ok(report.finish())
}
