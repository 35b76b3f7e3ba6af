//! Group descriptions: one value bundling a group's operations, metric,
//! capability flags, and sampler.
//!
//! A [`MetricGroupSpec`] is immutable after construction and cheap to share;
//! elements carry the description's [`GroupId`], and every operation checks
//! that id before touching a payload. Mixing groups is an error, never a
//! coercion.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::element::{GroupElement, GroupId, Payload};
use crate::error::{Error, Result};
use crate::sample::SampleStream;

type BinaryOp = Arc<dyn Fn(&Payload, &Payload) -> Payload + Send + Sync>;
type UnaryOp = Arc<dyn Fn(&Payload) -> Payload + Send + Sync>;
type MetricFn = Arc<dyn Fn(&Payload, &Payload) -> f64 + Send + Sync>;
type RootFn = Arc<dyn Fn(&Payload, u32) -> Payload + Send + Sync>;
type ScalarFn = Arc<dyn Fn(f64, &Payload) -> Payload + Send + Sync>;
type BoundFn = Arc<dyn Fn(&Payload) -> f64 + Send + Sync>;
type ValidateFn = Arc<dyn Fn(Payload) -> core::result::Result<Payload, String> + Send + Sync>;
type DrawFn = Arc<dyn Fn(&mut SampleStream) -> Payload + Send + Sync>;
type ProbeFn = Arc<dyn Fn(f64, &mut SampleStream) -> Payload + Send + Sync>;

/// A group with a compatible metric, described by its operations.
///
/// The payload-level closures are trusted to keep payload kind and validity
/// invariant; the public methods wrap them with id checks and validation so
/// misuse surfaces as an [`Error`] instead of a wrong answer.
pub struct MetricGroupSpec {
    id: GroupId,
    identity: Payload,
    compose: BinaryOp,
    inverse: UnaryOp,
    metric: MetricFn,
    nth_root: Option<RootFn>,
    scalar: Option<ScalarFn>,
    translation_bound: Option<BoundFn>,
    validate: ValidateFn,
    draw: DrawFn,
    probe: Option<ProbeFn>,
    abelian: bool,
    claims_group_metric: bool,
    claims_divisible: bool,
    sample_scale: f64,
}

impl MetricGroupSpec {
    /// Starts a builder; `compose`, `inverse` and `metric` must be supplied
    /// before [`MetricGroupSpecBuilder::build`].
    pub fn builder(name: &str, identity: Payload) -> MetricGroupSpecBuilder {
        MetricGroupSpecBuilder {
            id: GroupId::new(name),
            identity,
            compose: None,
            inverse: None,
            metric: None,
            nth_root: None,
            scalar: None,
            translation_bound: None,
            validate: None,
            draw: None,
            probe: None,
            abelian: false,
            claims_group_metric: false,
            claims_divisible: false,
            sample_scale: 1.0,
        }
    }

    /// The group's id.
    pub fn id(&self) -> &GroupId {
        &self.id
    }

    /// The neutral element.
    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.id.clone(),
            payload: self.identity.clone(),
        }
    }

    /// Wraps a payload after validation and canonicalization.
    pub fn element(&self, payload: Payload) -> Result<GroupElement> {
        match (self.validate)(payload) {
            Ok(p) => Ok(GroupElement {
                group: self.id.clone(),
                payload: p,
            }),
            Err(reason) => Err(Error::InvalidElement {
                group: self.id.clone(),
                reason,
            }),
        }
    }

    pub(crate) fn check_member(&self, x: &GroupElement, context: &'static str) -> Result<()> {
        if x.group == self.id {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                expected: self.id.clone(),
                found: x.group.clone(),
                context,
            })
        }
    }

    fn wrap(&self, payload: Payload) -> GroupElement {
        GroupElement {
            group: self.id.clone(),
            payload,
        }
    }

    /// Group operation.
    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_member(a, "compose")?;
        self.check_member(b, "compose")?;
        Ok(self.wrap((self.compose)(&a.payload, &b.payload)))
    }

    /// Group inverse.
    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a, "inverse")?;
        Ok(self.wrap((self.inverse)(&a.payload)))
    }

    /// Distance between two elements.
    pub fn metric(&self, a: &GroupElement, b: &GroupElement) -> Result<f64> {
        self.check_member(a, "metric")?;
        self.check_member(b, "metric")?;
        Ok((self.metric)(&a.payload, &b.payload))
    }

    /// Distance from the identity.
    pub fn distance_to_identity(&self, a: &GroupElement) -> Result<f64> {
        self.check_member(a, "metric")?;
        Ok((self.metric)(&a.payload, &self.identity))
    }

    /// The unique `n`-th root, for groups that claim divisibility.
    ///
    /// `n == 1` returns the element unchanged (bit-for-bit); `n == 0` is a
    /// configuration error; groups without roots report the operation as
    /// unsupported.
    pub fn nth_root(&self, g: &GroupElement, n: u32) -> Result<GroupElement> {
        self.check_member(g, "nth_root")?;
        if n == 0 {
            return Err(Error::Config(String::from("root order must be at least 1")));
        }
        let root = self.nth_root.as_ref().ok_or(Error::Unsupported {
            group: self.id.clone(),
            operation: "nth_root",
        })?;
        if n == 1 {
            return Ok(g.clone());
        }
        Ok(self.wrap(root(&g.payload, n)))
    }

    /// `n`-fold composition of `g` with itself; `n == 0` gives the identity.
    pub fn power(&self, g: &GroupElement, n: u64) -> Result<GroupElement> {
        self.check_member(g, "power")?;
        let mut acc = self.identity.clone();
        for _ in 0..n {
            acc = (self.compose)(&acc, &g.payload);
        }
        Ok(self.wrap(acc))
    }

    /// Scalar action `alpha * g`, for groups that carry one.
    pub fn scalar_action(&self, alpha: f64, g: &GroupElement) -> Result<GroupElement> {
        self.check_member(g, "scalar_action")?;
        if !alpha.is_finite() {
            return Err(Error::Config(String::from("scalar must be finite")));
        }
        let scalar = self.scalar.as_ref().ok_or(Error::Unsupported {
            group: self.id.clone(),
            operation: "scalar_action",
        })?;
        Ok(self.wrap(scalar(alpha, &g.payload)))
    }

    /// Closed-form right-translation bound for `k`, when the group ships one.
    pub fn translation_bound(&self, k: &GroupElement) -> Result<Option<f64>> {
        self.check_member(k, "translation_bound")?;
        Ok(self.translation_bound.as_ref().map(|f| f(&k.payload)))
    }

    /// Draws `count` elements from the seeded stream.
    ///
    /// The draw for index `i` does not depend on `count`, so extending a
    /// sample keeps its prefix.
    pub fn sample(&self, seed: u64, count: usize) -> Vec<GroupElement> {
        let mut stream = SampleStream::new(seed);
        (0..count).map(|_| self.wrap((self.draw)(&mut stream))).collect()
    }

    /// One draw from an existing stream.
    pub fn draw(&self, stream: &mut SampleStream) -> GroupElement {
        self.wrap((self.draw)(stream))
    }

    /// An element at distance roughly `scale` from the identity, used to
    /// build probe sets and radius sweeps.
    pub fn probe_point(&self, scale: f64, stream: &mut SampleStream) -> Result<GroupElement> {
        let probe = self.probe.as_ref().ok_or(Error::Unsupported {
            group: self.id.clone(),
            operation: "probe_point",
        })?;
        Ok(self.wrap(probe(scale, stream)))
    }

    /// Whether probe points can be generated.
    pub fn has_probe_points(&self) -> bool {
        self.probe.is_some()
    }

    /// Whether the operation is commutative.
    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Whether the metric claims the two compatibility conditions
    /// (product inequality at the identity, translation bounds).
    pub fn claims_group_metric(&self) -> bool {
        self.claims_group_metric
    }

    /// Whether unique n-th roots with vanishing root limit are claimed.
    pub fn claims_divisible(&self) -> bool {
        self.claims_divisible
    }

    /// Whether an n-th root operation is available.
    pub fn has_nth_root(&self) -> bool {
        self.nth_root.is_some()
    }

    /// Whether a scalar action is available.
    pub fn has_scalar_action(&self) -> bool {
        self.scalar.is_some()
    }

    /// Natural magnitude of sampled elements; probe scales are relative to
    /// this.
    pub fn sample_scale(&self) -> f64 {
        self.sample_scale
    }
}

impl core::fmt::Debug for MetricGroupSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MetricGroupSpec")
            .field("id", &self.id)
            .field("abelian", &self.abelian)
            .field("claims_group_metric", &self.claims_group_metric)
            .field("claims_divisible", &self.claims_divisible)
            .finish_non_exhaustive()
    }
}

/// Builder for [`MetricGroupSpec`].
pub struct MetricGroupSpecBuilder {
    id: GroupId,
    identity: Payload,
    compose: Option<BinaryOp>,
    inverse: Option<UnaryOp>,
    metric: Option<MetricFn>,
    nth_root: Option<RootFn>,
    scalar: Option<ScalarFn>,
    translation_bound: Option<BoundFn>,
    validate: Option<ValidateFn>,
    draw: Option<DrawFn>,
    probe: Option<ProbeFn>,
    abelian: bool,
    claims_group_metric: bool,
    claims_divisible: bool,
    sample_scale: f64,
}

impl MetricGroupSpecBuilder {
    /// Group operation on payloads.
    pub fn compose<F>(mut self, f: F) -> Self
    where
        F: Fn(&Payload, &Payload) -> Payload + Send + Sync + 'static,
    {
        self.compose = Some(Arc::new(f));
        self
    }

    /// Inverse on payloads.
    pub fn inverse<F>(mut self, f: F) -> Self
    where
        F: Fn(&Payload) -> Payload + Send + Sync + 'static,
    {
        self.inverse = Some(Arc::new(f));
        self
    }

    /// Metric on payloads.
    pub fn metric<F>(mut self, f: F) -> Self
    where
        F: Fn(&Payload, &Payload) -> f64 + Send + Sync + 'static,
    {
        self.metric = Some(Arc::new(f));
        self
    }

    /// Unique n-th root on payloads (`n >= 2` when called).
    pub fn nth_root<F>(mut self, f: F) -> Self
    where
        F: Fn(&Payload, u32) -> Payload + Send + Sync + 'static,
    {
        self.nth_root = Some(Arc::new(f));
        self
    }

    /// Scalar action on payloads.
    pub fn scalar_action<F>(mut self, f: F) -> Self
    where
        F: Fn(f64, &Payload) -> Payload + Send + Sync + 'static,
    {
        self.scalar = Some(Arc::new(f));
        self
    }

    /// Closed-form right-translation bound.
    pub fn translation_bound<F>(mut self, f: F) -> Self
    where
        F: Fn(&Payload) -> f64 + Send + Sync + 'static,
    {
        self.translation_bound = Some(Arc::new(f));
        self
    }

    /// Payload validation and canonicalization.
    pub fn validate<F>(mut self, f: F) -> Self
    where
        F: Fn(Payload) -> core::result::Result<Payload, String> + Send + Sync + 'static,
    {
        self.validate = Some(Arc::new(f));
        self
    }

    /// One sampled payload from a stream.
    pub fn draw<F>(mut self, f: F) -> Self
    where
        F: Fn(&mut SampleStream) -> Payload + Send + Sync + 'static,
    {
        self.draw = Some(Arc::new(f));
        self
    }

    /// A payload at distance roughly `scale` from the identity.
    pub fn probe_point<F>(mut self, f: F) -> Self
    where
        F: Fn(f64, &mut SampleStream) -> Payload + Send + Sync + 'static,
    {
        self.probe = Some(Arc::new(f));
        self
    }

    /// Marks the operation commutative.
    pub fn abelian(mut self, yes: bool) -> Self {
        self.abelian = yes;
        self
    }

    /// Marks the metric as claiming the compatibility conditions.
    pub fn group_metric(mut self, yes: bool) -> Self {
        self.claims_group_metric = yes;
        self
    }

    /// Marks the group as claiming unique roots with vanishing limit.
    pub fn divisible(mut self, yes: bool) -> Self {
        self.claims_divisible = yes;
        self
    }

    /// Natural magnitude of sampled elements.
    pub fn sample_scale(mut self, scale: f64) -> Self {
        self.sample_scale = scale;
        self
    }

    /// Finishes the description.
    ///
    /// # Panics
    ///
    /// Panics if `compose`, `inverse`, `metric`, `validate` or `draw` was not
    /// supplied; an incomplete description is a programming error, not a
    /// runtime condition.
    pub fn build(self) -> Arc<MetricGroupSpec> {
        Arc::new(MetricGroupSpec {
            id: self.id,
            identity: self.identity,
            compose: self.compose.expect("group description needs compose"),
            inverse: self.inverse.expect("group description needs inverse"),
            metric: self.metric.expect("group description needs metric"),
            nth_root: self.nth_root,
            scalar: self.scalar,
            translation_bound: self.translation_bound,
            validate: self.validate.expect("group description needs validate"),
            draw: self.draw.expect("group description needs draw"),
            probe: self.probe,
            abelian: self.abelian,
            claims_group_metric: self.claims_group_metric,
            claims_divisible: self.claims_divisible,
            sample_scale: self.sample_scale,
        })
    }
}

/// Right-translation Lipschitz constant for a fixed translator `k`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TranslationConstant {
    /// The constant: a closed form when the group ships one, otherwise the
    /// largest sampled distance ratio.
    pub constant: f64,
    /// True when `constant` came from a closed form.
    pub exact: bool,
    /// Pairs examined.
    pub samples: usize,
    /// Degenerate pairs (zero distance) skipped.
    pub skipped: usize,
    /// Largest observed `d(x*k, y*k) / d(x, y)`.
    pub max_ratio: f64,
    /// Largest observed `d(x*k, y*k) - constant * d(x, y)`; at most rounding
    /// noise when the constant is valid.
    pub max_violation: f64,
}
