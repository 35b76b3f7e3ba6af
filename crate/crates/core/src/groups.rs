//! The shipped group instances and the name registry.
//!
//! Five groups: the additive reals, the multiplicative positive reals, the
//! multiplicative nonzero complex numbers, the unit circle, and additive
//! square matrices of a runtime dimension. All are Abelian and all claim the
//! metric compatibility conditions; all but the complex numbers claim
//! divisibility.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::element::Payload;
use crate::error::{Error, Result};
use crate::group::MetricGroupSpec;
use crate::math;

fn real(p: &Payload) -> f64 {
    match p {
        Payload::Real(x) => *x,
        _ => unreachable!("validated payload must be real"),
    }
}

fn complex(p: &Payload) -> (f64, f64) {
    match p {
        Payload::Complex { re, im } => (*re, *im),
        _ => unreachable!("validated payload must be complex"),
    }
}

pub(crate) fn angle(p: &Payload) -> f64 {
    match p {
        Payload::Angle(t) => *t,
        _ => unreachable!("validated payload must be an angle"),
    }
}

pub(crate) fn matrix(p: &Payload) -> (usize, &[f64]) {
    match p {
        Payload::Matrix { n, entries } => (*n, entries.as_slice()),
        _ => unreachable!("validated payload must be a matrix"),
    }
}

pub(crate) fn mat_mul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub(crate) fn mat_zip(a: &[f64], b: &[f64], f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.iter().zip(b.iter()).map(|(x, y)| f(*x, *y)).collect()
}

pub(crate) fn mat_map(a: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
    a.iter().map(|x| f(*x)).collect()
}

pub(crate) fn frobenius(entries: &[f64]) -> f64 {
    math::sqrt(entries.iter().map(|x| x * x).sum())
}

pub(crate) fn cx_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cx_inv(a: (f64, f64)) -> (f64, f64) {
    let n2 = a.0 * a.0 + a.1 * a.1;
    (a.0 / n2, -a.1 / n2)
}

fn finite(x: f64) -> bool {
    x.is_finite()
}

/// The reals under addition, metric `|x - y|`.
///
/// Divisible (`x / n`), with field multiplication as scalar action and an
/// exact translation bound of 1 (translation is an isometry).
pub fn make_real_additive() -> Arc<MetricGroupSpec> {
    MetricGroupSpec::builder("real-add", Payload::Real(0.0))
        .abelian(true)
        .group_metric(true)
        .divisible(true)
        .compose(|a, b| Payload::Real(real(a) + real(b)))
        .inverse(|a| Payload::Real(-real(a)))
        .metric(|a, b| (real(a) - real(b)).abs())
        .nth_root(|a, n| Payload::Real(real(a) / n as f64))
        .scalar_action(|alpha, a| Payload::Real(alpha * real(a)))
        .translation_bound(|_| 1.0)
        .validate(|p| match p {
            Payload::Real(x) if finite(x) => Ok(Payload::Real(x)),
            Payload::Real(_) => Err("value must be finite".to_string()),
            _ => Err("expects a real payload".to_string()),
        })
        .draw(|s| Payload::Real(s.normal()))
        .probe_point(|scale, s| Payload::Real(s.sign() * scale))
        .build()
}

/// The positive reals under multiplication, metric `|x - y|`.
///
/// Divisible via `exp(ln(x) / n)`; the translation bound for `k` is `k`
/// itself and is shipped in closed form.
pub fn make_positive_reals() -> Arc<MetricGroupSpec> {
    MetricGroupSpec::builder("pos-real-mul", Payload::Real(1.0))
        .abelian(true)
        .group_metric(true)
        .divisible(true)
        .compose(|a, b| Payload::Real(real(a) * real(b)))
        .inverse(|a| Payload::Real(1.0 / real(a)))
        .metric(|a, b| (real(a) - real(b)).abs())
        .nth_root(|a, n| Payload::Real(math::exp(math::ln(real(a)) / n as f64)))
        .translation_bound(|k| real(k))
        .validate(|p| match p {
            Payload::Real(x) if finite(x) && x > 0.0 => Ok(Payload::Real(x)),
            Payload::Real(_) => Err("value must be finite and positive".to_string()),
            _ => Err("expects a real payload".to_string()),
        })
        .draw(|s| Payload::Real(math::exp(s.normal())))
        .probe_point(|scale, s| {
            Payload::Real(if s.sign() > 0.0 {
                1.0 + scale
            } else {
                1.0 / (1.0 + scale)
            })
        })
        .build()
}

/// The nonzero complex numbers under multiplication, metric `|x - y|`.
///
/// Not divisible: a nonzero complex number has `n` distinct `n`-th roots and
/// no branch choice is continuous on the whole punctured plane, so no root
/// operation is shipped. No closed-form translation bound is shipped either;
/// the estimator is expected to recover `|k|` from samples.
pub fn make_complex_multiplicative() -> Arc<MetricGroupSpec> {
    MetricGroupSpec::builder("complex-mul", Payload::Complex { re: 1.0, im: 0.0 })
        .abelian(true)
        .group_metric(true)
        .divisible(false)
        .compose(|a, b| {
            let (re, im) = cx_mul(complex(a), complex(b));
            Payload::Complex { re, im }
        })
        .inverse(|a| {
            let (re, im) = cx_inv(complex(a));
            Payload::Complex { re, im }
        })
        .metric(|a, b| {
            let (ar, ai) = complex(a);
            let (br, bi) = complex(b);
            math::hypot(ar - br, ai - bi)
        })
        .validate(|p| match p {
            Payload::Complex { re, im } if finite(re) && finite(im) && (re != 0.0 || im != 0.0) => {
                Ok(Payload::Complex { re, im })
            }
            Payload::Complex { .. } => Err("value must be finite and nonzero".to_string()),
            _ => Err("expects a complex payload".to_string()),
        })
        .draw(|s| {
            let modulus = math::exp(s.normal());
            let t = s.angle();
            Payload::Complex {
                re: modulus * math::cos(t),
                im: modulus * math::sin(t),
            }
        })
        .probe_point(|scale, s| {
            let modulus = if s.sign() > 0.0 {
                1.0 + scale
            } else {
                1.0 / (1.0 + scale)
            };
            let t = s.angle();
            Payload::Complex {
                re: modulus * math::cos(t),
                im: modulus * math::sin(t),
            }
        })
        .build()
}

/// The unit circle under rotation, chord metric `|e^{i a} - e^{i b}|`.
///
/// Angles are kept on the principal branch `(-pi, pi]`; the `n`-th root
/// divides the canonical angle, which picks the principal root
/// deterministically. Rotation is an isometry, so the translation bound is 1.
pub fn make_circle() -> Arc<MetricGroupSpec> {
    MetricGroupSpec::builder("circle", Payload::Angle(0.0))
        .abelian(true)
        .group_metric(true)
        .divisible(true)
        .compose(|a, b| Payload::Angle(math::canonical_angle(angle(a) + angle(b))))
        .inverse(|a| Payload::Angle(math::canonical_angle(-angle(a))))
        .metric(|a, b| {
            // Chord length 2*sin(|da|/2); taking |da| first keeps the metric
            // symmetric bit-for-bit.
            2.0 * math::sin((angle(a) - angle(b)).abs() / 2.0)
        })
        .nth_root(|a, n| Payload::Angle(angle(a) / n as f64))
        .translation_bound(|_| 1.0)
        .validate(|p| match p {
            Payload::Angle(t) if finite(t) => Ok(Payload::Angle(math::canonical_angle(t))),
            Payload::Angle(_) => Err("angle must be finite".to_string()),
            _ => Err("expects an angle payload".to_string()),
        })
        .draw(|s| Payload::Angle(s.angle()))
        .probe_point(|scale, s| Payload::Angle(math::canonical_angle(s.sign() * scale)))
        .build()
}

/// Square matrices of side `n` under entrywise addition, Frobenius metric.
///
/// Divisible (`X / n`), scalar action by entrywise scaling, translation
/// bound exactly 1. `n == 0` is rejected.
pub fn make_matrix_additive(n: usize) -> Result<Arc<MetricGroupSpec>> {
    if n == 0 {
        return Err(Error::Config(String::from(
            "matrix dimension must be at least 1",
        )));
    }
    let name = format!("matrix-add:{n}");
    let dim = n;
    Ok(MetricGroupSpec::builder(
        &name,
        Payload::Matrix {
            n: dim,
            entries: vec![0.0; dim * dim],
        },
    )
    .abelian(true)
    .group_metric(true)
    .divisible(true)
    .compose(|a, b| {
        let (n, ae) = matrix(a);
        let (_, be) = matrix(b);
        Payload::Matrix {
            n,
            entries: mat_zip(ae, be, |x, y| x + y),
        }
    })
    .inverse(|a| {
        let (n, ae) = matrix(a);
        Payload::Matrix {
            n,
            entries: mat_map(ae, |x| -x),
        }
    })
    .metric(|a, b| {
        let (_, ae) = matrix(a);
        let (_, be) = matrix(b);
        frobenius(&mat_zip(ae, be, |x, y| x - y))
    })
    .nth_root(|a, k| {
        let (n, ae) = matrix(a);
        Payload::Matrix {
            n,
            entries: mat_map(ae, |x| x / k as f64),
        }
    })
    .scalar_action(|alpha, a| {
        let (n, ae) = matrix(a);
        Payload::Matrix {
            n,
            entries: mat_map(ae, |x| alpha * x),
        }
    })
    .translation_bound(|_| 1.0)
    .validate(move |p| match p {
        Payload::Matrix { n, entries } => {
            if n != dim {
                Err(format!("expected dimension {dim}, got {n}"))
            } else if entries.len() != dim * dim {
                Err(format!(
                    "expected {} entries, got {}",
                    dim * dim,
                    entries.len()
                ))
            } else if entries.iter().any(|x| !finite(*x)) {
                Err("entries must be finite".to_string())
            } else {
                Ok(Payload::Matrix { n, entries })
            }
        }
        _ => Err("expects a matrix payload".to_string()),
    })
    .draw(move |s| Payload::Matrix {
        n: dim,
        entries: (0..dim * dim).map(|_| s.normal()).collect(),
    })
    .probe_point(move |scale, s| {
        let raw: Vec<f64> = (0..dim * dim).map(|_| s.normal()).collect();
        let norm = frobenius(&raw);
        let entries = if norm == 0.0 {
            let mut e = vec![0.0; dim * dim];
            e[0] = scale;
            e
        } else {
            mat_map(&raw, |x| x * scale / norm)
        };
        Payload::Matrix { n: dim, entries }
    })
    .build())
}

/// Names of the default build's groups, alphabetically.
pub fn standard_names() -> Vec<String> {
    vec![
        "circle".to_string(),
        "complex-mul".to_string(),
        "matrix-add:2".to_string(),
        "pos-real-mul".to_string(),
        "real-add".to_string(),
    ]
}

/// Group description for a registry name.
///
/// `matrix-add:n` takes the dimension from the name; unknown names are a
/// configuration error.
pub fn lookup(name: &str) -> Result<Arc<MetricGroupSpec>> {
    match name {
        "real-add" => Ok(make_real_additive()),
        "pos-real-mul" => Ok(make_positive_reals()),
        "complex-mul" => Ok(make_complex_multiplicative()),
        "circle" => Ok(make_circle()),
        _ => {
            if let Some(dim) = name.strip_prefix("matrix-add:") {
                let n: usize = dim
                    .parse()
                    .map_err(|_| Error::Config(format!("bad matrix dimension in '{name}'")))?;
                make_matrix_additive(n)
            } else {
                Err(Error::Config(format!("unknown group '{name}'")))
            }
        }
    }
}
