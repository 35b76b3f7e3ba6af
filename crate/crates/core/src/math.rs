//! Float helpers routed through `libm` so the crate builds without `std`.
//!
//! Only functions absent from `core` live here; `abs`, `max`, `min` and the
//! classification predicates come straight off `f64`.

pub(crate) const PI: f64 = core::f64::consts::PI;
pub(crate) const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

/// Exact IEEE remainder with the sign of `x`; no rounding occurs.
#[inline]
pub(crate) fn fmod(x: f64, y: f64) -> f64 {
    libm::fmod(x, y)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// Angle reduced into the canonical branch `(-pi, pi]`.
///
/// Angles already inside the branch are returned bit-unchanged, so reduction
/// is idempotent and composing small rotations does not drift.
pub(crate) fn canonical_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let r = fmod(theta, TWO_PI);
    if r > PI {
        r - TWO_PI
    } else if r <= -PI {
        r + TWO_PI
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_angle_is_identity_on_branch() {
        for &t in &[0.0, 1.5, -1.5, PI, -PI + 1e-9, 3.0] {
            assert_eq!(canonical_angle(t), t);
        }
    }

    #[test]
    fn canonical_angle_reduces_mod_two_pi() {
        assert!((canonical_angle(7.5) - (7.5 - TWO_PI)).abs() == 0.0);
        assert_eq!(canonical_angle(-PI), PI);
        assert_eq!(canonical_angle(3.0 * PI), PI);
        let t = 0.1;
        assert!((canonical_angle(t + TWO_PI) - t).abs() < 1e-15);
    }
}
