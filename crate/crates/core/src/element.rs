//! Group elements: a group identifier plus a payload only the owning group
//! description knows how to interpret.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Names a group instance; equality is by name.
///
/// Two descriptions with the same id are interchangeable by contract, so the
/// id is what operations compare when they guard against mixed arguments.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupId(String);

impl GroupId {
    /// Wraps a name.
    pub fn new(name: &str) -> Self {
        GroupId(String::from(name))
    }

    /// The name as a string slice.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for GroupId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// Concrete value carried by a group element.
///
/// The set of payload kinds is closed; every shipped group interprets exactly
/// one of them. Payloads are plain data: all interpretation (validation,
/// canonical form, arithmetic) lives in the owning group description.
#[derive(Clone, PartialEq, Debug)]
pub enum Payload {
    /// A real number (used by both the additive and the multiplicative reals).
    Real(f64),
    /// A nonzero complex number in Cartesian coordinates.
    Complex {
        /// Real part.
        re: f64,
        /// Imaginary part.
        im: f64,
    },
    /// A point on the unit circle, stored as an angle in `(-pi, pi]`.
    Angle(f64),
    /// A square matrix with row-major entries (`entries.len() == n * n`).
    Matrix {
        /// Side length.
        n: usize,
        /// Row-major entries.
        entries: Vec<f64>,
    },
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Real(x) => write!(f, "{x}"),
            Payload::Complex { re, im } => write!(f, "{re}{}{}i", if *im < 0.0 { "" } else { "+" }, im),
            Payload::Angle(t) => write!(f, "angle({t})"),
            Payload::Matrix { n, entries } => {
                write!(f, "[")?;
                for row in 0..*n {
                    if row > 0 {
                        write!(f, "; ")?;
                    }
                    for col in 0..*n {
                        if col > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{}", entries[row * n + col])?;
                    }
                }
                write!(f, "]")
            }
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Payload {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            Payload::Real(x) => {
                let mut st = s.serialize_struct("Real", 1)?;
                st.serialize_field("real", x)?;
                st.end()
            }
            Payload::Complex { re, im } => {
                let mut st = s.serialize_struct("Complex", 2)?;
                st.serialize_field("re", re)?;
                st.serialize_field("im", im)?;
                st.end()
            }
            Payload::Angle(t) => {
                let mut st = s.serialize_struct("Angle", 1)?;
                st.serialize_field("angle", t)?;
                st.end()
            }
            Payload::Matrix { n, entries } => {
                let mut st = s.serialize_struct("Matrix", 2)?;
                st.serialize_field("n", n)?;
                st.serialize_field("entries", entries)?;
                st.end()
            }
        }
    }
}

/// An element of a specific group.
///
/// Elements are immutable values; operations return fresh elements. The
/// carried [`GroupId`] is checked by every operation that receives the
/// element, so an element can never silently act in a foreign group.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupElement {
    pub(crate) group: GroupId,
    pub(crate) payload: Payload,
}

impl GroupElement {
    /// The id of the owning group.
    pub fn group_id(&self) -> &GroupId {
        &self.group
    }

    /// The raw payload.
    pub fn payload(&self) -> &Payload {
        &self.payload
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.group, self.payload)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupElement", 2)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("value", &self.payload)?;
        st.end()
    }
}
