//! Result records for approximation-quality computations.

use crate::scalar::Scalar;

/// Either a finite quality `>= 1` or the unbounded flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QualityValue<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> QualityValue<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            QualityValue::Finite(v) => Some(v),
            QualityValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, QualityValue::Infinite)
    }

    /// `+inf` for the unbounded flag.
    pub fn to_scalar(self) -> T {
        self.finite().unwrap_or_else(T::infinity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    BruteForce,
    Sampled,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::BruteForce => "brute_force",
            Method::Sampled => "sampled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness<T> {
    /// `approximated` is the solution realizing the maximum; `approximator`
    /// is its best cover inside the subset.
    Pair { approximated: String, approximator: String },
    /// Zero-based coordinate index.
    Coordinate(usize),
    Point(Vec<T>),
    Weights(Vec<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityCertificate<T> {
    pub value: QualityValue<T>,
    pub method: Method,
    pub witness: Option<Witness<T>>,
    /// Number of samples drawn; zero for exact methods.
    pub budget_used: usize,
}

impl<T: Scalar> QualityCertificate<T> {
    pub(crate) fn exact(value: T, method: Method, witness: Option<Witness<T>>) -> Self {
        Self { value: QualityValue::Finite(value), method, witness, budget_used: 0 }
    }

    pub fn value(&self) -> Option<T> {
        self.value.finite()
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}
