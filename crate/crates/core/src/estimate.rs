use std::iter::Sum;
use std::ops::{Add, Sub};

use num_complex::Complex64;

/// A transform value together with an absolute error budget.
///
/// The budget is whatever the producing method can vouch for: the adaptive
/// quadrature error for oracles, tail plus resolution bounds for series
/// methods. Budgets add under sums and scale by modulus under products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: Complex64, error: f64) -> Self {
        Estimate { value, error }
    }

    pub fn exact(value: Complex64) -> Self {
        Estimate { value, error: 0.0 }
    }

    pub fn zero() -> Self {
        Estimate::exact(Complex64::new(0.0, 0.0))
    }

    pub fn scale(self, c: Complex64) -> Self {
        Estimate {
            value: self.value * c,
            error: self.error * c.norm(),
        }
    }
}

impl Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

impl Sub for Estimate {
    type Output = Estimate;
    fn sub(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value - rhs.value,
            error: self.error + rhs.error,
        }
    }
}

impl Sum for Estimate {
    fn sum<I: Iterator<Item = Estimate>>(iter: I) -> Estimate {
        iter.fold(Estimate::zero(), |acc, e| acc + e)
    }
}

/// Boundary values `(plus, minus)` of a transform on the positive axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPair {
    pub plus: Complex64,
    pub minus: Complex64,
}

impl BoundaryPair {
    pub fn jump(&self) -> Complex64 {
        self.plus - self.minus
    }

    pub fn sum(&self) -> Complex64 {
        self.plus + self.minus
    }
}
