use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A 2×2 integer matrix `((alpha, beta), (gamma, delta))` acting on column
/// vectors `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    pub delta: BigInt,
}

impl Mat2 {
    pub fn new(
        alpha: impl Into<BigInt>,
        beta: impl Into<BigInt>,
        gamma: impl Into<BigInt>,
        delta: impl Into<BigInt>,
    ) -> Self {
        Mat2 {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
            delta: delta.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// The column swap `E₁₂`.
    pub fn swap() -> Self {
        Mat2::new(0, 1, 1, 0)
    }

    pub fn det(&self) -> BigInt {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    pub fn trace(&self) -> BigInt {
        &self.alpha + &self.delta
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(
            self.alpha.clone(),
            self.gamma.clone(),
            self.beta.clone(),
            self.delta.clone(),
        )
    }

    /// Adjugate; equals `det · M⁻¹`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(
            self.delta.clone(),
            -&self.beta,
            -&self.gamma,
            self.alpha.clone(),
        )
    }

    /// Integer inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det.is_one() {
            Some(self.adjugate())
        } else if (-&det).is_one() {
            Some(-&self.adjugate())
        } else {
            None
        }
    }

    /// `Mⁿ` for any integer `n`; negative powers need `det = ±1`.
    pub fn pow(&self, n: i64) -> Option<Mat2> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Mat2::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (
            &self.alpha * x + &self.beta * y,
            &self.gamma * x + &self.delta * y,
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Sum of squared entries.
    pub fn frobenius(&self) -> BigInt {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
            .into_iter()
            .map(|e| e * e)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
            .into_iter()
            .all(Zero::is_zero)
    }

    /// Row-major entries `[[α, β], [γ, δ]]`.
    pub fn rows(&self) -> [[&BigInt; 2]; 2] {
        [[&self.alpha, &self.beta], [&self.gamma, &self.delta]]
    }

    pub fn max_abs_entry(&self) -> BigInt {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
            .into_iter()
            .map(|e| e.abs())
            .max()
            .expect("four entries")
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.alpha * &rhs.alpha + &self.beta * &rhs.gamma,
            &self.alpha * &rhs.beta + &self.beta * &rhs.delta,
            &self.gamma * &rhs.alpha + &self.delta * &rhs.gamma,
            &self.gamma * &rhs.beta + &self.delta * &rhs.delta,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2::new(-&self.alpha, -&self.beta, -&self.gamma, -&self.delta)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        -&self
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({}, {}), ({}, {}))",
            self.alpha, self.beta, self.gamma, self.delta
        )
    }
}
