//! Divisor classes of prescribed square and orbits of classes under isometries.
//!
//! A class `D = (x, y)` with `D² = 2k` corresponds to a solution of
//! `z² − d·y² = 4ak` through `z = 2ax + by`, so representation questions reduce
//! to generalized Pell equations.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::aut::build_h;
use crate::error::{Error, Result};
use crate::lattice::{is_isometry, Rank2Lattice};
use crate::matrix::Mat2;
use crate::pell::{general_pell_orbits, isqrt, PellSolution};

/// Integer coordinates of a divisor class in the working basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub x: BigInt,
    pub y: BigInt,
}

impl DivisorClass {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        DivisorClass {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn square(&self, lattice: &Rank2Lattice) -> BigInt {
        lattice.square(&self.x, &self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn image(&self, m: &Mat2) -> DivisorClass {
        let (x, y) = m.apply(&self.x, &self.y);
        DivisorClass { x, y }
    }

    /// Orders by `|y|`, preferring `x > 0`, then `y ≥ 0`, then small `|x|`.
    fn canonical_key(&self) -> (BigInt, bool, bool, BigInt, BigInt) {
        (
            self.y.abs(),
            !self.x.is_positive(),
            self.y.is_negative(),
            self.x.abs(),
            self.x.clone(),
        )
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The member of `{hⁿ·D}` with minimal `|y|` (ties: `x > 0`, then `y ≥ 0`,
/// then minimal `|x|`).
pub(crate) fn canonical_class(class: &DivisorClass, h: &Mat2) -> DivisorClass {
    let inverse = h.inverse().expect("isometry is unimodular");
    let mut cur = class.clone();
    for step in [h, &inverse] {
        loop {
            let next = cur.image(step);
            if next.y.abs() < cur.y.abs() {
                cur = next;
            } else {
                break;
            }
        }
    }
    [cur.image(h), cur.image(&inverse), cur]
        .into_iter()
        .min_by(|a, b| a.canonical_key().cmp(&b.canonical_key()))
        .expect("non-empty")
}

/// The class with `2ax + by = z`, if `x` is integral.
fn class_from_pell(lattice: &Rank2Lattice, s: &PellSolution) -> Option<DivisorClass> {
    let two_a = BigInt::from(2 * lattice.a());
    let numerator = &s.u - &s.v * lattice.b();
    numerator
        .is_multiple_of(&two_a)
        .then(|| DivisorClass::new(numerator / two_a, s.v.clone()))
}

/// One representative per orbit under the positive rotation generator `h` of
/// the classes with `D² = 2k`; empty iff no such class exists.
///
/// Integrality of `x = (z − by)/2a` is constant along each Pell orbit:
/// multiplying by the unit changes `z − by` by `u₁(z − by) + v₁(dy − bz)`, and
/// `dy − bz ≡ −4ac·y (mod 2a)` when `z ≡ by`. So one test per orbit decides it.
pub fn represent(lattice: &Rank2Lattice, k: i64) -> Result<Vec<DivisorClass>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if lattice.is_square_discriminant() {
        return Err(Error::SquareDiscriminant(lattice.d()));
    }
    let norm = (4 * lattice.a() as i128)
        .checked_mul(k as i128)
        .and_then(|m| i64::try_from(m).ok())
        .ok_or(Error::Overflow("4ak"))?;
    let orbits = general_pell_orbits(lattice.d(), norm)?;
    let h = build_h(lattice)?;

    let mut seen = HashSet::new();
    let mut classes = Vec::new();
    for rep in &orbits.representatives {
        if let Some(class) = class_from_pell(lattice, rep) {
            let canonical = canonical_class(&class, &h);
            if seen.insert(canonical.clone()) {
                classes.push(canonical);
            }
        }
    }
    classes.sort_by(|p, q| {
        (p.y.abs(), p.x.abs(), -&p.x, -&p.y).cmp(&(q.y.abs(), q.x.abs(), -&q.x, -&q.y))
    });
    Ok(classes)
}

/// A primitive isotropic class when `d` is a perfect square.
pub fn has_zero_class(lattice: &Rank2Lattice) -> Option<DivisorClass> {
    if !lattice.is_square_discriminant() {
        return None;
    }
    // x/y = (−b + √d)/(2a) is a rational root of a·t² + b·t + c.
    let root = isqrt(lattice.d() as i128) as i64;
    let (x, y) = (root - lattice.b(), 2 * lattice.a());
    let g = x.gcd(&y);
    Some(DivisorClass::new(x / g, y / g))
}

/// A class of square −2, if one exists.
pub fn has_minus_two_class(lattice: &Rank2Lattice) -> Result<Option<DivisorClass>> {
    Ok(represent(lattice, -1)?.into_iter().next())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub n: usize,
    pub class: DivisorClass,
    /// `x_n / y_n`, absent when `y_n = 0`.
    pub ratio: Option<BigRational>,
}

/// `Mⁿ·D₀` for `n = 0..=steps`, with the exact ratios `x_n / y_n`.
pub fn orbit_ratio_sequence(
    lattice: &Rank2Lattice,
    start: &DivisorClass,
    m: &Mat2,
    steps: usize,
) -> Result<Vec<OrbitPoint>> {
    if start.is_zero() {
        return Err(Error::ZeroClass);
    }
    if !is_isometry(lattice, m) {
        return Err(Error::NotIsometry);
    }
    let mut out = Vec::with_capacity(steps + 1);
    let mut class = start.clone();
    for n in 0..=steps {
        let ratio = (!class.y.is_zero())
            .then(|| BigRational::new(class.x.clone(), class.y.clone()));
        let next = class.image(m);
        out.push(OrbitPoint { n, class, ratio });
        class = next;
    }
    Ok(out)
}

/// `|a·r² + b·r + c|`, which vanishes exactly on the two null directions.
pub fn null_residual(lattice: &Rank2Lattice, r: &BigRational) -> BigRational {
    let a = BigRational::from_integer(lattice.a().into());
    let b = BigRational::from_integer(lattice.b().into());
    let c = BigRational::from_integer(lattice.c().into());
    (a * r * r + b * r + c).abs()
}

/// The two null directions `(−b ± √d)/(2a)` as floating values.
pub fn null_directions(lattice: &Rank2Lattice) -> (f64, f64) {
    let (a, b, d) = (lattice.a() as f64, lattice.b() as f64, lattice.d() as f64);
    ((-b + d.sqrt()) / (2.0 * a), (-b - d.sqrt()) / (2.0 * a))
}
