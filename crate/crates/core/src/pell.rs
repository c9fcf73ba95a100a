//! Exact solvers for `u² − d·v² = m`.
//!
//! Fundamental solutions are read off the continued-fraction expansion of a
//! quadratic irrational `(P + √d)/Q`. Generalized norms are split into orbits
//! under the Pell-1 unit `u₁ + v₁√d` with the Lagrange–Matthews–Mollin
//! procedure, so the search never depends on the size of the unit.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Floor of the square root of a non-negative `i128`.
pub(crate) fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative number");
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt(n as i128);
        r * r == n as i128
    }
}

/// A pair `(u, v)` read as `u + v√d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub u: BigInt,
    pub v: BigInt,
    pub d: i64,
}

impl PellSolution {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>, d: i64) -> Self {
        PellSolution {
            u: u.into(),
            v: v.into(),
            d,
        }
    }

    /// `u² − d·v²`.
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u - BigInt::from(self.d) * &self.v * &self.v
    }

    pub fn conjugate(&self) -> Self {
        PellSolution::new(self.u.clone(), -&self.v, self.d)
    }

    pub fn negate(&self) -> Self {
        PellSolution::new(-&self.u, -&self.v, self.d)
    }

    fn times(&self, other: &PellSolution) -> PellSolution {
        let d = BigInt::from(self.d);
        PellSolution::new(
            &self.u * &other.u + d * &self.v * &other.v,
            &self.u * &other.v + &self.v * &other.u,
            self.d,
        )
    }

    fn scaled(&self, f: i64) -> PellSolution {
        PellSolution::new(&self.u * f, &self.v * f, self.d)
    }

    /// Orders by `|v|`, preferring `u > 0` and then `v ≥ 0` on ties.
    fn canonical_key(&self) -> (BigInt, bool, bool) {
        (self.v.abs(), !self.u.is_positive(), self.v.is_negative())
    }
}

/// Pell multiple `(s.u·t.u + d·s.v·t.v, s.u·t.v + s.v·t.u)`; norms multiply.
pub fn pell_multiply(s: &PellSolution, t: &PellSolution) -> Result<PellSolution> {
    if s.d != t.d {
        return Err(Error::MismatchedD(s.d, t.d));
    }
    Ok(s.times(t))
}

/// Powers `rep·unitⁿ` for `n = 0, 1, 2, …`.
pub fn pell_multiples(rep: PellSolution, unit: PellSolution) -> impl Iterator<Item = PellSolution> {
    std::iter::successors(Some(rep), move |s| Some(s.times(&unit)))
}

fn check_nonsquare(d: i64) -> Result<()> {
    if d <= 0 {
        return Err(Error::NonPositiveD(d));
    }
    if is_square(d) {
        return Err(Error::SquareInput(d));
    }
    Ok(())
}

/// One step of the PQa recurrence for `(P₀ + √D)/Q₀`.
#[derive(Clone, Debug)]
struct PqaStep {
    index: usize,
    /// `P_i`, `Q_i` of the complete quotient `(P_i + √D)/Q_i`.
    p: i128,
    q: i128,
    a: i128,
    g: BigInt,
    b: BigInt,
    /// `G_i² − D·B_i²`, equal to `(−1)^{i+1} Q_{i+1} Q₀`.
    norm: i128,
}

/// Continued fraction of `(P₀ + √D)/Q₀` with `Q₀ | D − P₀²`, yielding the
/// partial quotients together with `G_i = Q₀A_i − P₀B_i` and `B_i`.
struct Pqa {
    d: i128,
    s: i128,
    p: i128,
    q: i128,
    q0: i128,
    index: usize,
    g: [BigInt; 2],
    b: [BigInt; 2],
}

impl Pqa {
    fn new(p0: i128, q0: i128, d: i128) -> Self {
        debug_assert!(q0 != 0 && (d - p0 * p0) % q0 == 0);
        Pqa {
            d,
            s: isqrt(d),
            p: p0,
            q: q0,
            q0,
            index: 0,
            g: [BigInt::from(-p0), BigInt::from(q0)],
            b: [BigInt::one(), BigInt::zero()],
        }
    }
}

impl Iterator for Pqa {
    type Item = PqaStep;

    fn next(&mut self) -> Option<PqaStep> {
        let (p, q) = (self.p, self.q);
        // √D is irrational, so floor((P+√D)/Q) only depends on floor(√D).
        let a = if q > 0 {
            Integer::div_floor(&(p + self.s), &q)
        } else {
            -(Integer::div_floor(&(p + self.s), &-q) + 1)
        };
        let g = &self.g[1] * a + &self.g[0];
        let b = &self.b[1] * a + &self.b[0];
        self.g = [std::mem::take(&mut self.g[1]), g.clone()];
        self.b = [std::mem::take(&mut self.b[1]), b.clone()];
        let next_p = a * q - p;
        let next_q = (self.d - next_p * next_p) / q;
        let sign = if self.index % 2 == 0 { -1 } else { 1 };
        let step = PqaStep {
            index: self.index,
            p,
            q,
            a,
            g,
            b,
            norm: sign * next_q * self.q0,
        };
        self.p = next_p;
        self.q = next_q;
        self.index += 1;
        Some(step)
    }
}

/// `√d = [a0; period…]` with the minimal period.
pub fn cf_sqrt_period(d: i64) -> Result<(i64, Vec<i64>)> {
    check_nonsquare(d)?;
    let mut steps = Pqa::new(0, 1, d as i128);
    let a0 = steps.next().expect("infinite expansion").a;
    let mut period = Vec::new();
    for step in steps {
        period.push(step.a as i64);
        if step.a == 2 * a0 {
            break;
        }
    }
    Ok((a0 as i64, period))
}

/// Smallest positive solution of `u² − d·v² = 1`.
pub fn pell1_fundamental(d: i64) -> Result<PellSolution> {
    match check_nonsquare(d) {
        Err(Error::SquareInput(d)) => return Err(Error::OnlyTrivial(d)),
        other => other?,
    }
    let step = Pqa::new(0, 1, d as i128)
        .find(|s| s.norm == 1)
        .expect("Pell equation always has a nontrivial solution");
    Ok(PellSolution::new(step.g, step.b, d))
}

/// Smallest positive solution of `u² − d·v² = −1`, if any.
pub fn neg_pell_fundamental(d: i64) -> Result<Option<PellSolution>> {
    check_nonsquare(d)?;
    // Q_{i+1} = 1 marks the end of each period of √d.
    let step = Pqa::new(0, 1, d as i128)
        .find(|s| s.norm.abs() == 1)
        .expect("period always closes");
    Ok((step.norm == -1).then(|| PellSolution::new(step.g, step.b, d)))
}

/// Smallest positive solution of `u² − d·v² = 4`.
pub fn pell4_fundamental(d: i64) -> Result<PellSolution> {
    check_nonsquare(d)?;
    match d.rem_euclid(4) {
        1 => {
            // Solutions have u ≡ v (mod 2); they are the norm-1 units of
            // Z[(1+√d)/2], all of which are convergents of (1+√d)/2.
            let step = Pqa::new(1, 2, d as i128)
                .find(|s| s.norm == 4 && s.b.is_positive())
                .expect("norm-4 equation always solvable");
            Ok(PellSolution::new(step.g, step.b, d))
        }
        0 => {
            // u is even: (u/2)² − (d/4)v² = 1.
            let inner = pell1_fundamental(d / 4)?;
            Ok(PellSolution::new(inner.u * 2, inner.v, d))
        }
        _ => {
            // v odd would force u² ≡ d (mod 4), impossible for d ≡ 2, 3.
            let inner = pell1_fundamental(d)?;
            Ok(PellSolution::new(inner.u * 2, inner.v * 2, d))
        }
    }
}

/// Orbit representatives of `u² − d·v² = m` under multiplication by the
/// Pell-1 fundamental unit and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSet {
    pub d: i64,
    pub m: i64,
    pub representatives: Vec<PellSolution>,
    pub unit: PellSolution,
}

impl OrbitSet {
    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// The canonical member of the orbit of `s`: minimal `|v|`, then `u > 0`,
    /// then `v ≥ 0`.
    pub fn canonicalize(&self, s: &PellSolution) -> PellSolution {
        canonical_in_orbit(s, &self.unit)
    }

    /// True iff `s` is a Pell multiple of one of the representatives.
    pub fn covers(&self, s: &PellSolution) -> bool {
        s.d == self.d && self.representatives.contains(&self.canonicalize(s))
    }

    /// All solutions with `|v| ≤ bound`, walking each orbit in both directions.
    pub fn solutions_below(&self, bound: &BigInt) -> Vec<PellSolution> {
        let inverse = self.unit.conjugate();
        let mut out = Vec::new();
        for rep in &self.representatives {
            if rep.v.abs() <= *bound {
                out.push(rep.clone());
            }
            for step in [&self.unit, &inverse] {
                // |v| is unimodal along an orbit and the representative sits at
                // its minimum, so each direction can stop at the first overshoot.
                let mut cur = rep.times(step);
                while cur.v.abs() <= *bound {
                    out.push(cur.clone());
                    cur = cur.times(step);
                }
            }
        }
        out.sort_by(|x, y| (x.v.abs(), &x.u, &x.v).cmp(&(y.v.abs(), &y.u, &y.v)));
        out.dedup();
        out
    }
}

pub(crate) fn canonical_in_orbit(s: &PellSolution, unit: &PellSolution) -> PellSolution {
    let inverse = unit.conjugate();
    let mut cur = s.clone();
    for step in [unit, &inverse] {
        loop {
            let next = cur.times(step);
            if next.v.abs() < cur.v.abs() {
                cur = next;
            } else {
                break;
            }
        }
    }
    // At most two adjacent orbit members share the minimal |v|.
    [cur.times(unit), cur.times(&inverse), cur]
        .into_iter()
        .min_by(|x, y| x.canonical_key().cmp(&y.canonical_key()))
        .expect("non-empty")
}

/// All orbit representatives of `u² − d·v² = m`; empty when there are no
/// solutions.
pub fn general_pell_orbits(d: i64, m: i64) -> Result<OrbitSet> {
    check_nonsquare(d)?;
    if m == 0 {
        return Err(Error::ZeroM);
    }
    let unit = pell1_fundamental(d)?;
    let neg_unit = neg_pell_fundamental(d)?;
    let dd = d as i128;

    let mut fundamentals = Vec::new();
    let abs_m = (m as i128).abs();
    let mut f: i128 = 1;
    while f * f <= abs_m {
        if abs_m % (f * f) == 0 {
            let mm = m as i128 / (f * f);
            let n = mm.abs();
            let mut z = Integer::div_floor(&-n, &2) + 1;
            while z <= Integer::div_floor(&n, &2) {
                if (z * z - dd).rem_euclid(n) == 0 {
                    if let Some(sol) = primitive_class(z, n, mm, dd, neg_unit.as_ref()) {
                        fundamentals.push(sol.scaled(f as i64));
                    }
                }
                z += 1;
            }
        }
        f += 1;
    }

    let mut seen = HashSet::new();
    let mut representatives = Vec::new();
    for sol in fundamentals {
        for s in [sol.negate(), sol] {
            let rep = canonical_in_orbit(&s, &unit);
            if seen.insert(rep.clone()) {
                representatives.push(rep);
            }
        }
    }
    representatives.sort_by(|x, y| {
        (x.v.abs(), x.u.abs(), -&x.u, -&x.v).cmp(&(y.v.abs(), y.u.abs(), -&y.u, -&y.v))
    });
    Ok(OrbitSet {
        d,
        m,
        representatives,
        unit,
    })
}

/// The primitive solution class attached to `z` (with `z² ≡ d mod n`), if it
/// represents `mm`.
fn primitive_class(
    z: i128,
    n: i128,
    mm: i128,
    d: i128,
    neg_unit: Option<&PellSolution>,
) -> Option<PellSolution> {
    let mut seen = HashSet::new();
    let mut prev: Option<PqaStep> = None;
    for step in Pqa::new(z, n, d) {
        if step.index >= 1 {
            if step.q.abs() == 1 {
                let prev = prev.expect("index ≥ 1 has a predecessor");
                let sol = PellSolution::new(prev.g, prev.b, d as i64);
                let norm = sol.norm();
                if norm == BigInt::from(mm) {
                    return Some(sol);
                }
                debug_assert_eq!(norm, BigInt::from(-mm));
                return neg_unit.map(|t| sol.times(t));
            }
            if !seen.insert((step.p, step.q)) {
                return None;
            }
        }
        prev = Some(step);
    }
    unreachable!("continued fraction is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(u: i64, v: i64, d: i64) -> PellSolution {
        PellSolution::new(u, v, d)
    }

    #[test]
    fn cf_examples() {
        assert_eq!(cf_sqrt_period(2).unwrap(), (1, vec![2]));
        assert_eq!(cf_sqrt_period(5).unwrap(), (2, vec![4]));
        assert_eq!(cf_sqrt_period(7).unwrap(), (2, vec![1, 1, 1, 4]));
        assert_eq!(cf_sqrt_period(4), Err(Error::SquareInput(4)));
    }

    #[test]
    fn cf_convergents_hit_norm_pm1() {
        // p² − 2q² = ±1 for every convergent of √2 = [1; 2, 2, …].
        let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, 1i64, 1i64);
        for _ in 0..10 {
            assert_eq!((p1 * p1 - 2 * q1 * q1).abs(), 1);
            let (p2, q2) = (2 * p1 + p0, 2 * q1 + q0);
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
        }
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(pell1_fundamental(2).unwrap(), sol(3, 2, 2));
        assert_eq!(pell1_fundamental(5).unwrap(), sol(9, 4, 5));
        assert_eq!(pell1_fundamental(9), Err(Error::OnlyTrivial(9)));
        assert_eq!(pell4_fundamental(5).unwrap(), sol(3, 1, 5));
        assert_eq!(pell4_fundamental(12).unwrap(), sol(4, 1, 12));
        assert_eq!(pell4_fundamental(20).unwrap(), sol(18, 4, 20));
        assert_eq!(pell4_fundamental(16), Err(Error::SquareInput(16)));
        assert_eq!(pell1_fundamental(0), Err(Error::NonPositiveD(0)));
    }

    #[test]
    fn large_fundamental_does_not_overflow() {
        // d = 661 has a 30-digit fundamental solution.
        let s = pell1_fundamental(661).unwrap();
        assert_eq!(s.norm(), BigInt::one());
        assert!(s.u.to_string().len() > 20);
    }

    #[test]
    fn negative_pell() {
        assert_eq!(neg_pell_fundamental(2).unwrap(), Some(sol(1, 1, 2)));
        assert_eq!(neg_pell_fundamental(5).unwrap(), Some(sol(2, 1, 5)));
        assert_eq!(neg_pell_fundamental(3).unwrap(), None);
    }

    #[test]
    fn multiply_examples() {
        let p = pell_multiply(&sol(3, 1, 5), &sol(3, 1, 5)).unwrap();
        assert_eq!(p, sol(14, 6, 5));
        assert_eq!(p.norm(), BigInt::from(16));
        assert_eq!(pell_multiply(&sol(7, 3, 5), &sol(1, 0, 5)).unwrap(), sol(7, 3, 5));
        assert_eq!(pell_multiply(&sol(3, 2, 2), &sol(3, -2, 2)).unwrap(), sol(1, 0, 2));
        assert_eq!(
            pell_multiply(&sol(3, 2, 2), &sol(9, 4, 5)),
            Err(Error::MismatchedD(2, 5))
        );
    }

    #[test]
    fn orbit_examples() {
        let o = general_pell_orbits(5, 4).unwrap();
        for s in [sol(2, 0, 5), sol(3, 1, 5), sol(3, -1, 5)] {
            assert!(o.representatives.contains(&s), "{s:?} missing");
        }
        assert!(general_pell_orbits(12, -8).unwrap().representatives.contains(&sol(2, 1, 12)));
        assert!(general_pell_orbits(20, -8).unwrap().is_empty());
        assert_eq!(general_pell_orbits(5, 0), Err(Error::ZeroM));
        assert_eq!(general_pell_orbits(25, 3), Err(Error::SquareInput(25)));
    }

    #[test]
    fn negative_v_only_orbit_is_found() {
        // (1 − √2)·εⁿ has v < 0 for every n.
        let o = general_pell_orbits(2, -1).unwrap();
        assert!(o.covers(&sol(1, -1, 2)));
        assert!(o.covers(&sol(-1, 1, 2)));
        assert!(o.covers(&sol(7, -5, 2)));
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let o = general_pell_orbits(7, 9).unwrap();
        for r in &o.representatives {
            assert_eq!(&o.canonicalize(r), r);
            assert_eq!(r.norm(), BigInt::from(9));
        }
    }

    #[test]
    fn solutions_below_lists_each_once() {
        let o = general_pell_orbits(5, 4).unwrap();
        let all = o.solutions_below(&BigInt::from(10));
        // v = 0: ±2; then (±3, ±1), (±7, ±3), (±18, ±8).
        assert_eq!(all.len(), 2 + 4 + 4 + 4);
    }
}
