//! Automorphism groups of K3 surfaces with a rank-two Picard lattice.
//!
//! Every isometry of determinant one preserves the two null directions of the
//! form, which pins its matrix to the shape
//! `((α, β), (−(a/c)β, α − (b/c)β))` with `cα² − bαβ + aβ² = c`. Writing
//! `w = 2cα − bβ` turns the last identity into `w² − dβ² = 4c²`, so the
//! positive rotation `h` of smallest spectral radius comes from a generalized
//! Pell equation. Reflections have the shape
//! `((α, β), ((aβ − bα)/c, −α))` on the same conic.
//!
//! The generator of the infinite part of `Aut(X)` is the smallest power `hᵏ`
//! acting as `±id` on the discriminant group; the sign tags it symplectic
//! (`+1`) or anti-symplectic (`−1`).

use std::cmp::Reverse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::divisors::{has_minus_two_class, has_zero_class, DivisorClass};
use crate::error::{Error, Result};
use crate::lattice::{
    disc_action, disc_action_oracle, disc_acts_as, is_isometry, make_lattice,
    preserves_positive_cone, Isometry2, Rank2Lattice,
};
use crate::matrix::Mat2;
use crate::pell::{general_pell_orbits, pell_multiply, OrbitSet, PellSolution};

/// The conic `w² − d·β² = 4c²` shared by rotations and reflections.
pub fn rotation_conic(lattice: &Rank2Lattice) -> Result<OrbitSet> {
    if lattice.is_square_discriminant() {
        return Err(Error::SquareDiscriminant(lattice.d()));
    }
    let c = lattice.c() as i128;
    let norm = i64::try_from(4 * c * c).map_err(|_| Error::Overflow("4c²"))?;
    general_pell_orbits(lattice.d(), norm)
}

/// The determinant-one matrix attached to a conic point, if integral.
pub fn rotation_from_conic(lattice: &Rank2Lattice, w: &BigInt, beta: &BigInt) -> Option<Mat2> {
    let (a, b, c) = (lattice.a(), lattice.b(), BigInt::from(lattice.c()));
    let twice = w + beta * b;
    let two_c = &c * 2;
    if !twice.is_multiple_of(&two_c) {
        return None;
    }
    let a_beta = beta * a;
    let b_beta = beta * b;
    if !a_beta.is_multiple_of(&c) || !b_beta.is_multiple_of(&c) {
        return None;
    }
    let alpha = twice / two_c;
    let gamma = -(a_beta / &c);
    let delta = &alpha - b_beta / &c;
    Some(Mat2::new(alpha, beta.clone(), gamma, delta))
}

/// The determinant-minus-one matrix attached to a conic point, if integral.
pub fn reflection_from_conic(lattice: &Rank2Lattice, w: &BigInt, beta: &BigInt) -> Option<Mat2> {
    let (a, b, c) = (lattice.a(), lattice.b(), BigInt::from(lattice.c()));
    let twice = w + beta * b;
    let two_c = &c * 2;
    if !twice.is_multiple_of(&two_c) {
        return None;
    }
    let alpha = twice / two_c;
    let numerator = beta * a - &alpha * b;
    if !numerator.is_multiple_of(&c) {
        return None;
    }
    let gamma = numerator / &c;
    let delta = -&alpha;
    Some(Mat2::new(alpha, beta.clone(), gamma, delta))
}

fn unit_power(unit: &PellSolution, j: i64) -> PellSolution {
    let base = if j < 0 { unit.conjugate() } else { unit.clone() };
    let mut acc = PellSolution::new(1, 0, unit.d);
    for _ in 0..j.unsigned_abs() {
        acc = pell_multiply(&acc, &base).expect("same d");
    }
    acc
}

/// The cone-preserving rotation of smallest spectral radius greater than one,
/// normalized to `β > 0`.
pub fn build_h(lattice: &Rank2Lattice) -> Result<Mat2> {
    Ok(build_h_with_conic(lattice)?.0)
}

fn build_h_with_conic(lattice: &Rank2Lattice) -> Result<(Mat2, PellSolution)> {
    let conic = rotation_conic(lattice)?;
    let c = BigInt::from(lattice.c());
    let two = BigInt::from(2);
    let mut best: Option<(BigInt, PellSolution)> = None;
    // The canonical member of each orbit is the power of h closest to the
    // identity in its class, so h sits at most one unit step away from it.
    for rep in &conic.representatives {
        for j in -2..=2 {
            let s = pell_multiply(rep, &unit_power(&conic.unit, j)).expect("same d");
            if rotation_from_conic(lattice, &s.u, &s.v).is_none() {
                continue;
            }
            let trace = &s.u / &c;
            if trace > two && best.as_ref().is_none_or(|(t, _)| trace < *t) {
                best = Some((trace, s));
            }
        }
    }
    let (_, mut point) = best.ok_or(Error::NoHyperbolicIsometry)?;
    if point.v.is_negative() {
        point = point.conjugate();
    }
    let h = rotation_from_conic(lattice, &point.u, &point.v).ok_or(Error::NoHyperbolicIsometry)?;
    if !is_isometry(lattice, &h) || !h.det().is_one() || !preserves_positive_cone(lattice, &h)? {
        return Err(Error::Internal(format!("rotation {h} failed validation")));
    }
    Ok((h, point))
}

/// Every integral rotation `M` with `2 < |trace M| ≤ max_trace`, found by
/// walking each orbit of the rotation conic outward from its representative.
pub fn rotations_up_to(lattice: &Rank2Lattice, max_trace: &BigInt) -> Result<Vec<Mat2>> {
    let conic = rotation_conic(lattice)?;
    let c = BigInt::from(lattice.c());
    let bound = max_trace * c.abs();
    let inverse = conic.unit.conjugate();
    let mut out = Vec::new();
    let keep = |s: &PellSolution, out: &mut Vec<Mat2>| {
        if let Some(m) = rotation_from_conic(lattice, &s.u, &s.v) {
            if m.trace().abs() > BigInt::from(2) && !out.contains(&m) {
                out.push(m);
            }
        }
    };
    for rep in &conic.representatives {
        if rep.u.abs() <= bound {
            keep(rep, &mut out);
        }
        // w² = 4c² + dβ² grows with |β|, which is minimal at the representative.
        for step in [&conic.unit, &inverse] {
            let mut cur = pell_multiply(rep, step).expect("same d");
            while cur.u.abs() <= bound {
                keep(&cur, &mut out);
                cur = pell_multiply(&cur, step).expect("same d");
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Topological entropy `log ρ(M)` of an integral matrix of determinant ±1.
pub fn entropy(m: &Mat2) -> f64 {
    let t = m.trace().abs();
    let det = m.det();
    if det.is_one() && t <= BigInt::from(2) {
        return 0.0;
    }
    if !det.is_one() && t.is_zero() {
        return 0.0;
    }
    // ρ = (t + √(t² ∓ 4))/2 with the sign set by det = ±1.
    let shift = if det.is_one() { -4.0 } else { 4.0 };
    match t.to_f64() {
        Some(tf) if tf < 1e15 => ((tf + (tf * tf + shift).sqrt()) / 2.0).ln(),
        // ρ = t − O(1/t), far below f64 resolution here.
        _ => ln_big(&t),
    }
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(60);
    let top = (n >> shift).to_f64().expect("fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact data behind an entropy value: `ρ` is the larger root of
/// `λ² − t·λ + det`, whose discriminant is `t² − 4·det`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyData {
    pub value: f64,
    pub trace: BigInt,
    pub det: BigInt,
    pub char_discriminant: BigInt,
}

pub fn entropy_data(m: &Mat2) -> EntropyData {
    let trace = m.trace();
    let det = m.det();
    EntropyData {
        value: entropy(m),
        char_discriminant: &trace * &trace - &det * 4,
        trace,
        det,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorReport {
    pub h: Isometry2,
    pub k: u32,
    pub epsilon: i32,
    pub generator: Isometry2,
    pub entropy: f64,
    /// The conic point `(w, β)` behind `h`, with `w² − dβ² = 4c²`.
    pub pell4: PellSolution,
}

/// The smallest power of `h` acting as `±id` on the discriminant group.
pub fn generator_infinite(lattice: &Rank2Lattice) -> Result<GeneratorReport> {
    let (h, pell4) = build_h_with_conic(lattice)?;
    // h^order acts trivially, which bounds the search.
    let order = disc_action_oracle(lattice, &h)?.order();
    let mut power = Mat2::identity();
    for k in 1..=order {
        power = &power * &h;
        if let Some(epsilon) = disc_action(lattice, &power)?.epsilon() {
            let k = u32::try_from(k).map_err(|_| Error::Overflow("generator power"))?;
            return Ok(GeneratorReport {
                entropy: f64::from(k) * entropy(&h),
                h: Isometry2::new(lattice, h)?,
                k,
                epsilon,
                generator: Isometry2::new(lattice, power)?,
                pell4,
            });
        }
    }
    Err(Error::Internal(format!(
        "h^{order} does not act as ±id on the discriminant group"
    )))
}

/// Any integral reflection (determinant −1 isometry) of the lattice.
pub fn find_reflection(lattice: &Rank2Lattice) -> Result<Option<Mat2>> {
    let conic = rotation_conic(lattice)?;
    let (a, b, c) = (lattice.a() as i128, lattice.b() as i128, lattice.c() as i128);
    // Integrality of α = (w + bβ)/2c and of (aβ − bα)/c depends only on
    // (w, β) mod 2c², and the unit permutes those residues.
    let modulus = 2 * c * c;
    let d = lattice.d() as i128;
    let reduce = |x: &BigInt| -> i128 {
        x.mod_floor(&BigInt::from(modulus))
            .to_i128()
            .expect("reduced")
    };
    let (uu, uv) = (reduce(&conic.unit.u), reduce(&conic.unit.v));
    let integral = |w: i128, beta: i128| -> bool {
        let twice = (w + b * beta).rem_euclid(modulus);
        if twice % (2 * c) != 0 {
            return false;
        }
        let alpha = twice / (2 * c);
        (a * beta - b * alpha).rem_euclid(c.abs()) == 0
    };
    for rep in &conic.representatives {
        let start = (reduce(&rep.u), reduce(&rep.v));
        let mut cur = start;
        let mut j = 0i64;
        loop {
            if integral(cur.0, cur.1) {
                let s = pell_multiply(rep, &unit_power(&conic.unit, j)).expect("same d");
                let m = reflection_from_conic(lattice, &s.u, &s.v)
                    .ok_or_else(|| Error::Internal("residue scan mismatch".into()))?;
                return Ok(Some(m));
            }
            cur = (
                (uu * cur.0 + d.rem_euclid(modulus) * uv % modulus * cur.1).rem_euclid(modulus),
                (uv * cur.0 + uu * cur.1).rem_euclid(modulus),
            );
            j += 1;
            if cur == start {
                break;
            }
        }
    }
    Ok(None)
}

fn involution_key(m: &Mat2) -> (BigInt, Reverse<BigInt>, Reverse<BigInt>, Reverse<BigInt>) {
    (
        m.frobenius(),
        Reverse(m.alpha.clone()),
        Reverse(m.beta.clone()),
        Reverse(m.gamma.clone()),
    )
}

/// The smallest member of `{ι·g²ᵐ}`, the class of `ι` under conjugation by `g`.
fn canonical_involution(iota: &Mat2, g: &Mat2) -> Mat2 {
    let step = g * g;
    let back = step.inverse().expect("unimodular");
    let mut cur = iota.clone();
    for s in [&step, &back] {
        loop {
            let next = &cur * s;
            if next.frobenius() < cur.frobenius() {
                cur = next;
            } else {
                break;
            }
        }
    }
    [&cur * &step, &cur * &back, cur]
        .into_iter()
        .min_by(|x, y| involution_key(x).cmp(&involution_key(y)))
        .expect("non-empty")
}

/// Anti-symplectic, cone-preserving involutions, one per class under
/// conjugation by the generator; empty when there are none.
///
/// All reflections form the coset `±P·hʲ` of any single reflection `P`, and
/// conjugating by `g = hᵏ` shifts `j` by `2k`, so `j` ranges over `0..2k`.
pub fn involutions(lattice: &Rank2Lattice, report: &GeneratorReport) -> Result<Vec<Isometry2>> {
    let Some(p) = find_reflection(lattice)? else {
        return Ok(Vec::new());
    };
    let h = report.h.matrix();
    let g = report.generator.matrix();
    let mut found: Vec<Mat2> = Vec::new();
    let mut shifted = p;
    for _ in 0..(2 * report.k) {
        for iota in [shifted.clone(), -&shifted] {
            if disc_acts_as(lattice, &iota, -1)? && preserves_positive_cone(lattice, &iota)? {
                let canonical = canonical_involution(&iota, g);
                if !found.contains(&canonical) {
                    found.push(canonical);
                }
            }
        }
        shifted = &shifted * h;
    }
    found.sort_by_key(involution_key);
    found
        .into_iter()
        .map(|m| Isometry2::new(lattice, m))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionPair {
    pub sigma: Isometry2,
    pub tau: Isometry2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteWitness {
    /// Primitive class of square zero; exists iff `d` is a perfect square.
    ZeroClass(DivisorClass),
    /// Class of square −2.
    MinusTwoClass(DivisorClass),
}

#[derive(Clone, Debug, PartialEq)]
pub enum AutClassification {
    Finite {
        witness: FiniteWitness,
    },
    InfiniteCyclic {
        report: GeneratorReport,
    },
    InfiniteDihedral {
        report: GeneratorReport,
        pair: InvolutionPair,
        involutions: Vec<Isometry2>,
    },
}

impl AutClassification {
    /// Lowercase variant name used in machine-readable output.
    pub fn variant_name(&self) -> &'static str {
        match self {
            AutClassification::Finite { .. } => "finite",
            AutClassification::InfiniteCyclic { .. } => "cyclic",
            AutClassification::InfiniteDihedral { .. } => "dihedral",
        }
    }

    pub fn report(&self) -> Option<&GeneratorReport> {
        match self {
            AutClassification::Finite { .. } => None,
            AutClassification::InfiniteCyclic { report }
            | AutClassification::InfiniteDihedral { report, .. } => Some(report),
        }
    }
}

/// Finite iff there is a class of square 0 or −2; otherwise infinite
/// dihedral when anti-symplectic involutions exist, else infinite cyclic.
pub fn classify(lattice: &Rank2Lattice) -> Result<AutClassification> {
    if let Some(class) = has_zero_class(lattice) {
        return Ok(AutClassification::Finite {
            witness: FiniteWitness::ZeroClass(class),
        });
    }
    if let Some(class) = has_minus_two_class(lattice)? {
        return Ok(AutClassification::Finite {
            witness: FiniteWitness::MinusTwoClass(class),
        });
    }
    let report = generator_infinite(lattice)?;
    let involutions = involutions(lattice, &report)?;
    let Some(sigma) = involutions.first().cloned() else {
        return Ok(AutClassification::InfiniteCyclic { report });
    };
    let tau = sigma.matrix() * report.generator.matrix();
    let tau_ok = (&tau * &tau).is_identity()
        && disc_acts_as(lattice, &tau, -1)?
        && preserves_positive_cone(lattice, &tau)?;
    if !tau_ok {
        return Err(Error::Internal(format!(
            "σ∘g = {tau} is not an anti-symplectic involution"
        )));
    }
    let pair = InvolutionPair {
        sigma,
        tau: Isometry2::new(lattice, tau)?,
    };
    Ok(AutClassification::InfiniteDihedral {
        report,
        pair,
        involutions,
    })
}

/// Outcome of building the Picard lattice of a quartic containing a smooth
/// curve of degree `deg` and genus `genus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuarticLattice {
    Lattice(Rank2Lattice),
    /// `genus = deg²/8 + 1`: the lattice has discriminant zero and the
    /// automorphism group is finite.
    FiniteDegenerate { deg: i64, genus: i64 },
}

/// Lattice with Gram matrix `((4, deg), (deg, 2·genus − 2))`, subject to the
/// existence conditions for a smooth curve on a smooth quartic:
/// `genus = deg²/8 + 1`, or `genus < deg²/8` with `(deg, genus) ≠ (5, 3)`.
pub fn lattice_from_quartic(deg: i64, genus: i64) -> Result<QuarticLattice> {
    if deg < 1 || genus < 0 {
        return Err(Error::NotRealizable(deg, genus));
    }
    let deg_sq = (deg as i128) * (deg as i128);
    let g = genus as i128;
    if 8 * (g - 1) == deg_sq {
        return Ok(QuarticLattice::FiniteDegenerate { deg, genus });
    }
    if 8 * g < deg_sq && (deg, genus) != (5, 3) {
        return Ok(QuarticLattice::Lattice(make_lattice(2, deg, genus - 1)?));
    }
    Err(Error::NotRealizable(deg, genus))
}
