//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use k3aut::pell::{pell_multiply, OrbitSet, PellSolution};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
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
        let r = isqrt(n as u128);
        r * r == n as u128
    }
}

/// Smallest `v ≥ 1` (with `u > 0`) solving `u² − d·v² = norm`, if one has
/// `v ≤ vmax`.
pub fn brute_pell_min(d: i64, norm: i64, vmax: u64) -> Option<(u128, u128)> {
    for v in 1..=vmax as u128 {
        let rhs = d as i128 * (v * v) as i128 + norm as i128;
        if rhs <= 0 {
            continue;
        }
        let u = isqrt(rhs as u128);
        if (u * u) as i128 == rhs {
            return Some((u, v));
        }
    }
    None
}

/// First convergent `p/q` of `(p0 + √d)/q0` accepted by `stop`, from the
/// textbook recurrence `p_n = a_n p_{n−1} + p_{n−2}`. Needs `q0 > 0` and
/// `q0 | d − p0²`.
pub fn first_convergent(
    p0: i64,
    q0: i64,
    d: i64,
    stop: impl Fn(&BigInt, &BigInt) -> bool,
) -> (BigInt, BigInt) {
    let root = isqrt(d as u128) as i64;
    let (mut pp, mut qq) = (p0, q0);
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (pp + root).div_euclid(qq);
        let p_next = &p * a + &p_prev;
        let q_next = &q * a + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        if stop(&p, &q) {
            return (p, q);
        }
        pp = a * qq - pp;
        qq = (d - pp * pp) / qq;
    }
}

/// Fundamental solution of `u² − d·v² = 1` from the convergents of √d.
pub fn convergent_pell(d: i64) -> (BigInt, BigInt) {
    first_convergent(0, 1, d, |p, q| p * p - q * q * d == BigInt::one())
}

/// Fundamental solution of `u² − d·v² = 4`: twice the norm-1 solution unless
/// `d ≡ 1 (mod 4)`, where it comes from the convergents of `(1 + √d)/2`.
pub fn convergent_pell4(d: i64) -> (BigInt, BigInt) {
    match d.rem_euclid(4) {
        1 => {
            let (p, q) = first_convergent(1, 2, d, |p, q| {
                let u: BigInt = p * 2 - q;
                &u * &u - q * q * d == BigInt::from(4)
            });
            (p * 2 - &q, q)
        }
        0 => {
            let (p, q) = convergent_pell(d / 4);
            (p * 2, q)
        }
        _ => {
            let (p, q) = convergent_pell(d);
            (p * 2, q * 2)
        }
    }
}

/// Every `(u, v)` with `u² − d·v² = m` and `|v| ≤ vmax`.
pub fn brute_solutions(d: i64, m: i64, vmax: i64) -> BTreeSet<(i64, i64)> {
    let mut out = BTreeSet::new();
    for v in -vmax..=vmax {
        let rhs = m as i128 + d as i128 * (v as i128) * (v as i128);
        if rhs < 0 {
            continue;
        }
        let u = isqrt(rhs as u128) as i128;
        if u * u == rhs {
            out.insert((u as i64, v));
            out.insert((-u as i64, v));
        }
    }
    out
}

/// All `rep·εʲ` with `|v| ≤ vmax`, walking outward from each representative
/// until `|v|` has exceeded the bound for several consecutive steps.
pub fn orbit_expansion(orbits: &OrbitSet, vmax: i64) -> BTreeSet<(i64, i64)> {
    let bound = BigInt::from(vmax);
    let inverse = orbits.unit.conjugate();
    let mut out = BTreeSet::new();
    let record = |s: &PellSolution, out: &mut BTreeSet<(i64, i64)>| {
        if s.v.abs() <= bound {
            out.insert((
                i64::try_from(&s.u).expect("small"),
                i64::try_from(&s.v).expect("small"),
            ));
        }
    };
    for rep in &orbits.representatives {
        record(rep, &mut out);
        for step in [&orbits.unit, &inverse] {
            let mut cur = rep.clone();
            let mut outside = 0;
            while outside < 3 {
                cur = pell_multiply(&cur, step).unwrap();
                if cur.v.abs() > bound {
                    outside += 1;
                } else {
                    outside = 0;
                    record(&cur, &mut out);
                }
            }
        }
    }
    out
}

/// Values `a·x² + b·x·y + c·y²` taken on the box `|x|, |y| ≤ r`, restricted
/// to `lo..=hi`.
pub fn form_values_in_box(a: i64, b: i64, c: i64, r: i64, lo: i64, hi: i64) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for x in -r..=r {
        for y in -r..=r {
            if x == 0 && y == 0 {
                continue;
            }
            let q = a * x * x + b * x * y + c * y * y;
            if (lo..=hi).contains(&q) {
                out.insert(q);
            }
        }
    }
    out
}

/// Lattices `(a, b, c)` with entries in `-r..=r`, positive non-square
/// discriminant at most `dmax`.
pub fn small_lattices(r: i64, dmax: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let d = b * b - 4 * a * c;
                if d > 0 && d <= dmax && !is_square(d) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}
