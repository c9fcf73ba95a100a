//! Even lattices of rank two and signature (1,1).
//!
//! A lattice is given by integers `(a, b, c)` with Gram matrix
//! `((2a, b), (b, 2c))`, so evenness holds by construction. The builder moves
//! to a basis whose first vector has positive square (`a > 0`) and keeps the
//! change of basis so results can be reported in the caller's coordinates.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::pell::is_square;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Lattice {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    input: (i64, i64, i64),
    /// Columns are the working basis vectors in input coordinates.
    basis: Mat2,
}

fn form(a: i128, b: i128, c: i128, x: i128, y: i128) -> i128 {
    a * x * x + b * x * y + c * y * y
}

fn to_i64(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// Validated lattice; fails with `Degenerate` unless `b² − 4ac > 0`.
pub fn make_lattice(a: i64, b: i64, c: i64) -> Result<Rank2Lattice> {
    let (a0, b0, c0) = (a as i128, b as i128, c as i128);
    let d = to_i64(b0 * b0 - 4 * a0 * c0, "discriminant")?;
    if d <= 0 {
        return Err(Error::Degenerate(d));
    }
    let (basis, (na, nb, nc)) = if a > 0 {
        (Mat2::identity(), (a0, b0, c0))
    } else if c > 0 {
        (Mat2::swap(), (c0, b0, a0))
    } else {
        positive_basis(a0, b0, c0)
    };
    Ok(Rank2Lattice {
        a: to_i64(na, "normalized form")?,
        b: to_i64(nb, "normalized form")?,
        c: to_i64(nc, "normalized form")?,
        d,
        input: (a, b, c),
        basis,
    })
}

/// A unimodular basis whose first vector has positive square, for forms with
/// `a, c ≤ 0`. Such a vector exists because the form is indefinite.
fn positive_basis(a: i128, b: i128, c: i128) -> (Mat2, (i128, i128, i128)) {
    for r in 1i128.. {
        for x in -r..=r {
            for y in -r..=r {
                if x.abs().max(y.abs()) != r || x.gcd(&y) != 1 || form(a, b, c, x, y) <= 0 {
                    continue;
                }
                let ext = x.extended_gcd(&y);
                let (s, t) = (ext.x * ext.gcd, ext.y * ext.gcd);
                // x·s + y·t = 1, so (x, y), (−t, s) is a basis.
                let (x2, y2) = (-t, s);
                let new_a = form(a, b, c, x, y);
                let new_c = form(a, b, c, x2, y2);
                let new_b = 2 * a * x * x2 + b * (x * y2 + x2 * y) + 2 * c * y * y2;
                return (Mat2::new(x, x2, y, y2), (new_a, new_b, new_c));
            }
        }
    }
    unreachable!()
}

impl Rank2Lattice {
    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    /// `b² − 4ac`.
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn input(&self) -> (i64, i64, i64) {
        self.input
    }
    pub fn basis(&self) -> &Mat2 {
        &self.basis
    }
    pub fn is_square_discriminant(&self) -> bool {
        is_square(self.d)
    }

    pub fn gram(&self) -> Mat2 {
        Mat2::new(2 * self.a, self.b, self.b, 2 * self.c)
    }

    /// `a·x² + b·x·y + c·y²`, half the square of `(x, y)`.
    pub fn form(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * x * self.a + x * y * self.b + y * y * self.c
    }

    /// Self-intersection `2(a·x² + b·x·y + c·y²)`.
    pub fn square(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.form(x, y) * 2
    }

    /// Bilinear pairing `uᵀ Q v`.
    pub fn pairing(&self, u: (&BigInt, &BigInt), v: (&BigInt, &BigInt)) -> BigInt {
        let (a, b, c) = (self.a, self.b, self.c);
        u.0 * v.0 * (2 * a) + (u.0 * v.1 + u.1 * v.0) * b + u.1 * v.1 * (2 * c)
    }

    /// A matrix in the working basis rewritten in input coordinates.
    pub fn to_input_matrix(&self, m: &Mat2) -> Mat2 {
        let inv = self.basis.inverse().expect("basis is unimodular");
        &(&self.basis * m) * &inv
    }

    pub fn from_input_matrix(&self, m: &Mat2) -> Mat2 {
        let inv = self.basis.inverse().expect("basis is unimodular");
        &(&inv * m) * &self.basis
    }

    pub fn to_input_vector(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        self.basis.apply(x, y)
    }

    pub fn from_input_vector(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        self.basis
            .inverse()
            .expect("basis is unimodular")
            .apply(x, y)
    }
}

impl fmt::Display for Rank2Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]] (d = {})",
            2 * self.a,
            self.b,
            self.b,
            2 * self.c,
            self.d
        )
    }
}

/// `MᵀQM = Q`.
pub fn is_isometry(lattice: &Rank2Lattice, m: &Mat2) -> bool {
    let q = lattice.gram();
    &(&m.transpose() * &q) * m == q
}

/// A matrix checked to be an isometry of some lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry2(Mat2);

impl Isometry2 {
    pub fn new(lattice: &Rank2Lattice, m: Mat2) -> Result<Self> {
        if is_isometry(lattice, &m) {
            Ok(Isometry2(m))
        } else {
            Err(Error::NotIsometry)
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat2 {
        self.0
    }
}

impl Deref for Isometry2 {
    type Target = Mat2;

    fn deref(&self) -> &Mat2 {
        &self.0
    }
}

impl fmt::Display for Isometry2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// How an isometry acts on the discriminant group `A(L) = L*/L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiscAction {
    /// Identity on `A(L)`.
    Plus,
    /// Negation on `A(L)`.
    Minus,
    Other,
}

impl DiscAction {
    pub fn epsilon(self) -> Option<i32> {
        match self {
            DiscAction::Plus => Some(1),
            DiscAction::Minus => Some(-1),
            DiscAction::Other => None,
        }
    }
}

/// True iff `(M − ε·I)·Q⁻¹` is integral, i.e. `M` acts as `ε·id` on `A(L)`.
pub fn disc_acts_as(lattice: &Rank2Lattice, m: &Mat2, epsilon: i32) -> Result<bool> {
    if !is_isometry(lattice, m) {
        return Err(Error::NotIsometry);
    }
    let shifted = Mat2::new(
        &m.alpha - epsilon,
        m.beta.clone(),
        m.gamma.clone(),
        &m.delta - epsilon,
    );
    // Q⁻¹ = adj(Q) / det(Q) and det(Q) = −d.
    let product = &shifted * &lattice.gram().adjugate();
    let d = BigInt::from(lattice.d());
    Ok(product.rows().iter().flatten().all(|e| e.is_multiple_of(&d)))
}

/// `Plus` if `(M − I)Q⁻¹` is integral, else `Minus` if `(M + I)Q⁻¹` is,
/// else `Other`.
pub fn disc_action(lattice: &Rank2Lattice, m: &Mat2) -> Result<DiscAction> {
    if disc_acts_as(lattice, m, 1)? {
        Ok(DiscAction::Plus)
    } else if disc_acts_as(lattice, m, -1)? {
        Ok(DiscAction::Minus)
    } else {
        Ok(DiscAction::Other)
    }
}

/// Smith normal form `U·A·V = diag(d1, d2)` of a 2×2 integer matrix, with
/// `d1 | d2` and both non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith2 {
    pub diag: [i64; 2],
    pub left: [[i64; 2]; 2],
    pub right: [[i64; 2]; 2],
}

pub fn smith_2x2(m: [[i64; 2]; 2]) -> Smith2 {
    let mut a = m.map(|r| r.map(i128::from));
    let mut u = [[1i128, 0], [0, 1]];
    let mut v = [[1i128, 0], [0, 1]];

    fn swap_rows(x: &mut [[i128; 2]; 2]) {
        x.swap(0, 1);
    }
    fn swap_cols(x: &mut [[i128; 2]; 2]) {
        for r in x.iter_mut() {
            r.swap(0, 1);
        }
    }

    loop {
        let Some((pi, pj)) = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        if pi == 1 {
            swap_rows(&mut a);
            swap_rows(&mut u);
        }
        if pj == 1 {
            swap_cols(&mut a);
            swap_cols(&mut v);
        }
        let p = a[0][0];
        let q = a[1][0] / p;
        for j in 0..2 {
            a[1][j] -= q * a[0][j];
            u[1][j] -= q * u[0][j];
        }
        let q = a[0][1] / p;
        for i in 0..2 {
            a[i][1] -= q * a[i][0];
            v[i][1] -= q * v[i][0];
        }
        if a[1][0] != 0 || a[0][1] != 0 {
            continue;
        }
        if a[1][1] % p != 0 {
            // Bring d2's residue into the first row and reduce again.
            for j in 0..2 {
                a[0][j] += a[1][j];
                u[0][j] += u[1][j];
            }
            continue;
        }
        break;
    }
    for i in 0..2 {
        if a[i][i] < 0 {
            for j in 0..2 {
                a[i][j] = -a[i][j];
                u[i][j] = -u[i][j];
            }
        }
    }
    let narrow = |x: [[i128; 2]; 2]| x.map(|r| r.map(|e| e as i64));
    Smith2 {
        diag: [a[0][0] as i64, a[1][1] as i64],
        left: narrow(u),
        right: narrow(v),
    }
}

/// Invariant factors `(d1, d2)` of `A(L) ≅ ℤ/d1 × ℤ/d2`.
pub fn disc_group_snf(lattice: &Rank2Lattice) -> (i64, i64) {
    let (a, b, c) = (lattice.a(), lattice.b(), lattice.c());
    let s = smith_2x2([[2 * a, b], [b, 2 * c]]);
    (s.diag[0], s.diag[1])
}

/// An endomorphism of `ℤ/d1 × ℤ/d2`; row `i` is reduced modulo `moduli[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscMap {
    pub moduli: [i64; 2],
    pub matrix: [[i64; 2]; 2],
}

impl DiscMap {
    fn reduce(moduli: [i64; 2], raw: [[BigInt; 2]; 2]) -> DiscMap {
        let mut matrix = [[0i64; 2]; 2];
        for i in 0..2 {
            let n = BigInt::from(moduli[i]);
            for j in 0..2 {
                matrix[i][j] = raw[i][j].mod_floor(&n).to_i64().expect("reduced");
            }
        }
        DiscMap { moduli, matrix }
    }

    fn matches_scalar(&self, s: i64) -> bool {
        (0..2).all(|i| {
            (0..2).all(|j| {
                let target = if i == j { s } else { 0 };
                (self.matrix[i][j] - target).rem_euclid(self.moduli[i]) == 0
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.matches_scalar(1)
    }

    pub fn is_negation(&self) -> bool {
        self.matches_scalar(-1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiscMap) -> DiscMap {
        let raw = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..2)
                    .map(|k| BigInt::from(self.matrix[i][k]) * other.matrix[k][j])
                    .sum::<BigInt>()
            })
        });
        DiscMap::reduce(self.moduli, raw)
    }

    /// Multiplicative order; finite because the map is an automorphism of a
    /// finite group.
    pub fn order(&self) -> u64 {
        let mut power = self.clone();
        let mut n = 1;
        while !power.is_identity() {
            power = power.compose(self);
            n += 1;
        }
        n
    }
}

/// The automorphism of `A(L)` induced by an isometry, in Smith coordinates.
///
/// `A(L)` is identified with `ℤ²/Qℤ²` through `x ↦ Qx`; there the isometry
/// acts by `M⁻ᵀ`, and `U` from `U·Q·V = D` carries it onto `ℤ/d1 × ℤ/d2`.
pub fn disc_action_oracle(lattice: &Rank2Lattice, m: &Mat2) -> Result<DiscMap> {
    if !is_isometry(lattice, m) {
        return Err(Error::NotIsometry);
    }
    let (a, b, c) = (lattice.a(), lattice.b(), lattice.c());
    let snf = smith_2x2([[2 * a, b], [b, 2 * c]]);
    let u = Mat2::new(
        snf.left[0][0],
        snf.left[0][1],
        snf.left[1][0],
        snf.left[1][1],
    );
    let u_inv = u.inverse().expect("unimodular");
    let dual = m.inverse().ok_or(Error::NotIsometry)?.transpose();
    let t = &(&u * &dual) * &u_inv;
    let raw = [
        [t.alpha.clone(), t.beta.clone()],
        [t.gamma.clone(), t.delta.clone()],
    ];
    Ok(DiscMap::reduce(snf.diag, raw))
}

/// True iff `M` maps the positive-cone component containing `(1, 0)` to itself.
///
/// Two vectors of positive square lie in the same component exactly when their
/// pairing is positive, and `(1, 0)` has square `2a > 0`.
pub fn preserves_positive_cone(lattice: &Rank2Lattice, m: &Mat2) -> Result<bool> {
    if !is_isometry(lattice, m) {
        return Err(Error::NotIsometry);
    }
    let pairing = &m.alpha * (2 * lattice.a()) + &m.gamma * lattice.b();
    debug_assert!(!pairing.is_zero());
    Ok(pairing.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(a: i64, b: i64, c: i64) -> Rank2Lattice {
        make_lattice(a, b, c).unwrap()
    }

    #[test]
    fn builder_examples() {
        let l = lat(2, 6, 2);
        assert_eq!(l.d(), 20);
        assert!(!l.is_square_discriminant());
        assert_eq!(lat(1, 4, 1).d(), 12);
        assert_eq!(make_lattice(2, 4, 2), Err(Error::Degenerate(0)));
        assert_eq!(make_lattice(1, 1, 1), Err(Error::Degenerate(-3)));
    }

    #[test]
    fn builder_normalizes_to_positive_a() {
        let l = lat(-1, 1, 2);
        assert_eq!((l.a(), l.b(), l.c()), (2, 1, -1));
        assert_eq!(l.basis(), &Mat2::swap());

        // Both diagonal entries negative: needs a genuine basis change.
        let l = lat(-1, 7, -9);
        assert!(l.a() > 0);
        assert_eq!(l.d(), 13);
        let (x, y) = l.to_input_vector(&BigInt::from(1), &BigInt::from(0));
        let q = -x.clone() * &x + BigInt::from(7) * &x * &y - BigInt::from(9) * &y * &y;
        assert_eq!(q, BigInt::from(l.a()));
        assert!(is_isometry(&l, &l.from_input_matrix(&Mat2::identity())));
    }

    #[test]
    fn isometry_examples() {
        let l = lat(1, 4, 1);
        assert!(is_isometry(&l, &Mat2::new(4, 1, -1, 0)));
        assert!(is_isometry(&l, &Mat2::identity()));
        assert!(!is_isometry(&l, &Mat2::new(1, 1, 0, 1)));
        assert!(Isometry2::new(&l, Mat2::new(1, 1, 0, 1)).is_err());
    }

    #[test]
    fn disc_action_examples() {
        let l = lat(2, 6, 2);
        assert_eq!(disc_action(&l, &Mat2::identity()).unwrap(), DiscAction::Plus);
        let h3 = Mat2::new(21, 8, -8, -3);
        assert_eq!(disc_action(&l, &h3).unwrap(), DiscAction::Minus);
        let l8 = lat(2, 8, 2);
        assert_eq!(
            disc_action(&l8, &Mat2::new(4, 1, -1, 0)).unwrap(),
            DiscAction::Other
        );
        assert_eq!(
            disc_action(&l8, &Mat2::new(1, 1, 0, 1)),
            Err(Error::NotIsometry)
        );
    }

    #[test]
    fn snf_examples() {
        assert_eq!(disc_group_snf(&lat(1, 4, 1)), (2, 6));
        assert_eq!(disc_group_snf(&lat(2, 6, 2)), (2, 10));
        assert_eq!(disc_group_snf(&lat(1, 0, -1)), (2, 2));
    }

    #[test]
    fn snf_transforms_are_consistent() {
        for m in [[[2, 4], [4, 2]], [[4, 6], [6, 4]], [[6, 5], [5, -2]], [[0, 3], [3, 0]]] {
            let s = smith_2x2(m);
            let to = |x: [[i64; 2]; 2]| Mat2::new(x[0][0], x[0][1], x[1][0], x[1][1]);
            let prod = &(&to(s.left) * &to(m)) * &to(s.right);
            assert_eq!(prod, Mat2::new(s.diag[0], 0, 0, s.diag[1]));
            assert_eq!(s.diag[1] % s.diag[0], 0);
        }
    }

    #[test]
    fn oracle_examples() {
        let l = lat(2, 6, 2);
        assert!(disc_action_oracle(&l, &Mat2::identity()).unwrap().is_identity());
        assert!(disc_action_oracle(&l, &Mat2::new(21, 8, -8, -3))
            .unwrap()
            .is_negation());
        let l = lat(1, 4, 1);
        let sigma = Mat2::new(1, 4, 0, -1);
        assert!(disc_action_oracle(&l, &sigma).unwrap().is_negation());
        assert_eq!(disc_action(&l, &sigma).unwrap(), DiscAction::Minus);
        // h has order 2 on A(L) for (1,4,1): h² acts trivially.
        assert_eq!(
            disc_action_oracle(&l, &Mat2::new(4, 1, -1, 0)).unwrap().order(),
            2
        );
    }

    #[test]
    fn cone_examples() {
        let l = lat(1, 4, 1);
        assert!(!preserves_positive_cone(&l, &-Mat2::identity()).unwrap());
        assert!(preserves_positive_cone(&l, &Mat2::new(4, 1, -1, 0)).unwrap());
        assert!(preserves_positive_cone(&l, &Mat2::new(1, 4, 0, -1)).unwrap());
    }
}
