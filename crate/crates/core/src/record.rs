//! Machine-readable records. Integers are decimal strings so that arbitrarily
//! large entries survive any JSON reader; matrices are row-major
//! `[[α, β], [γ, δ]]` in the basis of the Gram matrix the caller supplied.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::aut::{
    classify, entropy_data, lattice_from_quartic, AutClassification, EntropyData, FiniteWitness,
    GeneratorReport, QuarticLattice,
};
use crate::divisors::DivisorClass;
use crate::error::Error;
use crate::lattice::{make_lattice, Rank2Lattice};
use crate::matrix::Mat2;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CAVEAT_RELATIVE_COMPLETENESS: &str = "theorem2-relative completeness";
pub const CAVEAT_CONJUGACY_CLASSES: &str = "involutions listed up to conjugation by the generator";
pub const CAVEAT_ANTI_SYMPLECTIC: &str =
    "anti-symplectic generator: symplectic_entropy is the entropy of its square";
pub const CAVEAT_FINITE_DEGENERATE: &str = "degenerate lattice: automorphism group is finite";

/// An integer serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(n: BigInt) -> Self {
        Int(n)
    }
}

impl From<&BigInt> for Int {
    fn from(n: &BigInt) -> Self {
        Int(n.clone())
    }
}

impl From<i64> for Int {
    fn from(n: i64) -> Self {
        Int(n.into())
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Int, E> {
                BigInt::from_str(s.trim())
                    .map(Int)
                    .map_err(|_| E::custom(format!("not an integer: {s:?}")))
            }

            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Int, E> {
                Ok(Int(n.into()))
            }

            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Int, E> {
                Ok(Int(n.into()))
            }
        }

        deserializer.deserialize_any(IntVisitor)
    }
}

pub type MatrixRecord = [[Int; 2]; 2];

pub fn matrix_record(m: &Mat2) -> MatrixRecord {
    let [[a, b], [c, d]] = m.rows();
    [[a.into(), b.into()], [c.into(), d.into()]]
}

pub fn matrix_from_record(r: &MatrixRecord) -> Mat2 {
    Mat2::new(
        r[0][0].0.clone(),
        r[0][1].0.clone(),
        r[1][0].0.clone(),
        r[1][1].0.clone(),
    )
}

/// One query: a Gram matrix `(a, b, c)` or a quartic curve `(deg, genus)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<Int>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Gram(i64, i64, i64),
    Quartic(i64, i64),
}

impl LatticeRequest {
    pub fn gram(a: i64, b: i64, c: i64) -> Self {
        LatticeRequest {
            a: Some(a.into()),
            b: Some(b.into()),
            c: Some(c.into()),
            ..Default::default()
        }
    }

    pub fn quartic(deg: i64, genus: i64) -> Self {
        LatticeRequest {
            deg: Some(deg.into()),
            genus: Some(genus.into()),
            ..Default::default()
        }
    }

    /// Checks that exactly one of `(a, b, c)` and `(deg, genus)` is complete
    /// and that every value fits in 64 bits.
    pub fn query(&self) -> Result<Query, String> {
        fn small(name: &str, v: &Int) -> Result<i64, String> {
            i64::try_from(&v.0).map_err(|_| format!("field {name}: {} does not fit in 64 bits", v.0))
        }
        let gram = [&self.a, &self.b, &self.c];
        let quartic = [&self.deg, &self.genus];
        let gram_any = gram.iter().any(|v| v.is_some());
        let quartic_any = quartic.iter().any(|v| v.is_some());
        match (gram_any, quartic_any) {
            (true, true) => Err("give either a, b, c or deg, genus, not both".into()),
            (false, false) => Err("missing fields: expected a, b, c or deg, genus".into()),
            (true, false) => {
                let mut vals = [0i64; 3];
                for (slot, (name, v)) in vals.iter_mut().zip(["a", "b", "c"].iter().zip(gram)) {
                    let v = v.as_ref().ok_or_else(|| format!("missing field {name}"))?;
                    *slot = small(name, v)?;
                }
                Ok(Query::Gram(vals[0], vals[1], vals[2]))
            }
            (false, true) => {
                let deg = self.deg.as_ref().ok_or("missing field deg")?;
                let genus = self.genus.as_ref().ok_or("missing field genus")?;
                Ok(Query::Quartic(small("deg", deg)?, small("genus", genus)?))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Finite,
    Cyclic,
    Dihedral,
    Degenerate,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Finite => "finite",
            Variant::Cyclic => "cyclic",
            Variant::Dihedral => "dihedral",
            Variant::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    ZeroClass,
    MinusTwoClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub kind: WitnessKind,
    pub class: [Int; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    pub value: f64,
    /// `value` rounded to the requested number of significant digits.
    pub text: String,
    pub trace: Int,
    pub det: Int,
    pub char_discriminant: Int,
}

impl EntropyRecord {
    pub fn new(data: &EntropyData, digits: usize) -> Self {
        EntropyRecord {
            value: data.value,
            text: format_significant(data.value, digits),
            trace: (&data.trace).into(),
            det: (&data.det).into(),
            char_discriminant: (&data.char_discriminant).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}

impl ErrorRecord {
    pub fn from_error(e: &Error) -> Self {
        let kind = if e.is_domain_rejection() {
            "domain"
        } else {
            "internal"
        };
        ErrorRecord {
            kind: kind.into(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub tool_version: String,
    pub input: LatticeRequest,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<[Int; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<MatrixRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<MatrixRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<MatrixRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<MatrixRecord>,
    #[serde(default)]
    pub involutions: Vec<MatrixRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy: Option<EntropyRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic_entropy: Option<EntropyRecord>,
    #[serde(default)]
    pub caveats: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl ClassificationRecord {
    fn empty(input: LatticeRequest) -> Self {
        ClassificationRecord {
            tool_version: TOOL_VERSION.into(),
            input,
            lattice: None,
            d: None,
            square: None,
            variant: None,
            witness: None,
            h: None,
            k: None,
            epsilon: None,
            generator: None,
            sigma: None,
            tau: None,
            involutions: Vec::new(),
            entropy: None,
            symplectic_entropy: None,
            caveats: Vec::new(),
            error: None,
        }
    }

    pub fn failure(input: LatticeRequest, error: ErrorRecord) -> Self {
        ClassificationRecord {
            error: Some(error),
            ..Self::empty(input)
        }
    }

    /// The record for a lattice the library rejected or classified.
    pub fn from_outcome(
        input: LatticeRequest,
        gram: (i64, i64, i64),
        outcome: &Result<(Rank2Lattice, AutClassification), Error>,
        digits: usize,
    ) -> Self {
        let mut rec = Self::empty(input);
        let (a, b, c) = gram;
        rec.lattice = Some([a.into(), b.into(), c.into()]);
        let d = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
        rec.d = Some(Int(d.into()));
        match outcome {
            Err(e) => {
                if matches!(e, Error::Degenerate(_)) {
                    rec.variant = Some(Variant::Degenerate);
                }
                rec.error = Some(ErrorRecord::from_error(e));
            }
            Ok((lattice, class)) => rec.fill(lattice, class, digits),
        }
        rec
    }

    fn fill(&mut self, lattice: &Rank2Lattice, class: &AutClassification, digits: usize) {
        let to_input = |m: &Mat2| matrix_record(&lattice.to_input_matrix(m));
        self.square = Some(lattice.is_square_discriminant());
        match class {
            AutClassification::Finite { witness } => {
                self.variant = Some(Variant::Finite);
                let (kind, cls) = match witness {
                    FiniteWitness::ZeroClass(cls) => (WitnessKind::ZeroClass, cls),
                    FiniteWitness::MinusTwoClass(cls) => (WitnessKind::MinusTwoClass, cls),
                };
                let (x, y) = lattice.to_input_vector(&cls.x, &cls.y);
                self.witness = Some(WitnessRecord {
                    kind,
                    class: [x.into(), y.into()],
                });
            }
            AutClassification::InfiniteCyclic { report } => {
                self.variant = Some(Variant::Cyclic);
                self.fill_report(report, &to_input, digits);
            }
            AutClassification::InfiniteDihedral {
                report,
                pair,
                involutions,
            } => {
                self.variant = Some(Variant::Dihedral);
                self.fill_report(report, &to_input, digits);
                self.sigma = Some(to_input(pair.sigma.matrix()));
                self.tau = Some(to_input(pair.tau.matrix()));
                self.involutions = involutions.iter().map(|m| to_input(m.matrix())).collect();
                self.caveats.push(CAVEAT_CONJUGACY_CLASSES.into());
            }
        }
    }

    fn fill_report(
        &mut self,
        report: &GeneratorReport,
        to_input: &dyn Fn(&Mat2) -> MatrixRecord,
        digits: usize,
    ) {
        let g = report.generator.matrix();
        self.h = Some(to_input(report.h.matrix()));
        self.k = Some(report.k);
        self.epsilon = Some(report.epsilon);
        self.generator = Some(to_input(g));
        self.entropy = Some(EntropyRecord::new(&entropy_data(g), digits));
        if report.epsilon == -1 {
            self.symplectic_entropy = Some(EntropyRecord::new(&entropy_data(&(g * g)), digits));
            self.caveats.push(CAVEAT_ANTI_SYMPLECTIC.into());
        }
        self.caveats.push(CAVEAT_RELATIVE_COMPLETENESS.into());
    }

    /// Exit status for a single-query command: 0, 2 for rejected input, 1 for
    /// internal failures.
    pub fn exit_code(&self) -> i32 {
        match &self.error {
            None => 0,
            Some(e) if e.kind == "domain" => 2,
            Some(_) => 1,
        }
    }
}

/// Classifies one request; never panics on bad input.
pub fn classify_request(request: &LatticeRequest, digits: usize) -> ClassificationRecord {
    let query = match request.query() {
        Ok(q) => q,
        Err(msg) => {
            return ClassificationRecord::failure(
                request.clone(),
                ErrorRecord {
                    kind: "parse".into(),
                    message: msg,
                },
            )
        }
    };
    match query {
        Query::Gram(a, b, c) => {
            let outcome = make_lattice(a, b, c).and_then(|l| classify(&l).map(|cl| (l, cl)));
            ClassificationRecord::from_outcome(request.clone(), (a, b, c), &outcome, digits)
        }
        Query::Quartic(deg, genus) => match lattice_from_quartic(deg, genus) {
            Err(e) => ClassificationRecord::failure(request.clone(), ErrorRecord::from_error(&e)),
            Ok(QuarticLattice::FiniteDegenerate { .. }) => {
                let mut rec = ClassificationRecord::from_outcome(
                    request.clone(),
                    (2, deg, genus - 1),
                    &Err(Error::Degenerate(0)),
                    digits,
                );
                rec.error = None;
                rec.caveats.push(CAVEAT_FINITE_DEGENERATE.into());
                rec
            }
            Ok(QuarticLattice::Lattice(lattice)) => {
                let outcome = classify(&lattice).map(|cl| (lattice.clone(), cl));
                ClassificationRecord::from_outcome(request.clone(), lattice.input(), &outcome, digits)
            }
        },
    }
}

/// Record for `pell d --norm m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellRecord {
    pub tool_version: String,
    pub d: Int,
    pub norm: Int,
    pub unit: [Int; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fundamental: Option<[Int; 2]>,
    pub representatives: Vec<[Int; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solutions_below: Option<Vec<[Int; 2]>>,
}

/// Record for one row of an orbit table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub n: usize,
    pub x: Int,
    pub y: Int,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

pub fn class_record(c: &DivisorClass) -> [Int; 2] {
    [(&c.x).into(), (&c.y).into()]
}

/// `x` with `digits` significant digits in positional notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1) as i32;
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    if !(-17..17).contains(&magnitude) {
        return format!("{:.*e}", (digits - 1) as usize, x);
    }
    format!("{x:.decimals$}")
}
