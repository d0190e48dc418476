//! JSON encodings of every structure.
//!
//! Points are carrier indices. Sets are ascending index lists, relations are
//! lexicographically sorted pair lists, and distances are `"p/q"` strings.
//! Decoding goes through plain data types first, so that malformed input is
//! reported with the path of the offending field.

use std::fmt;

use num_rational::Ratio;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use ultrauniform_core::oracle::{Counterexample, Structure, SweepReport};
use ultrauniform_core::{
    Chain, Cover, CoverBasis, DiagonalBasis, Distance, FiniteTopology, Partition, PointSet,
    Pseudometric, PseudometricSystem, Relation, ValidationReport, Witness,
};

use crate::error::CliError;

/// An exact rational written as `"p/q"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational(pub Distance);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as \"p/q\", \"p\" or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational(Ratio::from_integer(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        i64::try_from(v)
            .map(|v| Rational(Ratio::from_integer(v)))
            .map_err(|_| E::custom(format!("integer {v} is too large")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        parse_rational(v).map(Rational).map_err(E::custom)
    }
}

pub fn parse_rational(text: &str) -> Result<Distance, String> {
    let int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| format!("{text:?} is not a rational"))
    };
    match text.split_once('/') {
        None => Ok(Ratio::from_integer(int(text)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q == 0 {
                return Err(format!("{text:?} has a zero denominator"));
            }
            Ok(Ratio::new(int(p)?, q))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationJson {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PartitionJson {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagonalBasisJson {
    pub n: usize,
    pub entourages: Vec<RelationJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoverBasisJson {
    pub n: usize,
    pub covers: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PseudometricJson {
    pub n: usize,
    pub dist: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PseudometricSystemJson {
    pub n: usize,
    pub metrics: Vec<PseudometricJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChainJson {
    pub n: usize,
    pub steps: Vec<RelationJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TopologyJson {
    pub n: usize,
    pub opens: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ViolationJson {
    pub axiom: String,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ValidationReportJson {
    pub valid: bool,
    pub violations: Vec<ViolationJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CounterexampleJson {
    pub structure: Value,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SweepReportJson {
    pub theorem: String,
    pub n: usize,
    pub checked: usize,
    pub satisfying: usize,
    pub discrepancies: usize,
    pub first_counterexample: Option<CounterexampleJson>,
    pub seed: Option<u64>,
    pub ms: u64,
}

fn points(set: PointSet) -> Vec<usize> {
    set.iter().collect()
}

impl From<&Relation> for RelationJson {
    fn from(r: &Relation) -> Self {
        RelationJson {
            n: r.n(),
            pairs: r.pairs().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl From<&Partition> for PartitionJson {
    fn from(p: &Partition) -> Self {
        PartitionJson {
            n: p.n(),
            blocks: p.blocks().iter().copied().map(points).collect(),
        }
    }
}

impl From<&DiagonalBasis> for DiagonalBasisJson {
    fn from(b: &DiagonalBasis) -> Self {
        DiagonalBasisJson {
            n: b.n(),
            entourages: b.entourages().iter().map(RelationJson::from).collect(),
        }
    }
}

fn cover_json(c: &Cover) -> Vec<Vec<usize>> {
    c.sets().iter().copied().map(points).collect()
}

impl From<&CoverBasis> for CoverBasisJson {
    fn from(cb: &CoverBasis) -> Self {
        CoverBasisJson {
            n: cb.n(),
            covers: cb.covers().iter().map(cover_json).collect(),
        }
    }
}

impl From<&Pseudometric> for PseudometricJson {
    fn from(d: &Pseudometric) -> Self {
        let n = d.n();
        PseudometricJson {
            n,
            dist: (0..n)
                .map(|x| (0..n).map(|y| Rational(d.get(x, y))).collect())
                .collect(),
        }
    }
}

impl From<&PseudometricSystem> for PseudometricSystemJson {
    fn from(s: &PseudometricSystem) -> Self {
        PseudometricSystemJson {
            n: s.n(),
            metrics: s.metrics().iter().map(PseudometricJson::from).collect(),
        }
    }
}

impl From<&Chain> for ChainJson {
    fn from(c: &Chain) -> Self {
        ChainJson {
            n: c.n(),
            steps: c.steps().iter().map(RelationJson::from).collect(),
        }
    }
}

impl From<&FiniteTopology> for TopologyJson {
    fn from(t: &FiniteTopology) -> Self {
        TopologyJson {
            n: t.n(),
            opens: t.opens().iter().copied().map(points).collect(),
        }
    }
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("plain data serializes")
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Entourage { index, relation } => serde_json::json!({
            "entourage": index,
            "relation": RelationJson::from(relation),
        }),
        Witness::Cover { index } => serde_json::json!({ "cover": index }),
        Witness::Set(s) => serde_json::json!({ "set": points(*s) }),
        Witness::Pair { left, right } => serde_json::json!({
            "left": points(*left),
            "right": points(*right),
        }),
    }
}

impl From<&ValidationReport> for ValidationReportJson {
    fn from(r: &ValidationReport) -> Self {
        ValidationReportJson {
            valid: r.is_valid(),
            violations: r
                .violations
                .iter()
                .map(|v| ViolationJson {
                    axiom: v.axiom.to_string(),
                    witness: witness_json(&v.witness),
                })
                .collect(),
        }
    }
}

pub fn structure_json(s: &Structure) -> Value {
    match s {
        Structure::Topology(t) => to_value(&TopologyJson::from(t)),
        Structure::Partition(p) => to_value(&PartitionJson::from(p)),
        Structure::Basis(b) => to_value(&DiagonalBasisJson::from(b)),
        Structure::CoverBasis(cb) => to_value(&CoverBasisJson::from(cb)),
    }
}

impl From<&Counterexample> for CounterexampleJson {
    fn from(c: &Counterexample) -> Self {
        CounterexampleJson {
            structure: structure_json(&c.structure),
            reason: c.reason.clone(),
        }
    }
}

impl From<&SweepReport> for SweepReportJson {
    fn from(r: &SweepReport) -> Self {
        SweepReportJson {
            theorem: r.theorem.as_str().to_string(),
            n: r.n,
            checked: r.checked,
            satisfying: r.satisfying,
            discrepancies: r.discrepancies,
            first_counterexample: r.first_counterexample.as_ref().map(CounterexampleJson::from),
            seed: r.seed,
            ms: r.ms,
        }
    }
}

// Decoding. `path` is the location of the value being decoded, used as the
// field name in diagnostics.

fn input(path: &str, message: impl Into<String>) -> CliError {
    CliError::Input {
        field: path.to_string(),
        message: message.into(),
    }
}

fn join(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

fn check_carrier(path: &str, n: usize) -> Result<(), CliError> {
    if (1..=ultrauniform_core::MAX_POINTS).contains(&n) {
        Ok(())
    } else {
        Err(input(
            &join(path, "n"),
            format!("carrier size {n} is outside 1..={}", ultrauniform_core::MAX_POINTS),
        ))
    }
}

fn check_nested(path: &str, outer: usize, inner: usize) -> Result<(), CliError> {
    if outer == inner {
        Ok(())
    } else {
        Err(input(
            &join(path, "n"),
            format!("expected {outer} to match the enclosing carrier, found {inner}"),
        ))
    }
}

fn point(path: &str, n: usize, x: usize) -> Result<usize, CliError> {
    if x < n {
        Ok(x)
    } else {
        Err(input(path, format!("point {x} is outside 0..{n}")))
    }
}

fn set_from(path: &str, n: usize, list: &[usize]) -> Result<PointSet, CliError> {
    let mut set = PointSet::EMPTY;
    for (i, &x) in list.iter().enumerate() {
        set.insert(point(&format!("{path}[{i}]"), n, x)?);
    }
    Ok(set)
}

impl RelationJson {
    pub fn decode(&self, path: &str) -> Result<Relation, CliError> {
        check_carrier(path, self.n)?;
        let mut r = Relation::empty(self.n);
        for (i, [x, y]) in self.pairs.iter().enumerate() {
            let at = format!("{}[{i}]", join(path, "pairs"));
            r.insert(point(&at, self.n, *x)?, point(&at, self.n, *y)?);
        }
        Ok(r)
    }
}

impl PartitionJson {
    pub fn decode(&self, path: &str) -> Result<Partition, CliError> {
        check_carrier(path, self.n)?;
        let at = join(path, "blocks");
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| set_from(&format!("{at}[{i}]"), self.n, b))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::from_blocks(self.n, blocks).map_err(|e| input(&at, e.to_string()))
    }
}

impl DiagonalBasisJson {
    pub fn decode(&self, path: &str) -> Result<DiagonalBasis, CliError> {
        check_carrier(path, self.n)?;
        let at = join(path, "entourages");
        let mut list = Vec::with_capacity(self.entourages.len());
        for (i, r) in self.entourages.iter().enumerate() {
            let here = format!("{at}[{i}]");
            check_nested(&here, self.n, r.n)?;
            list.push(r.decode(&here)?);
        }
        DiagonalBasis::new(self.n, list).map_err(|e| input(&at, e.to_string()))
    }
}

impl CoverBasisJson {
    pub fn decode(&self, path: &str) -> Result<CoverBasis, CliError> {
        check_carrier(path, self.n)?;
        let at = join(path, "covers");
        let mut covers = Vec::with_capacity(self.covers.len());
        for (i, c) in self.covers.iter().enumerate() {
            let here = format!("{at}[{i}]");
            let sets = c
                .iter()
                .enumerate()
                .map(|(j, s)| set_from(&format!("{here}[{j}]"), self.n, s))
                .collect::<Result<Vec<_>, _>>()?;
            covers.push(Cover::new(self.n, sets).map_err(|e| input(&here, e.to_string()))?);
        }
        CoverBasis::new(self.n, covers).map_err(|e| input(&at, e.to_string()))
    }
}

impl PseudometricJson {
    pub fn decode(&self, path: &str) -> Result<Pseudometric, CliError> {
        check_carrier(path, self.n)?;
        let at = join(path, "dist");
        if self.dist.len() != self.n {
            return Err(input(&at, format!("expected {} rows, found {}", self.n, self.dist.len())));
        }
        let mut table = Vec::with_capacity(self.n * self.n);
        for (i, row) in self.dist.iter().enumerate() {
            if row.len() != self.n {
                return Err(input(
                    &format!("{at}[{i}]"),
                    format!("expected {} entries, found {}", self.n, row.len()),
                ));
            }
            table.extend(row.iter().map(|r| r.0));
        }
        Pseudometric::new(self.n, table).map_err(|e| input(&at, e.to_string()))
    }
}

impl PseudometricSystemJson {
    pub fn decode(&self, path: &str) -> Result<PseudometricSystem, CliError> {
        check_carrier(path, self.n)?;
        let at = join(path, "metrics");
        let mut metrics = Vec::with_capacity(self.metrics.len());
        for (i, d) in self.metrics.iter().enumerate() {
            let here = format!("{at}[{i}]");
            check_nested(&here, self.n, d.n)?;
            metrics.push(d.decode(&here)?);
        }
        PseudometricSystem::new(self.n, metrics).map_err(|e| input(&at, e.to_string()))
    }
}

impl ChainJson {
    pub fn decode(&self, path: &str) -> Result<Chain, CliError> {
        check_carrier(path, self.n)?;
        let at = join(path, "steps");
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, r) in self.steps.iter().enumerate() {
            let here = format!("{at}[{i}]");
            check_nested(&here, self.n, r.n)?;
            steps.push(r.decode(&here)?);
        }
        Chain::new(self.n, steps).map_err(|e| input(&at, e.to_string()))
    }
}

impl TopologyJson {
    pub fn decode(&self, path: &str) -> Result<FiniteTopology, CliError> {
        check_carrier(path, self.n)?;
        let at = join(path, "opens");
        let opens = self
            .opens
            .iter()
            .enumerate()
            .map(|(i, o)| set_from(&format!("{at}[{i}]"), self.n, o))
            .collect::<Result<Vec<_>, _>>()?;
        FiniteTopology::new(self.n, opens).map_err(|e| input(&at, e.to_string()))
    }
}

/// Any structure the command line reads, recognized by its distinguishing
/// field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Diagonal(DiagonalBasis),
    Cover(CoverBasis),
    System(PseudometricSystem),
    Metric(Pseudometric),
    Chain(Chain),
    Topology(FiniteTopology),
    Partition(Partition),
    Relation(Relation),
}

const KEYS: [&str; 8] = ["entourages", "covers", "metrics", "dist", "steps", "opens", "blocks", "pairs"];

fn typed<T: for<'de> Deserialize<'de>>(value: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "input".to_string() } else { path };
        input(&field, e.into_inner().to_string())
    })
}

impl Document {
    pub fn from_json(text: &str) -> Result<Document, CliError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let value: Value = serde_path_to_error::deserialize(&mut de)
            .map_err(|e| input("input", format!("malformed JSON: {}", e.into_inner())))?;
        de.end()
            .map_err(|e| input("input", format!("malformed JSON: {e}")))?;
        Document::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Document, CliError> {
        let object = value
            .as_object()
            .ok_or_else(|| input("input", "expected a JSON object"))?;
        let key = KEYS
            .iter()
            .find(|k| object.contains_key(**k))
            .ok_or_else(|| input("input", format!("expected one of the fields {}", KEYS.join(", "))))?;
        Ok(match *key {
            "entourages" => Document::Diagonal(typed::<DiagonalBasisJson>(value)?.decode("")?),
            "covers" => Document::Cover(typed::<CoverBasisJson>(value)?.decode("")?),
            "metrics" => Document::System(typed::<PseudometricSystemJson>(value)?.decode("")?),
            "dist" => Document::Metric(typed::<PseudometricJson>(value)?.decode("")?),
            "steps" => Document::Chain(typed::<ChainJson>(value)?.decode("")?),
            "opens" => Document::Topology(typed::<TopologyJson>(value)?.decode("")?),
            "blocks" => Document::Partition(typed::<PartitionJson>(value)?.decode("")?),
            _ => Document::Relation(typed::<RelationJson>(value)?.decode("")?),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Diagonal(_) => "diagonal basis",
            Document::Cover(_) => "cover basis",
            Document::System(_) => "pseudo-metric system",
            Document::Metric(_) => "pseudo-metric",
            Document::Chain(_) => "chain",
            Document::Topology(_) => "topology",
            Document::Partition(_) => "partition",
            Document::Relation(_) => "relation",
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::Diagonal(b) => to_value(&DiagonalBasisJson::from(b)),
            Document::Cover(cb) => to_value(&CoverBasisJson::from(cb)),
            Document::System(s) => to_value(&PseudometricSystemJson::from(s)),
            Document::Metric(d) => to_value(&PseudometricJson::from(d)),
            Document::Chain(c) => to_value(&ChainJson::from(c)),
            Document::Topology(t) => to_value(&TopologyJson::from(t)),
            Document::Partition(p) => to_value(&PartitionJson::from(p)),
            Document::Relation(r) => to_value(&RelationJson::from(r)),
        }
    }
}
