use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{KlrError, Result};
use crate::exactla::{Field, FieldDescriptor, PrimeField, Rationals, SparseMatrix};
use crate::presentation::Letter;
use crate::root_data::{LieRank, Multicharge, WeightVector};
use crate::tableaux::ResidueSequence;

/// Parameters that fix the algebra a representation is meant for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraContext {
    pub rank: LieRank,
    pub charge: Multicharge,
}

impl AlgebraContext {
    pub fn weight(&self) -> WeightVector {
        self.charge.weight(self.rank)
    }
}

/// A finite-dimensional module given by one exact matrix per generator.
///
/// Idempotents are stored for the support only; every other `e(i)` acts as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<F: Field> {
    field: F,
    n: usize,
    dim: usize,
    labels: Vec<String>,
    idempotents: BTreeMap<ResidueSequence, SparseMatrix<F::Elem>>,
    x: Vec<SparseMatrix<F::Elem>>,
    psi: Vec<SparseMatrix<F::Elem>>,
    zero: SparseMatrix<F::Elem>,
    context: Option<AlgebraContext>,
}

impl<F: Field> Representation<F> {
    pub fn new(
        field: F,
        n: usize,
        labels: Vec<String>,
        idempotents: BTreeMap<ResidueSequence, SparseMatrix<F::Elem>>,
        x: Vec<SparseMatrix<F::Elem>>,
        psi: Vec<SparseMatrix<F::Elem>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if x.len() != n || psi.len() != n.saturating_sub(1) {
            return Err(KlrError::DimensionMismatch(format!(
                "expected {n} x-matrices and {} psi-matrices, got {} and {}",
                n.saturating_sub(1),
                x.len(),
                psi.len()
            )));
        }
        for (name, m) in idempotents
            .iter()
            .map(|(i, m)| (format!("e({i})"), m))
            .chain(x.iter().enumerate().map(|(r, m)| (format!("x{}", r + 1), m)))
            .chain(psi.iter().enumerate().map(|(r, m)| (format!("psi{}", r + 1), m)))
        {
            if m.rows() != dim || m.cols() != dim {
                return Err(KlrError::DimensionMismatch(format!("{name} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
        }
        for i in idempotents.keys() {
            if i.len() != n {
                return Err(KlrError::InvalidSupport(format!("({i}) does not have length {n}")));
            }
        }
        Ok(Representation { field, n, dim, labels, idempotents, x, psi, zero: SparseMatrix::zero(dim, dim), context: None })
    }

    /// A representation where `x` and `psi` are given and `e(i)` projects onto the basis
    /// vectors labelled by `i` in `weights`.
    pub fn with_weight_basis(
        field: F,
        n: usize,
        labels: Vec<String>,
        weights: &[ResidueSequence],
        x: Vec<SparseMatrix<F::Elem>>,
        psi: Vec<SparseMatrix<F::Elem>>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut idempotents: BTreeMap<ResidueSequence, SparseMatrix<F::Elem>> = BTreeMap::new();
        for (k, i) in weights.iter().enumerate() {
            idempotents.entry(i.clone()).or_insert_with(|| SparseMatrix::zero(dim, dim)).add_entry(&field, k, k, &field.one());
        }
        Representation::new(field, n, labels, idempotents, x, psi)
    }

    pub fn with_context(mut self, rank: LieRank, charge: Multicharge) -> Self {
        self.context = Some(AlgebraContext { rank, charge });
        self
    }

    pub fn context(&self) -> Option<&AlgebraContext> {
        self.context.as_ref()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn support(&self) -> impl Iterator<Item = &ResidueSequence> {
        self.idempotents.keys()
    }

    pub fn idempotent(&self, i: &ResidueSequence) -> &SparseMatrix<F::Elem> {
        self.idempotents.get(i).unwrap_or(&self.zero)
    }

    pub fn x(&self, r: usize) -> &SparseMatrix<F::Elem> {
        &self.x[r - 1]
    }

    pub fn psi(&self, r: usize) -> &SparseMatrix<F::Elem> {
        &self.psi[r - 1]
    }

    pub fn matrix(&self, letter: &Letter) -> Result<&SparseMatrix<F::Elem>> {
        let out_of_range = || KlrError::DimensionMismatch(format!("{letter} is not a generator for n = {}", self.n));
        match letter {
            Letter::E(i) => Ok(self.idempotent(i)),
            Letter::X(r) => self.x.get(r.wrapping_sub(1)).ok_or_else(out_of_range),
            Letter::Psi(r) => self.psi.get(r.wrapping_sub(1)).ok_or_else(out_of_range),
        }
    }

    /// Every generator matrix: idempotents of the support, then `x_r`, then `psi_r`.
    pub fn generators(&self) -> Vec<(Letter, &SparseMatrix<F::Elem>)> {
        let mut out: Vec<(Letter, &SparseMatrix<F::Elem>)> = self.idempotents.iter().map(|(i, m)| (Letter::E(i.clone()), m)).collect();
        out.extend(self.x.iter().enumerate().map(|(r, m)| (Letter::X(r + 1), m)));
        out.extend(self.psi.iter().enumerate().map(|(r, m)| (Letter::Psi(r + 1), m)));
        out
    }

    /// Block-diagonal sum; labels of the second summand are suffixed with `'`.
    pub fn direct_sum(&self, other: &Representation<F>) -> Result<Representation<F>> {
        if self.n != other.n || self.field != other.field {
            return Err(KlrError::DimensionMismatch("summands belong to different algebras".into()));
        }
        let mut idempotents = BTreeMap::new();
        for i in self.idempotents.keys().chain(other.idempotents.keys()) {
            idempotents.insert(i.clone(), self.idempotent(i).direct_sum(other.idempotent(i)));
        }
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a.direct_sum(b)).collect();
        let psi = self.psi.iter().zip(&other.psi).map(|(a, b)| a.direct_sum(b)).collect();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}'")));
        let mut rep = Representation::new(self.field.clone(), self.n, labels, idempotents, x, psi)?;
        rep.context = self.context.clone();
        Ok(rep)
    }

    /// Canonical JSON: object keys sorted, entries as canonical field-element strings.
    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let dense = |m: &SparseMatrix<F::Elem>| -> Value {
            Value::Array(m.to_dense(f).iter().map(|row| Value::Array(row.iter().map(|e| Value::String(f.format(e))).collect())).collect())
        };
        let mut matrices = Map::new();
        for (letter, m) in self.generators() {
            matrices.insert(letter.to_string(), dense(m));
        }
        let mut obj = json!({
            "field": f.descriptor().to_string(),
            "n": self.n,
            "dimension": self.dim,
            "labels": self.labels,
            "support": self.idempotents.keys().map(|i| i.to_string()).collect::<Vec<_>>(),
            "matrices": matrices,
        });
        if let Some(ctx) = &self.context {
            obj["ell"] = Value::String(ctx.rank.to_string());
            obj["charge"] = Value::String(ctx.charge.to_string());
        }
        obj
    }

    fn from_json_with(field: F, v: &Value) -> Result<Self> {
        let bad = |what: &str| KlrError::Parse(format!("module JSON: {what}"));
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let dim = v["dimension"].as_u64().ok_or_else(|| bad("missing dimension"))? as usize;
        let labels: Vec<String> = match v.get("labels") {
            Some(l) => serde_json::from_value(l.clone())?,
            None => (0..dim).map(|k| format!("b{}", k + 1)).collect(),
        };
        if labels.len() != dim {
            return Err(KlrError::DimensionMismatch(format!("{} labels for dimension {dim}", labels.len())));
        }
        let support: Vec<ResidueSequence> = serde_json::from_value(v["support"].clone())?;
        let matrices = v["matrices"].as_object().ok_or_else(|| bad("missing matrices"))?;
        let parse_matrix = |name: &str| -> Result<SparseMatrix<F::Elem>> {
            let Some(rows) = matrices.get(name) else {
                return Ok(SparseMatrix::zero(dim, dim));
            };
            let rows = rows.as_array().ok_or_else(|| bad(&format!("{name} is not an array")))?;
            if rows.len() != dim {
                return Err(KlrError::DimensionMismatch(format!("{name} has {} rows, expected {dim}", rows.len())));
            }
            let mut dense = Vec::with_capacity(dim);
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad(&format!("{name} row is not an array")))?;
                if row.len() != dim {
                    return Err(KlrError::DimensionMismatch(format!("{name} has a row of length {}, expected {dim}", row.len())));
                }
                let parsed = row
                    .iter()
                    .map(|e| match e {
                        Value::String(s) => field.parse(s),
                        Value::Number(x) => field.parse(&x.to_string()),
                        _ => Err(bad("matrix entries must be strings or integers")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                dense.push(parsed);
            }
            Ok(SparseMatrix::from_dense(&field, &dense, dim))
        };
        for key in matrices.keys() {
            let letter: Letter = key.parse()?;
            let known = match &letter {
                Letter::E(i) => support.contains(i),
                Letter::X(r) => (1..=n).contains(r),
                Letter::Psi(r) => (1..n).contains(r),
            };
            if !known {
                return Err(bad(&format!("matrix {key} does not match n or the support")));
            }
        }
        let mut idempotents = BTreeMap::new();
        for i in &support {
            idempotents.insert(i.clone(), parse_matrix(&format!("e({i})"))?);
        }
        let x = (1..=n).map(|r| parse_matrix(&format!("x{r}"))).collect::<Result<Vec<_>>>()?;
        let psi = (1..n).map(|r| parse_matrix(&format!("psi{r}"))).collect::<Result<Vec<_>>>()?;
        let mut rep = Representation::new(field.clone(), n, labels, idempotents, x, psi)?;
        if let (Some(ell), Some(charge)) = (v.get("ell").and_then(Value::as_str), v.get("charge").and_then(Value::as_str)) {
            rep = rep.with_context(ell.parse()?, charge.parse()?);
        }
        Ok(rep)
    }
}

/// A representation over a field chosen at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyRepresentation {
    Rational(Representation<Rationals>),
    Prime(Representation<PrimeField>),
}

impl AnyRepresentation {
    pub fn from_json(v: &Value) -> Result<Self> {
        let desc: FieldDescriptor = v["field"].as_str().ok_or_else(|| KlrError::Parse("module JSON: missing field".into()))?.parse()?;
        Ok(match desc {
            FieldDescriptor::Rationals => AnyRepresentation::Rational(Representation::from_json_with(Rationals, v)?),
            FieldDescriptor::Prime(p) => AnyRepresentation::Prime(Representation::from_json_with(PrimeField::new(p)?, v)?),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyRepresentation::Rational(r) => r.to_json(),
            AnyRepresentation::Prime(r) => r.to_json(),
        }
    }
}

/// Runs `$body` with `$f` bound to the field named by a [`FieldDescriptor`].
#[macro_export]
macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {
        match $desc {
            $crate::exactla::FieldDescriptor::Rationals => {
                let $f = $crate::exactla::Rationals;
                $body
            }
            $crate::exactla::FieldDescriptor::Prime(p) => {
                let $f = $crate::exactla::PrimeField::new(p)?;
                $body
            }
        }
    };
}
