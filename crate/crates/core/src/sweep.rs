//! Certification of grid points: every point gets either the full semisimple check or
//! exactly one non-splitting witness.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criterion::is_semisimple;
use crate::error::{KlrError, Result};
use crate::exactla::{equivariant_retraction_exists, invariant_lines, Field, FieldDescriptor, Retraction, RetractionCertificate, Subspace};
use crate::presentation::verify_representation;
use crate::repmodels::{
    build_boundary_uniserial, build_irreducible, build_repeat_uniserial, degree_violations, is_irreducible, matrix_units, Representation,
};
use crate::root_data::{LieRank, Multicharge};
use crate::specht::{nonsplit_witness, NonsplitCase};
use crate::tableaux::{enumerate_multipartitions, enumerate_standard};
use crate::with_field;

/// Documented limits keeping a sweep at desk scale.
pub const MAX_ELL: u32 = 10;
pub const MAX_LEVEL: usize = 3;
pub const MAX_N: usize = 8;
pub const MAX_POINTS: usize = 50_000;

/// A rectangular grid of `(ell, charge, n, field)` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub ells: Vec<LieRank>,
    pub levels: Vec<usize>,
    /// Explicit charges; when absent every tuple of folded charges is used (`0..=ell`, or
    /// `0..=infinite_charge_max` when `ell` is infinite).
    #[serde(default)]
    pub charges: Option<Vec<Multicharge>>,
    pub n_min: usize,
    pub n_max: usize,
    pub fields: Vec<FieldDescriptor>,
    /// Shapes with more standard tableaux are skipped in the semisimple checks.
    pub max_standard: usize,
    #[serde(default = "default_infinite_max")]
    pub infinite_charge_max: u32,
}

fn default_infinite_max() -> u32 {
    4
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub ell: LieRank,
    pub charge: Multicharge,
    pub n: usize,
    pub field: FieldDescriptor,
}

fn tuples(level: usize, top: u32) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..level {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=top as i64).map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(KlrError::Precondition(m));
        if self.ells.iter().any(|l| l.ell().is_some_and(|v| !(2..=MAX_ELL).contains(&v))) {
            return bad(format!("ell must lie in 2..={MAX_ELL} or be inf"));
        }
        if self.levels.iter().any(|&l| l == 0 || l > MAX_LEVEL) {
            return bad(format!("levels must lie in 1..={MAX_LEVEL}"));
        }
        if self.n_min == 0 || self.n_max > MAX_N {
            return bad(format!("n must lie in 1..={MAX_N}"));
        }
        if self.infinite_charge_max > MAX_ELL {
            return bad(format!("infinite_charge_max must be at most {MAX_ELL}"));
        }
        let count = self.points().len();
        if count > MAX_POINTS {
            return bad(format!("{count} grid points exceed the limit {MAX_POINTS}"));
        }
        Ok(())
    }

    /// Points in canonical order: ell, level, charge, n, field.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &ell in &self.ells {
            let top = ell.ell().unwrap_or(self.infinite_charge_max);
            let charges: Vec<Multicharge> = match &self.charges {
                Some(list) => list.clone(),
                None => self.levels.iter().flat_map(|&l| tuples(l, top)).map(|v| Multicharge::new(v).expect("nonempty")).collect(),
            };
            for charge in charges {
                for n in self.n_min..=self.n_max {
                    for &field in &self.fields {
                        out.push(GridPoint { ell, charge: charge.clone(), n, field });
                    }
                }
            }
        }
        out
    }
}

/// Which non-semisimplicity argument applies, in routing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Route {
    Boundary { component: usize },
    Repeat { component: usize },
    Ss2Fail,
    Ss1Fail,
}

/// `None` when the algebra is semisimple.
pub fn route(kappa: &Multicharge, n: usize, rank: LieRank) -> Option<Route> {
    let report = is_semisimple(kappa, n, rank);
    if report.verdict {
        return None;
    }
    let bars = kappa.bar(rank);
    if n > 1 {
        if let Some(j) = bars.iter().position(|c| c.0 == 0 || rank.ell() == Some(c.0)) {
            return Some(Route::Boundary { component: j + 1 });
        }
    }
    if report.ss2 {
        let repeated = (0..bars.len()).find(|&j| bars.iter().enumerate().any(|(k, b)| k != j && *b == bars[j]));
        if let Some(j) = repeated {
            return Some(Route::Repeat { component: j + 1 });
        }
        return Some(Route::Ss1Fail);
    }
    Some(Route::Ss2Fail)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "certificate")]
pub enum Certificate {
    Semisimple {
        shapes: usize,
        shapes_checked: usize,
        /// `sum_lambda |Std(lambda)|^2`.
        dimension: usize,
        irreducibles_verified: bool,
        degree_zero: bool,
        irreducible: bool,
        matrix_units: Option<bool>,
    },
    Witness {
        route: Route,
        module_dimension: usize,
        relations_checked: usize,
        violations: usize,
        invariant_line: bool,
        /// Rank figures of the inconsistent retraction system, if it is inconsistent.
        obstruction: Option<RetractionCertificate>,
        shape: Option<String>,
    },
}

impl Certificate {
    pub fn passed(&self) -> bool {
        match self {
            Certificate::Semisimple { irreducibles_verified, degree_zero, irreducible, matrix_units, .. } => {
                *irreducibles_verified && *degree_zero && *irreducible && matrix_units.unwrap_or(true)
            }
            Certificate::Witness { violations, invariant_line, obstruction, .. } => {
                *violations == 0 && *invariant_line && obstruction.is_some()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    #[serde(flatten)]
    pub point: GridPoint,
    pub ss1: bool,
    pub ss2: bool,
    pub verdict: bool,
    pub certificate: Option<Certificate>,
    pub passed: bool,
    pub error: Option<String>,
}

fn certify_semisimple<F: Field>(kappa: &Multicharge, n: usize, rank: LieRank, max_standard: usize, field: F) -> Result<Certificate> {
    let w = kappa.weight(rank);
    let shapes = enumerate_multipartitions(n, kappa.level());
    let mut dimension = 0;
    let mut checked = 0;
    let mut verified = true;
    let mut degree_zero = true;
    let mut irreducible = true;
    for lambda in &shapes {
        let count = enumerate_standard(lambda).len();
        dimension += count * count;
        if count > max_standard {
            continue;
        }
        checked += 1;
        let rep = build_irreducible(lambda, kappa, rank, field.clone())?;
        verified &= verify_representation(&rep, &w, rank)?.passed();
        degree_zero &= degree_violations(&rep, rank).is_empty();
        irreducible &= is_irreducible(&rep, &w, rank)?;
    }
    let units = (checked == shapes.len()).then(|| matrix_units(kappa, n, rank, field.clone())).transpose()?;
    if let Some(u) = &units {
        debug_assert_eq!(u.dimension, dimension);
    }
    Ok(Certificate::Semisimple {
        shapes: shapes.len(),
        shapes_checked: checked,
        dimension,
        irreducibles_verified: verified,
        degree_zero,
        irreducible,
        matrix_units: units.map(|u| u.passed()),
    })
}

/// Checks a two-dimensional witness on `{u, v}`: relations, `span(u)` as its only
/// invariant line, and no retraction onto it.
pub fn certify_uniserial<F: Field>(
    rep: &Representation<F>,
    kappa: &Multicharge,
    rank: LieRank,
) -> Result<(usize, usize, bool, Option<RetractionCertificate>)> {
    let f = rep.field();
    let report = verify_representation(rep, &kappa.weight(rank), rank)?;
    let span_u = Subspace::span(f.clone(), 2, [vec![f.one(), f.zero()]]);
    let lines = invariant_lines(rep)?;
    let unique_line = lines.len() == 1 && lines[0].space == span_u;
    let obstruction = match equivariant_retraction_exists(rep, &span_u)? {
        Retraction::Obstructed(c) => Some(c),
        Retraction::Exists { .. } => None,
    };
    Ok((report.checked, report.violations.len(), unique_line, obstruction))
}

fn certify_witness<F: Field>(route: Route, kappa: &Multicharge, n: usize, rank: LieRank, field: F) -> Result<Certificate> {
    let two_dim = match route {
        Route::Boundary { component } => Some(build_boundary_uniserial(kappa, component, n, rank, field.clone())?),
        Route::Repeat { component } => Some(build_repeat_uniserial(kappa, component, n, rank, field.clone())?),
        _ => None,
    };
    if let Some(rep) = two_dim {
        let (relations_checked, violations, invariant_line, obstruction) = certify_uniserial(&rep, kappa, rank)?;
        return Ok(Certificate::Witness {
            route,
            module_dimension: 2,
            relations_checked,
            violations,
            invariant_line,
            obstruction,
            shape: None,
        });
    }
    let case = if route == Route::Ss2Fail { NonsplitCase::Ss2Fail } else { NonsplitCase::Ss1Fail };
    let w = nonsplit_witness(case, kappa, n, rank, field)?;
    Ok(Certificate::Witness {
        route,
        module_dimension: w.module.rep.dim(),
        relations_checked: w.verification.checked,
        violations: w.verification.violations.len(),
        invariant_line: true,
        obstruction: Some(w.certificate),
        shape: Some(w.setup.shape.to_string()),
    })
}

pub fn certify_point(point: &GridPoint, max_standard: usize) -> PointRecord {
    let report = is_semisimple(&point.charge, point.n, point.ell);
    let result: Result<Certificate> = (|| {
        with_field!(point.field, f => match route(&point.charge, point.n, point.ell) {
            None => certify_semisimple(&point.charge, point.n, point.ell, max_standard, f),
            Some(r) => certify_witness(r, &point.charge, point.n, point.ell, f),
        })
    })();
    let (certificate, error) = match result {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    PointRecord {
        point: point.clone(),
        ss1: report.ss1,
        ss2: report.ss2,
        verdict: report.verdict,
        passed: certificate.as_ref().is_some_and(Certificate::passed),
        certificate,
        error,
    }
}

/// Certifies every point in parallel; records come back in canonical order.
pub fn run_sweep(grid: &GridSpec) -> Result<Vec<PointRecord>> {
    grid.validate()?;
    Ok(grid.points().par_iter().map(|p| certify_point(p, grid.max_standard)).collect())
}
