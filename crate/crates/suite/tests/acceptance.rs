//! Acceptance run over the desk grid. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact; there is no tolerance.
//!
//! The CLI criterion re-runs this executable with the `klr` entry point, so the bytes
//! compared are exactly what the binary writes to stdout.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};

use klr_core::exactla::{invariant_closure, Field, FieldDescriptor};
use klr_core::presentation::{homogeneity_check, verify_representation, RelationSet};
use klr_core::repmodels::{build_irreducible, degree_violations};
use klr_core::root_data::{LieRank, Multicharge};
use klr_core::specht::{nonsplit_setup, nonsplit_witness, NonsplitCase};
use klr_core::sweep::{route, run_sweep, Certificate, GridSpec, PointRecord, Route};
use klr_core::tableaux::{
    all_sequences, enumerate_multipartitions, enumerate_standard, neighbourres_check, residue_bound, residue_sequences_of_level,
    ResidueSequence,
};
use klr_core::{with_field, Result};

const MAX_STD: usize = 200;

fn fields() -> Vec<FieldDescriptor> {
    ["q", "p5", "p7"].iter().map(|s| s.parse().unwrap()).collect()
}

fn finite_grid() -> GridSpec {
    GridSpec {
        ells: (2..=4).map(LieRank::Finite).collect(),
        levels: vec![1, 2],
        charges: None,
        n_min: 2,
        n_max: 6,
        fields: fields(),
        max_standard: MAX_STD,
        infinite_charge_max: 4,
    }
}

fn infinite_grid() -> GridSpec {
    GridSpec {
        ells: vec![LieRank::Infinite],
        levels: vec![1, 2],
        charges: None,
        n_min: 2,
        n_max: 5,
        fields: fields(),
        max_standard: MAX_STD,
        infinite_charge_max: 3,
    }
}

type Key = (String, String, usize);

fn key(ell: LieRank, charge: &Multicharge, n: usize) -> Key {
    (ell.to_string(), charge.to_string(), n)
}

/// Per criterion, per field: outcome at each algebra point.
#[derive(Default)]
struct Outcomes(BTreeMap<&'static str, BTreeMap<FieldDescriptor, BTreeMap<Key, bool>>>);

impl Outcomes {
    fn record(&mut self, criterion: &'static str, field: FieldDescriptor, k: Key, ok: bool) {
        self.0.entry(criterion).or_default().entry(field).or_default().insert(k, ok);
    }
}

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} criterion {id}: {name} [tolerance: exact] {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn algebra_points(grid: &GridSpec) -> Vec<(LieRank, Multicharge, usize)> {
    let mut seen = BTreeSet::new();
    grid.points().into_iter().filter_map(|p| seen.insert(key(p.ell, &p.charge, p.n)).then_some((p.ell, p.charge, p.n))).collect()
}

fn criterion_1(records: &[PointRecord], out: &mut Outcomes) -> (bool, String) {
    let mut points = 0;
    let mut bad = Vec::new();
    for r in records.iter().filter(|r| r.verdict) {
        points += 1;
        let ok = matches!(
            &r.certificate,
            Some(Certificate::Semisimple { irreducibles_verified: true, matrix_units: Some(true), shapes, shapes_checked, .. })
                if shapes == shapes_checked
        );
        out.record("1", r.point.field, key(r.point.ell, &r.point.charge, r.point.n), ok);
        if !ok {
            bad.push(format!("{}/{}/{}/{}", r.point.ell, r.point.charge, r.point.n, r.point.field));
        }
    }
    (bad.is_empty(), format!("({points} semisimple points; failures {bad:?})"))
}

fn specht_line_is_invariant<F: Field>(case: NonsplitCase, kappa: &Multicharge, n: usize, rank: LieRank, f: F) -> Result<bool> {
    let w = nonsplit_witness(case, kappa, n, rank, f)?;
    Ok(invariant_closure(&w.module.rep, [w.vector.clone()]).dim() == 1 && w.certificate.rank < w.certificate.augmented_rank)
}

fn criterion_2(records: &[PointRecord], out: &mut Outcomes) -> (bool, String) {
    let mut points = 0;
    let mut bad = Vec::new();
    for r in records.iter().filter(|r| !r.verdict) {
        points += 1;
        let p = &r.point;
        let routed = route(&p.charge, p.n, p.ell);
        let mut ok =
            routed.is_some() && matches!(&r.certificate, Some(Certificate::Witness { route, .. }) if Some(*route) == routed) && r.passed;
        let case = match routed {
            Some(Route::Ss2Fail) => Some(NonsplitCase::Ss2Fail),
            Some(Route::Ss1Fail) => Some(NonsplitCase::Ss1Fail),
            _ => None,
        };
        if let (true, Some(case)) = (ok, case) {
            let line: Result<bool> = (|| with_field!(p.field, f => specht_line_is_invariant(case, &p.charge, p.n, p.ell, f)))();
            ok = line.unwrap_or(false);
        }
        out.record("2", p.field, key(p.ell, &p.charge, p.n), ok);
        if !ok {
            bad.push(format!("{}/{}/{}/{}: {:?}", p.ell, p.charge, p.n, p.field, r.error));
        }
    }
    (bad.is_empty(), format!("({points} non-semisimple points; failures {bad:?})"))
}

fn criterion_3(points: &[(LieRank, Multicharge, usize)]) -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (ell, kappa, n) in points {
        if route(kappa, *n, *ell).is_some() {
            continue;
        }
        checked += 1;
        let w = kappa.weight(*ell);
        let truth = residue_sequences_of_level(*n, kappa, *ell);
        let predicted: BTreeSet<ResidueSequence> =
            all_sequences(*n, residue_bound(*n, kappa, *ell)).filter(|i| neighbourres_check(i, &w, *ell)).collect();
        if predicted != truth {
            bad.push(format!("{ell}/{kappa}/{n}"));
        }
    }
    (bad.is_empty(), format!("({checked} semisimple points; mismatches {bad:?})"))
}

fn criterion_4(points: &[(LieRank, Multicharge, usize)]) -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (ell, kappa, n) in points {
        if route(kappa, *n, *ell).is_some() {
            continue;
        }
        checked += 1;
        let mut seen = BTreeSet::new();
        let mut injective = true;
        for lambda in enumerate_multipartitions(*n, kappa.level()) {
            for t in enumerate_standard(&lambda) {
                injective &= seen.insert(t.residue_sequence(kappa, *ell));
            }
        }
        let mut excluded = true;
        for i in &seen {
            for r in 1..*n {
                let (a, b) = (i.at(r).0 as i64, i.at(r + 1).0 as i64);
                if (a - b).abs() == 1 && seen.contains(&i.swap(r)) {
                    excluded = false;
                }
            }
        }
        if !(injective && excluded) {
            bad.push(format!("{ell}/{kappa}/{n}: injective {injective}, swap exclusion {excluded}"));
        }
    }
    (bad.is_empty(), format!("({checked} semisimple points; failures {bad:?})"))
}

fn criterion_5(points: &[(LieRank, Multicharge, usize)], out: &mut Outcomes) -> (bool, String) {
    let mut relations = 0;
    let mut modules = 0;
    let mut bad = Vec::new();
    for (ell, kappa, n) in points {
        let w = kappa.weight(*ell);
        let set = RelationSet::new(*n, w, *ell, residue_sequences_of_level(*n, kappa, *ell)).unwrap();
        let rels: Vec<_> = set.iter().collect();
        relations += rels.len();
        let (homogeneous, offending) = homogeneity_check(&rels, *ell);
        if !homogeneous {
            bad.push(format!("{ell}/{kappa}/{n}: {} inhomogeneous", offending.len()));
        }
        if route(kappa, *n, *ell).is_some() {
            continue;
        }
        for field in fields() {
            let ok: Result<bool> = (|| {
                with_field!(field, f => {
                    let mut ok = true;
                    for lambda in enumerate_multipartitions(*n, kappa.level()) {
                        let rep = build_irreducible(&lambda, kappa, *ell, f)?;
                        ok &= degree_violations(&rep, *ell).is_empty();
                    }
                    Ok(ok)
                })
            })();
            modules += 1;
            let ok = ok.unwrap_or(false);
            out.record("5", field, key(*ell, kappa, *n), ok);
            if !ok {
                bad.push(format!("{ell}/{kappa}/{n}/{field}: degree"));
            }
        }
    }
    (bad.is_empty(), format!("({relations} relations, {modules} irreducible families; failures {bad:?})"))
}

fn specht_instance<F: Field>(case: NonsplitCase, kappa: &Multicharge, n: usize, rank: LieRank, f: F) -> Result<bool> {
    let w = nonsplit_witness(case, kappa, n, rank, f)?;
    let m = &w.module;
    let report = verify_representation(&m.rep, &w.setup.charge.weight(rank), rank)?;
    Ok(m.rep.dim() == enumerate_standard(&w.setup.shape).len()
        && m.presentation_failures()?.is_empty()
        && m.triangularity_failures().is_empty()
        && report.passed())
}

fn criterion_6(points: &[(LieRank, Multicharge, usize)], out: &mut Outcomes) -> (bool, String) {
    let mut instances = 0;
    let mut bad = Vec::new();
    let required: [(u32, &str, usize, NonsplitCase, &str); 2] =
        [(2, "1", 4, NonsplitCase::Ss2Fail, "2,1,1"), (4, "1,2", 2, NonsplitCase::Ss1Fail, "1|1")];
    for (ell, charge, n, case, shape) in required {
        let setup = nonsplit_setup(case, &charge.parse().unwrap(), n, LieRank::Finite(ell));
        if setup.map(|s| s.shape.to_string()).ok().as_deref() != Some(shape) {
            bad.push(format!("{ell}/{charge}/{n}: expected shape {shape}"));
        }
    }
    for (ell, kappa, n) in points {
        for case in [NonsplitCase::Ss2Fail, NonsplitCase::Ss1Fail] {
            if nonsplit_setup(case, kappa, *n, *ell).is_err() {
                continue;
            }
            for field in fields() {
                instances += 1;
                let ok: Result<bool> = (|| with_field!(field, f => specht_instance(case, kappa, *n, *ell, f)))();
                let ok = ok.unwrap_or(false);
                out.record(if case == NonsplitCase::Ss2Fail { "6a" } else { "6b" }, field, key(*ell, kappa, *n), ok);
                if !ok {
                    bad.push(format!("{ell}/{kappa}/{n}/{field} {case:?}"));
                }
            }
        }
    }
    (bad.is_empty(), format!("({instances} builds; failures {bad:?})"))
}

/// Set in the child process that stands in for the `klr` binary.
const AS_CLI: &str = "KLR_ACCEPTANCE_AS_CLI";

fn criterion_7() -> (bool, String) {
    let exe = std::env::current_exe().expect("own path");
    let output = Command::new(exe)
        .env(AS_CLI, "1")
        .args(["enumerate", "residues", "--ell", "3", "--charge", "1,4", "--shape", "8,3,2|5,3,1"])
        .output()
        .expect("run klr");
    let text = String::from_utf8_lossy(&output.stdout).into_owned();
    let expected = "12321012 / 012 / 10\n21012 / 321 / 2\n";
    (output.status.success() && text == expected, format!("(output {text:?})"))
}

fn criterion_8(records: &[PointRecord], out: &Outcomes) -> (bool, String) {
    let mut bad = Vec::new();
    let mut verdicts: BTreeMap<Key, BTreeSet<bool>> = BTreeMap::new();
    for r in records {
        verdicts.entry(key(r.point.ell, &r.point.charge, r.point.n)).or_default().insert(r.verdict);
    }
    bad.extend(verdicts.iter().filter(|(_, v)| v.len() > 1).map(|(k, _)| format!("verdict {k:?}")));
    let mut compared = 0;
    for (criterion, per_field) in &out.0 {
        let mut by_key: BTreeMap<&Key, BTreeSet<bool>> = BTreeMap::new();
        for outcomes in per_field.values() {
            for (k, ok) in outcomes {
                by_key.entry(k).or_default().insert(*ok);
            }
        }
        for (k, values) in by_key {
            compared += 1;
            let covered = per_field.values().filter(|o| o.contains_key(k)).count();
            if values.len() > 1 || covered != fields().len() {
                bad.push(format!("criterion {criterion} at {k:?}"));
            }
        }
    }
    (bad.is_empty(), format!("({} verdicts, {compared} outcome rows across q/p5/p7; disagreements {bad:?})", verdicts.len()))
}

fn main() -> ExitCode {
    if std::env::var_os(AS_CLI).is_some() {
        return klr_cli::run();
    }
    let mut records = run_sweep(&finite_grid()).expect("finite grid");
    records.extend(run_sweep(&infinite_grid()).expect("infinite grid"));
    let mut points = algebra_points(&finite_grid());
    points.extend(algebra_points(&infinite_grid()));

    let mut outcomes = Outcomes::default();
    let mut report = Report { failed: 0 };

    let (ok, d) = criterion_1(&records, &mut outcomes);
    report.line(1, "irreducibles and matrix units on semisimple points", ok, d);
    let (ok, d) = criterion_2(&records, &mut outcomes);
    report.line(2, "routed non-splitting witness on non-semisimple points", ok, d);
    let (ok, d) = criterion_3(&points);
    report.line(3, "residue-condition predicate equals brute-force sequence set", ok, d);
    let (ok, d) = criterion_4(&points);
    report.line(4, "residue injectivity and swap exclusion", ok, d);
    let (ok, d) = criterion_5(&points, &mut outcomes);
    report.line(5, "relation homogeneity and degree-zero irreducibles", ok, d);
    let (ok, d) = criterion_6(&points, &mut outcomes);
    report.line(6, "Specht builder on witness shapes", ok, d);
    let (ok, d) = criterion_7();
    report.line(7, "residue diagram through the CLI", ok, d);
    let (ok, d) = criterion_8(&records, &outcomes);
    report.line(8, "field independence", ok, d);

    if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
