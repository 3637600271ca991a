use std::fs;
use std::path::Path;

use klr_core::criterion::{is_semisimple, Witness};
use klr_core::exactla::{Field, FieldDescriptor};
use klr_core::presentation::{verify_representation, VerificationReport};
use klr_core::repmodels::{build_boundary_uniserial, build_irreducible, build_repeat_uniserial, AnyRepresentation, Representation};
use klr_core::root_data::{LieRank, Multicharge};
use klr_core::specht::{build_specht, nonsplit_witness, NonsplitCase, SpechtPresentation};
use klr_core::sweep::{certify_uniserial, run_sweep, Certificate, GridSpec, PointRecord, Route};
use klr_core::tableaux::{enumerate_standard, residue, residue_sequences_of_level, Multipartition, Node};
use klr_core::{with_field, KlrError, Result};
use serde_json::{json, Value};

use crate::output::{canonical, canonical_line, emit};
use crate::{AlgebraArgs, Command, Enumerate, SweepArgs, WitnessKind};

/// Runs one command; `Ok(false)` maps to exit code 1.
pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::CheckSemisimple { alg, n, json } => check(&alg, n, json),
        Command::Irreducible { alg, shape, field, out } => irreducible(&alg, &shape, field, out.as_deref()),
        Command::Specht { alg, shape, field, out, experimental } => specht(&alg, &shape, field, out.as_deref(), experimental),
        Command::Witness { kind, alg, n, component, field, out } => witness(kind, &alg, n, component, field, out.as_deref()),
        Command::Verify { module, ell, charge } => verify(&module, ell, charge),
        Command::Sweep(args) => sweep(&args),
        Command::Enumerate { what } => enumerate(what),
        Command::Export { module, out, ell, charge, allow_unverified } => export(&module, &out, ell, charge, allow_unverified),
    }
}

fn check(alg: &AlgebraArgs, n: usize, as_json: bool) -> Result<bool> {
    if n == 0 {
        return Err(KlrError::Precondition("n must be positive".into()));
    }
    let report = is_semisimple(&alg.charge, n, alg.ell);
    if as_json {
        emit(&canonical(&report)?, None)?;
        return Ok(report.verdict);
    }
    println!("ell={} charge=({}) n={}", alg.ell, alg.charge, n);
    println!("ss1: {}", report.ss1);
    println!("ss2: {}", report.ss2);
    for w in &report.witnesses {
        match w {
            Witness::Ss1 { residue, pairing } => println!("  ss1 fails at residue {residue}: window pairing {pairing}"),
            Witness::Ss2 { component, charge, side } => {
                println!("  ss2 fails at component {component}: folded charge {charge} ({side:?} side)")
            }
        }
    }
    if report.outside_theorem_range {
        println!("note: n = 1, verdict from ss1 alone");
    }
    println!("verdict: {}", if report.verdict { "semisimple" } else { "not semisimple" });
    Ok(report.verdict)
}

fn module_text<F: Field>(rep: &Representation<F>) -> Result<String> {
    canonical(&rep.to_json())
}

fn irreducible(alg: &AlgebraArgs, shape: &Multipartition, field: FieldDescriptor, out: Option<&Path>) -> Result<bool> {
    with_field!(field, f => {
        let rep = build_irreducible(shape, &alg.charge, alg.ell, f)?;
        let report = verify_representation(&rep, &alg.charge.weight(alg.ell), alg.ell)?;
        eprintln!("dimension {}; {} relations checked, {} violations", rep.dim(), report.checked, report.violations.len());
        emit(&module_text(&rep)?, out)?;
        Ok(report.passed())
    })
}

/// Shapes covered by the documented builder: every component a hook (rows and columns
/// included).
fn hook_shaped(shape: &Multipartition) -> bool {
    shape.components().iter().all(|c| c.len() <= 1 || c[1..].iter().all(|&p| p == 1))
}

fn specht(alg: &AlgebraArgs, shape: &Multipartition, field: FieldDescriptor, out: Option<&Path>, experimental: bool) -> Result<bool> {
    if !experimental && !hook_shaped(shape) {
        return Err(KlrError::Precondition(format!("{shape} has a non-hook component; pass --experimental to try it")));
    }
    let p = SpechtPresentation::new(shape, &alg.charge, alg.ell)?;
    with_field!(field, f => {
        let m = build_specht(&p, f)?;
        let tri = m.triangularity_failures();
        let pres = m.presentation_failures()?;
        let report = verify_representation(&m.rep, &alg.charge.weight(alg.ell), alg.ell)?;
        eprintln!(
            "dimension {} (standard tableaux {}); {} vectors defined; {} relation violations; {} presentation failures; {} triangularity failures",
            m.rep.dim(),
            m.tableaux.len(),
            m.vectors_defined,
            report.violations.len(),
            pres.len(),
            tri.len()
        );
        emit(&module_text(&m.rep)?, out)?;
        Ok(report.passed() && pres.is_empty() && tri.is_empty())
    })
}

fn vector_json<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|e| Value::String(f.format(e))).collect())
}

fn default_component(kind: WitnessKind, kappa: &Multicharge, rank: LieRank) -> Result<usize> {
    let bars = kappa.bar(rank);
    let found = match kind {
        WitnessKind::Boundary => bars.iter().position(|c| c.0 == 0 || rank.ell() == Some(c.0)),
        _ => (0..bars.len()).find(|&j| bars.iter().enumerate().any(|(k, b)| k != j && *b == bars[j])),
    };
    found.map(|j| j + 1).ok_or_else(|| KlrError::Precondition(format!("no component of ({kappa}) suits a {kind:?} witness")))
}

fn uniserial_certificate<F: Field>(rep: &Representation<F>, alg: &AlgebraArgs, component: usize) -> Result<(Value, bool)> {
    let f = rep.field();
    let (checked, violations, unique_line, obstruction) = certify_uniserial(rep, &alg.charge, alg.ell)?;
    let passed = violations == 0 && unique_line && obstruction.is_some();
    let value = json!({
        "component": component,
        "module": rep.to_json(),
        "vector": vector_json(f, &[f.one(), f.zero()]),
        "invariant_line_unique": unique_line,
        "obstruction": obstruction,
        "verification": { "checked": checked, "violations": violations },
        "passed": passed,
    });
    Ok((value, passed))
}

fn specht_certificate<F: Field>(case: NonsplitCase, alg: &AlgebraArgs, n: usize, field: F) -> Result<(Value, bool)> {
    let w = nonsplit_witness(case, &alg.charge, n, alg.ell, field)?;
    let f = w.module.rep.field();
    let passed = w.verification.passed() && w.certificate.rank < w.certificate.augmented_rank;
    let value = json!({
        "shape": w.setup.shape.to_string(),
        "witness_charge": w.setup.charge.to_string(),
        "component": w.setup.component,
        "partner": w.setup.partner,
        "tableau": w.tableau.to_string(),
        "tableaux": w.module.tableaux.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "module": w.module.rep.to_json(),
        "vector": vector_json(f, &w.vector),
        "obstruction": w.certificate,
        "verification": { "checked": w.verification.checked, "violations": w.verification.violations.len() },
        "passed": passed,
    });
    Ok((value, passed))
}

fn witness(
    kind: WitnessKind,
    alg: &AlgebraArgs,
    n: usize,
    component: Option<usize>,
    field: FieldDescriptor,
    out: Option<&Path>,
) -> Result<bool> {
    let (mut value, passed) = with_field!(field, f => match kind {
        WitnessKind::Boundary | WitnessKind::Repeat => {
            let j = match component {
                Some(j) => j,
                None => default_component(kind, &alg.charge, alg.ell)?,
            };
            let rep = if kind == WitnessKind::Boundary {
                build_boundary_uniserial(&alg.charge, j, n, alg.ell, f)?
            } else {
                build_repeat_uniserial(&alg.charge, j, n, alg.ell, f)?
            };
            uniserial_certificate(&rep, alg, j)?
        }
        WitnessKind::Ss2fail => specht_certificate(NonsplitCase::Ss2Fail, alg, n, f)?,
        WitnessKind::Ss1fail => specht_certificate(NonsplitCase::Ss1Fail, alg, n, f)?,
    });
    value["kind"] = json!(format!("{kind:?}").to_lowercase());
    value["ell"] = json!(alg.ell.to_string());
    value["charge"] = json!(alg.charge.to_string());
    value["n"] = json!(n);
    value["field"] = json!(field.to_string());
    emit(&canonical(&value)?, out)?;
    Ok(passed)
}

fn read_module(
    path: &Path,
    ell: Option<LieRank>,
    charge: Option<Multicharge>,
) -> Result<(AnyRepresentation, Option<(LieRank, Multicharge)>)> {
    let text = fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    let rep = AnyRepresentation::from_json(&value)?;
    let stored = match &rep {
        AnyRepresentation::Rational(r) => r.context().map(|c| (c.rank, c.charge.clone())),
        AnyRepresentation::Prime(r) => r.context().map(|c| (c.rank, c.charge.clone())),
    };
    let context = match (ell, charge, stored) {
        (Some(l), Some(k), _) => Some((l, k)),
        (l, k, Some((sl, sk))) => Some((l.unwrap_or(sl), k.unwrap_or(sk))),
        _ => None,
    };
    Ok((rep, context))
}

fn verify_any(rep: &AnyRepresentation, rank: LieRank, kappa: &Multicharge) -> Result<VerificationReport> {
    let w = kappa.weight(rank);
    match rep {
        AnyRepresentation::Rational(r) => verify_representation(r, &w, rank),
        AnyRepresentation::Prime(r) => verify_representation(r, &w, rank),
    }
}

fn verify(path: &Path, ell: Option<LieRank>, charge: Option<Multicharge>) -> Result<bool> {
    let (rep, context) = read_module(path, ell, charge)?;
    let (rank, kappa) = context.ok_or_else(|| KlrError::Precondition("module file has no ell/charge; pass --ell and --charge".into()))?;
    let report = verify_any(&rep, rank, &kappa)?;
    eprintln!("{} relations checked, {} violations", report.checked, report.violations.len());
    emit(&canonical(&report)?, None)?;
    Ok(report.passed())
}

fn export(path: &Path, out: &Path, ell: Option<LieRank>, charge: Option<Multicharge>, allow_unverified: bool) -> Result<bool> {
    let (rep, context) = read_module(path, ell, charge)?;
    let verified = match &context {
        Some((rank, kappa)) => verify_any(&rep, *rank, kappa)?.passed(),
        None => false,
    };
    if !verified && !allow_unverified {
        eprintln!("refusing to export an unverified module (use --allow-unverified)");
        return Ok(false);
    }
    let mut value = rep.to_json();
    if let Some((rank, kappa)) = context {
        value["ell"] = json!(rank.to_string());
        value["charge"] = json!(kappa.to_string());
    }
    emit(&canonical(&value)?, Some(out))?;
    Ok(true)
}

fn parse_list<T: std::str::FromStr<Err = KlrError>>(s: &str, sep: char) -> Result<Vec<T>> {
    s.split(sep).map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}

fn grid_from_args(args: &SweepArgs) -> Result<GridSpec> {
    if let Some(path) = &args.grid {
        return Ok(serde_json::from_str(&fs::read_to_string(path)?)?);
    }
    let levels = args
        .levels
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| KlrError::Parse(format!("bad level '{t}'"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(GridSpec {
        ells: parse_list(&args.ells, ',')?,
        levels,
        charges: args.charges.as_deref().map(|c| parse_list(c, ';')).transpose()?,
        n_min: args.n_min,
        n_max: args.n_max,
        fields: parse_list(&args.fields, ',')?,
        max_standard: args.max_std,
        infinite_charge_max: args.infinite_charge_max,
    })
}

fn kind_of(record: &PointRecord) -> &'static str {
    match &record.certificate {
        None => "error",
        Some(Certificate::Semisimple { .. }) => "semisimple",
        Some(Certificate::Witness { route, .. }) => match route {
            Route::Boundary { .. } => "boundary",
            Route::Repeat { .. } => "repeat",
            Route::Ss2Fail => "ss2fail",
            Route::Ss1Fail => "ss1fail",
        },
    }
}

fn sweep(args: &SweepArgs) -> Result<bool> {
    let grid = grid_from_args(args)?;
    let records = run_sweep(&grid)?;
    let mut text = String::new();
    for r in &records {
        text.push_str(&canonical_line(r)?);
        text.push('\n');
    }
    emit(&text, args.out.as_deref())?;

    let kinds = ["semisimple", "boundary", "repeat", "ss2fail", "ss1fail", "error"];
    eprintln!("{:<12} {:>8} {:>8}", "certificate", "points", "passed");
    for kind in kinds {
        let of_kind: Vec<&PointRecord> = records.iter().filter(|r| kind_of(r) == kind).collect();
        if !of_kind.is_empty() {
            eprintln!("{:<12} {:>8} {:>8}", kind, of_kind.len(), of_kind.iter().filter(|r| r.passed).count());
        }
    }
    let passed = records.iter().filter(|r| r.passed).count();
    eprintln!("{:<12} {:>8} {:>8}", "total", records.len(), passed);
    for r in records.iter().filter(|r| !r.passed) {
        let why = r.error.clone().unwrap_or_else(|| "certificate check failed".into());
        eprintln!("  failed: ell={} charge=({}) n={} field={}: {why}", r.point.ell, r.point.charge, r.point.n, r.point.field);
    }
    Ok(passed == records.len())
}

/// One line per component; rows joined by ` / `. Residues are written without separators
/// unless one of them has two digits.
pub fn residue_diagram(shape: &Multipartition, kappa: &Multicharge, rank: LieRank) -> Result<Vec<String>> {
    if shape.level() != kappa.level() {
        return Err(KlrError::SizeMismatch(format!("shape of level {} against charge of level {}", shape.level(), kappa.level())));
    }
    let rows: Vec<Vec<Vec<u32>>> = shape
        .components()
        .iter()
        .enumerate()
        .map(|(t, comp)| {
            comp.iter()
                .enumerate()
                .map(|(r, &len)| (1..=len).map(|c| residue(Node::new(r + 1, c, t + 1), kappa, rank).0).collect())
                .collect()
        })
        .collect();
    let wide = rows.iter().flatten().flatten().any(|&x| x >= 10);
    let sep = if wide { "," } else { "" };
    Ok(rows
        .iter()
        .map(|comp| {
            if comp.is_empty() {
                return "-".to_string();
            }
            comp.iter().map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)).collect::<Vec<_>>().join(" / ")
        })
        .collect())
}

fn enumerate(what: Enumerate) -> Result<bool> {
    match what {
        Enumerate::Tableaux { shape, ell, charge } => {
            let context = match (ell, charge) {
                (Some(l), Some(k)) => {
                    if k.level() != shape.level() {
                        return Err(KlrError::SizeMismatch("charge and shape levels differ".into()));
                    }
                    Some((l, k))
                }
                (None, None) => None,
                _ => return Err(KlrError::Precondition("--ell and --charge go together".into())),
            };
            for t in enumerate_standard(&shape) {
                match &context {
                    Some((l, k)) => println!("{t}\t{}", t.residue_sequence(k, *l)),
                    None => println!("{t}"),
                }
            }
        }
        Enumerate::Residues { alg, shape } => {
            for line in residue_diagram(&shape, &alg.charge, alg.ell)? {
                println!("{line}");
            }
        }
        Enumerate::Sequences { alg, n } => {
            for i in residue_sequences_of_level(n, &alg.charge, alg.ell) {
                println!("{i}");
            }
        }
    }
    Ok(true)
}
