use klr_core::exactla::{Field, PrimeField, Rationals};
use klr_core::presentation::Letter;
use klr_core::root_data::{LieRank, Multicharge};
use klr_core::specht::{build_specht, garnir_simple, nonsplit_setup, nonsplit_witness, NonsplitCase, SpechtPresentation};
use klr_core::tableaux::{enumerate_standard, Multipartition};
use klr_core::KlrError;

fn k(s: &str) -> Multicharge {
    s.parse().unwrap()
}

fn mp(s: &str) -> Multipartition {
    s.parse().unwrap()
}

fn l(v: u32) -> LieRank {
    LieRank::Finite(v)
}

#[test]
fn garnir_simple_examples() {
    assert!(garnir_simple(&mp("2,1,1"), &k("1"), l(2)));
    assert!(garnir_simple(&mp("1|1"), &k("1,2"), l(4)));
    assert!(garnir_simple(&mp("5"), &k("2"), l(3)));
}

#[test]
fn two_component_example() {
    let p = SpechtPresentation::new(&mp("1|1"), &k("1,2"), l(4)).unwrap();
    let m = build_specht(&p, Rationals).unwrap();
    assert_eq!(m.rep.dim(), 2);
    assert!(m.triangularity_failures().is_empty());
    // psi_1 psi_1 z = (x_1 + x_2) z = 0
    let f = Rationals;
    let sq = m.rep.psi(1).mul(&f, m.rep.psi(1));
    assert!(sq.is_zero());
}

#[test]
fn hook_example() {
    let p = SpechtPresentation::new(&mp("2,1,1"), &k("1"), l(2)).unwrap();
    let m = build_specht(&p, Rationals).unwrap();
    assert_eq!(m.rep.dim(), 3);
    assert!(m.triangularity_failures().is_empty(), "{:?}", m.triangularity_failures());
}

#[test]
fn one_row_agrees_with_irreducible() {
    for n in 1..=4 {
        let p = SpechtPresentation::new(&Multipartition::single(1, 1, vec![n]).unwrap(), &k("3"), l(7)).unwrap();
        let m = build_specht(&p, Rationals).unwrap();
        assert_eq!(m.rep.dim(), 1);
        for (letter, g) in m.rep.generators() {
            if !matches!(letter, Letter::E(_)) {
                assert!(g.is_zero());
            }
        }
    }
}

#[test]
fn semisimple_specht_modules_have_full_dimension() {
    for (lambda, charge, ell) in [("2,1", "2", 3), ("2,2", "3", 6), ("3,1", "3", 6), ("2,1|1", "2,6", 8)] {
        let lambda = mp(lambda);
        let p = SpechtPresentation::new(&lambda, &k(charge), l(ell)).unwrap();
        let m = build_specht(&p, PrimeField::new(7).unwrap()).unwrap();
        assert_eq!(m.rep.dim(), enumerate_standard(&lambda).len());
        assert!(m.triangularity_failures().is_empty());
    }
}

#[test]
fn ss2fail_witness() {
    let w = nonsplit_witness(NonsplitCase::Ss2Fail, &k("1"), 4, l(2), Rationals).unwrap();
    assert_eq!(w.setup.shape, mp("2,1,1"));
    assert_eq!(w.tableau.residue_sequence(&w.setup.charge, l(2)).to_string(), "1,0,1,2");
    assert!(w.verification.passed());
    assert!(w.certificate.rank < w.certificate.augmented_rank);
}

#[test]
fn ss1fail_witness() {
    let w = nonsplit_witness(NonsplitCase::Ss1Fail, &k("1,2"), 2, l(4), Rationals).unwrap();
    assert_eq!(w.setup.shape, mp("1|1"));
    assert_eq!(w.tableau.to_string(), "2|1");
    let f = Rationals;
    assert!(f.is_one(&w.vector[w.module.tableaux.iter().position(|t| t == &w.tableau).unwrap()]));

    let w = nonsplit_witness(NonsplitCase::Ss1Fail, &k("2,1"), 2, l(4), Rationals).unwrap();
    assert_eq!(w.setup.shape, mp("1|1"));
}

#[test]
fn witness_preconditions() {
    assert!(matches!(nonsplit_setup(NonsplitCase::Ss2Fail, &k("0"), 3, l(2)), Err(KlrError::Precondition(_))));
    assert!(matches!(nonsplit_setup(NonsplitCase::Ss2Fail, &k("2"), 3, l(4)), Err(KlrError::Precondition(_))));
    assert!(matches!(nonsplit_setup(NonsplitCase::Ss1Fail, &k("1,1"), 2, l(4)), Err(KlrError::Precondition(_))));
}

#[test]
fn all_desk_scale_witnesses_certify() {
    for ell in 2..=4u32 {
        for a in 1..ell as i64 {
            for n in 2..=6 {
                let kappa = k(&a.to_string());
                if nonsplit_setup(NonsplitCase::Ss2Fail, &kappa, n, l(ell)).is_ok() {
                    nonsplit_witness(NonsplitCase::Ss2Fail, &kappa, n, l(ell), Rationals)
                        .unwrap_or_else(|e| panic!("ss2fail ell {ell} charge {a} n {n}: {e}"));
                }
                for b in 1..ell as i64 {
                    let kappa = k(&format!("{a},{b}"));
                    if nonsplit_setup(NonsplitCase::Ss1Fail, &kappa, n, l(ell)).is_ok() {
                        nonsplit_witness(NonsplitCase::Ss1Fail, &kappa, n, l(ell), Rationals)
                            .unwrap_or_else(|e| panic!("ss1fail ell {ell} charge {kappa} n {n}: {e}"));
                    }
                }
            }
        }
    }
}
