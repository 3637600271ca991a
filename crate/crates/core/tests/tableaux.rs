use std::collections::BTreeSet;

use klr_core::criterion::is_semisimple;
use klr_core::root_data::{LieRank, Multicharge};
use klr_core::tableaux::{
    all_sequences, enumerate_multipartitions, enumerate_standard, neighbourres_check, residue_bound, residue_sequences_of_level,
    ResidueSequence, Tableau,
};

fn k(s: &str) -> Multicharge {
    s.parse().unwrap()
}

fn seq(v: &[u32]) -> ResidueSequence {
    ResidueSequence::from_values(v)
}

/// Semisimple desk points, finite and infinite rank.
fn semisimple_points() -> Vec<(LieRank, Multicharge, usize)> {
    let mut out = Vec::new();
    let ranks: Vec<(LieRank, i64)> =
        vec![(LieRank::Finite(2), 2), (LieRank::Finite(3), 3), (LieRank::Finite(4), 4), (LieRank::Infinite, 3)];
    for (rank, top) in ranks {
        for n in 2..=5 {
            for a in 0..=top {
                let mut charges = vec![k(&a.to_string())];
                charges.extend((0..=top).map(|b| k(&format!("{a},{b}"))));
                for kappa in charges {
                    if is_semisimple(&kappa, n, rank).verdict {
                        out.push((rank, kappa, n));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn residue_map_is_injective_on_semisimple_points() {
    for (rank, kappa, n) in semisimple_points() {
        let mut seen = BTreeSet::new();
        for lambda in enumerate_multipartitions(n, kappa.level()) {
            for t in enumerate_standard(&lambda) {
                assert!(seen.insert(t.residue_sequence(&kappa, rank)), "{rank}/{kappa}/{n}: {t}");
            }
        }
    }
}

#[test]
fn adjacent_swaps_leave_the_sequence_set() {
    for (rank, kappa, n) in semisimple_points() {
        let set = residue_sequences_of_level(n, &kappa, rank);
        for i in &set {
            for r in 1..n {
                if (i.at(r).0 as i64 - i.at(r + 1).0 as i64).abs() == 1 {
                    assert!(!set.contains(&i.swap(r)), "{rank}/{kappa}/{n}: {i} at {r}");
                }
            }
        }
    }
}

fn predicate_set(n: usize, kappa: &Multicharge, rank: LieRank) -> BTreeSet<ResidueSequence> {
    let w = kappa.weight(rank);
    all_sequences(n, residue_bound(n, kappa, rank)).filter(|i| neighbourres_check(i, &w, rank)).collect()
}

/// SS2 with equality at a component whose folded charge is neither 1 nor `ell - 1` lets one
/// residue occur on two diagonals of a single column (or row).
fn boundary_tight(kappa: &Multicharge, n: usize, rank: LieRank) -> bool {
    kappa.bar(rank).iter().any(|c| {
        let low = 2 * c.0 as usize + 1 == n && c.0 >= 2;
        let high = rank.ell().is_some_and(|l| 2 * (l - c.0) as usize + 1 == n && l - c.0 >= 2);
        low || high
    })
}

#[test]
fn three_conditions_match_the_oracle_away_from_tight_charges() {
    let mut compared = 0;
    for (rank, kappa, n) in semisimple_points() {
        if boundary_tight(&kappa, n, rank) {
            continue;
        }
        compared += 1;
        assert_eq!(predicate_set(n, &kappa, rank), residue_sequences_of_level(n, &kappa, rank), "{rank}/{kappa}/{n}");
    }
    assert!(compared > 20);
}

#[test]
fn three_conditions_disagree_with_the_oracle_at_a_tight_charge() {
    let (rank, kappa, n) = (LieRank::Finite(4), k("2"), 5);
    assert!(is_semisimple(&kappa, n, rank).verdict);
    let truth = residue_sequences_of_level(n, &kappa, rank);
    let predicted = predicate_set(n, &kappa, rank);
    // first column of (1^5): residues 2,1,0,1,2
    assert!(truth.contains(&seq(&[2, 1, 0, 1, 2])));
    assert!(!predicted.contains(&seq(&[2, 1, 0, 1, 2])));
    // a second 0 would need a 2x2 block below the first one
    assert!(!truth.contains(&seq(&[2, 1, 0, 1, 0])));
    assert!(predicted.contains(&seq(&[2, 1, 0, 1, 0])));
}

#[test]
fn worked_example_residue_sequence() {
    let lambda = "8,3,2|5,3,1".parse().unwrap();
    let t = Tableau::initial(&lambda);
    let i = t.residue_sequence(&k("1,4"), LieRank::Finite(3));
    assert_eq!(i.entries()[..8].iter().map(|r| r.0).collect::<Vec<_>>(), vec![1, 2, 3, 2, 1, 0, 1, 2]);
}

#[test]
fn level_two_sequence_counts() {
    // each standard tableau gives a distinct sequence at a semisimple point
    let (rank, kappa) = (LieRank::Finite(10), k("3,7"));
    for n in 1..=4 {
        let tableaux: usize = enumerate_multipartitions(n, 2).iter().map(|l| enumerate_standard(l).len()).sum();
        assert_eq!(residue_sequences_of_level(n, &kappa, rank).len(), tableaux);
    }
}
