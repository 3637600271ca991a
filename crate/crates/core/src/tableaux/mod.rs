//! Multipartitions, tableaux, residue sequences, Garnir data and dominance.

mod multipartition;
mod sequences;
mod tableau;

pub use multipartition::{dominates, enumerate_multipartitions, enumerate_partitions, residue, Multipartition, Node};
pub use sequences::{all_sequences, neighbourres_check, residue_bound, residue_sequences_of_level, ResidueSequence};
pub use tableau::{
    enumerate_standard, garnir_belt, garnir_nodes, garnir_tableau, inversions, is_garnir_node, least_dominant, leftmost_descent_word,
    row_strict_dominates, row_strict_with_residues, tableau_dominates, tableau_word, word_to_permutation, Tableau, TableauWord,
};
