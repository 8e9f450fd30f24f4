mod common;

use common::props;

fn tables() -> Vec<(String, blockscope::chartable::CharacterTable)> {
    common::all_tables()
}

#[test]
fn cyclotomic_field_axioms() {
    props::field_axioms().unwrap();
}

#[test]
fn galois_automorphism_laws() {
    props::galois_laws().unwrap();
}

#[test]
fn valuation_axioms() {
    props::valuation_axioms().unwrap();
}

#[test]
fn reduction_is_a_ring_homomorphism() {
    props::reduction_homomorphism().unwrap();
}

#[test]
fn fixtures_are_orthogonal() {
    props::orthogonality(&tables()).unwrap();
}

#[test]
fn brauer_permutation_lemma_on_fixtures() {
    props::brauer_permutation(&tables()).unwrap();
}

#[test]
fn section_gram_invariants() {
    props::section_sweep(&tables()).unwrap();
}

#[test]
fn prime_ideal_choice_is_irrelevant_on_fixtures() {
    props::factor_choice(&tables()).unwrap();
}
