//! Fuzzed double complexes with hand-computed cohomology, hidden behind a
//! random change of basis in every bidegree.

mod common;

use common::{agrees_with, disguised_complex, property_suite, Symmetries};
use solvcohom::models::builtin_names;

#[test]
fn disguised_complexes_match_their_pieces() {
    for seed in 1000..1150u64 {
        let n = 1 + (seed % 3) as usize;
        let pieces = 1 + (seed % 9) as usize;
        let (c, expected) = disguised_complex(seed, n, pieces);
        if let Err(e) = agrees_with(&c, &expected) {
            panic!("seed {seed}: {e}");
        }
        if let Err(e) = property_suite(&c, Symmetries::default()) {
            panic!("seed {seed}: {e}");
        }
    }
}

#[test]
fn small_builtins_pass_the_property_suite() {
    for name in builtin_names().iter().filter(|n| **n != "sawai-yamada") {
        if let Err(e) = common::builtin_suite(name) {
            panic!("{name}: {e}");
        }
    }
}
