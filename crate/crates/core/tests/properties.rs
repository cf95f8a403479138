//! Cross-module property suites: the library tracer against the independent
//! oracle, invariants of the word operations under equivalence moves, and
//! determinism of the parallel survey.

mod common;

use proptest::prelude::*;

use genus_core::dow::Dow;
use genus_core::graph::AssemblyGraph;
use genus_core::ribbon::{self, EmbeddingChoice, GenusRange};
use genus_core::survey;
use genus_core::CanonicalWords;

fn dow(text: &str) -> Dow {
    text.parse().unwrap()
}

fn library_multiset(word: &Dow) -> Vec<u32> {
    let g = AssemblyGraph::build(word);
    let profile = ribbon::genus_range_profile(&g).unwrap();
    let mut counts = Vec::new();
    for (&b, &how_many) in &profile.boundary_counts {
        counts.extend(std::iter::repeat_n(b, how_many as usize));
    }
    counts
}

#[test]
fn tracer_matches_oracle_on_all_small_classes() {
    for n in 1..=5 {
        for word in CanonicalWords::new(n) {
            let letters = word.letters();
            assert_eq!(
                library_multiset(word.as_dow()),
                common::oracle_boundary_multiset(letters),
                "boundary multiset of {word}"
            );
            let range = ribbon::genus_range(&AssemblyGraph::build(word.as_dow())).unwrap();
            assert_eq!(
                (range.min, range.max),
                common::oracle_genus_range(letters),
                "genus range of {word}"
            );
        }
    }
}

#[test]
fn tracer_matches_oracle_on_witnesses() {
    for text in ["123245153646", "12314324", "1234342515", "123451256346", "12132434"] {
        let word = dow(text);
        assert_eq!(library_multiset(&word), common::oracle_boundary_multiset(word.letters()));
    }
}

// Frozen values computed with the oracle: splicing a pretzel into the `1212`
// word keeps its bottom genus (some embedding single-traces the spliced
// edge), while a planar word's edges are always double-traced so every
// pretzel insertion lifts the bottom.
#[test]
fn pretzel_insertion_derived_values() {
    let lifted = dow("1212").insert_pretzel(0).unwrap();
    assert_eq!(lifted, dow("34341212"));
    assert_eq!(common::oracle_genus_range(lifted.letters()), (1, 2));
    let range = ribbon::genus_range(&AssemblyGraph::build(&lifted)).unwrap();
    assert_eq!(range, GenusRange::new(1, 2));

    let planar = dow("1122");
    for position in 0..=planar.len() {
        let lifted = planar.insert_pretzel(position).unwrap();
        let range = ribbon::genus_range(&AssemblyGraph::build(&lifted)).unwrap();
        assert_eq!(range, GenusRange::new(1, 1), "position {position}");
    }
}

// Frozen value: over the four embeddings of `1212`, edge e1 is single-traced
// in exactly two of them.
#[test]
fn pretzel_edge_cardinalities() {
    let g = AssemblyGraph::build(&dow("1212"));
    let mut cardinalities: Vec<usize> = (0..4)
        .map(|bits| {
            let choice = EmbeddingChoice::from_bits(bits, 2).unwrap();
            ribbon::edge_trace_components(&g, &choice, 1).unwrap().len()
        })
        .collect();
    cardinalities.sort_unstable();
    assert_eq!(cardinalities, vec![1, 1, 2, 2]);
}

#[test]
fn mirror_choice_preserves_boundary_count() {
    for n in 1..=5 {
        for word in CanonicalWords::new(n) {
            let g = AssemblyGraph::build(word.as_dow());
            for bits in 0..1u64 << n {
                let choice = EmbeddingChoice::from_bits(bits, n).unwrap();
                let mirrored = choice.complemented();
                assert_eq!(
                    ribbon::trace(&g, &choice).unwrap().b(),
                    ribbon::trace(&g, &mirrored).unwrap().b(),
                    "{word} bits {choice}"
                );
            }
        }
    }
}

#[test]
fn edge_tracing_cardinality_bounds() {
    for n in 1..=4 {
        for word in CanonicalWords::new(n) {
            let g = AssemblyGraph::build(word.as_dow());
            for bits in 0..1u64 << n {
                let choice = EmbeddingChoice::from_bits(bits, n).unwrap();
                for edge in 1..=g.edge_count() {
                    let ids = ribbon::edge_trace_components(&g, &choice, edge).unwrap();
                    assert!(ids.len() == 1 || ids.len() == 2);
                }
            }
        }
    }
}

#[test]
fn ranges_are_inherited_by_larger_sizes() {
    // every range attained at size n is attained at size n+1 (append a loop)
    let mut previous: Option<std::collections::BTreeSet<GenusRange>> = None;
    for n in 2..=7 {
        let family = survey::survey(n, 1).unwrap();
        let current: std::collections::BTreeSet<GenusRange> =
            family.range_set().into_iter().collect();
        if let Some(previous) = previous {
            assert!(previous.is_subset(&current), "size {n} lost a range");
        }
        previous = Some(current);
    }
}

#[test]
fn pair_removal_order_independent_up_to_six() {
    let check = genus_core::verify::check_pair_removal_order_independence(6);
    assert!(check.passed, "{}", check.detail);
}

#[test]
fn survey_deterministic_across_thread_counts() {
    let reference = survey::survey(5, 3).unwrap();
    for threads in [1usize, 2, 7] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let family = pool.install(|| survey::survey(5, 3).unwrap());
        assert_eq!(family, reference, "{threads} threads");
    }
}

/// Random double-occurrence words as a proptest strategy: a shuffled multiset
/// `1 1 2 2 ... n n`.
fn arb_dow(max_n: usize) -> impl Strategy<Value = Dow> {
    (1..=max_n).prop_flat_map(|n| {
        let multiset: Vec<u32> = (1..=n as u32).flat_map(|s| [s, s]).collect();
        Just(multiset).prop_shuffle().prop_map(|letters| Dow::new(letters).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_constant_on_equivalence_moves(
        word in arb_dow(6),
        rotation in 0usize..12,
        reverse in any::<bool>(),
        relabel_seed in any::<u64>(),
    ) {
        let canonical = word.canonicalize();
        let mut image = word.rotated(rotation % word.len().max(1));
        if reverse {
            image = image.reversed();
        }
        // random renaming
        let n = word.symbol_count() as u64;
        let shift = relabel_seed % n.max(1);
        let letters: Vec<u32> =
            image.letters().iter().map(|&s| ((s as u64 + shift - 1) % n + 1) as u32 + 100).collect();
        let renamed = Dow::new(letters).unwrap();
        prop_assert_eq!(renamed.canonicalize(), canonical.clone());
        // idempotence
        prop_assert_eq!(canonical.as_dow().canonicalize(), canonical);
    }

    #[test]
    fn surgery_preserves_validity(word in arb_dow(5), seed in any::<u64>()) {
        let len = word.len();
        let n = word.symbol_count();
        let p1 = (seed % (len as u64 + 1)) as usize;
        let p2 = (seed / 7 % (len as u64 + 1)) as usize;

        let looped = word.insert_loop(p1).unwrap();
        prop_assert_eq!(looped.symbol_count(), n + 1);
        prop_assert!(Dow::new(looped.letters().to_vec()).is_ok());

        let pretzeled = word.insert_pretzel(p1).unwrap();
        prop_assert_eq!(pretzeled.symbol_count(), n + 2);

        let crossed = word.insert_vertex(p1, p2).unwrap();
        prop_assert_eq!(crossed.symbol_count(), n + 1);
        let fresh = word.max_symbol() + 1;
        prop_assert_eq!(crossed.remove_vertex(fresh).unwrap(), word.clone());

        let joined = word.cross_sum(&word, p1.min(len.saturating_sub(1)), 0).unwrap();
        prop_assert_eq!(joined.symbol_count(), 2 * n + 1);
        prop_assert!(joined.is_reducible());
    }

    #[test]
    fn canonical_enumeration_contains_random_classes(word in arb_dow(4)) {
        let canonical = word.canonicalize();
        let n = word.symbol_count();
        prop_assert!(CanonicalWords::new(n).any(|w| w == canonical));
    }
}
