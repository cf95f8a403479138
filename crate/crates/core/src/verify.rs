//! Runtime property checks: every structural fact the library relies on,
//! packaged as named pass/fail checks for the `verify` command and the
//! acceptance tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dow::Dow;
use crate::enumerate::CanonicalWords;
use crate::families;
use crate::graph::AssemblyGraph;
use crate::ribbon::{self, EmbeddingChoice, GenusRange, RibbonOptions};
use crate::Result;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str, cases: u64) -> CheckResult {
        CheckResult { name, passed: true, detail: format!("checked {cases} cases") }
    }

    fn fail(name: &'static str, detail: String) -> CheckResult {
        CheckResult { name, passed: false, detail }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Exhaustive checks run over all classes up to this size (where a check
    /// states a smaller bound, the smaller bound wins).
    pub max_n: usize,
    /// Trials for the randomized vertex-insertion check.
    pub trials: u64,
    /// RNG seed; fixed so output is reproducible.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: 5, trials: 10_000, seed: 0x5eed }
    }
}

fn each_class(max_n: usize, mut f: impl FnMut(&Dow) -> Result<()>) -> Result<u64> {
    let mut cases = 0;
    for n in 1..=max_n {
        for word in CanonicalWords::new(n) {
            f(word.as_dow())?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn choices(n: usize) -> impl Iterator<Item = EmbeddingChoice> {
    (0..1u64 << n).map(move |bits| EmbeddingChoice::from_bits(bits, n).expect("in range"))
}

fn run(name: &'static str, body: impl FnOnce() -> std::result::Result<u64, String>) -> CheckResult {
    match body() {
        Ok(cases) => CheckResult::pass(name, cases),
        Err(detail) => CheckResult::fail(name, detail),
    }
}

/// b and n have the same parity in every embedding.
pub fn check_boundary_parity(max_n: usize) -> CheckResult {
    run("boundary-parity", || {
        let mut cases = 0;
        each_class(max_n, |word| {
            let g = AssemblyGraph::build(word);
            for choice in choices(g.n()) {
                let b = ribbon::trace(&g, &choice)?.b();
                if !(b as usize + g.n()).is_multiple_of(2) {
                    return Err(crate::Error::InvalidParameter(format!(
                        "parity violated on '{word}' choice {choice}: b={b}"
                    )));
                }
                cases += 1;
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
    })
}

/// Achieved genera always form a consecutive interval.
pub fn check_consecutiveness(max_n: usize) -> CheckResult {
    run("range-consecutive", || {
        let mut cases = 0;
        each_class(max_n.min(6), |word| {
            let g = AssemblyGraph::build(word);
            let mut genera: Vec<u32> = choices(g.n())
                .map(|c| ribbon::genus(&g, &c).expect("traceable"))
                .collect();
            genera.sort_unstable();
            genera.dedup();
            for pair in genera.windows(2) {
                if pair[1] != pair[0] + 1 {
                    return Err(crate::Error::InvalidParameter(format!(
                        "gap in achieved genera of '{word}': {genera:?}"
                    )));
                }
            }
            cases += 1;
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
    })
}

/// One connection change moves b by exactly 0 or ±2 (so genus by at most 1).
pub fn check_flip_locality(max_n: usize) -> CheckResult {
    run("connection-change-locality", || {
        let mut cases = 0;
        each_class(max_n, |word| {
            let g = AssemblyGraph::build(word);
            for choice in choices(g.n()) {
                let b = ribbon::trace(&g, &choice)?.b();
                for v in 0..g.n() {
                    let flipped = ribbon::trace(&g, &choice.flipped(v)?)?.b();
                    let delta = b.abs_diff(flipped);
                    if delta != 0 && delta != 2 {
                        return Err(crate::Error::InvalidParameter(format!(
                            "flip of v{} on '{word}' moved b by {delta}",
                            v + 1
                        )));
                    }
                    cases += 1;
                }
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
    })
}

/// Appending a fresh loop anywhere preserves the genus range.
pub fn check_loop_invariance(max_n: usize) -> CheckResult {
    run("loop-append-invariance", || {
        let mut cases = 0;
        each_class(max_n.min(5), |word| {
            let expect = ribbon::genus_range(&AssemblyGraph::build(word))?;
            for position in 0..=word.len() {
                let bigger = word.insert_loop(position)?;
                let got = ribbon::genus_range(&AssemblyGraph::build(&bigger))?;
                if got != expect {
                    return Err(crate::Error::InvalidParameter(format!(
                        "loop at {position} changed range of '{word}': {expect} -> {got}"
                    )));
                }
                cases += 1;
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
    })
}

/// Cross sums add genus ranges endpoint-wise, for every pair of cut points.
pub fn check_cross_sum_additivity(max_n: usize) -> CheckResult {
    run("cross-sum-additivity", || {
        let limit = max_n.min(3);
        let mut words: Vec<Dow> = vec![Dow::empty()];
        for n in 1..=limit {
            words.extend(CanonicalWords::new(n).map(|w| w.into_dow()));
        }
        let mut cases = 0;
        for left in &words {
            let left_range = ribbon::genus_range(&AssemblyGraph::build(left))
                .map_err(|e| e.to_string())?;
            for right in &words {
                let right_range = ribbon::genus_range(&AssemblyGraph::build(right))
                    .map_err(|e| e.to_string())?;
                let expect = GenusRange::new(
                    left_range.min + right_range.min,
                    left_range.max + right_range.max,
                );
                for cut1 in 0..left.len().max(1) {
                    for cut2 in 0..right.len().max(1) {
                        let joined = left.cross_sum(right, cut1, cut2).map_err(|e| e.to_string())?;
                        let got = ribbon::genus_range(&AssemblyGraph::build(&joined))
                            .map_err(|e| e.to_string())?;
                        if got != expect {
                            return Err(format!(
                                "cross sum of '{left}' and '{right}' at ({cut1},{cut2}) gave {got}, expected {expect}"
                            ));
                        }
                        cases += 1;
                    }
                }
            }
        }
        Ok(cases)
    })
}

/// In every embedding of a planar graph, every edge is traced by two distinct
/// boundary components.
pub fn check_planar_edge_tracing(max_n: usize) -> CheckResult {
    run("planar-edge-two-components", || {
        let mut cases = 0;
        each_class(max_n.min(5), |word| {
            let g = AssemblyGraph::build(word);
            if ribbon::genus_range(&g)?.min != 0 {
                return Ok(());
            }
            for choice in choices(g.n()) {
                let decomposition = ribbon::trace(&g, &choice)?;
                for edge in 1..=g.edge_count() {
                    let (a, b) = decomposition.edge_components(edge)?;
                    if a == b {
                        return Err(crate::Error::InvalidParameter(format!(
                            "edge e{edge} of planar '{word}' single-traced under {choice}"
                        )));
                    }
                    cases += 1;
                }
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
    })
}

/// No graph with 2n-1 vertices has genus range [0,n] or [n,n].
pub fn check_odd_size_exclusions(max_n: usize) -> CheckResult {
    run("odd-size-exclusions", || {
        let mut cases = 0;
        for m in (1..=(2 * max_n - 1).min(7)).step_by(2) {
            let top = m.div_ceil(2) as u32;
            for word in CanonicalWords::new(m) {
                let range = ribbon::genus_range(&AssemblyGraph::build(word.as_dow()))
                    .map_err(|e| e.to_string())?;
                if range == GenusRange::new(0, top) || range == GenusRange::new(top, top) {
                    return Err(format!("'{word}' with {m} vertices has range {range}"));
                }
                cases += 1;
            }
        }
        Ok(cases)
    })
}

/// A word is loop-nested exactly when its genus range is [0,0].
pub fn check_loop_nested_iff_range_zero(max_n: usize) -> CheckResult {
    run("loop-nested-iff-range-zero", || {
        let mut cases = 0;
        each_class(max_n.min(6), |word| {
            let nested = word.is_loop_nested();
            let zero = ribbon::genus_range(&AssemblyGraph::build(word))? == GenusRange::new(0, 0);
            if nested != zero {
                return Err(crate::Error::InvalidParameter(format!(
                    "'{word}': loop-nested={nested} but range-zero={zero}"
                )));
            }
            cases += 1;
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
    })
}

/// The constructed multiboundary choice always yields b >= 2.
pub fn check_multiboundary(max_n: usize) -> CheckResult {
    run("multiboundary-construction", || {
        let mut cases = 0;
        each_class(max_n.min(6), |word| {
            let g = AssemblyGraph::build(word);
            let choice = ribbon::construct_multiboundary(&g);
            let b = ribbon::trace(&g, &choice)?.b();
            if b < 2 {
                return Err(crate::Error::InvalidParameter(format!(
                    "multiboundary choice for '{word}' has b={b}"
                )));
            }
            cases += 1;
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
    })
}

/// Greedy pair removal reaches the empty word iff some removal order does.
pub fn check_pair_removal_order_independence(max_n: usize) -> CheckResult {
    fn backtracking_nestable(word: &Dow) -> bool {
        fn go(letters: &[u32], seen: &mut std::collections::HashSet<Vec<u32>>) -> bool {
            if letters.is_empty() {
                return true;
            }
            if !seen.insert(letters.to_vec()) {
                return false;
            }
            let len = letters.len();
            for i in 0..len {
                let j = (i + 1) % len;
                if i != j && letters[i] == letters[j] {
                    let rest: Vec<u32> = (0..len)
                        .filter(|&k| k != i && k != j)
                        .map(|k| letters[k])
                        .collect();
                    if go(&rest, seen) {
                        return true;
                    }
                }
            }
            false
        }
        go(word.letters(), &mut std::collections::HashSet::new())
    }

    run("pair-removal-order-independence", || {
        let mut cases = 0;
        each_class(max_n.min(6), |word| {
            let greedy = word.is_loop_nested();
            let exhaustive = backtracking_nestable(word);
            if greedy != exhaustive {
                return Err(crate::Error::InvalidParameter(format!(
                    "'{word}': greedy={greedy}, backtracking={exhaustive}"
                )));
            }
            cases += 1;
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
    })
}

/// Tangled cord: range matches the closed formula and every choice's b lies
/// in {1,3} (odd sizes) or {2,4} (even sizes), for sizes 3..=12.
pub fn check_tangled_cord(up_to: usize) -> CheckResult {
    run("tangled-cord-range", || {
        let mut cases = 0;
        for n in 3..=up_to.max(3) {
            let word = families::tangled_cord(n).map_err(|e| e.to_string())?;
            let g = AssemblyGraph::build(&word);
            let opts = RibbonOptions { cap: n, ..Default::default() };
            let profile = ribbon::genus_range_profile_with(&g, &opts).map_err(|e| e.to_string())?;
            let formula = families::tangled_cord_range(n).map_err(|e| e.to_string())?;
            if profile.range != formula {
                return Err(format!("T_{n}: computed {} vs formula {formula}", profile.range));
            }
            let allowed: &[u32] = if n % 2 == 1 { &[1, 3] } else { &[2, 4] };
            for &b in profile.boundary_counts.keys() {
                if !allowed.contains(&b) {
                    return Err(format!("T_{n} attains b={b}, outside {allowed:?}"));
                }
            }
            cases += 1 << n;
        }
        Ok(cases)
    })
}

/// Repeat words on odd sizes have range [0,1].
pub fn check_repeat_words(up_to: usize) -> CheckResult {
    run("repeat-word-range", || {
        let mut cases = 0;
        let mut n = 3;
        while n <= up_to.max(3) {
            let word = families::repeat_word(n).map_err(|e| e.to_string())?;
            let opts = RibbonOptions { cap: n, ..Default::default() };
            let got = ribbon::genus_range_with(&AssemblyGraph::build(&word), &opts)
                .map_err(|e| e.to_string())?;
            if got != GenusRange::new(0, 1) {
                return Err(format!("repeat word of {n} symbols has range {got}"));
            }
            cases += 1 << n;
            n += 2;
        }
        Ok(cases)
    })
}

/// Uniformly random double-occurrence word with `n` symbols.
fn random_word(n: usize, rng: &mut impl Rng) -> Dow {
    let mut slots: Vec<usize> = (0..2 * n).collect();
    slots.shuffle(rng);
    let mut letters = vec![0u32; 2 * n];
    for (pair, chunk) in slots.chunks(2).enumerate() {
        letters[chunk[0]] = pair as u32 + 1;
        letters[chunk[1]] = pair as u32 + 1;
    }
    Dow::new(letters).expect("pairing is a double occurrence word")
}

/// Randomized vertex-insertion case table: crossing two edges traced by t
/// components moves b to a value dictated by t, for both connections at the
/// new vertex:
///   t=1 -> {b+1, b+3};  t=2 -> {b-1, b+1};  t=3 -> {b-1};  t=4 -> {b-3}.
pub fn check_vertex_insertion_cases(trials: u64, seed: u64) -> CheckResult {
    run("vertex-insertion-cases", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cases = 0;
        for _ in 0..trials {
            let n = rng.random_range(1..=5usize);
            let word = random_word(n, &mut rng);
            let g = AssemblyGraph::build(&word);
            let bits = rng.random_range(0..1u64 << n);
            let choice = EmbeddingChoice::from_bits(bits, n).expect("in range");
            let decomposition = ribbon::trace(&g, &choice).map_err(|e| e.to_string())?;
            let b = decomposition.b();
            // two distinct edges, hence distinct slots in 1..=2n
            let p1 = rng.random_range(1..=2 * n);
            let mut p2 = rng.random_range(1..=2 * n);
            while p2 == p1 {
                p2 = rng.random_range(1..=2 * n);
            }
            let (p1, p2) = (p1.min(p2), p1.max(p2));
            let mut components = Vec::new();
            for edge in [p1, p2] {
                let (x, y) = decomposition.edge_components(edge).map_err(|e| e.to_string())?;
                components.push(x);
                components.push(y);
            }
            components.sort_unstable();
            components.dedup();
            let t = components.len();
            let allowed: Vec<i64> = match t {
                1 => vec![b as i64 + 1, b as i64 + 3],
                2 => vec![b as i64 - 1, b as i64 + 1],
                3 => vec![b as i64 - 1],
                4 => vec![b as i64 - 3],
                _ => unreachable!("at most four components trace two edges"),
            };
            let bigger = word.insert_vertex(p1, p2).map_err(|e| e.to_string())?;
            let g2 = AssemblyGraph::build(&bigger);
            // carry the same physical connections over to the old vertices;
            // bits are relative to each graph's own default attachment
            let physical = bits ^ g.base_flip_mask();
            let old_bits = (physical ^ g2.base_flip_mask()) & ((1 << n) - 1);
            for new_bit in 0..2u64 {
                let choice2 = EmbeddingChoice::from_bits(old_bits | new_bit << n, n + 1)
                    .expect("in range");
                let b2 = ribbon::trace(&g2, &choice2).map_err(|e| e.to_string())?.b() as i64;
                if !allowed.contains(&b2) {
                    return Err(format!(
                        "crossing e{p1},e{p2} of '{word}' (choice {choice}, t={t}, b={b}) gave b'={b2}, allowed {allowed:?}"
                    ));
                }
                cases += 1;
            }
        }
        Ok(cases)
    })
}

/// Runs every check.
pub fn run_all(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        check_boundary_parity(opts.max_n),
        check_consecutiveness(opts.max_n),
        check_flip_locality(opts.max_n),
        check_loop_invariance(opts.max_n),
        check_cross_sum_additivity(opts.max_n),
        check_planar_edge_tracing(opts.max_n),
        check_odd_size_exclusions(opts.max_n.max(4)),
        check_loop_nested_iff_range_zero(opts.max_n),
        check_multiboundary(opts.max_n),
        check_pair_removal_order_independence(opts.max_n),
        check_tangled_cord(12),
        check_repeat_words(11),
        check_vertex_insertion_cases(opts.trials, opts.seed),
    ]
}
