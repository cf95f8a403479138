//! Enumeration of canonical double-occurrence words of a given size.
//!
//! Words in ascending-first-occurrence form are generated in lexicographic
//! order by a successor function, and each is kept iff it equals its own
//! canonical form. The stream therefore emits one representative per
//! equivalence class, in increasing canonical order, and can resume after any
//! previously emitted word — the basis for checkpointed surveys and for
//! splitting the range across workers.

use crate::dow::{CanonicalDow, Dow, Symbol};
use crate::{Error, Result};

/// Iterator over all canonical words with exactly `n` symbols, in
/// lexicographic order.
pub struct CanonicalWords {
    n: usize,
    /// Next ascending-first-occurrence candidate to examine, if any.
    state: State,
}

enum State {
    /// The empty word for `n == 0`, not yet emitted.
    Trivial,
    Word(Vec<Symbol>),
    Done,
}

impl CanonicalWords {
    /// Streams every canonical word of `n` symbols starting from the smallest.
    pub fn new(n: usize) -> Self {
        let state = if n == 0 {
            State::Trivial
        } else {
            // 1 1 2 2 ... n n is the least ascending-first-occurrence word
            let mut word = Vec::with_capacity(2 * n);
            for s in 1..=n as Symbol {
                word.push(s);
                word.push(s);
            }
            State::Word(word)
        };
        CanonicalWords { n, state }
    }

    /// Streams the canonical words strictly after `word`, which must itself
    /// be in canonical form (e.g. the trailer of a checkpoint).
    pub fn resume_after(n: usize, word: &Dow) -> Result<Self> {
        if word.symbol_count() != n || !word.is_canonical_form() {
            return Err(Error::BadResumeWord(word.to_string()));
        }
        let state = if n == 0 {
            State::Done
        } else {
            let mut letters = word.letters().to_vec();
            if next_ascending(&mut letters, n) {
                State::Word(letters)
            } else {
                State::Done
            }
        };
        Ok(CanonicalWords { n, state })
    }
}

impl Iterator for CanonicalWords {
    type Item = CanonicalDow;

    fn next(&mut self) -> Option<CanonicalDow> {
        loop {
            match std::mem::replace(&mut self.state, State::Done) {
                State::Trivial => return Some(Dow::empty().canonicalize()),
                State::Done => return None,
                State::Word(mut word) => {
                    let candidate = Dow::new(word.clone()).expect("generator emits valid words");
                    let canonical = candidate.is_canonical_form();
                    if next_ascending(&mut word, self.n) {
                        self.state = State::Word(word);
                    }
                    if canonical {
                        return Some(CanonicalDow::from_canonical_unchecked(candidate));
                    }
                }
            }
        }
    }
}

/// Advances `word` to the next ascending-first-occurrence double-occurrence
/// word with exactly `n` symbols, in place. Returns false when `word` was the
/// last one.
fn next_ascending(word: &mut [Symbol], n: usize) -> bool {
    let len = 2 * n;
    debug_assert_eq!(word.len(), len);
    // counts[s] = occurrences of s in the prefix under consideration
    let mut counts = vec![0u8; n + 1];
    for &s in word.iter() {
        counts[s as usize] += 1;
    }
    for i in (1..len).rev() {
        counts[word[i] as usize] -= 1;
        // prefix is word[..i]
        let used = (1..=n).take_while(|&s| counts[s] > 0).count();
        debug_assert!((1..=n).all(|s| counts[s] == 0 || s <= used));
        let remaining = len - i - 1;
        // candidates greater than word[i]: open symbols, then one fresh symbol
        let mut candidate = None;
        for s in (word[i] + 1)..=(used as Symbol) {
            if counts[s as usize] == 1 && completable(&counts, s, used, n, remaining) {
                candidate = Some(s);
                break;
            }
        }
        if candidate.is_none() && used < n {
            let fresh = used as Symbol + 1;
            if fresh > word[i] && completable(&counts, fresh, used, n, remaining) {
                candidate = Some(fresh);
            }
        }
        if let Some(c) = candidate {
            word[i] = c;
            counts[c as usize] += 1;
            fill_least(word, &mut counts, i + 1, n);
            return true;
        }
    }
    false
}

/// Whether placing `next` after a prefix with occurrence counts `counts`
/// still permits completing to a full word on exactly `n` symbols.
fn completable(counts: &[u8], next: Symbol, used: usize, n: usize, remaining: usize) -> bool {
    let mut open = (1..=used).filter(|&s| counts[s] == 1).count();
    let used_after = if counts[next as usize] == 0 { used + 1 } else { used };
    if counts[next as usize] == 0 {
        open += 1;
    } else {
        open -= 1;
    }
    open <= remaining
        && (remaining - open).is_multiple_of(2)
        && used_after + (remaining - open) / 2 == n
}

/// Completes `word[from..]` with the lexicographically least feasible suffix.
fn fill_least(word: &mut [Symbol], counts: &mut [u8], from: usize, n: usize) {
    let len = word.len();
    for (i, slot) in word.iter_mut().enumerate().skip(from) {
        let used = (1..=n).take_while(|&s| counts[s] > 0).count();
        let remaining = len - i - 1;
        let mut placed = false;
        for s in 1..=(used as Symbol) {
            if counts[s as usize] == 1 && completable(counts, s, used, n, remaining) {
                *slot = s;
                counts[s as usize] += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            let fresh = used as Symbol + 1;
            debug_assert!(used < n && completable(counts, fresh, used, n, remaining));
            *slot = fresh;
            counts[fresh as usize] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(n: usize) -> Vec<CanonicalDow> {
        CanonicalWords::new(n).collect()
    }

    #[test]
    fn tiny_counts() {
        assert_eq!(all(0).len(), 1);
        assert_eq!(all(1).len(), 1);
        let two: Vec<String> = all(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(two, ["1 1 2 2", "1 2 1 2"]);
        assert_eq!(all(3).len(), 5);
    }

    #[test]
    fn classes_are_canonical_sorted_unique() {
        for n in 0..=5 {
            let words = all(n);
            for w in &words {
                assert!(w.as_dow().is_canonical_form(), "{w}");
                assert_eq!(w.symbol_count(), n);
            }
            let mut sorted = words.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, words);
        }
    }

    #[test]
    fn covers_every_class() {
        // every ascending-first-occurrence word's canonical form shows up
        let n = 4;
        let mut expected: Vec<CanonicalDow> = Vec::new();
        let mut word: Vec<Symbol> = (1..=n as Symbol).flat_map(|s| [s, s]).collect();
        loop {
            expected.push(Dow::new(word.clone()).unwrap().canonicalize());
            if !next_ascending(&mut word, n) {
                break;
            }
        }
        expected.sort();
        expected.dedup();
        assert_eq!(expected, all(n));
    }

    #[test]
    fn resume_matches_fresh_run() {
        let words = all(4);
        let pivot = &words[words.len() / 2];
        let resumed: Vec<CanonicalDow> =
            CanonicalWords::resume_after(4, pivot.as_dow()).unwrap().collect();
        assert_eq!(resumed, words[words.len() / 2 + 1..]);
        assert!(CanonicalWords::resume_after(4, &"1 2 2 1 3 3 4 4".parse().unwrap()).is_err());
    }

    #[test]
    fn ascending_generator_counts_double_factorial() {
        // (2n-1)!! ascending-first-occurrence words
        let mut word: Vec<Symbol> = (1..=4).flat_map(|s| [s, s]).collect();
        let mut count = 1u64;
        while next_ascending(&mut word, 4) {
            count += 1;
        }
        assert_eq!(count, 105);
    }
}
