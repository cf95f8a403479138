//! Double-occurrence words: parsing, equivalence, canonical forms, and the
//! word-level surgery operations.
//!
//! A double-occurrence word (DOW) contains every symbol exactly twice. Two
//! DOWs are equivalent when one is obtained from the other by renaming the
//! symbols, rotating cyclically, and/or reversing; equivalence classes are in
//! one-to-one correspondence with isomorphism classes of the graphs they
//! describe. The canonical representative of a class is the lexicographic
//! minimum over all rotations and the reversal, each relabeled so that first
//! occurrences read `1, 2, 3, ...`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Symbols are positive integers; `0` is never a valid symbol.
pub type Symbol = u32;

/// A double-occurrence word. Every symbol in `letters` occurs exactly twice;
/// the empty word is valid and describes the trivial graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dow {
    letters: Vec<Symbol>,
}

impl Dow {
    /// Validates that every symbol is positive and occurs exactly twice.
    pub fn new(letters: Vec<Symbol>) -> Result<Self> {
        let mut counts: HashMap<Symbol, usize> = HashMap::new();
        for &s in &letters {
            if s == 0 {
                return Err(Error::NonPositiveSymbol("0".into()));
            }
            *counts.entry(s).or_insert(0) += 1;
        }
        for (&symbol, &count) in &counts {
            if count != 2 {
                return Err(Error::NotDoubleOccurrence { symbol, count });
            }
        }
        Ok(Dow { letters })
    }

    pub fn empty() -> Self {
        Dow { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    /// Word length, `2n` for a word of `n` symbols.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of distinct symbols (the size of the graph).
    pub fn symbol_count(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn max_symbol(&self) -> Symbol {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    /// Distinct symbols in increasing order.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut syms: Vec<Symbol> = self.letters.clone();
        syms.sort_unstable();
        syms.dedup();
        syms
    }

    /// The two positions of `symbol`, in increasing order.
    pub fn occurrences(&self, symbol: Symbol) -> Option<(usize, usize)> {
        let mut first = None;
        for (i, &s) in self.letters.iter().enumerate() {
            if s == symbol {
                match first {
                    None => first = Some(i),
                    Some(p) => return Some((p, i)),
                }
            }
        }
        None
    }

    /// Cyclic rotation starting at position `r`.
    pub fn rotated(&self, r: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let r = r % self.len();
        let mut letters = Vec::with_capacity(self.len());
        letters.extend_from_slice(&self.letters[r..]);
        letters.extend_from_slice(&self.letters[..r]);
        Dow { letters }
    }

    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Dow { letters }
    }

    /// Relabels so that first occurrences of symbols read `1, 2, 3, ...`.
    pub fn relabeled_ascending(&self) -> Self {
        let mut map: HashMap<Symbol, Symbol> = HashMap::new();
        let mut next: Symbol = 1;
        let letters = self
            .letters
            .iter()
            .map(|&s| {
                *map.entry(s).or_insert_with(|| {
                    let label = next;
                    next += 1;
                    label
                })
            })
            .collect();
        Dow { letters }
    }

    /// True when first occurrences of symbols read `1, 2, 3, ...`.
    pub fn is_ascending_first_occurrence(&self) -> bool {
        let mut next: Symbol = 1;
        for &s in &self.letters {
            if s == next {
                next += 1;
            } else if s > next {
                return false;
            }
        }
        true
    }

    /// The canonical representative of this word's equivalence class.
    pub fn canonicalize(&self) -> CanonicalDow {
        if self.is_empty() {
            return CanonicalDow(Dow::empty());
        }
        // Work on the compact relabeling so symbols are 1..=n.
        let base = self.relabeled_ascending();
        let n = base.symbol_count();
        let len = base.len();
        let reversed = base.reversed();
        let mut best = base.letters.clone();
        let mut map = vec![0u32; n + 1];
        let mut candidate = vec![0u32; len];
        for source in [&base, &reversed] {
            for r in 0..len {
                map.iter_mut().for_each(|m| *m = 0);
                let mut next: Symbol = 1;
                for (k, slot) in candidate.iter_mut().enumerate() {
                    let s = source.letters[(r + k) % len] as usize;
                    if map[s] == 0 {
                        map[s] = next;
                        next += 1;
                    }
                    *slot = map[s];
                }
                if candidate < best {
                    best.copy_from_slice(&candidate);
                }
            }
        }
        CanonicalDow(Dow { letters: best })
    }

    /// True iff this word equals its own canonical form. Faster than
    /// materializing `canonicalize` because candidates are compared lazily.
    pub fn is_canonical_form(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let len = self.len();
        let n = self.symbol_count();
        if self.max_symbol() as usize != n {
            return false; // not an ascending-first-occurrence relabeling
        }
        let reversed = self.reversed();
        let mut map = vec![0u32; n + 1];
        for source in [self, &reversed] {
            for r in 0..len {
                map.iter_mut().for_each(|m| *m = 0);
                let mut next: Symbol = 1;
                for k in 0..len {
                    let s = source.letters[(r + k) % len] as usize;
                    if map[s] == 0 {
                        map[s] = next;
                        next += 1;
                    }
                    match map[s].cmp(&self.letters[k]) {
                        std::cmp::Ordering::Less => return false,
                        std::cmp::Ordering::Greater => break,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
        }
        true
    }

    /// True iff the two words are related by renaming, rotation and/or reversal.
    pub fn equivalent(&self, other: &Dow) -> bool {
        self.len() == other.len() && self.canonicalize() == other.canonicalize()
    }

    /// True iff some word equivalent to this one is a concatenation of two
    /// nonempty DOWs. Equivalently, some cyclic interval shorter than the
    /// whole word is closed under the pairing.
    pub fn is_reducible(&self) -> bool {
        let len = self.len();
        if len < 4 {
            return false;
        }
        let max = self.max_symbol() as usize;
        let mut inside = vec![0u32; max + 1];
        let mut stamp = vec![usize::MAX; max + 1];
        for start in 0..len {
            let mut open = 0usize;
            for k in 0..len - 1 {
                let s = self.letters[(start + k) % len] as usize;
                if stamp[s] != start {
                    stamp[s] = start;
                    inside[s] = 0;
                }
                if inside[s] == 0 {
                    inside[s] = 1;
                    open += 1;
                } else {
                    inside[s] = 2;
                    open -= 1;
                }
                if open == 0 && k > 0 {
                    return true;
                }
            }
        }
        false
    }

    /// True iff repeated removal of cyclically adjacent equal pairs reduces
    /// the word to the empty word. Adjacent pairs of distinct symbols never
    /// overlap, so greedy removal to a fixpoint is order-independent.
    pub fn is_loop_nested(&self) -> bool {
        self.loop_nesting_core().is_empty()
    }

    /// Reduces by cyclically adjacent pair removal to a fixpoint and returns
    /// the remaining core (empty iff the word is loop-nested).
    pub fn loop_nesting_core(&self) -> Dow {
        let mut w = self.letters.clone();
        loop {
            let before = w.len();
            let mut i = 0;
            while i < w.len() {
                let len = w.len();
                if len < 2 {
                    break;
                }
                let j = (i + 1) % len;
                if i != j && w[i] == w[j] {
                    if j > i {
                        w.remove(j);
                        w.remove(i);
                    } else {
                        w.remove(i);
                        w.remove(j);
                    }
                } else {
                    i += 1;
                }
            }
            if w.len() == before {
                return Dow { letters: w };
            }
        }
    }

    /// Inserts a fresh adjacent pair `aa` at `position` (0..=len). The fresh
    /// symbol is `max_symbol() + 1`.
    pub fn insert_loop(&self, position: usize) -> Result<Dow> {
        if position > self.len() {
            return Err(Error::PositionOutOfRange { position, len: self.len() });
        }
        let a = self.max_symbol() + 1;
        let mut letters = self.letters.clone();
        letters.splice(position..position, [a, a]);
        Ok(Dow { letters })
    }

    /// Joins two words through a fresh figure-eight symbol: the result is
    /// `u c v c` where `u`, `v` are the rotations of the operands at the cut
    /// indices and `v` is relabeled into the symbol range above `u`.
    pub fn cross_sum(&self, other: &Dow, cut1: usize, cut2: usize) -> Result<Dow> {
        check_cut(cut1, self.len())?;
        check_cut(cut2, other.len())?;
        let u = self.rotated(cut1);
        let shift = self.max_symbol();
        let v = other.rotated(cut2).relabeled_ascending();
        let c = shift + v.max_symbol() + 1;
        let mut letters = u.letters;
        letters.push(c);
        letters.extend(v.letters.iter().map(|&s| s + shift));
        letters.push(c);
        Ok(Dow { letters })
    }

    /// Inserts the block `a b a b` of two fresh symbols at `position`,
    /// splicing a pretzel into the edge at that slot.
    pub fn insert_pretzel(&self, position: usize) -> Result<Dow> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        if position > self.len() {
            return Err(Error::PositionOutOfRange { position, len: self.len() });
        }
        let a = self.max_symbol() + 1;
        let b = a + 1;
        let mut letters = self.letters.clone();
        letters.splice(position..position, [a, b, a, b]);
        Ok(Dow { letters })
    }

    /// Adds a rigid vertex crossing the edges at slots `pos1` and `pos2` by
    /// inserting one fresh symbol at both slots. Equal slots cross an edge
    /// with itself (a loop).
    pub fn insert_vertex(&self, pos1: usize, pos2: usize) -> Result<Dow> {
        for position in [pos1, pos2] {
            if position > self.len() {
                return Err(Error::PositionOutOfRange { position, len: self.len() });
            }
        }
        let (lo, hi) = if pos1 <= pos2 { (pos1, pos2) } else { (pos2, pos1) };
        let a = self.max_symbol() + 1;
        let mut letters = self.letters.clone();
        letters.insert(hi, a);
        letters.insert(lo, a);
        Ok(Dow { letters })
    }

    /// Deletes both occurrences of `symbol`.
    pub fn remove_vertex(&self, symbol: Symbol) -> Result<Dow> {
        if !self.letters.contains(&symbol) {
            return Err(Error::SymbolAbsent(symbol));
        }
        let letters = self.letters.iter().copied().filter(|&s| s != symbol).collect();
        Ok(Dow { letters })
    }
}

fn check_cut(cut: usize, len: usize) -> Result<()> {
    if cut == 0 || cut < len {
        Ok(())
    } else {
        Err(Error::CutOutOfRange { cut, len })
    }
}

impl fmt::Display for Dow {
    /// Space-separated decimal tokens; the empty word prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Dow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dow({self})")
    }
}

impl FromStr for Dow {
    type Err = Error;

    /// Accepts whitespace/comma-separated decimal tokens, or a compact digit
    /// string like `121323` when every symbol is a single digit 1-9.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Dow::new(Vec::new());
        }
        let has_separator = trimmed.contains(',') || trimmed.chars().any(char::is_whitespace);
        if !has_separator
            && trimmed.len() > 1
            && trimmed.chars().all(|c| c.is_ascii_digit() && c != '0')
        {
            // compact form: one symbol per digit 1-9
            let letters = trimmed.chars().map(|c| c.to_digit(10).unwrap()).collect();
            return Dow::new(letters);
        }
        let mut letters = Vec::new();
        let pieces: Vec<&str> = if trimmed.contains(',') {
            trimmed.split(',').collect()
        } else {
            vec![trimmed]
        };
        for piece in pieces {
            if piece.trim().is_empty() {
                return Err(Error::EmptyToken);
            }
            for token in piece.split_whitespace() {
                let symbol: u64 = token
                    .parse()
                    .map_err(|_| Error::InvalidToken(token.into()))?;
                if symbol == 0 {
                    return Err(Error::NonPositiveSymbol(token.into()));
                }
                let symbol =
                    u32::try_from(symbol).map_err(|_| Error::InvalidToken(token.into()))?;
                letters.push(symbol);
            }
        }
        Dow::new(letters)
    }
}

/// A word in canonical form: ascending first occurrences, lexicographically
/// minimal among all rotations and the reversal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalDow(Dow);

impl CanonicalDow {
    /// Wraps a word already known to be in canonical form.
    pub(crate) fn from_canonical_unchecked(word: Dow) -> CanonicalDow {
        debug_assert!(word.is_canonical_form());
        CanonicalDow(word)
    }

    pub fn as_dow(&self) -> &Dow {
        &self.0
    }

    pub fn into_dow(self) -> Dow {
        self.0
    }

    pub fn symbol_count(&self) -> usize {
        self.0.symbol_count()
    }
}

impl fmt::Display for CanonicalDow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for CanonicalDow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalDow({})", self.0)
    }
}

impl From<CanonicalDow> for Dow {
    fn from(c: CanonicalDow) -> Dow {
        c.0
    }
}

impl std::ops::Deref for CanonicalDow {
    type Target = Dow;
    fn deref(&self) -> &Dow {
        &self.0
    }
}
