//! Named graph families and the constructive realization of genus ranges.
//!
//! The building blocks: loop insertion preserves the genus range; the cross
//! sum through a figure-eight vertex adds ranges; splicing a pretzel (the
//! `1212` graph, range `{1}`) into an edge lifts the top of the range by one
//! and keeps the bottom whenever some embedding traces that edge with a
//! single boundary component. Together with a handful of fixed witness words
//! these realize every range the constructions reach; requests outside that
//! family are refused rather than searched for.

use crate::dow::Dow;
use crate::graph::AssemblyGraph;
use crate::ribbon::{self, EmbeddingChoice, GenusRange, RibbonOptions};
use crate::{Error, Result};

/// Constructed words of at most this many vertices have their claimed range
/// verified exhaustively before being returned.
pub const VERIFY_CAP: usize = 16;

/// Witness words with known singleton or full ranges.
const PRETZEL: &str = "1212"; // range {1}
const GAMMA_HAT: &str = "123245153646"; // range {3}
const FULL_RANGE_2: &str = "12314324"; // range [0,2]
const FULL_RANGE_3: &str = "123451256346"; // range [0,3]
// Least canonical 8-vertex word with range [0,4], from the exhaustive survey
// (13 classes attain it). Planar words have no single-traced edges in any
// embedding, so full ranges cannot be produced by pretzel lifts; they need
// their own witnesses.
const FULL_RANGE_4: &str = "1231432456758768"; // range [0,4]

/// The tangled cord `T_n`: `1 2 1 3 2 4 3 ... (n-1)(n-2) n (n-1) n`.
///
/// `T_1 = 11`, and `T_{n+1}` replaces the final letter `n` of `T_n` by
/// `(n+1) n (n+1)`.
pub fn tangled_cord(n: usize) -> Result<Dow> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "tangled cord size must be at least 1, got {n}"
        )));
    }
    let mut letters: Vec<u32> = vec![1, 1];
    for k in 2..=n as u32 {
        let last = letters.pop().expect("nonempty");
        debug_assert_eq!(last, k - 1);
        letters.extend([k, k - 1, k]);
    }
    Dow::new(letters)
}

/// The genus range of the tangled cord by formula: `[(n-2)/2, n/2]` for even
/// `n` and `[(n-1)/2, (n+1)/2]` for odd `n`.
///
/// For `n >= 3` this agrees with exhaustive enumeration. At `n = 2` the
/// formula gives `[0,1]` although the `1212` graph's actual range is `{1}`;
/// the formula value is returned as stated and callers wanting the computed
/// range should use [`ribbon::genus_range`].
pub fn tangled_cord_range(n: usize) -> Result<GenusRange> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "tangled cord range formula applies from size 2, got {n}"
        )));
    }
    let n = n as u32;
    Ok(if n.is_multiple_of(2) {
        GenusRange::new((n - 2) / 2, n / 2)
    } else {
        GenusRange::new((n - 1) / 2, n.div_ceil(2))
    })
}

/// The repeat word `1 2 ... n 1 2 ... n` for odd `n >= 3`; its genus range
/// is `[0,1]`. Even sizes are rejected: the range claim holds for odd `n`
/// only.
pub fn repeat_word(n: usize) -> Result<Dow> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "repeat words require an odd symbol count of at least 3, got {n}"
        )));
    }
    let half: Vec<u32> = (1..=n as u32).collect();
    let mut letters = half.clone();
    letters.extend(half);
    Dow::new(letters)
}

/// Chain of `m` pretzels joined by cross sums; `3m - 1` vertices with genus
/// range `{m}`.
pub fn gamma_chain(m: usize) -> Result<Dow> {
    if m < 1 {
        return Err(Error::InvalidParameter(format!(
            "pretzel chains require at least 1 block, got {m}"
        )));
    }
    let pretzel: Dow = PRETZEL.parse().expect("constant");
    let mut word = pretzel.clone();
    for _ in 1..m {
        word = word.cross_sum(&pretzel, 0, 0)?;
    }
    Ok(word)
}

/// The 6-vertex graph with genus range `{3}`, the heaviest block available to
/// the singleton constructions.
pub fn gamma_hat() -> Dow {
    GAMMA_HAT.parse().expect("constant")
}

/// Bookkeeping for singleton realizability: with `phi(k, l) = 7k + 3l - 1`
/// vertices one can chain `k` six-vertex blocks of range `{3}` and `l`
/// pretzels of range `{1}`, so `psi_n = 3 K_n + L_n` is the largest singleton
/// genus constructible with at most `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsiRecord {
    pub n: u32,
    /// Largest `k` with `phi(k, 0) <= n`.
    pub k: u32,
    /// Largest `l` with `phi(K_n, l) <= n`.
    pub l: u32,
    /// `3 K_n + L_n`.
    pub psi: u32,
}

pub fn psi(n: u32) -> Result<PsiRecord> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("psi is defined for n >= 1, got {n}")));
    }
    let k = (n + 1) / 7;
    let l = (n + 1 - 7 * k) / 3;
    Ok(PsiRecord { n, k, l, psi: 3 * k + l })
}

fn verified(word: Dow, expect: GenusRange) -> Result<Dow> {
    if word.symbol_count() <= VERIFY_CAP {
        let opts = RibbonOptions { cap: VERIFY_CAP, ..Default::default() };
        let got = ribbon::genus_range_with(&AssemblyGraph::build(&word), &opts)?;
        assert_eq!(
            got, expect,
            "constructed word '{word}' has range {got}, expected {expect} — construction bug"
        );
    }
    Ok(word)
}

/// Splices a pretzel into an edge of `word`, lifting a range `[h, k]` to
/// `[h, k+1]`.
///
/// Every embedding contributes its genus plus one to the new range; an
/// embedding that traces the spliced edge with a single boundary component
/// additionally contributes its genus unchanged. Keeping the bottom of the
/// range therefore requires an edge single-traced in some minimum-genus
/// embedding; that hypothesis is checked computationally, trying slot 0
/// first and falling back across the other edges.
fn pretzel_lift(word: &Dow) -> Result<Dow> {
    let n = word.symbol_count();
    let len = word.len();
    if n > VERIFY_CAP {
        return Err(Error::NotKnownRealizable(
            "lift".into(),
            n,
            format!(
                "lifting '{word}' needs its embeddings enumerated to pick the spliced edge, \
                 which is refused beyond {VERIFY_CAP} vertices"
            ),
        ));
    }
    let g = AssemblyGraph::build(word);
    let opts = RibbonOptions { cap: VERIFY_CAP, ..Default::default() };
    let min_genus = ribbon::genus_range_with(&g, &opts)?.min;
    let min_b = (n as u32 + 2) - 2 * min_genus;
    // edges traced by one component in at least one minimum-genus embedding
    let mut single = vec![false; len + 1];
    for bits in 0..1u64 << n {
        let choice = EmbeddingChoice::from_bits(bits, n)?;
        let decomposition = ribbon::trace(&g, &choice)?;
        if decomposition.b() != min_b {
            continue;
        }
        for (edge, seen) in single.iter_mut().enumerate().skip(1) {
            if !*seen {
                let (a, b) = decomposition.edge_components(edge)?;
                *seen = a == b;
            }
        }
    }
    // slot s splices into edge s (slot 0 into the closing edge)
    for slot in 0..len {
        let edge = if slot == 0 { len } else { slot };
        if single[edge] {
            return word.insert_pretzel(slot);
        }
    }
    Err(Error::NotKnownRealizable(
        "lift".into(),
        n,
        format!(
            "no edge of '{word}' is single-traced in a minimum-genus embedding, so its range \
             cannot be lifted while keeping the bottom"
        ),
    ))
}

fn pad_with_loops(mut word: Dow, vertices: usize) -> Result<Dow> {
    while word.symbol_count() < vertices {
        word = word.insert_loop(0)?;
    }
    Ok(word)
}

fn euler_bound_error(range: GenusRange, vertices: usize) -> Error {
    Error::Unrealizable(
        range.to_string(),
        format!(
            "every embedding of a graph with {vertices} vertices has at least one boundary \
             component, so its genus is at most {}",
            vertices.div_ceil(2)
        ),
    )
}

/// Constructs a word with `vertices` vertices whose genus range is the
/// singleton `[h, h]`, when `h <= psi(vertices)`.
pub fn realize_singleton(h: u32, vertices: usize) -> Result<Dow> {
    let range = GenusRange::new(h, h);
    if h as usize > vertices.div_ceil(2) {
        return Err(euler_bound_error(range, vertices));
    }
    if vertices % 2 == 1 && h as usize == vertices.div_ceil(2) {
        return Err(Error::Unrealizable(
            range.to_string(),
            format!(
                "a graph with 2n-1 = {vertices} vertices never has the singleton genus range \
                 [n,n]: some embedding always has more than one boundary component"
            ),
        ));
    }
    if h == 0 {
        let word = pad_with_loops(Dow::empty(), vertices)?;
        return verified(word, range);
    }
    let max_singleton = psi(vertices as u32)?.psi;
    if h > max_singleton {
        return Err(Error::NotKnownRealizable(
            range.to_string(),
            vertices,
            format!(
                "the largest singleton genus constructible with {vertices} vertices is \
                 {max_singleton}; beyond it realizability is unknown"
            ),
        ));
    }
    let heavy: Dow = gamma_hat();
    let pretzel: Dow = PRETZEL.parse().expect("constant");
    let k = (h / 3).min(psi(vertices as u32)?.k);
    let l = h - 3 * k;
    debug_assert!(7 * k + 3 * l <= vertices as u32 + 1);
    let mut word: Option<Dow> = None;
    for _ in 0..k {
        word = Some(match word {
            None => heavy.clone(),
            Some(w) => w.cross_sum(&heavy, 0, 0)?,
        });
    }
    for _ in 0..l {
        word = Some(match word {
            None => pretzel.clone(),
            Some(w) => w.cross_sum(&pretzel, 0, 0)?,
        });
    }
    let word = pad_with_loops(word.expect("h >= 1 places at least one block"), vertices)?;
    verified(word, range)
}

/// Constructs a word with `vertices` vertices whose genus range is `[a, b]`
/// with `a < b`. Base words: the odd repeat word for `[0,1]`, fixed witnesses
/// for `[0,2]` and `[0,3]`, and the tangled cord `T_{2a+1}` for `[a, a+1]`;
/// pretzel lifts raise the top and loop insertions pad the vertex count.
pub fn realize_range(a: u32, b: u32, vertices: usize) -> Result<Dow> {
    if a >= b {
        return Err(Error::InvalidParameter(format!(
            "realize_range requires min < max, got [{a},{b}]"
        )));
    }
    let range = GenusRange::new(a, b);
    if b as usize > vertices.div_ceil(2) {
        return Err(euler_bound_error(range, vertices));
    }
    if vertices % 2 == 1 && a == 0 && b as usize == vertices.div_ceil(2) {
        return Err(Error::Unrealizable(
            range.to_string(),
            format!(
                "a graph with 2n-1 = {vertices} vertices never has genus range [0,n]: a planar \
                 graph's embeddings all have at least two boundary components, so genus n is \
                 unreachable"
            ),
        ));
    }
    if a == 0 && b > 4 {
        // a full range [0,b] word is planar, every edge of every embedding is
        // two-component traced, and pretzel lifts therefore raise the bottom;
        // no construction beyond the stored witnesses is available
        return Err(Error::NotKnownRealizable(
            range.to_string(),
            vertices,
            "full ranges beyond [0,4] have no stored witness and cannot be lifted from smaller \
             ones"
                .into(),
        ));
    }
    let minimal = if a == 0 {
        match b {
            1 => 3,
            2 => 4,
            3 => 6,
            _ => 8,
        }
    } else {
        2 * b as usize - 1
    };
    if vertices < minimal {
        return Err(Error::NotKnownRealizable(
            range.to_string(),
            vertices,
            format!("the smallest constructible witness for {range} has {minimal} vertices"),
        ));
    }
    let mut word = if a == 0 {
        match b {
            1 => repeat_word(3)?,
            2 => FULL_RANGE_2.parse().expect("constant"),
            3 => FULL_RANGE_3.parse().expect("constant"),
            _ => FULL_RANGE_4.parse().expect("constant"),
        }
    } else {
        tangled_cord(2 * a as usize + 1)?
    };
    if a > 0 {
        for _ in 0..b - a - 1 {
            word = pretzel_lift(&word)?;
        }
    }
    let word = pad_with_loops(word, vertices)?;
    verified(word, range)
}

/// Realizes `[min, max]` at the requested vertex count, dispatching to the
/// singleton or interval construction.
pub fn realize(min: u32, max: u32, vertices: usize) -> Result<Dow> {
    if min > max {
        return Err(Error::InvalidParameter(format!(
            "genus range [{min},{max}] is inverted"
        )));
    }
    if min == max {
        realize_singleton(min, vertices)
    } else {
        realize_range(min, max, vertices)
    }
}
