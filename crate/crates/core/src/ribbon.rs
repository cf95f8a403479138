//! Ribbon thickenings of an assembly graph: boundary tracing, genus, and the
//! exhaustive genus range over all `2^n` embedding choices.
//!
//! Each vertex admits two band attachments, encoded as one bit per vertex
//! (bit 0 keeps the rotation as built, bit 1 reverses it). The boundary
//! components of a ribbon graph are the orbits of the face-successor
//! permutation `succ(d) = rotation-next of twin(d)` at `twin(d)`'s vertex,
//! in the chosen direction. With `n` vertices and `b` boundary components the
//! genus of the capped-off surface is `(n - b + 2) / 2`; parity of `b` always
//! matches `n`, and a violation aborts because it can only mean a tracing
//! bug, never data.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::graph::AssemblyGraph;
use crate::{Error, Result};

/// Graphs larger than this are refused by the exhaustive operations unless
/// the cap is raised explicitly.
pub const DEFAULT_CAP: usize = 26;

/// One bit per vertex selecting the rotation direction of its band
/// attachment: 0 keeps the rotation as built, 1 reverses it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct EmbeddingChoice {
    bits: u64,
    n: usize,
}

impl EmbeddingChoice {
    /// The all-default choice (every bit zero).
    pub fn all_default(n: usize) -> EmbeddingChoice {
        assert!(n <= 63, "embedding choices are limited to 63 vertices");
        EmbeddingChoice { bits: 0, n }
    }

    pub fn from_bits(bits: u64, n: usize) -> Result<EmbeddingChoice> {
        assert!(n <= 63, "embedding choices are limited to 63 vertices");
        if n < 64 && bits >> n != 0 {
            return Err(Error::ChoiceSizeMismatch { choice: 64 - bits.leading_zeros() as usize, vertices: n });
        }
        Ok(EmbeddingChoice { bits, n })
    }

    /// Parses a big-endian bit string: character `k` is the bit of the vertex
    /// with the `k`-th smallest symbol, so `"101"` flips v1 and v3.
    pub fn from_bit_string(text: &str, n: usize) -> Result<EmbeddingChoice> {
        if text.len() != n || !text.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::BadBitString(text.into(), n));
        }
        let mut bits = 0u64;
        for (k, c) in text.chars().enumerate() {
            if c == '1' {
                bits |= 1 << k;
            }
        }
        Ok(EmbeddingChoice { bits, n })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bit(&self, v: usize) -> bool {
        self.bits >> v & 1 == 1
    }

    /// Returns the choice with vertex `v`'s bit toggled (a connection change).
    pub fn flipped(&self, v: usize) -> Result<EmbeddingChoice> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { index: v, vertices: self.n });
        }
        Ok(EmbeddingChoice { bits: self.bits ^ (1 << v), n: self.n })
    }

    /// The mirror choice: every bit toggled.
    pub fn complemented(&self) -> EmbeddingChoice {
        let mask = if self.n == 0 { 0 } else { (1u64 << self.n) - 1 };
        EmbeddingChoice { bits: self.bits ^ mask, n: self.n }
    }
}

impl fmt::Display for EmbeddingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.n {
            write!(f, "{}", if self.bit(v) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Partition of the darts into boundary-component orbits.
#[derive(Clone, Debug)]
pub struct BoundaryDecomposition {
    orbit_of: Vec<u32>,
    b: u32,
}

impl BoundaryDecomposition {
    /// Number of boundary components.
    pub fn b(&self) -> u32 {
        self.b
    }

    /// Component id of a dart (ids are dense, in order of first traversal).
    pub fn component_of_dart(&self, dart: u32) -> u32 {
        self.orbit_of[dart as usize]
    }

    /// Component ids tracing 1-based edge `index`: one id per side, equal
    /// when a single component traces both sides.
    pub fn edge_components(&self, index: usize) -> Result<(u32, u32)> {
        let edges = self.orbit_of.len() / 2;
        if index == 0 || index > edges {
            return Err(Error::EdgeOutOfRange { index, edges });
        }
        let d = 2 * (index - 1) as u32;
        Ok((self.orbit_of[d as usize], self.orbit_of[d as usize + 1]))
    }
}

/// A genus range `[min, max]`, standing for the full set `{min, ..., max}`.
///
/// Ordered by maximum and then by minimum, the linear order in which range
/// histograms are reported.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GenusRange {
    pub min: u32,
    pub max: u32,
}

impl GenusRange {
    pub fn new(min: u32, max: u32) -> GenusRange {
        assert!(min <= max, "genus range [{min},{max}] is inverted");
        GenusRange { min, max }
    }

    pub fn is_singleton(&self) -> bool {
        self.min == self.max
    }

    pub fn contains(&self, genus: u32) -> bool {
        self.min <= genus && genus <= self.max
    }
}

impl Ord for GenusRange {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.max, self.min).cmp(&(other.max, other.min))
    }
}

impl PartialOrd for GenusRange {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenusRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.min, self.max)
    }
}

/// Options for the exhaustive operations.
#[derive(Clone, Debug)]
pub struct RibbonOptions {
    /// Largest graph size enumerated exhaustively.
    pub cap: usize,
    /// Stop as soon as both extreme boundary counts have been witnessed.
    /// Skips the consecutiveness verification and the histogram.
    pub early_exit: bool,
}

impl Default for RibbonOptions {
    fn default() -> Self {
        RibbonOptions { cap: DEFAULT_CAP, early_exit: false }
    }
}

/// Genus range together with the histogram of boundary counts over all
/// `2^n` embedding choices.
#[derive(Clone, Debug)]
pub struct RangeProfile {
    pub range: GenusRange,
    /// boundary count -> number of choices attaining it; totals `2^n`.
    pub boundary_counts: BTreeMap<u32, u64>,
}

fn check_choice(g: &AssemblyGraph, choice: &EmbeddingChoice) -> Result<()> {
    if choice.n() != g.n() {
        return Err(Error::ChoiceSizeMismatch { choice: choice.n(), vertices: g.n() });
    }
    Ok(())
}

/// Boundary-component count for one choice, by orbit counting.
fn boundary_count_bits(g: &AssemblyGraph, bits: u64) -> u32 {
    let darts = g.dart_count();
    if darts <= 128 {
        let mut visited: u128 = 0;
        let full: u128 = if darts == 128 { !0 } else { (1u128 << darts) - 1 };
        let mut b = 0;
        let mut start = 0u32;
        while visited != full {
            while visited >> start & 1 == 1 {
                start += 1;
            }
            b += 1;
            let mut d = start;
            loop {
                visited |= 1u128 << d;
                let t = d ^ 1;
                d = g.next_dart(t, bits >> g.vertex_of(t) & 1 == 1);
                if d == start {
                    break;
                }
            }
        }
        b
    } else {
        let mut visited = vec![false; darts];
        let mut b = 0;
        for start in 0..darts as u32 {
            if visited[start as usize] {
                continue;
            }
            b += 1;
            let mut d = start;
            loop {
                visited[d as usize] = true;
                let t = d ^ 1;
                d = g.next_dart(t, bits >> g.vertex_of(t) & 1 == 1);
                if d == start {
                    break;
                }
            }
        }
        b
    }
}

/// Traces the boundary components of the ribbon graph selected by `choice`.
///
/// For the trivial graph the decomposition is empty with `b = 2` (a thickened
/// free loop is an annulus).
pub fn trace(g: &AssemblyGraph, choice: &EmbeddingChoice) -> Result<BoundaryDecomposition> {
    check_choice(g, choice)?;
    if g.is_trivial() {
        return Ok(BoundaryDecomposition { orbit_of: Vec::new(), b: 2 });
    }
    let darts = g.dart_count();
    let mut orbit_of = vec![u32::MAX; darts];
    let mut b = 0u32;
    for start in 0..darts as u32 {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let id = b;
        b += 1;
        let mut d = start;
        loop {
            orbit_of[d as usize] = id;
            let t = d ^ 1;
            d = g.next_dart(t, choice.bit(g.vertex_of(t) as usize));
            if d == start {
                break;
            }
        }
    }
    debug_assert_eq!(b, boundary_count_bits(g, choice.bits()));
    Ok(BoundaryDecomposition { orbit_of, b })
}

fn genus_from_b(g: &AssemblyGraph, bits: u64, b: u32) -> u32 {
    let n = g.n() as i64;
    let value = n - b as i64 + 2;
    assert!(
        value >= 0 && value % 2 == 0,
        "boundary parity violated: word '{}' choice bits {:0width$b} gave b={} for n={} — tracing bug",
        g.word(),
        bits,
        b,
        n,
        width = g.n()
    );
    (value / 2) as u32
}

/// Genus of the surface selected by `choice`: `(n - b + 2) / 2`.
pub fn genus(g: &AssemblyGraph, choice: &EmbeddingChoice) -> Result<u32> {
    let decomposition = trace(g, choice)?;
    Ok(genus_from_b(g, choice.bits(), decomposition.b()))
}

/// Exhaustive genus range with the boundary-count histogram, enumerating all
/// `2^n` choices. Verifies that the achieved genera form a consecutive
/// interval and aborts otherwise.
pub fn genus_range_profile(g: &AssemblyGraph) -> Result<RangeProfile> {
    genus_range_profile_with(g, &RibbonOptions::default())
}

pub fn genus_range_profile_with(g: &AssemblyGraph, opts: &RibbonOptions) -> Result<RangeProfile> {
    let n = g.n();
    if n > opts.cap {
        return Err(Error::OverCap { n, cap: opts.cap });
    }
    if n == 0 {
        let mut boundary_counts = BTreeMap::new();
        boundary_counts.insert(2, 1);
        return Ok(RangeProfile { range: GenusRange::new(0, 0), boundary_counts });
    }
    let total: u64 = 1 << n;
    let boundary_counts: BTreeMap<u32, u64> = if n <= 14 {
        let mut hist = BTreeMap::new();
        for bits in 0..total {
            *hist.entry(boundary_count_bits(g, bits)).or_insert(0u64) += 1;
        }
        hist
    } else {
        let chunks = 256u64;
        let chunk_len = total / chunks;
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut hist = BTreeMap::new();
                for bits in c * chunk_len..(c + 1) * chunk_len {
                    *hist.entry(boundary_count_bits(g, bits)).or_insert(0u64) += 1;
                }
                hist
            })
            .reduce(BTreeMap::new, |mut acc, hist| {
                for (b, count) in hist {
                    *acc.entry(b).or_insert(0) += count;
                }
                acc
            })
    };
    let genera: Vec<u32> = boundary_counts
        .keys()
        .rev()
        .map(|&b| genus_from_b(g, 0, b))
        .collect();
    let min = genera[0];
    let max = *genera.last().unwrap();
    for (i, &genus) in genera.iter().enumerate() {
        assert_eq!(
            genus,
            min + i as u32,
            "genus range of '{}' is not consecutive: achieved {:?} — tracing bug",
            g.word(),
            genera
        );
    }
    Ok(RangeProfile { range: GenusRange::new(min, max), boundary_counts })
}

/// Exhaustive genus range over all `2^n` embedding choices.
pub fn genus_range(g: &AssemblyGraph) -> Result<GenusRange> {
    genus_range_with(g, &RibbonOptions::default())
}

pub fn genus_range_with(g: &AssemblyGraph, opts: &RibbonOptions) -> Result<GenusRange> {
    if !opts.early_exit {
        return Ok(genus_range_profile_with(g, opts)?.range);
    }
    let n = g.n();
    if n > opts.cap {
        return Err(Error::OverCap { n, cap: opts.cap });
    }
    if n == 0 {
        return Ok(GenusRange::new(0, 0));
    }
    // stop once both parity-extreme boundary counts are witnessed
    let b_low = if n.is_multiple_of(2) { 2 } else { 1 };
    let b_high = (n + 2) as u32;
    let mut min_b = u32::MAX;
    let mut max_b = 0;
    for bits in 0..1u64 << n {
        let b = boundary_count_bits(g, bits);
        min_b = min_b.min(b);
        max_b = max_b.max(b);
        if min_b == b_low && max_b == b_high {
            break;
        }
    }
    Ok(GenusRange::new(genus_from_b(g, 0, max_b), genus_from_b(g, 0, min_b)))
}

/// Component ids of the one or two boundary components tracing 1-based edge
/// `index` in the ribbon graph selected by `choice`.
pub fn edge_trace_components(
    g: &AssemblyGraph,
    choice: &EmbeddingChoice,
    index: usize,
) -> Result<Vec<u32>> {
    let decomposition = trace(g, choice)?;
    if g.is_trivial() {
        return Err(Error::EdgeOutOfRange { index, edges: 0 });
    }
    let (a, b) = decomposition.edge_components(index)?;
    if a == b {
        Ok(vec![a])
    } else {
        let mut ids = vec![a, b];
        ids.sort_unstable();
        Ok(ids)
    }
}

/// Constructs an embedding choice whose trace has at least two boundary
/// components, without searching.
///
/// Edges are 2-colored by transversal parity; the odd-indexed edges form a
/// disjoint union of cycles covering every vertex. Walking the cycle through
/// the smallest vertex, the connection at each vertex is chosen so a single
/// boundary component closes on the cycle's darts; every dart of an
/// even-indexed edge then lies in some other component, so `b >= 2`.
pub fn construct_multiboundary(g: &AssemblyGraph) -> EmbeddingChoice {
    let n = g.n();
    if n == 0 {
        return EmbeddingChoice::all_default(0);
    }
    // per vertex, the two darts of odd (1-based) edges incident to it
    let mut odd_darts: Vec<Vec<u32>> = vec![Vec::with_capacity(2); n];
    for edge in (0..g.edge_count()).step_by(2) {
        for d in [2 * edge as u32, 2 * edge as u32 + 1] {
            odd_darts[g.vertex_of(d) as usize].push(d);
        }
    }
    debug_assert!(odd_darts.iter().all(|darts| darts.len() == 2));

    let start = odd_darts[0]
        .iter()
        .copied()
        .min_by_key(|&d| (g.edge_of_dart(d), d))
        .expect("vertex 0 has odd edges");
    let mut bits = 0u64;
    let mut d = start;
    for _ in 0..=n {
        let t = d ^ 1;
        let v = g.vertex_of(t) as usize;
        let next = if odd_darts[v][0] == t { odd_darts[v][1] } else { odd_darts[v][0] };
        if g.next_dart(t, false) == next {
            // bit stays 0
        } else {
            debug_assert_eq!(g.next_dart(t, true), next, "odd edges must be rotation neighbors");
            bits |= 1 << v;
        }
        d = next;
        if d == start {
            break;
        }
    }
    assert_eq!(d, start, "odd-cycle walk failed to close on word '{}'", g.word());

    let choice = EmbeddingChoice { bits, n };
    let b = boundary_count_bits(g, bits);
    assert!(
        b >= 2,
        "multiboundary construction yielded b={} on word '{}' — tracing bug",
        b,
        g.word()
    );
    choice
}
