//! The rigid-vertex graph of a double-occurrence word as a dart structure.
//!
//! A word of `n` symbols yields a graph with `n` 4-valent rigid vertices and
//! `2n` edges following the transversal: edge `e_i` (1-based) runs from the
//! vertex at word position `i-1` to the vertex at position `i mod 2n`. Each
//! edge owns two darts (its ends); dart `2j` is the end of 0-based edge `j`
//! at its tail, dart `2j+1` the end at its head, so twins pair by `d ^ 1`.
//!
//! Every vertex stores the cyclic order of its four darts. The transversal
//! enters and leaves through opposite slots, which leaves exactly two mirror
//! interleavings per vertex; `build` fixes the default one per vertex so that
//! the all-default embedding choice reproduces the standard band attachment
//! (see `ribbon`), and records which vertices take the mirrored interleaving
//! in [`AssemblyGraph::base_flip_mask`].

use std::fmt::Write as _;

use crate::dow::{Dow, Symbol};

/// Immutable dart structure of a word's rigid-vertex graph.
///
/// The trivial graph (empty word) is a valid value with no vertices or darts;
/// it models a free loop.
#[derive(Clone, Debug)]
pub struct AssemblyGraph {
    word: Dow,
    /// Distinct symbols in increasing order; vertex `v` is `symbols[v]`.
    symbols: Vec<Symbol>,
    /// Per dart: index of the vertex it is incident to.
    vertex_of: Vec<u32>,
    /// Per dart: cyclic successor within its vertex's default rotation.
    rot_next: Vec<u32>,
    /// Per dart: cyclic predecessor (successor of the reversed rotation).
    rot_prev: Vec<u32>,
    /// Default rotation listing per vertex.
    rotations: Vec<[u32; 4]>,
    /// Vertices whose default rotation is the mirrored interleaving.
    base_flip: u64,
}

impl AssemblyGraph {
    pub fn build(word: &Dow) -> AssemblyGraph {
        let len = word.len();
        let n = word.symbol_count();
        let symbols = word.symbols();
        let mut vertex_of = vec![0u32; 2 * len];
        let mut rot_next = vec![0u32; 2 * len];
        let mut rot_prev = vec![0u32; 2 * len];
        let mut rotations = Vec::with_capacity(n);
        let mut base_flip = 0u64;

        // positions of both occurrences per vertex
        let mut occ: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); n];
        for (pos, &s) in word.letters().iter().enumerate() {
            let v = symbols.binary_search(&s).expect("symbol present");
            if occ[v].0 == usize::MAX {
                occ[v].0 = pos;
            } else {
                occ[v].1 = pos;
            }
        }

        for (v, &(p, q)) in occ.iter().enumerate() {
            // darts around the visit at position `pos`: the transversal comes
            // in on the head end of edge pos-1 and leaves on the tail end of
            // edge pos
            let in1 = (2 * ((p + len - 1) % len) + 1) as u32;
            let out1 = (2 * p) as u32;
            let in2 = (2 * ((q + len - 1) % len) + 1) as u32;
            let out2 = (2 * q) as u32;
            // Interleaved so consecutive transversal edges sit in opposite
            // slots. The default band attachment mirrors the interleaving at
            // vertices first visited at an odd transversal position; this is
            // the normalization under which the all-default choice matches
            // the standard ribbon of the word (its genus range is unaffected,
            // only the labeling of the 2^n choices).
            let rotation = if p % 2 == 0 {
                [in1, in2, out1, out2]
            } else {
                base_flip |= 1 << v;
                [out2, out1, in2, in1]
            };
            for (k, &d) in rotation.iter().enumerate() {
                vertex_of[d as usize] = v as u32;
                rot_next[d as usize] = rotation[(k + 1) % 4];
                rot_prev[d as usize] = rotation[(k + 3) % 4];
            }
            rotations.push(rotation);
        }

        AssemblyGraph {
            word: word.clone(),
            symbols,
            vertex_of,
            rot_next,
            rot_prev,
            rotations,
            base_flip,
        }
    }

    pub fn word(&self) -> &Dow {
        &self.word
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.word.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.word.len()
    }

    /// The symbol labeling vertex index `v`.
    pub fn vertex_symbol(&self, v: usize) -> Symbol {
        self.symbols[v]
    }

    /// Vertex index of `symbol`, if present.
    pub fn vertex_index(&self, symbol: Symbol) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }

    /// Default rotation (cyclic dart order) at vertex `v`.
    pub fn rotation(&self, v: usize) -> [u32; 4] {
        self.rotations[v]
    }

    /// Vertices whose default attachment mirrors the plain interleaving, as a
    /// bit mask. XOR an embedding choice with this mask to translate between
    /// choice bits and absolute rotation directions.
    pub fn base_flip_mask(&self) -> u64 {
        self.base_flip
    }

    #[inline]
    pub(crate) fn vertex_of(&self, dart: u32) -> u32 {
        self.vertex_of[dart as usize]
    }

    #[inline]
    pub(crate) fn next_dart(&self, dart: u32, reversed: bool) -> u32 {
        if reversed {
            self.rot_prev[dart as usize]
        } else {
            self.rot_next[dart as usize]
        }
    }

    /// 1-based edge index owning `dart`.
    pub fn edge_of_dart(&self, dart: u32) -> usize {
        dart as usize / 2 + 1
    }

    /// Reads the vertex sequence back off the transversal. The result is
    /// equivalent to the source word (it may start elsewhere on the circle).
    pub fn transversal_readback(&self) -> Dow {
        if self.is_trivial() {
            return Dow::empty();
        }
        let len = self.word.len();
        let mut letters = Vec::with_capacity(len);
        // travel dart d along its edge, arrive at twin; leave through the
        // opposite rotation slot
        let mut d = 0u32;
        for _ in 0..len {
            let t = d ^ 1;
            let v = self.vertex_of(t) as usize;
            letters.push(self.symbols[v]);
            let out = self.rot_next[self.rot_next[t as usize] as usize];
            d = out;
        }
        Dow::new(letters).expect("transversal visits every vertex twice")
    }

    /// One line per vertex: `v<symbol>: e<i> e<j> e<k> e<l>` in rotation order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (v, rotation) in self.rotations.iter().enumerate() {
            let _ = write!(out, "v{}:", self.symbols[v]);
            for &d in rotation {
                let _ = write!(out, " e{}", self.edge_of_dart(d));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::tangled_cord;

    fn graph(text: &str) -> AssemblyGraph {
        AssemblyGraph::build(&text.parse().unwrap())
    }

    #[test]
    fn basic_shape() {
        let g = graph("1212");
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.dart_count(), 8);
        let trivial = AssemblyGraph::build(&Dow::empty());
        assert!(trivial.is_trivial());
    }

    #[test]
    fn single_loop_vertex() {
        // both loop edges of the figure-eight are their own rotation neighbors
        let g = graph("11");
        assert_eq!(g.n(), 1);
        let rotation = g.rotation(0);
        let edges: Vec<usize> = rotation.iter().map(|&d| g.edge_of_dart(d)).collect();
        for k in 0..4 {
            if edges[k] == edges[(k + 1) % 4] {
                return;
            }
        }
        panic!("loop edge should appear in adjacent rotation slots: {edges:?}");
    }

    #[test]
    fn rotation_slots_oppose_transversal() {
        // the transversal must enter and leave through opposite slots
        for text in ["1212", "121323", "12314324", "123451256346"] {
            let g = graph(text);
            let word: Dow = text.parse().unwrap();
            let len = word.len();
            for (pos, &s) in word.letters().iter().enumerate() {
                let v = g.vertex_index(s).unwrap();
                let rotation = g.rotation(v);
                let incoming = (2 * ((pos + len - 1) % len) + 1) as u32;
                let outgoing = (2 * pos) as u32;
                let i = rotation.iter().position(|&d| d == incoming).unwrap();
                let o = rotation.iter().position(|&d| d == outgoing).unwrap();
                assert_eq!((i + 2) % 4, o, "word {text} position {pos}");
            }
        }
    }

    #[test]
    fn tangled_cord_incidence_table() {
        // v1 of the tangled cord is incident to e1, e3, e2n, e2 in cyclic
        // order, up to rotation and reversal of the listing
        for n in [3usize, 5, 8] {
            let g = AssemblyGraph::build(&tangled_cord(n).unwrap());
            let rotation = g.rotation(0);
            let edges: Vec<usize> = rotation.iter().map(|&d| g.edge_of_dart(d)).collect();
            let expect = [1, 3, 2 * n, 2];
            let mut listings = Vec::new();
            for r in 0..4 {
                let fwd: Vec<usize> = (0..4).map(|k| expect[(r + k) % 4]).collect();
                let mut rev = fwd.clone();
                rev.reverse();
                listings.push(fwd);
                listings.push(rev);
            }
            assert!(listings.contains(&edges), "T_{n} v1 rotation {edges:?}");
        }
    }

    #[test]
    fn readback_round_trip() {
        for text in ["121323", "12314324", "11", "123123"] {
            let w: Dow = text.parse().unwrap();
            let g = AssemblyGraph::build(&w);
            assert!(g.transversal_readback().equivalent(&w), "{text}");
        }
    }

    #[test]
    fn readback_all_small_canonical() {
        for n in 1..=5 {
            for w in crate::CanonicalWords::new(n) {
                let g = AssemblyGraph::build(w.as_dow());
                assert!(g.transversal_readback().equivalent(w.as_dow()), "{w}");
            }
        }
    }

    #[test]
    fn dump_format() {
        let g = graph("1212");
        let dump = g.dump();
        assert_eq!(dump.lines().count(), 2);
        assert!(dump.starts_with("v1: e"));
    }
}
