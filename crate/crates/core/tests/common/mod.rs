//! Naive reference implementation used as an independent oracle.
//!
//! Rebuilds the vertex rotations straight from the word with the mirrored
//! interleaving convention and walks boundary orbits through hash maps, with
//! no code shared with the library's dart tables. Per-choice labels differ
//! between conventions, but the multiset of boundary counts over all `2^n`
//! choices and the genus range are convention-independent, which is exactly
//! what these tests compare.

use std::collections::HashMap;

/// Dart = (edge index, end), end 0 at the edge's tail position, 1 at its head.
type Dart = (usize, u8);

struct Oracle {
    n: usize,
    /// per vertex, its rotation as a cyclic list of darts
    rotations: Vec<Vec<Dart>>,
    vertex_of: HashMap<Dart, usize>,
}

fn occurrences(letters: &[u32]) -> Vec<(usize, usize)> {
    let mut syms: Vec<u32> = letters.to_vec();
    syms.sort_unstable();
    syms.dedup();
    syms.iter()
        .map(|&s| {
            let hits: Vec<usize> =
                letters.iter().enumerate().filter(|(_, &x)| x == s).map(|(i, _)| i).collect();
            (hits[0], hits[1])
        })
        .collect()
}

impl Oracle {
    fn build(letters: &[u32]) -> Oracle {
        let len = letters.len();
        let occ = occurrences(letters);
        let n = occ.len();
        let mut rotations = Vec::with_capacity(n);
        let mut vertex_of = HashMap::new();
        for (v, &(p, q)) in occ.iter().enumerate() {
            let arrive_first: Dart = ((p + len - 1) % len, 1);
            let leave_first: Dart = (p, 0);
            let arrive_second: Dart = ((q + len - 1) % len, 1);
            let leave_second: Dart = (q, 0);
            // mirrored interleaving relative to the library's builder
            let rotation = vec![arrive_first, leave_second, leave_first, arrive_second];
            for &d in &rotation {
                vertex_of.insert(d, v);
            }
            rotations.push(rotation);
        }
        Oracle { n, rotations, vertex_of }
    }

    fn boundary_count(&self, mask: u64) -> u32 {
        let mut successor: HashMap<Dart, Dart> = HashMap::new();
        for (v, rotation) in self.rotations.iter().enumerate() {
            let k = rotation.len();
            for (i, &d) in rotation.iter().enumerate() {
                // opposite stepping direction from the library's tracer
                let next = if mask >> v & 1 == 0 {
                    rotation[(i + k - 1) % k]
                } else {
                    rotation[(i + 1) % k]
                };
                successor.insert(d, next);
            }
        }
        let twin = |(edge, end): Dart| -> Dart { (edge, 1 - end) };
        let mut seen: HashMap<Dart, bool> = HashMap::new();
        let mut components = 0;
        let darts: Vec<Dart> = self.vertex_of.keys().copied().collect();
        let mut sorted = darts;
        sorted.sort_unstable();
        for &start in &sorted {
            if seen.contains_key(&start) {
                continue;
            }
            components += 1;
            let mut d = start;
            loop {
                seen.insert(d, true);
                d = successor[&twin(d)];
                if d == start {
                    break;
                }
            }
        }
        components
    }
}

/// Sorted boundary counts over all `2^n` band choices.
pub fn oracle_boundary_multiset(letters: &[u32]) -> Vec<u32> {
    let oracle = Oracle::build(letters);
    let mut counts: Vec<u32> =
        (0..1u64 << oracle.n).map(|mask| oracle.boundary_count(mask)).collect();
    counts.sort_unstable();
    counts
}

/// Genus range computed from the naive tracer.
pub fn oracle_genus_range(letters: &[u32]) -> (u32, u32) {
    let n = letters.len() as u32 / 2;
    let counts = oracle_boundary_multiset(letters);
    let genus = |b: u32| -> u32 {
        assert_eq!((n + 2 - b) % 2, 0, "parity violated in oracle");
        (n + 2 - b) / 2
    };
    (genus(*counts.last().unwrap()), genus(counts[0]))
}
