//! Exhaustive small-n enumeration of rooted planar maps.
//!
//! Enumeration runs every (plane tree, label assignment, orientation sign)
//! triple through the same quadrangulation pipeline the sampler uses. Each
//! rooted map with n edges is produced exactly n+2 times (once per vertex
//! of its quadrangulation), so weighted totals divide exactly by n+2; the
//! division is asserted. This shares one code path with the sampler and
//! anchors both engines to the exact counting series.

use std::collections::HashMap;

use super::blocks::blocks_and_cuts;
use super::CombMap;
use crate::sampler::cvs::cvs;
use crate::sampler::tree::{all_dyck_words, LabeledPlaneTree};
use crate::sampler::tutte::quad_to_map;

/// Resource guard: 2 * 3^n * Catalan(n) raw objects.
pub const MAX_ENUM_EDGES: usize = 7;

/// Visit the raw stream of rooted maps with n edges (each rooted map
/// appears exactly n+2 times).
pub fn for_each_raw(n: usize, mut visit: impl FnMut(&CombMap)) {
    assert!(
        (1..=MAX_ENUM_EDGES).contains(&n),
        "exhaustive enumeration is limited to 1..={MAX_ENUM_EDGES} edges"
    );
    for word in all_dyck_words(n) {
        let mut incs = vec![-1i8; n];
        loop {
            let tree = LabeledPlaneTree::from_dyck(&word, &incs);
            for eps in [false, true] {
                let q = cvs(&tree, eps).expect("enumeration inputs are valid");
                let map = quad_to_map(&q.quad).expect("quadrangulation converts");
                visit(&map);
            }
            let mut k = 0;
            while k < n && incs[k] == 1 {
                incs[k] = -1;
                k += 1;
            }
            if k == n {
                break;
            }
            incs[k] += 1;
        }
    }
}

/// Exact aggregate statistics over all rooted maps with n edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    /// Number of distinct rooted maps (M_n).
    pub distinct: u64,
    /// Sum of cut-vertex counts over all rooted maps.
    pub total_cut_vertices: u64,
    /// Sum of block counts over all rooted maps.
    pub total_blocks: u64,
    /// Sum of vertex counts over all rooted maps.
    pub total_vertices: u64,
    /// Number of rooted maps whose root vertex is not a cut vertex.
    pub root_not_cut: u64,
    /// Number of rooted maps with no cut vertex at all.
    pub two_connected: u64,
    /// Histogram: maps by block count.
    pub by_blocks: HashMap<usize, u64>,
    /// Histogram: maps by cut-vertex count.
    pub by_cuts: HashMap<usize, u64>,
    /// Histogram: maps by root-face valency (orbit of the root dart).
    pub by_root_face_valency: HashMap<usize, u64>,
}

/// Enumerate and aggregate; all divisions by the multiplicity n+2 are exact
/// and asserted.
pub fn census(n: usize) -> Census {
    let mult = (n + 2) as u64;
    let mut raw_count = 0u64;
    let mut cuts = 0u64;
    let mut blocks_total = 0u64;
    let mut vertices = 0u64;
    let mut root_not_cut = 0u64;
    let mut two_connected = 0u64;
    let mut by_blocks: HashMap<usize, u64> = HashMap::new();
    let mut by_cuts: HashMap<usize, u64> = HashMap::new();
    let mut by_valency: HashMap<usize, u64> = HashMap::new();
    let mut codes: HashMap<Vec<u8>, u32> = HashMap::new();

    for_each_raw(n, |map| {
        raw_count += 1;
        let decomposition = blocks_and_cuts(map);
        let (nv, vid) = map.vertex_ids();
        let _ = nv;
        cuts += decomposition.n_cut_vertices() as u64;
        blocks_total += decomposition.n_blocks() as u64;
        let (v, _, _, _) = map.euler_stats();
        vertices += v as u64;
        let root_v = vid[map.root_dart() as usize];
        if !decomposition.cut_vertices.contains(&root_v) {
            root_not_cut += 1;
        }
        if decomposition.cut_vertices.is_empty() {
            two_connected += 1;
        }
        *by_blocks.entry(decomposition.n_blocks()).or_default() += 1;
        *by_cuts.entry(decomposition.n_cut_vertices()).or_default() += 1;
        // root-face valency: size of the face orbit through the root dart
        let mut deg = 0usize;
        let mut d = map.root_dart();
        loop {
            deg += 1;
            d = map.face_step(d);
            if d == map.root_dart() {
                break;
            }
        }
        *by_valency.entry(deg).or_default() += 1;
        *codes.entry(map.canonical_code()).or_default() += 1;
    });

    for (_, &count) in codes.iter() {
        assert_eq!(
            count as u64, mult,
            "every rooted map must appear exactly n+2 times"
        );
    }
    let exact = |total: u64| -> u64 {
        assert_eq!(total % mult, 0, "weighted total must divide by n+2");
        total / mult
    };
    let shrink = |h: HashMap<usize, u64>| -> HashMap<usize, u64> {
        h.into_iter().map(|(k, v)| (k, {
            assert_eq!(v % mult, 0);
            v / mult
        })).collect()
    };

    assert_eq!(raw_count % mult, 0);
    Census {
        n,
        distinct: codes.len() as u64,
        total_cut_vertices: exact(cuts),
        total_blocks: exact(blocks_total),
        total_vertices: exact(vertices),
        root_not_cut: exact(root_not_cut),
        two_connected: exact(two_connected),
        by_blocks: shrink(by_blocks),
        by_cuts: shrink(by_cuts),
        by_root_face_valency: shrink(by_valency),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapstruct::oracle::cut_vertices_brute_force;

    #[test]
    fn one_edge_census() {
        let c = census(1);
        assert_eq!(c.distinct, 2);
        assert_eq!(c.total_cut_vertices, 0);
        assert_eq!(c.total_blocks, 2);
        assert_eq!(c.total_vertices, 3); // 2 (edge) + 1 (loop)
        assert_eq!(c.root_not_cut, 2);
    }

    #[test]
    fn two_edge_census() {
        let c = census(2);
        assert_eq!(c.distinct, 9);
        // mean vertex count is exactly n/2 + 1 = 2
        assert_eq!(c.total_vertices, 18);
        // the double edge is the unique 2-edge map without cut vertices
        assert_eq!(c.two_connected, 1);
    }

    #[test]
    fn counts_match_closed_formula_up_to_five() {
        let expect = [0u64, 2, 9, 54, 378, 2916];
        for n in 1..=5usize {
            assert_eq!(census(n).distinct, expect[n], "M_{n}");
        }
    }

    #[test]
    fn dfs_cuts_match_edge_partition_definition() {
        for n in 1..=4usize {
            for_each_raw(n, |map| {
                let fast = blocks_and_cuts(map).cut_vertices;
                let slow = cut_vertices_brute_force(map);
                assert_eq!(fast, slow, "map {}", map.to_line());
            });
        }
    }

    #[test]
    fn canonical_codes_injective_small() {
        // codes are pairwise distinct across the 9 maps with 2 edges
        let mut seen = std::collections::HashSet::new();
        let mut distinct = 0;
        for_each_raw(2, |map| {
            if seen.insert(map.canonical_code()) {
                distinct += 1;
            }
        });
        assert_eq!(distinct, 9);
    }
}
