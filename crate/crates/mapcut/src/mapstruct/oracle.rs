//! Brute-force reference implementations used to arbitrate definitions.
//!
//! These are intentionally naive (exponential in the edge count) and exist
//! so the production algorithms can be checked against the raw definitions
//! on every small map.

use super::CombMap;

/// Cut vertices straight from the edge-partition definition: v is a cut
/// vertex iff the edges split into two nonempty classes such that v is the
/// only vertex incident to edges of both classes. Iterates all 2^E - 2
/// bipartitions; use only for small maps.
pub fn cut_vertices_brute_force(map: &CombMap) -> Vec<u32> {
    let n = map.n_edges();
    assert!(n <= 16, "edge-partition oracle is exponential");
    let (nv, vid) = map.vertex_ids();

    // vertex incidence mask per edge
    let edge_verts: Vec<(u32, u32)> = (0..n as u32)
        .map(|e| (vid[(2 * e) as usize], vid[(2 * e + 1) as usize]))
        .collect();

    let mut is_cut = vec![false; nv];
    for mask in 1..((1u32 << n) - 1) {
        let mut in_a = vec![false; nv];
        let mut in_b = vec![false; nv];
        for (e, &(x, y)) in edge_verts.iter().enumerate() {
            let side = if mask >> e & 1 == 1 { &mut in_a } else { &mut in_b };
            side[x as usize] = true;
            side[y as usize] = true;
        }
        let shared: Vec<usize> = (0..nv).filter(|&v| in_a[v] && in_b[v]).collect();
        if let [v] = shared[..] {
            is_cut[v] = true;
        }
    }
    (0..nv as u32).filter(|&v| is_cut[v as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapstruct::blocks::blocks_and_cuts;
    use crate::mapstruct::{single_edge, single_loop, CombMap};

    #[test]
    fn definition_on_basics() {
        assert!(cut_vertices_brute_force(&single_edge()).is_empty());
        assert!(cut_vertices_brute_force(&single_loop()).is_empty());

        // loop + pendant: carrier vertex is a cut vertex by the definition
        let m = CombMap::new(vec![1, 0, 3, 2], vec![1, 2, 0, 3], 2);
        let cv = cut_vertices_brute_force(&m);
        assert_eq!(cv.len(), 1);
        assert_eq!(cv, blocks_and_cuts(&m).cut_vertices);
    }
}
