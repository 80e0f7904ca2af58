//! Block / cut-vertex decomposition of a map's underlying multigraph.
//!
//! Cut-vertex semantics follow the edge-partition definition: a vertex v is
//! a cut vertex iff the edge set splits into two nonempty classes whose only
//! shared vertex is v. Under that definition every loop is its own block, so
//! a vertex carrying a loop plus any other edge is a cut vertex, and so is a
//! vertex carrying two loops. The DFS below implements biconnectivity on
//! multigraphs (parallel edges are genuine cycles) with loops split off
//! first; `oracle::cut_vertices_brute_force` is the reference arbiter.

use super::CombMap;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    /// Edge-id sets partitioning all edges; loops are singleton blocks.
    pub blocks: Vec<Vec<u32>>,
    /// Vertex ids (per `CombMap::vertex_ids`) that lie in >= 2 blocks.
    pub cut_vertices: Vec<u32>,
    /// Number of incident blocks per vertex.
    pub vertex_block_incidence: Vec<u32>,
}

impl BlockDecomposition {
    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn n_cut_vertices(&self) -> usize {
        self.cut_vertices.len()
    }
}

/// Iterative biconnectivity DFS adapted to multigraphs with loops.
/// Linear in the number of edges.
pub fn blocks_and_cuts(map: &CombMap) -> BlockDecomposition {
    let (nv, vid) = map.vertex_ids();
    let n_edges = map.n_edges();

    // Group darts by vertex once; orbit order within a vertex is irrelevant.
    let mut darts_at: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for d in 0..map.n_darts() as u32 {
        darts_at[vid[d as usize] as usize].push(d);
    }

    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut incidence = vec![0u32; nv];

    // Loops split off as their own singleton blocks.
    let mut is_loop = vec![false; n_edges];
    for e in 0..n_edges as u32 {
        let (d, t) = (2 * e, 2 * e + 1);
        if vid[d as usize] == vid[t as usize] {
            is_loop[e as usize] = true;
            incidence[vid[d as usize] as usize] += 1;
            blocks.push(vec![e]);
        }
    }

    const UNSET: u32 = u32::MAX;
    let mut disc = vec![UNSET; nv];
    let mut low = vec![0u32; nv];
    let mut timer = 0u32;
    let mut edge_stack: Vec<u32> = Vec::new();
    let mut edge_seen = vec![false; n_edges];

    // Explicit DFS stack entries: (vertex, dart iterator index, entering dart).
    let root = vid[map.root_dart() as usize] as usize;
    let mut stack: Vec<(usize, usize, u32)> = Vec::new();
    disc[root] = timer;
    low[root] = timer;
    timer += 1;
    stack.push((root, 0, UNSET));

    loop {
        let Some(frame) = stack.last_mut() else { break };
        let v = frame.0;
        let enter = frame.2;
        if frame.1 < darts_at[v].len() {
            let d = darts_at[v][frame.1];
            frame.1 += 1;
            let e = map.edge_of(d) as u32;
            if is_loop[e as usize] || d == enter {
                // skip loops entirely and do not reuse the entering dart
                continue;
            }
            let w = vid[map.twin(d) as usize] as usize;
            if disc[w] == UNSET {
                edge_seen[e as usize] = true;
                edge_stack.push(e);
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                stack.push((w, 0, map.twin(d)));
            } else if disc[w] < disc[v] {
                // genuine back edge (parallel edges to an ancestor included)
                if !edge_seen[e as usize] {
                    edge_seen[e as usize] = true;
                    edge_stack.push(e);
                }
                low[v] = low[v].min(disc[w]);
            }
        } else {
            let (v, _, enter_v) = stack.pop().expect("frame exists");
            if let Some(pframe) = stack.last_mut() {
                let p = pframe.0;
                if low[v] >= disc[p] {
                    // v's subtree hangs off p through a single block whose
                    // boundary is the tree edge we entered v through
                    let boundary = map.edge_of(enter_v) as u32;
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == boundary {
                            break;
                        }
                    }
                    blocks.push(block);
                }
                low[p] = low[p].min(low[v]);
            }
        }
    }
    debug_assert!(edge_stack.is_empty(), "all non-loop edges assigned to blocks");
    debug_assert_eq!(
        blocks.iter().map(Vec::len).sum::<usize>(),
        n_edges,
        "blocks partition the edge set"
    );

    // Block incidence per vertex, from the non-loop blocks' vertex sets.
    let mut mark = vec![u32::MAX; nv];
    for (bi, block) in blocks.iter().enumerate() {
        if block.len() == 1 && is_loop[block[0] as usize] {
            continue; // loop incidence counted at split-off time
        }
        for &e in block {
            for d in [2 * e, 2 * e + 1] {
                let v = vid[d as usize] as usize;
                if mark[v] != bi as u32 {
                    mark[v] = bi as u32;
                    incidence[v] += 1;
                }
            }
        }
    }

    let cut_vertices = (0..nv as u32)
        .filter(|&v| incidence[v as usize] >= 2)
        .collect();

    BlockDecomposition {
        blocks,
        cut_vertices,
        vertex_block_incidence: incidence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapstruct::{single_edge, single_loop, CombMap};

    /// Path a-b-c: middle vertex is the unique cut vertex, 2 blocks.
    #[test]
    fn path_of_two_edges() {
        let m = CombMap::with_xor_twin(vec![0, 2, 1, 3], 0);
        let d = blocks_and_cuts(&m);
        assert_eq!(d.n_blocks(), 2);
        assert_eq!(d.cut_vertices.len(), 1);
        let (_, vid) = m.vertex_ids();
        assert_eq!(d.cut_vertices[0], vid[1]);
    }

    /// Double edge between two vertices: one block, no cut vertex.
    #[test]
    fn double_edge() {
        // vertices u{0,2}, v{1,3}: next swaps the two darts at each vertex
        let m = CombMap::with_xor_twin(vec![2, 3, 0, 1], 0);
        assert!(m.validate().is_ok());
        let d = blocks_and_cuts(&m);
        assert_eq!(d.n_blocks(), 1);
        assert!(d.cut_vertices.is_empty());
    }

    /// Loop plus pendant edge at the same vertex: the carrier is a cut
    /// vertex and the loop is its own block.
    #[test]
    fn loop_with_pendant() {
        // vertex u: darts 0,1 (loop edge 0) and 2; vertex w: dart 3
        let m = CombMap::new(vec![1, 0, 3, 2], vec![1, 2, 0, 3], 2);
        assert!(m.validate().is_ok());
        let d = blocks_and_cuts(&m);
        assert_eq!(d.n_blocks(), 2);
        assert_eq!(d.cut_vertices.len(), 1);
        assert!(d.blocks.contains(&vec![0]));
    }

    /// Two loops at one vertex: the vertex is a cut vertex.
    #[test]
    fn two_loops_sharing_a_vertex() {
        // nested loops at one vertex: rotation 0,1,2,3
        let m = CombMap::new(vec![1, 0, 3, 2], vec![1, 2, 3, 0], 0);
        assert!(m.validate().is_ok());
        let d = blocks_and_cuts(&m);
        assert_eq!(d.n_blocks(), 2);
        assert_eq!(d.cut_vertices.len(), 1);
    }

    #[test]
    fn single_blocks() {
        for m in [single_edge(), single_loop()] {
            let d = blocks_and_cuts(&m);
            assert_eq!(d.n_blocks(), 1);
            assert!(d.cut_vertices.is_empty());
        }
    }

    /// Triangle: one block, no cut vertices.
    #[test]
    fn triangle() {
        // vertices a{0,5}, b{1,2}, c{3,4}; edges (a,b),(b,c),(c,a)
        let m = CombMap::new(
            vec![1, 0, 3, 2, 5, 4],
            vec![5, 2, 1, 4, 3, 0],
            0,
        );
        assert!(m.validate().is_ok());
        let d = blocks_and_cuts(&m);
        assert_eq!(d.n_blocks(), 1);
        assert!(d.cut_vertices.is_empty());
    }
}
