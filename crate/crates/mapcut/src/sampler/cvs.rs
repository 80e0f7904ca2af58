//! Labeled plane tree -> pointed rooted quadrangulation.
//!
//! Each of the 2n contour corners sends one arc to its successor: the next
//! corner (cyclically) whose label is one less, or to a fresh vertex when
//! the corner already carries the minimum label. The arcs form the edge set
//! of a quadrangulation with n faces and n+2 vertices, pointed at the fresh
//! vertex.
//!
//! Rotation construction: in the complement of the tree the arcs are
//! non-crossing chords of the contour cycle, so the angular order of the
//! arc ends inside a corner c is the cyclic order of their far endpoints,
//! swept backwards from c: end sorted by (c - anchor) mod 2n ascending.
//! Arcs to the fresh vertex sort last within their corner, and the fresh
//! vertex sees its corners in reversed contour order. These two conventions
//! are fixed (with the mirror pair rejected) by the exhaustive bijection
//! gates in this module's tests and in the enumeration module.

use super::tree::LabeledPlaneTree;
use super::SamplerError;
use crate::mapstruct::CombMap;

/// A rooted quadrangulation with a distinguished vertex, given by any dart
/// incident to it.
#[derive(Debug, Clone)]
pub struct PointedQuad {
    pub quad: CombMap,
    star_dart: u32,
}

impl PointedQuad {
    /// Vertex id (per `CombMap::vertex_ids`) of the pointed vertex.
    pub fn pointed_vertex(&self) -> u32 {
        let (_, vid) = self.quad.vertex_ids();
        vid[self.star_dart as usize]
    }

    pub fn star_dart(&self) -> u32 {
        self.star_dart
    }
}

const STAR: u32 = u32::MAX;

/// Build the pointed rooted quadrangulation of a labeled tree.
///
/// `eps` flips the root dart to its twin, covering the two rooted
/// orientations of the construction's root edge.
pub fn cvs(tree: &LabeledPlaneTree, eps: bool) -> Result<PointedQuad, SamplerError> {
    let n = tree.n_edges();
    assert!(n >= 1);
    let contour = tree.contour();
    let labels = tree.labels();
    let m = 2 * n; // corners and arcs
    let min_label = tree.min_label();

    // corner labels
    let corner_label: Vec<i32> = contour.iter().map(|&v| labels[v as usize]).collect();

    // successor of each corner: next corner with label one less, cyclically
    let offset = (n + 1) as i32;
    let mut next_pos = vec![STAR; 2 * n + 3];
    let mut succ = vec![STAR; m];
    for i in (0..2 * m).rev() {
        let ii = i % m;
        let l = corner_label[ii];
        if i < m && l != min_label {
            let s = next_pos[(l - 1 + offset) as usize];
            debug_assert_ne!(s, STAR, "labels step through every intermediate value");
            succ[ii] = s;
        }
        next_pos[(l + offset) as usize] = ii as u32;
    }

    // arc ends per corner; arrivals are collected in ascending source order
    let mut arrivals: Vec<Vec<u32>> = vec![Vec::new(); m];
    let mut star_arrivals: Vec<u32> = Vec::new();
    for j in 0..m as u32 {
        if succ[j as usize] == STAR {
            star_arrivals.push(j);
        } else {
            arrivals[succ[j as usize] as usize].push(j);
        }
    }

    // rotation at the tree vertices: corners in contour order, and inside a
    // corner all ends sorted by (c - anchor) mod 2n, star arcs last
    let mut corners_at: Vec<Vec<u32>> = vec![Vec::new(); tree.n_vertices()];
    for (c, &v) in contour.iter().enumerate() {
        corners_at[v as usize].push(c as u32);
    }

    let total_darts = 2 * m;
    let mut next = vec![0u32; total_darts];
    let mut sector: Vec<(u32, u32)> = Vec::new(); // (sort key, dart)
    let mut order: Vec<u32> = Vec::with_capacity(total_darts);
    for v in 0..tree.n_vertices() {
        order.clear();
        for &c in &corners_at[v] {
            sector.clear();
            for &j in &arrivals[c as usize] {
                let delta = (c + m as u32 - j) % m as u32;
                sector.push((delta, 2 * j + 1));
            }
            let s = succ[c as usize];
            if s == STAR {
                sector.push((m as u32, 2 * c)); // star arcs leave last
            } else {
                let delta = (c + m as u32 - s) % m as u32;
                sector.push((delta, 2 * c));
            }
            sector.sort_unstable();
            order.extend(sector.iter().map(|&(_, d)| d));
        }
        close_cycle(&mut next, &order);
    }
    // rotation at the pointed vertex: reversed contour order
    order.clear();
    order.extend(star_arrivals.iter().rev().map(|&j| 2 * j + 1));
    close_cycle(&mut next, &order);

    let root = if eps { 1 } else { 0 };
    let quad = CombMap::with_xor_twin(next, root);

    // postconditions are the construction's bug trap
    let star_dart = 2 * star_arrivals[0] + 1;
    let (nv, _) = quad.vertex_ids();
    if nv != n + 2 {
        return Err(SamplerError::QuadPostcondition(format!(
            "expected {} vertices, got {nv}",
            n + 2
        )));
    }
    quad.validate().map_err(SamplerError::Map)?;
    let (nf, fid) = quad.face_ids();
    if nf != n {
        return Err(SamplerError::QuadPostcondition(format!(
            "expected {n} faces, got {nf}"
        )));
    }
    let mut face_deg = vec![0u32; nf];
    for d in 0..quad.n_darts() {
        face_deg[fid[d] as usize] += 1;
    }
    if face_deg.iter().any(|&d| d != 4) {
        return Err(SamplerError::QuadPostcondition(
            "not all faces have degree 4".into(),
        ));
    }
    Ok(PointedQuad { quad, star_dart })
}

fn close_cycle(next: &mut [u32], order: &[u32]) {
    if order.is_empty() {
        return;
    }
    for w in order.windows(2) {
        next[w[0] as usize] = w[1];
    }
    next[order[order.len() - 1] as usize] = order[0];
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::tree::{all_dyck_words, LabeledPlaneTree};
    use std::collections::HashMap;

    fn all_labeled_trees(n: usize) -> Vec<LabeledPlaneTree> {
        let mut out = Vec::new();
        for word in all_dyck_words(n) {
            let mut incs = vec![-1i8; n];
            loop {
                out.push(LabeledPlaneTree::from_dyck(&word, &incs));
                // odometer over {-1,0,1}^n
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
        out
    }

    #[test]
    fn one_edge_outputs() {
        // 2*3*Catalan(1) = 6 pointed rooted objects, all on the unique
        // 1-face quadrangulation (the 2-edge path), which has 2 rootings
        // and 3 vertices.
        let mut pointed_codes = HashMap::new();
        let mut rooted_codes = HashMap::new();
        for t in all_labeled_trees(1) {
            for eps in [false, true] {
                let q = cvs(&t, eps).expect("valid quadrangulation");
                assert_eq!(q.quad.n_edges(), 2);
                *pointed_codes
                    .entry(q.quad.canonical_code_pointed(q.pointed_vertex()))
                    .or_insert(0u32) += 1;
                *rooted_codes
                    .entry(q.quad.canonical_code())
                    .or_insert(0u32) += 1;
            }
        }
        assert_eq!(pointed_codes.len(), 6, "bijection onto pointed objects");
        assert!(pointed_codes.values().all(|&c| c == 1));
        assert_eq!(rooted_codes.len(), 2);
        assert!(rooted_codes.values().all(|&c| c == 3), "one per pointing");
    }

    /// The construction is a bijection onto pointed rooted quadrangulations:
    /// distinct outputs, and each rooted quadrangulation appears once per
    /// vertex (n+2 times).
    #[test]
    fn bijection_gate_small_n() {
        for n in 2..=4usize {
            let mut pointed_codes: HashMap<Vec<u8>, u32> = HashMap::new();
            let mut rooted_codes: HashMap<Vec<u8>, u32> = HashMap::new();
            let mut total = 0u64;
            for t in all_labeled_trees(n) {
                for eps in [false, true] {
                    let q = cvs(&t, eps).expect("valid quadrangulation");
                    *pointed_codes
                        .entry(q.quad.canonical_code_pointed(q.pointed_vertex()))
                        .or_insert(0) += 1;
                    *rooted_codes.entry(q.quad.canonical_code()).or_insert(0) += 1;
                    total += 1;
                }
            }
            assert!(
                pointed_codes.values().all(|&c| c == 1),
                "n={n}: pointed outputs must be distinct"
            );
            assert!(
                rooted_codes.values().all(|&c| c == n as u32 + 2),
                "n={n}: every rooted quadrangulation arises once per vertex"
            );
            assert_eq!(pointed_codes.len() as u64, total);
        }
    }
}
