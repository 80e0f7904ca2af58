//! Rooted quadrangulation -> rooted map (edges <-> faces correspondence).
//!
//! The vertices of a quadrangulation 2-color uniquely; the class of the
//! root-edge tail is the "map" class. Every face, having degree 4 with
//! alternating classes, gets the diagonal joining its two tail-class
//! corners; dropping the quadrangulation edges leaves a rooted map on the
//! tail class with one edge per face. The pointed vertex, if any, is
//! simply forgotten.

use super::SamplerError;
use crate::mapstruct::CombMap;

/// Diagonal insertion. Returns the rooted map with n edges of a rooted
/// quadrangulation with n faces.
pub fn quad_to_map(quad: &CombMap) -> Result<CombMap, SamplerError> {
    let (nv, vid) = quad.vertex_ids();
    let m = quad.n_darts();

    // 2-color the vertices; quadrangulations are bipartite
    let mut color = vec![u8::MAX; nv];
    let tail = vid[quad.root_dart() as usize] as usize;
    color[tail] = 0;
    let mut stack = vec![quad.root_dart()];
    let mut seen_dart = vec![false; m];
    while let Some(d) = stack.pop() {
        let v = vid[d as usize] as usize;
        let mut e = d;
        loop {
            if !seen_dart[e as usize] {
                seen_dart[e as usize] = true;
                let t = quad.twin(e);
                let w = vid[t as usize] as usize;
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(t);
                } else if color[w] == color[v] {
                    return Err(SamplerError::NotBipartite);
                }
            }
            e = quad.next(e);
            if e == d {
                break;
            }
        }
    }

    // walk each face once; the face of dart e "turns" at corner twin(e)
    let (nf, fid) = quad.face_ids();
    let mut face_seen = vec![false; nf];
    let mut m_of = vec![u32::MAX; m]; // map dart hosted at each tail corner
    let mut n_map_edges = 0u32;
    for d0 in 0..m as u32 {
        let f = fid[d0 as usize] as usize;
        if face_seen[f] {
            continue;
        }
        face_seen[f] = true;
        let mut corners = [0u32; 4];
        let mut e = d0;
        for slot in corners.iter_mut() {
            *slot = quad.twin(e);
            e = quad.face_step(e);
        }
        if e != d0 {
            return Err(SamplerError::MapPostcondition(format!(
                "face {f} does not have degree 4"
            )));
        }
        let tails: Vec<u32> = corners
            .iter()
            .copied()
            .filter(|&c| color[vid[c as usize] as usize] == 0)
            .collect();
        if tails.len() != 2 {
            return Err(SamplerError::MapPostcondition(format!(
                "face {f} has {} tail-class corners",
                tails.len()
            )));
        }
        let eid = n_map_edges;
        n_map_edges += 1;
        m_of[tails[0] as usize] = 2 * eid;
        m_of[tails[1] as usize] = 2 * eid + 1;
    }

    // rotation: at a tail vertex every quadrangulation corner hosts exactly
    // one diagonal end, in the same cyclic order
    let mut next = vec![0u32; 2 * n_map_edges as usize];
    for d in 0..m as u32 {
        if m_of[d as usize] != u32::MAX {
            let nx = quad.next(d);
            debug_assert_ne!(m_of[nx as usize], u32::MAX);
            next[m_of[d as usize] as usize] = m_of[nx as usize];
        }
    }

    let root = m_of[quad.root_dart() as usize];
    debug_assert_ne!(root, u32::MAX, "root tail hosts a diagonal end");
    let map = CombMap::with_xor_twin(next, root);
    map.validate()
        .map_err(|e| SamplerError::MapPostcondition(format!("diagonal map invalid: {e}")))?;
    let n_tail = color.iter().filter(|&&c| c == 0).count();
    let (v_m, _, _, _) = map.euler_stats();
    if v_m != n_tail {
        return Err(SamplerError::MapPostcondition(format!(
            "map has {v_m} vertices, tail class has {n_tail}"
        )));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapstruct::{single_edge, single_loop};
    use crate::sampler::cvs::cvs;
    use crate::sampler::tree::LabeledPlaneTree;

    /// The 1-face quadrangulation rooted both ways yields the single-edge
    /// map and the single-loop map.
    #[test]
    fn one_face_quad_gives_edge_and_loop() {
        let mut got = Vec::new();
        for eps in [false, true] {
            for inc in [-1i8, 0, 1] {
                let t = LabeledPlaneTree::from_dyck(&[true, false], &[inc]);
                let q = cvs(&t, eps).unwrap();
                let m = quad_to_map(&q.quad).unwrap();
                assert_eq!(m.n_edges(), 1);
                got.push(m.canonical_code());
            }
        }
        got.sort();
        got.dedup();
        assert_eq!(got.len(), 2);
        let mut expect = vec![single_edge().canonical_code(), single_loop().canonical_code()];
        expect.sort();
        assert_eq!(got, expect);
    }
}
