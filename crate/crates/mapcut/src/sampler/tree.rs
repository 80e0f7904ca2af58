//! Uniform plane trees via the cycle lemma, and uniform labelings.

use rand::seq::SliceRandom;
use rand::Rng;

/// Plane tree with integer labels on vertices, plus the contour data the
/// quadrangulation construction consumes.
///
/// Vertices are numbered in preorder (root = 0). The contour visits the
/// 2n corners of the tree; corner 0 is the root corner before the first
/// child. Adjacent labels differ by at most 1 and the root label is 0.
#[derive(Debug, Clone)]
pub struct LabeledPlaneTree {
    n_edges: usize,
    parent: Vec<u32>,
    labels: Vec<i32>,
    contour_vertex: Vec<u32>,
}

impl LabeledPlaneTree {
    /// Assemble from a Dyck word (true = down into a new child) and one
    /// label increment per edge, indexed by child vertex id - 1.
    pub fn from_dyck(steps: &[bool], increments: &[i8]) -> Self {
        let n = steps.len() / 2;
        assert_eq!(steps.len(), 2 * n, "Dyck word has even length");
        assert_eq!(increments.len(), n);
        let mut parent = vec![0u32; n + 1];
        let mut labels = vec![0i32; n + 1];
        let mut contour_vertex = Vec::with_capacity(2 * n);
        let mut current = 0u32;
        let mut next_id = 1u32;
        let mut stack: Vec<u32> = Vec::new();
        for &down in steps {
            contour_vertex.push(current);
            if down {
                let child = next_id;
                next_id += 1;
                parent[child as usize] = current;
                let inc = increments[(child - 1) as usize];
                debug_assert!((-1..=1).contains(&inc));
                labels[child as usize] = labels[current as usize] + inc as i32;
                stack.push(current);
                current = child;
            } else {
                current = stack.pop().expect("balanced Dyck word");
            }
        }
        assert_eq!(next_id as usize, n + 1, "word has n down-steps");
        assert!(stack.is_empty() && current == 0, "word returns to the root");
        LabeledPlaneTree {
            n_edges: n,
            parent,
            labels,
            contour_vertex,
        }
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn n_vertices(&self) -> usize {
        self.n_edges + 1
    }

    pub fn parent(&self, v: u32) -> u32 {
        self.parent[v as usize]
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    /// Vertex under each of the 2n contour corners.
    pub fn contour(&self) -> &[u32] {
        &self.contour_vertex
    }

    pub fn min_label(&self) -> i32 {
        *self.labels.iter().min().expect("nonempty tree")
    }
}

/// Uniform Dyck word with n up/down pairs.
///
/// Shuffles n up-steps and n+1 down-steps; the cycle lemma provides exactly
/// one rotation of the 2n+1 steps whose proper prefixes never drop below
/// zero, and dropping that rotation's final (down) step leaves a Dyck word.
/// Every rotation class has 2n+1 distinct members, so the result is exactly
/// uniform over the Catalan(n) words.
pub fn sample_dyck(n: usize, rng: &mut impl Rng) -> Vec<bool> {
    assert!(n >= 1);
    let mut steps: Vec<bool> = std::iter::repeat(true)
        .take(n)
        .chain(std::iter::repeat(false).take(n + 1))
        .collect();
    steps.shuffle(rng);
    // first position attaining the minimal prefix sum
    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut cut = 0usize;
    for (i, &up) in steps.iter().enumerate() {
        sum += if up { 1 } else { -1 };
        if sum < min {
            min = sum;
            cut = i + 1;
        }
    }
    let m = steps.len();
    let mut word = Vec::with_capacity(2 * n);
    for i in 0..m - 1 {
        word.push(steps[(cut + i) % m]);
    }
    debug_assert!(!steps[(cut + m - 1) % m], "dropped step is a down-step");
    word
}

/// Uniform plane tree with all-zero labels.
pub fn sample_plane_tree(n: usize, rng: &mut impl Rng) -> LabeledPlaneTree {
    let word = sample_dyck(n, rng);
    LabeledPlaneTree::from_dyck(&word, &vec![0; n])
}

/// Attach independent uniform increments from {-1, 0, +1} to a tree shape.
pub fn sample_labels(tree: &LabeledPlaneTree, rng: &mut impl Rng) -> LabeledPlaneTree {
    let n = tree.n_edges();
    let incs: Vec<i8> = (0..n).map(|_| rng.random_range(-1..=1)).collect();
    let word = dyck_of(tree);
    LabeledPlaneTree::from_dyck(&word, &incs)
}

/// Uniform labeled plane tree: shape and increments in one go.
pub fn sample_labeled_tree(n: usize, rng: &mut impl Rng) -> LabeledPlaneTree {
    let word = sample_dyck(n, rng);
    let incs: Vec<i8> = (0..n).map(|_| rng.random_range(-1..=1)).collect();
    LabeledPlaneTree::from_dyck(&word, &incs)
}

/// Recover the Dyck word of a tree from its contour.
pub fn dyck_of(tree: &LabeledPlaneTree) -> Vec<bool> {
    let contour = tree.contour();
    let mut word = Vec::with_capacity(contour.len());
    let mut prev_depth = 0i64;
    let mut depth = vec![0i64; tree.n_vertices()];
    for v in 1..tree.n_vertices() as u32 {
        depth[v as usize] = depth[tree.parent(v) as usize] + 1;
    }
    for i in 0..contour.len() {
        let d_next = if i + 1 < contour.len() {
            depth[contour[i + 1] as usize]
        } else {
            0
        };
        word.push(d_next > prev_depth);
        prev_depth = d_next;
    }
    word
}

/// All Dyck words with n pairs, for exhaustive enumeration.
pub fn all_dyck_words(n: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(2 * n);
    fn rec(word: &mut Vec<bool>, ups: usize, downs: usize, n: usize, out: &mut Vec<Vec<bool>>) {
        if word.len() == 2 * n {
            out.push(word.clone());
            return;
        }
        if ups < n {
            word.push(true);
            rec(word, ups + 1, downs, n, out);
            word.pop();
        }
        if downs < ups {
            word.push(false);
            rec(word, ups, downs + 1, n, out);
            word.pop();
        }
    }
    rec(&mut word, 0, 0, n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    #[test]
    fn unique_tree_with_one_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let t = sample_plane_tree(1, &mut rng);
            assert_eq!(t.contour(), &[0, 1]);
        }
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(all_dyck_words(3).len(), 5);
        assert_eq!(all_dyck_words(5).len(), 42);
    }

    #[test]
    fn three_edge_trees_uniform() {
        // 5 shapes, 1e5 draws, each within 3 sigma of 1/5
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut counts: HashMap<Vec<bool>, u64> = HashMap::new();
        let draws = 100_000u64;
        for _ in 0..draws {
            let w = sample_dyck(3, &mut rng);
            *counts.entry(w).or_default() += 1;
        }
        assert_eq!(counts.len(), 5);
        let expect = draws as f64 / 5.0;
        let sigma = (draws as f64 * 0.2 * 0.8).sqrt();
        for (_, c) in counts {
            assert!(
                (c as f64 - expect).abs() < 3.0 * sigma,
                "count {c} outside 3 sigma of {expect}"
            );
        }
    }

    #[test]
    fn label_increments_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = sample_plane_tree(1, &mut rng);
        let mut counts = [0u64; 3];
        let draws = 100_000u64;
        for _ in 0..draws {
            let t = sample_labels(&shape, &mut rng);
            counts[(t.labels()[1] + 1) as usize] += 1;
        }
        let expect = draws as f64 / 3.0;
        let sigma = (draws as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for c in counts {
            assert!((c as f64 - expect).abs() < 3.0 * sigma);
        }
    }

    #[test]
    fn labels_bounded_and_root_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t = sample_labeled_tree(40, &mut rng);
            assert_eq!(t.labels()[0], 0);
            for v in 1..t.n_vertices() as u32 {
                let d = t.labels()[v as usize] - t.labels()[t.parent(v) as usize];
                assert!((-1..=1).contains(&d));
                assert!(t.labels()[v as usize].unsigned_abs() as usize <= t.n_edges());
            }
        }
    }

    #[test]
    fn dyck_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let w = sample_dyck(25, &mut rng);
            let t = LabeledPlaneTree::from_dyck(&w, &vec![0; 25]);
            assert_eq!(dyck_of(&t), w);
        }
    }

    #[test]
    fn large_tree_smoke() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let start = std::time::Instant::now();
        let t = sample_labeled_tree(100_000, &mut rng);
        assert_eq!(t.n_edges(), 100_000);
        assert!(start.elapsed().as_secs_f64() < 1.0, "tree sampling is O(n)");
    }
}
