//! Critical offspring laws and conditioned Galton-Watson simulation.
//!
//! A subcritical tree-convention class encodes as a plane tree whose
//! vertices carry decorations; only the tree-level statistics matter here:
//! a non-root vertex is a cut vertex of the map iff it is an internal
//! vertex of the tree, so the cut count is (n - 1) - #leaves. The root
//! indicator is an O(1) correction without influence on the CLT constants
//! and is not simulated.
//!
//! Sampling a tree conditioned on n vertices: draw n offspring values until
//! they sum to n - 1, then rotate the Lukasiewicz path to its unique
//! nonnegative rotation (cycle lemma).

use rand::Rng;

use super::{MapClass, SubcritError};
use crate::ratio;

/// Critical offspring law, tail-truncated for sampling.
#[derive(Debug, Clone)]
pub struct OffspringLaw {
    pub class: &'static str,
    /// p_k for k = 0..=k_max, with tail mass below `tail_bound`.
    pub probs: Vec<f64>,
    pub tail_bound: f64,
    /// Moments of the untruncated law (exact rationals converted for
    /// outerplanar, closed-form implicit derivatives for bipartite).
    pub p0: f64,
    pub mean: f64,
    pub variance: f64,
    cumulative: Vec<f64>,
}

impl OffspringLaw {
    fn new(
        class: &'static str,
        probs: Vec<f64>,
        tail_bound: f64,
        p0: f64,
        mean: f64,
        variance: f64,
    ) -> Result<Self, SubcritError> {
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 + tail_bound {
            return Err(SubcritError::LawConsistency(format!(
                "probabilities sum to {total}"
            )));
        }
        if (mean - 1.0).abs() > 1e-10 {
            return Err(SubcritError::LawConsistency(format!(
                "tilted mean {mean} is not critical"
            )));
        }
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for p in &probs {
            acc += p;
            cumulative.push(acc);
        }
        Ok(OffspringLaw {
            class,
            probs,
            tail_bound,
            p0,
            mean,
            variance,
            cumulative,
        })
    }

    /// Leaf-count CLT constant gamma^2 = p0 - p0^2 (1 + 1/Var).
    pub fn leaf_clt_variance(&self) -> f64 {
        self.p0 - self.p0 * self.p0 * (1.0 + 1.0 / self.variance)
    }

    pub fn sample(&self, rng: &mut impl Rng) -> u32 {
        let u: f64 = rng.random();
        self.cumulative.partition_point(|&c| c < u) as u32
    }
}

/// Build the critical offspring law of a tree-convention class.
///
/// The weight series is 1/(1 - A(w)) tilted at tau = M(z1): p_k
/// proportional to [w^k] 1/(1-A(w)) tau^k. K is chosen so the neglected
/// mass (and its k^2-weighted version, for the moment checks) is below
/// 1e-12. The probability table is computed through the tilted series
/// A(tau w), whose coefficients stay in [0, 1), so plain f64 recurrences
/// are stable; the moments come from exact jets (outerplanar) or implicit
/// closed-form derivatives (bipartite), never from the table.
pub fn gw_offspring(class: MapClass) -> Result<OffspringLaw, SubcritError> {
    match class {
        MapClass::Outerplanar => {
            let facts = super::outerplanar::exact_offspring()?;
            let tau = 1.0 / 6.0;
            let k_max = 1200;
            // tilted block series (1 + tau z - sqrt(1 - 6 tau z + tau^2 z^2))/4
            let mut radicand = vec![0.0; k_max + 1];
            radicand[0] = 1.0;
            radicand[1] = -6.0 * tau;
            radicand[2] = tau * tau;
            let root = f64_sqrt(&radicand);
            let mut tilted = vec![0.0; k_max + 1];
            for k in 0..=k_max {
                tilted[k] = -root[k] / 4.0;
            }
            tilted[0] += 0.25;
            tilted[1] += tau / 4.0;
            let g = f64_geometric(&tilted); // 1/(1 - A(tau z))
            let p0 = ratio::to_f64(&facts.p0);
            let probs: Vec<f64> = g.iter().map(|x| x * p0).collect();
            let tail = tail_bound_check(&probs)?;
            OffspringLaw::new(
                "outerplanar",
                probs,
                tail,
                p0,
                ratio::to_f64(&facts.mean),
                ratio::to_f64(&facts.variance),
            )
        }
        MapClass::BipartiteOuterplanar => {
            let report = super::check_subcritical(class);
            let tau = report.m_value;
            let k_max = 800;
            let tilted = super::bipartite::tilted_block_series_f64(tau, k_max);
            let g = f64_geometric(&tilted);
            let a_tau = super::bipartite::block_value(tau);
            let p0 = 1.0 - a_tau;
            let probs: Vec<f64> = g.iter().map(|x| x * p0).collect();
            let tail = tail_bound_check(&probs)?;
            // moments from implicit derivatives of phi = 1/(1-A) at tau
            let norm = 1.0 / p0;
            let ap = super::bipartite::block_derivative(tau);
            let app = super::bipartite::block_second_derivative(tau);
            let phi1 = ap / (p0 * p0);
            let phi2 = (app * p0 + 2.0 * ap * ap) / (p0 * p0 * p0);
            let mean = tau * phi1 / norm;
            let second_factorial = tau * tau * phi2 / norm;
            let variance = second_factorial + mean - mean * mean;
            OffspringLaw::new("bipartite-outerplanar", probs, tail, p0, mean, variance)
        }
        other => Err(SubcritError::LawConsistency(format!(
            "{} does not use the tree composition convention",
            other.name()
        ))),
    }
}

/// sqrt of an f64 coefficient series with a[0] = 1.
fn f64_sqrt(a: &[f64]) -> Vec<f64> {
    let n = a.len() - 1;
    let mut s = vec![0.0; n + 1];
    s[0] = 1.0;
    for k in 1..=n {
        let mut acc = a[k];
        for j in 1..k {
            acc -= s[j] * s[k - j];
        }
        s[k] = acc / 2.0;
    }
    s
}

/// 1/(1 - a) for an f64 series with a[0] = 0.
fn f64_geometric(a: &[f64]) -> Vec<f64> {
    let n = a.len() - 1;
    debug_assert_eq!(a[0], 0.0);
    let mut g = vec![0.0; n + 1];
    g[0] = 1.0;
    for k in 1..=n {
        let mut acc = 0.0;
        for j in 1..=k {
            acc += a[j] * g[k - j];
        }
        g[k] = acc;
    }
    g
}

fn tail_bound_check(probs: &[f64]) -> Result<f64, SubcritError> {
    // geometric decay at the tilt ratio: bound the neglected mass by the
    // last retained term over (1 - observed ratio)
    let k = probs.len() - 1;
    let last = probs[k];
    let ratio = (probs[k] / probs[k - 1]).min(0.999);
    let bound = last * ratio / (1.0 - ratio) * (k as f64).max(1.0);
    if bound > 1e-12 {
        return Err(SubcritError::LawConsistency(format!(
            "tail bound {bound} above 1e-12; extend the truncation"
        )));
    }
    Ok(bound)
}

/// A plane tree sampled from a conditioned Galton-Watson law.
#[derive(Debug, Clone)]
pub struct GwTree {
    /// Offspring count per vertex in depth-first order.
    pub offspring: Vec<u32>,
    /// Parent per vertex (root's parent is 0).
    pub parents: Vec<u32>,
}

impl GwTree {
    pub fn n_vertices(&self) -> usize {
        self.offspring.len()
    }

    pub fn n_leaves(&self) -> usize {
        self.offspring.iter().filter(|&&d| d == 0).count()
    }

    /// Cut vertices of the encoded map: internal non-root tree vertices,
    /// (n - 1) - #leaves.
    pub fn cut_count(&self) -> u64 {
        (self.n_vertices() as u64 - 1) - self.n_leaves() as u64
    }
}

/// Sample a Galton-Watson tree conditioned on having exactly n vertices.
pub fn sample_gw_tree(
    n: usize,
    law: &OffspringLaw,
    rng: &mut impl Rng,
) -> Result<GwTree, SubcritError> {
    assert!(n >= 1);
    let target: u64 = n as u64 - 1;
    let max_attempts: u64 = 4_000 * (n as u64).isqrt().max(1) + 100_000;
    let mut degrees: Vec<u32> = Vec::with_capacity(n);
    let mut attempts = 0u64;
    loop {
        attempts += 1;
        if attempts > max_attempts {
            return Err(SubcritError::ExcessiveRejection { attempts, n });
        }
        degrees.clear();
        let mut sum: u64 = 0;
        let mut ok = true;
        for i in 0..n {
            let d = law.sample(rng);
            sum += d as u64;
            // early abort: the remaining draws cannot repair an overshoot
            if sum > target {
                ok = false;
                break;
            }
            degrees.push(d);
            let _ = i;
        }
        if ok && sum == target {
            break;
        }
    }

    // cycle lemma: rotate after the first minimum of the Lukasiewicz path
    let mut best = i64::MAX;
    let mut cut = 0usize;
    let mut walk = 0i64;
    for (i, &d) in degrees.iter().enumerate() {
        walk += d as i64 - 1;
        if walk < best {
            best = walk;
            cut = i + 1;
        }
    }
    let rotated: Vec<u32> = (0..n).map(|i| degrees[(cut + i) % n]).collect();

    // rebuild the tree from the rotated degree sequence
    let mut parents = vec![0u32; n];
    let mut stack: Vec<(u32, u32)> = Vec::new(); // (vertex, remaining children)
    stack.push((0, rotated[0]));
    for v in 1..n as u32 {
        while let Some(&(_, 0)) = stack.last() {
            stack.pop();
        }
        let top = stack.last_mut().expect("degree sequence is a valid tree");
        parents[v as usize] = top.0;
        top.1 -= 1;
        stack.push((v, rotated[v as usize]));
    }
    Ok(GwTree {
        offspring: rotated,
        parents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn outerplanar_law_facts() {
        let law = gw_offspring(MapClass::Outerplanar).unwrap();
        assert!((law.p0 - 0.75).abs() < 1e-15);
        assert!((law.mean - 1.0).abs() < 1e-15);
        assert!((law.variance - 18.0).abs() < 1e-12);
        assert!((law.leaf_clt_variance() - 5.0 / 32.0).abs() < 1e-12);
    }

    #[test]
    fn bipartite_law_facts() {
        let law = gw_offspring(MapClass::BipartiteOuterplanar).unwrap();
        let p0 = (3.0 - 3.0f64.sqrt()) / 2.0;
        let var = 9.0 * (3.0f64.sqrt() - 1.0);
        let gamma2 = (11.0 * 3.0f64.sqrt() - 17.0) / 12.0;
        assert!((law.p0 - p0).abs() < 1e-9, "p0 = {}", law.p0);
        assert!((law.variance - var).abs() < 1e-9, "var = {}", law.variance);
        assert!((law.leaf_clt_variance() - gamma2).abs() < 1e-9);
    }

    #[test]
    fn corner_classes_have_no_tree_law() {
        assert!(gw_offspring(MapClass::General).is_err());
    }

    #[test]
    fn smallest_conditioned_tree() {
        // n = 2: the unique one-child tree; cut count is 0 (the child is a
        // leaf, the root is not counted)
        let law = gw_offspring(MapClass::Outerplanar).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = sample_gw_tree(2, &law, &mut rng).unwrap();
        assert_eq!(t.offspring, vec![1, 0]);
        assert_eq!(t.parents, vec![0, 0]);
        assert_eq!(t.cut_count(), 0);
    }

    #[test]
    fn conditioned_tree_shape() {
        let law = gw_offspring(MapClass::Outerplanar).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [5usize, 37, 200] {
            let t = sample_gw_tree(n, &law, &mut rng).unwrap();
            assert_eq!(t.n_vertices(), n);
            let total: u64 = t.offspring.iter().map(|&d| d as u64).sum();
            assert_eq!(total, n as u64 - 1);
            // parents point backwards: a valid forest rooted at 0
            for v in 1..n {
                assert!((t.parents[v] as usize) < v);
            }
        }
    }

    #[test]
    fn leaf_fraction_matches_p0() {
        let law = gw_offspring(MapClass::Outerplanar).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 2000;
        let reps = 40;
        let mut leaves = 0u64;
        for _ in 0..reps {
            leaves += sample_gw_tree(n, &law, &mut rng).unwrap().n_leaves() as u64;
        }
        let frac = leaves as f64 / (n as f64 * reps as f64);
        // 3/4 within a generous band
        assert!((frac - 0.75).abs() < 0.02, "leaf fraction {frac}");
    }
}
