use serde::Serialize;

use super::Graph;

/// All stable sets of a graph in canonical order: by cardinality, then
/// lexicographically on the sorted (1-based) elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableSetFamily {
    pub graph: Graph,
    pub sets: Vec<Vec<usize>>,
    pub alpha: usize,
}

impl StableSetFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Position of a stable set (given as sorted 1-based vertices).
    pub fn index_of(&self, set: &[usize]) -> Option<usize> {
        self.sets.iter().position(|s| s == set)
    }

    /// Number of stable sets with at least two elements.
    pub fn large_count(&self) -> usize {
        self.sets.iter().filter(|s| s.len() >= 2).count()
    }

    /// 0/1 indicator vector of a member (the lattice point of the polytope).
    pub fn indicator(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.graph.n()];
        for &x in &self.sets[i] {
            v[x - 1] = 1;
        }
        v
    }
}

/// Enumerate `S(G)`. Exponential in `n`; meant for small graphs.
pub fn stable_sets(g: &Graph) -> StableSetFamily {
    let n = g.n();
    let mut masks: Vec<u64> = Vec::new();
    // extend sets only by vertices larger than their maximum element
    fn rec(g: &Graph, start: usize, cur: u64, cand: u64, out: &mut Vec<u64>) {
        out.push(cur);
        for v in start..g.n() {
            if cand >> v & 1 == 1 {
                rec(g, v + 1, cur | 1 << v, cand & !g.neighbours(v) & !(1 << v), out);
            }
        }
    }
    rec(g, 0, 0, g.full_mask(), &mut masks);
    let mut sets: Vec<Vec<usize>> = masks
        .into_iter()
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let alpha = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    StableSetFamily {
        graph: g.clone(),
        sets,
        alpha,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = vs
                .iter()
                .all(|&a| vs.iter().all(|&b| a == b || !g.adjacent(a, b)));
            if ok {
                out.push(vs.iter().map(|v| v + 1).collect());
            }
        }
        out
    }

    #[test]
    fn complete_graph_has_only_trivial_sets() {
        let f = stable_sets(&Graph::complete(5).unwrap());
        assert_eq!(f.len(), 6);
        assert_eq!(f.alpha, 1);
        assert_eq!(f.sets[0], Vec::<usize>::new());
    }

    #[test]
    fn cbar7_listing() {
        let f = stable_sets(&Graph::cbar(3).unwrap());
        assert_eq!(f.len(), 15);
        assert_eq!(f.alpha, 2);
        let pairs: Vec<Vec<usize>> = f.sets.iter().filter(|s| s.len() == 2).cloned().collect();
        assert_eq!(
            pairs,
            vec![
                vec![1, 2],
                vec![1, 7],
                vec![2, 3],
                vec![3, 4],
                vec![4, 5],
                vec![5, 6],
                vec![6, 7]
            ]
        );
    }

    #[test]
    fn cbar_counts() {
        for k in 3..=8 {
            assert_eq!(stable_sets(&Graph::cbar(k).unwrap()).len(), 4 * k + 3);
        }
    }

    #[test]
    fn c5_matches_brute_force() {
        let g = Graph::cycle(5).unwrap();
        let f = stable_sets(&g);
        assert_eq!(f.len(), 11);
        let mut bf = brute_force(&g);
        bf.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(f.sets, bf);
    }

    #[test]
    fn members_are_stable_and_contain_singletons() {
        for g in [Graph::fixture(2).unwrap(), Graph::family(1).unwrap(), Graph::path(6).unwrap()] {
            let f = stable_sets(&g);
            for s in &f.sets {
                for &a in s {
                    for &b in s {
                        assert!(a == b || !g.has_edge(a, b));
                    }
                }
            }
            for v in 1..=g.n() {
                assert!(f.index_of(&[v]).is_some());
            }
            assert_eq!(f.len(), brute_force(&g).len());
        }
        assert_eq!(stable_sets(&Graph::family(1).unwrap()).len(), 18);
    }
}
