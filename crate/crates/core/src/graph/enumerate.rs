use std::collections::BTreeMap;

use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};

/// Canonical forms are computed over all `n!` relabellings, so enumeration
/// is only offered for small orders.
pub const MAX_ENUMERATION_ORDER: usize = 7;

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    fn heap(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    // position of (a, b) in the row-major upper triangle
    (a * (2 * n - a - 1) / 2 + (b - a - 1)) as u32
}

fn code_under(g: &Graph, edges: &[(usize, usize)], perm: &[u8]) -> u64 {
    let n = g.n();
    let mut code = 0u64;
    for &(i, j) in edges {
        code |= 1u64 << pair_bit(n, perm[i] as usize, perm[j] as usize);
    }
    code
}

fn canonical_with(g: &Graph, perms: &[Vec<u8>]) -> u64 {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
    perms
        .iter()
        .map(|p| code_under(g, &edges, p))
        .min()
        .unwrap_or(0)
}

/// Minimal upper-triangle adjacency code over all relabellings. Two graphs of
/// the same order are isomorphic iff their codes agree.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    check_order(g.n())?;
    Ok(canonical_with(g, &permutations(g.n())))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<u32> = (0..g.n()).map(|i| g.neighbours(i).count_ones()).collect();
    let mut dh: Vec<u32> = (0..h.n()).map(|i| h.neighbours(i).count_ones()).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let he: Vec<(usize, usize)> = h.edges().into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
    let target = code_under(h, &he, &(0..h.n() as u8).collect::<Vec<_>>());
    let ge: Vec<(usize, usize)> = g.edges().into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
    permutations(g.n())
        .iter()
        .any(|p| code_under(g, &ge, p) == target)
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::SizeLimit {
            what: "graph order for canonical labelling".into(),
            value: n,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(())
}

/// One representative of each isomorphism class of graphs on `[n]`,
/// sorted by canonical code.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    let mut reps = vec![Graph::empty(1)?];
    for m in 2..=n {
        let perms = permutations(m);
        let candidates: Vec<Graph> = reps
            .iter()
            .flat_map(|g| {
                (0u64..1 << (m - 1)).map(move |nbhd| {
                    let mut edges = g.edges();
                    for v in 0..m - 1 {
                        if nbhd >> v & 1 == 1 {
                            edges.push((v + 1, m));
                        }
                    }
                    Graph::from_edges(m, &edges).expect("valid extension")
                })
            })
            .collect();
        let coded: Vec<(u64, Graph)> = candidates
            .into_par_iter()
            .map(|g| (canonical_with(&g, &perms), g))
            .collect();
        let mut classes: BTreeMap<u64, Graph> = BTreeMap::new();
        for (code, g) in coded {
            classes.entry(code).or_insert(g);
        }
        reps = classes.into_values().collect();
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let expect = [1, 2, 4, 11, 34, 156];
        for (n, &count) in (1..=6).zip(expect.iter()) {
            assert_eq!(enumerate_graphs(n).unwrap().len(), count, "n = {n}");
        }
    }

    #[test]
    fn order_limit() {
        assert!(enumerate_graphs(MAX_ENUMERATION_ORDER + 1).is_err());
        assert!(enumerate_graphs(0).is_err());
    }

    #[test]
    fn code_is_relabelling_invariant() {
        let g = Graph::fixture(4).unwrap();
        let perm = [3, 0, 5, 1, 4, 2];
        let h = g.relabel(&perm);
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        assert!(is_isomorphic(&g, &h));
        assert!(!is_isomorphic(&g, &Graph::fixture(1).unwrap()));
    }

    #[test]
    fn fixtures_are_pairwise_non_isomorphic() {
        let gs: Vec<Graph> = (1..=5).map(|i| Graph::fixture(i).unwrap()).collect();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(is_isomorphic(&gs[i], &gs[j]), i == j);
            }
        }
    }
}
