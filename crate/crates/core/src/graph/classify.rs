use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Default vertex cap for the brute-force predicates.
pub const DEFAULT_CLASSIFY_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClassFlags {
    pub bipartite: bool,
    pub almost_bipartite: bool,
    pub comparability: bool,
    pub perfect: bool,
    pub complement_bipartite: bool,
    pub max_cliques_equicardinal: bool,
}

pub fn classify(g: &Graph) -> Result<GraphClassFlags> {
    classify_with_cap(g, DEFAULT_CLASSIFY_CAP)
}

pub fn classify_with_cap(g: &Graph, cap: usize) -> Result<GraphClassFlags> {
    if g.n() > cap {
        return Err(Error::SizeLimit {
            what: "vertex count for classification".into(),
            value: g.n(),
            limit: cap,
        });
    }
    let co = g.complement();
    let cliques = maximal_cliques(g);
    let sizes: Vec<u32> = cliques.iter().map(|c| c.count_ones()).collect();
    Ok(GraphClassFlags {
        bipartite: is_bipartite(g, g.full_mask()),
        almost_bipartite: is_almost_bipartite(g),
        comparability: is_comparability(g),
        perfect: !has_odd_hole(g) && !has_odd_hole(&co),
        complement_bipartite: is_bipartite(&co, co.full_mask()),
        max_cliques_equicardinal: sizes.windows(2).all(|w| w[0] == w[1]),
    })
}

/// 2-colouring of the subgraph induced on `mask`.
pub(crate) fn is_bipartite(g: &Graph, mask: u64) -> bool {
    let n = g.n();
    let mut colour = vec![-1i8; n];
    for s in 0..n {
        if mask >> s & 1 == 0 || colour[s] >= 0 {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let mut nb = g.neighbours(u) & mask;
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if colour[v] < 0 {
                    colour[v] = 1 - colour[u];
                    stack.push(v);
                } else if colour[v] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

fn is_almost_bipartite(g: &Graph) -> bool {
    let full = g.full_mask();
    (0..g.n()).any(|v| is_bipartite(g, full & !(1 << v)))
}

/// Does some induced subgraph on an odd number >= 5 of vertices form a cycle?
fn has_odd_hole(g: &Graph) -> bool {
    let n = g.n();
    if n < 5 {
        return false;
    }
    for mask in 0u64..(1u64 << n) {
        let k = mask.count_ones();
        if k < 5 || k % 2 == 0 {
            continue;
        }
        if is_induced_cycle(g, mask) {
            return true;
        }
    }
    false
}

fn is_induced_cycle(g: &Graph, mask: u64) -> bool {
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if (g.neighbours(v) & mask).count_ones() != 2 {
            return false;
        }
    }
    // 2-regular; a cycle iff connected
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = g.neighbours(v) & mask & !seen;
        seen |= nb;
        frontier |= nb;
    }
    seen == mask
}

/// Bron–Kerbosch with pivoting; returns vertex bitmasks.
pub(crate) fn maximal_cliques(g: &Graph) -> Vec<u64> {
    fn bk(g: &Graph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let px = p | x;
        let pivot = (0..g.n())
            .filter(|&u| px >> u & 1 == 1)
            .max_by_key(|&u| (g.neighbours(u) & p).count_ones())
            .expect("p | x nonempty");
        let mut cand = p & !g.neighbours(pivot);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let nv = g.neighbours(v);
            bk(g, r | 1 << v, p & nv, x & nv, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    bk(g, 0, g.full_mask(), 0, &mut out);
    out.sort_unstable();
    out
}

/// Search for a transitive orientation. Orienting `u -> v` forces, for
/// every `w` adjacent to `u` but not to `v`, the arc `u -> w`, and for every
/// `w` adjacent to `v` but not to `u`, the arc `w -> v`; it also forces the
/// transitive arcs `u -> w` for each `v -> w` and `w -> v` for each `w -> u`.
/// Unforced edges are branched on.
pub(crate) fn is_comparability(g: &Graph) -> bool {
    let n = g.n();
    // dir[u][v] == true means u -> v has been fixed
    let mut arcs = vec![0u64; n];
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
    search(g, &edges, &mut arcs)
}

fn oriented(arcs: &[u64], u: usize, v: usize) -> bool {
    arcs[u] >> v & 1 == 1
}

fn propagate(g: &Graph, arcs: &mut [u64], u: usize, v: usize) -> bool {
    let mut queue = vec![(u, v)];
    while let Some((a, b)) = queue.pop() {
        if oriented(arcs, a, b) {
            continue;
        }
        if oriented(arcs, b, a) || !g.adjacent(a, b) {
            return false;
        }
        arcs[a] |= 1 << b;
        let na = g.neighbours(a);
        let nb = g.neighbours(b);
        // a -> w for w ~ a, w !~ b
        let mut m = na & !nb & !(1 << b);
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            queue.push((a, w));
        }
        // w -> b for w ~ b, w !~ a
        let mut m = nb & !na & !(1 << a);
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            queue.push((w, b));
        }
        // transitivity: b -> w gives a -> w; w -> a gives w -> b
        let mut m = arcs[b];
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            if w == a {
                return false;
            }
            queue.push((a, w));
        }
        for w in 0..g.n() {
            if oriented(arcs, w, a) {
                if w == b {
                    return false;
                }
                queue.push((w, b));
            }
        }
    }
    true
}

fn search(g: &Graph, edges: &[(usize, usize)], arcs: &mut Vec<u64>) -> bool {
    let next = edges
        .iter()
        .find(|&&(a, b)| !oriented(arcs, a, b) && !oriented(arcs, b, a));
    let Some(&(a, b)) = next else {
        return is_transitive(g, arcs);
    };
    for (x, y) in [(a, b), (b, a)] {
        let mut trial = arcs.clone();
        if propagate(g, &mut trial, x, y) && search(g, edges, &mut trial) {
            *arcs = trial;
            return true;
        }
    }
    false
}

fn is_transitive(g: &Graph, arcs: &[u64]) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in 0..n {
            if !oriented(arcs, a, b) {
                continue;
            }
            for c in 0..n {
                if oriented(arcs, b, c) && !oriented(arcs, a, c) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;

    /// Independent oracle: try all 2^|E| orientations.
    fn comparability_brute_force(g: &Graph) -> bool {
        let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
        let n = g.n();
        'outer: for choice in 0u64..(1u64 << edges.len()) {
            let mut arcs = vec![0u64; n];
            for (k, &(a, b)) in edges.iter().enumerate() {
                if choice >> k & 1 == 0 {
                    arcs[a] |= 1 << b;
                } else {
                    arcs[b] |= 1 << a;
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if arcs[a] >> b & 1 == 1 && arcs[b] >> c & 1 == 1 && arcs[a] >> c & 1 == 0 {
                            continue 'outer;
                        }
                    }
                }
            }
            return true;
        }
        false
    }

    #[test]
    fn c5_flags() {
        let f = classify(&Graph::cycle(5).unwrap()).unwrap();
        assert!(!f.bipartite);
        assert!(f.almost_bipartite);
        assert!(!f.comparability);
        assert!(!f.perfect);
    }

    #[test]
    fn cbar7_flags() {
        let f = classify(&Graph::cbar(3).unwrap()).unwrap();
        assert!(!f.perfect);
        assert!(!f.comparability);
        assert!(!f.almost_bipartite);
        assert!(!f.complement_bipartite);
    }

    #[test]
    fn k4_flags() {
        let f = classify(&Graph::complete(4).unwrap()).unwrap();
        assert!(!f.bipartite);
        assert!(f.comparability);
        assert!(f.perfect);
        assert!(f.max_cliques_equicardinal);
    }

    #[test]
    fn size_cap() {
        let g = Graph::cycle(13).unwrap();
        assert!(matches!(classify(&g), Err(Error::SizeLimit { .. })));
        assert!(classify_with_cap(&g, 13).is_ok());
    }

    #[test]
    fn comparability_agrees_with_orientation_brute_force() {
        for n in 1..=5 {
            for g in enumerate_graphs(n).unwrap() {
                assert_eq!(is_comparability(&g), comparability_brute_force(&g), "{:?}", g.edges());
            }
        }
        for i in 1..=5 {
            let g = Graph::fixture(i).unwrap();
            assert_eq!(is_comparability(&g), comparability_brute_force(&g));
        }
    }

    #[test]
    fn flag_implications_hold() {
        for n in 1..=6 {
            for g in enumerate_graphs(n).unwrap() {
                let f = classify(&g).unwrap();
                if f.bipartite {
                    assert!(f.almost_bipartite && f.perfect);
                }
                if f.comparability {
                    assert!(f.perfect);
                }
                assert_eq!(classify(&g.complement()).unwrap().bipartite, f.complement_bipartite);
            }
        }
    }

    #[test]
    fn cliques_of_c5() {
        let c = maximal_cliques(&Graph::cycle(5).unwrap());
        assert_eq!(c.len(), 5);
        assert!(c.iter().all(|m| m.count_ones() == 2));
    }
}
