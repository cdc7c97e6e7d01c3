//! Polynomial-time structure recognizers: linear forests, outerplanarity,
//! planarity, chordality, clique number, and small-pattern subgraph search.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::planarity::is_planar_adj;

/// Largest pattern accepted by the generic subgraph searchers.
pub const MAX_PATTERN_VERTICES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizerError {
    #[error("pattern has {0} vertices, searcher supports at most {MAX_PATTERN_VERTICES}")]
    PatternTooLarge(usize),
    #[error("graph is not chordal")]
    NotChordal,
}

/// True when every component is a path: maximum degree at most 2 and no cycle.
pub fn is_linear_forest(g: &Graph) -> bool {
    g.max_degree().unwrap_or(0) <= 2 && !has_cycle(g)
}

/// True when the graph contains any cycle, i.e. some component has at least
/// as many edges as vertices.
pub fn has_cycle(g: &Graph) -> bool {
    g.edge_count() + g.components().len() > g.n()
}

/// Planarity via the left-right criterion, behind an edge-count prefilter.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).iter().collect()).collect();
    is_planar_adj(&adj)
}

/// Outerplanarity test: a graph is outerplanar exactly when adding one apex
/// vertex adjacent to everything keeps it planar. Components are tested
/// separately so the apex construction never exceeds the planarity backend's
/// reach.
pub fn is_outerplanar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 2 && g.edge_count() > 2 * n - 3 {
        return false;
    }
    for comp in g.components() {
        let verts: Vec<usize> = comp.iter().collect();
        let index_of = |v: usize| verts.iter().position(|&x| x == v).unwrap();
        let k = verts.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        for (i, &v) in verts.iter().enumerate() {
            for w in g.neighbors(v).iter() {
                if w > v {
                    let j = index_of(w);
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
            adj[i].push(k);
            adj[k].push(i);
        }
        if !is_planar_adj(&adj) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Chordality
// ---------------------------------------------------------------------------

/// Result of the chordality analysis.
#[derive(Debug, Clone)]
pub struct ChordalAnalysis {
    pub is_chordal: bool,
    /// Perfect elimination ordering when chordal: eliminating vertices in
    /// this order always removes a simplicial vertex.
    pub peo: Option<Vec<usize>>,
    /// Exact clique number (from the elimination order when chordal, from
    /// branch and bound otherwise).
    pub clique_number: usize,
    /// Vertices whose neighborhood induces a clique.
    pub simplicial: VertexSet,
}

/// Lexicographic BFS visit order. O(n^2) partition refinement; plenty for
/// 64 vertices.
fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut buckets: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut order = Vec::with_capacity(n);
    while let Some(first) = buckets.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            buckets.remove(0);
        }
        order.push(v);
        let nv = g.neighbors(v);
        let mut next = Vec::with_capacity(buckets.len() * 2);
        for bucket in buckets.drain(..) {
            let (hit, miss): (Vec<usize>, Vec<usize>) =
                bucket.into_iter().partition(|&w| nv.contains(w));
            if !hit.is_empty() {
                next.push(hit);
            }
            if !miss.is_empty() {
                next.push(miss);
            }
        }
        buckets = next;
    }
    order
}

/// Chordality, elimination order, clique number and simplicial vertices.
///
/// The Lex-BFS order reversed is a perfect elimination ordering exactly when
/// the graph is chordal; the verification pass checks, for each vertex, that
/// its later neighbors minus the first of them are neighbors of that first
/// one.
pub fn chordal_analyze(g: &Graph) -> ChordalAnalysis {
    let n = g.n();
    let order = lex_bfs(g);
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Candidate PEO: reverse of the visit order.
    let peo: Vec<usize> = order.iter().rev().copied().collect();
    let mut peo_pos = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        peo_pos[v] = i;
    }
    let mut chordal = true;
    let mut omega = if n == 0 { 0 } else { 1 };
    'verify: for (i, &v) in peo.iter().enumerate() {
        let later: Vec<usize> = g.neighbors(v).iter().filter(|&w| peo_pos[w] > i).collect();
        omega = omega.max(1 + later.len());
        if later.is_empty() {
            continue;
        }
        let first = *later.iter().min_by_key(|&&w| peo_pos[w]).unwrap();
        for &w in &later {
            if w != first && !g.has_edge(first, w) {
                chordal = false;
                break 'verify;
            }
        }
    }
    let simplicial: VertexSet = g
        .vertices()
        .filter(|&v| g.is_clique(g.neighbors(v)))
        .collect();
    ChordalAnalysis {
        is_chordal: chordal,
        peo: chordal.then_some(peo),
        clique_number: if chordal { omega } else { clique_number(g) },
        simplicial,
    }
}

// ---------------------------------------------------------------------------
// Cliques
// ---------------------------------------------------------------------------

/// Exact clique number by branch and bound with a greedy coloring bound.
pub fn clique_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let mut best = 1;
    expand_clique(g, 0, g.vertex_set(), &mut best);
    best
}

fn greedy_color_bound(g: &Graph, cand: VertexSet) -> usize {
    let mut remaining = cand;
    let mut colors = 0;
    while !remaining.is_empty() {
        colors += 1;
        // One color class: a maximal independent set among `remaining`.
        let mut pool = remaining;
        while let Some(v) = pool.first() {
            pool = pool - g.neighbors(v).with(v);
            remaining.remove(v);
        }
    }
    colors
}

fn expand_clique(g: &Graph, size: usize, cand: VertexSet, best: &mut usize) {
    if cand.is_empty() {
        *best = (*best).max(size);
        return;
    }
    if size + cand.len() <= *best || size + greedy_color_bound(g, cand) <= *best {
        return;
    }
    let v = cand.first().unwrap();
    expand_clique(g, size + 1, cand & g.neighbors(v), best);
    expand_clique(g, size, cand.without(v), best);
}

// ---------------------------------------------------------------------------
// Subgraph and induced-subgraph search
// ---------------------------------------------------------------------------

/// True when some injection maps pattern edges onto edges of `g`.
pub fn contains_subgraph(g: &Graph, pattern: &Graph) -> Result<bool, RecognizerError> {
    embed(g, pattern, false)
}

/// True when some injection maps pattern edges onto edges and pattern
/// non-edges onto non-edges of `g`.
pub fn contains_induced(g: &Graph, pattern: &Graph) -> Result<bool, RecognizerError> {
    embed(g, pattern, true)
}

fn embed(g: &Graph, pattern: &Graph, induced: bool) -> Result<bool, RecognizerError> {
    let pn = pattern.n();
    if pn > MAX_PATTERN_VERTICES {
        return Err(RecognizerError::PatternTooLarge(pn));
    }
    if pn > g.n() || pattern.edge_count() > g.edge_count() {
        return Ok(false);
    }
    if pn == 0 {
        return Ok(true);
    }
    // Pattern vertices in descending degree order for early pruning;
    // deterministic tie-break by index.
    let mut order: Vec<usize> = pattern.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));

    let mut image = vec![usize::MAX; pn];
    let mut used = VertexSet::EMPTY;

    fn rec(
        g: &Graph,
        pattern: &Graph,
        order: &[usize],
        induced: bool,
        depth: usize,
        image: &mut [usize],
        used: &mut VertexSet,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let pdeg = pattern.degree(p);
        for cand in g.vertices() {
            if used.contains(cand) || g.degree(cand) < pdeg {
                continue;
            }
            let ok = order[..depth].iter().all(|&q| {
                let pat_edge = pattern.has_edge(p, q);
                let host_edge = g.has_edge(cand, image[q]);
                if induced {
                    pat_edge == host_edge
                } else {
                    !pat_edge || host_edge
                }
            });
            if !ok {
                continue;
            }
            image[p] = cand;
            used.insert(cand);
            if rec(g, pattern, order, induced, depth + 1, image, used) {
                return true;
            }
            used.remove(cand);
        }
        false
    }

    Ok(rec(g, pattern, &order, induced, 0, &mut image, &mut used))
}

// ---------------------------------------------------------------------------
// Exact parameter value for chordal graphs
// ---------------------------------------------------------------------------

/// Exact parameter value for chordal graphs: omega(G) when G has an induced
/// complete-minus-triangle on omega(G) + 2 vertices, omega(G) - 1 otherwise.
/// Edgeless graphs report 0, matching the component-maximum convention used
/// throughout the engine.
pub fn chordal_mu(g: &Graph) -> Result<usize, RecognizerError> {
    let analysis = chordal_analyze(g);
    if !analysis.is_chordal {
        return Err(RecognizerError::NotChordal);
    }
    if g.is_edgeless() {
        return Ok(0);
    }
    let omega = analysis.clique_number;
    let target = omega + 2;
    if target > g.n() {
        return Ok(omega - 1);
    }
    let found = if target <= MAX_PATTERN_VERTICES {
        contains_induced(g, &Graph::k_minus_triangle(target).unwrap())?
    } else {
        has_induced_split_pattern(g, omega)
    };
    Ok(if found { omega } else { omega - 1 })
}

/// Induced K_{omega+2} minus a triangle, specialized for chordal hosts whose
/// pattern exceeds the generic searcher: the pattern is a clique core of
/// size omega - 1 fully joined to an independent triple, and every candidate
/// core is a subset of a maximal clique listed by the elimination order.
fn has_induced_split_pattern(g: &Graph, omega: usize) -> bool {
    let core_size = omega - 1;
    let analysis = chordal_analyze(g);
    let peo = match analysis.peo {
        Some(p) => p,
        None => return false,
    };
    let mut peo_pos = vec![0usize; g.n()];
    for (i, &v) in peo.iter().enumerate() {
        peo_pos[v] = i;
    }
    let mut cores = std::collections::HashSet::new();
    for (i, &v) in peo.iter().enumerate() {
        let clique: VertexSet = g
            .neighbors(v)
            .iter()
            .filter(|&w| peo_pos[w] > i)
            .collect::<VertexSet>()
            .with(v);
        if clique.len() < core_size {
            continue;
        }
        // All core-sized subsets of this clique.
        let members: Vec<usize> = clique.iter().collect();
        for drop_mask in subsets_of_size(members.len(), members.len() - core_size) {
            let mut core = clique;
            for (idx, &m) in members.iter().enumerate() {
                if drop_mask >> idx & 1 == 1 {
                    core.remove(m);
                }
            }
            if !cores.insert(core) {
                continue;
            }
            // Common neighbors of the core, outside it.
            let mut t = g.vertex_set() - core;
            for c in core.iter() {
                t = t & g.neighbors(c);
            }
            if independent_triple_exists(g, t) {
                return true;
            }
        }
    }
    false
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    fn rec(n: usize, k: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=(n - k) {
            rec(n, k - 1, i + 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, 0, &mut out);
    }
    out
}

fn independent_triple_exists(g: &Graph, t: VertexSet) -> bool {
    for u in t.iter() {
        let tu = t - g.neighbors(u).with(u);
        for v in tu.iter() {
            if v <= u {
                continue;
            }
            let tv = tu - g.neighbors(v).with(v);
            if tv.iter().any(|w| w > v) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forest_classification() {
        assert!(is_linear_forest(&Graph::path(5).unwrap()));
        assert!(is_linear_forest(&Graph::edgeless(4).unwrap()));
        assert!(!is_linear_forest(
            &Graph::complete_multipartite(&[1, 3]).unwrap()
        ));
        assert!(!is_linear_forest(&Graph::cycle(4).unwrap()));
    }

    #[test]
    fn cycle_detection() {
        assert!(!has_cycle(&Graph::path(6).unwrap()));
        assert!(has_cycle(&Graph::cycle(3).unwrap()));
        // Perfect matching on 8 vertices.
        let m = Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        assert!(!has_cycle(&m));
        // A tree plus one extra edge.
        let mut t = Graph::path(5).unwrap();
        t = t.with_edge(0, 4).unwrap();
        assert!(has_cycle(&t));
    }

    #[test]
    fn planarity_basics() {
        assert!(!is_planar(&Graph::complete(5).unwrap()));
        assert!(!is_planar(&Graph::complete_multipartite(&[3, 3]).unwrap()));
        let t = Graph::stacked_triangulation(10, 11).unwrap();
        assert!(is_planar(&t));
        assert_eq!(t.edge_count(), 24);
    }

    #[test]
    fn outerplanarity_basics() {
        assert!(is_outerplanar(&Graph::cycle(7).unwrap()));
        assert!(!is_outerplanar(&Graph::complete(4).unwrap()));
        assert!(!is_outerplanar(
            &Graph::complete_multipartite(&[2, 3]).unwrap()
        ));
        assert!(is_outerplanar(&Graph::path(6).unwrap()));
        // K_{1,3} is outerplanar but not a linear forest.
        let star = Graph::complete_multipartite(&[1, 3]).unwrap();
        assert!(is_outerplanar(&star));
    }

    #[test]
    fn chordal_analysis_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(!chordal_analyze(&c4).is_chordal);

        let tree = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        let a = chordal_analyze(&tree);
        assert!(a.is_chordal);
        assert_eq!(a.clique_number, 2);

        // K_5 minus a triangle: chordal with clique number 3; every 4-cycle
        // is chorded by the universal pair.
        let g = Graph::k_minus_triangle(5).unwrap();
        let a = chordal_analyze(&g);
        assert!(a.is_chordal);
        assert_eq!(a.clique_number, 3);
    }

    #[test]
    fn peo_eliminates_simplicial_vertices() {
        let g = Graph::k_minus_triangle(6).unwrap();
        let a = chordal_analyze(&g);
        let peo = a.peo.unwrap();
        let mut remaining = g.vertex_set();
        for &v in &peo {
            let nbrs = g.neighbors(v) & remaining;
            assert!(
                g.is_clique(nbrs),
                "vertex {v} is not simplicial when eliminated"
            );
            remaining.remove(v);
        }
    }

    #[test]
    fn simplicial_vertices_in_path() {
        let p4 = Graph::path(4).unwrap();
        let a = chordal_analyze(&p4);
        let s: Vec<usize> = a.simplicial.iter().collect();
        assert_eq!(s, vec![0, 3]);
    }

    #[test]
    fn clique_number_examples() {
        assert_eq!(
            clique_number(&Graph::complete_multipartite(&[2, 2, 2, 2, 2]).unwrap()),
            5
        );
        assert_eq!(clique_number(&Graph::cycle(5).unwrap()), 2);
        let k6 = Graph::complete(4)
            .unwrap()
            .join(&Graph::complete(2).unwrap())
            .unwrap();
        assert_eq!(clique_number(&k6), 6);
        assert_eq!(clique_number(&Graph::edgeless(3).unwrap()), 1);
    }

    #[test]
    fn clique_number_matches_brute_force_small() {
        for n in 1..=7usize {
            for g in crate::corpus::enumerate_graphs(n).unwrap() {
                let g = g.unwrap();
                let brute = (0u64..1 << n)
                    .filter(|&mask| g.is_clique(VertexSet::from_bits(mask)))
                    .map(|mask| mask.count_ones() as usize)
                    .max()
                    .unwrap();
                assert_eq!(clique_number(&g), brute, "{g:?}");
            }
        }
    }

    /// Oracle: chordal iff no vertex subset induces a cycle of length >= 4.
    fn chordal_brute(g: &Graph) -> bool {
        let n = g.n();
        for mask in 0u64..1 << n {
            if mask.count_ones() < 4 {
                continue;
            }
            let sub = g.induced_subgraph(VertexSet::from_bits(mask)).unwrap();
            let k = sub.n();
            let is_cycle =
                sub.edge_count() == k && (0..k).all(|v| sub.degree(v) == 2) && sub.is_connected();
            if is_cycle {
                return false;
            }
        }
        true
    }

    #[test]
    fn chordality_matches_the_induced_cycle_oracle() {
        for n in 1..=7usize {
            for g in crate::corpus::enumerate_graphs(n).unwrap() {
                let g = g.unwrap();
                assert_eq!(chordal_analyze(&g).is_chordal, chordal_brute(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn subgraph_search_examples() {
        let p32 = Graph::p32();
        assert!(!contains_subgraph(&Graph::cycle(7).unwrap(), &p32).unwrap());
        assert!(contains_subgraph(&p32, &p32).unwrap());
        // K_{1,1,3} is K_5 minus a triangle.
        let g = Graph::complete_multipartite(&[1, 1, 3]).unwrap();
        assert!(contains_induced(&g, &Graph::k_minus_triangle(5).unwrap()).unwrap());
    }

    #[test]
    fn induced_vs_subgraph_distinction() {
        // P_3 is a subgraph of K_3 but not an induced subgraph.
        let k3 = Graph::complete(3).unwrap();
        let p3 = Graph::path(3).unwrap();
        assert!(contains_subgraph(&k3, &p3).unwrap());
        assert!(!contains_induced(&k3, &p3).unwrap());
    }

    #[test]
    fn pattern_capacity_error() {
        let big = Graph::path(11).unwrap();
        assert!(matches!(
            contains_subgraph(&Graph::path(12).unwrap(), &big),
            Err(RecognizerError::PatternTooLarge(11))
        ));
    }

    #[test]
    fn chordal_mu_examples() {
        // Path: omega 2, no induced K_4 - triangle (that is K_{1,3}).
        assert_eq!(chordal_mu(&Graph::path(5).unwrap()).unwrap(), 1);
        // Star: contains K_4 - triangle = itself.
        assert_eq!(
            chordal_mu(&Graph::complete_multipartite(&[1, 3]).unwrap()).unwrap(),
            2
        );
        // Complete: omega 6, K_8 - triangle cannot fit.
        assert_eq!(chordal_mu(&Graph::complete(6).unwrap()).unwrap(), 5);
        // Edgeless graphs use the component-maximum convention.
        assert_eq!(chordal_mu(&Graph::edgeless(3).unwrap()).unwrap(), 0);
        assert!(chordal_mu(&Graph::cycle(4).unwrap()).is_err());
    }

    #[test]
    fn chordal_mu_specialized_search_agrees_with_generic() {
        // For hosts where the generic searcher applies, both routes agree.
        for n in 1..=6usize {
            for g in crate::corpus::enumerate_graphs(n).unwrap() {
                let g = g.unwrap();
                let a = chordal_analyze(&g);
                if !a.is_chordal || g.is_edgeless() {
                    continue;
                }
                let omega = a.clique_number;
                if omega + 2 > g.n() || omega < 1 {
                    continue;
                }
                let generic =
                    contains_induced(&g, &Graph::k_minus_triangle(omega + 2).unwrap()).unwrap();
                assert_eq!(
                    has_induced_split_pattern(&g, omega),
                    generic,
                    "{g:?} omega={omega}"
                );
            }
        }
    }

    #[test]
    fn chordal_mu_handles_large_clique_numbers() {
        // K_12 with a pendant path: omega = 12, pattern would need 14
        // vertices, far past the generic searcher.
        let mut g = Graph::complete(12)
            .unwrap()
            .disjoint_union(&Graph::path(3).unwrap())
            .unwrap();
        g = g.with_edge(0, 12).unwrap();
        assert_eq!(chordal_mu(&g).unwrap(), 11);
    }

    #[test]
    fn ladder_implications_hold_on_small_corpus() {
        for n in 1..=6usize {
            for g in crate::corpus::enumerate_graphs(n).unwrap() {
                let g = g.unwrap();
                if is_linear_forest(&g) {
                    assert!(is_outerplanar(&g), "{g:?}");
                }
                if is_outerplanar(&g) {
                    assert!(is_planar(&g), "{g:?}");
                }
            }
        }
    }
}
