//! Exact minor containment for small hosts, the Hadwiger number, and the
//! Petersen-family recognizer behind linkless embeddability.
//!
//! Minor search explores the contraction closure of the host: a pattern is a
//! minor exactly when it is a subgraph of some graph reachable by edge
//! contractions, so each visited state gets a subgraph test and spawns its
//! contractions. States are deduplicated by canonical form (raw adjacency
//! past the canonical-form capacity). The search is budgeted by expanded
//! states and answers `Unknown` when the budget bites — never a wrong
//! answer.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::corpus::{canonical_form, CanonicalForm};
use crate::graph::Graph;
use crate::recognizers::{clique_number, contains_subgraph};

/// Default node-expansion budget for minor searches.
pub const DEFAULT_MINOR_BUDGET: u64 = 10_000_000;

/// Three-valued answer for budgeted searches.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ternary {
    True,
    False,
    Unknown,
}

impl Ternary {
    pub fn is_true(self) -> bool {
        self == Ternary::True
    }
    pub fn is_false(self) -> bool {
        self == Ternary::False
    }
}

/// Canonical memo keys collapse isomorphic states but cost a permutation
/// search that degenerates on dense symmetric graphs past 8 vertices, so
/// larger states fall back to raw adjacency keys (sound, fewer hits).
const MAX_MEMO_CANON: usize = 8;

#[derive(PartialEq, Eq, Hash)]
enum MemoKey {
    Canon(CanonicalForm),
    Raw(Graph),
}

fn memo_key(g: &Graph) -> MemoKey {
    if g.n() <= MAX_MEMO_CANON {
        MemoKey::Canon(canonical_form(g).expect("within canonical capacity"))
    } else {
        MemoKey::Raw(g.clone())
    }
}

/// Subgraph test with cheap pruning. Complete patterns route through the
/// clique solver (no pattern-size cap); everything else uses the generic
/// backtracking search.
fn subgraph_hit(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    if pattern.is_complete() {
        return clique_number(host) >= pattern.n();
    }
    // Sorted-degree dominance: the i-th largest pattern degree needs an
    // i-th largest host degree at least as big.
    let hd = host.degree_sequence();
    let pd = pattern.degree_sequence();
    if pd.iter().zip(hd.iter()).any(|(p, h)| p > h) {
        return false;
    }
    contains_subgraph(host, pattern).expect("minor patterns fit the searcher")
}

/// Is `pattern` a minor of `host`? Exact within `budget` expanded states.
///
/// Non-complete patterns past the generic subgraph searcher's reach (10
/// vertices) answer `Unknown`; complete patterns of any order route through
/// the clique solver instead.
pub fn has_minor(host: &Graph, pattern: &Graph, budget: u64) -> Ternary {
    if pattern.n() == 0 {
        return Ternary::True;
    }
    if !pattern.is_complete() && pattern.n() > crate::recognizers::MAX_PATTERN_VERTICES {
        return Ternary::Unknown;
    }
    if pattern.is_edgeless() {
        return if host.n() >= pattern.n() {
            Ternary::True
        } else {
            Ternary::False
        };
    }
    let pn = pattern.n();
    let pm = pattern.edge_count();
    // Contractions in a simple graph only lose edges, so a state below the
    // pattern's edge count is dead. This alone kills dense-pattern searches
    // quickly (a K_6 hunt in the 15-edge Petersen graph stops at depth one).
    let viable = |g: &Graph| g.n() >= pn && g.edge_count() >= pm;
    if !viable(host) {
        return Ternary::False;
    }
    let mut visited: HashSet<MemoKey> = HashSet::new();
    visited.insert(memo_key(host));
    let mut stack = vec![host.clone()];
    let mut expanded: u64 = 0;
    while let Some(g) = stack.pop() {
        expanded += 1;
        if expanded > budget {
            return Ternary::Unknown;
        }
        if subgraph_hit(&g, pattern) {
            return Ternary::True;
        }
        if g.n() == pn {
            continue;
        }
        for (u, v) in g.edges() {
            let child = g.contract_edge(u, v).expect("iterating real edges");
            if !viable(&child) {
                continue;
            }
            if visited.insert(memo_key(&child)) {
                stack.push(child);
            }
        }
    }
    Ternary::False
}

/// Hadwiger number as a bracket; `lo == hi` when the search completed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HadwigerBracket {
    pub lo: usize,
    pub hi: usize,
}

impl HadwigerBracket {
    pub fn exact(self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

/// Largest t such that K_t is a minor, scanned upward from the clique
/// number. A budget hit reports the confirmed lower end against the
/// edge-count ceiling.
pub fn hadwiger_number(g: &Graph, budget: u64) -> HadwigerBracket {
    let n = g.n();
    if n == 0 {
        return HadwigerBracket { lo: 0, hi: 0 };
    }
    let mut t = clique_number(g);
    loop {
        if t == n {
            return HadwigerBracket { lo: t, hi: t };
        }
        match has_minor(g, &Graph::complete(t + 1).unwrap(), budget) {
            Ternary::True => t += 1,
            Ternary::False => return HadwigerBracket { lo: t, hi: t },
            Ternary::Unknown => {
                return HadwigerBracket {
                    lo: t,
                    hi: hadwiger_ceiling(g),
                }
            }
        }
    }
}

/// Largest t with C(t,2) <= m - (n - t): a K_t minor needs that many edges
/// to survive the contractions down to t vertices.
fn hadwiger_ceiling(g: &Graph) -> usize {
    let (n, m) = (g.n(), g.edge_count());
    (1..=n)
        .filter(|&t| t * (t - 1) / 2 + (n - t) <= m || t == 1)
        .max()
        .unwrap_or(1)
}

// ---------------------------------------------------------------------------
// Petersen family
// ---------------------------------------------------------------------------

/// Edge lists of the seven Petersen-family graphs (the forbidden minors for
/// linkless embeddings): K_6, K_{3,3,1}, K_{4,4} minus an edge, the Petersen
/// graph, and the three intermediate delta-wye transforms. Every member has
/// exactly 15 edges.
const PETERSEN_FAMILY_EDGES: [(usize, &[(usize, usize)]); 7] = [
    // K_6
    (
        6,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
            (4, 5),
        ],
    ),
    // 7 vertices: wye of one K_6 triangle
    (
        7,
        &[
            (0, 3),
            (0, 4),
            (0, 5),
            (0, 6),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 4),
            (3, 5),
            (4, 5),
        ],
    ),
    // K_{3,3,1}
    (
        7,
        &[
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 4),
            (2, 6),
            (3, 4),
            (3, 6),
            (4, 5),
            (4, 6),
            (5, 6),
        ],
    ),
    // 8 vertices, intermediate transform
    (
        8,
        &[
            (0, 5),
            (0, 6),
            (0, 7),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 5),
            (3, 7),
            (4, 5),
            (4, 7),
        ],
    ),
    // K_{4,4} minus an edge
    (
        8,
        &[
            (0, 3),
            (0, 4),
            (0, 5),
            (0, 6),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 7),
            (4, 7),
            (5, 7),
        ],
    ),
    // 9 vertices, intermediate transform
    (
        9,
        &[
            (0, 5),
            (0, 6),
            (0, 7),
            (1, 4),
            (1, 6),
            (1, 8),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 7),
            (3, 8),
            (4, 5),
            (4, 7),
            (5, 8),
        ],
    ),
    // Petersen graph
    (
        10,
        &[
            (0, 5),
            (0, 6),
            (0, 7),
            (1, 4),
            (1, 6),
            (1, 8),
            (2, 3),
            (2, 6),
            (2, 9),
            (3, 7),
            (3, 8),
            (4, 7),
            (4, 9),
            (5, 8),
            (5, 9),
        ],
    ),
];

/// The seven Petersen-family graphs. Self-checks on first use: exactly 7
/// members, 15 edges each, pairwise non-isomorphic.
pub fn petersen_family() -> &'static [Graph] {
    static FAMILY: OnceLock<Vec<Graph>> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let family: Vec<Graph> = PETERSEN_FAMILY_EDGES
            .iter()
            .map(|&(n, edges)| Graph::from_edges(n, edges).expect("family data is valid"))
            .collect();
        assert_eq!(family.len(), 7, "Petersen family has seven members");
        let mut forms = HashSet::new();
        for g in &family {
            assert_eq!(g.edge_count(), 15, "family member must have 15 edges");
            assert!(
                forms.insert(canonical_form(g).expect("members fit canonical capacity")),
                "family members must be pairwise non-isomorphic"
            );
        }
        family
    })
}

/// Linkless-embeddability recognizer: true when no Petersen-family graph is
/// a minor. Members have 15 edges, so sparse hosts pass by edge count alone.
pub fn is_petersen_family_free(g: &Graph, budget: u64) -> Ternary {
    if g.edge_count() < 15 {
        return Ternary::True;
    }
    if g.n() > 16 {
        return Ternary::Unknown;
    }
    let mut unknown = false;
    for member in petersen_family() {
        match has_minor(g, member, budget) {
            Ternary::True => return Ternary::False,
            Ternary::Unknown => unknown = true,
            Ternary::False => {}
        }
    }
    if unknown {
        Ternary::Unknown
    } else {
        Ternary::True
    }
}
