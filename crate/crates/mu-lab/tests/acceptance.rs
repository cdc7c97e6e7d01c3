//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers. Run with `cargo test -p mu-lab --test acceptance`
//! (add `-- --nocapture` to see the lines).

use mu_lab::certificates::{
    canonical_complete_certificate, verify_certificate, CdVCertificate, CertFailure,
};
use mu_lab::corpus::enumerate_graphs;
use mu_lab::engine::{mu_bounds, EngineConfig, Rule};
use mu_lab::graph::Graph;
use mu_lab::harness::{
    build_clique_sum_chain, choose2, edge_bound, run_campaign, verify_complement_identity,
    verify_tight_family, CampaignConfig,
};
use mu_lab::linalg::{rat, RationalMatrix};
use mu_lab::minors::{has_minor, DEFAULT_MINOR_BUDGET};
use mu_lab::recognizers::{
    chordal_analyze, chordal_mu, contains_subgraph, has_cycle, is_linear_forest, is_outerplanar,
    is_planar,
};

fn default_cfg() -> EngineConfig {
    EngineConfig::default()
}

fn corpus(n: usize) -> impl Iterator<Item = Graph> {
    enumerate_graphs(n).unwrap().map(|g| g.unwrap())
}

/// Small deterministic generator for the randomized mutation draws.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

#[test]
fn criterion_01_exhaustive_verification_n1_to_7() {
    let started = std::time::Instant::now();
    let expected = [1usize, 2, 4, 11, 34, 156, 1044];
    for (i, &want) in expected.iter().enumerate() {
        let n = i + 1;
        let report = run_campaign(enumerate_graphs(n).unwrap(), &CampaignConfig::default())
            .unwrap_or_else(|e| panic!("campaign n={n} aborted: {e}"));
        assert_eq!(report.total, want, "class count at n={n}");
        assert_eq!(report.holds, want, "Holds count at n={n}");
        assert_eq!(report.violates, 0, "Violates at n={n}");
        assert_eq!(report.inconclusive, 0, "Inconclusive at n={n}");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "exhaustive verification took {elapsed:?}, budget is 5 minutes"
    );
    println!(
        "[PASS] criterion 1: n=1..7 all Holds (1, 2, 4, 11, 34, 156, 1044 graphs) in {elapsed:?}"
    );
}

#[test]
fn criterion_02_known_value_table() {
    let cfg = default_cfg();
    let value = |g: &Graph| mu_bounds(g, &cfg).unwrap().value();
    for n in 2..=8 {
        assert_eq!(value(&Graph::path(n).unwrap()), Some(1), "P_{n}");
    }
    for n in 3..=8 {
        assert_eq!(value(&Graph::cycle(n).unwrap()), Some(2), "C_{n}");
    }
    // Every tree on up to 7 vertices that is not a path has value exactly 2.
    let mut non_path_trees = 0;
    for n in 4..=7 {
        for g in corpus(n) {
            if g.edge_count() == n - 1 && g.is_connected() && !is_linear_forest(&g) {
                assert_eq!(value(&g), Some(2), "non-path tree {g:?}");
                non_path_trees += 1;
            }
        }
    }
    assert!(non_path_trees > 10, "expected to see many non-path trees");
    for t in 1..=8 {
        assert_eq!(value(&Graph::complete(t).unwrap()), Some(t - 1), "K_{t}");
    }
    assert_eq!(
        value(&Graph::complete_multipartite(&[3, 3]).unwrap()),
        Some(4)
    );
    assert_eq!(value(&Graph::petersen()), Some(5));
    assert_eq!(
        value(&Graph::complete_multipartite(&[1, 1, 3]).unwrap()),
        Some(3)
    );
    println!("[PASS] criterion 2: known values exact (paths, cycles, {non_path_trees} non-path trees, K_t, K_3,3, Petersen, K_1,1,3)");
}

#[test]
fn criterion_03_tight_family() {
    let entries = verify_tight_family(3..=8, &[4, 5, 6, 7, 8, 9, 10], &[1, 2, 3], &default_cfg())
        .unwrap_or_else(|e| panic!("tight family check failed: {e}"));
    assert_eq!(entries.len(), 6 * 7 * 3);
    for e in &entries {
        assert_eq!(e.m as u64, edge_bound(e.t, e.n));
    }
    println!(
        "[PASS] criterion 3: {} join constructions tight with resolved value t (t=3..8, bases 4..10, 3 seeds)",
        entries.len()
    );
}

#[test]
fn criterion_04_extremal_edge_formulas() {
    for copies in [2usize, 3] {
        let g = build_clique_sum_chain(&[2, 2, 2, 2, 2], copies).unwrap();
        assert_eq!(
            g.edge_count(),
            6 * g.n() - 20,
            "pure 5-sum of {copies} copies"
        );
    }
    let g = build_clique_sum_chain(&[1, 2, 2, 2, 2, 2], 2).unwrap();
    assert_eq!(g.n(), 16);
    assert_eq!(g.edge_count(), 85);
    assert_eq!(g.edge_count(), 7 * g.n() - 27);
    let k22233 = Graph::complete_multipartite(&[2, 2, 2, 3, 3]).unwrap();
    assert_eq!(k22233.n(), 12);
    assert_eq!(k22233.edge_count(), 57);
    assert_eq!(k22233.edge_count(), 7 * 12 - 27);
    println!("[PASS] criterion 4: extremal edge formulas exact (6n-20 five-sums, 7n-27 six-sum, K_2,2,2,3,3 = 57 edges)");
}

#[test]
fn criterion_05_certificate_soundness() {
    for n in 2..=8 {
        let cert = canonical_complete_certificate(n).unwrap();
        let v = verify_certificate(&cert);
        assert!(v.valid, "canonical certificate n={n}: {:?}", v.failure);
        assert_eq!(v.corank, n - 1, "canonical corank n={n}");
    }

    let mut rng = Lcg(0xACCE97);
    let draws = 20;

    // (a) Pattern non-edge: delete one graph edge, keep the matrix entry.
    for _ in 0..draws {
        let n = 4 + rng.below(5) as usize;
        let cert = canonical_complete_certificate(n).unwrap();
        let edges = cert.graph.edges();
        let drop = edges[rng.below(edges.len() as u64) as usize];
        let kept: Vec<_> = edges.into_iter().filter(|&e| e != drop).collect();
        let mutated = CdVCertificate {
            graph: Graph::from_edges(n, &kept).unwrap(),
            ..cert
        };
        let v = verify_certificate(&mutated);
        assert!(!v.valid);
        assert!(
            matches!(v.failure, Some(CertFailure::PatternNonEdge { .. })),
            "{:?}",
            v.failure
        );
    }

    // (b) Pattern edge sign: force one edge entry nonnegative.
    for _ in 0..draws {
        let n = 4 + rng.below(5) as usize;
        let mut cert = canonical_complete_certificate(n).unwrap();
        let edges = cert.graph.edges();
        let (i, j) = edges[rng.below(edges.len() as u64) as usize];
        let v = rat(rng.below(5) as i64); // 0 or positive both violate
        cert.matrix.set(i, j, v.clone());
        cert.matrix.set(j, i, v);
        let v = verify_certificate(&cert);
        assert!(!v.valid);
        assert!(
            matches!(v.failure, Some(CertFailure::PatternEdgeSign { .. })),
            "{:?}",
            v.failure
        );
    }

    // (c) Inertia: a strongly negative diagonal entry adds a second
    // negative eigenvalue.
    for _ in 0..draws {
        let n = 3 + rng.below(6) as usize;
        let mut cert = canonical_complete_certificate(n).unwrap();
        let k = rng.below(n as u64) as usize;
        cert.matrix.set(k, k, rat(-(2 + rng.below(9) as i64)));
        let v = verify_certificate(&cert);
        assert!(!v.valid);
        assert!(
            matches!(
                v.failure,
                Some(CertFailure::InertiaNotOneNegative { negative: 2 })
            ),
            "{:?}",
            v.failure
        );
    }

    // (d) Transversality: diag(-c, 0, ..., 0) on an edgeless graph leaves a
    // free variable between two zero-diagonal vertices.
    for _ in 0..draws {
        let n = 3 + rng.below(6) as usize;
        let c = 1 + rng.below(9) as i64;
        let pos = rng.below(n as u64) as usize;
        let matrix =
            RationalMatrix::from_fn(
                n,
                n,
                |i, j| {
                    if i == j && i == pos {
                        rat(-c)
                    } else {
                        rat(0)
                    }
                },
            );
        let cert = CdVCertificate {
            graph: Graph::edgeless(n).unwrap(),
            matrix,
            claimed_corank: n - 1,
        };
        let v = verify_certificate(&cert);
        assert!(!v.valid);
        assert!(
            matches!(v.failure, Some(CertFailure::SapFails { .. })),
            "{:?}",
            v.failure
        );
    }
    println!("[PASS] criterion 5: canonical certificates n=2..8 valid; 4 mutation classes x 20 draws all rejected with matching codes");
}

#[test]
fn criterion_06_edge_count_lower_bound_sweep() {
    // Over all connected graphs on up to 7 vertices with a resolved value:
    // |E| >= C(mu+1, 2), except K_3,3 exactly, which sits one below.
    let cfg = default_cfg();
    let k33 = Graph::complete_multipartite(&[3, 3]).unwrap();
    let mut checked = 0;
    let mut exceptions = Vec::new();
    for n in 1..=7 {
        for g in corpus(n) {
            if !g.is_connected() {
                continue;
            }
            let Some(mu) = mu_bounds(&g, &cfg).unwrap().value() else {
                continue;
            };
            checked += 1;
            let m = g.edge_count() as u64;
            if m >= choose2(mu + 1) {
                continue;
            }
            // The single permitted exception.
            assert_eq!(m, choose2(mu + 1) - 1, "{g:?}");
            assert!(
                has_minor(&g, &k33, DEFAULT_MINOR_BUDGET).is_true()
                    && has_minor(&k33, &g, DEFAULT_MINOR_BUDGET).is_true(),
                "non-K_3,3 exception: {g:?}"
            );
            exceptions.push(g.clone());
        }
    }
    assert_eq!(exceptions.len(), 1, "exactly K_3,3 may undershoot");
    assert_eq!(exceptions[0].n(), 6);
    assert_eq!(exceptions[0].edge_count(), 9);
    println!(
        "[PASS] criterion 6: |E| >= C(mu+1,2) for {checked} resolved connected graphs, sole exception K_3,3 at C(5,2)-1 = 9"
    );
}

#[test]
fn criterion_07_chordal_cross_checks() {
    let cfg = default_cfg();
    let no_r7 = cfg.clone().without(Rule::R7);
    let ladder_only = EngineConfig::with_only(&[Rule::R1, Rule::R2, Rule::R4]);
    let mut chordal_count = 0;
    let mut ladder_resolved = 0;
    let mut sum_checked = 0;
    for n in 1..=7 {
        for g in corpus(n) {
            if !chordal_analyze(&g).is_chordal {
                continue;
            }
            chordal_count += 1;
            let cmu = chordal_mu(&g).unwrap();
            // The formula value stays inside the engine's interval computed
            // without it.
            let b = mu_bounds(&g, &no_r7).unwrap();
            assert!(
                b.lo <= cmu && cmu <= b.hi,
                "chordal value {cmu} outside [{}, {}] for {g:?}",
                b.lo,
                b.hi
            );
            // Where the characterization ladder resolves on its own, the
            // formula agrees exactly.
            if let Some(v) = mu_bounds(&g, &ladder_only).unwrap().value() {
                assert_eq!(v, cmu, "{g:?}");
                ladder_resolved += 1;
            }
            // Complement side: mu(G) + mu(co G) >= n - 2 wherever both
            // resolve, and the chordal-based lower bound never contradicts
            // a resolved complement value.
            let co = g.complement();
            if co.n() == 0 {
                continue;
            }
            let cob = mu_bounds(&co, &cfg).unwrap();
            if let Some(cov) = cob.value() {
                assert!(
                    cov + 2 + cmu >= n,
                    "complement value {cov} below n - 2 - {cmu} for {g:?}"
                );
                if let Some(v) = mu_bounds(&g, &cfg).unwrap().value() {
                    assert!(v + cov + 2 >= n, "sum {v}+{cov} < n-2 for {g:?}");
                    sum_checked += 1;
                }
            }
        }
    }
    println!(
        "[PASS] criterion 7: {chordal_count} chordal graphs consistent (ladder agreement on {ladder_resolved}, sum >= n-2 on {sum_checked} resolved pairs)"
    );
}

#[test]
fn criterion_08_sparse_complement_sweep() {
    let cfg = default_cfg();
    let p32 = Graph::p32();
    let mut swept = 0;
    for n in 3..=7 {
        for g in corpus(n) {
            let co = g.complement();
            if has_cycle(&co) || contains_subgraph(&co, &p32).unwrap() {
                continue;
            }
            let b = mu_bounds(&g, &cfg).unwrap();
            let v = b.value().unwrap_or_else(|| {
                panic!(
                    "unresolved sparse-complement graph {g:?}: [{}, {}]",
                    b.lo, b.hi
                )
            });
            assert!(v + 3 >= n, "value {v} below n-3 for {g:?}");
            swept += 1;
        }
    }
    // K_2,2,2,2 earns its lower bound from the complement rules alone.
    let g = Graph::complete_multipartite(&[2, 2, 2, 2]).unwrap();
    let complement_rules = EngineConfig::with_only(&[Rule::R8, Rule::R9, Rule::R10]);
    let b = mu_bounds(&g, &complement_rules).unwrap();
    assert!(b.lo >= 5, "K_2,2,2,2 lower bound [{}, {}]", b.lo, b.hi);
    println!(
        "[PASS] criterion 8: {swept} graphs with cycle-free, spider-free complements resolve to >= n-3; K_2,2,2,2 gets lo >= 5 from complement rules"
    );
}

#[test]
fn criterion_09_complement_identity() {
    assert!(verify_complement_identity(12));
    let mut checked = 0;
    for n in 0..=12usize {
        for t in 0..=n {
            assert_eq!(choose2(n - t) + edge_bound(t, n), choose2(n));
            checked += 1;
        }
    }
    println!("[PASS] criterion 9: C(n-t,2) + tn - C(t+1,2) = C(n,2) exact for all {checked} pairs with 0 <= t <= n <= 12");
}

#[test]
fn criterion_10_oracle_equivalences() {
    // Recognizers against the forbidden-minor oracle over the whole corpus.
    let k5 = Graph::complete(5).unwrap();
    let k33 = Graph::complete_multipartite(&[3, 3]).unwrap();
    let k4 = Graph::complete(4).unwrap();
    let k23 = Graph::complete_multipartite(&[2, 3]).unwrap();
    let mut graphs = 0;
    for n in 1..=7 {
        for g in corpus(n) {
            graphs += 1;
            let planar_oracle = has_minor(&g, &k5, DEFAULT_MINOR_BUDGET).is_false()
                && has_minor(&g, &k33, DEFAULT_MINOR_BUDGET).is_false();
            assert_eq!(is_planar(&g), planar_oracle, "planarity mismatch: {g:?}");
            let outer_oracle = has_minor(&g, &k4, DEFAULT_MINOR_BUDGET).is_false()
                && has_minor(&g, &k23, DEFAULT_MINOR_BUDGET).is_false();
            assert_eq!(
                is_outerplanar(&g),
                outer_oracle,
                "outerplanarity mismatch: {g:?}"
            );
        }
    }

    // Inertia is congruence-invariant on random matrices up to 6x6.
    let mut rng = Lcg(0x1AE57);
    let mut tested = 0;
    while tested < 200 {
        let n = 2 + rng.below(5) as usize;
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rat(rng.below(11) as i64 - 5);
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        // Random invertible P: unit triangular with shuffled row order.
        let mut p = RationalMatrix::zeros(n, n);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.below(i as u64 + 1) as usize);
        }
        for i in 0..n {
            p.set(perm[i], i, rat(1));
            for j in (i + 1)..n {
                p.set(perm[i], j, rat(rng.below(7) as i64 - 3));
            }
        }
        let congruent = p.transpose().mul(&m).mul(&p);
        assert_eq!(
            congruent.inertia().unwrap(),
            m.inertia().unwrap(),
            "congruence broke inertia on {m:?}"
        );
        tested += 1;
    }
    println!(
        "[PASS] criterion 10: planarity/outerplanarity match the minor oracle on {graphs} graphs; inertia congruence-invariant on {tested} random matrices"
    );
}
