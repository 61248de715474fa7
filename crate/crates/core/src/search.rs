//! Searching over embeddings for smaller wirelength than the lexicographic
//! one: exact enumeration for 9-vertex instances, seeded 2-swap local
//! search above that.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::{congestion_per_edge, EmbeddingInstance, Routing};
use crate::error::{Error, Result};
use crate::graph::{Distances, LabeledGraph};
use crate::hosts::{HostKind, HostSpec};
use crate::qcube::QCube;

/// Largest instance the exhaustive search accepts by default (9! maps).
pub const DEFAULT_EXHAUSTIVE_BUDGET: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    Exhaustive,
    Anneal,
    SwapDescent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_wirelength: u64,
    /// `best_map[guest] = host`
    pub best_map: Vec<usize>,
    pub evaluated: u64,
    pub method: SearchMethod,
    pub seed: u64,
}

impl SearchResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("search result serializes");
        s.push('\n');
        s
    }
}

/// Precomputed guest adjacency and host distances; prices maps.
struct Evaluator<'a> {
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    dist: Distances<'a>,
}

impl<'a> Evaluator<'a> {
    fn new(guest: &QCube, host: &'a LabeledGraph) -> Result<Self> {
        let (g, h) = (guest.vertex_count(), host.vertex_count());
        if g != h {
            return Err(Error::SizeMismatch { guest: g, host: h });
        }
        if !host.is_connected() {
            let far = host.bfs_from(0)?.iter().position(Option::is_none).unwrap_or(0);
            return Err(Error::Unreachable(0, far));
        }
        Ok(Evaluator {
            edges: guest.graph().edges().iter().map(|e| (e.lo(), e.hi())).collect(),
            neighbors: (0..g).map(|v| guest.graph().neighbors(v).to_vec()).collect(),
            dist: Distances::new(host, usize::MAX),
        })
    }

    fn cost(&self, map: &[usize]) -> u64 {
        self.edges
            .iter()
            .map(|&(u, v)| self.dist.get_fast(map[u], map[v]))
            .sum()
    }

    /// Change in cost if the images of guest vertices `a` and `b` swap.
    fn swap_delta(&self, map: &[usize], a: usize, b: usize) -> i64 {
        let (fa, fb) = (map[a], map[b]);
        let mut delta = 0i64;
        for &w in &self.neighbors[a] {
            if w != b {
                delta += self.dist.get_fast(fb, map[w]) as i64 - self.dist.get_fast(fa, map[w]) as i64;
            }
        }
        for &w in &self.neighbors[b] {
            if w != a {
                delta += self.dist.get_fast(fa, map[w]) as i64 - self.dist.get_fast(fb, map[w]) as i64;
            }
        }
        delta
    }
}

/// Rearranges `xs` into the next permutation in lexicographic order.
/// Returns false (leaving `xs` sorted ascending) after the last one.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        xs.reverse();
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).expect("a larger suffix element exists");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Exact minimum of the distance-sum wirelength over every bijection.
///
/// Ties go to the lexicographically smallest map. The space is split by the
/// image of guest vertex 0 and searched in parallel; the reduction keeps
/// the result independent of the worker count.
pub fn exhaustive_search(guest: &QCube, host: &LabeledGraph, budget: usize) -> Result<SearchResult> {
    let size = host.vertex_count();
    if size > budget {
        return Err(Error::BudgetExceeded {
            vertices: size,
            budget,
            hint: "use local_search for larger instances",
        });
    }
    let eval = Evaluator::new(guest, host)?;

    let blocks: Vec<(u64, Vec<usize>, u64)> = (0..size)
        .into_par_iter()
        .map(|first| {
            let mut map: Vec<usize> = std::iter::once(first)
                .chain((0..size).filter(|&x| x != first))
                .collect();
            let mut best = (eval.cost(&map), map.clone());
            let mut count = 1u64;
            while next_permutation(&mut map[1..]) {
                count += 1;
                let c = eval.cost(&map);
                if c < best.0 {
                    best = (c, map.clone());
                }
            }
            (best.0, best.1, count)
        })
        .collect();

    let evaluated = blocks.iter().map(|b| b.2).sum();
    // blocks are ordered by first image, so the first minimum is lex-smallest
    let (best_wirelength, best_map, _) = blocks
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one vertex");
    Ok(SearchResult {
        best_wirelength,
        best_map,
        evaluated,
        method: SearchMethod::Exhaustive,
        seed: 0,
    })
}

/// Geometric cooling: `T_{t+1} = cooling · T_t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub initial_temperature: f64,
    pub cooling: f64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            initial_temperature: 4.0,
            cooling: 0.9995,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSearchConfig {
    pub restarts: usize,
    /// Proposed swaps per restart.
    pub steps: usize,
    pub seed: u64,
    /// `None` means strict-improvement descent.
    pub anneal: Option<AnnealSchedule>,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        LocalSearchConfig {
            restarts: 100,
            steps: 4000,
            seed: 0,
            anneal: None,
        }
    }
}

/// Random-restart 2-swap search. The lexicographic (identity) map is always
/// evaluated first; each restart starts from a uniformly random bijection.
/// Fully determined by `config.seed`.
pub fn local_search(guest: &QCube, host: &LabeledGraph, config: &LocalSearchConfig) -> Result<SearchResult> {
    let eval = Evaluator::new(guest, host)?;
    let size = host.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let identity: Vec<usize> = (0..size).collect();
    let mut best_wirelength = eval.cost(&identity);
    let mut best_map = identity;
    let mut evaluated = 1u64;

    if size >= 2 {
        for _ in 0..config.restarts {
            let mut map: Vec<usize> = (0..size).collect();
            map.shuffle(&mut rng);
            let mut cost = eval.cost(&map);
            evaluated += 1;
            let mut temperature = config.anneal.map(|s| s.initial_temperature);
            let mut run_best = (cost, map.clone());

            for _ in 0..config.steps {
                let a = rng.gen_range(0..size);
                let mut b = rng.gen_range(0..size - 1);
                if b >= a {
                    b += 1;
                }
                let delta = eval.swap_delta(&map, a, b);
                evaluated += 1;
                let accept = match temperature.as_mut() {
                    None => delta < 0,
                    Some(t) => {
                        let ok = delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / *t).exp();
                        *t *= config.anneal.map(|s| s.cooling).unwrap_or(1.0);
                        ok
                    }
                };
                if accept {
                    map.swap(a, b);
                    cost = (cost as i64 + delta) as u64;
                    if cost < run_best.0 {
                        run_best = (cost, map.clone());
                    }
                }
            }
            if run_best.0 < best_wirelength {
                best_wirelength = run_best.0;
                best_map = run_best.1;
            }
        }
    }

    // report the re-evaluated cost, not the incrementally tracked one
    let recomputed = eval.cost(&best_map);
    if recomputed != best_wirelength {
        return Err(Error::Inconsistent(format!(
            "incremental cost {best_wirelength} disagrees with re-evaluation {recomputed}"
        )));
    }
    Ok(SearchResult {
        best_wirelength: recomputed,
        best_map,
        evaluated,
        method: if config.anneal.is_some() {
            SearchMethod::Anneal
        } else {
            SearchMethod::SwapDescent
        },
        seed: config.seed,
    })
}

/// Evidence that an embedding beats a claimed minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub host: HostKind,
    pub n: u32,
    pub formula_value: u64,
    pub map: Vec<usize>,
    pub wirelength_by_distance: u64,
    pub wirelength_by_congestion: u64,
}

/// Returns a report when `result` is strictly below `formula_value`, with
/// the map priced by both the distance sum and routed congestion.
pub fn counterexample(
    guest: &QCube,
    host: &HostSpec,
    formula_value: u64,
    result: &SearchResult,
) -> Result<Option<CounterexampleReport>> {
    if result.best_wirelength >= formula_value {
        return Ok(None);
    }
    let e = EmbeddingInstance::new(guest, &host.graph, result.best_map.clone(), Routing::for_kind(host.kind))?;
    Ok(Some(CounterexampleReport {
        host: host.kind,
        n: host.n,
        formula_value,
        map: result.best_map.clone(),
        wirelength_by_distance: crate::embedding::wirelength_by_distance(&e)?,
        wirelength_by_congestion: congestion_per_edge(&e).wirelength,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{lex_embedding, wirelength_by_distance};
    use crate::graph::build_graph;
    use crate::hosts::{build_banana, build_caterpillar};
    use crate::qcube::build_qcube;

    #[test]
    fn next_permutation_walks_lex_order() {
        let mut xs = vec![0, 1, 2];
        let mut seen = vec![xs.clone()];
        while next_permutation(&mut xs) {
            seen.push(xs.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(xs, vec![0, 1, 2]);
    }

    #[test]
    fn exhaustive_on_triangle_into_path() {
        let q1 = build_qcube(1).unwrap();
        let path = build_graph(3, [(0, 1), (1, 2)]).unwrap();
        let r = exhaustive_search(&q1, &path, 9).unwrap();
        assert_eq!(r.best_wirelength, 4);
        assert_eq!(r.best_map, vec![0, 1, 2]);
        assert_eq!(r.evaluated, 6);
    }

    #[test]
    fn exhaustive_refuses_over_budget() {
        let q3 = build_qcube(3).unwrap();
        let cat = build_caterpillar(3).unwrap();
        assert!(matches!(
            exhaustive_search(&q3, &cat.graph, DEFAULT_EXHAUSTIVE_BUDGET),
            Err(Error::BudgetExceeded { vertices: 27, .. })
        ));
    }

    #[test]
    fn zero_restarts_prices_only_the_lex_map() {
        let q2 = build_qcube(2).unwrap();
        let banana = build_banana(2).unwrap();
        let cfg = LocalSearchConfig {
            restarts: 0,
            ..Default::default()
        };
        let r = local_search(&q2, &banana.graph, &cfg).unwrap();
        assert_eq!(r.best_wirelength, 44);
        assert_eq!(r.best_map, (0..9).collect::<Vec<_>>());
        assert_eq!(r.evaluated, 1);
    }

    #[test]
    fn swap_delta_matches_full_recompute() {
        let q2 = build_qcube(2).unwrap();
        let cat = build_caterpillar(2).unwrap();
        let eval = Evaluator::new(&q2, &cat.graph).unwrap();
        let map = vec![3, 7, 0, 8, 1, 5, 2, 6, 4];
        for a in 0..9 {
            for b in 0..9 {
                if a == b {
                    continue;
                }
                let mut swapped = map.clone();
                swapped.swap(a, b);
                let expected = eval.cost(&swapped) as i64 - eval.cost(&map) as i64;
                assert_eq!(eval.swap_delta(&map, a, b), expected, "swap {a},{b}");
            }
        }
    }

    #[test]
    fn local_search_is_deterministic_and_consistent() {
        let q2 = build_qcube(2).unwrap();
        let cat = build_caterpillar(2).unwrap();
        for anneal in [None, Some(AnnealSchedule::default())] {
            let cfg = LocalSearchConfig {
                restarts: 5,
                steps: 300,
                seed: 11,
                anneal,
            };
            let a = local_search(&q2, &cat.graph, &cfg).unwrap();
            let b = local_search(&q2, &cat.graph, &cfg).unwrap();
            assert_eq!(a, b);
            let e = lex_embedding(&q2, &cat).unwrap().with_map(a.best_map.clone()).unwrap();
            assert_eq!(wirelength_by_distance(&e).unwrap(), a.best_wirelength);
            assert!(a.best_wirelength >= 36);
        }
    }

    #[test]
    fn counterexample_only_below_formula() {
        let q2 = build_qcube(2).unwrap();
        let cat = build_caterpillar(2).unwrap();
        let r = SearchResult {
            best_wirelength: 36,
            best_map: (0..9).collect(),
            evaluated: 1,
            method: SearchMethod::SwapDescent,
            seed: 0,
        };
        assert_eq!(counterexample(&q2, &cat, 36, &r).unwrap(), None);
        let report = counterexample(&q2, &cat, 40, &r).unwrap().unwrap();
        assert_eq!(report.wirelength_by_distance, 36);
        assert_eq!(report.wirelength_by_congestion, 36);
    }
}
