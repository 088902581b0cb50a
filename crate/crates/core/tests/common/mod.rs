#![allow(dead_code)]

use std::collections::HashMap;

use causal_bootstrap::data::Dataset;
use causal_bootstrap::graph::CausalGraph;
use rand::prelude::*;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// A DAG on vertices `0..n`; edges point from lower to higher position in `order`.
#[derive(Debug, Clone)]
pub struct Dag {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn name(i: usize) -> String {
    format!("v{i}")
}

pub fn random_dag(rng: &mut impl Rng, max_nodes: usize) -> Dag {
    let n = rng.random_range(2..=max_nodes);
    let density: f64 = rng.random_range(0.1..0.7);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Dag { n, edges }
}

impl Dag {
    pub fn graph(&self) -> CausalGraph {
        let mut b = CausalGraph::builder();
        for i in 0..self.n {
            b = b.discrete(&name(i), 2);
        }
        for &(a, c) in &self.edges {
            b = b.edge(&name(a), &name(c));
        }
        b.build().expect("random DAG is acyclic")
    }

    fn descendants(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for &(a, c) in &self.edges {
                if a == u && !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        seen
    }

    fn has_edge(&self, a: usize, c: usize) -> bool {
        self.edges.contains(&(a, c))
    }

    fn path_active(&self, path: &[usize], s: &[usize]) -> bool {
        path.windows(3).all(|w| {
            let (p, m, q) = (w[0], w[1], w[2]);
            if self.has_edge(p, m) && self.has_edge(q, m) {
                let below = self.descendants(m);
                s.iter().any(|&v| below[v])
            } else {
                !s.contains(&m)
            }
        })
    }

    /// d-separation by enumerating every simple path of the skeleton.
    pub fn d_separated_brute(&self, a: &[usize], b: &[usize], s: &[usize]) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        fn walk(
            dag: &Dag,
            adj: &[Vec<usize>],
            path: &mut Vec<usize>,
            b: &[usize],
            s: &[usize],
        ) -> bool {
            let last = *path.last().expect("nonempty");
            if path.len() > 1 && b.contains(&last) && dag.path_active(path, s) {
                return true;
            }
            for &next in &adj[last] {
                if !path.contains(&next) {
                    path.push(next);
                    if walk(dag, adj, path, b, s) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        !a.iter()
            .any(|&start| walk(self, &adj, &mut vec![start], b, s))
    }
}

/// Random discrete table in which every joint value of the `cover` variables
/// occurs at least once. `vars` gives names and cardinalities.
pub fn full_support(
    rng: &mut impl Rng,
    n: usize,
    vars: &[(&str, usize)],
    cover: &[&str],
) -> Dataset {
    let covered: Vec<usize> = vars
        .iter()
        .enumerate()
        .filter(|(_, (v, _))| cover.contains(v))
        .map(|(i, _)| i)
        .collect();
    let combos: usize = covered.iter().map(|&i| vars[i].1).product();
    assert!(n >= combos, "{n} rows cannot cover {combos} combinations");
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            vars.iter()
                .map(|&(_, k)| rng.random_range(1..=k as i64))
                .collect()
        })
        .collect();
    for (c, row) in rows.iter_mut().enumerate().take(combos) {
        let mut rest = c;
        for &i in &covered {
            let k = vars[i].1;
            row[i] = (rest % k) as i64 + 1;
            rest /= k;
        }
    }
    rows.shuffle(rng);
    let mut data = Dataset::new(n);
    for (j, &(v, k)) in vars.iter().enumerate() {
        data = data
            .with_discrete(v, k, rows.iter().map(|r| r[j]).collect())
            .unwrap();
    }
    data
}

/// Empirical joint mass of a tuple of discrete columns.
pub fn counts(data: &Dataset, vars: &[&str]) -> HashMap<Vec<i64>, f64> {
    let cols: Vec<&[f64]> = vars.iter().map(|v| data.scalar(v).unwrap()).collect();
    let mut out = HashMap::new();
    for i in 0..data.n_rows() {
        let key: Vec<i64> = cols.iter().map(|c| c[i] as i64).collect();
        *out.entry(key).or_insert(0.0) += 1.0;
    }
    out
}

/// `p̂(a | b)` from counts, with `a` and `b` given as (variable, value) lists.
pub fn cond(data: &Dataset, a: &[(&str, i64)], b: &[(&str, i64)]) -> f64 {
    let rows = |pairs: &[(&str, i64)]| -> f64 {
        let cols: Vec<(&[f64], i64)> = pairs
            .iter()
            .map(|&(v, x)| (data.scalar(v).unwrap(), x))
            .collect();
        (0..data.n_rows())
            .filter(|&i| cols.iter().all(|(c, x)| c[i] as i64 == *x))
            .count() as f64
    };
    let joint: Vec<(&str, i64)> = a.iter().chain(b).copied().collect();
    rows(&joint) / rows(b)
}

pub fn total_variation(p: &HashMap<i64, f64>, q: &HashMap<i64, f64>) -> f64 {
    let keys: std::collections::BTreeSet<i64> = p.keys().chain(q.keys()).copied().collect();
    0.5 * keys
        .iter()
        .map(|k| (p.get(k).unwrap_or(&0.0) - q.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

pub fn empirical(values: &[f64]) -> HashMap<i64, f64> {
    let mut out = HashMap::new();
    for &v in values {
        *out.entry(v as i64).or_insert(0.0) += 1.0 / values.len() as f64;
    }
    out
}
