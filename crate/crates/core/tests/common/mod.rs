//! Brute-force oracles shared by the integration tests. Nothing here goes
//! through the library's distance, displacement or search code; graphs
//! are only read through `n()` and `adjacent()`.

#![allow(dead_code)]

use nearauto::sample::{random_connected_graph, SplitMix64};
use nearauto::{build_cycle, build_path, complement, Graph};

/// All-pairs hop counts by Floyd–Warshall on the adjacency relation.
#[allow(clippy::needless_range_loop)]
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                d[u][v] = 0;
            } else if g.adjacent(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn naive_delta(d: &[Vec<u32>], f: &[usize]) -> u64 {
    let n = f.len();
    let mut total = 0;
    for x in 0..n {
        for y in x + 1..n {
            total += d[x][y].abs_diff(d[f[x]][f[y]]) as u64;
        }
    }
    total
}

/// Every permutation of `0..n`, by Heap's algorithm.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// `(pi, sorted minimisers)` by full enumeration; `None` if every
/// permutation is distance preserving.
pub fn naive_pi(g: &Graph) -> Option<(u64, Vec<Vec<usize>>)> {
    let d = floyd_warshall(g);
    let mut best: Option<u64> = None;
    let mut witnesses = Vec::new();
    for f in all_perms(g.n()) {
        let v = naive_delta(&d, &f);
        if v == 0 {
            continue;
        }
        match best {
            Some(b) if v > b => {}
            Some(b) if v == b => witnesses.push(f),
            _ => {
                best = Some(v);
                witnesses = vec![f];
            }
        }
    }
    witnesses.sort();
    best.map(|b| (b, witnesses))
}

pub fn naive_level_set(g: &Graph, target: u64) -> Vec<Vec<usize>> {
    let d = floyd_warshall(g);
    let mut out: Vec<_> = all_perms(g.n())
        .into_iter()
        .filter(|f| naive_delta(&d, f) == target)
        .collect();
    out.sort();
    out
}

pub fn ccycle(n: usize) -> Graph {
    complement(&build_cycle(n).unwrap()).unwrap()
}

pub fn cpath(n: usize) -> Graph {
    complement(&build_path(n).unwrap()).unwrap()
}

/// Connected non-complete graphs with `n <= max_n`: paths, cycles, their
/// connected complements, and `random` seeded random connected graphs.
pub fn oracle_graphs(max_n: usize, random: usize, seed: u64) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(build_path(n).unwrap());
        if let Ok(c) = complement(&build_path(n).unwrap()) {
            out.push(c);
        }
        if n >= 3 {
            out.push(build_cycle(n).unwrap());
            if let Ok(c) = complement(&build_cycle(n).unwrap()) {
                out.push(c);
            }
        }
    }
    let mut rng = SplitMix64::new(seed);
    let mut made = 0;
    while made < random {
        let n = 4 + rng.below(max_n as u64 - 3) as usize;
        let pct = 15 + rng.below(60);
        let g = random_connected_graph(n, pct, &mut rng).unwrap();
        if is_complete(&g) {
            continue;
        }
        out.push(g);
        made += 1;
    }
    out.retain(|g| !is_complete(g));
    out
}

pub fn is_complete(g: &Graph) -> bool {
    (0..g.n()).all(|u| (0..g.n()).all(|v| u == v || g.adjacent(u, v)))
}
