//! Exact minimum positive displacement by depth-first branch and bound.
//!
//! Images are assigned to `v_1, v_2, ...` in order. Each assignment adds
//! the displacement of every pair it completes, so the running sum is a
//! lower bound on any completion. The tree is split by the image of
//! `v_1`; every subtree is searched independently from the same starting
//! incumbent, which keeps node counts and witness lists identical for any
//! number of workers.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::displacement::{build_multigraph, delta_total, delta_value, find_positive_edge, sandwich_pattern_holds};
use crate::error::{Error, Result};
use crate::graph::{build_cycle, complement, Family, Graph};
use crate::perm::{all_sigma_candidates, dihedral, Permutation};
use crate::sample::random_permutations;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_THEOREM_MAX_N: usize = 9;
const REPORT_LIST_CAP: usize = 100;

/// What the search must produce besides the value itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Only the value; ties with the incumbent are pruned.
    Value,
    /// Value and the exact number of minimisers.
    Count,
    /// Value and every minimiser.
    Witnesses,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub objective: Objective,
    /// Worker threads; `0` and `1` both mean sequential.
    pub workers: usize,
    pub node_budget: u64,
    /// Fix `f(v_1) = v_1` and scale the witness count by `n`. Only exact
    /// on vertex-transitive graphs, and rejected with `Witnesses`.
    pub fix_first_vertex: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            objective: Objective::Witnesses,
            workers: 1,
            node_budget: DEFAULT_NODE_BUDGET,
            fix_first_vertex: false,
        }
    }
}

impl SolverOptions {
    pub fn with_objective(objective: Objective) -> Self {
        SolverOptions {
            objective,
            ..Default::default()
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphInfo {
    pub family: Family,
    pub n: usize,
}

impl From<&Graph> for GraphInfo {
    fn from(g: &Graph) -> Self {
        GraphInfo {
            family: g.family(),
            n: g.n(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiResult {
    pub graph: GraphInfo,
    pub pi: u64,
    /// `None` for [`Objective::Value`].
    pub witness_count: Option<u64>,
    /// Sorted; empty unless witnesses were collected.
    pub witnesses: Vec<Permutation>,
    pub nodes_explored: u64,
    pub pruned: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Goal {
    /// Smallest positive total; `strict` also prunes ties.
    MinPositive { strict: bool },
    /// Every permutation whose total equals the target.
    Exactly(u64),
}

#[derive(Debug, Clone)]
struct Subtree {
    best: u64,
    count: u64,
    witnesses: Vec<Vec<usize>>,
    nodes: u64,
    pruned: u64,
    exceeded: bool,
}

struct Dfs<'a> {
    n: usize,
    dist: &'a [u32],
    goal: Goal,
    collect: bool,
    stop_after: Option<u64>,
    budget: u64,
    images: Vec<usize>,
    used: u64,
    out: Subtree,
}

impl Dfs<'_> {
    #[inline]
    fn cost_of(&self, pos: usize, image: usize) -> u64 {
        let n = self.n;
        let mut add = 0u64;
        for q in 0..pos {
            let before = self.dist[q * n + pos];
            let after = self.dist[self.images[q] * n + image];
            add += before.abs_diff(after) as u64;
        }
        add
    }

    #[inline]
    fn cut(&self, partial: u64) -> bool {
        match self.goal {
            Goal::MinPositive { strict: false } => partial > self.out.best,
            Goal::MinPositive { strict: true } => partial >= self.out.best,
            Goal::Exactly(target) => partial > target,
        }
    }

    fn done(&self) -> bool {
        self.out.exceeded || self.stop_after.is_some_and(|s| self.out.count >= s)
    }

    fn leaf(&mut self, total: u64) {
        let accept = match self.goal {
            Goal::MinPositive { .. } => {
                if total == 0 {
                    return;
                }
                if total < self.out.best {
                    self.out.best = total;
                    self.out.count = 0;
                    self.out.witnesses.clear();
                }
                total == self.out.best
            }
            Goal::Exactly(target) => total == target,
        };
        if accept {
            self.out.count += 1;
            if self.collect {
                self.out.witnesses.push(self.images.clone());
            }
        }
    }

    fn descend(&mut self, pos: usize, partial: u64) {
        if pos == self.n {
            self.leaf(partial);
            return;
        }
        for image in 0..self.n {
            if self.used & (1 << image) != 0 {
                continue;
            }
            if self.done() {
                return;
            }
            self.out.nodes += 1;
            if self.out.nodes > self.budget {
                self.out.exceeded = true;
                return;
            }
            let next = partial + self.cost_of(pos, image);
            if self.cut(next) {
                self.out.pruned += 1;
                continue;
            }
            self.images[pos] = image;
            self.used |= 1 << image;
            self.descend(pos + 1, next);
            self.used &= !(1 << image);
        }
    }
}

struct Plan<'a> {
    graph: &'a Graph,
    goal: Goal,
    collect: bool,
    stop_after: Option<u64>,
    budget: u64,
    incumbent: u64,
    first_images: Vec<usize>,
    workers: usize,
}

impl Plan<'_> {
    fn run_subtree(&self, first: usize) -> Subtree {
        let n = self.graph.n();
        let mut dfs = Dfs {
            n,
            dist: self.graph.distances(),
            goal: self.goal,
            collect: self.collect,
            stop_after: self.stop_after,
            budget: self.budget,
            images: vec![0; n],
            used: 1 << first,
            out: Subtree {
                best: self.incumbent,
                count: 0,
                witnesses: Vec::new(),
                nodes: 1,
                pruned: 0,
                exceeded: false,
            },
        };
        dfs.images[0] = first;
        dfs.descend(1, 0);
        dfs.out
    }

    fn run(&self) -> Result<Vec<Subtree>> {
        if self.workers <= 1 {
            return Ok(self.first_images.iter().map(|&w| self.run_subtree(w)).collect());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start {} workers: {e}", self.workers)))?;
        Ok(pool.install(|| self.first_images.par_iter().map(|&w| self.run_subtree(w)).collect()))
    }
}

fn check_searchable(g: &Graph) -> Result<()> {
    if g.n() > 64 {
        return Err(Error::invalid(format!(
            "exhaustive search supports at most 64 vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// Smallest positive displacement over all transpositions, an upper bound
/// on the minimum. `None` means every transposition is an automorphism,
/// which for a connected graph means it is complete.
fn transposition_bound(g: &Graph) -> Option<u64> {
    let n = g.n();
    let mut best = None;
    for a in 0..n {
        for b in a + 1..n {
            let t = Permutation::transposition(n, a, b).expect("in range");
            let v = delta_value(g, &t).expect("sizes match");
            if v > 0 && best.is_none_or(|cur| v < cur) {
                best = Some(v);
            }
        }
    }
    best
}

fn to_perms(raw: Vec<Vec<usize>>) -> Vec<Permutation> {
    raw.into_iter()
        .map(|images| Permutation::from_images(images).expect("search emits bijections"))
        .collect()
}

/// Exact minimum positive displacement of `g`.
pub fn pi_exact(g: &Graph, collect_witnesses: bool) -> Result<PiResult> {
    let objective = if collect_witnesses {
        Objective::Witnesses
    } else {
        Objective::Count
    };
    pi_exact_with(g, &SolverOptions::with_objective(objective))
}

pub fn pi_exact_with(g: &Graph, opts: &SolverOptions) -> Result<PiResult> {
    check_searchable(g)?;
    let n = g.n();
    let incumbent = transposition_bound(g).ok_or(Error::NoNearAutomorphism)?;
    if opts.fix_first_vertex {
        if opts.objective == Objective::Witnesses {
            return Err(Error::invalid(
                "fixing the first image cannot be combined with witness collection",
            ));
        }
        if !is_vertex_transitive(g, opts)? {
            return Err(Error::invalid(format!(
                "fixing the first image needs a vertex-transitive graph; {g} is not"
            )));
        }
    }
    let plan = Plan {
        graph: g,
        goal: Goal::MinPositive {
            strict: opts.objective == Objective::Value,
        },
        collect: opts.objective == Objective::Witnesses,
        stop_after: None,
        budget: opts.node_budget,
        incumbent,
        first_images: if opts.fix_first_vertex {
            vec![0]
        } else {
            (0..n).collect()
        },
        workers: opts.workers,
    };
    let parts = plan.run()?;

    let nodes_explored: u64 = parts.iter().map(|p| p.nodes).sum();
    let pruned: u64 = parts.iter().map(|p| p.pruned).sum();
    let pi = parts.iter().map(|p| p.best).min().unwrap_or(incumbent);
    if parts.iter().any(|p| p.exceeded) || nodes_explored > opts.node_budget {
        return Err(Error::BudgetExceeded {
            budget: opts.node_budget,
            nodes_explored,
            incumbent: Some(pi),
        });
    }

    let mut count = 0;
    let mut witnesses = Vec::new();
    for p in parts.into_iter().filter(|p| p.best == pi) {
        count += p.count;
        witnesses.extend(p.witnesses);
    }
    witnesses.sort_unstable();
    if opts.fix_first_vertex {
        count *= n as u64;
    }
    Ok(PiResult {
        graph: g.into(),
        pi,
        witness_count: (opts.objective != Objective::Value).then_some(count),
        witnesses: to_perms(witnesses),
        nodes_explored,
        pruned,
    })
}

/// Every permutation `f` with `delta_f(G) = pi(G)`, sorted.
pub fn near_automorphisms(g: &Graph) -> Result<Vec<Permutation>> {
    Ok(pi_exact(g, true)?.witnesses)
}

/// Every permutation whose total displacement is exactly `target`, sorted.
pub fn permutations_with_displacement(g: &Graph, target: u64, opts: &SolverOptions) -> Result<Vec<Permutation>> {
    check_searchable(g)?;
    let plan = Plan {
        graph: g,
        goal: Goal::Exactly(target),
        collect: true,
        stop_after: None,
        budget: opts.node_budget,
        incumbent: target,
        first_images: (0..g.n()).collect(),
        workers: opts.workers,
    };
    let parts = plan.run()?;
    let nodes_explored: u64 = parts.iter().map(|p| p.nodes).sum();
    if parts.iter().any(|p| p.exceeded) || nodes_explored > opts.node_budget {
        return Err(Error::BudgetExceeded {
            budget: opts.node_budget,
            nodes_explored,
            incumbent: None,
        });
    }
    let mut raw: Vec<_> = parts.into_iter().flat_map(|p| p.witnesses).collect();
    raw.sort_unstable();
    Ok(to_perms(raw))
}

/// Distance-preserving permutations of `g`, sorted.
pub fn automorphisms(g: &Graph) -> Result<Vec<Permutation>> {
    permutations_with_displacement(g, 0, &SolverOptions::default())
}

/// Whether some automorphism maps `v_1` to each vertex.
pub fn is_vertex_transitive(g: &Graph, opts: &SolverOptions) -> Result<bool> {
    check_searchable(g)?;
    let plan = Plan {
        graph: g,
        goal: Goal::Exactly(0),
        collect: false,
        stop_after: Some(1),
        budget: opts.node_budget,
        incumbent: 0,
        first_images: (0..g.n()).collect(),
        workers: opts.workers,
    };
    let parts = plan.run()?;
    if parts.iter().any(|p| p.exceeded) {
        return Err(Error::BudgetExceeded {
            budget: opts.node_budget,
            nodes_explored: parts.iter().map(|p| p.nodes).sum(),
            incumbent: None,
        });
    }
    Ok(parts.iter().all(|p| p.count > 0))
}

/// Outcome of comparing the brute-force set `{f : delta_f = 4}` on the
/// complement of `C_n` with `{g ∘ sigma : g dihedral, sigma a reversal}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub oracle_set_size: usize,
    pub constructed_set_size: usize,
    /// Number of `(g, sigma)` pairs that produced an already-seen map.
    pub duplicates: usize,
    pub equal: bool,
    pub missing_count: usize,
    pub extra_count: usize,
    /// In the oracle set but not constructed; first entries only.
    pub missing: Vec<Permutation>,
    /// Constructed but not in the oracle set; first entries only.
    pub extra: Vec<Permutation>,
}

/// The dihedral maps composed with every admissible segment reversal.
/// Returns the distinct products and the number of repeated products.
pub fn constructed_near_automorphisms(n: usize) -> Result<(BTreeSet<Permutation>, usize)> {
    let autos = dihedral(n)?;
    let sigmas = all_sigma_candidates(n)?;
    let mut set = BTreeSet::new();
    let mut duplicates = 0;
    for g in &autos {
        for (_, s) in &sigmas {
            if !set.insert(g.compose(s)?) {
                duplicates += 1;
            }
        }
    }
    Ok((set, duplicates))
}

pub fn verify_theorem(n: usize) -> Result<TheoremReport> {
    verify_theorem_with(n, DEFAULT_THEOREM_MAX_N, &SolverOptions::default())
}

pub fn verify_theorem_with(n: usize, max_n: usize, opts: &SolverOptions) -> Result<TheoremReport> {
    if !(5..=max_n).contains(&n) {
        return Err(Error::invalid(format!(
            "theorem check needs 5 <= n <= {max_n}, got {n}"
        )));
    }
    let g = complement(&build_cycle(n)?)?;
    let oracle: BTreeSet<_> = permutations_with_displacement(&g, 4, opts)?.into_iter().collect();
    let (constructed, duplicates) = constructed_near_automorphisms(n)?;

    let missing: Vec<_> = oracle.difference(&constructed).cloned().collect();
    let extra: Vec<_> = constructed.difference(&oracle).cloned().collect();
    Ok(TheoremReport {
        n,
        oracle_set_size: oracle.len(),
        constructed_set_size: constructed.len(),
        duplicates,
        equal: missing.is_empty() && extra.is_empty(),
        missing_count: missing.len(),
        extra_count: extra.len(),
        missing: missing.into_iter().take(REPORT_LIST_CAP).collect(),
        extra: extra.into_iter().take(REPORT_LIST_CAP).collect(),
    })
}

/// Which permutations a lemma check ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Population {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl Population {
    pub fn members(self, n: usize) -> Box<dyn Iterator<Item = Permutation>> {
        match self {
            Population::Exhaustive => Box::new(Permutation::all(n)),
            Population::Sampled { count, seed } => Box::new(random_permutations(n, count, seed).into_iter()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub graph: GraphInfo,
    pub population: Population,
    pub checked: u64,
    /// Members satisfying the hypothesis, for conditional statements.
    pub premise_holds: u64,
    pub violation_count: u64,
    /// First violators only.
    pub violations: Vec<Permutation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

fn run_lemma<F>(lemma: &'static str, g: &Graph, population: Population, mut check: F) -> Result<LemmaReport>
where
    F: FnMut(&Permutation) -> Result<(bool, bool)>,
{
    let mut report = LemmaReport {
        lemma,
        graph: g.into(),
        population,
        checked: 0,
        premise_holds: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    for f in population.members(g.n()) {
        let (premise, ok) = check(&f)?;
        report.checked += 1;
        report.premise_holds += premise as u64;
        if !ok {
            report.violation_count += 1;
            if report.violations.len() < REPORT_LIST_CAP {
                report.violations.push(f);
            }
        }
    }
    Ok(report)
}

/// In- and out-degree agree at every vertex of the displacement multigraph.
pub fn check_balance(g: &Graph, population: Population) -> Result<LemmaReport> {
    run_lemma("multigraph_balance", g, population, |f| {
        Ok((true, build_multigraph(g, f)?.is_balanced()))
    })
}

/// On the complement of `C_n` with `n > 5`, the sandwich pattern forces a
/// displacement of at least 6.
pub fn check_sandwich_bound(n: usize, population: Population) -> Result<LemmaReport> {
    if n <= 5 {
        return Err(Error::invalid(format!("sandwich bound needs n > 5, got {n}")));
    }
    let g = complement(&build_cycle(n)?)?;
    run_lemma("sandwich_bound", &g, population, |f| {
        if sandwich_pattern_holds(&g, f)? {
            Ok((true, delta_value(&g, f)? >= 6))
        } else {
            Ok((false, true))
        }
    })
}

/// Every non-automorphism moves the distance of at least one edge.
pub fn check_positive_edge(g: &Graph, population: Population) -> Result<LemmaReport> {
    run_lemma("positive_edge", g, population, |f| {
        let moved = delta_value(g, f)? > 0;
        Ok((moved, !moved || find_positive_edge(g, f)?.is_some()))
    })
}

/// Every non-automorphism of the complement of `C_n` (`n >= 5`) has
/// displacement at least 4.
pub fn check_min_displacement(n: usize, population: Population) -> Result<LemmaReport> {
    if n < 5 {
        return Err(Error::invalid(format!(
            "displacement lower bound needs n >= 5, got {n}"
        )));
    }
    let g = complement(&build_cycle(n)?)?;
    run_lemma("min_displacement", &g, population, |f| {
        let r = delta_total(&g, f)?;
        Ok((r.total > 0, r.total == 0 || r.total >= 4))
    })
}
