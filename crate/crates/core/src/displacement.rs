//! Relative displacement of a vertex permutation and the directed
//! displacement multigraph it induces on distance values.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::perm::Permutation;

fn check_size(g: &Graph, f: &Permutation) -> Result<()> {
    if g.n() != f.len() {
        return Err(Error::invalid(format!(
            "permutation of size {} does not fit a graph on {} vertices",
            f.len(),
            g.n()
        )));
    }
    Ok(())
}

fn check_vertex(g: &Graph, x: usize) -> Result<()> {
    if x >= g.n() {
        return Err(Error::invalid(format!("vertex {} is outside 1..={}", x + 1, g.n())));
    }
    Ok(())
}

#[inline]
fn pair_value(g: &Graph, f: &Permutation, x: usize, y: usize) -> u64 {
    g.dist(x, y).abs_diff(g.dist(f.apply(x), f.apply(y))) as u64
}

/// `|d(x, y) - d(f(x), f(y))|` for distinct 0-based vertices.
pub fn delta_pair(g: &Graph, f: &Permutation, x: usize, y: usize) -> Result<u64> {
    check_size(g, f)?;
    check_vertex(g, x)?;
    check_vertex(g, y)?;
    if x == y {
        return Err(Error::invalid(format!("pair ({}, {}) is not distinct", x + 1, y + 1)));
    }
    Ok(pair_value(g, f, x, y))
}

/// Sum of `delta_pair(x, y)` over every other vertex `y`.
pub fn delta_vertex(g: &Graph, f: &Permutation, x: usize) -> Result<u64> {
    check_size(g, f)?;
    check_vertex(g, x)?;
    Ok((0..g.n()).filter(|&y| y != x).map(|y| pair_value(g, f, x, y)).sum())
}

/// Sum of `delta_pair(x, y)` over `y` in `subset`; `y == x` is skipped.
pub fn delta_subset(g: &Graph, f: &Permutation, x: usize, subset: &[usize]) -> Result<u64> {
    check_size(g, f)?;
    check_vertex(g, x)?;
    let mut sum = 0;
    for &y in subset {
        check_vertex(g, y)?;
        if y != x {
            sum += pair_value(g, f, x, y);
        }
    }
    Ok(sum)
}

/// Total displacement over unordered pairs, without building a report.
pub fn delta_value(g: &Graph, f: &Permutation) -> Result<u64> {
    check_size(g, f)?;
    let n = g.n();
    Ok((0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .map(|(x, y)| pair_value(g, f, x, y))
        .sum())
}

/// A vertex pair whose distance changes under the permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DisplacedPair {
    pub u: usize,
    pub v: usize,
    pub d_before: u32,
    pub d_after: u32,
}

impl DisplacedPair {
    pub fn value(&self) -> u64 {
        self.d_before.abs_diff(self.d_after) as u64
    }
}

impl Serialize for DisplacedPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            u: usize,
            v: usize,
            d_before: u32,
            d_after: u32,
        }
        Wire {
            u: self.u + 1,
            v: self.v + 1,
            d_before: self.d_before,
            d_after: self.d_after,
        }
        .serialize(s)
    }
}

/// Full breakdown of the displacement of one permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplacementReport {
    pub total: u64,
    /// Indexed by 0-based vertex.
    pub per_vertex: Vec<u64>,
    /// Only pairs with a nonzero contribution, `u < v`, in lexicographic order.
    pub displaced_pairs: Vec<DisplacedPair>,
    /// Edges `uv` whose image `f(u)f(v)` is a non-edge.
    pub edge_flips: u64,
}

impl Serialize for DisplacementReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            total: u64,
            per_vertex: BTreeMap<String, u64>,
            displaced_pairs: &'a [DisplacedPair],
            edge_flips: u64,
        }
        Wire {
            total: self.total,
            per_vertex: self
                .per_vertex
                .iter()
                .enumerate()
                .map(|(i, &v)| ((i + 1).to_string(), v))
                .collect(),
            displaced_pairs: &self.displaced_pairs,
            edge_flips: self.edge_flips,
        }
        .serialize(s)
    }
}

pub fn delta_total(g: &Graph, f: &Permutation) -> Result<DisplacementReport> {
    check_size(g, f)?;
    let n = g.n();
    let mut per_vertex = vec![0; n];
    let mut displaced_pairs = Vec::new();
    let mut edge_flips = 0;
    let mut total = 0;
    for x in 0..n {
        for y in x + 1..n {
            let (fx, fy) = (f.apply(x), f.apply(y));
            let pair = DisplacedPair {
                u: x,
                v: y,
                d_before: g.dist(x, y),
                d_after: g.dist(fx, fy),
            };
            let value = pair.value();
            if value > 0 {
                total += value;
                per_vertex[x] += value;
                per_vertex[y] += value;
                displaced_pairs.push(pair);
            }
            if g.adjacent(x, y) && !g.adjacent(fx, fy) {
                edge_flips += 1;
            }
        }
    }
    Ok(DisplacementReport {
        total,
        per_vertex,
        displaced_pairs,
        edge_flips,
    })
}

/// The directed multigraph on distance values `a_1..a_t` with one arc
/// `a_i -> a_j` per vertex pair moved from distance `i` to distance `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplacementMultigraph {
    pub t: u32,
    /// `(i, j) -> multiplicity`, only for `i != j`.
    pub arcs: BTreeMap<(u32, u32), u64>,
    /// `out_deg[i - 1]` is the out-degree of `a_i`.
    pub out_deg: Vec<u64>,
    pub in_deg: Vec<u64>,
}

impl DisplacementMultigraph {
    pub fn arc_count(&self) -> u64 {
        self.arcs.values().sum()
    }

    pub fn multiplicity(&self, from: u32, to: u32) -> u64 {
        self.arcs.get(&(from, to)).copied().unwrap_or(0)
    }

    /// Distance values whose in- and out-degree differ.
    pub fn unbalanced(&self) -> Vec<u32> {
        (1..=self.t)
            .filter(|&i| self.in_deg[i as usize - 1] != self.out_deg[i as usize - 1])
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.unbalanced().is_empty()
    }
}

impl Serialize for DisplacementMultigraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Arc {
            from: u32,
            to: u32,
            multiplicity: u64,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            t: u32,
            arcs: Vec<Arc>,
            out_deg: &'a [u64],
            in_deg: &'a [u64],
            balanced: bool,
        }
        Wire {
            t: self.t,
            arcs: self
                .arcs
                .iter()
                .map(|(&(from, to), &multiplicity)| Arc { from, to, multiplicity })
                .collect(),
            out_deg: &self.out_deg,
            in_deg: &self.in_deg,
            balanced: self.is_balanced(),
        }
        .serialize(s)
    }
}

pub fn build_multigraph(g: &Graph, f: &Permutation) -> Result<DisplacementMultigraph> {
    check_size(g, f)?;
    let n = g.n();
    let t = g.diameter();
    let mut arcs = BTreeMap::new();
    let mut out_deg = vec![0; t as usize];
    let mut in_deg = vec![0; t as usize];
    for u in 0..n {
        for v in u + 1..n {
            let i = g.dist(u, v);
            let j = g.dist(f.apply(u), f.apply(v));
            if i != j {
                *arcs.entry((i, j)).or_insert(0) += 1;
                out_deg[i as usize - 1] += 1;
                in_deg[j as usize - 1] += 1;
            }
        }
    }
    Ok(DisplacementMultigraph {
        t,
        arcs,
        out_deg,
        in_deg,
    })
}

/// First edge (0-based, lexicographic) whose distance changes under `f`.
/// `None` exactly when `f` is an automorphism.
pub fn find_positive_edge(g: &Graph, f: &Permutation) -> Result<Option<(usize, usize)>> {
    check_size(g, f)?;
    Ok(g.edges().into_iter().find(|&(u, v)| pair_value(g, f, u, v) >= 1))
}

/// On the complement of `C_n`, whether some vertex has both of its cycle
/// neighbours (its only non-neighbours) mapped onto neighbours of its image.
pub fn sandwich_pattern_holds(g: &Graph, f: &Permutation) -> Result<bool> {
    if g.family() != Family::ComplementCycle {
        return Err(Error::invalid(format!(
            "sandwich pattern is defined on complement_cycle graphs, got {}",
            g.family()
        )));
    }
    let n = g.n();
    if n <= 5 {
        return Err(Error::invalid(format!("sandwich pattern needs n > 5, got {n}")));
    }
    check_size(g, f)?;
    Ok((0..n).any(|v| {
        let (prev, next) = ((v + n - 1) % n, (v + 1) % n);
        let fv = f.apply(v);
        g.adjacent(f.apply(prev), fv) && g.adjacent(fv, f.apply(next))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cycle, build_path, complement};
    use crate::perm::{dihedral, sigma_lk, SigmaSpec};

    fn ccycle(n: usize) -> Graph {
        complement(&build_cycle(n).unwrap()).unwrap()
    }

    fn swap12(n: usize) -> Permutation {
        Permutation::transposition(n, 0, 1).unwrap()
    }

    #[test]
    fn identity_displaces_nothing() {
        let g = build_path(5).unwrap();
        let id = Permutation::identity(5);
        assert_eq!(delta_pair(&g, &id, 0, 4).unwrap(), 0);
        for x in 0..5 {
            assert_eq!(delta_vertex(&g, &id, x).unwrap(), 0);
        }
        let report = delta_total(&g, &id).unwrap();
        assert_eq!(report.total, 0);
        assert!(report.displaced_pairs.is_empty());
        assert_eq!(build_multigraph(&g, &id).unwrap().arc_count(), 0);
        assert_eq!(find_positive_edge(&g, &id).unwrap(), None);
    }

    #[test]
    fn transposition_on_complement_cycle() {
        for n in 6..=12 {
            let g = ccycle(n);
            let f = swap12(n);
            assert_eq!(delta_pair(&g, &f, 0, n - 1).unwrap(), 1);
            assert_eq!(delta_vertex(&g, &f, 0).unwrap(), 2);
            assert_eq!(delta_vertex(&g, &f, 4).unwrap(), 0);
            let r = delta_total(&g, &f).unwrap();
            assert_eq!(r.total, 4);
            assert_eq!(r.edge_flips, 2);
        }
        let r5 = delta_total(&ccycle(5), &swap12(5)).unwrap();
        assert_eq!(r5.total, 4);
    }

    #[test]
    fn subset_sums() {
        let g = ccycle(6);
        let f = swap12(6);
        let rest: Vec<usize> = (1..6).collect();
        assert_eq!(
            delta_subset(&g, &f, 0, &rest).unwrap(),
            delta_vertex(&g, &f, 0).unwrap()
        );
        assert_eq!(delta_subset(&g, &f, 0, &[]).unwrap(), 0);
        assert_eq!(delta_subset(&g, &f, 0, &[5]).unwrap(), 1);
        assert_eq!(delta_subset(&g, &f, 0, &[0, 5]).unwrap(), 1);
        assert!(delta_subset(&g, &f, 0, &[6]).is_err());
    }

    #[test]
    fn argument_errors() {
        let g = ccycle(6);
        let f = swap12(6);
        assert!(matches!(delta_pair(&g, &f, 2, 2), Err(Error::InvalidParameter(_))));
        assert!(delta_vertex(&g, &f, 6).is_err());
        assert!(delta_total(&g, &swap12(5)).is_err());
        assert!(build_multigraph(&g, &swap12(7)).is_err());
    }

    #[test]
    fn sigma_composed_with_rotation() {
        let g = ccycle(7);
        let s = sigma_lk(SigmaSpec::new(7, 3, 5).unwrap());
        for rot in dihedral(7).unwrap() {
            let f = rot.compose(&s).unwrap();
            assert_eq!(delta_total(&g, &f).unwrap().total, 4);
        }
    }

    #[test]
    fn multigraph_of_transposition() {
        let g = ccycle(8);
        let m = build_multigraph(&g, &swap12(8)).unwrap();
        assert_eq!(m.t, 2);
        assert_eq!(m.multiplicity(1, 2), 2);
        assert_eq!(m.multiplicity(2, 1), 2);
        assert_eq!(m.arc_count(), 4);
        assert!(m.is_balanced());
    }

    #[test]
    fn positive_edge_for_non_automorphism() {
        let g = ccycle(6);
        let (u, v) = find_positive_edge(&g, &swap12(6)).unwrap().unwrap();
        assert!(g.adjacent(u, v));
        assert!(delta_pair(&g, &swap12(6), u, v).unwrap() >= 1);
        for aut in dihedral(6).unwrap() {
            assert_eq!(find_positive_edge(&g, &aut).unwrap(), None);
        }
    }

    #[test]
    fn sandwich_pattern() {
        let g = ccycle(7);
        assert!(!sandwich_pattern_holds(&g, &Permutation::identity(7)).unwrap());
        assert!(!sandwich_pattern_holds(&g, &swap12(7)).unwrap());

        // 3-cycle v1 -> v2 -> v3 -> v1
        let f: Permutation = "2,3,1,4,5,6,7".parse().unwrap();
        let direct = (0..7).any(|v| {
            let fv = f.apply(v);
            let a = f.apply((v + 6) % 7);
            let b = f.apply((v + 1) % 7);
            // non-adjacent in the cycle means adjacent in the complement
            let cyc = |x: usize, y: usize| (x + 1) % 7 == y || (y + 1) % 7 == x;
            !cyc(a, fv) && !cyc(fv, b)
        });
        // v3's cycle-neighbours v2, v4 go to v3, v4; f(v3) = v1 is adjacent to both
        assert!(direct);
        assert_eq!(sandwich_pattern_holds(&g, &f).unwrap(), direct);
        assert!(delta_total(&g, &f).unwrap().total >= 6);

        assert!(sandwich_pattern_holds(&ccycle(5), &Permutation::identity(5)).is_err());
        assert!(sandwich_pattern_holds(&build_cycle(7).unwrap(), &Permutation::identity(7)).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = delta_total(&ccycle(5), &swap12(5)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["total"], 4);
        assert_eq!(v["edge_flips"], 2);
        assert_eq!(v["per_vertex"]["1"], 2);
        assert_eq!(v["displaced_pairs"].as_array().unwrap().len(), 4);
        assert_eq!(v["displaced_pairs"][0]["u"], 1);
    }
}
