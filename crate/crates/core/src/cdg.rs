//! Clustering difference graphs and the combinatorial edge and circuit
//! tests for partition polytopes.

use serde::{Deserialize, Serialize};

use crate::circuits::normalize_circuit;
use crate::error::{Error, Result};
use crate::exactla::{RatVector, Rational};
use crate::families::PartitionSpec;

/// `assignment[j]` is the cluster of item `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clustering {
    pub assignment: Vec<usize>,
}

impl Clustering {
    pub fn new(assignment: Vec<usize>) -> Self {
        Clustering { assignment }
    }

    pub fn sizes(&self, k: usize) -> Vec<usize> {
        let mut s = vec![0; k];
        for &c in &self.assignment {
            s[c] += 1;
        }
        s
    }

    /// 0/1 vector with `y[i * n + j] = 1` iff item `j` is in cluster `i`.
    pub fn to_vector(&self, k: usize) -> RatVector {
        let n = self.assignment.len();
        let mut y = vec![Rational::from(0); k * n];
        for (j, &c) in self.assignment.iter().enumerate() {
            y[c * n + j] = Rational::from(1);
        }
        y
    }

    /// Inverse of [`Clustering::to_vector`]; `None` unless `y` is a 0/1
    /// assignment vector.
    pub fn from_vector(y: &[Rational], k: usize) -> Option<Clustering> {
        if k == 0 || y.len() % k != 0 {
            return None;
        }
        let n = y.len() / k;
        let mut assignment = Vec::with_capacity(n);
        for j in 0..n {
            let ones: Vec<usize> = (0..k).filter(|&i| y[i * n + j] == 1).collect();
            let zeros = (0..k).filter(|&i| y[i * n + j] == 0).count();
            if ones.len() != 1 || zeros != k - 1 {
                return None;
            }
            assignment.push(ones[0]);
        }
        Some(Clustering { assignment })
    }

    pub fn check(&self, spec: &PartitionSpec) -> Result<()> {
        if self.assignment.len() != spec.n_items {
            return Err(Error::InfeasibleClustering(format!(
                "{} items assigned, spec has {}",
                self.assignment.len(),
                spec.n_items
            )));
        }
        if let Some(&c) = self.assignment.iter().find(|&&c| c >= spec.k()) {
            return Err(Error::InfeasibleClustering(format!("cluster {c} out of range")));
        }
        for (i, s) in self.sizes(spec.k()).into_iter().enumerate() {
            if s < spec.lower[i] || s > spec.upper[i] {
                return Err(Error::InfeasibleClustering(format!(
                    "cluster {i} has {s} items, bounds are {}..={}",
                    spec.lower[i], spec.upper[i]
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Free,
    Saturated,
    Depleted,
    Fixed,
}

pub fn status(size: usize, lower: usize, upper: usize) -> Status {
    match (lower < size, size < upper) {
        (true, true) => Status::Free,
        (true, false) => Status::Saturated,
        (false, true) => Status::Depleted,
        (false, false) => Status::Fixed,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdgEdge {
    pub from: usize,
    pub to: usize,
    pub item: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cdg {
    pub statuses: Vec<Status>,
    pub edges: Vec<CdgEdge>,
}

/// Shape of a set of transfer edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Empty,
    /// Nodes in order from source to sink.
    Path(Vec<usize>),
    /// Nodes in cyclic order.
    Cycle(Vec<usize>),
    Other,
}

/// Classifies edges as one simple directed path, one directed cycle, or
/// neither.
pub fn shape(k: usize, edges: &[(usize, usize)]) -> Shape {
    if edges.is_empty() {
        return Shape::Empty;
    }
    let mut out_deg = vec![0usize; k];
    let mut in_deg = vec![0usize; k];
    let mut next = vec![usize::MAX; k];
    for &(a, b) in edges {
        out_deg[a] += 1;
        in_deg[b] += 1;
        next[a] = b;
    }
    if out_deg.iter().chain(&in_deg).any(|&d| d > 1) {
        return Shape::Other;
    }
    let sources: Vec<usize> = (0..k).filter(|&i| out_deg[i] == 1 && in_deg[i] == 0).collect();
    let (start, cyclic) = match sources.as_slice() {
        [] => (edges[0].0, true),
        [s] => (*s, false),
        _ => return Shape::Other,
    };
    let mut nodes = vec![start];
    let mut at = start;
    while out_deg[at] == 1 {
        at = next[at];
        if at == start {
            break;
        }
        nodes.push(at);
    }
    let used = if cyclic { nodes.len() } else { nodes.len() - 1 };
    if used != edges.len() {
        return Shape::Other;
    }
    if cyclic {
        Shape::Cycle(nodes)
    } else {
        Shape::Path(nodes)
    }
}

impl Cdg {
    pub fn shape(&self) -> Shape {
        let e: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        shape(self.statuses.len(), &e)
    }
}

/// Edge `(i, l, j)` whenever item `j` sits in cluster `i` under `y1` and in
/// `l != i` under `y2`; statuses are read at `y1`.
pub fn build_cdg(spec: &PartitionSpec, y1: &Clustering, y2: &Clustering) -> Result<Cdg> {
    y1.check(spec)?;
    y2.check(spec)?;
    let k = spec.k();
    let statuses = y1.sizes(k).into_iter().enumerate().map(|(i, s)| status(s, spec.lower[i], spec.upper[i])).collect();
    let edges = y1
        .assignment
        .iter()
        .zip(&y2.assignment)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(item, (&from, &to))| CdgEdge { from, to, item })
        .collect();
    Ok(Cdg { statuses, edges })
}

/// Adjacency in the bounded-size partition polytope: one edge, a directed
/// path without free interior nodes, or a directed cycle with at most one
/// free node. Equal clusterings are not adjacent.
pub fn pp_bounded_edge_test(spec: &PartitionSpec, y1: &Clustering, y2: &Clustering) -> Result<bool> {
    let g = build_cdg(spec, y1, y2)?;
    Ok(match g.shape() {
        Shape::Path(nodes) => nodes[1..nodes.len() - 1].iter().all(|&c| g.statuses[c] != Status::Free),
        Shape::Cycle(nodes) => nodes.iter().filter(|&&c| g.statuses[c] == Status::Free).count() <= 1,
        Shape::Empty | Shape::Other => false,
    })
}

/// Adjacency in the fixed-size partition polytope: exactly one directed cycle.
pub fn pp_fixed_edge_test(spec: &PartitionSpec, y1: &Clustering, y2: &Clustering) -> Result<bool> {
    if !spec.is_fixed() {
        return Err(Error::InvalidSpec("fixed-size test needs lower = upper".into()));
    }
    Ok(matches!(build_cdg(spec, y1, y2)?.shape(), Shape::Cycle(_)))
}

/// Transfer edges of a direction vector in `y[i * n + j]` order, or `None`
/// unless every item column is zero or one `-1` and one `+1`.
fn transfers(g: &[Rational], n_items: usize, k: usize) -> Option<Vec<(usize, usize)>> {
    if g.len() != n_items * k || g.iter().any(|x| *x != 0 && *x != 1 && *x != -1) {
        return None;
    }
    let mut edges = Vec::new();
    for j in 0..n_items {
        let minus: Vec<usize> = (0..k).filter(|&i| g[i * n_items + j] == -1).collect();
        let plus: Vec<usize> = (0..k).filter(|&i| g[i * n_items + j] == 1).collect();
        match (minus.as_slice(), plus.as_slice()) {
            ([], []) => {}
            ([a], [b]) => edges.push((*a, *b)),
            _ => return None,
        }
    }
    Some(edges)
}

/// Circuits of the bounded-size partition polytope: a single cyclic
/// exchange or a single sequential movement of items.
pub fn pp_bounded_circuit_test(n_items: usize, k: usize, g: &[Rational]) -> bool {
    match transfers(g, n_items, k) {
        Some(e) => matches!(shape(k, &e), Shape::Path(_) | Shape::Cycle(_)),
        None => false,
    }
}

/// Circuits of the fixed-size partition polytope: single cyclic exchanges.
pub fn pp_fixed_circuit_test(n_items: usize, k: usize, g: &[Rational]) -> bool {
    match transfers(g, n_items, k) {
        Some(e) => matches!(shape(k, &e), Shape::Cycle(_)),
        None => false,
    }
}

/// Every canonical vector passing `test`, by brute force over per-item moves.
fn move_vectors(n_items: usize, k: usize, test: fn(usize, usize, &[Rational]) -> bool) -> Vec<RatVector> {
    let moves: Vec<Option<(usize, usize)>> = std::iter::once(None)
        .chain((0..k).flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| Some((a, b)))))
        .collect();
    let mut idx = vec![0usize; n_items];
    let mut out = Vec::new();
    loop {
        let mut g = vec![Rational::from(0); n_items * k];
        for (j, &m) in idx.iter().enumerate() {
            if let Some((a, b)) = moves[m] {
                g[a * n_items + j] = Rational::from(-1);
                g[b * n_items + j] = Rational::from(1);
            }
        }
        if test(n_items, k, &g) {
            let (c, _) = normalize_circuit(&g).expect("nonzero");
            out.push(c);
        }
        let mut pos = 0;
        while pos < n_items {
            idx[pos] += 1;
            if idx[pos] < moves.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == n_items {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn move_circuit_vectors(n_items: usize, k: usize) -> Vec<RatVector> {
    move_vectors(n_items, k, pp_bounded_circuit_test)
}

pub fn cyclic_exchange_vectors(n_items: usize, k: usize) -> Vec<RatVector> {
    move_vectors(n_items, k, pp_fixed_circuit_test)
}

/// All feasible clusterings of `spec`, in lexicographic order of assignment.
pub fn feasible_clusterings(spec: &PartitionSpec) -> Vec<Clustering> {
    let n = spec.n_items;
    let k = spec.k();
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    loop {
        let c = Clustering::new(a.clone());
        if c.check(spec).is_ok() {
            out.push(c);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            a[pos] += 1;
            if a[pos] < k {
                break;
            }
            a[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::partition_bounded;
    use crate::polyhedron::Vertex;

    fn cl(a: &[usize]) -> Clustering {
        Clustering::new(a.to_vec())
    }

    fn geometric(spec: &PartitionSpec, y1: &Clustering, y2: &Clustering) -> bool {
        let p = partition_bounded(spec).unwrap();
        let v = |c: &Clustering| {
            let point = c.to_vector(spec.k());
            let tight = p.tight_rows(&point);
            Vertex { point, tight }
        };
        p.are_adjacent(&v(y1), &v(y2))
    }

    #[test]
    fn six_cluster_example_has_a_four_and_a_two_cycle() {
        let spec = PartitionSpec::fixed(6, vec![1; 6]);
        let y1 = cl(&[0, 1, 2, 3, 4, 5]);
        // cluster i receives item: 0<-x3, 1<-x0, 2<-x1, 3<-x2, 4<-x5, 5<-x4
        let y2 = cl(&[1, 2, 3, 0, 5, 4]);
        let g = build_cdg(&spec, &y1, &y2).unwrap();
        let e: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(e, vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 4)]);
        assert_eq!(g.shape(), Shape::Other);
        assert_eq!(shape(6, &e[..4]), Shape::Cycle(vec![0, 1, 2, 3]));
        assert_eq!(shape(6, &e[4..]), Shape::Cycle(vec![4, 5]));
    }

    #[test]
    fn trivial_cdgs() {
        let spec = PartitionSpec::bounded(2, vec![0, 0], vec![2, 2]);
        let y = cl(&[0, 1]);
        assert!(build_cdg(&spec, &y, &y).unwrap().edges.is_empty());
        assert_eq!(build_cdg(&spec, &y, &cl(&[1, 0])).unwrap().shape(), Shape::Cycle(vec![0, 1]));
    }

    /// Path `c0 -> c1 -> c2 -> c3 -> c4` moving items 0..4 one step along.
    fn path_case(bounds: [(usize, usize); 5]) -> (PartitionSpec, Clustering, Clustering) {
        let spec = PartitionSpec::bounded(5, bounds.iter().map(|b| b.0).collect(), bounds.iter().map(|b| b.1).collect());
        (spec, cl(&[0, 1, 2, 3, 4]), cl(&[1, 2, 3, 4, 4]))
    }

    #[test]
    fn path_with_free_interior_is_not_an_edge() {
        let (spec, y1, y2) = path_case([(0, 1), (1, 1), (0, 2), (1, 1), (1, 2)]);
        let g = build_cdg(&spec, &y1, &y2).unwrap();
        assert_eq!(g.statuses[2], Status::Free);
        assert!(!pp_bounded_edge_test(&spec, &y1, &y2).unwrap());
        assert!(!geometric(&spec, &y1, &y2));
    }

    #[test]
    fn path_with_fixed_depleted_saturated_interior_is_an_edge() {
        let (spec, y1, y2) = path_case([(0, 1), (1, 1), (1, 2), (0, 1), (1, 2)]);
        let g = build_cdg(&spec, &y1, &y2).unwrap();
        assert_eq!(&g.statuses[1..4], &[Status::Fixed, Status::Depleted, Status::Saturated]);
        assert!(pp_bounded_edge_test(&spec, &y1, &y2).unwrap());
        assert!(geometric(&spec, &y1, &y2));
    }

    #[test]
    fn cycle_with_two_free_nodes_is_not_an_edge() {
        let spec = PartitionSpec::bounded(4, vec![0, 1, 0, 1], vec![2, 1, 2, 1]);
        let (y1, y2) = (cl(&[0, 1, 2, 3]), cl(&[1, 2, 3, 0]));
        assert!(!pp_bounded_edge_test(&spec, &y1, &y2).unwrap());
        assert!(!geometric(&spec, &y1, &y2));
    }

    #[test]
    fn cycle_with_one_free_node_is_an_edge() {
        let spec = PartitionSpec::bounded(5, vec![0, 1, 0, 1, 1], vec![2, 1, 1, 2, 1]);
        let (y1, y2) = (cl(&[0, 1, 2, 3, 4]), cl(&[1, 2, 3, 4, 0]));
        let g = build_cdg(&spec, &y1, &y2).unwrap();
        assert_eq!(
            g.statuses,
            vec![Status::Free, Status::Fixed, Status::Saturated, Status::Depleted, Status::Fixed]
        );
        assert!(pp_bounded_edge_test(&spec, &y1, &y2).unwrap());
        assert!(geometric(&spec, &y1, &y2));
    }

    #[test]
    fn circuit_test_examples() {
        let v = |pairs: &[(usize, i64)]| {
            let mut g = vec![Rational::from(0); 3 * 3];
            for &(t, x) in pairs {
                g[t] = Rational::from(x);
            }
            g
        };
        // n = 3 items, k = 3 clusters, index i * 3 + j
        let swap = v(&[(0, -1), (3, 1), (4, -1), (1, 1)]);
        assert!(pp_bounded_circuit_test(3, 3, &swap));
        let path = v(&[(0, -1), (3, 1), (4, -1), (7, 1)]);
        assert!(pp_bounded_circuit_test(3, 3, &path));
        assert!(!pp_fixed_circuit_test(3, 3, &path));
        let two = {
            // two disjoint swaps need four items; use n = 4, k = 4
            let mut g = vec![Rational::from(0); 16];
            for (t, x) in [(0, -1), (4, 1), (5, -1), (1, 1), (10, -1), (14, 1), (15, -1), (11, 1)] {
                g[t] = Rational::from(x);
            }
            g
        };
        assert!(!pp_bounded_circuit_test(4, 4, &two));
        assert!(!pp_bounded_circuit_test(3, 3, &vec![Rational::from(0); 9]));
    }

    #[test]
    fn fixed_edge_examples() {
        let spec = PartitionSpec::fixed(4, vec![2, 2]);
        let y1 = cl(&[0, 0, 1, 1]);
        assert!(pp_fixed_edge_test(&spec, &y1, &cl(&[1, 0, 0, 1])).unwrap());
        assert!(!pp_fixed_edge_test(&spec, &y1, &cl(&[1, 1, 0, 0])).unwrap());
        let spec3 = PartitionSpec::fixed(3, vec![1, 1, 1]);
        assert!(pp_fixed_edge_test(&spec3, &cl(&[0, 1, 2]), &cl(&[1, 2, 0])).unwrap());
    }

    #[test]
    fn statuses_partition_all_sizes() {
        for lo in 0..4 {
            for hi in lo..4 {
                for s in lo..=hi {
                    let st = status(s, lo, hi);
                    let flags = [
                        lo < s && s < hi,
                        lo < s && s == hi,
                        lo == s && s < hi,
                        lo == s && s == hi,
                    ];
                    assert_eq!(flags.iter().filter(|&&f| f).count(), 1);
                    let idx = [Status::Free, Status::Saturated, Status::Depleted, Status::Fixed]
                        .iter()
                        .position(|&t| t == st)
                        .unwrap();
                    assert!(flags[idx]);
                }
            }
        }
    }

    #[test]
    fn vector_round_trip() {
        let c = cl(&[2, 0, 1, 1]);
        assert_eq!(Clustering::from_vector(&c.to_vector(3), 3), Some(c));
    }
}
