//! Circuit walks: execution, reachability closure, hierarchy classification,
//! reversibility and desk-scale diameters.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::circuits::{circuits_rank_method, is_circuit, ratio, Circuit};
use crate::error::{Error, Result};
use crate::exactla::{add_scaled, is_integral, neg, RatVector, Rational};
use crate::polyhedron::Polyhedron;

pub const DEFAULT_BUDGET: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Gcw,
    Icw,
    Vcw,
    Ecw,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Gcw => "GCW",
            Level::Icw => "ICW",
            Level::Vcw => "VCW",
            Level::Ecw => "ECW",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// Oriented circuit used for the step.
    pub circuit: Circuit,
    pub alpha: Rational,
}

/// `points[i + 1] = points[i] + steps[i].alpha * steps[i].circuit.direction()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitWalk {
    pub points: Vec<RatVector>,
    pub steps: Vec<Step>,
}

impl CircuitWalk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> &RatVector {
        &self.points[0]
    }

    pub fn end(&self) -> &RatVector {
        self.points.last().expect("walk has a start point")
    }

    /// Both endpoints are vertices.
    pub fn is_complete(&self, p: &Polyhedron) -> bool {
        p.is_vertex_point(self.start()) && p.is_vertex_point(self.end())
    }

    /// Recomputes every step and checks that points and step lengths agree,
    /// and that every direction is a circuit.
    pub fn replays(&self, p: &Polyhedron) -> bool {
        if self.points.len() != self.steps.len() + 1 || !p.is_vertex_point(self.start()) {
            return false;
        }
        self.steps.iter().enumerate().all(|(i, s)| {
            is_circuit(p, &s.circuit.g)
                && matches!(
                    crate::circuits::maximal_step(p, &self.points[i], &s.circuit),
                    Ok((y, a)) if y == self.points[i + 1] && a == s.alpha
                )
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    /// Step along this vector (normalized to its circuit, orientation kept).
    Circuit(RatVector),
    /// From a vertex, step along the edge to the first neighbor (in sorted
    /// vertex order) not yet visited by the walk, or the first neighbor if
    /// all were visited.
    EdgeGreedy,
}

/// Executes `directives` from the vertex `start`. The result may end at a
/// non-vertex; see [`CircuitWalk::is_complete`].
pub fn walk(p: &Polyhedron, start: &[Rational], directives: &[Directive]) -> Result<CircuitWalk> {
    if !p.is_vertex_point(start) {
        return Err(Error::NotAVertex);
    }
    let mut points = vec![start.to_vec()];
    let mut steps = Vec::new();
    for (i, dir) in directives.iter().enumerate() {
        let x = points.last().expect("nonempty").clone();
        let v = match dir {
            Directive::Circuit(v) => v.clone(),
            Directive::EdgeGreedy => {
                let sk = p.skeleton()?;
                let at = sk.index_of(&x).ok_or(Error::InfeasibleDirection(i))?;
                let nb = &sk.neighbors[at];
                let target = nb
                    .iter()
                    .find(|&&j| !points.contains(&sk.vertices[j].point))
                    .or(nb.first())
                    .ok_or(Error::InfeasibleDirection(i))?;
                crate::exactla::sub(&sk.vertices[*target].point, &x)
            }
        };
        if !is_circuit(p, &v) {
            return Err(Error::InfeasibleDirection(i));
        }
        let c = Circuit::from_direction(p, &v)?;
        let (y, alpha) = match crate::circuits::maximal_step(p, &x, &c) {
            Ok(r) => r,
            Err(Error::DirectionNotFeasible) => return Err(Error::InfeasibleDirection(i)),
            Err(e) => return Err(e),
        };
        points.push(y);
        steps.push(Step { circuit: c, alpha });
    }
    Ok(CircuitWalk { points, steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    /// Index into [`StepGraph::circuits`].
    pub circuit: usize,
    pub sign: i8,
    pub to: usize,
    pub alpha: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    Closed,
    /// Exploration stopped at the first non-integral node.
    StoppedNonIntegral(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepOptions {
    pub stop_on_noninteger: bool,
    pub max_points: usize,
}

impl Default for StepOptions {
    fn default() -> Self {
        StepOptions { stop_on_noninteger: false, max_points: DEFAULT_BUDGET }
    }
}

/// Points reachable from vertices by maximal circuit steps. Nodes
/// `0..num_vertices` are the vertices in sorted order.
#[derive(Clone, Debug)]
pub struct StepGraph {
    pub nodes: Vec<RatVector>,
    pub arcs: Vec<Arc>,
    pub circuits: Vec<Circuit>,
    pub num_vertices: usize,
    pub status: ClosureStatus,
    /// Arc through which each non-vertex node was first reached.
    pub parent: Vec<Option<usize>>,
    index: HashMap<RatVector, usize>,
}

impl StepGraph {
    pub fn index_of(&self, x: &[Rational]) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Walk from a vertex to `node` along first-discovery arcs.
    pub fn walk_to(&self, node: usize) -> CircuitWalk {
        let mut chain = Vec::new();
        let mut at = node;
        while let Some(a) = self.parent[at] {
            chain.push(a);
            at = self.arcs[a].from;
        }
        chain.reverse();
        let mut points = vec![self.nodes[at].clone()];
        let mut steps = Vec::new();
        for a in chain {
            let arc = &self.arcs[a];
            points.push(self.nodes[arc.to].clone());
            steps.push(Step { circuit: self.circuits[arc.circuit].oriented(arc.sign), alpha: arc.alpha.clone() });
        }
        CircuitWalk { points, steps }
    }
}

struct Explorer<'a> {
    p: &'a Polyhedron,
    circuits: Vec<Circuit>,
    dirs: Vec<[RatVector; 2]>,
    imgs: Vec<[RatVector; 2]>,
}

impl<'a> Explorer<'a> {
    fn new(p: &'a Polyhedron) -> Result<Self> {
        if !p.is_bounded()? {
            return Err(Error::Unbounded);
        }
        let circuits = circuits_rank_method(p)?;
        let dirs = circuits.iter().map(|c| [c.g.clone(), neg(&c.g)]).collect();
        let imgs = circuits.iter().map(|c| [c.image.clone(), neg(&c.image)]).collect();
        Ok(Explorer { p, circuits, dirs, imgs })
    }

    /// All maximal steps from `x`: `(circuit index, sign, target, alpha)`.
    fn steps_from(&self, x: &[Rational]) -> Vec<(usize, i8, RatVector, Rational)> {
        let slack = self.p.slack(x);
        let mut out = Vec::new();
        for ci in 0..self.circuits.len() {
            for (s, sign) in [(0usize, 1i8), (1, -1)] {
                let img = &self.imgs[ci][s];
                if slack.iter().zip(img).any(|(sl, v)| *sl == 0 && *v > 0) {
                    continue;
                }
                let alpha = ratio(&slack, img).expect("bounded polytope");
                out.push((ci, sign, add_scaled(x, &alpha, &self.dirs[ci][s]), alpha));
            }
        }
        out
    }

    fn closure(
        &self,
        opts: StepOptions,
        mut on_arc: impl FnMut(&StepGraph, &Arc) -> bool,
    ) -> Result<(StepGraph, bool)> {
        let vertices = self.p.vertices()?;
        let mut g = StepGraph {
            nodes: Vec::new(),
            arcs: Vec::new(),
            circuits: self.circuits.clone(),
            num_vertices: vertices.len(),
            status: ClosureStatus::Closed,
            parent: Vec::new(),
            index: HashMap::new(),
        };
        for v in vertices {
            g.index.insert(v.point.clone(), g.nodes.len());
            g.nodes.push(v.point.clone());
            g.parent.push(None);
        }
        let mut queue: VecDeque<usize> = (0..g.nodes.len()).collect();
        while let Some(u) = queue.pop_front() {
            let x = g.nodes[u].clone();
            for (ci, sign, y, alpha) in self.steps_from(&x) {
                let to = match g.index.get(&y) {
                    Some(&t) => t,
                    None => {
                        if g.nodes.len() >= opts.max_points {
                            return Err(Error::BudgetExceeded(opts.max_points));
                        }
                        let t = g.nodes.len();
                        g.index.insert(y.clone(), t);
                        let integral = is_integral(&y);
                        g.nodes.push(y);
                        g.parent.push(Some(g.arcs.len()));
                        if opts.stop_on_noninteger && !integral {
                            g.arcs.push(Arc { from: u, circuit: ci, sign, to: t, alpha });
                            g.status = ClosureStatus::StoppedNonIntegral(t);
                            return Ok((g, true));
                        }
                        queue.push_back(t);
                        t
                    }
                };
                let arc = Arc { from: u, circuit: ci, sign, to, alpha };
                let keep_going = on_arc(&g, &arc);
                g.arcs.push(arc);
                if !keep_going {
                    return Ok((g, false));
                }
            }
        }
        Ok((g, true))
    }
}

pub fn reachable_step_graph(p: &Polyhedron, opts: StepOptions) -> Result<StepGraph> {
    Ok(Explorer::new(p)?.closure(opts, |_, _| true)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCertificate {
    pub vertex: usize,
    /// `(oriented direction, neighbor vertex index)` for every feasible step.
    pub steps: Vec<(RatVector, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A walk from a vertex reaching a non-integral point.
    NonIntegral(CircuitWalk),
    /// A walk from a vertex reaching an integral non-vertex.
    IntegralNonVertex(CircuitWalk),
    /// A single maximal step between non-adjacent vertices.
    NonAdjacentStep(CircuitWalk),
    /// Every maximal step from every vertex follows an edge.
    EdgeSteps(Vec<EdgeCertificate>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Level { level: Level, witness: Witness },
    /// The closure outgrew the budget before a non-integral point appeared.
    UnknownAtBudget { budget: usize },
}

impl Classification {
    pub fn level(&self) -> Option<Level> {
        match self {
            Classification::Level { level, .. } => Some(*level),
            Classification::UnknownAtBudget { .. } => None,
        }
    }
}

fn one_step_walk(x: &RatVector, c: &Circuit, sign: i8, y: RatVector, alpha: Rational) -> CircuitWalk {
    CircuitWalk { points: vec![x.clone(), y], steps: vec![Step { circuit: c.oriented(sign), alpha }] }
}

/// Places a bounded polytope with integral vertices in the hierarchy.
///
/// Steps from vertices decide VCW and ECW directly (if every step from a
/// vertex lands on a vertex, so does every walk). Otherwise the closure
/// separates ICW from GCW, and running out of `budget` gives
/// [`Classification::UnknownAtBudget`].
pub fn classify_hierarchy(p: &Polyhedron, budget: usize) -> Result<Classification> {
    let ex = Explorer::new(p)?;
    let sk = p.skeleton()?;
    if sk.vertices.iter().any(|v| !is_integral(&v.point)) {
        return Err(Error::NotIntegralPolytope);
    }
    let mut certs = Vec::new();
    let mut non_adjacent: Option<CircuitWalk> = None;
    let mut off_vertex: Option<CircuitWalk> = None;
    for (vi, v) in sk.vertices.iter().enumerate() {
        let mut cert = EdgeCertificate { vertex: vi, steps: Vec::new() };
        for (ci, sign, y, alpha) in ex.steps_from(&v.point) {
            if !is_integral(&y) {
                let w = one_step_walk(&v.point, &ex.circuits[ci], sign, y, alpha);
                return Ok(Classification::Level { level: Level::Gcw, witness: Witness::NonIntegral(w) });
            }
            match sk.index_of(&y) {
                Some(t) if sk.adjacent(vi, t) => cert.steps.push((ex.dirs[ci][usize::from(sign < 0)].clone(), t)),
                Some(_) => {
                    if non_adjacent.is_none() {
                        non_adjacent = Some(one_step_walk(&v.point, &ex.circuits[ci], sign, y, alpha));
                    }
                }
                None => {
                    if off_vertex.is_none() {
                        off_vertex = Some(one_step_walk(&v.point, &ex.circuits[ci], sign, y, alpha));
                    }
                }
            }
        }
        certs.push(cert);
    }
    match (off_vertex, non_adjacent) {
        (None, None) => Ok(Classification::Level { level: Level::Ecw, witness: Witness::EdgeSteps(certs) }),
        (None, Some(w)) => Ok(Classification::Level { level: Level::Vcw, witness: Witness::NonAdjacentStep(w) }),
        (Some(w), _) => {
            let opts = StepOptions { stop_on_noninteger: true, max_points: budget };
            match ex.closure(opts, |_, _| true) {
                Ok((g, _)) => Ok(match g.status {
                    ClosureStatus::StoppedNonIntegral(t) => {
                        Classification::Level { level: Level::Gcw, witness: Witness::NonIntegral(g.walk_to(t)) }
                    }
                    ClosureStatus::Closed => {
                        Classification::Level { level: Level::Icw, witness: Witness::IntegralNonVertex(w) }
                    }
                }),
                Err(Error::BudgetExceeded(b)) => Ok(Classification::UnknownAtBudget { budget: b }),
                Err(e) => Err(e),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversalFailure {
    pub from: RatVector,
    pub circuit: Circuit,
    pub to: RatVector,
    pub alpha: Rational,
    /// Where the reversed maximal step actually ends, and its length.
    pub back: (RatVector, Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reversibility {
    pub reversible: bool,
    pub witness: Option<ReversalFailure>,
}

/// Checks every arc `x -> y` of the step graph: the maximal step from `y`
/// along the reversed circuit must return to `x` with the same length.
pub fn all_steps_reversible(p: &Polyhedron, budget: usize) -> Result<Reversibility> {
    let ex = Explorer::new(p)?;
    let mut failure = None;
    let opts = StepOptions { stop_on_noninteger: false, max_points: budget };
    ex.closure(opts, |g, arc| {
        let x = &g.nodes[arc.from];
        let y = &g.nodes[arc.to];
        let s = usize::from(arc.sign > 0);
        let slack = p.slack(y);
        let alpha = ratio(&slack, &ex.imgs[arc.circuit][s]).expect("bounded polytope");
        let back = add_scaled(y, &alpha, &ex.dirs[arc.circuit][s]);
        if back != *x || alpha != arc.alpha {
            failure = Some(ReversalFailure {
                from: x.clone(),
                circuit: ex.circuits[arc.circuit].oriented(arc.sign),
                to: y.clone(),
                alpha: arc.alpha.clone(),
                back: (back, alpha),
            });
            return false;
        }
        true
    })?;
    Ok(Reversibility { reversible: failure.is_none(), witness: failure })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceKind {
    Combinatorial,
    Circuit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distances {
    pub kind: DistanceKind,
    /// `dist[i][j]` between vertices in sorted order.
    pub dist: Vec<Vec<Option<usize>>>,
    pub diameter: Option<usize>,
}

fn bfs(adj: &[Vec<usize>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        let du = dist[u].expect("visited");
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// Shortest edge walks, or shortest circuit walks (paths in the step graph
/// between vertices; only for polytopes classified ICW or better).
pub fn distances_and_diameters(p: &Polyhedron, kind: DistanceKind, budget: usize) -> Result<Distances> {
    if !p.is_bounded()? {
        return Err(Error::Unbounded);
    }
    let nv = p.vertices()?.len();
    let dist: Vec<Vec<Option<usize>>> = match kind {
        DistanceKind::Combinatorial => {
            let sk = p.skeleton()?;
            (0..nv).map(|i| bfs(&sk.neighbors, i)).collect()
        }
        DistanceKind::Circuit => {
            match classify_hierarchy(p, budget)? {
                Classification::UnknownAtBudget { budget } => return Err(Error::BudgetExceeded(budget)),
                Classification::Level { level: Level::Gcw, .. } => return Err(Error::GcwUnsupported),
                Classification::Level { .. } => {}
            }
            let g = reachable_step_graph(p, StepOptions { stop_on_noninteger: false, max_points: budget })?;
            let mut adj = vec![Vec::new(); g.nodes.len()];
            for a in &g.arcs {
                adj[a.from].push(a.to);
            }
            (0..nv).map(|i| bfs(&adj, i)[..nv].to_vec()).collect()
        }
    };
    let diameter = if dist.iter().flatten().all(Option::is_some) {
        dist.iter().flatten().flatten().copied().max()
    } else {
        None
    };
    Ok(Distances { kind, dist, diameter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, rat, rat_vec};
    use crate::families::{fig2, unit_cube, Fig2};

    fn level(p: &Polyhedron) -> Level {
        classify_hierarchy(p, DEFAULT_BUDGET).unwrap().level().unwrap()
    }

    #[test]
    fn planar_levels() {
        assert_eq!(level(&fig2(Fig2::A)), Level::Gcw);
        assert_eq!(level(&fig2(Fig2::B)), Level::Icw);
        assert_eq!(level(&fig2(Fig2::C)), Level::Vcw);
        assert_eq!(level(&fig2(Fig2::D)), Level::Ecw);
    }

    #[test]
    fn fig2c_walk() {
        let p = fig2(Fig2::C);
        let dirs: Vec<Directive> =
            [[1, 0], [-1, 1], [1, 0], [0, -1]].iter().map(|d| Directive::Circuit(rat_vec(d))).collect();
        let w = walk(&p, &rat_vec(&[0, -1]), &dirs).unwrap();
        let want: Vec<RatVector> = [[0, -1], [6, -1], [2, 3], [4, 3], [4, -3]].iter().map(|q| rat_vec(q)).collect();
        assert_eq!(w.points, want);
        assert!(w.replays(&p) && w.is_complete(&p));
    }

    #[test]
    fn fig2b_first_step() {
        let p = fig2(Fig2::B);
        let w = walk(&p, &rat_vec(&[0, -1]), &[Directive::Circuit(rat_vec(&[1, 1]))]).unwrap();
        assert_eq!(w.points[1], rat_vec(&[4, 3]));
    }

    #[test]
    fn fig2a_walk_and_witness() {
        let p = fig2(Fig2::A);
        let w = walk(&p, &rat_vec(&[1, 2]), &[Directive::Circuit(rat_vec(&[1, -1])), Directive::Circuit(rat_vec(&[-1, -1]))])
            .unwrap();
        assert_eq!(w.points[1], vec![frac(7, 2), frac(-1, 2)]);
        assert_eq!(w.steps[0].alpha, frac(5, 2));
        assert_eq!(w.points[2], rat_vec(&[2, -2]));
        let g = reachable_step_graph(&p, StepOptions { stop_on_noninteger: true, max_points: 1000 }).unwrap();
        let ClosureStatus::StoppedNonIntegral(t) = g.status else { panic!("expected a non-integral stop") };
        assert!(!is_integral(&g.nodes[t]));
        assert!(g.walk_to(t).replays(&p));
    }

    #[test]
    fn walk_rejects_bad_directives() {
        let p = unit_cube(2);
        assert_eq!(walk(&p, &rat_vec(&[0, 0]), &[Directive::Circuit(rat_vec(&[-1, 0]))]), Err(Error::InfeasibleDirection(0)));
        assert_eq!(walk(&p, &rat_vec(&[0, 0]), &[Directive::Circuit(rat_vec(&[1, 1]))]), Err(Error::InfeasibleDirection(0)));
        assert_eq!(walk(&p, &[frac(1, 2), rat(0)], &[]), Err(Error::NotAVertex));
        let w = walk(&p, &rat_vec(&[0, 0]), &[Directive::EdgeGreedy, Directive::EdgeGreedy]).unwrap();
        assert_eq!(w.points, vec![rat_vec(&[0, 0]), rat_vec(&[0, 1]), rat_vec(&[1, 1])]);
    }

    #[test]
    fn closures() {
        assert_eq!(reachable_step_graph(&fig2(Fig2::D), StepOptions::default()).unwrap().nodes.len(), 4);
        let b = reachable_step_graph(&fig2(Fig2::B), StepOptions::default()).unwrap();
        assert!(b.nodes.len() > 8);
        assert!(b.nodes.iter().all(|x| is_integral(x)));
        assert!(b.index_of(&rat_vec(&[4, 3])).is_some());
    }

    #[test]
    fn reversibility() {
        assert!(!all_steps_reversible(&fig2(Fig2::A), DEFAULT_BUDGET).unwrap().reversible);
        assert!(all_steps_reversible(&fig2(Fig2::C), DEFAULT_BUDGET).unwrap().reversible);
        assert!(all_steps_reversible(&unit_cube(2), DEFAULT_BUDGET).unwrap().reversible);
    }

    #[test]
    fn diameters() {
        let sq = unit_cube(2);
        assert_eq!(distances_and_diameters(&sq, DistanceKind::Combinatorial, 100).unwrap().diameter, Some(2));
        assert_eq!(distances_and_diameters(&sq, DistanceKind::Circuit, 100).unwrap().diameter, Some(2));
        assert_eq!(distances_and_diameters(&unit_cube(3), DistanceKind::Combinatorial, 100).unwrap().diameter, Some(3));
        let c = fig2(Fig2::C);
        let comb = distances_and_diameters(&c, DistanceKind::Combinatorial, 1000).unwrap();
        let circ = distances_and_diameters(&c, DistanceKind::Circuit, 1000).unwrap();
        assert!(circ.diameter <= comb.diameter);
        assert_eq!(
            distances_and_diameters(&fig2(Fig2::A), DistanceKind::Circuit, 1000).unwrap_err(),
            Error::GcwUnsupported
        );
    }

    #[test]
    fn budget_gives_unknown() {
        assert_eq!(
            classify_hierarchy(&fig2(Fig2::B), 9).unwrap(),
            Classification::UnknownAtBudget { budget: 9 }
        );
    }
}
