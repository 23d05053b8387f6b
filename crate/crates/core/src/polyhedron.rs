//! Polyhedra `{x : Ax = b, Bx <= d}` with vertex enumeration, adjacency,
//! faces and inner cones.
//!
//! Internally every polyhedron is also kept in reduced coordinates: the
//! equalities are solved once, `x = p + N z`, and the inequality system
//! becomes `B' z <= d'` with `B' = B N`, `d' = d - B p`. Ranks, tight sets and
//! vertex/circuit searches run there; `rank(A; B_T) = rank(A) + rank(B'_T)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use malachite_base::num::basic::traits::{One, Zero};

use crate::basis::{greedy_bases, integral_row};
use crate::error::{Error, Result};
use crate::exactla::{
    binomial, canonical_direction, dot, kernel_rows, primitive, rank_rows, rref, solve_square, sub, RatMatrix,
    RatVector, Rational,
};

/// Guard on the number of row subsets a basis search may have to consider.
pub const SUBSET_LIMIT: u128 = 10_000_000;

/// `x = base + lin * z`, with `z` read back as `x[free_cols]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub base: RatVector,
    pub lin: RatMatrix,
    pub free_cols: Vec<usize>,
}

impl AffineMap {
    pub fn apply(&self, z: &[Rational]) -> RatVector {
        let lz = self.lin.mul_vec(z);
        self.base.iter().zip(&lz).map(|(a, b)| a + b).collect()
    }

    /// Linear part only, for directions.
    pub fn apply_dir(&self, z: &[Rational]) -> RatVector {
        self.lin.mul_vec(z)
    }

    pub fn pullback(&self, x: &[Rational]) -> RatVector {
        self.free_cols.iter().map(|&j| x[j].clone()).collect()
    }
}

#[derive(Clone, Debug)]
struct Frame {
    map: AffineMap,
    rank_a: usize,
    eq_feasible: bool,
    /// Rows of `B N` scaled positively to coprime integers.
    bred: Vec<RatVector>,
    /// Right-hand sides scaled by the same factors.
    dred: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub point: RatVector,
    /// Every inequality row tight at `point`.
    pub tight: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub tight_rows: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub generators: Vec<RatVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub empty: bool,
    pub bounded: bool,
    pub pointed: bool,
    pub duplicate_rows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub redundant: Vec<usize>,
    pub duplicates: Vec<(usize, usize)>,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.redundant.is_empty() && self.duplicates.is_empty()
    }
}

/// Vertices with their edge graph.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub vertices: Vec<Vertex>,
    pub neighbors: Vec<Vec<usize>>,
    index: HashMap<RatVector, usize>,
}

impl Skeleton {
    pub fn index_of(&self, point: &[Rational]) -> Option<usize> {
        self.index.get(point).copied()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct Polyhedron {
    n: usize,
    a: RatMatrix,
    b: RatVector,
    bm: RatMatrix,
    d: RatVector,
    name: Option<String>,
    frame: Frame,
    vertices: OnceLock<Result<Vec<Vertex>>>,
    skeleton: OnceLock<Result<Skeleton>>,
    circuit_dirs: OnceLock<Result<Vec<RatVector>>>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.a == o.a && self.b == o.b && self.bm == o.bm && self.d == o.d && self.name == o.name
    }
}

impl Polyhedron {
    pub fn new(a: RatMatrix, b: RatVector, bm: RatMatrix, d: RatVector) -> Result<Self> {
        let n = bm.ncols();
        if a.ncols() != n && a.nrows() > 0 {
            return Err(Error::ShapeMismatch(format!("A has {} columns, B has {n}", a.ncols())));
        }
        let a = if a.nrows() == 0 { RatMatrix::zeros(0, n) } else { a };
        if b.len() != a.nrows() {
            return Err(Error::ShapeMismatch(format!("b has {} entries, A has {} rows", b.len(), a.nrows())));
        }
        if d.len() != bm.nrows() {
            return Err(Error::ShapeMismatch(format!("d has {} entries, B has {} rows", d.len(), bm.nrows())));
        }
        let frame = build_frame(&a, &b, &bm, &d);
        Ok(Polyhedron {
            n,
            a,
            b,
            bm,
            d,
            name: None,
            frame,
            vertices: OnceLock::new(),
            skeleton: OnceLock::new(),
            circuit_dirs: OnceLock::new(),
        })
    }

    /// Inequalities only.
    pub fn from_inequalities(bm: RatMatrix, d: RatVector) -> Result<Self> {
        let n = bm.ncols();
        Self::new(RatMatrix::zeros(0, n), Vec::new(), bm, d)
    }

    pub fn from_ints(a: &[Vec<i64>], b: &[i64], bm: &[Vec<i64>], d: &[i64], n: usize) -> Result<Self> {
        Self::new(
            RatMatrix::from_ints(a, n)?,
            crate::exactla::rat_vec(b),
            RatMatrix::from_ints(bm, n)?,
            crate::exactla::rat_vec(d),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Same constraint matrices, new right-hand sides. The circuit set depends
    /// only on the matrices, so a computed one is carried over.
    pub fn with_rhs(&self, b: RatVector, d: RatVector) -> Result<Self> {
        let mut p = Polyhedron::new(self.a.clone(), b, self.bm.clone(), d)?;
        p.name = self.name.clone();
        if let Some(Ok(c)) = self.circuit_dirs.get() {
            let _ = p.circuit_dirs.set(Ok(c.clone()));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatVector {
        &self.b
    }

    pub fn bm(&self) -> &RatMatrix {
        &self.bm
    }

    pub fn d(&self) -> &RatVector {
        &self.d
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn num_ineq(&self) -> usize {
        self.bm.nrows()
    }

    /// `M = (A; B)`.
    pub fn constraint_matrix(&self) -> RatMatrix {
        self.a.stack(&self.bm).expect("same width")
    }

    pub fn rank_a(&self) -> usize {
        self.frame.rank_a
    }

    /// Dimension of the affine hull of the equality system, `n - rank(A)`.
    pub fn reduced_dim(&self) -> usize {
        self.n - self.frame.rank_a
    }

    pub fn affine_map(&self) -> &AffineMap {
        &self.frame.map
    }

    pub fn equalities_feasible(&self) -> bool {
        self.frame.eq_feasible
    }

    pub fn is_pointed(&self) -> bool {
        rank_rows(&self.frame.bred, self.reduced_dim()) == self.reduced_dim()
    }

    pub fn slack(&self, x: &[Rational]) -> RatVector {
        self.bm.rows().iter().zip(&self.d).map(|(r, d)| d - dot(r, x)).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.n
            && self.a.rows().iter().zip(&self.b).all(|(r, b)| dot(r, x) == *b)
            && self.slack(x).iter().all(|s| *s >= 0)
    }

    pub fn tight_rows(&self, x: &[Rational]) -> Vec<usize> {
        self.slack(x).iter().enumerate().filter(|(_, s)| **s == 0).map(|(i, _)| i).collect()
    }

    /// `rank(A; B_rows)`.
    pub fn rank_with(&self, rows: &[usize]) -> usize {
        self.frame.rank_a + self.reduced_rank(rows)
    }

    fn reduced_rank(&self, rows: &[usize]) -> usize {
        let sel: Vec<RatVector> = rows.iter().map(|&i| self.frame.bred[i].clone()).collect();
        rank_rows(&sel, self.reduced_dim())
    }

    pub fn is_vertex_point(&self, x: &[Rational]) -> bool {
        self.contains(x) && self.rank_with(&self.tight_rows(x)) == self.n
    }

    /// All vertices, sorted lexicographically by point.
    pub fn vertices(&self) -> Result<&[Vertex]> {
        self.vertices.get_or_init(|| self.compute_vertices()).as_deref().map_err(Clone::clone)
    }

    fn compute_vertices(&self) -> Result<Vec<Vertex>> {
        if !self.frame.eq_feasible {
            return Ok(Vec::new());
        }
        let k = self.reduced_dim();
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        let m = self.num_ineq();
        let needed = binomial(m, k);
        if needed > SUBSET_LIMIT {
            return Err(Error::SizeLimitExceeded { what: "vertex row subsets", needed, limit: SUBSET_LIMIT });
        }
        let rows: Vec<RatVector> = self
            .frame
            .bred
            .iter()
            .zip(&self.frame.dred)
            .map(|(r, d)| {
                let mut r = r.clone();
                r.push(d.clone());
                r
            })
            .collect();
        let mut out = Vec::new();
        if k == 0 {
            if self.frame.dred.iter().all(|s| *s >= 0) {
                out.push(self.vertex_at(self.frame.map.base.clone()));
            }
            return Ok(out);
        }
        for basis in greedy_bases(&rows, k, k, true) {
            let sq = RatMatrix::new(basis.iter().map(|&i| self.frame.bred[i].clone()).collect(), k)?;
            let rhs: RatVector = basis.iter().map(|&i| self.frame.dred[i].clone()).collect();
            let z = solve_square(&sq, &rhs)?;
            out.push(self.vertex_at(self.frame.map.apply(&z)));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn vertex_at(&self, point: RatVector) -> Vertex {
        let tight = self.tight_rows(&point);
        Vertex { point, tight }
    }

    /// Canonical circuit directions (one per `±` pair), sorted.
    pub fn circuit_directions(&self) -> Result<&[RatVector]> {
        self.circuit_dirs.get_or_init(|| self.compute_circuits()).as_deref().map_err(Clone::clone)
    }

    fn compute_circuits(&self) -> Result<Vec<RatVector>> {
        let k = self.reduced_dim();
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        if k == 0 {
            return Ok(Vec::new());
        }
        let m = self.num_ineq();
        let needed = binomial(m, k - 1);
        if needed > SUBSET_LIMIT {
            return Err(Error::SizeLimitExceeded { what: "circuit row subsets", needed, limit: SUBSET_LIMIT });
        }
        let mut out = Vec::new();
        for basis in greedy_bases(&self.frame.bred, k, k - 1, false) {
            let sel: Vec<RatVector> = basis.iter().map(|&i| self.frame.bred[i].clone()).collect();
            let ker = kernel_rows(&sel, k);
            debug_assert_eq!(ker.len(), 1);
            let g = self.frame.map.apply_dir(&ker[0]);
            out.push(canonical_direction(&g)?.0);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// True iff the recession cone is trivial. A pointed cone `{g : Ag = 0,
    /// Bg <= 0}` is generated by circuits, so it suffices to check those.
    pub fn is_bounded(&self) -> Result<bool> {
        if !self.is_pointed() {
            return Ok(false);
        }
        let dirs = self.circuit_directions()?;
        Ok(dirs.iter().all(|g| {
            let img = self.bm.mul_vec(g);
            img.iter().any(|x| *x > 0) && img.iter().any(|x| *x < 0)
        }))
    }

    pub fn is_empty(&self) -> Result<bool> {
        if !self.frame.eq_feasible {
            return Ok(true);
        }
        if self.is_pointed() {
            return Ok(self.vertices()?.is_empty());
        }
        // P = P + L for the lineality space L; cut with L-perp to get a pointed polyhedron.
        let k = self.reduced_dim();
        let lineality = kernel_rows(&self.frame.bred, k);
        let cut = Polyhedron::new(
            RatMatrix::new(lineality.clone(), k)?,
            vec![Rational::ZERO; lineality.len()],
            RatMatrix::new(self.frame.bred.clone(), k)?,
            self.frame.dred.clone(),
        )?;
        Ok(cut.vertices()?.is_empty())
    }

    pub fn duplicate_rows(&self) -> Vec<(usize, usize)> {
        let mut seen: HashMap<RatVector, usize> = HashMap::new();
        let mut dups = Vec::new();
        for (i, (r, d)) in self.bm.rows().iter().zip(&self.d).enumerate() {
            let mut key = r.clone();
            key.push(d.clone());
            if r.iter().all(|x| *x == 0) {
                continue;
            }
            let key = primitive(&key).expect("nonzero row");
            if let Some(&j) = seen.get(&key) {
                dups.push((j, i));
            } else {
                seen.insert(key, i);
            }
        }
        dups
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        let pointed = self.is_pointed();
        let empty = self.is_empty()?;
        let bounded = if pointed { self.is_bounded()? } else { false };
        Ok(ValidationReport { empty, bounded, pointed, duplicate_rows: self.duplicate_rows() })
    }

    /// Polyhedron in the free coordinates of the equality system.
    pub fn reduce_to_full_dimension(&self) -> Result<(Polyhedron, AffineMap)> {
        if self.is_empty()? {
            return Err(Error::EmptyPolyhedron);
        }
        let k = self.reduced_dim();
        let mut p = Polyhedron::from_inequalities(RatMatrix::new(self.frame.bred.clone(), k)?, self.frame.dred.clone())?;
        p.name = self.name.clone();
        Ok((p, self.frame.map.clone()))
    }

    pub fn are_adjacent(&self, u: &Vertex, v: &Vertex) -> bool {
        if u.point == v.point {
            return false;
        }
        let common = intersect(&u.tight, &v.tight);
        let k = self.reduced_dim();
        common.len() + 1 >= k && self.reduced_rank(&common) + 1 == k
    }

    pub fn skeleton(&self) -> Result<&Skeleton> {
        self.skeleton.get_or_init(|| self.compute_skeleton()).as_ref().map_err(Clone::clone)
    }

    fn compute_skeleton(&self) -> Result<Skeleton> {
        let vertices = self.vertices()?.to_vec();
        let nv = vertices.len();
        let mut neighbors = vec![Vec::new(); nv];
        for i in 0..nv {
            for j in i + 1..nv {
                if self.are_adjacent(&vertices[i], &vertices[j]) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        let index = vertices.iter().enumerate().map(|(i, v)| (v.point.clone(), i)).collect();
        Ok(Skeleton { vertices, neighbors, index })
    }

    pub fn face(&self, tight_rows: Vec<usize>) -> Face {
        let dim = self.reduced_dim() - self.reduced_rank(&tight_rows);
        Face { tight_rows, dim }
    }

    pub fn minimal_face(&self, u: &Vertex, v: &Vertex) -> Face {
        self.face(intersect(&u.tight, &v.tight))
    }

    /// Vertices of `P` lying on `face`.
    pub fn face_vertices(&self, face: &Face) -> Result<Vec<usize>> {
        let sk = self.skeleton()?;
        Ok((0..sk.vertices.len()).filter(|&i| is_subset(&face.tight_rows, &sk.vertices[i].tight)).collect())
    }

    /// Edge directions at `v`, restricted to `face` when given.
    pub fn inner_cone(&self, v: &Vertex, face: Option<&Face>) -> Result<Cone> {
        let sk = self.skeleton()?;
        let i = sk.index_of(&v.point).ok_or(Error::NotAVertex)?;
        let mut generators: Vec<RatVector> = sk.neighbors[i]
            .iter()
            .map(|&j| &sk.vertices[j])
            .filter(|w| face.is_none_or(|f| is_subset(&f.tight_rows, &w.tight)))
            .map(|w| primitive(&sub(&w.point, &v.point)).expect("distinct vertices"))
            .collect();
        generators.sort();
        generators.dedup();
        Ok(Cone { generators })
    }

    fn require_full_dimensional(&self) -> Result<()> {
        if self.affine_dimension()? != self.reduced_dim() {
            return Err(Error::NotFullDimensional);
        }
        Ok(())
    }

    /// Dimension of the affine hull of the vertices.
    pub fn affine_dimension(&self) -> Result<usize> {
        let vs = self.vertices()?;
        Ok(affine_rank(vs.iter().map(|v| &v.point)))
    }

    /// Rows that are not facets, and duplicated rows. Requires a bounded,
    /// full-dimensional polyhedron (dimension counted within `Ax = b`).
    pub fn minimality(&self) -> Result<MinimalityReport> {
        self.require_full_dimensional()?;
        let vs = self.vertices()?;
        let k = self.reduced_dim();
        let duplicates = self.duplicate_rows();
        let dup_second: Vec<usize> = duplicates.iter().map(|&(_, j)| j).collect();
        let mut redundant = Vec::new();
        for i in 0..self.num_ineq() {
            if dup_second.contains(&i) {
                continue;
            }
            let on: Vec<&RatVector> = vs.iter().filter(|v| v.tight.contains(&i)).map(|v| &v.point).collect();
            if on.is_empty() || affine_rank(on.into_iter()) + 1 != k {
                redundant.push(i);
            }
        }
        Ok(MinimalityReport { redundant, duplicates })
    }

    pub fn is_minimal(&self) -> Result<bool> {
        Ok(self.minimality()?.is_minimal())
    }

    /// Every vertex lies on exactly `dim` inequality rows.
    pub fn is_simple(&self) -> Result<bool> {
        Ok(self.simplicity_violation()?.is_none())
    }

    /// First vertex with the wrong number of tight rows, after the minimality
    /// and dimension preconditions.
    pub fn simplicity_violation(&self) -> Result<Option<usize>> {
        let rep = self.minimality()?;
        if !rep.is_minimal() {
            return Err(Error::NotMinimal { redundant: rep.redundant, duplicates: rep.duplicates });
        }
        let k = self.reduced_dim();
        Ok(self.vertices()?.iter().position(|v| v.tight.len() != k))
    }

    /// Errors unless simple, minimal, full-dimensional and bounded.
    pub fn require_simple(&self) -> Result<()> {
        if !self.is_bounded()? {
            return Err(Error::Unbounded);
        }
        if let Some(i) = self.simplicity_violation()? {
            let tight = self.vertices()?[i].tight.len();
            return Err(Error::NotSimple { vertex: i, tight, dim: self.reduced_dim() });
        }
        Ok(())
    }
}

fn build_frame(a: &RatMatrix, b: &[Rational], bm: &RatMatrix, d: &[Rational]) -> Frame {
    let n = bm.ncols();
    let mut aug: Vec<RatVector> = a
        .rows()
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n + 1);
    let eq_feasible = pivots.last() != Some(&n);
    let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < n).collect();
    let rank_a = pivots.len();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let k = free_cols.len();
    let mut base = vec![Rational::ZERO; n];
    let mut lin = vec![vec![Rational::ZERO; k]; n];
    for (t, &f) in free_cols.iter().enumerate() {
        lin[f][t] = Rational::ONE;
    }
    if eq_feasible {
        for (r, &p) in pivots.iter().enumerate() {
            base[p] = aug[r][n].clone();
            for (t, &f) in free_cols.iter().enumerate() {
                lin[p][t] = -&aug[r][f];
            }
        }
    }
    let lin = RatMatrix::new(lin, k).expect("rectangular");
    let map = AffineMap { base, lin, free_cols };
    let mut bred = Vec::with_capacity(bm.nrows());
    let mut dred = Vec::with_capacity(bm.nrows());
    for (row, di) in bm.rows().iter().zip(d) {
        let mut r: RatVector = (0..k).map(|t| dot(row, &column(&map.lin, t))).collect();
        r.push(di - dot(row, &map.base));
        let scaled = if r[..k].iter().all(|x| *x == 0) { r } else { integral_row(&r) };
        dred.push(scaled[k].clone());
        bred.push(scaled[..k].to_vec());
    }
    Frame { map, rank_a, eq_feasible, bred, dred }
}

fn column(m: &RatMatrix, t: usize) -> RatVector {
    m.rows().iter().map(|r| r[t].clone()).collect()
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

pub(crate) fn affine_rank<'a>(mut pts: impl Iterator<Item = &'a RatVector>) -> usize {
    let Some(first) = pts.next() else { return 0 };
    let diffs: Vec<RatVector> = pts.map(|p| sub(p, first)).collect();
    rank_rows(&diffs, first.len())
}

/// Brute-force hull of a point set in dimension 1 to 4: every hyperplane
/// through an affinely independent `dim`-subset with all points on one side.
pub fn facets_from_vertices(points: &[RatVector]) -> Result<Polyhedron> {
    let Some(first) = points.first() else {
        return Err(Error::DegenerateInput("no points".into()));
    };
    let dim = first.len();
    if !(1..=4).contains(&dim) {
        return Err(Error::DimensionTooHigh(dim));
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::ShapeMismatch("points of different lengths".into()));
    }
    if points.len() > 32 {
        return Err(Error::SizeLimitExceeded { what: "hull points", needed: points.len() as u128, limit: 32 });
    }
    if affine_rank(points.iter()) < dim {
        return Err(Error::DegenerateInput(format!("points do not affinely span dimension {dim}")));
    }
    let np = points.len();
    let mut rows: Vec<RatVector> = Vec::new();
    let mut c: Vec<usize> = (0..dim).collect();
    loop {
        let diffs: Vec<RatVector> = c[1..].iter().map(|&i| sub(&points[i], &points[c[0]])).collect();
        let ker = kernel_rows(&diffs, dim);
        if ker.len() == 1 {
            let normal = &ker[0];
            let off = dot(normal, &points[c[0]]);
            let vals: Vec<Rational> = points.iter().map(|p| dot(normal, p) - &off).collect();
            let pos = vals.iter().any(|v| *v > 0);
            let negv = vals.iter().any(|v| *v < 0);
            if !(pos && negv) {
                let flip = pos;
                let mut row: RatVector = normal.iter().map(|x| if flip { -x } else { x.clone() }).collect();
                row.push(if flip { -&off } else { off.clone() });
                rows.push(primitive(&row)?);
            }
        }
        if !crate::exactla::next_combination(&mut c, np) {
            break;
        }
    }
    rows.sort();
    rows.dedup();
    let bm = RatMatrix::new(rows.iter().map(|r| r[..dim].to_vec()).collect(), dim)?;
    let d = rows.iter().map(|r| r[dim].clone()).collect();
    Polyhedron::from_inequalities(bm, d)
}
