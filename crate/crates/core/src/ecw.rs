//! Edge-walk characterizations for simple polytopes: the elementary cone
//! condition, the symmetric inner cone condition, and recognition of
//! (n,d)-parallelotopes.

use crate::error::{Error, Result};
use crate::exactla::{binomial, canonical_direction, dot, kernel_rows, neg, next_combination, rank_rows, RatVector};
use crate::polyhedron::{intersect, is_subset, Cone, Polyhedron};

/// Guard on the number of distinct hyperplanes in a cell enumeration.
pub const MAX_ARRANGEMENT_HYPERPLANES: usize = 12;

/// The central arrangement `{x : B_i x = 0}` with parallel rows collapsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryArrangement {
    /// Canonical primitive normals, sorted.
    pub normals: Vec<RatVector>,
    /// Inequality rows collapsed into each normal.
    pub rows: Vec<Vec<usize>>,
}

impl ElementaryArrangement {
    /// Zero rows are dropped.
    pub fn of(p: &Polyhedron) -> ElementaryArrangement {
        let mut pairs: Vec<(RatVector, usize)> = p
            .bm()
            .rows()
            .iter()
            .enumerate()
            .filter_map(|(i, r)| canonical_direction(r).ok().map(|(c, _)| (c, i)))
            .collect();
        pairs.sort();
        let mut normals: Vec<RatVector> = Vec::new();
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (c, i) in pairs {
            if normals.last() == Some(&c) {
                rows.last_mut().unwrap().push(i);
            } else {
                normals.push(c);
                rows.push(vec![i]);
            }
        }
        ElementaryArrangement { normals, rows }
    }

    pub fn multiplicity(&self, h: usize) -> usize {
        self.rows[h].len()
    }

    /// Whether `g` is cut out by hyperplanes of rank `n - 1` together with
    /// the equalities of `p`.
    pub fn on_rank_deficient_intersection(&self, p: &Polyhedron, g: &[crate::exactla::Rational]) -> bool {
        let mut rows: Vec<RatVector> = p.a().rows().to_vec();
        rows.extend(self.normals.iter().filter(|h| dot(h, g) == 0).cloned());
        rank_rows(&rows, p.n()) + 1 == p.n()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub holds: bool,
    /// `(vertex, row)` for the elementary cone condition, `(u, v)` for the
    /// symmetric inner cone condition; indices into the skeleton.
    pub witness: Option<(usize, usize)>,
}

/// No inequality hyperplane through a vertex splits its inner cone: for
/// every row, the products with the cone generators are all `>= 0` or all
/// `<= 0`.
pub fn elementary_cone_condition(p: &Polyhedron) -> Result<ConditionResult> {
    p.require_simple()?;
    let sk = p.skeleton()?;
    for (vi, v) in sk.vertices.iter().enumerate() {
        let cone = p.inner_cone(v, None)?;
        for (i, row) in p.bm().rows().iter().enumerate() {
            let signs: Vec<_> = cone.generators.iter().map(|g| dot(row, g)).collect();
            if signs.iter().any(|s| *s > 0) && signs.iter().any(|s| *s < 0) {
                return Ok(ConditionResult { holds: false, witness: Some((vi, i)) });
            }
        }
    }
    Ok(ConditionResult { holds: true, witness: None })
}

/// Inner cones of every vertex pair within their minimal common face are
/// opposite.
pub fn symmetric_inner_cone_condition(p: &Polyhedron) -> Result<ConditionResult> {
    p.require_simple()?;
    Ok(match asymmetric_pair(p)? {
        Some(w) => ConditionResult { holds: false, witness: Some(w) },
        None => ConditionResult { holds: true, witness: None },
    })
}

fn asymmetric_pair(p: &Polyhedron) -> Result<Option<(usize, usize)>> {
    let sk = p.skeleton()?;
    let nv = sk.vertices.len();
    for i in 0..nv {
        for j in i + 1..nv {
            let (u, v) = (&sk.vertices[i], &sk.vertices[j]);
            let face = p.minimal_face(u, v);
            let cu = p.inner_cone(u, Some(&face))?;
            let mut cv: Vec<RatVector> = p.inner_cone(v, Some(&face))?.generators.iter().map(|g| neg(g)).collect();
            cv.sort();
            if cu.generators != cv {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognitionFailure {
    /// `facets - dim` is outside `1..=dim`.
    FacetCount { facets: usize, dim: usize },
    /// Vertices `u`, `v` (skeleton indices) whose face inner cones differ.
    Asymmetric { u: usize, v: usize },
    /// No `d`-parallelotope face through this vertex.
    NoParallelotopeFace { vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelotopeFace {
    pub vertex: usize,
    /// Rows whose intersection is the face.
    pub rows: Vec<usize>,
    /// Skeleton indices of the `2^d` face vertices.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionResult {
    pub is_ndp: bool,
    pub d: Option<usize>,
    pub faces: Vec<ParallelotopeFace>,
    pub failure: Option<RecognitionFailure>,
}

impl RecognitionResult {
    fn fail(failure: RecognitionFailure) -> Self {
        RecognitionResult { is_ndp: false, d: None, faces: Vec::new(), failure: Some(failure) }
    }
}

/// Combinatorial `d`-parallelotope test on the face cut out by `rows`:
/// `2^d` vertices, `2d` facets, and each vertex has exactly one opposite
/// vertex sharing no facet of the face.
fn parallelotope_face(p: &Polyhedron, rows: &[usize], d: usize) -> Result<Option<Vec<usize>>> {
    let sk = p.skeleton()?;
    let verts: Vec<usize> =
        (0..sk.vertices.len()).filter(|&i| is_subset(rows, &sk.vertices[i].tight)).collect();
    if d >= usize::BITS as usize || verts.len() != 1 << d {
        return Ok(None);
    }
    let own = |i: usize| -> Vec<usize> {
        sk.vertices[i].tight.iter().copied().filter(|r| !rows.contains(r)).collect()
    };
    let mut facets: Vec<usize> = verts.iter().flat_map(|&i| own(i)).collect();
    facets.sort_unstable();
    facets.dedup();
    if facets.len() != 2 * d {
        return Ok(None);
    }
    for &i in &verts {
        let oi = own(i);
        let opposite = verts.iter().filter(|&&j| intersect(&oi, &own(j)).is_empty()).count();
        if opposite != 1 {
            return Ok(None);
        }
    }
    Ok(Some(verts))
}

/// Facet count gate, symmetric inner cones, and a `d`-parallelotope face
/// through every vertex.
pub fn recognize_nd_parallelotope(p: &Polyhedron) -> Result<RecognitionResult> {
    p.require_simple()?;
    let n = p.reduced_dim();
    let facets = p.num_ineq();
    if facets <= n || facets - n > n {
        return Ok(RecognitionResult::fail(RecognitionFailure::FacetCount { facets, dim: n }));
    }
    let d = facets - n;
    if let Some((u, v)) = asymmetric_pair(p)? {
        return Ok(RecognitionResult::fail(RecognitionFailure::Asymmetric { u, v }));
    }
    let sk = p.skeleton()?;
    let mut faces = Vec::with_capacity(sk.vertices.len());
    for (vi, v) in sk.vertices.iter().enumerate() {
        let mut found = None;
        let k = n - d;
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            let rows: Vec<usize> = c.iter().map(|&t| v.tight[t]).collect();
            if let Some(verts) = parallelotope_face(p, &rows, d)? {
                found = Some(ParallelotopeFace { vertex: vi, rows, vertices: verts });
                break;
            }
            if !next_combination(&mut c, v.tight.len()) {
                break;
            }
        }
        match found {
            Some(f) => faces.push(f),
            None => return Ok(RecognitionResult::fail(RecognitionFailure::NoParallelotopeFace { vertex: vi })),
        }
    }
    Ok(RecognitionResult { is_ndp: true, d: Some(d), faces, failure: None })
}

/// Full-dimensional cells of the elementary arrangement, as sorted lists of
/// canonical extreme rays. Directions live in the coordinates of `p`.
pub fn elementary_cones_enumerate(p: &Polyhedron) -> Result<Vec<Cone>> {
    let arr = ElementaryArrangement::of(p);
    let h = arr.normals.len();
    if h > MAX_ARRANGEMENT_HYPERPLANES {
        return Err(Error::SizeLimitExceeded {
            what: "arrangement hyperplanes",
            needed: h as u128,
            limit: MAX_ARRANGEMENT_HYPERPLANES as u128,
        });
    }
    let n = p.n();
    let eq: Vec<RatVector> = p.a().rows().to_vec();
    let dim = n - rank_rows(&eq, n);
    let mut all = eq.clone();
    all.extend(arr.normals.iter().cloned());
    if rank_rows(&all, n) != n {
        return Err(Error::NotPointed);
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    let k = dim - 1;
    let mut rays: Vec<RatVector> = Vec::new();
    if binomial(h, k) > 0 {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            let mut rows = eq.clone();
            rows.extend(c.iter().map(|&t| arr.normals[t].clone()));
            let ker = kernel_rows(&rows, n);
            if ker.len() == 1 {
                let (r, _) = canonical_direction(&ker[0])?;
                rays.push(neg(&r));
                rays.push(r);
            }
            if !next_combination(&mut c, h) {
                break;
            }
        }
    }
    rays.sort();
    rays.dedup();
    let signs: Vec<Vec<std::cmp::Ordering>> = rays
        .iter()
        .map(|r| arr.normals.iter().map(|nv| dot(nv, r).cmp(&crate::exactla::Rational::from(0))).collect())
        .collect();
    let mut cells = Vec::new();
    for mask in 0u32..(1 << h) {
        let gens: Vec<usize> = (0..rays.len())
            .filter(|&r| {
                (0..h).all(|i| {
                    let want = if mask >> i & 1 == 1 { std::cmp::Ordering::Greater } else { std::cmp::Ordering::Less };
                    signs[r][i] == want || signs[r][i] == std::cmp::Ordering::Equal
                })
            })
            .collect();
        let mut rows = eq.clone();
        rows.extend(gens.iter().map(|&g| rays[g].clone()));
        if rank_rows(&rows, n) == n && gens.len() >= dim {
            cells.push(Cone { generators: gens.into_iter().map(|g| rays[g].clone()).collect() });
        }
    }
    cells.sort_by(|a, b| a.generators.cmp(&b.generators));
    Ok(cells)
}

/// Vertex index sets of all 2-faces of a simple polytope.
pub fn two_faces(p: &Polyhedron) -> Result<Vec<Vec<usize>>> {
    p.require_simple()?;
    let n = p.reduced_dim();
    if n < 2 {
        return Ok(Vec::new());
    }
    let sk = p.skeleton()?;
    let mut out = Vec::new();
    for v in &sk.vertices {
        let mut c: Vec<usize> = (0..n - 2).collect();
        loop {
            let rows: Vec<usize> = c.iter().map(|&t| v.tight[t]).collect();
            let f = p.face(rows);
            if f.dim == 2 {
                out.push(p.face_vertices(&f)?);
            }
            if !next_combination(&mut c, v.tight.len()) {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Three vertices, or four whose diagonals share a midpoint.
pub fn is_triangle_or_parallelogram(points: &[&RatVector]) -> bool {
    match points.len() {
        3 => true,
        4 => {
            let sum = |a: &RatVector, b: &RatVector| -> RatVector { a.iter().zip(b).map(|(x, y)| x + y).collect() };
            let (a, b, c, d) = (points[0], points[1], points[2], points[3]);
            sum(a, b) == sum(c, d) || sum(a, c) == sum(b, d) || sum(a, d) == sum(b, c)
        }
        _ => false,
    }
}
