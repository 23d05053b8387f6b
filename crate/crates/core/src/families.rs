//! Generators for the polytope families used throughout the crate.
//!
//! Variable order for two-index families is row-major: `y[i * n + j]`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{primitive, rat_vec, solve_square, RatMatrix, RatVector, Rational};
use crate::polyhedron::{facets_from_vertices, Polyhedron};

/// Environment variable overriding the seed of randomized generators.
pub const SEED_ENV: &str = "POLYWALK_SEED";

/// Seed from `POLYWALK_SEED` if set and parseable, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

fn int_points(v: &[[i64; 2]]) -> Vec<RatVector> {
    v.iter().map(|p| rat_vec(p)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fig2 {
    A,
    B,
    C,
    D,
}

impl std::str::FromStr for Fig2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Fig2::A),
            "b" => Ok(Fig2::B),
            "c" => Ok(Fig2::C),
            "d" => Ok(Fig2::D),
            _ => Err(Error::InvalidSpec(format!("unknown planar example {s:?}, expected a, b, c or d"))),
        }
    }
}

pub fn fig2_vertices(which: Fig2) -> Vec<RatVector> {
    match which {
        Fig2::A => int_points(&[[0, 1], [1, 2], [2, 2], [4, 0], [2, -2], [0, 0]]),
        Fig2::B => int_points(&[[0, 1], [2, 3], [6, 3], [8, 1], [8, -1], [6, -3], [2, -3], [0, -1]]),
        Fig2::C => int_points(&[[0, 1], [2, 3], [4, 3], [6, 1], [6, -1], [4, -3], [2, -3], [0, -1]]),
        Fig2::D => int_points(&[[1, 2], [5, 2], [5, -1], [1, -1]]),
    }
}

/// The four planar examples, one per hierarchy level.
pub fn fig2(which: Fig2) -> Polyhedron {
    let name = match which {
        Fig2::A => "fig2a",
        Fig2::B => "fig2b",
        Fig2::C => "fig2c",
        Fig2::D => "fig2d",
    };
    facets_from_vertices(&fig2_vertices(which)).expect("planar example spans the plane").with_name(name)
}

pub fn fig3_vertices() -> Vec<RatVector> {
    [[0, 0, 0], [1, 0, 0], [1, 1, 1], [0, 0, 1], [0, 1, 0]].iter().map(|p| rat_vec(p)).collect()
}

/// A 0/1-polytope in three dimensions with a non-integral maximal step.
pub fn fig3_polytope() -> Polyhedron {
    facets_from_vertices(&fig3_vertices()).expect("spans R^3").with_name("fig3")
}

pub fn unit_cube(n: usize) -> Polyhedron {
    let mut rows = Vec::new();
    let mut d = Vec::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        rows.push(r.clone());
        d.push(1);
        r[i] = -1;
        rows.push(r);
        d.push(0);
    }
    Polyhedron::from_ints(&[], &[], &rows, &d, n).expect("well-formed").with_name(format!("cube{n}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportationSpec {
    pub supplies: Vec<u64>,
    pub demands: Vec<u64>,
}

impl TransportationSpec {
    pub fn new(supplies: Vec<u64>, demands: Vec<u64>) -> Self {
        TransportationSpec { supplies, demands }
    }

    pub fn validate(&self) -> Result<()> {
        if self.supplies.is_empty() || self.demands.is_empty() {
            return Err(Error::InvalidSpec("supplies and demands must be nonempty".into()));
        }
        if self.supplies.iter().chain(&self.demands).any(|&x| x == 0) {
            return Err(Error::InvalidSpec("supplies and demands must be positive".into()));
        }
        if self.supplies.iter().sum::<u64>() != self.demands.iter().sum::<u64>() {
            return Err(Error::InvalidSpec("total supply differs from total demand".into()));
        }
        Ok(())
    }
}

fn int_rat(x: u64) -> Rational {
    Rational::from(x)
}

fn nonnegativity(nvars: usize) -> Vec<RatVector> {
    (0..nvars)
        .map(|i| {
            let mut r = vec![Rational::from(0); nvars];
            r[i] = Rational::from(-1);
            r
        })
        .collect()
}

/// `sum_j y_ij = u_i`, `sum_i y_ij = v_j`, `y >= 0`.
pub fn transportation(spec: &TransportationSpec) -> Result<Polyhedron> {
    spec.validate()?;
    let m = spec.supplies.len();
    let n = spec.demands.len();
    let nv = m * n;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, &u) in spec.supplies.iter().enumerate() {
        a.push((0..nv).map(|t| Rational::from(u8::from(t / n == i))).collect());
        b.push(int_rat(u));
    }
    for (j, &v) in spec.demands.iter().enumerate() {
        a.push((0..nv).map(|t| Rational::from(u8::from(t % n == j))).collect());
        b.push(int_rat(v));
    }
    let p = Polyhedron::new(RatMatrix::new(a, nv)?, b, RatMatrix::new(nonnegativity(nv), nv)?, vec![Rational::from(0); nv])?;
    Ok(p.with_name(format!("transportation u={:?} v={:?}", spec.supplies, spec.demands)))
}

/// Cluster size bounds `lower[i] <= |C_i| <= upper[i]` for `n_items` items.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub n_items: usize,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl PartitionSpec {
    pub fn bounded(n_items: usize, lower: Vec<usize>, upper: Vec<usize>) -> Self {
        PartitionSpec { n_items, lower, upper }
    }

    pub fn fixed(n_items: usize, sizes: Vec<usize>) -> Self {
        PartitionSpec { n_items, lower: sizes.clone(), upper: sizes }
    }

    pub fn k(&self) -> usize {
        self.lower.len()
    }

    pub fn is_fixed(&self) -> bool {
        self.lower == self.upper
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_items == 0 || self.lower.is_empty() {
            return Err(Error::InvalidSpec("need at least one item and one cluster".into()));
        }
        if self.lower.len() != self.upper.len() {
            return Err(Error::InvalidSpec("lower and upper bounds differ in length".into()));
        }
        if self.lower.iter().zip(&self.upper).any(|(l, u)| l > u) {
            return Err(Error::InvalidSpec("a lower bound exceeds its upper bound".into()));
        }
        let lo: usize = self.lower.iter().sum();
        let hi: usize = self.upper.iter().sum();
        if lo > self.n_items || hi < self.n_items {
            return Err(Error::InvalidSpec(format!(
                "bounds admit no clustering: sum of lower {lo}, sum of upper {hi}, items {}",
                self.n_items
            )));
        }
        Ok(())
    }

    /// Bounds tightened to what the other clusters force; same clusterings.
    pub fn effective(&self) -> PartitionSpec {
        let n = self.n_items;
        let mut lo = self.lower.clone();
        let mut hi: Vec<usize> = self.upper.iter().map(|&u| u.min(n)).collect();
        loop {
            let mut changed = false;
            for i in 0..lo.len() {
                let lo_others: usize = lo.iter().enumerate().filter(|(t, _)| *t != i).map(|(_, x)| x).sum();
                let hi_others: usize = hi.iter().enumerate().filter(|(t, _)| *t != i).map(|(_, x)| x).sum();
                let need = n.saturating_sub(hi_others);
                let room = n.saturating_sub(lo_others);
                if need > lo[i] {
                    lo[i] = need;
                    changed = true;
                }
                if room < hi[i] {
                    hi[i] = room;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        PartitionSpec { n_items: n, lower: lo, upper: hi }
    }

    /// Same spec with clusters sorted by `(lower, upper)`.
    pub fn canonical(&self) -> PartitionSpec {
        let mut pairs: Vec<(usize, usize)> = self.lower.iter().copied().zip(self.upper.iter().copied()).collect();
        pairs.sort_unstable();
        PartitionSpec {
            n_items: self.n_items,
            lower: pairs.iter().map(|p| p.0).collect(),
            upper: pairs.iter().map(|p| p.1).collect(),
        }
    }
}

/// All feasible specs with at most `max_n` items and `max_k` clusters, with
/// bounds in `0..=n`, up to permuting clusters. When `effective` is set,
/// bounds are tightened first and duplicates merged.
pub fn partition_specs(max_n: usize, max_k: usize, effective: bool) -> Vec<PartitionSpec> {
    let mut out = std::collections::BTreeSet::new();
    for n in 1..=max_n {
        for k in 1..=max_k {
            let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|l| (l..=n).map(move |u| (l, u))).collect();
            let mut idx = vec![0usize; k];
            loop {
                if idx.windows(2).all(|w| w[0] <= w[1]) {
                    let spec = PartitionSpec {
                        n_items: n,
                        lower: idx.iter().map(|&t| pairs[t].0).collect(),
                        upper: idx.iter().map(|&t| pairs[t].1).collect(),
                    };
                    if spec.validate().is_ok() {
                        out.insert(if effective { spec.effective().canonical() } else { spec });
                    }
                }
                let mut pos = k;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < pairs.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
                if idx.iter().all(|&t| t == 0) {
                    break;
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All fixed-size specs (compositions of `n` into `k` nonnegative parts,
/// sorted) with `n <= max_n`, `k <= max_k`.
pub fn fixed_partition_specs(max_n: usize, max_k: usize) -> Vec<PartitionSpec> {
    fn parts(n: usize, k: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for x in min..=n {
            acc.push(x);
            parts(n - x, k - 1, x, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 1..=max_k {
            let mut sizes = Vec::new();
            parts(n, k, 0, &mut Vec::new(), &mut sizes);
            out.extend(sizes.into_iter().map(|s| PartitionSpec::fixed(n, s)));
        }
    }
    out
}

fn cluster_row(spec: &PartitionSpec, i: usize, coef: i64) -> RatVector {
    let n = spec.n_items;
    (0..spec.k() * n).map(|t| Rational::from(if t / n == i { coef } else { 0 })).collect()
}

fn item_row(spec: &PartitionSpec, j: usize) -> RatVector {
    let n = spec.n_items;
    (0..spec.k() * n).map(|t| Rational::from(i64::from(t % n == j))).collect()
}

/// Assignment equalities, then lower-size rows, upper-size rows and
/// nonnegativity.
pub fn partition_bounded(spec: &PartitionSpec) -> Result<Polyhedron> {
    spec.validate()?;
    let nv = spec.k() * spec.n_items;
    let a: Vec<RatVector> = (0..spec.n_items).map(|j| item_row(spec, j)).collect();
    let b = vec![Rational::from(1); spec.n_items];
    let mut rows = Vec::new();
    let mut d = Vec::new();
    for (i, &l) in spec.lower.iter().enumerate() {
        rows.push(cluster_row(spec, i, -1));
        d.push(-Rational::from(l as u64));
    }
    for (i, &u) in spec.upper.iter().enumerate() {
        rows.push(cluster_row(spec, i, 1));
        d.push(Rational::from(u as u64));
    }
    rows.extend(nonnegativity(nv));
    d.extend(std::iter::repeat_n(Rational::from(0), nv));
    let p = Polyhedron::new(RatMatrix::new(a, nv)?, b, RatMatrix::new(rows, nv)?, d)?;
    Ok(p.with_name(format!("partition n={} lower={:?} upper={:?}", spec.n_items, spec.lower, spec.upper)))
}

/// Cluster-size equalities, then assignment equalities, and nonnegativity.
pub fn partition_fixed(spec: &PartitionSpec) -> Result<Polyhedron> {
    spec.validate()?;
    if !spec.is_fixed() {
        return Err(Error::InvalidSpec("fixed-size partition needs lower = upper".into()));
    }
    let nv = spec.k() * spec.n_items;
    let mut a: Vec<RatVector> = (0..spec.k()).map(|i| cluster_row(spec, i, 1)).collect();
    let mut b: RatVector = spec.lower.iter().map(|&s| Rational::from(s as u64)).collect();
    a.extend((0..spec.n_items).map(|j| item_row(spec, j)));
    b.extend(std::iter::repeat_n(Rational::from(1), spec.n_items));
    let p = Polyhedron::new(RatMatrix::new(a, nv)?, b, RatMatrix::new(nonnegativity(nv), nv)?, vec![Rational::from(0); nv])?;
    Ok(p.with_name(format!("partition n={} sizes={:?}", spec.n_items, spec.lower)))
}

pub const MAX_MATROID_GROUND: usize = 6;

/// A matroid on `{0, .., ground-1}` given by its rank on every subset
/// (index = bitmask).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidSpec {
    pub ground: usize,
    pub rank: Vec<u32>,
}

impl MatroidSpec {
    pub fn from_table(ground: usize, rank: Vec<u32>) -> Result<Self> {
        if ground > MAX_MATROID_GROUND {
            return Err(Error::SizeLimitExceeded {
                what: "matroid ground set",
                needed: ground as u128,
                limit: MAX_MATROID_GROUND as u128,
            });
        }
        let m = MatroidSpec { ground, rank };
        m.validate()?;
        Ok(m)
    }

    pub fn uniform(ground: usize, r: u32) -> Result<Self> {
        if ground > MAX_MATROID_GROUND {
            return Self::from_table(ground, Vec::new());
        }
        Self::from_table(ground, (0..1u32 << ground).map(|s| s.count_ones().min(r)).collect())
    }

    /// Cycle matroid of a multigraph given by its edge list.
    pub fn graphic(edges: &[(usize, usize)]) -> Result<Self> {
        let ground = edges.len();
        if ground > MAX_MATROID_GROUND {
            return Self::from_table(ground, Vec::new());
        }
        let nodes = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let rank = (0..1usize << ground)
            .map(|s| {
                let mut parent: Vec<usize> = (0..nodes).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    let mut r = x;
                    while p[r] != r {
                        r = p[r];
                    }
                    p[x] = r;
                    r
                }
                let mut r = 0;
                for (e, &(u, v)) in edges.iter().enumerate() {
                    if s >> e & 1 == 1 {
                        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                        if a != b {
                            parent[a] = b;
                            r += 1;
                        }
                    }
                }
                r
            })
            .collect();
        Self::from_table(ground, rank)
    }

    pub fn validate(&self) -> Result<()> {
        let full = 1usize << self.ground;
        if self.rank.len() != full {
            return Err(Error::InvalidRankFunction(format!("expected {full} table entries, got {}", self.rank.len())));
        }
        if self.rank[0] != 0 {
            return Err(Error::InvalidRankFunction("rank of the empty set must be 0".into()));
        }
        for s in 0..full {
            if self.rank[s] > s.count_ones() {
                return Err(Error::InvalidRankFunction(format!("rank of subset {s:#b} exceeds its size")));
            }
            for e in 0..self.ground {
                let se = s | 1 << e;
                if self.rank[se] < self.rank[s] {
                    return Err(Error::InvalidRankFunction(format!("not monotone at {s:#b} + {e}")));
                }
                for f in e + 1..self.ground {
                    let sf = s | 1 << f;
                    if self.rank[se] + self.rank[sf] < self.rank[se | sf] + self.rank[s] {
                        return Err(Error::InvalidRankFunction(format!("not submodular at {s:#b} with {e}, {f}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `x >= 0` and `sum_{e in S} x_e <= f(S)` for every nonempty `S`, in
/// increasing bitmask order. Deliberately not reduced to facets.
pub fn matroid_polytope(spec: &MatroidSpec) -> Result<Polyhedron> {
    spec.validate()?;
    let e = spec.ground;
    let mut rows = nonnegativity(e);
    let mut d = vec![Rational::from(0); e];
    for s in 1..1usize << e {
        rows.push((0..e).map(|i| Rational::from((s >> i & 1) as u64)).collect());
        d.push(Rational::from(spec.rank[s]));
    }
    let p = Polyhedron::from_inequalities(RatMatrix::new(rows, e)?, d)?;
    Ok(p.with_name(format!("matroid |E|={e}")))
}

/// Invertible affine map `x -> matrix * x + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skew {
    pub matrix: RatMatrix,
    pub shift: RatVector,
}

/// Image of `p` (inequalities only) under an invertible affine map. Rows are
/// rescaled to coprime integers.
pub fn apply_skew(p: &Polyhedron, skew: &Skew) -> Result<Polyhedron> {
    let n = p.n();
    if p.a().nrows() > 0 {
        return Err(Error::InvalidSpec("skew applies to inequality-only polyhedra".into()));
    }
    if skew.matrix.nrows() != n || skew.matrix.ncols() != n || skew.shift.len() != n {
        return Err(Error::ShapeMismatch("skew map does not match the dimension".into()));
    }
    // columns of the inverse: solve matrix * c = e_j
    let mut inv_cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rational::from(0); n];
        e[j] = Rational::from(1);
        inv_cols.push(solve_square(&skew.matrix, &e)?);
    }
    let mut rows = Vec::new();
    let mut d = Vec::new();
    for (r, di) in p.bm().rows().iter().zip(p.d()) {
        // r . x <= d  with x = M^-1 (y - t)  =>  (r M^-1) y <= d + (r M^-1) t
        let rm: RatVector = inv_cols.iter().map(|c| crate::exactla::dot(r, c)).collect();
        let mut row = rm.clone();
        row.push(di + crate::exactla::dot(&rm, &skew.shift));
        let row = primitive(&row)?;
        d.push(row[n].clone());
        rows.push(row[..n].to_vec());
    }
    let q = Polyhedron::from_inequalities(RatMatrix::new(rows, n)?, d)?;
    Ok(match p.name() {
        Some(name) => q.with_name(format!("{name} skewed")),
        None => q,
    })
}

/// Product of the standard `(n-d+1)`-simplex with `d-1` unit segments,
/// optionally skewed; checked against the recognizer before returning.
pub fn nd_parallelotope(n: usize, d: usize, skew: Option<&Skew>) -> Result<Polyhedron> {
    if !(1 <= d && d <= n && n <= 6) {
        return Err(Error::InvalidSpec(format!("need 1 <= d <= n <= 6, got n={n}, d={d}")));
    }
    let s = n - d + 1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..s {
        let mut r = vec![0; n];
        r[i] = -1;
        rows.push(r);
        rhs.push(0);
    }
    let mut r = vec![0; n];
    r[..s].iter_mut().for_each(|x| *x = 1);
    rows.push(r);
    rhs.push(1);
    for i in s..n {
        let mut r = vec![0; n];
        r[i] = -1;
        rows.push(r.clone());
        rhs.push(0);
        r[i] = 1;
        rows.push(r);
        rhs.push(1);
    }
    let mut p = Polyhedron::from_ints(&[], &[], &rows, &rhs, n)?.with_name(format!("({n},{d})-parallelotope"));
    if let Some(sk) = skew {
        p = apply_skew(&p, sk)?;
    }
    let rec = crate::ecw::recognize_nd_parallelotope(&p)
        .map_err(|e| Error::RecognitionSelfCheckFailed(format!("recognizer failed: {e}")))?;
    if !rec.is_ndp || rec.d != Some(d) {
        return Err(Error::RecognitionSelfCheckFailed(format!(
            "constructed ({n},{d})-parallelotope recognized as is_ndp={} d={:?}",
            rec.is_ndp, rec.d
        )));
    }
    Ok(p)
}

/// A random integer matrix with determinant `±1` (product of elementary
/// shears and a permutation).
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> RatMatrix {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..n + 1 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-1..=1);
        for t in 0..n {
            m[i][t] += c * m[j][t];
        }
    }
    m.shuffle(rng);
    RatMatrix::from_ints(&m, n).expect("square")
}

/// Random bounded, full-dimensional, simple polytopes with integral
/// vertices. Each starts from a product of a scaled simplex and integer
/// segments, gets up to three binding cuts `±x_a ± x_b <= r`, and is kept
/// only if the result is simple with integral vertices; a random unimodular
/// change of coordinates follows. Redundant rows are dropped.
pub fn random_simple_polytopes(count: usize, max_dim: usize, max_facets: usize, seed: u64) -> Vec<Polyhedron> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let n = rng.gen_range(2..=max_dim.max(2));
        let lows: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        let highs: Vec<i64> = lows.iter().map(|l| l + rng.gen_range(1..=3)).collect();
        // the first `s` coordinates form a simplex of size `t` instead of a box
        let s = if rng.gen_bool(0.5) { rng.gen_range(2..=n) } else { 0 };
        let t = rng.gen_range(1..=3);
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut rhs: Vec<i64> = Vec::new();
        let unit = |i: usize, c: i64| -> Vec<i64> { (0..n).map(|t| if t == i { c } else { 0 }).collect() };
        for i in 0..n {
            rows.push(unit(i, -1));
            rhs.push(-lows[i]);
            if i >= s {
                rows.push(unit(i, 1));
                rhs.push(highs[i]);
            }
        }
        if s > 0 {
            rows.push((0..n).map(|i| i64::from(i < s)).collect());
            rhs.push(lows[..s].iter().sum::<i64>() + t);
        }
        for _ in 0..rng.gen_range(1..=3) {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            let (sa, sb) = (if rng.gen_bool(0.5) { 1 } else { -1 }, if rng.gen_bool(0.5) { 1 } else { -1 });
            let span = |i: usize, c: i64| if c > 0 { (c * lows[i], c * highs[i]) } else { (c * highs[i], c * lows[i]) };
            let (la, ha) = span(a, sa);
            let (lb, hb) = span(b, sb);
            let (lo, hi) = (la + lb, ha + hb);
            if hi - lo < 2 {
                continue;
            }
            let mut r = vec![0; n];
            r[a] = sa;
            r[b] = sb;
            rows.push(r);
            rhs.push(rng.gen_range(lo + 1..hi));
        }
        let Ok(p) = Polyhedron::from_ints(&[], &[], &rows, &rhs, n) else { continue };
        let Some(p) = prune_to_facets(&p) else { continue };
        if p.num_ineq() > max_facets || !matches!(p.is_simple(), Ok(true)) {
            continue;
        }
        if !p.vertices().is_ok_and(|vs| vs.iter().all(|v| crate::exactla::is_integral(&v.point))) {
            continue;
        }
        let skew = Skew { matrix: random_unimodular(&mut rng, n), shift: vec![Rational::from(0); n] };
        let Ok(q) = apply_skew(&p, &skew) else { continue };
        out.push(q.with_name(format!("random simple #{}", out.len())));
    }
    out
}

/// Drops redundant and duplicate rows of a bounded, full-dimensional
/// polytope; `None` if it is not one.
pub fn prune_to_facets(p: &Polyhedron) -> Option<Polyhedron> {
    if p.is_empty().ok()? || !p.is_bounded().ok()? {
        return None;
    }
    let rep = p.minimality().ok()?;
    let drop: Vec<usize> = rep.redundant.iter().copied().chain(rep.duplicates.iter().map(|d| d.1)).collect();
    let keep: Vec<usize> = (0..p.num_ineq()).filter(|i| !drop.contains(i)).collect();
    let bm = p.bm().select_rows(&keep);
    let d = keep.iter().map(|&i| p.d()[i].clone()).collect();
    Polyhedron::from_inequalities(bm, d).ok()
}

/// Random pointed systems `Bx <= d` with entries of `B` in `-3..=3`.
pub fn random_integer_systems(count: usize, seed: u64) -> Vec<Polyhedron> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(n..=8);
        let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if rows.iter().any(|r| r.iter().all(|&x| x == 0)) {
            continue;
        }
        let d: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=5)).collect();
        let Ok(p) = Polyhedron::from_ints(&[], &[], &rows, &d, n) else { continue };
        if p.is_pointed() {
            out.push(p.with_name(format!("random system #{}", out.len())));
        }
    }
    out
}
