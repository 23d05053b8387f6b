//! Exact rational linear algebra.
//!
//! Everything is computed over [`Rational`] (arbitrary precision). Integral
//! inputs take an `i128` fraction-free elimination path first and fall back to
//! rationals whenever an intermediate would overflow.

use std::fmt;

use malachite_base::num::arithmetic::traits::{Abs, Gcd, Lcm};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
pub use malachite_q::Rational;

use crate::error::{Error, Result};

pub type RatVector = Vec<Rational>;

/// Row-major rectangular matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: Vec<RatVector>,
    ncols: usize,
}

pub fn rat(n: i64) -> Rational {
    Rational::from(n)
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::from_signeds(num, den)
}

pub fn rat_vec(v: &[i64]) -> RatVector {
    v.iter().map(|&x| rat(x)).collect()
}

/// Parses `"3"`, `"-3"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: Integer = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let q: Integer = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if q == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::from_integers(p, q));
    }
    let p: Integer = t.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Rational::from(p))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rational::ZERO;
    for (x, y) in a.iter().zip(b) {
        if *x != 0 && *y != 0 {
            s += x * y;
        }
    }
    s
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| *x == 0)
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| *x.denominator_ref() == 1u32)
}

pub fn add_scaled(x: &[Rational], alpha: &Rational, g: &[Rational]) -> RatVector {
    x.iter().zip(g).map(|(a, b)| a + alpha * b).collect()
}

pub fn sub(x: &[Rational], y: &[Rational]) -> RatVector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn neg(x: &[Rational]) -> RatVector {
    x.iter().map(|a| -a).collect()
}

/// Scales `v` to coprime integers, keeping its orientation.
pub fn primitive(v: &[Rational]) -> Result<RatVector> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let mut den = Natural::ONE;
    for x in v {
        den = den.lcm(x.denominator_ref());
    }
    let den = Rational::from(den);
    let scaled: Vec<Integer> = v
        .iter()
        .map(|x| Integer::try_from(&(x * &den)).expect("denominators cleared"))
        .collect();
    let mut g = Natural::ZERO;
    for x in &scaled {
        g = g.gcd(x.unsigned_abs_ref());
    }
    let g = Integer::from(g);
    Ok(scaled.into_iter().map(|x| Rational::from(x / &g)).collect())
}

/// Coprime integer representative whose first nonzero entry is positive,
/// together with the sign that maps it back onto the orientation of `v`.
pub fn canonical_direction(v: &[Rational]) -> Result<(RatVector, i8)> {
    let p = primitive(v)?;
    let first = p.iter().find(|x| **x != 0).expect("nonzero");
    if *first < 0 {
        Ok((neg(&p), -1))
    } else {
        Ok((p, 1))
    }
}

pub fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl RatMatrix {
    pub fn new(rows: Vec<RatVector>, ncols: usize) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::ShapeMismatch(format!(
                "row {i} has {} entries, expected {ncols}",
                r.len()
            )));
        }
        Ok(RatMatrix { rows, ncols })
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R], ncols: usize) -> Result<Self> {
        Self::new(rows.iter().map(|r| rat_vec(r.as_ref())).collect(), ncols)
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMatrix { rows: vec![vec![Rational::ZERO; ncols]; nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::ONE;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn into_rows(self) -> Vec<RatVector> {
        self.rows
    }

    pub fn mul_vec(&self, x: &[Rational]) -> RatVector {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.ncols != other.ncols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {} columns",
                self.ncols, other.ncols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(RatMatrix { rows, ncols: self.ncols })
    }

    pub fn select_rows(&self, idx: &[usize]) -> RatMatrix {
        RatMatrix { rows: idx.iter().map(|&i| self.rows[i].clone()).collect(), ncols: self.ncols }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        RatMatrix {
            rows: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect())
                .collect(),
            ncols: cols.len(),
        }
    }

    pub fn transpose(&self) -> RatMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        RatMatrix { rows, ncols: self.nrows() }
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(|r| is_integral(r))
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).ok()).collect())
            .collect()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}", fmt_vec(r))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination in place. Returns the pivot columns; rows
/// `0..pivots.len()` hold the reduced row echelon form, the rest are zero.
pub(crate) fn rref(rows: &mut [RatVector], ncols: usize) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::ONE / &rows[r][c];
        for j in c..ncols {
            if rows[r][j] != 0 {
                rows[r][j] *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if pivot_row[j] != 0 {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free rank of an integer matrix; `None` if `i128` would overflow.
pub(crate) fn bareiss_rank(rows: &[Vec<i64>], ncols: usize) -> Option<usize> {
    let mut a: Vec<Vec<i128>> =
        rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let m = a.len();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..ncols {
                let num = piv[c].checked_mul(row[j])?.checked_sub(row[c].checked_mul(piv[j])?)?;
                if num % prev != 0 {
                    return None;
                }
                row[j] = num / prev;
            }
            row[c] = 0;
        }
        prev = top[r][c];
        r += 1;
    }
    Some(r)
}

/// Fraction-free determinant of a `k x k` integer matrix stored row-major in
/// `a` (destroyed); `None` on overflow.
pub(crate) fn bareiss_det(a: &mut [i128], k: usize) -> Option<i128> {
    if k == 0 {
        return Some(1);
    }
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| a[i * k + c] != 0) else {
            return Some(0);
        };
        if p != c {
            for j in 0..k {
                a.swap(c * k + j, p * k + j);
            }
            sign = -sign;
        }
        let pc = a[c * k + c];
        for i in c + 1..k {
            let ic = a[i * k + c];
            for j in c + 1..k {
                let num = pc.checked_mul(a[i * k + j])?.checked_sub(ic.checked_mul(a[c * k + j])?)?;
                if num % prev != 0 {
                    return None;
                }
                a[i * k + j] = num / prev;
            }
        }
        prev = pc;
    }
    Some(sign * a[k * k - 1])
}

pub(crate) fn rank_rows(rows: &[RatVector], ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    let ints: Option<Vec<Vec<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).ok()).collect())
        .collect();
    if let Some(ints) = ints {
        if let Some(r) = bareiss_rank(&ints, ncols) {
            return r;
        }
    }
    let mut work = rows.to_vec();
    rref(&mut work, ncols).len()
}

pub fn rank(m: &RatMatrix) -> usize {
    rank_rows(&m.rows, m.ncols)
}

pub(crate) fn kernel_rows(rows: &[RatVector], ncols: usize) -> Vec<RatVector> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::ZERO; ncols];
        v[f] = Rational::ONE;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&work[r][f];
        }
        basis.push(canonical_direction(&v).expect("kernel vector is nonzero").0);
    }
    basis
}

/// Null space basis, each vector coprime-integer with first nonzero entry positive.
pub fn kernel_basis(m: &RatMatrix) -> Vec<RatVector> {
    kernel_rows(&m.rows, m.ncols)
}

pub fn solve_square(m: &RatMatrix, rhs: &[Rational]) -> Result<RatVector> {
    let n = m.nrows();
    if m.ncols != n || rhs.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "solve_square needs a square system, got {}x{} with rhs {}",
            n,
            m.ncols,
            rhs.len()
        )));
    }
    let mut aug: Vec<RatVector> = m
        .rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n + 1);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn determinant(m: &RatMatrix) -> Result<Rational> {
    let n = m.nrows();
    if m.ncols != n {
        return Err(Error::ShapeMismatch(format!("determinant of {}x{} matrix", n, m.ncols)));
    }
    if let Some(ints) = m.to_i64() {
        let mut buf: Vec<i128> = ints.iter().flatten().map(|&x| x as i128).collect();
        if let Some(d) = bareiss_det(&mut buf, n) {
            return Ok(Rational::from(Integer::from(d)));
        }
    }
    Ok(rational_det(m.rows.clone()))
}

fn rational_det(mut a: Vec<RatVector>) -> Rational {
    let n = a.len();
    let mut det = Rational::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
            return Rational::ZERO;
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= &a[c][c];
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for j in c..n {
                row[j] -= &f * &pivot_row[j];
            }
        }
    }
    det
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc == u128::MAX {
            return acc;
        }
    }
    acc
}

/// Advances `c` to the next `c.len()`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Upper bound on the number of square submatrices enumerated after the
/// exact reductions in [`reduce_for_subdeterminants`].
pub const SUBDET_LIMIT: u128 = 20_000_000;

/// A square submatrix by original row and column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmatrixWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuReport {
    pub is_tu: bool,
    pub witness: Option<SubmatrixWitness>,
}

struct Reduced {
    rows: Vec<RatVector>,
    row_map: Vec<usize>,
    col_map: Vec<usize>,
    /// Some removed row or column carried a unit entry, so `Δ ≥ 1`.
    had_unit: bool,
}

fn same_up_to_sign(a: &[Rational], b: &[Rational]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == -y)
}

/// Deletes rows and columns that cannot change the maximum absolute
/// subdeterminant beyond 1: zero lines, lines with a single `±1` entry, and
/// lines equal to an earlier line up to sign. What is left is a submatrix.
fn reduce_for_subdeterminants(m: &RatMatrix) -> Reduced {
    let mut rows = m.rows.clone();
    let mut row_map: Vec<usize> = (0..m.nrows()).collect();
    let mut col_map: Vec<usize> = (0..m.ncols).collect();
    let mut had_unit = false;
    loop {
        let before = (rows.len(), col_map.len());
        // rows
        let mut keep = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            let nz: Vec<&Rational> = r.iter().filter(|x| **x != 0).collect();
            if nz.is_empty() {
                continue;
            }
            if nz.len() == 1 && (*nz[0] == 1 || *nz[0] == -1) {
                had_unit = true;
                continue;
            }
            if keep.iter().any(|&k: &usize| same_up_to_sign(&rows[k], r)) {
                continue;
            }
            keep.push(i);
        }
        rows = keep.iter().map(|&i| rows[i].clone()).collect();
        row_map = keep.iter().map(|&i| row_map[i]).collect();
        // columns
        let ncols = col_map.len();
        let cols: Vec<RatVector> = (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        let mut keep = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            let nz: Vec<&Rational> = c.iter().filter(|x| **x != 0).collect();
            if nz.is_empty() {
                continue;
            }
            if nz.len() == 1 && (*nz[0] == 1 || *nz[0] == -1) {
                had_unit = true;
                continue;
            }
            if keep.iter().any(|&k: &usize| same_up_to_sign(&cols[k], c)) {
                continue;
            }
            keep.push(j);
        }
        rows = rows.iter().map(|r| keep.iter().map(|&j| r[j].clone()).collect()).collect();
        col_map = keep.iter().map(|&j| col_map[j]).collect();
        if (rows.len(), col_map.len()) == before {
            break;
        }
    }
    Reduced { rows, row_map, col_map, had_unit }
}

/// Walks all square submatrices of the reduced matrix, skipping those with a
/// zero row. `visit` returns `false` to stop early.
fn for_each_subdeterminant(
    red: &Reduced,
    mut visit: impl FnMut(&[usize], &[usize], Rational) -> bool,
) -> Result<()> {
    let r = red.rows.len();
    let c = red.col_map.len();
    if r == 0 || c == 0 {
        return Ok(());
    }
    let count = binomial(r + c, r).saturating_sub(1);
    if count > SUBDET_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "square submatrices",
            needed: count,
            limit: SUBDET_LIMIT,
        });
    }
    let ints: Option<Vec<Vec<i64>>> = red
        .rows
        .iter()
        .map(|row| row.iter().map(|x| i64::try_from(x).ok()).collect())
        .collect();
    let masks: Vec<u128> = red
        .rows
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, x)| **x != 0).fold(0u128, |m, (j, _)| m | (1 << j)))
        .collect();
    let use_masks = c <= 128;
    let mut buf: Vec<i128> = Vec::new();
    for k in 1..=r.min(c) {
        let mut rs: Vec<usize> = (0..k).collect();
        loop {
            let mut cs: Vec<usize> = (0..k).collect();
            loop {
                let col_mask: u128 = if use_masks { cs.iter().fold(0, |m, &j| m | (1 << j)) } else { 0 };
                let zero_row = use_masks && rs.iter().any(|&i| masks[i] & col_mask == 0);
                if !zero_row {
                    let det = match &ints {
                        Some(ints) => {
                            buf.clear();
                            for &i in &rs {
                                buf.extend(cs.iter().map(|&j| ints[i][j] as i128));
                            }
                            match bareiss_det(&mut buf, k) {
                                Some(d) => Rational::from(Integer::from(d)),
                                None => rational_det(sub_rows(&red.rows, &rs, &cs)),
                            }
                        }
                        None => rational_det(sub_rows(&red.rows, &rs, &cs)),
                    };
                    let orig_r: Vec<usize> = rs.iter().map(|&i| red.row_map[i]).collect();
                    let orig_c: Vec<usize> = cs.iter().map(|&j| red.col_map[j]).collect();
                    if !visit(&orig_r, &orig_c, det) {
                        return Ok(());
                    }
                }
                if !next_combination(&mut cs, c) {
                    break;
                }
            }
            if !next_combination(&mut rs, r) {
                break;
            }
        }
    }
    Ok(())
}

fn sub_rows(rows: &[RatVector], rs: &[usize], cs: &[usize]) -> Vec<RatVector> {
    rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect()
}

/// Δ(M): the largest absolute value of a square subdeterminant.
pub fn max_abs_subdeterminant(m: &RatMatrix) -> Result<Rational> {
    let red = reduce_for_subdeterminants(m);
    let mut best = if red.had_unit { Rational::ONE } else { Rational::ZERO };
    for_each_subdeterminant(&red, |_, _, d| {
        let a = d.abs();
        if a > best {
            best = a;
        }
        true
    })?;
    Ok(best)
}

pub fn is_totally_unimodular(m: &RatMatrix) -> Result<TuReport> {
    for (i, r) in m.rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            if *x != 0 && *x != 1 && *x != -1 {
                return Ok(TuReport {
                    is_tu: false,
                    witness: Some(SubmatrixWitness { rows: vec![i], cols: vec![j], det: x.clone() }),
                });
            }
        }
    }
    let red = reduce_for_subdeterminants(m);
    let mut witness = None;
    for_each_subdeterminant(&red, |rs, cs, d| {
        if d > 1 || d < -1 {
            let mut rows = rs.to_vec();
            let mut cols = cs.to_vec();
            rows.sort_unstable();
            cols.sort_unstable();
            witness = Some(SubmatrixWitness { rows, cols, det: d });
            return false;
        }
        true
    })?;
    Ok(TuReport { is_tu: witness.is_none(), witness })
}
