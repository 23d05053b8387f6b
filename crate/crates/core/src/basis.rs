//! Enumeration of lexicographically greedy row bases.
//!
//! Rows are visited in index order. A row that is linearly independent of the
//! rows chosen so far is either chosen or marked forbidden; a dependent row is
//! passed over. Every vertex (affine mode) or every circuit (homogeneous mode)
//! has exactly one greedy basis of its tight rows, so each is produced once.
//!
//! Pruning: a forbidden row that becomes dependent would have to be tight
//! (it would have been chosen), and in affine mode a dependent row with
//! negative slack means the current flat misses the polyhedron.

use malachite_base::num::basic::traits::Zero;
use malachite_q::Rational;

use crate::exactla::RatVector;

pub(crate) trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }
    /// Replaces `r` by a positive multiple of `r - (r[c] / p[c]) p`.
    /// Returns `false` on overflow.
    fn eliminate(r: &mut [Self], p: &[Self], c: usize) -> bool;
}

fn gcd_u(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Scalar for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn is_negative(&self) -> bool {
        *self < 0
    }

    fn eliminate(r: &mut [i128], p: &[i128], c: usize) -> bool {
        let rc = r[c];
        if rc == 0 {
            return true;
        }
        let (pa, rc) = if p[c] < 0 { (-p[c], -rc) } else { (p[c], rc) };
        let mut g: u128 = 0;
        for (x, &y) in r.iter_mut().zip(p) {
            let Some(a) = pa.checked_mul(*x) else { return false };
            let Some(b) = rc.checked_mul(y) else { return false };
            let Some(v) = a.checked_sub(b) else { return false };
            *x = v;
            g = gcd_u(g, v.unsigned_abs());
        }
        if g > 1 {
            let g = g as i128;
            for x in r.iter_mut() {
                *x /= g;
            }
        }
        true
    }
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn is_negative(&self) -> bool {
        *self < 0
    }

    fn eliminate(r: &mut [Rational], p: &[Rational], c: usize) -> bool {
        if r[c] == 0 {
            return true;
        }
        let f = &r[c] / &p[c];
        for (x, y) in r.iter_mut().zip(p) {
            if *y != 0 {
                *x -= &f * y;
            }
        }
        true
    }
}

struct Search<'a> {
    m: usize,
    w: usize,
    ncoef: usize,
    target: usize,
    affine: bool,
    out: &'a mut Vec<Vec<usize>>,
    overflow: bool,
}

impl Search<'_> {
    fn coef_zero<S: Scalar>(&self, row: &[S]) -> bool {
        row[..self.ncoef].iter().all(|x| x.is_zero())
    }

    fn rec<S: Scalar>(&mut self, j: usize, chosen: &mut Vec<usize>, forbidden: &mut Vec<usize>, res: &[S]) {
        if self.overflow {
            return;
        }
        let w = self.w;
        if chosen.len() == self.target {
            if self.affine && (j..self.m).any(|k| res[k * w + self.ncoef].is_negative()) {
                return;
            }
            self.out.push(chosen.clone());
            return;
        }
        if self.m - j < self.target - chosen.len() {
            return;
        }
        let row = &res[j * w..(j + 1) * w];
        let Some(c) = (0..self.ncoef).find(|&c| !row[c].is_zero()) else {
            if self.affine && row[self.ncoef].is_negative() {
                return;
            }
            self.rec(j + 1, chosen, forbidden, res);
            return;
        };

        let piv = row.to_vec();
        let mut next = res.to_vec();
        let mut ok = true;
        for &f in forbidden.iter() {
            let r = &mut next[f * w..(f + 1) * w];
            if !S::eliminate(r, &piv, c) {
                self.overflow = true;
                return;
            }
            if self.coef_zero(r) && !(self.affine && r[self.ncoef].is_positive()) {
                ok = false;
                break;
            }
        }
        if ok {
            for k in j + 1..self.m {
                let r = &mut next[k * w..(k + 1) * w];
                if !S::eliminate(r, &piv, c) {
                    self.overflow = true;
                    return;
                }
                if self.affine && r[self.ncoef].is_negative() && self.coef_zero(r) {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            chosen.push(j);
            self.rec(j + 1, chosen, forbidden, &next);
            chosen.pop();
        }

        forbidden.push(j);
        self.rec(j + 1, chosen, forbidden, res);
        forbidden.pop();
    }
}

fn run<S: Scalar>(flat: Vec<S>, m: usize, ncoef: usize, target: usize, affine: bool) -> Option<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut s = Search { m, w: ncoef + usize::from(affine), ncoef, target, affine, out: &mut out, overflow: false };
    s.rec(0, &mut Vec::new(), &mut Vec::new(), &flat);
    if s.overflow {
        None
    } else {
        Some(out)
    }
}

/// All greedy bases of size `target`. `rows` have `ncoef` coefficients, plus
/// a trailing right-hand side in affine mode (row `j` reads `a_j z <= rhs_j`).
pub(crate) fn greedy_bases(rows: &[RatVector], ncoef: usize, target: usize, affine: bool) -> Vec<Vec<usize>> {
    let m = rows.len();
    let ints: Option<Vec<i128>> = rows.iter().flatten().map(|x| i64::try_from(x).ok().map(i128::from)).collect();
    if let Some(flat) = ints {
        if let Some(out) = run(flat, m, ncoef, target, affine) {
            return out;
        }
    }
    let flat: Vec<Rational> = rows.iter().flatten().cloned().collect();
    run(flat, m, ncoef, target, affine).unwrap_or_default()
}

/// Scales a row by a positive factor so that all entries are coprime integers.
pub(crate) fn integral_row(row: &[Rational]) -> RatVector {
    if row.iter().all(|x| *x == 0) {
        return vec![Rational::ZERO; row.len()];
    }
    crate::exactla::primitive(row).expect("nonzero row")
}
